//! Lexicographic enumeration of index subsets.

use alloc::vec::Vec;

/// Iterator over the `size`-element subsets of `0..n` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    current: Option<Vec<usize>>,
}

/// All `size`-subsets of `0..n`, lexicographically ordered.
pub fn combinations(n: usize, size: usize) -> Combinations {
    let current = if size <= n {
        Some((0..size).collect())
    } else {
        None
    };
    Combinations { n, current }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let size = out.len();
        let mut next = out.clone();
        let mut i = size;
        while i > 0 {
            i -= 1;
            if next[i] < self.n - size + i {
                next[i] += 1;
                for j in i + 1..size {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

/// Binomial coefficient `C(n, k)`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn enumerates_in_lexicographic_order() {
        let all: Vec<_> = combinations(4, 2).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 1],
                vec![0, 2],
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3]
            ]
        );
    }

    #[test]
    fn edge_sizes() {
        assert_eq!(combinations(3, 0).count(), 1);
        assert_eq!(combinations(3, 3).count(), 1);
        assert_eq!(combinations(2, 3).count(), 0);
        for n in 0..9 {
            for k in 0..=n {
                assert_eq!(combinations(n, k).count(), binomial(n, k));
            }
        }
    }
}
