/// Absolute/relative tolerance for comparing floating values.
///
/// Two scalars `x` and `y` are equal when
/// `|x - y| <= abs + rel * max(|x|, |y|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-9,
            rel: 1e-9,
        }
    }
}

impl Tolerance {
    /// Returns `None` when either component is negative or not finite.
    pub fn new(abs: f64, rel: f64) -> Option<Self> {
        if abs >= 0.0 && rel >= 0.0 && abs.is_finite() && rel.is_finite() {
            Some(Tolerance { abs, rel })
        } else {
            None
        }
    }

    pub fn eq(&self, x: f64, y: f64) -> bool {
        let scale = x.abs().max(y.abs());
        (x - y).abs() <= self.abs + self.rel * scale
    }

    /// Equality where the relative part is measured against `scale`
    /// instead of the operands (for values produced by cancellation).
    pub fn eq_at_scale(&self, x: f64, y: f64, scale: f64) -> bool {
        (x - y).abs() <= self.bound(scale)
    }

    /// Whether `x` is zero relative to `scale`.
    pub fn is_zero(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.bound(scale)
    }

    /// The admissible error `abs + rel * |scale|`.
    pub fn bound(&self, scale: f64) -> f64 {
        self.abs + self.rel * scale.abs()
    }

    pub fn slices_eq(&self, a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| self.eq(*x, *y))
    }
}
