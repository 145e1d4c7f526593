//! OFF meshes of three-dimensional zonotopes.

use zonokit_core::numkit::{cross_product, vector};
use zonokit_core::{Result, Vector, Zonotope};

/// `printf("%.12g")`.
pub fn format_g(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("exponent digits");
    if !(-4..12).contains(&exp) {
        let m = trim_fraction(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (11 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vector>,
    /// Vertex indices per face, counterclockwise about the outward normal.
    pub faces: Vec<Vec<usize>>,
}

/// Vertices of `z` and one polygon per geometric facet.
pub fn zonotope_mesh(z: &Zonotope) -> Result<Mesh> {
    let vertices = z.vertices()?;
    let facets = z.geometric_facets()?;
    let slack = z.tolerance().bound(z.scale());
    let mut faces = Vec::with_capacity(facets.len());
    for f in facets.iter() {
        let u = &f.unit_normal;
        let on: Vec<usize> = (0..vertices.len())
            .filter(|&i| (vector::dot(u, &vertices[i]) - f.support).abs() <= slack)
            .collect();
        let center = vector::scale(
            &vector::sum(3, on.iter().map(|&i| &vertices[i][..])),
            1.0 / on.len() as f64,
        );
        let e1 = vector::sub(&vertices[on[0]], &center);
        let e2 = cross_product(&[u, &e1])?;
        let mut keyed: Vec<(f64, usize)> = on
            .iter()
            .map(|&i| {
                let d = vector::sub(&vertices[i], &center);
                (vector::dot(&d, &e2).atan2(vector::dot(&d, &e1)), i)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.total_cmp(&b.0));
        faces.push(keyed.into_iter().map(|(_, i)| i).collect());
    }
    Ok(Mesh { vertices, faces })
}

pub fn write_off(mesh: &Mesh) -> String {
    let mut out = String::from("OFF\n");
    out.push_str(&format!("{} {} 0\n", mesh.vertices.len(), mesh.faces.len()));
    for v in &mesh.vertices {
        let fields: Vec<String> = v.iter().map(|&x| format_g(x)).collect();
        out.push_str(&fields.join(" "));
        out.push('\n');
    }
    for f in &mesh.faces {
        let mut line = f.len().to_string();
        for i in f {
            line.push(' ');
            line.push_str(&i.to_string());
        }
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Reads the subset of OFF written by [`write_off`].
pub fn read_off(input: &str) -> std::result::Result<Mesh, String> {
    let mut lines = input
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'));
    if lines.next() != Some("OFF") {
        return Err("missing OFF header".into());
    }
    let counts: Vec<usize> = lines
        .next()
        .ok_or("missing counts line")?
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| format!("bad count `{t}`")))
        .collect::<std::result::Result<_, _>>()?;
    let [nv, nf, _] = counts[..] else {
        return Err("counts line needs three fields".into());
    };
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let v: Vector = lines
            .next()
            .ok_or("truncated vertex list")?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| format!("bad coordinate `{t}`")))
            .collect::<std::result::Result<_, _>>()?;
        vertices.push(v);
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let fields: Vec<usize> = lines
            .next()
            .ok_or("truncated face list")?
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| format!("bad index `{t}`")))
            .collect::<std::result::Result<_, _>>()?;
        let (&n, rest) = fields.split_first().ok_or("empty face")?;
        if rest.len() != n || rest.iter().any(|&i| i >= nv) {
            return Err("malformed face".into());
        }
        faces.push(rest.to_vec());
    }
    Ok(Mesh { vertices, faces })
}
