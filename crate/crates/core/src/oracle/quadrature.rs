//! Gauss rules on simplices embedded in `R^n`, built from the collapsed
//! (Duffy) map of the unit cube.

use std::num::NonZeroUsize;

use gauss_quad::legendre::GaussLegendre;

/// Gauss–Legendre nodes and weights on `[0,1]`.
fn unit_rule(points: usize) -> Vec<(f64, f64)> {
    let n = NonZeroUsize::new(points.max(1)).unwrap();
    GaussLegendre::new(n)
        .as_node_weight_pairs()
        .iter()
        .map(|&(x, w)| ((x + 1.0) / 2.0, w / 2.0))
        .collect()
}

/// `sqrt(det(EᵀE))` for the edge vectors `v_i - v_0`: `k!` times the
/// `k`-volume of the simplex.
pub(crate) fn gram_root(simplex: &[Vec<f64>]) -> f64 {
    let k = simplex.len() - 1;
    if k == 0 {
        return 1.0;
    }
    let v0 = &simplex[0];
    let edges: Vec<Vec<f64>> = simplex[1..]
        .iter()
        .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
        .collect();
    let gram = nalgebra::DMatrix::from_fn(k, k, |i, j| {
        edges[i]
            .iter()
            .zip(&edges[j])
            .map(|(a, b)| a * b)
            .sum::<f64>()
    });
    gram.determinant().max(0.0).sqrt()
}

/// Integral over a `k`-simplex (given by `k+1` vertices in `R^n`) of `f`
/// against the `k`-dimensional measure. Exact for polynomials of total
/// degree `degree`.
pub fn integrate_simplex(simplex: &[Vec<f64>], degree: u32, f: &dyn Fn(&[f64]) -> f64) -> f64 {
    let k = simplex.len() - 1;
    let scale = gram_root(simplex);
    if k == 0 {
        return f(&simplex[0]);
    }
    if scale == 0.0 {
        return 0.0;
    }
    // In collapsed coordinates the integrand has degree at most
    // degree + k - 1 in each variable.
    let rule = unit_rule((degree as usize + k) / 2 + 1);
    let n = simplex[0].len();
    let mut point = vec![0.0; n];
    let mut idx = vec![0usize; k];
    let mut total = 0.0;
    loop {
        // barycentric weights: λ_j = u_j Π_{i<j} (1-u_i), λ_0 = Π (1-u_i)
        let mut rest = 1.0;
        let mut weight = 1.0;
        point.iter_mut().for_each(|x| *x = 0.0);
        for (j, &i) in idx.iter().enumerate() {
            let (u, w) = rule[i];
            let lam = rest * u;
            for (x, v) in point.iter_mut().zip(&simplex[j + 1]) {
                *x += lam * v;
            }
            weight *= w * (1.0 - u).powi((k - 1 - j) as i32);
            rest *= 1.0 - u;
        }
        for (x, v) in point.iter_mut().zip(&simplex[0]) {
            *x += rest * v;
        }
        total += weight * f(&point);

        let mut axis = 0;
        loop {
            if axis == k {
                return scale * total;
            }
            idx[axis] += 1;
            if idx[axis] < rule.len() {
                break;
            }
            idx[axis] = 0;
            axis += 1;
        }
    }
}
