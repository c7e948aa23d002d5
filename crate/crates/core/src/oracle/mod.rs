//! Independent reference values for the closed-form kernels.
//!
//! The reference element is triangulated, every simplex is split exactly
//! along the cut plane by bisecting sign-changing edges, and polynomials are
//! integrated on the pieces with Gauss rules of sufficient order. Interface
//! integrals use the facets of the pieces that lie in the plane. Nothing here
//! shares code with the recursive kernels.

mod quadrature;

pub use quadrature::integrate_simplex;

use crate::element::{variant_for, ElementKind, HalfSpaceCut};
use crate::{BoundaryMode, Error, PolyOrder, Result};

const DEDUP_TOL: f64 = 1e-12;

/// Convex polytope given by its vertices and, for each facet, the indices
/// of the vertices lying on it.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexPolytope {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub facets: Vec<Vec<usize>>,
}

/// Result of clipping a reference element by a half-space.
#[derive(Debug, Clone, PartialEq)]
pub struct Clipped {
    pub polytope: ConvexPolytope,
    /// Set when the intersection is nonempty but has zero volume (the plane
    /// touches the element in a face, edge or vertex); `polytope` is empty.
    pub degenerate: bool,
}

/// `{normal·x + d >= 0} ∩ element`.
pub fn clip(kind: ElementKind, cut: &HalfSpaceCut) -> Clipped {
    let dim = kind.dim();
    let ref_vertices = kind.vertices();
    let mut ineqs = kind.inequalities();
    let tight = |v: &[f64], (g, h): &(Vec<f64>, f64)| {
        (g.iter().zip(v).map(|(a, x)| a * x).sum::<f64>() + h).abs() <= DEDUP_TOL
    };

    let mut vertices: Vec<Vec<f64>> = Vec::new();
    let push = |p: Vec<f64>, vertices: &mut Vec<Vec<f64>>| {
        let dup = vertices
            .iter()
            .any(|q| q.iter().zip(&p).all(|(a, b)| (a - b).abs() <= DEDUP_TOL));
        if !dup {
            vertices.push(p);
        }
    };
    let values: Vec<f64> = ref_vertices.iter().map(|v| cut.eval(v)).collect();
    for (v, &val) in ref_vertices.iter().zip(&values) {
        if val >= 0.0 {
            push(v.clone(), &mut vertices);
        }
    }
    // edges: vertex pairs sharing dim-1 tight inequalities
    for i in 0..ref_vertices.len() {
        for j in i + 1..ref_vertices.len() {
            let (vi, vj) = (values[i], values[j]);
            if !((vi > 0.0 && vj < 0.0) || (vi < 0.0 && vj > 0.0)) {
                continue;
            }
            let shared = ineqs
                .iter()
                .filter(|q| tight(&ref_vertices[i], q) && tight(&ref_vertices[j], q))
                .count();
            if shared + 1 < dim {
                continue;
            }
            let t = vi / (vi - vj);
            let p = ref_vertices[i]
                .iter()
                .zip(&ref_vertices[j])
                .map(|(a, b)| a + t * (b - a))
                .collect();
            push(p, &mut vertices);
        }
    }

    let empty = |degenerate| Clipped {
        polytope: ConvexPolytope {
            dim,
            vertices: Vec::new(),
            facets: Vec::new(),
        },
        degenerate,
    };
    if vertices.is_empty() {
        return empty(false);
    }
    let volume = subdomain(kind, cut, 0, &|_| 1.0) / kind.density();
    if volume <= 1e-14 {
        return empty(true);
    }
    ineqs.push((cut.normal.clone(), cut.d));
    let facets = ineqs
        .iter()
        .map(|q| {
            (0..vertices.len())
                .filter(|&i| tight(&vertices[i], q))
                .collect::<Vec<_>>()
        })
        .filter(|f| f.len() >= dim)
        .collect();
    Clipped {
        polytope: ConvexPolytope {
            dim,
            vertices,
            facets,
        },
        degenerate: false,
    }
}

/// Simplices covering the reference element.
fn triangulation(kind: ElementKind) -> Vec<Vec<Vec<f64>>> {
    match kind {
        ElementKind::Segment | ElementKind::Hypercube(_) => {
            // one simplex per coordinate order: 0 -> e_π(1) -> e_π(1)+e_π(2) -> ...
            let dim = kind.dim();
            permutations(dim)
                .into_iter()
                .map(|perm| {
                    let mut v = vec![0.0; dim];
                    let mut simplex = vec![v.clone()];
                    for &axis in &perm {
                        v[axis] = 1.0;
                        simplex.push(v.clone());
                    }
                    simplex
                })
                .collect()
        }
        ElementKind::Triangle | ElementKind::Tetrahedron => vec![kind.vertices()],
        ElementKind::Prism => {
            let v = kind.vertices();
            let tet = |ids: [usize; 4]| ids.iter().map(|&i| v[i].clone()).collect();
            vec![tet([0, 1, 2, 3]), tet([1, 2, 3, 4]), tet([2, 3, 4, 5])]
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

#[derive(Default)]
struct Pieces {
    positive: Vec<Vec<Vec<f64>>>,
    negative: Vec<Vec<Vec<f64>>>,
    /// Facets in the plane, seen from the positive and the negative side.
    facets_pos: Vec<Vec<Vec<f64>>>,
    facets_neg: Vec<Vec<Vec<f64>>>,
}

fn split(simplex: Vec<Vec<f64>>, values: Vec<f64>, out: &mut Pieces) {
    let (mut hi, mut lo) = (0, 0);
    for (i, &v) in values.iter().enumerate() {
        if v > values[hi] {
            hi = i;
        }
        if v < values[lo] {
            lo = i;
        }
    }
    if values[lo] >= 0.0 || values[hi] <= 0.0 {
        let positive = values[lo] >= 0.0;
        let zeros: Vec<Vec<f64>> = simplex
            .iter()
            .zip(&values)
            .filter(|(_, &v)| v == 0.0)
            .map(|(p, _)| p.clone())
            .collect();
        let dim = simplex.len() - 1;
        if positive {
            if zeros.len() == dim {
                out.facets_pos.push(zeros);
            }
            out.positive.push(simplex);
        } else {
            if zeros.len() == dim {
                out.facets_neg.push(zeros);
            }
            out.negative.push(simplex);
        }
        return;
    }
    let t = values[hi] / (values[hi] - values[lo]);
    let p: Vec<f64> = simplex[hi]
        .iter()
        .zip(&simplex[lo])
        .map(|(a, b)| a + t * (b - a))
        .collect();
    for replace in [lo, hi] {
        let mut s = simplex.clone();
        let mut v = values.clone();
        s[replace] = p.clone();
        v[replace] = 0.0;
        split(s, v, out);
    }
}

fn pieces(kind: ElementKind, cut: &HalfSpaceCut) -> Pieces {
    let mut out = Pieces::default();
    for simplex in triangulation(kind) {
        let values = simplex.iter().map(|v| cut.eval(v)).collect();
        split(simplex, values, &mut out);
    }
    out
}

/// `∫ f` over `{normal·x + d > 0} ∩ element`, against the element's
/// reference measure. `degree` bounds the polynomial degree of `f`.
pub fn subdomain(
    kind: ElementKind,
    cut: &HalfSpaceCut,
    degree: u32,
    f: &dyn Fn(&[f64]) -> f64,
) -> f64 {
    if cut.normal.iter().all(|&a| a == 0.0) {
        let whole: f64 = triangulation(kind)
            .iter()
            .map(|s| integrate_simplex(s, degree, f))
            .sum();
        let weight = if cut.d > 0.0 {
            1.0
        } else if cut.d == 0.0 {
            0.5
        } else {
            0.0
        };
        return weight * whole * kind.density();
    }
    let p = pieces(kind, cut);
    kind.density()
        * p.positive
            .iter()
            .map(|s| integrate_simplex(s, degree, f))
            .sum::<f64>()
}

/// `∫ f δ(normal·x + d)` over the element: the surface integral over the
/// cut divided by `|normal|`. A cut lying on the boundary counts half
/// (`Half`) or full (`Full`).
pub fn interface(
    kind: ElementKind,
    cut: &HalfSpaceCut,
    degree: u32,
    mode: BoundaryMode,
    f: &dyn Fn(&[f64]) -> f64,
) -> f64 {
    let norm = cut.norm();
    if norm == 0.0 {
        return 0.0;
    }
    let p = pieces(kind, cut);
    let side = |facets: &[Vec<Vec<f64>>]| -> f64 {
        facets.iter().map(|s| integrate_simplex(s, degree, f)).sum()
    };
    let (pos, neg) = (side(&p.facets_pos), side(&p.facets_neg));
    // Interior cuts are seen from both sides; a boundary facet only from the
    // inside.
    let surface = match mode {
        BoundaryMode::Half => 0.5 * (pos + neg),
        BoundaryMode::Full => pos.max(neg),
    };
    kind.density() * surface / norm
}

/// Oracle counterpart of [`crate::integrate`] for `s` in `{-1, 0}`.
pub fn integrate(
    kind: ElementKind,
    cut: &HalfSpaceCut,
    powers: &[u32],
    s: PolyOrder,
    mode: BoundaryMode,
) -> Result<f64> {
    if cut.normal.len() != kind.dim() {
        return Err(Error::Arity {
            field: "normal",
            expected: kind.dim(),
            got: cut.normal.len(),
        });
    }
    if powers.len() != kind.arity() {
        return Err(Error::Arity {
            field: "powers",
            expected: kind.arity(),
            got: powers.len(),
        });
    }
    let variant = variant_for(kind, cut);
    let degree: u32 = powers.iter().sum();
    let f = |p: &[f64]| kind.basis_value(variant, powers, p);
    match s.get() {
        0 => Ok(subdomain(kind, cut, degree, &f)),
        -1 => Ok(interface(kind, cut, degree, mode, &f)),
        other => Err(Error::Unsupported(format!("oracle order {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: BoundaryMode = BoundaryMode::Half;

    #[test]
    fn clip_square_by_half_plane() {
        let c = clip(
            ElementKind::SQUARE,
            &HalfSpaceCut::new(vec![1.0, 0.0], -0.5),
        );
        assert!(!c.degenerate);
        let mut v = c.polytope.vertices.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(
            v,
            vec![
                vec![0.5, 0.0],
                vec![0.5, 1.0],
                vec![1.0, 0.0],
                vec![1.0, 1.0]
            ]
        );
        assert_eq!(c.polytope.facets.len(), 4);
    }

    #[test]
    fn clip_containing_half_space_is_identity() {
        let c = clip(
            ElementKind::Tetrahedron,
            &HalfSpaceCut::new(vec![1.0, 1.0, 1.0], 0.5),
        );
        assert_eq!(c.polytope.vertices, ElementKind::Tetrahedron.vertices());
        assert_eq!(c.polytope.facets.len(), 4);
    }

    #[test]
    fn clip_touching_is_degenerate() {
        let c = clip(
            ElementKind::Triangle,
            &HalfSpaceCut::new(vec![-1.0, -1.0], 0.0),
        );
        assert!(c.degenerate);
        assert!(c.polytope.vertices.is_empty());
        let c = clip(
            ElementKind::Triangle,
            &HalfSpaceCut::new(vec![-1.0, -1.0], -1.0),
        );
        assert!(!c.degenerate && c.polytope.vertices.is_empty());
    }

    #[test]
    fn kuhn_triangulation_covers_hypercube() {
        for dim in 1..=5 {
            let total: f64 = triangulation(ElementKind::new_hypercube(dim).unwrap())
                .iter()
                .map(|s| integrate_simplex(s, 0, &|_| 1.0))
                .sum();
            assert!((total - 1.0).abs() < 1e-13);
        }
        let prism: f64 = triangulation(ElementKind::Prism)
            .iter()
            .map(|s| integrate_simplex(s, 0, &|_| 1.0))
            .sum();
        assert!((prism - 1.0).abs() < 1e-15);
    }

    #[test]
    fn hand_computed_values() {
        let cut = HalfSpaceCut::new(vec![1.0, 0.0], -0.5);
        let v = integrate(ElementKind::SQUARE, &cut, &[1, 0], PolyOrder::SUBDOMAIN, H).unwrap();
        assert!((v - 0.375).abs() < 1e-15);
        let v = integrate(ElementKind::SQUARE, &cut, &[0, 2], PolyOrder::INTERFACE, H).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-15);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let diag = HalfSpaceCut::new(vec![r, r], -r);
        let v = integrate(ElementKind::SQUARE, &diag, &[0, 0], PolyOrder::INTERFACE, H).unwrap();
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-14);
        let v = integrate(
            ElementKind::Triangle,
            &diag,
            &[0, 0],
            PolyOrder::INTERFACE,
            H,
        )
        .unwrap();
        assert!((v - std::f64::consts::SQRT_2 / 2.0).abs() < 1e-14);
        let v = integrate(
            ElementKind::Triangle,
            &diag,
            &[0, 0],
            PolyOrder::INTERFACE,
            BoundaryMode::Full,
        )
        .unwrap();
        assert!((v - std::f64::consts::SQRT_2).abs() < 1e-14);
        let v = integrate(
            ElementKind::Segment,
            &HalfSpaceCut::new(vec![2.0], -1.0),
            &[0],
            PolyOrder::INTERFACE,
            H,
        )
        .unwrap();
        assert_eq!(v, 0.5);
    }

    #[test]
    fn prism_measure_and_basis() {
        let up = HalfSpaceCut::new(vec![0.0, 0.0, 1.0], 0.0);
        let v = integrate(ElementKind::Prism, &up, &[0, 0, 1], PolyOrder::SUBDOMAIN, H).unwrap();
        assert!((v - 0.1875).abs() < 1e-15);
    }

    #[test]
    fn zero_normal_is_constant_weight() {
        let cut = HalfSpaceCut::new(vec![0.0, 0.0], 0.0);
        let v = integrate(ElementKind::SQUARE, &cut, &[1, 0], PolyOrder::SUBDOMAIN, H).unwrap();
        assert_eq!(v, 0.25);
    }
}
