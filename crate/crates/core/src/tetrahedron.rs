//! Integrals over the reference tetrahedron `{x, y, z ≥ 0, x + y + z ≤ 1}`.
//!
//! The basis depends on the cut. Each variant is a linear change of
//! variables `(X, Y, Z)` onto the canonical simplex `{0 ≤ Z ≤ Y ≤ X ≤ 1}`,
//! where the integrand is `X^p Y^q Z^r`:
//!
//! | variant | basis                              | `X`         | `Y`     | `Z` |
//! |---------|------------------------------------|-------------|---------|-----|
//! | `V1`    | `(x+y+z)^m (y+z)^n z^o`            | `x+y+z`     | `y+z`   | `z` |
//! | `V2`    | `x^m (x+y+z)^n (z+x)^o`            | `x+y+z`     | `z+x`   | `x` |
//! | `V3`    | `(x+y)^m y^n (x+y+z)^o`            | `x+y+z`     | `x+y`   | `y` |
//!
//! The variant is picked so that the transformed `Y` and `Z` coefficients
//! are as large as possible, and it is returned with the value because the
//! integrand differs between variants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::element::contains_facet;
use crate::line_segment::{check_degree, lsi_any, BoundaryMode, PolyOrder};
use crate::polylog::{falling, inv_rising};
use crate::trace::{self, Branch};
use crate::triangle::tri_a;
use crate::{Error, Result};

const VERTICES: [[f64; 3]; 4] = [
    [0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [0.0, 0.0, 1.0],
];
const FACES: [&[usize]; 4] = [&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TetVariant {
    V1,
    V2,
    V3,
}

impl TetVariant {
    pub const ALL: [TetVariant; 3] = [TetVariant::V1, TetVariant::V2, TetVariant::V3];

    /// Variant used for the cut `(a, b, c)`. Ties go to the earlier variant.
    pub fn select(a: f64, b: f64, c: f64) -> TetVariant {
        let m1 = (b - a).abs().max((c - b).abs());
        let m2 = (c - b).abs().max((a - c).abs());
        let m3 = (a - c).abs().max((b - a).abs());
        if m1 >= m2.max(m3) {
            TetVariant::V1
        } else if m2 >= m3 {
            TetVariant::V2
        } else {
            TetVariant::V3
        }
    }

    /// Canonical coordinates `(X, Y, Z)` of a point of the reference
    /// tetrahedron.
    pub fn canonical_point(self, p: [f64; 3]) -> [f64; 3] {
        let [x, y, z] = p;
        let sum = x + y + z;
        match self {
            TetVariant::V1 => [sum, y + z, z],
            TetVariant::V2 => [sum, z + x, x],
            TetVariant::V3 => [sum, x + y, y],
        }
    }

    /// Canonical-domain normal for the cut `(a, b, c)`; the offset is
    /// unchanged.
    pub fn canonical_normal(self, a: f64, b: f64, c: f64) -> [f64; 3] {
        match self {
            TetVariant::V1 => [a, b - a, c - b],
            TetVariant::V2 => [b, c - b, a - c],
            TetVariant::V3 => [c, a - c, b - a],
        }
    }

    /// Canonical exponents `(p, q, r)` of the basis element with exponents
    /// `(m, n, o)`.
    pub fn canonical_powers(self, [m, n, o]: [u32; 3]) -> [u32; 3] {
        match self {
            TetVariant::V1 => [m, n, o],
            TetVariant::V2 => [n, o, m],
            TetVariant::V3 => [o, m, n],
        }
    }

    /// Basis element with exponents `(m, n, o)` evaluated at a point of the
    /// reference tetrahedron.
    pub fn basis_value(self, p: [f64; 3], powers: [u32; 3]) -> f64 {
        let q = self.canonical_point(p);
        let e = self.canonical_powers(powers);
        q.iter().zip(e).map(|(x, k)| x.powi(k as i32)).product()
    }
}

impl fmt::Display for TetVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            TetVariant::V1 => "V1",
            TetVariant::V2 => "V2",
            TetVariant::V3 => "V3",
        };
        f.write_str(name)
    }
}

/// Plane `a x + b y + c z + d` on the reference tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TetCut {
    normal: [f64; 3],
    d: f64,
}

impl TetCut {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite("normal"));
        }
        if !d.is_finite() {
            return Err(Error::NonFinite("d"));
        }
        if a == 0.0 && b == 0.0 && c == 0.0 {
            return Err(Error::ZeroNormal);
        }
        Ok(TetCut {
            normal: [a, b, c],
            d,
        })
    }

    pub fn normal(&self) -> [f64; 3] {
        self.normal
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn variant(&self) -> TetVariant {
        let [a, b, c] = self.normal;
        TetVariant::select(a, b, c)
    }
}

/// Tetrahedron integral in the basis of the variant chosen for the cut.
pub fn tti(
    cut: &TetCut,
    powers: [u32; 3],
    s: PolyOrder,
    mode: BoundaryMode,
) -> Result<(f64, TetVariant)> {
    let variant = cut.variant();
    Ok((tti_variant(cut, variant, powers, s, mode)?, variant))
}

/// Tetrahedron integral in the basis of a given variant. Any variant is
/// valid for any cut; [`tti`] picks the best conditioned one.
pub fn tti_variant(
    cut: &TetCut,
    variant: TetVariant,
    powers: [u32; 3],
    s: PolyOrder,
    mode: BoundaryMode,
) -> Result<f64> {
    check_degree(powers.iter().sum())?;
    let [a, b, c] = cut.normal;
    let [p, q, r] = variant.canonical_powers(powers);
    let [ta, tb, tc] = variant.canonical_normal(a, b, c);
    let value = tti_a(ta, tb, tc, cut.d, p, q, r, s.get());
    let on_face = s.get() == -1
        && mode == BoundaryMode::Full
        && contains_facet(&cut.normal, cut.d, &VERTICES, &FACES);
    Ok(if on_face { 2.0 * value } else { value })
}

/// `∫ X^m Y^n Z^o (...)` over the canonical simplex `{Z ≤ Y ≤ X}`.
#[allow(clippy::too_many_arguments)]
pub fn tti_a(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    if b == 0.0 && c == 0.0 {
        let inner = 1.0 / ((o as f64 + 1.0) * (n as f64 + o as f64 + 2.0));
        return inner * lsi_any(a, d, m + n + o + 2, s, BoundaryMode::Half);
    }
    let sum = a + b + c + d;
    if s == -1 {
        if sum <= 0.0 {
            tti_b(a, b, c, d, m, n, o, s)
        } else {
            tti_b(-a, -b, -c, -d, m, n, o, s)
        }
    } else if sum <= b.abs().max(c.abs()) {
        tti_b(a, b, c, d, m, n, o, s)
    } else {
        tti_c(a, b, c, d, m, n, o, s)
    }
}

/// Antiderivative formulas; peels `Z` when `|b| <= |c|`, else `Y`.
#[allow(clippy::too_many_arguments)]
pub fn tti_b(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    trace::hit(Branch::TetB);
    if b.abs() <= c.abs() {
        tet_peel_z(a, b, c, d, m, n, o, s)
    } else {
        tet_peel_y(a, b, c, d, m, n, o, s)
    }
}

/// Needs `c != 0`.
#[allow(clippy::too_many_arguments)]
pub fn tet_peel_z(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    let neg_c = -c;
    let mut sum = 0.0;
    for i in 1..=o + 1 {
        let v = tri_a(a, b + c, d, m, n + o + 1 - i, s + i as i32);
        if v != 0.0 {
            sum -= falling(o, i) / neg_c.powi(i as i32) * v;
        }
    }
    let tail = tri_a(a, b, d, m, n, s + o as i32 + 1);
    if tail != 0.0 {
        sum += falling(o, o + 1) / neg_c.powi(o as i32 + 1) * tail;
    }
    sum
}

/// Needs `b != 0`.
#[allow(clippy::too_many_arguments)]
pub fn tet_peel_y(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    let neg_b = -b;
    let mut sum = 0.0;
    for i in 1..=n + 1 {
        let si = s + i as i32;
        let v = tri_a(a, b + c, d, m, n + o + 1 - i, si) - tri_a(a + b, c, d, m + n + 1 - i, o, si);
        if v != 0.0 {
            sum += falling(n, i) / neg_b.powi(i as i32) * v;
        }
    }
    sum
}

/// Integration by parts forms for `a + b + c + d > max(|b|, |c|)`; `s >= 0`.
#[allow(clippy::too_many_arguments)]
pub fn tti_c(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    trace::hit(Branch::TetC);
    debug_assert!(s >= 0);
    let su = s as u32;
    let mut sum = 0.0;
    if b.abs() <= c.abs() {
        let neg_c = -c;
        for i in 0..=su {
            let v = tri_a(a, b + c, d, m, n + o + i + 1, s - i as i32);
            if v != 0.0 {
                sum += inv_rising(o, i) * neg_c.powi(i as i32) * v;
            }
        }
        let interface = tti_a(a, b, c, d, m, n, o + su + 1, -1);
        if interface != 0.0 {
            sum += inv_rising(o, su) * neg_c.powi(s + 1) * interface;
        }
    } else {
        let neg_b = -b;
        for i in 0..=su {
            let si = s - i as i32;
            let v =
                tri_a(a + b, c, d, m + n + i + 1, o, si) - tri_a(a, b + c, d, m, n + o + i + 1, si);
            if v != 0.0 {
                sum += inv_rising(n, i) * neg_b.powi(i as i32) * v;
            }
        }
        let interface = tti_a(a, b, c, d, m, n + su + 1, o, -1);
        if interface != 0.0 {
            sum += inv_rising(n, su) * neg_b.powi(s + 1) * interface;
        }
    }
    sum
}

/// Integral of `X^p Y^q Z^r` over the canonical simplex, which is also the
/// full moment of the matching basis element of every variant.
pub fn full_moment([p, q, r]: [u32; 3]) -> f64 {
    let (p, q, r) = (p as f64, q as f64, r as f64);
    1.0 / ((r + 1.0) * (q + r + 2.0) * (p + q + r + 3.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: BoundaryMode = BoundaryMode::Half;

    fn value(n: [f64; 3], d: f64, powers: [u32; 3], s: i32) -> (f64, TetVariant) {
        let cut = TetCut::new(n[0], n[1], n[2], d).unwrap();
        tti(&cut, powers, PolyOrder::new(s).unwrap(), H).unwrap()
    }

    // Nested oracle on the canonical simplex: exact in Z, composite Gauss in
    // Y and X with breakpoints where the cut crosses the integration limits.
    fn canonical_oracle(a: f64, b: f64, c: f64, d: f64, [p, q, r]: [u32; 3]) -> f64 {
        let rule = gauss_quad::legendre::GaussLegendre::new(24.try_into().unwrap());
        let piecewise = |lo: f64, hi: f64, cands: &[f64], f: &dyn Fn(f64) -> f64| -> f64 {
            let mut br = vec![lo, hi];
            br.extend(
                cands
                    .iter()
                    .copied()
                    .filter(|t| t.is_finite() && *t > lo && *t < hi),
            );
            br.sort_by(f64::total_cmp);
            br.windows(2).map(|w| rule.integrate(w[0], w[1], f)).sum()
        };
        let zint = |x: f64, y: f64| -> f64 {
            let k = a * x + b * y + d;
            let (lo, hi) = if c > 0.0 {
                ((-k / c).clamp(0.0, y), y)
            } else if c < 0.0 {
                (0.0, (-k / c).clamp(0.0, y))
            } else if k > 0.0 {
                (0.0, y)
            } else {
                (0.0, 0.0)
            };
            let e = r as i32 + 1;
            (hi.powi(e) - lo.powi(e)) / e as f64
        };
        let yint = |x: f64| -> f64 {
            // kinks where the z-root crosses 0 or y
            let cands = [-(a * x + d) / b, -(a * x + d) / (b + c)];
            x.powi(p as i32) * piecewise(0.0, x, &cands, &|y| y.powi(q as i32) * zint(x, y))
        };
        let cands = [-d / a, -d / (a + b), -d / (a + b + c)];
        piecewise(0.0, 1.0, &cands, &yint)
    }

    #[test]
    fn examples() {
        let (v, _) = value([0.0, 0.0, 1.0], 1.0, [0, 0, 0], 0);
        assert!((v - 1.0 / 6.0).abs() < 1e-15);
        let (v, _) = value([0.0, 0.0, 1.0], -0.25, [0, 0, 0], 0);
        assert!((v - 0.0703125).abs() < 1e-15);
        let (v, _) = value([0.0, 0.0, 1.0], -0.25, [0, 0, 0], -1);
        assert!((v - 0.28125).abs() < 1e-15);
    }

    #[test]
    fn variant_selection() {
        assert_eq!(TetVariant::select(0.0, 0.0, 1.0), TetVariant::V1);
        assert_eq!(TetVariant::select(1.0, 0.0, 0.0), TetVariant::V1);
        assert_eq!(TetVariant::select(-1.0, 1.0, 1.0), TetVariant::V1);
        assert_eq!(TetVariant::select(0.0, 0.5, 1.0), TetVariant::V2);
        assert_eq!(TetVariant::select(1.0, 0.5, 0.0), TetVariant::V2);
        // the largest pairwise difference always enters m1 or m2
        assert_eq!(TetVariant::select(0.0, 1.0, 0.5), TetVariant::V1);
    }

    #[test]
    fn basis_changes_are_consistent() {
        let p = [0.2, 0.3, 0.1];
        let (a, b, c, d) = (0.7, -0.4, 1.3, 0.05);
        for v in TetVariant::ALL {
            let q = v.canonical_point(p);
            let [ta, tb, tc] = v.canonical_normal(a, b, c);
            let lhs = a * p[0] + b * p[1] + c * p[2] + d;
            let rhs = ta * q[0] + tb * q[1] + tc * q[2] + d;
            assert!((lhs - rhs).abs() < 1e-15);
            assert!(q[2] <= q[1] && q[1] <= q[0] && q[0] <= 1.0);
        }
        assert_eq!(
            TetVariant::V2.basis_value([0.5, 0.25, 0.125], [1, 0, 0]),
            0.5
        );
        assert_eq!(
            TetVariant::V3.basis_value([0.5, 0.25, 0.125], [0, 1, 0]),
            0.25
        );
    }

    #[test]
    fn equal_coefficients_use_degenerate_path() {
        let (v, var) = value([0.5, 0.5, 0.5], -0.25, [0, 0, 0], 0);
        assert_eq!(var, TetVariant::V1);
        // {x + y + z > 1/2}: 1/6 - (1/2)^3/6
        assert!((v - (1.0 - 0.125) / 6.0).abs() < 1e-15);
    }

    #[test]
    fn canonical_matches_nested_oracle() {
        let cuts = [
            (0.2, -0.5, 0.8, -0.1),
            (1.0, 0.4, 0.5, -0.6),
            (-0.7, 0.3, -0.2, 0.4),
            (0.9, -0.9, 0.6, -0.3),
            (0.3, 0.6, -1.1, -0.2),
        ];
        for (a, b, c, d) in cuts {
            for pw in [[0, 0, 0], [1, 1, 1], [2, 0, 1], [0, 3, 0], [1, 0, 3]] {
                let got = tti_a(a, b, c, d, pw[0], pw[1], pw[2], 0);
                let want = canonical_oracle(a, b, c, d, pw);
                assert!(
                    (got - want).abs() < 1e-12,
                    "({a},{b},{c},{d}) {pw:?}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn peel_orders_agree() {
        let z = tet_peel_z(1.0, 0.4, 0.5, -0.6, 0, 0, 0, 0);
        let y = tet_peel_y(1.0, 0.4, 0.5, -0.6, 0, 0, 0, 0);
        assert!((z - y).abs() < 1e-12);
    }

    #[test]
    fn c_branch_examples() {
        let ((), counts) = trace::record(|| {
            assert!((tti_a(0.1, 0.2, 0.3, 1.0, 0, 0, 0, 0) - 1.0 / 6.0).abs() < 1e-12);
            let v = tti_a(1e-9, 1e-9, 1e-9, 1.0, 1, 2, 1, 0);
            assert!((v - full_moment([1, 2, 1])).abs() < 1e-12);
        });
        assert!(counts.get(Branch::TetC) >= 2);
    }

    #[test]
    fn face_interface() {
        // face z = 0: triangle moments, halved in HALF mode
        let cut = TetCut::new(0.0, 0.0, 1.0, 0.0).unwrap();
        let (half, _) = tti(&cut, [0, 0, 0], PolyOrder::INTERFACE, H).unwrap();
        let (full, _) = tti(&cut, [0, 0, 0], PolyOrder::INTERFACE, BoundaryMode::Full).unwrap();
        assert!((half - 0.25).abs() < 1e-15);
        assert!((full - 0.5).abs() < 1e-15);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn coeff() -> impl Strategy<Value = f64> {
            prop_oneof![-2.0f64..-0.05, 0.05f64..2.0]
        }

        fn wide() -> impl Strategy<Value = f64> {
            prop_oneof![-2.0f64..-0.3, 0.3f64..2.0]
        }

        fn powers() -> impl Strategy<Value = [u32; 3]> {
            [0u32..4, 0u32..4, 0u32..4]
        }

        proptest! {
            #[test]
            fn complementarity(a in coeff(), b in coeff(), c in coeff(), d in -2.0f64..2.0, pw in powers()) {
                let (x, vx) = value([a, b, c], d, pw, 0);
                let (y, vy) = value([-a, -b, -c], -d, pw, 0);
                prop_assert_eq!(vx, vy);
                let full = full_moment(vx.canonical_powers(pw));
                prop_assert!((x + y - full).abs() < 1e-12);
            }

            #[test]
            fn sign_symmetry(a in coeff(), b in coeff(), c in coeff(), d in -2.0f64..2.0, pw in powers()) {
                let (x, _) = value([a, b, c], d, pw, -1);
                let (y, _) = value([-a, -b, -c], -d, pw, -1);
                prop_assert!((x - y).abs() <= 1e-13 * (1.0 + x.abs()));
            }

            #[test]
            fn peel_orders_agree(a in coeff(), b in wide(), c in wide(), t in 0.0f64..1.0, pw in powers(), s in 0i32..2) {
                let hi = b.abs().max(c.abs()) - a - b - c;
                let d = hi - 2.0 * t;
                let z = tet_peel_z(a, b, c, d, pw[0], pw[1], pw[2], s);
                let y = tet_peel_y(a, b, c, d, pw[0], pw[1], pw[2], s);
                prop_assert!((z - y).abs() <= 1e-10 * z.abs().max(y.abs()).max(1e-3), "{z} vs {y}");
            }

            #[test]
            fn every_variant_is_a_valid_basis(a in coeff(), b in coeff(), c in coeff(), d in -2.0f64..2.0, pw in powers()) {
                let cut = TetCut::new(a, b, c, d).unwrap();
                let neg = TetCut::new(-a, -b, -c, -d).unwrap();
                for v in TetVariant::ALL {
                    let x = tti_variant(&cut, v, pw, PolyOrder::SUBDOMAIN, H).unwrap();
                    let y = tti_variant(&neg, v, pw, PolyOrder::SUBDOMAIN, H).unwrap();
                    let full = full_moment(v.canonical_powers(pw));
                    prop_assert!((x + y - full).abs() < 1e-9, "{v}: {}", x + y - full);
                }
            }
        }
    }
}
