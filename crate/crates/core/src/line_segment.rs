//! Line segment integrals on `[0,1]`.
//!
//! `lsi(a, d, m, s)` is `-lim t^{-s} ∫_0^1 x^m Li_s(-exp((a x + d) t)) dx`.
//! For `s = 0` this is `∫_0^1 x^m U(a x + d) dx`; for `s = -1` it is the
//! point evaluation `(1/|a|) (-d/a)^m` at the root when the root lies in the
//! segment. All the higher-dimensional recursions bottom out here.

use serde::{Deserialize, Serialize};

use crate::polylog::{factorial, falling, lim_li_raw, MAX_TOTAL_DEGREE};
use crate::trace::{self, Branch};
use crate::{Error, Result};

/// Polylogarithm order: `-1` (interface), `0` (subdomain) or an auxiliary
/// higher order used inside the recursions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PolyOrder(i32);

impl PolyOrder {
    pub const INTERFACE: PolyOrder = PolyOrder(-1);
    pub const SUBDOMAIN: PolyOrder = PolyOrder(0);

    pub fn new(s: i32) -> Result<Self> {
        if s < -1 {
            return Err(Error::InvalidPolyOrder(s));
        }
        Ok(PolyOrder(s))
    }

    pub fn get(self) -> i32 {
        self.0
    }
}

/// How an interface lying exactly on the element boundary is weighted.
///
/// `Half` keeps the half of the Dirac mass that falls inside the element;
/// `Full` counts the whole boundary integral.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryMode {
    #[default]
    Half,
    Full,
}

/// Cut `a x + d` of the unit segment, `a != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SegmentCut {
    a: f64,
    d: f64,
}

impl SegmentCut {
    pub fn new(a: f64, d: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::NonFinite("a"));
        }
        if !d.is_finite() {
            return Err(Error::NonFinite("d"));
        }
        if a == 0.0 {
            return Err(Error::ZeroCoefficient);
        }
        Ok(SegmentCut { a, d })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

pub(crate) fn check_degree(degree: u32) -> Result<()> {
    if degree > MAX_TOTAL_DEGREE {
        return Err(Error::DegreeCap {
            degree,
            cap: MAX_TOTAL_DEGREE,
        });
    }
    Ok(())
}

/// Line segment integral.
///
/// For `s = -1` the result is the raw point-evaluation formula, scaled by
/// `1/|a|`; it is the interface integral only when `|a| = 1`.
pub fn lsi(cut: SegmentCut, m: u32, s: PolyOrder, mode: BoundaryMode) -> Result<f64> {
    check_degree(m)?;
    Ok(lsi_raw(cut.a, cut.d, m, s.0, mode))
}

/// Unchecked kernel; `a != 0`, `s >= -1`.
pub(crate) fn lsi_raw(a: f64, d: f64, m: u32, s: i32, mode: BoundaryMode) -> f64 {
    debug_assert!(a != 0.0);
    if s == -1 {
        trace::hit(Branch::LsiPoint);
        point_evaluation(a, d, m, mode)
    } else if d <= 0.0 || a + d <= 0.0 {
        trace::hit(Branch::LsiLine);
        line_formula(a, d, m, s)
    } else {
        trace::hit(Branch::LsiPositive);
        positive_formula(a, d, m, s)
    }
}

/// Like [`lsi_raw`] but tolerates `a = 0`, where the weight is the constant
/// `-limLi_s(d)` and the result is `-limLi_s(d)/(m+1)`. The recursions on
/// triangles, tetrahedra and prisms produce such calls for cuts parallel to
/// an edge.
pub(crate) fn lsi_any(a: f64, d: f64, m: u32, s: i32, mode: BoundaryMode) -> f64 {
    if a != 0.0 {
        lsi_raw(a, d, m, s, mode)
    } else if s >= 0 {
        -lim_li_raw(s, d) / (m as f64 + 1.0)
    } else {
        // Dirac weight of a constant argument: zero mass unless d = 0, where
        // the integral is not defined. Callers never reach that corner.
        debug_assert!(d != 0.0, "interface integral of a constant weight");
        0.0
    }
}

/// Point evaluation for `s = -1`, with `0^0 = 1`.
pub fn point_evaluation(a: f64, d: f64, m: u32, mode: BoundaryMode) -> f64 {
    let root = -d / a;
    let inv = 1.0 / a.abs();
    if root > 0.0 && root < 1.0 {
        inv * root.powi(m as i32)
    } else if root == 0.0 || root == 1.0 {
        let w = match mode {
            BoundaryMode::Half => 0.5,
            BoundaryMode::Full => 1.0,
        };
        w * inv * root.powi(m as i32)
    } else {
        0.0
    }
}

/// Closed form obtained from the antiderivative:
/// `Σ_{i=1}^{m+1} m!/(m+1-i)! (-a)^{-i} limLi_{s+i}(a+d) - m!/(-a)^{m+1} limLi_{s+m+1}(d)`.
///
/// Valid for every `a != 0`, `s >= 0`, but loses everything to overflow when
/// `d >> |a|`; [`positive_formula`] covers that regime.
pub fn line_formula(a: f64, d: f64, m: u32, s: i32) -> f64 {
    let neg_a = -a;
    let mut sum = 0.0;
    for i in 1..=m + 1 {
        let l = lim_li_raw(s + i as i32, a + d);
        if l != 0.0 {
            sum += falling(m, i) * l / neg_a.powi(i as i32);
        }
    }
    let tail = lim_li_raw(s + m as i32 + 1, d);
    if tail != 0.0 {
        sum -= factorial(m) * tail / neg_a.powi(m as i32 + 1);
    }
    sum
}

/// `Σ_{i=0}^{s} m! (-a)^{s-i} (a+d)^i / (i! (m+1+s-i)!)`, equal to
/// [`line_formula`] when `d > 0` and `a + d > 0` (the root lies outside
/// `[0,1]`) and free of negative powers of `a`.
pub fn positive_formula(a: f64, d: f64, m: u32, s: i32) -> f64 {
    debug_assert!(s >= 0);
    let s = s as u32;
    let neg_a = -a;
    let ad = a + d;
    let mfact = factorial(m);
    let mut sum = 0.0;
    for i in 0..=s {
        let term = neg_a.powi((s - i) as i32) * ad.powi(i as i32)
            / (factorial(i) * factorial(m + 1 + s - i));
        sum += term;
    }
    mfact * sum
}
