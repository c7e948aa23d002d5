//! Integrals over the unit hypercube `[0,1]^dim` cut by `n·x + d`, for any
//! dimension. The square and the cube are the `dim = 2, 3` cases.
//!
//! Zero normal coefficients split off as `1/(m_i+1)` factors; the rest are
//! sorted by magnitude and the largest one is peeled by [`hci_b`] (or
//! [`hci_c`] when `Σa_i + d` is large compared to it) until a line segment
//! integral remains.

use crate::line_segment::{check_degree, lsi_raw, BoundaryMode, PolyOrder};
use crate::polylog::{falling, inv_rising, lim_li_raw};
use crate::trace::{self, Branch};
use crate::{Error, Result};

/// Recursion depth grows with the dimension; the formulas do not care.
pub const MAX_DIM: usize = 10;

/// Hyperplane `n·x + d` over `[0,1]^dim`; zero coefficients are allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct HypercubeCut {
    normal: Vec<f64>,
    d: f64,
}

impl HypercubeCut {
    pub fn new(normal: Vec<f64>, d: f64) -> Result<Self> {
        let dim = normal.len();
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Dimension { dim, max: MAX_DIM });
        }
        if normal.iter().any(|a| !a.is_finite()) {
            return Err(Error::NonFinite("normal"));
        }
        if !d.is_finite() {
            return Err(Error::NonFinite("d"));
        }
        Ok(HypercubeCut { normal, d })
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn normal(&self) -> &[f64] {
        &self.normal
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Hypercube integral of `Π x_i^{m_i}`.
///
/// An all-zero normal is accepted for `s >= 0` (the weight is then the
/// constant `-limLi_s(d)`) and rejected for `s = -1`.
pub fn hci(cut: &HypercubeCut, m: &[u32], s: PolyOrder, mode: BoundaryMode) -> Result<f64> {
    if m.len() != cut.dim() {
        return Err(Error::Arity {
            field: "exponents",
            expected: cut.dim(),
            got: m.len(),
        });
    }
    check_degree(m.iter().sum())?;
    if s.get() == -1 && cut.normal.iter().all(|&a| a == 0.0) {
        return Err(Error::ZeroNormal);
    }
    Ok(hci_raw(&cut.normal, cut.d, m, s.get(), mode))
}

/// Algorithm entry without validation: strips zero coefficients, sorts the
/// remaining ones by magnitude (index breaks ties) and calls [`hci_a`].
pub(crate) fn hci_raw(normal: &[f64], d: f64, m: &[u32], s: i32, mode: BoundaryMode) -> f64 {
    let mut factor = 1.0;
    let mut kept: Vec<(f64, u32, usize)> = Vec::with_capacity(normal.len());
    for (i, (&a, &mi)) in normal.iter().zip(m).enumerate() {
        if a == 0.0 {
            factor /= mi as f64 + 1.0;
        } else {
            kept.push((a, mi, i));
        }
    }
    if kept.is_empty() {
        return -factor * lim_li_raw(s, d);
    }
    kept.sort_by(|x, y| x.0.abs().total_cmp(&y.0.abs()).then(x.2.cmp(&y.2)));
    let n: Vec<f64> = kept.iter().map(|k| k.0).collect();
    let e: Vec<u32> = kept.iter().map(|k| k.1).collect();
    factor * hci_a(&n, d, &e, s, mode)
}

/// Coefficients must be nonzero and sorted by increasing magnitude.
pub fn hci_a(normal: &[f64], d: f64, m: &[u32], s: i32, mode: BoundaryMode) -> f64 {
    let dim = normal.len();
    if dim == 1 {
        return lsi_raw(normal[0], d, m[0], s, mode);
    }
    let sum = normal.iter().sum::<f64>() + d;
    if s == -1 {
        if sum <= 0.0 {
            hci_b(normal, d, m, -1, mode)
        } else {
            let flipped: Vec<f64> = normal.iter().map(|a| -a).collect();
            hci_b(&flipped, -d, m, -1, mode)
        }
    } else if sum <= normal[dim - 1].abs() {
        hci_b(normal, d, m, s, mode)
    } else {
        hci_c(normal, d, m, s, mode)
    }
}

/// Peels the last coordinate with the antiderivative formula.
/// Requires `dim >= 2`.
pub fn hci_b(normal: &[f64], d: f64, m: &[u32], s: i32, mode: BoundaryMode) -> f64 {
    trace::hit(Branch::HciB);
    let dim = normal.len();
    debug_assert!(dim >= 2);
    let (a, mm) = (normal[dim - 1], m[dim - 1]);
    let (rest_n, rest_m) = (&normal[..dim - 1], &m[..dim - 1]);
    let neg_a = -a;
    let mut sum = 0.0;
    for i in 1..=mm + 1 {
        let inner = hci_a(rest_n, a + d, rest_m, s + i as i32, mode);
        if inner != 0.0 {
            sum -= falling(mm, i) / neg_a.powi(i as i32) * inner;
        }
    }
    let tail = hci_a(rest_n, d, rest_m, s + mm as i32 + 1, mode);
    if tail != 0.0 {
        sum += falling(mm, mm + 1) / neg_a.powi(mm as i32 + 1) * tail;
    }
    sum
}

/// Integration by parts form, free of negative powers of the peeled
/// coefficient. Requires `dim >= 2` and `s >= 0`.
pub fn hci_c(normal: &[f64], d: f64, m: &[u32], s: i32, mode: BoundaryMode) -> f64 {
    trace::hit(Branch::HciC);
    let dim = normal.len();
    debug_assert!(dim >= 2 && s >= 0);
    let (a, mm) = (normal[dim - 1], m[dim - 1]);
    let neg_a = -a;
    let su = s as u32;

    let mut raised = m.to_vec();
    raised[dim - 1] = mm + su + 1;
    let mut sum = 0.0;
    let interface = hci_a(normal, d, &raised, -1, mode);
    if interface != 0.0 {
        sum += inv_rising(mm, su) * neg_a.powi(s + 1) * interface;
    }
    let (rest_n, rest_m) = (&normal[..dim - 1], &m[..dim - 1]);
    for i in 0..=su {
        let inner = hci_a(rest_n, a + d, rest_m, s - i as i32, mode);
        if inner != 0.0 {
            sum += inv_rising(mm, i) * neg_a.powi(i as i32) * inner;
        }
    }
    sum
}

/// `Π 1/(m_i+1)`, the integral of the monomial over the whole hypercube.
pub fn full_moment(m: &[u32]) -> f64 {
    m.iter().map(|&mi| 1.0 / (mi as f64 + 1.0)).product()
}
