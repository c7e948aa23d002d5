//! Integrals over the reference triangle `{x, y ≥ 0, x + y ≤ 1}` with basis
//! `(1-x)^m y^n`.
//!
//! The substitution `x -> 1 - x` maps the problem onto the canonical triangle
//! `{0 ≤ y ≤ x ≤ 1}` with the plain basis `x^m y^n`, where all the `tri_*`
//! kernels below live. Keep the two conventions apart: [`tri`] takes the
//! original cut and basis, [`tri_a`] the transformed ones.

use crate::element::contains_facet;
use crate::line_segment::{check_degree, lsi_any, BoundaryMode, PolyOrder};
use crate::polylog::{factorial, falling, inv_rising, lim_li_raw};
use crate::trace::{self, Branch};
use crate::{Error, Result};

const H: BoundaryMode = BoundaryMode::Half;

const VERTICES: [[f64; 2]; 3] = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
const EDGES: [&[usize]; 3] = [&[0, 1], &[1, 2], &[2, 0]];

/// Line `a x + b y + d` on the reference triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleCut {
    a: f64,
    b: f64,
    d: f64,
}

impl TriangleCut {
    pub fn new(a: f64, b: f64, d: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::NonFinite("normal"));
        }
        if !d.is_finite() {
            return Err(Error::NonFinite("d"));
        }
        if a == 0.0 && b == 0.0 {
            return Err(Error::ZeroNormal);
        }
        Ok(TriangleCut { a, b, d })
    }

    pub fn normal(&self) -> [f64; 2] {
        [self.a, self.b]
    }

    pub fn d(&self) -> f64 {
        self.d
    }
}

/// Triangle integral of `(1-x)^m y^n`.
pub fn tri(cut: &TriangleCut, m: u32, n: u32, s: PolyOrder, mode: BoundaryMode) -> Result<f64> {
    check_degree(m + n)?;
    let TriangleCut { a, b, d } = *cut;
    let value = tri_a(-a, b, d + a, m, n, s.get());
    let on_edge = s.get() == -1
        && mode == BoundaryMode::Full
        && contains_facet(&[a, b], d, &VERTICES, &EDGES);
    Ok(if on_edge { 2.0 * value } else { value })
}

/// `∫_0^1 x^m ∫_0^x y^n (...) dy dx` on the canonical triangle.
/// Accepts `a = b = 0` (constant weight) for `s >= 0`.
pub fn tri_a(a: f64, b: f64, d: f64, m: u32, n: u32, s: i32) -> f64 {
    if a == 0.0 && b == 0.0 {
        if s < 0 {
            debug_assert!(d != 0.0, "interface integral of a constant weight");
            return 0.0;
        }
        return -lim_li_raw(s, d) / ((n as f64 + 1.0) * (m as f64 + n as f64 + 2.0));
    }
    let sum = a + b + d;
    if s == -1 {
        if sum <= 0.0 {
            tri_br(a, b, d, m, n, s)
        } else {
            tri_br(-a, -b, -d, m, n, s)
        }
    } else if sum <= 0.0 {
        tri_br(a, b, d, m, n, s)
    } else if sum <= a.abs().max(b.abs()) {
        tri_b(a, b, d, m, n, s)
    } else {
        tri_c(a, b, d, m, n, s)
    }
}

/// General antiderivative formulas; `s >= 0`, `(a, b) != 0`.
pub fn tri_b(a: f64, b: f64, d: f64, m: u32, n: u32, s: i32) -> f64 {
    trace::hit(Branch::TriB);
    if b == 0.0 {
        lsi_any(a, d, m + n + 1, s, H) / (n as f64 + 1.0)
    } else if a == 0.0 {
        (lsi_any(b, d, n, s, H) - lsi_any(b, d, m + n + 1, s, H)) / (m as f64 + 1.0)
    } else if a + b == 0.0 {
        let mut sum = 0.0;
        for j in 1..=n + 1 {
            let l = lim_li_raw(s + j as i32, d);
            if l != 0.0 {
                sum += l / (factorial(n + 1 - j) * a.powi(j as i32) * (m + n + 2 - j) as f64);
            }
        }
        sum += lsi_any(a, d, m, s + n as i32 + 1, H) / a.powi(n as i32 + 1);
        factorial(n) * sum
    } else if a.abs() <= b.abs() {
        triangle_peel_y(a, b, d, m, n, s)
    } else {
        triangle_peel_x(a, b, d, m, n, s)
    }
}

/// Integrates in `y` first. Needs `b != 0`.
pub fn triangle_peel_y(a: f64, b: f64, d: f64, m: u32, n: u32, s: i32) -> f64 {
    let neg_b = -b;
    let mut sum = 0.0;
    for j in 1..=n + 1 {
        let v = lsi_any(a + b, d, m + n + 1 - j, s + j as i32, H);
        if v != 0.0 {
            sum -= falling(n, j) / neg_b.powi(j as i32) * v;
        }
    }
    let tail = lsi_any(a, d, m, s + n as i32 + 1, H);
    if tail != 0.0 {
        sum += factorial(n) / neg_b.powi(n as i32 + 1) * tail;
    }
    sum
}

/// Integrates in `x` first (order reversed). Needs `a != 0`.
pub fn triangle_peel_x(a: f64, b: f64, d: f64, m: u32, n: u32, s: i32) -> f64 {
    let neg_a = -a;
    let mut sum = 0.0;
    for j in 1..=m + 1 {
        let sj = s + j as i32;
        let v = lsi_any(a + b, d, m + n + 1 - j, sj, H) - lsi_any(b, a + d, n, sj, H);
        if v != 0.0 {
            sum += falling(m, j) / neg_a.powi(j as i32) * v;
        }
    }
    sum
}

/// Reduced formulas for `a + b + d <= 0`, where most polylogarithm limits
/// vanish. The first term of each sum is always kept: it carries
/// `limLi_0(0) = -1/2` when `s = -1` and the line passes through a vertex.
pub fn tri_br(a: f64, b: f64, d: f64, m: u32, n: u32, s: i32) -> f64 {
    trace::hit(Branch::TriBr);
    let (mf, nf) = (m as f64, n as f64);
    let big = m + n + 1;
    let l_big = lim_li_raw(s + big as i32 + 1, d);
    let sign_big = if big.is_multiple_of(2) { 1.0 } else { -1.0 };
    if b == 0.0 {
        let mut v = -lim_li_raw(s + 1, a + d) / a;
        if l_big != 0.0 {
            v += factorial(big) * sign_big * l_big / a.powi(big as i32 + 1);
        }
        v / (nf + 1.0)
    } else if a == 0.0 {
        let mut v = 0.0;
        let l_n = lim_li_raw(s + n as i32 + 1, d);
        if l_n != 0.0 {
            let sign_n = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
            v += factorial(n) * sign_n * l_n / b.powi(n as i32 + 1);
        }
        if l_big != 0.0 {
            v -= factorial(big) * sign_big * l_big / b.powi(big as i32 + 1);
        }
        v / (mf + 1.0)
    } else if a + b == 0.0 {
        let mut v = lim_li_raw(s + 1, d) / ((mf + nf + 1.0) * a);
        let mut sum = 0.0;
        for i in 1..=m + 1 {
            let l = lim_li_raw(s + n as i32 + 1 + i as i32, a + d);
            if l != 0.0 {
                let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
                sum += sign * falling(m, i) * l / a.powi((n + 1 + i) as i32);
            }
        }
        v += factorial(n) * sum;
        v
    } else if a.abs() <= b.abs() {
        let ab = a + b;
        let mut v = 0.0;
        if l_big != 0.0 {
            let ratio = ab / b;
            let mut sum = 0.0;
            for j in 1..=n + 1 {
                sum += factorial(big - j) / factorial(n + 1 - j) * ratio.powi(j as i32);
            }
            v += l_big / (-ab).powi(big as i32 + 1) * sum;
        }
        let tail = lsi_any(a, d, m, s + n as i32 + 1, H);
        if tail != 0.0 {
            v += tail / (-b).powi(n as i32 + 1);
        }
        factorial(n) * v
    } else {
        let ab = a + b;
        let mut v = 0.0;
        if l_big != 0.0 {
            let ratio = ab / a;
            let mut sum = 0.0;
            for j in 1..=m + 1 {
                sum += factorial(big - j) / factorial(m + 1 - j) * ratio.powi(j as i32);
            }
            v -= l_big / (-ab).powi(big as i32 + 1) * sum;
        }
        let mut sum = 0.0;
        for j in 1..=m + 1 {
            let l = lim_li_raw(s + (n + j) as i32 + 1, a + d);
            if l != 0.0 {
                sum += l / (factorial(m + 1 - j) * (-a).powi(j as i32));
            }
        }
        if sum != 0.0 {
            v += factorial(n) / (-b).powi(n as i32 + 1) * sum;
        }
        factorial(m) * v
    }
}

/// Integration by parts forms for `a + b + d > max(|a|, |b|)`; `s >= 0`.
pub fn tri_c(a: f64, b: f64, d: f64, m: u32, n: u32, s: i32) -> f64 {
    trace::hit(Branch::TriC);
    debug_assert!(s >= 0);
    let su = s as u32;
    let mut sum = 0.0;
    if a.abs() <= b.abs() {
        let neg_b = -b;
        for i in 0..=su {
            let v = lsi_any(a + b, d, m + n + i + 1, s - i as i32, H);
            if v != 0.0 {
                sum += inv_rising(n, i) * neg_b.powi(i as i32) * v;
            }
        }
        let interface = tri_a(a, b, d, m, n + su + 1, -1);
        if interface != 0.0 {
            sum += inv_rising(n, su) * neg_b.powi(s + 1) * interface;
        }
    } else {
        let neg_a = -a;
        for i in 0..=su {
            let si = s - i as i32;
            let v = lsi_any(b, d + a, n, si, H) - lsi_any(a + b, d, m + n + i + 1, si, H);
            if v != 0.0 {
                sum += inv_rising(m, i) * neg_a.powi(i as i32) * v;
            }
        }
        let interface = tri_a(a, b, d, m + su + 1, n, -1);
        if interface != 0.0 {
            sum += inv_rising(m, su) * neg_a.powi(s + 1) * interface;
        }
    }
    sum
}

/// `1/((n+1)(m+n+2))`, the integral of `(1-x)^m y^n` over the whole triangle.
pub fn full_moment(m: u32, n: u32) -> f64 {
    1.0 / ((n as f64 + 1.0) * (m as f64 + n as f64 + 2.0))
}
