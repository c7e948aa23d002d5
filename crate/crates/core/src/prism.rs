//! Integrals over the reference prism `{x, y ≥ 0, x + y ≤ 1, -1 ≤ z ≤ 1}`
//! with basis `(1-x)^m y^n ((1+z)/2)^o` and measure `dV/2`.
//!
//! With `x -> 1 - x` and `z -> (1+z)/2` this becomes the plain basis
//! `x^m y^n z^o` with measure `dV` on `{0 ≤ y ≤ x ≤ 1} × [0,1]`; the `pri_*`
//! kernels work there. The cut transforms as
//! `(a, b, c, d) -> (-a, b, 2c, d + a - c)`.

use crate::element::contains_facet;
use crate::hypercube::hci_raw;
use crate::line_segment::{check_degree, BoundaryMode, PolyOrder};
use crate::polylog::{falling, inv_rising, lim_li_raw};
use crate::trace::{self, Branch};
use crate::triangle::tri_a;
use crate::{Error, Result};

const H: BoundaryMode = BoundaryMode::Half;

const VERTICES: [[f64; 3]; 6] = [
    [0.0, 0.0, -1.0],
    [1.0, 0.0, -1.0],
    [0.0, 1.0, -1.0],
    [0.0, 0.0, 1.0],
    [1.0, 0.0, 1.0],
    [0.0, 1.0, 1.0],
];
const FACES: [&[usize]; 5] = [
    &[0, 1, 2],
    &[3, 4, 5],
    &[0, 1, 4, 3],
    &[1, 2, 5, 4],
    &[2, 0, 3, 5],
];

/// Plane `a x + b y + c z + d` on the reference prism.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrismCut {
    normal: [f64; 3],
    d: f64,
}

impl PrismCut {
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
        Ok(PrismCut {
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
}

/// Prism integral of `(1-x)^m y^n ((1+z)/2)^o` against `dV/2`.
pub fn pri(cut: &PrismCut, [m, n, o]: [u32; 3], s: PolyOrder, mode: BoundaryMode) -> Result<f64> {
    check_degree(m + n + o)?;
    let [a, b, c] = cut.normal;
    let value = pri_a(-a, b, 2.0 * c, cut.d + a - c, m, n, o, s.get());
    let on_face = s.get() == -1
        && mode == BoundaryMode::Full
        && contains_facet(&cut.normal, cut.d, &VERTICES, &FACES);
    Ok(if on_face { 2.0 * value } else { value })
}

/// `∫_0^1 ∫_0^1 ∫_0^x x^m y^n z^o (...) dy dx dz`.
#[allow(clippy::too_many_arguments)]
pub fn pri_a(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    if a == 0.0 && b == 0.0 && c == 0.0 {
        if s < 0 {
            return 0.0;
        }
        return -lim_li_raw(s, d) * full_moment([m, n, o]);
    }
    let sum = a + b + c + d;
    if s == -1 {
        if sum <= 0.0 {
            pri_b(a, b, c, d, m, n, o, s)
        } else {
            pri_b(-a, -b, -c, -d, m, n, o, s)
        }
    } else if sum <= a.abs().max(b.abs()).max(c.abs()) {
        pri_b(a, b, c, d, m, n, o, s)
    } else {
        pri_c(a, b, c, d, m, n, o, s)
    }
}

/// Antiderivative formulas, peeling the coordinate with the largest
/// coefficient: `z` first, then `y` (only when `|b| > |a|`), then `x`.
#[allow(clippy::too_many_arguments)]
pub fn pri_b(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    trace::hit(Branch::PriB);
    if c.abs() >= a.abs().max(b.abs()) {
        prism_peel_z(a, b, c, d, m, n, o, s)
    } else if b.abs() > a.abs() {
        prism_peel_y(a, b, c, d, m, n, o, s)
    } else {
        prism_peel_x(a, b, c, d, m, n, o, s)
    }
}

fn hci2(n: [f64; 2], d: f64, m: [u32; 2], s: i32) -> f64 {
    hci_raw(&n, d, &m, s, H)
}

/// Needs `c != 0`.
#[allow(clippy::too_many_arguments)]
pub fn prism_peel_z(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    let neg_c = -c;
    let mut sum = 0.0;
    for i in 1..=o + 1 {
        let v = tri_a(a, b, c + d, m, n, s + i as i32);
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
pub fn prism_peel_y(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    let neg_b = -b;
    let mut sum = 0.0;
    for i in 1..=n + 1 {
        let v = hci2([a + b, c], d, [m + n + 1 - i, o], s + i as i32);
        if v != 0.0 {
            sum -= falling(n, i) / neg_b.powi(i as i32) * v;
        }
    }
    let tail = hci2([a, c], d, [m, o], s + n as i32 + 1);
    if tail != 0.0 {
        sum += falling(n, n + 1) / neg_b.powi(n as i32 + 1) * tail;
    }
    sum
}

/// Needs `a != 0`.
#[allow(clippy::too_many_arguments)]
pub fn prism_peel_x(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    let neg_a = -a;
    let mut sum = 0.0;
    for i in 1..=m + 1 {
        let si = s + i as i32;
        let v = hci2([a + b, c], d, [m + n + 1 - i, o], si) - hci2([b, c], a + d, [n, o], si);
        if v != 0.0 {
            sum += falling(m, i) / neg_a.powi(i as i32) * v;
        }
    }
    sum
}

/// Integration by parts forms for `a + b + c + d > max(|a|, |b|, |c|)`;
/// `s >= 0`.
#[allow(clippy::too_many_arguments)]
pub fn pri_c(a: f64, b: f64, c: f64, d: f64, m: u32, n: u32, o: u32, s: i32) -> f64 {
    trace::hit(Branch::PriC);
    debug_assert!(s >= 0);
    let su = s as u32;
    let mut sum = 0.0;
    if c.abs() >= a.abs().max(b.abs()) {
        let neg_c = -c;
        for i in 0..=su {
            let v = tri_a(a, b, c + d, m, n, s - i as i32);
            if v != 0.0 {
                sum += inv_rising(o, i) * neg_c.powi(i as i32) * v;
            }
        }
        let interface = pri_a(a, b, c, d, m, n, o + su + 1, -1);
        if interface != 0.0 {
            sum += inv_rising(o, su) * neg_c.powi(s + 1) * interface;
        }
    } else if b.abs() >= a.abs() {
        let neg_b = -b;
        for i in 0..=su {
            let v = hci2([a + b, c], d, [m + n + i + 1, o], s - i as i32);
            if v != 0.0 {
                sum += inv_rising(n, i) * neg_b.powi(i as i32) * v;
            }
        }
        let interface = pri_a(a, b, c, d, m, n + su + 1, o, -1);
        if interface != 0.0 {
            sum += inv_rising(n, su) * neg_b.powi(s + 1) * interface;
        }
    } else {
        let neg_a = -a;
        for i in 0..=su {
            let si = s - i as i32;
            let v = hci2([b, c], a + d, [n, o], si) - hci2([a + b, c], d, [m + n + i + 1, o], si);
            if v != 0.0 {
                sum += inv_rising(m, i) * neg_a.powi(i as i32) * v;
            }
        }
        let interface = pri_a(a, b, c, d, m + su + 1, n, o, -1);
        if interface != 0.0 {
            sum += inv_rising(m, su) * neg_a.powi(s + 1) * interface;
        }
    }
    sum
}

/// `1/((n+1)(m+n+2)(o+1))`, the integral of the basis element over the
/// whole prism.
pub fn full_moment([m, n, o]: [u32; 3]) -> f64 {
    let (m, n, o) = (m as f64, n as f64, o as f64);
    1.0 / ((n + 1.0) * (m + n + 2.0) * (o + 1.0))
}
