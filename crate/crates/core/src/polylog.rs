//! Limits of scaled polylogarithms and the factorial helpers shared by every
//! integration recursion.
//!
//! Only the limit `limLi_s(a) = lim_{t->inf} Li_s(-exp(a t)) / t^s` is ever
//! needed, and it has the closed form
//!
//! ```text
//!            | -1/2        s = 0 and a = 0
//! limLi_s(a) | -a^s / s!   a > 0
//!            | 0           otherwise
//! ```

use std::sync::LazyLock;

use crate::{Error, Result};

/// Largest total polynomial degree accepted by the public entry points.
pub const MAX_TOTAL_DEGREE: u32 = 32;

const FACTORIAL_LEN: usize = 171;

static FACTORIALS: LazyLock<[f64; FACTORIAL_LEN]> = LazyLock::new(|| {
    let mut table = [1.0_f64; FACTORIAL_LEN];
    for k in 1..FACTORIAL_LEN {
        table[k] = table[k - 1] * k as f64;
    }
    table
});

/// Order of a polylogarithm limit; always non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LimLiOrder(u32);

impl LimLiOrder {
    pub fn new(s: i32) -> Result<Self> {
        u32::try_from(s)
            .map(LimLiOrder)
            .map_err(|_| Error::NegativeOrder(s))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<i32> for LimLiOrder {
    type Error = Error;

    fn try_from(s: i32) -> Result<Self> {
        LimLiOrder::new(s)
    }
}

/// `limLi_s(a)`. The `a == 0` test is exact.
pub fn lim_li(s: LimLiOrder, a: f64) -> f64 {
    lim_li_raw(s.0 as i32, a)
}

#[inline]
pub(crate) fn lim_li_raw(s: i32, a: f64) -> f64 {
    debug_assert!(s >= 0, "limLi called with negative order {s}");
    if a > 0.0 {
        // -a^s/s! built up as a product so that each order is exactly
        // (a/s) times the previous one.
        let mut p = -1.0;
        for k in 1..=s {
            p *= a / k as f64;
        }
        p
    } else if s == 0 && a == 0.0 {
        -0.5
    } else {
        0.0
    }
}

/// `n!` as a float; `+inf` past 170.
#[inline]
pub fn factorial(n: u32) -> f64 {
    FACTORIALS.get(n as usize).copied().unwrap_or(f64::INFINITY)
}

/// `m! / (m+1-i)!` for `0 <= i <= m+1`.
///
/// For `i >= 1` this is the product `m (m-1) ... (m+2-i)`; `i = 0` gives
/// `1/(m+1)`.
pub fn falling_factorial(m: u32, i: u32) -> Result<f64> {
    if i > m + 1 {
        return Err(Error::FactorialRange { m, i });
    }
    Ok(falling(m, i))
}

#[inline]
pub(crate) fn falling(m: u32, i: u32) -> f64 {
    debug_assert!(i <= m + 1);
    if i == 0 {
        return 1.0 / (m as f64 + 1.0);
    }
    let mut p = 1.0;
    for k in (m + 2 - i)..=m {
        p *= k as f64;
    }
    p
}

/// `m! / (m+1+i)!`, i.e. `1 / ((m+1)(m+2)...(m+1+i))`.
#[inline]
pub(crate) fn inv_rising(m: u32, i: u32) -> f64 {
    let mut p = 1.0;
    for k in (m + 1)..=(m + 1 + i) {
        p /= k as f64;
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: i32) -> LimLiOrder {
        LimLiOrder::new(s).unwrap()
    }

    #[test]
    fn lim_li_examples() {
        assert_eq!(lim_li(order(0), 0.0), -0.5);
        assert_eq!(lim_li(order(1), 2.0), -2.0);
        assert_eq!(lim_li(order(3), -1.0), 0.0);
        assert_eq!(lim_li(order(2), 0.0), 0.0);
        assert_eq!(lim_li(order(0), 3.0), -1.0);
        assert_eq!(lim_li(order(0), -3.0), 0.0);
        assert_eq!(lim_li(order(3), 2.0), -8.0 / 6.0);
    }

    #[test]
    fn negative_order_rejected() {
        assert_eq!(LimLiOrder::new(-1), Err(Error::NegativeOrder(-1)));
        assert!(LimLiOrder::try_from(-5).is_err());
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(4, 1).unwrap(), 1.0);
        assert_eq!(falling_factorial(4, 5).unwrap(), 24.0);
        assert_eq!(falling_factorial(6, 3).unwrap(), 30.0);
        assert_eq!(falling_factorial(3, 0).unwrap(), 0.25);
        assert!(matches!(
            falling_factorial(4, 6),
            Err(Error::FactorialRange { m: 4, i: 6 })
        ));
    }

    #[test]
    fn falling_factorial_matches_factorial_ratio() {
        for m in 0..20 {
            for i in 1..=m + 1 {
                let ratio = factorial(m) / factorial(m + 1 - i);
                let f = falling(m, i);
                assert!((f - ratio).abs() <= 1e-15 * ratio, "m={m} i={i}");
            }
        }
    }

    #[test]
    fn inv_rising_matches_factorial_ratio() {
        for m in 0..15 {
            for i in 0..10 {
                let ratio = factorial(m) / factorial(m + 1 + i);
                assert!((inv_rising(m, i) - ratio).abs() <= 1e-14 * ratio);
            }
        }
    }

    #[test]
    fn factorial_table_is_exact_for_small_arguments() {
        let mut exact: u128 = 1;
        for n in 1..=30u32 {
            exact *= n as u128;
            let f = factorial(n);
            assert!(((f - exact as f64) / f).abs() <= f64::EPSILON);
        }
        assert!(factorial(171).is_infinite());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn inductive_step_is_exact(s in 1i32..40, a in 1e-3f64..50.0) {
                let lhs = lim_li_raw(s, a);
                let rhs = lim_li_raw(s - 1, a) * (a / s as f64);
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn never_positive(s in 0i32..40, a in -100f64..100.0) {
                prop_assert!(lim_li_raw(s, a) <= 0.0);
            }

            #[test]
            fn vanishes_for_non_positive_arguments(s in 1i32..40, a in -100f64..=0.0) {
                prop_assert_eq!(lim_li_raw(s, a), 0.0);
            }

            #[test]
            fn continuous_on_positive_axis(s in 0i32..20, a in 0.1f64..10.0) {
                let h = 1e-9;
                let jump = (lim_li_raw(s, a + h) - lim_li_raw(s, a)).abs();
                prop_assert!(jump <= 1e-6 * (1.0 + lim_li_raw(s, a).abs()));
            }
        }
    }
}
