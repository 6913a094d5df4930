//! Exact arithmetic on `{0} ∪ {roots of unity}`.

use core::f64::consts::PI;
use core::fmt;
use core::ops::{Mul, Neg};

use num_complex::Complex64;

use crate::semigroup::{gcd, lcm};

/// Zero or `exp(2πi·exp/order)`, kept in lowest terms so that structural
/// equality is value equality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootOrZero {
    Zero,
    Root { order: u32, exp: u32 },
}

impl RootOrZero {
    pub const ONE: RootOrZero = RootOrZero::Root { order: 1, exp: 0 };
    pub const MINUS_ONE: RootOrZero = RootOrZero::Root { order: 2, exp: 1 };

    /// `exp(2πi·exp/order)` reduced to lowest terms. Panics on `order == 0`.
    pub fn root(order: u32, exp: u32) -> Self {
        assert!(order > 0, "root of unity of order 0");
        let exp = exp % order;
        let g = gcd(order, exp);
        RootOrZero::Root { order: order / g, exp: exp / g }
    }

    pub fn is_zero(self) -> bool {
        matches!(self, RootOrZero::Zero)
    }

    /// Exponent of this value as an `n`-th root of unity, if it is one.
    pub fn exponent_in(self, n: u32) -> Option<u32> {
        match self {
            RootOrZero::Zero => None,
            RootOrZero::Root { order, exp } => (n % order == 0).then(|| exp * (n / order)),
        }
    }

    pub fn inverse(self) -> Option<Self> {
        match self {
            RootOrZero::Zero => None,
            RootOrZero::Root { order, exp } => Some(RootOrZero::root(order, order - exp)),
        }
    }

    /// Sort key `(order, exp)` with zero as `(0, 0)`.
    pub fn key(self) -> (u32, u32) {
        match self {
            RootOrZero::Zero => (0, 0),
            RootOrZero::Root { order, exp } => (order, exp),
        }
    }

    pub fn to_complex(self) -> Complex64 {
        match self {
            RootOrZero::Zero => Complex64::new(0.0, 0.0),
            RootOrZero::Root { order, exp } => match (order, exp) {
                // exact values for the common cases
                (1, _) => Complex64::new(1.0, 0.0),
                (2, _) => Complex64::new(-1.0, 0.0),
                (4, 1) => Complex64::new(0.0, 1.0),
                (4, _) => Complex64::new(0.0, -1.0),
                _ => {
                    let theta = 2.0 * PI * exp as f64 / order as f64;
                    Complex64::new(libm::cos(theta), libm::sin(theta))
                }
            },
        }
    }
}

impl Mul for RootOrZero {
    type Output = RootOrZero;

    fn mul(self, rhs: Self) -> Self {
        match (self, rhs) {
            (RootOrZero::Root { order: a, exp: ea }, RootOrZero::Root { order: b, exp: eb }) => {
                let m = lcm(a, b);
                RootOrZero::root(m, ea * (m / a) + eb * (m / b))
            }
            _ => RootOrZero::Zero,
        }
    }
}

impl Neg for RootOrZero {
    type Output = RootOrZero;

    fn neg(self) -> Self {
        self * RootOrZero::MINUS_ONE
    }
}

impl fmt::Display for RootOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RootOrZero::Zero => write!(f, "0"),
            RootOrZero::Root { order: 1, .. } => write!(f, "1"),
            RootOrZero::Root { order: 2, .. } => write!(f, "-1"),
            RootOrZero::Root { order, exp } => write!(f, "e({exp}/{order})"),
        }
    }
}
