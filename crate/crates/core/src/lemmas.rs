//! Identity suites that every solution of a shifted equation must satisfy.
//!
//! Each suite is evaluated on any function, solution or not, and reports the
//! worst deviation per identity. Identity ids are the equation numbers used
//! throughout the reports ("2.1", "4.3", ...).
//!
//! Kannappan (`1.9`) and its variant (`1.10`):
//!
//! | id      | identity                                     |
//! |---------|----------------------------------------------|
//! | 2.1/3.1 | `f(x) = mu(x) f(tau(x))`                     |
//! | 2.2/3.2 | `f(x tau(z0) z0) = mu(tau(z0)) f(z0) f(x)`   |
//! | 2.3/3.3 | `f(x z0^2) = f(x) f(z0)`                     |
//! | 2.4/3.4 | `f != 0  =>  f(z0) != 0`                     |
//!
//! Van Vleck (`1.11`):
//!
//! | id  | identity                                   |
//! |-----|--------------------------------------------|
//! | 4.1 | `f(x) = -mu(x) f(tau(x))`                  |
//! | 4.2 | `f(z0) != 0` (for `f != 0`)                |
//! | 4.3 | `f(z0^2) = 0`                              |
//! | 4.4 | `f(x tau(z0) z0) = mu(tau(z0)) f(x) f(z0)` |
//! | 4.5 | `f(x z0^2) = -f(z0) f(x)`                  |
//! | 4.6 | `mu(x) f(tau(x) z0) = f(x z0)`             |
//!
//! Van Vleck variant (`1.12`):
//!
//! | id  | identity                                         |
//! |-----|--------------------------------------------------|
//! | 5.1 | `f(x) = -mu(x) f(tau(x))`                        |
//! | 5.2 | `f != 0  =>  f(z0) != 0`                         |
//! | 5.3 | `mu(y) f(tau(y) x) = -mu(x) f(tau(x) y)`         |
//! | 5.4 | `f(x tau(z0) z0) = mu(tau(z0)) f(z0) f(x)`       |
//! | 5.5 | `f(x z0^2) = -f(z0) f(x)`                        |
//! | 5.6 | `mu(x) f(tau(x) z0) = f(x z0)`                   |
//! | 5.7 | `f(x tau(z0)) = mu(x) f(tau(x) tau(z0))`         |
//! | 5.8 | `f(z0^2) = f(z0 tau(z0)) = 0`                    |

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{ComplexFunction, Error, Family, Result, Setting};

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LemmaCheck {
    pub id: String,
    pub passed: bool,
    /// Worst `|lhs - rhs|`; for the non-vanishing items, `sup|f|` when the
    /// item fails and zero otherwise.
    pub deviation: f64,
}

impl LemmaCheck {
    fn equality(id: &str, deviation: f64, tol: f64) -> Self {
        LemmaCheck { id: id.into(), passed: deviation < tol, deviation }
    }
}

struct Ctx<'a> {
    st: &'a Setting,
    f: &'a [Complex64],
    z0: usize,
    tol: f64,
    nonzero: bool,
    sup: f64,
}

impl Ctx<'_> {
    fn n(&self) -> usize {
        self.st.order()
    }

    fn worst(&self, it: impl Iterator<Item = Complex64>) -> f64 {
        it.map(|d| d.norm()).fold(0.0, f64::max)
    }

    /// `f(x) = sign · mu(x) f(tau(x))`
    fn tau_symmetry(&self, id: &str, sign: f64) -> LemmaCheck {
        let (st, f) = (self.st, self.f);
        let d = self.worst((0..self.n()).map(|x| f[x] - st.mu_at(x) * f[st.t(x)] * sign));
        LemmaCheck::equality(id, d, self.tol)
    }

    /// `f(x tau(z0) z0) = mu(tau(z0)) f(z0) f(x)`
    fn tau_z0_shift(&self, id: &str) -> LemmaCheck {
        let (st, f, z0) = (self.st, self.f, self.z0);
        let tz0 = st.t(z0);
        let d = self.worst(
            (0..self.n()).map(|x| f[st.mul(st.mul(x, tz0), z0)] - st.mu_at(tz0) * f[z0] * f[x]),
        );
        LemmaCheck::equality(id, d, self.tol)
    }

    /// `f(x z0^2) = sign · f(x) f(z0)`
    fn square_shift(&self, id: &str, sign: f64) -> LemmaCheck {
        let (st, f, z0) = (self.st, self.f, self.z0);
        let z2 = st.mul(z0, z0);
        let d = self.worst((0..self.n()).map(|x| f[st.mul(x, z2)] - f[x] * f[z0] * sign));
        LemmaCheck::equality(id, d, self.tol)
    }

    /// `f != 0 => f(z0) != 0`
    fn nonvanishing(&self, id: &str) -> LemmaCheck {
        let passed = !self.nonzero || self.f[self.z0].norm() > self.tol;
        LemmaCheck { id: id.into(), passed, deviation: if passed { 0.0 } else { self.sup } }
    }

    /// `mu(x) f(tau(x) z0) = f(x z0)`
    fn tau_z0_symmetry(&self, id: &str) -> LemmaCheck {
        let (st, f, z0) = (self.st, self.f, self.z0);
        let d = self.worst(
            (0..self.n()).map(|x| st.mu_at(x) * f[st.mul(st.t(x), z0)] - f[st.mul(x, z0)]),
        );
        LemmaCheck::equality(id, d, self.tol)
    }
}

/// Runs the identity suite belonging to `family` (which must be one of the
/// four shifted families) on `f`.
pub fn lemma_suite(
    st: &Setting,
    f: &ComplexFunction,
    family: Family,
    z0: usize,
    tol: f64,
) -> Result<Vec<LemmaCheck>> {
    st.check_len(f)?;
    st.semigroup().require_central(z0)?;
    let sup = f.sup_norm();
    let ctx = Ctx { st, f: f.values(), z0, tol, nonzero: sup > tol, sup };
    let (fv, n) = (f.values(), st.order());
    let z2 = st.mul(z0, z0);
    let tz0 = st.t(z0);

    let checks = match family {
        Family::Kannappan => vec_of([
            ctx.tau_symmetry("2.1", 1.0),
            ctx.tau_z0_shift("2.2"),
            ctx.square_shift("2.3", 1.0),
            ctx.nonvanishing("2.4"),
        ]),
        Family::KannappanVariant => vec_of([
            ctx.tau_symmetry("3.1", 1.0),
            ctx.tau_z0_shift("3.2"),
            ctx.square_shift("3.3", 1.0),
            ctx.nonvanishing("3.4"),
        ]),
        Family::Vanvleck => vec_of([
            ctx.tau_symmetry("4.1", -1.0),
            ctx.nonvanishing("4.2"),
            LemmaCheck::equality("4.3", fv[z2].norm(), tol),
            ctx.tau_z0_shift("4.4"),
            ctx.square_shift("4.5", -1.0),
            ctx.tau_z0_symmetry("4.6"),
        ]),
        Family::VanvleckVariant => {
            let mut pair_dev: f64 = 0.0;
            for x in 0..n {
                for y in 0..n {
                    let lhs = st.mu_at(y) * fv[st.mul(st.t(y), x)];
                    let rhs = -st.mu_at(x) * fv[st.mul(st.t(x), y)];
                    pair_dev = pair_dev.max((lhs - rhs).norm());
                }
            }
            let d57 = ctx.worst(
                (0..n).map(|x| fv[st.mul(x, tz0)] - st.mu_at(x) * fv[st.mul(st.t(x), tz0)]),
            );
            let d58 = fv[z2].norm().max(fv[st.mul(z0, tz0)].norm());
            vec_of([
                ctx.tau_symmetry("5.1", -1.0),
                ctx.nonvanishing("5.2"),
                LemmaCheck::equality("5.3", pair_dev, tol),
                ctx.tau_z0_shift("5.4"),
                ctx.square_shift("5.5", -1.0),
                ctx.tau_z0_symmetry("5.6"),
                LemmaCheck::equality("5.7", d57, tol),
                LemmaCheck::equality("5.8", d58, tol),
            ])
        }
        other => return Err(Error::UnknownFamily(other)),
    };
    Ok(checks)
}

fn vec_of<const N: usize>(items: [LemmaCheck; N]) -> Vec<LemmaCheck> {
    Vec::from(items)
}

pub fn all_passed(checks: &[LemmaCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::fixtures::*;

    fn get<'a>(checks: &'a [LemmaCheck], id: &str) -> &'a LemmaCheck {
        checks.iter().find(|c| c.id == id).unwrap()
    }

    #[test]
    fn sine_passes_van_vleck_suite() {
        let st = z4_setting();
        let f = ComplexFunction::from_real(&[0.0, 1.0, 0.0, -1.0]);
        let checks = lemma_suite(&st, &f, Family::Vanvleck, 1, 1e-9).unwrap();
        assert_eq!(checks.len(), 6);
        assert!(all_passed(&checks), "{checks:?}");
        assert_eq!(get(&checks, "4.3").deviation, 0.0);
        let checks = lemma_suite(&st, &f, Family::VanvleckVariant, 1, 1e-9).unwrap();
        assert_eq!(checks.len(), 8);
        assert!(all_passed(&checks), "{checks:?}");
    }

    #[test]
    fn constant_one_passes_kannappan_suite() {
        let st = z4_setting();
        let one = ComplexFunction::constant(4, Complex64::new(1.0, 0.0));
        let checks = lemma_suite(&st, &one, Family::Kannappan, 1, 1e-9).unwrap();
        assert_eq!(checks.iter().map(|c| c.id.as_str()).collect::<Vec<_>>(), ["2.1", "2.2", "2.3", "2.4"]);
        assert!(all_passed(&checks));
    }

    #[test]
    fn constant_one_fails_van_vleck_zero() {
        let st = z4_setting();
        let one = ComplexFunction::constant(4, Complex64::new(1.0, 0.0));
        let checks = lemma_suite(&st, &one, Family::Vanvleck, 1, 1e-9).unwrap();
        let c = get(&checks, "4.3");
        assert!(!c.passed);
        assert_eq!(c.deviation, 1.0);
    }

    #[test]
    fn zero_function_is_vacuous() {
        let st = z4_setting();
        for fam in Family::SHIFTED {
            let checks = lemma_suite(&st, &ComplexFunction::zero(4), fam, 1, 1e-9).unwrap();
            assert!(all_passed(&checks), "{fam}");
        }
    }

    #[test]
    fn nonvanishing_detects_vanishing_at_z0() {
        let st = z4_setting();
        let f = ComplexFunction::from_real(&[1.0, 0.0, -1.0, 0.0]);
        let checks = lemma_suite(&st, &f, Family::Kannappan, 1, 1e-9).unwrap();
        let c = get(&checks, "2.4");
        assert!(!c.passed);
        assert_eq!(c.deviation, 1.0);
    }

    #[test]
    fn dalembert_has_no_suite() {
        let st = z4_setting();
        let err = lemma_suite(&st, &ComplexFunction::zero(4), Family::Dalembert, 1, 1e-9).unwrap_err();
        assert_eq!(err, Error::UnknownFamily(Family::Dalembert));
    }
}
