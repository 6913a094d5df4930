//! The six functional equations as one parametric shape
//!
//! ```text
//! s1·f(x y [z0]) + s2·mu(y)·f(x tau(y) [z0]  |  tau(y) x [z0]) = 2 f(x) f(y)
//! ```
//!
//! and residual evaluation against concrete functions.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::character::is_admissible;
use crate::{Character, ComplexFunction, Error, InvolutiveMorphism, Result, Semigroup, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Family {
    Kannappan,
    KannappanVariant,
    Vanvleck,
    VanvleckVariant,
    Dalembert,
    DalembertVariant,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Kannappan,
        Family::KannappanVariant,
        Family::Vanvleck,
        Family::VanvleckVariant,
        Family::Dalembert,
        Family::DalembertVariant,
    ];

    /// The four families with a central shift `z0`.
    pub const SHIFTED: [Family; 4] =
        [Family::Kannappan, Family::KannappanVariant, Family::Vanvleck, Family::VanvleckVariant];

    pub fn spec(self) -> EquationSpec {
        use Family::*;
        use Sign::*;
        let (s1, s2, tau_side, uses_z0) = match self {
            Kannappan => (Plus, Plus, TauSide::Right, true),
            KannappanVariant => (Plus, Plus, TauSide::Left, true),
            Vanvleck => (Minus, Plus, TauSide::Right, true),
            VanvleckVariant => (Minus, Plus, TauSide::Left, true),
            Dalembert => (Plus, Plus, TauSide::Right, false),
            DalembertVariant => (Plus, Plus, TauSide::Left, false),
        };
        EquationSpec { family: self, s1, s2, tau_side, uses_z0 }
    }

    pub fn is_kannappan(self) -> bool {
        matches!(self, Family::Kannappan | Family::KannappanVariant)
    }

    pub fn is_vanvleck(self) -> bool {
        matches!(self, Family::Vanvleck | Family::VanvleckVariant)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Kannappan => "kannappan",
            Family::KannappanVariant => "kannappan-variant",
            Family::Vanvleck => "vanvleck",
            Family::VanvleckVariant => "vanvleck-variant",
            Family::Dalembert => "dalembert",
            Family::DalembertVariant => "dalembert-variant",
        }
    }

    /// Equation label used in reports.
    pub fn equation_number(self) -> &'static str {
        match self {
            Family::Kannappan => "1.9",
            Family::KannappanVariant => "1.10",
            Family::Vanvleck => "1.11",
            Family::VanvleckVariant => "1.12",
            Family::Dalembert => "1.13",
            Family::DalembertVariant => "1.15",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        Family::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| format!("unknown equation family `{s}`"))
    }
}

/// Whether `tau(y)` sits right of `x` (`x tau(y)`) or left (`tau(y) x`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum TauSide {
    Right,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EquationSpec {
    pub family: Family,
    pub s1: Sign,
    pub s2: Sign,
    pub tau_side: TauSide,
    pub uses_z0: bool,
}

fn sign_value(s: Sign) -> f64 {
    match s {
        Sign::Plus => 1.0,
        Sign::Minus => -1.0,
    }
}

impl EquationSpec {
    pub fn c1(&self) -> f64 {
        sign_value(self.s1)
    }

    pub fn c2(&self) -> f64 {
        sign_value(self.s2)
    }
}

/// Maximal residual over all `(x, y)` pairs.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ResidualReport {
    pub max_abs: f64,
    pub argmax_pair: (usize, usize),
    /// Row-major `|LHS - RHS|` at `(x, y)`, when requested.
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub per_pair: Option<Vec<f64>>,
}

/// The hypothesis bundle `(S, tau, mu)` shared by every equation instance.
#[derive(Debug, Clone)]
pub struct Setting {
    semigroup: Semigroup,
    tau: InvolutiveMorphism,
    mu: Character,
    mu_values: Vec<Complex64>,
}

impl Setting {
    /// Checks that `tau` is an involutive morphism of `s` and that `mu` is
    /// multiplicative with `mu(x tau(x)) = 1`.
    pub fn new(semigroup: Semigroup, tau: InvolutiveMorphism, mu: Character) -> Result<Self> {
        let n = semigroup.order();
        let tau = InvolutiveMorphism::new(&semigroup, tau.kind, tau.map)?;
        if mu.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: mu.len() });
        }
        if !mu.is_multiplicative(&semigroup) {
            return Err(Error::InvalidCharacter("mu is not multiplicative".into()));
        }
        if !is_admissible(&mu, &tau) {
            let x = (0..n)
                .find(|&x| mu.value(x) * mu.value(tau.apply(x)) != crate::RootOrZero::ONE)
                .unwrap_or(0);
            return Err(Error::NotAdmissible(x));
        }
        let mu_values = mu.to_complex();
        Ok(Setting { semigroup, tau, mu, mu_values })
    }

    pub fn semigroup(&self) -> &Semigroup {
        &self.semigroup
    }

    pub fn tau(&self) -> &InvolutiveMorphism {
        &self.tau
    }

    pub fn mu(&self) -> &Character {
        &self.mu
    }

    pub fn order(&self) -> usize {
        self.semigroup.order()
    }

    #[inline]
    pub fn mu_at(&self, x: usize) -> Complex64 {
        self.mu_values[x]
    }

    #[inline]
    pub(crate) fn mul(&self, x: usize, y: usize) -> usize {
        self.semigroup.mul(x, y)
    }

    #[inline]
    pub(crate) fn t(&self, x: usize) -> usize {
        self.tau.apply(x)
    }

    /// An equation instance. `z0` must be given (and central) exactly when
    /// the family uses it.
    pub fn equation(&self, family: Family, z0: Option<usize>) -> Result<Equation<'_>> {
        let spec = family.spec();
        match (spec.uses_z0, z0) {
            (true, None) => return Err(Error::MissingZ0),
            (false, Some(_)) => return Err(Error::UnexpectedZ0),
            (true, Some(z)) => self.semigroup.require_central(z)?,
            (false, None) => {}
        }
        Ok(Equation { setting: self, spec, z0 })
    }

    pub(crate) fn check_len(&self, f: &ComplexFunction) -> Result<()> {
        if f.len() == self.order() {
            Ok(())
        } else {
            Err(Error::LengthMismatch { expected: self.order(), got: f.len() })
        }
    }

    /// Whether `g` lies in class A (d'Alembert solutions) or M (variant
    /// d'Alembert solutions) relative to `z0`: the equation holds, `g(z0)`
    /// is nonzero and `g(x z0) = g(z0) g(x)`.
    pub fn class_membership(
        &self,
        g: &ComplexFunction,
        class: DalembertClass,
        z0: usize,
        tol: f64,
    ) -> Result<ClassMembership> {
        self.semigroup.require_central(z0)?;
        self.check_len(g)?;
        let family = match class {
            DalembertClass::A => Family::Dalembert,
            DalembertClass::M => Family::DalembertVariant,
        };
        let residual = self.equation(family, None)?.residual(g)?.max_abs;
        let g_z0 = g[z0].norm();
        let shift_deviation = self
            .semigroup
            .elements()
            .map(|x| (g[self.mul(x, z0)] - g[z0] * g[x]).norm())
            .fold(0.0, f64::max);

        let mut reasons = Vec::new();
        if residual >= tol {
            reasons.push(format!("({}) residual {residual:e}", family.equation_number()));
        }
        if g_z0 <= tol {
            reasons.push(format!("g(z0) = 0 (|g(z0)| = {g_z0:e})"));
        }
        if shift_deviation >= tol {
            reasons.push(format!("g(x z0) != g(z0) g(x) (deviation {shift_deviation:e})"));
        }
        Ok(ClassMembership { member: reasons.is_empty(), residual, g_z0, shift_deviation, reasons })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum DalembertClass {
    A,
    M,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassMembership {
    pub member: bool,
    pub residual: f64,
    pub g_z0: f64,
    pub shift_deviation: f64,
    pub reasons: Vec<String>,
}

/// One equation over a [`Setting`].
#[derive(Debug, Clone, Copy)]
pub struct Equation<'a> {
    setting: &'a Setting,
    spec: EquationSpec,
    z0: Option<usize>,
}

impl<'a> Equation<'a> {
    pub fn setting(&self) -> &'a Setting {
        self.setting
    }

    pub fn spec(&self) -> EquationSpec {
        self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn z0(&self) -> Option<usize> {
        self.z0
    }

    pub fn order(&self) -> usize {
        self.setting.order()
    }

    #[inline]
    fn shift(&self, e: usize) -> usize {
        match self.z0 {
            Some(z) => self.setting.mul(e, z),
            None => e,
        }
    }

    /// Element hit by the first f-term: `x y [z0]`.
    #[inline]
    pub fn arg1(&self, x: usize, y: usize) -> usize {
        self.shift(self.setting.mul(x, y))
    }

    /// Element hit by the second f-term: `x tau(y) [z0]` or `tau(y) x [z0]`.
    #[inline]
    pub fn arg2(&self, x: usize, y: usize) -> usize {
        let ty = self.setting.t(y);
        let p = match self.spec.tau_side {
            TauSide::Right => self.setting.mul(x, ty),
            TauSide::Left => self.setting.mul(ty, x),
        };
        self.shift(p)
    }

    /// Coefficient of the second term at `y`: `s2·mu(y)`.
    #[inline]
    pub fn coeff2(&self, y: usize) -> Complex64 {
        self.setting.mu_at(y) * self.spec.c2()
    }

    /// Left-hand side at `(x, y)`.
    #[inline]
    pub fn lhs(&self, f: &[Complex64], x: usize, y: usize) -> Complex64 {
        f[self.arg1(x, y)] * self.spec.c1() + self.coeff2(y) * f[self.arg2(x, y)]
    }

    #[inline]
    pub fn pair_residual(&self, f: &[Complex64], x: usize, y: usize) -> Complex64 {
        self.lhs(f, x, y) - f[x] * f[y] * 2.0
    }

    pub fn residual(&self, f: &ComplexFunction) -> Result<ResidualReport> {
        self.residual_impl(f, false)
    }

    pub fn residual_detailed(&self, f: &ComplexFunction) -> Result<ResidualReport> {
        self.residual_impl(f, true)
    }

    fn residual_impl(&self, f: &ComplexFunction, keep: bool) -> Result<ResidualReport> {
        self.setting.check_len(f)?;
        let n = self.order();
        let v = f.values();
        let mut report = ResidualReport {
            max_abs: 0.0,
            argmax_pair: (0, 0),
            per_pair: keep.then(|| Vec::with_capacity(n * n)),
        };
        for x in 0..n {
            for y in 0..n {
                let r = self.pair_residual(v, x, y).norm();
                if r > report.max_abs {
                    report.max_abs = r;
                    report.argmax_pair = (x, y);
                }
                if let Some(p) = report.per_pair.as_mut() {
                    p.push(r);
                }
            }
        }
        Ok(report)
    }

    pub fn is_solution(&self, f: &ComplexFunction, tol: f64) -> Result<bool> {
        Ok(self.residual(f)?.max_abs < tol)
    }
}

/// `max |f(xy) - f(x)g(y) - f(y)g(x)|`.
pub fn sine_addition_residual(s: &Semigroup, f: &ComplexFunction, g: &ComplexFunction) -> f64 {
    let mut worst: f64 = 0.0;
    for x in s.elements() {
        for y in s.elements() {
            let r = f[s.mul(x, y)] - f[x] * g[y] - f[y] * g[x];
            worst = worst.max(r.norm());
        }
    }
    worst
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::semigroup::samples::*;
    use crate::MorphismKind;

    /// Z4 with tau(x) = -x and mu = 1.
    pub fn z4_setting() -> Setting {
        let s = cyclic(4);
        let tau = InvolutiveMorphism { kind: MorphismKind::Automorphism, map: alloc::vec![0, 3, 2, 1] };
        let mu = Character::trivial(&s);
        Setting::new(s, tau, mu).unwrap()
    }

    pub fn null2_setting() -> Setting {
        let s = null(2);
        let tau = InvolutiveMorphism::identity(2);
        let mu = Character::trivial(&s);
        Setting::new(s, tau, mu).unwrap()
    }
}
