//! Closed-form solutions.
//!
//! For a multiplicative `chi` with `chi(z0) != 0`:
//!
//! ```text
//! Kannappan:  f = chi(z0) (chi + mu · chi∘tau) / 2,   mu(z0) chi(tau(z0)) =  chi(z0)
//! Van Vleck:  f = chi(z0) (mu · chi∘tau - chi) / 2,   mu(z0) chi(tau(z0)) = -chi(z0)
//! ```
//!
//! When `tau` is an anti-automorphism of a non-abelian semigroup the
//! Kannappan solutions are instead `T(g) = g(z0) g` for the d'Alembert
//! solutions `g` of class A, which need not come from multiplicative
//! functions.

use alloc::vec::Vec;


use crate::function::dedup_by_function;
use crate::oracle::{solve_all, Completeness};
use crate::{
    enumerate_characters, sign_condition, Character, ComplexFunction, DalembertClass, Error, Family,
    MorphismKind, Result, Semigroup, Setting, Sign, DEDUP_TOL,
};

/// Below this `|f(z0)|` the inverse transform is undefined.
const T_INVERSE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "source", rename_all = "kebab-case"))]
pub enum Provenance {
    /// Built from a multiplicative function, by position in
    /// [`enumerate_characters`] when known.
    Character { index: Option<usize> },
    /// Transform of the `index`-th class-A d'Alembert solution.
    APool { index: usize },
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ClassifiedSolution {
    pub f: ComplexFunction,
    pub family: Family,
    pub provenance: Provenance,
}

/// The closed form attached to `chi`, without checking the sign condition.
pub fn build_char_solution(st: &Setting, chi: &Character, family: Family, z0: usize) -> Result<ComplexFunction> {
    if chi.len() != st.order() {
        return Err(Error::LengthMismatch { expected: st.order(), got: chi.len() });
    }
    st.semigroup().require_central(z0)?;
    let sign = match family {
        f if f.is_kannappan() => 1.0,
        f if f.is_vanvleck() => -1.0,
        other => return Err(Error::UnknownFamily(other)),
    };
    let c = chi.eval(z0) / 2.0;
    let values = (0..st.order())
        .map(|x| c * (st.mu_at(x) * chi.eval(st.t(x)) + chi.eval(x) * sign))
        .collect();
    Ok(ComplexFunction::from_vec_unchecked(values))
}

/// `T(g) = g(z0) g`.
pub fn t_transform(g: &ComplexFunction, z0: usize) -> ComplexFunction {
    g.scale(g[z0])
}

/// `T^{-1}(f)(x) = f(x z0) / f(z0)`; needs `f(z0) != 0`.
pub fn t_inverse(s: &Semigroup, f: &ComplexFunction, z0: usize) -> Result<ComplexFunction> {
    if f.len() != s.order() {
        return Err(Error::LengthMismatch { expected: s.order(), got: f.len() });
    }
    s.check_element(z0)?;
    let d = f[z0];
    if d.norm() < T_INVERSE_TOL {
        return Err(Error::ZeroAtZ0);
    }
    Ok(ComplexFunction::from_vec_unchecked(s.elements().map(|x| f[s.mul(x, z0)] / d).collect()))
}

/// Nonzero d'Alembert solutions of class A found by the oracle, with the
/// completeness of that search.
pub fn a_pool(st: &Setting, z0: usize, tol: f64) -> Result<(Vec<ComplexFunction>, Completeness)> {
    st.semigroup().require_central(z0)?;
    let res = solve_all(&st.equation(Family::Dalembert, None)?, tol)?;
    let mut pool = Vec::new();
    for g in res.nonzero() {
        if st.class_membership(g, DalembertClass::A, z0, tol)?.member {
            pool.push(g.clone());
        }
    }
    Ok((pool, res.completeness))
}

/// All closed-form solutions of `family` at `z0`, deduplicated. Every one is
/// checked against the equation and a failure is reported as
/// [`Error::ResidualCheckFailed`].
pub fn enumerate_classified(st: &Setting, family: Family, z0: usize, tol: f64) -> Result<Vec<ClassifiedSolution>> {
    if !family.spec().uses_z0 {
        return Err(Error::UnknownFamily(family));
    }
    let eq = st.equation(family, Some(z0))?;
    let check = |f: &ComplexFunction| -> Result<()> {
        let residual = eq.residual(f)?.max_abs;
        if residual < tol {
            Ok(())
        } else {
            Err(Error::ResidualCheckFailed { family, residual })
        }
    };

    let mut out = Vec::new();
    if family.is_kannappan() && st.tau().kind == MorphismKind::AntiAutomorphism {
        for (index, g) in a_pool(st, z0, tol)?.0.iter().enumerate() {
            let f = t_transform(g, z0);
            check(&f)?;
            out.push(ClassifiedSolution { f, family, provenance: Provenance::APool { index } });
        }
    } else {
        let sign = if family.is_kannappan() { Sign::Plus } else { Sign::Minus };
        let s = st.semigroup();
        for (index, chi) in enumerate_characters(s).iter().enumerate() {
            if chi.value(z0).is_zero() || !sign_condition(s, chi, st.tau(), st.mu(), z0, sign)? {
                continue;
            }
            let f = build_char_solution(st, chi, family, z0)?;
            check(&f)?;
            out.push(ClassifiedSolution { f, family, provenance: Provenance::Character { index: Some(index) } });
        }
    }
    Ok(dedup_by_function(out, |c| &c.f, DEDUP_TOL))
}
