//! Multiplicative functions `S -> C`.
//!
//! On a finite semigroup every value of a multiplicative function is zero or a
//! root of unity whose order divides the period of the element, so characters
//! are stored exactly as exponents over one common order (the lcm of all
//! element periods) and only turned into floats for evaluation.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::{Error, InvolutiveMorphism, Result, RootOrZero, Semigroup};

/// A multiplicative function. `exps[x]` is `None` for `chi(x) = 0`, otherwise
/// `chi(x) = exp(2πi·exps[x]/order)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    order: u32,
    exps: Vec<Option<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "lowercase"))]
pub enum Sign {
    Plus,
    Minus,
}

impl Character {
    /// Builds and validates a character from exact values.
    pub fn from_values(s: &Semigroup, values: &[RootOrZero]) -> Result<Self> {
        let n = s.order();
        if values.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: values.len() });
        }
        let order = s.period_lcm();
        let mut exps = Vec::with_capacity(n);
        for (x, v) in values.iter().enumerate() {
            match v {
                RootOrZero::Zero => exps.push(None),
                _ => {
                    let e = v.exponent_in(order).ok_or_else(|| {
                        Error::InvalidCharacter(format!("value at {x} is not a root of unity of order {order}"))
                    })?;
                    exps.push(Some(e));
                }
            }
        }
        let chi = Character { order, exps };
        if let Some((x, y)) = chi.first_multiplicativity_violation(s) {
            return Err(Error::InvalidCharacter(format!("chi({x}·{y}) != chi({x}) chi({y})")));
        }
        Ok(chi)
    }

    pub fn trivial(s: &Semigroup) -> Self {
        Character { order: s.period_lcm(), exps: vec![Some(0); s.order()] }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    /// Common order of the stored exponents.
    pub fn common_order(&self) -> u32 {
        self.order
    }

    pub fn value(&self, x: usize) -> RootOrZero {
        match self.exps[x] {
            None => RootOrZero::Zero,
            Some(e) => RootOrZero::root(self.order, e),
        }
    }

    pub fn values(&self) -> Vec<RootOrZero> {
        (0..self.len()).map(|x| self.value(x)).collect()
    }

    pub fn eval(&self, x: usize) -> Complex64 {
        self.value(x).to_complex()
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        (0..self.len()).map(|x| self.eval(x)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.exps.iter().all(Option::is_none)
    }

    pub fn is_nowhere_zero(&self) -> bool {
        self.exps.iter().all(Option::is_some)
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|e| *e == Some(0))
    }

    fn first_multiplicativity_violation(&self, s: &Semigroup) -> Option<(usize, usize)> {
        let n = s.order();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .find(|&(x, y)| self.value(s.mul(x, y)) != self.value(x) * self.value(y))
    }

    pub fn is_multiplicative(&self, s: &Semigroup) -> bool {
        self.first_multiplicativity_violation(s).is_none()
    }

    /// `x -> mu(x) chi(tau(x))`, again multiplicative for either kind of tau.
    pub fn twisted(&self, tau: &InvolutiveMorphism, mu: &Character) -> Character {
        let order = self.order;
        let exps = (0..self.len())
            .map(|x| (mu.value(x) * self.value(tau.apply(x))).exponent_in(order))
            .collect();
        Character { order, exps }
    }

    /// Lexicographic sort key on per-element `(order, exp)` pairs.
    pub fn sort_key(&self) -> Vec<(u32, u32)> {
        (0..self.len()).map(|x| self.value(x).key()).collect()
    }

    pub fn relabel(&self, perm: &[usize]) -> Character {
        let mut exps = vec![None; self.len()];
        for (x, &e) in self.exps.iter().enumerate() {
            exps[perm[x]] = e;
        }
        Character { order: self.order, exps }
    }
}

/// Every multiplicative function on `s` (including the zero function, which
/// sorts first), in lexicographic order of [`Character::sort_key`].
///
/// Backtracking over elements in index order; the candidate values at `x` are
/// zero and the `r`-th roots of unity, `r` the period of `x`. Each assignment
/// is closed under products so that conflicts surface early.
pub fn enumerate_characters(s: &Semigroup) -> Vec<Character> {
    let n = s.order();
    let order = s.period_lcm();
    let candidates: Vec<Vec<Option<u32>>> = s
        .elements()
        .map(|x| {
            let r = s.element_profile(x).period_r as u32;
            let step = order / r;
            core::iter::once(None).chain((0..r).map(|j| Some(j * step))).collect()
        })
        .collect();

    let mut found = Vec::new();
    let mut assigned: Vec<Option<Option<u32>>> = vec![None; n];
    search(s, order, &candidates, &mut assigned, &mut found);

    let mut chars: Vec<Character> = found.into_iter().map(|exps| Character { order, exps }).collect();
    chars.sort_by_key(Character::sort_key);
    chars
}

fn mul_exp(a: Option<u32>, b: Option<u32>, order: u32) -> Option<u32> {
    match (a, b) {
        (Some(a), Some(b)) => Some((a + b) % order),
        _ => None,
    }
}

/// Assigns `x := v` and propagates through the table. Returns the trail of
/// newly assigned elements, or `None` (with the trail already undone) on
/// conflict.
fn assign_closed(
    s: &Semigroup,
    order: u32,
    candidates: &[Vec<Option<u32>>],
    assigned: &mut [Option<Option<u32>>],
    x: usize,
    v: Option<u32>,
) -> Option<Vec<usize>> {
    let mut trail = vec![x];
    assigned[x] = Some(v);
    let mut cursor = 0;
    while cursor < trail.len() {
        let a = trail[cursor];
        cursor += 1;
        for b in s.elements() {
            let Some(vb) = assigned[b] else { continue };
            let va = assigned[a].unwrap();
            for (p, want) in [(s.mul(a, b), mul_exp(va, vb, order)), (s.mul(b, a), mul_exp(vb, va, order))] {
                match assigned[p] {
                    Some(have) if have == want => {}
                    Some(_) => {
                        undo(assigned, &trail);
                        return None;
                    }
                    None => {
                        if !candidates[p].contains(&want) {
                            undo(assigned, &trail);
                            return None;
                        }
                        assigned[p] = Some(want);
                        trail.push(p);
                    }
                }
            }
        }
    }
    Some(trail)
}

fn undo(assigned: &mut [Option<Option<u32>>], trail: &[usize]) {
    for &t in trail {
        assigned[t] = None;
    }
}

fn search(
    s: &Semigroup,
    order: u32,
    candidates: &[Vec<Option<u32>>],
    assigned: &mut Vec<Option<Option<u32>>>,
    found: &mut Vec<Vec<Option<u32>>>,
) {
    let Some(x) = assigned.iter().position(Option::is_none) else {
        found.push(assigned.iter().map(|v| v.unwrap()).collect());
        return;
    };
    for &v in &candidates[x] {
        if let Some(trail) = assign_closed(s, order, candidates, assigned, x, v) {
            search(s, order, candidates, assigned, found);
            undo(assigned, &trail);
        }
    }
}

/// The characters `mu` with `mu(x) mu(tau(x)) = 1` for all `x`.
pub fn admissible_mus(s: &Semigroup, tau: &InvolutiveMorphism) -> Vec<Character> {
    enumerate_characters(s)
        .into_iter()
        .filter(|mu| is_admissible(mu, tau))
        .collect()
}

pub fn is_admissible(mu: &Character, tau: &InvolutiveMorphism) -> bool {
    (0..mu.len()).all(|x| mu.value(x) * mu.value(tau.apply(x)) == RootOrZero::ONE)
}

/// Exact test of `mu(z0) chi(tau(z0)) = ±chi(z0)`.
pub fn sign_condition(
    s: &Semigroup,
    chi: &Character,
    tau: &InvolutiveMorphism,
    mu: &Character,
    z0: usize,
    sign: Sign,
) -> Result<bool> {
    s.require_central(z0)?;
    let lhs = mu.value(z0) * chi.value(tau.apply(z0));
    let rhs = match sign {
        Sign::Plus => chi.value(z0),
        Sign::Minus => -chi.value(z0),
    };
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::samples::*;
    use crate::{enumerate_involutive_morphisms, MorphismKind};

    fn neg_tau(n: usize) -> InvolutiveMorphism {
        InvolutiveMorphism { kind: MorphismKind::Automorphism, map: (0..n).map(|x| (n - x) % n).collect() }
    }

    /// chi(x) = e(k x / n) on Z_n.
    fn cyclic_char(n: usize, k: usize) -> Character {
        let s = cyclic(n);
        let vals: Vec<_> = (0..n).map(|x| RootOrZero::root(n as u32, (k * x) as u32)).collect();
        Character::from_values(&s, &vals).unwrap()
    }

    #[test]
    fn z3_has_four_characters() {
        let chars = enumerate_characters(&cyclic(3));
        assert_eq!(chars.len(), 4);
        assert!(chars[0].is_zero());
        for k in 0..3 {
            assert!(chars.contains(&cyclic_char(3, k)));
        }
    }

    #[test]
    fn z2_has_three_characters() {
        let chars = enumerate_characters(&cyclic(2));
        assert_eq!(chars.len(), 3);
        assert!(chars[1].is_trivial());
        assert_eq!(chars[2].values(), vec![RootOrZero::ONE, RootOrZero::MINUS_ONE]);
    }

    #[test]
    fn null_semigroup_characters() {
        let s = null(2);
        let chars = enumerate_characters(&s);
        assert_eq!(chars.len(), 2);
        assert!(chars[0].is_zero());
        assert!(chars[1].is_trivial());
    }

    #[test]
    fn s3_characters() {
        // zero, trivial, sign
        let chars = enumerate_characters(&s3());
        assert_eq!(chars.len(), 3);
        assert!(chars.iter().all(|c| c.is_multiplicative(&s3())));
    }

    #[test]
    fn admissible_on_z4_with_negation() {
        let s = cyclic(4);
        let mus = admissible_mus(&s, &neg_tau(4));
        assert_eq!(mus.len(), 4);
        assert!(mus.iter().all(Character::is_nowhere_zero));
    }

    #[test]
    fn admissible_on_z2_with_identity() {
        let s = cyclic(2);
        let mus = admissible_mus(&s, &InvolutiveMorphism::identity(2));
        assert_eq!(mus.len(), 2);
    }

    #[test]
    fn admissible_on_null() {
        let s = null(2);
        let mus = admissible_mus(&s, &InvolutiveMorphism::identity(2));
        assert_eq!(mus.len(), 1);
        assert!(mus[0].is_trivial());
    }

    #[test]
    fn admissible_mus_are_exact() {
        for s in [cyclic(6), s3(), null(3)] {
            for kind in [MorphismKind::Automorphism, MorphismKind::AntiAutomorphism] {
                for tau in enumerate_involutive_morphisms(&s, kind).unwrap() {
                    for mu in admissible_mus(&s, &tau) {
                        for x in s.elements() {
                            assert!(!mu.value(x).is_zero());
                            assert_eq!(mu.value(x) * mu.value(tau.apply(x)), RootOrZero::ONE);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sign_conditions_on_z4() {
        let s = cyclic(4);
        let chi = cyclic_char(4, 1);
        let tau = neg_tau(4);
        let mu = Character::trivial(&s);
        assert!(sign_condition(&s, &chi, &tau, &mu, 1, Sign::Minus).unwrap());
        assert!(!sign_condition(&s, &chi, &tau, &mu, 1, Sign::Plus).unwrap());
        let one = Character::trivial(&s);
        let id = InvolutiveMorphism::identity(4);
        for z0 in 0..4 {
            assert!(sign_condition(&s, &one, &id, &mu, z0, Sign::Plus).unwrap());
        }
    }

    #[test]
    fn sign_condition_rejects_non_central() {
        let s = s3();
        let chi = Character::trivial(&s);
        let tau = InvolutiveMorphism::identity(6);
        assert_eq!(
            sign_condition(&s, &chi, &tau, &chi, 1, Sign::Plus).unwrap_err(),
            Error::NonCentralZ0(1)
        );
    }

    #[test]
    fn twisted_is_multiplicative() {
        let s = s3();
        for tau in enumerate_involutive_morphisms(&s, MorphismKind::AntiAutomorphism).unwrap() {
            for mu in admissible_mus(&s, &tau) {
                for chi in enumerate_characters(&s) {
                    assert!(chi.twisted(&tau, &mu).is_multiplicative(&s));
                }
            }
        }
    }

    #[test]
    fn from_values_rejects_non_multiplicative() {
        let s = cyclic(2);
        let err = Character::from_values(&s, &[RootOrZero::MINUS_ONE, RootOrZero::ONE]).unwrap_err();
        assert!(matches!(err, Error::InvalidCharacter(_)));
    }
}
