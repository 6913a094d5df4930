//! Complex-valued functions on a finite semigroup and solution sets of them.

use alloc::vec::Vec;
use core::ops::Index;

use num_complex::Complex64;

use crate::{Error, Result};

/// `f: S -> C` as the vector `(f(0), ..., f(n-1))`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct ComplexFunction {
    values: Vec<Complex64>,
}

impl ComplexFunction {
    /// Rejects NaN and infinite entries.
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if let Some(x) = values.iter().position(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::NonFinite(x));
        }
        Ok(ComplexFunction { values })
    }

    pub fn from_real(values: &[f64]) -> Self {
        ComplexFunction { values: values.iter().map(|&r| Complex64::new(r, 0.0)).collect() }
    }

    pub fn constant(n: usize, c: Complex64) -> Self {
        ComplexFunction { values: alloc::vec![c; n] }
    }

    pub fn zero(n: usize) -> Self {
        Self::constant(n, Complex64::new(0.0, 0.0))
    }

    pub(crate) fn from_vec_unchecked(values: Vec<Complex64>) -> Self {
        ComplexFunction { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Largest modulus.
    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn is_zero(&self, tol: f64) -> bool {
        self.sup_norm() < tol
    }

    pub fn distance(&self, other: &ComplexFunction) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> ComplexFunction {
        ComplexFunction { values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Conjugate by a relabeling (old `x` becomes `perm[x]`).
    pub fn relabel(&self, perm: &[usize]) -> ComplexFunction {
        let mut values = alloc::vec![Complex64::new(0.0, 0.0); self.len()];
        for (x, &v) in self.values.iter().enumerate() {
            values[perm[x]] = v;
        }
        ComplexFunction { values }
    }

    /// Componentwise rounding to the `tol` grid, the canonical sort key.
    pub fn grid_key(&self, tol: f64) -> Vec<(i64, i64)> {
        self.values
            .iter()
            .map(|v| (libm::round(v.re / tol) as i64, libm::round(v.im / tol) as i64))
            .collect()
    }
}

impl Index<usize> for ComplexFunction {
    type Output = Complex64;

    fn index(&self, x: usize) -> &Complex64 {
        &self.values[x]
    }
}

/// Sorts by grid key and drops every function within `tol` (sup norm) of one
/// already kept.
pub fn dedup_functions(fs: Vec<ComplexFunction>, tol: f64) -> Vec<ComplexFunction> {
    dedup_by_function(fs, |f| f, tol)
}

/// [`dedup_functions`] for items carrying a function. Items with equal grid
/// keys keep their input order, so the earliest of them survives.
pub fn dedup_by_function<T>(
    mut items: Vec<T>,
    func: impl Fn(&T) -> &ComplexFunction,
    tol: f64,
) -> Vec<T> {
    items.sort_by_cached_key(|it| func(it).grid_key(tol));
    let mut kept: Vec<T> = Vec::new();
    for it in items {
        if !kept.iter().any(|k| func(k).distance(func(&it)) < tol) {
            kept.push(it);
        }
    }
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn rejects_nan() {
        let bad = vec![Complex64::new(0.0, 0.0), Complex64::new(f64::NAN, 0.0)];
        assert_eq!(ComplexFunction::new(bad).unwrap_err(), Error::NonFinite(1));
    }

    #[test]
    fn dedup_merges_near_duplicates() {
        let a = ComplexFunction::from_real(&[1.0, 0.0]);
        let b = ComplexFunction::from_real(&[1.0 + 1e-10, 0.0]);
        let c = ComplexFunction::from_real(&[-1.0, 0.0]);
        let out = dedup_functions(vec![a.clone(), c.clone(), b], 1e-7);
        assert_eq!(out, vec![c, a]);
    }
}
