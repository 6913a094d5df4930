//! Levenberg-Marquardt refinement of candidate solutions restricted to an
//! affine family `f = offset + basis · t`.
//!
//! The normal equations are accumulated pair by pair, so the `n² x m`
//! Jacobian is never formed.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::Equation;

const MAX_ITER: usize = 100;
const CONVERGED: f64 = 1e-12;
const DAMPING_START: f64 = 1e-3;
const DAMPING_MAX: f64 = 1e10;

/// Affine parameterization of candidate functions.
pub struct AffineFamily {
    pub offset: DVector<Complex64>,
    pub basis: DMatrix<Complex64>,
}

impl AffineFamily {
    /// All functions, parameterized by their values.
    pub fn full(n: usize) -> Self {
        AffineFamily { offset: DVector::zeros(n), basis: DMatrix::identity(n, n) }
    }

    pub fn params(&self) -> usize {
        self.basis.ncols()
    }
}

/// One `(x, y)` term: `c1 f(a1) + c2 f(a2) - 2 f(x) f(y)`.
#[derive(Clone, Copy)]
struct Pair {
    x: usize,
    y: usize,
    a1: usize,
    a2: usize,
    c2: Complex64,
}

/// An equation restricted to an affine family, flattened for repeated runs.
pub struct Problem {
    n: usize,
    m: usize,
    c1: Complex64,
    pairs: Vec<Pair>,
    offset: Vec<Complex64>,
    /// Row-major `n x m`.
    basis: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Problem {
    pub fn new(eq: &Equation<'_>, fam: &AffineFamily) -> Self {
        let n = eq.order();
        let m = fam.params();
        let mut pairs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                pairs.push(Pair { x, y, a1: eq.arg1(x, y), a2: eq.arg2(x, y), c2: eq.coeff2(y) });
            }
        }
        let mut basis = Vec::with_capacity(n * m);
        for x in 0..n {
            basis.extend((0..m).map(|k| fam.basis[(x, k)]));
        }
        Problem {
            n,
            m,
            c1: Complex64::new(eq.spec().c1(), 0.0),
            pairs,
            offset: fam.offset.iter().copied().collect(),
            basis,
        }
    }

    fn eval(&self, t: &[Complex64], f: &mut [Complex64]) {
        for (x, out) in f.iter_mut().enumerate() {
            let row = &self.basis[x * self.m..(x + 1) * self.m];
            *out = self.offset[x] + row.iter().zip(t).map(|(b, t)| b * t).sum::<Complex64>();
        }
    }

    fn residual(&self, p: &Pair, f: &[Complex64]) -> Complex64 {
        self.c1 * f[p.a1] + p.c2 * f[p.a2] - f[p.x] * f[p.y] * 2.0
    }

    /// Sum of squares and largest modulus of the pair residuals.
    fn cost(&self, f: &[Complex64]) -> (f64, f64) {
        self.pairs.iter().fold((0.0, 0.0), |(s, w), p| {
            let r = self.residual(p, f);
            (s + r.norm_sqr(), w.max(r.norm()))
        })
    }

    /// Accumulates `J^H J` (row-major) and `-J^H r` without forming `J`.
    fn normal_equations(&self, f: &[Complex64], jhj: &mut [Complex64], rhs: &mut [Complex64], row: &mut [Complex64]) {
        let m = self.m;
        jhj.fill(ZERO);
        rhs.fill(ZERO);
        let b = |x: usize, k: usize| self.basis[x * m + k];
        for p in &self.pairs {
            let r = self.residual(p, f);
            for (k, slot) in row.iter_mut().enumerate() {
                *slot = self.c1 * b(p.a1, k) + p.c2 * b(p.a2, k) - (b(p.x, k) * f[p.y] + f[p.x] * b(p.y, k)) * 2.0;
            }
            for i in 0..m {
                let ci = row[i].conj();
                rhs[i] -= ci * r;
                for j in 0..m {
                    jhj[i * m + j] += ci * row[j];
                }
            }
        }
    }

    /// Damped Gauss-Newton from `t`. Returns the final function when the
    /// largest pair residual falls below the convergence threshold.
    pub fn refine(&self, t: &[Complex64]) -> Option<Vec<Complex64>> {
        let m = self.m;
        let mut t = t.to_vec();
        let mut f = vec![ZERO; self.n];
        self.eval(&t, &mut f);
        let (mut cost, mut worst) = self.cost(&f);
        let mut damping = DAMPING_START;
        let (mut jhj, mut rhs, mut row) = (vec![ZERO; m * m], vec![ZERO; m], vec![ZERO; m]);
        let (mut t_new, mut f_new) = (t.clone(), f.clone());
        for _ in 0..MAX_ITER {
            if worst < CONVERGED {
                return Some(f);
            }
            self.normal_equations(&f, &mut jhj, &mut rhs, &mut row);
            let g = DVector::from_column_slice(&rhs);
            loop {
                if damping > DAMPING_MAX {
                    return None;
                }
                let a = DMatrix::from_fn(m, m, |i, j| jhj[i * m + j] + if i == j { damping } else { 0.0 });
                let Some(step) = a.lu().solve(&g) else {
                    damping *= 10.0;
                    continue;
                };
                for k in 0..m {
                    t_new[k] = t[k] + step[k];
                }
                self.eval(&t_new, &mut f_new);
                let (c, w) = self.cost(&f_new);
                if c.is_finite() && c < cost {
                    core::mem::swap(&mut t, &mut t_new);
                    core::mem::swap(&mut f, &mut f_new);
                    (cost, worst) = (c, w);
                    damping = (damping / 10.0).max(1e-15);
                    break;
                }
                damping *= 10.0;
            }
        }
        (worst < CONVERGED).then_some(f)
    }
}

/// Refines an approximate solution over all functions.
pub fn polish(eq: &Equation<'_>, f: &[Complex64]) -> Option<Vec<Complex64>> {
    Problem::new(eq, &AffineFamily::full(eq.order())).refine(f)
}
