//! Independent solver for a single instance.
//!
//! If `f` solves an equation and `f(w) != 0`, then `f` is an eigenvector of the
//! base-point matrix `M_w` with eigenvalue `2 f(w)`. Every nonzero solution
//! therefore lies in a nonzero-eigenvalue eigenspace at some `w`. A
//! one-dimensional eigenspace pins the solution down to `lambda / (2 v(w)) v`;
//! higher-dimensional ones are searched with damped Newton from a grid of
//! starting points on the slice `f(w) = lambda / 2`, which is not exhaustive.

pub mod eigen;
pub mod newton;

use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::function::dedup_functions;
use crate::{ComplexFunction, Equation, Family, Result, DEDUP_TOL};

pub use eigen::{build_base_matrix, eigen_candidates, BasePointMatrix, EigenSpace};

/// Eigenvalues below this modulus cannot come from a nonzero `f(w)`.
const ZERO_EIGENVALUE: f64 = 1e-7;
/// Eigenvectors with `|v(w)|` below this cannot be scaled to `f(w) = lambda/2`.
const VANISHING_AT_W: f64 = 1e-10;
/// Largest eigenspace searched by Newton.
const MAX_SEARCH_DIM: usize = 4;
/// Residual under which a candidate is accepted without polishing.
const POLISHED: f64 = 1e-12;
/// Real and imaginary starting coordinates of the Newton grid.
const GRID: [f64; 5] = [-1.0, -0.5, 0.0, 0.5, 1.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Completeness {
    /// Every nonzero eigenvalue had a one-dimensional eigenspace.
    Complete,
    /// Some eigenspace was searched heuristically or skipped.
    HeuristicDegenerate,
}

impl Completeness {
    pub fn as_str(self) -> &'static str {
        match self {
            Completeness::Complete => "complete",
            Completeness::HeuristicDegenerate => "heuristic-degenerate",
        }
    }
}

impl core::fmt::Display for Completeness {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum SpaceSearch {
    /// One-dimensional: the solution (if any) is forced.
    Exact,
    /// Newton grid on the slice `f(w) = lambda / 2`.
    Newton,
    /// Too large to search.
    Skipped,
    /// The eigenspace vanishes at `w`, so no solution has `f(w) = lambda / 2`.
    VanishesAtBase,
}

/// One nonzero eigenvalue seen at base point `w`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct EigenSummary {
    pub w: usize,
    pub value: Complex64,
    pub dim: usize,
    pub algebraic: usize,
    pub search: SpaceSearch,
    /// Solutions accepted from this eigenspace, before deduplication.
    pub found: usize,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct OracleResult {
    pub family: Family,
    pub z0: Option<usize>,
    /// All solutions found, the zero function included, deduplicated and
    /// sorted.
    pub solutions: Vec<ComplexFunction>,
    pub completeness: Completeness,
    pub diagnostics: Vec<EigenSummary>,
}

impl OracleResult {
    pub fn nonzero(&self) -> impl Iterator<Item = &ComplexFunction> {
        self.solutions.iter().filter(|f| !f.is_zero(DEDUP_TOL))
    }

    pub fn nonzero_count(&self) -> usize {
        self.nonzero().count()
    }
}

/// Finds the solutions of `eq`. Candidates are kept only when their residual
/// is below `tol`.
pub fn solve_all(eq: &Equation<'_>, tol: f64) -> Result<OracleResult> {
    let n = eq.order();
    let mut found = alloc::vec![ComplexFunction::zero(n)];
    let mut diagnostics = Vec::new();
    let mut complete = true;

    for w in 0..n {
        let m = build_base_matrix(eq, w)?.matrix;
        for space in eigen_candidates(&m)? {
            if space.value.norm() < ZERO_EIGENVALUE {
                continue;
            }
            let dim = space.dim();
            if dim > 1 {
                complete = false;
            }
            let half = space.value / 2.0;
            let rho: Vec<Complex64> = (0..dim).map(|k| space.basis[(w, k)]).collect();
            let rho_norm = libm::sqrt(rho.iter().map(|v| v.norm_sqr()).sum::<f64>());
            let mut candidates = Vec::new();
            let search = if rho_norm < VANISHING_AT_W {
                SpaceSearch::VanishesAtBase
            } else if dim == 1 {
                candidates.push(space.basis.column(0).iter().map(|v| v * half / rho[0]).collect());
                SpaceSearch::Exact
            } else if dim <= MAX_SEARCH_DIM {
                candidates.extend(newton_grid(eq, &space.basis, &rho, rho_norm, half));
                SpaceSearch::Newton
            } else {
                SpaceSearch::Skipped
            };
            let mut accepted = 0;
            for c in candidates {
                if let Some(f) = accept(eq, c, tol)? {
                    found.push(f);
                    accepted += 1;
                }
            }
            diagnostics.push(EigenSummary {
                w,
                value: space.value,
                dim,
                algebraic: space.algebraic,
                search,
                found: accepted,
            });
        }
    }

    Ok(OracleResult {
        family: eq.family(),
        z0: eq.z0(),
        solutions: dedup_functions(found, DEDUP_TOL),
        completeness: if complete { Completeness::Complete } else { Completeness::HeuristicDegenerate },
        diagnostics,
    })
}

/// Polishes a candidate if needed and keeps it when its residual is below
/// `tol · min(1, sup|f|²)`.
fn accept(eq: &Equation<'_>, values: Vec<Complex64>, tol: f64) -> Result<Option<ComplexFunction>> {
    let Ok(mut f) = ComplexFunction::new(values) else {
        return Ok(None);
    };
    let mut res = eq.residual(&f)?.max_abs;
    if res > POLISHED {
        if let Some(p) = newton::polish(eq, f.values()) {
            if let Ok(p) = ComplexFunction::new(p) {
                let r = eq.residual(&p)?.max_abs;
                if r < res {
                    (f, res) = (p, r);
                }
            }
        }
    }
    // A tiny function has a tiny residual whether or not it solves the
    // equation, so the tolerance scales with the quadratic term.
    let scale = f.sup_norm().powi(2).min(1.0);
    Ok((res < tol * scale).then_some(f))
}

/// Newton runs from a grid on the affine slice `{V c : (V c)(w) = half}` of
/// the eigenspace spanned by the columns of `V`.
fn newton_grid(
    eq: &Equation<'_>,
    v: &DMatrix<Complex64>,
    rho: &[Complex64],
    rho_norm: f64,
    half: Complex64,
) -> Vec<Vec<Complex64>> {
    let d = rho.len();
    // c0 = half · conj(rho) / |rho|^2 satisfies rho · c0 = half.
    let u: Vec<Complex64> = rho.iter().map(|r| r.conj() / rho_norm).collect();
    let c0 = DVector::from_iterator(d, u.iter().map(|x| x * half / rho_norm));
    let null = complement(&u);
    let problem = newton::Problem::new(eq, &newton::AffineFamily { offset: v * c0, basis: v * null });

    let m = d - 1;
    let points: Vec<Complex64> =
        GRID.iter().flat_map(|&re| GRID.iter().map(move |&im| Complex64::new(re, im))).collect();
    let mut idx = alloc::vec![0usize; m];
    let mut out: Vec<Vec<Complex64>> = Vec::new();
    loop {
        let t: Vec<Complex64> = idx.iter().map(|&i| points[i]).collect();
        if let Some(f) = problem.refine(&t) {
            let dup = out.iter().any(|g| {
                g.iter().zip(&f).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max) < DEDUP_TOL
            });
            if !dup {
                out.push(f);
            }
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == m {
                return out;
            }
            idx[k] += 1;
            if idx[k] < points.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Orthonormal basis (as columns) of the orthogonal complement of the unit
/// vector `u`.
fn complement(u: &[Complex64]) -> DMatrix<Complex64> {
    let d = u.len();
    let mut kept: Vec<Vec<Complex64>> = alloc::vec![u.to_vec()];
    for e in 0..d {
        if kept.len() == d {
            break;
        }
        let mut x = alloc::vec![Complex64::new(0.0, 0.0); d];
        x[e] = Complex64::new(1.0, 0.0);
        for q in &kept {
            let dot: Complex64 = q.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
            for (xi, qi) in x.iter_mut().zip(q) {
                *xi -= dot * qi;
            }
        }
        let norm = libm::sqrt(x.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm > 1e-8 {
            kept.push(x.into_iter().map(|a| a / norm).collect());
        }
    }
    DMatrix::from_fn(d, d - 1, |i, c| kept[c + 1][i])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "kebab-case"))]
pub enum Verdict {
    Confirmed,
    /// The oracle found a solution the closed forms do not produce.
    UnclassifiedSolutionFound,
    /// A closed-form solution the oracle did not find.
    ConstructorError,
    /// Both of the above.
    Mismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Confirmed => "confirmed",
            Verdict::UnclassifiedSolutionFound => "unclassified solution found",
            Verdict::ConstructorError => "constructor error",
            Verdict::Mismatch => "mismatch",
        }
    }
}

impl core::fmt::Display for Verdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Matching of two solution sets; zero functions are ignored and indices
/// refer to the input slices.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Comparison {
    /// `(classified, oracle)` index pairs.
    pub matched: Vec<(usize, usize)>,
    pub classified_only: Vec<usize>,
    pub oracle_only: Vec<usize>,
    pub verdict: Verdict,
}

pub fn compare_sets(classified: &[ComplexFunction], oracle: &[ComplexFunction], tol: f64) -> Comparison {
    let nonzero = |fs: &[ComplexFunction]| -> Vec<usize> { (0..fs.len()).filter(|&i| !fs[i].is_zero(tol)).collect() };
    let (cs, os) = (nonzero(classified), nonzero(oracle));
    let mut matched = Vec::new();
    let mut used = alloc::vec![false; oracle.len()];
    let mut classified_only = Vec::new();
    for &i in &cs {
        match os.iter().copied().find(|&j| !used[j] && classified[i].distance(&oracle[j]) < tol) {
            Some(j) => {
                used[j] = true;
                matched.push((i, j));
            }
            None => classified_only.push(i),
        }
    }
    let oracle_only: Vec<usize> = os.into_iter().filter(|&j| !used[j]).collect();
    let verdict = match (classified_only.is_empty(), oracle_only.is_empty()) {
        (true, true) => Verdict::Confirmed,
        (true, false) => Verdict::UnclassifiedSolutionFound,
        (false, true) => Verdict::ConstructorError,
        (false, false) => Verdict::Mismatch,
    };
    Comparison { matched, classified_only, oracle_only, verdict }
}
