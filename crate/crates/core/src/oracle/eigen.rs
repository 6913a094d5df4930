//! Linearization at a base point and eigenspace extraction.
//!
//! Fixing `y = w`, the left-hand side of every equation is a linear operator
//! `M_w` acting on `f`, and the equation reads `M_w f = 2 f(w) f`.

use alloc::vec::Vec;

use nalgebra::{DMatrix, Schur, SVD};
use num_complex::Complex64;

use crate::{Equation, Error, Result};

/// Eigenvalues closer than this are one cluster.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Singular values below this (times the matrix scale) span the null space.
const NULL_TOL: f64 = 1e-7;

/// Entries below this are treated as zero when canonicalizing bases.
const PIVOT_TOL: f64 = 1e-8;
const PHASE_TOL: f64 = 1e-10;

const MAX_ITER: usize = 10_000;

#[derive(Debug, Clone, PartialEq)]
pub struct BasePointMatrix {
    pub w: usize,
    /// Row `x` holds `s1` at column `arg1(x, w)` and `s2·mu(w)` at
    /// `arg2(x, w)`, accumulated when they coincide.
    pub matrix: DMatrix<Complex64>,
}

/// An eigenvalue with an orthonormal, canonically chosen basis of its
/// eigenspace (columns of `basis`).
#[derive(Debug, Clone, PartialEq)]
pub struct EigenSpace {
    pub value: Complex64,
    /// Number of computed eigenvalues in the cluster.
    pub algebraic: usize,
    pub basis: DMatrix<Complex64>,
}

impl EigenSpace {
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }
}

pub fn build_base_matrix(eq: &Equation<'_>, w: usize) -> Result<BasePointMatrix> {
    let n = eq.order();
    eq.setting().semigroup().check_element(w)?;
    let c1 = Complex64::new(eq.spec().c1(), 0.0);
    let c2 = eq.coeff2(w);
    let mut matrix = DMatrix::zeros(n, n);
    for x in 0..n {
        matrix[(x, eq.arg1(x, w))] += c1;
        matrix[(x, eq.arg2(x, w))] += c2;
    }
    Ok(BasePointMatrix { w, matrix })
}

/// Full eigen-decomposition of a small dense complex matrix: eigenvalues
/// clustered within [`CLUSTER_TOL`] and sorted by real then imaginary part,
/// each with an orthonormal eigenspace basis.
pub fn eigen_candidates(m: &DMatrix<Complex64>) -> Result<Vec<EigenSpace>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::LengthMismatch { expected: n, got: m.ncols() });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let eigenvalues = eigenvalues(m)?;
    let scale = m.iter().map(|v| v.norm()).fold(1.0, f64::max);

    let mut spaces = Vec::new();
    for cluster in cluster_values(&eigenvalues) {
        let value = cluster.iter().sum::<Complex64>() / cluster.len() as f64;
        let basis = null_space(m, value, NULL_TOL * scale)?;
        spaces.push(EigenSpace { value, algebraic: cluster.len(), basis: canonical_basis(&basis) });
    }
    spaces.sort_by(|a, b| {
        let ka = (grid(a.value.re), grid(a.value.im));
        let kb = (grid(b.value.re), grid(b.value.im));
        ka.cmp(&kb)
    });
    Ok(spaces)
}

/// Eigenvalues via the complex Schur form. Unshifted QR can stall on
/// permutation-like matrices, so on failure the matrix is conjugated by a few
/// fixed Householder reflections before retrying.
fn eigenvalues(m: &DMatrix<Complex64>) -> Result<Vec<Complex64>> {
    let n = m.nrows();
    for attempt in 0..4 {
        let a = if attempt == 0 {
            m.clone()
        } else {
            let q = householder(n, attempt);
            &q * m * &q
        };
        if let Some(values) = Schur::try_new(a, f64::EPSILON, MAX_ITER).and_then(|s| s.eigenvalues()) {
            return Ok(values.as_slice().to_vec());
        }
    }
    Err(Error::EigenSolverFailure)
}

/// The unitary, self-inverse reflection `I - 2 v v^H / |v|^2` for a fixed
/// pseudo-random `v`.
fn householder(n: usize, seed: usize) -> DMatrix<Complex64> {
    let v: Vec<Complex64> = (0..n)
        .map(|i| {
            let a = 0.7 * (seed * (i + 1)) as f64 + 0.3 * seed as f64;
            Complex64::new(libm::cos(a) + 1.1, libm::sin(1.3 * a))
        })
        .collect();
    let norm2: f64 = v.iter().map(|x| x.norm_sqr()).sum();
    DMatrix::from_fn(n, n, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        Complex64::new(id, 0.0) - v[i] * v[j].conj() * (2.0 / norm2)
    })
}

fn grid(v: f64) -> i64 {
    libm::round(v / CLUSTER_TOL) as i64
}

/// Single-linkage clusters of values within [`CLUSTER_TOL`].
fn cluster_values(values: &[Complex64]) -> Vec<Vec<Complex64>> {
    let n = values.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() < CLUSTER_TOL {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut clusters: Vec<(usize, Vec<Complex64>)> = Vec::new();
    for i in 0..n {
        let r = root(&mut parent, i);
        match clusters.iter_mut().find(|(k, _)| *k == r) {
            Some((_, c)) => c.push(values[i]),
            None => clusters.push((r, alloc::vec![values[i]])),
        }
    }
    clusters.into_iter().map(|(_, c)| c).collect()
}

/// Right singular vectors of `m - value·I` with singular value below
/// `threshold`; at least the smallest one is returned.
fn null_space(m: &DMatrix<Complex64>, value: Complex64, threshold: f64) -> Result<DMatrix<Complex64>> {
    let n = m.nrows();
    let shifted = m - DMatrix::from_diagonal_element(n, n, value);
    let svd = SVD::try_new(shifted, false, true, f64::EPSILON, MAX_ITER).ok_or(Error::EigenSolverFailure)?;
    let v_t = svd.v_t.as_ref().ok_or(Error::EigenSolverFailure)?;
    let sv = &svd.singular_values;
    let mut picked: Vec<usize> = (0..sv.len()).filter(|&i| sv[i] < threshold).collect();
    if picked.is_empty() {
        let smallest = (0..sv.len())
            .min_by(|&a, &b| sv[a].partial_cmp(&sv[b]).unwrap_or(core::cmp::Ordering::Equal))
            .ok_or(Error::EigenSolverFailure)?;
        picked.push(smallest);
    }
    let mut basis = DMatrix::zeros(n, picked.len());
    for (c, &i) in picked.iter().enumerate() {
        for x in 0..n {
            basis[(x, c)] = v_t[(i, x)].conj();
        }
    }
    Ok(basis)
}

/// A basis that depends only on the spanned subspace: reduced row echelon
/// form of the basis vectors, then Gram-Schmidt in order, then each vector
/// rotated so that its first nonzero entry is real positive.
pub fn canonical_basis(basis: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let (n, d) = basis.shape();
    // rows of `r` are the basis vectors
    let mut r: Vec<Vec<Complex64>> = (0..d).map(|c| (0..n).map(|x| basis[(x, c)]).collect()).collect();
    let mut lead = 0;
    for col in 0..n {
        if lead == d {
            break;
        }
        let Some(p) = (lead..d).max_by(|&a, &b| {
            r[a][col].norm().partial_cmp(&r[b][col].norm()).unwrap_or(core::cmp::Ordering::Equal)
        }) else {
            break;
        };
        if r[p][col].norm() <= PIVOT_TOL {
            continue;
        }
        r.swap(lead, p);
        let piv = r[lead][col];
        for v in r[lead].iter_mut() {
            *v /= piv;
        }
        for i in 0..d {
            if i != lead {
                let factor = r[i][col];
                if factor.norm() > 0.0 {
                    for x in 0..n {
                        let sub = factor * r[lead][x];
                        r[i][x] -= sub;
                    }
                }
            }
        }
        lead += 1;
    }

    let mut out: Vec<Vec<Complex64>> = Vec::with_capacity(d);
    for mut v in r {
        for u in &out {
            let dot: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
            for (vx, ux) in v.iter_mut().zip(u) {
                *vx -= dot * ux;
            }
        }
        let norm = libm::sqrt(v.iter().map(|a| a.norm_sqr()).sum::<f64>());
        if norm <= PIVOT_TOL {
            continue;
        }
        for a in v.iter_mut() {
            *a /= norm;
        }
        if let Some(first) = v.iter().find(|a| a.norm() > PHASE_TOL).copied() {
            let phase = first.conj() / first.norm();
            for a in v.iter_mut() {
                *a *= phase;
            }
        }
        out.push(v);
    }
    DMatrix::from_fn(n, out.len(), |x, c| out[c][x])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equation::fixtures::*;
    use crate::{ComplexFunction, Family};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn assert_eigen_pairs(m: &DMatrix<Complex64>, spaces: &[EigenSpace]) {
        for sp in spaces {
            let resid = m * &sp.basis - &sp.basis * sp.value;
            assert!(resid.iter().all(|v| v.norm() < 1e-9), "{resid}");
            let gram = sp.basis.adjoint() * &sp.basis;
            let eye = DMatrix::<Complex64>::identity(sp.dim(), sp.dim());
            assert!((gram - eye).iter().all(|v| v.norm() < 1e-9));
        }
    }

    #[test]
    fn z4_van_vleck_base_matrix() {
        let st = z4_setting();
        let eq = st.equation(Family::Vanvleck, Some(1)).unwrap();
        let m = build_base_matrix(&eq, 1).unwrap().matrix;
        let expected = DMatrix::from_fn(4, 4, |x, col| {
            if col == x {
                c(1.0)
            } else if col == (x + 2) % 4 {
                c(-1.0)
            } else {
                c(0.0)
            }
        });
        assert_eq!(m, expected);
        let spaces = eigen_candidates(&m).unwrap();
        let summary: Vec<(f64, usize)> = spaces.iter().map(|s| (s.value.re, s.dim())).collect();
        assert_eq!(summary.len(), 2);
        assert!((summary[0].0).abs() < 1e-12 && summary[0].1 == 2);
        assert!((summary[1].0 - 2.0).abs() < 1e-12 && summary[1].1 == 2);
        assert_eigen_pairs(&m, &spaces);
    }

    #[test]
    fn base_matrix_reproduces_lhs() {
        let st = z4_setting();
        let f = ComplexFunction::new(
            [(0.3, -0.1), (1.7, 0.4), (-0.2, 2.2), (0.9, -1.3)].iter().map(|&(a, b)| Complex64::new(a, b)).collect(),
        )
        .unwrap();
        let fv = nalgebra::DVector::from_column_slice(f.values());
        for fam in Family::ALL {
            let z0 = fam.spec().uses_z0.then_some(3);
            let eq = st.equation(fam, z0).unwrap();
            for w in 0..4 {
                let mf = &build_base_matrix(&eq, w).unwrap().matrix * &fv;
                for x in 0..4 {
                    assert!((mf[x] - eq.lhs(f.values(), x, w)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn null_semigroup_rows() {
        let st = null2_setting();
        let eq = st.equation(Family::Kannappan, Some(0)).unwrap();
        let m = build_base_matrix(&eq, 1).unwrap().matrix;
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[c(2.0), c(0.0), c(2.0), c(0.0)]));
        let spaces = eigen_candidates(&m).unwrap();
        let values: Vec<f64> = spaces.iter().map(|s| s.value.re).collect();
        assert_eq!(values.len(), 2);
        assert!(values[0].abs() < 1e-12 && (values[1] - 2.0).abs() < 1e-12);
        assert_eigen_pairs(&m, &spaces);
    }

    #[test]
    fn cyclic_shift_converges() {
        let st = z4_setting();
        let eq = st.equation(Family::Kannappan, Some(1)).unwrap();
        let m = build_base_matrix(&eq, 0).unwrap().matrix;
        let spaces = eigen_candidates(&m).unwrap();
        assert_eq!(spaces.len(), 4);
        assert_eigen_pairs(&m, &spaces);
    }

    #[test]
    fn diagonal_matrix_standard_basis() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(alloc::vec![c(1.0), c(2.0), c(3.0), c(4.0)]));
        let spaces = eigen_candidates(&m).unwrap();
        assert_eq!(spaces.len(), 4);
        for (k, sp) in spaces.iter().enumerate() {
            assert!((sp.value - c(k as f64 + 1.0)).norm() < 1e-12);
            assert_eq!(sp.dim(), 1);
            assert!((sp.basis[(k, 0)] - c(1.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn defective_matrix_keeps_single_eigenvector() {
        let m = DMatrix::from_row_slice(2, 2, &[c(1.0), c(1.0), c(0.0), c(1.0)]);
        let spaces = eigen_candidates(&m).unwrap();
        assert_eq!(spaces.len(), 1);
        assert_eq!(spaces[0].dim(), 1);
        assert_eq!(spaces[0].algebraic, 2);
        assert_eigen_pairs(&m, &spaces);
    }

    #[test]
    fn canonical_basis_ignores_input_basis() {
        let a = DMatrix::from_row_slice(3, 2, &[c(1.0), c(0.0), c(0.0), c(1.0), c(1.0), c(1.0)]);
        let mix = DMatrix::from_row_slice(2, 2, &[Complex64::new(0.3, 0.8), c(2.0), c(-1.0), Complex64::new(0.0, 0.5)]);
        let b = &a * mix;
        let ca = canonical_basis(&a);
        let cb = canonical_basis(&b);
        assert!((ca - cb).iter().all(|v| v.norm() < 1e-12));
    }
}
