//! Real solution space of `S_L Z = Z S_R`, `T_L Z = Z T_R`.
//!
//! `T` is diagonal, so `T_L Z = Z T_R` restricts `Z` to the support
//! `{(i, j) : T_L[i] = T_R[j]}`. On that support the `S` relation is a complex
//! linear map `A`; real solutions form the nullspace of `Re(AᴴA)`, which is
//! assembled in closed form and diagonalised. Eigenvectors with small
//! eigenvalue are then refined through singular values of `A` restricted to
//! that block, so the reported singular values are accurate near zero.

use nalgebra::DMatrix;

use super::InvariantError;
use crate::fusion::FusionRules;
use crate::modular::{ModularData, C64};

/// Singular values below this define the nullspace.
pub const NULLSPACE_TOL: f64 = 1e-8;
/// Singular values in this band are neither clearly zero nor clearly nonzero.
pub const BORDERLINE_BAND: (f64, f64) = (1e-10, 1e-6);
/// Eigenvalues of `Re(AᴴA)` below this square are passed to refinement.
const CANDIDATE_SIGMA: f64 = 1e-4;
/// Twist equality tolerance for the support.
pub const T_MATCH_TOL: f64 = 1e-9;

#[derive(Clone, Debug)]
pub struct Commutant {
    pub n_left: usize,
    pub n_right: usize,
    /// Supported entries `(i, j)`, ordered row-major.
    pub support: Vec<(usize, usize)>,
    /// Orthonormal basis: column `c` lists the value on each supported entry.
    pub basis: DMatrix<f64>,
    /// Singular values of the refined candidate block, ascending.
    pub small_singular_values: Vec<f64>,
}

impl Commutant {
    pub fn dimension(&self) -> usize {
        self.basis.ncols()
    }

    /// Basis vector `c` as a dense `n_left × n_right` matrix.
    pub fn basis_matrix(&self, c: usize) -> DMatrix<f64> {
        let mut z = DMatrix::zeros(self.n_left, self.n_right);
        for (e, &(i, j)) in self.support.iter().enumerate() {
            z[(i, j)] = self.basis[(e, c)];
        }
        z
    }
}

pub fn t_support(t_left: &[C64], t_right: &[C64]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (i, a) in t_left.iter().enumerate() {
        for (j, b) in t_right.iter().enumerate() {
            if (a - b).norm() < T_MATCH_TOL {
                out.push((i, j));
            }
        }
    }
    out
}

/// `max |S_L Z - Z S_R|` for a real matrix `Z`.
pub fn s_residual(s_left: &DMatrix<C64>, s_right: &DMatrix<C64>, z: &DMatrix<f64>) -> f64 {
    let zc = z.map(|x| C64::new(x, 0.0));
    (s_left * &zc - &zc * s_right)
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

/// `max |T_L Z - Z T_R|` for diagonal `T`.
pub fn t_residual(t_left: &[C64], t_right: &[C64], z: &DMatrix<f64>) -> f64 {
    let mut r: f64 = 0.0;
    for i in 0..z.nrows() {
        for j in 0..z.ncols() {
            r = r.max(((t_left[i] - t_right[j]) * z[(i, j)]).norm());
        }
    }
    r
}

pub fn commutant<L: FusionRules, R: FusionRules>(
    left: &ModularData<L>,
    right: &ModularData<R>,
) -> Result<Commutant, InvariantError> {
    let (sl, sr) = (&left.s, &right.s);
    let (nl, nr) = (sl.nrows(), sr.nrows());
    let support = t_support(&left.t, &right.t);
    let ns = support.len();
    if ns == 0 {
        return Ok(Commutant {
            n_left: nl,
            n_right: nr,
            support,
            basis: DMatrix::zeros(0, 0),
            small_singular_values: vec![],
        });
    }
    // Re(AᴴA) for A: z ↦ S_L Z - Z S_R on the support
    let gl = sl.adjoint() * sl;
    let gr = sr.conjugate() * sr.transpose();
    let m = DMatrix::from_fn(ns, ns, |e, f| {
        let (i, j) = support[e];
        let (k, l) = support[f];
        let mut v = C64::new(0.0, 0.0);
        if j == l {
            v += gl[(i, k)];
        }
        if i == k {
            v += gr[(j, l)];
        }
        v -= sl[(k, i)].conj() * sr[(l, j)];
        v -= sr[(j, l)].conj() * sl[(i, k)];
        v.re
    });
    let eig = m.symmetric_eigen();
    let cand: Vec<usize> = (0..ns)
        .filter(|&c| eig.eigenvalues[c] < CANDIDATE_SIGMA * CANDIDATE_SIGMA)
        .collect();
    if cand.is_empty() {
        return Ok(Commutant {
            n_left: nl,
            n_right: nr,
            support,
            basis: DMatrix::zeros(ns, 0),
            small_singular_values: vec![],
        });
    }
    let v = DMatrix::from_fn(ns, cand.len(), |e, c| eig.eigenvectors[(e, cand[c])]);
    // stacked real image of each candidate column under A
    let rows = 2 * nl * nr;
    let mut av = DMatrix::<f64>::zeros(rows, cand.len());
    for c in 0..cand.len() {
        let mut z = DMatrix::<f64>::zeros(nl, nr);
        for (e, &(i, j)) in support.iter().enumerate() {
            z[(i, j)] = v[(e, c)];
        }
        let zc = z.map(|x| C64::new(x, 0.0));
        let img = sl * &zc - &zc * sr;
        for (r, val) in img.iter().enumerate() {
            av[(2 * r, c)] = val.re;
            av[(2 * r + 1, c)] = val.im;
        }
    }
    // singular values of the tall block via its Gram matrix would lose the
    // small ones; use the SVD directly
    let svd = av.svd(false, true);
    let vt = svd.v_t.expect("requested");
    let mut pairs: Vec<(f64, usize)> = svd.singular_values.iter().copied().zip(0..).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let small_singular_values: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    if let Some(&(s, _)) = pairs
        .iter()
        .find(|p| p.0 >= BORDERLINE_BAND.0 && p.0 <= BORDERLINE_BAND.1)
    {
        return Err(InvariantError::BorderlineSingularValue(s));
    }
    let null: Vec<usize> = pairs
        .iter()
        .filter(|p| p.0 < NULLSPACE_TOL)
        .map(|p| p.1)
        .collect();
    let mut basis = DMatrix::<f64>::zeros(ns, null.len());
    for (c, &r) in null.iter().enumerate() {
        // V · (right singular vector r)
        for e in 0..ns {
            basis[(e, c)] = (0..cand.len()).map(|k| v[(e, k)] * vt[(r, k)]).sum();
        }
    }
    Ok(Commutant {
        n_left: nl,
        n_right: nr,
        support,
        basis,
        small_singular_values,
    })
}
