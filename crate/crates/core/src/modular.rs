//! Modular data attached to a fusion ring: dimensions, twists, the `S` and
//! `T` matrices, the Gauss sum, Rehren's `Y`-matrix, the Verlinde formula and
//! numerical checks of the `SL(2,Z)` relations.
//!
//! Normalisation: `Y[λ][μ]` is the Hopf-link value with `Y[0][μ] = d_μ`, and
//! `S = Y / √w`. `T = ζ · diag(ω)` where `ζ` is a cube root of `σ/|σ|` picked so
//! that `(ST)³ = S²` holds.

use nalgebra::{Complex, DMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{DimensionVector, FusionError, FusionRing, FusionRules, RingJson, SectorLabel};

pub type C64 = Complex<f64>;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Residual bound for matrix relations.
    pub relation: f64,
    /// Distance-to-integer bound when rounding Verlinde coefficients.
    pub rounding: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            relation: 1e-9,
            rounding: 1e-6,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModularError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("S[0][{0}] vanishes; Verlinde formula undefined")]
    VanishingVacuumRow(usize),
    #[error("Verlinde coefficient N[{lambda}][{mu}][{nu}] = {value} is not a nonnegative integer (residual {residual:.3e})")]
    NonIntegralFusion {
        lambda: usize,
        mu: usize,
        nu: usize,
        value: f64,
        residual: f64,
    },
    #[error("no cube root / twist orientation satisfies (ST)^3 = S^2; best residual {best:.3e}")]
    NoTConvention { best: f64 },
    #[error(
        "degeneracy tests disagree: Y-criterion found {by_y:?}, condition number {condition:.3e}"
    )]
    DegeneracyMismatch { by_y: Vec<usize>, condition: f64 },
    #[error("T is not diagonal unit-modulus at index {0}")]
    BadT(usize),
    #[error("label {0} out of range")]
    LabelOutOfRange(usize),
    #[error("unsupported diagram: {0} (general links need 6j data)")]
    UnsupportedDiagram(String),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

/// Which twist orientation and cube root were used for `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TConvention {
    /// `false`: `T ∝ diag(ω)`; `true`: `T ∝ diag(ω⁻¹)`.
    pub inverted: bool,
    /// Branch `j` of the cube root `exp(i (arg σ + 2πj) / 3)`.
    pub root: u8,
}

/// Modular data over a fusion-rule source `F`.
#[derive(Clone, Debug)]
pub struct ModularData<F = FusionRing> {
    pub name: String,
    pub ring: F,
    pub dims: DimensionVector,
    pub omega: Vec<C64>,
    pub s: DMatrix<C64>,
    pub t: Vec<C64>,
    pub sigma: C64,
    pub convention: Option<TConvention>,
}

/// Gauss sum `σ = Σ d² ω⁻¹`.
pub fn gauss_sum(dims: &[f64], omega: &[C64]) -> C64 {
    dims.iter().zip(omega).map(|(d, w)| w.inv() * (d * d)).sum()
}

fn diag_scale_right(m: &DMatrix<C64>, diag: &[C64]) -> DMatrix<C64> {
    let mut out = m.clone();
    for (j, &t) in diag.iter().enumerate() {
        out.column_mut(j).iter_mut().for_each(|z| *z *= t);
    }
    out
}

fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn st_cubed_residual(s: &DMatrix<C64>, t: &[C64]) -> f64 {
    let st = diag_scale_right(s, t);
    let cube = &st * &st * &st;
    max_abs(&(cube - s * s))
}

/// Select `T = ζ·diag(ω^{±1})` by trying both orientations and the three cube
/// roots of `σ/|σ|` in fixed order.
pub fn select_t(
    s: &DMatrix<C64>,
    omega: &[C64],
    sigma: C64,
    tol: f64,
) -> Result<(Vec<C64>, TConvention), ModularError> {
    let mut best = f64::INFINITY;
    for inverted in [false, true] {
        for root in 0u8..3 {
            let zeta = C64::from_polar(
                1.0,
                (sigma.arg() + 2.0 * std::f64::consts::PI * root as f64) / 3.0,
            );
            let t: Vec<C64> = omega
                .iter()
                .map(|w| zeta * if inverted { w.inv() } else { *w })
                .collect();
            let r = st_cubed_residual(s, &t);
            if r < tol {
                return Ok((t, TConvention { inverted, root }));
            }
            best = best.min(r);
        }
    }
    Err(ModularError::NoTConvention { best })
}

impl<F: FusionRules> ModularData<F> {
    /// Build from `S` and the twists; dimensions come from the vacuum row of `S`
    /// and `T` from [`select_t`].
    pub fn from_twists(
        name: impl Into<String>,
        ring: F,
        s: DMatrix<C64>,
        omega: Vec<C64>,
        tol: f64,
    ) -> Result<Self, ModularError> {
        let n = ring.rank();
        if s.nrows() != n || s.ncols() != n || omega.len() != n {
            return Err(ModularError::Shape(format!(
                "rank {n}, S {}x{}, {} twists",
                s.nrows(),
                s.ncols(),
                omega.len()
            )));
        }
        let s00 = s[(0, 0)].re;
        let dims = DimensionVector::from_dims((0..n).map(|l| s[(0, l)].re / s00).collect());
        let sigma = gauss_sum(&dims.d, &omega);
        let (t, convention) = select_t(&s, &omega, sigma, tol)?;
        Ok(Self {
            name: name.into(),
            ring,
            dims,
            omega,
            s,
            t,
            sigma,
            convention: Some(convention),
        })
    }

    /// Assemble without any derivation or validation.
    pub fn from_parts(
        name: impl Into<String>,
        ring: F,
        dims: Vec<f64>,
        omega: Vec<C64>,
        s: DMatrix<C64>,
        t: Vec<C64>,
    ) -> Result<Self, ModularError> {
        let n = ring.rank();
        if s.nrows() != n || s.ncols() != n || omega.len() != n || t.len() != n || dims.len() != n {
            return Err(ModularError::Shape(format!(
                "rank {n}, S {}x{}, {} twists, {} T entries, {} dims",
                s.nrows(),
                s.ncols(),
                omega.len(),
                t.len(),
                dims.len()
            )));
        }
        let sigma = gauss_sum(&dims, &omega);
        Ok(Self {
            name: name.into(),
            ring,
            dims: DimensionVector::from_dims(dims),
            omega,
            s,
            t,
            sigma,
            convention: None,
        })
    }

    pub fn rank(&self) -> usize {
        self.ring.rank()
    }

    pub fn w(&self) -> f64 {
        self.dims.w
    }

    pub fn label(&self, l: usize) -> &SectorLabel {
        self.ring.label(l)
    }

    /// Charge conjugation matrix `C[λ][μ] = δ_{μ, λ̄}`.
    pub fn conjugation_matrix(&self) -> DMatrix<C64> {
        let n = self.rank();
        DMatrix::from_fn(n, n, |l, m| {
            if m == self.ring.conj(l) {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }
}

impl ModularData<FusionRing> {
    /// Deligne product of two modular data; sector `(a, b)` gets id `a * other.rank() + b`.
    pub fn tensor(&self, other: &Self) -> Self {
        let n2 = other.rank();
        let ring = self.ring.tensor(&other.ring);
        let n = ring.rank();
        let s = DMatrix::from_fn(n, n, |i, j| {
            self.s[(i / n2, j / n2)] * other.s[(i % n2, j % n2)]
        });
        let pick = |a: &[C64], b: &[C64]| (0..n).map(|i| a[i / n2] * b[i % n2]).collect::<Vec<_>>();
        let omega = pick(&self.omega, &other.omega);
        let t = pick(&self.t, &other.t);
        let d: Vec<f64> = (0..n)
            .map(|i| self.dims.d[i / n2] * other.dims.d[i % n2])
            .collect();
        let sigma = gauss_sum(&d, &omega);
        Self {
            name: format!("{}⊠{}", self.name, other.name),
            ring,
            dims: DimensionVector::from_dims(d),
            omega,
            s,
            t,
            sigma,
            convention: None,
        }
    }

    pub fn from_json(json: &ModularJson) -> Result<Self, ModularError> {
        let ring = FusionRing::from_json(&json.ring)?;
        let n = ring.rank();
        let cplx = |p: &[f64; 2]| C64::new(p[0], p[1]);
        if json.s.len() != n || json.s.iter().any(|r| r.len() != n) {
            return Err(ModularError::Shape(format!("S must be {n}x{n}")));
        }
        let s = DMatrix::from_fn(n, n, |i, j| cplx(&json.s[i][j]));
        Self::from_parts(
            json.name.clone().unwrap_or_else(|| "input".to_string()),
            ring,
            json.d.clone(),
            json.omega.iter().map(cplx).collect(),
            s,
            json.t_diag.iter().map(cplx).collect(),
        )
    }

    pub fn to_json(&self) -> ModularJson {
        let pair = |z: &C64| [z.re, z.im];
        ModularJson {
            name: Some(self.name.clone()),
            ring: self.ring.to_json(),
            d: self.dims.d.clone(),
            omega: self.omega.iter().map(pair).collect(),
            s: (0..self.rank())
                .map(|i| (0..self.rank()).map(|j| pair(&self.s[(i, j)])).collect())
                .collect(),
            t_diag: self.t.iter().map(pair).collect(),
        }
    }
}

/// JSON form `{"ring": …, "d": [..], "omega": [[re,im]], "S": [[[re,im]]], "T_diag": [[re,im]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModularJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub ring: RingJson,
    pub d: Vec<f64>,
    pub omega: Vec<[f64; 2]>,
    #[serde(rename = "S")]
    pub s: Vec<Vec<[f64; 2]>>,
    #[serde(rename = "T_diag")]
    pub t_diag: Vec<[f64; 2]>,
}

/// Rounded Verlinde coefficients with the largest pre-rounding residual.
#[derive(Clone, Debug, PartialEq)]
pub struct VerlindeTensor {
    pub n: usize,
    pub coeffs: Vec<u32>,
    pub residual: f64,
}

impl VerlindeTensor {
    pub fn coeff(&self, l: usize, m: usize, v: usize) -> u32 {
        self.coeffs[(l * self.n + m) * self.n + v]
    }
}

/// `N[λ][μ][ν] = Σ_σ S[λ][σ] S[μ][σ] conj(S[ν][σ]) / S[0][σ]`, rounded.
pub fn verlinde(s: &DMatrix<C64>, rounding: f64) -> Result<VerlindeTensor, ModularError> {
    let n = s.nrows();
    if s.ncols() != n {
        return Err(ModularError::Shape("S must be square".into()));
    }
    if let Some(sig) = (0..n).find(|&sig| s[(0, sig)].norm() < 1e-300) {
        return Err(ModularError::VanishingVacuumRow(sig));
    }
    let inv_vac: Vec<C64> = (0..n).map(|sig| s[(0, sig)].inv()).collect();
    let conj_s: DMatrix<C64> = s.map(|z| z.conj());
    let mut coeffs = vec![0u32; n * n * n];
    let mut residual: f64 = 0.0;
    let mut v = vec![C64::new(0.0, 0.0); n];
    for l in 0..n {
        for m in 0..n {
            for sig in 0..n {
                v[sig] = s[(l, sig)] * s[(m, sig)] * inv_vac[sig];
            }
            for nu in 0..n {
                let z: C64 = (0..n).map(|sig| v[sig] * conj_s[(nu, sig)]).sum();
                let r = z.re.round();
                let res = (z - C64::new(r, 0.0)).norm();
                residual = residual.max(res);
                if res > rounding || r < 0.0 {
                    return Err(ModularError::NonIntegralFusion {
                        lambda: l,
                        mu: m,
                        nu,
                        value: z.re,
                        residual: res,
                    });
                }
                coeffs[(l * n + m) * n + nu] = r as u32;
            }
        }
    }
    Ok(VerlindeTensor {
        n,
        coeffs,
        residual,
    })
}

/// Verlinde row for a single `λ` (all `μ`, `ν`), for spot checks on large data.
pub fn verlinde_row(
    s: &DMatrix<C64>,
    l: usize,
    rounding: f64,
) -> Result<(Vec<u32>, f64), ModularError> {
    let n = s.nrows();
    let mut out = vec![0u32; n * n];
    let mut residual: f64 = 0.0;
    for m in 0..n {
        let v: Vec<C64> = (0..n)
            .map(|sig| s[(l, sig)] * s[(m, sig)] / s[(0, sig)])
            .collect();
        for nu in 0..n {
            let z: C64 = (0..n).map(|sig| v[sig] * s[(nu, sig)].conj()).sum();
            let r = z.re.round();
            let res = (z - C64::new(r, 0.0)).norm();
            residual = residual.max(res);
            if res > rounding || r < 0.0 {
                return Err(ModularError::NonIntegralFusion {
                    lambda: l,
                    mu: m,
                    nu,
                    value: z.re,
                    residual: res,
                });
            }
            out[m * n + nu] = r as u32;
        }
    }
    Ok((out, residual))
}

/// `Y = √w · S`.
pub fn y_matrix<F: FusionRules>(md: &ModularData<F>) -> DMatrix<C64> {
    md.s.scale(md.w().sqrt())
}

/// Sectors whose Hopf link with every sector factorises, `Y[λ][μ] = d_λ d_μ`.
/// Cross-checked against invertibility of `Y`.
pub fn degenerate_sectors<F: FusionRules>(
    md: &ModularData<F>,
    tol: f64,
) -> Result<Vec<usize>, ModularError> {
    let y = y_matrix(md);
    let d = &md.dims.d;
    let n = md.rank();
    let by_y: Vec<usize> = (0..n)
        .filter(|&l| (0..n).all(|m| (y[(l, m)] - C64::new(d[l] * d[m], 0.0)).norm() < tol))
        .collect();
    let sv = y.clone().svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    let condition = if smin > 0.0 {
        smax / smin
    } else {
        f64::INFINITY
    };
    let invertible = condition < 1e9;
    if invertible != (by_y == [0]) {
        return Err(ModularError::DegeneracyMismatch { by_y, condition });
    }
    Ok(by_y)
}

/// `ω_λ = T[λ]/T[0]` and the overall phase `T[0]`.
pub fn twists_from_t(t: &[C64]) -> Result<(Vec<C64>, C64), ModularError> {
    if let Some(i) = t.iter().position(|z| (z.norm() - 1.0).abs() > 1e-9) {
        return Err(ModularError::BadT(i));
    }
    let anomaly = t[0];
    Ok((t.iter().map(|z| z / anomaly).collect(), anomaly))
}

/// Max-abs residuals of the modular relations.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sl2zReport {
    pub unitarity: f64,
    pub symmetry: f64,
    pub s_squared_is_conjugation: f64,
    pub st_cubed_is_s_squared: f64,
    /// `min Re S[0][λ]`.
    pub vacuum_row_min: f64,
    /// `max |Im S[0][λ]|`.
    pub vacuum_row_imag: f64,
    pub tolerance: f64,
    pub pass: bool,
}

pub fn check_sl2z<F: FusionRules>(md: &ModularData<F>, tol: f64) -> Sl2zReport {
    let s = &md.s;
    let n = md.rank();
    let id = DMatrix::<C64>::identity(n, n);
    let unitarity = max_abs(&(s * s.adjoint() - &id));
    let symmetry = max_abs(&(s - s.transpose()));
    let s2 = s * s;
    let s_squared_is_conjugation = max_abs(&(&s2 - md.conjugation_matrix()));
    let st_cubed_is_s_squared = st_cubed_residual(s, &md.t);
    let vacuum_row_min = (0..n).map(|l| s[(0, l)].re).fold(f64::INFINITY, f64::min);
    let vacuum_row_imag = (0..n).map(|l| s[(0, l)].im.abs()).fold(0.0, f64::max);
    let pass = unitarity < tol
        && symmetry < tol
        && s_squared_is_conjugation < tol
        && st_cubed_is_s_squared < tol
        && vacuum_row_min > 0.0
        && vacuum_row_imag < tol;
    Sl2zReport {
        unitarity,
        symmetry,
        s_squared_is_conjugation,
        st_cubed_is_s_squared,
        vacuum_row_min,
        vacuum_row_imag,
        tolerance: tol,
        pass,
    }
}

/// Closed diagrams whose value is fixed by the modular data alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Diagram {
    Unknot {
        label: usize,
    },
    TwistedUnknot {
        label: usize,
        framing: i32,
    },
    Hopf {
        a: usize,
        b: usize,
    },
    DisjointUnion {
        parts: Vec<Diagram>,
    },
    /// Anything else, described by a free-form name; always rejected.
    Link {
        description: String,
    },
}

pub fn diagram_value<F: FusionRules>(
    md: &ModularData<F>,
    diagram: &Diagram,
) -> Result<C64, ModularError> {
    let n = md.rank();
    let check = |l: usize| {
        if l < n {
            Ok(())
        } else {
            Err(ModularError::LabelOutOfRange(l))
        }
    };
    match diagram {
        Diagram::Unknot { label } => {
            check(*label)?;
            Ok(C64::new(md.dims.d[*label], 0.0))
        }
        Diagram::TwistedUnknot { label, framing } => {
            check(*label)?;
            Ok(md.omega[*label].powi(*framing) * md.dims.d[*label])
        }
        Diagram::Hopf { a, b } => {
            check(*a)?;
            check(*b)?;
            Ok(md.s[(*a, *b)] * md.w().sqrt())
        }
        Diagram::DisjointUnion { parts } => parts
            .iter()
            .try_fold(C64::new(1.0, 0.0), |acc, p| Ok(acc * diagram_value(md, p)?)),
        Diagram::Link { description } => Err(ModularError::UnsupportedDiagram(description.clone())),
    }
}
