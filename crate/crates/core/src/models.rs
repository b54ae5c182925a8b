//! Constructors for the modular data of `SU(2)_k` and of the Virasoro
//! minimal models with `c = 1 - 6/(m(m+1))`.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fusion::{FusionError, FusionRing, FusionRules, SectorLabel};
use crate::modular::{
    check_sl2z, verlinde, verlinde_row, ModularData, ModularError, Tolerances, C64,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("level k must be at least 1, got {0}")]
    BadLevel(u32),
    #[error("minimal model index must be at least {min}, got {got}")]
    BadIndex { min: u32, got: u32 },
    #[error("label {0} out of range")]
    BadLabel(String),
    #[error("validation of {model} failed: {detail}")]
    Validation { model: String, detail: String },
    #[error("no sign convention for the minimal model S-matrix at m={m} passes validation: {diagnostics}")]
    SignSearchExhausted { m: u32, diagnostics: String },
    #[error(transparent)]
    Modular(#[from] ModularError),
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

// ---------------------------------------------------------------- SU(2)_k

/// `λ_l · λ_m = λ_{|l-m|} ⊕ λ_{|l-m|+2} ⊕ … ⊕ λ_{min(l+m, 2k-l-m)}`.
pub fn su2_fusion(k: u32, l: u32, m: u32) -> Result<Vec<(usize, u32)>, ModelError> {
    if l > k || m > k {
        return Err(ModelError::BadLabel(format!("λ_{} at level {k}", l.max(m))));
    }
    let lo = l.abs_diff(m);
    let hi = (l + m).min(2 * k - l - m);
    Ok((lo..=hi).step_by(2).map(|j| (j as usize, 1)).collect())
}

pub fn su2_ring(k: u32) -> Result<FusionRing, ModelError> {
    if k == 0 {
        return Err(ModelError::BadLevel(k));
    }
    let n = (k + 1) as usize;
    let mut coeffs = vec![0u32; n * n * n];
    for l in 0..=k {
        for m in 0..=k {
            for (nu, c) in su2_fusion(k, l, m)? {
                coeffs[(l as usize * n + m as usize) * n + nu] = c;
            }
        }
    }
    let labels = (0..n)
        .map(|id| SectorLabel {
            id,
            name: format!("λ_{id}"),
        })
        .collect();
    Ok(FusionRing::from_flat(
        n,
        coeffs,
        (0..n).collect(),
        Some(labels),
    )?)
}

/// `S[l][m] = √(2/(k+2)) sin((l+1)(m+1)π/(k+2))`.
pub fn su2_s(k: u32) -> DMatrix<f64> {
    let n = (k + 1) as usize;
    let kk = (k + 2) as f64;
    DMatrix::from_fn(n, n, |l, m| {
        (2.0 / kk).sqrt() * (((l + 1) * (m + 1)) as f64 * PI / kk).sin()
    })
}

/// `d_{λ_m} = sin((m+1)π/(k+2)) / sin(π/(k+2))`.
pub fn su2_dim(k: u32, m: u32) -> f64 {
    let kk = (k + 2) as f64;
    ((m + 1) as f64 * PI / kk).sin() / (PI / kk).sin()
}

/// `ω_{λ_l} = exp(πi l(l+2)/(2k+4))`.
pub fn su2_twist(k: u32, l: u32) -> C64 {
    // reduce the exponent mod 2 exactly before converting to a phase
    let num = (l * (l + 2)) as u64 % (2 * (2 * k as u64 + 4));
    C64::from_polar(1.0, PI * num as f64 / (2 * k + 4) as f64)
}

pub fn su2_data(k: u32) -> Result<ModularData, ModelError> {
    su2_data_with(k, &Tolerances::default())
}

pub fn su2_data_with(k: u32, tol: &Tolerances) -> Result<ModularData, ModelError> {
    let ring = su2_ring(k)?;
    let s = su2_s(k).map(|x| C64::new(x, 0.0));
    let omega = (0..=k).map(|l| su2_twist(k, l)).collect();
    let md = ModularData::from_twists(format!("SU(2)_{k}"), ring, s, omega, tol.relation)?;
    validate_full(&md, tol)?;
    Ok(md)
}

fn validate_full(md: &ModularData, tol: &Tolerances) -> Result<(), ModelError> {
    let report = check_sl2z(md, tol.relation);
    if !report.pass {
        return Err(ModelError::Validation {
            model: md.name.clone(),
            detail: format!("{report:?}"),
        });
    }
    let v = verlinde(&md.s, tol.rounding)?;
    if v.coeffs != md.ring.flat() {
        return Err(ModelError::Validation {
            model: md.name.clone(),
            detail: "Verlinde tensor differs from the fusion rules".into(),
        });
    }
    Ok(())
}

// ---------------------------------------------------------- minimal models

/// Kac label `(p, q)` with `1 ≤ p ≤ m-1`, `1 ≤ q ≤ m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct KacLabel {
    pub p: u32,
    pub q: u32,
}

impl KacLabel {
    pub fn new(p: u32, q: u32) -> Self {
        Self { p, q }
    }

    /// The partner `(m-p, m+1-q)` under the identification.
    pub fn partner(self, m: u32) -> Self {
        Self {
            p: m - self.p,
            q: m + 1 - self.q,
        }
    }

    /// Representative with the smaller `p` (then smaller `q`).
    pub fn canonical(self, m: u32) -> Self {
        self.min(self.partner(m))
    }

    pub fn is_valid(self, m: u32) -> bool {
        (1..m).contains(&self.p) && (1..=m).contains(&self.q)
    }
}

impl fmt::Display for KacLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

fn check_index(m: u32) -> Result<(), ModelError> {
    if m < 3 {
        Err(ModelError::BadIndex { min: 3, got: m })
    } else {
        Ok(())
    }
}

/// Canonical Kac labels in lexicographic order; the vacuum `(1,1)` comes first.
pub fn minimal_labels(m: u32) -> Vec<KacLabel> {
    let mut out: Vec<KacLabel> = (1..m)
        .flat_map(|p| (1..=m).map(move |q| KacLabel::new(p, q)))
        .filter(|k| k.canonical(m) == *k)
        .collect();
    out.sort();
    out
}

/// Position of a (not necessarily canonical) Kac label in [`minimal_labels`].
pub fn kac_index(m: u32, labels: &[KacLabel], k: KacLabel) -> Option<usize> {
    if !k.is_valid(m) {
        return None;
    }
    labels.binary_search(&k.canonical(m)).ok()
}

/// The double-sum fusion rule, folded through the identification.
pub fn minimal_fusion(
    m: u32,
    a: KacLabel,
    b: KacLabel,
) -> Result<Vec<(KacLabel, u32)>, ModelError> {
    for x in [a, b] {
        if !x.is_valid(m) {
            return Err(ModelError::BadLabel(format!("{x} for m={m}")));
        }
    }
    let mut out: Vec<(KacLabel, u32)> = Vec::new();
    let r_hi = (a.p + b.p - 1).min(2 * m - a.p - b.p - 1);
    let s_hi = (a.q + b.q - 1).min(2 * (m + 1) - a.q - b.q - 1);
    for r in (a.p.abs_diff(b.p) + 1..=r_hi).filter(|r| (r + a.p + b.p) % 2 == 1) {
        for s in (a.q.abs_diff(b.q) + 1..=s_hi).filter(|s| (s + a.q + b.q) % 2 == 1) {
            let c = KacLabel::new(r, s).canonical(m);
            match out.iter_mut().find(|(x, _)| *x == c) {
                Some((_, n)) => *n += 1,
                None => out.push((c, 1)),
            }
        }
    }
    out.sort();
    Ok(out)
}

pub fn minimal_ring(m: u32) -> Result<FusionRing, ModelError> {
    check_index(m)?;
    let labels = minimal_labels(m);
    let n = labels.len();
    let mut coeffs = vec![0u32; n * n * n];
    for (i, &a) in labels.iter().enumerate() {
        for (j, &b) in labels.iter().enumerate() {
            for (c, mult) in minimal_fusion(m, a, b)? {
                let k = kac_index(m, &labels, c).expect("canonical label");
                coeffs[(i * n + j) * n + k] = mult;
            }
        }
    }
    Ok(FusionRing::from_flat(
        n,
        coeffs,
        (0..n).collect(),
        Some(sector_labels(&labels)),
    )?)
}

fn sector_labels(labels: &[KacLabel]) -> Vec<SectorLabel> {
    labels
        .iter()
        .enumerate()
        .map(|(id, k)| SectorLabel {
            id,
            name: format!("λ_({},{})", k.p, k.q),
        })
        .collect()
}

/// Conformal weight numerator: `h = ((m+1)p² - mq² - 1 + m(m+1)(p-q)²) / (4m(m+1))`.
fn minimal_twist_numerator(m: u32, k: KacLabel) -> i64 {
    let (m, p, q) = (m as i64, k.p as i64, k.q as i64);
    (m + 1) * p * p - m * q * q - 1 + m * (m + 1) * (p - q) * (p - q)
}

/// `exp 2πi ((m+1)p² - mq² - 1 + m(m+1)(p-q)²) / (4m(m+1))`.
pub fn minimal_twist(m: u32, k: KacLabel) -> C64 {
    let den = 4 * m as i64 * (m as i64 + 1);
    let num = minimal_twist_numerator(m, k).rem_euclid(den);
    C64::from_polar(1.0, 2.0 * PI * num as f64 / den as f64)
}

/// Exact conformal weight `h_{p,q}` as a rational.
pub fn minimal_weight(m: u32, k: KacLabel) -> BigRational {
    BigRational::new(
        minimal_twist_numerator(m, k).into(),
        (4 * m as i64 * (m as i64 + 1)).into(),
    )
}

/// `m(m+1) / (8 sin²(π/m) sin²(π/(m+1)))`.
pub fn minimal_mu_index(m: u32) -> f64 {
    let (a, b) = ((PI / m as f64).sin(), (PI / (m + 1) as f64).sin());
    (m * (m + 1)) as f64 / (8.0 * a * a * b * b)
}

/// Sign prescription for the candidate minimal-model S-matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignConvention {
    /// `(-1)^(1 + pq' + p'q)`.
    Base,
    /// `(-1)^(a·pq' + b·p'q + e·(p+q)(p'+q'))`.
    Family { a: u8, b: u8, e: u8 },
}

impl SignConvention {
    /// `Base` followed by the eight family members in lexicographic order.
    pub fn search_order() -> Vec<Self> {
        let mut out = vec![Self::Base];
        for a in 0..2 {
            for b in 0..2 {
                for e in 0..2 {
                    out.push(Self::Family { a, b, e });
                }
            }
        }
        out
    }

    fn sign(self, x: KacLabel, y: KacLabel) -> f64 {
        let (p, q, pp, qq) = (x.p, x.q, y.p, y.q);
        let exp = match self {
            Self::Base => 1 + p * qq + pp * q,
            Self::Family { a, b, e } => {
                a as u32 * p * qq + b as u32 * pp * q + e as u32 * (p + q) * (pp + qq)
            }
        };
        if exp % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// `√(8/(m(m+1))) · sign · sin(πpp'/m) · sin(πqq'/(m+1))` on canonical labels.
pub fn minimal_s_candidate(m: u32, labels: &[KacLabel], conv: SignConvention) -> DMatrix<f64> {
    let n = labels.len();
    let norm = (8.0 / (m * (m + 1)) as f64).sqrt();
    DMatrix::from_fn(n, n, |i, j| {
        let (x, y) = (labels[i], labels[j]);
        norm * conv.sign(x, y)
            * (PI * (x.p * y.p) as f64 / m as f64).sin()
            * (PI * (x.q * y.q) as f64 / (m + 1) as f64).sin()
    })
}

/// Cheap orthogonality / symmetry / positivity screen on a real candidate.
fn screen_real_s(s: &DMatrix<f64>, tol: f64) -> Result<(), String> {
    let n = s.nrows();
    let unit = (s * s.transpose() - DMatrix::<f64>::identity(n, n))
        .abs()
        .max();
    if unit > tol {
        return Err(format!("orthogonality residual {unit:.3e}"));
    }
    if (0..n).any(|j| s[(0, j)] <= 0.0) {
        return Err("vacuum row not positive".into());
    }
    Ok(())
}

/// Closed-form minimal-model fusion rules, evaluated on demand.
#[derive(Clone, Debug, PartialEq)]
pub struct MinimalRules {
    pub m: u32,
    pub kac: Vec<KacLabel>,
    labels: Vec<SectorLabel>,
}

impl MinimalRules {
    pub fn new(m: u32) -> Result<Self, ModelError> {
        check_index(m)?;
        let kac = minimal_labels(m);
        let labels = sector_labels(&kac);
        Ok(Self { m, kac, labels })
    }
}

impl FusionRules for MinimalRules {
    fn rank(&self) -> usize {
        self.kac.len()
    }

    fn coeff(&self, lambda: usize, mu: usize, nu: usize) -> u32 {
        minimal_fusion(self.m, self.kac[lambda], self.kac[mu])
            .expect("canonical labels are valid")
            .into_iter()
            .find(|(k, _)| *k == self.kac[nu])
            .map_or(0, |(_, c)| c)
    }

    fn conj(&self, lambda: usize) -> usize {
        lambda
    }

    fn label(&self, lambda: usize) -> &SectorLabel {
        &self.labels[lambda]
    }
}

pub fn minimal_name(m: u32) -> String {
    format!("Vir(m={m})")
}

/// Validated minimal-model data with the dense fusion ring.
pub fn minimal_data(m: u32) -> Result<ModularData, ModelError> {
    minimal_data_with_convention(m, &Tolerances::default()).map(|(md, _)| md)
}

pub fn minimal_data_with_convention(
    m: u32,
    tol: &Tolerances,
) -> Result<(ModularData, SignConvention), ModelError> {
    check_index(m)?;
    let ring = minimal_ring(m)?;
    let kac = minimal_labels(m);
    let mut diagnostics = Vec::new();
    for conv in SignConvention::search_order() {
        match try_minimal(m, &kac, ring.clone(), conv, tol, |md| {
            let v = verlinde(&md.s, tol.rounding).map_err(|e| e.to_string())?;
            if v.coeffs == md.ring.flat() {
                Ok(())
            } else {
                Err("Verlinde tensor differs from the fusion rules".into())
            }
        }) {
            Ok(md) => return Ok((md, conv)),
            Err(why) => diagnostics.push(format!("{conv:?}: {why}")),
        }
    }
    Err(ModelError::SignSearchExhausted {
        m,
        diagnostics: diagnostics.join("; "),
    })
}

/// Minimal-model data without the dense fusion tensor. Fusion coefficients
/// are evaluated from the closed form, and the Verlinde check is restricted
/// to the rows of the generators `(1,2)` and `(2,1)`.
pub fn minimal_reduced(m: u32) -> Result<(ModularData<MinimalRules>, SignConvention), ModelError> {
    let tol = Tolerances::default();
    let rules = MinimalRules::new(m)?;
    let kac = rules.kac.clone();
    let generators: Vec<usize> = [KacLabel::new(1, 2), KacLabel::new(2, 1)]
        .into_iter()
        .filter_map(|k| kac_index(m, &kac, k))
        .collect();
    let mut diagnostics = Vec::new();
    for conv in SignConvention::search_order() {
        match try_minimal(m, &kac, rules.clone(), conv, &tol, |md| {
            for &g in &generators {
                let (row, _) = verlinde_row(&md.s, g, tol.rounding).map_err(|e| e.to_string())?;
                let n = md.rank();
                for mu in 0..n {
                    let mut expect = vec![0u32; n];
                    for (c, mult) in
                        minimal_fusion(m, kac[g], kac[mu]).map_err(|e| e.to_string())?
                    {
                        expect[kac_index(m, &kac, c).unwrap()] = mult;
                    }
                    if row[mu * n..(mu + 1) * n] != expect[..] {
                        return Err(format!(
                            "Verlinde row of {} differs at μ={}",
                            kac[g], kac[mu]
                        ));
                    }
                }
            }
            Ok(())
        }) {
            Ok(md) => return Ok((md, conv)),
            Err(why) => diagnostics.push(format!("{conv:?}: {why}")),
        }
    }
    Err(ModelError::SignSearchExhausted {
        m,
        diagnostics: diagnostics.join("; "),
    })
}

fn try_minimal<F: FusionRules>(
    m: u32,
    kac: &[KacLabel],
    rules: F,
    conv: SignConvention,
    tol: &Tolerances,
    fusion_check: impl Fn(&ModularData<F>) -> Result<(), String>,
) -> Result<ModularData<F>, String> {
    let s_real = minimal_s_candidate(m, kac, conv);
    screen_real_s(&s_real, tol.relation)?;
    let s = s_real.map(|x| C64::new(x, 0.0));
    let omega = kac.iter().map(|&k| minimal_twist(m, k)).collect();
    let md = ModularData::from_twists(minimal_name(m), rules, s, omega, tol.relation)
        .map_err(|e| e.to_string())?;
    let report = check_sl2z(&md, tol.relation);
    if !report.pass {
        return Err(format!("{report:?}"));
    }
    let expect = minimal_mu_index(m);
    if ((md.w() - expect) / expect).abs() > tol.relation {
        return Err(format!("global dimension {} vs μ-index {}", md.w(), expect));
    }
    fusion_check(&md)?;
    Ok(md)
}

/// `c = 1 - 6/(m(m+1))`.
pub fn central_charge(m: u32) -> Result<BigRational, ModelError> {
    if m < 2 {
        return Err(ModelError::BadIndex { min: 2, got: m });
    }
    Ok(BigRational::one() - BigRational::new(6.into(), BigInt::from(m) * BigInt::from(m + 1)))
}

#[derive(Clone, Debug, PartialEq)]
pub enum CentralCharge {
    Exact(BigRational),
    Real(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum CentralChargeVerdict {
    /// `c = 1 - 6/(m(m+1))` with `m ≥ 3`.
    Discrete {
        m: u32,
    },
    /// `c ≥ 1`.
    Continuum,
    Rejected,
}

/// Membership in `{1 - 6/(m(m+1)) : m ≥ 3} ∪ [1, ∞)`.
pub fn allowed_central_charge(c: &CentralCharge) -> CentralChargeVerdict {
    match c {
        CentralCharge::Exact(c) => {
            if *c >= BigRational::one() {
                return CentralChargeVerdict::Continuum;
            }
            if !c.is_positive() {
                return CentralChargeVerdict::Rejected;
            }
            // m(m+1) = 6/(1-c)
            let prod = BigRational::from_integer(6.into()) / (BigRational::one() - c);
            if !prod.is_integer() {
                return CentralChargeVerdict::Rejected;
            }
            match prod.to_integer().to_u64().and_then(solve_pronic) {
                Some(m) if m >= 3 => CentralChargeVerdict::Discrete { m },
                _ => CentralChargeVerdict::Rejected,
            }
        }
        CentralCharge::Real(c) => {
            const TOL: f64 = 1e-9;
            if *c >= 1.0 - TOL {
                return if *c >= 1.0 {
                    CentralChargeVerdict::Continuum
                } else {
                    real_discrete(*c, TOL)
                };
            }
            if *c <= 0.0 {
                return CentralChargeVerdict::Rejected;
            }
            real_discrete(*c, TOL)
        }
    }
}

fn real_discrete(c: f64, tol: f64) -> CentralChargeVerdict {
    // c_m increases with m; find the closest m
    let approx = ((0.25 + 6.0 / (1.0 - c).max(1e-300)).sqrt() - 0.5).round();
    if !approx.is_finite() || approx > u32::MAX as f64 {
        return CentralChargeVerdict::Rejected;
    }
    for m in [
        approx as u32,
        approx as u32 + 1,
        (approx as u32).saturating_sub(1),
    ] {
        if m >= 3 && (1.0 - 6.0 / (m as f64 * (m as f64 + 1.0)) - c).abs() < tol {
            return CentralChargeVerdict::Discrete { m };
        }
    }
    CentralChargeVerdict::Rejected
}

fn solve_pronic(prod: u64) -> Option<u32> {
    let m = (((1 + 4 * prod) as f64).sqrt() as u64).saturating_sub(1) / 2;
    (m.saturating_sub(1)..=m + 1)
        .find(|&x| x * (x + 1) == prod)
        .map(|x| x as u32)
}

/// `c` as an `f64`, for display.
pub fn central_charge_f64(m: u32) -> f64 {
    let c = central_charge(m).unwrap_or_else(|_| BigRational::zero());
    c.numer().to_f64().unwrap() / c.denom().to_f64().unwrap()
}
