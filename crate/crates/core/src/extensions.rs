//! Extension arithmetic: `θ` candidates from vacuum rows, necessary locality
//! filters, μ-index bookkeeping, the `c < 1` classification pipeline, full
//! CFT graph pairs, boundary counts and the Jones index set.

use std::f64::consts::PI;

use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::fusion::FusionRules;
use crate::invariants::{
    ade::AdeName, enumerate_invariants, graphs_with_coxeter, label_minimal, label_su2, AdeGraph,
    AdeLabel, InvariantError, InvariantMatrix, SearchConfig, TypeFlag,
};
use crate::models::{central_charge, minimal_data, minimal_reduced, su2_data, ModelError};
use crate::modular::{ModularData, C64};

pub const TWIST_TOL: f64 = 1e-9;
pub const HOLOMORPHIC_TOL: f64 = 1e-9;
pub const AMBICHIRAL_TOL: f64 = 1e-6;
pub const JONES_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtensionError {
    #[error("index must be at least 1, got {0}")]
    BadIndex(f64),
    #[error("μ-index must be positive, got {0}")]
    BadMu(f64),
    #[error("dimensions must be positive")]
    NonPositive,
    #[error("Jones list needs n_max ≥ 3, got {0}")]
    BadJonesRange(u32),
    #[error("minimal model index must be at least 3, got {0}")]
    BadMinimalIndex(u32),
    #[error("vacuum-row search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("invariant is not type I and multiplicity free")]
    NotTypeOne,
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

impl ExtensionError {
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Self::BudgetExceeded(_) | Self::Invariant(InvariantError::BudgetExceeded { .. })
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaSector {
    pub id: usize,
    pub label: String,
    #[serde(rename = "n")]
    pub multiplicity: u32,
}

/// `θ = ⊕ n_λ λ` with `n_λ` the vacuum row of an invariant.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaCandidate {
    pub sectors: Vec<ThetaSector>,
    pub d_theta: f64,
    #[serde(skip)]
    pub source: Option<InvariantMatrix>,
}

impl ThetaCandidate {
    pub fn from_row<F: FusionRules>(row: &[u32], md: &ModularData<F>) -> Self {
        let sectors: Vec<ThetaSector> = row
            .iter()
            .enumerate()
            .filter(|(_, &n)| n > 0)
            .map(|(id, &n)| ThetaSector {
                id,
                label: md.label(id).name.clone(),
                multiplicity: n,
            })
            .collect();
        let d_theta = sectors
            .iter()
            .map(|s| s.multiplicity as f64 * md.dims.d[s.id])
            .sum();
        Self {
            sectors,
            d_theta,
            source: None,
        }
    }

    pub fn multiplicity(&self, id: usize) -> u32 {
        self.sectors
            .iter()
            .find(|s| s.id == id)
            .map_or(0, |s| s.multiplicity)
    }

    /// Sector ids with multiplicity.
    pub fn support(&self) -> Vec<(usize, u32)> {
        self.sectors
            .iter()
            .map(|s| (s.id, s.multiplicity))
            .collect()
    }

    pub fn ids(&self) -> Vec<usize> {
        self.sectors.iter().map(|s| s.id).collect()
    }
}

pub fn theta_of<F: FusionRules>(z: &InvariantMatrix, md: &ModularData<F>) -> ThetaCandidate {
    let mut t = ThetaCandidate::from_row(&z.z[0], md);
    t.source = Some(z.clone());
    t
}

/// Necessary conditions for `θ` to come from a local extension.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalityReport {
    pub vacuum_once: bool,
    pub self_conjugate: bool,
    pub trivial_twists: bool,
    /// Largest `|ω_λ - 1|` over the support.
    pub twist_residual: f64,
    /// `θ·θ ⊇ θ`.
    pub fusion_closure_consistency: bool,
    /// First `ν` with `Σ n_λ n_μ N_{λμ}^ν < n_ν`.
    pub closure_witness: Option<usize>,
    pub pass: bool,
}

pub fn check_local_theta<F: FusionRules>(
    theta: &ThetaCandidate,
    md: &ModularData<F>,
) -> LocalityReport {
    let vacuum_once = theta.multiplicity(0) == 1;
    let self_conjugate = theta
        .sectors
        .iter()
        .all(|s| theta.multiplicity(md.ring.conj(s.id)) == s.multiplicity);
    let twist_residual = theta
        .sectors
        .iter()
        .map(|s| (md.omega[s.id] - C64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max);
    let trivial_twists = twist_residual < TWIST_TOL;
    let supp = theta.support();
    let closure_witness = supp.iter().map(|&(nu, _)| nu).find(|&nu| {
        let total: u64 = supp
            .iter()
            .flat_map(|&(l, a)| supp.iter().map(move |&(m, b)| (l, a, m, b)))
            .map(|(l, a, m, b)| a as u64 * b as u64 * md.ring.coeff(l, m, nu) as u64)
            .sum();
        total < theta.multiplicity(nu) as u64
    });
    let fusion_closure_consistency = closure_witness.is_none();
    LocalityReport {
        vacuum_once,
        self_conjugate,
        trivial_twists,
        twist_residual,
        fusion_closure_consistency,
        closure_witness,
        pass: vacuum_once && self_conjugate && trivial_twists && fusion_closure_consistency,
    }
}

/// μ-index and subnet index.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MuLedger {
    pub mu: f64,
    pub index: f64,
}

impl MuLedger {
    pub fn holomorphic(&self) -> bool {
        (self.mu - 1.0).abs() < HOLOMORPHIC_TOL
    }
}

/// μ of a subnet of index `index` inside a net with μ-index `mu_ext`: `μ_ext · index²`.
pub fn subnet_mu(mu_ext: f64, index: f64) -> Result<f64, ExtensionError> {
    if index < 1.0 {
        return Err(ExtensionError::BadIndex(index));
    }
    if mu_ext <= 0.0 {
        return Err(ExtensionError::BadMu(mu_ext));
    }
    Ok(mu_ext * index * index)
}

/// Inverse of [`subnet_mu`]: μ of the extension, `μ_sub / index²`.
pub fn extension_mu(mu_sub: f64, index: f64) -> Result<MuLedger, ExtensionError> {
    if index < 1.0 {
        return Err(ExtensionError::BadIndex(index));
    }
    if mu_sub <= 0.0 {
        return Err(ExtensionError::BadMu(mu_sub));
    }
    Ok(MuLedger {
        mu: mu_sub / (index * index),
        index,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AmbichiralVerdict {
    pub residual: f64,
    pub pass: bool,
}

/// `|d₂ · index² - d₁| < 1e-6 · d₁`.
pub fn ambichiral_check(d1: f64, d2: f64, index: f64) -> Result<AmbichiralVerdict, ExtensionError> {
    if d1 <= 0.0 || d2 <= 0.0 || index <= 0.0 {
        return Err(ExtensionError::NonPositive);
    }
    let residual = (d2 * index * index - d1).abs();
    Ok(AmbichiralVerdict {
        residual,
        pass: residual < AMBICHIRAL_TOL * d1,
    })
}

/// Dimensions of the ambichiral sectors of a multiplicity-free type I
/// invariant: each block `B` of the nonzero pattern contributes
/// `Σ_{λ∈B} d_λ / d_θ`.
pub fn ambichiral_block_dims<F: FusionRules>(
    z: &InvariantMatrix,
    md: &ModularData<F>,
) -> Result<Vec<f64>, ExtensionError> {
    if z.type_flag != TypeFlag::TypeICandidate || z.z.iter().flatten().any(|&v| v > 1) {
        return Err(ExtensionError::NotTypeOne);
    }
    let n = z.rows();
    let d_theta: f64 = (0..n)
        .filter(|&l| z.z[0][l] > 0)
        .map(|l| md.dims.d[l])
        .sum();
    let mut seen = vec![false; n];
    let mut dims = Vec::new();
    for l in 0..n {
        if seen[l] || z.z[l][l] == 0 {
            continue;
        }
        let block: Vec<usize> = (0..n).filter(|&m| z.z[l][m] > 0).collect();
        block.iter().for_each(|&m| seen[m] = true);
        dims.push(block.iter().map(|&m| md.dims.d[m]).sum::<f64>() / d_theta);
    }
    Ok(dims)
}

/// One invariant with its `θ` and the locality verdicts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtensionEntry {
    pub label: Option<AdeLabel>,
    pub type_flag: TypeFlag,
    pub theta: ThetaCandidate,
    pub report: LocalityReport,
    /// `μ` of the would-be extension, `w / d_θ²`.
    pub extension_mu: f64,
}

/// A distinct `θ` passing every necessary condition, with the invariants producing it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LocalCandidate {
    pub theta: ThetaCandidate,
    pub from: Vec<Option<AdeLabel>>,
}

fn summarize(entries: &[ExtensionEntry]) -> Vec<LocalCandidate> {
    let mut out: Vec<LocalCandidate> = Vec::new();
    for e in entries.iter().filter(|e| e.report.pass) {
        match out
            .iter_mut()
            .find(|c| c.theta.support() == e.theta.support())
        {
            Some(c) => c.from.push(e.label.clone()),
            None => out.push(LocalCandidate {
                theta: e.theta.clone(),
                from: vec![e.label.clone()],
            }),
        }
    }
    for c in &mut out {
        c.from.sort();
    }
    out.sort_by_key(|a| a.theta.support());
    out
}

fn entry<F: FusionRules>(z: &InvariantMatrix, md: &ModularData<F>) -> ExtensionEntry {
    let theta = theta_of(z, md);
    let report = check_local_theta(&theta, md);
    ExtensionEntry {
        label: z.label.clone(),
        type_flag: z.type_flag,
        extension_mu: md.w() / (theta.d_theta * theta.d_theta),
        theta,
        report,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Su2Classification {
    pub k: u32,
    pub invariants: Vec<InvariantMatrix>,
    pub entries: Vec<ExtensionEntry>,
    pub local_candidates: Vec<LocalCandidate>,
}

/// Labeled `SU(2)_k` invariants, sorted lexicographically on `Z`.
pub fn su2_invariants(
    k: u32,
    cfg: &SearchConfig,
) -> Result<(ModularData, Vec<InvariantMatrix>), ExtensionError> {
    let md = su2_data(k)?;
    let mut inv = enumerate_invariants(&md, &md, cfg)?;
    for z in &mut inv {
        z.label = Some(AdeLabel::Single(label_su2(&z.z, k)?));
    }
    Ok((md, inv))
}

pub fn classify_su2_extensions(
    k: u32,
    cfg: &SearchConfig,
) -> Result<Su2Classification, ExtensionError> {
    let (md, invariants) = su2_invariants(k, cfg)?;
    let entries: Vec<ExtensionEntry> = invariants.iter().map(|z| entry(z, &md)).collect();
    let local_candidates = summarize(&entries);
    Ok(Su2Classification {
        k,
        invariants,
        entries,
        local_candidates,
    })
}

/// Labeled minimal-model invariants, sorted lexicographically on `Z`.
pub fn minimal_invariants(
    m: u32,
    cfg: &SearchConfig,
) -> Result<(ModularData, Vec<InvariantMatrix>), ExtensionError> {
    let md = minimal_data(m)?;
    let mut inv = enumerate_invariants(&md, &md, cfg)?;
    for z in &mut inv {
        let (a, b) = label_minimal(&z.z, m)?;
        z.label = Some(AdeLabel::Pair(a, b));
    }
    Ok((md, inv))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassifyMode {
    /// Enumerate every modular invariant.
    Full,
    /// Enumerate vacuum rows only, on data without a dense fusion tensor.
    Reduced,
}

/// The four exceptional central charges `21/22, 25/26, 144/145, 154/155`.
pub fn exceptional_central_charges() -> Vec<BigRational> {
    [(21, 22), (25, 26), (144, 145), (154, 155)]
        .into_iter()
        .map(|(a, b): (i64, i64)| BigRational::new(a.into(), b.into()))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VirClassification {
    pub m: u32,
    pub c: String,
    pub exceptional: bool,
    pub mode: ClassifyMode,
    pub entries: Vec<ExtensionEntry>,
    pub local_candidates: Vec<LocalCandidate>,
    /// Reduced mode only: vacuum rows visited.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vacuum_rows_searched: Option<u64>,
}

pub fn classify_c_lt_1(
    m: u32,
    mode: ClassifyMode,
    cfg: &SearchConfig,
) -> Result<VirClassification, ExtensionError> {
    if m < 3 {
        return Err(ExtensionError::BadMinimalIndex(m));
    }
    let c = central_charge(m)?;
    let exceptional = exceptional_central_charges().contains(&c);
    let c_str = format!("{}/{}", c.numer(), c.denom());
    match mode {
        ClassifyMode::Full => {
            let (md, inv) = minimal_invariants(m, cfg)?;
            let entries: Vec<ExtensionEntry> = inv.iter().map(|z| entry(z, &md)).collect();
            let local_candidates = summarize(&entries);
            Ok(VirClassification {
                m,
                c: c_str,
                exceptional,
                mode,
                entries,
                local_candidates,
                vacuum_rows_searched: None,
            })
        }
        ClassifyMode::Reduced => {
            let (md, _) = minimal_reduced(m)?;
            let (rows, visited) = vacuum_row_candidates(&md, cfg.node_budget)?;
            let entries: Vec<ExtensionEntry> = rows
                .iter()
                .map(|row| {
                    let theta = ThetaCandidate::from_row(row, &md);
                    let report = check_local_theta(&theta, &md);
                    ExtensionEntry {
                        label: None,
                        type_flag: TypeFlag::Unknown,
                        extension_mu: md.w() / (theta.d_theta * theta.d_theta),
                        theta,
                        report,
                    }
                })
                .collect();
            let local_candidates = summarize(&entries);
            Ok(VirClassification {
                m,
                c: c_str,
                exceptional,
                mode,
                entries,
                local_candidates,
                vacuum_rows_searched: Some(visited),
            })
        }
    }
}

/// Vacuum rows `v` with `v₀ = 1`, support on twist-one sectors,
/// `v_λ ≤ d_λ`, and `(S v)_μ ≥ S₀₀ v_μ` for all `μ` (the `(0, μ)` entry of
/// `SZ = ZS` with `Z ≥ 0`). Returns the rows, sorted, and the count visited.
pub fn vacuum_row_candidates<F: FusionRules>(
    md: &ModularData<F>,
    budget: u64,
) -> Result<(Vec<Vec<u32>>, u64), ExtensionError> {
    let n = md.rank();
    let free: Vec<usize> = (1..n)
        .filter(|&l| (md.omega[l] - C64::new(1.0, 0.0)).norm() < TWIST_TOL)
        .collect();
    let bound: Vec<u32> = free
        .iter()
        .map(|&l| (md.dims.d[l] + 1e-6).floor() as u32)
        .collect();
    let s00 = md.s[(0, 0)].re;
    let mut out = Vec::new();
    let mut visited = 0u64;
    let mut v = vec![0u32; free.len()];
    loop {
        visited += 1;
        if visited > budget {
            return Err(ExtensionError::BudgetExceeded(budget));
        }
        let mut row = vec![0u32; n];
        row[0] = 1;
        for (i, &l) in free.iter().enumerate() {
            row[l] = v[i];
        }
        let positive = (0..n).all(|mu| {
            let sv: f64 = (0..n)
                .filter(|&l| row[l] > 0)
                .map(|l| row[l] as f64 * md.s[(l, mu)].re)
                .sum();
            sv >= s00 * row[mu] as f64 - 1e-9
        });
        if positive {
            out.push(row);
        }
        // odometer increment
        let mut i = 0;
        while i < v.len() && v[i] == bound[i] {
            v[i] = 0;
            i += 1;
        }
        if i == v.len() {
            break;
        }
        v[i] += 1;
    }
    out.sort();
    Ok((out, visited))
}

/// Graph pairs `(G, G')` of the c<1 full-CFT family, listed for indices up to `h_max`; sorted.
pub fn ade_pair_family(h_max: usize) -> Vec<(AdeName, AdeName)> {
    let d = |n: usize| if n == 3 { AdeName::A(3) } else { AdeName::D(n) };
    let mut out = Vec::new();
    for n in 2..=h_max {
        out.push((AdeName::A(n - 1), AdeName::A(n)));
    }
    for n in 1..=h_max / 4 + 1 {
        out.push((d(2 * n + 1), AdeName::A(4 * n)));
        out.push((AdeName::A(4 * n), d(2 * n + 2)));
        out.push((d(2 * n + 2), AdeName::A(4 * n + 2)));
        out.push((AdeName::A(4 * n + 2), d(2 * n + 3)));
    }
    out.extend([
        (AdeName::A(10), AdeName::E6),
        (AdeName::E6, AdeName::A(12)),
        (AdeName::A(16), AdeName::E7),
        (AdeName::E7, AdeName::A(18)),
        (AdeName::A(28), AdeName::E8),
        (AdeName::E8, AdeName::A(30)),
    ]);
    out.sort();
    out.dedup();
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FullCftReport {
    pub m: u32,
    pub pairs: Vec<(AdeName, AdeName)>,
    /// Every pair lies in [`ade_pair_family`].
    pub within_family: bool,
}

pub fn full_cft_pairs(m: u32, cfg: &SearchConfig) -> Result<FullCftReport, ExtensionError> {
    let (_, inv) = minimal_invariants(m, cfg)?;
    let mut pairs: Vec<(AdeName, AdeName)> = inv
        .iter()
        .filter_map(|z| match z.label {
            Some(AdeLabel::Pair(a, b)) => Some((a, b)),
            _ => None,
        })
        .collect();
    pairs.sort();
    pairs.dedup();
    let family = ade_pair_family(m as usize + 1);
    let within_family = pairs.iter().all(|p| family.contains(p));
    Ok(FullCftReport {
        m,
        pairs,
        within_family,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryTerm {
    pub g1: AdeName,
    pub orbits1: usize,
    pub g2: AdeName,
    pub orbits2: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryReport {
    pub m: u32,
    pub terms: Vec<BoundaryTerm>,
    pub count: usize,
}

/// `Σ orbits(G₁)·orbits(G₂)` over the given inventories.
pub fn boundary_count_from(m: u32, h_m: &[AdeGraph], h_m1: &[AdeGraph]) -> BoundaryReport {
    let terms: Vec<BoundaryTerm> = h_m
        .iter()
        .flat_map(|g1| {
            h_m1.iter().map(move |g2| BoundaryTerm {
                g1: g1.name,
                orbits1: g1.vertex_orbits,
                g2: g2.name,
                orbits2: g2.vertex_orbits,
            })
        })
        .collect();
    let count = terms.iter().map(|t| t.orbits1 * t.orbits2).sum();
    BoundaryReport { m, terms, count }
}

/// Boundary quadruple count over graphs with Coxeter numbers `m` and `m + 1`.
pub fn boundary_count(m: u32) -> Result<BoundaryReport, ExtensionError> {
    if m < 3 {
        return Err(ExtensionError::BadMinimalIndex(m));
    }
    Ok(boundary_count_from(
        m,
        &graphs_with_coxeter(m)?,
        &graphs_with_coxeter(m + 1)?,
    ))
}

/// `4cos²(π/n)` for `3 ≤ n ≤ n_max`, increasing.
pub fn jones_index_values(n_max: u32) -> Result<Vec<f64>, ExtensionError> {
    if n_max < 3 {
        return Err(ExtensionError::BadJonesRange(n_max));
    }
    Ok((3..=n_max).map(jones_value).collect())
}

pub fn jones_value(n: u32) -> f64 {
    let c = (PI / n as f64).cos();
    4.0 * c * c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum IndexVerdict {
    Discrete { n: u32 },
    Continuum,
    Rejected,
}

/// Membership in `{4cos²(π/n) : n ≥ 3} ∪ [4, ∞)`.
pub fn is_admissible_index(x: f64) -> IndexVerdict {
    if !x.is_finite() && x > 0.0 {
        return IndexVerdict::Continuum;
    }
    if x >= 4.0 {
        return IndexVerdict::Continuum;
    }
    if x.is_nan() || x < 1.0 - JONES_TOL {
        return IndexVerdict::Rejected;
    }
    // 4cos²(π/n) = x  ⟺  n = π / acos(√x / 2)
    let n_real = PI / ((x.max(0.0)).sqrt() / 2.0).min(1.0).acos();
    let lo = (n_real.floor() as u32).max(4) - 1;
    // spacing near 4 falls below JONES_TOL, so take the nearest value first
    let n = (lo..=lo + 2)
        .min_by(|&a, &b| {
            (jones_value(a) - x)
                .abs()
                .total_cmp(&(jones_value(b) - x).abs())
        })
        .expect("nonempty range");
    if (jones_value(n) - x).abs() < JONES_TOL {
        IndexVerdict::Discrete { n }
    } else {
        IndexVerdict::Rejected
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> SearchConfig {
        SearchConfig::default()
    }

    #[test]
    fn su2_level_ten() {
        let cl = classify_su2_extensions(10, &cfg()).unwrap();
        let md = su2_data(10).unwrap();
        let e6 = cl
            .entries
            .iter()
            .find(|e| e.label == Some(AdeLabel::Single(AdeName::E6)))
            .unwrap();
        assert_eq!(e6.theta.support(), vec![(0, 1), (6, 1)]);
        assert!((e6.theta.d_theta - (1.0 + md.dims.d[6])).abs() < 1e-12);
        assert!(e6.report.pass);
        let thetas: Vec<Vec<usize>> = cl.local_candidates.iter().map(|c| c.theta.ids()).collect();
        assert_eq!(thetas, vec![vec![0], vec![0, 6]]);
        let d7 = cl
            .entries
            .iter()
            .find(|e| e.label == Some(AdeLabel::Single(AdeName::D(7))))
            .unwrap();
        assert_eq!(d7.type_flag, TypeFlag::TypeII);
        assert!(e6.extension_mu >= 1.0 - 1e-9);

        let bad = ThetaCandidate::from_row(&[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0], &md);
        let r = check_local_theta(&bad, &md);
        assert!(!r.trivial_twists);
        let trivial = ThetaCandidate::from_row(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0], &md);
        assert!(check_local_theta(&trivial, &md).pass);
    }

    #[test]
    fn su2_theta_list() {
        let expect: [(u32, &[usize]); 4] = [
            (4, &[0, 4]),
            (8, &[0, 8]),
            (16, &[0, 16]),
            (28, &[0, 10, 18, 28]),
        ];
        for (k, ids) in expect {
            let cl = classify_su2_extensions(k, &cfg()).unwrap();
            assert!(
                cl.local_candidates.iter().any(|c| c.theta.ids() == ids),
                "k={k}"
            );
            for c in &cl.local_candidates {
                assert_eq!(c.theta.multiplicity(0), 1);
            }
        }
        // the E7 vacuum row coincides with the D10 one
        let cl = classify_su2_extensions(16, &cfg()).unwrap();
        let c = cl
            .local_candidates
            .iter()
            .find(|c| c.theta.ids() == [0, 16])
            .unwrap();
        assert_eq!(
            c.from,
            vec![
                Some(AdeLabel::Single(AdeName::D(10))),
                Some(AdeLabel::Single(AdeName::E7))
            ]
        );
    }

    #[test]
    fn e6_ambichiral() {
        let cl = classify_su2_extensions(10, &cfg()).unwrap();
        let md = su2_data(10).unwrap();
        let e6 = cl
            .invariants
            .iter()
            .find(|z| z.label == Some(AdeLabel::Single(AdeName::E6)))
            .unwrap();
        let dims = ambichiral_block_dims(e6, &md).unwrap();
        assert_eq!(dims.len(), 3);
        let d2: f64 = dims.iter().map(|d| d * d).sum();
        let index = 1.0 + md.dims.d[6];
        assert!(ambichiral_check(md.w(), d2, index).unwrap().pass);
        assert!(!ambichiral_check(md.w(), d2 * 1.01, index).unwrap().pass);
        assert!(ambichiral_check(5.0, 5.0, 1.0).unwrap().pass);
        let d7 = cl
            .invariants
            .iter()
            .find(|z| z.label == Some(AdeLabel::Single(AdeName::D(7))))
            .unwrap();
        assert_eq!(
            ambichiral_block_dims(d7, &md),
            Err(ExtensionError::NotTypeOne)
        );
    }

    #[test]
    fn mu_bookkeeping() {
        let w = 7.5;
        // doubled theory w², Longo-Rehren index w
        let ext = extension_mu(w * w, w).unwrap();
        assert!(ext.holomorphic());
        assert_eq!(subnet_mu(3.0, 1.0).unwrap(), 3.0);
        let (a, b) = (1.7, 2.3);
        let twice = subnet_mu(subnet_mu(2.0, a).unwrap(), b).unwrap();
        assert!((twice - subnet_mu(2.0, a * b).unwrap()).abs() < 1e-12);
        assert!(subnet_mu(1.0, 0.5).is_err());
    }

    #[test]
    fn vir_small() {
        let cl = classify_c_lt_1(3, ClassifyMode::Full, &cfg()).unwrap();
        assert_eq!(cl.local_candidates.len(), 1);
        assert_eq!(cl.local_candidates[0].theta.ids(), vec![0]);
        assert!(!cl.exceptional);
        let cl = classify_c_lt_1(11, ClassifyMode::Full, &cfg()).unwrap();
        assert!(cl.exceptional);
        assert_eq!(cl.c, "21/22");
        let names: Vec<Vec<String>> = cl
            .local_candidates
            .iter()
            .map(|c| c.theta.sectors.iter().map(|s| s.label.clone()).collect())
            .collect();
        assert!(names.contains(&vec!["λ_(1,1)".to_string(), "λ_(1,7)".to_string()]));
        let red = classify_c_lt_1(11, ClassifyMode::Reduced, &cfg()).unwrap();
        let full_ids: Vec<Vec<usize>> = cl.local_candidates.iter().map(|c| c.theta.ids()).collect();
        let red_ids: Vec<Vec<usize>> = red.local_candidates.iter().map(|c| c.theta.ids()).collect();
        assert_eq!(full_ids, red_ids);
    }

    #[test]
    fn full_cft() {
        let r = full_cft_pairs(3, &cfg()).unwrap();
        assert_eq!(r.pairs, vec![(AdeName::A(2), AdeName::A(3))]);
        for m in 3..=12 {
            assert!(full_cft_pairs(m, &cfg()).unwrap().within_family, "m={m}");
        }
        let r = full_cft_pairs(11, &cfg()).unwrap();
        assert!(r.pairs.contains(&(AdeName::A(10), AdeName::E6)));
    }

    #[test]
    fn boundary() {
        assert_eq!(boundary_count(3).unwrap().count, 2);
        assert_eq!(boundary_count(11).unwrap().count, 5 * (6 + 6 + 4));
        assert!(boundary_count(29)
            .unwrap()
            .terms
            .iter()
            .any(|t| t.g2 == AdeName::E8));
        let h11 = graphs_with_coxeter(11).unwrap();
        let h12 = graphs_with_coxeter(12).unwrap();
        let full = boundary_count_from(11, &h11, &h12).count;
        for skip in 0..h12.len() {
            let fewer: Vec<AdeGraph> = h12
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, g)| g.clone())
                .collect();
            assert!(boundary_count_from(11, &h11, &fewer).count < full);
        }
    }

    #[test]
    fn jones() {
        let v = jones_index_values(300).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-12);
        assert!((v[1] - 2.0).abs() < 1e-12);
        assert!((v[2] - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        let last = *v.last().unwrap();
        assert!(last > 4.0 - 1e-3 && last < 4.0);
        assert_eq!(is_admissible_index(3.5), IndexVerdict::Rejected);
        assert_eq!(is_admissible_index(4.2), IndexVerdict::Continuum);
        assert_eq!(is_admissible_index(3.0), IndexVerdict::Discrete { n: 6 });
        assert_eq!(is_admissible_index(2.0), IndexVerdict::Discrete { n: 4 });
        assert_eq!(is_admissible_index(0.5), IndexVerdict::Rejected);
        assert!(jones_index_values(2).is_err());
    }
}
