//! Modular invariants: nonnegative integer `Z` with `Z₀₀ = 1`, `S_L Z = Z S_R`
//! and `T_L Z = Z T_R`, plus ADE labels for `SU(2)_k` and minimal models.

pub mod ade;
pub mod commutant;
pub mod search;

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::fusion::FusionRules;
use crate::models::{kac_index, minimal_labels, KacLabel};
use crate::modular::ModularData;

pub use ade::{ade_graph, ade_graph_by_name, graphs_with_coxeter, AdeGraph, AdeName};
pub use commutant::{commutant, Commutant, NULLSPACE_TOL};

/// Post-hoc residual bound for returned invariants.
pub const RESIDUAL_TOL: f64 = 1e-7;
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InvariantError {
    #[error("search budget of {nodes} nodes exhausted")]
    BudgetExceeded { nodes: u64 },
    #[error("singular value {0:.3e} lies in the borderline band; review the nullspace tolerance")]
    BorderlineSingularValue(f64),
    #[error("unknown ADE graph name {0:?}")]
    BadGraphName(String),
    #[error("spectral data: {0}")]
    Spectral(String),
    #[error("no ADE label matches: {0}")]
    NoLabel(String),
    #[error("ambiguous ADE label: {0}")]
    AmbiguousLabel(String),
    #[error("matrix shape {rows}x{cols} does not fit model of rank {rank}")]
    Shape {
        rows: usize,
        cols: usize,
        rank: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeFlag {
    /// The nonzero pattern is an equivalence relation, as for block-diagonal sums `Σ|χ_block|²`.
    #[serde(rename = "type_i_candidate")]
    TypeICandidate,
    #[serde(rename = "type_ii")]
    TypeII,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum AdeLabel {
    Single(AdeName),
    Pair(AdeName, AdeName),
}

impl fmt::Display for AdeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Single(g) => write!(f, "{g}"),
            Self::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

impl Serialize for AdeLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Residuals {
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "T")]
    pub t: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantMatrix {
    #[serde(rename = "Z")]
    pub z: Vec<Vec<u32>>,
    pub left: String,
    pub right: String,
    pub label: Option<AdeLabel>,
    pub type_flag: TypeFlag,
    pub residuals: Residuals,
}

impl InvariantMatrix {
    pub fn rows(&self) -> usize {
        self.z.len()
    }

    pub fn cols(&self) -> usize {
        self.z.first().map_or(0, Vec::len)
    }

    pub fn dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows(), self.cols(), |i, j| self.z[i][j] as f64)
    }

    pub fn is_identity(&self) -> bool {
        self.rows() == self.cols()
            && self
                .z
                .iter()
                .enumerate()
                .all(|(i, r)| r.iter().enumerate().all(|(j, &v)| v == u32::from(i == j)))
    }

    pub fn transpose(&self) -> Vec<Vec<u32>> {
        (0..self.cols())
            .map(|j| (0..self.rows()).map(|i| self.z[i][j]).collect())
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub node_budget: u64,
    /// Multiplier on the entry bound `d_λ d_μ`.
    pub bound_scale: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            bound_scale: 1.0,
        }
    }
}

/// Entry bound `⌊scale · d_λ d_μ + 1e-6⌋`.
pub fn entry_bound(d_left: f64, d_right: f64, scale: f64) -> u32 {
    (scale * d_left * d_right + 1e-6).floor() as u32
}

/// All modular invariants between two data, sorted lexicographically on the
/// flattened matrix. Labels are left unset.
pub fn enumerate_invariants<L: FusionRules, R: FusionRules>(
    left: &ModularData<L>,
    right: &ModularData<R>,
    config: &SearchConfig,
) -> Result<Vec<InvariantMatrix>, InvariantError> {
    let com = commutant(left, right)?;
    let (dl, dr) = (&left.dims.d, &right.dims.d);
    let bounds: Vec<u32> = com
        .support
        .iter()
        .map(|&(i, j)| entry_bound(dl[i], dr[j], config.bound_scale))
        .collect();
    let Some(vac) = com.support.iter().position(|&e| e == (0, 0)) else {
        return Ok(vec![]);
    };
    let mut rest: Vec<usize> = (0..com.support.len()).filter(|&e| e != vac).collect();
    // decreasing S_{0λ} S_{0μ}, ties by position
    rest.sort_by(|&a, &b| {
        let w = |e: usize| dl[com.support[e].0] * dr[com.support[e].1];
        w(b).total_cmp(&w(a)).then(a.cmp(&b))
    });
    let mut priority = vec![vac];
    priority.extend(rest);
    let outcome = search::search(&search::SearchProblem {
        commutant: &com,
        bounds,
        priority,
        node_budget: config.node_budget,
    })?;
    let same_model = left.name == right.name;
    let mut out: Vec<InvariantMatrix> = Vec::new();
    for sol in outcome.solutions {
        let mut z = vec![vec![0u32; com.n_right]; com.n_left];
        for (e, &(i, j)) in com.support.iter().enumerate() {
            z[i][j] = sol[e];
        }
        let dense = DMatrix::from_fn(com.n_left, com.n_right, |i, j| z[i][j] as f64);
        let residuals = Residuals {
            s: commutant::s_residual(&left.s, &right.s, &dense),
            t: commutant::t_residual(&left.t, &right.t, &dense),
        };
        if z[0][0] != 1 || residuals.s >= RESIDUAL_TOL || residuals.t >= RESIDUAL_TOL {
            continue;
        }
        let type_flag = if same_model {
            type_flag(&z)
        } else {
            TypeFlag::Unknown
        };
        out.push(InvariantMatrix {
            z,
            left: left.name.clone(),
            right: right.name.clone(),
            label: None,
            type_flag,
            residuals,
        });
    }
    out.sort_by(|a, b| a.z.cmp(&b.z));
    out.dedup_by(|a, b| a.z == b.z);
    Ok(out)
}

/// Type I candidate iff the relation `Z_{λμ} ≠ 0` is reflexive on its
/// support, symmetric and transitive.
pub fn type_flag(z: &[Vec<u32>]) -> TypeFlag {
    let n = z.len();
    if z.iter().any(|r| r.len() != n) {
        return TypeFlag::Unknown;
    }
    let nz = |i: usize, j: usize| z[i][j] != 0;
    for i in 0..n {
        for j in 0..n {
            if nz(i, j) && (!nz(i, i) || !nz(j, j) || !nz(j, i)) {
                return TypeFlag::TypeII;
            }
            for k in 0..n {
                if nz(i, j) && nz(j, k) && !nz(i, k) {
                    return TypeFlag::TypeII;
                }
            }
        }
    }
    TypeFlag::TypeICandidate
}

fn unique_match<T: Clone>(found: Vec<T>, what: impl Fn() -> String) -> Result<T, InvariantError> {
    match found.len() {
        0 => Err(InvariantError::NoLabel(what())),
        1 => Ok(found[0].clone()),
        _ => Err(InvariantError::AmbiguousLabel(what())),
    }
}

/// Label an `SU(2)_k` invariant by the graph with `h = k + 2` whose exponents
/// equal `{l + 1 with multiplicity Z_ll}`.
pub fn label_su2(z: &[Vec<u32>], k: u32) -> Result<AdeName, InvariantError> {
    let n = (k + 1) as usize;
    if z.len() != n || z.iter().any(|r| r.len() != n) {
        return Err(InvariantError::Shape {
            rows: z.len(),
            cols: z.first().map_or(0, Vec::len),
            rank: n,
        });
    }
    let mut diag: Vec<u32> = (0..n)
        .flat_map(|l| std::iter::repeat_n(l as u32 + 1, z[l][l] as usize))
        .collect();
    diag.sort_unstable();
    let found: Vec<AdeName> = graphs_with_coxeter(k + 2)?
        .into_iter()
        .filter(|g| g.exponents == diag)
        .map(|g| g.name)
        .collect();
    unique_match(found, || format!("SU(2)_{k} diagonal exponents {diag:?}"))
}

/// Label a minimal-model invariant by the graph pair `(G₁, G₂)` with
/// `h(G₁) = m`, `h(G₂) = m + 1` whose exponent product matches the diagonal
/// unfolded over both Kac representatives.
pub fn label_minimal(z: &[Vec<u32>], m: u32) -> Result<(AdeName, AdeName), InvariantError> {
    let kac = minimal_labels(m);
    let n = kac.len();
    if z.len() != n || z.iter().any(|r| r.len() != n) {
        return Err(InvariantError::Shape {
            rows: z.len(),
            cols: z.first().map_or(0, Vec::len),
            rank: n,
        });
    }
    let mut diag: BTreeMap<(u32, u32), u32> = BTreeMap::new();
    for p in 1..m {
        for q in 1..=m {
            let i = kac_index(m, &kac, KacLabel::new(p, q)).expect("valid Kac label");
            if z[i][i] > 0 {
                *diag.entry((p, q)).or_default() += z[i][i];
            }
        }
    }
    let g1s = graphs_with_coxeter(m)?;
    let g2s = graphs_with_coxeter(m + 1)?;
    let mut found = Vec::new();
    for g1 in &g1s {
        for g2 in &g2s {
            let mut prod: BTreeMap<(u32, u32), u32> = BTreeMap::new();
            for &a in &g1.exponents {
                for &b in &g2.exponents {
                    *prod.entry((a, b)).or_default() += 1;
                }
            }
            if prod == diag {
                found.push((g1.name, g2.name));
            }
        }
    }
    unique_match(found, || {
        format!("minimal m={m} unfolded diagonal {diag:?}")
    })
}
