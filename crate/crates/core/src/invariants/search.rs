//! Depth-first enumeration of integral points of the commutant.
//!
//! A set of pivot entries is chosen on which the commutant basis restricts to
//! an invertible matrix; every supported entry is then an explicit linear form
//! in the pivot values. Pivot values are enumerated within the entry bound and
//! each entry is checked for integrality and range as soon as the last pivot
//! it depends on is fixed, with interval pruning for entries still open.

use nalgebra::DMatrix;

use super::commutant::Commutant;
use super::InvariantError;

const PIVOT_TOL: f64 = 1e-6;
const COEF_TOL: f64 = 1e-9;
const INT_TOL: f64 = 1e-6;

pub struct SearchProblem<'a> {
    pub commutant: &'a Commutant,
    /// Upper bound on each supported entry, aligned with `commutant.support`.
    pub bounds: Vec<u32>,
    /// Support entries in pivot priority order (first must be `(0, 0)`).
    pub priority: Vec<usize>,
    pub node_budget: u64,
}

#[derive(Debug)]
pub struct SearchOutcome {
    /// Integral solutions as values on the support.
    pub solutions: Vec<Vec<u32>>,
    pub nodes: u64,
}

struct Plan {
    /// Support indices of the pivots, in enumeration order.
    pivots: Vec<usize>,
    /// `coef[e][t]`: entry `e` as a linear form in pivot values.
    coef: Vec<Vec<f64>>,
    /// Deepest pivot each entry depends on (`None` if identically zero).
    level: Vec<Option<usize>>,
    /// Entries whose value is fixed once pivot `t` is set.
    closing: Vec<Vec<usize>>,
}

fn plan(c: &Commutant, priority: &[usize]) -> Plan {
    let b = &c.basis;
    let dim = b.ncols();
    let mut pivots: Vec<usize> = Vec::new();
    let mut ortho: Vec<Vec<f64>> = Vec::new();
    for &e in priority {
        if pivots.len() == dim {
            break;
        }
        let mut r: Vec<f64> = b.row(e).iter().copied().collect();
        let norm0 = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        for q in &ortho {
            let dot: f64 = r.iter().zip(q).map(|(a, b)| a * b).sum();
            r.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > PIVOT_TOL && norm > PIVOT_TOL * norm0 {
            r.iter_mut().for_each(|a| *a /= norm);
            ortho.push(r);
            pivots.push(e);
        }
    }
    let p = DMatrix::from_fn(dim, dim, |i, j| b[(pivots[i], j)]);
    let p_inv = p.try_inverse().expect("pivot rows are independent");
    let coef_m = b * p_inv;
    let ns = b.nrows();
    let mut coef = vec![vec![0.0; dim]; ns];
    let mut level = vec![None; ns];
    let mut closing = vec![Vec::new(); dim];
    for e in 0..ns {
        for t in 0..dim {
            let v = coef_m[(e, t)];
            if v.abs() > COEF_TOL {
                coef[e][t] = v;
                level[e] = Some(t);
            }
        }
        if let Some(t) = level[e] {
            closing[t].push(e);
        }
    }
    Plan {
        pivots,
        coef,
        level,
        closing,
    }
}

/// Enumerate integral solutions with pivot 0 fixed to 1.
pub fn search(problem: &SearchProblem<'_>) -> Result<SearchOutcome, InvariantError> {
    let c = problem.commutant;
    let dim = c.dimension();
    let ns = c.support.len();
    if dim == 0 {
        return Ok(SearchOutcome {
            solutions: vec![],
            nodes: 0,
        });
    }
    let plan = plan(c, &problem.priority);
    if plan.pivots[0] != problem.priority[0] {
        // Z00 is identically zero on the commutant
        return Ok(SearchOutcome {
            solutions: vec![],
            nodes: 0,
        });
    }
    let pivot_bound: Vec<f64> = plan
        .pivots
        .iter()
        .map(|&e| problem.bounds[e] as f64)
        .collect();
    // suffix extremes of Σ_{s ≥ t} coef[e][s] x_s over x_s ∈ [0, bound_s]
    let mut suffix_lo = vec![vec![0.0; dim + 1]; ns];
    let mut suffix_hi = vec![vec![0.0; dim + 1]; ns];
    for e in 0..ns {
        for t in (0..dim).rev() {
            let v = plan.coef[e][t] * pivot_bound[t];
            suffix_lo[e][t] = suffix_lo[e][t + 1] + v.min(0.0);
            suffix_hi[e][t] = suffix_hi[e][t + 1] + v.max(0.0);
        }
    }
    let open: Vec<usize> = (0..ns).filter(|&e| plan.level[e].is_some()).collect();
    let mut state = Dfs {
        plan: &plan,
        bounds: &problem.bounds,
        pivot_bound,
        suffix_lo,
        suffix_hi,
        open,
        partial: vec![0.0; ns],
        x: vec![0u32; dim],
        solutions: Vec::new(),
        nodes: 0,
        budget: problem.node_budget,
    };
    // pivot 0 is Z00 = 1
    state.assign(0, 1)?;
    Ok(SearchOutcome {
        solutions: state.solutions,
        nodes: state.nodes,
    })
}

struct Dfs<'a> {
    plan: &'a Plan,
    bounds: &'a [u32],
    pivot_bound: Vec<f64>,
    suffix_lo: Vec<Vec<f64>>,
    suffix_hi: Vec<Vec<f64>>,
    open: Vec<usize>,
    partial: Vec<f64>,
    x: Vec<u32>,
    solutions: Vec<Vec<u32>>,
    nodes: u64,
    budget: u64,
}

impl Dfs<'_> {
    fn assign(&mut self, t: usize, value: u32) -> Result<(), InvariantError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(InvariantError::BudgetExceeded { nodes: self.budget });
        }
        let dim = self.x.len();
        self.x[t] = value;
        let xv = value as f64;
        for &e in &self.open {
            self.partial[e] += self.plan.coef[e][t] * xv;
        }
        let ok = self.feasible(t);
        if ok {
            if t + 1 == dim {
                self.record();
            } else {
                let hi = (self.pivot_bound[t + 1]) as u32;
                for v in 0..=hi {
                    self.assign(t + 1, v)?;
                }
            }
        }
        for &e in &self.open {
            self.partial[e] -= self.plan.coef[e][t] * xv;
        }
        Ok(())
    }

    fn feasible(&self, t: usize) -> bool {
        for &e in &self.plan.closing[t] {
            let z = self.partial[e];
            let r = z.round();
            if (z - r).abs() > INT_TOL || r < 0.0 || r > self.bounds[e] as f64 {
                return false;
            }
        }
        for &e in &self.open {
            if self.plan.level[e].is_some_and(|l| l > t) {
                let lo = self.partial[e] + self.suffix_lo[e][t + 1];
                let hi = self.partial[e] + self.suffix_hi[e][t + 1];
                if hi < -INT_TOL || lo > self.bounds[e] as f64 + INT_TOL {
                    return false;
                }
            }
        }
        true
    }

    fn record(&mut self) {
        let sol = self
            .partial
            .iter()
            .zip(&self.plan.level)
            .map(|(z, l)| {
                if l.is_some() {
                    z.round().max(0.0) as u32
                } else {
                    0
                }
            })
            .collect();
        self.solutions.push(sol);
    }
}
