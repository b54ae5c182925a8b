//! ADE Dynkin diagrams with spectral data computed from the adjacency matrix.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Serialize, Serializer};

use super::InvariantError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeName {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl fmt::Display for AdeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::A(n) => write!(f, "A{n}"),
            Self::D(n) => write!(f, "D{n}"),
            Self::E6 => f.write_str("E6"),
            Self::E7 => f.write_str("E7"),
            Self::E8 => f.write_str("E8"),
        }
    }
}

impl Serialize for AdeName {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for AdeName {
    type Err = InvariantError;

    /// Accepts `A3`, `A_3`, `D10`, `E6`, ...
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || InvariantError::BadGraphName(s.to_string());
        let mut chars = s.trim().chars();
        let family = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let rest: String = chars.collect();
        let n: usize = rest.trim_start_matches('_').parse().map_err(|_| bad())?;
        match (family, n) {
            ('A', n) if n >= 1 => Ok(Self::A(n)),
            // D3 coincides with A3
            ('D', 3) => Ok(Self::A(3)),
            ('D', n) if n >= 4 => Ok(Self::D(n)),
            ('E', 6) => Ok(Self::E6),
            ('E', 7) => Ok(Self::E7),
            ('E', 8) => Ok(Self::E8),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdeGraph {
    pub name: AdeName,
    pub adjacency: Vec<Vec<u8>>,
    pub coxeter: u32,
    /// Sorted, with multiplicity.
    pub exponents: Vec<u32>,
    pub vertex_orbits: usize,
}

fn edges(name: AdeName) -> (usize, Vec<(usize, usize)>) {
    let path = |n: usize| {
        (0..n.saturating_sub(1))
            .map(|i| (i, i + 1))
            .collect::<Vec<_>>()
    };
    match name {
        AdeName::A(n) => (n, path(n)),
        AdeName::D(n) => {
            // path 0..n-2 with the fork n-1 attached to n-3
            let mut e = path(n - 1);
            e.push((n - 3, n - 1));
            (n, e)
        }
        AdeName::E6 | AdeName::E7 | AdeName::E8 => {
            let n = match name {
                AdeName::E6 => 6,
                AdeName::E7 => 7,
                _ => 8,
            };
            // path 0..n-2, branch vertex n-1 attached to vertex 2
            let mut e = path(n - 1);
            e.push((2, n - 1));
            (n, e)
        }
    }
}

fn adjacency(name: AdeName) -> Vec<Vec<u8>> {
    let (n, e) = edges(name);
    let mut adj = vec![vec![0u8; n]; n];
    for (a, b) in e {
        adj[a][b] = 1;
        adj[b][a] = 1;
    }
    adj
}

const SPECTRAL_TOL: f64 = 1e-6;

pub fn ade_graph(name: AdeName) -> Result<AdeGraph, InvariantError> {
    let adj = adjacency(name);
    let n = adj.len();
    let m = DMatrix::from_fn(n, n, |i, j| adj[i][j] as f64);
    let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(|a, b| b.total_cmp(a));
    let lmax = eig[0];
    let h_real = PI / (lmax / 2.0).clamp(-1.0, 1.0).acos();
    let coxeter = h_real.round();
    if (h_real - coxeter).abs() > SPECTRAL_TOL {
        return Err(InvariantError::Spectral(format!(
            "{name}: Coxeter number {h_real} not integral"
        )));
    }
    let mut exponents = Vec::with_capacity(n);
    for &l in &eig {
        let a = (l / 2.0).clamp(-1.0, 1.0).acos() * coxeter / PI;
        if (a - a.round()).abs() > SPECTRAL_TOL {
            return Err(InvariantError::Spectral(format!(
                "{name}: exponent {a} not integral"
            )));
        }
        exponents.push(a.round() as u32);
    }
    exponents.sort_unstable();
    let vertex_orbits = orbit_count(&adj);
    Ok(AdeGraph {
        name,
        adjacency: adj,
        coxeter: coxeter as u32,
        exponents,
        vertex_orbits,
    })
}

pub fn ade_graph_by_name(name: &str) -> Result<AdeGraph, InvariantError> {
    ade_graph(name.parse()?)
}

/// All automorphisms of a simple graph, by backtracking over vertex images.
pub fn automorphisms(adj: &[Vec<u8>]) -> Vec<Vec<usize>> {
    let n = adj.len();
    let deg: Vec<usize> = adj
        .iter()
        .map(|r| r.iter().map(|&x| x as usize).sum())
        .collect();
    let mut out = Vec::new();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        v: usize,
        adj: &[Vec<u8>],
        deg: &[usize],
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = adj.len();
        if v == n {
            out.push(image.clone());
            return;
        }
        for w in 0..n {
            if used[w] || deg[w] != deg[v] {
                continue;
            }
            if (0..v).all(|u| adj[u][v] == adj[image[u]][w]) {
                image[v] = w;
                used[w] = true;
                go(v + 1, adj, deg, image, used, out);
                used[w] = false;
            }
        }
        image[v] = usize::MAX;
    }
    go(0, adj, &deg, &mut image, &mut used, &mut out);
    out
}

/// Number of vertex orbits under the automorphism group.
pub fn orbit_count(adj: &[Vec<u8>]) -> usize {
    let n = adj.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for sigma in automorphisms(adj) {
        for (v, &w) in sigma.iter().enumerate() {
            let (a, b) = (find(&mut parent, v), find(&mut parent, w));
            if a != b {
                parent[a] = b;
            }
        }
    }
    (0..n).filter(|&v| find(&mut parent, v) == v).count()
}

/// Every ADE graph with Coxeter number `h`, filtered from a candidate pool by
/// the computed Coxeter number. Sorted by name.
pub fn graphs_with_coxeter(h: u32) -> Result<Vec<AdeGraph>, InvariantError> {
    let h = h as usize;
    let mut pool: Vec<AdeName> = (1..=h).map(AdeName::A).collect();
    pool.extend((4..=h.max(4)).map(AdeName::D));
    pool.extend([AdeName::E6, AdeName::E7, AdeName::E8]);
    let mut out = Vec::new();
    for name in pool {
        let g = ade_graph(name)?;
        if g.coxeter as usize == h {
            out.push(g);
        }
    }
    out.sort_by_key(|g| g.name);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let a3 = ade_graph(AdeName::A(3)).unwrap();
        assert_eq!(
            (a3.coxeter, a3.exponents.clone(), a3.vertex_orbits),
            (4, vec![1, 2, 3], 2)
        );
        let a2 = ade_graph(AdeName::A(2)).unwrap();
        assert_eq!(a2.vertex_orbits, 1);
        let e6 = ade_graph(AdeName::E6).unwrap();
        assert_eq!(
            (e6.coxeter, e6.exponents.clone(), e6.vertex_orbits),
            (12, vec![1, 4, 5, 7, 8, 11], 4)
        );
        let e7 = ade_graph(AdeName::E7).unwrap();
        assert_eq!(
            (e7.coxeter, e7.exponents.clone(), e7.vertex_orbits),
            (18, vec![1, 5, 7, 9, 11, 13, 17], 7)
        );
        let e8 = ade_graph(AdeName::E8).unwrap();
        assert_eq!((e8.coxeter, e8.vertex_orbits), (30, 8));
        assert_eq!(e8.exponents, vec![1, 7, 11, 13, 17, 19, 23, 29]);
        let d4 = ade_graph(AdeName::D(4)).unwrap();
        assert_eq!(
            (d4.coxeter, d4.exponents.clone(), d4.vertex_orbits),
            (6, vec![1, 3, 3, 5], 2)
        );
        let d7 = ade_graph(AdeName::D(7)).unwrap();
        assert_eq!(
            (d7.coxeter, d7.exponents.clone(), d7.vertex_orbits),
            (12, vec![1, 3, 5, 6, 7, 9, 11], 6)
        );
        assert_eq!(automorphisms(&d4.adjacency).len(), 6);
    }

    #[test]
    fn spectral_identity() {
        for name in ["A1", "A7", "D5", "D10", "E6", "E7", "E8", "A30"] {
            let g = ade_graph_by_name(name).unwrap();
            let n = g.adjacency.len();
            assert_eq!(g.exponents.len(), n);
            let m = DMatrix::from_fn(n, n, |i, j| g.adjacency[i][j] as f64);
            let mut eig: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
            eig.sort_by(|a, b| a.total_cmp(b));
            let mut expect: Vec<f64> = g
                .exponents
                .iter()
                .map(|&a| 2.0 * (PI * a as f64 / g.coxeter as f64).cos())
                .collect();
            expect.sort_by(|a, b| a.total_cmp(b));
            for (x, y) in eig.iter().zip(&expect) {
                assert!((x - y).abs() < 1e-9, "{name}");
            }
        }
    }

    #[test]
    fn inventory() {
        let names = |h| {
            graphs_with_coxeter(h)
                .unwrap()
                .into_iter()
                .map(|g| g.name.to_string())
                .collect::<Vec<_>>()
        };
        assert_eq!(names(12), vec!["A11", "D7", "E6"]);
        assert_eq!(names(3), vec!["A2"]);
        assert_eq!(names(4), vec!["A3"]);
        assert_eq!(names(30), vec!["A29", "D16", "E8"]);
        assert_eq!(names(18), vec!["A17", "D10", "E7"]);
    }

    #[test]
    fn name_parsing() {
        assert_eq!("D3".parse::<AdeName>().unwrap(), AdeName::A(3));
        assert_eq!("a_10".parse::<AdeName>().unwrap(), AdeName::A(10));
        assert!("E9".parse::<AdeName>().is_err());
        assert!("D2".parse::<AdeName>().is_err());
        assert!("".parse::<AdeName>().is_err());
    }
}
