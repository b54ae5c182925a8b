use std::f64::consts::PI;

use proptest::prelude::*;
use rcft::extensions::{extension_mu, is_admissible_index, jones_value, subnet_mu, IndexVerdict};
use rcft::invariants::ade::{ade_graph, graphs_with_coxeter};
use rcft::invariants::{enumerate_invariants, AdeName, SearchConfig};
use rcft::models::{minimal_data, minimal_labels, minimal_ring, su2_data, su2_ring, KacLabel};
use rcft::qseries::sigma3;
use rcft::{FusionRules, ModularData};

fn sum_rule<F: FusionRules>(ring: &F, d: &[f64], a: usize, b: usize) -> f64 {
    (0..ring.rank())
        .map(|c| ring.coeff(a, b, c) as f64 * d[c])
        .sum()
}

fn assert_invariant_shape(md: &ModularData, z: &[Vec<u32>]) {
    assert_eq!(z[0][0], 1);
    for (i, row) in z.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            if v > 0 {
                assert!(
                    (md.t[i] - md.t[j]).norm() < 1e-9,
                    "Z[{i}][{j}] off the T-blocks"
                );
            }
        }
    }
    for (l, &v) in z[0].iter().enumerate() {
        if v > 0 {
            assert!(
                (md.omega[l] - md.omega[0]).norm() < 1e-9,
                "vacuum row sector {l} has nontrivial twist"
            );
        }
    }
}

#[test]
fn su2_s_matches_sine_formula() {
    for k in 1..=20u32 {
        let md = su2_data(k).unwrap();
        let h = (k + 2) as f64;
        for l in 0..=k as usize {
            for m in 0..=k as usize {
                let expect = (2.0 / h).sqrt() * (PI * ((l + 1) * (m + 1)) as f64 / h).sin();
                assert!(
                    (md.s[(l, m)].re - expect).abs() < 1e-12 && md.s[(l, m)].im.abs() < 1e-12,
                    "k={k} ({l},{m})"
                );
            }
        }
    }
}

#[test]
fn minimal_s_magnitudes_match_product_formula() {
    for m in 3..=10u32 {
        let md = minimal_data(m).unwrap();
        let labels = minimal_labels(m);
        let norm = (8.0 / (m * (m + 1)) as f64).sqrt();
        for (i, a) in labels.iter().enumerate() {
            for (j, b) in labels.iter().enumerate() {
                let x = (PI * (a.p * b.p) as f64 / m as f64).sin()
                    * (PI * (a.q * b.q) as f64 / (m + 1) as f64).sin();
                assert!(
                    (md.s[(i, j)].norm() - norm * x.abs()).abs() < 1e-12,
                    "m={m} {a} {b}"
                );
            }
        }
    }
}

#[test]
fn invariants_keep_their_shape_and_close_under_transpose() {
    for k in 1..=16u32 {
        let md = su2_data(k).unwrap();
        let inv = enumerate_invariants(&md, &md, &SearchConfig::default()).unwrap();
        let mats: Vec<_> = inv.iter().map(|z| z.z.clone()).collect();
        for z in &inv {
            assert_invariant_shape(&md, &z.z);
            assert!(mats.contains(&z.transpose()), "k={k}: transpose missing");
        }
    }
}

#[test]
fn doubled_entry_bound_changes_nothing() {
    let doubled = SearchConfig {
        bound_scale: 2.0,
        ..SearchConfig::default()
    };
    let cases: Vec<ModularData> = (1..=12)
        .map(|k| su2_data(k).unwrap())
        .chain((3..=8).map(|m| minimal_data(m).unwrap()))
        .collect();
    for md in &cases {
        let base = enumerate_invariants(md, md, &SearchConfig::default()).unwrap();
        let wide = enumerate_invariants(md, md, &doubled).unwrap();
        let z = |v: &[rcft::InvariantMatrix]| v.iter().map(|z| z.z.clone()).collect::<Vec<_>>();
        assert_eq!(z(&base), z(&wide), "{}", md.name);
    }
}

#[test]
fn ade_exponents_are_symmetric() {
    for h in 2..=31u32 {
        for g in graphs_with_coxeter(h).unwrap() {
            assert_eq!(g.exponents.len(), g.adjacency.len(), "{}", g.name);
            let mut mirrored: Vec<u32> = g.exponents.iter().map(|&e| h - e).collect();
            mirrored.sort();
            assert_eq!(mirrored, g.exponents, "{}", g.name);
            assert_eq!(g.exponents[0], 1);
        }
    }
    assert_eq!(ade_graph(AdeName::E8).unwrap().coxeter, 30);
}

proptest! {
    #[test]
    fn su2_dimensions_respect_fusion(k in 1u32..24, a in 0usize..24, b in 0usize..24) {
        let (a, b) = (a % (k as usize + 1), b % (k as usize + 1));
        let md = su2_data(k).unwrap();
        let d = &md.dims.d;
        prop_assert!((d[a] * d[b] - sum_rule(&md.ring, d, a, b)).abs() < 1e-9);
    }

    #[test]
    fn minimal_fusion_is_commutative_and_associative(m in 3u32..9, a in 0usize..64, b in 0usize..64, c in 0usize..64) {
        let ring = minimal_ring(m).unwrap();
        let n = ring.rank();
        let (a, b, c) = (a % n, b % n, c % n);
        for e in 0..n {
            prop_assert_eq!(ring.coeff(a, b, e), ring.coeff(b, a, e));
            let left: u32 = (0..n).map(|x| ring.coeff(a, b, x) * ring.coeff(x, c, e)).sum();
            let right: u32 = (0..n).map(|x| ring.coeff(b, c, x) * ring.coeff(a, x, e)).sum();
            prop_assert_eq!(left, right);
        }
        prop_assert_eq!(ring.coeff(a, b, 0), u32::from(ring.conj(a) == b));
    }

    #[test]
    fn su2_ring_has_unit_and_self_duality(k in 1u32..30, a in 0usize..31) {
        let ring = su2_ring(k).unwrap();
        let a = a % ring.rank();
        prop_assert_eq!(ring.conj(a), a);
        for e in 0..ring.rank() {
            prop_assert_eq!(ring.coeff(0, a, e), u32::from(a == e));
        }
    }

    #[test]
    fn kac_fold_is_an_involution(m in 3u32..40, p in 1u32..40, q in 1u32..41) {
        let k = KacLabel::new(1 + p % (m - 1), 1 + q % m);
        prop_assert_eq!(k.partner(m).partner(m), k);
        prop_assert_eq!(k.partner(m).canonical(m), k.canonical(m));
        prop_assert!(minimal_labels(m).contains(&k.canonical(m)));
    }

    #[test]
    fn mu_bookkeeping_round_trips(mu in 1.0f64..1e6, index in 1.0f64..1e3) {
        let sub = subnet_mu(mu, index).unwrap();
        prop_assert!((sub - mu * index * index).abs() <= 1e-9 * sub);
        let back = extension_mu(sub, index).unwrap();
        prop_assert!((back.mu - mu).abs() <= 1e-9 * mu);
    }

    #[test]
    fn jones_values_are_admissible(n in 3u32..10_000) {
        let v = jones_value(n);
        prop_assert!((1.0..4.0).contains(&v));
        prop_assert!(jones_value(n + 1) > v);
        prop_assert_eq!(is_admissible_index(v), IndexVerdict::Discrete { n });
    }

    #[test]
    fn indices_above_four_are_continuum(x in 4.0f64..1e6) {
        prop_assert_eq!(is_admissible_index(x), IndexVerdict::Continuum);
    }

    #[test]
    fn sigma3_is_multiplicative(a in 1i64..300, b in 1i64..300) {
        prop_assume!(num_integer::gcd(a, b) == 1);
        prop_assert_eq!(sigma3(a * b).unwrap(), sigma3(a).unwrap() * sigma3(b).unwrap());
    }
}
