use std::collections::BTreeMap;

use braidcat::cyclotomic::{rat, Q};
use braidcat::repcat::{composition_factors, decompose, simple, test_family, IndecLabel, WeightModule};
use proptest::prelude::*;

fn pool(p: u32) -> Vec<IndecLabel> {
    let mut out = Vec::new();
    for r in -1..=1 {
        for s in 1..=p {
            out.push(IndecLabel::M { r, s });
            if s < p {
                out.push(IndecLabel::F { r, s });
                out.push(IndecLabel::Fbar { r, s });
                out.push(IndecLabel::P { r, s });
            }
        }
    }
    out.push(IndecLabel::Typical(rat(2, 3)));
    out
}

/// Composition factors by peeling simple characters off the top weight:
/// uses only weight multisets, never submodule lattices.
fn peel(m: &WeightModule) -> BTreeMap<IndecLabel, usize> {
    let mut ch: BTreeMap<Q, i64> = m.weight_multiset().into_iter().map(|(w, k)| (w, k as i64)).collect();
    let mut out = BTreeMap::new();
    while let Some(top) = ch.iter().filter(|(_, &k)| k > 0).map(|(w, _)| w.clone()).max() {
        let l = simple(m.p, &top).unwrap();
        for (w, k) in l.weight_multiset() {
            *ch.entry(w).or_insert(0) -= k as i64;
        }
        *out.entry(IndecLabel::simple_of(m.p, &top)).or_insert(0) += 1;
    }
    assert!(ch.values().all(|&k| k == 0), "character is not a sum of simples");
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn decompose_of_direct_sum(p in 2u32..=3, picks in prop::collection::vec(any::<prop::sample::Index>(), 2..=3)) {
        let labels: Vec<IndecLabel> = picks.iter().map(|i| i.get(&pool(p)).clone()).collect();
        let mods: Vec<WeightModule> = labels.iter().map(|l| l.module(p).unwrap()).collect();
        let sum = WeightModule::direct_sum(&mods).unwrap();
        let mut want = BTreeMap::new();
        for l in &labels {
            *want.entry(l.clone()).or_insert(0usize) += 1;
        }
        prop_assert_eq!(decompose(&sum).unwrap(), want);
    }
}

#[test]
fn family_satisfies_relations() {
    for p in 2..=4 {
        for m in test_family(p, true).unwrap() {
            m.check_relations().unwrap();
        }
    }
}

#[test]
fn composition_factors_match_characters() {
    for p in 2..=3 {
        for l in pool(p) {
            let m = l.module(p).unwrap();
            assert_eq!(composition_factors(&m).unwrap(), peel(&m), "{l}");
        }
    }
}
