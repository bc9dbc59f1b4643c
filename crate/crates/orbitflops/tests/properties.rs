//! Property tests for the combinatorial layer, plus the enumeration
//! invariants the catalogue promises.

use orbitflops::orbits::{
    classify_orbits, enumerate_polarizations, multiset_permutations, AlgebraKind, Family,
};
use orbitflops::partitions::{dominance_leq, ord, partitions_of, Partition};
use proptest::prelude::*;

fn seq_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=9, 1..=8)
}

proptest! {
    #[test]
    fn ord_is_order_insensitive(seq in seq_strategy(), shuffle_seed in 0u64..1000) {
        let mut shuffled = seq.clone();
        // cheap deterministic shuffle
        let mut s = shuffle_seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (s >> 33) as usize % (i + 1);
            shuffled.swap(i, j);
        }
        prop_assert_eq!(ord(&seq).unwrap(), ord(&shuffled).unwrap());
    }

    #[test]
    fn ord_preserves_weight(seq in seq_strategy()) {
        let total: usize = seq.iter().sum();
        prop_assert_eq!(ord(&seq).unwrap().weight(), total);
    }

    #[test]
    fn dual_is_involutive(seq in seq_strategy()) {
        let d = ord(&seq).unwrap();
        prop_assert_eq!(d.dual().dual(), d);
    }

    #[test]
    fn dominance_is_reflexive_and_antisymmetric(seq in seq_strategy(), other in seq_strategy()) {
        let a = ord(&seq).unwrap();
        prop_assert!(dominance_leq(&a, &a).unwrap());
        let b = ord(&other).unwrap();
        if a.weight() == b.weight()
            && dominance_leq(&a, &b).unwrap()
            && dominance_leq(&b, &a).unwrap()
        {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn dual_reverses_dominance(seq in seq_strategy(), other in seq_strategy()) {
        let a = ord(&seq).unwrap();
        let b = ord(&other).unwrap();
        if a.weight() == b.weight() {
            prop_assert_eq!(
                dominance_leq(&a, &b).unwrap(),
                dominance_leq(&b.dual(), &a.dual()).unwrap()
            );
        }
    }
}

#[test]
fn ord_matches_sorted_input_exhaustively() {
    // every sequence over {1..4} up to length 5
    fn rec(seq: &mut Vec<usize>, depth: usize) {
        if !seq.is_empty() {
            let mut sorted = seq.clone();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(ord(seq).unwrap(), ord(&sorted).unwrap(), "{:?}", seq);
            assert_eq!(ord(seq).unwrap().weight(), seq.iter().sum::<usize>());
        }
        if depth == 0 {
            return;
        }
        for v in 1..=4 {
            seq.push(v);
            rec(seq, depth - 1);
            seq.pop();
        }
    }
    rec(&mut Vec::new(), 5);
}

#[test]
fn linear_polarization_counts_match_permutations() {
    for n in 2..=8usize {
        let algebra = AlgebraKind::new(Family::Sl, n).unwrap();
        for orbit in classify_orbits(algebra) {
            let dual = orbit.jordan_type.dual();
            let expected = multiset_permutations(dual.parts()).len();
            let pols = enumerate_polarizations(&orbit).unwrap();
            assert_eq!(pols.len(), expected, "{}", orbit);
        }
    }
}

#[test]
fn very_even_orbits_counted_twice() {
    for n in 2..=6usize {
        let algebra = AlgebraKind::new(Family::So, 2 * n).unwrap();
        let orbits = classify_orbits(algebra);
        for d in partitions_of(2 * n) {
            if !d.is_orbit_type(orbitflops::partitions::Parity::Even) {
                continue;
            }
            let count = orbits.iter().filter(|o| o.jordan_type == d).count();
            let expected = if d.is_very_even() { 2 } else { 1 };
            assert_eq!(count, expected, "so({}) {}", 2 * n, d);
        }
    }
}

#[test]
fn partition_serialization_is_a_plain_array() {
    let d = Partition::new(vec![4, 4, 1, 1]).unwrap();
    assert_eq!(serde_json::to_string(&d).unwrap(), "[4,4,1,1]");
    let back: Partition = serde_json::from_str("[4,4,1,1]").unwrap();
    assert_eq!(back, d);
    assert!(serde_json::from_str::<Partition>("[1,2]").is_err());
}
