mod support;

use proptest::prelude::*;
use seqcm::complex::enumerate_complexes_up_to_isomorphism;
use seqcm::filtration::{cyclic_multiplicity, dimension_filtration, find_good_sop, MultiplicityConfig, SearchConfig};
use seqcm::reference::find;
use seqcm::{Ideal, Monomial, Polynomial};
use support::*;

#[test]
fn ideal_operations_match_monomial_oracles() {
    let bad = monomial_oracle_mismatches(200, 7);
    assert!(bad.is_empty(), "{bad:#?}");
}

fn exps(n: usize) -> impl Strategy<Value = Exps> {
    prop::collection::vec(0u16..=2, n).prop_filter("nonzero degree", |e| e.iter().sum::<u16>() >= 1)
}

fn monomial_ideal_strategy(n: usize) -> impl Strategy<Value = Vec<Exps>> {
    prop::collection::vec(exps(n), 1..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomial_operations_agree(a in monomial_ideal_strategy(3), b in monomial_ideal_strategy(3)) {
        let r = ring(3);
        let (ia, ib) = (monomial_ideal(&r, &a), monomial_ideal(&r, &b));
        prop_assert_eq!(as_monomial_set(&ia.intersect(&ib).unwrap()), Some(oracle_intersect(&a, &b)));
        prop_assert_eq!(as_monomial_set(&ia.colon(&ib).unwrap()), Some(oracle_colon(&a, &b)));
        prop_assert_eq!(as_monomial_set(&ia.saturation(&ib).unwrap()), Some(oracle_saturation(&a, &b)));
    }

    #[test]
    fn artinian_monomial_length_counts_standard_monomials(a in monomial_ideal_strategy(3), caps in prop::collection::vec(1u16..=3, 3)) {
        let r = ring(3);
        let mut gens = a.clone();
        for (i, &c) in caps.iter().enumerate() {
            let mut e = vec![0; 3];
            e[i] = c;
            gens.push(e);
        }
        let mut count = 0;
        for x in 0..caps[0] {
            for y in 0..caps[1] {
                for z in 0..caps[2] {
                    count += !member(&[x, y, z], &gens) as usize;
                }
            }
        }
        prop_assert_eq!(monomial_ideal(&r, &gens).artinian_length().unwrap(), count);
    }
}

#[test]
fn golden_lengths_match_hilbert_function_oracle() {
    for (id, want) in [("ex42ii", 12), ("ex42iii", 8), ("ex42v", 6), ("ex43", 9), ("ex43b", 28)] {
        let inst = find(id).unwrap();
        let m = inst.module(P).unwrap();
        let x = inst.parameters(&m).unwrap();
        let gens = quotient_generators(&m, x.elements(), &vec![2; x.len()]);
        assert_eq!(graded_length(m.ring().nvars(), &gens), want, "{id}");
    }
}

#[test]
fn local_length_matches_hilbert_function_oracle_on_small_complexes() {
    for n in 1..=4 {
        for c in enumerate_complexes_up_to_isomorphism(n, false) {
            let m = sr_of(&c);
            let f = dimension_filtration(&m).unwrap();
            let x = find_good_sop(&m, &f, &SearchConfig::default()).unwrap();
            if !x.is_homogeneous() {
                continue;
            }
            for e in [1, 2, 3] {
                let gens = quotient_generators(&m, x.elements(), &vec![e; x.len()]);
                let got = m.ideal().with_generators(&x.powers(&vec![e; x.len()])).unwrap().local_length().unwrap();
                assert_eq!(got, graded_length(n, &gens), "{:?} e={e}", c.facets);
            }
        }
    }
}

#[test]
fn local_length_counts_only_the_origin() {
    // (X(X-1), Y²) has length 4 globally and 2 at the origin.
    let r = ring(2);
    let x_sq_minus_x = Polynomial::from_terms(&r, [(Monomial::var(2, 0, 2), 1), (Monomial::var(2, 0, 1), P - 1)]);
    let gens = vec![x_sq_minus_x, Polynomial::var(&r, 1).pow(2)];
    let i = Ideal::new(&r, gens).unwrap();
    assert_eq!(i.local_length().unwrap(), 2);
    assert!(i.artinian_length().is_err());
}

#[test]
fn multiplicity_matches_facet_count_oracle() {
    let config = MultiplicityConfig::default();
    for n in 1..=4 {
        for c in enumerate_complexes_up_to_isomorphism(n, false) {
            let m = sr_of(&c);
            let f = dimension_filtration(&m).unwrap();
            let x = find_good_sop(&m, &f, &SearchConfig::default()).unwrap();
            if !x.is_homogeneous() {
                continue;
            }
            let e = cyclic_multiplicity(x.elements(), m.ideal(), &config).unwrap();
            assert_eq!(e, sr_multiplicity(&c, x.elements()), "{:?}", c.facets);
        }
    }
}

#[test]
fn counter_example_lengths_match_truncation_oracle() {
    for id in ["s3-1", "s3-2"] {
        let inst = find(id).unwrap();
        let m = inst.module(P).unwrap();
        let x = inst.parameters(&m).unwrap();
        for n in seqcm::filtration::grid_points(2, 3) {
            let got = m.ideal().with_generators(&x.powers(&n)).unwrap().local_length().unwrap();
            let want = local_length_oracle(4, &quotient_generators(&m, x.elements(), &n));
            assert_eq!(got, want, "{id} {n:?}");
        }
    }
}

/// Along `n_2 = 1` the expected term is linear in `n_1`, so
/// `I(2,1) - 2 I(1,1) = ℓ(2,1) - 2 ℓ(1,1)` whatever the multiplicities are.
#[test]
fn first_counter_example_deficiency_vanishes_at_two_one() {
    let inst = find("s3-1").unwrap();
    let m = inst.module(P).unwrap();
    let x = inst.parameters(&m).unwrap();
    let l = |n: [u32; 2]| local_length_oracle(4, &quotient_generators(&m, x.elements(), &n)) as i64;
    let i11 = 0;
    let i21 = i11 * 2 + l([2, 1]) - 2 * l([1, 1]);
    assert_eq!(i21, 0);
}
