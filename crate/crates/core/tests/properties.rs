//! Property tests over the public API. The proptest seed is fixed; set
//! `UNIPART_SEED` to explore a different stream.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use unipart::acceptance::DEFAULT_SEED;
use unipart::cyclonum::{lcm, totient};
use unipart::discretia::{fixed_point_homology, reduced_homology, Perm, SimplicialComplex};
use unipart::exactla::eigenpairs_finite_order;
use unipart::lowdim::{classify_l2_fixed, l2_partition, L2Class, L2Point};
use unipart::matgroup::DEFAULT_CLOSURE_CAP;
use unipart::orthopart::Coarsening;
use unipart::repdecomp::{isotypic_decomposition, isotypic_refinement};
use unipart::{analyze, AnalysisConfig, AnalysisReport, CMatrix, CSubspace, CycNumber, FiniteMatrixGroup, OrthoPartition, Rational};

fn config(cases: u32) -> Config {
    let seed = std::env::var("UNIPART_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED);
    Config { cases, rng_seed: RngSeed::Fixed(seed), failure_persistence: None, ..Config::default() }
}

const CONDUCTORS: &[u64] = &[1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24];

fn cyc(m: u64) -> impl Strategy<Value = CycNumber> {
    let k = totient(m) as usize;
    prop::collection::vec((-6i64..=6, 1i64..=3), k).prop_map(move |cs| {
        let coeffs = cs.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect();
        CycNumber::from_reduced(m, coeffs).unwrap()
    })
}

fn cyc_triple() -> impl Strategy<Value = (CycNumber, CycNumber, CycNumber)> {
    prop::sample::select(CONDUCTORS).prop_flat_map(|m| (cyc(m), cyc(m), cyc(m)))
}

/// Monomial matrices with entries in the `order`-th roots of unity.
fn monomial(n: usize, m: u64, order: u64) -> impl Strategy<Value = CMatrix> {
    let step = (m / order) as i64;
    (Just((0..n).collect::<Vec<usize>>()).prop_shuffle(), prop::collection::vec(0..order as i64, n)).prop_map(
        move |(perm, ks)| {
            let d: Vec<CycNumber> = ks.iter().map(|&k| CycNumber::root_of_unity(m, k * step)).collect();
            CMatrix::diagonal(&d).unwrap().mul(&CMatrix::permutation(&perm, m))
        },
    )
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as u8).collect::<Vec<u8>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn field_axioms((a, b, c) in cyc_triple()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert!((&a.conj() * &a).is_real());
        let m2 = a.conductor() * 2;
        prop_assert_eq!((&a * &b).embed(m2).unwrap(), &a.embed(m2).unwrap() * &b.embed(m2).unwrap());
    }

    #[test]
    fn roots_of_unity(m in 1u64..=30, k in -40i64..40) {
        let w = CycNumber::root_of_unity(m, k);
        prop_assert!(w.pow(m).is_one());
        let g = num_integer::gcd(m, k.unsigned_abs());
        prop_assert_eq!(w.root_of_unity_order(), Some(m / g));
    }

    #[test]
    fn eigenspaces_of_monomial_unitaries(a in monomial(3, 8, 8)) {
        let pairs = eigenpairs_finite_order(&a, 48).unwrap();
        let total: usize = pairs.iter().map(|p| p.space.dim()).sum();
        prop_assert!(pairs.iter().all(|p| p.space.is_invariant_under(&a.embed(48).unwrap()).unwrap()));
        prop_assert_eq!(total, 3);
        for (i, x) in pairs.iter().enumerate() {
            for y in &pairs[i + 1..] {
                prop_assert!(x.value != y.value);
                prop_assert!(x.space.is_orthogonal_to(&y.space).unwrap());
            }
        }
    }

    #[test]
    fn frattini_quotient_is_universal(gens in prop::collection::vec(monomial(2, 4, 4), 1..=2), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..3)) {
        let g = FiniteMatrixGroup::generate(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        let t = g.table();
        let frattini = t.power_commutator_subgroup(2);
        // normal closure of a few random elements
        let mut seeds: Vec<usize> = Vec::new();
        for ix in &picks {
            let x = ix.index(g.order());
            seeds.extend((0..g.order()).map(|c| t.mul(t.mul(c, x), t.inv(c))));
        }
        let n = t.generated(&seeds);
        prop_assert!(t.is_normal(&n));
        let q = t.quotient(&n).unwrap();
        if q.group().is_elementary_abelian(2) || q.group().is_trivial() {
            prop_assert!(frattini.iter().all(|x| n.contains(x)));
        }
    }

    #[test]
    fn lifted_order_p_elements_give_big_abelian_j(a in monomial(3, 12, 12), p in prop::sample::select(vec![2u64, 3])) {
        let power = a.pow(p);
        prop_assume!(power.as_scalar().is_some() && a.as_scalar().is_none());
        let lift = unipart::matgroup::lift_order_p(&a, p, 1 << 12).unwrap();
        prop_assert!(lift.lift.pow(p).is_identity());
        let m = lift.lift.conductor();
        let scalars = vec![CMatrix::scalar(3, &CycNumber::root_of_unity(m, 1))];
        let s = FiniteMatrixGroup::generate(&scalars, DEFAULT_CLOSURE_CAP).unwrap();
        let j = FiniteMatrixGroup::generate(&[scalars[0].clone(), lift.lift.clone()], DEFAULT_CLOSURE_CAP).unwrap();
        prop_assert_eq!(j.order(), s.order() * p as usize);
    }

    #[test]
    fn isotypic_decomposition_is_complete(d in prop::collection::vec(0i64..4, 3), m in monomial(3, 4, 4)) {
        let diag: Vec<CycNumber> = d.iter().map(|&k| CycNumber::root_of_unity(4, k)).collect();
        let a = m.mul(&CMatrix::diagonal(&diag).unwrap()).mul(&m.unitary_inverse());
        let j = FiniteMatrixGroup::generate(std::slice::from_ref(&a), DEFAULT_CLOSURE_CAP).unwrap();
        let dec = isotypic_decomposition(&j).unwrap();
        let mut sum = CSubspace::zero(3, dec.conductor);
        for (i, c) in dec.components.iter().enumerate() {
            sum = sum.sum(&c.subspace).unwrap();
            for other in &dec.components[i + 1..] {
                prop_assert!(c.subspace.is_orthogonal_to(&other.subspace).unwrap());
            }
        }
        prop_assert_eq!(sum, CSubspace::full(3, dec.conductor));
        prop_assert_eq!(dec.is_polytypic(), a.as_scalar().is_none());
    }

    #[test]
    fn refinement_sits_inside_lambda(gens in prop::collection::vec(monomial(4, 4, 2), 1..=2), cut in 1usize..4) {
        let j = FiniteMatrixGroup::generate(&gens, DEFAULT_CLOSURE_CAP).unwrap();
        prop_assume!(j.is_abelian());
        let first: Vec<usize> = (0..cut).collect();
        let rest: Vec<usize> = (cut..4).collect();
        let lambda = OrthoPartition::coordinate(4, 4, &[&first, &rest]).unwrap();
        match lambda.orbit_coarsening(&gens) {
            Ok(Coarsening::Proper(c)) => {
                let refined = isotypic_refinement(&c, &j).unwrap();
                let m = refined.conductor();
                let c = c.embed(m).unwrap();
                for v in refined.classes() {
                    let hits = c.classes().iter().filter(|w| w.contains(v).unwrap()).count();
                    prop_assert_eq!(hits, 1);
                }
            }
            Ok(Coarsening::Improper) | Err(_) => {}
        }
    }

    #[test]
    fn action_preserves_dimension_profile(g in monomial(4, 8, 8), cut in 1usize..4) {
        let first: Vec<usize> = (0..cut).collect();
        let rest: Vec<usize> = (cut..4).collect();
        let lambda = OrthoPartition::coordinate(4, 8, &[&first, &rest]).unwrap();
        let moved = lambda.act(&g).unwrap();
        let sorted = |mut v: Vec<usize>| { v.sort(); v };
        prop_assert_eq!(sorted(moved.dimension_profile()), sorted(lambda.dimension_profile()));
    }

    #[test]
    fn conjugate_subgroups_have_equal_fixed_homology(g in perm(5), c in perm(5)) {
        let conj = c.compose(&g).compose(&c.inverse());
        let a = fixed_point_homology(5, &[g]);
        let b = fixed_point_homology(5, &[conj]);
        prop_assert_eq!(a.groups, b.groups);
    }

    #[test]
    fn cones_are_acyclic(facets in prop::collection::vec(prop::collection::btree_set(1u32..7, 1..4), 1..6)) {
        let coned: Vec<Vec<u32>> = facets.iter().map(|f| std::iter::once(0).chain(f.iter().copied()).collect()).collect();
        let h = reduced_homology(&SimplicialComplex::from_facets(&coned).chain_complex());
        prop_assert!(h.is_z_acyclic());
    }

    #[test]
    fn l2_classifiers_agree(a in -12i64..=12, b in -12i64..=12, d in 1i64..=7) {
        prop_assume!(a != 0 || b != 0);
        let pt = L2Point::gaussian(Rational::new(a.into(), d.into()), Rational::new(b.into(), d.into())).unwrap();
        let class = classify_l2_fixed(&pt).unwrap();
        prop_assert_eq!(l2_partition(&pt).unwrap().len(), 2);
        let expected = if b == 0 && a.abs() == d {
            L2Class::IsolatedPoint
        } else if a == 0 {
            L2Class::CircleComponent
        } else {
            L2Class::NotFixed
        };
        prop_assert_eq!(class, expected);
    }
}

proptest! {
    #![proptest_config(config(40))]

    #[test]
    fn analyze_is_deterministic_and_round_trips(gens in prop::collection::vec(monomial(2, 8, 8), 1..=2)) {
        let cfg = AnalysisConfig::default();
        let (Ok(r1), Ok(r2)) = (analyze(&gens, 2, &cfg), analyze(&gens, 2, &cfg)) else {
            return Ok(());
        };
        let j1 = r1.to_json();
        prop_assert_eq!(&j1, &r2.to_json());
        let back: AnalysisReport = serde_json::from_str(&j1).unwrap();
        prop_assert_eq!(back, r1);
    }
}

#[test]
fn normality_transport_on_d8() {
    let m = 1;
    let swap12 = CMatrix::permutation(&[1, 0, 2, 3], m);
    let pair_swap = CMatrix::permutation(&[2, 3, 0, 1], m);
    let center = CMatrix::permutation(&[1, 0, 3, 2], m);
    let h = [swap12, pair_swap];
    let g = FiniteMatrixGroup::generate(&h, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(g.order(), 8);
    let axes = OrthoPartition::coordinate(4, m, &[&[0], &[1], &[2], &[3]]).unwrap();
    assert!(axes.is_weakly_fixed(&h).unwrap());
    let Coarsening::Proper(c) = axes.orbit_coarsening(&[center]).unwrap() else { panic!("improper") };
    assert_eq!(c, OrthoPartition::coordinate(4, m, &[&[0, 1], &[2, 3]]).unwrap());
    assert!(c.is_weakly_fixed(&h).unwrap());
    assert_eq!(lcm(c.conductor(), 1), c.conductor());
}
