//! The acceptance suite: nine end-to-end criteria, each reported as a
//! single pass/fail line. Randomized criteria are driven by a seeded
//! ChaCha stream so every run is reproducible.

pub mod library;
pub mod oracle;

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cyclonum::{gcd, lcm, CycNumber, Rational, DEFAULT_CONDUCTOR_CAP};
use crate::discretia::{
    reduced_homology, smith_normal_form, sparse_invariant_factors, sweep, PartitionPoset, SetPartition,
    SimplicialComplex, SparseMatrix,
};
use crate::exactla::{CMatrix, CSubspace};
use crate::lowdim::{
    classify_l2_fixed, gaussian_grid, l2_fixed_component_census, l3_expected_mu, rp2_quotient_complex, L2Class,
    L2Point,
};
use crate::matgroup::{lift_order_p, FiniteMatrixGroup, DEFAULT_CLOSURE_CAP};
use crate::orthopart::{Coarsening, OrthoPartition};
use crate::repdecomp::{is_isotypic_subspace, isotypic_decomposition};
use crate::verdict::{analyze, verify_witness, AnalysisConfig, Verdict};

pub const DEFAULT_SEED: u64 = 0x5EED_2024;
/// Cases per property family in criterion 9.
pub const PROPERTY_CASES: usize = 1000;
/// Random lift inputs in criterion 4.
pub const LIFT_CASES: usize = 200;

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {}. {} ({:.2?}): {}", self.id, self.name, self.elapsed, self.detail)
    }
}

type Outcome = Result<String, String>;
type PropertyCase = fn(&mut ChaCha8Rng) -> Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(id: u8, name: &'static str, limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> CriterionReport {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => match limit {
            Some(l) if elapsed >= l => (false, format!("{d}; exceeded time limit {l:?}")),
            _ => (true, d),
        },
        Err(e) => (false, e),
    };
    CriterionReport { id, name, passed, detail, elapsed }
}

pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(seed, LIFT_CASES),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(seed, PROPERTY_CASES),
    ]
}

fn swap2() -> CMatrix {
    CMatrix::from_ints(1, &[&[0, 1], &[1, 0]])
}

pub fn criterion_1() -> CriterionReport {
    timed(1, "swap in U(3) is contractible with the expected mu", Some(Duration::from_secs(1)), || {
        let tau = CMatrix::from_ints(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let report = analyze(&[tau], 2, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
        ensure(report.verdict.is_contractible(), || format!("verdict {}", report.verdict))?;
        let w = report.witness.as_ref().ok_or("no witness")?;
        ensure(w.mu == l3_expected_mu(w.conductor), || format!("mu = {:?}", w.mu))?;
        Ok(format!("{} with mu = {{(u,u,v)}}, {{(u,-u,0)}}", report.verdict))
    })
}

/// Expected class of `a + b·i` from the coordinates alone.
fn expected_l2_class(a: &Rational, b: &Rational) -> L2Class {
    if b.is_zero() && (a.is_one() || (-a).is_one()) {
        L2Class::IsolatedPoint
    } else if a.is_zero() {
        L2Class::CircleComponent
    } else {
        L2Class::NotFixed
    }
}

pub fn criterion_2() -> CriterionReport {
    timed(2, "swap in U(2) is inconclusive; fixed set of L_2 is a circle and a point", Some(Duration::from_secs(10)), || {
        let report = analyze(&[swap2()], 2, &AnalysisConfig::default()).map_err(|e| e.to_string())?;
        ensure(report.verdict == Verdict::InconclusiveProjectiveElementaryAbelian, || {
            format!("verdict {}", report.verdict)
        })?;
        let mut checked = 0;
        for d in 1..=3i64 {
            for a in -3..=3i64 {
                for b in -3..=3i64 {
                    let (qa, qb) = (Rational::new(a.into(), d.into()), Rational::new(b.into(), d.into()));
                    if qa.is_zero() && qb.is_zero() {
                        continue;
                    }
                    let pt = L2Point::gaussian(qa.clone(), qb.clone()).map_err(|e| e.to_string())?;
                    let got = classify_l2_fixed(&pt).map_err(|e| e.to_string())?;
                    let want = expected_l2_class(&qa, &qb);
                    ensure(got == want, || format!("{pt}: got {got:?}, expected {want:?}"))?;
                    checked += 1;
                }
            }
        }
        let axis = classify_l2_fixed(&L2Point::AxisPair).map_err(|e| e.to_string())?;
        ensure(axis == L2Class::CircleComponent, || format!("axis pair classified {axis:?}"))?;
        let census = l2_fixed_component_census(&gaussian_grid(3, &[1, 2, 3])).map_err(|e| e.to_string())?;
        ensure(census.components == 2 && census.isolated_count == 1 && census.circle_witnessed, || {
            format!("census {census:?}")
        })?;
        Ok(format!("{checked} grid points plus the axis pair agree; census has {} components", census.components))
    })
}

pub fn criterion_3() -> CriterionReport {
    timed(3, "RP^2 model has homology (Z, Z/2, 0)", None, || {
        let h = crate::discretia::homology(&rp2_quotient_complex().chain_complex());
        let got = (h.betti(0), h.torsion(0).to_vec(), h.betti(1), h.torsion(1).to_vec(), h.betti(2), h.torsion(2).to_vec());
        ensure(got == (1, vec![], 0, vec![2], 0, vec![]), || format!("got {got:?}"))?;
        Ok("H0 = Z, H1 = Z/2, H2 = 0".into())
    })
}

fn check_lift(case: &library::LiftCase) -> Result<(), String> {
    let lift = lift_order_p(&case.a, case.p, DEFAULT_CONDUCTOR_CAP).map_err(|e| e.to_string())?;
    let b = &lift.lift;
    let m = b.conductor();
    ensure(b.pow(case.p).is_identity(), || "B^p != I".into())?;
    let a = case.a.embed(m).map_err(|e| e.to_string())?;
    ensure(a.mul(&b.unitary_inverse()).as_scalar().is_some(), || "A B^-1 is not scalar".into())?;
    let h = FiniteMatrixGroup::generate(std::slice::from_ref(&a), DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
    let mut gens: Vec<CMatrix> = h.scalar_subgroup().into_iter().map(|i| h.element(i).clone()).collect();
    let scalars = gens.len();
    gens.push(b.clone());
    let j = FiniteMatrixGroup::generate(&gens, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
    ensure(j.is_abelian(), || "J is not abelian".into())?;
    ensure(j.order() == scalars * case.p as usize, || format!("|J| = {}, |scalars| = {scalars}", j.order()))?;
    let dec = isotypic_decomposition(&j).map_err(|e| e.to_string())?;
    ensure(dec.len() >= 2, || format!("{} isotypic components", dec.len()))
}

pub fn criterion_4(seed: u64, cases: usize) -> CriterionReport {
    timed(4, "order-p lifts of random projective order-p matrices", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 4);
        for k in 0..cases {
            let case = library::random_lift_case(&mut rng);
            check_lift(&case).map_err(|e| format!("case {k} (p = {}, m = {}): {e}", case.p, case.m))?;
        }
        Ok(format!("{cases} cases, zero failures"))
    })
}

pub fn criterion_5() -> CriterionReport {
    timed(5, "central order-p element in the Frattini subgroup", None, || {
        let mut names = Vec::new();
        for g in library::curated_groups() {
            let grp = FiniteMatrixGroup::generate(&g.generators, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
            ensure(!grp.is_elementary_abelian(g.p) && grp.is_p_group(g.p), || format!("{} is not a valid input", g.name))?;
            let v = grp.as_quotient().central_order_p_in_frattini_kernel(g.p).map_err(|e| format!("{}: {e}", g.name))?;
            let x = grp.element(v);
            ensure(grp.elements().iter().all(|y| x.mul(y) == y.mul(x)), || format!("{}: not central", g.name))?;
            ensure(!x.is_identity() && x.pow(g.p).is_identity(), || format!("{}: order is not {}", g.name, g.p))?;
            let mut frattini_gens: Vec<CMatrix> = grp.elements().iter().map(|y| y.pow(g.p)).collect();
            for y in grp.elements() {
                for z in grp.elements() {
                    frattini_gens.push(y.mul(z).mul(&y.unitary_inverse()).mul(&z.unitary_inverse()));
                }
            }
            let frattini = oracle::naive_closure(&frattini_gens);
            ensure(frattini.contains(x), || format!("{}: element outside G^p[G,G]", g.name))?;
            names.push(g.name);
        }
        Ok(format!("verified for {}", names.join(", ")))
    })
}

pub fn criterion_6() -> CriterionReport {
    timed(6, "route A end to end with witness verification", None, || {
        let i = CycNumber::root_of_unity(4, 1);
        let gens = vec![CMatrix::diagonal(&[CycNumber::one(4), i]).expect("diagonal"), swap2()];
        let config = AnalysisConfig::default();
        let report = analyze(&gens, 2, &config).map_err(|e| e.to_string())?;
        ensure(report.verdict == Verdict::ContractibleByMainTheorem, || format!("verdict {}", report.verdict))?;
        let v = verify_witness(&gens, 2, &report, &config);
        if let Some(c) = v.first_failure() {
            return Err(format!("check ({}) failed: {}", c.check, c.detail));
        }
        ensure(v.passed(), || "fewer than six checks".into())?;
        Ok(format!("{}; checks a-f pass", report.verdict))
    })
}

pub fn criterion_7() -> CriterionReport {
    timed(7, "fixed-point sweep over p-subgroups of the symmetric groups", Some(Duration::from_secs(300)), || {
        let mut classes = 0;
        for n in 2..=6 {
            for p in [2, 3, 5] {
                let r = sweep(n, p, 6).map_err(|e| e.to_string())?;
                ensure(r.violations == 0, || format!("n = {n}, p = {p}: {} violations", r.violations))?;
                ensure(r.rows.iter().all(|row| row.implication_holds), || format!("n = {n}, p = {p}: bad row"))?;
                classes += r.rows.len();
            }
        }
        Ok(format!("{classes} conjugacy classes, zero violations"))
    })
}

/// `(degree, betti)` pairs of a reduced homology result, torsion must be empty.
fn reduced_profile(poset: &PartitionPoset) -> Result<Vec<u64>, String> {
    let complex = crate::discretia::order_complex(poset);
    let h = reduced_homology(&complex.chain_complex());
    let top = complex.dim().map_or(-1, |d| d as i64);
    let mut betti = Vec::new();
    for k in -1..=top {
        ensure(h.torsion(k).is_empty(), || format!("torsion in degree {k}"))?;
        betti.push(h.betti(k));
    }
    Ok(betti)
}

pub fn criterion_8() -> CriterionReport {
    timed(8, "homology of P_3, P_4, P_5 against independent rank oracles", None, || {
        let expected: [(usize, Vec<u64>); 3] = [(3, vec![0, 2]), (4, vec![0, 0, 6]), (5, vec![0, 0, 0, 24])];
        for (n, want) in expected {
            let poset = PartitionPoset::proper_nontrivial(n);
            let got = reduced_profile(&poset)?;
            ensure(got == want, || format!("P_{n}: SNF gives {got:?}, expected {want:?}"))?;
            let q = oracle::reduced_betti_with(&poset, oracle::rank_q);
            let f2 = oracle::reduced_betti_with(&poset, |m| oracle::rank_mod(m, 2));
            let f3 = oracle::reduced_betti_with(&poset, |m| oracle::rank_mod(m, 3));
            ensure(q == want && f2 == want && f3 == want, || {
                format!("P_{n}: oracle ranks Q {q:?}, F2 {f2:?}, F3 {f3:?}")
            })?;
        }
        Ok("P_3: Z^2 in degree 0, P_4: Z^6 in degree 1, P_5: Z^24 in degree 2".into())
    })
}

pub fn criterion_9(seed: u64, cases: usize) -> CriterionReport {
    timed(9, "property suites", None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 9);
        let suites: [(&str, PropertyCase); 5] = [
            ("field axioms", field_case),
            ("subspace duality", subspace_case),
            ("closure/Lagrange/quotient", group_case),
            ("partition containment and coarsening", partition_case),
            ("boundary and Smith form", discrete_case),
        ];
        for (name, f) in suites {
            for k in 0..cases {
                f(&mut rng).map_err(|e| format!("{name}, case {k}: {e}"))?;
            }
        }
        Ok(format!("5 families x {cases} cases, zero failures"))
    })
}

fn field_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let m = rng.gen_range(1..=24u64);
    let [a, b, c] = [(); 3].map(|_| library::random_cyc(rng, m));
    ensure(&(&a * &b) * &c == &a * &(&b * &c), || format!("associativity at m = {m}"))?;
    ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || format!("distributivity at m = {m}"))?;
    ensure(&a * &b == &b * &a, || "commutativity".into())?;
    if !a.is_zero() {
        let inv = a.inv().map_err(|e| e.to_string())?;
        ensure((&a * &inv).is_one(), || format!("a * inv(a) != 1 for {a}"))?;
    }
    ensure(a.conj().conj() == a, || "conj is not an involution".into())?;
    ensure((&a * &b).conj() == &a.conj() * &b.conj(), || "conj is not multiplicative".into())?;
    ensure((&a + &b).conj() == &a.conj() + &b.conj(), || "conj is not additive".into())?;
    ensure((&a.conj() * &a).is_real(), || "conj(a) a is not real".into())?;
    let m2 = m * rng.gen_range(1..=3u64);
    let e = |x: &CycNumber| x.embed(m2).map_err(|e| e.to_string());
    ensure(e(&(&a * &b))? == &e(&a)? * &e(&b)?, || format!("embed {m} -> {m2} is not multiplicative"))?;
    ensure(e(&(&a + &b))? == &e(&a)? + &e(&b)?, || format!("embed {m} -> {m2} is not additive"))?;
    ensure(a != b || e(&a)? == e(&b)?, || "embed is not a function".into())?;
    ensure(a == b || e(&a)? != e(&b)?, || "embed is not injective".into())?;
    ensure(a.embed(m).map_err(|e| e.to_string())? == a, || "embed to own conductor".into())?;
    let k = rng.gen_range(0..2 * m as i64);
    let w = CycNumber::root_of_unity(m, k);
    ensure(w.pow(m).is_one(), || format!("zeta_{m}^{k} to the {m} is not 1"))?;
    let order = m / gcd(m, k as u64);
    ensure(w.root_of_unity_order() == Some(order), || format!("order of zeta_{m}^{k}"))
}

fn random_vectors(rng: &mut ChaCha8Rng, n: usize, m: u64, count: usize) -> Vec<Vec<CycNumber>> {
    (0..count)
        .map(|_| {
            (0..n)
                .map(|_| if rng.gen_bool(0.4) { CycNumber::zero(m) } else { library::random_cyc(rng, m) })
                .collect()
        })
        .collect()
}

fn subspace_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let n = rng.gen_range(1..=4usize);
    let m = *[1u64, 3, 4, 5, 8, 12].choose(rng).expect("nonempty");
    let k = rng.gen_range(0..=n);
    let vecs = random_vectors(rng, n, m, k);
    let v = CSubspace::from_vectors(n, m, vecs.clone()).map_err(|e| e.to_string())?;
    let perp = v.orth_complement();
    ensure(v.dim() + perp.dim() == n, || format!("dim {} + {} != {n}", v.dim(), perp.dim()))?;
    ensure(perp.orth_complement() == v, || "double complement".into())?;
    ensure(v.intersect(&perp).map_err(|e| e.to_string())?.is_zero(), || "V meets its complement".into())?;
    // another spanning set of the same space
    let coeffs = random_vectors(rng, k, m, k);
    let mut mixed: Vec<Vec<CycNumber>> = coeffs
        .iter()
        .map(|c| (0..n).map(|j| c.iter().zip(&vecs).fold(CycNumber::zero(m), |acc, (x, u)| &acc + &(x * &u[j]))).collect())
        .collect();
    mixed.extend(vecs.iter().cloned());
    mixed.shuffle(rng);
    let w = CSubspace::from_vectors(n, m, mixed).map_err(|e| e.to_string())?;
    ensure(w == v, || "canonical form depends on the spanning set".into())?;
    let order = if m.is_multiple_of(2) { m } else { 2 * m };
    let mu = lcm(m, order);
    let g = library::random_monomial(rng, n, mu, order);
    let vm = v.embed(mu).map_err(|e| e.to_string())?;
    let gv = vm.apply(&g).map_err(|e| e.to_string())?;
    ensure(gv.dim() == v.dim(), || "unitary changed dimension".into())?;
    ensure(gv.orth_complement() == vm.orth_complement().apply(&g).map_err(|e| e.to_string())?, || {
        "unitary does not commute with complement".into()
    })
}

fn group_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let (p, gens) = if rng.gen_bool(0.5) {
        let order = if rng.gen_bool(0.5) { 4 } else { 8 };
        (2u64, (0..rng.gen_range(1..=2)).map(|_| library::random_monomial(rng, 2, 8, order)).collect::<Vec<_>>())
    } else {
        (3u64, (0..rng.gen_range(1..=2)).map(|_| library::random_rotation_monomial(rng, 3, 3, 3)).collect())
    };
    let g = FiniteMatrixGroup::generate(&gens, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
    let naive = oracle::naive_closure(&gens);
    let mut naive: BTreeSet<CMatrix> = naive;
    naive.insert(CMatrix::identity(gens[0].rows(), gens[0].conductor()));
    let ours: BTreeSet<CMatrix> = g.elements().iter().cloned().collect();
    ensure(ours == naive, || format!("closure has {} elements, naive {}", ours.len(), naive.len()))?;
    ensure(g.elements().iter().all(|x| ours.contains(&x.unitary_inverse())), || "not closed under inverse".into())?;
    let order = g.order();
    let mut q = order;
    while q % p as usize == 0 {
        q /= p as usize;
    }
    ensure(q == 1 && g.is_p_group(p), || format!("order {order} is not a power of {p}"))?;
    let t = g.table();
    let mut subgroups = vec![g.center(), g.scalar_subgroup(), t.power_commutator_subgroup(p)];
    for _ in 0..3 {
        subgroups.push(t.generated(&[rng.gen_range(0..order)]));
    }
    for s in &subgroups {
        ensure(t.is_subgroup(s), || "computed subset is not a subgroup".into())?;
        ensure(order % s.len() == 0, || format!("subgroup of order {} in group of order {order}", s.len()))?;
    }
    let frattini = g.frattini_quotient(p).map_err(|e| e.to_string())?;
    ensure(frattini.group().is_elementary_abelian(p) || frattini.group().is_trivial(), || {
        "Frattini quotient is not elementary abelian".into()
    })?;
    ensure(frattini.is_homomorphism_from(t), || "Frattini projection is not a homomorphism".into())?;
    for quotient in [frattini, g.projective_image()] {
        ensure(quotient.group().is_p_group(p), || "quotient is not a p-group".into())?;
        ensure(order % quotient.order() == 0, || "quotient order does not divide".into())?;
    }
    Ok(())
}

/// The column permutation of a monomial matrix: `e_j ↦ e_{perm[j]}`.
fn monomial_permutation(g: &CMatrix) -> Vec<usize> {
    (0..g.cols()).map(|j| (0..g.rows()).find(|&i| !g.get(i, j).is_zero()).expect("monomial")).collect()
}

/// Orbit coarsening of a coordinate partition under monomial generators,
/// by merging blocks that generators send onto each other.
fn coordinate_orbit_blocks(blocks: &[Vec<usize>], gens: &[CMatrix]) -> Vec<Vec<usize>> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut owner = vec![0; n];
    for (b, block) in blocks.iter().enumerate() {
        for &i in block {
            owner[i] = b;
        }
    }
    let mut parent: Vec<usize> = (0..blocks.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for g in gens {
        let perm = monomial_permutation(g);
        for (b, block) in blocks.iter().enumerate() {
            let (x, y) = (find(&mut parent, b), find(&mut parent, owner[perm[block[0]]]));
            parent[x] = y;
        }
    }
    let mut merged: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; blocks.len()];
    for (b, block) in blocks.iter().enumerate() {
        let r = find(&mut parent, b);
        if slot[r] == usize::MAX {
            slot[r] = merged.len();
            merged.push(Vec::new());
        }
        merged[slot[r]].extend(block);
    }
    merged
}

fn partition_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    // rejection sampling until the partition is weakly fixed
    for _ in 0..1000 {
        let n = rng.gen_range(2..=4usize);
        let gens: Vec<CMatrix> = (0..rng.gen_range(1..=2))
            .map(|_| {
                if rng.gen_bool(0.3) {
                    let d: Vec<CycNumber> = (0..n).map(|_| CycNumber::root_of_unity(4, rng.gen_range(0..4))).collect();
                    CMatrix::diagonal(&d).expect("nonempty")
                } else {
                    library::random_monomial(rng, n, 4, 4)
                }
            })
            .collect();
        let j = FiniteMatrixGroup::generate(&gens, DEFAULT_CLOSURE_CAP).map_err(|e| e.to_string())?;
        let use_isotypic = j.is_abelian() && rng.gen_bool(0.3);
        let (lambda, blocks) = if use_isotypic {
            match isotypic_decomposition(&j).map_err(|e| e.to_string())?.to_partition().map_err(|e| e.to_string())? {
                Some(mu) => (mu, None),
                None => continue,
            }
        } else {
            let all: Vec<SetPartition> = SetPartition::all(n).into_iter().filter(|s| s.num_blocks() >= 2).collect();
            let blocks = all.choose(rng).expect("n >= 2").blocks();
            let refs: Vec<&[usize]> = blocks.iter().map(Vec::as_slice).collect();
            (OrthoPartition::coordinate(n, 4, &refs).map_err(|e| e.to_string())?, Some(blocks))
        };
        let err = |e: crate::orthopart::PartitionError| e.to_string();
        let weak = lambda.is_weakly_fixed(&gens).map_err(err)?;
        let strong = lambda.is_strongly_fixed(&gens).map_err(err)?;
        ensure(!strong || weak, || "strongly fixed but not weakly fixed".into())?;
        if j.is_abelian() {
            let mut classwise = true;
            for v in lambda.classes() {
                classwise &= is_isotypic_subspace(v, &j).unwrap_or(false);
            }
            ensure(!classwise || strong, || "classwise isotypic but not strongly fixed".into())?;
            ensure(!use_isotypic || classwise, || "isotypic decomposition is not classwise isotypic".into())?;
        }
        if !weak {
            continue;
        }
        let coarse = lambda.orbit_coarsening(&gens).map_err(err)?;
        if let Some(blocks) = &blocks {
            let merged = coordinate_orbit_blocks(blocks, &gens);
            let expected = if merged.len() < 2 {
                Coarsening::Improper
            } else {
                let refs: Vec<&[usize]> = merged.iter().map(Vec::as_slice).collect();
                Coarsening::Proper(OrthoPartition::coordinate(n, 4, &refs).map_err(err)?)
            };
            ensure(coarse == expected, || format!("orbit coarsening of {blocks:?} differs from the block oracle"))?;
        }
        if let Coarsening::Proper(c) = &coarse {
            ensure(lambda.is_coarsening(c).map_err(err)?, || "lambda is not below lambda/J".into())?;
            ensure(c.is_strongly_fixed(&gens).map_err(err)?, || "lambda/J is not strongly fixed".into())?;
            ensure(c.orbit_coarsening(&gens).map_err(err)? == coarse, || "orbit coarsening is not idempotent".into())?;
        }
        return Ok(());
    }
    Err("no weakly fixed sample in 1000 draws".into())
}

fn to_big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|r| (0..cols).map(|j| (0..inner).map(|k| &r[k] * &b[k][j]).sum()).collect())
        .collect()
}

fn discrete_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let v = rng.gen_range(1..=7u32);
    let count = rng.gen_range(1..=6);
    let facets = library::random_facets(rng, v, count, 4.min(v as usize));
    let complex = SimplicialComplex::from_facets(&facets);
    let chain = complex.chain_complex();
    ensure(chain.boundary_squares_to_zero(), || format!("boundary squared is nonzero for {facets:?}"))?;
    let h = crate::discretia::homology(&chain);
    ensure(h.euler_characteristic() == complex.euler_characteristic(), || "Euler characteristic mismatch".into())?;

    let (rows, cols) = (rng.gen_range(1..=5usize), rng.gen_range(1..=5usize));
    let raw = library::random_int_matrix(rng, rows, cols, 6);
    let m = to_big(&raw);
    let snf = smith_normal_form(&m);
    for t in [&snf.u, &snf.v] {
        ensure(oracle::bareiss_det(t).abs().is_one(), || format!("transform is not unimodular for {raw:?}"))?;
    }
    ensure(mat_mul(&mat_mul(&snf.u, &m), &snf.v) == snf.s, || format!("U M V != S for {raw:?}"))?;
    for (i, row) in snf.s.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            ensure(i == j || x.is_zero(), || format!("S is not diagonal for {raw:?}"))?;
        }
    }
    let factors = snf.invariant_factors();
    ensure(factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])), || format!("divisibility chain fails: {factors:?}"))?;
    ensure(factors.iter().all(|f| f.is_positive()), || format!("non-positive invariant factor: {factors:?}"))?;
    ensure(factors.len() == oracle::rank_q(&m), || "rank of S differs from rank over Q".into())?;
    let sparse = SparseMatrix {
        rows,
        cols,
        columns: (0..cols)
            .map(|j| (0..rows).filter(|&i| raw[i][j] != 0).map(|i| (i as u32, raw[i][j])).collect())
            .collect(),
    };
    let rt = sparse_invariant_factors(&sparse);
    let torsion: Vec<BigInt> = factors.iter().filter(|f| !f.is_one()).cloned().collect();
    ensure(rt.rank == factors.len() && rt.torsion == torsion, || format!("sparse path disagrees on {raw:?}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_criteria_pass() {
        for r in [criterion_1(), criterion_2(), criterion_3(), criterion_5(), criterion_6(), criterion_8()] {
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn seeded_criteria_pass_on_a_short_run() {
        assert!(criterion_4(1, 20).passed);
        let r = criterion_9(1, 25);
        assert!(r.passed, "{r}");
    }

    #[test]
    fn block_oracle_merges_swapped_blocks() {
        let tau = CMatrix::from_ints(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let merged = coordinate_orbit_blocks(&[vec![0], vec![1], vec![2]], &[tau]);
        assert_eq!(merged, vec![vec![0, 1], vec![2]]);
    }
}
