//! Independent re-derivation of a witness, starting again from the
//! generators of `H`.

use std::collections::HashSet;

use serde::Serialize;

use super::{AnalysisConfig, AnalysisReport, Route, Verdict, Witness};
use crate::cyclonum::lcm;
use crate::exactla::{CMatrix, CSubspace};
use crate::matgroup::FiniteMatrixGroup;
use crate::orthopart::OrthoPartition;
use crate::repdecomp::{is_isotypic_subspace, isotypic_decomposition};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: char,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessVerification {
    pub checks: Vec<CheckOutcome>,
}

impl WitnessVerification {
    pub fn passed(&self) -> bool {
        self.checks.len() == 6 && self.checks.iter().all(|c| c.passed)
    }

    /// The first failing check, if any.
    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }

    fn all_failed(detail: &str) -> Self {
        let checks = ('a'..='f').map(|check| CheckOutcome { check, passed: false, detail: detail.into() }).collect();
        WitnessVerification { checks }
    }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Working data shared by the checks, everything at one conductor.
struct Setting {
    h: FiniteMatrixGroup,
    p: u64,
    v_rep: CMatrix,
    b: CMatrix,
    j: Result<FiniteMatrixGroup, String>,
    w: Witness,
}

/// Re-checks every hypothesis behind a contractibility verdict:
///
/// * (a) `V̄` has order p, is central in `H̄`, and for route A lies in the
///   Frattini subgroup of `H̄`;
/// * (b) `B^p = I`, `B = α⁻¹·A`, and `B̄ = V̄`;
/// * (c) `J` is generated by the scalars of `H` and `B` and has order
///   `|scalars|·p`;
/// * (d) `J` is polytypic;
/// * (e) `μ` is a proper partition, equal to the isotypic decomposition of
///   `J`, strongly `J`-fixed, classwise isotypic and weakly `H`-fixed;
/// * (f) the route and verdict agree, and for route B `p ∤ n`.
pub fn verify_witness(
    generators: &[CMatrix],
    p: u64,
    report: &AnalysisReport,
    config: &AnalysisConfig,
) -> WitnessVerification {
    let Some(w) = &report.witness else {
        return WitnessVerification::all_failed("report carries no witness");
    };
    match setting(generators, p, w, config) {
        Ok(s) => {
            let checks = [
                ('a', check_a(&s)),
                ('b', check_b(&s)),
                ('c', check_c(&s)),
                ('d', check_d(&s)),
                ('e', check_e(&s)),
                ('f', check_f(&s, report)),
            ];
            let checks = checks
                .into_iter()
                .map(|(check, r)| match r {
                    Ok(detail) => CheckOutcome { check, passed: true, detail },
                    Err(detail) => CheckOutcome { check, passed: false, detail },
                })
                .collect();
            WitnessVerification { checks }
        }
        Err(e) => WitnessVerification::all_failed(&e),
    }
}

fn setting(generators: &[CMatrix], p: u64, w: &Witness, config: &AnalysisConfig) -> Result<Setting, String> {
    let m = generators.iter().map(CMatrix::conductor).fold(w.conductor, lcm);
    let embed = |a: &CMatrix| a.embed(m).map_err(|e| e.to_string());
    let gens = generators.iter().map(embed).collect::<Result<Vec<_>, _>>()?;
    let h = FiniteMatrixGroup::generate(&gens, config.closure_cap).map_err(|e| e.to_string())?;
    let mut w = w.clone();
    w.j_generators = w.j_generators.iter().map(embed).collect::<Result<_, _>>()?;
    w.mu = w.mu.iter().map(|c| c.embed(m).map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    w.alpha = w.alpha.embed(m).map_err(|e| e.to_string())?;
    let j = FiniteMatrixGroup::generate(&w.j_generators, config.closure_cap).map_err(|e| e.to_string());
    Ok(Setting { v_rep: embed(&w.v_representative)?, b: embed(&w.lift_b)?, h, p, j, w })
}

fn check_a(s: &Setting) -> Check {
    let idx = s.h.index_of(&s.v_rep).ok_or("V representative is not an element of H")?;
    let hbar = s.h.projective_image();
    let q = hbar.group();
    let v = hbar.project(idx);
    let order = q.element_order(v);
    ensure(order == s.p, format!("V has order {order} in the projective image, expected {}", s.p))?;
    ensure(q.center().contains(&v), "V is not central in the projective image")?;
    if s.w.route == Route::A {
        ensure(
            q.power_commutator_subgroup(s.p).contains(&v),
            "V is not in the kernel of the projective image onto its Frattini quotient",
        )?;
        return Ok(format!("V central of order {} in the Frattini subgroup of a group of order {}", s.p, q.order()));
    }
    Ok(format!("V central of order {} in a group of order {}", s.p, q.order()))
}

fn check_b(s: &Setting) -> Check {
    let b = &s.b;
    ensure(b.is_unitary().map_err(|e| e.to_string())?, "B is not unitary")?;
    ensure(b.pow(s.p).is_identity(), format!("B^{} is not the identity", s.p))?;
    let inv = s.w.alpha.inv().map_err(|e| e.to_string())?;
    ensure(s.v_rep.scale(&inv) == *b, "B differs from alpha^-1 times the V representative")?;
    ensure(b.as_scalar().is_none(), "B is scalar, so its class is trivial")?;
    Ok(format!("B^{} = I and B = alpha^-1 A", s.p))
}

fn check_c(s: &Setting) -> Check {
    let j = s.j.as_ref().map_err(Clone::clone)?;
    let scalars = s.h.scalar_subgroup();
    let expected = scalars.len() * s.p as usize;
    ensure(j.order() == expected, format!("J has order {}, expected {expected}", j.order()))?;
    ensure(j.index_of(&s.b).is_some(), "B is not in J")?;
    for &i in &scalars {
        ensure(j.index_of(s.h.element(i)).is_some(), "a scalar of H is missing from J")?;
    }
    ensure(j.is_abelian(), "J is not abelian")?;
    let powers: Vec<CMatrix> = (0..s.p).map(|k| s.b.pow(k).unitary_inverse()).collect();
    for x in j.elements() {
        ensure(
            powers.iter().any(|bk| x.mul(bk).as_scalar().is_some()),
            "J has an element outside scalars times <B>",
        )?;
    }
    let b_inv = s.b.unitary_inverse();
    for g in s.h.generators() {
        let c = g.mul(&s.b).mul(&g.unitary_inverse()).mul(&b_inv);
        ensure(c.as_scalar().is_some(), "conjugating B by a generator of H leaves scalars times B")?;
    }
    Ok(format!("J = <scalars(H), B> of order {expected}, normal in H up to scalars"))
}

fn check_d(s: &Setting) -> Check {
    let j = s.j.as_ref().map_err(Clone::clone)?;
    let dec = isotypic_decomposition(j).map_err(|e| e.to_string())?;
    ensure(dec.is_polytypic(), "J is isotypic")?;
    Ok(format!("J has {} isotypic components", dec.len()))
}

fn check_e(s: &Setting) -> Check {
    let j = s.j.as_ref().map_err(Clone::clone)?;
    let mu = OrthoPartition::new(s.w.mu.clone()).map_err(|e| format!("mu is not a proper partition: {e}"))?;
    let dec = isotypic_decomposition(j).map_err(|e| e.to_string())?;
    let m = lcm(mu.conductor(), dec.conductor);
    let mine: HashSet<CSubspace> = mu.embed(m).map_err(|e| e.to_string())?.classes().iter().cloned().collect();
    let theirs: HashSet<CSubspace> = dec
        .components
        .iter()
        .map(|c| c.subspace.embed(m))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    ensure(mine == theirs, "mu differs from the isotypic decomposition of J")?;
    ensure(mu.is_strongly_fixed(j.generators()).map_err(|e| e.to_string())?, "mu is not strongly J-fixed")?;
    for class in mu.classes() {
        ensure(is_isotypic_subspace(class, j).map_err(|e| e.to_string())?, "a class of mu is not J-isotypic")?;
    }
    ensure(mu.is_weakly_fixed(s.h.generators()).map_err(|e| e.to_string())?, "mu is not weakly H-fixed")?;
    Ok(format!("mu has {} classes with dimensions {:?}", mu.len(), mu.dimension_profile()))
}

fn check_f(s: &Setting, report: &AnalysisReport) -> Check {
    ensure(report.route == Some(s.w.route), "report route differs from witness route")?;
    let expected = match s.w.route {
        Route::A => Verdict::ContractibleByMainTheorem,
        Route::B => Verdict::ContractibleByDimensionCriterion,
    };
    ensure(report.verdict == expected, format!("verdict {} does not match route", report.verdict))?;
    if s.w.route == Route::A {
        return Ok("route A: no dimension condition".into());
    }
    let n = s.h.n() as u64;
    ensure(!n.is_multiple_of(s.p), format!("{} divides n = {n}", s.p))?;
    Ok(format!("{} does not divide n = {n}", s.p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclonum::CycNumber;
    use crate::verdict::analyze;

    fn route_a() -> (Vec<CMatrix>, AnalysisReport) {
        let gens = vec![
            CMatrix::diagonal(&[CycNumber::one(4), CycNumber::root_of_unity(4, 1)]).unwrap(),
            CMatrix::from_ints(1, &[&[0, 1], &[1, 0]]),
        ];
        let r = analyze(&gens, 2, &AnalysisConfig::default()).unwrap();
        (gens, r)
    }

    #[test]
    fn genuine_witnesses_pass() {
        let (gens, r) = route_a();
        assert!(verify_witness(&gens, 2, &r, &AnalysisConfig::default()).passed());
        let t3 = vec![CMatrix::from_ints(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])];
        let r = analyze(&t3, 2, &AnalysisConfig::default()).unwrap();
        assert!(verify_witness(&t3, 2, &r, &AnalysisConfig::default()).passed());
    }

    #[test]
    fn improper_mu_fails_e() {
        let (gens, mut r) = route_a();
        let w = r.witness.as_mut().unwrap();
        w.mu = vec![CSubspace::full(2, w.conductor)];
        let v = verify_witness(&gens, 2, &r, &AnalysisConfig::default());
        assert_eq!(v.first_failure().unwrap().check, 'e');
    }

    #[test]
    fn unlifted_b_fails_b() {
        let (gens, mut r) = route_a();
        let w = r.witness.as_mut().unwrap();
        // a representative A with A^2 = -I
        w.lift_b = CMatrix::from_ints(4, &[&[0, 1], &[-1, 0]]).embed(w.conductor).unwrap();
        w.v_representative = w.lift_b.clone();
        let v = verify_witness(&gens, 2, &r, &AnalysisConfig::default());
        assert!(!v.checks.iter().find(|c| c.check == 'b').unwrap().passed);
    }

    #[test]
    fn missing_witness_fails_everything() {
        let gens = vec![CMatrix::from_ints(1, &[&[0, 1], &[1, 0]])];
        let r = analyze(&gens, 2, &AnalysisConfig::default()).unwrap();
        let v = verify_witness(&gens, 2, &r, &AnalysisConfig::default());
        assert!(v.checks.iter().all(|c| !c.passed));
    }

    #[test]
    fn wrong_route_label_fails_f() {
        let (gens, mut r) = route_a();
        r.verdict = Verdict::ContractibleByDimensionCriterion;
        let v = verify_witness(&gens, 2, &r, &AnalysisConfig::default());
        assert_eq!(v.first_failure().unwrap().check, 'f');
    }
}
