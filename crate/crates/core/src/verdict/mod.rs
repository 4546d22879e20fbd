//! The decision engine for fixed points of finite p-subgroups of `U(n)` on
//! the unitary partition complex.
//!
//! Given generators of a finite p-group `H`, [`analyze`] looks at the image
//! `H̄` in `PU(n)`. When `H̄` is not elementary abelian it picks a central
//! order-p element `V` of the Frattini subgroup of `H̄`, lifts it to an
//! order-p matrix `B`, and reports `J = ⟨scalars(H), B⟩` together with the
//! partition `μ` of `C^n` into the isotypic components of `J` (route A).
//! When `H̄` is elementary abelian and `p ∤ n` the same construction applies
//! to any central order-p element (route B). The witness is re-checked from
//! scratch by [`verify_witness`].

mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cyclonum::{is_prime, CycError, CycNumber, DEFAULT_CONDUCTOR_CAP};
use crate::exactla::{CMatrix, CSubspace, LinAlgError};
use crate::matgroup::{lift_order_p, FiniteMatrixGroup, GroupError, DEFAULT_CLOSURE_CAP};
use crate::repdecomp::{isotypic_decomposition, RepError};
use crate::SCHEMA_VERSION;

pub use verify::{verify_witness, CheckOutcome, WitnessVerification};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisConfig {
    pub closure_cap: usize,
    pub conductor_cap: u64,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig { closure_cap: DEFAULT_CLOSURE_CAP, conductor_cap: DEFAULT_CONDUCTOR_CAP }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { p: u64, order: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error("internal error: {0}")]
    Internal(String),
}

impl From<LinAlgError> for AnalysisError {
    fn from(e: LinAlgError) -> Self {
        AnalysisError::Group(e.into())
    }
}

impl From<CycError> for AnalysisError {
    fn from(e: CycError) -> Self {
        AnalysisError::Group(e.into())
    }
}

impl AnalysisError {
    /// Short machine-readable name of the error class.
    pub fn kind(&self) -> &'static str {
        match self {
            AnalysisError::NotPrime(_) => "NotPrime",
            AnalysisError::NotAPGroup { .. } => "NotAPGroup",
            AnalysisError::Group(GroupError::CapExceeded { .. }) => "CapExceeded",
            AnalysisError::Group(GroupError::Cyc(CycError::ConductorOverflow { .. })) => "ConductorOverflow",
            AnalysisError::Group(GroupError::NotUnitary { .. }) => "NotUnitary",
            AnalysisError::Group(_) => "GroupError",
            AnalysisError::Rep(_) => "RepresentationError",
            AnalysisError::Internal(_) => "InternalError",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    ContractibleByMainTheorem,
    ContractibleByDimensionCriterion,
    InconclusiveProjectiveElementaryAbelian,
    InconclusiveTrivialProjectiveImage,
}

impl Verdict {
    pub fn is_contractible(self) -> bool {
        matches!(self, Verdict::ContractibleByMainTheorem | Verdict::ContractibleByDimensionCriterion)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::ContractibleByMainTheorem => "ContractibleByMainTheorem",
            Verdict::ContractibleByDimensionCriterion => "ContractibleByDimensionCriterion",
            Verdict::InconclusiveProjectiveElementaryAbelian => "InconclusiveProjectiveElementaryAbelian",
            Verdict::InconclusiveTrivialProjectiveImage => "InconclusiveTrivialProjectiveImage",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    /// `H̄` not elementary abelian; `V` inside the Frattini subgroup.
    A,
    /// `H̄` elementary abelian and `p ∤ n`. A derived criterion: a transitive
    /// `Z/p` action on the classes would force `p` classes of equal dimension.
    B,
}

/// Everything needed to re-derive a contractibility verdict. All matrices
/// and subspaces are written at `conductor`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub conductor: u64,
    /// An element of `H` whose projective class generates `V`.
    pub v_representative: CMatrix,
    /// The p-th root of `c` where `v_representative^p = c·I`.
    pub alpha: CycNumber,
    /// `B = α⁻¹ · v_representative`, of order `p`.
    pub lift_b: CMatrix,
    pub j_generators: Vec<CMatrix>,
    /// Classes of `μ`, the isotypic components of `J`, in canonical order.
    /// Kept as raw subspaces so that a malformed witness is representable.
    pub mu: Vec<CSubspace>,
    pub route: Route,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema_version: String,
    pub verdict: Verdict,
    pub route: Option<Route>,
    pub witness: Option<Witness>,
    pub diagnostics: Vec<String>,
}

impl AnalysisReport {
    fn inconclusive(verdict: Verdict, diagnostics: Vec<String>) -> Self {
        AnalysisReport { schema_version: SCHEMA_VERSION.into(), verdict, route: None, witness: None, diagnostics }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Runs the decision pipeline on the group generated by `generators`.
pub fn analyze(generators: &[CMatrix], p: u64, config: &AnalysisConfig) -> Result<AnalysisReport, AnalysisError> {
    if !is_prime(p) {
        return Err(AnalysisError::NotPrime(p));
    }
    let h = FiniteMatrixGroup::generate(generators, config.closure_cap)?;
    let mut diag = vec![format!("H: order {} in U({}) at conductor {}", h.order(), h.n(), h.conductor())];
    if !h.is_p_group(p) {
        return Err(AnalysisError::NotAPGroup { p, order: h.order() });
    }
    diag.push(format!("H is a {p}-group"));
    let scalars = h.scalar_subgroup();
    diag.push(format!("scalar subgroup: order {}", scalars.len()));
    let hbar = h.projective_image();
    let q = hbar.group();
    let elementary = q.is_elementary_abelian(p);
    diag.push(format!(
        "projective image: order {}, abelian {}, elementary abelian {}",
        q.order(),
        q.is_abelian(),
        elementary
    ));
    if q.is_trivial() {
        diag.push("H consists of scalar matrices".into());
        return Ok(AnalysisReport::inconclusive(Verdict::InconclusiveTrivialProjectiveImage, diag));
    }

    let n = h.n();
    let (route, v) = if !elementary {
        let frattini = q.power_commutator_subgroup(p);
        diag.push(format!("Frattini subgroup of the projective image: order {}", frattini.len()));
        let v = hbar.central_order_p_in_frattini_kernel(p)?;
        diag.push(format!("V: central element of order {p} in the Frattini subgroup (class {v})"));
        (Route::A, v)
    } else if (n as u64).is_multiple_of(p) {
        diag.push(format!("projective image is elementary abelian and {p} divides n = {n}"));
        return Ok(AnalysisReport::inconclusive(Verdict::InconclusiveProjectiveElementaryAbelian, diag));
    } else {
        let v = q
            .elements_of_order(p)
            .into_iter()
            .next()
            .ok_or_else(|| AnalysisError::Internal("nontrivial p-group without elements of order p".into()))?;
        diag.push(format!("V: first element of order {p} in the elementary abelian projective image (class {v})"));
        diag.push(format!("{p} does not divide n = {n}; route B is a derived dimension criterion"));
        (Route::B, v)
    };

    let rep = h.element(hbar.representative(v)).clone();
    let lift = lift_order_p(&rep, p, config.conductor_cap)?;
    diag.push(format!("lift: A^{p} = c·I with c = {}, alpha = {}", lift.power_scalar, lift.alpha));

    let mut j_gens = Vec::new();
    if let Some(&s) = scalars.iter().max_by_key(|&&i| (h.table().element_order(i), std::cmp::Reverse(i))) {
        if !h.element(s).is_identity() {
            j_gens.push(h.element(s).clone());
        }
    }
    j_gens.push(lift.lift.clone());
    let j = FiniteMatrixGroup::generate(&j_gens, config.closure_cap)?;
    if j.order() != scalars.len() * p as usize {
        return Err(AnalysisError::Internal(format!(
            "J has order {}, expected {}",
            j.order(),
            scalars.len() * p as usize
        )));
    }
    diag.push(format!("J = <scalars, B>: order {}, abelian {}", j.order(), j.is_abelian()));

    let dec = isotypic_decomposition(&j)?;
    if !dec.is_polytypic() {
        return Err(AnalysisError::Internal("J = <scalars, B> is isotypic".into()));
    }
    let m = dec.conductor;
    crate::cyclonum::check_cap(m, config.conductor_cap)?;
    let dims: Vec<usize> = dec.components.iter().map(|c| c.subspace.dim()).collect();
    diag.push(format!("isotypic components of J: {} with dimensions {:?}", dims.len(), dims));

    let mut mu: Vec<CSubspace> = dec.components.into_iter().map(|c| c.subspace).collect();
    mu.sort();
    let witness = Witness {
        conductor: m,
        v_representative: rep.embed(m)?,
        alpha: lift.alpha.embed(m)?,
        lift_b: lift.lift.embed(m)?,
        j_generators: j.generators().iter().map(|g| g.embed(m)).collect::<Result<_, _>>()?,
        mu,
        route,
    };
    let verdict = match route {
        Route::A => Verdict::ContractibleByMainTheorem,
        Route::B => Verdict::ContractibleByDimensionCriterion,
    };
    Ok(AnalysisReport {
        schema_version: SCHEMA_VERSION.into(),
        verdict,
        route: Some(route),
        witness: Some(witness),
        diagnostics: diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orthopart::{ClassPermutation, OrthoPartition};

    fn i4() -> CycNumber {
        CycNumber::root_of_unity(4, 1)
    }

    fn tau() -> CMatrix {
        CMatrix::from_ints(1, &[&[0, 1], &[1, 0]])
    }

    fn tau3() -> CMatrix {
        CMatrix::from_ints(1, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])
    }

    fn d4_gens() -> Vec<CMatrix> {
        vec![CMatrix::diagonal(&[CycNumber::one(4), i4()]).unwrap(), tau()]
    }

    fn cfg() -> AnalysisConfig {
        AnalysisConfig::default()
    }

    #[test]
    fn three_dimensional_swap_is_contractible_by_dimension() {
        let r = analyze(&[tau3()], 2, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::ContractibleByDimensionCriterion);
        assert_eq!(r.route, Some(Route::B));
        let w = r.witness.unwrap();
        let mut expected = vec![
            CSubspace::span_ints(3, w.conductor, &[&[1, 1, 0], &[0, 0, 1]]),
            CSubspace::span_ints(3, w.conductor, &[&[1, -1, 0]]),
        ];
        expected.sort();
        assert_eq!(w.mu, expected);
    }

    #[test]
    fn swap_in_dimension_two_is_inconclusive() {
        let r = analyze(&[tau()], 2, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::InconclusiveProjectiveElementaryAbelian);
        assert!(r.witness.is_none());
    }

    #[test]
    fn dihedral_image_goes_through_route_a() {
        let h = d4_gens();
        let r = analyze(&h, 2, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::ContractibleByMainTheorem);
        let w = r.witness.as_ref().unwrap();
        // V is the class of diag(1, -1)
        let d = CMatrix::diagonal(&[CycNumber::one(4), CycNumber::from_int(-1, 4)]).unwrap();
        let ratio = w.v_representative.mul(&d.embed(w.conductor).unwrap().unitary_inverse());
        assert!(ratio.as_scalar().is_some());
        let mut axes = vec![CSubspace::axis(2, w.conductor, 0), CSubspace::axis(2, w.conductor, 1)];
        axes.sort();
        assert_eq!(w.mu, axes);
        let check = verify_witness(&h, 2, &r, &cfg());
        assert!(check.passed(), "{check:?}");
    }

    #[test]
    fn scalar_group_is_trivial_projectively() {
        let r = analyze(&[CMatrix::scalar(2, &i4())], 2, &cfg()).unwrap();
        assert_eq!(r.verdict, Verdict::InconclusiveTrivialProjectiveImage);
    }

    #[test]
    fn precondition_errors() {
        assert_eq!(analyze(&[tau()], 4, &cfg()), Err(AnalysisError::NotPrime(4)));
        assert_eq!(analyze(&[tau()], 3, &cfg()), Err(AnalysisError::NotAPGroup { p: 3, order: 2 }));
        let tiny = AnalysisConfig { closure_cap: 4, ..cfg() };
        assert_eq!(analyze(&d4_gens(), 2, &tiny).unwrap_err().kind(), "CapExceeded");
    }

    #[test]
    fn v_does_not_act_transitively_on_weakly_fixed_partitions() {
        let h = d4_gens();
        let r = analyze(&h, 2, &cfg()).unwrap();
        let w = r.witness.unwrap();
        let axes = OrthoPartition::coordinate(2, 1, &[&[0], &[1]]).unwrap();
        assert!(axes.is_weakly_fixed(&h).unwrap());
        let perm = axes.induced_class_permutation(&w.lift_b).unwrap();
        assert_eq!(perm, ClassPermutation::Permutation(vec![0, 1]));
    }

    #[test]
    fn report_is_deterministic_and_round_trips() {
        let a = analyze(&d4_gens(), 2, &cfg()).unwrap().to_json();
        let b = analyze(&d4_gens(), 2, &cfg()).unwrap().to_json();
        assert_eq!(a, b);
        let back: AnalysisReport = serde_json::from_str(&a).unwrap();
        assert_eq!(back.to_json(), a);
    }
}
