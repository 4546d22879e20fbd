use serde::Serialize;

use super::GroupError;
use crate::cyclonum::{check_cap, lcm, CycNumber};
use crate::exactla::CMatrix;

/// A lift of a projective order-p element to an honest order-p matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderPLift {
    /// `B = α⁻¹ A` with `B^p = I`.
    pub lift: CMatrix,
    /// The chosen p-th root of `c`.
    pub alpha: CycNumber,
    /// The scalar `c` with `A^p = c·I`.
    pub power_scalar: CycNumber,
}

/// Given `A` with `A^p = c·I`, returns `B = α⁻¹ A` where `α^p = c`.
///
/// When `c = 1` the input is returned unchanged (`α = 1`). Otherwise `c` is
/// written as `ζ_o^j` with `o` its order, `α = ζ_{p·o}^j`, and the result
/// lives at conductor `lcm(m, p·o)`, which must not exceed `conductor_cap`.
pub fn lift_order_p(a: &CMatrix, p: u64, conductor_cap: u64) -> Result<OrderPLift, GroupError> {
    if !a.is_square() {
        return Err(GroupError::ShapeMismatch(format!("{}x{}", a.rows(), a.cols())));
    }
    let m = a.conductor();
    let c = a.pow(p).as_scalar().cloned().ok_or(GroupError::NotProjectiveOrderP)?;
    if c.is_one() {
        return Ok(OrderPLift { lift: a.clone(), alpha: CycNumber::one(m), power_scalar: c });
    }
    let o = c.root_of_unity_order().ok_or(GroupError::NotProjectiveOrderP)?;
    let m2 = lcm(m, p * o);
    check_cap(m2, conductor_cap)?;
    let c2 = c.embed_with_cap(m2, conductor_cap)?;
    let j = (1..o)
        .find(|&j| CycNumber::root_of_unity(o, j as i64).embed(m2).is_ok_and(|w| w == c2))
        .ok_or(GroupError::NotProjectiveOrderP)?;
    let alpha = CycNumber::root_of_unity(p * o, j as i64).embed_with_cap(m2, conductor_cap)?;
    let alpha_inv = alpha.inv()?;
    let lift = a.embed(m2)?.scale(&alpha_inv);
    Ok(OrderPLift { lift, alpha, power_scalar: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclonum::DEFAULT_CONDUCTOR_CAP;

    #[test]
    fn lifts_antidiagonal_with_square_i() {
        let i = CycNumber::root_of_unity(4, 1);
        let a = CMatrix::from_rows(vec![vec![CycNumber::zero(4), CycNumber::one(4)], vec![i, CycNumber::zero(4)]])
            .unwrap();
        let res = lift_order_p(&a, 2, DEFAULT_CONDUCTOR_CAP).unwrap();
        assert_eq!(res.alpha, CycNumber::root_of_unity(8, 1));
        let expected = CMatrix::from_rows(vec![
            vec![CycNumber::zero(8), CycNumber::root_of_unity(8, 7)],
            vec![CycNumber::root_of_unity(8, 1), CycNumber::zero(8)],
        ])
        .unwrap();
        assert_eq!(res.lift, expected);
        assert!(res.lift.pow(2).is_identity());
    }

    #[test]
    fn order_p_input_is_kept() {
        let tau = CMatrix::from_ints(1, &[&[0, 1], &[1, 0]]);
        let res = lift_order_p(&tau, 2, DEFAULT_CONDUCTOR_CAP).unwrap();
        assert_eq!(res.lift, tau);
        assert!(res.alpha.is_one());
    }

    #[test]
    fn non_scalar_power_rejected() {
        let a = CMatrix::diagonal(&[CycNumber::one(4), CycNumber::root_of_unity(4, 1)]).unwrap();
        assert_eq!(lift_order_p(&a, 2, DEFAULT_CONDUCTOR_CAP), Err(GroupError::NotProjectiveOrderP));
    }

    #[test]
    fn conductor_cap_enforced() {
        let i = CycNumber::root_of_unity(4, 1);
        let a = CMatrix::from_rows(vec![vec![CycNumber::zero(4), CycNumber::one(4)], vec![i, CycNumber::zero(4)]])
            .unwrap();
        assert!(matches!(lift_order_p(&a, 2, 4), Err(GroupError::Cyc(_))));
        // i·τ squares to −I, whose square root i is already present
        let it = CMatrix::scalar(2, &CycNumber::root_of_unity(4, 1)).mul(&CMatrix::from_ints(4, &[&[0, 1], &[1, 0]]));
        assert_eq!(lift_order_p(&it, 2, 4).unwrap().lift, CMatrix::from_ints(4, &[&[0, 1], &[1, 0]]));
    }
}
