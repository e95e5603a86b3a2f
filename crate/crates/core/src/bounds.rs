//! Exact evaluation of the drum constants behind the finiteness argument for FFTP
//! groups, and of the second-order isoperimetric sum.
//!
//! Inputs are the FFTP constant `k`, the retraction depth `ε`, the almost-convexity
//! value `C = C(2ε + 1)` and an isoperimetric profile `ρ`. All outputs are arbitrary
//! precision.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A monotone nondecreasing isoperimetric profile.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum IsoperimetricProfile {
    /// `ρ(s) = s²`.
    #[default]
    Quadratic,
    /// `ρ(s) = table[s]`; arguments past the end are errors.
    Table(Vec<BigUint>),
    /// `ρ(s) = Σ c_i s^i` with nonnegative coefficients, constant term first.
    Polynomial(Vec<u64>),
}

impl IsoperimetricProfile {
    pub fn eval(&self, s: u64) -> Result<BigUint> {
        match self {
            IsoperimetricProfile::Quadratic => Ok(BigUint::from(s) * s),
            IsoperimetricProfile::Table(values) => values
                .get(s as usize)
                .cloned()
                .ok_or(Error::ProfileOutOfRange(s)),
            IsoperimetricProfile::Polynomial(coeffs) => {
                let x = BigUint::from(s);
                Ok(coeffs
                    .iter()
                    .rev()
                    .fold(BigUint::zero(), |acc, &c| acc * &x + c))
            }
        }
    }

    /// Fails unless `ρ` is defined and nondecreasing on `0..=max_arg`.
    pub fn check_monotone(&self, max_arg: u64) -> Result<()> {
        match self {
            IsoperimetricProfile::Table(values) => {
                if (values.len() as u64) <= max_arg {
                    return Err(Error::ProfileOutOfRange(max_arg));
                }
                match values[..=max_arg as usize]
                    .windows(2)
                    .position(|p| p[1] < p[0])
                {
                    Some(i) => Err(Error::ProfileNotMonotone(i as u64 + 1)),
                    None => Ok(()),
                }
            }
            _ => Ok(()),
        }
    }
}

fn two_k_plus_two(k: u64) -> BigUint {
    BigUint::from(2 * k + 2)
}

/// Smallest ε exceeding `k/2`.
pub fn default_epsilon(k: u64) -> u64 {
    k / 2 + 1
}

fn check_epsilon(k: u64, eps: u64) -> Result<()> {
    if 2 * eps > k {
        Ok(())
    } else {
        Err(Error::EpsilonTooSmall { k, eps })
    }
}

/// Perimeter bound for a side cell: `C + 2ε + 1`.
pub fn side_perimeter(eps: u64, c_val: u64) -> u64 {
    c_val + 2 * eps + 1
}

/// `k(2k+2)C` as an exact integer; the length bound of a drum's pushed-down loop
/// times `k`.
fn k_loop(k: u64, c_val: u64) -> BigUint {
    BigUint::from(k) * two_k_plus_two(k) * c_val
}

/// `M = ⌈k(2k+2)C/2⌉ + (2k+2)·ρ(2k(2k+2)C)`.
///
/// The inequality `M >= kl/2 + (2k+2)ρ(2kl)` is re-verified for every
/// `l <= (2k+2)C` before returning.
pub fn compute_m(k: u64, eps: u64, c_val: u64, rho: &IsoperimetricProfile) -> Result<BigUint> {
    check_epsilon(k, eps)?;
    let loop_len = (2 * k + 2) * c_val;
    let arg = 2 * k * loop_len;
    rho.check_monotone(arg)?;
    let half = k_loop(k, c_val).div_ceil(&BigUint::from(2u8));
    let m = half + two_k_plus_two(k) * rho.eval(arg)?;
    let twice_m = &m * 2u8;
    for l in 0..=loop_len {
        let need = BigUint::from(k * l) + two_k_plus_two(k) * rho.eval(2 * k * l)? * 2u8;
        if twice_m < need {
            return Err(Error::ProfileNotMonotone(2 * k * l));
        }
    }
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrumBudget {
    #[serde(with = "big_string")]
    pub top: BigUint,
    #[serde(with = "big_string")]
    pub sides: BigUint,
    #[serde(with = "big_string")]
    pub base1: BigUint,
    #[serde(with = "big_string")]
    pub base2: BigUint,
    #[serde(with = "big_string")]
    pub base3: BigUint,
    #[serde(with = "big_string")]
    pub total: BigUint,
}

/// Per-category 2-cell counts of one drum.
pub fn drum_budget(
    k: u64,
    eps: u64,
    c_val: u64,
    rho: &IsoperimetricProfile,
    m: &BigUint,
) -> Result<DrumBudget> {
    check_epsilon(k, eps)?;
    let kl = k_loop(k, c_val);
    let twice_m = m * 2u8;
    if twice_m < kl {
        return Err(Error::NegativeBase2);
    }
    let top = BigUint::one();
    let sides = two_k_plus_two(k) * rho.eval(side_perimeter(eps, c_val))?;
    let base1 = two_k_plus_two(k) * m;
    let base2 = &twice_m * (&twice_m - &kl);
    let base3 = rho.eval(2 * k * (2 * k + 2) * c_val)?;
    let total = &top + &sides + &base1 + &base2 + &base3;
    Ok(DrumBudget {
        top,
        sides,
        base1,
        base2,
        base3,
        total,
    })
}

/// `b = (2k+2)M + 2M(2M - k(2k+2)C) + ρ(2k(2k+2)C)`, the base size of a drum.
pub fn compute_b(
    k: u64,
    eps: u64,
    c_val: u64,
    rho: &IsoperimetricProfile,
    m: &BigUint,
) -> Result<BigUint> {
    let budget = drum_budget(k, eps, c_val, rho, m)?;
    Ok(budget.base1 + budget.base2 + budget.base3)
}

/// `Σ_{i=0}^{(2k+2)N} N·b^i`, the 3-cell count filling a 2-sphere of area `N`.
pub fn second_order_bound(area: u64, k: u64, b: &BigUint) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::ProvisoViolated(0));
    }
    if area == 0 || b.is_zero() {
        return Err(Error::Precondition(
            "second-order bound needs N >= 1 and b >= 1".into(),
        ));
    }
    let top = (2 * k + 2) * area;
    let mut acc = BigUint::zero();
    for _ in 0..=top {
        acc = acc * b + 1u8;
    }
    Ok(acc * area)
}

/// Every named constant of the drum construction for one choice of `(k, ε, C, ρ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrumConstants {
    pub k: u64,
    pub epsilon: u64,
    pub c_val: u64,
    pub side_perimeter: u64,
    /// `(2k+2)·C`, the longest pushed-down loop.
    pub base_loop_bound: u64,
    #[serde(with = "big_string")]
    pub m: BigUint,
    pub budget: DrumBudget,
    #[serde(with = "big_string")]
    pub b: BigUint,
    /// Terms per unit area in the second-order sum: `(2k+2)`.
    pub second_order_terms_per_area: u64,
}

impl DrumConstants {
    /// `eps` defaults to the smallest integer above `k/2`.
    pub fn compute(
        k: u64,
        eps: Option<u64>,
        c_val: u64,
        rho: &IsoperimetricProfile,
    ) -> Result<Self> {
        let epsilon = eps.unwrap_or_else(|| default_epsilon(k));
        let m = compute_m(k, epsilon, c_val, rho)?;
        let budget = drum_budget(k, epsilon, c_val, rho, &m)?;
        let b = compute_b(k, epsilon, c_val, rho, &m)?;
        Ok(DrumConstants {
            k,
            epsilon,
            c_val,
            side_perimeter: side_perimeter(epsilon, c_val),
            base_loop_bound: (2 * k + 2) * c_val,
            m,
            budget,
            b,
            second_order_terms_per_area: 2 * k + 2,
        })
    }
}

/// Serde adapter writing big integers as decimal strings.
pub mod big_string {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn side_perimeter_examples() {
        assert_eq!(side_perimeter(1, 3), 6);
        assert_eq!(side_perimeter(1, 0), 3);
        assert_eq!(side_perimeter(2, 5), 10);
    }

    #[test]
    fn m_examples() {
        let q = IsoperimetricProfile::Quadratic;
        assert_eq!(compute_m(1, 1, 3, &q).unwrap(), big(2310));
        assert_eq!(compute_m(1, 1, 0, &q).unwrap(), big(0));
        assert_eq!(compute_m(2, 2, 4, &q).unwrap(), big(55320));
    }

    #[test]
    fn epsilon_must_exceed_half_k() {
        let q = IsoperimetricProfile::Quadratic;
        assert_eq!(
            compute_m(2, 1, 3, &q),
            Err(Error::EpsilonTooSmall { k: 2, eps: 1 })
        );
        assert_eq!(default_epsilon(2), 2);
        assert_eq!(default_epsilon(3), 2);
        assert!(compute_m(3, 2, 1, &q).is_ok());
    }

    #[test]
    fn budget_example() {
        let q = IsoperimetricProfile::Quadratic;
        let budget = drum_budget(1, 1, 3, &q, &big(2310)).unwrap();
        assert_eq!(budget.top, big(1));
        assert_eq!(budget.sides, big(144));
        assert_eq!(budget.base1, big(9240));
        assert_eq!(budget.base2, big(4620 * 4608));
        assert_eq!(budget.base2, big(21_288_960));
        assert_eq!(budget.base3, big(576));
        let sum = &budget.top + &budget.sides + &budget.base1 + &budget.base2 + &budget.base3;
        assert_eq!(budget.total, sum);
    }

    #[test]
    fn empty_loop_budget() {
        let q = IsoperimetricProfile::Quadratic;
        let budget = drum_budget(1, 1, 0, &q, &big(0)).unwrap();
        assert_eq!(
            (
                budget.top,
                budget.sides,
                budget.base1,
                budget.base2,
                budget.base3
            ),
            (big(1), big(4 * 9), big(0), big(0), big(0))
        );
        assert_eq!(compute_b(1, 1, 0, &q, &big(0)).unwrap(), big(0));
    }

    #[test]
    fn negative_base2_rejected() {
        let q = IsoperimetricProfile::Quadratic;
        assert_eq!(drum_budget(1, 1, 3, &q, &big(5)), Err(Error::NegativeBase2));
    }

    #[test]
    fn second_order_examples() {
        assert_eq!(second_order_bound(1, 1, &big(1)).unwrap(), big(5));
        assert_eq!(second_order_bound(1, 1, &big(2)).unwrap(), big(31));
        assert_eq!(
            second_order_bound(2, 0, &big(2)),
            Err(Error::ProvisoViolated(0))
        );
    }

    #[test]
    fn table_profiles() {
        let t = IsoperimetricProfile::Table(vec![big(0), big(1), big(1), big(4)]);
        assert_eq!(t.eval(3).unwrap(), big(4));
        assert_eq!(t.eval(4), Err(Error::ProfileOutOfRange(4)));
        assert!(t.check_monotone(3).is_ok());
        let bad = IsoperimetricProfile::Table(vec![big(0), big(2), big(1)]);
        assert_eq!(bad.check_monotone(2), Err(Error::ProfileNotMonotone(2)));
        // needs ρ up to 2k(2k+2)C = 24
        assert_eq!(compute_m(1, 1, 3, &t), Err(Error::ProfileOutOfRange(24)));
    }

    #[test]
    fn polynomial_profile() {
        let p = IsoperimetricProfile::Polynomial(vec![1, 0, 2]);
        assert_eq!(p.eval(3).unwrap(), big(19));
        assert_eq!(
            IsoperimetricProfile::Polynomial(vec![0, 0, 1])
                .eval(24)
                .unwrap(),
            IsoperimetricProfile::Quadratic.eval(24).unwrap()
        );
    }
}
