//! Exact feasibility bounds for the construction parameters.
//!
//! The central object is the volume-counting condition
//!
//! ```text
//! 1 + Σ_{j=0}^{d-1} (q-1)^{j+1} · C(m, j)  <  q^{m-2k+2}
//! ```
//!
//! evaluated in exact arbitrary-precision arithmetic — the two sides
//! routinely overflow 128 bits — together with the simplified sufficient
//! condition `(d+1)·C(m, d-1) < q^{m-2k-d+2}` (valid for `d-1 ≤ m/2`), the
//! binary entropy function, the asymptotic rate threshold `ε₀(δ, q)`, and
//! an exact rational lower bound on the probability that k i.i.d. uniform
//! vectors form an orthogonal, distance-≥d spanning set.
//!
//! When the exponent `m-2k+2` is nonpositive the right side is kept as an
//! exact rational smaller than 1, and the condition fails, since the left
//! side is at least 2.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::gf::as_prime_power;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("simplified condition requires d - 1 <= m/2, got d = {d}, m = {m}")]
    HypothesisViolated { d: u64, m: u64 },
    #[error("domain error: {0}")]
    DomainError(String),
}

/// Exact evaluation of one feasibility condition at a parameter point,
/// together with the quantities entering the success-probability bound.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub q: u64,
    pub m: u64,
    pub k: u64,
    pub d: u64,
    /// Left side of the evaluated inequality.
    pub lhs: BigUint,
    /// Right side; a rational below 1 when the exponent is nonpositive.
    pub rhs: BigRational,
    /// Whether lhs < rhs strictly.
    pub holds: bool,
    pub theta: BigUint,
    /// ε_i = 1 - (1+θ)/q^{m-2i+2} for i = 2..=k.
    pub epsilons: Vec<BigRational>,
    /// Lower bound on the joint success probability, in [0, 1].
    pub p_jk_lower: BigRational,
}

/// Asymptotic rate parameters δ = d/m, γ = t/m, ε = k/m.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    pub delta: f64,
    pub gamma: f64,
    pub epsilon: f64,
}

impl AsymptoticParams {
    pub fn new(delta: f64, gamma: f64, epsilon: f64) -> Result<Self, BoundsError> {
        if !(0.0 < gamma && gamma < epsilon && epsilon < 1.0) {
            return Err(BoundsError::DomainError(format!(
                "need 0 < γ < ε < 1, got γ = {gamma}, ε = {epsilon}"
            )));
        }
        if !(0.0 < delta && delta < 0.5) {
            return Err(BoundsError::DomainError(format!(
                "need 0 < δ < 1/2, got δ = {delta}"
            )));
        }
        Ok(AsymptoticParams {
            delta,
            gamma,
            epsilon,
        })
    }
}

/// Binomial coefficient C(n, k) in exact arithmetic.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

fn validate(q: u64, m: u64, k: u64, d: u64) -> Result<(), BoundsError> {
    if as_prime_power(q).is_none() {
        return Err(BoundsError::InvalidParams(format!(
            "q = {q} is not a prime power"
        )));
    }
    if !(m >= k && k >= 1) {
        return Err(BoundsError::InvalidParams(format!(
            "need m >= k >= 1, got m = {m}, k = {k}"
        )));
    }
    if !(1 <= d && d <= m) {
        return Err(BoundsError::InvalidParams(format!(
            "need 1 <= d <= m, got d = {d}, m = {m}"
        )));
    }
    Ok(())
}

/// q^e as an exact rational, for any sign of e.
fn q_pow(q: u64, e: i64) -> BigRational {
    let mag = BigUint::from(q).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(BigInt::from(mag))
    } else {
        BigRational::new(BigInt::one(), BigInt::from(mag))
    }
}

/// θ = (q-1) · Σ_{j=0}^{d-1} (q-1)^j · C(m, j), exactly.
pub fn theta(q: u64, m: u64, d: u64) -> Result<BigUint, BoundsError> {
    if q < 2 {
        return Err(BoundsError::InvalidParams(format!("q = {q} too small")));
    }
    if !(1 <= d && d <= m) {
        return Err(BoundsError::InvalidParams(format!(
            "need 1 <= d <= m, got d = {d}, m = {m}"
        )));
    }
    let qm1 = BigUint::from(q - 1);
    let mut sum = BigUint::zero();
    let mut pw = BigUint::one();
    for j in 0..d {
        sum += &pw * binomial(m, j);
        pw *= &qm1;
    }
    Ok(qm1 * sum)
}

/// ε_i = 1 - (1+θ)/q^{m-2i+2} for i = 2..=k.
fn epsilons(q: u64, m: u64, k: u64, th: &BigUint) -> Vec<BigRational> {
    let one_plus_theta = BigRational::from_integer(BigInt::from(th + 1u32));
    (2..=k)
        .map(|i| {
            let e = m as i64 - 2 * i as i64 + 2;
            BigRational::one() - &one_plus_theta / q_pow(q, e)
        })
        .collect()
}

/// Lower bound q^{-C(k,2)} · Π_{i=2}^{k} ε_i · (1 - θ/q^m), clamped to zero
/// when any factor is negative.
pub fn success_probability_lower_bound(
    q: u64,
    m: u64,
    k: u64,
    d: u64,
) -> Result<BigRational, BoundsError> {
    validate(q, m, k, d)?;
    let th = theta(q, m, d)?;
    let eps = epsilons(q, m, k, &th);
    let last =
        BigRational::one() - BigRational::from_integer(BigInt::from(th)) / q_pow(q, m as i64);
    if last.is_negative() || eps.iter().any(Signed::is_negative) {
        return Ok(BigRational::zero());
    }
    let choose2 = (k * (k - 1) / 2) as i64;
    let mut p = q_pow(q, -choose2) * last;
    for e in &eps {
        p *= e;
    }
    Ok(p)
}

fn assemble_report(
    q: u64,
    m: u64,
    k: u64,
    d: u64,
    lhs: BigUint,
    rhs: BigRational,
) -> Result<BoundReport, BoundsError> {
    let holds = BigRational::from_integer(BigInt::from(lhs.clone())) < rhs;
    let th = theta(q, m, d)?;
    let eps = epsilons(q, m, k, &th);
    let p_jk_lower = success_probability_lower_bound(q, m, k, d)?;
    Ok(BoundReport {
        q,
        m,
        k,
        d,
        lhs,
        rhs,
        holds,
        theta: th,
        epsilons: eps,
        p_jk_lower,
    })
}

/// The volume-counting existence condition
/// `1 + Σ_{j=0}^{d-1} (q-1)^{j+1}·C(m,j) < q^{m-2k+2}`, exactly.
pub fn gv_condition(q: u64, m: u64, k: u64, d: u64) -> Result<BoundReport, BoundsError> {
    validate(q, m, k, d)?;
    let mut lhs = BigUint::one();
    let mut pw = BigUint::from(q - 1);
    for j in 0..d {
        lhs += &pw * binomial(m, j);
        pw *= q - 1;
    }
    let rhs = q_pow(q, m as i64 - 2 * k as i64 + 2);
    assemble_report(q, m, k, d, lhs, rhs)
}

/// The simplified sufficient condition `(d+1)·C(m, d-1) < q^{m-2k-d+2}`,
/// valid under the unimodality hypothesis `d - 1 ≤ m/2`.
pub fn simplified_condition(q: u64, m: u64, k: u64, d: u64) -> Result<BoundReport, BoundsError> {
    validate(q, m, k, d)?;
    if 2 * (d - 1) > m {
        return Err(BoundsError::HypothesisViolated { d, m });
    }
    let lhs = BigUint::from(d + 1) * binomial(m, d - 1);
    let rhs = q_pow(q, m as i64 - 2 * k as i64 - d as i64 + 2);
    assemble_report(q, m, k, d, lhs, rhs)
}

/// The tighter intermediate form `(d+1)·(q-1)^d·C(m, d-1) < q^{m-2k+2}`,
/// under the same hypothesis as [`simplified_condition`].
pub fn simplified_condition_intermediate(
    q: u64,
    m: u64,
    k: u64,
    d: u64,
) -> Result<BoundReport, BoundsError> {
    validate(q, m, k, d)?;
    if 2 * (d - 1) > m {
        return Err(BoundsError::HypothesisViolated { d, m });
    }
    let lhs = BigUint::from(d + 1) * BigUint::from(q - 1).pow(d as u32) * binomial(m, d - 1);
    let rhs = q_pow(q, m as i64 - 2 * k as i64 + 2);
    assemble_report(q, m, k, d, lhs, rhs)
}

/// Binary entropy H(δ) = -δ·log₂δ - (1-δ)·log₂(1-δ), with H(0) = H(1) = 0.
pub fn entropy(delta: f64) -> Result<f64, BoundsError> {
    if !(0.0..=1.0).contains(&delta) || delta.is_nan() {
        return Err(BoundsError::DomainError(format!(
            "entropy needs 0 <= δ <= 1, got {delta}"
        )));
    }
    if delta == 0.0 || delta == 1.0 {
        return Ok(0.0);
    }
    Ok(-delta * delta.log2() - (1.0 - delta) * (1.0 - delta).log2())
}

/// Asymptotic rate threshold ε₀(δ, q) = (1 - δ - H(δ)/log₂q)/2, for
/// 0 < δ < 1/2; rates ε = k/m strictly below it are feasible for large m.
pub fn epsilon0(delta: f64, q: u64) -> Result<f64, BoundsError> {
    if !(delta > 0.0 && delta < 0.5) {
        return Err(BoundsError::DomainError(format!(
            "rate threshold needs 0 < δ < 1/2 strictly, got {delta}"
        )));
    }
    if q < 2 {
        return Err(BoundsError::DomainError(format!("q = {q} too small")));
    }
    Ok((1.0 - delta - entropy(delta)? / (q as f64).log2()) / 2.0)
}

/// Convenience accessor: ε_k > 0, the sign condition equivalent to the
/// existence condition holding.
pub fn epsilon_k_positive(report: &BoundReport) -> bool {
    report
        .epsilons
        .last()
        .map(|e| e > &BigRational::zero())
        // k = 1 has no ε factors; the bound degenerates to 1 - θ/q^m
        .unwrap_or(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn gv_examples() {
        let r = gv_condition(2, 10, 2, 2).unwrap();
        assert_eq!(r.lhs, BigUint::from(12u32));
        assert_eq!(r.rhs, rat(256, 1));
        assert!(r.holds);

        let r = gv_condition(2, 4, 2, 3).unwrap();
        assert_eq!(r.lhs, BigUint::from(12u32));
        assert_eq!(r.rhs, rat(4, 1));
        assert!(!r.holds);

        let r = gv_condition(2, 4, 4, 1).unwrap();
        assert_eq!(r.rhs, rat(1, 4));
        assert!(!r.holds);
    }

    #[test]
    fn gv_rejects_bad_params() {
        assert!(matches!(
            gv_condition(6, 10, 2, 2),
            Err(BoundsError::InvalidParams(_))
        ));
        assert!(matches!(
            gv_condition(2, 3, 4, 1),
            Err(BoundsError::InvalidParams(_))
        ));
        assert!(matches!(
            gv_condition(2, 4, 2, 0),
            Err(BoundsError::InvalidParams(_))
        ));
    }

    #[test]
    fn gv_is_not_monotone_in_q() {
        // the verdict can flip from holds to fails as q grows: frozen
        // counterexample at (m, k, d) = (5, 1, 4)
        let r2 = gv_condition(2, 5, 1, 4).unwrap();
        assert_eq!(r2.lhs, BigUint::from(27u32));
        assert_eq!(r2.rhs, rat(32, 1));
        assert!(r2.holds);
        let r3 = gv_condition(3, 5, 1, 4).unwrap();
        assert_eq!(r3.lhs, BigUint::from(263u32));
        assert_eq!(r3.rhs, rat(243, 1));
        assert!(!r3.holds);
    }

    #[test]
    fn failure_is_preserved_when_d_or_k_grows() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 1..=14u64 {
                for k in 1..=m {
                    for d in 1..=m {
                        if gv_condition(q, m, k, d).unwrap().holds {
                            continue;
                        }
                        if d < m {
                            assert!(!gv_condition(q, m, k, d + 1).unwrap().holds);
                        }
                        if k < m {
                            assert!(!gv_condition(q, m, k + 1, d).unwrap().holds);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn simplified_examples() {
        let r = simplified_condition(2, 10, 2, 2).unwrap();
        assert_eq!(r.lhs, BigUint::from(30u32));
        assert_eq!(r.rhs, rat(64, 1));
        assert!(r.holds);

        assert_eq!(
            simplified_condition(2, 4, 2, 4).unwrap_err(),
            BoundsError::HypothesisViolated { d: 4, m: 4 }
        );
    }

    #[test]
    fn simplified_implies_gv_on_grid() {
        for q in [2u64, 3, 4, 5, 7, 8] {
            for m in 1..=14u64 {
                for k in 1..=m {
                    for d in 1..=m {
                        let Ok(simp) = simplified_condition(q, m, k, d) else {
                            continue;
                        };
                        if simp.holds {
                            assert!(
                                gv_condition(q, m, k, d).unwrap().holds,
                                "implication fails at q={q} m={m} k={k} d={d}"
                            );
                        }
                        // the intermediate form is sandwiched between the two
                        let mid = simplified_condition_intermediate(q, m, k, d).unwrap();
                        if simp.holds {
                            assert!(mid.holds);
                        }
                        if mid.holds {
                            assert!(gv_condition(q, m, k, d).unwrap().holds);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn epsilon_k_sign_matches_gv_verdict() {
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            for m in 1..=14u64 {
                for k in 2..=m {
                    for d in 1..=m {
                        let r = gv_condition(q, m, k, d).unwrap();
                        assert_eq!(
                            epsilon_k_positive(&r),
                            r.holds,
                            "mismatch at q={q} m={m} k={k} d={d}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(2, 10, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(theta(2, 17, 1).unwrap(), BigUint::from(1u32));
        assert_eq!(theta(2, 10, 2).unwrap(), BigUint::from(11u32));
        assert_eq!(theta(3, 4, 2).unwrap(), BigUint::from(18u32));
    }

    #[test]
    fn theta_matches_lhs_identity() {
        // lhs of the existence condition is 1 + θ; the two are computed by
        // separate summations
        for q in [2u64, 3, 5, 9] {
            for m in 1..=12u64 {
                for d in 1..=m {
                    let r = gv_condition(q, m, 1, d).unwrap();
                    assert_eq!(r.lhs, r.theta + 1u32);
                }
            }
        }
    }

    #[test]
    fn success_probability_k1_is_one_minus_theta_over_qm() {
        let p = success_probability_lower_bound(2, 10, 1, 2).unwrap();
        let expect = BigRational::one() - rat(11, 1024);
        assert_eq!(p, expect);
    }

    #[test]
    fn success_probability_example_exact() {
        let p = success_probability_lower_bound(2, 10, 2, 2).unwrap();
        let expect =
            (BigRational::one() - rat(12, 256)) * (BigRational::one() - rat(11, 1024)) * rat(1, 2);
        assert_eq!(p, expect);
    }

    #[test]
    fn success_probability_clamps_to_zero() {
        // infeasible point: some ε_i is negative
        let p = success_probability_lower_bound(2, 4, 2, 3).unwrap();
        assert_eq!(p, BigRational::zero());
    }

    #[test]
    fn success_probability_in_unit_interval() {
        for q in [2u64, 3, 5, 8] {
            for m in 1..=12u64 {
                for k in 1..=m {
                    for d in 1..=m {
                        let p = success_probability_lower_bound(q, m, k, d).unwrap();
                        assert!(p >= BigRational::zero() && p <= BigRational::one());
                    }
                }
            }
        }
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(entropy(0.5).unwrap(), 1.0);
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert_eq!(entropy(1.0).unwrap(), 0.0);
        assert!((entropy(0.25).unwrap() - 0.811_278_124_459_132_8).abs() < 1e-9);
        assert!(matches!(entropy(-0.1), Err(BoundsError::DomainError(_))));
        assert!(matches!(entropy(1.1), Err(BoundsError::DomainError(_))));
    }

    #[test]
    fn entropy_symmetric_and_concave() {
        for i in 1..100 {
            let d = i as f64 / 100.0;
            assert!((entropy(d).unwrap() - entropy(1.0 - d).unwrap()).abs() < 1e-12);
        }
        // midpoint concavity on a sampled grid
        for i in 1..50 {
            for j in (i + 1)..50 {
                let (a, b) = (i as f64 / 50.0, j as f64 / 50.0);
                let mid = entropy((a + b) / 2.0).unwrap();
                let avg = (entropy(a).unwrap() + entropy(b).unwrap()) / 2.0;
                assert!(mid >= avg - 1e-12);
            }
        }
    }

    #[test]
    fn epsilon0_examples() {
        // δ → 0⁺ approaches 1/2
        assert!((epsilon0(1e-12, 2).unwrap() - 0.5).abs() < 1e-9);
        // base-2 identity
        for i in 1..50 {
            let d = i as f64 / 100.0;
            let expect = (1.0 - d - entropy(d).unwrap()) / 2.0;
            assert!((epsilon0(d, 2).unwrap() - expect).abs() < 1e-12);
        }
        assert!((epsilon0(0.11, 2).unwrap() - 0.19497).abs() < 1e-4);
        assert!(matches!(epsilon0(0.5, 2), Err(BoundsError::DomainError(_))));
        assert!(matches!(epsilon0(0.0, 2), Err(BoundsError::DomainError(_))));
    }

    #[test]
    fn asymptotic_params_validation() {
        assert!(AsymptoticParams::new(0.1, 0.2, 0.3).is_ok());
        assert!(AsymptoticParams::new(0.5, 0.2, 0.3).is_err());
        assert!(AsymptoticParams::new(0.1, 0.3, 0.2).is_err());
    }

    #[test]
    fn binomial_big_values_are_exact() {
        // C(64, 32) overflows u64; check against the additive recurrence
        let mut row = vec![BigUint::one()];
        for n in 1..=64u64 {
            let mut next = vec![BigUint::one()];
            for i in 1..n as usize {
                next.push(&row[i - 1] + &row[i]);
            }
            next.push(BigUint::one());
            row = next;
            if n == 64 {
                for (i, expect) in row.iter().enumerate() {
                    assert_eq!(&binomial(64, i as u64), expect);
                }
            }
        }
        assert_eq!(binomial(5, 7), BigUint::zero());
    }

    #[test]
    fn exact_comparison_survives_128_bit_overflow() {
        // m = 64, q = 9 exceeds 128-bit range on both sides
        let r = gv_condition(9, 64, 2, 30).unwrap();
        assert!(r.lhs.to_string().len() > 40);
        assert!(r.holds);
        let r = gv_condition(9, 64, 2, 60).unwrap();
        assert!(r.lhs.to_string().len() > 60);
        assert!(!r.holds);
        let _ = r.p_jk_lower.to_f64();
    }
}
