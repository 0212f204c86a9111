//! Confluent and generalized hypergeometric power series.

use crate::error::{domain, Error, Result};

const TERM_CAP: usize = 100_000;
const STOP_RATIO: f64 = 1e-16;
/// Relative cancellation loss above which a result is flagged.
pub const CONDITION_LIMIT: f64 = 1e-6;

/// Value of a hypergeometric series together with its conditioning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesValue {
    pub value: f64,
    /// Σ|tᵢ| / |Σ tᵢ|: the cancellation amplification of the summation.
    pub condition: f64,
    pub terms: usize,
}

impl SeriesValue {
    /// Estimated relative precision lost to cancellation.
    pub fn cancellation_loss(&self) -> f64 {
        self.condition * f64::EPSILON
    }

    /// True when cancellation loss exceeds [`CONDITION_LIMIT`].
    pub fn ill_conditioned(&self) -> bool {
        self.cancellation_loss() > CONDITION_LIMIT
    }
}

fn check_lower(b: f64, name: &str) -> Result<()> {
    if !b.is_finite() {
        return domain(format!("{name} must be finite"));
    }
    if b <= 0.0 && b.fract() == 0.0 {
        return domain(format!("{name} = {b} is a non-positive integer"));
    }
    Ok(())
}

/// Sum Σ tₖ with t₀ = 1 and t_{k+1} = tₖ · ratio(k).
fn sum_series(z: f64, ratio: impl Fn(f64) -> f64, label: &str) -> Result<SeriesValue> {
    if z == 0.0 {
        return Ok(SeriesValue { value: 1.0, condition: 1.0, terms: 1 });
    }
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut comp = 0.0_f64;
    let mut abs_sum = 1.0_f64;
    for k in 0..TERM_CAP {
        term *= ratio(k as f64) * z;
        if term == 0.0 {
            return Ok(finish(sum + comp, abs_sum, k + 1));
        }
        // Neumaier compensation keeps the alternating case honest
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
        abs_sum += term.abs();
        if !sum.is_finite() {
            return Err(Error::Overflow(format!("{label} partial sum overflowed at term {k}")));
        }
        if term.abs() < STOP_RATIO * (sum + comp).abs() {
            return Ok(finish(sum + comp, abs_sum, k + 2));
        }
    }
    Err(Error::NonConvergence(format!(
        "{label} did not meet its tolerance within {TERM_CAP} terms"
    )))
}

fn finish(value: f64, abs_sum: f64, terms: usize) -> SeriesValue {
    let condition = if value == 0.0 { f64::INFINITY } else { abs_sum / value.abs() };
    SeriesValue { value, condition, terms }
}

/// Kummer's function ₁F₁(a; b; z) by its power series.
pub fn hyp1f1(a: f64, b: f64, z: f64) -> Result<SeriesValue> {
    check_lower(b, "hyp1f1 lower parameter b")?;
    sum_series(z, |k| (a + k) / ((b + k) * (k + 1.0)), "1F1")
}

/// ₂F₂(a₁, a₂; b₁, b₂; z) by its power series.
pub fn hyp2f2(a1: f64, a2: f64, b1: f64, b2: f64, z: f64) -> Result<SeriesValue> {
    check_lower(b1, "hyp2f2 lower parameter b1")?;
    check_lower(b2, "hyp2f2 lower parameter b2")?;
    sum_series(
        z,
        |k| (a1 + k) * (a2 + k) / ((b1 + k) * (b2 + k) * (k + 1.0)),
        "2F2",
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::upper_incomplete_gamma;
    use approx::assert_relative_eq;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use num_traits::ToPrimitive;

    #[test]
    fn zero_argument_is_one() {
        assert_eq!(hyp1f1(2.5, 3.5, 0.0).unwrap().value, 1.0);
        assert_eq!(hyp2f2(1.0, 2.0, 3.0, 4.0, 0.0).unwrap().value, 1.0);
    }

    #[test]
    fn kummer_elementary_identities() {
        let e = std::f64::consts::E;
        assert_relative_eq!(hyp1f1(1.0, 2.0, 1.0).unwrap().value, e - 1.0, max_relative = 1e-15);
        // ₁F₁(a; a; z) = e^z
        assert_relative_eq!(hyp1f1(0.7, 0.7, -3.0).unwrap().value, (-3.0f64).exp(), max_relative = 1e-13);
        // ₂F₂(a, c; b, c; z) collapses to ₁F₁(a; b; z)
        let lhs = hyp2f2(1.5, 4.0, 2.5, 4.0, 3.3).unwrap().value;
        let rhs = hyp1f1(1.5, 2.5, 3.3).unwrap().value;
        assert_relative_eq!(lhs, rhs, max_relative = 1e-14);
    }

    #[test]
    fn rejects_non_positive_integer_lower_parameters() {
        assert!(hyp1f1(1.0, 0.0, 1.0).is_err());
        assert!(hyp1f1(1.0, -3.0, 1.0).is_err());
        assert!(hyp2f2(1.0, 1.0, 2.0, -1.0, 1.0).is_err());
        assert!(hyp1f1(1.0, -0.5, 1.0).is_ok());
    }

    #[test]
    fn hyp2f2_matches_exact_rational_partial_sum() {
        // 200 terms of ₂F₂(3,3;4,4;2) = Σ 9/(k+3)² · 2^k / k!
        let mut sum = BigRational::from_integer(BigInt::from(0));
        let mut pow2_over_fact = BigRational::from_integer(BigInt::from(1));
        for k in 0..200u32 {
            let denom = BigInt::from((k + 3) * (k + 3));
            sum += &pow2_over_fact * BigRational::new(BigInt::from(9), denom);
            pow2_over_fact = pow2_over_fact * BigRational::new(BigInt::from(2), BigInt::from(k + 1));
        }
        let oracle = sum.to_f64().unwrap();
        let got = hyp2f2(3.0, 3.0, 4.0, 4.0, 2.0).unwrap();
        assert_relative_eq!(got.value, oracle, max_relative = 1e-10);
        assert!(!got.ill_conditioned());
    }

    #[test]
    fn hyp1f1_feeds_the_negative_half_line_integral() {
        // J(n=2, k=0) = ∫_{-2}^{0} y² e^{-y} ln y² dy, assembled from the series
        let c = 2.0;
        let f22 = hyp2f2(3.0, 3.0, 4.0, 4.0, c).unwrap().value;
        let partial = upper_incomplete_gamma(3.0, -c).unwrap() - 2.0;
        let f11 = hyp1f1(3.0, 4.0, c).unwrap().value;
        assert_relative_eq!(partial, -(-c as f64).powi(3) / 3.0 * f11, max_relative = 1e-14);
        let assembled = 16.0 / 9.0 * (-1.0) * f22 + partial * (c * c).ln();

        // composite Simpson on u = -y ∈ [0, 2] of 2u² e^{u} ln u, with u = s² to tame the log
        let steps = 20_000;
        let h = 2.0f64.sqrt() / steps as f64;
        let g = |s: f64| {
            if s == 0.0 {
                0.0
            } else {
                let u = s * s;
                2.0 * u * u * u.exp() * u.ln() * 2.0 * s
            }
        };
        let mut acc = g(0.0) + g(2.0f64.sqrt());
        for i in 1..steps {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            acc += w * g(i as f64 * h);
        }
        let oracle = acc * h / 3.0;
        assert_relative_eq!(assembled, oracle, max_relative = 1e-9);
    }

    #[test]
    fn cancellation_is_flagged_for_large_negative_arguments() {
        let v = hyp1f1(1.0, 2.0, -40.0).unwrap();
        assert!(v.ill_conditioned());
        let w = hyp1f1(1.0, 2.0, 5.0).unwrap();
        assert!(!w.ill_conditioned());
    }

    #[test]
    fn accumulation_follows_the_term_recurrence() {
        // summing the recurrence by hand reproduces the routine bit-for-bit in spirit
        let (a, b, z) = (0.5, 1.5, 0.8);
        let mut t = 1.0;
        let mut s = 1.0;
        for k in 0..60 {
            let kf = k as f64;
            t *= (a + kf) * z / ((b + kf) * (kf + 1.0));
            s += t;
        }
        assert_relative_eq!(hyp1f1(a, b, z).unwrap().value, s, max_relative = 1e-15);
    }
}
