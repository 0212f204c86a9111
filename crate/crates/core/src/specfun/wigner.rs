//! Wigner 3j symbols from the Racah single-sum formula.
//!
//! Angular momenta are handled internally in doubled units so that
//! half-integers stay exact. The sum is evaluated in log-factorial space with
//! sign tracking; when the alternating terms cancel badly the sum is redone in
//! exact rational arithmetic.

use num_bigint::{BigInt, Sign};
use num_traits::One;

use crate::error::{domain, Result};
use crate::specfun::gamma::ln_factorial;

/// Amplification Σ|tᵢ|/|Σtᵢ| above which the exact fallback is used.
const CANCELLATION_FALLBACK: f64 = 1e4;

fn doubled(x: f64, name: &str) -> Result<i64> {
    let d = 2.0 * x;
    if !d.is_finite() || d.fract() != 0.0 || d.abs() > 1e6 {
        return domain(format!("{name} = {x} is not an integer or half-integer"));
    }
    Ok(d as i64)
}

/// The 3j symbol (j1 j2 j3; m1 m2 m3) for integer or half-integer arguments.
pub fn wigner3j(j1: f64, j2: f64, j3: f64, m1: f64, m2: f64, m3: f64) -> Result<f64> {
    let tj = [doubled(j1, "j1")?, doubled(j2, "j2")?, doubled(j3, "j3")?];
    let tm = [doubled(m1, "m1")?, doubled(m2, "m2")?, doubled(m3, "m3")?];
    for i in 0..3 {
        if tj[i] < 0 {
            return domain(format!("j{} must be non-negative", i + 1));
        }
        if tm[i].abs() > tj[i] {
            return domain(format!("|m{}| exceeds j{}", i + 1, i + 1));
        }
        if (tj[i] - tm[i]) % 2 != 0 {
            return domain(format!("j{} and m{} differ by a non-integer", i + 1, i + 1));
        }
    }
    Ok(wigner3j_doubled(tj, tm))
}

/// Integer-argument form used by the disequilibrium sums. `|mᵢ| ≤ jᵢ` is
/// required; the value is 0 when the selection rules fail.
pub fn wigner3j_int(j1: u32, j2: u32, j3: u32, m1: i32, m2: i32, m3: i32) -> f64 {
    debug_assert!(m1.unsigned_abs() <= j1 && m2.unsigned_abs() <= j2 && m3.unsigned_abs() <= j3);
    wigner3j_doubled(
        [2 * j1 as i64, 2 * j2 as i64, 2 * j3 as i64],
        [2 * m1 as i64, 2 * m2 as i64, 2 * m3 as i64],
    )
}

fn wigner3j_doubled(tj: [i64; 3], tm: [i64; 3]) -> f64 {
    let [a, b, c] = tj;
    if tm[0] + tm[1] + tm[2] != 0 {
        return 0.0;
    }
    // triangle condition, with j1 + j2 + j3 an integer
    if c > a + b || c < (a - b).abs() || (a + b + c) % 2 != 0 {
        return 0.0;
    }
    if tm == [0, 0, 0] {
        return zero_row(a / 2, b / 2, c / 2);
    }
    racah(tj, tm)
}

/// (j1 j2 j3; 0 0 0) in closed form; no cancellation.
fn zero_row(j1: i64, j2: i64, j3: i64) -> f64 {
    let big_j = j1 + j2 + j3;
    if big_j % 2 != 0 {
        return 0.0;
    }
    let g = big_j / 2;
    let lf = |k: i64| ln_factorial(k as u64);
    let ln_mag = 0.5 * (lf(big_j - 2 * j1) + lf(big_j - 2 * j2) + lf(big_j - 2 * j3) - lf(big_j + 1))
        + lf(g)
        - lf(g - j1)
        - lf(g - j2)
        - lf(g - j3);
    let sign = if g % 2 == 0 { 1.0 } else { -1.0 };
    sign * ln_mag.exp()
}

fn racah(tj: [i64; 3], tm: [i64; 3]) -> f64 {
    // everything below is in ordinary (undoubled) integer units
    let [j1x2, j2x2, j3x2] = tj;
    let [m1x2, m2x2, m3x2] = tm;
    let h = |x: i64| {
        debug_assert!(x % 2 == 0);
        x / 2
    };
    let (s12_3, s13_2, s23_1, s_all) = (
        h(j1x2 + j2x2 - j3x2),
        h(j1x2 - j2x2 + j3x2),
        h(-j1x2 + j2x2 + j3x2),
        h(j1x2 + j2x2 + j3x2),
    );
    let jm = [
        h(j1x2 + m1x2),
        h(j1x2 - m1x2),
        h(j2x2 + m2x2),
        h(j2x2 - m2x2),
        h(j3x2 + m3x2),
        h(j3x2 - m3x2),
    ];
    // denominator arguments: t, t - x1, t - x2, y1 - t, y2 - t, y3 - t
    let x1 = h(j2x2 - j3x2 - m1x2);
    let x2 = h(j1x2 - j3x2 + m2x2);
    let y1 = s12_3;
    let y2 = h(j1x2 - m1x2);
    let y3 = h(j2x2 + m2x2);
    let t_min = 0.max(x1).max(x2);
    let t_max = y1.min(y2).min(y3);
    if t_min > t_max {
        return 0.0;
    }
    let lf = |k: i64| ln_factorial(k as u64);
    let ln_pref = 0.5
        * (lf(s12_3) + lf(s13_2) + lf(s23_1) - lf(s_all + 1) + jm.iter().map(|&k| lf(k)).sum::<f64>());
    let phase_exp = h(j1x2 - j2x2 - m3x2);
    let phase = if phase_exp.rem_euclid(2) == 0 { 1.0 } else { -1.0 };

    // log-space terms relative to the largest one
    let ln_terms: Vec<f64> = (t_min..=t_max)
        .map(|t| -(lf(t) + lf(t - x1) + lf(t - x2) + lf(y1 - t) + lf(y2 - t) + lf(y3 - t)))
        .collect();
    let peak = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let mut signed = 0.0;
    let mut abs = 0.0;
    for (i, lt) in ln_terms.iter().enumerate() {
        let mag = (lt - peak).exp();
        let t = t_min + i as i64;
        signed += if t % 2 == 0 { mag } else { -mag };
        abs += mag;
    }
    if signed != 0.0 && abs / signed.abs() <= CANCELLATION_FALLBACK {
        return phase * signed.signum() * (ln_pref + peak + signed.abs().ln()).exp();
    }
    let (sign, ln_sum) = exact_sum(t_min, t_max, x1, x2, y1, y2, y3);
    if sign == 0 {
        return 0.0;
    }
    phase * sign as f64 * (ln_pref + ln_sum).exp()
}

#[cfg(test)]
fn factorial(k: i64) -> BigInt {
    (2..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

fn ln_bigint(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        let (_, digits) = x.to_u64_digits();
        let mut v = 0.0;
        for d in digits.iter().rev() {
            v = v * 18_446_744_073_709_551_616.0 + *d as f64;
        }
        return v.ln();
    }
    let shift = bits - 64;
    ln_bigint(&(x >> shift as usize)) + shift as f64 * std::f64::consts::LN_2
}

/// Exact Σ_t (−1)^t / Π(factorials); returns (sign, ln|sum|).
///
/// The sum is written as T₀ · (1 + r₀(1 + r₁(1 + …))) with the rational term
/// ratios rₜ, and the nested form is evaluated from the inside in unreduced
/// integer arithmetic.
fn exact_sum(t_min: i64, t_max: i64, x1: i64, x2: i64, y1: i64, y2: i64, y3: i64) -> (i32, f64) {
    let lf = |k: i64| ln_factorial(k as u64);
    let ln_t0 = -(lf(t_min) + lf(t_min - x1) + lf(t_min - x2) + lf(y1 - t_min) + lf(y2 - t_min) + lf(y3 - t_min));
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for t in (t_min..t_max).rev() {
        // r_t = −(y1−t)(y2−t)(y3−t) / ((t+1)(t+1−x1)(t+1−x2))
        let p = BigInt::from((y1 - t) * (y2 - t)) * BigInt::from(y3 - t);
        let q = BigInt::from((t + 1) * (t + 1 - x1)) * BigInt::from(t + 1 - x2);
        // value ← 1 + r·value
        num = &q * &den - p * num;
        den *= q;
    }
    let sign_t0 = if t_min % 2 == 0 { 1 } else { -1 };
    let sign = match num.sign() {
        Sign::Plus => sign_t0,
        Sign::Minus => -sign_t0,
        Sign::NoSign => return (0, f64::NEG_INFINITY),
    };
    (sign, ln_t0 + ln_bigint(&num) - ln_bigint(&den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use num_rational::BigRational;
    use num_traits::Zero;

    /// Brute-force Racah sum in exact rationals; returns the squared value
    /// with its sign so no square root is taken inside the oracle.
    fn exact_squared(j1: i64, j2: i64, j3: i64, m1: i64, m2: i64, m3: i64) -> f64 {
        let f = |k: i64| factorial(k);
        let delta = BigRational::new(f(j1 + j2 - j3) * f(j1 - j2 + j3) * f(-j1 + j2 + j3), f(j1 + j2 + j3 + 1));
        let pre = BigRational::from_integer(
            f(j1 + m1) * f(j1 - m1) * f(j2 + m2) * f(j2 - m2) * f(j3 + m3) * f(j3 - m3),
        );
        let mut s = BigRational::zero();
        for t in 0..=(j1 + j2 + j3) {
            let args = [t, j3 - j2 + t + m1, j3 - j1 + t - m2, j1 + j2 - j3 - t, j1 - t - m1, j2 - t + m2];
            if args.iter().any(|&a| a < 0) {
                continue;
            }
            let den = args.iter().fold(BigInt::one(), |acc, &a| acc * f(a));
            let num = if t % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            s += BigRational::new(num, den);
        }
        let sq = delta * pre * &s * &s;
        use num_traits::ToPrimitive;
        sq.to_f64().unwrap()
    }

    #[test]
    fn trivial_and_parity_cases() {
        assert_eq!(wigner3j(0.0, 0.0, 0.0, 0.0, 0.0, 0.0).unwrap(), 1.0);
        assert_eq!(wigner3j(1.0, 1.0, 1.0, 0.0, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(wigner3j(1.0, 1.0, 3.0, 0.0, 0.0, 0.0).unwrap(), 0.0);
        assert_eq!(wigner3j(1.0, 1.0, 1.0, 1.0, 1.0, 0.0).unwrap(), 0.0);
    }

    #[test]
    fn known_value_against_exact_rationals() {
        let got = wigner3j(1.0, 1.0, 2.0, 0.0, 0.0, 0.0).unwrap();
        assert_relative_eq!(got, (2.0f64 / 15.0).sqrt(), max_relative = 1e-14);
        assert_relative_eq!(got * got, exact_squared(1, 1, 2, 0, 0, 0), max_relative = 1e-14);
    }

    #[test]
    fn half_integer_arguments() {
        // (1/2 1/2 1; 1/2 -1/2 0) = 1/√6
        let v = wigner3j(0.5, 0.5, 1.0, 0.5, -0.5, 0.0).unwrap();
        assert_relative_eq!(v, 1.0 / 6.0f64.sqrt(), max_relative = 1e-14);
        assert!(wigner3j(0.5, 1.0, 0.5, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn malformed_arguments_are_rejected() {
        assert!(wigner3j(1.0, 1.0, 1.0, 2.0, -1.0, -1.0).is_err());
        assert!(wigner3j(1.3, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
        assert!(wigner3j(-1.0, 1.0, 1.0, 0.0, 0.0, 0.0).is_err());
    }

    #[test]
    fn matches_exact_rationals_on_a_grid() {
        for (j1, j2, j3, m1, m2) in [
            (3i64, 3, 2, 1, 1),
            (4, 4, 6, 2, 2),
            (5, 5, 4, -2, -2),
            (7, 7, 10, 4, 4),
            (6, 4, 5, -2, 3),
            (12, 12, 20, 6, 6),
            (2, 3, 4, 0, 0),
        ] {
            let m3 = -m1 - m2;
            let got = wigner3j_int(j1 as u32, j2 as u32, j3 as u32, m1 as i32, m2 as i32, m3 as i32);
            let sq = exact_squared(j1, j2, j3, m1, m2, m3);
            assert!((got * got - sq).abs() <= 1e-12 * sq.max(1e-300), "{j1} {j2} {j3} {m1} {m2}");
        }
    }

    #[test]
    fn orthogonality_sum() {
        for l in 0..=20u32 {
            for m in -(l as i32)..=(l as i32) {
                let mut s = 0.0;
                for lp in 0..=2 * l {
                    if (2 * m).unsigned_abs() > lp {
                        continue;
                    }
                    let w = wigner3j_int(l, l, lp, m, m, -2 * m);
                    s += (2 * lp + 1) as f64 * w * w;
                }
                assert!((s - 1.0).abs() < 1e-10, "l = {l}, m = {m}: {s}");
            }
        }
    }

    #[test]
    fn large_j_uses_a_stable_path() {
        // orthogonality survives at j well beyond the cancellation threshold
        let l = 150u32;
        for m in [0i32, 7, 75, 150] {
            let mut s = 0.0;
            for lp in (2 * m.unsigned_abs())..=2 * l {
                let w = wigner3j_int(l, l, lp, m, m, -2 * m);
                s += (2 * lp + 1) as f64 * w * w;
            }
            assert!((s - 1.0).abs() < 1e-10, "m = {m}: {s}");
        }
    }
}
