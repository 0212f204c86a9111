//! Orthonormal Laguerre and Gegenbauer polynomials.
//!
//! Both families are generated from the entries (aⱼ, bⱼ) of their monic
//! Jacobi matrices, normalized at every step:
//!
//! q₀ = 1, q_{j+1} = ((x − aⱼ) qⱼ − √bⱼ q_{j−1}) / √b_{j+1},
//!
//! so that ỹₖ = qₖ / √μ₀ with μ₀ the total mass of the weight. Values are
//! tracked with a running power-of-two scale, which keeps degree 200 with
//! parameter 500 comfortably inside double range.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::specfun::gamma::{lgamma, LN_SQRT_PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PolyKind {
    /// Orthonormal under ω_α(x) = x^α e^{−x} on [0, ∞).
    LaguerreOrthonormal,
    /// Orthonormal under ω*_α(x) = (1 − x²)^{α − 1/2} on [−1, 1].
    GegenbauerOrthonormal,
}

/// A single orthonormal polynomial ỹ_k^α.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyFamily {
    pub kind: PolyKind,
    pub degree: usize,
    pub parameter: f64,
}

const RESCALE: f64 = 1e150;
const LN_RESCALE: f64 = 345.387_763_949_106_8;

impl PolyFamily {
    pub fn new(kind: PolyKind, degree: usize, parameter: f64) -> Result<Self> {
        match kind {
            PolyKind::LaguerreOrthonormal if !(parameter > -1.0) || !parameter.is_finite() => {
                domain(format!("Laguerre parameter must exceed -1, got {parameter}"))
            }
            PolyKind::GegenbauerOrthonormal if !(parameter > -0.5) || !parameter.is_finite() => {
                domain(format!("Gegenbauer parameter must exceed -1/2, got {parameter}"))
            }
            _ => Ok(Self { kind, degree, parameter }),
        }
    }

    pub fn laguerre(degree: usize, alpha: f64) -> Result<Self> {
        Self::new(PolyKind::LaguerreOrthonormal, degree, alpha)
    }

    pub fn gegenbauer(degree: usize, alpha: f64) -> Result<Self> {
        Self::new(PolyKind::GegenbauerOrthonormal, degree, alpha)
    }

    /// Support of the weight.
    pub fn support(&self) -> (f64, f64) {
        match self.kind {
            PolyKind::LaguerreOrthonormal => (0.0, f64::INFINITY),
            PolyKind::GegenbauerOrthonormal => (-1.0, 1.0),
        }
    }

    fn in_support(&self, x: f64) -> bool {
        match self.kind {
            PolyKind::LaguerreOrthonormal => x >= 0.0 && x.is_finite(),
            PolyKind::GegenbauerOrthonormal => (-1.0..=1.0).contains(&x),
        }
    }

    /// Diagonal entry aⱼ of the monic Jacobi matrix.
    fn diag(&self, j: usize) -> f64 {
        match self.kind {
            PolyKind::LaguerreOrthonormal => 2.0 * j as f64 + self.parameter + 1.0,
            PolyKind::GegenbauerOrthonormal => 0.0,
        }
    }

    /// Off-diagonal entry bⱼ (j ≥ 1) of the monic Jacobi matrix.
    fn offdiag_sq(&self, j: usize) -> f64 {
        let a = self.parameter;
        let j = j as f64;
        match self.kind {
            PolyKind::LaguerreOrthonormal => j * (j + a),
            PolyKind::GegenbauerOrthonormal => {
                if j == 1.0 {
                    1.0 / (2.0 * (1.0 + a))
                } else {
                    j * (j + 2.0 * a - 1.0) / (4.0 * (j + a) * (j + a - 1.0))
                }
            }
        }
    }

    /// ln μ₀, the log of the total weight mass.
    pub fn ln_mass(&self) -> f64 {
        let a = self.parameter;
        match self.kind {
            PolyKind::LaguerreOrthonormal => lgamma(a + 1.0),
            PolyKind::GegenbauerOrthonormal => LN_SQRT_PI + lgamma(a + 0.5) - lgamma(a + 1.0),
        }
    }

    /// ln ω(x); −∞ at a vanishing endpoint.
    pub fn ln_weight(&self, x: f64) -> f64 {
        let a = self.parameter;
        match self.kind {
            PolyKind::LaguerreOrthonormal => {
                if a == 0.0 {
                    -x
                } else {
                    a * x.ln() - x
                }
            }
            PolyKind::GegenbauerOrthonormal => {
                let e = a - 0.5;
                if e == 0.0 {
                    0.0
                } else {
                    e * ((-x).ln_1p() + x.ln_1p())
                }
            }
        }
    }

    /// Sign and log-magnitude of ỹₖ(x), without a support check.
    /// A zero value is returned as (0, −∞).
    pub fn eval_log(&self, x: f64) -> (f64, f64) {
        let mut prev = 0.0;
        let mut cur = 1.0;
        let mut scale = 0.0;
        let mut sqrt_b = 0.0;
        for j in 0..self.degree {
            let sqrt_next = self.offdiag_sq(j + 1).sqrt();
            let next = ((x - self.diag(j)) * cur - sqrt_b * prev) / sqrt_next;
            prev = cur;
            cur = next;
            sqrt_b = sqrt_next;
            if cur.abs() > RESCALE {
                cur /= RESCALE;
                prev /= RESCALE;
                scale += LN_RESCALE;
            }
        }
        if cur == 0.0 {
            return (0.0, f64::NEG_INFINITY);
        }
        // classical sign convention: Laguerre leading coefficient (−1)^k
        let flip = self.kind == PolyKind::LaguerreOrthonormal && self.degree % 2 == 1;
        let sign = if flip { -cur.signum() } else { cur.signum() };
        (sign, cur.abs().ln() + scale - 0.5 * self.ln_mass())
    }

    /// ln ỹₖ(x)², −∞ at an exact zero.
    pub fn ln_sq(&self, x: f64) -> f64 {
        2.0 * self.eval_log(x).1
    }

    /// Value of ỹₖ(x) inside the support.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !self.in_support(x) {
            return domain(format!("x = {x} lies outside the support of {:?}", self.kind));
        }
        let (s, l) = self.eval_log(x);
        Ok(s * l.exp())
    }

    /// Number of eigenvalues of the Jacobi matrix below x (Sturm count).
    fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0;
        for j in 0..self.degree {
            let b = if j == 0 { 0.0 } else { self.offdiag_sq(j) };
            d = (self.diag(j) - x) - b / d;
            if d == 0.0 {
                d = -f64::EPSILON * (1.0 + x.abs());
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    fn root_bounds(&self) -> (f64, f64) {
        match self.kind {
            PolyKind::GegenbauerOrthonormal => (-1.0, 1.0),
            PolyKind::LaguerreOrthonormal => {
                let mut hi = 0.0f64;
                for j in 0..self.degree {
                    let left = if j == 0 { 0.0 } else { self.offdiag_sq(j).sqrt() };
                    let right = if j + 1 < self.degree { self.offdiag_sq(j + 1).sqrt() } else { 0.0 };
                    hi = hi.max(self.diag(j) + left + right);
                }
                (0.0, hi * (1.0 + 1e-12) + 1.0)
            }
        }
    }

    /// All roots in ascending order, by Sturm bisection with a final
    /// regula-falsi step on the polynomial itself.
    pub fn roots(&self) -> Vec<f64> {
        let k = self.degree;
        let (lo0, hi0) = self.root_bounds();
        let mut out = Vec::with_capacity(k);
        let mut lo = lo0;
        for i in 0..k {
            // the i-th root is the smallest x with count_below(x) > i
            let mut a = lo;
            let mut b = hi0;
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                if self.count_below(mid) > i {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let root = self.refine(a, b);
            out.push(root);
            lo = a;
        }
        out
    }

    fn refine(&self, a: f64, b: f64) -> f64 {
        let (sa, la) = self.eval_log(a);
        let (sb, lb) = self.eval_log(b);
        if sa == 0.0 {
            return a;
        }
        if sb == 0.0 {
            return b;
        }
        if sa == sb {
            return 0.5 * (a + b);
        }
        // secant through the bracket, evaluated relative to the larger end
        let r = la.max(lb);
        let fa = sa * (la - r).exp();
        let fb = sb * (lb - r).exp();
        let x = a - fa * (b - a) / (fb - fa);
        if x > a && x < b {
            x
        } else {
            0.5 * (a + b)
        }
    }
}

/// Value of the orthonormal polynomial `family` at `x`.
pub fn poly_eval(family: &PolyFamily, x: f64) -> Result<f64> {
    family.eval(x)
}

/// Roots of `family` in ascending order (empty for degree 0).
pub fn poly_roots(family: &PolyFamily) -> Vec<f64> {
    family.roots()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn degree_zero_constants() {
        let l = PolyFamily::laguerre(0, 1.0).unwrap();
        for x in [0.0, 0.3, 17.0] {
            assert_relative_eq!(poly_eval(&l, x).unwrap(), 1.0, max_relative = 1e-15);
        }
        let g = PolyFamily::gegenbauer(0, 1.0).unwrap();
        assert_relative_eq!(poly_eval(&g, 0.2).unwrap(), (2.0 / PI).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn laguerre_degree_one_is_one_minus_x() {
        let l = PolyFamily::laguerre(1, 0.0).unwrap();
        assert_relative_eq!(poly_eval(&l, 0.0).unwrap(), 1.0, max_relative = 1e-15);
        for x in [0.5, 2.0, 9.0] {
            assert_relative_eq!(poly_eval(&l, x).unwrap(), 1.0 - x, max_relative = 1e-14);
        }
        assert_eq!(poly_roots(&l), vec![1.0]);
    }

    #[test]
    fn matches_classical_laguerre_normalized() {
        // L₂^α(x) = ((α+1)(α+2) − 2(α+2)x + x²)/2, norm² = Γ(α+3)/2
        for alpha in [0.0, 1.0, 3.5] {
            let fam = PolyFamily::laguerre(2, alpha).unwrap();
            let norm = (lgamma(alpha + 3.0) - 2.0f64.ln()).exp().sqrt();
            for x in [0.1, 1.7, 6.0] {
                let classical = ((alpha + 1.0) * (alpha + 2.0) - 2.0 * (alpha + 2.0) * x + x * x) / 2.0;
                assert_relative_eq!(fam.eval(x).unwrap(), classical / norm, max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn matches_classical_gegenbauer_normalized() {
        // C₂^α(x) = 2α(α+1)x² − α, norm² = π 2^{1−2α} Γ(2+2α)/(2!(2+α)Γ(α)²)
        for alpha in [0.5, 1.0, 2.5] {
            let fam = PolyFamily::gegenbauer(2, alpha).unwrap();
            let ln_norm = PI.ln() + (1.0 - 2.0 * alpha) * 2f64.ln() + lgamma(2.0 + 2.0 * alpha)
                - 2f64.ln()
                - (2.0 + alpha).ln()
                - 2.0 * lgamma(alpha);
            let norm = (0.5 * ln_norm).exp();
            for x in [-0.9, 0.0, 0.4] {
                let classical = 2.0 * alpha * (alpha + 1.0) * x * x - alpha;
                assert_relative_eq!(fam.eval(x).unwrap().abs(), (classical / norm).abs(), max_relative = 1e-13);
            }
        }
    }

    #[test]
    fn gegenbauer_degree_one_root_is_zero() {
        for a in [0.5, 1.0, 7.0] {
            let r = PolyFamily::gegenbauer(1, a).unwrap().roots();
            assert_eq!(r.len(), 1);
            assert!(r[0].abs() < 1e-15);
        }
    }

    #[test]
    fn laguerre_degree_two_roots_are_positive() {
        let r = PolyFamily::laguerre(2, 1.0).unwrap().roots();
        assert_eq!(r.len(), 2);
        assert!(r[0] > 0.0 && r[1] > r[0]);
        // roots of x² − 6x + 6
        assert_relative_eq!(r[0], 3.0 - 3f64.sqrt(), max_relative = 1e-13);
        assert_relative_eq!(r[1], 3.0 + 3f64.sqrt(), max_relative = 1e-13);
    }

    #[test]
    fn roots_bracket_sign_changes_at_high_degree() {
        for fam in [
            PolyFamily::laguerre(200, 3.0).unwrap(),
            PolyFamily::laguerre(60, 121.0).unwrap(),
            PolyFamily::gegenbauer(200, 1.0).unwrap(),
            PolyFamily::gegenbauer(150, 40.5).unwrap(),
        ] {
            let roots = fam.roots();
            assert_eq!(roots.len(), fam.degree);
            let (lo, hi) = fam.support();
            for w in roots.windows(2) {
                assert!(w[1] > w[0]);
            }
            for &r in &roots {
                assert!(r > lo && r < hi);
                let d = 1e-12 * r.abs().max(1.0);
                let (sa, _) = fam.eval_log(r - d);
                let (sb, _) = fam.eval_log(r + d);
                assert!(sa * sb <= 0.0, "{:?} root {r}", fam.kind);
            }
        }
    }

    #[test]
    fn no_overflow_at_degree_200_parameter_500() {
        let fam = PolyFamily::laguerre(200, 500.0).unwrap();
        for x in [0.0, 1.0, 300.0, 700.0, 2000.0] {
            let (_, l) = fam.eval_log(x);
            assert!(l.is_finite() || l == f64::NEG_INFINITY, "x = {x}");
        }
        let g = PolyFamily::gegenbauer(200, 500.0).unwrap();
        for x in [-1.0, -0.3, 0.0, 0.999, 1.0] {
            assert!(g.eval_log(x).1.is_finite(), "x = {x}");
        }
    }

    #[test]
    fn outside_support_is_a_domain_error() {
        assert!(PolyFamily::laguerre(3, 1.0).unwrap().eval(-0.1).is_err());
        assert!(PolyFamily::gegenbauer(3, 1.0).unwrap().eval(1.01).is_err());
        assert!(PolyFamily::laguerre(3, -1.0).is_err());
        assert!(PolyFamily::gegenbauer(3, -0.5).is_err());
    }

    #[test]
    fn degree_zero_has_no_roots() {
        assert!(PolyFamily::laguerre(0, 2.0).unwrap().roots().is_empty());
    }
}
