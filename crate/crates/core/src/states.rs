//! Hydrogenic states and their position and momentum densities.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::quadrature::{QuadResult, Tolerance};
use crate::radial::{Angular, MomentumRadial, PositionRadial};

/// Default cap on the principal quantum number. The orthonormal
/// recurrences keep full double accuracy well past this; the cap guards the
/// quadrature cost and the log-space gamma ratios of the exact sums.
pub const DEFAULT_MAX_N: u32 = 200;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Position,
    Momentum,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::Position => "position",
            Space::Momentum => "momentum",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Space {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "position" => Ok(Space::Position),
            "momentum" => Ok(Space::Momentum),
            other => domain(format!("unknown space '{other}'")),
        }
    }
}

/// A hydrogenic bound state (n, l, m) with nuclear charge Z.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuantumState {
    n: u32,
    l: u32,
    m: i32,
    #[serde(rename = "Z")]
    z: f64,
}

impl QuantumState {
    /// Validates 0 ≤ l < n, |m| ≤ l, Z > 0 and n ≤ [`DEFAULT_MAX_N`].
    pub fn new(n: u32, l: u32, m: i32, z: f64) -> Result<Self> {
        Self::with_max_n(n, l, m, z, DEFAULT_MAX_N)
    }

    /// As [`QuantumState::new`] with an explicit cap on n.
    pub fn with_max_n(n: u32, l: u32, m: i32, z: f64, max_n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidState("n must be at least 1".into()));
        }
        if n > max_n {
            return Err(Error::InvalidState(format!("n = {n} exceeds the configured cap {max_n}")));
        }
        if l >= n {
            return Err(Error::InvalidState(format!("l = {l} must be below n = {n}")));
        }
        if m.unsigned_abs() > l {
            return Err(Error::InvalidState(format!("|m| = {} exceeds l = {l}", m.unsigned_abs())));
        }
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::InvalidState(format!("Z = {z} must be finite and positive")));
        }
        Ok(Self { n, l, m, z })
    }

    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn m(&self) -> i32 {
        self.m
    }
    pub fn m_abs(&self) -> u32 {
        self.m.unsigned_abs()
    }
    pub fn z(&self) -> f64 {
        self.z
    }
    /// Radial degree k = n − l − 1.
    pub fn k(&self) -> u32 {
        self.n - self.l - 1
    }
    /// Laguerre parameter ν = 2l + 1.
    pub fn nu(&self) -> u32 {
        2 * self.l + 1
    }
    /// Gegenbauer parameter ν' = l + 1.
    pub fn nu_prime(&self) -> u32 {
        self.l + 1
    }

    /// The same (n, l, m) with another nuclear charge.
    pub fn with_z(&self, z: f64) -> Result<Self> {
        Self::with_max_n(self.n, self.l, self.m, z, u32::MAX)
    }

    pub(crate) fn position_radial(&self) -> PositionRadial {
        PositionRadial::new(self.n, self.l)
    }
    pub(crate) fn momentum_radial(&self) -> MomentumRadial {
        MomentumRadial::new(self.n, self.l)
    }
    pub(crate) fn angular(&self) -> Angular {
        Angular::new(self.l, self.m_abs())
    }
}

impl fmt::Display for QuantumState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, Z={})", self.n, self.l, self.m, self.z)
    }
}

/// A density value split into its radial and angular factors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensitySample {
    pub radial: f64,
    pub angular: f64,
    pub total: f64,
}

impl DensitySample {
    fn new(radial: f64, angular: f64) -> Self {
        Self { radial, angular, total: radial * angular }
    }
}

fn angular_value(state: &QuantumState, theta: f64) -> Result<f64> {
    if !theta.is_finite() {
        return domain(format!("theta = {theta} must be finite"));
    }
    let ang = state.angular();
    let x = theta.cos().clamp(-1.0, 1.0);
    // sin² from θ directly keeps the poles accurate
    let s2 = theta.sin().powi(2);
    let ln_s = if ang.m_abs == 0 { 0.0 } else { ang.m_abs as f64 * s2.ln() };
    Ok((ln_s + ang.fam.ln_sq(x) - (2.0 * PI).ln()).exp())
}

/// Position density ρ(r, θ) per unit volume.
pub fn rho(state: &QuantumState, r: f64, theta: f64) -> Result<DensitySample> {
    if !(r >= 0.0) || !r.is_finite() {
        return domain(format!("r = {r} must be finite and non-negative"));
    }
    let rad = state.position_radial();
    let x = 2.0 * state.z * r / state.n as f64;
    let radial = if x == 0.0 && state.l > 0 {
        0.0
    } else {
        (rad.ln_density(x) + 3.0 * state.z.ln()).exp()
    };
    Ok(DensitySample::new(radial, angular_value(state, theta)?))
}

/// Momentum density γ(p, θ) per unit volume.
pub fn gamma_p(state: &QuantumState, p: f64, theta: f64) -> Result<DensitySample> {
    if !(p >= 0.0) || !p.is_finite() {
        return domain(format!("p = {p} must be finite and non-negative"));
    }
    let rad = state.momentum_radial();
    let u = state.n as f64 * p / state.z;
    let t = (1.0 - u * u) / (1.0 + u * u);
    let radial = if u == 0.0 && state.l > 0 {
        0.0
    } else if !t.is_finite() || t <= -1.0 {
        0.0
    } else {
        (rad.ln_density(t) - 3.0 * state.z.ln()).exp()
    };
    Ok(DensitySample::new(radial, angular_value(state, theta)?))
}

/// ∫ density d³x, as radial × polar quadratures.
pub fn normalization_check(state: &QuantumState, space: Space, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let tol = tol.into();
    let mass = |_: f64, lm: f64| lm.exp();
    let radial = match space {
        Space::Position => state.position_radial().integrate(mass, tol.scaled(0.5))?,
        Space::Momentum => state.momentum_radial().integrate(mass, tol.scaled(0.5))?,
    };
    let angular = state.angular().integrate(mass, tol.scaled(0.5))?;
    Ok(QuadResult {
        value: radial.value * angular.value,
        abs_err: radial.abs_err * angular.value.abs() + angular.abs_err * radial.value.abs(),
        evaluations: radial.evaluations + angular.evaluations,
        warning: radial.warning.or(angular.warning),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn st(n: u32, l: u32, m: i32, z: f64) -> QuantumState {
        QuantumState::new(n, l, m, z).unwrap()
    }

    #[test]
    fn construction_rules() {
        assert!(QuantumState::new(0, 0, 0, 1.0).is_err());
        assert!(QuantumState::new(2, 2, 0, 1.0).is_err());
        assert!(QuantumState::new(3, 1, -2, 1.0).is_err());
        assert!(QuantumState::new(3, 1, 0, 0.0).is_err());
        assert!(QuantumState::new(201, 0, 0, 1.0).is_err());
        assert!(QuantumState::with_max_n(250, 0, 0, 1.0, 300).is_ok());
        let s = st(7, 3, -2, 1.0);
        assert_eq!((s.k(), s.nu(), s.nu_prime(), s.m_abs()), (3, 7, 4, 2));
    }

    #[test]
    fn ground_state_densities() {
        let s = st(1, 0, 0, 1.0);
        let d = rho(&s, 0.0, 0.4).unwrap();
        assert_relative_eq!(d.total, 1.0 / PI, max_relative = 1e-14);
        assert_relative_eq!(rho(&s, 0.8, 2.0).unwrap().total, (-1.6f64).exp() / PI, max_relative = 1e-14);
        let g = gamma_p(&s, 0.0, 1.0).unwrap();
        assert_relative_eq!(g.radial, 32.0 / PI, max_relative = 1e-14);
        assert_relative_eq!(g.angular, 1.0 / (4.0 * PI), max_relative = 1e-14);
        assert_relative_eq!(g.total, 8.0 / (PI * PI), max_relative = 1e-14);
        let p = 0.7f64;
        assert_relative_eq!(
            gamma_p(&s, p, 0.0).unwrap().total,
            8.0 / (PI * PI * (1.0 + p * p).powi(4)),
            max_relative = 1e-13
        );
    }

    #[test]
    fn origin_vanishes_for_l_positive() {
        assert_eq!(rho(&st(3, 1, 0, 1.0), 0.0, 0.3).unwrap().total, 0.0);
        assert_eq!(gamma_p(&st(3, 1, 0, 1.0), 0.0, 0.3).unwrap().total, 0.0);
    }

    #[test]
    fn negative_arguments_rejected() {
        assert!(rho(&st(1, 0, 0, 1.0), -0.1, 0.0).is_err());
        assert!(gamma_p(&st(1, 0, 0, 1.0), -0.1, 0.0).is_err());
    }

    #[test]
    fn z_scaling_pointwise() {
        for (n, l, m) in [(3u32, 1u32, 1i32), (6, 4, -2), (10, 0, 0)] {
            let s1 = st(n, l, m, 1.0);
            let s2 = st(n, l, m, 2.5);
            for (r, th) in [(0.3, 0.4), (4.0, 1.2), (17.0, 2.8)] {
                let a = rho(&s2, r, th).unwrap().total;
                let b = 2.5f64.powi(3) * rho(&s1, 2.5 * r, th).unwrap().total;
                assert_relative_eq!(a, b, max_relative = 1e-12);
                let c = gamma_p(&s2, r, th).unwrap().total;
                let d = gamma_p(&s1, r / 2.5, th).unwrap().total / 2.5f64.powi(3);
                assert_relative_eq!(c, d, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn quasicircular_momentum_node() {
        let s = st(7, 5, 5, 2.0);
        let g = gamma_p(&s, 2.0 / 7.0, 1.0).unwrap();
        assert!(g.total.abs() < 1e-25);
    }

    #[test]
    fn normalization_examples() {
        for (s, space, tol) in [
            (st(1, 0, 0, 1.0), Space::Position, 1e-10),
            (st(5, 4, 4, 1.0), Space::Position, 1e-10),
            (st(1, 0, 0, 1.0), Space::Momentum, 1e-10),
            (st(6, 4, 2, 2.0), Space::Momentum, 1e-10),
            (st(10, 0, 0, 1.0), Space::Position, 1e-9),
            (st(30, 29, 29, 1.0), Space::Momentum, 1e-9),
            (st(50, 1, 1, 1.0), Space::Position, 1e-8),
        ] {
            let r = normalization_check(&s, space, 1e-12).unwrap();
            assert!((r.value - 1.0).abs() < tol, "{s} {space}: {}", r.value);
        }
    }
}
