//! Reduced one-dimensional models of the radial and polar factors.
//!
//! Every three-dimensional integral over a hydrogenic density separates into
//! a radial integral and a polar integral. The radial factor is integrated
//! in the reduced variable x = r̃ = 2Zr/n (position) or
//! t = (1 − n²p̃²)/(1 + n²p̃²) (momentum); the polar factor in x = cos θ.
//! Each model exposes the log of its probability measure, so integrands
//! are assembled in log space and exponentiated once.

use std::f64::consts::PI;

use crate::error::Result;
use crate::quadrature::{integrate_finite, integrate_semiinf, Panelization, QuadResult, Tolerance};
use crate::specfun::orthopoly::PolyFamily;

/// Position-space radial factor in x = r̃.
///
/// dP = (1/2n) x^{2l+2} e^{−x} [L̃_k^{2l+1}(x)]² dx.
#[derive(Debug, Clone)]
pub struct PositionRadial {
    pub n: u32,
    pub l: u32,
    pub fam: PolyFamily,
    pub roots: Vec<f64>,
    /// End of the explicitly panelized range; a mapped tail follows.
    pub truncation: f64,
}

impl PositionRadial {
    pub fn new(n: u32, l: u32) -> Self {
        let fam = PolyFamily::laguerre((n - l - 1) as usize, (2 * l + 1) as f64)
            .expect("Laguerre parameter 2l+1 is always admissible");
        let roots = fam.roots();
        let mode = (2 * l + 2) as f64;
        let largest = roots.last().copied().unwrap_or(0.0);
        let truncation = 2.0 * largest.max(mode) + 60.0;
        Self { n, l, fam, roots, truncation }
    }

    /// ln of the probability measure density at x.
    pub fn ln_measure(&self, x: f64) -> f64 {
        -(2.0 * self.n as f64).ln() + (2 * self.l + 2) as f64 * x.ln() - x + self.fam.ln_sq(x)
    }

    /// ln of the radial density factor at x for Z = 1, per unit volume:
    /// ln(4/n⁴) + 2l ln x − x + ln L̃².
    pub fn ln_density(&self, x: f64) -> f64 {
        let n = self.n as f64;
        let pow = if self.l == 0 { 0.0 } else { (2 * self.l) as f64 * x.ln() };
        (4.0 / n.powi(4)).ln() + pow - x + self.fam.ln_sq(x)
    }

    pub fn panels(&self) -> Panelization {
        Panelization::new(
            self.roots
                .iter()
                .copied()
                .chain([(2 * self.l + 2) as f64, self.truncation]),
        )
    }

    /// ∫₀^∞ g(x, ln μ(x)) dx.
    pub fn integrate(&self, g: impl Fn(f64, f64) -> f64, tol: Tolerance) -> Result<QuadResult> {
        integrate_semiinf(|x| g(x, self.ln_measure(x)), &self.panels(), 1.0, tol)
    }
}

/// Momentum-space radial factor in t ∈ [−1, 1].
///
/// dP = (1 − t)^{l+1/2} (1 + t)^{l+3/2} [C̃_k^{l+1}(t)]² dt.
#[derive(Debug, Clone)]
pub struct MomentumRadial {
    pub n: u32,
    pub l: u32,
    pub fam: PolyFamily,
    pub roots: Vec<f64>,
}

impl MomentumRadial {
    pub fn new(n: u32, l: u32) -> Self {
        let fam = PolyFamily::gegenbauer((n - l - 1) as usize, (l + 1) as f64)
            .expect("Gegenbauer parameter l+1 is always admissible");
        let roots = fam.roots();
        Self { n, l, fam, roots }
    }

    pub fn ln_measure(&self, t: f64) -> f64 {
        let l = self.l as f64;
        (l + 0.5) * (-t).ln_1p() + (l + 1.5) * t.ln_1p() + self.fam.ln_sq(t)
    }

    /// ln of the radial momentum density factor for Z = 1:
    /// 3 ln n + l ln(1 − t) + (l + 4) ln(1 + t) + ln C̃².
    pub fn ln_density(&self, t: f64) -> f64 {
        let l = self.l as f64;
        let lower = if self.l == 0 { 0.0 } else { l * (-t).ln_1p() };
        3.0 * (self.n as f64).ln() + lower + (l + 4.0) * t.ln_1p() + self.fam.ln_sq(t)
    }

    /// n p̃ as a function of t.
    pub fn np_of_t(t: f64) -> f64 {
        ((1.0 - t) / (1.0 + t)).sqrt()
    }

    pub fn panels(&self) -> Panelization {
        Panelization::new(self.roots.iter().copied().chain([0.0])).with_end_grading(-1.0, 1.0, 6)
    }

    pub fn integrate(&self, g: impl Fn(f64, f64) -> f64, tol: Tolerance) -> Result<QuadResult> {
        integrate_finite(|t| g(t, self.ln_measure(t)), -1.0, 1.0, &self.panels(), tol)
    }
}

/// Polar factor in x = cos θ, with the azimuth integrated out.
///
/// dP = (1 − x²)^{|m|} [C̃_{l−|m|}^{|m|+1/2}(x)]² dx.
#[derive(Debug, Clone)]
pub struct Angular {
    pub l: u32,
    pub m_abs: u32,
    pub fam: PolyFamily,
    pub roots: Vec<f64>,
}

impl Angular {
    pub fn new(l: u32, m_abs: u32) -> Self {
        let fam = PolyFamily::gegenbauer((l - m_abs) as usize, m_abs as f64 + 0.5)
            .expect("Gegenbauer parameter |m|+1/2 is always admissible");
        let roots = fam.roots();
        Self { l, m_abs, fam, roots }
    }

    pub fn ln_measure(&self, x: f64) -> f64 {
        let s = if self.m_abs == 0 { 0.0 } else { self.m_abs as f64 * ((-x).ln_1p() + x.ln_1p()) };
        s + self.fam.ln_sq(x)
    }

    /// ln |Y_{l,m}|² at x = cos θ.
    pub fn ln_density(&self, x: f64) -> f64 {
        self.ln_measure(x) - (2.0 * PI).ln()
    }

    pub fn panels(&self) -> Panelization {
        let p = Panelization::new(self.roots.iter().copied().chain([0.0]));
        if self.m_abs == 0 {
            p
        } else {
            p.with_end_grading(-1.0, 1.0, 4)
        }
    }

    pub fn integrate(&self, g: impl Fn(f64, f64) -> f64, tol: Tolerance) -> Result<QuadResult> {
        integrate_finite(|x| g(x, self.ln_measure(x)), -1.0, 1.0, &self.panels(), tol)
    }
}

/// x ln x with the removable limit at 0; used for −μ ln μ integrands.
pub fn entropy_term(ln_mu: f64, ln_density: f64) -> f64 {
    if ln_mu == f64::NEG_INFINITY {
        0.0
    } else {
        -ln_mu.exp() * ln_density
    }
}
