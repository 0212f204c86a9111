//! Squared moduli of spherical harmonics.
//!
//! |Y_{l,m}(θ, φ)|² = (1/2π) (sin²θ)^{|m|} [C̃_{l−|m|}^{|m|+1/2}(cos θ)]²,
//! independent of φ.

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::specfun::orthopoly::PolyFamily;

fn angular_family(l: u32, m: i32) -> Result<PolyFamily> {
    let am = m.unsigned_abs();
    if am > l {
        return domain(format!("|m| = {am} exceeds l = {l}"));
    }
    PolyFamily::gegenbauer((l - am) as usize, am as f64 + 0.5)
}

/// Polynomial factor of |Y_{l,m}|² in the variable x = cos θ.
pub fn angular_polynomial(l: u32, m: i32) -> Result<PolyFamily> {
    angular_family(l, m)
}

/// ln |Y_{l,m}|² as a function of x = cos θ ∈ [−1, 1].
pub fn ln_sph_harm_sq_x(fam: &PolyFamily, m_abs: u32, x: f64) -> f64 {
    let ln_sin2 = if m_abs == 0 { 0.0 } else { m_abs as f64 * ((-x).ln_1p() + x.ln_1p()) };
    ln_sin2 + fam.ln_sq(x) - (2.0 * PI).ln()
}

/// |Y_{l,m}(θ, ·)|².
pub fn sph_harm_sq(l: u32, m: i32, theta: f64) -> Result<f64> {
    let fam = angular_family(l, m)?;
    if !(0.0..=PI).contains(&theta) {
        return domain(format!("theta = {theta} lies outside [0, π]"));
    }
    let x = theta.cos().clamp(-1.0, 1.0);
    let s2 = theta.sin().powi(2);
    let am = m.unsigned_abs();
    let (_, ln_p) = fam.eval_log(x);
    let ln_sin2 = if am == 0 { 0.0 } else { am as f64 * s2.ln() };
    Ok((ln_sin2 + 2.0 * ln_p - (2.0 * PI).ln()).exp())
}
