//! Circular (l = |m| = n − 1) and quasicircular (l = |m| = n − 2) states.
//!
//! The printed closed forms for these families are implemented verbatim.
//! Each one can be compared with the general machinery through
//! [`special_audits`]; a disagreement is reported as a failing audit row and
//! never corrected silently.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::audit::AuditRecord;
use crate::complexity::{cramer_rao, disequilibrium, disequilibrium_exact, fisher_shannon, lmc, ComplexityTriple, Tagged};
use crate::entropy::shannon;
use crate::error::{Error, Result};
use crate::fisher::{fisher_momentum, fisher_position};
use crate::moments::{log_p_moment, log_r_moment, p_moment, r_moment, AsymptoticValue, Remainder};
use crate::quadrature::{integrate_finite, integrate_semiinf, Panelization, QuadResult, Tolerance};
use crate::specfun::gamma::{lgamma, ln_binomial, psi, EULER_GAMMA, LN_SQRT_PI};
use crate::specfun::hypergeometric::{hyp1f1, hyp2f2};
use crate::states::{QuantumState, Space};

/// Largest n for which the hypergeometric route to I_n is trusted.
pub const IN_HYPERGEOMETRIC_MAX_N: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpecialKind {
    Circular,
    Quasicircular,
}

impl SpecialKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SpecialKind::Circular => "circular",
            SpecialKind::Quasicircular => "quasicircular",
        }
    }

    pub fn min_n(&self) -> u32 {
        match self {
            SpecialKind::Circular => 1,
            SpecialKind::Quasicircular => 2,
        }
    }
}

/// A circular or quasicircular state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpecialState {
    pub kind: SpecialKind,
    pub n: u32,
    #[serde(rename = "Z")]
    pub z: f64,
}

impl SpecialState {
    pub fn new(kind: SpecialKind, n: u32, z: f64) -> Result<Self> {
        if n < kind.min_n() {
            return Err(Error::InvalidState(format!("{} states need n >= {}", kind.as_str(), kind.min_n())));
        }
        if !(z > 0.0) || !z.is_finite() {
            return Err(Error::InvalidState(format!("Z = {z} must be finite and positive")));
        }
        Ok(Self { kind, n, z })
    }

    /// The general state (n, l, l, Z) this family member corresponds to.
    pub fn state(&self) -> Result<QuantumState> {
        let l = match self.kind {
            SpecialKind::Circular => self.n - 1,
            SpecialKind::Quasicircular => self.n - 2,
        };
        QuantumState::with_max_n(self.n, l, l as i32, self.z, u32::MAX)
    }
}

fn need(kind: SpecialKind, n: u32) -> Result<()> {
    if n < kind.min_n() {
        Err(Error::InvalidState(format!("{} states need n >= {}", kind.as_str(), kind.min_n())))
    } else {
        Ok(())
    }
}

fn range(ok: bool, what: &str, lo: f64, hi: f64, alpha: f64) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Divergent(format!("{what} requires {lo} < alpha < {hi}, got {alpha}")))
    }
}

// --- circular states -------------------------------------------------------

/// Exact ⟨r^α⟩ or ⟨p^α⟩ of the circular state.
pub fn circ_moment(n: u32, z: f64, alpha: f64, space: Space) -> Result<f64> {
    need(SpecialKind::Circular, n)?;
    let nf = n as f64;
    match space {
        Space::Position => {
            range(alpha > -2.0 * nf - 1.0, "<r^alpha>", -2.0 * nf - 1.0, f64::INFINITY, alpha)?;
            Ok((alpha * (nf / (2.0 * z)).ln() + lgamma(2.0 * nf + alpha + 1.0) - lgamma(2.0 * nf + 1.0)).exp())
        }
        Space::Momentum => {
            let (lo, hi) = (-2.0 * nf - 1.0, 2.0 * nf + 3.0);
            range(alpha > lo && alpha < hi, "<p^alpha>", lo, hi, alpha)?;
            let ln = alpha * (z / nf).ln() + lgamma(0.5 * (3.0 - alpha) + nf) + lgamma(0.5 * (1.0 + alpha) + nf)
                - lgamma(0.5 + nf)
                - lgamma(1.5 + nf);
            Ok(ln.exp())
        }
    }
}

/// Exact ⟨r^α⟩ or ⟨p^α⟩ of the quasicircular state.
pub fn quasi_moment(n: u32, z: f64, alpha: f64, space: Space) -> Result<f64> {
    need(SpecialKind::Quasicircular, n)?;
    let nf = n as f64;
    match space {
        Space::Position => {
            range(alpha > -2.0 * nf + 1.0, "<r^alpha>", -2.0 * nf + 1.0, f64::INFINITY, alpha)?;
            let poly = (2.0 * nf + 3.0 * alpha + alpha * alpha) / (2.0 * nf);
            Ok(poly * (alpha * (nf / (2.0 * z)).ln() + lgamma(2.0 * nf + alpha - 1.0) - lgamma(2.0 * nf - 1.0)).exp())
        }
        Space::Momentum => {
            let (lo, hi) = (-2.0 * nf + 1.0, 2.0 * nf + 1.0);
            range(alpha > lo && alpha < hi, "<p^alpha>", lo, hi, alpha)?;
            let poly = (2.0 * nf + (alpha - 1.0).powi(2)) / 2.0;
            let ln = alpha * (z / nf).ln() + lgamma(nf + 0.5 * (alpha - 1.0)) + lgamma(nf + 0.5 * (1.0 - alpha))
                - lgamma(nf - 0.5)
                - lgamma(nf + 1.5);
            Ok(poly * ln.exp())
        }
    }
}

/// Leading terms (n²/Z)^α and (Z/n)^α shared by both families.
pub fn special_moment_asymptotic(n: u32, z: f64, alpha: f64, space: Space) -> AsymptoticValue {
    let nf = n as f64;
    let v = match space {
        Space::Position => (nf * nf / z).powf(alpha),
        Space::Momentum => (z / nf).powf(alpha),
    };
    AsymptoticValue::new(v, Remainder::BigOInvN)
}

/// (⟨ln r⟩, ⟨ln p⟩) of the circular state.
pub fn circ_log_moments(n: u32, z: f64) -> Result<(f64, f64)> {
    need(SpecialKind::Circular, n)?;
    let nf = n as f64;
    Ok(((nf / (2.0 * z)).ln() + psi(2.0 * nf + 1.0), -(nf / z).ln() - 1.0 / (2.0 * nf + 1.0)))
}

/// (⟨ln r⟩, ⟨ln p⟩) of the quasicircular state.
pub fn quasi_log_moments(n: u32, z: f64) -> Result<(f64, f64)> {
    need(SpecialKind::Quasicircular, n)?;
    let nf = n as f64;
    Ok((
        (nf / (2.0 * z)).ln() + 1.5 / nf + psi(2.0 * nf - 1.0),
        -(nf / z).ln() - (6.0 * nf - 1.0) / (4.0 * nf * nf - 1.0),
    ))
}

/// Printed closed forms of the circular-state Shannon entropies.
///
/// The momentum form is reproduced as printed; it differs from the entropy
/// of the circular momentum density (see [`special_audits`]).
pub fn circ_shannon(n: u32, z: f64, space: Space) -> Result<f64> {
    need(SpecialKind::Circular, n)?;
    let nf = n as f64;
    Ok(match space {
        Space::Position => {
            (PI * nf.powi(4) / z.powi(3)).ln() + 2.0 * lgamma(nf) + 2.0 * nf + 1.0
                - 2.0 * (nf - 1.0) * (0.5 / nf + psi(nf))
        }
        Space::Momentum => {
            (32.0 * PI * PI * z.powi(3) / nf.powi(4)).ln() + (nf + 1.0) / nf - 4.0 / (2.0 * nf - 1.0)
                + 4.0 * (psi(nf) - psi(2.0 * nf))
        }
    })
}

pub fn circ_shannon_asymptotic(n: u32, z: f64, space: Space) -> AsymptoticValue {
    let nf = n as f64;
    let v = match space {
        Space::Position => 5.0 * nf.ln() + 1.0 + (2.0 * PI * PI / z.powi(3)).ln() + 1.0 / (3.0 * nf),
        Space::Momentum => -4.0 * nf.ln() - 2.0 / nf + 1.0 + (2.0 * PI * PI * z.powi(3)).ln(),
    };
    AsymptoticValue::new(v, Remainder::BigOInvN2)
}

/// (I[ρ], I[γ]) of the circular state.
pub fn circ_fisher(n: u32, z: f64) -> Result<(f64, f64)> {
    need(SpecialKind::Circular, n)?;
    let nf = n as f64;
    Ok((4.0 * z * z / nf.powi(3), 4.0 * nf * nf * (nf + 2.0) / (z * z)))
}

/// Printed circular disequilibria (D[ρ], D[γ]).
pub fn circ_disequilibrium(n: u32, z: f64) -> Result<(f64, f64)> {
    need(SpecialKind::Circular, n)?;
    let nf = n as f64;
    let pos = (2.0 * nf - 1.0) * (2.0 * (lgamma(nf - 0.5) - lgamma(nf))).exp() * z.powi(3)
        / (8.0 * PI * PI * nf.powi(5));
    let mom = nf.powi(4) * (4.0 * nf + 5.0) * (4.0 * nf + 7.0) / (16.0 * PI * PI * (4.0 * nf * nf - 1.0) * z.powi(3));
    Ok((pos, mom))
}

/// Printed circular complexities, (position, momentum).
pub fn circ_complexities(n: u32) -> Result<(ComplexityTriple, ComplexityTriple)> {
    need(SpecialKind::Circular, n)?;
    let nf = n as f64;
    let a = 0.5 / nf + psi(nf);
    let fs_pos = 2.0
        * (-(PI * nf).ln() / 3.0 + 4.0 / 3.0 * lgamma(nf) + 2.0 / 3.0 * (2.0 * nf - 0.5 - 2.0 * (nf - 1.0) * a)).exp();
    let b = 1.0 / nf - 4.0 / (2.0 * nf - 1.0) + 4.0 * (psi(nf) - psi(2.0 * nf));
    let fs_mom = 16.0 * (2.0 * PI * nf).cbrt() * (nf + 2.0) * (2.0 / 3.0 * (-0.5 + b)).exp();
    let lmc_pos = (2.0 * nf - 1.0) / (8.0 * PI * nf)
        * (2.0 * lgamma(nf - 0.5) + 2.0 * nf + 1.0 - 2.0 * (nf - 1.0) * a).exp();
    let lmc_mom = 2.0 * (4.0 * nf + 5.0) * (4.0 * nf + 7.0) / (4.0 * nf * nf - 1.0) * (1.0 + b).exp();
    Ok((
        ComplexityTriple {
            cramer_rao: Tagged::exact(4.0 * nf + 6.0 + 2.0 / nf),
            fisher_shannon: Tagged::exact(fs_pos),
            lmc: Tagged::exact(lmc_pos),
        },
        ComplexityTriple {
            cramer_rao: Tagged::exact(4.0 * nf + 8.0),
            fisher_shannon: Tagged::exact(fs_mom),
            lmc: Tagged::exact(lmc_mom),
        },
    ))
}

/// Leading Fisher–Shannon term 2^{5/3}(π/e)^{1/3} n^{1/3} (both spaces).
pub fn circ_fs_asymptotic(n: u32) -> AsymptoticValue {
    let c = 2f64.powf(5.0 / 3.0) * (PI / 1f64.exp()).cbrt();
    AsymptoticValue::new(c * (n as f64).cbrt(), Remainder::BigOInvN23)
}

/// e/2 + 7e/(24n) (position) and e/2 + e/(2n) (momentum).
pub fn circ_lmc_asymptotic(n: u32, space: Space) -> AsymptoticValue {
    let e = 1f64.exp();
    let nf = n as f64;
    let v = match space {
        Space::Position => e / 2.0 + 7.0 * e / (24.0 * nf),
        Space::Momentum => e / 2.0 + e / (2.0 * nf),
    };
    AsymptoticValue::new(v, Remainder::BigOInvN2)
}

// --- quasicircular states --------------------------------------------------

/// I_n / Γ(2n − 1), by quadrature with x = 2n − 2 as a breakpoint.
pub fn in_scaled_quadrature(n: u32, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    need(SpecialKind::Quasicircular, n)?;
    let c = 2.0 * n as f64 - 2.0;
    let norm = lgamma(2.0 * n as f64 - 1.0);
    let f = |x: f64| {
        let d = c - x;
        let d2 = d * d;
        if d2 == 0.0 {
            return 0.0;
        }
        (c * x.ln() - x - norm).exp() * d2 * d2.ln()
    };
    let s = (c + 1.0).sqrt();
    let mut pts = vec![c];
    for j in 1..=10 {
        let lo = c - j as f64 * s;
        if lo > 0.0 {
            pts.push(lo);
        }
        pts.push(c + j as f64 * s);
    }
    // resolve the logarithmic singularity geometrically
    for j in 1..=8 {
        let h = s * 0.5f64.powi(j);
        if c - h > 0.0 {
            pts.push(c - h);
        }
        pts.push(c + h);
    }
    integrate_semiinf(f, &Panelization::new(pts), s, tol)
}

/// I_n by quadrature; fails with an overflow error once Γ(2n − 1) does.
pub fn in_quadrature(n: u32, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let scaled = in_scaled_quadrature(n, tol)?;
    let g = lgamma(2.0 * n as f64 - 1.0).exp();
    if !g.is_finite() {
        return Err(Error::Overflow(format!("I_n exceeds double range at n = {n}; use the scaled form")));
    }
    Ok(scaled.scale(g))
}

/// Which pieces of the hypergeometric I_n sum to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InTerms {
    All,
    /// Only the J₀ part over the positive half-line.
    J0Only,
}

/// I_n from the finite sum of digamma, ₂F₂ and ₁F₁ terms.
pub fn in_hypergeometric(n: u32) -> Result<f64> {
    in_hypergeometric_terms(n, InTerms::All)
}

pub fn in_hypergeometric_terms(n: u32, terms: InTerms) -> Result<f64> {
    need(SpecialKind::Quasicircular, n)?;
    if n > IN_HYPERGEOMETRIC_MAX_N {
        return Err(Error::Conditioning(format!(
            "the hypergeometric I_n sum cancels catastrophically beyond n = {IN_HYPERGEOMETRIC_MAX_N}; use quadrature"
        )));
    }
    let nf = n as f64;
    let ci = 2 * n as u64 - 2;
    let c = ci as f64;
    let ln_c2 = (c * c).ln();
    let mut acc = 0.0;
    for k in 0..=ci {
        let a = k as f64 + 3.0;
        let mut brace = 2.0 * lgamma(a).exp() * psi(a);
        if terms == InTerms::All {
            let f22 = hyp2f2(a, a, a + 1.0, a + 1.0, c)?.value;
            let f11 = hyp1f1(a, a + 1.0, c)?.value;
            brace += 2f64.powf(k as f64 + 4.0) * (1.0 - nf).powf(a) / (a * a) * f22;
            brace -= (2.0 - 2.0 * nf).powf(a) / a * f11 * ln_c2;
        }
        acc += (ln_binomial(ci, k) - k as f64 * c.ln()).exp() * brace;
    }
    Ok((c * c.ln() - c).exp() * acc)
}

/// Printed position entropy of the quasicircular state, with I_n/Γ(2n−1)
/// supplied by the caller.
pub fn quasi_shannon_position_with(n: u32, z: f64, in_scaled: f64) -> f64 {
    let nf = n as f64;
    (2.0 * PI / z.powi(3)).ln() + 3.0 * nf.ln() - (1.0 - 1.0 / nf).ln() + 2.0 * nf + 1.0 + 4.0 / nf
        - 1.0 / (nf - 1.0)
        + 2.0 * lgamma(nf)
        - 2.0 * (nf - 2.0) * psi(nf)
        - in_scaled / (2.0 * nf)
}

/// Position entropy of the quasicircular state with I_n by quadrature.
pub fn quasi_shannon_position(n: u32, z: f64, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    let i = in_scaled_quadrature(n, tol)?;
    let nf = n as f64;
    let value = quasi_shannon_position_with(n, z, i.value);
    Ok(QuadResult { value, abs_err: i.abs_err / (2.0 * nf), evaluations: i.evaluations, warning: i.warning })
}

/// −I_n/(2nΓ(2n−1)) ≈ −ln n + γ − 2.
pub fn in_term_asymptotic(n: u32) -> AsymptoticValue {
    AsymptoticValue::new(-(n as f64).ln() + EULER_GAMMA - 2.0, Remainder::LittleO1)
}

/// 5 ln n + ln(4π²/Z³) + γ.
pub fn quasi_shannon_position_asymptotic(n: u32, z: f64) -> AsymptoticValue {
    AsymptoticValue::new(5.0 * (n as f64).ln() + (4.0 * PI * PI / z.powi(3)).ln() + EULER_GAMMA, Remainder::LittleO1)
}

/// Printed closed form of Ĩ_n.
pub fn tilde_in(n: u32) -> Result<f64> {
    need(SpecialKind::Quasicircular, n)?;
    let nf = n as f64;
    let m1 = nf - 1.0;
    let pref = 2.0 * m1 * m1 * (LN_SQRT_PI + lgamma(nf - 0.5) - lgamma(nf + 1.0)).exp();
    Ok(pref * ((4.0 * m1 * m1).ln() - psi(nf) - EULER_GAMMA + 2.0 * (1.0 - LN_2) - 1.0 / nf))
}

/// Ĩ_n by quadrature, with a breakpoint at the logarithmic singularity x = 0.
pub fn tilde_in_quadrature(n: u32, tol: impl Into<Tolerance>) -> Result<QuadResult> {
    need(SpecialKind::Quasicircular, n)?;
    let nf = n as f64;
    let a2 = 4.0 * (nf - 1.0).powi(2);
    let e = nf - 1.5;
    let f = |x: f64| {
        let u = a2 * x * x;
        if u == 0.0 {
            return 0.0;
        }
        (e * ((-x).ln_1p() + x.ln_1p())).exp() * u * u.ln()
    };
    let pts = (1..=10).flat_map(|j| {
        let h = 0.5f64.powi(j);
        [-h, h]
    });
    let panels = Panelization::new(pts.chain([0.0])).with_end_grading(-1.0, 1.0, 6);
    integrate_finite(f, -1.0, 1.0, &panels, tol)
}

/// Printed momentum entropy of the quasicircular state for a given Ĩ_n.
pub fn quasi_shannon_momentum_with(n: u32, z: f64, tilde: f64) -> f64 {
    let nf = n as f64;
    let last = nf / (2f64.powf(3.0 - 2.0 * nf) * PI) * (2.0 * lgamma(nf - 1.0) - lgamma(2.0 * nf - 1.0)).exp() * tilde;
    (64.0 * PI * PI * z.powi(3)).ln() - 3.0 * nf.ln() + (1.0 - 1.0 / nf).ln() + 2.0 - 1.0 / (nf - 1.0)
        - 8.0 / (2.0 * nf + 1.0)
        + 4.0 * (psi(nf) - psi(2.0 * nf))
        - last
}

/// Momentum entropy of the quasicircular state with the closed-form Ĩ_n.
pub fn quasi_shannon_momentum(n: u32, z: f64) -> Result<f64> {
    Ok(quasi_shannon_momentum_with(n, z, tilde_in(n)?))
}

/// −4 ln n + ln(4π²Z³) + γ − 9/(2n).
pub fn quasi_shannon_momentum_asymptotic(n: u32, z: f64) -> AsymptoticValue {
    let nf = n as f64;
    AsymptoticValue::new(
        -4.0 * nf.ln() + (4.0 * PI * PI * z.powi(3)).ln() + EULER_GAMMA - 4.5 / nf,
        Remainder::BigOInvN32,
    )
}

/// (I[ρ], I[γ]) of the quasicircular state.
pub fn quasi_fisher(n: u32, z: f64) -> Result<(f64, f64)> {
    need(SpecialKind::Quasicircular, n)?;
    let nf = n as f64;
    Ok((8.0 * z * z / nf.powi(3), 2.0 * nf * nf * (4.0 * nf + 13.0) / (z * z)))
}

/// Printed (C_CR[ρ], C_CR[γ]) of the quasicircular state.
pub fn quasi_cramer_rao(n: u32) -> Result<(f64, f64)> {
    need(SpecialKind::Quasicircular, n)?;
    let nf = n as f64;
    Ok((8.0 * nf + 36.0 - 20.0 / nf, 8.0 * nf + 26.0))
}

/// Printed (W₂[ρ], W₂[γ]) of the quasicircular state.
pub fn quasi_disequilibrium(n: u32, z: f64) -> Result<(f64, f64)> {
    need(SpecialKind::Quasicircular, n)?;
    let nf = n as f64;
    let ln_pos = (2.0 * nf - 9.0) * LN_2 + 3.0 * lgamma(nf - 1.5) - 5.0 * LN_SQRT_PI - 5.0 * nf.ln()
        - lgamma(nf - 1.0)
        - lgamma(2.0 * nf - 1.0);
    let pos = (3.0 - 2.0 * nf).powi(2) * (6.0 * nf - 7.0) * ln_pos.exp() * z.powi(3);
    let mom = 3.0 * (nf - 1.0) * nf.powi(4) * (16.0 * nf * (nf + 13.0) + 275.0)
        / (32.0 * PI * PI * (2.0 * nf - 3.0) * (2.0 * nf - 1.0) * (2.0 * nf + 1.0) * z.powi(3));
    Ok((pos, mom))
}

/// Momentum complexities assembled from the printed entropy, Fisher
/// information and W₂: (C_FS[γ], C_LMC[γ]).
pub fn quasi_momentum_complexities(n: u32) -> Result<(f64, f64)> {
    let s = quasi_shannon_momentum(n, 1.0)?;
    let (_, i) = quasi_fisher(n, 1.0)?;
    let (_, w) = quasi_disequilibrium(n, 1.0)?;
    Ok((i * (2.0 * s / 3.0).exp() / (2.0 * PI * 1f64.exp()), w * s.exp()))
}

/// 8(2π)^{1/3} e^{−1+2γ/3} n^{1/3} in both spaces.
pub fn quasi_fs_asymptotic(n: u32, space: Space) -> AsymptoticValue {
    let c = 8.0 * (2.0 * PI).cbrt() * (-1.0 + 2.0 * EULER_GAMMA / 3.0).exp();
    let rem = match space {
        Space::Position => Remainder::LittleON13,
        Space::Momentum => Remainder::BigOInvN23,
    };
    AsymptoticValue::new(c * (n as f64).cbrt(), rem)
}

/// (3/4)e^γ, plus 27e^γ/(4n) in momentum space.
pub fn quasi_lmc_asymptotic(n: u32, space: Space) -> AsymptoticValue {
    let g = EULER_GAMMA.exp();
    match space {
        Space::Position => AsymptoticValue::new(0.75 * g, Remainder::LittleO1),
        Space::Momentum => AsymptoticValue::new(0.75 * g + 27.0 * g / (4.0 * n as f64), Remainder::BigOInvN2),
    }
}

// --- audits ----------------------------------------------------------------

fn fq(name: &str, s: &QuantumState, printed: f64, reference: f64) -> AuditRecord {
    AuditRecord::equality(format!("formula-vs-quadrature:{name}"), Some(*s), printed, reference)
}

/// Every printed closed form of the family against the general machinery
/// on the mapped state.
pub fn special_audits(sp: &SpecialState, tol: impl Into<Tolerance>) -> Result<Vec<AuditRecord>> {
    let tol = tol.into();
    let s = sp.state()?;
    let (n, z) = (sp.n, sp.z);
    let mut out = Vec::new();
    let sh_pos = shannon(&s, Space::Position, tol)?.value;
    let sh_mom = shannon(&s, Space::Momentum, tol)?.value;
    let d_pos = disequilibrium(&s, Space::Position, tol)?.value;
    let d_mom = disequilibrium(&s, Space::Momentum, tol)?.value;
    let (prefix, moment): (&str, fn(u32, f64, f64, Space) -> Result<f64>) = match sp.kind {
        SpecialKind::Circular => ("circ", circ_moment),
        SpecialKind::Quasicircular => ("quasi", quasi_moment),
    };
    for alpha in [-1.0, 1.0, 2.0] {
        out.push(fq(
            &format!("{prefix}-moment-position:{alpha}"),
            &s,
            moment(n, z, alpha, Space::Position)?,
            r_moment(&s, alpha, tol)?.value,
        ));
        out.push(fq(
            &format!("{prefix}-moment-momentum:{alpha}"),
            &s,
            moment(n, z, alpha, Space::Momentum)?,
            p_moment(&s, alpha, tol)?.value,
        ));
    }
    let (lr, lp) = match sp.kind {
        SpecialKind::Circular => circ_log_moments(n, z)?,
        SpecialKind::Quasicircular => quasi_log_moments(n, z)?,
    };
    out.push(fq(&format!("{prefix}-log-moment-position"), &s, lr, log_r_moment(&s, tol)?.value));
    out.push(fq(&format!("{prefix}-log-moment-momentum"), &s, lp, log_p_moment(&s, tol)?.value));
    match sp.kind {
        SpecialKind::Circular => {
            let (ip, ig) = circ_fisher(n, z)?;
            out.push(fq("circ-fisher-position", &s, ip, fisher_position(&s)));
            out.push(fq("circ-fisher-momentum", &s, ig, fisher_momentum(&s)));
            out.push(fq("circ-shannon-position", &s, circ_shannon(n, z, Space::Position)?, sh_pos));
            out.push(fq("circ-shannon-momentum", &s, circ_shannon(n, z, Space::Momentum)?, sh_mom));
            let (dp, dg) = circ_disequilibrium(n, z)?;
            out.push(fq("circ-disequilibrium-position", &s, dp, d_pos));
            out.push(fq("circ-disequilibrium-momentum", &s, dg, d_mom));
            let (cp, cg) = circ_complexities(n)?;
            out.push(fq("circ-cramer-rao-position", &s, cp.cramer_rao.value, cramer_rao(&s, Space::Position)));
            out.push(fq("circ-cramer-rao-momentum", &s, cg.cramer_rao.value, cramer_rao(&s, Space::Momentum)));
            out.push(fq(
                "circ-fisher-shannon-position",
                &s,
                cp.fisher_shannon.value,
                fisher_shannon(&s, Space::Position, tol)?.value,
            ));
            out.push(fq(
                "circ-fisher-shannon-momentum",
                &s,
                cg.fisher_shannon.value,
                fisher_shannon(&s, Space::Momentum, tol)?.value,
            ));
            out.push(fq("circ-lmc-position", &s, cp.lmc.value, lmc(&s, Space::Position, tol)?.value));
            out.push(fq("circ-lmc-momentum", &s, cg.lmc.value, lmc(&s, Space::Momentum, tol)?.value));
        }
        SpecialKind::Quasicircular => {
            let (ip, ig) = quasi_fisher(n, z)?;
            out.push(fq("quasi-fisher-position", &s, ip, fisher_position(&s)));
            out.push(fq("quasi-fisher-momentum", &s, ig, fisher_momentum(&s)));
            let (cp, cg) = quasi_cramer_rao(n)?;
            out.push(fq("quasi-cramer-rao-position", &s, cp, cramer_rao(&s, Space::Position)));
            out.push(fq("quasi-cramer-rao-momentum", &s, cg, cramer_rao(&s, Space::Momentum)));
            out.push(fq("quasi-shannon-position", &s, quasi_shannon_position(n, z, tol)?.value, sh_pos));
            out.push(fq("quasi-shannon-momentum", &s, quasi_shannon_momentum(n, z)?, sh_mom));
            out.push(fq("quasi-tilde-integral", &s, tilde_in(n)?, tilde_in_quadrature(n, tol)?.value));
            if n <= IN_HYPERGEOMETRIC_MAX_N {
                let scale = lgamma(2.0 * n as f64 - 1.0).exp();
                out.push(AuditRecord::relative_equality(
                    "formula-vs-quadrature:quasi-in-hypergeometric",
                    Some(s),
                    in_hypergeometric(n)?,
                    in_scaled_quadrature(n, tol)?.value * scale,
                ));
            }
            let (wp, wg) = quasi_disequilibrium(n, z)?;
            out.push(fq("quasi-disequilibrium-position", &s, wp, d_pos));
            out.push(fq("quasi-disequilibrium-momentum", &s, wg, d_mom));
            let (fs, lm) = quasi_momentum_complexities(n)?;
            out.push(fq("quasi-fisher-shannon-momentum", &s, fs, fisher_shannon(&s, Space::Momentum, tol)?.value));
            out.push(fq("quasi-lmc-momentum", &s, lm, lmc(&s, Space::Momentum, tol)?.value));
        }
    }
    // the exact general disequilibrium sum is an independent second reference
    out.push(AuditRecord::relative_equality(
        format!("formula-vs-quadrature:{prefix}-disequilibrium-exact-sum"),
        Some(s),
        disequilibrium_exact(&s)?,
        d_pos,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    const TOL: f64 = 1e-12;

    #[test]
    fn circular_small_n() {
        assert_relative_eq!(circ_moment(1, 2.0, 1.0, Space::Position).unwrap(), 0.75, epsilon = 1e-14);
        assert_relative_eq!(circ_moment(7, 2.0, 0.0, Space::Momentum).unwrap(), 1.0, epsilon = 1e-13);
        assert!(circ_moment(3, 1.0, -7.0, Space::Position).is_err());
        assert!(circ_moment(3, 1.0, 9.0, Space::Momentum).is_err());
        let (lr, lp) = circ_log_moments(1, 1.0).unwrap();
        assert_relative_eq!(lr, psi(3.0) - LN_2, epsilon = 1e-14);
        assert_relative_eq!(lp, -1.0 / 3.0, epsilon = 1e-14);
        assert_relative_eq!(circ_shannon(1, 1.0, Space::Position).unwrap(), 3.0 + PI.ln(), epsilon = 1e-13);
        assert_relative_eq!(
            circ_shannon(1, 1.0, Space::Momentum).unwrap(),
            (32.0 * PI * PI).ln() - 6.0,
            epsilon = 1e-13
        );
        let (dp, dg) = circ_disequilibrium(1, 3.0).unwrap();
        assert_relative_eq!(dp, 27.0 / (8.0 * PI), max_relative = 1e-13);
        assert_relative_eq!(dg, 33.0 / (16.0 * PI * PI * 27.0), max_relative = 1e-13);
        let (cp, cg) = circ_complexities(1).unwrap();
        assert_eq!((cp.cramer_rao.value, cg.cramer_rao.value), (12.0, 12.0));
        assert_relative_eq!(cp.lmc.value, 3f64.exp() / 8.0, max_relative = 1e-13);
    }

    #[test]
    fn circular_against_general() {
        for n in [2u32, 5, 10] {
            let sp = SpecialState::new(SpecialKind::Circular, n, 1.0).unwrap();
            let s = sp.state().unwrap();
            assert_relative_eq!(
                circ_moment(n, 1.0, 2.0, Space::Position).unwrap(),
                r_moment(&s, 2.0, TOL).unwrap().value,
                max_relative = 1e-9
            );
            assert_relative_eq!(
                circ_shannon(n, 1.0, Space::Position).unwrap(),
                shannon(&s, Space::Position, TOL).unwrap().value,
                epsilon = 1e-8
            );
        }
    }

    #[test]
    fn printed_momentum_entropy_discrepancy() {
        let s = QuantumState::new(1, 0, 0, 1.0).unwrap();
        let q = shannon(&s, Space::Momentum, TOL).unwrap().value;
        let printed = circ_shannon(1, 1.0, Space::Momentum).unwrap();
        assert_relative_eq!(q - printed, 8.0 / 3.0, epsilon = 1e-9);
    }

    #[test]
    fn quasicircular_small_n() {
        assert_relative_eq!(quasi_moment(5, 1.0, 0.0, Space::Position).unwrap(), 1.0, epsilon = 1e-13);
        assert_relative_eq!(quasi_moment(5, 1.0, 0.0, Space::Momentum).unwrap(), 1.0, epsilon = 1e-13);
        let s = QuantumState::new(2, 0, 0, 1.5).unwrap();
        assert_relative_eq!(
            quasi_moment(2, 1.5, 2.0, Space::Position).unwrap(),
            r_moment(&s, 2.0, TOL).unwrap().value,
            max_relative = 1e-10
        );
        for n in [2u32, 6, 15] {
            assert_relative_eq!(
                quasi_moment(n, 2.0, 2.0, Space::Momentum).unwrap(),
                4.0 / (n * n) as f64,
                max_relative = 1e-12
            );
        }
        let (lr, lp) = quasi_log_moments(2, 1.0).unwrap();
        assert_relative_eq!(lr, log_r_moment(&s.with_z(1.0).unwrap(), TOL).unwrap().value, epsilon = 1e-9);
        assert_relative_eq!(lp, log_p_moment(&s.with_z(1.0).unwrap(), TOL).unwrap().value, epsilon = 1e-9);
        assert_eq!(quasi_cramer_rao(2).unwrap(), (42.0, 42.0));
        assert_relative_eq!(quasi_fisher(2, 3.0).unwrap().0, 9.0, epsilon = 1e-14);
    }

    #[test]
    fn tilde_integral() {
        assert_relative_eq!(tilde_in(2).unwrap(), PI / 4.0, epsilon = 1e-14);
        for n in [2u32, 3, 7, 20] {
            assert_relative_eq!(tilde_in(n).unwrap(), tilde_in_quadrature(n, TOL).unwrap().value, max_relative = 1e-10);
        }
    }

    #[test]
    fn in_routes_agree() {
        for n in 2..=5u32 {
            let q = in_quadrature(n, TOL).unwrap().value;
            let h = in_hypergeometric(n).unwrap();
            assert_relative_eq!(h, q, max_relative = 1e-7);
        }
        let full = in_hypergeometric(2).unwrap();
        let j0 = in_hypergeometric_terms(2, InTerms::J0Only).unwrap();
        assert!((full - j0).abs() > 1e-3);
        assert!(matches!(in_hypergeometric(11), Err(Error::Conditioning(_))));
        assert!(matches!(in_quadrature(200, TOL), Err(Error::Overflow(_))));
    }

    #[test]
    fn quasi_position_entropy() {
        let s = QuantumState::new(2, 0, 0, 1.0).unwrap();
        let q = shannon(&s, Space::Position, TOL).unwrap().value;
        assert_relative_eq!(quasi_shannon_position(2, 1.0, TOL).unwrap().value, q, epsilon = 1e-8);
    }

    #[test]
    fn quasi_disequilibria() {
        let s = QuantumState::new(2, 0, 0, 1.0).unwrap();
        let (wp, wg) = quasi_disequilibrium(2, 1.0).unwrap();
        assert_relative_eq!(wp, disequilibrium(&s, Space::Position, TOL).unwrap().value, max_relative = 1e-9);
        assert_relative_eq!(wg, disequilibrium(&s, Space::Momentum, TOL).unwrap().value, max_relative = 1e-9);
    }
}
