//! Closed-form thresholds relating SBM parameters to ρ-happiness of the
//! community-induced colouring.
//!
//! All quantities are plain `f64`. Internal identities hold to about 1e-9
//! at the parameter scales used by the experiments.

use std::f64::consts::E;

use serde::Serialize;

use crate::error::{Error, Result};

/// Expected vertex degree `(n/k − 1)·p + ((k−1)/k)·n·q`.
pub fn expected_degree(n: usize, k: u32, p: f64, q: f64) -> f64 {
    let (n, k) = (n as f64, k as f64);
    (n / k - 1.0) * p + ((k - 1.0) / k) * n * q
}

/// Exponent rate `φ = (p(e^ρ − e) + q(k−1)(e^ρ − 1)) / k`.
pub fn phi(k: u32, p: f64, q: f64, rho: f64) -> f64 {
    let k = k as f64;
    let er = rho.exp();
    (p * (er - E) + q * (k - 1.0) * (er - 1.0)) / k
}

/// Per-vertex unhappiness bound `ε̃ = e^{nφ}`. Exceeds 1 when the bound is
/// vacuous.
pub fn epsilon_tilde(n: usize, k: u32, p: f64, q: f64, rho: f64) -> f64 {
    (n as f64 * phi(k, p, q, rho)).exp()
}

/// `(1 − ε̃)^n`, or 0 when `ε̃ >= 1`.
pub fn prob_lower_bound(n: usize, epsilon_tilde: f64) -> f64 {
    if epsilon_tilde.is_nan() || epsilon_tilde >= 1.0 {
        return 0.0;
    }
    if epsilon_tilde <= 0.0 {
        return 1.0;
    }
    (n as f64 * (-epsilon_tilde).ln_1p()).exp().clamp(0.0, 1.0)
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(Error::param(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )))
    }
}

/// The sufficient condition `q(k−1)(e^ρ−1) + p(e^ρ−e) < (k/n)·ln ε` under
/// which the communities induce a ρ-happy colouring with probability at
/// least `(1−ε)^n`.
pub fn theorem1_inequality_holds(
    n: usize,
    k: u32,
    p: f64,
    q: f64,
    rho: f64,
    epsilon: f64,
) -> Result<bool> {
    check_epsilon(epsilon)?;
    if !(rho > 0.0 && rho <= 1.0) {
        return Err(Error::param(format!("rho must lie in (0, 1], got {rho}")));
    }
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    let er = rho.exp();
    let lhs = q * (k as f64 - 1.0) * (er - 1.0) + p * (er - E);
    let rhs = (k as f64 / n as f64) * epsilon.ln();
    Ok(lhs < rhs)
}

/// `p / (p + (k−1)q)`, the upper bound every threshold respects.
pub fn xi_upper_bound(k: u32, p: f64, q: f64) -> f64 {
    p / (p + (k as f64 - 1.0) * q)
}

fn ln_or_neg_inf(x: f64) -> f64 {
    if x > 0.0 {
        x.ln()
    } else {
        f64::NEG_INFINITY
    }
}

/// Finite-n threshold
/// `ξ = max{ min{ ln(((k/n)ln ε + pe + (k−1)q) / (p + (k−1)q)), p/(p+(k−1)q) }, 0 }`.
///
/// A non-positive logarithm argument is treated as `ln = −∞`, giving 0.
pub fn xi(n: usize, k: u32, p: f64, q: f64, epsilon: f64) -> Result<f64> {
    check_epsilon(epsilon)?;
    if n == 0 {
        return Err(Error::param("n must be positive"));
    }
    let kq = (k as f64 - 1.0) * q;
    let arg = ((k as f64 / n as f64) * epsilon.ln() + p * E + kq) / (p + kq);
    Ok(ln_or_neg_inf(arg).min(xi_upper_bound(k, p, q)).max(0.0))
}

/// Default confidence parameter `ε = n⁻²`.
pub fn default_epsilon(n: usize) -> f64 {
    (n as f64).powi(-2)
}

/// [`xi`] with `ε = n⁻²`. For `n = 1` that epsilon is 1, which lies outside
/// the domain, so the threshold is reported as 0.
pub fn xi_default(n: usize, k: u32, p: f64, q: f64) -> f64 {
    xi(n, k, p, q, default_epsilon(n)).unwrap_or(0.0)
}

/// Asymptotic threshold `ξ̃ = min{ ln((pe + (k−1)q)/(p + (k−1)q)), p/(p+(k−1)q) }`.
pub fn xi_tilde(k: u32, p: f64, q: f64) -> f64 {
    let kq = (k as f64 - 1.0) * q;
    ln_or_neg_inf((p * E + kq) / (p + kq)).min(xi_upper_bound(k, p, q))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub n: usize,
    pub k: u32,
    pub p: f64,
    pub q: f64,
    pub rho: f64,
    pub xi: f64,
    pub xi_tilde: f64,
    pub epsilon_used: f64,
    pub phi: f64,
    pub epsilon_tilde: f64,
    pub expected_degree: f64,
    pub prob_lower_bound: f64,
    pub inequality_holds: bool,
}

impl ThresholdReport {
    /// `epsilon` defaults to `n⁻²`.
    pub fn compute(
        n: usize,
        k: u32,
        p: f64,
        q: f64,
        rho: f64,
        epsilon: Option<f64>,
    ) -> Result<Self> {
        if n < 2 {
            return Err(Error::param(format!("n must be at least 2, got {n}")));
        }
        if k == 0 || k as usize > n {
            return Err(Error::param(format!("need 1 <= k <= n, got k={k}")));
        }
        if !((0.0..=1.0).contains(&p) && (0.0..=1.0).contains(&q)) || p + q == 0.0 {
            return Err(Error::param(format!(
                "edge probabilities must lie in [0, 1] and not both vanish (p={p}, q={q})"
            )));
        }
        let epsilon = epsilon.unwrap_or_else(|| default_epsilon(n));
        let phi = phi(k, p, q, rho);
        let eps_tilde = (n as f64 * phi).exp();
        Ok(ThresholdReport {
            n,
            k,
            p,
            q,
            rho,
            xi: xi(n, k, p, q, epsilon)?,
            xi_tilde: xi_tilde(k, p, q),
            epsilon_used: epsilon,
            phi,
            epsilon_tilde: eps_tilde,
            expected_degree: expected_degree(n, k, p, q),
            prob_lower_bound: prob_lower_bound(n, eps_tilde),
            inequality_holds: theorem1_inequality_holds(n, k, p, q, rho, epsilon)?,
        })
    }
}
