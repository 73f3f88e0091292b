//! Closed forms and Fourier inversion for the alternating (`L`) and
//! half-plane (`H`) lattices.
//!
//! The horizontal run length is geometric, `P(xi = l) = p q^l`, with
//! characteristic function `chi(theta) = p / (1 - q e^{i theta})`, modulus
//! `r(theta)` and phase `alpha(theta)`. On the alternating lattice the
//! embedded walk at the n-th skeleton return has the real characteristic
//! function `(1 - sqrt(1 - r^2))^n`; on the half-plane lattice it is
//! `g(theta)^n` for a complex `g` built from the first-return generating
//! function. Return probabilities come from inverting these by quadrature;
//! the inversion carries the `1/(2 pi)` normalization that makes the n = 1
//! probabilities sum to one.
//!
//! Defaults use `p = 2/3` (probability of a vertical move) and `q = 1/3`
//! (horizontal continuation), the labeling consistent with the simulated
//! walk; all operations accept arbitrary `(p, q)`.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::quadrature::{self, QuadResult, QuadratureSpec};
use crate::{Error, Result};

/// The `(p, q)` pair of the geometric run-length law, `p + q = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    p: f64,
    q: f64,
}

impl SpectralParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain(format!("p must lie in (0,1), got {p}")));
        }
        Ok(Self { p, q: 1.0 - p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn q(&self) -> f64 {
        self.q
    }
}

impl Default for SpectralParams {
    fn default() -> Self {
        Self {
            p: 2.0 / 3.0,
            q: 1.0 / 3.0,
        }
    }
}

/// Characteristic function of the geometric run length,
/// `chi(theta) = p / (1 - q e^{i theta})`.
pub fn chi(params: &SpectralParams, theta: f64) -> Complex64 {
    params.p / (Complex64::new(1.0, 0.0) - params.q * Complex64::from_polar(1.0, theta))
}

/// `r(theta) = |chi(theta)|`, evaluated in the cancellation-free half-angle
/// form `p / sqrt(p^2 + 4 q sin^2(theta/2))`.
pub fn modulus_r(params: &SpectralParams, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    params.p / (params.p * params.p + 4.0 * params.q * s * s).sqrt()
}

/// Phase `alpha(theta) = arctan(q sin(theta) / (1 - q cos(theta)))`, odd in
/// `theta`; `chi = r e^{i alpha}`.
pub fn angle_alpha(params: &SpectralParams, theta: f64) -> f64 {
    (params.q * theta.sin()).atan2(1.0 - params.q * theta.cos())
}

/// Generating function of the skeleton first-return time,
/// `f(s) = 1 - sqrt(1 - s^2)` for `|s| <= 1`.
pub fn first_return_gf(s: f64) -> Result<f64> {
    if !(-1.0..=1.0).contains(&s) {
        return Err(Error::Domain(format!("first_return_gf needs |s| <= 1, got {s}")));
    }
    Ok(1.0 - (1.0 - s * s).sqrt())
}

/// `sqrt(1 - r(theta)^2)` without cancellation near `theta = 0`.
fn sqrt_one_minus_r2(params: &SpectralParams, theta: f64) -> f64 {
    let s = (0.5 * theta).sin();
    let w = 4.0 * params.q * s * s;
    (w / (params.p * params.p + w)).sqrt()
}

/// Characteristic function of the embedded walk at the n-th skeleton return
/// on the alternating lattice: `(1 - sqrt(1 - r(theta)^2))^n`. Real-valued,
/// in `[0, 1]`.
pub fn char_l(params: &SpectralParams, theta: f64, n: u32) -> f64 {
    (1.0 - sqrt_one_minus_r2(params, theta)).powi(n as i32)
}

/// Per-return characteristic function `g(theta)` of the embedded walk on the
/// half-plane lattice. `g(0) = 1`; `|g(theta)| < 1` off zero.
pub fn g_h(params: &SpectralParams, theta: f64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let e = Complex64::from_polar(1.0, theta);
    let denom = one - params.q * e;
    let chi = params.p / denom;

    // 1 - chi = q (1 - e^{i theta}) / (1 - q e^{i theta}), with the numerator
    // in half-angle form to stay exact near theta = 0
    let (s, c) = (0.5 * theta).sin_cos();
    let one_minus_e = Complex64::new(2.0 * s * s, -2.0 * s * c);
    let one_minus_chi = params.q * one_minus_e / denom;

    let arg = one_minus_chi * (one + chi); // = 1 - chi^2
    // |chi| < 1 keeps Re(1 - chi^2) > 0, so the principal branch never
    // crosses the cut
    debug_assert!(arg.re >= -1e-12, "1 - chi^2 left the right half-plane: {arg}");
    let root = arg.sqrt();
    let root_conj = (arg.conj()).sqrt(); // 1 - conj(chi)^2

    let phase = Complex64::from_polar(1.0, angle_alpha(params, theta));
    0.5 * chi * ((one - root) / phase + (one - root_conj) * phase)
}

/// `(1 - g(theta)) / sqrt(theta)` for `theta > 0`; approaches
/// `sqrt(q / p)` as `theta -> 0+`.
pub fn g_limit_ratio(params: &SpectralParams, theta: f64) -> Result<Complex64> {
    if theta <= 0.0 {
        return Err(Error::Domain(format!("g_limit_ratio needs theta > 0, got {theta}")));
    }
    Ok((Complex64::new(1.0, 0.0) - g_h(params, theta)) / theta.sqrt())
}

/// `P(X_{sigma_n} = 0)` on the alternating lattice by Fourier inversion:
/// `(1/2pi) int_{-pi}^{pi} char_l(theta, n) dtheta`.
pub fn return_prob_l(params: &SpectralParams, n: u32, spec: &QuadratureSpec) -> Result<QuadResult> {
    let r = quadrature::integrate(|theta| char_l(params, theta, n), 0.0, PI, spec)?;
    // even integrand: double the half-range integral, normalize by 2 pi
    Ok(QuadResult {
        value: r.value / PI,
        abs_error: r.abs_error / PI,
        panels: r.panels,
    })
}

/// Partial Green sum `sum_{n=1..N} P(X_{sigma_n} = 0)` on the alternating
/// lattice; grows like `(2 / (pi sqrt(3))) ln N` at the default parameters.
pub fn green_sum_l(params: &SpectralParams, n_max: u32, spec: &QuadratureSpec) -> Result<QuadResult> {
    if n_max == 0 {
        return Err(Error::Domain("green_sum_l needs N >= 1".into()));
    }
    let mut value = 0.0;
    let mut abs_error = 0.0;
    let mut panels = 0;
    for n in 1..=n_max {
        let r = return_prob_l(params, n, spec)?;
        value += r.value;
        abs_error += r.abs_error;
        panels = panels.max(r.panels);
    }
    Ok(QuadResult {
        value,
        abs_error,
        panels,
    })
}

/// Cutoff Green integral of the half-plane lattice,
/// `int_eps^pi 2 Re[chi(theta) / (1 - g(theta))] dtheta`. The integrand has
/// an integrable `theta^{-1/2}` singularity at 0, so the values form a
/// Cauchy sequence as `eps` decreases.
pub fn green_sum_h(params: &SpectralParams, spec: &QuadratureSpec, eps: f64) -> Result<QuadResult> {
    if !(eps > 0.0 && eps < PI) {
        return Err(Error::Domain(format!("green_sum_h needs eps in (0, pi), got {eps}")));
    }
    quadrature::integrate(
        |theta| 2.0 * (chi(params, theta) / (Complex64::new(1.0, 0.0) - g_h(params, theta))).re,
        eps,
        PI,
        spec,
    )
}

/// Diagnostic contrast for the alternating lattice: the cutoff integral
/// `int_eps^pi 2 / sqrt(1 - r(theta)^2) dtheta`, which grows like
/// `(2p/sqrt(q)) ln(1/eps)` — the non-integrable counterpart of
/// [`green_sum_h`].
pub fn green_cutoff_l(params: &SpectralParams, spec: &QuadratureSpec, eps: f64) -> Result<QuadResult> {
    if !(eps > 0.0 && eps < PI) {
        return Err(Error::Domain(format!("green_cutoff_l needs eps in (0, pi), got {eps}")));
    }
    quadrature::integrate(
        |theta| 2.0 / sqrt_one_minus_r2(params, theta),
        eps,
        PI,
        spec,
    )
}
