//! Analytic integrals of Scarf II eigenfunctions.
//!
//! Everything is built on
//!
//! ```text
//! A0(p, q) = integral (1 - i sinh x)^p (1 + i sinh x)^q dx
//!          = 2^(p+q+1) pi Gamma(-p-q) / (Gamma(1/2-p) Gamma(1/2-q))
//! ```
//!
//! and its `sinh x`-weighted sibling `A1`. Products of two `F` functions
//! expand into finite double sums of such terms; under the conditions
//! `conj(delta) = alpha`, `conj(gamma) = beta` the sums collapse to a single
//! Kronecker-delta term.
//!
//! PT-regime outputs use unnormalized wavefunctions (`C = 1`). Only the
//! Hermitian regime has normalization constants.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{bound_state_count_for, energy_for, is_imaginary, is_real, QuasiParity, REGIME_TOL};
use crate::special::{binomial_falling, gamma_ratio_of, gen_binomial, ln_factorial, log_gamma};

/// Sines smaller than this make a sine-prefactored form degenerate.
const SINE_TOL: f64 = 1e-8;

/// Absolute threshold below which a pseudo-norm is reported as zero.
pub const PSEUDO_ZERO_TOL: f64 = 1e-14;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn sin_pi(z: Complex64) -> Complex64 {
    (z * PI).sin()
}

fn sign_pow(k: usize) -> f64 {
    if k % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `A0(p, q)`; requires `Re(p+q) < 0`.
pub fn a0(p: Complex64, q: Complex64) -> Result<Complex64> {
    let s = p + q;
    if s.re >= 0.0 {
        return Err(Error::Divergence { re_sum: s.re });
    }
    let prefactor = c(2.0).powc(s + 1.0) * PI;
    Ok(prefactor * gamma_ratio_of(&[-s], &[0.5 - p, 0.5 - q])?)
}

/// `A1(p, q) = integral sinh x (1 - i sinh x)^p (1 + i sinh x)^q dx = i (p-q)/(p+q+1) A0(p, q)`.
pub fn a1(p: Complex64, q: Complex64) -> Result<Complex64> {
    let s = p + q;
    if s.re >= 0.0 {
        return Err(Error::Divergence { re_sum: s.re });
    }
    let diff = p - q;
    if diff.norm() <= REGIME_TOL {
        return Ok(c(0.0));
    }
    let denom = s + 1.0;
    if denom.norm() <= REGIME_TOL {
        return Err(Error::Pole { arg: denom });
    }
    Ok(Complex64::i() * diff / denom * a0(p, q)?)
}

/// Parameters of `Q = integral F_n^(alpha,beta)(x) conj(F_l^(gamma,delta)(x)) dx`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OverlapSpec {
    pub alpha: Complex64,
    pub beta: Complex64,
    pub gamma: Complex64,
    pub delta: Complex64,
    pub n: usize,
    pub l: usize,
}

impl OverlapSpec {
    pub fn new(
        alpha: Complex64,
        beta: Complex64,
        gamma: Complex64,
        delta: Complex64,
        n: usize,
        l: usize,
    ) -> Result<Self> {
        for z in [alpha, beta, gamma, delta] {
            if !(z.re.is_finite() && z.im.is_finite()) {
                return Err(Error::NonFinite(format!("overlap parameter {z}")));
            }
        }
        if n >= bound_state_count_for(alpha, beta) {
            return Err(Error::Domain(format!(
                "n = {n} is not normalizable for ({alpha}, {beta})"
            )));
        }
        if l >= bound_state_count_for(gamma, delta) {
            return Err(Error::Domain(format!(
                "l = {l} is not normalizable for ({gamma}, {delta})"
            )));
        }
        Ok(Self {
            alpha,
            beta,
            gamma,
            delta,
            n,
            l,
        })
    }
}

/// One `(m, m')` term of the product expansion of `F_n^(a,b) conj(F_l^(g,d))`:
/// a coefficient times `(1 - i sinh x)^p (1 + i sinh x)^q`.
struct ExpansionTerm {
    coef: Complex64,
    p: Complex64,
    q: Complex64,
}

fn expansion(spec: &OverlapSpec) -> impl Iterator<Item = ExpansionTerm> + '_ {
    let OverlapSpec {
        alpha,
        beta,
        gamma,
        delta,
        n,
        l,
    } = *spec;
    let (gc, dc) = (gamma.conj(), delta.conj());
    let (nf, lf) = (n as f64, l as f64);
    let scale = sign_pow(n + l) / 2f64.powi((n + l) as i32);
    (0..=n).flat_map(move |m| {
        (0..=l).map(move |mp| {
            let coef = binomial_falling(alpha + nf, m)
                * binomial_falling(beta + nf, n - m)
                * binomial_falling(gc + lf, mp)
                * binomial_falling(dc + lf, l - mp)
                * (scale * sign_pow(m + mp));
            ExpansionTerm {
                coef,
                p: (alpha + dc) / 2.0 + 0.5 + (n - m + mp) as f64,
                q: (beta + gc) / 2.0 + 0.5 + (l + m - mp) as f64,
            }
        })
    })
}

/// General overlap `Q^(alpha,beta,gamma,delta)_nl` as the finite double sum
/// of `A0` terms. Pole-safe: gamma poles in a term's denominator make that
/// term vanish.
pub fn q_sum(spec: &OverlapSpec) -> Result<Complex64> {
    expansion(spec).try_fold(c(0.0), |acc, t| Ok(acc + t.coef * a0(t.p, t.q)?))
}

/// The same double sum after trading every `Gamma(1/2-p)`, `Gamma(1/2-q)`,
/// `Gamma(-p-q)` for sines: a prefactor
/// `sin(pi A) sin(pi B) / sin(pi S/2)` with `A = (alpha+conj delta)/2`,
/// `B = (beta+conj gamma)/2`, `S = alpha+beta+conj gamma+conj delta`.
///
/// Returns [`Error::Degenerate`] where the prefactor is 0/0 or 0*inf.
pub fn q_sum_sine_form(spec: &OverlapSpec) -> Result<Complex64> {
    let OverlapSpec {
        alpha,
        beta,
        gamma,
        delta,
        n,
        l,
    } = *spec;
    let (gc, dc) = (gamma.conj(), delta.conj());
    let a = (alpha + dc) / 2.0;
    let b = (beta + gc) / 2.0;
    let half_s = a + b;
    let (sa, sb, ss) = (sin_pi(a), sin_pi(b), sin_pi(half_s));
    if ss.norm() < SINE_TOL {
        return Err(Error::Degenerate);
    }
    let prefactor = c(2.0).powc(half_s + 2.0) * sa * sb / ss * sign_pow(n + l);
    let (nf, lf) = (n as f64, l as f64);
    let mut sum = c(0.0);
    for m in 0..=n {
        for mp in 0..=l {
            let binoms = binomial_falling(alpha + nf, m)
                * binomial_falling(beta + nf, n - m)
                * binomial_falling(gc + lf, mp)
                * binomial_falling(dc + lf, l - mp);
            let ratio = gamma_ratio_of(
                &[a + (n - m + mp) as f64 + 1.0, b + (l + m - mp) as f64 + 1.0],
                &[half_s + (n + l) as f64 + 2.0],
            );
            let ratio = match ratio {
                Err(Error::Pole { .. }) if (sa * sb).norm() < SINE_TOL => return Err(Error::Degenerate),
                r => r?,
            };
            sum += binoms * ratio * sign_pow(m + mp);
        }
    }
    Ok(prefactor * sum)
}

/// Closed form of `Q^(alpha, beta, conj beta, conj alpha)_nl`:
///
/// `delta_nl pi 2^(alpha+beta+2) Gamma(-alpha-beta-n) / ((-alpha-beta-2n-1) n! Gamma(-alpha-n) Gamma(-beta-n))`
///
/// The gamma form has no removable singularities, unlike the sine form
/// ([`q_closed_sine_form`]) which is 0/0 whenever `alpha + beta` is an integer.
pub fn q_closed(alpha: Complex64, beta: Complex64, n: usize, l: usize) -> Result<Complex64> {
    if n != l {
        return Ok(c(0.0));
    }
    let nf = n as f64;
    let s = alpha + beta;
    let linear = -s - 2.0 * nf - 1.0;
    if linear.norm() <= REGIME_TOL {
        return Err(Error::Pole { arg: linear });
    }
    let ratio = gamma_ratio_of(&[-s - nf], &[-alpha - nf, -beta - nf])?;
    let ln_prefactor = (s + 2.0) * 2f64.ln() - ln_factorial(n as u64);
    Ok(ln_prefactor.exp() * PI / linear * ratio)
}

/// Closed `Q` in its sine form,
/// `delta_nl (-1)^n 2^(alpha+beta+2)/(alpha+beta+2n+1) sin(pi alpha) sin(pi beta)/sin(pi(alpha+beta))
///  C(alpha+beta+2n, n) / C(alpha+beta+2n, n+beta)`.
pub fn q_closed_sine_form(alpha: Complex64, beta: Complex64, n: usize, l: usize) -> Result<Complex64> {
    if n != l {
        return Ok(c(0.0));
    }
    let nf = n as f64;
    let s = alpha + beta;
    let (sa, sb, ss) = (sin_pi(alpha), sin_pi(beta), sin_pi(s));
    if sa.norm() < SINE_TOL || sb.norm() < SINE_TOL || ss.norm() < SINE_TOL {
        return Err(Error::Degenerate);
    }
    let top = s + 2.0 * nf;
    let binoms = gen_binomial(top, c(nf))? / gen_binomial(top, beta + nf)?;
    Ok(c(2.0).powc(s + 2.0) / (s + 2.0 * nf + 1.0) * sa * sb / ss * binoms * sign_pow(n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VanishingReason {
    SineFactorZero,
    OffDiagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PseudoNormResult {
    pub value: Complex64,
    /// +1, -1, or 0 when the product vanishes.
    pub sign: i8,
    pub vanishing_reason: Option<VanishingReason>,
}

impl PseudoNormResult {
    fn zero(reason: VanishingReason) -> Self {
        Self {
            value: c(0.0),
            sign: 0,
            vanishing_reason: Some(reason),
        }
    }
}

pub(crate) fn check_pt_alpha(alpha: Complex64) -> Result<()> {
    if is_real(alpha, REGIME_TOL) || is_imaginary(alpha, REGIME_TOL) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "PT-symmetric products need a real or purely imaginary alpha, got {alpha}"
        )))
    }
}

fn check_n(n: usize, a: Complex64, b: Complex64, what: &str) -> Result<()> {
    let count = bound_state_count_for(a, b);
    if n < count {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} = {n} is not a bound state of ({a}, {b}) ({count} states)"
        )))
    }
}

/// PT inner product `I_nl = integral psi_n^(alpha,beta)(x) conj(psi_l^(delta,beta)(-x)) dx`
/// with `delta = delta_sign * alpha` and `C = 1`.
///
/// The product vanishes identically when `alpha = -conj(delta)` (real
/// alpha with opposite quasi-parities, imaginary alpha with equal ones);
/// that zero is reported without requiring `l` to be normalizable for the
/// `delta` branch. In the remaining two cases the result is diagonal in
/// `(n, l)` and the diagonal is
/// `(-1)^n pi 2^(alpha+beta+2) Gamma(-alpha-beta-n) / ((-alpha-beta-2n-1) n! Gamma(-alpha-n) Gamma(-beta-n))`.
pub fn pseudo_inner(
    alpha: Complex64,
    beta: f64,
    delta_sign: QuasiParity,
    n: usize,
    l: usize,
) -> Result<PseudoNormResult> {
    check_pt_alpha(alpha)?;
    if !beta.is_finite() {
        return Err(Error::NonFinite(format!("beta = {beta}")));
    }
    let b = c(beta);
    let delta = alpha * delta_sign.sign();
    check_n(n, alpha, b, "n")?;
    if (alpha + delta.conj()).norm() <= REGIME_TOL {
        return Ok(PseudoNormResult::zero(VanishingReason::SineFactorZero));
    }
    check_n(l, delta, b, "l")?;
    if n != l {
        return Ok(PseudoNormResult::zero(VanishingReason::OffDiagonal));
    }
    let value = q_closed(alpha, b, n, n)? * sign_pow(n);
    if value.norm() < PSEUDO_ZERO_TOL {
        // a denominator gamma pole: sin(pi alpha) or sin(pi beta) vanishes
        return Ok(PseudoNormResult::zero(VanishingReason::SineFactorZero));
    }
    let sign = if value.re != 0.0 {
        value.re.signum()
    } else {
        value.im.signum()
    } as i8;
    Ok(PseudoNormResult {
        value,
        sign,
        vanishing_reason: None,
    })
}

/// Standard inner product `K_nl` of Hermitian-regime states (`beta = conj alpha`), `C = 1`.
pub fn hermitian_norm(alpha: Complex64, n: usize, l: usize) -> Result<Complex64> {
    let beta = alpha.conj();
    check_n(n, alpha, beta, "n")?;
    check_n(l, alpha, beta, "l")?;
    q_closed(alpha, beta, n, l)
}

/// Real positive `C_n` with `C_n^2 K_nn = 1` in the Hermitian regime:
///
/// `C_n = 2^(-(alpha+beta)/2-1) [Gamma(-alpha-n) Gamma(-beta-n) (-alpha-beta-2n-1) n! / (Gamma(-alpha-beta-n) pi)]^(1/2)`.
pub fn normalization_constant(alpha: Complex64, n: usize) -> Result<f64> {
    let beta = alpha.conj();
    check_n(n, alpha, beta, "n")?;
    let nf = n as f64;
    let s = (alpha + beta).re;
    // Gamma(-alpha-n) Gamma(-beta-n) = |Gamma(-alpha-n)|^2
    let ln_abs_gamma = log_gamma(-alpha - nf)?.re;
    let ln_top = 2.0 * ln_abs_gamma + (-s - 2.0 * nf - 1.0).ln() + ln_factorial(n as u64);
    let ln_bottom = log_gamma(c(-s - nf))?.re + PI.ln();
    let ln_c = -(s / 2.0 + 1.0) * 2f64.ln() + 0.5 * (ln_top - ln_bottom);
    Ok(ln_c.exp())
}

fn pt_pair(alpha: Complex64, beta: f64, n: usize) -> Result<OverlapSpec> {
    check_pt_alpha(alpha)?;
    let b = c(beta);
    OverlapSpec::new(alpha, b, alpha, b, n, n)
}

/// `L_nn = integral |F_n^(alpha,beta)|^2 dx` for a PT-regime state (`C = 1`).
pub fn l_norm_sum(alpha: Complex64, beta: f64, n: usize) -> Result<Complex64> {
    q_sum(&pt_pair(alpha, beta, n)?)
}

/// `L_nn` in the sine-prefactored form
/// `2^((alpha+alpha*)/2+beta+2) sin(pi(alpha*+beta)/2) sin(pi(alpha+beta)/2) / sin(pi(beta+(alpha+alpha*)/2))`
/// times the double sum of binomials and
/// `Gamma((alpha+beta)/2+n+1-m+m') Gamma((alpha*+beta)/2+n+1+m-m') / Gamma((alpha+alpha*)/2+beta+2n+2)`.
pub fn l_norm_sum_printed(alpha: Complex64, beta: f64, n: usize) -> Result<Complex64> {
    let spec = pt_pair(alpha, beta, n)?;
    let (ac, b, nf) = (alpha.conj(), c(beta), n as f64);
    let half_a = (alpha + b) / 2.0;
    let half_ac = (ac + b) / 2.0;
    let total = (alpha + ac) / 2.0 + b;
    let (s1, s2, s3) = (sin_pi(half_ac), sin_pi(half_a), sin_pi(total));
    if s3.norm() < SINE_TOL {
        return Err(Error::Degenerate);
    }
    let prefactor = c(2.0).powc(total + 2.0) * s1 * s2 / s3;
    let mut sum = c(0.0);
    for t in expansion_indices(&spec) {
        let (m, mp) = t;
        let binoms = binomial_falling(alpha + nf, m)
            * binomial_falling(b + nf, n - m)
            * binomial_falling(ac + nf, mp)
            * binomial_falling(b + nf, n - mp);
        let ratio = gamma_ratio_of(
            &[
                half_a + nf + 1.0 - m as f64 + mp as f64,
                half_ac + nf + 1.0 + m as f64 - mp as f64,
            ],
            &[total + 2.0 * nf + 2.0],
        );
        let ratio = match ratio {
            Err(Error::Pole { .. }) if (s1 * s2).norm() < SINE_TOL => return Err(Error::Degenerate),
            r => r?,
        };
        sum += binoms * ratio * sign_pow(m + mp);
    }
    Ok(prefactor * sum)
}

fn expansion_indices(spec: &OverlapSpec) -> impl Iterator<Item = (usize, usize)> {
    let (n, l) = (spec.n, spec.l);
    (0..=n).flat_map(move |m| (0..=l).map(move |mp| (m, mp)))
}

/// `J_nn = integral |F_n|^2 W(x) dx` with `W = (beta^2 - alpha^2) sinh x / (2 cosh^2 x)`, `C = 1`.
///
/// `sech^2 x` lowers both powers by one, so each expansion term is an `A1`.
pub fn j_w_element_sum(alpha: Complex64, beta: f64, n: usize) -> Result<Complex64> {
    let spec = pt_pair(alpha, beta, n)?;
    let strength = (c(beta * beta) - alpha * alpha) / 2.0;
    let sum = expansion(&spec).try_fold(c(0.0), |acc, t| Ok(acc + t.coef * a1(t.p - 1.0, t.q - 1.0)?))?;
    Ok(strength * sum)
}

/// `J_nn` in the sine-prefactored form, with the `((alpha-alpha*)/2 - 2m + 2m')`
/// weight and `Gamma((alpha+alpha*)/2+beta+2n+1)` in the denominator.
pub fn j_w_element_sum_printed(alpha: Complex64, beta: f64, n: usize) -> Result<Complex64> {
    let spec = pt_pair(alpha, beta, n)?;
    let (ac, b, nf) = (alpha.conj(), c(beta), n as f64);
    let half_a = (alpha + b) / 2.0;
    let half_ac = (ac + b) / 2.0;
    let total = (alpha + ac) / 2.0 + b;
    // beta is real, so conj(beta) = beta in the first sine
    let (s1, s2, s3) = (sin_pi((ac + b.conj()) / 2.0), sin_pi(half_a), sin_pi(total));
    if s3.norm() < SINE_TOL {
        return Err(Error::Degenerate);
    }
    let i = Complex64::i();
    let prefactor = i / 2.0 * (b * b - alpha * alpha) * c(2.0).powc(total) * s1 * s2 / s3;
    let mut sum = c(0.0);
    for (m, mp) in expansion_indices(&spec) {
        let weight = (alpha - ac) / 2.0 - 2.0 * m as f64 + 2.0 * mp as f64;
        let binoms = binomial_falling(alpha + nf, m)
            * binomial_falling(b + nf, n - m)
            * binomial_falling(ac + nf, mp)
            * binomial_falling(b + nf, n - mp);
        let ratio = gamma_ratio_of(
            &[half_a + nf - m as f64 + mp as f64, half_ac + nf + m as f64 - mp as f64],
            &[total + 2.0 * nf + 1.0],
        );
        let ratio = match ratio {
            Err(Error::Pole { .. }) if (s1 * s2).norm() < SINE_TOL => return Err(Error::Degenerate),
            r => r?,
        };
        sum += binoms * weight * ratio * sign_pow(m + mp);
    }
    Ok(prefactor * sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImEnergyRelation {
    /// `J_nn / L_nn`.
    pub ratio: Complex64,
    /// `(i/8)(alpha - alpha*)(alpha + alpha* + 2 beta + 4n + 2)`.
    pub formula: Complex64,
    pub residual: f64,
}

pub fn im_energy_formula(alpha: Complex64, beta: f64, n: usize) -> Complex64 {
    let ac = alpha.conj();
    Complex64::i() / 8.0 * (alpha - ac) * (alpha + ac + 2.0 * beta + 4.0 * n as f64 + 2.0)
}

/// The imaginary part of `E_n` two ways: the matrix-element ratio `J/L` and
/// the expression obtained from the spectrum.
pub fn im_energy_relation(alpha: Complex64, beta: f64, n: usize) -> Result<ImEnergyRelation> {
    let ratio = j_w_element_sum(alpha, beta, n)? / l_norm_sum(alpha, beta, n)?;
    let formula = im_energy_formula(alpha, beta, n);
    Ok(ImEnergyRelation {
        ratio,
        formula,
        residual: (ratio - formula).norm(),
    })
}

/// `Im E_n` straight from the spectrum, for cross-checks.
pub fn im_energy_from_spectrum(alpha: Complex64, beta: f64, n: usize) -> f64 {
    energy_for(n, alpha, c(beta)).im
}
