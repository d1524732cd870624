//! Complex gamma function, gamma-function ratios with pole limits, generalized
//! binomial coefficients and Jacobi polynomials with complex parameters.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Distance to a non-positive integer below which a gamma argument in a
/// ratio is treated as sitting on the pole.
pub const POLE_TOL: f64 = 1e-8;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;

// Lanczos approximation, g = 607/128, 15 terms (Godfrey).
const LANCZOS_G: f64 = 607.0 / 128.0;
const LANCZOS_COEF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];

/// If `z` lies within `tol` of a non-positive integer `-k`, returns `k`.
pub fn nonpositive_integer(z: Complex64, tol: f64) -> Option<u64> {
    if z.im.abs() > tol || z.re > tol {
        return None;
    }
    let k = z.re.round();
    ((z.re - k).abs() <= tol).then(|| (-k) as u64)
}

fn lanczos_ln_gamma(z: Complex64) -> Complex64 {
    let zm1 = z - 1.0;
    let mut sum = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        sum += c / (zm1 + k as f64);
    }
    let t = zm1 + LANCZOS_G + 0.5;
    (zm1 + 0.5) * t.ln() - t + sum.ln() + LN_SQRT_2PI
}

/// Some branch of ln sin(pi z), computed without overflow for large |Im z|.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    // sin(pi (k + f)) = (-1)^k sin(pi f), |Re f| <= 1/2
    let k = z.re.round();
    let f = z - k;
    let w = f * PI;
    let i = Complex64::i();
    let body = if w.im >= 0.0 {
        // sin w = e^{-iw} (e^{2iw} - 1) / (2i)
        -i * w + (((2.0 * i * w).exp() - 1.0) / (2.0 * i)).ln()
    } else {
        // sin w = e^{iw} (1 - e^{-2iw}) / (2i)
        i * w + ((1.0 - (-2.0 * i * w).exp()) / (2.0 * i)).ln()
    };
    body + i * (PI * k.rem_euclid(2.0))
}

fn principal(z: Complex64) -> Complex64 {
    let im = (z.im + PI).rem_euclid(2.0 * PI) - PI;
    let im = if im == -PI { PI } else { im };
    Complex64::new(z.re, im)
}

/// ln Gamma(z), principal branch of the logarithm of Gamma(z).
///
/// Uses the Lanczos series for `Re z >= 1/2` and the reflection formula
/// otherwise. Returns a pole error on the non-positive integers.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::NonFinite(format!("log_gamma({z})")));
    }
    let tol = 8.0 * f64::EPSILON * z.re.abs().max(1.0);
    if nonpositive_integer(z, tol).is_some() {
        return Err(Error::Pole { arg: z });
    }
    let raw = if z.re >= 0.5 {
        lanczos_ln_gamma(z)
    } else {
        Complex64::new(LN_PI, 0.0) - ln_sin_pi(z) - lanczos_ln_gamma(1.0 - z)
    };
    Ok(principal(raw))
}

/// Gamma(z) = exp(ln Gamma(z)).
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(Complex64::exp)
}

/// ln k! for integer k.
pub fn ln_factorial(k: u64) -> f64 {
    lanczos_ln_gamma(Complex64::new(k as f64 + 1.0, 0.0)).re
}

/// A product of gamma functions over a product of gamma functions.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaRatioSpec {
    numerator: Vec<Complex64>,
    denominator: Vec<Complex64>,
}

impl GammaRatioSpec {
    pub fn new(numerator: Vec<Complex64>, denominator: Vec<Complex64>) -> Result<Self> {
        if numerator.is_empty() || denominator.is_empty() {
            return Err(Error::InvalidArgument(
                "gamma ratio needs at least one numerator and one denominator argument".into(),
            ));
        }
        if let Some(z) = numerator
            .iter()
            .chain(&denominator)
            .find(|z| !(z.re.is_finite() && z.im.is_finite()))
        {
            return Err(Error::NonFinite(format!("gamma ratio argument {z}")));
        }
        Ok(Self { numerator, denominator })
    }

    pub fn numerator(&self) -> &[Complex64] {
        &self.numerator
    }

    pub fn denominator(&self) -> &[Complex64] {
        &self.denominator
    }
}

struct LogTerms {
    log: Complex64,
    poles: usize,
    // parity of the summed pole orders, for the residue signs (-1)^k
    odd: bool,
    first_pole: Option<Complex64>,
}

fn accumulate(args: &[Complex64]) -> Result<LogTerms> {
    let mut acc = LogTerms {
        log: Complex64::new(0.0, 0.0),
        poles: 0,
        odd: false,
        first_pole: None,
    };
    for &z in args {
        match nonpositive_integer(z, POLE_TOL) {
            // residue of Gamma at -k is (-1)^k / k!
            Some(k) => {
                acc.poles += 1;
                acc.odd ^= k % 2 == 1;
                acc.log -= ln_factorial(k);
                acc.first_pole.get_or_insert(z);
            }
            None => acc.log += log_gamma(z)?,
        }
    }
    Ok(acc)
}

/// Evaluates `prod Gamma(num) / prod Gamma(den)` in log space.
///
/// Arguments within [`POLE_TOL`] of a non-positive integer are poles. Excess
/// denominator poles give an exact zero; excess numerator poles are an error;
/// matched poles contribute the ratio of their residues, so
/// `Gamma(-k+e)/Gamma(-m+e) -> (-1)^(k-m) m!/k!`.
pub fn gamma_ratio(spec: &GammaRatioSpec) -> Result<Complex64> {
    let num = accumulate(&spec.numerator)?;
    let den = accumulate(&spec.denominator)?;
    if den.poles > num.poles {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if num.poles > den.poles {
        return Err(Error::Pole {
            arg: num.first_pole.unwrap_or_default(),
        });
    }
    let value = (num.log - den.log).exp();
    let value = if num.odd != den.odd { -value } else { value };
    if value.re.is_finite() && value.im.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(format!("gamma ratio {spec:?}")))
    }
}

/// Shorthand for [`gamma_ratio`] on borrowed argument lists.
pub fn gamma_ratio_of(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    gamma_ratio(&GammaRatioSpec::new(num.to_vec(), den.to_vec())?)
}

/// Generalized binomial coefficient `Gamma(a+1) / (Gamma(b+1) Gamma(a-b+1))`.
pub fn gen_binomial(a: Complex64, b: Complex64) -> Result<Complex64> {
    gamma_ratio_of(&[a + 1.0], &[b + 1.0, a - b + 1.0])
}

/// `C(a, k) = a (a-1) ... (a-k+1) / k!` for a non-negative integer lower index.
///
/// Agrees with the gamma-ratio limit of [`gen_binomial`] and never hits a pole.
pub fn binomial_falling(a: Complex64, k: usize) -> Complex64 {
    (0..k).fold(Complex64::new(1.0, 0.0), |acc, j| {
        acc * (a - j as f64) / (j as f64 + 1.0)
    })
}

/// Jacobi polynomial `P_n^(alpha, beta)(z)` from the explicit finite sum
///
/// `2^-n sum_m C(n+alpha, m) C(n+beta, n-m) (-1)^(n-m) (1-z)^(n-m) (1+z)^m`.
pub fn jacobi_poly(n: usize, alpha: Complex64, beta: Complex64, z: Complex64) -> Complex64 {
    let one_minus = 1.0 - z;
    let one_plus = 1.0 + z;
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..=n {
        let term = binomial_falling(alpha + nf, m)
            * binomial_falling(beta + nf, n - m)
            * one_minus.powi((n - m) as i32)
            * one_plus.powi(m as i32);
        if (n - m) % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    sum / 2f64.powi(n as i32)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn log_gamma_known_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert_relative_eq!(half.re, 0.5 * PI.ln(), max_relative = 1e-14);
        assert_eq!(half.im, 0.0);
        let four = log_gamma(c(4.0, 0.0)).unwrap();
        assert_relative_eq!(four.re, 6f64.ln(), max_relative = 1e-14);
        // Gamma(-1/2) = -2 sqrt(pi): principal log has imaginary part pi
        let neg_half = log_gamma(c(-0.5, 0.0)).unwrap();
        assert_relative_eq!(neg_half.re, (2.0 * PI.sqrt()).ln(), max_relative = 1e-14);
        assert_relative_eq!(neg_half.im, PI, max_relative = 1e-14);
    }

    #[test]
    fn log_gamma_large_arguments() {
        // ln Gamma(51) = ln 50!
        let ln50: f64 = (1..=50).map(|k| (k as f64).ln()).sum();
        assert_relative_eq!(log_gamma(c(51.0, 0.0)).unwrap().re, ln50, max_relative = 1e-14);
        // |Gamma(1/2 + iy)|^2 = pi / cosh(pi y)
        for y in [0.3, 5.0, 30.0, 49.0] {
            let lg = log_gamma(c(0.5, y)).unwrap();
            let exact = 0.5 * (PI / (PI * y).cosh()).ln();
            assert_relative_eq!(lg.re, exact, max_relative = 1e-13);
        }
        // |Gamma(iy)|^2 = pi / (y sinh(pi y)), reflection branch
        for y in [0.7, 12.0, 45.0] {
            let lg = log_gamma(c(0.0, y)).unwrap();
            let exact = 0.5 * (PI / (y * (PI * y).sinh())).ln();
            assert_relative_eq!(lg.re, exact, max_relative = 1e-13);
        }
    }

    #[test]
    fn log_gamma_poles() {
        for k in 0..6 {
            assert!(matches!(log_gamma(c(-(k as f64), 0.0)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-3.0 + 1e-6, 0.0)).is_ok());
        assert!(log_gamma(c(f64::NAN, 0.0)).is_err());
    }

    #[test]
    fn gamma_ratio_examples() {
        let r = gamma_ratio_of(&[c(3.0, 0.0)], &[c(2.0, 0.0)]).unwrap();
        assert_relative_eq!(r.re, 2.0, max_relative = 1e-14);
        let r = gamma_ratio_of(&[c(-1.0, 0.0)], &[c(-2.0, 0.0)]).unwrap();
        assert_relative_eq!(r.re, -2.0, max_relative = 1e-14);
        // Gamma(4.5)^2 = 11025 pi / 256
        let r = gamma_ratio_of(&[c(9.0, 0.0)], &[c(4.5, 0.0), c(4.5, 0.0)]).unwrap();
        assert_relative_eq!(r.re, 40320.0 * 256.0 / (11025.0 * PI), max_relative = 1e-13);
        assert!(r.im.abs() < 1e-12);
    }

    #[test]
    fn gamma_ratio_pole_rules() {
        // denominator pole wins: exact zero
        let r = gamma_ratio_of(&[c(2.5, 0.0)], &[c(-3.0, 0.0)]).unwrap();
        assert_eq!(r, c(0.0, 0.0));
        // unmatched numerator pole
        assert!(matches!(
            gamma_ratio_of(&[c(-3.0, 0.0)], &[c(2.5, 0.0)]),
            Err(Error::Pole { .. })
        ));
        // near-pole inside POLE_TOL is the pole
        let r = gamma_ratio_of(&[c(1.0, 0.0)], &[c(-2.0 + 1e-9, 0.0)]).unwrap();
        assert_eq!(r, c(0.0, 0.0));
        // Gamma(-3+e)Gamma(1.5)/Gamma(-1+e) -> (-1)^2 1!/3! Gamma(1.5)
        let r = gamma_ratio_of(&[c(-3.0, 0.0), c(1.5, 0.0)], &[c(-1.0, 0.0)]).unwrap();
        assert_relative_eq!(r.re, PI.sqrt() / 2.0 / 6.0, max_relative = 1e-14);
        assert!(GammaRatioSpec::new(vec![], vec![c(1.0, 0.0)]).is_err());
    }

    #[test]
    fn binomials() {
        assert_relative_eq!(
            gen_binomial(c(4.0, 0.0), c(2.0, 0.0)).unwrap().re,
            6.0,
            max_relative = 1e-14
        );
        let a = c(-2.7, 0.4);
        let r = gen_binomial(a, c(0.0, 0.0)).unwrap();
        assert_relative_eq!(r.re, 1.0, max_relative = 1e-14);
        assert!(r.im.abs() < 1e-14);
        // negative integer upper index through matched poles
        for m in 0..5 {
            let g = gen_binomial(c(-2.0, 0.0), c(m as f64, 0.0)).unwrap();
            let f = binomial_falling(c(-2.0, 0.0), m);
            assert_relative_eq!(g.re, f.re, max_relative = 1e-13);
        }
    }

    #[test]
    fn gen_binomial_at_unmatched_pole() {
        // Gamma(-5) in the numerator with no denominator pole
        assert!(matches!(
            gen_binomial(c(-6.0, 0.0), c(-1.5, 0.0)),
            Err(Error::Pole { .. })
        ));
    }

    #[test]
    fn gen_binomial_reflection_oracle() {
        // C(-5.5, -1.5) = Gamma(-4.5) / (Gamma(-0.5) Gamma(-3)) -> 0
        assert_eq!(gen_binomial(c(-5.5, 0.0), c(-1.5, 0.0)).unwrap(), c(0.0, 0.0));
        // C(-6.3, -1.5) via Gamma(x) = pi / (sin(pi x) Gamma(1-x)) on every factor
        let refl = |x: f64| PI / ((PI * x).sin() * gamma(c(1.0 - x, 0.0)).unwrap().re);
        let expected = refl(-5.3) / (refl(-0.5) * refl(-3.8));
        let got = gen_binomial(c(-6.3, 0.0), c(-1.5, 0.0)).unwrap();
        assert_relative_eq!(got.re, expected, max_relative = 1e-12);
    }

    #[test]
    fn jacobi_low_orders() {
        let z = c(0.3, -1.2);
        let (a, b) = (c(0.4, 2.0), c(-1.0, 0.5));
        assert_eq!(jacobi_poly(0, a, b, z), c(1.0, 0.0));
        let p1 = jacobi_poly(1, c(-4.5, 0.0), c(-4.5, 0.0), z);
        assert!((p1 - z * -3.5).norm() < 1e-14);
        // P_1 = (a-b)/2 + (a+b+2) z / 2
        let p1 = jacobi_poly(1, a, b, z);
        assert!((p1 - ((a - b) / 2.0 + (a + b + 2.0) * z / 2.0)).norm() < 1e-14);
    }
}
