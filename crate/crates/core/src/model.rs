//! The Scarf II potential family: parameters, regimes, spectrum and
//! bound-state wavefunctions.
//!
//! Parameters are the complex pair `(alpha, beta)`. The potential is
//!
//! ```text
//! V(x) = -sech^2 x [((a+b)/2)^2 + ((a-b)/2)^2 - 1/4] + 2i sinh x sech^2 x (b+a)/2 (b-a)/2
//! ```
//!
//! and does not depend on the sign of `alpha`. The two solution families
//! `(+alpha, beta)` and `(-alpha, beta)` are labelled by the quasi-parity.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::closed_forms;
use crate::complex::ComplexScalar;
use crate::error::{Error, Result};
use crate::special::binomial_falling;

/// Default absolute tolerance for the "is real" / "is imaginary" tests.
pub const REGIME_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScarfParams {
    alpha: ComplexScalar,
    beta: ComplexScalar,
}

impl ScarfParams {
    pub fn new(alpha: ComplexScalar, beta: ComplexScalar) -> Self {
        Self { alpha, beta }
    }

    pub fn from_complex(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Ok(Self::new(alpha.try_into()?, beta.try_into()?))
    }

    /// Hermitian member of the family with `beta = conj(alpha)`.
    pub fn hermitian(alpha: Complex64) -> Result<Self> {
        Self::from_complex(alpha, alpha.conj())
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha.value()
    }

    pub fn beta(&self) -> Complex64 {
        self.beta.value()
    }

    /// `(q alpha, beta)`, the parameter pair of the quasi-parity `q` branch.
    pub fn branch(&self, q: QuasiParity) -> (Complex64, Complex64) {
        (self.alpha() * q.sign(), self.beta())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    Hermitian,
    PTUnbroken,
    PTBroken,
    GeneralComplex,
    NoBoundStates,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Regime::Hermitian => "Hermitian",
            Regime::PTUnbroken => "PTUnbroken",
            Regime::PTBroken => "PTBroken",
            Regime::GeneralComplex => "GeneralComplex",
            Regime::NoBoundStates => "NoBoundStates",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QuasiParity {
    Plus,
    Minus,
}

impl QuasiParity {
    pub const BOTH: [QuasiParity; 2] = [QuasiParity::Plus, QuasiParity::Minus];

    pub fn sign(self) -> f64 {
        match self {
            QuasiParity::Plus => 1.0,
            QuasiParity::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            QuasiParity::Plus => 1,
            QuasiParity::Minus => -1,
        }
    }

    pub fn from_sign(sign: i64) -> Result<Self> {
        match sign {
            1 => Ok(QuasiParity::Plus),
            -1 => Ok(QuasiParity::Minus),
            _ => Err(Error::InvalidArgument(format!(
                "quasi-parity must be +1 or -1, got {sign}"
            ))),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            QuasiParity::Plus => QuasiParity::Minus,
            QuasiParity::Minus => QuasiParity::Plus,
        }
    }
}

/// Principal quantum number plus quasi-parity branch.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StateIndex {
    pub n: usize,
    pub quasi_parity: QuasiParity,
}

impl StateIndex {
    pub fn new(n: usize, quasi_parity: QuasiParity) -> Self {
        Self { n, quasi_parity }
    }

    pub fn plus(n: usize) -> Self {
        Self::new(n, QuasiParity::Plus)
    }

    pub fn minus(n: usize) -> Self {
        Self::new(n, QuasiParity::Minus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PotentialValue {
    pub u: f64,
    pub w: f64,
    pub total: Complex64,
}

pub fn is_real(z: Complex64, tol: f64) -> bool {
    z.im.abs() <= tol
}

pub fn is_imaginary(z: Complex64, tol: f64) -> bool {
    z.re.abs() <= tol && z.im.abs() > tol
}

/// Number of integers `n >= 0` with `n < bound`.
pub(crate) fn count_below(bound: f64) -> usize {
    if bound <= 0.0 {
        0
    } else {
        bound.ceil() as usize
    }
}

/// Number of normalizable states of the `(a, b)` family: `n < -(Re(a+b)+1)/2`.
pub fn bound_state_count_for(a: Complex64, b: Complex64) -> usize {
    count_below(-((a + b).re + 1.0) / 2.0)
}

pub fn bound_state_count(params: &ScarfParams, quasi_parity: QuasiParity) -> usize {
    let (a, b) = params.branch(quasi_parity);
    bound_state_count_for(a, b)
}

pub fn classify_regime(params: &ScarfParams) -> Regime {
    classify_regime_with_tol(params, REGIME_TOL)
}

/// Classifies with an absolute tolerance on the real/imaginary-part tests.
///
/// `alpha = 0` counts as real, so the sweep midpoint is `PTUnbroken`.
pub fn classify_regime_with_tol(params: &ScarfParams, tol: f64) -> Regime {
    let (a, b) = (params.alpha(), params.beta());
    let plus = bound_state_count(params, QuasiParity::Plus);
    let minus = bound_state_count(params, QuasiParity::Minus);
    if (a.conj() - b).norm() <= tol {
        return if plus > 0 {
            Regime::Hermitian
        } else {
            Regime::NoBoundStates
        };
    }
    let any = plus + minus > 0;
    let (a_real, b_real) = (is_real(a, tol), is_real(b, tol));
    let (a_imag, b_imag) = (is_imaginary(a, tol), is_imaginary(b, tol));
    if a_imag && b_imag || !any {
        Regime::NoBoundStates
    } else if a_real && b_real {
        Regime::PTUnbroken
    } else if (a_imag && b_real) || (a_real && b_imag) {
        Regime::PTBroken
    } else {
        Regime::GeneralComplex
    }
}

pub(crate) fn check_state(params: &ScarfParams, idx: StateIndex) -> Result<()> {
    let count = bound_state_count(params, idx.quasi_parity);
    if idx.n < count {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "n = {} is not a bound state of the q = {:+} branch ({} states)",
            idx.n,
            idx.quasi_parity.as_i8(),
            count
        )))
    }
}

/// `E = -(n + (q alpha + beta + 1)/2)^2`.
pub fn energy(params: &ScarfParams, idx: StateIndex) -> Result<Complex64> {
    check_state(params, idx)?;
    let (a, b) = params.branch(idx.quasi_parity);
    Ok(energy_for(idx.n, a, b))
}

pub(crate) fn energy_for(n: usize, a: Complex64, b: Complex64) -> Complex64 {
    let k = (a + b + 1.0) / 2.0 + n as f64;
    -(k * k)
}

pub fn potential(params: &ScarfParams, x: f64) -> PotentialValue {
    let (a, b) = (params.alpha(), params.beta());
    let sech2 = 1.0 / (x.cosh() * x.cosh());
    let s = (a + b) / 2.0;
    let d = (a - b) / 2.0;
    let i = Complex64::i();
    let total = -sech2 * (s * s + d * d - 0.25) + 2.0 * i * x.sinh() * sech2 * ((b + a) / 2.0) * ((b - a) / 2.0);
    PotentialValue {
        u: total.re,
        w: total.im,
        total,
    }
}

/// Real component `U(x) = -((a^2+b^2)/2 - 1/4) sech^2 x` of the PT-symmetric form.
pub fn potential_real_part(params: &ScarfParams, x: f64) -> Complex64 {
    let (a, b) = (params.alpha(), params.beta());
    -((a * a + b * b) / 2.0 - 0.25) / (x.cosh() * x.cosh())
}

/// Imaginary component `W(x) = (b^2 - a^2) sinh x / (2 cosh^2 x)`.
pub fn potential_imag_part(params: &ScarfParams, x: f64) -> Complex64 {
    let (a, b) = (params.alpha(), params.beta());
    (b * b - a * a) * x.sinh() / (2.0 * x.cosh() * x.cosh())
}

/// `F_n^(a,b)(x) = (1 - i sinh x)^(a/2+1/4) (1 + i sinh x)^(b/2+1/4) P_n^(a,b)(i sinh x)`
/// for an arbitrary parameter pair, without any normalizability check.
///
/// Both bases have real part 1, so principal powers are continuous in `x`.
///
/// Summed term by term in log space, so large `|sinh x|` underflows to zero
/// instead of overflowing in the polynomial.
pub fn scarf_f(n: usize, a: Complex64, b: Complex64, x: f64) -> Complex64 {
    let z = Complex64::new(0.0, x.sinh());
    let ln_lower = (1.0 - z).ln();
    let ln_upper = (1.0 + z).ln();
    let nf = n as f64;
    let mut sum = Complex64::new(0.0, 0.0);
    for m in 0..=n {
        let coef = binomial_falling(a + nf, m) * binomial_falling(b + nf, n - m);
        let p = a / 2.0 + 0.25 + (n - m) as f64;
        let q = b / 2.0 + 0.25 + m as f64;
        let term = coef * (p * ln_lower + q * ln_upper).exp();
        if (n - m) % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    sum / 2f64.powi(n as i32)
}

pub fn wavefunction_unnormalized(params: &ScarfParams, idx: StateIndex, x: f64) -> Result<Complex64> {
    check_state(params, idx)?;
    let (a, b) = params.branch(idx.quasi_parity);
    Ok(scarf_f(idx.n, a, b, x))
}

/// `C_n F_n(x)` in the Hermitian regime, the only one with a positive norm.
pub fn wavefunction_normalized(params: &ScarfParams, idx: StateIndex, x: f64) -> Result<Complex64> {
    let regime = classify_regime(params);
    if regime != Regime::Hermitian {
        return Err(Error::UnsupportedRegime {
            required: "Hermitian",
            actual: regime.to_string(),
        });
    }
    if idx.quasi_parity != QuasiParity::Plus {
        return Err(Error::Domain("the Hermitian problem has only the q = +1 family".into()));
    }
    let c = closed_forms::normalization_constant(params.alpha(), idx.n)?;
    Ok(wavefunction_unnormalized(params, idx, x)? * c)
}
