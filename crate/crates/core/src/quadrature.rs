//! Adaptive quadrature of complex integrands over the whole real line.
//!
//! The default mapping substitutes `tan y = sinh x`, turning the line into
//! `(-pi/2, pi/2)` with `dx = sec y dy`; bound-state integrands become
//! powers of `cos y` there. The two halves are integrated together in the
//! distance to the endpoint, so panels can refine far below the spacing of
//! doubles near `pi/2`. Panels are integrated with the 7-point Gauss /
//! 15-point Kronrod pair, which never samples panel endpoints.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{check_state, scarf_f, ScarfParams, StateIndex};

pub const DEFAULT_ABS_TOL: f64 = 1e-10;
pub const DEFAULT_MAX_SUBDIVISIONS: usize = 2000;
pub const DEFAULT_TRUNCATION: f64 = 40.0;

// Kronrod abscissae; odd indices are the Gauss points.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Mapping {
    /// `x = asinh(tan y)` on `(-pi/2, pi/2)`.
    CompactTanSinh,
    /// Plain integration over `[-half_width, half_width]`.
    DirectTruncation { half_width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureControls {
    pub target_abs_tol: f64,
    pub max_subdivisions: usize,
    pub mapping: Mapping,
}

impl Default for QuadratureControls {
    fn default() -> Self {
        Self {
            target_abs_tol: DEFAULT_ABS_TOL,
            max_subdivisions: DEFAULT_MAX_SUBDIVISIONS,
            mapping: Mapping::CompactTanSinh,
        }
    }
}

impl QuadratureControls {
    pub fn with_tol(target_abs_tol: f64) -> Self {
        Self {
            target_abs_tol,
            ..Self::default()
        }
    }

    pub fn truncated(self) -> Self {
        Self {
            mapping: Mapping::DirectTruncation {
                half_width: DEFAULT_TRUNCATION,
            },
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0) {
            return Err(Error::InvalidArgument("target_abs_tol must be positive".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::InvalidArgument("max_subdivisions must be at least 1".into()));
        }
        if let Mapping::DirectTruncation { half_width } = self.mapping {
            if !(half_width > 0.0 && half_width.is_finite()) {
                return Err(Error::InvalidArgument("truncation half-width must be positive".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: Complex64,
    pub abs_error_est: f64,
    pub evaluations: usize,
    /// False when the subdivision budget ran out before reaching the target.
    pub converged: bool,
}

struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn sample<F: Fn(f64) -> Complex64>(f: &F, x: f64) -> Result<Complex64> {
    let v = f(x);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::Evaluation { x })
    }
}

fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Result<Panel> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = sample(f, center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = sample(f, center - dx)?;
        let f2 = sample(f, center + dx)?;
        kronrod += (f1 + f2) * WGK[j];
        if j % 2 == 1 {
            gauss += (f1 + f2) * WG[j / 2];
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).norm(),
    })
}

/// Globally adaptive G7/K15 integration over the finite interval `[a, b]`.
pub fn integrate_interval<F>(f: F, a: f64, b: f64, tol: f64, max_subdivisions: usize) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> Complex64,
{
    const INITIAL_PANELS: usize = 8;
    let width = (b - a) / INITIAL_PANELS as f64;
    let mut heap = BinaryHeap::with_capacity(INITIAL_PANELS + 2 * max_subdivisions);
    for k in 0..INITIAL_PANELS {
        let lo = a + k as f64 * width;
        let hi = if k + 1 == INITIAL_PANELS { b } else { lo + width };
        heap.push(gauss_kronrod(&f, lo, hi)?);
    }
    let mut evaluations = 15 * INITIAL_PANELS;
    let mut subdivisions = 0;
    let total_error = |h: &BinaryHeap<Panel>| h.iter().map(|p| p.error).sum::<f64>();
    let mut error = total_error(&heap);
    // running sum, refreshed from the panels to keep cancellation drift out
    let mut since_refresh = 0;
    while error > tol && subdivisions < max_subdivisions {
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            // panel cannot be split further in floating point
            heap.push(worst);
            break;
        }
        let left = gauss_kronrod(&f, worst.a, mid)?;
        let right = gauss_kronrod(&f, mid, worst.b)?;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        evaluations += 30;
        subdivisions += 1;
        since_refresh += 1;
        if since_refresh == 64 || error <= tol {
            error = total_error(&heap);
            since_refresh = 0;
        }
    }
    let error = total_error(&heap);
    let value = heap.iter().fold(Complex64::new(0.0, 0.0), |acc, p| acc + p.value);
    Ok(IntegralEstimate {
        value,
        abs_error_est: error,
        evaluations,
        converged: error <= tol,
    })
}

/// Integrates `f` over the whole real line.
pub fn integrate_line<F>(f: F, controls: &QuadratureControls) -> Result<IntegralEstimate>
where
    F: Fn(f64) -> Complex64,
{
    controls.validate()?;
    match controls.mapping {
        Mapping::CompactTanSinh => {
            // both halves folded onto c = pi/2 - |y|, where tan y = 1 / tan c
            let mapped = |c: f64| {
                let t = c.tan();
                let x = (1.0 / t).asinh();
                if !x.is_finite() {
                    return Complex64::new(0.0, 0.0);
                }
                let v = f(x) + f(-x);
                if v == Complex64::new(0.0, 0.0) {
                    v
                } else {
                    v / c.sin()
                }
            };
            integrate_interval(
                mapped,
                0.0,
                FRAC_PI_2,
                controls.target_abs_tol,
                controls.max_subdivisions,
            )
        }
        Mapping::DirectTruncation { half_width } => integrate_interval(
            f,
            -half_width,
            half_width,
            controls.target_abs_tol,
            controls.max_subdivisions,
        ),
    }
}

/// One factor of an overlap integrand: `F_n^(a,b)`, optionally reflected
/// (`x -> -x`) and/or complex-conjugated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapFactor {
    pub n: usize,
    pub a: Complex64,
    pub b: Complex64,
    pub reflect: bool,
    pub conjugate: bool,
}

impl OverlapFactor {
    pub fn plain(n: usize, a: Complex64, b: Complex64) -> Self {
        Self {
            n,
            a,
            b,
            reflect: false,
            conjugate: false,
        }
    }

    pub fn eval(&self, x: f64) -> Complex64 {
        let x = if self.reflect { -x } else { x };
        let v = scarf_f(self.n, self.a, self.b, x);
        if self.conjugate {
            v.conj()
        } else {
            v
        }
    }
}

/// `integral F_ket(x) * op(F_bra)(x) * weight(x) dx` for explicit parameter pairs.
pub fn overlap_factors(
    ket: OverlapFactor,
    bra: OverlapFactor,
    weight: Option<&(dyn Fn(f64) -> f64 + Sync)>,
    controls: &QuadratureControls,
) -> Result<IntegralEstimate> {
    integrate_line(
        |x| {
            let v = ket.eval(x) * bra.eval(x);
            match weight {
                Some(w) => v * w(x),
                None => v,
            }
        },
        controls,
    )
}

/// Numerical overlap of two bound states of `params`:
/// `integral F_ket(x) op(F_bra)(x) weight(x) dx`, with `op` reflecting
/// and/or conjugating the bra.
///
/// `reflect_bra && conjugate_bra` is the PT product, `conjugate_bra` alone
/// the standard inner product, and `weight = W(x)` gives the matrix element
/// of the imaginary potential component.
pub fn overlap_numeric(
    params: &ScarfParams,
    bra: StateIndex,
    ket: StateIndex,
    reflect_bra: bool,
    conjugate_bra: bool,
    weight: Option<&(dyn Fn(f64) -> f64 + Sync)>,
    controls: &QuadratureControls,
) -> Result<IntegralEstimate> {
    check_state(params, bra)?;
    check_state(params, ket)?;
    let (ka, kb) = params.branch(ket.quasi_parity);
    let (ba, bb) = params.branch(bra.quasi_parity);
    let ket_f = OverlapFactor::plain(ket.n, ka, kb);
    let bra_f = OverlapFactor {
        reflect: reflect_bra,
        conjugate: conjugate_bra,
        ..OverlapFactor::plain(bra.n, ba, bb)
    };
    overlap_factors(ket_f, bra_f, weight, controls)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sech(x: f64) -> f64 {
        1.0 / x.cosh()
    }

    #[test]
    fn sech_squared() {
        let r = integrate_line(|x| Complex64::new(sech(x).powi(2), 0.0), &QuadratureControls::default()).unwrap();
        assert!((r.value.re - 2.0).abs() <= 1e-10, "{r:?}");
        assert!(r.converged);
        assert!(r.evaluations > 0);
    }

    #[test]
    fn sech_eighth() {
        let r = integrate_line(|x| Complex64::new(sech(x).powi(8), 0.0), &QuadratureControls::default()).unwrap();
        assert!((r.value.re - 32.0 / 35.0).abs() <= 1e-10);
    }

    #[test]
    fn odd_integrand_vanishes() {
        let r = integrate_line(
            |x| Complex64::new(x.sinh() * sech(x).powi(4), 0.0),
            &QuadratureControls::default(),
        )
        .unwrap();
        assert!(r.value.norm() <= 1e-12);
    }

    #[test]
    fn truncation_mapping() {
        let c = QuadratureControls::default().truncated();
        let r = integrate_line(|x| Complex64::new(sech(x).powi(2), 0.0), &c).unwrap();
        assert!((r.value.re - 2.0).abs() <= 1e-10);
    }

    #[test]
    fn non_finite_sample_is_an_error() {
        let r = integrate_line(
            |x| Complex64::new(1.0 / x, 0.0) * 0.0 / 0.0,
            &QuadratureControls::default(),
        );
        assert!(matches!(r, Err(Error::Evaluation { .. })));
    }

    #[test]
    fn budget_exhaustion_reports_error_estimate() {
        let c = QuadratureControls {
            target_abs_tol: 1e-30,
            max_subdivisions: 3,
            mapping: Mapping::CompactTanSinh,
        };
        let r = integrate_line(|x| Complex64::new(sech(x).powf(0.5), 0.0), &c).unwrap();
        assert!(!r.converged);
        assert!(r.abs_error_est.is_finite() && r.abs_error_est > 0.0);
    }

    #[test]
    fn invalid_controls() {
        let c = QuadratureControls {
            target_abs_tol: 0.0,
            ..Default::default()
        };
        assert!(integrate_line(|_| Complex64::new(0.0, 0.0), &c).is_err());
        let c = QuadratureControls {
            max_subdivisions: 0,
            ..Default::default()
        };
        assert!(integrate_line(|_| Complex64::new(0.0, 0.0), &c).is_err());
    }
}
