//! Closed form vs quadrature reports, orthogonality matrices, pseudo-norm
//! sign tables and the PT-breaking sweep.
//!
//! Grid points and sweep points are independent and evaluated in parallel;
//! outputs are always returned in a deterministic order.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closed_forms::{
    self, a0, a1, check_pt_alpha, hermitian_norm, im_energy_formula, j_w_element_sum, l_norm_sum,
    normalization_constant, pseudo_inner, q_closed, q_sum, OverlapSpec,
};
use crate::error::{Error, Result};
use crate::model::{
    bound_state_count, bound_state_count_for, energy, is_imaginary, is_real, potential, scarf_f, QuasiParity,
    ScarfParams, StateIndex, REGIME_TOL,
};
use crate::quadrature::{integrate_line, overlap_factors, IntegralEstimate, OverlapFactor, QuadratureControls};

/// Pass criterion `|closed - oracle| <= max(abs, rel * |closed|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { abs: 1e-8, rel: 1e-6 }
    }
}

impl Tolerances {
    pub fn allows(&self, diff: f64, value: f64) -> bool {
        diff <= self.abs.max(self.rel * value)
    }
}

/// One `(alpha, beta)` pair of a verification grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub alpha: Complex64,
    pub beta: Complex64,
}

impl GridPoint {
    pub fn new(alpha: Complex64, beta: Complex64) -> Self {
        Self { alpha, beta }
    }

    fn label(&self) -> String {
        format!("a={},b={}", fmt_c(self.alpha), fmt_c(self.beta))
    }

    /// `beta` real and `alpha` real or imaginary.
    pub fn is_pt(&self) -> bool {
        is_real(self.beta, REGIME_TOL) && (is_real(self.alpha, REGIME_TOL) || is_imaginary(self.alpha, REGIME_TOL))
    }

    pub fn is_hermitian(&self) -> bool {
        (self.alpha.conj() - self.beta).norm() <= REGIME_TOL
    }
}

fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.re == 0.0 {
        format!("{}i", z.im)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ParameterGrid {
    pub points: Vec<GridPoint>,
}

impl ParameterGrid {
    pub fn new(points: Vec<GridPoint>) -> Self {
        Self { points }
    }

    /// Real-alpha PT points, broken-PT points and Hermitian points covering
    /// all four PT product cases and an integer `alpha + beta`.
    pub fn standard() -> Self {
        let mut points = Vec::new();
        for a in [-1.2, -2.0, -3.7, -4.5] {
            for b in [-1.1, -2.5, -3.0] {
                points.push(GridPoint::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0)));
            }
        }
        for t in [0.25, 0.5, 1.0] {
            for b in [-2.5, -3.0, -4.5] {
                points.push(GridPoint::new(Complex64::new(0.0, t), Complex64::new(b, 0.0)));
            }
        }
        for s in [1.0, 2.5] {
            for lambda in [0.0, 0.7, 1.3] {
                let alpha = Complex64::new(-s - 0.5, -lambda);
                points.push(GridPoint::new(alpha, alpha.conj()));
            }
        }
        Self { points }
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonEntry {
    pub case_id: String,
    pub closed_value: Option<Complex64>,
    pub oracle_value: Option<Complex64>,
    pub abs_diff: f64,
    pub pass: bool,
    /// Error text when either side could not be evaluated.
    pub note: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub entries: Vec<ComparisonEntry>,
    pub max_abs_diff: f64,
    pub all_pass: bool,
}

impl ComparisonReport {
    pub fn from_entries(mut entries: Vec<ComparisonEntry>) -> Self {
        entries.sort_by(|a, b| a.case_id.cmp(&b.case_id));
        let max_abs_diff =
            entries
                .iter()
                .map(|e| e.abs_diff)
                .fold(0.0, |m: f64, d| if d.is_nan() { f64::INFINITY } else { m.max(d) });
        let all_pass = entries.iter().all(|e| e.pass);
        Self {
            entries,
            max_abs_diff,
            all_pass,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &ComparisonEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }
}

fn compare(case_id: String, closed: Result<Complex64>, oracle: Result<Complex64>, tol: &Tolerances) -> ComparisonEntry {
    match (closed, oracle) {
        (Ok(c), Ok(o)) => {
            let abs_diff = (c - o).norm();
            ComparisonEntry {
                case_id,
                closed_value: Some(c),
                oracle_value: Some(o),
                abs_diff,
                pass: tol.allows(abs_diff, c.norm()),
                note: None,
            }
        }
        (c, o) => {
            let note = [c.as_ref().err(), o.as_ref().err()]
                .into_iter()
                .flatten()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join("; ");
            ComparisonEntry {
                case_id,
                closed_value: c.ok(),
                oracle_value: o.ok(),
                abs_diff: f64::INFINITY,
                pass: false,
                note: Some(note),
            }
        }
    }
}

fn value(r: Result<IntegralEstimate>) -> Result<Complex64> {
    let e = r?;
    if e.converged {
        Ok(e.value)
    } else {
        Err(Error::NotConverged {
            abs_error_est: e.abs_error_est,
        })
    }
}

fn w_weight(alpha: Complex64, beta: f64) -> impl Fn(f64) -> f64 + Sync {
    let strength = (Complex64::new(beta * beta, 0.0) - alpha * alpha).re;
    move |x: f64| strength * x.sinh() / (2.0 * x.cosh() * x.cosh())
}

fn factor(n: usize, a: Complex64, b: Complex64) -> OverlapFactor {
    OverlapFactor::plain(n, a, b)
}

fn conj_factor(n: usize, a: Complex64, b: Complex64, reflect: bool) -> OverlapFactor {
    OverlapFactor {
        reflect,
        conjugate: true,
        ..OverlapFactor::plain(n, a, b)
    }
}

fn base_entries(tol: &Tolerances, controls: &QuadratureControls) -> Vec<ComparisonEntry> {
    let c = |x: f64| Complex64::new(x, 0.0);
    let mut out = Vec::new();
    for (p, q) in [
        (c(-1.0), c(-1.0)),
        (c(-1.5), c(-0.5)),
        (Complex64::new(-1.2, 0.3), Complex64::new(-0.9, -0.8)),
    ] {
        let integrand = |x: f64| {
            let z = Complex64::new(0.0, x.sinh());
            (1.0 - z).powc(p) * (1.0 + z).powc(q)
        };
        out.push(compare(
            format!("base/a0/p={},q={}", fmt_c(p), fmt_c(q)),
            a0(p, q),
            value(integrate_line(integrand, controls)),
            tol,
        ));
        out.push(compare(
            format!("base/a1/p={},q={}", fmt_c(p), fmt_c(q)),
            a1(p, q),
            value(integrate_line(|x| integrand(x) * x.sinh(), controls)),
            tol,
        ));
    }
    out
}

fn pt_entries(point: &GridPoint, tol: &Tolerances, controls: &QuadratureControls) -> Vec<ComparisonEntry> {
    let mut out = Vec::new();
    let alpha = point.alpha;
    let beta = point.beta.re;
    let b = Complex64::new(beta, 0.0);
    let label = point.label();
    for q_ket in QuasiParity::BOTH {
        let a_ket = alpha * q_ket.sign();
        let count_ket = bound_state_count_for(a_ket, b);
        for q_bra in QuasiParity::BOTH {
            let a_bra = alpha * q_bra.sign();
            let count_bra = bound_state_count_for(a_bra, b);
            let delta_sign = if q_ket == q_bra {
                QuasiParity::Plus
            } else {
                QuasiParity::Minus
            };
            for n in 0..count_ket {
                for l in 0..count_bra {
                    let tag = format!("pt/{label}/q{:+}{:+}/n{n}l{l}", q_ket.as_i8(), q_bra.as_i8());
                    let ket = factor(n, a_ket, b);
                    // PT product: I_nl = integral F_n^(a,b)(x) conj(F_l^(d,b)(-x)) dx
                    let oracle = overlap_factors(ket, conj_factor(l, a_bra, b, true), None, controls);
                    out.push(compare(
                        format!("{tag}/pseudo_inner"),
                        pseudo_inner(a_ket, beta, delta_sign, n, l).map(|r| r.value),
                        value(oracle),
                        tol,
                    ));
                    // general Q^(a,b,b,d): the reflected F^(d,b) is (-1)^l F^(b,d)
                    let spec = OverlapSpec::new(a_ket, b, b, a_bra, n, l);
                    let oracle = overlap_factors(ket, conj_factor(l, b, a_bra, false), None, controls);
                    out.push(compare(
                        format!("{tag}/q_sum"),
                        spec.and_then(|s| q_sum(&s)),
                        value(oracle),
                        tol,
                    ));
                    if (a_bra.conj() - a_ket).norm() <= REGIME_TOL {
                        let spec = OverlapSpec::new(a_ket, b, b, a_bra, n, l);
                        out.push(compare(
                            format!("{tag}/q_closed"),
                            q_closed(a_ket, b, n, l),
                            spec.and_then(|s| q_sum(&s)),
                            tol,
                        ));
                    }
                }
            }
        }
        for n in 0..count_ket {
            let tag = format!("pt/{label}/q{:+}/n{n}", q_ket.as_i8());
            let ket = factor(n, a_ket, b);
            let bra = conj_factor(n, a_ket, b, false);
            let l_oracle = value(overlap_factors(ket, bra, None, controls));
            let weight = w_weight(a_ket, beta);
            let j_oracle = value(overlap_factors(ket, bra, Some(&weight), controls));
            out.push(compare(
                format!("{tag}/l_norm"),
                l_norm_sum(a_ket, beta, n),
                l_oracle.clone(),
                tol,
            ));
            out.push(compare(
                format!("{tag}/j_w"),
                j_w_element_sum(a_ket, beta, n),
                j_oracle.clone(),
                tol,
            ));
            match closed_forms::l_norm_sum_printed(a_ket, beta, n) {
                Err(Error::Degenerate) => {}
                printed => out.push(compare(
                    format!("{tag}/l_norm_printed"),
                    printed,
                    l_norm_sum(a_ket, beta, n),
                    tol,
                )),
            }
            match closed_forms::j_w_element_sum_printed(a_ket, beta, n) {
                Err(Error::Degenerate) => {}
                printed => out.push(compare(
                    format!("{tag}/j_w_printed"),
                    printed,
                    j_w_element_sum(a_ket, beta, n),
                    tol,
                )),
            }
            let formula = Ok(im_energy_formula(a_ket, beta, n));
            let ratio = closed_forms::im_energy_relation(a_ket, beta, n).map(|r| r.ratio);
            out.push(compare(format!("{tag}/im_e_closed"), formula.clone(), ratio, tol));
            let quad_ratio = match (j_oracle, l_oracle) {
                (Ok(j), Ok(l)) => Ok(j / l),
                (Err(e), _) | (_, Err(e)) => Err(e),
            };
            out.push(compare(
                format!("{tag}/im_e_quadrature"),
                formula.clone(),
                quad_ratio,
                tol,
            ));
            let spectrum = Ok(Complex64::new(
                closed_forms::im_energy_from_spectrum(a_ket, beta, n),
                0.0,
            ));
            out.push(compare(format!("{tag}/im_e_spectrum"), formula, spectrum, tol));
        }
    }
    out
}

fn hermitian_entries(point: &GridPoint, tol: &Tolerances, controls: &QuadratureControls) -> Vec<ComparisonEntry> {
    let mut out = Vec::new();
    let (alpha, beta) = (point.alpha, point.beta);
    let label = point.label();
    let count = bound_state_count_for(alpha, beta);
    for n in 0..count {
        for l in 0..count {
            let oracle = overlap_factors(
                factor(n, alpha, beta),
                conj_factor(l, alpha, beta, false),
                None,
                controls,
            );
            let oracle = value(oracle);
            out.push(compare(
                format!("herm/{label}/n{n}l{l}/norm"),
                hermitian_norm(alpha, n, l),
                oracle.clone(),
                tol,
            ));
            if n == l {
                let normalized = normalization_constant(alpha, n).map(|c| oracle.map(|k| k * c * c));
                let normalized = normalized.and_then(|r| r);
                out.push(compare(
                    format!("herm/{label}/n{n}/normalized"),
                    Ok(Complex64::new(1.0, 0.0)),
                    normalized,
                    tol,
                ));
            }
        }
    }
    out
}

/// Evaluates every closed form on `grid` against the quadrature oracle.
///
/// Each grid point yields entries for the products that apply to it (PT
/// products when beta is real and alpha real or imaginary, standard norms
/// when `beta = conj alpha`). Evaluation failures become failing entries.
pub fn verify_closed_forms(grid: &ParameterGrid, tol: &Tolerances, controls: &QuadratureControls) -> ComparisonReport {
    if grid.is_empty() {
        return ComparisonReport::from_entries(Vec::new());
    }
    let per_point: Vec<Vec<ComparisonEntry>> = grid
        .points
        .par_iter()
        .map(|p| {
            let mut entries = Vec::new();
            if p.is_pt() {
                entries.extend(pt_entries(p, tol, controls));
            }
            if p.is_hermitian() {
                entries.extend(hermitian_entries(p, tol, controls));
            }
            entries
        })
        .collect();
    let mut entries = base_entries(tol, controls);
    entries.extend(per_point.into_iter().flatten());
    ComparisonReport::from_entries(entries)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InnerProduct {
    /// `integral psi_j(x) conj(psi_i(-x)) dx`
    PtInner,
    /// `integral psi_j(x) conj(psi_i(x)) dx`
    StandardInner,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpotCheck {
    pub row: usize,
    pub col: usize,
    pub closed: Complex64,
    pub oracle: Complex64,
    pub abs_diff: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalityMatrix {
    pub labels: Vec<StateIndex>,
    /// `entries[i][j]` pairs bra `labels[i]` with ket `labels[j]`.
    pub entries: Vec<Vec<Complex64>>,
    pub max_off_diagonal: f64,
    /// True when Hermitian-regime entries carry the normalization constants.
    pub normalized: bool,
    pub spot_checks: Vec<SpotCheck>,
    pub max_spot_check_diff: f64,
}

/// Fraction of matrix entries re-evaluated by quadrature.
pub const SPOT_CHECK_RATE: f64 = 0.2;

/// Matrix of inner products between all bound states of `params`.
///
/// PT products need `beta` real and `alpha` real or imaginary. Standard
/// products use the closed Hermitian norm (normalized) when
/// `beta = conj alpha` and the general double sum (`C = 1`) in PT regimes.
/// A seeded random subset of entries is re-evaluated by quadrature.
pub fn orthogonality_matrix(
    params: &ScarfParams,
    product: InnerProduct,
    include_both_parities: bool,
    controls: &QuadratureControls,
    seed: u64,
) -> Result<OrthogonalityMatrix> {
    let point = GridPoint::new(params.alpha(), params.beta());
    let hermitian = point.is_hermitian();
    match product {
        InnerProduct::PtInner if !point.is_pt() => {
            return Err(Error::Domain(
                "PT products need a real beta and a real or imaginary alpha".into(),
            ))
        }
        InnerProduct::StandardInner if !(hermitian || point.is_pt()) => {
            return Err(Error::Domain(
                "standard products need a Hermitian or PT-symmetric parameter pair".into(),
            ))
        }
        _ => {}
    }
    let normalized = product == InnerProduct::StandardInner && hermitian;
    let parities: &[QuasiParity] = if include_both_parities && !normalized {
        &QuasiParity::BOTH
    } else {
        &[QuasiParity::Plus]
    };
    let labels: Vec<StateIndex> = parities
        .iter()
        .flat_map(|&q| (0..bound_state_count(params, q)).map(move |n| StateIndex::new(n, q)))
        .collect();
    let beta = params.beta();
    let closed = |bra: StateIndex, ket: StateIndex| -> Result<Complex64> {
        let a_ket = params.alpha() * ket.quasi_parity.sign();
        let a_bra = params.alpha() * bra.quasi_parity.sign();
        match product {
            InnerProduct::PtInner => {
                let delta_sign = if bra.quasi_parity == ket.quasi_parity {
                    QuasiParity::Plus
                } else {
                    QuasiParity::Minus
                };
                pseudo_inner(a_ket, beta.re, delta_sign, ket.n, bra.n).map(|r| r.value)
            }
            InnerProduct::StandardInner if normalized => {
                let k = hermitian_norm(params.alpha(), ket.n, bra.n)?;
                Ok(k * normalization_constant(params.alpha(), ket.n)? * normalization_constant(params.alpha(), bra.n)?)
            }
            InnerProduct::StandardInner => q_sum(&OverlapSpec::new(a_ket, beta, a_bra, beta, ket.n, bra.n)?),
        }
    };
    let oracle = |bra: StateIndex, ket: StateIndex| -> Result<Complex64> {
        let a_ket = params.alpha() * ket.quasi_parity.sign();
        let a_bra = params.alpha() * bra.quasi_parity.sign();
        let reflect = product == InnerProduct::PtInner;
        let v = value(overlap_factors(
            factor(ket.n, a_ket, beta),
            conj_factor(bra.n, a_bra, beta, reflect),
            None,
            controls,
        ))?;
        if normalized {
            Ok(v * normalization_constant(params.alpha(), ket.n)? * normalization_constant(params.alpha(), bra.n)?)
        } else {
            Ok(v)
        }
    };
    let size = labels.len();
    let entries = labels
        .iter()
        .map(|&bra| labels.iter().map(|&ket| closed(bra, ket)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let max_off_diagonal = (0..size)
        .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| entries[i][j].norm())
        .fold(0.0, f64::max);
    let total = size * size;
    let picks = ((total as f64) * SPOT_CHECK_RATE).ceil() as usize;
    let mut rng = StdRng::seed_from_u64(seed);
    let mut chosen = rand::seq::index::sample(&mut rng, total, picks.min(total)).into_vec();
    chosen.sort_unstable();
    let spot_checks = chosen
        .par_iter()
        .map(|&k| {
            let (row, col) = (k / size.max(1), k % size.max(1));
            let o = oracle(labels[row], labels[col])?;
            let c = entries[row][col];
            Ok(SpotCheck {
                row,
                col,
                closed: c,
                oracle: o,
                abs_diff: (c - o).norm(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let max_spot_check_diff = spot_checks.iter().map(|s| s.abs_diff).fold(0.0, f64::max);
    Ok(OrthogonalityMatrix {
        labels,
        entries,
        max_off_diagonal,
        normalized,
        spot_checks,
        max_spot_check_diff,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignRow {
    pub n: usize,
    pub sign: i8,
    pub value: f64,
    /// Whether the sign equals `(-1)^n`.
    pub follows_alternation: bool,
}

/// Sign of the diagonal pseudo-norm for every bound state of a real pair.
///
/// The `(-1)^n` pattern holds while `-alpha-n` and `-beta-n` stay positive;
/// `follows_alternation` marks where it breaks.
pub fn sign_table(alpha: f64, beta: f64) -> Result<Vec<SignRow>> {
    if !(alpha.is_finite() && beta.is_finite()) {
        return Err(Error::NonFinite(format!("({alpha}, {beta})")));
    }
    let a = Complex64::new(alpha, 0.0);
    let count = bound_state_count_for(a, Complex64::new(beta, 0.0));
    if count == 0 {
        return Err(Error::UnsupportedRegime {
            required: "PTUnbroken",
            actual: "NoBoundStates".into(),
        });
    }
    (0..count)
        .map(|n| {
            let r = pseudo_inner(a, beta, QuasiParity::Plus, n, n)?;
            let expected = if n % 2 == 0 { 1 } else { -1 };
            Ok(SignRow {
                n,
                sign: r.sign,
                value: r.value.re,
                follows_alternation: r.sign == expected,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub alpha: Complex64,
    pub beta: f64,
    pub n: usize,
    pub quasi_parity: i8,
    /// False marks a point where `n` is not a bound state; all values are then `None`.
    pub has_state: bool,
    pub energy: Option<Complex64>,
    pub im_energy_formula: Option<f64>,
    /// Closed `J/L`.
    pub im_energy_ratio: Option<f64>,
    /// Quadrature `J/L`.
    pub im_energy_quadrature: Option<f64>,
    pub pseudo_norm: Option<Complex64>,
    pub pseudo_norm_sign: Option<i8>,
    /// Largest pairwise disagreement between the Im E sources and between
    /// the closed and quadrature pseudo-norms.
    pub oracle_residual: Option<f64>,
}

fn sweep_point(alpha: Complex64, beta: f64, n: usize, controls: &QuadratureControls) -> Result<SweepRecord> {
    check_pt_alpha(alpha)?;
    let params = ScarfParams::from_complex(alpha, Complex64::new(beta, 0.0))?;
    let idx = StateIndex::plus(n);
    let mut record = SweepRecord {
        alpha,
        beta,
        n,
        quasi_parity: 1,
        has_state: false,
        energy: None,
        im_energy_formula: None,
        im_energy_ratio: None,
        im_energy_quadrature: None,
        pseudo_norm: None,
        pseudo_norm_sign: None,
        oracle_residual: None,
    };
    if n >= bound_state_count(&params, QuasiParity::Plus) {
        return Ok(record);
    }
    let b = Complex64::new(beta, 0.0);
    let e = energy(&params, idx)?;
    let formula = im_energy_formula(alpha, beta, n);
    let ratio = j_w_element_sum(alpha, beta, n)? / l_norm_sum(alpha, beta, n)?;
    let ket = factor(n, alpha, b);
    let weight = w_weight(alpha, beta);
    let l_quad = value(overlap_factors(ket, conj_factor(n, alpha, b, false), None, controls))?;
    let j_quad = value(overlap_factors(
        ket,
        conj_factor(n, alpha, b, false),
        Some(&weight),
        controls,
    ))?;
    let quad_ratio = j_quad / l_quad;
    let pseudo = pseudo_inner(alpha, beta, QuasiParity::Plus, n, n)?;
    let pseudo_quad = value(overlap_factors(ket, conj_factor(n, alpha, b, true), None, controls))?;
    let residual = [
        (ratio - formula).norm(),
        (quad_ratio - formula).norm(),
        (e.im - formula.re).abs(),
        (pseudo.value - pseudo_quad).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    record.has_state = true;
    record.energy = Some(e);
    record.im_energy_formula = Some(formula.re);
    record.im_energy_ratio = Some(ratio.re);
    record.im_energy_quadrature = Some(quad_ratio.re);
    record.pseudo_norm = Some(pseudo.value);
    record.pseudo_norm_sign = Some(pseudo.sign);
    record.oracle_residual = Some(residual);
    Ok(record)
}

/// Follows state `n` (quasi-parity +1) along a path of alpha values, usually
/// down the real axis to 0 and then up the imaginary axis.
pub fn pt_breaking_sweep(
    beta: f64,
    path: &[Complex64],
    n: usize,
    controls: &QuadratureControls,
) -> Result<Vec<SweepRecord>> {
    path.par_iter()
        .map(|&alpha| sweep_point(alpha, beta, n, controls))
        .collect()
}

/// `max |-F'' + V F - E F| / max |F|` over `x` in `[-5, 5]`, with `F''` from a
/// five-point difference of step `2.5e-3`.
pub fn schrodinger_residual(params: &ScarfParams, idx: StateIndex) -> Result<f64> {
    let e = energy(params, idx)?;
    let (a, b) = params.branch(idx.quasi_parity);
    let f = |x: f64| scarf_f(idx.n, a, b, x);
    let h = 2.5e-3;
    let mut worst = 0.0f64;
    let mut scale = 0.0f64;
    for k in 0..=400 {
        let x = -5.0 + 0.025 * k as f64;
        let fx = f(x);
        let second =
            (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * fx + 16.0 * f(x - h) - f(x - 2.0 * h)) / (12.0 * h * h);
        let v = potential(params, x).total;
        worst = worst.max((-second + v * fx - e * fx).norm());
        scale = scale.max(fx.norm());
    }
    if !(worst.is_finite() && scale > 0.0) {
        return Err(Error::NonFinite(format!("residual for state {idx:?}")));
    }
    Ok(worst / scale)
}

/// `steps` evenly spaced points from `start` to `end` inclusive.
pub fn linspace(start: f64, end: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..steps)
            .map(|k| start + (end - start) * k as f64 / (steps - 1) as f64)
            .collect(),
    }
}

/// Lipschitz bound for `E_n` between two nearby sweep points.
pub fn energy_step_bound(alpha: Complex64, next: Complex64, beta: f64, n: usize) -> f64 {
    3.0 * (next - alpha).norm() * (alpha.norm().max(next.norm()) + beta.abs() + 2.0 * n as f64 + 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_grid() {
        let r = verify_closed_forms(
            &ParameterGrid::default(),
            &Tolerances::default(),
            &QuadratureControls::default(),
        );
        assert!(r.entries.is_empty());
        assert!(r.all_pass);
    }

    #[test]
    fn tolerance_rule() {
        let t = Tolerances::default();
        assert!(t.allows(5e-9, 1.0));
        assert!(!t.allows(2e-6, 1.0));
        assert!(t.allows(5e-5, 100.0));
    }

    #[test]
    fn linspace_endpoints() {
        assert_eq!(linspace(-1.0, 0.0, 5), vec![-1.0, -0.75, -0.5, -0.25, 0.0]);
        assert_eq!(linspace(0.3, 9.0, 1), vec![0.3]);
        assert!(linspace(0.0, 1.0, 0).is_empty());
    }

    #[test]
    fn sign_table_requires_states() {
        assert!(sign_table(1.0, 1.0).is_err());
        let t = sign_table(-1.2, -1.1).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].sign, 1);
    }

    #[test]
    fn residual_small_for_ground_state() {
        let p = ScarfParams::from_complex(Complex64::new(-3.0, 0.0), Complex64::new(-2.0, 0.0)).unwrap();
        let r = schrodinger_residual(&p, StateIndex::plus(0)).unwrap();
        let e = energy(&p, StateIndex::plus(0)).unwrap().norm();
        assert!(r <= 1e-5 * e, "{r}");
    }

    #[test]
    fn standard_grid_shape() {
        let g = ParameterGrid::standard();
        assert_eq!(g.points.len(), 12 + 9 + 6);
        assert_eq!(g.points.iter().filter(|p| p.is_hermitian()).count(), 6);
    }
}
