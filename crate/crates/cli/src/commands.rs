use num_complex::Complex64;
use scarf2_core::closed_forms::VanishingReason;
use scarf2_core::identities::{check_moment_sums, new_sum_rule_prove, new_sum_rule_prove_flipped};
use scarf2_core::model::{bound_state_count_for, is_imaginary, is_real, REGIME_TOL};
use scarf2_core::quadrature::{overlap_factors, OverlapFactor};
use scarf2_core::verification::{ParameterGrid, Tolerances};
use scarf2_core::{
    bound_state_count, classify_regime, energy, orthogonality_matrix, pseudo_inner, pt_breaking_sweep,
    verify_closed_forms, InnerProduct, QuadratureControls, QuasiParity, ScarfParams, StateIndex,
};

use crate::args::{
    IdentitiesArgs, MatrixArgs, ParityChoice, ProductChoice, PseudonormArgs, SpectrumArgs, SweepArgs, VerifyArgs,
};
use crate::parse::{parse_grid, parse_path};
use crate::table::{Cell, Row, Table};
use crate::CliError;

/// A finished command: its table, whether it counts as a pass, and
/// human-readable notes for stderr.
#[derive(Debug)]
pub struct Outcome {
    pub table: Table,
    pub pass: bool,
    pub notes: Vec<String>,
}

impl Outcome {
    fn ok(table: Table) -> Self {
        Self {
            table,
            pass: true,
            notes: Vec::new(),
        }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

fn reason_text(r: Option<VanishingReason>) -> &'static str {
    match r {
        Some(VanishingReason::SineFactorZero) => "sine_factor_zero",
        Some(VanishingReason::OffDiagonal) => "off_diagonal",
        None => "",
    }
}

fn params_of(alpha: Complex64, beta: Complex64) -> Result<ScarfParams, CliError> {
    Ok(ScarfParams::from_complex(alpha, beta)?)
}

fn pt_beta(alpha: Complex64, beta: Complex64) -> Result<f64, CliError> {
    if !is_real(beta, REGIME_TOL) || !(is_real(alpha, REGIME_TOL) || is_imaginary(alpha, REGIME_TOL)) {
        return Err(CliError::Usage(format!(
            "PT products need a real beta and a real or imaginary alpha, got alpha = {alpha}, beta = {beta}"
        )));
    }
    Ok(beta.re)
}

fn converged(est: scarf2_core::IntegralEstimate) -> Result<Complex64, CliError> {
    if est.converged {
        Ok(est.value)
    } else {
        Err(scarf2_core::Error::NotConverged {
            abs_error_est: est.abs_error_est,
        }
        .into())
    }
}

pub fn spectrum(args: &SpectrumArgs) -> Result<Outcome, CliError> {
    let params = params_of(*args.alpha, *args.beta)?;
    let parities: &[QuasiParity] = match args.parity {
        ParityChoice::Both => &QuasiParity::BOTH,
        ParityChoice::Plus => &[QuasiParity::Plus],
        ParityChoice::Minus => &[QuasiParity::Minus],
    };
    let mut table = Table::new(&["n", "quasi_parity", "energy*"]);
    for &q in parities {
        for n in 0..bound_state_count(&params, q) {
            let e = energy(&params, StateIndex::new(n, q))?;
            table.push(Row::new().int(n as i64).int(q.as_i8()).complex(e));
        }
    }
    let regime = classify_regime(&params);
    let outcome = Outcome::ok(table).note(format!("regime: {regime}"));
    Ok(if outcome.table.rows.is_empty() {
        outcome.note("no bound states for these parameters")
    } else {
        outcome
    })
}

pub fn pseudonorm(args: &PseudonormArgs, controls: &QuadratureControls) -> Result<Outcome, CliError> {
    let (alpha, beta_c) = (*args.alpha, *args.beta);
    let beta = pt_beta(alpha, beta_c)?;
    let delta_sign = QuasiParity::from_sign(args.delta_sign as i64)?;
    let delta = alpha * delta_sign.sign();
    let mut spec = vec!["n", "l", "value*", "sign", "vanishing_reason", "follows_alternation"];
    if args.check {
        spec.extend(["oracle*", "oracle_residual"]);
    }
    let mut table = Table::new(&spec);
    let same_parity_real = delta_sign == QuasiParity::Plus && is_real(alpha, REGIME_TOL);
    let count = bound_state_count_for(alpha, beta_c);
    for n in 0..count {
        let r = pseudo_inner(alpha, beta, delta_sign, n, n)?;
        let mut row = Row::new()
            .int(n as i64)
            .int(n as i64)
            .complex(r.value)
            .int(r.sign)
            .text(reason_text(r.vanishing_reason));
        row = if same_parity_real {
            row.bool(r.sign == if n % 2 == 0 { 1 } else { -1 })
        } else {
            row.empty(1)
        };
        if args.check {
            if n < bound_state_count_for(delta, beta_c) {
                let bra = OverlapFactor {
                    reflect: true,
                    conjugate: true,
                    ..OverlapFactor::plain(n, delta, beta_c)
                };
                let oracle = converged(overlap_factors(
                    OverlapFactor::plain(n, alpha, beta_c),
                    bra,
                    None,
                    controls,
                )?)?;
                row = row.complex(oracle).real((oracle - r.value).norm());
            } else {
                row = row.empty(3);
            }
        }
        table.push(row);
    }
    let outcome = Outcome::ok(table);
    Ok(if count == 0 {
        outcome.note("no bound states for these parameters")
    } else {
        outcome
    })
}

pub fn matrix(args: &MatrixArgs, controls: &QuadratureControls, seed: u64) -> Result<Outcome, CliError> {
    let params = params_of(*args.alpha, *args.beta)?;
    let product = match args.product {
        ProductChoice::Pt => InnerProduct::PtInner,
        ProductChoice::Standard => InnerProduct::StandardInner,
    };
    let m = orthogonality_matrix(&params, product, args.both_parities, controls, seed)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let mut table = Table::new(&[
        "bra_n",
        "bra_q",
        "ket_n",
        "ket_q",
        "value*",
        "oracle*",
        "oracle_residual",
    ]);
    for (i, bra) in m.labels.iter().enumerate() {
        for (j, ket) in m.labels.iter().enumerate() {
            let spot = m.spot_checks.iter().find(|s| s.row == i && s.col == j);
            table.push(
                Row::new()
                    .int(bra.n as i64)
                    .int(bra.quasi_parity.as_i8())
                    .int(ket.n as i64)
                    .int(ket.quasi_parity.as_i8())
                    .complex(m.entries[i][j])
                    .opt_complex(spot.map(|s| s.oracle))
                    .opt_real(spot.map(|s| s.abs_diff)),
            );
        }
    }
    Ok(Outcome::ok(table)
        .note(format!("max_off_diagonal = {:e}", m.max_off_diagonal))
        .note(format!(
            "{} spot checks, max residual = {:e}",
            m.spot_checks.len(),
            m.max_spot_check_diff
        )))
}

pub fn verify(args: &VerifyArgs, controls: &QuadratureControls) -> Result<Outcome, CliError> {
    let grid = match &args.grid_file {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            parse_grid(&text)?
        }
        None => ParameterGrid::standard(),
    };
    let defaults = Tolerances::default();
    let tol = match (args.tol, args.rel_tol) {
        (None, None) => defaults,
        (Some(abs), rel) => Tolerances {
            abs,
            rel: rel.unwrap_or(0.0),
        },
        (None, Some(rel)) => Tolerances { rel, ..defaults },
    };
    if !(tol.abs >= 0.0 && tol.rel >= 0.0) {
        return Err(CliError::Usage("tolerances must be non-negative".into()));
    }
    let report = verify_closed_forms(&grid, &tol, controls);
    let mut table = Table::new(&["case_id", "closed*", "oracle*", "abs_diff", "pass", "note"]);
    for e in &report.entries {
        table.push(
            Row::new()
                .text(e.case_id.clone())
                .opt_complex(e.closed_value)
                .opt_complex(e.oracle_value)
                .real(e.abs_diff)
                .bool(e.pass)
                .text(e.note.clone().unwrap_or_default()),
        );
    }
    let failed = report.failures().count();
    Ok(Outcome {
        table,
        pass: report.all_pass,
        notes: vec![format!(
            "{} entries, {} failed, max_abs_diff = {:e}",
            report.entries.len(),
            failed,
            report.max_abs_diff
        )],
    })
}

pub fn sweep(args: &SweepArgs, controls: &QuadratureControls) -> Result<Outcome, CliError> {
    if !args.beta.is_finite() {
        return Err(CliError::Usage("beta must be finite".into()));
    }
    let path = parse_path(&args.path)?;
    let records = pt_breaking_sweep(args.beta, &path, args.n, controls).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut table = Table::new(&[
        "alpha*",
        "beta",
        "n",
        "quasi_parity",
        "has_state",
        "energy*",
        "im_energy_formula",
        "im_energy_ratio",
        "im_energy_quadrature",
        "pseudo_norm*",
        "pseudo_norm_sign",
        "oracle_residual",
    ]);
    let mut missing = 0;
    for r in &records {
        if !r.has_state {
            missing += 1;
        }
        let row = Row::new()
            .complex(r.alpha)
            .real(r.beta)
            .int(r.n as i64)
            .int(r.quasi_parity)
            .bool(r.has_state)
            .opt_complex(r.energy)
            .opt_real(r.im_energy_formula)
            .opt_real(r.im_energy_ratio)
            .opt_real(r.im_energy_quadrature)
            .opt_complex(r.pseudo_norm)
            .opt_int(r.pseudo_norm_sign.map(i64::from))
            .opt_real(r.oracle_residual);
        table.push(row);
    }
    let outcome = Outcome::ok(table);
    Ok(if missing > 0 {
        outcome.note(format!("{missing} path point(s) have no bound state n = {}", args.n))
    } else {
        outcome
    })
}

pub fn identities(args: &IdentitiesArgs) -> Result<Outcome, CliError> {
    let mut table = Table::new(&["identity", "i", "j", "holds", "max_term_degree", "value", "detail"]);
    let prover = if args.negative_control {
        new_sum_rule_prove_flipped
    } else {
        new_sum_rule_prove
    };
    let mut pass = true;
    for n in 0..=args.max_n {
        for m in 0..=n {
            let p = prover(n, m);
            pass &= p.holds;
            let detail = p
                .offending
                .map(|(i, j, c)| format!("a^{i} b^{j} coefficient {c}"))
                .unwrap_or_default();
            table.push(
                Row::new()
                    .text("sum_rule")
                    .int(n as i64)
                    .int(m as i64)
                    .bool(p.holds)
                    .int(p.max_term_degree as i64)
                    .empty(1)
                    .text(detail),
            );
        }
    }
    for c in check_moment_sums(args.max_l) {
        pass &= c.holds;
        let row = Row::new()
            .text("moment_sum")
            .int(c.l as i64)
            .int(c.j as i64)
            .bool(c.holds)
            .empty(1);
        let row = match c.value.parse::<i64>() {
            Ok(v) => row.int(v),
            Err(_) => row.text(c.value),
        };
        table.push(row.empty(1));
    }
    let failed = table
        .values("holds")
        .iter()
        .filter(|c| matches!(c, Cell::Bool(false)))
        .count();
    Ok(Outcome {
        table,
        pass,
        notes: vec![format!("{failed} identity check(s) failed")],
    })
}
