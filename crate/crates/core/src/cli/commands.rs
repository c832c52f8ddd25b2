//! The sweep and report commands. Each returns the complete output text;
//! [`emit`] writes it to the configured path or stdout.

use std::fs;
use std::io::Write;

use crate::bound::{bound_spectrum, count_bound_states, table1_report, Table1Report};
use crate::model::{make_units, PotentialProfile, ProfileKind};
use crate::scatter::{rescaling_evidence, sweep, Axis, SweepRow, PAPER_GAP};

use super::config::{Alpha, RunConfig};
use super::output::{csv_row, metadata, num, sweep_alpha_line, CSV_HEADER};
use super::CliError;

/// Fraction of V0 the tunnelling range is clipped to (E < V0 strictly).
pub const TUNNELLING_CLIP: f64 = 0.999;

/// Transmitted amplitude used for the rescaling evidence.
pub const RESCALE_B5: f64 = 2.0;

pub const TUNNELLING_NOTE: &str = "tunnelling coefficient = the transmission T restricted to E < V0; \
this reading of the tunnelling curve is an interpretation, not an assertion";

fn require_kind(config: &RunConfig, kind: ProfileKind, command: &str) -> Result<(), CliError> {
    if config.kind == kind {
        Ok(())
    } else {
        Err(CliError::Config(format!("{command} requires kind = {kind}, got {}", config.kind)))
    }
}

/// Summary of T_paper against T_solve over the rows.
fn paper_gap_lines(rows: &[SweepRow]) -> Vec<String> {
    let ok: Vec<_> = rows.iter().filter_map(|r| r.result.as_ref().ok()).collect();
    let flagged = ok.iter().filter(|r| r.flags.paper_gap).count();
    let worst = ok
        .iter()
        .map(|r| r.paper_discrepancy())
        .fold(0.0f64, |m, d| if d.is_nan() || m.is_nan() { f64::NAN } else { m.max(d) });
    vec![
        format!(
            "# paper_gap: {flagged}/{} evaluated rows differ by more than {} (relative)",
            ok.len(),
            num(PAPER_GAP)
        ),
        format!("# paper_gap: max |T_paper - T_solve|/T_solve = {}", num(worst)),
        format!("# failed_rows = {}", rows.len() - ok.len()),
    ]
}

/// b5 = 1 versus b5 = 2 at the configured energy and base profile.
fn rescaling_lines(config: &RunConfig) -> Vec<String> {
    let u = make_units();
    let energy = if config.axis == Axis::E { config.min } else { config.energy };
    let evidence = PotentialProfile::new(config.v0, config.resolved_alpha(), config.a, ProfileKind::Barrier)
        .map_err(CliError::from)
        .and_then(|pp| Ok(rescaling_evidence(energy, &config.mass(), &pp, &u, RESCALE_B5)?));
    match evidence {
        Ok(ev) => vec![
            format!("# t2_rescaling: E_eV = {}, b5 = 1 -> {}", num(ev.energy), num(ev.scale)),
            format!(
                "# t2_rescaling: T_solve = {} -> {}, relative change = {}",
                num(ev.t_solve.0),
                num(ev.t_solve.1),
                num(ev.solve_change())
            ),
            format!(
                "# t2_rescaling: T_paper = {} -> {}, ratio = {} (an invariant would give 1)",
                num(ev.t_paper.0),
                num(ev.t_paper.1),
                num(ev.paper_ratio())
            ),
        ],
        Err(e) => vec![format!("# t2_rescaling: unavailable ({e})")],
    }
}

fn sweep_text(command: &str, config: &RunConfig, notes: &[String]) -> Result<String, CliError> {
    config.validate()?;
    require_kind(config, ProfileKind::Barrier, command)?;
    let spec = config.sweep_spec()?;
    let rows = sweep(&spec, &make_units());
    let mut lines = metadata(command, config, &sweep_alpha_line(config));
    lines.push(format!(
        "# sign_convention = {}",
        if config.fidelity.printed_signs() { "printed" } else { "expanded" }
    ));
    lines.extend(notes.iter().cloned());
    lines.extend(paper_gap_lines(&rows));
    if config.fidelity.rescaling_report() {
        lines.extend(rescaling_lines(config));
    }
    lines.push(CSV_HEADER.to_string());
    lines.extend(rows.iter().map(csv_row));
    Ok(lines.join("\n") + "\n")
}

/// T over the configured axis.
pub fn cmd_transmission(config: &RunConfig) -> Result<String, CliError> {
    sweep_text("transmission", config, &[])
}

/// T over E < V0: the axis is E and max is clipped to 0.999·V0.
pub fn cmd_tunnelling(config: &RunConfig) -> Result<String, CliError> {
    if config.axis != Axis::E {
        return Err(CliError::Config(format!(
            "tunnelling sweeps the E axis, got axis = {}",
            config.axis
        )));
    }
    let mut clipped = config.clone();
    let mut notes = vec![format!("# note: {TUNNELLING_NOTE}")];
    let limit = TUNNELLING_CLIP * config.v0;
    if clipped.max > limit {
        clipped.max = limit;
        notes.push(format!(
            "# E range clipped to max = {} ({} * V0)",
            num(limit),
            TUNNELLING_CLIP
        ));
    }
    if clipped.min >= limit {
        return Err(CliError::Config(format!(
            "min ({}) must lie below V0 for tunnelling",
            config.min
        )));
    }
    if clipped.points > 1 && clipped.min >= clipped.max {
        return Err(CliError::Config("empty E range after clipping".into()));
    }
    sweep_text("tunnelling", &clipped, &notes)
}

fn table1_lines(r: &Table1Report) -> Vec<String> {
    let dp = r.diff_published();
    let dr = r.diff_reference();
    let mut lines = vec![
        String::new(),
        "# table 1 comparison (computed vs published vs earlier reference)".to_string(),
        format!("# note: {}", Table1Report::NOTE),
        "level,computed_eV,published_eV,reference_eV,abs_diff_published_eV,abs_diff_reference_eV".to_string(),
    ];
    for i in 0..2 {
        lines.push(format!(
            "E{},{},{},{},{},{}",
            i + 1,
            num(r.levels[i].energy),
            num(r.published[i]),
            num(r.reference[i]),
            num(dp[i]),
            num(dr[i])
        ));
    }
    lines
}

/// Bound levels of the well with the comparison block appended.
pub fn cmd_bound(config: &RunConfig) -> Result<String, CliError> {
    config.validate()?;
    require_kind(config, ProfileKind::Well, "bound")?;
    let u = make_units();
    let mp = config.mass();
    let pp = config.well_profile()?;
    let alpha_line = match config.alpha {
        Alpha::Auto => format!("{} (auto: 0.01*V0)", num(pp.alpha)),
        Alpha::Value(v) => num(v),
    };
    let mut lines = metadata("bound", config, &alpha_line);
    let levels = bound_spectrum(&mp, &pp, &u)?;
    let count = count_bound_states(&mp, &pp, &u)?;
    lines.push("n,E_n_eV,residual,below_zero".to_string());
    lines.extend(levels.iter().map(|l| {
        format!("{},{},{},{}", l.n, num(l.energy), num(l.residual), l.below_zero)
    }));
    lines.push(format!("count = {count}"));
    lines.extend(table1_lines(&table1_report(&mp, &pp, &u)?));
    Ok(lines.join("\n") + "\n")
}

/// Writes to `config.out`, or stdout when unset.
pub fn emit(text: &str, config: &RunConfig) -> Result<(), CliError> {
    match &config.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .lock()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}
