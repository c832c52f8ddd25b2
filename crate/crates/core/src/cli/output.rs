//! Deterministic text emission: CSV rows, `#` metadata and the config hash.

use std::fmt::Write as _;

use sha1::{Digest, Sha1};

use crate::scatter::SweepRow;

use super::config::{Alpha, RunConfig};

/// Column schema of the transmission and tunnelling CSV files.
pub const CSV_HEADER: &str = "axis,T_solve,T_paper,t1,t2,b1,b2,b3,b4,b5,residual,flags";

/// 17 significant digits in scientific notation; `.` as decimal point
/// regardless of locale (Rust formatting never consults it).
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

/// Git blob hash (`git hash-object`) of the text.
pub fn git_blob_sha1(text: &str) -> String {
    let mut h = Sha1::new();
    h.update(format!("blob {}\0", text.len()).as_bytes());
    h.update(text.as_bytes());
    h.finalize().iter().fold(String::with_capacity(40), |mut s, b| {
        let _ = write!(s, "{b:02x}");
        s
    })
}

/// Error text made safe for a single CSV field.
fn field(text: &str) -> String {
    text.replace([',', '\n', '\r'], ";")
}

/// One data line; a failed point keeps its axis value, NaN elsewhere and
/// the error in `flags`.
pub fn csv_row(row: &SweepRow) -> String {
    match &row.result {
        Ok(r) => {
            let mut cols = vec![
                num(row.axis_value),
                num(r.t_solve),
                num(r.t_paper),
                num(r.t1),
                num(r.t2),
            ];
            cols.extend(r.amplitudes.iter().map(|&b| num(b)));
            cols.push(num(r.residual));
            cols.push(r.flags.to_string());
            cols.join(",")
        }
        Err(e) => {
            let mut cols = vec![num(row.axis_value)];
            cols.extend(std::iter::repeat_n(num(f64::NAN), 10));
            cols.push(format!("error: {}", field(&e.to_string())));
            cols.join(",")
        }
    }
}

/// Shared `#` lines: command, every parameter, resolved α, mass zero, hash.
pub fn metadata(command: &str, config: &RunConfig, alpha_line: &str) -> Vec<String> {
    let rendered = config.render();
    let mut lines = vec![format!("# tripdm {command}")];
    lines.extend(rendered.lines().map(|l| format!("# {l}")));
    lines.push(format!("# resolved alpha_eV_per_nm = {alpha_line}"));
    let x_star = config.mass().mass_zero();
    lines.push(match x_star {
        Some(x) => format!("# mass_zero_x_nm = {}", num(x)),
        None => "# mass_zero_x_nm = none".to_string(),
    });
    lines.push(format!("# config_sha1 = {}", git_blob_sha1(&rendered)));
    lines
}

/// The α echo line of the sweep commands.
pub fn sweep_alpha_line(config: &RunConfig) -> String {
    match config.alpha {
        Alpha::Auto => format!(
            "{} (auto: V0/a, re-derived at every point of a V0 or a sweep)",
            num(config.resolved_alpha())
        ),
        Alpha::Value(v) => num(v),
    }
}
