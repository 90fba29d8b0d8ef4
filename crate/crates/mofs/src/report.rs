//! Human-readable reports for `verify` and `analyze`.

use std::fmt::Write as _;

use mofs_core::maximality::{detect_full_relation, parity_matrix_uniform, parity_report, Verdict};
use mofs_core::verify::{completeness_structure, upper_bound};
use mofs_core::{BitMatrix, IntMatrix, MofsSet};

pub fn bound_line(set: &MofsSet) -> String {
    match upper_bound(set.params()) {
        Ok(b) => format!(
            "bound {}{}, t = {} {}",
            b.value,
            if b.exact { " (exact)" } else { " (floor)" },
            set.len(),
            if set.len() as u64 <= b.value {
                "within bound"
            } else {
                "EXCEEDS BOUND"
            }
        ),
        Err(e) => format!("bound: {e}"),
    }
}

pub fn verify_summary(set: &MofsSet) -> String {
    format!(
        "valid: {} squares of type {}; {}\n",
        set.len(),
        set.params(),
        bound_line(set)
    )
}

fn push_bits(out: &mut String, bits: &BitMatrix) {
    for row in bits.to_rows() {
        out.push_str("    ");
        for b in row {
            out.push(if b == 1 { '1' } else { '0' });
        }
        out.push('\n');
    }
}

fn push_ints(out: &mut String, m: &IntMatrix) {
    let width = m.iter().map(|v| v.to_string().len()).max().unwrap_or(1);
    for row in m.to_rows() {
        out.push_str("   ");
        for v in row {
            let _ = write!(out, " {v:>width$}");
        }
        out.push('\n');
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Structure report, parity matrices for each uniform symbol choice, and the
/// maximality verdict with its source.
pub fn analyze(set: &MofsSet, verdict: &Verdict) -> String {
    let p = set.params();
    let (t, m, l) = (set.len() as i64, p.m() as i64, p.lambda() as i64);
    let mut out = String::new();
    let _ = writeln!(out, "type {p}, t = {t}");
    let _ = writeln!(out, "{}", bound_line(set));

    match completeness_structure(set) {
        Ok(r) => {
            let _ = writeln!(out, "complete: {}", yes(r.is_complete));
            let _ = writeln!(out, "T (squares relabeled so the top-left cell is 1):");
            push_ints(&mut out, &r.t_matrix);
            let _ = writeln!(
                out,
                "  T.J = {} (expected {})",
                r.sum_entries,
                t * (m - 1) * m * l * l
            );
            let _ = writeln!(
                out,
                "  T.T = {} (expected {})",
                r.sum_squares,
                t * (m - 1) * l * l * (t * (m - 1) + 1)
            );
            if r.is_complete {
                let _ = writeln!(
                    out,
                    "  corner 0, border {}, interior {}: {}",
                    l * (m * l - 1),
                    l * (m * l - 2),
                    yes(r.structure_matches)
                );
            }
        }
        Err(e) => {
            let _ = writeln!(out, "structure: {e}");
        }
    }

    for a in p.symbols() {
        let pm = parity_matrix_uniform(set, a).expect("symbol in range");
        let _ = writeln!(out, "parity matrix, symbol {a} in every square:");
        push_bits(&mut out, pm.bits());
        match detect_full_relation(&pm) {
            Some(cert) => {
                let _ = writeln!(out, "  full relation: {}", cert);
                for (label, ok) in parity_report(&cert, p, set.len()).checklist() {
                    let _ = writeln!(out, "  [{}] {label}", if ok { "pass" } else { "FAIL" });
                }
            }
            None => {
                let _ = writeln!(out, "  full relation: none");
            }
        }
    }

    match verdict {
        Verdict::CertifiedMaximal { certificate, .. } => {
            let choice: Vec<String> = certificate
                .symbol_choice
                .iter()
                .map(u8::to_string)
                .collect();
            let _ = writeln!(
                out,
                "verdict: maximal (source: parity certificate, symbols [{}], {})",
                choice.join(" "),
                certificate
            );
        }
        Verdict::NoCertificate if p.lambda().is_multiple_of(2) => {
            let _ = writeln!(
                out,
                "verdict: no parity certificate (criterion needs odd lambda); maximality not decided"
            );
        }
        Verdict::NoCertificate => {
            let _ = writeln!(
                out,
                "verdict: no parity certificate; maximality not decided"
            );
        }
    }
    out
}
