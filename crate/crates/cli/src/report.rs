//! Rendering of audit reports.

use std::fmt::Write as _;

use hmfdef_core::audit::{AuditReport, Overall};
use hmfdef_core::image::{ImageCertificate, Irreducibility, NonDihedral, NonExceptional};
use hmfdef_core::local::{LocalGate, LocalVerdict, LocalWitness};
use hmfdef_core::selmer::SelmerVerdict;
use hmfdef_core::Status;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

pub fn emit_report(report: &AuditReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(report),
    }
}

pub fn parse_report_json(text: &str) -> serde_json::Result<AuditReport> {
    serde_json::from_str(text)
}

fn status_word(s: &Status) -> String {
    match s {
        Status::Pass => "pass".into(),
        Status::Fail(r) => format!("fail: {r}"),
        Status::Inconclusive(r) => format!("inconclusive: {r}"),
    }
}

fn overall_word(o: &Overall) -> String {
    match o {
        Overall::Unobstructed => "unobstructed".into(),
        Overall::Excluded(r) => format!("excluded ({r})"),
        Overall::Inconclusive(r) => format!("inconclusive ({r})"),
    }
}

fn image_lines(out: &mut String, cert: &ImageCertificate) {
    let irreducible = match &cert.irreducible_by {
        Irreducibility::NotInExclusionSet => "not in exclusion set".to_string(),
        Irreducibility::Witness(w) => format!(
            "witness {}: X² − {}X + {}, discriminant {} nonsquare",
            w.prime, w.trace, w.constant, w.discriminant
        ),
        Irreducibility::NoWitness => "no witness".to_string(),
        Irreducibility::Unavailable(why) => format!("exclusion set unavailable: {why}"),
    };
    let _ = writeln!(
        out,
        "  image/irreducible: {} [{irreducible}]",
        status_word(&cert.irreducible_status())
    );
    let dihedral = match &cert.non_dihedral_by {
        NonDihedral::Certified(ws) if ws.is_empty() => "no quadratic extension to exclude".to_string(),
        NonDihedral::Certified(ws) => ws
            .iter()
            .map(|w| format!("δ = {} inert at {}", w.delta, w.prime))
            .collect::<Vec<_>>()
            .join("; "),
        NonDihedral::Bad(_) | NonDihedral::Inconclusive(_) => "-".to_string(),
    };
    let _ = writeln!(
        out,
        "  image/non-dihedral: {} [{dihedral}]",
        status_word(&cert.non_dihedral_status())
    );
    let exceptional = match &cert.non_exceptional_by {
        NonExceptional::WeightBound(b) => format!("weight bound ℓ ≥ {b}"),
        NonExceptional::Override(note) => format!("override: {note}"),
        NonExceptional::Inconclusive(_) => "-".to_string(),
    };
    let _ = writeln!(
        out,
        "  image/non-exceptional: {} [{exceptional}]",
        status_word(&cert.non_exceptional_status())
    );
}

fn local_line(out: &mut String, v: &LocalVerdict) {
    let gate = match v.gate {
        LocalGate::Archimedean => "archimedean",
        LocalGate::EllPlace => "ℓ-place",
        LocalGate::Special => "special",
        LocalGate::PrincipalSeries => "principal-series",
    };
    let witnesses: Vec<String> = v
        .witnesses
        .iter()
        .filter_map(|w| match w {
            LocalWitness::Condition { name, holds: true } => Some(name.clone()),
            LocalWitness::Condition { .. } => None,
            LocalWitness::Coprime { divisor, .. } => Some(format!("ℓ ∤ {divisor}")),
            LocalWitness::NonCongruence { form, prime } => Some(format!("separated from {form} at {prime}")),
            LocalWitness::Override { note } => Some(format!("override: {note}")),
        })
        .collect();
    let _ = writeln!(
        out,
        "  local {} ({gate}): {} [{}]",
        v.place,
        status_word(&v.status),
        witnesses.join("; ")
    );
}

fn selmer_line(out: &mut String, s: &SelmerVerdict) {
    let mut detail: Vec<String> = s
        .non_congruence
        .iter()
        .map(|(g, q)| format!("not congruent to {g} at {q}"))
        .collect();
    detail.push(s.note.clone());
    let _ = writeln!(out, "  selmer: {} [{}]", status_word(&s.status), detail.join("; "));
}

fn render_text(report: &AuditReport) -> String {
    let mut out = String::new();
    let f = &report.form;
    let _ = writeln!(
        out,
        "form {}: F = Q(√{}), K_f = Q(√{}), weight ({}, {}), level ({}) of norm {}",
        f.label.as_deref().unwrap_or("<unnamed>"),
        f.base_field_d,
        f.coeff_field_d,
        f.weight[0],
        f.weight[1],
        f.level,
        f.level_norm
    );
    let _ = writeln!(out, "ℓ range: [{}, {}]", report.ell_range.0, report.ell_range.1);
    match &report.image_context.exceptional {
        Ok(set) => {
            let primes: Vec<String> = set.rational_primes.iter().map(u64::to_string).collect();
            let _ = writeln!(
                out,
                "exclusion set: unit {} of order {} mod level, exponents {:?}, primes over {{{}}}",
                set.unit,
                set.level_order,
                set.unit_powers.iter().map(|u| u.exponent).collect::<Vec<_>>(),
                primes.join(", ")
            );
        }
        Err(e) => {
            let _ = writeln!(out, "exclusion set: unavailable ({e})");
        }
    }
    let deltas: Vec<String> = report
        .image_context
        .dihedral
        .extensions
        .iter()
        .map(|e| e.delta.to_string())
        .collect();
    let _ = writeln!(out, "quadratic extensions: δ ∈ {{{}}}", deltas.join(", "));
    let _ = writeln!(
        out,
        "exceptional-image weight bound: ℓ ≥ {}",
        report.image_context.weight_bound
    );
    for c in &report.congruences {
        let support = match &c.support {
            hmfdef_core::selmer::Support::All => "all λ".to_string(),
            hmfdef_core::selmer::Support::Finite(s) => s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "),
        };
        let _ = writeln!(
            out,
            "congruence support with {} (table-bounded): {{{support}}}",
            c.companion
        );
    }
    out.push('\n');
    for a in &report.per_lambda {
        let level = if a.divides_level { ", divides level" } else { "" };
        let _ = writeln!(
            out,
            "λ = {} (ℓ = {}{level}): {}",
            a.lambda,
            a.ell,
            overall_word(&a.overall)
        );
        image_lines(&mut out, &a.image);
        for v in &a.local {
            local_line(&mut out, v);
        }
        selmer_line(&mut out, &a.selmer);
    }
    out.push('\n');
    match report.bound_b {
        Some(b) => {
            let _ = writeln!(
                out,
                "bound B = {b}: every λ ∤ n over ℓ ∈ [{b}, {}] is unobstructed (verified up to {})",
                report.ell_range.1, report.verified_up_to
            );
        }
        None => {
            let _ = writeln!(out, "bound B: none within the audited range");
        }
    }
    if !report.discrepancies.is_empty() {
        let _ = writeln!(out, "\ndiscrepancies:");
        for d in &report.discrepancies {
            let _ = writeln!(out, "  - {d}");
        }
    }
    if !report.warnings.is_empty() {
        let _ = writeln!(out, "\nwarnings:");
        for w in &report.warnings {
            let _ = writeln!(out, "  - {w}");
        }
    }
    out
}
