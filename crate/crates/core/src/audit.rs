//! Run every gate over a range of residue characteristics and assemble the
//! per-`λ` certificates into a report.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::arith::{self, DEFAULT_TRIAL_BOUND};
use crate::error::Error;
use crate::image::{
    certify_image, override_warnings, verify_image_certificate, ImageCertificate, ImageContext, InertConstExponent,
    Override,
};
use crate::local::{local_verdicts, verify_local, LocalVerdict};
use crate::newform::{CoeffPrime, FormSet, NewformRecord};
use crate::quadfield::FieldElement;
use crate::selmer::{congruence_support, selmer_gate, CongruenceReport, SelmerVerdict};
use crate::verdict::Status;

pub const DEFAULT_MULTIPLIERS: [u64; 4] = [1, 2, 4, 5];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditConfig {
    pub multipliers: Vec<u64>,
    pub inert_const_exponent: InertConstExponent,
    pub overrides: Vec<Override>,
    pub trial_bound: u64,
    /// `None` means: non-induced exactly when the weight components differ.
    pub non_induced: Option<bool>,
    /// A previously claimed threshold; every `λ ∤ n` at or above it that is
    /// not certified gets a discrepancy note.
    pub claimed_bound: Option<u64>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            multipliers: DEFAULT_MULTIPLIERS.to_vec(),
            inert_const_exponent: InertConstExponent::default(),
            overrides: Vec::new(),
            trial_bound: DEFAULT_TRIAL_BOUND,
            non_induced: None,
            claimed_bound: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "kebab-case")]
pub enum Overall {
    Unobstructed,
    Excluded(String),
    Inconclusive(String),
}

impl Overall {
    pub fn is_unobstructed(&self) -> bool {
        matches!(self, Overall::Unobstructed)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaAudit {
    pub lambda: CoeffPrime,
    pub ell: u64,
    pub divides_level: bool,
    pub image: ImageCertificate,
    pub local: Vec<LocalVerdict>,
    pub selmer: SelmerVerdict,
    pub overall: Overall,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormIdentity {
    pub label: Option<String>,
    pub base_field_d: i64,
    pub coeff_field_d: i64,
    pub weight: [i64; 2],
    pub level: FieldElement,
    pub level_norm: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub form: FormIdentity,
    pub ell_range: (u64, u64),
    pub config: AuditConfig,
    pub image_context: ImageContext,
    pub congruences: Vec<CongruenceReport>,
    pub per_lambda: Vec<LambdaAudit>,
    /// Smallest prime `ℓ0` in range with every `λ ∤ n` over every prime in
    /// `[ℓ0, ℓ_max]` unobstructed; only claimed up to `verified_up_to`.
    pub bound_b: Option<u64>,
    pub verified_up_to: u64,
    pub discrepancies: Vec<String>,
    pub warnings: Vec<String>,
}

impl AuditReport {
    pub fn has_inconclusive(&self) -> bool {
        self.per_lambda
            .iter()
            .any(|a| matches!(a.overall, Overall::Inconclusive(_)))
    }

    pub fn lambda(&self, lambda: &CoeffPrime) -> Option<&LambdaAudit> {
        self.per_lambda.iter().find(|a| a.lambda == *lambda)
    }
}

fn non_induced(form: &NewformRecord, config: &AuditConfig) -> bool {
    config.non_induced.unwrap_or_else(|| form.default_non_induced())
}

fn overall(image: &ImageCertificate, local: &[LocalVerdict], selmer: &SelmerVerdict) -> Overall {
    let mut status = Status::Pass;
    for v in local {
        status = status.combine(prefix(&v.status, &format!("local at {}", v.place)));
    }
    status = status.combine(prefix(&image.status(), "image"));
    status = status.combine(prefix(&selmer.status, "selmer"));
    match status {
        Status::Pass => Overall::Unobstructed,
        Status::Fail(r) => Overall::Excluded(r),
        Status::Inconclusive(r) => Overall::Inconclusive(r),
    }
}

fn prefix(s: &Status, gate: &str) -> Status {
    match s {
        Status::Pass => Status::Pass,
        Status::Fail(r) => Status::Fail(format!("{gate}: {r}")),
        Status::Inconclusive(r) => Status::Inconclusive(format!("{gate}: {r}")),
    }
}

struct Shared<'a> {
    forms: &'a FormSet,
    config: &'a AuditConfig,
    ctx: &'a ImageContext,
    congruences: &'a [CongruenceReport],
    congruence_gaps: &'a [String],
}

fn audit_lambda(s: &Shared<'_>, lambda: &CoeffPrime) -> LambdaAudit {
    let form = &s.forms.primary;
    let image = certify_image(form, s.ctx, lambda, &s.config.overrides);
    let local = local_verdicts(s.forms, lambda, &s.config.overrides);
    let mut selmer = selmer_gate(form, lambda, s.congruences, Some(&image), non_induced(form, s.config));
    for gap in s.congruence_gaps {
        selmer.status = selmer
            .status
            .clone()
            .combine(Status::Inconclusive(format!("congruence support unknown: {gap}")));
    }
    let overall = overall(&image, &local, &selmer);
    LambdaAudit {
        lambda: *lambda,
        ell: lambda.p,
        divides_level: form.lambda_divides_level(lambda),
        image,
        local,
        selmer,
        overall,
    }
}

/// Audit every `λ` of `K_f` over every prime `ℓ ∈ [lmin, lmax]`.
pub fn run_audit(forms: &FormSet, config: &AuditConfig, lmin: u64, lmax: u64) -> Result<AuditReport, Error> {
    forms.validate()?;
    let form = &forms.primary;
    let ctx = ImageContext::new(
        form,
        &config.multipliers,
        config.inert_const_exponent,
        config.trial_bound,
    );
    let mut warnings = override_warnings(form, &config.overrides);
    if let Err(e) = &ctx.exceptional {
        warnings.push(format!("exclusion set unavailable: {e}"));
    }
    if let Some(why) = &ctx.dihedral.unsupported {
        warnings.push(format!("quadratic extensions unavailable: {why}"));
    }
    let mut congruences = Vec::new();
    let mut gaps = Vec::new();
    for g in &forms.companions {
        match congruence_support(form, g, config.trial_bound) {
            Ok(r) => congruences.push(r),
            Err(e @ Error::FactorizationIncomplete { .. }) => {
                let msg = format!("{}: {e}", g.label.as_deref().unwrap_or("<unnamed>"));
                warnings.push(format!("congruence support unknown for {msg}"));
                gaps.push(msg);
            }
            Err(e) => return Err(e),
        }
    }
    let shared = Shared {
        forms,
        config,
        ctx: &ctx,
        congruences: &congruences,
        congruence_gaps: &gaps,
    };
    let mut per_lambda = Vec::new();
    for ell in arith::primes_in(lmin, lmax) {
        for lambda in form.coeff_field.primes_over(ell)? {
            per_lambda.push(audit_lambda(&shared, &lambda));
        }
    }
    let bound_b = bound_b(&per_lambda, lmin, lmax);
    let discrepancies = discrepancies(form, config, &per_lambda);
    Ok(AuditReport {
        form: FormIdentity {
            label: form.label.clone(),
            base_field_d: form.base_field.d(),
            coeff_field_d: form.coeff_field.d(),
            weight: form.weight,
            level: form.level.clone(),
            level_norm: form.level_norm(),
        },
        ell_range: (lmin, lmax),
        config: config.clone(),
        image_context: ctx,
        congruences,
        per_lambda,
        bound_b,
        verified_up_to: lmax,
        discrepancies,
        warnings,
    })
}

/// The smallest prime `ℓ0` in range such that every `λ ∤ n` over every prime
/// in `[ℓ0, lmax]` is unobstructed.
pub fn bound_b(per_lambda: &[LambdaAudit], lmin: u64, lmax: u64) -> Option<u64> {
    let mut best = None;
    for ell in arith::primes_in(lmin, lmax).into_iter().rev() {
        let good = per_lambda
            .iter()
            .filter(|a| a.ell == ell && !a.divides_level)
            .all(|a| a.overall.is_unobstructed());
        if !good {
            break;
        }
        best = Some(ell);
    }
    best
}

/// Notes for `λ ∤ n` left uncertified although `ℓ` clears every global
/// threshold (`ℓ > 5`, `ℓ > 2k0`, unramified, `ℓ ≠ 2k_i − 1`), or lying at
/// or above a claimed bound.
fn discrepancies(form: &NewformRecord, config: &AuditConfig, per_lambda: &[LambdaAudit]) -> Vec<String> {
    let k0 = form.k0();
    let disc = form.base_field.discriminant();
    per_lambda
        .iter()
        .filter(|a| !a.divides_level && !a.overall.is_unobstructed())
        .filter_map(|a| {
            let ell = a.ell;
            let clears = ell > 5
                && ell as i64 > 2 * k0
                && disc.rem_euclid(ell as i64) != 0
                && form.weight.iter().all(|&k| (2 * k - 1) as u64 != ell);
            let claimed = config.claimed_bound.filter(|&b| ell >= b);
            let reason = match &a.overall {
                Overall::Excluded(r) | Overall::Inconclusive(r) => r.as_str(),
                Overall::Unobstructed => "",
            };
            if let Some(b) = claimed {
                Some(format!(
                    "λ = {} over ℓ = {ell} is not certified ({reason}), contrary to the claimed bound ℓ ≥ {b}",
                    a.lambda
                ))
            } else if clears {
                Some(format!(
                    "λ = {} over ℓ = {ell} is not certified ({reason}), although ℓ > 5, ℓ > 2k0 = {}, ℓ is unramified and λ ∤ n",
                    a.lambda,
                    2 * k0
                ))
            } else {
                None
            }
        })
        .collect()
}

/// Re-run every recorded certificate against the inputs. Returns a list of
/// problems; empty means the report re-verifies.
pub fn recheck(report: &AuditReport, forms: &FormSet) -> Vec<String> {
    let form = &forms.primary;
    let config = &report.config;
    let ctx = &report.image_context;
    let mut problems = Vec::new();
    let fresh_ctx = ImageContext::new(
        form,
        &config.multipliers,
        config.inert_const_exponent,
        config.trial_bound,
    );
    if fresh_ctx != *ctx {
        problems.push(String::from("image context differs from a fresh computation"));
    }
    let mut expected = Vec::new();
    for ell in arith::primes_in(report.ell_range.0, report.ell_range.1) {
        match form.coeff_field.primes_over(ell) {
            Ok(ls) => expected.extend(ls),
            Err(e) => problems.push(format!("ℓ = {ell}: {e}")),
        }
    }
    let recorded: Vec<CoeffPrime> = report.per_lambda.iter().map(|a| a.lambda).collect();
    if recorded != expected {
        problems.push(String::from("per-λ list does not match the primes in range"));
    }
    for a in &report.per_lambda {
        let l = &a.lambda;
        if !verify_image_certificate(form, ctx, &a.image, &config.overrides) {
            problems.push(format!("image certificate for {l} does not re-verify"));
        }
        if !verify_local(forms, l, &a.local, &config.overrides) {
            problems.push(format!("local verdicts for {l} do not re-verify"));
        }
        let selmer = selmer_gate(form, l, &report.congruences, Some(&a.image), non_induced(form, config));
        if selmer.status != a.selmer.status && report.congruences.len() == forms.companions.len() {
            problems.push(format!("selmer verdict for {l} does not re-verify"));
        }
        if overall(&a.image, &a.local, &a.selmer) != a.overall {
            problems.push(format!("overall verdict for {l} is inconsistent with its gates"));
        }
        if a.overall.is_unobstructed() && !(a.image.status().is_pass() && a.selmer.status.is_pass()) {
            problems.push(format!("{l} marked unobstructed without passing gates"));
        }
    }
    if bound_b(&report.per_lambda, report.ell_range.0, report.ell_range.1) != report.bound_b {
        problems.push(String::from("bound B inconsistent with per-λ verdicts"));
    }
    problems
}
