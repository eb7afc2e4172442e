//! Selmer-group vanishing via the congruence ideal.
//!
//! `λ` divides the congruence ideal exactly when some other newform of the
//! same weight, level and character is congruent to `f` modulo `λ`. Given a
//! large image, vanishing of the Selmer group for the adjoint reduces to
//! `λ` avoiding that ideal, and the dual Selmer condition follows from the
//! same hypotheses by an Euler-characteristic count.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::image::ImageCertificate;
use crate::newform::{CoeffPrime, NewformRecord};
use crate::quadfield::{FieldElement, PrimeIdeal};
use crate::verdict::Status;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "primes", rename_all = "kebab-case")]
pub enum Support {
    /// Every common eigenvalue agrees, so every `λ` is congruent.
    All,
    Finite(BTreeSet<CoeffPrime>),
}

impl Support {
    pub fn contains(&self, lambda: &CoeffPrime) -> bool {
        match self {
            Support::All => true,
            Support::Finite(s) => s.contains(lambda),
        }
    }
}

/// Table-bounded congruence data between `f` and one companion `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceReport {
    pub companion: String,
    pub support: Support,
    /// `c(f,Q) − c(g,Q)` over common table primes `Q ∤ n`, in table order.
    pub differences: Vec<(PrimeIdeal, FieldElement)>,
}

impl CongruenceReport {
    /// A common prime whose eigenvalue difference is a `λ`-unit.
    pub fn witness_for(&self, f: &NewformRecord, lambda: &CoeffPrime) -> Option<PrimeIdeal> {
        self.differences
            .iter()
            .find(|(_, d)| !f.coeff_field.reduce(d, lambda).is_zero())
            .map(|(q, _)| *q)
    }
}

pub fn congruence_support(f: &NewformRecord, g: &NewformRecord, trial_bound: u64) -> Result<CongruenceReport, Error> {
    if f.coeff_field != g.coeff_field || f.base_field != g.base_field {
        return Err(Error::FieldMismatch(String::from("companion has different fields")));
    }
    let differences: Vec<(PrimeIdeal, FieldElement)> = f
        .eigenvalues()
        .iter()
        .filter(|row| f.level_valuation(&row.prime) == 0)
        .filter_map(|row| g.lookup_eigenvalue(&row.prime).map(|cg| (row.prime, row.value() - cg)))
        .collect();
    if differences.is_empty() {
        return Err(Error::NoCommonPrimes);
    }
    let kf = &f.coeff_field;
    let support = match differences.iter().find(|(_, d)| !d.is_zero()) {
        None => Support::All,
        Some((_, d)) => {
            let candidates = kf.factor_principal(d, trial_bound)?;
            Support::Finite(
                candidates
                    .into_iter()
                    .map(|(l, _)| l)
                    .filter(|l| differences.iter().all(|(_, e)| kf.reduce(e, l).is_zero()))
                    .collect(),
            )
        }
    };
    Ok(CongruenceReport {
        companion: String::from(g.label.as_deref().unwrap_or("<unnamed>")),
        support,
        differences,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelmerVerdict {
    pub status: Status,
    pub conditions: Vec<(String, bool)>,
    /// Companion name and the prime separating it from `f` modulo `λ`.
    pub non_congruence: Vec<(String, PrimeIdeal)>,
    pub note: String,
}

pub const DUAL_SELMER_NOTE: &str =
    "dual Selmer vanishing follows from the same conditions (equal dimensions by the Euler characteristic formula)";

/// The combined Selmer gate at `λ`.
pub fn selmer_gate(
    form: &NewformRecord,
    lambda: &CoeffPrime,
    companions: &[CongruenceReport],
    image: Option<&ImageCertificate>,
    non_induced: bool,
) -> SelmerVerdict {
    let ell = lambda.p;
    let not_level = !form.lambda_divides_level(lambda);
    let mut conditions = alloc::vec![
        (String::from("ℓ > 5"), ell > 5),
        (String::from("λ ∤ n"), not_level),
        (String::from("non-induced weight"), non_induced),
    ];
    let mut status = Status::Pass;
    if ell <= 5 {
        status = status.combine(Status::Fail(format!("ℓ > 5 violated (ℓ = {ell})")));
    }
    if !not_level {
        status = status.combine(Status::Fail(String::from("λ divides the level")));
    }
    if !non_induced {
        status = status.combine(Status::Inconclusive(String::from("weight not flagged non-induced")));
    }
    match image {
        None => status = status.combine(Status::Inconclusive(String::from("no image certificate"))),
        Some(cert) => {
            let s = cert.status();
            conditions.push((String::from("large image"), s.is_pass()));
            status = status.combine(match s {
                Status::Pass => Status::Pass,
                Status::Fail(r) => Status::Fail(format!("image not large: {r}")),
                Status::Inconclusive(r) => Status::Inconclusive(format!("image not certified: {r}")),
            });
        }
    }
    let mut non_congruence = Vec::new();
    for report in companions {
        if report.support.contains(lambda) {
            conditions.push((format!("λ ∤ congruence ideal ({})", report.companion), false));
            status = status.combine(Status::Fail(format!(
                "λ is congruent to companion {} on the table",
                report.companion
            )));
        } else if let Some(q) = report.witness_for(form, lambda) {
            conditions.push((format!("λ ∤ congruence ideal ({})", report.companion), true));
            non_congruence.push((report.companion.clone(), q));
        }
    }
    SelmerVerdict {
        status,
        conditions,
        non_congruence,
        note: String::from(DUAL_SELMER_NOTE),
    }
}
