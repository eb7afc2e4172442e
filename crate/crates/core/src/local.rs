//! Per-place gates for the vanishing of `H⁰(G_v, ε̄ ⊗ ad⁰ρ̄)` at the places
//! in `S` (those dividing the level, those over `ℓ`, and the real places).

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::image::{find_override, Override, OverrideKind};
use crate::newform::{CoeffPrime, FormSet, NewformRecord};
use crate::quadfield::PrimeIdeal;
use crate::verdict::Status;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Place {
    Finite {
        prime: PrimeIdeal,
    },
    /// Index of the real embedding.
    Archimedean {
        index: u8,
    },
}

impl core::fmt::Display for Place {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Place::Finite { prime } => write!(f, "{prime}"),
            Place::Archimedean { index } => write!(f, "∞{index}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LocalGate {
    Archimedean,
    EllPlace,
    Special,
    PrincipalSeries,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LocalWitness {
    Condition {
        name: String,
        holds: bool,
    },
    /// `ℓ` does not divide `value`.
    Coprime {
        divisor: String,
        value: String,
    },
    /// `c(f,Q) ≢ c(g,Q) mod λ`.
    NonCongruence {
        form: String,
        prime: PrimeIdeal,
    },
    Override {
        note: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalVerdict {
    pub place: Place,
    pub lambda: CoeffPrime,
    pub gate: LocalGate,
    pub status: Status,
    pub witnesses: Vec<LocalWitness>,
}

fn condition(name: impl Into<String>, holds: bool) -> LocalWitness {
    LocalWitness::Condition {
        name: name.into(),
        holds,
    }
}

/// Place `v | ℓ`: needs `ℓ > 2k0`, `ℓ` unramified in `F`, `v ∤ n`, and some
/// weight component above 2. The stricter `ℓ ∤ N(n)` is recorded but does
/// not decide the verdict.
pub fn ell_place_gate(form: &NewformRecord, lambda: &CoeffPrime, v: &PrimeIdeal) -> LocalVerdict {
    let ell = lambda.p;
    let k0 = form.k0();
    let checks = [
        (format!("ℓ > 2k0 = {}", 2 * k0), ell as i64 > 2 * k0),
        (
            format!("ℓ unramified in F (ℓ ∤ {})", form.base_field.discriminant()),
            form.base_field.discriminant().rem_euclid(ell as i64) != 0,
        ),
        (format!("{v} ∤ n"), form.level_valuation(v) == 0),
        (String::from("some k_i > 2"), form.weight.iter().any(|&k| k > 2)),
    ];
    let violated: Vec<&str> = checks.iter().filter(|(_, h)| !h).map(|(n, _)| n.as_str()).collect();
    let status = if violated.is_empty() {
        Status::Pass
    } else {
        Status::Fail(format!("violated: {}", violated.join("; ")))
    };
    let mut witnesses: Vec<LocalWitness> = checks.into_iter().map(|(n, h)| condition(n, h)).collect();
    witnesses.push(condition(
        format!("ℓ ∤ N(n) = {} (strict reading, informational)", form.level_norm()),
        !form.level_norm().is_multiple_of(ell),
    ));
    LocalVerdict {
        place: Place::Finite { prime: *v },
        lambda: *lambda,
        gate: LocalGate::EllPlace,
        status,
        witnesses,
    }
}

/// Place `v ∥ n` with trivial character, so `π_v` is special. Needs `ℓ ∤
/// 2q(q²−1)` for `q = N(v)` and, for every lower-level form of level
/// dividing `n/v`, a table prime `Q ∤ nℓ` separating it from `f` mod `λ`.
pub fn special_place_gate(
    form: &NewformRecord,
    lambda: &CoeffPrime,
    v: &PrimeIdeal,
    lower_level: &[NewformRecord],
) -> Result<LocalVerdict, crate::Error> {
    if form.level_valuation(v) != 1 {
        return Err(crate::Error::NotSpecialPlace(format!("{v}")));
    }
    let ell = lambda.p as u128;
    let q = v.norm();
    let factors = [
        (String::from("2"), 2u128),
        (String::from("q"), q),
        (String::from("q − 1"), q - 1),
        (String::from("q + 1"), q + 1),
    ];
    let mut witnesses = Vec::new();
    let product = format!("2q(q²−1) = 2·{q}·{}", q * q - 1);
    if let Some((name, value)) = factors.iter().find(|(_, x)| x % ell == 0) {
        return Ok(LocalVerdict {
            place: Place::Finite { prime: *v },
            lambda: *lambda,
            gate: LocalGate::Special,
            status: Status::Fail(format!("ℓ = {ell} divides {name} = {value}, so λ | {product}")),
            witnesses,
        });
    }
    witnesses.push(LocalWitness::Coprime {
        divisor: product,
        value: format!("{}", 2 * q * (q * q - 1)),
    });

    let f = &form.base_field;
    let kf = &form.coeff_field;
    let reduced_level = f.exact_div(
        &form.level,
        &f.principal_generator(v).expect("level primes are principal"),
    );
    let mut status = Status::Pass;
    for g in lower_level {
        if let Some(n_v) = &reduced_level {
            if !f.divides(&g.level, n_v) {
                continue;
            }
        }
        let name = String::from(g.label.as_deref().unwrap_or("<unnamed>"));
        let separating = form.eigenvalues().iter().find(|row| {
            let qp = &row.prime;
            form.level_valuation(qp) == 0
                && qp.p != lambda.p
                && g.lookup_eigenvalue(qp)
                    .is_some_and(|cg| !kf.reduce(&(row.value() - cg), lambda).is_zero())
        });
        match separating {
            Some(row) => witnesses.push(LocalWitness::NonCongruence {
                form: name,
                prime: row.prime,
            }),
            None => {
                status = status.combine(Status::Fail(format!(
                    "congruent mod λ to lower-level form {name} at every common table prime"
                )))
            }
        }
    }
    Ok(LocalVerdict {
        place: Place::Finite { prime: *v },
        lambda: *lambda,
        gate: LocalGate::Special,
        status,
        witnesses,
    })
}

/// Place `v | n` that is not special. No effective bound is available, so
/// only an override passes.
pub fn principal_series_place_gate(lambda: &CoeffPrime, v: &PrimeIdeal, overrides: &[Override]) -> LocalVerdict {
    let (status, witnesses) = match find_override(overrides, lambda, OverrideKind::PrincipalSeries) {
        Some(o) => (
            Status::Pass,
            alloc::vec![LocalWitness::Override { note: o.note.clone() }],
        ),
        None => (
            Status::Inconclusive(format!(
                "{v} is not special; vanishing holds for almost all λ but no override covers this one"
            )),
            Vec::new(),
        ),
    };
    LocalVerdict {
        place: Place::Finite { prime: *v },
        lambda: *lambda,
        gate: LocalGate::PrincipalSeries,
        status,
        witnesses,
    }
}

pub fn archimedean_gate(lambda: &CoeffPrime, index: u8) -> LocalVerdict {
    LocalVerdict {
        place: Place::Archimedean { index },
        lambda: *lambda,
        gate: LocalGate::Archimedean,
        status: Status::Pass,
        witnesses: alloc::vec![condition("vacuous", true)],
    }
}

/// Verdicts at every place of `S = {v | n} ∪ {v | ℓ} ∪ {v | ∞}`: level
/// places first, then places over `ℓ`, then the real places.
pub fn local_verdicts(forms: &FormSet, lambda: &CoeffPrime, overrides: &[Override]) -> Vec<LocalVerdict> {
    let form = &forms.primary;
    let mut out = Vec::new();
    for (v, _) in form.level_factors() {
        let verdict = special_place_gate(form, lambda, v, &forms.lower_level)
            .unwrap_or_else(|_| principal_series_place_gate(lambda, v, overrides));
        out.push(verdict);
    }
    let over_ell = form.base_field.primes_over(lambda.p).unwrap_or_default();
    for v in over_ell.iter().filter(|v| form.level_valuation(v) == 0) {
        out.push(ell_place_gate(form, lambda, v));
    }
    out.push(archimedean_gate(lambda, 0));
    out.push(archimedean_gate(lambda, 1));
    out
}

/// Re-run the gates and compare with recorded verdicts, and re-check each
/// non-congruence witness.
pub fn verify_local(forms: &FormSet, lambda: &CoeffPrime, recorded: &[LocalVerdict], overrides: &[Override]) -> bool {
    let form = &forms.primary;
    let kf = &form.coeff_field;
    let witnesses_hold = recorded.iter().flat_map(|v| &v.witnesses).all(|w| match w {
        LocalWitness::NonCongruence { form: name, prime } => forms
            .lower_level
            .iter()
            .filter(|g| g.label.as_deref().unwrap_or("<unnamed>") == name)
            .any(|g| match (form.lookup_eigenvalue(prime), g.lookup_eigenvalue(prime)) {
                (Some(cf), Some(cg)) => !kf.reduce(&(cf - cg), lambda).is_zero(),
                _ => false,
            }),
        _ => true,
    });
    witnesses_hold && local_verdicts(forms, lambda, overrides) == recorded
}
