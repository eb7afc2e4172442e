//! Large-image certification for the residual representation at `λ`.
//!
//! Three sub-certificates, each re-checkable from the witnesses it records:
//!
//! * irreducibility, either because `λ` avoids the exclusion set cut out by
//!   the norms of `u^{me} − 1` (with `u` the fundamental unit and `e` its
//!   order modulo the level), or through a table prime whose Frobenius
//!   characteristic polynomial is irreducible over `k_λ`;
//! * non-dihedral projective image, by exhibiting for every quadratic
//!   extension `F(√δ)` unramified outside the level an inert prime whose
//!   eigenvalue is a `λ`-unit;
//! * no exceptional projective image (`A4`, `S4`, `A5`), from the weight
//!   bound `(ℓ − 1)·d > 5·Σ(k_i − 1)` or a recorded manual override.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{self, pow_mod};
use crate::error::Error;
use crate::newform::{CoeffPrime, NewformRecord};
use crate::quadfield::{FieldElement, PrimeIdeal, QuadField};
use crate::residue::FqElem;
use crate::verdict::Status;

/// Exponent of `p` in the constant term of the characteristic polynomial at
/// an inert prime.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InertConstExponent {
    #[default]
    K0,
    K0Minus1,
    TwoK0Minus2,
}

impl InertConstExponent {
    pub fn exponent(self, k0: i64) -> u32 {
        let e = match self {
            InertConstExponent::K0 => k0,
            InertConstExponent::K0Minus1 => k0 - 1,
            InertConstExponent::TwoK0Minus2 => 2 * k0 - 2,
        };
        e as u32
    }
}

/// `X² − trace·X + constant` for Frobenius at a prime of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharPoly {
    pub prime: PrimeIdeal,
    pub trace: FieldElement,
    pub constant: BigInt,
}

/// Characteristic polynomial of Frobenius at `P`: constant `p^{k0−1}` for
/// degree-one `P`, `p^{exp}` for inert `P` with `exp` chosen by `inert`.
pub fn charpoly_at(form: &NewformRecord, prime: &PrimeIdeal, inert: InertConstExponent) -> Result<CharPoly, Error> {
    if prime.ramified {
        return Err(Error::RamifiedPrime(format!("{prime}")));
    }
    let trace = form
        .lookup_eigenvalue(prime)
        .ok_or_else(|| Error::NoData(format!("{prime}")))?
        .clone();
    let e = constant_exponent(form, prime, inert);
    Ok(CharPoly {
        prime: *prime,
        trace,
        constant: num_traits::pow(BigInt::from(prime.p), e as usize),
    })
}

fn constant_exponent(form: &NewformRecord, prime: &PrimeIdeal, inert: InertConstExponent) -> u32 {
    if prime.degree == 2 {
        inert.exponent(form.k0())
    } else {
        (form.k0() - 1) as u32
    }
}

/// A characteristic polynomial reduced into `k_λ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedCharPoly {
    pub prime: PrimeIdeal,
    pub trace: FqElem,
    pub constant: FqElem,
    pub discriminant: FqElem,
    pub irreducible: bool,
}

/// Reduce the characteristic polynomial at `P` modulo `λ`.
pub fn reduce_charpoly(
    form: &NewformRecord,
    lambda: &CoeffPrime,
    prime: &PrimeIdeal,
    inert: InertConstExponent,
) -> Result<ReducedCharPoly, Error> {
    let poly = charpoly_at(form, prime, inert)?;
    let kf = &form.coeff_field;
    let k = kf.residue_field(lambda);
    let trace = kf.reduce(&poly.trace, lambda);
    let e = constant_exponent(form, prime, inert);
    let constant = k.from_u64(pow_mod(prime.p, e as u128, lambda.p));
    let discriminant = k.sub(k.mul(trace, trace), k.mul(k.from_u64(4), constant));
    let irreducible = k.quad_poly_irreducible(trace, constant)?;
    Ok(ReducedCharPoly {
        prime: *prime,
        trace,
        constant,
        discriminant,
        irreducible,
    })
}

/// Whether `P` may serve as a Frobenius witness at `λ`: `p ∤ ℓ·N(n)·disc(F)`.
pub fn witness_admissible(form: &NewformRecord, lambda: &CoeffPrime, prime: &PrimeIdeal) -> bool {
    let p = prime.p;
    p != lambda.p && !form.level_norm().is_multiple_of(p) && form.base_field.discriminant().rem_euclid(p as i64) != 0
}

/// First table prime (in table order) whose characteristic polynomial is
/// irreducible over `k_λ`.
pub fn witness_irreducible(
    form: &NewformRecord,
    lambda: &CoeffPrime,
    inert: InertConstExponent,
) -> Option<ReducedCharPoly> {
    witness_irreducible_where(form, lambda, inert, |_| true)
}

/// As [`witness_irreducible`], searching only table primes accepted by `accept`.
pub fn witness_irreducible_where(
    form: &NewformRecord,
    lambda: &CoeffPrime,
    inert: InertConstExponent,
    accept: impl Fn(&PrimeIdeal) -> bool,
) -> Option<ReducedCharPoly> {
    if lambda.p == 2 {
        return None;
    }
    form.eigenvalues()
        .iter()
        .map(|row| row.prime)
        .filter(|q| witness_admissible(form, lambda, q) && accept(q))
        .filter_map(|q| reduce_charpoly(form, lambda, &q, inert).ok())
        .find(|w| w.irreducible)
}

/// `N(u^{me} − 1)` and the primes of `F` dividing `u^{me} − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPowerFactor {
    pub exponent: u64,
    pub element: FieldElement,
    pub norm: String,
    pub factors: Vec<(PrimeIdeal, u32)>,
}

/// Primes `λ` of `K_f` at which irreducibility is not certified by the
/// unit-power argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalSet {
    pub unit: FieldElement,
    /// Order of the unit modulo the level.
    pub level_order: u64,
    pub multipliers: Vec<u64>,
    pub unit_powers: Vec<UnitPowerFactor>,
    pub rational_primes: Vec<u64>,
    pub lambdas: BTreeSet<CoeffPrime>,
}

impl ExceptionalSet {
    pub fn contains(&self, lambda: &CoeffPrime) -> bool {
        self.lambdas.contains(lambda)
    }
}

/// The primes of `K_f` lying over any rational prime dividing
/// `N(u^{m·e} − 1)` for `m` in `multipliers`.
pub fn exceptional_set(form: &NewformRecord, multipliers: &[u64], trial_bound: u64) -> Result<ExceptionalSet, Error> {
    let f = &form.base_field;
    let unit = f.fundamental_unit();
    let e = f.order_mod_ideal(&unit, &form.level)?;
    let mut unit_powers = Vec::new();
    let mut rational = BTreeSet::new();
    for &m in multipliers {
        let x = &f.pow(&unit, m * e) - &FieldElement::one();
        let factors = f.factor_principal(&x, trial_bound)?;
        rational.extend(factors.iter().map(|(q, _)| q.p));
        unit_powers.push(UnitPowerFactor {
            exponent: m * e,
            norm: format!("{}", f.norm(&x)),
            element: x,
            factors,
        });
    }
    let mut lambdas = BTreeSet::new();
    for &p in &rational {
        lambdas.extend(form.coeff_field.primes_over(p)?);
    }
    Ok(ExceptionalSet {
        unit,
        level_order: e,
        multipliers: multipliers.to_vec(),
        unit_powers,
        rational_primes: rational.into_iter().collect(),
        lambdas,
    })
}

fn is_square_mod_4(field: &QuadField, delta: &FieldElement) -> bool {
    let four = BigInt::from(4);
    (0..4).any(|a| {
        (0..4).any(|b| {
            let x = FieldElement::new(a, b);
            let diff = &field.mul(&x, &x) - delta;
            (&diff.a % &four).is_zero() && (&diff.b % &four).is_zero()
        })
    })
}

/// Representatives `δ` of the nontrivial classes in `⟨−1, ε, π_i⟩ / squares`
/// (with `π_i` generating the primes dividing the level) for which `F(√δ)` is
/// unramified at every finite place outside the level. Real places may
/// ramify.
///
/// Requires narrow class number one and `2` inert in `F`.
pub fn enumerate_quadratic_exts(field: &QuadField, level: &FieldElement) -> Result<Vec<FieldElement>, Error> {
    if field.d().rem_euclid(8) != 5 {
        return Err(Error::UnsupportedField(format!("2 is not inert in Q(√{})", field.d())));
    }
    if !field.narrow_class_number_is_one() {
        return Err(Error::UnsupportedField(format!(
            "Q(√{}) does not have narrow class number one",
            field.d()
        )));
    }
    let level_primes = field.factor_principal(level, arith::DEFAULT_TRIAL_BOUND)?;
    let mut gens = alloc::vec![FieldElement::from_int(-1), field.fundamental_unit()];
    for (prime, _) in &level_primes {
        let g = field
            .principal_generator(prime)
            .ok_or_else(|| Error::UnsupportedField(format!("{prime} is not principal")))?;
        gens.push(g);
    }
    let two_divides_level = level_primes.iter().any(|(q, _)| q.p == 2);
    let mut out = Vec::new();
    for mask in 1u32..(1 << gens.len()) {
        let delta = gens
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .fold(FieldElement::one(), |acc, (_, g)| field.mul(&acc, g));
        if two_divides_level || is_square_mod_4(field, &delta) {
            out.push(delta);
        }
    }
    Ok(out)
}

/// Whether `P` is inert in `F(√δ)`: `δ` is a non-square in `O_F/P`.
pub fn inert_in_ext(field: &QuadField, delta: &FieldElement, prime: &PrimeIdeal) -> Result<bool, Error> {
    if prime.p == 2 {
        return Err(Error::CharacteristicTwo);
    }
    let r = field.reduce(delta, prime);
    if r.is_zero() {
        return Err(Error::RamifiedInExtension(format!("{prime}")));
    }
    Ok(!field.residue_field(prime).is_square(r)?)
}

/// Inert table primes for one extension `F(√δ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionWitnesses {
    pub delta: FieldElement,
    /// Table primes, in table order, that are odd, prime to the level,
    /// inert in `F(√δ)`, and carry a nonzero eigenvalue.
    pub inert_primes: Vec<PrimeIdeal>,
}

/// Per-form data for the dihedral test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralAnalysis {
    pub extensions: Vec<ExtensionWitnesses>,
    /// `ℓ = 2k_i − 1`.
    pub excluded_ells: Vec<u64>,
    /// Why the extensions could not be enumerated, if they could not.
    pub unsupported: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DihedralWitness {
    pub delta: FieldElement,
    pub prime: PrimeIdeal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", content = "detail", rename_all = "kebab-case")]
pub enum NonDihedral {
    Certified(Vec<DihedralWitness>),
    Bad(String),
    Inconclusive(String),
}

impl DihedralAnalysis {
    pub fn new(form: &NewformRecord) -> Self {
        let f = &form.base_field;
        let mut excluded_ells: Vec<u64> = form.weight.iter().map(|&k| (2 * k - 1) as u64).collect();
        excluded_ells.sort_unstable();
        excluded_ells.dedup();
        let deltas = match enumerate_quadratic_exts(f, &form.level) {
            Ok(d) => d,
            Err(e) => {
                return DihedralAnalysis {
                    extensions: Vec::new(),
                    excluded_ells,
                    unsupported: Some(format!("{e}")),
                }
            }
        };
        let extensions = deltas
            .into_iter()
            .map(|delta| {
                let inert_primes = form
                    .eigenvalues()
                    .iter()
                    .filter(|row| {
                        row.prime.p != 2
                            && form.level_valuation(&row.prime) == 0
                            && !row.value().is_zero()
                            && inert_in_ext(f, &delta, &row.prime) == Ok(true)
                    })
                    .map(|row| row.prime)
                    .collect();
                ExtensionWitnesses { delta, inert_primes }
            })
            .collect();
        DihedralAnalysis {
            extensions,
            excluded_ells,
            unsupported: None,
        }
    }

    /// Certify (or refute) a non-dihedral projective image at `λ`. Witnesses
    /// over `ℓ` itself are skipped since Frobenius there is not controlled.
    pub fn certify(&self, form: &NewformRecord, lambda: &CoeffPrime) -> NonDihedral {
        if let Some(why) = &self.unsupported {
            return NonDihedral::Inconclusive(format!("quadratic extensions unavailable: {why}"));
        }
        if self.excluded_ells.contains(&lambda.p) {
            return NonDihedral::Bad(format!("ℓ = {} equals 2k_i − 1", lambda.p));
        }
        if form.lambda_divides_level(lambda) {
            return NonDihedral::Bad(String::from("λ divides the level"));
        }
        let kf = &form.coeff_field;
        let mut witnesses = Vec::new();
        for ext in &self.extensions {
            let usable: Vec<&PrimeIdeal> = ext.inert_primes.iter().filter(|q| q.p != lambda.p).collect();
            if usable.is_empty() {
                return NonDihedral::Inconclusive(format!(
                    "no inert table prime off ℓ with nonzero eigenvalue for δ = {}; enlarge table",
                    ext.delta
                ));
            }
            let found = usable.into_iter().find(|q| {
                let c = form.lookup_eigenvalue(q).expect("inert witnesses come from the table");
                !kf.reduce(c, lambda).is_zero()
            });
            match found {
                Some(q) => witnesses.push(DihedralWitness {
                    delta: ext.delta.clone(),
                    prime: *q,
                }),
                None => {
                    return NonDihedral::Bad(format!(
                        "every inert witness for δ = {} has eigenvalue ≡ 0 mod λ",
                        ext.delta
                    ))
                }
            }
        }
        NonDihedral::Certified(witnesses)
    }

    /// The finitely many `λ` (beyond `ℓ = 2k_i − 1` and `λ | n`) at which
    /// every usable inert witness for some `δ` vanishes.
    pub fn vanishing_set(&self, form: &NewformRecord, trial_bound: u64) -> Result<BTreeSet<CoeffPrime>, Error> {
        let kf = &form.coeff_field;
        let mut out = BTreeSet::new();
        for ext in &self.extensions {
            let Some(first) = ext.inert_primes.first() else {
                continue;
            };
            let c = form.lookup_eigenvalue(first).expect("table prime");
            let mut candidates: BTreeSet<CoeffPrime> = kf
                .factor_principal(c, trial_bound)?
                .into_iter()
                .map(|(l, _)| l)
                .collect();
            candidates.extend(kf.primes_over(first.p)?);
            for lambda in candidates {
                if self.excluded_ells.contains(&lambda.p) || form.lambda_divides_level(&lambda) {
                    continue;
                }
                let usable: Vec<&PrimeIdeal> = ext.inert_primes.iter().filter(|q| q.p != lambda.p).collect();
                let vanish = !usable.is_empty()
                    && usable.iter().all(|q| {
                        kf.reduce(form.lookup_eigenvalue(q).expect("table prime"), &lambda)
                            .is_zero()
                    });
                if vanish {
                    out.insert(lambda);
                }
            }
        }
        Ok(out)
    }

    /// Whether `λ` lies in the dihedral bad set.
    pub fn in_bad_set(&self, form: &NewformRecord, lambda: &CoeffPrime) -> bool {
        matches!(self.certify(form, lambda), NonDihedral::Bad(_))
    }
}

/// Smallest prime `ℓ` with `(ℓ − 1)·d > 5·Σ(k_i − 1)`.
pub fn exceptional_groups_bound(weight: &[i64]) -> u64 {
    let d = weight.len() as i64;
    let s: i64 = weight.iter().map(|k| k - 1).sum();
    let mut ell = 2u64;
    while (ell as i64 - 1) * d <= 5 * s {
        ell = arith::next_prime(ell);
    }
    ell
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverrideKind {
    Exceptional,
    PrincipalSeries,
}

/// A user-supplied certificate for a condition the tool does not mechanize.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Override {
    pub lambda: CoeffPrime,
    pub kind: OverrideKind,
    pub note: String,
}

pub fn find_override<'a>(overrides: &'a [Override], lambda: &CoeffPrime, kind: OverrideKind) -> Option<&'a Override> {
    overrides.iter().find(|o| o.kind == kind && o.lambda == *lambda)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", content = "detail", rename_all = "kebab-case")]
pub enum NonExceptional {
    WeightBound(u64),
    Override(String),
    Inconclusive(String),
}

/// Exceptional-type sub-certificate at `λ`.
pub fn exceptional_override(form: &NewformRecord, lambda: &CoeffPrime, overrides: &[Override]) -> NonExceptional {
    let bound = exceptional_groups_bound(&form.weight);
    if lambda.p >= bound {
        NonExceptional::WeightBound(bound)
    } else if let Some(o) = find_override(overrides, lambda, OverrideKind::Exceptional) {
        NonExceptional::Override(o.note.clone())
    } else {
        NonExceptional::Inconclusive(format!(
            "exceptional-type inconclusive: ℓ = {} is below the weight bound {bound} and no override is recorded",
            lambda.p
        ))
    }
}

/// Warnings for exceptional overrides that the weight bound already covers.
pub fn override_warnings(form: &NewformRecord, overrides: &[Override]) -> Vec<String> {
    let bound = exceptional_groups_bound(&form.weight);
    overrides
        .iter()
        .filter(|o| o.kind == OverrideKind::Exceptional && o.lambda.p >= bound)
        .map(|o| {
            format!(
                "ignored exceptional override for λ = {}: ℓ = {} is already at or above the weight bound {bound}",
                o.lambda, o.lambda.p
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "by", content = "detail", rename_all = "kebab-case")]
pub enum Irreducibility {
    NotInExclusionSet,
    Witness(ReducedCharPoly),
    /// No table prime certifies irreducibility.
    NoWitness,
    /// The exclusion set could not be computed and no witness was found.
    Unavailable(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageCertificate {
    pub lambda: CoeffPrime,
    pub irreducible_by: Irreducibility,
    pub non_dihedral_by: NonDihedral,
    pub non_exceptional_by: NonExceptional,
}

impl ImageCertificate {
    pub fn irreducible_status(&self) -> Status {
        match &self.irreducible_by {
            Irreducibility::NotInExclusionSet | Irreducibility::Witness(_) => Status::Pass,
            Irreducibility::NoWitness => Status::Inconclusive(String::from(
                "no table prime gives an irreducible characteristic polynomial; enlarge table",
            )),
            Irreducibility::Unavailable(why) => {
                Status::Inconclusive(format!("exclusion set unavailable ({why}) and no witness in table"))
            }
        }
    }

    pub fn non_dihedral_status(&self) -> Status {
        match &self.non_dihedral_by {
            NonDihedral::Certified(_) => Status::Pass,
            NonDihedral::Bad(r) => Status::Fail(r.clone()),
            NonDihedral::Inconclusive(r) => Status::Inconclusive(r.clone()),
        }
    }

    pub fn non_exceptional_status(&self) -> Status {
        match &self.non_exceptional_by {
            NonExceptional::WeightBound(_) | NonExceptional::Override(_) => Status::Pass,
            NonExceptional::Inconclusive(r) => Status::Inconclusive(r.clone()),
        }
    }

    pub fn status(&self) -> Status {
        self.irreducible_status()
            .combine(self.non_dihedral_status())
            .combine(self.non_exceptional_status())
    }
}

/// Everything per-form the image gate needs, computed once per audit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageContext {
    pub exceptional: Result<ExceptionalSet, String>,
    pub dihedral: DihedralAnalysis,
    pub weight_bound: u64,
    pub inert: InertConstExponent,
}

impl ImageContext {
    pub fn new(form: &NewformRecord, multipliers: &[u64], inert: InertConstExponent, trial_bound: u64) -> Self {
        ImageContext {
            exceptional: exceptional_set(form, multipliers, trial_bound).map_err(|e| format!("{e}")),
            dihedral: DihedralAnalysis::new(form),
            weight_bound: exceptional_groups_bound(&form.weight),
            inert,
        }
    }
}

pub fn certify_image(
    form: &NewformRecord,
    ctx: &ImageContext,
    lambda: &CoeffPrime,
    overrides: &[Override],
) -> ImageCertificate {
    let irreducible_by = match &ctx.exceptional {
        Ok(set) if !set.contains(lambda) && !form.lambda_divides_level(lambda) => Irreducibility::NotInExclusionSet,
        other => match witness_irreducible(form, lambda, ctx.inert) {
            Some(w) => Irreducibility::Witness(w),
            None => match other {
                Err(why) => Irreducibility::Unavailable(why.clone()),
                Ok(_) => Irreducibility::NoWitness,
            },
        },
    };
    ImageCertificate {
        lambda: *lambda,
        irreducible_by,
        non_dihedral_by: ctx.dihedral.certify(form, lambda),
        non_exceptional_by: exceptional_override(form, lambda, overrides),
    }
}

/// Re-run every witness recorded in `cert` without searching. Returns true
/// when each recorded fact holds exactly as stated.
pub fn verify_image_certificate(
    form: &NewformRecord,
    ctx: &ImageContext,
    cert: &ImageCertificate,
    overrides: &[Override],
) -> bool {
    let lambda = &cert.lambda;
    let irreducible_ok = match &cert.irreducible_by {
        Irreducibility::NotInExclusionSet => match &ctx.exceptional {
            Ok(set) => !set.contains(lambda) && !form.lambda_divides_level(lambda),
            Err(_) => false,
        },
        Irreducibility::Witness(w) => {
            witness_admissible(form, lambda, &w.prime)
                && reduce_charpoly(form, lambda, &w.prime, ctx.inert).as_ref() == Ok(w)
                && w.irreducible
        }
        Irreducibility::NoWitness | Irreducibility::Unavailable(_) => true,
    };
    let dihedral_ok = match &cert.non_dihedral_by {
        NonDihedral::Certified(ws) => {
            let f = &form.base_field;
            ws.len() == ctx.dihedral.extensions.len()
                && ws.iter().zip(&ctx.dihedral.extensions).all(|(w, ext)| {
                    w.delta == ext.delta
                        && w.prime.p != lambda.p
                        && form.level_valuation(&w.prime) == 0
                        && inert_in_ext(f, &w.delta, &w.prime) == Ok(true)
                        && form
                            .lookup_eigenvalue(&w.prime)
                            .is_some_and(|c| !form.coeff_field.reduce(c, lambda).is_zero())
                })
        }
        NonDihedral::Bad(_) => ctx.dihedral.in_bad_set(form, lambda),
        NonDihedral::Inconclusive(_) => true,
    };
    let exceptional_ok = match &cert.non_exceptional_by {
        NonExceptional::WeightBound(b) => *b == ctx.weight_bound && lambda.p >= *b,
        NonExceptional::Override(note) => {
            find_override(overrides, lambda, OverrideKind::Exceptional).is_some_and(|o| o.note == *note)
        }
        NonExceptional::Inconclusive(_) => true,
    };
    irreducible_ok && dihedral_ok && exceptional_ok
}
