//! Hilbert newforms described by weight, level, and a table of Hecke
//! eigenvalues.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::arith::DEFAULT_TRIAL_BOUND;
use crate::error::Error;
use crate::quadfield::{FieldElement, PrimeIdeal, QuadField};

/// A prime `λ` of the coefficient field `K_f`.
pub type CoeffPrime = PrimeIdeal;

/// Basis an eigenvalue was written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Basis {
    /// `x + y√D_f`
    SqrtD,
    /// `x + yω_f`
    Omega,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Nebentypus {
    Trivial,
}

/// One row of the eigenvalue table, kept exactly as written.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenRow {
    pub prime: PrimeIdeal,
    pub x: BigInt,
    pub y: BigInt,
    pub basis: Basis,
    value: FieldElement,
}

impl EigenRow {
    pub fn new(coeff_field: &QuadField, prime: PrimeIdeal, x: BigInt, y: BigInt, basis: Basis) -> Self {
        let value = match basis {
            Basis::SqrtD => coeff_field.from_sqrt_basis(x.clone(), y.clone()),
            Basis::Omega => FieldElement::new(x.clone(), y.clone()),
        };
        EigenRow {
            prime,
            x,
            y,
            basis,
            value,
        }
    }

    /// `c(f, P)` in the `(1, ω_f)` basis of `O_{K_f}`.
    pub fn value(&self) -> &FieldElement {
        &self.value
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewformRecord {
    pub base_field: QuadField,
    pub coeff_field: QuadField,
    pub weight: [i64; 2],
    /// Generator of the level ideal `n`.
    pub level: FieldElement,
    pub nebentypus: Nebentypus,
    eigenvalues: Vec<EigenRow>,
    level_factors: Vec<(PrimeIdeal, u32)>,
    /// Where the record came from (a file path, say); not part of the data.
    pub label: Option<String>,
}

impl NewformRecord {
    pub fn new(
        base_field: QuadField,
        coeff_field: QuadField,
        weight: &[i64],
        level: FieldElement,
        nebentypus: Nebentypus,
        eigenvalues: Vec<EigenRow>,
    ) -> Result<Self, Error> {
        let weight: [i64; 2] = weight.try_into().map_err(|_| Error::WeightLength(weight.len()))?;
        if let Some(&k) = weight.iter().find(|&&k| k < 2) {
            return Err(Error::WeightTooSmall(k));
        }
        if (weight[0] - weight[1]).is_odd() {
            return Err(Error::WeightParity {
                k1: weight[0],
                k2: weight[1],
            });
        }
        if level.is_zero() || base_field.is_unit(&level) {
            return Err(Error::LevelNotProper);
        }
        for (i, row) in eigenvalues.iter().enumerate() {
            if eigenvalues[..i].iter().any(|r| r.prime == row.prime) {
                return Err(Error::DuplicatePrime(format!("{}", row.prime)));
            }
        }
        let level_factors = base_field.factor_principal(&level, DEFAULT_TRIAL_BOUND)?;
        Ok(NewformRecord {
            base_field,
            coeff_field,
            weight,
            level,
            nebentypus,
            eigenvalues,
            level_factors,
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// `k0 = max k_i`.
    pub fn k0(&self) -> i64 {
        self.weight[0].max(self.weight[1])
    }

    pub fn eigenvalues(&self) -> &[EigenRow] {
        &self.eigenvalues
    }

    /// The prime factorization of the level.
    pub fn level_factors(&self) -> &[(PrimeIdeal, u32)] {
        &self.level_factors
    }

    /// `|N(n)|`.
    pub fn level_norm(&self) -> u64 {
        self.base_field
            .norm(&self.level)
            .abs()
            .to_u64()
            .expect("level norm fits in u64")
    }

    pub fn level_valuation(&self, prime: &PrimeIdeal) -> u32 {
        self.level_factors
            .iter()
            .find(|(q, _)| q == prime)
            .map_or(0, |(_, e)| *e)
    }

    /// `c(f, P)`; absence is a distinct answer, never zero.
    pub fn lookup_eigenvalue(&self, prime: &PrimeIdeal) -> Option<&FieldElement> {
        self.eigenvalues.iter().find(|r| r.prime == *prime).map(EigenRow::value)
    }

    /// Whether the coefficient field is the base field, so that primes of
    /// `K_f` and of `F` can be compared directly.
    pub fn coefficients_in_base_field(&self) -> bool {
        self.coeff_field == self.base_field
    }

    /// `λ | n`. When `K_f = F` this is ideal divisibility; otherwise every
    /// `λ` over a rational prime dividing `N(n)` is treated as dividing.
    pub fn lambda_divides_level(&self, lambda: &CoeffPrime) -> bool {
        if self.coefficients_in_base_field() {
            self.level_valuation(lambda) > 0
        } else {
            self.level_norm().is_multiple_of(lambda.p)
        }
    }

    /// Whether the weight is non-induced by default (the components differ).
    pub fn default_non_induced(&self) -> bool {
        self.weight[0] != self.weight[1]
    }

    /// Same weight, level (as an ideal), character, and fields.
    pub fn same_space_as(&self, other: &NewformRecord) -> bool {
        self.base_field == other.base_field
            && self.coeff_field == other.coeff_field
            && self.weight == other.weight
            && self.nebentypus == other.nebentypus
            && self.level_factors == other.level_factors
    }
}

/// The primary form plus the companion (same space) and lower-level forms it
/// is compared against.
#[derive(Clone, Debug)]
pub struct FormSet {
    pub primary: NewformRecord,
    pub companions: Vec<NewformRecord>,
    pub lower_level: Vec<NewformRecord>,
}

impl FormSet {
    pub fn new(primary: NewformRecord) -> Self {
        FormSet {
            primary,
            companions: Vec::new(),
            lower_level: Vec::new(),
        }
    }

    /// Companions must share weight, level and character; lower-level forms
    /// must share the fields and weight and have level properly dividing `n`.
    pub fn validate(&self) -> Result<(), Error> {
        let f = &self.primary;
        for g in &self.companions {
            if !f.same_space_as(g) {
                return Err(Error::FieldMismatch(format!(
                    "companion {} is not in the space of the primary form",
                    g.label.as_deref().unwrap_or("<unnamed>")
                )));
            }
        }
        for g in &self.lower_level {
            let name = g.label.as_deref().unwrap_or("<unnamed>");
            if g.base_field != f.base_field || g.coeff_field != f.coeff_field || g.weight != f.weight {
                return Err(Error::FieldMismatch(format!(
                    "lower-level form {name} has different fields or weight"
                )));
            }
            let proper = f.base_field.divides(&g.level, &f.level) && !f.base_field.divides(&f.level, &g.level);
            if !proper {
                return Err(Error::FieldMismatch(format!(
                    "lower-level form {name}: level {} does not properly divide {}",
                    g.level, f.level
                )));
            }
        }
        Ok(())
    }
}
