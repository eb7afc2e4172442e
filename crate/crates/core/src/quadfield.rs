//! Exact arithmetic in a real quadratic field `F = Q(√D)` and its ring of
//! integers `Z[ω]`, where `ω² = tω − n`.
//!
//! Elements are stored as `a + bω` with arbitrary-precision coordinates.
//! Prime ideals are identified by their rational prime, residue degree, and
//! (for degree one) the image of `ω` in the residue field, so the two primes
//! over a split `p` are told apart by their root.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, bigint_mod, is_prime_u64, mul_mod, sqrt_mod, sub_mod};
use crate::error::Error;
use crate::residue::{Fq, FqElem};

/// `a + bω` in the ring of integers of a real quadratic field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    pub a: BigInt,
    pub b: BigInt,
}

impl FieldElement {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Self {
        FieldElement {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn from_int(a: impl Into<BigInt>) -> Self {
        FieldElement::new(a, 0)
    }

    pub fn zero() -> Self {
        FieldElement::new(0, 0)
    }

    pub fn one() -> Self {
        FieldElement::new(1, 0)
    }

    pub fn omega() -> Self {
        FieldElement::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// Whether the element is a rational integer.
    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = (&self.a, &self.b);
        if b.is_zero() {
            return write!(f, "{a}");
        }
        let coef = if b.is_one() {
            String::new()
        } else if *b == -BigInt::one() {
            String::from("-")
        } else {
            format!("{b}")
        };
        if a.is_zero() {
            write!(f, "{coef}ω")
        } else if b.is_negative() {
            let coef = if coef == "-" { String::new() } else { format!("{}", -b) };
            write!(f, "{a}-{coef}ω")
        } else {
            write!(f, "{a}+{coef}ω")
        }
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use alloc::string::ToString;
        (self.a.to_string(), self.b.to_string()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (a, b) = <(String, String)>::deserialize(d)?;
        let parse = |s: &str| {
            s.parse::<BigInt>()
                .map_err(|_| serde::de::Error::custom(format!("bad integer {s:?}")))
        };
        Ok(FieldElement {
            a: parse(&a)?,
            b: parse(&b)?,
        })
    }
}

/// A prime ideal of `O_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeIdeal {
    pub p: u64,
    pub degree: u8,
    pub ramified: bool,
    /// Image of `ω` in `O_F/P`; present iff `degree == 1`.
    pub root: Option<u64>,
}

impl PrimeIdeal {
    /// `|O_F/P|`.
    pub fn norm(&self) -> u128 {
        if self.degree == 2 {
            self.p as u128 * self.p as u128
        } else {
            self.p as u128
        }
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.root {
            None => write!(f, "({})", self.p),
            Some(0) => write!(f, "({}, ω)", self.p),
            Some(r) => write!(f, "({}, ω-{})", self.p, r),
        }
    }
}

/// How a rational prime decomposes in `O_F`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SplitType {
    Split,
    Inert,
    Ramified,
}

/// `F = Q(√D)` with `ω² = tω − n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadField {
    d: i64,
    omega_trace: i64,
    omega_norm: i64,
    discriminant: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, Error> {
        if d <= 1 {
            return Err(Error::InvalidDiscriminant(d));
        }
        if !arith::is_squarefree(d as u64) {
            return Err(Error::NotSquarefree(d));
        }
        let (t, n, disc) = if d % 4 == 1 {
            (1, (1 - d) / 4, d)
        } else {
            (0, -d, 4 * d)
        };
        Ok(QuadField {
            d,
            omega_trace: t,
            omega_norm: n,
            discriminant: disc,
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    /// `t` in `ω² = tω − n`.
    pub fn omega_trace(&self) -> i64 {
        self.omega_trace
    }

    /// `n = N(ω)`.
    pub fn omega_norm(&self) -> i64 {
        self.omega_norm
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    fn t(&self) -> BigInt {
        BigInt::from(self.omega_trace)
    }

    fn n(&self) -> BigInt {
        BigInt::from(self.omega_norm)
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let bd = &x.b * &y.b;
        FieldElement {
            a: &x.a * &y.a - &bd * self.n(),
            b: &x.a * &y.b + &x.b * &y.a + &bd * self.t(),
        }
    }

    pub fn pow(&self, x: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `N(a + bω) = a² + abt + b²n`.
    pub fn norm(&self, x: &FieldElement) -> BigInt {
        &x.a * &x.a + &x.a * &x.b * self.t() + &x.b * &x.b * self.n()
    }

    pub fn trace(&self, x: &FieldElement) -> BigInt {
        BigInt::from(2) * &x.a + &x.b * self.t()
    }

    /// Galois conjugate: `ω ↦ t − ω`.
    pub fn conj(&self, x: &FieldElement) -> FieldElement {
        FieldElement {
            a: &x.a + &x.b * self.t(),
            b: -&x.b,
        }
    }

    /// `x + y√D`.
    pub fn from_sqrt_basis(&self, x: impl Into<BigInt>, y: impl Into<BigInt>) -> FieldElement {
        let (x, y) = (x.into(), y.into());
        if self.omega_trace == 1 {
            FieldElement::new(&x - &y, BigInt::from(2) * y)
        } else {
            FieldElement::new(x, y)
        }
    }

    /// `(x + y√D)/2`, when that is an algebraic integer.
    pub fn from_half_sqrt_basis(&self, x: impl Into<BigInt>, y: impl Into<BigInt>) -> Option<FieldElement> {
        let (x, y) = (x.into(), y.into());
        let two = BigInt::from(2);
        if self.omega_trace == 1 {
            let s = &x - &y;
            s.is_even().then(|| FieldElement::new(s / &two, y))
        } else {
            (x.is_even() && y.is_even()).then(|| FieldElement::new(x / &two, y / &two))
        }
    }

    /// `(x, y)` with `x + bω = (x + y√D)/2`.
    pub fn to_half_sqrt_basis(&self, e: &FieldElement) -> (BigInt, BigInt) {
        let two = BigInt::from(2);
        if self.omega_trace == 1 {
            (&two * &e.a + &e.b, e.b.clone())
        } else {
            (&two * &e.a, &two * &e.b)
        }
    }

    /// `(x, y)` with `e = x + y√D`, when both coordinates are integers.
    pub fn to_sqrt_basis(&self, e: &FieldElement) -> Option<(BigInt, BigInt)> {
        let (x, y) = self.to_half_sqrt_basis(e);
        (x.is_even() && y.is_even()).then(|| (x / 2, y / 2))
    }

    /// Whether `x` lies in the principal ideal `(g)`.
    pub fn divides(&self, g: &FieldElement, x: &FieldElement) -> bool {
        self.exact_div(x, g).is_some()
    }

    /// `x / g` when it is integral.
    pub fn exact_div(&self, x: &FieldElement, g: &FieldElement) -> Option<FieldElement> {
        let ng = self.norm(g);
        if ng.is_zero() {
            return None;
        }
        let y = self.mul(x, &self.conj(g));
        let (qa, ra) = y.a.div_rem(&ng);
        let (qb, rb) = y.b.div_rem(&ng);
        (ra.is_zero() && rb.is_zero()).then_some(FieldElement { a: qa, b: qb })
    }

    pub fn is_unit(&self, x: &FieldElement) -> bool {
        self.norm(x).abs().is_one()
    }

    /// The fundamental unit `ε > 1`.
    ///
    /// Walks the continued fraction of `ω = (t + √disc)/2`; the first
    /// convergent `p/q` with `N(p − qω) = ±1` gives `ε = conj(p − qω)`.
    pub fn fundamental_unit(&self) -> FieldElement {
        let d = BigInt::from(self.discriminant);
        let s = d.sqrt();
        let t = self.t();
        // complete quotient (P + √d)/Q
        let mut pp = t.clone();
        let mut qq = BigInt::from(2);
        let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
        let (mut p_cur, mut q_cur) = (BigInt::zero(), BigInt::one());
        let mut first = true;
        loop {
            debug_assert!(qq.is_positive());
            let a = (&pp + &s).div_floor(&qq);
            if first {
                p_cur = a.clone();
                first = false;
            } else {
                let p_next = &a * &p_cur + &p_prev;
                let q_next = &a * &q_cur + &q_prev;
                p_prev = core::mem::replace(&mut p_cur, p_next);
                q_prev = core::mem::replace(&mut q_cur, q_next);
            }
            let cand = FieldElement::new(p_cur.clone(), -&q_cur);
            if self.norm(&cand).abs().is_one() {
                return self.conj(&cand);
            }
            pp = &a * &qq - &pp;
            qq = (&d - &pp * &pp) / &qq;
        }
    }

    /// Classify the rational prime `p` in `F`.
    pub fn split_type(&self, p: u64) -> Result<SplitType, Error> {
        Ok(match self.primes_over(p)?.as_slice() {
            [a, _] => {
                debug_assert!(!a.ramified);
                SplitType::Split
            }
            [a] if a.ramified => SplitType::Ramified,
            _ => SplitType::Inert,
        })
    }

    /// The primes of `O_F` over `p`, ordered by root.
    pub fn primes_over(&self, p: u64) -> Result<Vec<PrimeIdeal>, Error> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        if p > (1 << 62) {
            return Err(Error::PrimeTooLarge(format!("{p}")));
        }
        let ramified = self.discriminant.rem_euclid(p as i64) == 0;
        let tm = self.omega_trace.rem_euclid(p as i64) as u64;
        let nm = self.omega_norm.rem_euclid(p as i64) as u64;
        let is_root = |r: u64| {
            let v = sub_mod(mul_mod(r, r, p), mul_mod(tm, r, p), p);
            (v + nm).is_multiple_of(p)
        };
        let mut roots: Vec<u64> = if p == 2 {
            (0..2).filter(|&r| is_root(r)).collect()
        } else {
            let disc = self.discriminant.rem_euclid(p as i64) as u64;
            match sqrt_mod(disc, p) {
                None => Vec::new(),
                Some(s) => {
                    let half = arith::inv_mod(2, p).expect("p odd");
                    let r1 = mul_mod((tm + s) % p, half, p);
                    let r2 = mul_mod(sub_mod(tm, s, p), half, p);
                    alloc::vec![r1, r2]
                }
            }
        };
        roots.sort_unstable();
        roots.dedup();
        debug_assert!(roots.iter().all(|&r| is_root(r)));
        Ok(match roots.len() {
            0 => alloc::vec![PrimeIdeal {
                p,
                degree: 2,
                ramified: false,
                root: None
            }],
            1 => alloc::vec![PrimeIdeal {
                p,
                degree: 1,
                ramified: true,
                root: Some(roots[0])
            }],
            _ => {
                debug_assert!(!ramified);
                roots
                    .into_iter()
                    .map(|r| PrimeIdeal {
                        p,
                        degree: 1,
                        ramified: false,
                        root: Some(r),
                    })
                    .collect()
            }
        })
    }

    /// Validate `{p, degree, root}` data and return the prime it names.
    pub fn prime_ideal(&self, p: u64, degree: u8, root: Option<u64>) -> Result<PrimeIdeal, Error> {
        let over = self.primes_over(p)?;
        let found = match (degree, root) {
            (1, Some(r)) if r < p => over.iter().find(|q| q.degree == 1 && q.root == Some(r)),
            (2, None) => over.iter().find(|q| q.degree == 2),
            _ => None,
        };
        found
            .copied()
            .ok_or_else(|| Error::InvalidPrimeIdeal(format!("p={p}, degree={degree}, root={root:?} in Q(√{})", self.d)))
    }

    /// The residue field `O_F/P`.
    pub fn residue_field(&self, prime: &PrimeIdeal) -> Fq {
        let p = prime.p;
        if prime.degree == 2 {
            Fq::quadratic(
                p,
                self.omega_trace.rem_euclid(p as i64) as u64,
                self.omega_norm.rem_euclid(p as i64) as u64,
            )
        } else {
            Fq::prime(p)
        }
    }

    /// The reduction map `O_F → O_F/P`.
    pub fn reduce(&self, x: &FieldElement, prime: &PrimeIdeal) -> FqElem {
        let p = prime.p;
        let a = bigint_mod(&x.a, p);
        let b = bigint_mod(&x.b, p);
        match prime.root {
            Some(r) => FqElem::new((a + mul_mod(b, r, p)) % p, 0),
            None => FqElem::new(a, b),
        }
    }

    /// Multiplicative order of `u` in `O_F/P`.
    pub fn unit_order_mod(&self, u: &FieldElement, prime: &PrimeIdeal) -> Result<u128, Error> {
        let field = self.residue_field(prime);
        field.element_order(self.reduce(u, prime))
    }

    /// Smallest `e ≥ 1` with `u^e ≡ 1` modulo the principal ideal `(g)`.
    pub fn order_mod_ideal(&self, u: &FieldElement, g: &FieldElement) -> Result<u64, Error> {
        let m = self.norm(g).abs();
        if m.is_zero() {
            return Err(Error::LevelNotProper);
        }
        let size = (&m * &m)
            .to_u64()
            .ok_or_else(|| Error::PrimeTooLarge(format!("|O/({g})| = {m}^2")))?;
        let reduce = |x: FieldElement| FieldElement {
            a: x.a.mod_floor(&m),
            b: x.b.mod_floor(&m),
        };
        let one = FieldElement::one();
        let base = reduce(u.clone());
        let mut x = base.clone();
        for e in 1..=size {
            if self.divides(g, &(&x - &one)) {
                return Ok(e);
            }
            x = reduce(self.mul(&x, &base));
        }
        Err(Error::ZeroElement)
    }

    /// `v_P(x)` for nonzero `x`.
    pub fn valuation(&self, x: &FieldElement, prime: &PrimeIdeal) -> u32 {
        assert!(!x.is_zero(), "valuation of zero");
        let p = BigInt::from(prime.p);
        let content = x.a.gcd(&x.b);
        let g = arith::valuation(&content, prime.p);
        let pg = num_traits::pow(p, g as usize);
        let x0 = FieldElement {
            a: &x.a / &pg,
            b: &x.b / &pg,
        };
        if prime.degree == 2 {
            return g;
        }
        let n0 = self.norm(&x0);
        if prime.ramified {
            // P² = (p): v_P(p^g x0) = 2g + v_p(N(x0))
            return 2 * g + arith::valuation(&n0, prime.p);
        }
        // x0 lies in at most one of the two conjugate primes over p.
        if self.reduce(&x0, prime).is_zero() {
            g + arith::valuation(&n0, prime.p)
        } else {
            g
        }
    }

    /// Factor the principal ideal `(x)` into prime ideals.
    pub fn factor_principal(&self, x: &FieldElement, trial_bound: u64) -> Result<Vec<(PrimeIdeal, u32)>, Error> {
        if x.is_zero() {
            return Err(Error::ZeroNotFactorable);
        }
        let n = self.norm(x).abs().to_biguint().expect("nonnegative");
        let mut out = Vec::new();
        for (p, _) in arith::factor_integer(&n, trial_bound)? {
            for prime in self.primes_over(p)? {
                let e = self.valuation(x, &prime);
                if e > 0 {
                    out.push((prime, e));
                }
            }
        }
        Ok(out)
    }

    /// The rational primes dividing `N(x)`.
    pub fn norm_support(&self, x: &FieldElement, trial_bound: u64) -> Result<Vec<u64>, Error> {
        if x.is_zero() {
            return Err(Error::ZeroNotFactorable);
        }
        let n = self.norm(x).abs().to_biguint().expect("nonnegative");
        Ok(arith::factor_integer(&n, trial_bound)?
            .into_iter()
            .map(|(p, _)| p)
            .collect())
    }

    /// The prime ideal generated by `x`, if `(x)` is prime.
    pub fn prime_of_generator(&self, x: &FieldElement) -> Result<PrimeIdeal, Error> {
        match self.factor_principal(x, arith::DEFAULT_TRIAL_BOUND)?.as_slice() {
            [(prime, 1)] => Ok(*prime),
            _ => Err(Error::NotPrimeGenerator(format!("{x}"))),
        }
    }

    /// Search for a generator of `P`, returning `None` when `P` is not
    /// principal. The search is complete: any generator can be moved by a
    /// unit into the window `1 ≤ |α/α'| < ε²`, which bounds its coordinates.
    pub fn principal_generator(&self, prime: &PrimeIdeal) -> Option<FieldElement> {
        if prime.degree == 2 {
            return Some(FieldElement::from_int(prime.p));
        }
        let eps = self.fundamental_unit();
        let sd = BigInt::from(self.discriminant).sqrt() + 2;
        let e_bound = eps.a.abs() + eps.b.abs() * &sd;
        let sp = BigInt::from(prime.p).sqrt() + 1;
        let b_max = &sp * (e_bound + 1);
        let p = BigInt::from(prime.p);
        let (t, n) = (self.t(), self.n());
        let mut b = BigInt::zero();
        while b <= b_max {
            for target in [p.clone(), -&p] {
                // a² + (bt)a + (b²n − target) = 0
                let disc = &b * &b * &t * &t - BigInt::from(4) * (&b * &b * &n - &target);
                if disc.is_negative() {
                    continue;
                }
                let r = disc.sqrt();
                if &r * &r != disc {
                    continue;
                }
                for num in [-&b * &t + &r, -&b * &t - &r] {
                    if num.is_odd() {
                        continue;
                    }
                    let cand = FieldElement::new(num / 2, b.clone());
                    if self.reduce(&cand, prime).is_zero() {
                        return Some(cand);
                    }
                }
            }
            b += 1;
        }
        None
    }

    /// Class number one, by checking every prime below the Minkowski bound
    /// `√disc / 2` is principal.
    pub fn class_number_is_one(&self) -> bool {
        let bound = (self.discriminant as u64).sqrt() / 2 + 1;
        arith::primes_in(2, bound).into_iter().all(|p| {
            self.primes_over(p)
                .map(|ps| ps.iter().all(|q| self.principal_generator(q).is_some()))
                .unwrap_or(false)
        })
    }

    /// Narrow class number one: class number one and `N(ε) = −1`.
    pub fn narrow_class_number_is_one(&self) -> bool {
        let eps = self.fundamental_unit();
        self.norm(&eps) == -BigInt::one() && self.class_number_is_one()
    }

    /// `a mod p` for a rational integer, as an element of `O_F/P`.
    pub fn reduce_int(&self, a: &BigInt, prime: &PrimeIdeal) -> FqElem {
        FqElem::new(bigint_mod(a, prime.p), 0)
    }

    /// `|N(x)|`.
    pub fn norm_biguint(&self, x: &FieldElement) -> BigUint {
        let n = self.norm(x);
        match n.sign() {
            Sign::Minus => (-n).to_biguint().expect("positive"),
            _ => n.to_biguint().expect("nonnegative"),
        }
    }
}

/// `x ≡ y (mod P)`.
pub fn congruent_mod(field: &QuadField, x: &FieldElement, y: &FieldElement, prime: &PrimeIdeal) -> bool {
    field.reduce(&(x - y), prime).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q5() -> QuadField {
        QuadField::new(5).unwrap()
    }

    fn el(a: i64, b: i64) -> FieldElement {
        FieldElement::new(a, b)
    }

    #[test]
    fn make_field_cases() {
        let f = q5();
        assert_eq!((f.omega_trace(), f.omega_norm(), f.discriminant()), (1, -1, 5));
        let f = QuadField::new(2).unwrap();
        assert_eq!((f.omega_trace(), f.omega_norm(), f.discriminant()), (0, -2, 8));
        assert_eq!(QuadField::new(12), Err(Error::NotSquarefree(12)));
        assert_eq!(QuadField::new(1), Err(Error::InvalidDiscriminant(1)));
        assert!(QuadField::new(-3).is_err());
    }

    #[test]
    fn multiplication_in_q5() {
        let f = q5();
        let w = FieldElement::omega();
        assert_eq!(f.mul(&w, &w), el(1, 1));
        assert_eq!(f.mul(&el(1, 1), &el(1, -1)), el(0, -1));
        assert_eq!(f.mul(&el(7, -3), &FieldElement::one()), el(7, -3));
    }

    #[test]
    fn norms_in_q5() {
        let f = q5();
        assert_eq!(f.norm(&el(3, 1)), BigInt::from(11));
        assert_eq!(f.norm(&f.from_sqrt_basis(-20, 14)), BigInt::from(-580));
        assert_eq!(f.norm(&FieldElement::omega()), BigInt::from(-1));
        let x = el(4, -7);
        let prod = f.mul(&x, &f.conj(&x));
        assert_eq!(prod, FieldElement::from_int(f.norm(&x)));
        assert_eq!(f.trace(&FieldElement::omega()), BigInt::from(1));
    }

    #[test]
    fn sqrt_basis_conversions() {
        let f = q5();
        assert_eq!(f.from_sqrt_basis(-35, 91), el(-126, 182));
        assert_eq!(
            f.to_sqrt_basis(&el(-126, 182)),
            Some((BigInt::from(-35), BigInt::from(91)))
        );
        assert_eq!(f.from_half_sqrt_basis(1, 1), Some(FieldElement::omega()));
        assert_eq!(f.from_half_sqrt_basis(1, 2), None);
        assert_eq!(f.to_sqrt_basis(&FieldElement::omega()), None);
        let g = QuadField::new(2).unwrap();
        assert_eq!(g.from_sqrt_basis(3, 5), el(3, 5));
        assert_eq!(g.from_half_sqrt_basis(1, 1), None);
    }

    #[test]
    fn fundamental_units() {
        assert_eq!(q5().fundamental_unit(), FieldElement::omega());
        assert_eq!(QuadField::new(2).unwrap().fundamental_unit(), el(1, 1));
        assert_eq!(QuadField::new(13).unwrap().fundamental_unit(), el(1, 1));
        assert_eq!(QuadField::new(3).unwrap().fundamental_unit(), el(2, 1));
    }

    #[test]
    fn splitting_in_q5() {
        let f = q5();
        assert_eq!(f.split_type(11).unwrap(), SplitType::Split);
        let roots: Vec<_> = f.primes_over(11).unwrap().iter().map(|p| p.root.unwrap()).collect();
        assert_eq!(roots, vec![4, 8]);
        assert_eq!(f.split_type(7).unwrap(), SplitType::Inert);
        assert_eq!(f.split_type(5).unwrap(), SplitType::Ramified);
        assert_eq!(f.split_type(2).unwrap(), SplitType::Inert);
        assert_eq!(f.primes_over(4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn reductions() {
        let f = q5();
        let p4 = f.prime_ideal(11, 1, Some(4)).unwrap();
        let p8 = f.prime_ideal(11, 1, Some(8)).unwrap();
        assert_eq!(f.reduce(&el(-126, 182), &p4), FqElem::new(8, 0));
        assert_eq!(f.reduce(&FieldElement::omega(), &p8), FqElem::new(8, 0));
        assert_eq!(f.reduce(&el(-3, 0), &p8), FqElem::new(8, 0));
        assert_eq!(f.prime_of_generator(&el(3, 1)).unwrap(), p8);
        assert_eq!(f.prime_of_generator(&el(4, -1)).unwrap(), p4);
    }

    #[test]
    fn unit_orders() {
        let f = q5();
        let n = f.prime_of_generator(&el(3, 1)).unwrap();
        assert_eq!(f.unit_order_mod(&FieldElement::omega(), &n).unwrap(), 10);
        assert_eq!(f.unit_order_mod(&FieldElement::one(), &n).unwrap(), 1);
        let seven = f.prime_ideal(7, 2, None).unwrap();
        assert_eq!(f.unit_order_mod(&FieldElement::omega(), &seven).unwrap(), 16);
        assert_eq!(f.unit_order_mod(&el(3, 1), &n), Err(Error::ZeroElement));
        assert_eq!(f.order_mod_ideal(&FieldElement::omega(), &el(3, 1)).unwrap(), 10);
    }

    #[test]
    fn principal_factorizations() {
        let f = q5();
        let w = FieldElement::omega();
        let one = FieldElement::one();
        let x = &f.pow(&w, 10) - &one;
        assert_eq!(x, el(33, 55));
        let fac = f.factor_principal(&x, 1000).unwrap();
        let n = f.prime_of_generator(&el(3, 1)).unwrap();
        let l = f.prime_of_generator(&el(4, -1)).unwrap();
        let mut want = vec![(n, 1), (l, 1)];
        want.sort();
        assert_eq!(fac, want);
        assert!(f.factor_principal(&w, 1000).unwrap().is_empty());
        assert_eq!(
            f.factor_principal(&FieldElement::zero(), 1000),
            Err(Error::ZeroNotFactorable)
        );

        let y = &f.pow(&w, 20) + &one;
        assert_eq!(f.norm(&y), BigInt::from(15_129));
        let fac = f.factor_principal(&y, 1000).unwrap();
        let ps: Vec<u64> = fac.iter().map(|(p, _)| p.p).collect();
        assert_eq!(ps, vec![3, 41, 41]);
        assert_eq!(fac[0].1, 1);
    }

    #[test]
    fn valuations_with_content() {
        let f = q5();
        let l = f.prime_of_generator(&el(4, -1)).unwrap();
        let n = f.prime_of_generator(&el(3, 1)).unwrap();
        // 11^2 (4 - ω)^3
        let x = f.mul(&FieldElement::from_int(121), &f.pow(&el(4, -1), 3));
        assert_eq!(f.valuation(&x, &l), 5);
        assert_eq!(f.valuation(&x, &n), 2);
        let r5 = f.prime_of_generator(&el(-1, 2)).unwrap();
        assert!(r5.ramified);
        assert_eq!(f.valuation(&FieldElement::from_int(25), &r5), 4);
        assert_eq!(f.valuation(&el(-1, 2), &r5), 1);
    }

    #[test]
    fn class_numbers() {
        assert!(q5().narrow_class_number_is_one());
        assert!(QuadField::new(13).unwrap().narrow_class_number_is_one());
        // Q(√3): ε = 2 + √3 has norm +1
        assert!(QuadField::new(3).unwrap().class_number_is_one());
        assert!(!QuadField::new(3).unwrap().narrow_class_number_is_one());
        // Q(√10) has class number 2
        assert!(!QuadField::new(10).unwrap().class_number_is_one());
    }

    #[test]
    fn generator_search() {
        let f = q5();
        let p29 = f.prime_of_generator(&el(5, 1)).unwrap();
        let g = f.principal_generator(&p29).unwrap();
        assert_eq!(f.prime_of_generator(&g).unwrap(), p29);
        let n = f.prime_of_generator(&el(3, 1)).unwrap();
        assert_eq!(f.principal_generator(&n).unwrap(), el(3, 1));
    }
}
