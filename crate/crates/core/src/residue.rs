//! Finite fields `F_p` and `F_{p²} = F_p[X]/(X² − tX + n)`.
//!
//! The quadratic extension uses the minimal polynomial of `ω`, so reducing
//! an element `a + bω` modulo an inert prime lands on the pair `(a, b)`.

use alloc::vec::Vec;

use serde::{Deserialize, Serialize};

use crate::arith::{self, add_mod, mul_mod, pow_mod, sub_mod};
use crate::error::Error;

/// `c0 + c1·θ` with `θ` the class of `X`; `c1` is always zero in a prime
/// field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqElem {
    pub c0: u64,
    pub c1: u64,
}

impl FqElem {
    pub const fn new(c0: u64, c1: u64) -> Self {
        FqElem { c0, c1 }
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == 0 && self.c1 == 0
    }
}

impl core::fmt::Display for FqElem {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        if self.c1 == 0 {
            write!(f, "{}", self.c0)
        } else {
            write!(f, "({}+{}θ)", self.c0, self.c1)
        }
    }
}

/// The field `F_q` with `q = p` or `q = p²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fq {
    p: u64,
    degree: u8,
    /// `X² = tX − n` in degree two.
    t: u64,
    n: u64,
}

impl Fq {
    pub fn prime(p: u64) -> Self {
        Fq {
            p,
            degree: 1,
            t: 0,
            n: 0,
        }
    }

    /// `F_p[X]/(X² − tX + n)`; the caller guarantees irreducibility.
    pub fn quadratic(p: u64, t: u64, n: u64) -> Self {
        Fq {
            p,
            degree: 2,
            t: t % p,
            n: n % p,
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn order(&self) -> u128 {
        if self.degree == 2 {
            self.p as u128 * self.p as u128
        } else {
            self.p as u128
        }
    }

    pub fn zero(&self) -> FqElem {
        FqElem::new(0, 0)
    }

    pub fn one(&self) -> FqElem {
        FqElem::new(1 % self.p, 0)
    }

    pub fn from_u64(&self, a: u64) -> FqElem {
        FqElem::new(a % self.p, 0)
    }

    /// Every element, in lexicographic order of coordinates.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let p = self.p;
        let top = if self.degree == 2 { p } else { 1 };
        (0..top).flat_map(move |c1| (0..p).map(move |c0| FqElem::new(c0, c1)))
    }

    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        FqElem::new(add_mod(x.c0, y.c0, self.p), add_mod(x.c1, y.c1, self.p))
    }

    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        FqElem::new(sub_mod(x.c0, y.c0, self.p), sub_mod(x.c1, y.c1, self.p))
    }

    pub fn neg(&self, x: FqElem) -> FqElem {
        self.sub(self.zero(), x)
    }

    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        let p = self.p;
        if self.degree == 1 {
            return FqElem::new(mul_mod(x.c0, y.c0, p), 0);
        }
        // (a + bX)(c + dX) with X² = tX − n
        let bd = mul_mod(x.c1, y.c1, p);
        let c0 = sub_mod(mul_mod(x.c0, y.c0, p), mul_mod(bd, self.n, p), p);
        let c1 = add_mod(
            add_mod(mul_mod(x.c0, y.c1, p), mul_mod(x.c1, y.c0, p), p),
            mul_mod(bd, self.t, p),
            p,
        );
        FqElem::new(c0, c1)
    }

    pub fn pow(&self, x: FqElem, mut e: u128) -> FqElem {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Norm down to `F_p` (identity in degree one).
    pub fn norm(&self, x: FqElem) -> u64 {
        if self.degree == 1 {
            return x.c0;
        }
        let p = self.p;
        // N(a + bX) = a² + abt + b²n
        let v = add_mod(mul_mod(x.c0, x.c0, p), mul_mod(mul_mod(x.c0, x.c1, p), self.t, p), p);
        add_mod(v, mul_mod(mul_mod(x.c1, x.c1, p), self.n, p), p)
    }

    pub fn inv(&self, x: FqElem) -> Result<FqElem, Error> {
        if x.is_zero() {
            return Err(Error::ZeroElement);
        }
        Ok(self.pow(x, self.order() - 2))
    }

    /// Euler's criterion: `a^((q−1)/2) = 1`, with zero counted as a square.
    pub fn is_square(&self, a: FqElem) -> Result<bool, Error> {
        if self.p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if a.is_zero() {
            return Ok(true);
        }
        Ok(self.pow(a, (self.order() - 1) / 2) == self.one())
    }

    /// Whether `X² − c1·X + c0` is irreducible over this field.
    pub fn quad_poly_irreducible(&self, c1: FqElem, c0: FqElem) -> Result<bool, Error> {
        let four = self.from_u64(4);
        let disc = self.sub(self.mul(c1, c1), self.mul(four, c0));
        Ok(!self.is_square(disc)?)
    }

    /// Multiplicative order, from the factorization of `q − 1`.
    pub fn element_order(&self, a: FqElem) -> Result<u128, Error> {
        if a.is_zero() {
            return Err(Error::ZeroElement);
        }
        let group = self.order() - 1;
        let factors: Vec<(u64, u32)> = if self.degree == 2 {
            // p² − 1 = (p − 1)(p + 1)
            let mut fs = arith::factor_u64(self.p - 1, arith::DEFAULT_TRIAL_BOUND)?;
            fs.extend(arith::factor_u64(self.p + 1, arith::DEFAULT_TRIAL_BOUND)?);
            merge_factors(fs)
        } else {
            arith::factor_u128(group, arith::DEFAULT_TRIAL_BOUND)?
        };
        let one = self.one();
        let mut order = group;
        for (q, _) in factors {
            let q = q as u128;
            while order.is_multiple_of(q) && self.pow(a, order / q) == one {
                order /= q;
            }
        }
        Ok(order)
    }

    /// The image of `a` under the Frobenius `x ↦ x^p`.
    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p as u128)
    }

    /// Legendre symbol for prime fields (convenience for reports).
    pub fn legendre(&self, a: u64) -> i8 {
        let a = a % self.p;
        if a == 0 {
            0
        } else if pow_mod(a, ((self.p - 1) / 2) as u128, self.p) == 1 {
            1
        } else {
            -1
        }
    }
}

fn merge_factors(mut fs: Vec<(u64, u32)>) -> Vec<(u64, u32)> {
    fs.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for (p, e) in fs {
        match out.last_mut() {
            Some((q, f)) if *q == p => *f += e,
            _ => out.push((p, e)),
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn squares_in_prime_fields() {
        let f11 = Fq::prime(11);
        assert!(!f11.is_square(f11.from_u64(8)).unwrap());
        let f29 = Fq::prime(29);
        assert!(f29.is_square(f29.from_u64(5)).unwrap());
        assert!(f29.is_square(f29.zero()).unwrap());
        assert_eq!(Fq::prime(2).is_square(FqElem::new(1, 0)), Err(Error::CharacteristicTwo));
    }

    #[test]
    fn irreducibility_examples() {
        let f11 = Fq::prime(11);
        assert!(f11.quad_poly_irreducible(f11.from_u64(8), f11.from_u64(3)).unwrap());
        assert!(!f11.quad_poly_irreducible(f11.zero(), f11.neg(f11.one())).unwrap());
        let f41 = Fq::prime(41);
        assert!(f41.quad_poly_irreducible(f41.from_u64(39), f41.from_u64(35)).unwrap());
    }

    #[test]
    fn orders() {
        let f11 = Fq::prime(11);
        assert_eq!(f11.element_order(f11.from_u64(8)).unwrap(), 10);
        assert_eq!(f11.element_order(f11.one()).unwrap(), 1);
        assert_eq!(f11.element_order(f11.from_u64(10)).unwrap(), 2);
        assert_eq!(f11.element_order(f11.zero()), Err(Error::ZeroElement));
        // F_49 via X² − X − 1; ω has order 16
        let f49 = Fq::quadratic(7, 1, 6);
        assert_eq!(f49.element_order(FqElem::new(0, 1)).unwrap(), 16);
    }

    #[test]
    fn inverse_and_norm() {
        let f49 = Fq::quadratic(7, 1, 6);
        for x in f49.elements().filter(|x| !x.is_zero()) {
            assert_eq!(f49.mul(x, f49.inv(x).unwrap()), f49.one());
            assert_eq!(f49.norm(x), f49.mul(x, f49.frobenius(x)).c0);
        }
    }
}
