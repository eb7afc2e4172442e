//! Word-sized modular arithmetic, primality, and integer factorization.
//!
//! Everything here works on `u64` moduli with `u128` intermediates, except
//! [`factor_integer`] which accepts arbitrary-precision input and reports
//! honestly when a cofactor cannot be resolved.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::Error;

/// Default trial-division bound used when factoring norms.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

#[inline]
pub fn sub_mod(a: u64, b: u64, m: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + m as u128 - b as u128) % m as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u128, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo the prime `p`; `None` when `a ≡ 0`.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, (p - 2) as u128, p))
    }
}

/// Reduce an arbitrary-precision integer into `[0, m)`.
pub fn bigint_mod(x: &BigInt, m: u64) -> u64 {
    let r = x.mod_floor(&BigInt::from(m));
    r.to_u64().expect("residue fits in u64")
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in BASES.iter() {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in BASES.iter() {
        let mut x = pow_mod(a, d as u128, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Next prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut c = n + 1;
    while !is_prime_u64(c) {
        c += 1;
    }
    c
}

/// All primes in the closed interval `[lo, hi]`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime_u64(n)).collect()
}

/// Factor `n` by trial division up to `trial_bound`, then accept a remaining
/// cofactor only if it is provably prime: either below `trial_bound²`, or a
/// `u64` passing the deterministic Miller-Rabin test. Anything else is
/// reported as [`Error::FactorizationIncomplete`].
///
/// Returns `(prime, exponent)` pairs in increasing prime order. `n = 0` is
/// rejected; `n = 1` gives the empty factorization.
pub fn factor_integer(n: &BigUint, trial_bound: u64) -> Result<Vec<(u64, u32)>, Error> {
    if n.is_zero() {
        return Err(Error::ZeroNotFactorable);
    }
    let mut rest = n.clone();
    let mut out = Vec::new();
    let mut d = 2u64;
    while d <= trial_bound {
        let dd = BigUint::from(d);
        if &dd * &dd > rest {
            break;
        }
        let mut e = 0u32;
        while (&rest % &dd).is_zero() {
            rest /= &dd;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    if rest.is_one() {
        return Ok(out);
    }
    let cleared = {
        let b = BigUint::from(d);
        &b * &b > rest
    };
    let accepted = match rest.to_u64() {
        Some(r) if cleared || is_prime_u64(r) => Some(r),
        _ => None,
    };
    match accepted {
        Some(r) => {
            out.push((r, 1));
            Ok(out)
        }
        None => Err(Error::FactorizationIncomplete {
            cofactor: rest.to_str_radix(10),
        }),
    }
}

/// Factor a machine-sized integer (used for group orders).
pub fn factor_u64(n: u64, trial_bound: u64) -> Result<Vec<(u64, u32)>, Error> {
    factor_integer(&BigUint::from(n), trial_bound)
}

/// Factor a `u128` (orders of `F_{p²}^×` for word-sized `p`).
pub fn factor_u128(n: u128, trial_bound: u64) -> Result<Vec<(u64, u32)>, Error> {
    factor_integer(&BigUint::from(n), trial_bound)
}

/// A square root of `a` modulo the odd prime `p` (Tonelli-Shanks), or `None`
/// when `a` is a non-residue.
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if pow_mod(a, ((p - 1) / 2) as u128, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(a, ((p + 1) / 4) as u128, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while pow_mod(z, ((p - 1) / 2) as u128, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q as u128, p);
    let mut t = pow_mod(a, q as u128, p);
    let mut r = pow_mod(a, q.div_ceil(2) as u128, p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mul_mod(tt, tt, p);
            i += 1;
        }
        let mut b = c;
        for _ in 0..(m - i - 1) {
            b = mul_mod(b, b, p);
        }
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Whether `n` (nonzero) is squarefree, by trial division.
pub fn is_squarefree(n: u64) -> bool {
    if n == 0 {
        return false;
    }
    let mut n = n;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return false;
            }
        }
        d += 1;
    }
    true
}

/// Exact valuation of a nonzero integer at the prime `p`.
pub fn valuation(x: &BigInt, p: u64) -> u32 {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    while (&x % &pb).is_zero() {
        x /= &pb;
        v += 1;
    }
    v
}
