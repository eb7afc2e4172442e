//! Acceptance criteria for the worked example over Q(√5), weight (2, 4),
//! level (3+ω). Each criterion prints one PASS/FAIL line; the process fails
//! if any criterion fails.
//!
//! Oracles here are written against plain integers and do not call the
//! arithmetic they check.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use hmfdef::{load_newform, parse_newform, serialize_newform};
use hmfdef_core::audit::{recheck, run_audit, AuditConfig, Overall};
use hmfdef_core::image::{
    enumerate_quadratic_exts, exceptional_groups_bound, exceptional_set, inert_in_ext, reduce_charpoly,
    witness_irreducible_where, DihedralAnalysis, InertConstExponent, NonDihedral,
};
use hmfdef_core::local::LocalGate;
use hmfdef_core::{FieldElement, FormSet, Fq, FqElem, NewformRecord, PrimeIdeal, QuadField, SplitType, Status};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn data_file() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/q5_k2-4_level_3+w.json")
}

fn form() -> NewformRecord {
    load_newform(&data_file()).expect("fixture parses")
}

fn q5() -> QuadField {
    QuadField::new(5).unwrap()
}

/// `(generator in the ω basis, eigenvalue x + y√5)` for the table rows.
const TABLE: [((i64, i64), (i64, i64)); 11] = [
    ((2, 0), (-10, -2)),
    ((-1, 2), (-5, 5)),
    ((3, 0), (0, -6)),
    ((4, -1), (17, -15)),
    ((4, 1), (-60, 44)),
    ((5, -1), (55, 15)),
    ((5, 1), (-20, 14)),
    ((6, -1), (0, -58)),
    ((-2, 5), (-3, -15)),
    ((-3, 5), (-118, -30)),
    ((7, 0), (-35, 91)),
];

// ---------- integer oracles ----------

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn primes_below(n: u64) -> Vec<u64> {
    (2..n).filter(|&p| is_prime(p)).collect()
}

fn trial_factor(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs().to_u64().expect("small");
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn modp(a: i64, p: u64) -> u64 {
    a.rem_euclid(p as i64) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Roots of `x² − x − 1` mod `p` (the images of ω), by search.
fn omega_roots(p: u64) -> Vec<u64> {
    (0..p).filter(|&x| (x * x + 2 * p - x - 1).is_multiple_of(p)).collect()
}

fn squares_mod(p: u64) -> BTreeSet<u64> {
    (0..p).map(|x| x * x % p).collect()
}

/// `X² − c1X + c0` has a root mod `p`, by search.
fn has_root_mod(c1: u64, c0: u64, p: u64) -> bool {
    (0..p).any(|x| (x * x + c0 + p * p - c1 * x % p).is_multiple_of(p))
}

/// `ω^n = (L_n + F_n√5)/2` from the Lucas and Fibonacci recurrences.
fn omega_power_half_basis(n: u32) -> (BigInt, BigInt) {
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    let (mut l0, mut l1) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let f2 = &f0 + &f1;
        let l2 = &l0 + &l1;
        f0 = std::mem::replace(&mut f1, f2);
        l0 = std::mem::replace(&mut l1, l2);
    }
    (l0, f0)
}

/// `N(ω^n + s)` for a rational `s`.
fn norm_omega_power_plus(n: u32, s: i64) -> BigInt {
    let (l, f) = omega_power_half_basis(n);
    let x = l + 2 * s;
    (&x * &x - BigInt::from(5) * &f * &f) / 4
}

// ---------- criteria ----------

fn criterion_1() -> Check {
    let f = form();
    ensure!(
        norm_omega_power_plus(10, -1) == BigInt::from(-121),
        "N(ω^10 − 1) ≠ −11²"
    );
    ensure!(
        norm_omega_power_plus(20, 1) == BigInt::from(9 * 41 * 41),
        "N(ω^20 + 1) ≠ 3²·41²"
    );
    ensure!(
        norm_omega_power_plus(25, -1) == BigInt::from(-11 * 101 * 151),
        "N(ω^25 − 1) ≠ −11·101·151"
    );

    let set = exceptional_set(&f, &[1, 2, 4, 5], 1_000_000).map_err(|e| e.to_string())?;
    for (i, exp) in [10u32, 20, 40, 50].into_iter().enumerate() {
        let oracle = norm_omega_power_plus(exp, -1);
        ensure!(
            set.unit_powers[i].norm == oracle.to_string(),
            "norm of ω^{exp} − 1 disagrees with expansion"
        );
    }
    let oracle_primes: BTreeSet<u64> = [10u32, 20, 40, 50]
        .iter()
        .flat_map(|&e| trial_factor(&norm_omega_power_plus(e, -1)))
        .collect();
    ensure!(
        set.rational_primes.iter().copied().collect::<BTreeSet<_>>() == oracle_primes,
        "rational primes differ"
    );

    let got: BTreeSet<(u64, u64)> = set
        .lambdas
        .iter()
        .filter(|l| l.p >= 11 && !f.lambda_divides_level(l))
        .map(|l| (l.p, l.root.unwrap_or(u64::MAX)))
        .collect();
    // (4 − ω) is ω ≡ 4 mod 11; the level (3 + ω) is ω ≡ 8.
    let mut expected: BTreeSet<(u64, u64)> = BTreeSet::from([(11, 4)]);
    for p in [41, 101, 151] {
        expected.extend(omega_roots(p).into_iter().map(|r| (p, r)));
    }
    ensure!(
        got == expected,
        "exclusion set above 11 is {got:?}, expected {expected:?}"
    );
    Ok(())
}

fn criterion_2() -> Check {
    let f = form();
    let kf = q5();
    // (4 − ω): ω ≡ 4, √5 = 2ω − 1 ≡ 7 mod 11
    let sqrt5 = 7u64;
    let trace = modp(-35 + 91 * sqrt5 as i64, 11);
    let constant = powmod(7, 4, 11);
    ensure!(
        (trace, constant) == (8, 3),
        "oracle reduction gives X² − {trace}X + {constant}"
    );
    ensure!(!has_root_mod(8, 3, 11), "X² − 8X + 3 has a root mod 11");
    let lam = kf.prime_ideal(11, 1, Some(4)).unwrap();
    let seven = kf.primes_over(7).unwrap()[0];
    let w = reduce_charpoly(&f, &lam, &seven, InertConstExponent::K0).map_err(|e| e.to_string())?;
    ensure!(
        w.trace == FqElem::new(8, 0) && w.constant == FqElem::new(3, 0) && w.irreducible,
        "witness (7) at (4 − ω) is {w:?}"
    );

    let mut count = 0;
    for p in [41u64, 101, 151] {
        for r in omega_roots(p) {
            let sqrt5 = (2 * r + p - 1) % p;
            let oracle_ok = TABLE.iter().any(|&((a, b), (x, y))| {
                let norm = (a * a + a * b - b * b).unsigned_abs();
                (norm == 29 || norm == 31) && {
                    let c = modp(x + y * sqrt5 as i64, p);
                    !has_root_mod(c, powmod(norm, 3, p), p)
                }
            });
            ensure!(oracle_ok, "oracle finds no witness over 29/31 for λ = ({p}, ω − {r})");
            let lam = kf.prime_ideal(p, 1, Some(r)).unwrap();
            let w = witness_irreducible_where(&f, &lam, InertConstExponent::K0, |q| q.p == 29 || q.p == 31)
                .ok_or_else(|| format!("no witness over 29/31 for ({p}, ω − {r})"))?;
            let (c1, c0) = (w.trace.c0, w.constant.c0);
            ensure!(
                !has_root_mod(c1, c0, p),
                "reported witness {} has a root mod {p}",
                w.prime
            );
            count += 1;
        }
    }
    ensure!(count == 6, "expected six λ over 41, 101, 151, found {count}");
    Ok(())
}

fn criterion_3() -> Check {
    let f = form();
    let field = q5();
    let exts = enumerate_quadratic_exts(&field, &FieldElement::new(3, 1)).map_err(|e| e.to_string())?;
    // ω(3 + ω) = 3ω + ω² = 1 + 4ω
    ensure!(exts == [FieldElement::new(1, 4)], "extensions {exts:?}");

    for ((a, b), p, expected_delta) in [((5, 1), 29u64, 10u64), ((-2, 5), 31, 15)] {
        // ω ≡ −a/b mod p
        let binv = powmod(modp(b, p), p - 2, p);
        let w = modp(-a, p) * binv % p;
        let delta = (1 + 4 * w) % p;
        ensure!(delta == expected_delta, "δ mod ({a}+{b}ω) is {delta}");
        ensure!(!squares_mod(p).contains(&delta), "δ is a square mod {p}");
        let prime = field.prime_of_generator(&FieldElement::new(a, b)).unwrap();
        ensure!(
            inert_in_ext(&field, &exts[0], &prime) == Ok(true),
            "{prime} not certified inert"
        );
    }

    for ((x, y), expected) in [((-20i64, 14i64), vec![2u64, 5, 29]), ((-3, -15), vec![2, 3, 31])] {
        let norm = BigInt::from(x * x - 5 * y * y);
        ensure!(trial_factor(&norm) == expected, "oracle support of {x}{y:+}√5");
        let c = field.from_sqrt_basis(x, y);
        ensure!(
            field.norm_support(&c, 1000).unwrap() == expected,
            "support of {x}{y:+}√5"
        );
    }

    let d = DihedralAnalysis::new(&f);
    for ell in primes_below(400).into_iter().filter(|&l| l >= 11) {
        for lam in field.primes_over(ell).unwrap() {
            let bad = matches!(d.certify(&f, &lam), NonDihedral::Bad(_));
            ensure!(bad == f.lambda_divides_level(&lam), "dihedral verdict at {lam}");
        }
    }
    let vanishing = d.vanishing_set(&f, 1_000_000).map_err(|e| e.to_string())?;
    ensure!(vanishing.iter().all(|l| l.p < 11), "vanishing set {vanishing:?}");
    Ok(())
}

fn criterion_4() -> Check {
    let oracle = (2u64..).find(|&l| is_prime(l) && (l - 1) * 2 > 5 * (1 + 3)).unwrap();
    let got = exceptional_groups_bound(&[2, 4]);
    ensure!(got == 13 && oracle == 13, "bound {got}, oracle {oracle}");
    Ok(())
}

fn criterion_5() -> Check {
    let forms = FormSet::new(form());
    let config = AuditConfig::default();
    let report = run_audit(&forms, &config, 7, 200).map_err(|e| e.to_string())?;
    let kf = q5();
    let expected_count: usize = primes_below(201)
        .into_iter()
        .filter(|&p| p >= 7)
        .map(|p| kf.primes_over(p).unwrap().len())
        .sum();
    ensure!(report.per_lambda.len() == expected_count, "per-λ count");
    for a in &report.per_lambda {
        if a.ell >= 13 && !a.divides_level {
            ensure!(a.overall == Overall::Unobstructed, "{} is {:?}", a.lambda, a.overall);
        }
    }
    ensure!(report.bound_b == Some(13), "bound B = {:?}", report.bound_b);
    let problems = recheck(&report, &forms);
    ensure!(problems.is_empty(), "recheck: {problems:?}");

    let special_fail = |a: &hmfdef_core::audit::LambdaAudit, needle: &str| {
        a.local
            .iter()
            .any(|v| v.gate == LocalGate::Special && matches!(&v.status, Status::Fail(r) if r.contains(needle)))
    };
    let l11 = kf.prime_ideal(11, 1, Some(4)).unwrap();
    let a11 = report.lambda(&l11).ok_or("(4 − ω) missing")?;
    ensure!(
        matches!(a11.overall, Overall::Excluded(_)),
        "(4 − ω) is {:?}",
        a11.overall
    );
    ensure!(
        special_fail(a11, "2·11·120"),
        "(4 − ω) special gate does not name 2·11·120"
    );
    ensure!(
        report.discrepancies.len() == 1 && report.discrepancies[0].contains("(11, ω-4)"),
        "discrepancies {:?}",
        report.discrepancies
    );

    let l7 = kf.primes_over(7).unwrap()[0];
    let a7 = report.lambda(&l7).ok_or("λ over 7 missing")?;
    ensure!(
        a7.local.iter().any(|v| v.gate == LocalGate::EllPlace
            && matches!(&v.status, Status::Fail(r) if r.contains("ℓ > 2k0 = 8"))),
        "ℓ = 7 not excluded by ℓ > 2k0"
    );

    let low = run_audit(&forms, &config, 5, 5).map_err(|e| e.to_string())?;
    let a5 = &low.per_lambda[0];
    ensure!(special_fail(a5, "2·11·120"), "ℓ = 5 special gate");
    ensure!(
        matches!(&a5.selmer.status, Status::Fail(r) if r.contains("ℓ > 5")),
        "ℓ = 5 selmer gate"
    );
    Ok(())
}

fn criterion_6() -> Check {
    // Euler's criterion against exhaustive squares
    for p in primes_below(200).into_iter().filter(|&p| p > 2) {
        let k = Fq::prime(p);
        let sq = squares_mod(p);
        for a in 0..p {
            ensure!(
                k.is_square(k.from_u64(a)).unwrap() == sq.contains(&a),
                "Euler at {a} mod {p}"
            );
        }
    }
    // irreducibility against root search: every odd q < 2500
    let field = q5();
    for p in primes_below(2500).into_iter().filter(|&p| p > 2) {
        let k = Fq::prime(p);
        let c1s: Vec<u64> = if p < 200 {
            (0..p).collect()
        } else {
            (0..p).step_by((p / 16) as usize).collect()
        };
        for c1 in c1s {
            let reducible: BTreeSet<u64> = (0..p).map(|r| r * ((c1 + p - r) % p) % p).collect();
            for c0 in 0..p {
                let got = k.quad_poly_irreducible(k.from_u64(c1), k.from_u64(c0)).unwrap();
                ensure!(got == !reducible.contains(&c0), "X² − {c1}X + {c0} over F_{p}");
            }
        }
    }
    for p in primes_below(50)
        .into_iter()
        .filter(|&p| p > 2 && omega_roots(p).is_empty())
    {
        let k = field.residue_field(&field.primes_over(p).unwrap()[0]);
        let elems: Vec<FqElem> = k.elements().collect();
        for &c1 in elems.iter().step_by(3) {
            let reducible: BTreeSet<FqElem> = elems.iter().map(|&r| k.mul(r, k.sub(c1, r))).collect();
            for &c0 in &elems {
                let got = k.quad_poly_irreducible(c1, c0).unwrap();
                ensure!(got == !reducible.contains(&c0), "X² − {c1}X + {c0} over F_{}", p * p);
            }
        }
    }
    ensure!(
        Fq::prime(2)
            .quad_poly_irreducible(FqElem::new(1, 0), FqElem::new(1, 0))
            .is_err(),
        "q = 2"
    );

    // splitting against Kronecker symbol and root search
    for d in [5i64, 2, 3, 13, 17] {
        let f = QuadField::new(d).unwrap();
        let disc = f.discriminant();
        for p in primes_below(500) {
            let kron = if disc % p as i64 == 0 {
                0
            } else if p == 2 {
                if disc.rem_euclid(8) == 1 || disc.rem_euclid(8) == 7 {
                    1
                } else {
                    -1
                }
            } else if squares_mod(p).contains(&modp(disc, p)) {
                1
            } else {
                -1
            };
            let t = modp(f.omega_trace(), p);
            let n = modp(f.omega_norm(), p);
            let roots: Vec<u64> = (0..p)
                .filter(|&x| (x * x + n + p * p - t * x).is_multiple_of(p))
                .collect();
            let got = f.split_type(p).unwrap();
            let expected = match kron {
                1 => SplitType::Split,
                -1 => SplitType::Inert,
                _ => SplitType::Ramified,
            };
            ensure!(got == expected, "split type of {p} in Q(√{d})");
            let over: Vec<Option<u64>> = f.primes_over(p).unwrap().iter().map(|q| q.root).collect();
            let from_roots: Vec<Option<u64>> = if roots.is_empty() {
                vec![None]
            } else {
                roots.iter().map(|&r| Some(r)).collect()
            };
            ensure!(over == from_roots, "primes over {p} in Q(√{d})");
        }
    }

    // order of ω modulo the level: ω ≡ 8 mod (3 + ω)
    let mut x = 8u64;
    let mut order = 1;
    while x != 1 {
        x = x * 8 % 11;
        order += 1;
    }
    let n = field.prime_of_generator(&FieldElement::new(3, 1)).unwrap();
    let got = field.unit_order_mod(&FieldElement::omega(), &n).unwrap();
    ensure!(order == 10 && got == 10, "order of ω mod n: {got}, oracle {order}");

    // fundamental units against brute-force Pell search, in the (x + y√D)/2 basis
    for d in [2i64, 3, 5, 13, 17] {
        let f = QuadField::new(d).unwrap();
        let targets: &[i64] = if d % 4 == 1 { &[4, -4] } else { &[1, -1] };
        let (x, y) = (1i64..)
            .find_map(|y| {
                targets
                    .iter()
                    .filter_map(|&t| {
                        let x2 = d * y * y + t;
                        let x = (x2 as f64).sqrt().round() as i64;
                        (x > 0 && x * x == x2).then_some((x, y))
                    })
                    .min()
            })
            .unwrap();
        let (hx, hy) = if d % 4 == 1 { (x, y) } else { (2 * x, 2 * y) };
        let got = f.to_half_sqrt_basis(&f.fundamental_unit());
        ensure!(
            got == (BigInt::from(hx), BigInt::from(hy)),
            "fundamental unit of Q(√{d})"
        );
    }
    Ok(())
}

fn criterion_7() -> Check {
    let bytes = std::fs::read(data_file()).map_err(|e| e.to_string())?;
    let f = parse_newform(&bytes).map_err(|e| e.to_string())?;
    let field = q5();
    ensure!(f.eigenvalues().len() == TABLE.len(), "row count");
    for (row, &((a, b), (x, y))) in f.eigenvalues().iter().zip(TABLE.iter()) {
        let p: PrimeIdeal = field.prime_of_generator(&FieldElement::new(a, b)).unwrap();
        ensure!(row.prime == p, "row order at {p}");
        ensure!(row.x == BigInt::from(x) && row.y == BigInt::from(y), "value at {p}");
        ensure!(
            f.lookup_eigenvalue(&p) == Some(&field.from_sqrt_basis(x, y)),
            "lookup at {p}"
        );
    }
    let once = serialize_newform(&f);
    let again = parse_newform(once.as_bytes()).map_err(|e| e.to_string())?;
    ensure!(again == f, "record changed through serialize/parse");
    ensure!(serialize_newform(&again) == once, "serialization is not stable");
    for (r, s) in f.eigenvalues().iter().zip(again.eigenvalues()) {
        ensure!(
            r.x == s.x && r.y == s.y && r.basis == s.basis,
            "row {} not bit-exact",
            r.prime
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("exclusion set above 11 and unit-power norms", criterion_1),
        ("irreducibility witnesses", criterion_2),
        ("dihedral step", criterion_3),
        ("exceptional-image weight bound", criterion_4),
        ("full audit over [7, 200]", criterion_5),
        ("oracle equivalence suites", criterion_6),
        ("eigenvalue file round trip", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {}: PASS ({name})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}): {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
