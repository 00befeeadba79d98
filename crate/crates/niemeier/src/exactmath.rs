//! Exact integer and rational arithmetic plus the number-theoretic scalar
//! functions feeding the Eisenstein coefficient formulas.
//!
//! Every modular-form coefficient in this crate flows through [`Rational`]
//! even when it is integral; the constants of the weight-12 generator
//! combinations have denominators that must cancel exactly, so no float
//! path exists anywhere.

use std::sync::Mutex;

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always reduced, denominator > 0.
pub type Rational = BigRational;

/// Arbitrary-precision integer.
pub type Integer = BigInt;

/// Rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Arbitrary-precision integer from a machine integer.
pub fn bigint(n: i64) -> BigInt {
    BigInt::from(n)
}

/// True if `r` has denominator 1.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Binomial coefficient C(n, k).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

static BERNOULLI_CACHE: Mutex<Vec<Option<Rational>>> = Mutex::new(Vec::new());

/// Bernoulli number B_n, convention B_1 = -1/2.
///
/// Computed by the recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0 with
/// memoization; the cache is guarded, so concurrent readers are fine.
pub fn bernoulli(n: u32) -> Rational {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    if cache.len() <= n as usize {
        cache.resize(n as usize + 1, None);
    }
    if let Some(v) = &cache[n as usize] {
        return v.clone();
    }
    // Fill everything up to n in one pass; the recurrence needs all of it.
    for m in 0..=n as usize {
        if cache[m].is_some() {
            continue;
        }
        let value = if m == 0 {
            Rational::one()
        } else if m % 2 == 1 && m > 1 {
            Rational::zero()
        } else {
            let mut sum = Rational::zero();
            for k in 0..m {
                let c = binomial(m as u64 + 1, k as u64);
                sum += Rational::from_integer(c) * cache[k].as_ref().unwrap();
            }
            -sum / Rational::from_integer(BigInt::from(m as u64 + 1))
        };
        cache[m] = Some(value);
    }
    cache[n as usize].clone().unwrap()
}

/// Bernoulli polynomial B_n(x) = sum_k C(n,k) B_k x^{n-k}.
pub fn bernoulli_polynomial(n: u32, x: &Rational) -> Rational {
    let mut acc = Rational::zero();
    let mut power = Rational::one(); // x^{n-k}, built from the top down
    let mut powers = Vec::with_capacity(n as usize + 1);
    for _ in 0..=n {
        powers.push(power.clone());
        power *= x;
    }
    for k in 0..=n {
        let c = Rational::from_integer(binomial(n as u64, k as u64));
        acc += c * bernoulli(k) * &powers[(n - k) as usize];
    }
    acc
}

/// Kronecker symbol (a/n), fully general in both arguments.
pub fn kronecker_symbol(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut result = 1i32;
    let mut n = n;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut a = a;
    while n % 2 == 0 {
        n /= 2;
        match a.rem_euclid(8) {
            1 | 7 => {}
            3 | 5 => result = -result,
            _ => return 0,
        }
    }
    // Jacobi symbol for odd positive n.
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Trial-division factorization of a positive integer.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0);
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Moebius function.
pub fn moebius(n: u64) -> i32 {
    let f = factor(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// sigma_k(n) = sum of k-th powers of divisors.
pub fn divisor_sum(n: u64, k: u32) -> BigInt {
    assert!(n >= 1);
    let mut acc = BigInt::one();
    for (p, e) in factor(n) {
        let mut term = BigInt::one();
        let mut pk = BigInt::one();
        let pbig = BigInt::from(p);
        for _ in 0..e {
            pk *= num::pow::pow(pbig.clone(), k as usize);
            term += &pk;
        }
        acc *= term;
    }
    acc
}

/// Divisors of n, unsorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factor(n) {
        let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
        for d in &out {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d * pk);
                pk = pk.saturating_mul(p);
            }
        }
        out = next;
    }
    out
}

/// Whether d is a fundamental discriminant (1 counts as the trivial one).
pub fn is_fundamental_discriminant(d: i64) -> bool {
    if d == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let squarefree = |m: i64| -> bool {
        let m = m.unsigned_abs();
        factor(m).iter().all(|&(_, e)| e == 1)
    };
    if d.rem_euclid(4) == 1 {
        squarefree(d)
    } else if d % 4 == 0 {
        let m = d / 4;
        matches!(m.rem_euclid(4), 2 | 3) && squarefree(m)
    } else {
        false
    }
}

/// Write n = D * f^2 with D fundamental; requires n ≡ 0 or 1 mod 4
/// (sign carried by n itself).
pub fn fundamental_decomposition(n: i64) -> Option<(i64, u64)> {
    if n == 0 {
        return None;
    }
    let mut f = 1u64;
    let a = n.unsigned_abs();
    let mut g = 1u64;
    while g * g <= a {
        g += 1;
    }
    for s in (1..=g).rev() {
        if a % (s * s) == 0 {
            let d = n / (s * s) as i64;
            if is_fundamental_discriminant(d) {
                f = s;
                return Some((d, f));
            }
        }
    }
    let _ = f;
    None
}

/// Generalized Bernoulli number B_{n,chi_D} for the Kronecker character
/// attached to a fundamental discriminant D.
///
/// B_{n,chi} = |D|^{n-1} sum_{a=1}^{|D|} chi(a) B_n(a/|D|); for D = 1 this
/// reduces to the ordinary Bernoulli number (with B_1 = -1/2).
pub fn generalized_bernoulli(n: u32, d: i64) -> Result<Rational> {
    if !is_fundamental_discriminant(d) {
        return Err(Error::NotFundamentalDiscriminant(d));
    }
    if d == 1 {
        return Ok(bernoulli(n));
    }
    let m = d.unsigned_abs() as i64;
    let mut sum = Rational::zero();
    for a in 1..=m {
        let chi = kronecker_symbol(d, a);
        if chi == 0 {
            continue;
        }
        let x = rat(a, m);
        sum += int(chi as i64) * bernoulli_polynomial(n, &x);
    }
    let scale = num::pow::pow(int(m), n as usize - 1);
    Ok(scale * sum)
}

/// Exact floor of a rational.
pub fn floor_rational(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Residue of a rational with denominator coprime to m, as an integer in
/// [0, m). Returns None when the denominator is not invertible mod m.
pub fn residue_mod(r: &Rational, m: u64) -> Option<u64> {
    let mbig = BigInt::from(m);
    let den = r.denom().mod_floor_u(&mbig);
    let (g, inv) = mod_inverse(&den, &mbig)?;
    if !g.is_one() {
        return None;
    }
    let num = r.numer().mod_floor_u(&mbig);
    let res = (num * inv) % &mbig;
    res.to_u64()
}

trait ModFloorU {
    fn mod_floor_u(&self, m: &BigInt) -> BigInt;
}

impl ModFloorU for BigInt {
    fn mod_floor_u(&self, m: &BigInt) -> BigInt {
        let r = self % m;
        if r.sign() == Sign::Minus {
            r + m
        } else {
            r
        }
    }
}

trait ToU64 {
    fn to_u64(&self) -> Option<u64>;
}

impl ToU64 for BigInt {
    fn to_u64(&self) -> Option<u64> {
        num::ToPrimitive::to_u64(self)
    }
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<(BigInt, BigInt)> {
    // Extended Euclid; returns (gcd, inverse of a mod m when gcd = 1).
    let (mut r0, mut r1) = (m.clone(), a.mod_floor_u(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        r0 = std::mem::replace(&mut r1, r2);
        let t2 = &t0 - &q * &t1;
        t0 = std::mem::replace(&mut t1, t2);
    }
    Some((r0, t0.mod_floor_u(m)))
}
