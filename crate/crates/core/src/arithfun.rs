//! Kronecker symbols, class numbers of imaginary quadratic orders,
//! Hurwitz–Kronecker class numbers and Ramanujan's tau function.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    r
}

fn legendre(a: i64, p: u64) -> i32 {
    let r = a.rem_euclid(p as i64) as u64;
    if r == 0 {
        return 0;
    }
    if pow_mod(r, (p - 1) / 2, p) == 1 { 1 } else { -1 }
}

/// The Kronecker symbol `(a / n)`, completely multiplicative in `n`.
pub fn kronecker(a: i64, n: u64) -> i32 {
    assert!(n >= 1, "kronecker symbol needs n >= 1");
    let mut n = n;
    let mut out = 1i32;
    while n.is_multiple_of(2) {
        n /= 2;
        out *= match a.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let mut p = 3u64;
    while p * p <= n {
        while n.is_multiple_of(p) {
            n /= p;
            out *= legendre(a, p);
        }
        p += 2;
    }
    if n > 1 {
        out *= legendre(a, n);
    }
    out
}

fn is_discriminant(d: i64) -> bool {
    d < 0 && matches!(d.rem_euclid(4), 0 | 1)
}

/// Reduced positive-definite forms `(a, b, c)` of discriminant `d`,
/// primitive or not.
fn reduced_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            if (b - d).rem_euclid(2) != 0 {
                continue;
            }
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            out.push((a, b, c));
        }
        a += 1;
    }
    out
}

/// Class number `h(d)` of the order of discriminant `d`, counted as
/// reduced primitive forms.
pub fn class_number(d: i64) -> Result<u64> {
    if !is_discriminant(d) {
        return Err(Error::InvalidDiscriminant(d));
    }
    Ok(reduced_forms(d).into_iter().filter(|&(a, b, c)| a.gcd(&b).gcd(&c) == 1).count() as u64)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `h_w(d)`: `h/3` at `-3`, `h/2` at `-4`, `h` at other discriminants, else 0.
pub fn weighted_class_number(d: i64) -> BigRational {
    if !is_discriminant(d) {
        return BigRational::zero();
    }
    let h = class_number(d).expect("discriminant") as i64;
    match d {
        -3 => rat(h, 3),
        -4 => rat(h, 2),
        _ => rat(h, 1),
    }
}

/// Hurwitz–Kronecker class number `H(delta) = sum_{f^2 | delta} h_w(delta / f^2)`.
pub fn hurwitz(delta: i64) -> BigRational {
    if delta >= 0 {
        return BigRational::zero();
    }
    let mut s = BigRational::zero();
    let mut f = 1i64;
    while f * f <= -delta {
        if delta % (f * f) == 0 {
            s += weighted_class_number(delta / (f * f));
        }
        f += 1;
    }
    s
}

/// `H(delta)` as a weighted count of all reduced forms of discriminant
/// `delta`, with forms proportional to `x^2 + y^2` weighted 1/2 and forms
/// proportional to `x^2 + xy + y^2` weighted 1/3.
pub fn hurwitz_by_forms(delta: i64) -> BigRational {
    if !is_discriminant(delta) {
        return BigRational::zero();
    }
    reduced_forms(delta)
        .into_iter()
        .map(|(a, b, c)| {
            if b == 0 && a == c {
                rat(1, 2)
            } else if b == a && a == c {
                rat(1, 3)
            } else {
                BigRational::one()
            }
        })
        .sum()
}

/// Class numbers, weighted class numbers and Hurwitz numbers for `|d| <= bound`.
#[derive(Clone, Debug)]
pub struct ClassNumberTable {
    pub bound: u64,
    pub h: BTreeMap<i64, u64>,
    pub hw: BTreeMap<i64, BigRational>,
    pub big_h: BTreeMap<i64, BigRational>,
}

impl ClassNumberTable {
    pub fn new(bound: u64) -> Self {
        let mut h = BTreeMap::new();
        let mut hw = BTreeMap::new();
        let mut big_h = BTreeMap::new();
        for m in 1..=bound as i64 {
            let d = -m;
            if is_discriminant(d) {
                h.insert(d, class_number(d).expect("discriminant"));
                hw.insert(d, weighted_class_number(d));
            }
            big_h.insert(d, hurwitz(d));
        }
        ClassNumberTable { bound, h, hw, big_h }
    }
}

/// `tau(n)` for `1 <= n <= bound`, from `q prod_{m >= 1} (1 - q^m)^24`.
#[derive(Clone, Debug)]
pub struct TauTable {
    pub bound: u64,
    values: Vec<BigInt>,
}

fn mul_truncated(a: &[BigInt], b: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `prod_{k >= 1} (1 - x^{mk})` truncated below `x^len`.
fn euler_product(m: usize, len: usize) -> Vec<BigInt> {
    let mut e = vec![BigInt::zero(); len];
    e[0] = BigInt::one();
    for step in (m..len).step_by(m) {
        for i in (step..len).rev() {
            let t = e[i - step].clone();
            e[i] -= t;
        }
    }
    e
}

fn power_truncated(base: &[BigInt], mut e: u32, len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    out[0] = BigInt::one();
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            out = mul_truncated(&out, &b, len);
        }
        e >>= 1;
        if e > 0 {
            b = mul_truncated(&b, &b, len);
        }
    }
    out
}

/// Coefficients of `x^1 .. x^len` in `x prod_{(m, e)} prod_k (1 - x^{mk})^e`,
/// the eta quotient `prod eta(m tau)^e` when `sum m e = 24`.
pub fn eta_product(factors: &[(usize, u32)], len: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::zero(); len];
    if len == 0 {
        return acc;
    }
    acc[0] = BigInt::one();
    for &(m, e) in factors {
        acc = mul_truncated(&acc, &power_truncated(&euler_product(m, len), e, len), len);
    }
    acc
}

impl TauTable {
    pub const MAX_BOUND: u64 = 10_000;

    pub fn new(bound: u64) -> Result<Self> {
        if bound == 0 || bound > Self::MAX_BOUND {
            return Err(Error::TauOutOfRange { n: bound, bound: Self::MAX_BOUND });
        }
        Ok(TauTable { bound, values: eta_product(&[(1, 24)], bound as usize) })
    }

    pub fn get(&self, n: u64) -> Result<BigInt> {
        if n == 0 || n > self.bound {
            return Err(Error::TauOutOfRange { n, bound: self.bound });
        }
        Ok(self.values[n as usize - 1].clone())
    }
}

/// `tau(n)`, requiring `n <= bound <= 10^4`.
pub fn tau(n: u64, bound: u64) -> Result<BigInt> {
    if n > bound {
        return Err(Error::TauOutOfRange { n, bound });
    }
    TauTable::new(bound)?.get(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_examples() {
        assert_eq!(kronecker(3, 2), -1);
        assert_eq!(kronecker(2, 2), 0);
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-3, 7), 1);
        assert_eq!(kronecker(-3, 5), -1);
        assert_eq!(kronecker(5, 1), 1);
        // multiplicativity in n
        for a in -20..20 {
            for m in 1..15u64 {
                for n in 1..15u64 {
                    assert_eq!(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n));
                }
            }
        }
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(-3).unwrap(), 1);
        assert_eq!(class_number(-4).unwrap(), 1);
        assert_eq!(class_number(-23).unwrap(), 3);
        assert_eq!(class_number(-20).unwrap(), 2);
        assert_eq!(class_number(-163).unwrap(), 1);
        assert!(class_number(-5).is_err());
        assert!(class_number(4).is_err());
    }

    #[test]
    fn hurwitz_values() {
        assert_eq!(hurwitz(-3), rat(1, 3));
        assert_eq!(hurwitz(-16), rat(3, 2));
        assert_eq!(hurwitz(-20), rat(2, 1));
        assert_eq!(hurwitz(-19), rat(1, 1));
        assert_eq!(hurwitz(-5), BigRational::zero());
        for m in 1..=200 {
            assert_eq!(hurwitz(-m), hurwitz_by_forms(-m), "delta = -{m}");
        }
    }

    #[test]
    fn tau_values() {
        let t = TauTable::new(200).unwrap();
        let v = |n| t.get(n).unwrap();
        assert_eq!(v(1), BigInt::from(1));
        assert_eq!(v(2), BigInt::from(-24));
        assert_eq!(v(5), BigInt::from(4830));
        assert_eq!(v(7), BigInt::from(-16744));
        assert_eq!(v(11), BigInt::from(534612));
        assert_eq!(v(13), BigInt::from(-577738));
        for m in 1..=100u64 {
            for n in 1..=100u64 {
                if m * n <= 200 && m.gcd(&n) == 1 {
                    assert_eq!(v(m * n), v(m) * v(n));
                }
            }
        }
        for p in [2u64, 3, 5, 7, 11, 13] {
            assert_eq!(v(p * p), v(p) * v(p) - BigInt::from(p).pow(11));
        }
        assert!(tau(8, 7).is_err());
        assert!(t.get(201).is_err());
    }

    #[test]
    fn eta_quotient_examples() {
        let a = eta_product(&[(3, 8)], 10);
        assert_eq!(a[0], BigInt::from(1));
        assert_eq!(a[3], BigInt::from(-8));
        assert_eq!(a[6], BigInt::from(20));
        assert!(a[1].is_zero() && a[2].is_zero());
    }
}
