//! Frobenius trace statistics of elliptic curves over F_q.
//!
//! Class masses `P_q(C(t))` weight each isomorphism class `E` by
//! `1 / (q #Aut(E))`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arithfun::{hurwitz, kronecker};
use crate::error::{Error, Result};
use crate::ff::{field_of_order, prime_power, Field, FieldElement};

type Fe = FieldElement;

/// `y^2 = x^3 + a x + b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ShortWeierstrass {
    pub a: Fe,
    pub b: Fe,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TorsionShape {
    Trivial,
    Z3,
    Z3xZ3,
}

impl TorsionShape {
    pub fn from_size(n: u32) -> Self {
        match n {
            1 => TorsionShape::Trivial,
            3 => TorsionShape::Z3,
            9 => TorsionShape::Z3xZ3,
            _ => panic!("3-torsion of size {n}"),
        }
    }
}

impl ShortWeierstrass {
    pub fn new(a: Fe, b: Fe) -> Self {
        ShortWeierstrass { a, b }
    }

    pub fn rhs(&self, f: &Field, x: Fe) -> Fe {
        f.add(f.add(f.mul(x, f.mul(x, x)), f.mul(self.a, x)), self.b)
    }

    /// Whether `4a^3 + 27b^2 = 0`.
    pub fn is_singular(&self, f: &Field) -> bool {
        let a3 = f.mul(self.a, f.mul(self.a, self.a));
        let b2 = f.mul(self.b, self.b);
        f.add(f.mul(f.from_int(4), a3), f.mul(f.from_int(27), b2)).is_zero()
    }

    /// `t = q + 1 - #E(F_q)`.
    pub fn trace(&self, f: &Field) -> i64 {
        -f.elements().map(|x| f.quadratic_character(self.rhs(f, x)) as i64).sum::<i64>()
    }

    pub fn point_count(&self, f: &Field) -> i64 {
        f.q() as i64 + 1 - self.trace(f)
    }

    /// Size of `E(F_q)[3]`, from the roots of `3x^4 + 6ax^2 + 12bx - a^2`.
    pub fn three_torsion(&self, f: &Field) -> u32 {
        let n = |k: i64| f.from_int(k);
        let mut size = 1;
        for x in f.elements() {
            let x2 = f.mul(x, x);
            let psi = [
                f.mul(n(3), f.mul(x2, x2)),
                f.mul(n(6), f.mul(self.a, x2)),
                f.mul(n(12), f.mul(self.b, x)),
                f.neg(f.mul(self.a, self.a)),
            ]
            .into_iter()
            .fold(Fe::ZERO, |acc, v| f.add(acc, v));
            if psi.is_zero() {
                size += match f.quadratic_character(self.rhs(f, x)) {
                    1 => 2,
                    0 => 1,
                    _ => 0,
                };
            }
        }
        size
    }

    /// Lexicographically smallest `(u^4 a, u^6 b)` over `u` in `F_q^*`.
    pub fn canonical(&self, f: &Field) -> (Fe, Fe) {
        f.elements()
            .skip(1)
            .map(|u| {
                let u2 = f.mul(u, u);
                let u4 = f.mul(u2, u2);
                (f.mul(u4, self.a), f.mul(f.mul(u4, u2), self.b))
            })
            .min()
            .expect("q >= 2")
    }

    /// `#Aut(E)` for characteristic at least 5.
    pub fn automorphisms(&self, f: &Field) -> u32 {
        f.elements()
            .skip(1)
            .filter(|&u| {
                let u2 = f.mul(u, u);
                let u4 = f.mul(u2, u2);
                f.mul(u4, self.a) == self.a && f.mul(f.mul(u4, u2), self.b) == self.b
            })
            .count() as u32
    }
}

/// Masses of isomorphism classes by trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceDistribution {
    pub q: u64,
    pub masses: BTreeMap<i64, BigRational>,
    /// Masses of classes with `E(F_q)[3] = Z/3 x Z/3`.
    pub restricted: Option<BTreeMap<i64, BigRational>>,
    /// Masses of classes with `3 | #E(F_q)`.
    pub subgroup_masses: Option<BTreeMap<i64, BigRational>>,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Traces allowed by the Hasse bound.
pub fn hasse_range(q: u64) -> std::ops::RangeInclusive<i64> {
    let m = isqrt(4 * q) as i64;
    -m..=m
}

fn parse_q(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))
}

/// `P_q(C(t))` from class numbers.
pub fn trace_mass_formula(q: u64, t: i64) -> Result<BigRational> {
    let (p, v) = parse_q(q)?;
    let qi = q as i64;
    let pi = p as i64;
    let t2 = t * t;
    if t2 > 4 * qi {
        return Ok(BigRational::zero());
    }
    let half = |x: BigRational| x / BigInt::from(2 * qi);
    let square = v % 2 == 0;
    if !square {
        Ok(if t2 < 4 * qi && t % pi != 0 {
            half(hurwitz(t2 - 4 * qi))
        } else if t == 0 {
            half(hurwitz(-4 * pi))
        } else if t2 == 2 * qi && p == 2 {
            rat(1, 4 * qi)
        } else if t2 == 3 * qi && p == 3 {
            rat(1, 6 * qi)
        } else {
            BigRational::zero()
        })
    } else {
        Ok(if t2 < 4 * qi && t % pi != 0 {
            half(hurwitz(t2 - 4 * qi))
        } else if t == 0 {
            rat(1 - kronecker(-4, p) as i64, 4 * qi)
        } else if t2 == qi {
            rat(1 - kronecker(-3, p) as i64, 6 * qi)
        } else if t2 == 4 * qi {
            rat(pi - 1, 24 * qi)
        } else {
            BigRational::zero()
        })
    }
}

pub fn trace_distribution_formula(q: u64) -> Result<TraceDistribution> {
    let mut masses = BTreeMap::new();
    for t in hasse_range(q) {
        masses.insert(t, trace_mass_formula(q, t)?);
    }
    Ok(TraceDistribution { q, masses, restricted: None, subgroup_masses: None })
}

/// `P_q(C(A_{3,3} t))` from class numbers.
pub fn torsion33_mass_formula(q: u64, t: i64) -> Result<BigRational> {
    let (p, v) = parse_q(q)?;
    let qi = q as i64;
    if t * t > 4 * qi {
        return Ok(BigRational::zero());
    }
    if q % 3 == 1 && t % p as i64 != 0 && (t - qi - 1).rem_euclid(9) == 0 {
        return Ok(hurwitz((t * t - 4 * qi) / 9) / BigInt::from(2 * qi));
    }
    if v % 2 == 0 && p != 3 {
        let r = isqrt(q) as i64;
        if t == 2 * r && r % 3 == 1 {
            return trace_mass_formula(q, t);
        }
        if t == -2 * r && r % 3 == 2 {
            return trace_mass_formula(q, t);
        }
    }
    Ok(BigRational::zero())
}

pub fn torsion33_distribution_formula(q: u64) -> Result<BTreeMap<i64, BigRational>> {
    hasse_range(q).map(|t| Ok((t, torsion33_mass_formula(q, t)?))).collect()
}

/// Trace distribution from all short Weierstrass models over F_q
/// (characteristic at least 5, `q <= 200`), with 3-torsion bucketing.
pub fn trace_distribution_bruteforce(q: u64) -> Result<TraceDistribution> {
    let (p, _) = parse_q(q)?;
    if p < 5 {
        return Err(Error::OutOfScope("short Weierstrass models need characteristic >= 5".into()));
    }
    if q > 200 {
        return Err(Error::OutOfScope(format!("brute-force traces need q <= 200, got {q}")));
    }
    let field = field_of_order(q)?;
    let f = &*field;
    // (trace, 3-torsion size) -> number of models
    let counts: BTreeMap<(i64, u32), u64> = f
        .elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&a| {
            let mut local: BTreeMap<(i64, u32), u64> = BTreeMap::new();
            for b in f.elements() {
                let e = ShortWeierstrass::new(a, b);
                if e.is_singular(f) {
                    continue;
                }
                *local.entry((e.trace(f), e.three_torsion(f))).or_insert(0) += 1;
            }
            local
        })
        .reduce(BTreeMap::new, |mut x, y| {
            for (k, c) in y {
                *x.entry(k).or_insert(0) += c;
            }
            x
        });
    let denom = BigInt::from((q - 1) * q);
    let mut masses: BTreeMap<i64, BigRational> = hasse_range(q).map(|t| (t, BigRational::zero())).collect();
    let mut restricted = masses.clone();
    let mut subgroup = masses.clone();
    for (&(t, tors), &c) in &counts {
        let m = BigRational::new(BigInt::from(c), denom.clone());
        *masses.get_mut(&t).expect("Hasse") += m.clone();
        if tors == 9 {
            *restricted.get_mut(&t).expect("Hasse") += m.clone();
        }
        if tors >= 3 {
            *subgroup.get_mut(&t).expect("Hasse") += m;
        }
    }
    Ok(TraceDistribution { q, masses, restricted: Some(restricted), subgroup_masses: Some(subgroup) })
}

impl TraceDistribution {
    pub fn total_mass(&self) -> BigRational {
        self.masses.values().sum()
    }

    pub fn mass(&self, t: i64) -> BigRational {
        self.masses.get(&t).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `E_q(t^k) = sum_t P_q(C(t)) t^k`.
    pub fn moment(&self, k: u32) -> BigRational {
        self.masses.iter().map(|(&t, m)| m * BigInt::from(t).pow(k)).sum()
    }
}

/// `E_q(t^{2R})` from the class-number formula.
pub fn moments(q: u64, r: u32) -> Result<BigRational> {
    if 2 * r > 10 {
        return Err(Error::InvalidArgument(format!("moment order 2R = {} exceeds 10", 2 * r)));
    }
    Ok(trace_distribution_formula(q)?.moment(2 * r))
}

/// Which 3-torsion condition a restricted moment uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionCondition {
    /// `3 | q + 1 - t`.
    Subgroup,
    /// `E(F_q)[3] = Z/3 x Z/3`.
    Full,
}

/// `E_q(t^R Phi)`: the sum over the relevant traces of `q P t^R`.
pub fn torsion_restricted_moments(q: u64, r: u32, cond: TorsionCondition) -> Result<BigRational> {
    let qi = q as i64;
    let mut s = BigRational::zero();
    for t in hasse_range(q) {
        let (keep, m) = match cond {
            TorsionCondition::Subgroup => ((qi + 1 - t).rem_euclid(3) == 0, trace_mass_formula(q, t)?),
            TorsionCondition::Full => ((qi + 1 - t).rem_euclid(9) == 0, torsion33_mass_formula(q, t)?),
        };
        if keep {
            s += m * BigInt::from(qi) * BigInt::from(t).pow(r);
        }
    }
    Ok(s)
}

/// Classes of short Weierstrass curves with their automorphism counts.
pub fn isomorphism_classes(field: &Field) -> BTreeMap<(u32, u32), (u32, i64)> {
    let mut out = BTreeMap::new();
    for a in field.elements() {
        for b in field.elements() {
            let e = ShortWeierstrass::new(a, b);
            if e.is_singular(field) {
                continue;
            }
            let (ca, cb) = e.canonical(field);
            out.entry((ca.0, cb.0)).or_insert_with(|| (e.automorphisms(field), e.trace(field)));
        }
    }
    out
}

/// The mass `sum 1/#Aut` over classes, which equals `q`.
pub fn class_mass(field: &Field) -> BigRational {
    isomorphism_classes(field).values().map(|&(aut, _)| rat(1, aut as i64)).sum()
}

/// Whether `x` lies in `Z`.
pub fn is_integer(x: &BigRational) -> bool {
    x.denom().is_one()
}

/// `gcd` helper for denominators in reports.
pub fn lcm_denominators<'a>(it: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    it.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formula_examples() {
        assert_eq!(trace_mass_formula(5, 1).unwrap(), rat(1, 10));
        assert_eq!(trace_mass_formula(5, 0).unwrap(), rat(1, 5));
        assert_eq!(trace_mass_formula(25, 10).unwrap(), rat(1, 150));
        assert_eq!(trace_mass_formula(5, 5).unwrap(), BigRational::zero());
    }

    #[test]
    fn q5_distribution_matches_brute() {
        let f = trace_distribution_formula(5).unwrap();
        let b = trace_distribution_bruteforce(5).unwrap();
        assert_eq!(f.masses, b.masses);
        let expect = [(1, rat(1, 10)), (2, rat(3, 20)), (3, rat(1, 10)), (4, rat(1, 20)), (0, rat(1, 5))];
        for (t, m) in expect {
            assert_eq!(f.mass(t), m);
            assert_eq!(f.mass(-t), m);
        }
        assert_eq!(f.total_mass(), BigRational::one());
    }

    #[test]
    fn torsion_examples() {
        let d7 = torsion33_distribution_formula(7).unwrap();
        for (t, m) in &d7 {
            assert_eq!(*m, if *t == -1 { rat(1, 42) } else { BigRational::zero() });
        }
        let d13 = torsion33_distribution_formula(13).unwrap();
        assert_eq!(d13[&5], rat(1, 78));
        assert_eq!(d13[&-4], rat(1, 52));
        assert_eq!(d13.values().filter(|m| !m.is_zero()).count(), 2);
        assert!(torsion33_distribution_formula(5).unwrap().values().all(|m| m.is_zero()));
        let b7 = trace_distribution_bruteforce(7).unwrap();
        assert_eq!(b7.restricted.unwrap(), d7);
    }

    #[test]
    fn moment_examples() {
        assert_eq!(moments(5, 1).unwrap(), rat(24, 5));
        assert_eq!(moments(5, 0).unwrap(), BigRational::one());
        let r5 = BigRational::from_integer(BigInt::from(
            42 * 5i64.pow(6) - 90 * 5i64.pow(4) - 75 * 125 - 35 * 25 - 45 - 1 - 4830,
        )) / BigInt::from(5);
        assert_eq!(moments(5, 5).unwrap(), r5);
        assert_eq!(trace_distribution_formula(7).unwrap().moment(3), BigRational::zero());
        assert_eq!(torsion_restricted_moments(5, 0, TorsionCondition::Subgroup).unwrap(), rat(2, 1));
        assert_eq!(torsion_restricted_moments(7, 1, TorsionCondition::Full).unwrap(), rat(-1, 6));
        assert!(torsion_restricted_moments(5, 3, TorsionCondition::Full).unwrap().is_zero());
    }

    #[test]
    fn class_mass_is_q() {
        for q in [5u64, 7, 11, 25] {
            let f = field_of_order(q).unwrap();
            assert_eq!(class_mass(&f), rat(q as i64, 1));
        }
    }

    #[test]
    fn subgroup_bucketing_matches_congruence() {
        let b = trace_distribution_bruteforce(5).unwrap();
        let sub = b.subgroup_masses.unwrap();
        for (t, m) in &b.masses {
            let expect = if (6 - t) % 3 == 0 { m.clone() } else { BigRational::zero() };
            assert_eq!(sub[t], expect);
        }
    }
}
