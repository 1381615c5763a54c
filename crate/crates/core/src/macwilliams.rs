//! MacWilliams transform and the low-weight dual coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arithfun::TauTable;
use crate::ecstats::{hasse_range, torsion33_mass_formula, torsion_restricted_moments, trace_mass_formula, TorsionCondition};
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::ff::{is_prime, prime_power};
use crate::formulas::gl3_order;

/// Homogeneous polynomial of degree `n`; `coeffs[i]` multiplies `X^{n-i} Y^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPolynomial {
    pub n: usize,
    pub coeffs: BTreeMap<usize, BigRational>,
}

impl ExactPolynomial {
    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * (n - k + 1) / k;
    }
    row
}

struct Binomials(Vec<Vec<BigInt>>);

impl Binomials {
    fn new(n: usize) -> Self {
        Binomials((0..=n).map(binomial_row).collect())
    }

    fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n { BigInt::zero() } else { self.0[n][k].clone() }
    }
}

/// Coefficient of `Y^j` in `(X + (q-1)Y)^a (X - Y)^b`.
fn mixed_coefficient(bin: &Binomials, qm1: &[BigInt], a: usize, b: usize, j: usize) -> BigInt {
    let mut s = BigInt::zero();
    for u in 0..=j.min(a) {
        let v = j - u;
        if v > b {
            continue;
        }
        let term = bin.get(a, u) * &qm1[u] * bin.get(b, v);
        if v.is_multiple_of(2) { s += term } else { s -= term }
    }
    s
}

fn powers(base: i64, n: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::one(); n + 1];
    for i in 1..=n {
        out[i] = &out[i - 1] * base;
    }
    out
}

/// `W(X + (q-1)Y, X - Y)` restricted to the listed output degrees in `Y`.
pub fn substitute(w: &WeightEnumerator, q: u64, degrees: impl IntoIterator<Item = usize>) -> ExactPolynomial {
    let n = w.length();
    let bin = Binomials::new(n);
    let qm1 = powers(q as i64 - 1, n);
    let coeffs = degrees
        .into_iter()
        .map(|j| {
            let s: BigInt = w.iter().map(|(i, a)| a * mixed_coefficient(&bin, &qm1, n - i, i, j)).sum();
            (j, BigRational::from_integer(s))
        })
        .collect();
    ExactPolynomial { n, coeffs }
}

fn normalize(p: ExactPolynomial, size: &BigInt) -> Result<WeightEnumerator> {
    let mut out = WeightEnumerator::new(p.n);
    for (j, c) in p.coeffs {
        let c = c / size;
        if !c.denom().is_one() {
            return Err(Error::NonIntegral(format!("dual coefficient {j}: {c}")));
        }
        let c = c.to_integer();
        if c.is_negative() {
            return Err(Error::NegativeCoefficient(j));
        }
        out.add(j, c);
    }
    Ok(out)
}

/// The dual enumerator `W(X + (q-1)Y, X - Y) / |C|` with `|C|` the total count
/// of `w`, which may count every message of a non-injective encoding.
pub fn transform(w: &WeightEnumerator, q: u64) -> Result<WeightEnumerator> {
    normalize(substitute(w, q, 0..=w.length()), &w.total())
}

/// Dual coefficients `A^perp_j` for `j` in `degrees` only.
pub fn dual_coefficients(w: &WeightEnumerator, q: u64, degrees: impl IntoIterator<Item = usize>) -> Result<WeightEnumerator> {
    normalize(substitute(w, q, degrees), &w.total())
}

pub fn dual_coefficient(w: &WeightEnumerator, q: u64, j: usize) -> Result<BigInt> {
    Ok(dual_coefficients(w, q, [j])?.get(j))
}

fn check_dual_args(q: u64, j: u32) -> Result<(u64, u32)> {
    let (p, v) = prime_power(q).ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
    if p == 2 || p == 3 {
        return Err(Error::OutOfScope(format!("characteristic {p}")));
    }
    if j > 10 {
        return Err(Error::InvalidArgument(format!("closed forms stop at j = 10, got {j}")));
    }
    if j == 10 && !is_prime(q) {
        return Err(Error::OutOfScope("the weight-10 term for prime powers needs tau(q/p^2)".into()));
    }
    Ok((p, v))
}

fn tau_of(p: u64) -> Result<BigInt> {
    TauTable::new(p)?.get(p)
}

fn horner(x: &BigInt, coeffs: &[i64]) -> BigInt {
    coeffs.iter().fold(BigInt::zero(), |acc, &c| acc * x + c)
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

fn divide(num: BigInt, den: BigInt) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::NonIntegral(format!("{num}/{den}")));
    }
    Ok(quot)
}

/// Closed form for the `X^{N-j} Y^j` coefficient of the projective dual.
pub fn dual_coeff_projective(q: u64, j: u32) -> Result<BigInt> {
    check_dual_args(q, j)?;
    let x = BigInt::from(q);
    let f = |c: i64| &x - c;
    if j == 0 {
        return Ok(BigInt::one());
    }
    if j < 5 {
        return Ok(BigInt::zero());
    }
    let pre = &x * f(-1) * f(1) * f(1) * f(2) * horner(&x, &[1, 1, 1]);
    let inner = match j {
        5 => f(3),
        6 => f(5) * f(4) * f(3),
        7 => f(5) * f(4) * f(3) * horner(&x, &[1, -6, 15]),
        8 => f(3) * horner(&x, &[2, -3, 79, -797, 2829, -5110, 4200]),
        9 => horner(&x, &[1, 3, -16, -585, 4262, -7310, -24393, 138512, -293174, 333900, -176400]),
        _ => {
            let pre = &x * f(-1) * f(1) * f(1) * horner(&x, &[1, 1, 1]);
            let poly = horner(
                &x,
                &[
                    1, 0, -43, 117, -2327, 40444, -287841, 1088452, -2263884, 1782811, 3312614, -12006000, 17345160,
                    -13807584, 5080320,
                ],
            );
            let tau = f(1) * x.pow(2) * tau_of(q)?;
            return divide(pre * (poly - tau), factorial(10));
        }
    };
    divide(pre * inner, factorial(j))
}

/// Closed form for the `X^{q^2-j} Y^j` coefficient of the affine dual.
pub fn dual_coeff_affine(q: u64, j: u32) -> Result<BigInt> {
    check_dual_args(q, j)?;
    let x = BigInt::from(q);
    let f = |c: i64| &x - c;
    if j == 0 {
        return Ok(BigInt::one());
    }
    if j < 5 {
        return Ok(BigInt::zero());
    }
    let pre = f(2) * f(1) * f(1) * x.pow(2) * f(-1);
    let inner = match j {
        5 => f(4) * f(3),
        6 => f(5) * f(5) * f(4) * f(3),
        7 => f(6) * f(5) * f(4) * f(3) * horner(&x, &[1, -6, 15]),
        8 => f(3) * horner(&x, &[2, -17, 121, -1161, 7127, -23212, 39340, -29400]),
        9 => horner(
            &x,
            &[1, -5, -12, -485, 8788, -53642, 142167, -30540, -818744, 2249352, -2731680, 1411200],
        ),
        _ => {
            let pre = f(1) * f(1) * x.pow(2) * f(-1);
            let poly = horner(
                &x,
                &[
                    1, -9, -7, 384, -4514, 68191, -706065, 4482991, -18172206, 47512147, -75728017, 54600840,
                    36872568, -125756064, 120294720, -45722880,
                ],
            );
            let tau = &x * f(1) * horner(&x, &[1, -9, 36]) * tau_of(q)?;
            return divide(pre * (poly - tau), factorial(10));
        }
    };
    divide(pre * inner, factorial(j))
}

/// Which of the two 3-torsion identities is checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionPart {
    /// Prime `q = 1 mod 3`, full 3-torsion, `Y^2` coefficient, weight-4 trace.
    FullTorsion,
    /// Prime `q = 2 mod 3`, `3 | #E`, `Y^4` coefficient, weight-6 trace.
    Subgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionIdentityReport {
    pub q: u64,
    pub part: TorsionPart,
    pub j: usize,
    /// `(t, mass)` pairs entering the restricted sum.
    pub terms: Vec<(i64, BigRational)>,
    /// The restricted sum's `Y^j` coefficient.
    pub coefficient: BigRational,
    /// The same coefficient assembled from the restricted moments.
    pub coefficient_by_moments: BigRational,
    /// `coefficient * #GL_3(F_q) q`.
    pub scaled: BigRational,
    /// `-(q+1)(q-1)^3 q^4 (q^2+q+1) / 48`.
    pub prefactor: BigRational,
    /// The displayed polynomial part added to the trace term.
    pub polynomial_part: BigInt,
    /// `scaled / prefactor - polynomial_part`, the trace times `q` or `q^3`.
    pub remainder: BigRational,
    pub solved_trace: BigRational,
}

impl TorsionIdentityReport {
    pub fn divisible(&self) -> bool {
        self.remainder.is_integer()
    }

    pub fn integral_trace(&self) -> bool {
        self.solved_trace.is_integer()
    }

    pub fn routes_agree(&self) -> bool {
        self.coefficient == self.coefficient_by_moments
    }
}

/// Coefficients in `t` of the `Y^j` coefficient of
/// `(X + (q-1)Y)^{q+1-t} (X - Y)^{q^2+t}`, lowest degree first.
fn coefficient_polynomial_in_t(q: u64, j: usize) -> Vec<BigRational> {
    // binom(c + s t, k) as a polynomial in t, s = +-1
    let falling = |c: i64, s: i64, k: usize| -> Vec<BigRational> {
        let mut poly = vec![BigRational::one()];
        for i in 0..k as i64 {
            let mut next = vec![BigRational::zero(); poly.len() + 1];
            for (d, a) in poly.iter().enumerate() {
                next[d] += a * BigInt::from(c - i);
                next[d + 1] += a * BigInt::from(s);
            }
            poly = next;
        }
        let kf = BigRational::from_integer(factorial(k as u32));
        poly.into_iter().map(|a| a / &kf).collect()
    };
    let qi = q as i64;
    let mut out = vec![BigRational::zero(); j + 1];
    for u in 0..=j {
        let v = j - u;
        let a = falling(qi + 1, -1, u);
        let b = falling(qi * qi, 1, v);
        let scale = BigRational::from_integer(BigInt::from(qi - 1).pow(u as u32) * if v.is_multiple_of(2) { 1 } else { -1 });
        for (da, x) in a.iter().enumerate() {
            for (db, y) in b.iter().enumerate() {
                out[da + db] += x * y * &scale;
            }
        }
    }
    out
}

pub fn torsion_dual_identities(q: u64, part: TorsionPart) -> Result<TorsionIdentityReport> {
    if !is_prime(q) {
        return Err(Error::InvalidArgument(format!("{q} is not prime")));
    }
    let needed = match part {
        TorsionPart::FullTorsion => 1,
        TorsionPart::Subgroup => 2,
    };
    if q % 3 != needed {
        return Err(Error::InvalidArgument(format!("q = {q} is not {needed} mod 3")));
    }
    let qi = q as i64;
    let x = BigInt::from(q);
    let (j, modulus, cond) = match part {
        TorsionPart::FullTorsion => (2usize, 9, TorsionCondition::Full),
        TorsionPart::Subgroup => (4usize, 3, TorsionCondition::Subgroup),
    };
    let mut terms = Vec::new();
    for t in hasse_range(q) {
        if (qi + 1 - t).rem_euclid(modulus) != 0 {
            continue;
        }
        let m = match part {
            TorsionPart::FullTorsion => torsion33_mass_formula(q, t)?,
            TorsionPart::Subgroup => trace_mass_formula(q, t)?,
        };
        if !m.is_zero() {
            terms.push((t, m));
        }
    }
    let n = (q * q + q + 1) as usize;
    let bin = Binomials::new(n);
    let qm1 = powers(qi - 1, j);
    let coefficient: BigRational = terms
        .iter()
        .map(|(t, m)| {
            let a = (qi + 1 - t) as usize;
            let b = (qi * qi + t) as usize;
            m * mixed_coefficient(&bin, &qm1, a, b, j)
        })
        .sum();
    let mut coefficient_by_moments = BigRational::zero();
    for (k, c) in coefficient_polynomial_in_t(q, j).into_iter().enumerate() {
        coefficient_by_moments += c * torsion_restricted_moments(q, k as u32, cond)? / BigInt::from(q);
    }
    let scaled = &coefficient * BigRational::from_integer(gl3_order(q) * &x);
    let prefactor = BigRational::new(
        -((&x + 1u32) * (&x - 1u32).pow(3) * x.pow(4) * (x.pow(2) + &x + 1u32)),
        BigInt::from(48),
    );
    let (polynomial_part, trace_scale): (BigInt, BigInt) = match part {
        TorsionPart::FullTorsion => (&x * 7u32 + 3u32, x.clone()),
        TorsionPart::Subgroup => ((&x + 1u32) * horner(&x, &[1, -7, 20, -26, 13, 2]), x.pow(3)),
    };
    let remainder = &scaled / &prefactor - BigRational::from_integer(polynomial_part.clone());
    let solved_trace = &remainder / BigRational::from_integer(trace_scale);
    Ok(TorsionIdentityReport {
        q,
        part,
        j,
        terms,
        coefficient,
        coefficient_by_moments,
        scaled,
        prefactor,
        polynomial_part,
        remainder,
        solved_trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithfun::eta_product;

    #[test]
    fn small_transforms() {
        let full = WeightEnumerator::full_space(5, 4);
        let d = transform(&full, 5).unwrap();
        assert_eq!(d, WeightEnumerator::from_counts(4, [(0usize, 1u64)]));
        let rep = WeightEnumerator::from_counts(2, [(0usize, 1u64), (2, 2)]);
        assert_eq!(transform(&rep, 3).unwrap(), rep);
        assert!(transform(&WeightEnumerator::from_counts(2, [(0usize, 1u64), (1, 1)]), 3).is_err());
    }

    #[test]
    fn closed_form_spot_values() {
        assert_eq!(dual_coeff_projective(5, 5).unwrap(), BigInt::from(744));
        assert_eq!(dual_coeff_projective(5, 6).unwrap(), BigInt::zero());
        assert_eq!(dual_coeff_affine(5, 5).unwrap(), BigInt::from(120));
        assert_eq!(dual_coeff_affine(7, 6).unwrap(), BigInt::from(5 * 36 * 49 * 8 * 4 * 12 / 720));
        assert!(dual_coeff_projective(25, 10).is_err());
        assert!(dual_coeff_projective(9, 5).is_err());
    }

    #[test]
    fn torsion_identities_match_eta_quotients() {
        let a = eta_product(&[(3, 8)], 40);
        let b = eta_product(&[(1, 6), (3, 6)], 40);
        for q in [7u64, 13, 19, 31, 37] {
            let r = torsion_dual_identities(q, TorsionPart::FullTorsion).unwrap();
            assert!(r.routes_agree());
            assert_eq!(r.solved_trace, BigRational::from_integer(a[q as usize - 1].clone()), "q={q}");
        }
        for q in [5u64, 11, 17, 23, 29] {
            let r = torsion_dual_identities(q, TorsionPart::Subgroup).unwrap();
            assert!(r.routes_agree());
            assert_eq!(r.solved_trace, BigRational::from_integer(b[q as usize - 1].clone()), "q={q}");
        }
        let r = torsion_dual_identities(7, TorsionPart::FullTorsion).unwrap();
        assert_eq!(r.terms, vec![(-1, BigRational::new(1.into(), 42.into()))]);
    }
}
