//! Closed-form weight enumerators of the projective and affine cubic codes.
//!
//! Every count is assembled with exact integers; a piece whose rational
//! coefficients fail to clear their denominators is reported as an error.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cubics::CubicKind;
use crate::ecstats::{hasse_range, trace_mass_formula};
pub use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::ff::prime_power;

/// One row of the singular census: kind, number of cubics, common weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularRow {
    pub kind: CubicKind,
    pub count: BigInt,
    pub weight: i64,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

fn exact(num: BigInt, den: i64) -> Result<BigInt> {
    let (quot, rem) = num.div_rem(&big(den));
    if !rem.is_zero() {
        return Err(Error::NonIntegral(format!("{num}/{den}")));
    }
    Ok(quot)
}

fn to_integer(x: BigRational) -> Result<BigInt> {
    if !x.denom().is_one() {
        return Err(Error::NonIntegral(x.to_string()));
    }
    Ok(x.to_integer())
}

fn put(w: &mut WeightEnumerator, weight: i64, c: BigInt) -> Result<()> {
    if c.is_zero() {
        return Ok(());
    }
    if weight < 0 || weight as usize > w.length() {
        return Err(Error::InvalidArgument(format!("weight {weight} outside 0..={}", w.length())));
    }
    if c.is_negative() {
        return Err(Error::NegativeCoefficient(weight as usize));
    }
    w.add(weight as usize, c);
    Ok(())
}

fn build(n: usize, terms: impl IntoIterator<Item = (i64, Result<BigInt>)>) -> Result<WeightEnumerator> {
    let mut w = WeightEnumerator::new(n);
    for (weight, c) in terms {
        put(&mut w, weight, c?)?;
    }
    Ok(w)
}

fn characteristic(q: u64) -> Result<u64> {
    prime_power(q)
        .map(|(p, _)| p)
        .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))
}

fn require_not_char3(q: u64) -> Result<()> {
    if characteristic(q)? == 3 {
        return Err(Error::OutOfScope(format!("characteristic 3 (q = {q})")));
    }
    Ok(())
}

pub fn projective_length(q: u64) -> usize {
    (q * q + q + 1) as usize
}

pub fn affine_length(q: u64) -> usize {
    (q * q) as usize
}

/// Counts and weights of the fifteen singular kinds.
pub fn singular_table(q: u64) -> Result<Vec<SingularRow>> {
    characteristic(q)?;
    let qi = q as i64;
    let x = big(qi);
    let p = |e: u32| x.pow(e);
    let gl = (p(3) - 1u32) * (p(3) - &x) * (p(3) - p(2));
    use CubicKind::*;
    let rows = vec![
        (Zero, Ok(BigInt::one())),
        (TripleLine, Ok(p(3) - 1)),
        (LineDoubleLine, Ok((p(3) - 1) * (p(2) + &x))),
        (ConcurrentRational, exact((p(3) - 1) * (p(3) - &x), 6)),
        (ConcurrentOneRational, exact((p(3) - 1) * (p(3) - &x), 2)),
        (ConcurrentConjugate, exact((p(3) - 1) * (p(3) - &x), 3)),
        (NonConcurrentRational, exact((p(3) - 1) * (p(4) + p(3)), 6)),
        (NonConcurrentOneRational, exact((p(3) - 1) * (p(4) - p(3)), 2)),
        (NonConcurrentConjugate, exact((&x - 1) * (&x - 1) * (p(5) - p(3)), 3)),
        (ConicTangentLine, Ok((p(5) - p(2)) * (p(2) - 1))),
        (ConicSecantLine, exact((p(6) - p(3)) * (p(2) - 1), 2)),
        (ConicPassiveLine, exact((p(6) - p(3)) * (&x - 1) * (&x - 1), 2)),
        (Cusp, Ok((p(3) - 1) * (p(3) - &x) * p(2))),
        (SplitNode, exact(gl.clone(), 2)),
        (NonsplitNode, exact(gl, 2)),
    ];
    rows.into_iter()
        .map(|(kind, count)| Ok(SingularRow { kind, count: count?, weight: kind.weight(qi) }))
        .collect()
}

/// `q^9 + q^8 - q^6 - q^5 + q^4`, the number of singular cubics including zero.
pub fn singular_total(q: u64) -> BigInt {
    let x = big(q as i64);
    x.pow(9) + x.pow(8) - x.pow(6) - x.pow(5) + x.pow(4)
}

/// The singular projective enumerator, term by term.
pub fn w_sing_projective(q: u64) -> Result<WeightEnumerator> {
    let qi = q as i64;
    let x = big(qi);
    let p = |e: u32| x.pow(e);
    let c = p(3) - 1;
    build(
        projective_length(q),
        [
            (0, Ok(BigInt::one())),
            (qi * qi - 2 * qi, exact(&c * (p(3) - &x), 6)),
            (qi * qi - 2 * qi + 1, exact(&c * (p(4) + p(3)), 6)),
            (qi * qi - qi - 1, exact(&c * (p(3) - p(2)) * (p(2) - &x), 2)),
            (qi * qi - qi, Ok(&c * (p(2) + &x) * (p(2) - &x + 1))),
            (qi * qi - qi + 1, exact((p(6) - p(3)) * (p(2) - 1), 2)),
            (qi * qi - 1, exact(&c * (p(6) - p(5)), 2)),
            (qi * qi, exact(&c * (2 * p(5) - p(3) - &x + 2), 2)),
            (qi * qi + 1, exact(&c * (p(3) - &x) * (p(3) - p(2)), 2)),
            (qi * qi + qi, exact(&c * (p(3) - &x), 3)),
            (qi * qi + qi + 1, exact((&x - 1) * (p(3) - &x) * (p(3) - p(2)), 3)),
        ],
    )
}

/// The singular enumerator rebuilt from the census rows.
pub fn w_sing_projective_from_table(q: u64) -> Result<WeightEnumerator> {
    build(projective_length(q), singular_table(q)?.into_iter().map(|r| (r.weight, Ok(r.count))))
}

/// `#GL_3(F_q)`.
pub fn gl3_order(q: u64) -> BigInt {
    let x = big(q as i64);
    (x.pow(3) - 1) * (x.pow(3) - &x) * (x.pow(3) - x.pow(2))
}

/// Smooth projective cubics: `#GL_3 q P_q(C(t))` at weight `q^2 + t`.
pub fn w_smooth_projective(q: u64) -> Result<WeightEnumerator> {
    let qi = q as i64;
    let scale = BigRational::from_integer(gl3_order(q) * big(qi));
    build(
        projective_length(q),
        hasse_range(q).map(|t| (qi * qi + t, trace_mass_formula(q, t).and_then(|m| to_integer(m * &scale)))),
    )
}

pub fn w_projective(q: u64) -> Result<WeightEnumerator> {
    let mut w = w_sing_projective(q)?;
    w.merge(&w_smooth_projective(q)?);
    Ok(w)
}

fn scaled_terms(q: u64, prefactor: BigInt, terms: Vec<(i64, BigInt, i64)>) -> Result<WeightEnumerator> {
    build(affine_length(q), terms.into_iter().map(|(weight, num, den)| (weight, exact(&prefactor * num, den))))
}

/// Affine restrictions of cuspidal cubics.
pub fn w_cusp_affine(q: u64) -> Result<WeightEnumerator> {
    require_not_char3(q)?;
    let qi = q as i64;
    let x = big(qi);
    let pre = (&x - 1) * (x.pow(3) - &x) * x.pow(2);
    let w0 = qi * qi - qi;
    scaled_terms(
        q,
        pre,
        vec![
            (w0 - 1, (&x + 1) * (&x - 1), 3),
            (w0, x.pow(2) - &x + 4, 2),
            (w0 + 1, 2 * &x - 1, 1),
            (w0 + 2, (&x - 1) * (&x - 2), 6),
        ],
    )
}

fn node_prefactor(x: &BigInt) -> BigInt {
    (x - 1) * (x.pow(3) - x) * (x.pow(3) - x.pow(2))
}

/// Affine restrictions of split nodal cubics.
pub fn w_split_affine(q: u64) -> Result<WeightEnumerator> {
    require_not_char3(q)?;
    let qi = q as i64;
    let x = big(qi);
    let w0 = qi * qi - qi;
    scaled_terms(
        q,
        node_prefactor(&x),
        vec![
            (w0, &x * (&x + 1), 6),
            (w0 + 1, x.pow(2) - &x + 6, 4),
            (w0 + 2, 2 * &x - 3, 2),
            (w0 + 3, (&x - 2) * (&x - 3), 12),
        ],
    )
}

/// Affine restrictions of non-split nodal cubics.
pub fn w_nonsplit_affine(q: u64) -> Result<WeightEnumerator> {
    require_not_char3(q)?;
    let qi = q as i64;
    let x = big(qi);
    let w0 = qi * qi - qi;
    scaled_terms(
        q,
        node_prefactor(&x),
        vec![
            (w0 - 2, &x * (&x - 1), 6),
            (w0 - 1, &x * (&x - 1), 4),
            (w0, 2 * &x + 1, 2),
            (w0 + 1, &x * (&x - 1), 12),
        ],
    )
}

pub fn w_sing_irred_affine(q: u64) -> Result<WeightEnumerator> {
    let mut w = w_cusp_affine(q)?;
    w.merge(&w_split_affine(q)?);
    w.merge(&w_nonsplit_affine(q)?);
    Ok(w)
}

/// The four families of reducible cubics with no rational affine line,
/// in order: three conjugate lines, triple line at infinity, infinity plus
/// a smooth conic, infinity plus a conjugate pair.
pub fn noline_items(q: u64) -> Result<[WeightEnumerator; 4]> {
    let qi = q as i64;
    let x = big(qi);
    let p = |e: u32| x.pow(e);
    let n = affine_length(q);
    let full = qi * qi;
    let item1 = build(
        n,
        [
            (full - 1, exact((&x - 1) * p(2) * (p(3) - &x), 3)),
            (
                full,
                exact((&x - 1) * (&x + 1) * (p(3) - &x) + (&x - 1) * (&x - 1) * (p(5) - p(3)), 3),
            ),
        ],
    )?;
    let item2 = build(n, [(full, Ok(&x - 1))])?;
    let item3 = build(
        n,
        [
            (full - qi, Ok((&x - 1) * (&x - 1) * (&x + 1) * p(2))),
            (full - qi + 1, exact((&x - 1) * (&x - 1) * p(3) * (&x + 1), 2)),
            (full - qi - 1, exact((&x - 1u32).pow(3) * p(3), 2)),
        ],
    )?;
    let item4 = build(
        n,
        [
            (full - 1, exact((&x - 1) * p(2) * (p(2) - &x), 2)),
            (full, exact((&x - 1) * (&x + 1) * (p(2) - &x), 2)),
        ],
    )?;
    Ok([item1, item2, item3, item4])
}

pub fn w_noline_affine(q: u64) -> Result<WeightEnumerator> {
    let mut w = WeightEnumerator::new(affine_length(q));
    for item in noline_items(q)? {
        w.merge(&item);
    }
    Ok(w)
}

/// Affine enumerator of the nonzero cubics divisible by one fixed affine line.
pub fn per_line_polynomial(q: u64) -> Result<WeightEnumerator> {
    let qi = q as i64;
    let x = big(qi);
    let p = |e: u32| x.pow(e);
    let a = (&x - 1u32).pow(3);
    let s = qi * qi;
    build(
        affine_length(q),
        [
            (s - qi, exact((&x - 1) * (2 * p(3) - p(2) - &x + 6), 2)),
            (s - qi - 1, exact(p(2) * &a, 2)),
            (s - 2 * qi + 3, exact((&x - 2) * p(2) * &a, 4)),
            (s - 2 * qi + 2, Ok(2 * p(2) * &a)),
            (s - 2 * qi + 1, exact((&x - 1) * p(3) * (p(2) - 2 * &x + 7), 2)),
            (s - 2 * qi, Ok((&x - 1) * (&x - 1) * (p(3) - p(2) + 3))),
            (s - 2 * qi - 1, exact((&x - 2) * p(2) * &a, 4)),
            (s - 3 * qi + 3, exact(p(2) * &a, 2)),
            (s - 3 * qi + 2, Ok(2 * (&x - 1) * (&x - 1) * p(2))),
            (s - 3 * qi, exact((&x - 2) * (&x - 1) * (&x - 1), 2)),
        ],
    )
}

fn binom(n: &BigInt, k: u32) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= n - i;
        den *= i + 1;
    }
    num / den
}

/// Cubics whose affine part contains exactly two rational affine lines:
/// `l1^2 l2` (ordered) and `l1 l2 z` (unordered), each up to scalars.
pub fn exactly_two_lines(q: u64) -> Result<WeightEnumerator> {
    let qi = q as i64;
    let x = big(qi);
    let lines = x.pow(2) + &x;
    let parallel_ordered = (&x + 1) * &x * (&x - 1);
    let ordered = &lines * (&lines - 1);
    let parallel_unordered = (&x + 1) * binom(&x, 2);
    let unordered = binom(&lines, 2);
    let s = qi * qi;
    build(
        affine_length(q),
        [
            (s - 2 * qi, Ok((&x - 1) * (&parallel_ordered + &parallel_unordered))),
            (s - 2 * qi + 1, Ok((&x - 1) * (ordered - parallel_ordered + unordered - parallel_unordered))),
        ],
    )
}

/// Cubics that are products of three distinct rational affine lines.
pub fn exactly_three_lines(q: u64) -> Result<WeightEnumerator> {
    let qi = q as i64;
    let x = big(qi);
    let s = qi * qi;
    let all_parallel = (&x + 1) * binom(&x, 3);
    let concurrent = x.pow(2) * binom(&(&x + 1), 3);
    let two_parallel = (&x + 1) * binom(&x, 2) * x.pow(2);
    let triangle = binom(&(&x + 1), 3) * (x.pow(3) - x.pow(2));
    build(
        affine_length(q),
        [
            (s - 3 * qi, Ok((&x - 1) * all_parallel)),
            (s - 3 * qi + 2, Ok((&x - 1) * (concurrent + two_parallel))),
            (s - 3 * qi + 3, Ok((&x - 1) * triangle)),
        ],
    )
}

/// Cubics containing at least one rational affine line:
/// `(q^2 + q) P - E_2 - 2 E_3`.
pub fn w_line_affine(q: u64) -> Result<WeightEnumerator> {
    let x = big(q as i64);
    let total = per_line_polynomial(q)?.scaled(&(x.pow(2) + &x));
    let e2 = exactly_two_lines(q)?;
    let e3 = exactly_three_lines(q)?.scaled(&big(2));
    let w = total.sub(&e2).sub(&e3);
    w.check_nonnegative()?;
    Ok(w)
}

/// Which traces enter the smooth affine sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceRestriction {
    /// Every `t` with `t^2 <= 4q`.
    All,
    /// Only `t` not divisible by 3.
    NonzeroMod3,
}

/// `(weight, coefficient)` pairs of `W^alpha(X, Y, t)`, by the number of
/// rational points on the chosen line (0, 1, 2, 3).
pub fn w_alpha(q: u64, t: i64) -> [(i64, BigRational); 4] {
    let qi = q as i64;
    let r = |n: i64, d: i64| BigRational::new(big(n), big(d));
    let s = qi * qi - qi;
    [
        (s - 1 + t, r(qi * qi + qi * t + t * t - qi + t, 3)),
        (s + t, r(qi * qi - t * t + qi + t + 2, 2)),
        (s + 1 + t, r(qi - t, 1)),
        (s + 2 + t, r((qi - t) * (qi - t - 1), 6)),
    ]
}

pub fn w_smooth_affine_with(q: u64, restriction: TraceRestriction) -> Result<WeightEnumerator> {
    require_not_char3(q)?;
    let x = big(q as i64);
    let pre = BigRational::from_integer(&x * (&x - 1) * (x.pow(3) - &x) * (x.pow(3) - x.pow(2)));
    let mut acc: std::collections::BTreeMap<i64, BigRational> = Default::default();
    for t in hasse_range(q) {
        if restriction == TraceRestriction::NonzeroMod3 && t % 3 == 0 {
            continue;
        }
        let m = trace_mass_formula(q, t)?;
        if m.is_zero() {
            continue;
        }
        for (weight, c) in w_alpha(q, t) {
            *acc.entry(weight).or_insert_with(BigRational::zero) += &pre * &m * c;
        }
    }
    build(affine_length(q), acc.into_iter().map(|(w, c)| (w, to_integer(c))))
}

pub fn w_smooth_affine(q: u64) -> Result<WeightEnumerator> {
    w_smooth_affine_with(q, TraceRestriction::All)
}

pub fn w_sing_affine(q: u64) -> Result<WeightEnumerator> {
    let mut w = build(affine_length(q), [(0, Ok(BigInt::one()))])?;
    w.merge(&w_sing_irred_affine(q)?);
    w.merge(&w_noline_affine(q)?);
    w.merge(&w_line_affine(q)?);
    Ok(w)
}

pub fn w_affine(q: u64) -> Result<WeightEnumerator> {
    let mut w = w_sing_affine(q)?;
    w.merge(&w_smooth_affine(q)?);
    Ok(w)
}
