//! Arithmetic in the finite fields F_q, q = p^v.
//!
//! Elements are encoded as integers `0..q`. For prime fields the integer is the
//! residue; for extension fields it is `c_0 + c_1 p + ... + c_{v-1} p^{v-1}`
//! where `c_0 + c_1 x + ...` is the reduced polynomial representative. This
//! encoding also fixes the canonical element order.
//!
//! Extension fields use the monic irreducible modulus with the smallest code
//! `c_0 + c_1 p + ... + p^v`, which gives `x^2 + 2` for F_25.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

/// Extension fields up to this order get full addition and multiplication tables.
const TABLE_LIMIT: u32 = 256;

/// A field element, identified by its canonical code in `0..q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Field operation selector for [`Field::arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Neg,
    Pow(u64),
}

#[derive(Debug)]
enum Backend {
    Prime,
    Extension {
        exp: Vec<u32>,
        log: Vec<u32>,
        add: Option<Vec<u32>>,
        mul: Option<Vec<u32>>,
    },
}

/// An immutable description of F_q together with its arithmetic tables.
#[derive(Debug)]
pub struct Field {
    p: u32,
    v: u32,
    q: u32,
    modulus: Vec<u32>,
    backend: Backend,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.v == other.v && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^v` when it is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while !q.is_multiple_of(p) {
        p += 1;
    }
    let mut v = 0;
    let mut r = q;
    while r.is_multiple_of(p) {
        r /= p;
        v += 1;
    }
    (r == 1).then_some((p, v))
}

/// Builds F_{p^v}.
pub fn make_field(p: u64, v: u32) -> Result<Arc<Field>> {
    Field::new(p, v).map(Arc::new)
}

/// Builds F_q from the order alone.
pub fn field_of_order(q: u64) -> Result<Arc<Field>> {
    match prime_power(q) {
        Some((p, v)) => make_field(p, v),
        None => Err(Error::InvalidArgument(format!("{q} is not a prime power"))),
    }
}

// Dense polynomials over F_p, coefficient vectors with the constant term first.
mod fp_poly {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r: Vec<u32> = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = super::inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = (c as u64 * mi as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    pub fn digits(mut code: u64, p: u32, len: usize) -> Vec<u32> {
        let mut d = Vec::with_capacity(len);
        for _ in 0..len {
            d.push((code % p as u64) as u32);
            code /= p as u64;
        }
        d
    }

    pub fn code(d: &[u32], p: u32) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * p + c)
    }

    /// Irreducibility by trial division with every monic polynomial of degree <= deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let base = (p as u64).pow(d as u32);
            for low in 0..base {
                let mut g = digits(low, p, d);
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let t = r0 / r1;
        (r0, r1) = (r1, r0 - t * r1);
        (s0, s1) = (s1, s0 - t * s1);
    }
    s0.rem_euclid(p as i64) as u32
}

impl Field {
    fn new(p: u64, v: u32) -> Result<Field> {
        if v == 0 {
            return Err(Error::ZeroExponent);
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let q = (p as u128).checked_pow(v).unwrap_or(u128::MAX);
        if q > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge { p, v });
        }
        let (p, q) = (p as u32, q as u32);
        if v == 1 {
            return Ok(Field { p, v, q, modulus: Vec::new(), backend: Backend::Prime });
        }
        let vs = v as usize;
        let top = (p as u64).pow(v);
        let modulus = (0..top)
            .map(|low| {
                let mut m = fp_poly::digits(low, p, vs);
                m.push(1);
                m
            })
            .find(|m| m[0] != 0 && fp_poly::is_irreducible(m, p))
            .expect("an irreducible polynomial of every degree exists");

        let mulmod = |a: u32, b: u32| -> u32 {
            let prod = fp_poly::mul(
                &fp_poly::digits(a as u64, p, vs),
                &fp_poly::digits(b as u64, p, vs),
                p,
            );
            fp_poly::code(&fp_poly::rem(&prod, &modulus, p), p)
        };

        // Smallest primitive element.
        let order = q - 1;
        let mut exp = Vec::with_capacity(order as usize);
        for g in 2..q {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = mulmod(x, g);
                if x == 1 || exp.len() > order as usize {
                    break;
                }
            }
            if exp.len() == order as usize {
                break;
            }
        }
        assert_eq!(exp.len(), order as usize);
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }

        let mut field = Field {
            p,
            v,
            q,
            modulus,
            backend: Backend::Extension { exp, log, add: None, mul: None },
        };
        if q <= TABLE_LIMIT {
            let n = q as usize;
            let mut add = vec![0u32; n * n];
            let mut mul = vec![0u32; n * n];
            for a in 0..q {
                for b in 0..q {
                    add[a as usize * n + b as usize] = field.add_digits(a, b);
                    mul[a as usize * n + b as usize] = field.mul_log(a, b);
                }
            }
            if let Backend::Extension { add: at, mul: mt, .. } = &mut field.backend {
                *at = Some(add);
                *mt = Some(mul);
            }
        }
        Ok(field)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn v(&self) -> u32 {
        self.v
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.v == 1
    }

    /// Modulus coefficients (constant term first, monic); empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code))
        } else {
            Err(Error::InvalidArgument(format!("{code} is not an element of F_{}", self.q)))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    /// Inverse of [`Field::from_int`] on the prime subfield.
    pub fn to_prime_int(&self, a: FieldElement) -> Option<u32> {
        (a.0 < self.p).then_some(a.0)
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut scale = 1;
        while a > 0 || b > 0 {
            let d = (a % p + b % p) % p;
            out += d * scale;
            scale *= p;
            a /= p;
            b /= p;
        }
        out
    }

    fn neg_digits(&self, mut a: u32) -> u32 {
        let p = self.p;
        let mut out = 0;
        let mut scale = 1;
        while a > 0 {
            out += ((p - a % p) % p) * scale;
            scale *= p;
            a /= p;
        }
        out
    }

    fn mul_log(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.backend {
            Backend::Extension { exp, log, .. } => {
                let e = log[a as usize] as u64 + log[b as usize] as u64;
                exp[(e % (self.q as u64 - 1)) as usize]
            }
            Backend::Prime => unreachable!(),
        }
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.backend {
            Backend::Prime => {
                let s = a.0 + b.0;
                FieldElement(if s >= self.p { s - self.p } else { s })
            }
            Backend::Extension { add: Some(t), .. } => {
                FieldElement(t[a.index() * self.q as usize + b.index()])
            }
            Backend::Extension { .. } => FieldElement(self.add_digits(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        match &self.backend {
            Backend::Prime => FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 }),
            Backend::Extension { .. } => FieldElement(self.neg_digits(a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.backend {
            Backend::Prime => FieldElement((a.0 as u64 * b.0 as u64 % self.p as u64) as u32),
            Backend::Extension { mul: Some(t), .. } => {
                FieldElement(t[a.index() * self.q as usize + b.index()])
            }
            Backend::Extension { .. } => FieldElement(self.mul_log(a.0, b.0)),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.backend {
            Backend::Prime => FieldElement(inv_mod(a.0, self.p)),
            Backend::Extension { exp, log, .. } => {
                let n = self.q - 1;
                FieldElement(exp[((n - log[a.index()]) % n) as usize])
            }
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    pub fn arith(&self, op: ArithOp, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        if a.0 >= self.q || b.0 >= self.q {
            return Err(Error::IncompatibleFields);
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Sub => self.sub(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Div => self.div(a, b)?,
            ArithOp::Inv => self.inv(a)?,
            ArithOp::Neg => self.neg(a),
            ArithOp::Pow(e) => self.pow(a, e),
        })
    }

    /// Quadratic character: 0 at 0, 1 on nonzero squares, -1 otherwise (odd q).
    pub fn quadratic_character(&self, a: FieldElement) -> i32 {
        if a.is_zero() {
            0
        } else if self.p == 2 || self.pow(a, (self.q as u64 - 1) / 2) == FieldElement::ONE {
            1
        } else {
            -1
        }
    }

    /// Builds F_{q^k} and the embedding of this field into it.
    pub fn extension(self: &Arc<Self>, k: u32) -> Result<Embedding> {
        if k == 0 {
            return Err(Error::ZeroExponent);
        }
        let target = make_field(self.p as u64, self.v * k)?;
        let root = if self.v == 1 {
            None
        } else {
            // Smallest root of this field's modulus inside the target field.
            let root = target
                .elements()
                .find(|&r| {
                    let val = self.modulus.iter().rev().fold(FieldElement::ZERO, |acc, &c| {
                        target.add(target.mul(acc, r), FieldElement(c))
                    });
                    val.is_zero()
                })
                .expect("the modulus splits in every extension of its degree");
            Some(root)
        };
        let table = self
            .elements()
            .map(|a| match root {
                None => a,
                Some(r) => fp_poly::digits(a.0 as u64, self.p, self.v as usize)
                    .iter()
                    .rev()
                    .fold(FieldElement::ZERO, |acc, &c| target.add(target.mul(acc, r), FieldElement(c))),
            })
            .collect();
        Ok(Embedding { source: Arc::clone(self), target, table })
    }
}

/// Byte-sized operation tables for fields with `q <= 256`, used in the
/// enumeration inner loops.
#[derive(Debug, Clone)]
pub struct SmallTables {
    pub q: usize,
    pub add: Vec<u8>,
    pub mul: Vec<u8>,
    pub neg: Vec<u8>,
    pub inv: Vec<u8>,
}

impl SmallTables {
    pub fn new(field: &Field) -> Option<SmallTables> {
        if field.q() > 256 {
            return None;
        }
        let q = field.q() as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        for a in field.elements() {
            for b in field.elements() {
                add[a.index() * q + b.index()] = field.add(a, b).0 as u8;
                mul[a.index() * q + b.index()] = field.mul(a, b).0 as u8;
            }
        }
        let neg = field.elements().map(|a| field.neg(a).0 as u8).collect();
        let inv = field
            .elements()
            .map(|a| field.inv(a).map(|x| x.0 as u8).unwrap_or(0))
            .collect();
        Some(SmallTables { q, add, mul, neg, inv })
    }

    #[inline(always)]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline(always)]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q + b as usize]
    }

    /// `sum_k a[k] * b[k]`.
    #[inline(always)]
    pub fn dot(&self, a: &[u8], b: &[u8]) -> u8 {
        a.iter().zip(b).fold(0u8, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

impl From<u32> for FieldElement {
    fn from(x: u32) -> Self {
        FieldElement(x)
    }
}

/// A field homomorphism F_q -> F_{q^k}.
#[derive(Debug, Clone)]
pub struct Embedding {
    source: Arc<Field>,
    target: Arc<Field>,
    table: Vec<FieldElement>,
}

impl Embedding {
    pub fn source(&self) -> &Arc<Field> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Field> {
        &self.target
    }

    pub fn embed(&self, a: FieldElement) -> Result<FieldElement> {
        self.table.get(a.index()).copied().ok_or(Error::IncompatibleFields)
    }

    /// Whether `b` lies in the image, tested by `b^q = b`.
    pub fn in_image(&self, b: FieldElement) -> bool {
        self.target.pow(b, self.source.q as u64) == b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_examples() {
        let f5 = make_field(5, 1).unwrap();
        assert_eq!(f5.elements().map(|e| e.0).collect::<Vec<_>>(), vec![0, 1, 2, 3, 4]);
        assert_eq!(f5.mul(FieldElement(3), FieldElement(4)), FieldElement(2));
        assert_eq!(f5.inv(FieldElement(2)).unwrap(), FieldElement(3));
        assert_eq!(f5.inv(FieldElement(0)), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(make_field(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(make_field(2, 21), Err(Error::FieldTooLarge { .. })));
        assert_eq!(make_field(5, 0).unwrap_err(), Error::ZeroExponent);
    }

    #[test]
    fn f25_uses_x2_plus_2() {
        let f = make_field(5, 2).unwrap();
        // x^2 + x + 1 is irreducible over F_5 but x^2 + 2 has the smaller code.
        assert_eq!(f.modulus(), &[2, 0, 1]);
        let x = FieldElement(5);
        assert_eq!(f.mul(x, x), FieldElement(3));
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        // Exhaustive root scan over F_5 for the quadratic case.
        let mut first = None;
        'outer: for c1 in 0..5u32 {
            for c0 in 0..5u32 {
                let has_root = (0..5u32).any(|x| (x * x + c1 * x + c0) % 5 == 0);
                if !has_root {
                    first = Some((c0, c1));
                    break 'outer;
                }
            }
        }
        assert_eq!(first, Some((2, 0)));
        for (p, v) in [(2, 2), (2, 3), (3, 2), (7, 2), (2, 4)] {
            let f = make_field(p, v).unwrap();
            assert!(fp_poly::is_irreducible(f.modulus(), p as u32));
        }
    }

    fn check_axioms(f: &Field) {
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
            if !a.is_zero() {
                assert_eq!(f.pow(a, f.q() as u64 - 1), FieldElement::ONE);
                assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                if !b.is_zero() {
                    assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
                }
            }
        }
        // Distributivity over a strided sample of triples.
        for &a in els.iter().step_by(3) {
            for &b in &els {
                for &c in els.iter().step_by(5) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 49] {
            check_axioms(&field_of_order(q).unwrap());
        }
    }

    #[test]
    fn large_extension_without_tables() {
        let f = make_field(3, 7).unwrap(); // 2187 > table limit
        let a = FieldElement(1234);
        let b = FieldElement(999);
        assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        assert_eq!(f.sub(f.add(a, b), b), a);
        assert_eq!(f.pow(a, f.q() as u64 - 1), FieldElement::ONE);
    }

    #[test]
    fn embeddings_are_homomorphisms() {
        let f5 = make_field(5, 1).unwrap();
        let e = f5.extension(2).unwrap();
        assert_eq!(e.embed(FieldElement(0)).unwrap(), FieldElement(0));
        assert_eq!(e.embed(FieldElement(1)).unwrap(), FieldElement(1));
        assert_eq!(e.embed(FieldElement(2)).unwrap(), FieldElement(2));
        let three = e.embed(FieldElement(3)).unwrap();
        assert_eq!(e.target().pow(three, 5), three);

        for q in [4u64, 5, 9, 25] {
            let base = field_of_order(q).unwrap();
            for k in [2, 3] {
                if (q as u128).pow(k) > MAX_ORDER as u128 {
                    continue;
                }
                let emb = base.extension(k).unwrap();
                let t = emb.target();
                for a in base.elements() {
                    let ea = emb.embed(a).unwrap();
                    assert!(emb.in_image(ea));
                    for b in base.elements() {
                        let eb = emb.embed(b).unwrap();
                        assert_eq!(emb.embed(base.mul(a, b)).unwrap(), t.mul(ea, eb));
                        assert_eq!(emb.embed(base.add(a, b)).unwrap(), t.add(ea, eb));
                    }
                }
            }
        }
    }

    #[test]
    fn arith_dispatch() {
        let f = make_field(7, 1).unwrap();
        let a = FieldElement(3);
        let b = FieldElement(5);
        assert_eq!(f.arith(ArithOp::Add, a, b).unwrap(), FieldElement(1));
        assert_eq!(f.arith(ArithOp::Sub, a, b).unwrap(), FieldElement(5));
        assert_eq!(f.arith(ArithOp::Pow(3), a, b).unwrap(), FieldElement(6));
        assert_eq!(f.arith(ArithOp::Div, a, FieldElement(0)), Err(Error::DivisionByZero));
        assert_eq!(f.arith(ArithOp::Add, FieldElement(9), b), Err(Error::IncompatibleFields));
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(49), Some((7, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(2), Some((2, 1)));
    }
}
