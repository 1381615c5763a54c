//! Dense homogeneous polynomials in `x0, x1, x2` over F_q.
//!
//! Monomials of degree `d` are ordered graded-lexicographically with
//! `x0 > x1 > x2`; for `d = 3` that is
//! `x0^3, x0^2 x1, x0^2 x2, x0 x1^2, x0 x1 x2, x0 x2^2, x1^3, x1^2 x2, x1 x2^2, x2^3`.

use crate::ff::{Field, FieldElement};

pub type Exponent = [u8; 3];

pub fn monomials(degree: u8) -> Vec<Exponent> {
    let mut out = Vec::new();
    for a in (0..=degree).rev() {
        for b in (0..=degree - a).rev() {
            out.push([a, b, degree - a - b]);
        }
    }
    out
}

pub fn num_monomials(degree: u8) -> usize {
    let d = degree as usize;
    (d + 1) * (d + 2) / 2
}

/// Position of an exponent vector in [`monomials`].
pub fn monomial_index(e: Exponent) -> usize {
    let d = (e[0] + e[1] + e[2]) as usize;
    let a = e[0] as usize;
    // Monomials with a larger x0 exponent come first.
    let before: usize = (a + 1..=d).map(|a2| d - a2 + 1).sum();
    before + (d - a - e[1] as usize)
}

pub fn eval_monomial(field: &Field, e: Exponent, x: &[FieldElement; 3]) -> FieldElement {
    (0..3).fold(FieldElement::ONE, |acc, i| field.mul(acc, field.pow(x[i], e[i] as u64)))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomPoly {
    degree: u8,
    coeffs: Vec<FieldElement>,
}

impl HomPoly {
    pub fn zero(degree: u8) -> Self {
        HomPoly { degree, coeffs: vec![FieldElement::ZERO; num_monomials(degree)] }
    }

    pub fn from_coeffs(degree: u8, coeffs: Vec<FieldElement>) -> Self {
        assert_eq!(coeffs.len(), num_monomials(degree));
        HomPoly { degree, coeffs }
    }

    pub fn linear(l: [FieldElement; 3]) -> Self {
        HomPoly { degree: 1, coeffs: l.to_vec() }
    }

    pub fn degree(&self) -> u8 {
        self.degree
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, e: Exponent) -> FieldElement {
        self.coeffs[monomial_index(e)]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, field: &Field, x: &[FieldElement; 3]) -> FieldElement {
        monomials(self.degree)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| !c.is_zero())
            .fold(FieldElement::ZERO, |acc, (e, &c)| {
                field.add(acc, field.mul(c, eval_monomial(field, e, x)))
            })
    }

    pub fn scale(&self, field: &Field, s: FieldElement) -> Self {
        HomPoly { degree: self.degree, coeffs: self.coeffs.iter().map(|&c| field.mul(c, s)).collect() }
    }

    pub fn add(&self, field: &Field, other: &Self) -> Self {
        assert_eq!(self.degree, other.degree);
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| field.add(a, b)).collect(),
        }
    }

    pub fn mul(&self, field: &Field, other: &Self) -> Self {
        let mut out = HomPoly::zero(self.degree + other.degree);
        let ma = monomials(self.degree);
        let mb = monomials(other.degree);
        for (ea, &ca) in ma.iter().zip(&self.coeffs) {
            if ca.is_zero() {
                continue;
            }
            for (eb, &cb) in mb.iter().zip(&other.coeffs) {
                if cb.is_zero() {
                    continue;
                }
                let idx = monomial_index([ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]]);
                out.coeffs[idx] = field.add(out.coeffs[idx], field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, field: &Field, n: u8) -> Self {
        let mut acc = HomPoly::from_coeffs(0, vec![FieldElement::ONE]);
        for _ in 0..n {
            acc = acc.mul(field, self);
        }
        acc
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not divide.
    pub fn div_linear(&self, field: &Field, l: [FieldElement; 3]) -> Option<HomPoly> {
        assert!(self.degree >= 1);
        let k = l.iter().position(|c| !c.is_zero())?;
        let s = field.inv(l[k]).ok()?;
        let l = l.map(|c| field.mul(c, s));
        let mut rem = self.clone();
        let mut quot = HomPoly::zero(self.degree - 1);
        let mons = monomials(self.degree);
        for level in (1..=self.degree).rev() {
            for (i, e) in mons.iter().enumerate() {
                if e[k] != level || rem.coeffs[i].is_zero() {
                    continue;
                }
                let c = rem.coeffs[i];
                let mut base = *e;
                base[k] -= 1;
                let qi = monomial_index(base);
                quot.coeffs[qi] = field.add(quot.coeffs[qi], c);
                for j in 0..3 {
                    if l[j].is_zero() {
                        continue;
                    }
                    let mut t = base;
                    t[j] += 1;
                    let ti = monomial_index(t);
                    rem.coeffs[ti] = field.sub(rem.coeffs[ti], field.mul(c, l[j]));
                }
            }
        }
        rem.is_zero().then(|| quot.scale(field, s))
    }

    /// `g(y) = f(M y)`, i.e. `x_i = sum_j m[i][j] y_j`.
    pub fn substitute(&self, field: &Field, m: &[[FieldElement; 3]; 3]) -> HomPoly {
        let forms: Vec<HomPoly> = (0..3).map(|i| HomPoly::linear(m[i])).collect();
        let powers: Vec<Vec<HomPoly>> =
            forms.iter().map(|f| (0..=self.degree).map(|n| f.pow(field, n)).collect()).collect();
        let mut out = HomPoly::zero(self.degree);
        for (e, &c) in monomials(self.degree).iter().zip(&self.coeffs) {
            if c.is_zero() {
                continue;
            }
            let term = powers[0][e[0] as usize]
                .mul(field, &powers[1][e[1] as usize])
                .mul(field, &powers[2][e[2] as usize]);
            out = out.add(field, &term.scale(field, c));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::make_field;

    #[test]
    fn monomial_order() {
        let m = monomials(3);
        assert_eq!(m.len(), 10);
        assert_eq!(m[0], [3, 0, 0]);
        assert_eq!(m[4], [1, 1, 1]);
        assert_eq!(m[9], [0, 0, 3]);
        for d in 0..6 {
            for (i, e) in monomials(d).into_iter().enumerate() {
                assert_eq!(monomial_index(e), i);
            }
        }
    }

    #[test]
    fn division_roundtrip() {
        let f = make_field(7, 1).unwrap();
        let el = |x: u32| FieldElement(x);
        let l = [el(0), el(3), el(2)];
        let q = HomPoly::from_coeffs(2, vec![el(1), el(5), el(0), el(2), el(6), el(4)]);
        let prod = HomPoly::linear(l).mul(&f, &q);
        assert_eq!(prod.div_linear(&f, l), Some(q.clone()));
        let other = [el(1), el(0), el(0)];
        assert!(!q.mul(&f, &HomPoly::linear(other)).div_linear(&f, l).is_some());
    }

    #[test]
    fn substitution_matches_evaluation() {
        let f = make_field(5, 1).unwrap();
        let el = |x: u32| FieldElement(x);
        let g = HomPoly::from_coeffs(3, (0..10).map(|i| el((i * 3 + 1) % 5)).collect());
        let m = [[el(1), el(2), el(0)], [el(0), el(1), el(4)], [el(3), el(0), el(1)]];
        let h = g.substitute(&f, &m);
        for y in [[1u32, 2, 3], [0, 1, 4], [2, 2, 2]] {
            let y = y.map(el);
            let x: [FieldElement; 3] = std::array::from_fn(|i| {
                (0..3).fold(el(0), |acc, j| f.add(acc, f.mul(m[i][j], y[j])))
            });
            assert_eq!(h.eval(&f, &y), g.eval(&f, &x));
        }
    }
}
