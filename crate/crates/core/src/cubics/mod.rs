//! Plane cubics as messages of the order-3 Reed–Muller codes, their codewords,
//! brute-force weight enumerators, classification and census.

mod census;
mod classify;
mod engine;
mod mask;

use std::sync::Arc;

use crate::ff::{Field, FieldElement};
use crate::plane::{enumerate_affine_points, enumerate_projective_points, Normalization};
use crate::poly::{monomials, HomPoly};

pub use census::{singular_census, Census, CensusKey, CensusOptions};
pub use classify::{
    AffineFamily, Classifier, CubicKind, CubicProfile, SmoothClass, SINGULAR_KINDS,
};
pub use engine::{brute_weight_enumerator, enumerate_generator, puncture, DEFAULT_BUDGET};
pub use mask::{Mask, PointSet};

/// Degree-3 monomial exponents in message order.
pub fn cubic_monomials() -> Vec<[u8; 3]> {
    monomials(3)
}

/// A homogeneous cubic in `x0, x1, x2`; coefficient `k` belongs to
/// `cubic_monomials()[k]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomogeneousCubic {
    pub coeffs: [FieldElement; 10],
}

impl HomogeneousCubic {
    pub fn new(coeffs: [FieldElement; 10]) -> Self {
        HomogeneousCubic { coeffs }
    }

    pub fn from_codes(codes: [u32; 10]) -> Self {
        HomogeneousCubic { coeffs: codes.map(FieldElement) }
    }

    pub fn zero() -> Self {
        HomogeneousCubic { coeffs: [FieldElement::ZERO; 10] }
    }

    /// Builds a cubic from `(coefficient, exponent)` terms.
    pub fn from_terms(field: &Field, terms: &[(i64, [u8; 3])]) -> Self {
        let mut coeffs = [FieldElement::ZERO; 10];
        for &(c, e) in terms {
            let k = crate::poly::monomial_index(e);
            coeffs[k] = field.add(coeffs[k], field.from_int(c));
        }
        HomogeneousCubic { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_poly(&self) -> HomPoly {
        HomPoly::from_coeffs(3, self.coeffs.to_vec())
    }

    pub fn from_poly(p: &HomPoly) -> Self {
        assert_eq!(p.degree(), 3);
        let mut coeffs = [FieldElement::ZERO; 10];
        coeffs.copy_from_slice(p.coeffs());
        HomogeneousCubic { coeffs }
    }

    pub fn eval(&self, field: &Field, x: &[FieldElement; 3]) -> FieldElement {
        self.to_poly().eval(field, x)
    }

    pub fn scale(&self, field: &Field, s: FieldElement) -> Self {
        HomogeneousCubic { coeffs: self.coeffs.map(|c| field.mul(c, s)) }
    }
}

/// A polynomial of degree at most 3 in `x, y`. Coefficient `k` belongs to the
/// monomial obtained from `cubic_monomials()[k]` by setting `x2 = 1`, so
/// homogenizing with respect to `x2` keeps the coefficient vector unchanged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AffineCubic {
    pub coeffs: [FieldElement; 10],
}

impl AffineCubic {
    pub fn homogenize(&self) -> HomogeneousCubic {
        HomogeneousCubic { coeffs: self.coeffs }
    }

    pub fn dehomogenize(f: &HomogeneousCubic) -> Self {
        AffineCubic { coeffs: f.coeffs }
    }

    pub fn eval(&self, field: &Field, x: FieldElement, y: FieldElement) -> FieldElement {
        self.homogenize().eval(field, &[x, y, FieldElement::ONE])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CodeVariant {
    Projective,
    Affine,
}

impl CodeVariant {
    pub fn name(self) -> &'static str {
        match self {
            CodeVariant::Projective => "proj",
            CodeVariant::Affine => "affine",
        }
    }
}

/// An evaluation code of cubics: the message space of cubics evaluated at
/// a fixed, ordered list of points (given as projective triples).
#[derive(Clone, Debug)]
pub struct CodeSpec {
    pub variant: CodeVariant,
    pub field: Arc<Field>,
    points: Vec<[FieldElement; 3]>,
}

impl CodeSpec {
    pub fn projective(field: Arc<Field>) -> Self {
        Self::projective_with(field, Normalization::FirstNonzero)
    }

    pub fn projective_with(field: Arc<Field>, norm: Normalization) -> Self {
        let points = enumerate_projective_points(&field, norm).into_iter().map(|p| p.0).collect();
        CodeSpec { variant: CodeVariant::Projective, field, points }
    }

    pub fn affine(field: Arc<Field>) -> Self {
        let points = enumerate_affine_points(&field)
            .into_iter()
            .map(|a| [a.0[0], a.0[1], FieldElement::ONE])
            .collect();
        CodeSpec { variant: CodeVariant::Affine, field, points }
    }

    pub fn new(variant: CodeVariant, field: Arc<Field>) -> Self {
        match variant {
            CodeVariant::Projective => Self::projective(field),
            CodeVariant::Affine => Self::affine(field),
        }
    }

    /// Same code with the evaluation points listed in a different order.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.points.len());
        CodeSpec { points: perm.iter().map(|&i| self.points[i]).collect(), ..self.clone() }
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn length(&self) -> usize {
        self.points.len()
    }

    pub fn points(&self) -> &[[FieldElement; 3]] {
        &self.points
    }

    /// Rows are the codewords of the ten monomials.
    pub fn generator_matrix(&self) -> Vec<Vec<FieldElement>> {
        cubic_monomials()
            .into_iter()
            .map(|e| {
                self.points
                    .iter()
                    .map(|x| crate::poly::eval_monomial(&self.field, e, x))
                    .collect()
            })
            .collect()
    }

    /// Rank of the generator matrix.
    pub fn dimension(&self) -> usize {
        rank(&self.field, self.generator_matrix())
    }

    pub fn codeword(&self, f: &HomogeneousCubic) -> Vec<FieldElement> {
        let poly = f.to_poly();
        self.points.iter().map(|x| poly.eval(&self.field, x)).collect()
    }
}

pub fn codeword_weight(f: &HomogeneousCubic, spec: &CodeSpec) -> usize {
    spec.codeword(f).iter().filter(|c| !c.is_zero()).count()
}

fn rank(field: &Field, mut rows: Vec<Vec<FieldElement>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(pivot) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = field.inv(rows[r][col]).expect("pivot nonzero");
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let s = field.mul(rows[i][col], inv);
                for j in 0..ncols {
                    let d = field.mul(s, rows[r][j]);
                    rows[i][j] = field.sub(rows[i][j], d);
                }
            }
        }
        r += 1;
    }
    r
}
