//! Points and lines of the projective plane P^2(F_q) and the affine plane A^2(F_q).
//!
//! Projective points are stored with a fixed affine representative. The default
//! ([`Normalization::FirstNonzero`]) scales so that the first nonzero coordinate
//! is 1. Points are listed in lexicographic order of their representatives, and
//! lines `a x0 + b x1 + c x2 = 0` are normalized and ordered the same way, so
//! line `i` has the coordinates of point `i`.
//!
//! The affine plane is the complement of the line at infinity `{x2 = 0}`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ff::{Field, FieldElement};

/// Choice of affine representative for projective points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Normalization {
    /// First nonzero coordinate equal to 1.
    #[default]
    FirstNonzero,
    /// Last nonzero coordinate equal to 1.
    LastNonzero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint(pub [FieldElement; 3]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffinePoint(pub [FieldElement; 2]);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LineKind {
    Projective,
    Affine,
}

/// A line given by coefficients `(a, b, c)`, normalized like a projective point.
///
/// Projective lines are `a x0 + b x1 + c x2 = 0`; affine lines are `a x + b y + c = 0`
/// with `(a, b) != (0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LineSpec {
    pub kind: LineKind,
    pub coeffs: [FieldElement; 3],
}

/// A line together with the indices of its incident points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub spec: LineSpec,
    pub points: Vec<usize>,
}

/// Scales a nonzero triple to its representative; `None` for the zero vector.
pub fn normalize(field: &Field, x: [FieldElement; 3], norm: Normalization) -> Option<ProjectivePoint> {
    let pivot = match norm {
        Normalization::FirstNonzero => x.iter().position(|c| !c.is_zero())?,
        Normalization::LastNonzero => x.iter().rposition(|c| !c.is_zero())?,
    };
    let s = field.inv(x[pivot]).expect("pivot is nonzero");
    Some(ProjectivePoint(x.map(|c| field.mul(c, s))))
}

pub fn enumerate_projective_points(field: &Field, norm: Normalization) -> Vec<ProjectivePoint> {
    let q = field.q();
    let mut pts = Vec::with_capacity((q * q + q + 1) as usize);
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let x = [FieldElement(a), FieldElement(b), FieldElement(c)];
                if let Some(p) = normalize(field, x, norm) {
                    if p.0 == x {
                        pts.push(p);
                    }
                }
            }
        }
    }
    pts
}

pub fn enumerate_affine_points(field: &Field) -> Vec<AffinePoint> {
    let q = field.q();
    (0..q)
        .flat_map(|x| (0..q).map(move |y| AffinePoint([FieldElement(x), FieldElement(y)])))
        .collect()
}

fn incident(field: &Field, l: &[FieldElement; 3], p: &[FieldElement; 3]) -> bool {
    let s = (0..3).fold(FieldElement::ZERO, |acc, i| field.add(acc, field.mul(l[i], p[i])));
    s.is_zero()
}

/// All lines of the given kind with their incident points (indices into the
/// matching point enumeration with the default normalization).
pub fn enumerate_lines(field: &Field, kind: LineKind) -> Vec<Line> {
    let pts = enumerate_projective_points(field, Normalization::FirstNonzero);
    match kind {
        LineKind::Projective => pts
            .iter()
            .map(|l| Line {
                spec: LineSpec { kind, coeffs: l.0 },
                points: pts
                    .iter()
                    .enumerate()
                    .filter(|(_, p)| incident(field, &l.0, &p.0))
                    .map(|(i, _)| i)
                    .collect(),
            })
            .collect(),
        LineKind::Affine => {
            let aff = enumerate_affine_points(field);
            pts.iter()
                .filter(|l| !(l.0[0].is_zero() && l.0[1].is_zero()))
                .map(|l| Line {
                    spec: LineSpec { kind, coeffs: l.0 },
                    points: aff
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| incident(field, &l.0, &[a.0[0], a.0[1], FieldElement::ONE]))
                        .map(|(i, _)| i)
                        .collect(),
                })
                .collect()
        }
    }
}

/// The projective plane with its points, lines and incidences.
#[derive(Debug, Clone)]
pub struct ProjectivePlane {
    field: Arc<Field>,
    norm: Normalization,
    points: Vec<ProjectivePoint>,
    index: HashMap<ProjectivePoint, usize>,
    lines: Vec<Line>,
}

impl ProjectivePlane {
    pub fn new(field: Arc<Field>) -> Self {
        Self::with_normalization(field, Normalization::FirstNonzero)
    }

    pub fn with_normalization(field: Arc<Field>, norm: Normalization) -> Self {
        let points = enumerate_projective_points(&field, norm);
        let index = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();
        let mut plane = ProjectivePlane { field, norm, points, index, lines: Vec::new() };
        let coeffs = enumerate_projective_points(&plane.field, Normalization::FirstNonzero);
        plane.lines = coeffs
            .iter()
            .map(|l| Line {
                spec: LineSpec { kind: LineKind::Projective, coeffs: l.0 },
                points: (0..plane.points.len())
                    .filter(|&i| incident(&plane.field, &l.0, &plane.points[i].0))
                    .collect(),
            })
            .collect();
        plane
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn normalization(&self) -> Normalization {
        self.norm
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// Index of the point represented by a nonzero triple.
    pub fn point_index(&self, x: [FieldElement; 3]) -> Option<usize> {
        let p = normalize(&self.field, x, self.norm)?;
        self.index.get(&p).copied()
    }

    /// Index of the line with (not necessarily normalized) coefficients `l`.
    pub fn line_index(&self, l: [FieldElement; 3]) -> Option<usize> {
        let n = normalize(&self.field, l, Normalization::FirstNonzero)?;
        self.lines.iter().position(|line| line.spec.coeffs == n.0)
    }

    /// Index of the line at infinity `{x2 = 0}`.
    pub fn infinity_line(&self) -> usize {
        self.line_index([FieldElement::ZERO, FieldElement::ZERO, FieldElement::ONE])
            .expect("x2 = 0 is a line")
    }

    /// Points away from `{x2 = 0}` that correspond to the affine point `(x, y)`.
    pub fn affine_to_projective(&self, a: AffinePoint) -> usize {
        self.point_index([a.0[0], a.0[1], FieldElement::ONE]).expect("nonzero")
    }
}
