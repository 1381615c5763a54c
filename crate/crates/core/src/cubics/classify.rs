//! Classification of plane cubics from their rational zero set.
//!
//! The decision uses the zero set `Z`, the rational singular points `S`, the
//! tangent cone at a singular point, and rational line components. Point and
//! line data are precomputed once per field.

use std::sync::Arc;

use super::mask::{mask_from, Mask, PointSet};
use super::HomogeneousCubic;
use crate::ecstats::ShortWeierstrass;
use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};
use crate::plane::{enumerate_projective_points, Normalization};
use crate::poly::{monomial_index, monomials, HomPoly};

type Fe = FieldElement;

/// The shape of `{f = 0}`: one of the fifteen singular types or a smooth
/// cubic with Frobenius trace `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CubicKind {
    /// `f = 0`, whose zero set is the whole plane.
    Zero,
    TripleLine,
    LineDoubleLine,
    ConcurrentRational,
    ConcurrentOneRational,
    ConcurrentConjugate,
    NonConcurrentRational,
    NonConcurrentOneRational,
    NonConcurrentConjugate,
    ConicTangentLine,
    ConicSecantLine,
    ConicPassiveLine,
    Cusp,
    SplitNode,
    NonsplitNode,
    Smooth(i32),
}

/// The fifteen non-smooth kinds in table order.
pub const SINGULAR_KINDS: [CubicKind; 15] = [
    CubicKind::Zero,
    CubicKind::TripleLine,
    CubicKind::LineDoubleLine,
    CubicKind::ConcurrentRational,
    CubicKind::ConcurrentOneRational,
    CubicKind::ConcurrentConjugate,
    CubicKind::NonConcurrentRational,
    CubicKind::NonConcurrentOneRational,
    CubicKind::NonConcurrentConjugate,
    CubicKind::ConicTangentLine,
    CubicKind::ConicSecantLine,
    CubicKind::ConicPassiveLine,
    CubicKind::Cusp,
    CubicKind::SplitNode,
    CubicKind::NonsplitNode,
];

impl CubicKind {
    pub fn name(self) -> &'static str {
        match self {
            CubicKind::Zero => "zero",
            CubicKind::TripleLine => "triple-line",
            CubicKind::LineDoubleLine => "line-double-line",
            CubicKind::ConcurrentRational => "concurrent-rational",
            CubicKind::ConcurrentOneRational => "concurrent-one-rational",
            CubicKind::ConcurrentConjugate => "concurrent-conjugate",
            CubicKind::NonConcurrentRational => "nonconcurrent-rational",
            CubicKind::NonConcurrentOneRational => "nonconcurrent-one-rational",
            CubicKind::NonConcurrentConjugate => "nonconcurrent-conjugate",
            CubicKind::ConicTangentLine => "conic-tangent-line",
            CubicKind::ConicSecantLine => "conic-secant-line",
            CubicKind::ConicPassiveLine => "conic-passive-line",
            CubicKind::Cusp => "cusp",
            CubicKind::SplitNode => "split-node",
            CubicKind::NonsplitNode => "nonsplit-node",
            CubicKind::Smooth(_) => "smooth",
        }
    }

    pub fn is_smooth(self) -> bool {
        matches!(self, CubicKind::Smooth(_))
    }

    pub fn is_absolutely_irreducible(self) -> bool {
        matches!(self, CubicKind::Cusp | CubicKind::SplitNode | CubicKind::NonsplitNode | CubicKind::Smooth(_))
    }

    /// Hamming weight of every projective codeword of this kind.
    pub fn weight(self, q: i64) -> i64 {
        let q2 = q * q;
        match self {
            CubicKind::Zero => 0,
            CubicKind::TripleLine => q2,
            CubicKind::LineDoubleLine => q2 - q,
            CubicKind::ConcurrentRational => q2 - 2 * q,
            CubicKind::ConcurrentOneRational => q2,
            CubicKind::ConcurrentConjugate => q2 + q,
            CubicKind::NonConcurrentRational => (q - 1) * (q - 1),
            CubicKind::NonConcurrentOneRational => q2 - 1,
            CubicKind::NonConcurrentConjugate => q2 + q + 1,
            CubicKind::ConicTangentLine => q2 - q,
            CubicKind::ConicSecantLine => q2 - q + 1,
            CubicKind::ConicPassiveLine => q2 - q - 1,
            CubicKind::Cusp => q2,
            CubicKind::SplitNode => q2 + 1,
            CubicKind::NonsplitNode => q2 - 1,
            CubicKind::Smooth(t) => q2 + t as i64,
        }
    }

    /// Trace `t` with `#C(F_q) = q + 1 - t` for absolutely irreducible kinds.
    pub fn trace(self) -> Option<i32> {
        match self {
            CubicKind::Cusp => Some(0),
            CubicKind::SplitNode => Some(1),
            CubicKind::NonsplitNode => Some(-1),
            CubicKind::Smooth(t) => Some(t),
            _ => None,
        }
    }
}

/// How a cubic restricts to the affine plane `{x2 != 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AffineFamily {
    Zero,
    Cusp,
    Split,
    Nonsplit,
    Smooth(i32),
    /// Three lines conjugate over F_{q^3}, concurrent or not.
    ConjugateTriple,
    TripleLineAtInfinity,
    InfinityPlusConic,
    InfinityPlusConjugatePair,
    /// Divisible by exactly `k` distinct rational affine lines.
    RationalAffineLines(u8),
}

impl AffineFamily {
    pub fn name(self) -> String {
        match self {
            AffineFamily::Zero => "zero".into(),
            AffineFamily::Cusp => "cusp".into(),
            AffineFamily::Split => "split-node".into(),
            AffineFamily::Nonsplit => "nonsplit-node".into(),
            AffineFamily::Smooth(t) => format!("smooth(t={t})"),
            AffineFamily::ConjugateTriple => "conjugate-triple".into(),
            AffineFamily::TripleLineAtInfinity => "triple-line-at-infinity".into(),
            AffineFamily::InfinityPlusConic => "infinity-plus-conic".into(),
            AffineFamily::InfinityPlusConjugatePair => "infinity-plus-conjugate-pair".into(),
            AffineFamily::RationalAffineLines(k) => format!("affine-lines({k})"),
        }
    }
}

/// Isomorphism class of a smooth cubic with a rational point, as the
/// canonical short Weierstrass model of its Jacobian.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmoothClass {
    pub a: u32,
    pub b: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicProfile {
    pub kind: CubicKind,
    pub weight: usize,
    /// Rational inflection lines; `None` unless absolutely irreducible.
    pub inflections: Option<u32>,
    /// `(L_0, L_1, L_2, L_3)`; `None` unless absolutely irreducible.
    pub line_profile: Option<[u32; 4]>,
}

/// Per-field point and line data, generic over the bitset width.
#[derive(Debug, Clone)]
pub(crate) struct Tables<M> {
    pub field: Arc<Field>,
    pub q: usize,
    pub points: Vec<[Fe; 3]>,
    pub lines: Vec<M>,
    pub line_coeffs: Vec<[Fe; 3]>,
    pub infinity: usize,
    pub affine: M,
    /// `values[i][k]`: monomial `k` at point `i`.
    pub values: Vec<[Fe; 10]>,
    /// `grads[i][j][k]`: `d m_k / d x_j` at point `i`.
    pub grads: Vec<[[Fe; 10]; 3]>,
    /// Coefficients of `w s^2, w s t, w t^2` in `m_k(w P_i + s u_i + t v_i)`.
    pub cones: Vec<[[Fe; 10]; 3]>,
    /// `subst[i][e][k]`: coefficient of monomial `e` in `m_k(w P_i + s u_i + t v_i)`.
    pub subst: Vec<[[Fe; 10]; 10]>,
}

fn dot(field: &Field, a: &[Fe; 10], c: &[Fe; 10]) -> Fe {
    a.iter().zip(c).fold(Fe::ZERO, |acc, (&x, &y)| {
        if y.is_zero() { acc } else { field.add(acc, field.mul(x, y)) }
    })
}

/// Complement basis to the point `p` (first nonzero coordinate at `pivot`).
fn complement(p: &[Fe; 3]) -> ([Fe; 3], [Fe; 3]) {
    let pivot = p.iter().position(|c| !c.is_zero()).expect("nonzero point");
    let others: Vec<usize> = (0..3).filter(|&i| i != pivot).collect();
    let mut u = [Fe::ZERO; 3];
    let mut v = [Fe::ZERO; 3];
    u[others[0]] = Fe::ONE;
    v[others[1]] = Fe::ONE;
    (u, v)
}

impl<M: Mask> Tables<M> {
    pub fn new(field: Arc<Field>) -> Self {
        let q = field.q() as usize;
        let points: Vec<[Fe; 3]> =
            enumerate_projective_points(&field, Normalization::FirstNonzero).into_iter().map(|p| p.0).collect();
        assert!(points.len() <= M::CAPACITY, "point set too large for mask");
        let incident = |l: &[Fe; 3], p: &[Fe; 3]| {
            (0..3).fold(Fe::ZERO, |acc, i| field.add(acc, field.mul(l[i], p[i]))).is_zero()
        };
        let line_coeffs = points.clone();
        let lines: Vec<M> = line_coeffs
            .iter()
            .map(|l| mask_from((0..points.len()).filter(|&i| incident(l, &points[i]))))
            .collect();
        let mons = monomials(3);
        let values = points
            .iter()
            .map(|x| std::array::from_fn(|k| crate::poly::eval_monomial(&field, mons[k], x)))
            .collect();
        let grads = points
            .iter()
            .map(|x| {
                std::array::from_fn(|j| {
                    std::array::from_fn(|k| {
                        let e = mons[k];
                        if e[j] == 0 {
                            return Fe::ZERO;
                        }
                        let mut d = e;
                        d[j] -= 1;
                        field.mul(field.from_int(e[j] as i64), crate::poly::eval_monomial(&field, d, x))
                    })
                })
            })
            .collect();
        let subst: Vec<[[Fe; 10]; 10]> = points
            .iter()
            .map(|x| {
                let (u, v) = complement(x);
                let m = [[x[0], u[0], v[0]], [x[1], u[1], v[1]], [x[2], u[2], v[2]]];
                let subs: Vec<HomPoly> = (0..10)
                    .map(|k| {
                        let mut c = vec![Fe::ZERO; 10];
                        c[k] = Fe::ONE;
                        HomPoly::from_coeffs(3, c).substitute(&field, &m)
                    })
                    .collect();
                std::array::from_fn(|out| std::array::from_fn(|k| subs[k].coeffs()[out]))
            })
            .collect();
        let cones = subst
            .iter()
            .map(|m| [[1, 2, 0], [1, 1, 1], [1, 0, 2]].map(|e| m[monomial_index(e)]))
            .collect();
        let mut t = Tables {
            field: field.clone(),
            q,
            points,
            lines,
            line_coeffs,
            infinity: 0,
            affine: M::default(),
            values,
            grads,
            cones,
            subst,
        };
        t.infinity = t.line_index(&[Fe::ZERO, Fe::ZERO, Fe::ONE]);
        t.affine = !t.lines[t.infinity] & mask_from(0..t.points.len());
        t
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Index of the point (or line) with the given nonzero coordinates.
    pub fn line_index(&self, x: &[Fe; 3]) -> usize {
        let f = &self.field;
        let pivot = x.iter().position(|c| !c.is_zero()).expect("nonzero");
        let s = f.inv(x[pivot]).expect("nonzero");
        let y = x.map(|c| f.mul(c, s));
        let q = self.q;
        match pivot {
            2 => 0,
            1 => 1 + y[2].index(),
            _ => 1 + q + y[1].index() * q + y[2].index(),
        }
    }

    pub fn zero_mask(&self, c: &[Fe; 10]) -> M {
        mask_from((0..self.n()).filter(|&i| dot(&self.field, &self.values[i], c).is_zero()))
    }

    pub fn gradient(&self, c: &[Fe; 10], i: usize) -> [Fe; 3] {
        std::array::from_fn(|j| dot(&self.field, &self.grads[i][j], c))
    }

    pub fn singular_mask(&self, c: &[Fe; 10], z: M) -> M {
        let mut out = M::default();
        let mut rest = z;
        while let Some(i) = rest.pop() {
            if self.gradient(c, i).iter().all(|g| g.is_zero()) {
                out = out | M::bit(i);
            }
        }
        out
    }

    /// Number of projective roots of the tangent cone at point `i`; `None`
    /// when the cone vanishes (a triple point).
    fn cone_roots(&self, c: &[Fe; 10], i: usize) -> Option<u32> {
        let f = &self.field;
        let [a, b, cc] = self.cones[i].map(|row| dot(f, &row, c));
        if a.is_zero() && b.is_zero() && cc.is_zero() {
            return None;
        }
        let mut roots = u32::from(a.is_zero());
        if a.is_zero() {
            // Remaining factor b s + c t.
            if !b.is_zero() {
                roots += 1;
            }
            return Some(roots);
        }
        if f.p() != 2 {
            let disc = f.sub(f.mul(b, b), f.mul(f.from_int(4), f.mul(a, cc)));
            return Some(match f.quadratic_character(disc) {
                0 => 1,
                1 => 2,
                _ => 0,
            });
        }
        if b.is_zero() {
            return Some(1);
        }
        Some(
            f.elements()
                .filter(|&s| f.add(f.add(f.mul(a, f.mul(s, s)), f.mul(b, s)), cc).is_zero())
                .count() as u32,
        )
    }

    /// Rational lines dividing `f`.
    pub fn line_factors(&self, c: &[Fe; 10], z: M) -> Vec<usize> {
        let need_check = self.q < 3;
        let poly = need_check.then(|| HomPoly::from_coeffs(3, c.to_vec()));
        (0..self.lines.len())
            .filter(|&l| (self.lines[l] & z) == self.lines[l])
            .filter(|&l| match &poly {
                Some(p) => p.div_linear(&self.field, self.line_coeffs[l]).is_some(),
                None => true,
            })
            .collect()
    }

    /// Kind of a cubic given its zero set and rational singular points.
    pub fn decide(&self, c: &[Fe; 10], z: M, s: M) -> CubicKind {
        let q = self.q as u32;
        let nz = z.count();
        let ns = s.count();
        if ns == 0 {
            return if nz == 0 {
                CubicKind::NonConcurrentConjugate
            } else if nz == 2 * q + 2 {
                CubicKind::ConicPassiveLine
            } else {
                CubicKind::Smooth(q as i32 + 1 - nz as i32)
            };
        }
        if nz as usize == self.n() && c.iter().all(|x| x.is_zero()) {
            return CubicKind::Zero;
        }
        if ns == 1 {
            let p = s.first().expect("one point");
            return match (self.cone_roots(c, p), nz) {
                (None, n) if n == 3 * q + 1 => CubicKind::ConcurrentRational,
                (None, n) if n == q + 1 => CubicKind::ConcurrentOneRational,
                (None, 1) => CubicKind::ConcurrentConjugate,
                (Some(1), n) if n == q + 1 => CubicKind::Cusp,
                (Some(1), n) if n == 2 * q + 1 => CubicKind::ConicTangentLine,
                (Some(2), n) if n == q => CubicKind::SplitNode,
                (Some(0), n) if n == q + 2 => {
                    if self.line_factors(c, z).is_empty() {
                        CubicKind::NonsplitNode
                    } else {
                        CubicKind::NonConcurrentOneRational
                    }
                }
                other => panic!("unclassified cubic {c:?}: cone/zeros {other:?}"),
            };
        }
        match (ns, nz) {
            (2, n) if n == 2 * q => CubicKind::ConicSecantLine,
            (n1, n) if n1 == q + 1 && n == q + 1 => CubicKind::TripleLine,
            (n1, n) if n1 == q + 1 && n == 2 * q + 1 => CubicKind::LineDoubleLine,
            (3, n) if n == 3 * q => CubicKind::NonConcurrentRational,
            other => panic!("unclassified cubic {c:?}: singular/zeros {other:?}"),
        }
    }

    /// Inflection lines of an absolutely irreducible cubic: nonsingular
    /// rational points whose tangent meets `Z` only there.
    pub fn inflections(&self, z: M, s: M, grad: impl Fn(usize) -> [Fe; 3]) -> u32 {
        let mut rest = z & !s;
        let mut count = 0;
        while let Some(i) = rest.pop() {
            let l = self.line_index(&grad(i));
            if (self.lines[l] & z) == M::bit(i) {
                count += 1;
            }
        }
        count
    }

    pub fn line_profile(&self, z: M) -> [u32; 4] {
        let mut out = [0u32; 4];
        for &l in &self.lines {
            let k = (l & z).count() as usize;
            out[k.min(3)] += 1;
        }
        out
    }

    pub fn affine_family(&self, kind: CubicKind, c: &[Fe; 10], z: M) -> AffineFamily {
        match kind {
            CubicKind::Zero => return AffineFamily::Zero,
            CubicKind::Cusp => return AffineFamily::Cusp,
            CubicKind::SplitNode => return AffineFamily::Split,
            CubicKind::NonsplitNode => return AffineFamily::Nonsplit,
            CubicKind::Smooth(t) => return AffineFamily::Smooth(t),
            CubicKind::ConcurrentConjugate | CubicKind::NonConcurrentConjugate => {
                return AffineFamily::ConjugateTriple
            }
            _ => {}
        }
        let k = self.line_factors(c, z).into_iter().filter(|&l| l != self.infinity).count();
        if k > 0 {
            return AffineFamily::RationalAffineLines(k as u8);
        }
        match kind {
            CubicKind::TripleLine => AffineFamily::TripleLineAtInfinity,
            CubicKind::ConicTangentLine | CubicKind::ConicSecantLine | CubicKind::ConicPassiveLine => {
                AffineFamily::InfinityPlusConic
            }
            CubicKind::ConcurrentOneRational | CubicKind::NonConcurrentOneRational => {
                AffineFamily::InfinityPlusConjugatePair
            }
            other => panic!("{other:?} without affine line"),
        }
    }
}

/// Classifier for cubics over one field (at most 256 points, so `q <= 13`).
#[derive(Debug, Clone)]
pub struct Classifier {
    t: Tables<PointSet>,
}

impl Classifier {
    pub fn new(field: Arc<Field>) -> Result<Self> {
        let q = field.q() as usize;
        if q * q + q + 1 > PointSet::CAPACITY {
            return Err(Error::OutOfScope(format!("classifier supports q <= 13, got {q}")));
        }
        Ok(Classifier { t: Tables::new(field) })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.t.field
    }

    pub fn zero_set(&self, f: &HomogeneousCubic) -> PointSet {
        self.t.zero_mask(&f.coeffs)
    }

    pub fn singular_points(&self, f: &HomogeneousCubic) -> PointSet {
        self.t.singular_mask(&f.coeffs, self.zero_set(f))
    }

    pub fn classify(&self, f: &HomogeneousCubic) -> CubicKind {
        let z = self.zero_set(f);
        self.t.decide(&f.coeffs, z, self.t.singular_mask(&f.coeffs, z))
    }

    /// Rational lines `L` with `L | f`, as point-set indices.
    pub fn rational_line_factors(&self, f: &HomogeneousCubic) -> Vec<[Fe; 3]> {
        let z = self.zero_set(f);
        self.t.line_factors(&f.coeffs, z).into_iter().map(|l| self.t.line_coeffs[l]).collect()
    }

    pub fn affine_family(&self, f: &HomogeneousCubic) -> AffineFamily {
        let z = self.zero_set(f);
        self.t.affine_family(self.classify(f), &f.coeffs, z)
    }

    /// Counts rational inflection lines by restricting `f` to each tangent
    /// line and testing for a triple root at the point of tangency.
    pub fn inflection_count(&self, f: &HomogeneousCubic) -> Result<u32> {
        let kind = self.classify(f);
        if !kind.is_smooth() {
            return Err(Error::NotSmooth);
        }
        Ok(self.contact_inflections(f))
    }

    fn contact_inflections(&self, f: &HomogeneousCubic) -> u32 {
        let field = &self.t.field;
        let poly = f.to_poly();
        let z = self.zero_set(f);
        let s = self.t.singular_mask(&f.coeffs, z);
        let mut count = 0;
        for i in (z & !s).indices() {
            let p = self.t.points[i];
            let l = self.t.line_index(&self.t.gradient(&f.coeffs, i));
            let d = self.t.lines[l]
                .indices()
                .map(|j| self.t.points[j])
                .find(|x| *x != p)
                .expect("line has two points");
            // f(s P + t D) = c30 s^3 + c21 s^2 t + c12 s t^2 + c03 t^3.
            let m = [[p[0], d[0], Fe::ZERO], [p[1], d[1], Fe::ZERO], [p[2], d[2], Fe::ZERO]];
            let r = poly.substitute(field, &m);
            if r.coeff([1, 2, 0]).is_zero() && !r.coeff([0, 3, 0]).is_zero() {
                count += 1;
            }
        }
        count
    }

    pub fn line_profile(&self, f: &HomogeneousCubic) -> Result<[u32; 4]> {
        if !self.classify(f).is_absolutely_irreducible() {
            return Err(Error::Reducible);
        }
        Ok(self.t.line_profile(self.zero_set(f)))
    }

    pub fn profile(&self, f: &HomogeneousCubic) -> CubicProfile {
        let z = self.zero_set(f);
        let s = self.t.singular_mask(&f.coeffs, z);
        let kind = self.t.decide(&f.coeffs, z, s);
        let irreducible = kind.is_absolutely_irreducible();
        CubicProfile {
            kind,
            weight: self.t.n() - z.count() as usize,
            inflections: irreducible.then(|| self.t.inflections(z, s, |i| self.t.gradient(&f.coeffs, i))),
            line_profile: irreducible.then(|| self.t.line_profile(z)),
        }
    }

    /// Isomorphism class of a smooth cubic (characteristic at least 5).
    pub fn smooth_class(&self, f: &HomogeneousCubic) -> Result<SmoothClass> {
        if !self.classify(f).is_smooth() {
            return Err(Error::NotSmooth);
        }
        let z = self.zero_set(f);
        let r = z.first().expect("smooth cubics have a rational point");
        smooth_class_at(&self.t.field, &self.t.moved(&f.coeffs, r))
    }
}

impl<M: Mask> Tables<M> {
    /// `f(w P_i + s u_i + t v_i)` in the monomial order of `(w, s, t)`.
    pub fn moved(&self, c: &[Fe; 10], i: usize) -> [Fe; 10] {
        std::array::from_fn(|e| dot(&self.field, &self.subst[i][e], c))
    }
}

/// Jacobian, in canonical short Weierstrass form, of a smooth cubic moved so
/// that a rational point sits at `(1:0:0)`: `g = w^2 L1 + w Q2 + K3` in `(w, s, t)`.
pub(crate) fn smooth_class_at(field: &Field, g: &[Fe; 10]) -> Result<SmoothClass> {
    if field.p() < 5 {
        return Err(Error::OutOfScope("smooth class keys need characteristic >= 5".into()));
    }
    let f = field;
    let co = |e: [u8; 3]| g[monomial_index(e)];
    let l1 = [co([2, 1, 0]), co([2, 0, 1])];
    let q2 = [co([1, 2, 0]), co([1, 1, 1]), co([1, 0, 2])];
    let k3 = [co([0, 3, 0]), co([0, 2, 1]), co([0, 1, 2]), co([0, 0, 3])];
    // Discriminant D = Q2^2 - 4 L1 K3 of g as a quadratic in w.
    let mut quartic = [Fe::ZERO; 5];
    for i in 0..3 {
        for j in 0..3 {
            quartic[i + j] = f.add(quartic[i + j], f.mul(q2[i], q2[j]));
        }
    }
    let four = f.from_int(4);
    for i in 0..2 {
        for j in 0..4 {
            quartic[i + j] = f.sub(quartic[i + j], f.mul(four, f.mul(l1[i], k3[j])));
        }
    }
    let [a, b, cq, d, e] = quartic;
    let n = |k: i64| f.from_int(k);
    let mul3 = |x: Fe, y: Fe, z: Fe| f.mul(x, f.mul(y, z));
    let i_inv = f.add(f.sub(f.mul(n(12), f.mul(a, e)), f.mul(n(3), f.mul(b, d))), f.mul(cq, cq));
    let j_inv = [
        f.mul(n(72), mul3(a, cq, e)),
        f.mul(n(9), mul3(b, cq, d)),
        f.neg(f.mul(n(27), mul3(a, d, d))),
        f.neg(f.mul(n(27), mul3(e, b, b))),
        f.neg(f.mul(n(2), mul3(cq, cq, cq))),
    ]
    .into_iter()
    .fold(Fe::ZERO, |acc, x| f.add(acc, x));
    let curve = ShortWeierstrass::new(f.neg(f.mul(n(27), i_inv)), f.neg(f.mul(n(27), j_inv)));
    if curve.is_singular(f) {
        return Err(Error::NotSmooth);
    }
    let (ca, cb) = curve.canonical(f);
    Ok(SmoothClass { a: ca.0, b: cb.0 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubics::{codeword_weight, CodeSpec};
    use crate::ff::field_of_order;

    fn cubic(field: &Field, terms: &[(i64, [u8; 3])]) -> HomogeneousCubic {
        HomogeneousCubic::from_terms(field, terms)
    }

    #[test]
    fn examples() {
        let f5 = field_of_order(5).unwrap();
        let cl = Classifier::new(f5.clone()).unwrap();
        assert_eq!(cl.classify(&cubic(&f5, &[(1, [3, 0, 0])])), CubicKind::TripleLine);
        // x0 (x0 + x1) x1 = x0^2 x1 + x0 x1^2
        let conc = cubic(&f5, &[(1, [2, 1, 0]), (1, [1, 2, 0])]);
        assert_eq!(cl.classify(&conc), CubicKind::ConcurrentRational);
        // x1^2 x2 - x0^3 - x0^2 x2: node at (0:0:1) with cone x1^2 - x0^2.
        let node = cubic(&f5, &[(1, [0, 2, 1]), (-1, [3, 0, 0]), (-1, [2, 0, 1])]);
        assert_eq!(cl.classify(&node), CubicKind::SplitNode);
        let cusp = cubic(&f5, &[(1, [0, 2, 1]), (-1, [3, 0, 0])]);
        assert_eq!(cl.classify(&cusp), CubicKind::Cusp);
        // 2 is a non-square mod 5: x1^2 x2 - 2 x0^2 x2 - x0^3.
        let ns = cubic(&f5, &[(1, [0, 2, 1]), (-2, [2, 0, 1]), (-1, [3, 0, 0])]);
        assert_eq!(cl.classify(&ns), CubicKind::NonsplitNode);
        assert_eq!(cl.classify(&HomogeneousCubic::zero()), CubicKind::Zero);
        let xyz = cubic(&f5, &[(1, [1, 1, 1])]);
        assert_eq!(cl.classify(&xyz), CubicKind::NonConcurrentRational);
    }

    #[test]
    fn kind_weight_matches_codeword() {
        let f5 = field_of_order(5).unwrap();
        let cl = Classifier::new(f5.clone()).unwrap();
        let spec = CodeSpec::projective(f5.clone());
        let mut seed = 12345u64;
        for _ in 0..3000 {
            let codes: [u32; 10] = std::array::from_fn(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((seed >> 33) % 5) as u32
            });
            let f = HomogeneousCubic::from_codes(codes);
            let kind = cl.classify(&f);
            assert_eq!(kind.weight(5), codeword_weight(&f, &spec) as i64, "{f:?}");
        }
    }

    #[test]
    fn contact_and_mask_inflections_agree() {
        for q in [5u64, 7] {
            let fq = field_of_order(q).unwrap();
            let cl = Classifier::new(fq.clone()).unwrap();
            let mut seed = q;
            let mut smooth = 0;
            while smooth < 300 {
                let codes: [u32; 10] = std::array::from_fn(|_| {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    ((seed >> 33) % q) as u32
                });
                let f = HomogeneousCubic::from_codes(codes);
                let prof = cl.profile(&f);
                if prof.kind.is_smooth() {
                    smooth += 1;
                    let i = cl.inflection_count(&f).unwrap();
                    assert_eq!(Some(i), prof.inflections);
                    assert!([0, 1, 3, 9].contains(&i));
                }
            }
        }
    }

    #[test]
    fn line_profile_identities() {
        let f5 = field_of_order(5).unwrap();
        let cl = Classifier::new(f5.clone()).unwrap();
        let cusp = cubic(&f5, &[(1, [0, 2, 1]), (-1, [3, 0, 0])]);
        let p = cl.profile(&cusp);
        let lp = p.line_profile.unwrap();
        assert_eq!(lp.iter().sum::<u32>(), 31);
        // q = 5 is 2 mod 3, so every cusp has one inflection line.
        assert_eq!(p.inflections, Some(1));
        assert_eq!(lp[2], (2 * 5) - 1);
        assert!(cl.line_profile(&cubic(&f5, &[(1, [3, 0, 0])])).is_err());
    }

    #[test]
    fn smooth_class_trace_matches() {
        let f7 = field_of_order(7).unwrap();
        let cl = Classifier::new(f7.clone()).unwrap();
        let mut seed = 99u64;
        let mut done = 0;
        while done < 200 {
            let codes: [u32; 10] = std::array::from_fn(|_| {
                seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                ((seed >> 33) % 7) as u32
            });
            let f = HomogeneousCubic::from_codes(codes);
            if let CubicKind::Smooth(t) = cl.classify(&f) {
                let key = cl.smooth_class(&f).unwrap();
                let e = ShortWeierstrass::new(FieldElement(key.a), FieldElement(key.b));
                assert_eq!(e.trace(&f7), t as i64);
                done += 1;
            }
        }
    }
}
