//! Classification of every cubic over a field.
//!
//! Only cubics whose first nonzero coefficient is 1 are visited; every count
//! is then multiplied by `q - 1`. The walk reuses the odometer of the
//! enumeration engine and additionally carries the three partial derivatives
//! at every point, so zero sets and rational singular points of all `q`
//! completions of the last coefficient come out of two bucket passes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::classify::{smooth_class_at, AffineFamily, CubicKind, SmoothClass, Tables, SINGULAR_KINDS};
use super::engine::{digit_rows, last_symbol_buckets, lin_comb, PrimeAdd, RowAdd, TableAdd};
use super::mask::{Mask, PointSet};
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};

type Fe = FieldElement;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CensusOptions {
    /// Record `I(C)` for absolutely irreducible cubics.
    pub inflections: bool,
    /// Record `(L_0, .., L_3)` for absolutely irreducible cubics.
    pub line_profiles: bool,
    /// Record the isomorphism class of smooth cubics (characteristic >= 5).
    pub smooth_classes: bool,
}

impl CensusOptions {
    pub fn all() -> Self {
        CensusOptions { inflections: true, line_profiles: true, smooth_classes: true }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CensusKey {
    pub kind: CubicKind,
    /// Projective weight measured from the zero set.
    pub weight: u16,
    pub affine: AffineFamily,
    pub affine_weight: u16,
    pub inflections: Option<u8>,
    pub line_profile: Option<[u16; 4]>,
    pub class: Option<SmoothClass>,
}

/// Counts of cubics by [`CensusKey`], scalar multiples included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub q: u64,
    pub entries: BTreeMap<CensusKey, u64>,
}

impl Census {
    pub fn total(&self) -> u128 {
        self.entries.values().map(|&c| c as u128).sum()
    }

    pub fn kind_counts(&self) -> BTreeMap<CubicKind, u64> {
        let mut out = BTreeMap::new();
        for (k, &c) in &self.entries {
            *out.entry(k.kind).or_insert(0) += c;
        }
        out
    }

    fn enumerator_by(&self, n: usize, sel: impl Fn(&CensusKey) -> Option<usize>) -> WeightEnumerator {
        let mut w = WeightEnumerator::new(n);
        for (k, &c) in &self.entries {
            if let Some(i) = sel(k) {
                w.add(i, BigInt::from(c));
            }
        }
        w
    }

    pub fn projective_enumerator(&self) -> WeightEnumerator {
        let n = (self.q * self.q + self.q + 1) as usize;
        self.enumerator_by(n, |k| Some(k.weight as usize))
    }

    pub fn affine_enumerator(&self) -> WeightEnumerator {
        self.affine_enumerator_where(|_| true)
    }

    /// Affine enumerator restricted to cubics whose key satisfies `pred`.
    pub fn affine_enumerator_where(&self, pred: impl Fn(&CensusKey) -> bool) -> WeightEnumerator {
        let n = (self.q * self.q) as usize;
        self.enumerator_by(n, |k| pred(k).then_some(k.affine_weight as usize))
    }

    /// Projective enumerator restricted to cubics whose key satisfies `pred`.
    pub fn projective_enumerator_where(&self, pred: impl Fn(&CensusKey) -> bool) -> WeightEnumerator {
        let n = (self.q * self.q + self.q + 1) as usize;
        self.enumerator_by(n, |k| pred(k).then_some(k.weight as usize))
    }
}

/// The fifteen singular rows: `(kind, count, weights seen)`.
pub fn singular_census(field: Arc<Field>, budget: u128) -> Result<Vec<(CubicKind, u64, Vec<u16>)>> {
    let census = Census::run(field, CensusOptions::default(), budget)?;
    let mut rows: BTreeMap<CubicKind, (u64, Vec<u16>)> = BTreeMap::new();
    for (k, &c) in &census.entries {
        if k.kind.is_smooth() {
            continue;
        }
        let e = rows.entry(k.kind).or_default();
        e.0 += c;
        if !e.1.contains(&k.weight) {
            e.1.push(k.weight);
        }
    }
    Ok(SINGULAR_KINDS
        .iter()
        .map(|&kind| {
            let (c, mut w) = rows.remove(&kind).unwrap_or_default();
            w.sort();
            (kind, c, w)
        })
        .collect())
}

impl Census {
    /// Classifies all `q^10` cubics.
    pub fn run(field: Arc<Field>, options: CensusOptions, budget: u128) -> Result<Census> {
        let q = field.q() as u64;
        let required = (q as u128).pow(10);
        if required > budget || q > 13 {
            return Err(Error::BudgetExceeded { required, budget });
        }
        let n = (q * q + q + 1) as usize;
        let entries = if n <= 64 {
            run_masked::<u64>(field, options)
        } else if n <= 128 {
            run_masked::<u128>(field, options)
        } else {
            run_masked::<PointSet>(field, options)
        };
        Ok(Census { q, entries })
    }
}

struct Walker<'a, M> {
    t: &'a Tables<M>,
    opts: CensusOptions,
    q: usize,
    /// Generator rows of value and gradient per monomial, as field codes.
    val: Vec<Vec<Fe>>,
    grad: [Vec<Vec<Fe>>; 3],
    zero_buckets: Vec<u16>,
    grad_buckets: Vec<u16>,
    /// `d(x2^3)/dx2` at every point.
    h: Vec<Fe>,
}

#[derive(Default)]
struct Acc {
    map: HashMap<CensusKey, u64>,
}

impl Acc {
    fn bump(&mut self, key: CensusKey) {
        *self.map.entry(key).or_insert(0) += 1;
    }
}

fn run_masked<M: Mask>(field: Arc<Field>, opts: CensusOptions) -> BTreeMap<CensusKey, u64> {
    let t = Tables::<M>::new(field.clone());
    let n = t.n();
    let q = t.q;
    let val: Vec<Vec<Fe>> = (0..10).map(|k| (0..n).map(|i| t.values[i][k]).collect()).collect();
    let grad: [Vec<Vec<Fe>>; 3] =
        std::array::from_fn(|j| (0..10).map(|k| (0..n).map(|i| t.grads[i][j][k]).collect()).collect());
    let h = grad[2][9].clone();
    let w = Walker {
        t: &t,
        opts,
        q,
        zero_buckets: last_symbol_buckets(&field, &val[9]),
        grad_buckets: last_symbol_buckets(&field, &h),
        val,
        grad,
        h,
    };
    let mut units: Vec<(usize, Option<u32>)> = Vec::new();
    for k in 0..=7 {
        for a in 0..q as u32 {
            units.push((k, Some(a)));
        }
    }
    units.push((8, None));
    let acc = if field.is_prime_field() {
        let adder = PrimeAdd(field.p() as u8);
        units.par_iter().map(|&u| w.unit(u, &adder)).reduce(Acc::default, merge)
    } else {
        let adder = TableAdd::new(&field);
        units.par_iter().map(|&u| w.unit(u, &adder)).reduce(Acc::default, merge)
    };
    let mut acc = acc;
    // x2^3 up to scalar, then scale everything by q - 1.
    let mut top = [Fe::ZERO; 10];
    top[9] = Fe::ONE;
    w.single(&mut acc, &top);
    let mut out: BTreeMap<CensusKey, u64> =
        acc.map.into_iter().map(|(k, c)| (k, c * (q as u64 - 1))).collect();
    let z = w.key(&[Fe::ZERO; 10], mask_all::<M>(n), mask_all::<M>(n), |_| [Fe::ZERO; 3]);
    *out.entry(z).or_insert(0) += 1;
    out
}

fn mask_all<M: Mask>(n: usize) -> M {
    super::mask::mask_from(0..n)
}

fn merge(mut a: Acc, b: Acc) -> Acc {
    for (k, c) in b.map {
        *a.map.entry(k).or_insert(0) += c;
    }
    a
}

impl<M: Mask> Walker<'_, M> {
    fn key(&self, c: &[Fe; 10], z: M, s: M, grad: impl Fn(usize) -> [Fe; 3]) -> CensusKey {
        let t = self.t;
        let kind = t.decide(c, z, s);
        let n = t.n() as u32;
        let irreducible = kind.is_absolutely_irreducible();
        let affine = t.affine_family(kind, c, z);
        CensusKey {
            kind,
            weight: (n - z.count()) as u16,
            affine,
            affine_weight: (self.q * self.q) as u16 - (z & t.affine).count() as u16,
            inflections: (self.opts.inflections && irreducible).then(|| t.inflections(z, s, &grad) as u8),
            line_profile: (self.opts.line_profiles && irreducible)
                .then(|| t.line_profile(z).map(|x| x as u16)),
            class: (self.opts.smooth_classes && kind.is_smooth()).then(|| {
                let r = z.first().expect("smooth cubics have a rational point");
                smooth_class_at(&t.field, &t.moved(c, r)).expect("smooth")
            }),
        }
    }

    fn single(&self, acc: &mut Acc, c: &[Fe; 10]) {
        let z = self.t.zero_mask(c);
        let s = self.t.singular_mask(c, z);
        acc.bump(self.key(c, z, s, |i| self.t.gradient(c, i)));
    }

    /// Cubics with `c_j = 0` for `j < k`, `c_k = 1`, `c_{k+1} = a`, and every
    /// value of `c_{k+2}, .., c_9`.
    fn unit<A: RowAdd>(&self, (k, a): (usize, Option<u32>), adder: &A) -> Acc {
        let t = self.t;
        let field = &*t.field;
        let n = t.n();
        let q = self.q;
        let p = field.p() as u8;
        let mut coeffs = [Fe::ZERO; 10];
        coeffs[k] = Fe::ONE;
        if let Some(a) = a {
            coeffs[k + 1] = FieldElement(a);
        }
        let fixed: Vec<(Fe, &[Fe])> = (0..9).map(|j| (coeffs[j], self.val[j].as_slice())).collect();
        let mut v = lin_comb(field, &fixed, n);
        let mut d: [Vec<u8>; 3] = std::array::from_fn(|g| {
            let terms: Vec<(Fe, &[Fe])> = (0..9).map(|j| (coeffs[j], self.grad[g][j].as_slice())).collect();
            lin_comb(field, &terms, n)
        });
        let free: Vec<usize> = (k + 2..9).collect();
        // Digit rows: (symbol, digit) -> rows for value and the three partials.
        let mut rows: Vec<(usize, u32, [Vec<u8>; 4])> = Vec::new();
        for &s in &free {
            let vr = digit_rows(field, &self.val[s]);
            let gr: [Vec<Vec<u8>>; 3] = std::array::from_fn(|g| digit_rows(field, &self.grad[g][s]));
            for j in 0..field.v() as usize {
                rows.push((s, j as u32, [vr[j].clone(), gr[0][j].clone(), gr[1][j].clone(), gr[2][j].clone()]));
            }
        }
        let mut digits = vec![0u8; rows.len()];
        let mut acc = Acc::default();
        let mut zm = vec![M::default(); q + 2];
        let mut sm = vec![M::default(); q + 2];
        loop {
            // Prefix coefficients from the odometer digits.
            for &s in &free {
                coeffs[s] = Fe::ZERO;
            }
            for (r, &(s, j, _)) in rows.iter().enumerate() {
                coeffs[s] = FieldElement(coeffs[s].0 + digits[r] as u32 * field.p().pow(j));
            }
            zm.iter_mut().for_each(|m| *m = M::default());
            sm.iter_mut().for_each(|m| *m = M::default());
            for i in 0..n {
                zm[self.zero_buckets[i * q + v[i] as usize] as usize] =
                    zm[self.zero_buckets[i * q + v[i] as usize] as usize] | M::bit(i);
                if d[0][i] == 0 && d[1][i] == 0 {
                    let b = self.grad_buckets[i * q + d[2][i] as usize] as usize;
                    sm[b] = sm[b] | M::bit(i);
                }
            }
            for c9 in 0..q {
                let z = zm[c9] | zm[q];
                let s = (sm[c9] | sm[q]) & z;
                coeffs[9] = FieldElement(c9 as u32);
                let grad = |i: usize| {
                    [
                        FieldElement(d[0][i] as u32),
                        FieldElement(d[1][i] as u32),
                        field.add(FieldElement(d[2][i] as u32), field.mul(FieldElement(c9 as u32), self.h[i])),
                    ]
                };
                acc.bump(self.key(&coeffs, z, s, grad));
            }
            coeffs[9] = Fe::ZERO;
            let mut r = 0;
            loop {
                if r == rows.len() {
                    return acc;
                }
                let [vr, g0, g1, g2] = &rows[r].2;
                adder.add_row(&mut v, vr);
                adder.add_row(&mut d[0], g0);
                adder.add_row(&mut d[1], g1);
                adder.add_row(&mut d[2], g2);
                digits[r] += 1;
                if digits[r] == p {
                    digits[r] = 0;
                    r += 1;
                } else {
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubics::engine::DEFAULT_BUDGET;
    use crate::cubics::{brute_weight_enumerator, Classifier, CodeSpec, HomogeneousCubic};
    use crate::ff::field_of_order;

    #[test]
    fn census_matches_direct_classification_q3() {
        let f3 = field_of_order(3).unwrap();
        let census = Census::run(f3.clone(), CensusOptions { inflections: true, line_profiles: true, smooth_classes: false }, DEFAULT_BUDGET).unwrap();
        let cl = Classifier::new(f3.clone()).unwrap();
        let mut direct: BTreeMap<CubicKind, u64> = BTreeMap::new();
        for mut m in 0..3u32.pow(10) {
            let codes: [u32; 10] = std::array::from_fn(|_| {
                let c = m % 3;
                m /= 3;
                c
            });
            *direct.entry(cl.classify(&HomogeneousCubic::from_codes(codes))).or_insert(0) += 1;
        }
        assert_eq!(census.kind_counts(), direct);
        assert_eq!(census.total(), 59049);
    }

    #[test]
    fn census_enumerators_match_engine() {
        for q in [2u64, 3, 4] {
            let f = field_of_order(q).unwrap();
            let census = Census::run(f.clone(), CensusOptions::default(), DEFAULT_BUDGET).unwrap();
            let proj = brute_weight_enumerator(&CodeSpec::projective(f.clone()), DEFAULT_BUDGET).unwrap();
            let aff = brute_weight_enumerator(&CodeSpec::affine(f.clone()), DEFAULT_BUDGET).unwrap();
            assert_eq!(census.projective_enumerator(), proj, "q={q}");
            assert_eq!(census.affine_enumerator(), aff, "q={q}");
        }
    }

    #[test]
    fn q2_conic_secant_count() {
        let rows = singular_census(field_of_order(2).unwrap(), DEFAULT_BUDGET).unwrap();
        let secant = rows.iter().find(|r| r.0 == CubicKind::ConicSecantLine).unwrap();
        assert_eq!(secant.1, 84);
    }
}
