//! Exhaustive codeword enumeration.
//!
//! Message symbols are walked in odometer order with one generator row added
//! per step. Symbols are split into their base-`p` digits so every step adds a
//! fixed precomputed row. The two leading symbols index independent work units.
//! The last symbol is never enumerated: for a fixed prefix codeword `v`, the
//! coordinate `v_i + c g_i` vanishes for exactly one `c` when `g_i != 0`, so a
//! per-coordinate lookup yields the zero counts of all `q` completions at once.

use rayon::prelude::*;

use super::CodeSpec;
use crate::enumerator::WeightEnumerator;
use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};

/// 7^10 codewords.
pub const DEFAULT_BUDGET: u128 = 282_475_249;

pub(crate) trait RowAdd: Sync {
    fn add_row(&self, v: &mut [u8], row: &[u8]);
}

pub(crate) struct PrimeAdd(pub u8);

impl RowAdd for PrimeAdd {
    #[inline]
    fn add_row(&self, v: &mut [u8], row: &[u8]) {
        let p = self.0;
        for (a, &b) in v.iter_mut().zip(row) {
            let s = *a + b;
            *a = if s >= p { s - p } else { s };
        }
    }
}

pub(crate) struct TableAdd {
    q: usize,
    table: Vec<u8>,
}

impl TableAdd {
    pub fn new(field: &Field) -> Self {
        let q = field.q() as usize;
        let mut table = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                table[a * q + b] = field.add(FieldElement(a as u32), FieldElement(b as u32)).0 as u8;
            }
        }
        TableAdd { q, table }
    }
}

impl RowAdd for TableAdd {
    #[inline]
    fn add_row(&self, v: &mut [u8], row: &[u8]) {
        for (a, &b) in v.iter_mut().zip(row) {
            *a = self.table[*a as usize * self.q + b as usize];
        }
    }
}

/// Rows `beta_j * g` for every digit `j` of a symbol, `beta_j = p^j` as a code.
pub(crate) fn digit_rows(field: &Field, g: &[FieldElement]) -> Vec<Vec<u8>> {
    (0..field.v())
        .map(|j| {
            let beta = FieldElement(field.p().pow(j));
            g.iter().map(|&x| field.mul(beta, x).0 as u8).collect()
        })
        .collect()
}

/// `bucket[i * q + a]`: the last-symbol value making coordinate `i` vanish
/// when the prefix codeword has value `a` there; `q` if it always vanishes,
/// `q + 1` if it never does.
pub(crate) fn last_symbol_buckets(field: &Field, g: &[FieldElement]) -> Vec<u16> {
    let q = field.q() as usize;
    let mut out = vec![0u16; g.len() * q];
    for (i, &gi) in g.iter().enumerate() {
        for a in 0..q {
            let fa = FieldElement(a as u32);
            out[i * q + a] = if gi.is_zero() {
                if a == 0 { q as u16 } else { q as u16 + 1 }
            } else {
                field.neg(field.div(fa, gi).expect("nonzero")).0 as u16
            };
        }
    }
    out
}

pub(crate) fn lin_comb(field: &Field, terms: &[(FieldElement, &[FieldElement])], n: usize) -> Vec<u8> {
    (0..n)
        .map(|i| {
            terms
                .iter()
                .fold(FieldElement::ZERO, |acc, (c, row)| field.add(acc, field.mul(*c, row[i])))
                .0 as u8
        })
        .collect()
}

/// Weight enumerator of the code spanned by the rows of `gen`, counting every
/// message (so a dependent generator gives multiplicities).
pub fn enumerate_generator(field: &Field, gen: &[Vec<FieldElement>]) -> WeightEnumerator {
    assert!(field.q() <= 255, "engine needs q <= 255");
    assert!(!gen.is_empty());
    if field.is_prime_field() {
        run(field, gen, &PrimeAdd(field.p() as u8))
    } else {
        run(field, gen, &TableAdd::new(field))
    }
}

fn run<A: RowAdd>(field: &Field, gen: &[Vec<FieldElement>], adder: &A) -> WeightEnumerator {
    let q = field.q() as usize;
    let p = field.p() as u8;
    let n = gen[0].len();
    let k = gen.len();
    let last = &gen[k - 1];
    let buckets = last_symbol_buckets(field, last);
    let lead = (k - 1).min(2);
    let rows: Vec<Vec<u8>> = gen[lead..k - 1].iter().flat_map(|g| digit_rows(field, g)).collect();

    let units: Vec<Vec<FieldElement>> = (0..q.pow(lead as u32))
        .map(|mut idx| {
            (0..lead)
                .map(|_| {
                    let c = FieldElement((idx % q) as u32);
                    idx /= q;
                    c
                })
                .collect()
        })
        .collect();

    let hist = units
        .par_iter()
        .map(|lead_vals| {
            let terms: Vec<(FieldElement, &[FieldElement])> =
                lead_vals.iter().zip(gen).map(|(&c, g)| (c, g.as_slice())).collect();
            let mut v = lin_comb(field, &terms, n);
            let mut hist = vec![0u64; n + 1];
            let mut digits = vec![0u8; rows.len()];
            let mut cnt = vec![0u32; q + 2];
            loop {
                cnt.iter_mut().for_each(|c| *c = 0);
                for (i, &a) in v.iter().enumerate() {
                    cnt[buckets[i * q + a as usize] as usize] += 1;
                }
                for c in 0..q {
                    hist[n - (cnt[c] + cnt[q]) as usize] += 1;
                }
                let mut j = 0;
                loop {
                    if j == rows.len() {
                        return hist;
                    }
                    adder.add_row(&mut v, &rows[j]);
                    digits[j] += 1;
                    if digits[j] == p {
                        digits[j] = 0;
                        j += 1;
                    } else {
                        break;
                    }
                }
            }
        })
        .reduce(|| vec![0u64; n + 1], |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        });
    WeightEnumerator::from_counts(n, hist.into_iter().enumerate().filter(|(_, c)| *c > 0))
}

/// Brute-force weight enumerator of a code, refusing to start when `q^10`
/// exceeds `budget`.
pub fn brute_weight_enumerator(spec: &CodeSpec, budget: u128) -> Result<WeightEnumerator> {
    let required = (spec.q() as u128).pow(10);
    if required > budget || spec.q() > 255 {
        return Err(Error::BudgetExceeded { required, budget });
    }
    Ok(enumerate_generator(&spec.field, &spec.generator_matrix()))
}

/// Generator of the code obtained by deleting the listed coordinates.
pub fn puncture(gen: &[Vec<FieldElement>], delete: &[usize]) -> Vec<Vec<FieldElement>> {
    gen.iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(i, _)| !delete.contains(i))
                .map(|(_, &x)| x)
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cubics::{codeword_weight, HomogeneousCubic};
    use crate::ff::field_of_order;
    use num_bigint::BigInt;

    fn naive(spec: &CodeSpec) -> WeightEnumerator {
        let q = spec.q() as u32;
        let mut w = WeightEnumerator::new(spec.length());
        let total = q.pow(10);
        for mut m in 0..total {
            let mut codes = [0u32; 10];
            for c in codes.iter_mut() {
                *c = m % q;
                m /= q;
            }
            w.add(codeword_weight(&HomogeneousCubic::from_codes(codes), spec), BigInt::from(1));
        }
        w
    }

    #[test]
    fn matches_naive_small() {
        for q in [2u64, 3] {
            let f = field_of_order(q).unwrap();
            for spec in [CodeSpec::projective(f.clone()), CodeSpec::affine(f.clone())] {
                let w = brute_weight_enumerator(&spec, DEFAULT_BUDGET).unwrap();
                assert_eq!(w, naive(&spec), "q={q} {:?}", spec.variant);
            }
        }
    }

    #[test]
    fn q2_total_and_q5_examples() {
        let f2 = field_of_order(2).unwrap();
        let w = brute_weight_enumerator(&CodeSpec::projective(f2), DEFAULT_BUDGET).unwrap();
        assert_eq!(w.total(), BigInt::from(1024));
        let f5 = field_of_order(5).unwrap();
        let w = brute_weight_enumerator(&CodeSpec::projective(f5), DEFAULT_BUDGET).unwrap();
        assert_eq!(w.get(0), BigInt::from(1));
        assert_eq!(w.get(16), BigInt::from(15500));
        assert_eq!(w.get(15), BigInt::from(2480));
        assert!((1..=14).all(|i| w.get(i) == BigInt::from(0)));
        assert_eq!(w.total(), BigInt::from(5u64.pow(10)));
    }

    #[test]
    fn extension_field_matches_naive() {
        let f4 = field_of_order(4).unwrap();
        let spec = CodeSpec::affine(f4);
        // Restrict to a 6-row generator so the naive loop stays small.
        let gen: Vec<_> = spec.generator_matrix().into_iter().take(6).collect();
        let w = enumerate_generator(&spec.field, &gen);
        let mut expect = WeightEnumerator::new(16);
        for mut m in 0..4u32.pow(6) {
            let mut word = [FieldElement::ZERO; 16];
            for row in &gen {
                let c = FieldElement(m % 4);
                m /= 4;
                for (x, &g) in word.iter_mut().zip(row) {
                    *x = spec.field.add(*x, spec.field.mul(c, g));
                }
            }
            expect.add(word.iter().filter(|x| !x.is_zero()).count(), BigInt::from(1));
        }
        assert_eq!(w, expect);
    }

    #[test]
    fn budget_guard() {
        let f = field_of_order(8).unwrap();
        assert!(matches!(
            brute_weight_enumerator(&CodeSpec::projective(f), DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
