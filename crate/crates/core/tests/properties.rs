use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use cubic_rm::cubics::{brute_weight_enumerator, enumerate_generator, puncture, CodeSpec, DEFAULT_BUDGET};
use cubic_rm::ff::{field_of_order, prime_power, Field, FieldElement};
use cubic_rm::macwilliams::transform;
use cubic_rm::plane::{Normalization, ProjectivePlane};
use cubic_rm::WeightEnumerator;

fn orders() -> Vec<u64> {
    (2..=49).filter(|&q| prime_power(q).is_some()).collect()
}

fn field_and_elements() -> impl Strategy<Value = (Arc<Field>, FieldElement, FieldElement, FieldElement)> {
    prop::sample::select(orders()).prop_flat_map(|q| {
        let f = field_of_order(q).unwrap();
        let q = q as u32;
        (Just(f), 0..q, 0..q, 0..q).prop_map(|(f, a, b, c)| (f, FieldElement(a), FieldElement(b), FieldElement(c)))
    })
}

/// Enumerator of the code spanned by `gen`, with multiplicities removed.
fn code_enumerator(f: &Field, gen: &[Vec<FieldElement>]) -> WeightEnumerator {
    let w = enumerate_generator(f, gen);
    let zero = w.get(0);
    WeightEnumerator::from_counts(w.length(), w.iter().map(|(i, c)| (i, c / &zero)).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, a, b, c) in field_and_elements()) {
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if !b.is_zero() {
            prop_assert_eq!(f.mul(f.div(a, b).unwrap(), b), a);
        }
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
    }

    #[test]
    fn macwilliams_involution_q5(rows in prop::collection::vec(prop::collection::vec(0u32..5, 7), 1..4)) {
        let f = field_of_order(5).unwrap();
        let gen: Vec<Vec<FieldElement>> = rows.iter().map(|r| r.iter().map(|&x| FieldElement(x)).collect()).collect();
        let w = code_enumerator(&f, &gen);
        let dual = transform(&w, 5).unwrap();
        prop_assert_eq!(dual.total() * w.total(), BigInt::from(5).pow(7));
        prop_assert_eq!(transform(&dual, 5).unwrap(), w);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn puncturing_any_line_gives_the_affine_code(q in prop::sample::select(vec![2u64, 3, 4, 5]), pick in any::<prop::sample::Index>()) {
        let f = field_of_order(q).unwrap();
        let plane = ProjectivePlane::new(f.clone());
        let line = &plane.lines()[pick.index(plane.lines().len())];
        let proj = CodeSpec::projective(f.clone());
        let punctured = enumerate_generator(&f, &puncture(&proj.generator_matrix(), &line.points));
        let affine = brute_weight_enumerator(&CodeSpec::affine(f), DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(punctured, affine);
    }

    #[test]
    fn monomial_equivalence_keeps_the_enumerator(
        q in prop::sample::select(vec![2u64, 3, 4]),
        last in any::<bool>(),
        seed in prop::collection::vec(any::<prop::sample::Index>(), 31),
        scales in prop::collection::vec(any::<prop::sample::Index>(), 21),
    ) {
        let f = field_of_order(q).unwrap();
        let norm = if last { Normalization::LastNonzero } else { Normalization::FirstNonzero };
        let base = brute_weight_enumerator(&CodeSpec::projective(f.clone()), DEFAULT_BUDGET).unwrap();
        let spec = CodeSpec::projective_with(f.clone(), norm);
        let n = spec.length();
        let mut perm: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            perm.swap(i, seed[i].index(i + 1));
        }
        let mut gen = spec.permuted(&perm).generator_matrix();
        let units: Vec<FieldElement> = f.elements().filter(|a| !a.is_zero()).collect();
        for row in &mut gen {
            for (i, x) in row.iter_mut().enumerate() {
                *x = f.mul(*x, units[scales[i % scales.len()].index(units.len())]);
            }
        }
        prop_assert_eq!(enumerate_generator(&f, &gen), base);
    }
}
