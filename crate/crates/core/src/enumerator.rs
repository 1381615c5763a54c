//! Sparse weight enumerators with arbitrary-precision counts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `W(X, Y) = sum_i A_i X^{N-i} Y^i`, stored as a sparse map `i -> A_i`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeightEnumerator {
    length: usize,
    counts: BTreeMap<usize, BigInt>,
}

impl WeightEnumerator {
    pub fn new(length: usize) -> Self {
        WeightEnumerator { length, counts: BTreeMap::new() }
    }

    pub fn from_counts<I, C>(length: usize, counts: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut w = WeightEnumerator::new(length);
        for (i, c) in counts {
            w.add(i, c.into());
        }
        w
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Adds `c` to `A_i`, dropping entries that become zero.
    pub fn add(&mut self, weight: usize, c: BigInt) {
        assert!(weight <= self.length, "weight {weight} exceeds length {}", self.length);
        if c.is_zero() {
            return;
        }
        let e = self.counts.entry(weight).or_insert_with(BigInt::zero);
        *e += c;
        if e.is_zero() {
            self.counts.remove(&weight);
        }
    }

    pub fn get(&self, weight: usize) -> BigInt {
        self.counts.get(&weight).cloned().unwrap_or_default()
    }

    /// Nonzero coefficients in increasing weight order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.counts.iter().map(|(&i, c)| (i, c))
    }

    pub fn total(&self) -> BigInt {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn merge(&mut self, other: &WeightEnumerator) {
        assert_eq!(self.length, other.length);
        for (i, c) in other.iter() {
            self.add(i, c.clone());
        }
    }

    pub fn sub(&self, other: &WeightEnumerator) -> WeightEnumerator {
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add(i, -c);
        }
        out
    }

    pub fn scaled(&self, s: &BigInt) -> WeightEnumerator {
        let mut out = WeightEnumerator::new(self.length);
        for (i, c) in self.iter() {
            out.add(i, c * s);
        }
        out
    }

    /// Fails on the first negative coefficient.
    pub fn check_nonnegative(&self) -> Result<()> {
        match self.counts.iter().find(|(_, c)| c.is_negative()) {
            Some((&i, _)) => Err(Error::NegativeCoefficient(i)),
            None => Ok(()),
        }
    }

    /// The enumerator of the whole space `F_q^N`.
    pub fn full_space(q: u64, length: usize) -> WeightEnumerator {
        let mut w = WeightEnumerator::new(length);
        let mut binom = BigInt::one();
        let qm1 = BigInt::from(q - 1);
        let mut pw = BigInt::one();
        for i in 0..=length {
            w.add(i, &binom * &pw);
            binom = binom * BigInt::from(length - i) / BigInt::from(i + 1);
            pw *= &qm1;
        }
        w
    }
}

impl fmt::Display for WeightEnumerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c} X^{} Y^{i}", self.length - i)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
