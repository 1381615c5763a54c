//! Bitsets over point indices.

use std::ops::{BitAnd, BitOr, Not};

pub trait Mask:
    Copy + Default + Eq + Send + Sync + BitAnd<Output = Self> + BitOr<Output = Self> + Not<Output = Self>
{
    const CAPACITY: usize;
    fn bit(i: usize) -> Self;
    fn count(self) -> u32;
    fn is_empty(self) -> bool {
        self == Self::default()
    }
    fn contains(self, i: usize) -> bool {
        !(self & Self::bit(i)).is_empty()
    }
    fn first(self) -> Option<usize>;
    /// Removes and returns the lowest set index.
    fn pop(&mut self) -> Option<usize>;
}

impl Mask for u64 {
    const CAPACITY: usize = 64;
    #[inline]
    fn bit(i: usize) -> Self {
        1u64 << i
    }
    #[inline]
    fn count(self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn first(self) -> Option<usize> {
        (self != 0).then(|| self.trailing_zeros() as usize)
    }
    #[inline]
    fn pop(&mut self) -> Option<usize> {
        let i = self.first()?;
        *self &= *self - 1;
        Some(i)
    }
}

impl Mask for u128 {
    const CAPACITY: usize = 128;
    #[inline]
    fn bit(i: usize) -> Self {
        1u128 << i
    }
    #[inline]
    fn count(self) -> u32 {
        self.count_ones()
    }
    #[inline]
    fn first(self) -> Option<usize> {
        (self != 0).then(|| self.trailing_zeros() as usize)
    }
    #[inline]
    fn pop(&mut self) -> Option<usize> {
        let i = self.first()?;
        *self &= *self - 1;
        Some(i)
    }
}

/// A set of at most 256 point indices.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct PointSet(pub [u64; 4]);

impl BitAnd for PointSet {
    type Output = Self;
    #[inline]
    fn bitand(self, o: Self) -> Self {
        PointSet(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }
}

impl BitOr for PointSet {
    type Output = Self;
    #[inline]
    fn bitor(self, o: Self) -> Self {
        PointSet(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }
}

impl Not for PointSet {
    type Output = Self;
    #[inline]
    fn not(self) -> Self {
        PointSet(self.0.map(|w| !w))
    }
}

impl Mask for PointSet {
    const CAPACITY: usize = 256;
    #[inline]
    fn bit(i: usize) -> Self {
        let mut w = [0u64; 4];
        w[i / 64] = 1u64 << (i % 64);
        PointSet(w)
    }
    #[inline]
    fn count(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    #[inline]
    fn first(self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, w)| **w != 0)
            .map(|(k, w)| 64 * k + w.trailing_zeros() as usize)
    }
    #[inline]
    fn pop(&mut self) -> Option<usize> {
        let i = self.first()?;
        self.0[i / 64] &= self.0[i / 64] - 1;
        Some(i)
    }
}

impl PointSet {
    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> Self {
        it.into_iter().fold(PointSet::default(), |m, i| m | PointSet::bit(i))
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut m = self;
        std::iter::from_fn(move || m.pop())
    }
}

pub(crate) fn mask_from<M: Mask>(it: impl IntoIterator<Item = usize>) -> M {
    it.into_iter().fold(M::default(), |m, i| m | M::bit(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointset_ops() {
        let a = PointSet::from_indices([0, 63, 64, 200]);
        assert_eq!(a.count(), 4);
        assert!(a.contains(200) && !a.contains(199));
        assert_eq!(a.indices().collect::<Vec<_>>(), vec![0, 63, 64, 200]);
        let b = PointSet::from_indices([63, 7]);
        assert_eq!((a & b).indices().collect::<Vec<_>>(), vec![63]);
        assert_eq!((a | b).count(), 5);
        let m: u64 = mask_from([1, 5]);
        assert_eq!(m, 0b100010);
    }
}
