//! Fixed-width bit masks for the desk-scale searches.

use crate::error::{Error, Result};

/// Largest vertex or edge count a [`Mask`] can index.
pub const MASK_BITS: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mask([u64; 4]);

impl Mask {
    pub const EMPTY: Mask = Mask([0; 4]);

    pub fn from_indices(ix: impl IntoIterator<Item = usize>) -> Mask {
        let mut m = Mask::EMPTY;
        for i in ix {
            m.insert(i);
        }
        m
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, i: usize) {
        self.0[i >> 6] &= !(1 << (i & 63));
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn is_disjoint(&self, o: &Mask) -> bool {
        (self.0[0] & o.0[0]) | (self.0[1] & o.0[1]) | (self.0[2] & o.0[2]) | (self.0[3] & o.0[3]) == 0
    }

    pub fn union(&self, o: &Mask) -> Mask {
        Mask([self.0[0] | o.0[0], self.0[1] | o.0[1], self.0[2] | o.0[2], self.0[3] | o.0[3]])
    }

    pub fn intersection(&self, o: &Mask) -> Mask {
        Mask([self.0[0] & o.0[0], self.0[1] & o.0[1], self.0[2] & o.0[2], self.0[3] & o.0[3]])
    }

    pub fn difference(&self, o: &Mask) -> Mask {
        Mask([self.0[0] & !o.0[0], self.0[1] & !o.0[1], self.0[2] & !o.0[2], self.0[3] & !o.0[3]])
    }

    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..4).flat_map(move |w| {
            let mut word = self.0[w];
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + b)
            })
        })
    }
}

pub(crate) fn check_width(nodes: usize, edges: usize) -> Result<()> {
    if nodes > MASK_BITS || edges > MASK_BITS {
        return Err(Error::GuardExceeded(format!(
            "{nodes} vertices / {edges} edges exceed the hard limit of {MASK_BITS}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mask_basics() {
        let a = Mask::from_indices([0, 63, 64, 200]);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 63, 64, 200]);
        assert_eq!(a.len(), 4);
        let b = Mask::from_indices([64]);
        assert!(!a.is_disjoint(&b));
        assert!(a.difference(&b).is_disjoint(&b));
    }
}
