//! Packed bit vectors used for weight assignments and neighborhood masks.

use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 2]>;

/// Fixed-length bit vector with one bit per vertex.
///
/// Positions up to 128 vertices stay inline (no heap allocation), which keeps
/// the solver's successor generation cheap.  Bits above `len` are always
/// zero, so derived `Eq`/`Hash` are well-defined.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Weights {
    words: Words,
    len: usize,
}

fn word_count(len: usize) -> usize {
    len.div_ceil(64)
}

impl Weights {
    pub fn zeros(len: usize) -> Weights {
        Weights {
            words: smallvec![0; word_count(len)],
            len,
        }
    }

    pub fn all_ones(len: usize) -> Weights {
        let mut w = Weights {
            words: smallvec![!0u64; word_count(len)],
            len,
        };
        w.mask_tail();
        w
    }

    pub fn from_bits(bits: &[bool]) -> Weights {
        let mut w = Weights::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                w.set(i, true);
            }
        }
        w
    }

    /// Parses a string of `0`/`1` characters, one per vertex.
    pub fn from_bitstring(s: &str) -> Result<Weights> {
        let mut w = Weights::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => w.set(i, true),
                other => {
                    return Err(Error::input(format!(
                        "weight string may contain only 0 and 1, found {other:?}"
                    )))
                }
            }
        }
        Ok(w)
    }

    fn mask_tail(&mut self) {
        let used = self.len % 64;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i / 64] |= 1u64 << (i % 64);
        } else {
            self.words[i / 64] &= !(1u64 << (i % 64));
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    /// Complements every bit (tail bits stay zero).
    pub fn flip_all(&mut self) {
        for w in self.words.iter_mut() {
            *w = !*w;
        }
        self.mask_tail();
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    #[inline]
    pub fn xor_in_place(&mut self, mask: &Weights) {
        debug_assert_eq!(self.len, mask.len);
        for (a, b) in self.words.iter_mut().zip(&mask.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, mask: &Weights) -> Weights {
        let mut out = self.clone();
        out.xor_in_place(mask);
        out
    }

    pub fn or_in_place(&mut self, other: &Weights) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Number of positions set in both `self` and `mask`.
    #[inline]
    pub fn and_count(&self, mask: &Weights) -> usize {
        self.words
            .iter()
            .zip(&mask.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersects(&self, mask: &Weights) -> bool {
        self.words.iter().zip(&mask.words).any(|(a, b)| a & b != 0)
    }

    /// Lowest position set in both `self` and `mask`, if any.
    pub fn first_common(&self, mask: &Weights) -> Option<usize> {
        for (i, (a, b)) in self.words.iter().zip(&mask.words).enumerate() {
            let word = a & b;
            if word != 0 {
                return Some(i * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl std::fmt::Debug for Weights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Weights({})", self.to_bitstring())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_and_masks() {
        let w = Weights::from_bitstring("1010011").unwrap();
        assert_eq!(w.to_bitstring(), "1010011");
        assert_eq!(w.count_ones(), 4);
        let m = Weights::from_bitstring("1110000").unwrap();
        assert_eq!(w.and_count(&m), 2);
        assert_eq!(w.first_common(&m), Some(0));
        let x = w.xor(&m);
        assert_eq!(x.to_bitstring(), "0100011");
    }

    #[test]
    fn all_ones_masks_tail_bits() {
        let w = Weights::all_ones(70);
        assert_eq!(w.count_ones(), 70);
        assert_eq!(w, Weights::from_bits(&[true; 70]));
    }

    #[test]
    fn rejects_non_binary_characters() {
        assert!(Weights::from_bitstring("10x1").is_err());
    }
}
