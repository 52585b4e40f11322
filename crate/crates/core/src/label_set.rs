use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

/// A fixed-width bit vector over the label universe `0..width`.
///
/// Bit `i` is set when label `i` is selected. Bits at positions `>= width`
/// in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LabelSet {
    words: Vec<u64>,
    width: usize,
}

impl LabelSet {
    /// The empty set over `width` labels.
    pub fn empty(width: usize) -> Self {
        LabelSet {
            words: vec![0; width.div_ceil(WORD)],
            width,
        }
    }

    /// The full universe `{0, .., width - 1}`.
    pub fn full(width: usize) -> Self {
        let mut set = LabelSet {
            words: vec![u64::MAX; width.div_ceil(WORD)],
            width,
        };
        set.clear_tail();
        set
    }

    /// Builds a set from label ids.
    ///
    /// # Panics
    ///
    /// Panics if any label is `>= width`.
    pub fn from_labels<I: IntoIterator<Item = usize>>(width: usize, labels: I) -> Self {
        let mut set = LabelSet::empty(width);
        for label in labels {
            set.insert(label);
        }
        set
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of selected labels.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, label: usize) -> bool {
        label < self.width && self.words[label / WORD] & (1 << (label % WORD)) != 0
    }

    /// Adds `label`, returning `true` if it was absent.
    pub fn insert(&mut self, label: usize) -> bool {
        assert!(
            label < self.width,
            "label {label} out of range for width {}",
            self.width
        );
        let mask = 1 << (label % WORD);
        let word = &mut self.words[label / WORD];
        let absent = *word & mask == 0;
        *word |= mask;
        absent
    }

    /// Removes `label`, returning `true` if it was present.
    pub fn remove(&mut self, label: usize) -> bool {
        if label >= self.width {
            return false;
        }
        let mask = 1 << (label % WORD);
        let word = &mut self.words[label / WORD];
        let present = *word & mask != 0;
        *word &= !mask;
        present
    }

    /// Selected labels in increasing order.
    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Labels of the universe that are not selected.
    pub fn complement(&self) -> LabelSet {
        let mut out = LabelSet {
            words: self.words.iter().map(|w| !w).collect(),
            width: self.width,
        };
        out.clear_tail();
        out
    }

    /// `|self Δ other|`, the Hamming distance between the two bit vectors.
    pub fn hamming_distance(&self, other: &LabelSet) -> Result<usize> {
        self.check_width(other.width)?;
        Ok(self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum())
    }

    pub fn is_subset(&self, other: &LabelSet) -> bool {
        self.width == other.width
            && self
                .words
                .iter()
                .zip(&other.words)
                .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &LabelSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub(crate) fn check_width(&self, expected: usize) -> Result<()> {
        if self.width == expected {
            Ok(())
        } else {
            Err(Error::WidthMismatch {
                expected,
                found: self.width,
            })
        }
    }

    fn clear_tail(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

/// Free-function form of [`LabelSet::hamming_distance`].
pub fn hamming_distance(a: &LabelSet, b: &LabelSet) -> Result<usize> {
    a.hamming_distance(b)
}

/// Free-function form of [`LabelSet::complement`].
pub fn complement(labels: &LabelSet) -> LabelSet {
    labels.complement()
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl<'a> IntoIterator for &'a LabelSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}/{}", self.width)
    }
}

/// Formats as `{0, 3, 4}`.
impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, label) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{label}")?;
        }
        f.write_str("}")
    }
}
