//! Dense bit vectors over GF(2) and an incremental echelon basis.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    /// Unit vector with a single one at 0-based index `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, idx: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.set(i, true);
        }
        v
    }

    /// Parses a string of '0'/'1' characters, index 0 first.
    pub fn parse(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn xor(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn and(&self, other: &BitVec) -> BitVec {
        let mut out = self.clone();
        for (a, b) in out.words.iter_mut().zip(&other.words) {
            *a &= *b;
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|w| *w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, w) in self.words.iter().enumerate() {
            if *w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn last_one(&self) -> Option<usize> {
        for (wi, w) in self.words.iter().enumerate().rev() {
            if *w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    /// True when every one of `self` is also a one of `other`.
    pub fn is_subset_of(&self, other: &BitVec) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn to_bitstring(&self) -> String {
        (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({})", self.to_bitstring())
    }
}

/// Row-echelon basis that remembers, for every basis vector, which inserted
/// vectors were combined to produce it.
#[derive(Clone, Debug)]
pub struct Basis {
    dim: usize,
    tags: usize,
    // (pivot, vector, combination of inserted tags)
    rows: Vec<(usize, BitVec, BitVec)>,
}

impl Basis {
    /// `dim` is the ambient dimension, `tags` the number of vectors that may be inserted.
    pub fn new(dim: usize, tags: usize) -> Self {
        Basis {
            dim,
            tags,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, v: &BitVec) -> (BitVec, BitVec) {
        let mut v = v.clone();
        let mut combo = BitVec::zeros(self.tags);
        for (pivot, row, rc) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
                combo.xor_assign(rc);
            }
        }
        (v, combo)
    }

    /// Inserts vector `v` under tag `tag`. Returns `None` if it was independent,
    /// otherwise the combination of tags (including `tag`) that sums to zero.
    pub fn insert(&mut self, v: &BitVec, tag: usize) -> Option<BitVec> {
        debug_assert_eq!(v.len(), self.dim);
        let (r, mut combo) = self.reduce_tracked(v);
        combo.set(tag, !combo.get(tag));
        match r.first_one() {
            None => Some(combo),
            Some(p) => {
                // keep rows reduced on the new pivot so reduction order stays valid
                for (_, row, rc) in self.rows.iter_mut() {
                    if row.get(p) {
                        row.xor_assign(&r);
                        rc.xor_assign(&combo);
                    }
                }
                self.rows.push((p, r, combo));
                None
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce_tracked(v).0.is_zero()
    }

    /// Combination of inserted tags summing to `v`, if `v` is in the span.
    pub fn express(&self, v: &BitVec) -> Option<BitVec> {
        let (r, combo) = self.reduce_tracked(v);
        r.is_zero().then_some(combo)
    }
}

pub fn rank(vectors: &[BitVec]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let mut b = Basis::new(first.len(), vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        b.insert(v, i);
    }
    b.rank()
}

/// Solution structure of `G d = target` where the columns of `G` are `cols`.
pub struct ColumnSystem {
    basis: Basis,
    kernel: Vec<BitVec>,
}

impl ColumnSystem {
    pub fn new(rows: usize, cols: &[BitVec]) -> Self {
        let mut basis = Basis::new(rows, cols.len());
        let mut kernel = Vec::new();
        for (j, c) in cols.iter().enumerate() {
            if let Some(dep) = basis.insert(c, j) {
                kernel.push(dep);
            }
        }
        ColumnSystem { basis, kernel }
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    /// A basis of the column dependencies (null space of `G`).
    pub fn kernel(&self) -> &[BitVec] {
        &self.kernel
    }

    /// One particular set of columns that sums to `target`.
    pub fn particular(&self, target: &BitVec) -> Option<BitVec> {
        self.basis.express(target)
    }
}

/// All vectors of the affine space `offset + span(gens)`.
pub fn coset(offset: &BitVec, gens: &[BitVec]) -> Vec<BitVec> {
    let mut out = vec![offset.clone()];
    for g in gens {
        let extra: Vec<BitVec> = out.iter().map(|v| v.xor(g)).collect();
        out.extend(extra);
    }
    out
}
