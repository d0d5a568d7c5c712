//! Chunk stores: plain sequences of chunk ids and GF(2)-coded column lists.

use crate::error::{Error, Result};
use crate::gf2::{rank, BitVec};
use crate::graph::Vertex;

/// A length-`m` sequence of chunk ids in `1..=n`; position `j` is 1-based in the API.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UncodedStore {
    n: usize,
    seq: Vec<Vertex>,
}

impl UncodedStore {
    pub fn new(n: usize, seq: Vec<Vertex>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        for &c in &seq {
            if c == 0 || c > n {
                return Err(Error::InvalidStore(format!("chunk id {c} outside 1..={n}")));
            }
            seen[c] = true;
        }
        if let Some(missing) = (1..=n).find(|&c| !seen[c]) {
            return Err(Error::InvalidStore(format!("chunk {missing} is never stored")));
        }
        Ok(UncodedStore { n, seq })
    }

    /// A store whose chunk count is the largest id present.
    pub fn from_sequence(seq: Vec<Vertex>) -> Result<Self> {
        let n = seq.iter().copied().max().unwrap_or(0);
        Self::new(n, seq)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.seq.len()
    }

    pub fn sequence(&self) -> &[Vertex] {
        &self.seq
    }

    pub fn is_permutation(&self) -> bool {
        self.seq.len() == self.n
    }

    /// 1-based positions of every chunk, `occ[c]` sorted.
    pub fn occurrences(&self) -> Vec<Vec<usize>> {
        let mut occ = vec![Vec::new(); self.n + 1];
        for (j, &c) in self.seq.iter().enumerate() {
            occ[c].push(j + 1);
        }
        occ
    }

    /// Generator whose column `j` is the unit vector of chunk `seq[j]`.
    pub fn as_coded(&self) -> CodedStore {
        let cols = self.seq.iter().map(|&c| BitVec::unit(self.n, c - 1)).collect();
        CodedStore { n: self.n, cols }
    }
}

/// An `n x m` generator over GF(2); column `j` lists the chunks xored into stored chunk `j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodedStore {
    n: usize,
    cols: Vec<BitVec>,
}

impl CodedStore {
    pub fn new(n: usize, cols: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = cols.iter().position(|c| c.len() != n) {
            return Err(Error::InvalidStore(format!(
                "column {} has {} rows, expected {n}",
                bad + 1,
                cols[bad].len()
            )));
        }
        if cols.iter().any(|c| c.is_zero()) {
            return Err(Error::InvalidStore("zero column".into()));
        }
        let r = rank(&cols);
        if r != n {
            return Err(Error::InvalidStore(format!(
                "generator rank {r} < {n}: store is lossy"
            )));
        }
        Ok(CodedStore { n, cols })
    }

    /// Builds columns from chunk-id lists, e.g. `[[1], [1, 2]]` for `(x1, x1^x2)`.
    pub fn from_combinations(n: usize, combos: &[Vec<Vertex>]) -> Result<Self> {
        let mut cols = Vec::with_capacity(combos.len());
        for combo in combos {
            let mut v = BitVec::zeros(n);
            for &c in combo {
                if c == 0 || c > n {
                    return Err(Error::InvalidStore(format!("chunk id {c} outside 1..={n}")));
                }
                v.set(c - 1, !v.get(c - 1));
            }
            cols.push(v);
        }
        Self::new(n, cols)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.cols.len()
    }

    /// Column `j` (0-based).
    pub fn column(&self, j: usize) -> &BitVec {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[BitVec] {
        &self.cols
    }

    /// Chunk ids combined in column `j` (0-based), ascending.
    pub fn combination(&self, j: usize) -> Vec<Vertex> {
        self.cols[j].ones().map(|i| i + 1).collect()
    }

    /// The uncoded view if every column is a unit vector.
    pub fn as_uncoded(&self) -> Option<UncodedStore> {
        let seq: Option<Vec<Vertex>> = self
            .cols
            .iter()
            .map(|c| (c.count_ones() == 1).then(|| c.first_one().unwrap() + 1))
            .collect();
        seq.map(|s| UncodedStore { n: self.n, seq: s })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Store {
    Uncoded(UncodedStore),
    Coded(CodedStore),
}

impl Store {
    pub fn n(&self) -> usize {
        match self {
            Store::Uncoded(s) => s.n(),
            Store::Coded(c) => c.n(),
        }
    }

    pub fn m(&self) -> usize {
        match self {
            Store::Uncoded(s) => s.m(),
            Store::Coded(c) => c.m(),
        }
    }

    pub fn to_coded(&self) -> CodedStore {
        match self {
            Store::Uncoded(s) => s.as_coded(),
            Store::Coded(c) => c.clone(),
        }
    }
}

impl From<UncodedStore> for Store {
    fn from(s: UncodedStore) -> Self {
        Store::Uncoded(s)
    }
}

impl From<CodedStore> for Store {
    fn from(c: CodedStore) -> Self {
        Store::Coded(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn as_coded_identity_and_duplicates() {
        let c = UncodedStore::new(2, vec![1, 2]).unwrap().as_coded();
        assert_eq!(c.column(0).to_bitstring(), "10");
        assert_eq!(c.column(1).to_bitstring(), "01");
        let d = UncodedStore::new(2, vec![1, 2, 1]).unwrap().as_coded();
        assert_eq!(d.m(), 3);
        assert_eq!(d.column(2), d.column(0));
        let p = UncodedStore::new(2, vec![2, 1]).unwrap().as_coded();
        assert_eq!(p.column(0).to_bitstring(), "01");
    }

    #[test]
    fn lossy_stores_rejected() {
        assert!(UncodedStore::new(3, vec![1, 2]).is_err());
        assert!(CodedStore::from_combinations(2, &[vec![1, 2], vec![1, 2]]).is_err());
        assert!(CodedStore::from_combinations(2, &[vec![1], vec![1, 2]]).is_ok());
    }

    #[test]
    fn uncoded_view_roundtrip() {
        let s = UncodedStore::new(3, vec![3, 1, 2, 1]).unwrap();
        assert_eq!(s.as_coded().as_uncoded().unwrap(), s);
        let c = CodedStore::from_combinations(2, &[vec![1], vec![1, 2]]).unwrap();
        assert!(c.as_uncoded().is_none());
    }
}
