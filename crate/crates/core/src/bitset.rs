//! Plain `u64`-block bitsets used by the search and enumeration code.

/// Fixed-capacity bitset over `0..len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn full(len: usize) -> Self {
        let mut s = Bitset::new(len);
        for i in 0..len {
            s.insert(i);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] &= !(1 << (i % 64));
    }

    pub fn contains(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        for (k, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(k * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn intersect_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &Bitset) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// Square symmetric boolean matrix backed by bitset rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words_per_row: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words_per_row = n.div_ceil(64).max(1);
        BitMatrix {
            n,
            words_per_row,
            bits: vec![0; n * words_per_row],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::new(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words_per_row + j / 64] |= 1 << (j % 64);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.bits[i * self.words_per_row + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words_per_row..(i + 1) * self.words_per_row]
    }

    /// OR `other`'s row `src` into our row `dst`.
    pub fn or_row_from(&mut self, dst: usize, other: &BitMatrix, src: usize) {
        debug_assert_eq!(self.words_per_row, other.words_per_row);
        let d = dst * self.words_per_row;
        let s = src * other.words_per_row;
        for k in 0..self.words_per_row {
            self.bits[d + k] |= other.bits[s + k];
        }
    }

    /// True when rows `i` of `self` and `other` share a set bit.
    pub fn rows_intersect(row: &[u64], other: &[u64]) -> bool {
        row.iter().zip(other).any(|(a, b)| a & b != 0)
    }

    /// New matrix whose row `u` is the OR of this matrix's rows listed in
    /// `sources[u]`.  With adjacency lists as sources this is one boolean
    /// matrix product with the adjacency matrix.
    pub fn or_gather(&self, sources: &[Vec<usize>]) -> BitMatrix {
        use rayon::prelude::*;
        assert_eq!(sources.len(), self.n);
        let wpr = self.words_per_row;
        let mut out = BitMatrix::new(self.n);
        out.bits
            .par_chunks_mut(wpr)
            .zip(sources.par_iter())
            .for_each(|(row, srcs)| {
                for &s in srcs {
                    let src = &self.bits[s * wpr..(s + 1) * wpr];
                    for k in 0..wpr {
                        row[k] |= src[k];
                    }
                }
            });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_remove_iter() {
        let mut s = Bitset::new(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert!(s.contains(64));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        s.remove(64);
        assert_eq!(s.count(), 2);
        assert_eq!(s.first(), Some(0));
    }

    #[test]
    fn matrix_identity() {
        let m = BitMatrix::identity(70);
        assert!(m.get(69, 69));
        assert!(!m.get(0, 69));
    }
}
