//! Fixed-width bitsets over vertex indices and arc indices.
//!
//! Both sets are backed by a single machine word, which caps graphs at 32
//! vertices and 64 arcs. Enumeration workloads here never get close to that:
//! the corpus sweeps stop at 6 or 7 vertices.

use std::fmt;

macro_rules! small_set {
    ($name:ident, $word:ty, $max:expr) => {
        #[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
        pub struct $name(pub $word);

        impl $name {
            pub const EMPTY: $name = $name(0);

            pub fn singleton(i: usize) -> Self {
                debug_assert!(i < $max);
                $name(1 << i)
            }

            /// All indices `0..width`.
            pub fn full(width: usize) -> Self {
                debug_assert!(width <= $max);
                if width == $max {
                    $name(<$word>::MAX)
                } else {
                    $name((1 << width) - 1)
                }
            }

            pub fn contains(self, i: usize) -> bool {
                self.0 >> i & 1 == 1
            }

            pub fn insert(&mut self, i: usize) {
                debug_assert!(i < $max);
                self.0 |= 1 << i;
            }

            pub fn remove(&mut self, i: usize) {
                self.0 &= !(1 << i);
            }

            pub fn with(self, i: usize) -> Self {
                $name(self.0 | (1 << i))
            }

            pub fn without(self, i: usize) -> Self {
                $name(self.0 & !(1 << i))
            }

            pub fn union(self, other: Self) -> Self {
                $name(self.0 | other.0)
            }

            pub fn intersection(self, other: Self) -> Self {
                $name(self.0 & other.0)
            }

            pub fn difference(self, other: Self) -> Self {
                $name(self.0 & !other.0)
            }

            pub fn complement(self, width: usize) -> Self {
                Self::full(width).difference(self)
            }

            pub fn is_subset(self, other: Self) -> bool {
                self.0 & !other.0 == 0
            }

            pub fn is_empty(self) -> bool {
                self.0 == 0
            }

            pub fn len(self) -> usize {
                self.0.count_ones() as usize
            }

            pub fn iter(self) -> impl Iterator<Item = usize> {
                let mut bits = self.0;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        None
                    } else {
                        let i = bits.trailing_zeros() as usize;
                        bits &= bits - 1;
                        Some(i)
                    }
                })
            }
        }

        impl FromIterator<usize> for $name {
            fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
                let mut s = Self::EMPTY;
                for i in iter {
                    s.insert(i);
                }
                s
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}{{", stringify!($name))?;
                let mut first = true;
                for i in self.iter() {
                    if !first {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", i)?;
                    first = false;
                }
                write!(f, "}}")
            }
        }
    };
}

small_set!(VertexSet, u32, 32);
small_set!(ArcSet, u64, 64);

/// Dense bit matrix used for order relations of explicit posets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }

    /// In-place reflexive-transitive closure (row-oriented Warshall).
    pub fn transitive_close(&mut self) {
        for i in 0..self.n {
            self.set(i, i);
        }
        for k in 0..self.n {
            for i in 0..self.n {
                if self.get(i, k) {
                    let (head, tail) = self.rows.split_at_mut(k * self.words);
                    let (krow, rest) = tail.split_at_mut(self.words);
                    let irow: &mut [u64] = if i < k {
                        &mut head[i * self.words..(i + 1) * self.words]
                    } else if i > k {
                        let off = (i - k - 1) * self.words;
                        &mut rest[off..off + self.words]
                    } else {
                        continue;
                    };
                    for w in 0..krow.len() {
                        irow[w] |= krow[w];
                    }
                }
            }
        }
    }

    pub fn row_iter(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        (0..self.n).filter(move |&j| row[j / 64] >> (j % 64) & 1 == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_basic_ops() {
        let mut s = VertexSet::EMPTY;
        s.insert(0);
        s.insert(3);
        assert!(s.contains(0) && s.contains(3) && !s.contains(1));
        assert_eq!(s.len(), 2);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 3]);
        assert_eq!(s.complement(4), VertexSet::from_iter([1, 2]));
        assert!(VertexSet::from_iter([3]).is_subset(s));
    }

    #[test]
    fn arc_set_full_width() {
        assert_eq!(ArcSet::full(64).len(), 64);
        assert_eq!(ArcSet::full(0), ArcSet::EMPTY);
    }

    #[test]
    fn bit_matrix_closure() {
        let mut m = BitMatrix::new(3);
        m.set(0, 1);
        m.set(1, 2);
        m.transitive_close();
        assert!(m.get(0, 2));
        assert!(m.get(0, 0));
        assert!(!m.get(2, 0));
    }
}
