use fixedbitset::FixedBitSet;

/// A subset of `0..n` stored as a bit vector with a cached cardinality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    bits: FixedBitSet,
    size: usize,
}

impl VertexSet {
    pub fn new(n: usize) -> Self {
        VertexSet {
            bits: FixedBitSet::with_capacity(n),
            size: 0,
        }
    }

    pub fn full(n: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.insert_range(..);
        VertexSet { bits, size: n }
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(n: usize, vertices: I) -> Self {
        let mut set = VertexSet::new(n);
        for v in vertices {
            set.insert(v);
        }
        set
    }

    /// Length of the underlying universe, not the number of members.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.bits.contains(v)
    }

    /// Returns true if `v` was not already present.
    pub fn insert(&mut self, v: usize) -> bool {
        let fresh = !self.bits.put(v);
        if fresh {
            self.size += 1;
        }
        fresh
    }

    /// Returns true if `v` was present.
    pub fn remove(&mut self, v: usize) -> bool {
        let present = self.bits.contains(v);
        if present {
            self.bits.set(v, false);
            self.size -= 1;
        }
        present
    }

    pub fn clear(&mut self) {
        self.bits.clear();
        self.size = 0;
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn symmetric_difference_len(&self, other: &VertexSet) -> usize {
        self.bits.symmetric_difference_count(&other.bits)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        self.bits.union_with(&other.bits);
        self.size = self.bits.count_ones(..);
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn insert_and_remove_track_size() {
        let mut s = VertexSet::new(10);
        assert!(s.insert(3));
        assert!(!s.insert(3));
        assert!(s.insert(7));
        assert_eq!(s.len(), 2);
        assert!(s.remove(3));
        assert!(!s.remove(3));
        assert_eq!(s.to_vec(), vec![7]);
    }

    #[test]
    fn full_set_has_every_vertex() {
        let s = VertexSet::full(5);
        assert_eq!(s.len(), 5);
        assert_eq!(s.to_vec(), vec![0, 1, 2, 3, 4]);
    }

    proptest! {
        #[test]
        fn cached_size_matches_popcount(ops in proptest::collection::vec((any::<bool>(), 0usize..64), 0..200)) {
            let mut s = VertexSet::new(64);
            for (ins, v) in ops {
                if ins { s.insert(v); } else { s.remove(v); }
                prop_assert_eq!(s.len(), s.iter().count());
            }
        }
    }
}
