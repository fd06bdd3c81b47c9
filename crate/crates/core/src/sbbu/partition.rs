//! Disjoint-set partition of the vertices `K+1..=n`.
//!
//! Union by size with path compression, with the smallest and largest vertex
//! of each component stored at its root. Components only ever grow by
//! absorbing every component that meets a contiguous vertex range, so each
//! component is itself a contiguous run of vertices; range queries walk from
//! one component to the next in O(number of components touched).

use thiserror::Error;

use crate::instance::Edge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("vertex {vertex} is outside the partitioned range {lo}..={hi}")]
    OutOfRange { vertex: usize, lo: usize, hi: usize },
    #[error("{0:?} does not name a current component")]
    InvalidComponent(ComponentId),
}

/// Canonical handle of a component: its current root vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComponentId(usize);

impl ComponentId {
    pub fn root(self) -> usize {
        self.0
    }
}

#[derive(Debug, Clone)]
pub struct ComponentPartition {
    dim: usize,
    lo: usize,
    hi: usize,
    parent: Vec<usize>,
    size: Vec<usize>,
    first: Vec<usize>,
    last: Vec<usize>,
    count: usize,
}

impl ComponentPartition {
    /// Singletons `{v_l}` for `l = dim+1..=n`.
    pub fn new(dim: usize, n: usize) -> Self {
        let lo = dim + 1;
        let len = (n + 1).saturating_sub(lo);
        let ids: Vec<usize> = (lo..lo + len).collect();
        ComponentPartition {
            dim,
            lo,
            hi: n,
            parent: ids.clone(),
            size: vec![1; len],
            first: ids.clone(),
            last: ids,
            count: len,
        }
    }

    pub fn lo(&self) -> usize {
        self.lo
    }

    pub fn hi(&self) -> usize {
        self.hi
    }

    pub fn component_count(&self) -> usize {
        self.count
    }

    fn slot(&self, vertex: usize) -> Result<usize, PartitionError> {
        if vertex < self.lo || vertex > self.hi {
            Err(PartitionError::OutOfRange {
                vertex,
                lo: self.lo,
                hi: self.hi,
            })
        } else {
            Ok(vertex - self.lo)
        }
    }

    /// The component containing `vertex`.
    pub fn find(&mut self, vertex: usize) -> Result<ComponentId, PartitionError> {
        let mut s = self.slot(vertex)?;
        let mut root = s;
        while self.parent[root] - self.lo != root {
            root = self.parent[root] - self.lo;
        }
        while s != root {
            let next = self.parent[s] - self.lo;
            self.parent[s] = root + self.lo;
            s = next;
        }
        Ok(ComponentId(root + self.lo))
    }

    fn root_slot(&self, id: ComponentId) -> Result<usize, PartitionError> {
        let s = self
            .slot(id.0)
            .map_err(|_| PartitionError::InvalidComponent(id))?;
        if self.parent[s] == id.0 {
            Ok(s)
        } else {
            Err(PartitionError::InvalidComponent(id))
        }
    }

    /// Smallest vertex of the component.
    pub fn first(&self, id: ComponentId) -> Result<usize, PartitionError> {
        Ok(self.first[self.root_slot(id)?])
    }

    /// Largest vertex of the component.
    pub fn last(&self, id: ComponentId) -> Result<usize, PartitionError> {
        Ok(self.last[self.root_slot(id)?])
    }

    pub fn size(&self, id: ComponentId) -> Result<usize, PartitionError> {
        Ok(self.size[self.root_slot(id)?])
    }

    fn union_roots(&mut self, a: usize, b: usize) -> usize {
        if a == b {
            return a;
        }
        let (big, small) = if self.size[a] >= self.size[b] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[small] = big + self.lo;
        self.size[big] += self.size[small];
        self.first[big] = self.first[big].min(self.first[small]);
        self.last[big] = self.last[big].max(self.last[small]);
        self.count -= 1;
        big
    }

    /// Distinct components meeting `from..=to`, in vertex order.
    pub fn components_in(
        &mut self,
        from: usize,
        to: usize,
    ) -> Result<Vec<ComponentId>, PartitionError> {
        let mut out = Vec::new();
        if from > to {
            return Ok(out);
        }
        self.slot(from)?;
        self.slot(to)?;
        let mut v = from;
        while v <= to {
            let c = self.find(v)?;
            out.push(c);
            v = self.last[c.0 - self.lo] + 1;
        }
        Ok(out)
    }

    /// Merges every component meeting `v_{i+K}..=v_j` into one and returns it.
    /// Its first vertex is the first vertex of the component that held
    /// `v_{i+K}`.
    pub fn merge_edge(&mut self, e: Edge) -> Result<ComponentId, PartitionError> {
        let from = e.i + self.dim;
        let to = e.j;
        let comps = self.components_in(from, to.max(from))?;
        let mut root = comps[0].0 - self.lo;
        for c in &comps[1..] {
            root = self.union_roots(root, c.0 - self.lo);
        }
        Ok(ComponentId(root + self.lo))
    }

    /// Whether two vertices share a component.
    pub fn same(&mut self, a: usize, b: usize) -> Result<bool, PartitionError> {
        Ok(self.find(a)? == self.find(b)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singletons() {
        let mut p = ComponentPartition::new(2, 9);
        assert_eq!(p.component_count(), 7);
        let a = p.find(5).unwrap();
        let b = p.find(6).unwrap();
        assert_ne!(a, b);
        let c = p.find(7).unwrap();
        assert_eq!(p.first(c).unwrap(), 7);
    }

    #[test]
    fn merging_a_range() {
        let mut p = ComponentPartition::new(2, 12);
        let c = p.merge_edge(Edge::new(3, 9)).unwrap();
        assert_eq!(p.find(5).unwrap(), p.find(9).unwrap());
        assert_eq!(p.first(c).unwrap(), 5);
        assert_eq!(p.last(c).unwrap(), 9);
        assert_ne!(p.find(4).unwrap(), c);
        assert_ne!(p.find(10).unwrap(), c);

        let mut q = ComponentPartition::new(2, 6);
        let c = q.merge_edge(Edge::new(1, 6)).unwrap();
        assert_eq!(q.first(c).unwrap(), 3);
        assert_eq!(q.size(c).unwrap(), 4);
        assert_eq!(q.component_count(), 1);
    }

    #[test]
    fn merge_is_idempotent() {
        let mut p = ComponentPartition::new(2, 12);
        let a = p.merge_edge(Edge::new(3, 9)).unwrap();
        let count = p.component_count();
        let b = p.merge_edge(Edge::new(3, 9)).unwrap();
        assert_eq!(a, b);
        assert_eq!(p.component_count(), count);
    }

    #[test]
    fn first_of_merge_follows_left_component() {
        let mut p = ComponentPartition::new(3, 20);
        p.merge_edge(Edge::new(2, 8)).unwrap(); // 5..=8
        p.merge_edge(Edge::new(8, 14)).unwrap(); // 11..=14
        let c = p.merge_edge(Edge::new(4, 12)).unwrap(); // 7..=12 joins both
        assert_eq!(p.first(c).unwrap(), 5);
        assert_eq!(p.last(c).unwrap(), 14);
        let comps = p.components_in(4, 16).unwrap();
        assert_eq!(comps.len(), 4);
    }

    #[test]
    fn errors() {
        let mut p = ComponentPartition::new(2, 6);
        assert!(matches!(p.find(2), Err(PartitionError::OutOfRange { .. })));
        assert!(matches!(p.find(7), Err(PartitionError::OutOfRange { .. })));
        p.merge_edge(Edge::new(1, 6)).unwrap();
        let root = p.find(3).unwrap();
        let stale = (3..=6).map(ComponentId).find(|&c| c != root).unwrap();
        assert!(matches!(
            p.first(stale),
            Err(PartitionError::InvalidComponent(_))
        ));
    }
}
