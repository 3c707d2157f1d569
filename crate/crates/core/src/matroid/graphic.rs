use crate::subset::Subset;

/// Undirected multigraph whose edges are the matroid elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    /// Edges with their original vertex labels, index = element.
    pub labelled: Vec<(i64, i64)>,
    ends: Vec<(usize, usize)>,
    vertices: usize,
}

impl Graph {
    pub fn new(edges: &[(i64, i64)]) -> Graph {
        let mut labels: Vec<i64> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        labels.sort_unstable();
        labels.dedup();
        let index = |l: i64| labels.binary_search(&l).expect("label present");
        let ends = edges.iter().map(|&(u, v)| (index(u), index(v))).collect();
        Graph {
            labelled: edges.to_vec(),
            ends,
            vertices: labels.len(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    /// Size of a spanning forest of the edges in `x`.
    pub fn forest_rank(&self, x: Subset) -> usize {
        let mut uf = UnionFind::new(self.vertices);
        x.iter()
            .filter(|&e| {
                let (u, v) = self.ends[e];
                uf.union(u, v)
            })
            .count()
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already merged.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_has_rank_two() {
        let g = Graph::new(&[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(g.forest_rank(Subset::full(3)), 2);
        assert_eq!(g.vertex_count(), 3);
    }

    #[test]
    fn loops_and_parallel_edges() {
        let g = Graph::new(&[(1, 1), (1, 2), (1, 2)]);
        assert_eq!(g.forest_rank(Subset::singleton(0)), 0);
        assert_eq!(g.forest_rank(Subset::from_elements([1, 2])), 1);
    }
}
