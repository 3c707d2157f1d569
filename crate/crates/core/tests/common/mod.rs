//! Reference model for cross-checks: a matroid given only by its list of
//! bases, built from raw input data without going through the library.

#![allow(dead_code)]

use mxt_core::Rational;
use num_traits::{One, Zero};

pub struct Model {
    pub n: usize,
    pub bases: Vec<u64>,
}

fn popcount(x: u64) -> usize {
    x.count_ones() as usize
}

fn masks_of_size(n: usize, k: usize) -> impl Iterator<Item = u64> {
    (0u64..1 << n).filter(move |m| popcount(*m) == k)
}

fn acyclic(edges: &[(usize, usize)], mask: u64) -> bool {
    let vertices = edges.iter().map(|&(a, b)| a.max(b)).max().map_or(0, |v| v + 1);
    let mut parent: Vec<usize> = (0..vertices).collect();
    fn root(p: &mut [usize], mut v: usize) -> usize {
        while p[v] != v {
            v = p[v];
        }
        v
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        if mask >> i & 1 == 0 {
            continue;
        }
        let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

fn gf2_independent(columns: &[u64], mask: u64) -> bool {
    let mut basis: Vec<u64> = Vec::new();
    for (i, &c) in columns.iter().enumerate() {
        if mask >> i & 1 == 0 {
            continue;
        }
        let mut v = c;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v == 0 {
            return false;
        }
        basis.push(v);
        basis.sort_unstable_by(|a, b| b.cmp(a));
    }
    true
}

impl Model {
    fn from_independence(n: usize, independent: impl Fn(u64) -> bool) -> Model {
        let r = (0..=n).rev().find(|&k| masks_of_size(n, k).any(&independent)).unwrap_or(0);
        let mut bases: Vec<u64> = masks_of_size(n, r).filter(|&m| independent(m)).collect();
        bases.sort_unstable();
        Model { n, bases }
    }

    pub fn uniform(r: usize, n: usize) -> Model {
        Model::from_independence(n, |m| popcount(m) <= r)
    }

    /// Edges on vertices 0.., loops allowed.
    pub fn graphic(edges: &[(usize, usize)]) -> Model {
        Model::from_independence(edges.len(), |m| acyclic(edges, m))
    }

    pub fn binary(rows: &[Vec<u8>]) -> Model {
        let n = rows.first().map_or(0, Vec::len);
        let columns: Vec<u64> = (0..n)
            .map(|j| rows.iter().enumerate().fold(0u64, |acc, (i, row)| acc | (u64::from(row[j]) << i)))
            .collect();
        Model::from_independence(n, |m| gf2_independent(&columns, m))
    }

    pub fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }

    pub fn rank(&self, x: u64) -> usize {
        self.bases.iter().map(|b| popcount(b & x)).max().unwrap_or(0)
    }

    pub fn corank(&self, x: u64) -> usize {
        popcount(x) + self.rank(self.full() & !x) - self.rank(self.full())
    }

    pub fn closure(&self, x: u64) -> u64 {
        let r = self.rank(x);
        (0..self.n).filter(|&e| self.rank(x | 1 << e) == r).fold(x, |acc, e| acc | 1 << e)
    }

    pub fn circuits(&self) -> Vec<u64> {
        let mut out: Vec<u64> = (1u64..=self.full())
            .filter(|&c| {
                self.rank(c) + 1 == popcount(c)
                    && (0..self.n).filter(|e| c >> e & 1 == 1).all(|e| self.rank(c & !(1 << e)) == popcount(c) - 1)
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Connectivity of the restriction to x by searching all bipartitions.
    pub fn connected_on(&self, x: u64, rank: &dyn Fn(u64) -> usize) -> bool {
        if x == 0 {
            return false;
        }
        let rx = rank(x);
        let mut a = (x - 1) & x;
        while a != 0 {
            if rank(a) + rank(x & !a) == rx {
                return false;
            }
            a = (a - 1) & x;
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        self.connected_on(self.full(), &|s| self.rank(s))
    }

    /// Locked sets of a connected model, straight from the definition.
    pub fn locked_sets(&self) -> Vec<u64> {
        let full = self.full();
        let mut out: Vec<u64> = (1..full)
            .filter(|&l| {
                let rest = full & !l;
                self.rank(l) >= 2
                    && self.corank(rest) >= 2
                    && self.connected_on(l, &|s| self.rank(s))
                    && self.connected_on(rest, &|s| self.corank(s))
            })
            .collect();
        out.sort_unstable();
        out
    }
}

pub fn point(x: u64, n: usize) -> Vec<Rational> {
    (0..n)
        .map(|e| if x >> e & 1 == 1 { Rational::one() } else { Rational::zero() })
        .collect()
}

/// Rank of a rational matrix by plain elimination.
pub fn matrix_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &rows[rank][c];
                for k in 0..cols {
                    let v = &f * &rows[rank][k];
                    rows[i][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Affine dimension of a set of points (-1 when empty).
pub fn affine_dim(points: &[Vec<Rational>]) -> isize {
    let Some(first) = points.first() else { return -1 };
    let diffs = points[1..]
        .iter()
        .map(|p| p.iter().zip(first).map(|(a, b)| a - b).collect())
        .collect();
    matrix_rank(diffs) as isize
}

/// Solves a square-or-tall consistent system A x = b exactly, if the
/// solution is unique.
pub fn solve_unique(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.first()?.len();
    let mut rows: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for c in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&i| !rows[i][c].is_zero()) else { return None };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][c].recip();
        for v in rows[pivot_row].iter_mut() {
            *v *= &inv;
        }
        for i in 0..rows.len() {
            if i != pivot_row && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for k in 0..=n {
                    let v = &f * &rows[pivot_row][k];
                    rows[i][k] -= v;
                }
            }
        }
        pivots.push(c);
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    Some(rows[..n].iter().map(|r| r[n].clone()).collect())
}

pub const K4: [(usize, usize); 6] = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];

pub fn k4_edges_i64() -> Vec<(i64, i64)> {
    K4.iter().map(|&(a, b)| (a as i64, b as i64)).collect()
}
