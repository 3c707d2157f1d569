//! Double description: extreme rays of a pointed polyhedral cone
//! {z : a·z ≤ 0 for every row a}, in exact integer arithmetic.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{inverse, primitive, primitive_int, rref};
use crate::rational::Rational;

/// Fixed-width bitset over row indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Bits {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains_all(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    z: Vec<BigInt>,
    zeros: Bits,
}

/// The cone has a nontrivial lineality space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct NotPointed;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Extreme rays of {z ∈ R^dim : rows · z ≤ 0}, each scaled to coprime
/// integers, sorted.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], dim: usize) -> Result<Vec<Vec<BigInt>>, NotPointed> {
    if dim == 0 {
        return Ok(Vec::new());
    }
    // pick `dim` linearly independent rows for the initial simplicial cone
    let mut chosen = Vec::new();
    let mut echelon: Vec<Vec<Rational>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut trial = echelon.clone();
        trial.push(row.iter().cloned().map(Rational::from_integer).collect());
        if rref(&mut trial, dim).len() > echelon.len() {
            echelon = trial;
            chosen.push(i);
            if chosen.len() == dim {
                break;
            }
        }
    }
    if chosen.len() < dim {
        return Err(NotPointed);
    }
    let basis: Vec<Vec<Rational>> = chosen
        .iter()
        .map(|&i| rows[i].iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let inv = inverse(&basis).expect("chosen rows are independent");
    let mut rays: Vec<Ray> = (0..dim)
        .map(|j| {
            // column j of -B^{-1}: tight on every chosen row except the j-th
            let col: Vec<Rational> = inv.iter().map(|row| -row[j].clone()).collect();
            let z = primitive(&col);
            let mut zeros = Bits::new(rows.len());
            for (k, &i) in chosen.iter().enumerate() {
                if k != j {
                    zeros.set(i);
                }
            }
            Ray { z, zeros }
        })
        .collect();

    let mut processed = vec![false; rows.len()];
    for &i in &chosen {
        processed[i] = true;
    }
    for (i, row) in rows.iter().enumerate() {
        if processed[i] {
            continue;
        }
        processed[i] = true;
        let values: Vec<BigInt> = rays.iter().map(|r| dot(row, &r.z)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_positive()).collect();
        if pos.is_empty() {
            for (r, v) in rays.iter_mut().zip(&values) {
                if v.is_zero() {
                    r.zeros.set(i);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| values[k].is_negative()).collect();
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < dim {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|k| k == p || k == q || !rays[k].zeros.contains_all(&common));
                if !adjacent {
                    continue;
                }
                let vp = &values[p];
                let vq = -&values[q];
                let z: Vec<BigInt> = rays[q]
                    .z
                    .iter()
                    .zip(&rays[p].z)
                    .map(|(a, b)| vp * a + &vq * b)
                    .collect();
                let mut zeros = common;
                zeros.set(i);
                fresh.push(Ray {
                    z: primitive_int(z),
                    zeros,
                });
            }
        }
        let mut kept = Vec::with_capacity(rays.len() - pos.len() + fresh.len());
        for (mut r, v) in rays.into_iter().zip(values) {
            if v.is_zero() {
                r.zeros.set(i);
                kept.push(r);
            } else if v.is_negative() {
                kept.push(r);
            }
        }
        kept.extend(fresh);
        rays = kept;
    }
    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.z).collect();
    out.sort();
    out.dedup();
    Ok(out)
}
