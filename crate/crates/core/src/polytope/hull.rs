//! Exact conversions between H- and V-representations.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::constraint::{to_i64, ConstraintKind, ConstraintSystem, LinearConstraint, RationalPoint, Sense};
use super::dd::extreme_rays;
use super::linalg::{nullspace, primitive, rref};
use crate::error::{Error, Result};
use crate::matroid::Caps;
use crate::rational::Rational;

fn check_dim(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "polyhedral computation",
            size: n,
            cap,
        });
    }
    Ok(())
}

fn rational_row(coeffs: &[i64], rhs: i64) -> Vec<Rational> {
    coeffs
        .iter()
        .chain(std::iter::once(&rhs))
        .map(|&v| Rational::from_integer(v.into()))
        .collect()
}

/// All vertices of the polytope described by `sys`, in lexicographic order.
/// An empty system solution set yields no vertices.
pub fn enumerate_vertices(sys: &ConstraintSystem) -> Result<Vec<RationalPoint>> {
    enumerate_vertices_capped(sys, Caps::default().polyhedral)
}

pub fn enumerate_vertices_capped(sys: &ConstraintSystem, cap: usize) -> Result<Vec<RationalPoint>> {
    let n = sys.dim;
    check_dim(n, cap)?;
    let mut eq: Vec<Vec<Rational>> = sys.equalities.iter().map(|c| rational_row(&c.coeffs, c.rhs)).collect();
    let pivots = rref(&mut eq, n);
    if eq.len() > pivots.len() {
        return Ok(Vec::new());
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let d = free.len();
    // x_p = eq_p[n] - sum_f eq_p[f] x_f for each pivot p
    let mut cone: Vec<Vec<BigInt>> = Vec::with_capacity(sys.inequalities.len() + 1);
    for c in &sys.inequalities {
        let (a, b) = c.oriented();
        let mut row: Vec<Rational> = free.iter().map(|&f| Rational::from_integer(a[f].into())).collect();
        let mut rhs = Rational::from_integer(b.into());
        for (prow, &p) in eq.iter().zip(&pivots) {
            if a[p] == 0 {
                continue;
            }
            let g = Rational::from_integer(a[p].into());
            for (k, &f) in free.iter().enumerate() {
                row[k] -= &g * &prow[f];
            }
            rhs -= &g * &prow[n];
        }
        row.push(-rhs);
        cone.push(primitive(&row));
    }
    let mut t_row = vec![BigInt::zero(); d + 1];
    t_row[d] = BigInt::from(-1);
    cone.push(t_row);
    let rays = extreme_rays(&cone, d + 1).map_err(|_| Error::Unbounded)?;
    let mut vertices = Vec::with_capacity(rays.len());
    for ray in rays {
        let t = &ray[d];
        if t.is_zero() {
            return Err(Error::Unbounded);
        }
        debug_assert!(t.is_positive());
        let y: Vec<Rational> = ray[..d].iter().map(|v| Rational::new(v.clone(), t.clone())).collect();
        let mut x = vec![Rational::zero(); n];
        for (k, &f) in free.iter().enumerate() {
            x[f] = y[k].clone();
        }
        for (prow, &p) in eq.iter().zip(&pivots) {
            let mut v = prow[n].clone();
            for (k, &f) in free.iter().enumerate() {
                v -= &prow[f] * &y[k];
            }
            x[p] = v;
        }
        vertices.push(RationalPoint(x));
    }
    vertices.sort();
    vertices.dedup();
    Ok(vertices)
}

/// Affine hull equalities and the facet inequalities of conv(points).
///
/// Equalities come out in reduced echelon form; every facet has zero
/// coefficients on the equality pivot columns, is written as `<=` and has
/// coprime integer data, so the result is already in normal form.
pub fn brute_force_facets(points: &[RationalPoint]) -> Result<ConstraintSystem> {
    brute_force_facets_capped(points, Caps::default().polyhedral)
}

pub fn brute_force_facets_capped(points: &[RationalPoint], cap: usize) -> Result<ConstraintSystem> {
    let Some(first) = points.first() else {
        return Err(Error::Precondition("convex hull of no points".into()));
    };
    let n = first.dim();
    check_dim(n, cap)?;
    if let Some(p) = points.iter().find(|p| p.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.dim(),
        });
    }
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| p.0.iter().zip(&first.0).map(|(a, b)| a - b).collect())
        .collect();
    let normals = if diffs.is_empty() {
        (0..n)
            .map(|i| (0..n).map(|j| Rational::from_integer(BigInt::from(i64::from(i == j)))).collect())
            .collect()
    } else {
        nullspace(&diffs, n)
    };
    let mut eq: Vec<Vec<Rational>> = normals
        .into_iter()
        .map(|a| {
            let b: Rational = a.iter().zip(&first.0).map(|(x, y)| x * y).sum();
            let mut row = a;
            row.push(b);
            row
        })
        .collect();
    let pivots = rref(&mut eq, n);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let d = free.len();

    let mut sys = ConstraintSystem::new(n);
    for row in &eq {
        let v = to_i64(&primitive(row))?;
        sys.push(LinearConstraint::general(v[..n].to_vec(), Sense::Eq, v[n], ConstraintKind::Hull));
    }
    // cone of valid inequalities (a, beta) over the free coordinates
    let cone: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| {
            let mut row: Vec<Rational> = free.iter().map(|&f| p.0[f].clone()).collect();
            row.push(Rational::from_integer(BigInt::from(-1)));
            primitive(&row)
        })
        .collect();
    let rays = extreme_rays(&cone, d + 1).map_err(|_| Error::Precondition("degenerate hull cone".into()))?;
    for ray in rays {
        if ray[..d].iter().all(Zero::is_zero) {
            continue;
        }
        let mut coeffs = vec![BigInt::zero(); n];
        for (k, &f) in free.iter().enumerate() {
            coeffs[f] = ray[k].clone();
        }
        let coeffs = to_i64(&coeffs)?;
        let rhs = to_i64(&ray[d..])?[0];
        sys.push(LinearConstraint::general(coeffs, Sense::Le, rhs, ConstraintKind::Hull));
    }
    Ok(sys)
}
