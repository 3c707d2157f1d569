//! Facet verification against explicit point sets.

use std::collections::HashMap;

use super::constraint::{ConstraintKind, ConstraintSystem, LinearConstraint, RationalPoint, ScaledPoint, Sense};
use super::linalg::affine_dimension;
use crate::error::{Error, Result};
use crate::locked::is_locked;
use crate::matroid::Matroid;
use crate::rational::Rational;
use crate::subset::Subset;

/// Incidence vectors of the bases, in basis order.
pub fn basis_points(m: &Matroid) -> Result<Vec<RationalPoint>> {
    Ok(m.bases()?.into_iter().map(|b| RationalPoint::incidence(b, m.len())).collect())
}

/// Incidence vectors of all independent sets, in mask order.
pub fn independent_points(m: &Matroid) -> Result<Vec<RationalPoint>> {
    m.check_enum_cap("independent sets")?;
    m.tabulate();
    Ok(m.ground()
        .subsets()
        .filter(|&x| m.is_independent(x))
        .map(|x| RationalPoint::incidence(x, m.len()))
        .collect())
}

/// Tight points of a valid inequality and whether they span a facet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetCheck {
    /// Indices into the point list.
    pub tight: Vec<usize>,
    pub dimension: isize,
    pub face_dimension: isize,
    pub is_facet: bool,
}

fn points_dimension(points: &[RationalPoint]) -> isize {
    let raw: Vec<Vec<Rational>> = points.iter().map(|p| p.0.clone()).collect();
    affine_dimension(&raw)
}

fn check_against(
    points: &[RationalPoint],
    scaled: &[ScaledPoint],
    dimension: isize,
    c: &LinearConstraint,
) -> Result<FacetCheck> {
    let mut tight = Vec::new();
    for (i, p) in scaled.iter().enumerate() {
        let valid = match c.sense {
            Sense::Ge => c.residual_sign(p).is_ge(),
            _ => c.residual_sign(p).is_le(),
        };
        if !valid {
            return Err(Error::InvalidConstraint(format!("{c} is violated by {}", points[i])));
        }
        if c.is_tight_at(p) {
            tight.push(i);
        }
    }
    let face: Vec<RationalPoint> = tight.iter().map(|&i| points[i].clone()).collect();
    let face_dimension = points_dimension(&face);
    Ok(FacetCheck {
        tight,
        dimension,
        face_dimension,
        is_facet: face_dimension >= 0 && face_dimension == dimension - 1,
    })
}

/// Facet test of `c`, read as an inequality, for conv(points).
pub fn facet_check(points: &[RationalPoint], c: &LinearConstraint) -> Result<FacetCheck> {
    let scaled: Vec<ScaledPoint> = points.iter().map(RationalPoint::scaled).collect();
    check_against(points, &scaled, points_dimension(points), c)
}

/// Whether `c` defines a facet of the bases polytope of `m`.
pub fn is_facet(m: &Matroid, c: &LinearConstraint) -> Result<bool> {
    check_dim(m, c)?;
    Ok(facet_check(&basis_points(m)?, c)?.is_facet)
}

fn check_dim(m: &Matroid, c: &LinearConstraint) -> Result<()> {
    if c.dim() != m.len() {
        return Err(Error::DimensionMismatch {
            expected: m.len(),
            got: c.dim(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DropReason {
    NotFacet,
    /// Same tight set as the kept constraint at this index.
    SameFacetAs(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dropped {
    pub constraint: LinearConstraint,
    pub reason: DropReason,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub system: ConstraintSystem,
    pub dropped: Vec<Dropped>,
}

/// Keeps one inequality per facet of the bases polytope, in input order.
/// Equalities are kept as given after checking them on every basis.
pub fn minimize_system(m: &Matroid, sys: &ConstraintSystem) -> Result<Minimized> {
    let points = basis_points(m)?;
    minimize_against(&points, sys)
}

/// [`minimize_system`] for an arbitrary point set.
pub fn minimize_against(points: &[RationalPoint], sys: &ConstraintSystem) -> Result<Minimized> {
    let scaled: Vec<ScaledPoint> = points.iter().map(RationalPoint::scaled).collect();
    let dimension = points_dimension(points);
    let mut out = ConstraintSystem::new(sys.dim);
    for c in &sys.equalities {
        if let Some(i) = scaled.iter().position(|p| !c.is_satisfied_by(p)) {
            return Err(Error::InvalidConstraint(format!("{c} is violated by {}", points[i])));
        }
        out.push(c.clone());
    }
    let mut faces: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut dropped = Vec::new();
    for c in &sys.inequalities {
        let check = check_against(points, &scaled, dimension, c)?;
        if !check.is_facet {
            dropped.push(Dropped {
                constraint: c.clone(),
                reason: DropReason::NotFacet,
            });
            continue;
        }
        let index = out.inequalities.len();
        match faces.get(&check.tight) {
            Some(&first) => dropped.push(Dropped {
                constraint: c.clone(),
                reason: DropReason::SameFacetAs(first),
            }),
            None => {
                if out.push(c.clone()) {
                    faces.insert(check.tight, index);
                }
            }
        }
    }
    Ok(Minimized { system: out, dropped })
}

/// Names a facet of the bases polytope of a 2-connected matroid by the
/// shape of its 0/1 form `x(A) <= c` (modulo `x(E) = r(E)`).
pub fn classify_facet(m: &Matroid, c: &LinearConstraint) -> Result<(ConstraintKind, Option<Subset>)> {
    check_dim(m, c)?;
    let n = m.len();
    let r = m.full_rank() as i64;
    let (a, b) = c.oriented();
    let mut values: Vec<i64> = a.clone();
    values.sort_unstable();
    values.dedup();
    if values.len() != 2 {
        return Ok((ConstraintKind::Hull, None));
    }
    let (lo, hi) = (values[0], values[1]);
    // a = lo * 1 + (hi - lo) * 1_A, so on x(E) = r the inequality reads
    // x(A) <= (b - lo * r) / (hi - lo)
    let num = b - lo * r;
    let den = hi - lo;
    if num % den != 0 {
        return Ok((ConstraintKind::Hull, None));
    }
    let bound = num / den;
    let set: Subset = (0..n).filter(|&e| a[e] == hi).collect();
    let rest = set.complement(n);
    let kind = if set.len() == 1 && bound == 1 {
        ConstraintKind::Upper
    } else if rest.len() == 1 && bound == r {
        ConstraintKind::Nonneg
    } else if bound == 1 && set.len() >= 2 && m.rank_of(set) == 1 && m.closure_of(set) == set {
        ConstraintKind::Parallel
    } else if rest.len() >= 2
        && bound == r - rest.len() as i64 + 1
        && m.corank_of(rest) == 1
        && m.dual().closure_of(rest) == rest
    {
        ConstraintKind::Coparallel
    } else if bound == m.rank_of(set) as i64 {
        if is_locked(m, set)? {
            ConstraintKind::Locked
        } else {
            ConstraintKind::Rank
        }
    } else {
        ConstraintKind::Hull
    };
    Ok((kind, Some(set)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{brute_force_facets, facet_system};

    fn k4() -> Matroid {
        Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    #[test]
    fn is_facet_examples() {
        let m = k4();
        let t = LinearConstraint::on_set(6, s(&[0, 1, 3]), Sense::Le, 2, ConstraintKind::Locked);
        let check = facet_check(&basis_points(&m).unwrap(), &t).unwrap();
        assert_eq!((check.tight.len(), check.dimension, check.face_dimension), (9, 5, 4));
        assert!(is_facet(&m, &t).unwrap());

        let u24 = Matroid::uniform(2, 4).unwrap();
        let c = LinearConstraint::on_set(4, s(&[0, 1]), Sense::Le, 2, ConstraintKind::Rank);
        assert!(!is_facet(&u24, &c).unwrap());
        let all = LinearConstraint::on_set(4, u24.ground(), Sense::Le, 2, ConstraintKind::Rank);
        assert!(!is_facet(&u24, &all).unwrap());
        let bad = LinearConstraint::on_set(4, s(&[0, 1]), Sense::Le, 1, ConstraintKind::Rank);
        assert!(matches!(is_facet(&u24, &bad), Err(Error::InvalidConstraint(_))));
    }

    #[test]
    fn minimize_examples() {
        let m = k4();
        let sys = facet_system(&m).unwrap();
        let min = minimize_system(&m, &sys).unwrap();
        assert!(min.dropped.is_empty());
        assert_eq!(min.system, sys);

        let u24 = Matroid::uniform(2, 4).unwrap();
        let mut sys = facet_system(&u24).unwrap();
        sys.push(LinearConstraint::on_set(4, s(&[0, 1]), Sense::Le, 2, ConstraintKind::Rank));
        // x0 <= 1 and x{1,2,3} >= 1 agree on the hyperplane
        sys.push(LinearConstraint::on_set(4, s(&[1, 2, 3]), Sense::Ge, 1, ConstraintKind::Rank));
        let min = minimize_system(&u24, &sys).unwrap();
        assert_eq!(min.system.inequalities.len(), 8);
        assert_eq!(min.dropped[0].reason, DropReason::NotFacet);
        assert_eq!(min.dropped[1].reason, DropReason::SameFacetAs(0));
    }

    #[test]
    fn classification_of_k4_hull() {
        let m = k4();
        let hull = brute_force_facets(&basis_points(&m).unwrap()).unwrap();
        let mut counts = HashMap::new();
        for c in &hull.inequalities {
            *counts.entry(classify_facet(&m, c).unwrap().0).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 3);
        assert_eq!(counts[&ConstraintKind::Upper], 6);
        assert_eq!(counts[&ConstraintKind::Nonneg], 6);
        assert_eq!(counts[&ConstraintKind::Locked], 4);
    }
}
