//! Constraint systems for the bases and independence polytopes.

use super::constraint::{ConstraintKind, ConstraintSystem, LinearConstraint, Sense};
use crate::connectivity::{connected_within, is_2connected};
use crate::error::{Error, Result};
use crate::locked::enumerate_locked;
use crate::matroid::{Matroid, UnionFind};
use crate::subset::Subset;

fn classes(m: &Matroid) -> Vec<Subset> {
    let n = m.len();
    let mut uf = UnionFind::new(n);
    for e in 0..n {
        for f in e + 1..n {
            if m.rank_of(Subset::from_elements([e, f])) == 1 {
                uf.union(e, f);
            }
        }
    }
    let mut parts = vec![Subset::EMPTY; n];
    for e in 0..n {
        let root = uf.find(e);
        parts[root] = parts[root].with(e);
    }
    let mut parts: Vec<Subset> = parts.into_iter().filter(|p| !p.is_empty()).collect();
    parts.sort_unstable();
    parts
}

/// Partition of a loopless matroid into classes of pairwise parallel elements.
pub fn parallel_closures(m: &Matroid) -> Result<Vec<Subset>> {
    m.check_enum_cap("parallel classes")?;
    if let Some(e) = m.loops().first() {
        return Err(Error::LoopElement(e));
    }
    Ok(classes(m))
}

/// Series classes of a coloop-free matroid.
pub fn coparallel_closures(m: &Matroid) -> Result<Vec<Subset>> {
    m.check_enum_cap("series classes")?;
    if let Some(e) = m.coloops().first() {
        return Err(Error::ColoopElement(e));
    }
    Ok(classes(&m.dual()))
}

/// Checks the hypotheses of [`facet_system`].
pub fn check_facet_preconditions(m: &Matroid) -> Result<()> {
    if m.len() < 2 {
        return Err(Error::Precondition(format!(
            "facet system needs at least 2 elements, got {}",
            m.len()
        )));
    }
    m.check_enum_cap("facet system")?;
    m.tabulate();
    if let Some(e) = m.loops().first() {
        return Err(Error::LoopElement(e));
    }
    if let Some(e) = m.coloops().first() {
        return Err(Error::ColoopElement(e));
    }
    if !is_2connected(m)? {
        return Err(Error::NotTwoConnected);
    }
    Ok(())
}

/// Description of the bases polytope of a 2-connected matroid without loops
/// or coloops: `x(E) = r(E)`, `x(P) <= 1` for parallel classes, `x(S) >=
/// |S| - 1` for series classes and `x(L) <= r(L)` for locked sets. Classes
/// equal to E are left out.
///
/// When both the parallel and the series class are all of E (only U(1,2)),
/// nonnegativity of each coordinate is emitted instead.
pub fn facet_system(m: &Matroid) -> Result<ConstraintSystem> {
    check_facet_preconditions(m)?;
    let n = m.len();
    let full = m.ground();
    let r = m.full_rank() as i64;
    let mut sys = ConstraintSystem::new(n);
    sys.push(LinearConstraint::on_set(n, full, Sense::Eq, r, ConstraintKind::Cardinality));
    let parallel = parallel_closures(m)?;
    let series = coparallel_closures(m)?;
    if parallel == [full] && series == [full] {
        for e in 0..n {
            sys.push(LinearConstraint::on_set(n, Subset::singleton(e), Sense::Ge, 0, ConstraintKind::Nonneg));
        }
    }
    for p in parallel.into_iter().filter(|&p| p != full) {
        let kind = if p.len() == 1 { ConstraintKind::Upper } else { ConstraintKind::Parallel };
        sys.push(LinearConstraint::on_set(n, p, Sense::Le, 1, kind));
    }
    for s in series.into_iter().filter(|&s| s != full) {
        let kind = if s.len() == 1 { ConstraintKind::Nonneg } else { ConstraintKind::Coparallel };
        sys.push(LinearConstraint::on_set(n, s, Sense::Ge, s.len() as i64 - 1, kind));
    }
    for c in enumerate_locked(m)?.certificates {
        sys.push(LinearConstraint::on_set(n, c.set, Sense::Le, c.rank as i64, ConstraintKind::Locked));
    }
    Ok(sys)
}

fn check_polyhedral_cap(m: &Matroid, what: &'static str) -> Result<()> {
    let cap = m.caps().polyhedral;
    if m.len() > cap {
        return Err(Error::CapExceeded {
            what,
            size: m.len(),
            cap,
        });
    }
    Ok(())
}

fn nonneg(n: usize, sys: &mut ConstraintSystem) {
    for e in 0..n {
        sys.push(LinearConstraint::on_set(n, Subset::singleton(e), Sense::Ge, 0, ConstraintKind::Nonneg));
    }
}

/// Nonnegativity and `x(A) <= r(A)` for every nonempty A: the complete
/// rank-inequality description of the independence polytope.
pub fn edmonds_full_system(m: &Matroid) -> Result<ConstraintSystem> {
    check_polyhedral_cap(m, "rank-inequality system")?;
    m.tabulate();
    let n = m.len();
    let mut sys = ConstraintSystem::new(n);
    nonneg(n, &mut sys);
    for a in m.ground().subsets().skip(1) {
        sys.push(LinearConstraint::on_set(n, a, Sense::Le, m.rank_of(a) as i64, ConstraintKind::Rank));
    }
    Ok(sys)
}

/// Nonnegativity and `x(A) <= r(A)` for the nonempty sets A that are closed
/// and 2-connected in the matroid with its loops deleted, plus `x_e <= 0`
/// for each loop e.
pub fn q_facet_system(m: &Matroid) -> Result<ConstraintSystem> {
    check_polyhedral_cap(m, "independence facet system")?;
    m.tabulate();
    let n = m.len();
    let loops = m.loops();
    let mut sys = ConstraintSystem::new(n);
    nonneg(n, &mut sys);
    for e in loops.iter() {
        sys.push(LinearConstraint::on_set(n, Subset::singleton(e), Sense::Le, 0, ConstraintKind::Rank));
    }
    for a in m.ground().difference(loops).subsets().skip(1) {
        if m.closure_of(a) == a.union(loops) && connected_within(m, a) {
            sys.push(LinearConstraint::on_set(n, a, Sense::Le, m.rank_of(a) as i64, ConstraintKind::Rank));
        }
    }
    Ok(sys)
}
