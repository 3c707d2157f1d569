//! Locked subsets.
//!
//! In a 2-connected matroid `M`, a set `L` is locked when `M|L` is
//! 2-connected, `M*|(E \ L)` is 2-connected, and both r(L) and r*(E \ L) are
//! at least 2. A general matroid's locked sets are the union of the locked
//! sets of its connected components.

use crate::connectivity::{components_of, connected_within, is_2connected, is_simple_and_cosimple};
use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{binomial, k_subsets, Subset};

/// A locked set together with the values that witness the definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LockedCertificate {
    pub set: Subset,
    /// r(L)
    pub rank: usize,
    /// r*(E \ L), measured inside the component
    pub corank_complement: usize,
    /// Index into the component list of the matroid.
    pub component: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LockedReport {
    /// Number of locked sets found (equals ℓ(M) unless truncated).
    pub count: usize,
    pub certificates: Vec<LockedCertificate>,
    pub truncated: bool,
}

/// Clause check in a matroid assumed 2-connected; `d` is its dual.
fn locked_in(m: &Matroid, d: &Matroid, l: Subset) -> Option<(usize, usize)> {
    let rest = l.complement(m.len());
    let rank = m.rank_of(l);
    if rank < 2 {
        return None;
    }
    let corank = d.rank_of(rest);
    if corank < 2 {
        return None;
    }
    if !connected_within(m, l) || !connected_within(d, rest) {
        return None;
    }
    debug_assert_eq!(m.closure_of(l), l, "locked set must be closed");
    debug_assert_eq!(d.closure_of(rest), rest, "complement must be coclosed");
    Some((rank, corank))
}

/// Whether `l` is locked in the 2-connected matroid `m`.
pub fn is_locked(m: &Matroid, l: Subset) -> Result<bool> {
    m.check_fits(l)?;
    if !is_2connected(m)? {
        return Err(Error::NotTwoConnected);
    }
    let d = m.dual();
    d.tabulate();
    Ok(locked_in(m, &d, l).is_some())
}

/// All locked sets, ordered by size then mask.
pub fn enumerate_locked(m: &Matroid) -> Result<LockedReport> {
    enumerate_limited(m, None)
}

pub fn count_locked(m: &Matroid) -> Result<usize> {
    Ok(enumerate_locked(m)?.count)
}

/// Componentwise enumeration; stops once more than `limit` sets are found.
fn enumerate_limited(m: &Matroid, limit: Option<usize>) -> Result<LockedReport> {
    m.check_enum_cap("locked enumeration")?;
    m.tabulate();
    let parts = components_of(m, m.ground());
    let mut certificates = Vec::new();
    let mut truncated = false;
    'parts: for (component, &part) in parts.iter().enumerate() {
        if part.len() < 4 {
            // r(L) >= 2 and r*(E\L) >= 2 need at least 2 + 2 elements
            continue;
        }
        let (sub, map) = m.restrict(part)?;
        sub.tabulate();
        let d = sub.dual();
        d.tabulate();
        let k = sub.len();
        for size in 2..=k - 2 {
            for l in k_subsets(k, size) {
                if let Some((rank, corank)) = locked_in(&sub, &d, l) {
                    certificates.push(LockedCertificate {
                        set: l.map(&map),
                        rank,
                        corank_complement: corank,
                        component,
                    });
                    if limit.is_some_and(|t| certificates.len() > t) {
                        truncated = true;
                        break 'parts;
                    }
                }
            }
        }
    }
    certificates.sort_by_key(|c| (c.set.len(), c.set));
    Ok(LockedReport {
        count: certificates.len(),
        certificates,
        truncated,
    })
}

/// Answer of the k-locked oracle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KLockedAnswer {
    pub k: u32,
    /// |E|^(k+1), saturating.
    pub threshold: u128,
    pub answer: bool,
    pub report: LockedReport,
}

/// Concrete threshold used for "ℓ(M) is O(|E|^k)": ℓ(M) <= |E|^(k+1).
pub fn k_locked_threshold(n: usize, k: u32) -> u128 {
    (n as u128).saturating_pow(k.saturating_add(1))
}

/// Is `m` k-locked? On a yes answer the full list of locked sets is returned.
pub fn k_locked_oracle(m: &Matroid, k: u32) -> Result<KLockedAnswer> {
    let threshold = k_locked_threshold(m.len(), k);
    let limit = usize::try_from(threshold).unwrap_or(usize::MAX);
    let report = enumerate_limited(m, Some(limit))?;
    Ok(KLockedAnswer {
        k,
        threshold,
        answer: !report.truncated,
        report,
    })
}

/// Which test decided [`uniformity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniformRoute {
    /// Zero locked sets, read off the 0-locked oracle.
    LockedOracle,
    /// Every r(E)-subset is a basis.
    Definition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniformVerdict {
    pub uniform: bool,
    pub route: UniformRoute,
}

/// Uniform iff every r(E)-subset is a basis.
pub fn is_uniform_by_definition(m: &Matroid) -> Result<bool> {
    let bases = m.bases()?;
    Ok(bases.len() as u128 == binomial(m.len(), m.full_rank()))
}

/// Uniformity test. For 2-connected matroids without series or parallel
/// pairs the answer is "no locked sets"; all other inputs use the definition.
pub fn uniformity(m: &Matroid) -> Result<UniformVerdict> {
    m.check_enum_cap("uniformity test")?;
    m.tabulate();
    if m.len() >= 2 && is_2connected(m)? && is_simple_and_cosimple(m) {
        let oracle = k_locked_oracle(m, 0)?;
        return Ok(UniformVerdict {
            uniform: oracle.answer && oracle.report.count == 0,
            route: UniformRoute::LockedOracle,
        });
    }
    Ok(UniformVerdict {
        uniform: is_uniform_by_definition(m)?,
        route: UniformRoute::Definition,
    })
}

pub fn is_uniform(m: &Matroid) -> Result<bool> {
    Ok(uniformity(m)?.uniform)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{direct_sum, parallel_extension};

    fn k4() -> Matroid {
        Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    const TRIANGLES: [[usize; 3]; 4] = [[0, 1, 3], [0, 2, 4], [1, 2, 5], [3, 4, 5]];

    #[test]
    fn is_locked_examples() {
        let m = k4();
        assert!(is_locked(&m, s(&[0, 1, 3])).unwrap());
        assert!(!is_locked(&m, m.ground()).unwrap());
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert!(u24.ground().subsets().all(|l| !is_locked(&u24, l).unwrap()));
    }

    #[test]
    fn is_locked_requires_connectivity() {
        let u = Matroid::uniform(1, 2).unwrap();
        let sum = direct_sum(&u, &u).unwrap();
        assert_eq!(is_locked(&sum, s(&[0, 1])).unwrap_err(), Error::NotTwoConnected);
    }

    #[test]
    fn k4_locked_sets_are_the_triangles() {
        let report = enumerate_locked(&k4()).unwrap();
        assert!(!report.truncated);
        let mut sets: Vec<Subset> = report.certificates.iter().map(|c| c.set).collect();
        sets.sort();
        let mut expected: Vec<Subset> = TRIANGLES.iter().map(|t| s(t)).collect();
        expected.sort();
        assert_eq!(sets, expected);
        for c in &report.certificates {
            assert_eq!((c.rank, c.corank_complement, c.component), (2, 2, 0));
        }
    }

    #[test]
    fn direct_sum_of_k4s() {
        let m = direct_sum(&k4(), &k4()).unwrap();
        let report = enumerate_locked(&m).unwrap();
        assert_eq!(report.count, 8);
        assert_eq!(report.certificates.iter().filter(|c| c.component == 0).count(), 4);
        assert_eq!(report.certificates.iter().filter(|c| c.component == 1).count(), 4);
    }

    #[test]
    fn counts() {
        assert_eq!(count_locked(&Matroid::uniform(3, 6).unwrap()).unwrap(), 0);
        assert_eq!(count_locked(&k4()).unwrap(), 4);
    }

    #[test]
    fn k_locked_examples() {
        let a = k_locked_oracle(&Matroid::uniform(2, 4).unwrap(), 0).unwrap();
        assert!(a.answer && a.report.certificates.is_empty());
        let a = k_locked_oracle(&k4(), 0).unwrap();
        assert_eq!(a.threshold, 6);
        assert!(a.answer);
        assert_eq!(a.report.count, 4);
        let a = k_locked_oracle(&k4(), 1).unwrap();
        assert_eq!(a.threshold, 36);
        assert!(a.answer);
    }

    #[test]
    fn k_locked_truncates_above_threshold() {
        let mut edges = Vec::new();
        for u in 1..=5 {
            for v in u + 1..=5 {
                edges.push((u, v));
            }
        }
        let k5 = Matroid::graphic(&edges).unwrap();
        let full = enumerate_locked(&k5).unwrap();
        assert!(full.count > 10);
        let a = k_locked_oracle(&k5, 0).unwrap();
        assert_eq!(a.threshold, 10);
        assert!(!a.answer);
        assert!(a.report.truncated);
        assert_eq!(a.report.certificates.len(), 11);
        assert!(k_locked_oracle(&k5, 1).unwrap().answer);
        assert_eq!(k_locked_threshold(0, 0), 0);
        assert_eq!(k_locked_threshold(3, 200), u128::MAX);
    }

    #[test]
    fn uniform_recognition() {
        let v = uniformity(&Matroid::uniform(3, 6).unwrap()).unwrap();
        assert_eq!(v, UniformVerdict { uniform: true, route: UniformRoute::LockedOracle });
        assert!(!is_uniform(&k4()).unwrap());
        let u12 = Matroid::uniform(1, 2).unwrap();
        let v = uniformity(&direct_sum(&u12, &u12).unwrap()).unwrap();
        assert_eq!(v, UniformVerdict { uniform: false, route: UniformRoute::Definition });
    }

    #[test]
    fn parallel_extension_of_u24_is_lockless_but_not_uniform() {
        let m = parallel_extension(&Matroid::uniform(2, 4).unwrap(), 0).unwrap();
        assert!(is_2connected(&m).unwrap());
        assert_eq!(count_locked(&m).unwrap(), 0);
        assert!(!is_uniform_by_definition(&m).unwrap());
        assert_eq!(
            uniformity(&m).unwrap(),
            UniformVerdict { uniform: false, route: UniformRoute::Definition }
        );
    }
}
