//! Nonseparability and connected components.
//!
//! Conventions for degenerate sizes: the empty matroid is not 2-connected and
//! every single-element matroid is.

use crate::error::{Error, Result};
use crate::matroid::{Matroid, UnionFind};
use crate::subset::Subset;

/// A 1-separation: a bipartition with r(A) + r(B) = r(E).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Separation {
    pub part_a: Subset,
    pub part_b: Subset,
}

/// First bipartition (A, B) in increasing mask order of A with
/// r(A) + r(B) = r(E), or `None` if the matroid is 2-connected.
pub fn find_separation(m: &Matroid) -> Result<Option<Separation>> {
    if m.is_empty() {
        return Err(Error::EmptyGroundSet);
    }
    m.check_enum_cap("separation search")?;
    m.tabulate();
    let full = m.ground();
    let r = m.full_rank();
    Ok(full
        .subsets()
        .filter(|&a| !a.is_empty() && a != full)
        .find(|&a| m.rank_of(a) + m.rank_of(full.difference(a)) == r)
        .map(|a| Separation {
            part_a: a,
            part_b: full.difference(a),
        }))
}

/// Components of the restriction of `m` to `x`, in increasing mask order.
///
/// Uses the fundamental circuits of one basis of `x`: two elements are in the
/// same component exactly when they are linked by a chain of fundamental
/// circuits.
pub fn components_of(m: &Matroid, x: Subset) -> Vec<Subset> {
    let elements = x.to_vec();
    let k = elements.len();
    if k == 0 {
        return Vec::new();
    }
    let mut basis = Subset::EMPTY;
    for &e in &elements {
        if m.rank_of(basis.with(e)) > basis.len() {
            basis = basis.with(e);
        }
    }
    let rank = basis.len();
    let position = |e: usize| elements.iter().position(|&f| f == e).expect("element of x");
    let mut uf = UnionFind::new(k);
    for (i, &e) in elements.iter().enumerate() {
        if basis.contains(e) {
            continue;
        }
        // f is in the fundamental circuit of e iff B - f + e is still a basis
        for f in basis.iter() {
            if m.rank_of(basis.without(f).with(e)) == rank {
                uf.union(i, position(f));
            }
        }
    }
    let mut classes: Vec<Subset> = vec![Subset::EMPTY; k];
    for (i, &e) in elements.iter().enumerate() {
        let root = uf.find(i);
        classes[root] = classes[root].with(e);
    }
    let mut parts: Vec<Subset> = classes.into_iter().filter(|c| !c.is_empty()).collect();
    parts.sort_unstable();
    parts
}

/// The finest partition of E into parts whose restrictions sum to `m`.
pub fn components(m: &Matroid) -> Result<Vec<Subset>> {
    m.check_enum_cap("component decomposition")?;
    m.tabulate();
    Ok(components_of(m, m.ground()))
}

pub fn is_2connected(m: &Matroid) -> Result<bool> {
    m.check_enum_cap("connectivity test")?;
    if m.is_empty() {
        return Ok(false);
    }
    m.tabulate();
    Ok(components_of(m, m.ground()).len() == 1)
}

/// Whether the restriction of `m` to the nonempty set `x` is 2-connected.
pub fn is_2connected_subset(m: &Matroid, x: Subset) -> Result<bool> {
    m.check_fits(x)?;
    if x.is_empty() {
        return Err(Error::EmptySubset);
    }
    m.check_enum_cap("connectivity test")?;
    m.tabulate();
    Ok(connected_within(m, x))
}

/// Unchecked variant for callers that already validated the inputs.
pub(crate) fn connected_within(m: &Matroid, x: Subset) -> bool {
    !x.is_empty() && components_of(m, x).len() == 1
}

/// No loops, coloops, parallel pairs or series pairs.
pub fn is_simple_and_cosimple(m: &Matroid) -> bool {
    let d = m.dual();
    let no_pairs = |mm: &Matroid| {
        mm.loops().is_empty()
            && (0..mm.len()).all(|e| (e + 1..mm.len()).all(|f| mm.rank_of(Subset::from_elements([e, f])) == 2))
    };
    no_pairs(m) && no_pairs(&d)
}
