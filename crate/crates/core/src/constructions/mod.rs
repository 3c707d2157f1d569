//! Builders for new matroids from old ones, the named catalog, and
//! isomorphism and minor search.

mod catalog;
mod iso;

pub use catalog::{catalog, relaxation_chain, wheel, CatalogName};
pub use iso::{are_isomorphic, find_minor, has_minor, IsoWitness, MinorWitness};

use crate::error::{Error, Result};
use crate::matroid::{Matroid, TwoSum};
use crate::subset::Subset;

/// Direct sum: elements of `a` first, then those of `b`.
pub fn direct_sum(a: &Matroid, b: &Matroid) -> Result<Matroid> {
    Matroid::from_direct_sum(vec![a.clone(), b.clone()])
}

/// Direct sum of any number of matroids.
pub fn direct_sum_all(parts: &[Matroid]) -> Result<Matroid> {
    Matroid::from_direct_sum(parts.to_vec())
}

/// 2-sum along basepoints `pa` of `a` and `pb` of `b`.
///
/// The circuits of the result are the circuits of `a` avoiding `pa`, those of
/// `b` avoiding `pb`, and `(Ca - pa) ∪ (Cb - pb)` for circuits through the
/// basepoints. Ranks are computed as
/// r(X) = r_a(X_a) + r_b(X_b) - [pa ∈ cl(X_a) and pb ∈ cl(X_b)].
pub fn two_sum(a: &Matroid, pa: usize, b: &Matroid, pb: usize) -> Result<Matroid> {
    a.check_element(pa)?;
    b.check_element(pb)?;
    for (m, p, side) in [(a, pa, "left"), (b, pb, "right")] {
        if m.len() < 3 {
            return Err(Error::DegenerateBasepoint(format!(
                "{side} matroid has fewer than 3 elements"
            )));
        }
        if m.is_loop(p) {
            return Err(Error::DegenerateBasepoint(format!("{side} basepoint {p} is a loop")));
        }
        if m.is_coloop(p) {
            return Err(Error::DegenerateBasepoint(format!("{side} basepoint {p} is a coloop")));
        }
    }
    Matroid::from_two_sum(TwoSum::new(a.clone(), pa, b.clone(), pb))
}

/// Adds a new last element parallel to `e`.
pub fn parallel_extension(m: &Matroid, e: usize) -> Result<Matroid> {
    m.check_element(e)?;
    if m.is_loop(e) {
        return Err(Error::LoopElement(e));
    }
    Matroid::from_parallel_ext(m, e)
}

/// Adds a new last element in series with `e`.
pub fn series_extension(m: &Matroid, e: usize) -> Result<Matroid> {
    m.check_element(e)?;
    if m.is_coloop(e) {
        return Err(Error::ColoopElement(e));
    }
    Ok(parallel_extension(&m.dual(), e)?.dual())
}

/// Declares the circuit-hyperplane `h` a basis.
pub fn relax_circuit_hyperplane(m: &Matroid, h: Subset) -> Result<Matroid> {
    m.check_fits(h)?;
    let r = m.full_rank();
    let is_hyperplane = m.rank_of(h) + 1 == r && m.closure_of(h) == h;
    if !m.is_circuit(h) || !is_hyperplane {
        return Err(Error::NotCircuitHyperplane(h.to_string()));
    }
    let mut bases = m.bases()?;
    bases.push(h);
    Matroid::from_bases_capped(m.len(), bases, m.caps().ground).map(|r| r.with_caps(m.caps()))
}

/// Sets that are both circuits and hyperplanes, in mask order.
pub fn circuit_hyperplanes(m: &Matroid) -> Result<Vec<Subset>> {
    let r = m.full_rank();
    Ok(m
        .circuits()?
        .into_iter()
        .filter(|&c| c.len() == r && m.closure_of(c) == c)
        .collect())
}
