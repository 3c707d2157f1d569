use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::subset::{k_subsets, Subset};

/// Bijection `mapping[e]` from the first ground set to the second that
/// preserves rank on every subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub mapping: Vec<usize>,
}

/// `m / contract \ delete` is isomorphic to the target via `iso`, where
/// `iso.mapping[i]` images the i-th remaining element of `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub delete: Subset,
    pub contract: Subset,
    pub iso: IsoWitness,
}

/// Full rank table plus the invariants used to prune the search.
struct Profile {
    n: usize,
    ranks: Vec<u8>,
    rank: usize,
    basis_count: usize,
    /// Per element: bases containing it, then circuits containing it by size.
    signatures: Vec<Vec<u32>>,
    sorted_signatures: Vec<Vec<u32>>,
}

impl Profile {
    fn new(n: usize, ranks: Vec<u8>) -> Profile {
        let rank = ranks[(1usize << n) - 1] as usize;
        let mut signatures = vec![vec![0u32; n + 2]; n];
        let mut basis_count = 0;
        for (mask, &r) in ranks.iter().enumerate() {
            let x = Subset(mask as u64);
            let size = x.len();
            if size == rank && r as usize == rank {
                basis_count += 1;
                for e in x.iter() {
                    signatures[e][0] += 1;
                }
            }
            if size > 0
                && r as usize + 1 == size
                && x.iter().all(|e| ranks[x.without(e).bits() as usize] as usize == size - 1)
            {
                for e in x.iter() {
                    signatures[e][size] += 1;
                }
            }
        }
        let mut sorted_signatures = signatures.clone();
        sorted_signatures.sort();
        Profile {
            n,
            ranks,
            rank,
            basis_count,
            signatures,
            sorted_signatures,
        }
    }

    fn of(m: &Matroid) -> Profile {
        m.tabulate();
        let ranks = m.ground().subsets().map(|x| m.rank_of(x) as u8).collect();
        Profile::new(m.len(), ranks)
    }

    fn compatible(&self, other: &Profile) -> bool {
        self.n == other.n
            && self.rank == other.rank
            && self.basis_count == other.basis_count
            && self.sorted_signatures == other.sorted_signatures
    }

    fn isomorphism(&self, other: &Profile) -> Option<Vec<usize>> {
        if !self.compatible(other) {
            return None;
        }
        let mut mapping = vec![usize::MAX; self.n];
        let mut used = vec![false; self.n];
        self.extend(other, 0, &mut mapping, &mut used)
            .then_some(mapping)
    }

    fn extend(&self, other: &Profile, i: usize, mapping: &mut [usize], used: &mut [bool]) -> bool {
        if i == self.n {
            return true;
        }
        for j in 0..self.n {
            if used[j] || self.signatures[i] != other.signatures[j] {
                continue;
            }
            mapping[i] = j;
            if self.consistent(other, i, mapping) {
                used[j] = true;
                if self.extend(other, i + 1, mapping, used) {
                    return true;
                }
                used[j] = false;
            }
        }
        mapping[i] = usize::MAX;
        false
    }

    /// Rank agreement on every subset of {0..=i} that contains i.
    fn consistent(&self, other: &Profile, i: usize, mapping: &[usize]) -> bool {
        Subset::full(i).subsets().all(|t| {
            let s = t.with(i);
            let image = s.map(mapping);
            self.ranks[s.bits() as usize] == other.ranks[image.bits() as usize]
        })
    }
}

fn check_iso_cap(m: &Matroid) -> Result<()> {
    let cap = m.caps().iso;
    if m.len() > cap {
        return Err(Error::CapExceeded {
            what: "isomorphism search",
            size: m.len(),
            cap,
        });
    }
    Ok(())
}

pub fn are_isomorphic(a: &Matroid, b: &Matroid) -> Result<Option<IsoWitness>> {
    check_iso_cap(a)?;
    check_iso_cap(b)?;
    if a.len() != b.len() {
        return Ok(None);
    }
    Ok(Profile::of(a)
        .isomorphism(&Profile::of(b))
        .map(|mapping| IsoWitness { mapping }))
}

/// Searches for a minor of `m` isomorphic to `target`.
///
/// Every minor can be written as `M / C \ D` with `C` independent and `D`
/// coindependent, so only those pairs are tried.
pub fn find_minor(m: &Matroid, target: &Matroid) -> Result<Option<MinorWitness>> {
    m.check_enum_cap("minor search")?;
    check_iso_cap(target)?;
    let n = m.len();
    let k = target.len();
    if k > n {
        return Ok(None);
    }
    let t = target.full_rank();
    let r = m.full_rank();
    if t > r || k - t > n - r {
        return Ok(None);
    }
    let goal = Profile::of(target);
    m.tabulate();
    let full = m.ground();
    let c_size = r - t;
    for keep in k_subsets(n, k) {
        let rest = full.difference(keep);
        let elements = keep.to_vec();
        for local in k_subsets(rest.len(), c_size) {
            let contract = local.map(&rest.to_vec());
            if !m.is_independent(contract) || m.rank_of(keep.union(contract)) != r {
                continue;
            }
            let ranks: Vec<u8> = Subset::full(k)
                .subsets()
                .map(|s| (m.rank_of(s.map(&elements).union(contract)) - c_size) as u8)
                .collect();
            let basis_count = k_subsets(k, t).filter(|s| ranks[s.bits() as usize] as usize == t).count();
            if basis_count != goal.basis_count {
                continue;
            }
            let candidate = Profile::new(k, ranks);
            if let Some(mapping) = candidate.isomorphism(&goal) {
                return Ok(Some(MinorWitness {
                    delete: rest.difference(contract),
                    contract,
                    iso: IsoWitness { mapping },
                }));
            }
        }
    }
    Ok(None)
}

pub fn has_minor(m: &Matroid, target: &Matroid) -> Result<bool> {
    Ok(find_minor(m, target)?.is_some())
}
