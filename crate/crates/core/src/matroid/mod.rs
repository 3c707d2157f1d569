//! Matroid representations and the operations every other module builds on.
//!
//! A [`Matroid`] is an immutable value: a ground set `{0, .., n-1}` plus one
//! concrete [`Repr`]. Every representation answers rank queries exactly; the
//! first enumerating operation on a matroid with at most [`TABLE_LIMIT`]
//! elements tabulates the rank of every subset so later queries are lookups.

mod binary;
mod graphic;

use std::collections::HashSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

pub use binary::Gf2Matrix;
pub use graphic::{Graph, UnionFind};

use crate::error::{Error, Result};
use crate::subset::{k_subsets, Subset, MAX_ELEMENTS};

/// Rank tables are built for ground sets up to this size.
pub const TABLE_LIMIT: usize = 20;

/// Size limits for exponential routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Subset enumeration over the ground set (bases, circuits, locked sets).
    pub ground: usize,
    /// Polyhedral computations (vertex and facet enumeration).
    pub polyhedral: usize,
    /// Isomorphism search.
    pub iso: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            ground: 20,
            polyhedral: 12,
            iso: 10,
        }
    }
}

/// Concrete matroid representations.
#[derive(Clone, Debug)]
pub enum Repr {
    Uniform {
        rank: usize,
    },
    Graphic(Graph),
    Binary(Gf2Matrix),
    Bases(BasisFamily),
    Dual(Matroid),
    DirectSum(Vec<Matroid>),
    TwoSum(TwoSum),
    /// `inner / contract \ (everything not kept)`, re-indexed so element `i`
    /// is `keep[i]` of `inner`.
    Minor {
        inner: Matroid,
        keep: Vec<usize>,
        contract: Subset,
        contract_rank: usize,
    },
    /// `inner` plus a new last element parallel to `base`.
    ParallelExt {
        inner: Matroid,
        base: usize,
    },
}

/// An explicit list of bases, sorted by mask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisFamily {
    pub rank: usize,
    pub bases: Vec<Subset>,
    /// False when the exchange axiom was not checked (ground set above cap).
    pub validated: bool,
}

/// 2-sum of `left` and `right` along the basepoints. Elements of the sum are
/// the non-basepoint elements of `left` in order, then those of `right`.
#[derive(Clone, Debug)]
pub struct TwoSum {
    pub left: Matroid,
    pub left_base: usize,
    pub right: Matroid,
    pub right_base: usize,
    left_keep: Vec<usize>,
    right_keep: Vec<usize>,
}

impl TwoSum {
    pub(crate) fn new(left: Matroid, left_base: usize, right: Matroid, right_base: usize) -> Self {
        let left_keep = (0..left.len()).filter(|&e| e != left_base).collect();
        let right_keep = (0..right.len()).filter(|&e| e != right_base).collect();
        TwoSum {
            left,
            left_base,
            right,
            right_base,
            left_keep,
            right_keep,
        }
    }

    /// r(X) = r_l(X_l) + r_r(X_r) - [basepoint spanned on both sides].
    fn rank(&self, x: Subset) -> usize {
        let split = self.left_keep.len();
        let xl = Subset(x.bits() & Subset::full(split).bits()).map(&self.left_keep);
        let xr = Subset(x.bits() >> split).map(&self.right_keep);
        let rl = self.left.rank_of(xl);
        let rr = self.right.rank_of(xr);
        let spans_left = self.left.rank_of(xl.with(self.left_base)) == rl;
        let spans_right = self.right.rank_of(xr.with(self.right_base)) == rr;
        rl + rr - usize::from(spans_left && spans_right)
    }
}

/// An immutable matroid on `{0, .., n-1}`.
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    repr: Arc<Repr>,
    name: Option<Arc<str>>,
    caps: Caps,
    table: Arc<OnceLock<Box<[u8]>>>,
}

impl Matroid {
    fn from_repr(n: usize, repr: Repr) -> Matroid {
        Matroid {
            n,
            repr: Arc::new(repr),
            name: None,
            caps: Caps::default(),
            table: Arc::new(OnceLock::new()),
        }
    }

    fn derived(&self, n: usize, repr: Repr) -> Matroid {
        let mut m = Matroid::from_repr(n, repr);
        m.caps = self.caps;
        m
    }

    fn check_size(n: usize) -> Result<()> {
        if n > MAX_ELEMENTS {
            return Err(Error::CapExceeded {
                what: "ground set",
                size: n,
                cap: MAX_ELEMENTS,
            });
        }
        Ok(())
    }

    /// The uniform matroid U(r, n).
    pub fn uniform(rank: usize, n: usize) -> Result<Matroid> {
        Self::check_size(n)?;
        if rank > n {
            return Err(Error::InvalidRepresentation(format!(
                "uniform rank {rank} exceeds size {n}"
            )));
        }
        Ok(Matroid::from_repr(n, Repr::Uniform { rank }).with_name(format!("U({rank},{n})")))
    }

    /// Cycle matroid of a multigraph; edge `i` is element `i`.
    pub fn graphic(edges: &[(i64, i64)]) -> Result<Matroid> {
        Self::check_size(edges.len())?;
        Ok(Matroid::from_repr(edges.len(), Repr::Graphic(Graph::new(edges))))
    }

    /// Column matroid of a GF(2) matrix given by rows.
    pub fn binary(rows: &[Vec<u8>]) -> Result<Matroid> {
        let matrix = Gf2Matrix::from_rows(rows).ok_or_else(|| {
            Error::InvalidRepresentation("binary matrix must be rectangular 0/1 with at most 64 rows".into())
        })?;
        Self::check_size(matrix.columns.len())?;
        Ok(Matroid::from_repr(matrix.columns.len(), Repr::Binary(matrix)))
    }

    /// Matroid given by its list of bases. The family is checked against the
    /// basis exchange axiom when `n` is within the default ground cap.
    pub fn from_bases(n: usize, bases: Vec<Subset>) -> Result<Matroid> {
        Self::from_bases_capped(n, bases, Caps::default().ground)
    }

    pub fn from_bases_capped(n: usize, mut bases: Vec<Subset>, cap: usize) -> Result<Matroid> {
        Self::check_size(n)?;
        bases.sort_unstable();
        bases.dedup();
        let Some(first) = bases.first() else {
            return Err(Error::InvalidBases("a matroid has at least one basis".into()));
        };
        let rank = first.len();
        for b in &bases {
            if !b.fits(n) {
                return Err(Error::InvalidSubset {
                    element: b.last().unwrap_or(0),
                    size: n,
                });
            }
            if b.len() != rank {
                return Err(Error::InvalidBases(format!(
                    "bases {first} and {b} have different sizes"
                )));
            }
        }
        let validated = n <= cap;
        if validated {
            check_exchange(&bases)?;
        }
        Ok(Matroid::from_repr(
            n,
            Repr::Bases(BasisFamily {
                rank,
                bases,
                validated,
            }),
        ))
    }

    pub(crate) fn from_direct_sum(parts: Vec<Matroid>) -> Result<Matroid> {
        let n = parts.iter().map(Matroid::len).sum();
        Self::check_size(n)?;
        let caps = parts.first().map(|p| p.caps).unwrap_or_default();
        let mut m = Matroid::from_repr(n, Repr::DirectSum(parts));
        m.caps = caps;
        Ok(m)
    }

    pub(crate) fn from_two_sum(sum: TwoSum) -> Result<Matroid> {
        let n = sum.left.len() + sum.right.len() - 2;
        Self::check_size(n)?;
        let caps = sum.left.caps;
        let mut m = Matroid::from_repr(n, Repr::TwoSum(sum));
        m.caps = caps;
        Ok(m)
    }

    pub(crate) fn from_parallel_ext(inner: &Matroid, base: usize) -> Result<Matroid> {
        Self::check_size(inner.n + 1)?;
        Ok(inner.derived(
            inner.n + 1,
            Repr::ParallelExt {
                inner: inner.clone(),
                base,
            },
        ))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Matroid {
        self.name = Some(Arc::from(name.into()));
        self
    }

    pub fn with_caps(mut self, caps: Caps) -> Matroid {
        self.caps = caps;
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn repr(&self) -> &Repr {
        &self.repr
    }

    /// Number of elements |E|.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    /// Whether the basis family was checked against the exchange axiom
    /// (`None` for representations that are matroids by construction).
    pub fn bases_validated(&self) -> Option<bool> {
        match &*self.repr {
            Repr::Bases(f) => Some(f.validated),
            _ => None,
        }
    }

    pub(crate) fn check_fits(&self, x: Subset) -> Result<()> {
        if x.fits(self.n) {
            Ok(())
        } else {
            Err(Error::InvalidSubset {
                element: x.difference(self.ground()).first().unwrap_or(0),
                size: self.n,
            })
        }
    }

    pub(crate) fn check_element(&self, e: usize) -> Result<()> {
        if e < self.n {
            Ok(())
        } else {
            Err(Error::InvalidSubset {
                element: e,
                size: self.n,
            })
        }
    }

    /// Fails with cap-exceeded when the ground set is above the enumeration cap.
    pub fn check_enum_cap(&self, what: &'static str) -> Result<()> {
        if self.n > self.caps.ground {
            Err(Error::CapExceeded {
                what,
                size: self.n,
                cap: self.caps.ground,
            })
        } else {
            Ok(())
        }
    }

    /// Builds the rank table if the ground set is small enough. Idempotent.
    pub fn tabulate(&self) -> &Self {
        if self.n <= TABLE_LIMIT && self.table.get().is_none() {
            let table: Box<[u8]> = (0..1u64 << self.n)
                .map(|x| self.compute_rank(Subset(x)) as u8)
                .collect();
            let _ = self.table.set(table);
        }
        self
    }

    /// Rank r(X); elements outside the ground set are an error.
    pub fn rank(&self, x: Subset) -> Result<usize> {
        self.check_fits(x)?;
        Ok(self.rank_of(x))
    }

    /// Rank of `x ∩ E`. Fast path used by the enumerating algorithms.
    #[inline]
    pub fn rank_of(&self, x: Subset) -> usize {
        let x = x.intersection(self.ground());
        match self.table.get() {
            Some(t) => t[x.bits() as usize] as usize,
            None => self.compute_rank(x),
        }
    }

    fn compute_rank(&self, x: Subset) -> usize {
        match &*self.repr {
            Repr::Uniform { rank } => x.len().min(*rank),
            Repr::Graphic(g) => g.forest_rank(x),
            Repr::Binary(b) => b.column_rank(x),
            Repr::Bases(f) => {
                let cap = x.len().min(f.rank);
                let mut best = 0;
                for b in &f.bases {
                    best = best.max(b.intersection(x).len());
                    if best == cap {
                        break;
                    }
                }
                best
            }
            Repr::Dual(inner) => {
                x.len() + inner.rank_of(x.complement(self.n)) - inner.full_rank()
            }
            Repr::DirectSum(parts) => {
                let mut offset = 0;
                let mut total = 0;
                for p in parts {
                    let local = Subset((x.bits() >> offset) & p.ground().bits());
                    total += p.rank_of(local);
                    offset += p.len();
                }
                total
            }
            Repr::TwoSum(s) => s.rank(x),
            Repr::Minor {
                inner,
                keep,
                contract,
                contract_rank,
            } => inner.rank_of(x.map(keep).union(*contract)) - contract_rank,
            Repr::ParallelExt { inner, base } => {
                let mut y = x.without(self.n - 1);
                if x.contains(self.n - 1) {
                    y = y.with(*base);
                }
                inner.rank_of(y)
            }
        }
    }

    /// r(E).
    pub fn full_rank(&self) -> usize {
        self.rank_of(self.ground())
    }

    /// Dual rank r*(X) = |X| - r(E) + r(E \ X).
    pub fn corank(&self, x: Subset) -> Result<usize> {
        self.check_fits(x)?;
        Ok(self.corank_of(x))
    }

    #[inline]
    pub fn corank_of(&self, x: Subset) -> usize {
        let x = x.intersection(self.ground());
        x.len() + self.rank_of(x.complement(self.n)) - self.full_rank()
    }

    pub fn is_independent(&self, x: Subset) -> bool {
        self.rank_of(x) == x.len()
    }

    pub fn is_loop(&self, e: usize) -> bool {
        self.rank_of(Subset::singleton(e)) == 0
    }

    pub fn is_coloop(&self, e: usize) -> bool {
        self.rank_of(self.ground().without(e)) < self.full_rank()
    }

    pub fn loops(&self) -> Subset {
        (0..self.n).filter(|&e| self.is_loop(e)).collect()
    }

    pub fn coloops(&self) -> Subset {
        (0..self.n).filter(|&e| self.is_coloop(e)).collect()
    }

    /// The dual matroid; taking the dual twice returns the original value.
    pub fn dual(&self) -> Matroid {
        if let Repr::Dual(inner) = &*self.repr {
            return inner.clone();
        }
        let d = self.derived(self.n, Repr::Dual(self.clone()));
        match &self.name {
            Some(name) => d.with_name(format!("dual({name})")),
            None => d,
        }
    }

    /// cl(X) = {e : r(X + e) = r(X)}.
    pub fn closure(&self, x: Subset) -> Result<Subset> {
        self.check_fits(x)?;
        Ok(self.closure_of(x))
    }

    pub fn closure_of(&self, x: Subset) -> Subset {
        let r = self.rank_of(x);
        (0..self.n)
            .filter(|&e| x.contains(e) || self.rank_of(x.with(e)) == r)
            .collect()
    }

    pub fn is_closed(&self, x: Subset) -> Result<bool> {
        Ok(self.closure(x)? == x)
    }

    /// All bases in increasing mask order.
    pub fn bases(&self) -> Result<Vec<Subset>> {
        self.check_enum_cap("basis enumeration")?;
        if let Repr::Bases(f) = &*self.repr {
            return Ok(f.bases.clone());
        }
        self.tabulate();
        let r = self.full_rank();
        Ok(k_subsets(self.n, r)
            .filter(|&b| self.rank_of(b) == r)
            .collect())
    }

    /// Bases B with |B ∩ X| = r(X).
    pub fn bases_tight(&self, x: Subset) -> Result<Vec<Subset>> {
        self.check_fits(x)?;
        let rx = self.rank_of(x);
        Ok(self
            .bases()?
            .into_iter()
            .filter(|b| b.intersection(x).len() == rx)
            .collect())
    }

    /// All circuits in increasing mask order.
    pub fn circuits(&self) -> Result<Vec<Subset>> {
        self.check_enum_cap("circuit enumeration")?;
        self.tabulate();
        Ok(self.ground().subsets().filter(|&c| self.is_circuit(c)).collect())
    }

    pub fn is_circuit(&self, c: Subset) -> bool {
        !c.is_empty()
            && self.rank_of(c) + 1 == c.len()
            && c.iter().all(|e| self.is_independent(c.without(e)))
    }

    /// `self / contract \ delete`, re-indexed onto the remaining elements in
    /// increasing order.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<Matroid> {
        self.check_fits(delete)?;
        self.check_fits(contract)?;
        if !delete.intersection(contract).is_empty() {
            return Err(Error::OverlappingSets);
        }
        if delete.is_empty() && contract.is_empty() {
            return Ok(self.clone());
        }
        let keep = self.ground().difference(delete.union(contract)).to_vec();
        Ok(self.derived(
            keep.len(),
            Repr::Minor {
                inner: self.clone(),
                keep,
                contract,
                contract_rank: self.rank_of(contract),
            },
        ))
    }

    /// Restriction to `x`, together with the map from new to old indices.
    pub fn restrict(&self, x: Subset) -> Result<(Matroid, Vec<usize>)> {
        self.check_fits(x)?;
        Ok((self.minor(x.complement(self.n), Subset::EMPTY)?, x.to_vec()))
    }

    /// Contraction of `x`, together with the map from new to old indices.
    pub fn contract(&self, x: Subset) -> Result<(Matroid, Vec<usize>)> {
        self.check_fits(x)?;
        let keep = x.complement(self.n).to_vec();
        Ok((self.minor(Subset::EMPTY, x)?, keep))
    }

    /// Whether both matroids have identical rank functions on the same ground set.
    pub fn same_rank_function(&self, other: &Matroid) -> bool {
        if self.n != other.n {
            return false;
        }
        self.tabulate();
        other.tabulate();
        self.ground()
            .subsets()
            .all(|x| self.rank_of(x) == other.rank_of(x))
    }
}

fn check_exchange(bases: &[Subset]) -> Result<()> {
    let set: HashSet<u64> = bases.iter().map(|b| b.bits()).collect();
    for &b1 in bases {
        for &b2 in bases {
            for x in b1.difference(b2).iter() {
                let ok = b2
                    .difference(b1)
                    .iter()
                    .any(|y| set.contains(&b1.without(x).with(y).bits()));
                if !ok {
                    return Err(Error::InvalidBases(format!(
                        "exchange fails for {b1}, {b2} at element {x}"
                    )));
                }
            }
        }
    }
    Ok(())
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("rank", &self.full_rank())
            .finish()
    }
}

impl fmt::Display for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &*self.repr {
            Repr::Uniform { .. } => "uniform",
            Repr::Graphic(_) => "graphic",
            Repr::Binary(_) => "binary",
            Repr::Bases(_) => "bases",
            Repr::Dual(_) => "dual",
            Repr::DirectSum(_) => "direct sum",
            Repr::TwoSum(_) => "2-sum",
            Repr::Minor { .. } => "minor",
            Repr::ParallelExt { .. } => "parallel extension",
        };
        match &self.name {
            Some(name) => write!(f, "{name} ({kind}, {} elements, rank {})", self.n, self.full_rank()),
            None => write!(f, "{kind} matroid ({} elements, rank {})", self.n, self.full_rank()),
        }
    }
}
