use std::fmt;

/// Largest ground set a [`Subset`] can address.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of a ground set `{0, .., n-1}` stored as a bit mask.
///
/// Ordering is the numeric order of the mask, which is the canonical order
/// used for every list this crate returns.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full ground set of size `n`.
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= MAX_ELEMENTS);
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(e: usize) -> Subset {
        Subset(1u64 << e)
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        elements
            .into_iter()
            .fold(Subset::EMPTY, |acc, e| acc.with(e))
    }

    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    #[inline]
    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | 1u64 << e)
    }

    #[inline]
    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1u64 << e))
    }

    #[inline]
    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    #[inline]
    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    #[inline]
    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Complement inside the ground set of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> Subset {
        Subset::full(n).difference(self)
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest element, if any.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// Whether all elements are below `n`.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset_of(Subset::full(n))
    }

    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self`, in increasing mask order (including the empty
    /// set and `self`).
    pub fn subsets(self) -> Submasks {
        Submasks {
            universe: self.0,
            next: Some(0),
        }
    }

    /// Maps the elements of `self` through `map` (element `i` goes to `map[i]`).
    pub fn map(self, map: &[usize]) -> Subset {
        Subset::from_elements(self.iter().map(|e| map[e]))
    }

    /// Inverse of [`Subset::map`] on the image: keeps position `i` when
    /// `map[i]` is in `self`.
    pub fn pull_back(self, map: &[usize]) -> Subset {
        Subset::from_elements(
            map.iter()
                .enumerate()
                .filter(|&(_, &e)| self.contains(e))
                .map(|(i, _)| i),
        )
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for Subset {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Subset::from_elements(iter)
    }
}

/// Iterator over the elements of a [`Subset`] in increasing order.
#[derive(Clone)]
pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let e = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(e)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

/// Iterator over all submasks of a fixed mask in increasing numeric order.
#[derive(Clone)]
pub struct Submasks {
    universe: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let cur = self.next?;
        self.next = if cur == self.universe {
            None
        } else {
            // next submask above `cur` in numeric order
            Some((cur | !self.universe).wrapping_add(1) & self.universe)
        };
        Some(Subset(cur))
    }
}

/// All `k`-subsets of `{0, .., n-1}` in increasing mask order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = Subset> {
    let limit = if n >= 64 { u64::MAX } else { 1u64 << n };
    let start = if k == 0 {
        Some(0u64)
    } else if k > n {
        None
    } else {
        Some(if k == 64 { u64::MAX } else { (1u64 << k) - 1 })
    };
    let mut cur = start;
    std::iter::from_fn(move || {
        let v = cur?;
        if n < 64 && v >= limit {
            cur = None;
            return None;
        }
        cur = if v == 0 {
            None
        } else {
            // Gosper's hack
            let c = v & v.wrapping_neg();
            let r = v.wrapping_add(c);
            if r == 0 {
                None
            } else {
                Some((((r ^ v) >> 2) / c) | r)
            }
        };
        Some(Subset(v))
    })
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}
