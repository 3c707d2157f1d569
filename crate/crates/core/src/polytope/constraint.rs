use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::linalg::{primitive, rref};
use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    pub fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }
}

/// Where a constraint came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintKind {
    Nonneg,
    Upper,
    Parallel,
    Coparallel,
    Locked,
    Rank,
    Cardinality,
    /// A facet read off a convex hull with no set structure attached.
    Hull,
}

impl ConstraintKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConstraintKind::Nonneg => "nonneg",
            ConstraintKind::Upper => "upper",
            ConstraintKind::Parallel => "parallel",
            ConstraintKind::Coparallel => "coparallel",
            ConstraintKind::Locked => "locked",
            ConstraintKind::Rank => "rank",
            ConstraintKind::Cardinality => "cardinality",
            ConstraintKind::Hull => "hull",
        }
    }
}

impl fmt::Display for ConstraintKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `coeffs · x  sense  rhs` with integer data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<i64>,
    pub rhs: i64,
    pub sense: Sense,
    pub kind: ConstraintKind,
    /// The set the constraint was built from; the nonzero positions otherwise.
    pub support: Subset,
}

impl LinearConstraint {
    /// `x(set) sense rhs` in dimension `n`.
    pub fn on_set(n: usize, set: Subset, sense: Sense, rhs: i64, kind: ConstraintKind) -> LinearConstraint {
        let coeffs = (0..n).map(|e| i64::from(set.contains(e))).collect();
        LinearConstraint {
            coeffs,
            rhs,
            sense,
            kind,
            support: set,
        }
    }

    pub fn general(coeffs: Vec<i64>, sense: Sense, rhs: i64, kind: ConstraintKind) -> LinearConstraint {
        let support = coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(e, _)| e)
            .collect();
        LinearConstraint {
            coeffs,
            rhs,
            sense,
            kind,
            support,
        }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    /// The same halfspace written as `a · x <= b` (equalities unchanged).
    pub fn oriented(&self) -> (Vec<i64>, i64) {
        match self.sense {
            Sense::Ge => (self.coeffs.iter().map(|c| -c).collect(), -self.rhs),
            _ => (self.coeffs.clone(), self.rhs),
        }
    }

    /// The 0/1 support set, if every coefficient is 0 or 1.
    pub fn set_form(&self) -> Option<Subset> {
        self.coeffs.iter().all(|&c| c == 0 || c == 1).then_some(self.support)
    }

    /// Sign of `coeffs · x - rhs`.
    pub fn residual_sign(&self, x: &ScaledPoint) -> Ordering {
        x.compare(&self.coeffs, self.rhs)
    }

    pub fn is_satisfied_by(&self, x: &ScaledPoint) -> bool {
        let s = self.residual_sign(x);
        match self.sense {
            Sense::Le => s != Ordering::Greater,
            Sense::Ge => s != Ordering::Less,
            Sense::Eq => s == Ordering::Equal,
        }
    }

    pub fn is_tight_at(&self, x: &ScaledPoint) -> bool {
        self.residual_sign(x) == Ordering::Equal
    }

    /// `coeffs · x` as an exact rational.
    pub fn lhs_value(&self, x: &RationalPoint) -> Rational {
        self.coeffs
            .iter()
            .zip(&x.0)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, v)| v * Rational::from_integer(BigInt::from(c)))
            .sum()
    }

    fn key(&self) -> (Vec<BigInt>, bool) {
        let (a, b) = self.oriented();
        let mut row: Vec<BigInt> = a.into_iter().map(BigInt::from).collect();
        row.push(BigInt::from(b));
        let mut row = super::linalg::primitive_int(row);
        let is_eq = self.sense == Sense::Eq;
        if is_eq && row.iter().find(|v| !v.is_zero()).is_some_and(|v| v.is_negative()) {
            row.iter_mut().for_each(|v| *v = -&*v);
        }
        (row, is_eq)
    }
}

impl fmt::Display for LinearConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.set_form() {
            Some(s) if s.len() == 1 => write!(f, "x{}", s.first().unwrap_or(0))?,
            Some(s) => write!(f, "x{s}")?,
            None => {
                let mut first = true;
                for (e, &c) in self.coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let sign = if c < 0 { "-" } else { "+" };
                    if first {
                        if c < 0 {
                            f.write_str("-")?;
                        }
                    } else {
                        write!(f, " {sign} ")?;
                    }
                    if c.abs() != 1 {
                        write!(f, "{}*", c.abs())?;
                    }
                    write!(f, "x{e}")?;
                    first = false;
                }
                if first {
                    f.write_str("0")?;
                }
            }
        }
        write!(f, " {} {}", self.sense.symbol(), self.rhs)
    }
}

/// A point of R^n with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalPoint(pub Vec<Rational>);

impl RationalPoint {
    pub fn incidence(set: Subset, n: usize) -> RationalPoint {
        RationalPoint(
            (0..n)
                .map(|e| if set.contains(e) { Rational::one() } else { Rational::zero() })
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// The set whose incidence vector this is, if the point is 0/1.
    pub fn as_set(&self) -> Option<Subset> {
        let mut s = Subset::EMPTY;
        for (e, v) in self.0.iter().enumerate() {
            if v.is_one() {
                s = s.with(e);
            } else if !v.is_zero() {
                return None;
            }
        }
        Some(s)
    }

    /// Common-denominator form for fast constraint evaluation.
    pub fn scaled(&self) -> ScaledPoint {
        ScaledPoint::new(self)
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(v))?;
        }
        f.write_str(")")
    }
}

/// `num / den` with `den > 0`, plus an `i128` copy when everything fits.
#[derive(Clone, Debug)]
pub struct ScaledPoint {
    num: Vec<BigInt>,
    den: BigInt,
    small: Option<(Vec<i128>, i128)>,
}

impl ScaledPoint {
    fn new(p: &RationalPoint) -> ScaledPoint {
        let den = p.0.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num: Vec<BigInt> = p.0.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        let small = num
            .iter()
            .map(|v| v.to_i128())
            .collect::<Option<Vec<i128>>>()
            .zip(den.to_i128());
        ScaledPoint { num, den, small }
    }

    pub fn incidence(set: Subset, n: usize) -> ScaledPoint {
        let small: Vec<i128> = (0..n).map(|e| i128::from(set.contains(e))).collect();
        ScaledPoint {
            num: small.iter().map(|&v| BigInt::from(v)).collect(),
            den: BigInt::one(),
            small: Some((small, 1)),
        }
    }

    pub fn dim(&self) -> usize {
        self.num.len()
    }

    /// Sign of `coeffs · x - rhs`.
    pub fn compare(&self, coeffs: &[i64], rhs: i64) -> Ordering {
        if let Some((num, den)) = &self.small {
            let fast = coeffs
                .iter()
                .zip(num)
                .filter(|(&c, _)| c != 0)
                .try_fold(0i128, |acc, (&c, &v)| acc.checked_add(i128::from(c).checked_mul(v)?))
                .and_then(|lhs| Some((lhs, i128::from(rhs).checked_mul(*den)?)));
            if let Some((lhs, rhs)) = fast {
                return lhs.cmp(&rhs);
            }
        }
        let lhs: BigInt = coeffs
            .iter()
            .zip(&self.num)
            .filter(|(&c, _)| c != 0)
            .map(|(&c, v)| v * c)
            .sum();
        lhs.cmp(&(&self.den * rhs))
    }
}

/// Equalities and inequalities over R^dim, free of duplicates.
#[derive(Clone, Debug, Default)]
pub struct ConstraintSystem {
    pub dim: usize,
    pub equalities: Vec<LinearConstraint>,
    pub inequalities: Vec<LinearConstraint>,
    seen: HashSet<(Vec<BigInt>, bool)>,
}

impl PartialEq for ConstraintSystem {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.equalities == other.equalities && self.inequalities == other.inequalities
    }
}

impl Eq for ConstraintSystem {}

impl ConstraintSystem {
    pub fn new(dim: usize) -> ConstraintSystem {
        ConstraintSystem {
            dim,
            ..ConstraintSystem::default()
        }
    }

    /// Adds `c` unless a positive multiple of it is already present.
    pub fn push(&mut self, c: LinearConstraint) -> bool {
        assert_eq!(c.dim(), self.dim, "constraint dimension");
        if !self.seen.insert(c.key()) {
            return false;
        }
        if c.sense == Sense::Eq {
            self.equalities.push(c);
        } else {
            self.inequalities.push(c);
        }
        true
    }

    pub fn len(&self) -> usize {
        self.equalities.len() + self.inequalities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Equalities first, then inequalities, each in insertion order.
    pub fn constraints(&self) -> impl Iterator<Item = &LinearConstraint> {
        self.equalities.iter().chain(&self.inequalities)
    }

    pub fn first_violation(&self, x: &RationalPoint) -> Result<Option<&LinearConstraint>> {
        if x.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: x.dim(),
            });
        }
        let s = x.scaled();
        Ok(self.constraints().find(|c| !c.is_satisfied_by(&s)))
    }

    pub fn contains(&self, x: &RationalPoint) -> Result<bool> {
        Ok(self.first_violation(x)?.is_none())
    }

    /// Canonical form: equalities in reduced echelon form, each inequality
    /// written as `a · x <= b`, reduced against the equality pivots and scaled
    /// to coprime integers. Two systems with the same solution set and no
    /// redundant inequalities have equal normal forms.
    pub fn normalized(&self) -> NormalizedSystem {
        let n = self.dim;
        let mut eq: Vec<Vec<Rational>> = self
            .equalities
            .iter()
            .map(|c| {
                let mut row: Vec<Rational> = c.coeffs.iter().map(|&v| Rational::from_integer(v.into())).collect();
                row.push(Rational::from_integer(c.rhs.into()));
                row
            })
            .collect();
        let pivots = rref(&mut eq, n);
        let infeasible = eq.len() > pivots.len();
        let pivot_rows = &eq[..pivots.len()];
        let inequalities = self
            .inequalities
            .iter()
            .map(|c| {
                let (a, b) = c.oriented();
                let mut row: Vec<Rational> = a.iter().map(|&v| Rational::from_integer(v.into())).collect();
                row.push(Rational::from_integer(b.into()));
                for (prow, &p) in pivot_rows.iter().zip(&pivots) {
                    let f = row[p].clone();
                    if !f.is_zero() {
                        for (v, pv) in row.iter_mut().zip(prow) {
                            *v -= &f * pv;
                        }
                    }
                }
                NormalRow::from_vec(primitive(&row))
            })
            .collect();
        NormalizedSystem {
            dim: n,
            equalities: eq.iter().map(|r| NormalRow::from_vec(primitive(r))).collect(),
            inequalities,
            infeasible,
        }
    }
}

/// `coeffs · x <= rhs` (or `=`), coprime integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NormalRow {
    pub coeffs: Vec<BigInt>,
    pub rhs: BigInt,
}

impl NormalRow {
    fn from_vec(mut v: Vec<BigInt>) -> NormalRow {
        let rhs = v.pop().expect("augmented row");
        NormalRow { coeffs: v, rhs }
    }
}

impl fmt::Display for NormalRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| format!("{c}*x{e}"))
            .collect();
        if terms.is_empty() {
            write!(f, "0 | {}", self.rhs)
        } else {
            write!(f, "{} | {}", terms.join(" + "), self.rhs)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedSystem {
    pub dim: usize,
    pub equalities: Vec<NormalRow>,
    pub inequalities: BTreeSet<NormalRow>,
    /// The equalities have no common solution.
    pub infeasible: bool,
}

impl NormalizedSystem {
    /// Rows present on one side only: (only in self, only in other).
    pub fn difference<'a>(&'a self, other: &'a NormalizedSystem) -> (Vec<&'a NormalRow>, Vec<&'a NormalRow>) {
        (
            self.inequalities.difference(&other.inequalities).collect(),
            other.inequalities.difference(&self.inequalities).collect(),
        )
    }
}

/// Converts a primitive row to machine integers.
pub(crate) fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow("constraint coefficient")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn s(e: &[usize]) -> Subset {
        Subset::from_elements(e.iter().copied())
    }

    #[test]
    fn display_forms() {
        let c = LinearConstraint::on_set(4, s(&[0, 1]), Sense::Le, 2, ConstraintKind::Rank);
        assert_eq!(c.to_string(), "x{0,1} <= 2");
        let c = LinearConstraint::on_set(4, s(&[2]), Sense::Ge, 0, ConstraintKind::Nonneg);
        assert_eq!(c.to_string(), "x2 >= 0");
        let c = LinearConstraint::general(vec![2, 0, -1], Sense::Le, 1, ConstraintKind::Hull);
        assert_eq!(c.to_string(), "2*x0 - x2 <= 1");
        assert_eq!(c.support, s(&[0, 2]));
    }

    #[test]
    fn evaluation() {
        let x = RationalPoint(vec![ratio(3, 2), ratio(1, 2), int(0), int(0)]);
        let sx = x.scaled();
        let upper = LinearConstraint::on_set(4, s(&[0]), Sense::Le, 1, ConstraintKind::Upper);
        assert!(!upper.is_satisfied_by(&sx));
        let total = LinearConstraint::on_set(4, s(&[0, 1, 2, 3]), Sense::Eq, 2, ConstraintKind::Cardinality);
        assert!(total.is_satisfied_by(&sx));
        assert_eq!(total.lhs_value(&x), int(2));
        assert_eq!(RationalPoint::incidence(s(&[1]), 3).as_set(), Some(s(&[1])));
        assert_eq!(x.as_set(), None);
        assert_eq!(x.to_string(), "(3/2, 1/2, 0, 0)");
    }

    #[test]
    fn huge_coordinates_use_the_slow_path() {
        let big = Rational::new(BigInt::from(10).pow(40), BigInt::from(3));
        let x = RationalPoint(vec![big.clone(), -big]);
        let c = LinearConstraint::general(vec![1, 1], Sense::Eq, 0, ConstraintKind::Hull);
        assert!(c.is_satisfied_by(&x.scaled()));
    }

    #[test]
    fn duplicates_are_rejected() {
        let mut sys = ConstraintSystem::new(2);
        assert!(sys.push(LinearConstraint::general(vec![1, 0], Sense::Le, 1, ConstraintKind::Upper)));
        assert!(!sys.push(LinearConstraint::general(vec![2, 0], Sense::Le, 2, ConstraintKind::Hull)));
        assert!(!sys.push(LinearConstraint::general(vec![-1, 0], Sense::Ge, -1, ConstraintKind::Hull)));
        assert!(sys.push(LinearConstraint::general(vec![1, 0], Sense::Ge, 0, ConstraintKind::Nonneg)));
        assert_eq!(sys.len(), 2);
    }

    #[test]
    fn normal_form_reduces_against_equalities() {
        // on x0 + x1 = 1, "x0 >= 0" and "x1 <= 1" are the same halfspace
        let mut a = ConstraintSystem::new(2);
        a.push(LinearConstraint::general(vec![1, 1], Sense::Eq, 1, ConstraintKind::Cardinality));
        a.push(LinearConstraint::general(vec![1, 0], Sense::Ge, 0, ConstraintKind::Nonneg));
        let mut b = ConstraintSystem::new(2);
        b.push(LinearConstraint::general(vec![2, 2], Sense::Eq, 2, ConstraintKind::Cardinality));
        b.push(LinearConstraint::general(vec![0, 1], Sense::Le, 1, ConstraintKind::Upper));
        assert_eq!(a.normalized(), b.normalized());
        assert!(!a.normalized().infeasible);
    }
}
