//! Maximum-weight bases.

use std::fmt;

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::polytope::{
    check_facet_preconditions, edmonds_full_system, enumerate_vertices_capped, facet_system, ConstraintKind,
    LinearConstraint, RationalPoint, Sense,
};
use crate::rational::{parse_rational, Rational};
use crate::subset::Subset;

/// Exact weights indexed by element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(pub Vec<Rational>);

impl WeightVector {
    pub fn parse<S: AsRef<str>>(items: &[S]) -> Result<WeightVector> {
        items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()
            .map(WeightVector)
    }

    pub fn from_ints(values: &[i64]) -> WeightVector {
        WeightVector(values.iter().map(|&v| Rational::from_integer(v.into())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// c(X)
    pub fn value(&self, x: Subset) -> Rational {
        x.iter().map(|e| &self.0[e]).sum()
    }

    fn dot(&self, p: &RationalPoint) -> Rational {
        self.0.iter().zip(&p.0).map(|(a, b)| a * b).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Greedy,
    Brute,
    LpVertex,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Greedy => "greedy",
            Method::Brute => "brute",
            Method::LpVertex => "lp-vertex",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub basis: Subset,
    pub value: Rational,
    pub method: Method,
}

fn check_len(m: &Matroid, c: &WeightVector) -> Result<()> {
    if c.len() != m.len() {
        return Err(Error::DimensionMismatch {
            expected: m.len(),
            got: c.len(),
        });
    }
    Ok(())
}

/// Greedy: heaviest first, lower index first among equal weights.
pub fn greedy_basis(m: &Matroid, c: &WeightVector) -> Result<SolveResult> {
    check_len(m, c)?;
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&a, &b| c.0[b].cmp(&c.0[a]).then(a.cmp(&b)));
    let r = m.full_rank();
    let mut basis = Subset::EMPTY;
    for e in order {
        if basis.len() == r {
            break;
        }
        if m.is_independent(basis.with(e)) {
            basis = basis.with(e);
        }
    }
    Ok(SolveResult {
        value: c.value(basis),
        basis,
        method: Method::Greedy,
    })
}

/// Exhaustive maximum; the first optimal basis in mask order wins ties.
pub fn brute_force_best(m: &Matroid, c: &WeightVector) -> Result<SolveResult> {
    check_len(m, c)?;
    let mut best: Option<(Subset, Rational)> = None;
    for b in m.bases()? {
        let v = c.value(b);
        if best.as_ref().is_none_or(|(_, bv)| v > *bv) {
            best = Some((b, v));
        }
    }
    let (basis, value) = best.expect("every matroid has a basis");
    Ok(SolveResult {
        basis,
        value,
        method: Method::Brute,
    })
}

/// Optimisation over the vertices of the bases polytope. Vertices are
/// computed once from the facet system, or from the rank inequalities plus
/// `x(E) = r(E)` when the facet system's hypotheses fail.
#[derive(Clone, Debug)]
pub struct LpSolver {
    n: usize,
    vertices: Vec<RationalPoint>,
}

impl LpSolver {
    pub fn new(m: &Matroid) -> Result<LpSolver> {
        let cap = m.caps().polyhedral;
        if m.len() > cap {
            return Err(Error::CapExceeded {
                what: "vertex enumeration",
                size: m.len(),
                cap,
            });
        }
        let sys = match check_facet_preconditions(m) {
            Ok(()) => facet_system(m)?,
            Err(e) if e.is_cap_exceeded() => return Err(e),
            Err(_) => {
                let mut sys = edmonds_full_system(m)?;
                sys.push(LinearConstraint::on_set(
                    m.len(),
                    m.ground(),
                    Sense::Eq,
                    m.full_rank() as i64,
                    ConstraintKind::Cardinality,
                ));
                sys
            }
        };
        let vertices = enumerate_vertices_capped(&sys, cap)?;
        if let Some(v) = vertices.iter().find(|v| v.as_set().is_none_or(|b| !m.is_independent(b))) {
            return Err(Error::Precondition(format!("vertex {v} is not a basis incidence vector")));
        }
        Ok(LpSolver { n: m.len(), vertices })
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    /// Best vertex; the first in lexicographic order wins ties.
    pub fn solve(&self, c: &WeightVector) -> Result<SolveResult> {
        if c.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: c.len(),
            });
        }
        let mut best: Option<(&RationalPoint, Rational)> = None;
        for v in &self.vertices {
            let value = c.dot(v);
            if best.as_ref().is_none_or(|(_, bv)| value > *bv) {
                best = Some((v, value));
            }
        }
        let (v, value) = best.ok_or(Error::Precondition("polytope has no vertices".into()))?;
        Ok(SolveResult {
            basis: v.as_set().expect("vertices are 0/1"),
            value,
            method: Method::LpVertex,
        })
    }
}

pub fn lp_vertex_best(m: &Matroid, c: &WeightVector) -> Result<SolveResult> {
    LpSolver::new(m)?.solve(c)
}

/// `b` is a basis and c(b) equals both the exhaustive and the vertex optimum.
pub fn certify_optimal(m: &Matroid, c: &WeightVector, b: Subset) -> Result<bool> {
    check_len(m, c)?;
    m.check_fits(b)?;
    let brute = brute_force_best(m, c)?;
    let lp = lp_vertex_best(m, c)?;
    let is_basis = b.len() == m.full_rank() && m.is_independent(b);
    Ok(is_basis && c.value(b) == brute.value && brute.value == lp.value)
}
