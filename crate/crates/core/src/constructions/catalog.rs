use std::fmt;
use std::str::FromStr;

use super::{circuit_hyperplanes, relax_circuit_hyperplane, two_sum};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Named matroids: the uniform family, M(K4), the whirl W3, Q6, P6, the
/// 2-sum of two copies of U(2,4), and graphic wheels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogName {
    Uniform { rank: usize, n: usize },
    MK4,
    W3,
    Q6,
    P6,
    U24TwoSumU24,
    Wheel(usize),
}

impl CatalogName {
    /// The five excluded minors for series-parallel-direct-sum closures of uniforms.
    pub const SERIES_PARALLEL_EXCLUDED: [CatalogName; 5] = [
        CatalogName::MK4,
        CatalogName::W3,
        CatalogName::P6,
        CatalogName::Q6,
        CatalogName::U24TwoSumU24,
    ];

    /// The four excluded minors for 1-sum / 2-sum closures of uniforms.
    pub const TWO_SUM_EXCLUDED: [CatalogName; 4] =
        [CatalogName::MK4, CatalogName::W3, CatalogName::P6, CatalogName::Q6];
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::Uniform { rank, n } => write!(f, "U({rank},{n})"),
            CatalogName::MK4 => f.write_str("MK4"),
            CatalogName::W3 => f.write_str("W3"),
            CatalogName::Q6 => f.write_str("Q6"),
            CatalogName::P6 => f.write_str("P6"),
            CatalogName::U24TwoSumU24 => f.write_str("U24+2U24"),
            CatalogName::Wheel(k) => write!(f, "wheel({k})"),
        }
    }
}

fn parse_args(s: &str, prefix: &str) -> Option<Vec<usize>> {
    let inner = s.strip_prefix(prefix)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|p| p.trim().parse().ok()).collect()
}

impl FromStr for CatalogName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let name = match t {
            "MK4" | "M(K4)" => CatalogName::MK4,
            "W3" => CatalogName::W3,
            "Q6" => CatalogName::Q6,
            "P6" => CatalogName::P6,
            "U24+2U24" => CatalogName::U24TwoSumU24,
            _ => {
                if let Some(args) = parse_args(t, "U") {
                    match args[..] {
                        [rank, n] if rank <= n => CatalogName::Uniform { rank, n },
                        _ => return Err(Error::UnknownName(s.to_string())),
                    }
                } else if let Some(args) = parse_args(t, "wheel") {
                    match args[..] {
                        [k] if k >= 3 => CatalogName::Wheel(k),
                        _ => return Err(Error::UnknownName(s.to_string())),
                    }
                } else {
                    return Err(Error::UnknownName(s.to_string()));
                }
            }
        };
        Ok(name)
    }
}

fn mk4() -> Matroid {
    Matroid::graphic(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])
        .expect("K4 is a valid graph")
}

/// Graphic wheel with `k` spokes: spokes first, then rim edges.
pub fn wheel(k: usize) -> Result<Matroid> {
    if k < 3 {
        return Err(Error::UnknownName(format!("wheel({k})")));
    }
    let k64 = k as i64;
    let mut edges: Vec<(i64, i64)> = (1..=k64).map(|i| (0, i)).collect();
    edges.extend((1..=k64).map(|i| (i, i % k64 + 1)));
    Ok(Matroid::graphic(&edges)?.with_name(format!("wheel({k})")))
}

/// M(K4) followed by successive relaxations of its first remaining
/// circuit-hyperplane: M(K4), W3, Q6, P6, U(3,6).
pub fn relaxation_chain() -> Result<Vec<Matroid>> {
    let names = ["MK4", "W3", "Q6", "P6", "U(3,6)"];
    let mut chain = vec![mk4().with_name(names[0])];
    for name in &names[1..] {
        let last = chain.last().expect("chain is nonempty");
        let h = *circuit_hyperplanes(last)?
            .first()
            .ok_or_else(|| Error::Precondition(format!("no circuit-hyperplane left before {name}")))?;
        chain.push(relax_circuit_hyperplane(last, h)?.with_name(*name));
    }
    Ok(chain)
}

pub fn catalog(name: CatalogName) -> Result<Matroid> {
    let m = match name {
        CatalogName::Uniform { rank, n } => Matroid::uniform(rank, n)?,
        CatalogName::MK4 => mk4(),
        CatalogName::W3 => relaxation_chain()?.swap_remove(1),
        CatalogName::Q6 => relaxation_chain()?.swap_remove(2),
        CatalogName::P6 => relaxation_chain()?.swap_remove(3),
        CatalogName::U24TwoSumU24 => {
            let u = Matroid::uniform(2, 4)?;
            two_sum(&u, 0, &u, 0)?
        }
        CatalogName::Wheel(k) => wheel(k)?,
    };
    Ok(m.with_name(name.to_string()))
}
