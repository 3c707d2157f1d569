//! End-to-end checks over a fixed corpus, shared by the acceptance suite and
//! `mxt selftest`.
//!
//! Every check is exact. Randomised checks draw from ChaCha8 streams derived
//! from a single seed, one stream per check.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::is_2connected;
use crate::constructions::{
    are_isomorphic, catalog, circuit_hyperplanes, direct_sum, has_minor, parallel_extension,
    relax_circuit_hyperplane, relaxation_chain, series_extension, two_sum, CatalogName,
};
use crate::error::{Error, Result};
use crate::locked::{count_locked, enumerate_locked, is_uniform_by_definition, uniformity, UniformRoute};
use crate::matroid::Matroid;
use crate::mwbp::{brute_force_best, greedy_basis, LpSolver, WeightVector};
use crate::polytope::{
    basis_points, brute_force_facets, classify_facet, coparallel_closures, edmonds_full_system, facet_system,
    minimize_system, parallel_closures, ConstraintKind, ConstraintSystem, RationalPoint, SeparationOracle,
};
use crate::rational::Rational;
use crate::subset::{k_subsets, Subset};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifyConfig {
    pub seed: u64,
    pub points_per_matroid: usize,
    pub weights_per_matroid: usize,
    /// Random constructions per construction family.
    pub constructions: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            seed: 0,
            points_per_matroid: 1000,
            weights_per_matroid: 500,
            constructions: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Counterexample certificates, one per failure (capped).
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} [{status}] {}: {}", self.id, self.title, self.detail)
    }
}

pub const TITLES: [&str; 10] = [
    "no locked sets in uniform matroids",
    "facet system equals hull facets",
    "separation agrees with rank inequalities",
    "greedy, exhaustive and vertex optima agree",
    "tight bases under duality",
    "locked sets are closed and coclosed",
    "relaxation chain",
    "closure classes avoid excluded minors",
    "uniform recognition",
    "facet counts",
];

const MAX_DUMPS: usize = 10;

/// Collects pass/fail state and counterexamples inside one criterion.
#[derive(Default)]
struct Log {
    failures: Vec<String>,
    failed: usize,
}

impl Log {
    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < MAX_DUMPS {
            self.failures.push(what);
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.fail(what());
        }
    }
}

fn label(m: &Matroid) -> String {
    m.name().map_or_else(|| format!("{m}"), str::to_string)
}

fn stream(seed: u64, id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// 2-connected binary matroids with 4 to 7 elements, distinct as bases lists.
pub fn random_binary_corpus(seed: u64, count: usize) -> Result<Vec<Matroid>> {
    let mut rng = stream(seed, 100);
    let mut out: Vec<Matroid> = Vec::new();
    let mut seen: Vec<Vec<Subset>> = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(4..=7);
        let r = rng.gen_range(1..n);
        let rows: Vec<Vec<u8>> = (0..r).map(|_| (0..n).map(|_| rng.gen_range(0..=1)).collect()).collect();
        let m = Matroid::binary(&rows)?;
        if !is_2connected(&m)? {
            continue;
        }
        let bases = m.bases()?;
        if seen.contains(&bases) {
            continue;
        }
        seen.push(bases);
        out.push(m.with_name(format!("binary-{}", out.len())));
    }
    Ok(out)
}

/// The named matroids followed by the random binary ones.
pub fn corpus(seed: u64) -> Result<Vec<Matroid>> {
    let names = [
        "MK4", "W3", "Q6", "P6", "U(3,6)", "U(2,4)", "U(2,5)", "U(3,5)", "U24+2U24", "wheel(4)",
    ];
    let mut out = Vec::new();
    for name in names {
        out.push(catalog(name.parse()?)?);
    }
    out.extend(random_binary_corpus(seed, 20)?);
    Ok(out)
}

fn random_uniform(rng: &mut ChaCha8Rng, min_n: usize, max_n: usize) -> Result<Matroid> {
    let n = rng.gen_range(min_n..=max_n);
    let r = rng.gen_range(0..=n);
    Matroid::uniform(r, n)
}

/// Random series extensions, parallel extensions and direct sums of uniform
/// matroids, at most `max` elements.
pub fn random_series_parallel(rng: &mut ChaCha8Rng, max: usize) -> Result<Matroid> {
    let mut m = random_uniform(rng, 1, 5.min(max))?;
    let target = rng.gen_range(m.len()..=max);
    let mut steps = Vec::new();
    while m.len() < target {
        let e = rng.gen_range(0..m.len());
        m = match rng.gen_range(0..3) {
            0 if !m.is_coloop(e) => {
                steps.push(format!("s{e}"));
                series_extension(&m, e)?
            }
            1 if !m.is_loop(e) => {
                steps.push(format!("p{e}"));
                parallel_extension(&m, e)?
            }
            _ => {
                let u = random_uniform(rng, 1, (target - m.len()).max(1))?;
                steps.push(format!("+U({},{})", u.full_rank(), u.len()));
                direct_sum(&m, &u)?
            }
        };
    }
    Ok(m.with_name(format!("sp[{}]", steps.join(" "))))
}

/// Random direct sums and 2-sums of uniform matroids, at most `max` elements.
pub fn random_two_sums(rng: &mut ChaCha8Rng, max: usize) -> Result<Matroid> {
    let mut m = random_uniform(rng, 1, 6.min(max))?;
    let mut steps = vec![format!("U({},{})", m.full_rank(), m.len())];
    let target = rng.gen_range(m.len()..=max);
    while m.len() < target {
        let room = target - m.len();
        let pa = rng.gen_range(0..m.len());
        let basepoint_ok = m.len() >= 3 && !m.is_loop(pa) && !m.is_coloop(pa);
        if basepoint_ok && room >= 1 && rng.gen_bool(0.6) {
            let k = rng.gen_range(3..=(room + 2).min(6));
            let r = rng.gen_range(1..k);
            let u = Matroid::uniform(r, k)?;
            let pb = rng.gen_range(0..k);
            steps.push(format!("+2U({r},{k})@{pa},{pb}"));
            m = two_sum(&m, pa, &u, pb)?;
        } else {
            let u = random_uniform(rng, 1, room)?;
            steps.push(format!("+U({},{})", u.full_rank(), u.len()));
            m = direct_sum(&m, &u)?;
        }
    }
    Ok(m.with_name(format!("ts[{}]", steps.join(" "))))
}

/// Runs one criterion; errors count as failures.
pub fn run_criterion(id: u8, cfg: &CertifyConfig) -> CriterionReport {
    let start = Instant::now();
    let mut log = Log::default();
    let outcome = match id {
        1 => criterion_1(&mut log),
        2 => criterion_2(cfg, &mut log),
        3 => criterion_3(cfg, &mut log),
        4 => criterion_4(cfg, &mut log),
        5 => criterion_5(cfg, &mut log),
        6 => criterion_6(cfg, &mut log),
        7 => criterion_7(&mut log),
        8 => criterion_8(cfg, &mut log),
        9 => criterion_9(cfg, &mut log),
        10 => criterion_10(&mut log),
        _ => Err(Error::Precondition(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(detail) => (log.failed == 0, detail),
        Err(e) => (false, format!("error: {e}")),
    };
    let detail = if log.failed > 0 {
        format!("{detail}; {} failure(s)", log.failed)
    } else {
        detail
    };
    CriterionReport {
        id,
        title: TITLES.get(usize::from(id).wrapping_sub(1)).copied().unwrap_or("unknown"),
        passed,
        detail,
        failures: log.failures,
        elapsed,
    }
}

pub fn run_all(cfg: &CertifyConfig) -> Vec<CriterionReport> {
    (1..=10).map(|id| run_criterion(id, cfg)).collect()
}

fn criterion_1(log: &mut Log) -> Result<String> {
    let start = Instant::now();
    let mut checked = 0;
    for n in 0..=9 {
        for r in 0..=n {
            let count = count_locked(&Matroid::uniform(r, n)?)?;
            log.check(count == 0, || format!("U({r},{n}) has {count} locked sets"));
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    log.check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}, limit 10s"));
    Ok(format!("{checked} uniform matroids, none locked"))
}

/// Whether a hull facet is exempt from the locked-support requirement.
fn is_trivial_kind(kind: ConstraintKind) -> bool {
    matches!(
        kind,
        ConstraintKind::Upper | ConstraintKind::Nonneg | ConstraintKind::Parallel | ConstraintKind::Coparallel
    )
}

fn criterion_2(cfg: &CertifyConfig, log: &mut Log) -> Result<String> {
    let start = Instant::now();
    let corpus = corpus(cfg.seed)?;
    let mut facets = 0;
    for m in &corpus {
        let hull = brute_force_facets(&basis_points(m)?)?;
        let sys = facet_system(m)?;
        let (hull_n, sys_n) = (hull.normalized(), sys.normalized());
        if hull_n != sys_n {
            let (only_hull, only_sys) = hull_n.difference(&sys_n);
            let show = |rows: Vec<&crate::polytope::NormalRow>| {
                rows.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("; ")
            };
            log.fail(format!(
                "{}: hull has {} facets, system has {}; only in hull: [{}]; only in system: [{}]",
                label(m),
                hull.inequalities.len(),
                sys.inequalities.len(),
                show(only_hull),
                show(only_sys)
            ));
        }
        let min = minimize_system(m, &sys)?;
        for d in &min.dropped {
            log.fail(format!("{}: {} is redundant ({:?})", label(m), d.constraint, d.reason));
        }
        for c in &hull.inequalities {
            let (kind, set) = classify_facet(m, c)?;
            log.check(is_trivial_kind(kind) || kind == ConstraintKind::Locked, || {
                format!("{}: hull facet {c} ({kind}, support {set:?}) is not on a locked set", label(m))
            });
        }
        facets += hull.inequalities.len();
    }
    let elapsed = start.elapsed();
    log.check(elapsed < Duration::from_secs(300), || format!("took {elapsed:?}, limit 300s"));
    Ok(format!("{} matroids, {facets} hull facets compared", corpus.len()))
}

/// Convex combination of a few bases, perturbed within x(E) = r(E) half the
/// time.
fn random_hyperplane_point(rng: &mut ChaCha8Rng, bases: &[Subset], n: usize) -> RationalPoint {
    let k = rng.gen_range(1..=3.min(bases.len()));
    let mut num = vec![0i64; n];
    let mut total = 0i64;
    for _ in 0..k {
        let b = bases.choose(rng).expect("nonempty basis list");
        let w = rng.gen_range(1..=6);
        total += w;
        for e in b.iter() {
            num[e] += w;
        }
    }
    let mut x: Vec<Rational> = num.iter().map(|&v| Rational::new(v.into(), total.into())).collect();
    if rng.gen_bool(0.5) {
        let den = rng.gen_range(2..=12i64);
        let delta: Vec<Rational> = (0..n)
            .map(|_| Rational::new(rng.gen_range(-den..=den).into(), (2 * den).into()))
            .collect();
        let mean: Rational = delta.iter().sum::<Rational>() / Rational::from_integer((n as i64).into());
        for (xi, d) in x.iter_mut().zip(&delta) {
            *xi += d - &mean;
        }
    }
    RationalPoint(x)
}

fn criterion_3(cfg: &CertifyConfig, log: &mut Log) -> Result<String> {
    let corpus = corpus(cfg.seed)?;
    let mut rng = stream(cfg.seed, 3);
    let (mut members, mut total) = (0usize, 0usize);
    for m in &corpus {
        let oracle = SeparationOracle::new(m)?;
        let edmonds = edmonds_full_system(m)?;
        let bases = m.bases()?;
        let closures = parallel_closures(m)?.len() + coparallel_closures(m)?.len();
        let budget = 1 + m.len() + count_locked(m)? + closures;
        let r = Rational::from_integer((m.full_rank() as i64).into());
        for _ in 0..cfg.points_per_matroid {
            let x = random_hyperplane_point(&mut rng, &bases, m.len());
            debug_assert_eq!(x.0.iter().sum::<Rational>(), r);
            let out = oracle.separate(&x)?;
            let reference = edmonds.contains(&x)?;
            log.check(out.verdict.is_member() == reference, || {
                format!(
                    "{}: x = {x}: separation says {:?}, rank inequalities say member = {reference}",
                    label(m),
                    out.verdict
                )
            });
            log.check(out.evaluations <= budget, || {
                format!("{}: x = {x}: {} evaluations exceed {budget}", label(m), out.evaluations)
            });
            members += usize::from(reference);
            total += 1;
        }
    }
    Ok(format!(
        "{total} points over {} matroids (seed {}), {members} members",
        corpus.len(),
        cfg.seed
    ))
}

fn criterion_4(cfg: &CertifyConfig, log: &mut Log) -> Result<String> {
    let corpus = corpus(cfg.seed)?;
    let mut rng = stream(cfg.seed, 4);
    let mut total = 0;
    for m in &corpus {
        let lp = LpSolver::new(m)?;
        for _ in 0..cfg.weights_per_matroid {
            let w: Vec<i64> = (0..m.len()).map(|_| rng.gen_range(-10..=10)).collect();
            let c = WeightVector::from_ints(&w);
            let g = greedy_basis(m, &c)?;
            let b = brute_force_best(m, &c)?;
            let v = lp.solve(&c)?;
            log.check(g.value == b.value && b.value == v.value, || {
                format!(
                    "{}: c = {w:?}: greedy {} brute {} vertex {}",
                    label(m),
                    g.value,
                    b.value,
                    v.value
                )
            });
            total += 1;
        }
    }
    Ok(format!("{total} weight vectors over {} matroids (seed {})", corpus.len(), cfg.seed))
}

fn criterion_5(cfg: &CertifyConfig, log: &mut Log) -> Result<String> {
    let corpus = corpus(cfg.seed)?;
    let mut sets = 0;
    let mut matroids = 0;
    for m in corpus.iter().filter(|m| m.len() <= 8) {
        let d = m.dual();
        let n = m.len();
        for x in m.ground().subsets() {
            let direct = m.bases_tight(x)?;
            let mut via_dual: Vec<Subset> = d.bases_tight(x.complement(n))?.iter().map(|b| b.complement(n)).collect();
            via_dual.sort();
            log.check(direct == via_dual, || format!("{}: X = {x}", label(m)));
            sets += 1;
        }
        matroids += 1;
    }
    Ok(format!("{sets} subsets over {matroids} matroids"))
}

fn criterion_6(cfg: &CertifyConfig, log: &mut Log) -> Result<String> {
    let mut pool = corpus(cfg.seed)?;
    pool.push(direct_sum(&catalog(CatalogName::MK4)?, &catalog(CatalogName::MK4)?)?.with_name("MK4+MK4"));
    let mut certificates = 0;
    for m in &pool {
        let d = m.dual();
        let n = m.len();
        for c in enumerate_locked(m)?.certificates {
            let rest = c.set.complement(n);
            log.check(m.closure_of(c.set) == c.set, || format!("{}: {} is not closed", label(m), c.set));
            log.check(d.closure_of(rest) == rest, || format!("{}: E - {} is not coclosed", label(m), c.set));
            certificates += 1;
        }
    }
    Ok(format!("{certificates} certificates over {} matroids", pool.len()))
}

fn criterion_7(log: &mut Log) -> Result<String> {
    let chain = relaxation_chain()?;
    let counts: Vec<usize> = chain.iter().map(|m| m.bases().map(|b| b.len())).collect::<Result<_>>()?;
    log.check(counts == [16, 17, 18, 19, 20], || format!("basis counts {counts:?}"));
    let last = chain.last().expect("five matroids");
    let all: Vec<Subset> = {
        let mut v: Vec<Subset> = k_subsets(6, 3).collect();
        v.sort();
        v
    };
    log.check(last.bases()? == all, || "last matroid is not U(3,6)".into());
    let mut relaxations = 0;
    for pair in chain.windows(2) {
        for h in circuit_hyperplanes(&pair[0])? {
            let relaxed = relax_circuit_hyperplane(&pair[0], h)?;
            log.check(are_isomorphic(&relaxed, &pair[1])?.is_some(), || {
                format!("relaxing {h} in {} is not isomorphic to {}", label(&pair[0]), label(&pair[1]))
            });
            relaxations += 1;
        }
    }
    Ok(format!("basis counts {counts:?}, {relaxations} alternative relaxations checked"))
}

fn criterion_8(cfg: &CertifyConfig, log: &mut Log) -> Result<String> {
    let mut rng = stream(cfg.seed, 8);
    let five: Vec<Matroid> = CatalogName::SERIES_PARALLEL_EXCLUDED
        .iter()
        .map(|&n| catalog(n))
        .collect::<Result<_>>()?;
    let four: Vec<Matroid> = CatalogName::TWO_SUM_EXCLUDED
        .iter()
        .map(|&n| catalog(n))
        .collect::<Result<_>>()?;
    for _ in 0..cfg.constructions {
        let m = random_series_parallel(&mut rng, 10)?;
        for t in &five {
            log.check(!has_minor(&m, t)?, || format!("{} has a {} minor", label(&m), label(t)));
        }
    }
    for _ in 0..cfg.constructions {
        let m = random_two_sums(&mut rng, 10)?;
        for t in &four {
            log.check(!has_minor(&m, t)?, || format!("{} has a {} minor", label(&m), label(t)));
        }
    }
    let u24 = Matroid::uniform(2, 4)?;
    log.check(has_minor(&catalog(CatalogName::W3)?, &u24)?, || "W3 has no U(2,4) minor".into());
    log.check(!has_minor(&catalog(CatalogName::MK4)?, &u24)?, || "MK4 has a U(2,4) minor".into());
    Ok(format!(
        "{} + {} constructions (seed {}), controls checked",
        cfg.constructions, cfg.constructions, cfg.seed
    ))
}

fn criterion_9(cfg: &CertifyConfig, log: &mut Log) -> Result<String> {
    let mut pool = corpus(cfg.seed)?;
    for n in 0..=9 {
        for r in 0..=n {
            pool.push(Matroid::uniform(r, n)?);
        }
    }
    let mut oracle_route = 0;
    for m in &pool {
        let v = uniformity(m)?;
        let expected = is_uniform_by_definition(m)?;
        log.check(v.uniform == expected, || format!("{}: reported {}, definition {expected}", label(m), v.uniform));
        oracle_route += usize::from(v.route == UniformRoute::LockedOracle);
    }
    let u12 = Matroid::uniform(1, 2)?;
    let sum = direct_sum(&u12, &u12)?;
    let v = uniformity(&sum)?;
    log.check(!v.uniform && v.route == UniformRoute::Definition, || format!("U(1,2)+U(1,2): {v:?}"));
    Ok(format!("{} matroids, {oracle_route} decided by the locked oracle", pool.len()))
}

fn hull_of(m: &Matroid) -> Result<ConstraintSystem> {
    brute_force_facets(&basis_points(m)?)
}

fn criterion_10(log: &mut Log) -> Result<String> {
    let u24 = hull_of(&Matroid::uniform(2, 4)?)?;
    log.check(u24.inequalities.len() == 8, || format!("P(U(2,4)) has {} facets", u24.inequalities.len()));
    let k4 = catalog(CatalogName::MK4)?;
    let hull = hull_of(&k4)?;
    let mut counts = [0usize; 3];
    for c in &hull.inequalities {
        match classify_facet(&k4, c)?.0 {
            ConstraintKind::Upper => counts[0] += 1,
            ConstraintKind::Nonneg => counts[1] += 1,
            ConstraintKind::Locked => counts[2] += 1,
            other => log.fail(format!("MK4 facet {c} classified {other}")),
        }
    }
    log.check(hull.inequalities.len() == 16 && counts == [6, 6, 4], || {
        format!("P(MK4): {} facets, upper/nonneg/locked {counts:?}", hull.inequalities.len())
    });
    Ok(format!(
        "P(U(2,4)): {}, P(MK4): {} = {} upper + {} nonneg + {} locked",
        u24.inequalities.len(),
        hull.inequalities.len(),
        counts[0],
        counts[1],
        counts[2]
    ))
}
