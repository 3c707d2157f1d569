//! One function per subcommand. Each returns a JSON payload plus the lines
//! of the text rendering.

use std::collections::BTreeMap;

use mxt_core::certify::{run_all, CertifyConfig};
use mxt_core::connectivity::{components, find_separation, is_2connected, is_simple_and_cosimple};
use mxt_core::constructions::{catalog, find_minor, CatalogName};
use mxt_core::locked::{enumerate_locked, is_uniform_by_definition, k_locked_oracle, LockedReport, UniformRoute};
use mxt_core::mwbp::{brute_force_best, certify_optimal, greedy_basis, lp_vertex_best, SolveResult, WeightVector};
use mxt_core::polytope::{
    basis_points, brute_force_facets, classify_facet, facet_system, minimize_system, ConstraintKind,
    ConstraintSystem, DropReason, LinearConstraint, RationalPoint, SeparationOracle, Verdict,
};
use mxt_core::rational::{format_rational, parse_rational};
use mxt_core::{locked, Error, Matroid, Subset};
use serde_json::{json, Value};

use crate::document::to_document;
use crate::error::CliError;

pub struct Outcome {
    pub result: Value,
    pub text: Vec<String>,
    /// Set by `selftest` when a criterion fails.
    pub failed: bool,
}

impl Outcome {
    fn new(result: Value, text: Vec<String>) -> Outcome {
        Outcome {
            result,
            text,
            failed: false,
        }
    }
}

fn elements(s: Subset) -> Value {
    Value::from(s.to_vec())
}

fn describe(m: &Matroid) -> Value {
    json!({
        "name": m.name(),
        "n": m.len(),
        "rank": m.full_rank(),
    })
}

/// Parses `"0,2,3"`; the empty string is the empty set.
pub fn parse_subset(text: &str, n: usize) -> Result<Subset, CliError> {
    let mut s = Subset::default();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let e: usize = part
            .parse()
            .map_err(|_| CliError::Input(format!("--subset: {part:?} is not an element index")))?;
        if e >= n {
            return Err(CliError::Input(format!(
                "--subset: element {e} is outside the ground set of size {n}"
            )));
        }
        s = s.with(e);
    }
    Ok(s)
}

/// Reads a JSON array of rationals given as strings (plain integers are
/// accepted too).
pub fn parse_rational_list(text: &str, flag: &str) -> Result<Vec<String>, CliError> {
    let value: Value = serde_json::from_str(text).map_err(|e| CliError::Input(format!("{flag}: not valid JSON: {e}")))?;
    let items = value
        .as_array()
        .ok_or_else(|| CliError::Input(format!("{flag}: expected an array of rational strings")))?;
    items
        .iter()
        .enumerate()
        .map(|(i, v)| match v {
            Value::String(s) => Ok(s.clone()),
            Value::Number(x) if x.is_i64() || x.is_u64() => Ok(x.to_string()),
            _ => Err(CliError::Input(format!("{flag}[{i}]: expected a rational string such as \"3/2\""))),
        })
        .collect()
}

fn constraint_json(c: &LinearConstraint) -> Value {
    json!({
        "text": c.to_string(),
        "kind": c.kind.as_str(),
        "sense": c.sense.symbol(),
        "rhs": c.rhs,
        "coeffs": c.coeffs,
        "support": elements(c.support),
    })
}

fn system_json(sys: &ConstraintSystem) -> Value {
    json!({
        "equalities": sys.equalities.iter().map(constraint_json).collect::<Vec<_>>(),
        "inequalities": sys.inequalities.iter().map(constraint_json).collect::<Vec<_>>(),
    })
}

fn kind_counts(sys: &ConstraintSystem) -> BTreeMap<&'static str, usize> {
    let mut counts = BTreeMap::new();
    for c in &sys.inequalities {
        *counts.entry(c.kind.as_str()).or_insert(0) += 1;
    }
    counts
}

fn counts_line(counts: &BTreeMap<&'static str, usize>) -> String {
    counts.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

pub fn rank(m: &Matroid, subset: &str) -> Result<Outcome, CliError> {
    let x = parse_subset(subset, m.len())?;
    let r = m.rank(x)?;
    let corank = m.corank(x)?;
    let closure = m.closure(x)?;
    let result = json!({
        "subset": elements(x),
        "rank": r,
        "corank": corank,
        "independent": m.is_independent(x),
        "closure": elements(closure),
    });
    let text = vec![
        format!("r({x}) = {r}"),
        format!("r*({x}) = {corank}"),
        format!("independent: {}", m.is_independent(x)),
        format!("closure: {closure}"),
    ];
    Ok(Outcome::new(result, text))
}

pub fn dual(m: &Matroid) -> Result<Outcome, CliError> {
    let d = m.dual();
    let bases = d.bases()?;
    let mut text = vec![format!("dual: n = {}, rank = {}, {} bases", d.len(), d.full_rank(), bases.len())];
    text.extend(bases.iter().map(|b| format!("  {b}")));
    let result = json!({
        "n": d.len(),
        "rank": d.full_rank(),
        "bases": bases.iter().map(|&b| elements(b)).collect::<Vec<_>>(),
        "document": to_document(&d)?,
    });
    Ok(Outcome::new(result, text))
}

pub fn connectivity(m: &Matroid) -> Result<Outcome, CliError> {
    let connected = is_2connected(m)?;
    let parts = components(m)?;
    let separation = find_separation(m)?;
    let simple = is_simple_and_cosimple(m);
    let mut text = vec![
        format!("2-connected: {connected}"),
        format!("simple and cosimple: {simple}"),
        format!("loops: {}", m.loops()),
        format!("coloops: {}", m.coloops()),
        format!("components: {}", parts.len()),
    ];
    text.extend(parts.iter().map(|c| format!("  {c}")));
    if let Some(s) = separation {
        text.push(format!("separation: {} | {}", s.part_a, s.part_b));
    }
    let result = json!({
        "two_connected": connected,
        "simple_and_cosimple": simple,
        "loops": elements(m.loops()),
        "coloops": elements(m.coloops()),
        "components": parts.iter().map(|&c| elements(c)).collect::<Vec<_>>(),
        "separation": separation.map(|s| json!({"a": elements(s.part_a), "b": elements(s.part_b)})),
    });
    Ok(Outcome::new(result, text))
}

fn certificates(m: &Matroid, report: &LockedReport) -> Result<(Vec<Value>, Vec<String>), CliError> {
    let d = m.dual();
    let n = m.len();
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for c in &report.certificates {
        let closed = m.closure(c.set)? == c.set;
        let rest = c.set.complement(n);
        let coclosed = d.closure(rest)? == rest;
        rows.push(json!({
            "set": elements(c.set),
            "rank": c.rank,
            "corank_complement": c.corank_complement,
            "component": c.component,
            "closed": closed,
            "coclosed": coclosed,
        }));
        lines.push(format!(
            "  {} r = {} r*(E-L) = {} component {} closed {} coclosed {}",
            c.set, c.rank, c.corank_complement, c.component, closed, coclosed
        ));
    }
    Ok((rows, lines))
}

pub fn locked_sets(m: &Matroid) -> Result<Outcome, CliError> {
    let report = enumerate_locked(m)?;
    let (rows, lines) = certificates(m, &report)?;
    let mut text = vec![format!("locked sets: {}", report.count)];
    text.extend(lines);
    let result = json!({
        "count": report.count,
        "truncated": report.truncated,
        "certificates": rows,
    });
    Ok(Outcome::new(result, text))
}

pub fn k_locked(m: &Matroid, k: u32) -> Result<Outcome, CliError> {
    let answer = k_locked_oracle(m, k)?;
    let threshold = u64::try_from(answer.threshold)
        .map(Value::from)
        .unwrap_or_else(|_| Value::from(answer.threshold.to_string()));
    let mut text = vec![
        format!("{k}-locked: {}", answer.answer),
        format!("threshold |E|^(k+1) = {}", answer.threshold),
        format!("locked sets found: {}{}", answer.report.count, if answer.report.truncated { " (stopped)" } else { "" }),
    ];
    let rows = if answer.answer {
        let (rows, lines) = certificates(m, &answer.report)?;
        text.extend(lines);
        Value::from(rows)
    } else {
        Value::Null
    };
    let result = json!({
        "k": k,
        "threshold": threshold,
        "k_locked": answer.answer,
        "found": answer.report.count,
        "truncated": answer.report.truncated,
        "certificates": rows,
    });
    Ok(Outcome::new(result, text))
}

pub fn facets(m: &Matroid) -> Result<Outcome, CliError> {
    let sys = facet_system(m)?;
    let counts = kind_counts(&sys);
    let mut text = vec![format!(
        "{} equalities, {} inequalities ({})",
        sys.equalities.len(),
        sys.inequalities.len(),
        counts_line(&counts)
    )];
    text.extend(sys.constraints().map(|c| format!("  [{}] {c}", c.kind)));
    let result = json!({
        "equality_count": sys.equalities.len(),
        "inequality_count": sys.inequalities.len(),
        "kinds": counts,
        "system": system_json(&sys),
    });
    Ok(Outcome::new(result, text))
}

fn is_trivial(kind: ConstraintKind) -> bool {
    matches!(
        kind,
        ConstraintKind::Upper | ConstraintKind::Nonneg | ConstraintKind::Parallel | ConstraintKind::Coparallel
    )
}

pub fn verify_facets(m: &Matroid) -> Result<Outcome, CliError> {
    let sys = facet_system(m)?;
    let hull = brute_force_facets(&basis_points(m)?)?;
    let (hull_n, sys_n) = (hull.normalized(), sys.normalized());
    let equal = hull_n == sys_n;
    let (only_hull, only_sys) = hull_n.difference(&sys_n);
    let minimized = minimize_system(m, &sys)?;

    let mut facet_rows = Vec::new();
    let mut unlocked = Vec::new();
    for c in &hull.inequalities {
        let (kind, set) = classify_facet(m, c)?;
        let ok = is_trivial(kind) || kind == ConstraintKind::Locked;
        if !ok {
            unlocked.push(c.to_string());
        }
        facet_rows.push(json!({
            "facet": c.to_string(),
            "kind": kind.as_str(),
            "set": set.map(elements),
            "nontrivial_on_locked_set": kind == ConstraintKind::Locked,
        }));
    }
    let redundant: Vec<Value> = minimized
        .dropped
        .iter()
        .map(|d| {
            let reason = match d.reason {
                DropReason::NotFacet => "not a facet".to_string(),
                DropReason::SameFacetAs(i) => format!("same facet as inequality {i}"),
            };
            json!({"constraint": d.constraint.to_string(), "reason": reason})
        })
        .collect();
    let show = |rows: &[&mxt_core::polytope::NormalRow]| rows.iter().map(|r| r.to_string()).collect::<Vec<_>>();

    let mut text = vec![
        format!("theorem2_system == hull_facets: {equal}"),
        format!("system: {} equalities, {} inequalities", sys.equalities.len(), sys.inequalities.len()),
        format!("hull: {} equalities, {} facets", hull.equalities.len(), hull.inequalities.len()),
        format!("every nontrivial facet on a locked set: {}", unlocked.is_empty()),
        format!("redundant system inequalities: {}", redundant.len()),
    ];
    text.extend(minimized.dropped.iter().map(|d| format!("  {} ({:?})", d.constraint, d.reason)));
    text.extend(show(&only_hull).into_iter().map(|r| format!("only in hull: {r}")));
    text.extend(show(&only_sys).into_iter().map(|r| format!("only in system: {r}")));

    let result = json!({
        "theorem2_system_equals_hull_facets": equal,
        "system_irredundant": redundant.is_empty(),
        "nontrivial_facets_locked": unlocked.is_empty(),
        "system_inequalities": sys.inequalities.len(),
        "hull_facets": hull.inequalities.len(),
        "only_in_hull": show(&only_hull),
        "only_in_system": show(&only_sys),
        "redundant": redundant,
        "facets": facet_rows,
    });
    Ok(Outcome::new(result, text))
}

pub fn separate(m: &Matroid, point: &[String]) -> Result<Outcome, CliError> {
    let coords = point
        .iter()
        .enumerate()
        .map(|(i, s)| parse_rational(s).map_err(|e| CliError::Input(format!("--point[{i}]: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let x = RationalPoint(coords);
    let oracle = SeparationOracle::new(m)?;
    let outcome = oracle.separate(&x)?;
    let (verdict, violated) = match &outcome.verdict {
        Verdict::Member => ("member", None),
        Verdict::Violated(c) => ("violated", Some(c)),
    };
    let mut text = vec![format!("point: {x}"), format!("verdict: {verdict}")];
    if let Some(c) = violated {
        text.push(format!("violated: [{}] {c} (lhs = {})", c.kind, format_rational(&c.lhs_value(&x))));
    }
    text.push(format!("constraints evaluated: {}", outcome.evaluations));
    let result = json!({
        "point": x.0.iter().map(format_rational).collect::<Vec<_>>(),
        "verdict": verdict,
        "violated": violated.map(|c| {
            let mut v = constraint_json(c);
            v["lhs"] = Value::from(format_rational(&c.lhs_value(&x)));
            v
        }),
        "evaluations": outcome.evaluations,
    });
    Ok(Outcome::new(result, text))
}

fn solve_json(r: &std::result::Result<SolveResult, Error>) -> Result<Value, CliError> {
    match r {
        Ok(s) => Ok(json!({"basis": elements(s.basis), "value": format_rational(&s.value)})),
        Err(e) if e.is_cap_exceeded() => Ok(json!({"skipped": e.to_string()})),
        Err(e) => Err(e.clone().into()),
    }
}

pub fn mwbp(m: &Matroid, weights: &[String]) -> Result<Outcome, CliError> {
    let c = WeightVector::parse(weights).map_err(|e| CliError::Input(format!("--weights: {e}")))?;
    if c.len() != m.len() {
        return Err(CliError::Input(format!(
            "--weights: expected {} weights, got {}",
            m.len(),
            c.len()
        )));
    }
    let greedy = greedy_basis(m, &c)?;
    let brute = brute_force_best(m, &c);
    let lp = lp_vertex_best(m, &c);
    let brute_json = solve_json(&brute)?;
    let lp_json = solve_json(&lp)?;
    let values: Vec<_> = [Ok(greedy.clone()), brute, lp]
        .into_iter()
        .filter_map(|r| r.ok().map(|s| s.value))
        .collect();
    let agree = values.iter().all(|v| *v == greedy.value);
    let certified = match certify_optimal(m, &c, greedy.basis) {
        Ok(b) => Value::from(b),
        Err(e) if e.is_cap_exceeded() => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let line = |name: &str, v: &Value| match (v.get("basis"), v.get("value"), v.get("skipped")) {
        (Some(b), Some(x), _) => format!("{name}: basis {b} value {}", x.as_str().unwrap_or("")),
        (_, _, Some(s)) => format!("{name}: skipped ({})", s.as_str().unwrap_or("")),
        _ => format!("{name}: -"),
    };
    let greedy_json = json!({"basis": elements(greedy.basis), "value": format_rational(&greedy.value)});
    let text = vec![
        line("greedy", &greedy_json),
        line("brute", &brute_json),
        line("lp-vertex", &lp_json),
        format!("methods agree: {agree}"),
        format!("greedy basis certified optimal: {certified}"),
    ];
    let result = json!({
        "weights": c.0.iter().map(format_rational).collect::<Vec<_>>(),
        "greedy": greedy_json,
        "brute": brute_json,
        "lp_vertex": lp_json,
        "agree": agree,
        "certified": certified,
    });
    Ok(Outcome::new(result, text))
}

pub fn is_uniform(m: &Matroid) -> Result<Outcome, CliError> {
    let verdict = locked::uniformity(m)?;
    let definition = is_uniform_by_definition(m)?;
    let route = match verdict.route {
        UniformRoute::LockedOracle => "locked-oracle",
        UniformRoute::Definition => "definition",
    };
    let text = vec![
        format!("uniform: {}", verdict.uniform),
        format!("route: {route}"),
        format!("definition agrees: {}", definition == verdict.uniform),
    ];
    let result = json!({
        "uniform": verdict.uniform,
        "route": route,
        "by_definition": definition,
    });
    Ok(Outcome::new(result, text))
}

pub fn has_minor(m: &Matroid, target: &Matroid) -> Result<Outcome, CliError> {
    let witness = find_minor(m, target)?;
    let mut text = vec![format!("has minor: {}", witness.is_some())];
    if let Some(w) = &witness {
        text.push(format!("delete {} contract {}", w.delete, w.contract));
        text.push(format!("mapping {:?}", w.iso.mapping));
    }
    let result = json!({
        "target": describe(target),
        "has_minor": witness.is_some(),
        "witness": witness.map(|w| json!({
            "delete": elements(w.delete),
            "contract": elements(w.contract),
            "mapping": w.iso.mapping,
        })),
    });
    Ok(Outcome::new(result, text))
}

const FIXED_NAMES: [&str; 5] = ["MK4", "W3", "Q6", "P6", "U24+2U24"];

pub fn catalog_list() -> Outcome {
    let patterns = ["U(r,n)", "wheel(k)"];
    let mut text = vec!["catalog names:".to_string()];
    text.extend(FIXED_NAMES.iter().chain(&patterns).map(|n| format!("  {n}")));
    let result = json!({"names": FIXED_NAMES, "patterns": patterns});
    Outcome::new(result, text)
}

pub fn catalog_entry(name: &str) -> Result<(Matroid, Outcome), CliError> {
    let parsed: CatalogName = name.parse().map_err(|e: Error| CliError::Input(format!("--name: {e}")))?;
    let m = catalog(parsed)?;
    let bases = m.bases()?.len();
    let text = vec![
        format!("{parsed}: n = {}, rank = {}, {bases} bases", m.len(), m.full_rank()),
        format!("document: {}", to_document(&m)?),
    ];
    let result = json!({
        "matroid": describe(&m),
        "bases": bases,
        "document": to_document(&m)?,
    });
    Ok((m, Outcome::new(result, text)))
}

pub fn selftest(seed: u64, timing: bool) -> Outcome {
    let cfg = CertifyConfig {
        seed,
        ..CertifyConfig::default()
    };
    let reports = run_all(&cfg);
    let passed = reports.iter().all(|r| r.passed);
    let mut text = Vec::new();
    let mut rows = Vec::new();
    for r in &reports {
        text.push(if timing {
            format!("{r} [{:.3}s]", r.elapsed.as_secs_f64())
        } else {
            r.to_string()
        });
        text.extend(r.failures.iter().map(|f| format!("    {f}")));
        let mut row = json!({
            "id": r.id,
            "title": r.title,
            "passed": r.passed,
            "detail": r.detail,
            "failures": r.failures,
        });
        if timing {
            row["elapsed_ms"] = Value::from(r.elapsed.as_millis() as u64);
        }
        rows.push(row);
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    text.push(format!("{} of {} criteria passed", reports.len() - failed, reports.len()));
    Outcome {
        result: json!({"passed": passed, "criteria": rows}),
        text,
        failed: !passed,
    }
}
