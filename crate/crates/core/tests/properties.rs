//! Exhaustive invariants on small matroids.

use mxt_core::certify::corpus;
use mxt_core::constructions::{catalog, direct_sum, parallel_extension, series_extension, two_sum, CatalogName};
use mxt_core::locked::enumerate_locked;
use mxt_core::mwbp::{brute_force_best, greedy_basis, WeightVector};
use mxt_core::polytope::{
    basis_points, edmonds_full_system, enumerate_vertices, facet_check, independent_points, q_facet_system,
    ConstraintKind, LinearConstraint, RationalPoint, Sense,
};
use mxt_core::{Matroid, Rational, Subset};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn zoo() -> Vec<Matroid> {
    let u = |r, n| Matroid::uniform(r, n).unwrap();
    let k4 = catalog(CatalogName::MK4).unwrap();
    let mut out = vec![
        u(0, 2),
        u(2, 4),
        u(3, 5),
        k4.clone(),
        k4.dual(),
        catalog(CatalogName::W3).unwrap(),
        catalog(CatalogName::Q6).unwrap(),
        catalog(CatalogName::P6).unwrap(),
        catalog(CatalogName::U24TwoSumU24).unwrap(),
        catalog(CatalogName::Wheel(4)).unwrap(),
        direct_sum(&u(1, 2), &u(2, 3)).unwrap(),
        two_sum(&k4, 1, &u(2, 4), 3).unwrap(),
        parallel_extension(&k4, 2).unwrap(),
        series_extension(&u(2, 4), 1).unwrap(),
        Matroid::graphic(&[(1, 1), (1, 2), (2, 3), (3, 1), (3, 4)]).unwrap(),
        Matroid::from_bases(4, vec![Subset(0b0011), Subset(0b0101), Subset(0b0110), Subset(0b1001), Subset(0b1010)]).unwrap(),
        k4.minor(Subset(0b000001), Subset(0b100000)).unwrap(),
    ];
    out.extend(corpus(0).unwrap().into_iter().skip(10).take(6));
    out
}

#[test]
fn rank_axioms() {
    for m in zoo() {
        assert!(m.len() <= 10);
        let full = m.ground();
        for x in full.subsets() {
            let rx = m.rank_of(x);
            assert!(rx <= x.len(), "{m}");
            for e in full.difference(x).iter() {
                let ry = m.rank_of(x.with(e));
                assert!(ry == rx || ry == rx + 1, "{m}: unit increase at {x} + {e}");
            }
        }
        for x in full.subsets() {
            for y in full.subsets() {
                assert!(
                    m.rank_of(x.union(y)) + m.rank_of(x.intersection(y)) <= m.rank_of(x) + m.rank_of(y),
                    "{m}: submodularity at {x}, {y}"
                );
            }
        }
    }
}

#[test]
fn duality_identities() {
    for m in zoo() {
        let d = m.dual();
        let n = m.len();
        for x in m.ground().subsets() {
            assert_eq!(m.corank(x).unwrap(), d.rank(x).unwrap(), "{m}");
        }
        let mut complements: Vec<Subset> = m.bases().unwrap().iter().map(|b| b.complement(n)).collect();
        complements.sort();
        assert_eq!(d.bases().unwrap(), complements, "{m}");
        assert_eq!(d.dual().bases().unwrap(), m.bases().unwrap(), "{m}");
    }
}

#[test]
fn tight_bases_duality() {
    for m in zoo().into_iter().filter(|m| m.len() <= 8) {
        let d = m.dual();
        let n = m.len();
        for x in m.ground().subsets() {
            let mut via_dual: Vec<Subset> = d.bases_tight(x.complement(n)).unwrap().iter().map(|b| b.complement(n)).collect();
            via_dual.sort();
            assert_eq!(m.bases_tight(x).unwrap(), via_dual, "{m}: X = {x}");
        }
    }
}

#[test]
fn closure_operator() {
    for m in zoo() {
        for x in m.ground().subsets() {
            let c = m.closure(x).unwrap();
            assert!(x.is_subset_of(c));
            assert_eq!(m.closure(c).unwrap(), c);
            assert!(m.is_closed(c).unwrap());
            for e in m.ground().difference(x).iter() {
                assert!(c.is_subset_of(m.closure(x.with(e)).unwrap()));
            }
        }
    }
}

#[test]
fn deletion_and_contraction_commute() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in zoo() {
        let n = m.len();
        for _ in 0..6 {
            let mut delete = Subset::EMPTY;
            let mut contract = Subset::EMPTY;
            for e in 0..n {
                match rng.gen_range(0..4) {
                    0 => delete = delete.with(e),
                    1 => contract = contract.with(e),
                    _ => {}
                }
            }
            let direct = m.minor(delete, contract).unwrap();
            let (del, map) = m.restrict(m.ground().difference(delete)).unwrap();
            let del_then_con = del.minor(Subset::EMPTY, contract.pull_back(&map)).unwrap();
            let (con, map) = m.contract(contract).unwrap();
            let con_then_del = con.minor(delete.pull_back(&map), Subset::EMPTY).unwrap();
            assert!(direct.same_rank_function(&del_then_con), "{m}");
            assert!(direct.same_rank_function(&con_then_del), "{m}");
        }
    }
}

#[test]
fn independence_systems_agree() {
    for m in zoo().into_iter().filter(|m| m.len() <= 7) {
        let mut expected = independent_points(&m).unwrap();
        expected.sort();
        let q = q_facet_system(&m).unwrap();
        assert_eq!(enumerate_vertices(&q).unwrap(), expected, "{m}");
        assert_eq!(enumerate_vertices(&edmonds_full_system(&m).unwrap()).unwrap(), expected, "{m}");
        // with loops the polytope is not full-dimensional and the loop
        // constraints are implicit equalities
        if m.loops().is_empty() {
            for c in &q.inequalities {
                assert!(facet_check(&expected, c).unwrap().is_facet, "{m}: {c}");
            }
        }
    }
}

#[test]
fn locked_inequalities_are_tight_exactly_on_tight_bases() {
    for m in corpus(0).unwrap() {
        let pts = basis_points(&m).unwrap();
        let bases = m.bases().unwrap();
        for cert in enumerate_locked(&m).unwrap().certificates {
            let c = LinearConstraint::on_set(m.len(), cert.set, Sense::Le, cert.rank as i64, ConstraintKind::Locked);
            let check = facet_check(&pts, &c).unwrap();
            let tight: Vec<Subset> = check.tight.iter().map(|&i| bases[i]).collect();
            assert_eq!(tight, m.bases_tight(cert.set).unwrap());
        }
    }
}

#[test]
fn optimal_bases_are_invariant_under_scaling_and_shifting() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for m in zoo() {
        let r = Rational::from_integer((m.full_rank() as i64).into());
        for _ in 0..20 {
            let w: Vec<i64> = (0..m.len()).map(|_| rng.gen_range(-5..=5)).collect();
            let c = WeightVector::from_ints(&w);
            let scale = Rational::new(rng.gen_range(1..=7).into(), rng.gen_range(1..=4).into());
            let shift = Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=3).into());
            let scaled = WeightVector(c.0.iter().map(|v| v * &scale).collect());
            let shifted = WeightVector(c.0.iter().map(|v| v + &shift).collect());
            let optimal = |c: &WeightVector| -> Vec<Subset> {
                let best = brute_force_best(&m, c).unwrap().value;
                m.bases().unwrap().into_iter().filter(|&b| c.value(b) == best).collect()
            };
            let base = optimal(&c);
            assert_eq!(optimal(&scaled), base);
            assert_eq!(optimal(&shifted), base);
            let v = brute_force_best(&m, &c).unwrap().value;
            assert_eq!(brute_force_best(&m, &shifted).unwrap().value, &v + &shift * &r);
            assert_eq!(greedy_basis(&m, &c).unwrap(), greedy_basis(&m, &c).unwrap());
        }
    }
}

#[test]
fn incidence_points_roundtrip() {
    for x in Subset::full(6).subsets() {
        assert_eq!(RationalPoint::incidence(x, 6).as_set(), Some(x));
    }
}
