use super::*;
use crate::classify::{class_holds, HyperidealClass, MCSet};
use crate::ideals::{gen_ideal_mask, radical_primes_mask, zero_ideal, Hyperideal};
use crate::ring::RingError;
use crate::set::BitIter;

fn arc_zphi(n: usize, phi: &[usize]) -> Arc<HyperringTable> {
    Arc::new(build_zphi(n, phi).unwrap())
}

fn single(ring: &Arc<HyperringTable>, ideal: &[usize], mcs: &[usize]) -> Instance {
    let a = Hyperideal::new(ring, ring.subset(ideal).unwrap()).unwrap();
    let s = MCSet::new(ring, ring.subset(mcs).unwrap()).unwrap();
    Instance::Single {
        ring: ring.clone(),
        ideal: a,
        mcs: s,
    }
}

/// A compact instance pool that exercises every check shape, including the
/// product boundary case and a multi-prime carrier where the quasi classes
/// genuinely fail.
fn mutation_pool() -> Vec<Instance> {
    let madar = arc_zphi(4, &[1, 3]);
    let weak = arc_zphi(6, &[1, 2, 3, 4, 5]);
    let haji = arc_zphi(5, &[1, 2, 3]);
    let z6 = arc_zphi(6, &[1]);
    let z30 = arc_zphi(30, &[1]);

    let mut pool = vec![
        single(&madar, &[0, 2], &[1, 3]),
        single(&madar, &[0], &[1, 3]),
        single(&weak, &[0], &[1, 5]),
        single(&weak, &[0, 3], &[1, 5]),
        single(&haji, &[0], &[1, 3]),
        single(&z6, &[0], &[1, 5]),
        single(&z6, &[0, 2, 4], &[1]),
        single(&z6, &[0, 3], &[1]),
        single(&z30, &[0, 6, 12, 18, 24], &[1]),
        single(&z30, &[0], &[1]),
    ];

    // the product boundary: both factors disjoint from their MCS
    let product = Arc::new(madar.direct_product(&madar, 64).unwrap());
    let a1 = Hyperideal::new(&madar, madar.subset(&[0, 2]).unwrap()).unwrap();
    let s1 = MCSet::new(&madar, madar.subset(&[1, 3]).unwrap()).unwrap();
    pool.push(Instance::Pair {
        left: madar.clone(),
        right: madar.clone(),
        product: product.clone(),
        left_ideal: a1,
        right_ideal: a1,
        left_mcs: s1,
        right_mcs: s1,
    });
    // the same subject as a single instance over the product ring
    let a_embedded: Vec<usize> = [0usize, 2]
        .iter()
        .flat_map(|&i| [0usize, 2].iter().map(move |&j| i * 4 + j))
        .collect();
    let s_embedded: Vec<usize> = [1usize, 3]
        .iter()
        .flat_map(|&i| [1usize, 3].iter().map(move |&j| i * 4 + j))
        .collect();
    pool.push(single(&product, &a_embedded, &s_embedded));

    // quotient projections as hom instances
    for (ring, b, a, s) in [
        (&weak, vec![0, 3], vec![0, 3], vec![1, 5]),
        (&weak, vec![0], vec![0, 2, 4], vec![1, 5]),
        (&z6, vec![0, 3], vec![0, 3], vec![1]),
        (&z6, vec![0], vec![0, 2, 4], vec![1]),
        (&z30, vec![0], vec![0, 6, 12, 18, 24], vec![1]),
    ] {
        let b = Hyperideal::new(ring, ring.subset(&b).unwrap()).unwrap();
        let (_q, proj) = ring.quotient(&b).unwrap();
        let ideal = Hyperideal::new(ring, ring.subset(&a).unwrap()).unwrap();
        let mcs = MCSet::new(ring, ring.subset(&s).unwrap()).unwrap();
        pool.push(Instance::Hom {
            hom: proj,
            ideal,
            mcs,
        });
    }
    pool
}

#[test]
fn true_engine_passes_on_mutation_pool() {
    let pool = mutation_pool();
    let summary = run_all(&pool, &RunOptions::default());
    assert_eq!(
        summary.fails.len(),
        0,
        "true engine must not fail: {:?}",
        summary
            .fails
            .iter()
            .map(|f| (f.check, f.description.clone()))
            .collect::<Vec<_>>()
    );
    let t = summary.total();
    assert!(t.pass > 0);
}

// ----------------------------------------------------- mutated engine parts

fn rad_full(g: &HyperringTable, _a: u64) -> Result<u64, RingError> {
    Ok(g.full_mask())
}

fn rad_self(_g: &HyperringTable, a: u64) -> Result<u64, RingError> {
    Ok(a)
}

fn cls_quasi_true(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    if class == HyperidealClass::Quasi {
        a & s == 0
    } else {
        class_holds(g, class, a, s, rad)
    }
}

fn cls_weakly_true(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    if class == HyperidealClass::WeaklyQuasi {
        a & s == 0
    } else {
        class_holds(g, class, a, s, rad)
    }
}

fn cls_strongly_true(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    if class == HyperidealClass::StronglyQuasi {
        a & s == 0
    } else {
        class_holds(g, class, a, s, rad)
    }
}

fn cls_sprime_true(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    if class == HyperidealClass::SPrime {
        a & s == 0
    } else {
        class_holds(g, class, a, s, rad)
    }
}

/// Drops the `t∘u` branch of every conclusion: only the right-hand side of
/// each pair may rescue a witness.
fn cls_ignore_left(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    if a & s != 0 {
        return false;
    }
    BitIter(s).any(|t| {
        (0..g.n()).all(|u| {
            (0..g.n()).all(|v| {
                let prod = g.hyp_mask(u, v);
                let triggers = match class {
                    HyperidealClass::WeaklyQuasi => prod & !a == 0 && prod & 1 == 0,
                    _ => prod & !a == 0,
                };
                if !triggers {
                    return true;
                }
                let tv = g.prod_mask(1u64 << t, 1u64 << v);
                match class {
                    HyperidealClass::SPrime => tv & !a == 0,
                    _ => tv & !rad == 0,
                }
            })
        })
    })
}

/// Evaluates `∀pair ∃t` instead of `∃t ∀pair`, silently dropping the
/// single-witness requirement.
fn cls_per_pair(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    if a & s != 0 {
        return false;
    }
    (0..g.n()).all(|u| {
        (0..g.n()).all(|v| {
            let prod = g.hyp_mask(u, v);
            let triggers = match class {
                HyperidealClass::WeaklyQuasi => prod & !a == 0 && prod & 1 == 0,
                _ => prod & !a == 0,
            };
            if !triggers {
                return true;
            }
            BitIter(s).any(|t| {
                let tu = g.prod_mask(1u64 << t, 1u64 << u);
                let tv = g.prod_mask(1u64 << t, 1u64 << v);
                match class {
                    HyperidealClass::SPrime => tu & !a == 0 || tv & !a == 0,
                    HyperidealClass::SPrimary => tu & !a == 0 || tv & !rad == 0,
                    HyperidealClass::Quasi | HyperidealClass::WeaklyQuasi => {
                        tu & !rad == 0 || tv & !rad == 0
                    }
                    HyperidealClass::StronglyQuasi => {
                        let tu2 = g.prod_mask(1u64 << t, g.prod_mask(1u64 << u, 1u64 << u));
                        tu2 & !a == 0 || tv & !rad == 0
                    }
                }
            })
        })
    })
}

/// Treats the zero hyperideal as always quasi and every ideal as weakly
/// quasi (the precondition-forcing mutation for the radical theorems).
fn cls_zero_quasi_weakly(
    g: &HyperringTable,
    class: HyperidealClass,
    a: u64,
    s: u64,
    rad: u64,
) -> bool {
    match class {
        HyperidealClass::WeaklyQuasi => a & s == 0,
        HyperidealClass::Quasi if a == gen_ideal_mask(g, 1) => a & s == 0,
        _ => class_holds(g, class, a, s, rad),
    }
}

fn mutations() -> Vec<(&'static str, Engine)> {
    let base = Engine::default();
    vec![
        (
            "quasi_always_true",
            Engine {
                class_holds: cls_quasi_true,
                ..base
            },
        ),
        (
            "weakly_always_true",
            Engine {
                class_holds: cls_weakly_true,
                ..base
            },
        ),
        (
            "strongly_always_true",
            Engine {
                class_holds: cls_strongly_true,
                ..base
            },
        ),
        (
            "s_prime_always_true",
            Engine {
                class_holds: cls_sprime_true,
                ..base
            },
        ),
        (
            "conclusion_ignores_left_factor",
            Engine {
                class_holds: cls_ignore_left,
                ..base
            },
        ),
        (
            "witness_chosen_per_pair",
            Engine {
                class_holds: cls_per_pair,
                ..base
            },
        ),
        (
            "radical_is_full_carrier",
            Engine {
                radical: rad_full,
                ..base
            },
        ),
        (
            "radical_is_ideal_itself",
            Engine {
                radical: rad_self,
                ..base
            },
        ),
        (
            "zero_quasi_and_weakly_forced",
            Engine {
                class_holds: cls_zero_quasi_weakly,
                ..base
            },
        ),
    ]
}

/// Every catalog id must flip to Fail under at least one documented engine
/// mutation somewhere on the pool; otherwise the check could be vacuous.
#[test]
fn every_check_detects_some_engine_mutation() {
    let pool = mutation_pool();
    let mut flipped: Vec<(CheckId, &'static str)> = Vec::new();
    for (name, engine) in mutations() {
        for inst in &pool {
            for id in CATALOG {
                if run_check(id, inst).is_fail() {
                    continue; // never true for the real engine; guarded above
                }
                if checks::run_check_with(id, inst, &engine).is_fail()
                    && !flipped.iter().any(|(f, _)| *f == id)
                {
                    flipped.push((id, name));
                }
            }
        }
    }
    let missing: Vec<CheckId> = CATALOG
        .iter()
        .copied()
        .filter(|id| !flipped.iter().any(|(f, _)| f == id))
        .collect();
    assert!(
        missing.is_empty(),
        "checks with no detected mutation: {missing:?}; flipped: {flipped:?}"
    );
}

#[test]
fn fail_dumps_replay_to_the_same_fail() {
    // Drive a Fail with a broken engine, re-load its dump, and re-run: the
    // outcome and dump must reproduce byte for byte.
    let pool = mutation_pool();
    let engine = Engine {
        class_holds: cls_quasi_true,
        ..Engine::default()
    };
    let mut replayed = 0;
    for inst in &pool {
        for id in CATALOG {
            if let CheckOutcome::Fail(info) = checks::run_check_with(id, inst, &engine) {
                let ws = Workspace::parse(&info.dump).expect("dump must re-parse");
                let inst2 = instance_from_workspace(&ws).expect("dump must rebuild");
                match checks::run_check_with(id, &inst2, &engine) {
                    CheckOutcome::Fail(info2) => {
                        assert_eq!(info.description, info2.description);
                        assert_eq!(info.dump, info2.dump);
                        replayed += 1;
                    }
                    other => panic!("replay of {id} produced {other:?}"),
                }
            }
        }
    }
    assert!(replayed > 0, "no Fail outcome was produced to replay");
}

#[test]
fn generated_stream_is_deterministic() {
    let a = generate_structures(42, 60, &GenLimits::default());
    let b = generate_structures(42, 60, &GenLimits::default());
    assert_eq!(a.instances.len(), b.instances.len());
    assert_eq!(a.discarded, b.discarded);
    for (x, y) in a.instances.iter().zip(&b.instances) {
        assert_eq!(x.dump(CheckId::T11, ""), y.dump(CheckId::T11, ""));
    }
    let c = generate_structures(43, 60, &GenLimits::default());
    let differs = a
        .instances
        .iter()
        .zip(&c.instances)
        .any(|(x, y)| x.dump(CheckId::T11, "") != y.dump(CheckId::T11, ""))
        || a.instances.len() != c.instances.len();
    assert!(differs, "different seeds should give different streams");
}

#[test]
fn generated_stream_includes_the_named_rings() {
    // madar, weak and haji are all Z_Φ grid points and must appear.
    let out = generate_structures(1, 100_000, &GenLimits::default());
    let madar = build_zphi(4, &[1, 3]).unwrap();
    let weak = build_zphi(6, &[1, 2, 3, 4, 5]).unwrap();
    let haji = build_zphi(5, &[1, 2, 3]).unwrap();
    for target in [&madar, &weak, &haji] {
        assert!(
            out.instances.iter().any(|inst| match inst {
                Instance::Single { ring, .. } => ring.same_tables(target),
                _ => false,
            }),
            "expected ring of size {} in the stream",
            target.n()
        );
    }
}

#[test]
fn run_all_counts_add_up() {
    let z6 = arc_zphi(6, &[1]);
    let pool = vec![single(&z6, &[0], &[1, 5]), single(&z6, &[0, 3], &[1])];
    let summary = run_all(&pool, &RunOptions::default());
    let t = summary.total();
    // 15 single-shape checks per instance
    assert_eq!(t.pass + t.fail + t.skip, 2 * 15);
    assert_eq!(t.fail, 0);
}

#[test]
fn workers_do_not_change_outcomes() {
    let pool = mutation_pool();
    let s1 = run_all(&pool, &RunOptions { workers: 1 });
    let s4 = run_all(&pool, &RunOptions { workers: 4 });
    assert_eq!(s1.per_check, s4.per_check);
    assert_eq!(s1.fails, s4.fails);
}

#[test]
fn t14_theorem_never_fails_via_avoidance_api() {
    // cross-check the avoidance search against the catalog path on a ring
    // with several quasi C-hyperideals
    let z30 = arc_zphi(30, &[1]);
    let s = MCSet::new(&z30, z30.subset(&[1]).unwrap()).unwrap();
    let ideals = crate::ideals::enumerate_hyperideals(&z30).unwrap();
    let quasi_c: Vec<Hyperideal> = ideals
        .iter()
        .copied()
        .filter(|h| {
            let a = h.set().bits();
            a & s.set().bits() == 0
                && crate::ideals::is_c_mask(&z30, a).unwrap().0
                && class_holds(
                    &z30,
                    HyperidealClass::Quasi,
                    a,
                    s.set().bits(),
                    radical_primes_mask(&z30, a).unwrap(),
                )
        })
        .collect();
    assert!(quasi_c.len() >= 2);
    for a in &ideals {
        for i in 0..quasi_c.len() {
            for j in i..quasi_c.len() {
                let covers = vec![quasi_c[i], quasi_c[j]];
                let union = covers[0].set().union(&covers[1].set());
                if !a.set().is_subset(&union) {
                    continue;
                }
                match crate::classify::avoidance_witness(&z30, a, &covers, &s).unwrap() {
                    crate::classify::AvoidanceOutcome::Witness { .. } => {}
                    other => panic!("avoidance failed for {}: {other:?}", a.set()),
                }
            }
        }
    }
    let _ = zero_ideal(&z30);
}
