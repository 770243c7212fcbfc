//! The acceptance suite: one test per criterion, each printing a pass/fail
//! line (run with `--nocapture` to see them). Everything is exhaustive or
//! seeded-deterministic at desk scale over the parameter grid.

use std::panic::{catch_unwind, AssertUnwindSafe};

use tilings_core::invariants::{
    ag_from_tiles, ag_invariant, ag_invariant_starting_at, cluster_profile, gorenstein_dimension,
    gorenstein_from_tiles, is_end_algebra, ClusterOutcome, GorensteinResult,
};
use tilings_core::orbit::{ar_quiver, tau};
use tilings_core::polygon::{Diagonal, PolygonContext};
use tilings_core::quiver::{
    choose_thread_set, cycles_oriented_relation_full, fans, is_gentle, permitted_threads,
    tile_shapes, tiling_algebra, MarkedTiling, Quiver, Thread, ThreadBody, ThreadKind,
};
use tilings_core::reconstruct::{quiver_isomorphic, tiling_from_gentle, AbstractTiling};
use tilings_core::rigid::{
    enumerate_connected_maximal, enumerate_connected_maximal_with_limit, ArcCollection,
};

const GRID: [(usize, usize); 6] = [(2, 1), (3, 1), (4, 1), (2, 2), (3, 2), (4, 2)];

fn criterion(number: usize, name: &str, body: impl FnOnce()) {
    let outcome = catch_unwind(AssertUnwindSafe(body));
    match outcome {
        Ok(()) => println!("acceptance {number:2} {name}: PASS"),
        Err(payload) => {
            println!("acceptance {number:2} {name}: FAIL");
            std::panic::resume_unwind(payload);
        }
    }
}

fn ctx(n: usize, m: usize) -> PolygonContext {
    PolygonContext::new(n, m).unwrap()
}

fn d(c: &PolygonContext, i: usize, j: usize) -> Diagonal {
    c.diagonal(i, j).unwrap()
}

/// xorshift64: deterministic seeds for the randomized sweeps.
struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

fn enumerated(c: &PolygonContext) -> Vec<ArcCollection> {
    enumerate_connected_maximal(c).unwrap()
}

/// Every subset of pairwise non-crossing diagonals, via backtracking over
/// the crossing graph (independent of the clique-based enumeration path).
fn all_noncrossing_subsets(c: &PolygonContext) -> Vec<Vec<Diagonal>> {
    let all = c.all_diagonals();
    let t = all.len();
    assert!(t <= 32);
    let compat: Vec<u32> = (0..t)
        .map(|i| {
            let mut mask = 0u32;
            for j in 0..t {
                if i != j && !c.crosses(all[i], all[j]) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    let mut out = Vec::new();
    fn rec(
        from: usize,
        chosen: &mut Vec<usize>,
        allowed: u32,
        t: usize,
        compat: &[u32],
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(chosen.clone());
        for j in from..t {
            if allowed >> j & 1 == 1 {
                chosen.push(j);
                rec(j + 1, chosen, allowed & compat[j], t, compat, out);
                chosen.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, &mut Vec::new(), (1u32 << t) - 1, t, &compat, &mut raw);
    for subset in raw {
        out.push(subset.into_iter().map(|i| all[i]).collect());
    }
    out
}

/// Deterministic corpus of connected tilings with at least one arc,
/// spanning 3..=12 marked points.
fn generated_tilings(count: usize, seed: u64) -> Vec<AbstractTiling> {
    let mut rng = Rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let points = 3 + rng.below(10);
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for _ in 0..3 * points {
            let i = 1 + rng.below(points);
            let j = 1 + rng.below(points);
            if i == j {
                continue;
            }
            let cand = (i.min(j), i.max(j));
            if arcs.contains(&cand) {
                continue;
            }
            arcs.push(cand);
            if AbstractTiling::new(points, arcs.clone()).is_err() {
                arcs.pop();
            }
        }
        if arcs.is_empty() {
            continue;
        }
        let tiling = AbstractTiling::new(points, arcs).unwrap();
        let q = tiling_algebra(&tiling).unwrap();
        if q.is_connected() {
            out.push(tiling);
        }
    }
    out
}

#[test]
fn criterion_01_model_counts() {
    criterion(1, "model counts", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            assert_eq!(
                c.all_diagonals().len(),
                n * c.vertex_count() / 2,
                "diagonal count for ({n},{m})"
            );
        }
        assert_eq!(ctx(3, 2).all_diagonals().len(), 15);
    });
}

#[test]
fn criterion_02_translation_quiver_fidelity() {
    criterion(2, "translation quiver fidelity", || {
        let c = ctx(3, 2);
        let q = ar_quiver(&c);
        assert!(q.has_arrow(d(&c, 1, 3), d(&c, 1, 6)));
        assert!(q.has_arrow(d(&c, 1, 6), d(&c, 1, 9)));
        assert!(q.has_arrow(d(&c, 1, 6), d(&c, 4, 6)));
        assert_eq!(q.translate(d(&c, 4, 9)), Some(d(&c, 1, 6)));
        assert_eq!(tau(&c, d(&c, 4, 9), 1), d(&c, 1, 6));
    });
}

#[test]
fn criterion_03_rigidity_equivalence() {
    criterion(3, "rigidity equivalence", || {
        // Exhaustive over all subsets for the two smallest polygons.
        for (n, m) in [(2, 1), (3, 1)] {
            let c = ctx(n, m);
            let all = c.all_diagonals();
            for mask in 0u32..1 << all.len() {
                let arcs = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x);
                let tc = ArcCollection::new(c, arcs).unwrap();
                assert_eq!(
                    tc.is_m_rigid(),
                    tc.is_m_rigid_via_ext(),
                    "({n},{m}) mask {mask}"
                );
            }
        }
        // All pairs plus seeded random subsets for the rest.
        for (n, m) in [(3, 2), (4, 1), (4, 2)] {
            let c = ctx(n, m);
            let all = c.all_diagonals();
            for (i, &x) in all.iter().enumerate() {
                for &y in &all[i..] {
                    let tc = ArcCollection::new(c, [x, y]).unwrap();
                    assert_eq!(tc.is_m_rigid(), tc.is_m_rigid_via_ext(), "pair {x} {y}");
                }
            }
            let mut rng = Rng(0x9e3779b97f4a7c15 ^ ((n as u64) << 8 | m as u64));
            for round in 0..10_000 {
                let mask = rng.next() & ((1u64 << all.len()) - 1);
                let arcs = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x);
                let tc = ArcCollection::new(c, arcs).unwrap();
                assert_eq!(
                    tc.is_m_rigid(),
                    tc.is_m_rigid_via_ext(),
                    "({n},{m}) round {round} mask {mask:b}"
                );
            }
        }
    });
}

#[test]
fn criterion_04_classification_bijection() {
    criterion(4, "classification bijection", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            let mut left: Vec<Vec<Diagonal>> =
                enumerated(&c).iter().map(|tc| tc.arcs().to_vec()).collect();
            left.sort();
            let mut right: Vec<Vec<Diagonal>> = Vec::new();
            for arcs in all_noncrossing_subsets(&c) {
                let tc = ArcCollection::new(c, arcs).unwrap();
                if tc.is_connected() && tc.satisfies_theorem().unwrap() {
                    right.push(tc.arcs().to_vec());
                }
            }
            right.sort();
            assert_eq!(left, right, "bijection fails for ({n},{m})");
            if (n, m) == (3, 1) {
                assert_eq!(left.len(), 6);
                assert!(left.iter().all(|arcs| arcs.len() == 3));
            }
        }
        // Small-polygon cross-check: the clique search agrees with the
        // brute-force subset filter through the extension oracle.
        for (n, m) in [(2, 1), (3, 1)] {
            let c = ctx(n, m);
            let all = c.all_diagonals();
            let mut brute: Vec<Vec<Diagonal>> = Vec::new();
            for mask in 0u32..1 << all.len() {
                let arcs: Vec<Diagonal> = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &x)| x)
                    .collect();
                let tc = ArcCollection::new(c, arcs).unwrap();
                if tc.is_m_rigid_via_ext() && tc.is_maximal().unwrap() && tc.is_connected() {
                    brute.push(tc.arcs().to_vec());
                }
            }
            brute.sort();
            let mut left: Vec<Vec<Diagonal>> =
                enumerated(&c).iter().map(|tc| tc.arcs().to_vec()).collect();
            left.sort();
            assert_eq!(left, brute);
        }
    });
}

#[test]
fn criterion_05_flanks_cycles_tiles() {
    criterion(5, "isolated flanks, cycle length, tile census", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            for tc in enumerated(&c) {
                let non_isolated = tc.non_isolated_vertices();
                for &arc in tc.arcs() {
                    if !c.is_short(arc) {
                        continue;
                    }
                    let (i, j) = arc.endpoints();
                    let v = if c.arc_count(i, j).unwrap() == m + 1 {
                        i
                    } else {
                        j
                    };
                    for off in 1..=m as i64 {
                        assert!(!non_isolated.contains(&c.reduce(v as i64 + m as i64 + off)));
                        assert!(!non_isolated.contains(&c.reduce(v as i64 - off)));
                    }
                }
                for cycle in tc.simple_cycles() {
                    assert_eq!(cycle.len(), m + 3);
                }
                for tile in tc.extract_tiles().unwrap() {
                    assert!(
                        tilings_core::rigid::classify_tile(&c, &tile).is_some(),
                        "unclassified tile in ({n},{m})"
                    );
                }
            }
        }
        // Closed tiles only appear past the grid for m = 1; exercise one.
        let c = ctx(6, 1);
        let mut cycles_seen = 0;
        for tc in enumerate_connected_maximal_with_limit(&c, 64).unwrap() {
            for cycle in tc.simple_cycles() {
                cycles_seen += 1;
                assert_eq!(cycle.len(), 4);
            }
        }
        assert!(cycles_seen > 0);
    });
}

#[test]
fn criterion_06_end_algebra_recognition() {
    criterion(6, "endomorphism algebra recognition", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            for tc in enumerated(&c) {
                let q = tiling_algebra(&tc).unwrap();
                assert!(is_gentle(&q));
                assert!(cycles_oriented_relation_full(&q));
                assert!(
                    is_end_algebra(&q, m).unwrap(),
                    "({n},{m}) object {:?} rejected",
                    tc.arcs()
                );
            }
        }
        let path = Quiver::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![(0, 1), (1, 2)],
            [],
        )
        .unwrap();
        assert!(!is_end_algebra(&path, 1).unwrap());
    });
}

#[test]
fn criterion_07_round_trip() {
    criterion(7, "reconstruction round trip", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            for tc in enumerated(&c) {
                let q = tiling_algebra(&tc).unwrap();
                let rebuilt = tiling_from_gentle(&q).unwrap();
                let q2 = tiling_algebra(&rebuilt).unwrap();
                assert!(
                    quiver_isomorphic(&q, &q2),
                    "round trip failed for ({n},{m}) {:?}",
                    tc.arcs()
                );
            }
        }
        for tiling in generated_tilings(50, 0x5eed) {
            let q = tiling_algebra(&tiling).unwrap();
            let rebuilt = tiling_from_gentle(&q).unwrap();
            let q2 = tiling_algebra(&rebuilt).unwrap();
            assert!(quiver_isomorphic(&q, &q2));
        }
    });
}

#[test]
fn criterion_08_ag_invariant() {
    criterion(8, "thread-walk invariant", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            for tc in enumerated(&c) {
                let q = tiling_algebra(&tc).unwrap();
                let via_quiver = ag_invariant(&q).unwrap();
                let via_tiles = ag_from_tiles(&tc).unwrap();
                if tc.len() >= 2 {
                    assert_eq!(via_quiver, via_tiles, "({n},{m}) {:?}", tc.arcs());
                } else {
                    // Single-arc degeneracy: both marked points share the
                    // one trivial thread, so the tile census reads (2,0)
                    // where the walk gives (1,0).
                    assert_eq!(via_quiver.pairs(), &[(1, 0)]);
                    assert_eq!(via_tiles.pairs(), &[(2, 0)]);
                }
                let positive: Vec<_> = via_quiver.pairs().iter().filter(|p| p.0 > 0).collect();
                assert_eq!(positive.len(), 1, "single positive orbit");
                let threads = permitted_threads(&q).unwrap();
                assert_eq!(via_quiver.sum_a(), threads.len());
                assert_eq!(via_quiver.sum_b(), q.arrow_count());
                for start in 0..threads.len() {
                    assert_eq!(ag_invariant_starting_at(&q, start).unwrap(), via_quiver);
                }
            }
        }
    });
}

#[test]
fn criterion_09_gorenstein() {
    criterion(9, "gorenstein dimension", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            for tc in enumerated(&c) {
                let q = tiling_algebra(&tc).unwrap();
                let got = gorenstein_dimension(&q).unwrap();
                if n == 2 {
                    assert_eq!(q.vertex_count(), 1);
                    assert_eq!(got, GorensteinResult::Exact(0));
                    continue;
                }
                let max_open = tc
                    .extract_tiles()
                    .unwrap()
                    .iter()
                    .filter(|t| !t.is_closed())
                    .map(|t| t.length())
                    .max()
                    .unwrap();
                assert!(max_open >= 2, "({n},{m}) lacks a wide open tile");
                assert_eq!(got, GorensteinResult::Exact(max_open - 1));
                assert_eq!(gorenstein_from_tiles(&tc).unwrap(), got);
                let GorensteinResult::Exact(dim) = got else {
                    panic!("expected exact dimension");
                };
                assert!((1..=m + 2).contains(&dim));
            }
        }
    });
}

#[test]
fn criterion_10_cluster_profile() {
    criterion(10, "cluster-tilted profile", || {
        for (n, m) in GRID {
            let c = ctx(n, m);
            for tc in enumerated(&c) {
                let profile = cluster_profile(&tc).unwrap();
                assert_eq!(
                    (profile.x() - 4).rem_euclid(m as i64 + 1),
                    0,
                    "integrality for ({n},{m})"
                );
                match profile.outcome() {
                    ClusterOutcome::ClusterTilted { rank, angulation } => {
                        assert_eq!(profile.count(m + 3), 0);
                        assert_eq!(
                            angulation.point_count(),
                            (m + 1) * (rank + 1) + 2,
                            "angulation size for ({n},{m})"
                        );
                        for shape in tile_shapes(angulation).unwrap() {
                            assert_eq!(shape.sides(), m + 3);
                        }
                    }
                    ClusterOutcome::CutFrom { cuts, .. } => {
                        assert_eq!(profile.count(m + 3), cuts.len());
                        for (from, to) in cuts {
                            assert!(c.is_short(*from) && c.is_short(*to));
                        }
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_11_thread_structure() {
    criterion(11, "thread structure", || {
        let mut tilings: Vec<(AbstractTiling, &str)> = Vec::new();
        for (n, m) in GRID {
            let c = ctx(n, m);
            for tc in enumerated(&c) {
                tilings.push((
                    AbstractTiling::new(tc.point_count(), tc.arc_pairs()).unwrap(),
                    "enumerated",
                ));
                let q = tiling_algebra(&tc).unwrap();
                tilings.push((tiling_from_gentle(&q).unwrap(), "reconstructed"));
            }
        }
        for tiling in generated_tilings(25, 0x7167) {
            tilings.push((tiling, "generated"));
        }

        for (tiling, origin) in &tilings {
            let q = tiling_algebra(tiling).unwrap();
            let fset = choose_thread_set(&q).unwrap();
            for v in 0..q.vertex_count() {
                let expected = if q.vertex_count() == 1 { 1 } else { 2 };
                assert_eq!(fset.incident_count(&q, v), expected, "{origin}: vertex {v}");
            }
            if tiling.arcs().len() < 2 {
                continue;
            }
            // Permitted threads match the fans at non-isolated points.
            let threads = permitted_threads(&q).unwrap();
            let fan_map = fans(tiling).unwrap();
            assert_eq!(threads.len(), fan_map.len(), "{origin}: thread count");
            let mut seen = vec![false; threads.len()];
            for (point, fan) in &fan_map {
                let expected = fan_thread(&q, fan);
                let idx = threads
                    .iter()
                    .position(|t| t.body == expected.body)
                    .unwrap_or_else(|| {
                        panic!("{origin}: fan at point {point} is not a permitted thread")
                    });
                assert!(!seen[idx], "{origin}: fan thread repeated");
                seen[idx] = true;
            }
            assert!(seen.into_iter().all(|s| s));
        }
    });
}

/// The permitted thread a fan spells out: its arcs in clockwise order,
/// joined by the arrows between consecutive members.
fn fan_thread(q: &Quiver, fan: &[usize]) -> Thread {
    if fan.len() == 1 {
        return Thread {
            kind: ThreadKind::Permitted,
            body: ThreadBody::Trivial(fan[0]),
            closed: false,
        };
    }
    let arrows: Vec<usize> = fan
        .windows(2)
        .map(|w| {
            (0..q.arrow_count())
                .find(|&id| q.arrow(id).source == w[0] && q.arrow(id).target == w[1])
                .expect("consecutive fan arcs are joined by an arrow")
        })
        .collect();
    Thread {
        kind: ThreadKind::Permitted,
        body: ThreadBody::Arrows(arrows),
        closed: false,
    }
}
