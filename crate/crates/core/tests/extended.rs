//! Coverage beyond the standard grid: degree three, and the first polygon
//! whose maximal collections contain closed tiles.

use tilings_core::invariants::{
    ag_from_tiles, ag_invariant, gorenstein_dimension, gorenstein_from_tiles, is_end_algebra,
    GorensteinResult,
};
use tilings_core::polygon::{Diagonal, PolygonContext};
use tilings_core::quiver::{choose_thread_set, permitted_threads, tiling_algebra};
use tilings_core::reconstruct::{quiver_isomorphic, tiling_from_gentle};
use tilings_core::rigid::{enumerate_connected_maximal_with_limit, ArcCollection};

fn ctx(n: usize, m: usize) -> PolygonContext {
    PolygonContext::new(n, m).unwrap()
}

fn noncrossing_subsets(c: &PolygonContext) -> Vec<Vec<Diagonal>> {
    let all = c.all_diagonals();
    let t = all.len();
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
    fn rec(
        from: usize,
        chosen: &mut Vec<usize>,
        allowed: u32,
        compat: &[u32],
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(chosen.clone());
        for j in from..compat.len() {
            if allowed >> j & 1 == 1 {
                chosen.push(j);
                rec(j + 1, chosen, allowed & compat[j], compat, out);
                chosen.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(0, &mut Vec::new(), (1u32 << t) - 1, &compat, &mut raw);
    raw.into_iter()
        .map(|s| s.into_iter().map(|i| all[i]).collect())
        .collect()
}

#[test]
fn degree_three_bijection() {
    for (n, m) in [(2, 3), (3, 3)] {
        let c = ctx(n, m);
        let mut left: Vec<Vec<Diagonal>> = enumerate_connected_maximal_with_limit(&c, 32)
            .unwrap()
            .iter()
            .map(|tc| tc.arcs().to_vec())
            .collect();
        left.sort();
        let mut right = Vec::new();
        for arcs in noncrossing_subsets(&c) {
            let tc = ArcCollection::new(c, arcs).unwrap();
            if tc.is_connected() && tc.satisfies_theorem().unwrap() {
                right.push(tc.arcs().to_vec());
            }
        }
        right.sort();
        assert_eq!(left, right, "({n},{m})");
        assert!(!left.is_empty());
    }
}

#[test]
fn degree_three_rigidity_oracle() {
    let c = ctx(3, 3);
    let all = c.all_diagonals();
    for (i, &x) in all.iter().enumerate() {
        for &y in &all[i..] {
            let tc = ArcCollection::new(c, [x, y]).unwrap();
            assert_eq!(tc.is_m_rigid(), tc.is_m_rigid_via_ext(), "{x} {y}");
        }
    }
    let mut state = 0x2545f4914f6cdd1du64;
    for _ in 0..2000 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let mask = state & ((1u64 << all.len()) - 1);
        let arcs = all
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &x)| x);
        let tc = ArcCollection::new(c, arcs).unwrap();
        assert_eq!(tc.is_m_rigid(), tc.is_m_rigid_via_ext(), "mask {mask:b}");
    }
}

#[test]
fn characterization_matches_direct_checks_on_random_samples() {
    // On connected non-crossing collections the characterization verdict
    // must coincide with rigid-and-maximal, whatever the polygon.
    for (n, m) in [(5usize, 2usize), (7, 1), (4, 3)] {
        let c = ctx(n, m);
        let all = c.all_diagonals();
        let mut state = 0xabcdefu64 ^ ((n as u64) << 16 | m as u64);
        let mut step = || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        let mut positives = 0usize;
        for _ in 0..2500 {
            let mut arcs: Vec<Diagonal> = Vec::new();
            for _ in 0..1 + step() % 12 {
                let d = all[(step() % all.len() as u64) as usize];
                if !arcs.contains(&d) && arcs.iter().all(|&x| !c.crosses(x, d)) {
                    arcs.push(d);
                }
            }
            let tc = ArcCollection::new(c, arcs).unwrap();
            if !tc.is_connected() {
                continue;
            }
            let theorem = tc.satisfies_theorem().unwrap();
            let direct = tc.is_m_rigid() && tc.is_maximal().unwrap_or(false);
            assert_eq!(theorem, direct, "({n},{m}) {:?}", tc.arcs());
            positives += usize::from(theorem);
        }
        assert!(positives > 0, "({n},{m}) sampled no positives");
    }
}

#[test]
fn pipeline_beyond_the_grid() {
    for (n, m) in [(7usize, 1usize), (5, 2), (4, 3)] {
        let c = ctx(n, m);
        let objects = enumerate_connected_maximal_with_limit(&c, 64).unwrap();
        assert!(!objects.is_empty());
        for tc in &objects {
            assert!(tc.satisfies_theorem().unwrap());
            let q = tiling_algebra(tc).unwrap();
            assert!(is_end_algebra(&q, m).unwrap(), "({n},{m}) {:?}", tc.arcs());
            assert_eq!(ag_invariant(&q).unwrap(), ag_from_tiles(tc).unwrap());
            let rebuilt = tiling_from_gentle(&q).unwrap();
            assert!(quiver_isomorphic(&tiling_algebra(&rebuilt).unwrap(), &q));
        }
    }
}

#[test]
fn closed_tile_regime() {
    // Some maximal collections of the 12-gon contain a closed four-arc
    // tile; run the whole pipeline over all of them.
    let c = ctx(6, 1);
    let objects = enumerate_connected_maximal_with_limit(&c, 64).unwrap();
    assert!(!objects.is_empty());
    let mut with_cycles = 0usize;
    for tc in &objects {
        let q = tiling_algebra(tc).unwrap();
        assert!(is_end_algebra(&q, 1).unwrap());

        let rebuilt = tiling_from_gentle(&q).unwrap();
        assert!(quiver_isomorphic(&tiling_algebra(&rebuilt).unwrap(), &q));

        let via_quiver = ag_invariant(&q).unwrap();
        assert_eq!(via_quiver, ag_from_tiles(tc).unwrap());
        assert_eq!(via_quiver.sum_a(), permitted_threads(&q).unwrap().len());
        assert_eq!(via_quiver.sum_b(), q.arrow_count());

        assert_eq!(
            gorenstein_dimension(&q).unwrap(),
            gorenstein_from_tiles(tc).unwrap()
        );
        assert!(matches!(
            gorenstein_dimension(&q).unwrap(),
            GorensteinResult::Exact(1..=3)
        ));

        let fset = choose_thread_set(&q).unwrap();
        for v in 0..q.vertex_count() {
            assert_eq!(fset.incident_count(&q, v), 2);
        }

        if !tc.simple_cycles().is_empty() {
            with_cycles += 1;
            assert_eq!(via_quiver.pairs().iter().filter(|p| p.0 == 0).count(), 1);
        }
    }
    assert!(with_cycles > 0, "expected closed tiles at (6,1)");
}
