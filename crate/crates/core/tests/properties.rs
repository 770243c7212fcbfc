//! Property checks for the circular arithmetic and the group actions.

use proptest::prelude::*;

use tilings_core::orbit::{ext_nonzero, shift, tau};
use tilings_core::polygon::{Diagonal, PolygonContext};

fn arb_ctx() -> impl Strategy<Value = PolygonContext> {
    (2usize..=6, 1usize..=3).prop_map(|(n, m)| PolygonContext::new(n, m).unwrap())
}

fn ctx_with_vertices() -> impl Strategy<Value = (PolygonContext, usize, usize)> {
    arb_ctx().prop_flat_map(|c| {
        let n = c.vertex_count();
        (Just(c), 1..=n, 1..=n)
    })
}

fn ctx_with_diagonals() -> impl Strategy<Value = (PolygonContext, Diagonal, Diagonal)> {
    arb_ctx().prop_flat_map(|c| {
        let all = c.all_diagonals();
        let len = all.len();
        (Just(c), 0..len, 0..len).prop_map(move |(c, i, j)| {
            let all = c.all_diagonals();
            (c, all[i], all[j])
        })
    })
}

proptest! {
    #[test]
    fn arc_count_complement((c, i, j) in ctx_with_vertices()) {
        prop_assert_eq!(c.arc_count(i, i).unwrap(), 1);
        if i != j {
            let sum = c.arc_count(i, j).unwrap() + c.arc_count(j, i).unwrap();
            prop_assert_eq!(sum, c.vertex_count() + 2);
        }
    }

    #[test]
    fn diagonal_gap_characterization((c, i, j) in ctx_with_vertices()) {
        if i != j {
            let m = c.degree();
            let gap = c.arc_count(i, j).unwrap() - 1;
            prop_assert_eq!(c.is_diagonal(i, j).unwrap(), gap % (m + 1) == m);
        }
    }

    #[test]
    fn crossing_is_symmetric_and_irreflexive((c, x, y) in ctx_with_diagonals()) {
        prop_assert_eq!(c.crosses(x, y), c.crosses(y, x));
        prop_assert!(!c.crosses(x, x));
    }

    #[test]
    fn neighbour_relation_is_symmetric((c, x, y) in ctx_with_diagonals()) {
        for k in 1..=c.degree() {
            let fwd = c.k_neighbours(x, y, k).unwrap();
            prop_assert_eq!(fwd, c.k_neighbours(y, x, k).unwrap());
            if fwd {
                prop_assert!(!x.shares_endpoint(y));
                prop_assert!(!c.crosses(x, y));
            }
        }
    }

    #[test]
    fn shift_inverts_and_translates((c, x, _) in ctx_with_diagonals(), k in -7i64..=7) {
        let there = shift(&c, x, k);
        let (a, b) = there.endpoints();
        prop_assert!(c.is_diagonal(a, b).unwrap());
        prop_assert_eq!(shift(&c, there, -k), x);
        prop_assert_eq!(tau(&c, x, 1), shift(&c, x, -(c.degree() as i64 + 1)));
    }

    #[test]
    fn shifted_diagonal_has_nonzero_ext((c, x, _) in ctx_with_diagonals()) {
        for k in 1..=c.degree() {
            prop_assert!(ext_nonzero(&c, shift(&c, x, k as i64), x, k).unwrap());
            prop_assert!(!ext_nonzero(&c, x, x, k).unwrap());
        }
    }

    #[test]
    fn clockwise_order_is_rotation_invariant((c, i, j) in ctx_with_vertices()) {
        let n = c.vertex_count();
        let k = (i + j) % n + 1;
        let vs = [i, j, k];
        if i != j && j != k && k != i {
            let base = c.clockwise_order(&vs).unwrap();
            let rotated = [j, k, i];
            prop_assert_eq!(c.clockwise_order(&rotated).unwrap(), base);
        }
    }
}
