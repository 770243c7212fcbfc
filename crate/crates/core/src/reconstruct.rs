//! Rebuilding a marked-disc tiling from a gentle quiver whose cycles are
//! oriented and relation-full, plus quiver isomorphism for round trips.
//!
//! Each member of the chosen forbidden-thread family becomes one tile: the
//! thread's vertices are the tile's bounding arcs in anticlockwise order.
//! The first thread seeds the disc; every further tile is glued onto the
//! free side of an already-drawn arc shared with its thread.

use std::collections::{BTreeMap, VecDeque};

use crate::disc::{pairs_cross, Disc};
use crate::error::{Error, Result};
use crate::quiver::{
    choose_thread_set, cycles_oriented_relation_full, is_gentle, MarkedTiling, Quiver, Thread,
};

/// A plain marked disc: `point_count` points labelled clockwise, arcs as
/// normalized non-crossing pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractTiling {
    point_count: usize,
    arcs: Vec<(usize, usize)>,
}

impl AbstractTiling {
    pub fn new(point_count: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut norm = Vec::with_capacity(arcs.len());
        for (i, j) in arcs {
            for v in [i, j] {
                if v < 1 || v > point_count {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: point_count,
                    });
                }
            }
            if i == j {
                return Err(Error::DuplicateVertex(i));
            }
            norm.push((i.min(j), i.max(j)));
        }
        norm.sort_unstable();
        norm.dedup();
        for (i, &x) in norm.iter().enumerate() {
            for &y in &norm[i + 1..] {
                if pairs_cross(point_count, x, y) {
                    return Err(Error::CrossingArcs(x.0, x.1, y.0, y.1));
                }
            }
        }
        Ok(Self {
            point_count,
            arcs: norm,
        })
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

impl MarkedTiling for AbstractTiling {
    fn point_count(&self) -> usize {
        self.point_count
    }

    fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.clone()
    }
}

/// The quiver-vertex sequence a thread visits.
fn thread_vertices(q: &Quiver, t: &Thread) -> Vec<usize> {
    if t.is_trivial() {
        return vec![t.source(q)];
    }
    let arrows = t.arrows();
    let mut verts: Vec<usize> = vec![q.arrow(arrows[0]).source];
    for &a in arrows {
        verts.push(q.arrow(a).target);
    }
    if t.closed {
        verts.pop(); // the wrap vertex equals the first
    }
    verts
}

struct Builder {
    circle: Vec<usize>,
    next_point: usize,
}

impl Builder {
    fn new() -> Self {
        Builder {
            circle: Vec::new(),
            next_point: 0,
        }
    }

    fn fresh(&mut self) -> usize {
        let p = self.next_point;
        self.next_point += 1;
        p
    }

    fn position(&self, point: usize) -> usize {
        self.circle
            .iter()
            .position(|&p| p == point)
            .expect("point on circle")
    }
}

/// Runs the reconstruction. The output tiling's algebra is isomorphic to
/// the input; marked points are relabelled clockwise from the first point
/// drawn, so the output is deterministic.
pub fn tiling_from_gentle(q: &Quiver) -> Result<AbstractTiling> {
    reconstruct_mapped(q).map(|(t, _)| t)
}

/// Reconstruction plus the arc drawn for each quiver vertex.
fn reconstruct_mapped(q: &Quiver) -> Result<(AbstractTiling, Vec<(usize, usize)>)> {
    if q.vertex_count() == 0 {
        return Err(Error::InvalidQuiver("empty quiver".into()));
    }
    if !is_gentle(q) {
        return Err(Error::NotGentle);
    }
    if !cycles_oriented_relation_full(q) {
        return Err(Error::CycleNotRelationFull);
    }
    if !q.is_connected() {
        return Err(Error::QuiverNotConnected);
    }

    let fset = choose_thread_set(q)?;
    let threads = fset.threads();
    let mut processed = vec![false; threads.len()];
    let mut arc_of: Vec<Option<(usize, usize)>> = vec![None; q.vertex_count()];
    // Free sides awaiting a tile: (quiver vertex, traversal (x, y) of the
    // creating tile, so the empty gap runs clockwise from x to y).
    let mut pending: VecDeque<(usize, (usize, usize))> = VecDeque::new();
    let mut builder = Builder::new();

    // Seed with the canonical first thread.
    let seed = &threads[0];
    processed[0] = true;
    let verts = thread_vertices(q, seed);
    if seed.is_trivial() {
        let p0 = builder.fresh();
        let p1 = builder.fresh();
        builder.circle = vec![p0, p1];
        arc_of[verts[0]] = Some((p0, p1));
        pending.push_back((verts[0], (p0, p1)));
    } else if seed.closed {
        let r = verts.len();
        let points: Vec<usize> = (0..r).map(|_| builder.fresh()).collect();
        builder.circle = points.clone();
        for i in 0..r {
            let v = verts[(r - i) % r];
            let ends = (points[i], points[(i + 1) % r]);
            arc_of[v] = Some(ends);
            pending.push_back((v, ends));
        }
    } else {
        let k = seed.len();
        let points: Vec<usize> = (0..=k + 1).map(|_| builder.fresh()).collect();
        builder.circle = points.clone();
        for i in 0..=k {
            let v = verts[k - i];
            let ends = (points[i], points[i + 1]);
            arc_of[v] = Some(ends);
            pending.push_back((v, ends));
        }
    }

    while let Some((v, (x, y))) = pending.pop_front() {
        let incident = fset.incident_indices(q, v);
        let next = incident.iter().copied().find(|&i| !processed[i]);
        let Some(ti) = next else {
            // Both threads at v already placed (the one-vertex algebra):
            // the free side simply stays a region of the final tiling.
            continue;
        };
        processed[ti] = true;
        let thread = &threads[ti];
        if thread.is_trivial() {
            continue;
        }
        let verts = thread_vertices(q, thread);
        let j = verts
            .iter()
            .position(|&u| u == v)
            .expect("thread passes through its pending vertex");

        // The new tile traverses the shared arc from y to x; its points sit
        // clockwise inside the free gap from x to y.
        let pos_x = builder.position(x);
        debug_assert_eq!(
            builder.circle[(pos_x + 1) % builder.circle.len()],
            y,
            "free gap is empty"
        );

        if thread.closed {
            let r = verts.len();
            let mut points = vec![0usize; r];
            points[0] = y;
            points[1] = x;
            let fresh: Vec<usize> = (2..r).map(|_| builder.fresh()).collect();
            points[2..].copy_from_slice(&fresh);
            for (offset, &p) in fresh.iter().enumerate() {
                builder.circle.insert(pos_x + 1 + offset, p);
            }
            for s in 1..r {
                let u = verts[(j + r - s) % r];
                let ends = (points[s], points[(s + 1) % r]);
                debug_assert!(arc_of[u].is_none());
                arc_of[u] = Some(ends);
                pending.push_back((u, ends));
            }
        } else {
            let l = thread.len();
            let mut points = vec![0usize; l + 2];
            points[l - j] = y;
            points[l - j + 1] = x;
            // Clockwise inside the gap: the points after x, the reserved
            // open-boundary gap, then the points before y.
            let mut offset = 0;
            for p in points.iter_mut().skip(l - j + 2) {
                *p = builder.fresh();
                builder.circle.insert(pos_x + 1 + offset, *p);
                offset += 1;
            }
            for p in points.iter_mut().take(l - j) {
                *p = builder.fresh();
                builder.circle.insert(pos_x + 1 + offset, *p);
                offset += 1;
            }
            for i in 0..=l {
                if i == l - j {
                    continue;
                }
                let u = verts[l - i];
                let ends = (points[i], points[i + 1]);
                debug_assert!(arc_of[u].is_none());
                arc_of[u] = Some(ends);
                pending.push_back((u, ends));
            }
        }
    }

    if processed.iter().any(|&p| !p) {
        return Err(Error::InvalidQuiver(
            "reconstruction did not reach every thread".into(),
        ));
    }

    // Relabel 1..count clockwise, anchored at the first point drawn.
    let anchor = builder.position(0);
    let count = builder.circle.len();
    let mut label = vec![0usize; builder.next_point];
    for i in 0..count {
        label[builder.circle[(anchor + i) % count]] = i + 1;
    }
    let arcs: Vec<(usize, usize)> = arc_of
        .into_iter()
        .map(|ends| {
            let (a, b) = ends.expect("connected quiver places every arc");
            let (a, b) = (label[a], label[b]);
            (a.min(b), a.max(b))
        })
        .collect();
    Ok((AbstractTiling::new(count, arcs.clone())?, arcs))
}

/// Reconstruction followed by the isolated-vertex completion for degree
/// `m`: each open tile of arc count `l` receives the isolated marked
/// points its class prescribes (`m+l-2` for `2 <= l <= m+2`, `m` for
/// `l = m+3`, and for `l = 1` either `m-1` or `2m` depending on whether
/// the bounding arc has valency one or two).
pub fn tiling_from_gentle_with_isolated(q: &Quiver, m: usize) -> Result<AbstractTiling> {
    if m < 1 {
        return Err(Error::DegreeTooSmall(m));
    }
    let (raw, arc_by_vertex) = reconstruct_mapped(q)?;
    let vertex_of_pair: BTreeMap<(usize, usize), usize> = arc_by_vertex
        .iter()
        .enumerate()
        .map(|(v, &pair)| (pair, v))
        .collect();
    let disc = Disc::new(raw.point_count(), &raw.arc_pairs())?;
    let faces = disc.interior_faces();
    let mut insert_after: BTreeMap<usize, usize> = BTreeMap::new();
    let mut lone_sides = 0usize;
    for face in &faces {
        if face.is_closed() {
            continue;
        }
        debug_assert_eq!(face.stretches.len(), 1);
        let stretch = &face.stretches[0];
        debug_assert_eq!(stretch.edges, 1);
        let l = face.arcs.len();
        let count = match l {
            1 => {
                match q.valency(vertex_of_pair[&disc.arcs()[face.arcs[0]]]) {
                    0 => {
                        // The one-vertex algebra: one side narrow, one wide.
                        lone_sides += 1;
                        if lone_sides == 1 {
                            m - 1
                        } else {
                            2 * m
                        }
                    }
                    1 => m - 1,
                    _ => 2 * m,
                }
            }
            l if l <= m + 2 => m + l - 2,
            l if l == m + 3 => m,
            _ => return Err(Error::UnclassifiableTile),
        };
        *insert_after.entry(stretch.start).or_insert(0) += count;
    }

    let n = raw.point_count();
    let mut new_label = vec![0usize; n + 1];
    let mut next = 0usize;
    for (p, label) in new_label.iter_mut().enumerate().skip(1) {
        next += 1;
        *label = next;
        next += insert_after.get(&p).copied().unwrap_or(0);
    }
    let arcs = raw
        .arcs()
        .iter()
        .map(|&(a, b)| (new_label[a], new_label[b]))
        .collect();
    AbstractTiling::new(next, arcs)
}

/// Vertex-and-arrow bijection preserving incidence and the relation set,
/// found by backtracking with degree and relation-signature pruning.
pub fn quiver_isomorphic(q1: &Quiver, q2: &Quiver) -> bool {
    let n = q1.vertex_count();
    if n != q2.vertex_count()
        || q1.arrow_count() != q2.arrow_count()
        || q1.relations().len() != q2.relations().len()
    {
        return false;
    }
    if n == 0 {
        return true;
    }

    fn signature(q: &Quiver, v: usize) -> (usize, usize, usize) {
        let through = q
            .relations()
            .iter()
            .filter(|&&(a, _)| q.arrow(a).target == v)
            .count();
        (q.out_arrows(v).len(), q.in_arrows(v).len(), through)
    }

    let sig1: Vec<_> = (0..n).map(|v| signature(q1, v)).collect();
    let sig2: Vec<_> = (0..n).map(|v| signature(q2, v)).collect();
    {
        let mut s1 = sig1.clone();
        let mut s2 = sig2.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        if s1 != s2 {
            return false;
        }
    }

    fn grouped(q: &Quiver) -> BTreeMap<(usize, usize), Vec<usize>> {
        let mut m: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (id, a) in q.arrows().iter().enumerate() {
            m.entry((a.source, a.target)).or_default().push(id);
        }
        m
    }
    let g1 = grouped(q1);
    let g2 = grouped(q2);

    // Visit order: breadth-first so each vertex is constrained by an
    // already-mapped neighbour.
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for a in q1.arrows() {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
    }

    fn relations_match(
        q1: &Quiver,
        q2: &Quiver,
        g1: &BTreeMap<(usize, usize), Vec<usize>>,
        g2: &BTreeMap<(usize, usize), Vec<usize>>,
        map: &[usize],
    ) -> bool {
        // Arrow bijection per (source, target) group; groups of parallel
        // arrows would need a permutation search, but never occur here.
        let mut arrow_map = vec![usize::MAX; q1.arrow_count()];
        for (&(s, t), ids) in g1 {
            let Some(ids2) = g2.get(&(map[s], map[t])) else {
                return false;
            };
            if ids.len() != ids2.len() {
                return false;
            }
            for (&a, &b) in ids.iter().zip(ids2) {
                arrow_map[a] = b;
            }
        }
        q1.relations()
            .iter()
            .all(|&(a, b)| q2.relations().contains(&(arrow_map[a], arrow_map[b])))
    }

    struct Search<'a> {
        q1: &'a Quiver,
        q2: &'a Quiver,
        g1: &'a BTreeMap<(usize, usize), Vec<usize>>,
        g2: &'a BTreeMap<(usize, usize), Vec<usize>>,
        sig1: &'a [(usize, usize, usize)],
        sig2: &'a [(usize, usize, usize)],
        order: &'a [usize],
    }

    impl Search<'_> {
        fn backtrack(&self, pos: usize, map: &mut [usize], used: &mut [bool]) -> bool {
            if pos == self.order.len() {
                return relations_match(self.q1, self.q2, self.g1, self.g2, map);
            }
            let v = self.order[pos];
            'cand: for c in 0..self.q2.vertex_count() {
                if used[c] || self.sig1[v] != self.sig2[c] {
                    continue;
                }
                for &w in &self.order[..pos] {
                    let lw = map[w];
                    let fwd1 = self.g1.get(&(v, w)).map_or(0, Vec::len);
                    let fwd2 = self.g2.get(&(c, lw)).map_or(0, Vec::len);
                    let bwd1 = self.g1.get(&(w, v)).map_or(0, Vec::len);
                    let bwd2 = self.g2.get(&(lw, c)).map_or(0, Vec::len);
                    if fwd1 != fwd2 || bwd1 != bwd2 {
                        continue 'cand;
                    }
                }
                map[v] = c;
                used[c] = true;
                if self.backtrack(pos + 1, map, used) {
                    return true;
                }
                used[c] = false;
            }
            false
        }
    }

    let search = Search {
        q1,
        q2,
        g1: &g1,
        g2: &g2,
        sig1: &sig1,
        sig2: &sig2,
        order: &order,
    };
    let mut map = vec![0usize; n];
    let mut used = vec![false; n];
    search.backtrack(0, &mut map, &mut used)
}
