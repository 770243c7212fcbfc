//! Quivers with length-two zero relations: gentleness, permitted and
//! forbidden threads, and the quiver-with-relations carried by a tiling
//! (one vertex per arc, arrows between arcs meeting clockwise inside a
//! tile, relations between consecutive arrows of the same tile).

use std::collections::{BTreeMap, BTreeSet};

use crate::disc::Disc;
use crate::error::{Error, Result};

/// Anything that presents as marked points on a circle plus non-crossing
/// arcs between them.
pub trait MarkedTiling {
    fn point_count(&self) -> usize;
    fn arc_pairs(&self) -> Vec<(usize, usize)>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

/// A quiver with an ideal generated by length-two paths. Loops and directed
/// two-cycles are rejected at construction; every relation pair must be
/// composable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    labels: Vec<String>,
    arrows: Vec<Arrow>,
    relations: BTreeSet<(usize, usize)>,
}

impl Quiver {
    pub fn new(
        labels: Vec<String>,
        arrows: Vec<(usize, usize)>,
        relations: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let vc = labels.len();
        let arrow_set: BTreeSet<(usize, usize)> = arrows.iter().copied().collect();
        for &(s, t) in &arrows {
            if s >= vc || t >= vc {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {s} -> {t} out of vertex range"
                )));
            }
            if s == t {
                return Err(Error::InvalidQuiver(format!("loop at vertex {s}")));
            }
            if arrow_set.contains(&(t, s)) {
                return Err(Error::InvalidQuiver(format!(
                    "two-cycle between vertices {s} and {t}"
                )));
            }
        }
        let arrows: Vec<Arrow> = arrows
            .into_iter()
            .map(|(source, target)| Arrow { source, target })
            .collect();
        let mut rel = BTreeSet::new();
        for (a, b) in relations {
            if a >= arrows.len() || b >= arrows.len() {
                return Err(Error::InvalidQuiver(format!(
                    "relation ({a}, {b}) out of arrow range"
                )));
            }
            if arrows[a].target != arrows[b].source {
                return Err(Error::InvalidQuiver(format!(
                    "relation ({a}, {b}) is not composable"
                )));
            }
            rel.insert((a, b));
        }
        Ok(Self {
            labels,
            arrows,
            relations: rel,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, id: usize) -> Arrow {
        self.arrows[id]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    pub fn has_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn out_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&id| self.arrows[id].source == v)
            .collect()
    }

    pub fn in_arrows(&self, v: usize) -> Vec<usize> {
        (0..self.arrows.len())
            .filter(|&id| self.arrows[id].target == v)
            .collect()
    }

    pub fn valency(&self, v: usize) -> usize {
        self.arrows
            .iter()
            .map(|a| usize::from(a.source == v) + usize::from(a.target == v))
            .sum()
    }

    pub fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for a in &self.arrows {
                for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The unique relation successor of an arrow, when one exists.
    pub(crate) fn relation_successor(&self, a: usize) -> Option<usize> {
        self.relations
            .range((a, 0)..=(a, usize::MAX))
            .map(|&(_, b)| b)
            .next()
    }

    pub(crate) fn relation_predecessor(&self, b: usize) -> Option<usize> {
        self.relations
            .iter()
            .find(|&&(_, y)| y == b)
            .map(|&(x, _)| x)
    }

    fn non_relation_successor(&self, a: usize) -> Option<usize> {
        self.out_arrows(self.arrows[a].target)
            .into_iter()
            .find(|&b| !self.has_relation(a, b))
    }

    fn non_relation_predecessor(&self, b: usize) -> Option<usize> {
        self.in_arrows(self.arrows[b].source)
            .into_iter()
            .find(|&a| !self.has_relation(a, b))
    }

    /// Simple cycles of the underlying graph as `(arrow id, walked forwards)`
    /// sequences, each reported once.
    fn underlying_simple_cycles(&self) -> Vec<Vec<(usize, bool)>> {
        let mut cycles = Vec::new();
        let incident: Vec<Vec<(usize, bool, usize)>> = (0..self.vertex_count())
            .map(|v| {
                let mut out = Vec::new();
                for (id, a) in self.arrows.iter().enumerate() {
                    if a.source == v {
                        out.push((id, true, a.target));
                    }
                    if a.target == v {
                        out.push((id, false, a.source));
                    }
                }
                out
            })
            .collect();

        fn dfs(
            start: usize,
            at: usize,
            incident: &[Vec<(usize, bool, usize)>],
            path_edges: &mut Vec<(usize, bool)>,
            path_verts: &mut Vec<usize>,
            cycles: &mut Vec<Vec<(usize, bool)>>,
        ) {
            for &(id, fwd, next) in &incident[at] {
                if path_edges.iter().any(|&(e, _)| e == id) {
                    continue;
                }
                if next == start {
                    let mut candidate = path_edges.clone();
                    candidate.push((id, fwd));
                    if candidate.len() >= 2 {
                        // Report each cycle once: for two-edge cycles key on
                        // arrow ids, otherwise on the walk direction.
                        let keep = if candidate.len() == 2 {
                            candidate[0].0 < candidate[1].0
                        } else {
                            path_verts[1] < *path_verts.last().unwrap()
                        };
                        if keep {
                            cycles.push(candidate);
                        }
                    }
                } else if next > start && !path_verts.contains(&next) {
                    path_edges.push((id, fwd));
                    path_verts.push(next);
                    dfs(start, next, incident, path_edges, path_verts, cycles);
                    path_edges.pop();
                    path_verts.pop();
                }
            }
        }

        for start in 0..self.vertex_count() {
            let mut path_edges = Vec::new();
            let mut path_verts = vec![start];
            dfs(
                start,
                start,
                &incident,
                &mut path_edges,
                &mut path_verts,
                &mut cycles,
            );
        }
        cycles
    }
}

/// Gentleness: at most two arrows start and end at each vertex, and every
/// arrow has at most one relation successor, one non-relation successor,
/// one relation predecessor and one non-relation predecessor.
pub fn is_gentle(q: &Quiver) -> bool {
    for v in 0..q.vertex_count() {
        if q.out_arrows(v).len() > 2 || q.in_arrows(v).len() > 2 {
            return false;
        }
    }
    for a in 0..q.arrow_count() {
        let succ = q.out_arrows(q.arrow(a).target);
        let (rel_s, plain_s): (Vec<_>, Vec<_>) =
            succ.into_iter().partition(|&b| q.has_relation(a, b));
        if rel_s.len() > 1 || plain_s.len() > 1 {
            return false;
        }
        let pred = q.in_arrows(q.arrow(a).source);
        let (rel_p, plain_p): (Vec<_>, Vec<_>) =
            pred.into_iter().partition(|&b| q.has_relation(b, a));
        if rel_p.len() > 1 || plain_p.len() > 1 {
            return false;
        }
    }
    true
}

/// Every cycle of the underlying graph is consistently oriented and all of
/// its consecutive arrow pairs, including the wraparound, are relations.
pub fn cycles_oriented_relation_full(q: &Quiver) -> bool {
    for cycle in q.underlying_simple_cycles() {
        let oriented_fwd = cycle.iter().all(|&(_, fwd)| fwd);
        let oriented_bwd = cycle.iter().all(|&(_, fwd)| !fwd);
        if !oriented_fwd && !oriented_bwd {
            return false;
        }
        let mut ids: Vec<usize> = cycle.iter().map(|&(id, _)| id).collect();
        if oriented_bwd {
            ids.reverse();
        }
        let len = ids.len();
        for i in 0..len {
            if !q.has_relation(ids[i], ids[(i + 1) % len]) {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreadKind {
    Permitted,
    Forbidden,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ThreadBody {
    /// Anchored at a vertex, no arrows.
    Trivial(usize),
    Arrows(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Thread {
    pub kind: ThreadKind,
    pub body: ThreadBody,
    /// Only forbidden threads can be closed (a full relation cycle).
    pub closed: bool,
}

impl Thread {
    fn trivial(kind: ThreadKind, v: usize) -> Self {
        Thread {
            kind,
            body: ThreadBody::Trivial(v),
            closed: false,
        }
    }

    fn path(kind: ThreadKind, arrows: Vec<usize>, closed: bool) -> Self {
        Thread {
            kind,
            body: ThreadBody::Arrows(arrows),
            closed,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self.body, ThreadBody::Trivial(_))
    }

    pub fn len(&self) -> usize {
        match &self.body {
            ThreadBody::Trivial(_) => 0,
            ThreadBody::Arrows(a) => a.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn arrows(&self) -> &[usize] {
        match &self.body {
            ThreadBody::Trivial(_) => &[],
            ThreadBody::Arrows(a) => a,
        }
    }

    pub fn contains_arrow(&self, id: usize) -> bool {
        self.arrows().contains(&id)
    }

    pub fn source(&self, q: &Quiver) -> usize {
        match &self.body {
            ThreadBody::Trivial(v) => *v,
            ThreadBody::Arrows(a) => q.arrow(a[0]).source,
        }
    }

    pub fn target(&self, q: &Quiver) -> usize {
        match &self.body {
            ThreadBody::Trivial(v) => *v,
            ThreadBody::Arrows(a) => q.arrow(*a.last().unwrap()).target,
        }
    }

    pub fn first_arrow(&self) -> Option<usize> {
        self.arrows().first().copied()
    }

    pub fn last_arrow(&self) -> Option<usize> {
        self.arrows().last().copied()
    }

    /// The quiver vertices the thread touches.
    pub fn vertex_set(&self, q: &Quiver) -> BTreeSet<usize> {
        match &self.body {
            ThreadBody::Trivial(v) => BTreeSet::from([*v]),
            ThreadBody::Arrows(arrows) => arrows
                .iter()
                .flat_map(|&a| [q.arrow(a).source, q.arrow(a).target])
                .collect(),
        }
    }
}

/// Maximal relation-free paths plus the trivial permitted threads: one at
/// each vertex of valency at most one, and one at each flow-through vertex
/// whose passage is not a relation.
pub fn permitted_threads(q: &Quiver) -> Result<Vec<Thread>> {
    if !is_gentle(q) {
        return Err(Error::NotGentle);
    }
    let mut threads = Vec::new();
    for v in 0..q.vertex_count() {
        let ins = q.in_arrows(v);
        let outs = q.out_arrows(v);
        let trivial = match (ins.as_slice(), outs.as_slice()) {
            ([], []) | ([], [_]) | ([_], []) => true,
            ([a], [b]) => !q.has_relation(*a, *b),
            _ => false,
        };
        if trivial {
            threads.push(Thread::trivial(ThreadKind::Permitted, v));
        }
    }
    let mut used = vec![false; q.arrow_count()];
    for start in 0..q.arrow_count() {
        if q.non_relation_predecessor(start).is_some() {
            continue;
        }
        let mut arrows = vec![start];
        used[start] = true;
        let mut cur = start;
        while let Some(next) = q.non_relation_successor(cur) {
            if used[next] {
                return Err(Error::CycleNotRelationFull);
            }
            arrows.push(next);
            used[next] = true;
            cur = next;
        }
        threads.push(Thread::path(ThreadKind::Permitted, arrows, false));
    }
    if used.iter().any(|&u| !u) {
        // Leftover arrows sit on a relation-free cycle.
        return Err(Error::CycleNotRelationFull);
    }
    Ok(threads)
}

/// Open arrow chains and cycles, as arrow-id paths.
pub(crate) type ChainsAndCycles = (Vec<Vec<usize>>, Vec<Vec<usize>>);

/// Arrow chains and cycles under the relation-successor map.
fn forbidden_structure(q: &Quiver) -> Result<ChainsAndCycles> {
    if !is_gentle(q) {
        return Err(Error::NotGentle);
    }
    if !cycles_oriented_relation_full(q) {
        return Err(Error::CycleNotRelationFull);
    }
    let mut used = vec![false; q.arrow_count()];
    let mut chains = Vec::new();
    for start in 0..q.arrow_count() {
        if q.relation_predecessor(start).is_some() {
            continue;
        }
        let mut arrows = vec![start];
        used[start] = true;
        let mut cur = start;
        while let Some(next) = q.relation_successor(cur) {
            debug_assert!(!used[next]);
            arrows.push(next);
            used[next] = true;
            cur = next;
        }
        chains.push(arrows);
    }
    let mut cycles = Vec::new();
    for seed in 0..q.arrow_count() {
        if used[seed] {
            continue;
        }
        let mut arrows = vec![seed];
        used[seed] = true;
        let mut cur = seed;
        loop {
            let next = q
                .relation_successor(cur)
                .expect("cycle arrows all have relation successors");
            if next == seed {
                break;
            }
            arrows.push(next);
            used[next] = true;
            cur = next;
        }
        cycles.push(arrows);
    }
    Ok((chains, cycles))
}

fn trivial_forbidden_vertices(q: &Quiver) -> Vec<usize> {
    (0..q.vertex_count())
        .filter(|&v| {
            let ins = q.in_arrows(v);
            let outs = q.out_arrows(v);
            match (ins.as_slice(), outs.as_slice()) {
                ([], []) | ([], [_]) | ([_], []) => true,
                ([a], [b]) => q.has_relation(*a, *b),
                _ => false,
            }
        })
        .collect()
}

/// All maximal forbidden paths: the open relation chains, every rotation of
/// every relation cycle, and the trivial forbidden threads.
pub fn forbidden_threads(q: &Quiver) -> Result<Vec<Thread>> {
    let (chains, cycles) = forbidden_structure(q)?;
    let mut threads: Vec<Thread> = trivial_forbidden_vertices(q)
        .into_iter()
        .map(|v| Thread::trivial(ThreadKind::Forbidden, v))
        .collect();
    let mut paths = Vec::new();
    for chain in chains {
        paths.push(Thread::path(ThreadKind::Forbidden, chain, false));
    }
    for cycle in &cycles {
        let len = cycle.len();
        for i in 0..len {
            let rotation: Vec<usize> = (0..len).map(|j| cycle[(i + j) % len]).collect();
            paths.push(Thread::path(ThreadKind::Forbidden, rotation, true));
        }
    }
    paths.sort_by_key(|t| t.first_arrow());
    threads.extend(paths);
    Ok(threads)
}

/// The thread family driving the reconstruction and invariant algorithms:
/// all open forbidden threads plus one chosen rotation per relation cycle
/// (the one whose first arrow id is minimal).
#[derive(Debug, Clone)]
pub struct ThreadSet {
    threads: Vec<Thread>,
}

impl ThreadSet {
    pub fn threads(&self) -> &[Thread] {
        &self.threads
    }

    pub fn len(&self) -> usize {
        self.threads.len()
    }

    pub fn is_empty(&self) -> bool {
        self.threads.is_empty()
    }

    /// Number of members touching a quiver vertex; exactly two on gentle
    /// input with oriented relation-full cycles.
    pub fn incident_count(&self, q: &Quiver, v: usize) -> usize {
        self.threads
            .iter()
            .filter(|t| t.vertex_set(q).contains(&v))
            .count()
    }

    /// The members incident with `v`, by index.
    pub fn incident_indices(&self, q: &Quiver, v: usize) -> Vec<usize> {
        (0..self.threads.len())
            .filter(|&i| self.threads[i].vertex_set(q).contains(&v))
            .collect()
    }
}

pub fn choose_thread_set(q: &Quiver) -> Result<ThreadSet> {
    let (chains, cycles) = forbidden_structure(q)?;
    let mut threads: Vec<Thread> = trivial_forbidden_vertices(q)
        .into_iter()
        .map(|v| Thread::trivial(ThreadKind::Forbidden, v))
        .collect();
    let mut paths = Vec::new();
    for chain in chains {
        paths.push(Thread::path(ThreadKind::Forbidden, chain, false));
    }
    for cycle in &cycles {
        // Rotate the cycle to start at its minimal arrow id.
        let len = cycle.len();
        let min_pos = (0..len).min_by_key(|&i| cycle[i]).unwrap();
        let rotation: Vec<usize> = (0..len).map(|j| cycle[(min_pos + j) % len]).collect();
        paths.push(Thread::path(ThreadKind::Forbidden, rotation, true));
    }
    paths.sort_by_key(|t| t.first_arrow());
    threads.extend(paths);
    Ok(ThreadSet { threads })
}

pub(crate) fn relation_cycles(q: &Quiver) -> Result<Vec<Vec<usize>>> {
    forbidden_structure(q).map(|(_, cycles)| cycles)
}

pub(crate) fn forbidden_chains_and_cycles(q: &Quiver) -> Result<ChainsAndCycles> {
    forbidden_structure(q)
}

/// The quiver with relations of a tiling: vertices are the arcs; each tile
/// corner where two arcs meet contributes the arrow given by the clockwise
/// rotation between them; consecutive arrows of one tile compose to zero.
pub fn tiling_algebra<T: MarkedTiling + ?Sized>(tiling: &T) -> Result<Quiver> {
    let disc = Disc::new(tiling.point_count(), &tiling.arc_pairs())?;
    let labels: Vec<String> = disc
        .arcs()
        .iter()
        .map(|&(a, b)| format!("{{{a},{b}}}"))
        .collect();
    let faces = disc.interior_faces();
    let mut raw: Vec<(usize, usize, usize)> = Vec::new();
    for (fi, face) in faces.iter().enumerate() {
        for &(_point, in_arc, out_arc) in &face.corners {
            raw.push((out_arc, in_arc, fi));
        }
    }
    raw.sort_unstable();
    let arrows: Vec<(usize, usize)> = raw.iter().map(|&(s, t, _)| (s, t)).collect();
    let mut by_face: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (id, &(_, _, f)) in raw.iter().enumerate() {
        by_face.entry(f).or_default().push(id);
    }
    let mut relations = Vec::new();
    for ids in by_face.values() {
        for &e1 in ids {
            for &e2 in ids {
                if e1 != e2 && raw[e1].1 == raw[e2].0 {
                    relations.push((e1, e2));
                }
            }
        }
    }
    Quiver::new(labels, arrows, relations)
}

/// Shape of one region of a tiling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TileShape {
    pub arc_count: usize,
    pub boundary_edges: usize,
}

impl TileShape {
    pub fn is_closed(&self) -> bool {
        self.boundary_edges == 0
    }

    /// Sides of the region seen as a polygon.
    pub fn sides(&self) -> usize {
        self.arc_count + self.boundary_edges
    }
}

/// The region census of any marked tiling.
pub fn tile_shapes<T: MarkedTiling + ?Sized>(tiling: &T) -> Result<Vec<TileShape>> {
    let disc = Disc::new(tiling.point_count(), &tiling.arc_pairs())?;
    Ok(disc
        .interior_faces()
        .iter()
        .map(|f| TileShape {
            arc_count: f.arcs.len(),
            boundary_edges: f.open_edges(),
        })
        .collect())
}

/// Arc indices incident with each non-isolated marked point, in clockwise
/// fan order.
pub fn fans<T: MarkedTiling + ?Sized>(tiling: &T) -> Result<BTreeMap<usize, Vec<usize>>> {
    let disc = Disc::new(tiling.point_count(), &tiling.arc_pairs())?;
    let n = disc.point_count();
    let mut out = BTreeMap::new();
    for v in 1..=n {
        let mut incident: Vec<(usize, usize)> = disc
            .arcs()
            .iter()
            .enumerate()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(idx, &(a, b))| {
                let far = if a == v { b } else { a };
                ((far + n - v) % n, idx)
            })
            .collect();
        if incident.is_empty() {
            continue;
        }
        incident.sort_unstable();
        out.insert(v, incident.into_iter().map(|(_, idx)| idx).collect());
    }
    Ok(out)
}
