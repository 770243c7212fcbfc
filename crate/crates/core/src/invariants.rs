//! Derived invariants of gentle algebras with oriented relation-full
//! cycles, and their dissection-level readings: the alternating thread
//! walk, Gorenstein dimension, the endomorphism-algebra recognition test,
//! cuts, and the cluster-tilted profile.

use std::collections::BTreeSet;
use std::fmt;

use crate::disc::Disc;
use crate::error::{Error, Result};
use crate::polygon::Diagonal;
use crate::quiver::{
    choose_thread_set, forbidden_chains_and_cycles, is_gentle, permitted_threads, relation_cycles,
    MarkedTiling, Quiver, Thread, ThreadSet,
};
use crate::reconstruct::AbstractTiling;
use crate::rigid::{classify_tile, ArcCollection, TileType};

/// The multiset of ordered pairs produced by the thread walk, canonically
/// sorted with the `a > 0` pairs first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AgInvariant {
    pairs: Vec<(usize, usize)>,
}

impl AgInvariant {
    fn new(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_by(|l, r| r.0.cmp(&l.0).then(l.1.cmp(&r.1)));
        Self { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn sum_a(&self) -> usize {
        self.pairs.iter().map(|p| p.0).sum()
    }

    pub fn sum_b(&self) -> usize {
        self.pairs.iter().map(|p| p.1).sum()
    }
}

impl fmt::Display for AgInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

struct AgMachine<'a> {
    q: &'a Quiver,
    permitted: Vec<Thread>,
    fset: ThreadSet,
}

impl<'a> AgMachine<'a> {
    fn new(q: &'a Quiver) -> Result<Self> {
        if q.vertex_count() == 0 {
            return Err(Error::InvalidQuiver("empty quiver".into()));
        }
        Ok(Self {
            q,
            permitted: permitted_threads(q)?,
            fset: choose_thread_set(q)?,
        })
    }

    fn open_forbidden_with_last(&self, arrow: usize) -> Result<&Thread> {
        self.fset
            .threads()
            .iter()
            .find(|t| !t.closed && t.last_arrow() == Some(arrow))
            .ok_or_else(|| {
                Error::InvalidQuiver(format!("no open forbidden thread ends with arrow {arrow}"))
            })
    }

    fn trivial_forbidden_at(&self, v: usize) -> Result<&Thread> {
        self.fset
            .threads()
            .iter()
            .find(|t| t.is_trivial() && t.source(self.q) == v)
            .ok_or_else(|| {
                Error::InvalidQuiver(format!("no trivial forbidden thread at vertex {v}"))
            })
    }

    fn permitted_with_first(&self, arrow: usize) -> Result<usize> {
        self.permitted
            .iter()
            .position(|t| t.first_arrow() == Some(arrow))
            .ok_or_else(|| {
                Error::InvalidQuiver(format!("no permitted thread starts with arrow {arrow}"))
            })
    }

    fn trivial_permitted_at(&self, v: usize) -> Result<usize> {
        self.permitted
            .iter()
            .position(|t| t.is_trivial() && t.source(self.q) == v)
            .ok_or_else(|| {
                Error::InvalidQuiver(format!("no trivial permitted thread at vertex {v}"))
            })
    }

    /// The forbidden thread ending at `t(h)` from the opposite direction.
    fn opposite_forbidden(&self, h: &Thread) -> Result<&Thread> {
        let v = h.target(self.q);
        let ins = self.q.in_arrows(v);
        match ins.as_slice() {
            [a, b] => {
                let last = h.last_arrow().ok_or_else(|| {
                    Error::InvalidQuiver("trivial thread at a two-in vertex".into())
                })?;
                let other = if *a == last { *b } else { *a };
                self.open_forbidden_with_last(other)
            }
            [a] => {
                if h.last_arrow() == Some(*a) {
                    self.trivial_forbidden_at(v)
                } else {
                    self.open_forbidden_with_last(*a)
                }
            }
            [] => self.trivial_forbidden_at(v),
            _ => Err(Error::NotGentle),
        }
    }

    /// The permitted thread starting at `s(f)` from the opposite direction.
    fn opposite_permitted(&self, f: &Thread) -> Result<usize> {
        let v = f.source(self.q);
        let outs = self.q.out_arrows(v);
        match outs.as_slice() {
            [a, b] => {
                let first = f.first_arrow().ok_or_else(|| {
                    Error::InvalidQuiver("trivial thread at a two-out vertex".into())
                })?;
                let other = if *a == first { *b } else { *a };
                self.permitted_with_first(other)
            }
            [a] => {
                if f.first_arrow() == Some(*a) {
                    self.trivial_permitted_at(v)
                } else {
                    self.permitted_with_first(*a)
                }
            }
            [] => self.trivial_permitted_at(v),
            _ => Err(Error::NotGentle),
        }
    }

    fn open_forbidden_with_first(&self, arrow: usize) -> Result<&Thread> {
        self.fset
            .threads()
            .iter()
            .find(|t| !t.closed && t.first_arrow() == Some(arrow))
            .ok_or_else(|| {
                Error::InvalidQuiver(format!("no open forbidden thread starts with arrow {arrow}"))
            })
    }

    /// The forbidden thread starting at `s(h)` from the opposite direction.
    fn opposite_forbidden_at_source(&self, h: &Thread) -> Result<&Thread> {
        let v = h.source(self.q);
        let outs = self.q.out_arrows(v);
        match outs.as_slice() {
            [a, b] => {
                let first = h.first_arrow().ok_or_else(|| {
                    Error::InvalidQuiver("trivial thread at a two-out vertex".into())
                })?;
                let other = if *a == first { *b } else { *a };
                self.open_forbidden_with_first(other)
            }
            [a] => {
                if h.first_arrow() == Some(*a) {
                    self.trivial_forbidden_at(v)
                } else {
                    self.open_forbidden_with_first(*a)
                }
            }
            [] => self.trivial_forbidden_at(v),
            _ => Err(Error::NotGentle),
        }
    }
}

/// The alternating permitted/forbidden thread walk, plus one `(0, c)` pair
/// per relation cycle of length `c`.
pub fn ag_invariant(q: &Quiver) -> Result<AgInvariant> {
    ag_invariant_starting_at(q, 0)
}

/// Same walk, consuming permitted threads starting from the given index.
/// The result does not depend on the starting thread.
pub fn ag_invariant_starting_at(q: &Quiver, first: usize) -> Result<AgInvariant> {
    let machine = AgMachine::new(q)?;
    let np = machine.permitted.len();
    let mut visited = vec![false; np];
    let mut pairs = Vec::new();
    for offset in 0..np {
        let start = (first + offset) % np;
        if visited[start] {
            continue;
        }
        let mut h = start;
        let mut a = 0usize;
        let mut b = 0usize;
        loop {
            visited[h] = true;
            a += 1;
            let f = machine.opposite_forbidden(&machine.permitted[h])?;
            b += f.len();
            let next = machine.opposite_permitted(f)?;
            if next == start {
                break;
            }
            if visited[next] {
                return Err(Error::InvalidQuiver("thread walk collided".into()));
            }
            h = next;
        }
        pairs.push((a, b));
    }
    for cycle in relation_cycles(q)? {
        pairs.push((0, cycle.len()));
    }
    Ok(AgInvariant::new(pairs))
}

/// Number of permitted threads of the quiver (the walk's total `a`).
pub fn permitted_thread_count(q: &Quiver) -> Result<usize> {
    Ok(permitted_threads(q)?.len())
}

/// The thread pairs read off a dissection: one `(0, c)` per closed tile of
/// length `c` and a single `(a, b)` with `a` the number of open tiles and
/// `b` the sum of their lengths minus one each.
pub fn ag_from_tiles<T: MarkedTiling + ?Sized>(tiling: &T) -> Result<AgInvariant> {
    let disc = Disc::new(tiling.point_count(), &tiling.arc_pairs())?;
    if disc.arcs().is_empty() {
        return Err(Error::InvalidQuiver("tiling has no arcs".into()));
    }
    let mut pairs = Vec::new();
    let mut open = 0usize;
    let mut b = 0usize;
    for face in disc.interior_faces() {
        if face.is_closed() {
            pairs.push((0, face.arcs.len()));
        } else {
            open += 1;
            b += face.arcs.len() - 1;
        }
    }
    pairs.push((open, b));
    Ok(AgInvariant::new(pairs))
}

/// Self-injective dimension of the algebra over itself: pinned exactly by
/// the longest forbidden path starting with a gentle arrow when one
/// exists, otherwise only bounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GorensteinResult {
    Exact(usize),
    AtMostOne,
}

impl fmt::Display for GorensteinResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GorensteinResult::Exact(d) => write!(f, "exact {d}"),
            GorensteinResult::AtMostOne => write!(f, "at-most-one"),
        }
    }
}

pub fn gorenstein_dimension(q: &Quiver) -> Result<GorensteinResult> {
    if !is_gentle(q) {
        return Err(Error::NotGentle);
    }
    if q.vertex_count() == 1 && q.arrow_count() == 0 {
        // The one-point algebra is self-injective.
        return Ok(GorensteinResult::Exact(0));
    }
    let mut best = 0usize;
    for a in 0..q.arrow_count() {
        if q.relation_predecessor(a).is_some() {
            continue; // not a gentle arrow
        }
        let mut len = 1;
        let mut cur = a;
        while let Some(next) = q.relation_successor(cur) {
            len += 1;
            cur = next;
            if len > q.arrow_count() {
                return Err(Error::CycleNotRelationFull);
            }
        }
        best = best.max(len);
    }
    Ok(if best > 0 {
        GorensteinResult::Exact(best)
    } else {
        GorensteinResult::AtMostOne
    })
}

/// Tile reading: one less than the maximum open-tile length, when some
/// open tile has at least two bounding arcs.
pub fn gorenstein_from_tiles<T: MarkedTiling + ?Sized>(tiling: &T) -> Result<GorensteinResult> {
    let disc = Disc::new(tiling.point_count(), &tiling.arc_pairs())?;
    let k = disc
        .interior_faces()
        .iter()
        .filter(|f| !f.is_closed())
        .map(|f| f.arcs.len())
        .max()
        .unwrap_or(0);
    Ok(if k >= 2 {
        GorensteinResult::Exact(k - 1)
    } else {
        GorensteinResult::AtMostOne
    })
}

/// Whether the gentle algebra arises as the endomorphism algebra of a
/// connected maximal rigid collection for the given degree `m`.
pub fn is_end_algebra(q: &Quiver, m: usize) -> Result<bool> {
    if m < 1 {
        return Err(Error::DegreeTooSmall(m));
    }
    let machine = AgMachine::new(q)?;
    let permitted = &machine.permitted;
    let (chains, cycles) = forbidden_chains_and_cycles(q)?;
    let val = |v: usize| q.valency(v);
    let chain_source = |c: &[usize]| q.arrow(c[0]).source;
    let chain_target = |c: &[usize]| q.arrow(*c.last().unwrap()).target;

    // (i) no non-trivial permitted thread joining two valency-one vertices.
    for p in permitted.iter().filter(|p| !p.is_trivial()) {
        if val(p.source(q)) == 1 && val(p.target(q)) == 1 {
            return Ok(false);
        }
    }

    // (ii) a forbidden path of length m+1 not completable to a closed
    // thread must start or end at a valency-one vertex.
    for chain in &chains {
        if chain.len() < m + 1 {
            continue;
        }
        for window in chain.windows(m + 1) {
            let s = q.arrow(window[0]).source;
            let t = q.arrow(*window.last().unwrap()).target;
            if val(s) != 1 && val(t) != 1 {
                return Ok(false);
            }
        }
    }

    // (iii) every simple cycle has length m+3.
    if cycles.iter().any(|c| c.len() != m + 3) {
        return Ok(false);
    }

    // (iv) a flow-through relation vertex needs flanking permitted threads
    // reaching valency-one vertices on both sides.
    for v in 0..q.vertex_count() {
        let ins = q.in_arrows(v);
        let outs = q.out_arrows(v);
        if let ([a], [b]) = (ins.as_slice(), outs.as_slice()) {
            if q.has_relation(*a, *b) {
                let before = permitted
                    .iter()
                    .any(|p| p.target(q) == v && val(p.source(q)) == 1);
                let after = permitted
                    .iter()
                    .any(|p| p.source(q) == v && val(p.target(q)) == 1);
                if !before || !after {
                    return Ok(false);
                }
            }
        }
    }

    // (v) an open forbidden thread of length m+1 with a valency-one end
    // needs the companion permitted thread to a valency-one vertex.
    for chain in &chains {
        if chain.len() != m + 1 {
            continue;
        }
        let s = chain_source(chain);
        let t = chain_target(chain);
        if val(t) == 1 {
            let ok = permitted
                .iter()
                .any(|p| p.source(q) == s && val(p.target(q)) == 1);
            if !ok {
                return Ok(false);
            }
        }
        if val(s) == 1 {
            let ok = permitted
                .iter()
                .any(|p| p.target(q) == t && val(p.source(q)) == 1);
            if !ok {
                return Ok(false);
            }
        }
    }

    // (vi) no permitted thread whose two companion forbidden threads (the
    // ones ending at its target and starting at its source from the
    // opposite directions) are both long with lengths summing to m+2.
    // Pairing through the opposite direction matters: an arbitrary pair of
    // threads sharing those endpoints can be capped by a flanking short
    // arc, which keeps the isolated runs apart.
    for p in permitted {
        let f1 = machine.opposite_forbidden(p)?;
        let f2 = machine.opposite_forbidden_at_source(p)?;
        if f1.len() >= 2 && f2.len() >= 2 && f1.len() + f2.len() >= m + 2 {
            return Ok(false);
        }
    }

    Ok(true)
}

/// A set of arrows, each on some directed simple cycle, to be adjoined to
/// the relation ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutSet {
    arrows: BTreeSet<usize>,
}

impl CutSet {
    pub fn new(arrows: impl IntoIterator<Item = usize>) -> Self {
        Self {
            arrows: arrows.into_iter().collect(),
        }
    }

    pub fn arrows(&self) -> &BTreeSet<usize> {
        &self.arrows
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Arrows lying on a directed simple cycle.
pub fn cycle_arrows(q: &Quiver) -> Vec<usize> {
    (0..q.arrow_count())
        .filter(|&id| {
            let arrow = q.arrow(id);
            // On a cycle iff the target reaches back to the source.
            let mut seen = vec![false; q.vertex_count()];
            let mut stack = vec![arrow.target];
            seen[arrow.target] = true;
            while let Some(v) = stack.pop() {
                if v == arrow.source {
                    return true;
                }
                for out in q.out_arrows(v) {
                    let t = q.arrow(out).target;
                    if !seen[t] {
                        seen[t] = true;
                        stack.push(t);
                    }
                }
            }
            false
        })
        .collect()
}

/// Deletes the cut arrows together with their incident relations; on the
/// length-two relation model this realizes adjoining the arrows to the
/// ideal.
pub fn apply_cut(q: &Quiver, cut: &CutSet) -> Result<Quiver> {
    let on_cycle: BTreeSet<usize> = cycle_arrows(q).into_iter().collect();
    for &a in cut.arrows() {
        if a >= q.arrow_count() {
            return Err(Error::InvalidQuiver(format!("no arrow {a}")));
        }
        if !on_cycle.contains(&a) {
            return Err(Error::CutArrowNotOnCycle(a));
        }
    }
    let mut remap = vec![usize::MAX; q.arrow_count()];
    let mut arrows = Vec::new();
    for (id, slot) in remap.iter_mut().enumerate() {
        if !cut.arrows().contains(&id) {
            *slot = arrows.len();
            let a = q.arrow(id);
            arrows.push((a.source, a.target));
        }
    }
    let relations: Vec<(usize, usize)> = q
        .relations()
        .iter()
        .filter(|(a, b)| remap[*a] != usize::MAX && remap[*b] != usize::MAX)
        .map(|&(a, b)| (remap[a], remap[b]))
        .collect();
    Quiver::new(q.labels().to_vec(), arrows, relations)
}

pub const DEFAULT_CUT_LIMIT: usize = 16;

/// Every subset of the cycle arrows, including the empty cut.
pub fn enumerate_cuts(q: &Quiver) -> Result<Vec<CutSet>> {
    enumerate_cuts_with_limit(q, DEFAULT_CUT_LIMIT)
}

pub fn enumerate_cuts_with_limit(q: &Quiver, limit: usize) -> Result<Vec<CutSet>> {
    let ca = cycle_arrows(q);
    if ca.len() > limit {
        return Err(Error::ResourceBound {
            got: ca.len(),
            limit,
        });
    }
    let mut out = Vec::with_capacity(1 << ca.len());
    for mask in 0u64..(1 << ca.len()) {
        let arrows = ca
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a);
        out.push(CutSet::new(arrows));
    }
    Ok(out)
}

/// The tile census of a connected non-crossing dissection together with
/// the rank bookkeeping relating its algebra to a cluster-tilted one.
#[derive(Debug, Clone)]
pub struct ClusterProfile {
    counts: Vec<usize>,
    single_wide: usize,
    closed: usize,
    x: i64,
    outcome: ClusterOutcome,
}

#[derive(Debug, Clone)]
pub enum ClusterOutcome {
    /// No cut needed: the algebra is cluster-tilted of the given rank, and
    /// the adjusted dissection is an (m+3)-angulation witnessing it.
    ClusterTilted {
        rank: usize,
        angulation: AbstractTiling,
    },
    /// The algebra arises from a cluster-tilted algebra of the given rank
    /// by cutting, per affected tile, the arrow closing its two short
    /// outer diagonals into a cycle.
    CutFrom {
        rank: usize,
        cuts: Vec<(Diagonal, Diagonal)>,
    },
}

impl ClusterProfile {
    /// `n_k` for `1 <= k <= m+3`.
    pub fn count(&self, k: usize) -> usize {
        self.counts.get(k).copied().unwrap_or(0)
    }

    pub fn single_wide(&self) -> usize {
        self.single_wide
    }

    pub fn closed_count(&self) -> usize {
        self.closed
    }

    pub fn x(&self) -> i64 {
        self.x
    }

    pub fn outcome(&self) -> &ClusterOutcome {
        &self.outcome
    }
}

pub fn cluster_profile(tc: &ArcCollection) -> Result<ClusterProfile> {
    let ctx = *tc.ctx();
    let m = ctx.degree();
    if !tc.is_connected() {
        return Err(Error::NotConnected);
    }
    let tiles = tc.extract_tiles()?;
    let mut counts = vec![0usize; m + 4];
    let mut single_wide = 0usize;
    let mut closed = 0usize;
    let mut cut_witnesses = Vec::new();
    for tile in &tiles {
        match classify_tile(&ctx, tile).ok_or(Error::UnclassifiableTile)? {
            TileType::Regular(k) => counts[k] += 1,
            TileType::ShortFlanked(_) => counts[m + 2] += 1,
            TileType::SingleWide => single_wide += 1,
            TileType::DoubleShortFlanked(first, last) => {
                counts[m + 3] += 1;
                cut_witnesses.push((first, last));
            }
            TileType::Closed => closed += 1,
        }
    }

    let mut x = (1 - m as i64) * single_wide as i64;
    for (k, &nk) in counts.iter().enumerate().take(m + 3).skip(1) {
        x -= (2 * k as i64 - 4) * nk as i64;
    }
    let num = x - 4;
    let step = (m + 1) as i64;
    if num.rem_euclid(step) != 0 {
        return Err(Error::InvalidQuiver(format!(
            "profile offset {num} not divisible by {step}"
        )));
    }

    let outcome = if counts[m + 3] == 0 {
        let rank = ctx.rank() as i64 + num / step;
        ClusterOutcome::ClusterTilted {
            rank: rank as usize,
            angulation: rebuild_angulation(tc, &tiles)?,
        }
    } else {
        let rank = ctx.rank() as i64 - counts[m + 3] as i64 + num / step;
        ClusterOutcome::CutFrom {
            rank: rank as usize,
            cuts: cut_witnesses,
        }
    };
    Ok(ClusterProfile {
        counts,
        single_wide,
        closed,
        x,
        outcome,
    })
}

/// Adjusts every open tile to carry `m + 2 - length` isolated vertices,
/// turning each tile into an (m+3)-gon.
fn rebuild_angulation(tc: &ArcCollection, tiles: &[crate::rigid::Tile]) -> Result<AbstractTiling> {
    let ctx = tc.ctx();
    let m = ctx.degree();
    let mut insert_after = std::collections::BTreeMap::new();
    for tile in tiles {
        if let Some(ob) = tile.open_boundary() {
            insert_after.insert(ob.start, m + 2 - tile.length());
        }
    }
    let non_isolated: Vec<usize> = tc.non_isolated_vertices().into_iter().collect();
    let mut new_label = std::collections::BTreeMap::new();
    let mut next = 0usize;
    for &p in &non_isolated {
        next += 1;
        new_label.insert(p, next);
        next += insert_after.get(&p).copied().unwrap_or(0);
    }
    let arcs = tc
        .arcs()
        .iter()
        .map(|d| {
            let (a, b) = d.endpoints();
            (new_label[&a], new_label[&b])
        })
        .collect();
    AbstractTiling::new(next, arcs)
}
