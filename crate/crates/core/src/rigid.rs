//! Rigid arc collections: the pairwise rigidity test and its extension-based
//! oracle, maximality, connectedness, tile extraction and classification,
//! the dissection characterization, and exhaustive enumeration via maximal
//! cliques of the compatibility graph.

use std::collections::BTreeSet;

use crate::disc::{Disc, Face, Stretch};
use crate::error::{Error, Result};
use crate::orbit::ext_nonzero;
use crate::polygon::{Diagonal, PolygonContext};
use crate::quiver::MarkedTiling;

/// A set of diagonals of one polygon, kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCollection {
    ctx: PolygonContext,
    arcs: Vec<Diagonal>,
}

impl MarkedTiling for ArcCollection {
    fn point_count(&self) -> usize {
        self.ctx.vertex_count()
    }

    fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().map(|d| d.pair()).collect()
    }
}

impl ArcCollection {
    pub fn new(ctx: PolygonContext, arcs: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let mut arcs: Vec<Diagonal> = arcs.into_iter().collect();
        arcs.sort_unstable();
        arcs.dedup();
        for d in &arcs {
            let (i, j) = d.endpoints();
            if !ctx.is_diagonal(i, j)? {
                return Err(Error::NotADiagonal { i, j });
            }
        }
        Ok(Self { ctx, arcs })
    }

    pub fn from_pairs(ctx: PolygonContext, pairs: &[(usize, usize)]) -> Result<Self> {
        let arcs = pairs
            .iter()
            .map(|&(i, j)| ctx.diagonal(i, j))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, arcs)
    }

    pub fn ctx(&self) -> &PolygonContext {
        &self.ctx
    }

    pub fn arcs(&self) -> &[Diagonal] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.arcs.binary_search(&d).is_ok()
    }

    pub fn has_crossing(&self) -> bool {
        self.arcs
            .iter()
            .enumerate()
            .any(|(i, &x)| self.arcs[i + 1..].iter().any(|&y| self.ctx.crosses(x, y)))
    }

    pub fn non_isolated_vertices(&self) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for d in &self.arcs {
            let (a, b) = d.endpoints();
            out.insert(a);
            out.insert(b);
        }
        out
    }

    /// Pairwise rigidity: no k-neighbours for any `1 <= k <= m`, no two
    /// short diagonals sharing an endpoint, and crossings only between a
    /// short and a long diagonal.
    pub fn is_m_rigid(&self) -> bool {
        self.arcs.iter().enumerate().all(|(i, &x)| {
            self.arcs[i + 1..]
                .iter()
                .all(|&y| pair_compatible(&self.ctx, x, y))
        })
    }

    /// The extension-vanishing oracle: every ordered pair of arcs has zero
    /// extensions in every degree `1..=m`.
    pub fn is_m_rigid_via_ext(&self) -> bool {
        for &x in &self.arcs {
            for &y in &self.arcs {
                for k in 1..=self.ctx.degree() {
                    if ext_nonzero(&self.ctx, x, y, k).unwrap() {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// No diagonal outside the collection can be added keeping rigidity.
    pub fn is_maximal(&self) -> Result<bool> {
        if !self.is_m_rigid() {
            return Err(Error::NotRigid);
        }
        for cand in self.ctx.all_diagonals() {
            if self.contains(cand) {
                continue;
            }
            if self
                .arcs
                .iter()
                .all(|&d| pair_compatible(&self.ctx, d, cand))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether the graph induced on the non-isolated vertices is connected.
    /// The empty collection counts as disconnected.
    pub fn is_connected(&self) -> bool {
        let verts: Vec<usize> = self.non_isolated_vertices().into_iter().collect();
        if verts.is_empty() {
            return false;
        }
        let index = |v: usize| verts.binary_search(&v).unwrap();
        let mut seen = vec![false; verts.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            let v = verts[i];
            for d in &self.arcs {
                if d.has_endpoint(v) {
                    let j = index(d.other(v));
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// The regions the arcs cut the disc into. Requires a non-crossing
    /// collection.
    pub fn extract_tiles(&self) -> Result<Vec<Tile>> {
        let disc = Disc::new(self.ctx.vertex_count(), &self.arc_pairs())?;
        let arcs = self.arcs.clone();
        Ok(disc
            .interior_faces()
            .into_iter()
            .map(|f| Tile::from_face(&arcs, f))
            .collect())
    }

    /// The full characterization of connected maximal rigid collections
    /// among non-crossing connected tilings: every tile classifies, wide
    /// open boundaries carry their flanking short diagonals, no adjacent
    /// short diagonals, and no lone fan vertex inside a long isolated run.
    pub fn satisfies_theorem(&self) -> Result<bool> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let tiles = self.extract_tiles()?;
        let m = self.ctx.degree();

        for tile in &tiles {
            if classify_tile(&self.ctx, tile).is_none() {
                return Ok(false);
            }
        }

        // (1) an open boundary of length 2m+1 must be flanked by the two
        // short diagonals ending at its endpoints.
        for tile in &tiles {
            if let Some(ob) = tile.open_boundary() {
                if ob.length == 2 * m + 1 {
                    let before =
                        Diagonal::normalized(self.ctx.reduce(ob.start as i64 - m as i64), ob.start);
                    let after =
                        Diagonal::normalized(ob.end, self.ctx.reduce(ob.end as i64 + m as i64));
                    if !self.contains(before) || !self.contains(after) {
                        return Ok(false);
                    }
                }
            }
        }

        // (2) no two short diagonals sharing an endpoint.
        let shorts: Vec<Diagonal> = self
            .arcs
            .iter()
            .copied()
            .filter(|&d| self.ctx.is_short(d))
            .collect();
        for (i, &x) in shorts.iter().enumerate() {
            for &y in &shorts[i + 1..] {
                if x.shares_endpoint(y) {
                    return Ok(false);
                }
            }
        }

        // (3) no vertex with isolated runs of length >= m+1 on both sides
        // totalling >= 3m+1 vertices including itself.
        let n = self.ctx.vertex_count();
        let non_isolated = self.non_isolated_vertices();
        let isolated = |v: usize| !non_isolated.contains(&v);
        for w in 1..=n {
            let mut before = 0;
            let mut v = self.ctx.reduce(w as i64 - 1);
            while isolated(v) && before < n {
                before += 1;
                v = self.ctx.reduce(v as i64 - 1);
            }
            let mut after = 0;
            let mut u = self.ctx.reduce(w as i64 + 1);
            while isolated(u) && after < n {
                after += 1;
                u = self.ctx.reduce(u as i64 + 1);
            }
            if before > m && after > m && before + after + 1 > 3 * m {
                return Ok(false);
            }
        }

        Ok(true)
    }

    /// The lexicographically smallest rotation of the collection: shift all
    /// arcs by the offset minimizing the sorted arc list. Collections in one
    /// rotation class share their representative, which makes reports
    /// dedupable without quotienting the enumeration itself.
    pub fn rotation_representative(&self) -> ArcCollection {
        let mut best: Option<Vec<Diagonal>> = None;
        for offset in 0..self.ctx.vertex_count() as i64 {
            let mut arcs: Vec<Diagonal> = self
                .arcs
                .iter()
                .map(|&d| crate::orbit::shift(&self.ctx, d, offset))
                .collect();
            arcs.sort_unstable();
            if best.as_ref().is_none_or(|b| arcs < *b) {
                best = Some(arcs);
            }
        }
        ArcCollection {
            ctx: self.ctx,
            arcs: best.unwrap_or_default(),
        }
    }

    /// Simple cycles of the arc graph, each reported once as a vertex list
    /// starting at its smallest vertex.
    pub fn simple_cycles(&self) -> Vec<Vec<usize>> {
        let verts: Vec<usize> = self.non_isolated_vertices().into_iter().collect();
        let neighbours = |v: usize| -> Vec<usize> {
            self.arcs
                .iter()
                .filter(|d| d.has_endpoint(v))
                .map(|d| d.other(v))
                .collect()
        };
        let mut cycles = Vec::new();
        let mut path = Vec::new();
        for &s in &verts {
            path.clear();
            path.push(s);
            let mut on_path = BTreeSet::new();
            on_path.insert(s);
            dfs_cycles(s, s, &neighbours, &mut path, &mut on_path, &mut cycles);
        }
        cycles
    }
}

fn dfs_cycles(
    start: usize,
    at: usize,
    neighbours: &dyn Fn(usize) -> Vec<usize>,
    path: &mut Vec<usize>,
    on_path: &mut BTreeSet<usize>,
    cycles: &mut Vec<Vec<usize>>,
) {
    for next in neighbours(at) {
        if next == start && path.len() >= 3 {
            // Each cycle appears once: anchored at its smallest vertex,
            // walked towards its smaller second vertex.
            if path[1] < path[path.len() - 1] {
                cycles.push(path.clone());
            }
        } else if next > start && !on_path.contains(&next) {
            path.push(next);
            on_path.insert(next);
            dfs_cycles(start, next, neighbours, path, on_path, cycles);
            path.pop();
            on_path.remove(&next);
        }
    }
}

/// The pairwise compatibility underlying rigidity.
pub fn pair_compatible(ctx: &PolygonContext, d1: Diagonal, d2: Diagonal) -> bool {
    if d1 == d2 {
        return true;
    }
    for k in 1..=ctx.degree() {
        if ctx.k_neighbours(d1, d2, k).unwrap() {
            return false;
        }
    }
    let s1 = ctx.is_short(d1);
    let s2 = ctx.is_short(d2);
    if s1 && s2 && d1.shares_endpoint(d2) {
        return false;
    }
    if ctx.crosses(d1, d2) && s1 == s2 {
        return false;
    }
    true
}

/// One maximal boundary run of a tile: `start` and `end` are the marked
/// points where the run meets bounding arcs, `length` its segment count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenBoundary {
    pub start: usize,
    pub end: usize,
    pub length: usize,
    pub isolated: Vec<usize>,
}

/// One region of the dissection. `bounding_arcs` are listed in clockwise
/// walk order, starting right after the open boundary when there is
/// exactly one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    bounding_arcs: Vec<Diagonal>,
    stretches: Vec<OpenBoundary>,
}

impl Tile {
    pub(crate) fn from_face(arcs: &[Diagonal], face: Face) -> Self {
        let bounding_arcs = face.arcs.iter().map(|&i| arcs[i]).collect();
        let stretches = face.stretches.into_iter().map(OpenBoundary::from).collect();
        Tile {
            bounding_arcs,
            stretches,
        }
    }

    pub fn length(&self) -> usize {
        self.bounding_arcs.len()
    }

    pub fn bounding_arcs(&self) -> &[Diagonal] {
        &self.bounding_arcs
    }

    pub fn is_closed(&self) -> bool {
        self.stretches.is_empty()
    }

    /// The open boundary, when the tile has exactly one.
    pub fn open_boundary(&self) -> Option<&OpenBoundary> {
        match self.stretches.as_slice() {
            [ob] => Some(ob),
            _ => None,
        }
    }

    pub fn open_boundaries(&self) -> &[OpenBoundary] {
        &self.stretches
    }

    /// Total boundary segment count; zero for closed tiles.
    pub fn open_length(&self) -> usize {
        self.stretches.iter().map(|s| s.length).sum()
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .stretches
            .iter()
            .flat_map(|s| s.isolated.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }

    /// The two bounding arcs adjacent to the open boundary.
    pub fn outer_diagonals(&self) -> Option<(Diagonal, Diagonal)> {
        if self.stretches.len() == 1 && !self.bounding_arcs.is_empty() {
            Some((self.bounding_arcs[0], *self.bounding_arcs.last().unwrap()))
        } else {
            None
        }
    }
}

impl From<Stretch> for OpenBoundary {
    fn from(s: Stretch) -> Self {
        OpenBoundary {
            start: s.start,
            end: s.end,
            length: s.edges,
            isolated: s.isolated,
        }
    }
}

/// The tile classes of a connected maximal rigid collection, keyed by
/// `(arc count, open boundary length)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TileType {
    /// `(k, m+k-1)` for `1 <= k <= m+1`.
    Regular(usize),
    /// `(m+2, 2m+1)` with at least one short outer diagonal (the witness).
    ShortFlanked(Diagonal),
    /// `(1, 2m+1)`: a single arc with the widest open boundary.
    SingleWide,
    /// `(m+3, m+1)` with both outer diagonals short.
    DoubleShortFlanked(Diagonal, Diagonal),
    /// `(m+3, 0)`: a closed polygon of arcs.
    Closed,
}

pub fn classify_tile(ctx: &PolygonContext, tile: &Tile) -> Option<TileType> {
    let m = ctx.degree();
    let len = tile.length();
    if tile.is_closed() {
        // Cycles never carry short diagonals.
        let all_long = tile.bounding_arcs.iter().all(|&a| !ctx.is_short(a));
        return (len == m + 3 && all_long).then_some(TileType::Closed);
    }
    let ob = tile.open_boundary()?;
    // Only the two arcs flanking the open boundary may be short.
    if len >= 3
        && tile.bounding_arcs[1..len - 1]
            .iter()
            .any(|&a| ctx.is_short(a))
    {
        return None;
    }
    let b = ob.length;
    if len == 1 && b == 2 * m + 1 {
        return Some(TileType::SingleWide);
    }
    if (1..=m + 1).contains(&len) && b == m + len - 1 {
        return Some(TileType::Regular(len));
    }
    let (first, last) = tile.outer_diagonals()?;
    if len == m + 2 && b == 2 * m + 1 {
        if ctx.is_short(first) {
            return Some(TileType::ShortFlanked(first));
        }
        if ctx.is_short(last) {
            return Some(TileType::ShortFlanked(last));
        }
        return None;
    }
    if len == m + 3 && b == m + 1 && ctx.is_short(first) && ctx.is_short(last) {
        return Some(TileType::DoubleShortFlanked(first, last));
    }
    None
}

/// The 20-point `(n, m) = (10, 1)` tiling exercising every tile class at
/// once; shared by several test suites.
#[cfg(test)]
pub(crate) fn all_types_tiling() -> ArcCollection {
    let ctx = PolygonContext::new(10, 1).unwrap();
    ArcCollection::from_pairs(
        ctx,
        &[
            (4, 5),
            (17, 18),
            (13, 14),
            (10, 11),
            (1, 4),
            (14, 17),
            (7, 10),
            (4, 17),
            (7, 14),
            (4, 7),
        ],
    )
    .unwrap()
}

pub const DEFAULT_ENUMERATION_LIMIT: usize = 32;

/// All maximal rigid collections, via maximal cliques of the pairwise
/// compatibility graph.
pub fn enumerate_maximal_rigid(ctx: &PolygonContext) -> Result<Vec<ArcCollection>> {
    enumerate_maximal_rigid_with_limit(ctx, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_maximal_rigid_with_limit(
    ctx: &PolygonContext,
    limit: usize,
) -> Result<Vec<ArcCollection>> {
    let diagonals = ctx.all_diagonals();
    let n = diagonals.len();
    if n > limit || n > 128 {
        return Err(Error::ResourceBound {
            got: n,
            limit: limit.min(128),
        });
    }
    let adj: Vec<u128> = (0..n)
        .map(|i| {
            let mut mask = 0u128;
            for j in 0..n {
                if i != j && pair_compatible(ctx, diagonals[i], diagonals[j]) {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    let cliques = maximal_cliques(&adj);
    let mut out: Vec<ArcCollection> = cliques
        .into_iter()
        .map(|mask| {
            let arcs = (0..n).filter(|&i| mask >> i & 1 == 1).map(|i| diagonals[i]);
            ArcCollection::new(*ctx, arcs).expect("clique members are valid diagonals")
        })
        .collect();
    out.sort_by(|a, b| a.arcs.cmp(&b.arcs));
    Ok(out)
}

/// All connected maximal rigid collections, canonically sorted.
pub fn enumerate_connected_maximal(ctx: &PolygonContext) -> Result<Vec<ArcCollection>> {
    enumerate_connected_maximal_with_limit(ctx, DEFAULT_ENUMERATION_LIMIT)
}

pub fn enumerate_connected_maximal_with_limit(
    ctx: &PolygonContext,
    limit: usize,
) -> Result<Vec<ArcCollection>> {
    let mut all = enumerate_maximal_rigid_with_limit(ctx, limit)?;
    all.retain(|tc| tc.is_connected());
    Ok(all)
}

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

fn bron_kerbosch(adj: &[u128], r: u128, mut p: u128, mut x: u128, out: &mut Vec<u128>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    let pivot = bits(p | x)
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .unwrap();
    for v in bits(p & !adj[pivot]).collect::<Vec<_>>() {
        let bit = 1u128 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Maximal cliques; the top-level branching is split across threads and the
/// merged result is order-independent.
fn maximal_cliques(adj: &[u128]) -> Vec<u128> {
    let n = adj.len();
    if n == 0 {
        return vec![0];
    }
    let full: u128 = if n == 128 { !0 } else { (1u128 << n) - 1 };
    let workers = std::thread::available_parallelism()
        .map(|c| c.get())
        .unwrap_or(1)
        .min(8);
    if n < 16 || workers < 2 {
        let mut out = Vec::new();
        bron_kerbosch(adj, 0, full, 0, &mut out);
        return out;
    }
    // Vertex-ordered outer level: the subproblem of v finds exactly the
    // maximal cliques whose smallest member is v.
    let chunks: Vec<Vec<usize>> = (0..workers)
        .map(|w| (w..n).step_by(workers).collect())
        .collect();
    let results: Vec<Vec<u128>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    for &v in chunk {
                        let bit = 1u128 << v;
                        let below = bit - 1;
                        let above = full & !below & !bit;
                        bron_kerbosch(adj, bit, adj[v] & above, adj[v] & below, &mut out);
                    }
                    out
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    results.concat()
}
