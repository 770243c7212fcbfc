//! Rotation-system plumbing for a disc with marked points on the boundary
//! and non-crossing interior arcs.
//!
//! Edges are the `N` boundary segments (segment `i` joins points `i+1` and
//! `(i+1) mod N + 1`, clockwise) plus the arcs. At each marked point the
//! incident edges are ordered clockwise by the circular position of their
//! far endpoint, with the two boundary segments pinned at the ends of the
//! fan. Interior faces are the orbits of directed half-edges under
//! `next(u -> w) = predecessor of the in-edge in the rotation at w`, which
//! walks every interior face clockwise; the outer face is the orbit of any
//! counterclockwise boundary half-edge.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EdgeKind {
    Boundary,
    /// Interior arc by index.
    Arc(usize),
}

#[derive(Debug, Clone)]
pub(crate) struct Disc {
    points: usize,
    arcs: Vec<(usize, usize)>,
    /// Per point (1-based), incident edge ids in clockwise order.
    rotations: Vec<Vec<usize>>,
    kinds: Vec<EdgeKind>,
    ends: Vec<(usize, usize)>,
}

/// One maximal run of boundary segments on the border of a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Stretch {
    /// First marked point of the run (incident with a bounding arc, except
    /// in the arcless whole-disc face).
    pub start: usize,
    /// Last marked point of the run.
    pub end: usize,
    /// Number of boundary segments in the run.
    pub edges: usize,
    /// Marked points strictly inside the run; these carry no arcs at all.
    pub isolated: Vec<usize>,
}

/// An interior face of the dissection.
#[derive(Debug, Clone)]
pub(crate) struct Face {
    /// Bounding arc indices in clockwise walk order. When the face has
    /// exactly one stretch the list starts at the arc right after it.
    pub arcs: Vec<usize>,
    pub stretches: Vec<Stretch>,
    /// `(marked point, in-arc, out-arc)` for each corner of the walk whose
    /// two edges are both arcs.
    pub corners: Vec<(usize, usize, usize)>,
}

impl Face {
    pub fn is_closed(&self) -> bool {
        self.stretches.is_empty()
    }

    pub fn open_edges(&self) -> usize {
        self.stretches.iter().map(|s| s.edges).sum()
    }
}

pub(crate) fn pairs_cross(n: usize, d1: (usize, usize), d2: (usize, usize)) -> bool {
    let (a, b) = d1;
    let (c, d) = d2;
    if a == c || a == d || b == c || b == d {
        return false;
    }
    let width = (b + n - a) % n;
    let inside = |v: usize| {
        let p = (v + n - a) % n;
        0 < p && p < width
    };
    inside(c) != inside(d)
}

impl Disc {
    /// `arcs` must be in-range pairs of distinct points; duplicates and
    /// crossings are rejected.
    pub fn new(points: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        if points < 2 {
            return Err(Error::TooFewVertices(points));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(arcs.len());
        for &(i, j) in arcs {
            for v in [i, j] {
                if v < 1 || v > points {
                    return Err(Error::VertexOutOfRange {
                        vertex: v,
                        count: points,
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
        if norm.len() != arcs.len() {
            return Err(Error::InvalidQuiver("duplicate arc".into()));
        }
        for (i, &x) in norm.iter().enumerate() {
            for &y in &norm[i + 1..] {
                if pairs_cross(points, x, y) {
                    return Err(Error::CrossingArcs(x.0, x.1, y.0, y.1));
                }
            }
        }

        let mut kinds = Vec::with_capacity(points + norm.len());
        let mut ends = Vec::with_capacity(points + norm.len());
        for i in 0..points {
            kinds.push(EdgeKind::Boundary);
            ends.push((i + 1, (i + 1) % points + 1));
        }
        for (idx, &(a, b)) in norm.iter().enumerate() {
            kinds.push(EdgeKind::Arc(idx));
            ends.push((a, b));
        }

        let mut rotations = vec![Vec::new(); points + 1];
        for (v, rotation) in rotations.iter_mut().enumerate().skip(1) {
            // Clockwise fan at v: boundary toward v+1 first (key 0), arcs by
            // clockwise gap of the far endpoint, boundary toward v-1 last
            // (key N).
            let mut incident: Vec<(usize, usize)> = Vec::new();
            incident.push((0, v - 1));
            for (idx, &(a, b)) in norm.iter().enumerate() {
                if a == v || b == v {
                    let far = if a == v { b } else { a };
                    incident.push(((far + points - v) % points, points + idx));
                }
            }
            incident.push((points, (v + points - 2) % points));
            incident.sort_unstable();
            *rotation = incident.into_iter().map(|(_, e)| e).collect();
        }

        Ok(Self {
            points,
            arcs: norm,
            rotations,
            kinds,
            ends,
        })
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Directed half-edges are `2 * edge + dir`; `dir = 0` runs from the
    /// first end listed in `ends`.
    fn half_from(&self, he: usize) -> usize {
        let (a, b) = self.ends[he / 2];
        if he.is_multiple_of(2) {
            a
        } else {
            b
        }
    }

    fn half_to(&self, he: usize) -> usize {
        let (a, b) = self.ends[he / 2];
        if he.is_multiple_of(2) {
            b
        } else {
            a
        }
    }

    fn half_of(&self, edge: usize, from: usize) -> usize {
        if self.ends[edge].0 == from {
            2 * edge
        } else {
            2 * edge + 1
        }
    }

    fn next_half(&self, he: usize) -> usize {
        let w = self.half_to(he);
        let rot = &self.rotations[w];
        let pos = rot
            .iter()
            .position(|&e| e == he / 2)
            .expect("edge present in rotation");
        let out = rot[(pos + rot.len() - 1) % rot.len()];
        self.half_of(out, w)
    }

    /// Interior faces in deterministic discovery order.
    pub fn interior_faces(&self) -> Vec<Face> {
        let total = 2 * self.ends.len();
        let mut seen = vec![false; total];
        // The outer face is the orbit of boundary segment 0 walked
        // counterclockwise (from point 2 back to point 1).
        let outer_seed = self.half_of(0, self.ends[0].1);
        let mut faces = Vec::new();
        let mut first = true;
        for seed in std::iter::once(outer_seed).chain(0..total) {
            if seen[seed] {
                continue;
            }
            let mut walk = Vec::new();
            let mut he = seed;
            loop {
                seen[he] = true;
                walk.push(he);
                he = self.next_half(he);
                if he == seed {
                    break;
                }
            }
            if first {
                first = false; // outer face, dropped
                continue;
            }
            faces.push(self.face_from_walk(&walk));
        }
        faces
    }

    fn face_from_walk(&self, walk: &[usize]) -> Face {
        let len = walk.len();
        let is_arc = |he: usize| matches!(self.kinds[he / 2], EdgeKind::Arc(_));
        let arc_idx = |he: usize| match self.kinds[he / 2] {
            EdgeKind::Arc(i) => i,
            EdgeKind::Boundary => unreachable!(),
        };

        if !walk.iter().any(|&he| is_arc(he)) {
            // Whole disc, no arcs: one full-circle stretch.
            return Face {
                arcs: Vec::new(),
                stretches: vec![Stretch {
                    start: 1,
                    end: 1,
                    edges: self.points,
                    isolated: (1..=self.points).collect(),
                }],
                corners: Vec::new(),
            };
        }

        // Canonical starting position: an arc right after a boundary run if
        // one exists (unique when the face has a single stretch), otherwise
        // the minimal arc of a closed face.
        let after_run: Vec<usize> = (0..len)
            .filter(|&p| is_arc(walk[p]) && !is_arc(walk[(p + len - 1) % len]))
            .collect();
        let start = if after_run.is_empty() {
            (0..len)
                .filter(|&p| is_arc(walk[p]))
                .min_by_key(|&p| arc_idx(walk[p]))
                .unwrap()
        } else {
            *after_run.iter().min_by_key(|&&p| arc_idx(walk[p])).unwrap()
        };
        let rotated: Vec<usize> = (0..len).map(|i| walk[(start + i) % len]).collect();

        let mut arcs = Vec::new();
        let mut stretches = Vec::new();
        let mut corners = Vec::new();
        // Accumulates (start, current end, segment count, isolated) of the
        // open boundary run being scanned.
        let mut run: Option<(usize, usize, usize, Vec<usize>)> = None;
        for (i, &he) in rotated.iter().enumerate() {
            if is_arc(he) {
                if let Some((s, e, edges, isolated)) = run.take() {
                    stretches.push(Stretch {
                        start: s,
                        end: e,
                        edges,
                        isolated,
                    });
                }
                arcs.push(arc_idx(he));
                let prev = rotated[(i + len - 1) % len];
                if is_arc(prev) {
                    corners.push((self.half_from(he), arc_idx(prev), arc_idx(he)));
                }
            } else {
                match run.as_mut() {
                    None => run = Some((self.half_from(he), self.half_to(he), 1, Vec::new())),
                    Some((_, e, edges, isolated)) => {
                        isolated.push(*e);
                        *e = self.half_to(he);
                        *edges += 1;
                    }
                }
            }
        }
        if let Some((s, e, edges, isolated)) = run.take() {
            stretches.push(Stretch {
                start: s,
                end: e,
                edges,
                isolated,
            });
        }
        Face {
            arcs,
            stretches,
            corners,
        }
    }
}
