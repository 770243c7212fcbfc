//! Circular arithmetic on the marked polygon and the elementary predicates
//! on its interior arcs.
//!
//! The polygon for parameters `(n, m)` has `N = (m+1)(n+1) - 2` marked
//! points, labelled `1..=N` clockwise. All vertex arithmetic is modulo `N`
//! with representatives `1..=N`. An arc `{i,j}` is admissible when the
//! inclusive clockwise vertex count from `i` to `j` is divisible by `m+1`;
//! for `m = 1` this admits arcs between adjacent marked points, which are
//! interior arcs distinct from the boundary edge joining the same points.

use std::fmt;

use crate::error::{Error, Result};

/// The pair `(n, m)` together with the derived vertex count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolygonContext {
    n: usize,
    m: usize,
    vertex_count: usize,
}

impl PolygonContext {
    /// `n >= 2` (there are no rigid collections for `n = 1`) and `m >= 1`.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m < 1 {
            return Err(Error::DegreeTooSmall(m));
        }
        if n < 2 {
            return Err(Error::RankTooSmall(n));
        }
        let vertex_count = (m + 1) * (n + 1) - 2;
        debug_assert!(vertex_count >= 4);
        debug_assert_eq!(vertex_count % (m + 1), m - 1);
        Ok(Self { n, m, vertex_count })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// Canonical representative of `v` in `1..=N`.
    pub fn reduce(&self, v: i64) -> usize {
        let n = self.vertex_count as i64;
        ((v - 1).rem_euclid(n) + 1) as usize
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if (1..=self.vertex_count).contains(&v) {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                count: self.vertex_count,
            })
        }
    }

    /// Clockwise gap from `i` to `j`, in `0..N`.
    fn gap(&self, i: usize, j: usize) -> usize {
        (j + self.vertex_count - i) % self.vertex_count
    }

    /// Number of vertices met travelling clockwise from `i` to `j`, both
    /// endpoints included. `arc_count(i, i) = 1` and for `i != j` the two
    /// directions sum to `N + 2`.
    pub fn arc_count(&self, i: usize, j: usize) -> Result<usize> {
        self.check_vertex(i)?;
        self.check_vertex(j)?;
        Ok(self.gap(i, j) + 1)
    }

    /// Whether the sequence, read cyclically, is strictly clockwise.
    pub fn clockwise_order(&self, vertices: &[usize]) -> Result<bool> {
        if vertices.len() < 3 {
            return Err(Error::TooFewVertices(vertices.len()));
        }
        let mut seen = vec![false; self.vertex_count + 1];
        for &v in vertices {
            self.check_vertex(v)?;
            if seen[v] {
                return Err(Error::DuplicateVertex(v));
            }
            seen[v] = true;
        }
        let base = vertices[0];
        let mut prev = 0;
        for &v in &vertices[1..] {
            let pos = self.gap(base, v);
            if pos <= prev {
                return Ok(false);
            }
            prev = pos;
        }
        Ok(true)
    }

    /// Whether `{i,j}` is an admissible arc: the clockwise vertex count from
    /// `i` to `j` is divisible by `m+1` (equivalently the clockwise gap is
    /// `m` modulo `m+1`; the complementary side is then divisible as well).
    pub fn is_diagonal(&self, i: usize, j: usize) -> Result<bool> {
        Ok(i != j && self.arc_count(i, j)? % (self.m + 1) == 0)
    }

    pub fn diagonal(&self, i: usize, j: usize) -> Result<Diagonal> {
        if self.is_diagonal(i, j)? {
            Ok(Diagonal::normalized(i, j))
        } else {
            Err(Error::NotADiagonal { i, j })
        }
    }

    /// A diagonal is short when one of its clockwise gaps is exactly `m`.
    pub fn is_short(&self, d: Diagonal) -> bool {
        self.gap(d.a, d.b) == self.m || self.gap(d.b, d.a) == self.m
    }

    /// Strict interleaving of endpoint pairs; diagonals sharing an endpoint
    /// never cross.
    pub fn crosses(&self, d1: Diagonal, d2: Diagonal) -> bool {
        if d1.shares_endpoint(d2) {
            return false;
        }
        let width = self.gap(d1.a, d1.b);
        let inside = |v: usize| {
            let p = self.gap(d1.a, v);
            0 < p && p < width
        };
        inside(d2.a) != inside(d2.b)
    }

    /// Two disjoint, non-crossing diagonals where some endpoint `v` of `d1`
    /// has `d2` incident with `v + k` or `v - k`. Symmetric in `d1`, `d2`.
    pub fn k_neighbours(&self, d1: Diagonal, d2: Diagonal, k: usize) -> Result<bool> {
        if k < 1 || k > self.m {
            return Err(Error::DegreeOutOfRange { k, m: self.m });
        }
        if d1.shares_endpoint(d2) || self.crosses(d1, d2) {
            return Ok(false);
        }
        for v in [d1.a, d1.b] {
            let fwd = self.reduce(v as i64 + k as i64);
            let bwd = self.reduce(v as i64 - k as i64);
            if d2.has_endpoint(fwd) || d2.has_endpoint(bwd) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// All admissible arcs, sorted lexicographically. There are `n * N / 2`.
    pub fn all_diagonals(&self) -> Vec<Diagonal> {
        let mut out = Vec::new();
        for i in 1..=self.vertex_count {
            for j in i + 1..=self.vertex_count {
                if self.is_diagonal(i, j).unwrap() {
                    out.push(Diagonal::normalized(i, j));
                }
            }
        }
        out
    }
}

/// An unordered pair of marked points, stored with the smaller label first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagonal {
    a: usize,
    b: usize,
}

impl Diagonal {
    pub(crate) fn normalized(i: usize, j: usize) -> Self {
        debug_assert_ne!(i, j);
        Self {
            a: i.min(j),
            b: i.max(j),
        }
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.a, self.b)
    }

    pub fn has_endpoint(&self, v: usize) -> bool {
        self.a == v || self.b == v
    }

    pub fn shares_endpoint(&self, other: Diagonal) -> bool {
        self.has_endpoint(other.a) || self.has_endpoint(other.b)
    }

    /// The endpoint other than `v`.
    pub fn other(&self, v: usize) -> usize {
        if v == self.a {
            self.b
        } else {
            self.a
        }
    }

    pub fn pair(&self) -> (usize, usize) {
        (self.a, self.b)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}
