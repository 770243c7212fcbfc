//! The rotation and translation actions on diagonals, the degree-k
//! extension predicate, and the translation quiver they generate.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::polygon::{Diagonal, PolygonContext};

/// Rotate both endpoints `k` steps clockwise (negative `k` allowed).
pub fn shift(ctx: &PolygonContext, d: Diagonal, k: i64) -> Diagonal {
    let (i, j) = d.endpoints();
    let a = ctx.reduce(i as i64 + k);
    let b = ctx.reduce(j as i64 + k);
    debug_assert!(ctx.is_diagonal(a, b).unwrap());
    Diagonal::normalized(a, b)
}

/// The translation: `k` applications of the `m+1`-step counterclockwise
/// rotation, so `tau(d, 1) = shift(d, -(m+1))`.
pub fn tau(ctx: &PolygonContext, d: Diagonal, k: i64) -> Diagonal {
    shift(ctx, d, -k * (ctx.degree() as i64 + 1))
}

/// Degree-`k` extension test with the hammock of `a`: nonzero iff one of
///
/// 1. `b` is a k-neighbour of `a` incident with `a2 + k`,
/// 2. `b` is a k-neighbour of `a` incident with `a1 + k`,
/// 3. `b` crosses `a` with `a1, b1, a2, b2` clockwise and the clockwise
///    vertex counts `[a_i, b_i]` both of the form `x(m+1) + k` with `x >= 1`,
/// 4. `b = shift(a, k)`,
///
/// where `a = {a1, a2}` with `a1 < a2`. Conditions 1 and 2 inherit the
/// shared-endpoint exclusion from `k_neighbours`.
pub fn ext_nonzero(ctx: &PolygonContext, b: Diagonal, a: Diagonal, k: usize) -> Result<bool> {
    let m = ctx.degree();
    if k < 1 || k > m {
        return Err(Error::DegreeOutOfRange { k, m });
    }
    let (a1, a2) = a.endpoints();

    if b == shift(ctx, a, k as i64) {
        return Ok(true);
    }

    if ctx.k_neighbours(a, b, k)? {
        let w1 = ctx.reduce(a2 as i64 + k as i64);
        let w2 = ctx.reduce(a1 as i64 + k as i64);
        if b.has_endpoint(w1) || b.has_endpoint(w2) {
            return Ok(true);
        }
    }

    if ctx.crosses(a, b) {
        let (p, q) = b.endpoints();
        // b1 is the endpoint of b inside the clockwise arc from a1 to a2.
        let width = ctx.arc_count(a1, a2)? - 1;
        let pos = ctx.arc_count(a1, p)? - 1;
        let (b1, b2) = if 0 < pos && pos < width {
            (p, q)
        } else {
            (q, p)
        };
        let fits = |count: usize| count >= m + 1 + k && (count - k).is_multiple_of(m + 1);
        if fits(ctx.arc_count(a1, b1)?) && fits(ctx.arc_count(a2, b2)?) {
            return Ok(true);
        }
    }

    Ok(false)
}

/// The stable translation quiver on all diagonals: an arrow `D -> D'`
/// whenever `D'` is `D` rotated `m+1` steps clockwise around a shared
/// endpoint (the moving endpoint must not pass the fixed one).
#[derive(Debug, Clone)]
pub struct ArQuiver {
    vertices: Vec<Diagonal>,
    arrows: Vec<(usize, usize)>,
    translation: Vec<usize>,
}

impl ArQuiver {
    pub fn vertices(&self) -> &[Diagonal] {
        &self.vertices
    }

    /// Arrows as index pairs into `vertices`, sorted.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn index_of(&self, d: Diagonal) -> Option<usize> {
        self.vertices.binary_search(&d).ok()
    }

    pub fn has_arrow(&self, from: Diagonal, to: Diagonal) -> bool {
        match (self.index_of(from), self.index_of(to)) {
            (Some(s), Some(t)) => self.arrows.binary_search(&(s, t)).is_ok(),
            _ => false,
        }
    }

    /// Image of a vertex under the translation.
    pub fn translate(&self, d: Diagonal) -> Option<Diagonal> {
        self.index_of(d).map(|i| self.vertices[self.translation[i]])
    }

    pub fn out_degree(&self, d: Diagonal) -> usize {
        match self.index_of(d) {
            Some(i) => self.arrows.iter().filter(|&&(s, _)| s == i).count(),
            None => 0,
        }
    }

    pub fn in_degree(&self, d: Diagonal) -> usize {
        match self.index_of(d) {
            Some(i) => self.arrows.iter().filter(|&&(_, t)| t == i).count(),
            None => 0,
        }
    }
}

pub fn ar_quiver(ctx: &PolygonContext) -> ArQuiver {
    let vertices = ctx.all_diagonals();
    let index: BTreeMap<Diagonal, usize> =
        vertices.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let n = ctx.vertex_count();
    let step = ctx.degree() + 1;
    let mut arrows = Vec::new();
    for (i, &dv) in vertices.iter().enumerate() {
        let (x, y) = dv.endpoints();
        for (fixed, moving) in [(x, y), (y, x)] {
            // Rotation around `fixed` is admissible while the moving
            // endpoint stays short of the fixed one.
            let g = (moving + n - fixed) % n;
            if g + step < n {
                let target = Diagonal::normalized(fixed, ctx.reduce(moving as i64 + step as i64));
                arrows.push((i, index[&target]));
            }
        }
    }
    arrows.sort_unstable();
    arrows.dedup();
    let translation = vertices.iter().map(|&dv| index[&tau(ctx, dv, 1)]).collect();
    ArQuiver {
        vertices,
        arrows,
        translation,
    }
}
