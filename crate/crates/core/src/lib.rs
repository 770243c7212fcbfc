//! Combinatorics of `(m+1)`-diagonal dissections of a marked polygon:
//! rigid arc collections and their enumeration, tiling algebras as gentle
//! quivers with relations, the dissection reconstruction algorithm, and
//! the derived invariants (thread pairs, Gorenstein dimension, cuts).

mod disc;
pub mod error;
pub mod invariants;
pub mod orbit;
pub mod polygon;
pub mod quiver;
pub mod reconstruct;
pub mod rigid;

pub use error::{Error, Result};
pub use polygon::{Diagonal, PolygonContext};
