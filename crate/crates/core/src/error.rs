use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank n must be at least 2, got {0}")]
    RankTooSmall(usize),

    #[error("rigidity degree m must be at least 1, got {0}")]
    DegreeTooSmall(usize),

    #[error("vertex {vertex} out of range 1..={count}")]
    VertexOutOfRange { vertex: usize, count: usize },

    #[error("{{{i},{j}}} is not an (m+1)-diagonal")]
    NotADiagonal { i: usize, j: usize },

    #[error("duplicate vertex {0}")]
    DuplicateVertex(usize),

    #[error("need at least 3 vertices, got {0}")]
    TooFewVertices(usize),

    #[error("degree k = {k} outside 1..={m}")]
    DegreeOutOfRange { k: usize, m: usize },

    #[error("arcs {{{0},{1}}} and {{{2},{3}}} cross")]
    CrossingArcs(usize, usize, usize, usize),

    #[error("collection is not m-rigid")]
    NotRigid,

    #[error("tiling is not connected")]
    NotConnected,

    #[error("quiver is not gentle")]
    NotGentle,

    #[error("quiver has a cycle that is not oriented and relation-full")]
    CycleNotRelationFull,

    #[error("quiver is not connected")]
    QuiverNotConnected,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("tile does not match any tile class")]
    UnclassifiableTile,

    #[error("cut arrow {0} does not lie on a simple cycle")]
    CutArrowNotOnCycle(usize),

    #[error("work bound exceeded: {got} items > limit {limit}")]
    ResourceBound { got: usize, limit: usize },
}
