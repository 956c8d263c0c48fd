use thiserror::Error;

use crate::poset::ElemId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph has {n} vertices; at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    /// `u` does not dominate `v`: `missing` is adjacent to `v` but not to `u`.
    #[error("{u} does not dominate {v}: {missing} is a neighbor of {v} but not of {u}")]
    DominationViolation { v: usize, u: usize, missing: usize },

    #[error("fold witness must use two distinct vertices (got v = u = {0})")]
    DegenerateWitness(usize),

    #[error("graph admits no fold deleting vertex {0}")]
    NoFold(usize),

    #[error("graph is stiff: it admits no fold")]
    Stiff,

    #[error("map is not a graph homomorphism: edge ({0}, {1}) is sent to a non-edge")]
    NotHomomorphism(usize, usize),

    #[error("map has length {got}, expected {expected}")]
    MapLength { got: usize, expected: usize },

    #[error("cell limit of {limit} exceeded after {partial} cells")]
    ResourceLimit { limit: usize, partial: usize },

    #[error("{what} would have {count} elements; the limit is {limit}")]
    TooLarge { what: &'static str, count: u128, limit: u128 },

    #[error("unknown element id {0}")]
    UnknownId(ElemId),

    #[error("duplicate element id {0}")]
    DuplicateId(ElemId),

    #[error("cover relation has a cycle through element {0}")]
    CyclicCovers(ElemId),

    #[error("cover ({0}, {1}) is implied by transitivity")]
    TransitiveCover(ElemId, ElemId),

    #[error("closure law `{law}` fails at element {witness}")]
    ClosureLaw { law: &'static str, witness: ElemId },

    #[error("pair ({0}, {1}) is not a cover")]
    NotACover(ElemId, ElemId),

    #[error("element {0} appears in more than one matched pair")]
    NotAMatching(ElemId),

    #[error("{0}")]
    Contract(String),

    #[error("integer overflow during Smith normal form; use GF(2) coefficients")]
    Overflow,

    #[error("{what} = {got} is outside the supported range {lo}..={hi}")]
    Guard { what: &'static str, got: usize, lo: usize, hi: usize },
}
