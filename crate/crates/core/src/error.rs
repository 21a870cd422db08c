use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("quandle table is empty")]
    EmptyTable,
    #[error("table row {row} has length {len}, expected {order}")]
    RaggedTable { row: usize, len: usize, order: usize },
    #[error("entry {a}*{b} = {value} is out of range for order {order}")]
    EntryOutOfRange { a: usize, b: usize, value: usize, order: usize },
    #[error("axiom Q1 fails: {a}*{a} = {value}")]
    Idempotence { a: usize, value: usize },
    #[error("axiom Q2 fails: column {b} is not a permutation ({first}*{b} = {second}*{b} = {value})")]
    RightInvertibility { b: usize, first: usize, second: usize, value: usize },
    #[error("axiom Q3 fails at a={a}, b={b}, c={c}")]
    Distributivity { a: usize, b: usize, c: usize },
    #[error("element {elem} is out of range for order {order}")]
    ElementOutOfRange { elem: usize, order: usize },
    #[error("{t} is not a unit modulo {n}")]
    NonUnitParameter { n: usize, t: usize },
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("map is not a quandle morphism: f({a}*{b}) != f({a})*f({b})")]
    NotAMorphism { a: usize, b: usize },
    #[error("map has length {len}, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("permutation is not an automorphism at ({a}, {b})")]
    NotAnAutomorphism { a: usize, b: usize },
    #[error("unknown quandle name `{0}`")]
    UnknownQuandle(String),
    #[error("malformed braid `{0}`")]
    MalformedBraid(String),
    #[error("generator {index} is out of range for {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("copy index {copy} exceeds strand count {strands}")]
    CopyOutOfRange { copy: usize, strands: usize },
    #[error("braid strand counts differ ({left} vs {right})")]
    StrandMismatch { left: usize, right: usize },
    #[error("cannot destabilize: {0}")]
    Destabilize(String),
    #[error("closure has {components} components, expected a knot")]
    NotAKnot { components: usize },
    #[error("braid has {len} letters, exceeding the cap of {cap}")]
    WordTooLong { len: usize, cap: usize },
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("coloring does not satisfy the relation at crossing {crossing}")]
    InvalidColoring { crossing: usize },
    #[error("degree {degree} is outside 1..={cap}")]
    DegreeOutOfRange { degree: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cocycle table has wrong shape for order {order}")]
    CocycleShape { order: usize },
    #[error("not a 2-cocycle: {0}")]
    NotACocycle(String),
    #[error("elements {elems:?} do not form an orbit block")]
    NotAnOrbit { elems: Vec<usize> },
    #[error("N_i depends on the chosen element: x={x} gives {at_x:?}, x={y} gives {at_y:?}")]
    NiDependsOnElement { x: usize, at_x: Vec<u64>, y: usize, at_y: Vec<u64> },
    #[error("group mismatch: {0:?} vs {1:?}")]
    GroupMismatch(Vec<u64>, Vec<u64>),
    #[error("json: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}
