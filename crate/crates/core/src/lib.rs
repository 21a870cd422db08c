//! Finite quandles, braid actions on morphism tuples, Wirtinger colorings,
//! quandle homology and extended cocycle invariants of knots.

pub mod braid;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod invariants;
pub mod knots;
pub mod quandle;
mod solve;

pub use braid::{closure_diagram, fixed_tuples, BraidWord, Letter};
pub use diagram::{extended_colorings, wirtinger_colorings, Coloring, ExtendedColoring, KnotDiagram};
pub use error::{Error, Result};
pub use homology::{cocycle_basis2, cohomology2, homology, smith_normal_form, AbelianGroup, Cocycle2, IntegerMatrix};
pub use invariants::{classical_invariant, extended_invariant, partial_invariant, FiniteAbelianGroup, GroupRingElement};
pub use quandle::{FiniteQuandle, PointedQuandle, QuandleMorphism, Sign};
