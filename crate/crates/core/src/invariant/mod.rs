//! Invariant polynomials of classical algebras presented on a maximal
//! torus, algebra maps between them and the commuting-diagram check.

mod diagram;
mod maps;
mod presentation;

pub use diagram::{
    check_diagram_identities, place, sl_chain_diagram, sl_family_diagram, so_family_diagram,
    so_family_enlarged_diagram, DiagramCheck, DiagramData,
};
pub use maps::{enlarge, phi_sl_family, phi_so_family, AlgebraMap, TorusEmbedding};
pub use presentation::{
    build_presentation, build_presentation_with, char_poly_symbolic, pfaffian, Generator,
    InvariantPresentation, TorusConvention,
};
