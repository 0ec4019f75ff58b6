//! Finite-set models of pushout-products and of the filtration of a free
//! prop along a cell attachment.

mod colimit;
mod cube;
mod filtration;

pub use colimit::{coequalizer, colimit, pushout, pushout_is_reflexive_coequalizer, Arrow, Colimit, ReflexivePair};
pub use cube::{
    iterated_identity_check, punctured_colimit, CubeDiagram, FiniteSetMap, IteratedReport, PuncturedColimit,
};
pub use filtration::{filtration_square_check, DegreeReport, FiltrationBounds, FiltrationReport, SquareLabel};
