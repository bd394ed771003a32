mod axioms;
mod complexes;
mod mhs;

pub use axioms::{
    check, check_ahc, check_mhc, dec_w, degeneration_witness, degenerates, only, s_w, strictness_failures,
    zigzag_transport, Axiom, AxiomVerdict, HodgeVerdict, Mode, Witness,
};
pub use complexes::MhsComplex;
pub use mhs::{
    deligne_splitting, ext, hom_mhs_rational, is_pure_hs, is_strict, odd_plane, tate, w_level, DeligneSplitting,
    ExtGroup, HomSpaces, MixedHodgeStructure, PurityFailure,
};
pub mod examples;
mod model;

pub use model::{
    carlson_glue, closure_check, cohomology_complex, cohomology_diagram, cohomology_mhs, homset, minimal_model, Homset,
    HomsetSummand, MinimalModel,
};
