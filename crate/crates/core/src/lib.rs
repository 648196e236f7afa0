//! Exact representation, verification, transformation and search of
//! periodic unit-cube tilings.
//!
//! A tiling of `R^n` by translates of `[0,1)^n` that is periodic with
//! integer period `L` is stored as a [`TilingInstance`]: the finitely many
//! translation classes in the box `[0, L_1) x ... x [0, L_n)`, with exact
//! rational coordinates. On top of that the crate provides
//!
//! * [`verify`] (pairwise Keller criterion plus a volume count) and an
//!   independent rasterizing [`exact_cover_oracle`],
//! * natural codes, code slices and recoding ([`codes`]),
//! * isomorphism witnesses and canonical keys ([`iso`]),
//! * column, l-column and twin-face detection ([`detect`]),
//! * translations, slab shifts, coordinate permutations and extrusion
//!   ([`transform`]),
//! * the period-2 discrete model with exhaustive enumeration, seeded
//!   sampling and DIMACS export ([`discrete`]).

pub mod cli;
pub mod codes;
pub mod detect;
pub mod discrete;
pub mod instance;
pub mod iso;
pub mod rational;
pub mod transform;
pub mod verify;

pub use codes::{apply_code, build_code_table, chain_fullness_check, recode, slice, CodeTable};
pub use detect::{
    column_census, find_columns, find_l_columns, find_twin_faces, ColumnWitness, FaceWitness,
};
pub use discrete::{
    enumerate_tilings, export_dimacs, from_discrete, sample_tiling, to_exact, DiscreteTiling,
    EnumerateOptions, KellerModel, SearchBudget,
};
pub use instance::{parse_instance, TileVector, TilingInstance};
pub use iso::{are_isomorphic, canonical_form, CanonicalKey, IsoWitness};
pub use rational::Rational;
pub use transform::{extrude, permute_coords, slab_shift, translate};
pub use verify::{
    check_distinguishable, exact_cover_oracle, verify, OracleConfig, VerifyFailure, VerifyReport,
};
