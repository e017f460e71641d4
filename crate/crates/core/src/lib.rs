//! Representations of the welded braid group WB_n: exact and numeric scalar
//! rings, matrices, the free-group action, the representation families and
//! the classification algorithms built on them.

pub mod analysis;
pub mod classify;
pub mod eigen;
pub mod error;
pub mod families;
pub mod free_action;
pub mod json;
pub mod matrix;
pub mod representation;
pub mod scalar;
pub mod word;

pub use error::{Error, Result};
pub use classify::{
    extension_search, identify_extension, verify_pairwise_distinctness, Classification, DistinctnessReport,
    RestrictionKind, SearchConfig, SearchReport, Theorem,
};
pub use families::{make_family, Family, FamilyParams};
pub use free_action::{word_to_aut, words_equal, FreeAut, FreeWord};
pub use matrix::Matrix;
pub use representation::{AnyRep, EvalRep, FamilyLabel, Representation, Restrict};
pub use scalar::{CycRat, Field, GaussRat, Laurent, ParamValue, Scalar, C64};
pub use word::{GenKind, Generator, GroupWord, Relator};
