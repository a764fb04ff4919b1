//! Extended twisted generalized Reed–Solomon codes: construction,
//! MDS/AMDS/NMDS classification and non-GRS certification over small finite
//! fields.
//!
//! Every algebraic criterion is paired with a ground-truth check (submatrix
//! rank or exhaustive weight enumeration), and the two are compared rather
//! than trusted.

mod conway;
pub mod code;
pub mod error;
pub mod etgrs;
pub mod field;
pub mod matrix;
pub mod nongrs;
pub mod symfun;

pub use code::{classify, grs_code, CodeParams, LinearCode, Verdict};
pub use error::{Error, Result};
pub use etgrs::{classify_full, search, ClassificationReport, EtgrsParams, Mode, SearchOptions};
pub use field::{FieldElement, FieldSpec};
pub use matrix::FieldMatrix;
pub use symfun::{SigmaConvention, SymContext};
