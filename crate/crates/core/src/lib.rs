//! Generalized inverses of square complex matrices, centred on the weak CMP
//! inverse `A†AXAA†` built from a minimal rank weak Drazin inverse `X`.
//!
//! Module map:
//!
//! * [`matcore`]: dense complex matrices, SVD, rank, tolerance policy.
//! * [`decomp`]: Hartwig–Spindelböck decomposition and the matrix index.
//! * [`classical`]: Moore–Penrose, Drazin, group, core, DMP, MPD, CMP.
//! * [`weakdrazin`]: certificates and sampling of minimal rank weak Drazin inverses.
//! * [`weakinv`]: weak CMP / MPD / DMP inverses and their characterizations.
//! * [`classify`]: matrix classes, equivalence checkers, structured generators.
//! * [`fixtures`]: small hand-checked matrices with their known inverses.
//! * [`suites`], [`report`], [`io`]: verification suites and the JSON formats used by the CLI.

pub mod classical;
pub mod classify;
pub mod decomp;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod matcore;
pub mod report;
pub mod suites;
pub mod weakdrazin;
pub mod weakinv;

pub use error::{Error, Result, Side};
pub use matcore::{Mat, Tol, C64};
