//! Exact three-gap structure of the rotation orbit `{n * alpha}` on the unit circle.
//!
//! * [`numeric`]: exact angles and fractional parts in a real quadratic field.
//! * [`gap`]: `first`, `last`, the successor map `after`, and the gap census.
//! * [`oracle`]: sorted-orbit ground truth and the verification harness.
//! * [`report`] and [`svg`]: machine-readable output and circle diagrams.

pub mod error;
pub mod gap;
pub mod numeric;
pub mod oracle;
pub mod report;
pub mod svg;

pub use error::{GapError, Result};
pub use gap::{
    after_closed_form, after_inductive, first, gap_census, last, particular_case_holds,
    AfterBranch, AfterTable, CircleConfig, GapClass, GapKind, GapReport, Orbit, PointIndex,
};
pub use numeric::{parse_angle, Angle, FieldValue};
