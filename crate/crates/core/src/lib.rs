//! Exact verification of the weak Lefschetz property for almost complete
//! intersections generated by uniform powers of general linear forms.
//!
//! The crate has three layers: exact series arithmetic and difference
//! analysis (`series`, `delta`), exact linear algebra and apolarity over a
//! prime field (`field`, `linalg`, `monomial`, `poly`), and the engines
//! that combine them into Hilbert functions, socle certificates, witnesses
//! and the final classification (`hilbert`, `certificate`, `witness`,
//! `classify`).

pub mod cache;
pub mod certificate;
pub mod classify;
pub mod cover;
pub mod delta;
pub mod field;
pub mod hilbert;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod report;
pub mod series;
pub mod witness;
