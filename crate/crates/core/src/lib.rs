//! Exact graded Koszul and de Rham homology for hypersurfaces.

pub mod derham;
pub mod error;
pub mod jacobian;
pub mod koszul;
pub mod linalg;
pub mod parser;
pub mod report;
pub mod ring;
pub mod sampling;
pub mod selftest;

pub use derham::{
    derham_homology, explicit_kernel_cycle, filtration, theta, verify_main_theorem, DeRhamHomology,
    FiltrationReport, LocalizedVector, PoleCap, PoleOrder, VerifyOptions,
};
pub use error::{Error, Result};
pub use jacobian::{jacobian_homology, milnor_profile, Hypersurface, MilnorProfile};
pub use koszul::{IndexSubset, KoszulLayer};
pub use parser::{format_polynomial, parse_polynomial};
pub use report::{emit_report, Format, TheoremStatus, VerificationReport};
pub use ring::{Polynomial, Rational, RingContext};
pub use sampling::Sampler;
pub use selftest::{run_selftest, SelftestReport};
