//! De Rham homology of `R_f`: normal forms and pole orders, truncated
//! homology, the maps `θ` and `η_ν`, the pole-order filtration, and the
//! verification pipeline for the vanishing theorem.

pub mod filtration;
pub mod homology;
pub mod localized;
pub mod theta;
pub mod verify;

pub use filtration::{explicit_kernel_cycle, filtration, FiltrationLevel, FiltrationReport};
pub use homology::{auto_pole_cap, derham_homology, ClassRepresentative, DeRhamHomology, PoleCap};
pub use localized::{LocalizedVector, PoleOrder};
pub use theta::{theta, ThetaImage};
pub use verify::{verify_main_theorem, VerifyOptions};
