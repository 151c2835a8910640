//! Alexander polynomials of pretzel links and the obstructions that rule out
//! cyclic and finite Dehn surgeries on hyperbolic Montesinos knots.
//!
//! The crate is layered bottom-up:
//!
//! * [`laurent`]: exact integer Laurent polynomials in `t^{1/2}`.
//! * [`pretzel`]: pretzel link and Montesinos descriptions, strand tracing,
//!   family recognition.
//! * [`alexander`]: the skein-resolution engine with torus-link base cases.
//! * [`oracle`]: an independent Fox-calculus computation used to check the
//!   engine.
//! * [`obstruction`]: coefficient forms, fiberedness certificate and the
//!   rank-formula arithmetic.
//! * [`classify`]: the staged classification pipeline.
//! * [`cli`]: the command-line front end and grid runners.

pub mod alexander;
pub mod classify;
pub mod cli;
pub mod error;
pub mod grid;
pub mod laurent;
pub mod obstruction;
pub mod oracle;
pub mod pretzel;

pub use error::{Error, Result};
pub use laurent::{f_poly, LaurentPoly};
pub use pretzel::{FamilyTag, MontesinosDescription, PretzelLink};
