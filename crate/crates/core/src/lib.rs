//! Hull dimensions of linear codes over small finite fields, and monomial
//! transformations that re-engineer them.
//!
//! - [`gf`]: arithmetic in GF(p^m).
//! - [`matgf`]: exact dense linear algebra.
//! - [`code`]: linear codes, duals, hulls, monomial transforms.
//! - [`hulltune`]: hull reduction, hull chains, one-dimensional hulls,
//!   orthogonal bases and EAQECC parameters.
//! - [`purelcd`]: pure-LCD scans, the `[I_k : I_k]` family and the GF(2^t) scan.
//! - [`codefile`], [`witness`]: text formats for codes and replayable witnesses.

pub mod catalog;
pub mod code;
pub mod codefile;
pub mod error;
pub mod gf;
pub mod hulltune;
pub mod matgf;
pub mod purelcd;
pub mod random;
pub mod witness;

pub use code::{HullReport, LinearCode, MonomialTransform, DEFAULT_DISTANCE_BUDGET};
pub use error::{Error, Result};
pub use gf::{Elem, Field, FieldElement};
pub use hulltune::{ChainOptions, ChainReport, EaqeccParams, OrthogonalBasis};
pub use matgf::Matrix;
pub use purelcd::{PurityReport, ScanMode, ScanReport, Verdict};
pub use witness::Witness;
