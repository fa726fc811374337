//! Exact computations with the filtered and graded algebras of chamber
//! functions of real central hyperplane arrangements.
//!
//! ```
//! use vgalg::catalog;
//! use vgalg::exactla::Rationals;
//! use vgalg::vgalgebra::VgAlgebra;
//!
//! let pencil = catalog::load("pencil3")?.arrangement;
//! let vg = VgAlgebra::new(&pencil, Rationals, false)?;
//! assert_eq!(vg.gheav_bruteforce().len(), 8);
//! assert_eq!(vg.sqzero()?.len(), 4);
//! # Ok::<(), vgalg::Error>(())
//! ```

pub mod arrangement;
pub mod catalog;
pub mod compare;
pub mod error;
pub mod exactla;
pub mod omatroid;
pub mod random;
pub mod reconstruct;
pub mod verify;
pub mod vgalgebra;

pub use error::{Error, ErrorKind, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/arrangements.md")]
    mod arrangements {}
    #[doc = include_str!("../../../book/src/filtration.md")]
    mod filtration {}
    #[doc = include_str!("../../../book/src/gheav.md")]
    mod gheav {}
    #[doc = include_str!("../../../book/src/sqzero.md")]
    mod sqzero {}
    #[doc = include_str!("../../../book/src/reconstruction.md")]
    mod reconstruction {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
