//! Exact computation of the spectral sequence of a bounded double complex
//! filtered by columns.
//!
//! * [`exactlin`]: dense matrices and subspaces over `ℚ` and `𝔽_p`.
//! * [`bicomplex`]: double complexes, validation, generators, regrading and
//!   the JSON file format.
//! * [`filtration`]: the total complex, its filtration and the spaces
//!   `Z^{p,q}_r`, `B^{p,q}_r`.
//! * [`pages`]: the pages `E_r` with their differentials, `E_∞` and the
//!   degeneration page.
//! * [`obstruction`]: the d'd''-lemma, the comparison maps `α`, `β` and the
//!   obstruction sets `ℰ^{p,q}_r` with witnesses.
//! * [`harness`]: seeded property campaigns with shrinking.
//! * [`cli`]: the `specseq` command-line front end.
//!
//! ```
//! use specseq::bicomplex::make_square;
//! use specseq::exactlin::Rationals;
//! use specseq::filtration::totalize;
//! use specseq::pages::degeneration_page;
//!
//! let square = make_square(Rationals, 0, 0);
//! let ft = totalize(&square).unwrap();
//! assert_eq!(degeneration_page(&ft).unwrap(), 1);
//! ```

pub mod bicomplex;
pub mod cli;
pub mod exactlin;
pub mod fault;
pub mod filtration;
pub mod harness;
pub mod obstruction;
pub mod pages;

use filtration::PageIndex;

/// A consistency check inside the engine failed. These never occur for
/// valid input unless a kernel routine is wrong.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InternalError {
    #[error("E^{{{p},{q}}}_{r}: denominator is not contained in numerator")]
    IllDefinedQuotient { p: i32, q: i32, r: PageIndex },
    #[error("d_{r} at ({p},{q}) does not map the denominator into the target denominator")]
    DenominatorNotPreserved { p: i32, q: i32, r: PageIndex },
    #[error("d_{r} at ({p},{q}) does not map cycles into the target cycles")]
    DifferentialLeavesCycles { p: i32, q: i32, r: PageIndex },
    #[error("{map}_{{{p},{q},{r}}}: comparison spaces are not nested")]
    IllDefinedNaturalMap { map: &'static str, p: i32, q: i32, r: i32 },
    #[error("witness for E^{{{p},{q}}}_{r} failed independent verification")]
    UnsoundWitness { p: i32, q: i32, r: usize },
}
