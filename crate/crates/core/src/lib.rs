//! Certification of unobstructed fixed-determinant deformation problems for
//! Hilbert newforms over real quadratic fields.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, report rendering
//! and the command-line tool live in the `hmfdef` companion crate.

#![no_std]

extern crate alloc;

pub mod arith;
pub mod audit;
pub mod error;
pub mod image;
pub mod local;
pub mod newform;
pub mod quadfield;
pub mod residue;
pub mod selmer;
pub mod verdict;

pub use error::Error;
pub use newform::{CoeffPrime, FormSet, NewformRecord};
pub use quadfield::{FieldElement, PrimeIdeal, QuadField, SplitType};
pub use residue::{Fq, FqElem};
pub use verdict::Status;
