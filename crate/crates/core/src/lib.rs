//! Exact enumeration and classification of lines on quartic surfaces in P³.
//!
//! The crate is organised bottom-up: [`field`] and [`poly`] provide exact arithmetic,
//! [`surface`] models quartics, lines and pencils of planes, [`census`] enumerates lines
//! over finite fields, [`fibration`] analyses the genus-one pencil induced by a line and
//! [`flecnodal`] tests contact-order-four points.

pub mod census;
pub mod error;
pub mod exec;
pub mod family;
pub mod fibration;
pub mod field;
pub mod flecnodal;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};
