//! Standard monomial theory for the invariants of SO_n and O_n on m copies
//! of the standard representation, symmetric determinantal varieties, doset
//! algebras and the adjoint SL₂ trace algebra, in exact arithmetic.

pub mod combinat;
pub mod detvar;
pub mod dosetalg;
pub mod error;
pub mod exactalg;
pub mod invariants;
pub mod report;
pub mod straighten;
pub mod rng;
pub mod sl2traces;
pub mod verify;

pub use error::{Error, Result};
pub use report::Report;
