pub mod characters;
pub mod coweights;
pub mod error;
pub mod exactalg;
pub mod oldforms;
pub mod rankin;
pub mod sampling;
pub mod verify;
pub mod whittaker;

pub use error::{Error, Result};
pub use exactalg::{Coeff, Rational, SymLaurent, TruncSeries, VLaurent};
