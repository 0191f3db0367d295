//! Hodge splittings, the Kuranishi map and the polynomial presentation of
//! the Kuranishi functor.

pub mod map;
pub mod poly;
pub mod split;

pub use map::Kuranishi;
pub use poly::{kuranishi_polynomials, TruncatedMap, DEFAULT_ORDER};
pub use split::HodgeSplit;
