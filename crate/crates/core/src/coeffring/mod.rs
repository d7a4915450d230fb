//! The coefficient ring `Z[q^(1/2), q^(-1/2)]` and its one-sided completions.

mod laurent;
mod series;
mod specialize;

pub use laurent::Laurent;
pub use series::{Direction, TruncSeries};
pub use specialize::Specialized;
