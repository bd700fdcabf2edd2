pub mod arith;
pub mod error;
pub mod gram;
pub mod invariants;
pub mod linalg;
pub mod modp;
pub mod partitions;
pub mod qcartan;
pub mod qlaurent;
pub mod snf;

pub use error::{Error, Result};
pub use partitions::{BlockLabel, ColoredPartition, Multipartition, Partition};
pub use qlaurent::{LaurentPoly, RatLaurentPoly, Unit};
pub use snf::{InvariantMultiset, RingTag};
