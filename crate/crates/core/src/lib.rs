pub mod bits;
pub mod error;
pub mod group;
pub mod field;
pub mod poset;
pub mod goursat;
pub mod linalg;
pub mod lambda;
pub mod ssc;
pub mod gamma;
pub mod suites;
