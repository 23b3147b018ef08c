pub mod delta;
pub mod monoid;
pub mod nerves;
pub mod sset;
pub mod homology;
