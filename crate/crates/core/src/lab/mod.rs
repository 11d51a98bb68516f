//! Reproductions of exact claims, the linear-forms minimum and the
//! covering-product explorer.

pub mod random;
pub mod linforms;
pub mod verify;
pub mod explore;
