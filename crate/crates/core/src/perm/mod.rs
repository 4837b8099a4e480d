//! Permutation groups on at most 64 points.

mod group;
mod io;
mod permutation;

pub use group::{mu_of_group, MuReport, PermGroup, DEFAULT_CAP};
pub use io::GroupFile;
pub use permutation::{Permutation, MAX_DEGREE};
