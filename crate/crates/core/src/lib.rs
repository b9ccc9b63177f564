//! Burnside rings of hyperoctahedral groups and their Mackey-type
//! subalgebras, computed exactly from signed permutations.

pub mod burnside;
pub mod compositions;
pub mod error;
pub mod group;
pub mod linalg;
pub mod marks;
pub mod mr_algebra;
pub mod subgroups;
pub mod verify;

pub use burnside::{BurnsideAlgebra, BurnsideElement};
pub use compositions::{DoublePartition, DpOrder, SignedComposition};
pub use error::{Error, Result};
pub use group::{Generator, GroupTable, Root, SignedPermutation};
pub use linalg::{RatMatrix, Rational};
pub use marks::MarkTable;
pub use mr_algebra::{MrAlgebra, MrElement};
pub use subgroups::{Hyperoctahedral, ReflectionSubgroup};
