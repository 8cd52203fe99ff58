//! Exact arithmetic for finitely generated abelian groups.

pub mod group;
pub mod hom;
pub mod lattice;
pub mod matrix;
pub mod snf;

pub use group::{element_order, present, ElementOrder, FgGroup, GroupElement, Presentation};
pub use hom::{direct_sum, embed_sublattice, ext_vanishes, is_exact_at, DirectSum, Hom, Subgroup};
pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use snf::{kernel_basis, smith_normal_form, solve, SmithForm};
