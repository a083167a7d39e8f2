//! Quiver algebras of colocal type and their lattices of subobject-closed
//! subcategories.
//!
//! The crate decides colocal type for finite-dimensional monomial quiver
//! algebras `kQ/I` in two ways (the Ext-quiver conditions C1 to C3, and the
//! structural "string algebra, out-degree at most one" criterion), and builds
//! the lattice of subobject-closed subcategories both by brute force over
//! string modules and as a product of box-bounded Young lattices.

pub mod analysis;
pub mod corpus;
pub mod lattice;
pub mod quiver;
pub mod strings;
pub mod young;
