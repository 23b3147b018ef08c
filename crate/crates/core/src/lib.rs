//! Exact-arithmetic algebra of Hermitian Z/2-Mackey functors.
//!
//! The crate is organized in layers:
//!
//! * [`imat`], [`snf`], [`abgroup`], [`presentation`] — integer linear algebra,
//!   finitely generated abelian groups and their canonical presentations;
//! * [`ring`], [`group`] — finite rings with anti-involution and finite groups
//!   given by multiplication tables;
//! * [`mackey`], [`constructions`] — Z/2-Mackey functors with Hermitian and
//!   Tambara structure, the matrix and group-ring constructions;
//! * [`hermforms`] — Hermitian forms, their isometry classification, KH0 and
//!   Witt groups;
//! * [`realnerve`] — real and dihedral nerves of monoids with anti-involution,
//!   edgewise subdivision, fixed-point identifications and homology.

pub mod abgroup;
pub mod catalog;
pub mod constructions;
pub mod error;
pub mod group;
pub mod hermforms;
pub mod imat;
pub mod mackey;
pub mod presentation;
pub mod realnerve;
pub mod report;
pub mod ring;
pub mod snf;

pub use abgroup::{Elem, FinAbGroup, GroupHom};
pub use error::Error;
pub use group::FinGroup;


pub use presentation::{PresentedGroup, Stability};


pub use report::{CheckMode, CheckReport, Report};
pub use ring::{FinRingInv, RMatrix};
