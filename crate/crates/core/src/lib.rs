//! Exact computation of the framed topological vertex and its integrable
//! structure.

pub mod fock;
pub mod kp;
pub mod partitions;
pub mod qnum;
pub mod symfunc;
pub mod vertex;
