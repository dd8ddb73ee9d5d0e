//! Cyber-physical system models compiled to formal contexts, concept
//! lattices and the redundancy and resiliency analyses run over them.

pub mod analysis;
pub mod fca;
pub mod formats;
pub mod model;
