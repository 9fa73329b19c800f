//! Case engine: closed hypergraphs and parallelogram systems.

pub mod hypercomb;
pub mod syssolve;
