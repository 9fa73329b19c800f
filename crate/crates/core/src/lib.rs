//! Exact computational geometry for parallelotope tilings: rational polyhedra, lattices and
//! their Dirichlet-Voronoi cells, the quotient tiling complex with dual cells, canonical
//! scalings, and Voronoi's planar generatrissa.

pub mod lattice;
pub mod lifting;
pub mod linalg;
pub mod lp;
pub mod rat;
pub mod ratpoly;
pub mod scaling;
pub mod tiling;
