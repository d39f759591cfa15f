pub mod buchstaber;
pub mod complex;
pub mod error;
pub mod lattice;
pub mod products;
pub mod tor;
pub mod universal;
pub mod vertex_set;

pub use complex::{FVector, SimplexOracle, SimplicialComplex, Subcomplex};
pub use error::{Error, Result};
pub use vertex_set::VertexSet;
