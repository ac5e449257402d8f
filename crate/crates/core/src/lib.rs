//! Chamber basis of the Orlik–Solomon algebra of a real hyperplane
//! arrangement, its structure constants, and rank-one local system
//! cohomology through the Aomoto complex and the sinh-twisted minimal complex.

pub mod chambers;
pub mod complexes;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod os_algebra;
pub mod pipeline;
pub mod random;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use pipeline::Instance;
