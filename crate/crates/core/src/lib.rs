//! Exact computations on coadjoint orbits of compact connected Lie groups of
//! classical type.
//!
//! * [`rootsys`]: root data, positive systems, dominance.
//! * [`weyl`]: Weyl group as exact reflection matrices, orbits.
//! * [`orbit`]: stabilizers, admissible chambers, polarizations, the KKS form.
//! * [`quantize`]: integrality and the orbit-to-representation verdict.
//! * [`cech`]: Čech cohomology of finite nerves and Chern classes.
//! * [`oracle`]: floating-point `su(n)` models that re-derive the above.

pub mod cech;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod orbit;
pub mod quantize;
pub mod rational;
pub mod report;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use rational::Q;
pub use rootsys::{BasisTag, RootOrder, RootSystem, Series, SeriesSpec, Weight};
