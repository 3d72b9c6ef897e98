//! Deformation spaces `T^1` and `T^2` of affine toric varieties, their cup
//! product, and explicit formulas for three-dimensional Gorenstein singularities.

pub mod complex;
pub mod cone;
pub mod cup;
pub mod error;
pub mod fixtures;
pub mod gorenstein;
pub mod hilbert;
pub mod lattice;
pub mod linalg;
pub mod toric;

pub use cone::{Cone, DualCone, Face};
pub use error::{Error, Result};
pub use hilbert::{membership, HilbertBasis, SectionPhi};
pub use lattice::{pairing, DualVector, LatticeVector};
pub use linalg::Rat;
pub use toric::{DegreeData, Subset, Toric};
pub use complex::{T1Element, T1Space, T2Element, T2Label, T2Space};
pub use cup::{cup, cup_with, CupOptions};
pub use gorenstein::{CrossValidation, GorensteinContext, LatticePolygon, SummandSpace, VersalEquation};
