//! Finitely generated groups of isometries: generator specifications,
//! reduced words, orbit enumeration, conjugacy classes, double cosets.

pub mod classes;
pub mod cosets;
pub mod orbit;
pub mod spec;
pub mod word;

pub use classes::{conjugacy_classes, ClassList, ConjugacyClass};
pub use cosets::double_cosets;
pub use orbit::{
    enumerate_displacements, enumerate_orbit, verify_batch_distinct, Certificate,
    EnumerationMode, LeanOrbit, OrbitBatch, OrbitEntry, DEFAULT_BUDGET,
};
pub use spec::GroupSpec;
pub use word::Word;
