//! Exact arithmetic for the Picard group PSL(2, Z[i]) acting on Q(i, √3), and
//! the closed paths formed by the ambiguous numbers `(a + k√3)/c` of an orbit.
//!
//! Field values have rational coordinates over the basis `{1, i, √3, i√3}`.
//! Real quadratic numbers are integer triples `(a, b, c)` meaning `(a + b√3)/c`.

pub mod enumerate;
pub mod error;
pub mod field;
pub mod gaussian;
pub mod orbit;
pub mod picard;
pub mod properties;
pub mod quadratic;

pub use enumerate::{enumerate, EnumerationResult, Exclusion, PathMembership};
pub use error::{Error, Result};
pub use field::{FieldElement, ProjectivePoint, Rational};
pub use gaussian::GaussianInt;
pub use orbit::{
    bfs_orbit_ambiguous, build_graph, export_dot, export_json, import_json, layer_cycles, partner,
    AmbiguousGraph, ClosedPath, EdgeLabel, PartnerVia, StructureReport,
};
pub use picard::{
    verify_relators, GaussMatrix, Generator, GeneratorSet, GeneratorWord, MobiusMap, RelatorCheck,
    RelatorValue,
};
pub use properties::{run_all, PropertyConfig, PropertyReport, SuiteResult};
pub use quadratic::{AmbiguityClass, RealQuadratic};
