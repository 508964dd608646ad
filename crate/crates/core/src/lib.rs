//! Arc systems on the four-punctured sphere.
//!
//! Arcs are straight lines on the pillowcase, counted exactly by a closed
//! form (checked against a polyline oracle). On top of that sit exhaustive
//! enumeration of k-systems at a complexity bound, orbit classification
//! under the symmetry group, twisting-number coordinates on an annulus, the
//! punctured-polygon models, and JSON/SVG output.

pub mod classification;
pub mod enumeration;
pub mod intersection;
pub mod pillowcase;
pub mod records;
pub mod reference;
pub mod render;
pub mod subsurface;
pub mod symmetry;
pub mod system;
pub mod twist;
pub mod verify;

pub use classification::{canonicalize, classify, fingerprint, Fingerprint, OrbitClass};
pub use enumeration::{find_systems, universe, EnumerationError};
pub use intersection::{intersect, oracle_intersect, Engine, EngineMode};
pub use pillowcase::{ArcClass, ArcViolation, ComplexityBound, Puncture, Slope};
pub use records::{OrbitReport, RecordError, SystemRecord};
pub use render::{render_svg, View};
pub use symmetry::{Generator, Letter, SymmetryElement};
pub use system::{ArcSystem, DegreeVector, SystemError};
pub use verify::{CheckStatus, VerificationReport, VerifyOptions};
