//! Combinatorics of horizontally periodic translation surfaces in low
//! genus: cylinder diagrams, their dual graphs, homology of core curves,
//! degenerations, exhaustive enumeration and square-tiled realizations.

pub mod canonical;
pub mod diagram;
pub mod dual_graph;
pub mod enumerate;
pub mod error;
pub mod golden;
pub mod linalg;
pub mod origami;
pub mod report;
pub mod stratum;
pub mod svg;
pub mod topology;
pub mod verify;

/// Saddle connection label. Positive; not necessarily contiguous.
pub type Label = u32;

/// Largest number of saddle connections a diagram may have.
pub const MAX_LABELS: usize = 12;

pub use canonical::{canonical_form, CanonicalKey};
pub use diagram::{Cylinder, CylinderDiagram, CylinderFlags};
pub use dual_graph::{admissibility_check, AdmissibilityReport, CompleteDualGraph, Skeleton};
pub use enumerate::{enumerate_diagrams, enumerate_dual_graph_skeletons, Atlas, EnumerationQuery, Filter, Strategy};
pub use error::{Error, Result, Side};
pub use origami::{
    act, component_of, cylinder_proportion, decompose, minus_id_involutions, origami_stratum, realize,
    spin_parity, translation_involutions, Gen, InvolutionKind, InvolutionReport, MetricData, Origami,
};
pub use report::ClassificationReport;
pub use stratum::{ComponentLabel, StratumSignature, StratumSpec};
pub use topology::{core_homology, degeneration_case, pinch, CoreHomology, DegenerationCase, PinchedSurface};
