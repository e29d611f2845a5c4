//! One-stop classification of a cylinder diagram.

use serde::{Deserialize, Serialize};

use crate::diagram::{CylinderDiagram, CylinderFlags};
use crate::dual_graph::CompleteDualGraph;
use crate::error::Result;
use crate::origami::{component_of, minus_id_involutions, realize, translation_involutions, InvolutionKind};
use crate::stratum::ComponentLabel;
use crate::topology::{core_homology, degeneration_case, DegenerationCase};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionSummary {
    pub kind: InvolutionKind,
    pub witness: String,
    pub fixed_points: usize,
    pub quotient_genus: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_signature: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient_stratum: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub diagram: CylinderDiagram,
    pub canonical: CylinderDiagram,
    pub stratum: String,
    pub genus: u32,
    pub component: ComponentLabel,
    pub cylinders: usize,
    pub flags: Vec<CylinderFlags>,
    pub valency_vector: Vec<usize>,
    pub degeneration_case: DegenerationCase,
    pub core_rank: usize,
    pub relations: Vec<Vec<i64>>,
    /// Square-tiled surface of the default metric.
    pub origami: String,
    pub involutions: Vec<InvolutionSummary>,
}

impl ClassificationReport {
    /// Full report. Fails on diagrams with marked regular points.
    pub fn new(d: &CylinderDiagram) -> Result<Self> {
        let stratum = d.singularity_profile()?;
        let homology = core_homology(d)?;
        let o = realize(d, None)?;
        let mut involutions: Vec<InvolutionSummary> = translation_involutions(&o)
            .into_iter()
            .chain(minus_id_involutions(&o)?)
            .map(|i| InvolutionSummary {
                kind: i.kind,
                witness: i.witness_cycles(),
                fixed_points: i.fixed_point_count(),
                quotient_genus: i.quotient_genus,
                quotient_signature: i.quotient_signature.clone(),
                quotient_stratum: i.quotient_stratum.as_ref().map(|s| s.reduced().to_string()),
            })
            .collect();
        involutions.sort_by(|a, b| (a.kind as u8, &a.witness).cmp(&(b.kind as u8, &b.witness)));
        Ok(Self {
            diagram: d.clone(),
            canonical: d.canonical(),
            genus: stratum.genus(),
            stratum: stratum.to_string(),
            component: component_of(d)?,
            cylinders: d.num_cylinders(),
            flags: d.structural_flags(),
            valency_vector: CompleteDualGraph::from_diagram(d).valency_vector(),
            degeneration_case: degeneration_case(d)?,
            core_rank: homology.rank,
            relations: homology.relation_lattice,
            origami: o.to_string(),
            involutions,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
