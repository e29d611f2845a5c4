//! Reference transcriptions of the known four-cylinder diagrams in genus
//! three and of the exceptional three-cylinder diagram.

use crate::diagram::CylinderDiagram;
use crate::stratum::ComponentLabel;
use crate::topology::DegenerationCase;

const REFERENCE: &str = include_str!("../data/reference.txt");

#[derive(Clone, Debug)]
pub struct GoldenDiagram {
    pub name: String,
    pub diagram: CylinderDiagram,
    pub stratum: String,
    pub component: ComponentLabel,
    pub case: DegenerationCase,
    pub valency: Vec<usize>,
}

pub fn golden_diagrams() -> Vec<GoldenDiagram> {
    REFERENCE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let f: Vec<&str> = l.split('|').map(str::trim).collect();
            GoldenDiagram {
                name: f[0].to_string(),
                diagram: f[1].parse().expect("golden diagram parses"),
                stratum: f[2].to_string(),
                component: f[3].parse().expect("golden component"),
                case: f[4].parse().expect("golden case"),
                valency: f[5].split(',').map(|x| x.parse().unwrap()).collect(),
            }
        })
        .collect()
}

pub fn golden(name: &str) -> CylinderDiagram {
    golden_diagrams()
        .into_iter()
        .find(|g| g.name == name)
        .unwrap_or_else(|| panic!("no golden diagram named {name}"))
        .diagram
}

pub fn four_cylinder_goldens() -> Vec<GoldenDiagram> {
    golden_diagrams().into_iter().filter(|g| g.diagram.num_cylinders() == 4).collect()
}
