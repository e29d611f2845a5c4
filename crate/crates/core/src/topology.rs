//! Integral homology of core curves and the degenerate surface obtained by
//! pinching every horizontal core curve.
//!
//! CW structure: the cone points are the vertices; the edges are the
//! saddle connections (oriented rightward) followed by one crossing edge per
//! cylinder, running from the left end of `bottom[0]` to the left end of
//! `top[0]`; each cylinder cut along its crossing edge is a 2-cell with
//! boundary `sum(bottom) - sum(top)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::CylinderDiagram;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::Label;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreHomology {
    /// Rank of H_1 of the closed surface, `2g`.
    pub h1_rank: usize,
    /// Per cylinder, `sum(top) - sum(bottom)` in the edge basis
    /// (labels in sorted order, then crossing edges).
    pub relation_matrix: Vec<Vec<i64>>,
    /// Row `i`: class of the core curve of `C_i` in a basis of H_1.
    pub core_classes: Vec<Vec<i64>>,
    /// Rank of the span of the core classes.
    pub rank: usize,
    /// Integer relations `a` with `sum a_i c_i = 0`, in Hermite form.
    pub relation_lattice: Vec<Vec<i64>>,
}

impl CoreHomology {
    pub fn homologous(&self, i: usize, j: usize) -> bool {
        self.core_classes[i] == self.core_classes[j]
    }

    pub fn has_relation(&self, coeffs: &[i64]) -> bool {
        let v: Vec<i64> = (0..self.h1_rank)
            .map(|k| coeffs.iter().zip(&self.core_classes).map(|(a, c)| a * c[k]).sum())
            .collect();
        v.iter().all(|&x| x == 0)
    }
}

pub fn core_homology(d: &CylinderDiagram) -> Result<CoreHomology> {
    let n_lab = d.num_labels();
    let n_cyl = d.num_cylinders();
    let n_edges = n_lab + n_cyl;
    let ztok = d.zero_of_token();
    let n_vert = ztok.iter().max().map_or(0, |m| m + 1);
    let left = |l: Label| ztok[2 * d.index_of(l).unwrap()];
    let right = |l: Label| ztok[2 * d.index_of(l).unwrap() + 1];

    // boundary map C_1 -> C_0
    let mut d1: Mat = linalg::zeros(n_vert, n_edges);
    for (k, &l) in d.labels().iter().enumerate() {
        d1[right(l)][k] += 1;
        d1[left(l)][k] -= 1;
    }
    for (i, c) in d.cylinders().iter().enumerate() {
        d1[left(c.top[0])][n_lab + i] += 1;
        d1[left(c.bottom[0])][n_lab + i] -= 1;
    }

    let chain = |labels: &[Label]| -> Vec<i64> {
        let mut v = vec![0; n_edges];
        for &l in labels {
            v[d.index_of(l).unwrap()] += 1;
        }
        v
    };
    let relation_matrix: Vec<Vec<i64>> = d
        .cylinders()
        .iter()
        .map(|c| {
            let t = chain(&c.top);
            let b = chain(&c.bottom);
            t.iter().zip(&b).map(|(x, y)| x - y).collect()
        })
        .collect();

    // Z_1 = ker d1, with coordinates given by v_inv
    let s1 = linalg::smith(&d1, n_edges);
    let z_dim = n_edges - s1.rank;
    let z_coords = |c: &[i64]| -> Result<Vec<i64>> {
        let x = linalg::mul_vec(&s1.v_inv, c);
        if x[..s1.rank].iter().any(|&t| t != 0) {
            return Err(Error::Inconsistent("chain is not a cycle".into()));
        }
        Ok(x[s1.rank..].to_vec())
    };

    // H_1 = Z_1 / boundaries
    let faces: Vec<Vec<i64>> = relation_matrix.iter().map(|r| z_coords(r)).collect::<Result<_>>()?;
    let f = linalg::transpose(&faces, z_dim);
    let s2 = linalg::smith(&f, n_cyl);
    if s2.diag[..s2.rank].iter().any(|&x| x != 1) {
        return Err(Error::Inconsistent("torsion in H_1".into()));
    }
    let h1_rank = z_dim - s2.rank;
    let h1 = |c: &[i64]| -> Result<Vec<i64>> {
        let y = linalg::mul_vec(&s2.u, &z_coords(c)?);
        Ok(y[s2.rank..].to_vec())
    };

    let mut core_classes = Vec::with_capacity(n_cyl);
    for c in d.cylinders() {
        let bot = h1(&chain(&c.bottom))?;
        let top = h1(&chain(&c.top))?;
        if bot != top {
            return Err(Error::Inconsistent("core class differs on the two boundaries".into()));
        }
        core_classes.push(bot);
    }
    if h1_rank != 2 * d.genus() as usize {
        return Err(Error::Inconsistent(format!(
            "H_1 has rank {h1_rank}, expected {}",
            2 * d.genus()
        )));
    }
    let lattice = if h1_rank == 0 {
        linalg::identity(n_cyl)
    } else {
        linalg::kernel(&linalg::transpose(&core_classes, h1_rank), n_cyl)
    };
    let relation_lattice = linalg::hnf_rows(&lattice);
    Ok(CoreHomology {
        h1_rank,
        relation_matrix,
        rank: n_cyl - relation_lattice.len(),
        core_classes,
        relation_lattice,
    })
}

/// Half of a cylinder after pinching its core curve.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HalfCylinder {
    /// The half attached to the bottom boundary of `C_i`.
    Low(usize),
    /// The half attached to the top boundary of `C_i`.
    Up(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub half_cylinders: Vec<HalfCylinder>,
    pub zeros: Vec<usize>,
    pub saddle_labels: Vec<Label>,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchedSurface {
    pub parts: Vec<Part>,
    /// Per cylinder, the parts containing its low and its up half.
    pub nodes: Vec<(usize, usize)>,
}

impl PinchedSurface {
    /// Number of nodes with both ends on `p`.
    pub fn self_nodes(&self, p: usize) -> usize {
        self.nodes.iter().filter(|&&(a, b)| a == p && b == p).count()
    }

    pub fn nodes_between(&self, p: usize, q: usize) -> usize {
        self.nodes
            .iter()
            .filter(|&&(a, b)| (a == p && b == q) || (a == q && b == p))
            .count()
    }

    /// Simple poles carried by part `p`.
    pub fn poles(&self, p: usize) -> usize {
        self.parts[p].half_cylinders.len()
    }

    pub fn descriptor(&self) -> String {
        let parts: Vec<String> = (0..self.parts.len())
            .map(|p| format!("g{}b{}", self.parts[p].genus, self.poles(p)))
            .collect();
        let mut nodes: Vec<(usize, usize)> = self.nodes.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        nodes.sort_unstable();
        let nodes: Vec<String> = nodes.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        format!("parts[{}] nodes[{}]", parts.join(","), nodes.join(","))
    }
}

pub fn pinch(d: &CylinderDiagram) -> Result<PinchedSurface> {
    let n = d.num_cylinders();
    let mut parent: Vec<usize> = (0..2 * n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let low = |i: usize| 2 * i;
    let up = |i: usize| 2 * i + 1;
    for &l in d.labels() {
        let a = low(d.cylinder_below_label(l).unwrap());
        let b = up(d.cylinder_above_label(l).unwrap());
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    // number parts by first half-cylinder
    let mut part_of_root = BTreeMap::new();
    let mut part_of = vec![0; 2 * n];
    for (h, slot) in part_of.iter_mut().enumerate() {
        let r = find(&mut parent, h);
        let next = part_of_root.len();
        *slot = *part_of_root.entry(r).or_insert(next);
    }
    let n_parts = part_of_root.len();
    let mut parts: Vec<Part> = (0..n_parts)
        .map(|_| Part {
            half_cylinders: Vec::new(),
            zeros: Vec::new(),
            saddle_labels: Vec::new(),
            genus: 0,
        })
        .collect();
    for i in 0..n {
        parts[part_of[low(i)]].half_cylinders.push(HalfCylinder::Low(i));
        parts[part_of[up(i)]].half_cylinders.push(HalfCylinder::Up(i));
    }
    let ztok = d.zero_of_token();
    for &l in d.labels() {
        let p = part_of[low(d.cylinder_below_label(l).unwrap())];
        parts[p].saddle_labels.push(l);
        let k = d.index_of(l).unwrap();
        for z in [ztok[2 * k], ztok[2 * k + 1]] {
            if !parts[p].zeros.contains(&z) {
                parts[p].zeros.push(z);
            }
        }
    }
    for p in parts.iter_mut() {
        p.zeros.sort_unstable();
        let b = p.half_cylinders.len() as i64;
        let v = p.zeros.len() as i64;
        let e = p.saddle_labels.len() as i64;
        let twice = 2 - b - v + e;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::Inconsistent(format!("part with 2g = {twice}")));
        }
        p.genus = (twice / 2) as u32;
    }
    let nodes: Vec<(usize, usize)> = (0..n).map(|i| (part_of[low(i)], part_of[up(i)])).collect();
    let total: u32 = parts.iter().map(|p| p.genus).sum::<u32>() + (n + 1 - n_parts) as u32;
    if total != d.genus() {
        return Err(Error::Inconsistent(format!(
            "pinched genus {total} differs from genus {}",
            d.genus()
        )));
    }
    Ok(PinchedSurface { parts, nodes })
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DegenerationCase {
    C3I,
    C3II,
    C3III,
    C4I,
    C4II,
    C4III,
    C4IV,
    Other(String),
}

impl fmt::Display for DegenerationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegenerationCase::C3I => f.write_str("3.I"),
            DegenerationCase::C3II => f.write_str("3.II"),
            DegenerationCase::C3III => f.write_str("3.III"),
            DegenerationCase::C4I => f.write_str("4.I"),
            DegenerationCase::C4II => f.write_str("4.II"),
            DegenerationCase::C4III => f.write_str("4.III"),
            DegenerationCase::C4IV => f.write_str("4.IV"),
            DegenerationCase::Other(s) => write!(f, "OTHER({s})"),
        }
    }
}

impl std::str::FromStr for DegenerationCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "3.I" => DegenerationCase::C3I,
            "3.II" => DegenerationCase::C3II,
            "3.III" => DegenerationCase::C3III,
            "4.I" => DegenerationCase::C4I,
            "4.II" => DegenerationCase::C4II,
            "4.III" => DegenerationCase::C4III,
            "4.IV" => DegenerationCase::C4IV,
            other => match other.strip_prefix("OTHER(").and_then(|x| x.strip_suffix(')')) {
                Some(x) => DegenerationCase::Other(x.to_string()),
                None => return Err(Error::Unsupported(format!("unknown case '{other}'"))),
            },
        })
    }
}

impl Serialize for DegenerationCase {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for DegenerationCase {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

fn classify(p: &PinchedSurface) -> DegenerationCase {
    let n = p.nodes.len();
    let genera: Vec<u32> = p.parts.iter().map(|x| x.genus).collect();
    let other = || DegenerationCase::Other(p.descriptor());
    match (n, p.parts.len()) {
        (3, 1) if genera == [0] => DegenerationCase::C3I,
        (3, 2) => {
            let (s, t) = match genera.as_slice() {
                [0, 1] => (0, 1),
                [1, 0] => (1, 0),
                _ => return other(),
            };
            match (p.nodes_between(s, t), p.self_nodes(s)) {
                (3, 0) => DegenerationCase::C3II,
                (2, 1) => DegenerationCase::C3III,
                _ => other(),
            }
        }
        (4, 2) if genera == [0, 0] => match (p.nodes_between(0, 1), p.self_nodes(0), p.self_nodes(1)) {
            (4, 0, 0) => DegenerationCase::C4I,
            (2, 1, 1) => DegenerationCase::C4II,
            (3, 1, 0) | (3, 0, 1) => DegenerationCase::C4III,
            _ => other(),
        },
        (4, 3) => {
            let mut shape: Vec<(u32, usize)> = (0..3).map(|i| (genera[i], p.poles(i))).collect();
            shape.sort_unstable();
            if shape == [(0, 3), (0, 3), (1, 2)] {
                DegenerationCase::C4IV
            } else {
                other()
            }
        }
        _ => other(),
    }
}

/// Degeneration case from the pinched surface, cross-checked against the
/// homology of the core curves.
pub fn degeneration_case(d: &CylinderDiagram) -> Result<DegenerationCase> {
    let p = pinch(d)?;
    let h = core_homology(d)?;
    let case = classify(&p);
    let mismatch = |what: &str| {
        Err(Error::Inconsistent(format!(
            "{what}: case {case}, core rank {}, lattice {:?}",
            h.rank, h.relation_lattice
        )))
    };
    if h.relation_lattice.len() != p.parts.len() - 1 {
        return mismatch("relation count differs from part count");
    }
    let gen_shape = |r: &Vec<i64>| {
        let mut nz: Vec<i64> = r.iter().filter(|&&x| x != 0).map(|x| x.abs()).collect();
        nz.sort_unstable();
        nz
    };
    // the three-cylinder cases are the genus three taxonomy
    if d.num_cylinders() == 3 && d.genus() == 3 {
        let rank3 = h.rank == 3;
        if (case == DegenerationCase::C3I) != rank3 {
            return mismatch("3.I versus rank 3");
        }
        let sum_rel = h.relation_lattice.len() == 1 && gen_shape(&h.relation_lattice[0]) == [1, 1, 1];
        if (case == DegenerationCase::C3II) != sum_rel {
            return mismatch("3.II versus a three-term relation");
        }
        let eq_rel = h.relation_lattice.len() == 1 && gen_shape(&h.relation_lattice[0]) == [1, 1];
        if (case == DegenerationCase::C3III) != eq_rel {
            return mismatch("3.III versus two homologous cores");
        }
    }
    Ok(case)
}
