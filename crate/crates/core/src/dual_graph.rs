//! Complete dual graphs: one vertex per cylinder, one directed edge per
//! saddle connection (from the cylinder having it on its bottom to the one
//! having it on its top), plus the cyclic order of edge ends at each vertex.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::diagram::{Cylinder, CylinderDiagram};
use crate::error::{Error, Result};
use crate::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DualEdge {
    pub label: Label,
    pub from: usize,
    pub to: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompleteDualGraph {
    n: usize,
    edges: Vec<DualEdge>,
    out_order: Vec<Vec<Label>>,
    in_order: Vec<Vec<Label>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Violation {
    /// Edges not lying on any directed cycle; no positive weights exist.
    NoCirculation { edges: Vec<Label> },
    /// Bottom of `a` equals top of `b` (0-based cylinder indices).
    Merge { a: usize, b: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub circulation_ok: bool,
    pub no_merge_pattern: bool,
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    pub fn ok(&self) -> bool {
        self.circulation_ok && self.no_merge_pattern
    }
}

fn reachability(n: usize, arcs: impl Iterator<Item = (usize, usize)> + Clone) -> Vec<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for (a, b) in arcs {
        adj[a].push(b);
    }
    (0..n)
        .map(|s| {
            let mut seen = vec![false; n];
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen
        })
        .collect()
}

fn cyclically_equal(a: &[Label], b: &[Label]) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|r| a.iter().cycle().skip(r).take(a.len()).eq(b.iter()))
}

impl CompleteDualGraph {
    pub fn from_diagram(d: &CylinderDiagram) -> Self {
        let mut edges: Vec<DualEdge> = d
            .labels()
            .iter()
            .map(|&l| DualEdge {
                label: l,
                from: d.cylinder_below_label(l).unwrap(),
                to: d.cylinder_above_label(l).unwrap(),
            })
            .collect();
        edges.sort();
        Self {
            n: d.num_cylinders(),
            edges,
            out_order: d.cylinders().iter().map(|c| c.bottom.clone()).collect(),
            in_order: d.cylinders().iter().map(|c| c.top.clone()).collect(),
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[DualEdge] {
        &self.edges
    }

    pub fn out_order(&self, v: usize) -> &[Label] {
        &self.out_order[v]
    }

    pub fn in_order(&self, v: usize) -> &[Label] {
        &self.in_order[v]
    }

    /// Per-vertex valency; a loop counts twice.
    pub fn valencies(&self) -> Vec<usize> {
        let mut val = vec![0; self.n];
        for e in &self.edges {
            val[e.from] += 1;
            val[e.to] += 1;
        }
        val
    }

    pub fn valency_vector(&self) -> Vec<usize> {
        let mut v = self.valencies();
        v.sort_unstable();
        v
    }

    pub fn is_connected(&self) -> bool {
        let r = reachability(
            self.n,
            self.edges.iter().flat_map(|e| [(e.from, e.to), (e.to, e.from)]),
        );
        r[0].iter().all(|&x| x)
    }

    pub fn skeleton(&self) -> Skeleton {
        Skeleton::new(self.n, self.edges.iter().map(|e| (e.from, e.to)).collect())
    }

    /// Rebuild the cylinder diagram from the cyclic orderings.
    pub fn to_diagram(&self) -> Result<CylinderDiagram> {
        CylinderDiagram::new(
            (0..self.n)
                .map(|v| Cylinder::new(self.out_order[v].clone(), self.in_order[v].clone()))
                .collect(),
        )
    }

    /// DOT text. Edges are sorted; each vertex carries its cyclic
    /// orderings in a `comment` attribute.
    pub fn to_dot(&self) -> String {
        let word = |w: &[Label]| {
            let s: Vec<String> = w.iter().map(|l| l.to_string()).collect();
            format!("({})", s.join(","))
        };
        let mut s = String::from("digraph G {\n");
        for v in 0..self.n {
            writeln!(
                s,
                "  C{} [comment=\"out={} in={}\"];",
                v + 1,
                word(&self.out_order[v]),
                word(&self.in_order[v])
            )
            .unwrap();
        }
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.from, e.to, e.label));
        for e in edges {
            writeln!(s, "  C{} -> C{} [label={}];", e.from + 1, e.to + 1, e.label).unwrap();
        }
        s.push_str("}\n");
        s
    }

    /// Parse the output of `to_dot`. The edge list is authoritative; the
    /// orderings are read from the vertex comments when present.
    pub fn from_dot(text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Dot(m.to_string());
        let body = text
            .trim()
            .strip_prefix("digraph")
            .ok_or_else(|| bad("missing 'digraph'"))?;
        let open = body.find('{').ok_or_else(|| bad("missing '{'"))?;
        let close = body.rfind('}').ok_or_else(|| bad("missing '}'"))?;
        let vertex = |t: &str| -> Result<usize> {
            t.trim()
                .strip_prefix('C')
                .and_then(|x| x.parse::<usize>().ok())
                .filter(|&x| x >= 1)
                .map(|x| x - 1)
                .ok_or_else(|| bad(&format!("bad vertex '{}'", t.trim())))
        };
        let parse_word = |t: &str| -> Result<Vec<Label>> {
            let t = t.trim().trim_start_matches('(').trim_end_matches(')');
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',')
                .map(|x| x.trim().parse().map_err(|_| bad("bad label in ordering")))
                .collect()
        };
        let mut edges = Vec::new();
        let mut orders: Vec<(usize, Vec<Label>, Vec<Label>)> = Vec::new();
        let mut n = 0;
        for stmt in body[open + 1..close].split(';') {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let (head, attrs) = match stmt.find('[') {
                Some(i) => (&stmt[..i], stmt[i + 1..].trim_end_matches(']')),
                None => (stmt, ""),
            };
            if let Some((a, b)) = head.split_once("->") {
                let (from, to) = (vertex(a)?, vertex(b)?);
                let label = attrs
                    .trim()
                    .strip_prefix("label=")
                    .and_then(|x| x.trim().trim_matches('"').parse().ok())
                    .ok_or_else(|| bad("edge without label"))?;
                n = n.max(from + 1).max(to + 1);
                edges.push(DualEdge { label, from, to });
            } else {
                let v = vertex(head)?;
                n = n.max(v + 1);
                if let Some(c) = attrs.trim().strip_prefix("comment=") {
                    let c = c.trim().trim_matches('"');
                    let out = c
                        .split_whitespace()
                        .find_map(|p| p.strip_prefix("out="))
                        .ok_or_else(|| bad("comment without out="))?;
                    let inn = c
                        .split_whitespace()
                        .find_map(|p| p.strip_prefix("in="))
                        .ok_or_else(|| bad("comment without in="))?;
                    orders.push((v, parse_word(out)?, parse_word(inn)?));
                }
            }
        }
        edges.sort();
        let mut out_order = vec![Vec::new(); n];
        let mut in_order = vec![Vec::new(); n];
        if orders.is_empty() {
            for e in &edges {
                out_order[e.from].push(e.label);
                in_order[e.to].push(e.label);
            }
        } else {
            for (v, o, i) in orders {
                out_order[v] = o;
                in_order[v] = i;
            }
        }
        Ok(Self {
            n,
            edges,
            out_order,
            in_order,
        })
    }
}

pub fn dual_graph(d: &CylinderDiagram) -> CompleteDualGraph {
    CompleteDualGraph::from_diagram(d)
}

pub fn admissibility_check(g: &CompleteDualGraph) -> AdmissibilityReport {
    let reach = reachability(g.n, g.edges.iter().map(|e| (e.from, e.to)));
    let off_cycle: Vec<Label> = g
        .edges
        .iter()
        .filter(|e| !reach[e.to][e.from])
        .map(|e| e.label)
        .collect();
    let mut violations = Vec::new();
    let circulation_ok = off_cycle.is_empty() && reach.iter().all(|r| r.iter().all(|&x| x));
    if !circulation_ok {
        violations.push(Violation::NoCirculation { edges: off_cycle });
    }
    let mut no_merge_pattern = true;
    for a in 0..g.n {
        for b in 0..g.n {
            if a != b && cyclically_equal(&g.out_order[a], &g.in_order[b]) {
                no_merge_pattern = false;
                violations.push(Violation::Merge { a, b });
            }
        }
    }
    AdmissibilityReport {
        circulation_ok,
        no_merge_pattern,
        violations,
    }
}

/// Directed multigraph without cyclic orderings. Edges are `(from, to)`
/// pairs kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Skeleton {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl Skeleton {
    pub fn new(n: usize, mut edges: Vec<(usize, usize)>) -> Self {
        edges.sort_unstable();
        Self { n, edges }
    }

    pub fn valencies(&self) -> Vec<usize> {
        let mut val = vec![0; self.n];
        for &(a, b) in &self.edges {
            val[a] += 1;
            val[b] += 1;
        }
        val
    }

    pub fn valency_vector(&self) -> Vec<usize> {
        let mut v = self.valencies();
        v.sort_unstable();
        v
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.0 == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.1 == v).count()
    }

    pub fn num_loops(&self) -> usize {
        self.edges.iter().filter(|e| e.0 == e.1).count()
    }

    pub fn is_strongly_connected(&self) -> bool {
        reachability(self.n, self.edges.iter().copied())
            .iter()
            .all(|r| r.iter().all(|&x| x))
    }

    /// Pairs `(a, b)` that merge whatever cyclic orders are chosen: all
    /// edges out of `a` go to `b`, all edges into `b` come from `a`, and
    /// there are at most two of them, so bottom(a) = top(b) cyclically.
    pub fn forced_merges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in 0..self.n {
                if a == b {
                    continue;
                }
                let k = self.out_degree(a);
                if k == 0 || k > 2 {
                    continue;
                }
                let ab = self.edges.iter().filter(|e| **e == (a, b)).count();
                if ab == k && self.in_degree(b) == k {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn is_admissible(&self) -> bool {
        self.valencies().iter().all(|&v| v >= 2)
            && self.is_strongly_connected()
            && self.forced_merges().is_empty()
    }

    /// Minimal edge list over all vertex relabelings.
    pub fn canonical(&self) -> Skeleton {
        use itertools::Itertools;
        (0..self.n)
            .permutations(self.n)
            .map(|p| Skeleton::new(self.n, self.edges.iter().map(|&(a, b)| (p[a], p[b])).collect()))
            .min()
            .unwrap_or_else(|| self.clone())
    }
}
