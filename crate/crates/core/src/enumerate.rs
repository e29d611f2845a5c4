//! Exhaustive enumeration of cylinder diagrams up to isomorphism.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::canonical::CanonicalKey;
use crate::diagram::{Cylinder, CylinderDiagram};
use crate::dual_graph::{CompleteDualGraph, Skeleton};
use crate::error::{Error, Result};
use crate::report::ClassificationReport;
use crate::stratum::{ComponentLabel, StratumSignature};
use crate::topology::DegenerationCase;
use crate::{Label, MAX_LABELS};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Direct,
    Dual,
    Both,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Strategy::Direct),
            "dual" | "dual-graph-first" => Ok(Strategy::Dual),
            "both" => Ok(Strategy::Both),
            other => Err(Error::Unsupported(format!("strategy '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Filter {
    Case(DegenerationCase),
    NoSemiSimple,
    NoSelfAdjacent,
    SimpleAtLeast(usize),
}

impl Filter {
    pub fn accepts(&self, r: &ClassificationReport) -> bool {
        match self {
            Filter::Case(c) => &r.degeneration_case == c,
            Filter::NoSemiSimple => r.flags.iter().all(|f| !f.semi_simple),
            Filter::NoSelfAdjacent => r.flags.iter().all(|f| !f.self_adjacent),
            Filter::SimpleAtLeast(k) => r.flags.iter().filter(|f| f.simple).count() >= *k,
        }
    }

    /// Parse a comma-separated list such as `case=3.I,no-semisimple`.
    pub fn parse_list(s: &str) -> Result<Vec<Filter>> {
        s.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }
}

impl FromStr for Filter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(c) = s.strip_prefix("case=") {
            return Ok(Filter::Case(c.parse()?));
        }
        if let Some(k) = s.strip_prefix("simple>=") {
            return k
                .parse()
                .map(Filter::SimpleAtLeast)
                .map_err(|_| Error::Unsupported(format!("filter '{s}'")));
        }
        match s {
            "no-semisimple" => Ok(Filter::NoSemiSimple),
            "no-selfadjacent" => Ok(Filter::NoSelfAdjacent),
            _ => Err(Error::Unsupported(format!("filter '{s}'"))),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::Case(c) => write!(f, "case={c}"),
            Filter::NoSemiSimple => f.write_str("no-semisimple"),
            Filter::NoSelfAdjacent => f.write_str("no-selfadjacent"),
            Filter::SimpleAtLeast(k) => write!(f, "simple>={k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Target {
    Stratum(StratumSignature),
    Genus(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EnumerationQuery {
    pub target: Target,
    pub n_cylinders: usize,
    pub strategy: Strategy,
    pub filters: Vec<Filter>,
    pub component: Option<ComponentLabel>,
}

impl EnumerationQuery {
    pub fn stratum(s: StratumSignature, n_cylinders: usize) -> Self {
        Self {
            target: Target::Stratum(s),
            n_cylinders,
            strategy: Strategy::Direct,
            filters: Vec::new(),
            component: None,
        }
    }

    pub fn genus(g: u32, n_cylinders: usize) -> Self {
        Self {
            target: Target::Genus(g),
            ..Self::stratum(StratumSignature::new(vec![0]).unwrap(), n_cylinders)
        }
    }

    pub fn with_strategy(mut self, s: Strategy) -> Self {
        self.strategy = s;
        self
    }

    pub fn with_filters(mut self, f: Vec<Filter>) -> Self {
        self.filters = f;
        self
    }

    pub fn with_component(mut self, c: Option<ComponentLabel>) -> Self {
        self.component = c;
        self
    }

    pub fn strata(&self) -> Vec<StratumSignature> {
        match &self.target {
            Target::Stratum(s) => vec![s.clone()],
            Target::Genus(g) => StratumSignature::of_genus(*g),
        }
    }

    /// Stable text form; the persisted file names hash it.
    pub fn descriptor(&self) -> String {
        let target = match &self.target {
            Target::Stratum(s) => s.to_string(),
            Target::Genus(g) => format!("genus={g}"),
        };
        let filters: Vec<String> = self.filters.iter().map(|f| f.to_string()).collect();
        format!(
            "{target};cylinders={};component={};filters={}",
            self.n_cylinders,
            self.component.map_or("any".to_string(), |c| c.to_string()),
            filters.join(",")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub key: CanonicalKey,
    pub report: ClassificationReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRecord {
    pub stratum: String,
    pub component: ComponentLabel,
    pub cylinders: usize,
    pub count: usize,
    /// Classes up to the half turn and reflections as well.
    pub up_to_symmetry: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atlas {
    pub query: String,
    pub entries: Vec<AtlasEntry>,
}

impl Atlas {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn diagrams(&self) -> Vec<CylinderDiagram> {
        self.entries.iter().map(|e| e.report.canonical.clone()).collect()
    }

    pub fn keys(&self) -> BTreeSet<CanonicalKey> {
        self.entries.iter().map(|e| e.key.clone()).collect()
    }

    pub fn counts(&self) -> Vec<CountRecord> {
        let mut m: BTreeMap<(String, ComponentLabel, usize), (usize, BTreeSet<CanonicalKey>)> = BTreeMap::new();
        for e in &self.entries {
            let slot = m
                .entry((e.report.stratum.clone(), e.report.component, e.report.cylinders))
                .or_default();
            slot.0 += 1;
            slot.1.insert(e.report.canonical.symmetric_key());
        }
        m.into_iter()
            .map(|((stratum, component, cylinders), (count, classes))| CountRecord {
                stratum,
                component,
                cylinders,
                count,
                up_to_symmetry: classes.len(),
            })
            .collect()
    }

    /// Entries whose canonical form is the least member of their symmetry
    /// class, one per class.
    pub fn symmetry_representatives(&self) -> Vec<&AtlasEntry> {
        let mut seen = BTreeSet::new();
        self.entries
            .iter()
            .filter(|e| seen.insert(e.report.canonical.symmetric_key()))
            .collect()
    }

    fn file_stem(&self) -> String {
        let digest = Sha256::digest(self.query.as_bytes());
        format!("atlas-{}", &hex::encode(digest)[..16])
    }

    /// Write `atlas-<hash>.txt` (one canonical diagram per line) and the
    /// `.json` sidecar with reports and counts. Returns both paths.
    pub fn save(&self, dir: &Path) -> std::io::Result<(PathBuf, PathBuf)> {
        std::fs::create_dir_all(dir)?;
        let stem = self.file_stem();
        let txt = dir.join(format!("{stem}.txt"));
        let json = dir.join(format!("{stem}.json"));
        let mut lines = String::new();
        for e in &self.entries {
            lines.push_str(&e.report.canonical.to_string());
            lines.push('\n');
        }
        std::fs::write(&txt, lines)?;
        let doc = serde_json::json!({
            "query": self.query,
            "counts": self.counts(),
            "entries": self.entries.iter().map(|e| &e.report).collect::<Vec<_>>(),
        });
        std::fs::write(&json, serde_json::to_string_pretty(&doc).unwrap())?;
        Ok((txt, json))
    }

    /// Read back the diagram list written by `save`.
    pub fn load_diagrams(path: &Path) -> Result<Vec<CylinderDiagram>> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Unsupported(e.to_string()))?;
        text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect()
    }
}

fn partitions_into(n: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        if n - first < parts - 1 {
            continue;
        }
        for mut rest in partitions_into(n - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn compositions(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    (1..=n + 1 - parts)
        .flat_map(|first| {
            compositions(n - first, parts - 1).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// All sequences of cyclic words with the given lengths using each label of
/// `pool` once; each word starts with its smallest letter.
fn cyclic_word_sequences(pool: &[Label], lens: &[usize], cur: &mut Vec<Vec<Label>>, out: &mut dyn FnMut(&[Vec<Label>])) {
    let Some((&len, rest_lens)) = lens.split_first() else {
        out(cur);
        return;
    };
    for set in pool.iter().copied().combinations(len) {
        let rest: Vec<Label> = pool.iter().copied().filter(|x| !set.contains(x)).collect();
        let (first, others) = set.split_first().unwrap();
        for perm in others.iter().copied().permutations(others.len()) {
            let mut w = vec![*first];
            w.extend(perm);
            cur.push(w);
            cyclic_word_sequences(&rest, rest_lens, cur, out);
            cur.pop();
        }
    }
}

fn accept(cyls: Vec<Cylinder>, target: &StratumSignature) -> Option<CanonicalKey> {
    let d = CylinderDiagram::new(cyls).ok()?;
    // widths must be positive, so every saddle lies on a directed cycle
    if !CompleteDualGraph::from_diagram(&d).skeleton().is_strongly_connected() {
        return None;
    }
    let mut orders = d.cone_orders();
    orders.sort_unstable_by(|a, b| b.cmp(a));
    (orders == target.zero_orders()).then(|| d.canonical_key())
}

/// Bottoms are fixed by a partition of `N` (labels consecutive, longest
/// first); tops range over all ordered assignments of cyclic words.
fn direct(target: &StratumSignature, n: usize) -> BTreeSet<CanonicalKey> {
    let big_n = target.num_saddle_connections();
    let labels: Vec<Label> = (1..=big_n as Label).collect();
    let tasks: Vec<(Vec<usize>, Vec<usize>)> = partitions_into(big_n, n, big_n)
        .into_iter()
        .flat_map(|lam| compositions(big_n, n).into_iter().map(move |mu| (lam.clone(), mu)))
        .collect();
    tasks
        .par_iter()
        .map(|(lam, mu)| {
            let mut bottoms = Vec::new();
            let mut next = 1;
            for &k in lam {
                bottoms.push((next..next + k as Label).collect::<Vec<_>>());
                next += k as Label;
            }
            let mut found = BTreeSet::new();
            cyclic_word_sequences(&labels, mu, &mut Vec::new(), &mut |tops| {
                let cyls = bottoms
                    .iter()
                    .zip(tops)
                    .map(|(b, t)| Cylinder::new(b.clone(), t.clone()))
                    .collect();
                if let Some(k) = accept(cyls, target) {
                    found.insert(k);
                }
            });
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        })
}

/// Connected directed multigraphs on `n_vertices` vertices with `n_edges`
/// edges, every valency at least two, strongly connected and without a
/// forced merge, up to vertex relabeling.
pub fn enumerate_dual_graph_skeletons(n_vertices: usize, n_edges: usize) -> Result<Vec<Skeleton>> {
    if n_vertices == 0 || n_vertices > 4 || n_edges > MAX_LABELS {
        return Err(Error::ResourceBound(format!(
            "skeletons need 1 <= vertices <= 4 and edges <= {MAX_LABELS}"
        )));
    }
    let arcs: Vec<(usize, usize)> = (0..n_vertices)
        .flat_map(|a| (0..n_vertices).map(move |b| (a, b)))
        .collect();
    let found: BTreeSet<Skeleton> = arcs
        .iter()
        .copied()
        .combinations_with_replacement(n_edges)
        .par_bridge()
        .filter_map(|edges| {
            let s = Skeleton::new(n_vertices, edges);
            s.is_admissible().then(|| s.canonical())
        })
        .collect();
    Ok(found.into_iter().collect())
}

fn dual_first(target: &StratumSignature, n: usize) -> Result<BTreeSet<CanonicalKey>> {
    let big_n = target.num_saddle_connections();
    let skeletons = enumerate_dual_graph_skeletons(n, big_n)?;
    Ok(skeletons
        .par_iter()
        .map(|s| {
            // label edges in sorted order
            let mut outs: Vec<Vec<Label>> = vec![Vec::new(); n];
            let mut ins: Vec<Vec<Label>> = vec![Vec::new(); n];
            for (i, &(a, b)) in s.edges.iter().enumerate() {
                outs[a].push(i as Label + 1);
                ins[b].push(i as Label + 1);
            }
            let cyclic_orders = |w: &Vec<Label>| -> Vec<Vec<Label>> {
                let (first, rest) = w.split_first().unwrap();
                rest.iter()
                    .copied()
                    .permutations(rest.len())
                    .map(|p| std::iter::once(*first).chain(p).collect())
                    .collect()
            };
            let choices: Vec<Vec<Vec<Label>>> = outs.iter().chain(&ins).map(cyclic_orders).collect();
            let mut found = BTreeSet::new();
            for pick in choices.iter().multi_cartesian_product() {
                let cyls = (0..n).map(|v| Cylinder::new(pick[v].clone(), pick[n + v].clone())).collect();
                if let Some(k) = accept(cyls, target) {
                    found.insert(k);
                }
            }
            found
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        }))
}

/// Canonical keys of all `n`-cylinder diagrams of one stratum.
pub fn enumerate_keys(target: &StratumSignature, n: usize, strategy: Strategy) -> Result<BTreeSet<CanonicalKey>> {
    let g = target.genus();
    if target.has_marked_points() || g < 2 {
        return Err(Error::Unsupported(format!("enumeration in {target}")));
    }
    if g > 3 {
        return Err(Error::Unsupported(format!("genus {g}")));
    }
    if target.num_saddle_connections() > MAX_LABELS {
        return Err(Error::ResourceBound(format!("{target} has too many saddle connections")));
    }
    if n == 0 || n > 3 * g as usize - 3 {
        return Ok(BTreeSet::new());
    }
    match strategy {
        Strategy::Direct => Ok(direct(target, n)),
        Strategy::Dual => dual_first(target, n),
        Strategy::Both => {
            let a = direct(target, n);
            let b = dual_first(target, n)?;
            if a != b {
                return Err(Error::Inconsistent(format!(
                    "strategies disagree on {target} with {n} cylinders: {} direct, {} dual",
                    a.len(),
                    b.len()
                )));
            }
            Ok(a)
        }
    }
}

pub fn enumerate_diagrams(q: &EnumerationQuery) -> Result<Atlas> {
    let mut keys = BTreeSet::new();
    for s in q.strata() {
        keys.extend(enumerate_keys(&s, q.n_cylinders, q.strategy)?);
    }
    let keys: Vec<CanonicalKey> = keys.into_iter().collect();
    let reports: Vec<Result<Option<AtlasEntry>>> = keys
        .par_iter()
        .map(|k| {
            let report = ClassificationReport::new(&k.diagram())?;
            let keep = q.filters.iter().all(|f| f.accepts(&report))
                && q.component.is_none_or(|c| c == report.component);
            Ok(keep.then(|| AtlasEntry {
                key: k.clone(),
                report,
            }))
        })
        .collect();
    let mut entries = Vec::new();
    for r in reports {
        if let Some(e) = r? {
            entries.push(e);
        }
    }
    Ok(Atlas {
        query: q.descriptor(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_and_compositions() {
        assert_eq!(partitions_into(5, 2, 5), vec![vec![4, 1], vec![3, 2]]);
        assert_eq!(compositions(4, 2), vec![vec![1, 3], vec![2, 2], vec![3, 1]]);
    }

    #[test]
    fn filters_parse() {
        let f = Filter::parse_list("case=3.I,no-semisimple,simple>=2").unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f[0], Filter::Case(DegenerationCase::C3I));
        assert!("bogus".parse::<Filter>().is_err());
    }

    #[test]
    fn loop_skeleton() {
        let s = enumerate_dual_graph_skeletons(1, 1).unwrap();
        assert_eq!(s, vec![Skeleton::new(1, vec![(0, 0)])]);
    }

    #[test]
    fn h2_counts() {
        let h2 = StratumSignature::new(vec![2]).unwrap();
        assert_eq!(enumerate_keys(&h2, 1, Strategy::Both).unwrap().len(), 1);
        assert_eq!(enumerate_keys(&h2, 2, Strategy::Both).unwrap().len(), 1);
        assert_eq!(enumerate_keys(&h2, 4, Strategy::Both).unwrap().len(), 0);
    }
}
