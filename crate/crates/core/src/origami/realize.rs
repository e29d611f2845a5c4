use std::collections::{BTreeMap, VecDeque};

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Origami;
use crate::diagram::CylinderDiagram;
use crate::dual_graph::CompleteDualGraph;
use crate::error::{Error, Result};
use crate::Label;

/// Integer flat data of a cylinder diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricData {
    pub lengths: BTreeMap<Label, u32>,
    pub heights: Vec<u32>,
    pub twists: Vec<u32>,
}

impl MetricData {
    pub fn width(&self, d: &CylinderDiagram, i: usize) -> u32 {
        d.cylinders()[i].bottom.iter().map(|l| self.lengths[l]).sum()
    }

    pub fn validate(&self, d: &CylinderDiagram) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidMetric(m));
        if self.heights.len() != d.num_cylinders() || self.twists.len() != d.num_cylinders() {
            return bad("one height and twist per cylinder".into());
        }
        for &l in d.labels() {
            match self.lengths.get(&l) {
                Some(&x) if x > 0 => {}
                _ => return bad(format!("label {l} needs a positive length")),
            }
        }
        if self.lengths.len() != d.num_labels() {
            return bad("lengths for unknown labels".into());
        }
        for (i, c) in d.cylinders().iter().enumerate() {
            let wb: u32 = c.bottom.iter().map(|l| self.lengths[l]).sum();
            let wt: u32 = c.top.iter().map(|l| self.lengths[l]).sum();
            if wb != wt {
                return bad(format!("C{} has bottom width {wb} and top width {wt}", i + 1));
            }
            if self.heights[i] == 0 {
                return bad(format!("C{} has height 0", i + 1));
            }
            if self.twists[i] >= wb {
                return bad(format!("C{} twist {} not below width {wb}", i + 1, self.twists[i]));
            }
        }
        Ok(())
    }

    pub fn area(&self, d: &CylinderDiagram) -> u32 {
        (0..d.num_cylinders()).map(|i| self.width(d, i) * self.heights[i]).sum()
    }
}

/// Smallest positive integer lengths balancing every cylinder: least
/// maximum first, then least sum, then lexicographically least. Heights 1,
/// twists 0.
pub fn default_metric(d: &CylinderDiagram) -> Result<MetricData> {
    let n = d.num_labels();
    let labels = d.labels();
    // balance rows: +1 on bottom labels, -1 on top labels
    let rows: Vec<Vec<i64>> = d
        .cylinders()
        .iter()
        .map(|c| {
            let mut r = vec![0i64; n];
            for l in &c.bottom {
                r[d.index_of(*l).unwrap()] += 1;
            }
            for l in &c.top {
                r[d.index_of(*l).unwrap()] -= 1;
            }
            r
        })
        .collect();
    const MAX_NORM: u32 = 16;
    for m in 1..=MAX_NORM {
        let mut best: Option<Vec<u32>> = None;
        let mut cur = vec![1u32; n];
        loop {
            if cur.contains(&m) && rows.iter().all(|r| r.iter().zip(&cur).map(|(a, &b)| a * b as i64).sum::<i64>() == 0) {
                let better = match &best {
                    None => true,
                    Some(b) => {
                        let (sc, sb): (u32, u32) = (cur.iter().sum(), b.iter().sum());
                        sc < sb || (sc == sb && cur < *b)
                    }
                };
                if better {
                    best = Some(cur.clone());
                }
            }
            // odometer over [1, m]^n
            let mut k = n;
            loop {
                if k == 0 {
                    break;
                }
                k -= 1;
                if cur[k] < m {
                    cur[k] += 1;
                    break;
                }
                cur[k] = 1;
            }
            if cur.iter().all(|&x| x == 1) {
                break;
            }
        }
        if let Some(b) = best {
            return Ok(MetricData {
                lengths: labels.iter().copied().zip(b).collect(),
                heights: vec![1; d.num_cylinders()],
                twists: vec![0; d.num_cylinders()],
            });
        }
    }
    Err(Error::ResourceBound(format!("no balanced lengths with entries up to {MAX_NORM}")))
}

/// Random metric: lengths are a random positive combination of directed
/// cycles of the dual graph (hence balanced), heights in 1..=3, twists
/// uniform.
pub fn random_metric<R: Rng>(d: &CylinderDiagram, rng: &mut R) -> Result<MetricData> {
    let g = CompleteDualGraph::from_diagram(d);
    let mut lengths: BTreeMap<Label, u32> = d.labels().iter().map(|&l| (l, 0)).collect();
    for e in g.edges() {
        // shortest directed path e.to -> e.from closes a cycle through e
        let mut prev: Vec<Option<Label>> = vec![None; g.num_vertices()];
        let mut seen = vec![false; g.num_vertices()];
        seen[e.to] = true;
        let mut q = VecDeque::from([e.to]);
        while let Some(v) = q.pop_front() {
            if v == e.from {
                break;
            }
            for f in g.edges().iter().filter(|f| f.from == v) {
                if !seen[f.to] {
                    seen[f.to] = true;
                    prev[f.to] = Some(f.label);
                    q.push_back(f.to);
                }
            }
        }
        if !seen[e.from] {
            return Err(Error::InvalidMetric("dual graph is not strongly connected".into()));
        }
        let w = rng.gen_range(1..=3);
        *lengths.get_mut(&e.label).unwrap() += w;
        let mut v = e.from;
        while v != e.to {
            let l = prev[v].unwrap();
            *lengths.get_mut(&l).unwrap() += w;
            v = g.edges().iter().find(|f| f.label == l).unwrap().from;
        }
    }
    let heights: Vec<u32> = (0..d.num_cylinders()).map(|_| rng.gen_range(1..=3)).collect();
    let m = MetricData {
        lengths,
        heights,
        twists: vec![0; d.num_cylinders()],
    };
    let twists = (0..d.num_cylinders()).map(|i| rng.gen_range(0..m.width(d, i))).collect();
    let m = MetricData { twists, ..m };
    m.validate(d)?;
    Ok(m)
}

/// Tile the cylinders by unit squares. Cylinders are laid out in order,
/// rows bottom to top, each row numbered from the left end of `bottom[0]`.
/// The top word starts above column `twist`.
pub fn realize(d: &CylinderDiagram, m: Option<&MetricData>) -> Result<Origami> {
    if d.has_marked_point() {
        return Err(Error::MarkedRegularPoint);
    }
    let owned;
    let m = match m {
        Some(m) => {
            m.validate(d)?;
            m
        }
        None => {
            owned = default_metric(d)?;
            &owned
        }
    };
    let ncyl = d.num_cylinders();
    let widths: Vec<usize> = (0..ncyl).map(|i| m.width(d, i) as usize).collect();
    let heights: Vec<usize> = m.heights.iter().map(|&h| h as usize).collect();
    let mut offset = vec![0; ncyl + 1];
    for i in 0..ncyl {
        offset[i + 1] = offset[i] + widths[i] * heights[i];
    }
    let n = offset[ncyl];
    let id = |i: usize, row: usize, x: usize| offset[i] + row * widths[i] + x;
    // start of each label on the bottom word that carries it
    let mut bottom_start: BTreeMap<Label, (usize, usize)> = BTreeMap::new();
    for (i, c) in d.cylinders().iter().enumerate() {
        let mut x = 0;
        for l in &c.bottom {
            bottom_start.insert(*l, (i, x));
            x += m.lengths[l] as usize;
        }
    }
    let mut r = vec![0; n];
    let mut u = vec![0; n];
    for (i, c) in d.cylinders().iter().enumerate() {
        let (w, h, t) = (widths[i], heights[i], m.twists[i] as usize);
        for row in 0..h {
            for x in 0..w {
                r[id(i, row, x)] = id(i, row, (x + 1) % w);
                if row + 1 < h {
                    u[id(i, row, x)] = id(i, row + 1, x);
                    continue;
                }
                let mut p = (x + w - t % w) % w;
                let mut target = None;
                for l in &c.top {
                    let len = m.lengths[l] as usize;
                    if p < len {
                        let (j, s) = bottom_start[l];
                        target = Some(id(j, 0, s + p));
                        break;
                    }
                    p -= len;
                }
                u[id(i, row, x)] = target.expect("position inside the top word");
            }
        }
    }
    Origami::new(r, u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn hyp_default() {
        let d: CylinderDiagram = "(4)-(3);(3,5)-(2,4);(6,2)-(5,1);(1)-(6)".parse().unwrap();
        let o = realize(&d, None).unwrap();
        assert_eq!(o.to_string(), "r=(2,3)(4,5)(6) u=(1,2,5,6,4,3)");
    }

    #[test]
    fn default_metric_is_minimal() {
        let d: CylinderDiagram = "(1,2)-(3);(3)-(1,2)".parse().unwrap();
        let m = default_metric(&d).unwrap();
        assert_eq!(m.lengths.values().copied().collect::<Vec<_>>(), vec![1, 1, 2]);
    }

    #[test]
    fn random_metrics_are_valid() {
        let d: CylinderDiagram = "(3,5)-(2,4);(4,6)-(5,1);(1,2)-(6,3)".parse().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_metric(&d, &mut rng).unwrap();
            let o = realize(&d, Some(&m)).unwrap();
            assert_eq!(o.n_squares() as u32, m.area(&d));
        }
    }
}
