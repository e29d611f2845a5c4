//! Cylinder diagrams: parsing, validation, singularity data and surgery.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Side};
use crate::stratum::StratumSignature;
use crate::{Label, MAX_LABELS};

/// One cylinder: the saddle connections on its bottom and top boundary,
/// each read left to right. The words are cyclic; the stored starting
/// letter only matters for serialization.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cylinder {
    pub bottom: Vec<Label>,
    pub top: Vec<Label>,
}

impl Cylinder {
    pub fn new(bottom: Vec<Label>, top: Vec<Label>) -> Self {
        Self { bottom, top }
    }
}

/// Where a saddle connection sits: cylinder index and position in the word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Slot {
    pub cyl: usize,
    pub pos: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderFlags {
    pub simple: bool,
    pub semi_simple: bool,
    pub strictly_semi_simple: bool,
    pub self_adjacent: bool,
}

/// A validated cylinder diagram. Labels are arbitrary positive integers,
/// each appearing once on a bottom and once on a top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderDiagram {
    cylinders: Vec<Cylinder>,
    labels: Vec<Label>,
}

impl CylinderDiagram {
    pub fn new(cylinders: Vec<Cylinder>) -> Result<Self> {
        let mut bottoms = BTreeMap::new();
        let mut tops = BTreeMap::new();
        for (i, c) in cylinders.iter().enumerate() {
            if c.bottom.is_empty() || c.top.is_empty() {
                return Err(Error::EmptyWord(i + 1));
            }
            for &l in &c.bottom {
                if l == 0 {
                    return Err(Error::ZeroLabel);
                }
                if bottoms.insert(l, i).is_some() {
                    return Err(Error::DuplicateLabel(l, Side::Bottom));
                }
            }
            for &l in &c.top {
                if l == 0 {
                    return Err(Error::ZeroLabel);
                }
                if tops.insert(l, i).is_some() {
                    return Err(Error::DuplicateLabel(l, Side::Top));
                }
            }
        }
        if cylinders.is_empty() {
            return Err(Error::Syntax {
                pos: 0,
                msg: "no cylinders".into(),
            });
        }
        for &l in bottoms.keys() {
            if !tops.contains_key(&l) {
                return Err(Error::MissingLabel(l, Side::Top));
            }
        }
        for &l in tops.keys() {
            if !bottoms.contains_key(&l) {
                return Err(Error::MissingLabel(l, Side::Bottom));
            }
        }
        if bottoms.len() > MAX_LABELS {
            return Err(Error::TooManyLabels(bottoms.len()));
        }
        // connectivity of the cylinders through shared labels
        let n = cylinders.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (l, &b) in &bottoms {
            let t = tops[l];
            let (rb, rt) = (find(&mut parent, b), find(&mut parent, t));
            parent[rb] = rt;
        }
        let root = find(&mut parent, 0);
        if (0..n).any(|i| find(&mut parent, i) != root) {
            return Err(Error::Disconnected);
        }
        Ok(Self {
            labels: bottoms.into_keys().collect(),
            cylinders,
        })
    }

    pub fn cylinders(&self) -> &[Cylinder] {
        &self.cylinders
    }

    pub fn num_cylinders(&self) -> usize {
        self.cylinders.len()
    }

    pub fn num_labels(&self) -> usize {
        self.labels.len()
    }

    /// Sorted label universe.
    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Dense index of a label in `labels()`.
    pub fn index_of(&self, label: Label) -> Option<usize> {
        self.labels.binary_search(&label).ok()
    }

    pub(crate) fn bottom_slots(&self) -> Vec<Slot> {
        let mut out = vec![Slot { cyl: 0, pos: 0 }; self.labels.len()];
        for (cyl, c) in self.cylinders.iter().enumerate() {
            for (pos, &l) in c.bottom.iter().enumerate() {
                out[self.index_of(l).unwrap()] = Slot { cyl, pos };
            }
        }
        out
    }

    pub(crate) fn top_slots(&self) -> Vec<Slot> {
        let mut out = vec![Slot { cyl: 0, pos: 0 }; self.labels.len()];
        for (cyl, c) in self.cylinders.iter().enumerate() {
            for (pos, &l) in c.top.iter().enumerate() {
                out[self.index_of(l).unwrap()] = Slot { cyl, pos };
            }
        }
        out
    }

    /// Cylinder carrying `label` on its bottom.
    pub fn cylinder_below_label(&self, label: Label) -> Option<usize> {
        self.cylinders.iter().position(|c| c.bottom.contains(&label))
    }

    /// Cylinder carrying `label` on its top.
    pub fn cylinder_above_label(&self, label: Label) -> Option<usize> {
        self.cylinders.iter().position(|c| c.top.contains(&label))
    }

    /// Sector successor permutation on the `2N` tokens. Token `2i` is the
    /// bottom corner whose east ray is label `i`, token `2i+1` is the top
    /// corner whose west ray is label `i` (dense indices).
    pub fn sector_permutation(&self) -> Vec<usize> {
        let n = self.labels.len();
        let bot = self.bottom_slots();
        let top = self.top_slots();
        let mut succ = vec![0; 2 * n];
        for i in 0..n {
            let b = bot[i];
            let word = &self.cylinders[b.cyl].bottom;
            let pred = word[(b.pos + word.len() - 1) % word.len()];
            succ[2 * i] = 2 * self.index_of(pred).unwrap() + 1;
            let t = top[i];
            let word = &self.cylinders[t.cyl].top;
            let next = word[(t.pos + 1) % word.len()];
            succ[2 * i + 1] = 2 * self.index_of(next).unwrap();
        }
        succ
    }

    /// Cycles of the sector permutation, one per cone point, in order of
    /// their smallest token.
    pub fn zero_cycles(&self) -> Vec<Vec<usize>> {
        cycles(&self.sector_permutation())
    }

    /// For each token, the index of its cone point in `zero_cycles()`.
    pub fn zero_of_token(&self) -> Vec<usize> {
        let cyc = self.zero_cycles();
        let mut z = vec![0; 2 * self.labels.len()];
        for (k, c) in cyc.iter().enumerate() {
            for &t in c {
                z[t] = k;
            }
        }
        z
    }

    /// Cone point at the left end of a label.
    pub fn left_zero(&self, label: Label) -> usize {
        self.zero_of_token()[2 * self.index_of(label).expect("label")]
    }

    /// Cone point at the right end of a label.
    pub fn right_zero(&self, label: Label) -> usize {
        self.zero_of_token()[2 * self.index_of(label).expect("label") + 1]
    }

    /// Orders of all cone points, including order-0 marked points, in the
    /// order of `zero_cycles()`.
    pub fn cone_orders(&self) -> Vec<u32> {
        self.zero_cycles()
            .iter()
            .map(|c| (c.len() / 2 - 1) as u32)
            .collect()
    }

    pub fn has_marked_point(&self) -> bool {
        self.cone_orders().contains(&0)
    }

    pub fn genus(&self) -> u32 {
        self.cone_orders().iter().sum::<u32>() / 2 + 1
    }

    /// Stratum of the diagram. Fails on diagrams that carry a regular
    /// marked point.
    pub fn singularity_profile(&self) -> Result<StratumSignature> {
        let orders = self.cone_orders();
        if orders.contains(&0) {
            return Err(Error::MarkedRegularPoint);
        }
        StratumSignature::new(orders)
    }

    pub fn structural_flags(&self) -> Vec<CylinderFlags> {
        self.cylinders
            .iter()
            .map(|c| {
                let simple = c.bottom.len() == 1 && c.top.len() == 1;
                let semi_simple = c.bottom.len().min(c.top.len()) == 1;
                CylinderFlags {
                    simple,
                    semi_simple,
                    strictly_semi_simple: semi_simple && !simple,
                    self_adjacent: c.bottom.iter().any(|l| c.top.contains(l)),
                }
            })
            .collect()
    }

    /// Collapse the simple cylinder `i` (0-based): the cylinder is removed
    /// and its top label is replaced by its bottom label everywhere.
    pub fn collapse_simple_cylinder(&self, i: usize) -> Result<CylinderDiagram> {
        let c = self.cylinders.get(i).ok_or(Error::NoSuchCylinder(i + 1))?;
        if c.bottom.len() != 1 || c.top.len() != 1 {
            return Err(Error::NotSimple(i + 1));
        }
        let (beta, tau) = (c.bottom[0], c.top[0]);
        let z = self.zero_of_token();
        let zb = z[2 * self.index_of(beta).unwrap()];
        let zt = z[2 * self.index_of(tau).unwrap() + 1];
        if beta == tau || zb == zt {
            return Err(Error::SameZero(i + 1));
        }
        let cylinders = self
            .cylinders
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, c)| Cylinder {
                bottom: c
                    .bottom
                    .iter()
                    .map(|&l| if l == tau { beta } else { l })
                    .collect(),
                top: c.top.clone(),
            })
            .collect();
        CylinderDiagram::new(cylinders)
    }

    /// Relabel through `f`; `f` must be injective.
    pub fn relabel(&self, f: impl Fn(Label) -> Label) -> Result<CylinderDiagram> {
        CylinderDiagram::new(
            self.cylinders
                .iter()
                .map(|c| Cylinder {
                    bottom: c.bottom.iter().map(|&l| f(l)).collect(),
                    top: c.top.iter().map(|&l| f(l)).collect(),
                })
                .collect(),
        )
    }
}

pub(crate) fn cycles(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = perm[x];
        }
        out.push(c);
    }
    out
}

fn write_word(f: &mut fmt::Formatter<'_>, w: &[Label]) -> fmt::Result {
    f.write_str("(")?;
    for (i, l) in w.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{l}")?;
    }
    f.write_str(")")
}

impl fmt::Display for CylinderDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.cylinders.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write_word(f, &c.bottom)?;
            f.write_str("-")?;
            write_word(f, &c.top)?;
        }
        Ok(())
    }
}

struct Lexer<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!("expected '{}', found '{}'", c as char, x as char))),
            None => Err(self.err(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn number(&mut self) -> Result<Label> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a label"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| Error::Syntax {
                pos: start,
                msg: "label out of range".into(),
            })
    }

    fn word(&mut self) -> Result<Vec<Label>> {
        self.expect(b'(')?;
        let mut w = vec![self.number()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            w.push(self.number()?);
        }
        self.expect(b')')?;
        Ok(w)
    }
}

impl FromStr for CylinderDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer {
            bytes: s.as_bytes(),
            pos: 0,
        };
        let mut cylinders = Vec::new();
        loop {
            let bottom = lx.word()?;
            lx.expect(b'-')?;
            let top = lx.word()?;
            cylinders.push(Cylinder { bottom, top });
            match lx.peek() {
                Some(b';') => lx.pos += 1,
                None => break,
                Some(c) => return Err(lx.err(format!("unexpected '{}'", c as char))),
            }
        }
        CylinderDiagram::new(cylinders)
    }
}

impl Serialize for CylinderDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CylinderDiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
