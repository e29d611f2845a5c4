//! Canonical forms of cylinder diagrams.
//!
//! Symmetries: relabeling, cylinder permutation and independent rotation of
//! every bottom and top word. Each cylinder is encoded as the block
//! `[len(bottom), bottom.., len(top), top..]` with labels renumbered in
//! order of first appearance. Blocks are prefix-free, so the minimum over
//! all symmetries can be built one cylinder at a time, keeping every
//! partial state that reaches the minimal block.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagram::{Cylinder, CylinderDiagram};
use crate::Label;

/// Minimal serialization of a diagram; equal keys iff isomorphic diagrams.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonical representative, decoded from the key.
    pub fn diagram(&self) -> CylinderDiagram {
        let k = &self.0;
        let mut cyls = Vec::new();
        let mut i = 0;
        while i < k.len() {
            let nb = k[i] as usize;
            let bottom = k[i + 1..i + 1 + nb].iter().map(|&x| x as Label).collect();
            i += 1 + nb;
            let nt = k[i] as usize;
            let top = k[i + 1..i + 1 + nt].iter().map(|&x| x as Label).collect();
            i += 1 + nt;
            cyls.push(Cylinder { bottom, top });
        }
        CylinderDiagram::new(cyls).expect("canonical key decodes to a valid diagram")
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.diagram())
    }
}

#[derive(Clone)]
struct State {
    used: u32,
    map: HashMap<Label, u8>,
    next: u8,
}

fn rotations(w: &[Label]) -> impl Iterator<Item = Vec<Label>> + '_ {
    (0..w.len()).map(move |r| w[r..].iter().chain(&w[..r]).copied().collect())
}

fn encode(st: &State, bottom: &[Label], top: &[Label]) -> (Vec<u8>, State) {
    let mut s = st.clone();
    let mut block = Vec::with_capacity(bottom.len() + top.len() + 2);
    for w in [bottom, top] {
        block.push(w.len() as u8);
        for &l in w {
            let id = *s.map.entry(l).or_insert_with(|| {
                s.next += 1;
                s.next
            });
            block.push(id);
        }
    }
    (block, s)
}

pub fn canonical_form(d: &CylinderDiagram) -> CanonicalKey {
    let cyls = d.cylinders();
    let mut states = vec![State {
        used: 0,
        map: HashMap::new(),
        next: 0,
    }];
    let mut key = Vec::new();
    for _ in 0..cyls.len() {
        let mut best: Option<Vec<u8>> = None;
        let mut next_states = Vec::new();
        for st in &states {
            for (ci, c) in cyls.iter().enumerate() {
                if st.used & (1 << ci) != 0 {
                    continue;
                }
                for b in rotations(&c.bottom) {
                    for t in rotations(&c.top) {
                        let (block, mut ns) = encode(st, &b, &t);
                        ns.used |= 1 << ci;
                        match &best {
                            Some(cur) if block > *cur => continue,
                            Some(cur) if block < *cur => next_states.clear(),
                            _ => {}
                        }
                        if best.as_ref() != Some(&block) {
                            best = Some(block);
                        }
                        next_states.push(ns);
                    }
                }
            }
        }
        key.extend(best.expect("at least one cylinder left"));
        // states with identical label maps are redundant
        next_states.sort_by_key(|s| {
            let mut m: Vec<_> = s.map.iter().map(|(&a, &b)| (a, b)).collect();
            m.sort_unstable();
            (s.used, m)
        });
        next_states.dedup_by(|a, b| a.used == b.used && a.map == b.map);
        states = next_states;
    }
    CanonicalKey(key)
}

impl CylinderDiagram {
    pub fn canonical_key(&self) -> CanonicalKey {
        canonical_form(self)
    }

    pub fn canonical(&self) -> CylinderDiagram {
        canonical_form(self).diagram()
    }

    pub fn is_isomorphic(&self, other: &CylinderDiagram) -> bool {
        self.num_labels() == other.num_labels()
            && self.num_cylinders() == other.num_cylinders()
            && canonical_form(self) == canonical_form(other)
    }

    /// Images under the half turn and the two axis reflections of the
    /// plane. Each reverses orientation of the horizontal, the vertical or
    /// both, so top and bottom words get swapped and/or reversed.
    pub fn mirror_images(&self) -> [CylinderDiagram; 3] {
        let map = |f: &dyn Fn(&Cylinder) -> Cylinder| {
            CylinderDiagram::new(self.cylinders().iter().map(f).collect())
                .expect("mirror of a valid diagram is valid")
        };
        let rev = |w: &[Label]| w.iter().rev().copied().collect::<Vec<_>>();
        [
            map(&|c| Cylinder::new(rev(&c.top), rev(&c.bottom))),
            map(&|c| Cylinder::new(rev(&c.bottom), rev(&c.top))),
            map(&|c| Cylinder::new(c.top.clone(), c.bottom.clone())),
        ]
    }

    /// Canonical key of the class under isomorphism together with the
    /// half turn and reflections.
    pub fn symmetric_key(&self) -> CanonicalKey {
        self.mirror_images()
            .iter()
            .map(canonical_form)
            .chain([canonical_form(self)])
            .min()
            .expect("nonempty")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> CylinderDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn relabel_invariance() {
        assert_eq!(
            canonical_form(&d("(1,2,3)-(3,2,1)")),
            canonical_form(&d("(1,2,3)-(2,1,3)"))
        );
    }

    #[test]
    fn rotation_and_order_invariance() {
        let a = d("(4)-(1);(2)-(6);(5)-(3);(1,6,3)-(4,2,5)");
        let b = d("(6,3,1)-(2,5,4);(5)-(3);(4)-(1);(2)-(6)");
        assert_eq!(a.canonical_key(), b.canonical_key());
        assert_eq!(a.canonical().canonical(), a.canonical());
    }

    #[test]
    fn mirrors() {
        let a = d("(1)-(2);(3)-(4);(5)-(1,6);(2,4,6)-(3,5)");
        let b = d("(1)-(2);(3)-(4);(2,5)-(6);(4,6)-(1,3,5)");
        assert!(!a.is_isomorphic(&b));
        assert_eq!(a.symmetric_key(), b.symmetric_key());
        for m in a.mirror_images() {
            assert_eq!(m.cone_orders().iter().sum::<u32>(), 4);
            assert_eq!(m.symmetric_key(), a.symmetric_key());
        }
    }

    #[test]
    fn representative_is_first_occurrence() {
        let c = d("(5)-(7);(7,9)-(9,5)").canonical();
        assert_eq!(c.to_string(), "(1)-(2);(2,3)-(1,3)");
    }
}
