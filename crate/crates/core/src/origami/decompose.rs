use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{act, Gen, MetricData, Origami};
use crate::diagram::{Cylinder, CylinderDiagram};
use crate::error::{Error, Result};
use crate::Label;

/// A cylinder of some decomposition, remembered as its set of squares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CylinderRef {
    pub fingerprint: u64,
    pub direction: (i64, i64),
    pub squares: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub diagram: CylinderDiagram,
    pub metric: MetricData,
    /// Squares of each cylinder, in diagram order.
    pub cylinder_squares: Vec<Vec<usize>>,
    pub fingerprint: u64,
    pub direction: (i64, i64),
}

impl Decomposition {
    pub fn cylinders(&self) -> Vec<CylinderRef> {
        self.cylinder_squares
            .iter()
            .map(|s| CylinderRef {
                fingerprint: self.fingerprint,
                direction: self.direction,
                squares: s.clone(),
            })
            .collect()
    }

    /// Cylinder containing the given square.
    pub fn cylinder_of(&self, square: usize) -> Option<CylinderRef> {
        self.cylinders().into_iter().find(|c| c.squares.contains(&square))
    }
}

/// Word over `S`, `T`, `T^-1` whose matrix sends `(p, q)` to `(1, 0)`.
pub fn direction_word(p: i64, q: i64) -> Result<Vec<Gen>> {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    if gcd(p, q) != 1 {
        return Err(Error::InvalidDirection(p, q));
    }
    let (mut a, mut b) = (p, q);
    let mut word = Vec::new();
    while b != 0 {
        // T^k (a, b) = (a + k b, b) with 0 <= a + k b < |b|
        let rem = a.rem_euclid(b.abs());
        let k = (rem - a) / b;
        let g = if k > 0 { Gen::T } else { Gen::TInv };
        word.extend(std::iter::repeat(g).take(k.unsigned_abs() as usize));
        // S (rem, b) = (b, -rem)
        word.push(Gen::S);
        (a, b) = (b, -rem);
    }
    if a == -1 {
        word.extend([Gen::S, Gen::S]);
    }
    Ok(word)
}

pub fn decompose(o: &Origami, direction: (i64, i64)) -> Result<Decomposition> {
    let word = direction_word(direction.0, direction.1)?;
    let turned = act(o, &word);
    let mut d = decompose_horizontal(&turned)?;
    d.fingerprint = o.fingerprint();
    d.direction = direction;
    Ok(d)
}

fn decompose_horizontal(o: &Origami) -> Result<Decomposition> {
    let n = o.n_squares();
    let (r, u) = (o.r(), o.u());
    let vert = o.vertex_of_square();
    let orders = o.vertex_orders();
    let mut singular: Vec<bool> = (0..n).map(|x| orders[vert[x]] > 0).collect();
    if !singular.iter().any(|&s| s) {
        for x in 0..n {
            singular[x] = vert[x] == vert[0];
        }
    }
    let row_of = {
        let mut row = vec![usize::MAX; n];
        let mut k = 0;
        for s in 0..n {
            if row[s] != usize::MAX {
                continue;
            }
            let mut x = s;
            while row[x] == usize::MAX {
                row[x] = k;
                x = r[x];
            }
            k += 1;
        }
        row
    };
    let row_walk = |start: usize| {
        let mut v = vec![start];
        let mut x = r[start];
        while x != start {
            v.push(x);
            x = r[x];
        }
        v
    };

    // bottom rows of cylinders, keyed by their smallest singular square
    let mut starts: Vec<usize> = Vec::new();
    let mut row_done = vec![false; n];
    for x in 0..n {
        if singular[x] && !row_done[row_of[x]] {
            row_done[row_of[x]] = true;
            starts.push(x);
        }
    }

    let mut cylinders = Vec::new();
    let mut heights = Vec::new();
    let mut twists = Vec::new();
    let mut squares = Vec::new();
    let mut lengths: BTreeMap<usize, u32> = BTreeMap::new();
    for &sb in &starts {
        let bottom_row = row_walk(sb);
        let w = bottom_row.len();
        let mut bottom = Vec::new();
        for (i, &x) in bottom_row.iter().enumerate() {
            if singular[x] {
                let len = (1..=w).find(|&k| singular[bottom_row[(i + k) % w]]).unwrap();
                bottom.push(x);
                lengths.insert(x, len as u32);
            }
        }
        // climb while the top boundary of the current row has no cone point
        let mut sq = bottom_row.clone();
        let mut top_start = sb;
        let mut h = 1;
        loop {
            let above = u[top_start];
            if row_walk(top_start).iter().any(|&x| singular[u[x]]) {
                break;
            }
            sq.extend(row_walk(above));
            top_start = above;
            h += 1;
            if h > n {
                return Err(Error::Inconsistent("cylinder without a top boundary".into()));
            }
        }
        let top_row = row_walk(top_start);
        let first = (0..w).find(|&k| singular[u[top_row[k]]]).unwrap();
        let top: Vec<usize> = (0..w)
            .map(|k| top_row[(first + k) % w])
            .filter(|&y| singular[u[y]])
            .map(|y| u[y])
            .collect();
        twists.push(first as u32);
        heights.push(h as u32);
        sq.sort_unstable();
        squares.push(sq);
        cylinders.push((bottom, top));
    }

    // saddle connections are named by their first square, renumbered 1..N
    let names: BTreeMap<usize, Label> = lengths.keys().enumerate().map(|(i, &s)| (s, i as Label + 1)).collect();
    let diagram = CylinderDiagram::new(
        cylinders
            .iter()
            .map(|(b, t)| Cylinder {
                bottom: b.iter().map(|s| names[s]).collect(),
                top: t.iter().map(|s| names[s]).collect(),
            })
            .collect(),
    )?;
    let metric = MetricData {
        lengths: lengths.iter().map(|(s, &l)| (names[s], l)).collect(),
        heights,
        twists,
    };
    metric.validate(&diagram)?;
    Ok(Decomposition {
        diagram,
        metric,
        cylinder_squares: squares,
        fingerprint: o.fingerprint(),
        direction: (1, 0),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::origami::realize;

    fn apply(word: &[Gen], v: (i64, i64)) -> (i64, i64) {
        word.iter().fold(v, |(a, b), g| {
            let m = g.matrix();
            (m[0][0] * a + m[0][1] * b, m[1][0] * a + m[1][1] * b)
        })
    }

    #[test]
    fn words_reach_horizontal() {
        for (p, q) in [(0, 1), (1, 0), (-1, 0), (2, 3), (-3, 5), (5, -2), (0, -1), (7, 1)] {
            let w = direction_word(p, q).unwrap();
            assert_eq!(apply(&w, (p, q)), (1, 0), "({p},{q}) -> {w:?}");
        }
        assert_eq!(direction_word(0, 1).unwrap(), vec![Gen::S]);
        assert!(direction_word(2, 4).is_err());
    }

    #[test]
    fn h2_three_squares() {
        let o: Origami = "r=(2,3) u=(1,2)".parse().unwrap();
        let dec = decompose(&o, (1, 0)).unwrap();
        let two_cyl: CylinderDiagram = "(1)-(2);(2,3)-(1,3)".parse().unwrap();
        assert_eq!(dec.diagram.num_cylinders(), 2);
        assert_eq!(dec.diagram.singularity_profile().unwrap().to_string(), "H(2)");
        let back = realize(&dec.diagram, Some(&dec.metric)).unwrap();
        assert!(back.is_isomorphic(&o));
        assert!(dec.diagram.is_isomorphic(&two_cyl));
    }
}
