//! Square-tiled surfaces given by a right-neighbor permutation `r` and an
//! up-neighbor permutation `u` on squares `0..n` (printed 1-based).

mod component;
mod decompose;
mod involution;
mod proportion;
mod realize;
mod spin;

use std::collections::VecDeque;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::cycles;
use crate::error::{Error, Result};
use crate::stratum::StratumSignature;

pub use component::{component_of, component_of_origami, is_hyperelliptic};
pub use decompose::{decompose, direction_word, CylinderRef, Decomposition};
pub use involution::{minus_id_involutions, translation_involutions, FixedPoints, InvolutionKind, InvolutionReport};
pub use proportion::cylinder_proportion;
pub use realize::{default_metric, random_metric, realize, MetricData};
pub use spin::{spin_parity, spin_parity_by_majority, spin_parity_with_root};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Origami {
    r: Vec<usize>,
    u: Vec<usize>,
}

pub(crate) fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        inv[x] = i;
    }
    inv
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl Origami {
    pub fn new(r: Vec<usize>, u: Vec<usize>) -> Result<Self> {
        if r.is_empty() || r.len() != u.len() {
            return Err(Error::InvalidOrigami("permutations of different sizes".into()));
        }
        if !is_permutation(&r) || !is_permutation(&u) {
            return Err(Error::InvalidOrigami("not a permutation".into()));
        }
        let o = Self { r, u };
        if !o.is_connected() {
            return Err(Error::InvalidOrigami("not connected".into()));
        }
        Ok(o)
    }

    pub fn n_squares(&self) -> usize {
        self.r.len()
    }

    pub fn r(&self) -> &[usize] {
        &self.r
    }

    pub fn u(&self) -> &[usize] {
        &self.u
    }

    fn is_connected(&self) -> bool {
        let n = self.r.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for y in [self.r[x], self.u[x]] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Permutation sending a square to the next square (counterclockwise,
    /// after a full turn) sharing its lower-left corner.
    pub fn corner_permutation(&self) -> Vec<usize> {
        let ri = inverse(&self.r);
        let ui = inverse(&self.u);
        (0..self.n_squares())
            .map(|x| self.u[self.r[ui[ri[x]]]])
            .collect()
    }

    /// Cone points as cycles of squares sharing the lower-left corner.
    pub fn vertices(&self) -> Vec<Vec<usize>> {
        cycles(&self.corner_permutation())
    }

    /// Index in `vertices()` of the lower-left corner of each square.
    pub fn vertex_of_square(&self) -> Vec<usize> {
        let mut v = vec![0; self.n_squares()];
        for (k, c) in self.vertices().iter().enumerate() {
            for &x in c {
                v[x] = k;
            }
        }
        v
    }

    /// Cone angle orders of all vertices, in `vertices()` order.
    pub fn vertex_orders(&self) -> Vec<u32> {
        self.vertices().iter().map(|c| (c.len() - 1) as u32).collect()
    }

    pub fn genus(&self) -> u32 {
        self.vertex_orders().iter().sum::<u32>() / 2 + 1
    }

    /// Stable fingerprint used to detect cylinders from another surface.
    pub fn fingerprint(&self) -> u64 {
        let mut h = std::collections::hash_map::DefaultHasher::new();
        self.hash(&mut h);
        h.finish()
    }

    /// Conjugating bijection `phi` with `phi r = r' phi`, `phi u = u' phi`.
    pub fn isomorphism_to(&self, other: &Origami) -> Option<Vec<usize>> {
        let n = self.n_squares();
        if other.n_squares() != n {
            return None;
        }
        (0..n).find_map(|y| {
            propagate(n, y, |x, phi_x| {
                [
                    (self.r[x], other.r[phi_x]),
                    (self.u[x], other.u[phi_x]),
                ]
            })
        })
    }

    pub fn is_isomorphic(&self, other: &Origami) -> bool {
        self.isomorphism_to(other).is_some()
    }

    /// Relabel squares: square `x` becomes `p[x]`.
    pub fn relabel(&self, p: &[usize]) -> Origami {
        let n = self.n_squares();
        let mut r = vec![0; n];
        let mut u = vec![0; n];
        for x in 0..n {
            r[p[x]] = p[self.r[x]];
            u[p[x]] = p[self.u[x]];
        }
        Origami { r, u }
    }
}

/// Build a map `phi` on `0..n` with `phi(0) = y`, extending along the
/// constraints `phi(a) = b` returned by `step(x, phi(x))`. Returns `None`
/// on conflict or if the result is not a bijection.
pub(crate) fn propagate<F>(n: usize, y: usize, step: F) -> Option<Vec<usize>>
where
    F: Fn(usize, usize) -> [(usize, usize); 2],
{
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];
    phi[0] = y;
    used[y] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (a, b) in step(x, phi[x]) {
            if phi[a] == usize::MAX {
                if used[b] {
                    return None;
                }
                phi[a] = b;
                used[b] = true;
                queue.push_back(a);
            } else if phi[a] != b {
                return None;
            }
        }
    }
    phi.iter().all(|&x| x != usize::MAX).then_some(phi)
}

/// Generators of the affine action: `S` is the clockwise quarter turn
/// `[[0,1],[-1,0]]`, `T` the horizontal shear `[[1,1],[0,1]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Gen {
    S,
    T,
    TInv,
}

impl Gen {
    pub fn matrix(self) -> [[i64; 2]; 2] {
        match self {
            Gen::S => [[0, 1], [-1, 0]],
            Gen::T => [[1, 1], [0, 1]],
            Gen::TInv => [[1, -1], [0, 1]],
        }
    }
}

/// Apply the generators left to right (the first one acts first). Square
/// labels are kept.
pub fn act(o: &Origami, word: &[Gen]) -> Origami {
    let mut cur = o.clone();
    for g in word {
        cur = match g {
            Gen::S => Origami {
                r: cur.u.clone(),
                u: inverse(&cur.r),
            },
            Gen::T => {
                let ri = inverse(&cur.r);
                Origami {
                    u: (0..cur.n_squares()).map(|x| cur.u[ri[x]]).collect(),
                    r: cur.r,
                }
            }
            Gen::TInv => Origami {
                u: (0..cur.n_squares()).map(|x| cur.u[cur.r[x]]).collect(),
                r: cur.r,
            },
        };
    }
    cur
}

pub fn origami_stratum(o: &Origami) -> StratumSignature {
    StratumSignature::new(o.vertex_orders()).expect("vertex orders of an origami sum to an even number")
}

fn write_perm(f: &mut fmt::Formatter<'_>, p: &[usize]) -> fmt::Result {
    let cyc = cycles(p);
    let n = p.len();
    let mut wrote = false;
    for c in &cyc {
        // singletons are omitted, except the last square which fixes n
        if c.len() == 1 && c[0] != n - 1 {
            continue;
        }
        let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "({})", s.join(","))?;
        wrote = true;
    }
    if !wrote {
        f.write_str("()")?;
    }
    Ok(())
}

impl fmt::Display for Origami {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("r=")?;
        write_perm(f, &self.r)?;
        f.write_str(" u=")?;
        write_perm(f, &self.u)
    }
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let bad = || Error::InvalidOrigami(format!("bad cycle notation '{s}'"));
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(bad)?;
        let end = body.find(')').ok_or_else(bad)?;
        let items: Vec<usize> = body[..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>().ok().filter(|&x| x >= 1).map(|x| x - 1).ok_or_else(bad))
            .collect::<Result<_>>()?;
        if !items.is_empty() {
            out.push(items);
        }
        rest = body[end + 1..].trim_start();
    }
    Ok(out)
}

fn perm_from_cycles(cyc: &[Vec<usize>], n: usize) -> Result<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut seen = vec![false; n];
    for c in cyc {
        for (i, &x) in c.iter().enumerate() {
            if seen[x] {
                return Err(Error::InvalidOrigami(format!("square {} repeated", x + 1)));
            }
            seen[x] = true;
            p[x] = c[(i + 1) % c.len()];
        }
    }
    Ok(p)
}

impl FromStr for Origami {
    type Err = Error;

    /// `r=(1,2)(3) u=(1,3)`; fixed points may be omitted and the number of
    /// squares is the largest one mentioned.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let ri = s.find("r=").ok_or_else(|| Error::InvalidOrigami("missing r=".into()))?;
        let ui = s.find("u=").ok_or_else(|| Error::InvalidOrigami("missing u=".into()))?;
        let (rs, us) = if ri < ui {
            (&s[ri + 2..ui], &s[ui + 2..])
        } else {
            (&s[ri + 2..], &s[ui + 2..ri])
        };
        let trim = |t: &str| t.trim().trim_end_matches(',').trim().to_string();
        let rc = parse_cycles(&trim(rs))?;
        let uc = parse_cycles(&trim(us))?;
        let n = rc.iter().chain(&uc).flatten().max().map_or(1, |m| m + 1);
        Origami::new(perm_from_cycles(&rc, n)?, perm_from_cycles(&uc, n)?)
    }
}

impl Serialize for Origami {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Origami {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print() {
        let o: Origami = "r=(2 3) u=(1 2)".parse().unwrap();
        assert_eq!(o.n_squares(), 3);
        assert_eq!(o.to_string(), "r=(2,3) u=(1,2)(3)");
        assert_eq!(o.to_string().parse::<Origami>().unwrap(), o);
        assert_eq!(origami_stratum(&o).to_string(), "H(2)");
    }

    #[test]
    fn torus() {
        let o: Origami = "r=(1) u=(1)".parse().unwrap();
        assert_eq!(origami_stratum(&o).to_string(), "H(0)");
    }

    #[test]
    fn disconnected_rejected() {
        assert!(Origami::new(vec![0, 1], vec![0, 1]).is_err());
    }

    #[test]
    fn s_has_order_four() {
        let o: Origami = "r=(2 3) u=(1 2)".parse().unwrap();
        let o4 = act(&o, &[Gen::S; 4]);
        assert_eq!(o4, o);
        let o2 = act(&o, &[Gen::S, Gen::S]);
        assert!(o2.is_isomorphic(&o));
        assert_eq!(act(&act(&o, &[Gen::T]), &[Gen::TInv]), o);
    }
}
