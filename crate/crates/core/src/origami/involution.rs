use serde::{Deserialize, Serialize};

use super::{inverse, origami_stratum, propagate, Origami};
use crate::diagram::cycles;
use crate::error::{Error, Result};
use crate::stratum::StratumSignature;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum InvolutionKind {
    MinusId,
    Translation,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPoints {
    pub centers: usize,
    pub vertical_edges: usize,
    pub horizontal_edges: usize,
    /// Cone orders of the fixed vertices (0 for regular corners).
    pub corners: Vec<u32>,
}

impl FixedPoints {
    pub fn total(&self) -> usize {
        self.centers + self.vertical_edges + self.horizontal_edges + self.corners.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvolutionReport {
    pub kind: InvolutionKind,
    /// Image of each square.
    pub witness: Vec<usize>,
    pub fixed_points: FixedPoints,
    /// Orders of zeros (order >= 1) swapped in pairs, one entry per pair.
    pub exchanged_zero_orders: Vec<u32>,
    pub quotient_genus: u32,
    /// Quadratic signature of the quotient (`MinusId` only).
    pub quotient_signature: Option<Vec<i64>>,
    /// Quotient surface (`Translation` only).
    pub quotient: Option<Origami>,
    pub quotient_stratum: Option<StratumSignature>,
}

impl InvolutionReport {
    pub fn fixed_point_count(&self) -> usize {
        self.fixed_points.total()
    }

    pub fn is_free(&self) -> bool {
        self.fixed_point_count() == 0
    }

    /// Cycle notation of the witness, 1-based.
    pub fn witness_cycles(&self) -> String {
        cycles(&self.witness)
            .iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let s: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", s.join(","))
            })
            .collect()
    }
}

fn is_involution(p: &[usize]) -> bool {
    p.iter().enumerate().all(|(i, &x)| p[x] == i)
}

/// Action on vertices: `vmap[v]` is the image of vertex `v`.
fn vertex_action(o: &Origami, image_of_corner: impl Fn(usize) -> usize) -> Vec<usize> {
    let verts = o.vertices();
    let vs = o.vertex_of_square();
    verts.iter().map(|c| vs[image_of_corner(c[0])]).collect()
}

fn corner_data(o: &Origami, vmap: &[usize]) -> (Vec<u32>, Vec<u32>) {
    let orders = o.vertex_orders();
    let mut fixed = Vec::new();
    let mut exchanged = Vec::new();
    for (v, &w) in vmap.iter().enumerate() {
        if v == w {
            fixed.push(orders[v]);
        } else if v < w && orders[v] > 0 {
            exchanged.push(orders[v]);
        }
    }
    fixed.sort_unstable_by(|a, b| b.cmp(a));
    exchanged.sort_unstable_by(|a, b| b.cmp(a));
    (fixed, exchanged)
}

/// Nontrivial translation automorphisms of order two, with quotients.
pub fn translation_involutions(o: &Origami) -> Vec<InvolutionReport> {
    let n = o.n_squares();
    let (r, u) = (o.r(), o.u());
    let mut out = Vec::new();
    for y in 1..n {
        let Some(rho) = propagate(n, y, |x, px| [(r[x], r[px]), (u[x], u[px])]) else {
            continue;
        };
        if !is_involution(&rho) {
            continue;
        }
        let vmap = vertex_action(o, |x| rho[x]);
        let (corners, exchanged) = corner_data(o, &vmap);
        // quotient on orbits {x, rho x}, numbered by smaller element
        let mut idx = vec![usize::MAX; n];
        let mut k = 0;
        for x in 0..n {
            if idx[x] == usize::MAX {
                idx[x] = k;
                idx[rho[x]] = k;
                k += 1;
            }
        }
        let mut qr = vec![0; k];
        let mut qu = vec![0; k];
        for x in 0..n {
            qr[idx[x]] = idx[r[x]];
            qu[idx[x]] = idx[u[x]];
        }
        let quotient = Origami::new(qr, qu).expect("quotient of a connected surface is connected");
        let qs = origami_stratum(&quotient);
        out.push(InvolutionReport {
            kind: InvolutionKind::Translation,
            witness: rho,
            fixed_points: FixedPoints {
                corners,
                ..FixedPoints::default()
            },
            exchanged_zero_orders: exchanged,
            quotient_genus: qs.genus(),
            quotient_signature: None,
            quotient: Some(quotient),
            quotient_stratum: Some(qs),
        });
    }
    out
}

/// Automorphisms of order two acting by `-Id` on the flat structure, with
/// fixed points, quotient genus and the quadratic signature of the quotient.
pub fn minus_id_involutions(o: &Origami) -> Result<Vec<InvolutionReport>> {
    let n = o.n_squares();
    let (r, u) = (o.r(), o.u());
    let ri = inverse(r);
    let ui = inverse(u);
    let g = o.genus() as i64;
    let mut out = Vec::new();
    for y in 0..n {
        let Some(pi) = propagate(n, y, |x, px| [(r[x], ri[px]), (u[x], ui[px])]) else {
            continue;
        };
        if !is_involution(&pi) {
            continue;
        }
        // lower-left corner of x goes to the upper-right corner of pi(x)
        let vmap = vertex_action(o, |x| u[r[pi[x]]]);
        let (corners, exchanged) = corner_data(o, &vmap);
        let fp = FixedPoints {
            centers: (0..n).filter(|&x| pi[x] == x).count(),
            vertical_edges: (0..n).filter(|&x| pi[x] == r[x]).count(),
            horizontal_edges: (0..n).filter(|&x| pi[x] == u[x]).count(),
            corners,
        };
        let f = fp.total() as i64;
        // 2 - 2g = 2 (2 - 2g') - f
        let four_g = 2 + 2 * g - f;
        if four_g < 0 || four_g % 4 != 0 {
            return Err(Error::Inconsistent(format!(
                "-Id involution with {f} fixed points on genus {g}"
            )));
        }
        let gq = four_g / 4;
        let mut sig: Vec<i64> = Vec::new();
        let regular = fp.centers + fp.vertical_edges + fp.horizontal_edges;
        sig.extend(std::iter::repeat(-1).take(regular));
        sig.extend(fp.corners.iter().map(|&k| k as i64 - 1));
        sig.extend(exchanged.iter().map(|&k| 2 * k as i64));
        sig.retain(|&x| x != 0);
        sig.sort_unstable_by(|a, b| b.cmp(a));
        if sig.iter().sum::<i64>() != 4 * gq - 4 {
            return Err(Error::Inconsistent(format!(
                "quadratic signature {sig:?} does not sum to {}",
                4 * gq - 4
            )));
        }
        out.push(InvolutionReport {
            kind: InvolutionKind::MinusId,
            witness: pi,
            fixed_points: fp,
            exchanged_zero_orders: exchanged,
            quotient_genus: gq as u32,
            quotient_signature: Some(sig),
            quotient: None,
            quotient_stratum: None,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h2_three_squares() {
        let o: Origami = "r=(2,3) u=(1,2)".parse().unwrap();
        assert!(translation_involutions(&o).is_empty());
        let m = minus_id_involutions(&o).unwrap();
        // genus 2 is hyperelliptic: six fixed points, quotient a sphere
        assert!(m.iter().any(|i| i.fixed_point_count() == 6 && i.quotient_genus == 0));
    }
}
