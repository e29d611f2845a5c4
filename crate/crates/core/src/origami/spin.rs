//! Parity of the spin structure of a square-tiled surface with even zeros.
//!
//! Closed curves are cycles of the square adjacency graph: a curve runs
//! through square centers and leaves a square through one of its four
//! sides (ports R, U, L, D). The winding number of such a curve is the sum
//! of its turns; `q = ind + 1 (mod 2)` is the quadratic form whose Arf
//! invariant is the parity.

use std::collections::VecDeque;

use super::Origami;
use crate::error::{Error, Result};

const R: usize = 0;
const U: usize = 1;
const L: usize = 2;
const D: usize = 3;

/// Outward heading of a port in quarter turns (R = 0, U = 1, L = 2, D = 3).
fn heading(port: usize) -> i64 {
    port as i64
}

/// Position of a port on the square boundary, parametrized counterclockwise
/// from the lower-left corner on `[0, 4)`. The second curve of a pair is
/// pushed off consistently to one side, so shared sides never give
/// coincident points.
fn boundary_point(port: usize, pushed: bool) -> f64 {
    let base = match port {
        D => 0.5,
        R => 1.5,
        U => 2.5,
        _ => 3.5,
    };
    if !pushed {
        return base;
    }
    match port {
        D | R => base + 0.25,
        _ => base - 0.25,
    }
}

#[derive(Clone, Copy)]
struct Step {
    from: usize,
    out_port: usize,
    to: usize,
    in_port: usize,
}

struct Graph {
    // per square: (edge id, neighbor, my port, their port)
    adj: Vec<Vec<(usize, usize, usize, usize)>>,
    n_edges: usize,
}

fn adjacency(o: &Origami) -> Graph {
    let n = o.n_squares();
    let mut adj = vec![Vec::new(); n];
    for x in 0..n {
        let y = o.r()[x];
        adj[x].push((2 * x, y, R, L));
        adj[y].push((2 * x, x, L, R));
        let y = o.u()[x];
        adj[x].push((2 * x + 1, y, U, D));
        adj[y].push((2 * x + 1, x, D, U));
    }
    Graph { adj, n_edges: 2 * n }
}

/// Fundamental cycles of a BFS tree rooted at `root`, each as a closed
/// walk visiting every square at most once.
fn fundamental_cycles(o: &Origami, root: usize) -> Vec<Vec<Step>> {
    let n = o.n_squares();
    let g = adjacency(o);
    // parent step: from parent to child
    let mut parent: Vec<Option<Step>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; g.n_edges];
    depth[root] = 0;
    let mut q = VecDeque::from([root]);
    while let Some(x) = q.pop_front() {
        for &(e, y, px, py) in &g.adj[x] {
            if depth[y] == usize::MAX {
                depth[y] = depth[x] + 1;
                tree_edge[e] = true;
                parent[y] = Some(Step {
                    from: x,
                    out_port: px,
                    to: y,
                    in_port: py,
                });
                q.push_back(y);
            }
        }
    }
    let mut out = Vec::new();
    for x in 0..n {
        // each edge once: R edge and U edge of x, from x's side
        for &(e, y, px, py) in g.adj[x].iter().filter(|a| a.0 / 2 == x && (a.2 == R || a.2 == U)) {
            if tree_edge[e] {
                continue;
            }
            // walk: x -> y over e, then y up to the common ancestor, then
            // down to x
            let mut up_from_y = Vec::new();
            let mut down_to_x = Vec::new();
            let (mut a, mut b) = (y, x);
            while a != b {
                if depth[a] >= depth[b] {
                    let s = parent[a].unwrap();
                    up_from_y.push(Step {
                        from: s.to,
                        out_port: s.in_port,
                        to: s.from,
                        in_port: s.out_port,
                    });
                    a = s.from;
                } else {
                    let s = parent[b].unwrap();
                    down_to_x.push(s);
                    b = s.from;
                }
            }
            down_to_x.reverse();
            let mut walk = vec![Step {
                from: x,
                out_port: px,
                to: y,
                in_port: py,
            }];
            walk.extend(up_from_y);
            walk.extend(down_to_x);
            out.push(walk);
        }
    }
    out
}

/// Per visited square: (square, entry port, exit port).
fn chords(walk: &[Step]) -> Vec<(usize, usize, usize)> {
    let k = walk.len();
    (0..k)
        .map(|i| {
            let inc = walk[i];
            let next = walk[(i + 1) % k];
            debug_assert_eq!(inc.to, next.from);
            (inc.to, inc.in_port, next.out_port)
        })
        .collect()
}

fn winding(walk: &[Step]) -> i64 {
    let turns: i64 = chords(walk)
        .iter()
        .map(|&(_, pin, pout)| {
            let h_in = heading(pin) + 2;
            (heading(pout) - h_in).rem_euclid(4)
        })
        .map(|t| match t {
            0 => 0,
            1 => 1,
            3 => -1,
            // a U-turn needs the same side twice, impossible on a simple walk
            _ => unreachable!("U-turn on a simple cycle"),
        })
        .sum();
    debug_assert_eq!(turns % 4, 0);
    turns / 4
}

fn crossings(a: &[(usize, usize, usize)], b: &[(usize, usize, usize)]) -> u32 {
    let mut count = 0;
    for &(s, a1, a2) in a {
        for &(t, b1, b2) in b {
            if s != t {
                continue;
            }
            let (x1, x2) = (boundary_point(a1, false), boundary_point(a2, false));
            let (lo, hi) = (x1.min(x2), x1.max(x2));
            let inside = |p: f64| lo < p && p < hi;
            if inside(boundary_point(b1, true)) != inside(boundary_point(b2, true)) {
                count += 1;
            }
        }
    }
    count % 2
}

/// Symplectic data over F_2 on the fundamental cycles: the form matrix
/// (as bitmasks) and `q` of each cycle.
struct Form {
    j: Vec<u128>,
    q: Vec<u8>,
}

impl Form {
    fn pair(&self, a: u128, b: u128) -> u8 {
        let mut s = 0;
        let mut m = a;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            s ^= (self.j[i] & b).count_ones() & 1;
            m &= m - 1;
        }
        s as u8
    }

    fn q_of(&self, a: u128) -> u8 {
        let mut lin = 0u32;
        let mut quad = 0u32;
        let mut m = a;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            lin += self.q[i] as u32;
            quad += (self.j[i] & a).count_ones();
            m &= m - 1;
        }
        ((lin + quad / 2) % 2) as u8
    }
}

fn form(o: &Origami, root: usize) -> Result<Form> {
    let walks = fundamental_cycles(o, root);
    if walks.len() > 128 {
        return Err(Error::ResourceBound("too many squares for spin computation".into()));
    }
    let ch: Vec<_> = walks.iter().map(|w| chords(w)).collect();
    let m = walks.len();
    let mut j = vec![0u128; m];
    for a in 0..m {
        for b in a + 1..m {
            if crossings(&ch[a], &ch[b]) == 1 {
                j[a] |= 1 << b;
                j[b] |= 1 << a;
            }
        }
    }
    let q = walks.iter().map(|w| ((winding(w) + 1).rem_euclid(2)) as u8).collect();
    Ok(Form { j, q })
}

/// Symplectic Gram-Schmidt; returns the hyperbolic pairs.
fn symplectic_basis(f: &Form) -> Vec<(u128, u128)> {
    let mut pool: Vec<u128> = (0..f.q.len()).map(|i| 1u128 << i).collect();
    let mut pairs = Vec::new();
    while let Some(a) = pool.pop() {
        let Some(k) = pool.iter().position(|&b| f.pair(a, b) == 1) else {
            continue;
        };
        let b = pool.swap_remove(k);
        for v in pool.iter_mut() {
            let (vb, va) = (f.pair(*v, b), f.pair(*v, a));
            if vb == 1 {
                *v ^= a;
            }
            if va == 1 {
                *v ^= b;
            }
        }
        pairs.push((a, b));
    }
    pairs
}

fn check_even(o: &Origami) -> Result<()> {
    if let Some(&k) = o.vertex_orders().iter().find(|&&k| k % 2 == 1) {
        return Err(Error::OddZero(k));
    }
    Ok(())
}

/// Parity from the spanning tree rooted at `root`: 0 even, 1 odd.
pub fn spin_parity_with_root(o: &Origami, root: usize) -> Result<u8> {
    check_even(o)?;
    let f = form(o, root)?;
    let pairs = symplectic_basis(&f);
    if pairs.len() != o.genus() as usize {
        return Err(Error::Inconsistent(format!(
            "{} hyperbolic pairs on a genus {} surface",
            pairs.len(),
            o.genus()
        )));
    }
    Ok(pairs.iter().map(|&(a, b)| f.q_of(a) & f.q_of(b)).fold(0, |x, y| x ^ y))
}

/// Parity by counting the classes with `q = 1`: the Arf invariant is the
/// value `q` takes most often.
pub fn spin_parity_by_majority(o: &Origami) -> Result<u8> {
    check_even(o)?;
    let f = form(o, 0)?;
    let pairs = symplectic_basis(&f);
    let basis: Vec<u128> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
    let total = 1usize << basis.len();
    let ones = (0..total)
        .filter(|&mask| {
            let v = (0..basis.len())
                .filter(|i| mask >> i & 1 == 1)
                .fold(0u128, |acc, i| acc ^ basis[i]);
            f.q_of(v) == 1
        })
        .count();
    Ok(u8::from(2 * ones > total))
}

/// Parity of the spin structure (0 even, 1 odd), computed from two
/// different spanning trees that must agree.
pub fn spin_parity(o: &Origami) -> Result<u8> {
    let a = spin_parity_with_root(o, 0)?;
    let b = spin_parity_with_root(o, o.n_squares() - 1)?;
    if a != b {
        return Err(Error::Inconsistent("spin parity depends on the basis".into()));
    }
    Ok(a)
}
