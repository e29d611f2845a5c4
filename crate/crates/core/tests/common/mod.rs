//! Test-side oracles. Nothing here calls the canonical form, the sector
//! permutation, the homology module or the involution search of the
//! library; they are recomputed from scratch on diagrams and origamis.

#![allow(dead_code)]

use std::collections::BTreeMap;

use cyldiag::origami::MetricData;
use cyldiag::{realize, Cylinder, CylinderDiagram, Origami};

pub fn d(s: &str) -> CylinderDiagram {
    s.parse().unwrap()
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn min_rotation(w: &[u32]) -> Vec<u32> {
    (0..w.len())
        .map(|r| w[r..].iter().chain(&w[..r]).copied().collect::<Vec<_>>())
        .min()
        .unwrap()
}

fn shape(d: &CylinderDiagram) -> Vec<(usize, usize)> {
    let mut s: Vec<_> = d.cylinders().iter().map(|c| (c.bottom.len(), c.top.len())).collect();
    s.sort_unstable();
    s
}

fn normalized(cyls: &[Cylinder]) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut v: Vec<_> = cyls.iter().map(|c| (min_rotation(&c.bottom), min_rotation(&c.top))).collect();
    v.sort();
    v
}

/// Isomorphism by trying every label bijection.
pub fn brute_iso(a: &CylinderDiagram, b: &CylinderDiagram) -> bool {
    if a.num_labels() != b.num_labels() || shape(a) != shape(b) {
        return false;
    }
    let la = a.labels().to_vec();
    let lb = b.labels().to_vec();
    let target = normalized(a.cylinders());
    permutations(la.len()).into_iter().any(|p| {
        let map: BTreeMap<u32, u32> = lb.iter().enumerate().map(|(i, &l)| (l, la[p[i]])).collect();
        let cyls: Vec<Cylinder> = b
            .cylinders()
            .iter()
            .map(|c| {
                Cylinder::new(
                    c.bottom.iter().map(|l| map[l]).collect(),
                    c.top.iter().map(|l| map[l]).collect(),
                )
            })
            .collect();
        normalized(&cyls) == target
    })
}

/// Half turn, horizontal mirror and vertical mirror.
pub fn mirrors(d: &CylinderDiagram) -> Vec<CylinderDiagram> {
    let rev = |w: &Vec<u32>| w.iter().rev().copied().collect::<Vec<_>>();
    let build = |f: &dyn Fn(&Cylinder) -> Cylinder| CylinderDiagram::new(d.cylinders().iter().map(f).collect()).unwrap();
    vec![
        build(&|c| Cylinder::new(rev(&c.top), rev(&c.bottom))),
        build(&|c| Cylinder::new(rev(&c.bottom), rev(&c.top))),
        build(&|c| Cylinder::new(c.top.clone(), c.bottom.clone())),
    ]
}

pub fn brute_iso_sym(a: &CylinderDiagram, b: &CylinderDiagram) -> bool {
    brute_iso(a, b) || mirrors(b).iter().any(|m| brute_iso(a, m))
}

/// Every saddle connection lies on a directed cycle of cylinders.
pub fn strongly_connected(d: &CylinderDiagram) -> bool {
    let n = d.num_cylinders();
    let mut adj = vec![vec![false; n]; n];
    for l in d.labels() {
        let from = d.cylinders().iter().position(|c| c.bottom.contains(l)).unwrap();
        let to = d.cylinders().iter().position(|c| c.top.contains(l)).unwrap();
        adj[from][to] = true;
    }
    let reach = |s: usize, adj: &Vec<Vec<bool>>| {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            for w in 0..n {
                if adj[v][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|x| x)
    };
    let rev: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| adj[j][i]).collect()).collect();
    reach(0, &adj) && reach(0, &rev)
}

fn inv(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Class of the lower-left corner of each square. The upper-right corner of
/// `x` is reached both through `r` then `u` and through `u` then `r`.
pub fn corner_classes(o: &Origami) -> Vec<usize> {
    let (r, u) = (o.r(), o.u());
    let n = r.len();
    let mut p: Vec<usize> = (0..n).collect();
    for x in 0..n {
        let a = find(&mut p, u[r[x]]);
        let b = find(&mut p, r[u[x]]);
        p[a] = b;
    }
    let mut ids = BTreeMap::new();
    (0..n)
        .map(|x| {
            let root = find(&mut p, x);
            let k = ids.len();
            *ids.entry(root).or_insert(k)
        })
        .collect()
}

/// Cone orders of all vertices, sorted descending, regular ones included.
pub fn vertex_orders(o: &Origami) -> Vec<u32> {
    let cls = corner_classes(o);
    let k = cls.iter().max().map_or(0, |m| m + 1);
    let mut count = vec![0u32; k];
    for c in cls {
        count[c] += 1;
    }
    let mut v: Vec<u32> = count.into_iter().map(|c| c - 1).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

pub fn zero_orders(o: &Origami) -> Vec<u32> {
    vertex_orders(o).into_iter().filter(|&k| k > 0).collect()
}

/// Genus from the Euler characteristic of the square complex.
pub fn genus(o: &Origami) -> u32 {
    let v = vertex_orders(o).len() as i64;
    let n = o.n_squares() as i64;
    ((2 - v + n) / 2) as u32
}

const P: i64 = 1_000_000_007;

fn pow_mod(mut b: i64, mut e: i64) -> i64 {
    let mut r = 1;
    b = b.rem_euclid(P);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Rank of a set of column vectors modulo a large prime.
pub fn rank_mod_p(cols: &[Vec<i64>]) -> usize {
    if cols.is_empty() {
        return 0;
    }
    let rows = cols[0].len();
    let mut m: Vec<Vec<i64>> = (0..rows).map(|i| cols.iter().map(|c| c[i].rem_euclid(P)).collect()).collect();
    let ncols = cols.len();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(piv) = (rank..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, piv);
        let iv = pow_mod(m[rank][c], P - 2);
        for i in 0..rows {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * iv % P;
                for j in 0..ncols {
                    m[i][j] = (m[i][j] - f * m[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Boundaries of the squares: bottom edges are `x`, left edges `n + x`.
pub fn square_boundaries(o: &Origami) -> Vec<Vec<i64>> {
    let (r, u) = (o.r(), o.u());
    let n = r.len();
    (0..n)
        .map(|x| {
            let mut c = vec![0i64; 2 * n];
            c[x] += 1;
            c[n + r[x]] += 1;
            c[u[x]] -= 1;
            c[n + x] -= 1;
            c
        })
        .collect()
}

/// Core curve chains of a diagram realized with the given metric: the
/// bottom edges of the first row of each cylinder.
pub fn core_chains(d: &CylinderDiagram, m: &MetricData) -> Vec<Vec<i64>> {
    let n: u32 = m.area(d);
    let mut offset = 0usize;
    let mut out = Vec::new();
    for i in 0..d.num_cylinders() {
        let w = m.width(d, i) as usize;
        let mut c = vec![0i64; 2 * n as usize];
        for x in offset..offset + w {
            c[x] = 1;
        }
        out.push(c);
        offset += w * m.heights[i] as usize;
    }
    out
}

/// Rank of the span of the core curves in homology, and whether the
/// integer combination `coeffs` of them is null.
pub struct CoreOracle {
    pub rank: usize,
    boundaries: Vec<Vec<i64>>,
    chains: Vec<Vec<i64>>,
}

impl CoreOracle {
    pub fn new(d: &CylinderDiagram) -> Self {
        let m = cyldiag::origami::default_metric(d).unwrap();
        let o = realize(d, Some(&m)).unwrap();
        let boundaries = square_boundaries(&o);
        let chains = core_chains(d, &m);
        let base = rank_mod_p(&boundaries);
        let all: Vec<Vec<i64>> = boundaries.iter().chain(&chains).cloned().collect();
        Self {
            rank: rank_mod_p(&all) - base,
            boundaries,
            chains,
        }
    }

    pub fn null(&self, coeffs: &[i64]) -> bool {
        let len = self.chains[0].len();
        let v: Vec<i64> = (0..len).map(|k| coeffs.iter().zip(&self.chains).map(|(a, c)| a * c[k]).sum()).collect();
        let mut all = self.boundaries.clone();
        let base = rank_mod_p(&all);
        all.push(v);
        rank_mod_p(&all) == base
    }
}

/// All `pi` with the given relation to `r` and `u`, by propagation from
/// every possible image of square 0. `flip` selects the half turn.
pub fn involutions(o: &Origami, flip: bool) -> Vec<Vec<usize>> {
    let (r, u) = (o.r().to_vec(), o.u().to_vec());
    let (ri, ui) = (inv(&r), inv(&u));
    let n = r.len();
    let mut out = Vec::new();
    'start: for y in 0..n {
        let mut pi = vec![usize::MAX; n];
        pi[0] = y;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            let steps: [(usize, usize); 4] = if flip {
                [(r[x], ri[pi[x]]), (u[x], ui[pi[x]]), (ri[x], r[pi[x]]), (ui[x], u[pi[x]])]
            } else {
                [(r[x], r[pi[x]]), (u[x], u[pi[x]]), (ri[x], ri[pi[x]]), (ui[x], ui[pi[x]])]
            };
            for (a, b) in steps {
                if pi[a] == usize::MAX {
                    pi[a] = b;
                    stack.push(a);
                } else if pi[a] != b {
                    continue 'start;
                }
            }
        }
        let involutive = (0..n).all(|x| pi[pi[x]] == x);
        let identity = (0..n).all(|x| pi[x] == x);
        if involutive && !(identity && !flip) {
            out.push(pi);
        }
    }
    out
}

#[derive(Debug)]
pub struct HalfTurn {
    pub fixed: usize,
    /// Quadratic orders of the quotient, zeros dropped, sorted descending.
    pub signature: Vec<i64>,
    pub quotient_genus: i64,
    pub fixed_zero_orders: Vec<u32>,
    pub swapped_zero_orders: Vec<u32>,
}

pub fn half_turn(o: &Origami, pi: &[usize]) -> HalfTurn {
    let (r, u) = (o.r(), o.u());
    let n = r.len();
    let cls = corner_classes(o);
    let k = cls.iter().max().unwrap() + 1;
    let mut order = vec![0u32; k];
    for &c in &cls {
        order[c] += 1;
    }
    let order: Vec<u32> = order.into_iter().map(|c| c - 1).collect();
    // the lower-left corner of x goes to the upper-right corner of pi(x)
    let mut image = vec![usize::MAX; k];
    for x in 0..n {
        image[cls[x]] = cls[u[r[pi[x]]]];
    }
    let regular = (0..n).filter(|&x| pi[x] == x).count()
        + (0..n).filter(|&x| pi[x] == r[x]).count()
        + (0..n).filter(|&x| pi[x] == u[x]).count();
    let mut signature = vec![-1i64; regular];
    let mut fixed = regular;
    let mut fixed_zero_orders = Vec::new();
    let mut swapped_zero_orders = Vec::new();
    for v in 0..k {
        if image[v] == v {
            fixed += 1;
            signature.push(order[v] as i64 - 1);
            if order[v] > 0 {
                fixed_zero_orders.push(order[v]);
            }
        } else if image[v] > v {
            signature.push(2 * order[v] as i64);
            if order[v] > 0 {
                swapped_zero_orders.push(order[v]);
            }
        }
    }
    signature.retain(|&s| s != 0);
    signature.sort_unstable_by(|a, b| b.cmp(a));
    let g = genus(o) as i64;
    HalfTurn {
        fixed,
        signature,
        quotient_genus: (2 + 2 * g - fixed as i64) / 4,
        fixed_zero_orders,
        swapped_zero_orders,
    }
}

/// Genus three, two zeros: hyperelliptic component iff some half turn has
/// eight fixed points and swaps the zeros.
pub fn hyp_oracle(o: &Origami) -> bool {
    involutions(o, true).iter().any(|pi| {
        let h = half_turn(o, pi);
        h.quotient_genus == 0 && h.fixed_zero_orders.is_empty()
    })
}

pub fn quotient(o: &Origami, pi: &[usize]) -> Origami {
    let n = pi.len();
    let reps: Vec<usize> = (0..n).filter(|&x| x < pi[x]).collect();
    let idx = |x: usize| reps.iter().position(|&y| y == x.min(pi[x])).unwrap();
    let r = reps.iter().map(|&x| idx(o.r()[x])).collect();
    let u = reps.iter().map(|&x| idx(o.u()[x])).collect();
    Origami::new(r, u).unwrap()
}

pub fn origami_iso(a: &Origami, b: &Origami) -> bool {
    let n = a.n_squares();
    if n != b.n_squares() {
        return false;
    }
    'start: for y in 0..n {
        let mut f = vec![usize::MAX; n];
        f[0] = y;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for (s, t) in [(a.r()[x], b.r()[f[x]]), (a.u()[x], b.u()[f[x]])] {
                if f[s] == usize::MAX {
                    f[s] = t;
                    stack.push(s);
                } else if f[s] != t {
                    continue 'start;
                }
            }
        }
        let mut seen = vec![false; n];
        if f.iter().all(|&t| t != usize::MAX && !std::mem::replace(&mut seen[t], true)) {
            return true;
        }
    }
    false
}

fn partitions(n: usize, parts: usize, max: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=max.min(n) {
        for mut rest in partitions(n - first, parts - 1, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn cuts(n: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if n == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in cuts(n - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every realizable diagram with `n` cylinders whose square-tiled
/// realization has exactly the zero orders `zeros`, one per isomorphism
/// class. Bottoms are normalized by relabeling; tops run over all words.
pub fn exhaustive(zeros: &[u32], n: usize) -> Vec<CylinderDiagram> {
    exhaustive_where(zeros, n, |_| true)
}

/// As `exhaustive`, restricted to diagrams satisfying an isomorphism
/// invariant predicate.
pub fn exhaustive_where(zeros: &[u32], n: usize, keep: impl Fn(&CylinderDiagram) -> bool) -> Vec<CylinderDiagram> {
    let big_n = zeros.iter().sum::<u32>() as usize + zeros.len();
    let mut reps: Vec<CylinderDiagram> = Vec::new();
    let perms = permutations(big_n);
    for lam in partitions(big_n, n, big_n) {
        let mut bottoms = Vec::new();
        let mut next = 1u32;
        for &k in &lam {
            bottoms.push((next..next + k as u32).collect::<Vec<_>>());
            next += k as u32;
        }
        for mu in cuts(big_n, n) {
            for p in &perms {
                let mut pos = 0;
                let cyls: Vec<Cylinder> = (0..n)
                    .map(|i| {
                        let top = p[pos..pos + mu[i]].iter().map(|&x| x as u32 + 1).collect();
                        pos += mu[i];
                        Cylinder::new(bottoms[i].clone(), top)
                    })
                    .collect();
                let Ok(d) = CylinderDiagram::new(cyls) else { continue };
                if !keep(&d) || !strongly_connected(&d) {
                    continue;
                }
                let Ok(o) = realize(&d, None) else { continue };
                if zero_orders(&o) != zeros {
                    continue;
                }
                if !reps.iter().any(|r| brute_iso(r, &d)) {
                    reps.push(d);
                }
            }
        }
    }
    reps
}

/// Classes of a list of pairwise non-isomorphic diagrams under the half
/// turn and reflections.
pub fn symmetry_classes(ds: &[CylinderDiagram]) -> Vec<Vec<CylinderDiagram>> {
    let mut classes: Vec<Vec<CylinderDiagram>> = Vec::new();
    for d in ds {
        match classes.iter_mut().find(|c| brute_iso_sym(&c[0], d)) {
            Some(c) => c.push(d.clone()),
            None => classes.push(vec![d.clone()]),
        }
    }
    classes
}
