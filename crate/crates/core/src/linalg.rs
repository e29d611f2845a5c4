//! Small dense integer matrices: Smith and Hermite normal forms, kernels.

pub type Mat = Vec<Vec<i64>>;

pub fn zeros(m: usize, n: usize) -> Mat {
    vec![vec![0; n]; m]
}

pub fn identity(n: usize) -> Mat {
    let mut a = zeros(n, n);
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 1;
    }
    a
}

pub fn transpose(a: &Mat, cols: usize) -> Mat {
    let mut t = zeros(cols, a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            t[j][i] = x;
        }
    }
    t
}

pub fn mul(a: &Mat, b: &Mat, b_cols: usize) -> Mat {
    let mut c = zeros(a.len(), b_cols);
    for (i, row) in a.iter().enumerate() {
        for (k, &x) in row.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for j in 0..b_cols {
                c[i][j] += x * b[k][j];
            }
        }
    }
    c
}

pub fn mul_vec(a: &Mat, v: &[i64]) -> Vec<i64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

/// Result of `smith`: `u * a * v = d` with `u`, `v` unimodular and `d`
/// diagonal, each diagonal entry dividing the next.
pub struct Smith {
    pub u: Mat,
    pub v: Mat,
    pub v_inv: Mat,
    pub diag: Vec<i64>,
    pub rank: usize,
}

pub fn smith(a: &Mat, cols: usize) -> Smith {
    let m = a.len();
    let n = cols;
    let mut d = a.clone();
    let mut u = identity(m);
    let mut v = identity(n);
    let mut vi = identity(n);

    fn swap_rows(x: &mut Mat, i: usize, j: usize) {
        x.swap(i, j);
    }
    fn swap_cols(x: &mut Mat, i: usize, j: usize) {
        for row in x.iter_mut() {
            row.swap(i, j);
        }
    }
    // row_i += k * row_j
    fn add_row(x: &mut Mat, i: usize, j: usize, k: i64) {
        if k == 0 {
            return;
        }
        let rj = x[j].clone();
        for (a, b) in x[i].iter_mut().zip(rj) {
            *a += k * b;
        }
    }
    // col_i += k * col_j
    fn add_col(x: &mut Mat, i: usize, j: usize, k: i64) {
        if k == 0 {
            return;
        }
        for row in x.iter_mut() {
            row[i] += k * row[j];
        }
    }

    let mut t = 0;
    while t < m.min(n) {
        // pivot: smallest nonzero entry in the remaining block
        let mut piv = None;
        for i in t..m {
            for j in t..n {
                if d[i][j] != 0 && piv.is_none_or(|(a, b): (usize, usize)| d[i][j].abs() < d[a][b].abs()) {
                    piv = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        swap_rows(&mut d, t, pi);
        swap_rows(&mut u, t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        swap_rows(&mut vi, t, pj);
        loop {
            let p = d[t][t];
            let mut again = false;
            for i in t + 1..m {
                let q = d[i][t] / p;
                add_row(&mut d, i, t, -q);
                add_row(&mut u, i, t, -q);
                if d[i][t] != 0 {
                    again = true;
                }
            }
            for j in t + 1..n {
                let q = d[t][j] / p;
                add_col(&mut d, j, t, -q);
                add_col(&mut v, j, t, -q);
                // inverse of the column op: row_t += q * row_j
                add_row(&mut vi, t, j, q);
                if d[t][j] != 0 {
                    again = true;
                }
            }
            if again {
                // bring a smaller remainder to the pivot
                let mut best = (t, t);
                for i in t..m {
                    if d[i][t] != 0 && d[i][t].abs() < d[best.0][best.1].abs() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    if d[t][j] != 0 && d[t][j].abs() < d[best.0][best.1].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    swap_rows(&mut d, t, best.0);
                    swap_rows(&mut u, t, best.0);
                } else if best.1 != t {
                    swap_cols(&mut d, t, best.1);
                    swap_cols(&mut v, t, best.1);
                    swap_rows(&mut vi, t, best.1);
                }
                continue;
            }
            // divisibility of the rest of the block
            let p = d[t][t];
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| d[i][j] % p != 0));
            match bad {
                Some(i) => {
                    add_row(&mut d, t, i, 1);
                    add_row(&mut u, t, i, 1);
                }
                None => break,
            }
        }
        if d[t][t] < 0 {
            for x in d[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }
    let diag: Vec<i64> = (0..m.min(n)).map(|i| d[i][i]).collect();
    let rank = diag.iter().take_while(|&&x| x != 0).count();
    Smith {
        u,
        v,
        v_inv: vi,
        diag,
        rank,
    }
}

/// Basis of the integer kernel `{x : a x = 0}` as rows; the basis is
/// saturated (spans all integer solutions).
pub fn kernel(a: &Mat, cols: usize) -> Vec<Vec<i64>> {
    let s = smith(a, cols);
    (s.rank..cols)
        .map(|j| (0..cols).map(|i| s.v[i][j]).collect())
        .collect()
}

/// Row Hermite normal form of the lattice spanned by `rows`; zero rows
/// are dropped and each leading entry is positive.
pub fn hnf_rows(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = rows.to_vec();
    let Some(n) = a.first().map(Vec::len) else {
        return a;
    };
    let mut r = 0;
    for c in 0..n {
        if r == a.len() {
            break;
        }
        // Euclid down the column
        loop {
            let piv = (r..a.len())
                .filter(|&i| a[i][c] != 0)
                .min_by_key(|&i| a[i][c].abs());
            let Some(p) = piv else { break };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                let q = a[i][c] / a[r][c];
                if q != 0 {
                    let rr = a[r].clone();
                    for (x, y) in a[i].iter_mut().zip(rr) {
                        *x -= q * y;
                    }
                }
                if a[i][c] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c] == 0 {
            continue;
        }
        if a[r][c] < 0 {
            for x in a[r].iter_mut() {
                *x = -*x;
            }
        }
        for i in 0..r {
            let q = a[i][c].div_euclid(a[r][c]);
            if q != 0 {
                let rr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(rr) {
                    *x -= q * y;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    hnf_rows(rows).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn smith_small() {
        let a = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        let s = smith(&a, 3);
        assert_eq!(s.diag, vec![2, 6, 12]);
        let d = mul(&mul(&s.u, &a, 3), &s.v, 3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
            }
        }
        assert_eq!(mul(&s.v, &s.v_inv, 3), identity(3));
    }

    #[test]
    fn kernel_and_hnf() {
        let a = vec![vec![1, 1, 1, -1]];
        let k = kernel(&a, 4);
        assert_eq!(k.len(), 3);
        for v in &k {
            assert_eq!(mul_vec(&a, v), vec![0]);
        }
        let h = hnf_rows(&[vec![0, 2, 4], vec![0, -3, -6], vec![0, 0, 0]]);
        assert_eq!(h, vec![vec![0, 1, 2]]);
    }

    proptest! {
        #[test]
        fn smith_reconstructs(a in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 3)) {
            let s = smith(&a, 4);
            let d = mul(&mul(&s.u, &a, 4), &s.v, 4);
            for i in 0..3 {
                for j in 0..4 {
                    prop_assert_eq!(d[i][j], if i == j { s.diag[i] } else { 0 });
                }
            }
            for w in s.diag[..s.rank].windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            prop_assert_eq!(mul(&s.v, &s.v_inv, 4), identity(4));
            for v in kernel(&a, 4) {
                prop_assert!(mul_vec(&a, &v).iter().all(|&x| x == 0));
            }
        }
    }
}
