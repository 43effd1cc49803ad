#![allow(dead_code)]

/// Invariant factors of a small dense integer matrix, by naive elimination.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<i64> {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for r in a.iter_mut() {
            r.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            let q = a[i][t] / a[t][t];
            for j in t..cols {
                a[i][j] -= q * a[t][j];
            }
            clean &= a[i][t] == 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / a[t][t];
            for i in t..rows {
                a[i][j] -= q * a[i][t];
            }
            clean &= a[t][j] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some((i, _)) = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % a[t][t] != 0) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        out.push(a[t][t].abs() as i64);
        t += 1;
    }
    out
}

/// `(free rank, torsion)` of `ker d_in / im d_out`, both given as dense row lists
/// with `dim` columns resp. rows.
pub fn homology(dim: usize, d_in: &[Vec<i64>], d_out: &[Vec<i64>]) -> (usize, Vec<i64>) {
    let r_in = invariant_factors(d_in).len();
    let f = invariant_factors(d_out);
    let torsion = f.iter().copied().filter(|&x| x != 1).collect();
    (dim - r_in - f.len(), torsion)
}

pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|&x| x.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pr) = (rank..a.len()).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, pr);
        let inv = (1..p).find(|&x| x * a[rank][c] % p == 1).unwrap();
        for j in 0..cols {
            a[rank][j] = a[rank][j] * inv % p;
        }
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c];
                for j in 0..cols {
                    a[r][j] = (a[r][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}
