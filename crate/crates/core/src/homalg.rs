//! Exact linear algebra over the integers, the rationals and prime fields.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn reduce(self, c: i64) -> i64 {
        match self {
            Ring::PrimeField(p) => c.rem_euclid(p as i64),
            _ => c,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "F{}", p),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A finite formal sum with no stored zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain<K: Ord> {
    ring: Ring,
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Chain<K> {
    pub fn zero(ring: Ring) -> Self {
        Chain { ring, terms: BTreeMap::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    /// Adds `c * k`. Panics if the coefficient leaves the `i64` range.
    pub fn add_term(&mut self, k: K, c: i64) {
        let c = self.ring.reduce(c);
        if c == 0 {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(k) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = ring.reduce(e.get().checked_add(c).expect("coefficient overflow"));
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Chain<K>, c: i64)
    where
        K: Clone,
    {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.checked_mul(c).expect("coefficient overflow"));
        }
    }

    pub fn coefficient(&self, k: &K) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, i64)> {
        self.terms.iter().map(|(k, v)| (k, *v))
    }

    pub fn into_terms(self) -> BTreeMap<K, i64> {
        self.terms
    }

    pub fn scaled(&self, c: i64) -> Chain<K>
    where
        K: Clone,
    {
        let mut out = Chain::zero(self.ring);
        out.add_scaled(self, c);
        out
    }

    pub fn over(&self, ring: Ring) -> Chain<K>
    where
        K: Clone,
    {
        let mut out = Chain::zero(ring);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), *v);
        }
        out
    }

    /// Applies a linear map given on generators.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Chain<L>) -> Chain<L> {
        let mut out = Chain::zero(self.ring);
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), *v);
        }
        out
    }
}

impl<K: Ord> FromIterator<(K, i64)> for Chain<K> {
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut c = Chain::zero(Ring::Integers);
        for (k, v) in iter {
            c.add_term(k, v);
        }
        c
    }
}

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        SparseMatrix { nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut m = SparseMatrix::zeros(nrows, ncols);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j].iter().find(|e| e.0 == i).map(|e| e.1).unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        let col = &mut self.cols[j];
        match col.binary_search_by_key(&i, |e| e.0) {
            Ok(p) if v == 0 => {
                col.remove(p);
            }
            Ok(p) => col[p].1 = v,
            Err(_) if v == 0 => {}
            Err(p) => col.insert(p, (i, v)),
        }
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    fn rows(&self) -> Vec<BTreeMap<usize, i64>> {
        let mut rows = vec![BTreeMap::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                rows[i].insert(j, v);
            }
        }
        rows
    }

    /// Stacks `self` on top of `other`; both must have the same column count.
    pub fn stack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, other.ncols);
        let mut m = self.clone();
        m.nrows += other.nrows;
        for (j, col) in other.cols.iter().enumerate() {
            m.cols[j].extend(col.iter().map(|&(i, v)| (i + self.nrows, v)));
        }
        m
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
}

/// Invariant factors of an integer matrix.
///
/// Unit pivots are eliminated sparsely first; what is left is reduced densely
/// with minimal-absolute-value pivots.
pub fn smith_normal_form(m: &SparseMatrix) -> SmithForm {
    let mut rows = m.rows();
    let mut units = 0usize;
    if eliminate_unit_pivots(&mut rows, m.ncols, &mut units).is_err() {
        rows = m.rows();
        units = 0;
    }
    let live_rows: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i].is_empty()).collect();
    let live_cols: BTreeSet<usize> = live_rows.iter().flat_map(|&i| rows[i].keys().copied()).collect();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(k, &c)| (c, k)).collect();
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; live_rows.len()];
    for (r, &i) in live_rows.iter().enumerate() {
        for (&c, &v) in &rows[i] {
            dense[r][col_pos[&c]] = BigInt::from(v);
        }
    }
    let mut diag = dense_diagonalize(dense);
    let mut factors = vec![BigInt::one(); units];
    factors.append(&mut diag);
    normalize_factors(&mut factors);
    SmithForm { factors }
}

struct OverflowError;

/// Streams rows through the existing unit pivots. A pivot row is reduced
/// against every earlier pivot, so eliminating pivots oldest first never
/// reintroduces one. Rows without a free unit entry wait for later pivots.
/// Afterwards `rows` holds only the leftover block, supported on free columns.
fn eliminate_unit_pivots(
    rows: &mut Vec<BTreeMap<usize, i64>>,
    ncols: usize,
    units: &mut usize,
) -> core::result::Result<(), OverflowError> {
    let mut pivot_of: Vec<Option<usize>> = vec![None; ncols];
    let mut pivots: Vec<(usize, Vec<(usize, i64)>)> = Vec::new();
    let mut pending: Vec<BTreeMap<usize, i64>> = core::mem::take(rows);
    loop {
        let before = pivots.len();
        let mut waiting = Vec::new();
        for mut row in pending {
            while let Some(k) = row.keys().filter_map(|&c| pivot_of[c]).min() {
                let (c, prow) = (pivots[k].0, &pivots[k].1);
                let f = row[&c];
                for &(j, v) in prow {
                    let cur = row.get(&j).copied().unwrap_or(0);
                    let nv = cur.checked_sub(f.checked_mul(v).ok_or(OverflowError)?).ok_or(OverflowError)?;
                    if nv == 0 {
                        row.remove(&j);
                    } else {
                        row.insert(j, nv);
                    }
                }
            }
            if row.is_empty() {
                continue;
            }
            match row.iter().find(|(_, v)| v.abs() == 1).map(|(&c, &v)| (c, v)) {
                Some((c, u)) => {
                    // normalize the pivot entry to 1
                    let prow: Vec<(usize, i64)> = row.iter().map(|(&j, &v)| (j, v * u)).collect();
                    pivot_of[c] = Some(pivots.len());
                    pivots.push((c, prow));
                }
                None => waiting.push(row),
            }
        }
        pending = waiting;
        if pivots.len() == before {
            break;
        }
    }
    *units = pivots.len();
    *rows = pending;
    Ok(())
}

fn dense_diagonalize(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&a, t, |_, _| true) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&p);
                for j in t..n {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&p);
                for row in a.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            let (pi, pj) = min_abs_entry(&a, t, |i, j| i == t || j == t).expect("nonzero remainder");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize, keep: impl Fn(usize, usize) -> bool) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() || !keep(i, j) {
                continue;
            }
            match best {
                Some((bi, bj)) if a[bi][bj].abs() <= v.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

fn normalize_factors(d: &mut Vec<BigInt>) {
    // units divide everything and stay in front
    let mut rest: Vec<BigInt> = d.iter().map(|v| v.abs()).filter(|v| !v.is_one()).collect();
    let units = d.len() - rest.len();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            let g = rest[i].gcd(&rest[j]);
            let l = &rest[i] / &g * &rest[j];
            rest[i] = g;
            rest[j] = l;
        }
    }
    let ones = rest.iter().filter(|v| v.is_one()).count();
    rest.retain(|v| !v.is_one());
    d.clear();
    d.extend(core::iter::repeat(BigInt::one()).take(units + ones));
    d.extend(rest);
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = (r as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    r
}

/// Rank over the prime field with `p` elements.
pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for row in m.rows() {
        let mut cur: BTreeMap<usize, u64> =
            row.into_iter().map(|(k, v)| (k, v.rem_euclid(p as i64) as u64)).filter(|e| e.1 != 0).collect();
        while let Some((&c, &v)) = cur.iter().next() {
            match pivots.get(&c) {
                Some(prow) => {
                    // pivot rows are normalized to a leading 1
                    for &(k, pv) in prow {
                        let sub = (v as u128 * pv as u128 % p as u128) as u64;
                        let e = cur.entry(k).or_insert(0);
                        *e = (*e + p - sub) % p;
                        if *e == 0 {
                            cur.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = inv_mod(v, p);
                    let prow: Vec<(usize, u64)> =
                        cur.iter().map(|(&k, &x)| (k, (x as u128 * inv as u128 % p as u128) as u64)).collect();
                    pivots.insert(c, prow);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Rank over the given ring (the rank of the matrix over its fraction field
/// for the integers).
pub fn rank_over(m: &SparseMatrix, ring: Ring) -> usize {
    match ring {
        Ring::PrimeField(p) => rank_mod_p(m, p),
        _ => smith_normal_form(m).rank(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: i64,
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(String::from("Z")),
            r => parts.push(format!("Z^{}", r)),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{}", t));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomologySummary {
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn get(&self, degree: i64) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    /// Aligned text table with one row per degree.
    pub fn table(&self, ring: Ring) -> String {
        let mut out = format!("{:>6}  {:>9}  {:<18}  group over {}\n", "degree", "free_rank", "torsion", ring);
        for g in &self.groups {
            let tors: Vec<String> = g.torsion.iter().map(|t| format!("{}", t)).collect();
            out.push_str(&format!(
                "{:>6}  {:>9}  {:<18}  {}\n",
                g.degree,
                g.free_rank,
                format!("[{}]", tors.join(",")),
                g
            ));
        }
        out
    }
}

/// Finite window onto a graded complex with homological degree convention.
#[derive(Clone, Debug)]
pub struct ComplexSlice<K> {
    bases: BTreeMap<i64, Vec<K>>,
    differentials: BTreeMap<i64, SparseMatrix>,
}

impl<K> Default for ComplexSlice<K> {
    fn default() -> Self {
        ComplexSlice { bases: BTreeMap::new(), differentials: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> ComplexSlice<K> {
    /// Builds `d_n` for every degree whose predecessor basis is present. A
    /// degree without a predecessor gets a zero map when all its images vanish.
    pub fn build(bases: BTreeMap<i64, Vec<K>>, mut d: impl FnMut(&K) -> Chain<K>) -> Result<Self> {
        let mut differentials = BTreeMap::new();
        for (&n, basis) in &bases {
            let images: Vec<Chain<K>> = basis.iter().map(&mut d).collect();
            match bases.get(&(n - 1)) {
                Some(rows) => {
                    let pos: BTreeMap<&K, usize> = rows.iter().enumerate().map(|(i, k)| (k, i)).collect();
                    let mut m = SparseMatrix::zeros(rows.len(), basis.len());
                    for (j, img) in images.iter().enumerate() {
                        for (k, v) in img.iter() {
                            let i = pos.get(k).ok_or_else(|| {
                                Error::IncompleteSlice(format!("boundary in degree {} leaves the basis", n))
                            })?;
                            m.cols[j].push((*i, v));
                        }
                        m.cols[j].sort_unstable();
                    }
                    differentials.insert(n, m);
                }
                None => {
                    if images.iter().all(|c| c.is_zero()) {
                        differentials.insert(n, SparseMatrix::zeros(0, basis.len()));
                    }
                }
            }
        }
        Ok(ComplexSlice { bases, differentials })
    }

    pub fn from_parts(bases: BTreeMap<i64, Vec<K>>, differentials: BTreeMap<i64, SparseMatrix>) -> Result<Self> {
        for (&n, m) in &differentials {
            let cols = bases.get(&n).map(|b| b.len()).unwrap_or(0);
            let rows = bases.get(&(n - 1)).map(|b| b.len()).unwrap_or(0);
            if m.ncols() != cols || m.nrows() != rows {
                return Err(Error::IncompleteSlice(format!("differential in degree {} has the wrong shape", n)));
            }
        }
        Ok(ComplexSlice { bases, differentials })
    }

    pub fn basis(&self, n: i64) -> Option<&[K]> {
        self.bases.get(&n).map(|v| v.as_slice())
    }

    pub fn differential(&self, n: i64) -> Option<&SparseMatrix> {
        self.differentials.get(&n)
    }

    pub fn differential_mut(&mut self, n: i64) -> Option<&mut SparseMatrix> {
        self.differentials.get_mut(&n)
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> + '_ {
        self.bases.keys().copied()
    }
}

pub fn homology_of_slice<K: Ord + Clone>(c: &ComplexSlice<K>, n: i64, ring: Ring) -> Result<HomologyGroup> {
    let dn = c.differential(n).ok_or_else(|| Error::IncompleteSlice(format!("no differential in degree {}", n)))?;
    let dn1 =
        c.differential(n + 1).ok_or_else(|| Error::IncompleteSlice(format!("no differential in degree {}", n + 1)))?;
    let dim = dn.ncols();
    match ring {
        Ring::Integers => {
            let out = smith_normal_form(dn1);
            let r_in = smith_normal_form(dn).rank();
            let torsion = out.factors.iter().filter(|f| !f.is_one()).cloned().collect();
            Ok(HomologyGroup { degree: n, free_rank: dim - r_in - out.rank(), torsion })
        }
        _ => {
            let free_rank = dim - rank_over(dn, ring) - rank_over(dn1, ring);
            Ok(HomologyGroup { degree: n, free_rank, torsion: Vec::new() })
        }
    }
}

/// Generators `g` of some degree `n` with `d_{n-1}(d_n g) != 0`.
pub fn check_d_squared<K: Ord + Clone>(c: &ComplexSlice<K>) -> Vec<(i64, K)> {
    let mut out = Vec::new();
    for (&n, dn) in &c.differentials {
        let Some(dn1) = c.differential(n - 1) else { continue };
        for j in 0..dn.ncols() {
            let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
            for &(r, v) in dn.column(j) {
                for &(r2, w) in dn1.column(r) {
                    *acc.entry(r2).or_insert(0) += v * w;
                }
            }
            if acc.values().any(|&v| v != 0) {
                out.push((n, c.bases[&n][j].clone()));
            }
        }
    }
    out
}

/// Generator-level form of [`check_d_squared`] for complexes without a finite
/// matrix window.
pub fn check_d_squared_on<K: Ord + Clone>(gens: &[K], mut d: impl FnMut(&K) -> Chain<K>) -> Vec<K> {
    let mut out = Vec::new();
    for g in gens {
        let once = d(g);
        let twice = once.map_linear(&mut d);
        if !twice.is_zero() {
            out.push(g.clone());
        }
    }
    out
}
