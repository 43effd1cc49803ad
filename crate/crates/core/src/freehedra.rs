//! Cell labels of the freehedra `F_n` and their face operators.
//!
//! A label `a_0,…,a_p][b_0,…,b_m]…` names a cell of `F_p × I^q`. The f-block
//! carries the freehedral coordinates `1..=p`; cube blocks follow with one
//! coordinate per interior entry, numbered left to right.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label {
    pub f_block: Vec<usize>,
    pub cube_blocks: Vec<Vec<usize>>,
}

/// A face operator `d^kind_index`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceOp {
    pub kind: u8,
    pub index: usize,
}

impl core::fmt::Display for FaceOp {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "d{}_{}", self.kind, self.index)
    }
}

/// The three families of codimension-1 morphisms of closed necklaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FaceKind {
    /// Inner coface of a bead (`d¹`).
    Inner,
    /// Splitting a bead in two (`d⁰`).
    Split,
    /// Moving the tail of the first bead to the end (`d²`).
    Rotation,
}

impl FaceOp {
    pub fn kind(self) -> FaceKind {
        match self.kind {
            0 => FaceKind::Split,
            1 => FaceKind::Inner,
            _ => FaceKind::Rotation,
        }
    }
}

pub fn top_label(n: usize) -> Label {
    Label { f_block: (0..=n).collect(), cube_blocks: Vec::new() }
}

impl Label {
    /// Dimension of the freehedral factor.
    pub fn freehedral_dim(&self) -> usize {
        self.f_block.len() - 1
    }

    pub fn cube_dim(&self) -> usize {
        self.cube_blocks.iter().map(|b| b.len() - 2).sum()
    }

    pub fn dim(&self) -> usize {
        self.freehedral_dim() + self.cube_dim()
    }

    pub fn parse(s: &str) -> Result<Label> {
        let bad = || Error::Malformed(format!("freehedral label {:?}", s));
        let s = s.trim();
        let close = s.find(']').ok_or_else(bad)?;
        let f_block = parse_block(&s[..close]).ok_or_else(bad)?;
        let mut rest = &s[close + 1..];
        let mut cube_blocks = Vec::new();
        while !rest.is_empty() {
            let body = rest.strip_prefix('[').ok_or_else(bad)?;
            let end = body.find(']').ok_or_else(bad)?;
            let block = parse_block(&body[..end]).ok_or_else(bad)?;
            if block.len() < 2 {
                return Err(bad());
            }
            cube_blocks.push(block);
            rest = &body[end + 1..];
        }
        Ok(Label { f_block, cube_blocks })
    }

    /// Whether this names a cell of `F_n`: increasing blocks chained cyclically
    /// through shared endpoints, with exactly one passage from `n` back to `0`.
    pub fn is_valid_in(&self, n: usize) -> bool {
        let blocks: Vec<&Vec<usize>> =
            core::iter::once(&self.f_block).chain(self.cube_blocks.iter()).collect();
        if blocks.iter().any(|b| b.is_empty() || b.windows(2).any(|w| w[0] >= w[1]) || b[b.len() - 1] > n) {
            return false;
        }
        if self.cube_blocks.iter().any(|b| b.len() < 2) {
            return false;
        }
        let mut wraps = 0;
        for (i, b) in blocks.iter().enumerate() {
            let next = blocks[(i + 1) % blocks.len()];
            let last = b[b.len() - 1];
            if last == n && next[0] == 0 {
                wraps += 1;
            } else if last != next[0] {
                return false;
            }
        }
        wraps == 1
    }

    /// Codimension-1 faces. `d¹_1` coincides with `d²_1` when the f-block has
    /// positive dimension and is listed once, as `d²_1`.
    pub fn faces(&self) -> Vec<(FaceOp, Label)> {
        let p = self.freehedral_dim();
        let n = self.dim();
        let a = &self.f_block;
        let mut out = Vec::new();
        for i in 1..=n {
            let face = if i <= p {
                let mut cubes = Vec::with_capacity(self.cube_blocks.len() + 1);
                cubes.push(a[i - 1..].to_vec());
                cubes.extend(self.cube_blocks.iter().cloned());
                Label { f_block: a[..i].to_vec(), cube_blocks: cubes }
            } else {
                let (k, j) = self.cube_coordinate(i - p);
                let b = &self.cube_blocks[k];
                let mut cubes = self.cube_blocks.clone();
                cubes.splice(k..=k, [b[..=j].to_vec(), b[j..].to_vec()]);
                Label { f_block: a.clone(), cube_blocks: cubes }
            };
            out.push((FaceOp { kind: 0, index: i }, face));
        }
        let first_inner = if p >= 1 { 2 } else { 1 };
        for i in first_inner..=n {
            let face = if i <= p {
                let mut f = a.clone();
                f.remove(i - 1);
                Label { f_block: f, cube_blocks: self.cube_blocks.clone() }
            } else {
                let (k, j) = self.cube_coordinate(i - p);
                let mut cubes = self.cube_blocks.clone();
                cubes[k].remove(j);
                Label { f_block: a.clone(), cube_blocks: cubes }
            };
            out.push((FaceOp { kind: 1, index: i }, face));
        }
        for i in 1..=p {
            let mut cubes = self.cube_blocks.clone();
            cubes.push(a[..=i].to_vec());
            out.push((FaceOp { kind: 2, index: i }, Label { f_block: a[i..].to_vec(), cube_blocks: cubes }));
        }
        out
    }

    /// Block index and position within the block of cube coordinate `j ≥ 1`.
    fn cube_coordinate(&self, mut j: usize) -> (usize, usize) {
        for (k, b) in self.cube_blocks.iter().enumerate() {
            let interior = b.len() - 2;
            if j <= interior {
                return (k, j);
            }
            j -= interior;
        }
        panic!("cube coordinate out of range")
    }

    /// Image under the cellular projection `F_n → Δⁿ`: the vertices of the leading block.
    pub fn project_to_simplex(&self) -> Vec<usize> {
        self.f_block.clone()
    }
}

fn parse_block(s: &str) -> Option<Vec<usize>> {
    if s.is_empty() {
        return None;
    }
    s.split(',').map(|t| t.trim().parse().ok()).collect()
}

impl core::fmt::Display for Label {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write_list(f, &self.f_block)?;
        f.write_str("]")?;
        for b in &self.cube_blocks {
            f.write_str("[")?;
            write_list(f, b)?;
            f.write_str("]")?;
        }
        Ok(())
    }
}

fn write_list(f: &mut core::fmt::Formatter<'_>, xs: &[usize]) -> core::fmt::Result {
    for (i, x) in xs.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{}", x)?;
    }
    Ok(())
}

/// All cells of `F_n` with their codimension-1 faces.
#[derive(Clone, Debug)]
pub struct FacePoset {
    pub n: usize,
    pub cells: BTreeMap<Label, BTreeSet<Label>>,
}

pub fn face_poset(n: usize) -> FacePoset {
    let mut cells: BTreeMap<Label, BTreeSet<Label>> = BTreeMap::new();
    let mut queue = VecDeque::new();
    queue.push_back(top_label(n));
    while let Some(l) = queue.pop_front() {
        if cells.contains_key(&l) {
            continue;
        }
        let faces: BTreeSet<Label> = l.faces().into_iter().map(|(_, f)| f).collect();
        for f in &faces {
            if !cells.contains_key(f) {
                queue.push_back(f.clone());
            }
        }
        cells.insert(l, faces);
    }
    FacePoset { n, cells }
}

impl FacePoset {
    pub fn f_vector(&self) -> FVector {
        let mut counts = alloc::vec![0usize; self.n + 1];
        for l in self.cells.keys() {
            counts[l.dim()] += 1;
        }
        FVector { counts }
    }

    /// Cells ordered by dimension, then label.
    pub fn sorted_cells(&self) -> Vec<&Label> {
        let mut v: Vec<&Label> = self.cells.keys().collect();
        v.sort_by_key(|l| l.dim());
        v
    }

    pub fn covers(&self, l: &Label) -> Option<&BTreeSet<Label>> {
        self.cells.get(l)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector {
    pub counts: Vec<usize>,
}

impl FVector {
    pub fn euler_characteristic(&self) -> i64 {
        self.counts.iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
    }
}

pub fn f_vector(n: usize) -> FVector {
    face_poset(n).f_vector()
}

pub fn label_string(l: &Label) -> String {
    format!("{}", l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn lab(s: &str) -> Label {
        Label::parse(s).unwrap()
    }

    #[test]
    fn labels_round_trip() {
        assert_eq!(label_string(&top_label(2)), "0,1,2]");
        assert_eq!(label_string(&top_label(0)), "0]");
        for s in ["2,3][0,1,2]", "0][0,1][1,2]", "1,2][0,1]"] {
            assert_eq!(label_string(&lab(s)), s);
        }
        assert!(Label::parse("0,1").is_err());
        assert!(Label::parse("0][1]").is_err());
        assert!(Label::parse("0]x").is_err());
    }

    #[test]
    fn printed_faces() {
        let faces = top_label(3).faces();
        let d22 = faces.iter().find(|(op, _)| *op == FaceOp { kind: 2, index: 2 }).unwrap();
        assert_eq!(d22.1, lab("2,3][0,1,2]"));
        let d01 = &top_label(1).faces()[0];
        assert_eq!(d01.1, lab("0][0,1]"));
        let names: BTreeSet<String> = top_label(2).faces().iter().map(|(_, l)| label_string(l)).collect();
        let expected: BTreeSet<String> =
            ["0][0,1,2]", "0,1][1,2]", "0,2]", "1,2][0,1]", "2][0,1,2]"].iter().map(|s| String::from(*s)).collect();
        assert_eq!(names, expected);
        assert!(lab("0,1,2,3]").faces().iter().any(|(_, l)| *l == lab("0,2,3]")));
        assert!(lab("0]").faces().is_empty());
    }

    #[test]
    fn counts() {
        assert_eq!(f_vector(0).counts, vec![1]);
        assert_eq!(f_vector(1).counts, vec![2, 1]);
        assert_eq!(f_vector(2).counts, vec![5, 5, 1]);
        assert_eq!(f_vector(3).counts, vec![12, 18, 8, 1]);
        for n in 1..=6 {
            assert_eq!(top_label(n).faces().len(), 3 * n - 1);
        }
        for n in 0..=5 {
            assert_eq!(f_vector(n).euler_characteristic(), 1);
        }
    }

    #[test]
    fn two_faces_of_f3() {
        let poset = face_poset(3);
        let twos: Vec<&Label> = poset.cells.keys().filter(|l| l.dim() == 2).collect();
        let pentagons = twos.iter().filter(|l| poset.cells[**l].len() == 5).count();
        let squares = twos.iter().filter(|l| poset.cells[**l].len() == 4).count();
        assert_eq!((pentagons, squares), (4, 4));
    }

    #[test]
    fn face_kinds_per_label() {
        for n in 1..=4 {
            for l in face_poset(n).cells.keys().filter(|l| l.dim() >= 1) {
                let d = l.dim();
                let p = l.freehedral_dim();
                let count = |k| l.faces().iter().filter(|(op, _)| op.kind() == k).count();
                assert_eq!(count(FaceKind::Split), d);
                assert_eq!(count(FaceKind::Rotation), p);
                assert_eq!(count(FaceKind::Inner), if p >= 1 { d - 1 } else { d });
            }
        }
    }

    #[test]
    fn poset_structure() {
        for n in 0..=4 {
            let poset = face_poset(n);
            for (l, faces) in &poset.cells {
                assert!(l.is_valid_in(n), "{}", l);
                let proj: BTreeSet<usize> = l.project_to_simplex().into_iter().collect();
                for f in faces {
                    assert_eq!(f.dim() + 1, l.dim());
                    let fp: BTreeSet<usize> = f.project_to_simplex().into_iter().collect();
                    assert!(fp.is_subset(&proj), "{} -> {}", l, f);
                }
            }
            // every maximal chain from the top has length n
            let mut level = vec![top_label(n)];
            for _ in 0..n {
                let next: BTreeSet<Label> = level.iter().flat_map(|l| poset.cells[l].iter().cloned()).collect();
                assert!(level.iter().all(|l| !poset.cells[l].is_empty()));
                level = next.into_iter().collect();
            }
            assert!(level.iter().all(|l| poset.cells[l].is_empty() && l.dim() == 0));
        }
        assert_eq!(lab("2,3][0,1,2]").project_to_simplex(), vec![2, 3]);
        assert_eq!(lab("2][0,1,2]").project_to_simplex(), vec![2]);
        assert!(!lab("0,1][2,3]").is_valid_in(3));
    }
}
