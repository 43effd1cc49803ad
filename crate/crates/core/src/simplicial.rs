//! Finite simplicial sets presented by nondegenerate generators and face tables.
//!
//! Degenerate simplices are never stored. They are handled as formal
//! simplices `s_{j1} ... s_{jk} x` with `j1 > ... > jk`, where the leftmost
//! operator is applied last.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::homalg::{Chain, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SimplexId(pub u32);

impl SimplexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalSimplex {
    degeneracies: Vec<u32>,
    base: SimplexId,
}

impl FormalSimplex {
    pub fn nondegenerate(base: SimplexId) -> Self {
        FormalSimplex { degeneracies: Vec::new(), base }
    }

    pub fn base(&self) -> SimplexId {
        self.base
    }

    pub fn degeneracies(&self) -> &[u32] {
        &self.degeneracies
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracies.is_empty()
    }

    pub fn as_nondegenerate(&self) -> Option<SimplexId> {
        if self.degeneracies.is_empty() {
            Some(self.base)
        } else {
            None
        }
    }
}

/// Rewrites a degeneracy word into its strictly decreasing form.
///
/// The word is read as a composite, so the rightmost letter acts first on a
/// simplex of dimension `base_dim`.
pub fn canonical_degeneracy(word: &[u32], base: SimplexId, base_dim: usize) -> Result<FormalSimplex> {
    let mut dim = base_dim;
    for &j in word.iter().rev() {
        if j as usize > dim {
            return Err(Error::Malformed(format!(
                "degeneracy s_{} applied to a simplex of dimension {}",
                j, dim
            )));
        }
        dim += 1;
    }
    let mut w = word.to_vec();
    // s_a s_b = s_{b+1} s_a for a <= b
    loop {
        let mut changed = false;
        for p in 0..w.len().saturating_sub(1) {
            if w[p] <= w[p + 1] {
                let (a, b) = (w[p], w[p + 1]);
                w[p] = b + 1;
                w[p + 1] = a;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(FormalSimplex { degeneracies: w, base })
}

#[derive(Clone, Debug)]
struct SimplexData {
    name: String,
    dim: usize,
    faces: Vec<FormalSimplex>,
}

/// An immutable finite simplicial set.
#[derive(Clone, Debug)]
pub struct SimplicialSet {
    name: String,
    basepoint: SimplexId,
    simplices: Vec<SimplexData>,
    by_dim: Vec<Vec<SimplexId>>,
    index: BTreeMap<String, SimplexId>,
    ends: Vec<(SimplexId, SimplexId)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    DimensionMismatch { face: usize, expected: usize, found: usize },
    SimplicialIdentity { i: usize, j: usize },
    BasepointNotVertex,
    FaceUnavailable { face: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub simplex: String,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ViolationKind::DimensionMismatch { face, expected, found } => write!(
                f,
                "{}: face {} has dimension {} but {} is required",
                self.simplex, face, found, expected
            ),
            ViolationKind::SimplicialIdentity { i, j } => write!(
                f,
                "{}: d{} d{} != d{} d{}",
                self.simplex,
                i,
                j,
                j - 1,
                i
            ),
            ViolationKind::BasepointNotVertex => write!(f, "{}: basepoint is not a 0-simplex", self.simplex),
            ViolationKind::FaceUnavailable { face } => {
                write!(f, "{}: face {} cannot be evaluated", self.simplex, face)
            }
        }
    }
}

/// Face record as written in a presentation: a degeneracy word and a base name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSpec {
    pub deg: Vec<u32>,
    pub base: String,
}

impl FaceSpec {
    pub fn of(base: &str) -> Self {
        FaceSpec { deg: Vec::new(), base: base.to_string() }
    }

    pub fn degenerate(deg: &[u32], base: &str) -> Self {
        FaceSpec { deg: deg.to_vec(), base: base.to_string() }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SimplicialSetBuilder {
    name: String,
    basepoint: Option<String>,
    entries: Vec<(String, usize, Vec<FaceSpec>)>,
}

impl SimplicialSetBuilder {
    pub fn new(name: &str) -> Self {
        SimplicialSetBuilder { name: name.to_string(), basepoint: None, entries: Vec::new() }
    }

    pub fn basepoint(mut self, name: &str) -> Self {
        self.basepoint = Some(name.to_string());
        self
    }

    pub fn vertex(mut self, name: &str) -> Self {
        self.entries.push((name.to_string(), 0, Vec::new()));
        self
    }

    pub fn simplex(mut self, name: &str, dim: usize, faces: Vec<FaceSpec>) -> Self {
        self.entries.push((name.to_string(), dim, faces));
        self
    }

    /// Resolves names and checks referential integrity. Dimension and
    /// simplicial-identity problems are left to [`SimplicialSet::validate`].
    pub fn build(self) -> Result<SimplicialSet> {
        let mut entries = self.entries;
        entries.sort_by_key(|e| e.1);
        let mut index = BTreeMap::new();
        for (k, (name, _, _)) in entries.iter().enumerate() {
            if name.is_empty() || name.ends_with('~') {
                return Err(Error::Malformed(format!("invalid simplex identifier `{}`", name)));
            }
            if index.insert(name.clone(), SimplexId(k as u32)).is_some() {
                return Err(Error::Duplicate(name.clone()));
            }
        }
        let mut simplices = Vec::with_capacity(entries.len());
        for (name, dim, faces) in &entries {
            let expected = if *dim == 0 { 0 } else { dim + 1 };
            if faces.len() != expected {
                return Err(Error::Malformed(format!(
                    "simplex `{}` of dimension {} has {} face records, expected {}",
                    name,
                    dim,
                    faces.len(),
                    expected
                )));
            }
            let mut resolved = Vec::with_capacity(faces.len());
            for spec in faces {
                if spec.deg.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(Error::NonCanonicalDegeneracy(format!("{:?} on `{}`", spec.deg, spec.base)));
                }
                let base = *index.get(&spec.base).ok_or_else(|| Error::UnknownSimplex(spec.base.clone()))?;
                let base_dim = entries[base.index()].1;
                let fs = canonical_degeneracy(&spec.deg, base, base_dim)?;
                resolved.push(fs);
            }
            simplices.push(SimplexData { name: name.clone(), dim: *dim, faces: resolved });
        }
        let bp_name = self
            .basepoint
            .or_else(|| entries.first().map(|e| e.0.clone()))
            .ok_or_else(|| Error::Malformed("empty simplicial set".to_string()))?;
        let basepoint = *index.get(&bp_name).ok_or_else(|| Error::UnknownSimplex(bp_name.clone()))?;
        Ok(SimplicialSet::assemble(self.name, basepoint, simplices, index))
    }
}

impl SimplicialSet {
    fn assemble(
        name: String,
        basepoint: SimplexId,
        simplices: Vec<SimplexData>,
        index: BTreeMap<String, SimplexId>,
    ) -> Self {
        let mut set = SimplicialSet { name, basepoint, simplices, by_dim: Vec::new(), index, ends: Vec::new() };
        set.reindex();
        set
    }

    fn reindex(&mut self) {
        let top = self.simplices.iter().map(|s| s.dim).max().unwrap_or(0);
        self.by_dim = vec![Vec::new(); top + 1];
        for (k, s) in self.simplices.iter().enumerate() {
            self.by_dim[s.dim].push(SimplexId(k as u32));
        }
        // endpoints through the stored last and first faces; a malformed
        // table falls back to the simplex itself and is reported by validate
        let mut ends: Vec<(SimplexId, SimplexId)> = (0..self.simplices.len())
            .map(|k| (SimplexId(k as u32), SimplexId(k as u32)))
            .collect();
        let mut order: Vec<usize> = (0..self.simplices.len()).collect();
        order.sort_by_key(|&k| self.simplices[k].dim);
        for k in order {
            let s = &self.simplices[k];
            if s.dim == 0 {
                continue;
            }
            let first = s.faces[s.dim].base;
            let last = s.faces[0].base;
            if self.simplices[first.index()].dim < s.dim && self.simplices[last.index()].dim < s.dim {
                ends[k] = (ends[first.index()].0, ends[last.index()].1);
            }
        }
        self.ends = ends;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basepoint(&self) -> SimplexId {
        self.basepoint
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn dim(&self, x: SimplexId) -> usize {
        self.simplices[x.index()].dim
    }

    pub fn simplex_name(&self, x: SimplexId) -> &str {
        &self.simplices[x.index()].name
    }

    pub fn lookup(&self, name: &str) -> Option<SimplexId> {
        self.index.get(name).copied()
    }

    /// Nondegenerate simplices of dimension `d`, in presentation order.
    pub fn simplices_of_dim(&self, d: usize) -> &[SimplexId] {
        self.by_dim.get(d).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.simplices.len()).map(|k| SimplexId(k as u32))
    }

    pub fn stored_faces(&self, x: SimplexId) -> &[FormalSimplex] {
        &self.simplices[x.index()].faces
    }

    pub fn formal_dim(&self, s: &FormalSimplex) -> usize {
        self.dim(s.base) + s.degeneracies.len()
    }

    /// Single vertex and no nondegenerate 1-simplices.
    pub fn is_one_reduced(&self) -> bool {
        self.simplices_of_dim(0).len() == 1 && self.simplices_of_dim(1).is_empty()
    }

    pub fn face(&self, s: &FormalSimplex, i: usize) -> Result<FormalSimplex> {
        let d = self.formal_dim(s);
        if d == 0 || i > d {
            return Err(Error::Malformed(format!(
                "face index {} out of range for a simplex of dimension {}",
                i, d
            )));
        }
        self.face_rec(&s.degeneracies, s.base, i)
    }

    fn face_rec(&self, degs: &[u32], base: SimplexId, i: usize) -> Result<FormalSimplex> {
        let Some((&j, rest)) = degs.split_first() else {
            return Ok(self.simplices[base.index()].faces[i].clone());
        };
        let j = j as usize;
        if i < j {
            let inner = self.face_rec(rest, base, i)?;
            self.prepend(j as u32 - 1, inner)
        } else if i == j || i == j + 1 {
            Ok(FormalSimplex { degeneracies: rest.to_vec(), base })
        } else {
            let inner = self.face_rec(rest, base, i - 1)?;
            self.prepend(j as u32, inner)
        }
    }

    fn prepend(&self, j: u32, s: FormalSimplex) -> Result<FormalSimplex> {
        let mut w = Vec::with_capacity(s.degeneracies.len() + 1);
        w.push(j);
        w.extend_from_slice(&s.degeneracies);
        canonical_degeneracy(&w, s.base, self.dim(s.base))
    }

    /// Face of a validated simplex; panics on an out-of-range index.
    pub fn face_of(&self, s: &FormalSimplex, i: usize) -> FormalSimplex {
        self.face(s, i).expect("face index in range")
    }

    /// `front_k`: the face spanned by the first `k + 1` vertices.
    pub fn front(&self, s: &FormalSimplex, k: usize) -> FormalSimplex {
        let mut cur = s.clone();
        let mut d = self.formal_dim(s);
        while d > k {
            cur = self.face_of(&cur, d);
            d -= 1;
        }
        cur
    }

    /// `back_k`: the face spanned by vertices `k..=n`.
    pub fn back(&self, s: &FormalSimplex, k: usize) -> FormalSimplex {
        let mut cur = s.clone();
        for _ in 0..k {
            cur = self.face_of(&cur, 0);
        }
        cur
    }

    pub fn endpoints(&self, s: &FormalSimplex) -> (SimplexId, SimplexId) {
        self.ends[s.base.index()]
    }

    pub fn endpoints_of(&self, x: SimplexId) -> (SimplexId, SimplexId) {
        self.ends[x.index()]
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if self.dim(self.basepoint) != 0 {
            out.push(Violation {
                simplex: self.simplex_name(self.basepoint).to_string(),
                kind: ViolationKind::BasepointNotVertex,
            });
        }
        for x in self.ids() {
            let data = &self.simplices[x.index()];
            let mut dims_ok = true;
            for (i, f) in data.faces.iter().enumerate() {
                let found = self.formal_dim(f);
                if found + 1 != data.dim {
                    dims_ok = false;
                    out.push(Violation {
                        simplex: data.name.clone(),
                        kind: ViolationKind::DimensionMismatch { face: i, expected: data.dim - 1, found },
                    });
                }
            }
            if !dims_ok || data.dim < 2 {
                continue;
            }
            let me = FormalSimplex::nondegenerate(x);
            for j in 1..=data.dim {
                for i in 0..j {
                    let lhs = self.face(&me, j).and_then(|f| self.face(&f, i));
                    let rhs = self.face(&me, i).and_then(|f| self.face(&f, j - 1));
                    match (lhs, rhs) {
                        (Ok(a), Ok(b)) if a == b => {}
                        (Ok(_), Ok(_)) => out.push(Violation {
                            simplex: data.name.clone(),
                            kind: ViolationKind::SimplicialIdentity { i, j },
                        }),
                        _ => out.push(Violation {
                            simplex: data.name.clone(),
                            kind: ViolationKind::FaceUnavailable { face: j },
                        }),
                    }
                }
            }
        }
        out
    }

    /// Normalized boundary `sum (-1)^i d_i x` over nondegenerate faces.
    pub fn boundary(&self, x: SimplexId, ring: Ring) -> Chain<SimplexId> {
        let mut c = Chain::zero(ring);
        let n = self.dim(x);
        if n == 0 {
            return c;
        }
        for (i, f) in self.simplices[x.index()].faces.iter().enumerate() {
            if let Some(b) = f.as_nondegenerate() {
                c.add_term(b, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        c
    }

    /// Alexander-Whitney coproduct in normalized chains. With `reduced`,
    /// terms with a 0-dimensional factor are dropped as well.
    pub fn aw_coproduct(&self, x: SimplexId, reduced: bool) -> Chain<(SimplexId, SimplexId)> {
        let mut c = Chain::zero(Ring::Integers);
        let n = self.dim(x);
        let me = FormalSimplex::nondegenerate(x);
        for k in 0..=n {
            if reduced && (k == 0 || k == n) {
                continue;
            }
            let f = self.front(&me, k);
            let b = self.back(&me, k);
            if let (Some(f), Some(b)) = (f.as_nondegenerate(), b.as_nondegenerate()) {
                c.add_term((f, b), 1);
            }
        }
        c
    }

    pub fn describe(&self, s: &FormalSimplex) -> String {
        let mut out = String::new();
        for j in &s.degeneracies {
            out.push_str(&format!("s{} ", j));
        }
        out.push_str(self.simplex_name(s.base));
        out
    }

    /// Face records in presentation form, used for serialization.
    pub fn face_specs(&self, x: SimplexId) -> Vec<FaceSpec> {
        self.stored_faces(x)
            .iter()
            .map(|f| FaceSpec { deg: f.degeneracies.clone(), base: self.simplex_name(f.base).to_string() })
            .collect()
    }
}

/// `Z(X)`: the simplicial set with a formal inverse `x~` adjoined for every
/// nondegenerate 1-simplex `x`.
#[derive(Clone, Debug)]
pub struct OpExtension {
    set: SimplicialSet,
    original_len: usize,
    op: Vec<Option<SimplexId>>,
    pairs: Vec<(SimplexId, SimplexId)>,
}

impl OpExtension {
    pub fn set(&self) -> &SimplicialSet {
        &self.set
    }

    pub fn op_pairs(&self) -> &[(SimplexId, SimplexId)] {
        &self.pairs
    }

    /// The partner of a 1-simplex letter; an involution.
    pub fn op(&self, x: SimplexId) -> Option<SimplexId> {
        self.op[x.index()]
    }

    pub fn is_original(&self, x: SimplexId) -> bool {
        x.index() < self.original_len
    }
}

pub fn adjoin_inverses(x: &SimplicialSet) -> OpExtension {
    let mut set = x.clone();
    let original_len = set.simplices.len();
    let mut pairs = Vec::new();
    let edges: Vec<SimplexId> = x.simplices_of_dim(1).to_vec();
    for e in edges {
        let data = &x.simplices[e.index()];
        let id = SimplexId(set.simplices.len() as u32);
        let name = format!("{}~", data.name);
        let faces = vec![data.faces[1].clone(), data.faces[0].clone()];
        set.index.insert(name.clone(), id);
        set.simplices.push(SimplexData { name, dim: 1, faces });
        pairs.push((e, id));
    }
    set.reindex();
    let mut op = vec![None; set.simplices.len()];
    for &(a, b) in &pairs {
        op[a.index()] = Some(b);
        op[b.index()] = Some(a);
    }
    OpExtension { set, original_len, op, pairs }
}

pub const BUILTIN_NAMES: &[&str] = &[
    "point",
    "circle",
    "sphere2",
    "sphere3",
    "simplex3_boundary",
    "torus",
    "simplex2",
    "simplex3_mod_edges",
    "simplex4_mod_edges",
];

pub fn builtin(name: &str) -> Option<SimplicialSet> {
    let set = match name {
        "point" => SimplicialSetBuilder::new("point").vertex("v").build(),
        "circle" => SimplicialSetBuilder::new("circle")
            .vertex("v")
            .simplex("t", 1, vec![FaceSpec::of("v"), FaceSpec::of("v")])
            .build(),
        "sphere2" => SimplicialSetBuilder::new("sphere2")
            .vertex("v")
            .simplex("s", 2, vec![FaceSpec::degenerate(&[0], "v"); 3])
            .build(),
        "sphere3" => SimplicialSetBuilder::new("sphere3")
            .vertex("v")
            .simplex("s", 3, vec![FaceSpec::degenerate(&[1, 0], "v"); 4])
            .build(),
        "torus" => SimplicialSetBuilder::new("torus")
            .vertex("v")
            .simplex("a", 1, vec![FaceSpec::of("v"); 2])
            .simplex("b", 1, vec![FaceSpec::of("v"); 2])
            .simplex("c", 1, vec![FaceSpec::of("v"); 2])
            .simplex("U", 2, vec![FaceSpec::of("b"), FaceSpec::of("c"), FaceSpec::of("a")])
            .simplex("L", 2, vec![FaceSpec::of("a"), FaceSpec::of("c"), FaceSpec::of("b")])
            .build(),
        "simplex3_boundary" => subset_complex("simplex3_boundary", 3, 3, 0),
        "simplex2" => subset_complex("simplex2", 2, 3, 0),
        "simplex3_mod_edges" => subset_complex("simplex3_mod_edges", 3, 4, 2),
        "simplex4_mod_edges" => subset_complex("simplex4_mod_edges", 4, 5, 2),
        _ => return None,
    };
    Some(set.expect("built-in presentations are well formed"))
}

/// Nonempty subsets of `{0..=n}` with at most `max_size` elements. Subsets
/// with at most `collapse` elements are identified with a single vertex `v`.
fn subset_complex(name: &str, n: u32, max_size: usize, collapse: usize) -> Result<SimplicialSet> {
    let label = |s: &[u32]| -> String {
        if collapse > 0 && s.len() <= collapse {
            "v".to_string()
        } else {
            s.iter().map(|v| v.to_string()).collect()
        }
    };
    let mut b = SimplicialSetBuilder::new(name);
    if collapse > 0 {
        b = b.vertex("v");
    }
    let mut subsets: Vec<Vec<u32>> = (1u32..(1 << (n + 1)))
        .map(|mask| (0..=n).filter(|v| mask & (1 << v) != 0).collect::<Vec<u32>>())
        .filter(|s| s.len() <= max_size && (collapse == 0 || s.len() > collapse))
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    for s in &subsets {
        let d = s.len() - 1;
        if d == 0 {
            b = b.vertex(&label(s));
            continue;
        }
        let faces = (0..s.len())
            .map(|i| {
                let mut f = s.clone();
                f.remove(i);
                if collapse > 0 && f.len() <= collapse {
                    let fd = f.len() as u32 - 1;
                    let deg: Vec<u32> = (0..fd).rev().collect();
                    FaceSpec::degenerate(&deg, "v")
                } else {
                    FaceSpec::of(&label(&f))
                }
            })
            .collect();
        b = b.simplex(&label(s), d, faces);
    }
    b.build()
}
