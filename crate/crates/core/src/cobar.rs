//! Cobar words, the hat-cobar construction over `Z(X)` and the bar
//! construction of the resulting algebra.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::homalg::{Chain, Ring};
use crate::simplicial::{adjoin_inverses, FormalSimplex, OpExtension, SimplexId, SimplicialSet};

/// A tensor word of letters; the empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CobarWord(pub Vec<SimplexId>);

impl CobarWord {
    pub fn empty() -> Self {
        CobarWord(Vec::new())
    }

    pub fn letters(&self) -> &[SimplexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &CobarWord) -> CobarWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        CobarWord(v)
    }
}

/// The value of a formal simplex when it is used as a letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LetterValue {
    Letter(SimplexId),
    Unit,
    Zero,
}

/// Deletes adjacent `x x~` and `x~ x` pairs until none remain.
pub fn reduce_word(w: &CobarWord, ext: &OpExtension) -> CobarWord {
    let mut out: Vec<SimplexId> = Vec::with_capacity(w.len());
    for &a in &w.0 {
        match (out.last(), ext.op(a)) {
            (Some(&b), Some(inv)) if b == inv => {
                out.pop();
            }
            _ => out.push(a),
        }
    }
    CobarWord(out)
}

/// `sum_{i=1}^{n-1} (-1)^i d_i a` over nondegenerate faces.
pub fn truncated_boundary_d_a(ext: &OpExtension, a: SimplexId) -> Chain<SimplexId> {
    let set = ext.set();
    let n = set.dim(a);
    let mut c = Chain::zero(Ring::Integers);
    for (i, f) in set.stored_faces(a).iter().enumerate().take(n).skip(1) {
        if let Some(b) = f.as_nondegenerate() {
            c.add_term(b, sign(i));
        }
    }
    c
}

pub(crate) fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Cobar algebra of a simplicial set, either the hat variant over `Z(X)` or
/// the classical one for 1-reduced inputs.
#[derive(Clone, Debug)]
pub struct CobarAlgebra {
    ext: OpExtension,
    hat: bool,
    letters: Vec<SimplexId>,
}

impl CobarAlgebra {
    /// The hat-cobar algebra; defined for every presentation.
    pub fn hat(x: &SimplicialSet) -> Self {
        Self::with_mode(x, true)
    }

    /// The classical cobar construction on normalized chains; requires a
    /// 1-reduced input.
    pub fn classical(x: &SimplicialSet) -> Result<Self> {
        if !x.is_one_reduced() {
            return Err(Error::Precondition(format!("`{}` is not 1-reduced", x.name())));
        }
        Ok(Self::with_mode(x, false))
    }

    fn with_mode(x: &SimplicialSet, hat: bool) -> Self {
        let ext = adjoin_inverses(x);
        let mut letters: Vec<SimplexId> = ext.set().ids().filter(|&a| ext.set().dim(a) >= 1).collect();
        letters.sort();
        CobarAlgebra { ext, hat, letters }
    }

    pub fn ext(&self) -> &OpExtension {
        &self.ext
    }

    pub fn set(&self) -> &SimplicialSet {
        self.ext.set()
    }

    pub fn is_hat(&self) -> bool {
        self.hat
    }

    pub fn letters(&self) -> &[SimplexId] {
        &self.letters
    }

    /// True when words of a fixed degree can be arbitrarily long.
    pub fn needs_truncation(&self) -> bool {
        !self.set().simplices_of_dim(1).is_empty()
    }

    pub fn letter_degree(&self, a: SimplexId) -> usize {
        self.set().dim(a) - 1
    }

    pub fn word_degree(&self, w: &CobarWord) -> usize {
        w.0.iter().map(|&a| self.letter_degree(a)).sum()
    }

    pub fn letter_of(&self, s: &FormalSimplex) -> LetterValue {
        self.letter_value(s, self.hat)
    }

    /// Letter value with degenerate 1-simplices read as the unit when
    /// `unit_edges` holds and as zero otherwise.
    pub fn letter_value(&self, s: &FormalSimplex, unit_edges: bool) -> LetterValue {
        let set = self.set();
        let d = set.formal_dim(s);
        match s.as_nondegenerate() {
            Some(b) if d >= 1 => LetterValue::Letter(b),
            Some(_) => LetterValue::Zero,
            None if unit_edges && d == 1 => LetterValue::Unit,
            None => LetterValue::Zero,
        }
    }

    pub fn reduce(&self, w: CobarWord) -> CobarWord {
        if self.hat {
            reduce_word(&w, &self.ext)
        } else {
            w
        }
    }

    fn push_value(&self, out: &mut Vec<SimplexId>, v: LetterValue) -> bool {
        match v {
            LetterValue::Letter(a) => {
                out.push(a);
                true
            }
            LetterValue::Unit => true,
            LetterValue::Zero => false,
        }
    }

    /// Differential of a single letter, as raw (unreduced) letter sequences.
    pub fn letter_differential(&self, a: SimplexId) -> Chain<Vec<SimplexId>> {
        let set = self.set();
        let m = set.dim(a);
        let me = FormalSimplex::nondegenerate(a);
        let mut c = Chain::zero(Ring::Integers);
        let faces = if self.hat { 1..m } else { 0..m + 1 };
        for i in faces {
            let mut seq = Vec::new();
            if self.push_value(&mut seq, self.letter_of(&set.face_of(&me, i))) {
                c.add_term(seq, -sign(i));
            }
        }
        for j in 1..m {
            let mut seq = Vec::new();
            if self.push_value(&mut seq, self.letter_of(&set.front(&me, j)))
                && self.push_value(&mut seq, self.letter_of(&set.back(&me, j)))
            {
                c.add_term(seq, sign(j));
            }
        }
        c
    }

    /// The cobar differential, extended as a derivation with the sign of the
    /// desuspended degrees of the letters passed over.
    pub fn differential(&self, w: &CobarWord) -> Chain<CobarWord> {
        let mut c = Chain::zero(Ring::Integers);
        let mut passed = 0usize;
        for (p, &a) in w.0.iter().enumerate() {
            let s = sign(passed);
            for (seq, v) in self.letter_differential(a).iter() {
                let mut nw = Vec::with_capacity(w.len() + 1);
                nw.extend_from_slice(&w.0[..p]);
                nw.extend_from_slice(seq);
                nw.extend_from_slice(&w.0[p + 1..]);
                c.add_term(self.reduce(CobarWord(nw)), s * v);
            }
            passed += self.letter_degree(a);
        }
        c
    }

    /// Reduced words from `start` to `end` of the given degree, in
    /// lexicographic order. `max_len` is mandatory when 1-simplex letters exist.
    pub fn paths(
        &self,
        start: SimplexId,
        end: SimplexId,
        degree: usize,
        max_len: Option<usize>,
    ) -> Result<Vec<CobarWord>> {
        if max_len.is_none() && self.needs_truncation() {
            return Err(Error::Precondition(format!(
                "`{}` has 1-simplices, so a word-length cap is required",
                self.set().name()
            )));
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.walk(start, end, degree, max_len.unwrap_or(usize::MAX), &mut cur, &mut out);
        Ok(out)
    }

    fn walk(
        &self,
        at: SimplexId,
        end: SimplexId,
        left: usize,
        max_len: usize,
        cur: &mut Vec<SimplexId>,
        out: &mut Vec<CobarWord>,
    ) {
        if left == 0 && at == end {
            out.push(CobarWord(cur.clone()));
        }
        if cur.len() >= max_len {
            return;
        }
        let set = self.set();
        for &a in &self.letters {
            let (lo, hi) = set.endpoints_of(a);
            if lo != at || self.letter_degree(a) > left {
                continue;
            }
            if let (Some(&prev), Some(inv)) = (cur.last(), self.ext.op(a)) {
                if prev == inv {
                    continue;
                }
            }
            cur.push(a);
            self.walk(hi, end, left - self.letter_degree(a), max_len, cur, out);
            cur.pop();
        }
    }

    /// Based loops at the basepoint.
    pub fn basis(&self, degree: usize, max_len: Option<usize>) -> Result<Vec<CobarWord>> {
        let x0 = self.set().basepoint();
        self.paths(x0, x0, degree, max_len)
    }

    pub fn describe(&self, w: &CobarWord) -> String {
        let names: Vec<&str> = w.0.iter().map(|&a| self.set().simplex_name(a)).collect();
        format!("[{}]", names.join("|"))
    }

    /// Parses `[a|b~|c]`.
    pub fn parse_word(&self, s: &str) -> Result<CobarWord> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::Malformed(format!("word `{}` must be bracketed", s)))?;
        if inner.trim().is_empty() {
            return Ok(CobarWord::empty());
        }
        let mut letters = Vec::new();
        for name in inner.split('|') {
            let name = name.trim();
            let a = self.set().lookup(name).ok_or_else(|| Error::UnknownSimplex(name.to_string()))?;
            if self.set().dim(a) == 0 {
                return Err(Error::Malformed(format!("vertex `{}` used as a letter", name)));
            }
            letters.push(a);
        }
        Ok(CobarWord(letters))
    }

    /// Bar words of the given degree whose letters are nonempty words with
    /// length at most `max_len`.
    pub fn bar_basis(&self, degree: usize, max_len: Option<usize>) -> Result<Vec<BarWord>> {
        let mut by_degree: Vec<Vec<CobarWord>> = Vec::new();
        for d in 0..degree {
            let mut b = self.basis(d, max_len)?;
            b.retain(|w| !w.is_empty());
            by_degree.push(b);
        }
        let mut out = Vec::new();
        let mut cur = Vec::new();
        bar_walk(&by_degree, degree, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    pub fn bar_degree(&self, b: &BarWord) -> usize {
        b.0.iter().map(|w| self.word_degree(w) + 1).sum()
    }

    /// `d1 + d2` on the bar construction; unit letters are rejected and unit
    /// terms produced by `d1` vanish in the normalized bar construction.
    pub fn bar_differential(&self, b: &BarWord) -> Result<Chain<BarWord>> {
        if b.0.iter().any(|w| w.is_empty()) {
            return Err(Error::Malformed("bar letter equal to the unit".to_string()));
        }
        let mut c = Chain::zero(Ring::Integers);
        let mut eps = 0usize;
        for (i, w) in b.0.iter().enumerate() {
            for (dw, v) in self.differential(w).iter() {
                if dw.is_empty() {
                    continue;
                }
                let mut nb = b.0.clone();
                nb[i] = dw.clone();
                c.add_term(BarWord(nb), -sign(eps) * v);
            }
            eps += self.word_degree(w) + 1;
            if i + 1 < b.0.len() {
                let mut nb = b.0[..i].to_vec();
                nb.push(self.reduce(w.concat(&b.0[i + 1])));
                nb.extend_from_slice(&b.0[i + 2..]);
                if nb[i].is_empty() {
                    continue;
                }
                c.add_term(BarWord(nb), sign(eps));
            }
        }
        Ok(c)
    }

    pub fn describe_bar(&self, b: &BarWord) -> String {
        let parts: Vec<String> = b.0.iter().map(|w| self.describe(w)).collect();
        format!("{{{}}}", parts.join("|"))
    }
}

fn bar_walk(by_degree: &[Vec<CobarWord>], left: usize, cur: &mut Vec<CobarWord>, out: &mut Vec<BarWord>) {
    if left == 0 {
        out.push(BarWord(cur.clone()));
        return;
    }
    for d in 0..left {
        for w in &by_degree[d] {
            cur.push(w.clone());
            bar_walk(by_degree, left - d - 1, cur, out);
            cur.pop();
        }
    }
}

/// A word in the bar construction; letters are nonempty cobar words.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct BarWord(pub Vec<CobarWord>);

impl BarWord {
    pub fn empty() -> Self {
        BarWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Convenience: the single-letter word `[a]`.
pub fn letter_word(a: SimplexId) -> CobarWord {
    CobarWord(vec![a])
}
