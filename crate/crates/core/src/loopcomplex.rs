//! Free loop models: the (hat-)coHochschild complex, its closed-necklace
//! face operators, the Hochschild complex of the cobar algebra and the
//! comparison maps between them.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::cobar::{sign, BarWord, CobarAlgebra, CobarWord, LetterValue};
use crate::error::{Error, Result};
use crate::homalg::{rank_over, Chain, Ring, SparseMatrix};
use crate::simplicial::{FormalSimplex, SimplexId, SimplicialSet};

/// `x ⊗ w` with `x` nondegenerate and `w` a reduced word from `max x` back
/// to `min x`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoopGenerator {
    pub x: SimplexId,
    pub word: CobarWord,
}

impl LoopGenerator {
    pub fn new(x: SimplexId, word: CobarWord) -> Self {
        LoopGenerator { x, word }
    }
}

#[derive(Clone, Debug)]
pub struct LoopComplex {
    alg: CobarAlgebra,
    theta2_sign: i64,
}

impl LoopComplex {
    /// The hat-coHochschild complex `C_*(X) ⊗ Ω̂C_*(X)`.
    pub fn hat(x: &SimplicialSet) -> Self {
        LoopComplex { alg: CobarAlgebra::hat(x), theta2_sign: 1 }
    }

    /// The coHochschild complex `C ⊗ ΩC` of a 1-reduced simplicial set.
    pub fn classical(x: &SimplicialSet) -> Result<Self> {
        if let Some(&e) = x.simplices_of_dim(1).first() {
            return Err(Error::Precondition(format!(
                "`{}` is not 1-reduced: nondegenerate 1-simplex `{}`",
                x.name(),
                x.simplex_name(e)
            )));
        }
        if x.simplices_of_dim(0).len() != 1 {
            return Err(Error::Precondition(format!("`{}` is not 1-reduced: it has several vertices", x.name())));
        }
        Ok(LoopComplex { alg: CobarAlgebra::classical(x)?, theta2_sign: 1 })
    }

    /// Same complex with the sign of `θ₂` reversed; used to check that the
    /// square-zero test notices a wrong sign.
    pub fn with_theta2_sign_flipped(mut self) -> Self {
        self.theta2_sign = -self.theta2_sign;
        self
    }

    pub fn algebra(&self) -> &CobarAlgebra {
        &self.alg
    }

    pub fn set(&self) -> &SimplicialSet {
        self.alg.set()
    }

    pub fn is_hat(&self) -> bool {
        self.alg.is_hat()
    }

    pub fn degree(&self, g: &LoopGenerator) -> usize {
        self.set().dim(g.x) + self.alg.word_degree(&g.word)
    }

    /// Generators of the given degree satisfying the cyclic endpoint
    /// condition, ordered by `(x, word)`.
    pub fn basis(&self, degree: usize, max_len: Option<usize>) -> Result<Vec<LoopGenerator>> {
        let set = self.set();
        let mut out = Vec::new();
        for x in set.ids() {
            if !self.alg.ext().is_original(x) {
                continue;
            }
            let p = set.dim(x);
            if p > degree {
                continue;
            }
            let (lo, hi) = set.endpoints_of(x);
            for w in self.alg.paths(hi, lo, degree - p, max_len)? {
                out.push(LoopGenerator::new(x, w));
            }
        }
        out.sort();
        Ok(out)
    }

    fn push(&self, c: &mut Chain<LoopGenerator>, x: SimplexId, w: CobarWord, v: i64) {
        c.add_term(LoopGenerator::new(x, self.alg.reduce(w)), v);
    }

    fn with_letter(&self, v: LetterValue, w: &CobarWord, front: bool) -> Option<CobarWord> {
        match v {
            LetterValue::Zero => None,
            LetterValue::Unit => Some(w.clone()),
            LetterValue::Letter(a) => {
                let mut out = Vec::with_capacity(w.len() + 1);
                if front {
                    out.push(a);
                    out.extend_from_slice(w.letters());
                } else {
                    out.extend_from_slice(w.letters());
                    out.push(a);
                }
                Some(CobarWord(out))
            }
        }
    }

    /// `d_C ⊗ 1 + 1 ⊗ d_Ω + θ₁ + θ₂`. In the hat setting the first summand
    /// uses inner faces only.
    pub fn differential(&self, g: &LoopGenerator) -> Chain<LoopGenerator> {
        let set = self.set();
        let mut c = Chain::zero(Ring::Integers);
        let x = FormalSimplex::nondegenerate(g.x);
        let p = set.dim(g.x);
        let q = self.alg.word_degree(&g.word);
        if p >= 1 {
            let faces = if self.is_hat() { 1..p } else { 0..p + 1 };
            for i in faces {
                if let Some(f) = set.face_of(&x, i).as_nondegenerate() {
                    self.push(&mut c, f, g.word.clone(), sign(i));
                }
            }
        }
        for (w, v) in self.alg.differential(&g.word).iter() {
            c.add_term(LoopGenerator::new(g.x, w.clone()), sign(p) * v);
        }
        // θ₁: the back factor moves to the front of the word
        for k in 0..p {
            let Some(xf) = set.front(&x, k).as_nondegenerate() else { continue };
            let letter = self.alg.letter_of(&set.back(&x, k));
            if let Some(w) = self.with_letter(letter, &g.word, true) {
                self.push(&mut c, xf, w, -sign(k));
            }
        }
        // θ₂: the front factor moves to the end of the word
        for k in 1..=p {
            let Some(xb) = set.back(&x, k).as_nondegenerate() else { continue };
            let letter = self.alg.letter_of(&set.front(&x, k));
            if let Some(w) = self.with_letter(letter, &g.word, false) {
                self.push(&mut c, xb, w, self.theta2_sign * sign((k + 1) * (p - k + q)));
            }
        }
        c
    }

    fn word_face(&self, eps: u8, j: usize, w: &CobarWord) -> Option<CobarWord> {
        let set = self.set();
        let mut j = j;
        for (pos, &a) in w.letters().iter().enumerate() {
            let deg = self.alg.letter_degree(a);
            if j > deg {
                j -= deg;
                continue;
            }
            let me = FormalSimplex::nondegenerate(a);
            let mut out: Vec<SimplexId> = w.letters()[..pos].to_vec();
            let vals = if eps == 0 {
                vec![self.alg.letter_value(&set.front(&me, j), true), self.alg.letter_value(&set.back(&me, j), true)]
            } else {
                vec![self.alg.letter_value(&set.face_of(&me, j), true)]
            };
            for v in vals {
                match v {
                    LetterValue::Zero => return None,
                    LetterValue::Unit => {}
                    LetterValue::Letter(b) => out.push(b),
                }
            }
            out.extend_from_slice(&w.letters()[pos + 1..]);
            return Some(CobarWord(out));
        }
        None
    }

    /// The face operators of the closed-necklace model. `Ok(None)` is the zero
    /// marker for degenerate results.
    pub fn necklical_face(&self, eps: u8, i: usize, g: &LoopGenerator) -> Result<Option<LoopGenerator>> {
        let set = self.set();
        let p = set.dim(g.x);
        let n = p + self.alg.word_degree(&g.word);
        let limit = match eps {
            0 | 1 => n,
            2 => p,
            _ => return Err(Error::Malformed(format!("face family {} does not exist", eps))),
        };
        if i == 0 || i > limit {
            return Err(Error::Malformed(format!("face index {} out of range 1..={} for family {}", i, limit, eps)));
        }
        let x = FormalSimplex::nondegenerate(g.x);
        let out = match eps {
            0 if i <= p => set.front(&x, i - 1).as_nondegenerate().and_then(|xf| {
                self.with_letter(self.alg.letter_value(&set.back(&x, i - 1), true), &g.word, true)
                    .map(|w| LoopGenerator::new(xf, w))
            }),
            0 => self.word_face(0, i - p, &g.word).map(|w| LoopGenerator::new(g.x, w)),
            1 if i == 1 && p >= 1 => return self.necklical_face(2, 1, g),
            1 if i <= p => set.face_of(&x, i - 1).as_nondegenerate().map(|f| LoopGenerator::new(f, g.word.clone())),
            1 => self.word_face(1, i - p, &g.word).map(|w| LoopGenerator::new(g.x, w)),
            _ => set.back(&x, i).as_nondegenerate().and_then(|xb| {
                self.with_letter(self.alg.letter_value(&set.front(&x, i), true), &g.word, false)
                    .map(|w| LoopGenerator::new(xb, w))
            }),
        };
        Ok(out.map(|h| LoopGenerator::new(h.x, self.alg.reduce(h.word))))
    }

    /// `Σ_{i=1}^n (-1)^i (d⁰_i - d¹_i) + Σ_{i=2}^p (-1)^{(i-1)n} d²_i`.
    pub fn necklical_differential(&self, g: &LoopGenerator) -> Chain<LoopGenerator> {
        let p = self.set().dim(g.x);
        let n = p + self.alg.word_degree(&g.word);
        let mut c = Chain::zero(Ring::Integers);
        for i in 1..=n {
            if let Some(h) = self.necklical_face(0, i, g).expect("index in range") {
                c.add_term(h, sign(i));
            }
            if let Some(h) = self.necklical_face(1, i, g).expect("index in range") {
                c.add_term(h, -sign(i));
            }
        }
        for i in 2..=p {
            if let Some(h) = self.necklical_face(2, i, g).expect("index in range") {
                c.add_term(h, sign((i - 1) * n));
            }
        }
        c
    }

    pub fn describe(&self, g: &LoopGenerator) -> String {
        format!("({} ; {})", self.set().simplex_name(g.x), self.alg.describe(&g.word))
    }

    /// Parses `(x ; [a|b])`.
    pub fn parse_generator(&self, s: &str) -> Result<LoopGenerator> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Malformed(format!("generator `{}` must be parenthesized", s)))?;
        let (x, w) = inner
            .split_once(';')
            .ok_or_else(|| Error::Malformed(format!("generator `{}` lacks `;`", s)))?;
        let x = x.trim();
        let xid = self.set().lookup(x).ok_or_else(|| Error::UnknownSimplex(x.to_string()))?;
        if !self.alg.ext().is_original(xid) {
            return Err(Error::Malformed(format!("`{}` is not a simplex of the input", x)));
        }
        let word = self.alg.parse_word(w)?;
        let g = LoopGenerator::new(xid, word);
        self.check(&g)?;
        Ok(g)
    }

    /// Cyclic endpoint condition and reducedness.
    pub fn check(&self, g: &LoopGenerator) -> Result<()> {
        let set = self.set();
        let (lo, hi) = set.endpoints_of(g.x);
        let mut at = hi;
        for &a in g.word.letters() {
            let (a_lo, a_hi) = set.endpoints_of(a);
            if a_lo != at {
                return Err(Error::Malformed(format!("letter `{}` does not continue the path", set.simplex_name(a))));
            }
            at = a_hi;
        }
        if at != lo {
            return Err(Error::Malformed("word does not close up at min x".to_string()));
        }
        if self.alg.reduce(g.word.clone()) != g.word {
            return Err(Error::Malformed("word is not reduced".to_string()));
        }
        Ok(())
    }
}

/// Which letters the first factor of the χ sign exponent sums over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChiStart {
    Previous,
    Next,
}

/// How `|a_j|` is read in the χ sign exponent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LetterDegree {
    Dimension,
    Desuspended,
}

/// Candidate sign rules for the rotation terms of χ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ChiSign {
    /// `(Σ_{j≥start} |a_j| + n + i)(|u| + Σ_{j≤i} |a_j| + i)`.
    Printed { start: ChiStart, letter_degree: LetterDegree },
    /// Koszul sign of moving `a_1 … a_{i-1}` past `a_i … a_n u`, in cobar degrees.
    Rotation,
}

impl ChiSign {
    pub const ALL: [ChiSign; 5] = [
        ChiSign::Printed { start: ChiStart::Previous, letter_degree: LetterDegree::Dimension },
        ChiSign::Printed { start: ChiStart::Next, letter_degree: LetterDegree::Dimension },
        ChiSign::Printed { start: ChiStart::Previous, letter_degree: LetterDegree::Desuspended },
        ChiSign::Printed { start: ChiStart::Next, letter_degree: LetterDegree::Desuspended },
        ChiSign::Rotation,
    ];
}

impl core::fmt::Display for ChiSign {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            ChiSign::Printed { start, letter_degree } => {
                let start = match start {
                    ChiStart::Previous => "i-1",
                    ChiStart::Next => "i+1",
                };
                let deg = match letter_degree {
                    LetterDegree::Dimension => "|a_j| = dim a_j",
                    LetterDegree::Desuspended => "|a_j| = dim a_j - 1",
                };
                write!(f, "(sum_{{j={}..n}} |a_j| + n + i)(|u| + sum_{{j<=i}} |a_j| + i) with {}", start, deg)
            }
            ChiSign::Rotation => write!(f, "(sum_{{j<i}} |a_j|)(sum_{{j>=i}} |a_j| + |u|) with |a_j| = dim a_j - 1"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HochschildGenerator {
    pub bar: BarWord,
    pub word: CobarWord,
}

/// `BA ⊗ A` for `A` the cobar algebra of a 1-reduced simplicial set.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    alg: CobarAlgebra,
    chi: ChiSign,
}

impl HochschildComplex {
    pub fn new(x: &SimplicialSet) -> Result<Self> {
        Ok(HochschildComplex { alg: CobarAlgebra::classical(x)?, chi: ChiSign::Rotation })
    }

    pub fn with_chi_sign(mut self, chi: ChiSign) -> Self {
        self.chi = chi;
        self
    }

    pub fn chi_sign(&self) -> ChiSign {
        self.chi
    }

    pub fn algebra(&self) -> &CobarAlgebra {
        &self.alg
    }

    pub fn degree(&self, g: &HochschildGenerator) -> usize {
        self.alg.bar_degree(&g.bar) + self.alg.word_degree(&g.word)
    }

    pub fn basis(&self, degree: usize) -> Result<Vec<HochschildGenerator>> {
        let mut out = Vec::new();
        for b in 0..=degree {
            let bars = self.alg.bar_basis(b, None)?;
            let words = self.alg.basis(degree - b, None)?;
            for bar in &bars {
                for w in &words {
                    out.push(HochschildGenerator { bar: bar.clone(), word: w.clone() });
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// `(-1)^{ε_n} 1 ⊗ d_A + d_BA ⊗ 1 + θ¹ + θ²`.
    pub fn differential(&self, g: &HochschildGenerator) -> Chain<HochschildGenerator> {
        let alg = &self.alg;
        let mut c = Chain::zero(Ring::Integers);
        let eps_n = alg.bar_degree(&g.bar);
        for (w, v) in alg.differential(&g.word).iter() {
            c.add_term(HochschildGenerator { bar: g.bar.clone(), word: w.clone() }, sign(eps_n) * v);
        }
        let db = alg.bar_differential(&g.bar).expect("bar letters are non-unit");
        for (b, v) in db.iter() {
            c.add_term(HochschildGenerator { bar: b.clone(), word: g.word.clone() }, v);
        }
        let n = g.bar.len();
        if n == 0 {
            return c;
        }
        let a1 = &g.bar.0[0];
        let d1 = alg.word_degree(a1);
        let du = alg.word_degree(&g.word);
        let rest = BarWord(g.bar.0[1..].to_vec());
        c.add_term(HochschildGenerator { bar: rest, word: g.word.concat(a1) }, sign(d1 * (du + eps_n + d1 + 1)));
        let an = &g.bar.0[n - 1];
        let eps_prev = eps_n - alg.word_degree(an) - 1;
        let init = BarWord(g.bar.0[..n - 1].to_vec());
        c.add_term(HochschildGenerator { bar: init, word: an.concat(&g.word) }, -sign(eps_prev));
        c
    }

    /// The cyclic rotation map `χ(a ⊗ u)` as pairs (letter, word).
    pub fn chi_with(&self, a: &CobarWord, u: &CobarWord, s: ChiSign) -> Chain<(SimplexId, CobarWord)> {
        let mut c = Chain::zero(Ring::Integers);
        let n = a.len();
        if n == 0 {
            return c;
        }
        let l = a.letters();
        if n == 1 {
            c.add_term((l[0], u.clone()), 1);
            return c;
        }
        let set = self.alg.set();
        let du = self.alg.word_degree(u);
        for i in 1..=n {
            let exponent = match s {
                ChiSign::Printed { start, letter_degree } => {
                    let deg = |x: SimplexId| match letter_degree {
                        LetterDegree::Dimension => set.dim(x),
                        LetterDegree::Desuspended => set.dim(x) - 1,
                    };
                    let from = match start {
                        ChiStart::Previous => (i - 1).max(1),
                        ChiStart::Next => i + 1,
                    };
                    let left: usize = (from..=n).map(|j| deg(l[j - 1])).sum::<usize>() + n + i;
                    let right: usize = du + (1..=i).map(|j| deg(l[j - 1])).sum::<usize>() + i;
                    left * right
                }
                ChiSign::Rotation => {
                    let before: usize = l[..i - 1].iter().map(|&x| set.dim(x) - 1).sum();
                    let after: usize = l[i - 1..].iter().map(|&x| set.dim(x) - 1).sum();
                    before * (after + du)
                }
            };
            let mut w: Vec<SimplexId> = l[i..].to_vec();
            w.extend_from_slice(u.letters());
            w.extend_from_slice(&l[..i - 1]);
            c.add_term((l[i - 1], CobarWord(w)), sign(exponent));
        }
        c
    }

    pub fn chi(&self, a: &CobarWord, u: &CobarWord) -> Chain<(SimplexId, CobarWord)> {
        self.chi_with(a, u, self.chi)
    }

    /// `φ: BA ⊗ A → C ⊗ ΩC`.
    pub fn phi(&self, g: &HochschildGenerator) -> Chain<LoopGenerator> {
        let mut c = Chain::zero(Ring::Integers);
        match g.bar.len() {
            0 => c.add_term(LoopGenerator::new(self.alg.set().basepoint(), g.word.clone()), 1),
            1 => {
                for ((x, w), v) in self.chi(&g.bar.0[0], &g.word).iter() {
                    c.add_term(LoopGenerator::new(*x, w.clone()), v);
                }
            }
            _ => {}
        }
        c
    }

    pub fn describe(&self, g: &HochschildGenerator) -> String {
        format!("{} ⊗ {}", self.alg.describe_bar(&g.bar), self.alg.describe(&g.word))
    }

    /// `d φ(g) - φ(d g)`, zero exactly when φ commutes with the differentials at `g`.
    pub fn phi_defect(&self, cohoch: &LoopComplex, g: &HochschildGenerator) -> Chain<LoopGenerator> {
        let mut lhs = self.phi(g).map_linear(|h| cohoch.differential(h));
        let rhs = self.differential(g).map_linear(|h| self.phi(h));
        lhs.add_scaled(&rhs, -1);
        lhs
    }

    /// χ sign conventions under which φ is a chain map on every generator up
    /// to `max_degree`, in the order of [`ChiSign::ALL`].
    pub fn chi_sweep(&self, cohoch: &LoopComplex, max_degree: usize) -> Result<Vec<ChiSign>> {
        let mut gens = Vec::new();
        for n in 0..=max_degree {
            gens.extend(self.basis(n)?);
        }
        let mut winners = Vec::new();
        for s in ChiSign::ALL {
            let h = self.clone().with_chi_sign(s);
            if gens.iter().all(|g| h.phi_defect(cohoch, g).is_zero()) {
                winners.push(s);
            }
        }
        Ok(winners)
    }

    /// Betti number over `ring` of the kernel of φ in degree `n`.
    pub fn phi_kernel_betti(&self, cohoch: &LoopComplex, n: usize, ring: Ring) -> Result<usize> {
        let zk = |m: usize| -> Result<(usize, usize)> {
            let src = self.basis(m)?;
            let tgt = cohoch.basis(m, None)?;
            let below = if m == 0 { Vec::new() } else { self.basis(m - 1)? };
            let phi = matrix(&src, &tgt, |g| self.phi(g))?;
            let d = matrix(&src, &below, |g| self.differential(g))?;
            let k = src.len() - rank_over(&phi, ring);
            let z = src.len() - rank_over(&phi.stack(&d), ring);
            Ok((k, z))
        };
        let (_, z_n) = zk(n)?;
        let (k_up, z_up) = zk(n + 1)?;
        Ok(z_n - (k_up - z_up))
    }

    /// The projection `ρ: BΩC → C` on a bar word.
    pub fn rho(&self, b: &BarWord) -> Chain<SimplexId> {
        let mut c = Chain::zero(Ring::Integers);
        match b.0.as_slice() {
            [] => c.add_term(self.alg.set().basepoint(), 1),
            [w] if w.len() == 1 => c.add_term(w.letters()[0], 1),
            _ => {}
        }
        c
    }

    /// `η(x) = Σ [x⁽¹⁾]|…|[x⁽ᵏ⁾]` over iterated reduced coproducts of `x`.
    pub fn eta(&self, x: SimplexId) -> Chain<BarWord> {
        eta(&self.alg, x)
    }

    /// The local contraction `s`, splitting the first letter of the first
    /// bar letter off into a bar letter of its own.
    pub fn contraction_s(&self, b: &BarWord) -> Result<Chain<BarWord>> {
        contraction_s(&self.alg, b)
    }

    /// Least `m <= max_m` with `(s d + d s - id)^m (a) = 0`.
    pub fn nilpotency_order(&self, a: &Chain<BarWord>, max_m: usize) -> Result<Option<usize>> {
        let d = |c: &Chain<BarWord>| -> Chain<BarWord> {
            c.map_linear(|b| self.alg.bar_differential(b).expect("bar letters are non-unit"))
        };
        let s = |c: &Chain<BarWord>| -> Result<Chain<BarWord>> {
            let mut out = Chain::zero(Ring::Integers);
            for (b, v) in c.iter() {
                out.add_scaled(&contraction_s(&self.alg, b)?, v);
            }
            Ok(out)
        };
        let mut cur = a.clone();
        for m in 0..=max_m {
            if cur.is_zero() {
                return Ok(Some(m));
            }
            if m == max_m {
                break;
            }
            let mut next = s(&d(&cur))?;
            next.add_scaled(&d(&s(&cur)?), 1);
            next.add_scaled(&cur, -1);
            cur = next;
        }
        Ok(None)
    }
}

fn matrix<K: Ord + Clone, L: Ord + Clone>(
    src: &[K],
    tgt: &[L],
    f: impl Fn(&K) -> Chain<L>,
) -> Result<SparseMatrix> {
    let pos: alloc::collections::BTreeMap<&L, usize> = tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut m = SparseMatrix::zeros(tgt.len(), src.len());
    for (j, g) in src.iter().enumerate() {
        for (k, v) in f(g).iter() {
            let i = pos.get(k).ok_or_else(|| Error::IncompleteSlice("image outside target basis".to_string()))?;
            m.set(*i, j, v);
        }
    }
    Ok(m)
}

/// `s[v w | …] = (-1)^(|v|+1) [v | w | …]`, with `|v|` the cobar degree of
/// the split letter; the sign makes `s d + d s` the identity modulo terms
/// with more letters.
pub fn contraction_s(alg: &CobarAlgebra, b: &BarWord) -> Result<Chain<BarWord>> {
    let mut c = Chain::zero(Ring::Integers);
    let Some(first) = b.0.first() else {
        return Err(Error::Precondition("the empty bar word is not in the kernel of the projection".to_string()));
    };
    if first.len() > 1 {
        let v = CobarWord(vec![first.letters()[0]]);
        let eps = sign(alg.word_degree(&v) + 1);
        let mut out = vec![v, CobarWord(first.letters()[1..].to_vec())];
        out.extend_from_slice(&b.0[1..]);
        c.add_term(BarWord(out), eps);
    }
    Ok(c)
}

/// Iterated reduced Alexander-Whitney coproduct of `x`, as bar words of
/// one-letter cobar words.
pub fn eta(alg: &CobarAlgebra, x: SimplexId) -> Chain<BarWord> {
    let set = alg.set();
    let n = set.dim(x);
    let me = FormalSimplex::nondegenerate(x);
    let mut c = Chain::zero(Ring::Integers);
    if n == 0 {
        return c;
    }
    // every subset of inner vertices is a cut
    for mask in 0u64..(1u64 << (n - 1)) {
        let mut cuts = vec![0usize];
        cuts.extend((1..n).filter(|k| mask & (1 << (k - 1)) != 0));
        cuts.push(n);
        let mut letters = Vec::new();
        let mut ok = true;
        for win in cuts.windows(2) {
            let piece = set.back(&set.front(&me, win[1]), win[0]);
            match alg.letter_of(&piece) {
                LetterValue::Letter(a) => letters.push(CobarWord(vec![a])),
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            c.add_term(BarWord(letters), 1);
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::check_d_squared_on;
    use crate::simplicial::builtin;

    fn space(name: &str) -> SimplicialSet {
        builtin(name).unwrap()
    }

    fn gen(l: &LoopComplex, s: &str) -> LoopGenerator {
        l.parse_generator(s).unwrap()
    }

    #[test]
    fn generator_format_round_trips() {
        let l = LoopComplex::hat(&space("torus"));
        for s in ["(v ; [])", "(U ; [a~|b])", "(a ; [U|c~])"] {
            assert_eq!(l.describe(&gen(&l, s)), s);
        }
        assert!(l.parse_generator("(a ; [a|a~])").is_err());
        assert!(l.parse_generator("v ; []").is_err());
    }

    #[test]
    fn basis_examples() {
        let s = LoopComplex::classical(&space("sphere2")).unwrap();
        let b: Vec<String> = s.basis(3, None).unwrap().iter().map(|g| s.describe(g)).collect();
        assert_eq!(b, ["(v ; [s|s|s])", "(s ; [s])"]);
        let c = LoopComplex::hat(&space("circle"));
        let b: Vec<String> = c.basis(0, Some(1)).unwrap().iter().map(|g| c.describe(g)).collect();
        assert_eq!(b, ["(v ; [])", "(v ; [t])", "(v ; [t~])"]);
        let p = LoopComplex::classical(&space("point")).unwrap();
        assert_eq!(p.basis(0, None).unwrap().len(), 1);
        let err = LoopComplex::classical(&space("circle")).unwrap_err();
        assert!(format!("{}", err).contains("`t`"));
    }

    #[test]
    fn sphere_differential_pattern() {
        for hat in [false, true] {
            let x = space("sphere2");
            let l = if hat { LoopComplex::hat(&x) } else { LoopComplex::classical(&x).unwrap() };
            for k in 0..6 {
                let w = CobarWord(vec![x.lookup("s").unwrap(); k]);
                let g = LoopGenerator::new(x.lookup("s").unwrap(), w);
                let d = l.differential(&g);
                let target = LoopGenerator::new(x.lookup("v").unwrap(), CobarWord(vec![x.lookup("s").unwrap(); k + 1]));
                let expected = if k % 2 == 0 { 0 } else { -2 };
                assert_eq!(d.coefficient(&target), expected);
                assert_eq!(d.len(), if k % 2 == 0 { 0 } else { 1 });
                assert_eq!(l.necklical_differential(&g), d);
            }
            assert!(l.differential(&gen(&l, "(v ; [])")).is_zero());
        }
    }

    #[test]
    fn circle_edge_is_closed() {
        let l = LoopComplex::hat(&space("circle"));
        for s in ["(t ; [])", "(t ; [t])", "(t ; [t|t])", "(t ; [t~|t~])"] {
            assert!(l.differential(&gen(&l, s)).is_zero(), "{}", s);
        }
    }

    #[test]
    fn necklical_face_examples() {
        let l = LoopComplex::hat(&space("sphere2"));
        let g = gen(&l, "(s ; [])");
        assert_eq!(l.necklical_face(0, 1, &g).unwrap(), Some(gen(&l, "(v ; [s])")));
        // the last vertex is nondegenerate, so the rotation survives
        assert_eq!(l.necklical_face(2, 2, &g).unwrap(), Some(gen(&l, "(v ; [s])")));
        assert_eq!(l.necklical_face(1, 2, &g).unwrap(), None);
        assert!(l.necklical_face(2, 3, &g).is_err());
        assert!(l.necklical_face(0, 0, &g).is_err());
        assert!(l.necklical_face(3, 1, &g).is_err());
        let d = LoopComplex::hat(&space("simplex3_boundary"));
        let x = d.set().lookup("012").unwrap();
        let e = d.set().lookup("02").unwrap();
        let w = d.algebra().parse_word("[23|03~]").unwrap();
        let w = CobarWord(w.letters().to_vec());
        let g = LoopGenerator::new(x, w.clone());
        assert_eq!(d.necklical_face(1, 2, &g).unwrap(), Some(LoopGenerator::new(e, w)));
        assert!(d.necklical_differential(&gen(&d, "(0 ; [])")).is_zero());
    }

    #[test]
    fn theorem_agreement_and_d_squared_small() {
        for name in ["circle", "sphere2", "torus", "simplex3_boundary"] {
            let l = LoopComplex::hat(&space(name));
            for n in 0..=3 {
                let b = l.basis(n, Some(3)).unwrap();
                for g in &b {
                    assert_eq!(l.necklical_differential(g), l.differential(g), "{} {}", name, l.describe(g));
                }
                assert!(check_d_squared_on(&b, |g| l.differential(g)).is_empty(), "{} {}", name, n);
            }
        }
    }

    #[test]
    fn classical_agrees_with_hat_and_necklaces() {
        for name in ["sphere2", "sphere3", "simplex3_mod_edges", "simplex4_mod_edges"] {
            let c = LoopComplex::classical(&space(name)).unwrap();
            let h = LoopComplex::hat(&space(name));
            for n in 0..=4 {
                let b = c.basis(n, None).unwrap();
                assert_eq!(b, h.basis(n, Some(n + 1)).unwrap());
                for g in &b {
                    assert_eq!(c.differential(g), h.differential(g), "{} {}", name, c.describe(g));
                    assert_eq!(c.differential(g), c.necklical_differential(g));
                }
                assert!(check_d_squared_on(&b, |g| c.differential(g)).is_empty(), "{} {}", name, n);
            }
        }
    }

    #[test]
    fn flipped_theta2_breaks_d_squared() {
        let l = LoopComplex::hat(&space("torus")).with_theta2_sign_flipped();
        let mut bad = 0;
        for n in 0..=3 {
            let b = l.basis(n, Some(3)).unwrap();
            bad += check_d_squared_on(&b, |g| l.differential(g)).len();
        }
        assert!(bad > 0);
    }

    #[test]
    fn hochschild_examples() {
        let x = space("sphere2");
        let h = HochschildComplex::new(&x).unwrap();
        let s = CobarWord(vec![x.lookup("s").unwrap()]);
        let g = HochschildGenerator { bar: BarWord(vec![s.clone()]), word: CobarWord::empty() };
        assert!(h.differential(&g).is_zero());
        let g0 = HochschildGenerator { bar: BarWord::empty(), word: s.clone() };
        assert!(h.differential(&g0).is_zero());
        for name in ["sphere2", "sphere3", "simplex3_mod_edges"] {
            let h = HochschildComplex::new(&space(name)).unwrap();
            for n in 0..=5 {
                let b = h.basis(n).unwrap();
                assert!(check_d_squared_on(&b, |g| h.differential(g)).is_empty(), "{} {}", name, n);
            }
        }
    }

    #[test]
    fn chi_and_phi_examples() {
        let x = space("sphere2");
        let h = HochschildComplex::new(&x).unwrap();
        let c = LoopComplex::classical(&x).unwrap();
        let s = x.lookup("s").unwrap();
        let v = x.lookup("v").unwrap();
        let sw = CobarWord(vec![s]);
        let u = CobarWord(vec![s, s]);
        assert!(h.chi(&CobarWord::empty(), &u).is_zero());
        assert_eq!(h.chi(&sw, &u).coefficient(&(s, u.clone())), 1);
        let g = HochschildGenerator { bar: BarWord::empty(), word: u.clone() };
        assert_eq!(h.phi(&g).coefficient(&LoopGenerator::new(v, u.clone())), 1);
        let g = HochschildGenerator { bar: BarWord(vec![sw.clone(), sw.clone()]), word: u.clone() };
        assert!(h.phi(&g).is_zero());
        let g = HochschildGenerator { bar: BarWord(vec![sw.clone()]), word: CobarWord::empty() };
        assert_eq!(h.phi(&g).coefficient(&LoopGenerator::new(s, CobarWord::empty())), 1);
        let winners = h.chi_sweep(&c, 5).unwrap();
        assert_eq!(winners, [ChiSign::ALL[0], ChiSign::ALL[1], ChiSign::Rotation]);
        let x = space("simplex3_mod_edges");
        let h = HochschildComplex::new(&x).unwrap();
        let c = LoopComplex::classical(&x).unwrap();
        assert_eq!(h.chi_sweep(&c, 4).unwrap(), [ChiSign::Rotation]);
    }

    #[test]
    fn eta_examples() {
        let s = CobarAlgebra::classical(&space("sphere2")).unwrap();
        let sigma = s.set().lookup("s").unwrap();
        let e = eta(&s, sigma);
        assert_eq!(e.len(), 1);
        assert_eq!(e.coefficient(&BarWord(vec![CobarWord(vec![sigma])])), 1);
        let d = CobarAlgebra::hat(&space("simplex2"));
        let t = d.set().lookup("012").unwrap();
        let e = eta(&d, t);
        assert_eq!(e.len(), 2);
        let l = |n: &str| CobarWord(vec![d.set().lookup(n).unwrap()]);
        assert_eq!(e.coefficient(&BarWord(vec![l("012")])), 1);
        assert_eq!(e.coefficient(&BarWord(vec![l("01"), l("12")])), 1);
    }

    #[test]
    fn rho_after_eta_is_identity() {
        for name in ["sphere2", "sphere3", "simplex3_mod_edges", "simplex4_mod_edges"] {
            let h = HochschildComplex::new(&space(name)).unwrap();
            for &x in h.algebra().letters() {
                let back = h.eta(x).map_linear(|b| h.rho(b));
                assert_eq!(back.len(), 1);
                assert_eq!(back.coefficient(&x), 1);
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let x = space("sphere2");
        let s = x.lookup("s").unwrap();
        let one = CobarWord(vec![s]);
        let two = CobarWord(vec![s, s]);
        let h = HochschildComplex::new(&x).unwrap();
        assert!(h.contraction_s(&BarWord(vec![one.clone()])).unwrap().is_zero());
        let c = h.contraction_s(&BarWord(vec![two])).unwrap();
        assert_eq!(c.coefficient(&BarWord(vec![one.clone(), one])), 1);
        assert!(h.contraction_s(&BarWord::empty()).is_err());
        let y = space("simplex3_mod_edges");
        let h = HochschildComplex::new(&y).unwrap();
        let (t, f) = (y.lookup("0123").unwrap(), y.lookup("012").unwrap());
        let c = h.contraction_s(&BarWord(vec![CobarWord(vec![t, f])])).unwrap();
        assert_eq!(c.coefficient(&BarWord(vec![CobarWord(vec![t]), CobarWord(vec![f])])), -1);
    }

    #[test]
    fn contraction_is_locally_nilpotent() {
        for (name, top) in [("sphere2", 5), ("simplex3_mod_edges", 4)] {
            let h = HochschildComplex::new(&space(name)).unwrap();
            for n in 2..=top {
                for b in h.algebra().bar_basis(n, None).unwrap() {
                    if !h.rho(&b).is_zero() {
                        continue;
                    }
                    let c: Chain<BarWord> = [(b.clone(), 1)].into_iter().collect();
                    let m = h.nilpotency_order(&c, 6).unwrap();
                    assert!(m.is_some(), "{}: {}", name, h.algebra().describe_bar(&b));
                }
            }
        }
    }

    #[test]
    fn phi_kernel_is_acyclic() {
        let x = space("sphere2");
        let h = HochschildComplex::new(&x).unwrap();
        let c = LoopComplex::classical(&x).unwrap();
        for n in 1..=4 {
            assert_eq!(h.phi_kernel_betti(&c, n, Ring::Rationals).unwrap(), 0, "degree {}", n);
        }
    }
}
