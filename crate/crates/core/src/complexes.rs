//! Uniform access to every complex attached to a simplicial set: bases,
//! differentials, homology in a range of degrees and `d² = 0` checks.
//!
//! Complexes of spaces with nondegenerate edges are degreewise infinite. They
//! are cut by the weight `word length + degree`, which the differentials never
//! raise: `H_n` at cap `L` is the homology of the subcomplex of weight `≤ n + L`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::cobar::{CobarAlgebra, CobarWord};
use crate::error::{Error, Result};
use crate::homalg::{check_d_squared_on, homology_of_slice, Chain, ComplexSlice, HomologyGroup, HomologySummary, Ring};
use crate::loopcomplex::{HochschildComplex, HochschildGenerator, LoopComplex, LoopGenerator};
use crate::simplicial::{SimplexId, SimplicialSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexKind {
    Chains,
    Cobar,
    HatCobar,
    Cohoch,
    HatCohoch,
    HochschildOfCobar,
}

impl ComplexKind {
    pub const ALL: [ComplexKind; 6] = [
        ComplexKind::Chains,
        ComplexKind::Cobar,
        ComplexKind::HatCobar,
        ComplexKind::Cohoch,
        ComplexKind::HatCohoch,
        ComplexKind::HochschildOfCobar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ComplexKind::Chains => "chains",
            ComplexKind::Cobar => "cobar",
            ComplexKind::HatCobar => "hat-cobar",
            ComplexKind::Cohoch => "cohoch",
            ComplexKind::HatCohoch => "hat-cohoch",
            ComplexKind::HochschildOfCobar => "hochschild-of-cobar",
        }
    }

    pub fn is_hat(self) -> bool {
        matches!(self, ComplexKind::HatCobar | ComplexKind::HatCohoch)
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComplexKind::ALL
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Malformed(format!("unknown complex {:?}", s)))
    }
}

impl core::fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

enum Inner {
    Chains(SimplicialSet),
    Cobar(CobarAlgebra),
    Loop(LoopComplex),
    Hochschild(HochschildComplex),
}

/// One of the complexes of a fixed simplicial set.
pub struct Complex {
    kind: ComplexKind,
    inner: Inner,
}

/// A generator of any of the complexes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Generator {
    Simplex(SimplexId),
    Word(CobarWord),
    Loop(LoopGenerator),
    Hochschild(HochschildGenerator),
}

impl Complex {
    /// Fails when a classical complex is requested for a space that is not 1-reduced.
    pub fn new(x: &SimplicialSet, kind: ComplexKind) -> Result<Self> {
        let inner = match kind {
            ComplexKind::Chains => Inner::Chains(x.clone()),
            ComplexKind::Cobar => Inner::Cobar(CobarAlgebra::classical(x)?),
            ComplexKind::HatCobar => Inner::Cobar(CobarAlgebra::hat(x)),
            ComplexKind::Cohoch => Inner::Loop(LoopComplex::classical(x)?),
            ComplexKind::HatCohoch => Inner::Loop(LoopComplex::hat(x)),
            ComplexKind::HochschildOfCobar => Inner::Hochschild(HochschildComplex::new(x)?),
        };
        Ok(Complex { kind, inner })
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    /// Whether bases are infinite without a word-length cap.
    pub fn needs_truncation(&self) -> bool {
        match &self.inner {
            Inner::Chains(_) => false,
            Inner::Cobar(a) => a.needs_truncation(),
            Inner::Loop(l) => l.algebra().needs_truncation(),
            Inner::Hochschild(h) => h.algebra().needs_truncation(),
        }
    }

    fn cap(&self, max_len: Option<usize>) -> Result<Option<usize>> {
        if !self.needs_truncation() {
            return Ok(None);
        }
        match max_len {
            Some(l) if l >= 1 => Ok(Some(l)),
            _ => Err(Error::Precondition(format!(
                "{} of a space with nondegenerate 1-simplices needs a word-length cap >= 1",
                self.kind
            ))),
        }
    }

    /// Degree-`n` generators; words are limited to `max_len` letters when a
    /// cap applies. A negative degree has an empty basis.
    pub fn basis(&self, n: i64, max_len: Option<usize>) -> Result<Vec<Generator>> {
        let cap = self.cap(max_len)?;
        self.basis_capped(n, cap)
    }

    fn basis_capped(&self, n: i64, cap: Option<usize>) -> Result<Vec<Generator>> {
        if n < 0 {
            return Ok(Vec::new());
        }
        let n = n as usize;
        Ok(match &self.inner {
            Inner::Chains(x) => x.simplices_of_dim(n).iter().map(|&s| Generator::Simplex(s)).collect(),
            Inner::Cobar(a) => a.basis(n, cap)?.into_iter().map(Generator::Word).collect(),
            Inner::Loop(l) => l.basis(n, cap)?.into_iter().map(Generator::Loop).collect(),
            Inner::Hochschild(h) => h.basis(n)?.into_iter().map(Generator::Hochschild).collect(),
        })
    }

    pub fn differential(&self, g: &Generator) -> Chain<Generator> {
        match (&self.inner, g) {
            (Inner::Chains(x), Generator::Simplex(s)) => {
                x.boundary(*s, Ring::Integers).map_linear(|&t| single(Generator::Simplex(t)))
            }
            (Inner::Cobar(a), Generator::Word(w)) => a.differential(w).map_linear(|w| single(Generator::Word(w.clone()))),
            (Inner::Loop(l), Generator::Loop(x)) => {
                l.differential(x).map_linear(|x| single(Generator::Loop(x.clone())))
            }
            (Inner::Hochschild(h), Generator::Hochschild(x)) => {
                h.differential(x).map_linear(|x| single(Generator::Hochschild(x.clone())))
            }
            _ => panic!("generator does not belong to the {} complex", self.kind),
        }
    }

    pub fn describe(&self, g: &Generator) -> String {
        match (&self.inner, g) {
            (Inner::Chains(x), Generator::Simplex(s)) => String::from(x.simplex_name(*s)),
            (Inner::Cobar(a), Generator::Word(w)) => a.describe(w),
            (Inner::Loop(l), Generator::Loop(x)) => l.describe(x),
            (Inner::Hochschild(h), Generator::Hochschild(x)) => h.describe(x),
            _ => format!("{:?}", g),
        }
    }

    /// The three bases around degree `n` and the differentials between them.
    pub fn window(&self, n: i64, max_len: Option<usize>) -> Result<ComplexSlice<Generator>> {
        let cap = self.cap(max_len)?;
        let mut bases = BTreeMap::new();
        for k in [n - 1, n, n + 1] {
            let limit = cap.map(|l| (l as i64 + n - k).max(0) as usize);
            bases.insert(k, self.basis_capped(k, limit)?);
        }
        ComplexSlice::build(bases, |g| self.differential(g))
    }

    pub fn homology_group(&self, n: i64, ring: Ring, max_len: Option<usize>) -> Result<HomologyGroup> {
        homology_of_slice(&self.window(n, max_len)?, n, ring)
    }

    pub fn homology(&self, max_degree: usize, ring: Ring, max_len: Option<usize>) -> Result<HomologySummary> {
        let mut groups = Vec::new();
        for n in 0..=max_degree as i64 {
            groups.push(self.homology_group(n, ring, max_len)?);
        }
        Ok(HomologySummary { groups })
    }

    /// Generators of degree `≤ max_degree` on which `d ∘ d` is nonzero.
    pub fn d_squared_violations(&self, max_degree: usize, max_len: Option<usize>) -> Result<Vec<(usize, String)>> {
        let mut out = Vec::new();
        for n in 0..=max_degree {
            let gens = self.basis(n as i64, max_len)?;
            for g in check_d_squared_on(&gens, |g| self.differential(g)) {
                out.push((n, self.describe(&g)));
            }
        }
        Ok(out)
    }
}

fn single(g: Generator) -> Chain<Generator> {
    let mut c = Chain::zero(Ring::Integers);
    c.add_term(g, 1);
    c
}
