mod common;

use std::collections::{BTreeMap, BTreeSet};

use freeloop_core::cobar::{reduce_word, CobarWord};
use freeloop_core::homalg::{homology_of_slice, smith_normal_form, Chain, ComplexSlice, Ring, SparseMatrix};
use freeloop_core::simplicial::{adjoin_inverses, builtin, canonical_degeneracy, FormalSimplex, SimplexId, BUILTIN_NAMES};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

/// A degeneracy word valid on a `base_dim`-simplex: `s_j` applied to a
/// `d`-simplex needs `j ≤ d`. Letters are listed leftmost-last.
fn degeneracy_word(raw: &[u32], base_dim: usize) -> Vec<u32> {
    let mut dim = base_dim as u32;
    let mut applied = Vec::new();
    for r in raw {
        applied.push(r % (dim + 1));
        dim += 1;
    }
    applied.reverse();
    applied
}

fn apply(word: &[u32], base_dim: usize, x: SimplexId) -> FormalSimplex {
    canonical_degeneracy(word, x, base_dim).unwrap()
}

proptest! {
    #[test]
    fn canonical_form_is_idempotent(space in 0..BUILTIN_NAMES.len(), pick in 0usize..64,
                                    raw in prop::collection::vec(0u32..6, 0..5)) {
        let x = builtin(BUILTIN_NAMES[space]).unwrap();
        let ids: Vec<SimplexId> = x.ids().collect();
        let base = ids[pick % ids.len()];
        let d = x.dim(base);
        let s = apply(&degeneracy_word(&raw, d), d, base);
        prop_assert!(s.degeneracies().windows(2).all(|w| w[0] > w[1]));
        prop_assert_eq!(x.formal_dim(&s), d + raw.len());
        prop_assert_eq!(apply(s.degeneracies(), d, base), s);
    }

    #[test]
    fn faces_commute(space in 0..BUILTIN_NAMES.len(), pick in 0usize..64, raw in prop::collection::vec(0u32..6, 0..3)) {
        let x = builtin(BUILTIN_NAMES[space]).unwrap();
        let ids: Vec<SimplexId> = x.ids().collect();
        let base = ids[pick % ids.len()];
        let s = apply(&degeneracy_word(&raw, x.dim(base)), x.dim(base), base);
        let n = x.formal_dim(&s);
        if n >= 2 {
            for j in 0..=n {
                for i in 0..j {
                    let lhs = x.face_of(&x.face_of(&s, j), i);
                    let rhs = x.face_of(&x.face_of(&s, i), j - 1);
                    prop_assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn free_reduction_is_confluent(space in prop::sample::select(vec!["circle", "torus", "simplex3_boundary"]),
                                   picks in prop::collection::vec(0usize..64, 0..=6)) {
        let x = builtin(space).unwrap();
        let ext = adjoin_inverses(&x);
        let edges: Vec<SimplexId> = ext.set().simplices_of_dim(1).to_vec();
        let w: Vec<SimplexId> = picks.iter().map(|&k| edges[k % edges.len()]).collect();
        let mut normal_forms = BTreeSet::new();
        let mut stack = vec![w.clone()];
        let mut seen = BTreeSet::new();
        while let Some(cur) = stack.pop() {
            if !seen.insert(cur.clone()) {
                continue;
            }
            let mut reducible = false;
            for k in 0..cur.len().saturating_sub(1) {
                if ext.op(cur[k]) == Some(cur[k + 1]) {
                    reducible = true;
                    let mut next = cur.clone();
                    next.drain(k..k + 2);
                    stack.push(next);
                }
            }
            if !reducible {
                normal_forms.insert(cur);
            }
        }
        prop_assert_eq!(normal_forms.len(), 1);
        let expected = normal_forms.into_iter().next().unwrap();
        prop_assert_eq!(reduce_word(&CobarWord(w), &ext).0, expected);
    }

    #[test]
    fn smith_form_divides_and_matches_minors(rows in 1usize..=4, cols in 1usize..=4,
                                             entries in prop::collection::vec(-6i64..=6, 16)) {
        let m: Vec<Vec<i64>> = (0..rows).map(|i| (0..cols).map(|j| entries[i * 4 + j]).collect()).collect();
        let f = smith_normal_form(&SparseMatrix::from_dense(&m)).factors;
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
        prop_assert!(f.iter().all(|x| x.is_positive()));
        let mut prod = BigInt::from(1);
        for k in 1..=rows.min(cols) {
            let g = minors_gcd(&m, k);
            if k <= f.len() {
                prod *= &f[k - 1];
                prop_assert_eq!(BigInt::from(g), prod.clone());
            } else {
                prop_assert_eq!(g, 0);
            }
        }
        let oracle: Vec<BigInt> = common::invariant_factors(&m).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(f, oracle);
    }

    #[test]
    fn homology_ignores_basis_order(seed in any::<u64>(), space in prop::sample::select(vec!["sphere2", "torus", "simplex3_boundary", "simplex2"])) {
        let x = builtin(space).unwrap();
        let mut bases = BTreeMap::new();
        for n in 0..=(x.max_dim() as i64 + 1) {
            let mut b: Vec<SimplexId> = x.simplices_of_dim(n as usize).to_vec();
            let mut s = seed.wrapping_add(n as u64);
            for i in (1..b.len()).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                b.swap(i, (s >> 33) as usize % (i + 1));
            }
            bases.insert(n, b);
        }
        let mut sorted = bases.clone();
        for b in sorted.values_mut() {
            b.sort();
        }
        let d = |s: &SimplexId| x.boundary(*s, Ring::Integers);
        let a = ComplexSlice::build(bases, d).unwrap();
        let b = ComplexSlice::build(sorted, d).unwrap();
        for n in 0..=x.max_dim() as i64 {
            prop_assert_eq!(homology_of_slice(&a, n, Ring::Integers).unwrap(), homology_of_slice(&b, n, Ring::Integers).unwrap());
        }
    }
}

fn minors_gcd(m: &[Vec<i64>], k: usize) -> i64 {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|b| b.count_ones() as usize == k).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
    }
    fn det(a: Vec<Vec<i64>>) -> i64 {
        if a.len() == 1 {
            return a[0][0];
        }
        (0..a.len())
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det(minor)
            })
            .sum()
    }
    let mut g = 0i64;
    for r in subsets(m.len(), k) {
        for c in subsets(m[0].len(), k) {
            let sub: Vec<Vec<i64>> = r.iter().map(|&i| c.iter().map(|&j| m[i][j]).collect()).collect();
            g = num_integer::gcd(g, det(sub));
        }
    }
    g
}

#[test]
fn builtins_satisfy_the_simplicial_identities() {
    for name in BUILTIN_NAMES {
        let x = builtin(name).unwrap();
        assert!(x.validate().is_empty(), "{}", name);
        let ext = adjoin_inverses(&x);
        assert!(ext.set().validate().is_empty(), "{}", name);
    }
}

#[test]
fn diagonal_is_coassociative() {
    for name in BUILTIN_NAMES {
        let x = builtin(name).unwrap();
        for s in x.ids() {
            let delta = x.aw_coproduct(s, false);
            let mut left: Chain<(SimplexId, SimplexId, SimplexId)> = Chain::zero(Ring::Integers);
            let mut right = Chain::zero(Ring::Integers);
            for (&(a, b), c) in delta.iter() {
                for (&(a1, a2), c2) in x.aw_coproduct(a, false).iter() {
                    left.add_term((a1, a2, b), c * c2);
                }
                for (&(b1, b2), c2) in x.aw_coproduct(b, false).iter() {
                    right.add_term((a, b1, b2), c * c2);
                }
            }
            assert_eq!(left, right, "{} {}", name, x.simplex_name(s));
        }
    }
}
