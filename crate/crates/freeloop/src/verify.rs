//! The verification report: a fixed sequence of checks on one space.

use std::collections::BTreeMap;

use freeloop_core::cobar::BarWord;
use freeloop_core::complexes::{Complex, ComplexKind};
use freeloop_core::homalg::{Chain, HomologySummary, Ring};
use freeloop_core::loopcomplex::{ChiSign, HochschildComplex, LoopComplex};
use freeloop_core::simplicial::{adjoin_inverses, SimplicialSet};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub max_word_length: Option<usize>,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { max_degree: 4, max_word_length: None, samples: 50, seed: 0x5eed_1005 }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub space: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verify {}\n", self.space);
        for c in &self.checks {
            out.push_str(&format!("{} {}: {}\n", c.status.label(), c.name, c.detail));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }

    pub fn to_json(&self) -> String {
        let checks: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({ "name": c.name, "status": c.status.label(), "detail": c.detail }))
            .collect();
        let v = json!({ "space": self.space, "passed": self.passed(), "checks": checks });
        serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
    }
}

struct Builder {
    checks: Vec<Check>,
}

impl Builder {
    fn push(&mut self, name: impl Into<String>, status: Status, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), status, detail: detail.into() });
    }

    fn outcome(&mut self, name: impl Into<String>, failures: Vec<String>, ok: impl Into<String>) {
        match failures.first() {
            None => self.push(name, Status::Pass, ok),
            Some(first) => {
                let detail = format!("{} counterexample(s), first: {}", failures.len(), first);
                self.push(name, Status::Fail, detail)
            }
        }
    }
}

fn cap_for(c: &Complex, cfg: &VerifyConfig) -> Option<Option<usize>> {
    match (c.needs_truncation(), cfg.max_word_length) {
        (false, _) => Some(None),
        (true, Some(l)) => Some(Some(l)),
        (true, None) => None,
    }
}

fn window_note(cap: Option<usize>) -> String {
    match cap {
        Some(l) => format!(", truncated at word length {}", l),
        None => String::new(),
    }
}

pub fn verify(x: &SimplicialSet, cfg: &VerifyConfig) -> VerifyReport {
    let mut b = Builder { checks: Vec::new() };
    let n = cfg.max_degree;

    let mut violations: Vec<String> = x.validate().iter().map(|v| v.to_string()).collect();
    violations.extend(adjoin_inverses(x).set().validate().iter().map(|v| format!("in Z(X): {}", v)));
    let well_formed = violations.is_empty();
    b.outcome("simplicial identities", violations, format!("{} simplices", x.len()));
    if !well_formed {
        return VerifyReport { space: x.name().to_string(), checks: b.checks };
    }

    // d² = 0 for every complex that applies
    let mut complexes: Vec<(Complex, Option<usize>)> = Vec::new();
    for kind in ComplexKind::ALL {
        let name = format!("d^2 = 0 [{}]", kind);
        let c = match Complex::new(x, kind) {
            Ok(c) => c,
            Err(e) => {
                b.push(name, Status::Skipped, e.to_string());
                continue;
            }
        };
        let Some(cap) = cap_for(&c, cfg) else {
            b.push(name, Status::Skipped, "needs a word-length cap");
            continue;
        };
        match c.d_squared_violations(n, cap) {
            Ok(bad) => {
                let bad = bad.into_iter().map(|(k, g)| format!("degree {} {}", k, g)).collect();
                b.outcome(name, bad, format!("degrees 0..{}{}", n, window_note(cap)));
            }
            Err(e) => b.push(name, Status::Fail, e.to_string()),
        }
        complexes.push((c, cap));
    }

    let hat = LoopComplex::hat(x);
    let hat_cap = if hat.algebra().needs_truncation() { cfg.max_word_length } else { None };
    let hat_gens = |deg: usize| hat.basis(deg, hat_cap);
    if hat.algebra().needs_truncation() && hat_cap.is_none() {
        b.push("d^2 = 0 [necklical]", Status::Skipped, "needs a word-length cap");
        b.push("necklical faces give the coHochschild differential", Status::Skipped, "needs a word-length cap");
    } else {
        let mut bad_sq = Vec::new();
        let mut bad_eq = Vec::new();
        for k in 0..=n {
            for g in hat_gens(k).expect("capped basis") {
                let nd = hat.necklical_differential(&g);
                if !nd.map_linear(|h| hat.necklical_differential(h)).is_zero() {
                    bad_sq.push(hat.describe(&g));
                }
                if nd != hat.differential(&g) {
                    bad_eq.push(hat.describe(&g));
                }
            }
        }
        let note = format!("degrees 0..{}{}", n, window_note(hat_cap));
        b.outcome("d^2 = 0 [necklical]", bad_sq, note.clone());
        b.outcome("necklical faces give the coHochschild differential", bad_eq, note);
    }

    if !x.is_one_reduced() {
        let why = "the space is not 1-reduced";
        for name in [
            "classical and hat coHochschild complexes coincide",
            "chi sign sweep",
            "phi is a chain map",
            "kernel of phi is acyclic",
            "Hochschild and coHochschild Betti numbers agree",
            "contraction nilpotency",
        ] {
            b.push(name, Status::Skipped, why);
        }
    } else {
        one_reduced_checks(&mut b, x, cfg);
    }

    universal_coefficients(&mut b, &complexes, n);
    VerifyReport { space: x.name().to_string(), checks: b.checks }
}

fn one_reduced_checks(b: &mut Builder, x: &SimplicialSet, cfg: &VerifyConfig) {
    let n = cfg.max_degree;
    let classical = LoopComplex::classical(x).expect("1-reduced");
    let hat = LoopComplex::hat(x);
    let mut bad = Vec::new();
    for k in 0..=n {
        let gens = classical.basis(k, None).expect("finite basis");
        if gens != hat.basis(k, None).expect("finite basis") {
            bad.push(format!("bases differ in degree {}", k));
        }
        for g in gens {
            if classical.differential(&g) != hat.differential(&g) {
                bad.push(classical.describe(&g));
            }
        }
    }
    b.outcome("classical and hat coHochschild complexes coincide", bad, format!("degrees 0..{}", n));

    let h = HochschildComplex::new(x).expect("1-reduced");
    let selected = h.chi_sign();
    match h.chi_sweep(&classical, n) {
        Ok(winners) => {
            let parts: Vec<String> = ChiSign::ALL
                .iter()
                .map(|s| format!("[{}] {}", if winners.contains(s) { "pass" } else { "fail" }, s))
                .collect();
            let detail = format!("selected {}; candidates: {}", selected, parts.join("; "));
            let status = if winners.contains(&selected) { Status::Pass } else { Status::Fail };
            b.push("chi sign sweep", status, detail);
        }
        Err(e) => b.push("chi sign sweep", Status::Fail, e.to_string()),
    }

    let mut bad = Vec::new();
    for k in 0..=n {
        for g in h.basis(k).expect("finite basis") {
            if !h.phi_defect(&classical, &g).is_zero() {
                bad.push(h.describe(&g));
            }
        }
    }
    b.outcome("phi is a chain map", bad, format!("every generator of degree 0..{}", n));

    let mut bad = Vec::new();
    for k in 1..n {
        match h.phi_kernel_betti(&classical, k, Ring::Rationals) {
            Ok(0) => {}
            Ok(r) => bad.push(format!("degree {} has rank {}", k, r)),
            Err(e) => bad.push(e.to_string()),
        }
    }
    b.outcome("kernel of phi is acyclic", bad, format!("rational homology zero in degrees 1..{}", n.saturating_sub(1)));

    let hoch = Complex::new(x, ComplexKind::HochschildOfCobar).expect("1-reduced");
    let cohoch = Complex::new(x, ComplexKind::Cohoch).expect("1-reduced");
    let mut bad = Vec::new();
    let mut table = Vec::new();
    for ring in [Ring::Rationals, Ring::PrimeField(2)] {
        let a = hoch.homology(n, ring, None).expect("finite complex");
        let c = cohoch.homology(n, ring, None).expect("finite complex");
        let ra: Vec<usize> = a.groups.iter().map(|g| g.free_rank).collect();
        let rc: Vec<usize> = c.groups.iter().map(|g| g.free_rank).collect();
        if ra != rc {
            bad.push(format!("over {}: {:?} vs {:?}", ring, ra, rc));
        }
        table.push(format!("{} {:?}", ring, rc));
    }
    b.outcome("Hochschild and coHochschild Betti numbers agree", bad, table.join(", "));

    nilpotency(b, &h, cfg);
}

fn nilpotency(b: &mut Builder, h: &HochschildComplex, cfg: &VerifyConfig) {
    let top = cfg.max_degree.min(5);
    let alg = h.algebra();
    let mut pools: Vec<(usize, Vec<BarWord>)> = Vec::new();
    for d in 1..=top {
        let words: Vec<BarWord> = alg
            .bar_basis(d, None)
            .expect("finite bar basis")
            .into_iter()
            .filter(|w| !w.is_empty() && h.rho(w).is_zero())
            .collect();
        if !words.is_empty() {
            pools.push((d, words));
        }
    }
    if pools.is_empty() {
        b.push("contraction nilpotency", Status::Pass, format!("kernel of rho is zero in degrees 1..{}", top));
        return;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    for _ in 0..cfg.samples {
        let (d, pool) = &pools[rng.gen_range(0..pools.len())];
        let mut sample: Chain<BarWord> = Chain::zero(Ring::Integers);
        for _ in 0..rng.gen_range(1..=3) {
            let w = &pool[rng.gen_range(0..pool.len())];
            let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
            sample.add_term(w.clone(), c);
        }
        if sample.is_zero() {
            sample.add_term(pool[0].clone(), 1);
        }
        match h.nilpotency_order(&sample, 6) {
            Ok(Some(m)) => *orders.entry(m).or_insert(0) += 1,
            Ok(None) => bad.push(format!("degree {} sample {}", d, describe_chain(h, &sample))),
            Err(e) => bad.push(e.to_string()),
        }
    }
    let hist: Vec<String> = orders.iter().map(|(m, c)| format!("m={}: {}", m, c)).collect();
    b.outcome(
        "contraction nilpotency",
        bad,
        format!("{} samples of degree <= {} (seed {:#x}); {}", cfg.samples, top, cfg.seed, hist.join(", ")),
    );
}

fn describe_chain(h: &HochschildComplex, c: &Chain<BarWord>) -> String {
    let terms: Vec<String> = c.iter().map(|(w, v)| format!("{}*{}", v, h.algebra().describe_bar(w))).collect();
    terms.join(" + ")
}

/// `dim H_n(C; F_p) = rank H_n + t_p(H_n) + t_p(H_{n-1})` and the rational rank
/// equals the free rank.
fn universal_coefficients(b: &mut Builder, complexes: &[(Complex, Option<usize>)], n: usize) {
    let mut bad = Vec::new();
    let mut names = Vec::new();
    for (c, cap) in complexes {
        let z = match c.homology(n, Ring::Integers, *cap) {
            Ok(h) => h,
            Err(e) => {
                bad.push(format!("{}: {}", c.kind(), e));
                continue;
            }
        };
        names.push(c.kind().to_string());
        let q = c.homology(n, Ring::Rationals, *cap).expect("same window");
        for k in 0..=n {
            if q.groups[k].free_rank != z.groups[k].free_rank {
                bad.push(format!("{} degree {}: rational rank {} vs free rank {}", c.kind(), k, q.groups[k].free_rank, z.groups[k].free_rank));
            }
        }
        for p in [2u64, 3] {
            let fp = c.homology(n, Ring::PrimeField(p), *cap).expect("same window");
            for k in 0..=n {
                let expected = z.groups[k].free_rank + torsion_count(&z, k as i64, p) + torsion_count(&z, k as i64 - 1, p);
                if fp.groups[k].free_rank != expected {
                    bad.push(format!("{} degree {} over F{}: {} vs {}", c.kind(), k, p, fp.groups[k].free_rank, expected));
                }
            }
        }
    }
    b.outcome("universal coefficients", bad, format!("Z, Q, F2, F3 in degrees 0..{} for {}", n, names.join(", ")));
}

fn torsion_count(h: &HomologySummary, degree: i64, p: u64) -> usize {
    let p = BigInt::from(p);
    h.get(degree).map_or(0, |g| g.torsion.iter().filter(|t| (*t % &p) == BigInt::from(0)).count())
}
