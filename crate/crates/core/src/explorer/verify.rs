//! Cross-module verification suites. Failures are reported as data, each
//! with the word that exhibits it where there is one.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::braid::{
    alpha, annular_relations, equal_mod_gamma, h_map, verify_conj_lemma, BraidWordA, BraidWordB,
};
use crate::collections::{apply_braid, helix_class, seed_state, t_map};
use crate::error::{Error, Result};
use crate::lattice::{binomial, cohomology_dims, ProjectiveSpace};
use crate::markov::{act_psl2, descend, enumerate_tree, f_word, g_word, is_markov, neighbors, MarkovTriple};
use crate::spherical::{alpha_check, apply_b_word, from_exceptional, rotate_check, t_omega};
use crate::words::{BraidLetter, FreeEndo, FreeWord};

use super::explore_markov_bound;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Conj,
    ExactSeq,
    Equivariance,
    Descent,
    Rotate,
    Alpha,
    Mckay,
    Strange,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Conj,
        Suite::ExactSeq,
        Suite::Equivariance,
        Suite::Descent,
        Suite::Rotate,
        Suite::Alpha,
        Suite::Mckay,
        Suite::Strange,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Conj => "conj",
            Suite::ExactSeq => "exactseq",
            Suite::Equivariance => "equivariance",
            Suite::Descent => "descent",
            Suite::Rotate => "rotate",
            Suite::Alpha => "alpha",
            Suite::Mckay => "mckay",
            Suite::Strange => "strange",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone)]
pub struct VerifyParams {
    /// Largest rank for the braid-group suites.
    pub n: usize,
    /// Largest random word length.
    pub depth: usize,
    pub trials: usize,
    /// Weight bound for the Markov tree.
    pub bound: BigInt,
    /// Largest power of `ω⁻¹` in the McKay check.
    pub max_p: u32,
    pub seed: u64,
}

impl Default for VerifyParams {
    fn default() -> Self {
        VerifyParams {
            n: 8,
            depth: 10,
            trials: 200,
            bound: BigInt::from(1_000_000),
            max_p: 5,
            seed: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub word: Option<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub suite: Suite,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl Report {
    fn new(suite: Suite) -> Self {
        Report {
            suite,
            checks: 0,
            failures: vec![],
            notes: vec![],
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, check: impl Into<String>, word: Option<String>, detail: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.into(),
                word,
                detail: detail.into(),
            });
        }
    }

    fn check_result(&mut self, r: Result<bool>, check: impl Into<String>, word: Option<String>) {
        match r {
            Ok(ok) => self.check(ok, check, word, "mismatch"),
            Err(e) => self.check(false, check, word, e.to_string()),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "suite": self.suite.name(),
            "passed": self.passed(),
            "checks": self.checks,
            "failures": self.failures.iter().map(|f| json!({
                "check": f.check,
                "word": f.word,
                "detail": f.detail,
            })).collect::<Vec<_>>(),
            "notes": self.notes,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{status} {} ({} checks)", self.suite, self.checks)?;
        for n in &self.notes {
            writeln!(f, "  {n}")?;
        }
        for x in &self.failures {
            write!(f, "  failed: {}", x.check)?;
            if let Some(w) = &x.word {
                write!(f, " [word: {w}]")?;
            }
            writeln!(f, ": {}", x.detail)?;
        }
        Ok(())
    }
}

/// Uniform random word in `σ_i^{±1}` of the given length.
pub fn random_a_word<R: Rng>(rng: &mut R, n: usize, len: usize) -> BraidWordA {
    let letters = (0..len)
        .map(|_| BraidLetter::Sigma {
            index: rng.gen_range(1..n),
            inverse: rng.gen(),
        })
        .collect();
    BraidWordA::new(n, letters).expect("indices in range")
}

/// Uniform random word in `τ_i^{±1}` and, if `with_rot`, `r^{±1}`.
pub fn random_b_word<R: Rng>(rng: &mut R, n: usize, len: usize, with_rot: bool) -> BraidWordB {
    let kinds = if with_rot { n + 1 } else { n };
    let letters = (0..len)
        .map(|_| {
            let k = rng.gen_range(0..kinds);
            let inverse = rng.gen();
            if k == n {
                BraidLetter::Rot { inverse }
            } else {
                BraidLetter::Tau { index: k, inverse }
            }
        })
        .collect();
    BraidWordB::new(n, letters).expect("indices in range")
}

pub fn verify_suite(suite: Suite, p: &VerifyParams) -> Report {
    let mut r = Report::new(suite);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    match suite {
        Suite::Conj => conj(&mut r, p),
        Suite::ExactSeq => exactseq(&mut r, p),
        Suite::Equivariance => equivariance(&mut r, p, &mut rng),
        Suite::Descent => descent(&mut r, p),
        Suite::Rotate => rotate(&mut r, p, &mut rng),
        Suite::Alpha => alpha_suite(&mut r, p, &mut rng),
        Suite::Mckay => mckay(&mut r, p),
        Suite::Strange => strange(&mut r),
    }
    r
}

fn space(m: u32) -> ProjectiveSpace {
    ProjectiveSpace::new(m).expect("m >= 1")
}

fn conj(r: &mut Report, p: &VerifyParams) {
    for n in 2..=p.n.max(2) {
        r.check_result(verify_conj_lemma(n), format!("δ⁻¹σ_iδ = σ_(n-i), n = {n}"), None);
    }
}

fn exactseq(r: &mut Report, p: &VerifyParams) {
    for n in 2..=p.n.max(2) {
        for i in 0..n {
            let a = alpha(n, i).expect("i < n");
            let conj = FreeEndo::conjugation(n, &FreeWord::generator(i));
            r.check(
                a.rep() == conj,
                format!("α_{i} acts as conjugation by x_{i}, n = {n}"),
                Some(a.to_string()),
                format!("got {:?}", a.rep().images()),
            );
            let h = h_map(&a).free_reduce();
            r.check(
                h.is_empty(),
                format!("h(α_{i}) cancels freely, n = {n}"),
                Some(a.to_string()),
                format!("left with {h}"),
            );
        }
        for rel in annular_relations(n).expect("n >= 2") {
            r.check(
                rel.lhs.rep() == rel.rhs.rep(),
                format!("{} on F_{n}", rel.name),
                Some(format!("{} / {}", rel.lhs, rel.rhs)),
                "free-group images differ",
            );
            r.check(
                equal_mod_gamma(&h_map(&rel.lhs), &h_map(&rel.rhs)),
                format!("h respects {} mod γ, n = {n}", rel.name),
                Some(format!("{} / {}", rel.lhs, rel.rhs)),
                "images differ in A_n/⟨γ⟩",
            );
        }
    }
}

fn equivariance(r: &mut Report, p: &VerifyParams, rng: &mut ChaCha8Rng) {
    let seed = seed_state(space(2));
    let sph = match from_exceptional(&seed) {
        Ok(s) => s,
        Err(e) => return r.check(false, "seed spherical state", None, e.to_string()),
    };
    for _ in 0..p.trials {
        let len = rng.gen_range(0..=3);
        let base = random_a_word(rng, 3, len);
        let len = rng.gen_range(0..=p.depth);
        let w = random_a_word(rng, 3, len);
        let res = (|| -> Result<bool> {
            let a = apply_braid(&seed, &base)?;
            let lhs = t_map(&apply_braid(&a, &w)?)?;
            let rhs = act_psl2(&f_word(&w)?, &t_map(&a)?)?;
            Ok(lhs == rhs)
        })();
        r.check_result(res, "T(w·A) = f(w)·T(A)", Some(format!("{w} on {base}")));

        let len = rng.gen_range(0..=3);
        let base = random_b_word(rng, 3, len, true);
        let len = rng.gen_range(0..=p.depth);
        let w = random_b_word(rng, 3, len, true);
        let res = (|| -> Result<bool> {
            let s = apply_b_word(&sph, &base)?;
            let lhs = t_omega(&apply_b_word(&s, &w)?)?;
            let rhs = act_psl2(&g_word(&w)?, &t_omega(&s)?)?;
            Ok(lhs == rhs)
        })();
        r.check_result(res, "T_ω(w·S) = g(w)·T_ω(S)", Some(format!("{w} on {base}")));
    }
}

fn descent(r: &mut Report, p: &VerifyParams) {
    let tree = match enumerate_tree(&p.bound) {
        Ok(t) => t,
        Err(e) => return r.check(false, "enumerate tree", None, e.to_string()),
    };
    r.notes.push(format!("{} triples of weight <= {}", tree.nodes.len(), p.bound));
    let root = MarkovTriple::root();
    for t in &tree.nodes {
        let w = t.weight();
        let nb = neighbors(t);
        let down = nb.iter().filter(|(_, x)| x.weight() < w).count();
        let want = if t.is_root() { 0 } else { 1 };
        r.check(
            down == want,
            format!("{t} has {want} weight-decreasing neighbours"),
            None,
            format!("found {down}"),
        );
        r.check(
            nb.iter().all(|(_, x)| is_markov(x.a(), x.b(), x.c())),
            format!("neighbours of {t} are Markov"),
            None,
            "equation fails",
        );
        match descend(t) {
            Ok(d) => {
                let word = d.labels.iter().map(|l| l.label()).collect::<Vec<_>>().join(" · ");
                let back = act_psl2(&d.letters(), &root);
                r.check(
                    back.as_ref() == Ok(t) && d.path.last() == Some(&root),
                    format!("descent of {t} reaches and rebuilds from the root"),
                    Some(word),
                    format!("rebuilt {back:?}"),
                );
            }
            Err(e) => r.check(false, format!("descend {t}"), None, e.to_string()),
        }
    }
    match explore_markov_bound(&p.bound, None) {
        Ok(g) => {
            let mut a: Vec<&str> = g.nodes.iter().map(|n| n.key.as_str()).collect();
            let keys: Vec<String> = tree.nodes.iter().map(|t| t.key()).collect();
            let mut b: Vec<&str> = keys.iter().map(String::as_str).collect();
            a.sort_unstable();
            b.sort_unstable();
            r.check(a == b, "explorer and tree agree", None, "node sets differ");
            r.check(g.revisits == 0, "explored graph is a tree", None, format!("{} revisits", g.revisits));
        }
        Err(e) => r.check(false, "explore Markov graph", None, e.to_string()),
    }
}

fn rotate(r: &mut Report, p: &VerifyParams, rng: &mut ChaCha8Rng) {
    for m in [1, 2, 3] {
        r.check_result(rotate_check(&seed_state(space(m))), format!("rotation on seed P{m}"), None);
    }
    let seed = seed_state(space(2));
    for _ in 0..p.trials {
        let len = rng.gen_range(1..=p.depth.max(1));
        let w = random_a_word(rng, 3, len);
        let res = apply_braid(&seed, &w).and_then(|s| rotate_check(&s));
        r.check_result(res, "rotation on P2 orbit state", Some(w.to_string()));
    }
}

fn alpha_suite(r: &mut Report, p: &VerifyParams, rng: &mut ChaCha8Rng) {
    let sph = match from_exceptional(&seed_state(space(2))) {
        Ok(s) => s,
        Err(e) => return r.check(false, "seed spherical state", None, e.to_string()),
    };
    for i in 0..3 {
        r.check_result(alpha_check(&sph, i), format!("α_{i} = Φ_(S_{i}) on seed"), None);
    }
    for _ in 0..p.trials {
        let len = rng.gen_range(1..=p.depth.max(1));
        let w = random_b_word(rng, 3, len, true);
        for i in 0..3 {
            let res = apply_b_word(&sph, &w).and_then(|s| alpha_check(&s, i));
            r.check_result(res, format!("α_{i} = Φ_(S_{i})"), Some(w.to_string()));
        }
    }
}

fn mckay(r: &mut Report, p: &VerifyParams) {
    let seed = seed_state(space(2));
    let lat = seed.lattice().clone();
    for pw in 0..=p.max_p as i64 {
        for i in 0..=2i64 {
            for j in i..=2i64 {
                let d = j - i + 3 * pw;
                let h = cohomology_dims(2, d);
                let expect = binomial(&BigInt::from(d + 2), 2);
                r.check(
                    h[0] == expect && h[1..].iter().all(Zero::is_zero),
                    format!("Hom(E_{i}, E_{j} ⊗ ω^-{pw}) = C({}, 2)", d + 2),
                    None,
                    format!("cohomology {h:?}, expected {expect}"),
                );
                let chi = lat
                    .chi(&helix_class(&seed, i), &helix_class(&seed, j + 3 * pw))
                    .expect("same rank");
                r.check(
                    chi == expect,
                    format!("χ(E_{i}, E_{j} ⊗ ω^-{pw}) = C({}, 2)", d + 2),
                    None,
                    format!("got {chi}"),
                );
            }
        }
    }
}

/// `dim Hom^k(O(a)[s], O(b)[t])` on `Pᵐ`: `h^{k+t-s}(O(b-a))`.
pub fn graded_hom(m: u32, a: i64, s: i64, b: i64, t: i64, k: i64) -> BigInt {
    let q = k + t - s;
    if q < 0 || q > m as i64 {
        return BigInt::zero();
    }
    cohomology_dims(m, b - a)[q as usize].clone()
}

fn strange(r: &mut Report) {
    // O[-1] and O(-1)[1] on P¹
    for k in -4..=6 {
        let fwd = graded_hom(1, 0, -1, -1, 1, k);
        r.check(
            fwd.is_zero(),
            format!("Hom^{k}(O[-1], O(-1)[1]) = 0"),
            None,
            format!("got {fwd}"),
        );
        let back = graded_hom(1, -1, 1, 0, -1, k);
        let want = BigInt::from(if k == 2 { 2 } else { 0 });
        r.check(
            back == want,
            format!("Hom^{k}(O(-1)[1], O[-1]) = {want}"),
            None,
            format!("got {back}"),
        );
    }
    let seed = seed_state(space(1));
    let lat = seed.lattice();
    let o = helix_class(&seed, 0);
    let om1 = helix_class(&seed, -1);
    let chi_fwd = lat.chi(&(-o.clone()), &(-om1.clone())).expect("rank");
    let chi_back = lat.chi(&(-om1), &(-o)).expect("rank");
    r.check(chi_fwd.is_zero(), "χ(O[-1], O(-1)[1]) = 0", None, format!("got {chi_fwd}"));
    r.check(
        chi_back == BigInt::from(2),
        "χ(O(-1)[1], O[-1]) = 2",
        None,
        format!("got {chi_back}"),
    );
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick() -> VerifyParams {
        VerifyParams {
            n: 5,
            depth: 6,
            trials: 20,
            bound: BigInt::from(100_000),
            max_p: 3,
            seed: 7,
        }
    }

    #[test]
    fn all_suites_pass() {
        for s in Suite::ALL {
            let rep = verify_suite(s, &quick());
            assert!(rep.passed(), "{rep}");
            assert!(rep.checks > 0);
        }
    }

    #[test]
    fn suite_names() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn graded_hom_examples() {
        assert_eq!(graded_hom(1, -1, 1, 0, -1, 2), BigInt::from(2));
        assert_eq!(graded_hom(2, 0, 0, 1, 0, 0), BigInt::from(3));
        assert_eq!(graded_hom(2, 0, 0, -3, 0, 2), BigInt::from(1));
    }

    #[test]
    fn failure_report_carries_word() {
        let mut r = Report::new(Suite::Conj);
        r.check(false, "x", Some("s1 s2".into()), "bad");
        assert!(!r.passed());
        assert!(r.to_string().contains("[word: s1 s2]"));
        assert_eq!(r.to_json()["failures"][0]["word"], "s1 s2");
    }
}
