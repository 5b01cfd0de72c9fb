//! Markov triples `a² + b² + c² = abc`, the action of `PSL(2,Z)` on them,
//! descent to `(3,3,3)`, and the homomorphisms `f: A_3 → PSL(2,Z)` and
//! `g: B_3 → PSL(2,Z)`.
//!
//! Words act on the left: `g₁g₂` applies `g₂` first. On triples,
//! `w(a,b,c) = (c,a,b)` and `v(a,b,c) = (b,a,ab-c)`, so for example
//! `w⁻¹vw(a,b,c) = w⁻¹v(c,a,b) = w⁻¹(a,c,ac-b) = (c,ac-b,a)`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::Value;

use crate::braid::{BraidWordA, BraidWordB};
use crate::error::{Error, Result};
use crate::serial::{big_from_json, big_to_json};
use crate::words::BraidLetter;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkovTriple {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

pub fn is_markov(a: &BigInt, b: &BigInt, c: &BigInt) -> bool {
    a.is_positive()
        && b.is_positive()
        && c.is_positive()
        && a * a + b * b + c * c == a * b * c
}

/// Validated triple.
pub fn make_triple(a: BigInt, b: BigInt, c: BigInt) -> Result<MarkovTriple> {
    if !is_markov(&a, &b, &c) {
        return Err(Error::NotMarkov(a.to_string(), b.to_string(), c.to_string()));
    }
    Ok(MarkovTriple { a, b, c })
}

impl MarkovTriple {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>) -> Result<Self> {
        make_triple(a.into(), b.into(), c.into())
    }

    pub fn root() -> Self {
        let three = BigInt::from(3);
        MarkovTriple {
            a: three.clone(),
            b: three.clone(),
            c: three,
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn entries(&self) -> [&BigInt; 3] {
        [&self.a, &self.b, &self.c]
    }

    pub fn weight(&self) -> BigInt {
        &self.a * &self.b * &self.c
    }

    pub fn is_root(&self) -> bool {
        *self == Self::root()
    }

    pub fn key(&self) -> String {
        format!("{},{},{}", self.a, self.b, self.c)
    }

    fn unchecked(a: BigInt, b: BigInt, c: BigInt) -> Self {
        MarkovTriple { a, b, c }
    }

    fn rot(&self) -> Self {
        Self::unchecked(self.c.clone(), self.a.clone(), self.b.clone())
    }

    fn rot_inv(&self) -> Self {
        Self::unchecked(self.b.clone(), self.c.clone(), self.a.clone())
    }

    fn flip(&self) -> Self {
        let c = &self.a * &self.b - &self.c;
        Self::unchecked(self.b.clone(), self.a.clone(), c)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(self.entries().into_iter().map(big_to_json).collect())
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.as_array().map(|a| a.as_slice()) {
            Some([a, b, c]) => make_triple(big_from_json(a)?, big_from_json(b)?, big_from_json(c)?),
            _ => Err(Error::Parse(format!("expected a 3-element array, got {v}"))),
        }
    }
}

impl fmt::Display for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

impl fmt::Debug for MarkovTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The three involutions generating `Γ³`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Involution {
    /// `v`: `(b, a, ab - c)`
    V,
    /// `w⁻¹vw`: `(c, ac - b, a)`
    WinvVW,
    /// `wvw⁻¹`: `(bc - a, c, b)`
    WVWinv,
}

impl Involution {
    pub const ALL: [Involution; 3] = [Involution::V, Involution::WinvVW, Involution::WVWinv];

    pub fn label(self) -> &'static str {
        match self {
            Involution::V => "v",
            Involution::WinvVW => "w^-1 v w",
            Involution::WVWinv => "w v w^-1",
        }
    }

    pub fn letters(self) -> Vec<PslLetter> {
        use PslLetter::*;
        match self {
            Involution::V => vec![V],
            Involution::WinvVW => vec![Winv, V, W],
            Involution::WVWinv => vec![W, V, Winv],
        }
    }

    pub fn apply(self, t: &MarkovTriple) -> MarkovTriple {
        let (a, b, c) = (&t.a, &t.b, &t.c);
        match self {
            Involution::V => MarkovTriple::unchecked(b.clone(), a.clone(), a * b - c),
            Involution::WinvVW => MarkovTriple::unchecked(c.clone(), a * c - b, a.clone()),
            Involution::WVWinv => MarkovTriple::unchecked(b * c - a, c.clone(), b.clone()),
        }
    }
}

impl fmt::Display for Involution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Neighbours in the fixed label order `v, w⁻¹vw, wvw⁻¹`.
pub fn neighbors(t: &MarkovTriple) -> [(Involution, MarkovTriple); 3] {
    Involution::ALL.map(|g| (g, g.apply(t)))
}

/// Descent path from `t` down to `(3,3,3)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descent {
    /// Starts at `t`, ends at `(3,3,3)`.
    pub path: Vec<MarkovTriple>,
    /// `labels[k]` maps `path[k]` to `path[k+1]`, and
    /// `t = labels[0] ⋯ labels[last] · (3,3,3)`.
    pub labels: Vec<Involution>,
}

impl Descent {
    pub fn letters(&self) -> Vec<PslLetter> {
        self.labels.iter().flat_map(|l| l.letters()).collect()
    }
}

/// Follows the unique weight-decreasing neighbour down to the root.
/// Fails if some step has zero or several decreasing neighbours.
pub fn descend(t: &MarkovTriple) -> Result<Descent> {
    let mut path = vec![t.clone()];
    let mut labels = Vec::new();
    let mut cur = t.clone();
    while !cur.is_root() {
        let w = cur.weight();
        let mut down = neighbors(&cur)
            .into_iter()
            .filter(|(_, n)| n.weight() < w);
        let (g, next) = match (down.next(), down.next()) {
            (Some(d), None) => d,
            (None, _) => {
                return Err(Error::Invariant(format!(
                    "{cur} has no weight-decreasing neighbour"
                )))
            }
            (Some(_), Some(_)) => {
                return Err(Error::Invariant(format!(
                    "{cur} has more than one weight-decreasing neighbour"
                )))
            }
        };
        if !is_markov(&next.a, &next.b, &next.c) {
            return Err(Error::NotMarkov(
                next.a.to_string(),
                next.b.to_string(),
                next.c.to_string(),
            ));
        }
        labels.push(g);
        path.push(next.clone());
        cur = next;
    }
    Ok(Descent { path, labels })
}

/// The Markov tree truncated at a weight bound.
#[derive(Debug, Clone)]
pub struct MarkovTree {
    /// Breadth-first order, root first, children in label order.
    pub nodes: Vec<MarkovTriple>,
    /// `(parent index, child index, label)`.
    pub edges: Vec<(usize, usize, Involution)>,
}

impl MarkovTree {
    pub fn node_set(&self) -> HashSet<MarkovTriple> {
        self.nodes.iter().cloned().collect()
    }
}

/// All triples of weight at most `bound`, by breadth-first search from the
/// root. Fails if a triple is reached twice.
pub fn enumerate_tree(bound: &BigInt) -> Result<MarkovTree> {
    let root = MarkovTriple::root();
    if root.weight() > *bound {
        return Ok(MarkovTree {
            nodes: vec![],
            edges: vec![],
        });
    }
    let mut seen = HashSet::from([root.clone()]);
    let mut nodes = vec![root.clone()];
    let mut edges = Vec::new();
    let mut queue = VecDeque::from([(0usize, None::<Involution>)]);
    while let Some((idx, came_by)) = queue.pop_front() {
        let t = nodes[idx].clone();
        for (g, n) in neighbors(&t) {
            if Some(g) == came_by || n.weight() > *bound {
                continue;
            }
            if !seen.insert(n.clone()) {
                return Err(Error::Invariant(format!("{n} reached twice from the root")));
            }
            let j = nodes.len();
            nodes.push(n);
            edges.push((idx, j, g));
            queue.push_back((j, Some(g)));
        }
    }
    Ok(MarkovTree { nodes, edges })
}

/// Letters for words in `PSL(2,Z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PslLetter {
    U,
    Uinv,
    V,
    Vinv,
    W,
    Winv,
}

impl PslLetter {
    pub fn inv(self) -> Self {
        use PslLetter::*;
        match self {
            U => Uinv,
            Uinv => U,
            V => Vinv,
            Vinv => V,
            W => Winv,
            Winv => W,
        }
    }

    pub fn matrix(self) -> Psl2Mat {
        use PslLetter::*;
        let m = |a, b, c, d| Psl2Mat::from_i64(a, b, c, d).expect("det 1");
        match self {
            U => m(1, 0, 1, 1),
            Uinv => m(1, 0, -1, 1),
            V => m(0, -1, 1, 0),
            Vinv => m(0, 1, -1, 0),
            W => m(0, 1, -1, 1),
            Winv => m(1, -1, 1, 0),
        }
    }
}

impl fmt::Display for PslLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PslLetter::*;
        f.write_str(match self {
            U => "u",
            Uinv => "u^-1",
            V => "v",
            Vinv => "v^-1",
            W => "w",
            Winv => "w^-1",
        })
    }
}

/// Parses `w^-1 v w`, `u^3`, …
pub fn parse_psl_word(text: &str) -> Result<Vec<PslLetter>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        let bad = || Error::Parse(format!("malformed PSL(2,Z) letter {tok:?}"));
        let (base, p) = match tok.split_once('^') {
            Some((b, p)) => (b, p.parse::<i64>().map_err(|_| bad())?),
            None => (tok, 1),
        };
        let l = match base {
            "u" => PslLetter::U,
            "v" => PslLetter::V,
            "w" => PslLetter::W,
            _ => return Err(bad()),
        };
        let l = if p < 0 { l.inv() } else { l };
        out.extend(std::iter::repeat_n(l, p.unsigned_abs() as usize));
    }
    Ok(out)
}

pub fn format_psl_word(w: &[PslLetter]) -> String {
    w.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

/// Element of `PSL(2,Z)`, stored with the first nonzero entry positive.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Psl2Mat {
    e: [BigInt; 4],
}

impl Psl2Mat {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::Invariant(format!(
                "determinant of [[{a},{b}],[{c},{d}]] is not 1"
            )));
        }
        let mut e = [a, b, c, d];
        if e.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in e.iter_mut() {
                *x = -&*x;
            }
        }
        Ok(Psl2Mat { e })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        Self::from_i64(1, 0, 0, 1).expect("det 1")
    }

    pub fn entries(&self) -> &[BigInt; 4] {
        &self.e
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn mul(&self, o: &Psl2Mat) -> Psl2Mat {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &o.e;
        Self::new(a * p + b * r, a * q + b * s, c * p + d * r, c * q + d * s)
            .expect("product of determinant-1 matrices")
    }

    pub fn inverse(&self) -> Psl2Mat {
        let [a, b, c, d] = &self.e;
        Self::new(d.clone(), -b, -c, a.clone()).expect("det 1")
    }

    pub fn pow(&self, k: i64) -> Psl2Mat {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        (0..k.unsigned_abs()).fold(Self::identity(), |acc, _| acc.mul(&base))
    }
}

impl fmt::Display for Psl2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.e;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

impl fmt::Debug for Psl2Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Product of the letter matrices, leftmost first.
pub fn psl2_of_word(word: &[PslLetter]) -> Psl2Mat {
    word.iter()
        .fold(Psl2Mat::identity(), |acc, l| acc.mul(&l.matrix()))
}

/// Applies a word to a triple, rightmost letter first. `u` acts as `wv`.
pub fn act_psl2(word: &[PslLetter], t: &MarkovTriple) -> Result<MarkovTriple> {
    use PslLetter::*;
    let mut cur = t.clone();
    for &l in word.iter().rev() {
        cur = match l {
            V | Vinv => cur.flip(),
            W => cur.rot(),
            Winv => cur.rot_inv(),
            U => cur.flip().rot(),
            Uinv => cur.rot_inv().flip(),
        };
        if cur.entries().iter().any(|x| !x.is_positive()) {
            return Err(Error::NotMarkov(
                cur.a.to_string(),
                cur.b.to_string(),
                cur.c.to_string(),
            ));
        }
    }
    Ok(cur)
}

fn wpow(k: i64) -> Vec<PslLetter> {
    match k.rem_euclid(3) {
        0 => vec![],
        1 => vec![PslLetter::W],
        _ => vec![PslLetter::Winv],
    }
}

fn invert_psl(word: &[PslLetter]) -> Vec<PslLetter> {
    word.iter().rev().map(|l| l.inv()).collect()
}

fn require_three(n: usize) -> Result<()> {
    if n != 3 {
        return Err(Error::Unsupported(format!(
            "the PSL(2,Z) maps are defined for n = 3, got {n}"
        )));
    }
    Ok(())
}

/// `f(σ₁) = w⁻¹v`, `f(σ₂) = vw⁻¹`, as a letter word.
pub fn f_word(w: &BraidWordA) -> Result<Vec<PslLetter>> {
    use PslLetter::*;
    require_three(w.n())?;
    let mut out = Vec::new();
    for &l in w.letters() {
        let (img, inverse) = match l {
            BraidLetter::Sigma { index: 1, inverse } => (vec![Winv, V], inverse),
            BraidLetter::Sigma { index: 2, inverse } => (vec![V, Winv], inverse),
            other => return Err(Error::Parse(format!("unexpected letter {other}"))),
        };
        out.extend(if inverse { invert_psl(&img) } else { img });
    }
    Ok(out)
}

pub fn f_map(w: &BraidWordA) -> Result<Psl2Mat> {
    Ok(psl2_of_word(&f_word(w)?))
}

/// `g(r) = w`, `g(τ_i) = w^{i+1} v w^{1-i}`, as a letter word.
pub fn g_word(w: &BraidWordB) -> Result<Vec<PslLetter>> {
    require_three(w.n())?;
    let mut out = Vec::new();
    for &l in w.letters() {
        let (img, inverse) = match l {
            BraidLetter::Rot { inverse } => (vec![PslLetter::W], inverse),
            BraidLetter::Tau { index, inverse } => {
                let i = index as i64;
                let mut img = wpow(i + 1);
                img.push(PslLetter::V);
                img.extend(wpow(1 - i));
                (img, inverse)
            }
            other => return Err(Error::Parse(format!("unexpected letter {other}"))),
        };
        out.extend(if inverse { invert_psl(&img) } else { img });
    }
    Ok(out)
}

pub fn g_map(w: &BraidWordB) -> Result<Psl2Mat> {
    Ok(psl2_of_word(&g_word(w)?))
}
