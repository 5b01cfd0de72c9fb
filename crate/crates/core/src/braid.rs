//! Words in the Artin braid group `A_n` (letters `σ_i`, `1 ≤ i ≤ n-1`) and
//! in the annular group `B_n` (letters `τ_i`, `i ∈ Z_n`, and `r`), together
//! with the distinguished elements δ, γ, α_i and the homomorphism `h`.

use std::fmt;

use crate::error::{Error, Result};
use crate::words::{braid_rep, format_letters, parse_letters, BraidLetter, FreeEndo};

fn free_reduce(letters: &[BraidLetter]) -> Vec<BraidLetter> {
    let mut out: Vec<BraidLetter> = Vec::with_capacity(letters.len());
    for &l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn invert(letters: &[BraidLetter]) -> Vec<BraidLetter> {
    letters.iter().rev().map(|l| l.inv()).collect()
}

fn power(letters: &[BraidLetter], k: i64) -> Vec<BraidLetter> {
    let base = if k < 0 { invert(letters) } else { letters.to_vec() };
    base.repeat(k.unsigned_abs() as usize)
}

/// Word in `A_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWordA {
    n: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWordA {
    pub fn new(n: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("A_n needs n >= 2, got {n}")));
        }
        for &l in &letters {
            match l {
                BraidLetter::Sigma { index, .. } if (1..n).contains(&index) => {}
                BraidLetter::Sigma { index, .. } => {
                    return Err(Error::IndexOutOfRange { index, n })
                }
                other => {
                    return Err(Error::Parse(format!("letter {other} is not a σ letter")))
                }
            }
        }
        Ok(BraidWordA { n, letters })
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Self::new(n, parse_letters(text)?)
    }

    pub fn identity(n: usize) -> Self {
        BraidWordA { n, letters: vec![] }
    }

    /// `σ_i` or `σ_i⁻¹`.
    pub fn sigma(n: usize, i: usize, inverse: bool) -> Result<Self> {
        Self::new(n, vec![BraidLetter::Sigma { index: i, inverse }])
    }

    /// Builds a word from signed indices: `2` is `σ₂`, `-1` is `σ₁⁻¹`.
    pub fn from_signed(n: usize, idx: &[i64]) -> Result<Self> {
        let letters = idx
            .iter()
            .map(|&k| BraidLetter::Sigma {
                index: k.unsigned_abs() as usize,
                inverse: k < 0,
            })
            .collect();
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWordA {
            n: self.n,
            letters: invert(&self.letters),
        }
    }

    pub fn concat(&self, other: &BraidWordA) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWordA { n: self.n, letters })
    }

    pub fn pow(&self, k: i64) -> Self {
        BraidWordA {
            n: self.n,
            letters: power(&self.letters, k),
        }
    }

    /// Image in the abelianization `A_n → Z`.
    pub fn expsum(&self) -> i64 {
        self.letters
            .iter()
            .map(|l| if l.is_inverse() { -1 } else { 1 })
            .sum()
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs (free reduction, no braid relations).
    pub fn free_reduce(&self) -> Self {
        BraidWordA {
            n: self.n,
            letters: free_reduce(&self.letters),
        }
    }

    pub fn rep(&self) -> FreeEndo {
        braid_rep(self.n, &self.letters).expect("letters validated on construction")
    }
}

impl fmt::Display for BraidWordA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", format_letters(&self.letters))
        }
    }
}

impl fmt::Debug for BraidWordA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{}[{}]", self.n, self)
    }
}

/// Word in `B_n` (or its cover `CB_n`; the letters are the same).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BraidWordB {
    n: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWordB {
    pub fn new(n: usize, letters: Vec<BraidLetter>) -> Result<Self> {
        if n < 2 {
            return Err(Error::Unsupported(format!("B_n needs n >= 2, got {n}")));
        }
        for &l in &letters {
            match l {
                BraidLetter::Rot { .. } => {}
                BraidLetter::Tau { index, .. } if index < n => {}
                BraidLetter::Tau { index, .. } => {
                    return Err(Error::IndexOutOfRange { index, n })
                }
                other => {
                    return Err(Error::Parse(format!("letter {other} is not a τ or r letter")))
                }
            }
        }
        Ok(BraidWordB { n, letters })
    }

    pub fn parse(n: usize, text: &str) -> Result<Self> {
        Self::new(n, parse_letters(text)?)
    }

    pub fn identity(n: usize) -> Self {
        BraidWordB { n, letters: vec![] }
    }

    pub fn tau(n: usize, i: usize, inverse: bool) -> Result<Self> {
        Self::new(n, vec![BraidLetter::Tau { index: i, inverse }])
    }

    pub fn rot(n: usize, k: i64) -> Self {
        BraidWordB {
            n,
            letters: power(&[BraidLetter::Rot { inverse: false }], k),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        BraidWordB {
            n: self.n,
            letters: invert(&self.letters),
        }
    }

    pub fn concat(&self, other: &BraidWordB) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWordB { n: self.n, letters })
    }

    pub fn pow(&self, k: i64) -> Self {
        BraidWordB {
            n: self.n,
            letters: power(&self.letters, k),
        }
    }

    pub fn free_reduce(&self) -> Self {
        BraidWordB {
            n: self.n,
            letters: free_reduce(&self.letters),
        }
    }

    /// Free-group representation. Equal words give equal endos; the converse
    /// is not known, so treat equality of endos as evidence only.
    pub fn rep(&self) -> FreeEndo {
        braid_rep(self.n, &self.letters).expect("letters validated on construction")
    }
}

impl fmt::Display for BraidWordB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", format_letters(&self.letters))
        }
    }
}

impl fmt::Debug for BraidWordB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}[{}]", self.n, self)
    }
}

fn ascending(top: usize) -> Vec<BraidLetter> {
    (1..=top)
        .map(|index| BraidLetter::Sigma {
            index,
            inverse: false,
        })
        .collect()
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        Err(Error::Unsupported(format!("need n >= 2, got {n}")))
    } else {
        Ok(())
    }
}

/// `δ = (σ₁⋯σ_{n-1})(σ₁⋯σ_{n-2})⋯σ₁`.
pub fn delta(n: usize) -> Result<BraidWordA> {
    check_n(n)?;
    let letters = (1..n).rev().flat_map(ascending).collect();
    BraidWordA::new(n, letters)
}

/// `γ = (σ₁⋯σ_{n-1})ⁿ`, generator of the centre.
pub fn gamma(n: usize) -> Result<BraidWordA> {
    check_n(n)?;
    Ok(BraidWordA::new(n, ascending(n - 1))?.pow(n as i64))
}

/// `(σ_{n-1}⋯σ₁)ⁿ`, which represents the same element as [`gamma`].
pub fn gamma_descending(n: usize) -> Result<BraidWordA> {
    check_n(n)?;
    let mut l = ascending(n - 1);
    l.reverse();
    Ok(BraidWordA::new(n, l)?.pow(n as i64))
}

/// `α_i = rⁱ(τ₁⋯τ_{n-1})r^{-(i+1)}`.
pub fn alpha(n: usize, i: usize) -> Result<BraidWordB> {
    check_n(n)?;
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let mut letters = power(&[BraidLetter::Rot { inverse: false }], i as i64);
    letters.extend((1..n).map(|index| BraidLetter::Tau {
        index,
        inverse: false,
    }));
    letters.extend(power(&[BraidLetter::Rot { inverse: true }], i as i64 + 1));
    BraidWordB::new(n, letters)
}

/// `h: B_n → A_n/⟨γ⟩`, lifted to words: `r ↦ σ₁⋯σ_{n-1}`, `τ_i ↦ σ_i` for
/// `i ≥ 1`, `τ₀ ↦ h(r)⁻¹ σ₁ h(r)`.
pub fn h_map(w: &BraidWordB) -> BraidWordA {
    let n = w.n();
    let hr = ascending(n - 1);
    let mut out = Vec::new();
    for &l in w.letters() {
        match l {
            BraidLetter::Rot { inverse: false } => out.extend_from_slice(&hr),
            BraidLetter::Rot { inverse: true } => out.extend(invert(&hr)),
            BraidLetter::Tau { index: 0, inverse } => {
                out.extend(invert(&hr));
                out.push(BraidLetter::Sigma { index: 1, inverse });
                out.extend_from_slice(&hr);
            }
            BraidLetter::Tau { index, inverse } => out.push(BraidLetter::Sigma { index, inverse }),
            BraidLetter::Sigma { .. } => unreachable!("validated B_n word"),
        }
    }
    BraidWordA { n, letters: out }
}

/// Decides equality in `A_n` through the faithful Artin representation.
pub fn equal_in_an(w1: &BraidWordA, w2: &BraidWordA) -> bool {
    w1.n() == w2.n() && w1.rep() == w2.rep()
}

/// Decides equality in `A_n/⟨γ⟩`. The abelianization sends γ to `n(n-1)`,
/// which pins down the only possible central correction.
pub fn equal_mod_gamma(w1: &BraidWordA, w2: &BraidWordA) -> bool {
    let n = w1.n();
    if n != w2.n() {
        return false;
    }
    let diff = w1.expsum() - w2.expsum();
    let period = (n * (n - 1)) as i64;
    if diff % period != 0 {
        return false;
    }
    let g = gamma(n).expect("n >= 2").pow(diff / period);
    equal_in_an(w1, &w2.concat(&g).expect("same n"))
}

/// Checks `δ⁻¹σ_iδ = σ_{n-i}` for every `i`.
pub fn verify_conj_lemma(n: usize) -> Result<bool> {
    let d = delta(n)?;
    for i in 1..n {
        let lhs = d.inverse().concat(&BraidWordA::sigma(n, i, false)?)?.concat(&d)?;
        if !equal_in_an(&lhs, &BraidWordA::sigma(n, n - i, false)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Named defining relation `lhs = rhs`.
#[derive(Debug, Clone)]
pub struct Relation<W> {
    pub name: String,
    pub lhs: W,
    pub rhs: W,
}

/// Defining relations of `A_n`.
pub fn artin_relations(n: usize) -> Result<Vec<Relation<BraidWordA>>> {
    check_n(n)?;
    let mut out = Vec::new();
    for i in 1..n {
        for j in i + 1..n {
            let (a, b) = (i as i64, j as i64);
            let rel = if j == i + 1 {
                Relation {
                    name: format!("s{i} s{j} s{i} = s{j} s{i} s{j}"),
                    lhs: BraidWordA::from_signed(n, &[a, b, a])?,
                    rhs: BraidWordA::from_signed(n, &[b, a, b])?,
                }
            } else {
                Relation {
                    name: format!("s{i} s{j} = s{j} s{i}"),
                    lhs: BraidWordA::from_signed(n, &[a, b])?,
                    rhs: BraidWordA::from_signed(n, &[b, a])?,
                }
            };
            out.push(rel);
        }
    }
    Ok(out)
}

/// Defining relations of `B_n`: `rτ_ir⁻¹ = τ_{i+1}`, braid relations for
/// cyclically adjacent τ's (only when `n ≥ 3`), commutation for the others,
/// and `rⁿ = 1`.
pub fn annular_relations(n: usize) -> Result<Vec<Relation<BraidWordB>>> {
    check_n(n)?;
    let t = |i: usize| BraidLetter::Tau {
        index: i % n,
        inverse: false,
    };
    let r = BraidLetter::Rot { inverse: false };
    let mut out = Vec::new();
    for i in 0..n {
        out.push(Relation {
            name: format!("r t{i} r^-1 = t{}", (i + 1) % n),
            lhs: BraidWordB::new(n, vec![r, t(i), r.inv()])?,
            rhs: BraidWordB::new(n, vec![t(i + 1)])?,
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent && n >= 3 {
                out.push(Relation {
                    name: format!("t{i} t{j} t{i} = t{j} t{i} t{j}"),
                    lhs: BraidWordB::new(n, vec![t(i), t(j), t(i)])?,
                    rhs: BraidWordB::new(n, vec![t(j), t(i), t(j)])?,
                });
            } else if !adjacent {
                out.push(Relation {
                    name: format!("t{i} t{j} = t{j} t{i}"),
                    lhs: BraidWordB::new(n, vec![t(i), t(j)])?,
                    rhs: BraidWordB::new(n, vec![t(j), t(i)])?,
                });
            }
        }
    }
    out.push(Relation {
        name: format!("r^{n} = 1"),
        lhs: BraidWordB::rot(n, n as i64),
        rhs: BraidWordB::identity(n),
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::FreeWord;

    fn a(n: usize, s: &str) -> BraidWordA {
        BraidWordA::parse(n, s).unwrap()
    }

    #[test]
    fn delta_words() {
        assert_eq!(delta(2).unwrap(), a(2, "s1"));
        assert_eq!(delta(3).unwrap(), a(3, "s1 s2 s1"));
        assert_eq!(delta(4).unwrap(), a(4, "s1 s2 s3 s1 s2 s1"));
        assert_eq!(delta(7).unwrap().len(), 21);
    }

    #[test]
    fn gamma_words() {
        assert_eq!(gamma(2).unwrap(), a(2, "s1^2"));
        assert_eq!(gamma(3).unwrap(), a(3, "s1 s2 s1 s2 s1 s2"));
        for n in 2..=7 {
            let g = gamma(n).unwrap();
            assert_eq!(g.expsum(), (n * (n - 1)) as i64);
            assert!(equal_in_an(&g, &gamma_descending(n).unwrap()));
            assert!(!g.rep().is_identity());
            // γ = δ²
            let d = delta(n).unwrap();
            assert!(equal_in_an(&g, &d.concat(&d).unwrap()));
        }
    }

    #[test]
    fn gamma_is_central_and_conjugates_generators() {
        for n in 2..=6 {
            let g = gamma(n).unwrap();
            let e = g.rep();
            for i in 1..n {
                let s = BraidWordA::sigma(n, i, false).unwrap();
                assert!(equal_in_an(
                    &g.concat(&s).unwrap(),
                    &s.concat(&g).unwrap()
                ));
            }
            for j in 0..n {
                let img = e.image(j);
                let ab = img.abelianization(n);
                let mut unit = vec![0; n];
                unit[j] = 1;
                assert_eq!(ab, unit, "γ(x_{j}) = {img}");
                // conjugate of x_j: the middle letter is x_j and the rest pairs up
                let l = img.letters();
                let mid = l.len() / 2;
                assert_eq!(l.len() % 2, 1);
                assert_eq!(FreeWord::from_pairs(&[(j, 1)]).letters(), &l[mid..=mid]);
                let head = FreeWord::from_pairs(
                    &l[..mid].iter().map(|x| (x.generator, if x.inverse { -1 } else { 1 })).collect::<Vec<_>>(),
                );
                let tail = FreeWord::from_pairs(
                    &l[mid + 1..].iter().map(|x| (x.generator, if x.inverse { -1 } else { 1 })).collect::<Vec<_>>(),
                );
                assert_eq!(head.inverse(), tail);
            }
        }
    }

    #[test]
    fn alpha_words() {
        assert_eq!(alpha(3, 0).unwrap(), BraidWordB::parse(3, "t1 t2 r^-1").unwrap());
        assert_eq!(alpha(3, 1).unwrap(), BraidWordB::parse(3, "r t1 t2 r^-2").unwrap());
        assert!(alpha(3, 3).is_err());
        for n in 2..=6 {
            for i in 0..n {
                assert!(h_map(&alpha(n, i).unwrap()).free_reduce().is_empty());
            }
        }
    }

    #[test]
    fn alpha_is_conjugation() {
        for n in 2..=8 {
            for i in 0..n {
                let e = alpha(n, i).unwrap().rep();
                assert_eq!(e, FreeEndo::conjugation(n, &FreeWord::generator(i)), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn h_map_letters() {
        let b = |s: &str| BraidWordB::parse(3, s).unwrap();
        assert_eq!(h_map(&b("r")), a(3, "s1 s2"));
        assert_eq!(h_map(&b("t0")), a(3, "s2^-1 s1^-1 s1 s1 s2"));
        assert_eq!(h_map(&b("t2")), a(3, "s2"));
    }

    #[test]
    fn equality_examples() {
        assert!(equal_in_an(&a(3, "s1 s2 s1"), &a(3, "s2 s1 s2")));
        assert!(equal_in_an(&a(4, "s1 s3"), &a(4, "s3 s1")));
        assert!(!equal_in_an(&a(3, "s1"), &a(3, "s2")));
        assert!(equal_mod_gamma(&gamma(3).unwrap(), &BraidWordA::identity(3)));
        assert!(!equal_mod_gamma(&a(3, "s1"), &a(3, "s2")));
        let w = a(3, "s1 s2^-1 s2^-1 s1");
        assert!(equal_mod_gamma(&w, &w.concat(&gamma(3).unwrap().inverse()).unwrap()));
        assert!(!equal_mod_gamma(&a(3, "s1"), &a(3, "s1 s1")));
    }

    #[test]
    fn conj_lemma() {
        for n in 2..=8 {
            assert!(verify_conj_lemma(n).unwrap(), "n={n}");
        }
    }

    #[test]
    fn relations_hold_in_representation() {
        for n in 2..=8 {
            for rel in artin_relations(n).unwrap() {
                assert!(equal_in_an(&rel.lhs, &rel.rhs), "{}", rel.name);
            }
            for rel in annular_relations(n).unwrap() {
                assert_eq!(rel.lhs.rep(), rel.rhs.rep(), "n={n} {}", rel.name);
            }
        }
    }

    #[test]
    fn h_respects_relations_mod_gamma() {
        for n in 2..=6 {
            for rel in annular_relations(n).unwrap() {
                assert!(
                    equal_mod_gamma(&h_map(&rel.lhs), &h_map(&rel.rhs)),
                    "n={n} {}",
                    rel.name
                );
            }
        }
    }

    #[test]
    fn relation_counts() {
        // n = 3: 3 conjugations, 3 braid relations, r³
        assert_eq!(annular_relations(3).unwrap().len(), 7);
        // n = 2: no braid relation
        assert_eq!(annular_relations(2).unwrap().len(), 3);
        assert_eq!(artin_relations(4).unwrap().len(), 3);
    }

    #[test]
    fn word_validation() {
        assert!(BraidWordA::parse(3, "s3").is_err());
        assert!(BraidWordA::parse(3, "s0").is_err());
        assert!(BraidWordA::parse(3, "t1").is_err());
        assert!(BraidWordB::parse(3, "t3").is_err());
        assert!(BraidWordB::parse(3, "s1").is_err());
        assert!(BraidWordA::parse(1, "").is_err());
        assert_eq!(a(3, "s1 s2^-1").to_string(), "s1 s2^-1");
        assert_eq!(BraidWordA::identity(3).to_string(), "1");
    }
}
