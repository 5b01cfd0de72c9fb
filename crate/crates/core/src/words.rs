//! Reduced words in the free group `F_n` on generators `x_i`, `i ∈ Z_n`,
//! endomorphisms given by generator images, and the action of the annular
//! braid group on `F_n` by automorphisms.
//!
//! Conventions:
//! - `r(x_i) = x_{i+1}`.
//! - `τ_i` moves the pair `(x_{i-1}, x_i)`: `x_{i-1} ↦ x_{i-1} x_i x_{i-1}⁻¹`,
//!   `x_i ↦ x_{i-1}`, other generators fixed. Indices are taken mod `n`.
//! - A word `g₁g₂` acts as `g₁ ∘ g₂`.
//!
//! With these conventions `α_i = rⁱ(τ₁⋯τ_{n-1})r^{-(i+1)}` acts as
//! conjugation by `x_i`, and `τ₁, …, τ_{n-1}` give the classical Artin
//! representation, which is faithful on the Artin braid group. Faithfulness
//! on the whole annular group is not established, so equality of
//! representations of τ/r words is only a semi-decision.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeLetter {
    pub generator: usize,
    pub inverse: bool,
}

impl FreeLetter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        FreeLetter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        FreeLetter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }
}

/// Freely reduced word. Construct through [`reduce`] or the helpers below.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FreeWord {
    letters: Vec<FreeLetter>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(i: usize) -> Self {
        FreeWord {
            letters: vec![FreeLetter::new(i, false)],
        }
    }

    /// Parses `(generator, exponent)` pairs with exponent ±1, then reduces.
    pub fn from_pairs(pairs: &[(usize, i8)]) -> Self {
        reduce(pairs.iter().map(|&(g, e)| FreeLetter::new(g, e < 0)))
    }

    pub fn letters(&self) -> &[FreeLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        reduce(self.letters.iter().chain(&other.letters).copied())
    }

    /// Exponent sum of each generator (the image in the abelianization).
    pub fn abelianization(&self, n: usize) -> Vec<i64> {
        let mut v = vec![0i64; n];
        for l in &self.letters {
            v[l.generator] += if l.inverse { -1 } else { 1 };
        }
        v
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "x{}", l.generator)?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Cancels adjacent inverse pairs until none remain.
pub fn reduce(letters: impl IntoIterator<Item = FreeLetter>) -> FreeWord {
    let mut out: Vec<FreeLetter> = Vec::new();
    for l in letters {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    FreeWord { letters: out }
}

/// Endomorphism of `F_n`, given by the images of `x_0, …, x_{n-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeEndo {
    images: Vec<FreeWord>,
}

impl FreeEndo {
    pub fn identity(n: usize) -> Self {
        FreeEndo {
            images: (0..n).map(FreeWord::generator).collect(),
        }
    }

    pub fn from_images(images: Vec<FreeWord>) -> Result<Self> {
        let n = images.len();
        for w in &images {
            if let Some(l) = w.letters().iter().find(|l| l.generator >= n) {
                return Err(Error::IndexOutOfRange {
                    index: l.generator,
                    n,
                });
            }
        }
        Ok(FreeEndo { images })
    }

    /// Inner automorphism `x_j ↦ g x_j g⁻¹`.
    pub fn conjugation(n: usize, g: &FreeWord) -> Self {
        let gi = g.inverse();
        FreeEndo {
            images: (0..n)
                .map(|j| g.concat(&FreeWord::generator(j)).concat(&gi))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &FreeWord {
        &self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == FreeWord::generator(i))
    }
}

/// Substitutes images for generators and reduces.
pub fn apply_endo(e: &FreeEndo, w: &FreeWord) -> Result<FreeWord> {
    let n = e.n();
    let mut letters = Vec::new();
    for l in w.letters() {
        if l.generator >= n {
            return Err(Error::IndexOutOfRange {
                index: l.generator,
                n,
            });
        }
        let img = &e.images[l.generator];
        if l.inverse {
            letters.extend(img.letters().iter().rev().map(|x| x.inv()));
        } else {
            letters.extend_from_slice(img.letters());
        }
    }
    Ok(reduce(letters))
}

/// `(e1 ∘ e2)(x_i) = e1(e2(x_i))`.
pub fn compose(e1: &FreeEndo, e2: &FreeEndo) -> Result<FreeEndo> {
    if e1.n() != e2.n() {
        return Err(Error::DimensionMismatch {
            expected: e1.n(),
            got: e2.n(),
        });
    }
    let images = e2
        .images
        .iter()
        .map(|w| apply_endo(e1, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(FreeEndo { images })
}

/// A letter of an Artin (`σ`) or annular (`τ`, `r`) braid word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraidLetter {
    Sigma { index: usize, inverse: bool },
    Tau { index: usize, inverse: bool },
    Rot { inverse: bool },
}

impl BraidLetter {
    pub fn inv(self) -> Self {
        match self {
            BraidLetter::Sigma { index, inverse } => BraidLetter::Sigma {
                index,
                inverse: !inverse,
            },
            BraidLetter::Tau { index, inverse } => BraidLetter::Tau {
                index,
                inverse: !inverse,
            },
            BraidLetter::Rot { inverse } => BraidLetter::Rot { inverse: !inverse },
        }
    }

    pub fn is_inverse(self) -> bool {
        match self {
            BraidLetter::Sigma { inverse, .. }
            | BraidLetter::Tau { inverse, .. }
            | BraidLetter::Rot { inverse } => inverse,
        }
    }
}

impl fmt::Display for BraidLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (base, inverse) = match *self {
            BraidLetter::Sigma { index, inverse } => (format!("s{index}"), inverse),
            BraidLetter::Tau { index, inverse } => (format!("t{index}"), inverse),
            BraidLetter::Rot { inverse } => ("r".to_string(), inverse),
        };
        if inverse {
            write!(f, "{base}^-1")
        } else {
            write!(f, "{base}")
        }
    }
}

impl FromStr for BraidLetter {
    type Err = Error;
    fn from_str(tok: &str) -> Result<Self> {
        parse_token(tok).and_then(|v| match v.as_slice() {
            [l] => Ok(*l),
            _ => Err(Error::Parse(format!("{tok:?} is not a single letter"))),
        })
    }
}

/// Parses whitespace-separated letters: `s1 s2^-1 r t0 r^-1`.
///
/// A token may carry an integer power, `s1^3` or `t0^-2`, which expands to
/// repeated letters.
pub fn parse_letters(text: &str) -> Result<Vec<BraidLetter>> {
    let mut out = Vec::new();
    for tok in text.split_whitespace() {
        out.extend(parse_token(tok)?);
    }
    Ok(out)
}

fn parse_token(tok: &str) -> Result<Vec<BraidLetter>> {
    let bad = || Error::Parse(format!("malformed braid letter {tok:?}"));
    let (base, power) = match tok.split_once('^') {
        Some((b, p)) => (b, p.parse::<i64>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let mut chars = base.chars();
    let head = chars.next().ok_or_else(bad)?;
    let rest = chars.as_str();
    let letter = match head {
        's' | 't' => {
            let index: usize = rest.parse().map_err(|_| bad())?;
            if head == 's' {
                BraidLetter::Sigma {
                    index,
                    inverse: false,
                }
            } else {
                BraidLetter::Tau {
                    index,
                    inverse: false,
                }
            }
        }
        'r' if rest.is_empty() => BraidLetter::Rot { inverse: false },
        _ => return Err(bad()),
    };
    let l = if power < 0 { letter.inv() } else { letter };
    Ok(vec![l; power.unsigned_abs() as usize])
}

pub fn format_letters(letters: &[BraidLetter]) -> String {
    letters
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Automorphism of `F_n` attached to a single letter. `σ_i` is sent to the
/// `τ_i` automorphism.
pub fn generator_endo(n: usize, letter: BraidLetter) -> Result<FreeEndo> {
    if n < 2 {
        return Err(Error::Unsupported(format!("need n >= 2, got {n}")));
    }
    let x = FreeWord::generator;
    let mut images: Vec<FreeWord> = (0..n).map(x).collect();
    match letter {
        BraidLetter::Rot { inverse } => {
            for (i, img) in images.iter_mut().enumerate() {
                *img = if inverse { x((i + n - 1) % n) } else { x((i + 1) % n) };
            }
        }
        BraidLetter::Sigma { index, inverse } | BraidLetter::Tau { index, inverse } => {
            let is_sigma = matches!(letter, BraidLetter::Sigma { .. });
            if (is_sigma && (index == 0 || index >= n)) || index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            let a = (index + n - 1) % n;
            let b = index;
            if inverse {
                // x_{i-1} ↦ x_i, x_i ↦ x_i⁻¹ x_{i-1} x_i
                images[a] = x(b);
                images[b] = x(b).inverse().concat(&x(a)).concat(&x(b));
            } else {
                // x_{i-1} ↦ x_{i-1} x_i x_{i-1}⁻¹, x_i ↦ x_{i-1}
                images[a] = x(a).concat(&x(b)).concat(&x(a).inverse());
                images[b] = x(a);
            }
        }
    }
    Ok(FreeEndo { images })
}

/// Representation of a word: `g₁ ⋯ g_k ↦ φ(g₁) ∘ ⋯ ∘ φ(g_k)`.
pub fn braid_rep(n: usize, word: &[BraidLetter]) -> Result<FreeEndo> {
    let mut acc = FreeEndo::identity(n);
    for &l in word {
        let g = generator_endo(n, l)?;
        acc = compose(&acc, &g)?;
    }
    Ok(acc)
}
