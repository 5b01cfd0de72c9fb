//! Euler-form lattices for `K(Pᵐ)` and the induced pairings on the local
//! Calabi-Yau.
//!
//! Everything is encoded through a Gram matrix in a fixed basis. For the
//! built-in projective spaces the basis is `([O], [O(1)], …, [O(m)])`.
//! Shifts act on classes by a sign: `[E[1]] = -[E]`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::{dot, integer_kernel, IntMatrix};

/// Projective space `Pᵐ`, `m ≥ 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveSpace(u32);

impl ProjectiveSpace {
    pub fn new(m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Unsupported("P0 has no interesting lattice".into()));
        }
        Ok(ProjectiveSpace(m))
    }

    pub fn dim(self) -> u32 {
        self.0
    }

    /// Rank of `K(Pᵐ)`, i.e. `m + 1`.
    pub fn rank(self) -> usize {
        self.0 as usize + 1
    }
}

impl fmt::Display for ProjectiveSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

impl FromStr for ProjectiveSpace {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s
            .strip_prefix('P')
            .or_else(|| s.strip_prefix('p'))
            .ok_or_else(|| Error::Parse(format!("expected a space like P2, got {s:?}")))?;
        let m: u32 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad projective dimension in {s:?}")))?;
        ProjectiveSpace::new(m)
    }
}

impl Serialize for ProjectiveSpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ProjectiveSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Integer coordinate vector of a class in a lattice basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KClass(pub Vec<BigInt>);

impl KClass {
    pub fn zero(rank: usize) -> Self {
        KClass(vec![BigInt::zero(); rank])
    }

    pub fn basis(rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = BigInt::one();
        v
    }

    pub fn from_i64(xs: &[i64]) -> Self {
        KClass(xs.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Comma-separated decimal coordinates; used as a canonical key.
    pub fn key(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        parts.join(",")
    }
}

impl fmt::Debug for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl fmt::Display for KClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.key())
    }
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        debug_assert_eq!(self.rank(), rhs.rank());
        KClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        debug_assert_eq!(self.rank(), rhs.rank());
        KClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass(self.0.into_iter().map(|a| -a).collect())
    }
}

impl Mul<&KClass> for &BigInt {
    type Output = KClass;
    fn mul(self, rhs: &KClass) -> KClass {
        KClass(rhs.0.iter().map(|a| self * a).collect())
    }
}

impl Serialize for KClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for KClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<serde_json::Value>::deserialize(d)?;
        raw.iter()
            .map(|v| crate::serial::big_from_json(v).map_err(D::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(KClass)
    }
}

/// Rank-n lattice with the Euler form χ given by a Gram matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct EulerLattice {
    gram: IntMatrix,
    dim_z: usize,
    space: Option<ProjectiveSpace>,
    twist: IntMatrix,
    twist_inv: IntMatrix,
}

impl fmt::Debug for EulerLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EulerLattice")
            .field("space", &self.space)
            .field("dim_z", &self.dim_z)
            .field("gram", &self.gram)
            .finish()
    }
}

impl EulerLattice {
    /// Lattice from an arbitrary Gram matrix. The matrix must be square with
    /// determinant ±1, and the canonical twist it induces must be integral.
    pub fn new(gram: IntMatrix, dim_z: usize) -> Result<Self> {
        Self::build(gram, dim_z, None)
    }

    fn build(gram: IntMatrix, dim_z: usize, space: Option<ProjectiveSpace>) -> Result<Self> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(Error::Lattice("gram matrix must be square and nonempty".into()));
        }
        let det = gram.det()?;
        if !det.abs().is_one() {
            return Err(Error::Lattice(format!("gram determinant is {det}, not ±1")));
        }
        let twist = canonical_twist_from_gram(&gram, dim_z)?;
        let twist_inv = twist.inverse()?;
        Ok(EulerLattice {
            gram,
            dim_z,
            space,
            twist,
            twist_inv,
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn dim_z(&self) -> usize {
        self.dim_z
    }

    pub fn space(&self) -> Option<ProjectiveSpace> {
        self.space
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// Matrix of `- ⊗ ω_Z` on classes.
    pub fn twist(&self) -> &IntMatrix {
        &self.twist
    }

    /// Matrix of `- ⊗ ω_Z⁻¹` on classes.
    pub fn twist_inverse(&self) -> &IntMatrix {
        &self.twist_inv
    }

    pub fn check(&self, x: &KClass) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::DimensionMismatch {
                expected: self.rank(),
                got: x.rank(),
            });
        }
        Ok(())
    }

    /// Euler form `χ(x, y) = xᵀ · gram · y`.
    pub fn chi(&self, x: &KClass, y: &KClass) -> Result<BigInt> {
        self.check(x)?;
        self.check(y)?;
        self.gram.bilinear(&x.0, &y.0)
    }

    /// Class of `x ⊗ ω_Z`.
    pub fn twist_class(&self, x: &KClass) -> KClass {
        KClass(self.twist.mul_vec(&x.0).expect("rank checked by caller"))
    }

    /// Class of `x ⊗ ω_Z⁻¹`.
    pub fn untwist_class(&self, x: &KClass) -> KClass {
        KClass(self.twist_inv.mul_vec(&x.0).expect("rank checked by caller"))
    }

    pub fn basis_class(&self, i: usize) -> KClass {
        KClass::basis(self.rank(), i)
    }
}

/// Built-in lattice `K(Pᵐ)` in the basis `([O], …, [O(m)])`, with
/// `χ(O(i), O(j)) = C(j - i + m, m)` read as a polynomial in `j - i`.
pub fn builtin_lattice(space: ProjectiveSpace) -> EulerLattice {
    let n = space.rank();
    let m = space.dim();
    let mut gram = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            gram[(i, j)] = euler_characteristic(m, j as i64 - i as i64);
        }
    }
    EulerLattice::build(gram, m as usize, Some(space)).expect("built-in gram is unitriangular")
}

/// `χ(O(d))` on `Pᵐ`: `∏_{k=1}^{m} (d + k) / m!`.
pub fn euler_characteristic(m: u32, d: i64) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 1..=m as i64 {
        num *= BigInt::from(d + k);
        den *= BigInt::from(k);
    }
    num / den
}

pub fn chi(lat: &EulerLattice, x: &KClass, y: &KClass) -> Result<BigInt> {
    lat.chi(x, y)
}

/// `[O(d)]` in the basis `([O], …, [O(m)])`, extended from the basis range
/// by the Koszul recurrence `Σ_k (-1)^k C(m+1, k) [O(d - k)] = 0`.
pub fn line_bundle_class(lat: &EulerLattice, d: i64) -> Result<KClass> {
    let space = lat
        .space()
        .ok_or_else(|| Error::Unsupported("line bundle classes need a built-in lattice".into()))?;
    let m = space.dim() as i64;
    let n = space.rank();
    let coeffs: Vec<BigInt> = (0..=m + 1)
        .map(|k| {
            let c = binomial(&BigInt::from(m + 1), k as u64);
            if k % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    // window holds [O(lo)], …, [O(lo + m)]
    let mut lo: i64 = 0;
    let mut window: Vec<KClass> = (0..n).map(|i| KClass::basis(n, i)).collect();
    while d > lo + m {
        // [O(t)] = -Σ_{k=1}^{m+1} c_k [O(t-k)] with t = lo + m + 1
        let mut next = KClass::zero(n);
        for (k, c) in coeffs.iter().enumerate().skip(1) {
            next = &next - &(c * &window[window.len() - k]);
        }
        window.remove(0);
        window.push(next);
        lo += 1;
    }
    while d < lo {
        // c_{m+1} [O(lo-1)] = -Σ_{k=0}^{m} c_k [O(lo-1+m+1-k)]
        let mut acc = KClass::zero(n);
        for (k, c) in coeffs.iter().enumerate().take(m as usize + 1) {
            acc = &acc - &(c * &window[m as usize - k]);
        }
        let lead = &coeffs[(m + 1) as usize];
        let prev = KClass(acc.0.iter().map(|x| x / lead).collect());
        window.pop();
        window.insert(0, prev);
        lo -= 1;
    }
    Ok(window[(d - lo) as usize].clone())
}

/// Dimensions `(h⁰, …, hᵐ)` of the cohomology of `O(d)` on `Pᵐ`.
pub fn cohomology_dims(m: u32, d: i64) -> Vec<BigInt> {
    let mut h = vec![BigInt::zero(); m as usize + 1];
    if d >= 0 {
        h[0] = binomial(&BigInt::from(d + m as i64), m as u64);
    }
    if d < -(m as i64) {
        h[m as usize] = binomial(&BigInt::from(-d - 1), m as u64);
    }
    h
}

/// `C(n, k)` for integer `n ≥ 0`; zero when `k > n`.
pub fn binomial(n: &BigInt, k: u64) -> BigInt {
    if n.is_negative() || BigInt::from(k) > *n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `C = (-1)^{dim Z} · gram⁻¹ · gramᵀ`, the matrix of `- ⊗ ω_Z`.
pub fn canonical_twist_matrix(lat: &EulerLattice) -> Result<IntMatrix> {
    canonical_twist_from_gram(lat.gram(), lat.dim_z())
}

fn canonical_twist_from_gram(gram: &IntMatrix, dim_z: usize) -> Result<IntMatrix> {
    let inv = gram.inverse().map_err(|e| match e {
        Error::Lattice(msg) => Error::Lattice(format!("inconsistent lattice: {msg}")),
        other => other,
    })?;
    let c = inv.mul(&gram.transpose())?;
    Ok(if dim_z.is_multiple_of(2) { c } else { c.scale(&BigInt::from(-1)) })
}

/// Antisymmetric form `gram - gramᵀ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewLattice {
    skew: IntMatrix,
}

impl SkewLattice {
    pub fn new(skew: IntMatrix) -> Result<Self> {
        if !skew.is_antisymmetric() {
            return Err(Error::Lattice("matrix is not antisymmetric".into()));
        }
        Ok(SkewLattice { skew })
    }

    pub fn rank(&self) -> usize {
        self.skew.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.skew
    }

    pub fn pair(&self, x: &KClass, y: &KClass) -> Result<BigInt> {
        self.skew.bilinear(&x.0, &y.0)
    }
}

pub fn skew_form(lat: &EulerLattice) -> SkewLattice {
    let g = lat.gram();
    SkewLattice {
        skew: g.sub(&g.transpose()).expect("square"),
    }
}

/// Integer basis of the kernel of the skew form, in Hermite normal form.
pub fn radical(sk: &SkewLattice) -> Vec<KClass> {
    integer_kernel(sk.matrix()).into_iter().map(KClass).collect()
}

/// Euler pairing on `K(D_ω)` for classes pushed forward from the zero
/// section: `⟨x, y⟩ = χ(x, y) + (-1)^{dim ω} χ(y, x)`.
///
/// For odd `dim ω` (e.g. `P²`) this is the skew form `gram - gramᵀ`; for
/// even `dim ω` it is symmetric with `⟨s, s⟩ = 2` on spherical classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyForm {
    matrix: IntMatrix,
    cy_dim: usize,
}

impl CyForm {
    pub fn from_lattice(lat: &EulerLattice) -> Self {
        let cy_dim = lat.dim_z() + 1;
        let g = lat.gram();
        let matrix = if cy_dim % 2 == 1 {
            g.sub(&g.transpose())
        } else {
            g.add(&g.transpose())
        }
        .expect("square");
        CyForm { matrix, cy_dim }
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// Dimension of the Calabi-Yau `ω_Z`.
    pub fn cy_dim(&self) -> usize {
        self.cy_dim
    }

    pub fn is_skew(&self) -> bool {
        self.cy_dim % 2 == 1
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn pair(&self, x: &KClass, y: &KClass) -> BigInt {
        debug_assert_eq!(x.rank(), self.rank());
        let my = self.matrix.mul_vec(&y.0).expect("rank mismatch");
        dot(&x.0, &my)
    }

    pub fn radical(&self) -> Vec<KClass> {
        integer_kernel(&self.matrix).into_iter().map(KClass).collect()
    }
}
