//! Full exceptional collections modelled by their K-classes, and the action
//! of `A_n` on them by mutations.
//!
//! A word `g₁g₂` acts as `g₁ ∘ g₂`, so [`apply_braid`] applies the rightmost
//! letter first.
//!
//! States are identified by their class tuples. On `P²` exceptional sheaves
//! are determined by their classes, and the action on the seed orbit is
//! free, so nothing is lost there. Outside the seed orbit the quiver and the
//! map `T` are still computed, but they come with no positivity guarantee.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::braid::{delta, BraidWordA};
use crate::error::{Error, Result};
use crate::lattice::{builtin_lattice, EulerLattice, KClass, ProjectiveSpace};
use crate::markov::{make_triple, MarkovTriple};
use crate::matrix::IntMatrix;
use crate::serial::vector_from_json;
use crate::words::BraidLetter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `σ_i`: `(A, B) ↦ (L_A B, A)`.
    Left,
    /// `σ_i⁻¹`: `(A, B) ↦ (B, R_B A)`.
    Right,
}

#[derive(Debug, Clone)]
pub struct ExcState {
    lattice: Arc<EulerLattice>,
    classes: Vec<KClass>,
    certified: bool,
}

impl PartialEq for ExcState {
    fn eq(&self, other: &Self) -> bool {
        self.classes == other.classes
            && (Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice)
    }
}

impl Eq for ExcState {}

impl Hash for ExcState {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.classes.hash(state);
    }
}

impl ExcState {
    /// Validates the exceptionality and fullness conditions.
    pub fn new(lattice: Arc<EulerLattice>, classes: Vec<KClass>) -> Result<Self> {
        let s = ExcState {
            lattice,
            classes,
            certified: false,
        };
        s.check_invariants()?;
        Ok(s)
    }

    /// The basis collection `(b_0, …, b_{n-1})` of the lattice.
    pub fn seed(lattice: Arc<EulerLattice>) -> Self {
        let classes = (0..lattice.rank()).map(|i| lattice.basis_class(i)).collect();
        ExcState {
            lattice,
            classes,
            certified: true,
        }
    }

    pub fn lattice(&self) -> &Arc<EulerLattice> {
        &self.lattice
    }

    pub fn classes(&self) -> &[KClass] {
        &self.classes
    }

    pub fn n(&self) -> usize {
        self.classes.len()
    }

    /// True only when the state was reached from the seed by mutations.
    /// Arbitrary tuples passing the K-level checks are not known to be
    /// simple collections.
    pub fn in_seed_orbit_certified(&self) -> bool {
        self.certified
    }

    pub fn key(&self) -> String {
        let parts: Vec<String> = self.classes.iter().map(KClass::key).collect();
        parts.join(";")
    }

    /// Matrix whose columns are the class vectors.
    pub fn class_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.classes.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
            .expect("classes share the lattice rank")
    }

    pub fn chi(&self, i: usize, j: usize) -> BigInt {
        self.lattice
            .chi(&self.classes[i], &self.classes[j])
            .expect("classes share the lattice rank")
    }

    pub fn check_invariants(&self) -> Result<()> {
        let n = self.lattice.rank();
        if self.classes.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: self.classes.len(),
            });
        }
        for c in &self.classes {
            self.lattice.check(c)?;
        }
        for i in 0..n {
            if !self.chi(i, i).is_one() {
                return Err(Error::Invariant(format!(
                    "χ(E_{i}, E_{i}) = {} ≠ 1",
                    self.chi(i, i)
                )));
            }
            for j in i + 1..n {
                let back = self.chi(j, i);
                if !back.is_zero() {
                    return Err(Error::Invariant(format!("χ(E_{j}, E_{i}) = {back} ≠ 0")));
                }
            }
        }
        let det = self.class_matrix().det()?;
        if !det.abs().is_one() {
            return Err(Error::Invariant(format!("class matrix has determinant {det}")));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let space = self
            .lattice
            .space()
            .map(|s| s.to_string())
            .unwrap_or_else(|| "custom".into());
        json!({ "space": space, "classes": self.classes })
    }

    /// Reads `{"space": "P2", "classes": [[…], …]}`. The result is not
    /// certified as lying in the seed orbit.
    pub fn from_json(v: &Value) -> Result<Self> {
        let space: ProjectiveSpace = v
            .get("space")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"space\"".into()))?
            .parse()?;
        let classes = v
            .get("classes")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"classes\"".into()))?
            .iter()
            .map(|c| vector_from_json(c).map(KClass))
            .collect::<Result<Vec<_>>>()?;
        let lat = Arc::new(builtin_lattice(space));
        let mut s = ExcState::new(lat, classes)?;
        s.certified = s == ExcState::seed(s.lattice.clone());
        Ok(s)
    }
}

pub fn seed_state(space: ProjectiveSpace) -> ExcState {
    ExcState::seed(Arc::new(builtin_lattice(space)))
}

/// Mutation at positions `(i-1, i)`, `1 ≤ i ≤ n-1`.
pub fn mutate(state: &ExcState, i: usize, dir: Direction) -> Result<ExcState> {
    let n = state.n();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let a = &state.classes[i - 1];
    let b = &state.classes[i];
    let chi = state.chi(i - 1, i);
    let (x, y) = match dir {
        Direction::Left => (&(&chi * a) - b, a.clone()),
        Direction::Right => (b.clone(), &(&chi * b) - a),
    };
    let mut classes = state.classes.clone();
    classes[i - 1] = x;
    classes[i] = y;
    let out = ExcState {
        lattice: state.lattice.clone(),
        classes,
        certified: state.certified,
    };
    out.check_invariants()?;
    Ok(out)
}

fn letter_step(state: &ExcState, l: BraidLetter) -> Result<ExcState> {
    match l {
        BraidLetter::Sigma { index, inverse } => mutate(
            state,
            index,
            if inverse { Direction::Right } else { Direction::Left },
        ),
        other => Err(Error::Parse(format!("{other} is not a σ letter"))),
    }
}

/// Applies a word, rightmost letter first.
pub fn apply_braid(state: &ExcState, w: &BraidWordA) -> Result<ExcState> {
    if w.n() != state.n() {
        return Err(Error::DimensionMismatch {
            expected: state.n(),
            got: w.n(),
        });
    }
    let mut cur = state.clone();
    for &l in w.letters().iter().rev() {
        cur = letter_step(&cur, l)?;
    }
    Ok(cur)
}

/// The dual collection `F = δ(E)`, checked against
/// `χ(E_i, (-1)ʲ F_{n-1-j}) = δ_ij`.
pub fn dual_classes(state: &ExcState) -> Result<Vec<KClass>> {
    let n = state.n();
    if n < 2 {
        return Ok(state.classes.clone());
    }
    let f = apply_braid(state, &delta(n)?)?.classes;
    let lat = &state.lattice;
    for i in 0..n {
        for j in 0..n {
            let mut v = lat.chi(&state.classes[i], &f[n - 1 - j])?;
            if j % 2 == 1 {
                v = -v;
            }
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            if v != want {
                return Err(Error::Invariant(format!(
                    "dual collection fails orthogonality at ({i}, {j}): {v}"
                )));
            }
        }
    }
    Ok(f)
}

/// `[S_j] = (-1)ʲ [F_{n-1-j}]`.
pub fn simple_classes(state: &ExcState) -> Result<Vec<KClass>> {
    let f = dual_classes(state)?;
    let n = f.len();
    Ok((0..n)
        .map(|j| {
            let c = f[n - 1 - j].clone();
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect())
}

/// `[E_i]` for any integer `i`, via `E_{i-n} = E_i ⊗ ω`.
pub fn helix_class(state: &ExcState, i: i64) -> KClass {
    let n = state.n() as i64;
    let q = i.div_euclid(n);
    let mut c = state.classes[i.rem_euclid(n) as usize].clone();
    let lat = &state.lattice;
    for _ in 0..q.unsigned_abs() {
        c = if q > 0 {
            lat.untwist_class(&c)
        } else {
            lat.twist_class(&c)
        };
    }
    c
}

/// Arrow counts `(d_0, …, d_{n-1})` of the rolled-up helix quiver:
/// `d_i = χ(E_{i-1}, E_i)` and `d_0 = χ(E_{n-1}, E_n)`.
pub fn quiver(state: &ExcState) -> Result<Vec<BigInt>> {
    let n = state.n();
    let lat = &state.lattice;
    let mut d = vec![lat.chi(&state.classes[n - 1], &helix_class(state, n as i64))?];
    for i in 1..n {
        d.push(state.chi(i - 1, i));
    }
    if let Some(bad) = d.iter().position(|x| x.is_negative()) {
        return Err(Error::Invariant(format!(
            "not a simple collection at K-level: d_{bad} = {}",
            d[bad]
        )));
    }
    Ok(d)
}

/// `T(E) = (χ(F_1,F_2), χ(F_0,F_1), χ(F_0,F_2))` for rank-3 states.
pub fn t_map(state: &ExcState) -> Result<MarkovTriple> {
    if state.n() != 3 {
        return Err(Error::Unsupported(format!(
            "T is defined for rank 3, got rank {}",
            state.n()
        )));
    }
    let f = dual_classes(state)?;
    let lat = &state.lattice;
    make_triple(
        lat.chi(&f[1], &f[2])?,
        lat.chi(&f[0], &f[1])?,
        lat.chi(&f[0], &f[2])?,
    )
}

/// Simples after tilting at `S_i`: positions `(i-1, i)` become
/// `(-[S_i], [S_{i-1}] + e[S_i])` with `e = -χ(S_i, S_{i-1})`.
pub fn tilt_simples(state: &ExcState, i: usize) -> Result<Vec<KClass>> {
    let n = state.n();
    if i == 0 || i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let mut s = simple_classes(state)?;
    let e = -state.lattice.chi(&s[i], &s[i - 1])?;
    if e.is_negative() {
        return Err(Error::Invariant(format!(
            "extension count {e} between S_{i} and S_{} is negative",
            i - 1
        )));
    }
    let si = s[i].clone();
    let new_i = &s[i - 1] + &(&e * &si);
    s[i - 1] = -si;
    s[i] = new_i;
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(m: u32) -> ExcState {
        seed_state(ProjectiveSpace::new(m).unwrap())
    }

    fn k(xs: &[i64]) -> KClass {
        KClass::from_i64(xs)
    }

    fn word(n: usize, s: &str) -> BraidWordA {
        BraidWordA::parse(n, s).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn seed_examples() {
        let s = p(2);
        assert_eq!(s.classes(), &[k(&[1, 0, 0]), k(&[0, 1, 0]), k(&[0, 0, 1])]);
        assert!(s.check_invariants().is_ok());
        assert!(s.in_seed_orbit_certified());
        assert_eq!(quiver(&s).unwrap(), ints(&[3, 3, 3]));
        assert_eq!(quiver(&p(1)).unwrap(), ints(&[2, 2]));
    }

    #[test]
    fn mutate_examples() {
        let s = p(2);
        let m = mutate(&s, 1, Direction::Left).unwrap();
        assert_eq!(m.classes(), &[k(&[3, -1, 0]), k(&[1, 0, 0]), k(&[0, 0, 1])]);
        assert_eq!(mutate(&m, 1, Direction::Right).unwrap(), s);
        assert_eq!(
            apply_braid(&s, &word(3, "s1 s2 s1")).unwrap(),
            apply_braid(&s, &word(3, "s2 s1 s2")).unwrap()
        );
        assert!(mutate(&s, 0, Direction::Left).is_err());
        assert!(mutate(&s, 3, Direction::Left).is_err());
        assert_eq!(apply_braid(&s, &BraidWordA::identity(3)).unwrap(), s);
    }

    #[test]
    fn apply_braid_order() {
        let s = p(2);
        let step = mutate(&mutate(&s, 2, Direction::Left).unwrap(), 1, Direction::Left).unwrap();
        assert_eq!(apply_braid(&s, &word(3, "s1 s2")).unwrap(), step);
    }

    #[test]
    fn dual_and_simples() {
        let s = p(2);
        assert_eq!(
            dual_classes(&s).unwrap(),
            vec![k(&[3, -3, 1]), k(&[3, -1, 0]), k(&[1, 0, 0])]
        );
        let sim = simple_classes(&s).unwrap();
        assert_eq!(sim, vec![k(&[1, 0, 0]), k(&[-3, 1, 0]), k(&[3, -3, 1])]);
        let lat = s.lattice();
        for i in 0..3 {
            assert!(lat.chi(&sim[i], &sim[i]).unwrap().is_one());
            for j in i + 1..3 {
                assert!(lat.chi(&sim[i], &sim[j]).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn dual_mirrors_mutation() {
        let s = apply_braid(&p(2), &word(3, "s1 s2^-1 s1")).unwrap();
        for i in 1..3 {
            let lhs = dual_classes(&mutate(&s, i, Direction::Left).unwrap()).unwrap();
            let ds = ExcState::new(s.lattice().clone(), dual_classes(&s).unwrap()).unwrap();
            let rhs = mutate(&ds, 3 - i, Direction::Left).unwrap();
            assert_eq!(lhs, rhs.classes());
        }
    }

    #[test]
    fn helix_examples() {
        let s = p(2);
        assert_eq!(helix_class(&s, 3), k(&[1, -3, 3]));
        assert_eq!(helix_class(&s, -1), k(&[3, -3, 1]));
        let lat = s.lattice();
        for i in -6..=6 {
            assert_eq!(helix_class(&s, i - 3), lat.twist_class(&helix_class(&s, i)));
        }
    }

    #[test]
    fn quiver_after_mutation() {
        // (Ω(1), O, O(2)): d_0 = h⁰(Ω(2)) = 3χ(O(1)) - χ(O(2))
        let m = mutate(&p(2), 1, Direction::Left).unwrap();
        let d0 = 3 * crate::lattice::euler_characteristic(2, 1) - crate::lattice::euler_characteristic(2, 2);
        assert_eq!(d0, BigInt::from(3));
        assert_eq!(quiver(&m).unwrap(), ints(&[3, 3, 6]));
    }

    #[test]
    fn t_map_examples() {
        let t = |a, b, c| MarkovTriple::new(a, b, c).unwrap();
        assert_eq!(t_map(&p(2)).unwrap(), t(3, 3, 3));
        assert_eq!(t_map(&apply_braid(&p(2), &word(3, "s1")).unwrap()).unwrap(), t(3, 6, 3));
        assert_eq!(t_map(&apply_braid(&p(2), &word(3, "s2")).unwrap()).unwrap(), t(3, 3, 6));
        assert!(t_map(&p(1)).is_err());
    }

    #[test]
    fn tilt_examples() {
        let s = p(2);
        let t = tilt_simples(&s, 1).unwrap();
        assert_eq!(t[0], k(&[3, -1, 0]));
        assert_eq!(t[1], k(&[-8, 3, 0]));
        let sim = simple_classes(&s).unwrap();
        assert_eq!(-s.lattice().chi(&sim[2], &sim[1]).unwrap(), BigInt::from(3));
        for i in 1..3 {
            assert_eq!(
                tilt_simples(&s, i).unwrap(),
                simple_classes(&mutate(&s, i, Direction::Left).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn json_round_trip() {
        let s = apply_braid(&p(2), &word(3, "s1 s2^-1")).unwrap();
        let j = s.to_json();
        assert_eq!(j["space"], "P2");
        assert!(j["classes"][0][0].is_string());
        let back = ExcState::from_json(&j).unwrap();
        assert_eq!(back, s);
        assert!(!back.in_seed_orbit_certified());
        assert!(ExcState::from_json(&p(2).to_json()).unwrap().in_seed_orbit_certified());
        let bad = json!({"space": "P2", "classes": [["1","0","0"],["1","0","0"],["0","0","1"]]});
        assert!(ExcState::from_json(&bad).unwrap_err().is_invariant());
    }

    #[test]
    fn gamma_acts_as_canonical_twist() {
        for m in 1..=3 {
            let s = p(m);
            let n = s.n();
            let g = crate::braid::gamma(n).unwrap();
            let out = apply_braid(&s, &g).unwrap();
            for i in 0..n {
                assert_eq!(out.classes()[i], s.lattice().twist_class(&s.classes()[i]));
            }
        }
    }
}
