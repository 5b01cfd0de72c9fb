//! Spherical collections on the local Calabi-Yau `ω_Z`, modelled by the
//! classes of their simples, with the `B_n` action by spherical twists.
//!
//! `K(D_ω)` is identified with `K(Z)` through pushforward along the zero
//! section. The pairing is `⟨x, y⟩ = χ(x, y) + (-1)^{dim ω} χ(y, x)`; for
//! `P²` this is the skew form `χ - χᵀ`.
//!
//! Letters act on positions `(i-1, i)` taken mod `n`:
//! `τ_i: (A, B) ↦ (B[-1], Φ_B(A))`, `τ_i⁻¹: (A, B) ↦ (Φ_A⁻¹(B), A[-1])`,
//! and `r` rotates `(S_0, …, S_{n-1}) ↦ (S_{n-1}, S_0, …, S_{n-2})`.
//! Words act on the left, rightmost letter first.

use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::braid::{alpha, BraidWordB};
use crate::collections::{dual_classes, ExcState};
use crate::error::{Error, Result};
use crate::lattice::{builtin_lattice, CyForm, KClass, ProjectiveSpace};
use crate::markov::{make_triple, MarkovTriple};
use crate::matrix::IntMatrix;
use crate::serial::vector_from_json;
use crate::words::BraidLetter;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TwistDirection {
    Forward,
    Inverse,
}

#[derive(Debug, Clone)]
pub struct SphState {
    form: Arc<CyForm>,
    space: Option<ProjectiveSpace>,
    simples: Vec<KClass>,
}

impl PartialEq for SphState {
    fn eq(&self, other: &Self) -> bool {
        self.simples == other.simples
            && (Arc::ptr_eq(&self.form, &other.form) || self.form == other.form)
    }
}

impl Eq for SphState {}

impl Hash for SphState {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.simples.hash(state);
    }
}

impl SphState {
    pub fn new(
        form: Arc<CyForm>,
        space: Option<ProjectiveSpace>,
        simples: Vec<KClass>,
    ) -> Result<Self> {
        let n = form.rank();
        if simples.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: simples.len(),
            });
        }
        if let Some(c) = simples.iter().find(|c| c.rank() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: c.rank(),
            });
        }
        let s = SphState {
            form,
            space,
            simples,
        };
        let det = s.class_matrix().det()?;
        if !det.abs().is_one() {
            return Err(Error::Invariant(format!(
                "simples have determinant {det}, not ±1"
            )));
        }
        Ok(s)
    }

    pub fn form(&self) -> &Arc<CyForm> {
        &self.form
    }

    pub fn space(&self) -> Option<ProjectiveSpace> {
        self.space
    }

    pub fn simples(&self) -> &[KClass] {
        &self.simples
    }

    pub fn n(&self) -> usize {
        self.simples.len()
    }

    /// Dimension of `ω_Z`.
    pub fn n_cy(&self) -> usize {
        self.form.cy_dim()
    }

    pub fn pair(&self, i: usize, j: usize) -> BigInt {
        self.form.pair(&self.simples[i], &self.simples[j])
    }

    pub fn key(&self) -> String {
        let parts: Vec<String> = self.simples.iter().map(KClass::key).collect();
        parts.join(";")
    }

    pub fn class_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(&self.simples.iter().map(|c| c.0.clone()).collect::<Vec<_>>())
            .expect("simples share the lattice rank")
    }

    fn with_simples(&self, simples: Vec<KClass>) -> SphState {
        SphState {
            form: self.form.clone(),
            space: self.space,
            simples,
        }
    }

    pub fn to_json(&self) -> Value {
        let space = self
            .space
            .map(|s| s.to_string())
            .unwrap_or_else(|| "custom".into());
        json!({ "space": space, "simples": self.simples, "ordered": true })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let space: ProjectiveSpace = v
            .get("space")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("missing \"space\"".into()))?
            .parse()?;
        let simples = v
            .get("simples")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"simples\"".into()))?
            .iter()
            .map(|c| vector_from_json(c).map(KClass))
            .collect::<Result<Vec<_>>>()?;
        let form = Arc::new(CyForm::from_lattice(&builtin_lattice(space)));
        SphState::new(form, Some(space), simples)
    }
}

/// `S_j = (-1)ʲ F_{n-1-j}` where `F` is the dual collection.
pub fn from_exceptional(state: &ExcState) -> Result<SphState> {
    let f = dual_classes(state)?;
    let n = f.len();
    let simples = (0..n)
        .map(|j| {
            let c = f[n - 1 - j].clone();
            if j % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let form = Arc::new(CyForm::from_lattice(state.lattice()));
    SphState::new(form, state.lattice().space(), simples)
}

/// Class of `Φ_s(f)` (forward) or `Φ_s⁻¹(f)` (inverse).
pub fn twist_class(form: &CyForm, s: &KClass, f: &KClass, dir: TwistDirection) -> KClass {
    let mut k = form.pair(s, f);
    if dir == TwistDirection::Inverse && form.cy_dim() % 2 == 1 {
        k = -k;
    }
    f - &(&k * s)
}

/// Applies a single `τ` or `r` letter.
pub fn act(state: &SphState, letter: BraidLetter) -> Result<SphState> {
    let n = state.n();
    let mut s = state.simples.clone();
    match letter {
        BraidLetter::Rot { inverse: false } => s.rotate_right(1),
        BraidLetter::Rot { inverse: true } => s.rotate_left(1),
        BraidLetter::Tau { index, inverse } => {
            if index >= n {
                return Err(Error::IndexOutOfRange { index, n });
            }
            let (p, q) = ((index + n - 1) % n, index);
            let (a, b) = (s[p].clone(), s[q].clone());
            if inverse {
                s[p] = twist_class(&state.form, &a, &b, TwistDirection::Inverse);
                s[q] = -a;
            } else {
                s[q] = twist_class(&state.form, &b, &a, TwistDirection::Forward);
                s[p] = -b;
            }
        }
        other => return Err(Error::Parse(format!("{other} is not a τ or r letter"))),
    }
    Ok(state.with_simples(s))
}

/// Applies a word, rightmost letter first.
pub fn apply_b_word(state: &SphState, w: &BraidWordB) -> Result<SphState> {
    if w.n() != state.n() {
        return Err(Error::DimensionMismatch {
            expected: state.n(),
            got: w.n(),
        });
    }
    let mut cur = state.clone();
    for &l in w.letters().iter().rev() {
        cur = act(&cur, l)?;
    }
    Ok(cur)
}

/// Global twist `Φ_s` applied to every simple.
pub fn twist_all(state: &SphState, s: &KClass) -> SphState {
    let simples = state
        .simples
        .iter()
        .map(|f| twist_class(&state.form, s, f, TwistDirection::Forward))
        .collect();
    state.with_simples(simples)
}

/// Checks that `α_i` acts on the simples as the twist `Φ_{S_i}`.
pub fn alpha_check(state: &SphState, i: usize) -> Result<bool> {
    let lhs = apply_b_word(state, &alpha(state.n(), i)?)?;
    Ok(lhs == twist_all(state, &state.simples[i]))
}

/// `T_ω = (-⟨S_1,S_0⟩, -⟨S_2,S_1⟩, -⟨S_0,S_2⟩)` for rank 3.
pub fn t_omega(state: &SphState) -> Result<MarkovTriple> {
    if state.n() != 3 {
        return Err(Error::Unsupported(format!(
            "T_ω is defined for rank 3, got rank {}",
            state.n()
        )));
    }
    make_triple(-state.pair(1, 0), -state.pair(2, 1), -state.pair(0, 2))
}

/// Checks that the simples of the left-shifted thread
/// `(E_{n-1} ⊗ ω, E_0, …, E_{n-2})` are
/// `Φ_{S_{n-1}}(S_{n-1}, S_0, …, S_{n-2})`.
pub fn rotate_check(state: &ExcState) -> Result<bool> {
    let n = state.n();
    let c = state.classes();
    let mut shifted = vec![state.lattice().twist_class(&c[n - 1])];
    shifted.extend_from_slice(&c[..n - 1]);
    let thread = ExcState::new(state.lattice().clone(), shifted)?;
    let lhs = from_exceptional(&thread)?;
    let base = from_exceptional(state)?;
    let last = base.simples[n - 1].clone();
    let rotated = act(&base, BraidLetter::Rot { inverse: false })?;
    Ok(lhs == twist_all(&rotated, &last))
}

/// If `b` is `a` with its simples rotated, returns the `k` with
/// `rᵏ(a) = b`. States related this way describe the same cyclically
/// ordered collection.
pub fn rotation_offset(a: &SphState, b: &SphState) -> Option<usize> {
    let n = a.n();
    if n != b.n() || a.form != b.form {
        return None;
    }
    (0..n).find(|&k| {
        let mut s = a.simples.clone();
        s.rotate_right(k);
        s == b.simples
    })
}

pub fn same_up_to_rotation(a: &SphState, b: &SphState) -> bool {
    rotation_offset(a, b).is_some()
}

/// Coordinates in `Λ = K/⟨S_0+S_1+S_2⟩` with respect to `([S_0], [S_1])`.
fn lambda_coords(basis: &IntMatrix, x: &KClass) -> Result<[BigInt; 2]> {
    let inv = basis.inverse()?;
    let c = inv.mul_vec(&x.0)?;
    Ok([&c[0] - &c[2], &c[1] - &c[2]])
}

/// Matrices of `α_1` and `r` on `Λ` in the basis `([S_0], [S_1])`; the
/// columns are the coordinates of the images of the basis vectors.
pub fn lambda_matrices(state: &SphState) -> Result<(IntMatrix, IntMatrix)> {
    if t_omega(state)? != MarkovTriple::root() {
        return Err(Error::Invariant(
            "state does not lie over (3, 3, 3)".into(),
        ));
    }
    let s = &state.simples;
    let rho = &(&s[0] + &s[1]) + &s[2];
    let radical = state.form.radical();
    let spanned = radical.len() == 1 && (radical[0] == rho || radical[0] == -rho.clone());
    if !spanned {
        return Err(Error::Invariant(format!(
            "radical {radical:?} is not spanned by S_0 + S_1 + S_2 = {rho}"
        )));
    }
    let basis = state.class_matrix();
    let image = |w: &BraidWordB| -> Result<IntMatrix> {
        let t = apply_b_word(state, w)?;
        let cols = [
            lambda_coords(&basis, &t.simples[0])?,
            lambda_coords(&basis, &t.simples[1])?,
        ];
        IntMatrix::from_columns(&cols.map(|c| c.to_vec()))
    };
    Ok((image(&alpha(3, 1)?)?, image(&BraidWordB::rot(3, 1))?))
}

/// Sign pattern of the pairing on rank-3 simples: every off-diagonal
/// `⟨S_i, S_j⟩` with `i - j ≡ 1 mod 3` is non-positive.
pub fn degree_pattern_holds(state: &SphState) -> bool {
    let n = state.n();
    (0..n).all(|j| {
        let i = (j + 1) % n;
        !state.pair(i, j).is_positive() && state.pair(i, i).is_zero() == state.form.is_skew()
    })
}
