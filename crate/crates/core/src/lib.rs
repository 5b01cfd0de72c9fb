//! Exact K-theory engine for braid group actions on exceptional collections
//! on projective space and on spherical collections on its canonical bundle.
//!
//! All arithmetic is over arbitrary-precision integers. Objects are modelled
//! by their classes in a Grothendieck lattice with the Euler form.
//!
//! ```
//! use helixlab::{apply_braid, seed_state, t_map, BraidWordA, ProjectiveSpace};
//!
//! let seed = seed_state(ProjectiveSpace::new(2).unwrap());
//! let w = BraidWordA::parse(3, "s1").unwrap();
//! let t = t_map(&apply_braid(&seed, &w).unwrap()).unwrap();
//! assert_eq!(t.to_string(), "(3, 6, 3)");
//! ```

pub mod braid;
pub mod collections;
pub mod error;
pub mod explorer;
pub mod lattice;
pub mod markov;
pub mod matrix;
pub mod serial;
pub mod spherical;
pub mod words;

pub use braid::{
    alpha, annular_relations, artin_relations, delta, equal_in_an, equal_mod_gamma, gamma,
    gamma_descending, h_map, verify_conj_lemma, BraidWordA, BraidWordB, Relation,
};
pub use collections::{
    apply_braid, dual_classes, helix_class, mutate, quiver, seed_state, simple_classes,
    t_map, tilt_simples, Direction, ExcState,
};
pub use error::{Error, Result};
pub use explorer::export::{export_dot, export_json};
pub use explorer::verify::{verify_suite, Report, Suite, VerifyParams};
pub use explorer::{explore, OrbitGraph};
pub use lattice::{
    builtin_lattice, canonical_twist_matrix, chi, cohomology_dims, line_bundle_class, radical,
    skew_form, CyForm, EulerLattice, KClass, ProjectiveSpace, SkewLattice,
};
pub use markov::{
    act_psl2, descend, enumerate_tree, f_map, g_map, make_triple, neighbors, psl2_of_word,
    MarkovTriple, Psl2Mat, PslLetter,
};
pub use matrix::IntMatrix;
pub use spherical::{
    alpha_check, apply_b_word, from_exceptional, lambda_matrices, rotate_check, t_omega,
    twist_class, SphState, TwistDirection,
};
pub use words::{apply_endo, braid_rep, compose, generator_endo, reduce, FreeEndo, FreeWord};
