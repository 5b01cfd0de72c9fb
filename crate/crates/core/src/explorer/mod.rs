//! Orbit graphs: breadth-first closure of a seed under a generator set,
//! deduplicated on exact coordinate keys.
//!
//! Each level of the frontier is expanded in parallel and merged in the
//! order `(key, generator)`, so the output does not depend on the number of
//! threads.

pub mod export;
pub mod verify;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::Value;

use crate::collections::{mutate, seed_state, Direction, ExcState};
use crate::error::{Error, Result};
use crate::lattice::ProjectiveSpace;
use crate::markov::{Involution, MarkovTriple};
use crate::spherical::{act, from_exceptional, SphState};
use crate::words::BraidLetter;

/// Node payloads of an orbit graph.
pub trait OrbitState: Clone + Send + Sync {
    /// Exact canonical key; equal keys mean equal states.
    fn key(&self) -> String;
    fn payload(&self) -> Value;
}

impl OrbitState for ExcState {
    fn key(&self) -> String {
        ExcState::key(self)
    }
    fn payload(&self) -> Value {
        self.to_json()
    }
}

impl OrbitState for SphState {
    fn key(&self) -> String {
        SphState::key(self)
    }
    fn payload(&self) -> Value {
        self.to_json()
    }
}

impl OrbitState for MarkovTriple {
    fn key(&self) -> String {
        MarkovTriple::key(self)
    }
    fn payload(&self) -> Value {
        self.to_json()
    }
}

type StepFn<S> = Arc<dyn Fn(&S) -> Result<S> + Send + Sync>;

#[derive(Clone)]
pub struct Generator<S> {
    pub label: String,
    pub apply: StepFn<S>,
}

impl<S> Generator<S> {
    pub fn new(label: impl Into<String>, f: impl Fn(&S) -> Result<S> + Send + Sync + 'static) -> Self {
        Generator {
            label: label.into(),
            apply: Arc::new(f),
        }
    }
}

/// Pruning predicate for exploration.
pub type KeepFn<S> = Box<dyn Fn(&S) -> bool + Send + Sync>;

pub struct ExploreOptions<S> {
    /// Maximum word length. `None` runs until the frontier is empty, which
    /// only terminates together with a pruning predicate.
    pub depth: Option<usize>,
    /// States failing the predicate are dropped, with their edges.
    pub keep: Option<KeepFn<S>>,
    pub threads: Option<usize>,
    pub kind: String,
    pub seed: String,
}

impl<S> ExploreOptions<S> {
    pub fn depth(kind: &str, seed: &str, depth: usize) -> Self {
        ExploreOptions {
            depth: Some(depth),
            keep: None,
            threads: None,
            kind: kind.into(),
            seed: seed.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMeta {
    pub kind: String,
    pub seed: String,
    /// Largest depth at which a node was found.
    pub depth: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub key: String,
    pub depth: usize,
    /// Labels of a shortest word reaching the node, leftmost applied last.
    pub word: Vec<String>,
    pub parent: Option<usize>,
    pub payload: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub from: usize,
    pub to: usize,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGraph {
    pub meta: GraphMeta,
    pub nodes: Vec<GraphNode>,
    pub edges: Vec<GraphEdge>,
    /// Edges that landed on an already known node.
    pub dedup_hits: usize,
    /// Dedup hits other than an edge straight back to the source's parent.
    pub revisits: usize,
    index: HashMap<String, usize>,
}

impl OrbitGraph {
    pub fn empty(kind: &str, seed: &str, generators: Vec<String>) -> Self {
        OrbitGraph {
            meta: GraphMeta {
                kind: kind.into(),
                seed: seed.into(),
                depth: 0,
                generators,
            },
            nodes: vec![],
            edges: vec![],
            dedup_hits: 0,
            revisits: 0,
            index: HashMap::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn find(&self, key: &str) -> Option<&GraphNode> {
        self.index.get(key).map(|&i| &self.nodes[i])
    }

    pub fn word_string(&self, node: &GraphNode) -> String {
        if node.word.is_empty() {
            "1".into()
        } else {
            node.word.join(" ")
        }
    }

    fn add_node(&mut self, key: String, depth: usize, word: Vec<String>, parent: Option<usize>, payload: Value) -> usize {
        let i = self.nodes.len();
        self.index.insert(key.clone(), i);
        self.nodes.push(GraphNode {
            key,
            depth,
            word,
            parent,
            payload,
        });
        i
    }
}

fn run_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(k) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k.max(1))
                .build()
                .map_err(|e| Error::Unsupported(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// One generator applied to one frontier state: the new key and state, or
/// nothing when the state is pruned.
type Step<S> = Result<Option<(String, S)>>;

/// Breadth-first closure of `seed` under `gens`.
pub fn explore<S: OrbitState>(seed: S, gens: &[Generator<S>], opts: &ExploreOptions<S>) -> Result<OrbitGraph> {
    let labels = gens.iter().map(|g| g.label.clone()).collect();
    let mut g = OrbitGraph::empty(&opts.kind, &opts.seed, labels);
    let keep = |s: &S| opts.keep.as_ref().is_none_or(|f| f(s));
    if !keep(&seed) {
        return Ok(g);
    }
    let root = g.add_node(seed.key(), 0, vec![], None, seed.payload());
    let mut frontier: Vec<(usize, S)> = vec![(root, seed)];
    let mut depth = 0;
    while !frontier.is_empty() && opts.depth.is_none_or(|d| depth < d) {
        let expanded: Vec<Vec<Step<S>>> = run_pool(opts.threads, || {
            frontier
                .par_iter()
                .map(|(_, s)| {
                    gens.iter()
                        .map(|gen| {
                            let t = (gen.apply)(s)?;
                            Ok(if keep(&t) { Some((t.key(), t)) } else { None })
                        })
                        .collect()
                })
                .collect()
        })?;
        let mut next = Vec::new();
        for ((src, _), children) in frontier.iter().zip(expanded) {
            for (gen, child) in gens.iter().zip(children) {
                let child = child.map_err(|e| {
                    let mut word = vec![gen.label.clone()];
                    word.extend(g.nodes[*src].word.iter().cloned());
                    Error::Invariant(format!("{e} (word: {})", word.join(" ")))
                })?;
                let Some((key, state)) = child else { continue };
                let to = match g.index.get(&key) {
                    Some(&to) => {
                        g.dedup_hits += 1;
                        if g.nodes[*src].parent != Some(to) {
                            g.revisits += 1;
                        }
                        to
                    }
                    None => {
                        let mut word = vec![gen.label.clone()];
                        word.extend(g.nodes[*src].word.iter().cloned());
                        let payload = state.payload();
                        let to = g.add_node(key, depth + 1, word, Some(*src), payload);
                        next.push((to, state));
                        to
                    }
                };
                g.edges.push(GraphEdge {
                    from: *src,
                    to,
                    label: gen.label.clone(),
                });
            }
        }
        if !next.is_empty() {
            g.meta.depth = depth + 1;
        }
        next.sort_by(|a, b| g.nodes[a.0].key.cmp(&g.nodes[b.0].key));
        frontier = next;
        depth += 1;
    }
    Ok(g)
}

/// `σ_i` and `σ_i⁻¹` as mutations, in the order `s1, s1^-1, s2, …`.
pub fn sigma_generators(n: usize) -> Vec<Generator<ExcState>> {
    let mut out = Vec::new();
    for i in 1..n {
        out.push(Generator::new(format!("s{i}"), move |s: &ExcState| mutate(s, i, Direction::Left)));
        out.push(Generator::new(format!("s{i}^-1"), move |s: &ExcState| {
            mutate(s, i, Direction::Right)
        }));
    }
    out
}

/// `τ_i` and `τ_i⁻¹` for `i ∈ Z_n`.
pub fn tau_generators(n: usize) -> Vec<Generator<SphState>> {
    let mut out = Vec::new();
    for i in 0..n {
        for inverse in [false, true] {
            let l = BraidLetter::Tau { index: i, inverse };
            out.push(Generator::new(l.to_string(), move |s: &SphState| act(s, l)));
        }
    }
    out
}

pub fn involution_generators() -> Vec<Generator<MarkovTriple>> {
    Involution::ALL
        .into_iter()
        .map(|g| Generator::new(g.label(), move |t: &MarkovTriple| Ok(g.apply(t))))
        .collect()
}

/// Tilting graph of exceptional collections on `Pᵐ` around the seed.
pub fn explore_str(space: ProjectiveSpace, depth: usize, threads: Option<usize>) -> Result<OrbitGraph> {
    let seed = seed_state(space);
    let mut opts = ExploreOptions::depth("str", &space.to_string(), depth);
    opts.threads = threads;
    explore(seed.clone(), &sigma_generators(seed.n()), &opts)
}

/// Tilting graph of spherical collections on `ω_{Pᵐ}` around the seed.
pub fn explore_strw(space: ProjectiveSpace, depth: usize, threads: Option<usize>) -> Result<OrbitGraph> {
    let seed = from_exceptional(&seed_state(space))?;
    let mut opts = ExploreOptions::depth("strw", &space.to_string(), depth);
    opts.threads = threads;
    explore(seed.clone(), &tau_generators(seed.n()), &opts)
}

/// Markov tree up to a word depth.
pub fn explore_markov_depth(depth: usize, threads: Option<usize>) -> Result<OrbitGraph> {
    let mut opts = ExploreOptions::depth("markov", "(3, 3, 3)", depth);
    opts.threads = threads;
    explore(MarkovTriple::root(), &involution_generators(), &opts)
}

/// Markov tree of all triples with weight at most `bound`.
pub fn explore_markov_bound(bound: &BigInt, threads: Option<usize>) -> Result<OrbitGraph> {
    let b = bound.clone();
    let opts = ExploreOptions {
        depth: None,
        keep: Some(Box::new(move |t: &MarkovTriple| t.weight() <= b)),
        threads,
        kind: "markov".into(),
        seed: "(3, 3, 3)".into(),
    };
    explore(MarkovTriple::root(), &involution_generators(), &opts)
}

/// Thread cap from `HELIXLAB_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var("HELIXLAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&k: &usize| k > 0)
}
