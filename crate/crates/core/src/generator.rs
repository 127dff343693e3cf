//! Test instances: random triangle-free graphs filtered by the S1,2,4
//! recognizer, C5 blow-ups, named fixtures, and frozen graphs that drive the
//! solver through specific branches.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GenerateError;
use crate::graph::{Vertex, VertexSet, Weight, WeightedGraph};
use crate::recognition::{check_class, find_induced_s124, ForbiddenWitness};
use crate::solver::{CaseLabel, ComponentContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    RandomTriangleFree,
    C5Blowup,
    Path,
    Cycle,
    Groetzsch,
    Petersen,
    /// `k` five-cycles sharing one vertex, `n = 4k + 1`.
    StarOfC5s,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::RandomTriangleFree,
        Family::C5Blowup,
        Family::Path,
        Family::Cycle,
        Family::Groetzsch,
        Family::Petersen,
        Family::StarOfC5s,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::RandomTriangleFree => "random-triangle-free",
            Family::C5Blowup => "c5-blowup",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Groetzsch => "groetzsch",
            Family::Petersen => "petersen",
            Family::StarOfC5s => "star-of-c5s",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.as_str() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    /// Target size. Fixed-size fixtures ignore it; `star-of-c5s` rounds it
    /// down to `4k + 1`.
    pub n: usize,
    /// Edge probability for `random-triangle-free`.
    pub edge_density: f64,
    /// Inclusive range of vertex weights.
    pub weight_range: (Weight, Weight),
    pub seed: u64,
    /// Explicit class sizes for `c5-blowup`; otherwise `n` is spread evenly.
    pub class_sizes: Option<[usize; 5]>,
    /// Samples tried before `random-triangle-free` gives up.
    pub max_retries: usize,
}

impl GenSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GenSpec {
            family,
            n,
            edge_density: 0.3,
            weight_range: (1, 1),
            seed,
            class_sizes: None,
            max_retries: 1000,
        }
    }

    pub fn density(mut self, p: f64) -> Self {
        self.edge_density = p;
        self
    }

    pub fn weights(mut self, lo: Weight, hi: Weight) -> Self {
        self.weight_range = (lo, hi);
        self
    }

    pub fn classes(mut self, sizes: [usize; 5]) -> Self {
        self.class_sizes = Some(sizes);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generated {
    pub graph: WeightedGraph,
    /// Verdict of [`check_class`] on `graph`.
    pub certificate: Result<(), ForbiddenWitness>,
}

impl Generated {
    pub fn in_class(&self) -> bool {
        self.certificate.is_ok()
    }
}

pub fn generate(spec: &GenSpec) -> Result<Generated, GenerateError> {
    let (lo, hi) = spec.weight_range;
    if lo > hi {
        return Err(GenerateError::InvalidSpec(format!(
            "weight range {lo}..={hi} is empty"
        )));
    }
    if !(0.0..=1.0).contains(&spec.edge_density) {
        return Err(GenerateError::InvalidSpec(format!(
            "edge density {} outside [0, 1]",
            spec.edge_density
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let (n, edges) = match spec.family {
        Family::RandomTriangleFree => {
            random_in_class(spec.n, spec.edge_density, spec.max_retries, &mut rng)?
        }
        Family::C5Blowup => {
            let sizes = spec.class_sizes.unwrap_or_else(|| even_classes(spec.n));
            c5_blowup_edges(sizes)
        }
        Family::Path => (spec.n, (1..spec.n).map(|i| (i - 1, i)).collect()),
        Family::Cycle => {
            if spec.n < 3 {
                return Err(GenerateError::InvalidSpec("a cycle needs n >= 3".into()));
            }
            (spec.n, (0..spec.n).map(|i| (i, (i + 1) % spec.n)).collect())
        }
        Family::Groetzsch => groetzsch_edges(),
        Family::Petersen => petersen_edges(),
        Family::StarOfC5s => {
            let k = spec.n.saturating_sub(1) / 4;
            if k == 0 {
                return Err(GenerateError::InvalidSpec(
                    "star-of-c5s needs n >= 5".into(),
                ));
            }
            star_of_c5s_edges(k)
        }
    };
    let weights = (0..n).map(|_| rng.gen_range(lo..=hi)).collect();
    let graph = WeightedGraph::new(n, &edges, weights).expect("generated edges are simple");
    let certificate = check_class(&graph);
    Ok(Generated { graph, certificate })
}

/// Inserts candidate edges in random order with probability `p`, skipping any
/// that would close a triangle, and resamples while an induced S1,2,4 exists.
fn random_in_class(
    n: usize,
    p: f64,
    retries: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(usize, Vec<(Vertex, Vertex)>), GenerateError> {
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for _ in 0..retries.max(1) {
        pairs.shuffle(rng);
        let mut adj = vec![VertexSet::with_capacity(n); n];
        let mut edges = Vec::new();
        for &(u, v) in &pairs {
            if rng.gen_bool(p) && adj[u].is_disjoint(&adj[v]) {
                adj[u].insert(v);
                adj[v].insert(u);
                edges.push((u, v));
            }
        }
        let g = WeightedGraph::unweighted(n, &edges).expect("simple by construction");
        if find_induced_s124(&g).is_none() {
            edges.sort_unstable();
            return Ok((n, edges));
        }
    }
    Err(GenerateError::RetryCapExhausted(retries.max(1)))
}

/// Sizes differing by at most one, larger classes first.
pub fn even_classes(n: usize) -> [usize; 5] {
    let mut sizes = [n / 5; 5];
    for s in sizes.iter_mut().take(n % 5) {
        *s += 1;
    }
    sizes
}

/// Class `i` occupies a contiguous id range; classes `i` and `i + 1 (mod 5)`
/// are completely joined.
pub fn c5_blowup_edges(sizes: [usize; 5]) -> (usize, Vec<(Vertex, Vertex)>) {
    let mut start = [0; 5];
    for i in 1..5 {
        start[i] = start[i - 1] + sizes[i - 1];
    }
    let n = start[4] + sizes[4];
    let mut edges = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        for a in start[i]..start[i] + sizes[i] {
            for b in start[j]..start[j] + sizes[j] {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    (n, edges)
}

/// The Mycielskian of C5: cycle `0..5`, shadows `5..10`, hub `10`.
fn groetzsch_edges() -> (usize, Vec<(Vertex, Vertex)>) {
    let mut edges = Vec::new();
    for i in 0..5 {
        let j = (i + 1) % 5;
        edges.push((i, j));
        edges.push((i, 5 + j));
        edges.push((j, 5 + i));
        edges.push((5 + i, 10));
    }
    (11, edges)
}

fn petersen_edges() -> (usize, Vec<(Vertex, Vertex)>) {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    (10, edges)
}

fn star_of_c5s_edges(k: usize) -> (usize, Vec<(Vertex, Vertex)>) {
    let mut edges = Vec::new();
    for c in 0..k {
        let b = 1 + 4 * c;
        edges.extend([
            (0, b),
            (b, b + 1),
            (b + 1, b + 2),
            (b + 2, b + 3),
            (0, b + 3),
        ]);
    }
    (4 * k + 1, edges)
}

/// A frozen graph that sends the solver through one named branch, with the
/// frame `(v, d)` and component `K` in which the branch is taken.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetedInstance {
    pub label: CaseLabel,
    pub graph: WeightedGraph,
    pub v: Vertex,
    pub d: Vertex,
    pub component: VertexSet,
    /// Which structure the graph realizes.
    pub recipe: &'static str,
}

impl TargetedInstance {
    pub fn context(&self) -> ComponentContext {
        ComponentContext::new(&self.graph, self.v, self.d, self.component.clone())
    }
}

struct Frozen {
    label: CaseLabel,
    n: usize,
    edges: &'static [(Vertex, Vertex)],
    v: Vertex,
    d: Vertex,
    recipe: &'static str,
}

const FROZEN: &[Frozen] = &[
    Frozen {
        label: CaseLabel::Bipartite,
        n: 6,
        edges: &[(0, 1), (0, 3), (1, 2), (2, 4), (3, 4), (3, 5)],
        v: 0,
        d: 1,
        recipe: "C5 with a pendant; A(0) is a path",
    },
    Frozen {
        label: CaseLabel::Occurrence1,
        n: 7,
        edges: &[(0, 3), (0, 6), (1, 2), (1, 3), (1, 5), (2, 6), (4, 5)],
        v: 6,
        d: 0,
        recipe: "C5 with a pendant path; K is the path 3-1-5-4 with H = {3}",
    },
    Frozen {
        label: CaseLabel::NearlyBipartite,
        n: 9,
        edges: &[
            (0, 1),
            (0, 6),
            (1, 2),
            (1, 7),
            (2, 4),
            (3, 6),
            (3, 8),
            (4, 8),
            (5, 7),
            (7, 8),
        ],
        v: 5,
        d: 7,
        recipe: "K is not bipartite but C5-free",
    },
    Frozen {
        label: CaseLabel::Case111,
        n: 7,
        edges: &[
            (0, 2),
            (0, 4),
            (1, 2),
            (1, 6),
            (2, 5),
            (3, 5),
            (4, 6),
            (5, 6),
        ],
        v: 3,
        d: 5,
        recipe: "Z bipartite, every C5 of K has two H vertices, no green component",
    },
    Frozen {
        label: CaseLabel::Case112111,
        n: 8,
        edges: &[
            (0, 2),
            (0, 4),
            (0, 5),
            (1, 2),
            (1, 6),
            (2, 7),
            (3, 6),
            (4, 6),
            (4, 7),
        ],
        v: 5,
        d: 0,
        recipe: "one green component T, contacted properly on one side only",
    },
    Frozen {
        label: CaseLabel::Case112112,
        n: 11,
        edges: &[
            (0, 5),
            (0, 7),
            (0, 10),
            (1, 4),
            (1, 6),
            (2, 3),
            (3, 5),
            (3, 8),
            (5, 6),
            (6, 7),
            (7, 8),
            (7, 9),
            (9, 10),
        ],
        v: 1,
        d: 6,
        recipe: "two green components, each contacted properly on one side",
    },
    Frozen {
        label: CaseLabel::Case11212,
        n: 9,
        edges: &[
            (0, 5),
            (1, 2),
            (1, 5),
            (1, 8),
            (2, 4),
            (2, 7),
            (3, 7),
            (4, 6),
            (5, 6),
            (6, 7),
        ],
        v: 3,
        d: 7,
        recipe: "a green component contacted properly on both sides",
    },
    Frozen {
        label: CaseLabel::Case1122,
        n: 10,
        edges: &[
            (0, 1),
            (0, 4),
            (0, 6),
            (1, 3),
            (1, 5),
            (2, 6),
            (3, 7),
            (3, 9),
            (4, 5),
            (4, 9),
            (5, 8),
        ],
        v: 8,
        d: 5,
        recipe: "an H vertex contacts two green components properly",
    },
    Frozen {
        label: CaseLabel::Case12,
        n: 7,
        edges: &[(0, 3), (0, 6), (1, 2), (1, 3), (1, 5), (2, 6), (4, 5)],
        v: 4,
        d: 5,
        recipe: "K is a C5 meeting H in the single vertex 1",
    },
    Frozen {
        label: CaseLabel::Case2,
        n: 8,
        edges: &[
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 5),
            (3, 5),
            (4, 6),
            (4, 7),
            (5, 6),
        ],
        v: 7,
        d: 4,
        recipe: "Z contains a C5",
    },
];

/// The frozen instance for `label` (as printed by [`CaseLabel::as_str`]).
pub fn targeted_case_instance(label: &str) -> Result<TargetedInstance, GenerateError> {
    let unknown = || GenerateError::UnknownCase(label.to_string());
    let label = CaseLabel::parse(label).ok_or_else(unknown)?;
    let f = FROZEN
        .iter()
        .find(|f| f.label == label)
        .ok_or_else(unknown)?;
    let graph = WeightedGraph::unweighted(f.n, f.edges).expect("frozen edges are simple");
    let anti = graph.anti_neighborhood(f.v);
    let component = graph
        .connected_components(&anti)
        .into_iter()
        .map(|c| c.vertices)
        .find(|k| graph.contacts(f.d, k))
        .expect("frozen d contacts a component of A(v)");
    Ok(TargetedInstance {
        label,
        graph,
        v: f.v,
        d: f.d,
        component,
        recipe: f.recipe,
    })
}
