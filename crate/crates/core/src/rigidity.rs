//! Frameworks, the edge measurement map, rigidity matrices and the generic
//! rigidity matroid.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::graph::Graph;
use crate::matrix::FieldMatrix;
use crate::matroid::{coloops_via_circuits, Matroid, MatroidOracle};
use crate::rng::Rng;
use crate::sampling::{consensus, maximum};

/// `binom(d + 1, 2)`, the dimension of the space of trivial motions
/// and of symmetric `d x d` matrices.
pub fn trivial_dim(d: usize) -> usize {
    d * (d + 1) / 2
}

/// A graph with a point of `F_p^d` for every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Framework {
    graph: Graph,
    dim: usize,
    config: Vec<Fp>,
}

impl Framework {
    /// `config` lists coordinates vertex by vertex (`n * d` entries).
    pub fn new(graph: Graph, dim: usize, config: Vec<Fp>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDimension);
        }
        assert_eq!(config.len(), graph.vertex_count() * dim, "one point per vertex");
        Ok(Framework { graph, dim, config })
    }

    /// Coordinates drawn uniformly from `[1, p - 1]`.
    pub fn random(graph: &Graph, dim: usize, rng: &mut Rng) -> Result<Self> {
        let config = (0..graph.vertex_count() * dim).map(|_| rng.nonzero_scalar()).collect();
        Framework::new(graph.clone(), dim, config)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn config(&self) -> &[Fp] {
        &self.config
    }

    pub fn point(&self, v: usize) -> &[Fp] {
        &self.config[v * self.dim..(v + 1) * self.dim]
    }

    /// The same configuration on another graph with the same vertex set.
    pub fn with_graph(&self, graph: Graph) -> Framework {
        assert_eq!(graph.vertex_count(), self.graph.vertex_count());
        Framework {
            graph,
            dim: self.dim,
            config: self.config.clone(),
        }
    }
}

pub fn random_framework(graph: &Graph, d: usize, rng: &mut Rng) -> Result<Framework> {
    Framework::random(graph, d, rng)
}

/// Squared edge lengths of `config` (vertex-major, `d` coordinates each).
pub fn measure(graph: &Graph, d: usize, config: &[Fp]) -> Vec<Fp> {
    graph
        .edges()
        .iter()
        .map(|&(u, v)| {
            (0..d)
                .map(|i| {
                    let diff = config[u * d + i] - config[v * d + i];
                    diff * diff
                })
                .sum()
        })
        .collect()
}

pub fn measurement(f: &Framework) -> Vec<Fp> {
    measure(&f.graph, f.dim, &f.config)
}

/// Jacobian of the measurement map with the constant factor 2 dropped.
pub fn rigidity_matrix(f: &Framework) -> FieldMatrix {
    let d = f.dim;
    let n = f.graph.vertex_count();
    let mut r = FieldMatrix::zeros(f.graph.edge_count(), n * d);
    for (row, &(u, v)) in f.graph.edges().iter().enumerate() {
        for i in 0..d {
            let diff = f.config[u * d + i] - f.config[v * d + i];
            r[(row, u * d + i)] = diff;
            r[(row, v * d + i)] = -diff;
        }
    }
    r
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::ZeroDimension)
    } else {
        Ok(())
    }
}

/// The rigidity matroid represented at `reps` independent random frameworks.
pub fn rigidity_oracle(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<MatroidOracle> {
    check_dim(d)?;
    let reps = (0..reps.max(1))
        .map(|_| Ok(rigidity_matrix(&Framework::random(g, d, &mut rng.fork())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatroidOracle::new(reps))
}

pub fn rank_d(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<usize> {
    check_dim(d)?;
    maximum(rng, reps, "rank", |r| Ok(rigidity_matrix(&Framework::random(g, d, r)?).rank()))
}

/// Rank a rigid graph on `n` vertices attains in dimension `d`.
pub fn rigid_rank(n: usize, d: usize) -> usize {
    if n <= d + 1 {
        n * n.saturating_sub(1) / 2
    } else {
        n * d - trivial_dim(d)
    }
}

pub fn is_rigid(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    check_dim(d)?;
    if g.vertex_count() <= d + 1 {
        return Ok(g.is_complete());
    }
    Ok(rank_d(g, d, rng, reps)? == rigid_rank(g.vertex_count(), d))
}

pub fn is_independent(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    Ok(rank_d(g, d, rng, reps)? == g.edge_count())
}

/// The edge set is a circuit: one dependency whose support is every edge.
/// Isolated vertices are ignored.
pub fn is_circuit(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    let m = g.edge_count();
    if m == 0 {
        return Ok(false);
    }
    let oracle = rigidity_oracle(g, d, rng, reps)?;
    Ok(oracle.rank() == m - 1 && oracle.coloops().is_empty())
}

/// Adjacent pairs are linked by convention. Otherwise both ranks are taken
/// at one framework per repetition.
pub fn is_linked(g: &Graph, u: usize, v: usize, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    check_dim(d)?;
    g.check_pair(u, v)?;
    if g.has_edge(u, v) {
        return Ok(true);
    }
    let plus = g.with_edge(u, v);
    consensus(rng, reps, "linked", |r| {
        let f = Framework::random(g, d, r)?;
        let before = rigidity_matrix(&f).rank();
        let after = rigidity_matrix(&f.with_graph(plus.clone())).rank();
        Ok(before == after)
    })
}

/// Edges in no circuit of the rigidity matroid, ascending.
pub fn bridges(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<Vec<usize>> {
    let oracle = rigidity_oracle(g, d, rng, reps)?;
    coloops_via_circuits(&oracle)
}

pub fn fundamental_circuit(oracle: &MatroidOracle, basis: &[usize], e: usize) -> Result<Vec<usize>> {
    oracle.fundamental_circuit(basis, e)
}

/// Edge sets of the connected components of the rigidity matroid.
pub fn m_components(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<Vec<Vec<usize>>> {
    rigidity_oracle(g, d, rng, reps)?.components()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::matroid::next_combination;
    use crate::pebble::{pebble_rank_2, PebbleRank2};
    use crate::rng::Rng;
    use proptest::prelude::*;

    fn rng() -> Rng {
        Rng::new(20240601)
    }

    /// Circuit check from subset ranks alone: dependent, and every proper
    /// subset independent.
    fn brute_is_circuit(m: &impl Matroid) -> bool {
        let n = m.ground_size();
        if m.rank() == n {
            return false;
        }
        for size in 1..n {
            let mut s: Vec<usize> = (0..size).collect();
            loop {
                if !m.is_independent(&s) {
                    return false;
                }
                if !next_combination(&mut s, n) {
                    break;
                }
            }
        }
        true
    }

    #[test]
    fn measurement_examples() {
        let g = families::path(2);
        let f = Framework::new(g.clone(), 1, vec![Fp::new(3), Fp::new(1)]).unwrap();
        assert_eq!(measurement(&f), vec![Fp::new(4)]);
        let same = Framework::new(g.clone(), 1, vec![Fp::new(5), Fp::new(5)]).unwrap();
        assert_eq!(measurement(&same), vec![Fp::ZERO]);
        let shifted = Framework::new(g, 1, vec![Fp::new(10), Fp::new(8)]).unwrap();
        assert_eq!(measurement(&shifted), measurement(&f));
        let m = rigidity_matrix(&f);
        assert_eq!(m.row(0), &[Fp::new(2), Fp::from_i64(-2)]);
    }

    #[test]
    fn random_framework_is_reproducible() {
        let k3 = families::complete(3);
        let a = random_framework(&k3, 2, &mut Rng::new(0)).unwrap();
        let b = random_framework(&k3, 2, &mut Rng::new(0)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.config().len(), 6);
        assert_ne!(a, random_framework(&k3, 2, &mut Rng::new(1)).unwrap());
    }

    #[test]
    fn translations_in_kernel() {
        let f = Framework::random(&families::complete(5), 3, &mut rng()).unwrap();
        let r = rigidity_matrix(&f);
        for i in 0..3 {
            let t: Vec<Fp> = (0..15).map(|c| if c % 3 == i { Fp::ONE } else { Fp::ZERO }).collect();
            assert!(r.mul_vec(&t).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn known_ranks() {
        let mut r = rng();
        assert_eq!(rank_d(&families::complete(3), 2, &mut r, 2).unwrap(), 3);
        assert_eq!(rank_d(&families::complete(4), 2, &mut r, 2).unwrap(), 5);
        assert_eq!(rank_d(&families::cycle(4), 2, &mut r, 2).unwrap(), 4);
        assert_eq!(rank_d(&families::path(6), 3, &mut r, 2).unwrap(), 5);
        assert_eq!(rank_d(&families::double_banana(3), 3, &mut r, 2).unwrap(), 17);
    }

    #[test]
    fn rigid_independent_circuit() {
        let mut r = rng();
        let k4 = families::complete(4);
        assert!(is_rigid(&k4, 2, &mut r, 2).unwrap());
        assert!(!is_independent(&k4, 2, &mut r, 2).unwrap());
        assert!(is_circuit(&k4, 2, &mut r, 2).unwrap());
        assert!(brute_is_circuit(&PebbleRank2::new(&k4)));
        let k33 = families::complete_bipartite(3, 3);
        assert!(is_independent(&k33, 2, &mut r, 2).unwrap());
        assert!(is_rigid(&k33, 2, &mut r, 2).unwrap());
        assert!(!is_circuit(&k33, 2, &mut r, 2).unwrap());
        assert!(!brute_is_circuit(&PebbleRank2::new(&k33)));
        assert!(is_circuit(&families::complete(5), 3, &mut r, 2).unwrap());
        let banana = families::double_banana(3);
        assert!(!is_rigid(&banana, 3, &mut r, 2).unwrap());
        assert!(is_circuit(&banana, 3, &mut r, 2).unwrap());
        assert!(!is_circuit(&families::complete(5), 2, &mut r, 2).unwrap());
        assert!(is_rigid(&families::complete(2), 3, &mut r, 2).unwrap());
        assert!(!is_rigid(&families::path(3), 3, &mut r, 2).unwrap());
    }

    #[test]
    fn linked_examples() {
        let mut r = rng();
        let k5 = families::complete(5).without_edge(0, 1);
        assert!(is_linked(&k5, 0, 1, 3, &mut r, 2).unwrap());
        assert!(is_linked(&families::path(3), 0, 2, 1, &mut r, 2).unwrap());
        let two_triangles = Graph::new(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]).unwrap();
        assert!(!is_linked(&two_triangles, 0, 3, 2, &mut r, 2).unwrap());
        assert!(is_linked(&two_triangles, 0, 1, 2, &mut r, 2).unwrap());
    }

    #[test]
    fn bridge_examples() {
        let mut r = rng();
        let tree = families::path(5);
        assert_eq!(bridges(&tree, 3, &mut r, 2).unwrap(), vec![0, 1, 2, 3]);
        assert!(bridges(&families::complete(4), 2, &mut r, 2).unwrap().is_empty());
        let pendant = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let e = pendant.edge_index(2, 3).unwrap();
        assert_eq!(bridges(&pendant, 1, &mut r, 2).unwrap(), vec![e]);
    }

    #[test]
    fn fundamental_circuit_examples() {
        let mut r = rng();
        let c5 = families::cycle(5).with_edge(0, 2);
        let oracle = rigidity_oracle(&c5, 1, &mut r, 2).unwrap();
        let basis = oracle.basis();
        assert_eq!(basis.len(), 4);
        let chord = (0..6).find(|e| !basis.contains(e)).unwrap();
        let circuit = fundamental_circuit(&oracle, &basis, chord).unwrap();
        assert!(circuit.len() == 3 || circuit.len() == 4);
        let k4 = rigidity_oracle(&families::complete(4), 2, &mut r, 2).unwrap();
        assert_eq!(fundamental_circuit(&k4, &k4.basis(), 5).unwrap(), vec![0, 1, 2, 3, 4, 5]);
        let banana = rigidity_oracle(&families::double_banana(3), 3, &mut r, 2).unwrap();
        assert_eq!(fundamental_circuit(&banana, &banana.basis(), 17).unwrap().len(), 18);
        assert!(matches!(fundamental_circuit(&k4, &[0, 1], 5), Err(Error::NotABasis)));
    }

    #[test]
    fn component_examples() {
        let mut r = rng();
        let two_k4 = Graph::new(8, families::complete(4).edges().iter().flat_map(|&(a, b)| [(a, b), (a + 4, b + 4)])).unwrap();
        assert_eq!(m_components(&two_k4, 2, &mut r, 2).unwrap().len(), 2);
        assert_eq!(m_components(&families::double_banana(3), 3, &mut r, 2).unwrap(), vec![(0..18).collect::<Vec<_>>()]);
        let pendant = Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(m_components(&pendant, 1, &mut r, 2).unwrap(), vec![vec![0, 1, 2], vec![3]]);
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(matches!(rank_d(&families::complete(3), 0, &mut rng(), 2), Err(Error::ZeroDimension)));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..9).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.45), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Graph::from_adjacency(n, |_, _| it.next().unwrap())
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn randomized_rank_matches_pebble_game(g in arb_graph(), seed in any::<u64>()) {
            prop_assert_eq!(rank_d(&g, 2, &mut Rng::new(seed), 2).unwrap(), pebble_rank_2(&g));
        }

        #[test]
        fn components_pass_separation_identity(g in arb_graph(), seed in any::<u64>(), d in 1usize..4) {
            let oracle = rigidity_oracle(&g, d, &mut Rng::new(seed), 2).unwrap();
            let comps = oracle.components().unwrap();
            prop_assert_eq!(comps.iter().map(|c| oracle.rank_of(c)).sum::<usize>(), oracle.rank());
        }

        #[test]
        fn circuits_are_two_connected(g in arb_graph(), seed in any::<u64>(), d in 1usize..4) {
            let oracle = rigidity_oracle(&g, d, &mut Rng::new(seed), 1).unwrap();
            let basis = oracle.basis();
            for e in (0..g.edge_count()).filter(|e| !basis.contains(e)) {
                let c = oracle.fundamental_circuit(&basis, e).unwrap();
                let (h, _) = g.edge_induced(&c);
                prop_assert_eq!(crate::graph::two_connected_components(&h).len(), 1);
                prop_assert!(crate::graph::cut_vertices(&h).is_empty());
            }
        }
    }
}
