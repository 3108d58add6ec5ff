//! Equilibrium stresses, stress matrices, the shared stress kernel and the
//! global rigidity and stress-linkedness tests built on it.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::graph::Graph;
use crate::matrix::{FieldMatrix, LinearSubspace};
use crate::rigidity::{measure, rigidity_matrix, Framework};
use crate::rng::Rng;
use crate::sampling::{consensus, maximum, stabilized_span};

/// An equilibrium stress of a specific framework.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stress {
    values: Vec<Fp>,
}

impl Stress {
    /// Checks `values^T R(G, p) = 0` before accepting.
    pub fn new(f: &Framework, values: Vec<Fp>) -> Result<Self> {
        if values.len() != f.graph().edge_count() {
            return Err(Error::NotAStress);
        }
        let load = rigidity_matrix(f).vec_mul(&values);
        if load.iter().any(|x| !x.is_zero()) {
            return Err(Error::NotAStress);
        }
        Ok(Stress { values })
    }

    pub fn values(&self) -> &[Fp] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|x| x.is_zero())
    }
}

/// The stress space `S(G, p)`, the left kernel of the rigidity matrix.
pub fn stress_basis(f: &Framework) -> LinearSubspace {
    rigidity_matrix(f).left_kernel()
}

/// Off-diagonal entries `-omega(uv)` on edges, zero row sums.
pub fn stress_matrix(g: &Graph, omega: &[Fp]) -> FieldMatrix {
    let n = g.vertex_count();
    let mut m = FieldMatrix::zeros(n, n);
    for (&(u, v), &w) in g.edges().iter().zip(omega) {
        m[(u, v)] = -w;
        m[(v, u)] = -w;
        m[(u, u)] += w;
        m[(v, v)] += w;
    }
    m
}

/// `K_1(omega)`, the kernel of the stress matrix.
pub fn stress_kernel_1(g: &Graph, omega: &[Fp]) -> LinearSubspace {
    stress_matrix(g, omega).right_kernel()
}

/// Common kernel of the stress matrices of all stresses at `f`.
pub fn shared_stress_kernel(f: &Framework) -> LinearSubspace {
    let g = f.graph();
    let n = g.vertex_count();
    let stresses = stress_basis(f);
    if stresses.dim() == 0 {
        return LinearSubspace::full(n);
    }
    let blocks: Vec<FieldMatrix> = stresses.vectors().map(|w| stress_matrix(g, &w)).collect();
    FieldMatrix::vstack(n, &blocks).right_kernel()
}

pub fn shared_nullity_at(f: &Framework) -> usize {
    shared_stress_kernel(f).dim()
}

/// `k_d(G)`, maximized over `reps` random frameworks.
pub fn shared_stress_nullity(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    maximum(rng, reps, "shared stress nullity", |r| Ok(shared_nullity_at(&Framework::random(g, d, r)?)))
}

/// Small graphs are globally rigid exactly when complete; otherwise the
/// shared stress nullity must equal `d + 1`.
pub fn is_globally_rigid(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    if g.vertex_count() <= d + 1 {
        return Ok(g.is_complete());
    }
    Ok(shared_stress_nullity(g, d, rng, reps)? == d + 1)
}

/// Linkedness and nullity equality evaluated at one framework for both
/// `G` and `G + uv`.
pub fn stress_linked_at(f: &Framework, u: usize, v: usize) -> bool {
    let plus = f.with_graph(f.graph().with_edge(u, v));
    let linked = rigidity_matrix(f).rank() == rigidity_matrix(&plus).rank();
    linked && shared_nullity_at(f) == shared_nullity_at(&plus)
}

pub fn is_stress_linked(g: &Graph, u: usize, v: usize, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    g.check_pair(u, v)?;
    if g.has_edge(u, v) {
        return Ok(true);
    }
    consensus(rng, reps, "stress-linked", |r| Ok(stress_linked_at(&Framework::random(g, d, r)?, u, v)))
}

/// Random configuration whose `d` coordinate vectors lie in `kernel`.
pub(crate) fn config_in(kernel: &LinearSubspace, d: usize, rng: &mut Rng) -> Vec<Fp> {
    let n = kernel.ambient_dim();
    let coords: Vec<Vec<Fp>> = (0..d).map(|_| kernel.random_element(rng)).collect();
    let mut config = vec![Fp::ZERO; n * d];
    for (i, x) in coords.iter().enumerate() {
        for v in 0..n {
            config[v * d + i] = x[v];
        }
    }
    config
}

/// The Gauss fiber `L(G, p)`: span of the measurements of configurations
/// in the shared stress kernel.
pub fn gauss_fiber(f: &Framework, rng: &mut Rng) -> Result<LinearSubspace> {
    let g = f.graph();
    let d = f.dim();
    let kernel = shared_stress_kernel(f);
    let m = g.edge_count();
    let span = stabilized_span(m, m + 4, rng, |r| measure(g, d, &config_in(&kernel, d, r)))?;
    Ok(LinearSubspace::span(m, span.into_rows()))
}

/// Gauss fiber dimension at one framework, checked against
/// `d * k_d - n * d + r_d` at the same framework.
pub fn gauss_fiber_dim_at(f: &Framework, rng: &mut Rng) -> Result<usize> {
    let dim = gauss_fiber(f, rng)?.dim();
    let n = f.graph().vertex_count();
    let d = f.dim();
    let expected = (d * shared_nullity_at(f) + rigidity_matrix(f).rank()) as i64 - (n * d) as i64;
    if dim as i64 != expected {
        return Err(Error::Inconsistent(format!(
            "Gauss fiber dimension {dim} differs from the predicted {expected}"
        )));
    }
    Ok(dim)
}

pub fn gauss_fiber_dim(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    maximum(rng, reps, "Gauss fiber", |r| {
        let f = Framework::random(g, d, r)?;
        gauss_fiber_dim_at(&f, r)
    })
}

/// Stress-linkedness through equality of the Gauss fiber dimensions of
/// `G` and `G + uv`.
pub fn stress_linked_via_gauss(g: &Graph, u: usize, v: usize, d: usize, rng: &mut Rng, reps: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    g.check_pair(u, v)?;
    if g.has_edge(u, v) {
        return Ok(true);
    }
    let plus = g.with_edge(u, v);
    consensus(rng, reps, "Gauss fiber pair test", |r| {
        let f = Framework::random(g, d, r)?;
        let before = gauss_fiber_dim_at(&f, r)?;
        let after = gauss_fiber_dim_at(&f.with_graph(plus.clone()), r)?;
        Ok(before == after)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::graph::{glue, t_sum};
    use crate::rigidity::{bridges, is_linked};
    use crate::rng::Rng;
    use proptest::prelude::*;

    fn rng() -> Rng {
        Rng::new(77)
    }

    fn with_vertices(g: &Graph, n: usize) -> Graph {
        Graph::new(n, g.edges().iter().copied()).unwrap()
    }

    fn k4_pendant() -> Graph {
        with_vertices(&families::complete(4), 5).with_edge(3, 4)
    }

    #[test]
    fn stress_spaces() {
        let mut r = rng();
        let tree = Framework::random(&families::path(5), 2, &mut r).unwrap();
        assert_eq!(stress_basis(&tree).dim(), 0);
        let k4 = Framework::random(&families::complete(4), 2, &mut r).unwrap();
        let s = stress_basis(&k4);
        assert_eq!(s.dim(), 1);
        assert!(Stress::new(&k4, s.vector(0)).is_ok());
        assert!(matches!(Stress::new(&k4, vec![Fp::ONE; 6]), Err(Error::NotAStress)));
        let banana = Framework::random(&families::double_banana(3), 3, &mut r).unwrap();
        assert_eq!(stress_basis(&banana).dim(), 1);
    }

    #[test]
    fn stress_kernels() {
        let mut r = rng();
        let k4g = families::complete(4);
        assert_eq!(stress_kernel_1(&k4g, &[Fp::ZERO; 6]).dim(), 4);
        let k4 = Framework::random(&k4g, 2, &mut r).unwrap();
        let omega = stress_basis(&k4).vector(0);
        let kernel = stress_kernel_1(&k4g, &omega);
        assert_eq!(kernel.dim(), 3);
        assert!(kernel.contains(&[Fp::ONE; 4]));
        for i in 0..2 {
            let coord: Vec<Fp> = (0..4).map(|v| k4.point(v)[i]).collect();
            assert!(kernel.contains(&coord));
        }
    }

    #[test]
    fn nullity_examples() {
        let mut r = rng();
        assert_eq!(shared_stress_nullity(&families::path(6), 2, &mut r, 2).unwrap(), 6);
        assert_eq!(shared_stress_nullity(&families::complete(5), 3, &mut r, 2).unwrap(), 4);
        assert_eq!(shared_stress_nullity(&k4_pendant(), 2, &mut r, 2).unwrap(), 4);
    }

    #[test]
    fn global_rigidity_examples() {
        let mut r = rng();
        assert!(is_globally_rigid(&families::complete(4), 2, &mut r, 2).unwrap());
        assert!(!is_globally_rigid(&families::complete_bipartite(3, 3), 2, &mut r, 2).unwrap());
        assert!(!is_globally_rigid(&families::double_banana(3), 3, &mut r, 2).unwrap());
        for n in 4..8 {
            assert!(is_globally_rigid(&families::cycle(n), 1, &mut r, 2).unwrap());
        }
        assert!(!is_globally_rigid(&families::path(4), 1, &mut r, 2).unwrap());
        assert!(is_globally_rigid(&families::wheel(5), 2, &mut r, 2).unwrap());
    }

    #[test]
    fn stress_linked_examples() {
        let mut r = rng();
        assert!(is_stress_linked(&families::double_banana(3), 0, 1, 3, &mut r, 2).unwrap());
        assert!(!is_stress_linked(&families::path(4), 0, 3, 2, &mut r, 2).unwrap());
        let k4 = families::complete(4);
        let two_sum = t_sum(&k4, &k4, &[(0, 0), (1, 1)], (0, 1)).unwrap();
        assert!(is_stress_linked(&two_sum, 0, 1, 2, &mut r, 2).unwrap());
        assert!(is_linked(&two_sum, 2, 4, 2, &mut r, 2).unwrap());
    }

    #[test]
    fn gauss_fiber_examples() {
        let mut r = rng();
        assert_eq!(gauss_fiber_dim(&families::complete(4), 2, &mut r, 2).unwrap(), 3);
        let forest = families::path(5);
        assert_eq!(gauss_fiber_dim(&forest, 3, &mut r, 2).unwrap(), 4);
        let banana = families::double_banana(3);
        assert!(stress_linked_via_gauss(&banana, 0, 1, 3, &mut r, 2).unwrap());
        assert!(!stress_linked_via_gauss(&families::path(4), 0, 3, 2, &mut r, 2).unwrap());
    }

    #[test]
    fn isolated_vertex_raises_nullity() {
        let mut r = rng();
        let k4 = families::complete(4);
        let with_isolated = with_vertices(&k4, 5);
        let a = shared_stress_nullity(&k4, 2, &mut r, 2).unwrap();
        let b = shared_stress_nullity(&with_isolated, 2, &mut r, 2).unwrap();
        assert_eq!(b, a + 1);
    }

    #[test]
    fn stress_space_splits_over_two_sum() {
        // {0, 2} is not linked on the cycle side, so that side adds no stress
        let mut r = rng();
        let k4 = families::complete(4);
        let square = families::cycle(4);
        let (g, _) = glue(&k4, &square, &[(0, 0), (2, 2)]).unwrap();
        let f = Framework::random(&g, 2, &mut r).unwrap();
        let (g1, _) = g.induced(&[0, 1, 2, 3]);
        let f1 = Framework::random(&g1, 2, &mut r).unwrap();
        assert_eq!(stress_basis(&f).dim(), stress_basis(&f1).dim());
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (3usize..8).prop_flat_map(|n| {
            proptest::collection::vec(proptest::bool::weighted(0.55), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                Graph::from_adjacency(n, |_, _| it.next().unwrap())
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn basis_stresses_are_equilibria(g in arb_graph(), d in 1usize..4, seed in any::<u64>()) {
            let f = Framework::random(&g, d, &mut Rng::new(seed)).unwrap();
            for w in stress_basis(&f).vectors() {
                prop_assert!(Stress::new(&f, w.clone()).is_ok());
                let omega = stress_matrix(&g, &w);
                prop_assert!(omega.mul_vec(&vec![Fp::ONE; g.vertex_count()]).iter().all(|x| x.is_zero()));
            }
        }

        #[test]
        fn nullity_monotone_and_bridge_invariant(g in arb_graph(), d in 1usize..4, seed in any::<u64>()) {
            let n = g.vertex_count();
            let f = Framework::random(&g, d, &mut Rng::new(seed)).unwrap();
            let k = shared_nullity_at(&f);
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) { continue; }
                    let plus = f.with_graph(g.with_edge(u, v));
                    let kp = shared_nullity_at(&plus);
                    prop_assert!(kp <= k);
                    let linked = rigidity_matrix(&f).rank() == rigidity_matrix(&plus).rank();
                    if !linked {
                        prop_assert_eq!(kp, k);
                    }
                }
            }
        }

        #[test]
        fn stress_linked_keeps_bridges(g in arb_graph(), d in 1usize..4, seed in any::<u64>()) {
            let mut r = Rng::new(seed);
            let n = g.vertex_count();
            let base = bridges(&g, d, &mut r, 2).unwrap();
            let base_edges: Vec<_> = base.iter().map(|&e| g.edge(e)).collect();
            for u in 0..n {
                for v in u + 1..n {
                    if g.has_edge(u, v) || !is_stress_linked(&g, u, v, d, &mut r, 2).unwrap() { continue; }
                    let plus = g.with_edge(u, v);
                    let after: Vec<_> = bridges(&plus, d, &mut r, 2).unwrap().iter().map(|&e| plus.edge(e)).collect();
                    prop_assert_eq!(&after, &base_edges);
                }
            }
        }

        #[test]
        fn globally_rigid_implies_all_pairs_linked(g in arb_graph(), d in 1usize..3, seed in any::<u64>()) {
            let mut r = Rng::new(seed);
            if is_globally_rigid(&g, d, &mut r, 2).unwrap() {
                let n = g.vertex_count();
                for u in 0..n {
                    for v in u + 1..n {
                        prop_assert!(is_stress_linked(&g, u, v, d, &mut r, 2).unwrap());
                    }
                }
                if n >= d + 2 {
                    prop_assert!(bridges(&g, d, &mut r, 2).unwrap().is_empty());
                }
            }
        }
    }
}
