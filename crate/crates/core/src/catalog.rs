//! Graph catalogs for the verification suites: isomorph-free small graphs,
//! seeded random graphs and curated families.

use std::collections::BTreeMap;

use crate::families;
use crate::graph::{glue, t_sum, Edge, Graph};
use crate::rng::Rng;

/// Largest vertex count accepted by [`canonical_form`].
pub const MAX_CANONICAL_N: usize = 11;

#[derive(Clone, Debug)]
pub struct CatalogItem {
    pub id: String,
    pub graph: Graph,
}

impl CatalogItem {
    pub fn new(id: impl Into<String>, graph: Graph) -> Self {
        CatalogItem { id: id.into(), graph }
    }
}

fn adjacency_bits(g: &Graph) -> Vec<u32> {
    let mut adj = vec![0u32; g.vertex_count()];
    for &(u, v) in g.edges() {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

fn code_of(adj: &[u32], order: &[usize]) -> u64 {
    let n = order.len();
    let mut code = 0u64;
    for i in 0..n {
        for j in i + 1..n {
            code = code << 1 | u64::from(adj[order[i]] >> order[j] & 1);
        }
    }
    code
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// The maximum upper-triangle adjacency code over all orderings that list
/// vertices by decreasing degree, together with one ordering attaining it.
/// Isomorphic graphs receive equal codes.
pub fn canonical_form(g: &Graph) -> (u64, Vec<usize>) {
    let n = g.vertex_count();
    assert!(n <= MAX_CANONICAL_N, "canonical form limited to {MAX_CANONICAL_N} vertices");
    let adj = adjacency_bits(g);
    let degrees = g.degrees();
    let mut classes: BTreeMap<std::cmp::Reverse<usize>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        classes.entry(std::cmp::Reverse(degrees[v])).or_default().push(v);
    }
    let perms: Vec<Vec<Vec<usize>>> = classes.values().map(|c| permutations(c)).collect();
    let mut choice = vec![0usize; perms.len()];
    let mut best: Option<(u64, Vec<usize>)> = None;
    loop {
        let order: Vec<usize> = perms.iter().zip(&choice).flat_map(|(p, &i)| p[i].iter().copied()).collect();
        let code = code_of(&adj, &order);
        if best.as_ref().map_or(true, |(b, _)| code > *b) {
            best = Some((code, order));
        }
        let mut k = 0;
        loop {
            if k == perms.len() {
                return best.expect("at least one ordering");
            }
            choice[k] += 1;
            if choice[k] < perms[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// `g` relabelled so that isomorphic graphs become identical.
pub fn canonical_graph(g: &Graph) -> Graph {
    let (_, order) = canonical_form(g);
    let mut perm = vec![0; order.len()];
    for (pos, &v) in order.iter().enumerate() {
        perm[v] = pos;
    }
    g.relabel(&perm)
}

/// One representative of every isomorphism class of graphs on exactly `n`
/// vertices, sorted by edge count and then by canonical code.
pub fn canonical_graphs(n: usize) -> Vec<Graph> {
    let mut level: BTreeMap<(usize, u64), Graph> = BTreeMap::new();
    level.insert((0, 0), Graph::empty(0));
    for k in 1..=n {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for mask in 0u32..(1 << (k - 1)) {
                let edges = g.edges().iter().copied().chain((0..k - 1).filter(|&u| mask >> u & 1 == 1).map(|u| (u, k - 1)));
                let h = Graph::new(k, edges).expect("valid augmentation");
                let (code, _) = canonical_form(&h);
                next.entry((h.edge_count(), code)).or_insert_with(|| canonical_graph(&h));
            }
        }
        level = next;
    }
    level.into_values().collect()
}

/// Canonical graphs on `min_n..=max_n` vertices with ids `c<n>.<index>`.
pub fn canonical_catalog(min_n: usize, max_n: usize) -> Vec<CatalogItem> {
    (min_n..=max_n)
        .flat_map(|n| canonical_graphs(n).into_iter().enumerate().map(move |(i, g)| CatalogItem::new(format!("c{n}.{i}"), g)))
        .collect()
}

/// Uniform random graph with `n` vertices and `m` edges.
pub fn random_graph(n: usize, m: usize, rng: &mut Rng) -> Graph {
    let mut pairs: Vec<Edge> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    assert!(m <= pairs.len(), "too many edges for {n} vertices");
    rng.shuffle(&mut pairs);
    pairs.truncate(m);
    Graph::new(n, pairs).expect("distinct pairs")
}

/// A random graph with `n` drawn from `min_n..=max_n` and `m` drawn from
/// `n..=min(3n, n(n-1)/2)`, a range that straddles the rigidity thresholds
/// in dimensions 1 to 3.
pub fn random_sample(min_n: usize, max_n: usize, rng: &mut Rng) -> Graph {
    let n = rng.below(min_n, max_n + 1);
    let max_m = (3 * n).min(n * (n - 1) / 2);
    let m = rng.below(n.min(max_m), max_m + 1);
    random_graph(n, m, rng)
}

/// `count` random graphs with ids `r<index>`.
pub fn random_catalog(count: usize, min_n: usize, max_n: usize, seed: u64) -> Vec<CatalogItem> {
    let mut rng = Rng::new(seed);
    (0..count).map(|i| CatalogItem::new(format!("r{i}"), random_sample(min_n, max_n, &mut rng))).collect()
}

fn complete_overlap(t: usize) -> Vec<(usize, usize)> {
    (0..t).map(|i| (i, i)).collect()
}

/// Named families relevant in dimension `d`: complete graphs, cycles,
/// wheels, complete bipartite graphs, double bananas, 2-sums and t-sums.
pub fn curated(d: usize) -> Vec<CatalogItem> {
    let mut items = Vec::new();
    for n in 2..=d + 4 {
        items.push(CatalogItem::new(format!("K{n}"), families::complete(n)));
    }
    for n in 3..=7 {
        items.push(CatalogItem::new(format!("C{n}"), families::cycle(n)));
    }
    for n in 3..=7 {
        items.push(CatalogItem::new(format!("W{n}"), families::wheel(n)));
    }
    for (a, b) in [(2, 3), (3, 3), (3, 4), (4, 4)] {
        items.push(CatalogItem::new(format!("K{a},{b}"), families::complete_bipartite(a, b)));
    }
    for k in 2..=3 {
        items.push(CatalogItem::new(format!("banana{k}"), families::double_banana(k)));
    }
    let k = families::complete(d + 2);
    for t in 2..=d + 1 {
        let g = t_sum(&k, &k, &complete_overlap(t), (0, 1)).expect("valid overlap");
        items.push(CatalogItem::new(format!("K{}+{t}K{}", d + 2, d + 2), g));
    }
    let (two_k4, _) = glue(&families::complete(4), &families::complete(4), &complete_overlap(2)).expect("valid overlap");
    items.push(CatalogItem::new("K4|K4", two_k4));
    items
}
