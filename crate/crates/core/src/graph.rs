//! Simple undirected graphs with canonical edge indexing, the edge-list text
//! format, and the connectivity and separation algorithms the deciders need.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, ParseErrorKind, Result};

pub type Edge = (usize, usize);

/// A simple graph on vertices `0..n`. Edges are stored with `u < v`, sorted
/// lexicographically; an edge's index is its position in that order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

/// Orders a vertex pair so the smaller index comes first.
pub fn ordered(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and out-of-range
    /// endpoints. Edge orientation and order in the input do not matter.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidGraph(ParseErrorKind::VertexOutOfRange { vertex: w, n }));
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(ParseErrorKind::SelfLoop(u)));
            }
            list.push(ordered(u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidGraph(ParseErrorKind::DuplicateEdge(w[0].0, w[0].1)));
        }
        Ok(Graph { n, edges: list })
    }

    pub fn empty(n: usize) -> Self {
        Graph { n, edges: Vec::new() }
    }

    /// Builds a graph from a 0/1 upper-triangle adjacency predicate.
    pub fn from_adjacency(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if adjacent(u, v) {
                    edges.push((u, v));
                }
            }
        }
        Graph { n, edges }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> Edge {
        self.edges[i]
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        self.edges.binary_search(&ordered(u, v)).ok()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge_index(u, v).is_some()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn check_pair(&self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::DegeneratePair(u));
        }
        Ok(())
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * self.n.saturating_sub(1) / 2
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    /// Vertices incident to at least one edge, ascending.
    pub fn non_isolated_vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        set.into_iter().collect()
    }

    /// `G + uv`. Returns a clone when the edge is already present.
    pub fn with_edge(&self, u: usize, v: usize) -> Graph {
        assert!(u != v && u < self.n && v < self.n);
        let e = ordered(u, v);
        let mut g = self.clone();
        if let Err(pos) = g.edges.binary_search(&e) {
            g.edges.insert(pos, e);
        }
        g
    }

    /// `G - e` for the edge with index `i`.
    pub fn without_edge_index(&self, i: usize) -> Graph {
        let mut g = self.clone();
        g.edges.remove(i);
        g
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        match self.edge_index(u, v) {
            Some(i) => self.without_edge_index(i),
            None => self.clone(),
        }
    }

    /// Spanning subgraph (same vertex set) keeping the listed edge indices.
    pub fn spanning_subgraph(&self, edge_indices: &[usize]) -> Graph {
        let mut edges: Vec<Edge> = edge_indices.iter().map(|&i| self.edges[i]).collect();
        edges.sort_unstable();
        edges.dedup();
        Graph { n: self.n, edges }
    }

    /// Subgraph induced by the listed edges on their endpoints, relabeled to
    /// `0..k`. The returned map sends new labels to old ones.
    pub fn edge_induced(&self, edge_indices: &[usize]) -> (Graph, Vec<usize>) {
        let verts: BTreeSet<usize> = edge_indices
            .iter()
            .flat_map(|&i| [self.edges[i].0, self.edges[i].1])
            .collect();
        let map: Vec<usize> = verts.into_iter().collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let mut edges: Vec<Edge> = edge_indices
            .iter()
            .map(|&i| {
                let (u, v) = self.edges[i];
                ordered(local[u], local[v])
            })
            .collect();
        edges.sort_unstable();
        edges.dedup();
        (Graph { n: map.len(), edges }, map)
    }

    /// Subgraph induced on `vertices` (any order), relabeled to `0..k` in
    /// ascending order of the original labels.
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut map: Vec<usize> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in map.iter().enumerate() {
            local[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
            .map(|&(u, v)| (local[u], local[v]))
            .collect();
        (Graph { n: map.len(), edges }, map)
    }

    /// Number of edges with both ends in `vertices`.
    pub fn edges_within(&self, vertices: &[usize]) -> usize {
        let mut inside = vec![false; self.n];
        for &v in vertices {
            inside[v] = true;
        }
        self.edges.iter().filter(|&&(u, v)| inside[u] && inside[v]).count()
    }

    /// Relabels vertices through `perm` (old label `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut edges: Vec<Edge> = self.edges.iter().map(|&(u, v)| ordered(perm[u], perm[v])).collect();
        edges.sort_unstable();
        Graph { n: self.n, edges }
    }

    /// Connected components of `G - removed` as ascending vertex lists,
    /// ordered by their smallest vertex.
    pub fn components_without(&self, removed: &[usize]) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut gone = vec![false; self.n];
        for &r in removed {
            gone[r] = true;
        }
        let mut label = vec![usize::MAX; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if gone[s] || label[s] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut comp = vec![s];
            label[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if !gone[y] && label[y] == usize::MAX {
                        label[y] = id;
                        comp.push(y);
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(&[])
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Parses the edge-list format:
    /// optional `#` comment lines, a header `p <n> <m>`, then `m` lines `<u> <v>`.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut seen = BTreeSet::new();
        let mut last_line = 0;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            last_line = line;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |kind| Error::Parse { line, kind };
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match header {
                None => {
                    if fields.first() != Some(&"p") {
                        return Err(err(ParseErrorKind::MissingHeader));
                    }
                    let parsed = match fields.as_slice() {
                        [_, n, m] => n.parse::<usize>().ok().zip(m.parse::<usize>().ok()),
                        _ => None,
                    };
                    header = Some(parsed.ok_or_else(|| err(ParseErrorKind::MalformedHeader(trimmed.to_string())))?);
                }
                Some((n, m)) => {
                    let (u, v) = match fields.as_slice() {
                        [u, v] => u.parse::<usize>().ok().zip(v.parse::<usize>().ok()),
                        _ => None,
                    }
                    .ok_or_else(|| err(ParseErrorKind::MalformedEdge(trimmed.to_string())))?;
                    for w in [u, v] {
                        if w >= n {
                            return Err(err(ParseErrorKind::VertexOutOfRange { vertex: w, n }));
                        }
                    }
                    if u == v {
                        return Err(err(ParseErrorKind::SelfLoop(u)));
                    }
                    let e = ordered(u, v);
                    if !seen.insert(e) {
                        return Err(err(ParseErrorKind::DuplicateEdge(e.0, e.1)));
                    }
                    if edges.len() == m {
                        return Err(err(ParseErrorKind::EdgeCountMismatch { expected: m, found: m + 1 }));
                    }
                    edges.push(e);
                }
            }
        }
        let Some((n, m)) = header else {
            return Err(Error::Parse {
                line: last_line.max(1),
                kind: ParseErrorKind::MissingHeader,
            });
        };
        if edges.len() != m {
            return Err(Error::Parse {
                line: last_line.max(1),
                kind: ParseErrorKind::EdgeCountMismatch { expected: m, found: edges.len() },
            });
        }
        edges.sort_unstable();
        Ok(Graph { n, edges })
    }

    /// Writes the edge-list format: header, then sorted edges, LF endings.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("p {} {}\n", self.n, self.edges.len());
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Single-line form of the edge list with `;` in place of newlines.
    pub fn to_compact(&self) -> String {
        self.to_edge_list().trim_end().replace('\n', ";")
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.to_compact())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Unit-capacity residual network used for vertex-disjoint path counting.
struct FlowNetwork {
    head: Vec<usize>,
    cap: Vec<u32>,
    out: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            head: Vec::new(),
            cap: Vec::new(),
            out: vec![Vec::new(); nodes],
        }
    }

    fn arc(&mut self, from: usize, to: usize, cap: u32) {
        self.out[from].push(self.head.len());
        self.head.push(to);
        self.cap.push(cap);
        self.out[to].push(self.head.len());
        self.head.push(from);
        self.cap.push(0);
    }

    /// Edmonds-Karp; arcs are scanned in insertion order.
    fn max_flow(&mut self, source: usize, sink: usize) -> usize {
        let mut flow = 0;
        loop {
            let mut via = vec![usize::MAX; self.out.len()];
            let mut visited = vec![false; self.out.len()];
            visited[source] = true;
            let mut queue = VecDeque::from([source]);
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                for &a in &self.out[x] {
                    let y = self.head[a];
                    if self.cap[a] > 0 && !visited[y] {
                        visited[y] = true;
                        via[y] = a;
                        queue.push_back(y);
                    }
                }
            }
            if !visited[sink] {
                return flow;
            }
            let mut x = sink;
            while x != source {
                let a = via[x];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                x = self.head[a ^ 1];
            }
            flow += 1;
        }
    }
}

/// κ_G(u, v): the maximum number of internally vertex-disjoint u-v paths.
/// Defined for nonadjacent pairs only.
pub fn local_connectivity(g: &Graph, u: usize, v: usize) -> Result<usize> {
    g.check_pair(u, v)?;
    if g.has_edge(u, v) {
        return Err(Error::AdjacentPair(u, v));
    }
    Ok(disjoint_paths(g, u, v))
}

fn disjoint_paths(g: &Graph, u: usize, v: usize) -> usize {
    let n = g.vertex_count();
    let big = n as u32 + 1;
    // vertex x splits into in-node 2x and out-node 2x+1
    let mut net = FlowNetwork::new(2 * n);
    for x in 0..n {
        let cap = if x == u || x == v { big } else { 1 };
        net.arc(2 * x, 2 * x + 1, cap);
    }
    for &(a, b) in g.edges() {
        net.arc(2 * a + 1, 2 * b, 1);
        net.arc(2 * b + 1, 2 * a, 1);
    }
    net.max_flow(2 * u + 1, 2 * v)
}

/// True when `g` has more than `k` vertices and stays connected after
/// deleting any `k - 1` vertices.
pub fn is_k_connected(g: &Graph, k: usize) -> bool {
    let n = g.vertex_count();
    if k == 0 {
        return true;
    }
    if n < k + 1 {
        return false;
    }
    if g.is_complete() {
        return true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !g.has_edge(u, v) && disjoint_paths(g, u, v) < k {
                return false;
            }
        }
    }
    true
}

/// Edge sets of the 2-connected components (blocks). Bridges of the graph
/// form singleton blocks. Blocks are sorted and ordered by smallest edge.
pub fn two_connected_components(g: &Graph) -> Vec<Vec<usize>> {
    struct Dfs<'a> {
        adj: Vec<Vec<(usize, usize)>>,
        disc: Vec<usize>,
        low: Vec<usize>,
        timer: usize,
        stack: Vec<usize>,
        blocks: Vec<Vec<usize>>,
        _g: &'a Graph,
    }
    impl Dfs<'_> {
        fn visit(&mut self, x: usize, parent_edge: usize) {
            self.disc[x] = self.timer;
            self.low[x] = self.timer;
            self.timer += 1;
            for i in 0..self.adj[x].len() {
                let (y, e) = self.adj[x][i];
                if e == parent_edge {
                    continue;
                }
                if self.disc[y] == usize::MAX {
                    self.stack.push(e);
                    self.visit(y, e);
                    self.low[x] = self.low[x].min(self.low[y]);
                    if self.low[y] >= self.disc[x] {
                        let mut block = Vec::new();
                        while let Some(f) = self.stack.pop() {
                            block.push(f);
                            if f == e {
                                break;
                            }
                        }
                        block.sort_unstable();
                        self.blocks.push(block);
                    }
                } else if self.disc[y] < self.disc[x] {
                    self.stack.push(e);
                    self.low[x] = self.low[x].min(self.disc[y]);
                }
            }
        }
    }
    let n = g.vertex_count();
    let mut adj = vec![Vec::new(); n];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        adj[u].push((v, i));
        adj[v].push((u, i));
    }
    let mut dfs = Dfs {
        adj,
        disc: vec![usize::MAX; n],
        low: vec![0; n],
        timer: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
        _g: g,
    };
    for s in 0..n {
        if dfs.disc[s] == usize::MAX {
            dfs.visit(s, usize::MAX);
        }
    }
    let mut blocks = dfs.blocks;
    blocks.sort_by_key(|b| b[0]);
    blocks
}

/// Vertices whose removal increases the number of connected components.
pub fn cut_vertices(g: &Graph) -> Vec<usize> {
    let base = g.components().len();
    (0..g.vertex_count())
        .filter(|&x| {
            // an isolated vertex disappears with its own component
            let isolated = g.edges().iter().all(|&(a, b)| a != x && b != x);
            !isolated && g.components_without(&[x]).len() > base
        })
        .collect()
}

/// True when `G - {x, y}` is disconnected.
pub fn is_separating_pair(g: &Graph, x: usize, y: usize) -> bool {
    x != y && g.components_without(&[x, y]).len() >= 2
}

/// Lexicographically least separating pair, if any.
pub fn first_separating_pair(g: &Graph) -> Option<(usize, usize)> {
    let n = g.vertex_count();
    (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| is_separating_pair(g, x, y))
}

/// Result of splitting a graph along a nonadjacent separating pair.
/// Each side is relabeled to `0..k`; the maps send local labels to labels
/// of the original graph.
#[derive(Clone, Debug)]
pub struct TwoSeparation {
    pub first: Graph,
    pub second: Graph,
    pub first_map: Vec<usize>,
    pub second_map: Vec<usize>,
}

/// Splits `G` along the nonadjacent separating pair `{x, y}`. The first side
/// holds the component of `G - {x, y}` with the smallest vertex; both sides
/// receive the edge `xy`.
pub fn two_separation(g: &Graph, x: usize, y: usize) -> Result<TwoSeparation> {
    g.check_pair(x, y)?;
    if g.has_edge(x, y) {
        return Err(Error::AdjacentPair(x, y));
    }
    let comps = g.components_without(&[x, y]);
    if comps.len() < 2 {
        return Err(Error::NotSeparating(x, y));
    }
    let mut first_side = comps[0].clone();
    first_side.extend([x, y]);
    let mut second_side: Vec<usize> = comps[1..].iter().flatten().copied().collect();
    second_side.extend([x, y]);
    let (first, first_map) = split_side(g, &first_side, x, y);
    let (second, second_map) = split_side(g, &second_side, x, y);
    Ok(TwoSeparation {
        first,
        second,
        first_map,
        second_map,
    })
}

/// Induced subgraph on `side` plus the separator edge `xy`.
pub(crate) fn split_side(g: &Graph, side: &[usize], x: usize, y: usize) -> (Graph, Vec<usize>) {
    let (h, map) = g.induced(side);
    let lx = map.binary_search(&x).expect("separator in side");
    let ly = map.binary_search(&y).expect("separator in side");
    (h.with_edge(lx, ly), map)
}

/// Union of `g1` and `g2` where `shared` lists pairs `(vertex of g1, vertex of g2)`
/// that are identified. Vertices of `g1` keep their labels; the remaining
/// vertices of `g2` are appended in ascending order. Returns the union and
/// the map from `g2` labels to union labels.
pub fn glue(g1: &Graph, g2: &Graph, shared: &[(usize, usize)]) -> Result<(Graph, Vec<usize>)> {
    let n1 = g1.vertex_count();
    let mut map2 = vec![usize::MAX; g2.vertex_count()];
    let mut used1 = vec![false; n1];
    for &(a, b) in shared {
        if a >= n1 || b >= g2.vertex_count() {
            return Err(Error::InvalidCorrespondence(format!("pair ({a}, {b}) out of range")));
        }
        if used1[a] || map2[b] != usize::MAX {
            return Err(Error::InvalidCorrespondence(format!("vertex repeated in pair ({a}, {b})")));
        }
        used1[a] = true;
        map2[b] = a;
    }
    let mut next = n1;
    for slot in map2.iter_mut() {
        if *slot == usize::MAX {
            *slot = next;
            next += 1;
        }
    }
    let mut edges: BTreeSet<Edge> = g1.edges().iter().copied().collect();
    for &(a, b) in g2.edges() {
        edges.insert(ordered(map2[a], map2[b]));
    }
    Ok((Graph { n: next, edges: edges.into_iter().collect() }, map2))
}

/// The t-sum `G1 ∪ G2 - e` along a complete overlap of `t = shared.len()`
/// vertices. `e` is given in `g1` labels and must join two shared vertices.
pub fn t_sum(g1: &Graph, g2: &Graph, shared: &[(usize, usize)], e: Edge) -> Result<Graph> {
    if shared.len() < 2 {
        return Err(Error::InvalidCorrespondence("a t-sum needs t >= 2".into()));
    }
    for (i, &(a, b)) in shared.iter().enumerate() {
        for &(c, d) in &shared[i + 1..] {
            if a == c || b == d {
                return Err(Error::InvalidCorrespondence(format!("vertex repeated in pairs ({a}, {b}) and ({c}, {d})")));
            }
            let in1 = a < g1.vertex_count() && c < g1.vertex_count() && g1.has_edge(a, c);
            let in2 = b < g2.vertex_count() && d < g2.vertex_count() && g2.has_edge(b, d);
            if !in1 || !in2 {
                return Err(Error::OverlapNotComplete);
            }
        }
    }
    let (a, b) = e;
    let is_shared = |w: usize| shared.iter().any(|&(s, _)| s == w);
    if a == b || !is_shared(a) || !is_shared(b) {
        return Err(Error::EdgeNotShared(a, b));
    }
    let (union, _) = glue(g1, g2, shared)?;
    Ok(union.without_edge(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use proptest::prelude::*;

    fn two_triangles_sharing_vertex() -> Graph {
        Graph::new(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    #[test]
    fn parse_triangle() {
        let g = Graph::parse("p 3 3\n0 1\n1 2\n0 2\n").unwrap();
        assert_eq!(g, families::complete(3));
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn parse_comments_and_reversed_edges() {
        let g = Graph::parse("# a comment\np 3 2\n# inner\n2 1\n1 0\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_errors_name_lines() {
        let e = Graph::parse("p 2 1\n0 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, kind: ParseErrorKind::SelfLoop(0) }), "{e:?}");
        let e = Graph::parse("p 3 2\n0 1\n1 0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, kind: ParseErrorKind::DuplicateEdge(0, 1) }), "{e:?}");
        let e = Graph::parse("p 3 1\n0 3\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, kind: ParseErrorKind::VertexOutOfRange { vertex: 3, n: 3 } }));
        let e = Graph::parse("p three 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, kind: ParseErrorKind::MalformedHeader(_) }));
        let e = Graph::parse("0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, kind: ParseErrorKind::MissingHeader }));
        let e = Graph::parse("p 3 2\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { kind: ParseErrorKind::EdgeCountMismatch { expected: 2, found: 1 }, .. }));
        let e = Graph::parse("p 3 1\n0 1\n1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, kind: ParseErrorKind::EdgeCountMismatch { .. } }));
        let e = Graph::parse("p 3 1\n0 1 2\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, kind: ParseErrorKind::MalformedEdge(_) }));
    }

    #[test]
    fn parse_double_banana() {
        let text = "p 8 18\n0 2\n0 3\n0 4\n1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n\
                    0 5\n0 6\n0 7\n1 5\n1 6\n1 7\n5 6\n5 7\n6 7\n";
        assert_eq!(Graph::parse(text).unwrap(), families::double_banana(3));
    }

    #[test]
    fn writer_is_bit_exact() {
        let g = Graph::new(4, [(2, 1), (0, 3), (1, 0)]).unwrap();
        assert_eq!(g.to_edge_list(), "p 4 3\n0 1\n0 3\n1 2\n");
        assert_eq!(Graph::parse(&g.to_edge_list()).unwrap(), g);
    }

    #[test]
    fn local_connectivity_examples() {
        assert_eq!(local_connectivity(&families::cycle(4), 0, 2).unwrap(), 2);
        assert_eq!(local_connectivity(&two_triangles_sharing_vertex(), 0, 4).unwrap(), 1);
        let k5_minus = families::complete(5).without_edge(0, 1);
        assert_eq!(local_connectivity(&k5_minus, 0, 1).unwrap(), 3);
        assert!(matches!(local_connectivity(&families::cycle(4), 0, 1), Err(Error::AdjacentPair(0, 1))));
    }

    /// Brute force: smallest vertex set whose removal separates u from v.
    fn min_vertex_cut(g: &Graph, u: usize, v: usize) -> usize {
        let others: Vec<usize> = (0..g.vertex_count()).filter(|&x| x != u && x != v).collect();
        let mut best = others.len();
        for mask in 0u32..(1 << others.len()) {
            let removed: Vec<usize> = others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).collect();
            let comps = g.components_without(&removed);
            let together = comps.iter().any(|c| c.contains(&u) && c.contains(&v));
            if !together {
                best = best.min(removed.len());
            }
        }
        best
    }

    #[test]
    fn local_connectivity_matches_brute_force_cut() {
        let k5_minus = families::complete(5).without_edge(0, 1);
        assert_eq!(min_vertex_cut(&k5_minus, 0, 1), 3);
        for g in [families::wheel(5), families::complete_bipartite(3, 3), families::double_banana(2)] {
            for u in 0..g.vertex_count() {
                for v in u + 1..g.vertex_count() {
                    if !g.has_edge(u, v) {
                        assert_eq!(local_connectivity(&g, u, v).unwrap(), min_vertex_cut(&g, u, v));
                    }
                }
            }
        }
    }

    #[test]
    fn blocks_examples() {
        assert_eq!(two_connected_components(&families::path(4)).len(), 3);
        assert_eq!(two_connected_components(&families::cycle(5)), vec![vec![0, 1, 2, 3, 4]]);
        let blocks = two_connected_components(&two_triangles_sharing_vertex());
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.len() == 3));
    }

    #[test]
    fn two_separation_examples() {
        let sep = two_separation(&families::double_banana(3), 0, 1).unwrap();
        assert_eq!(sep.first, families::complete(5));
        assert_eq!(sep.second, families::complete(5));
        let sep = two_separation(&families::cycle(4), 0, 2).unwrap();
        assert_eq!(sep.first, families::complete(3));
        assert_eq!(sep.second, families::complete(3));
        let k4 = families::complete(4);
        assert!(matches!(two_separation(&k4, 0, 1), Err(Error::AdjacentPair(..))));
        assert!(matches!(two_separation(&families::cycle(5), 0, 1), Err(Error::AdjacentPair(..))));
        assert!(matches!(two_separation(&families::wheel(4), 1, 3), Err(Error::NotSeparating(1, 3))));
    }

    #[test]
    fn t_sum_examples() {
        let k5 = families::complete(5);
        let banana = t_sum(&k5, &k5, &[(0, 0), (1, 1)], (0, 1)).unwrap();
        // relabel-free comparison through edge counts and the separation
        assert_eq!((banana.vertex_count(), banana.edge_count()), (8, 18));
        assert_eq!(banana, families::double_banana(3).relabel(&[0, 1, 2, 3, 4, 5, 6, 7]));
        let k3 = families::complete(3);
        let c4 = t_sum(&k3, &k3, &[(0, 0), (1, 1)], (0, 1)).unwrap();
        assert_eq!(c4.edge_count(), 4);
        assert!(is_k_connected(&c4, 2) && c4.degrees().iter().all(|&d| d == 2));
        let k4 = families::complete(4);
        let s = t_sum(&k4, &k4, &[(0, 0), (1, 1), (2, 2)], (0, 1)).unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (5, 6 + 6 - 3 - 1));
        let path = families::path(3);
        assert!(matches!(t_sum(&path, &k3, &[(0, 0), (2, 1)], (0, 2)), Err(Error::OverlapNotComplete)));
        assert!(matches!(t_sum(&k4, &k4, &[(0, 0), (1, 1)], (2, 3)), Err(Error::EdgeNotShared(2, 3))));
    }

    #[test]
    fn k_connectivity() {
        assert!(is_k_connected(&families::complete(4), 3));
        assert!(!is_k_connected(&families::complete(3), 3));
        assert!(is_k_connected(&families::complete_bipartite(3, 3), 3));
        assert!(!is_k_connected(&families::cycle(6), 3));
        assert!(is_k_connected(&families::cycle(6), 2));
    }

    #[test]
    fn cut_vertices_and_pairs() {
        assert_eq!(cut_vertices(&two_triangles_sharing_vertex()), vec![2]);
        assert_eq!(first_separating_pair(&families::cycle(4)), Some((0, 2)));
        assert_eq!(first_separating_pair(&families::complete(5)), None);
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (2usize..8).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut it = bits.into_iter();
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if it.next().unwrap() {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::new(n, edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn connectivity_symmetric_and_bounded(g in arb_graph()) {
            let deg = g.degrees();
            for u in 0..g.vertex_count() {
                for v in u + 1..g.vertex_count() {
                    if g.has_edge(u, v) { continue; }
                    let k = local_connectivity(&g, u, v).unwrap();
                    prop_assert_eq!(k, local_connectivity(&g, v, u).unwrap());
                    prop_assert!(k <= deg[u].min(deg[v]));
                }
            }
        }

        #[test]
        fn blocks_partition_edges(g in arb_graph()) {
            let blocks = two_connected_components(&g);
            let mut all: Vec<usize> = blocks.iter().flatten().copied().collect();
            all.sort_unstable();
            prop_assert_eq!(all, (0..g.edge_count()).collect::<Vec<_>>());
        }

        #[test]
        fn two_separation_glues_back(g in arb_graph()) {
            let n = g.vertex_count();
            for x in 0..n {
                for y in x + 1..n {
                    if g.has_edge(x, y) || !is_separating_pair(&g, x, y) { continue; }
                    let sep = two_separation(&g, x, y).unwrap();
                    let mut edges = BTreeSet::new();
                    for (side, map) in [(&sep.first, &sep.first_map), (&sep.second, &sep.second_map)] {
                        for &(a, b) in side.edges() {
                            edges.insert(ordered(map[a], map[b]));
                        }
                    }
                    edges.remove(&(x, y));
                    let glued: Vec<Edge> = edges.into_iter().collect();
                    prop_assert_eq!(glued.as_slice(), g.edges());
                }
            }
        }

        #[test]
        fn t_sum_edge_count(a in 3usize..7, b in 3usize..7, t in 2usize..4) {
            let t = t.min(a).min(b);
            let g1 = families::complete(a);
            let g2 = families::wheel(b);
            // the wheel's hub and two consecutive rim vertices form a triangle
            let tri = [0usize, 1, 2];
            let shared: Vec<(usize, usize)> = (0..t).map(|i| (i, tri[i])).collect();
            let s = t_sum(&g1, &g2, &shared, (0, 1)).unwrap();
            prop_assert_eq!(s.edge_count(), g1.edge_count() + g2.edge_count() - t * (t - 1) / 2 - 1);
        }
    }
}
