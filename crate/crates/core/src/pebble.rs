//! The (2,3)-pebble game: a deterministic rank oracle for the generic
//! rigidity matroid in the plane.

use crate::graph::Graph;
use crate::matroid::Matroid;

/// Pebble-game state on `n` vertices, each starting with two pebbles.
#[derive(Clone, Debug)]
pub struct PebbleGame {
    pebbles: Vec<u8>,
    out: Vec<Vec<usize>>,
}

impl PebbleGame {
    pub fn new(n: usize) -> Self {
        PebbleGame {
            pebbles: vec![2; n],
            out: vec![Vec::new(); n],
        }
    }

    /// Moves one free pebble onto `s` from a vertex outside `{u, v}`
    /// reachable along directed edges, reversing the path used.
    fn fetch(&mut self, s: usize, u: usize, v: usize) -> bool {
        let n = self.pebbles.len();
        let mut parent = vec![usize::MAX; n];
        let mut visited = vec![false; n];
        visited[s] = true;
        let mut stack = vec![s];
        let mut target = None;
        while let Some(x) = stack.pop() {
            if x != u && x != v && self.pebbles[x] > 0 {
                target = Some(x);
                break;
            }
            for &y in self.out[x].iter().rev() {
                if !visited[y] {
                    visited[y] = true;
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let Some(w) = target else {
            return false;
        };
        let mut y = w;
        while y != s {
            let x = parent[y];
            let pos = self.out[x].iter().position(|&z| z == y).expect("edge on path");
            self.out[x].swap_remove(pos);
            self.out[y].push(x);
            y = x;
        }
        self.pebbles[w] -= 1;
        self.pebbles[s] += 1;
        true
    }

    /// Inserts `uv` if it keeps the accepted edge set (2,3)-sparse.
    pub fn try_insert(&mut self, u: usize, v: usize) -> bool {
        while self.pebbles[u] < 2 && self.fetch(u, u, v) {}
        while self.pebbles[v] < 2 && self.fetch(v, u, v) {}
        if self.pebbles[u] + self.pebbles[v] < 4 {
            return false;
        }
        self.pebbles[u] -= 1;
        self.out[u].push(v);
        true
    }
}

/// Indices (into `edges`) of a maximal (2,3)-sparse subset, scanning in order.
pub fn pebble_independent(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut game = PebbleGame::new(n);
    (0..edges.len()).filter(|&i| game.try_insert(edges[i].0, edges[i].1)).collect()
}

/// Generic rank of `g` in the planar rigidity matroid.
pub fn pebble_rank_2(g: &Graph) -> usize {
    pebble_independent(g.vertex_count(), g.edges()).len()
}

/// The planar generic rigidity matroid of a graph, decided exactly by the
/// pebble game.
#[derive(Clone, Debug)]
pub struct PebbleRank2 {
    graph: Graph,
}

impl PebbleRank2 {
    pub fn new(graph: &Graph) -> Self {
        PebbleRank2 { graph: graph.clone() }
    }
}

impl Matroid for PebbleRank2 {
    fn ground_size(&self) -> usize {
        self.graph.edge_count()
    }

    fn rank_of(&self, subset: &[usize]) -> usize {
        let edges: Vec<_> = subset.iter().map(|&i| self.graph.edge(i)).collect();
        pebble_independent(self.graph.vertex_count(), &edges).len()
    }
}
