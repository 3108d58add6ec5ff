//! Deterministic deciders in dimensions 1 and 2: global 2-rigidity and
//! stress-linked pairs, the latter with a checkable witness subgraph.

use crate::error::Result;
use crate::graph::{cut_vertices, first_separating_pair, is_k_connected, local_connectivity, ordered, Edge, Graph};
use crate::matroid::Matroid;
use crate::pebble::{pebble_rank_2, PebbleRank2};

/// Planar global rigidity: complete on at most three vertices, otherwise
/// 3-connected with a single rigidity-matroid component covering every edge.
pub fn globally_rigid_2(g: &Graph) -> bool {
    if g.vertex_count() <= 3 {
        return g.is_complete();
    }
    if !is_k_connected(g, 3) {
        return false;
    }
    let parts = PebbleRank2::new(g).components().expect("exact rank oracle");
    parts.len() == 1
}

/// Planar rigidity-matroid bridges, decided with the pebble game.
pub fn bridges_2(g: &Graph) -> Vec<usize> {
    PebbleRank2::new(g).coloops()
}

pub fn linked_2(g: &Graph, x: usize, y: usize) -> bool {
    g.has_edge(x, y) || pebble_rank_2(&g.with_edge(x, y)) == pebble_rank_2(g)
}

/// Stress-linked in dimension 1: adjacent, or joined by two internally
/// disjoint paths.
pub fn stress_linked_1(g: &Graph, u: usize, v: usize) -> Result<bool> {
    g.check_pair(u, v)?;
    if g.has_edge(u, v) {
        return Ok(true);
    }
    Ok(local_connectivity(g, u, v)? >= 2)
}

/// Outcome of the planar decider. A linked pair comes with a subgraph of
/// the input (as an edge list) certifying the answer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Linkage {
    pub linked: bool,
    pub witness: Option<Vec<Edge>>,
}

/// Stress-linked in dimension 2.
pub fn stress_linked_2(g: &Graph, u: usize, v: usize) -> Result<Linkage> {
    g.check_pair(u, v)?;
    let identity: Vec<usize> = (0..g.vertex_count()).collect();
    let witness = decide(g.clone(), identity, u, v);
    Ok(Linkage {
        linked: witness.is_some(),
        witness,
    })
}

/// Checks a witness: a nonempty subgraph of `g` that is connected in the
/// planar rigidity matroid, contains `u` and `v`, and either contains `uv`
/// or has three internally disjoint `u-v` paths.
pub fn verify_witness(g: &Graph, u: usize, v: usize, witness: &[Edge]) -> bool {
    if witness.is_empty() || witness.iter().any(|&(a, b)| !g.has_edge(a, b)) {
        return false;
    }
    let Ok(h) = Graph::new(g.vertex_count(), witness.iter().copied()) else {
        return false;
    };
    let touched = h.non_isolated_vertices();
    if !touched.contains(&u) || !touched.contains(&v) {
        return false;
    }
    if !PebbleRank2::new(&h).components().is_ok_and(|c| c.len() == 1) {
        return false;
    }
    h.has_edge(u, v) || local_connectivity(&h, u, v).map_or(false, |k| k >= 3)
}

fn compose(outer: &[usize], inner: &[usize]) -> Vec<usize> {
    inner.iter().map(|&i| outer[i]).collect()
}

fn local(map: &[usize], v: usize) -> usize {
    map.binary_search(&v).expect("vertex kept in subgraph")
}

/// Edges of an R_2-circuit of `g` through edge `e`, which must be spanned
/// by the other edges.
fn circuit_through(g: &Graph, e: usize) -> Vec<usize> {
    let oracle = PebbleRank2::new(g);
    let mut basis = Vec::new();
    for f in (0..g.edge_count()).filter(|&f| f != e) {
        basis.push(f);
        if !oracle.is_independent(&basis) {
            basis.pop();
        }
    }
    oracle.fundamental_circuit(&basis, e).expect("edge spanned by the rest")
}

/// Returns a witness in labels of the original graph, or `None` when the
/// pair is not stress-linked. `map` sends local labels to original ones
/// and is increasing.
fn decide(g: Graph, map: Vec<usize>, u: usize, v: usize) -> Option<Vec<Edge>> {
    if g.has_edge(u, v) {
        return Some(vec![ordered(map[u], map[v])]);
    }

    let bridges = bridges_2(&g);
    let g = if bridges.is_empty() {
        g
    } else {
        let keep: Vec<usize> = (0..g.edge_count()).filter(|e| !bridges.contains(e)).collect();
        g.spanning_subgraph(&keep)
    };
    let comp = g.components().into_iter().find(|c| c.contains(&u)).expect("u has a component");
    if !comp.contains(&v) {
        return None;
    }
    let (g, map, u, v) = if comp.len() < g.vertex_count() {
        let (h, inner) = g.induced(&comp);
        let (lu, lv) = (local(&inner, u), local(&inner, v));
        (h, compose(&map, &inner), lu, lv)
    } else {
        (g, map, u, v)
    };
    let globalize = |edges: &mut dyn Iterator<Item = Edge>| -> Vec<Edge> {
        let mut out: Vec<Edge> = edges.map(|(a, b)| ordered(map[a], map[b])).collect();
        out.sort_unstable();
        out.dedup();
        out
    };

    if local_connectivity(&g, u, v).expect("nonadjacent") <= 2 {
        return None;
    }
    if globally_rigid_2(&g) {
        return Some(globalize(&mut g.edges().iter().copied()));
    }

    // Bridgeless and not 3-connected, so a cut vertex or separating pair exists.
    let separator: Vec<usize> = match cut_vertices(&g).first() {
        Some(&x) => vec![x],
        None => match first_separating_pair(&g) {
            Some((x, y)) => vec![x, y],
            None => {
                debug_assert!(false, "bridgeless graph without separator is globally rigid");
                return None;
            }
        },
    };
    let comps = g.components_without(&separator);
    let in_sep = |w: usize| separator.contains(&w);
    let side_of = |w: usize| comps.iter().position(|c| c.contains(&w));
    let first_side = if !in_sep(u) {
        side_of(u).unwrap()
    } else if !in_sep(v) {
        side_of(v).unwrap()
    } else {
        0
    };
    let mut side1 = comps[first_side].clone();
    side1.extend(&separator);
    let mut side2: Vec<usize> = comps
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != first_side)
        .flat_map(|(_, c)| c.iter().copied())
        .collect();
    side2.extend(&separator);

    let recurse_on = |vertices: &[usize], extra: Option<Edge>| {
        let (mut h, inner) = g.induced(vertices);
        if let Some((a, b)) = extra {
            h = h.with_edge(local(&inner, a), local(&inner, b));
        }
        let (lu, lv) = (local(&inner, u), local(&inner, v));
        decide(h, compose(&map, &inner), lu, lv)
    };

    if separator.len() == 1 || g.has_edge(separator[0], separator[1]) {
        return recurse_on(&side1, None);
    }

    let (x, y) = (separator[0], separator[1]);
    let (g1, inner1) = g.induced(&side1);
    let (g2, inner2) = g.induced(&side2);
    let linked1 = linked_2(&g1, local(&inner1, x), local(&inner1, y));
    let linked2 = linked_2(&g2, local(&inner2, x), local(&inner2, y));
    // circuit of side + xy through xy, in labels of `g`
    let side_circuit = |side: &Graph, inner: &[usize]| -> Vec<Edge> {
        let plus = side.with_edge(local(inner, x), local(inner, y));
        let e = plus.edge_index(local(inner, x), local(inner, y)).unwrap();
        circuit_through(&plus, e)
            .into_iter()
            .filter(|&f| f != e)
            .map(|f| {
                let (a, b) = plus.edge(f);
                (inner[a], inner[b])
            })
            .collect()
    };

    let pair_is_separator = in_sep(u) && in_sep(v);
    if pair_is_separator {
        if !linked2 {
            return recurse_on(&side1, None);
        }
        if !linked1 {
            return recurse_on(&side2, None);
        }
        let mut both = side_circuit(&g1, &inner1);
        both.extend(side_circuit(&g2, &inner2));
        return Some(globalize(&mut both.into_iter()));
    }
    if !linked1 || !linked2 {
        return recurse_on(&side1, None);
    }
    let mut h = recurse_on(&side1, Some((x, y)))?;
    let virtual_edge = ordered(map[x], map[y]);
    if let Ok(pos) = h.binary_search(&virtual_edge) {
        h.remove(pos);
        let c2 = side_circuit(&g2, &inner2);
        h.extend(globalize(&mut c2.into_iter()));
        h.sort_unstable();
        h.dedup();
    }
    Some(h)
}
