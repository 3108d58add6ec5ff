//! Named graph families.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const FAMILY_NAMES: &[&str] = &[
    "complete",
    "cycle",
    "path",
    "complete_bipartite",
    "wheel",
    "double_banana",
    "empty",
];

pub fn complete(n: usize) -> Graph {
    Graph::from_adjacency(n, |_, _| true)
}

/// The cycle `0 - 1 - ... - (n-1) - 0`; requires `n >= 3`.
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    Graph::from_adjacency(n, |u, v| v == u + 1 || (u == 0 && v == n - 1))
}

/// The path on `n` vertices.
pub fn path(n: usize) -> Graph {
    Graph::from_adjacency(n, |u, v| v == u + 1)
}

/// `K_{a,b}` with sides `0..a` and `a..a+b`.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_adjacency(a + b, |u, v| u < a && v >= a)
}

/// Hub `0` joined to every vertex of the rim cycle `1..=n`; requires `n >= 3`.
pub fn wheel(n: usize) -> Graph {
    assert!(n >= 3, "wheel needs a rim of at least 3 vertices");
    Graph::from_adjacency(n + 1, |u, v| u == 0 || v == u + 1 || (u == 1 && v == n))
}

/// Two copies of `K_{d+2}` minus an edge glued along the missing pair.
/// The hinge is `{0, 1}`; the copies use `2..=d+1` and `d+2..=2d+1`.
pub fn double_banana(d: usize) -> Graph {
    assert!(d >= 1);
    let side = |w: usize| if w < 2 { 0 } else if w <= d + 1 { 1 } else { 2 };
    Graph::from_adjacency(2 * d + 2, |u, v| {
        let (a, b) = (side(u), side(v));
        match (a, b) {
            (0, 0) => false,
            (0, _) => true,
            _ => a == b,
        }
    })
}

/// Builds a family member from its name and integer parameters.
pub fn family(name: &str, params: &[usize]) -> Result<Graph> {
    let invalid = |reason: &str| Error::InvalidParameter {
        family: name.to_string(),
        reason: reason.to_string(),
    };
    let one = || match params {
        [x] => Ok(*x),
        _ => Err(invalid("expected exactly one parameter")),
    };
    match name {
        "complete" => Ok(complete(one()?)),
        "empty" => Ok(Graph::empty(one()?)),
        "path" => {
            let n = one()?;
            if n == 0 {
                return Err(invalid("a path needs at least 1 vertex"));
            }
            Ok(path(n))
        }
        "cycle" => {
            let n = one()?;
            if n < 3 {
                return Err(invalid("a cycle needs at least 3 vertices"));
            }
            Ok(cycle(n))
        }
        "wheel" => {
            let n = one()?;
            if n < 3 {
                return Err(invalid("a wheel rim needs at least 3 vertices"));
            }
            Ok(wheel(n))
        }
        "double_banana" => {
            let d = one()?;
            if d == 0 {
                return Err(invalid("dimension must be at least 1"));
            }
            Ok(double_banana(d))
        }
        "complete_bipartite" => match params {
            [a, b] => Ok(complete_bipartite(*a, *b)),
            _ => Err(invalid("expected two parameters")),
        },
        _ => Err(Error::UnknownFamily(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(family("complete", &[4]).unwrap().edge_count(), 6);
        let b = family("double_banana", &[3]).unwrap();
        assert_eq!((b.vertex_count(), b.edge_count()), (8, 18));
        assert_eq!(family("complete_bipartite", &[3, 3]).unwrap().edge_count(), 9);
        let w = wheel(5);
        assert_eq!((w.vertex_count(), w.edge_count()), (6, 10));
        assert_eq!(path(4).edge_count(), 3);
        assert_eq!(cycle(5).edge_count(), 5);
        assert!(!double_banana(2).has_edge(0, 1));
    }

    #[test]
    fn errors() {
        assert!(matches!(family("petersen", &[]), Err(Error::UnknownFamily(_))));
        assert!(matches!(family("cycle", &[2]), Err(Error::InvalidParameter { .. })));
        assert!(matches!(family("complete_bipartite", &[3]), Err(Error::InvalidParameter { .. })));
    }
}
