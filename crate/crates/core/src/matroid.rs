//! Matroids on edge sets given by rank oracles, and linearly represented
//! matroids whose ground elements index the rows of a matrix.

use crate::error::{Error, Result};
use crate::matrix::{FieldMatrix, LinearSubspace, RowReducer};

/// Largest circuit size `circuits_up_to` will enumerate.
pub const MAX_CIRCUIT_SIZE: usize = 4;

/// A matroid on the ground set `0..ground_size()` accessed through ranks.
pub trait Matroid: Sync {
    fn ground_size(&self) -> usize;

    /// Rank of a subset of the ground set (duplicates are not allowed).
    fn rank_of(&self, subset: &[usize]) -> usize;

    fn rank(&self) -> usize {
        let all: Vec<usize> = (0..self.ground_size()).collect();
        self.rank_of(&all)
    }

    fn is_independent(&self, subset: &[usize]) -> bool {
        self.rank_of(subset) == subset.len()
    }

    /// Greedy basis, scanning elements in index order.
    fn basis(&self) -> Vec<usize> {
        let mut basis = Vec::new();
        for e in 0..self.ground_size() {
            basis.push(e);
            if self.rank_of(&basis) < basis.len() {
                basis.pop();
            }
        }
        basis
    }

    /// The unique circuit in `basis + e`, found by basis exchange:
    /// `b` lies in it exactly when `basis - b + e` is independent.
    fn fundamental_circuit(&self, basis: &[usize], e: usize) -> Result<Vec<usize>> {
        check_basis(self, basis, e)?;
        let mut circuit = vec![e];
        for (i, &b) in basis.iter().enumerate() {
            let mut swapped = basis.to_vec();
            swapped[i] = e;
            if self.is_independent(&swapped) {
                circuit.push(b);
            }
        }
        circuit.sort_unstable();
        Ok(circuit)
    }

    fn loops(&self) -> Vec<usize> {
        (0..self.ground_size()).filter(|&e| self.rank_of(&[e]) == 0).collect()
    }

    /// Elements whose deletion lowers the rank.
    fn coloops(&self) -> Vec<usize> {
        let r = self.rank();
        (0..self.ground_size())
            .filter(|&e| {
                let rest: Vec<usize> = (0..self.ground_size()).filter(|&f| f != e).collect();
                self.rank_of(&rest) < r
            })
            .collect()
    }

    /// Minimal dependent: dependent, and independent after removing any element.
    fn is_circuit_set(&self, subset: &[usize]) -> bool {
        if subset.is_empty() || self.rank_of(subset) != subset.len() - 1 {
            return false;
        }
        (0..subset.len()).all(|i| {
            let rest: Vec<usize> = subset.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect();
            self.is_independent(&rest)
        })
    }

    /// All circuits with at most `k` elements, each sorted, in
    /// lexicographic order by size then content.
    fn circuits_up_to(&self, k: usize) -> Result<Vec<Vec<usize>>> {
        if k > MAX_CIRCUIT_SIZE {
            return Err(Error::CircuitSizeTooLarge {
                requested: k,
                max: MAX_CIRCUIT_SIZE,
            });
        }
        let m = self.ground_size();
        let mut found = Vec::new();
        for size in 1..=k.min(m) {
            let mut subset: Vec<usize> = (0..size).collect();
            loop {
                if self.is_circuit_set(&subset) {
                    found.push(subset.clone());
                }
                if !next_combination(&mut subset, m) {
                    break;
                }
            }
        }
        Ok(found)
    }

    /// Connected components, each sorted, ordered by smallest element.
    fn components(&self) -> Result<Vec<Vec<usize>>> {
        matroid_components(self)
    }
}

fn check_basis<M: Matroid + ?Sized>(m: &M, basis: &[usize], e: usize) -> Result<()> {
    if e >= m.ground_size() {
        return Err(Error::EdgeOutOfRange(e));
    }
    if let Some(&b) = basis.iter().find(|&&b| b >= m.ground_size()) {
        return Err(Error::EdgeOutOfRange(b));
    }
    if basis.contains(&e) || !m.is_independent(basis) || basis.len() != m.rank() {
        return Err(Error::NotABasis);
    }
    Ok(())
}

/// Advances `subset` to the next `k`-subset of `0..n` in lexicographic order.
pub fn next_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    for i in (0..k).rev() {
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(crate) struct UnionFind(Vec<usize>);

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|c| !c.is_empty()).collect()
    }
}

/// Components by merging fundamental circuits of a basis, then checking
/// that ranks add up across the parts. A failed check triggers pairwise
/// merging of parts whose union loses rank.
pub fn matroid_components<M: Matroid + ?Sized>(m: &M) -> Result<Vec<Vec<usize>>> {
    let n = m.ground_size();
    let basis = m.basis();
    let mut in_basis = vec![false; n];
    for &b in &basis {
        in_basis[b] = true;
    }
    let mut uf = UnionFind::new(n);
    for e in (0..n).filter(|&e| !in_basis[e]) {
        let circuit = m.fundamental_circuit(&basis, e)?;
        for &x in &circuit[1..] {
            uf.union(circuit[0], x);
        }
    }
    let mut parts = uf.classes();
    let total = m.rank();
    let sum = |parts: &[Vec<usize>]| parts.iter().map(|p| m.rank_of(p)).sum::<usize>();
    if sum(&parts) == total {
        return Ok(parts);
    }
    loop {
        let mut merged = false;
        'outer: for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                let mut joint = parts[i].clone();
                joint.extend(&parts[j]);
                if m.rank_of(&joint) < m.rank_of(&parts[i]) + m.rank_of(&parts[j]) {
                    joint.sort_unstable();
                    parts[i] = joint;
                    parts.remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
        if sum(&parts) == total {
            parts.sort_by_key(|p| p[0]);
            return Ok(parts);
        }
        if !merged {
            return Err(Error::Inconsistent(
                "matroid components fail the rank separation identity".into(),
            ));
        }
    }
}

/// Coloops found as elements outside every fundamental circuit of a basis,
/// each confirmed by a rank drop on deletion.
pub fn coloops_via_circuits<M: Matroid + ?Sized>(m: &M) -> Result<Vec<usize>> {
    let n = m.ground_size();
    let basis = m.basis();
    let mut covered = vec![false; n];
    for e in (0..n).filter(|e| !basis.contains(e)) {
        for x in m.fundamental_circuit(&basis, e)? {
            covered[x] = true;
        }
    }
    let total = m.rank();
    let mut result = Vec::new();
    for e in 0..n {
        let rest: Vec<usize> = (0..n).filter(|&f| f != e).collect();
        let drops = m.rank_of(&rest) < total;
        if drops == covered[e] {
            return Err(Error::Inconsistent(format!(
                "element {e}: circuit cover and rank drop disagree"
            )));
        }
        if drops {
            result.push(e);
        }
    }
    Ok(result)
}

/// A matroid represented by the rows of one or more matrices over F_p that
/// share the same row count. Ranks are maximized over the representations;
/// structural queries use the first representation of largest total rank.
#[derive(Clone, Debug)]
pub struct MatroidOracle {
    representations: Vec<FieldMatrix>,
    primary: usize,
    rank: usize,
}

impl MatroidOracle {
    pub fn new(representations: Vec<FieldMatrix>) -> Self {
        assert!(!representations.is_empty(), "at least one representation");
        let rows = representations[0].rows();
        assert!(representations.iter().all(|r| r.rows() == rows));
        let ranks: Vec<usize> = representations.iter().map(|r| r.rank()).collect();
        let rank = *ranks.iter().max().unwrap();
        let primary = ranks.iter().position(|&r| r == rank).unwrap();
        MatroidOracle {
            representations,
            primary,
            rank,
        }
    }

    pub fn representation(&self) -> &FieldMatrix {
        &self.representations[self.primary]
    }

    pub fn representations(&self) -> &[FieldMatrix] {
        &self.representations
    }

    /// The dual matroid: each representation's column space is replaced by
    /// its orthogonal complement.
    pub fn dual(&self) -> MatroidOracle {
        let reps = self
            .representations
            .iter()
            .map(|r| {
                let cols: Vec<Vec<_>> = (0..r.cols()).map(|c| r.column(c)).collect();
                LinearSubspace::span(r.rows(), cols)
                    .orthogonal_complement()
                    .basis()
                    .clone()
            })
            .collect();
        MatroidOracle::new(reps)
    }

    fn rank_in(rep: &FieldMatrix, subset: &[usize]) -> usize {
        let mut red = RowReducer::new(rep.cols());
        for &e in subset {
            red.insert(rep.row(e));
        }
        red.rank()
    }
}

impl Matroid for MatroidOracle {
    fn ground_size(&self) -> usize {
        self.representations[0].rows()
    }

    fn rank_of(&self, subset: &[usize]) -> usize {
        self.representations
            .iter()
            .map(|r| Self::rank_in(r, subset))
            .max()
            .unwrap_or(0)
    }

    fn rank(&self) -> usize {
        self.rank
    }

    fn basis(&self) -> Vec<usize> {
        let rep = self.representation();
        let mut red = RowReducer::new(rep.cols());
        (0..rep.rows()).filter(|&e| red.insert(rep.row(e))).collect()
    }

    /// Support of the linear dependence of row `e` on the basis rows.
    fn fundamental_circuit(&self, basis: &[usize], e: usize) -> Result<Vec<usize>> {
        check_basis(self, basis, e)?;
        let rep = self.representation();
        let mut rows = basis.to_vec();
        rows.push(e);
        let kernel = rep.select_rows(&rows).left_kernel();
        if kernel.dim() != 1 {
            return Err(Error::NotABasis);
        }
        let coeffs = kernel.vector(0);
        let mut circuit: Vec<usize> = rows
            .iter()
            .zip(&coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&x, _)| x)
            .collect();
        circuit.sort_unstable();
        Ok(circuit)
    }
}
