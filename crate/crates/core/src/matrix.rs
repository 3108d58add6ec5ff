//! Dense exact linear algebra over F_p.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::field::Fp;
use crate::rng::Rng;

/// Row-major dense matrix over F_p. Zero-row and zero-column shapes are legal.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Fp>,
}

impl FieldMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Fp>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        FieldMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        FieldMatrix::new(rows, cols, vec![Fp::ZERO; rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = FieldMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Fp::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors of equal length `cols`.
    pub fn from_rows<R: AsRef<[Fp]>>(cols: usize, rows: &[R]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols);
            entries.extend_from_slice(r);
        }
        FieldMatrix::new(rows.len(), cols, entries)
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_columns<C: AsRef<[Fp]>>(rows: usize, columns: &[C]) -> Self {
        let mut m = FieldMatrix::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            let c = c.as_ref();
            assert_eq!(c.len(), rows);
            for (i, &x) in c.iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        m
    }

    pub fn random(rows: usize, cols: usize, rng: &mut Rng) -> Self {
        FieldMatrix::new(rows, cols, (0..rows * cols).map(|_| rng.scalar()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Fp] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Fp] {
        &mut self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Fp> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn entries(&self) -> &[Fp] {
        &self.entries
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut t = FieldMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn select_rows(&self, rows: &[usize]) -> FieldMatrix {
        let mut entries = Vec::with_capacity(rows.len() * self.cols);
        for &r in rows {
            entries.extend_from_slice(self.row(r));
        }
        FieldMatrix::new(rows.len(), self.cols, entries)
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(cols: usize, blocks: &[FieldMatrix]) -> FieldMatrix {
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            entries.extend_from_slice(&b.entries);
            rows += b.rows;
        }
        FieldMatrix::new(rows, cols, entries)
    }

    pub fn mul(&self, rhs: &FieldMatrix) -> FieldMatrix {
        assert_eq!(self.cols, rhs.rows);
        let mut out = FieldMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// `M x`.
    pub fn mul_vec(&self, x: &[Fp]) -> Vec<Fp> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `yᵀ M`.
    pub fn vec_mul(&self, y: &[Fp]) -> Vec<Fp> {
        assert_eq!(y.len(), self.rows);
        let mut out = vec![Fp::ZERO; self.cols];
        for (r, &coef) in y.iter().enumerate() {
            if coef.is_zero() {
                continue;
            }
            for (o, &a) in out.iter_mut().zip(self.row(r)) {
                *o += coef * a;
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|x| x.is_zero())
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (FieldMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            // first nonzero entry in the column
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, lead);
            let inv = m[(lead, c)].inv();
            for x in m.row_mut(lead) {
                *x *= inv;
            }
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m[(r, c)];
                if factor.is_zero() {
                    continue;
                }
                let (src, dst) = m.two_rows(lead, r);
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d -= factor * s;
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut reducer = RowReducer::new(self.cols);
        for r in 0..self.rows {
            reducer.insert(self.row(r));
        }
        reducer.rank()
    }

    /// Basis of `{x : M x = 0}`.
    pub fn right_kernel(&self) -> LinearSubspace {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![Fp::ZERO; self.cols];
            x[free] = Fp::ONE;
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -r[(i, free)];
            }
            basis.push(x);
        }
        LinearSubspace::from_independent(self.cols, basis)
    }

    /// Basis of `{y : yᵀ M = 0}`.
    pub fn left_kernel(&self) -> LinearSubspace {
        self.transpose().right_kernel()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Borrows row `src` immutably and row `dst` mutably.
    fn two_rows(&mut self, src: usize, dst: usize) -> (&[Fp], &mut [Fp]) {
        assert_ne!(src, dst);
        let cols = self.cols;
        if src < dst {
            let (lo, hi) = self.entries.split_at_mut(dst * cols);
            (&lo[src * cols..(src + 1) * cols], &mut hi[..cols])
        } else {
            let (lo, hi) = self.entries.split_at_mut(src * cols);
            (&hi[..cols], &mut lo[dst * cols..(dst + 1) * cols])
        }
    }
}

impl Index<(usize, usize)> for FieldMatrix {
    type Output = Fp;
    fn index(&self, (r, c): (usize, usize)) -> &Fp {
        assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for FieldMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Fp {
        assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FieldMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Incremental Gaussian elimination: keeps a row-echelon basis of the
/// vectors inserted so far.
#[derive(Clone, Debug)]
pub struct RowReducer {
    cols: usize,
    rows: Vec<Vec<Fp>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer {
            cols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored basis. Rows are processed in insertion
    /// order; every stored row vanishes on the pivots of earlier rows.
    pub fn reduce(&self, v: &[Fp]) -> Vec<Fp> {
        assert_eq!(v.len(), self.cols);
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let factor = v[p];
            if factor.is_zero() {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(row) {
                *x -= factor * b;
            }
        }
        v
    }

    pub fn contains(&self, v: &[Fp]) -> bool {
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    /// Inserts `v`; returns true when it was independent of the stored rows.
    pub fn insert(&mut self, v: &[Fp]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            *x *= inv;
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn into_rows(self) -> Vec<Vec<Fp>> {
        self.rows
    }
}

/// Rank, right kernel and left kernel of a matrix.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub rank: usize,
    pub right_kernel: LinearSubspace,
    pub left_kernel: LinearSubspace,
}

pub fn decompose(m: &FieldMatrix) -> Decomposition {
    let right_kernel = m.right_kernel();
    let left_kernel = m.left_kernel();
    let rank = m.cols() - right_kernel.dim();
    debug_assert_eq!(rank + left_kernel.dim(), m.rows());
    Decomposition {
        rank,
        right_kernel,
        left_kernel,
    }
}

/// A subspace of F_p^k, held as a matrix whose columns form a basis.
#[derive(Clone, Debug)]
pub struct LinearSubspace {
    ambient: usize,
    basis: FieldMatrix,
}

impl LinearSubspace {
    pub fn zero(ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: FieldMatrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        LinearSubspace {
            ambient,
            basis: FieldMatrix::identity(ambient),
        }
    }

    fn from_independent(ambient: usize, vectors: Vec<Vec<Fp>>) -> Self {
        LinearSubspace {
            ambient,
            basis: FieldMatrix::from_columns(ambient, &vectors),
        }
    }

    /// Span of arbitrary vectors; a basis is extracted greedily in input order.
    pub fn span<I, V>(ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Fp]>,
    {
        let mut reducer = RowReducer::new(ambient);
        let mut kept = Vec::new();
        for v in vectors {
            if reducer.insert(v.as_ref()) {
                kept.push(v.as_ref().to_vec());
            }
        }
        LinearSubspace::from_independent(ambient, kept)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Basis matrix, one basis vector per column.
    pub fn basis(&self) -> &FieldMatrix {
        &self.basis
    }

    pub fn vector(&self, i: usize) -> Vec<Fp> {
        self.basis.column(i)
    }

    pub fn vectors(&self) -> impl Iterator<Item = Vec<Fp>> + '_ {
        (0..self.dim()).map(|i| self.vector(i))
    }

    /// Random element: a combination of the basis with uniform coefficients.
    pub fn random_element(&self, rng: &mut Rng) -> Vec<Fp> {
        let coeffs: Vec<Fp> = (0..self.dim()).map(|_| rng.scalar()).collect();
        self.basis.mul_vec(&coeffs)
    }

    fn reducer(&self) -> RowReducer {
        let mut reducer = RowReducer::new(self.ambient);
        for v in self.vectors() {
            reducer.insert(&v);
        }
        reducer
    }

    pub fn contains(&self, v: &[Fp]) -> bool {
        assert_eq!(v.len(), self.ambient);
        self.reducer().contains(v)
    }

    pub fn is_subspace_of(&self, other: &LinearSubspace) -> bool {
        if self.ambient != other.ambient {
            return false;
        }
        let reducer = other.reducer();
        self.vectors().all(|v| reducer.contains(&v))
    }

    /// Basis-independent equality by mutual containment.
    pub fn same_as(&self, other: &LinearSubspace) -> bool {
        self.dim() == other.dim() && self.is_subspace_of(other)
    }

    /// `{y : yᵀx = 0 for all x in self}` under the bilinear form Σ x_i y_i.
    pub fn orthogonal_complement(&self) -> LinearSubspace {
        self.basis.transpose().right_kernel()
    }

    pub fn intersection(&self, other: &LinearSubspace) -> LinearSubspace {
        let a = self.orthogonal_complement();
        let b = other.orthogonal_complement();
        let stacked: Vec<Vec<Fp>> = a.vectors().chain(b.vectors()).collect();
        FieldMatrix::from_rows(self.ambient, &stacked).right_kernel()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use crate::rng::Rng;

    fn fp(x: i64) -> Fp {
        Fp::from_i64(x)
    }

    #[test]
    fn identity_has_full_rank_and_trivial_kernels() {
        let d = decompose(&FieldMatrix::identity(3));
        assert_eq!(d.rank, 3);
        assert_eq!(d.right_kernel.dim(), 0);
        assert_eq!(d.left_kernel.dim(), 0);
    }

    #[test]
    fn zero_matrix_kernels() {
        let d = decompose(&FieldMatrix::zeros(2, 5));
        assert_eq!(d.rank, 0);
        assert_eq!(d.right_kernel.dim(), 5);
        assert_eq!(d.left_kernel.dim(), 2);
    }

    #[test]
    fn degenerate_shapes() {
        let d = decompose(&FieldMatrix::zeros(0, 4));
        assert_eq!((d.rank, d.right_kernel.dim(), d.left_kernel.dim()), (0, 4, 0));
        let d = decompose(&FieldMatrix::zeros(3, 0));
        assert_eq!((d.rank, d.right_kernel.dim(), d.left_kernel.dim()), (0, 0, 3));
    }

    #[test]
    fn complement_of_full_space_is_zero() {
        assert_eq!(LinearSubspace::full(4).orthogonal_complement().dim(), 0);
        assert_eq!(LinearSubspace::zero(4).orthogonal_complement().dim(), 4);
    }

    #[test]
    fn complement_of_diagonal_line() {
        let s = LinearSubspace::span(2, [vec![fp(1), fp(1)]]);
        let c = s.orthogonal_complement();
        let expected = LinearSubspace::span(2, [vec![fp(1), fp(-1)]]);
        assert!(c.same_as(&expected));
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = FieldMatrix::from_rows(4, &[
            vec![fp(1), fp(2), fp(3), fp(4)],
            vec![fp(2), fp(4), fp(6), fp(8)],
            vec![fp(0), fp(1), fp(-1), fp(5)],
        ]);
        let d = decompose(&m);
        assert_eq!(d.rank, 2);
        for v in d.right_kernel.vectors() {
            assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
        for y in d.left_kernel.vectors() {
            assert!(m.vec_mul(&y).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn intersection_of_planes() {
        // span{e0, e1} ∩ span{e1, e2} = span{e1}
        let e = |i: usize| {
            let mut v = vec![Fp::ZERO; 3];
            v[i] = Fp::ONE;
            v
        };
        let a = LinearSubspace::span(3, [e(0), e(1)]);
        let b = LinearSubspace::span(3, [e(1), e(2)]);
        let i = a.intersection(&b);
        assert!(i.same_as(&LinearSubspace::span(3, [e(1)])));
    }

    fn arb_matrix() -> impl Strategy<Value = FieldMatrix> {
        (0usize..6, 0usize..6, any::<u64>(), 0usize..3).prop_map(|(r, c, seed, low_rank)| {
            let mut rng = Rng::new(seed);
            if low_rank > 0 && r > 0 && c > 0 {
                // product of thin factors gives a rank-deficient matrix
                let k = low_rank.min(r).min(c);
                FieldMatrix::random(r, k, &mut rng).mul(&FieldMatrix::random(k, c, &mut rng))
            } else {
                FieldMatrix::random(r, c, &mut rng)
            }
        })
    }

    proptest! {
        #[test]
        fn dimension_identities(m in arb_matrix()) {
            let d = decompose(&m);
            prop_assert_eq!(d.rank + d.right_kernel.dim(), m.cols());
            prop_assert_eq!(d.rank + d.left_kernel.dim(), m.rows());
        }

        #[test]
        fn decompose_is_deterministic(m in arb_matrix()) {
            let a = decompose(&m);
            let b = decompose(&m);
            prop_assert_eq!(a.rank, b.rank);
            prop_assert_eq!(a.right_kernel.basis(), b.right_kernel.basis());
            prop_assert_eq!(a.left_kernel.basis(), b.left_kernel.basis());
        }

        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix()) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn complement_is_involution(m in arb_matrix()) {
            let s = LinearSubspace::span(m.cols(), (0..m.rows()).map(|r| m.row(r).to_vec()));
            let c = s.orthogonal_complement();
            prop_assert_eq!(s.dim() + c.dim(), s.ambient_dim());
            prop_assert!(c.orthogonal_complement().same_as(&s));
        }
    }
}
