//! The generic stress matroid, obtained as the dual of the matroid of a
//! contact locus, and the affine edge measurement matroid.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::graph::Graph;
use crate::matrix::{FieldMatrix, LinearSubspace};
use crate::matroid::MatroidOracle;
use crate::rigidity::{measure, trivial_dim, Framework};
use crate::rng::Rng;
use crate::sampling::{stabilized_span, MAX_RETRIES};
use crate::stress::{config_in, stress_basis, stress_kernel_1};

/// A random framework with a random combination of its stress basis.
#[derive(Clone, Debug)]
pub struct GenericStressSample {
    pub framework: Framework,
    pub omega: Vec<Fp>,
}

pub fn generic_stress(g: &Graph, d: usize, rng: &mut Rng) -> Result<GenericStressSample> {
    let framework = Framework::random(g, d, rng)?;
    let basis = stress_basis(&framework);
    let mut omega = vec![Fp::ZERO; g.edge_count()];
    for w in basis.vectors() {
        let c = rng.nonzero_scalar();
        for (o, x) in omega.iter_mut().zip(&w) {
            *o += c * *x;
        }
    }
    Ok(GenericStressSample { framework, omega })
}

/// The contact locus: span of measurements of configurations whose
/// coordinate vectors lie in the stress kernel of `omega`.
pub fn contact_locus_basis(s: &GenericStressSample, rng: &mut Rng) -> Result<LinearSubspace> {
    let g = s.framework.graph();
    let d = s.framework.dim();
    let m = g.edge_count();
    let kernel = stress_kernel_1(g, &s.omega);
    let span = stabilized_span(m, kernel.dim() * d + 4, rng, |r| measure(g, d, &config_in(&kernel, d, r)))?;
    Ok(LinearSubspace::span(m, span.into_rows()))
}

fn with_retries<T>(rng: &mut Rng, mut f: impl FnMut(&mut Rng) -> Result<T>) -> Result<T> {
    let mut attempt = 0;
    loop {
        match f(&mut rng.fork()) {
            Err(Error::Inconsistent(_)) if attempt < MAX_RETRIES => attempt += 1,
            other => return other,
        }
    }
}

/// Contact loci at `reps` independent generic stresses.
pub fn contact_loci(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<Vec<LinearSubspace>> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    (0..reps.max(1))
        .map(|_| {
            with_retries(rng, |r| {
                let s = generic_stress(g, d, r)?;
                contact_locus_basis(&s, r)
            })
        })
        .collect()
}

/// The generic stress matroid: the row matroid of a basis of the
/// orthogonal complement of the contact locus.
pub fn stress_matroid_oracle(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<MatroidOracle> {
    let reps = contact_loci(g, d, rng, reps)?
        .into_iter()
        .map(|l| l.orthogonal_complement().basis().clone())
        .collect();
    Ok(MatroidOracle::new(reps))
}

/// Rows `e_uv^T Q e_uv` against the basis `E_ii`, `E_ij + E_ji` (i < j) of
/// symmetric matrices.
pub fn affine_matrix(f: &Framework) -> FieldMatrix {
    let d = f.dim();
    let g = f.graph();
    let mut a = FieldMatrix::zeros(g.edge_count(), trivial_dim(d));
    let two = Fp::new(2);
    for (row, &(u, v)) in g.edges().iter().enumerate() {
        let delta: Vec<Fp> = (0..d).map(|i| f.point(u)[i] - f.point(v)[i]).collect();
        let mut col = 0;
        for i in 0..d {
            a[(row, col)] = delta[i] * delta[i];
            col += 1;
        }
        for i in 0..d {
            for j in i + 1..d {
                a[(row, col)] = two * delta[i] * delta[j];
                col += 1;
            }
        }
    }
    a
}

pub fn affine_matroid_oracle(g: &Graph, d: usize, rng: &mut Rng, reps: usize) -> Result<MatroidOracle> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let reps = (0..reps.max(1))
        .map(|_| Ok(affine_matrix(&Framework::random(g, d, &mut rng.fork())?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(MatroidOracle::new(reps))
}

/// Edge directions lie on a conic at infinity exactly when the affine
/// measurement matrix has deficient column rank.
pub fn conic_at_infinity(f: &Framework) -> bool {
    affine_matrix(f).rank() < trivial_dim(f.dim())
}
