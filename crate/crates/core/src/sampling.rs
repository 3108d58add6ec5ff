//! Repetition and retry policy for randomized evaluations.

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::matrix::RowReducer;
use crate::rng::Rng;

/// Fresh-seed retries after the repetitions of a query disagree.
pub const MAX_RETRIES: usize = 3;

/// Batches drawn before a non-stabilizing span is reported inconsistent.
const MAX_BATCHES: usize = 8;

/// Evaluates `f` on `reps` independent child streams and returns the common
/// value. Disagreement or an inner inconsistency triggers a retry with fresh
/// streams.
pub fn consensus<T: PartialEq>(
    rng: &mut Rng,
    reps: usize,
    what: &str,
    mut f: impl FnMut(&mut Rng) -> Result<T>,
) -> Result<T> {
    let mut last = String::new();
    'attempt: for _ in 0..=MAX_RETRIES {
        let mut first: Option<T> = None;
        for _ in 0..reps.max(1) {
            let mut child = rng.fork();
            let value = match f(&mut child) {
                Ok(v) => v,
                Err(Error::Inconsistent(msg)) => {
                    last = msg;
                    continue 'attempt;
                }
                Err(e) => return Err(e),
            };
            match &first {
                None => first = Some(value),
                Some(x) if *x == value => {}
                Some(_) => {
                    last = "repetitions disagree".into();
                    continue 'attempt;
                }
            }
        }
        return Ok(first.expect("at least one repetition"));
    }
    Err(Error::Inconsistent(format!("{what}: {last}")))
}

/// Maximum of `f` over `reps` independent child streams. Inner
/// inconsistencies are retried with fresh streams.
pub fn maximum(rng: &mut Rng, reps: usize, what: &str, mut f: impl FnMut(&mut Rng) -> Result<usize>) -> Result<usize> {
    let mut best = None;
    for _ in 0..reps.max(1) {
        let mut attempt = 0;
        let value = loop {
            let mut child = rng.fork();
            match f(&mut child) {
                Ok(v) => break v,
                Err(Error::Inconsistent(_)) if attempt < MAX_RETRIES => attempt += 1,
                Err(Error::Inconsistent(msg)) => return Err(Error::Inconsistent(format!("{what}: {msg}"))),
                Err(e) => return Err(e),
            }
        };
        best = Some(best.map_or(value, |b: usize| b.max(value)));
    }
    Ok(best.unwrap())
}

/// Span of sampled vectors in `F_p^ambient`. Batches start at `initial` and
/// double until two consecutive batches add nothing or the span is full.
pub fn stabilized_span(
    ambient: usize,
    initial: usize,
    rng: &mut Rng,
    mut sample: impl FnMut(&mut Rng) -> Vec<Fp>,
) -> Result<RowReducer> {
    let mut span = RowReducer::new(ambient);
    let mut batch = initial.max(1);
    let mut quiet = 0;
    for _ in 0..MAX_BATCHES {
        let before = span.rank();
        for _ in 0..batch {
            if span.rank() == ambient {
                return Ok(span);
            }
            span.insert(&sample(rng));
        }
        if span.rank() == ambient {
            return Ok(span);
        }
        if span.rank() == before {
            quiet += 1;
            if quiet == 2 {
                return Ok(span);
            }
        } else {
            quiet = 0;
        }
        batch *= 2;
    }
    Err(Error::Inconsistent(format!(
        "sampled span did not stabilize after {MAX_BATCHES} batches"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn consensus_returns_common_value() {
        let mut rng = Rng::new(1);
        assert_eq!(consensus(&mut rng, 3, "t", |_| Ok(7)).unwrap(), 7);
    }

    #[test]
    fn consensus_exhausts_on_persistent_disagreement() {
        let mut rng = Rng::new(1);
        let mut calls = 0;
        let r = consensus(&mut rng, 2, "t", |_| {
            calls += 1;
            Ok(calls % 2)
        });
        assert!(matches!(r, Err(Error::Inconsistent(_))));
    }

    #[test]
    fn span_of_plane_stabilizes_at_two() {
        let mut rng = Rng::new(5);
        let span = stabilized_span(4, 2, &mut rng, |r| {
            let (a, b) = (r.scalar(), r.scalar());
            vec![a, b, a + b, Fp::ZERO]
        })
        .unwrap();
        assert_eq!(span.rank(), 2);
    }
}
