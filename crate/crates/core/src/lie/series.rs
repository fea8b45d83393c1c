use crate::exactlin::{Subspace, Vector};

use super::LieAlgebra;

/// Terms of a central or derived series, up to and including the first term
/// that repeats. The repeated term itself is not stored twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
}

impl SeriesReport {
    pub fn dims(&self) -> Vec<usize> {
        self.terms.iter().map(Subspace::dim).collect()
    }

    pub fn last(&self) -> &Subspace {
        self.terms.last().expect("series has at least one term")
    }

    /// The `i`-th term (1-based), continuing with the stable term past the end.
    pub fn term(&self, i: usize) -> &Subspace {
        assert!(i >= 1);
        self.terms.get(i - 1).unwrap_or_else(|| self.last())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolvabilityReport {
    /// Smallest `k` with vanishing `k`-th derived algebra.
    pub derived_length: Option<usize>,
    /// Smallest `c` with `gamma_{c+1} = 0`.
    pub nilpotency_class: Option<usize>,
    pub two_step_solvable: bool,
}

impl LieAlgebra {
    fn iterate_series(
        &self,
        first: Subspace,
        next: impl Fn(&Subspace) -> Subspace,
    ) -> SeriesReport {
        let mut terms = vec![first];
        // Each strict step changes the dimension, so dim+1 steps suffice.
        for _ in 0..=self.dim() {
            let nxt = next(terms.last().unwrap());
            if &nxt == terms.last().unwrap() {
                return SeriesReport {
                    terms,
                    stabilized: true,
                };
            }
            terms.push(nxt);
        }
        SeriesReport {
            terms,
            stabilized: false,
        }
    }

    /// `gamma_1 = g`, `gamma_{i+1} = [g, gamma_i]`.
    pub fn lower_central_series(&self) -> SeriesReport {
        let full = Subspace::full(self.dim());
        self.iterate_series(full.clone(), |t| {
            self.bracket_span(&full, t).expect("same ambient")
        })
    }

    pub fn derived_series(&self) -> SeriesReport {
        self.iterate_series(Subspace::full(self.dim()), |t| {
            self.bracket_span(t, t).expect("same ambient")
        })
    }

    /// `Z_1 = Z(g)`, `Z_{i+1}` the preimage of the center of `g / Z_i`.
    pub fn upper_central_series(&self) -> SeriesReport {
        let n = self.dim();
        self.iterate_series(self.center(), |zi| {
            let q = self
                .quotient(zi)
                .expect("terms of the upper central series are ideals");
            let lifts: Vec<Vector> = q
                .algebra
                .center()
                .basis_vectors()
                .map(|v| q.lift(v))
                .collect();
            Subspace::span(n, lifts)
                .and_then(|s| s.sum(zi))
                .expect("same ambient")
        })
    }

    pub fn classify_solvability(&self) -> SolvabilityReport {
        let derived = self.derived_series();
        let lower = self.lower_central_series();
        let derived_length = derived.last().is_zero().then(|| derived.terms.len() - 1);
        let nilpotency_class = lower.last().is_zero().then(|| lower.terms.len() - 1);
        SolvabilityReport {
            derived_length,
            nilpotency_class,
            two_step_solvable: derived.term(3).is_zero(),
        }
    }
}
