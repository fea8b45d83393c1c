//! Buchberger's algorithm under graded-lex order, used only to certify that
//! a system has no common zero (1 lies in the ideal).

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::One;

use super::{ConstraintSystem, Monomial, Polynomial};
use crate::exactlin::Rational;

/// Hard caps. Hitting any of them yields [`CertifyOutcome::BudgetExhausted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_basis_size: usize,
    /// S-pairs whose lcm has larger degree are skipped (and the run can then
    /// no longer finish with `SolutionsMayExist`).
    pub max_degree: usize,
    pub time_budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_basis_size: 5000,
            max_degree: 8,
            time_budget: Duration::from_secs(60),
        }
    }
}

/// Where a basis element came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// The `k`-th input polynomial (0-based), reduced.
    Input(usize),
    /// Reduced S-polynomial of two earlier basis elements.
    SPolynomial(usize, usize),
}

/// The chain of S-polynomial steps that produced a nonzero constant: every
/// basis element the constant depends on through S-pair construction, in
/// creation order. Reductions also used other basis elements; those are not
/// listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub steps: Vec<(usize, Origin)>,
    /// Origin of the nonzero constant itself.
    pub constant_from: Origin,
    pub pairs_processed: usize,
    pub basis_size: usize,
    /// Descriptions of the input equations the certificate starts from, when
    /// known.
    pub inputs: Vec<(usize, String)>,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, label) in &self.inputs {
            writeln!(f, "input {k}: {label}")?;
        }
        for (idx, origin) in &self.steps {
            match origin {
                Origin::Input(k) => writeln!(f, "g{idx} = input {k}")?,
                Origin::SPolynomial(a, b) => writeln!(f, "g{idx} = S(g{a}, g{b}) reduced")?,
            }
        }
        match self.constant_from {
            Origin::Input(k) => write!(f, "input {k} reduces to a nonzero constant")?,
            Origin::SPolynomial(a, b) => write!(f, "S(g{a}, g{b}) reduces to a nonzero constant")?,
        }
        write!(
            f,
            " ({} pairs processed, basis size {})",
            self.pairs_processed, self.basis_size
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertifyOutcome {
    /// 1 is in the ideal: no common zero over any field extension.
    Inconsistent(Certificate),
    /// A Groebner basis was completed without reaching 1. This does not
    /// claim that a rational solution exists.
    SolutionsMayExist { basis_size: usize },
    BudgetExhausted {
        reason: String,
        basis_size: usize,
        pairs_left: usize,
    },
}

impl CertifyOutcome {
    pub fn is_inconsistent(&self) -> bool {
        matches!(self, CertifyOutcome::Inconsistent(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            CertifyOutcome::Inconsistent(_) => "Inconsistent",
            CertifyOutcome::SolutionsMayExist { .. } => "SolutionsMayExist",
            CertifyOutcome::BudgetExhausted { .. } => "BudgetExhausted",
        }
    }
}

/// Runs on the equations of `s` (eliminated unknowns are already substituted).
pub fn buchberger_certify(s: &ConstraintSystem, limits: &Limits) -> CertifyOutcome {
    let mut out = certify_polynomials(&s.polynomials(), limits);
    if let CertifyOutcome::Inconsistent(cert) = &mut out {
        let used = cert
            .steps
            .iter()
            .map(|(_, o)| *o)
            .chain(std::iter::once(cert.constant_from));
        let mut ks: Vec<usize> = used
            .filter_map(|o| {
                if let Origin::Input(k) = o {
                    Some(k)
                } else {
                    None
                }
            })
            .collect();
        ks.sort_unstable();
        ks.dedup();
        cert.inputs = ks
            .into_iter()
            .map(|k| {
                let e = &s.equations()[k];
                let idx: Vec<String> = e.indices.iter().map(ToString::to_string).collect();
                (
                    k,
                    format!(
                        "{} at ({}): {} = 0",
                        e.origin,
                        idx.join(","),
                        s.display(&e.poly)
                    ),
                )
            })
            .collect();
    }
    out
}

pub fn certify_polynomials(input: &[Polynomial], limits: &Limits) -> CertifyOutcome {
    let mut run = Run::new(limits);
    match run.execute(input) {
        Ok(outcome) => outcome,
        Err(reason) => CertifyOutcome::BudgetExhausted {
            reason,
            basis_size: run.basis.len(),
            pairs_left: run.pairs.len(),
        },
    }
}

/// Reduced Groebner basis of `input`, or `None` when a cap is hit. Returns
/// `Some(vec![1])` for the unit ideal.
pub fn groebner_basis(input: &[Polynomial], limits: &Limits) -> Option<Vec<Polynomial>> {
    let mut run = Run::new(limits);
    match run.execute(input) {
        Ok(CertifyOutcome::Inconsistent(_)) => Some(vec![Polynomial::constant(Rational::one())]),
        Ok(CertifyOutcome::SolutionsMayExist { .. }) => Some(run.reduced_basis()),
        _ => None,
    }
}

/// Remainder of `p` on division by `basis` (any order of divisors).
pub fn normal_form(p: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let monic: Vec<Polynomial> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(Polynomial::monic)
        .collect();
    let mut rem = Vec::new();
    let mut cur = p.clone();
    while let Some((m, c)) = cur.leading().cloned() {
        match monic.iter().find(|g| g.leading_monomial().divides(&m)) {
            Some(g) => {
                let q = g.leading_monomial().quotient_of(&m);
                cur = cur.add_scaled(g, &-c, &q);
            }
            None => {
                rem.push(cur.pop_leading().expect("nonempty"));
            }
        }
    }
    Polynomial::from_sorted_terms(rem)
}

struct Run<'a> {
    limits: &'a Limits,
    start: Instant,
    basis: Vec<Polynomial>,
    sugar: Vec<usize>,
    origin: Vec<Origin>,
    active: Vec<usize>,
    /// (sugar, lcm, i, j) with i < j.
    pairs: BTreeSet<(usize, Monomial, usize, usize)>,
    processed: usize,
    skipped: usize,
}

impl<'a> Run<'a> {
    fn new(limits: &'a Limits) -> Self {
        Run {
            limits,
            start: Instant::now(),
            basis: Vec::new(),
            sugar: Vec::new(),
            origin: Vec::new(),
            active: Vec::new(),
            pairs: BTreeSet::new(),
            processed: 0,
            skipped: 0,
        }
    }

    fn check_time(&self) -> Result<(), String> {
        if self.start.elapsed() > self.limits.time_budget {
            Err(format!(
                "time budget of {:?} exhausted",
                self.limits.time_budget
            ))
        } else {
            Ok(())
        }
    }

    fn execute(&mut self, input: &[Polynomial]) -> Result<CertifyOutcome, String> {
        let mut inputs: Vec<(usize, &Polynomial)> = input
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .collect();
        inputs.sort_by(|a, b| a.1.leading_monomial().cmp(b.1.leading_monomial()));
        for (k, p) in inputs {
            let h = self.reduce(p)?;
            if h.is_zero() {
                continue;
            }
            if h.is_nonzero_constant() {
                return Ok(CertifyOutcome::Inconsistent(
                    self.certificate(Origin::Input(k)),
                ));
            }
            self.insert(h.monic(), p.degree(), Origin::Input(k))?;
        }
        while let Some(key) = self.pairs.iter().next().cloned() {
            self.pairs.remove(&key);
            self.check_time()?;
            let (sugar, lcm, i, j) = key;
            if lcm.degree() > self.limits.max_degree {
                self.skipped += 1;
                continue;
            }
            self.processed += 1;
            let s = self.s_polynomial(i, j, &lcm);
            let h = self.reduce(&s)?;
            if h.is_zero() {
                continue;
            }
            if h.is_nonzero_constant() {
                return Ok(CertifyOutcome::Inconsistent(
                    self.certificate(Origin::SPolynomial(i, j)),
                ));
            }
            self.insert(h.monic(), sugar, Origin::SPolynomial(i, j))?;
        }
        if self.skipped > 0 {
            return Err(format!(
                "{} S-pairs above the degree cap {} were skipped",
                self.skipped, self.limits.max_degree
            ));
        }
        Ok(CertifyOutcome::SolutionsMayExist {
            basis_size: self.active.len(),
        })
    }

    fn s_polynomial(&self, i: usize, j: usize, lcm: &Monomial) -> Polynomial {
        let (f, g) = (&self.basis[i], &self.basis[j]);
        let qf = f.leading_monomial().quotient_of(lcm);
        let qg = g.leading_monomial().quotient_of(lcm);
        f.mul_term(&qf, &Rational::one())
            .add_scaled(g, &-Rational::one(), &qg)
    }

    /// Full reduction by the active basis (all elements monic).
    fn reduce(&self, p: &Polynomial) -> Result<Polynomial, String> {
        let mut rem = Vec::new();
        let mut cur = p.clone();
        let mut steps = 0usize;
        while let Some((m, c)) = cur.leading().cloned() {
            steps += 1;
            if steps % 256 == 0 {
                self.check_time()?;
            }
            let divisor = self
                .active
                .iter()
                .map(|&g| &self.basis[g])
                .find(|g| g.leading_monomial().divides(&m));
            match divisor {
                Some(g) => {
                    let q = g.leading_monomial().quotient_of(&m);
                    cur = cur.add_scaled(g, &-c, &q);
                }
                None => rem.push(cur.pop_leading().expect("nonempty")),
            }
        }
        Ok(Polynomial::from_sorted_terms(rem))
    }

    /// Adds `h` with the Gebauer-Moeller update of pairs and basis.
    fn insert(&mut self, h: Polynomial, sugar: usize, origin: Origin) -> Result<(), String> {
        if self.basis.len() >= self.limits.max_basis_size {
            return Err(format!(
                "basis size cap {} reached",
                self.limits.max_basis_size
            ));
        }
        let hi = self.basis.len();
        let hlm = h.leading_monomial().clone();
        self.basis.push(h);
        self.sugar.push(sugar);
        self.origin.push(origin);

        let cands: Vec<(usize, Monomial)> = self
            .active
            .iter()
            .map(|&g| (g, hlm.lcm(self.basis[g].leading_monomial())))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (idx, (g, l)) in cands.iter().enumerate() {
            let coprime = hlm.coprime(self.basis[*g].leading_monomial());
            let dominated = cands[idx + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }

        let basis = &self.basis;
        self.pairs.retain(|(_, l, a, b)| {
            let drop = hlm.divides(l)
                && &basis[*a].leading_monomial().lcm(&hlm) != l
                && &basis[*b].leading_monomial().lcm(&hlm) != l;
            !drop
        });

        for (g, l) in kept {
            if hlm.coprime(self.basis[g].leading_monomial()) {
                continue;
            }
            let dl = l.degree();
            let s = (self.sugar[g] + dl - self.basis[g].degree()).max(sugar + dl - hlm.degree());
            self.pairs.insert((s, l, g.min(hi), g.max(hi)));
        }

        let basis = &self.basis;
        self.active
            .retain(|&g| !hlm.divides(basis[g].leading_monomial()));
        self.active.push(hi);
        Ok(())
    }

    fn certificate(&self, constant_from: Origin) -> Certificate {
        let mut needed = vec![false; self.basis.len()];
        let mut stack: Vec<usize> = match constant_from {
            Origin::SPolynomial(a, b) => vec![a, b],
            Origin::Input(_) => vec![],
        };
        while let Some(i) = stack.pop() {
            if needed[i] {
                continue;
            }
            needed[i] = true;
            if let Origin::SPolynomial(a, b) = self.origin[i] {
                stack.push(a);
                stack.push(b);
            }
        }
        Certificate {
            steps: (0..self.basis.len())
                .filter(|&i| needed[i])
                .map(|i| (i, self.origin[i]))
                .collect(),
            constant_from,
            pairs_processed: self.processed,
            basis_size: self.basis.len(),
            inputs: Vec::new(),
        }
    }

    /// Minimal reduced basis from the active elements.
    fn reduced_basis(&self) -> Vec<Polynomial> {
        let lead: Vec<Polynomial> = self.active.iter().map(|&g| self.basis[g].clone()).collect();
        let mut out: Vec<Polynomial> = Vec::new();
        for (i, g) in lead.iter().enumerate() {
            let others: Vec<Polynomial> = lead
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, p)| p.clone())
                .collect();
            let lt = Polynomial::from_sorted_terms(vec![g.leading().cloned().expect("nonzero")]);
            let tail = normal_form(&g.sub(&lt), &others);
            out.push(lt.add(&tail));
        }
        out.sort_by(|a, b| b.leading_monomial().cmp(a.leading_monomial()));
        out
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::catalog::BaseAlgebra;
    use crate::constraints::{generate_lr_system, structural_reduce, Var};
    use crate::exactlin::{int, rat};

    fn x(v: Var) -> Polynomial {
        Polynomial::var(v)
    }

    fn c(k: i64) -> Polynomial {
        Polynomial::constant(int(k))
    }

    fn quick() -> Limits {
        Limits {
            max_basis_size: 2000,
            max_degree: 10,
            time_budget: Duration::from_secs(30),
        }
    }

    #[test]
    fn toy_system_is_inconsistent() {
        let sys = [x(0).mul(&x(0)), x(0).sub(&c(1))];
        let out = certify_polynomials(&sys, &quick());
        assert!(out.is_inconsistent(), "{out:?}");
    }

    #[test]
    fn consistent_toys() {
        // x^2 - 1, y - x: two points.
        let sys = [x(0).mul(&x(0)).sub(&c(1)), x(1).sub(&x(0))];
        assert!(matches!(
            certify_polynomials(&sys, &quick()),
            CertifyOutcome::SolutionsMayExist { .. }
        ));
        assert!(matches!(
            certify_polynomials(&[], &quick()),
            CertifyOutcome::SolutionsMayExist { .. }
        ));
    }

    #[test]
    fn cyclic_three_basis_is_known() {
        // x+y+z, xy+yz+zx, xyz-1: its reduced grlex basis has 3 elements with
        // leading monomials x, y^2, z^3.
        let (a, b, d) = (x(0), x(1), x(2));
        let sys = [
            a.add(&b).add(&d),
            a.mul(&b).add(&b.mul(&d)).add(&d.mul(&a)),
            a.mul(&b).mul(&d).sub(&c(1)),
        ];
        let gb = groebner_basis(&sys, &quick()).unwrap();
        let leads: Vec<Monomial> = gb.iter().map(|p| p.leading_monomial().clone()).collect();
        assert_eq!(
            leads,
            vec![
                Monomial::from_vars([2, 2, 2]),
                Monomial::from_vars([1, 1]),
                Monomial::from_vars([0])
            ]
        );
        for p in &sys {
            assert!(normal_form(p, &gb).is_zero());
        }
    }

    #[test]
    fn degree_cap_is_reported() {
        let sys = [x(0).mul(&x(1)).sub(&c(1)), x(1).mul(&x(2)).sub(&x(0))];
        let lim = Limits {
            max_degree: 1,
            ..quick()
        };
        assert!(matches!(
            certify_polynomials(&sys, &lim),
            CertifyOutcome::BudgetExhausted { .. }
        ));
    }

    #[test]
    fn basis_cap_is_reported() {
        let sys = [
            x(0).mul(&x(0)).sub(&x(1)),
            x(1).mul(&x(1)).sub(&x(2)),
            x(0).mul(&x(2)).sub(&c(2)),
        ];
        let lim = Limits {
            max_basis_size: 2,
            ..quick()
        };
        assert!(matches!(
            certify_polynomials(&sys, &lim),
            CertifyOutcome::BudgetExhausted { .. }
        ));
    }

    /// An infeasible quadratic system built around a point `p`: the linear
    /// equations `x_i - p_i` pin `p`, a quadratic `q(x) - q(p) - 1` excludes
    /// it, and a unimodular polynomial change of generators hides both.
    pub(crate) fn random_infeasible(rng: &mut ChaCha8Rng, nvars: u32) -> Vec<Polynomial> {
        let small = |rng: &mut ChaCha8Rng| {
            Rational::new(rng.gen_range(-3..=3).into(), rng.gen_range(1..=2).into())
        };
        let point: Vec<Rational> = (0..nvars).map(|_| small(rng)).collect();
        let mut q = Polynomial::zero();
        for a in 0..nvars {
            for b in a..nvars {
                q = q.add(&x(a).mul(&x(b)).scale(&small(rng)));
            }
            q = q.add(&x(a).scale(&small(rng)));
        }
        let qp = q.eval(|v| point[v as usize].clone());
        let mut gens: Vec<Polynomial> = (0..nvars)
            .map(|i| x(i).sub(&Polynomial::constant(point[i as usize].clone())))
            .collect();
        gens.push(q.sub(&Polynomial::constant(qp + int(1))));
        // Row operations: add linear multiples of linear generators, constant
        // multiples of the quadratic one, then shuffle.
        let mut mixed = gens.clone();
        for (i, row) in mixed.iter_mut().enumerate() {
            for (j, g) in gens.iter().enumerate() {
                if j >= i || rng.gen_bool(0.3) {
                    continue;
                }
                let mult = if j < nvars as usize {
                    x(rng.gen_range(0..nvars))
                        .scale(&small(rng))
                        .add(&Polynomial::constant(small(rng)))
                } else {
                    Polynomial::constant(small(rng))
                };
                *row = row.add(&mult.mul(g));
            }
        }
        for i in (1..mixed.len()).rev() {
            let j = rng.gen_range(0..=i);
            mixed.swap(i, j);
        }
        mixed
    }

    #[test]
    fn random_infeasible_systems_are_certified() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for round in 0..8 {
            let sys = random_infeasible(&mut rng, 3 + round % 3);
            assert!(sys.iter().all(|p| p.degree() <= 2));
            let out = certify_polynomials(&sys, &quick());
            assert!(out.is_inconsistent(), "round {round}: {out:?}");
        }
    }

    #[test]
    fn lr_systems_with_solutions_are_not_certified() {
        for base in [BaseAlgebra::R2, BaseAlgebra::N3] {
            let g = base.lie();
            let s = generate_lr_system(&g);
            let out = buchberger_certify(&s, &quick());
            assert!(
                matches!(out, CertifyOutcome::SolutionsMayExist { .. }),
                "{}: {out:?}",
                base.label()
            );
            let r = structural_reduce(&s, &g);
            let out = buchberger_certify(&r, &quick());
            assert!(
                matches!(out, CertifyOutcome::SolutionsMayExist { .. }),
                "{}: {out:?}",
                base.label()
            );
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        /// Systems with a rational common zero are never certified.
        #[test]
        fn systems_with_a_zero_are_never_inconsistent(
            coeffs in proptest::collection::vec(-2i64..=2, 12),
            point in proptest::collection::vec(-2i64..=2, 3),
        ) {
            let mons = [
                Monomial::from_vars([0, 1]),
                Monomial::from_vars([1, 2]),
                Monomial::from_vars([0]),
                Monomial::from_vars([2, 2]),
            ];
            let mut sys = Vec::new();
            for chunk in coeffs.chunks(4) {
                let p = Polynomial::from_terms(mons.iter().cloned().zip(chunk.iter().map(|&k| int(k))));
                let shift = p.eval(|v| int(point[v as usize]));
                sys.push(p.sub(&Polynomial::constant(shift)));
            }
            let out = certify_polynomials(&sys, &quick());
            prop_assert!(!out.is_inconsistent());
            if let Some(gb) = groebner_basis(&sys, &quick()) {
                for p in &sys {
                    prop_assert!(normal_form(p, &gb).is_zero());
                }
                for g in &gb {
                    prop_assert_eq!(g.eval(|v| int(point[v as usize])), rat(0, 1));
                }
            }
        }
    }
}
