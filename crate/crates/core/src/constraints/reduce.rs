use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};

use super::{variable, ConstraintSystem, Equation, Polynomial, Var};
use crate::exactlin::{Matrix, Rational, Subspace};
use crate::lie::LieAlgebra;
use crate::tensor::to_sparse;

/// At most this many ideals are generated by closing the central series
/// under brackets, sums and intersections.
const MAX_IDEALS: usize = 64;

/// Linear form in the unknowns plus a constant.
#[derive(Clone, Default)]
struct Lin {
    terms: BTreeMap<Var, Rational>,
    constant: Rational,
}

impl Lin {
    fn add_var(&mut self, v: Var, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(v).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&v);
        }
    }

    fn add_scaled(&mut self, other: &Lin, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (v, x) in &other.terms {
            self.add_var(*v, &(x * c));
        }
        self.constant += &other.constant * c;
    }

    fn to_poly(&self) -> Polynomial {
        use super::Monomial;
        Polynomial::from_terms(
            self.terms
                .iter()
                .map(|(v, c)| (Monomial::var(*v), c.clone()))
                .chain(std::iter::once((Monomial::one(), self.constant.clone()))),
        )
    }
}

fn unit(i: usize) -> Vec<(usize, Rational)> {
    vec![(i, Rational::one())]
}

/// Symbolic linear algebra over the unknowns of an `n`-dimensional system.
struct Forms {
    n: usize,
}

impl Forms {
    /// Coordinates of `u . v`.
    fn product(&self, u: &[(usize, Rational)], v: &[(usize, Rational)]) -> Vec<Lin> {
        let n = self.n;
        let mut out = vec![Lin::default(); n];
        for (a, ua) in u {
            for (k, vk) in v {
                let c = ua * vk;
                for (j, form) in out.iter_mut().enumerate() {
                    form.add_var(variable(n, *a, j, *k), &c);
                }
            }
        }
        out
    }

    /// `w . (u . v)` for a row vector `w`.
    fn paired_product(
        &self,
        w: &[(usize, Rational)],
        u: &[(usize, Rational)],
        v: &[(usize, Rational)],
    ) -> Lin {
        let mut out = Lin::default();
        for (a, ua) in u {
            for (k, vk) in v {
                let c = ua * vk;
                for (j, wj) in w {
                    out.add_var(variable(self.n, *a, *j, *k), &(&c * wj));
                }
            }
        }
        out
    }

    /// `[f, e_c]` (or `[e_c, f]` when `flip`) for a symbolic vector `f`.
    fn bracket_with(&self, g: &LieAlgebra, f: &[Lin], c: usize, flip: bool) -> Vec<Lin> {
        let mut out = vec![Lin::default(); self.n];
        for (p, fp) in f.iter().enumerate() {
            let br = if flip {
                g.bracket_basis(c, p)
            } else {
                g.bracket_basis(p, c)
            };
            for (q, coef) in br.iter().enumerate() {
                out[q].add_scaled(fp, coef);
            }
        }
        out
    }

    /// Entries of `L(e_b)`, row-major.
    fn left(&self, b: usize) -> Vec<Lin> {
        let n = self.n;
        let mut out = vec![Lin::default(); n * n];
        for j in 0..n {
            for k in 0..n {
                out[j * n + k].add_var(variable(n, b, j, k), &Rational::one());
            }
        }
        out
    }

    /// Entries of `R(e_b)`: `R(e_b)_{j,k} = (e_k . e_b)_j`.
    fn right(&self, b: usize) -> Vec<Lin> {
        let n = self.n;
        let mut out = vec![Lin::default(); n * n];
        for j in 0..n {
            for k in 0..n {
                out[j * n + k].add_var(variable(n, k, j, b), &Rational::one());
            }
        }
        out
    }

    /// `[C, F]` for a constant matrix `C` and symbolic matrix `F`.
    fn commutator(&self, c: &Matrix, f: &[Lin]) -> Vec<Lin> {
        let n = self.n;
        let mut out = vec![Lin::default(); n * n];
        for j in 0..n {
            for k in 0..n {
                let e = &mut out[j * n + k];
                for m in 0..n {
                    e.add_scaled(&f[m * n + k], c.get(j, m));
                    e.add_scaled(&f[j * n + m], &-c.get(m, k));
                }
            }
        }
        out
    }
}

/// Ideals of `g` that are two-sided ideals of every LR-structure on `g`:
/// the lower and upper central series and the derived series, closed under
/// brackets, sums and intersections. Proper nonzero ones only.
fn ideal_family(g: &LieAlgebra) -> Vec<(String, Subspace)> {
    let n = g.dim();
    let mut out: Vec<(String, Subspace)> = Vec::new();
    let push = |out: &mut Vec<(String, Subspace)>, name: String, s: Subspace| {
        if s.dim() > 0 && s.dim() < n && !out.iter().any(|(_, t)| *t == s) && out.len() < MAX_IDEALS
        {
            out.push((name, s));
            true
        } else {
            false
        }
    };
    for (i, t) in g.lower_central_series().terms.into_iter().enumerate() {
        push(&mut out, format!("gamma_{}", i + 1), t);
    }
    for (i, t) in g.upper_central_series().terms.into_iter().enumerate() {
        push(&mut out, format!("Z_{i}"), t);
    }
    for (i, t) in g.derived_series().terms.into_iter().enumerate() {
        push(&mut out, format!("D^{i}"), t);
    }
    let mut changed = true;
    while changed && out.len() < MAX_IDEALS {
        changed = false;
        let snapshot = out.clone();
        for (a, (na, sa)) in snapshot.iter().enumerate() {
            for (nb, sb) in &snapshot[a..] {
                let candidates = [
                    (
                        format!("[{na},{nb}]"),
                        g.bracket_span(sa, sb).expect("same ambient"),
                    ),
                    (format!("{na}+{nb}"), sa.sum(sb).expect("same ambient")),
                    (
                        format!("{na}&{nb}"),
                        sa.intersection(sb).expect("same ambient"),
                    ),
                ];
                for (name, s) in candidates {
                    changed |= push(&mut out, name, s);
                }
            }
        }
    }
    out
}

/// Linear identities that hold in every LR-algebra with Lie algebra `g`.
fn structural_constraints(g: &LieAlgebra) -> Vec<Equation> {
    let n = g.dim();
    let f = Forms { n };
    let mut out = Vec::new();
    let mut emit = |lin: &Lin, origin: &str, indices: Vec<usize>| {
        let p = lin.to_poly();
        if !p.is_zero() {
            out.push(Equation::new(p, origin, indices));
        }
    };

    for (name, ideal) in ideal_family(g) {
        let vs: Vec<_> = ideal.basis_vectors().map(to_sparse).collect();
        let ws: Vec<_> = ideal.annihilator().basis_vectors().map(to_sparse).collect();
        let tag_l = format!("L(x) preserves the two-sided ideal {name}");
        let tag_r = format!("R(x) preserves the two-sided ideal {name}");
        for (vi, v) in vs.iter().enumerate() {
            for (wi, w) in ws.iter().enumerate() {
                for a in 0..n {
                    emit(
                        &f.paired_product(w, &unit(a), v),
                        &tag_l,
                        vec![a + 1, vi + 1, wi + 1],
                    );
                    emit(
                        &f.paired_product(w, v, &unit(a)),
                        &tag_r,
                        vec![a + 1, vi + 1, wi + 1],
                    );
                }
            }
        }
    }

    let center: Vec<_> = g.center().basis_vectors().map(to_sparse).collect();
    let derived: Vec<_> = g.derived_algebra().basis_vectors().map(to_sparse).collect();
    for (zi, z) in center.iter().enumerate() {
        for (di, d) in derived.iter().enumerate() {
            for (j, lin) in f.product(z, d).iter().enumerate() {
                emit(lin, "Z(A) . [A,A] = 0", vec![zi + 1, di + 1, j + 1]);
            }
            for (j, lin) in f.product(d, z).iter().enumerate() {
                emit(lin, "[A,A] . Z(A) = 0", vec![zi + 1, di + 1, j + 1]);
            }
        }
    }

    let gamma = g.lower_central_series();
    for i in 1..=n {
        for j in i..=n {
            let (gi, gj, target) = (gamma.term(i + 1), gamma.term(j + 1), gamma.term(i + j + 1));
            if gi.is_zero() || gj.is_zero() || target.dim() == n {
                continue;
            }
            let ws: Vec<_> = target
                .annihilator()
                .basis_vectors()
                .map(to_sparse)
                .collect();
            let tag = format!(
                "gamma_{} . gamma_{} lies in gamma_{}",
                i + 1,
                j + 1,
                i + j + 1
            );
            let tag_rev = format!(
                "gamma_{} . gamma_{} lies in gamma_{}",
                j + 1,
                i + 1,
                i + j + 1
            );
            for (ui, u) in gi.basis_vectors().map(to_sparse).enumerate() {
                for (vi, v) in gj.basis_vectors().map(to_sparse).enumerate() {
                    for (wi, w) in ws.iter().enumerate() {
                        emit(
                            &f.paired_product(w, &u, &v),
                            &tag,
                            vec![ui + 1, vi + 1, wi + 1],
                        );
                        if i != j {
                            emit(
                                &f.paired_product(w, &v, &u),
                                &tag_rev,
                                vec![vi + 1, ui + 1, wi + 1],
                            );
                        }
                    }
                }
            }
        }
    }

    let br = |a: usize, b: usize| to_sparse(g.bracket_basis(a, b));
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                let idx = vec![a + 1, b + 1, c + 1];
                let mut left = vec![Lin::default(); n];
                let mut right = vec![Lin::default(); n];
                for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                    for (q, lin) in f.product(&br(x, y), &unit(z)).iter().enumerate() {
                        left[q].add_scaled(lin, &Rational::one());
                    }
                    for (q, lin) in f.product(&unit(x), &br(y, z)).iter().enumerate() {
                        right[q].add_scaled(lin, &Rational::one());
                    }
                }
                for q in 0..n {
                    let mut i = idx.clone();
                    i.push(q + 1);
                    emit(&left[q], "[x,y].z + [y,z].x + [z,x].y = 0", i.clone());
                    emit(&right[q], "x.[y,z] + y.[z,x] + z.[x,y] = 0", i);
                }
            }
        }
    }

    for a in 0..n {
        for b in (a + 1)..n {
            let ad_ab = g
                .ad(g.bracket_basis(a, b))
                .expect("basis bracket has length n");
            let (ad_a, ad_b) = (g.ad_basis(a), g.ad_basis(b));
            let mut via_l = f.commutator(&ad_a, &f.left(b));
            for (e, x) in via_l.iter_mut().zip(f.commutator(&ad_b, &f.left(a))) {
                // [L(e_a), ad e_b] = -[ad e_b, L(e_a)]
                e.add_scaled(&x, &-Rational::one());
            }
            let mut via_r = f.commutator(&ad_a, &f.right(b));
            for (e, x) in via_r.iter_mut().zip(f.commutator(&ad_b, &f.right(a))) {
                e.add_scaled(&x, &-Rational::one());
            }
            for j in 0..n {
                for k in 0..n {
                    let c = ad_ab.get(j, k);
                    let mut l = Lin::default();
                    l.constant = c.clone();
                    l.add_scaled(&via_l[j * n + k], &-Rational::one());
                    emit(
                        &l,
                        "ad[x,y] = [ad x, L(y)] + [L(x), ad y]",
                        vec![a + 1, b + 1, j + 1, k + 1],
                    );
                    let mut r = Lin::default();
                    r.constant = c.clone();
                    r.add_scaled(&via_r[j * n + k], &Rational::one());
                    emit(
                        &r,
                        "ad[x,y] = -[ad x, R(y)] - [R(x), ad y]",
                        vec![a + 1, b + 1, j + 1, k + 1],
                    );
                }
            }
        }
    }

    let neg = -Rational::one();
    for a in 0..n {
        for b in 0..n {
            for c in (b + 1)..n {
                // a.[b,c] - [a.b, c] - [b, a.c]
                let mut l = f.product(&unit(a), &br(b, c));
                let ab = f.product(&unit(a), &unit(b));
                let ac = f.product(&unit(a), &unit(c));
                // [b,c].a - [b.a, c] - [b, c.a]
                let mut r = f.product(&br(b, c), &unit(a));
                let ba = f.product(&unit(b), &unit(a));
                let ca = f.product(&unit(c), &unit(a));
                for (q, x) in f.bracket_with(g, &ab, c, false).iter().enumerate() {
                    l[q].add_scaled(x, &neg);
                }
                for (q, x) in f.bracket_with(g, &ac, b, true).iter().enumerate() {
                    l[q].add_scaled(x, &neg);
                }
                for (q, x) in f.bracket_with(g, &ba, c, false).iter().enumerate() {
                    r[q].add_scaled(x, &neg);
                }
                for (q, x) in f.bracket_with(g, &ca, b, true).iter().enumerate() {
                    r[q].add_scaled(x, &neg);
                }
                for q in 0..n {
                    let idx = vec![a + 1, b + 1, c + 1, q + 1];
                    emit(&l[q], "L(x) is a derivation of the bracket", idx.clone());
                    emit(&r[q], "R(x) is a derivation of the bracket", idx);
                }
            }
        }
    }
    out
}

/// Incremental Gauss-Jordan elimination: every pivot unknown maps to an
/// affine polynomial in non-pivot unknowns.
#[derive(Default)]
struct Eliminator {
    subst: HashMap<Var, Polynomial>,
    tags: HashMap<Var, String>,
    /// Non-pivot unknown -> pivots whose expression may mention it.
    occurs: HashMap<Var, HashSet<Var>>,
}

enum Outcome {
    Redundant,
    Pivot,
    Contradiction(Polynomial),
}

impl Eliminator {
    fn reduce(&self, p: &Polynomial) -> Polynomial {
        if self.subst.is_empty() {
            return p.clone();
        }
        p.substitute(|v| self.subst.get(&v).cloned())
    }

    fn add_linear(&mut self, p: &Polynomial, tag: &str) -> Outcome {
        let r = self.reduce(p);
        if r.is_zero() {
            return Outcome::Redundant;
        }
        if r.is_nonzero_constant() {
            return Outcome::Contradiction(r);
        }
        debug_assert!(r.is_linear());
        let (lm, lc) = r.leading().expect("nonzero");
        let pivot = lm.vars()[0];
        let expr = Polynomial::var(pivot).add(&r.scale(&-lc.recip()));
        if let Some(users) = self.occurs.remove(&pivot) {
            for u in users {
                let old = &self.subst[&u];
                if old.coefficient(&super::Monomial::var(pivot)).is_zero() {
                    continue;
                }
                let new = old.substitute(|v| (v == pivot).then(|| expr.clone()));
                for v in new.variables() {
                    self.occurs.entry(v).or_default().insert(u);
                }
                self.subst.insert(u, new);
            }
        }
        for v in expr.variables() {
            self.occurs.entry(v).or_default().insert(pivot);
        }
        self.subst.insert(pivot, expr);
        self.tags.insert(pivot, tag.to_string());
        Outcome::Pivot
    }
}

/// Adds the linear identities valid in every LR-algebra over `g` (ideal
/// preservation by `L` and `R`, center annihilation, grading of the lower
/// central series, the cyclic and operator identities, derivation
/// properties), then eliminates unknowns by linear substitution until the
/// remaining equations yield no further linear or monomial constraints.
///
/// A monomial equation `c * x^e = 0` forces `x = 0`; this keeps the solution
/// set and makes the forced zeros explicit.
pub fn structural_reduce(s: &ConstraintSystem, g: &LieAlgebra) -> ConstraintSystem {
    assert_eq!(s.n(), g.dim(), "system and Lie algebra differ in dimension");
    let n = s.n();
    let mut elim = Eliminator::default();
    let mut contradictions: Vec<Equation> = Vec::new();
    let mut feed = |elim: &mut Eliminator, p: &Polynomial, eq: &Equation| {
        if let Outcome::Contradiction(c) = elim.add_linear(p, &eq.origin) {
            contradictions.push(Equation::new(c, eq.origin.clone(), eq.indices.clone()));
            false
        } else {
            true
        }
    };

    for (v, tag) in s.forced_zero() {
        feed(
            &mut elim,
            &Polynomial::var(*v),
            &Equation::new(Polynomial::zero(), tag.clone(), vec![]),
        );
    }
    for (v, (p, tag)) in s.substitutions() {
        feed(
            &mut elim,
            &Polynomial::var(*v).sub(p),
            &Equation::new(Polynomial::zero(), tag.clone(), vec![]),
        );
    }

    let added = structural_constraints(g);
    for eq in &added {
        feed(&mut elim, &eq.poly, eq);
    }
    let mut pending: Vec<Equation> = Vec::new();
    for eq in s.equations() {
        if eq.poly.is_linear() {
            feed(&mut elim, &eq.poly, eq);
        } else {
            pending.push(eq.clone());
        }
    }

    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(pending.len());
        for eq in pending {
            let r = elim.reduce(&eq.poly);
            if r.is_zero() {
                continue;
            }
            if r.is_linear() {
                let tagged = Equation::new(
                    r.clone(),
                    format!("{} (linear after substitution)", eq.origin),
                    eq.indices,
                );
                changed |= matches!(elim.add_linear(&r, &tagged.origin), Outcome::Pivot);
                if r.is_nonzero_constant() {
                    contradictions.push(tagged);
                }
                continue;
            }
            let vars = r.variables();
            if r.len() == 1 && vars.len() == 1 {
                let tag = format!("{} (monomial equation)", eq.origin);
                changed |= matches!(
                    elim.add_linear(&Polynomial::var(vars[0]), &tag),
                    Outcome::Pivot
                );
                continue;
            }
            next.push(Equation::new(r, eq.origin, eq.indices));
        }
        pending = next;
        if !changed {
            break;
        }
    }

    let mut seen: HashSet<Polynomial> = HashSet::new();
    let mut equations: Vec<Equation> = Vec::new();
    for eq in contradictions.into_iter().chain(pending) {
        let m = eq.poly.monic();
        if seen.insert(m.clone()) {
            equations.push(Equation::new(m, eq.origin, eq.indices));
        }
    }

    let mut forced_zero = BTreeMap::new();
    let mut substitutions = BTreeMap::new();
    for (v, p) in elim.subst {
        let tag = elim.tags.remove(&v).unwrap_or_default();
        if p.is_zero() {
            forced_zero.insert(v, tag);
        } else {
            substitutions.insert(v, (p, tag));
        }
    }
    let mut all_added = s.added_constraints().to_vec();
    all_added.extend(added);
    let _ = n;
    ConstraintSystem::from_parts(n, equations, forced_zero, substitutions, all_added)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{catalog, counterexample_g13, BaseAlgebra};
    use crate::constraints::{assignment_from_tensor, evaluate_candidate, generate_lr_system};
    use crate::exactlin::{int, rat};

    fn catalog_assignments(base: BaseAlgebra) -> Vec<(String, Vec<Rational>)> {
        let mut out = Vec::new();
        for entry in catalog().iter().filter(|e| e.base == base) {
            for params in entry.parameter_sample() {
                let a = entry.instantiate(&params).unwrap();
                out.push((
                    format!("{} {:?}", entry.name, params),
                    assignment_from_tensor(a.product_tensor()),
                ));
            }
        }
        out
    }

    #[test]
    fn reduction_keeps_catalog_solutions() {
        for base in [
            BaseAlgebra::R2,
            BaseAlgebra::N3,
            BaseAlgebra::N4,
            BaseAlgebra::N3PlusQ,
        ] {
            let g = base.lie();
            let s = structural_reduce(&generate_lr_system(&g), &g);
            assert!(!s.added_constraints().is_empty());
            for (name, x) in catalog_assignments(base) {
                let rep = evaluate_candidate(&s, &x).unwrap();
                assert!(rep.ok(), "{name}: {:?}", rep.violations.first());
            }
        }
    }

    /// Larger algebras with known LR-structures: the reduction must keep
    /// them and must not produce a constant equation.
    #[test]
    fn reduction_keeps_constructed_structures() {
        use crate::constructions::*;
        let mut known = vec![free3_lr(3).unwrap(), free4_two_gen_lr().unwrap()];
        let top = [int(1), int(-2), int(3), rat(1, 2), int(-1)];
        for n in [7, 9] {
            known
                .push(filiform_lr(&FiliformSpec::from_top_row(n, &top[..n - 4]).unwrap()).unwrap());
        }
        known.push(halved_adjoint_lr(&free2_lie(4).unwrap()).unwrap());
        for a in known {
            let g = a.lie().clone();
            let s = structural_reduce(&generate_lr_system(&g), &g);
            let rep = evaluate_candidate(&s, &assignment_from_tensor(a.product_tensor())).unwrap();
            assert!(rep.ok(), "dim {}: {:?}", g.dim(), rep.violations.first());
            assert!(!s.equations().iter().any(|e| e.poly.is_nonzero_constant()));
        }
    }

    #[test]
    fn abelian_reduction_is_only_symmetry() {
        for n in 1..=4 {
            let g = LieAlgebra::abelian(n);
            let s = structural_reduce(&generate_lr_system(&g), &g);
            assert!(s.added_constraints().is_empty());
            assert!(s.forced_zero().is_empty());
            assert_eq!(s.substitutions().len(), n * n * (n - 1) / 2);
            for (v, (p, _)) in s.substitutions() {
                let (i, j, k) = super::super::variable_indices(n, *v);
                assert!(i < k);
                assert_eq!(*p, Polynomial::var(variable(n, k, j, i)));
            }
        }
    }

    #[test]
    fn reduction_is_idempotent_on_n3() {
        let g = BaseAlgebra::N3.lie();
        let once = structural_reduce(&generate_lr_system(&g), &g);
        let twice = structural_reduce(&once, &g);
        assert_eq!(once.eliminated_count(), twice.eliminated_count());
        assert_eq!(once.equations().len(), twice.equations().len());
    }

    #[test]
    fn g13_reduction_count() {
        let g = counterexample_g13();
        let s = structural_reduce(&generate_lr_system(&g), &g);
        eprintln!(
            "g13: forced zero {}, substituted {}, equations {}, remaining vars {}",
            s.forced_zero().len(),
            s.substitutions().len(),
            s.equations().len(),
            s.remaining_variables().len()
        );
        assert_eq!(s.forced_zero().len(), 2036);
        assert_eq!(s.substitutions().len(), 103);
        assert_eq!(s.eliminated_count(), 2139);
        assert!(s.equations().iter().any(|e| e.poly.is_nonzero_constant()));
    }
}
