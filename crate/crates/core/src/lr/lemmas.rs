use num_traits::One;

use crate::exactlin::{vector, Matrix, Rational, Subspace};
use crate::report::VerificationReport;
use crate::tensor::{apply_bilinear_sparse_into, SparseVec};

use super::LrAlgebra;

pub const CHECK_BRACKET_TIMES: &str = "[x,y].z + [y,z].x + [z,x].y = 0";
pub const CHECK_TIMES_BRACKET: &str = "x.[y,z] + y.[z,x] + z.[x,y] = 0";
pub const CHECK_AD_LEFT: &str = "ad[x,y] = [ad x, L y] + [L x, ad y]";
pub const CHECK_AD_RIGHT: &str = "ad[x,y] = -[ad x, R y] - [R x, ad y]";
pub const CHECK_SQUARE_COMMUTES: &str = "(x.y).(u.v) = (u.v).(x.y)";
pub const CHECK_METABELIAN: &str = "[[x,y],[u,v]] = 0";
pub const CHECK_LOWER_IDEALS: &str = "gamma_i two-sided ideals";
pub const CHECK_UPPER_IDEALS: &str = "Z_i two-sided ideals";
pub const CHECK_IDEAL_PRODUCTS: &str = "I.J and [I,J] two-sided ideals";
pub const CHECK_CENTER_ANNIHILATES: &str = "Z.[A,A] = [A,A].Z = 0";
pub const CHECK_GRADING: &str = "gamma_{i+1}.gamma_{j+1} in gamma_{i+j+1}";
pub const CHECK_LEFT_DERIVATION: &str = "L(a) derivation of the bracket";
pub const CHECK_RIGHT_DERIVATION: &str = "R(a) derivation of the bracket";

fn unit_sparse(i: usize) -> SparseVec {
    vec![(i, Rational::one())]
}

fn flatten(m: &Matrix) -> Vec<Rational> {
    m.entries().to_vec()
}

impl LrAlgebra {
    /// Identities that hold in every LR-algebra, checked exhaustively on basis
    /// tuples. Series terms are examined up to index `depth`.
    pub fn lemma_suite(&self, depth: usize) -> VerificationReport {
        let mut rep = VerificationReport::new();
        self.check_cyclic_identities(&mut rep);
        self.check_operator_identities(&mut rep);
        self.check_square_identities(&mut rep);
        self.check_derivations(&mut rep);
        self.check_series_ideals(&mut rep, depth);
        rep
    }

    /// [`LrAlgebra::lemma_suite`] with depth equal to the dimension, by which
    /// point every series has stabilized.
    pub fn lemma_suite_full(&self) -> VerificationReport {
        self.lemma_suite(self.dim())
    }

    fn check_cyclic_identities(&self, rep: &mut VerificationReport) {
        let n = self.dim();
        let (p, b) = (self.table(), self.lie().table());
        let one = Rational::one();
        rep.begin(CHECK_BRACKET_TIMES);
        rep.begin(CHECK_TIMES_BRACKET);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let cyc = [(i, j, k), (j, k, i), (k, i, j)];
                    let mut left = vector::zero(n);
                    let mut right = vector::zero(n);
                    for &(x, y, z) in &cyc {
                        apply_bilinear_sparse_into(
                            n,
                            p,
                            &one,
                            &b[x * n + y],
                            &unit_sparse(z),
                            &mut left,
                        );
                        apply_bilinear_sparse_into(
                            n,
                            p,
                            &one,
                            &unit_sparse(x),
                            &b[y * n + z],
                            &mut right,
                        );
                    }
                    rep.expect_zero(CHECK_BRACKET_TIMES, &[i + 1, j + 1, k + 1], &left);
                    rep.expect_zero(CHECK_TIMES_BRACKET, &[i + 1, j + 1, k + 1], &right);
                }
            }
        }
    }

    fn check_operator_identities(&self, rep: &mut VerificationReport) {
        let n = self.dim();
        let ad: Vec<Matrix> = (0..n).map(|i| self.lie().ad_basis(i)).collect();
        let l: Vec<Matrix> = (0..n).map(|i| self.left_mult_basis(i)).collect();
        let r: Vec<Matrix> = (0..n).map(|i| self.right_mult_basis(i)).collect();
        rep.begin(CHECK_AD_LEFT);
        rep.begin(CHECK_AD_RIGHT);
        for i in 0..n {
            for j in (i + 1)..n {
                let mut ad_br = Matrix::zeros(n, n);
                for (m, c) in self.lie().sparse_bracket(i, j) {
                    ad_br = &ad_br + &ad[m.to_owned()].scale(c);
                }
                let left = &(&ad_br - &ad[i].commutator(&l[j])) - &l[i].commutator(&ad[j]);
                let right = &(&ad_br + &ad[i].commutator(&r[j])) + &r[i].commutator(&ad[j]);
                rep.expect_zero(CHECK_AD_LEFT, &[i + 1, j + 1], &flatten(&left));
                rep.expect_zero(CHECK_AD_RIGHT, &[i + 1, j + 1], &flatten(&right));
            }
        }
    }

    fn check_square_identities(&self, rep: &mut VerificationReport) {
        let n = self.dim();
        let (p, b) = (self.table(), self.lie().table());
        let one = Rational::one();
        let neg = -Rational::one();
        rep.begin(CHECK_SQUARE_COMMUTES);
        for ij in 0..n * n {
            if p[ij].is_empty() {
                continue;
            }
            for kl in (ij + 1)..n * n {
                if p[kl].is_empty() {
                    continue;
                }
                let mut res = vector::zero(n);
                apply_bilinear_sparse_into(n, p, &one, &p[ij], &p[kl], &mut res);
                apply_bilinear_sparse_into(n, p, &neg, &p[kl], &p[ij], &mut res);
                rep.expect_zero(
                    CHECK_SQUARE_COMMUTES,
                    &[ij / n + 1, ij % n + 1, kl / n + 1, kl % n + 1],
                    &res,
                );
            }
        }
        rep.begin(CHECK_METABELIAN);
        for ij in 0..n * n {
            if ij / n >= ij % n || b[ij].is_empty() {
                continue;
            }
            for kl in (ij + 1)..n * n {
                if kl / n >= kl % n || b[kl].is_empty() {
                    continue;
                }
                let mut res = vector::zero(n);
                apply_bilinear_sparse_into(n, b, &one, &b[ij], &b[kl], &mut res);
                rep.expect_zero(
                    CHECK_METABELIAN,
                    &[ij / n + 1, ij % n + 1, kl / n + 1, kl % n + 1],
                    &res,
                );
            }
        }
    }

    fn check_derivations(&self, rep: &mut VerificationReport) {
        let n = self.dim();
        let (p, b) = (self.table(), self.lie().table());
        let one = Rational::one();
        let neg = -Rational::one();
        rep.begin(CHECK_LEFT_DERIVATION);
        rep.begin(CHECK_RIGHT_DERIVATION);
        for a in 0..n {
            let ea = unit_sparse(a);
            for i in 0..n {
                let ei = unit_sparse(i);
                for j in (i + 1)..n {
                    let ej = unit_sparse(j);
                    // a.[ei,ej] - [a.ei, ej] - [ei, a.ej]
                    let mut left = vector::zero(n);
                    apply_bilinear_sparse_into(n, p, &one, &ea, &b[i * n + j], &mut left);
                    apply_bilinear_sparse_into(n, b, &neg, &p[a * n + i], &ej, &mut left);
                    apply_bilinear_sparse_into(n, b, &neg, &ei, &p[a * n + j], &mut left);
                    rep.expect_zero(CHECK_LEFT_DERIVATION, &[a + 1, i + 1, j + 1], &left);
                    // [ei,ej].a - [ei.a, ej] - [ei, ej.a]
                    let mut right = vector::zero(n);
                    apply_bilinear_sparse_into(n, p, &one, &b[i * n + j], &ea, &mut right);
                    apply_bilinear_sparse_into(n, b, &neg, &p[i * n + a], &ej, &mut right);
                    apply_bilinear_sparse_into(n, b, &neg, &ei, &p[j * n + a], &mut right);
                    rep.expect_zero(CHECK_RIGHT_DERIVATION, &[a + 1, i + 1, j + 1], &right);
                }
            }
        }
    }

    fn check_ideal(
        &self,
        rep: &mut VerificationReport,
        check: &str,
        label: usize,
        space: &Subspace,
    ) {
        if let Some((a, r, w)) = self.ideal_witness(space).expect("same ambient") {
            rep.fail(check, &[label, a + 1, r + 1], w);
        }
    }

    fn check_series_ideals(&self, rep: &mut VerificationReport, depth: usize) {
        let n = self.dim();
        let lower = self.lie().lower_central_series();
        let upper = self.lie().upper_central_series();
        rep.begin(CHECK_LOWER_IDEALS);
        rep.begin(CHECK_UPPER_IDEALS);
        for i in 1..=depth.max(1) {
            self.check_ideal(rep, CHECK_LOWER_IDEALS, i, lower.term(i));
            self.check_ideal(rep, CHECK_UPPER_IDEALS, i, upper.term(i));
        }

        rep.begin(CHECK_IDEAL_PRODUCTS);
        let full = Subspace::full(n);
        let mut ideals: Vec<&Subspace> = Vec::new();
        for s in lower.terms.iter().chain(upper.terms.iter()) {
            if !ideals.contains(&s) {
                ideals.push(s);
            }
        }
        for (x, i_space) in ideals.iter().enumerate() {
            for (y, j_space) in ideals.iter().enumerate() {
                let prod = self.ideal_product(i_space, j_space).expect("same ambient");
                self.check_ideal(
                    rep,
                    CHECK_IDEAL_PRODUCTS,
                    2 * (x * ideals.len() + y) + 1,
                    &prod,
                );
                let br = self.bracket_span(i_space, j_space).expect("same ambient");
                self.check_ideal(
                    rep,
                    CHECK_IDEAL_PRODUCTS,
                    2 * (x * ideals.len() + y) + 2,
                    &br,
                );
            }
        }

        rep.begin(CHECK_CENTER_ANNIHILATES);
        let center = self.center();
        let derived = self.bracket_span(&full, &full).expect("same ambient");
        for (side, (u, v)) in [(&center, &derived), (&derived, &center)]
            .into_iter()
            .enumerate()
        {
            let prod = self.ideal_product(u, v).expect("same ambient");
            let witness = prod.basis_vectors().next().map(<[Rational]>::to_vec);
            if let Some(w) = witness {
                rep.fail(CHECK_CENTER_ANNIHILATES, &[side + 1], w);
            }
        }

        rep.begin(CHECK_GRADING);
        for i in 1..depth {
            for j in 1..depth {
                if i + j + 1 > depth {
                    continue;
                }
                let prod = self
                    .ideal_product(lower.term(i + 1), lower.term(j + 1))
                    .expect("same ambient");
                let target = lower.term(i + j + 1);
                for w in prod.basis_vectors() {
                    if !target.contains(w).expect("same ambient") {
                        rep.fail(CHECK_GRADING, &[i, j], w.to_vec());
                        break;
                    }
                }
            }
        }
    }
}
