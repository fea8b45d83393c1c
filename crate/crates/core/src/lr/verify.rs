use num_traits::One;

use crate::exactlin::{vector, Rational};
use crate::lie::LieAlgebra;
use crate::report::VerificationReport;
use crate::tensor::{apply_bilinear_sparse_into, Tensor3};

pub const CHECK_LR1: &str = "LR1 x.(y.z) = y.(x.z)";
pub const CHECK_LR2: &str = "LR2 (x.y).z = (x.z).y";
pub const CHECK_COMPAT: &str = "compatibility x.y - y.x = [x,y]";

/// Checks the LR identities and bracket compatibility of `product` on every
/// basis triple. Works on arbitrary tensors so that perturbed products can be
/// diagnosed; violations carry 1-based indices.
pub fn verify_axioms(lie: &LieAlgebra, product: &Tensor3) -> VerificationReport {
    let n = lie.dim();
    assert_eq!(
        product.dim(),
        n,
        "product tensor and Lie algebra differ in dimension"
    );
    let table = product.sparse_entries();
    let one = Rational::one();
    let neg = -Rational::one();
    let mut report = VerificationReport::new();

    report.begin(CHECK_LR1);
    for i in 0..n {
        for j in (i + 1)..n {
            for k in 0..n {
                let mut res = vector::zero(n);
                apply_bilinear_sparse_into(
                    n,
                    &table,
                    &one,
                    &[(i, one.clone())],
                    &table[j * n + k],
                    &mut res,
                );
                apply_bilinear_sparse_into(
                    n,
                    &table,
                    &neg,
                    &[(j, one.clone())],
                    &table[i * n + k],
                    &mut res,
                );
                report.expect_zero(CHECK_LR1, &[i + 1, j + 1, k + 1], &res);
            }
        }
    }

    report.begin(CHECK_LR2);
    for i in 0..n {
        for j in 0..n {
            for k in (j + 1)..n {
                let mut res = vector::zero(n);
                apply_bilinear_sparse_into(
                    n,
                    &table,
                    &one,
                    &table[i * n + j],
                    &[(k, one.clone())],
                    &mut res,
                );
                apply_bilinear_sparse_into(
                    n,
                    &table,
                    &neg,
                    &table[i * n + k],
                    &[(j, one.clone())],
                    &mut res,
                );
                report.expect_zero(CHECK_LR2, &[i + 1, j + 1, k + 1], &res);
            }
        }
    }

    report.begin(CHECK_COMPAT);
    for i in 0..n {
        for j in (i + 1)..n {
            let res: Vec<Rational> = (0..n)
                .map(|k| {
                    product.get(i, j, k) - product.get(j, i, k) - lie.bracket_basis(i, j)[k].clone()
                })
                .collect();
            report.expect_zero(CHECK_COMPAT, &[i + 1, j + 1], &res);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::exactlin::{int, Matrix};
    use crate::lr::tests::{n3, n3_a3};
    use crate::lr::LrAlgebra;

    /// Brute force over all triples via explicit operator matrices.
    fn oracle(lie: &LieAlgebra, p: &Tensor3) -> (bool, bool, bool) {
        let n = lie.dim();
        let l = |i: usize| Matrix::from_fn(n, n, |r, c| p.get(i, c, r).clone());
        let r = |i: usize| Matrix::from_fn(n, n, |row, c| p.get(c, i, row).clone());
        let mut lr1 = true;
        let mut lr2 = true;
        let mut compat = true;
        for a in 0..n {
            for b in 0..n {
                lr1 &= l(a).commutator(&l(b)).is_zero();
                lr2 &= r(a).commutator(&r(b)).is_zero();
                compat &= (&l(a) - &r(a)) == lie.ad_basis(a);
            }
        }
        (lr1, lr2, compat)
    }

    #[test]
    fn unit_perturbations_match_oracle() {
        let base = n3_a3().product_tensor().clone();
        let mut still_valid = Vec::new();
        for idx in 0..27 {
            let mut p = base.clone();
            p.raw_mut()[idx] += int(1);
            let rep = verify_axioms(&n3(), &p);
            let (lr1, lr2, compat) = oracle(&n3(), &p);
            assert_eq!(rep.ok(), lr1 && lr2 && compat);
            if rep.ok() {
                still_valid.push((idx / 9 + 1, idx / 3 % 3 + 1, idx % 3 + 1));
            }
        }
        // Adding e2 or e3 to e1.e1, or e1 or e3 to e2.e2, stays valid.
        assert_eq!(
            still_valid,
            vec![(1, 1, 2), (1, 1, 3), (2, 2, 1), (2, 2, 3)]
        );
    }

    #[test]
    fn valid_structure_passes_every_check() {
        let a = n3_a3();
        let rep = a.verify();
        assert!(rep.ok());
        assert!(rep.passed(CHECK_LR1) && rep.passed(CHECK_LR2) && rep.passed(CHECK_COMPAT));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        /// Single-entry perturbations of a valid product: the report agrees with
        /// the operator-level oracle. Some perturbations (e.g. of the e1.e1
        /// coefficient) stay valid, so failure is not asserted unconditionally.
        #[test]
        fn perturbations_agree_with_oracle(i in 0usize..3, j in 0usize..3, k in 0usize..3, d in -3i64..=3) {
            prop_assume!(d != 0);
            let base = n3_a3();
            let mut p = base.product_tensor().clone();
            let v = p.get(i, j, k) + int(d);
            p.set(i, j, k, v);
            let rep = verify_axioms(&n3(), &p);
            let (lr1, lr2, compat) = oracle(&n3(), &p);
            prop_assert_eq!(rep.passed(CHECK_LR1), lr1);
            prop_assert_eq!(rep.passed(CHECK_LR2), lr2);
            prop_assert_eq!(rep.passed(CHECK_COMPAT), compat);
            prop_assert_eq!(LrAlgebra::from_tensor(n3(), p).is_ok(), lr1 && lr2 && compat);
        }

        #[test]
        fn random_small_tensors_agree_with_oracle(entries in proptest::collection::vec(-1i64..=1, 8)) {
            let lie = LieAlgebra::abelian(2);
            let mut p = Tensor3::zeros(2);
            for (idx, e) in entries.iter().enumerate() {
                p.raw_mut()[idx] = int(*e);
            }
            let rep = verify_axioms(&lie, &p);
            let (lr1, lr2, compat) = oracle(&lie, &p);
            prop_assert_eq!(rep.passed(CHECK_LR1), lr1);
            prop_assert_eq!(rep.passed(CHECK_LR2), lr2);
            prop_assert_eq!(rep.passed(CHECK_COMPAT), compat);
        }
    }
}
