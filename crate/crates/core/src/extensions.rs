//! LR-structures on extensions `g = (a, b, phi, Omega)` of a Lie algebra `b`
//! by an abelian kernel `a`.
//!
//! The underlying space of `g` is `a x b` with the kernel basis first: basis
//! vector `i < dim a` is the `i`-th basis vector of `a`, and `dim a + j` is
//! the `j`-th basis vector of `b`.

use num_traits::Zero;
use thiserror::Error;

use crate::exactlin::{vector, Matrix, Rational, Vector};
use crate::lie::{LieAlgebra, LieError};
use crate::lr::{LrAlgebra, LrError};
use crate::report::VerificationReport;
use crate::tensor::Tensor3;

pub const CHECK_REPRESENTATION: &str = "phi([x,y]) = [phi(x), phi(y)]";
pub const CHECK_OMEGA_SKEW: &str = "Omega skew-symmetric";
pub const CHECK_COCYCLE: &str = "cocycle identity";

pub const LIFT_SKEW: &str = "omega(x,y) - omega(y,x) = Omega(x,y)";
pub const LIFT_PHI_DIFF: &str = "phi2(x) - phi1(x) = phi(x)";
pub const LIFT_OMEGA_LEFT: &str =
    "phi2(x)omega(y,z) - phi2(y)omega(x,z) = omega(y,x.z) - omega(x,y.z)";
pub const LIFT_A_OMEGA_LEFT: &str = "a.omega(y,z) + phi1(y.z)a = phi2(y)phi1(z)a";
pub const LIFT_PHI2_COMMUTE: &str = "[phi2(x), phi2(y)] = 0";
pub const LIFT_PHI2_A_LINEAR: &str = "phi2(y)(a.c) = a.(phi2(y)c)";
pub const LIFT_PHI1_SYMMETRIC: &str = "a.(phi1(z)b) = b.(phi1(z)a)";
pub const LIFT_OMEGA_RIGHT: &str =
    "phi1(z)omega(x,y) - phi1(y)omega(x,z) = omega(x.z,y) - omega(x.y,z)";
pub const LIFT_OMEGA_A_RIGHT: &str = "omega(x,y).c + phi2(x.y)c = phi1(y)phi2(x)c";
pub const LIFT_PHI1_COMMUTE: &str = "[phi1(x), phi1(y)] = 0";
pub const LIFT_PHI1_A_LINEAR: &str = "phi1(z)(a.b) = (phi1(z)a).b";
pub const LIFT_PHI2_SYMMETRIC: &str = "(phi2(x)c).b = (phi2(x)b).c";

/// All twelve lift conditions, grouped as: compatibility (first two), left
/// symmetry (next five), right symmetry (last five).
pub const LIFT_CONDITIONS: [&str; 12] = [
    LIFT_SKEW,
    LIFT_PHI_DIFF,
    LIFT_OMEGA_LEFT,
    LIFT_A_OMEGA_LEFT,
    LIFT_PHI2_COMMUTE,
    LIFT_PHI2_A_LINEAR,
    LIFT_PHI1_SYMMETRIC,
    LIFT_OMEGA_RIGHT,
    LIFT_OMEGA_A_RIGHT,
    LIFT_PHI1_COMMUTE,
    LIFT_PHI1_A_LINEAR,
    LIFT_PHI2_SYMMETRIC,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("{what}: expected {expected}, found {found}")]
    Shape {
        what: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("extension datum is invalid: {}", first_violation(.0))]
    InvalidExtension(VerificationReport),
    #[error("kernel product is not commutative and associative: {}", first_violation(.0))]
    KernelProduct(VerificationReport),
    #[error("lift conditions fail: {}", first_violation(.0))]
    LiftConditionsFailed(VerificationReport),
    #[error("Omega must vanish for a semidirect product")]
    NonzeroCocycle,
    #[error("phi(e{i}.e{j}) is nonzero")]
    HypothesisFailed { i: usize, j: usize },
    #[error("phi(e) is not invertible")]
    NotInvertible(Matrix),
    #[error("the quotient algebra is not abelian")]
    NotAbelian,
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Lr(#[from] LrError),
}

fn first_violation(r: &VerificationReport) -> String {
    r.violations
        .first()
        .map_or_else(|| "no violation recorded".to_string(), ToString::to_string)
}

/// A bilinear map `Q^dom x Q^dom -> Q^codim`, stored by basis images.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BilinearMap {
    dom: usize,
    codim: usize,
    data: Vec<Rational>,
}

impl BilinearMap {
    pub fn zeros(dom: usize, codim: usize) -> Self {
        BilinearMap {
            dom,
            codim,
            data: vec![Rational::zero(); dom * dom * codim],
        }
    }

    pub fn dom(&self) -> usize {
        self.dom
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    /// Image of `(x_i, x_j)` (0-based).
    pub fn get(&self, i: usize, j: usize) -> &[Rational] {
        let s = (i * self.dom + j) * self.codim;
        &self.data[s..s + self.codim]
    }

    pub fn set(&mut self, i: usize, j: usize, v: &[Rational]) {
        assert_eq!(v.len(), self.codim);
        let s = (i * self.dom + j) * self.codim;
        self.data[s..s + self.codim].clone_from_slice(v);
    }

    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let mut out = vector::zero(self.codim);
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                vector::axpy(&mut out, &(a * b), self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// `(x, y) -> B(x, y) - B(y, x)`.
    pub fn skew_part(&self) -> BilinearMap {
        let mut out = BilinearMap::zeros(self.dom, self.codim);
        for i in 0..self.dom {
            for j in 0..self.dom {
                out.set(i, j, &vector::sub(self.get(i, j), self.get(j, i)));
            }
        }
        out
    }
}

/// `sum_i x_i maps[i]`.
fn combine(maps: &[Matrix], x: &[Rational], size: usize) -> Matrix {
    let mut out = Matrix::zeros(size, size);
    for (m, c) in maps.iter().zip(x) {
        if !c.is_zero() {
            out = &out + &m.scale(c);
        }
    }
    out
}

fn flatten(m: &Matrix) -> Vector {
    m.entries().to_vec()
}

fn tensor_apply(t: &Tensor3, u: &[Rational], v: &[Rational]) -> Vector {
    let n = t.dim();
    let mut out = vector::zero(n);
    for (i, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (j, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            vector::axpy(&mut out, &(a * b), t.entry(i, j));
        }
    }
    out
}

/// An abelian kernel `a = Q^a_dim`, a Lie algebra `b`, a linear map
/// `phi: b -> End(a)` (one matrix per basis vector of `b`) and a bilinear
/// `Omega: b x b -> a`. Shapes are checked on construction; the algebraic
/// conditions are checked by [`validate_extension`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionData {
    pub a_dim: usize,
    pub b: LieAlgebra,
    pub phi: Vec<Matrix>,
    pub omega: BilinearMap,
}

impl ExtensionData {
    pub fn new(
        a_dim: usize,
        b: LieAlgebra,
        phi: Vec<Matrix>,
        omega: BilinearMap,
    ) -> Result<Self, ExtensionError> {
        check_maps("phi", &phi, b.dim(), a_dim)?;
        check_bilinear("Omega", &omega, b.dim(), a_dim)?;
        Ok(ExtensionData {
            a_dim,
            b,
            phi,
            omega,
        })
    }

    pub fn b_dim(&self) -> usize {
        self.b.dim()
    }

    pub fn dim(&self) -> usize {
        self.a_dim + self.b.dim()
    }

    pub fn phi_of(&self, x: &[Rational]) -> Matrix {
        combine(&self.phi, x, self.a_dim)
    }
}

fn check_maps(
    what: &'static str,
    maps: &[Matrix],
    count: usize,
    size: usize,
) -> Result<(), ExtensionError> {
    if maps.len() != count {
        return Err(ExtensionError::Shape {
            what,
            expected: count,
            found: maps.len(),
        });
    }
    for m in maps {
        if m.rows() != size || m.cols() != size {
            return Err(ExtensionError::Shape {
                what,
                expected: size,
                found: m.rows().max(m.cols()),
            });
        }
    }
    Ok(())
}

fn check_bilinear(
    what: &'static str,
    b: &BilinearMap,
    dom: usize,
    codim: usize,
) -> Result<(), ExtensionError> {
    if b.dom != dom {
        return Err(ExtensionError::Shape {
            what,
            expected: dom,
            found: b.dom,
        });
    }
    if b.codim != codim {
        return Err(ExtensionError::Shape {
            what,
            expected: codim,
            found: b.codim,
        });
    }
    Ok(())
}

/// Representation law, skew-symmetry of `Omega`, and the cocycle identity
/// `phi(x)Omega(y,z) - phi(y)Omega(x,z) + phi(z)Omega(x,y)
///  = Omega([x,y],z) - Omega([x,z],y) + Omega([y,z],x)` on basis triples.
pub fn validate_extension(d: &ExtensionData) -> VerificationReport {
    let q = d.b_dim();
    let mut rep = VerificationReport::new();
    rep.begin(CHECK_REPRESENTATION);
    for i in 0..q {
        for j in (i + 1)..q {
            let lhs = d.phi_of(d.b.bracket_basis(i, j));
            let res = &lhs - &d.phi[i].commutator(&d.phi[j]);
            rep.expect_zero(CHECK_REPRESENTATION, &[i + 1, j + 1], &flatten(&res));
        }
    }
    rep.begin(CHECK_OMEGA_SKEW);
    for i in 0..q {
        for j in i..q {
            let res = vector::add(d.omega.get(i, j), d.omega.get(j, i));
            rep.expect_zero(CHECK_OMEGA_SKEW, &[i + 1, j + 1], &res);
        }
    }
    rep.begin(CHECK_COCYCLE);
    let e = |i| vector::unit(q, i);
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                let om = |u: usize, v: usize| d.omega.get(u, v).to_vec();
                let mut res = d.phi[i].mul_vec(&om(j, k));
                res = vector::sub(&res, &d.phi[j].mul_vec(&om(i, k)));
                res = vector::add(&res, &d.phi[k].mul_vec(&om(i, j)));
                res = vector::sub(&res, &d.omega.apply(d.b.bracket_basis(i, j), &e(k)));
                res = vector::add(&res, &d.omega.apply(d.b.bracket_basis(i, k), &e(j)));
                res = vector::sub(&res, &d.omega.apply(d.b.bracket_basis(j, k), &e(i)));
                rep.expect_zero(CHECK_COCYCLE, &[i + 1, j + 1, k + 1], &res);
            }
        }
    }
    rep
}

/// `[(a,x),(b,y)] = (phi(x)b - phi(y)a + Omega(x,y), [x,y])` on `a x b`.
pub fn extension_lie_algebra(d: &ExtensionData) -> Result<LieAlgebra, ExtensionError> {
    let rep = validate_extension(d);
    if !rep.ok() {
        return Err(ExtensionError::InvalidExtension(rep));
    }
    let (p, q) = (d.a_dim, d.b_dim());
    let n = p + q;
    let mut t = Tensor3::zeros(n);
    for x in 0..q {
        for j in 0..p {
            let img = d.phi[x].column(j);
            for (k, c) in img.iter().enumerate() {
                t.set(p + x, j, k, c.clone());
                t.set(j, p + x, k, -c);
            }
        }
        for y in 0..q {
            let om = d.omega.get(x, y);
            let br = d.b.bracket_basis(x, y);
            for k in 0..p {
                t.set(p + x, p + y, k, om[k].clone());
            }
            for k in 0..q {
                t.set(p + x, p + y, p + k, br[k].clone());
            }
        }
    }
    Ok(LieAlgebra::from_tensor(t)?)
}

/// Ingredients of the lifted product
/// `(a,x).(b,y) = (a.b + phi1(y)a + phi2(x)b + omega(x,y), x.y)`.
#[derive(Clone, Debug)]
pub struct LiftData {
    pub phi1: Vec<Matrix>,
    pub phi2: Vec<Matrix>,
    pub omega: BilinearMap,
    pub a_product: Tensor3,
    pub b_product: LrAlgebra,
}

impl LiftData {
    /// Checks shapes, that `a_product` is commutative and associative, and
    /// that `b_product` is an LR-structure on `d.b`.
    pub fn new(
        d: &ExtensionData,
        phi1: Vec<Matrix>,
        phi2: Vec<Matrix>,
        omega: BilinearMap,
        a_product: Tensor3,
        b_product: Tensor3,
    ) -> Result<Self, ExtensionError> {
        let (p, q) = (d.a_dim, d.b_dim());
        check_maps("phi1", &phi1, q, p)?;
        check_maps("phi2", &phi2, q, p)?;
        check_bilinear("omega", &omega, q, p)?;
        if a_product.dim() != p {
            return Err(ExtensionError::Shape {
                what: "kernel product",
                expected: p,
                found: a_product.dim(),
            });
        }
        let rep = commutative_associative(&a_product);
        if !rep.ok() {
            return Err(ExtensionError::KernelProduct(rep));
        }
        let b_product = LrAlgebra::from_tensor(d.b.clone(), b_product)?;
        Ok(LiftData {
            phi1,
            phi2,
            omega,
            a_product,
            b_product,
        })
    }

    /// `phi1 = 0`, `phi2 = phi`, zero products on `a` and `b`.
    pub fn trivial_products(d: &ExtensionData, omega: BilinearMap) -> Result<Self, ExtensionError> {
        let p = d.a_dim;
        let q = d.b_dim();
        Self::new(
            d,
            vec![Matrix::zeros(p, p); q],
            d.phi.clone(),
            omega,
            Tensor3::zeros(p),
            Tensor3::zeros(q),
        )
    }

    fn phi1_of(&self, x: &[Rational], p: usize) -> Matrix {
        combine(&self.phi1, x, p)
    }

    fn phi2_of(&self, x: &[Rational], p: usize) -> Matrix {
        combine(&self.phi2, x, p)
    }
}

fn commutative_associative(t: &Tensor3) -> VerificationReport {
    let p = t.dim();
    let mut rep = VerificationReport::new();
    rep.begin("commutative");
    rep.begin("associative");
    for i in 0..p {
        for j in 0..p {
            rep.expect_zero(
                "commutative",
                &[i + 1, j + 1],
                &vector::sub(t.entry(i, j), t.entry(j, i)),
            );
            for k in 0..p {
                let l = tensor_apply(t, t.entry(i, j), &vector::unit(p, k));
                let r = tensor_apply(t, &vector::unit(p, i), t.entry(j, k));
                rep.expect_zero("associative", &[i + 1, j + 1, k + 1], &vector::sub(&l, &r));
            }
        }
    }
    rep
}

/// The twelve conditions under which the lifted product is an LR-structure,
/// each checked on all basis tuples of `a` and `b`.
pub fn verify_lift_conditions(d: &ExtensionData, l: &LiftData) -> VerificationReport {
    let (p, q) = (d.a_dim, d.b_dim());
    let mut rep = VerificationReport::new();
    for c in LIFT_CONDITIONS {
        rep.begin(c);
    }
    let ea = |i: usize| vector::unit(p, i);
    let eb = |i: usize| vector::unit(q, i);
    let bp = l.b_product.product_tensor();
    let amul = |u: &[Rational], v: &[Rational]| tensor_apply(&l.a_product, u, v);
    let om = |x: usize, v: &[Rational]| l.omega.apply(&eb(x), v);
    let om_r = |v: &[Rational], y: usize| l.omega.apply(v, &eb(y));

    for x in 0..q {
        for y in 0..q {
            let skew = vector::sub(
                &vector::sub(l.omega.get(x, y), l.omega.get(y, x)),
                d.omega.get(x, y),
            );
            rep.expect_zero(LIFT_SKEW, &[x + 1, y + 1], &skew);
            let c2 = l.phi2[x].commutator(&l.phi2[y]);
            rep.expect_zero(LIFT_PHI2_COMMUTE, &[x + 1, y + 1], &flatten(&c2));
            let c1 = l.phi1[x].commutator(&l.phi1[y]);
            rep.expect_zero(LIFT_PHI1_COMMUTE, &[x + 1, y + 1], &flatten(&c1));
        }
        let diff = &(&l.phi2[x] - &l.phi1[x]) - &d.phi[x];
        rep.expect_zero(LIFT_PHI_DIFF, &[x + 1], &flatten(&diff));
    }

    for x in 0..q {
        for y in 0..q {
            for z in 0..q {
                let idx = [x + 1, y + 1, z + 1];
                // phi2(x)omega(y,z) - phi2(y)omega(x,z) - omega(y,x.z) + omega(x,y.z)
                let mut r = l.phi2[x].mul_vec(l.omega.get(y, z));
                r = vector::sub(&r, &l.phi2[y].mul_vec(l.omega.get(x, z)));
                r = vector::sub(&r, &om(y, bp.entry(x, z)));
                r = vector::add(&r, &om(x, bp.entry(y, z)));
                rep.expect_zero(LIFT_OMEGA_LEFT, &idx, &r);
                // phi1(z)omega(x,y) - phi1(y)omega(x,z) - omega(x.z,y) + omega(x.y,z)
                let mut r = l.phi1[z].mul_vec(l.omega.get(x, y));
                r = vector::sub(&r, &l.phi1[y].mul_vec(l.omega.get(x, z)));
                r = vector::sub(&r, &om_r(bp.entry(x, z), y));
                r = vector::add(&r, &om_r(bp.entry(x, y), z));
                rep.expect_zero(LIFT_OMEGA_RIGHT, &idx, &r);
            }
        }
    }

    for y in 0..q {
        for z in 0..q {
            let yz = bp.entry(y, z);
            let phi1_yz = l.phi1_of(yz, p);
            let phi2_yz = l.phi2_of(yz, p);
            let phi2_phi1 = &l.phi2[y] * &l.phi1[z];
            let phi1_phi2 = &l.phi1[z] * &l.phi2[y];
            for a in 0..p {
                // a.omega(y,z) + phi1(y.z)a - phi2(y)phi1(z)a
                let mut r = amul(&ea(a), l.omega.get(y, z));
                r = vector::add(&r, &phi1_yz.column(a));
                r = vector::sub(&r, &phi2_phi1.column(a));
                rep.expect_zero(LIFT_A_OMEGA_LEFT, &[a + 1, y + 1, z + 1], &r);
                // omega(y,z).c + phi2(y.z)c - phi1(z)phi2(y)c, with c = e_a
                let mut r = amul(l.omega.get(y, z), &ea(a));
                r = vector::add(&r, &phi2_yz.column(a));
                r = vector::sub(&r, &phi1_phi2.column(a));
                rep.expect_zero(LIFT_OMEGA_A_RIGHT, &[y + 1, z + 1, a + 1], &r);
            }
        }
    }

    for y in 0..q {
        for a in 0..p {
            for c in 0..p {
                let idx = [y + 1, a + 1, c + 1];
                let ac = amul(&ea(a), &ea(c));
                // phi2(y)(a.c) - a.(phi2(y)c)
                let r = vector::sub(&l.phi2[y].mul_vec(&ac), &amul(&ea(a), &l.phi2[y].column(c)));
                rep.expect_zero(LIFT_PHI2_A_LINEAR, &idx, &r);
                // a.(phi1(y)c) - c.(phi1(y)a)
                let r = vector::sub(
                    &amul(&ea(a), &l.phi1[y].column(c)),
                    &amul(&ea(c), &l.phi1[y].column(a)),
                );
                rep.expect_zero(LIFT_PHI1_SYMMETRIC, &idx, &r);
                // phi1(y)(a.c) - (phi1(y)a).c
                let r = vector::sub(&l.phi1[y].mul_vec(&ac), &amul(&l.phi1[y].column(a), &ea(c)));
                rep.expect_zero(LIFT_PHI1_A_LINEAR, &idx, &r);
                // (phi2(y)c).a - (phi2(y)a).c
                let r = vector::sub(
                    &amul(&l.phi2[y].column(c), &ea(a)),
                    &amul(&l.phi2[y].column(a), &ea(c)),
                );
                rep.expect_zero(LIFT_PHI2_SYMMETRIC, &idx, &r);
            }
        }
    }
    rep
}

/// Structure constants of the lifted product on `a x b`, without checking
/// any condition.
pub fn lift_product_tensor(d: &ExtensionData, l: &LiftData) -> Tensor3 {
    let (p, q) = (d.a_dim, d.b_dim());
    let mut t = Tensor3::zeros(p + q);
    let bp = l.b_product.product_tensor();
    for i in 0..p {
        for j in 0..p {
            for (k, c) in l.a_product.entry(i, j).iter().enumerate() {
                t.set(i, j, k, c.clone());
            }
        }
    }
    for x in 0..q {
        for j in 0..p {
            // a_j . x = phi1(x) a_j and x . a_j = phi2(x) a_j
            for k in 0..p {
                t.set(j, p + x, k, l.phi1[x].get(k, j).clone());
                t.set(p + x, j, k, l.phi2[x].get(k, j).clone());
            }
        }
        for y in 0..q {
            for k in 0..p {
                t.set(p + x, p + y, k, l.omega.get(x, y)[k].clone());
            }
            for k in 0..q {
                t.set(p + x, p + y, p + k, bp.get(x, y, k).clone());
            }
        }
    }
    t
}

pub fn lift_product(d: &ExtensionData, l: &LiftData) -> Result<LrAlgebra, ExtensionError> {
    let g = extension_lie_algebra(d)?;
    let rep = verify_lift_conditions(d, l);
    if !rep.ok() {
        return Err(ExtensionError::LiftConditionsFailed(rep));
    }
    Ok(LrAlgebra::from_tensor(g, lift_product_tensor(d, l))?)
}

/// Split extension with an LR-product on `b` satisfying `phi(x.y) = 0`:
/// `(a,x).(b,y) = (phi(x)b, x.y)`.
pub fn semidirect_lr(d: &ExtensionData, b_product: Tensor3) -> Result<LrAlgebra, ExtensionError> {
    if !d.omega.is_zero() {
        return Err(ExtensionError::NonzeroCocycle);
    }
    let rep = validate_extension(d);
    if !rep.ok() {
        return Err(ExtensionError::InvalidExtension(rep));
    }
    let (p, q) = (d.a_dim, d.b_dim());
    let b_lr = LrAlgebra::from_tensor(d.b.clone(), b_product)?;
    for i in 0..q {
        for j in 0..q {
            if !d.phi_of(b_lr.product_tensor().entry(i, j)).is_zero() {
                return Err(ExtensionError::HypothesisFailed { i: i + 1, j: j + 1 });
            }
        }
    }
    let l = LiftData::new(
        d,
        vec![Matrix::zeros(p, p); q],
        d.phi.clone(),
        BilinearMap::zeros(q, p),
        Tensor3::zeros(p),
        b_lr.product_tensor().clone(),
    )?;
    lift_product(d, &l)
}

/// For abelian `a`, `b` and `e` in `b` with `phi(e)` invertible:
/// `omega(x,y) = phi(e)^-1 phi(x) Omega(e,y)`, `phi1 = 0`, `phi2 = phi`, with
/// trivial products on `a` and `b`.
pub fn invertible_generator_lift(
    d: &ExtensionData,
    e: &[Rational],
) -> Result<LrAlgebra, ExtensionError> {
    let (p, q) = (d.a_dim, d.b_dim());
    if e.len() != q {
        return Err(ExtensionError::Shape {
            what: "generator e",
            expected: q,
            found: e.len(),
        });
    }
    if !d.b.is_abelian() {
        return Err(ExtensionError::NotAbelian);
    }
    let phi_e = d.phi_of(e);
    let inv = phi_e
        .inverse()
        .ok_or_else(|| ExtensionError::NotInvertible(phi_e.clone()))?;
    let mut omega = BilinearMap::zeros(q, p);
    for y in 0..q {
        let om_ey = d.omega.apply(e, &vector::unit(q, y));
        for x in 0..q {
            omega.set(x, y, &(&inv * &d.phi[x]).mul_vec(&om_ey));
        }
    }
    let l = LiftData::trivial_products(d, omega)?;
    lift_product(d, &l)
}
