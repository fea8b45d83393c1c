//! Registry of named LR-algebras on r2, n3, n4 and n3 + Q, with parameter
//! domains, expected completeness, and a one-shot verifier.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactlin::{int, rat, vector, Rational, Vector};
use crate::lie::LieAlgebra;
use crate::lr::{verify_axioms, LrAlgebra, LrError};
use crate::tensor::Tensor3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry {0:?}")]
    UnknownName(String),
    #[error("{name} takes {expected} parameter(s), got {found}")]
    ParamCount {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("{name}: parameter {param} = {value} outside {domain}")]
    ParamOutOfDomain {
        name: String,
        param: &'static str,
        value: Rational,
        domain: ParamDomain,
    },
    #[error("{name}: {source}")]
    Invalid { name: String, source: LrError },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamDomain {
    Any,
    Boolean,
    AtMost(Rational),
    AtLeast(Rational),
}

impl fmt::Display for ParamDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamDomain::Any => write!(f, "Q"),
            ParamDomain::Boolean => write!(f, "{{0,1}}"),
            ParamDomain::AtMost(r) => write!(f, "<= {r}"),
            ParamDomain::AtLeast(r) => write!(f, ">= {r}"),
        }
    }
}

impl ParamDomain {
    pub fn contains(&self, v: &Rational) -> bool {
        match self {
            ParamDomain::Any => true,
            ParamDomain::Boolean => v.is_zero() || v.is_one(),
            ParamDomain::AtMost(r) => v <= r,
            ParamDomain::AtLeast(r) => v >= r,
        }
    }

    /// `{-2, -1/2, 0, 1/2, 3}` restricted to the domain, plus its endpoint;
    /// both values for Boolean parameters.
    pub fn sample(&self) -> Vec<Rational> {
        if *self == ParamDomain::Boolean {
            return vec![int(0), int(1)];
        }
        let mut out: Vec<Rational> = [rat(-2, 1), rat(-1, 2), int(0), rat(1, 2), int(3)]
            .into_iter()
            .filter(|v| self.contains(v))
            .collect();
        if let ParamDomain::AtMost(r) | ParamDomain::AtLeast(r) = self {
            if !out.contains(r) {
                out.push(r.clone());
            }
        }
        out.sort();
        out
    }
}

/// Which Lie algebra an entry lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BaseAlgebra {
    R2,
    N3,
    N4,
    N3PlusQ,
}

impl BaseAlgebra {
    pub fn lie(self) -> LieAlgebra {
        let e = |n: usize, i: usize| vector::unit(n, i - 1);
        match self {
            BaseAlgebra::R2 => LieAlgebra::from_table(2, &[(1, 2, e(2, 1))]),
            BaseAlgebra::N3 => LieAlgebra::from_table(3, &[(1, 2, e(3, 3))]),
            BaseAlgebra::N4 => LieAlgebra::from_table(4, &[(1, 2, e(4, 3)), (1, 3, e(4, 4))]),
            BaseAlgebra::N3PlusQ => LieAlgebra::from_table(4, &[(1, 2, e(4, 3))]),
        }
        .expect("base algebras satisfy Jacobi")
    }

    pub fn label(self) -> &'static str {
        match self {
            BaseAlgebra::R2 => "r2",
            BaseAlgebra::N3 => "n3",
            BaseAlgebra::N4 => "n4",
            BaseAlgebra::N3PlusQ => "n3R",
        }
    }
}

/// Product entries `(i, j, [(k, c)])` meaning `e_i.e_j = sum c e_k`, 1-based.
pub type ProductTable = Vec<(usize, usize, Vec<(usize, Rational)>)>;

pub struct CatalogEntry {
    pub name: &'static str,
    pub base: BaseAlgebra,
    pub params: &'static [(&'static str, ParamDomain)],
    pub expected_complete: bool,
    build: fn(&[Rational]) -> ProductTable,
}

impl fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .finish_non_exhaustive()
    }
}

impl CatalogEntry {
    /// Name with parameter names, e.g. `n4/A4(alpha,beta,gamma)`.
    pub fn display_name(&self) -> String {
        if self.params.is_empty() {
            self.name.to_string()
        } else {
            let names: Vec<&str> = self.params.iter().map(|(n, _)| *n).collect();
            format!("{}({})", self.name, names.join(","))
        }
    }

    pub fn product_table(&self, params: &[Rational]) -> Result<ProductTable, CatalogError> {
        if params.len() != self.params.len() {
            return Err(CatalogError::ParamCount {
                name: self.name.to_string(),
                expected: self.params.len(),
                found: params.len(),
            });
        }
        for ((pname, dom), v) in self.params.iter().zip(params) {
            if !dom.contains(v) {
                return Err(CatalogError::ParamOutOfDomain {
                    name: self.name.to_string(),
                    param: pname,
                    value: v.clone(),
                    domain: dom.clone(),
                });
            }
        }
        Ok((self.build)(params))
    }

    pub fn product_tensor(&self, params: &[Rational]) -> Result<Tensor3, CatalogError> {
        let table = self.product_table(params)?;
        let n = self.base.lie().dim();
        let mut t = Tensor3::zeros(n);
        for (i, j, terms) in table {
            for (k, c) in terms {
                let v = t.get(i - 1, j - 1, k - 1) + c;
                t.set(i - 1, j - 1, k - 1, v);
            }
        }
        Ok(t)
    }

    pub fn instantiate(&self, params: &[Rational]) -> Result<LrAlgebra, CatalogError> {
        let t = self.product_tensor(params)?;
        LrAlgebra::from_tensor(self.base.lie(), t).map_err(|source| CatalogError::Invalid {
            name: self.name.to_string(),
            source,
        })
    }

    /// All parameter assignments in the cartesian product of the samples.
    pub fn parameter_sample(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![Vec::new()];
        for (_, dom) in self.params {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    dom.sample().into_iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }
}

fn p(i: usize, j: usize, terms: &[(Rational, usize)]) -> (usize, usize, Vec<(usize, Rational)>) {
    (i, j, terms.iter().map(|(c, k)| (*k, c.clone())).collect())
}

fn one() -> Rational {
    Rational::one()
}

fn half() -> Rational {
    rat(1, 2)
}

const ALPHA: &[(&str, ParamDomain)] = &[("alpha", ParamDomain::Any)];
const BETA: &[(&str, ParamDomain)] = &[("beta", ParamDomain::Any)];
const ALPHA01: &[(&str, ParamDomain)] = &[("alpha", ParamDomain::Boolean)];
const ABC01: &[(&str, ParamDomain)] = &[
    ("alpha", ParamDomain::Boolean),
    ("beta", ParamDomain::Boolean),
    ("gamma", ParamDomain::Boolean),
];
const ALPHA_BETA01: &[(&str, ParamDomain)] =
    &[("alpha", ParamDomain::Any), ("beta", ParamDomain::Boolean)];

fn alpha_at_most_3_4() -> &'static [(&'static str, ParamDomain)] {
    static D: std::sync::OnceLock<Vec<(&'static str, ParamDomain)>> = std::sync::OnceLock::new();
    D.get_or_init(|| vec![("alpha", ParamDomain::AtMost(rat(3, 4)))])
}

fn alpha_at_least(num: i64, den: i64) -> &'static [(&'static str, ParamDomain)] {
    static HALF: std::sync::OnceLock<Vec<(&'static str, ParamDomain)>> = std::sync::OnceLock::new();
    static ONE: std::sync::OnceLock<Vec<(&'static str, ParamDomain)>> = std::sync::OnceLock::new();
    let cell = if (num, den) == (1, 2) { &HALF } else { &ONE };
    cell.get_or_init(|| vec![("alpha", ParamDomain::AtLeast(rat(num, den)))])
}

fn entries() -> Vec<CatalogEntry> {
    use BaseAlgebra::*;
    vec![
        // r2: [e1,e2] = e1
        CatalogEntry {
            name: "r2/A1",
            base: R2,
            params: &[],
            expected_complete: false,
            build: |_| vec![p(1, 1, &[(one(), 1)]), p(2, 1, &[(-one(), 1)])],
        },
        CatalogEntry {
            name: "r2/A2",
            base: R2,
            params: &[],
            expected_complete: true,
            build: |_| vec![p(1, 2, &[(one(), 1)])],
        },
        CatalogEntry {
            name: "r2/A3",
            base: R2,
            params: &[],
            expected_complete: false,
            build: |_| vec![p(2, 1, &[(-one(), 1)])],
        },
        // n3: [e1,e2] = e3
        CatalogEntry {
            name: "n3/A1",
            base: N3,
            params: ALPHA,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(one(), 3)]),
                    p(1, 2, &[(one(), 3)]),
                    p(2, 2, &[(a[0].clone(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3/A2",
            base: N3,
            params: BETA,
            expected_complete: true,
            build: |b| {
                vec![
                    p(1, 2, &[(b[0].clone(), 3)]),
                    p(2, 1, &[(&b[0] - one(), 3)]),
                    p(2, 2, &[(one(), 1)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3/A3",
            base: N3,
            params: &[],
            expected_complete: true,
            build: |_| vec![p(1, 2, &[(half(), 3)]), p(2, 1, &[(-half(), 3)])],
        },
        CatalogEntry {
            name: "n3/A4",
            base: N3,
            params: &[],
            expected_complete: false,
            build: |_| {
                vec![
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(one(), 2)]),
                    p(2, 3, &[(one(), 3)]),
                    p(3, 2, &[(one(), 3)]),
                ]
            },
        },
        // n4: [e1,e2] = e3, [e1,e3] = e4
        CatalogEntry {
            name: "n4/A1",
            base: N4,
            params: ALPHA,
            expected_complete: true,
            build: |a| {
                let a = &a[0];
                vec![
                    p(1, 1, &[(a * (a - one()), 2)]),
                    p(1, 2, &[(a.clone(), 3)]),
                    p(1, 3, &[(a.clone(), 4)]),
                    p(2, 1, &[(a - one(), 3)]),
                    p(2, 2, &[(one(), 4)]),
                    p(3, 1, &[(a - one(), 4)]),
                ]
            },
        },
        CatalogEntry {
            name: "n4/A2",
            base: N4,
            params: &[],
            expected_complete: true,
            build: |_| {
                vec![
                    p(1, 1, &[(one(), 3)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(one(), 4)]),
                    p(3, 1, &[(-one(), 4)]),
                ]
            },
        },
        CatalogEntry {
            name: "n4/A3",
            base: N4,
            params: &[],
            expected_complete: true,
            build: |_| {
                vec![
                    p(1, 1, &[(one(), 3)]),
                    p(1, 2, &[(one(), 3)]),
                    p(1, 3, &[(one(), 4)]),
                    p(2, 2, &[(one(), 4)]),
                ]
            },
        },
        CatalogEntry {
            name: "n4/A4",
            base: N4,
            params: ABC01,
            expected_complete: true,
            build: |v| {
                let (a, b, g) = (&v[0], &v[1], &v[2]);
                vec![
                    p(1, 1, &[(a.clone(), 2)]),
                    p(1, 2, &[(b.clone(), 3), (g.clone(), 4)]),
                    p(1, 3, &[(b.clone(), 4)]),
                    p(2, 1, &[(b - one(), 3), (g.clone(), 4)]),
                    p(3, 1, &[(b - one(), 4)]),
                ]
            },
        },
        CatalogEntry {
            name: "n4/A5",
            base: N4,
            params: ALPHA01,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(a[0].clone(), 4)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(one(), 3)]),
                    p(2, 3, &[(one(), 4)]),
                    p(3, 1, &[(-one(), 4)]),
                    p(3, 2, &[(one(), 4)]),
                ]
            },
        },
        CatalogEntry {
            name: "n4/A6",
            base: N4,
            params: &[],
            expected_complete: false,
            build: |_| {
                vec![
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(one(), 2)]),
                    p(2, 3, &[(one(), 3)]),
                    p(2, 4, &[(one(), 4)]),
                    p(3, 1, &[(-one(), 4)]),
                    p(3, 2, &[(one(), 3)]),
                    p(3, 3, &[(one(), 4)]),
                    p(4, 2, &[(one(), 4)]),
                ]
            },
        },
        // n3 + Q: [e1,e2] = e3, e4 central
        CatalogEntry {
            name: "n3R/A1",
            base: N3PlusQ,
            params: ALPHA,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 2, &[(a[0].clone(), 3)]),
                    p(2, 1, &[(&a[0] - one(), 3)]),
                    p(2, 2, &[(one(), 1)]),
                    p(4, 4, &[(one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A2",
            base: N3PlusQ,
            params: ALPHA01,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(a[0].clone(), 3)]),
                    p(1, 2, &[(one(), 4)]),
                    p(2, 1, &[(-one(), 3), (one(), 4)]),
                    p(2, 2, &[(one(), 1)]),
                    p(2, 4, &[(a[0].clone(), 3)]),
                    p(4, 2, &[(a[0].clone(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A3",
            base: N3PlusQ,
            params: ALPHA_BETA01,
            expected_complete: true,
            build: |v| {
                vec![
                    p(1, 2, &[(v[0].clone(), 3)]),
                    p(2, 1, &[(&v[0] - one(), 3)]),
                    p(2, 2, &[(one(), 1)]),
                    p(2, 4, &[(v[1].clone(), 3)]),
                    p(4, 2, &[(v[1].clone(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A4",
            base: N3PlusQ,
            params: ALPHA01,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(one(), 4)]),
                    p(1, 4, &[(one(), 3)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(a[0].clone(), 3)]),
                    p(4, 1, &[(one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A5",
            base: N3PlusQ,
            params: ALPHA01,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 4, &[(one(), 3)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(a[0].clone(), 3)]),
                    p(4, 1, &[(one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A6",
            base: N3PlusQ,
            params: ALPHA,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(a[0].clone(), 3)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(one(), 3)]),
                    p(4, 4, &[(one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A7",
            base: N3PlusQ,
            params: alpha_at_most_3_4(),
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(a[0].clone(), 3)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(-one(), 3)]),
                    p(4, 4, &[(one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A8",
            base: N3PlusQ,
            params: &[],
            expected_complete: true,
            build: |_| {
                vec![
                    p(1, 2, &[(half(), 3)]),
                    p(2, 1, &[(-half(), 3)]),
                    p(4, 4, &[(one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A9",
            base: N3PlusQ,
            params: alpha_at_least(1, 2),
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(one(), 4)]),
                    p(1, 2, &[(a[0].clone(), 3)]),
                    p(2, 1, &[(&a[0] - one(), 3)]),
                    p(2, 2, &[(one(), 4)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A10",
            base: N3PlusQ,
            params: alpha_at_least(1, 2),
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(one(), 4)]),
                    p(1, 2, &[(a[0].clone(), 3)]),
                    p(2, 1, &[(&a[0] - one(), 3)]),
                    p(2, 2, &[(-one(), 4)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A11",
            base: N3PlusQ,
            params: ALPHA,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(one(), 4)]),
                    p(1, 2, &[(a[0].clone(), 3)]),
                    p(2, 1, &[(&a[0] - one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A12",
            base: N3PlusQ,
            params: &[],
            expected_complete: true,
            build: |_| {
                vec![
                    p(1, 1, &[(one(), 4)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(one(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A13",
            base: N3PlusQ,
            params: ALPHA,
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(one(), 3)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(a[0].clone(), 3)]),
                ]
            },
        },
        CatalogEntry {
            name: "n3R/A14",
            base: N3PlusQ,
            params: &[],
            expected_complete: true,
            build: |_| vec![p(1, 2, &[(half(), 3)]), p(2, 1, &[(-half(), 3)])],
        },
        CatalogEntry {
            name: "n3R/A15",
            base: N3PlusQ,
            params: alpha_at_least(1, 1),
            expected_complete: true,
            build: |a| {
                vec![
                    p(1, 1, &[(one(), 4)]),
                    p(2, 1, &[(-one(), 3)]),
                    p(2, 2, &[(a[0].clone(), 3), (-one(), 4)]),
                ]
            },
        },
    ]
}

/// Every registered entry, in table order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: std::sync::OnceLock<Vec<CatalogEntry>> = std::sync::OnceLock::new();
    CATALOG.get_or_init(entries)
}

pub fn catalog_entry(name: &str) -> Result<&'static CatalogEntry, CatalogError> {
    catalog()
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| CatalogError::UnknownName(name.to_string()))
}

pub fn catalog_get(name: &str, params: &[Rational]) -> Result<LrAlgebra, CatalogError> {
    catalog_entry(name)?.instantiate(params)
}

/// Outcome for one entry at one parameter assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryCheck {
    pub name: &'static str,
    pub params: Vec<Rational>,
    pub axioms_ok: bool,
    pub lemma_suite_ok: bool,
    pub complete: Option<bool>,
    pub expected_complete: bool,
}

impl EntryCheck {
    pub fn passed(&self) -> bool {
        self.axioms_ok && self.lemma_suite_ok && self.complete == Some(self.expected_complete)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CatalogReport {
    pub checks: Vec<EntryCheck>,
}

impl CatalogReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(EntryCheck::passed)
    }

    /// Names of entries with at least one incomplete instance.
    pub fn incomplete_names(&self) -> Vec<&'static str> {
        let mut out: Vec<&'static str> = self
            .checks
            .iter()
            .filter(|c| c.complete == Some(false))
            .map(|c| c.name)
            .collect();
        out.dedup();
        out
    }
}

/// Verifies every entry whose name starts with `prefix` (all entries for
/// `None`) at every sampled parameter assignment.
pub fn catalog_verify(prefix: Option<&str>) -> CatalogReport {
    let mut report = CatalogReport::default();
    for entry in catalog()
        .iter()
        .filter(|e| prefix.map_or(true, |p| e.name.starts_with(p)))
    {
        for params in entry.parameter_sample() {
            let lie = entry.base.lie();
            let tensor = entry
                .product_tensor(&params)
                .expect("sampled parameters are in domain");
            let axioms_ok = verify_axioms(&lie, &tensor).ok();
            let (lemma_suite_ok, complete) = match LrAlgebra::from_tensor(lie, tensor) {
                Ok(a) => (a.lemma_suite_full().ok(), Some(a.is_complete())),
                Err(_) => (false, None),
            };
            report.checks.push(EntryCheck {
                name: entry.name,
                params,
                axioms_ok,
                lemma_suite_ok,
                complete,
                expected_complete: entry.expected_complete,
            });
        }
    }
    report
}

/// The 13-dimensional 3-step nilpotent Lie algebra on four generators that
/// admits no LR-structure.
pub fn counterexample_g13() -> LieAlgebra {
    let e = |i: usize| vector::unit(13, i - 1);
    let neg = |v: Vector| vector::scale(&int(-1), &v);
    LieAlgebra::from_table(
        13,
        &[
            (1, 2, e(5)),
            (1, 4, e(6)),
            (1, 6, e(10)),
            (1, 7, e(11)),
            (1, 8, e(12)),
            (2, 3, e(7)),
            (2, 4, e(8)),
            (2, 5, e(13)),
            (2, 7, e(13)),
            (3, 4, neg(e(5))),
            (3, 5, neg(e(11))),
            (3, 8, e(9)),
            (4, 5, neg(e(12))),
            (4, 6, e(9)),
            (4, 7, vector::add(&e(9), &e(13))),
        ],
    )
    .expect("g13 satisfies Jacobi")
}
