//! Extension datum files for `construct extension`.
//!
//! ```text
//! extension heis-ext
//! kernel 1            # a = Q^1, basis a1
//! base 2              # b of dimension 2, basis x1, x2
//! [1,2] = 0           # brackets of b, terms in x
//! phi 1 = 0           # phi(x1) as rows separated by ';'
//! omega (1,2) = a1    # Omega, skew-symmetry filled in
//! lift generator 1 0  # or: lift semidirect, lift none
//! product             # LR-product on b (semidirect lift only)
//! (1,1) = x1
//! ```
//!
//! The resulting algebra has basis `a1..aP, x1..xQ`, written `e1..e(P+Q)`.

use std::collections::BTreeMap;

use lralg::extensions::{BilinearMap, ExtensionData};
use lralg::{LieAlgebra, Matrix, Rational, Tensor3, Vector};

use crate::format::{is_zero, negate, Cursor, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Lift {
    None,
    Semidirect,
    Generator(Vector),
}

#[derive(Clone, Debug)]
pub struct DatumFile {
    pub name: String,
    pub kernel: usize,
    pub base: usize,
    pub brackets: BTreeMap<(usize, usize), Vector>,
    pub phi: BTreeMap<usize, Matrix>,
    pub omega: BTreeMap<(usize, usize), Vector>,
    pub lift: Lift,
    pub product: BTreeMap<(usize, usize), Vector>,
}

impl DatumFile {
    pub fn parse(text: &str) -> Result<DatumFile, ParseError> {
        let mut name = None;
        let mut kernel = None;
        let mut base = None;
        let mut brackets = BTreeMap::new();
        let mut phi = BTreeMap::new();
        let mut omega = BTreeMap::new();
        let mut lift = None;
        let mut product: Option<BTreeMap<(usize, usize), Vector>> = None;
        let mut last_line = 1;

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            last_line = line;
            let mut cur = Cursor::new(raw.split('#').next().unwrap_or(""), line);
            if cur.at_end() {
                continue;
            }
            let start = cur.pos;
            let dims = |cur: &Cursor| match (kernel, base) {
                (Some(p), Some(q)) => Ok((p, q)),
                _ => Err(cur.err(start, "'kernel' and 'base' must come first")),
            };
            if cur.peek() == Some('[') || cur.peek() == Some('(') {
                let (_, q) = dims(&cur)?;
                let open = cur.peek() == Some('[');
                cur.pos += 1;
                let (i, j) = cur.index_pair(if open { ']' } else { ')' }, q)?;
                let v = cur.combination(q, 'x')?;
                if open {
                    insert_skew(&cur, start, &mut brackets, i, j, v, "bracket")?;
                } else {
                    let table = product.as_mut().ok_or_else(|| {
                        cur.err(start, "product entry before the 'product' header")
                    })?;
                    if table.get(&(i - 1, j - 1)).is_some_and(|prev| *prev != v) {
                        return Err(cur.err(
                            start,
                            format!("({i},{j}) conflicts with an earlier product line"),
                        ));
                    }
                    if !is_zero(&v) {
                        table.insert((i - 1, j - 1), v);
                    }
                }
                continue;
            }
            let (word, wstart) = cur.word();
            match word.as_str() {
                "extension" => {
                    let rest = cur.rest();
                    if rest.is_empty() {
                        return Err(cur.here("expected extension name"));
                    }
                    name = Some(rest);
                }
                "kernel" | "base" => {
                    let (d, col) = cur.nat("dimension")?;
                    if !cur.at_end() {
                        return Err(cur.here("unexpected text after dimension"));
                    }
                    if d == 0 {
                        return Err(cur.err(col, "dimension must be positive"));
                    }
                    let slot = if word == "kernel" {
                        &mut kernel
                    } else {
                        &mut base
                    };
                    if slot.replace(d).is_some() {
                        return Err(cur.err(wstart, format!("duplicate '{word}' line")));
                    }
                }
                "phi" => {
                    let (p, q) = dims(&cur)?;
                    let (x, col) = cur.nat("index")?;
                    if x == 0 || x > q {
                        return Err(cur.err(col, format!("index {x} out of range 1..={q}")));
                    }
                    cur.expect('=')?;
                    let m = matrix_rows(&mut cur, p)?;
                    if phi.insert(x - 1, m).is_some() {
                        return Err(cur.err(wstart, format!("duplicate phi {x}")));
                    }
                }
                "omega" => {
                    let (p, q) = dims(&cur)?;
                    cur.expect('(')?;
                    let (i, j) = cur.index_pair(')', q)?;
                    let v = cur.combination(p, 'a')?;
                    insert_skew(&cur, start, &mut omega, i, j, v, "omega")?;
                }
                "lift" => {
                    let (_, q) = dims(&cur)?;
                    let (kind, kstart) = cur.word();
                    let l = match kind.as_str() {
                        "none" => Lift::None,
                        "semidirect" => Lift::Semidirect,
                        "generator" => {
                            let mut e = Vec::new();
                            while !cur.at_end() {
                                e.push(cur.signed_rational()?);
                            }
                            if e.len() != q {
                                return Err(cur.err(
                                    kstart,
                                    format!("generator needs {q} coordinates, got {}", e.len()),
                                ));
                            }
                            Lift::Generator(e)
                        }
                        _ => {
                            return Err(
                                cur.err(kstart, "expected 'none', 'semidirect' or 'generator'")
                            )
                        }
                    };
                    if !cur.at_end() {
                        return Err(cur.here("unexpected text after lift"));
                    }
                    if lift.replace(l).is_some() {
                        return Err(cur.err(wstart, "duplicate 'lift' line"));
                    }
                }
                "product" => {
                    if !cur.at_end() {
                        return Err(cur.here("unexpected text after 'product'"));
                    }
                    if product.replace(BTreeMap::new()).is_some() {
                        return Err(cur.err(wstart, "duplicate 'product' header"));
                    }
                }
                _ => return Err(cur.err(wstart, format!("unknown directive '{word}'"))),
            }
        }
        let missing = |what: &str| ParseError {
            line: last_line,
            col: 1,
            message: format!("missing '{what}' line"),
        };
        let lift = lift.unwrap_or(Lift::None);
        if product.is_some() && lift != Lift::Semidirect {
            return Err(ParseError {
                line: last_line,
                col: 1,
                message: "a product section requires 'lift semidirect'".into(),
            });
        }
        Ok(DatumFile {
            name: name.ok_or_else(|| missing("extension"))?,
            kernel: kernel.ok_or_else(|| missing("kernel"))?,
            base: base.ok_or_else(|| missing("base"))?,
            brackets,
            phi,
            omega,
            lift,
            product: product.unwrap_or_default(),
        })
    }

    fn tensor(n: usize, table: &BTreeMap<(usize, usize), Vector>, skew: bool) -> Tensor3 {
        let mut t = Tensor3::zeros(n);
        for (&(i, j), v) in table {
            t.set_entry(i, j, v);
            if skew {
                t.set_entry(j, i, &negate(v));
            }
        }
        t
    }

    pub fn base_lie(&self) -> Result<LieAlgebra, lralg::LieError> {
        LieAlgebra::from_tensor(Self::tensor(self.base, &self.brackets, true))
    }

    pub fn base_product(&self) -> Tensor3 {
        Self::tensor(self.base, &self.product, false)
    }

    pub fn data(&self, b: LieAlgebra) -> ExtensionData {
        let (p, q) = (self.kernel, self.base);
        let phi = (0..q)
            .map(|x| {
                self.phi
                    .get(&x)
                    .cloned()
                    .unwrap_or_else(|| Matrix::zeros(p, p))
            })
            .collect();
        let mut om = BilinearMap::zeros(q, p);
        for (&(i, j), v) in &self.omega {
            om.set(i, j, v);
            om.set(j, i, &negate(v));
        }
        ExtensionData::new(p, b, phi, om).expect("shapes fixed by the parser")
    }
}

fn insert_skew(
    cur: &Cursor,
    start: usize,
    table: &mut BTreeMap<(usize, usize), Vector>,
    i: usize,
    j: usize,
    v: Vector,
    what: &str,
) -> Result<(), ParseError> {
    let (a, b) = (i - 1, j - 1);
    if a == b {
        if !is_zero(&v) {
            return Err(cur.err(start, format!("{what} ({i},{i}) must be zero")));
        }
        return Ok(());
    }
    let (key, val) = if a < b {
        ((a, b), v)
    } else {
        ((b, a), negate(&v))
    };
    let prev = table
        .get(&key)
        .cloned()
        .unwrap_or_else(|| vec![Rational::from_integer(0.into()); val.len()]);
    if table.contains_key(&key) && prev != val {
        return Err(cur.err(
            start,
            format!("{what} ({i},{j}) conflicts with an earlier line"),
        ));
    }
    if !is_zero(&val) {
        table.insert(key, val);
    }
    Ok(())
}

/// `r11 r12 ...; r21 ...` with `p` rows of `p` entries.
fn matrix_rows(cur: &mut Cursor, p: usize) -> Result<Matrix, ParseError> {
    let mut rows = vec![Vec::new()];
    while !cur.at_end() {
        if cur.peek() == Some(';') {
            cur.pos += 1;
            rows.push(Vec::new());
            continue;
        }
        let col = cur.pos;
        let v = cur.signed_rational()?;
        let row = rows.last_mut().expect("nonempty");
        if row.len() == p {
            return Err(cur.err(col, format!("row has more than {p} entries")));
        }
        row.push(v);
    }
    if rows.len() != p || rows.iter().any(|r| r.len() != p) {
        return Err(cur.here(format!("expected {p} rows of {p} entries")));
    }
    Ok(Matrix::from_rows(p, rows).expect("rows checked"))
}
