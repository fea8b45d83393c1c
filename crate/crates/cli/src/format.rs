//! The line-oriented algebra file format.
//!
//! ```text
//! # comment
//! algebra n3/A3
//! dim 3
//! param alpha = 1/2
//! [1,2] = e3
//! product
//! (1,2) = 1/2*e3
//! (2,1) = -1/2 e3
//! ```
//!
//! Omitted brackets and products are zero; `[j,i]` is filled in by
//! antisymmetry. Terms are `RATIONAL? '*'? 'e' INDEX` joined by `+` or `-`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use lralg::exactlin::parse_rational;
use lralg::{LieAlgebra, LieError, LrAlgebra, LrError, Rational, Tensor3, Vector};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

/// Parsed contents of an algebra file. Indices are 0-based; only nonzero
/// vectors are stored, brackets only for `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    pub params: Vec<(String, Rational)>,
    pub brackets: BTreeMap<(usize, usize), Vector>,
    pub products: Option<BTreeMap<(usize, usize), Vector>>,
}

/// Decimal digits to a rational integer.
fn parse_uint(digits: &str) -> Rational {
    parse_rational(digits).expect("ASCII digits")
}

pub(crate) struct Cursor {
    pub(crate) chars: Vec<char>,
    pub(crate) pos: usize,
    line: usize,
}

impl Cursor {
    pub(crate) fn new(src: &str, line: usize) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line,
        }
    }

    pub(crate) fn err(&self, col0: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: col0 + 1,
            message: message.into(),
        }
    }

    pub(crate) fn here(&self, message: impl Into<String>) -> ParseError {
        self.err(self.pos, message)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.chars.len()
    }

    pub(crate) fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.here(format!("expected '{c}'")))
        }
    }

    pub(crate) fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    pub(crate) fn nat(&mut self, what: &str) -> Result<(usize, usize), ParseError> {
        self.skip_ws();
        let col = self.pos;
        let d = self
            .digits()
            .ok_or_else(|| self.here(format!("expected {what}")))?;
        let v = d
            .parse::<usize>()
            .map_err(|_| self.err(col, format!("{what} too large")))?;
        Ok((v, col))
    }

    /// Unsigned `p` or `p/q` with `q > 0`.
    pub(crate) fn rational(&mut self) -> Result<Option<Rational>, ParseError> {
        let Some(p) = self.digits() else {
            return Ok(None);
        };
        if self.peek() != Some('/') {
            return Ok(Some(parse_uint(&p)));
        }
        self.pos += 1;
        let col = self.pos;
        let q = self
            .digits()
            .ok_or_else(|| self.here("expected denominator"))?;
        if q.bytes().all(|b| b == b'0') {
            return Err(self.err(col, "zero denominator"));
        }
        Ok(Some(parse_uint(&p) / parse_uint(&q)))
    }

    /// Optionally signed rational.
    pub(crate) fn signed_rational(&mut self) -> Result<Rational, ParseError> {
        self.skip_ws();
        let neg = self.peek() == Some('-');
        if neg {
            self.pos += 1;
        }
        let v = self
            .rational()?
            .ok_or_else(|| self.here("expected rational value"))?;
        Ok(if neg { -v } else { v })
    }

    pub(crate) fn word(&mut self) -> (String, usize) {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| !c.is_whitespace() && c != '(' && c != '[')
        {
            self.pos += 1;
        }
        (self.chars[start..self.pos].iter().collect(), start)
    }

    /// `i,j` followed by `close` and `=`, both in `1..=n` (opening bracket
    /// already consumed).
    pub(crate) fn index_pair(
        &mut self,
        close: char,
        n: usize,
    ) -> Result<(usize, usize), ParseError> {
        let (i, ci) = self.nat("index")?;
        self.expect(',')?;
        let (j, cj) = self.nat("index")?;
        self.expect(close)?;
        self.expect('=')?;
        for (idx, col) in [(i, ci), (j, cj)] {
            if idx == 0 || idx > n {
                return Err(self.err(col, format!("index {idx} out of range 1..={n}")));
            }
        }
        Ok((i, j))
    }

    pub(crate) fn rest(&self) -> String {
        self.chars[self.pos..]
            .iter()
            .collect::<String>()
            .trim()
            .to_string()
    }

    /// `0` or `TERM (('+'|'-') TERM)*`, with an optional leading sign.
    pub(crate) fn combination(&mut self, dim: usize, prefix: char) -> Result<Vector, ParseError> {
        let mut out = vec![Rational::from_integer(0.into()); dim];
        self.skip_ws();
        let save = self.pos;
        if self.peek() == Some('0') {
            self.pos += 1;
            if self.at_end() {
                return Ok(out);
            }
            self.pos = save;
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let mut negative = false;
            match self.peek() {
                Some('+') if !first => self.pos += 1,
                Some('-') => {
                    negative = true;
                    self.pos += 1;
                }
                None if first => return Err(self.here("expected a term")),
                _ if !first => return Err(self.here("expected '+' or '-'")),
                _ => {}
            }
            self.skip_ws();
            let coeff = self.rational()?;
            self.skip_ws();
            if coeff.is_some() && self.peek() == Some('*') {
                self.pos += 1;
                self.skip_ws();
            }
            if self.peek() != Some(prefix) {
                return Err(self.here(format!("expected basis vector '{prefix}<index>'")));
            }
            self.pos += 1;
            let col = self.pos;
            let idx = self
                .digits()
                .ok_or_else(|| self.here("expected basis index"))?;
            let idx = idx.parse::<usize>().unwrap_or(usize::MAX);
            if idx == 0 || idx > dim {
                return Err(self.err(col, format!("basis index {idx} out of range 1..={dim}")));
            }
            let mut c = coeff.unwrap_or_else(|| Rational::from_integer(1.into()));
            if negative {
                c = -c;
            }
            out[idx - 1] += c;
            first = false;
            if self.at_end() {
                return Ok(out);
            }
        }
    }
}

pub(crate) fn is_zero(v: &[Rational]) -> bool {
    v.iter().all(|c| *c == Rational::from_integer(0.into()))
}

pub(crate) fn negate(v: &[Rational]) -> Vector {
    v.iter().map(|c| -c).collect()
}

/// Formats `sum c_i e_i` as `e3 - 1/2*e1`; the zero vector as `0`.
pub fn format_terms(v: &[Rational]) -> String {
    let mut out = String::new();
    let one = Rational::from_integer(1.into());
    for (i, c) in v.iter().enumerate() {
        if *c == Rational::from_integer(0.into()) {
            continue;
        }
        let neg = *c < Rational::from_integer(0.into());
        let abs = if neg { -c } else { c.clone() };
        match (out.is_empty(), neg) {
            (true, true) => out.push('-'),
            (true, false) => {}
            (false, true) => out.push_str(" - "),
            (false, false) => out.push_str(" + "),
        }
        if abs != one {
            let _ = write!(out, "{abs}*");
        }
        let _ = write!(out, "e{}", i + 1);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl AlgebraFile {
    pub fn parse(text: &str) -> Result<AlgebraFile, ParseError> {
        let mut name: Option<String> = None;
        let mut dim: Option<usize> = None;
        let mut params: Vec<(String, Rational)> = Vec::new();
        let mut brackets: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
        let mut products: Option<BTreeMap<(usize, usize), Vector>> = None;
        let mut last_line = 1;

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            last_line = line;
            let content = raw.split('#').next().unwrap_or("");
            let mut cur = Cursor::new(content, line);
            if cur.at_end() {
                continue;
            }
            let start = cur.pos;
            let need_dim = |cur: &Cursor, dim: Option<usize>| {
                dim.ok_or_else(|| cur.err(start, "'dim' must come first"))
            };
            match cur.peek() {
                Some('[') => {
                    let n = need_dim(&cur, dim)?;
                    cur.pos += 1;
                    let (i, j) = cur.index_pair(']', n)?;
                    let v = cur.combination(n, 'e')?;
                    let (a, b) = (i - 1, j - 1);
                    if a == b {
                        if !is_zero(&v) {
                            return Err(cur.err(start, format!("[{i},{i}] must be zero")));
                        }
                        continue;
                    }
                    let (key, val) = if a < b {
                        ((a, b), v)
                    } else {
                        ((b, a), negate(&v))
                    };
                    match brackets.get(&key) {
                        Some(prev) if *prev != val => {
                            return Err(cur.err(
                                start,
                                format!("[{i},{j}] conflicts with an earlier bracket line"),
                            ))
                        }
                        Some(_) => {}
                        None => {
                            if !is_zero(&val) {
                                brackets.insert(key, val);
                            }
                        }
                    }
                }
                Some('(') => {
                    let n = need_dim(&cur, dim)?;
                    let table = products.as_mut().ok_or_else(|| {
                        cur.err(start, "product entry before the 'product' header")
                    })?;
                    cur.pos += 1;
                    let (i, j) = cur.index_pair(')', n)?;
                    let v = cur.combination(n, 'e')?;
                    let key = (i - 1, j - 1);
                    match table.get(&key) {
                        Some(prev) if *prev != v => {
                            return Err(cur.err(
                                start,
                                format!("({i},{j}) conflicts with an earlier product line"),
                            ))
                        }
                        _ if is_zero(&v) => {}
                        _ => {
                            table.insert(key, v);
                        }
                    }
                }
                _ => {
                    let word_start = cur.pos;
                    while cur.peek().is_some_and(|c| !c.is_whitespace()) {
                        cur.pos += 1;
                    }
                    let word: String = cur.chars[word_start..cur.pos].iter().collect();
                    match word.as_str() {
                        "algebra" => {
                            let rest = cur.rest();
                            if rest.is_empty() {
                                return Err(cur.here("expected algebra name"));
                            }
                            if name.is_some() {
                                return Err(cur.err(word_start, "duplicate 'algebra' line"));
                            }
                            name = Some(rest);
                        }
                        "dim" => {
                            let (d, col) = cur.nat("dimension")?;
                            if !cur.at_end() {
                                return Err(cur.here("unexpected text after dimension"));
                            }
                            if d == 0 {
                                return Err(cur.err(col, "dimension must be positive"));
                            }
                            if dim.is_some() {
                                return Err(cur.err(word_start, "duplicate 'dim' line"));
                            }
                            dim = Some(d);
                        }
                        "param" => {
                            cur.skip_ws();
                            let s = cur.pos;
                            while cur.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
                                cur.pos += 1;
                            }
                            if cur.pos == s {
                                return Err(cur.here("expected parameter name"));
                            }
                            let pname: String = cur.chars[s..cur.pos].iter().collect();
                            cur.expect('=')?;
                            let v = cur.signed_rational()?;
                            if !cur.at_end() {
                                return Err(cur.here("unexpected text after parameter value"));
                            }
                            params.push((pname, v));
                        }
                        "product" => {
                            if !cur.at_end() {
                                return Err(cur.here("unexpected text after 'product'"));
                            }
                            if products.is_some() {
                                return Err(cur.err(word_start, "duplicate 'product' header"));
                            }
                            products = Some(BTreeMap::new());
                        }
                        _ => return Err(cur.err(word_start, format!("unknown directive '{word}'"))),
                    }
                }
            }
        }
        let missing = |what: &str| ParseError {
            line: last_line,
            col: 1,
            message: format!("missing '{what}' line"),
        };
        Ok(AlgebraFile {
            name: name.ok_or_else(|| missing("algebra"))?,
            dim: dim.ok_or_else(|| missing("dim"))?,
            params,
            brackets,
            products,
        })
    }

    pub fn print(&self) -> String {
        self.to_string()
    }

    pub fn from_lie(name: &str, g: &LieAlgebra) -> AlgebraFile {
        let n = g.dim();
        let mut brackets = BTreeMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let v = g.bracket_basis(i, j);
                if !is_zero(v) {
                    brackets.insert((i, j), v.to_vec());
                }
            }
        }
        AlgebraFile {
            name: name.to_string(),
            dim: n,
            params: Vec::new(),
            brackets,
            products: None,
        }
    }

    pub fn from_lr(name: &str, a: &LrAlgebra) -> AlgebraFile {
        let mut f = Self::from_lie(name, a.lie());
        let n = a.dim();
        let mut products = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let v = a.product_tensor().entry(i, j);
                if !is_zero(v) {
                    products.insert((i, j), v.to_vec());
                }
            }
        }
        f.products = Some(products);
        f
    }

    pub fn with_params(mut self, params: Vec<(String, Rational)>) -> AlgebraFile {
        self.params = params;
        self
    }

    /// Full bracket tensor (antisymmetric by construction, Jacobi unchecked).
    pub fn bracket_tensor(&self) -> Tensor3 {
        let mut t = Tensor3::zeros(self.dim);
        for (&(i, j), v) in &self.brackets {
            t.set_entry(i, j, v);
            t.set_entry(j, i, &negate(v));
        }
        t
    }

    pub fn product_tensor(&self) -> Option<Tensor3> {
        self.products.as_ref().map(|table| {
            let mut t = Tensor3::zeros(self.dim);
            for (&(i, j), v) in table {
                t.set_entry(i, j, v);
            }
            t
        })
    }

    pub fn lie(&self) -> Result<LieAlgebra, LieError> {
        LieAlgebra::from_tensor(self.bracket_tensor())
    }

    /// The LR-algebra, when a product section exists.
    pub fn lr(&self) -> Option<Result<LrAlgebra, LrError>> {
        let p = self.product_tensor()?;
        Some(
            self.lie()
                .map_err(LrError::from)
                .and_then(|g| LrAlgebra::from_tensor(g, p)),
        )
    }
}

impl fmt::Display for AlgebraFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra {}", self.name)?;
        writeln!(f, "dim {}", self.dim)?;
        for (p, v) in &self.params {
            writeln!(f, "param {p} = {v}")?;
        }
        for (&(i, j), v) in &self.brackets {
            writeln!(f, "[{},{}] = {}", i + 1, j + 1, format_terms(v))?;
        }
        if let Some(table) = &self.products {
            writeln!(f, "product")?;
            for (&(i, j), v) in table {
                writeln!(f, "({},{}) = {}", i + 1, j + 1, format_terms(v))?;
            }
        }
        Ok(())
    }
}
