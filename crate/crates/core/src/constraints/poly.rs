use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::exactlin::Rational;

pub type Var = u32;

/// A monomial as the sorted multiset of its variables, so `x0^2 x3` is
/// `[0, 0, 3]`.
///
/// Ordered graded-lexicographically with `x0 > x1 > ...`: higher degree wins,
/// and at equal degree the monomial with the smaller variable at the first
/// differing position is larger.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[Var; 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(smallvec::smallvec![v])
    }

    pub fn from_vars(vars: impl IntoIterator<Item = Var>) -> Self {
        let mut v: SmallVec<[Var; 4]> = vars.into_iter().collect();
        v.sort_unstable();
        Monomial(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> &[Var] {
        &self.0
    }

    /// `(variable, exponent)` pairs in increasing variable order.
    pub fn powers(&self) -> Vec<(Var, u32)> {
        let mut out: Vec<(Var, u32)> = Vec::new();
        for &v in &self.0 {
            match out.last_mut() {
                Some((w, e)) if *w == v => *e += 1,
                _ => out.push((v, 1)),
            }
        }
        out
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            if a[i] <= b[j] {
                out.push(a[i]);
                i += 1;
            } else {
                out.push(b[j]);
                j += 1;
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.0, &other.0);
        if a.len() > b.len() {
            return false;
        }
        let mut j = 0;
        for &x in a.iter() {
            while j < b.len() && b[j] < x {
                j += 1;
            }
            if j == b.len() || b[j] != x {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::new();
        let mut i = 0;
        for &x in b.iter() {
            if i < a.len() && a[i] == x {
                i += 1;
            } else {
                out.push(x);
            }
        }
        debug_assert_eq!(i, a.len(), "quotient_of requires divisibility");
        Monomial(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len().max(b.len()));
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// No variable in common.
    pub fn coprime(&self, other: &Monomial) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| {
            for (a, b) in self.0.iter().zip(other.0.iter()) {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with rational coefficients: nonzero terms with distinct
/// monomials, sorted with the leading (largest) monomial first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Polynomial {
                terms: vec![(Monomial::one(), c)],
            }
        }
    }

    pub fn var(v: Var) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(v), Rational::one())],
        }
    }

    /// Builds from arbitrary terms, combining duplicates and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut t: Vec<(Monomial, Rational)> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        t.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, Rational)> = Vec::with_capacity(t.len());
        for (m, c) in t {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { terms: out }
    }

    /// Trusted constructor: terms already nonzero, distinct and sorted.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, Rational)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { terms }
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, Rational)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_nonzero_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn leading(&self) -> Option<&(Monomial, Rational)> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn degree(&self) -> usize {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn is_linear(&self) -> bool {
        self.degree() <= 1
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self
            .terms
            .iter()
            .flat_map(|(m, _)| m.vars().iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn constant_term(&self) -> Rational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Rational::zero(),
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms
            .binary_search_by(|(tm, _)| m.cmp(tm))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(tm, a)| (tm.mul(m), a * c))
                .collect(),
        }
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(tm, x)| (tm.mul(m), x * c))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((am, _)), Some((bm, _))) => match am.cmp(bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let s = ac + bc;
                        if !s.is_zero() {
                            out.push((am.clone(), s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (None, None) => break,
            }
        }
        Polynomial { terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, &Rational::one(), &Monomial::one())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, &-Rational::one(), &Monomial::one())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &other.terms {
            out = out.add_scaled(self, c, m);
        }
        out
    }

    pub fn eval(&self, value: impl Fn(Var) -> Rational) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &v in m.vars() {
                t *= value(v);
                if t.is_zero() {
                    break;
                }
            }
            total += t;
        }
        total
    }

    /// Replaces every variable `v` with `image(v)` when it returns `Some`.
    pub fn substitute(&self, image: impl Fn(Var) -> Option<Polynomial>) -> Polynomial {
        let mut acc: Vec<(Monomial, Rational)> = Vec::new();
        let mut pending: Vec<Polynomial> = Vec::new();
        for (m, c) in &self.terms {
            let mut kept: Vec<Var> = Vec::new();
            let mut factors: Vec<Polynomial> = Vec::new();
            for &v in m.vars() {
                match image(v) {
                    Some(p) => factors.push(p),
                    None => kept.push(v),
                }
            }
            let base = Monomial::from_vars(kept);
            if factors.is_empty() {
                acc.push((base, c.clone()));
                continue;
            }
            let mut prod = Polynomial {
                terms: vec![(base, c.clone())],
            };
            for f in &factors {
                prod = prod.mul(f);
                if prod.is_zero() {
                    break;
                }
            }
            pending.push(prod);
        }
        let mut out = Polynomial::from_terms(acc);
        for p in pending {
            out = out.add(&p);
        }
        out
    }
}

/// Renders with `name(v)` for each variable, e.g. `2 * x[1][2][3]^2 - 1`.
pub struct PolyDisplay<'a, F: Fn(Var) -> String> {
    pub poly: &'a Polynomial,
    pub name: F,
}

impl<F: Fn(Var) -> String> fmt::Display for PolyDisplay<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.poly.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (idx, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{abs}")?;
            for (v, e) in m.powers() {
                write!(f, " * {}", (self.name)(v))?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        PolyDisplay {
            poly: self,
            name: |v| format!("v{v}"),
        }
        .fmt(f)
    }
}
