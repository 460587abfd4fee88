use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Polynomial in `(q₁..qₙ, p₁..pₙ)`.
///
/// Terms are keyed by exponent vectors of length `2n` laid out as
/// `[q₁, …, qₙ, p₁, …, pₙ]`. Zero coefficients are never stored, so structural
/// equality is equality of polynomials.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PolynomialRepr", into = "PolynomialRepr")]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Vec<u32>, f64>,
}

#[derive(Serialize, Deserialize)]
struct PolynomialRepr {
    n: usize,
    expr: String,
}

impl TryFrom<PolynomialRepr> for Polynomial {
    type Error = Error;
    fn try_from(r: PolynomialRepr) -> Result<Self> {
        Polynomial::parse(&r.expr, r.n)
    }
}

impl From<Polynomial> for PolynomialRepr {
    fn from(p: Polynomial) -> Self {
        PolynomialRepr {
            n: p.n,
            expr: p.to_string(),
        }
    }
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Polynomial {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: f64) -> Self {
        Self::monomial(n, vec![0; 2 * n], c)
    }

    pub fn monomial(n: usize, exponents: Vec<u32>, coeff: f64) -> Self {
        assert_eq!(
            exponents.len(),
            2 * n,
            "exponent vector must have length 2n"
        );
        let mut p = Self::zero(n);
        if coeff != 0.0 {
            p.terms.insert(exponents, coeff);
        }
        p
    }

    /// `qᵢ` for `i` in `0..n`.
    pub fn q(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[i] = 1;
        Self::monomial(n, e, 1.0)
    }

    /// `pᵢ` for `i` in `0..n`.
    pub fn p(n: usize, i: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[n + i] = 1;
        Self::monomial(n, e, 1.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], f64)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            out.insert(e.clone(), c * s);
        }
        out
    }

    fn insert(&mut self, e: Vec<u32>, c: f64) {
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if c != 0.0 {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0.0 {
                    o.remove();
                }
            }
        }
    }

    fn ensure_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::PhaseDimension {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert(e.clone(), *c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.ensure_same(other)?;
        let mut out = Self::zero(self.n);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert(e, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Partial derivative with respect to variable `var` in `0..2n`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            if e[var] > 0 {
                let mut d = e.clone();
                d[var] -= 1;
                out.insert(d, c * e[var] as f64);
            }
        }
        out
    }

    pub fn d_dq(&self, i: usize) -> Self {
        self.derivative(i)
    }

    pub fn d_dp(&self, i: usize) -> Self {
        self.derivative(self.n + i)
    }

    /// Evaluates at `x = (q₁..qₙ, p₁..pₙ)`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), 2 * self.n);
        self.terms
            .iter()
            .map(|(e, c)| {
                c * e
                    .iter()
                    .zip(x)
                    .map(|(k, v)| v.powi(*k as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Largest absolute coefficient.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Parses `3*q1^2*p2 - 0.5*p1`; variable indices are 1-based and must not exceed `n`.
    pub fn parse(src: &str, n: usize) -> Result<Self> {
        let mut parser = Parser {
            src: src.as_bytes(),
            pos: 0,
            n: Some(n),
            max_index: 0,
            factors: Vec::new(),
        };
        let raw = parser.expression()?;
        Ok(assemble(n, raw))
    }

    /// Random polynomial with small integer coefficients so that sums and
    /// products stay exact in floating point.
    pub fn random<R: Rng + ?Sized>(
        n: usize,
        max_degree: u32,
        max_terms: usize,
        rng: &mut R,
    ) -> Self {
        let mut out = Self::zero(n);
        let count = rng.random_range(1..=max_terms);
        for _ in 0..count {
            let degree = rng.random_range(0..=max_degree);
            let mut e = vec![0u32; 2 * n];
            for _ in 0..degree {
                e[rng.random_range(0..2 * n)] += 1;
            }
            let c = rng.random_range(-3i32..=3) as f64;
            out.insert(e, c);
        }
        out
    }
}

/// Factor list per signed term, before the dimension is known.
type RawTerms = Vec<(f64, Vec<(usize, usize, u32)>)>;

fn assemble(n: usize, raw: RawTerms) -> Polynomial {
    let mut out = Polynomial::zero(n);
    for (c, factors) in raw {
        let mut e = vec![0u32; 2 * n];
        for (kind, idx, pow) in factors {
            e[kind * n + idx - 1] += pow;
        }
        out.insert(e, c);
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: Option<usize>,
    max_index: usize,
    factors: Vec<(usize, usize, u32)>,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    /// Accepts `+`, `-` and the Unicode minus sign.
    fn sign(&mut self) -> Option<f64> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'+') => {
                self.pos += 1;
                Some(1.0)
            }
            Some(b'-') => {
                self.pos += 1;
                Some(-1.0)
            }
            _ if self.src[self.pos..].starts_with("−".as_bytes()) => {
                self.pos += "−".len();
                Some(-1.0)
            }
            _ => None,
        }
    }

    fn expression(&mut self) -> Result<RawTerms> {
        let mut terms = Vec::new();
        let mut sign = self.sign().unwrap_or(1.0);
        loop {
            let (c, f) = self.term()?;
            terms.push((sign * c, f));
            self.skip_ws();
            if self.pos == self.src.len() {
                break;
            }
            sign = match self.sign() {
                Some(s) => s,
                None => return self.err("expected '+' or '-'"),
            };
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(f64, Vec<(usize, usize, u32)>)> {
        let mut coeff = 1.0;
        self.factors.clear();
        loop {
            self.skip_ws();
            match self.src.get(self.pos) {
                Some(b'q') | Some(b'p') => {
                    let kind = usize::from(self.src[self.pos] == b'p');
                    self.pos += 1;
                    let idx = self.integer()? as usize;
                    if idx == 0 {
                        return self.err("variable indices start at 1");
                    }
                    if let Some(n) = self.n {
                        if idx > n {
                            return self.err(format!("index {idx} exceeds {n} degrees of freedom"));
                        }
                    }
                    self.max_index = self.max_index.max(idx);
                    self.skip_ws();
                    let pow = if self.src.get(self.pos) == Some(&b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        self.integer()?
                    } else {
                        1
                    };
                    self.factors.push((kind, idx, pow));
                }
                Some(c) if c.is_ascii_digit() || *c == b'.' => coeff *= self.number()?,
                _ => return self.err("expected a number or a variable"),
            }
            self.skip_ws();
            if self.src.get(self.pos) == Some(&b'*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok((coeff, std::mem::take(&mut self.factors)))
    }

    fn integer(&mut self) -> Result<u32> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("expected an integer")
            }
        }
    }

    fn number(&mut self) -> Result<f64> {
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
        {
            self.pos += 1;
        }
        // optional exponent, e.g. 1e-3
        if matches!(self.src.get(self.pos), Some(b'e') | Some(b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if !matches!(self.src.get(self.pos), Some(c) if c.is_ascii_digit()) {
                self.pos = save;
            }
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii number");
        match text.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err(format!("malformed number '{text}'"))
            }
        }
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    /// Parses with `n` inferred as the largest variable index (at least 1).
    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
            n: None,
            max_index: 0,
            factors: Vec::new(),
        };
        let raw = parser.expression()?;
        Ok(assemble(parser.max_index.max(1), raw))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            b.0.iter()
                .sum::<u32>()
                .cmp(&a.0.iter().sum::<u32>())
                .then_with(|| b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            match (k, *c < 0.0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut parts: Vec<String> = Vec::new();
            if mag != 1.0 || e.iter().all(|v| *v == 0) {
                parts.push(format!("{mag}"));
            }
            for (var, pow) in e.iter().enumerate() {
                if *pow == 0 {
                    continue;
                }
                let name = if var < self.n {
                    format!("q{}", var + 1)
                } else {
                    format!("p{}", var - self.n + 1)
                };
                parts.push(if *pow == 1 {
                    name
                } else {
                    format!("{name}^{pow}")
                });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

macro_rules! poly_op {
    ($tr:ident, $f:ident, $body:expr) => {
        impl $tr for &Polynomial {
            type Output = Polynomial;
            fn $f(self, o: &Polynomial) -> Polynomial {
                let g: fn(&Polynomial, &Polynomial) -> Result<Polynomial> = $body;
                g(self, o).expect("polynomials over different phase spaces")
            }
        }
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, o: Polynomial) -> Polynomial {
                (&self).$f(&o)
            }
        }
    };
}

poly_op!(Add, add, |a, b| a.checked_add(b));
poly_op!(Sub, sub, |a, b| a.checked_add(&b.scale(-1.0)));
poly_op!(Mul, mul, |a, b| a.checked_mul(b));

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(-1.0)
    }
}

/// `{f, g} = Σᵢ ∂f/∂pᵢ ∂g/∂qᵢ − ∂f/∂qᵢ ∂g/∂pᵢ`, so that `{p₁, q₁} = 1`.
pub fn poisson_bracket(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.ensure_same(g)?;
    let mut out = Polynomial::zero(f.n);
    for i in 0..f.n {
        out = &out + &(&f.d_dp(i) * &g.d_dq(i));
        out = &out - &(&f.d_dq(i) * &g.d_dp(i));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::trial_rng;

    fn poly(s: &str, n: usize) -> Polynomial {
        Polynomial::parse(s, n).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let p = poly("3*q1^2*p2 - 0.5*p1", 2);
        assert_eq!(p.eval(&[2.0, 0.0, 1.0, 5.0]), 3.0 * 4.0 * 5.0 - 0.5);
        assert_eq!(p.to_string(), "3*q1^2*p2 - 0.5*p1");
        assert_eq!(poly(&p.to_string(), 2), p);
        assert_eq!(poly("-q1 + q1", 1), Polynomial::zero(1));
        assert_eq!(
            poly("q1 − p1", 1),
            &Polynomial::q(1, 0) - &Polynomial::p(1, 0)
        );
        assert_eq!(poly("2 * q1 * q1", 1), poly("2*q1^2", 1));
        assert_eq!(poly("1e-3*p1", 1).terms().next().unwrap().1, 1e-3);
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        assert_eq!(poly("-7", 2).to_string(), "-7");
        let inferred: Polynomial = "q3*p1".parse().unwrap();
        assert_eq!(inferred.n(), 3);
    }

    #[test]
    fn parse_errors_report_position() {
        assert!(matches!(
            Polynomial::parse("q1 +", 1),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(matches!(
            Polynomial::parse("q2", 1),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("q0", 1),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("q1 q1", 1),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Polynomial::parse("x1", 1),
            Err(Error::Parse { pos: 0, .. })
        ));
    }

    #[test]
    fn canonical_brackets() {
        let (q, p) = (Polynomial::q(1, 0), Polynomial::p(1, 0));
        assert_eq!(
            poisson_bracket(&p, &q).unwrap(),
            Polynomial::constant(1, 1.0)
        );
        assert_eq!(
            poisson_bracket(&q, &p).unwrap(),
            Polynomial::constant(1, -1.0)
        );
        let l = poly("q1*p2 - q2*p1", 2);
        let r2 = poly("q1^2 + q2^2", 2);
        assert!(poisson_bracket(&l, &r2).unwrap().is_zero());
        assert!(matches!(
            poisson_bracket(&q, &Polynomial::q(2, 0)),
            Err(Error::PhaseDimension { .. })
        ));
    }

    #[test]
    fn bracket_against_hand_expansion() {
        // {p1^2 q2, q1 p2} = ∂f/∂p1 ∂g/∂q1 − ∂f/∂q2 ∂g/∂p2 = 2 p1 q2 p2 − p1^2 q1
        let f = poly("p1^2*q2", 2);
        let g = poly("q1*p2", 2);
        assert_eq!(
            poisson_bracket(&f, &g).unwrap(),
            poly("2*p1*q2*p2 - p1^2*q1", 2)
        );
    }

    #[test]
    fn random_brackets_are_antisymmetric() {
        for trial in 0..50 {
            let mut rng = trial_rng(3, trial);
            let f = Polynomial::random(2, 3, 4, &mut rng);
            let g = Polynomial::random(2, 3, 4, &mut rng);
            assert!(poisson_bracket(&f, &f).unwrap().is_zero());
            let fg = poisson_bracket(&f, &g).unwrap();
            let gf = poisson_bracket(&g, &f).unwrap();
            assert!((&fg + &gf).is_zero());
        }
    }

    #[test]
    fn serde_uses_expression_text() {
        let p = poly("q1*p1 + 2", 1);
        let v = serde_json::to_value(&p).unwrap();
        assert_eq!(v, serde_json::json!({"n": 1, "expr": "q1*p1 + 2"}));
        assert_eq!(serde_json::from_value::<Polynomial>(v).unwrap(), p);
    }
}
