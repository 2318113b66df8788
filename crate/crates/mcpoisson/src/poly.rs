//! Sparse multivariate polynomials over the rationals.
//!
//! Used for coordinate functions on the degree-1 component of a graded
//! Lie algebra: hamiltonians for the induced Poisson bracket, the
//! quadratic equations cutting out a Maurer-Cartan cone, and the symbolic
//! cross-checks that differentiate a Poisson tensor coefficient by
//! coefficient. Variables are `x1 .. xn`; terms live in a sorted map so
//! printing and iteration order are deterministic.

use crate::ratlin::{format_q, parse_q, Q};
use num::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A polynomial in `nvars` variables with rational coefficients, stored
/// as exponent-vector keyed terms with no explicit zeros.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Q>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    /// The variable `x_{i+1}` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0u16; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Q::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u16>, &Q)> {
        self.terms.iter()
    }

    fn insert_term(&mut self, e: Vec<u16>, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(old) => {
                let v = &*old + &c;
                if v.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *old = v;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.insert_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), -c);
        }
        out
    }

    pub fn scale(&self, k: &Q) -> Poly {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u16> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Self::constant(self.nvars, Q::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    /// Partial derivative with respect to `x_{i+1}`.
    pub fn partial(&self, i: usize) -> Poly {
        assert!(i < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.insert_term(e2, c * Q::from_integer(e[i].into()));
        }
        out
    }

    /// All first partials, as the gradient vector of polynomials.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    pub fn eval(&self, point: &[Q]) -> Q {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut m = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    m = &m * &point[i];
                }
            }
            acc = acc + m;
        }
        acc
    }

    /// Gradient evaluated at a point.
    pub fn eval_gradient(&self, point: &[Q]) -> Vec<Q> {
        (0..self.nvars).map(|i| self.partial(i).eval(point)).collect()
    }

    /// Hessian evaluated at a point, as a dense row-major square matrix.
    pub fn eval_hessian(&self, point: &[Q]) -> Vec<Vec<Q>> {
        let grads: Vec<Poly> = self.gradient();
        (0..self.nvars)
            .map(|i| grads[i].eval_gradient(point))
            .collect()
    }

    /// Renders with variables `x1..xn`, terms in exponent order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            let coeff = format_q(c);
            let is_const = e.iter().all(|&k| k == 0);
            if coeff != "1" || is_const {
                factors.push(coeff);
            }
            for (i, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => factors.push(format!("x{}", i + 1)),
                    _ => factors.push(format!("x{}^{}", i + 1, k)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }

    /// Parses an expression in variables `x1..xn` with `+ - * ^`,
    /// parentheses, and rational literals like `3` or `5/2`.
    pub fn parse(nvars: usize, input: &str) -> Result<Poly, String> {
        let tokens = tokenize(input)?;
        let mut parser = Parser {
            nvars,
            tokens,
            pos: 0,
        };
        let p = parser.expr()?;
        if parser.pos != parser.tokens.len() {
            return Err(format!(
                "unexpected trailing input near `{}`",
                parser.describe_current()
            ));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Q),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(input: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1;
            }
            '-' => {
                out.push(Tok::Minus);
                i += 1;
            }
            '*' => {
                out.push(Tok::Star);
                i += 1;
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1;
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1;
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                // A slash directly after digits extends to a rational.
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let den_start = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == den_start {
                        return Err("expected digits after `/`".to_string());
                    }
                }
                let lit: String = chars[start..i].iter().collect();
                out.push(Tok::Num(parse_q(&lit)?));
            }
            'x' => {
                i += 1;
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start {
                    return Err("expected variable index after `x`".to_string());
                }
                let idx: usize = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| "bad variable index".to_string())?;
                if idx == 0 {
                    return Err("variables are numbered from x1".to_string());
                }
                out.push(Tok::Var(idx - 1));
            }
            other => return Err(format!("unexpected character `{other}`")),
        }
    }
    Ok(out)
}

struct Parser {
    nvars: usize,
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn describe_current(&self) -> String {
        match self.tokens.get(self.pos) {
            Some(t) => format!("{t:?}"),
            None => "end of input".to_string(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly, String> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, String> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, String> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(k)) if k.denom().is_one() && !num::Signed::is_negative(k) => {
                    let k: u32 = k
                        .numer()
                        .to_string()
                        .parse()
                        .map_err(|_| "exponent too large".to_string())?;
                    self.pos += 1;
                    return Ok(base.pow(k));
                }
                _ => return Err("expected nonnegative integer exponent after `^`".to_string()),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, String> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(c)) => {
                self.pos += 1;
                Ok(Poly::constant(self.nvars, c))
            }
            Some(Tok::Var(i)) => {
                if i >= self.nvars {
                    return Err(format!(
                        "variable x{} out of range; this model has {} coordinates",
                        i + 1,
                        self.nvars
                    ));
                }
                self.pos += 1;
                Ok(Poly::var(self.nvars, i))
            }
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.tokens.get(self.pos) {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err("expected `)`".to_string()),
                }
            }
            _ => Err(format!("expected a value, found {}", self.describe_current())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{q, qi};

    #[test]
    fn arithmetic_and_cancellation() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let p = x.add(&y).mul(&x.sub(&y));
        let want = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(p, want);
        assert!(p.sub(&want).is_zero());
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn partial_derivatives_obey_leibniz() {
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let f = x.mul(&y).add(&z.pow(3).scale(&q(1, 2)));
        let g = y.pow(2).sub(&x);
        let fg = f.mul(&g);
        for i in 0..3 {
            let lhs = fg.partial(i);
            let rhs = f.partial(i).mul(&g).add(&f.mul(&g.partial(i)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_gradient_hessian() {
        // f = x^2 y + 3z
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let f = x.pow(2).mul(&y).add(&z.scale(&qi(3)));
        let p = [qi(2), qi(-1), qi(5)];
        assert_eq!(f.eval(&p), qi(-4 + 15));
        assert_eq!(f.eval_gradient(&p), vec![qi(-4), qi(4), qi(3)]);
        let h = f.eval_hessian(&p);
        assert_eq!(h[0][0], qi(-2));
        assert_eq!(h[0][1], qi(4));
        assert_eq!(h[1][0], qi(4));
        assert_eq!(h[1][1], qi(0));
        // Hessians are symmetric.
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(h[i][j], h[j][i]);
            }
        }
    }

    #[test]
    fn parser_round_trips() {
        let p = Poly::parse(3, "x1^2*x2 - 1/2*x3 + 4").unwrap();
        let x = Poly::var(3, 0);
        let y = Poly::var(3, 1);
        let z = Poly::var(3, 2);
        let want = x
            .pow(2)
            .mul(&y)
            .sub(&z.scale(&q(1, 2)))
            .add(&Poly::constant(3, qi(4)));
        assert_eq!(p, want);

        let q2 = Poly::parse(2, "-(x1 + x2)^2").unwrap();
        assert_eq!(q2, Poly::var(2, 0).add(&Poly::var(2, 1)).pow(2).neg());

        let reparsed = Poly::parse(3, &p.render()).unwrap();
        assert_eq!(reparsed, p);
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!(Poly::parse(2, "x3").is_err());
        assert!(Poly::parse(2, "x0").is_err());
        assert!(Poly::parse(2, "x1 +").is_err());
        assert!(Poly::parse(2, "x1 ^ x2").is_err());
        assert!(Poly::parse(2, "(x1").is_err());
        assert!(Poly::parse(2, "x1 $ x2").is_err());
        assert!(Poly::parse(2, "x1^(1/2)").is_err());
    }

    #[test]
    fn render_is_deterministic_and_parseable() {
        let f = Poly::parse(4, "x4*x1 - x2*x3 + 2/3*x1^2").unwrap();
        let s1 = f.render();
        let s2 = Poly::parse(4, &s1).unwrap().render();
        assert_eq!(s1, s2);
    }
}
