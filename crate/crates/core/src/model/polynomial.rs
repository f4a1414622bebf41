use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{GroundRing, Scalar};

/// Exponent vector compared in graded-lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Exponent(pub Vec<u32>);

impl Exponent {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(nvars, vec![0; nvars], c)
    }

    pub fn term(nvars: usize, exponent: Vec<u32>, c: Scalar) -> Self {
        assert_eq!(exponent.len(), nvars);
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Exponent(exponent), c);
        }
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::term(nvars, e, Scalar::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> Scalar {
        self.terms
            .get(&Exponent(e.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn leading(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Exponent::degree).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponent::degree);
        match degs.next() {
            Some(d) => degs.all(|e| e == d),
            None => true,
        }
    }

    pub fn add_term(&mut self, ring: &GroundRing, e: Exponent, c: &Scalar) {
        let sum = ring.normalize(self.terms.get(&e).cloned().unwrap_or_else(Scalar::zero) + c);
        if sum.is_zero() {
            self.terms.remove(&e);
        } else {
            self.terms.insert(e, sum);
        }
    }

    pub fn normalized(&self, ring: &GroundRing) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(ring, e.clone(), c);
        }
        out
    }

    pub fn add(&self, other: &Self, ring: &GroundRing) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(ring, e.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: &Scalar, ring: &GroundRing) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(ring, e.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, other: &Self, ring: &GroundRing) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect();
                out.add_term(ring, Exponent(e), &(ca * cb));
            }
        }
        out
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &[u32]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (a, c) in &self.terms {
            let s = a.0.iter().zip(e).map(|(x, y)| x + y).collect();
            out.terms.insert(Exponent(s), c.clone());
        }
        out
    }

    /// Partial derivative with respect to variable `i`.
    pub fn derivative(&self, i: usize, ring: &GroundRing) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.0[i] == 0 {
                continue;
            }
            let mut f = e.0.clone();
            f[i] -= 1;
            out.add_term(ring, Exponent(f), &(c * Scalar::from_integer(BigInt::from(e.0[i]))));
        }
        out
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> =
                e.0.iter()
                    .zip(names)
                    .filter(|(&x, _)| x > 0)
                    .map(|(&x, n)| if x == 1 { n.clone() } else { format!("{n}^{x}") })
                    .collect();
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push('*');
                }
                s.push_str(&mono.join("*"));
            }
        }
        s
    }

    /// Parses `± term ± term …` where a term is an optional integer
    /// coefficient followed by `var^exp` factors joined by `*` or spaces.
    /// Errors carry a 1-based column.
    pub fn parse(text: &str, vars: &[String], ring: &GroundRing) -> std::result::Result<Self, (usize, String)> {
        Parser {
            chars: text.char_indices().collect(),
            pos: 0,
            vars,
            ring,
        }
        .polynomial()
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    vars: &'a [String],
    ring: &'a GroundRing,
}

impl Parser<'_> {
    fn column(&self) -> usize {
        self.chars.get(self.pos).map_or_else(
            || self.chars.last().map_or(1, |&(i, c)| i + c.len_utf8() + 1),
            |&(i, _)| i + 1,
        )
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> std::result::Result<T, (usize, String)> {
        Err((self.column(), msg.into()))
    }

    fn number(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    fn ident(&mut self) -> Option<String> {
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_alphabetic() || c == '_') {
            return None;
        }
        while self.peek().is_some_and(|c| c.is_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        Some(self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn polynomial(&mut self) -> std::result::Result<Polynomial, (usize, String)> {
        let n = self.vars.len();
        let mut poly = Polynomial::zero(n);
        let mut first = true;
        loop {
            self.skip_ws();
            let mut sign = 1i64;
            match self.peek() {
                None if first => return self.err("empty expression"),
                None => break,
                Some('+') => self.pos += 1,
                Some('-') => {
                    sign = -1;
                    self.pos += 1;
                }
                Some(_) if first => {}
                Some(c) => return self.err(format!("expected `+` or `-`, found `{c}`")),
            }
            first = false;
            self.skip_ws();
            let (e, c) = self.term()?;
            poly.add_term(self.ring, Exponent(e), &Scalar::from_integer(c * sign));
        }
        Ok(poly)
    }

    fn term(&mut self) -> std::result::Result<(Vec<u32>, BigInt), (usize, String)> {
        let mut exps = vec![0u32; self.vars.len()];
        let mut coef = BigInt::one();
        let mut any = false;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coef *= self.number().expect("digit present");
                }
                Some(c) if c.is_alphabetic() || c == '_' => {
                    let col = self.column();
                    let name = self.ident().expect("identifier present");
                    let Some(i) = self.vars.iter().position(|v| v == &name) else {
                        return Err((col, format!("undeclared variable `{name}`")));
                    };
                    self.skip_ws();
                    let mut e = 1u32;
                    if self.peek() == Some('^') {
                        self.pos += 1;
                        self.skip_ws();
                        let Some(k) = self.number() else {
                            return self.err("expected exponent after `^`");
                        };
                        e = u32::try_from(&k).map_err(|_| (self.column(), "exponent too large".to_string()))?;
                    }
                    exps[i] += e;
                }
                Some('(') | Some(')') => return self.err("parentheses are not supported"),
                _ if !any => return self.err("expected a term"),
                _ => return self.err("unexpected character"),
            }
            any = true;
            self.skip_ws();
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                }
                Some(c) if c.is_alphanumeric() || c == '_' => {}
                _ => break,
            }
        }
        Ok((exps, coef))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{}", i + 1)).collect();
        write!(f, "{}", self.format(&names))
    }
}

/// Leading term `u·x_i^m` of a quasi-monic relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeadingPower {
    pub variable: usize,
    pub exponent: u32,
    pub unit: Scalar,
}

/// `k[x₁…x_n]/(f₁…f_r)` with the relations assumed to form a regular
/// sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub ring: GroundRing,
    pub variables: Vec<String>,
    pub relations: Vec<Polynomial>,
    /// Per-relation leading powers, when the presentation is quasi-monic.
    pub quasi_monic: Option<Vec<LeadingPower>>,
}

impl Presentation {
    pub fn new(ring: GroundRing, variables: Vec<String>, relations: Vec<Polynomial>) -> Result<Self> {
        for (i, v) in variables.iter().enumerate() {
            if variables[..i].contains(v) {
                return Err(Error::InvalidGenerator {
                    name: v.clone(),
                    reason: "duplicate variable".into(),
                });
            }
        }
        let relations: Vec<Polynomial> = relations
            .into_iter()
            .map(|f| {
                assert_eq!(f.nvars(), variables.len(), "relation in the wrong number of variables");
                f.normalized(&ring)
            })
            .collect();
        let quasi_monic = detect_quasi_monic(&ring, &relations);
        Ok(Presentation {
            ring,
            variables,
            relations,
            quasi_monic,
        })
    }

    /// Parses relations written in the variables.
    pub fn parse(ring: GroundRing, variables: &[&str], relations: &[&str]) -> Result<Self> {
        let vars: Vec<String> = variables.iter().map(|s| s.to_string()).collect();
        let rels = relations
            .iter()
            .enumerate()
            .map(|(line, r)| {
                Polynomial::parse(r, &vars, &ring).map_err(|(column, message)| Error::Parse {
                    line: line + 1,
                    column,
                    message,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, vars, rels)
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(Polynomial::is_homogeneous)
    }

    pub fn leading_powers(&self) -> Result<&[LeadingPower]> {
        self.quasi_monic
            .as_deref()
            .ok_or_else(|| Error::NotQuasiMonic("relations lack unit leading powers of distinct variables".into()))
    }

    /// Quasi-monic with every variable bounded, so `A` is finite free.
    pub fn finite_leading_powers(&self) -> Result<&[LeadingPower]> {
        let lead = self.leading_powers()?;
        if lead.len() != self.nvars() {
            return Err(Error::NotQuasiMonic(format!(
                "{} relations for {} variables: the quotient is not finite",
                lead.len(),
                self.nvars()
            )));
        }
        Ok(lead)
    }

    /// Normal form modulo the relations.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        let lead = self.leading_powers()?;
        Ok(reduce_with(&self.ring, &self.relations, lead, f))
    }

    /// Monomial basis `{x^α : α_i < m_i}` of a finite quasi-monic quotient,
    /// in graded-lex order.
    pub fn standard_monomials(&self) -> Result<Vec<Vec<u32>>> {
        let lead = self.finite_leading_powers()?;
        let mut bounds = vec![0u32; self.nvars()];
        for l in lead {
            bounds[l.variable] = l.exponent;
        }
        let mut out: Vec<Exponent> = vec![Exponent(Vec::new())];
        for &b in &bounds {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..b).map(move |k| {
                        let mut v = e.0.clone();
                        v.push(k);
                        Exponent(v)
                    })
                })
                .collect();
        }
        out.sort();
        Ok(out.into_iter().map(|e| e.0).collect())
    }
}

fn detect_quasi_monic(ring: &GroundRing, relations: &[Polynomial]) -> Option<Vec<LeadingPower>> {
    let mut used = Vec::new();
    let mut out = Vec::new();
    for f in relations {
        let (e, c) = f.leading()?;
        let nonzero: Vec<usize> = (0..e.0.len()).filter(|&i| e.0[i] > 0).collect();
        if nonzero.len() != 1 || !ring.is_unit(c) {
            return None;
        }
        let i = nonzero[0];
        if used.contains(&i) {
            return None;
        }
        used.push(i);
        out.push(LeadingPower {
            variable: i,
            exponent: e.0[i],
            unit: c.clone(),
        });
    }
    Some(out)
}

/// Rewrites `x_i^{m_i} ↦ x_i^{m_i} − u⁻¹ f_i` until no term is divisible by
/// a leading power. Terminates because every rewrite replaces a term by
/// graded-lex smaller ones.
pub(crate) fn reduce_with(
    ring: &GroundRing,
    relations: &[Polynomial],
    lead: &[LeadingPower],
    f: &Polynomial,
) -> Polynomial {
    let mut rest = f.normalized(ring);
    let mut out = Polynomial::zero(f.nvars());
    while let Some((e, c)) = rest.leading().map(|(e, c)| (e.clone(), c.clone())) {
        let hit = lead.iter().zip(relations).find(|(l, _)| e.0[l.variable] >= l.exponent);
        match hit {
            Some((l, rel)) => {
                let mut shift = e.0.clone();
                shift[l.variable] -= l.exponent;
                let inv = ring.inverse(&l.unit).expect("leading coefficient is a unit");
                let correction = rel.shift(&shift).scale(&(-(c * inv)), ring);
                rest = rest.add(&correction, ring);
            }
            None => {
                rest.terms.remove(&e);
                out.add_term(ring, e, &c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> GroundRing {
        GroundRing::Integers
    }

    #[test]
    fn parse_and_print() {
        let vars = vec!["x".to_string(), "y".to_string()];
        let p = Polynomial::parse("x^2 - 2*x y + 3", &vars, &z()).unwrap();
        assert_eq!(p.format(&vars), "x^2 - 2*x*y + 3");
        let q = Polynomial::parse("-y^3 + 2x", &vars, &z()).unwrap();
        assert_eq!(q.format(&vars), "-y^3 + 2*x");
        let err = Polynomial::parse("x^2 + w", &vars, &z()).unwrap_err();
        assert_eq!(err.0, 7);
        assert!(Polynomial::parse("", &vars, &z()).is_err());
        assert!(Polynomial::parse("x^", &vars, &z()).is_err());
    }

    #[test]
    fn quasi_monic_reduction() {
        let p = Presentation::parse(z(), &["x"], &["x^2"]).unwrap();
        let x3 = Polynomial::term(1, vec![3], Scalar::one());
        assert!(p.reduce(&x3).unwrap().is_zero());
        assert_eq!(p.standard_monomials().unwrap(), vec![vec![0], vec![1]]);

        let p = Presentation::parse(z(), &["x"], &["x^2 - 2"]).unwrap();
        let x2 = Polynomial::term(1, vec![2], Scalar::one());
        assert_eq!(
            p.reduce(&x2).unwrap(),
            Polynomial::constant(1, Scalar::from_integer(2.into()))
        );

        let p = Presentation::parse(z(), &[], &["5"]).unwrap();
        assert!(matches!(p.reduce(&Polynomial::zero(0)), Err(Error::NotQuasiMonic(_))));

        let p = Presentation::parse(z(), &["x"], &["2x^2"]).unwrap();
        assert!(p.quasi_monic.is_none());
        let p = Presentation::parse(GroundRing::Rationals, &["x"], &["2x^2"]).unwrap();
        assert!(p.quasi_monic.is_some());
    }

    #[test]
    fn normal_form_set_has_product_size() {
        let p = Presentation::parse(z(), &["x", "y"], &["x^2 - y", "y^3"]).unwrap();
        assert_eq!(p.standard_monomials().unwrap().len(), 6);
        // y ≡ x², so x^6 ≡ y³ ≡ 0 after the second rewrite.
        let x6 = Polynomial::term(2, vec![6, 0], Scalar::one());
        assert!(p.reduce(&x6).unwrap().is_zero());
    }
}
