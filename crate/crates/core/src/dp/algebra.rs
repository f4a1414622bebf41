use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{binomial, GroundRing, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GeneratorKind {
    /// Even degree, unrestricted powers.
    Polynomial,
    /// Odd degree, square zero.
    Exterior,
    /// Even degree, powers only through `γ_q`.
    DividedPower,
}

impl GeneratorKind {
    /// The kind a free graded-commutative algebra uses in degree `hdeg`.
    pub fn free(hdeg: u32) -> Self {
        if hdeg.is_multiple_of(2) {
            GeneratorKind::Polynomial
        } else {
            GeneratorKind::Exterior
        }
    }

    /// The kind of `dv` when `v` has degree `hdeg`.
    pub fn differential_of(hdeg: u32) -> Self {
        if hdeg.is_multiple_of(2) {
            GeneratorKind::Exterior
        } else {
            GeneratorKind::DividedPower
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub name: String,
    pub hdeg: u32,
    pub kind: GeneratorKind,
    /// Contribution to the Γ-weight (1 for the `dV` generators).
    pub weight: u32,
    /// Contribution to the auxiliary filtration used to truncate infinite
    /// slices; zero unless set.
    pub filtration: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, hdeg: u32, kind: GeneratorKind) -> Result<Self> {
        let name = name.into();
        let ok = match kind {
            GeneratorKind::Exterior => hdeg % 2 == 1,
            GeneratorKind::Polynomial | GeneratorKind::DividedPower => hdeg.is_multiple_of(2),
        };
        if !ok {
            return Err(Error::InvalidGenerator {
                reason: format!("{kind:?} generator cannot have degree {hdeg}"),
                name,
            });
        }
        if name.is_empty() {
            return Err(Error::InvalidGenerator {
                name,
                reason: "empty name".into(),
            });
        }
        Ok(Generator {
            name,
            hdeg,
            kind,
            weight: 0,
            filtration: 0,
        })
    }

    pub fn with_weight(mut self, weight: u32) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_filtration(mut self, filtration: u32) -> Self {
        self.filtration = filtration;
        self
    }
}

/// Basis word: exponents in generator-table order. Exterior exponents are
/// 0 or 1; a divided-power exponent `q` stands for `γ_q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn generator(n: usize, i: usize) -> Self {
        let mut m = Self::one(n);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite linear combination of monomials with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Element {
    terms: BTreeMap<Monomial, Scalar>,
}

impl Element {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut e = Self::zero();
        if !c.is_zero() {
            e.terms.insert(m, c);
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, ring: &GroundRing, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let sum = ring.normalize(self.coefficient(&m) + c);
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }
}

/// Free strictly graded-commutative algebra with divided powers on its
/// `DividedPower` generators.
#[derive(Clone, Debug)]
pub struct Algebra {
    ring: GroundRing,
    generators: Vec<Generator>,
    index: HashMap<String, usize>,
}

/// Bounds for enumerating a slice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Window {
    /// Bound on the total exponent of degree-0 generators.
    pub poly_bound: Option<u32>,
    /// Bound on the auxiliary filtration.
    pub filtration: Option<FiltrationBound>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiltrationBound {
    AtMost(u32),
    Exactly(u32),
}

impl Algebra {
    pub fn new(ring: GroundRing, generators: Vec<Generator>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if index.insert(g.name.clone(), i).is_some() {
                return Err(Error::InvalidGenerator {
                    name: g.name.clone(),
                    reason: "duplicate name".into(),
                });
            }
        }
        Ok(Algebra {
            ring,
            generators,
            index,
        })
    }

    pub fn ring(&self) -> &GroundRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn one(&self) -> Element {
        Element::monomial(Monomial::one(self.len()), Scalar::one())
    }

    pub fn unit_monomial(&self) -> Monomial {
        Monomial::one(self.len())
    }

    /// The generator `name` as an element.
    pub fn gen(&self, name: &str) -> Result<Element> {
        let i = self
            .index_of(name)
            .ok_or_else(|| Error::UndefinedGenerator { name: name.to_string() })?;
        Ok(self.gen_at(i))
    }

    pub fn gen_at(&self, i: usize) -> Element {
        Element::monomial(Monomial::generator(self.len(), i), Scalar::one())
    }

    /// `γ_q` (or the `q`-th power) of generator `i` as a basis monomial.
    pub fn power_monomial(&self, i: usize, q: u32) -> Monomial {
        let mut m = self.unit_monomial();
        m.0[i] = q;
        m
    }

    pub fn scalar(&self, c: Scalar) -> Element {
        Element::monomial(self.unit_monomial(), self.ring.normalize(c))
    }

    pub fn hdeg(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e * g.hdeg).sum()
    }

    pub fn weight(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e * g.weight).sum()
    }

    pub fn filtration(&self, m: &Monomial) -> u32 {
        m.0.iter().zip(&self.generators).map(|(&e, g)| e * g.filtration).sum()
    }

    /// Total exponent of the degree-0 generators.
    pub fn poly_degree(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .filter(|(_, g)| g.hdeg == 0)
            .map(|(&e, _)| e)
            .sum()
    }

    /// Parity of the degree of a monomial.
    pub fn is_odd(&self, m: &Monomial) -> bool {
        self.hdeg(m) % 2 == 1
    }

    /// Product of two basis monomials: `(coefficient, monomial)`, or `None`
    /// when the product vanishes identically.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(BigInt, Monomial)> {
        let mut coef = BigInt::one();
        let mut out = Vec::with_capacity(self.len());
        for (i, g) in self.generators.iter().enumerate() {
            let (x, y) = (a.0[i], b.0[i]);
            match g.kind {
                GeneratorKind::Exterior if x + y > 1 => return None,
                GeneratorKind::DividedPower if x > 0 && y > 0 => {
                    coef *= binomial(u64::from(x + y), u64::from(x));
                }
                _ => {}
            }
            out.push(x + y);
        }
        // Each odd factor of `b` moves left past the odd factors of `a`
        // that sit later in table order.
        let mut swaps = 0usize;
        let mut odd_in_a_after = 0usize;
        for (i, g) in self.generators.iter().enumerate().rev() {
            if g.kind != GeneratorKind::Exterior {
                continue;
            }
            if b.0[i] == 1 {
                swaps += odd_in_a_after;
            }
            if a.0[i] == 1 {
                odd_in_a_after += 1;
            }
        }
        if swaps % 2 == 1 {
            coef = -coef;
        }
        Some((coef, Monomial(out)))
    }

    pub fn add(&self, a: &Element, b: &Element) -> Element {
        let mut out = a.clone();
        for (m, c) in b.terms() {
            out.add_term(&self.ring, m.clone(), c);
        }
        out
    }

    pub fn sub(&self, a: &Element, b: &Element) -> Element {
        self.add(a, &self.scale(b, &-Scalar::one()))
    }

    pub fn scale(&self, a: &Element, c: &Scalar) -> Element {
        let mut out = Element::zero();
        for (m, v) in a.terms() {
            out.add_term(&self.ring, m.clone(), &(v * c));
        }
        out
    }

    pub fn mul(&self, a: &Element, b: &Element) -> Element {
        let mut out = Element::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                if let Some((k, m)) = self.mul_monomials(ma, mb) {
                    out.add_term(&self.ring, m, &(ca * cb * Scalar::from_integer(k)));
                }
            }
        }
        out
    }

    pub fn mul_all<'a>(&self, factors: impl IntoIterator<Item = &'a Element>) -> Element {
        factors.into_iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    /// Normalizes coefficients after a change of ring.
    pub fn normalize(&self, e: &Element) -> Element {
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            out.add_term(&self.ring, m.clone(), c);
        }
        out
    }

    /// All monomials of degree `hdeg` and Γ-weight `weight` inside the
    /// window, sorted.
    pub fn basis_window(&self, hdeg: u32, weight: u32, window: Window) -> Result<Vec<Monomial>> {
        let filtration_cap = match window.filtration {
            Some(FiltrationBound::AtMost(n)) | Some(FiltrationBound::Exactly(n)) => Some(n),
            None => None,
        };
        for g in &self.generators {
            if g.hdeg == 0 && g.weight == 0 {
                let bounded = window.poly_bound.is_some() || (filtration_cap.is_some() && g.filtration > 0);
                if !bounded {
                    return Err(Error::Unsupported(format!(
                        "slice is infinite: degree-0 generator `{}` needs a bound",
                        g.name
                    )));
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.len()];
        self.enumerate(0, hdeg, weight, window.poly_bound, filtration_cap, &mut cur, &mut out);
        if let Some(FiltrationBound::Exactly(n)) = window.filtration {
            out.retain(|m| self.filtration(m) == n);
        }
        out.sort();
        Ok(out)
    }

    /// Basis of a slice with a bound on the total exponent of degree-0
    /// generators.
    pub fn basis_slice(&self, hdeg: u32, weight: u32, poly_bound: u32) -> Vec<Monomial> {
        self.basis_window(
            hdeg,
            weight,
            Window {
                poly_bound: Some(poly_bound),
                filtration: None,
            },
        )
        .expect("poly bound makes every slice finite")
    }

    #[allow(clippy::too_many_arguments)]
    fn enumerate(
        &self,
        i: usize,
        hdeg: u32,
        weight: u32,
        poly: Option<u32>,
        filt: Option<u32>,
        cur: &mut Vec<u32>,
        out: &mut Vec<Monomial>,
    ) {
        if i == self.len() {
            if hdeg == 0 && weight == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let g = &self.generators[i];
        let mut cap = match g.kind {
            GeneratorKind::Exterior => 1,
            _ => u32::MAX,
        };
        if let Some(c) = hdeg.checked_div(g.hdeg) {
            cap = cap.min(c);
        }
        if let Some(c) = weight.checked_div(g.weight) {
            cap = cap.min(c);
        }
        if g.hdeg == 0 {
            if let Some(p) = poly {
                cap = cap.min(p);
            }
        }
        if let Some(c) = filt.and_then(|f| f.checked_div(g.filtration)) {
            cap = cap.min(c);
        }
        if cap == u32::MAX {
            // Degree-0, weight-0 and unbounded: only reachable when the
            // caller has checked boundedness, so an empty factor suffices.
            cap = 0;
        }
        for e in 0..=cap {
            cur[i] = e;
            let poly_left = if g.hdeg == 0 { poly.map(|p| p - e) } else { poly };
            let filt_left = filt.map(|f| f - e * g.filtration);
            self.enumerate(
                i + 1,
                hdeg - e * g.hdeg,
                weight - e * g.weight,
                poly_left,
                filt_left,
                cur,
                out,
            );
        }
        cur[i] = 0;
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (g, &e) in self.generators.iter().zip(&m.0) {
            if e == 0 {
                continue;
            }
            parts.push(match (g.kind, e) {
                (_, 1) => g.name.clone(),
                (GeneratorKind::DividedPower, q) => format!("γ{q}({})", g.name),
                (_, q) => format!("{}^{q}", g.name),
            });
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("·")
        }
    }

    pub fn format(&self, e: &Element) -> String {
        if e.is_zero() {
            return "0".to_string();
        }
        e.terms()
            .map(|(m, c)| {
                if m.is_one() {
                    c.to_string()
                } else if c.is_one() {
                    self.format_monomial(m)
                } else {
                    format!("{c}·{}", self.format_monomial(m))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:?}, degree {})", self.name, self.kind, self.hdeg)
    }
}
