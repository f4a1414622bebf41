use crate::dp::{derive, Algebra, Element, GammaDerivation, Generator, GeneratorKind, Monomial};
use crate::error::{Error, Result};
use crate::linalg::GroundRing;

use super::polynomial::{Polynomial, Presentation};

/// Free chain algebra `(ΛV, ∂)`.
#[derive(Clone, Debug)]
pub struct FreeDGA {
    algebra: Algebra,
    boundary: GammaDerivation,
}

impl FreeDGA {
    /// The algebra with zero differential.
    pub fn new(algebra: Algebra) -> Self {
        let boundary = GammaDerivation::zero(&algebra, -1);
        FreeDGA { algebra, boundary }
    }

    /// Convenience constructor from `(name, degree)` pairs; kinds follow
    /// degree parity.
    pub fn free(ring: GroundRing, generators: &[(&str, u32)]) -> Result<Self> {
        let gens = generators
            .iter()
            .map(|&(n, d)| Generator::new(n, d, GeneratorKind::free(d)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(Algebra::new(ring, gens)?))
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ring(&self) -> &GroundRing {
        self.algebra.ring()
    }

    pub fn generators(&self) -> &[Generator] {
        self.algebra.generators()
    }

    pub fn boundary(&self) -> &GammaDerivation {
        &self.boundary
    }

    pub fn boundary_of(&self, generator: usize) -> &Element {
        self.boundary.value(generator).expect("boundary is total")
    }

    /// Sets `∂(name)`; the value must be homogeneous of one degree lower.
    pub fn set_boundary(&mut self, name: &str, value: Element) -> Result<()> {
        let i = self
            .algebra
            .index_of(name)
            .ok_or_else(|| Error::UndefinedGenerator { name: name.to_string() })?;
        let g = &self.algebra.generators()[i];
        for (m, _) in value.terms() {
            if g.hdeg == 0 || self.algebra.hdeg(m) + 1 != g.hdeg || self.algebra.weight(m) != 0 {
                return Err(Error::InvalidGenerator {
                    name: name.to_string(),
                    reason: format!("boundary term {} has the wrong degree", self.algebra.format_monomial(m)),
                });
            }
        }
        let value = self.algebra.normalize(&value);
        self.boundary.set(i, value);
        Ok(())
    }

    /// Appends a generator with the given boundary, keeping existing
    /// monomials valid by extending exponent vectors with zeros.
    pub fn adjoin(&self, generator: Generator, boundary: Element) -> Result<FreeDGA> {
        let mut gens = self.generators().to_vec();
        let name = generator.name.clone();
        gens.push(generator);
        let algebra = Algebra::new(self.ring().clone(), gens)?;
        let mut out = FreeDGA::new(algebra);
        for i in 0..self.generators().len() {
            out.boundary.set(i, widen(self.boundary_of(i), out.algebra.len()));
        }
        let b = widen(&boundary, out.algebra.len());
        out.set_boundary(&name, b)?;
        Ok(out)
    }

    pub fn max_degree(&self) -> u32 {
        self.generators().iter().map(|g| g.hdeg).max().unwrap_or(0)
    }

    pub fn degree_zero_generators(&self) -> impl Iterator<Item = (usize, &Generator)> {
        self.generators().iter().enumerate().filter(|(_, g)| g.hdeg == 0)
    }

    /// Applies `∂`.
    pub fn apply(&self, e: &Element) -> Result<Element> {
        derive(&self.algebra, &self.boundary, e)
    }
}

/// Pads every exponent vector of `e` to length `n`.
pub(crate) fn widen(e: &Element, n: usize) -> Element {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        let mut v = m.0.clone();
        v.resize(n, 0);
        // Distinct monomials stay distinct, so no ring reduction happens.
        out.add_term(&GroundRing::Rationals, Monomial(v), c);
    }
    out
}

/// `∂(∂g) = 0` for every generator.
pub fn check_boundary_square(model: &FreeDGA) -> bool {
    (0..model.generators().len()).all(|i| model.apply(model.boundary_of(i)).map(|e| e.is_zero()).unwrap_or(false))
}

/// Element of the model's algebra given by a polynomial in the first
/// `nvars` generators.
pub fn polynomial_element(algebra: &Algebra, variables: &[usize], f: &Polynomial) -> Element {
    let mut out = Element::zero();
    for (e, c) in f.terms() {
        let mut m = algebra.unit_monomial();
        for (k, &v) in variables.iter().enumerate() {
            m.0[v] = e.0[k];
        }
        out.add_term(algebra.ring(), m, c);
    }
    out
}

/// Koszul model `Λ(x₁…x_n, y₁…y_r)`, `∂y_j = f_j`.
///
/// Generators carry the filtration weight `1` on each `x_i` and
/// `deg f_j` on `y_j`, so `∂` never raises it.
pub fn koszul_model(p: &Presentation) -> FreeDGA {
    let mut gens = Vec::new();
    for v in &p.variables {
        gens.push(
            Generator::new(v.clone(), 0, GeneratorKind::Polynomial)
                .expect("even degree")
                .with_filtration(1),
        );
    }
    let mut names: Vec<String> = p.variables.clone();
    for (j, f) in p.relations.iter().enumerate() {
        let mut name = format!("y{}", j + 1);
        while names.contains(&name) {
            name.push('\'');
        }
        names.push(name.clone());
        gens.push(
            Generator::new(name, 1, GeneratorKind::Exterior)
                .expect("odd degree")
                .with_filtration(f.total_degree()),
        );
    }
    let algebra = Algebra::new(p.ring.clone(), gens).expect("names are distinct");
    let vars: Vec<usize> = (0..p.nvars()).collect();
    let mut model = FreeDGA::new(algebra);
    for (j, f) in p.relations.iter().enumerate() {
        let value = polynomial_element(model.algebra(), &vars, f);
        let name = names[p.nvars() + j].clone();
        model.set_boundary(&name, value).expect("relations live in degree 0");
    }
    model
}
