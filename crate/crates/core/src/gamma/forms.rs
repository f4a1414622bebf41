use num_traits::One;

use crate::dp::{
    derivation_matrix, derive, Algebra, Element, FiltrationBound, GammaDerivation, Generator, GeneratorKind, Monomial,
    Window,
};
use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::mixed::{DoubleMixedComplex, MapKind};
use crate::model::{check_boundary_square, koszul_model, FreeDGA, Presentation};
use crate::par;

/// How the degree-0 part of an infinite complex is cut down to finite
/// slices, using the filtration weight carried by the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Truncation {
    /// No degree-0 generators: every slice is already finite.
    None,
    /// The differentials preserve the filtration weight; keep the pieces of
    /// exact weight `0..=N`, each a direct summand.
    Split(u32),
    /// The differentials do not raise the weight; keep the subcomplex of
    /// weight `≤ N`.
    Cumulative(u32),
}

impl Truncation {
    fn windows(self) -> Vec<Window> {
        match self {
            Truncation::None => vec![Window::default()],
            Truncation::Split(n) => (0..=n)
                .map(|w| Window {
                    poly_bound: None,
                    filtration: Some(FiltrationBound::Exactly(w)),
                })
                .collect(),
            Truncation::Cumulative(n) => vec![Window {
                poly_bound: None,
                filtration: Some(FiltrationBound::AtMost(n)),
            }],
        }
    }
}

/// The mixed complex of Γ-forms `ΛV ⊗ Γ(dV)` with `D = 0`, `∂ = δ`,
/// `B = d`. Slice `(a, b)` holds the words of degree `a + b` and Γ-weight
/// `b`.
#[derive(Clone, Debug)]
pub struct GammaFormsComplex {
    model: FreeDGA,
    algebra: Algebra,
    delta: GammaDerivation,
    d: GammaDerivation,
    truncation: Truncation,
    pieces: Vec<DoubleMixedComplex>,
    bases: Vec<Vec<Vec<Vec<Monomial>>>>,
}

/// `ΛV ⊗ Γ(dV)` with the derivations `δ` and `d`, before any slicing.
pub fn forms_algebra(model: &FreeDGA) -> Result<(Algebra, GammaDerivation, GammaDerivation)> {
    let gens = model.generators();
    let n = gens.len();
    let mut table: Vec<Generator> = gens.iter().map(|g| g.clone().with_weight(0)).collect();
    let mut taken: Vec<String> = gens.iter().map(|g| g.name.clone()).collect();
    for g in gens {
        let mut name = format!("d{}", g.name);
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.push(name.clone());
        table.push(
            Generator::new(name, g.hdeg + 1, GeneratorKind::differential_of(g.hdeg))?
                .with_weight(1)
                .with_filtration(g.filtration),
        );
    }
    let algebra = Algebra::new(model.ring().clone(), table)?;
    let mut d = GammaDerivation::zero(&algebra, 1);
    for i in 0..n {
        d.set(i, algebra.gen_at(n + i));
    }
    let mut delta = GammaDerivation::zero(&algebra, -1);
    for i in 0..n {
        let b = crate::model::widen(model.boundary_of(i), 2 * n);
        let db = derive(&algebra, &d, &b)?;
        delta.set(i, b);
        delta.set(n + i, algebra.scale(&db, &-Scalar::one()));
    }
    Ok((algebra, delta, d))
}

impl GammaFormsComplex {
    /// Slices `(a, b)` with `a + b ≤ n_max + 1`.
    pub fn build(model: &FreeDGA, n_max: usize, truncation: Truncation) -> Result<Self> {
        if !check_boundary_square(model) {
            return Err(Error::CompositionNonzero {
                context: "model boundary does not square to zero".into(),
            });
        }
        if truncation == Truncation::None {
            if let Some((_, g)) = model.degree_zero_generators().next() {
                return Err(Error::Unsupported(format!(
                    "degree-0 generator `{}` needs a weight truncation",
                    g.name
                )));
            }
        }
        let (algebra, delta, d) = forms_algebra(model)?;
        let top = n_max + 1;
        let windows = truncation.windows();
        let built = par::try_map(&windows, |&w| build_piece(&algebra, &delta, &d, top, w))?;
        let (pieces, bases) = built.into_iter().unzip();
        Ok(GammaFormsComplex {
            model: model.clone(),
            algebra,
            delta,
            d,
            truncation,
            pieces,
            bases,
        })
    }

    /// Koszul model of a presentation with a truncation that is exact in
    /// degrees `≤ n_max`: pieces split by weight for homogeneous relations,
    /// otherwise a cumulative cut one degree further.
    pub fn for_presentation(p: &Presentation, n_max: usize) -> Result<Self> {
        let model = koszul_model(p);
        let truncation = auto_truncation(p, n_max)?;
        Self::build(&model, n_max, truncation)
    }

    pub fn model(&self) -> &FreeDGA {
        &self.model
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn delta(&self) -> &GammaDerivation {
        &self.delta
    }

    pub fn d(&self) -> &GammaDerivation {
        &self.d
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn pieces(&self) -> &[DoubleMixedComplex] {
        &self.pieces
    }

    pub fn top(&self) -> usize {
        self.pieces.first().map_or(0, DoubleMixedComplex::top)
    }

    /// Basis of slice `(a, b)` in piece `piece`.
    pub fn basis(&self, piece: usize, a: usize, b: usize) -> &[Monomial] {
        self.bases[piece]
            .get(a)
            .and_then(|col| col.get(b))
            .map_or(&[], Vec::as_slice)
    }

    pub fn apply_delta(&self, e: &Element) -> Result<Element> {
        derive(&self.algebra, &self.delta, e)
    }

    pub fn apply_d(&self, e: &Element) -> Result<Element> {
        derive(&self.algebra, &self.d, e)
    }

    /// Element of the forms algebra given by a generator name and power.
    pub fn word(&self, factors: &[(&str, u32)]) -> Result<Element> {
        let mut m = self.algebra.unit_monomial();
        for &(name, e) in factors {
            let i = self
                .algebra
                .index_of(name)
                .ok_or_else(|| Error::UndefinedGenerator { name: name.into() })?;
            m.0[i] += e;
        }
        Ok(Element::monomial(m, Scalar::one()))
    }
}

fn build_piece(
    algebra: &Algebra,
    delta: &GammaDerivation,
    d: &GammaDerivation,
    top: usize,
    window: Window,
) -> Result<(DoubleMixedComplex, Vec<Vec<Vec<Monomial>>>)> {
    let mut bases: Vec<Vec<Vec<Monomial>>> = Vec::with_capacity(top + 1);
    for a in 0..=top {
        let mut col = Vec::with_capacity(top + 1 - a);
        for b in 0..=top - a {
            col.push(algebra.basis_window((a + b) as u32, b as u32, window)?);
        }
        bases.push(col);
    }
    let mut m = DoubleMixedComplex::new(algebra.ring().clone(), top);
    for (a, col) in bases.iter().enumerate() {
        for (b, basis) in col.iter().enumerate() {
            m.set_dim(a, b, basis.len());
        }
    }
    for a in 0..=top {
        for b in 0..=top - a {
            let src = &bases[a][b];
            if src.is_empty() {
                continue;
            }
            if a > 0 {
                m.set_map(
                    MapKind::Partial,
                    a,
                    b,
                    derivation_matrix(algebra, delta, src, &bases[a - 1][b])?,
                )?;
            }
            if a + b < top {
                m.set_map(MapKind::B, a, b, derivation_matrix(algebra, d, src, &bases[a][b + 1])?)?;
            }
        }
    }
    Ok((m, bases))
}

/// Largest filtration weight of `A ⊗ Λ(dx) ⊗ Γ(dy)` in degree `n` for a
/// finite quasi-monic presentation: standard monomials have weight at most
/// `Σ(m_i − 1)`, each `dx` adds 1 in degree 1 and each `dy_j` adds `m_j`
/// in degree 2.
pub fn weight_bound(p: &Presentation, n: usize) -> Result<u32> {
    let lead = p.finite_leading_powers()?;
    let std: u32 = lead.iter().map(|l| l.exponent - 1).sum();
    let m_max = lead.iter().map(|l| l.exponent).max().unwrap_or(0);
    let best = (0..=n.min(p.nvars()))
        .filter(|eta| (n - eta).is_multiple_of(2))
        .map(|eta| eta as u32 + m_max * ((n - eta) / 2) as u32)
        .max()
        .unwrap_or(0);
    Ok(std + best)
}

/// Truncation exact through degree `n_max` for the Koszul model of `p`.
pub fn auto_truncation(p: &Presentation, n_max: usize) -> Result<Truncation> {
    if p.nvars() == 0 {
        return Ok(Truncation::None);
    }
    if p.is_homogeneous() {
        Ok(Truncation::Split(weight_bound(p, n_max)?))
    } else {
        Ok(Truncation::Cumulative(weight_bound(p, n_max + 1)?))
    }
}
