use std::collections::HashMap;

use num_traits::One;

use super::algebra::{Algebra, Element, GeneratorKind, Monomial};
use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseMatrix};
use crate::par;

/// A γ-derivation: determined by its values on generators, extended by the
/// graded Leibniz rule and `γ_n(x) ↦ γ_{n-1}(x)·D(x)`.
#[derive(Clone, Debug)]
pub struct GammaDerivation {
    /// Degree shift; odd derivations pick up Koszul signs.
    pub degree: i32,
    values: Vec<Option<Element>>,
}

impl GammaDerivation {
    /// Derivation with no values assigned yet.
    pub fn undefined(algebra: &Algebra, degree: i32) -> Self {
        GammaDerivation {
            degree,
            values: vec![None; algebra.len()],
        }
    }

    pub fn zero(algebra: &Algebra, degree: i32) -> Self {
        GammaDerivation {
            degree,
            values: vec![Some(Element::zero()); algebra.len()],
        }
    }

    pub fn set(&mut self, generator: usize, value: Element) {
        self.values[generator] = Some(value);
    }

    pub fn value(&self, generator: usize) -> Option<&Element> {
        self.values[generator].as_ref()
    }

    fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }
}

/// Image of a single basis monomial.
pub fn derive_monomial(algebra: &Algebra, deriv: &GammaDerivation, m: &Monomial) -> Result<Element> {
    let n = algebra.len();
    let mut out = Element::zero();
    let mut prefix_odd = false;
    for (k, g) in algebra.generators().iter().enumerate() {
        let e = m.0[k];
        if e == 0 {
            continue;
        }
        let value = deriv
            .value(k)
            .ok_or_else(|| Error::UndefinedGenerator { name: g.name.clone() })?;
        if !value.is_zero() {
            let mut prefix = Monomial::one(n);
            prefix.0[..k].copy_from_slice(&m.0[..k]);
            let mut suffix = Monomial::one(n);
            suffix.0[k + 1..].copy_from_slice(&m.0[k + 1..]);
            let coef = match g.kind {
                GeneratorKind::Polynomial => Scalar::from_integer(e.into()),
                GeneratorKind::Exterior | GeneratorKind::DividedPower => Scalar::one(),
            };
            let sign = if deriv.is_odd() && prefix_odd {
                -Scalar::one()
            } else {
                Scalar::one()
            };
            let lowered = algebra.power_monomial(k, e - 1);
            let middle = algebra.mul(&Element::monomial(lowered, coef * sign), value);
            let term = algebra.mul(
                &algebra.mul(&Element::monomial(prefix, Scalar::one()), &middle),
                &Element::monomial(suffix, Scalar::one()),
            );
            out = algebra.add(&out, &term);
        }
        if g.kind == GeneratorKind::Exterior {
            prefix_odd ^= true;
        }
    }
    Ok(out)
}

pub fn derive(algebra: &Algebra, deriv: &GammaDerivation, e: &Element) -> Result<Element> {
    let mut out = Element::zero();
    for (m, c) in e.terms() {
        let image = derive_monomial(algebra, deriv, m)?;
        out = algebra.add(&out, &algebra.scale(&image, c));
    }
    Ok(out)
}

/// Matrix of `deriv` from `source` to `target`: column `j` holds the
/// coordinates of the image of `source[j]`.
pub fn derivation_matrix(
    algebra: &Algebra,
    deriv: &GammaDerivation,
    source: &[Monomial],
    target: &[Monomial],
) -> Result<SparseMatrix> {
    let index: HashMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let columns = par::try_map(source, |m| {
        let image = derive_monomial(algebra, deriv, m)?;
        let mut col = Vec::with_capacity(image.len());
        for (t, c) in image.terms() {
            match index.get(t) {
                Some(&i) => col.push((i, c.clone())),
                None => {
                    return Err(Error::TruncationOverflow {
                        source_term: algebra.format_monomial(m),
                        detail: format!("image term {} is outside the target slice", algebra.format_monomial(t)),
                    })
                }
            }
        }
        Ok(col)
    })?;
    let mut mat = SparseMatrix::zeros(target.len(), source.len());
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            mat.set(i, j, c);
        }
    }
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::algebra::Generator;
    use crate::linalg::GroundRing;

    fn int(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    /// `x, y, dx, dy` with `∂y = x²` and the derivations `δ`, `d`.
    fn forms() -> (Algebra, GammaDerivation, GammaDerivation) {
        let a = Algebra::new(
            GroundRing::Integers,
            vec![
                Generator::new("x", 0, GeneratorKind::Polynomial).unwrap(),
                Generator::new("y", 1, GeneratorKind::Exterior).unwrap(),
                Generator::new("dx", 1, GeneratorKind::Exterior).unwrap().with_weight(1),
                Generator::new("dy", 2, GeneratorKind::DividedPower)
                    .unwrap()
                    .with_weight(1),
            ],
        )
        .unwrap();
        let mut delta = GammaDerivation::zero(&a, -1);
        let x2 = Element::monomial(a.power_monomial(0, 2), int(1));
        delta.set(1, x2);
        let xdx = a.mul(&a.gen_at(0), &a.gen_at(2));
        delta.set(3, a.scale(&xdx, &int(-2)));
        let mut d = GammaDerivation::zero(&a, 1);
        d.set(0, a.gen_at(2));
        d.set(1, a.gen_at(3));
        (a, delta, d)
    }

    #[test]
    fn gamma_rule() {
        let (a, _, d) = forms();
        let g3 = Element::monomial(a.power_monomial(3, 3), int(1));
        assert!(derive(&a, &d, &g3).unwrap().is_zero());
        let (a, delta, _) = forms();
        let image = derive(&a, &delta, &g3).unwrap();
        let expected = a.mul(
            &Element::monomial(a.power_monomial(3, 2), int(1)),
            delta.value(3).unwrap(),
        );
        assert_eq!(image, expected);
    }

    #[test]
    fn squares_and_anticommutation() {
        let (a, delta, d) = forms();
        for m in a.basis_slice(3, 1, 3).iter().chain(a.basis_slice(4, 2, 3).iter()) {
            let e = Element::monomial(m.clone(), int(1));
            let dd = derive(&a, &d, &derive(&a, &d, &e).unwrap()).unwrap();
            let ee = derive(&a, &delta, &derive(&a, &delta, &e).unwrap()).unwrap();
            let mix = a.add(
                &derive(&a, &delta, &derive(&a, &d, &e).unwrap()).unwrap(),
                &derive(&a, &d, &derive(&a, &delta, &e).unwrap()).unwrap(),
            );
            assert!(
                dd.is_zero() && ee.is_zero() && mix.is_zero(),
                "{}",
                a.format_monomial(m)
            );
        }
    }

    #[test]
    fn matrices() {
        let (a, delta, d) = forms();
        let dy = vec![a.power_monomial(3, 1)];
        let xdx = vec![Monomial(vec![1, 0, 1, 0])];
        let m = derivation_matrix(&a, &delta, &dy, &xdx).unwrap();
        assert_eq!(m.get(0, 0), int(-2));
        let y = vec![a.power_monomial(1, 1)];
        assert_eq!(derivation_matrix(&a, &d, &y, &dy).unwrap().get(0, 0), int(1));
        assert!(matches!(
            derivation_matrix(&a, &delta, &dy, &[]),
            Err(Error::TruncationOverflow { .. })
        ));
        let undefined = GammaDerivation::undefined(&a, 1);
        assert!(matches!(
            derive(&a, &undefined, &a.gen_at(0)),
            Err(Error::UndefinedGenerator { .. })
        ));
    }
}
