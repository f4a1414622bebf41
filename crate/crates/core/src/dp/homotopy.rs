//! The resolution `K = ΛV ⊗ ΛW ⊗ Γ(dW)` with `D(dw) = w` and its
//! contracting homotopy on the augmentation ideal.

use num_traits::One;

use super::algebra::{Algebra, Element, Generator, GeneratorKind, Monomial};
use super::derivation::GammaDerivation;
use crate::error::{Error, Result};
use crate::linalg::{GroundRing, Scalar};

/// Generator table `[v…, w₁, dw₁, w₂, dw₂, …]`; the `w`s are well ordered
/// by their position.
#[derive(Clone, Debug)]
pub struct Resolution {
    algebra: Algebra,
    v_count: usize,
    w_count: usize,
}

impl Resolution {
    /// `v` and `w` list `(name, degree)`; kinds follow degree parity and
    /// `dw` is named `d<name>`.
    pub fn new(ring: GroundRing, v: &[(&str, u32)], w: &[(&str, u32)]) -> Result<Self> {
        let mut gens = Vec::new();
        for &(name, hdeg) in v {
            gens.push(Generator::new(name, hdeg, GeneratorKind::free(hdeg))?);
        }
        for &(name, hdeg) in w {
            gens.push(Generator::new(name, hdeg, GeneratorKind::free(hdeg))?);
            gens.push(
                Generator::new(format!("d{name}"), hdeg + 1, GeneratorKind::differential_of(hdeg))?.with_weight(1),
            );
        }
        Ok(Resolution {
            algebra: Algebra::new(ring, gens)?,
            v_count: v.len(),
            w_count: w.len(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    pub fn w_count(&self) -> usize {
        self.w_count
    }

    /// Table index of `w_i` (its `dw` follows it).
    pub fn w_index(&self, i: usize) -> usize {
        self.v_count + 2 * i
    }

    /// `D`: zero on `V` and `W`, `D(dw) = w`.
    pub fn differential(&self) -> GammaDerivation {
        let mut d = GammaDerivation::zero(&self.algebra, -1);
        for i in 0..self.w_count {
            let w = self.w_index(i);
            d.set(w + 1, self.algebra.gen_at(w));
        }
        d
    }

    /// Power of the ideal generated by `W` containing the monomial.
    pub fn ideal_order(&self, m: &Monomial) -> u32 {
        (0..self.w_count).map(|i| m.0[self.w_index(i)]).sum()
    }

    /// Whether the monomial lies in the kernel of `K → ΛV`.
    pub fn in_kernel(&self, m: &Monomial) -> bool {
        m.0[self.v_count..].iter().any(|&e| e > 0)
    }

    /// `h` on a basis monomial of the kernel.
    pub fn homotopy_monomial(&self, m: &Monomial) -> Result<Element> {
        let a = &self.algebra;
        let last = (0..self.w_count)
            .rev()
            .find(|&i| {
                let w = self.w_index(i);
                m.0[w] > 0 || m.0[w + 1] > 0
            })
            .ok_or_else(|| Error::NotInIdeal {
                term: a.format_monomial(m),
            })?;
        let w = self.w_index(last);
        let (ew, edw) = (m.0[w], m.0[w + 1]);
        let even = a.generators()[w].hdeg.is_multiple_of(2);
        let mut image = m.clone();
        let nonzero = if even {
            // h(w^{n+1}) = w^n dw, h(w^n dw) = 0.
            if edw == 0 && ew > 0 {
                image.0[w] = ew - 1;
                image.0[w + 1] = 1;
                true
            } else {
                false
            }
        } else if ew == 1 {
            // h(w γ_p(dw)) = γ_{p+1}(dw), h(γ_p(dw)) = 0.
            image.0[w] = 0;
            image.0[w + 1] = edw + 1;
            true
        } else {
            false
        };
        if !nonzero {
            return Ok(Element::zero());
        }
        // h acts on the last tensor factor: the sign is the parity of
        // everything before it.
        let mut prefix = m.clone();
        prefix.0[w..].iter_mut().for_each(|e| *e = 0);
        let sign = if a.is_odd(&prefix) {
            -Scalar::one()
        } else {
            Scalar::one()
        };
        Ok(Element::monomial(image, a.ring().normalize(sign)))
    }

    /// `h(e)`; fails with `NotInIdeal` if `e` has a term outside the kernel
    /// of the augmentation.
    pub fn homotopy(&self, e: &Element) -> Result<Element> {
        let a = &self.algebra;
        let mut out = Element::zero();
        for (m, c) in e.terms() {
            let image = self.homotopy_monomial(m)?;
            out = a.add(&out, &a.scale(&image, c));
        }
        Ok(out)
    }
}
