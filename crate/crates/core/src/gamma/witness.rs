use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::dp::{derivation_matrix, Element, Generator, GeneratorKind, Monomial, Window};
use crate::error::{Error, Result};
use crate::linalg::{preimage, GroundRing, Scalar};
use crate::model::{tate_extend, FreeDGA, TateTower};

use super::forms::forms_algebra;

/// Outcome of the non-degeneracy witness on a model of `k` with
/// `∂z = y`, `|y| = 1`, `|z| = 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub ring: String,
    pub p: u64,
    /// `δ(γ_p(dy)) = 0`.
    pub cycle: bool,
    /// `γ_p(dy) ∈ im δ` on its slice.
    pub boundary: bool,
    /// `δ(γ_{p−1}(dy)·dz) = −p·γ_p(dy)`.
    pub delta_beta_is_minus_p_gamma: bool,
    /// Smallest `n ≤ p` with `n·γ_p(dy)` a boundary.
    pub class_order: Option<u64>,
    /// A preimage of `γ_p(dy)`, when one exists.
    pub preimage: Option<String>,
    /// Generators adjoined by the Tate extension.
    pub adjoined: Vec<String>,
}

impl WitnessReport {
    /// All three facts hold and the class is not a boundary.
    pub fn certifies_nondegeneracy(&self) -> bool {
        self.cycle && !self.boundary && self.delta_beta_is_minus_p_gamma
    }
}

/// Runs the witness; `p` must not be invertible in `k`.
pub fn witness_nondegeneracy(ring: &GroundRing, p: u64) -> Result<WitnessReport> {
    witness_with(ring, p, true)
}

/// As [`witness_nondegeneracy`], optionally skipping the unit check so the
/// negative control over a field can run.
pub fn witness_with(ring: &GroundRing, p: u64, check_unit: bool) -> Result<WitnessReport> {
    if p < 2 {
        return Err(Error::Unsupported(format!("witness needs p ≥ 2, got {p}")));
    }
    let unit = ring.is_unit(&Scalar::from_integer(BigInt::from(p)));
    if check_unit && unit {
        return Err(Error::UnitP {
            p: p as i64,
            ring: ring.to_string(),
        });
    }
    let mut model = FreeDGA::new(crate::dp::Algebra::new(
        ring.clone(),
        vec![
            Generator::new("y", 1, GeneratorKind::Exterior)?,
            Generator::new("z", 2, GeneratorKind::DividedPower)?,
        ],
    )?);
    let y = model.algebra().gen("y")?;
    model.set_boundary("z", y)?;
    let tower = tate_extend(&TateTower::new(model)?, 2 * p as u32 + 2)?;
    let adjoined = tower.stages().iter().flat_map(|s| s.adjoined.clone()).collect();
    let (alg, delta, _) = forms_algebra(tower.model())?;

    let dy = alg.index_of("dy").expect("dy exists");
    let dz = alg.index_of("dz").expect("dz exists");
    let gamma_p = alg.power_monomial(dy, p as u32);
    let mut beta = alg.power_monomial(dy, p as u32 - 1);
    beta.0[dz] = 1;

    let delta_gamma = crate::dp::derive_monomial(&alg, &delta, &gamma_p)?;
    let delta_beta = crate::dp::derive_monomial(&alg, &delta, &beta)?;
    let minus_p_gamma = Element::monomial(gamma_p.clone(), -Scalar::from_integer(BigInt::from(p)));
    let minus_p_gamma = alg.normalize(&minus_p_gamma);

    let window = Window::default();
    let src = alg.basis_window(2 * p as u32 + 1, p as u32, window)?;
    let tgt = alg.basis_window(2 * p as u32, p as u32, window)?;
    let m = derivation_matrix(&alg, &delta, &src, &tgt)?;
    let at = tgt.iter().position(|t| t == &gamma_p).expect("γ_p(dy) is in its slice");
    let target = |n: u64| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); tgt.len()];
        v[at] = Scalar::from_integer(BigInt::from(n));
        v
    };
    let pre = preimage(&m, &target(1), ring);
    let class_order = (1..=p).find(|&n| preimage(&m, &target(n), ring).is_some());
    let preimage = pre.map(|x| {
        let mut e = Element::zero();
        for (mono, c) in src.iter().zip(x) {
            e.add_term(ring, Monomial::clone(mono), &c);
        }
        alg.format(&e)
    });
    Ok(WitnessReport {
        ring: ring.to_string(),
        p,
        cycle: delta_gamma.is_zero(),
        boundary: preimage.is_some(),
        delta_beta_is_minus_p_gamma: delta_beta == minus_p_gamma,
        class_order,
        preimage,
        adjoined,
    })
}
