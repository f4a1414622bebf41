use crate::dp::{derivation_matrix, Element, Generator, GeneratorKind, Monomial, Window};
use crate::error::{Error, Result};
use crate::linalg::{GroundRing, HomologyGroup, Scalar, SparseMatrix, Stage};

use super::koszul::FreeDGA;

/// One step of a Tate tower: the algebra after killing `H_degree`.
#[derive(Clone, Debug)]
pub struct TateStage {
    pub model: FreeDGA,
    /// Degree whose homology this stage killed (0 for the starting algebra).
    pub degree: u32,
    pub adjoined: Vec<String>,
    /// Cycle representatives chosen as boundaries of the new generators.
    pub representatives: Vec<Element>,
}

/// Sequence of free algebras, each obtained from the previous one by
/// adjoining generators that kill one homology group.
#[derive(Clone, Debug)]
pub struct TateTower {
    stages: Vec<TateStage>,
    /// `H_m = 0` is guaranteed for `1 ≤ m < complete_below`.
    complete_below: u32,
}

impl TateTower {
    /// Starts a tower; the algebra must have no degree-0 generators.
    pub fn new(model: FreeDGA) -> Result<Self> {
        if let Some((_, g)) = model.degree_zero_generators().next() {
            return Err(Error::UnsupportedV0 { name: g.name.clone() });
        }
        Ok(TateTower {
            stages: vec![TateStage {
                model,
                degree: 0,
                adjoined: Vec::new(),
                representatives: Vec::new(),
            }],
            complete_below: 1,
        })
    }

    pub fn model(&self) -> &FreeDGA {
        &self.stages.last().expect("tower is nonempty").model
    }

    pub fn stages(&self) -> &[TateStage] {
        &self.stages
    }

    pub fn complete_below(&self) -> u32 {
        self.complete_below
    }
}

/// Basis of `(ΛV)_m` and the matrix of `∂ : (ΛV)_m → (ΛV)_{m-1}`.
pub fn degree_slice(model: &FreeDGA, m: u32) -> Result<(Vec<Monomial>, SparseMatrix)> {
    let a = model.algebra();
    let src = a.basis_window(m, 0, Window::default())?;
    let tgt = if m == 0 {
        Vec::new()
    } else {
        a.basis_window(m - 1, 0, Window::default())?
    };
    let mat = derivation_matrix(a, model.boundary(), &src, &tgt)?;
    Ok((src, mat))
}

fn stage_at(model: &FreeDGA, m: u32) -> Result<(Vec<Monomial>, Stage)> {
    if let Some((_, g)) = model.degree_zero_generators().next() {
        return Err(Error::UnsupportedV0 { name: g.name.clone() });
    }
    let (basis, d_out) = degree_slice(model, m)?;
    let (_, d_in) = degree_slice(model, m + 1)?;
    Ok((basis, Stage::over_ring(&d_in, &d_out, model.ring())?))
}

/// `H_m` of a free algebra without degree-0 generators.
pub fn degree_homology(model: &FreeDGA, m: u32) -> Result<HomologyGroup> {
    let (_, stage) = stage_at(model, m)?;
    Ok(stage.homology(model.ring()))
}

/// Adjoins generators until `H_m = 0` for `1 ≤ m < target`.
pub fn tate_extend(tower: &TateTower, target: u32) -> Result<TateTower> {
    let mut out = tower.clone();
    for m in tower.complete_below.max(1)..target {
        let current = out.model().clone();
        let (basis, stage) = stage_at(&current, m)?;
        let quotient = stage.homology_generators();
        let ring = current.ring().clone();
        let skip_torsion = ring == GroundRing::Rationals;
        let mut model = current.clone();
        let mut adjoined = Vec::new();
        let mut reps = Vec::new();
        for (k, vector) in quotient.generators.iter().enumerate() {
            if skip_torsion && k < quotient.torsion.len() {
                continue;
            }
            let mut rep = Element::zero();
            for (mono, c) in basis.iter().zip(vector) {
                rep.add_term(&ring, mono.clone(), &Scalar::from_integer(c.clone()));
            }
            if rep.is_zero() {
                continue;
            }
            let name = fresh_name(&model, m + 1);
            let g = Generator::new(name.clone(), m + 1, GeneratorKind::free(m + 1))?;
            let widened = super::koszul::widen(&rep, model.generators().len() + 1);
            model = model.adjoin(g, widened)?;
            adjoined.push(name);
            reps.push(rep);
        }
        out.stages.push(TateStage {
            model,
            degree: m,
            adjoined,
            representatives: reps,
        });
        out.complete_below = m + 1;
    }
    out.complete_below = out.complete_below.max(target);
    Ok(out)
}

fn fresh_name(model: &FreeDGA, hdeg: u32) -> String {
    let a = model.algebra();
    let base = format!("u{hdeg}");
    if a.index_of(&base).is_none() {
        return base;
    }
    (2..)
        .map(|i| format!("{base}_{i}"))
        .find(|n| a.index_of(n).is_none())
        .expect("infinitely many candidates")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yz(ring: GroundRing) -> FreeDGA {
        let mut m = FreeDGA::free(ring, &[("y", 1), ("z", 2)]).unwrap();
        let y = m.algebra().gen("y").unwrap();
        m.set_boundary("z", y).unwrap();
        m
    }

    #[test]
    fn nothing_to_add_in_low_degrees() {
        let t = TateTower::new(yz(GroundRing::Integers)).unwrap();
        let t = tate_extend(&t, 3).unwrap();
        assert_eq!(t.model().generators().len(), 2);
    }

    #[test]
    fn kills_yz_over_the_integers() {
        let t = TateTower::new(yz(GroundRing::Integers)).unwrap();
        let t = tate_extend(&t, 4).unwrap();
        let m = t.model();
        assert_eq!(m.generators().len(), 3);
        let u = &m.generators()[2];
        assert_eq!(u.hdeg, 4);
        let yz = m
            .algebra()
            .mul(&m.algebra().gen("y").unwrap(), &m.algebra().gen("z").unwrap());
        let b = m.boundary_of(2);
        assert!(b == &yz || b == &m.algebra().scale(&yz, &Scalar::from_integer((-1).into())));
        for k in 1..4 {
            assert!(degree_homology(m, k).unwrap().is_zero(), "H_{k}");
        }
    }

    #[test]
    fn empty_tower() {
        let m = FreeDGA::free(GroundRing::Integers, &[]).unwrap();
        let t = tate_extend(&TateTower::new(m).unwrap(), 4).unwrap();
        assert!(t.model().generators().is_empty());
        assert_eq!(degree_homology(t.model(), 0).unwrap(), HomologyGroup::free(1));
    }

    #[test]
    fn rejects_degree_zero() {
        let m = FreeDGA::free(GroundRing::Integers, &[("x", 0)]).unwrap();
        assert!(matches!(TateTower::new(m), Err(Error::UnsupportedV0 { .. })));
    }
}
