use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{homology_at, HomologyGroup};
use crate::mixed::{cyclic_total_split, filtration_layers_split, FilteredGroups, MapKind, Mode};
use crate::par;

use super::forms::GammaFormsComplex;

fn require_top(g: &GammaFormsComplex, n_max: usize) -> Result<()> {
    if g.top() < n_max + 1 {
        return Err(Error::WindowTooSmall {
            what: "Γ-forms slices".into(),
            required: n_max + 1,
            available: g.top(),
        });
    }
    Ok(())
}

/// `E²_{p,q} = H_p(ΛV ⊗ Γ^q(dV), δ)`, where `p` counts degree beyond the
/// Γ-weight `q`, for `p + q ≤ n_max`.
pub fn e2_hh(g: &GammaFormsComplex, n_max: usize) -> Result<BTreeMap<(usize, usize), HomologyGroup>> {
    require_top(g, n_max)?;
    let spots: Vec<(usize, usize)> = (0..=n_max).flat_map(|n| (0..=n).map(move |q| (n - q, q))).collect();
    let groups = par::try_map(&spots, |&(p, q)| -> Result<HomologyGroup> {
        let mut total = HomologyGroup::zero();
        for piece in g.pieces() {
            let h = homology_at(
                &piece.map(MapKind::Partial, p + 1, q),
                &piece.map(MapKind::Partial, p, q),
                piece.ring(),
            )?;
            total = total.direct_sum(&h);
        }
        Ok(total)
    })?;
    Ok(spots.into_iter().zip(groups).collect())
}

fn check_hypothesis(g: &GammaFormsComplex) -> Result<()> {
    if let Some(gen) = g.model().generators().iter().find(|gen| gen.hdeg >= 2) {
        return Err(Error::HypothesisViolated {
            generator: gen.name.clone(),
            hdeg: gen.hdeg,
        });
    }
    Ok(())
}

/// `ĤH_n = ⊕_{p+q=n} E²_{p,q}`; the spectral sequence degenerates when the
/// model has no generators of degree `≥ 2`.
pub fn hh_assemble(g: &GammaFormsComplex, n_max: usize) -> Result<Vec<HomologyGroup>> {
    check_hypothesis(g)?;
    let e2 = e2_hh(g, n_max)?;
    Ok((0..=n_max)
        .map(|n| HomologyGroup::sum((0..=n).map(|q| &e2[&(n - q, q)])))
        .collect())
}

/// `ĤH_n` with its Hodge layers: `layers[n][p]` is the Γ-weight-`p` part.
pub fn hh_layers(g: &GammaFormsComplex, n_max: usize) -> Result<FilteredGroups> {
    check_hypothesis(g)?;
    let e2 = e2_hh(g, n_max)?;
    Ok(FilteredGroups {
        total: (0..=n_max)
            .map(|n| HomologyGroup::sum((0..=n).map(|q| &e2[&(n - q, q)])))
            .collect(),
        layers: (0..=n_max)
            .map(|n| (0..=n).map(|p| e2[&(n - p, p)].clone()).collect())
            .collect(),
    })
}

/// `ĤC_n` of the Γ-forms mixed complex with the layers of its column
/// filtration.
pub fn hc_assemble(g: &GammaFormsComplex, n_max: usize) -> Result<FilteredGroups> {
    require_top(g, n_max)?;
    check_hypothesis(g)?;
    filtration_layers_split(g.pieces(), n_max, Mode::HC)
}

/// `ĤC_n` totals only.
pub fn hc_totals(g: &GammaFormsComplex, n_max: usize) -> Result<Vec<HomologyGroup>> {
    require_top(g, n_max)?;
    check_hypothesis(g)?;
    cyclic_total_split(g.pieces(), n_max)
}
