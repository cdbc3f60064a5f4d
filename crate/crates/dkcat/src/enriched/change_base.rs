//! Change of base along `Gamma`: from chain-enriched categories to
//! simplicially enriched categories.
//!
//! Hom-objects become `Gamma(hom)`; the transported composition is
//! `Gamma(comp) . phi` where `phi : Gamma(C) (x) Gamma(D) -> Gamma(C (x) D)`
//! is the lax structure adjoint to Alexander-Whitney: include
//! `M = Gamma(C) (x) Gamma(D)` into `Gamma(N(M))` by the Dold-Kan
//! isomorphism, then apply `Gamma` to the AW map `N(M) -> C (x) D`
//! (which is literally an identification of endpoints since
//! `N(Gamma(-))` is the identity here).

use super::{ChainCat, ChainFunctor, SimplicialCat, SimplicialFunctor};
use crate::simplicial::{alexander_whitney, dk_counit_iso, gamma, gamma_map, SimplicialMap};
use crate::{Error, Result};

/// Smallest truncation level at which every hom of `cat` embeds.
fn natural_level(cat: &ChainCat) -> usize {
    let n = cat.object_count();
    let mut level = 1;
    for x in 0..n {
        for y in 0..n {
            level = level.max(cat.hom(x, y).top());
        }
    }
    level
}

/// Transports a chain-enriched category through `Gamma` at the given level
/// (defaults to the largest hom degree when `None`).
pub fn gamma_change_base(cat: &ChainCat, level: Option<usize>) -> Result<SimplicialCat> {
    let level = level.unwrap_or_else(|| natural_level(cat));
    if level < natural_level(cat) {
        return Err(Error::TruncationTooLow {
            level,
            top: natural_level(cat),
        });
    }
    let n = cat.object_count();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            homs.push(gamma(cat.hom(x, y), level)?);
        }
    }
    let mut comps = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                comps.push(transport_comp(cat, x, y, z, level, &homs[x * n + y], &homs[y * n + z])?);
            }
        }
    }
    let units = (0..n).map(|x| cat.unit(x).clone()).collect();
    SimplicialCat::new(
        cat.field(),
        level,
        cat.object_names().to_vec(),
        homs,
        comps,
        units,
    )
}

fn transport_comp(
    cat: &ChainCat,
    x: usize,
    y: usize,
    z: usize,
    level: usize,
    gxy: &crate::simplicial::SimplicialModule,
    gyz: &crate::simplicial::SimplicialModule,
) -> Result<SimplicialMap> {
    let m = gxy.tensor(gyz)?;
    let iso = dk_counit_iso(&m)?;
    // N(Gamma C) = C on the nose, so AW goes N(M) -> (C (x) D) truncated
    let aw = alexander_whitney(gxy, gyz)?;
    let comp_truncated = cat.comp(x, y, z).truncate(level);
    if aw.target() != comp_truncated.source() {
        return Err(Error::Invalid(
            "AW target differs from truncated tensor (Dold-Kan identification broke)".into(),
        ));
    }
    let chain_part = aw.then(&comp_truncated)?;
    iso.unit.then(&gamma_map(&chain_part, level)?)
}

/// Transports a functor through `Gamma`; both categories are rebuilt at a
/// common level so the components compare.
pub fn gamma_change_base_functor(f: &ChainFunctor) -> Result<SimplicialFunctor> {
    let level = natural_level(&f.source).max(natural_level(&f.target));
    let source = gamma_change_base(&f.source, Some(level))?;
    let target = gamma_change_base(&f.target, Some(level))?;
    let n = f.source.object_count();
    let mut components = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            components.push(gamma_map(f.component(x, y), level)?);
        }
    }
    for (k, c) in components.iter().enumerate() {
        let (x, y) = (k / n, k % n);
        if c.source() != source.hom(x, y)
            || c.target() != target.hom(f.object_map[x], f.object_map[y])
        {
            return Err(Error::Invalid("transported component endpoints broke".into()));
        }
    }
    Ok(SimplicialFunctor {
        source,
        target,
        object_map: f.object_map.clone(),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::ChainComplex;
    use crate::enriched::{linearize, two_object, unit_category};
    use crate::field::Field;
    use crate::simplicial::SimplicialModule;

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn transported_unit_category_is_constant() {
        let s = gamma_change_base(&unit_category(f3()), Some(2)).unwrap();
        assert_eq!(s.hom(0, 0), &SimplicialModule::constant(f3(), 2));
        s.validate().unwrap();
    }

    #[test]
    fn transported_groupoid_validates() {
        let fc = crate::fincat::FiniteCategory::contractible_groupoid(2);
        let cat = linearize(&fc, f3()).unwrap();
        let s = gamma_change_base(&cat, None).unwrap();
        s.validate().unwrap();
    }

    #[test]
    fn transported_two_disk_validates() {
        let cat = two_object(&ChainComplex::disk(f3(), 1)).unwrap();
        let s = gamma_change_base(&cat, None).unwrap();
        s.validate().unwrap();
    }

    #[test]
    fn transported_functor_validates() {
        let f = crate::chain::generating_cofibration(f3(), 1);
        let functor = crate::enriched::two_map(&f).unwrap();
        let s = gamma_change_base_functor(&functor).unwrap();
        s.validate().unwrap();
    }
}
