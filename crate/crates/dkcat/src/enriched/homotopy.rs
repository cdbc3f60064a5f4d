//! The homotopy-category functor and the DK-equivalence / DK-fibration
//! predicates.
//!
//! Over a field with cofibrant unit and all objects fibrant, maps out of
//! the unit in the homotopy category of the ambient are computed by `H_0`
//! (chain ambient) or `H_0 . N` (simplicial ambient). Over `F_p` the
//! hom-sets are finite and fully enumerated: a class is a coordinate
//! vector with respect to the canonical homology representatives, ordered
//! big-endian, and composition is computed on representatives with
//! well-definedness verified rather than assumed.

use super::{ChainCat, ChainFunctor, EnrichedFunctor, SimplicialCat, SimplicialFunctor};
use crate::chain::{is_quasi_iso, HomologyData};
use crate::field::{Field, Scalar};
use crate::fincat::{FiniteCategory, FiniteFunctor};
use crate::matrix::Matrix;
use crate::simplicial::normalize;
use crate::{Error, Result};

const HOM_SET_LIMIT: usize = 1 << 14;

/// A materialized homotopy category: the finite category plus, per ordered
/// pair, the homology data and the canonical representative cycles.
#[derive(Clone, Debug)]
pub struct HomotopyCategory {
    pub cat: FiniteCategory,
    field: Field,
    object_count: usize,
    pair_homology: Vec<HomologyData>,
    /// `reps[x * n + y][class]`: canonical representative cycle.
    reps: Vec<Vec<Matrix>>,
}

impl HomotopyCategory {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rep(&self, x: usize, y: usize, class: usize) -> &Matrix {
        &self.reps[x * self.object_count + y][class]
    }

    pub fn class_count(&self, x: usize, y: usize) -> usize {
        self.reps[x * self.object_count + y].len()
    }

    /// Class index of a degree-0 cycle (big-endian coordinates).
    pub fn class_of(&self, x: usize, y: usize, v: &Matrix) -> Result<usize> {
        let h = &self.pair_homology[x * self.object_count + y];
        let coords = h.class_coords(0, v)?;
        let p = self.field.characteristic() as usize;
        let mut ix = 0usize;
        for k in 0..coords.rows() {
            let digit = match coords.get(k, 0) {
                Scalar::Mod(d) => d as usize,
                _ => unreachable!("homotopy categories require a prime field"),
            };
            ix = ix * p + digit;
        }
        Ok(ix)
    }
}

fn class_reps(field: Field, h: &HomologyData) -> Result<Vec<Matrix>> {
    let p = field.characteristic() as usize;
    let dim = h.dim(0);
    if dim >= 16 || p.pow(dim as u32) > HOM_SET_LIMIT {
        return Err(Error::EnumerationLimit(format!(
            "hom-set would have {p}^{dim} elements"
        )));
    }
    let count = p.pow(dim as u32);
    let mut out = Vec::with_capacity(count);
    for ix in 0..count {
        let mut coords = Matrix::zeros(field, dim, 1);
        let mut rest = ix;
        for k in (0..dim).rev() {
            coords.set(k, 0, field.from_i64((rest % p) as i64));
            rest /= p;
        }
        out.push(h.representative(0, &coords));
    }
    Ok(out)
}

/// Verifies that composition descends to `H_0`: boundaries compose to
/// boundaries on either side.
fn check_descent(
    comp0: &Matrix,
    hxy: &HomologyData,
    hyz: &HomologyData,
    hxz: &HomologyData,
) -> Result<()> {
    let field = comp0.field();
    let bxy = hxy.boundary_basis(0);
    let byz = hyz.boundary_basis(0);
    let dim_xy = hxy.complex().rank(0);
    let dim_yz = hyz.complex().rank(0);
    for b in 0..bxy.cols() {
        for k in 0..dim_yz {
            let mut e = Matrix::zeros(field, dim_yz, 1);
            e.set(k, 0, field.one());
            let v = comp0.mul(&bxy.column(b).kron(&e)?)?;
            if !hxz.class_coords(0, &v)?.is_zero() {
                return Err(Error::Invalid(
                    "H_0 composition not well defined (boundary (x) cycle escapes boundaries)"
                        .into(),
                ));
            }
        }
    }
    for k in 0..dim_xy {
        for b in 0..byz.cols() {
            let mut e = Matrix::zeros(field, dim_xy, 1);
            e.set(k, 0, field.one());
            let v = comp0.mul(&e.kron(&byz.column(b))?)?;
            if !hxz.class_coords(0, &v)?.is_zero() {
                return Err(Error::Invalid(
                    "H_0 composition not well defined (cycle (x) boundary escapes boundaries)"
                        .into(),
                ));
            }
        }
    }
    Ok(())
}

fn assemble(
    field: Field,
    n: usize,
    pair_homology: Vec<HomologyData>,
    comp0: impl Fn(usize, usize, usize) -> Matrix,
    unit0: impl Fn(usize) -> Matrix,
) -> Result<HomotopyCategory> {
    let mut reps = Vec::with_capacity(n * n);
    for h in &pair_homology {
        reps.push(class_reps(field, h)?);
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                check_descent(
                    &comp0(x, y, z),
                    &pair_homology[x * n + y],
                    &pair_homology[y * n + z],
                    &pair_homology[x * n + z],
                )?;
            }
        }
    }
    let hom_sizes: Vec<usize> = reps.iter().map(Vec::len).collect();
    let mut partial = HomotopyCategory {
        cat: FiniteCategory::terminal(),
        field,
        object_count: n,
        pair_homology,
        reps,
    };
    let mut comp_tables = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let c0 = comp0(x, y, z);
                let mut table =
                    Vec::with_capacity(partial.class_count(x, y) * partial.class_count(y, z));
                for f in 0..partial.class_count(x, y) {
                    for g in 0..partial.class_count(y, z) {
                        let v = c0
                            .mul(&partial.rep(x, y, f).kron(partial.rep(y, z, g))?)
                            .expect("shape");
                        table.push(partial.class_of(x, z, &v)?);
                    }
                }
                comp_tables.push(table);
            }
        }
    }
    let identities = (0..n)
        .map(|x| partial.class_of(x, x, &unit0(x)))
        .collect::<Result<Vec<_>>>()?;
    let cat = FiniteCategory::new(n, hom_sizes, comp_tables, identities)?;
    // associativity of the induced composition is a genuine theorem about
    // well-definedness; check it
    cat.validate()?;
    partial.cat = cat;
    Ok(partial)
}

/// `[A]` for a chain-enriched category over a prime field.
pub fn homotopy_category(cat: &ChainCat) -> Result<HomotopyCategory> {
    if !cat.field().is_finite() {
        return Err(Error::RequiresFiniteField);
    }
    let n = cat.object_count();
    let pair_homology: Vec<HomologyData> = (0..n * n)
        .map(|k| HomologyData::new(cat.hom(k / n, k % n)))
        .collect();
    assemble(
        cat.field(),
        n,
        pair_homology,
        |x, y, z| cat.comp(x, y, z).component(0),
        |x| cat.unit(x).clone(),
    )
}

/// `[A]` for a simplicially enriched category: `H_0` of the normalized
/// hom-modules. Level-0 vectors serve directly as degree-0 chains of `N`.
pub fn homotopy_category_smod(cat: &SimplicialCat) -> Result<HomotopyCategory> {
    if !cat.field().is_finite() {
        return Err(Error::RequiresFiniteField);
    }
    let n = cat.object_count();
    let mut pair_homology = Vec::with_capacity(n * n);
    for k in 0..n * n {
        let nd = normalize(cat.hom(k / n, k % n))?;
        pair_homology.push(HomologyData::new(&nd.complex));
    }
    assemble(
        cat.field(),
        n,
        pair_homology,
        |x, y, z| cat.comp(x, y, z).component(0).clone(),
        |x| cat.unit(x).clone(),
    )
}

/// The induced functor `[f]` on materialized homotopy categories.
pub fn induced_functor(
    f: &EnrichedFunctor,
    hsrc: &HomotopyCategory,
    htgt: &HomotopyCategory,
) -> Result<FiniteFunctor> {
    let (n, object_map, comp0): (usize, Vec<usize>, Box<dyn Fn(usize, usize) -> Matrix>) =
        match f {
            EnrichedFunctor::Chain(f) => {
                let f = f.clone();
                (
                    f.source.object_count(),
                    f.object_map.clone(),
                    Box::new(move |x, y| f.component(x, y).component(0)),
                )
            }
            EnrichedFunctor::Simplicial(f) => {
                let f = f.clone();
                (
                    f.source.object_count(),
                    f.object_map.clone(),
                    Box::new(move |x, y| f.component(x, y).component(0).clone()),
                )
            }
        };
    let mut arrow_maps = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let c = comp0(x, y);
            let mut table = Vec::with_capacity(hsrc.class_count(x, y));
            for ix in 0..hsrc.class_count(x, y) {
                let img = c.mul(hsrc.rep(x, y, ix))?;
                table.push(htgt.class_of(object_map[x], object_map[y], &img)?);
            }
            arrow_maps.push(table);
        }
    }
    FiniteFunctor::new(hsrc.cat.clone(), htgt.cat.clone(), object_map, arrow_maps)
}

/// The local predicate applied hom-wise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalPredicate {
    WeakEquivalence,
    Fibration,
    TrivialFibration,
}

impl std::str::FromStr for LocalPredicate {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "weq" => Ok(LocalPredicate::WeakEquivalence),
            "fib" => Ok(LocalPredicate::Fibration),
            "triv-fib" => Ok(LocalPredicate::TrivialFibration),
            other => Err(Error::UnknownPredicate(other.to_string())),
        }
    }
}

/// `f` is locally in the stated class: the predicate holds on every
/// hom-component.
pub fn is_locally(f: &EnrichedFunctor, pred: LocalPredicate) -> bool {
    match f {
        EnrichedFunctor::Chain(f) => {
            let n = f.source.object_count();
            (0..n * n).all(|k| {
                let c = f.component(k / n, k % n);
                match pred {
                    LocalPredicate::WeakEquivalence => is_quasi_iso(c),
                    LocalPredicate::Fibration => c.is_fibration(),
                    LocalPredicate::TrivialFibration => is_quasi_iso(c) && c.is_fibration(),
                }
            })
        }
        EnrichedFunctor::Simplicial(f) => {
            let n = f.source.object_count();
            (0..n * n).all(|k| {
                let c = f.component(k / n, k % n);
                match pred {
                    LocalPredicate::WeakEquivalence => c.is_weak_equivalence(),
                    LocalPredicate::Fibration => c.is_fibration(),
                    LocalPredicate::TrivialFibration => {
                        c.is_weak_equivalence() && c.is_fibration()
                    }
                }
            })
        }
    }
}

fn homotopy_pair(f: &EnrichedFunctor) -> Result<(HomotopyCategory, HomotopyCategory)> {
    match f {
        EnrichedFunctor::Chain(f) => Ok((
            homotopy_category(&f.source)?,
            homotopy_category(&f.target)?,
        )),
        EnrichedFunctor::Simplicial(f) => Ok((
            homotopy_category_smod(&f.source)?,
            homotopy_category_smod(&f.target)?,
        )),
    }
}

/// `[f]` is essentially surjective. Requires a prime field.
pub fn is_homotopy_essentially_surjective(f: &EnrichedFunctor) -> Result<bool> {
    let (hsrc, htgt) = homotopy_pair(f)?;
    Ok(induced_functor(f, &hsrc, &htgt)?.is_essentially_surjective())
}

/// DK-equivalence: locally a weak equivalence and homotopy essentially
/// surjective.
pub fn is_dk_equivalence(f: &EnrichedFunctor) -> Result<bool> {
    Ok(is_locally(f, LocalPredicate::WeakEquivalence)
        && is_homotopy_essentially_surjective(f)?)
}

/// DK-fibration: locally a fibration, and `[f]` an isofibration.
pub fn is_dk_fibration(f: &EnrichedFunctor) -> Result<bool> {
    if !is_locally(f, LocalPredicate::Fibration) {
        return Ok(false);
    }
    let (hsrc, htgt) = homotopy_pair(f)?;
    Ok(induced_functor(f, &hsrc, &htgt)?.is_isofibration())
}

/// Both sides of the trivial-fibration characterization, computed
/// independently: `(DK-equivalence and DK-fibration,
/// surjective on objects and locally a trivial fibration)`.
pub fn trivial_fibration_characterization(f: &EnrichedFunctor) -> Result<(bool, bool)> {
    let left = is_dk_equivalence(f)? && is_dk_fibration(f)?;
    let surj = match f {
        EnrichedFunctor::Chain(f) => f.is_surjective_on_objects(),
        EnrichedFunctor::Simplicial(f) => f.is_surjective_on_objects(),
    };
    let right = surj && is_locally(f, LocalPredicate::TrivialFibration);
    Ok((left, right))
}

/// The full verdict block for the `dk-check` front-end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DkReport {
    pub locally_weq: bool,
    pub locally_fib: bool,
    pub essentially_surjective: bool,
    pub isofibration: bool,
    pub dk_equivalence: bool,
    pub dk_fibration: bool,
    pub characterization: (bool, bool),
}

impl DkReport {
    pub fn compute(f: &EnrichedFunctor) -> Result<DkReport> {
        let (hsrc, htgt) = homotopy_pair(f)?;
        let induced = induced_functor(f, &hsrc, &htgt)?;
        Ok(DkReport {
            locally_weq: is_locally(f, LocalPredicate::WeakEquivalence),
            locally_fib: is_locally(f, LocalPredicate::Fibration),
            essentially_surjective: induced.is_essentially_surjective(),
            isofibration: induced.is_isofibration(),
            dk_equivalence: is_dk_equivalence(f)?,
            dk_fibration: is_dk_fibration(f)?,
            characterization: trivial_fibration_characterization(f)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{ChainComplex, ChainMap};
    use crate::enriched::{
        collapse_two, linearize, two_object, unit_category,
    };

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn homotopy_of_unit_category_is_scalar_monoid() {
        let h = homotopy_category(&unit_category(f3())).unwrap();
        assert_eq!(h.cat.object_count(), 1);
        assert_eq!(h.cat.hom_size(0, 0), 3);
        // composition is multiplication: 2 * 2 = 4 = 1 mod 3
        let two = 2usize;
        assert_eq!(h.cat.compose(0, 0, 0, two, two), 1);
        // the identity is the class of the unit cycle
        assert_eq!(h.cat.identity(0), 1);
    }

    #[test]
    fn homotopy_of_two_disk() {
        let cat = two_object(&ChainComplex::disk(f2(), 1)).unwrap();
        let h = homotopy_category(&cat).unwrap();
        assert_eq!(h.cat.hom_size(0, 1), 1); // H_0(D^1) = 0: only the zero class
        assert_eq!(h.cat.hom_size(1, 0), 1);
        assert_eq!(h.cat.hom_size(0, 0), 2);
        // objects 0 and 1 are not isomorphic: only zero maps between them
        assert!(h.cat.iso_witness(0, 1).is_none());
    }

    #[test]
    fn homotopy_rejects_rationals() {
        let cat = unit_category(Field::Rationals);
        assert!(matches!(
            homotopy_category(&cat),
            Err(Error::RequiresFiniteField)
        ));
    }

    #[test]
    fn identity_functor_all_predicates() {
        let cat = two_object(&ChainComplex::disk(f2(), 1)).unwrap();
        let f = EnrichedFunctor::Chain(super::super::ChainFunctor::identity(&cat));
        let report = DkReport::compute(&f).unwrap();
        assert!(report.dk_equivalence);
        assert!(report.dk_fibration);
        assert_eq!(report.characterization, (true, true));
    }

    #[test]
    fn collapse_functor_fails_locally() {
        // 2_I -> I: the (1,0) component is 0 -> I, not a weak equivalence
        let unit = ChainComplex::unit(f3());
        let c = collapse_two(&unit, &ChainMap::identity(&unit)).unwrap();
        let f = EnrichedFunctor::Chain(c);
        assert!(!is_locally(&f, LocalPredicate::WeakEquivalence));
        assert!(!is_dk_equivalence(&f).unwrap());
        let pair = trivial_fibration_characterization(&f).unwrap();
        assert_eq!(pair, (false, false));
    }

    #[test]
    fn groupoid_linearization_has_isos() {
        let fc = crate::fincat::FiniteCategory::contractible_groupoid(2);
        let cat = linearize(&fc, f2()).unwrap();
        let h = homotopy_category(&cat).unwrap();
        // hom(0,1) has classes {0, g}: g is invertible
        assert!(h.cat.iso_witness(0, 1).is_some());
        h.cat.validate().unwrap();
    }

    #[test]
    fn product_homotopy_is_product() {
        let a = unit_category(f2());
        let b = two_object(&ChainComplex::disk(f2(), 1)).unwrap();
        let p = a.product(&b).unwrap();
        let hp = homotopy_category(&p).unwrap();
        let ha = homotopy_category(&a).unwrap();
        let hb = homotopy_category(&b).unwrap();
        let hprod = ha.cat.product(&hb.cat);
        assert_eq!(hp.cat.object_count(), hprod.object_count());
        for x in 0..hp.cat.object_count() {
            for y in 0..hp.cat.object_count() {
                assert_eq!(hp.cat.hom_size(x, y), hprod.hom_size(x, y));
            }
        }
    }
}
