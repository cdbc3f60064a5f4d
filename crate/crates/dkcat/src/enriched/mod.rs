//! Small categories enriched in chain complexes or simplicial modules.
//!
//! Hom-objects live in the ambient, composition is a structure map
//! `hom(x,y) (x) hom(y,z) -> hom(x,z)` per ordered triple, and the unit of
//! an object is a degree-0 / level-0 element of its endo-hom. Associativity
//! and the unit laws are exact matrix identities checked by
//! [`ChainCat::validate`].

mod change_base;
mod homotopy;

pub use change_base::{gamma_change_base, gamma_change_base_functor};
pub use homotopy::{
    homotopy_category, homotopy_category_smod, induced_functor, is_dk_equivalence,
    is_dk_fibration, is_homotopy_essentially_surjective, is_locally,
    trivial_fibration_characterization, DkReport, HomotopyCategory, LocalPredicate,
};

use crate::chain::{
    tensor, tensor_insert_left, tensor_insert_right, tensor_map, unit_left_iso, unit_right_iso,
    ChainComplex, ChainMap,
};
use crate::field::Field;
use crate::fincat::FiniteCategory;
use crate::matrix::Matrix;
use crate::simplicial::{SimplicialMap, SimplicialModule};
use crate::{Error, Result};

/// A category enriched in `Ch+(k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainCat {
    field: Field,
    object_names: Vec<String>,
    /// `homs[x * n + y]`.
    homs: Vec<ChainComplex>,
    /// `comps[(x * n + y) * n + z] : hom(x,y) (x) hom(y,z) -> hom(x,z)`.
    comps: Vec<ChainMap>,
    /// Unit element of `hom(x,x)_0` per object, as a column vector.
    units: Vec<Matrix>,
}

impl ChainCat {
    pub fn new(
        field: Field,
        object_names: Vec<String>,
        homs: Vec<ChainComplex>,
        comps: Vec<ChainMap>,
        units: Vec<Matrix>,
    ) -> Result<ChainCat> {
        let n = object_names.len();
        if homs.len() != n * n || comps.len() != n * n * n || units.len() != n {
            return Err(Error::Shape("enriched category tables have wrong length".into()));
        }
        let cat = ChainCat {
            field,
            object_names,
            homs,
            comps,
            units,
        };
        for x in 0..n {
            for y in 0..n {
                if cat.hom(x, y).field() != field {
                    return Err(Error::FieldMismatch);
                }
                for z in 0..n {
                    let c = cat.comp(x, y, z);
                    let expected = tensor(cat.hom(x, y), cat.hom(y, z))?;
                    if c.source() != &expected || c.target() != cat.hom(x, z) {
                        return Err(Error::Shape(format!(
                            "composition ({x},{y},{z}) has wrong endpoints"
                        )));
                    }
                }
            }
            if cat.units[x].rows() != cat.hom(x, x).rank(0) || cat.units[x].cols() != 1 {
                return Err(Error::Shape(format!("unit of object {x} has wrong shape")));
            }
        }
        Ok(cat)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn hom(&self, x: usize, y: usize) -> &ChainComplex {
        &self.homs[x * self.object_count() + y]
    }

    pub fn comp(&self, x: usize, y: usize, z: usize) -> &ChainMap {
        let n = self.object_count();
        &self.comps[(x * n + y) * n + z]
    }

    pub fn unit(&self, x: usize) -> &Matrix {
        &self.units[x]
    }

    /// Post-composition with a degree-0 cycle `f` of `hom(y, z)`:
    /// `hom(x, y) -> hom(x, z)`.
    pub fn post_compose(&self, x: usize, y: usize, z: usize, f: &Matrix) -> Result<ChainMap> {
        let insert = tensor_insert_right(self.hom(x, y), self.hom(y, z), f)?;
        insert.then(self.comp(x, y, z))
    }

    /// Pre-composition with a degree-0 cycle `f` of `hom(x, y)`:
    /// `hom(y, z) -> hom(x, z)`.
    pub fn pre_compose(&self, x: usize, y: usize, z: usize, f: &Matrix) -> Result<ChainMap> {
        let insert = tensor_insert_left(self.hom(x, y), f, self.hom(y, z))?;
        insert.then(self.comp(x, y, z))
    }

    /// Checks hom validity (`d^2 = 0`), that each composition is a chain
    /// map, associativity after canonical associator insertion, and both
    /// unit laws. Returns the first failure with a witness.
    pub fn validate(&self) -> Result<()> {
        let n = self.object_count();
        for x in 0..n {
            for y in 0..n {
                let report = self.hom(x, y).validate();
                if !report.is_valid() {
                    return Err(Error::Invalid(format!(
                        "hom ({x},{y}) fails d^2 = 0 at degrees {:?}",
                        report.failing_degrees
                    )));
                }
                for z in 0..n {
                    if !self.comp(x, y, z).is_chain_map() {
                        return Err(Error::Invalid(format!(
                            "composition ({x},{y},{z}) is not a chain map"
                        )));
                    }
                }
            }
        }
        // unit laws
        for x in 0..n {
            for y in 0..n {
                let left = tensor_insert_left(self.hom(x, x), self.unit(x), self.hom(x, y))?
                    .then(self.comp(x, x, y))?;
                if left != ChainMap::identity(self.hom(x, y)) {
                    return Err(Error::Invalid(format!("left unit law fails at ({x},{y})")));
                }
                let right = tensor_insert_right(self.hom(x, y), self.hom(y, y), self.unit(y))?
                    .then(self.comp(x, y, y))?;
                if right != ChainMap::identity(self.hom(x, y)) {
                    return Err(Error::Invalid(format!("right unit law fails at ({x},{y})")));
                }
            }
        }
        // associativity
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let first = tensor_map(
                            self.comp(x, y, z),
                            &ChainMap::identity(self.hom(z, w)),
                        )?
                        .then(self.comp(x, z, w))?;
                        let second = crate::chain::associator(
                            self.hom(x, y),
                            self.hom(y, z),
                            self.hom(z, w),
                        )?
                        .then(&tensor_map(
                            &ChainMap::identity(self.hom(x, y)),
                            self.comp(y, z, w),
                        )?)?
                        .then(self.comp(x, y, w))?;
                        if first != second {
                            let deg = (0..=first.source().top())
                                .find(|&d| first.component(d) != second.component(d))
                                .unwrap_or(0);
                            return Err(Error::Invalid(format!(
                                "associativity fails at triple ({x},{y},{z},{w}), degree {deg}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Product category: objects are pairs `(a, b) -> a * n + b`, homs are
    /// degreewise direct products.
    pub fn product(&self, other: &ChainCat) -> Result<ChainCat> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let (na, nb) = (self.object_count(), other.object_count());
        let n = na * nb;
        let name = |o: usize| {
            format!(
                "({},{})",
                self.object_names[o / nb],
                other.object_names[o % nb]
            )
        };
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                homs.push(
                    self.hom(x / nb, y / nb)
                        .direct_sum(other.hom(x % nb, y % nb))?,
                );
            }
        }
        let mut comps = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (xa, xb) = (x / nb, x % nb);
                    let (ya, yb) = (y / nb, y % nb);
                    let (za, zb) = (z / nb, z % nb);
                    let ha = (self.hom(xa, ya), self.hom(ya, za));
                    let hb = (other.hom(xb, yb), other.hom(yb, zb));
                    let src_xy = ha.0.direct_sum(hb.0)?;
                    let src_yz = ha.1.direct_sum(hb.1)?;
                    let pa_xy = proj_first(&src_xy, ha.0)?;
                    let pb_xy = proj_second(&src_xy, ha.0, hb.0)?;
                    let pa_yz = proj_first(&src_yz, ha.1)?;
                    let pb_yz = proj_second(&src_yz, ha.1, hb.1)?;
                    let route_a =
                        tensor_map(&pa_xy, &pa_yz)?.then(self.comp(xa, ya, za))?;
                    let route_b =
                        tensor_map(&pb_xy, &pb_yz)?.then(other.comp(xb, yb, zb))?;
                    let comp = pair_into_sum(&route_a, &route_b)?;
                    comps.push(comp);
                }
            }
        }
        let units = (0..n)
            .map(|o| {
                self.unit(o / nb)
                    .vstack(other.unit(o % nb))
                    .expect("same field")
            })
            .collect();
        ChainCat::new(
            self.field,
            (0..n).map(name).collect(),
            homs,
            comps,
            units,
        )
    }
}

/// Projection `A (+) B -> A` as a chain map.
fn proj_first(sum: &ChainComplex, a: &ChainComplex) -> Result<ChainMap> {
    let field = sum.field();
    let comps = (0..sum.ranks().len())
        .map(|n| {
            let mut m = Matrix::zeros(field, a.rank(n), sum.rank(n));
            m.paste(0, 0, &Matrix::identity(field, a.rank(n)));
            m
        })
        .collect();
    ChainMap::new(sum.clone(), a.clone(), comps)
}

/// Projection `A (+) B -> B`.
fn proj_second(sum: &ChainComplex, a: &ChainComplex, b: &ChainComplex) -> Result<ChainMap> {
    let field = sum.field();
    let comps = (0..sum.ranks().len())
        .map(|n| {
            let mut m = Matrix::zeros(field, b.rank(n), sum.rank(n));
            for i in 0..b.rank(n) {
                m.set(i, a.rank(n) + i, field.one());
            }
            m
        })
        .collect();
    ChainMap::new(sum.clone(), b.clone(), comps)
}

/// Pairing `(f, g) : X -> A (+) B` from `f : X -> A`, `g : X -> B`.
fn pair_into_sum(f: &ChainMap, g: &ChainMap) -> Result<ChainMap> {
    let target = f.target().direct_sum(g.target())?;
    let comps = (0..f.source().ranks().len().max(target.ranks().len()))
        .map(|n| f.component(n).vstack(&g.component(n)).expect("same cols"))
        .collect();
    ChainMap::new(f.source().clone(), target, comps)
}

/// A functor of chain-enriched categories. Strict: units and composition
/// are preserved on the nose ([`ChainFunctor::validate`]).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainFunctor {
    pub source: ChainCat,
    pub target: ChainCat,
    pub object_map: Vec<usize>,
    /// `components[x * n + y] : hom_A(x,y) -> hom_B(Fx,Fy)`.
    pub components: Vec<ChainMap>,
}

impl ChainFunctor {
    pub fn new(
        source: ChainCat,
        target: ChainCat,
        object_map: Vec<usize>,
        components: Vec<ChainMap>,
    ) -> Result<ChainFunctor> {
        let n = source.object_count();
        if object_map.len() != n || components.len() != n * n {
            return Err(Error::Shape("functor tables have wrong length".into()));
        }
        if object_map.iter().any(|&o| o >= target.object_count()) {
            return Err(Error::Shape("object map out of range".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let c = &components[x * n + y];
                if c.source() != source.hom(x, y)
                    || c.target() != target.hom(object_map[x], object_map[y])
                {
                    return Err(Error::Shape(format!(
                        "functor component ({x},{y}) has wrong endpoints"
                    )));
                }
            }
        }
        Ok(ChainFunctor {
            source,
            target,
            object_map,
            components,
        })
    }

    pub fn identity(cat: &ChainCat) -> ChainFunctor {
        let n = cat.object_count();
        let mut components = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                components.push(ChainMap::identity(cat.hom(x, y)));
            }
        }
        ChainFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..n).collect(),
            components,
        }
    }

    pub fn component(&self, x: usize, y: usize) -> &ChainMap {
        &self.components[x * self.source.object_count() + y]
    }

    /// Chain-map components, unit and composition preservation.
    pub fn validate(&self) -> Result<()> {
        let n = self.source.object_count();
        for x in 0..n {
            for y in 0..n {
                if !self.component(x, y).is_chain_map() {
                    return Err(Error::Invalid(format!(
                        "functor component ({x},{y}) is not a chain map"
                    )));
                }
            }
        }
        for x in 0..n {
            let img = self.component(x, x).component(0).mul(self.source.unit(x))?;
            if &img != self.target.unit(self.object_map[x]) {
                return Err(Error::Invalid(format!("unit of object {x} not preserved")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.source.comp(x, y, z).then(self.component(x, z))?;
                    let rhs = tensor_map(self.component(x, y), self.component(y, z))?.then(
                        self.target.comp(
                            self.object_map[x],
                            self.object_map[y],
                            self.object_map[z],
                        ),
                    )?;
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "composition not preserved at ({x},{y},{z})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, other: &ChainFunctor) -> Result<ChainFunctor> {
        if self.target != other.source {
            return Err(Error::Shape("functor composition endpoint mismatch".into()));
        }
        let n = self.source.object_count();
        let object_map: Vec<usize> = self
            .object_map
            .iter()
            .map(|&o| other.object_map[o])
            .collect();
        let mut components = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                components.push(
                    self.component(x, y)
                        .then(other.component(self.object_map[x], self.object_map[y]))?,
                );
            }
        }
        ChainFunctor::new(
            self.source.clone(),
            other.target.clone(),
            object_map,
            components,
        )
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.object_count()];
        for &o in &self.object_map {
            seen[o] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// The empty enriched category.
pub fn empty_category(field: Field) -> ChainCat {
    ChainCat {
        field,
        object_names: Vec::new(),
        homs: Vec::new(),
        comps: Vec::new(),
        units: Vec::new(),
    }
}

/// The one-object category with endo-hom `I` and multiplication as
/// composition.
pub fn unit_category(field: Field) -> ChainCat {
    one_object_category(
        "*",
        ChainComplex::unit(field),
        unit_left_iso(&ChainComplex::unit(field)),
        Matrix::identity(field, 1),
    )
    .expect("unit category is valid")
}

/// A one-object category from an endo-hom, its composition and its unit.
pub fn one_object_category(
    name: &str,
    hom: ChainComplex,
    comp: ChainMap,
    unit: Matrix,
) -> Result<ChainCat> {
    ChainCat::new(
        hom.field(),
        vec![name.to_string()],
        vec![hom],
        vec![comp],
        vec![unit],
    )
}

/// The arrow category `2_A`: objects 0, 1; endo-homs `I`; `hom(0,1) = A`;
/// `hom(1,0) = 0`.
pub fn two_object(a: &ChainComplex) -> Result<ChainCat> {
    let field = a.field();
    let unit = ChainComplex::unit(field);
    let zero = ChainComplex::zero(field);
    let homs = vec![unit.clone(), a.clone(), zero.clone(), unit.clone()];
    let mut comps = Vec::new();
    for x in 0..2usize {
        for y in 0..2usize {
            for z in 0..2usize {
                let hx_y = &homs[x * 2 + y];
                let hy_z = &homs[y * 2 + z];
                let hx_z = &homs[x * 2 + z];
                let comp = if hx_y == &unit && x == y {
                    // I (x) H -> H
                    unit_left_iso(hy_z)
                        .then(&identity_into(hy_z, hx_z)?)
                        .expect("endpoints")
                } else if hy_z == &unit && y == z {
                    unit_right_iso(hx_y)
                        .then(&identity_into(hx_y, hx_z)?)
                        .expect("endpoints")
                } else {
                    // some factor is the zero complex
                    ChainMap::zero(&tensor(hx_y, hy_z)?, hx_z)
                };
                comps.push(comp);
            }
        }
    }
    let units = vec![Matrix::identity(field, 1), Matrix::identity(field, 1)];
    ChainCat::new(
        field,
        vec!["0".into(), "1".into()],
        homs,
        comps,
        units,
    )
}

fn identity_into(from: &ChainComplex, to: &ChainComplex) -> Result<ChainMap> {
    if from != to {
        return Err(Error::Shape("expected equal homs".into()));
    }
    Ok(ChainMap::identity(from))
}

/// The functor `2_i : 2_A -> 2_B` induced by an ambient map `i : A -> B`.
pub fn two_map(i: &ChainMap) -> Result<ChainFunctor> {
    let source = two_object(i.source())?;
    let target = two_object(i.target())?;
    let unit_id = ChainMap::identity(source.hom(0, 0));
    let zero_map = ChainMap::zero(source.hom(1, 0), target.hom(1, 0));
    ChainFunctor::new(
        source.clone(),
        target,
        vec![0, 1],
        vec![unit_id.clone(), i.clone(), zero_map, unit_id],
    )
}

/// The collapse functor `2_A -> I` sending both objects to `*`, using a
/// chosen degree-0 augmentation `eps : A -> I` on the non-trivial hom.
pub fn collapse_two(a: &ChainComplex, eps: &ChainMap) -> Result<ChainFunctor> {
    let source = two_object(a)?;
    let target = unit_category(a.field());
    if eps.source() != a || eps.target() != target.hom(0, 0) {
        return Err(Error::Shape("collapse augmentation has wrong endpoints".into()));
    }
    let id = ChainMap::identity(source.hom(0, 0));
    let zero_map = ChainMap::zero(source.hom(1, 0), target.hom(0, 0));
    ChainFunctor::new(
        source,
        target.clone(),
        vec![0, 0],
        vec![id.clone(), eps.clone(), zero_map, id],
    )
}

/// Applies the free-module functor hom-wise to a finite category.
pub fn linearize(fc: &FiniteCategory, field: Field) -> Result<ChainCat> {
    let n = fc.object_count();
    let mut homs = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            homs.push(ChainComplex::new(
                field,
                vec![fc.hom_size(x, y)],
                Vec::new(),
            )?);
        }
    }
    let mut comps = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let src = tensor(&homs[x * n + y], &homs[y * n + z])?;
                let mut m = Matrix::zeros(field, fc.hom_size(x, z), fc.hom_size(x, y) * fc.hom_size(y, z));
                for f in 0..fc.hom_size(x, y) {
                    for g in 0..fc.hom_size(y, z) {
                        m.set(
                            fc.compose(x, y, z, f, g),
                            f * fc.hom_size(y, z) + g,
                            field.one(),
                        );
                    }
                }
                comps.push(ChainMap::new(
                    src,
                    homs[x * n + z].clone(),
                    vec![m],
                )?);
            }
        }
    }
    let units = (0..n)
        .map(|x| {
            let mut u = Matrix::zeros(field, fc.hom_size(x, x), 1);
            u.set(fc.identity(x), 0, field.one());
            u
        })
        .collect();
    ChainCat::new(
        field,
        (0..n).map(|o| o.to_string()).collect(),
        homs,
        comps,
        units,
    )
}

/// The diagonal functor `A -> A x A`.
pub fn diagonal_functor(cat: &ChainCat) -> Result<ChainFunctor> {
    let prod = cat.product(cat)?;
    let n = cat.object_count();
    let object_map: Vec<usize> = (0..n).map(|a| a * n + a).collect();
    let mut components = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let hom = cat.hom(x, y);
            let target = prod.hom(object_map[x], object_map[y]);
            let comps = (0..hom.ranks().len().max(target.ranks().len()))
                .map(|d| {
                    let id = Matrix::identity(cat.field(), hom.rank(d));
                    id.vstack(&id).expect("same cols")
                })
                .collect();
            components.push(ChainMap::new(hom.clone(), target.clone(), comps)?);
        }
    }
    ChainFunctor::new(cat.clone(), prod, object_map, components)
}

/// Product projection functors `A x B -> A` and `A x B -> B`.
pub fn product_projections(
    a: &ChainCat,
    b: &ChainCat,
) -> Result<(ChainFunctor, ChainFunctor)> {
    let prod = a.product(b)?;
    let (na, nb) = (a.object_count(), b.object_count());
    let n = na * nb;
    let mut comps_a = Vec::new();
    let mut comps_b = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let hom = prod.hom(x, y);
            let ha = a.hom(x / nb, y / nb);
            let hb = b.hom(x % nb, y % nb);
            comps_a.push(proj_first(hom, ha)?);
            comps_b.push(proj_second(hom, ha, hb)?);
        }
    }
    let pa = ChainFunctor::new(
        prod.clone(),
        a.clone(),
        (0..n).map(|o| o / nb).collect(),
        comps_a,
    )?;
    let pb = ChainFunctor::new(
        prod,
        b.clone(),
        (0..n).map(|o| o % nb).collect(),
        comps_b,
    )?;
    Ok((pa, pb))
}

/// Pairing of functors `F : X -> A`, `G : X -> B` into `X -> A x B`.
pub fn pair_functors(f: &ChainFunctor, g: &ChainFunctor) -> Result<ChainFunctor> {
    if f.source != g.source {
        return Err(Error::Shape("paired functors have different sources".into()));
    }
    let prod = f.target.product(&g.target)?;
    let nb = g.target.object_count();
    let n = f.source.object_count();
    let object_map: Vec<usize> = (0..n)
        .map(|x| f.object_map[x] * nb + g.object_map[x])
        .collect();
    let mut components = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let fa = f.component(x, y);
            let gb = g.component(x, y);
            let paired = pair_into_sum(fa, gb)?;
            let target = prod.hom(object_map[x], object_map[y]).clone();
            let comps = (0..paired.source().ranks().len().max(target.ranks().len()))
                .map(|d| paired.component(d))
                .collect();
            components.push(ChainMap::new(
                f.source.hom(x, y).clone(),
                target,
                comps,
            )?);
        }
    }
    ChainFunctor::new(f.source.clone(), prod, object_map, components)
}

/// A category enriched in truncated simplicial modules.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialCat {
    field: Field,
    level: usize,
    object_names: Vec<String>,
    homs: Vec<SimplicialModule>,
    /// Pointwise-tensor composition maps.
    comps: Vec<SimplicialMap>,
    /// Level-0 unit element per object.
    units: Vec<Matrix>,
}

impl SimplicialCat {
    pub fn new(
        field: Field,
        level: usize,
        object_names: Vec<String>,
        homs: Vec<SimplicialModule>,
        comps: Vec<SimplicialMap>,
        units: Vec<Matrix>,
    ) -> Result<SimplicialCat> {
        let n = object_names.len();
        if homs.len() != n * n || comps.len() != n * n * n || units.len() != n {
            return Err(Error::Shape("enriched category tables have wrong length".into()));
        }
        for h in &homs {
            if h.level() != level {
                return Err(Error::Shape("hom truncation levels differ".into()));
            }
        }
        Ok(SimplicialCat {
            field,
            level,
            object_names,
            homs,
            comps,
            units,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn object_count(&self) -> usize {
        self.object_names.len()
    }

    pub fn object_names(&self) -> &[String] {
        &self.object_names
    }

    pub fn hom(&self, x: usize, y: usize) -> &SimplicialModule {
        &self.homs[x * self.object_count() + y]
    }

    pub fn comp(&self, x: usize, y: usize, z: usize) -> &SimplicialMap {
        let n = self.object_count();
        &self.comps[(x * n + y) * n + z]
    }

    pub fn unit(&self, x: usize) -> &Matrix {
        &self.units[x]
    }

    /// Constant-map expansion of a level-0 element to level `n` (iterated
    /// `s_0`).
    fn unit_at_level(&self, x: usize, n: usize) -> Matrix {
        let hom = self.hom(x, x);
        let mut v = self.unit(x).clone();
        for k in 0..n {
            v = hom.degeneracy(k, 0).mul(&v).expect("shape");
        }
        v
    }

    /// Simplicial identities on homs, simplicial composition maps,
    /// associativity (pointwise tensors are strictly associative) and unit
    /// laws.
    pub fn validate(&self) -> Result<()> {
        let n = self.object_count();
        for x in 0..n {
            for y in 0..n {
                self.hom(x, y).validate().map_err(|e| {
                    Error::Invalid(format!("hom ({x},{y}) fails simplicial identities: {e}"))
                })?;
                for z in 0..n {
                    if !self.comp(x, y, z).is_simplicial() {
                        return Err(Error::Invalid(format!(
                            "composition ({x},{y},{z}) is not simplicial"
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                let hom = self.hom(x, y);
                for d in 0..=self.level {
                    // left unit at level d
                    let u = self.unit_at_level(x, d);
                    let insert = u.kron(&Matrix::identity(self.field, hom.rank(d)))?;
                    let lhs = self.comp(x, x, y).component(d).mul(&insert)?;
                    if lhs != Matrix::identity(self.field, hom.rank(d)) {
                        return Err(Error::Invalid(format!(
                            "left unit law fails at ({x},{y}) level {d}"
                        )));
                    }
                    let u = self.unit_at_level(y, d);
                    let insert = Matrix::identity(self.field, hom.rank(d)).kron(&u)?;
                    let rhs = self.comp(x, y, y).component(d).mul(&insert)?;
                    if rhs != Matrix::identity(self.field, hom.rank(d)) {
                        return Err(Error::Invalid(format!(
                            "right unit law fails at ({x},{y}) level {d}"
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for d in 0..=self.level {
                            let czw = Matrix::identity(self.field, self.hom(z, w).rank(d));
                            let cxy = Matrix::identity(self.field, self.hom(x, y).rank(d));
                            let first = self
                                .comp(x, z, w)
                                .component(d)
                                .mul(&self.comp(x, y, z).component(d).kron(&czw)?)?;
                            let second = self
                                .comp(x, y, w)
                                .component(d)
                                .mul(&cxy.kron(self.comp(y, z, w).component(d))?)?;
                            if first != second {
                                return Err(Error::Invalid(format!(
                                    "associativity fails at ({x},{y},{z},{w}) level {d}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A functor of simplicially enriched categories.
#[derive(Clone, Debug, PartialEq)]
pub struct SimplicialFunctor {
    pub source: SimplicialCat,
    pub target: SimplicialCat,
    pub object_map: Vec<usize>,
    pub components: Vec<SimplicialMap>,
}

impl SimplicialFunctor {
    pub fn component(&self, x: usize, y: usize) -> &SimplicialMap {
        &self.components[x * self.source.object_count() + y]
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.source.object_count();
        for x in 0..n {
            for y in 0..n {
                if !self.component(x, y).is_simplicial() {
                    return Err(Error::Invalid(format!(
                        "functor component ({x},{y}) is not simplicial"
                    )));
                }
            }
        }
        for x in 0..n {
            let img = self.component(x, x).component(0).mul(self.source.unit(x))?;
            if &img != self.target.unit(self.object_map[x]) {
                return Err(Error::Invalid(format!("unit of object {x} not preserved")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for d in 0..=self.source.level() {
                        let lhs = self
                            .component(x, z)
                            .component(d)
                            .mul(self.source.comp(x, y, z).component(d))?;
                        let rhs = self
                            .target
                            .comp(
                                self.object_map[x],
                                self.object_map[y],
                                self.object_map[z],
                            )
                            .component(d)
                            .mul(
                                &self
                                    .component(x, y)
                                    .component(d)
                                    .kron(self.component(y, z).component(d))?,
                            )?;
                        if lhs != rhs {
                            return Err(Error::Invalid(format!(
                                "composition not preserved at ({x},{y},{z}) level {d}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.object_count()];
        for &o in &self.object_map {
            seen[o] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// Ambient-tagged enriched category, the unit of serialization.
#[derive(Clone, Debug, PartialEq)]
pub enum EnrichedCategory {
    Chain(ChainCat),
    Simplicial(SimplicialCat),
}

impl EnrichedCategory {
    pub fn validate(&self) -> Result<()> {
        match self {
            EnrichedCategory::Chain(c) => c.validate(),
            EnrichedCategory::Simplicial(c) => c.validate(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            EnrichedCategory::Chain(c) => c.field(),
            EnrichedCategory::Simplicial(c) => c.field(),
        }
    }

    pub fn object_count(&self) -> usize {
        match self {
            EnrichedCategory::Chain(c) => c.object_count(),
            EnrichedCategory::Simplicial(c) => c.object_count(),
        }
    }
}

/// Ambient-tagged enriched functor.
#[derive(Clone, Debug, PartialEq)]
pub enum EnrichedFunctor {
    Chain(ChainFunctor),
    Simplicial(SimplicialFunctor),
}

impl EnrichedFunctor {
    pub fn validate(&self) -> Result<()> {
        match self {
            EnrichedFunctor::Chain(f) => f.validate(),
            EnrichedFunctor::Simplicial(f) => f.validate(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn f3() -> Field {
        Field::prime(3).unwrap()
    }

    #[test]
    fn unit_category_validates() {
        unit_category(q()).validate().unwrap();
        unit_category(f3()).validate().unwrap();
    }

    #[test]
    fn two_object_disk_validates() {
        let cat = two_object(&ChainComplex::disk(q(), 1)).unwrap();
        cat.validate().unwrap();
    }

    #[test]
    fn corrupted_composition_reports_witness() {
        // negating a composition of the arrow category on I keeps every
        // component a chain map but breaks the right unit law
        let mut cat = two_object(&ChainComplex::unit(q())).unwrap();
        let idx = (0usize * 2 + 1) * 2 + 1;
        let bad = cat.comps[idx].clone();
        let comps: Vec<Matrix> = (0..=bad.source().top()).map(|n| bad.component(n).neg()).collect();
        cat.comps[idx] =
            ChainMap::new(bad.source().clone(), bad.target().clone(), comps).unwrap();
        let err = cat.validate().unwrap_err();
        assert!(err.to_string().contains("unit law"), "got: {err}");
        // a corrupted non-chain-map composition is also caught, with its own witness
        let mut cat2 = two_object(&ChainComplex::disk(q(), 1)).unwrap();
        let bad2 = cat2.comps[idx].clone();
        let mut comps2: Vec<Matrix> =
            (0..=bad2.source().top()).map(|n| bad2.component(n)).collect();
        comps2[0] = comps2[0].neg();
        cat2.comps[idx] =
            ChainMap::new(bad2.source().clone(), bad2.target().clone(), comps2).unwrap();
        let err2 = cat2.validate().unwrap_err();
        assert!(err2.to_string().contains("not a chain map"), "got: {err2}");
    }

    #[test]
    fn linearize_groupoid_validates() {
        let fc = crate::fincat::FiniteCategory::contractible_groupoid(2);
        let cat = linearize(&fc, Field::prime(2).unwrap()).unwrap();
        cat.validate().unwrap();
        assert_eq!(cat.hom(0, 1).ranks(), &[1]);
    }

    #[test]
    fn product_of_units_validates() {
        let i = unit_category(f3());
        let p = i.product(&i).unwrap();
        p.validate().unwrap();
        assert_eq!(p.object_count(), 1);
        assert_eq!(p.hom(0, 0).rank(0), 2);
    }

    #[test]
    fn product_of_two_object_validates() {
        let a = two_object(&ChainComplex::disk(q(), 1)).unwrap();
        let i = unit_category(q());
        let p = a.product(&i).unwrap();
        p.validate().unwrap();
    }

    #[test]
    fn two_map_is_valid_functor() {
        let f = crate::chain::generating_cofibration(q(), 1);
        let functor = two_map(&f).unwrap();
        functor.validate().unwrap();
    }

    #[test]
    fn diagonal_validates() {
        let cat = two_object(&ChainComplex::disk(f3(), 1)).unwrap();
        let d = diagonal_functor(&cat).unwrap();
        d.validate().unwrap();
        let (s, t) = product_projections(&cat, &cat).unwrap();
        s.validate().unwrap();
        t.validate().unwrap();
        assert_eq!(
            d.then(&s).unwrap(),
            ChainFunctor::identity(&cat)
        );
    }

    #[test]
    fn collapse_two_validates() {
        let unit = ChainComplex::unit(q());
        let eps = ChainMap::identity(&unit);
        let f = collapse_two(&unit, &eps).unwrap();
        f.validate().unwrap();
        assert!(f.is_surjective_on_objects());
    }
}
