//! Ordinary small categories with finite hom-sets.
//!
//! Arrows in `hom(x, y)` are indexed `0..size`; composition tables map the
//! pair `(f, g)` with `f : x -> y`, `g : y -> z` to the index of `f` then
//! `g` in `hom(x, z)`. These are the targets of the homotopy-category
//! functor and the ambient of the `Cat` cocategory interval.

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    object_count: usize,
    /// `hom_sizes[x * n + y]`.
    hom_sizes: Vec<usize>,
    /// `comp[(x * n + y) * n + z][f * hom(y,z) + g]` = index of `f ; g`.
    comp: Vec<Vec<usize>>,
    /// Index of `id_x` inside `hom(x, x)`.
    identities: Vec<usize>,
}

impl FiniteCategory {
    pub fn new(
        object_count: usize,
        hom_sizes: Vec<usize>,
        comp: Vec<Vec<usize>>,
        identities: Vec<usize>,
    ) -> Result<FiniteCategory> {
        let n = object_count;
        if hom_sizes.len() != n * n {
            return Err(Error::Shape("hom size table has wrong length".into()));
        }
        if comp.len() != n * n * n {
            return Err(Error::Shape("composition table has wrong length".into()));
        }
        if identities.len() != n {
            return Err(Error::Shape("identity table has wrong length".into()));
        }
        let cat = FiniteCategory {
            object_count,
            hom_sizes,
            comp,
            identities,
        };
        for x in 0..n {
            if cat.identities[x] >= cat.hom_size(x, x) {
                return Err(Error::Shape(format!("identity index of object {x} out of range")));
            }
            for y in 0..n {
                for z in 0..n {
                    let table = cat.table(x, y, z);
                    if table.len() != cat.hom_size(x, y) * cat.hom_size(y, z) {
                        return Err(Error::Shape(format!(
                            "composition table ({x},{y},{z}) has wrong length"
                        )));
                    }
                    if table.iter().any(|&v| v >= cat.hom_size(x, z)) {
                        return Err(Error::Shape(format!(
                            "composition table ({x},{y},{z}) has out-of-range entries"
                        )));
                    }
                }
            }
        }
        Ok(cat)
    }

    /// The terminal category: one object, one arrow.
    pub fn terminal() -> FiniteCategory {
        FiniteCategory::contractible_groupoid(1)
    }

    /// The contractible (indiscrete) groupoid on `n` objects: exactly one
    /// arrow between any ordered pair.
    pub fn contractible_groupoid(n: usize) -> FiniteCategory {
        FiniteCategory {
            object_count: n,
            hom_sizes: vec![1; n * n],
            comp: vec![vec![0]; n * n * n],
            identities: vec![0; n],
        }
    }

    pub fn object_count(&self) -> usize {
        self.object_count
    }

    pub fn hom_sizes(&self) -> &[usize] {
        &self.hom_sizes
    }

    pub fn identities(&self) -> &[usize] {
        &self.identities
    }

    pub fn comp_tables(&self) -> &[Vec<usize>] {
        &self.comp
    }

    pub fn hom_size(&self, x: usize, y: usize) -> usize {
        self.hom_sizes[x * self.object_count + y]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    fn table(&self, x: usize, y: usize, z: usize) -> &[usize] {
        &self.comp[(x * self.object_count + y) * self.object_count + z]
    }

    /// `f : x -> y` then `g : y -> z`.
    pub fn compose(&self, x: usize, y: usize, z: usize, f: usize, g: usize) -> usize {
        self.table(x, y, z)[f * self.hom_size(y, z) + g]
    }

    /// Whether every hom-set has exactly one element (and so the category is
    /// an indiscrete groupoid).
    pub fn is_contractible_groupoid(&self) -> bool {
        self.hom_sizes.iter().all(|&s| s == 1)
    }

    /// Checks associativity and the unit laws on all composable data.
    pub fn validate(&self) -> Result<()> {
        let n = self.object_count;
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.hom_size(x, y) {
                    if self.compose(x, x, y, self.identity(x), f) != f {
                        return Err(Error::Invalid(format!(
                            "left unit law fails at ({x},{y}) arrow {f}"
                        )));
                    }
                    if self.compose(x, y, y, f, self.identity(y)) != f {
                        return Err(Error::Invalid(format!(
                            "right unit law fails at ({x},{y}) arrow {f}"
                        )));
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        for f in 0..self.hom_size(x, y) {
                            for g in 0..self.hom_size(y, z) {
                                for h in 0..self.hom_size(z, w) {
                                    let fg = self.compose(x, y, z, f, g);
                                    let gh = self.compose(y, z, w, g, h);
                                    if self.compose(x, z, w, fg, h)
                                        != self.compose(x, y, w, f, gh)
                                    {
                                        return Err(Error::Invalid(format!(
                                            "associativity fails at ({x},{y},{z},{w}) arrows ({f},{g},{h})"
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// First isomorphism pair `(u : x -> y, v : y -> x)` with `u;v = id_x`
    /// and `v;u = id_y`, scanning in ascending index order.
    pub fn iso_witness(&self, x: usize, y: usize) -> Option<(usize, usize)> {
        for u in 0..self.hom_size(x, y) {
            for v in 0..self.hom_size(y, x) {
                if self.compose(x, y, x, u, v) == self.identity(x)
                    && self.compose(y, x, y, v, u) == self.identity(y)
                {
                    return Some((u, v));
                }
            }
        }
        None
    }

    /// All isomorphisms `x -> y` in ascending order.
    pub fn isos(&self, x: usize, y: usize) -> Vec<usize> {
        (0..self.hom_size(x, y))
            .filter(|&u| {
                (0..self.hom_size(y, x)).any(|v| {
                    self.compose(x, y, x, u, v) == self.identity(x)
                        && self.compose(y, x, y, v, u) == self.identity(y)
                })
            })
            .collect()
    }

    /// Product category with objects `(a, b) -> a * n_B + b` and arrows
    /// `(f, g) -> f * |hom_B| + g`.
    pub fn product(&self, other: &FiniteCategory) -> FiniteCategory {
        let (na, nb) = (self.object_count, other.object_count);
        let n = na * nb;
        let mut hom_sizes = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (xa, xb) = (x / nb, x % nb);
                let (ya, yb) = (y / nb, y % nb);
                hom_sizes[x * n + y] = self.hom_size(xa, ya) * other.hom_size(xb, yb);
            }
        }
        let mut comp = vec![Vec::new(); n * n * n];
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (xa, xb) = (x / nb, x % nb);
                    let (ya, yb) = (y / nb, y % nb);
                    let (za, zb) = (z / nb, z % nb);
                    let hyz = self.hom_size(ya, za) * other.hom_size(yb, zb);
                    let mut table = vec![0; hom_sizes[x * n + y] * hyz];
                    for fa in 0..self.hom_size(xa, ya) {
                        for fb in 0..other.hom_size(xb, yb) {
                            for ga in 0..self.hom_size(ya, za) {
                                for gb in 0..other.hom_size(yb, zb) {
                                    let f = fa * other.hom_size(xb, yb) + fb;
                                    let g = ga * other.hom_size(yb, zb) + gb;
                                    let ca = self.compose(xa, ya, za, fa, ga);
                                    let cb = other.compose(xb, yb, zb, fb, gb);
                                    table[f * hyz + g] = ca * other.hom_size(xb, zb) + cb;
                                }
                            }
                        }
                    }
                    comp[(x * n + y) * n + z] = table;
                }
            }
        }
        let identities = (0..n)
            .map(|o| {
                let (a, b) = (o / nb, o % nb);
                self.identity(a) * other.hom_size(b, b) + other.identity(b)
            })
            .collect();
        FiniteCategory {
            object_count: n,
            hom_sizes,
            comp,
            identities,
        }
    }
}

/// A functor between finite categories.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunctor {
    pub source: FiniteCategory,
    pub target: FiniteCategory,
    pub object_map: Vec<usize>,
    /// `arrow_maps[x * n + y][f]` = image index in `hom(Fx, Fy)`.
    pub arrow_maps: Vec<Vec<usize>>,
}

impl FiniteFunctor {
    pub fn new(
        source: FiniteCategory,
        target: FiniteCategory,
        object_map: Vec<usize>,
        arrow_maps: Vec<Vec<usize>>,
    ) -> Result<FiniteFunctor> {
        let n = source.object_count;
        if object_map.len() != n || arrow_maps.len() != n * n {
            return Err(Error::Shape("functor tables have wrong length".into()));
        }
        if object_map.iter().any(|&o| o >= target.object_count) {
            return Err(Error::Shape("object map out of range".into()));
        }
        for x in 0..n {
            for y in 0..n {
                let m = &arrow_maps[x * n + y];
                if m.len() != source.hom_size(x, y) {
                    return Err(Error::Shape(format!("arrow map ({x},{y}) has wrong length")));
                }
                let t = target.hom_size(object_map[x], object_map[y]);
                if m.iter().any(|&a| a >= t) {
                    return Err(Error::Shape(format!("arrow map ({x},{y}) out of range")));
                }
            }
        }
        Ok(FiniteFunctor {
            source,
            target,
            object_map,
            arrow_maps,
        })
    }

    pub fn identity(cat: &FiniteCategory) -> FiniteFunctor {
        let n = cat.object_count;
        let mut arrow_maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                arrow_maps.push((0..cat.hom_size(x, y)).collect());
            }
        }
        FiniteFunctor {
            source: cat.clone(),
            target: cat.clone(),
            object_map: (0..n).collect(),
            arrow_maps,
        }
    }

    pub fn apply_object(&self, x: usize) -> usize {
        self.object_map[x]
    }

    pub fn apply_arrow(&self, x: usize, y: usize, f: usize) -> usize {
        self.arrow_maps[x * self.source.object_count + y][f]
    }

    /// Functoriality: identities and composition preserved.
    pub fn validate(&self) -> Result<()> {
        let n = self.source.object_count;
        for x in 0..n {
            if self.apply_arrow(x, x, self.source.identity(x))
                != self.target.identity(self.object_map[x])
            {
                return Err(Error::Invalid(format!("identity of object {x} not preserved")));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in 0..self.source.hom_size(x, y) {
                        for g in 0..self.source.hom_size(y, z) {
                            let lhs = self.apply_arrow(x, z, self.source.compose(x, y, z, f, g));
                            let rhs = self.target.compose(
                                self.object_map[x],
                                self.object_map[y],
                                self.object_map[z],
                                self.apply_arrow(x, y, f),
                                self.apply_arrow(y, z, g),
                            );
                            if lhs != rhs {
                                return Err(Error::Invalid(format!(
                                    "composition not preserved at ({x},{y},{z}) arrows ({f},{g})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn then(&self, other: &FiniteFunctor) -> Result<FiniteFunctor> {
        if self.target != other.source {
            return Err(Error::Shape("functor composition endpoint mismatch".into()));
        }
        let n = self.source.object_count;
        let object_map: Vec<usize> = self.object_map.iter().map(|&o| other.object_map[o]).collect();
        let mut arrow_maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (fx, fy) = (self.object_map[x], self.object_map[y]);
                arrow_maps.push(
                    self.arrow_maps[x * n + y]
                        .iter()
                        .map(|&f| other.apply_arrow(fx, fy, f))
                        .collect(),
                );
            }
        }
        FiniteFunctor::new(
            self.source.clone(),
            other.target.clone(),
            object_map,
            arrow_maps,
        )
    }

    /// Every object of the target is isomorphic to an image object.
    pub fn is_essentially_surjective(&self) -> bool {
        (0..self.target.object_count).all(|b| {
            (0..self.source.object_count)
                .any(|a| self.target.iso_witness(self.object_map[a], b).is_some())
        })
    }

    /// Every isomorphism under an image object lifts to an isomorphism with
    /// the right image, on the nose.
    pub fn is_isofibration(&self) -> bool {
        for x in 0..self.source.object_count {
            let fx = self.object_map[x];
            for yp in 0..self.target.object_count {
                for v in self.target.isos(fx, yp) {
                    let lifted = (0..self.source.object_count).any(|y| {
                        self.object_map[y] == yp
                            && self
                                .source
                                .isos(x, y)
                                .iter()
                                .any(|&u| self.apply_arrow(x, y, u) == v)
                    });
                    if !lifted {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Fully faithful: each arrow map is a bijection.
    pub fn is_fully_faithful(&self) -> bool {
        let n = self.source.object_count;
        for x in 0..n {
            for y in 0..n {
                let m = &self.arrow_maps[x * n + y];
                let t = self.target.hom_size(self.object_map[x], self.object_map[y]);
                let mut seen = vec![false; t];
                if m.len() != t {
                    return false;
                }
                for &a in m {
                    if seen[a] {
                        return false;
                    }
                    seen[a] = true;
                }
            }
        }
        true
    }

    /// Equivalence of categories.
    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }

    pub fn is_injective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.object_count];
        for &o in &self.object_map {
            if seen[o] {
                return false;
            }
            seen[o] = true;
        }
        true
    }

    pub fn is_surjective_on_objects(&self) -> bool {
        let mut seen = vec![false; self.target.object_count];
        for &o in &self.object_map {
            seen[o] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Invertible functor (isomorphism of categories), with inverse.
    pub fn invert(&self) -> Option<FiniteFunctor> {
        if !self.is_fully_faithful()
            || !self.is_injective_on_objects()
            || !self.is_surjective_on_objects()
        {
            return None;
        }
        let n = self.target.object_count;
        let mut object_map = vec![0; n];
        for (a, &o) in self.object_map.iter().enumerate() {
            object_map[o] = a;
        }
        let mut arrow_maps = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let (sx, sy) = (object_map[x], object_map[y]);
                let fwd = &self.arrow_maps[sx * self.source.object_count + sy];
                let mut inv = vec![0; self.target.hom_size(x, y)];
                for (f, &img) in fwd.iter().enumerate() {
                    inv[img] = f;
                }
                arrow_maps.push(inv);
            }
        }
        FiniteFunctor::new(
            self.target.clone(),
            self.source.clone(),
            object_map,
            arrow_maps,
        )
        .ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn contractible_groupoids_validate() {
        for n in 1..4 {
            FiniteCategory::contractible_groupoid(n).validate().unwrap();
        }
    }

    #[test]
    fn iso_witness_in_groupoid() {
        let g = FiniteCategory::contractible_groupoid(3);
        assert_eq!(g.iso_witness(0, 2), Some((0, 0)));
        assert_eq!(g.iso_witness(1, 1), Some((0, 0)));
    }

    #[test]
    fn product_groupoid_validates() {
        let g = FiniteCategory::contractible_groupoid(2);
        let p = g.product(&g);
        p.validate().unwrap();
        assert_eq!(p.object_count(), 4);
        assert!(p.iso_witness(0, 3).is_some());
    }

    #[test]
    fn collapse_functor_is_equivalence() {
        let i1 = FiniteCategory::contractible_groupoid(2);
        let t = FiniteCategory::terminal();
        let collapse = FiniteFunctor::new(i1, t, vec![0, 0], vec![vec![0]; 4]).unwrap();
        collapse.validate().unwrap();
        assert!(collapse.is_equivalence());
        assert!(!collapse.is_injective_on_objects());
    }

    #[test]
    fn endpoint_inclusion_not_isofibration() {
        let t = FiniteCategory::terminal();
        let i1 = FiniteCategory::contractible_groupoid(2);
        let d0 = FiniteFunctor::new(t, i1, vec![0], vec![vec![0]]).unwrap();
        d0.validate().unwrap();
        assert!(!d0.is_isofibration());
        assert!(d0.is_essentially_surjective());
    }

    #[test]
    fn invert_roundtrip() {
        let g = FiniteCategory::contractible_groupoid(2);
        let id = FiniteFunctor::identity(&g);
        let swap = FiniteFunctor::new(g.clone(), g.clone(), vec![1, 0], vec![vec![0]; 4]).unwrap();
        swap.validate().unwrap();
        let inv = swap.invert().unwrap();
        assert_eq!(swap.then(&inv).unwrap(), id);
    }
}
