use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{AutStructure, FiniteGroup};
use crate::error::{Error, Result};

/// Largest number of arrows a [`StrictGrCat`] may have; the composition and
/// tensor tables are quadratic in it.
pub const MAX_ARROWS: usize = 4096;

const NONE: u32 = u32::MAX;

/// A finite strict Gr-category given by explicit tables.
///
/// Composition is written in diagrammatic order: `seq(a, b)` is "`a`, then
/// `b`" and is defined when `target(a) = source(b)`.
#[derive(Debug, Clone)]
pub struct StrictGrCat {
    objects: Vec<String>,
    arrows: Vec<String>,
    source: Vec<usize>,
    target: Vec<usize>,
    compose: Vec<u32>,
    identity: Vec<usize>,
    inverse: Vec<usize>,
    tensor_obj: Vec<usize>,
    tensor_arr: Vec<usize>,
    unit: usize,
}

impl StrictGrCat {
    /// Tabulates the given operations and checks every axiom exhaustively.
    ///
    /// `compose` is only called on composable pairs.
    pub fn from_fns(
        objects: Vec<String>,
        arrows: Vec<(usize, usize, String)>,
        compose: impl Fn(usize, usize) -> usize,
        tensor_obj: impl Fn(usize, usize) -> usize,
        tensor_arr: impl Fn(usize, usize) -> usize,
        unit: usize,
    ) -> Result<Self> {
        let (n, m) = (objects.len(), arrows.len());
        if m > MAX_ARROWS {
            return Err(Error::CategoryTooLarge {
                arrows: m,
                limit: MAX_ARROWS,
            });
        }
        if n == 0 || unit >= n {
            return Err(Error::NotStrict("no unit object".into()));
        }
        let mut source = Vec::with_capacity(m);
        let mut target = Vec::with_capacity(m);
        let mut labels = Vec::with_capacity(m);
        for (s, t, label) in arrows {
            if s >= n || t >= n {
                return Err(Error::NotAGroupoid(format!(
                    "arrow {label} has an endpoint out of range"
                )));
            }
            source.push(s);
            target.push(t);
            labels.push(label);
        }
        let mut table = vec![NONE; m * m];
        for a in 0..m {
            for b in 0..m {
                if target[a] == source[b] {
                    let c = compose(a, b);
                    if c >= m || source[c] != source[a] || target[c] != target[b] {
                        return Err(Error::NotAGroupoid(format!(
                            "composite of {} and {} has the wrong endpoints",
                            labels[a], labels[b]
                        )));
                    }
                    table[a * m + b] = c as u32;
                }
            }
        }
        let mut tobj = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let z = tensor_obj(x, y);
                if z >= n {
                    return Err(Error::NotStrict(format!(
                        "tensor of objects {x} and {y} out of range"
                    )));
                }
                tobj.push(z);
            }
        }
        let mut tarr = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let c = tensor_arr(a, b);
                if c >= m
                    || source[c] != tobj[source[a] * n + source[b]]
                    || target[c] != tobj[target[a] * n + target[b]]
                {
                    return Err(Error::NotStrict(format!(
                        "tensor of arrows {} and {} has the wrong endpoints",
                        labels[a], labels[b]
                    )));
                }
                tarr.push(c);
            }
        }
        let mut cat = StrictGrCat {
            objects,
            arrows: labels,
            source,
            target,
            compose: table,
            identity: Vec::new(),
            inverse: Vec::new(),
            tensor_obj: tobj,
            tensor_arr: tarr,
            unit,
        };
        cat.check_groupoid()?;
        cat.check_monoidal()?;
        Ok(cat)
    }

    fn check_groupoid(&mut self) -> Result<()> {
        let (n, m) = (self.objects.len(), self.arrows.len());
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut into: Vec<Vec<usize>> = vec![Vec::new(); n];
        for a in 0..m {
            out[self.source[a]].push(a);
            into[self.target[a]].push(a);
        }
        for x in 0..n {
            let id = out[x]
                .iter()
                .copied()
                .find(|&e| {
                    self.target[e] == x
                        && out[x].iter().all(|&f| self.seq(e, f) == f)
                        && into[x].iter().all(|&f| self.seq(f, e) == f)
                })
                .ok_or_else(|| {
                    Error::NotAGroupoid(format!("object {} has no identity", self.objects[x]))
                })?;
            self.identity.push(id);
        }
        for a in 0..m {
            for &b in &out[self.target[a]] {
                for &c in &out[self.target[b]] {
                    if self.seq(self.seq(a, b), c) != self.seq(a, self.seq(b, c)) {
                        return Err(Error::NotAGroupoid(format!(
                            "composition not associative at ({}, {}, {})",
                            self.arrows[a], self.arrows[b], self.arrows[c]
                        )));
                    }
                }
            }
        }
        for a in 0..m {
            let (s, t) = (self.source[a], self.target[a]);
            let inv = out[t]
                .iter()
                .copied()
                .find(|&b| self.seq(a, b) == self.identity[s] && self.seq(b, a) == self.identity[t])
                .ok_or_else(|| {
                    Error::NotAGroupoid(format!("arrow {} is not invertible", self.arrows[a]))
                })?;
            self.inverse.push(inv);
        }
        Ok(())
    }

    fn check_monoidal(&self) -> Result<()> {
        let (n, m) = (self.objects.len(), self.arrows.len());
        let fail = |what: String| Err(Error::NotStrict(what));
        for x in 0..n {
            if self.tensor(self.unit, x) != x || self.tensor(x, self.unit) != x {
                return fail(format!("unit law fails on object {}", self.objects[x]));
            }
            for y in 0..n {
                if self.tensor_arrows(self.identity[x], self.identity[y])
                    != self.identity[self.tensor(x, y)]
                {
                    return fail(format!("id ⊗ id is not an identity at ({x}, {y})"));
                }
                for z in 0..n {
                    if self.tensor(self.tensor(x, y), z) != self.tensor(x, self.tensor(y, z)) {
                        return fail(format!("tensor not associative on objects ({x}, {y}, {z})"));
                    }
                }
            }
        }
        let unit_id = self.identity[self.unit];
        for a in 0..m {
            if self.tensor_arrows(unit_id, a) != a || self.tensor_arrows(a, unit_id) != a {
                return fail(format!("unit law fails on arrow {}", self.arrows[a]));
            }
        }
        // Interchange: (a;a′)⊗(b;b′) = (a⊗b);(a′⊗b′).
        let pairs: Vec<(usize, usize)> = (0..m)
            .flat_map(|a| {
                (0..m)
                    .filter(move |&b| self.compose[a * m + b] != NONE)
                    .map(move |b| (a, b))
            })
            .collect();
        for &(a, a2) in &pairs {
            for &(b, b2) in &pairs {
                let lhs = self.tensor_arrows(self.seq(a, a2), self.seq(b, b2));
                let rhs = self.seq(self.tensor_arrows(a, b), self.tensor_arrows(a2, b2));
                if lhs != rhs {
                    return fail(format!(
                        "interchange fails at ({}, {}, {}, {})",
                        self.arrows[a], self.arrows[a2], self.arrows[b], self.arrows[b2]
                    ));
                }
            }
        }
        // With interchange in hand every arrow triple factors into triples
        // with at most one non-identity entry, so those suffice.
        let ids = &self.identity;
        for a in 0..m {
            for x in 0..n {
                for y in 0..n {
                    let (i, j) = (ids[x], ids[y]);
                    for (p, q, r) in [(a, i, j), (i, a, j), (i, j, a)] {
                        let lhs = self.tensor_arrows(self.tensor_arrows(p, q), r);
                        let rhs = self.tensor_arrows(p, self.tensor_arrows(q, r));
                        if lhs != rhs {
                            return fail(format!(
                                "tensor not associative on arrows ({}, {}, {})",
                                self.arrows[p], self.arrows[q], self.arrows[r]
                            ));
                        }
                    }
                }
            }
        }
        for x in 0..n {
            let invertible =
                (0..n).any(|y| self.tensor(x, y) == self.unit && self.tensor(y, x) == self.unit);
            if !invertible {
                return Err(Error::NonInvertibleObject(x));
            }
        }
        Ok(())
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn object_label(&self, x: usize) -> &str {
        &self.objects[x]
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        &self.arrows[a]
    }

    pub fn source(&self, a: usize) -> usize {
        self.source[a]
    }

    pub fn target(&self, a: usize) -> usize {
        self.target[a]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identity[x]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a`, then `b`.
    ///
    /// # Panics
    /// If the arrows are not composable.
    pub fn seq(&self, a: usize, b: usize) -> usize {
        let c = self.compose[a * self.arrows.len() + b];
        assert!(
            c != NONE,
            "arrows {} and {} are not composable",
            self.arrows[a],
            self.arrows[b]
        );
        c as usize
    }

    pub fn tensor(&self, x: usize, y: usize) -> usize {
        self.tensor_obj[x * self.objects.len() + y]
    }

    pub fn tensor_arrows(&self, a: usize, b: usize) -> usize {
        self.tensor_arr[a * self.arrows.len() + b]
    }

    /// Arrows `x → y` in label order.
    pub fn hom(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.source[a] == x && self.target[a] == y)
    }
}

/// A strict Gr-category whose objects are automorphisms of `G` (tagged by
/// an element of an index group) and whose arrows are elements of `G`.
#[derive(Debug, Clone)]
pub struct AutCategory {
    pub category: StrictGrCat,
    pub structure: Arc<AutStructure>,
    /// `(tag, automorphism index)` of each object.
    pub objects: Vec<(usize, usize)>,
    /// The element of `G` carried by each arrow.
    pub element: Vec<usize>,
}

/// Builds the category with objects `(x, α)`, arrows
/// `Hom((x, α), (x, β)) = {c : α = μ_c∘β}`, composition `c` then `d` equal
/// to `c·d`, and tensor `(x,α)⊗(y,β) = (xy, α∘β)`,
/// `c⊗d = c·α′(d)` for `c: α → α′`.
///
/// The object list must be closed under this tensor and under the arrows;
/// objects keep the given order and arrows are ordered by
/// `(source, target, element)`.
pub fn automorphism_category(
    structure: Arc<AutStructure>,
    tags: &FiniteGroup,
    objects: Vec<(usize, usize)>,
    tag_name: impl Fn(usize) -> String,
) -> Result<AutCategory> {
    let st = &*structure;
    let g = &st.g;
    let count = objects.len() * g.order();
    if count > MAX_ARROWS {
        return Err(Error::CategoryTooLarge {
            arrows: count,
            limit: MAX_ARROWS,
        });
    }
    let index: BTreeMap<(usize, usize), usize> =
        objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
    let find = |o: (usize, usize)| {
        index
            .get(&o)
            .copied()
            .ok_or_else(|| Error::NotStrict(format!("object {o:?} missing from the object list")))
    };
    let aut = &st.aut.group;
    let mut arrows = Vec::with_capacity(count);
    for (i, &(x, alpha)) in objects.iter().enumerate() {
        let mut out = Vec::with_capacity(g.order());
        for c in g.elements() {
            // α = μ_c∘β  ⇔  β = μ_{c⁻¹}∘α
            let beta = aut.mul(st.inner.mu[g.inv(c)], alpha);
            out.push((find((x, beta))?, c));
        }
        out.sort_unstable();
        arrows.extend(out.into_iter().map(|(j, c)| (i, j, c)));
    }
    let mut arrow_at = vec![usize::MAX; objects.len() * g.order()];
    for (a, &(i, _, c)) in arrows.iter().enumerate() {
        arrow_at[i * g.order() + c] = a;
    }
    let tensor_obj = |i: usize, j: usize| {
        let ((x, alpha), (y, beta)) = (objects[i], objects[j]);
        index[&(tags.mul(x, y), aut.mul(alpha, beta))]
    };
    // Closure under tensor is checked up front so the table builders can
    // index directly.
    for i in 0..objects.len() {
        for j in 0..objects.len() {
            let ((x, alpha), (y, beta)) = (objects[i], objects[j]);
            find((tags.mul(x, y), aut.mul(alpha, beta)))?;
        }
    }
    let unit = find((tags.identity(), 0))?;
    let obj_labels = objects
        .iter()
        .map(|&(x, alpha)| format!("({}, a{alpha})", tag_name(x)))
        .collect();
    let arrow_labels = arrows
        .iter()
        .map(|&(i, j, c)| (i, j, format!("{}: {i}→{j}", g.name(c))))
        .collect();
    let element: Vec<usize> = arrows.iter().map(|&(_, _, c)| c).collect();
    let category = StrictGrCat::from_fns(
        obj_labels,
        arrow_labels,
        |a, b| arrow_at[arrows[a].0 * g.order() + g.mul(arrows[a].2, arrows[b].2)],
        tensor_obj,
        |a, b| {
            let (i, i2, c) = arrows[a];
            let (j, _, d) = arrows[b];
            let alpha2 = objects[i2].1;
            arrow_at[tensor_obj(i, j) * g.order() + g.mul(c, st.apply(alpha2, d))]
        },
        unit,
    )?;
    Ok(AutCategory {
        category,
        structure,
        objects,
        element,
    })
}

/// The strict Gr-category `A_G`: objects are the automorphisms of `G`.
pub fn aut_gr_category(structure: Arc<AutStructure>) -> Result<AutCategory> {
    let objects = (0..structure.aut.maps.len()).map(|a| (0, a)).collect();
    automorphism_category(structure, &FiniteGroup::trivial(), objects, |_| {
        String::new()
    })
    .map(|mut c| {
        c.category.objects = c.objects.iter().map(|&(_, a)| format!("a{a}")).collect();
        c
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn structure(g: FiniteGroup) -> Arc<AutStructure> {
        Arc::new(AutStructure::new(Arc::new(g)).unwrap())
    }

    #[test]
    fn trivial_group() {
        let c = aut_gr_category(structure(FiniteGroup::trivial())).unwrap();
        assert_eq!(
            (c.category.object_count(), c.category.arrow_count()),
            (1, 1)
        );
    }

    #[test]
    fn cyclic_four() {
        let c = aut_gr_category(structure(FiniteGroup::cyclic(4))).unwrap();
        let cat = &c.category;
        assert_eq!(cat.object_count(), 2);
        for x in 0..2 {
            for y in 0..2 {
                let n = cat.hom(x, y).count();
                assert_eq!(n, if x == y { 4 } else { 0 });
            }
        }
    }

    #[test]
    fn symmetric_three_is_connected() {
        let s3 = FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let c = aut_gr_category(structure(s3)).unwrap();
        let cat = &c.category;
        assert_eq!(cat.object_count(), 6);
        for x in 0..6 {
            for y in 0..6 {
                assert_eq!(cat.hom(x, y).count(), 1);
            }
        }
    }

    #[test]
    fn rejects_non_groupoid() {
        // f;f = f, so f has no inverse.
        let r = StrictGrCat::from_fns(
            vec!["X".into()],
            vec![(0, 0, "e".into()), (0, 0, "f".into())],
            |a, b| {
                if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    1
                }
            },
            |_, _| 0,
            |a, b| {
                if a == 0 {
                    b
                } else if b == 0 {
                    a
                } else {
                    1
                }
            },
            0,
        );
        assert!(matches!(r, Err(Error::NotAGroupoid(_))));
    }

    #[test]
    fn rejects_non_invertible_objects() {
        // Objects {I, X} with X⊗X = X and only identity arrows.
        let r = StrictGrCat::from_fns(
            vec!["I".into(), "X".into()],
            vec![(0, 0, "1".into()), (1, 1, "x".into())],
            |a, _| a,
            |x, y| x.max(y),
            |a, b| a.max(b),
            0,
        );
        assert!(matches!(r, Err(Error::NonInvertibleObject(1))));
    }
}
