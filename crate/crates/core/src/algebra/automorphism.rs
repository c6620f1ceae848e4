use alloc::collections::BTreeMap;
use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::abelian::{decompose, FiniteAbelianGroup};
use super::group::{automorphism_maps, FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// Largest `|G|` accepted by [`automorphism_group`].
pub const MAX_GROUP_ORDER: usize = 64;
/// Largest `|Aut(G)|` materialized as a composition table.
pub const MAX_AUT_ORDER: usize = 2048;

/// `Aut(G)` with a composition table: element `a∘b` is `group.mul(a, b)`,
/// and `maps[a]` is the image vector of automorphism `a`. Automorphisms are
/// sorted by image vector, so index 0 is the identity.
#[derive(Debug, Clone)]
pub struct AutGroup {
    pub group: Arc<FiniteGroup>,
    pub maps: Vec<Vec<usize>>,
}

impl AutGroup {
    pub fn automorphism(&self, g: &Arc<FiniteGroup>, a: usize) -> GroupHom {
        GroupHom::new(g.clone(), g.clone(), self.maps[a].clone()).expect("stored automorphism")
    }

    /// Index of the automorphism with the given image vector.
    pub fn index_of(&self, image: &[usize]) -> Option<usize> {
        self.maps.binary_search_by(|m| m.as_slice().cmp(image)).ok()
    }
}

pub fn automorphism_group(g: &FiniteGroup) -> Result<AutGroup> {
    if g.order() > MAX_GROUP_ORDER {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            limit: MAX_GROUP_ORDER,
        });
    }
    let maps = automorphism_maps(g, MAX_AUT_ORDER).ok_or(Error::GroupTooLarge {
        order: MAX_AUT_ORDER + 1,
        limit: MAX_AUT_ORDER,
    })?;
    Ok(aut_from_maps(g, maps))
}

/// Same result as [`automorphism_group`], found by testing all bijections.
pub fn automorphism_group_brute_force(g: &FiniteGroup) -> Result<AutGroup> {
    if g.order() > 8 {
        return Err(Error::GroupTooLarge {
            order: g.order(),
            limit: 8,
        });
    }
    Ok(aut_from_maps(
        g,
        super::group::automorphism_maps_brute_force(g),
    ))
}

fn aut_from_maps(g: &FiniteGroup, maps: Vec<Vec<usize>>) -> AutGroup {
    let gens = g.generating_set();
    let key = |m: &[usize]| gens.iter().map(|&x| m[x]).collect::<Vec<_>>();
    let lookup: BTreeMap<Vec<usize>, usize> =
        maps.iter().enumerate().map(|(i, m)| (key(m), i)).collect();
    let n = maps.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &maps {
        for b in &maps {
            let composite: Vec<usize> = gens.iter().map(|&x| a[b[x]]).collect();
            table.push(lookup[&composite]);
        }
    }
    let names = (0..n).map(|i| format!("a{i}")).collect();
    AutGroup {
        group: Arc::new(FiniteGroup::from_trusted(names, table, 0)),
        maps,
    }
}

/// Conjugation data: `mu[c]` is the index of `x ↦ c·x·c⁻¹`.
#[derive(Debug, Clone)]
pub struct InnerAutomorphisms {
    pub indices: Vec<usize>,
    pub mu: Vec<usize>,
}

pub fn inner_automorphisms(g: &FiniteGroup, aut: &AutGroup) -> InnerAutomorphisms {
    let mu: Vec<usize> = g
        .elements()
        .map(|c| {
            let image: Vec<usize> = g.elements().map(|x| g.mul(g.mul(c, x), g.inv(c))).collect();
            aut.index_of(&image)
                .expect("conjugation is an automorphism")
        })
        .collect();
    let mut indices = mu.clone();
    indices.sort_unstable();
    indices.dedup();
    InnerAutomorphisms { indices, mu }
}

/// `Out(G) = Aut(G)/Inn(G)` with a normalized section.
///
/// Cosets are numbered by their least automorphism index, `section[s]` is
/// that least index (so `section[identity] = 0`, the identity automorphism)
/// and `class_of[a]` is the coset of automorphism `a`.
#[derive(Debug, Clone)]
pub struct OuterQuotient {
    pub group: Arc<FiniteGroup>,
    pub section: Vec<usize>,
    pub class_of: Vec<usize>,
}

pub fn outer_quotient(aut: &AutGroup, inner: &InnerAutomorphisms) -> OuterQuotient {
    let n = aut.maps.len();
    let mut class_of = vec![usize::MAX; n];
    let mut section = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let id = section.len();
        section.push(a);
        for &i in &inner.indices {
            class_of[aut.group.mul(a, i)] = id;
        }
    }
    let m = section.len();
    let mut table = Vec::with_capacity(m * m);
    for &s in &section {
        for &t in &section {
            table.push(class_of[aut.group.mul(s, t)]);
        }
    }
    let names = (0..m).map(|i| format!("o{i}")).collect();
    OuterQuotient {
        group: Arc::new(FiniteGroup::from_trusted(names, table, class_of[0])),
        section,
        class_of,
    }
}

/// `Z(G)` in invariant-factor form with the embedding back into `G`.
#[derive(Debug, Clone)]
pub struct Center {
    pub group: FiniteAbelianGroup,
    /// `embed[encode(v)]` is the element of `G` with coordinates `v`.
    pub embed: Vec<usize>,
    /// Coordinates of each element of `G`, `None` off the center.
    pub coords: Vec<Option<Vec<u32>>>,
}

impl Center {
    pub fn element(&self, v: &[u32]) -> usize {
        self.embed[self.group.encode(v) as usize]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.coords[x].is_some()
    }
}

pub fn center(g: &FiniteGroup) -> Center {
    let members: Vec<usize> = g
        .elements()
        .filter(|&c| g.elements().all(|x| g.mul(c, x) == g.mul(x, c)))
        .collect();
    let mut local = vec![usize::MAX; g.order()];
    for (i, &c) in members.iter().enumerate() {
        local[c] = i;
    }
    let zero = local[g.identity()];
    let d = decompose(members.len(), zero, |a, b| {
        local[g.mul(members[a], members[b])]
    });
    let embed: Vec<usize> = d.to_element.iter().map(|&i| members[i]).collect();
    let mut coords = vec![None; g.order()];
    for (i, &c) in members.iter().enumerate() {
        coords[c] = Some(d.coords[i].clone());
    }
    Center {
        group: d.group,
        embed,
        coords,
    }
}

/// Everything about `Aut(G)` needed by the obstruction constructions.
#[derive(Debug, Clone)]
pub struct AutStructure {
    pub g: Arc<FiniteGroup>,
    pub aut: AutGroup,
    pub inner: InnerAutomorphisms,
    pub outer: OuterQuotient,
    pub center: Center,
}

impl AutStructure {
    pub fn new(g: Arc<FiniteGroup>) -> Result<Self> {
        let aut = automorphism_group(&g)?;
        let inner = inner_automorphisms(&g, &aut);
        let outer = outer_quotient(&aut, &inner);
        let center = center(&g);
        Ok(AutStructure {
            g,
            aut,
            inner,
            outer,
            center,
        })
    }

    /// Applies automorphism `a` to element `x`.
    #[inline]
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.aut.maps[a][x]
    }

    /// Elements `c` with `α = μ_c∘β`, in increasing order.
    pub fn connecting(&self, alpha: usize, beta: usize) -> Vec<usize> {
        let aut = &self.aut.group;
        self.g
            .elements()
            .filter(|&c| aut.mul(self.inner.mu[c], beta) == alpha)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    fn q8() -> FiniteGroup {
        // Quaternion units ±1, ±i, ±j, ±k as index sign*4 + unit.
        let unit_mul = |a: usize, b: usize| -> (bool, usize) {
            const T: [[(bool, usize); 4]; 4] = [
                [(false, 0), (false, 1), (false, 2), (false, 3)],
                [(false, 1), (true, 0), (false, 3), (true, 2)],
                [(false, 2), (true, 3), (true, 0), (false, 1)],
                [(false, 3), (false, 2), (true, 1), (true, 0)],
            ];
            T[a][b]
        };
        let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"]
            .map(Into::into)
            .to_vec();
        FiniteGroup::from_fn(names, |x, y| {
            let (neg, u) = unit_mul(x % 4, y % 4);
            let sign = (x / 4 + y / 4 + neg as usize) % 2;
            sign * 4 + u
        })
        .unwrap()
    }

    #[test]
    fn aut_of_small_groups() {
        assert_eq!(
            automorphism_group(&FiniteGroup::trivial())
                .unwrap()
                .maps
                .len(),
            1
        );
        let z4 = automorphism_group(&FiniteGroup::cyclic(4)).unwrap();
        assert_eq!(z4.maps, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
        assert_eq!(automorphism_group(&s3()).unwrap().maps.len(), 6);
        assert_eq!(automorphism_group(&q8()).unwrap().maps.len(), 24);
    }

    #[test]
    fn aut_closure_and_brute_force_agree() {
        for g in [FiniteGroup::cyclic(4), s3(), q8(), FiniteGroup::cyclic(8)] {
            let a = automorphism_group(&g).unwrap();
            let b = automorphism_group_brute_force(&g).unwrap();
            assert_eq!(a.maps, b.maps);
            for x in 0..a.maps.len() {
                for y in 0..a.maps.len() {
                    let comp: Vec<usize> = g.elements().map(|e| a.maps[x][a.maps[y][e]]).collect();
                    assert_eq!(a.maps[a.group.mul(x, y)], comp);
                }
            }
        }
    }

    #[test]
    fn inner_outer_center() {
        let g = s3();
        let aut = automorphism_group(&g).unwrap();
        let inn = inner_automorphisms(&g, &aut);
        assert_eq!(inn.indices.len(), 6);
        let out = outer_quotient(&aut, &inn);
        assert_eq!(out.group.order(), 1);
        assert_eq!(center(&g).group.order(), 1);

        let z4 = FiniteGroup::cyclic(4);
        let aut = automorphism_group(&z4).unwrap();
        let inn = inner_automorphisms(&z4, &aut);
        assert_eq!(inn.indices, vec![0]);
        assert!(inn.mu.iter().all(|&m| m == 0));
        let out = outer_quotient(&aut, &inn);
        assert_eq!(out.group.order(), 2);
        assert_eq!(out.section, vec![0, 1]);
        assert_eq!(center(&z4).group.invariant_factors(), &[4]);

        let c = center(&q8());
        assert_eq!(c.group.invariant_factors(), &[2]);
        assert_eq!(c.element(&[1]), 4);
    }
}
