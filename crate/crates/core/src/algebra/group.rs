use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite group stored by its full multiplication table.
///
/// Elements are the indices `0..order`; `table[i * order + j]` is the index
/// of `i·j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    names: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a multiplication table and builds the group.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::Shape("empty table".into()));
        }
        if names.len() != n {
            return Err(Error::Shape(format!(
                "{} names for a table of order {n}",
                names.len()
            )));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Shape(format!("row {i} has length {}", row.len())));
            }
            for &e in row {
                if e >= n {
                    return Err(Error::Shape(format!("entry {e} in row {i} out of range")));
                }
                flat.push(e);
            }
        }
        check_latin(&flat, n)?;
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| flat[e * n + x] == x && flat[x * n + e] == x))
            .ok_or(Error::NoIdentity)?;
        let mut inverses = vec![0; n];
        for (x, inv) in inverses.iter_mut().enumerate() {
            *inv = (0..n)
                .find(|&y| flat[x * n + y] == identity && flat[y * n + x] == identity)
                .ok_or(Error::NoInverse(x))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::NotAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            names,
            table: flat,
            identity,
            inverses,
        })
    }

    /// Builds a group from a table already known to be a group (products
    /// of automorphisms, coset tables). Only debug builds re-check it.
    pub(crate) fn from_trusted(names: Vec<String>, table: Vec<usize>, identity: usize) -> Self {
        let n = names.len();
        debug_assert_eq!(table.len(), n * n);
        let mut inverses = vec![usize::MAX; n];
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y] == identity {
                    inverses[x] = y;
                    break;
                }
            }
        }
        debug_assert!(inverses.iter().all(|&i| i < n));
        FiniteGroup {
            names,
            table,
            identity,
            inverses,
        }
    }

    /// The group generated by permutations of `0..degree`, with elements in
    /// breadth-first discovery order from the identity (each element is
    /// multiplied on the right by each generator in turn).
    ///
    /// The product `p·q` is the composite "apply `q`, then `p`".
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::Shape(format!(
                    "permutation of length {} for degree {degree}",
                    g.len()
                )));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::Shape(format!("{g:?} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        let compose =
            |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
        let mut elements: Vec<Vec<usize>> = vec![(0..degree).collect()];
        let mut index: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
        index.insert(elements[0].clone(), 0);
        let mut next = 0;
        while next < elements.len() {
            for g in generators {
                let prod = compose(&elements[next], g);
                if !index.contains_key(&prod) {
                    index.insert(prod.clone(), elements.len());
                    elements.push(prod);
                }
            }
            next += 1;
        }
        let n = elements.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                table.push(index[&compose(a, b)]);
            }
        }
        let names = elements.iter().map(|p| cycle_notation(p)).collect();
        Ok(FiniteGroup::from_trusted(names, table, 0))
    }

    /// Builds and validates a group from a multiplication function.
    pub fn from_fn(names: Vec<String>, mul: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = names.len();
        let table = (0..n)
            .map(|a| (0..n).map(|b| mul(a, b)).collect())
            .collect();
        FiniteGroup::from_table(names, table)
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        FiniteGroup::from_trusted(vec!["e".into()], vec![0], 0)
    }

    /// The cyclic group `Z/n` with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        FiniteGroup::from_trusted(names, table, 0)
    }

    /// `G × H` with element `(a, b)` at index `a * |H| + b`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Self {
        let (m, n) = (g.order(), h.order());
        let mut names = Vec::with_capacity(m * n);
        for a in 0..m {
            for b in 0..n {
                names.push(format!("({},{})", g.name(a), h.name(b)));
            }
        }
        let mut table = Vec::with_capacity(m * m * n * n);
        for x in 0..m * n {
            for y in 0..m * n {
                table.push(g.mul(x / n, y / n) * n + h.mul(x % n, y % n));
            }
        }
        FiniteGroup::from_trusted(names, table, g.identity() * n + h.identity())
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The table as rows, the shape accepted by [`FiniteGroup::from_table`].
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.order())
            .map(|r| r.to_vec())
            .collect()
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.order()
    }

    /// Product of a sequence, evaluated left to right.
    pub fn product(&self, factors: &[usize]) -> usize {
        factors
            .iter()
            .fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Re-runs every group-axiom check on the stored table.
    pub fn validate(&self) -> Result<()> {
        FiniteGroup::from_table(self.names.clone(), self.rows()).map(|_| ())
    }

    /// Elements of the subgroup generated by `gens`, in discovery order.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![self.identity];
        seen[self.identity] = true;
        let mut next = 0;
        while next < out.len() {
            for &g in gens {
                let p = self.mul(out[next], g);
                if !seen[p] {
                    seen[p] = true;
                    out.push(p);
                }
            }
            next += 1;
        }
        out
    }

    /// A generating set built greedily: each step adds the element that
    /// enlarges the generated subgroup the most (ties go to the lowest index).
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut size = 1;
        while size < self.order() {
            let mut best = (0, usize::MAX);
            let mut span = vec![false; self.order()];
            for &x in &self.closure(&gens) {
                span[x] = true;
            }
            for x in self.elements() {
                if span[x] {
                    continue;
                }
                gens.push(x);
                let s = self.closure(&gens).len();
                gens.pop();
                if s > best.0 {
                    best = (s, x);
                }
            }
            gens.push(best.1);
            size = best.0;
        }
        gens
    }
}

fn check_latin(flat: &[usize], n: usize) -> Result<()> {
    for i in 0..n {
        let mut row = vec![false; n];
        let mut col = vec![false; n];
        for j in 0..n {
            let r = flat[i * n + j];
            if row[r] {
                return Err(Error::NotLatinSquare {
                    line: "row",
                    index: i,
                    element: r,
                });
            }
            row[r] = true;
            let c = flat[j * n + i];
            if col[c] {
                return Err(Error::NotLatinSquare {
                    line: "column",
                    index: i,
                    element: c,
                });
            }
            col[c] = true;
        }
    }
    Ok(())
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        let mut first = true;
        while !seen[x] {
            seen[x] = true;
            if !first {
                out.push(' ');
            }
            out.push_str(&x.to_string());
            first = false;
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// A homomorphism between finite groups, stored as the image of every
/// source element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<usize>,
    ) -> Result<Self> {
        if image.len() != source.order() {
            return Err(Error::Shape(format!(
                "{} images for a source of order {}",
                image.len(),
                source.order()
            )));
        }
        if let Some(&bad) = image.iter().find(|&&y| y >= target.order()) {
            return Err(Error::Shape(format!("image {bad} out of range")));
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(Error::NotAHomomorphism(a, b));
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            image,
        })
    }

    pub fn identity(g: Arc<FiniteGroup>) -> Self {
        let image = g.elements().collect();
        GroupHom {
            source: g.clone(),
            target: g,
            image,
        }
    }

    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let image = vec![target.identity(); source.order()];
        GroupHom {
            source,
            target,
            image,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.image
            .iter()
            .all(|&y| !core::mem::replace(&mut seen[y], true))
    }
}

/// Breadth-first words for the subgroups generated by growing prefixes of a
/// generating set. `steps[k]` lists `(element, parent, generator)` for the
/// elements first reached once generator `k` is available.
struct WordTree {
    gens: Vec<usize>,
    steps: Vec<Vec<(usize, usize, usize)>>,
    members: Vec<Vec<usize>>,
}

impl WordTree {
    fn new(g: &FiniteGroup, gens: Vec<usize>) -> Self {
        let mut seen = vec![false; g.order()];
        seen[g.identity()] = true;
        let mut reached = vec![g.identity()];
        let mut steps = Vec::new();
        let mut members = Vec::new();
        for k in 0..gens.len() {
            let mut new = Vec::new();
            let mut next = 0;
            while next < reached.len() {
                let x = reached[next];
                for (j, &gen) in gens[..=k].iter().enumerate() {
                    let y = g.mul(x, gen);
                    if !seen[y] {
                        seen[y] = true;
                        reached.push(y);
                        new.push((y, x, j));
                    }
                }
                next += 1;
            }
            steps.push(new);
            members.push(reached.clone());
        }
        WordTree {
            gens,
            steps,
            members,
        }
    }
}

/// Enumerates homomorphisms `source → target` by choosing images of a
/// generating set, checking relations incrementally as each generator is
/// added. `keep` filters candidate images per generator; the search stops
/// with `None` if more than `limit` maps are found.
fn search_homs(
    source: &FiniteGroup,
    target: &FiniteGroup,
    candidates: impl Fn(usize) -> Vec<usize>,
    injective: bool,
    limit: usize,
    stop_at_first: bool,
) -> Option<Vec<Vec<usize>>> {
    let tree = WordTree::new(source, source.generating_set());
    let mut found = Vec::new();
    let mut image = vec![usize::MAX; source.order()];
    image[source.identity()] = target.identity();
    let cands: Vec<Vec<usize>> = tree.gens.iter().map(|&g| candidates(g)).collect();

    fn extend(
        depth: usize,
        tree: &WordTree,
        cands: &[Vec<usize>],
        source: &FiniteGroup,
        target: &FiniteGroup,
        image: &mut Vec<usize>,
        injective: bool,
        found: &mut Vec<Vec<usize>>,
        limit: usize,
        stop_at_first: bool,
    ) -> bool {
        if depth == tree.gens.len() {
            found.push(image.clone());
            return found.len() <= limit && !(stop_at_first && !found.is_empty());
        }
        for &c in &cands[depth] {
            let gens = &tree.gens[..=depth];
            let gen_images: Vec<usize> = gens
                .iter()
                .enumerate()
                .map(|(j, &g)| if j == depth { c } else { image[g] })
                .collect();
            for &(y, parent, j) in &tree.steps[depth] {
                image[y] = target.mul(image[parent], gen_images[j]);
            }
            let ok = tree.members[depth].iter().all(|&x| {
                gens.iter()
                    .zip(&gen_images)
                    .all(|(&g, &gi)| image[source.mul(x, g)] == target.mul(image[x], gi))
            }) && (!injective || {
                let mut seen = vec![false; target.order()];
                tree.members[depth]
                    .iter()
                    .all(|&x| !core::mem::replace(&mut seen[image[x]], true))
            });
            if ok
                && !extend(
                    depth + 1,
                    tree,
                    cands,
                    source,
                    target,
                    image,
                    injective,
                    found,
                    limit,
                    stop_at_first,
                )
            {
                return false;
            }
            for &(y, _, _) in &tree.steps[depth] {
                image[y] = usize::MAX;
            }
        }
        true
    }

    let complete = extend(
        0,
        &tree,
        &cands,
        source,
        target,
        &mut image,
        injective,
        &mut found,
        limit,
        stop_at_first,
    );
    if !complete && !stop_at_first {
        return None;
    }
    Some(found)
}

/// Every homomorphism `source → target`, sorted by image vector.
pub fn homomorphisms(source: &FiniteGroup, target: &FiniteGroup) -> Vec<Vec<usize>> {
    let orders: Vec<usize> = target.elements().map(|y| target.element_order(y)).collect();
    let mut homs = search_homs(
        source,
        target,
        |g| {
            let n = source.element_order(g);
            target.elements().filter(|&y| n % orders[y] == 0).collect()
        },
        false,
        usize::MAX,
        false,
    )
    .unwrap_or_default();
    homs.sort();
    homs
}

/// An isomorphism `source → target` if one exists.
pub fn find_isomorphism(source: &FiniteGroup, target: &FiniteGroup) -> Option<Vec<usize>> {
    if source.order() != target.order() || source.is_abelian() != target.is_abelian() {
        return None;
    }
    let mut src_orders: Vec<usize> = source.elements().map(|x| source.element_order(x)).collect();
    let mut tgt_orders: Vec<usize> = target.elements().map(|x| target.element_order(x)).collect();
    let by_order = tgt_orders.clone();
    src_orders.sort_unstable();
    tgt_orders.sort_unstable();
    if src_orders != tgt_orders {
        return None;
    }
    search_homs(
        source,
        target,
        |g| {
            let n = source.element_order(g);
            target.elements().filter(|&y| by_order[y] == n).collect()
        },
        true,
        usize::MAX,
        true,
    )
    .and_then(|mut v| v.pop())
}

/// All automorphisms by generator-image search, or `None` past `limit`.
pub(crate) fn automorphism_maps(g: &FiniteGroup, limit: usize) -> Option<Vec<Vec<usize>>> {
    let orders: Vec<usize> = g.elements().map(|y| g.element_order(y)).collect();
    let mut maps = search_homs(
        g,
        g,
        |x| g.elements().filter(|&y| orders[y] == orders[x]).collect(),
        true,
        limit,
        false,
    )?;
    maps.sort();
    Some(maps)
}

/// All automorphisms by checking every bijection that fixes the identity.
/// Exponential; intended as an independent check for tiny groups.
pub fn automorphism_maps_brute_force(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let n = g.order();
    let others: Vec<usize> = g.elements().filter(|&x| x != g.identity()).collect();
    let mut perm = others.clone();
    let mut out = Vec::new();
    let mut c = vec![0usize; perm.len()];
    let check = |perm: &[usize], out: &mut Vec<Vec<usize>>| {
        let mut image = vec![0; n];
        image[g.identity()] = g.identity();
        for (&x, &y) in others.iter().zip(perm) {
            image[x] = y;
        }
        let hom = (0..n).all(|a| (0..n).all(|b| image[g.mul(a, b)] == g.mul(image[a], image[b])));
        if hom {
            out.push(image);
        }
    };
    // Heap's algorithm.
    check(&perm, &mut out);
    let mut i = 0;
    while i < perm.len() {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm, &mut out);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    #[test]
    fn trivial_and_z2_tables() {
        let t = FiniteGroup::from_table(vec!["e".into()], vec![vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let z2 =
            FiniteGroup::from_table(vec!["0".into(), "1".into()], vec![vec![0, 1], vec![1, 0]])
                .unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn s3_from_permutations_is_valid() {
        let g = s3();
        assert_eq!(g.order(), 6);
        g.validate().unwrap();
        assert!(!g.is_abelian());
        assert_eq!(g.name(0), "()");
    }

    #[test]
    fn rejects_bad_tables() {
        let names = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        assert!(matches!(
            FiniteGroup::from_table(names(2), vec![vec![0, 1], vec![1, 1]]),
            Err(Error::NotLatinSquare { .. })
        ));
        // x·y = −x−y on Z/3: a Latin square with no identity.
        assert_eq!(
            FiniteGroup::from_table(names(3), vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]])
                .unwrap_err(),
            Error::NoIdentity
        );
        // A loop of order 5 that is not associative.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(names(5), t),
            Err(Error::NotAssociative(..))
        ));
        assert!(matches!(
            FiniteGroup::from_table(names(3), vec![vec![0, 1], vec![1, 0]]),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn homomorphism_counts() {
        let z4 = FiniteGroup::cyclic(4);
        let z2 = FiniteGroup::cyclic(2);
        assert_eq!(homomorphisms(&z4, &z2).len(), 2);
        assert_eq!(homomorphisms(&z2, &z4).len(), 2);
        assert_eq!(homomorphisms(&s3(), &z2).len(), 2);
        assert_eq!(homomorphisms(&z2, &s3()).len(), 4);
    }

    #[test]
    fn generator_search_matches_bijection_search() {
        for g in [
            FiniteGroup::cyclic(4),
            s3(),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
        ] {
            assert_eq!(
                automorphism_maps(&g, usize::MAX).unwrap(),
                automorphism_maps_brute_force(&g)
            );
        }
    }

    #[test]
    fn isomorphism_detection() {
        let z6 = FiniteGroup::cyclic(6);
        let z2z3 = FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3));
        let iso = find_isomorphism(&z6, &z2z3).unwrap();
        GroupHom::new(Arc::new(z6.clone()), Arc::new(z2z3), iso).unwrap();
        assert!(find_isomorphism(&z6, &s3()).is_none());
    }
}
