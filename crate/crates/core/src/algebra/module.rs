use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::abelian::FiniteAbelianGroup;
use super::group::{FiniteGroup, GroupHom};
use crate::error::{Error, Result};

/// An additive map between finite abelian groups, given by the images of
/// the canonical generators of the source.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdditiveMap {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    images: Vec<Vec<u32>>,
}

impl AdditiveMap {
    pub fn new(
        source: FiniteAbelianGroup,
        target: FiniteAbelianGroup,
        images: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if images.len() != source.rank() {
            return Err(Error::NotAdditive(format!(
                "{} generator images for a source of rank {}",
                images.len(),
                source.rank()
            )));
        }
        for (i, (img, &d)) in images.iter().zip(source.invariant_factors()).enumerate() {
            if !target.is_element(img) {
                return Err(Error::NotAdditive(format!(
                    "image {img:?} of generator {i} is not an element"
                )));
            }
            if !FiniteAbelianGroup::is_zero(&target.scale(img, d as i64)) {
                return Err(Error::NotAdditive(format!(
                    "image {img:?} of generator {i} has order not dividing {d}"
                )));
            }
        }
        Ok(AdditiveMap {
            source,
            target,
            images,
        })
    }

    pub fn identity(a: &FiniteAbelianGroup) -> Self {
        AdditiveMap {
            source: a.clone(),
            target: a.clone(),
            images: (0..a.rank()).map(|i| a.basis(i)).collect(),
        }
    }

    pub fn zero(source: &FiniteAbelianGroup, target: &FiniteAbelianGroup) -> Self {
        AdditiveMap {
            source: source.clone(),
            target: target.clone(),
            images: (0..source.rank()).map(|_| target.zero()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn images(&self) -> &[Vec<u32>] {
        &self.images
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let mut acc = self.target.zero();
        for (&c, img) in v.iter().zip(&self.images) {
            acc = self.target.add(&acc, &self.target.scale(img, c as i64));
        }
        acc
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = alloc::vec![false; self.target.order() as usize];
        self.source.elements().all(|v| {
            !core::mem::replace(
                &mut seen[self.target.encode(&self.apply(&v)) as usize],
                true,
            )
        })
    }
}

/// A finite abelian group with a left action of `Π` by automorphisms.
///
/// The action of `x` is stored as the images of the canonical generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiModule {
    group: Arc<FiniteGroup>,
    carrier: FiniteAbelianGroup,
    action: Vec<Vec<Vec<u32>>>,
    nonidentity: Vec<usize>,
    position: Vec<usize>,
}

impl PiModule {
    /// `action[x][i]` is the image of generator `i` under `x`.
    pub fn new(
        group: Arc<FiniteGroup>,
        carrier: FiniteAbelianGroup,
        action: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        if action.len() != group.order() {
            return Err(Error::NotAnAction(format!(
                "action given for {} elements of a group of order {}",
                action.len(),
                group.order()
            )));
        }
        for (x, images) in action.iter().enumerate() {
            AdditiveMap::new(carrier.clone(), carrier.clone(), images.clone())
                .map_err(|e| Error::NotAdditive(format!("element {x}: {e}")))?;
        }
        let module = Self::assemble(group, carrier, action);
        let e = module.group.identity();
        for i in 0..module.carrier.rank() {
            let b = module.carrier.basis(i);
            if module.act(e, &b) != b {
                return Err(Error::NotAnAction(format!("identity moves generator {i}")));
            }
        }
        for x in module.group.elements() {
            for y in module.group.elements() {
                let xy = module.group.mul(x, y);
                for i in 0..module.carrier.rank() {
                    let b = module.carrier.basis(i);
                    if module.act(xy, &b) != module.act(x, &module.act(y, &b)) {
                        return Err(Error::NotAnAction(format!(
                            "({x}·{y})·e{i} differs from {x}·({y}·e{i})"
                        )));
                    }
                }
            }
        }
        Ok(module)
    }

    fn assemble(
        group: Arc<FiniteGroup>,
        carrier: FiniteAbelianGroup,
        action: Vec<Vec<Vec<u32>>>,
    ) -> Self {
        let nonidentity: Vec<usize> = group
            .elements()
            .filter(|&x| x != group.identity())
            .collect();
        let mut position = alloc::vec![usize::MAX; group.order()];
        for (i, &x) in nonidentity.iter().enumerate() {
            position[x] = i;
        }
        PiModule {
            group,
            carrier,
            action,
            nonidentity,
            position,
        }
    }

    pub fn trivial(group: Arc<FiniteGroup>, carrier: FiniteAbelianGroup) -> Self {
        let id: Vec<Vec<u32>> = (0..carrier.rank()).map(|i| carrier.basis(i)).collect();
        let action = group.elements().map(|_| id.clone()).collect();
        Self::assemble(group, carrier, action)
    }

    /// Builds a module from a closure giving the image of each generator.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        carrier: FiniteAbelianGroup,
        act: impl Fn(usize, usize) -> Vec<u32>,
    ) -> Result<Self> {
        let action = group
            .elements()
            .map(|x| (0..carrier.rank()).map(|i| act(x, i)).collect())
            .collect();
        Self::new(group, carrier, action)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn carrier(&self) -> &FiniteAbelianGroup {
        &self.carrier
    }

    pub fn action_images(&self, x: usize) -> &[Vec<u32>] {
        &self.action[x]
    }

    /// `x·v`.
    pub fn act(&self, x: usize, v: &[u32]) -> Vec<u32> {
        let a = &self.carrier;
        let mut acc = a.zero();
        for (&c, img) in v.iter().zip(&self.action[x]) {
            if c != 0 {
                acc = a.add(&acc, &a.scale(img, c as i64));
            }
        }
        acc
    }

    pub fn is_trivial_action(&self) -> bool {
        self.group
            .elements()
            .all(|x| (0..self.carrier.rank()).all(|i| self.action[x][i] == self.carrier.basis(i)))
    }

    /// Non-identity elements of `Π` in index order.
    pub fn nonidentity(&self) -> &[usize] {
        &self.nonidentity
    }

    /// Position of `x` among the non-identity elements, `None` for the identity.
    #[inline]
    pub fn position(&self, x: usize) -> Option<usize> {
        let p = self.position[x];
        (p != usize::MAX).then_some(p)
    }

    /// `A′` viewed as a `Π`-module through `φ: Π → Π′`.
    pub fn pullback(&self, phi: &GroupHom) -> Result<PiModule> {
        if **phi.target() != *self.group {
            return Err(Error::SourceMismatch(
                "homomorphism target is not the acting group of the module".into(),
            ));
        }
        let action = phi
            .source()
            .elements()
            .map(|x| self.action[phi.apply(x)].clone())
            .collect();
        Ok(Self::assemble(
            phi.source().clone(),
            self.carrier.clone(),
            action,
        ))
    }

    /// Whether `f` commutes with the actions: `f(x·a) = x·f(a)`. Returns the
    /// first failing `(x, generator)` pair.
    pub fn equivariance_failure(
        &self,
        f: &AdditiveMap,
        target: &PiModule,
    ) -> Option<(usize, usize)> {
        for x in self.group.elements() {
            for i in 0..self.carrier.rank() {
                let b = self.carrier.basis(i);
                if f.apply(&self.act(x, &b)) != target.act(x, &f.apply(&b)) {
                    return Some((x, i));
                }
            }
        }
        None
    }
}
