//! Gr-category types `(Π, A, ξ)`, finite strict Gr-categories, the
//! category `A_G` of a group and reduction of strict categories to types.

mod reduce;
mod strict;

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use reduce::{
    compare_reductions, compare_reductions_with, outer_module, reduce_strict, reduce_strict_with,
    reduced_type_from, reduced_type_of_group, Reduction, Stick, TypeComparison,
};
pub use strict::{aut_gr_category, automorphism_category, AutCategory, StrictGrCat, MAX_ARROWS};

use crate::algebra::{AdditiveMap, FiniteAbelianGroup, FiniteGroup, GroupHom, PiModule};
use crate::cohomology::{coboundary, tuples, Cochain, FullCochain};
use crate::error::{Error, Result};

/// A reduced Gr-category: `Π` and `A` come from the module, `ξ` is a
/// normalized 3-cocycle giving the associativity constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrType {
    module: PiModule,
    xi: Cochain,
}

impl GrType {
    pub fn new(module: PiModule, xi: Cochain) -> Result<Self> {
        if xi.degree() != 3 {
            return Err(Error::Shape(format!(
                "associativity cochain has degree {}",
                xi.degree()
            )));
        }
        if xi.is_zero() {
            return Ok(GrType { module, xi });
        }
        let d = coboundary(&module, &xi)?;
        if let Some((t, _)) = d.entries(&module).find(|(_, v)| v.iter().any(|&x| x != 0)) {
            return Err(Error::NotACocycle(t));
        }
        Ok(GrType { module, xi })
    }

    /// The type with trivial associativity constraint.
    pub fn strict(module: PiModule) -> Self {
        let xi = Cochain::zero(&module, 3);
        GrType { module, xi }
    }

    pub fn module(&self) -> &PiModule {
        &self.module
    }

    pub fn xi(&self) -> &Cochain {
        &self.xi
    }

    pub fn pi(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn carrier(&self) -> &FiniteAbelianGroup {
        self.module.carrier()
    }

    pub fn with_xi(&self, xi: Cochain) -> Result<Self> {
        Self::new(self.module.clone(), xi)
    }
}

/// An arrow `(s, u): s → s` of a type; `u ∈ A`.
pub type TypeArrow = (usize, Vec<u32>);

/// `(s,u)⊗(t,v) = (st, u + s·v)`.
pub fn tensor_arrows(m: &PiModule, (s, u): (usize, &[u32]), (t, v): (usize, &[u32])) -> TypeArrow {
    (m.group().mul(s, t), m.carrier().add(u, &m.act(s, v)))
}

/// Composite of two endomorphisms of the same object.
fn compose(m: &PiModule, (s, u): &TypeArrow, (t, v): &TypeArrow) -> TypeArrow {
    debug_assert_eq!(s, t);
    (*s, m.carrier().add(u, v))
}

/// Violations found by [`validate_gr_type`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GrTypeReport {
    /// `(x, y, z, w)` where the two pentagon paths differ.
    pub pentagon_failures: Vec<[usize; 4]>,
    /// `(x, z)` with `ξ(x, 1, z) ≠ 0`.
    pub triangle_failures: Vec<[usize; 2]>,
    /// Every tuple containing the identity with a nonzero value.
    pub normalization_failures: Vec<Vec<usize>>,
}

impl GrTypeReport {
    pub fn is_valid(&self) -> bool {
        self.pentagon_failures.is_empty()
            && self.triangle_failures.is_empty()
            && self.normalization_failures.is_empty()
    }
}

/// Checks the pentagon and triangle axioms of the skeletal category with
/// associativity `a_{x,y,z} = (xyz, ξ(x,y,z)): x(yz) → (xy)z`.
///
/// The pentagon is evaluated by composing and tensoring arrows, not by
/// calling the coboundary operator, so it can serve as a check on it.
pub fn validate_gr_type(m: &PiModule, xi: &FullCochain) -> GrTypeReport {
    let g = m.group();
    let a = m.carrier();
    let assoc = |x: usize, y: usize, z: usize| -> TypeArrow {
        (g.product(&[x, y, z]), xi.value(&[x, y, z]).to_vec())
    };
    let id = |x: usize| -> TypeArrow { (x, a.zero()) };
    let mut report = GrTypeReport {
        normalization_failures: xi.normalization_failures(m),
        ..Default::default()
    };
    let e = g.identity();
    for x in g.elements() {
        for z in g.elements() {
            if xi.value(&[x, e, z]).iter().any(|&v| v != 0) {
                report.triangle_failures.push([x, z]);
            }
        }
    }
    for x in g.elements() {
        for y in g.elements() {
            for z in g.elements() {
                for w in g.elements() {
                    // x(y(zw)) → (xy)(zw) → ((xy)z)w
                    let top = compose(m, &assoc(x, y, g.mul(z, w)), &assoc(g.mul(x, y), z, w));
                    // x(y(zw)) → x((yz)w) → (x(yz))w → ((xy)z)w
                    let (s0, u0) = id(x);
                    let (s1, u1) = assoc(y, z, w);
                    let left = tensor_arrows(m, (s0, &u0), (s1, &u1));
                    let (s2, u2) = assoc(x, y, z);
                    let (s3, u3) = id(w);
                    let right = tensor_arrows(m, (s2, &u2), (s3, &u3));
                    let bottom = compose(m, &compose(m, &left, &assoc(x, g.mul(y, z), w)), &right);
                    if top != bottom {
                        report.pentagon_failures.push([x, y, z, w]);
                    }
                }
            }
        }
    }
    report
}

/// Moves a cochain along an isomorphism of modules given by a group
/// isomorphism `pi: Π → Π′` and an equivariant additive isomorphism
/// `a: A → A′`: the result is `c′(πx, …) = a(c(x, …))`.
pub fn transport(
    src: &PiModule,
    dst: &PiModule,
    pi: &GroupHom,
    a: &AdditiveMap,
    c: &Cochain,
) -> Result<Cochain> {
    if **pi.source() != **src.group() || **pi.target() != **dst.group() || !pi.is_bijective() {
        return Err(Error::NotAnIsomorphism(
            "group map is not an isomorphism between the acting groups".into(),
        ));
    }
    if a.source() != src.carrier() || a.target() != dst.carrier() || !a.is_bijective() {
        return Err(Error::NotAnIsomorphism(
            "carrier map is not an isomorphism between the carriers".into(),
        ));
    }
    for x in src.group().elements() {
        for i in 0..src.carrier().rank() {
            let b = src.carrier().basis(i);
            if a.apply(&src.act(x, &b)) != dst.act(pi.apply(x), &a.apply(&b)) {
                return Err(Error::NotAnIsomorphism(format!(
                    "carrier map does not intertwine the actions at ({x}, e{i})"
                )));
            }
        }
    }
    let mut inverse = alloc::vec![0; pi.images().len()];
    for (x, &y) in pi.images().iter().enumerate() {
        inverse[y] = x;
    }
    Ok(Cochain::from_fn(dst, c.degree(), |t| {
        let pre: Vec<usize> = t.iter().map(|&y| inverse[y]).collect();
        a.apply(&c.value(src, &pre))
    }))
}

/// Tuples of non-identity elements where two cochains differ.
pub fn differing_tuples(m: &PiModule, a: &Cochain, b: &Cochain) -> Vec<Vec<usize>> {
    tuples(m, a.degree())
        .filter(|t| a.value(m, t) != b.value(m, t))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::is_cocycle;
    use alloc::vec;

    fn z2_module(a: u32, negate: bool) -> PiModule {
        let act = if negate { a - 1 } else { 1 };
        PiModule::new(
            Arc::new(FiniteGroup::cyclic(2)),
            FiniteAbelianGroup::cyclic(a),
            vec![vec![vec![1]], vec![vec![act]]],
        )
        .unwrap()
    }

    #[test]
    fn tensor_of_arrows() {
        let m = z2_module(4, true);
        assert_eq!(tensor_arrows(&m, (1, &[1]), (1, &[2])), (0, vec![3]));
        assert_eq!(tensor_arrows(&m, (0, &[0]), (1, &[3])), (1, vec![3]));
        let t = z2_module(4, false);
        assert_eq!(tensor_arrows(&t, (1, &[1]), (1, &[2])), (0, vec![3]));
    }

    #[test]
    fn pentagon_agrees_with_cocycle_condition() {
        let m = z2_module(2, false);
        // All 2^8 full 3-cochains on Z/2 with values in Z/2.
        for bits in 0u32..256 {
            let mut full = FullCochain::zero(&m, 3);
            for i in 0..8 {
                let t = [(i >> 2) & 1, (i >> 1) & 1, i & 1];
                full.set(&t, &[(bits >> i) & 1]);
            }
            let report = validate_gr_type(&m, &full);
            match full.normalize(&m) {
                Ok(xi) => {
                    assert!(report.normalization_failures.is_empty());
                    assert_eq!(report.pentagon_failures.is_empty(), is_cocycle(&m, &xi));
                }
                Err(_) => assert!(!report.is_valid()),
            }
        }
    }

    #[test]
    fn normalization_failure_is_reported() {
        let m = z2_module(2, false);
        let mut full = FullCochain::zero(&m, 3);
        full.set(&[1, 0, 1], &[1]);
        let report = validate_gr_type(&m, &full);
        assert_eq!(report.triangle_failures, vec![[1, 1]]);
        assert_eq!(report.normalization_failures, vec![vec![1, 0, 1]]);
    }

    #[test]
    fn nonzero_class_is_a_valid_type() {
        let m = z2_module(2, false);
        let mut xi = Cochain::zero(&m, 3);
        xi.set(&m, &[1, 1, 1], &[1]).unwrap();
        let t = GrType::new(m.clone(), xi.clone()).unwrap();
        assert!(validate_gr_type(&m, &t.xi().to_full(&m)).is_valid());
        let mut bad = Cochain::zero(&m, 2);
        bad.set(&m, &[1, 1], &[1]).unwrap();
        assert!(GrType::new(m, bad).is_err());
    }
}
