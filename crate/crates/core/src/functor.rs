//! Functors of type `(φ, f)` between Gr-category types: obstruction,
//! realizability, classification up to congruence and automorphisms.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::{AdditiveMap, FiniteGroup, GroupHom, PiModule};
use crate::cohomology::{classes_of, cocycles, is_cocycle, solve_coboundary, Cochain, FullCochain};
use crate::error::{Error, Result};
use crate::gr::GrType;

/// What [`validate_pair`] found wrong with a candidate `(φ, f)`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PairReport {
    pub phi: Option<Error>,
    pub f: Option<Error>,
    /// `(x, i)` with `f(x·eᵢ) ≠ φ(x)·f(eᵢ)`.
    pub equivariance_failures: Vec<(usize, usize)>,
}

impl PairReport {
    pub fn is_valid(&self) -> bool {
        self.phi.is_none() && self.f.is_none() && self.equivariance_failures.is_empty()
    }
}

/// Checks that `φ` is a homomorphism `Π → Π′`, `f` an additive map
/// `A → A′`, and `f(x·a) = φ(x)·f(a)`.
pub fn validate_pair(
    source: &GrType,
    target: &GrType,
    phi: &[usize],
    f: &[Vec<u32>],
) -> PairReport {
    let mut report = PairReport::default();
    let hom = GroupHom::new(source.pi().clone(), target.pi().clone(), phi.to_vec());
    let map = AdditiveMap::new(
        source.carrier().clone(),
        target.carrier().clone(),
        f.to_vec(),
    );
    if let (Ok(hom), Ok(map)) = (&hom, &map) {
        let pulled = target.module().pullback(hom).expect("target group matches");
        for x in source.pi().elements() {
            for i in 0..source.carrier().rank() {
                let b = source.carrier().basis(i);
                if map.apply(&source.module().act(x, &b)) != pulled.act(x, &map.apply(&b)) {
                    report.equivariance_failures.push((x, i));
                }
            }
        }
    }
    report.phi = hom.err();
    report.f = map.err();
    report
}

/// A functor of type `(φ, f)`, optionally with a monoidal structure `g`
/// (a normalized 2-cochain over `A′` pulled back along `φ`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorData {
    source: GrType,
    target: GrType,
    phi: GroupHom,
    f: AdditiveMap,
    pulled: PiModule,
    g: Option<Cochain>,
}

impl FunctorData {
    pub fn new(source: GrType, target: GrType, phi: &[usize], f: &[Vec<u32>]) -> Result<Self> {
        let report = validate_pair(&source, &target, phi, f);
        if let Some(e) = report.phi.or(report.f) {
            return Err(Error::InvalidPair(format!("{e}")));
        }
        if let Some((x, i)) = report.equivariance_failures.first() {
            return Err(Error::InvalidPair(format!(
                "f is not equivariant at ({x}, e{i})"
            )));
        }
        let phi = GroupHom::new(source.pi().clone(), target.pi().clone(), phi.to_vec())?;
        let f = AdditiveMap::new(
            source.carrier().clone(),
            target.carrier().clone(),
            f.to_vec(),
        )?;
        let pulled = target.module().pullback(&phi)?;
        Ok(FunctorData {
            source,
            target,
            phi,
            f,
            pulled,
            g: None,
        })
    }

    /// The identity functor of a type.
    pub fn identity(t: &GrType) -> Self {
        let phi: Vec<usize> = t.pi().elements().collect();
        let f: Vec<Vec<u32>> = (0..t.carrier().rank())
            .map(|i| t.carrier().basis(i))
            .collect();
        Self::new(t.clone(), t.clone(), &phi, &f).expect("identity pair is valid")
    }

    /// Attaches a monoidal structure; it must be normalized and satisfy
    /// [`check_monoidal`].
    pub fn with_g(&self, g: Cochain) -> Result<Self> {
        if g.degree() != 2 {
            return Err(Error::InvalidPair(format!(
                "monoidal structure has degree {}",
                g.degree()
            )));
        }
        let report = check_monoidal(self, &g.to_full(&self.pulled));
        if let Some(t) = report.failures.first() {
            return Err(Error::InvalidPair(format!(
                "monoidal equation fails at {t:?}"
            )));
        }
        Ok(FunctorData {
            g: Some(g),
            ..self.clone()
        })
    }

    pub fn source(&self) -> &GrType {
        &self.source
    }

    pub fn target(&self) -> &GrType {
        &self.target
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    pub fn f(&self) -> &AdditiveMap {
        &self.f
    }

    pub fn g(&self) -> Option<&Cochain> {
        self.g.as_ref()
    }

    /// `A′` as a `Π`-module through `φ`.
    pub fn pulled_module(&self) -> &PiModule {
        &self.pulled
    }

    pub fn pi(&self) -> &Arc<FiniteGroup> {
        self.source.pi()
    }

    fn same_signature(&self, other: &FunctorData) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.phi == other.phi
            && self.f == other.f
    }
}

/// `k = φ*ξ′ − f_*ξ` over the pulled-back module.
pub fn obstruction(func: &FunctorData) -> Cochain {
    let m = &func.pulled;
    let a = m.carrier();
    let (src, tgt) = (&func.source, &func.target);
    let k = Cochain::from_fn(m, 3, |t| {
        let image: Vec<usize> = t.iter().map(|&x| func.phi.apply(x)).collect();
        let pulled = tgt.xi().value(tgt.module(), &image);
        let pushed = func.f.apply(&src.xi().value(src.module(), t));
        a.sub(&pulled, &pushed)
    });
    assert!(
        is_cocycle(m, &k),
        "obstruction of a valid pair must be a 3-cocycle"
    );
    k
}

/// A monoidal structure `g` with `δg = k` when the obstruction class
/// vanishes.
pub fn realizable(func: &FunctorData) -> Result<Option<Cochain>> {
    let k = obstruction(func);
    let Some(g) = solve_coboundary(&func.pulled, &k)? else {
        return Ok(None);
    };
    let report = check_monoidal(func, &g.to_full(&func.pulled));
    assert!(
        report.is_valid(),
        "coboundary witness must satisfy the monoidal equation"
    );
    Ok(Some(g))
}

/// Violations of the monoidal-structure equations for a candidate `g`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonoidalReport {
    /// `(x, y, z)` where
    /// `φ(x)·g(y,z) + g(x,yz) + f(ξ(x,y,z)) = ξ′(φx,φy,φz) + g(x,y) + g(xy,z)` fails.
    pub failures: Vec<[usize; 3]>,
    /// Pairs containing the identity where `g` is nonzero.
    pub unit_failures: Vec<Vec<usize>>,
}

impl MonoidalReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty() && self.unit_failures.is_empty()
    }
}

/// Evaluates the monoidal equation on every triple, directly rather than
/// through the coboundary operator.
pub fn check_monoidal(func: &FunctorData, g: &FullCochain) -> MonoidalReport {
    let m = &func.pulled;
    let pi = func.pi();
    let a = m.carrier();
    let (src, tgt) = (&func.source, &func.target);
    let mut report = MonoidalReport {
        unit_failures: g.normalization_failures(m),
        ..Default::default()
    };
    for x in pi.elements() {
        for y in pi.elements() {
            for z in pi.elements() {
                let lhs = a.add(
                    &a.add(&m.act(x, g.value(&[y, z])), g.value(&[x, pi.mul(y, z)])),
                    &func.f.apply(&src.xi().value(src.module(), &[x, y, z])),
                );
                let image = [func.phi.apply(x), func.phi.apply(y), func.phi.apply(z)];
                let rhs = a.add(
                    &a.add(&tgt.xi().value(tgt.module(), &image), g.value(&[x, y])),
                    g.value(&[pi.mul(x, y), z]),
                );
                if lhs != rhs {
                    report.failures.push([x, y, z]);
                }
            }
        }
    }
    report
}

/// One representative `g₀ + z` per congruence class, `z` running over the
/// canonical classes of `H²(Π, A′)`. Empty when not realizable.
pub fn classify(func: &FunctorData) -> Result<Vec<FunctorData>> {
    let Some(g0) = realizable(func)? else {
        return Ok(Vec::new());
    };
    let m = &func.pulled;
    classes_of(m, 2)?
        .into_iter()
        .map(|z| func.with_g(g0.add(m, &z)))
        .collect()
}

/// A natural isomorphism `α` with `g − g′ = δα`, if the two monoidal
/// structures are congruent.
pub fn congruent(a: &FunctorData, b: &FunctorData) -> Result<Option<Cochain>> {
    if !a.same_signature(b) {
        return Err(Error::SignatureMismatch);
    }
    let (Some(g), Some(g2)) = (&a.g, &b.g) else {
        return Err(Error::InvalidPair(
            "congruence needs monoidal structures on both functors".into(),
        ));
    };
    solve_coboundary(&a.pulled, &g.sub(&a.pulled, g2))
}

/// The monoidal automorphisms of `F`: all normalized 1-cocycles over `A′`.
pub fn automorphisms(func: &FunctorData) -> Result<Vec<Cochain>> {
    cocycles(&func.pulled, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteAbelianGroup;
    use alloc::vec;

    fn module(a: u32, negate: bool) -> PiModule {
        let act = if negate { a - 1 } else { 1 };
        PiModule::new(
            Arc::new(FiniteGroup::cyclic(2)),
            FiniteAbelianGroup::cyclic(a),
            vec![vec![vec![1]], vec![vec![act]]],
        )
        .unwrap()
    }

    fn nonzero_xi() -> GrType {
        let m = module(2, false);
        let mut xi = Cochain::zero(&m, 3);
        xi.set(&m, &[1, 1, 1], &[1]).unwrap();
        GrType::new(m, xi).unwrap()
    }

    #[test]
    fn pair_validation() {
        let neg = GrType::strict(module(4, true));
        let triv = GrType::strict(module(4, false));
        assert!(validate_pair(&neg, &neg, &[0, 1], &[vec![1]]).is_valid());
        assert!(validate_pair(&neg, &neg, &[0, 0], &[vec![0]]).is_valid());
        let r = validate_pair(&neg, &triv, &[0, 1], &[vec![1]]);
        assert_eq!(r.equivariance_failures, vec![(1, 0)]);
        assert!(validate_pair(&neg, &neg, &[1, 1], &[vec![1]]).phi.is_some());
    }

    #[test]
    fn obstruction_and_realizability() {
        let zero = GrType::strict(module(2, false));
        let f = FunctorData::new(zero.clone(), nonzero_xi(), &[0, 1], &[vec![1]]).unwrap();
        let k = obstruction(&f);
        assert_eq!(k.value(f.pulled_module(), &[1, 1, 1]), vec![1]);
        assert_eq!(realizable(&f).unwrap(), None);
        assert!(classify(&f).unwrap().is_empty());

        let id = FunctorData::identity(&nonzero_xi());
        assert!(obstruction(&id).is_zero());
        assert!(realizable(&id).unwrap().is_some());
    }

    #[test]
    fn classification_and_congruence() {
        let t = GrType::strict(module(2, false));
        let id = FunctorData::identity(&t);
        let classes = classify(&id).unwrap();
        assert_eq!(classes.len(), 2);
        assert_eq!(congruent(&classes[0], &classes[1]).unwrap(), None);
        assert!(congruent(&classes[0], &classes[0])
            .unwrap()
            .is_some_and(|a| a.is_zero()));
        assert_eq!(automorphisms(&id).unwrap().len(), 2);

        let neg = FunctorData::identity(&GrType::strict(module(4, true)));
        assert_eq!(classify(&neg).unwrap().len(), 2);
        assert_eq!(automorphisms(&neg).unwrap().len(), 4);
        assert_eq!(
            congruent(
                &classes[0],
                &neg.with_g(Cochain::zero(neg.pulled_module(), 2)).unwrap()
            ),
            Err(Error::SignatureMismatch)
        );
    }

    #[test]
    fn monoidal_check_by_hand() {
        let t = GrType::strict(module(2, false));
        let id = FunctorData::identity(&t);
        let m = id.pulled_module().clone();
        let mut g = Cochain::zero(&m, 2);
        g.set(&m, &[1, 1], &[1]).unwrap();
        assert!(check_monoidal(&id, &g.to_full(&m)).is_valid());
        let mut bad = FullCochain::zero(&m, 2);
        bad.set(&[1, 0], &[1]);
        assert_eq!(check_monoidal(&id, &bad).unit_failures, vec![vec![1, 0]]);
    }
}
