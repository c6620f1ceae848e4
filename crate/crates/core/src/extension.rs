//! Abstract kernels `(Π, G, ψ)`, factor sets and their obstructions,
//! crossed-product extensions, and the strict Gr-category of a kernel.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{
    center, homomorphisms, AdditiveMap, AutStructure, FiniteAbelianGroup, FiniteGroup, GroupHom,
    PiModule,
};
use crate::cohomology::{coboundary_lattice, is_cocycle, solve_coboundary, Cochain};
use crate::error::{Error, Result};
use crate::gr::{
    automorphism_category, outer_module, reduce_strict, reduced_type_from, transport, AutCategory,
    GrType,
};

/// A homomorphism `ψ: Π → Out(G)`.
#[derive(Debug, Clone)]
pub struct AbstractKernel {
    pi: Arc<FiniteGroup>,
    structure: Arc<AutStructure>,
    psi: GroupHom,
}

impl AbstractKernel {
    pub fn new(pi: Arc<FiniteGroup>, structure: Arc<AutStructure>, psi: &[usize]) -> Result<Self> {
        let psi = GroupHom::new(pi.clone(), structure.outer.group.clone(), psi.to_vec())?;
        Ok(AbstractKernel { pi, structure, psi })
    }

    pub fn from_group(pi: Arc<FiniteGroup>, g: Arc<FiniteGroup>, psi: &[usize]) -> Result<Self> {
        Self::new(pi, Arc::new(AutStructure::new(g)?), psi)
    }

    pub fn pi(&self) -> &Arc<FiniteGroup> {
        &self.pi
    }

    pub fn g(&self) -> &Arc<FiniteGroup> {
        &self.structure.g
    }

    pub fn structure(&self) -> &Arc<AutStructure> {
        &self.structure
    }

    pub fn psi(&self) -> &GroupHom {
        &self.psi
    }

    /// `Z(G)` as a `Π`-module, `x·c = φ(x)(c)` for any lift `φ(x)` of `ψ(x)`.
    pub fn module(&self) -> PiModule {
        outer_module(&self.structure)
            .and_then(|m| m.pullback(&self.psi))
            .expect("center module of a valid kernel")
    }

    /// Automorphisms in the coset `ψ(x)`, in index order.
    fn coset(&self, x: usize) -> Vec<usize> {
        let target = self.psi.apply(x);
        let st = &self.structure;
        (0..st.aut.maps.len())
            .filter(|&a| st.outer.class_of[a] == target)
            .collect()
    }
}

/// A lift `φ: Π → Aut(G)` of `ψ` with `φ(x)∘φ(y) = μ_{f(x,y)}∘φ(xy)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSet {
    pub phi: Vec<usize>,
    /// `f(x, y)` at `x·|Π| + y`.
    pub f: Vec<usize>,
}

impl FactorSet {
    pub fn f(&self, x: usize, y: usize) -> usize {
        self.f[x * self.phi.len() + y]
    }

    /// Checks normalization and the defining relation on every pair.
    pub fn validate(&self, k: &AbstractKernel) -> Result<()> {
        let (pi, st) = (&k.pi, &k.structure);
        let (e, e_g) = (pi.identity(), k.g().identity());
        if self.phi.len() != pi.order() || self.f.len() != pi.order() * pi.order() {
            return Err(Error::InvalidFactorSet("wrong table sizes".into()));
        }
        if self.phi[e] != 0 {
            return Err(Error::InvalidFactorSet("φ(1) is not the identity".into()));
        }
        for x in pi.elements() {
            if st.outer.class_of[self.phi[x]] != k.psi.apply(x) {
                return Err(Error::InvalidFactorSet(format!(
                    "φ({x}) does not lie over ψ({x})"
                )));
            }
            for y in pi.elements() {
                if (x == e || y == e) && self.f(x, y) != e_g {
                    return Err(Error::InvalidFactorSet(format!(
                        "f({x}, {y}) is not the identity"
                    )));
                }
                let lhs = st.aut.group.mul(self.phi[x], self.phi[y]);
                let rhs = st
                    .aut
                    .group
                    .mul(st.inner.mu[self.f(x, y)], self.phi[pi.mul(x, y)]);
                if lhs != rhs {
                    return Err(Error::InvalidFactorSet(format!(
                        "φ({x})φ({y}) ≠ μ_f φ({x}{y})"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The factor set with `φ = H∘ψ` and each `f(x, y)` least possible.
pub fn factor_set(k: &AbstractKernel) -> FactorSet {
    factor_set_by(k, &mut |_| 0)
}

/// A factor set with every free choice made by `pick`, which receives the
/// candidates in increasing order and returns a position among them.
pub fn factor_set_by(k: &AbstractKernel, pick: &mut dyn FnMut(&[usize]) -> usize) -> FactorSet {
    let pi = &k.pi;
    let st = &k.structure;
    let phi: Vec<usize> = pi
        .elements()
        .map(|x| {
            if x == pi.identity() {
                return 0;
            }
            let coset = k.coset(x);
            coset[pick(&coset) % coset.len()]
        })
        .collect();
    let mut f = Vec::with_capacity(pi.order() * pi.order());
    for x in pi.elements() {
        for y in pi.elements() {
            if x == pi.identity() || y == pi.identity() {
                f.push(k.g().identity());
                continue;
            }
            let lhs = st.aut.group.mul(phi[x], phi[y]);
            let candidates = st.connecting(lhs, phi[pi.mul(x, y)]);
            f.push(candidates[pick(&candidates) % candidates.len()]);
        }
    }
    let fs = FactorSet { phi, f };
    fs.validate(k).expect("constructed factor set is valid");
    fs
}

/// The central `k(x,y,z)` with
/// `φ(x)[f(y,z)]·f(x,yz) = k(x,y,z)·f(x,y)·f(xy,z)`, as a 3-cocycle of `Π`
/// with values in `Z(G)`.
pub fn kernel_obstruction(k: &AbstractKernel, fs: &FactorSet) -> Result<Cochain> {
    let m = k.module();
    let (pi, g, st) = (&k.pi, k.g(), &k.structure);
    let mut failure = None;
    let obstruction = Cochain::from_fn(&m, 3, |t| {
        let (x, y, z) = (t[0], t[1], t[2]);
        let left = g.mul(st.apply(fs.phi[x], fs.f(y, z)), fs.f(x, pi.mul(y, z)));
        let right = g.mul(fs.f(x, y), fs.f(pi.mul(x, y), z));
        let value = g.mul(left, g.inv(right));
        match &st.center.coords[value] {
            Some(v) => v.clone(),
            None => {
                failure.get_or_insert_with(|| t.to_vec());
                m.carrier().zero()
            }
        }
    });
    if let Some(t) = failure {
        return Err(Error::CentralityViolation(t));
    }
    assert!(
        is_cocycle(&m, &obstruction),
        "kernel obstruction must be a 3-cocycle"
    );
    Ok(obstruction)
}

/// Replaces `f` by `f·c` with `c` central so that the obstruction cochain
/// vanishes identically. Fails when its class is nonzero.
pub fn adjust(k: &AbstractKernel, fs: &FactorSet) -> Result<FactorSet> {
    let m = k.module();
    let obstruction = kernel_obstruction(k, fs)?;
    let Some(alpha) = solve_coboundary(&m, &obstruction)? else {
        let t = obstruction
            .entries(&m)
            .find(|(_, v)| v.iter().any(|&x| x != 0))
            .map(|(t, _)| t)
            .unwrap_or_default();
        return Err(Error::ObstructionNonzero(t));
    };
    // Multiplying f by a central c adds δc to the obstruction.
    let (pi, g, z) = (&k.pi, k.g(), &k.structure.center);
    let mut f = fs.f.clone();
    for x in pi.elements() {
        for y in pi.elements() {
            let c = z.element(&m.carrier().neg(&alpha.value(&m, &[x, y])));
            f[x * pi.order() + y] = g.mul(fs.f(x, y), c);
        }
    }
    let adjusted = FactorSet {
        phi: fs.phi.clone(),
        f,
    };
    adjusted.validate(k)?;
    debug_assert!(kernel_obstruction(k, &adjusted)?.is_zero());
    Ok(adjusted)
}

/// A crossed product `E = G × Π` with its structure maps.
#[derive(Debug, Clone)]
pub struct Extension {
    pub group: FiniteGroup,
    /// `G → E`, `a ↦ (a, 1)`.
    pub embed: Vec<usize>,
    /// `E → Π`, `(a, x) ↦ x`.
    pub project: Vec<usize>,
}

/// `(a,x)(b,y) = (a·φ(x)(b)·f(x,y), xy)`; the element `(a, x)` has index
/// `a·|Π| + x`. Requires the obstruction cochain to vanish identically.
pub fn build_extension(k: &AbstractKernel, fs: &FactorSet) -> Result<Extension> {
    let m = k.module();
    let obstruction = kernel_obstruction(k, fs)?;
    if let Some((t, _)) = obstruction
        .entries(&m)
        .find(|(_, v)| v.iter().any(|&x| x != 0))
    {
        return Err(Error::ObstructionNonzero(t));
    }
    let (pi, g, st) = (&k.pi, k.g(), &k.structure);
    let p = pi.order();
    let names = g
        .elements()
        .flat_map(|a| pi.elements().map(move |x| (a, x)))
        .map(|(a, x)| format!("({},{})", g.name(a), pi.name(x)))
        .collect();
    let group = FiniteGroup::from_fn(names, |i, j| {
        let (a, x, b, y) = (i / p, i % p, j / p, j % p);
        let c = g.product(&[a, st.apply(fs.phi[x], b), fs.f(x, y)]);
        c * p + pi.mul(x, y)
    })?;
    Ok(Extension {
        group,
        embed: g.elements().map(|a| a * p + pi.identity()).collect(),
        project: (0..g.order() * p).map(|i| i % p).collect(),
    })
}

/// The strict Gr-category with objects `(x, α)`, `α` in the coset `ψ(x)`,
/// arrows `(x, c)` and tensor computed in `A_G`.
pub fn strictify(k: &AbstractKernel) -> Result<AutCategory> {
    let objects: Vec<(usize, usize)> =
        k.pi.elements()
            .flat_map(|x| k.coset(x).into_iter().map(move |a| (x, a)))
            .collect();
    let pi = k.pi.clone();
    automorphism_category(k.structure.clone(), &k.pi, objects, |x| {
        String::from(pi.name(x))
    })
}

/// Outcome of comparing the reduction of [`strictify`] with the type of `G`.
#[derive(Debug, Clone)]
pub struct StrictificationReport {
    /// `λ: Π → Π₀`, `x ↦ [(x, H(ψ(x)))]`, is a group isomorphism.
    pub pi0_iso: bool,
    /// `Π₁ → Z(G)`, reading an arrow as its element, is an isomorphism of
    /// modules along `λ`.
    pub pi1_iso: bool,
    /// The reduced associativity cocycle moved to `(Π, Z(G))`.
    pub xi: Option<Cochain>,
    /// `ψ*ξ′`.
    pub pulled_xi: Cochain,
    /// `α` with `ξ − ψ*ξ′ = δα`.
    pub xi_witness: Option<Cochain>,
    /// The kernel obstruction of the default factor set.
    pub obstruction: Cochain,
    /// `β` with `k + ψ*ξ′ = δβ`: the obstruction is `−ψ*ξ′` in cohomology.
    pub obstruction_witness: Option<Cochain>,
    /// Whether also `[k] = [ψ*ξ′]`; equivalent to the above when `2[k] = 0`.
    pub obstruction_equals_pulled: bool,
}

impl StrictificationReport {
    /// Number of the three structural checks that pass.
    pub fn passed(&self) -> usize {
        [self.pi0_iso, self.pi1_iso, self.xi_witness.is_some()]
            .iter()
            .filter(|&&b| b)
            .count()
    }

    pub fn is_pass(&self) -> bool {
        self.passed() == 3 && self.obstruction_witness.is_some()
    }
}

pub fn verify_strictification(k: &AbstractKernel) -> Result<StrictificationReport> {
    verify_strictification_against(k, &reduced_type_from(&k.structure)?)
}

/// As [`verify_strictification`], with the reduced type of `G` supplied
/// (it depends only on `G`, so sweeps over `ψ` can share it).
pub fn verify_strictification_against(
    k: &AbstractKernel,
    gtype: &GrType,
) -> Result<StrictificationReport> {
    let st = &k.structure;
    let m = k.module();
    let cat = strictify(k)?;
    let reduction = reduce_strict(&cat.category)?;
    let t = &reduction.ty;

    let object_of = |x: usize| {
        let a = st.outer.section[k.psi.apply(x)];
        cat.objects
            .iter()
            .position(|&o| o == (x, a))
            .expect("section object present")
    };
    let lambda: Vec<usize> =
        k.pi.elements()
            .map(|x| reduction.stick.class_of[object_of(x)])
            .collect();
    let lambda = GroupHom::new(k.pi.clone(), t.pi().clone(), lambda)
        .ok()
        .filter(GroupHom::is_bijective);

    let xi = lambda.as_ref().and_then(|lambda| {
        let mut inverse = vec![0; lambda.images().len()];
        for (x, &y) in lambda.images().iter().enumerate() {
            inverse[y] = x;
        }
        let back = GroupHom::new(t.pi().clone(), k.pi.clone(), inverse).ok()?;
        let images = (0..t.carrier().rank())
            .map(|i| {
                let arrow =
                    reduction.unit_arrows[t.carrier().encode(&t.carrier().basis(i)) as usize];
                st.center.coords[cat.element[arrow]].clone()
            })
            .collect::<Option<Vec<_>>>()?;
        let a = AdditiveMap::new(t.carrier().clone(), m.carrier().clone(), images).ok()?;
        transport(t.module(), &m, &back, &a, t.xi()).ok()
    });

    let pulled_xi = Cochain::from_fn(&m, 3, |tuple| {
        let image: Vec<usize> = tuple.iter().map(|&x| k.psi.apply(x)).collect();
        gtype.xi().value(gtype.module(), &image)
    });
    let xi_witness = match &xi {
        Some(xi) => solve_coboundary(&m, &xi.sub(&m, &pulled_xi))?,
        None => None,
    };
    let obstruction = kernel_obstruction(k, &factor_set(k))?;
    let obstruction_witness = solve_coboundary(&m, &obstruction.add(&m, &pulled_xi))?;
    let obstruction_equals_pulled =
        solve_coboundary(&m, &obstruction.sub(&m, &pulled_xi))?.is_some();
    Ok(StrictificationReport {
        pi0_iso: lambda.is_some(),
        pi1_iso: xi.is_some(),
        xi,
        pulled_xi,
        xi_witness,
        obstruction,
        obstruction_witness,
        obstruction_equals_pulled,
    })
}

/// A catalog group realizing a type: `Z(G)` with the action through `ψ` is
/// identified with `A` by `iso`, and the kernel obstruction class equals
/// the class of `ξ` under it.
#[derive(Debug, Clone)]
pub struct Realization {
    pub group: String,
    pub psi: Vec<usize>,
    /// `A → Z(G)` on generators.
    pub iso: AdditiveMap,
    pub kernel: AbstractKernel,
}

#[derive(Debug, Clone, Default)]
pub struct KernelSearch {
    pub found: Vec<Realization>,
    /// Catalog entries with a matching center whose automorphism group
    /// could not be built.
    pub skipped: Vec<(String, Error)>,
}

/// Every equivariant additive isomorphism `a → b`, by generator images.
fn module_isomorphisms(a: &PiModule, b: &PiModule) -> Vec<AdditiveMap> {
    let (ca, cb) = (a.carrier(), b.carrier());
    if ca.order() != cb.order() {
        return Vec::new();
    }
    let choices: Vec<Vec<Vec<u32>>> = ca
        .invariant_factors()
        .iter()
        .map(|&d| {
            cb.elements()
                .filter(|v| FiniteAbelianGroup::is_zero(&cb.scale(v, d as i64)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut current = vec![0usize; choices.len()];
    loop {
        let images: Vec<Vec<u32>> = current
            .iter()
            .zip(&choices)
            .map(|(&i, c)| c[i].clone())
            .collect();
        if let Ok(map) = AdditiveMap::new(ca.clone(), cb.clone(), images) {
            if map.is_bijective() && a.equivariance_failure(&map, b).is_none() {
                out.push(map);
            }
        }
        // Odometer over the generator choices.
        let mut i = choices.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < choices[i].len() {
                break;
            }
            current[i] = 0;
        }
    }
}

/// Searches the catalog for kernels `(Π, G, ψ)` whose obstruction realizes
/// the type `t`. Exhaustive over the catalog and all `ψ`.
pub fn kernel_search(t: &GrType, catalog: &[(String, Arc<FiniteGroup>)]) -> KernelSearch {
    let mut result = KernelSearch::default();
    for (name, g) in catalog {
        if center(g).group != *t.carrier() {
            continue;
        }
        let structure = match AutStructure::new(g.clone()) {
            Ok(s) => Arc::new(s),
            Err(e) => {
                result.skipped.push((name.clone(), e));
                continue;
            }
        };
        for psi in homomorphisms(t.pi(), &structure.outer.group) {
            let kernel = AbstractKernel::new(t.pi().clone(), structure.clone(), &psi)
                .expect("enumerated homomorphism");
            let m = kernel.module();
            let Ok(obstruction) = kernel_obstruction(&kernel, &factor_set(&kernel)) else {
                continue;
            };
            let boundaries = coboundary_lattice(&m, 3);
            let identity = GroupHom::identity(t.pi().clone());
            let hit = module_isomorphisms(t.module(), &m).into_iter().find(|iso| {
                let moved =
                    transport(t.module(), &m, &identity, iso, t.xi()).expect("checked isomorphism");
                boundaries.contains(moved.sub(&m, &obstruction).coordinates())
            });
            if let Some(iso) = hit {
                result.found.push(Realization {
                    group: name.clone(),
                    psi,
                    iso,
                    kernel,
                });
            }
        }
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::find_isomorphism;

    fn z(n: usize) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(n))
    }

    fn s3() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap())
    }

    #[test]
    fn cyclic_four_by_two() {
        let k = AbstractKernel::from_group(z(2), z(4), &[0, 1]).unwrap();
        let fs = factor_set(&k);
        assert!(fs.f.iter().all(|&c| c == 0));
        assert!(kernel_obstruction(&k, &fs).unwrap().is_zero());
        let e = build_extension(&k, &fs).unwrap();
        assert_eq!(e.group.order(), 8);
        assert!(!e.group.is_abelian());
        let d8 = FiniteGroup::from_permutations(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]]).unwrap();
        assert!(find_isomorphism(&e.group, &d8).is_some());

        let cat = strictify(&k).unwrap();
        assert_eq!(cat.category.object_count(), 2);
        let report = verify_strictification(&k).unwrap();
        assert_eq!(report.passed(), 3);
        assert!(report.is_pass());
    }

    #[test]
    fn symmetric_three_kernels() {
        let k = AbstractKernel::from_group(z(2), s3(), &[0, 0]).unwrap();
        assert_eq!(strictify(&k).unwrap().category.object_count(), 12);
        assert!(verify_strictification(&k).unwrap().is_pass());
        assert!(kernel_obstruction(&k, &factor_set(&k)).unwrap().is_zero());
    }

    #[test]
    fn trivial_pi() {
        let k = AbstractKernel::from_group(z(1), z(4), &[0]).unwrap();
        let e = build_extension(&k, &factor_set(&k)).unwrap();
        assert!(find_isomorphism(&e.group, &FiniteGroup::cyclic(4)).is_some());
        assert!(verify_strictification(&k).unwrap().is_pass());
    }

    #[test]
    fn direct_product_for_trivial_psi() {
        let k = AbstractKernel::from_group(z(2), s3(), &[0, 0]).unwrap();
        let e = build_extension(&k, &factor_set(&k)).unwrap();
        let product = FiniteGroup::direct_product(&s3(), &FiniteGroup::cyclic(2));
        assert!(find_isomorphism(&e.group, &product).is_some());
    }

    #[test]
    fn search_finds_cyclic_four() {
        let neg = PiModule::new(
            z(2),
            FiniteAbelianGroup::cyclic(4),
            vec![vec![vec![1]], vec![vec![3]]],
        )
        .unwrap();
        let t = GrType::strict(neg);
        let catalog = vec![
            ("Z4".into(), z(4)),
            ("S3".into(), s3()),
            ("Z2".into(), z(2)),
        ];
        let r = kernel_search(&t, &catalog);
        assert_eq!(r.found.len(), 1);
        assert_eq!(
            (r.found[0].group.as_str(), r.found[0].psi.as_slice()),
            ("Z4", &[0usize, 1][..])
        );
    }
}
