use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::strict::{aut_gr_category, StrictGrCat};
use super::{transport, GrType};
use crate::algebra::{decompose, AdditiveMap, AutStructure, FiniteGroup, GroupHom, PiModule};
use crate::cohomology::{solve_coboundary, Cochain, FullCochain};
use crate::error::{Error, Result};

/// Representatives `X_s` of the isomorphism classes with arrows
/// `i_X: X_s → X`, where `i_{X_s}` is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stick {
    /// Class of each object, as an element of `Π₀`.
    pub class_of: Vec<usize>,
    /// `X_s` for each `s ∈ Π₀`.
    pub representative: Vec<usize>,
    /// `i_X` for each object `X`.
    pub arrow_to: Vec<usize>,
}

/// The type of a strict Gr-category together with the data used to read it off.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub ty: GrType,
    pub stick: Stick,
    /// The automorphism of the unit with each carrier encoding.
    pub unit_arrows: Vec<usize>,
}

/// Reduction with the deterministic stick: the first object of each class
/// in label order (the unit for its own class) and the first arrow in
/// label order.
pub fn reduce_strict(c: &StrictGrCat) -> Result<Reduction> {
    reduce_strict_with(c, &mut |_| 0)
}

/// Reduction with the stick chosen by `pick`, which receives the candidates
/// (in label order) and returns a position among them.
pub fn reduce_strict_with(
    c: &StrictGrCat,
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<Reduction> {
    let n = c.object_count();
    // Components of the groupoid, numbered from the unit's, then by least member.
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in 0..c.arrow_count() {
        let (s, t) = (
            root(&mut parent, c.source(a)),
            root(&mut parent, c.target(a)),
        );
        if s != t {
            parent[s.max(t)] = s.min(t);
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let unit_root = root(&mut parent, c.unit());
    order.push(unit_root);
    for x in 0..n {
        let r = root(&mut parent, x);
        if !order.contains(&r) {
            order.push(r);
        }
    }
    let class_of: Vec<usize> = (0..n)
        .map(|x| {
            let r = root(&mut parent, x);
            order.iter().position(|&o| o == r).expect("root listed")
        })
        .collect();
    let classes = order.len();
    let members: Vec<Vec<usize>> = (0..classes)
        .map(|s| (0..n).filter(|&x| class_of[x] == s).collect())
        .collect();

    let representative: Vec<usize> = (0..classes)
        .map(|s| {
            if s == 0 {
                c.unit()
            } else {
                members[s][pick(&members[s]) % members[s].len()]
            }
        })
        .collect();
    let arrow_to: Vec<usize> = (0..n)
        .map(|x| {
            let rep = representative[class_of[x]];
            if x == rep {
                return c.identity(x);
            }
            let candidates: Vec<usize> = c.hom(rep, x).collect();
            candidates[pick(&candidates) % candidates.len()]
        })
        .collect();

    let names: Vec<String> = representative
        .iter()
        .map(|&x| c.object_label(x).into())
        .collect();
    let table: Vec<Vec<usize>> = (0..classes)
        .map(|s| {
            (0..classes)
                .map(|t| class_of[c.tensor(representative[s], representative[t])])
                .collect()
        })
        .collect();
    let pi0 = Arc::new(FiniteGroup::from_table(names, table)?);

    // Π₁ = Aut(I) as an abstract abelian group.
    let unit = c.unit();
    let ends: Vec<usize> = c.hom(unit, unit).collect();
    let mut local = vec![usize::MAX; c.arrow_count()];
    for (i, &a) in ends.iter().enumerate() {
        local[a] = i;
    }
    for &a in &ends {
        for &b in &ends {
            if c.seq(a, b) != c.seq(b, a) {
                return Err(Error::UnitEndomorphismsNotAbelian);
            }
        }
    }
    let d = decompose(ends.len(), local[c.identity(unit)], |a, b| {
        local[c.seq(ends[a], ends[b])]
    });
    let carrier = d.group.clone();
    let unit_arrows: Vec<usize> = d.to_element.iter().map(|&i| ends[i]).collect();

    // γ_X(u) = u⊗id_X identifies Aut(I) with Aut(X); `back` inverts all of them at once.
    let mut back = vec![usize::MAX; c.arrow_count()];
    for x in 0..n {
        for (i, &u) in ends.iter().enumerate() {
            back[c.tensor_arrows(u, c.identity(x))] = i;
        }
        if c.hom(x, x).any(|a| back[a] == usize::MAX) {
            return Err(Error::NotAGroupoid(alloc::format!(
                "automorphisms of {} are not all of the form u⊗id",
                c.object_label(x)
            )));
        }
    }
    let coords = |a: usize| d.coords[back[a]].clone();

    let module = PiModule::from_fn(pi0.clone(), carrier.clone(), |s, i| {
        let x = representative[s];
        let u = unit_arrows[carrier.encode(&carrier.basis(i)) as usize];
        coords(c.tensor_arrows(c.identity(x), u))
    })?;

    // H̃_{s,t}: X_s⊗X_t → X_{st}.
    let h =
        |s: usize, t: usize| c.inverse(arrow_to[c.tensor(representative[s], representative[t])]);
    let id = |s: usize| c.identity(representative[s]);
    let xi = FullCochain::from_fn(&module, 3, |t| {
        let (r, s, u) = (t[0], t[1], t[2]);
        let p = c.seq(c.tensor_arrows(id(r), h(s, u)), h(r, pi0.mul(s, u)));
        let q = c.seq(c.tensor_arrows(h(r, s), id(u)), h(pi0.mul(r, s), u));
        coords(c.seq(c.inverse(p), q))
    })
    .normalize(&module)?;
    let ty = GrType::new(module, xi)?;
    Ok(Reduction {
        ty,
        stick: Stick {
            class_of,
            representative,
            arrow_to,
        },
        unit_arrows,
    })
}

/// `Z(G)` as a module over `Out(G)` through the section: `[α]·c = H(α)(c)`.
pub fn outer_module(st: &AutStructure) -> Result<PiModule> {
    let z = &st.center;
    PiModule::from_fn(st.outer.group.clone(), z.group.clone(), |s, i| {
        let c = z.element(&z.group.basis(i));
        z.coords[st.apply(st.outer.section[s], c)]
            .clone()
            .expect("automorphisms preserve the center")
    })
}

/// The type `(Out(G), Z(G), ξ′)` read off directly from the section `H` of
/// `Aut(G) → Out(G)`.
///
/// `h_{s,t}` is the least element with `H_s∘H_t = μ_{h_{s,t}}∘H_{st}`, and
/// `ξ′(r,s,t)` is the central element with
/// `H_r(h_{s,t})·h_{r,st} = ξ′(r,s,t)⁻¹·h_{r,s}·h_{rs,t}`.
pub fn reduced_type_from(st: &AutStructure) -> Result<GrType> {
    let out = &st.outer.group;
    let aut = &st.aut.group;
    let g = &st.g;
    let section = &st.outer.section;
    let k = out.order();
    let mut h = vec![0; k * k];
    for s in out.elements() {
        for t in out.elements() {
            let lhs = aut.mul(section[s], section[t]);
            h[s * k + t] = st.connecting(lhs, section[out.mul(s, t)])[0];
        }
    }
    let module = outer_module(st)?;
    let mut failure = None;
    let xi = FullCochain::from_fn(&module, 3, |t| {
        let (r, s, u) = (t[0], t[1], t[2]);
        let left = g.mul(st.apply(section[r], h[s * k + u]), h[r * k + out.mul(s, u)]);
        let right = g.mul(h[r * k + s], h[out.mul(r, s) * k + u]);
        let value = g.mul(right, g.inv(left));
        match &st.center.coords[value] {
            Some(v) => v.clone(),
            None => {
                failure.get_or_insert_with(|| t.to_vec());
                st.center.group.zero()
            }
        }
    });
    if let Some(t) = failure {
        return Err(Error::CentralityViolation(t));
    }
    GrType::new(module.clone(), xi.normalize(&module)?)
}

pub fn reduced_type_of_group(g: Arc<FiniteGroup>) -> Result<GrType> {
    reduced_type_from(&AutStructure::new(g)?)
}

/// `reduce_strict(A_G)` set against the directly computed type of `G`.
#[derive(Debug, Clone)]
pub struct TypeComparison {
    pub reduction: Reduction,
    pub direct: GrType,
    /// `Π₀ → Out(G)`, reading a class through its representative.
    pub lambda: Option<GroupHom>,
    /// `Π₁ → Z(G)` on generators, reading a unit arrow as its element.
    pub iso: Option<AdditiveMap>,
    /// The reduced cocycle moved to `(Out(G), Z(G))`.
    pub moved: Option<Cochain>,
    /// `α` with `moved − ξ′ = δα`.
    pub witness: Option<Cochain>,
}

impl TypeComparison {
    pub fn agrees(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn compare_reductions(st: Arc<AutStructure>) -> Result<TypeComparison> {
    compare_reductions_with(st, &mut |_| 0)
}

/// As [`compare_reductions`] with the stick chosen by `pick`.
pub fn compare_reductions_with(
    st: Arc<AutStructure>,
    pick: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<TypeComparison> {
    let direct = reduced_type_from(&st)?;
    let cat = aut_gr_category(st.clone())?;
    let reduction = reduce_strict_with(&cat.category, pick)?;
    let t = &reduction.ty;
    let out = &st.outer;
    let images: Vec<usize> = reduction
        .stick
        .representative
        .iter()
        .map(|&x| out.class_of[cat.objects[x].1])
        .collect();
    let lambda = GroupHom::new(t.pi().clone(), out.group.clone(), images)
        .ok()
        .filter(GroupHom::is_bijective);
    let iso = (0..t.carrier().rank())
        .map(|i| {
            let arrow = reduction.unit_arrows[t.carrier().encode(&t.carrier().basis(i)) as usize];
            st.center.coords[cat.element[arrow]].clone()
        })
        .collect::<Option<Vec<_>>>()
        .and_then(|images| {
            AdditiveMap::new(t.carrier().clone(), direct.carrier().clone(), images).ok()
        })
        .filter(AdditiveMap::is_bijective);
    let moved = match (&lambda, &iso) {
        (Some(l), Some(a)) => transport(t.module(), direct.module(), l, a, t.xi()).ok(),
        _ => None,
    };
    let witness = match &moved {
        Some(c) => solve_coboundary(direct.module(), &c.sub(direct.module(), direct.xi()))?,
        None => None,
    };
    Ok(TypeComparison {
        reduction,
        direct,
        lambda,
        iso,
        moved,
        witness,
    })
}
