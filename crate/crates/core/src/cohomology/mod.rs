//! Normalized cochains, the coboundary operator and cohomology `H⁰`–`H³`.
//!
//! Cohomology is computed two ways: by Smith normal form on the integer
//! lift of the cochain complex, and by exhaustive enumeration at small
//! sizes. The two are meant to be run against each other.

mod cochain;

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

pub use cochain::{coboundary, is_cocycle, tuple_count, tuples, Cochain, FullCochain};

use crate::algebra::{decompose, PiModule};
use crate::error::{Error, Result};
use crate::linalg::{kernel, smith_tracking, EchelonLattice, IntMatrix, Track};

/// Cap on the entries of an integer matrix handed to Smith normal form.
pub const SYSTEM_LIMIT: u128 = 1 << 23;

fn check_system(rows: usize, cols: usize) -> Result<()> {
    let entries = rows as u128 * cols as u128;
    if entries > SYSTEM_LIMIT {
        return Err(Error::SystemTooLarge {
            entries,
            limit: SYSTEM_LIMIT,
        });
    }
    Ok(())
}

/// Default cap on the number of cochains a brute-force run may enumerate.
pub const DEFAULT_BOUND: u128 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Snf,
    BruteForce,
}

/// `Hⁿ(Π, A)` as invariant factors with one representative cocycle per
/// cyclic factor. Representatives are the lexicographically least cocycles
/// of their classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    pub representatives: Vec<Cochain>,
}

impl CohomologyGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

/// Modulus of every coordinate of `Cⁿ`, in storage order.
fn coordinate_moduli(m: &PiModule, n: usize) -> Vec<u32> {
    let f = m.carrier().invariant_factors();
    let mut out = Vec::with_capacity(tuple_count(m, n) * f.len());
    for _ in 0..tuple_count(m, n) {
        out.extend_from_slice(f);
    }
    out
}

fn dimension(m: &PiModule, n: usize) -> usize {
    tuple_count(m, n) * m.carrier().rank()
}

/// Integer matrix of `δ: Cⁿ → Cⁿ⁺¹` on coordinates (columns index `Cⁿ`).
/// For `n = -1` (passed as `None`) this is the empty map into `C⁰`.
fn coboundary_matrix(m: &PiModule, n: Option<usize>) -> IntMatrix {
    let Some(n) = n else {
        return IntMatrix::zeros(dimension(m, 0), 0);
    };
    let (cols, rows) = (dimension(m, n), dimension(m, n + 1));
    let mut out = IntMatrix::zeros(rows, cols);
    let mut unit = vec![0i64; cols];
    for j in 0..cols {
        unit[j] = 1;
        let image = coboundary(m, &Cochain::from_coordinates(m, n, &unit)).expect("degree checked");
        for (i, &x) in image.coordinates().iter().enumerate() {
            if x != 0 {
                out[(i, j)] = BigInt::from(x);
            }
        }
        unit[j] = 0;
    }
    out
}

fn diagonal(moduli: &[u32]) -> IntMatrix {
    let mut d = IntMatrix::zeros(moduli.len(), moduli.len());
    for (i, &x) in moduli.iter().enumerate() {
        d[(i, i)] = BigInt::from(x);
    }
    d
}

fn to_cochain(m: &PiModule, n: usize, v: &[BigInt]) -> Cochain {
    let moduli = coordinate_moduli(m, n);
    let coords: Vec<i64> = v
        .iter()
        .zip(&moduli)
        .map(|(x, &d)| {
            let r = x % BigInt::from(d);
            let r = if r < BigInt::zero() { r + d } else { r };
            r.to_i64().expect("reduced residue")
        })
        .collect();
    Cochain::from_coordinates(m, n, &coords)
}

/// Images of the coordinate basis of `Cⁿ⁻¹` under `δ`.
fn coboundary_images(m: &PiModule, n: usize) -> Vec<Vec<u32>> {
    let Some(p) = n.checked_sub(1) else {
        return Vec::new();
    };
    let cols = dimension(m, p);
    let mut unit = vec![0i64; cols];
    (0..cols)
        .map(|j| {
            unit[j] = 1;
            let image =
                coboundary(m, &Cochain::from_coordinates(m, p, &unit)).expect("degree checked");
            unit[j] = 0;
            image.coordinates().to_vec()
        })
        .collect()
}

/// The subgroup `Bⁿ` of coboundaries, in echelon form.
pub fn coboundary_lattice(m: &PiModule, n: usize) -> EchelonLattice {
    EchelonLattice::new(&coordinate_moduli(m, n), coboundary_images(m, n))
}

/// The lexicographically least cochain cohomologous to `z`.
pub fn canonical_representative(m: &PiModule, z: &Cochain) -> Cochain {
    if z.is_zero() {
        return z.clone();
    }
    canonical_in(m, &coboundary_lattice(m, z.degree()), z)
}

fn canonical_in(m: &PiModule, lattice: &EchelonLattice, z: &Cochain) -> Cochain {
    let coords: Vec<i64> = lattice
        .reduce(z.coordinates())
        .into_iter()
        .map(i64::from)
        .collect();
    Cochain::from_coordinates(m, z.degree(), &coords)
}

/// Whether `z` is a coboundary (no witness produced).
pub fn is_coboundary(m: &PiModule, z: &Cochain) -> bool {
    if z.is_zero() {
        return true;
    }
    coboundary_lattice(m, z.degree()).contains(z.coordinates())
}

fn first_nonzero(m: &PiModule, c: &Cochain) -> Option<Vec<usize>> {
    c.entries(m)
        .find(|(_, v)| v.iter().any(|&x| x != 0))
        .map(|(t, _)| t)
}

/// A normalized `α` with `δα = z`, or `None` when `z` is not a coboundary.
///
/// Each generator `δe_j` of `Bⁿ` is tagged with `e_j`; reducing `z` to zero
/// in the echelon form accumulates the matching combination.
pub fn solve_coboundary(m: &PiModule, z: &Cochain) -> Result<Option<Cochain>> {
    let n = z.degree();
    if !(1..=3).contains(&n) {
        return Err(Error::DegreeTooHigh(n));
    }
    if z.is_zero() {
        return Ok(Some(Cochain::zero(m, n - 1)));
    }
    let dz = coboundary(m, z)?;
    if let Some(t) = first_nonzero(m, &dz) {
        return Err(Error::NotACocycle(t));
    }
    let source = coordinate_moduli(m, n - 1);
    let tagged = coboundary_images(m, n)
        .into_iter()
        .enumerate()
        .map(|(j, image)| {
            let mut w = vec![0; source.len()];
            w[j] = 1;
            (image, w)
        });
    let lattice = EchelonLattice::with_witnesses(&coordinate_moduli(m, n), &source, tagged);
    let (rest, w) = lattice.reduce_with_witness(z.coordinates());
    if rest.iter().any(|&x| x != 0) {
        return Ok(None);
    }
    let coords: Vec<i64> = w.into_iter().map(i64::from).collect();
    let alpha = Cochain::from_coordinates(m, n - 1, &coords);
    assert_eq!(
        coboundary(m, &alpha)?,
        *z,
        "coboundary witness failed verification"
    );
    Ok(Some(alpha))
}

/// Column basis of the lattice of integer lifts of `n`-cocycles:
/// `{x : M_n x ∈ D_{n+1} Z}`, a full-rank sublattice of `Z^{N_n}`.
fn cocycle_lattice_basis(m: &PiModule, n: usize) -> IntMatrix {
    let size = dimension(m, n);
    let next = coordinate_moduli(m, n + 1);
    let mut neg_d = diagonal(&next);
    for i in 0..next.len() {
        neg_d[(i, i)] = -neg_d[(i, i)].clone();
    }
    let ker = kernel(&coboundary_matrix(m, Some(n)).hcat(&neg_d));
    // Project onto the Cⁿ coordinates, then extract a basis of the span.
    let mut proj = IntMatrix::zeros(size, ker.cols());
    for r in 0..size {
        for c in 0..ker.cols() {
            proj[(r, c)] = ker[(r, c)].clone();
        }
    }
    let s = smith_tracking(
        &proj,
        Track {
            u: false,
            u_inv: true,
            v: false,
        },
    );
    assert_eq!(s.rank, size, "cocycle lattice must have full rank");
    let mut basis = IntMatrix::zeros(size, size);
    for r in 0..size {
        for c in 0..size {
            basis[(r, c)] = &s.u_inv[(r, c)] * &s.diagonal[c];
        }
    }
    basis
}

fn snf_cohomology(m: &PiModule, n: usize) -> CohomologyGroup {
    let size = dimension(m, n);
    let moduli = coordinate_moduli(m, n);
    let basis = cocycle_lattice_basis(m, n);
    // Coordinates of the relations Bⁿ + D·Zᴺ in the cocycle basis.
    let relations = coboundary_matrix(m, n.checked_sub(1)).hcat(&diagonal(&moduli));
    let s = smith_tracking(
        &basis,
        Track {
            u: true,
            u_inv: false,
            v: false,
        },
    );
    let ur = s.u.mul(&relations);
    let mut x = IntMatrix::zeros(size, relations.cols());
    for r in 0..size {
        for c in 0..relations.cols() {
            let (q, rem) = num_integer::Integer::div_rem(&ur[(r, c)], &s.diagonal[r]);
            debug_assert!(rem.is_zero());
            x[(r, c)] = q;
        }
    }
    let q = smith_tracking(
        &x,
        Track {
            u: false,
            u_inv: true,
            v: false,
        },
    );
    assert_eq!(q.rank, size, "quotient of full-rank lattices is finite");
    let generators = basis.mul(&q.u_inv);
    let lattice = coboundary_lattice(m, n);
    let mut invariant_factors = Vec::new();
    let mut representatives = Vec::new();
    for (j, d) in q.diagonal.iter().enumerate() {
        if d.is_one() {
            continue;
        }
        invariant_factors.push(d.to_u64().expect("finite factor"));
        let rep = to_cochain(m, n, &generators.column(j));
        representatives.push(canonical_in(m, &lattice, &rep));
    }
    CohomologyGroup {
        degree: n,
        invariant_factors,
        representatives,
    }
}

/// Number of normalized `n`-cochains, saturating.
pub fn cochain_count(m: &PiModule, n: usize) -> u128 {
    (m.carrier().order() as u128)
        .checked_pow(tuple_count(m, n) as u32)
        .unwrap_or(u128::MAX)
}

/// Mixed-radix codec for cochain coordinates, first coordinate most
/// significant so that code order is lexicographic order.
struct Codec {
    moduli: Vec<u32>,
}

impl Codec {
    fn encode(&self, v: &[u32]) -> u64 {
        v.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &d)| acc * d as u64 + x as u64)
    }

    fn decode(&self, mut i: u64, out: &mut [i64]) {
        for (slot, &d) in out.iter_mut().zip(&self.moduli).rev() {
            *slot = (i % d as u64) as i64;
            i /= d as u64;
        }
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let mut x = vec![0; self.moduli.len()];
        let mut y = vec![0; self.moduli.len()];
        self.decode(a, &mut x);
        self.decode(b, &mut y);
        let sum: Vec<u32> = x
            .iter()
            .zip(&y)
            .zip(&self.moduli)
            .map(|((&p, &q), &d)| ((p + q) % d as i64) as u32)
            .collect();
        self.encode(&sum)
    }
}

fn brute_force_cohomology(m: &PiModule, n: usize, bound: u128) -> Result<CohomologyGroup> {
    for degree in [Some(n), n.checked_sub(1)].into_iter().flatten() {
        let count = cochain_count(m, degree);
        if count > bound {
            return Err(Error::BruteForceTooLarge { count, bound });
        }
    }
    let codec = Codec {
        moduli: coordinate_moduli(m, n),
    };
    let mut coords = vec![0i64; codec.moduli.len()];
    let mut cocycles = Vec::new();
    for i in 0..cochain_count(m, n) as u64 {
        codec.decode(i, &mut coords);
        if is_cocycle(m, &Cochain::from_coordinates(m, n, &coords)) {
            cocycles.push(i);
        }
    }
    let mut boundaries = BTreeSet::from([0u64]);
    if let Some(p) = n.checked_sub(1) {
        let lower = Codec {
            moduli: coordinate_moduli(m, p),
        };
        let mut c = vec![0i64; lower.moduli.len()];
        for i in 0..cochain_count(m, p) as u64 {
            lower.decode(i, &mut c);
            let image = coboundary(m, &Cochain::from_coordinates(m, p, &c))?;
            boundaries.insert(codec.encode(image.coordinates()));
        }
    }
    // Partition cocycles into cosets; each coset is labelled by its least member.
    let position = |code: u64| {
        cocycles
            .binary_search(&code)
            .expect("coboundaries are cocycles")
    };
    let mut class_of = vec![usize::MAX; cocycles.len()];
    let mut reps = Vec::new();
    for i in 0..cocycles.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        for &b in &boundaries {
            class_of[position(codec.add(cocycles[i], b))] = reps.len();
        }
        reps.push(cocycles[i]);
    }
    let d = decompose(reps.len(), 0, |a, b| {
        class_of[position(codec.add(reps[a], reps[b]))]
    });
    let representatives = d
        .basis
        .iter()
        .map(|&class| {
            codec.decode(reps[class], &mut coords);
            Cochain::from_coordinates(m, n, &coords)
        })
        .collect();
    Ok(CohomologyGroup {
        degree: n,
        invariant_factors: d
            .group
            .invariant_factors()
            .iter()
            .map(|&x| x as u64)
            .collect(),
        representatives,
    })
}

/// `Hⁿ(Π, A)` for `n ≤ 3`.
pub fn cohomology_group(
    m: &PiModule,
    n: usize,
    method: Method,
    bound: u128,
) -> Result<CohomologyGroup> {
    if n > 3 {
        return Err(Error::DegreeTooHigh(n));
    }
    match method {
        Method::Snf => {
            check_system(dimension(m, n + 1), dimension(m, n) + dimension(m, n + 1))?;
            Ok(snf_cohomology(m, n))
        }
        Method::BruteForce => brute_force_cohomology(m, n, bound),
    }
}

/// One canonical cocycle per class of `Hⁿ`, sorted (the zero class first).
pub fn classes_of(m: &PiModule, n: usize) -> Result<Vec<Cochain>> {
    let h = cohomology_group(m, n, Method::Snf, DEFAULT_BOUND)?;
    let lattice = coboundary_lattice(m, n);
    let mut out = vec![Cochain::zero(m, n)];
    for (rep, &d) in h.representatives.iter().zip(&h.invariant_factors) {
        let mut next = Vec::with_capacity(out.len() * d as usize);
        for base in &out {
            let mut acc = base.clone();
            for _ in 0..d {
                next.push(canonical_in(m, &lattice, &acc));
                acc = acc.add(m, rep);
            }
        }
        out = next;
    }
    out.sort();
    Ok(out)
}

/// Every normalized `n`-cocycle, sorted.
pub fn cocycles(m: &PiModule, n: usize) -> Result<Vec<Cochain>> {
    if n > 3 {
        return Err(Error::DegreeTooHigh(n));
    }
    let basis = cocycle_lattice_basis(m, n);
    let gens: Vec<Cochain> = (0..basis.cols())
        .map(|j| to_cochain(m, n, &basis.column(j)))
        .filter(|c| !c.is_zero())
        .collect();
    let mut seen = BTreeSet::from([Cochain::zero(m, n)]);
    let mut frontier = vec![Cochain::zero(m, n)];
    while let Some(c) = frontier.pop() {
        for g in &gens {
            let next = c.add(m, g);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAbelianGroup, FiniteGroup};
    use alloc::sync::Arc;

    fn trivial(pi: usize, a: u32) -> PiModule {
        PiModule::trivial(
            Arc::new(FiniteGroup::cyclic(pi)),
            FiniteAbelianGroup::cyclic(a),
        )
    }

    fn negation_z4() -> PiModule {
        PiModule::new(
            Arc::new(FiniteGroup::cyclic(2)),
            FiniteAbelianGroup::cyclic(4),
            vec![vec![vec![1]], vec![vec![3]]],
        )
        .unwrap()
    }

    #[test]
    fn small_groups_both_methods() {
        for (m, n, expect) in [
            (trivial(2, 2), 0, vec![2]),
            (trivial(2, 2), 1, vec![2]),
            (trivial(2, 2), 2, vec![2]),
            (trivial(2, 2), 3, vec![2]),
            (negation_z4(), 0, vec![2]),
            (negation_z4(), 1, vec![2]),
            (negation_z4(), 2, vec![2]),
            (negation_z4(), 3, vec![2]),
            (trivial(3, 3), 2, vec![3]),
            (trivial(4, 2), 2, vec![2]),
            (trivial(1, 5), 2, vec![]),
        ] {
            for method in [Method::Snf, Method::BruteForce] {
                let h = cohomology_group(&m, n, method, DEFAULT_BOUND).unwrap();
                assert_eq!(h.invariant_factors, expect, "degree {n} via {method:?}");
                for r in &h.representatives {
                    assert!(is_cocycle(&m, r));
                }
            }
        }
    }

    #[test]
    fn solve_coboundary_cases() {
        let m = trivial(2, 2);
        assert_eq!(
            solve_coboundary(&m, &Cochain::zero(&m, 2))
                .unwrap()
                .map(|a| a.degree()),
            Some(1)
        );
        let mut xi = Cochain::zero(&m, 3);
        xi.set(&m, &[1, 1, 1], &[1]).unwrap();
        assert_eq!(solve_coboundary(&m, &xi).unwrap(), None);
        let neg = negation_z4();
        let mut beta = Cochain::zero(&neg, 1);
        beta.set(&neg, &[1], &[1]).unwrap();
        let z = coboundary(&neg, &beta).unwrap();
        let alpha = solve_coboundary(&neg, &z).unwrap().unwrap();
        assert_eq!(coboundary(&neg, &alpha).unwrap(), z);
    }

    #[test]
    fn solve_rejects_non_cocycles() {
        let m = trivial(3, 3);
        let mut c = Cochain::zero(&m, 2);
        c.set(&m, &[1, 1], &[1]).unwrap();
        assert!(matches!(
            solve_coboundary(&m, &c),
            Err(Error::NotACocycle(_))
        ));
    }

    #[test]
    fn classes_and_cocycles() {
        let m = trivial(2, 2);
        let h2 = classes_of(&m, 2).unwrap();
        assert_eq!(h2.len(), 2);
        assert!(h2[0].is_zero());
        assert_eq!(h2[1].value(&m, &[1, 1]), vec![1]);
        assert_eq!(classes_of(&m, 3).unwrap().len(), 2);
        assert_eq!(cocycles(&m, 1).unwrap().len(), 2);
        assert_eq!(cocycles(&negation_z4(), 1).unwrap().len(), 4);
        assert_eq!(
            classes_of(&trivial(1, 3), 2).unwrap(),
            vec![Cochain::zero(&trivial(1, 3), 2)]
        );
    }

    #[test]
    fn brute_force_bound_is_enforced() {
        let m = trivial(4, 4);
        assert!(matches!(
            cohomology_group(&m, 3, Method::BruteForce, DEFAULT_BOUND),
            Err(Error::BruteForceTooLarge { .. })
        ));
    }
}
