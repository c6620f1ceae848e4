#![allow(dead_code)]

use std::sync::Arc;

use grcat_core::algebra::{AdditiveMap, FiniteAbelianGroup, FiniteGroup, PiModule};
use grcat_core::cohomology::{tuple_count, tuples, Cochain};
use rand::Rng;

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n))
}

pub fn klein() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::direct_product(
        &FiniteGroup::cyclic(2),
        &FiniteGroup::cyclic(2),
    ))
}

/// `⟨a, b | aᵐ, bⁿ = aᵗ, bab⁻¹ = aʳ⟩`, element `aⁱbʲ` at `i·n + j`.
pub fn metacyclic(m: usize, n: usize, t: usize, r: usize) -> Arc<FiniteGroup> {
    let names = (0..m * n).map(|k| k.to_string()).collect();
    let pow = |j: usize| (0..j).fold(1, |acc, _| acc * r % m);
    Arc::new(
        FiniteGroup::from_fn(names, |x, y| {
            let (i, j, k, l) = (x / n, x % n, y / n, y % n);
            let mut a = i + k * pow(j);
            let mut b = j + l;
            if b >= n {
                b -= n;
                a += t;
            }
            (a % m) * n + b
        })
        .unwrap(),
    )
}

pub fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::from_permutations(3, &[vec![1, 2, 0], vec![1, 0, 2]]).unwrap())
}

pub fn d8() -> Arc<FiniteGroup> {
    metacyclic(4, 2, 0, 3)
}

pub fn q8() -> Arc<FiniteGroup> {
    metacyclic(4, 2, 2, 3)
}

/// Groups of order at most 8, one per isomorphism type.
pub fn small_groups() -> Vec<(&'static str, Arc<FiniteGroup>)> {
    let p = |a: usize, b: usize| {
        Arc::new(FiniteGroup::direct_product(
            &FiniteGroup::cyclic(a),
            &FiniteGroup::cyclic(b),
        ))
    };
    vec![
        ("Z1", cyclic(1)),
        ("Z2", cyclic(2)),
        ("Z3", cyclic(3)),
        ("Z4", cyclic(4)),
        ("Z2xZ2", klein()),
        ("Z5", cyclic(5)),
        ("Z6", cyclic(6)),
        ("S3", s3()),
        ("Z7", cyclic(7)),
        ("Z8", cyclic(8)),
        ("Z4xZ2", p(4, 2)),
        (
            "Z2xZ2xZ2",
            Arc::new(FiniteGroup::direct_product(
                &klein(),
                &FiniteGroup::cyclic(2),
            )),
        ),
        ("D8", d8()),
        ("Q8", q8()),
    ]
}

pub fn trivial_module(g: Arc<FiniteGroup>, a: u32) -> PiModule {
    PiModule::trivial(g, FiniteAbelianGroup::cyclic(a))
}

/// `Z/2` acting on `Z/a` by negation.
pub fn negation_module(a: u32) -> PiModule {
    PiModule::new(
        cyclic(2),
        FiniteAbelianGroup::cyclic(a),
        vec![vec![vec![1]], vec![vec![a - 1]]],
    )
    .unwrap()
}

/// Every module structure of `g` on `Z/a`: all assignments of units to
/// elements that the constructor accepts as actions.
pub fn all_cyclic_modules(g: &Arc<FiniteGroup>, a: u32) -> Vec<PiModule> {
    let units: Vec<u32> = (0..a).filter(|&u| gcd(u, a) == 1).collect();
    let n = g.order();
    let mut out = Vec::new();
    let total = units.len().pow(n as u32);
    for mut code in 0..total {
        let action: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|_| {
                let u = units[code % units.len()];
                code /= units.len();
                vec![vec![u % a]]
            })
            .collect();
        if let Ok(m) = PiModule::new(g.clone(), FiniteAbelianGroup::cyclic(a), action) {
            out.push(m);
        }
    }
    out
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn random_cochain(m: &PiModule, n: usize, rng: &mut impl Rng) -> Cochain {
    let factors = m.carrier().invariant_factors().to_vec();
    let coords: Vec<i64> = (0..tuple_count(m, n))
        .flat_map(|_| {
            factors
                .iter()
                .map(|&d| rng.gen_range(0..d) as i64)
                .collect::<Vec<_>>()
        })
        .collect();
    Cochain::from_coordinates(m, n, &coords)
}

/// Every normalized `n`-cochain, for tiny cases.
pub fn all_cochains(m: &PiModule, n: usize) -> Vec<Cochain> {
    let factors = m.carrier().invariant_factors().to_vec();
    let moduli: Vec<u32> = (0..tuple_count(m, n))
        .flat_map(|_| factors.clone())
        .collect();
    let total: u64 = moduli.iter().map(|&d| d as u64).product();
    (0..total)
        .map(|mut i| {
            let coords: Vec<i64> = moduli
                .iter()
                .map(|&d| {
                    let c = i % d as u64;
                    i /= d as u64;
                    c as i64
                })
                .collect();
            Cochain::from_coordinates(m, n, &coords)
        })
        .collect()
}

/// Full bar coboundary on all tuples, identity entries included, computed
/// on plain vectors without the library's coboundary.
pub fn oracle_coboundary(m: &PiModule, c: &Cochain) -> Vec<(Vec<usize>, Vec<u32>)> {
    let g = m.group();
    let a = m.carrier();
    let n = c.degree();
    let value = |t: &[usize]| c.value(m, t);
    let mut out = Vec::new();
    let mut t = vec![0usize; n + 1];
    loop {
        let mut acc = m.act(t[0], &value(&t[1..]));
        for i in 0..n {
            let mut s: Vec<usize> = t[..i].to_vec();
            s.push(g.mul(t[i], t[i + 1]));
            s.extend_from_slice(&t[i + 2..]);
            let v = value(&s);
            acc = if i % 2 == 0 {
                a.sub(&acc, &v)
            } else {
                a.add(&acc, &v)
            };
        }
        let last = value(&t[..n]);
        acc = if n % 2 == 0 {
            a.sub(&acc, &last)
        } else {
            a.add(&acc, &last)
        };
        out.push((t.clone(), acc));
        let mut i = n + 1;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < g.order() {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Whether two normalized cochains differ by the coboundary of a normalized
/// cochain, by exhaustive search.
pub fn cohomologous_brute_force(m: &PiModule, a: &Cochain, b: &Cochain) -> bool {
    let n = a.degree();
    let diff = a.sub(m, b);
    all_cochains(m, n - 1)
        .iter()
        .any(|beta| grcat_core::cohomology::coboundary(m, beta).unwrap() == diff)
}

pub fn identity_map(a: &FiniteAbelianGroup) -> AdditiveMap {
    AdditiveMap::identity(a)
}

pub fn nonidentity_tuples(m: &PiModule, n: usize) -> Vec<Vec<usize>> {
    tuples(m, n).collect()
}
