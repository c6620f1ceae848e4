//! The bundled catalog: one group of each isomorphism type of order ≤ 16.
//!
//! The JSON files under `catalog/` are generated from the constructions in
//! this module; a test regenerates them and compares byte for byte. In
//! names, `x` is a direct product and `s` a semidirect product.

use std::sync::Arc;

use grcat_core::algebra::FiniteGroup;

use crate::format;

macro_rules! bundled {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../catalog/", $name, ".json")))),*]
    };
}

/// Catalog names with file contents, ordered by group order.
pub static BUNDLED: &[(&str, &str)] = bundled![
    "Z1",
    "Z2",
    "Z3",
    "Z4",
    "Z2xZ2",
    "Z5",
    "Z6",
    "S3",
    "Z7",
    "Z8",
    "Z4xZ2",
    "Z2xZ2xZ2",
    "D8",
    "Q8",
    "Z9",
    "Z3xZ3",
    "Z10",
    "D10",
    "Z11",
    "Z12",
    "Z6xZ2",
    "A4",
    "D12",
    "Dic12",
    "Z13",
    "Z14",
    "D14",
    "Z15",
    "Z16",
    "Z4xZ4",
    "Z4xZ2sZ2",
    "Z4sZ4",
    "Z8xZ2",
    "M16",
    "D16",
    "SD16",
    "Q16",
    "Z4xZ2xZ2",
    "Z2xD8",
    "Z2xQ8",
    "Pauli",
    "Z2xZ2xZ2xZ2",
];

/// `⟨a, b | aᵐ = 1, bⁿ = aᵗ, bab⁻¹ = aʳ⟩` with element `aⁱbʲ` at `i·n + j`.
fn metacyclic(m: usize, n: usize, t: usize, r: usize) -> FiniteGroup {
    let names = (0..m * n)
        .map(|k| format!("a{}b{}", k / n, k % n))
        .collect();
    let pow = |j: usize| (0..j).fold(1, |acc, _| acc * r % m);
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
    .expect("metacyclic parameters define a group")
}

fn dihedral(m: usize) -> FiniteGroup {
    metacyclic(m, 2, 0, m - 1)
}

fn product(groups: &[FiniteGroup]) -> FiniteGroup {
    groups[1..].iter().fold(groups[0].clone(), |acc, g| {
        FiniteGroup::direct_product(&acc, g)
    })
}

fn cyclics(orders: &[usize]) -> FiniteGroup {
    product(
        &orders
            .iter()
            .map(|&n| FiniteGroup::cyclic(n))
            .collect::<Vec<_>>(),
    )
}

/// `N ⋊ Z/2` where the generator acts on `N` by the involution `theta`;
/// element `(x, s)` at `2x + s`.
fn semidirect_z2(n: &FiniteGroup, theta: impl Fn(usize) -> usize) -> FiniteGroup {
    let names = (0..2 * n.order())
        .map(|k| format!("({},{})", n.name(k / 2), k % 2))
        .collect();
    FiniteGroup::from_fn(names, |x, y| {
        let (a, s, b, t) = (x / 2, x % 2, y / 2, y % 2);
        let b = if s == 1 { theta(b) } else { b };
        n.mul(a, b) * 2 + (s + t) % 2
    })
    .expect("an involutive automorphism gives a semidirect product")
}

/// `G/Z` for a central subgroup `Z` (given by its elements); cosets are
/// numbered by least member.
fn central_quotient(g: &FiniteGroup, z: &[usize]) -> FiniteGroup {
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] == usize::MAX {
            for &c in z {
                coset[g.mul(x, c)] = reps.len();
            }
            reps.push(x);
        }
    }
    let names = reps.iter().map(|&x| g.name(x).to_string()).collect();
    FiniteGroup::from_fn(names, |a, b| coset[g.mul(reps[a], reps[b])])
        .expect("quotient by a central subgroup")
}

fn pauli() -> FiniteGroup {
    // D8 ∘ Z4: identify the central involution of D8 with 2 ∈ Z4.
    let d8 = dihedral(4);
    let g = FiniteGroup::direct_product(&d8, &FiniteGroup::cyclic(4));
    let z = d8
        .elements()
        .find(|&x| x != d8.identity() && d8.elements().all(|y| d8.mul(x, y) == d8.mul(y, x)));
    let z = z.expect("D8 has a central involution");
    central_quotient(&g, &[0, z * 4 + 2])
}

/// Builds a catalog group from its construction.
pub fn construct(name: &str) -> FiniteGroup {
    match name {
        "Z1" => FiniteGroup::trivial(),
        "S3" => dihedral(3),
        "D8" => dihedral(4),
        "D10" => dihedral(5),
        "D12" => dihedral(6),
        "D14" => dihedral(7),
        "D16" => dihedral(8),
        "Q8" => metacyclic(4, 2, 2, 3),
        "Dic12" => metacyclic(6, 2, 3, 5),
        "Q16" => metacyclic(8, 2, 4, 7),
        "SD16" => metacyclic(8, 2, 0, 3),
        "M16" => metacyclic(8, 2, 0, 5),
        "Z4sZ4" => metacyclic(4, 4, 0, 3),
        "A4" => {
            FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).expect("A4")
        }
        "Z4xZ2sZ2" => {
            // (x, y) ↦ (x, y + x mod 2) on Z4 × Z2, element (x, y) at 2x + y.
            semidirect_z2(&cyclics(&[4, 2]), |k| {
                let (x, y) = (k / 2, k % 2);
                2 * x + (y + x) % 2
            })
        }
        "Z2xD8" => product(&[FiniteGroup::cyclic(2), dihedral(4)]),
        "Z2xQ8" => product(&[FiniteGroup::cyclic(2), metacyclic(4, 2, 2, 3)]),
        "Pauli" => pauli(),
        _ => {
            let orders: Vec<usize> = name
                .split('x')
                .map(|part| part.strip_prefix('Z').and_then(|n| n.parse().ok()))
                .collect::<Option<_>>()
                .unwrap_or_else(|| panic!("unknown catalog group {name}"));
            cyclics(&orders)
        }
    }
}

/// The bundled catalog, parsed from the embedded files.
pub fn groups() -> Vec<(String, Arc<FiniteGroup>)> {
    BUNDLED
        .iter()
        .map(|&(name, text)| {
            let g = format::parse_group_text(text)
                .unwrap_or_else(|e| panic!("bundled group {name}: {e}"));
            (name.to_string(), Arc::new(g))
        })
        .collect()
}

/// A bundled group by name.
pub fn group(name: &str) -> Option<Arc<FiniteGroup>> {
    let (_, text) = BUNDLED.iter().find(|(n, _)| *n == name)?;
    format::parse_group_text(text).ok().map(Arc::new)
}

/// Groups of the catalog with order at most `n`.
pub fn up_to_order(n: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    groups()
        .into_iter()
        .filter(|(_, g)| g.order() <= n)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use grcat_core::algebra::find_isomorphism;

    #[test]
    fn bundled_files_match_constructions() {
        let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("catalog");
        let write = std::env::var_os("GRCAT_WRITE_CATALOG").is_some();
        for &(name, text) in BUNDLED {
            let expected = format::render(&format::group_value(&construct(name)));
            if write {
                std::fs::write(dir.join(format!("{name}.json")), &expected).unwrap();
            } else {
                assert_eq!(text, expected, "catalog file for {name} is stale");
            }
        }
    }

    #[test]
    fn orders_and_counts() {
        let all = groups();
        assert_eq!(all.len(), 42);
        let mut per_order = [0usize; 17];
        for (_, g) in &all {
            g.validate().unwrap();
            per_order[g.order()] += 1;
        }
        assert_eq!(
            per_order,
            [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14]
        );
    }

    #[test]
    fn pairwise_non_isomorphic() {
        let all = groups();
        for (i, (a, g)) in all.iter().enumerate() {
            for (b, h) in &all[i + 1..] {
                if g.order() == h.order() {
                    assert!(find_isomorphism(g, h).is_none(), "{a} ≅ {b}");
                }
            }
        }
    }
}
