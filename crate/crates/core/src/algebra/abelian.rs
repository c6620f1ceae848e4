use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A finite abelian group `Z/d₁ ⊕ … ⊕ Z/d_k` in invariant-factor form
/// (`dᵢ | dᵢ₊₁`, every `dᵢ ≥ 2`). Elements are residue vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        let chain_ok =
            factors.iter().all(|&d| d >= 2) && factors.windows(2).all(|w| w[1] % w[0] == 0);
        if !chain_ok {
            return Err(Error::InvalidInvariantFactors(factors));
        }
        Ok(FiniteAbelianGroup { factors })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Vec::new(),
        }
    }

    pub fn cyclic(n: u32) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            FiniteAbelianGroup { factors: vec![n] }
        }
    }

    pub fn invariant_factors(&self) -> &[u32] {
        &self.factors
    }

    /// Number of cyclic factors (length of a residue vector).
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&d| d as u64).product()
    }

    pub fn zero(&self) -> Vec<u32> {
        vec![0; self.rank()]
    }

    /// The `i`-th canonical generator.
    pub fn basis(&self, i: usize) -> Vec<u32> {
        let mut v = self.zero();
        v[i] = 1;
        v
    }

    pub fn is_element(&self, v: &[u32]) -> bool {
        v.len() == self.rank() && v.iter().zip(&self.factors).all(|(&a, &d)| a < d)
    }

    /// Reduces arbitrary integers into a residue vector.
    pub fn reduce(&self, v: &[i64]) -> Vec<u32> {
        v.iter()
            .zip(&self.factors)
            .map(|(&a, &d)| a.rem_euclid(d as i64) as u32)
            .collect()
    }

    pub fn add(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(b)
            .zip(&self.factors)
            .map(|((&x, &y), &d)| ((x as u64 + y as u64) % d as u64) as u32)
            .collect()
    }

    pub fn neg(&self, a: &[u32]) -> Vec<u32> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| (d - x) % d)
            .collect()
    }

    pub fn sub(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &[u32], k: i64) -> Vec<u32> {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| ((x as i64 * k.rem_euclid(d as i64)) % d as i64) as u32)
            .collect()
    }

    pub fn is_zero(a: &[u32]) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn element_order(&self, a: &[u32]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .map(|(&x, &d)| d as u64 / gcd(x as u64, d as u64))
            .fold(1, lcm)
    }

    /// Mixed-radix index with the first coordinate most significant, so
    /// index order is lexicographic order.
    pub fn encode(&self, a: &[u32]) -> u64 {
        a.iter()
            .zip(&self.factors)
            .fold(0, |acc, (&x, &d)| acc * d as u64 + x as u64)
    }

    pub fn decode(&self, mut index: u64) -> Vec<u32> {
        let mut v = self.zero();
        for (slot, &d) in v.iter_mut().zip(&self.factors).rev() {
            *slot = (index % d as u64) as u32;
            index /= d as u64;
        }
        v
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0..self.order()).map(move |i| self.decode(i))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// An abstract finite abelian group identified with its invariant-factor
/// form: `to_element[encode(v)]` is the element with residue vector `v`,
/// `coords[x]` the residue vector of element `x`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub group: FiniteAbelianGroup,
    pub basis: Vec<usize>,
    pub to_element: Vec<usize>,
    pub coords: Vec<Vec<u32>>,
}

/// Decomposes an abelian group on `0..n` (given by its addition and zero)
/// into invariant factors.
///
/// Each step picks an element of maximal order modulo the span so far and
/// lifts it to an element of that same order; the span stays a direct
/// summand throughout, so the chosen elements form a basis.
pub fn decompose(n: usize, zero: usize, add: impl Fn(usize, usize) -> usize) -> Decomposition {
    let mut in_span = vec![false; n];
    in_span[zero] = true;
    let mut span = vec![zero];
    let mut chosen: Vec<(usize, u32)> = Vec::new();
    let order_of = |x: usize| {
        let mut y = x;
        let mut k = 1u32;
        while y != zero {
            y = add(y, x);
            k += 1;
        }
        k
    };
    while span.len() < n {
        let mut best = (0u32, 0usize);
        for x in 0..n {
            if in_span[x] {
                continue;
            }
            let mut y = x;
            let mut k = 1;
            while !in_span[y] {
                y = add(y, x);
                k += 1;
            }
            if k > best.0 {
                best = (k, x);
            }
        }
        let (m, x) = best;
        let lift = span
            .iter()
            .map(|&s| add(x, s))
            .find(|&y| order_of(y) == m)
            .expect("a direct summand always admits an order-preserving lift");
        let mut grown = span.clone();
        let mut multiple = lift;
        for _ in 1..m {
            for &s in &span {
                let y = add(s, multiple);
                in_span[y] = true;
                grown.push(y);
            }
            multiple = add(multiple, lift);
        }
        span = grown;
        chosen.push((lift, m));
    }
    chosen.reverse();
    let group = FiniteAbelianGroup {
        factors: chosen.iter().map(|&(_, m)| m).collect(),
    };
    let basis: Vec<usize> = chosen.iter().map(|&(b, _)| b).collect();
    let mut to_element = Vec::with_capacity(n);
    let mut coords = vec![Vec::new(); n];
    for v in group.elements() {
        let mut x = zero;
        for (&c, &b) in v.iter().zip(&basis) {
            for _ in 0..c {
                x = add(x, b);
            }
        }
        coords[x] = v;
        to_element.push(x);
    }
    Decomposition {
        group,
        basis,
        to_element,
        coords,
    }
}
