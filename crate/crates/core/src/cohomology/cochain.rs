use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::PiModule;
use crate::error::{Error, Result};

/// A normalized cochain `Πⁿ → A` relative to a fixed module.
///
/// Only tuples of non-identity elements are stored, tuple-major in
/// lexicographic order with coordinates innermost; tuples containing the
/// identity are zero by construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cochain {
    degree: usize,
    values: Vec<u32>,
}

/// Number of stored tuples of a normalized cochain of degree `n`.
pub fn tuple_count(m: &PiModule, n: usize) -> usize {
    m.nonidentity().len().pow(n as u32)
}

/// Non-identity `n`-tuples in storage order.
pub fn tuples(m: &PiModule, n: usize) -> impl Iterator<Item = Vec<usize>> + '_ {
    let base = m.nonidentity().len();
    (0..tuple_count(m, n)).map(move |mut i| {
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = m.nonidentity()[i % base];
            i /= base;
        }
        t
    })
}

impl Cochain {
    pub fn zero(m: &PiModule, degree: usize) -> Self {
        Cochain {
            degree,
            values: vec![0; tuple_count(m, degree) * m.carrier().rank()],
        }
    }

    /// Builds a cochain from its values on non-identity tuples.
    pub fn from_fn(m: &PiModule, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<u32>) -> Self {
        let mut values = Vec::with_capacity(tuple_count(m, degree) * m.carrier().rank());
        for t in tuples(m, degree) {
            let v = f(&t);
            debug_assert!(m.carrier().is_element(&v));
            values.extend_from_slice(&v);
        }
        Cochain { degree, values }
    }

    /// Wraps raw coordinates in storage order; they are reduced into range.
    pub fn from_coordinates(m: &PiModule, degree: usize, coords: &[i64]) -> Self {
        let k = m.carrier().rank();
        assert_eq!(coords.len(), tuple_count(m, degree) * k);
        let mut values = Vec::with_capacity(coords.len());
        for chunk in coords.chunks(k.max(1)).take(tuple_count(m, degree)) {
            values.extend(m.carrier().reduce(chunk));
        }
        Cochain { degree, values }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Raw coordinates in storage order.
    pub fn coordinates(&self) -> &[u32] {
        &self.values
    }

    /// Storage index of a tuple, `None` if it contains the identity.
    pub fn index_of(m: &PiModule, tuple: &[usize]) -> Option<usize> {
        let base = m.nonidentity().len();
        tuple
            .iter()
            .try_fold(0, |acc, &x| Some(acc * base + m.position(x)?))
    }

    /// Value at any tuple; zero when a component is the identity.
    pub fn value(&self, m: &PiModule, tuple: &[usize]) -> Vec<u32> {
        debug_assert_eq!(tuple.len(), self.degree);
        match Self::index_of(m, tuple) {
            Some(i) => self.slot(m, i).to_vec(),
            None => m.carrier().zero(),
        }
    }

    fn slot(&self, m: &PiModule, i: usize) -> &[u32] {
        let k = m.carrier().rank();
        &self.values[i * k..(i + 1) * k]
    }

    /// Sets the value at a tuple. Nonzero values on identity tuples are
    /// rejected.
    pub fn set(&mut self, m: &PiModule, tuple: &[usize], v: &[u32]) -> Result<()> {
        match Self::index_of(m, tuple) {
            Some(i) => {
                let k = m.carrier().rank();
                self.values[i * k..(i + 1) * k].copy_from_slice(v);
                Ok(())
            }
            None if v.iter().all(|&x| x == 0) => Ok(()),
            None => Err(Error::NotNormalized(tuple.to_vec())),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }

    fn zip_with(
        &self,
        m: &PiModule,
        other: &Cochain,
        op: impl Fn(u32, u32, u32) -> u32,
    ) -> Cochain {
        assert_eq!(self.degree, other.degree);
        let factors = m.carrier().invariant_factors();
        let k = factors.len().max(1);
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (&a, &b))| op(a, b, factors[i % k]))
            .collect();
        Cochain {
            degree: self.degree,
            values,
        }
    }

    pub fn add(&self, m: &PiModule, other: &Cochain) -> Cochain {
        self.zip_with(m, other, |a, b, d| {
            ((a as u64 + b as u64) % d as u64) as u32
        })
    }

    pub fn sub(&self, m: &PiModule, other: &Cochain) -> Cochain {
        self.zip_with(m, other, |a, b, d| {
            ((a as u64 + (d - b) as u64) % d as u64) as u32
        })
    }

    pub fn neg(&self, m: &PiModule) -> Cochain {
        Cochain::zero(m, self.degree).sub(m, self)
    }

    /// Non-identity tuples with their values.
    pub fn entries<'a>(
        &'a self,
        m: &'a PiModule,
    ) -> impl Iterator<Item = (Vec<usize>, &'a [u32])> + 'a {
        tuples(m, self.degree)
            .enumerate()
            .map(move |(i, t)| (t, self.slot(m, i)))
    }

    /// Extends to every tuple, identity tuples included.
    pub fn to_full(&self, m: &PiModule) -> FullCochain {
        FullCochain::from_fn(m, self.degree, |t| self.value(m, t))
    }
}

/// A cochain given on all `|Π|ⁿ` tuples, not necessarily normalized.
/// Used where input may violate normalization and the violation must be
/// reported rather than made unrepresentable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FullCochain {
    degree: usize,
    order: usize,
    rank: usize,
    values: Vec<u32>,
}

impl FullCochain {
    pub fn zero(m: &PiModule, degree: usize) -> Self {
        let order = m.group().order();
        let rank = m.carrier().rank();
        FullCochain {
            degree,
            order,
            rank,
            values: vec![0; order.pow(degree as u32) * rank],
        }
    }

    pub fn from_fn(m: &PiModule, degree: usize, mut f: impl FnMut(&[usize]) -> Vec<u32>) -> Self {
        let mut c = Self::zero(m, degree);
        let mut t = vec![0; degree];
        for i in 0..c.order.pow(degree as u32) {
            let mut r = i;
            for slot in t.iter_mut().rev() {
                *slot = r % c.order;
                r /= c.order;
            }
            let v = f(&t);
            c.values[i * c.rank..(i + 1) * c.rank].copy_from_slice(&v);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &x| acc * self.order + x)
    }

    pub fn value(&self, tuple: &[usize]) -> &[u32] {
        let i = self.index(tuple);
        &self.values[i * self.rank..(i + 1) * self.rank]
    }

    pub fn set(&mut self, tuple: &[usize], v: &[u32]) {
        let i = self.index(tuple);
        self.values[i * self.rank..(i + 1) * self.rank].copy_from_slice(v);
    }

    /// All tuples containing the identity that carry a nonzero value.
    pub fn normalization_failures(&self, m: &PiModule) -> Vec<Vec<usize>> {
        let e = m.group().identity();
        let mut out = Vec::new();
        let mut t = vec![0; self.degree];
        for i in 0..self.order.pow(self.degree as u32) {
            let mut r = i;
            for slot in t.iter_mut().rev() {
                *slot = r % self.order;
                r /= self.order;
            }
            if t.contains(&e) && self.value(&t).iter().any(|&x| x != 0) {
                out.push(t.clone());
            }
        }
        out
    }

    /// The normalized cochain, or the first identity tuple with a nonzero value.
    pub fn normalize(&self, m: &PiModule) -> Result<Cochain> {
        if let Some(t) = self.normalization_failures(m).into_iter().next() {
            return Err(Error::NotNormalized(t));
        }
        Ok(Cochain::from_fn(m, self.degree, |t| self.value(t).to_vec()))
    }
}

/// The bar-resolution coboundary
/// `(δf)(g₁,…,g_{n+1}) = g₁·f(g₂,…) + Σᵢ (−1)ⁱ f(…, gᵢgᵢ₊₁, …) + (−1)^{n+1} f(g₁,…,g_n)`.
pub fn coboundary(m: &PiModule, c: &Cochain) -> Result<Cochain> {
    let n = c.degree();
    if n > 3 {
        return Err(Error::DegreeTooHigh(n));
    }
    let g = m.group();
    let a = m.carrier();
    let k = a.rank();
    let mut acc = vec![0i64; k];
    let mut scratch = vec![0usize; n];
    let out = Cochain::from_fn(m, n + 1, |t| {
        acc.iter_mut().for_each(|x| *x = 0);
        let mut add = |v: &[u32], sign: i64| {
            for (s, &x) in acc.iter_mut().zip(v) {
                *s += sign * x as i64;
            }
        };
        add(&m.act(t[0], &c.value(m, &t[1..])), 1);
        for i in 0..n {
            for (j, slot) in scratch.iter_mut().enumerate() {
                *slot = match j.cmp(&i) {
                    core::cmp::Ordering::Less => t[j],
                    core::cmp::Ordering::Equal => g.mul(t[i], t[i + 1]),
                    core::cmp::Ordering::Greater => t[j + 1],
                };
            }
            let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
            add(&c.value(m, &scratch), sign);
        }
        let sign = if (n + 1) % 2 == 0 { 1 } else { -1 };
        add(&c.value(m, &t[..n]), sign);
        a.reduce(&acc)
    });
    Ok(out)
}

pub fn is_cocycle(m: &PiModule, c: &Cochain) -> bool {
    coboundary(m, c).is_ok_and(|d| d.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteAbelianGroup, FiniteGroup};
    use alloc::sync::Arc;

    fn z2_z2() -> PiModule {
        PiModule::trivial(
            Arc::new(FiniteGroup::cyclic(2)),
            FiniteAbelianGroup::cyclic(2),
        )
    }

    #[test]
    fn z2_two_cocycle_by_hand() {
        let m = z2_z2();
        let mut k = Cochain::zero(&m, 2);
        k.set(&m, &[1, 1], &[1]).unwrap();
        let dk = coboundary(&m, &k).unwrap();
        // σ·k(σ,σ) − k(1,σ) + k(σ,1) − k(σ,σ) = 1 + 0 + 0 + 1 = 0
        assert_eq!(dk.value(&m, &[1, 1, 1]), vec![0]);
        assert!(is_cocycle(&m, &k));
    }

    #[test]
    fn z2_three_cochain_is_cocycle() {
        let m = z2_z2();
        let mut xi = Cochain::zero(&m, 3);
        xi.set(&m, &[1, 1, 1], &[1]).unwrap();
        let d = coboundary(&m, &xi).unwrap();
        assert_eq!(d.degree(), 4);
        assert!(d.is_zero());
    }

    #[test]
    fn identity_tuples_are_rejected() {
        let m = z2_z2();
        let mut c = Cochain::zero(&m, 2);
        assert_eq!(
            c.set(&m, &[1, 0], &[1]),
            Err(Error::NotNormalized(vec![1, 0]))
        );
        assert!(c.set(&m, &[1, 0], &[0]).is_ok());
        let mut full = FullCochain::zero(&m, 3);
        full.set(&[1, 0, 1], &[1]);
        assert_eq!(full.normalization_failures(&m), vec![vec![1, 0, 1]]);
        assert!(full.normalize(&m).is_err());
    }

    #[test]
    fn degree_four_input_is_rejected() {
        let m = z2_z2();
        assert_eq!(
            coboundary(&m, &Cochain::zero(&m, 4)),
            Err(Error::DegreeTooHigh(4))
        );
    }

    #[test]
    fn degree_zero_coboundary() {
        let neg = PiModule::new(
            Arc::new(FiniteGroup::cyclic(2)),
            FiniteAbelianGroup::cyclic(4),
            vec![vec![vec![1]], vec![vec![3]]],
        )
        .unwrap();
        let mut a = Cochain::zero(&neg, 0);
        a.set(&neg, &[], &[1]).unwrap();
        // (δa)(σ) = σ·a − a = 3 − 1 = 2
        assert_eq!(coboundary(&neg, &a).unwrap().value(&neg, &[1]), vec![2]);
    }
}
