use alloc::vec;
use alloc::vec::Vec;

/// A subgroup of `Z/d₀ ⊕ … ⊕ Z/d_{N-1}` held as an echelon basis of its
/// preimage lattice in `Z^N`.
///
/// The pivot for column `c` is a lattice vector whose first nonzero
/// coordinate is `c`, with positive pivot value dividing `d_c`; a missing
/// pivot stands for `d_c·e_c`. Because `d_c·e_c` lies in the lattice, every
/// coordinate after the pivot is kept reduced into `[0, d)`, so entries
/// stay bounded.
///
/// Optionally each pivot carries a witness: its expression in the
/// generators, as a residue vector over `witness_moduli`.
#[derive(Debug, Clone)]
pub struct EchelonLattice {
    moduli: Vec<i64>,
    witness_moduli: Vec<i64>,
    pivots: Vec<Option<Pivot>>,
}

#[derive(Debug, Clone)]
struct Pivot {
    v: Vec<i64>,
    w: Vec<i64>,
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn combine(s: i64, a: &[i64], t: i64, b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(&x, &y)| s * x + t * y).collect()
}

fn reduce_all(v: &mut [i64], moduli: &[i64]) {
    for (x, &d) in v.iter_mut().zip(moduli) {
        *x = x.rem_euclid(d);
    }
}

impl EchelonLattice {
    /// The subgroup generated by `gens` (residue vectors).
    pub fn new(moduli: &[u32], gens: impl IntoIterator<Item = Vec<u32>>) -> Self {
        Self::with_witnesses(moduli, &[], gens.into_iter().map(|g| (g, Vec::new())))
    }

    /// The subgroup generated by the first components of `gens`, each
    /// tagged with a witness vector over `witness_moduli` that is carried
    /// along linearly.
    pub fn with_witnesses(
        moduli: &[u32],
        witness_moduli: &[u32],
        gens: impl IntoIterator<Item = (Vec<u32>, Vec<u32>)>,
    ) -> Self {
        let mut lattice = EchelonLattice {
            moduli: moduli.iter().map(|&d| d as i64).collect(),
            witness_moduli: witness_moduli.iter().map(|&d| d as i64).collect(),
            pivots: vec![None; moduli.len()],
        };
        for (g, w) in gens {
            let v = g.iter().map(|&x| x as i64).collect();
            let w = if witness_moduli.is_empty() {
                Vec::new()
            } else {
                w.iter().map(|&x| x as i64).collect()
            };
            lattice.insert(v, w);
        }
        lattice
    }

    fn reduce_tail(&self, v: &mut [i64], from: usize) {
        for c in from..v.len() {
            v[c] = v[c].rem_euclid(self.moduli[c]);
        }
    }

    /// The pivot vector and witness for column `c`, materializing `d_c·e_c`.
    fn pivot(&self, c: usize) -> (Vec<i64>, Vec<i64>) {
        match &self.pivots[c] {
            Some(p) => (p.v.clone(), p.w.clone()),
            None => {
                let mut v = vec![0; self.moduli.len()];
                v[c] = self.moduli[c];
                (v, vec![0; self.witness_moduli.len()])
            }
        }
    }

    fn pivot_value(&self, c: usize) -> i64 {
        self.pivots[c].as_ref().map_or(self.moduli[c], |p| p.v[c])
    }

    fn insert(&mut self, mut v: Vec<i64>, mut w: Vec<i64>) {
        let n = v.len();
        self.reduce_tail(&mut v, 0);
        for c in 0..n {
            if v[c] == 0 {
                continue;
            }
            let (b, bw) = self.pivot(c);
            let (g, s, t) = ext_gcd(b[c], v[c]);
            let (bc, vc) = (b[c] / g, v[c] / g);
            let mut new_v = combine(s, &b, t, &v);
            let mut new_w = combine(s, &bw, t, &w);
            let mut rest_v = combine(vc, &b, -bc, &v);
            let mut rest_w = combine(vc, &bw, -bc, &w);
            self.reduce_tail(&mut new_v, c + 1);
            self.reduce_tail(&mut rest_v, c + 1);
            reduce_all(&mut new_w, &self.witness_moduli);
            reduce_all(&mut rest_w, &self.witness_moduli);
            debug_assert_eq!(rest_v[c], 0);
            self.pivots[c] = Some(Pivot { v: new_v, w: new_w });
            v = rest_v;
            w = rest_w;
        }
    }

    /// Number of elements of the subgroup.
    pub fn order(&self) -> u128 {
        (0..self.moduli.len())
            .map(|c| (self.moduli[c] / self.pivot_value(c)) as u128)
            .product()
    }

    /// The lexicographically least element of the coset `z + subgroup`.
    pub fn reduce(&self, z: &[u32]) -> Vec<u32> {
        self.reduce_with_witness(z).0
    }

    /// The least element `r` of `z + subgroup` together with a witness `w`
    /// such that `z − r` is the combination of generators given by `w`.
    pub fn reduce_with_witness(&self, z: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let mut v: Vec<i64> = z.iter().map(|&x| x as i64).collect();
        let mut w = vec![0i64; self.witness_moduli.len()];
        for c in 0..v.len() {
            let Some(p) = &self.pivots[c] else {
                v[c] = v[c].rem_euclid(self.moduli[c]);
                continue;
            };
            let q = v[c].div_euclid(p.v[c]);
            if q != 0 {
                for k in c..v.len() {
                    v[k] -= q * p.v[k];
                }
                for (x, &y) in w.iter_mut().zip(&p.w) {
                    *x += q * y;
                }
                reduce_all(&mut w, &self.witness_moduli);
            }
            self.reduce_tail(&mut v, c + 1);
        }
        (
            v.into_iter().map(|x| x as u32).collect(),
            w.into_iter().map(|x| x as u32).collect(),
        )
    }

    pub fn contains(&self, z: &[u32]) -> bool {
        self.reduce(z).iter().all(|&x| x == 0)
    }
}
