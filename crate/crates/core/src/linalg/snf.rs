use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A dense integer matrix with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<_> = (0..self.cols).map(|c| self[(r, c)].clone()).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        IntMatrix {
            rows,
            cols,
            data: entries.iter().map(|&x| BigInt::from(x)).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&k| !v[k].is_zero())
                    .map(|k| &self[(i, k)] * &v[k])
                    .sum()
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hcat(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c];
            if !v.is_zero() {
                let add = v * k;
                self.data[dst * self.cols + c] += add;
            }
        }
    }

    /// `col[dst] += k * col[src]`.
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src];
            if !v.is_zero() {
                let add = v * k;
                self.data[r * self.cols + dst] += add;
            }
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = &mut self.data[r * self.cols + c];
            *v = -core::mem::take(v);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = &mut self.data[r * self.cols + c];
            *v = -core::mem::take(v);
        }
    }
}

/// `u · a · v = diag(d₁, …, d_r, 0, …)` with `dᵢ | dᵢ₊₁`, `dᵢ > 0`, and
/// `u`, `v` unimodular. `u_inv` is tracked alongside `u`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub v: IntMatrix,
}

/// Smith normal form by exact elimination with the smallest-magnitude
/// nonzero entry as pivot.
pub fn smith(a: &IntMatrix) -> Smith {
    smith_tracking(a, Track::ALL)
}

/// Which transforms to accumulate; untracked ones come back as `0×0`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Track {
    pub u: bool,
    pub u_inv: bool,
    pub v: bool,
}

impl Track {
    pub const ALL: Track = Track {
        u: true,
        u_inv: true,
        v: true,
    };
}

pub(crate) fn smith_tracking(a: &IntMatrix, track: Track) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let square = |on: bool, k: usize| {
        if on {
            IntMatrix::identity(k)
        } else {
            IntMatrix::zeros(0, 0)
        }
    };
    let mut u = square(track.u, m);
    let mut u_inv = square(track.u_inv, m);
    let mut v = square(track.v, n);
    let mut rank = 0;

    // Row operation E on s and u, E⁻¹ on the right of u_inv.
    macro_rules! swap_rows {
        ($a:expr, $b:expr) => {{
            s.swap_rows($a, $b);
            if track.u {
                u.swap_rows($a, $b);
            }
            if track.u_inv {
                u_inv.swap_cols($a, $b);
            }
        }};
    }
    macro_rules! add_row {
        ($dst:expr, $src:expr, $k:expr) => {{
            let k: BigInt = $k;
            s.add_row($dst, $src, &k);
            if track.u {
                u.add_row($dst, $src, &k);
            }
            if track.u_inv {
                u_inv.add_col($src, $dst, &(-k));
            }
        }};
    }

    for t in 0..m.min(n) {
        loop {
            let mut pivot: Option<(usize, usize)> = None;
            'search: for i in t..m {
                for j in t..n {
                    let x = &s[(i, j)];
                    if x.is_zero() {
                        continue;
                    }
                    if pivot.is_none_or(|(pi, pj)| x.magnitude() < s[(pi, pj)].magnitude()) {
                        pivot = Some((i, j));
                        if x.magnitude().is_one() {
                            break 'search;
                        }
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                return finish(s, u, u_inv, v, rank);
            };
            swap_rows!(t, pi);
            s.swap_cols(t, pj);
            if track.v {
                v.swap_cols(t, pj);
            }

            let p = s[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..m {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = s[(i, t)].div_floor(&p);
                add_row!(i, t, -q);
                if !s[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&p);
                s.add_col(j, t, &q);
                if track.v {
                    v.add_col(j, t, &q);
                }
                if !s[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // The pivot must divide the rest of the block.
            if p.magnitude().is_one() {
                break;
            }
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s[(i, j)].is_multiple_of(&p)));
            match offender {
                Some(i) => add_row!(t, i, BigInt::one()),
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            if track.u {
                u.negate_row(t);
            }
            if track.u_inv {
                u_inv.negate_col(t);
            }
        }
        rank += 1;
    }
    finish(s, u, u_inv, v, rank)
}

fn finish(s: IntMatrix, u: IntMatrix, u_inv: IntMatrix, v: IntMatrix, rank: usize) -> Smith {
    let diagonal = (0..rank).map(|i| s[(i, i)].clone()).collect();
    Smith {
        diagonal,
        rank,
        u,
        u_inv,
        v,
    }
}

/// An integer solution of `a · x = b`, if any.
pub fn solve(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_tracking(
        a,
        Track {
            u: true,
            u_inv: false,
            v: true,
        },
    );
    let ub = snf.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < snf.rank {
            let (q, r) = ubi.div_rem(&snf.diagonal[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(snf.v.mul_vec(&y))
}

/// A basis of the integer kernel of `a`, as the columns of the result.
pub fn kernel(a: &IntMatrix) -> IntMatrix {
    let snf = smith_tracking(
        a,
        Track {
            u: false,
            u_inv: false,
            v: true,
        },
    );
    let k = a.cols - snf.rank;
    let mut out = IntMatrix::zeros(a.cols, k);
    for j in 0..k {
        for r in 0..a.cols {
            out[(r, j)] = snf.v[(r, snf.rank + j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) {
        let s = smith(a);
        let d = s.u.mul(a).mul(&s.v);
        for i in 0..a.rows {
            for j in 0..a.cols {
                let expect = if i == j && i < s.rank {
                    s.diagonal[i].clone()
                } else {
                    BigInt::zero()
                };
                assert_eq!(d[(i, j)], expect, "entry ({i},{j})");
            }
        }
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(a.rows));
        for w in s.diagonal.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn textbook_example() {
        let a = IntMatrix::from_i64(3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        let s = smith(&a);
        assert_eq!(
            s.diagonal,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        check(&a);
    }

    #[test]
    fn rectangular_and_degenerate() {
        check(&IntMatrix::from_i64(2, 3, &[2, 0, 0, 0, 3, 0]));
        check(&IntMatrix::from_i64(3, 2, &[0, 0, 0, 0, 0, 0]));
        check(&IntMatrix::from_i64(2, 4, &[4, 6, 8, 10, 6, 9, 12, 15]));
        let s = smith(&IntMatrix::from_i64(2, 2, &[2, 0, 0, 3]));
        assert_eq!(s.diagonal, vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_i64(2, 3, &[2, 4, 6, 1, 1, 1]);
        let b = vec![BigInt::from(8), BigInt::from(3)];
        let x = solve(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
        assert!(solve(&a, &[BigInt::from(1), BigInt::from(0)]).is_none());
        let k = kernel(&a);
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).data.iter().all(Zero::is_zero));
    }

    use proptest::prelude::*;

    proptest! {
        #[test]
        fn smith_decomposition_holds(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..10, 16)) {
            let entries: Vec<i64> = seed.iter().cycle().take(rows * cols).copied().collect();
            check(&IntMatrix::from_i64(rows, cols, &entries));
        }
    }
}
