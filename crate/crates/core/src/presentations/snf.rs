//! Smith normal form over arbitrary-precision integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Matrix = Vec<Vec<BigInt>>;

/// `u * m * w = d` with `u`, `w` unimodular and `d` diagonal, each diagonal
/// entry non-negative and dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub diagonal: Vec<BigInt>,
    pub d: Matrix,
    pub u: Matrix,
    pub w: Matrix,
}

pub fn identity(n: usize) -> Matrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

pub fn from_i64(rows: &[Vec<i64>]) -> Matrix {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

pub fn multiply(a: &Matrix, b: &Matrix) -> Matrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j])).collect())
        .collect()
}

struct State {
    d: Matrix,
    u: Matrix,
    w: Matrix,
    rows: usize,
    cols: usize,
}

impl State {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.d.swap(i, j);
        self.u.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for row in self.d.iter_mut().chain(self.w.iter_mut()) {
            row.swap(i, j);
        }
    }

    /// row_i -= q * row_j
    fn sub_row(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.d, &mut self.u] {
            let src = m[j].clone();
            for (x, y) in m[i].iter_mut().zip(src) {
                *x -= q * y;
            }
        }
    }

    /// col_i -= q * col_j
    fn sub_col(&mut self, i: usize, j: usize, q: &BigInt) {
        for m in [&mut self.d, &mut self.w] {
            for row in m.iter_mut() {
                let y = row[j].clone();
                row[i] -= q * y;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for m in [&mut self.d, &mut self.u] {
            for x in m[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }

    fn smallest_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.d[i][j];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    /// Clears row and column `t` outside the pivot; returns false if a
    /// remainder forced a new, smaller pivot.
    fn clear(&mut self, t: usize) -> bool {
        let mut clean = true;
        for i in t + 1..self.rows {
            if !self.d[i][t].is_zero() {
                let q = self.d[i][t].div_floor(&self.d[t][t]);
                self.sub_row(i, t, &q);
                clean &= self.d[i][t].is_zero();
            }
        }
        for j in t + 1..self.cols {
            if !self.d[t][j].is_zero() {
                let q = self.d[t][j].div_floor(&self.d[t][t]);
                self.sub_col(j, t, &q);
                clean &= self.d[t][j].is_zero();
            }
        }
        clean
    }
}

pub fn smith_normal_form(m: &Matrix) -> Snf {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut s = State { d: m.clone(), u: identity(rows), w: identity(cols), rows, cols };
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = s.smallest_nonzero(t) else { break };
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        if !s.clear(t) {
            continue;
        }
        // the pivot must divide the remaining block
        let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.d[i][j].is_multiple_of(&s.d[t][t])));
        if let Some(i) = bad {
            let minus_one = -BigInt::one();
            s.sub_row(t, i, &minus_one);
            continue;
        }
        if s.d[t][t].is_negative() {
            s.negate_row(t);
        }
        t += 1;
    }
    let diagonal = (0..rows.min(cols)).map(|i| s.d[i][i].clone()).collect();
    Snf { diagonal, d: s.d, u: s.u, w: s.w }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn det(m: &Matrix) -> BigInt {
        // cofactor expansion, fine for the tiny sizes used here
        let n = m.len();
        if n == 0 {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for j in 0..n {
            let minor: Matrix = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][j] * det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    /// gcd of all k×k minors
    fn determinantal_divisor(m: &Matrix, k: usize) -> BigInt {
        let rows = m.len();
        let cols = m[0].len();
        let mut g = BigInt::zero();
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Matrix = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect()).collect();
                g = g.gcd(&det(&minor));
            }
        }
        g
    }

    #[test]
    fn examples() {
        let snf = smith_normal_form(&from_i64(&[vec![0, 2, 2]]));
        assert_eq!(snf.diagonal, vec![BigInt::from(2)]);
        let snf = smith_normal_form(&from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]));
        assert_eq!(snf.diagonal, [2, 6, 12].map(BigInt::from).to_vec());
    }

    #[test]
    fn random_matrices_against_determinantal_divisors() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
            let m: Matrix = (0..r).map(|_| (0..c).map(|_| BigInt::from(rng.gen_range(-5..=5))).collect()).collect();
            let snf = smith_normal_form(&m);
            assert_eq!(multiply(&multiply(&snf.u, &m), &snf.w), snf.d);
            assert!(det(&snf.u).abs().is_one() && det(&snf.w).abs().is_one());
            for i in 0..r {
                for j in 0..c {
                    if i != j {
                        assert!(snf.d[i][j].is_zero());
                    }
                }
            }
            for pair in snf.diagonal.windows(2) {
                assert!(pair[1].is_multiple_of(&pair[0]) || pair[0].is_zero() && pair[1].is_zero());
                assert!(!pair[0].is_negative());
            }
            // d_1 d_2 ... d_k = gcd of k×k minors
            let mut prod = BigInt::one();
            for k in 1..=r.min(c) {
                prod *= &snf.diagonal[k - 1];
                assert_eq!(prod, determinantal_divisor(&m, k));
            }
        }
    }
}
