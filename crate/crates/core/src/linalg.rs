//! Dense matrices over a field, row-major.

use crate::scalar::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F: Field> {
    pub n: usize,
    pub data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![F::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for k in 0..n {
            m.data[k * n + k] = F::one();
        }
        m
    }

    /// Matrix whose k-th column is `cols[k]`.
    pub fn from_columns(cols: &[Vec<F>]) -> Self {
        let n = cols.len();
        let mut m = Self::zeros(n);
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter().enumerate() {
                m.data[i * n + j] = v.clone();
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.n + j]
    }

    pub fn apply(&self, v: &[F]) -> Vec<F> {
        (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.data[k * n + j];
                    if !b.is_zero() {
                        out.data[i * n + j] = out.data[i * n + j].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> F {
        (0..self.n).fold(F::zero(), |acc, k| acc + self.get(k, k).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

/// Rank of a list of vectors by Gaussian elimination (exact fields give
/// the exact rank).
pub fn rank<F: Field>(rows: &[Vec<F>]) -> usize {
    let mut m: Vec<Vec<F>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone() * inv.clone();
                for k in c..cols {
                    let t = m[r][k].clone() * f.clone();
                    m[i][k] = m[i][k].clone() - t;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    fn v(x: &[i64]) -> Vec<Q> {
        x.iter().map(|&a| Q::from_i64(a)).collect()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&[v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 0, 0])]), 1);
        assert_eq!(rank(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])]), 2);
        assert_eq!(rank(&[v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]), 3);
    }

    #[test]
    fn identity_is_neutral() {
        let m = Matrix::from_columns(&[v(&[1, 2]), v(&[3, 4])]);
        assert_eq!(m.mul(&Matrix::identity(2)), m);
        assert_eq!(m.apply(&v(&[1, 0])), v(&[1, 2]));
        assert_eq!(m.trace(), Q::from_i64(5));
    }
}
