//! Dense linear algebra over F_p on `u64` residues.

use std::ops::{Index, IndexMut};

use serde::Serialize;

use crate::scalar::Prime;

pub type Vector = Vec<u64>;

pub fn zero_vec(n: usize) -> Vector {
    vec![0; n]
}

pub fn unit_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = 1;
    v
}

pub fn is_zero_vec(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}

pub fn vadd(p: Prime, a: &[u64], b: &[u64]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| p.add(x, y)).collect()
}

pub fn vsub(p: Prime, a: &[u64], b: &[u64]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| p.sub(x, y)).collect()
}

pub fn vscale(p: Prime, c: u64, a: &[u64]) -> Vector {
    a.iter().map(|&x| p.mul(c, x)).collect()
}

/// acc += c * v
pub fn axpy(p: Prime, acc: &mut [u64], c: u64, v: &[u64]) {
    if c == 0 {
        return;
    }
    for (a, &x) in acc.iter_mut().zip(v) {
        *a = p.add(*a, p.mul(c, x));
    }
}

/// Row-major matrix with entries reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mat {
    p: Prime,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Index<(usize, usize)> for Mat {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Mat {
    pub fn zeros(p: Prime, rows: usize, cols: usize) -> Self {
        Mat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let mut m = Mat::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix whose j-th column is `cols[j]`.
    pub fn from_columns(p: Prime, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Mat::zeros(p, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v % p.get();
            }
        }
        m
    }

    pub fn from_rows(p: Prime, cols: usize, rows: &[Vector]) -> Self {
        let mut m = Mat::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length");
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = v % p.get();
            }
        }
        m
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.data)
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn apply(&self, v: &[u64]) -> Vector {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let p = self.p;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| p.add(acc, p.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let p = self.p;
        let mut out = Mat::zeros(p, self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o[(k, j)];
                    if b != 0 {
                        out[(i, j)] = p.add(out[(i, j)], p.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let data = vadd(self.p, &self.data, &o.data);
        Mat { data, ..*self }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "dimension mismatch");
        let data = vsub(self.p, &self.data, &o.data);
        Mat { data, ..*self }
    }

    pub fn scale(&self, c: u64) -> Mat {
        Mat { data: vscale(self.p, c % self.p.get(), &self.data), ..*self }
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.p, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Stacks `self` on top of `o`.
    pub fn vstack(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.cols, "dimension mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&o.data);
        Mat { p: self.p, rows: self.rows + o.rows, cols: self.cols, data }
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Mat) -> (Mat, Vec<usize>) {
    let p = m.p;
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(piv) = (r..a.rows).find(|&i| a[(i, c)] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..a.cols {
                a.data.swap(piv * a.cols + j, r * a.cols + j);
            }
        }
        let inv = p.inv(a[(r, c)]).unwrap();
        for j in c..a.cols {
            a[(r, j)] = p.mul(a[(r, j)], inv);
        }
        for i in 0..a.rows {
            if i == r || a[(i, c)] == 0 {
                continue;
            }
            let f = a[(i, c)];
            for j in c..a.cols {
                let v = p.mul(f, a[(r, j)]);
                a[(i, j)] = p.sub(a[(i, j)], v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Mat) -> usize {
    rref(m).1.len()
}

/// Basis of {v : m v = 0}, one vector per free column.
pub fn nullspace(m: &Mat) -> Vec<Vector> {
    let p = m.p;
    let (r, pivots) = rref(m);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = zero_vec(m.cols);
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = p.neg(r[(row, f)]);
            }
            v
        })
        .collect()
}

/// One solution of m x = b with free variables set to zero, if any exists.
pub fn solve(m: &Mat, b: &[u64]) -> Option<Vector> {
    assert_eq!(b.len(), m.rows, "dimension mismatch");
    let p = m.p;
    let mut aug = Mat::zeros(p, m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)];
        }
        aug[(i, m.cols)] = b[i] % p.get();
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = zero_vec(m.cols);
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = r[(row, m.cols)];
    }
    Some(x)
}

/// Coordinates of `v` in the span of `basis`, if it lies there.
pub fn coordinates(p: Prime, basis: &[Vector], v: &[u64]) -> Option<Vector> {
    let m = Mat::from_columns(p, v.len(), basis);
    solve(&m, v)
}
