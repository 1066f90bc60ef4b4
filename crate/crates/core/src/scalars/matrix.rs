use std::fmt;

use rand::Rng;

use super::field::Field;

/// Dense matrix over an exact field, stored row-major.
#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols)
                .map(|j| self.field.fmt_elem(self.get(i, j)))
                .collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &F, rows: Vec<Vec<F::Elem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            field: field.clone(),
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn from_i64(field: &F, rows: &[Vec<i64>]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows)
    }

    /// Square matrix from a row-major flat vector.
    pub fn from_flat(field: &F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn unit(field: &F, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, field.one());
        m
    }

    pub fn random<R: Rng + ?Sized>(field: &F, rows: usize, cols: usize, rng: &mut R) -> Self {
        let data = (0..rows * cols).map(|_| field.random_elem(rng)).collect();
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[F::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn flat(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.field, self.rows)
    }

    pub fn map(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|x| self.field.mul(x, c))
    }

    pub fn neg(&self) -> Self {
        self.map(|x| self.field.neg(x))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let k = &self.field;
        let mut out = Self::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if k.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if k.is_zero(b) {
                        continue;
                    }
                    let v = k.add(out.get(i, j), &k.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    acc = self.field.add(&acc, &self.field.mul(a, b));
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: usize) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(&self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> F::Elem {
        self.field.sum((0..self.rows).map(|i| self.get(i, i)))
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        rref(self)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        kernel_basis(self)
    }

    /// One solution of `self * x = b` with free variables set to zero.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let k = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_rows(k, &mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![k.zero(); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = rows[i][self.cols].clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let k = &self.field;
        let mut rows: Vec<Vec<F::Elem>> = (0..n)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend((0..n).map(|j| if i == j { k.one() } else { k.zero() }));
                r
            })
            .collect();
        let pivots = rref_rows(k, &mut rows, 2 * n);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let data = rows.into_iter().flat_map(|r| r[n..].to_vec()).collect();
        Some(Matrix {
            field: k.clone(),
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn det(&self) -> F::Elem {
        assert!(self.is_square());
        let k = &self.field;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = k.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !k.is_zero(&a[i][c])) else {
                return k.zero();
            };
            if p != c {
                a.swap(p, c);
                det = k.neg(&det);
            }
            let piv = a[c][c].clone();
            det = k.mul(&det, &piv);
            let inv = k.inv(&piv).unwrap();
            for i in c + 1..n {
                if k.is_zero(&a[i][c]) {
                    continue;
                }
                let factor = k.mul(&a[i][c], &inv);
                for j in c..n {
                    let v = k.sub(&a[i][j], &k.mul(&factor, &a[c][j]));
                    a[i][j] = v;
                }
            }
        }
        det
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Matrix {
            field: self.field.clone(),
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Least k with self^k = 0, if nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = Self::identity(&self.field, self.rows);
        for k in 0..=self.rows {
            if p.is_zero() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

/// Reduced row echelon form of a list of rows in place; returns pivot columns.
/// Zero rows end up at the bottom.
pub(crate) fn rref_rows<F: Field>(k: &F, rows: &mut [Vec<F::Elem>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !k.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = k.inv(&rows[r][c]).unwrap();
        if !k.is_one(&rows[r][c]) {
            for j in c..ncols {
                rows[r][j] = k.mul(&rows[r][j], &inv);
            }
        }
        let (head, tail) = rows.split_at_mut(r);
        let (pivot_row, rest) = tail.split_first_mut().unwrap();
        for other in head.iter_mut().chain(rest.iter_mut()) {
            if k.is_zero(&other[c]) {
                continue;
            }
            let factor = other[c].clone();
            for j in c..ncols {
                if k.is_zero(&pivot_row[j]) {
                    continue;
                }
                other[j] = k.sub(&other[j], &k.mul(&factor, &pivot_row[j]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut rows = m.to_rows();
    let pivots = rref_rows(&m.field, &mut rows, m.cols);
    let data = rows.into_iter().flatten().collect();
    (
        Matrix {
            field: m.field.clone(),
            rows: m.rows,
            cols: m.cols,
            data,
        },
        pivots,
    )
}

/// Kernel basis: free variables set to 1 one at a time in increasing column order.
pub fn kernel_basis<F: Field>(m: &Matrix<F>) -> Vec<Vec<F::Elem>> {
    let k = &m.field;
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![None; m.cols];
    for (i, &p) in pivots.iter().enumerate() {
        is_pivot[p] = Some(i);
    }
    let mut out = Vec::new();
    for free in 0..m.cols {
        if is_pivot[free].is_some() {
            continue;
        }
        let mut v = vec![k.zero(); m.cols];
        v[free] = k.one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = k.neg(r.get(i, free));
        }
        out.push(v);
    }
    out
}

/// A subspace of K^n kept as the nonzero rows of a reduced echelon form.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpace<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> RowSpace<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        RowSpace {
            field: field.clone(),
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn from_vectors(field: &F, ncols: usize, vectors: Vec<Vec<F::Elem>>) -> Self {
        let mut rows = vectors;
        for v in &rows {
            assert_eq!(v.len(), ncols);
        }
        let pivots = rref_rows(field, &mut rows, ncols);
        rows.truncate(pivots.len());
        RowSpace {
            field: field.clone(),
            ncols,
            rows,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }
    pub fn ncols(&self) -> usize {
        self.ncols
    }
    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.rows
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of v after reduction by the basis; zero iff v is in the span.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.field;
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if k.is_zero(&w[p]) {
                continue;
            }
            let c = w[p].clone();
            for j in p..self.ncols {
                if !k.is_zero(&row[j]) {
                    w[j] = k.sub(&w[j], &k.mul(&c, &row[j]));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.reduce(v).iter().all(|x| self.field.is_zero(x))
    }

    /// Coordinates with respect to the echelon basis.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    /// Adds a vector; returns false if it was already in the span.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> bool {
        if self.contains(&v) {
            return false;
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.push(v);
        *self = Self::from_vectors(&self.field, self.ncols, rows);
        true
    }

    pub fn contains_space(&self, other: &Self) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::from_vectors(&self.field, self.ncols, rows)
    }

    /// Orthogonal complement under the standard bilinear pairing.
    pub fn complement(&self) -> Vec<Vec<F::Elem>> {
        if self.rows.is_empty() {
            return (0..self.ncols)
                .map(|i| {
                    (0..self.ncols)
                        .map(|j| if i == j { self.field.one() } else { self.field.zero() })
                        .collect()
                })
                .collect();
        }
        let m = Matrix::from_rows(&self.field, self.rows.clone());
        kernel_basis(&m)
    }
}

/// Nonzero rows of the reduced echelon form of the span of `vectors`.
pub fn row_space<F: Field>(field: &F, ncols: usize, vectors: Vec<Vec<F::Elem>>) -> RowSpace<F> {
    RowSpace::from_vectors(field, ncols, vectors)
}

pub fn span_contains<F: Field>(field: &F, vectors: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    RowSpace::from_vectors(field, v.len(), vectors.to_vec()).contains(v)
}
