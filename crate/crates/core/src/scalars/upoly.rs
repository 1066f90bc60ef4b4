use std::fmt;

use super::field::Field;
use super::matrix::RowSpace;

/// Dense univariate polynomial, coefficients from low to high degree.
#[derive(Clone, PartialEq)]
pub struct UPoly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(i, c)| format!("{}*t^{}", self.field.fmt_elem(c), i))
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl<F: Field> UPoly<F> {
    pub fn new(field: &F, coeffs: Vec<F::Elem>) -> Self {
        let mut p = UPoly {
            field: field.clone(),
            coeffs,
        };
        p.trim();
        p
    }

    pub fn zero(field: &F) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &F) -> Self {
        Self::new(field, vec![field.one()])
    }

    pub fn constant(field: &F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// t - c
    pub fn linear(field: &F, c: &F::Elem) -> Self {
        Self::new(field, vec![field.neg(c), field.one()])
    }

    pub fn monomial(field: &F, deg: usize) -> Self {
        let mut c = vec![field.zero(); deg + 1];
        c[deg] = field.one();
        Self::new(field, c)
    }

    pub fn from_i64(field: &F, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while let Some(c) = self.coeffs.last() {
            if self.field.is_zero(c) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// Degree, with the zero polynomial reported as None.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }
    pub fn lc(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }
    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }
    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(k, (0..n).map(|i| k.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let k = &self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(k, (0..n).map(|i| k.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let k = &self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(k);
        }
        let mut out = vec![k.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(a, b));
            }
        }
        Self::new(k, out)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lc()).unwrap();
        self.scale(&inv)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let k = &self.field;
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        let inv = k.inv(&d.lc()).unwrap();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (Self::zero(k), self.clone());
        }
        let mut q = vec![k.zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let c = k.mul(&r[i + dd], &inv);
            if k.is_zero(&c) {
                continue;
            }
            for (j, b) in d.coeffs.iter().enumerate() {
                r[i + j] = k.sub(&r[i + j], &k.mul(&c, b));
            }
            q[i] = c;
        }
        r.truncate(dd);
        (Self::new(k, q), Self::new(k, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn derivative(&self) -> Self {
        let k = &self.field;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| k.mul(a, &k.from_i64(i as i64)))
            .collect();
        Self::new(k, c)
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns (g, s, t) with s*self + t*o = g, g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let k = &self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(k), Self::zero(k));
        let (mut t0, mut t1) = (Self::zero(k), Self::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = k.inv(&r0.lc()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn mulmod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u128, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Self::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            base = base.mulmod(&base, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let k = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, x), c))
    }

    /// Horner evaluation in an arbitrary unital algebra described by closures.
    pub fn eval_with<T: Clone>(
        &self,
        one: &T,
        x: &T,
        add: impl Fn(&T, &T) -> T,
        scale: impl Fn(&T, &F::Elem) -> T,
        mul: impl Fn(&T, &T) -> T,
    ) -> T {
        let zero = scale(one, &self.field.zero());
        let mut acc = zero;
        for c in self.coeffs.iter().rev() {
            acc = add(&mul(&acc, x), &scale(one, c));
        }
        acc
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(&self.field);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Squarefree decomposition of a monic polynomial: pairs (g, m) with the g
/// squarefree, pairwise coprime and f = prod g^m.
pub fn squarefree_decomposition<F: Field>(f: &UPoly<F>) -> Vec<(UPoly<F>, usize)> {
    let k = f.field().clone();
    let p = k.characteristic();
    let mut out = Vec::new();
    let f = f.monic();
    if f.deg() == 0 {
        return out;
    }
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_exact(&c);
    let mut i = 1;
    while w.deg() > 0 {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if z.deg() > 0 {
            out.push((z, i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w);
    }
    if c.deg() > 0 {
        assert!(p > 0, "squarefree decomposition stalled in characteristic 0");
        // c is a polynomial in t^p; over a prime field the p-th root maps t^(pk) to t^k.
        let p = p as usize;
        let root: Vec<F::Elem> = c.coeffs().iter().step_by(p).cloned().collect();
        let root = UPoly::new(&k, root);
        for (g, m) in squarefree_decomposition(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct monic irreducible factors of f with their multiplicities, when the
/// field supports factorization.
pub fn factor<F: Field>(f: &UPoly<F>) -> Option<Vec<(UPoly<F>, usize)>> {
    let k = f.field().clone();
    let mut out: Vec<(UPoly<F>, usize)> = Vec::new();
    for (g, m) in squarefree_decomposition(f) {
        for h in k.factor_squarefree(&g)? {
            if let Some(e) = out.iter_mut().find(|(q, _)| *q == h) {
                e.1 += m;
            } else {
                out.push((h, m));
            }
        }
    }
    Some(out)
}

/// Minimal polynomial of an element `a` in a finite-dimensional associative
/// unital algebra given by coordinates and a multiplication closure.
pub fn minimal_polynomial<F: Field>(
    field: &F,
    one: &[F::Elem],
    a: &[F::Elem],
    mul: impl Fn(&[F::Elem], &[F::Elem]) -> Vec<F::Elem>,
) -> UPoly<F> {
    let n = one.len();
    let mut powers: Vec<Vec<F::Elem>> = vec![one.to_vec()];
    loop {
        let next = mul(powers.last().unwrap(), a);
        let deg = powers.len();
        // Express next in terms of the previous powers: solve sum c_i p_i = next.
        let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(deg);
        for p in &powers {
            rows.push(p.clone());
        }
        let span = RowSpace::from_vectors(field, n, rows);
        if span.contains(&next) {
            let m = super::matrix::Matrix::from_rows(field, powers.clone()).transpose();
            let c = m.solve(&next).expect("vector in span must be solvable");
            let mut coeffs: Vec<F::Elem> = c.iter().map(|x| field.neg(x)).collect();
            coeffs.push(field.one());
            return UPoly::new(field, coeffs);
        }
        powers.push(next);
        assert!(powers.len() <= n + 1, "minimal polynomial degree exceeds dimension");
    }
}

/// Minimal polynomial of a square matrix.
pub fn matrix_minimal_polynomial<F: Field>(m: &super::matrix::Matrix<F>) -> UPoly<F> {
    let k = m.field().clone();
    let n = m.rows();
    let one = super::matrix::Matrix::identity(&k, n);
    minimal_polynomial(&k, one.flat(), m.flat(), |x, y| {
        let a = super::matrix::Matrix::from_flat(&k, n, n, x.to_vec());
        let b = super::matrix::Matrix::from_flat(&k, n, n, y.to_vec());
        a.mul(&b).flat().to_vec()
    })
}
