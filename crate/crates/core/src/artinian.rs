//! Finite-dimensional commutative algebras given by structure constants:
//! idempotents, nilradicals and local blocks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix_algebra::MatrixAlgebraSpace;
use crate::scalars::{factor, minimal_polynomial, Field, Matrix, RowSpace, UPoly};

/// e_i e_j = sum_k consts[i][j][k] e_k.
#[derive(Clone, Debug)]
pub struct StructAlgebra<F: Field> {
    field: F,
    consts: Vec<Vec<Vec<F::Elem>>>,
    one: Vec<F::Elem>,
}

/// A complete set of orthogonal idempotents, with the residue field degree of
/// each block when it was certified local.
#[derive(Clone, Debug)]
pub struct Coid<F: Field> {
    pub idempotents: Vec<Vec<F::Elem>>,
    pub residue_degrees: Vec<usize>,
    pub seed: u64,
}

impl<F: Field> Coid<F> {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }
    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
    /// True when every block has residue field equal to the base field.
    pub fn split_over_base(&self) -> bool {
        self.residue_degrees.iter().all(|&d| d == 1)
    }
}

impl<F: Field> StructAlgebra<F> {
    pub fn new(field: &F, consts: Vec<Vec<Vec<F::Elem>>>, one: Vec<F::Elem>) -> Result<Self> {
        let n = one.len();
        if consts.len() != n || consts.iter().any(|r| r.len() != n || r.iter().any(|c| c.len() != n)) {
            return Err(Error::Dimension("structure constants have the wrong shape".into()));
        }
        let a = StructAlgebra { field: field.clone(), consts, one };
        for i in 0..n {
            for j in 0..n {
                if a.consts[i][j] != a.consts[j][i] {
                    return Err(Error::Hypothesis("algebra is not commutative".into()));
                }
            }
        }
        for i in 0..n {
            let ei = a.basis_vector(i);
            if a.mul(&a.one, &ei) != ei {
                return Err(Error::Hypothesis("identity element does not act trivially".into()));
            }
            for j in 0..n {
                for k in 0..n {
                    let ej = a.basis_vector(j);
                    let ek = a.basis_vector(k);
                    if a.mul(&a.mul(&ei, &ej), &ek) != a.mul(&ei, &a.mul(&ej, &ek)) {
                        return Err(Error::Hypothesis("algebra is not associative".into()));
                    }
                }
            }
        }
        Ok(a)
    }

    /// The algebra structure of a closed, commutative space of matrices containing I.
    pub fn from_matrix_space(space: &MatrixAlgebraSpace<F>) -> Result<Self> {
        Self::from_matrix_space_with_identity(space, &Matrix::identity(space.field(), space.size()))
    }

    /// As above, for a space whose unit is the idempotent `one` rather than I.
    pub fn from_matrix_space_with_identity(space: &MatrixAlgebraSpace<F>, one: &Matrix<F>) -> Result<Self> {
        let consts = space.structure_constants()?;
        let one = space
            .coordinates(one)
            .ok_or_else(|| Error::Hypothesis("identity element not in the space".into()))?;
        Self::new(space.field(), consts, one)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.one.len()
    }
    pub fn one(&self) -> &[F::Elem] {
        &self.one
    }
    pub fn structure_constants(&self) -> &[Vec<Vec<F::Elem>>] {
        &self.consts
    }

    pub fn basis_vector(&self, i: usize) -> Vec<F::Elem> {
        let k = &self.field;
        (0..self.dim()).map(|j| if i == j { k.one() } else { k.zero() }).collect()
    }

    pub fn zero(&self) -> Vec<F::Elem> {
        vec![self.field.zero(); self.dim()]
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        let k = &self.field;
        let n = self.dim();
        let mut out = vec![k.zero(); n];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                let xy = k.mul(x, y);
                for (o, c) in out.iter_mut().zip(&self.consts[i][j]) {
                    if !k.is_zero(c) {
                        *o = k.add(o, &k.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }
    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }
    pub fn scale(&self, a: &[F::Elem], c: &F::Elem) -> Vec<F::Elem> {
        a.iter().map(|x| self.field.mul(x, c)).collect()
    }
    pub fn is_zero(&self, a: &[F::Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    pub fn pow(&self, a: &[F::Elem], n: u64) -> Vec<F::Elem> {
        let mut acc = self.one.clone();
        let mut base = a.to_vec();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    pub fn is_idempotent(&self, a: &[F::Elem]) -> bool {
        self.mul(a, a) == a
    }

    /// Minimal polynomial of a inside the unital algebra e A (e = 1 gives A).
    pub fn min_poly_in(&self, e: &[F::Elem], a: &[F::Elem]) -> UPoly<F> {
        minimal_polynomial(&self.field, e, a, |x, y| self.mul(x, y))
    }

    pub fn min_poly(&self, a: &[F::Elem]) -> UPoly<F> {
        self.min_poly_in(&self.one, a)
    }

    /// p(a) in e A.
    pub fn eval_in(&self, e: &[F::Elem], p: &UPoly<F>, a: &[F::Elem]) -> Vec<F::Elem> {
        p.eval_with(
            &e.to_vec(),
            &a.to_vec(),
            |x, y| self.add(x, y),
            |x, c| self.scale(x, c),
            |x, y| self.mul(x, y),
        )
    }

    /// Basis of the ideal e A.
    pub fn ideal_basis(&self, e: &[F::Elem]) -> RowSpace<F> {
        let vs = (0..self.dim()).map(|i| self.mul(e, &self.basis_vector(i))).collect();
        RowSpace::from_vectors(&self.field, self.dim(), vs)
    }

    /// The subalgebra e A with its own basis; returns the algebra and the basis in A-coordinates.
    pub fn block(&self, e: &[F::Elem]) -> Result<(StructAlgebra<F>, Vec<Vec<F::Elem>>)> {
        let span = self.ideal_basis(e);
        let basis = span.basis().to_vec();
        let mut consts = Vec::with_capacity(basis.len());
        for x in &basis {
            let mut row = Vec::with_capacity(basis.len());
            for y in &basis {
                row.push(span.coordinates(&self.mul(x, y)).expect("ideal is closed"));
            }
            consts.push(row);
        }
        let one = span
            .coordinates(e)
            .ok_or_else(|| Error::Hypothesis("idempotent outside its ideal".into()))?;
        Ok((StructAlgebra::new(&self.field, consts, one)?, basis))
    }
}

/// Nilpotent elements of e A, as a subspace in A-coordinates.
fn nilradical_in<F: Field>(a: &StructAlgebra<F>, e: &[F::Elem]) -> RowSpace<F> {
    let k = a.field();
    let n = a.dim();
    let block = a.ideal_basis(e);
    let basis = block.basis().to_vec();
    let m = basis.len();
    if m == 0 {
        return RowSpace::new(k, n);
    }
    let p = k.characteristic();
    let coeffs: Vec<Vec<F::Elem>> = if p == 0 {
        // In characteristic 0 the radical of the trace form is the nilradical.
        let trace = |x: &[F::Elem]| -> F::Elem {
            let mut t = k.zero();
            for (idx, b) in basis.iter().enumerate() {
                let c = block.coordinates(&a.mul(x, b)).expect("closed");
                t = k.add(&t, &c[idx]);
            }
            t
        };
        let gram: Vec<Vec<F::Elem>> = basis
            .iter()
            .map(|x| basis.iter().map(|y| trace(&a.mul(x, y))).collect())
            .collect();
        Matrix::from_rows(k, gram).kernel_basis()
    } else {
        // x -> x^(p^j) is linear over the prime field and kills exactly the nilpotents once p^j >= m.
        let mut power: u64 = p;
        while (power as u128) < m as u128 {
            power = power.saturating_mul(p);
        }
        let images: Vec<Vec<F::Elem>> = basis
            .iter()
            .map(|b| {
                let mut x = b.clone();
                let mut q = 1u64;
                while q < power {
                    let mut y = x.clone();
                    for _ in 1..p {
                        y = a.mul(&y, &x);
                    }
                    x = y;
                    q = q.saturating_mul(p);
                }
                block.coordinates(&x).expect("closed")
            })
            .collect();
        Matrix::from_rows(k, images).transpose().kernel_basis()
    };
    let vs = coeffs
        .iter()
        .map(|c| {
            let mut v = vec![k.zero(); n];
            for (ci, b) in c.iter().zip(&basis) {
                v = a.add(&v, &a.scale(b, ci));
            }
            v
        })
        .collect();
    RowSpace::from_vectors(k, n, vs)
}

pub fn nilradical<F: Field>(a: &StructAlgebra<F>) -> RowSpace<F> {
    nilradical_in(a, a.one())
}

enum Probe<F: Field> {
    Split(Vec<Vec<F::Elem>>),
    Local(usize),
    Inconclusive,
}

/// Splits e A along the coprime prime-power factors of the minimal polynomial of x.
fn probe<F: Field>(a: &StructAlgebra<F>, e: &[F::Elem], x: &[F::Elem], residue_dim: usize) -> Result<Probe<F>> {
    let m = a.min_poly_in(e, x);
    let factors = factor(&m).ok_or_else(|| Error::Other(format!("cannot factor polynomials over {}", a.field().name())))?;
    if factors.len() == 1 {
        return Ok(if factors[0].0.deg() == residue_dim {
            Probe::Local(residue_dim)
        } else {
            Probe::Inconclusive
        });
    }
    let parts: Vec<UPoly<F>> = factors.iter().map(|(p, k)| p.pow(*k)).collect();
    let mut idems = Vec::new();
    for part in &parts {
        let cofactor = m.div_exact(part);
        let (g, u, _) = cofactor.ext_gcd(part);
        debug_assert!(g.is_one());
        let poly = u.mul(&cofactor).rem(&m);
        idems.push(a.eval_in(e, &poly, x));
    }
    Ok(Probe::Split(idems))
}

fn split_block<F: Field>(
    a: &StructAlgebra<F>,
    e: Vec<F::Elem>,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(Vec<F::Elem>, usize)>,
) -> Result<()> {
    let block = a.ideal_basis(&e);
    let nil = nilradical_in(a, &e);
    let residue_dim = block.dim() - nil.dim();
    if residue_dim == 1 {
        out.push((e, 1));
        return Ok(());
    }
    let basis = block.basis().to_vec();
    let k = a.field();
    let budget = 64 + 4 * basis.len();
    for attempt in 0..basis.len() + budget {
        let x = if attempt < basis.len() {
            basis[attempt].clone()
        } else {
            let mut v = a.zero();
            for b in &basis {
                v = a.add(&v, &a.scale(b, &k.random_elem(rng)));
            }
            v
        };
        match probe(a, &e, &x, residue_dim)? {
            Probe::Split(parts) => {
                for part in parts {
                    split_block(a, part, rng, out)?;
                }
                return Ok(());
            }
            Probe::Local(deg) => {
                out.push((e, deg));
                return Ok(());
            }
            Probe::Inconclusive => {}
        }
    }
    Err(Error::Other("coid search did not converge".into()))
}

/// The unique maximal coid over the base field.
pub fn maximal_coid<F: Field>(a: &StructAlgebra<F>, seed: u64) -> Result<Coid<F>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut blocks = Vec::new();
    split_block(a, a.one().to_vec(), &mut rng, &mut blocks)?;
    Ok(Coid {
        idempotents: blocks.iter().map(|b| b.0.clone()).collect(),
        residue_degrees: blocks.iter().map(|b| b.1).collect(),
        seed,
    })
}

/// The blocks e_i A of the maximal coid.
pub fn block_decompose<F: Field>(a: &StructAlgebra<F>, seed: u64) -> Result<Vec<(Vec<F::Elem>, StructAlgebra<F>)>> {
    let coid = maximal_coid(a, seed)?;
    coid.idempotents
        .into_iter()
        .map(|e| {
            let (b, _) = a.block(&e)?;
            Ok((e, b))
        })
        .collect()
}

/// Checks the coid axioms.
pub fn is_coid<F: Field>(a: &StructAlgebra<F>, idems: &[Vec<F::Elem>]) -> bool {
    let mut sum = a.zero();
    for (i, e) in idems.iter().enumerate() {
        if a.is_zero(e) || !a.is_idempotent(e) {
            return false;
        }
        for f in &idems[i + 1..] {
            if !a.is_zero(&a.mul(e, f)) {
                return false;
            }
        }
        sum = a.add(&sum, e);
    }
    sum == a.one()
}

/// The nonzero products e e' of two coids.
pub fn product_coid<F: Field>(a: &StructAlgebra<F>, c1: &[Vec<F::Elem>], c2: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    let mut out = Vec::new();
    for e in c1 {
        for f in c2 {
            let p = a.mul(e, f);
            if !a.is_zero(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// Coid of matrices from a coid in coordinates of a matrix space.
pub fn coid_matrices<F: Field>(space: &MatrixAlgebraSpace<F>, coid: &Coid<F>) -> Vec<Matrix<F>> {
    coid.idempotents.iter().map(|c| space.element(c)).collect()
}

/// P whose columns are bases of the images of the E_i, so that P^{-1} E_i P
/// are consecutive diagonal 0/1 blocks.
pub fn simultaneous_diagonalize<F: Field>(idems: &[Matrix<F>]) -> Result<Matrix<F>> {
    let first = idems.first().ok_or_else(|| Error::Hypothesis("empty coid".into()))?;
    let k = first.field();
    let r = first.rows();
    let mut sum = Matrix::zeros(k, r, r);
    for (i, e) in idems.iter().enumerate() {
        if e.mul(e) != *e || e.is_zero() {
            return Err(Error::Hypothesis("not an idempotent".into()));
        }
        for f in &idems[i + 1..] {
            if !e.mul(f).is_zero() || !f.mul(e).is_zero() {
                return Err(Error::Hypothesis("idempotents are not orthogonal".into()));
            }
        }
        sum = sum.add(e);
    }
    if !sum.is_identity() {
        return Err(Error::Hypothesis("idempotents do not sum to I".into()));
    }
    let mut cols = Vec::new();
    for e in idems {
        let span = RowSpace::from_vectors(k, r, e.transpose().to_rows());
        cols.extend(span.basis().iter().cloned());
    }
    let p = Matrix::from_rows(k, cols).transpose();
    if p.inverse().is_none() {
        return Err(Error::Singular);
    }
    Ok(p)
}
