//! Catalecticants, graded pieces of annihilator ideals and apolar duality.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{monomial_index, monomials, DPForm, DiffOp, Exponent};
use crate::scalars::{Field, Matrix, RowSpace};

/// The matrix of the pairing R_{d-e} x R_e -> K induced by f.
#[derive(Clone, Debug)]
pub struct Catalecticant<F: Field> {
    pub e: usize,
    pub matrix: Matrix<F>,
    pub row_basis: Vec<Exponent>,
    pub col_basis: Vec<Exponent>,
}

/// A basis of ann(f)_e, in reduced row echelon form over the monomial basis.
#[derive(Clone, Debug)]
pub struct GradedPiece<F: Field> {
    pub degree: usize,
    pub basis: Vec<DiffOp<F>>,
}

impl<F: Field> GradedPiece<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn space(&self, field: &F, nvars: usize) -> RowSpace<F> {
        RowSpace::from_vectors(
            field,
            crate::forms::monomial_count(nvars, self.degree),
            self.basis.iter().map(|o| o.to_vector()).collect(),
        )
    }
}

pub fn catalecticant<F: Field>(f: &DPForm<F>, e: usize) -> Result<Catalecticant<F>> {
    let d = f.degree();
    if e > d {
        return Err(Error::Degree(format!("contraction degree {e} exceeds {d}")));
    }
    let r = f.nvars();
    let rows = monomials(r, d - e);
    let cols = monomials(r, e);
    let k = f.field();
    let mut m = Matrix::zeros(k, rows.len(), cols.len());
    for (i, a) in rows.iter().enumerate() {
        for (j, b) in cols.iter().enumerate() {
            let s: Exponent = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if let Some(c) = f.terms().get(&s) {
                m.set(i, j, c.clone());
            }
        }
    }
    Ok(Catalecticant { e, matrix: m, row_basis: rows, col_basis: cols })
}

/// ann(f)_e; for e > d this is all of R_e.
pub fn ann_graded<F: Field>(f: &DPForm<F>, e: usize) -> GradedPiece<F> {
    let r = f.nvars();
    let k = f.field();
    let vectors = if e > f.degree() {
        let n = crate::forms::monomial_count(r, e);
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect())
            .collect()
    } else {
        let cat = catalecticant(f, e).expect("degree in range");
        let ker = cat.matrix.kernel_basis();
        RowSpace::from_vectors(k, cat.col_basis.len(), ker).basis().to_vec()
    };
    GradedPiece {
        degree: e,
        basis: vectors.iter().map(|v| DiffOp::from_vector(k, r, e, v)).collect(),
    }
}

/// ann(f)_e as a subspace of R_e.
pub fn ann_space<F: Field>(f: &DPForm<F>, e: usize) -> RowSpace<F> {
    ann_graded(f, e).space(f.field(), f.nvars())
}

pub fn hilbert_function<F: Field>(f: &DPForm<F>) -> Result<Vec<usize>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    Ok((0..=f.degree())
        .map(|e| catalecticant(f, e).expect("in range").matrix.rank())
        .collect())
}

/// R_e(f) = {D f : D in R_e} inside the forms of degree d - e.
pub fn contraction_space<F: Field>(f: &DPForm<F>, e: usize) -> RowSpace<F> {
    let r = f.nvars();
    let k = f.field();
    let deg = f.degree().saturating_sub(e);
    let n = crate::forms::monomial_count(r, deg);
    if e > f.degree() {
        return RowSpace::new(k, crate::forms::monomial_count(r, 0));
    }
    let vectors = monomials(r, e)
        .into_iter()
        .map(|b| crate::forms::contract(&DiffOp::monomial(k, b, k.one()), f).to_vector())
        .collect();
    RowSpace::from_vectors(k, n, vectors)
}

/// R_1 . V for V a subspace of R_e given by coordinate vectors.
pub fn times_linear<F: Field>(field: &F, nvars: usize, e: usize, space: &RowSpace<F>) -> RowSpace<F> {
    times_degree(field, nvars, e, space, 1)
}

/// R_k . V for V a subspace of R_e.
pub fn times_degree<F: Field>(field: &F, nvars: usize, e: usize, space: &RowSpace<F>, k: usize) -> RowSpace<F> {
    let target = monomial_index(nvars, e + k);
    let src = monomials(nvars, e);
    let mut vectors = Vec::new();
    for mono in monomials(nvars, k) {
        for v in space.basis() {
            let mut w = vec![field.zero(); target.len()];
            for (c, b) in v.iter().zip(&src) {
                if field.is_zero(c) {
                    continue;
                }
                let s: Exponent = b.iter().zip(&mono).map(|(x, y)| x + y).collect();
                w[target[&s]] = c.clone();
            }
            vectors.push(w);
        }
    }
    RowSpace::from_vectors(field, target.len(), vectors)
}

/// Span of all products D E with D in U (degree a) and E in V (degree b).
pub fn product_space<F: Field>(
    field: &F,
    nvars: usize,
    a: usize,
    u: &RowSpace<F>,
    b: usize,
    v: &RowSpace<F>,
) -> RowSpace<F> {
    let target = crate::forms::monomial_count(nvars, a + b);
    let mut out = RowSpace::new(field, target);
    for x in u.basis() {
        let dx = DiffOp::from_vector(field, nvars, a, x);
        for y in v.basis() {
            let dy = DiffOp::from_vector(field, nvars, b, y);
            out.insert(dx.multiply(&dy).to_vector());
            if out.dim() == target {
                return out;
            }
        }
    }
    out
}

/// Minimal generator counts beta_{1j} for j = 1..d+1.
pub fn generator_counts<F: Field>(f: &DPForm<F>) -> Result<BTreeMap<usize, usize>> {
    Ok(minimal_generators(f)?
        .into_iter()
        .map(|(j, g)| (j, g.len()))
        .collect())
}

/// A minimal generating set of ann(f), degree by degree up to d+1.
pub fn minimal_generators<F: Field>(f: &DPForm<F>) -> Result<BTreeMap<usize, Vec<DiffOp<F>>>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let r = f.nvars();
    let k = f.field();
    let mut out = BTreeMap::new();
    let mut prev = RowSpace::new(k, 1);
    for j in 1..=f.degree() + 1 {
        let ann = ann_space(f, j);
        let mut span = times_linear(k, r, j - 1, &prev);
        let mut gens = Vec::new();
        for v in ann.basis() {
            if span.insert(v.clone()) {
                gens.push(DiffOp::from_vector(k, r, j, v));
            }
        }
        out.insert(j, gens);
        prev = ann;
    }
    Ok(out)
}

/// The orthogonal complement in R_d of a set of forms of degree d.
pub fn perp<F: Field>(field: &F, nvars: usize, degree: usize, forms: &[DPForm<F>]) -> Result<Vec<DiffOp<F>>> {
    let n = crate::forms::monomial_count(nvars, degree);
    for g in forms {
        if g.nvars() != nvars || (g.degree() != degree && !g.is_zero()) {
            return Err(Error::Degree("forms of mixed degree".into()));
        }
    }
    let ker = perp_vectors(field, n, forms.iter().filter(|g| !g.is_zero()).map(|g| g.to_vector()).collect());
    Ok(ker.iter().map(|v| DiffOp::from_vector(field, nvars, degree, v)).collect())
}

/// The orthogonal complement in the forms of degree d of a set of operators.
pub fn perp_ops<F: Field>(field: &F, nvars: usize, degree: usize, ops: &[DiffOp<F>]) -> Result<Vec<DPForm<F>>> {
    let n = crate::forms::monomial_count(nvars, degree);
    for o in ops {
        if o.nvars() != nvars || (o.degree() != degree && !o.is_zero()) {
            return Err(Error::Degree("operators of mixed degree".into()));
        }
    }
    let ker = perp_vectors(field, n, ops.iter().filter(|o| !o.is_zero()).map(|o| o.to_vector()).collect());
    Ok(ker.iter().map(|v| DPForm::from_vector(field, nvars, degree, v)).collect())
}

/// Monomial bases are dual, so the complement is a kernel.
pub fn perp_vectors<F: Field>(field: &F, n: usize, vectors: Vec<Vec<F::Elem>>) -> Vec<Vec<F::Elem>> {
    let space = RowSpace::from_vectors(field, n, vectors);
    let ker = space.complement();
    RowSpace::from_vectors(field, n, ker).basis().to_vec()
}

/// Graded pieces of ann(f) in degrees 0..=bound.
pub fn annihilator<F: Field>(f: &DPForm<F>, bound: usize) -> Vec<GradedPiece<F>> {
    (0..=bound).map(|e| ann_graded(f, e)).collect()
}

/// The span of a set of forms of degree d.
pub fn forms_space<F: Field>(field: &F, nvars: usize, degree: usize, forms: &[DPForm<F>]) -> RowSpace<F> {
    RowSpace::from_vectors(
        field,
        crate::forms::monomial_count(nvars, degree),
        forms.iter().map(|g| g.to_vector()).collect(),
    )
}
