//! The matrix algebra M_f, the map gamma_f and their graded relatives.

use rand::Rng;

use crate::apolarity::{contraction_space, perp_vectors, times_linear, ann_space};
use crate::error::{Error, Result};
use crate::forms::{contract, monomial_count, monomial_index, monomials, DPForm, DiffOp, Exponent};
use crate::scalars::{Field, Matrix, RowSpace};

/// A linear space of square matrices, kept in a canonical rref basis.
#[derive(Clone, Debug)]
pub struct MatrixAlgebraSpace<F: Field> {
    field: F,
    size: usize,
    basis: Vec<Matrix<F>>,
    span: RowSpace<F>,
    pub closed_under_mult: bool,
    pub commutative: bool,
}

impl<F: Field> MatrixAlgebraSpace<F> {
    /// The span of the given matrices; flags are computed from the span.
    pub fn new(field: &F, size: usize, mats: &[Matrix<F>]) -> Self {
        let span = RowSpace::from_vectors(field, size * size, mats.iter().map(|m| m.flat().to_vec()).collect());
        let mut out = Self::from_span(field, size, span);
        out.refresh_flags();
        out
    }

    fn from_span(field: &F, size: usize, span: RowSpace<F>) -> Self {
        let basis = span
            .basis()
            .iter()
            .map(|v| Matrix::from_flat(field, size, size, v.clone()))
            .collect();
        MatrixAlgebraSpace {
            field: field.clone(),
            size,
            basis,
            span,
            closed_under_mult: false,
            commutative: false,
        }
    }

    fn refresh_flags(&mut self) {
        self.closed_under_mult = self.check_closure();
        self.commutative = self.check_commutative();
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn size(&self) -> usize {
        self.size
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Matrix<F>] {
        &self.basis
    }
    pub fn span(&self) -> &RowSpace<F> {
        &self.span
    }

    pub fn contains(&self, m: &Matrix<F>) -> bool {
        self.span.contains(m.flat())
    }

    pub fn coordinates(&self, m: &Matrix<F>) -> Option<Vec<F::Elem>> {
        self.span.coordinates(m.flat())
    }

    pub fn element(&self, coords: &[F::Elem]) -> Matrix<F> {
        let k = &self.field;
        let mut acc = Matrix::zeros(k, self.size, self.size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if !k.is_zero(c) {
                acc = acc.add(&b.scale(c));
            }
        }
        acc
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Matrix<F> {
        let coords: Vec<F::Elem> = (0..self.dim()).map(|_| self.field.random_elem(rng)).collect();
        self.element(&coords)
    }

    pub fn contains_identity(&self) -> bool {
        self.contains(&Matrix::identity(&self.field, self.size))
    }

    pub fn check_closure(&self) -> bool {
        self.basis
            .iter()
            .all(|a| self.basis.iter().all(|b| self.contains(&a.mul(b))))
    }

    pub fn check_commutative(&self) -> bool {
        self.basis
            .iter()
            .enumerate()
            .all(|(i, a)| self.basis[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Structure constants b_i b_j = sum_k c_ijk b_k, for a closed space.
    pub fn structure_constants(&self) -> Result<Vec<Vec<Vec<F::Elem>>>> {
        let mut out = Vec::with_capacity(self.dim());
        for a in &self.basis {
            let mut row = Vec::with_capacity(self.dim());
            for b in &self.basis {
                let c = self
                    .coordinates(&a.mul(b))
                    .ok_or_else(|| Error::Hypothesis("space not closed under products".into()))?;
                row.push(c);
            }
            out.push(row);
        }
        Ok(out)
    }

    /// The smallest algebra containing the space and the identity.
    pub fn generated_algebra(&self) -> Self {
        let k = &self.field;
        let mut span = self.span.clone();
        span.insert(Matrix::identity(k, self.size).flat().to_vec());
        loop {
            let mats: Vec<Matrix<F>> = span
                .basis()
                .iter()
                .map(|v| Matrix::from_flat(k, self.size, self.size, v.clone()))
                .collect();
            let before = span.dim();
            for a in &mats {
                for b in &mats {
                    span.insert(a.mul(b).flat().to_vec());
                }
            }
            if span.dim() == before {
                break;
            }
        }
        let mut out = Self::from_span(k, self.size, span);
        out.refresh_flags();
        out
    }

    /// E . M . E for a square matrix E.
    pub fn sandwich(&self, e: &Matrix<F>) -> Self {
        let mats: Vec<Matrix<F>> = self.basis.iter().map(|b| e.mul(b).mul(e)).collect();
        Self::new(&self.field, self.size, &mats)
    }
}

/// The vector of first partials of f.
pub fn gradient<F: Field>(f: &DPForm<F>) -> Vec<DPForm<F>> {
    f.gradient()
}

/// A . v for a scalar matrix and a vector of forms.
pub fn apply_matrix<F: Field>(a: &Matrix<F>, v: &[DPForm<F>]) -> Vec<DPForm<F>> {
    let k = a.field();
    (0..a.rows())
        .map(|i| {
            let mut acc = DPForm::zero(k, v[0].nvars(), v[0].degree());
            for (j, g) in v.iter().enumerate() {
                let c = a.get(i, j);
                if !k.is_zero(c) {
                    acc = acc.add(&g.scale(c));
                }
            }
            acc
        })
        .collect()
}

fn add_exp(a: &[u32], b: &[u32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn unit(r: usize, i: usize) -> Exponent {
    let mut e = vec![0; r];
    e[i] = 1;
    e
}

/// Kernel of the symmetry system for A with entries in R_e acting on the
/// matrix of second partials; coordinates are indexed by (i, k, beta).
fn graded_symmetry_kernel<F: Field>(f: &DPForm<F>, e: usize) -> Vec<Vec<F::Elem>> {
    let k = f.field();
    let r = f.nvars();
    let d = f.degree();
    let betas = monomials(r, e);
    let ne = betas.len();
    let nunk = r * r * ne;
    if d < e + 2 {
        return identity_rows(k, nunk);
    }
    let gammas = monomials(r, d - e - 2);
    let mut rows = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            for g in &gammas {
                let mut row = vec![k.zero(); nunk];
                let mut nonzero = false;
                for kk in 0..r {
                    for (bi, b) in betas.iter().enumerate() {
                        let base = add_exp(&add_exp(g, b), &unit(r, kk));
                        let cj = f.coeff(&add_exp(&base, &unit(r, j)));
                        let ci = f.coeff(&add_exp(&base, &unit(r, i)));
                        let pj = (i * r + kk) * ne + bi;
                        let pi = (j * r + kk) * ne + bi;
                        if !k.is_zero(&cj) {
                            row[pj] = k.add(&row[pj], &cj);
                            nonzero = true;
                        }
                        if !k.is_zero(&ci) {
                            row[pi] = k.sub(&row[pi], &ci);
                            nonzero = true;
                        }
                    }
                }
                if nonzero {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return identity_rows(k, nunk);
    }
    let m = Matrix::from_rows(k, rows);
    RowSpace::from_vectors(k, nunk, m.kernel_basis()).basis().to_vec()
}

fn identity_rows<F: Field>(k: &F, n: usize) -> Vec<Vec<F::Elem>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect())
        .collect()
}

/// M_f = {A : A dd^T f symmetric}.
pub fn compute_mf<F: Field>(f: &DPForm<F>) -> Result<MatrixAlgebraSpace<F>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let k = f.field();
    let r = f.nvars();
    let ker = graded_symmetry_kernel(f, 0);
    let span = RowSpace::from_vectors(k, r * r, ker);
    let mut out = MatrixAlgebraSpace::from_span(k, r, span);
    out.refresh_flags();
    Ok(out)
}

/// Whether A dd^T f is symmetric.
pub fn in_mf<F: Field>(f: &DPForm<F>, a: &Matrix<F>) -> bool {
    let r = f.nvars();
    if a.rows() != r || a.cols() != r {
        return false;
    }
    if f.degree() < 2 {
        return true;
    }
    let grad = gradient(f);
    let h: Vec<Vec<DPForm<F>>> = grad.iter().map(|g| g.gradient()).collect();
    let k = f.field();
    for i in 0..r {
        for j in i + 1..r {
            let mut lhs = DPForm::zero(k, r, f.degree() - 2);
            let mut rhs = lhs.clone();
            for kk in 0..r {
                lhs = lhs.add(&h[kk][j].scale(a.get(i, kk)));
                rhs = rhs.add(&h[kk][i].scale(a.get(j, kk)));
            }
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// The unique g of degree deg with d_i g = comps[i], if it exists.
pub fn integrate<F: Field>(field: &F, nvars: usize, deg: usize, comps: &[DPForm<F>]) -> Option<DPForm<F>> {
    assert!(deg >= 1);
    let mut g = DPForm::zero(field, nvars, deg);
    for alpha in monomials(nvars, deg) {
        let i = alpha.iter().position(|&a| a > 0).expect("positive degree");
        let mut lower = alpha.clone();
        lower[i] -= 1;
        g.add_term(alpha, comps[i].coeff(&lower));
    }
    let ok = g
        .gradient()
        .iter()
        .zip(comps)
        .all(|(a, b)| a == b || (a.is_zero() && b.is_zero()));
    ok.then_some(g)
}

/// gamma_f(A): the g with dg = A df.
pub fn gamma_f<F: Field>(f: &DPForm<F>, a: &Matrix<F>) -> Result<DPForm<F>> {
    if f.degree() < 1 {
        return Err(Error::Degree("gamma_f needs d >= 1".into()));
    }
    if !in_mf(f, a) {
        return Err(Error::NotInMf);
    }
    let comps = apply_matrix(a, &gradient(f));
    integrate(f.field(), f.nvars(), f.degree(), &comps).ok_or(Error::NotInMf)
}

/// {A : A df = 0}.
pub fn ker_gamma<F: Field>(f: &DPForm<F>) -> MatrixAlgebraSpace<F> {
    let k = f.field();
    let r = f.nvars();
    let w = ann_space(f, 1);
    let mut mats = Vec::new();
    for i in 0..r {
        for v in w.basis() {
            let mut m = Matrix::zeros(k, r, r);
            for (j, c) in v.iter().enumerate() {
                m.set(i, j, c.clone());
            }
            mats.push(m);
        }
    }
    MatrixAlgebraSpace::new(k, r, &mats)
}

/// An idempotent E with E df = df and rank E = dim R_{d-1}(f); its kernel is
/// spanned by the non-pivot coordinate directions of R_{d-1}(f).
pub fn choose_support_idempotent<F: Field>(f: &DPForm<F>) -> Matrix<F> {
    let k = f.field();
    let r = f.nvars();
    let w = contraction_space(f, f.degree().saturating_sub(1));
    let mut e = Matrix::zeros(k, r, r);
    for (row, &p) in w.basis().iter().zip(w.pivots()) {
        for (i, c) in row.iter().enumerate() {
            e.set(i, p, c.clone());
        }
    }
    e
}

/// M_f^E = M_f intersected with E Mat E, checked against M_f = M_f^E + ker gamma_f.
pub fn mf_restricted<F: Field>(f: &DPForm<F>, e: &Matrix<F>) -> Result<MatrixAlgebraSpace<F>> {
    let mf = compute_mf(f)?;
    mf_restricted_in(f, &mf, e)
}

pub fn mf_restricted_in<F: Field>(
    f: &DPForm<F>,
    mf: &MatrixAlgebraSpace<F>,
    e: &Matrix<F>,
) -> Result<MatrixAlgebraSpace<F>> {
    if e.mul(e) != *e {
        return Err(Error::Hypothesis("E is not idempotent".into()));
    }
    if !mf.contains(e) {
        return Err(Error::NotInMf);
    }
    let grad = gradient(f);
    if apply_matrix(e, &grad) != grad {
        return Err(Error::Hypothesis("E df != df".into()));
    }
    let support = contraction_space(f, f.degree().saturating_sub(1)).dim();
    if e.rank() != support {
        return Err(Error::Hypothesis("rank E differs from dim R_{d-1}(f)".into()));
    }
    let restricted = mf.sandwich(e);
    let ker = ker_gamma(f);
    if restricted.dim() + ker.dim() != mf.dim() || restricted.span().sum(ker.span()).dim() != mf.dim() {
        return Err(Error::Hypothesis("M_f is not the sum of M_f^E and ker gamma_f".into()));
    }
    Ok(restricted)
}

/// An r x r matrix with entries in R_e.
#[derive(Clone, Debug, PartialEq)]
pub struct OpMatrix<F: Field> {
    pub r: usize,
    pub e: usize,
    pub entries: Vec<DiffOp<F>>,
}

impl<F: Field> OpMatrix<F> {
    pub fn zero(field: &F, nvars: usize, e: usize) -> Self {
        OpMatrix {
            r: nvars,
            e,
            entries: vec![DiffOp::zero(field, nvars, e); nvars * nvars],
        }
    }

    /// D times the identity.
    pub fn scalar(op: &DiffOp<F>) -> Self {
        let r = op.nvars();
        let mut out = Self::zero(op.field(), r, op.degree());
        for i in 0..r {
            out.entries[i * r + i] = op.clone();
        }
        out
    }

    pub fn from_scalar_matrix(a: &Matrix<F>) -> Self {
        let k = a.field();
        let r = a.rows();
        let mut out = Self::zero(k, r, 0);
        for i in 0..r {
            for j in 0..r {
                out.entries[i * r + j] = DiffOp::monomial(k, vec![0; r], a.get(i, j).clone());
            }
        }
        out
    }

    pub fn entry(&self, i: usize, j: usize) -> &DiffOp<F> {
        &self.entries[i * self.r + j]
    }

    /// Coordinates indexed by (i, k, beta).
    pub fn from_coords(field: &F, nvars: usize, e: usize, v: &[F::Elem]) -> Self {
        let ne = monomial_count(nvars, e);
        let entries = (0..nvars * nvars)
            .map(|p| DiffOp::from_vector(field, nvars, e, &v[p * ne..(p + 1) * ne]))
            .collect();
        OpMatrix { r: nvars, e, entries }
    }

    pub fn to_coords(&self) -> Vec<F::Elem> {
        self.entries.iter().flat_map(|o| o.to_vector()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        OpMatrix {
            r: self.r,
            e: self.e,
            entries: self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let r = self.r;
        let k = self.entries[0].field();
        let mut out = Self::zero(k, r, self.e + o.e);
        for i in 0..r {
            for j in 0..r {
                let mut acc = DiffOp::zero(k, r, self.e + o.e);
                for l in 0..r {
                    let a = self.entry(i, l);
                    let b = o.entry(l, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = acc.add(&a.multiply(b));
                    }
                }
                out.entries[i * r + j] = acc;
            }
        }
        out
    }

    /// A v for a vector of forms of common degree.
    pub fn apply(&self, v: &[DPForm<F>]) -> Vec<DPForm<F>> {
        let r = self.r;
        let k = v[0].field();
        let deg = v[0].degree().saturating_sub(self.e);
        (0..r)
            .map(|i| {
                let mut acc = DPForm::zero(k, v[0].nvars(), deg);
                for (l, g) in v.iter().enumerate() {
                    let a = self.entry(i, l);
                    if !a.is_zero() {
                        let c = contract(a, g);
                        if !c.is_zero() {
                            acc = acc.add(&c);
                        }
                    }
                }
                acc
            })
            .collect()
    }
}

/// The space M^f_e with a basis of operator matrices.
#[derive(Clone, Debug)]
pub struct GradedMatrixSpace<F: Field> {
    pub e: usize,
    pub r: usize,
    pub basis: Vec<OpMatrix<F>>,
}

impl<F: Field> GradedMatrixSpace<F> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, a: &OpMatrix<F>) -> bool {
        let k = self.basis.first().map(|b| b.entries[0].field().clone());
        match k {
            None => a.entries.iter().all(|x| x.is_zero()),
            Some(k) => {
                let n = monomial_count(self.r, self.e) * self.r * self.r;
                RowSpace::from_vectors(&k, n, self.basis.iter().map(|b| b.to_coords()).collect())
                    .contains(&a.to_coords())
            }
        }
    }
}

/// M^f_e = {A with entries in R_e : A dd^T f symmetric}.
pub fn graded_mf<F: Field>(f: &DPForm<F>, e: usize) -> Result<GradedMatrixSpace<F>> {
    let d = f.degree();
    if e >= d.max(1) {
        return Err(Error::Degree(format!("entry degree {e} must be below {d}")));
    }
    let r = f.nvars();
    let ker = graded_symmetry_kernel(f, e);
    Ok(GradedMatrixSpace {
        e,
        r,
        basis: ker.iter().map(|v| OpMatrix::from_coords(f.field(), r, e, v)).collect(),
    })
}

/// gamma^f_e(A), the g of degree d - e with dg = A df.
pub fn gamma_graded<F: Field>(f: &DPForm<F>, a: &OpMatrix<F>) -> Result<DPForm<F>> {
    let d = f.degree();
    if a.e >= d {
        return Err(Error::Degree("entry degree too large".into()));
    }
    let comps = a.apply(&gradient(f));
    integrate(f.field(), f.nvars(), d - a.e, &comps).ok_or(Error::NotInMf)
}

/// F_e = R_e(f) and G_e = im gamma^f_e for e = 0..=d, as subspaces of forms of degree d - e.
#[derive(Clone, Debug)]
pub struct ContractionModules<F: Field> {
    pub degree: usize,
    pub f: Vec<RowSpace<F>>,
    pub g: Vec<RowSpace<F>>,
}

pub fn fg_modules<F: Field>(f: &DPForm<F>) -> Result<ContractionModules<F>> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let d = f.degree();
    Ok(ContractionModules {
        degree: d,
        f: (0..=d).map(|e| contraction_space(f, e)).collect(),
        g: (0..=d).map(|e| g_space(f, e)).collect(),
    })
}

/// G_e = (R_1 . ann(f)_{d-e-1})^perp inside the forms of degree d - e.
pub fn g_space<F: Field>(f: &DPForm<F>, e: usize) -> RowSpace<F> {
    let k = f.field();
    let r = f.nvars();
    let d = f.degree();
    let n = monomial_count(r, d - e);
    if e == d {
        return RowSpace::from_vectors(k, 1, vec![vec![k.one()]]);
    }
    let lower = ann_space(f, d - e - 1);
    let m_ann = times_linear(k, r, d - e - 1, &lower);
    RowSpace::from_vectors(k, n, perp_vectors(k, n, m_ann.basis().to_vec()))
}

/// The image of gamma^f_e computed from a basis of M^f_e.
pub fn gamma_image<F: Field>(f: &DPForm<F>, e: usize) -> Result<RowSpace<F>> {
    let space = graded_mf(f, e)?;
    let n = monomial_count(f.nvars(), f.degree() - e);
    let mut out = RowSpace::new(f.field(), n);
    for a in &space.basis {
        out.insert(gamma_graded(f, a)?.to_vector());
    }
    Ok(out)
}

/// Some A with entries in R_e and A df = dg; free coordinates are zero.
pub fn gamma_preimage<F: Field>(f: &DPForm<F>, g: &DPForm<F>) -> Result<OpMatrix<F>> {
    let sys = row_system(f, g.degree())?;
    let k = f.field();
    let r = f.nvars();
    let e = f.degree() - g.degree();
    let mut out = OpMatrix::zero(k, r, e);
    for (i, gi) in g.gradient().iter().enumerate() {
        let target = if gi.is_zero() {
            vec![k.zero(); sys.rows()]
        } else {
            gi.to_vector()
        };
        let sol = sys.solve(&target).ok_or(Error::NotInMf)?;
        let ne = monomial_count(r, e);
        for kk in 0..r {
            out.entries[i * r + kk] = DiffOp::from_vector(k, r, e, &sol[kk * ne..(kk + 1) * ne]);
        }
    }
    Ok(out)
}

/// The matrix of (a_1, ..., a_r) in R_e^r -> sum_k a_k d_k f, with target degree deg - 1.
fn row_system<F: Field>(f: &DPForm<F>, deg: usize) -> Result<Matrix<F>> {
    let d = f.degree();
    if deg == 0 || deg > d {
        return Err(Error::Degree("target degree out of range".into()));
    }
    let k = f.field();
    let r = f.nvars();
    let e = d - deg;
    let betas = monomials(r, e);
    let targets = monomial_index(r, deg - 1);
    let mut m = Matrix::zeros(k, targets.len(), r * betas.len());
    for (gamma, &row) in &targets {
        for kk in 0..r {
            for (bi, b) in betas.iter().enumerate() {
                let c = f.coeff(&add_exp(&add_exp(gamma, b), &unit(r, kk)));
                if !k.is_zero(&c) {
                    m.set(row, kk * betas.len() + bi, c);
                }
            }
        }
    }
    Ok(m)
}

/// g * h = gamma_{a+b}(AB) for lifts A, B of g, h; the result is also checked
/// against a perturbed lift.
pub fn star<F: Field>(f: &DPForm<F>, g: &DPForm<F>, h: &DPForm<F>) -> Result<DPForm<F>> {
    let d = f.degree();
    if g.degree() > d || h.degree() > d {
        return Err(Error::Degree("operand degree exceeds d".into()));
    }
    let a = d - g.degree();
    let b = d - h.degree();
    if a + b + 3 > d {
        return Err(Error::Degree(format!("star needs a + b <= d - 3, got a + b = {}", a + b)));
    }
    let ga = gamma_preimage(f, g)?;
    let hb = gamma_preimage(f, h)?;
    let prod = gamma_graded(f, &ga.mul(&hb))?;
    let sys = row_system(f, g.degree())?;
    if let Some(v) = sys.kernel_basis().first() {
        let k = f.field();
        let r = f.nvars();
        let ne = monomial_count(r, a);
        let mut shifted = ga.clone();
        for kk in 0..r {
            let delta = DiffOp::from_vector(k, r, a, &v[kk * ne..(kk + 1) * ne]);
            shifted.entries[kk] = shifted.entries[kk].add(&delta);
        }
        let other = gamma_graded(f, &shifted.mul(&hb))?;
        if other != prod {
            return Err(Error::Hypothesis("star product depends on the lift".into()));
        }
    }
    Ok(prod)
}

/// M_{f,D} for D the lexicographic monomial basis of R_e.
pub fn mfd<F: Field>(f: &DPForm<F>, e: usize) -> Result<MatrixAlgebraSpace<F>> {
    if e == 0 {
        return Err(Error::Degree("mfd needs e >= 1".into()));
    }
    let k = f.field();
    let r = f.nvars();
    let d = f.degree();
    let ds = monomials(r, e);
    let n = ds.len();
    if d < 2 * e {
        return Ok(MatrixAlgebraSpace::new(k, n, &basis_matrices(k, n)));
    }
    let gammas = monomials(r, d - 2 * e);
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for g in &gammas {
                let mut row = vec![k.zero(); n * n];
                for l in 0..n {
                    let base = add_exp(g, &ds[l]);
                    let cj = f.coeff(&add_exp(&base, &ds[j]));
                    let ci = f.coeff(&add_exp(&base, &ds[i]));
                    row[i * n + l] = k.add(&row[i * n + l], &cj);
                    row[j * n + l] = k.sub(&row[j * n + l], &ci);
                }
                if row.iter().any(|c| !k.is_zero(c)) {
                    rows.push(row);
                }
            }
        }
    }
    let ker = if rows.is_empty() {
        identity_rows(k, n * n)
    } else {
        Matrix::from_rows(k, rows).kernel_basis()
    };
    let span = RowSpace::from_vectors(k, n * n, ker);
    let mut out = MatrixAlgebraSpace::from_span(k, n, span);
    out.refresh_flags();
    Ok(out)
}

fn basis_matrices<F: Field>(k: &F, n: usize) -> Vec<Matrix<F>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            out.push(Matrix::unit(k, n, i, j));
        }
    }
    out
}
