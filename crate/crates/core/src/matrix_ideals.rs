//! Ideals of 2x2 minors attached to sets of matrices, their inverse systems and
//! eigenvector loci.

use crate::apolarity::{ann_space, perp_ops, times_degree};
use crate::artinian::{coid_matrices, maximal_coid, StructAlgebra};
use crate::error::{Error, Result};
use crate::forms::{monomial_count, monomials, power_of_linear_form, DPForm, DiffOp};
use crate::matrix_algebra::{in_mf, MatrixAlgebraSpace};
use crate::scalars::{factor, matrix_minimal_polynomial, Field, Matrix, RowSpace};

pub const DEFAULT_BOUND: usize = 5;

/// An ideal generated by quadrics, kept as the reduced span of its degree 2 part.
#[derive(Clone, Debug)]
pub struct MatrixSetIdeal<F: Field> {
    pub nvars: usize,
    pub generators: Vec<DiffOp<F>>,
    pub source: Vec<Matrix<F>>,
    field: F,
}

impl<F: Field> MatrixSetIdeal<F> {
    fn from_ops(field: &F, nvars: usize, ops: Vec<DiffOp<F>>, source: &[Matrix<F>]) -> Self {
        let space = RowSpace::from_vectors(field, monomial_count(nvars, 2), ops.iter().map(|o| o.to_vector()).collect());
        let generators = space.basis().iter().map(|v| DiffOp::from_vector(field, nvars, 2, v)).collect();
        MatrixSetIdeal { nvars, generators, source: source.to_vec(), field: field.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// The degree e part R_{e-2} . I_2.
    pub fn piece(&self, e: usize) -> RowSpace<F> {
        let n = monomial_count(self.nvars, e);
        if e < 2 || self.generators.is_empty() {
            return RowSpace::new(&self.field, n);
        }
        let two = RowSpace::from_vectors(
            &self.field,
            monomial_count(self.nvars, 2),
            self.generators.iter().map(|o| o.to_vector()).collect(),
        );
        times_degree(&self.field, self.nvars, 2, &two, e - 2)
    }

    pub fn contains(&self, op: &DiffOp<F>) -> bool {
        op.is_zero() || self.piece(op.degree()).contains(&op.to_vector())
    }
}

fn check_square<F: Field>(ms: &[Matrix<F>], r: usize) -> Result<()> {
    if ms.iter().any(|m| m.rows() != r || m.cols() != r) {
        return Err(Error::Dimension(format!("expected {r} x {r} matrices")));
    }
    Ok(())
}

/// The column of linear forms A d.
fn column<F: Field>(a: &Matrix<F>) -> Vec<DiffOp<F>> {
    (0..a.rows()).map(|i| DiffOp::linear(a.field(), a.row(i))).collect()
}

/// All 2x2 minors of the r x 2 matrix (X d : Y d).
fn minors<F: Field>(x: &Matrix<F>, y: &Matrix<F>) -> Vec<DiffOp<F>> {
    let (cx, cy) = (column(x), column(y));
    let r = x.rows();
    let mut out = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            out.push(cx[i].multiply(&cy[j]).sub(&cy[i].multiply(&cx[j])));
        }
    }
    out
}

/// I(M), the sum of I_2(d : A d) over A in M.
pub fn ideal_of<F: Field>(field: &F, r: usize, ms: &[Matrix<F>]) -> Result<MatrixSetIdeal<F>> {
    check_square(ms, r)?;
    let id = Matrix::identity(field, r);
    let ops = ms.iter().flat_map(|a| minors(&id, a)).collect();
    Ok(MatrixSetIdeal::from_ops(field, r, ops, ms))
}

/// The sum of I_2(A d : B d) over pairs A, B in M.
pub fn check_ideal<F: Field>(field: &F, r: usize, ms: &[Matrix<F>]) -> Result<MatrixSetIdeal<F>> {
    check_square(ms, r)?;
    let mut ops = Vec::new();
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            ops.extend(minors(a, b));
        }
    }
    Ok(MatrixSetIdeal::from_ops(field, r, ops, ms))
}

/// I_2(d : A_1 d : ... : A_n d).
pub fn stacked_minor_ideal<F: Field>(field: &F, r: usize, ms: &[Matrix<F>]) -> Result<MatrixSetIdeal<F>> {
    let mut all = vec![Matrix::identity(field, r)];
    all.extend(ms.iter().cloned());
    let mut ideal = check_ideal(field, r, &all)?;
    ideal.source = ms.to_vec();
    Ok(ideal)
}

/// A basis of X_d(M) = {f in R_d : M is contained in M_f}.
pub fn x_space<F: Field>(field: &F, r: usize, ms: &[Matrix<F>], d: usize) -> Result<Vec<DPForm<F>>> {
    let ideal = ideal_of(field, r, ms)?;
    let ops: Vec<DiffOp<F>> = ideal.piece(d).basis().iter().map(|v| DiffOp::from_vector(field, r, d, v)).collect();
    if ops.is_empty() {
        return Ok(monomials(r, d).into_iter().map(|a| DPForm::monomial(field, a, field.one())).collect());
    }
    perp_ops(field, r, d, &ops)
}

/// Checks that X_d(M) consists of the f with R_{d-2}(f) inside X_2(M).
pub fn check_x_recursion<F: Field>(field: &F, r: usize, ms: &[Matrix<F>], d: usize) -> Result<bool> {
    if d < 3 {
        return Err(Error::Degree("the recursion starts at d = 3".into()));
    }
    let x2 = RowSpace::from_vectors(
        field,
        monomial_count(r, 2),
        x_space(field, r, ms, 2)?.iter().map(|g| g.to_vector()).collect(),
    );
    // f lies in the kernel of every map f -> (D f mod X_2) with D in R_{d-2}
    let comp = x2.complement();
    let mut rows = Vec::new();
    for beta in monomials(r, d - 2) {
        let op = DiffOp::monomial(field, beta, field.one());
        for w in &comp {
            // coefficient of f at alpha in <w, D f>
            let row: Vec<F::Elem> = monomials(r, d)
                .into_iter()
                .map(|alpha| {
                    let g = crate::forms::contract(&op, &DPForm::monomial(field, alpha, field.one()));
                    if g.is_zero() {
                        field.zero()
                    } else {
                        w.iter().zip(g.to_vector()).fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, &b)))
                    }
                })
                .collect();
            rows.push(row);
        }
    }
    let n = monomial_count(r, d);
    let rec = if rows.is_empty() {
        RowSpace::from_vectors(field, n, (0..n).map(|i| unit(field, n, i)).collect())
    } else {
        RowSpace::from_vectors(field, n, Matrix::from_rows(field, rows).kernel_basis())
    };
    let x = RowSpace::from_vectors(field, n, x_space(field, r, ms, d)?.iter().map(|g| g.to_vector()).collect());
    Ok(rec.dim() == x.dim() && rec.contains_space(&x))
}

fn unit<F: Field>(field: &F, n: usize, i: usize) -> Vec<F::Elem> {
    (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect()
}

/// U intersected with V via orthogonal complements.
fn intersect<F: Field>(field: &F, u: &RowSpace<F>, v: &RowSpace<F>) -> RowSpace<F> {
    let n = u.ncols();
    let mut perps = u.complement();
    perps.extend(v.complement());
    let sum = RowSpace::from_vectors(field, n, perps);
    RowSpace::from_vectors(field, n, sum.complement())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub bound: usize,
    /// I(M) is contained in check I(M)
    pub contained: bool,
    /// I(M)_e = check I(M)_e for 3 <= e <= bound
    pub agree_from_degree_3: bool,
    pub agree_in_degree_2: bool,
    /// check I(M) = I(M^2)
    pub check_equals_square: bool,
    /// I(M') = check I(M) for the algebra M' generated by M
    pub algebra_equals_check: bool,
    /// M is closed under products, so that I(M) = check I(M)
    pub closed: bool,
}

impl ClosureReport {
    pub fn holds(&self) -> bool {
        self.contained
            && self.agree_from_degree_3
            && self.check_equals_square
            && self.algebra_equals_check
            && (!self.closed || self.agree_in_degree_2)
    }
}

fn same_ideal<F: Field>(a: &MatrixSetIdeal<F>, b: &MatrixSetIdeal<F>, e: usize) -> bool {
    let (x, y) = (a.piece(e), b.piece(e));
    x.dim() == y.dim() && x.contains_space(&y)
}

pub fn closure_identities<F: Field>(field: &F, r: usize, ms: &[Matrix<F>], bound: usize) -> Result<ClosureReport> {
    check_square(ms, r)?;
    if !ms.iter().any(|m| m.is_identity()) {
        return Err(Error::Hypothesis("the matrix set must contain the identity".into()));
    }
    let i = ideal_of(field, r, ms)?;
    let ci = check_ideal(field, r, ms)?;
    let squares: Vec<Matrix<F>> = ms.iter().flat_map(|a| ms.iter().map(move |b| a.mul(b))).collect();
    let isq = ideal_of(field, r, &squares)?;
    let generated = MatrixAlgebraSpace::new(field, r, ms).generated_algebra();
    let ialg = ideal_of(field, r, generated.basis())?;
    let span = MatrixAlgebraSpace::new(field, r, ms);
    let closed = squares.iter().all(|m| span.contains(m));
    let bound = bound.max(3);
    Ok(ClosureReport {
        bound,
        contained: (2..=bound).all(|e| ci.piece(e).contains_space(&i.piece(e))),
        agree_from_degree_3: (3..=bound).all(|e| same_ideal(&i, &ci, e)),
        agree_in_degree_2: same_ideal(&i, &ci, 2),
        check_equals_square: (2..=bound).all(|e| same_ideal(&ci, &isq, e)),
        algebra_equals_check: (2..=bound).all(|e| same_ideal(&ialg, &ci, e)),
        closed,
    })
}

/// Common eigenvectors of a set of matrices, as a union of joint eigenspaces.
#[derive(Clone, Debug)]
pub struct EigenLocus<F: Field> {
    /// Each piece is a joint eigenspace for one choice of eigenvalues.
    pub pieces: Vec<RowSpace<F>>,
    pub full_space: bool,
    /// Some matrix has eigenvalues outside the base field.
    pub requires_extension: bool,
}

impl<F: Field> EigenLocus<F> {
    pub fn contains(&self, v: &[F::Elem]) -> bool {
        self.pieces.iter().any(|p| p.contains(v))
    }
}

fn base_roots<F: Field>(a: &Matrix<F>) -> Result<(Vec<F::Elem>, bool)> {
    let p = matrix_minimal_polynomial(a);
    let fs = factor(&p).ok_or_else(|| Error::Other("field does not support factorization".into()))?;
    let roots = fs.iter().filter(|(g, _)| g.deg() == 1).map(|(g, _)| g.field().neg(&g.coeff(0))).collect();
    Ok((roots, fs.iter().any(|(g, _)| g.deg() > 1)))
}

pub fn eigen_locus<F: Field>(field: &F, r: usize, ms: &[Matrix<F>]) -> Result<EigenLocus<F>> {
    check_square(ms, r)?;
    let all = RowSpace::from_vectors(field, r, (0..r).map(|i| unit(field, r, i)).collect());
    let mut pieces = vec![all];
    let mut requires_extension = false;
    for a in ms {
        let (roots, ext) = base_roots(a)?;
        requires_extension |= ext;
        let mut next = Vec::new();
        for lambda in &roots {
            let shifted = a.sub(&Matrix::identity(field, r).scale(lambda));
            let eig = RowSpace::from_vectors(field, r, shifted.kernel_basis());
            for p in &pieces {
                let w = intersect(field, p, &eig);
                if w.dim() > 0 {
                    next.push(w);
                }
            }
        }
        pieces = next;
    }
    let full_space = pieces.len() == 1 && pieces[0].dim() == r;
    Ok(EigenLocus { pieces, full_space, requires_extension })
}

/// The subspaces U and V built from A_k, B_k in M_f, and what they force.
#[derive(Clone, Debug)]
pub struct UvReport<F: Field> {
    pub u: RowSpace<F>,
    pub v: RowSpace<F>,
    /// (u^T d)(v^T d) for basis vectors u of U and v of V
    pub products: Vec<DiffOp<F>>,
    /// U + V = K^r and U meets V
    pub case_a: bool,
    /// dim U = r - 1 and dim V >= 2
    pub case_b: bool,
    pub linear_annihilator: Vec<DiffOp<F>>,
}

impl<F: Field> UvReport<F> {
    pub fn obstruction(&self) -> bool {
        self.case_a || self.case_b
    }
}

fn uv_spaces<F: Field>(f: &DPForm<F>, a_list: &[Matrix<F>], b_list: &[Matrix<F>]) -> Result<(RowSpace<F>, RowSpace<F>)> {
    let k = f.field();
    let r = f.nvars();
    check_square(a_list, r)?;
    check_square(b_list, r)?;
    if a_list.iter().chain(b_list).any(|m| !in_mf(f, m)) {
        return Err(Error::NotInMf);
    }
    let mut u = RowSpace::new(k, r);
    for a in a_list {
        for row in a.to_rows() {
            u.insert(row);
        }
    }
    for b in b_list {
        for w in b.transpose().kernel_basis() {
            u.insert(w);
        }
    }
    let mut v = RowSpace::from_vectors(k, r, (0..r).map(|i| unit(k, r, i)).collect());
    for a in a_list {
        v = intersect(k, &v, &RowSpace::from_vectors(k, r, a.transpose().kernel_basis()));
    }
    for b in b_list {
        v = intersect(k, &v, &RowSpace::from_vectors(k, r, b.to_rows()));
    }
    Ok((u, v))
}

/// Quadrics (u^T d)(v^T d) in ann(f), each checked.
pub fn uv_annihilator_products<F: Field>(f: &DPForm<F>, a_list: &[Matrix<F>], b_list: &[Matrix<F>]) -> Result<Vec<DiffOp<F>>> {
    let k = f.field();
    let (u, v) = uv_spaces(f, a_list, b_list)?;
    let ann2 = ann_space(f, 2);
    let mut out = Vec::new();
    for x in u.basis() {
        for y in v.basis() {
            let q = DiffOp::linear(k, x).multiply(&DiffOp::linear(k, y));
            if !q.is_zero() && f.degree() >= 2 && !ann2.contains(&q.to_vector()) {
                return Err(Error::Hypothesis("product outside ann(f)_2".into()));
            }
            out.push(q);
        }
    }
    Ok(out)
}

pub fn uv_obstruction<F: Field>(f: &DPForm<F>, a_list: &[Matrix<F>], b_list: &[Matrix<F>]) -> Result<UvReport<F>> {
    let k = f.field();
    let r = f.nvars();
    let products = uv_annihilator_products(f, a_list, b_list)?;
    let (u, v) = uv_spaces(f, a_list, b_list)?;
    let case_a = u.sum(&v).dim() == r && intersect(k, &u, &v).dim() > 0;
    let case_b = u.dim() + 1 == r && v.dim() >= 2;
    let linear_annihilator: Vec<DiffOp<F>> =
        ann_space(f, 1).basis().iter().map(|w| DiffOp::from_vector(k, r, 1, w)).collect();
    if (case_a || case_b) && f.degree() >= 2 && linear_annihilator.is_empty() {
        return Err(Error::Hypothesis("U and V force a linear annihilator but ann(f)_1 = 0".into()));
    }
    Ok(UvReport { u, v, products, case_a, case_b, linear_annihilator })
}

/// Dimensions in one degree of both decompositions for a commutative algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionDegree {
    pub degree: usize,
    /// dim (R / I(M))_d and the summands dim (S_i / I_{S_i}(M_i))_d
    pub quotient: (usize, Vec<usize>),
    /// dim X(M)_d and the summands dim X_{S_i}(M_i)_d
    pub inverse_system: (usize, Vec<usize>),
    /// the summands X_{S_i}(M_i)_d span X(M)_d
    pub spans: bool,
}

impl DecompositionDegree {
    pub fn holds(&self) -> bool {
        self.quotient.0 == self.quotient.1.iter().sum::<usize>()
            && self.inverse_system.0 == self.inverse_system.1.iter().sum::<usize>()
            && self.spans
    }
}

#[derive(Clone, Debug)]
pub struct DecompositionReport<F: Field> {
    pub idempotents: Vec<Matrix<F>>,
    pub degrees: Vec<DecompositionDegree>,
}

impl<F: Field> DecompositionReport<F> {
    pub fn holds(&self) -> bool {
        self.degrees.iter().all(|d| d.holds())
    }
}

/// Products of a basis of linear forms: a spanning set of the degree d part of
/// the subring they generate.
fn subring_piece<F: Field>(field: &F, r: usize, d: usize, basis: &[Vec<F::Elem>]) -> RowSpace<F> {
    let s = basis.len();
    let mut out = RowSpace::new(field, monomial_count(r, d));
    if s == 0 {
        return out;
    }
    for alpha in monomials(s, d) {
        let mut op = DiffOp::one(field, r);
        for (w, &a) in basis.iter().zip(&alpha) {
            op = op.multiply(&DiffOp::linear(field, w).pow(a as usize));
        }
        out.insert(op.to_vector());
    }
    out
}

/// The same for divided powers: spanned by products of l_k^[a_k].
fn dp_subring_piece<F: Field>(field: &F, r: usize, d: usize, basis: &[Vec<F::Elem>]) -> RowSpace<F> {
    let s = basis.len();
    let mut out = RowSpace::new(field, monomial_count(r, d));
    if s == 0 {
        return out;
    }
    for alpha in monomials(s, d) {
        let mut g = DPForm::monomial(field, vec![0; r], field.one());
        for (w, &a) in basis.iter().zip(&alpha) {
            g = g.multiply(&power_of_linear_form(field, w, a as usize));
        }
        out.insert(g.to_vector());
    }
    out
}

pub fn regular_decomposition_check<F: Field>(ms: &MatrixAlgebraSpace<F>, bound: usize, seed: u64) -> Result<DecompositionReport<F>> {
    let k = ms.field();
    let r = ms.size();
    if !ms.contains_identity() || !ms.check_closure() || !ms.check_commutative() {
        return Err(Error::Hypothesis("need a commutative matrix algebra with identity".into()));
    }
    let alg = StructAlgebra::from_matrix_space(ms)?;
    let coid = maximal_coid(&alg, seed)?;
    let idempotents = coid_matrices(ms, &coid);
    let ideal = ideal_of(k, r, ms.basis())?;
    let blocks: Vec<(MatrixSetIdeal<F>, Vec<Vec<F::Elem>>, Vec<Vec<F::Elem>>)> = idempotents
        .iter()
        .map(|e| {
            let mi: Vec<Matrix<F>> = ms.basis().iter().map(|b| b.mul(e)).collect();
            let rows = RowSpace::from_vectors(k, r, e.to_rows()).basis().to_vec();
            let cols = RowSpace::from_vectors(k, r, e.transpose().to_rows()).basis().to_vec();
            Ok((ideal_of(k, r, &mi)?, rows, cols))
        })
        .collect::<Result<_>>()?;
    let mut degrees = Vec::new();
    for d in 1..=bound {
        let total = monomial_count(r, d);
        let quotient = total - ideal.piece(d).dim();
        let x_total = RowSpace::from_vectors(
            k,
            total,
            x_space(k, r, ms.basis(), d)?.iter().map(|g| g.to_vector()).collect(),
        );
        let mut q_parts = Vec::new();
        let mut x_parts = Vec::new();
        let mut x_sum = RowSpace::new(k, total);
        for (ideal_i, rows, cols) in &blocks {
            // V_i = {v^T d : v in im E_i^T}, spanned by the rows of E_i
            let si = subring_piece(k, r, d, rows);
            q_parts.push(si.dim() - intersect(k, &si, &ideal_i.piece(d)).dim());
            let xi_all = RowSpace::from_vectors(
                k,
                total,
                x_space(k, r, &ideal_i.source, d)?.iter().map(|g| g.to_vector()).collect(),
            );
            let xi = intersect(k, &dp_subring_piece(k, r, d, cols), &xi_all);
            x_parts.push(xi.dim());
            x_sum = x_sum.sum(&xi);
        }
        let spans = x_sum.dim() == x_total.dim() && x_total.contains_space(&x_sum);
        degrees.push(DecompositionDegree {
            degree: d,
            quotient: (quotient, q_parts),
            inverse_system: (x_total.dim(), x_parts),
            spans,
        });
    }
    Ok(DecompositionReport { idempotents, degrees })
}
