//! Regular splittings, degenerate splittings over parameter rings, and the
//! nilpotent rank obstruction.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::apolarity::{ann_space, contraction_space, generator_counts, hilbert_function};
use crate::artinian::{maximal_coid, nilradical, simultaneous_diagonalize, StructAlgebra};
use crate::error::{Error, Result};
use crate::forms::{apply_base_change, monomial_count, specialize, DPForm};
use crate::matrix_algebra::{
    apply_matrix, choose_support_idempotent, compute_mf, gamma_f, ker_gamma, mf_restricted_in, MatrixAlgebraSpace,
};
use crate::scalars::{factor, Field, MPoly, Matrix, RatField, RowSpace, UPoly};

/// One additive component of a regular splitting.
#[derive(Clone, Debug)]
pub struct Component<F: Field> {
    pub form: DPForm<F>,
    pub idempotent: Matrix<F>,
    pub hilbert: Vec<usize>,
    pub support_dim: usize,
    /// M_g^E for this component g and its idempotent E.
    pub block: MatrixAlgebraSpace<F>,
}

#[derive(Clone, Debug)]
pub struct SplittingReport<F: Field> {
    pub f: DPForm<F>,
    pub components: Vec<Component<F>>,
    /// Residue field degree of each block; all ones when the coid is maximal over the algebraic closure too.
    pub residue_degrees: Vec<usize>,
    pub seed: u64,
}

impl<F: Field> SplittingReport<F> {
    pub fn len(&self) -> usize {
        self.components.len()
    }
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
    pub fn forms(&self) -> Vec<DPForm<F>> {
        self.components.iter().map(|c| c.form.clone()).collect()
    }
    pub fn idempotents(&self) -> Vec<Matrix<F>> {
        self.components.iter().map(|c| c.idempotent.clone()).collect()
    }
    pub fn splits(&self) -> usize {
        self.len().saturating_sub(1)
    }
}

fn component<F: Field>(g: DPForm<F>, e: Matrix<F>) -> Result<Component<F>> {
    let d = g.degree();
    let hilbert = hilbert_function(&g)?;
    let support_dim = contraction_space(&g, d - 1).dim();
    let block = compute_mf(&g)?.sandwich(&e);
    Ok(Component { form: g, idempotent: e, hilbert, support_dim, block })
}

/// Idempotents E_i with E_i df = dg_i, projecting onto the support of g_i
/// along the other supports and a coordinate complement.
pub fn idempotents_from_components<F: Field>(f: &DPForm<F>, comps: &[DPForm<F>]) -> Result<Vec<Matrix<F>>> {
    let k = f.field();
    let r = f.nvars();
    let d = f.degree();
    if d < 2 {
        return Err(Error::Degree("splittings need d >= 2".into()));
    }
    let mut cols: Vec<Vec<F::Elem>> = Vec::new();
    let mut ranges = Vec::new();
    for g in comps {
        let u = contraction_space(g, d - 1);
        let start = cols.len();
        cols.extend(u.basis().iter().cloned());
        ranges.push(start..cols.len());
    }
    let all = RowSpace::from_vectors(k, r, cols.clone());
    if all.dim() != cols.len() {
        return Err(Error::Hypothesis("component supports are linearly dependent".into()));
    }
    for j in 0..r {
        if !all.pivots().contains(&j) {
            cols.push((0..r).map(|i| if i == j { k.one() } else { k.zero() }).collect());
        }
    }
    let b = Matrix::from_rows(k, cols).transpose();
    let binv = b.inverse().ok_or(Error::Singular)?;
    let grad = f.gradient();
    let mut out = Vec::new();
    for (g, range) in comps.iter().zip(ranges) {
        let mut dmat = Matrix::zeros(k, r, r);
        for i in range {
            dmat.set(i, i, k.one());
        }
        let e = b.mul(&dmat).mul(&binv);
        if apply_matrix(&e, &grad) != g.gradient() {
            return Err(Error::Hypothesis("components do not come from an idempotent".into()));
        }
        out.push(e);
    }
    Ok(out)
}

/// Orthogonal decomposition of a quadric: 1-dimensional blocks, plus
/// 2-dimensional alternating blocks in characteristic 2.
fn quadric_components<F: Field>(f: &DPForm<F>) -> Vec<DPForm<F>> {
    let k = f.field();
    let r = f.nvars();
    let mut h = Matrix::zeros(k, r, r);
    for i in 0..r {
        for j in 0..r {
            let mut e = vec![0u32; r];
            e[i] += 1;
            e[j] += 1;
            h.set(i, j, f.coeff(&e));
        }
    }
    let bil = |u: &[F::Elem], v: &[F::Elem]| -> F::Elem {
        let hv = h.mul_vec(v);
        u.iter().zip(&hv).fold(k.zero(), |acc, (a, b)| k.add(&acc, &k.mul(a, b)))
    };
    let addv = |u: &[F::Elem], v: &[F::Elem], c: &F::Elem| -> Vec<F::Elem> {
        u.iter().zip(v).map(|(a, b)| k.add(a, &k.mul(b, c))).collect()
    };
    let mut rest: Vec<Vec<F::Elem>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { k.one() } else { k.zero() }).collect())
        .collect();
    let mut blocks: Vec<Vec<Vec<F::Elem>>> = Vec::new();
    loop {
        let mut pick: Option<Vec<Vec<F::Elem>>> = None;
        'search: for i in 0..rest.len() {
            if !k.is_zero(&bil(&rest[i], &rest[i])) {
                pick = Some(vec![rest[i].clone()]);
                break;
            }
            for j in i + 1..rest.len() {
                let s = addv(&rest[i], &rest[j], &k.one());
                if !k.is_zero(&bil(&s, &s)) {
                    pick = Some(vec![s]);
                    break 'search;
                }
            }
        }
        if pick.is_none() {
            'pair: for i in 0..rest.len() {
                for j in i + 1..rest.len() {
                    if !k.is_zero(&bil(&rest[i], &rest[j])) {
                        pick = Some(vec![rest[i].clone(), rest[j].clone()]);
                        break 'pair;
                    }
                }
            }
        }
        let Some(block) = pick else { break };
        // project the remaining vectors onto the orthogonal complement of the block
        let gram: Vec<Vec<F::Elem>> = block.iter().map(|u| block.iter().map(|v| bil(u, v)).collect()).collect();
        let ginv = Matrix::from_rows(k, gram).inverse().expect("block is nondegenerate");
        let mut next = Vec::new();
        for w in &rest {
            let rhs: Vec<F::Elem> = block.iter().map(|u| bil(u, w)).collect();
            let c = ginv.mul_vec(&rhs);
            let mut p = w.clone();
            for (u, cu) in block.iter().zip(&c) {
                p = addv(&p, u, &k.neg(cu));
            }
            next.push(p);
        }
        let mut all = RowSpace::new(k, r);
        for u in blocks.iter().flatten().chain(block.iter()) {
            all.insert(u.clone());
        }
        rest = next
            .into_iter()
            .filter(|p| all.insert(p.clone()))
            .collect();
        blocks.push(block);
    }
    // the radical of H completes the basis
    let mut cols: Vec<Vec<F::Elem>> = blocks.iter().flatten().cloned().collect();
    let nblock = cols.len();
    cols.extend(rest);
    let b = Matrix::from_rows(k, cols).transpose();
    let binv = b.inverse().expect("basis");
    let mut out = Vec::new();
    let mut start = 0;
    for block in &blocks {
        let mut dmat = Matrix::zeros(k, r, r);
        for i in start..start + block.len() {
            dmat.set(i, i, k.one());
        }
        start += block.len();
        let pi = b.mul(&dmat).mul(&binv);
        let s = pi.transpose().mul(&h).mul(&pi);
        let mut g = DPForm::zero(k, r, 2);
        for i in 0..r {
            for j in i..r {
                let mut e = vec![0u32; r];
                e[i] += 1;
                e[j] += 1;
                g.add_term(e, s.get(i, j).clone());
            }
        }
        out.push(g);
    }
    debug_assert!(start == nblock);
    out
}

/// The maximal regular splitting of f (for d = 2, a maximal one).
pub fn regular_split<F: Field>(f: &DPForm<F>, seed: u64) -> Result<SplittingReport<F>> {
    let d = f.degree();
    if d <= 1 {
        return Err(Error::Degree("regular splitting needs d >= 2".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (forms, idems, residue_degrees) = if d == 2 {
        let forms = quadric_components(f);
        let idems = idempotents_from_components(f, &forms)?;
        let n = forms.len();
        (forms, idems, vec![1; n])
    } else {
        let e = choose_support_idempotent(f);
        let mf = compute_mf(f)?;
        let mfe = mf_restricted_in(f, &mf, &e)?;
        let alg = StructAlgebra::from_matrix_space_with_identity(&mfe, &e)?;
        let coid = maximal_coid(&alg, seed)?;
        let idems: Vec<Matrix<F>> = coid.idempotents.iter().map(|c| mfe.element(c)).collect();
        let mut forms = Vec::new();
        for ei in &idems {
            forms.push(gamma_f(f, ei)?);
        }
        (forms, idems, coid.residue_degrees)
    };
    let mut sum = DPForm::zero(f.field(), f.nvars(), d);
    for g in &forms {
        sum = sum.add(g);
    }
    if sum != *f {
        return Err(Error::Other("components do not sum to f".into()));
    }
    let mut components = Vec::new();
    for (g, e) in forms.into_iter().zip(idems) {
        components.push(component(g, e)?);
    }
    if d >= 3 {
        let mf = compute_mf(f)?;
        let e = choose_support_idempotent(f);
        let mfe = mf_restricted_in(f, &mf, &e)?;
        let total: usize = components.iter().map(|c| c.block.dim()).sum();
        if total != mfe.dim() {
            return Err(Error::Other("block algebras do not decompose M_f^E".into()));
        }
        for c in components.iter().filter(|_| e.is_identity()) {
            let m_e = MatrixAlgebraSpace::new(f.field(), f.nvars(), &mf.basis().iter().map(|b| b.mul(&c.idempotent)).collect::<Vec<_>>());
            if m_e.basis() != c.block.basis() {
                return Err(Error::Other("block algebra differs from M_f E_i".into()));
            }
        }
    }
    Ok(SplittingReport { f: f.clone(), components, residue_degrees, seed })
}

/// Coarsens a splitting by summing components (and idempotents) in each group.
pub fn group<F: Field>(report: &SplittingReport<F>, partition: &[Vec<usize>]) -> Result<SplittingReport<F>> {
    let n = report.len();
    let mut seen = vec![false; n];
    for part in partition {
        if part.is_empty() {
            return Err(Error::Hypothesis("empty group".into()));
        }
        for &i in part {
            if i >= n || seen[i] {
                return Err(Error::Hypothesis("groups must partition the components".into()));
            }
            seen[i] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Hypothesis("groups must partition the components".into()));
    }
    let f = &report.f;
    let k = f.field();
    let r = f.nvars();
    let mut components = Vec::new();
    let mut residue_degrees = Vec::new();
    for part in partition {
        let mut g = DPForm::zero(k, r, f.degree());
        let mut e = Matrix::zeros(k, r, r);
        for &i in part {
            g = g.add(&report.components[i].form);
            e = e.add(&report.components[i].idempotent);
        }
        components.push(component(g, e)?);
        residue_degrees.push(part.iter().map(|&i| report.residue_degrees[i]).sum());
    }
    Ok(SplittingReport { f: f.clone(), components, residue_degrees, seed: report.seed })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub valid: bool,
    pub sums_to_f: bool,
    pub nonzero: bool,
    pub supports_independent: bool,
    pub support_dims: Vec<usize>,
    pub total_support: usize,
    /// (e, ann(f)_e equals the intersection of the ann(g_i)_e)
    pub annihilator_identity: Vec<(usize, bool)>,
}

fn intersect<F: Field>(k: &F, n: usize, a: &RowSpace<F>, b: &RowSpace<F>) -> RowSpace<F> {
    let both = RowSpace::from_vectors(k, n, a.complement().into_iter().chain(b.complement()).collect());
    RowSpace::from_vectors(k, n, both.complement())
}

/// Checks a claimed regular splitting f = g_1 + ... + g_n.
pub fn verify_regular_splitting<F: Field>(f: &DPForm<F>, comps: &[DPForm<F>]) -> VerifyReport {
    let k = f.field();
    let r = f.nvars();
    let d = f.degree();
    let shape_ok = comps.iter().all(|g| g.degree() == d && g.nvars() == r);
    let mut sum = DPForm::zero(k, r, d);
    if shape_ok {
        for g in comps {
            sum = sum.add(g);
        }
    }
    let sums_to_f = shape_ok && sum == *f;
    let nonzero = comps.iter().all(|g| !g.is_zero());
    let low = d.saturating_sub(1);
    let mut total = RowSpace::new(k, r);
    let mut support_dims = Vec::new();
    if shape_ok {
        for g in comps {
            let u = contraction_space(g, low);
            support_dims.push(u.dim());
            for v in u.basis() {
                total.insert(v.clone());
            }
        }
    }
    let supports_independent = shape_ok && total.dim() == support_dims.iter().sum::<usize>();
    let mut annihilator_identity = Vec::new();
    if shape_ok && !comps.is_empty() {
        for e in 1..d {
            let n = monomial_count(r, e);
            let mut inter = ann_space(&comps[0], e);
            for g in &comps[1..] {
                inter = intersect(k, n, &inter, &ann_space(g, e));
            }
            annihilator_identity.push((e, inter.basis() == ann_space(f, e).basis()));
        }
    }
    let valid = sums_to_f && nonzero && supports_independent && annihilator_identity.iter().all(|x| x.1);
    VerifyReport {
        valid,
        sums_to_f,
        nonzero,
        supports_independent,
        support_dims,
        total_support: total.dim(),
        annihilator_identity,
    }
}

/// dim M_f - 1, with a flag set when ann(f)_1 != 0 (dummy variables inflate the bound).
pub fn splitting_upper_bound<F: Field>(f: &DPForm<F>) -> Result<(usize, bool)> {
    let mf = compute_mf(f)?;
    Ok((mf.dim() - 1, ann_space(f, 1).dim() > 0))
}

// ---------------------------------------------------------------------------
// Degenerate splittings

/// A form whose coefficients are polynomials in t_1..t_m.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamForm<K: Field> {
    pub ring: RatField<K>,
    pub form: DPForm<RatField<K>>,
}

impl<K: Field> ParamForm<K> {
    pub fn new(ring: &RatField<K>, form: DPForm<RatField<K>>) -> Result<Self> {
        if form.terms().values().any(|c| !ring.is_polynomial(c)) {
            return Err(Error::Hypothesis("coefficients must be polynomials in the parameters".into()));
        }
        Ok(ParamForm { ring: ring.clone(), form })
    }

    pub fn nparams(&self) -> usize {
        self.ring.nvars()
    }

    pub fn at(&self, point: &[K::Elem]) -> DPForm<K> {
        specialize(&self.ring, &self.form, point).expect("polynomial coefficients")
    }

    pub fn at_zero(&self) -> DPForm<K> {
        let k = self.ring.base();
        self.at(&vec![k.zero(); self.nparams()])
    }

    /// The coefficient form of t^exps.
    pub fn coefficient(&self, exps: &[u32]) -> DPForm<K> {
        let k = self.ring.base();
        let mut out = DPForm::zero(k, self.form.nvars(), self.form.degree());
        for (e, c) in self.form.terms() {
            let lead = c.den.constant_value(k);
            if let Some(v) = c.num.terms().get(exps) {
                out.add_term(e.clone(), k.div(v, &lead).expect("monic denominator"));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Certificate<K: Field> {
    pub point: Vec<K::Elem>,
    pub attempts: usize,
    pub components: usize,
    pub dim_m_specialized: usize,
    pub dim_m_f0: usize,
    /// Whether the specialized form has the Hilbert function of f_0.
    pub hilbert_preserved: bool,
}

#[derive(Clone, Debug)]
pub struct LevelLog {
    pub param: usize,
    pub matrix: usize,
    pub index: usize,
    pub cleared_denominator: bool,
}

#[derive(Clone, Debug)]
pub struct DegenerateSplitting<K: Field> {
    pub family: ParamForm<K>,
    /// Additive components of the family over K(t).
    pub components: Vec<DPForm<RatField<K>>>,
    pub levels: Vec<LevelLog>,
    pub certificate: Certificate<K>,
}

impl<K: Field> DegenerateSplitting<K> {
    pub fn nparams(&self) -> usize {
        self.family.nparams()
    }
}

/// A nilpotent A with an idempotent E (EA = AE = A) and the least a with A^k in M_f for k >= a.
#[derive(Clone, Debug)]
pub struct NilpotentDatum<K: Field> {
    pub a: Matrix<K>,
    pub e: Matrix<K>,
    pub start: usize,
}

fn lift_matrix<K: Field>(l: &RatField<K>, m: &Matrix<K>) -> Matrix<RatField<K>> {
    Matrix::from_rows(l, m.to_rows().iter().map(|row| row.iter().map(|c| l.constant(c.clone())).collect()).collect())
}

fn scale_form<K: Field>(l: &RatField<K>, f: &DPForm<RatField<K>>, v: usize, s: &crate::scalars::RatFunc<K>) -> DPForm<RatField<K>> {
    f.map_field(l, |c| l.scale_var(c, v, s))
}

fn scale_matrix<K: Field>(l: &RatField<K>, m: &Matrix<RatField<K>>, v: usize, s: &crate::scalars::RatFunc<K>) -> Matrix<RatField<K>> {
    m.map(|c| l.scale_var(c, v, s))
}

/// Q with N Q N = N, from the linear system with free entries set to zero.
fn inner_inverse<F: Field>(n: &Matrix<F>) -> Result<Matrix<F>> {
    let k = n.field();
    let r = n.rows();
    // (N Q N)_{ij} = sum_{a,b} N_ia Q_ab N_bj
    let mut rows = Vec::with_capacity(r * r);
    let mut rhs = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            let mut row = vec![k.zero(); r * r];
            for a in 0..r {
                if k.is_zero(n.get(i, a)) {
                    continue;
                }
                for b in 0..r {
                    if !k.is_zero(n.get(b, j)) {
                        row[a * r + b] = k.add(&row[a * r + b], &k.mul(n.get(i, a), n.get(b, j)));
                    }
                }
            }
            rows.push(row);
            rhs.push(n.get(i, j).clone());
        }
    }
    let sol = Matrix::from_rows(k, rows).solve(&rhs).ok_or(Error::Singular)?;
    Ok(Matrix::from_flat(k, r, r, sol))
}

struct Slot<K: Field> {
    b: Matrix<RatField<K>>,
    e: Matrix<RatField<K>>,
    start: usize,
    index: usize,
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Other(format!("construction identity failed: {msg}")))
    }
}

/// f_t over sum (n_i - a_i) parameters with f_0 = f that splits that many times.
pub fn degenerate_split_multimatrix<K: Field>(
    f: &DPForm<K>,
    data: &[NilpotentDatum<K>],
    seed: u64,
) -> Result<DegenerateSplitting<K>> {
    let k = f.field();
    let r = f.nvars();
    let d = f.degree();
    if d < 3 {
        return Err(Error::DegreeTooLow);
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    if data.is_empty() {
        return Err(Error::NoNilpotent);
    }
    let mut indices = Vec::new();
    for (i, dat) in data.iter().enumerate() {
        if dat.a.rows() != r || dat.e.rows() != r {
            return Err(Error::Dimension("matrix size differs from the number of variables".into()));
        }
        if dat.a.is_zero() {
            return Err(Error::Hypothesis("nilpotent matrix is zero".into()));
        }
        let n = dat.a.nilpotency_index().ok_or_else(|| Error::Hypothesis("matrix is not nilpotent".into()))?;
        if dat.e.mul(&dat.e) != dat.e {
            return Err(Error::Hypothesis("E is not idempotent".into()));
        }
        if dat.e.mul(&dat.a) != dat.a || dat.a.mul(&dat.e) != dat.a {
            return Err(Error::Hypothesis("E A = A E = A fails".into()));
        }
        for other in &data[i + 1..] {
            if !dat.e.mul(&other.e).is_zero() || !other.e.mul(&dat.e).is_zero() {
                return Err(Error::Hypothesis("idempotents are not orthogonal".into()));
            }
        }
        if dat.start < 1 || dat.start >= n {
            return Err(Error::Hypothesis("need 1 <= a < index".into()));
        }
        for kk in dat.start..n {
            if !crate::matrix_algebra::in_mf(f, &dat.a.pow(kk)) {
                return Err(Error::NotInMf);
            }
        }
        indices.push(n);
    }
    let nparams: usize = data.iter().zip(&indices).map(|(dat, n)| n - dat.start).sum();
    let l = RatField::new(k, nparams);
    let mut slots: Vec<Slot<K>> = data
        .iter()
        .zip(&indices)
        .map(|(dat, &n)| Slot { b: lift_matrix(&l, &dat.a), e: lift_matrix(&l, &dat.e), start: dat.start, index: n })
        .collect();
    let f_l = f.to_rational_functions(&l);
    let mut cur = f_l.clone();
    let mut family = f_l;
    let mut comps: Vec<DPForm<RatField<K>>> = Vec::new();
    let mut levels = Vec::new();
    let one_l = Matrix::identity(&l, r);
    let mut param = 0;
    for which in 0..slots.len() {
        while slots[which].index > slots[which].start {
            let slot = &slots[which];
            let m = slot.index - 1;
            let t = l.var(param);
            let nmat = slot.b.pow(m);
            let q = slot.e.mul(&inner_inverse(&nmat)?).mul(&slot.e);
            check(nmat.mul(&q).mul(&nmat) == nmat, "N Q N = N")?;
            let at = slot.b.add(&q.mul(&nmat).scale(&t));
            let mut p = one_l.clone();
            for j in 1..=m {
                p = p.add(&slot.b.pow(m - j).mul(&q).scale(&l.pow(&t, j as u64)));
            }
            let at_m = at.pow(m);
            check(at_m == p.mul(&nmat), "A_t^n = P A^n")?;
            check(at.mul(&at_m) == at_m.scale(&t), "A_t^(n+1) = t A_t^n")?;
            let g = gamma_f(&cur, &nmat)?;
            let gt = apply_base_change(&p, &g)?;
            let mut pieces: BTreeMap<u32, DPForm<RatField<K>>> = BTreeMap::new();
            for (e, c) in gt.terms() {
                for (deg, part) in l.split_by_degree(c, param) {
                    pieces
                        .entry(deg)
                        .or_insert_with(|| DPForm::zero(&l, r, d))
                        .add_term(e.clone(), part);
                }
            }
            let mut deformation = DPForm::zero(&l, r, d);
            for (&deg, piece) in &pieces {
                if deg as usize > m {
                    let shift = deg - m as u32;
                    deformation = deformation.add(&piece.scale(&l.pow(&t, shift as u64)));
                }
            }
            let tinv_m = l.inv(&l.pow(&t, m as u64)).expect("t is nonzero");
            let cur_t = cur.add(&deformation);
            let c1 = gt.scale(&tinv_m);
            let cur_next = cur_t.sub(&c1);
            let tinv = l.inv(&t).expect("t is nonzero");
            let e_prime = one_l.sub(&at.scale(&tinv).pow(m));
            check(e_prime.mul(&e_prime) == e_prime, "E' idempotent")?;
            let b_next = at.mul(&e_prime);
            let e_next = slot.e.mul(&e_prime);
            check(b_next.nilpotency_index() == Some(m), "index drops by one")?;

            // reparametrize t -> D t so the family stays polynomial
            let mut den = MPoly::constant(k, nparams, k.one());
            for c in deformation.terms().values() {
                let g = den.gcd(k, &c.den, nparams);
                den = den.mul(k, &c.den).div_exact(k, &g).expect("gcd divides");
            }
            let cleared = !den.is_constant();
            let mut deformation = deformation;
            let mut c1 = c1;
            let mut cur_next = cur_next;
            let mut b_next = b_next;
            let mut e_next = e_next;
            if cleared {
                let s = l.from_poly(den);
                deformation = scale_form(&l, &deformation, param, &s);
                c1 = scale_form(&l, &c1, param, &s);
                cur_next = scale_form(&l, &cur_next, param, &s);
                b_next = scale_matrix(&l, &b_next, param, &s);
                e_next = scale_matrix(&l, &e_next, param, &s);
            }
            family = family.add(&deformation);
            comps.push(c1);
            cur = cur_next;
            levels.push(LevelLog { param, matrix: which, index: m + 1, cleared_denominator: cleared });
            slots[which] = Slot { b: b_next, e: e_next, start: slots[which].start, index: m };
            param += 1;
        }
    }
    comps.push(cur);
    let mut total = DPForm::zero(&l, r, d);
    for c in &comps {
        total = total.add(c);
    }
    check(total == family, "components sum to the family")?;
    let family = ParamForm::new(&l, family)?;
    check(family.at_zero() == *f, "f_0 = f")?;
    let certificate = certify(f, &family, seed)?;
    Ok(DegenerateSplitting { family, components: comps, levels, certificate })
}

/// The one-matrix construction: f_t over index(A) - 1 parameters.
pub fn degenerate_split_onematrix<K: Field>(f: &DPForm<K>, a: &Matrix<K>, seed: u64) -> Result<DegenerateSplitting<K>> {
    if f.degree() < 3 {
        return Err(Error::DegreeTooLow);
    }
    if a.nilpotency_index().is_none() || a.is_zero() {
        return Err(Error::Hypothesis("matrix is not a nonzero nilpotent".into()));
    }
    if !crate::matrix_algebra::in_mf(f, a) {
        return Err(Error::NotInMf);
    }
    let datum = NilpotentDatum { a: a.clone(), e: Matrix::identity(f.field(), f.nvars()), start: 1 };
    degenerate_split_multimatrix(f, &[datum], seed)
}

const CERTIFICATE_RETRIES: usize = 5;

fn certify<K: Field>(f: &DPForm<K>, family: &ParamForm<K>, seed: u64) -> Result<Certificate<K>> {
    let k = f.field();
    let n = family.nparams();
    let dim_m_f0 = compute_mf(f)?.dim();
    let h0 = hilbert_function(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<Certificate<K>> = None;
    for attempt in 1..=CERTIFICATE_RETRIES {
        let point: Vec<K::Elem> = (0..n)
            .map(|_| loop {
                let c = k.random_elem(&mut rng);
                if !k.is_zero(&c) {
                    break c;
                }
            })
            .collect();
        let ft = family.at(&point);
        if ft.is_zero() {
            continue;
        }
        let Ok(split) = regular_split(&ft, seed) else { continue };
        let cert = Certificate {
            point,
            attempts: attempt,
            components: split.len(),
            dim_m_specialized: compute_mf(&ft)?.dim(),
            dim_m_f0,
            hilbert_preserved: hilbert_function(&ft)? == h0,
        };
        if split.len() > n {
            return Ok(cert);
        }
        if best.as_ref().is_none_or(|b| b.components < cert.components) {
            best = Some(cert);
        }
    }
    let found = best.map_or(0, |b| b.components);
    Err(Error::Other(format!(
        "specialization certificate failed: best specialization has {found} components, expected {}",
        n + 1
    )))
}

// ---------------------------------------------------------------------------
// Obstruction

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Confidence {
    Exact,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    NotObstructed,
}

#[derive(Clone, Debug)]
pub struct ObstructionReport<F: Field> {
    pub verdict: Verdict,
    pub confidence: Confidence,
    /// Nilpotents of rank at most this bound would be needed.
    pub rank_bound: usize,
    /// Least rank of a nonzero nilpotent in M_h (exact or over the sampled set).
    pub min_rank: Option<usize>,
    pub nilpotent_dim: usize,
    pub witness: Option<Matrix<F>>,
}

/// Invariant factors of a matrix over K[x] (monic, nonzero ones only).
fn invariant_factors<F: Field>(mut m: Vec<Vec<UPoly<F>>>) -> Vec<UPoly<F>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest degree nonzero entry in the lower-right block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero() && pivot.is_none_or(|(a, b)| m[i][j].deg() < m[a][b].deg()) {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut clean = true;
        for i in t + 1..rows {
            if m[i][t].is_zero() {
                continue;
            }
            let (q, rem) = m[i][t].divrem(&m[t][t]);
            for j in t..cols {
                let sub = q.mul(&m[t][j]);
                m[i][j] = m[i][j].sub(&sub);
            }
            debug_assert!(m[i][t] == rem);
            if !rem.is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if m[t][j].is_zero() {
                continue;
            }
            let (q, rem) = m[t][j].divrem(&m[t][t]);
            for i in t..rows {
                let sub = q.mul(&m[i][t]);
                m[i][j] = m[i][j].sub(&sub);
            }
            if !rem.is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }
        // the pivot must divide everything below and to the right
        let mut bad: Option<usize> = None;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !m[i][j].rem(&m[t][t]).is_zero() {
                    bad = Some(i);
                    break 'scan;
                }
            }
        }
        if let Some(i) = bad {
            for j in t..cols {
                let v = m[i][j].clone();
                m[t][j] = m[t][j].add(&v);
            }
            continue;
        }
        out.push(m[t][t].monic());
        t += 1;
    }
    out
}

fn roots<F: Field>(p: &UPoly<F>) -> Option<Vec<F::Elem>> {
    if p.deg() == 0 {
        return Some(Vec::new());
    }
    let fs = factor(p)?;
    Some(
        fs.iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| g.field().neg(&g.coeff(0)))
            .collect(),
    )
}

/// Least rank of a nonzero member of the pencil xA + yB over K, with a witness.
fn pencil_min_rank<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Option<(usize, Matrix<F>)> {
    let k = a.field();
    let r = a.rows();
    let poly: Vec<Vec<UPoly<F>>> = (0..r)
        .map(|i| (0..r).map(|j| UPoly::new(k, vec![b.get(i, j).clone(), a.get(i, j).clone()])).collect())
        .collect();
    let inv = invariant_factors(poly);
    let mut best = (a.rank(), a.clone());
    let generic = inv.len();
    if b.rank() < best.0 {
        best = (b.rank(), b.clone());
    }
    if let Some(last) = inv.last() {
        for x in roots(last)? {
            let m = a.scale(&x).add(b);
            let rk = m.rank();
            if rk < best.0 {
                best = (rk, m);
            }
        }
    }
    debug_assert!(best.0 <= generic);
    Some(best)
}

/// Decides whether f = h + x_{s+1}^[d] + ... + x_r^[d] is barred from having an
/// f_t with m regular components, via ranks of nilpotents in M_h.
pub fn nilpotent_rank_obstruction<F: Field>(h: &DPForm<F>, r: usize, m: usize, seed: u64) -> Result<ObstructionReport<F>> {
    let k = h.field();
    let s = h.nvars();
    let d = h.degree();
    if d < 3 {
        return Err(Error::DegreeTooLow);
    }
    if s > r {
        return Err(Error::Dimension("h has more variables than the ambient ring".into()));
    }
    if m + s <= r + 1 {
        return Err(Error::Hypothesis("need m > r - s + 1".into()));
    }
    let rank_bound = s / (m + s - r);
    let w = ann_space(h, 1);
    if w.dim() > 0 {
        // u w^T with w^T u = 0 is a rank-one nilpotent in ker gamma_h
        let wv = &w.basis()[0];
        let ker = ker_gamma(h);
        let mut witness = None;
        for u in Matrix::from_rows(k, vec![wv.clone()]).kernel_basis() {
            let mut mat = Matrix::zeros(k, s, s);
            for i in 0..s {
                for j in 0..s {
                    mat.set(i, j, k.mul(&u[i], &wv[j]));
                }
            }
            if ker.contains(&mat) && !mat.is_zero() {
                witness = Some(mat);
                break;
            }
        }
        if let Some(wm) = witness {
            return Ok(ObstructionReport {
                verdict: if rank_bound >= 1 { Verdict::NotObstructed } else { Verdict::Obstructed },
                confidence: Confidence::Exact,
                rank_bound,
                min_rank: Some(1),
                nilpotent_dim: 0,
                witness: Some(wm),
            });
        }
    }
    let split = regular_split(h, seed)?;
    if split.len() > 1 || split.residue_degrees.iter().any(|&x| x > 1) {
        return Err(Error::Hypothesis("h splits regularly, or M_h has a nontrivial residue field".into()));
    }
    let mh = compute_mf(h)?;
    let alg = StructAlgebra::from_matrix_space(&mh)?;
    let nil = nilradical(&alg);
    if nil.dim() + 1 != mh.dim() {
        return Err(Error::Hypothesis("M_h is not <I> plus its nilradical".into()));
    }
    let nils: Vec<Matrix<F>> = nil.basis().iter().map(|c| mh.element(c)).collect();
    let (min, witness, confidence) = match nils.len() {
        0 => (None, None, Confidence::Exact),
        1 => (Some(nils[0].rank()), Some(nils[0].clone()), Confidence::Exact),
        2 => match pencil_min_rank(&nils[0], &nils[1]) {
            Some((rk, w)) => (Some(rk), Some(w), Confidence::Exact),
            None => {
                let (rk, w) = sampled_min_rank(k, &nils);
                (Some(rk), Some(w), Confidence::Sampled)
            }
        },
        _ => {
            let (rk, w) = sampled_min_rank(k, &nils);
            (Some(rk), Some(w), Confidence::Sampled)
        }
    };
    let found_small = min.is_some_and(|x| x <= rank_bound);
    let verdict = if found_small { Verdict::NotObstructed } else { Verdict::Obstructed };
    // a witness of small rank is exact evidence even when the search was sampled
    let confidence = if found_small { Confidence::Exact } else { confidence };
    Ok(ObstructionReport { verdict, confidence, rank_bound, min_rank: min, nilpotent_dim: nils.len(), witness })
}

/// Minimum rank over a coefficient grid in {-2..2}^n and over products of basis elements.
fn sampled_min_rank<F: Field>(k: &F, basis: &[Matrix<F>]) -> (usize, Matrix<F>) {
    let n = basis.len();
    let mut best = (basis[0].rank(), basis[0].clone());
    let mut consider = |m: Matrix<F>| {
        if !m.is_zero() {
            let rk = m.rank();
            if rk < best.0 {
                best = (rk, m);
            }
        }
    };
    for a in basis {
        for b in basis {
            consider(a.mul(b));
        }
    }
    let levels: Vec<F::Elem> = (-2..=2).map(|v| k.from_i64(v)).collect();
    let total = 5usize.saturating_pow(n as u32).min(200_000);
    for code in 0..total {
        let mut c = code;
        let mut m = Matrix::zeros(k, basis[0].rows(), basis[0].cols());
        for b in basis {
            m = m.add(&b.scale(&levels[c % 5]));
            c /= 5;
        }
        consider(m);
    }
    best
}

// ---------------------------------------------------------------------------
// Automatic degenerate splitting

#[derive(Clone, Debug)]
pub enum QuestionStatus<K: Field> {
    /// The maximal regular splitting already reaches dim M_f - 1 splits.
    Regular(SplittingReport<K>),
    /// A degenerate splitting reaching the bound.
    Degenerate(DegenerateSplitting<K>),
    /// No family reaches the bound, with the reason.
    Negative(String),
    /// Neither a construction nor an obstruction applies.
    Unknown(String),
}

/// A generator of the nilradical of a local block when the block is K[A], and
/// some nonzero nilpotent of the block otherwise.
fn block_nilpotents<K: Field>(c: &Component<K>) -> Result<(Option<Matrix<K>>, Option<Matrix<K>>)> {
    if c.block.dim() <= 1 {
        return Ok((None, None));
    }
    let alg = StructAlgebra::from_matrix_space_with_identity(&c.block, &c.idempotent)?;
    let nil: Vec<Matrix<K>> = nilradical(&alg).basis().iter().map(|v| c.block.element(v)).collect();
    let gen = nil.iter().find(|a| a.nilpotency_index() == Some(c.block.dim())).cloned();
    let any = nil.iter().find(|a| !a.is_zero()).cloned();
    Ok((gen, any))
}

/// A degenerate splitting built from one nilpotent per local block of M_f,
/// preferring generators of monogenic blocks.
pub fn degenerate_split<K: Field>(f: &DPForm<K>, seed: u64) -> Result<DegenerateSplitting<K>> {
    if f.degree() < 3 {
        return Err(Error::DegreeTooLow);
    }
    let report = regular_split(f, seed)?;
    let mut data = Vec::new();
    for c in &report.components {
        let (gen, any) = block_nilpotents(c)?;
        if let Some(a) = gen.or(any) {
            data.push(NilpotentDatum { a, e: c.idempotent.clone(), start: 1 });
        }
    }
    if data.is_empty() {
        return Err(Error::NoNilpotent);
    }
    degenerate_split_multimatrix(f, &data, seed)
}

/// Tries to reach dim M_f - 1 splits of a family specializing to f.
pub fn reach_upper_bound<K: Field>(f: &DPForm<K>, seed: u64) -> Result<QuestionStatus<K>> {
    let d = f.degree();
    if d < 3 {
        return Err(Error::DegreeTooLow);
    }
    let r = f.nvars();
    let (bound, dummy) = splitting_upper_bound(f)?;
    if dummy {
        return Ok(QuestionStatus::Negative(format!(
            "ann(f)_1 != 0 gives dim M_f - 1 = {bound} > r - 1 = {}",
            r - 1
        )));
    }
    let report = regular_split(f, seed)?;
    if report.splits() == bound {
        return Ok(QuestionStatus::Regular(report));
    }
    if report.residue_degrees.iter().any(|&x| x > 1) {
        return Ok(QuestionStatus::Unknown("a block has a residue field larger than the base field".into()));
    }
    // monogenic local blocks feed the multi-matrix construction
    let mut data = Vec::new();
    let mut blocked = Vec::new();
    for (i, c) in report.components.iter().enumerate() {
        if c.block.dim() <= 1 {
            continue;
        }
        match block_nilpotents(c)?.0 {
            Some(a) => data.push(NilpotentDatum { a, e: c.idempotent.clone(), start: 1 }),
            None => blocked.push(i),
        }
    }
    if blocked.is_empty() {
        return Ok(QuestionStatus::Degenerate(degenerate_split_multimatrix(f, &data, seed)?));
    }
    if blocked.len() == 1 && report.components.iter().enumerate().all(|(i, c)| i == blocked[0] || c.support_dim == 1) {
        let c = &report.components[blocked[0]];
        let core = support_form(&c.form, &c.idempotent)?;
        if let Ok(obs) = nilpotent_rank_obstruction(&core, r, bound + 1, seed) {
            if obs.verdict == Verdict::Obstructed {
                return Ok(QuestionStatus::Negative(format!(
                    "every nonzero nilpotent of M_h has rank > {} (confidence {:?})",
                    obs.rank_bound, obs.confidence
                )));
            }
        }
    }
    Ok(QuestionStatus::Unknown("no construction or obstruction applies".into()))
}

/// The component g written in s = rank E variables.
pub fn support_form<F: Field>(g: &DPForm<F>, e: &Matrix<F>) -> Result<DPForm<F>> {
    let k = g.field();
    let r = g.nvars();
    let comp = Matrix::identity(k, r).sub(e);
    let s_mat = simultaneous_diagonalize(&if comp.is_zero() { vec![e.clone()] } else { vec![e.clone(), comp] })?;
    let p = s_mat.inverse().ok_or(Error::Singular)?;
    let moved = apply_base_change(&p, g)?;
    let s = e.rank();
    moved
        .restrict(&(0..s).collect::<Vec<_>>())
        .ok_or_else(|| Error::Other("component is not supported on the image of E".into()))
}

/// Keeps [`generator_counts`] reachable for callers that reason about bounds.
pub fn beta_top<F: Field>(f: &DPForm<F>) -> Result<usize> {
    Ok(generator_counts(f)?[&f.degree()])
}
