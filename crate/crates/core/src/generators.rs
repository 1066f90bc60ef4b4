//! Builders for structured example families: the terms of
//! (x_1 + t x_2 + ... + t^(r-1) x_r)^[d], Jordan extremal forms and forms
//! whose M_f has no nilpotents of small rank.

use crate::error::{Error, Result};
use crate::forms::{monomials, DPForm};
use crate::matrix_algebra::integrate;
use crate::scalars::{Field, Matrix, RowSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct TermFamily<F: Field> {
    pub r: usize,
    pub d: usize,
    /// forms[k] = h_{dk}, k = 0..=(r-1)d
    pub forms: Vec<DPForm<F>>,
}

impl<F: Field> TermFamily<F> {
    pub fn term(&self, k: i64) -> DPForm<F> {
        if k < 0 || k as usize >= self.forms.len() {
            let field = self.forms[0].field();
            return DPForm::zero(field, self.r, self.d);
        }
        self.forms[k as usize].clone()
    }
}

fn tau(alpha: &[u32]) -> usize {
    alpha.iter().enumerate().map(|(i, &a)| i * a as usize).sum()
}

/// h_{dk} = sum of x^[alpha] over |alpha| = d with sum (i-1) alpha_i = k.
pub fn hdk_terms<F: Field>(field: &F, r: usize, d: usize) -> TermFamily<F> {
    assert!(r >= 1);
    let m = (r - 1) * d;
    let mut forms = vec![DPForm::zero(field, r, d); m + 1];
    for alpha in monomials(r, d) {
        let k = tau(&alpha);
        forms[k].add_term(alpha, field.one());
    }
    TermFamily { r, d, forms }
}

/// h_{d,r-1}, whose M_f is K[A] for the nilpotent Jordan block A.
pub fn jordan_extremal_form<F: Field>(field: &F, r: usize, d: usize) -> Result<DPForm<F>> {
    if d < 3 {
        return Err(Error::DegreeTooLow);
    }
    if r < 2 {
        return Err(Error::Dimension("need r >= 2".into()));
    }
    Ok(hdk_terms(field, r, d).forms[r - 1].clone())
}

/// The nilpotent Jordan block with ones on the superdiagonal.
pub fn jordan_block<F: Field>(field: &F, r: usize) -> Matrix<F> {
    let mut a = Matrix::zeros(field, r, r);
    for i in 0..r.saturating_sub(1) {
        a.set(i, i + 1, field.one());
    }
    a
}

/// f_1..f_n are the coefficients of t^(offset+1)..t^(offset+n) in
/// c_t (x_r + t x_{r-1} + ... + t^(r-1) x_1)^[d].
#[derive(Clone, Debug, PartialEq)]
pub struct ConsecutiveWitness<F: Field> {
    pub offset: i64,
    pub c: Vec<F::Elem>,
}

/// The terms of (x_r + t x_{r-1} + ... + t^(r-1) x_1)^[d], i.e. h_{d,(r-1)d-k}.
fn reversed_terms<F: Field>(field: &F, r: usize, d: usize) -> Vec<DPForm<F>> {
    let mut v = hdk_terms(field, r, d).forms;
    v.reverse();
    v
}

/// Decides whether d_i f_{j+1} = d_{i+1} f_j for all i < r, j < n, and then
/// finds a window of consecutive terms of c_t (x_r + ... + t^(r-1) x_1)^[d].
pub fn consecutive_terms_check<F: Field>(forms: &[DPForm<F>]) -> Result<Option<ConsecutiveWitness<F>>> {
    if forms.len() < 2 {
        return Err(Error::Hypothesis("need at least two forms".into()));
    }
    let field = forms[0].field();
    let r = forms[0].nvars();
    let d = forms.iter().map(|f| f.degree()).max().unwrap_or(0);
    if forms.iter().any(|f| f.nvars() != r || (!f.is_zero() && f.degree() != d)) {
        return Err(Error::Degree("forms must have equal degree and variable count".into()));
    }
    let same = |a: &DPForm<F>, b: &DPForm<F>| a == b || (a.is_zero() && b.is_zero());
    for j in 0..forms.len() - 1 {
        let g1 = forms[j + 1].gradient();
        let g0 = forms[j].gradient();
        for i in 0..r.saturating_sub(1) {
            if !same(&g1[i], &g0[i + 1]) {
                return Ok(None);
            }
        }
    }
    // f_j = sum_k c_{m - 1 + j - k} g_k with unknowns c_0..c_{m+n-1}
    let n = forms.len();
    let g = reversed_terms(field, r, d);
    let m = g.len() - 1;
    let unknowns = m + n;
    let mono = monomials(r, d);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for (j, f) in forms.iter().enumerate() {
        for alpha in &mono {
            let mut row = vec![field.zero(); unknowns];
            for (k, gk) in g.iter().enumerate() {
                let l = m + j - k;
                row[l] = gk.coeff(alpha);
            }
            rows.push(row);
            rhs.push(if f.is_zero() { field.zero() } else { f.coeff(alpha) });
        }
    }
    let sol = Matrix::from_rows(field, rows).solve(&rhs);
    let Some(mut c) = sol else {
        return Ok(None);
    };
    // f_{j+1} is the coefficient of t^(m + j) in c_t G(t)
    let mut offset = m as i64 - 1;
    while c.len() > 1 && field.is_zero(&c[0]) {
        c.remove(0);
        offset -= 1;
    }
    while c.len() > 1 && field.is_zero(c.last().expect("nonempty")) {
        c.pop();
    }
    Ok(Some(ConsecutiveWitness { offset, c }))
}

/// Expands the window: the coefficient of t^(offset + j) for j = 1..=n.
pub fn window_terms<F: Field>(field: &F, r: usize, d: usize, w: &ConsecutiveWitness<F>, n: usize) -> Vec<DPForm<F>> {
    let g = reversed_terms(field, r, d);
    (1..=n as i64)
        .map(|j| {
            let target = w.offset + j;
            let mut out = DPForm::zero(field, r, d);
            for (i, ci) in w.c.iter().enumerate() {
                let k = target - i as i64;
                if k >= 0 && (k as usize) < g.len() {
                    out = out.add(&g[k as usize].scale(ci));
                }
            }
            out
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct Counterexample<F: Field> {
    pub s: usize,
    pub q: usize,
    pub f: DPForm<F>,
    /// h_1..h_{r-1} in s variables
    pub h: Vec<DPForm<F>>,
    /// g_1..g_{s+q} in s variables
    pub g: Vec<DPForm<F>>,
    /// B_0..B_q; M_f is expected to be spanned by I and these.
    pub b: Vec<Matrix<F>>,
}

impl<F: Field> Counterexample<F> {
    pub fn r(&self) -> usize {
        2 * self.s + self.q
    }
    pub fn expected_mf(&self) -> Vec<Matrix<F>> {
        let k = self.f.field();
        std::iter::once(Matrix::identity(k, self.r())).chain(self.b.iter().cloned()).collect()
    }
}

/// f = sum_i x_{s+i} g_i in r = 2s + q variables, where h_1..h_{r-1} are the
/// coefficients of t^(offset+1).. in c_t (x_s + t x_{s-1} + ... + t^(s-1) x_1)^[d-2]
/// and d_i g_k = h_{k-1+i}.
pub fn build_counterexample<F: Field>(
    field: &F,
    s: usize,
    q: usize,
    d: usize,
    window: &ConsecutiveWitness<F>,
) -> Result<Counterexample<F>> {
    if s < 2 || q < 1 || d < 3 {
        return Err(Error::Hypothesis("need s >= 2, q >= 1, d >= 3".into()));
    }
    if q + 2 > (d - 2) * (s - 1) {
        return Err(Error::Hypothesis(format!("q + 2 <= (d - 2)(s - 1) fails for s={s}, q={q}, d={d}")));
    }
    let r = 2 * s + q;
    let h = window_terms(field, s, d - 2, window, r - 1);
    if h[..s - 2].iter().any(|x| !x.is_zero()) {
        return Err(Error::Hypothesis("h_i must vanish for i < s - 1".into()));
    }
    let span = RowSpace::from_vectors(
        field,
        crate::forms::monomial_count(s, d - 2),
        h[s - 2..s + q + 1].iter().map(|x| x.to_vector()).collect(),
    );
    if span.dim() != q + 3 {
        return Err(Error::Hypothesis("h_{s-1}..h_{s+q+1} are not linearly independent".into()));
    }
    let mut g = Vec::new();
    for k in 0..s + q {
        let comps: Vec<DPForm<F>> = (0..s).map(|i| h[k + i].clone()).collect();
        let gk = integrate(field, s, d - 1, &comps)
            .ok_or_else(|| Error::Other("window terms do not integrate".into()))?;
        g.push(gk);
    }
    let positions: Vec<usize> = (0..s).collect();
    let mut f = DPForm::zero(field, r, d);
    for (i, gi) in g.iter().enumerate() {
        let lifted = gi.embed(r, &positions);
        f = f.add(&lifted.multiply(&DPForm::var_power(field, r, s + i, 1)));
    }
    let b = (0..=q)
        .map(|k| {
            let mut m = Matrix::zeros(field, r, r);
            for i in 0..s {
                m.set(i, s + k + i, field.one());
            }
            m
        })
        .collect();
    Ok(Counterexample { s, q, f, h, g, b })
}

/// The window with c_t = 1 placing h_{s-1} at the first term.
pub fn default_window<F: Field>(field: &F, s: usize) -> ConsecutiveWitness<F> {
    ConsecutiveWitness { offset: 1 - s as i64, c: vec![field.one()] }
}
