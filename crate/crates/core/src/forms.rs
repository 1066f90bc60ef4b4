//! Homogeneous elements of the divided power algebra and of its dual
//! polynomial ring, with the contraction action between them.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalars::{Field, Matrix, RatField};

pub type Exponent = Vec<u32>;

/// Marker for divided power forms in the variables x1..xr.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Divided;
/// Marker for operators in d1..dr acting by contraction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Operator;

/// A homogeneous polynomial with sparse nonzero terms.
#[derive(PartialEq)]
pub struct HomPoly<F: Field, K> {
    field: F,
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Exponent, F::Elem>,
    _kind: PhantomData<K>,
}

impl<F: Field, K> Clone for HomPoly<F, K> {
    fn clone(&self) -> Self {
        HomPoly {
            field: self.field.clone(),
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.clone(),
            _kind: PhantomData,
        }
    }
}

pub type DPForm<F> = HomPoly<F, Divided>;
pub type DiffOp<F> = HomPoly<F, Operator>;

/// All exponent vectors of total degree d in r variables, lexicographically descending.
pub fn monomials(r: usize, d: usize) -> Vec<Exponent> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; r];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        let r = cur.len();
        if i + 1 == r {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for a in (0..=left).rev() {
            cur[i] = a;
            rec(i + 1, left - a, cur, out);
        }
        cur[i] = 0;
    }
    if r == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(0, d as u32, &mut cur, &mut out);
    out
}

/// Number of monomials of degree d in r variables.
pub fn monomial_count(r: usize, d: usize) -> usize {
    if r == 0 {
        return usize::from(d == 0);
    }
    crate::scalars::binomial((r + d - 1) as i64, d as i64) as usize
}

pub fn monomial_index(r: usize, d: usize) -> std::collections::HashMap<Exponent, usize> {
    monomials(r, d).into_iter().enumerate().map(|(i, e)| (e, i)).collect()
}

fn int_binomial(a: u32, b: u32) -> i64 {
    crate::scalars::binomial(a as i64, b as i64)
}

impl<F: Field, K> HomPoly<F, K> {
    pub fn zero(field: &F, nvars: usize, degree: usize) -> Self {
        HomPoly {
            field: field.clone(),
            nvars,
            degree,
            terms: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    pub fn monomial(field: &F, exp: Exponent, c: F::Elem) -> Self {
        let degree = exp.iter().sum::<u32>() as usize;
        let mut out = Self::zero(field, exp.len(), degree);
        out.add_term(exp, c);
        out
    }

    /// Builds a form from (exponent, coefficient) pairs; all exponents must have degree d.
    pub fn from_terms(
        field: &F,
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Exponent, F::Elem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(field, nvars, degree);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Dimension(format!("exponent {e:?} has wrong length")));
            }
            if e.iter().sum::<u32>() as usize != degree {
                return Err(Error::Degree(format!("exponent {e:?} is not of degree {degree}")));
            }
            out.add_term(e, c);
        }
        Ok(out)
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_i64(field: &F, nvars: usize, terms: &[(i64, &[u32])]) -> Self {
        let degree = terms
            .first()
            .map_or(0, |(_, e)| e.iter().sum::<u32>() as usize);
        Self::from_terms(field, nvars, degree, terms.iter().map(|(c, e)| (e.to_vec(), field.from_i64(*c))))
            .expect("well-formed literal")
    }

    pub fn from_vector(field: &F, nvars: usize, degree: usize, v: &[F::Elem]) -> Self {
        let mons = monomials(nvars, degree);
        assert_eq!(mons.len(), v.len());
        let mut out = Self::zero(field, nvars, degree);
        for (e, c) in mons.into_iter().zip(v) {
            out.add_term(e, c.clone());
        }
        out
    }

    pub fn random<R: Rng + ?Sized>(field: &F, nvars: usize, degree: usize, rng: &mut R) -> Self {
        let mut out = Self::zero(field, nvars, degree);
        for e in monomials(nvars, degree) {
            out.add_term(e, field.random_elem(rng));
        }
        out
    }

    /// Random form whose terms are present with probability `density`.
    pub fn random_sparse<R: Rng + ?Sized>(
        field: &F,
        nvars: usize,
        degree: usize,
        density: f64,
        rng: &mut R,
    ) -> Self {
        let mut out = Self::zero(field, nvars, degree);
        for e in monomials(nvars, degree) {
            if rng.gen_bool(density) {
                out.add_term(e, field.random_elem(rng));
            }
        }
        out
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn degree(&self) -> usize {
        self.degree
    }
    pub fn terms(&self) -> &BTreeMap<Exponent, F::Elem> {
        &self.terms
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> F::Elem {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, e: Exponent, c: F::Elem) {
        let k = &self.field;
        if k.is_zero(&c) {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                let s = k.add(v, &c);
                if k.is_zero(&s) {
                    self.terms.remove(&e);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_compatible(&self, o: &Self) {
        assert_eq!(self.nvars, o.nvars, "variable counts differ");
        assert!(
            self.degree == o.degree || self.is_zero() || o.is_zero(),
            "degrees differ: {} vs {}",
            self.degree,
            o.degree
        );
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_compatible(o);
        let mut out = if self.is_zero() { o.clone() } else { self.clone() };
        if self.is_zero() {
            return out;
        }
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        let k = &self.field;
        HomPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), k.neg(c))).collect(),
            ..self.clone()
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = &self.field;
        if k.is_zero(c) {
            return Self::zero(k, self.nvars, self.degree);
        }
        HomPoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), k.mul(x, c))).collect(),
            ..self.clone()
        }
    }

    /// Coefficients in the lexicographically descending monomial basis.
    pub fn to_vector(&self) -> Vec<F::Elem> {
        monomials(self.nvars, self.degree)
            .iter()
            .map(|e| self.coeff(e))
            .collect()
    }

    /// Applies a coefficient map into another field.
    pub fn map_field<G: Field>(&self, g: &G, f: impl Fn(&F::Elem) -> G::Elem) -> HomPoly<G, K> {
        let mut out = HomPoly::zero(g, self.nvars, self.degree);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// The same polynomial in a larger ring, with old variable i sent to `positions[i]`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Self {
        assert_eq!(positions.len(), self.nvars);
        let mut out = Self::zero(&self.field, nvars, self.degree);
        for (e, c) in &self.terms {
            let mut e2 = vec![0; nvars];
            for (i, &p) in positions.iter().enumerate() {
                e2[p] += e[i];
            }
            out.add_term(e2, c.clone());
        }
        out
    }

    /// Restriction to a subset of variables, if no other variable occurs.
    pub fn restrict(&self, vars: &[usize]) -> Option<Self> {
        let mut out = Self::zero(&self.field, vars.len(), self.degree);
        for (e, c) in &self.terms {
            let inside: u32 = vars.iter().map(|&v| e[v]).sum();
            if inside as usize != self.degree {
                return None;
            }
            out.add_term(vars.iter().map(|&v| e[v]).collect(), c.clone());
        }
        Some(out)
    }

    /// Variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|e| e[i] > 0))
            .collect()
    }

    fn fmt_with(&self, letter: &str, divided: bool) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let k = &self.field;
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(j, &a)| match (a, divided) {
                    (1, _) => format!("{letter}{}", j + 1),
                    (_, true) => format!("{letter}{}^({a})", j + 1),
                    (_, false) => format!("{letter}{}^{a}", j + 1),
                })
                .collect();
            let cs = k.fmt_elem(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs.clone()),
            };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&mag);
            } else {
                if mag != "1" {
                    out.push_str(&mag);
                    out.push_str(" * ");
                }
                out.push_str(&mono.join(" "));
            }
        }
        out
    }
}

impl<F: Field> fmt::Debug for DPForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("x", true))
    }
}
impl<F: Field> fmt::Display for DPForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("x", true))
    }
}
impl<F: Field> fmt::Debug for DiffOp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("d", false))
    }
}
impl<F: Field> fmt::Display for DiffOp<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with("d", false))
    }
}

impl<F: Field> DPForm<F> {
    /// Divided power product: x^[a] x^[b] = C(a+b, a) x^[a+b] variable by variable.
    pub fn multiply(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let k = &self.field;
        let mut out = Self::zero(k, self.nvars, self.degree + o.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let mut coef = k.mul(c1, c2);
                for (a, b) in e1.iter().zip(e2) {
                    if *a > 0 && *b > 0 {
                        coef = k.mul(&coef, &k.from_i64(int_binomial(a + b, *a)));
                    }
                }
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, coef);
            }
        }
        out
    }

    /// x_i^[a] in r variables.
    pub fn var_power(field: &F, nvars: usize, i: usize, a: u32) -> Self {
        let mut e = vec![0; nvars];
        e[i] = a;
        Self::monomial(field, e, field.one())
    }

    /// First partials (d1 f, ..., dr f).
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars)
            .map(|i| contract(&DiffOp::var(&self.field, self.nvars, i), self))
            .collect()
    }

    /// Applies K -> K(t) coefficientwise.
    pub fn to_rational_functions(&self, rf: &RatField<F>) -> DPForm<RatField<F>> {
        self.map_field(rf, |c| rf.constant(c.clone()))
    }
}

impl<F: Field> DiffOp<F> {
    pub fn var(field: &F, nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(field, e, field.one())
    }

    /// Ordinary polynomial product in R.
    pub fn multiply(&self, o: &Self) -> Self {
        assert_eq!(self.nvars, o.nvars);
        let k = &self.field;
        let mut out = Self::zero(k, self.nvars, self.degree + o.degree);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, k.mul(c1, c2));
            }
        }
        out
    }

    pub fn one(field: &F, nvars: usize) -> Self {
        Self::monomial(field, vec![0; nvars], field.one())
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut acc = Self::one(&self.field, self.nvars);
        for _ in 0..n {
            acc = acc.multiply(self);
        }
        acc
    }

    /// The linear operator sum_j c_j d_j.
    pub fn linear(field: &F, coeffs: &[F::Elem]) -> Self {
        let mut out = Self::zero(field, coeffs.len(), 1);
        for (j, c) in coeffs.iter().enumerate() {
            let mut e = vec![0; coeffs.len()];
            e[j] = 1;
            out.add_term(e, c.clone());
        }
        out
    }
}

/// Contraction D(f); an operator of larger degree gives the zero form.
pub fn contract<F: Field>(op: &DiffOp<F>, f: &DPForm<F>) -> DPForm<F> {
    assert_eq!(op.nvars, f.nvars, "variable counts differ");
    let k = &f.field;
    if op.degree > f.degree {
        return DPForm::zero(k, f.nvars, 0);
    }
    let mut out = DPForm::zero(k, f.nvars, f.degree - op.degree);
    for (b, c) in &op.terms {
        for (a, x) in &f.terms {
            if a.iter().zip(b).all(|(ai, bi)| ai >= bi) {
                let e: Exponent = a.iter().zip(b).map(|(ai, bi)| ai - bi).collect();
                out.add_term(e, k.mul(c, x));
            }
        }
    }
    out
}

/// Pairing of an operator and a form of the same degree.
pub fn pair<F: Field>(op: &DiffOp<F>, f: &DPForm<F>) -> F::Elem {
    assert_eq!(op.degree, f.degree);
    let k = &f.field;
    let mut acc = k.zero();
    for (b, c) in &op.terms {
        if let Some(x) = f.terms.get(b) {
            acc = k.add(&acc, &k.mul(c, x));
        }
    }
    acc
}

/// l^[d] for l = sum c_i x_i: sum over |alpha| = d of prod c_i^alpha_i x^[alpha].
pub fn power_of_linear_form<F: Field>(field: &F, coeffs: &[F::Elem], d: usize) -> DPForm<F> {
    let r = coeffs.len();
    let mut out = DPForm::zero(field, r, d);
    for e in monomials(r, d) {
        let mut c = field.one();
        for (ci, &a) in coeffs.iter().zip(&e) {
            if a > 0 {
                c = field.mul(&c, &field.pow(ci, a as u64));
            }
        }
        out.add_term(e, c);
    }
    out
}

/// phi_P on forms: the ring map induced by x -> P^T x.
pub fn apply_base_change<F: Field>(p: &Matrix<F>, f: &DPForm<F>) -> Result<DPForm<F>> {
    let k = f.field();
    let r = f.nvars();
    if p.rows() != r || p.cols() != r {
        return Err(Error::Dimension("base change size".into()));
    }
    if k.is_zero(&p.det()) {
        return Err(Error::Singular);
    }
    Ok(apply_linear_substitution(p, f))
}

/// x_i -> sum_j P_ji x_j without the invertibility check.
pub(crate) fn apply_linear_substitution<F: Field>(p: &Matrix<F>, f: &DPForm<F>) -> DPForm<F> {
    let k = f.field();
    let r = f.nvars();
    let cols: Vec<Vec<F::Elem>> = (0..r).map(|i| p.col(i)).collect();
    let mut cache: BTreeMap<(usize, u32), DPForm<F>> = BTreeMap::new();
    let mut out = DPForm::zero(k, r, f.degree());
    for (e, c) in f.terms() {
        let mut acc = DPForm::monomial(k, vec![0; r], c.clone());
        for (i, &a) in e.iter().enumerate() {
            if a == 0 {
                continue;
            }
            let piece = cache
                .entry((i, a))
                .or_insert_with(|| power_of_linear_form(k, &cols[i], a as usize))
                .clone();
            acc = acc.multiply(&piece);
        }
        out = out.add(&acc);
    }
    out
}

/// phi_P on operators: d -> P^{-1} d.
pub fn apply_base_change_op<F: Field>(p: &Matrix<F>, op: &DiffOp<F>) -> Result<DiffOp<F>> {
    let k = op.field();
    let r = op.nvars();
    if p.rows() != r || p.cols() != r {
        return Err(Error::Dimension("base change size".into()));
    }
    let q = p.inverse().ok_or(Error::Singular)?;
    let images: Vec<DiffOp<F>> = (0..r).map(|i| DiffOp::linear(k, q.row(i))).collect();
    let mut out = DiffOp::zero(k, r, op.degree());
    for (e, c) in op.terms() {
        let mut acc = DiffOp::monomial(k, vec![0; r], c.clone());
        for (i, &a) in e.iter().enumerate() {
            if a > 0 {
                acc = acc.multiply(&images[i].pow(a as usize));
            }
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Evaluates the parameters of a form over K(t) at a point.
pub fn specialize<K: Field>(rf: &RatField<K>, f: &DPForm<RatField<K>>, point: &[K::Elem]) -> Option<DPForm<K>> {
    let mut out = DPForm::zero(rf.base(), f.nvars(), f.degree());
    for (e, c) in f.terms() {
        out.add_term(e.clone(), rf.eval(c, point)?);
    }
    Some(out)
}

struct Lexer<'a> {
    chars: Vec<(usize, usize, char)>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        let mut chars = Vec::new();
        let (mut line, mut col) = (1, 1);
        for ch in src.chars() {
            chars.push((line, col, ch));
            if ch == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        Lexer { chars, pos: 0, _src: src }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].2.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.2)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, column) = match self.chars.get(self.pos) {
            Some(&(l, c, _)) => (l, c),
            None => self
                .chars
                .last()
                .map_or((1, 1), |&(l, c, _)| (l, c + 1)),
        };
        Error::Parse { line, column, msg: msg.into() }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(&(_, _, ch)) = self.chars.get(self.pos) {
            if pred(ch) {
                s.push(ch);
                self.pos += 1;
            } else {
                break;
            }
        }
        s
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let s = self.take_while(|c| c.is_ascii_digit());
        s.parse().map_err(|_| self.err("expected a non-negative integer"))
    }
}

/// Parses `c * x1^(a) x2^(b) + ...` (letter `x`, divided powers in parentheses)
/// or `c * d1^a d2 ...` (letter `d`, ordinary powers).
fn parse_terms<F: Field>(
    field: &F,
    nvars: Option<usize>,
    src: &str,
    letter: char,
    divided: bool,
) -> Result<(usize, usize, Vec<(Exponent, F::Elem)>)> {
    let mut lx = Lexer::new(src);
    let mut raw: Vec<(BTreeMap<usize, u32>, F::Elem, (usize, usize))> = Vec::new();
    let mut first = true;
    loop {
        let Some(ch) = lx.peek() else {
            break;
        };
        let start = lx.chars.get(lx.pos).map_or((1, 1), |&(l, c, _)| (l, c));
        let mut sign = field.one();
        if ch == '+' || ch == '-' {
            if ch == '-' {
                sign = field.neg(&sign);
            }
            lx.pos += 1;
        } else if !first {
            return Err(lx.err("expected '+' or '-'"));
        }
        first = false;
        let mut coef = sign;
        let mut exps: BTreeMap<usize, u32> = BTreeMap::new();
        let mut seen_any = false;
        match lx.peek() {
            Some(c) if c.is_ascii_digit() || c == '(' => {
                lx.skip_ws();
                let s = if c == '(' {
                    lx.pos += 1;
                    let s = lx.take_while(|c| c != ')');
                    if lx.peek() != Some(')') {
                        return Err(lx.err("unclosed parenthesis"));
                    }
                    lx.pos += 1;
                    s
                } else {
                    lx.take_while(|c| c.is_ascii_digit() || c == '/')
                };
                let v = field.parse_elem(&s).map_err(|e| lx.err(e.to_string()))?;
                coef = field.mul(&coef, &v);
                seen_any = true;
                if lx.peek() == Some('*') {
                    lx.pos += 1;
                }
            }
            _ => {}
        }
        while let Some(c) = lx.peek() {
            if c != letter {
                break;
            }
            lx.pos += 1;
            let idx = lx.number()?;
            if idx == 0 {
                return Err(lx.err("variables are numbered from 1"));
            }
            let mut a = 1;
            if lx.peek() == Some('^') {
                lx.pos += 1;
                if divided {
                    if lx.peek() != Some('(') {
                        return Err(lx.err("divided powers are written ^(k)"));
                    }
                    lx.pos += 1;
                    a = lx.number()?;
                    if lx.peek() != Some(')') {
                        return Err(lx.err("expected ')'"));
                    }
                    lx.pos += 1;
                } else {
                    a = lx.number()?;
                }
            }
            *exps.entry(idx as usize - 1).or_insert(0) += a;
            seen_any = true;
            if lx.peek() == Some('*') {
                lx.pos += 1;
            }
        }
        if !seen_any {
            return Err(lx.err(format!("expected a coefficient or a variable {letter}<i>")));
        }
        raw.push((exps, coef, start));
    }
    let max_var = raw
        .iter()
        .flat_map(|(e, _, _)| e.keys().copied())
        .max()
        .map_or(0, |m| m + 1);
    let r = match nvars {
        Some(r) => {
            if max_var > r {
                return Err(Error::Parse {
                    line: 1,
                    column: 1,
                    msg: format!("variable index {max_var} exceeds r = {r}"),
                });
            }
            r
        }
        None => max_var.max(1),
    };
    let mut degree = None;
    let mut out = Vec::new();
    for (e, c, (line, column)) in raw {
        let d: u32 = e.values().sum();
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => {
                return Err(Error::Parse {
                    line,
                    column,
                    msg: format!("term of degree {d} in a form of degree {d0}"),
                })
            }
            _ => {}
        }
        let mut v = vec![0; r];
        for (i, a) in e {
            v[i] = a;
        }
        out.push((v, c));
    }
    Ok((r, degree.unwrap_or(0) as usize, out))
}

/// Parses the text syntax for forms.
pub fn parse_form<F: Field>(field: &F, nvars: Option<usize>, src: &str) -> Result<DPForm<F>> {
    let (r, d, terms) = parse_terms(field, nvars, src, 'x', true)?;
    DPForm::from_terms(field, r, d, terms)
}

/// Parses the text syntax for operators (`d1^2 d2 - 3 * d3^3`).
pub fn parse_op<F: Field>(field: &F, nvars: Option<usize>, src: &str) -> Result<DiffOp<F>> {
    let (r, d, terms) = parse_terms(field, nvars, src, 'd', false)?;
    DiffOp::from_terms(field, r, d, terms)
}
