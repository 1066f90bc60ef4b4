//! Sparse multivariate polynomials over an exact field and the rational
//! function field K(t_1, ..., t_n) built on them.

use std::collections::BTreeMap;

use rand::Rng;

use super::field::Field;
use crate::error::{Error, Result};

/// Sparse polynomial; exponent vectors compare lexicographically with t1 > t2 > ...
#[derive(Clone, Debug, PartialEq)]
pub struct MPoly<K: Field> {
    terms: BTreeMap<Vec<u32>, K::Elem>,
}

impl<K: Field> MPoly<K> {
    pub fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    pub fn constant(k: &K, n: usize, c: K::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !k.is_zero(&c) {
            terms.insert(vec![0; n], c);
        }
        MPoly { terms }
    }

    pub fn var(k: &K, n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Self::monomial(k, e, k.one())
    }

    pub fn monomial(k: &K, exp: Vec<u32>, c: K::Elem) -> Self {
        let mut terms = BTreeMap::new();
        if !k.is_zero(&c) {
            terms.insert(exp, c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, K::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    /// Constant term value (or zero).
    pub fn constant_value(&self, k: &K) -> K::Elem {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| k.zero())
    }

    pub fn leading(&self) -> Option<(&Vec<u32>, &K::Elem)> {
        self.terms.iter().next_back()
    }

    fn add_term(&mut self, k: &K, e: Vec<u32>, c: K::Elem) {
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

    pub fn add(&self, k: &K, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(k, e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, k: &K, o: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(k, e.clone(), k.neg(c));
        }
        out
    }

    pub fn neg(&self, k: &K) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), k.neg(c))).collect(),
        }
    }

    pub fn scale(&self, k: &K, c: &K::Elem) -> Self {
        if k.is_zero(c) {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), k.mul(x, c))).collect(),
        }
    }

    pub fn mul(&self, k: &K, o: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(k, e, k.mul(c1, c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, k: &K, exp: &[u32], c: &K::Elem) -> Self {
        let mut out = Self::zero();
        for (e, x) in &self.terms {
            let e2: Vec<u32> = e.iter().zip(exp).map(|(a, b)| a + b).collect();
            out.add_term(k, e2, k.mul(x, c));
        }
        out
    }

    pub fn pow(&self, k: &K, n: usize, nvars: usize) -> Self {
        let mut acc = Self::constant(k, nvars, k.one());
        for _ in 0..n {
            acc = acc.mul(k, self);
        }
        acc
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    fn max_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|e| e.iter().rposition(|&x| x > 0))
            .max()
    }

    /// Exact quotient self / d, or None if d does not divide self.
    pub fn div_exact(&self, k: &K, d: &Self) -> Option<Self> {
        let (de, dc) = d.leading()?;
        let dinv = k.inv(dc).unwrap();
        let mut r = self.clone();
        let mut q = Self::zero();
        while let Some((re, rc)) = r.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let m: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = k.mul(rc, &dinv);
            r = r.sub(k, &d.mul_monomial(k, &m, &c));
            q.add_term(k, m, c);
        }
        Some(q)
    }

    /// Coefficients as a polynomial in variable v.
    fn univariate(&self, v: usize) -> Vec<Self> {
        let deg = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(); deg + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let d = e2[v] as usize;
            e2[v] = 0;
            out[d].terms.insert(e2, c.clone());
        }
        out
    }

    fn from_univariate(k: &K, parts: &[Self], v: usize) -> Self {
        let mut out = Self::zero();
        for (d, p) in parts.iter().enumerate() {
            for (e, c) in &p.terms {
                let mut e2 = e.clone();
                e2[v] += d as u32;
                out.add_term(k, e2, c.clone());
            }
        }
        out
    }

    /// Same polynomial scaled so its leading coefficient is 1.
    pub fn monic(&self, k: &K) -> Self {
        match self.leading() {
            Some((_, c)) => {
                let inv = k.inv(c).unwrap();
                self.scale(k, &inv)
            }
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, k: &K, o: &Self, nvars: usize) -> Self {
        if self.is_zero() {
            return o.monic(k);
        }
        if o.is_zero() {
            return self.monic(k);
        }
        let v = match (self.max_var(), o.max_var()) {
            (None, _) | (_, None) => return Self::constant(k, nvars, k.one()),
            (Some(a), Some(b)) => a.max(b),
        };
        let ua = self.univariate(v);
        let ub = o.univariate(v);
        let ca = content(k, &ua, nvars);
        let cb = content(k, &ub, nvars);
        let c = ca.gcd(k, &cb, nvars);
        let mut pa = primitive(k, &ua, &ca);
        let mut pb = primitive(k, &ub, &cb);
        if pa.len() < pb.len() {
            std::mem::swap(&mut pa, &mut pb);
        }
        let g = loop {
            if pb.len() == 1 {
                break vec![Self::constant(k, nvars, k.one())];
            }
            let r = prem(k, &pa, &pb);
            if r.iter().all(|x| x.is_zero()) {
                break pb;
            }
            let r = trim_uni(r);
            if r.len() == 1 {
                break vec![Self::constant(k, nvars, k.one())];
            }
            let cr = content(k, &r, nvars);
            pa = pb;
            pb = primitive(k, &r, &cr);
        };
        Self::from_univariate(k, &g, v).mul(k, &c).monic(k)
    }

    pub fn eval(&self, k: &K, point: &[K::Elem]) -> K::Elem {
        let mut acc = k.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &d) in point.iter().zip(e) {
                if d > 0 {
                    t = k.mul(&t, &k.pow(x, d as u64));
                }
            }
            acc = k.add(&acc, &t);
        }
        acc
    }

    pub fn format(&self, k: &K, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(j, &d)| {
                    if d == 1 {
                        names[j].clone()
                    } else {
                        format!("{}^{}", names[j], d)
                    }
                })
                .collect();
            let cs = k.fmt_elem(c);
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(m) => (true, m.to_string()),
                None => (false, cs),
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
                    out.push('*');
                }
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Parses sums of terms like `3*t1^2*t2 - 1/2*t3 + 5`.
    pub fn parse(k: &K, s: &str, names: &[String]) -> Result<Self> {
        let n = names.len();
        let mut out = Self::zero();
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(out);
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (k.from_i64(-1), b.to_string()),
                None => (k.one(), t.trim_start_matches('+').to_string()),
            };
            let mut coef = sign;
            let mut exp = vec![0u32; n];
            for factor in body.split('*') {
                let (base, power) = match factor.split_once('^') {
                    Some((b, p)) => (
                        b,
                        p.parse::<u32>()
                            .map_err(|_| Error::Other(format!("bad exponent in '{factor}'")))?,
                    ),
                    None => (factor, 1),
                };
                if let Some(j) = names.iter().position(|x| x == base) {
                    exp[j] += power;
                } else {
                    let c = k.parse_elem(base)?;
                    coef = k.mul(&coef, &k.pow(&c, power as u64));
                }
            }
            out.add_term(k, exp, coef);
        }
        Ok(out)
    }
}

fn trim_uni<K: Field>(mut a: Vec<MPoly<K>>) -> Vec<MPoly<K>> {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
    a
}

fn content<K: Field>(k: &K, a: &[MPoly<K>], nvars: usize) -> MPoly<K> {
    let mut g = MPoly::zero();
    for c in a {
        if c.is_zero() {
            continue;
        }
        g = g.gcd(k, c, nvars);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive<K: Field>(k: &K, a: &[MPoly<K>], c: &MPoly<K>) -> Vec<MPoly<K>> {
    a.iter().map(|x| x.div_exact(k, c).expect("content divides")).collect()
}

/// Pseudo-remainder of a by b as polynomials in the main variable.
fn prem<K: Field>(k: &K, a: &[MPoly<K>], b: &[MPoly<K>]) -> Vec<MPoly<K>> {
    let n = b.len() - 1;
    let lb = &b[n];
    let mut r = a.to_vec();
    while r.len() > n && !(r.len() == 1 && r[0].is_zero()) {
        let m = r.len() - 1;
        let lr = r[m].clone();
        if lr.is_zero() {
            r.pop();
            continue;
        }
        for x in r.iter_mut() {
            *x = x.mul(k, lb);
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = m - n + j;
            r[idx] = r[idx].sub(k, &bj.mul(k, &lr));
        }
        r.pop();
    }
    if r.is_empty() {
        r.push(MPoly::zero());
    }
    r
}

/// Element of K(t_1, ..., t_n) in lowest terms with monic denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc<K: Field> {
    pub num: MPoly<K>,
    pub den: MPoly<K>,
}

/// The field of rational functions in `nvars` parameters over `base`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatField<K: Field> {
    base: K,
    nvars: usize,
    names: Vec<String>,
}

impl<K: Field> RatField<K> {
    pub fn new(base: &K, nvars: usize) -> Self {
        RatField {
            base: base.clone(),
            nvars,
            names: (1..=nvars).map(|i| format!("t{i}")).collect(),
        }
    }

    pub fn base(&self) -> &K {
        &self.base
    }
    pub fn nvars(&self) -> usize {
        self.nvars
    }
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn constant(&self, c: K::Elem) -> RatFunc<K> {
        RatFunc {
            num: MPoly::constant(&self.base, self.nvars, c),
            den: self.one_poly(),
        }
    }

    pub fn var(&self, i: usize) -> RatFunc<K> {
        self.from_poly(MPoly::var(&self.base, self.nvars, i))
    }

    pub fn from_poly(&self, p: MPoly<K>) -> RatFunc<K> {
        RatFunc { num: p, den: self.one_poly() }
    }

    fn one_poly(&self) -> MPoly<K> {
        MPoly::constant(&self.base, self.nvars, self.base.one())
    }

    pub fn make(&self, num: MPoly<K>, den: MPoly<K>) -> RatFunc<K> {
        let k = &self.base;
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return RatFunc { num, den: self.one_poly() };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = num.gcd(k, &den, self.nvars);
            if g.is_constant() {
                (num, den)
            } else {
                (num.div_exact(k, &g).unwrap(), den.div_exact(k, &g).unwrap())
            }
        };
        let lc = den.leading().unwrap().1.clone();
        let inv = k.inv(&lc).unwrap();
        RatFunc {
            num: num.scale(k, &inv),
            den: den.scale(k, &inv),
        }
    }

    pub fn is_polynomial(&self, a: &RatFunc<K>) -> bool {
        a.den.is_constant()
    }

    /// Evaluates at a point of K^n; None when the denominator vanishes.
    pub fn eval(&self, a: &RatFunc<K>, point: &[K::Elem]) -> Option<K::Elem> {
        let k = &self.base;
        let d = a.den.eval(k, point);
        k.div(&a.num.eval(k, point), &d)
    }

    /// Substitutes t_v -> t_v * s in a.
    pub fn scale_var(&self, a: &RatFunc<K>, v: usize, s: &RatFunc<K>) -> RatFunc<K> {
        let sub = |p: &MPoly<K>| -> RatFunc<K> {
            let mut acc = self.zero();
            for (e, c) in p.terms() {
                let term = self.from_poly(MPoly::monomial(&self.base, e.clone(), c.clone()));
                let m = self.mul(&term, &self.pow(s, e[v] as u64));
                acc = self.add(&acc, &m);
            }
            acc
        };
        let n = sub(&a.num);
        let d = sub(&a.den);
        self.div(&n, &d).expect("substitution kept denominator nonzero")
    }

    /// Splits a polynomial-in-t_v numerator by degree in t_v; requires the
    /// denominator to be free of t_v.
    pub fn split_by_degree(&self, a: &RatFunc<K>, v: usize) -> BTreeMap<u32, RatFunc<K>> {
        assert_eq!(a.den.degree_in(v), 0, "denominator depends on the split variable");
        let mut parts: BTreeMap<u32, MPoly<K>> = BTreeMap::new();
        for (e, c) in a.num.terms() {
            let mut e2 = e.clone();
            let d = e2[v];
            e2[v] = 0;
            parts
                .entry(d)
                .or_insert_with(MPoly::zero)
                .add_term(&self.base, e2, c.clone());
        }
        parts
            .into_iter()
            .map(|(d, p)| (d, self.make(p, a.den.clone())))
            .collect()
    }
}

impl<K: Field> Field for RatField<K> {
    type Elem = RatFunc<K>;

    fn zero(&self) -> RatFunc<K> {
        RatFunc {
            num: MPoly::zero(),
            den: self.one_poly(),
        }
    }
    fn one(&self) -> RatFunc<K> {
        self.constant(self.base.one())
    }
    fn from_i64(&self, n: i64) -> RatFunc<K> {
        self.constant(self.base.from_i64(n))
    }
    fn add(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        let k = &self.base;
        if a.den == b.den {
            let num = a.num.add(k, &b.num);
            if a.den.is_constant() {
                return RatFunc { num, den: a.den.clone() };
            }
            return self.make(num, a.den.clone());
        }
        let num = a.num.mul(k, &b.den).add(k, &b.num.mul(k, &a.den));
        self.make(num, a.den.mul(k, &b.den))
    }
    fn sub(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &RatFunc<K>, b: &RatFunc<K>) -> RatFunc<K> {
        let k = &self.base;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if a.den.is_constant() && b.den.is_constant() {
            return RatFunc {
                num: a.num.mul(k, &b.num),
                den: self.one_poly(),
            };
        }
        self.make(a.num.mul(k, &b.num), a.den.mul(k, &b.den))
    }
    fn neg(&self, a: &RatFunc<K>) -> RatFunc<K> {
        RatFunc {
            num: a.num.neg(&self.base),
            den: a.den.clone(),
        }
    }
    fn inv(&self, a: &RatFunc<K>) -> Option<RatFunc<K>> {
        if a.num.is_zero() {
            return None;
        }
        Some(self.make(a.den.clone(), a.num.clone()))
    }
    fn is_zero(&self, a: &RatFunc<K>) -> bool {
        a.num.is_zero()
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> RatFunc<K> {
        self.constant(self.base.random_elem(rng))
    }
    fn fmt_elem(&self, a: &RatFunc<K>) -> String {
        let k = &self.base;
        if a.den.is_constant() {
            let s = a.num.format(k, &self.names);
            if a.num.terms().len() > 1 {
                format!("({s})")
            } else {
                s
            }
        } else {
            format!(
                "({})/({})",
                a.num.format(k, &self.names),
                a.den.format(k, &self.names)
            )
        }
    }
    fn parse_elem(&self, s: &str) -> Result<RatFunc<K>> {
        let s = s.trim();
        let strip = |x: &str| -> String {
            let x = x.trim();
            if x.starts_with('(') && x.ends_with(')') {
                x[1..x.len() - 1].to_string()
            } else {
                x.to_string()
            }
        };
        if let Some(idx) = s.find(")/(") {
            let num = MPoly::parse(&self.base, &strip(&s[..=idx]), &self.names)?;
            let den = MPoly::parse(&self.base, &strip(&s[idx + 2..]), &self.names)?;
            if den.is_zero() {
                return Err(Error::Other("zero denominator".into()));
            }
            return Ok(self.make(num, den));
        }
        Ok(self.from_poly(MPoly::parse(&self.base, &strip(s), &self.names)?))
    }
    fn name(&self) -> String {
        format!("{}({})", self.base.name(), self.names.join(","))
    }
}
