//! Graded Betti numbers, Hilbert functions and tangent space dimensions of
//! split forms, computed from the data of their summands.

use std::collections::BTreeMap;

use crate::apolarity::{ann_space, generator_counts, product_space};
use crate::error::{Error, Result};
use crate::forms::{monomial_count, DPForm};
use crate::scalars::{binomial, Field, RowSpace};
use crate::splitting::{support_form, SplittingReport};

fn c(a: i64, b: i64) -> i64 {
    binomial(a, b)
}

/// nu_k = C(s+t, k+1) - C(s, k+1) - C(t, k+1), the Eagon-Northcott ranks.
pub fn nu(s: usize, t: usize, k: i64) -> i64 {
    let (s, t) = (s as i64, t as i64);
    c(s + t, k + 1) - c(s, k + 1) - c(t, k + 1)
}

/// nu_{nk} = (n-1) C(r, k+1) + C(r-s, k+1) - sum C(r-s_i, k+1) with s = sum s_i.
pub fn nu_n(r: usize, s_list: &[usize], k: i64) -> i64 {
    let n = s_list.len() as i64;
    let r = r as i64;
    let s: i64 = s_list.iter().map(|&x| x as i64).sum();
    (n - 1) * c(r, k + 1) + c(r - s, k + 1) - s_list.iter().map(|&si| c(r - si as i64, k + 1)).sum::<i64>()
}

/// Shifted graded Betti numbers beta_{k,k+j} of a graded quotient of a
/// polynomial ring in r variables, for 0 <= k <= r and 0 <= j <= d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    pub r: usize,
    pub d: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

impl BettiTable {
    pub fn new(r: usize, d: usize) -> Self {
        BettiTable { r, d, entries: BTreeMap::new() }
    }

    pub fn get(&self, k: usize, j: usize) -> usize {
        self.entries.get(&(k, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, k: usize, j: usize, v: usize) {
        assert!(k <= self.r && j <= self.d, "entry ({k}, {j}) outside the table");
        if v == 0 {
            self.entries.remove(&(k, j));
        } else {
            self.entries.insert((k, j), v);
        }
    }

    pub fn add(&mut self, k: usize, j: usize, v: usize) {
        let cur = self.get(k, j);
        self.set(k, j, cur + v);
    }

    /// Nonzero entries as ((k, j), value).
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// Entries of row k indexed by j.
    pub fn row(&self, k: usize) -> Vec<usize> {
        (0..=self.d).map(|j| self.get(k, j)).collect()
    }

    /// Total Betti number of homological degree k.
    pub fn total(&self, k: usize) -> usize {
        self.row(k).iter().sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.entries().all(|((k, j), v)| self.get(self.r - k, self.d - j) == v)
    }
}

/// The table of R/(S m_T + I T) in s + t variables from that of S/I in s.
pub fn extend_betti(table: &BettiTable, t: usize) -> BettiTable {
    let r = table.r + t;
    let mut out = BettiTable::new(r, table.d);
    for ((i, j), v) in table.entries() {
        for k in i..=i + t {
            out.add(k, j, c(t as i64, (k - i) as i64) as usize * v);
        }
    }
    out
}

/// The table of S/ann_S(g) for a form g in s <= 2 variables with ann_S(g)_1 = 0.
pub fn local_betti<F: Field>(g: &DPForm<F>) -> Result<BettiTable> {
    if g.is_zero() {
        return Err(Error::ZeroForm);
    }
    let s = g.nvars();
    let d = g.degree();
    let counts = generator_counts(g)?;
    if counts.get(&1).copied().unwrap_or(0) > 0 {
        return Err(Error::Hypothesis("ann(g) has linear generators".into()));
    }
    let mut t = BettiTable::new(s, d);
    t.set(0, 0, 1);
    match s {
        1 => t.set(1, d, 1),
        2 => {
            let degs: Vec<usize> = counts.iter().flat_map(|(&j, &m)| std::iter::repeat_n(j, m)).collect();
            if degs.len() != 2 || degs[0] + degs[1] != d + 2 {
                return Err(Error::Other(format!("unexpected generator degrees {degs:?}")));
            }
            for &a in &degs {
                t.add(1, a - 1, 1);
            }
            t.set(2, d, 1);
        }
        _ => return Err(Error::Dimension(format!("local tables are only computed for s <= 2, got {s}"))),
    }
    Ok(t)
}

/// Betti table of f = g_1 + ... + g_n from the ambient tables of R/ann(g_i)
/// and the support dimensions s_i.
pub fn betti_join(components: &[(BettiTable, usize)], r: usize, d: usize) -> Result<BettiTable> {
    if d < 2 {
        return Err(Error::Degree("need d >= 2".into()));
    }
    if components.is_empty() {
        return Err(Error::Dimension("no components".into()));
    }
    let s_list: Vec<usize> = components.iter().map(|(_, s)| *s).collect();
    let s: usize = s_list.iter().sum();
    if s > r {
        return Err(Error::Dimension(format!("support dimensions sum to {s} > {r}")));
    }
    if components.iter().any(|(t, _)| t.r != r || t.d != d) {
        return Err(Error::Dimension("component tables must live in the ambient ring".into()));
    }
    let mut out = BettiTable::new(r, d);
    for k in 0..=r {
        out.set(k, 0, c((r - s) as i64, k as i64) as usize);
        out.add(k, d, c((r - s) as i64, k as i64 - s as i64) as usize);
        for j in 1..d {
            let mut v: i64 = components.iter().map(|(t, _)| t.get(k, j) as i64).sum();
            if j == 1 {
                v += nu_n(r, &s_list, k as i64);
            }
            if j == d - 1 {
                v += nu_n(r, &s_list, r as i64 - k as i64);
            }
            if v < 0 {
                return Err(Error::Other(format!("negative Betti number at ({k}, {j})")));
            }
            out.add(k, j, v as usize);
        }
    }
    Ok(out)
}

/// Ambient tables and support dimensions for the summands of a splitting.
/// Summands with support dimension above 2 need a caller-supplied table.
pub fn component_tables<F: Field>(report: &SplittingReport<F>) -> Result<Vec<(BettiTable, usize)>> {
    let r = report.f.nvars();
    report
        .components
        .iter()
        .map(|comp| {
            let local = support_form(&comp.form, &comp.idempotent)?;
            let t = local_betti(&local)?;
            Ok((extend_betti(&t, r - local.nvars()), local.nvars()))
        })
        .collect()
}

pub fn betti_of_split<F: Field>(report: &SplittingReport<F>) -> Result<BettiTable> {
    betti_join(&component_tables(report)?, report.f.nvars(), report.f.degree())
}

/// Twists of one free module in a resolution: (twist, multiplicity).
pub type TwistMultiset = BTreeMap<i64, usize>;

/// Free modules H_1..H_r of the minimal resolution of R/ann(g + h), together
/// with those of the resolution of the intersection ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinResolution {
    pub r: usize,
    pub d: usize,
    /// modules[k - 1] = H_k
    pub modules: Vec<TwistMultiset>,
    /// intersection[k - 1] = H_k for m_S m_T + ann_S(g) T + ann_T(h) S
    pub intersection: Vec<TwistMultiset>,
}

fn push(m: &mut TwistMultiset, twist: i64, mult: i64) {
    if mult > 0 {
        *m.entry(twist).or_insert(0) += mult as usize;
    }
}

/// g in s variables and h in t variables, given by the tables of S/ann_S(g)
/// and T/ann_T(h) in their own rings.
pub fn join_resolution_twists(g: &BettiTable, h: &BettiTable) -> Result<JoinResolution> {
    let (s, t) = (g.r, h.r);
    let d = g.d;
    if h.d != d {
        return Err(Error::Degree("summands of different degrees".into()));
    }
    if d < 2 || s == 0 || t == 0 {
        return Err(Error::Hypothesis("need d >= 2 and nonempty supports".into()));
    }
    if g.get(1, 0) > 0 || h.get(1, 0) > 0 {
        return Err(Error::Hypothesis("summand annihilators have linear generators".into()));
    }
    let r = s + t;
    let (si, ti, ri, di) = (s as i64, t as i64, r as i64, d as i64);
    let mut modules = Vec::new();
    let mut intersection = Vec::new();
    for k in 1..=r {
        let ki = k as i64;
        let mut hk = TwistMultiset::new();
        if k == r {
            push(&mut hk, -ri - di, 1);
        } else {
            push(&mut hk, -ki - 1, nu(s, t, ki));
            push(&mut hk, -di - ki + 1, nu(s, t, ri - ki));
            for j in 1..d {
                let mut m = 0;
                for i in 1..s {
                    m += c((r - s) as i64, ki - i as i64) * g.get(i, j) as i64;
                }
                for i in 1..t {
                    m += c((r - t) as i64, ki - i as i64) * h.get(i, j) as i64;
                }
                push(&mut hk, -ki - j as i64, m);
            }
        }
        modules.push(hk);

        let mut ik = TwistMultiset::new();
        push(&mut ik, -ki - 1, nu(s, t, ki));
        for j in 0..=d {
            let mut m = 0;
            for i in 1..=k {
                if i <= s {
                    m += c(ti, ki - i as i64) * g.get(i, j) as i64;
                }
                if i <= t {
                    m += c(si, ki - i as i64) * h.get(i, j) as i64;
                }
            }
            push(&mut ik, -ki - j as i64, m);
        }
        intersection.push(ik);
    }
    Ok(JoinResolution { r, d, modules, intersection })
}

/// H(R/ann f) = sum of the summands' Hilbert functions minus (n-1)(delta_0 + delta_d).
pub fn hilbert_join(components: &[Vec<usize>]) -> Result<Vec<usize>> {
    let first = components.first().ok_or_else(|| Error::Dimension("no components".into()))?;
    let len = first.len();
    if len == 0 || components.iter().any(|h| h.len() != len) {
        return Err(Error::Degree("Hilbert functions of different degrees".into()));
    }
    let n = components.len();
    let mut out: Vec<usize> = (0..len).map(|i| components.iter().map(|h| h[i]).sum()).collect();
    for i in [0, len - 1] {
        out[i] = out[i]
            .checked_sub(n - 1)
            .ok_or_else(|| Error::Hypothesis("Hilbert functions must start and end with 1".into()))?;
        if len == 1 {
            break;
        }
    }
    Ok(out)
}

/// dim (R/I^2)_d for I = ann(f), the tangent space to the cone over PGor at f.
pub fn tangent_space_dim<F: Field>(f: &DPForm<F>) -> Result<usize> {
    let d = f.degree();
    if d < 3 {
        return Err(Error::Degree("tangent space needs d >= 3".into()));
    }
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let k = f.field();
    let r = f.nvars();
    let total = monomial_count(r, d);
    let mut sq = RowSpace::new(k, total);
    for e in 1..=d / 2 {
        let u = ann_space(f, e);
        let v = ann_space(f, d - e);
        if u.dim() == 0 || v.dim() == 0 {
            continue;
        }
        for w in product_space(k, r, e, &u, d - e, &v).basis() {
            sq.insert(w.clone());
        }
    }
    Ok(total - sq.dim())
}

/// Per-summand data for the tangent space formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentComponent {
    pub s: usize,
    /// dim (S/J^2)_d of the summand in its own ring
    pub tangent: usize,
    /// number of minimal generators of degree d-1 of its annihilator
    pub generators_d_minus_1: usize,
}

pub fn tangent_formula(r: usize, d: usize, comps: &[TangentComponent]) -> Result<usize> {
    if d < 3 {
        return Err(Error::Degree("tangent formula needs d >= 3".into()));
    }
    let s: usize = comps.iter().map(|x| x.s).sum();
    if s > r {
        return Err(Error::Dimension(format!("support dimensions sum to {s} > {r}")));
    }
    let base: usize = comps.iter().map(|x| x.tangent + x.s * (r - x.s)).sum();
    let extra = if d == 3 {
        let (si, parts) = (s as i64, comps.iter().map(|x| c(x.s as i64, 3)).sum::<i64>());
        (c(si, 3) - parts) as usize
    } else {
        comps
            .iter()
            .enumerate()
            .map(|(i, x)| {
                let others: usize = comps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, y)| y.s).sum();
                others * x.generators_d_minus_1
            })
            .sum()
    };
    Ok(base + extra)
}

pub fn tangent_components<F: Field>(report: &SplittingReport<F>) -> Result<Vec<TangentComponent>> {
    let d = report.f.degree();
    report
        .components
        .iter()
        .map(|comp| {
            let local = support_form(&comp.form, &comp.idempotent)?;
            Ok(TangentComponent {
                s: local.nvars(),
                tangent: tangent_space_dim(&local)?,
                generators_d_minus_1: generator_counts(&local)?.get(&(d - 1)).copied().unwrap_or(0),
            })
        })
        .collect()
}

/// dim PSplit and the dimension sum s_i^2 of its fibers.
pub fn psplit_dim(r: usize, s_list: &[usize], pgor_dims: &[usize]) -> Result<(usize, usize)> {
    if s_list.is_empty() || s_list.len() != pgor_dims.len() {
        return Err(Error::Dimension("need one PGor dimension per summand".into()));
    }
    let s: usize = s_list.iter().sum();
    if s > r {
        return Err(Error::Dimension(format!("support dimensions sum to {s} > {r}")));
    }
    let n = s_list.len();
    let dim = n - 1 + pgor_dims.iter().sum::<usize>() + s_list.iter().map(|&x| x * (r - x)).sum::<usize>();
    Ok((dim, s_list.iter().map(|&x| x * x).sum()))
}

/// dim PGor(s, H) for s <= 2: a point for s = 1, and for binary forms the
/// closure of sums of a powers, a = max H, inside P(R_d).
pub fn pgor_dim_small(h: &[usize]) -> Result<usize> {
    if h.len() < 2 || h[0] != 1 {
        return Err(Error::Hypothesis("not an h-vector".into()));
    }
    let d = h.len() - 1;
    match h[1] {
        1 => Ok(0),
        2 => {
            let a = *h.iter().max().expect("nonempty");
            Ok((2 * a - 1).min(d))
        }
        s => Err(Error::Dimension(format!("no closed form for s = {s}"))),
    }
}

pub fn hilbert_of_split<F: Field>(report: &SplittingReport<F>) -> Result<Vec<usize>> {
    hilbert_join(&report.components.iter().map(|c| c.hilbert.clone()).collect::<Vec<_>>())
}
