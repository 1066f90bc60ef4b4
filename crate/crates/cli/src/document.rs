//! JSON documents for forms and parameterized families.

use dpsplit::scalars::{MPoly, RatField};
use dpsplit::splitting::ParamForm;
use dpsplit::{DPForm, Field, PrimeField};
use serde::{Deserialize, Serialize};

use crate::CliError;

/// "Q" or {"p": prime}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDesc {
    Named(String),
    Prime { p: u64 },
}

impl FieldDesc {
    pub fn rationals() -> Self {
        FieldDesc::Named("Q".into())
    }

    pub fn of<F: Field>(k: &F) -> Self {
        match k.characteristic() {
            0 => Self::rationals(),
            p => FieldDesc::Prime { p },
        }
    }

    /// Parses "Q", "7" or "F7".
    pub fn from_flag(s: &str) -> Result<Self, CliError> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Self::rationals());
        }
        let digits = t.strip_prefix('F').or_else(|| t.strip_prefix('f')).unwrap_or(t);
        digits
            .parse::<u64>()
            .map(|p| FieldDesc::Prime { p })
            .map_err(|_| CliError::Parse(format!("parse error: unknown field '{s}'")))
    }

    /// None for Q, Some(field) for a prime field.
    pub fn prime(&self) -> Result<Option<PrimeField>, CliError> {
        match self {
            FieldDesc::Named(n) if n == "Q" => Ok(None),
            FieldDesc::Named(n) => Err(CliError::Parse(format!("parse error: unknown field '{n}'"))),
            FieldDesc::Prime { p } => PrimeField::new(*p).map(Some).map_err(|e| CliError::Parse(format!("parse error: {e}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub exp: Vec<u32>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormDocument {
    pub field: FieldDesc,
    pub r: usize,
    pub d: usize,
    pub terms: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

fn check_exp(exp: &[u32], r: usize, d: usize) -> Result<(), CliError> {
    if exp.len() != r {
        return Err(CliError::Parse(format!("parse error: exponent {exp:?} has length {} instead of {r}", exp.len())));
    }
    if exp.iter().map(|&a| a as usize).sum::<usize>() != d {
        return Err(CliError::Parse(format!("parse error: exponent {exp:?} does not have degree {d}")));
    }
    Ok(())
}

impl FormDocument {
    pub fn from_form<F: Field>(f: &DPForm<F>, name: Option<&str>) -> Self {
        let k = f.field();
        FormDocument {
            field: FieldDesc::of(k),
            r: f.nvars(),
            d: f.degree(),
            terms: f
                .terms()
                .iter()
                .map(|(e, c)| TermDoc { exp: e.clone(), coef: k.fmt_elem(c) })
                .collect(),
            name: name.map(str::to_string),
        }
    }

    pub fn to_form<F: Field>(&self, k: &F) -> Result<DPForm<F>, CliError> {
        let mut f = DPForm::zero(k, self.r, self.d);
        for t in &self.terms {
            check_exp(&t.exp, self.r, self.d)?;
            let c = k.parse_elem(&t.coef).map_err(|e| CliError::Parse(format!("parse error: {e}")))?;
            f.add_term(t.exp.clone(), c);
        }
        Ok(f)
    }

    pub fn parse(src: &str) -> Result<Self, CliError> {
        serde_json::from_str(src).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}

pub(crate) fn json_error(e: serde_json::Error) -> CliError {
    CliError::Parse(format!("parse error: {e}"))
}

/// A form whose coefficients are polynomials in t1..tn.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamDocument {
    pub field: FieldDesc,
    pub r: usize,
    pub d: usize,
    pub params: usize,
    pub terms: Vec<TermDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl ParamDocument {
    pub fn from_param_form<K: Field>(p: &ParamForm<K>, name: Option<&str>) -> Self {
        let k = p.ring.base();
        let names = p.ring.names();
        let terms = p
            .form
            .terms()
            .iter()
            .map(|(e, c)| {
                let lead = c.den.constant_value(k);
                let inv = k.inv(&lead).expect("polynomial coefficients");
                TermDoc { exp: e.clone(), coef: c.num.scale(k, &inv).format(k, names) }
            })
            .collect();
        ParamDocument {
            field: FieldDesc::of(k),
            r: p.form.nvars(),
            d: p.form.degree(),
            params: p.nparams(),
            terms,
            name: name.map(str::to_string),
        }
    }

    pub fn to_param_form<K: Field>(&self, k: &K) -> Result<ParamForm<K>, CliError> {
        let ring = RatField::new(k, self.params);
        let mut f = DPForm::zero(&ring, self.r, self.d);
        for t in &self.terms {
            check_exp(&t.exp, self.r, self.d)?;
            let poly = MPoly::parse(k, &t.coef, ring.names()).map_err(|e| CliError::Parse(format!("parse error: {e}")))?;
            f.add_term(t.exp.clone(), ring.from_poly(poly));
        }
        ParamForm::new(&ring, f).map_err(CliError::Domain)
    }

    pub fn parse(src: &str) -> Result<Self, CliError> {
        serde_json::from_str(src).map_err(json_error)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }
}
