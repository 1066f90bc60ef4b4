use dpsplit::forms::{monomials, parse_form};
use dpsplit::scalars::{MPoly, RatField};
use dpsplit::splitting::ParamForm;
use dpsplit::{DPForm, Field, PrimeField, Rationals};
use dpsplit_cli::commands::load_form;
use dpsplit_cli::document::{FieldDesc, FormDocument, ParamDocument};
use dpsplit_cli::CliError;
use proptest::prelude::*;

fn build<F: Field>(k: &F, r: usize, d: usize, terms: &[(usize, i64, i64)]) -> DPForm<F> {
    let mons = monomials(r, d);
    let mut f = DPForm::zero(k, r, d);
    for &(i, n, den) in terms {
        let c = k.div(&k.from_i64(n), &k.from_i64(den)).unwrap();
        f.add_term(mons[i % mons.len()].clone(), c);
    }
    f
}

#[test]
fn field_descriptors() {
    assert_eq!(serde_json::to_string(&FieldDesc::rationals()).unwrap(), "\"Q\"");
    assert_eq!(serde_json::to_string(&FieldDesc::Prime { p: 7 }).unwrap(), "{\"p\":7}");
    assert_eq!(FieldDesc::from_flag("F7").unwrap(), FieldDesc::Prime { p: 7 });
    assert_eq!(FieldDesc::from_flag("q").unwrap(), FieldDesc::rationals());
    assert!(matches!(FieldDesc::from_flag("R"), Err(CliError::Parse(_))));
    assert!(matches!(FieldDesc::Prime { p: 8 }.prime(), Err(CliError::Parse(_))));
}

#[test]
fn coefficient_strings() {
    let f = parse_form(&Rationals, Some(2), "x1^(3) - 3/4 * x1 x2^(2)").unwrap();
    let doc = FormDocument::from_form(&f, Some("f"));
    let coefs: Vec<&str> = doc.terms.iter().map(|t| t.coef.as_str()).collect();
    assert_eq!(coefs, ["-3/4", "1"]);
    let f7 = PrimeField::new(7).unwrap();
    let g = parse_form(&f7, Some(2), "10 * x1 x2 + 1/2 * x2^(2)").unwrap();
    let doc = FormDocument::from_form(&g, None);
    assert_eq!(doc.field, FieldDesc::Prime { p: 7 });
    let coefs: Vec<&str> = doc.terms.iter().map(|t| t.coef.as_str()).collect();
    assert_eq!(coefs, ["4", "3"]);
}

#[test]
fn malformed_documents() {
    let bad = [
        "{\"field\":\"Q\",\"r\":2,\"d\":3,\"terms\":[{\"exp\":[1,1],\"coef\":\"1\"}]}",
        "{\"field\":\"Q\",\"r\":2,\"d\":3,\"terms\":[{\"exp\":[3],\"coef\":\"1\"}]}",
        "{\"field\":\"Q\",\"r\":2,\"d\":3,\"terms\":[{\"exp\":[3,0],\"coef\":\"x\"}]}",
        "{\"field\":\"R\",\"r\":2,\"d\":3,\"terms\":[]}",
    ];
    for src in bad {
        let doc = FormDocument::parse(src);
        let res = doc.and_then(|d| match d.field.prime()? {
            None => d.to_form(&Rationals).map(|_| ()),
            Some(p) => d.to_form(&p).map(|_| ()),
        });
        assert!(matches!(res, Err(CliError::Parse(_))), "{src}");
    }
    match FormDocument::parse("{\"field\":\"Q\",\n\"r\":2,,}") {
        Err(CliError::Parse(msg)) => assert!(msg.contains("line 2"), "{msg}"),
        other => panic!("{other:?}"),
    }
}

#[test]
fn text_input() {
    let doc = load_form("x1^(3) + x1 x2^(2)", &FieldDesc::rationals(), None).unwrap();
    assert_eq!((doc.r, doc.d, doc.terms.len()), (2, 3, 2));
    let json = doc.to_json();
    assert_eq!(load_form(&json, &FieldDesc::Prime { p: 5 }, None).unwrap(), doc);
    assert!(matches!(load_form("x1^2", &FieldDesc::rationals(), None), Err(CliError::Parse(_))));
}

#[test]
fn param_documents() {
    let k = Rationals;
    let ring = RatField::new(&k, 2);
    let t1 = ring.var(0);
    let t2 = ring.var(1);
    let mut f = DPForm::zero(&ring, 2, 2);
    f.add_term(vec![2, 0], ring.one());
    f.add_term(vec![1, 1], ring.add(&t1, &ring.mul(&t2, &t2)));
    f.add_term(vec![0, 2], ring.mul(&ring.from_i64(-3), &t1));
    let p = ParamForm::new(&ring, f).unwrap();
    let doc = ParamDocument::from_param_form(&p, Some("f_t"));
    assert_eq!(doc.params, 2);
    let back = doc.to_param_form(&k).unwrap();
    assert_eq!(back.form, p.form);
    let json = doc.to_json();
    assert_eq!(ParamDocument::parse(&json).unwrap().to_json(), json);
}

fn term_list() -> impl Strategy<Value = Vec<(usize, i64, i64)>> {
    prop::collection::vec((0usize..200, -20i64..21, 1i64..6), 0..8)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_round_trip(r in 1usize..5, d in 0usize..6, terms in term_list()) {
        let f = build(&Rationals, r, d, &terms);
        let s1 = FormDocument::from_form(&f, Some("f")).to_json();
        let doc = FormDocument::parse(&s1).unwrap();
        prop_assert_eq!(doc.to_json(), s1);
        prop_assert_eq!(doc.to_form(&Rationals).unwrap(), f);
    }

    #[test]
    fn prime_round_trip(r in 1usize..5, d in 0usize..6, terms in term_list(), p in prop::sample::select(vec![2u64, 7, 101])) {
        let k = PrimeField::new(p).unwrap();
        let terms: Vec<_> = terms.into_iter().filter(|t| !(t.2 as u64).is_multiple_of(p)).collect();
        let f = build(&k, r, d, &terms);
        let s1 = FormDocument::from_form(&f, None).to_json();
        let doc = FormDocument::parse(&s1).unwrap();
        prop_assert_eq!(doc.to_json(), s1);
        prop_assert_eq!(doc.to_form(&k).unwrap(), f);
    }

    #[test]
    fn text_and_document_agree(r in 1usize..4, d in 1usize..5, terms in term_list()) {
        let f = build(&Rationals, r, d, &terms);
        prop_assume!(!f.is_zero());
        let doc = load_form(&f.to_string(), &FieldDesc::rationals(), Some(r)).unwrap();
        prop_assert_eq!(doc, FormDocument::from_form(&f, None));
    }

    #[test]
    fn param_round_trip(
        d in 1usize..4,
        coefs in prop::collection::vec(prop::collection::vec((0u32..3, 0u32..3, -5i64..6), 0..4), 1..5),
    ) {
        let k = Rationals;
        let ring = RatField::new(&k, 2);
        let mons = monomials(2, d);
        let mut f = DPForm::zero(&ring, 2, d);
        for (i, poly) in coefs.iter().enumerate() {
            let mut c = MPoly::zero();
            for &(a, b, n) in poly {
                c = c.add(&k, &MPoly::monomial(&k, vec![a, b], k.from_i64(n)));
            }
            f.add_term(mons[i % mons.len()].clone(), ring.from_poly(c));
        }
        let p = ParamForm::new(&ring, f).unwrap();
        let s1 = ParamDocument::from_param_form(&p, None).to_json();
        let doc = ParamDocument::parse(&s1).unwrap();
        prop_assert_eq!(doc.to_json(), s1);
        prop_assert_eq!(doc.to_param_form(&k).unwrap().form, p.form);
    }
}
