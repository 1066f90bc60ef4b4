use dpsplit::forms::*;
use dpsplit::scalars::{Field, Matrix, PrimeField, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q() -> Rationals {
    Rationals
}

#[test]
fn contraction_examples() {
    let k = q();
    let f = parse_form(&k, Some(2), "x1^(3) + x1 x2^(2)").unwrap();
    let dyy = parse_op(&k, Some(2), "d2^2").unwrap();
    assert_eq!(contract(&dyy, &f), parse_form(&k, Some(2), "x1").unwrap());

    let alpha = vec![2, 1, 3];
    let mono = DPForm::monomial(&k, alpha.clone(), k.one());
    let op = DiffOp::monomial(&k, alpha, k.one());
    let one = contract(&op, &mono);
    assert_eq!(one.degree(), 0);
    assert_eq!(one.coeff(&[0, 0, 0]), k.one());

    let zero = DPForm::zero(&k, 2, 4);
    assert!(contract(&dyy, &zero).is_zero());
    assert!(contract(&parse_op(&k, Some(2), "d1^4").unwrap(), &f).is_zero());
}

#[test]
fn multiplication_examples() {
    let k = q();
    let x = DPForm::var_power(&k, 1, 0, 1);
    let sq = x.multiply(&x);
    assert_eq!(sq.coeff(&[2]), k.from_i64(2));

    let f2 = PrimeField::new(2).unwrap();
    let x2 = DPForm::var_power(&f2, 1, 0, 1);
    assert!(x2.multiply(&x2).is_zero());

    let a = DPForm::var_power(&k, 2, 0, 2);
    let b = DPForm::var_power(&k, 2, 1, 1);
    assert_eq!(a.multiply(&b), parse_form(&k, Some(2), "x1^(2) x2").unwrap());
}

#[test]
fn base_change_examples() {
    let k = q();
    let f = parse_form(&k, Some(2), "x1^(3) + 2 * x1 x2^(2)").unwrap();
    assert_eq!(apply_base_change(&Matrix::identity(&k, 2), &f).unwrap(), f);

    // x -> P^T x sends x1 to x1 + x2 for this P, and fixes x2
    let p = Matrix::from_i64(&k, &[vec![1, 0], vec![1, 1]]);
    let d = 4;
    let expected = power_of_linear_form(&k, &[k.one(), k.one()], d as usize);
    assert_eq!(apply_base_change(&p, &DPForm::var_power(&k, 2, 0, d)).unwrap(), expected);
    let x2 = DPForm::var_power(&k, 2, 1, d);
    assert_eq!(apply_base_change(&p, &x2).unwrap(), x2);
    assert_eq!(apply_base_change(&p.transpose(), &x2).unwrap(), expected);
    for j in 0..=d {
        assert_eq!(expected.coeff(&[j, d - j]), k.one());
    }

    let singular = Matrix::from_i64(&k, &[vec![1, 2], vec![2, 4]]);
    assert!(apply_base_change(&singular, &f).is_err());
}

#[test]
fn linear_form_powers() {
    let k = q();
    let l = power_of_linear_form(&k, &[k.one(), k.zero()], 5);
    assert_eq!(l, DPForm::var_power(&k, 2, 0, 5));
    let l2 = power_of_linear_form(&k, &[k.one(), k.one()], 2);
    assert_eq!(l2, parse_form(&k, Some(2), "x1^(2) + x1 x2 + x2^(2)").unwrap());
    let d12 = parse_op(&k, Some(2), "d1 d2").unwrap();
    assert_eq!(contract(&d12, &l2).coeff(&[0, 0]), k.one());
}

#[test]
fn text_round_trip_and_errors() {
    let k = q();
    let src = "3/2 * x1^(2) x3 - x2^(3) + x1 x2 x3";
    let f = parse_form(&k, None, src).unwrap();
    assert_eq!(f.nvars(), 3);
    assert_eq!(f.degree(), 3);
    let again = parse_form(&k, Some(3), &f.to_string()).unwrap();
    assert_eq!(again, f);

    match parse_form(&k, None, "x1^(2) + x2") {
        Err(dpsplit::Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 8)),
        other => panic!("unexpected {other:?}"),
    }
    assert!(matches!(parse_form(&k, None, "x1^2"), Err(dpsplit::Error::Parse { .. })));
    assert!(matches!(parse_form(&k, None, "x1 +\n + x2"), Err(dpsplit::Error::Parse { line: 2, .. })));

    let f7 = PrimeField::new(7).unwrap();
    let g = parse_form(&f7, Some(2), "10 * x1 x2 + 1/2 * x2^(2)").unwrap();
    assert_eq!(g.coeff(&[1, 1]), 3);
    assert_eq!(g.coeff(&[0, 2]), 4);
}

#[test]
fn monomial_order_is_lex_descending() {
    let m = monomials(3, 2);
    assert_eq!(m.len(), monomial_count(3, 2));
    assert_eq!(m[0], vec![2, 0, 0]);
    assert_eq!(m[1], vec![1, 1, 0]);
    assert_eq!(*m.last().unwrap(), vec![0, 0, 2]);
}

fn small_form(seed: u64, r: usize, d: usize) -> DPForm<Rationals> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DPForm::random_sparse(&q(), r, d, 0.6, &mut rng)
}

fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}

proptest! {
    #[test]
    fn leibniz_rule(seed in 0u64..10_000, r in 1usize..4, a in 0usize..4, b in 0usize..4, i in 0usize..3) {
        prop_assume!(i < r);
        let f = small_form(seed, r, a);
        let g = small_form(seed + 1, r, b);
        let op = DiffOp::var(&q(), r, i);
        let lhs = contract(&op, &f.multiply(&g));
        let rhs = contract(&op, &f).multiply(&g).add(&f.multiply(&contract(&op, &g)));
        prop_assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()));
    }

    #[test]
    fn monomial_duality(r in 1usize..4, d in 0usize..5, i in 0usize..40, j in 0usize..40) {
        let ms = monomials(r, d);
        let a = &ms[i % ms.len()];
        let b = &ms[j % ms.len()];
        let c = contract(&DiffOp::monomial(&q(), b.clone(), Rationals.one()), &DPForm::monomial(&q(), a.clone(), Rationals.one()));
        let expected = if a == b { Rationals.one() } else { Rationals.zero() };
        prop_assert_eq!(c.coeff(&vec![0; r]), expected);
    }

    #[test]
    fn base_change_is_functorial(seed in 0u64..10_000, r in 1usize..4, d in 0usize..5) {
        let k = q();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Matrix::random(&k, r, r, &mut rng);
        let s = Matrix::random(&k, r, r, &mut rng);
        prop_assume!(p.inverse().is_some() && s.inverse().is_some());
        let f = small_form(seed, r, d);
        let lhs = apply_base_change(&p.mul(&s), &f).unwrap();
        let rhs = apply_base_change(&p, &apply_base_change(&s, &f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn base_change_compatible_with_contraction(seed in 0u64..10_000, r in 1usize..4, d in 1usize..5, e in 0usize..5) {
        prop_assume!(e <= d);
        let k = q();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = Matrix::random(&k, r, r, &mut rng);
        prop_assume!(p.inverse().is_some());
        let f = small_form(seed, r, d);
        let op = DiffOp::random(&k, r, e, &mut rng);
        let lhs = apply_base_change(&p, &contract(&op, &f)).unwrap();
        let rhs = contract(&apply_base_change_op(&p, &op).unwrap(), &apply_base_change(&p, &f).unwrap());
        prop_assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()));
    }

    #[test]
    fn divided_powers_match_ordinary_products_over_rationals(seed in 0u64..10_000, r in 1usize..4, a in 0usize..4, b in 0usize..4) {
        // x^[alpha] corresponds to x^alpha / alpha!
        let k = q();
        let f = small_form(seed, r, a);
        let g = small_form(seed + 7, r, b);
        let to_ordinary = |h: &DPForm<Rationals>| {
            let mut out = DiffOp::zero(&k, r, h.degree());
            for (e, c) in h.terms() {
                let fact: i64 = e.iter().map(|&x| factorial(x)).product();
                out.add_term(e.clone(), k.div(c, &k.from_i64(fact)).unwrap());
            }
            out
        };
        let lhs = to_ordinary(&f.multiply(&g));
        let rhs = to_ordinary(&f).multiply(&to_ordinary(&g));
        prop_assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()));
    }
}
