use dpsplit::apolarity::{ann_space, generator_counts, hilbert_function};
use dpsplit::forms::*;
use dpsplit::matrix_algebra::compute_mf;
use dpsplit::scalars::{Field, Matrix, PrimeField, Rationals};
use dpsplit::splitting::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn form(r: usize, s: &str) -> DPForm<Rationals> {
    parse_form(&Rationals, Some(r), s).unwrap()
}

fn mat(rows: &[Vec<i64>]) -> Matrix<Rationals> {
    Matrix::from_i64(&Rationals, rows)
}

fn sorted_forms<F: Field>(v: &[DPForm<F>]) -> Vec<String> {
    let mut s: Vec<String> = v.iter().map(|g| format!("{g:?}")).collect();
    s.sort();
    s
}

fn hilbert_additive<F: Field>(f: &DPForm<F>, comps: &[DPForm<F>]) -> bool {
    let d = f.degree();
    let n = comps.len();
    let mut sum = vec![0i64; d + 1];
    for g in comps {
        for (e, h) in hilbert_function(g).unwrap().into_iter().enumerate() {
            sum[e] += h as i64;
        }
    }
    sum[0] -= n as i64 - 1;
    sum[d] -= n as i64 - 1;
    let h: Vec<i64> = hilbert_function(f).unwrap().into_iter().map(|x| x as i64).collect();
    h == sum
}

#[test]
fn worked_example() {
    let f = form(3, "x1 x2^(2) + x2 x3^(2) + x3^(3)");
    let rep = regular_split(&f, 3).unwrap();
    assert_eq!(rep.len(), 2);
    // (x2 + x3)^[3] and (x1 - x3) x2^[2] - x2^[3]
    let g = form(3, "x2^(3) + x2^(2) x3 + x2 x3^(2) + x3^(3)");
    let h = form(3, "x1 x2^(2) - x2^(2) x3 - x2^(3)");
    assert_eq!(sorted_forms(&rep.forms()), sorted_forms(&[g.clone(), h.clone()]));
    let a = mat(&[vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 1]]);
    let e = a.mul(&a);
    for c in &rep.components {
        let expected = if c.form == g { e.clone() } else { Matrix::identity(&Rationals, 3).sub(&e) };
        assert_eq!(c.idempotent, expected);
    }
    assert!(verify_regular_splitting(&f, &rep.forms()).valid);
    assert!(hilbert_additive(&f, &rep.forms()));
    let dims: Vec<usize> = rep.components.iter().map(|c| c.block.dim()).collect();
    assert_eq!(dims.iter().sum::<usize>(), compute_mf(&f).unwrap().dim());
}

#[test]
fn sums_of_powers() {
    for d in 3..7 {
        let f = form(3, &format!("x1^({d}) + x2^({d}) + x3^({d})"));
        let rep = regular_split(&f, 0).unwrap();
        assert_eq!(rep.len(), 3);
        let expected: Vec<DPForm<Rationals>> = (0..3).map(|i| DPForm::var_power(&Rationals, 3, i, d as u32)).collect();
        assert_eq!(sorted_forms(&rep.forms()), sorted_forms(&expected));
        for c in &rep.components {
            assert_eq!(c.support_dim, 1);
            assert_eq!(c.hilbert, vec![1; d + 1]);
        }
        let grouped = group(&rep, &[vec![0, 1], vec![2]]).unwrap();
        assert_eq!(grouped.len(), 2);
        assert!(verify_regular_splitting(&f, &grouped.forms()).valid);
        assert!(group(&rep, &[vec![0, 1]]).is_err());
        assert!(group(&rep, &[vec![0, 1], vec![1, 2]]).is_err());
    }
    let single = DPForm::var_power(&Rationals, 2, 0, 4);
    let rep = regular_split(&single, 0).unwrap();
    assert_eq!(rep.len(), 1);
    assert_eq!(rep.components[0].form, single);
}

#[test]
fn quadrics() {
    let f = form(3, "x1^(2) + x1 x2 + x3^(2)");
    let rep = regular_split(&f, 0).unwrap();
    assert_eq!(rep.len(), 3);
    assert!(verify_regular_splitting(&f, &rep.forms()).valid);

    let degenerate = form(3, "x1^(2) + x1 x2 + x2^(2)");
    assert_eq!(regular_split(&degenerate, 0).unwrap().len(), 1);

    let f2 = PrimeField::new(2).unwrap();
    let alt = parse_form(&f2, Some(2), "x1 x2").unwrap();
    let rep = regular_split(&alt, 0).unwrap();
    assert_eq!(rep.len(), 1);
    let both = parse_form(&f2, Some(4), "x1 x2 + x3 x4").unwrap();
    let rep = regular_split(&both, 0).unwrap();
    assert_eq!(rep.len(), 2);
    assert!(verify_regular_splitting(&both, &rep.forms()).valid);
}

#[test]
fn verification_failures() {
    for d in 3..6u32 {
        let x = DPForm::var_power(&Rationals, 2, 0, d);
        let y = DPForm::var_power(&Rationals, 2, 1, d);
        let f = x.add(&y);
        assert!(verify_regular_splitting(&f, &[x.clone(), y.clone()]).valid);
        let report = verify_regular_splitting(&y, &[x.clone(), y.sub(&x)]);
        assert!(report.sums_to_f);
        assert!(!report.supports_independent);
        assert!(!report.valid);
        let wrong_sum = verify_regular_splitting(&f, std::slice::from_ref(&x));
        assert!(!wrong_sum.sums_to_f && !wrong_sum.valid);
    }
    let f = form(2, "x1^(2) x2");
    assert!(idempotents_from_components(&f, &[f.clone(), DPForm::zero(&Rationals, 2, 3)]).is_ok());
    assert!(matches!(regular_split(&DPForm::zero(&Rationals, 2, 3), 0), Err(dpsplit::Error::ZeroForm)));
    assert!(regular_split(&DPForm::var_power(&Rationals, 2, 0, 1), 0).is_err());
}

#[test]
fn upper_bounds() {
    assert_eq!(splitting_upper_bound(&form(2, "x1^(3) + x1 x2^(2)")).unwrap(), (1, false));
    for d in 3..6 {
        let f = form(3, &format!("x1^({}) x3 + x1^({}) x2^(2)", d - 1, d - 2));
        assert_eq!(splitting_upper_bound(&f).unwrap(), (2, false));
    }
    // x1^[d] in two variables: the dummy variable inflates dim M_f
    let (bound, dummy) = splitting_upper_bound(&DPForm::var_power(&Rationals, 2, 0, 4)).unwrap();
    assert!(dummy);
    assert_eq!(bound, 2);
}

#[test]
fn binary_degenerate_family() {
    let a = mat(&[vec![0, 1], vec![0, 0]]);
    for d in 3..7usize {
        let f = form(2, &format!("x1^({}) x2", d - 1));
        assert_eq!(regular_split(&f, 0).unwrap().len(), 1);
        let out = degenerate_split_onematrix(&f, &a, 7).unwrap();
        assert_eq!(out.nparams(), 1);
        assert_eq!(out.components.len(), 2);
        assert_eq!(out.family.at_zero(), f);
        // f_t = ((x + t y)^[d] - x^[d]) / t
        for k in 1..=d {
            let c = out.family.coefficient(&[(k - 1) as u32]);
            let expected = DPForm::monomial(&Rationals, vec![(d - k) as u32, k as u32], Rationals.one());
            assert_eq!(c, expected, "coefficient of t^{}", k - 1);
        }
        assert!(out.certificate.components >= 2);
        assert!(out.certificate.dim_m_specialized <= out.certificate.dim_m_f0);
        assert!(!out.levels[0].cleared_denominator);
    }
}

#[test]
fn jordan_block_family() {
    let a = mat(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    for d in 3..6 {
        let f = form(3, &format!("x1^({}) x3 + x1^({}) x2^(2)", d - 1, d - 2));
        let out = degenerate_split_onematrix(&f, &a, 11).unwrap();
        assert_eq!(out.nparams(), 2);
        assert_eq!(out.components.len(), 3);
        assert_eq!(out.family.at_zero(), f);
        assert!(out.certificate.components >= 3);
        assert!(out.certificate.dim_m_specialized <= out.certificate.dim_m_f0);
        assert!(matches!(reach_upper_bound(&f, 1).unwrap(), QuestionStatus::Degenerate(_)));
    }
}

#[test]
fn two_block_family() {
    let f = form(4, "x1^(2) x2 + x3^(2) x4");
    let k = Rationals;
    let mut a1 = Matrix::zeros(&k, 4, 4);
    a1.set(0, 1, k.one());
    let mut a2 = Matrix::zeros(&k, 4, 4);
    a2.set(2, 3, k.one());
    let mut e1 = Matrix::zeros(&k, 4, 4);
    e1.set(0, 0, k.one());
    e1.set(1, 1, k.one());
    let e2 = Matrix::identity(&k, 4).sub(&e1);
    let data = [
        NilpotentDatum { a: a1, e: e1.clone(), start: 1 },
        NilpotentDatum { a: a2, e: e2, start: 1 },
    ];
    let out = degenerate_split_multimatrix(&f, &data, 5).unwrap();
    assert_eq!(out.nparams(), 2);
    assert_eq!(out.family.at_zero(), f);
    assert!(out.certificate.components >= 3);
    assert_eq!(splitting_upper_bound(&f).unwrap().0, 3);
    assert!(matches!(reach_upper_bound(&f, 0).unwrap(), QuestionStatus::Degenerate(_)));

    let bad = [NilpotentDatum { a: data[0].a.clone(), e: e1.clone(), start: 1 }, NilpotentDatum { a: data[1].a.clone(), e: e1, start: 1 }];
    assert!(degenerate_split_multimatrix(&f, &bad, 5).is_err());
}

#[test]
fn degenerate_errors() {
    let a = mat(&[vec![0, 1], vec![0, 0]]);
    let quad = form(2, "x1 x2");
    assert!(matches!(degenerate_split_onematrix(&quad, &a, 0), Err(dpsplit::Error::DegreeTooLow)));
    let f = form(2, "x1^(2) x2");
    assert!(degenerate_split_onematrix(&f, &Matrix::identity(&Rationals, 2), 0).is_err());
    assert!(matches!(degenerate_split_onematrix(&f, &a.transpose(), 0), Err(dpsplit::Error::NotInMf)));
    assert!(matches!(degenerate_split_multimatrix(&f, &[], 0), Err(dpsplit::Error::NoNilpotent)));
}

fn r5_form(a: u32, b: u32) -> DPForm<Rationals> {
    form(
        5,
        &format!(
            "x1^({}) x2^({}) x3 + x1^({a}) x2^({b}) x4 + x1^({}) x2^({}) x5",
            a - 1,
            b + 1,
            a + 1,
            b - 1
        ),
    )
}

fn r7_form() -> DPForm<Rationals> {
    form(
        7,
        "x4 x2 x3^(2) + x5 x1 x3^(2) + x5 x2^(2) x3 + x6 x1 x2 x3 + x6 x2^(3) + x7 x1^(2) x3 + x7 x1 x2^(2)",
    )
}

fn r9_form() -> DPForm<Rationals> {
    form(
        9,
        "x5 x3 x4 + x6 x2 x4 + x6 x3^(2) + x7 x1 x4 + x7 x2 x3 + x8 x1 x3 + x8 x2^(2) + x9 x1 x2",
    )
}

#[test]
fn obstructed_forms() {
    let cases = [(r5_form(2, 2), 5, 2usize), (r7_form(), 7, 3), (r9_form(), 9, 4)];
    for (h, r, rank) in cases {
        assert_eq!(compute_mf(&h).unwrap().dim(), 3);
        let obs = nilpotent_rank_obstruction(&h, r, 3, 0).unwrap();
        assert_eq!(obs.verdict, Verdict::Obstructed);
        assert_eq!(obs.confidence, Confidence::Exact);
        assert_eq!(obs.min_rank, Some(rank));
        assert_eq!(obs.rank_bound, r / 3);
        assert!(matches!(reach_upper_bound(&h, 0).unwrap(), QuestionStatus::Negative(_)));
    }
    // padding with powers of new variables keeps the obstruction
    let h = r5_form(2, 2);
    let obs = nilpotent_rank_obstruction(&h, 6, 4, 0).unwrap();
    assert_eq!(obs.verdict, Verdict::Obstructed);
    assert_eq!(obs.rank_bound, 1);
    let mut padded = h.embed(6, &[0, 1, 2, 3, 4]);
    padded = padded.add(&DPForm::var_power(&Rationals, 6, 5, 5));
    assert!(matches!(reach_upper_bound(&padded, 0).unwrap(), QuestionStatus::Negative(_)));
}

#[test]
fn unobstructed_forms() {
    for d in 3..6 {
        let h = form(3, &format!("x1^({}) x3 + x1^({}) x2^(2)", d - 1, d - 2));
        let obs = nilpotent_rank_obstruction(&h, 3, 3, 0).unwrap();
        assert_eq!(obs.verdict, Verdict::NotObstructed);
        assert_eq!(obs.min_rank, Some(1));
        let w = obs.witness.unwrap();
        assert!(compute_mf(&h).unwrap().contains(&w));
        assert_eq!(w.rank(), 1);
    }
    let split = form(2, "x1^(3) + x2^(3)");
    assert!(matches!(nilpotent_rank_obstruction(&split, 2, 2, 0), Err(dpsplit::Error::Hypothesis(_))));
    assert!(nilpotent_rank_obstruction(&r5_form(2, 2), 5, 1, 0).is_err());
}

#[test]
fn regular_status() {
    let f = form(3, "x1^(3) + x2^(3) + x3^(3)");
    match reach_upper_bound(&f, 0).unwrap() {
        QuestionStatus::Regular(rep) => assert_eq!(rep.len(), 3),
        other => panic!("unexpected status {other:?}"),
    }
    // one local block of dimension 2 remains after the regular splitting
    let f = form(3, "x1 x2^(2) + x2 x3^(2) + x3^(3)");
    match reach_upper_bound(&f, 0).unwrap() {
        QuestionStatus::Degenerate(out) => {
            assert_eq!(out.nparams(), 1);
            assert_eq!(out.family.at_zero(), f);
            assert!(out.certificate.components >= 3);
        }
        other => panic!("unexpected status {other:?}"),
    }
    let g = DPForm::var_power(&Rationals, 2, 0, 4);
    assert!(matches!(reach_upper_bound(&g, 0).unwrap(), QuestionStatus::Negative(_)));
}

/// A form in s <= 2 variables that does not split regularly.
fn local_block<R: Rng>(k: &PrimeField, s: usize, d: usize, rng: &mut R) -> DPForm<PrimeField> {
    let c = loop {
        let c = k.random_elem(rng);
        if !k.is_zero(&c) {
            break c;
        }
    };
    if s == 1 {
        return DPForm::monomial(k, vec![d as u32], c);
    }
    let base = DPForm::monomial(k, vec![d as u32 - 1, 1], c);
    loop {
        let p = Matrix::random(k, 2, 2, rng);
        if p.inverse().is_some() {
            return apply_base_change(&p, &base).unwrap();
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn round_trip(seed in 0u64..1_000_000, n in 1usize..4, d in 3usize..6) {
        let k = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..3)).collect();
        let r: usize = sizes.iter().sum();
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &s in &sizes {
            let g = local_block(&k, s, d, &mut rng);
            blocks.push(g.embed(r, &(offset..offset + s).collect::<Vec<_>>()));
            offset += s;
        }
        let p = loop {
            let p = Matrix::random(&k, r, r, &mut rng);
            if p.inverse().is_some() {
                break p;
            }
        };
        let moved: Vec<DPForm<PrimeField>> = blocks.iter().map(|g| apply_base_change(&p, g).unwrap()).collect();
        let mut f = DPForm::zero(&k, r, d);
        for g in &moved {
            f = f.add(g);
        }
        let rep = regular_split(&f, seed).unwrap();
        prop_assert_eq!(sorted_forms(&rep.forms()), sorted_forms(&moved));
        prop_assert!(verify_regular_splitting(&f, &rep.forms()).valid);
        prop_assert!(hilbert_additive(&f, &rep.forms()));
        let idems = idempotents_from_components(&f, &rep.forms()).unwrap();
        let mut total = Matrix::zeros(&k, r, r);
        for (e, c) in idems.iter().zip(&rep.components) {
            prop_assert_eq!(e, &c.idempotent);
            total = total.add(e);
        }
        prop_assert!(total.is_identity());
        let bound = splitting_upper_bound(&f).unwrap().0;
        prop_assert!(rep.splits() <= bound);
    }

    #[test]
    fn split_or_degenerate(seed in 0u64..1_000_000, r in 2usize..4, d in 3usize..5) {
        // with ann_1 = 0 and beta_{1d} > 0 some splitting exists
        let k = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = DPForm::random_sparse(&k, r, d, 0.3, &mut rng);
        prop_assume!(!f.is_zero() && ann_space(&f, 1).dim() == 0);
        let beta = generator_counts(&f).unwrap()[&d];
        prop_assume!(beta > 0);
        let rep = regular_split(&f, seed).unwrap();
        prop_assume!(rep.residue_degrees.iter().all(|&x| x == 1));
        if rep.len() < 2 {
            let mf = compute_mf(&f).unwrap();
            let a = mf.basis().iter().find(|b| !b.is_zero() && b.nilpotency_index().is_some()).cloned();
            let a = a.or_else(|| {
                let alg = dpsplit::artinian::StructAlgebra::from_matrix_space(&mf).unwrap();
                dpsplit::artinian::nilradical(&alg).basis().first().map(|v| mf.element(v))
            });
            let a = a.expect("nilpotent in M_f");
            let out = degenerate_split_onematrix(&f, &a, seed).unwrap();
            prop_assert!(out.nparams() >= 1);
            prop_assert!(out.certificate.dim_m_specialized <= out.certificate.dim_m_f0);
        }
    }
}

#[test]
fn automatic_degenerate_split() {
    let f = form(2, "x1^(3) x2");
    let ds = degenerate_split(&f, 4).unwrap();
    assert_eq!(ds.nparams(), 1);
    assert_eq!(ds.family.at_zero(), f);
    let k = PrimeField::new(101).unwrap();
    let j = dpsplit::generators::jordan_extremal_form(&k, 4, 3).unwrap();
    let ds = degenerate_split(&j, 4).unwrap();
    assert_eq!(ds.nparams(), 3);
    assert_eq!(ds.family.at_zero(), j);
    assert!(ds.certificate.components >= 4);
    assert_eq!(degenerate_split(&form(3, "x1^(3) + x2^(3) + x3^(3)"), 1).unwrap_err(), dpsplit::Error::NoNilpotent);
    assert_eq!(degenerate_split(&form(2, "x1 x2"), 1).unwrap_err(), dpsplit::Error::DegreeTooLow);
}
