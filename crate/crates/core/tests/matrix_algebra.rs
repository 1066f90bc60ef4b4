use dpsplit::apolarity::*;
use dpsplit::forms::*;
use dpsplit::matrix_algebra::*;
use dpsplit::scalars::{binomial, Field, Matrix, PrimeField, Rationals, RowSpace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn form(r: usize, s: &str) -> DPForm<Rationals> {
    parse_form(&Rationals, Some(r), s).unwrap()
}

fn mat(rows: &[Vec<i64>]) -> Matrix<Rationals> {
    Matrix::from_i64(&Rationals, rows)
}

fn jordan3() -> Matrix<Rationals> {
    mat(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]])
}

#[test]
fn mf_examples() {
    let f = form(2, "x1^(3) + x1 x2^(2)");
    let mf = compute_mf(&f).unwrap();
    assert_eq!(mf.dim(), 2);
    assert_eq!(mf.basis()[0], mat(&[vec![1, 0], vec![0, 1]]));
    assert_eq!(mf.basis()[1], mat(&[vec![0, 1], vec![1, 0]]));
    assert!(mf.closed_under_mult && mf.commutative);

    for d in 3..6u32 {
        let g = form(3, &format!("x1^({}) x3 + x1^({}) x2^(2)", d - 1, d - 2));
        let mg = compute_mf(&g).unwrap();
        let a = jordan3();
        let k_a = MatrixAlgebraSpace::new(&Rationals, 3, &[Matrix::identity(&Rationals, 3), a.clone(), a.mul(&a)]);
        assert_eq!(mg.dim(), 3);
        assert_eq!(mg.basis(), k_a.basis());
    }

    let h = DPForm::var_power(&Rationals, 2, 0, 3);
    let mh = compute_mf(&h).unwrap();
    assert_eq!(mh.dim(), 3);
    for b in mh.basis() {
        assert!(Rationals.is_zero(b.get(1, 0)));
    }
    assert!(matches!(compute_mf(&DPForm::zero(&Rationals, 2, 3)), Err(dpsplit::Error::ZeroForm)));
}

#[test]
fn mf_does_not_support_division() {
    for d in 4..6u32 {
        let f = form(4, &format!("x1^({}) x4 + x1^({}) x2 x3 + x2^({d})", d - 1, d - 2));
        let mf = compute_mf(&f).unwrap();
        let a = mat(&[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
        assert_eq!(mf.dim(), 3);
        assert!(!mf.contains(&a));
        assert!(mf.contains(&a.pow(2)) && mf.contains(&a.pow(3)));
    }
}

#[test]
fn gamma_examples() {
    let f = form(2, "x1^(3) + x1 x2^(2)");
    let swap = mat(&[vec![0, 1], vec![1, 0]]);
    assert_eq!(gamma_f(&f, &swap).unwrap(), form(2, "x1^(2) x2 + x2^(3)"));
    assert_eq!(gamma_f(&f, &Matrix::identity(&Rationals, 2)).unwrap(), f);
    assert!(matches!(gamma_f(&f, &mat(&[vec![0, 1], vec![0, 0]])), Err(dpsplit::Error::NotInMf)));

    for d in 3..6u32 {
        let g = form(3, &format!("x1^({}) x3 + x1^({}) x2^(2)", d - 1, d - 2));
        assert_eq!(gamma_f(&g, &jordan3()).unwrap(), form(3, &format!("x1^({}) x2", d - 1)));
    }
}

#[test]
fn support_idempotents() {
    let f = form(3, "x1 x2^(2) + x2 x3^(2) + x3^(3)");
    assert!(choose_support_idempotent(&f).is_identity());

    let g = DPForm::var_power(&Rationals, 2, 0, 4);
    let e = choose_support_idempotent(&g);
    assert_eq!(e, mat(&[vec![1, 0], vec![0, 0]]));
    let restricted = mf_restricted(&g, &e).unwrap();
    assert_eq!(restricted.dim(), 1);
    assert_eq!(restricted.basis()[0], e);

    let l = power_of_linear_form(&Rationals, &[Rationals.one(), Rationals.one()], 4);
    let e = choose_support_idempotent(&l);
    assert_eq!(e.mul(&e), e);
    assert_eq!(e.rank(), 1);
    let v = Matrix::from_i64(&Rationals, &[vec![1], vec![1]]);
    assert_eq!(e.mul(&v), v);
    assert!(mf_restricted(&l, &e).is_ok());

    let mf = compute_mf(&f).unwrap();
    assert_eq!(mf_restricted(&f, &Matrix::identity(&Rationals, 3)).unwrap().basis(), mf.basis());
    let a = mat(&[vec![0, 0, 0], vec![0, 0, 1], vec![1, 0, 1]]);
    let e = a.mul(&a);
    assert_eq!(a.pow(3), e);
    let me = MatrixAlgebraSpace::new(&Rationals, 3, &mf.basis().iter().map(|b| b.mul(&e)).collect::<Vec<_>>());
    assert_eq!(me.basis(), MatrixAlgebraSpace::new(&Rationals, 3, std::slice::from_ref(&e)).basis());
    assert!(mf_restricted(&f, &e).is_err());
}

#[test]
fn graded_spaces() {
    let f = form(2, "x1^(3) + x1 x2^(2)");
    let m0 = graded_mf(&f, 0).unwrap();
    let mf = compute_mf(&f).unwrap();
    assert_eq!(m0.dim(), mf.dim());
    let im1 = gamma_image(&f, 1).unwrap();
    assert_eq!(im1.dim(), 3);
    assert_eq!(im1.basis(), g_space(&f, 1).basis());

    let m = fg_modules(&f).unwrap();
    assert_eq!(m.g[0].dim() - m.f[0].dim(), 1);
    assert!(graded_mf(&f, 3).is_err());
}

#[test]
fn star_identities() {
    let k = Rationals;
    let f = form(3, "x1^(5) + x1 x2^(2) x3^(2) + x2^(4) x3 - x3^(5) + x1^(2) x2^(3)");
    assert_eq!(star(&f, &f, &f).unwrap(), f);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for a in 0..=2usize {
        for b in 0..=(2 - a) {
            let gb = g_space(&f, b);
            let h = DPForm::from_vector(&k, 3, 5 - b, &gb.basis()[rng.gen_range(0..gb.dim())]);
            let dop = DiffOp::random(&k, 3, a, &mut rng);
            let df = contract(&dop, &f);
            let lhs = star(&f, &df, &h).unwrap();
            let rhs = contract(&dop, &h);
            assert!(lhs == rhs || (lhs.is_zero() && rhs.is_zero()));
            assert_eq!(star(&f, &f, &h).unwrap(), h);
        }
    }
    assert!(star(&f, &contract(&DiffOp::var(&k, 3, 0), &f), &contract(&DiffOp::var(&k, 3, 0).pow(2), &f)).is_err());
}

#[test]
fn mfd_examples() {
    let f = form(3, "x1 x2^(2) + x2 x3^(2) + x3^(3)");
    assert_eq!(mfd(&f, 1).unwrap().basis(), compute_mf(&f).unwrap().basis());
    let g = DPForm::var_power(&Rationals, 1, 0, 6);
    let m = mfd(&g, 2).unwrap();
    assert_eq!((m.size(), m.dim()), (1, 1));
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let k = PrimeField::new(7).unwrap();
    let h = DPForm::random(&k, 3, 6, &mut rng);
    let mh = mfd(&h, 2).unwrap();
    assert!(mh.closed_under_mult);
    if ann_space(&h, 2).dim() == 0 {
        assert!(mh.commutative);
    }
}

fn random_form(seed: u64, r: usize, d: usize) -> DPForm<PrimeField> {
    let k = PrimeField::new(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    DPForm::random_sparse(&k, r, d, 0.4, &mut rng)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn dimension_formula(seed in 0u64..1_000_000, r in 1usize..5, d in 1usize..6) {
        let f = random_form(seed, r, d);
        prop_assume!(!f.is_zero());
        let b = generator_counts(&f).unwrap();
        prop_assert_eq!(compute_mf(&f).unwrap().dim(), 1 + b[&d] + r * b[&1]);
    }

    #[test]
    fn algebra_laws(seed in 0u64..1_000_000, r in 1usize..5, d in 2usize..6) {
        let f = random_form(seed, r, d);
        prop_assume!(!f.is_zero());
        let mf = compute_mf(&f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = mf.random_element(&mut rng);
        for kk in 0..=r {
            prop_assert!(mf.contains(&a.pow(kk)));
        }
        if d >= 3 {
            prop_assert!(mf.closed_under_mult);
            let b = mf.random_element(&mut rng);
            let comm = a.mul(&b).sub(&b.mul(&a));
            prop_assert!(apply_matrix(&comm, &f.gradient()).iter().all(|g| g.is_zero()));
            if ann_space(&f, 1).dim() == 0 {
                prop_assert!(mf.commutative);
            }
        }
    }

    #[test]
    fn gamma_kernel_and_image(seed in 0u64..1_000_000, r in 1usize..4, d in 1usize..6) {
        let f = random_form(seed, r, d);
        prop_assume!(!f.is_zero());
        let k = *f.field();
        let mf = compute_mf(&f).unwrap();
        let ker = ker_gamma(&f);
        prop_assert_eq!(ker.dim(), r * generator_counts(&f).unwrap()[&1]);
        prop_assert!(ker.basis().iter().all(|b| mf.contains(b)));
        let n = monomial_count(r, d);
        let mut im = RowSpace::new(&k, n);
        for b in mf.basis() {
            im.insert(gamma_f(&f, b).unwrap().to_vector());
        }
        prop_assert_eq!(im.dim() + ker.dim(), mf.dim());
        let expected = g_space(&f, 0);
        prop_assert_eq!(im.basis(), expected.basis());
    }

    #[test]
    fn graded_dimension_formulas(seed in 0u64..1_000_000, r in 1usize..4, d in 2usize..6, e in 0usize..3) {
        let f = random_form(seed, r, d);
        prop_assume!(!f.is_zero() && e < d);
        let space = graded_mf(&f, e).unwrap();
        let im = gamma_image(&f, e).unwrap();
        let h = hilbert_function(&f).unwrap();
        let b = generator_counts(&f).unwrap();
        prop_assert_eq!(im.dim(), h[d - e] + b[&(d - e)]);
        let ker_dim = r * e * binomial((r - 1 + e) as i64, (e + 1) as i64) as usize + r * ann_space(&f, e + 1).dim();
        prop_assert_eq!(space.dim() - im.dim(), ker_dim);
        let g = g_space(&f, e);
        prop_assert_eq!(im.basis(), g.basis());
    }

    #[test]
    fn graded_products(seed in 0u64..1_000_000, r in 1usize..4, d in 3usize..6, a in 0usize..2, b in 0usize..2) {
        let f = random_form(seed, r, d);
        prop_assume!(!f.is_zero() && a + b + 3 <= d);
        let ma = graded_mf(&f, a).unwrap();
        let mb = graded_mf(&f, b).unwrap();
        let mab = graded_mf(&f, a + b).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed + 3);
        let x = &ma.basis[rng.gen_range(0..ma.dim())];
        let y = &mb.basis[rng.gen_range(0..mb.dim())];
        let xy = x.mul(y);
        prop_assert!(mab.contains(&xy));
        let grad = f.gradient();
        prop_assert_eq!(xy.apply(&grad), y.mul(x).apply(&grad));
    }
}
