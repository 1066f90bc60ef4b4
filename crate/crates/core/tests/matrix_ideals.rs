use dpsplit::apolarity::ann_space;
use dpsplit::forms::*;
use dpsplit::matrix_algebra::{compute_mf, in_mf, MatrixAlgebraSpace};
use dpsplit::matrix_ideals::*;
use dpsplit::scalars::{Field, Matrix, PrimeField, Rationals, RowSpace};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q() -> Rationals {
    Rationals
}

fn mat(rows: &[Vec<i64>]) -> Matrix<Rationals> {
    Matrix::from_i64(&Rationals, rows)
}

fn op(r: usize, s: &str) -> DiffOp<Rationals> {
    parse_op(&Rationals, Some(r), s).unwrap()
}

fn form(r: usize, s: &str) -> DPForm<Rationals> {
    parse_form(&Rationals, Some(r), s).unwrap()
}

fn span_of<F: Field>(field: &F, n: usize, items: &[Vec<F::Elem>]) -> RowSpace<F> {
    RowSpace::from_vectors(field, n, items.to_vec())
}

fn same_span<F: Field>(a: &RowSpace<F>, b: &RowSpace<F>) -> bool {
    a.dim() == b.dim() && a.contains_space(b)
}

fn ops_span(r: usize, e: usize, ops: &[DiffOp<Rationals>]) -> RowSpace<Rationals> {
    span_of(&q(), monomial_count(r, e), &ops.iter().map(|o| o.to_vector()).collect::<Vec<_>>())
}

fn forms_span<F: Field>(field: &F, r: usize, e: usize, fs: &[DPForm<F>]) -> RowSpace<F> {
    span_of(field, monomial_count(r, e), &fs.iter().map(|o| o.to_vector()).collect::<Vec<_>>())
}

/// Value of a polynomial at a point.
fn eval<F: Field>(field: &F, p: &DiffOp<F>, v: &[F::Elem]) -> F::Elem {
    let mut acc = field.zero();
    for (alpha, c) in p.terms() {
        let mut t = c.clone();
        for (x, &a) in v.iter().zip(alpha) {
            for _ in 0..a {
                t = field.mul(&t, x);
            }
        }
        acc = field.add(&acc, &t);
    }
    acc
}

fn jordan3() -> Matrix<Rationals> {
    mat(&[vec![0, 1, 0], vec![0, 0, 1], vec![0, 0, 0]])
}

#[test]
fn ideals_of_small_sets() {
    let k = q();
    let swap = mat(&[vec![0, 1], vec![1, 0]]);
    let i = ideal_of(&k, 2, &[Matrix::identity(&k, 2), swap]).unwrap();
    assert!(same_span(&i.piece(2), &ops_span(2, 2, &[op(2, "d1^2 - d2^2")])));
    assert!(ideal_of(&k, 2, &[Matrix::identity(&k, 2)]).unwrap().is_zero());

    let a = jordan3();
    let alg = [Matrix::identity(&k, 3), a.clone(), a.mul(&a)];
    let i = ideal_of(&k, 3, &alg).unwrap();
    let expected = ops_span(3, 2, &[op(3, "d3^2"), op(3, "d2 d3"), op(3, "d1 d3 - d2^2")]);
    assert!(same_span(&i.piece(2), &expected));
    for d in 3..6 {
        let f = form(3, &format!("x1^({}) x3 + x1^({}) x2^(2)", d - 1, d - 2));
        assert!(same_span(&i.piece(2), &ann_space(&f, 2)));
    }
    assert!(i.contains(&op(3, "d2^3")));
    assert!(!i.contains(&op(3, "d1^2")));
    assert!(ideal_of(&k, 3, &[Matrix::identity(&k, 2)]).is_err());
}

#[test]
fn inverse_systems() {
    let k = q();
    let swap = mat(&[vec![0, 1], vec![1, 0]]);
    let ms = [Matrix::identity(&k, 2), swap];
    let x3 = x_space(&k, 2, &ms, 3).unwrap();
    let expected = [form(2, "x1^(3) + x1 x2^(2)"), form(2, "x1^(2) x2 + x2^(3)")];
    assert!(same_span(&forms_span(&k, 2, 3, &x3), &forms_span(&k, 2, 3, &expected)));
    for f in &x3 {
        assert!(ms.iter().all(|m| in_mf(f, m)));
    }
    assert_eq!(x_space(&k, 3, &[Matrix::identity(&k, 3)], 4).unwrap().len(), monomial_count(3, 4));

    let a1 = mat(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
    let a2 = mat(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
    for d in 2..6 {
        let xd = x_space(&k, 3, &[a1.clone(), a2.clone()], d).unwrap();
        let expected = [
            form(3, &format!("x1^({d})")),
            form(3, &format!("x1^({}) x2", d - 1)),
            form(3, &format!("x1^({}) x3", d - 1)),
        ];
        assert!(same_span(&forms_span(&k, 3, d, &xd), &forms_span(&k, 3, d, &expected)));
    }
    for d in 3..6 {
        assert!(check_x_recursion(&k, 3, &[Matrix::identity(&k, 3), jordan3()], d).unwrap());
        assert!(check_x_recursion(&k, 3, &[a1.clone(), a2.clone()], d).unwrap());
    }
}

#[test]
fn closure_reports() {
    let k = q();
    let id = Matrix::identity(&k, 3);
    let e = mat(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 0]]);
    let rep = closure_identities(&k, 3, &[id.clone(), e], DEFAULT_BOUND).unwrap();
    assert!(rep.closed && rep.agree_in_degree_2 && rep.holds());
    let rep = closure_identities(&k, 3, &[id.clone(), jordan3()], DEFAULT_BOUND).unwrap();
    assert!(!rep.closed && rep.holds());
    assert!(closure_identities(&k, 3, &[jordan3()], 4).is_err());

    // three matrices whose pairwise minors add new quadrics
    let b = mat(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 0, 0]]);
    let ms = [id.clone(), jordan3(), b.clone()];
    let rep = closure_identities(&k, 3, &ms, 4).unwrap();
    assert!(rep.holds());
    let i = ideal_of(&k, 3, &ms).unwrap();
    let ci = check_ideal(&k, 3, &ms).unwrap();
    assert!(ci.piece(2).contains_space(&i.piece(2)));
    for e in 3..5 {
        assert!(same_span(&i.piece(e), &ci.piece(e)));
    }

    // the algebra generated by two matrices versus the stacked minors
    let gen = MatrixAlgebraSpace::new(&k, 3, &[id, jordan3(), b.clone()]).generated_algebra();
    let alg = ideal_of(&k, 3, gen.basis()).unwrap();
    let stacked = stacked_minor_ideal(&k, 3, &[jordan3(), b]).unwrap();
    for e in 2..5 {
        assert!(same_span(&alg.piece(e), &stacked.piece(e)));
    }
}

#[test]
fn eigen_loci() {
    let k = q();
    let loc = eigen_locus(&k, 3, &[Matrix::identity(&k, 3)]).unwrap();
    assert!(loc.full_space);
    let loc = eigen_locus(&k, 2, &[mat(&[vec![1, 0], vec![0, 2]])]).unwrap();
    assert_eq!(loc.pieces.len(), 2);
    assert!(loc.pieces.iter().all(|p| p.dim() == 1));
    assert!(loc.contains(&[k.one(), k.zero()]) && loc.contains(&[k.zero(), k.one()]));
    assert!(!loc.contains(&[k.one(), k.one()]));
    let loc = eigen_locus(&k, 2, &[mat(&[vec![0, 1], vec![0, 0]])]).unwrap();
    assert_eq!(loc.pieces.len(), 1);
    assert!(loc.contains(&[k.one(), k.zero()]));
    let loc = eigen_locus(&k, 2, &[mat(&[vec![0, -1], vec![1, 0]])]).unwrap();
    assert!(loc.pieces.is_empty() && loc.requires_extension);
}

#[test]
fn uv_examples() {
    let k = q();
    let d = 4;
    // B_1, B_2 rank one: d_3 annihilates f
    let b1 = mat(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
    let b2 = mat(&[vec![0, 0, 0], vec![0, 0, 1], vec![0, 0, 0]]);
    let xs = x_space(&k, 3, &[b1.clone(), b2.clone()], d).unwrap();
    let mut f = DPForm::zero(&k, 3, d);
    for (i, g) in xs.iter().enumerate() {
        f = f.add(&g.scale(&k.from_i64(i as i64 + 1)));
    }
    let rep = uv_obstruction(&f, &[], &[b1.clone(), b2.clone()]).unwrap();
    assert!(rep.case_a && rep.obstruction());
    assert!(ops_span(3, 1, &rep.linear_annihilator).contains(&op(3, "d3").to_vector()));
    assert!(!rep.products.is_empty());

    // A_1, A_2 with f in x1^[d-1] times linear forms
    let a1 = mat(&[vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]]);
    let a2 = mat(&[vec![0, 0, 1], vec![0, 0, 0], vec![0, 0, 0]]);
    let f = form(3, "2 x1^(4) + x1^(3) x2 - 3 x1^(3) x3");
    let rep = uv_obstruction(&f, &[a1.clone(), a2.clone()], &[]).unwrap();
    assert!(rep.case_b && !rep.case_a);
    assert_eq!((rep.u.dim(), rep.v.dim()), (2, 2));
    assert_eq!(rep.linear_annihilator.len(), 1);
    let ann2 = ann_space(&f, 2);
    for p in &rep.products {
        assert!(ann2.contains(&p.to_vector()));
    }

    let f = form(3, "x1^(4) + x2^(4) + x3^(4)");
    let rep = uv_obstruction(&f, &[], &[]).unwrap();
    assert!(rep.products.is_empty() && !rep.obstruction());
    assert_eq!(uv_obstruction(&f, &[a1], &[]).unwrap_err(), dpsplit::Error::NotInMf);
}

#[test]
fn regular_decompositions() {
    let k = q();
    let a = jordan3();
    let single = MatrixAlgebraSpace::new(&k, 3, &[Matrix::identity(&k, 3), a.clone(), a.mul(&a)]);
    let rep = regular_decomposition_check(&single, 4, 1).unwrap();
    assert_eq!(rep.idempotents.len(), 1);
    assert!(rep.holds());

    let e1 = mat(&[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]]);
    let n1 = mat(&[vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 0]]);
    let e2 = mat(&[vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    let n2 = mat(&[vec![0, 0, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, 0, 0]]);
    let two = MatrixAlgebraSpace::new(&k, 4, &[e1, n1, e2, n2]);
    let rep = regular_decomposition_check(&two, 5, 2).unwrap();
    assert_eq!(rep.idempotents.len(), 2);
    assert!(rep.holds(), "{:?}", rep.degrees);
    // each block contributes K[x, y]/(y^2)-like pieces of dimension 2 from degree 1 on
    for deg in &rep.degrees {
        assert_eq!(deg.quotient.1, vec![2, 2]);
    }

    let f = form(3, "x1 x2^(2) + x2 x3^(2) + x3^(3)");
    let mf = compute_mf(&f).unwrap();
    let rep = regular_decomposition_check(&mf, 3, 3).unwrap();
    assert_eq!(rep.idempotents.len(), 2);
    assert!(rep.holds());
    assert!(regular_decomposition_check(&MatrixAlgebraSpace::new(&k, 3, &[jordan3()]), 3, 0).is_err());
}

fn random_matrix_set<R: Rng>(k: &PrimeField, r: usize, rng: &mut R) -> Vec<Matrix<PrimeField>> {
    let n = rng.gen_range(1..3);
    let mut ms = vec![Matrix::identity(k, r)];
    for _ in 0..n {
        // low rank matrices keep X(M) nonzero
        let a = Matrix::random(k, r, 1, rng).mul(&Matrix::random(k, 1, r, rng));
        ms.push(a);
    }
    ms
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn membership_matches_ideal(seed in 0u64..1_000_000, r in 2usize..4, d in 2usize..5) {
        let k = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = random_matrix_set(&k, r, &mut rng);
        let ideal = ideal_of(&k, r, &ms).unwrap();
        let xs = x_space(&k, r, &ms, d).unwrap();
        let mut inside = DPForm::zero(&k, r, d);
        for g in &xs {
            inside = inside.add(&g.scale(&k.random_elem(&mut rng)));
        }
        for f in [inside, DPForm::random(&k, r, d, &mut rng)] {
            if f.is_zero() {
                continue;
            }
            let all_in = ms.iter().all(|m| in_mf(&f, m));
            let contained = ann_space(&f, 2).contains_space(&ideal.piece(2));
            prop_assert_eq!(all_in, contained);
        }
        // I(M)_e is the common annihilator of X_e(M)
        for e in 2..=d {
            let xe = x_space(&k, r, &ms, e).unwrap();
            let mut common = RowSpace::from_vectors(&k, monomial_count(r, e), (0..monomial_count(r, e)).map(|i| (0..monomial_count(r, e)).map(|j| if i == j { k.one() } else { k.zero() }).collect()).collect());
            for g in &xe {
                let a = ann_space(g, e);
                let mut perps = common.complement();
                perps.extend(a.complement());
                common = RowSpace::from_vectors(&k, monomial_count(r, e), RowSpace::from_vectors(&k, monomial_count(r, e), perps).complement());
            }
            prop_assert!(same_span(&common, &ideal.piece(e)));
        }
    }

    #[test]
    fn squares_land_in_degree_three(seed in 0u64..1_000_000, r in 2usize..4) {
        let k = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut ms = vec![Matrix::identity(&k, r)];
        for _ in 0..2 {
            ms.push(Matrix::random(&k, r, r, &mut rng));
        }
        let squares: Vec<Matrix<PrimeField>> = ms.iter().flat_map(|a| ms.iter().map(move |b| a.mul(b))).collect();
        let i = ideal_of(&k, r, &ms).unwrap();
        let isq = ideal_of(&k, r, &squares).unwrap();
        for e in 3..5 {
            prop_assert!(i.piece(e).contains_space(&isq.piece(e)));
        }
        prop_assert!(closure_identities(&k, r, &ms, 4).unwrap().holds());
    }

    #[test]
    fn eigen_locus_is_zero_set(seed in 0u64..1_000_000, r in 2usize..4) {
        let k = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // diagonalizable with small integer eigenvalues, conjugated
        let p = loop {
            let p = Matrix::random(&k, r, r, &mut rng);
            if p.inverse().is_some() {
                break p;
            }
        };
        let pinv = p.inverse().unwrap();
        let mut diag = Matrix::zeros(&k, r, r);
        for i in 0..r {
            diag.set(i, i, k.from_i64(rng.gen_range(0..2)));
        }
        let a = p.mul(&diag).mul(&pinv);
        let ms = [a];
        let loc = eigen_locus(&k, r, &ms).unwrap();
        let ideal = ideal_of(&k, r, &ms).unwrap();
        for _ in 0..10 {
            // points of each piece and random points
            let v: Vec<_> = if rng.gen_bool(0.5) && !loc.pieces.is_empty() {
                let piece = &loc.pieces[rng.gen_range(0..loc.pieces.len())];
                let mut v = vec![k.zero(); r];
                for b in piece.basis() {
                    let c = k.random_elem(&mut rng);
                    for (x, y) in v.iter_mut().zip(b) {
                        *x = k.add(x, &k.mul(&c, y));
                    }
                }
                v
            } else {
                (0..r).map(|_| k.random_elem(&mut rng)).collect()
            };
            if v.iter().all(|x| k.is_zero(x)) {
                continue;
            }
            let vanish = ideal.generators.iter().all(|g| k.is_zero(&eval(&k, g, &v)));
            prop_assert_eq!(vanish, loc.contains(&v));
        }
    }

    #[test]
    fn uv_products_annihilate(seed in 0u64..1_000_000, d in 3usize..5) {
        let k = PrimeField::new(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let r = 3;
        let ms = random_matrix_set(&k, r, &mut rng);
        let xs = x_space(&k, r, &ms, d).unwrap();
        let mut f = DPForm::zero(&k, r, d);
        for g in &xs {
            f = f.add(&g.scale(&k.random_elem(&mut rng)));
        }
        prop_assume!(!f.is_zero());
        let mf = compute_mf(&f).unwrap();
        let a: Vec<Matrix<PrimeField>> = (0..rng.gen_range(0..3)).map(|_| mf.random_element(&mut rng)).collect();
        let b: Vec<Matrix<PrimeField>> = (0..rng.gen_range(0..3)).map(|_| mf.random_element(&mut rng)).collect();
        let rep = uv_obstruction(&f, &a, &b).unwrap();
        let ann2 = ann_space(&f, 2);
        for p in &rep.products {
            prop_assert!(ann2.contains(&p.to_vector()));
        }
        if rep.obstruction() {
            prop_assert!(!rep.linear_annihilator.is_empty());
        }
    }
}
