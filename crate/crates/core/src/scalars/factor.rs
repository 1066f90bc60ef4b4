//! Factorization of squarefree univariate polynomials over F_p and Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{PrimeField, Rationals};
use super::matrix::{kernel_basis, Matrix};
use super::upoly::UPoly;

/// Monic irreducible factors of a squarefree polynomial over F_p (Berlekamp).
pub fn factor_prime_field(f: &UPoly<PrimeField>) -> Vec<UPoly<PrimeField>> {
    let k = *f.field();
    let f = f.monic();
    let n = f.deg();
    if n <= 1 {
        return if n == 1 { vec![f] } else { vec![] };
    }
    let p = k.modulus();
    // Rows of Q: t^(ip) mod f.
    let x = UPoly::monomial(&k, 1);
    let xp = x.powmod(p as u128, &f);
    let mut q = Matrix::zeros(&k, n, n);
    let mut cur = UPoly::one(&k);
    for i in 0..n {
        for j in 0..n {
            q.set(i, j, cur.coeff(j));
        }
        cur = cur.mulmod(&xp, &f);
    }
    let qi = q.sub(&Matrix::identity(&k, n)).transpose();
    let basis: Vec<UPoly<PrimeField>> = kernel_basis(&qi)
        .into_iter()
        .map(|v| UPoly::new(&k, v))
        .collect();
    let count = basis.len();
    let mut factors = vec![f.clone()];
    if count == 1 {
        return factors;
    }
    if p <= 64 {
        for v in basis.iter().filter(|v| v.deg() > 0) {
            let mut next = Vec::new();
            for u in factors {
                let mut pending = vec![u];
                for s in 0..p {
                    let vs = v.sub(&UPoly::constant(&k, s));
                    let mut still = Vec::new();
                    for w in pending {
                        let g = w.gcd(&vs);
                        if g.deg() > 0 && g.deg() < w.deg() {
                            still.push(w.div_exact(&g).monic());
                            next.push(g);
                        } else {
                            still.push(w);
                        }
                    }
                    pending = still;
                }
                next.extend(pending);
            }
            factors = next;
            if factors.len() == count {
                break;
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
        let e = ((p - 1) / 2) as u128;
        while factors.len() < count {
            let mut w = UPoly::zero(&k);
            for v in &basis {
                w = w.add(&v.scale(&rng.gen_range(0..p)));
            }
            let mut next = Vec::new();
            for u in factors {
                if u.deg() <= 1 {
                    next.push(u);
                    continue;
                }
                let h = w.powmod(e, &u).sub(&UPoly::one(&k));
                let g = u.gcd(&h);
                if g.deg() > 0 && g.deg() < u.deg() {
                    next.push(u.div_exact(&g).monic());
                    next.push(g);
                } else {
                    next.push(u);
                }
            }
            factors = next;
        }
    }
    factors.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    factors
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zcontent(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn zprimitive(a: &ZPoly) -> ZPoly {
    let c = zcontent(a);
    if c.is_zero() {
        return a.clone();
    }
    let mut out: ZPoly = a.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|l| l.is_negative()) {
        out = out.iter().map(|x| -x).collect();
    }
    out
}

/// Exact division over Z, if possible.
fn zdiv(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let mut r = a.clone();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    if ztrim(r).is_empty() {
        Some(ztrim(q))
    } else {
        None
    }
}

fn to_fp(k: &PrimeField, a: &ZPoly) -> UPoly<PrimeField> {
    UPoly::new(k, a.iter().map(|c| k.from_bigint(c)).collect())
}

fn modp(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| modp(c, m)).collect())
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = modp(c, m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn lift_fp(a: &UPoly<PrimeField>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift F = lc * prod(factors) mod p to a factorization mod p^k with monic factors.
fn hensel(fpoly: &ZPoly, factors: &[UPoly<PrimeField>], k: &PrimeField, pk: &BigInt, e: u32) -> Vec<ZPoly> {
    let p = BigInt::from(k.modulus());
    if factors.len() == 1 {
        let lc = fpoly.last().unwrap();
        let inv = lc.modinv(pk).expect("leading coefficient invertible");
        return vec![zmod(&fpoly.iter().map(|c| c * &inv).collect(), pk)];
    }
    let mid = factors.len() / 2;
    let (left, right) = factors.split_at(mid);
    let lcp = k.from_bigint(fpoly.last().unwrap());
    let mut g0 = UPoly::constant(k, lcp);
    for u in left {
        g0 = g0.mul(u);
    }
    let mut h0 = UPoly::one(k);
    for u in right {
        h0 = h0.mul(u);
    }
    let (one, s, _t) = g0.ext_gcd(&h0);
    assert!(one.is_one(), "Hensel factors not coprime");
    let mut g = lift_fp(&g0);
    let mut h = lift_fp(&h0);
    let mut pj = p.clone();
    for _ in 1..e {
        let diff = zmod(
            &{
                let gh = zmul(&g, &h);
                let n = fpoly.len().max(gh.len());
                (0..n)
                    .map(|i| fpoly.get(i).cloned().unwrap_or_default() - gh.get(i).cloned().unwrap_or_default())
                    .collect::<ZPoly>()
            },
            pk,
        );
        let ep: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let ef = to_fp(k, &ep);
        let dh = ef.mul(&s).rem(&h0);
        let dg = ef.sub(&dh.mul(&g0)).div_exact(&h0);
        let dg_z = lift_fp(&dg);
        let dh_z = lift_fp(&dh);
        let n = g.len().max(dg_z.len());
        g = zmod(
            &(0..n)
                .map(|i| g.get(i).cloned().unwrap_or_default() + &pj * dg_z.get(i).cloned().unwrap_or_default())
                .collect(),
            pk,
        );
        let n = h.len().max(dh_z.len());
        h = zmod(
            &(0..n)
                .map(|i| h.get(i).cloned().unwrap_or_default() + &pj * dh_z.get(i).cloned().unwrap_or_default())
                .collect(),
            pk,
        );
        pj *= &p;
    }
    let mut out = hensel(&g, left, k, pk, e);
    out.extend(hensel(&h, right, k, pk, e));
    out
}

fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(0, n, size, &mut cur, &mut out);
    out
}

/// Irreducible factors over Z of a squarefree primitive integer polynomial.
fn factor_integer(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![zprimitive(f)];
    }
    let deriv: ZPoly = f.iter().enumerate().skip(1).map(|(i, c)| c * i).collect();
    let mut prime = 3u64;
    let k = loop {
        if super::field::is_prime(prime) && !(f.last().unwrap() % prime).is_zero() {
            let k = PrimeField::new(prime).unwrap();
            let fp = to_fp(&k, f);
            if fp.deg() == n && fp.gcd(&to_fp(&k, &deriv)).deg() == 0 {
                break k;
            }
        }
        prime += 2;
    };
    let modular = factor_prime_field(&to_fp(&k, f));
    if modular.len() <= 1 {
        return vec![zprimitive(f)];
    }
    // Coefficient bound for factors: 2^n * ||f||_2, times the leading coefficient.
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let lc = f.last().unwrap().abs();
    let bound = (BigInt::one() << n) * norm2 * &lc * 2;
    let p = BigInt::from(k.modulus());
    let mut pk = p.clone();
    let mut e = 1u32;
    while pk <= bound {
        pk *= &p;
        e += 1;
    }
    let mut lifted = hensel(f, &modular, &k, &pk, e);
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for s in subsets(lifted.len(), size) {
            let a = rest.last().unwrap().clone();
            let mut g: ZPoly = vec![a];
            for &i in &s {
                g = zmod(&zmul(&g, &lifted[i]), &pk);
            }
            let g = zprimitive(&symmetric(&g, &pk));
            if let Some(q) = zdiv(&rest, &g) {
                out.push(g);
                rest = zprimitive(&q);
                let keep: Vec<ZPoly> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !s.contains(i))
                    .map(|(_, x)| x.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    out.push(zprimitive(&rest));
    out
}

/// Monic irreducible factors over Q of a squarefree polynomial.
pub fn factor_rational(f: &UPoly<Rationals>) -> Vec<UPoly<Rationals>> {
    let q = Rationals;
    if f.deg() == 0 {
        return Vec::new();
    }
    let den = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z: ZPoly = f
        .coeffs()
        .iter()
        .map(|c| (c * BigRational::from_integer(den.clone())).to_integer())
        .collect();
    let z = zprimitive(&z);
    let mut out: Vec<UPoly<Rationals>> = factor_integer(&z)
        .into_iter()
        .map(|g| UPoly::new(&q, g.into_iter().map(BigRational::from_integer).collect()).monic())
        .collect();
    out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
    out
}
