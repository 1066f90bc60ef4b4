use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::upoly::UPoly;
use crate::error::{Error, Result};

/// An exact field whose elements are plain values and whose operations are
/// methods on a (possibly runtime-parameterised) field descriptor.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// A small random element (integers in a short range over Q, uniform over F_p).
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn fmt_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;
    /// Short name used in documents: "Q", "F7", ...
    fn name(&self) -> String;

    /// Irreducible factors of a monic squarefree polynomial, when the field
    /// supports factorization.
    fn factor_squarefree(&self, _f: &UPoly<Self>) -> Option<Vec<UPoly<Self>>> {
        None
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, &self.one()))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn pow(&self, a: &Self::Elem, mut n: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            n >>= 1;
        }
        acc
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// The rational numbers with arbitrary precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.gen_range(-9..=9))
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let bad = || Error::Other(format!("invalid rational '{s}'"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(n, d))
            }
            None => {
                let n: BigInt = s.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(n))
            }
        }
    }
    fn name(&self) -> String {
        "Q".to_string()
    }
    fn factor_squarefree(&self, f: &UPoly<Self>) -> Option<Vec<UPoly<Self>>> {
        Some(super::factor::factor_rational(f))
    }
}

/// The prime field F_p for a machine-word prime p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < (1 << 62) && is_prime(p) {
            Ok(PrimeField { p })
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn reduce_i128(&self, n: i128) -> u64 {
        n.rem_euclid(self.p as i128) as u64
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        r.to_u64().unwrap()
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.reduce_i128(n as i128)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(pow_mod(*a, self.p - 2, self.p))
        }
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn fmt_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        let q = Rationals.parse_elem(s)?;
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.div(&n, &d)
            .ok_or_else(|| Error::Other(format!("denominator of '{s}' vanishes mod {}", self.p)))
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn factor_squarefree(&self, f: &UPoly<Self>) -> Option<Vec<UPoly<Self>>> {
        Some(super::factor::factor_prime_field(f))
    }
}

/// Binomial coefficient with C(a, b) = 0 unless 0 <= b <= a.
pub fn binomial(a: i64, b: i64) -> i64 {
    if b < 0 || a < 0 || b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut acc: i128 = 1;
    for i in 0..b {
        acc = acc * (a - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}
