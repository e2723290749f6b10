//! Arithmetic over F_q, q = p^k with p an odd prime.
//!
//! Elements are identified with their rank in `0..q`: the base-p digits of
//! the rank are the coefficients (constant term first) of the residue
//! polynomial modulo the field's defining polynomial. Rank 0 is zero, rank 1
//! is one and, for k > 1, rank p is the canonical generator t.
//!
//! A [`Field`] is an `Arc` handle, so cloning is cheap and the value can be
//! shared freely between threads.

pub mod poly;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{KakeyaError, Result};

/// Fields up to this order get exp/log and quadratic-character tables.
const TABLE_LIMIT: u64 = 1 << 20;
/// Extension fields up to this order also get a full addition table.
const ADD_TABLE_LIMIT: u64 = 1 << 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn rank(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Value of the quadratic character: -1, 0 or +1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QuadChar {
    NonSquare,
    Zero,
    Square,
}

impl QuadChar {
    pub fn value(self) -> i64 {
        match self {
            QuadChar::NonSquare => -1,
            QuadChar::Zero => 0,
            QuadChar::Square => 1,
        }
    }

    pub fn from_value(v: i64) -> QuadChar {
        match v.signum() {
            -1 => QuadChar::NonSquare,
            0 => QuadChar::Zero,
            _ => QuadChar::Square,
        }
    }
}

impl std::ops::Mul for QuadChar {
    type Output = QuadChar;
    fn mul(self, rhs: QuadChar) -> QuadChar {
        QuadChar::from_value(self.value() * rhs.value())
    }
}

#[derive(Debug)]
struct Tables {
    /// exp[i] = g^i for a primitive element g, i in 0..q-1
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] unused
    log: Vec<u32>,
    add: Option<Vec<u32>>,
}

#[derive(Debug)]
struct Inner {
    p: u64,
    k: u32,
    q: u64,
    /// Monic defining polynomial, k + 1 coefficients, only when k > 1.
    modulus: Option<Vec<u64>>,
    tables: Option<Tables>,
    /// Quadratic character per rank, for small fields.
    chi: Option<Vec<i8>>,
}

/// The finite field F_q of odd characteristic.
#[derive(Debug, Clone)]
pub struct Field {
    inner: Arc<Inner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p() == other.p() && self.k() == other.k()
    }
}

impl Eq for Field {}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = poly::pow_mod_p(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = poly::mul_mod_p(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Splits q into (p, k) with q = p^k and p an odd prime.
pub fn odd_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 3 || q.is_multiple_of(2) {
        return None;
    }
    let mut p = 3;
    while p <= q / p {
        if q.is_multiple_of(p) {
            break;
        }
        p += 2;
    }
    if p > q / p {
        // q itself is prime
        return Some((q, 1));
    }
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Factorization of n into distinct primes (trial division).
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d <= n / d {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Builds F_{p^k}. For k > 1 the defining polynomial is the
    /// lexicographically smallest monic irreducible of degree k, comparing
    /// coefficients constant term first.
    pub fn new(p: u64, k: u32) -> Result<Field> {
        if p == 2 || !is_prime(p) {
            return Err(KakeyaError::NonOddPrime(p));
        }
        if k == 0 {
            return Err(KakeyaError::Invalid(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = p
            .checked_pow(k)
            .ok_or_else(|| KakeyaError::Overflow(format!("{p}^{k} does not fit in 64 bits")))?;
        let modulus = (k > 1).then(|| poly::smallest_monic_irreducible(p, k));
        let mut inner = Inner {
            p,
            k,
            q,
            modulus,
            tables: None,
            chi: None,
        };
        if q <= TABLE_LIMIT && k > 1 {
            inner.tables = Some(build_tables(&inner));
        }
        let mut field = Field {
            inner: Arc::new(inner),
        };
        if q <= TABLE_LIMIT {
            let chi = field
                .elements()
                .map(|x| field.chi_by_power(x).value() as i8)
                .collect();
            Arc::get_mut(&mut field.inner).expect("fresh handle").chi = Some(chi);
        }
        Ok(field)
    }

    /// Builds F_q from the field order.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, k) = odd_prime_power(q).ok_or(KakeyaError::NotOddPrimePower(q))?;
        Field::new(p, k)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn k(&self) -> u32 {
        self.inner.k
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// Defining polynomial (constant term first, monic), `None` for prime fields.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.inner.modulus.as_deref()
    }

    pub fn elem(&self, rank: u64) -> Result<FieldElement> {
        if rank < self.q() {
            Ok(FieldElement(rank))
        } else {
            Err(KakeyaError::RankOutOfRange { rank, q: self.q() })
        }
    }

    /// Unchecked constructor for hot loops; `rank` must be below q.
    #[inline]
    pub(crate) fn elem_unchecked(&self, rank: u64) -> FieldElement {
        debug_assert!(rank < self.q());
        FieldElement(rank)
    }

    /// Image of an integer under Z -> F_p -> F_q.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement((n as i128).rem_euclid(self.p() as i128) as u64)
    }

    /// The canonical generator t of the extension (rank p), `None` for k = 1.
    pub fn generator(&self) -> Option<FieldElement> {
        (self.k() > 1).then_some(FieldElement(self.p()))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (0..self.q()).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + Clone {
        (1..self.q()).map(FieldElement)
    }

    /// Base-p digits of the rank, constant coefficient first, length k.
    pub fn digits(&self, x: FieldElement) -> Vec<u64> {
        let p = self.p();
        let mut r = x.0;
        (0..self.k())
            .map(|_| {
                let d = r % p;
                r /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> FieldElement {
        let p = self.p();
        FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * p + d % p))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.k == 1 {
            let s = a.0 as u128 + b.0 as u128;
            let p = inner.p as u128;
            return FieldElement(if s >= p { (s - p) as u64 } else { s as u64 });
        }
        if let Some(Tables { add: Some(t), .. }) = &inner.tables {
            return FieldElement(t[(a.0 * inner.q + b.0) as usize] as u64);
        }
        self.add_digits(a, b)
    }

    fn add_digits(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p();
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.k() {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k() == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p() - a.0 });
        }
        let p = self.p();
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1u64;
        for _ in 0..self.k() {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let inner = &*self.inner;
        if inner.k == 1 {
            return FieldElement(poly::mul_mod_p(a.0, b.0, inner.p));
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if let Some(t) = &inner.tables {
            let n = (inner.q - 1) as usize;
            let mut e = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
            if e >= n {
                e -= n;
            }
            return FieldElement(t.exp[e] as u64);
        }
        self.mul_poly(a, b)
    }

    fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let m = self.modulus().expect("extension field");
        let prod = poly::mul_mod(
            &poly::trim(self.digits(a)),
            &poly::trim(self.digits(b)),
            m,
            self.p(),
        );
        self.from_digits(&prod)
    }

    #[inline]
    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(KakeyaError::DivisionByZero);
        }
        if let Some(t) = &self.inner.tables {
            let n = (self.q() - 1) as usize;
            let l = t.log[a.0 as usize] as usize;
            return Ok(FieldElement(t.exp[(n - l) % n] as u64));
        }
        Ok(self.pow(a, self.q() - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character via Euler's criterion x^((q-1)/2).
    pub fn quadratic_character(&self, x: FieldElement) -> QuadChar {
        match &self.inner.chi {
            Some(table) => QuadChar::from_value(table[x.0 as usize] as i64),
            None => self.chi_by_power(x),
        }
    }

    fn chi_by_power(&self, x: FieldElement) -> QuadChar {
        if x.is_zero() {
            return QuadChar::Zero;
        }
        if self.pow(x, (self.q() - 1) / 2) == FieldElement::ONE {
            QuadChar::Square
        } else {
            QuadChar::NonSquare
        }
    }

    /// Square or zero.
    #[inline]
    pub fn is_square(&self, x: FieldElement) -> bool {
        self.quadratic_character(x) != QuadChar::NonSquare
    }

    /// The nonsquare of smallest rank.
    pub fn smallest_nonsquare(&self) -> FieldElement {
        self.nonzero_elements()
            .find(|&x| self.quadratic_character(x) == QuadChar::NonSquare)
            .expect("odd-order fields have nonsquares")
    }
}

fn build_tables(inner: &Inner) -> Tables {
    let field = Field {
        inner: Arc::new(Inner {
            p: inner.p,
            k: inner.k,
            q: inner.q,
            modulus: inner.modulus.clone(),
            tables: None,
            chi: None,
        }),
    };
    let q = inner.q;
    let order = q - 1;
    let factors = prime_factors(order);
    let g = (2..q)
        .map(FieldElement)
        .find(|&g| {
            factors
                .iter()
                .all(|&l| field.pow(g, order / l) != FieldElement::ONE)
        })
        .expect("multiplicative group is cyclic");
    let mut exp = Vec::with_capacity(order as usize);
    let mut log = vec![0u32; q as usize];
    let mut x = FieldElement::ONE;
    for i in 0..order {
        exp.push(x.0 as u32);
        log[x.0 as usize] = i as u32;
        x = field.mul_poly(x, g);
    }
    let add = (q <= ADD_TABLE_LIMIT).then(|| {
        let mut t = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                t.push(field.add_digits(FieldElement(a), FieldElement(b)).0 as u32);
            }
        }
        t
    });
    Tables { exp, log, add }
}
