//! Exact arithmetic in GF(p^m) for small prime powers.
//!
//! Elements are encoded as integers in `[0, q)` whose base-`p` digits
//! (little-endian) are the coefficients of the representative polynomial
//! modulo the field's modulus. A [`Field`] is a cheap, shareable handle
//! (`Arc` inside); hot loops work directly on `u32` encodings through the
//! `Field` methods, while [`FieldElement`] pairs an encoding with its field
//! for checked, operator-style use.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted by [`Field`] constructors.
pub const MAX_ORDER: u32 = 1 << 16;

/// Add tables are materialised up to this order (q² entries).
const ADD_TABLE_MAX_ORDER: u32 = 256;

/// Raw element encoding.
pub type Elem = u32;

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
    sqrt: Vec<Option<u32>>,
    add: Option<Vec<u16>>,
}

/// A finite field GF(p^m) with an explicit monic irreducible modulus.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over GF(p). Both are
/// little-endian coefficient lists.
fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (i, &c) in b.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Monic polynomial of degree `deg` whose lower coefficients are the base-`p`
/// digits of `index`.
fn monic_from_index(index: u32, deg: u32, p: u32) -> Vec<u32> {
    let mut coeffs = Vec::with_capacity(deg as usize + 1);
    let mut v = index;
    for _ in 0..deg {
        coeffs.push(v % p);
        v /= p;
    }
    coeffs.push(1);
    coeffs
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() as u32 - 1;
    if m <= 1 {
        return m == 1;
    }
    for d in 1..=m / 2 {
        for idx in 0..p.pow(d) {
            let divisor = monic_from_index(idx, d, p);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `m`,
/// ordered by the integer whose base-`p` digits are the lower coefficients.
fn default_modulus(p: u32, m: u32) -> Vec<u32> {
    if m == 1 {
        return vec![0, 1];
    }
    (0..p.pow(m))
        .map(|idx| monic_from_index(idx, m, p))
        .find(|poly| is_irreducible(poly, p))
        .expect("irreducible polynomials exist in every degree")
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(v % p);
        v /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn slow_add(a: u32, b: u32, p: u32, m: u32) -> u32 {
    if p == 2 {
        return a ^ b;
    }
    if m == 1 {
        return (a + b) % p;
    }
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn slow_mul(a: u32, b: u32, p: u32, m: u32, modulus: &[u32]) -> u32 {
    if m == 1 {
        return (a as u64 * b as u64 % p as u64) as u32;
    }
    let da = digits(a, p, m);
    let db = digits(b, p, m);
    let mut prod = vec![0u32; 2 * m as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    let r = poly_rem(&prod, modulus, p);
    undigits(&r, p)
}

impl Field {
    /// GF(p^m) with the default modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::check_order(p, m)?;
        let modulus = default_modulus(p, m);
        Self::build(p, m, modulus)
    }

    /// GF(q) for a prime power `q`, default modulus.
    pub fn from_order(q: u32) -> Result<Self> {
        let p = (2..=q.max(2))
            .find(|d| q.is_multiple_of(*d))
            .ok_or_else(|| Error::InvalidField(format!("order {q} is not a prime power")))?;
        let mut m = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 || q < 2 {
            return Err(Error::InvalidField(format!(
                "order {q} is not a prime power"
            )));
        }
        Self::new(p, m)
    }

    /// GF(p^m) with an explicit modulus `c0, c1, ..., cm` (constant term
    /// first). The modulus must be monic and irreducible over GF(p).
    pub fn with_modulus(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let m = modulus.len() as u32 - 1;
        Self::check_order(p, m)?;
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!(
                "modulus coefficients must lie in [0, {p})"
            )));
        }
        if *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if m == 1 {
            // Arithmetic is plain mod-p; any monic linear modulus is normalised.
            return Self::build(p, 1, vec![0, 1]);
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over GF({p})"
            )));
        }
        Self::build(p, m, modulus)
    }

    fn check_order(p: u32, m: u32) -> Result<()> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not prime"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidField("extension degree must be >= 1".into()));
        }
        match p.checked_pow(m) {
            Some(q) if q <= MAX_ORDER => Ok(()),
            _ => Err(Error::InvalidField(format!(
                "field order {p}^{m} exceeds the supported maximum {MAX_ORDER}"
            ))),
        }
    }

    fn build(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self> {
        let q = p.pow(m);
        let order = q - 1;

        // Find a generator of the multiplicative group.
        let mut exp = Vec::new();
        for g in 1..q.max(2) {
            if q == 2 {
                exp = vec![1];
                break;
            }
            let mut powers = Vec::with_capacity(order as usize);
            let mut x = 1u32;
            loop {
                powers.push(x);
                x = slow_mul(x, g, p, m, &modulus);
                if x == 1 {
                    break;
                }
            }
            if powers.len() as u32 == order {
                exp = powers;
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();

        let neg: Vec<u32> = (0..q)
            .map(|v| {
                let d: Vec<u32> = digits(v, p, m).into_iter().map(|c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let inv: Vec<u32> = (0..q)
            .map(|v| {
                if v == 0 {
                    0
                } else {
                    exp[((order - log[v as usize]) % order) as usize]
                }
            })
            .collect();

        let mut sqrt = vec![None; q as usize];
        for y in 0..q {
            let sq = if y == 0 {
                0
            } else {
                doubled[2 * log[y as usize] as usize]
            };
            // ascending y, so the first root recorded is the smaller encoding
            if sqrt[sq as usize].is_none() {
                sqrt[sq as usize] = Some(y);
            }
        }

        let add = (q <= ADD_TABLE_MAX_ORDER).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = slow_add(a, b, p, m) as u16;
                }
            }
            t
        });

        Ok(Field(Arc::new(FieldInner {
            p,
            m,
            q,
            modulus,
            exp: doubled,
            log,
            neg,
            inv,
            sqrt,
            add,
        })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_char2(&self) -> bool {
        self.0.p == 2
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.0.q
    }

    /// Wraps an encoding, rejecting out-of-range values.
    pub fn element(&self, value: Elem) -> Result<FieldElement> {
        if !self.contains(value) {
            return Err(Error::ElementOutOfRange { value, q: self.q() });
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }

    /// Reduces an integer into the prime subfield (`v mod p`).
    pub fn from_int(&self, v: i64) -> Elem {
        v.rem_euclid(self.0.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.0;
        if let Some(t) = &f.add {
            return t[(a * f.q + b) as usize] as Elem;
        }
        slow_add(a, b, f.p, f.m)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.0;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.0.inv[a as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64 * (e % order) % order;
        self.0.exp[l as usize]
    }

    /// True iff `a = y²` for some `y`; zero counts as a square.
    pub fn is_square(&self, a: Elem) -> bool {
        self.0.sqrt[a as usize].is_some()
    }

    /// The square root with the smaller encoding.
    pub fn sqrt(&self, a: Elem) -> Result<Elem> {
        self.0.sqrt[a as usize].ok_or(Error::NotASquare(a))
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        1..self.0.q
    }

    /// Nonzero squares in ascending encoding order.
    pub fn nonzero_squares(&self) -> Vec<Elem> {
        self.nonzero().filter(|&x| self.is_square(x)).collect()
    }

    /// Σ a_i b_i.
    pub fn dot(&self, a: &[Elem], b: &[Elem]) -> Elem {
        a.iter()
            .zip(b)
            .fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }
}

/// A field element bound to its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    value: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    fn wrap(&self, value: Elem) -> Self {
        Self {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        Ok(self.wrap(self.field.mul(self.value, other.value)))
    }

    pub fn neg(&self) -> Self {
        self.wrap(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.wrap(self.field.inv(self.value)?))
    }

    pub fn is_square(&self) -> bool {
        self.field.is_square(self.value)
    }

    pub fn sqrt(&self) -> Result<Self> {
        Ok(self.wrap(self.field.sqrt(self.value)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Field, v: u32) -> FieldElement {
        f.element(v).unwrap()
    }

    #[test]
    fn prime_field_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(el(&f5, 3).add(&el(&f5, 4)).unwrap().value(), 2);
        assert_eq!(el(&f5, 3).mul(&el(&f5, 4)).unwrap().value(), 2);
        assert_eq!(el(&f5, 2).inv().unwrap().value(), 3);
        assert!(f5.is_square(4));
        assert!(!f5.is_square(2));
        assert_eq!(f5.sqrt(4).unwrap(), 2);
        assert_eq!(f5.sqrt(1).unwrap(), 1);
        assert_eq!(f5.nonzero_squares(), vec![1, 4]);
    }

    #[test]
    fn gf4_examples() {
        let f4 = Field::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.add(2, 3), 1);
        assert_eq!(f4.mul(2, 2), 3);
        assert_eq!(f4.inv(2).unwrap(), 3);
        assert_eq!(f4.sqrt(3).unwrap(), 2);
        assert_eq!(f4.nonzero_squares(), vec![1, 2, 3]);
    }

    #[test]
    fn gf7_minus_one_is_not_square() {
        let f7 = Field::new(7, 1).unwrap();
        assert!(!f7.is_square(f7.neg(1)));
        assert_eq!(f7.nonzero_squares(), vec![1, 2, 4]);
    }

    #[test]
    fn default_moduli() {
        assert_eq!(Field::new(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(5, 1).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn identities() {
        for q in [2, 3, 4, 5, 8, 9, 25, 27] {
            let f = Field::from_order(q).unwrap();
            for x in f.elements() {
                assert_eq!(f.add(x, 0), x);
                assert_eq!(f.mul(x, 1), x);
            }
            assert_eq!(f.inv(1).unwrap(), 1);
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(Field::new(4, 1), Err(Error::InvalidField(_))));
        assert!(matches!(Field::new(2, 17), Err(Error::InvalidField(_))));
        assert!(matches!(Field::from_order(6), Err(Error::InvalidField(_))));
        assert!(matches!(Field::from_order(1), Err(Error::InvalidField(_))));
        // x^2 + 1 = (x+1)^2 over GF(2)
        assert!(matches!(
            Field::with_modulus(2, vec![1, 0, 1]),
            Err(Error::InvalidField(_))
        ));
        assert!(matches!(
            Field::with_modulus(3, vec![1, 0, 2]),
            Err(Error::InvalidField(_))
        ));
        let f5 = Field::new(5, 1).unwrap();
        assert!(matches!(f5.inv(0), Err(Error::DivisionByZero)));
        assert!(matches!(f5.sqrt(2), Err(Error::NotASquare(2))));
        assert!(matches!(
            f5.element(5),
            Err(Error::ElementOutOfRange { .. })
        ));
    }

    #[test]
    fn spec_mismatch() {
        let f5 = Field::new(5, 1).unwrap();
        let f7 = Field::new(7, 1).unwrap();
        assert!(matches!(
            el(&f5, 1).add(&el(&f7, 1)),
            Err(Error::SpecMismatch)
        ));
        let g8a = Field::with_modulus(2, vec![1, 1, 0, 1]).unwrap();
        let g8b = Field::with_modulus(2, vec![1, 0, 1, 1]).unwrap();
        assert!(matches!(
            el(&g8a, 3).mul(&el(&g8b, 3)),
            Err(Error::SpecMismatch)
        ));
        assert_eq!(Field::new(2, 3).unwrap(), g8a);
    }

    #[test]
    fn largest_field_builds() {
        let f = Field::new(2, 16).unwrap();
        assert_eq!(f.q(), 65536);
        assert_eq!(f.mul(f.inv(12345).unwrap(), 12345), 1);
    }
}
