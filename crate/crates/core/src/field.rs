//! Exact arithmetic in GF(p^m).
//!
//! A field is described by a [`FieldSpec`]: the characteristic `p`, the
//! extension degree `m` and a monic irreducible modulus of degree `m`. An
//! element of GF(p^m) is a residue polynomial `c_0 + c_1 a + ... + c_{m-1}
//! a^{m-1}`; [`FieldElement`] stores the coefficient vector packed as the
//! integer `sum c_i p^i`, which is a bijection onto `0..q` and keeps elements
//! `Copy` and canonically comparable.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 16;

const MAX_DEGREE: usize = 16;

/// An element of a finite field, in canonical packed form.
///
/// The value is meaningless without the [`FieldSpec`] it was produced by.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    /// Position of the element in the canonical enumeration `0..q`.
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
}

/// Description of GF(p^m). Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec {
    inner: Arc<Inner>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.inner.p, self.inner.m, self.inner.modulus)
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.m == 1 {
            write!(f, "GF({})", self.inner.p)
        } else {
            write!(f, "GF({}^{})", self.inner.p, self.inner.m)
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn checked_size(p: u32, m: u32) -> Result<u32> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q = q.saturating_mul(p as u64);
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
    }
    Ok(q as u32)
}

/// Monic irreducible of degree `m` over GF(p) whose non-leading coefficient
/// vector has the smallest value `sum c_i p^i`. Ascending coefficients.
pub fn find_irreducible(p: u32, m: u32) -> Result<Vec<u32>> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if m == 0 {
        return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
    }
    let q = checked_size(p, m)?;
    for value in 0..q {
        let mut candidate = unpack_digits(value, p, m as usize);
        candidate.push(1);
        if zp::is_irreducible(&candidate, p) {
            return Ok(candidate);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {m} over GF({p})")))
}

fn unpack_digits(mut value: u32, p: u32, m: usize) -> Vec<u32> {
    let mut digits = Vec::with_capacity(m + 1);
    for _ in 0..m {
        digits.push(value % p);
        value /= p;
    }
    digits
}

impl FieldSpec {
    /// GF(p) for a prime `p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, vec![0, 1])
    }

    /// GF(p^m) with the canonical modulus from [`find_irreducible`].
    pub fn extension(p: u32, m: u32) -> Result<Self> {
        let modulus = find_irreducible(p, m)?;
        Self::new(p, m, modulus)
    }

    /// The field with `q` elements, using the canonical modulus.
    pub fn with_order(q: u64) -> Result<Self> {
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge(q));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).ok_or(Error::NotPrimePower(q))?;
        let mut rest = q;
        let mut m = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            m += 1;
        }
        if rest != 1 {
            return Err(Error::NotPrimePower(q));
        }
        Self::extension(p as u32, m)
    }

    /// GF(p^m) with an explicit monic irreducible modulus (ascending, length m+1).
    pub fn new(p: u32, m: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::InvalidModulus("extension degree must be at least 1".into()));
        }
        let q = checked_size(p, m)?;
        if modulus.len() != m as usize + 1 {
            return Err(Error::InvalidModulus(format!(
                "expected {} coefficients, got {}",
                m + 1,
                modulus.len()
            )));
        }
        if let Some(c) = modulus.iter().find(|&&c| c >= p) {
            return Err(Error::InvalidModulus(format!("coefficient {c} is not reduced mod {p}")));
        }
        if modulus[m as usize] != 1 {
            return Err(Error::InvalidModulus("modulus is not monic".into()));
        }
        if !zp::is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(format!("{modulus:?} is reducible over GF({p})")));
        }
        Ok(Self { inner: Arc::new(Inner { p, m, q, modulus }) })
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    pub fn size(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.m == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.inner.p as i64) as u32)
    }

    /// Element with the given position in the canonical enumeration.
    pub fn element(&self, index: u32) -> Result<FieldElement> {
        if index >= self.inner.q {
            return Err(Error::InvalidElement(format!("index {index} outside GF({})", self.inner.q)));
        }
        Ok(FieldElement(index))
    }

    /// Element from its residue coefficient vector (ascending, at most m entries).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        let Inner { p, m, .. } = *self.inner;
        if coeffs.len() > m as usize {
            return Err(Error::InvalidElement(format!(
                "{} coefficients given for a degree-{m} extension",
                coeffs.len()
            )));
        }
        let mut value = 0u32;
        for &c in coeffs.iter().rev() {
            if c >= p {
                return Err(Error::InvalidElement(format!("coefficient {c} is not reduced mod {p}")));
            }
            value = value * p + c;
        }
        Ok(FieldElement(value))
    }

    /// Residue coefficient vector of length m.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        unpack_digits(a.0, self.inner.p, self.inner.m as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.inner.q).map(FieldElement)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.inner.q).map(FieldElement)
    }

    fn digits(&self, a: FieldElement) -> [u32; MAX_DEGREE] {
        let p = self.inner.p;
        let mut out = [0u32; MAX_DEGREE];
        let mut v = a.0;
        for d in out.iter_mut().take(self.inner.m as usize) {
            *d = v % p;
            v /= p;
        }
        out
    }

    fn pack(&self, digits: &[u32]) -> FieldElement {
        let p = self.inner.p;
        let mut value = 0u32;
        for &d in digits[..self.inner.m as usize].iter().rev() {
            value = value * p + d;
        }
        FieldElement(value)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let (mut x, y) = (self.digits(a), self.digits(b));
        for (xi, yi) in x.iter_mut().zip(y) {
            *xi = (*xi + yi) % p;
        }
        self.pack(&x)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.inner.p;
        if self.inner.m == 1 {
            return FieldElement((p - a.0) % p);
        }
        let mut x = self.digits(a);
        for xi in x.iter_mut() {
            *xi = (p - *xi) % p;
        }
        self.pack(&x)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let Inner { p, m, .. } = *self.inner;
        if m == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % p as u64) as u32);
        }
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let m = m as usize;
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + x[i] as u64 * y[j] as u64) % p as u64;
            }
        }
        let modulus = &self.inner.modulus;
        for top in (m..2 * m - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            // z^m = -(c_0 + ... + c_{m-1} z^{m-1})
            for (i, &mi) in modulus[..m].iter().enumerate() {
                let idx = top - m + i;
                prod[idx] = (prod[idx] + (p as u64 - mi as u64) * c) % p as u64;
            }
        }
        let mut digits = [0u32; MAX_DEGREE];
        for i in 0..m {
            digits[i] = prod[i] as u32;
        }
        self.pack(&digits)
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut base = a;
        let mut acc = self.one();
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
            return Err(Error::DivisionByZero(self.inner.q));
        }
        Ok(self.pow(a, self.inner.q as u64 - 2))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Renders an element: the residue for prime fields, a coefficient tuple otherwise.
    pub fn format_element(&self, a: FieldElement) -> String {
        if self.is_prime_field() {
            a.0.to_string()
        } else {
            let parts: Vec<String> = self.coeffs(a).iter().map(u32::to_string).collect();
            format!("({})", parts.join(","))
        }
    }
}

/// Dense polynomials over Z/p used only for modulus validation.
mod zp {
    fn trim(v: &mut Vec<u32>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut base = a as u64;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u64;
            }
            base = base * base % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Remainder of `a` modulo the nonzero polynomial `b`.
    pub(super) fn rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        let lead_inv = inv_mod(b[db], p) as u64;
        while r.len() > db {
            let dr = r.len() - 1;
            let factor = r[dr] as u64 * lead_inv % p as u64;
            for (i, &bi) in b.iter().enumerate() {
                let idx = dr - db + i;
                r[idx] = ((r[idx] as u64 + (p as u64 - factor) * bi as u64) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let deg = f.len() - 1;
        for d in 1..=deg / 2 {
            let count = (p as u64).pow(d as u32);
            for value in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut v = value;
                for _ in 0..d {
                    g.push((v % p as u64) as u32);
                    v /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}
