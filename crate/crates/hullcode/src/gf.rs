//! Arithmetic in GF(p^r).
//!
//! A field element with polynomial coefficients `c_0..c_{r-1}` over GF(p) is
//! encoded as the integer `Σ c_j · p^j`, so encodings range over `0..q` with
//! `q = p^r`. `0` is the additive identity and `1` the multiplicative one.
//! The modulus is the lexicographically smallest monic irreducible polynomial
//! of degree `r` (coefficients compared low-degree-first as integers), found
//! by exhaustive scan, so a field is fully determined by `(p, r)`.
//!
//! Fields up to `q ≤ 2^16` carry precomputed log/antilog tables; larger
//! fields (up to the `q ≤ 2^20` cap) multiply by on-the-fly polynomial
//! arithmetic. [`Field`] is a cheaply clonable handle; all operations are
//! pure, so fields and elements can be shared freely across threads.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the field size `q = p^r`.
pub const DEFAULT_SIZE_CAP: u64 = 1 << 20;

/// Log/antilog tables are built only up to this field size.
const TABLE_CAP: u64 = 1 << 16;

/// Errors from field construction and element operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size p^r = {q} exceeds the cap {cap}")]
    SizeCapExceeded { q: u128, cap: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("discrete log of zero is undefined")]
    ZeroTarget,
    #[error("base is not a primitive element")]
    BaseNotPrimitive,
    #[error("operation requires {requirement}, field has characteristic {actual}")]
    WrongCharacteristic {
        requirement: &'static str,
        actual: u64,
    },
    #[error("-1 is not a square in GF({q}) (q ≡ 3 mod 4)")]
    NoSquareRootOfMinusOne { q: u64 },
    #[error("no pair of nonzero squares summing to -1 in GF({q})")]
    NoSolution { q: u64 },
    #[error("modulus is not a monic irreducible polynomial of degree {degree}")]
    InvalidModulus { degree: u32 },
    #[error("vector lengths differ: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

/// An element of a finite field, stored as its canonical integer encoding.
///
/// Elements carry no field pointer; they are interpreted relative to the
/// [`Field`] whose methods produced them.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u64);

impl FieldElement {
    /// The canonical integer encoding in `0..q`.
    pub fn value(self) -> u64 {
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

struct FieldRepr {
    p: u64,
    r: u32,
    q: u64,
    /// Monic irreducible modulus, coefficients low-degree-first, length r+1.
    modulus: Vec<u64>,
    /// Smallest-encoded element of multiplicative order q-1.
    primitive: u64,
    /// exp[i] = primitive^i for i in 0..q-1, when q <= TABLE_CAP.
    exp: Option<Vec<u64>>,
    /// log[x] = i with exp[i] = x, for nonzero x; log[0] is a sentinel.
    log: Option<Vec<u32>>,
}

/// A finite field GF(p^r) with a fixed modulus and canonical element encoding.
#[derive(Clone)]
pub struct Field(Arc<FieldRepr>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("r", &self.0.r)
            .field("q", &self.0.q)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.r == other.0.r && self.0.modulus == other.0.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^r) with the lexicographically smallest monic irreducible
    /// modulus of degree r, under the default size cap.
    pub fn new(p: u64, r: u32) -> Result<Field, GfError> {
        Field::with_size_cap(p, r, DEFAULT_SIZE_CAP)
    }

    /// Same as [`Field::new`] with an explicit size cap. Caps above 2^32
    /// are rejected; digit products must stay within u64.
    pub fn with_size_cap(p: u64, r: u32, cap: u64) -> Result<Field, GfError> {
        let cap = cap.min(1 << 32);
        let q = validate_params(p, r, cap)?;
        let modulus = smallest_irreducible(p, r);
        Ok(Field::build(p, r, q, modulus))
    }

    /// Builds GF(p^r) with an explicitly given monic irreducible modulus
    /// (coefficients low-degree-first, length r+1). The element encoding is
    /// relative to this modulus, so codes serialized under a non-canonical
    /// modulus round-trip exactly.
    pub fn with_modulus(p: u64, r: u32, modulus: Vec<u64>) -> Result<Field, GfError> {
        let q = validate_params(p, r, DEFAULT_SIZE_CAP)?;
        let ok = modulus.len() == r as usize + 1
            && *modulus.last().unwrap() == 1
            && modulus.iter().all(|&c| c < p)
            && is_irreducible(&modulus, p);
        if !ok {
            return Err(GfError::InvalidModulus { degree: r });
        }
        Ok(Field::build(p, r, q, modulus))
    }

    fn build(p: u64, r: u32, q: u64, modulus: Vec<u64>) -> Field {
        let mut repr = FieldRepr {
            p,
            r,
            q,
            modulus,
            primitive: 0,
            exp: None,
            log: None,
        };
        repr.primitive = find_primitive(&repr);
        if q <= TABLE_CAP {
            let mut exp = Vec::with_capacity((q - 1) as usize);
            let mut log = vec![u32::MAX; q as usize];
            let mut acc = 1u64;
            for i in 0..q - 1 {
                exp.push(acc);
                log[acc as usize] = i as u32;
                acc = poly_mul_mod(&repr, acc, repr.primitive);
            }
            repr.exp = Some(exp);
            repr.log = Some(log);
        }
        Field(Arc::new(repr))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.0.r
    }

    /// The field size q = p^r.
    pub fn order(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients, low-degree-first, length r+1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// Wraps a canonical encoding. Panics if `value >= q`.
    pub fn element(&self, value: u64) -> FieldElement {
        assert!(
            value < self.0.q,
            "encoding {} out of range for GF({})",
            value,
            self.0.q
        );
        FieldElement(value)
    }

    /// Iterator over all field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        let r = &self.0;
        if r.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if r.r == 1 {
            return FieldElement((a.0 + b.0) % r.p);
        }
        let mut out = 0u64;
        let mut scale = 1u64;
        let (mut x, mut y) = (a.0, b.0);
        for _ in 0..r.r {
            out += (x % r.p + y % r.p) % r.p * scale;
            x /= r.p;
            y /= r.p;
            scale *= r.p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        self.check(a);
        let r = &self.0;
        if r.p == 2 {
            return a;
        }
        if r.r == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { r.p - a.0 });
        }
        let mut out = 0u64;
        let mut scale = 1u64;
        let mut x = a.0;
        for _ in 0..r.r {
            let d = x % r.p;
            out += if d == 0 { 0 } else { r.p - d } * scale;
            x /= r.p;
            scale *= r.p;
        }
        FieldElement(out)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.check(a);
        self.check(b);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let r = &self.0;
        if let (Some(exp), Some(log)) = (&r.exp, &r.log) {
            let i = log[a.0 as usize] as u64 + log[b.0 as usize] as u64;
            return FieldElement(exp[(i % (r.q - 1)) as usize]);
        }
        FieldElement(poly_mul_mod(r, a.0, b.0))
    }

    /// Multiplicative inverse; `DivisionByZero` for the zero element.
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a);
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let r = &self.0;
        if let (Some(exp), Some(log)) = (&r.exp, &r.log) {
            let i = (r.q - 1 - log[a.0 as usize] as u64) % (r.q - 1);
            return Ok(FieldElement(exp[i as usize]));
        }
        Ok(self.pow(a, r.q - 2))
    }

    /// a^e by square-and-multiply; 0^0 = 1 by convention.
    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        self.check(a);
        let mut base = a;
        let mut acc = FieldElement(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Standard bilinear form Σ u_i·v_i.
    pub fn dot(&self, u: &[FieldElement], v: &[FieldElement]) -> Result<FieldElement, GfError> {
        if u.len() != v.len() {
            return Err(GfError::LengthMismatch {
                left: u.len(),
                right: v.len(),
            });
        }
        let mut acc = FieldElement(0);
        for (&a, &b) in u.iter().zip(v) {
            acc = self.add(acc, self.mul(a, b));
        }
        Ok(acc)
    }

    /// The smallest-encoded element of multiplicative order q-1.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.0.primitive)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: FieldElement) -> Result<u64, GfError> {
        self.check(a);
        if a.0 == 0 {
            return Err(GfError::DivisionByZero);
        }
        let n = self.0.q - 1;
        let mut ord = n;
        for f in prime_factors(n) {
            while ord.is_multiple_of(f) && self.pow(a, ord / f).0 == 1 {
                ord /= f;
            }
        }
        Ok(ord)
    }

    fn is_primitive(&self, a: FieldElement) -> bool {
        a.0 != 0 && self.order_of(a) == Ok(self.0.q - 1)
    }

    /// The exponent ω in 0..q-1 with base^ω = target, by table walk.
    pub fn discrete_log(&self, base: FieldElement, target: FieldElement) -> Result<u64, GfError> {
        self.check(base);
        self.check(target);
        if target.0 == 0 {
            return Err(GfError::ZeroTarget);
        }
        if !self.is_primitive(base) {
            return Err(GfError::BaseNotPrimitive);
        }
        let mut acc = FieldElement(1);
        for w in 0..self.0.q - 1 {
            if acc == target {
                return Ok(w);
            }
            acc = self.mul(acc, base);
        }
        unreachable!("primitive base enumerates every nonzero element");
    }

    /// The unique square root in characteristic 2, computed as x^(2^(r-1)).
    pub fn sqrt_char2(&self, x: FieldElement) -> Result<FieldElement, GfError> {
        self.check(x);
        if self.0.p != 2 {
            return Err(GfError::WrongCharacteristic {
                requirement: "characteristic 2",
                actual: self.0.p,
            });
        }
        let mut y = x;
        for _ in 1..self.0.r {
            y = self.mul(y, y);
        }
        Ok(y)
    }

    /// The smallest-encoded a with a² = -1 in GF(q); exists iff q ≡ 1 mod 4.
    pub fn find_sqrt_minus_one(&self) -> Result<FieldElement, GfError> {
        if self.0.p == 2 {
            return Err(GfError::WrongCharacteristic {
                requirement: "odd characteristic",
                actual: 2,
            });
        }
        let minus_one = self.neg(self.one());
        for a in self.elements() {
            if self.mul(a, a) == minus_one {
                return Ok(a);
            }
        }
        Err(GfError::NoSquareRootOfMinusOne { q: self.0.q })
    }

    /// The lexicographically smallest pair (a, b), both nonzero, with
    /// a² + b² = -1 in GF(q). Always exists for q ≡ 3 mod 4.
    pub fn find_sum_two_squares_minus_one(&self) -> Result<(FieldElement, FieldElement), GfError> {
        if self.0.p == 2 {
            return Err(GfError::WrongCharacteristic {
                requirement: "odd characteristic",
                actual: 2,
            });
        }
        let minus_one = self.neg(self.one());
        // smallest nonzero square root of each square value, by encoding
        let mut root = vec![0u64; self.0.q as usize];
        for b in (1..self.0.q).rev() {
            let sq = self.mul(FieldElement(b), FieldElement(b));
            root[sq.0 as usize] = b;
        }
        for a in 1..self.0.q {
            let a = FieldElement(a);
            let need = self.sub(minus_one, self.mul(a, a));
            let b = root[need.0 as usize];
            if b != 0 {
                return Ok((a, FieldElement(b)));
            }
        }
        Err(GfError::NoSolution { q: self.0.q })
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        debug_assert!(
            a.0 < self.0.q,
            "encoding {} out of range for GF({})",
            a.0,
            self.0.q
        );
    }
}

fn validate_params(p: u64, r: u32, cap: u64) -> Result<u64, GfError> {
    if !is_prime(p) {
        return Err(GfError::NotPrime(p));
    }
    assert!(r >= 1, "extension degree must be at least 1");
    let mut q: u128 = 1;
    for _ in 0..r {
        q *= p as u128;
        if q > cap as u128 {
            return Err(GfError::SizeCapExceeded { q, cap });
        }
    }
    Ok(q as u64)
}

/// Trial-division primality check.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors of n, ascending.
fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
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

/// Writes p^r as a prime power, or None if q is not one.
pub fn as_prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let fs = prime_factors(q);
    if fs.len() != 1 {
        return None;
    }
    let p = fs[0];
    let mut r = 0u32;
    let mut n = q;
    while n > 1 {
        n /= p;
        r += 1;
    }
    Some((p, r))
}

fn digits(mut x: u64, p: u64, len: usize) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn encode(ds: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &d in ds.iter().rev() {
        out = out * p + d;
    }
    out
}

/// Product of two encoded elements modulo the field modulus, digit arithmetic.
fn poly_mul_mod(repr: &FieldRepr, a: u64, b: u64) -> u64 {
    let (p, r) = (repr.p, repr.r as usize);
    if r == 1 {
        return a % p * (b % p) % p;
    }
    let da = digits(a, p, r);
    let db = digits(b, p, r);
    let mut prod = vec![0u64; 2 * r - 1];
    for (i, &x) in da.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce by the monic modulus
    for deg in (r..2 * r - 1).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        prod[deg] = 0;
        for (j, &mc) in repr.modulus.iter().take(r).enumerate() {
            let pos = deg - r + j;
            prod[pos] = (prod[pos] + c * (p - mc) % p) % p;
        }
    }
    encode(&prod[..r], p)
}

/// Remainder of a by b over GF(p), coefficients low-degree-first, b monic.
fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut rem: Vec<u64> = a.to_vec();
    let db = b.len() - 1;
    while rem.len() > db {
        let lead = *rem.last().unwrap();
        let deg = rem.len() - 1;
        if lead != 0 {
            for (j, &bc) in b.iter().take(db).enumerate() {
                let pos = deg - db + j;
                rem[pos] = (rem[pos] + lead * (p - bc) % p) % p;
            }
        }
        rem.pop();
    }
    while rem.last() == Some(&0) {
        rem.pop();
    }
    rem
}

/// Irreducibility over GF(p) by trial division with every monic polynomial
/// of degree 1..=deg/2. Desk-scale fields keep this exhaustive check cheap.
fn is_irreducible(poly: &[u64], p: u64) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for e in 1..=deg / 2 {
        let count = p.pow(e as u32);
        for enc in 0..count {
            let mut div = digits(enc, p, e);
            div.push(1);
            if poly_rem(poly, &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree r over GF(p).
fn smallest_irreducible(p: u64, r: u32) -> Vec<u64> {
    if r == 1 {
        return vec![0, 1]; // x
    }
    let count = p.pow(r);
    for enc in 0..count {
        let mut cand = digits(enc, p, r as usize);
        cand.push(1);
        if is_irreducible(&cand, p) {
            return cand;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}

/// Smallest-encoded element of multiplicative order q-1.
fn find_primitive(repr: &FieldRepr) -> u64 {
    let n = repr.q - 1;
    let factors = prime_factors(n);
    'cand: for c in 1..repr.q {
        for &f in &factors {
            // c^(n/f) by square-and-multiply on raw encodings
            let mut acc = 1u64;
            let mut base = c;
            let mut e = n / f;
            while e > 0 {
                if e & 1 == 1 {
                    acc = poly_mul_mod(repr, acc, base);
                }
                base = poly_mul_mod(repr, base, base);
                e >>= 1;
            }
            if acc == 1 {
                continue 'cand;
            }
        }
        return c;
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}
