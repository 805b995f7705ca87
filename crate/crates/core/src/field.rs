//! Table-driven arithmetic in small finite fields `F_q`, `q = p^k <= 2^16`.
//!
//! Elements are dense codes `0..q`: the code of `c_0 + c_1 x + ... + c_{k-1} x^{k-1}`
//! is `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Code 0 is zero and code 1 is one.
//!
//! The fixed additive character is `theta(x) = zeta_p^{Tr(x)}`; we only ever store
//! the exponent `Tr(x)`, an integer mod `p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_FIELD_SIZE: u32 = 1 << 16;

/// Full `q x q` addition tables are only built up to this size.
const DENSE_ADD_LIMIT: u32 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0 as u32
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

#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    q: u32,
    /// Defining polynomial, lowest degree first, monic of degree `k`.
    poly: Vec<u32>,
    add_table: Option<Vec<u16>>,
    neg_table: Vec<u16>,
    /// `exp_table[i] = g^i` for a primitive element `g`, `i < q - 1`.
    exp_table: Vec<u16>,
    /// Discrete logarithm base `g`; entry 0 is unused.
    log_table: Vec<u32>,
    inv_table: Vec<u16>,
    trace_table: Vec<u16>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.p)
            .field("k", &self.k)
            .field("poly", &self.poly_high_first())
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.poly == other.poly
    }
}

impl Eq for FieldSpec {}

pub fn is_prime(n: u32) -> bool {
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

/// Conway polynomials, highest degree first.
fn builtin_poly(p: u32, k: u32) -> Option<Vec<u32>> {
    let poly: &[u32] = match (p, k) {
        (2, 2) => &[1, 1, 1],
        (2, 3) => &[1, 0, 1, 1],
        (2, 4) => &[1, 0, 0, 1, 1],
        (3, 2) => &[1, 2, 2],
        (3, 3) => &[1, 0, 2, 1],
        (5, 2) => &[1, 4, 2],
        _ => return None,
    };
    Some(poly.to_vec())
}

// Dense polynomial helpers over F_p, lowest degree first.

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = poly_trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let factor = r[r.len() - 1] * lead_inv % p;
        for (t, &c) in m.iter().enumerate() {
            let idx = shift + t;
            r[idx] = (r[idx] + p - factor * c % p) % p;
        }
        r = poly_trim(r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and small
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue has an inverse")
}

fn digits(code: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize);
    let mut c = code;
    for _ in 0..k {
        out.push(c % p);
        c /= p;
    }
    out
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let k = poly.len() - 1;
    // A reducible polynomial of degree k has a monic factor of degree <= k/2.
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut cand = digits(low as u32, p, d as u32);
            cand.push(1);
            if poly_rem(poly, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// Builds `F_{p^k}`. `poly` lists coefficients highest degree first
    /// (`c_k, ..., c_0`) and is ignored for prime fields.
    pub fn new(p: u32, k: u32, poly: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::Parse("extension degree must be at least 1".into()));
        }
        let q = (p as u64)
            .checked_pow(k)
            .filter(|&q| q <= MAX_FIELD_SIZE as u64)
            .ok_or(Error::FieldTooLarge { p, k })? as u32;

        let poly_high: Vec<u32> = if k == 1 {
            vec![1, 0]
        } else {
            match poly {
                Some(c) => c.to_vec(),
                None => builtin_poly(p, k).ok_or(Error::UnsupportedSize { p, k })?,
            }
        };
        if poly_high.len() != k as usize + 1 || poly_high[0] != 1 || poly_high.iter().any(|&c| c >= p) {
            return Err(Error::ReduciblePolynomial(poly_high));
        }
        let poly_low: Vec<u32> = poly_high.iter().rev().copied().collect();
        if k > 1 && !is_irreducible(&poly_low, p) {
            return Err(Error::ReduciblePolynomial(poly_high));
        }

        let slow_mul = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, k);
            let db = digits(b, p, k);
            let mut prod = vec![0u32; 2 * k as usize];
            for (i, &x) in da.iter().enumerate() {
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            let mut r = poly_rem(&prod, &poly_low, p);
            r.resize(k as usize, 0);
            undigits(&r, p)
        };
        let slow_add = |a: u32, b: u32| -> u32 {
            let da = digits(a, p, k);
            let db = digits(b, p, k);
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            undigits(&s, p)
        };

        let neg_table: Vec<u16> = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, k).iter().map(|&x| (p - x) % p).collect();
                undigits(&d, p) as u16
            })
            .collect();

        let add_table = (q <= DENSE_ADD_LIMIT).then(|| {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = slow_add(a, b) as u16;
                }
            }
            t
        });

        // primitive element search
        let mut exp_table = Vec::new();
        for g in 1..q {
            let mut powers = Vec::with_capacity(q as usize - 1);
            let mut x = 1u32;
            loop {
                powers.push(x as u16);
                x = slow_mul(x, g);
                if x == 1 {
                    break;
                }
            }
            if powers.len() == q as usize - 1 {
                exp_table = powers;
                break;
            }
        }
        debug_assert_eq!(exp_table.len(), q as usize - 1);
        let mut log_table = vec![0u32; q as usize];
        for (i, &x) in exp_table.iter().enumerate() {
            log_table[x as usize] = i as u32;
        }
        let mut inv_table = vec![0u16; q as usize];
        for a in 1..q {
            let l = log_table[a as usize];
            let il = (q - 1 - l) % (q - 1);
            inv_table[a as usize] = exp_table[il as usize];
        }

        let mut spec = FieldSpec {
            p,
            k,
            q,
            poly: poly_low,
            add_table,
            neg_table,
            exp_table,
            log_table,
            inv_table,
            trace_table: Vec::new(),
        };

        // Tr(x) = x + x^p + ... + x^{p^{k-1}}
        let mut trace_table = vec![0u16; q as usize];
        for a in 0..q {
            let x = FieldElement(a as u16);
            let mut acc = FieldElement::ZERO;
            let mut term = x;
            for _ in 0..k {
                acc = spec.add(acc, term);
                term = spec.pow(term, p);
            }
            if acc.code() >= p {
                return Err(Error::TheoremViolation(format!(
                    "trace of {a} left the prime field"
                )));
            }
            trace_table[a as usize] = acc.0;
        }
        spec.trace_table = trace_table;
        Ok(spec)
    }

    /// Parses a field name such as `"2"`, `"3"` or `"2^2"`.
    pub fn parse(name: &str, poly: Option<&[u32]>) -> Result<Self> {
        let (p, k) = parse_field_name(name)?;
        Self::new(p, k, poly)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// `"p"` for prime fields, `"p^k"` otherwise.
    pub fn name(&self) -> String {
        if self.k == 1 {
            self.p.to_string()
        } else {
            format!("{}^{}", self.p, self.k)
        }
    }

    /// Defining polynomial, highest degree first.
    pub fn poly_high_first(&self) -> Vec<u32> {
        self.poly.iter().rev().copied().collect()
    }

    pub fn element(&self, code: u32) -> Result<FieldElement> {
        if code < self.q {
            Ok(FieldElement(code as u16))
        } else {
            Err(Error::InvalidElement { code, q: self.q })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|c| FieldElement(c as u16))
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(|c| FieldElement(c as u16))
    }

    /// The basis `1, x, ..., x^{k-1}` of `(F_q, +)` over `F_p`; it generates the
    /// additive group.
    pub fn additive_generators(&self) -> Vec<FieldElement> {
        (0..self.k).map(|d| FieldElement(self.p.pow(d) as u16)).collect()
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u16)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.add_table {
            Some(t) => FieldElement(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None => {
                let (p, mut x, mut y) = (self.p, a.code(), b.code());
                let mut out = 0u32;
                let mut place = 1u32;
                for _ in 0..self.k {
                    out += ((x % p + y % p) % p) * place;
                    x /= p;
                    y /= p;
                    place *= p;
                }
                FieldElement(out as u16)
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg_table[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let l = self.log_table[a.0 as usize] + self.log_table[b.0 as usize];
        FieldElement(self.exp_table[(l % (self.q - 1)) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (!a.is_zero()).then(|| FieldElement(self.inv_table[a.0 as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: FieldElement, e: u32) -> FieldElement {
        let mut acc = FieldElement::ONE;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// Exponent of `theta(x) = zeta_p^{Tr(x)}`, in `0..p`.
    #[inline]
    pub fn theta_exponent(&self, x: FieldElement) -> u32 {
        self.trace_table[x.0 as usize] as u32
    }
}

/// Splits `"p^k"` (or a bare `"p"`) into `(p, k)`.
pub fn parse_field_name(name: &str) -> Result<(u32, u32)> {
    let bad = || Error::Parse(format!("field name {name:?} is not of the form p or p^k"));
    let mut parts = name.trim().splitn(2, '^');
    let p = parts.next().ok_or_else(bad)?.trim().parse::<u32>().map_err(|_| bad())?;
    let k = match parts.next() {
        Some(k) => k.trim().parse::<u32>().map_err(|_| bad())?,
        None => 1,
    };
    Ok((p, k))
}

/// Parses `"c_k,...,c_0"`.
pub fn parse_poly(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad polynomial coefficient {c:?}")))
        })
        .collect()
}
