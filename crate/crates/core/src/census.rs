//! Enumeration of main-condition sets and the counting polynomials `d_n(t)`, `t = q - 1`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{violation, Error, Result};
use crate::minimal::{analyze_shape, ShapeReport};
use crate::roots::{positions, MainConditionSet, PatternSet, RootPos};

/// Default upper bound on `n` for enumerations.
pub const DEFAULT_CENSUS_CAP: usize = 8;

/// A polynomial in `t` with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct CountingPolynomial {
    coefficients: Vec<i128>,
}

impl CountingPolynomial {
    pub fn new(mut coefficients: Vec<i128>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        CountingPolynomial { coefficients }
    }

    pub fn zero() -> Self {
        CountingPolynomial::default()
    }

    /// `t^k (t + 1)^c`.
    pub fn monomial_times_binomial(k: usize, c: usize) -> Self {
        let mut coeffs = vec![0i128; k + c + 1];
        let mut binom = 1i128;
        for i in 0..=c {
            coeffs[k + i] = binom;
            binom = binom * (c - i) as i128 / (i + 1) as i128;
        }
        CountingPolynomial::new(coeffs)
    }

    pub fn coefficients(&self) -> &[i128] {
        &self.coefficients
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coefficients.iter().all(|&c| c >= 0)
    }

    pub fn eval(&self, t: i128) -> Option<i128> {
        self.coefficients.iter().rev().try_fold(0i128, |acc, &c| acc.checked_mul(t)?.checked_add(c))
    }

    pub fn add_assign(&mut self, other: &CountingPolynomial) {
        if self.coefficients.len() < other.coefficients.len() {
            self.coefficients.resize(other.coefficients.len(), 0);
        }
        for (a, b) in self.coefficients.iter_mut().zip(&other.coefficients) {
            *a += b;
        }
        while self.coefficients.last() == Some(&0) {
            self.coefficients.pop();
        }
    }

    /// `{"t^2": 1, "t^1": 3, "t^0": 1}`, highest degree first.
    pub fn to_map(&self) -> Vec<(String, i128)> {
        self.coefficients.iter().enumerate().rev().map(|(d, &c)| (format!("t^{d}"), c)).collect()
    }
}

impl fmt::Debug for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CountingPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(d, &c)| match d {
                0 => format!("{c}"),
                1 if c == 1 => "t".to_string(),
                1 => format!("{c}t"),
                _ if c == 1 => format!("t^{d}"),
                _ => format!("{c}t^{d}"),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for CountingPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = self.to_map();
        let mut m = s.serialize_map(Some(entries.len()))?;
        for (k, v) in entries {
            m.serialize_entry(&k, &v)?;
        }
        m.end()
    }
}

/// Every main-condition set for size `n`, in size-lexicographic order (by size, then by
/// the sorted list of positions in row-major order).
pub fn enumerate_main_sets(n: usize, cap: usize) -> Result<Vec<MainConditionSet>> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let all: Vec<RootPos> = positions(n).collect();
    let mut by_size: Vec<Vec<MainConditionSet>> = vec![Vec::new(); n.max(1)];
    let mut chosen = Vec::new();
    fn dfs(
        n: usize,
        all: &[RootPos],
        start: usize,
        rows: u32,
        cols: u32,
        chosen: &mut Vec<RootPos>,
        out: &mut [Vec<MainConditionSet>],
    ) {
        out[chosen.len()].push(MainConditionSet::from_set_unchecked(PatternSet::from_positions(n, chosen.iter().copied())));
        for (x, &p) in all.iter().enumerate().skip(start) {
            if rows >> p.i & 1 == 0 && cols >> p.j & 1 == 0 {
                chosen.push(p);
                dfs(n, all, x + 1, rows | 1 << p.i, cols | 1 << p.j, chosen, out);
                chosen.pop();
            }
        }
    }
    dfs(n, &all, 0, 0, 0, &mut chosen, &mut by_size);
    Ok(by_size.into_iter().flatten().collect())
}

fn shapes(n: usize, cap: usize) -> Result<Vec<(MainConditionSet, ShapeReport)>> {
    let sets = enumerate_main_sets(n, cap)?;
    sets.into_par_iter().map(|p| analyze_shape(&p).map(|r| (p, r))).collect()
}

fn check_nonnegative(poly: CountingPolynomial, what: &str) -> Result<CountingPolynomial> {
    if poly.is_nonnegative() {
        Ok(poly)
    } else {
        Err(violation(format!("{what} has a negative coefficient: {poly}")))
    }
}

/// `d_n(t) = Σ_{P disconnected} t^{|P|} (t+1)^{c(P)}`.
pub fn d_polynomial(n: usize, cap: usize) -> Result<CountingPolynomial> {
    let mut total = CountingPolynomial::zero();
    for (p, r) in shapes(n, cap)? {
        if r.disconnected {
            total.add_assign(&CountingPolynomial::monomial_times_binomial(p.len(), r.c));
        }
    }
    check_nonnegative(total, "d_n")
}

/// The part of `d_n` coming from constituents of degree `q^δ`.
pub fn stratified_polynomial(n: usize, delta: usize, cap: usize) -> Result<CountingPolynomial> {
    Ok(strata(n, cap)?.remove(&delta).unwrap_or_default())
}

/// All nonzero strata keyed by `δ = a - b`.
pub fn strata(n: usize, cap: usize) -> Result<BTreeMap<usize, CountingPolynomial>> {
    let mut out: BTreeMap<usize, CountingPolynomial> = BTreeMap::new();
    for (p, r) in shapes(n, cap)? {
        if r.disconnected {
            out.entry(r.a - r.b).or_default().add_assign(&CountingPolynomial::monomial_times_binomial(p.len(), r.c));
        }
    }
    for (d, poly) in &out {
        check_nonnegative(poly.clone(), &format!("stratum δ = {d}"))?;
    }
    Ok(out)
}

/// `Σ_{P disconnected} (q-1)^{|P|} q^{c(P)}` evaluated directly.
pub fn count_direct(n: usize, q: u32, cap: usize) -> Result<u128> {
    let mut total: u128 = 0;
    let t = (q - 1) as u128;
    for (p, r) in shapes(n, cap)? {
        if r.disconnected {
            let term = t
                .checked_pow(p.len() as u32)
                .and_then(|x| x.checked_mul((q as u128).checked_pow(r.c as u32)?))
                .ok_or(Error::Overflow("count_direct"))?;
            total = total.checked_add(term).ok_or(Error::Overflow("count_direct"))?;
        }
    }
    Ok(total)
}
