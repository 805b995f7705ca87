//! Exact elements of `Z[ζ_p]` in the power basis `1, ζ, …, ζ^{p-2}`.

use std::fmt;

use num_bigint::BigInt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNumber {
    coeffs: Vec<i64>,
}

impl fmt::Debug for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc{:?}", self.coeffs)
    }
}

impl CycNumber {
    pub fn zero(p: u32) -> Self {
        CycNumber { coeffs: vec![0; p as usize - 1] }
    }

    pub fn from_int(p: u32, k: i64) -> Self {
        let mut z = Self::zero(p);
        z.coeffs[0] = k;
        z
    }

    pub fn one(p: u32) -> Self {
        Self::from_int(p, 1)
    }

    /// `ζ_p^e`.
    pub fn zeta_pow(p: u32, e: u32) -> Self {
        let mut wide = vec![0i64; p as usize];
        wide[(e % p) as usize] = 1;
        Self::reduce(wide)
    }

    /// Folds a vector in `Z[x]/(x^p - 1)` into the power basis using `ζ^{p-1} = -Σ_{i<p-1} ζ^i`.
    fn reduce(mut wide: Vec<i64>) -> Self {
        let top = wide.pop().expect("p >= 2");
        for c in &mut wide {
            *c -= top;
        }
        CycNumber { coeffs: wide }
    }

    fn widen(&self) -> Vec<i64> {
        let mut w = self.coeffs.clone();
        w.push(0);
        w
    }

    pub fn p(&self) -> u32 {
        self.coeffs.len() as u32 + 1
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn add(&self, o: &Self) -> Self {
        CycNumber { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CycNumber { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> Self {
        CycNumber { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: i64) -> Self {
        CycNumber { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for (a, b) in self.coeffs.iter_mut().zip(&o.coeffs) {
            *a += b;
        }
    }

    /// Multiplication by `ζ^e`.
    pub fn mul_zeta(&self, e: u32) -> Self {
        let p = self.p() as usize;
        let w = self.widen();
        let mut out = vec![0i64; p];
        for (i, c) in w.into_iter().enumerate() {
            out[(i + e as usize) % p] += c;
        }
        Self::reduce(out)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.p() as usize;
        let (a, b) = (self.widen(), o.widen());
        let mut out = vec![0i64; p];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, y) in b.iter().enumerate() {
                out[(i + j) % p] += x * y;
            }
        }
        Self::reduce(out)
    }

    /// Matrix of multiplication by `self` on the power basis; column `k` holds `self·ζ^k`.
    pub fn companion(&self) -> Vec<Vec<BigInt>> {
        let d = self.coeffs.len();
        let mut m = vec![vec![BigInt::default(); d]; d];
        for k in 0..d {
            let col = self.mul_zeta(k as u32);
            for (r, &c) in col.coeffs.iter().enumerate() {
                m[r][k] = BigInt::from(c);
            }
        }
        m
    }
}
