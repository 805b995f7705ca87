//! Exact rank over `Q(ζ_p)` through the regular representation.

use num_bigint::BigInt;
use num_traits::Zero;

use super::cyc::CycNumber;
use crate::error::{Error, Result};

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(rank, piv);
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                // still needs the scaling step so later divisions stay exact
                for c in col + 1..cols {
                    m[r][c] = &m[rank][col] * &m[r][c] / &prev;
                }
                continue;
            }
            for c in col + 1..cols {
                let v = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = v / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank over `Q(ζ_p)` of the rows, each a dense vector of cyclotomic integers.
pub fn cyclotomic_rank(rows: &[Vec<CycNumber>], p: u32) -> Result<usize> {
    let d = p as usize - 1;
    let width = rows.first().map_or(0, |r| r.len());
    let mut big = Vec::with_capacity(rows.len() * d);
    for row in rows {
        let blocks: Vec<Vec<Vec<BigInt>>> = row.iter().map(|z| z.companion()).collect();
        for br in 0..d {
            let mut line = Vec::with_capacity(width * d);
            for b in &blocks {
                line.extend(b[br].iter().cloned());
            }
            big.push(line);
        }
    }
    let blocked = integer_rank(big);
    if !blocked.is_multiple_of(d) {
        return Err(Error::RankNotDivisible { blocked, block: d });
    }
    Ok(blocked / d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn integer_ranks() {
        assert_eq!(integer_rank(ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(integer_rank(ints(&[&[0, 1, 2], &[1, 0, 3], &[1, 1, 5]])), 2);
        assert_eq!(integer_rank(ints(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(integer_rank(ints(&[&[2, 0, 0], &[0, 0, 3], &[0, 5, 0]])), 3);
        assert_eq!(integer_rank(ints(&[&[0, 2], &[3, 1], &[6, 2]])), 2);
    }

    #[test]
    fn cyclotomic_ranks() {
        let p = 3;
        let z = CycNumber::zeta_pow(p, 1);
        let one = CycNumber::one(p);
        // (1, ζ) and (ζ, ζ²) are dependent over Q(ζ) but not over Q
        let rows = vec![vec![one.clone(), z.clone()], vec![z.clone(), z.mul(&z)]];
        assert_eq!(cyclotomic_rank(&rows, p).unwrap(), 1);
        let rows = vec![vec![one.clone(), z.clone()], vec![one.clone(), one.clone()]];
        assert_eq!(cyclotomic_rank(&rows, p).unwrap(), 2);
        let id: Vec<Vec<CycNumber>> =
            (0..4).map(|i| (0..4).map(|j| if i == j { CycNumber::one(5) } else { CycNumber::zero(5) }).collect()).collect();
        assert_eq!(cyclotomic_rank(&id, 5).unwrap(), 4);
        let mut dup = id.clone();
        dup.extend(id.clone());
        assert_eq!(cyclotomic_rank(&dup, 5).unwrap(), 4);
    }
}
