//! Wall-crossing numerics `(ℓ, N, ranks, n_i)` and their recurrence.

use serde::{Deserialize, Serialize};

use crate::data::ReferenceData;
use crate::error::{Error, Result};

/// Where a rank sequence comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Read off the marked-diagram chamber figures (ℓ = 3 only).
    FigureDerived,
    /// Taken from the stated table.
    Table,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HelixNumerics {
    pub ell: u8,
    pub period: usize,
    pub ranks: Vec<i64>,
    pub ns: Vec<i64>,
    pub provenance: Provenance,
}

/// Reduces `i` modulo `n` into `0..n`. The only place indices are reduced.
pub fn reduce_index(i: i64, n: usize) -> usize {
    i.rem_euclid(n as i64) as usize
}

pub fn check_length(ell: i64) -> Result<u8> {
    if (1..=6).contains(&ell) {
        Ok(ell as u8)
    } else {
        Err(Error::LengthOutOfRange(ell))
    }
}

/// `n_i = (r_{i+1} + r_{i−1}) / r_i` over a periodic rank sequence.
pub fn derive_ns(ranks: &[i64]) -> Result<Vec<i64>> {
    let n = ranks.len();
    if n == 0 || ranks[0] != 1 {
        return Err(Error::InconsistentRanks("sequence must start with rank 1".into()));
    }
    (0..n)
        .map(|i| {
            let r = ranks[i];
            let s = ranks[(i + 1) % n] + ranks[(i + n - 1) % n];
            if r <= 0 || s % r != 0 {
                Err(Error::InconsistentRanks(format!("{s} not divisible by rank {r} at index {i}")))
            } else {
                Ok(s / r)
            }
        })
        .collect()
}

impl HelixNumerics {
    /// Builds a profile from raw sequences, checking every invariant.
    pub fn new(ell: u8, ranks: Vec<i64>, ns: Vec<i64>) -> Result<Self> {
        let n = ranks.len();
        let bad = |m: String| Err(Error::Invariant(format!("ℓ={ell}: {m}")));
        if n == 0 || ns.len() != n {
            return bad("ranks and ns must be non-empty and of equal length".into());
        }
        if ranks[0] != 1 {
            return bad("rank of V_0 must be 1".into());
        }
        if let Some(k) = ranks.iter().skip(1).position(|&r| r == 1) {
            return bad(format!("rank 1 recurs at index {} before the period", k + 1));
        }
        if ns[0] != 2 * i64::from(ell) {
            return bad(format!("n_0 = {} but 2ℓ = {}", ns[0], 2 * ell));
        }
        for i in 0..n {
            let j = (n - i) % n;
            if ranks[i] != ranks[j] || ns[i] != ns[j] {
                return bad(format!("not palindromic at index {i}"));
            }
        }
        let derived = derive_ns(&ranks)?;
        if derived != ns {
            return bad(format!("recurrence gives {derived:?}, table gives {ns:?}"));
        }
        let provenance = if ell == 3 { Provenance::FigureDerived } else { Provenance::Table };
        Ok(HelixNumerics { ell, period: n, ranks, ns, provenance })
    }

    pub fn rank_at(&self, i: i64) -> i64 {
        self.ranks[reduce_index(i, self.period)]
    }

    pub fn n_at(&self, i: i64) -> i64 {
        self.ns[reduce_index(i, self.period)]
    }

    pub fn half_period(&self) -> usize {
        self.period / 2
    }
}

/// The canonical profile for length ℓ.
pub fn for_length(ell: i64) -> Result<HelixNumerics> {
    let ell = check_length(ell)?;
    let data = ReferenceData::embedded();
    let row = data.numerics_row(ell).ok_or(Error::LengthOutOfRange(i64::from(ell)))?;
    HelixNumerics::new(ell, row.ranks.clone(), row.ns.clone())
}

pub fn rank_at(i: i64, ell: i64) -> Result<i64> {
    Ok(for_length(ell)?.rank_at(i))
}

pub fn n_at(i: i64, ell: i64) -> Result<i64> {
    Ok(for_length(ell)?.n_at(i))
}

/// Rank data of `0 → V_{i−1} → V_i^{⊕n_i} → V_{i+1} → 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerSequence {
    pub left: i64,
    pub middle_rank: i64,
    pub multiplicity: i64,
    pub right: i64,
}

pub fn euler_sequence(i: i64, ell: i64) -> Result<EulerSequence> {
    let h = for_length(ell)?;
    let e = EulerSequence {
        left: h.rank_at(i - 1),
        middle_rank: h.rank_at(i),
        multiplicity: h.n_at(i),
        right: h.rank_at(i + 1),
    };
    if e.left + e.right != e.multiplicity * e.middle_rank {
        return Err(Error::Invariant(format!("rank additivity fails at i={i}, ℓ={ell}")));
    }
    Ok(e)
}

/// Ranks of the projective pair `P_i = V_{i−1} ⊕ V_i`.
pub fn projective_ranks(i: i64, ell: i64) -> Result<(i64, i64)> {
    let h = for_length(ell)?;
    Ok((h.rank_at(i - 1), h.rank_at(i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_negative() {
        assert_eq!(reduce_index(-1, 6), 5);
        assert_eq!(reduce_index(-12, 6), 0);
        assert_eq!(reduce_index(13, 4), 1);
    }

    #[test]
    fn constructor_rejects_bad_rows() {
        assert!(HelixNumerics::new(2, vec![1, 2], vec![4, 2]).is_err());
        assert!(HelixNumerics::new(2, vec![2, 1], vec![1, 4]).is_err());
        assert!(HelixNumerics::new(3, vec![1, 3, 2, 3], vec![4, 1, 3, 1]).is_err());
        assert!(derive_ns(&[1, 3, 1]).is_err());
    }

    #[test]
    fn out_of_range() {
        assert_eq!(for_length(0), Err(Error::LengthOutOfRange(0)));
        assert_eq!(for_length(7), Err(Error::LengthOutOfRange(7)));
    }
}
