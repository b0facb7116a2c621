//! Deformation-algebra profiles, GV lower bounds and the
//! noncommutativity / sphericality classification.

use serde::Serialize;

use crate::data::ReferenceData;
use crate::dynkin::smooth_placement;
use crate::error::{Error, Result};
use crate::helix::{Base, SheafExpr, SimplesHelix};
use crate::knitting::chamber_walk;
use crate::numerics::{check_length, for_length};

/// Per-field provenance: `loops` and `dim_ab_sliced` are tabulated;
/// `dim_sliced` is re-derived by knitting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeformationProfile {
    pub ell: u8,
    pub i: usize,
    pub loops: u32,
    pub dim_sliced: i64,
    pub dim_ab_sliced: i64,
    pub commutative: bool,
    pub presentation: Option<String>,
}

impl DeformationProfile {
    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Invariant(format!("profile ({}, {}): {m}", self.ell, self.i)));
        if self.dim_ab_sliced > self.dim_sliced {
            return bad("abelianisation larger than algebra");
        }
        if self.commutative != (self.loops <= 1) {
            return bad("commutative must mean at most one loop");
        }
        if self.loops <= 1 && self.dim_ab_sliced != self.dim_sliced {
            return bad("commutative algebra differs from its abelianisation");
        }
        Ok(())
    }
}

fn presentation(ell: u8, i: usize, loops: u32, dim: i64) -> Option<String> {
    match (ell, i, loops) {
        (3, 0, _) => Some("C<x,y>/(x^2,y^2,xy+yx)".to_string()),
        (_, _, 0) => Some("C".to_string()),
        // A local algebra on one generator is a truncated polynomial ring.
        (_, _, 1) => Some(format!("C[x]/(x^{dim})")),
        _ => None,
    }
}

/// The tabulated row `(ℓ, i)` without the knitting re-check.
pub fn profile_unchecked(ell: i64, i: usize) -> Result<DeformationProfile> {
    let h = for_length(ell)?;
    let half = h.half_period();
    if i > half {
        return Err(Error::IndexOutOfRange { index: i as i64, lo: 0, hi: half as i64 });
    }
    let data = ReferenceData::embedded();
    let row = data.deformation_row(h.ell).ok_or(Error::LengthOutOfRange(ell))?;
    let p = DeformationProfile {
        ell: h.ell,
        i,
        loops: row.loops[i],
        dim_sliced: row.dims[i],
        dim_ab_sliced: row.dims_ab[i],
        commutative: row.commutative[i],
        presentation: presentation(h.ell, i, row.loops[i], row.dims[i]),
    };
    p.check()?;
    Ok(p)
}

/// The row `(ℓ, i)`, with `dim_sliced` confirmed by knitting along the
/// chamber walk of the smooth placement.
pub fn profile(ell: i64, i: usize) -> Result<DeformationProfile> {
    let p = profile_unchecked(ell, i)?;
    let h = for_length(ell)?;
    let walk = chamber_walk(&smooth_placement(h.ell)?, &h)?;
    if walk.dims[i] != p.dim_sliced {
        return Err(Error::Invariant(format!(
            "({ell}, {i}): knitting gives {}, table gives {}",
            walk.dims[i], p.dim_sliced
        )));
    }
    Ok(p)
}

pub fn all_profiles(ell: i64) -> Result<Vec<DeformationProfile>> {
    let h = for_length(ell)?;
    let walk = chamber_walk(&smooth_placement(h.ell)?, &h)?;
    (0..=h.half_period())
        .map(|i| {
            let p = profile_unchecked(ell, i)?;
            if walk.dims[i] != p.dim_sliced {
                return Err(Error::Invariant(format!("({ell}, {i}): knitting disagrees with table")));
            }
            Ok(p)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GvBounds {
    pub ell: u8,
    /// `bounds[k-1]` bounds `n_k` for `k = 1..=ℓ`.
    pub bounds: Vec<i64>,
    pub acon_bound: i64,
}

/// `Σ k²·n_k`.
pub fn acon_from_bounds(bounds: &[i64]) -> i64 {
    bounds.iter().enumerate().map(|(k, &n)| ((k + 1) * (k + 1)) as i64 * n).sum()
}

/// Helix index `i ∈ 0..=N/2` at which `O_{kC}` sits (`k = 1` meaning
/// `O_C(−1)` at `i = 0`).
pub fn helix_index_of_thick(ell: i64, k: u32) -> Result<usize> {
    let h = SimplesHelix::new(ell)?;
    if k == 1 {
        return Ok(0);
    }
    (1..=h.numerics.half_period())
        .find(|&i| h.simple_at(i as i64) == SheafExpr::thick(k))
        .ok_or_else(|| Error::NotInHelix(format!("O_{{{k}C}} (ℓ={ell})")))
}

pub fn gv_bounds(ell: i64) -> Result<GvBounds> {
    let l = check_length(ell)?;
    let mut bounds = Vec::with_capacity(l as usize);
    for k in 1..=u32::from(l) {
        let b = if l == 2 && k == 1 {
            // Two loops force a 4-dimensional abelianisation here.
            4
        } else {
            profile_unchecked(ell, helix_index_of_thick(ell, k)?)?.dim_ab_sliced
        };
        bounds.push(b);
    }
    let data = ReferenceData::embedded();
    let row = data.gv_row(l).ok_or(Error::LengthOutOfRange(ell))?;
    let acon = acon_from_bounds(&bounds);
    if acon != row.acon_bound {
        return Err(Error::Invariant(format!("ℓ={ell}: Σk²n_k = {acon}, table gives {}", row.acon_bound)));
    }
    Ok(GvBounds { ell: l, bounds, acon_bound: row.acon_bound })
}

/// Helix membership up to twist, unshifted; returns the multiplicity `a`
/// of the curve class (`None` for `Z`, `Z^ω`).
fn helix_multiplicity(e: SheafExpr, ell: i64) -> Result<Option<u32>> {
    let h = SimplesHelix::new(ell)?;
    let e = e.normalize();
    let bad = || Error::NotInHelix(format!("{e} (ℓ={ell})"));
    e.check_for_length(h.ell()).map_err(|_| bad())?;
    if e.shift != 0 || h.position_up_to_twist(e).is_none() {
        return Err(bad());
    }
    Ok(match e.base {
        Base::CurveTwist(_) => Some(1),
        Base::Thick(k) | Base::DualThick(k) => Some(k),
        Base::Zed | Base::ZedOmega => None,
    })
}

/// Whether the representing object of `e`'s deformations is necessarily
/// noncommutative: exactly when `2a ≤ ℓ`.
pub fn strictly_noncommutative(e: SheafExpr, ell: i64) -> Result<bool> {
    Ok(helix_multiplicity(e, ell)?.is_some_and(|a| 2 * i64::from(a) <= ell))
}

/// Whether `e` can be spherical: `a = ℓ`, or `Z`, `Z^ω` when `ℓ = 5`.
pub fn possibly_spherical(e: SheafExpr, ell: i64) -> Result<bool> {
    Ok(match helix_multiplicity(e, ell)? {
        Some(a) => i64::from(a) == ell,
        None => ell == 5,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentations() {
        assert_eq!(profile_unchecked(3, 2).unwrap().presentation.as_deref(), Some("C[x]/(x^3)"));
        assert_eq!(profile_unchecked(3, 1).unwrap().presentation.as_deref(), Some("C"));
        assert_eq!(profile_unchecked(6, 4).unwrap().presentation, None);
    }

    #[test]
    fn helix_membership_errors() {
        assert!(strictly_noncommutative(SheafExpr::thick(4), 3).is_err());
        assert!(strictly_noncommutative(SheafExpr::zed(), 4).is_err());
        assert!(strictly_noncommutative(SheafExpr::thick(2).shifted(1), 3).is_err());
        assert!(possibly_spherical(SheafExpr::thick(2).twisted(7), 3).is_ok());
    }

    #[test]
    fn out_of_range_index() {
        assert!(profile_unchecked(3, 3).is_err());
    }
}
