//! Embedded reference tables.
//!
//! These are the tabulated values the engine is checked against. Every
//! module that consumes them re-derives them by an independent route at
//! construction time; see `numerics`, `knitting` and `defalg`.

use serde::{Deserialize, Serialize};

/// One row of the wall-crossing table: ranks of `V_0..V_{N-1}` and the
/// multiplicities `n_0..n_{N-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericsRow {
    pub ell: u8,
    pub period: usize,
    pub ranks: Vec<i64>,
    pub ns: Vec<i64>,
}

/// One row of the deformation-algebra table, indexed by `i = 0..=N/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationRow {
    pub ell: u8,
    pub loops: Vec<u32>,
    pub dims: Vec<i64>,
    pub dims_ab: Vec<i64>,
    pub commutative: Vec<bool>,
}

/// One row of the Gopakumar–Vafa lower-bound table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GvRow {
    pub ell: u8,
    pub bounds: Vec<i64>,
    pub acon_bound: i64,
}

/// The complete set of reference tables. `embedded()` returns the shipped
/// values; tests may build corrupted copies to exercise failure reporting.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceData {
    pub numerics: Vec<NumericsRow>,
    pub deformation: Vec<DeformationRow>,
    pub gv: Vec<GvRow>,
    /// Read values of the affine-E6 knitting from the branch vertex with
    /// the extending vertex killed.
    pub e6_trace: Vec<i64>,
    /// Number of label-3 placements over E6, E7, E8 up to automorphism.
    pub label3_placements: usize,
}

fn nrow(ell: u8, ranks: &[i64], ns: &[i64]) -> NumericsRow {
    NumericsRow { ell, period: ranks.len(), ranks: ranks.to_vec(), ns: ns.to_vec() }
}

fn drow(ell: u8, loops: &[u32], dims: &[i64], dims_ab: &[i64], comm: &[bool]) -> DeformationRow {
    DeformationRow {
        ell,
        loops: loops.to_vec(),
        dims: dims.to_vec(),
        dims_ab: dims_ab.to_vec(),
        commutative: comm.to_vec(),
    }
}

fn gvrow(ell: u8, bounds: &[i64], acon_bound: i64) -> GvRow {
    GvRow { ell, bounds: bounds.to_vec(), acon_bound }
}

impl ReferenceData {
    pub fn embedded() -> Self {
        const T: bool = true;
        const F: bool = false;
        ReferenceData {
            numerics: vec![
                nrow(1, &[1], &[2]),
                nrow(2, &[1, 2], &[4, 1]),
                nrow(3, &[1, 3, 2, 3], &[6, 1, 3, 1]),
                nrow(4, &[1, 4, 3, 2, 3, 4], &[8, 1, 2, 3, 2, 1]),
                nrow(5, &[1, 5, 4, 3, 5, 2, 5, 3, 4, 5], &[10, 1, 2, 3, 1, 5, 1, 3, 2, 1]),
                nrow(6, &[1, 6, 5, 4, 3, 5, 2, 5, 3, 4, 5, 6], &[12, 1, 2, 2, 3, 1, 5, 1, 3, 2, 2, 1]),
            ],
            deformation: vec![
                drow(1, &[0], &[1], &[1], &[T]),
                drow(2, &[2, 0], &[4, 1], &[3, 1], &[F, T]),
                drow(3, &[2, 0, 1], &[12, 1, 3], &[5, 1, 3], &[F, T, T]),
                drow(4, &[2, 0, 1, 2], &[24, 1, 2, 6], &[6, 1, 2, 4], &[F, T, T, F]),
                drow(5, &[2, 0, 1, 1, 0, 2], &[40, 1, 2, 4, 1, 10], &[7, 1, 2, 4, 1, 6], &[F, T, T, T, T, F]),
                drow(
                    6,
                    &[2, 0, 1, 1, 2, 1, 2],
                    &[60, 1, 2, 3, 6, 2, 15],
                    &[6, 1, 2, 3, 4, 2, 6],
                    &[F, T, T, T, F, T, F],
                ),
            ],
            gv: vec![
                gvrow(1, &[1], 1),
                gvrow(2, &[4, 1], 8),
                gvrow(3, &[5, 3, 1], 26),
                gvrow(4, &[6, 4, 2, 1], 56),
                gvrow(5, &[7, 6, 4, 2, 1], 124),
                gvrow(6, &[6, 6, 4, 3, 2, 1], 200),
            ],
            e6_trace: vec![1, 2, 3, 3, 2, 1],
            label3_placements: 5,
        }
    }

    pub fn numerics_row(&self, ell: u8) -> Option<&NumericsRow> {
        self.numerics.iter().find(|r| r.ell == ell)
    }

    pub fn deformation_row(&self, ell: u8) -> Option<&DeformationRow> {
        self.deformation.iter().find(|r| r.ell == ell)
    }

    pub fn gv_row(&self, ell: u8) -> Option<&GvRow> {
        self.gv.iter().find(|r| r.ell == ell)
    }
}
