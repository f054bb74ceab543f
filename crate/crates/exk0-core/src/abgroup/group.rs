use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::hnf::{hnf_chop_zero_columns, hnf_columns};
use super::snf::smith_normal_form;
use super::{AbGroupError, IntMatrix};

/// A finitely generated abelian group presented as a cokernel
/// `Z^k / L` for a relation lattice `L`, in invariant-factor form
/// `Z^r + Z/d_1 + ... + Z/d_t` with `d_1 | d_2 | ... | d_t`, each `d_i >= 2`.
///
/// The `projection` maps ambient vectors to the `r + t` invariant
/// coordinates (free first, then torsion); the stored `section` is a right
/// inverse of the projection, used to lift abstract elements back into the
/// ambient lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGenAbGroup {
    ambient_dim: usize,
    free_rank: usize,
    torsion: Vec<BigInt>,
    projection: IntMatrix,
    section: IntMatrix,
    relations_hnf: IntMatrix,
}

impl FinGenAbGroup {
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Invariant factors `d_1 | d_2 | ... | d_t`, each at least 2.
    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    /// Raw projection matrix, `(free_rank + torsion.len()) x ambient_dim`.
    pub fn projection(&self) -> &IntMatrix {
        &self.projection
    }

    /// Canonical column-HNF basis of the relation lattice (zero columns
    /// dropped).
    pub fn relations_hnf(&self) -> &IntMatrix {
        &self.relations_hnf
    }

    /// Order of the group, or `None` when it is infinite.
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Image of an ambient vector in invariant coordinates: free
    /// coordinates exact, torsion coordinates reduced into `[0, d_i)`.
    pub fn project(&self, v: &[BigInt]) -> Result<Vec<BigInt>, AbGroupError> {
        self.check_dim(v.len())?;
        let mut w = self.projection.mul_vec(v);
        for (slot, d) in self.torsion.iter().enumerate() {
            let i = self.free_rank + slot;
            w[i] = w[i].mod_floor(d);
        }
        Ok(w)
    }

    /// Lifts invariant coordinates to an ambient vector; a right inverse of
    /// [`FinGenAbGroup::project`].
    pub fn lift(&self, coords: &[BigInt]) -> Result<Vec<BigInt>, AbGroupError> {
        let expected = self.free_rank + self.torsion.len();
        if coords.len() != expected {
            return Err(AbGroupError::DimensionMismatch { expected, got: coords.len() });
        }
        Ok(self.section.mul_vec(coords))
    }

    /// Do two ambient vectors represent the same group element?
    pub fn elements_equal(&self, a: &[BigInt], b: &[BigInt]) -> Result<bool, AbGroupError> {
        self.check_dim(a.len())?;
        self.check_dim(b.len())?;
        let diff: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x - y).collect();
        Ok(super::hnf::hnf_contains(&self.relations_hnf, &diff))
    }

    pub(crate) fn check_dim(&self, got: usize) -> Result<(), AbGroupError> {
        if got != self.ambient_dim {
            return Err(AbGroupError::DimensionMismatch { expected: self.ambient_dim, got });
        }
        Ok(())
    }
}

/// Presents `Z^k / (column span of relations)` in invariant-factor form.
/// `k` is the number of rows of `relations`; a matrix with zero columns
/// yields the free group `Z^k`.
pub fn cokernel(relations: &IntMatrix) -> FinGenAbGroup {
    let k = relations.rows();
    let snf = smith_normal_form(relations);
    let diag = snf.diagonal();

    // In coordinates y = U x the relation lattice is spanned by the diagonal,
    // so coordinate i survives as Z (d_i = 0 or absent), dies (d_i = 1) or
    // becomes Z/d_i (d_i >= 2).
    let mut free_idx: Vec<usize> = Vec::new();
    let mut torsion_idx: Vec<usize> = Vec::new();
    let mut torsion: Vec<BigInt> = Vec::new();
    for i in 0..k {
        let d = diag.get(i).cloned().unwrap_or_else(BigInt::zero);
        if d.is_zero() {
            free_idx.push(i);
        } else if !d.is_one() {
            torsion_idx.push(i);
            torsion.push(d);
        }
    }

    let mut selected = free_idx.clone();
    selected.extend(torsion_idx.iter().copied());
    let projection = snf.u.select_rows(&selected);
    let section = snf.u_inv.select_columns(&selected);
    let relations_hnf = hnf_chop_zero_columns(hnf_columns(relations));

    FinGenAbGroup {
        ambient_dim: k,
        free_rank: free_idx.len(),
        torsion,
        projection,
        section,
        relations_hnf,
    }
}
