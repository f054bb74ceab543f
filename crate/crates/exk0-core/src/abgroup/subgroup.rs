use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::hnf::{hnf_chop_zero_columns, hnf_columns, hnf_contains};
use super::{AbGroupError, FinGenAbGroup, IntMatrix};

/// Default cap on the order of the quotient `G / H0` during subgroup
/// enumeration.
pub const DEFAULT_SUBGROUP_CAP: u64 = 10_000;

/// A subgroup of a finitely generated abelian group `G = Z^k / R`,
/// represented by the full preimage lattice `L` with `R <= L <= Z^k`.
///
/// The basis is the canonical column Hermite normal form with zero columns
/// dropped, so structural equality of `Subgroup` values is equality of
/// subgroups.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subgroup {
    ambient_dim: usize,
    basis: IntMatrix,
}

impl Subgroup {
    /// Subgroup generated by the given ambient vectors (together with the
    /// relation lattice of `ambient`, which every subgroup contains).
    pub fn from_generators(
        ambient: &FinGenAbGroup,
        gens: &[Vec<BigInt>],
    ) -> Result<Subgroup, AbGroupError> {
        for g in gens {
            ambient.check_dim(g.len())?;
        }
        let gen_matrix = IntMatrix::from_columns(ambient.ambient_dim(), gens);
        let stacked = gen_matrix.hstack(ambient.relations_hnf());
        Ok(Subgroup {
            ambient_dim: ambient.ambient_dim(),
            basis: hnf_chop_zero_columns(hnf_columns(&stacked)),
        })
    }

    /// The whole group as a subgroup of itself.
    pub fn whole(ambient: &FinGenAbGroup) -> Subgroup {
        Subgroup {
            ambient_dim: ambient.ambient_dim(),
            basis: IntMatrix::identity(ambient.ambient_dim()),
        }
    }

    /// The trivial subgroup `{0}` (the relation lattice itself).
    pub fn trivial(ambient: &FinGenAbGroup) -> Subgroup {
        Subgroup {
            ambient_dim: ambient.ambient_dim(),
            basis: ambient.relations_hnf().clone(),
        }
    }

    /// A lattice given directly by spanning columns, with no relation
    /// augmentation. Used for raw lattice membership questions.
    pub fn from_lattice_columns(dim: usize, columns: &[Vec<BigInt>]) -> Subgroup {
        let m = IntMatrix::from_columns(dim, columns);
        Subgroup {
            ambient_dim: dim,
            basis: hnf_chop_zero_columns(hnf_columns(&m)),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Canonical HNF basis of the preimage lattice (no zero columns).
    pub fn lattice_basis(&self) -> &IntMatrix {
        &self.basis
    }

    /// Exact membership of an ambient vector, decided by solving the
    /// triangular HNF system.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool, AbGroupError> {
        if v.len() != self.ambient_dim {
            return Err(AbGroupError::DimensionMismatch {
                expected: self.ambient_dim,
                got: v.len(),
            });
        }
        Ok(hnf_contains(&self.basis, v))
    }

    /// Is `other` a subgroup of `self`?
    pub fn contains_subgroup(&self, other: &Subgroup) -> Result<bool, AbGroupError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(AbGroupError::DimensionMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        for j in 0..other.basis.cols() {
            if !hnf_contains(&self.basis, &other.basis.column(j)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The preimage lattice has full rank iff the quotient `Z^k / L` is
    /// finite.
    pub fn is_full_rank(&self) -> bool {
        self.basis.cols() == self.ambient_dim
    }

    /// Order of `Z^k / L` when finite: the product of the HNF pivots.
    pub fn quotient_order(&self) -> Option<BigInt> {
        if !self.is_full_rank() {
            return None;
        }
        let mut order = BigInt::from(1);
        for j in 0..self.basis.cols() {
            order *= &self.basis[(j, j)];
        }
        Some(order)
    }
}

/// Residue system of `Z^k / L` for a full-rank lattice `L` in canonical
/// column HNF. Canonical representatives have coordinate `i` in
/// `[0, basis[i][i])`.
struct FiniteQuotient<'a> {
    basis: &'a IntMatrix,
    dim: usize,
}

impl<'a> FiniteQuotient<'a> {
    fn new(h: &'a Subgroup) -> FiniteQuotient<'a> {
        debug_assert!(h.is_full_rank());
        FiniteQuotient { basis: &h.basis, dim: h.ambient_dim }
    }

    /// Canonical representative of `v + L`. The basis is lower triangular
    /// (pivot of column `i` at row `i`), so reducing coordinates top-down
    /// leaves earlier coordinates reduced.
    fn reduce(&self, v: &[BigInt]) -> Vec<BigInt> {
        let mut r = v.to_vec();
        for i in 0..self.dim {
            let q = r[i].div_floor(&self.basis[(i, i)]);
            if q.is_zero() {
                continue;
            }
            for row in i..self.dim {
                let delta = &q * &self.basis[(row, i)];
                r[row] -= delta;
            }
        }
        r
    }

    fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let sum: Vec<BigInt> = a.iter().zip(b).map(|(x, y)| x + y).collect();
        self.reduce(&sum)
    }

    /// All canonical representatives, in lexicographic order.
    fn elements(&self) -> Vec<Vec<BigInt>> {
        let mut out: Vec<Vec<BigInt>> = alloc::vec![Vec::new()];
        for i in 0..self.dim {
            let d = self.basis[(i, i)].to_u64().expect("quotient order is capped");
            let mut next = Vec::with_capacity(out.len() * d as usize);
            for prefix in &out {
                for x in 0..d {
                    let mut v = prefix.clone();
                    v.push(BigInt::from(x));
                    next.push(v);
                }
            }
            out = next;
        }
        out
    }

    /// Closure of a set of representatives under addition, i.e. the
    /// subgroup they generate in the finite quotient.
    fn close(&self, gens: &BTreeSet<Vec<BigInt>>) -> BTreeSet<Vec<BigInt>> {
        let zero = alloc::vec![BigInt::zero(); self.dim];
        let mut elems: BTreeSet<Vec<BigInt>> = BTreeSet::new();
        elems.insert(zero.clone());
        let mut queue: VecDeque<Vec<BigInt>> = VecDeque::new();
        queue.push_back(zero);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.add(&x, g);
                if elems.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        elems
    }
}

/// Complete, duplicate-free list of the subgroups `H` with
/// `H0 <= H <= ambient`, each in canonical form. The list always includes
/// `H0` and the whole group, and is sorted by quotient size (larger
/// subgroups first means smaller quotient order) then by canonical basis,
/// so the output is deterministic.
///
/// Works by breadth-first closure in the finite quotient `Z^k / L(H0)`:
/// starting from the trivial subgroup, repeatedly adjoin one quotient
/// element and close under addition.
pub fn enumerate_subgroups_containing(
    ambient: &FinGenAbGroup,
    h0: &Subgroup,
    cap: u64,
) -> Result<Vec<Subgroup>, AbGroupError> {
    ambient.check_dim(h0.ambient_dim())?;
    let Some(order) = h0.quotient_order() else {
        return Err(AbGroupError::InfiniteQuotient);
    };
    if order > BigInt::from(cap) {
        return Err(AbGroupError::QuotientTooLarge {
            order: alloc::string::ToString::to_string(&order),
            cap,
        });
    }

    let quotient = FiniteQuotient::new(h0);
    let all = quotient.elements();

    let trivial = quotient.close(&BTreeSet::new());
    let mut seen: BTreeSet<BTreeSet<Vec<BigInt>>> = BTreeSet::new();
    let mut queue: VecDeque<BTreeSet<Vec<BigInt>>> = VecDeque::new();
    seen.insert(trivial.clone());
    queue.push_back(trivial);
    while let Some(s) = queue.pop_front() {
        for e in &all {
            if s.contains(e) {
                continue;
            }
            let mut gens = s.clone();
            gens.insert(e.clone());
            let t = quotient.close(&gens);
            if seen.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }

    let mut out: Vec<Subgroup> = Vec::with_capacity(seen.len());
    for elems in seen {
        // the preimage lattice is spanned by the representatives together
        // with L(H0); the relation lattice is inside L(H0) already
        let mut gens: Vec<Vec<BigInt>> = elems.into_iter().collect();
        gens.extend(gens_of(h0));
        out.push(Subgroup::from_generators(ambient, &gens)?);
    }
    out.sort_by(|a, b| {
        let oa = a.quotient_order();
        let ob = b.quotient_order();
        oa.cmp(&ob).then_with(|| a.basis.cmp(&b.basis))
    });
    out.dedup();
    Ok(out)
}

fn gens_of(s: &Subgroup) -> Vec<Vec<BigInt>> {
    (0..s.basis.cols()).map(|j| s.basis.column(j)).collect()
}
