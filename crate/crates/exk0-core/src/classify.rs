//! The subgroup / dense-complete-subcategory correspondence.
//!
//! Subcategories are represented intensionally by a membership test: a
//! [`SubcategoryHandle`] pairs K0 with a subgroup `H` containing the
//! generator subgroup, and an object belongs to the subcategory exactly
//! when its class lies in `H`. Extensional seed lists exist only as inputs
//! to [`g_subgroup`] and as test probes. Equivalence of objects modulo the
//! subcategory is searched for within an explicit bound; a bound-exhausted
//! outcome is inconclusive, never a failure.

use alloc::vec::Vec;
use core::fmt;

use rand_core::RngCore;

use crate::abgroup::{enumerate_subgroups_containing, AbGroupError, Subgroup};
use crate::catmodel::{
    direct_sum, sum_conflations, CatModelError, Conflation, IndecId, ObjectExpr,
};
use crate::grothendieck::{GrothendieckError, GrothendieckGroup, K0Element};

/// A dense complete subcategory, given by the subgroup that classifies it:
/// an object is a member exactly when its class lies in `h`. The subgroup
/// must contain the generator subgroup.
#[derive(Clone, Debug)]
pub struct SubcategoryHandle<'a> {
    k: &'a GrothendieckGroup,
    h: Subgroup,
}

/// A subcategory given extensionally by seed objects, the input form of the
/// map `g`. Must be nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionalSubcategory {
    pub seeds: Vec<ObjectExpr>,
}

/// Outcome of the bounded search for an equivalence witness
/// `A + S_A = B + S_B` with `S_A`, `S_B` members of the subcategory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GsWitness {
    /// Both pads are members and the multiset equation holds exactly.
    Witness { s_a: ObjectExpr, s_b: ObjectExpr },
    /// `[A] - [B]` is not in `H`, so no witness can exist at any bound.
    DefiniteNegative,
    /// No witness within the bound; inconclusive.
    BoundExhausted { bound: u64 },
}

impl GsWitness {
    pub fn is_witness(&self) -> bool {
        matches!(self, GsWitness::Witness { .. })
    }
}

/// Per-conflation outcome of a completeness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompletenessOutcome {
    /// All terms in the subcategory (in particular each n+1 of them were,
    /// and the remaining one followed).
    Pass,
    /// Fewer than n+1 terms are members, so completeness says nothing.
    NotApplicable,
    /// Some n+1 terms are members but a remaining one is not. This cannot
    /// happen for a handle built from a subgroup; it signals a bug.
    Violation { position: usize },
}

/// Report of [`verify_complete`]: declared conflations first, then sampled
/// sums, in sample order under the caller's RNG.
#[derive(Clone, Debug)]
pub struct CompletenessReport {
    pub checked: Vec<(Conflation, CompletenessOutcome)>,
}

impl CompletenessReport {
    pub fn violations(&self) -> usize {
        self.checked
            .iter()
            .filter(|(_, o)| matches!(o, CompletenessOutcome::Violation { .. }))
            .count()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }
}

/// Report of [`verify_dense`]: for every indecomposable, the complement
/// that realizes it as a summand of a member, and whether membership held.
#[derive(Clone, Debug)]
pub struct DensityReport {
    pub entries: Vec<(IndecId, ObjectExpr, bool)>,
}

impl DensityReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|(_, _, ok)| *ok)
    }
}

/// Report of [`roundtrip_fg`]: membership of every object up to the bound
/// in `f(g(seeds))`, with each member either confirmed by an equivalence
/// witness or left inconclusive by bound exhaustion.
#[derive(Clone, Debug)]
pub struct FgReport {
    pub confirmed: Vec<(ObjectExpr, GsWitness)>,
    pub exhausted: Vec<ObjectExpr>,
    pub nonmembers: Vec<ObjectExpr>,
}

impl FgReport {
    pub fn conclusive(&self) -> bool {
        self.exhausted.is_empty()
    }
}

impl<'a> SubcategoryHandle<'a> {
    /// Builds the handle for `f(H)`. Fails unless `H` contains the
    /// generator subgroup.
    pub fn new(k: &'a GrothendieckGroup, h: Subgroup) -> Result<Self, ClassifyError> {
        let hg = k.h_g()?;
        if !h.contains_subgroup(&hg)? {
            return Err(ClassifyError::MissingGeneratorClasses);
        }
        Ok(SubcategoryHandle { k, h })
    }

    pub fn group(&self) -> &'a GrothendieckGroup {
        self.k
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.h
    }
}

/// Is `A` a member of the subcategory? Exactly the test `[A] ∈ H`.
pub fn f_member(s: &SubcategoryHandle<'_>, a: &ObjectExpr) -> Result<bool, ClassifyError> {
    let cls = s.k.class_of(a)?;
    Ok(s.h.contains(&cls.0)?)
}

/// The subgroup generated by the classes of the seed objects.
pub fn g_subgroup(
    k: &GrothendieckGroup,
    s: &ExtensionalSubcategory,
) -> Result<Subgroup, ClassifyError> {
    if s.seeds.is_empty() {
        return Err(ClassifyError::EmptySeeds);
    }
    Ok(k.subgroup_generated_by(&s.seeds)?)
}

/// Enumerates the full correspondence: one `(H, f(H))` pair for every
/// subgroup `H` between the generator subgroup and K0. Requires `n` odd, a
/// finite quotient by the generator subgroup (within `cap`), and witnesses
/// for every indecomposable.
pub fn classify_all<'a>(
    k: &'a GrothendieckGroup,
    cap: u64,
) -> Result<Vec<(Subgroup, SubcategoryHandle<'a>)>, ClassifyError> {
    require_odd_n(k)?;
    require_witnesses(k)?;
    let hg = k.h_g()?;
    let subgroups = enumerate_subgroups_containing(k.group(), &hg, cap)?;
    subgroups
        .into_iter()
        .map(|h| {
            let handle = SubcategoryHandle::new(k, h.clone())?;
            Ok((h, handle))
        })
        .collect()
}

/// Checks `g(f(H)) = H` by generating `f(H)` members whose classes must
/// recover `H`: each indecomposable's density completion, the generator
/// indecomposables, and the two halves of the `[A] - [G]` normal form of
/// each lattice basis vector of `H`.
pub fn roundtrip_gf(k: &GrothendieckGroup, h: &Subgroup) -> Result<bool, ClassifyError> {
    require_odd_n(k)?;
    let handle = SubcategoryHandle::new(k, h.clone())?;
    let mut members: Vec<ObjectExpr> = Vec::new();
    members.push(ObjectExpr::zero());
    for id in k.presentation().indecs.iter() {
        members.push(density_completion(k, id)?);
    }
    for id in k.presentation().generator.iter() {
        members.push(ObjectExpr::indec(id.clone()));
    }
    let basis = h.lattice_basis();
    for j in 0..basis.cols() {
        let v = K0Element(basis.column(j));
        let (a, g) = k.express_as_difference(&v)?;
        members.push(a);
        members.push(g);
    }
    for m in &members {
        debug_assert!(f_member(&handle, m)?, "generated objects must be members");
    }
    let recovered = k.subgroup_generated_by(&members)?;
    Ok(recovered == *h)
}

/// Checks `f(g(seeds)) = closure of seeds` at bounded scale: every object
/// up to the total-multiplicity bound that is a member of `f(g(seeds))`
/// must admit an equivalence witness against the zero object.
pub fn roundtrip_fg(
    k: &GrothendieckGroup,
    s: &ExtensionalSubcategory,
    bound: u64,
) -> Result<FgReport, ClassifyError> {
    require_odd_n(k)?;
    let h = g_subgroup(k, s)?;
    let handle = SubcategoryHandle::new(k, h)?;
    let mut report = FgReport {
        confirmed: Vec::new(),
        exhausted: Vec::new(),
        nonmembers: Vec::new(),
    };
    for a in objects_up_to(&k.presentation().indecs, bound) {
        if !f_member(&handle, &a)? {
            report.nonmembers.push(a);
            continue;
        }
        match gs_witness(&handle, &a, &ObjectExpr::zero(), bound)? {
            w @ GsWitness::Witness { .. } => report.confirmed.push((a, w)),
            GsWitness::BoundExhausted { .. } => report.exhausted.push(a),
            GsWitness::DefiniteNegative => {
                // f-membership is exactly the necessary condition, so a
                // definite negative here contradicts the membership test.
                return Err(ClassifyError::Internal);
            }
        }
    }
    Ok(report)
}

/// Bounded search for pads `S_A`, `S_B` in the subcategory with
/// `A + S_A = B + S_B` as multisets. `[A] - [B] ∉ H` is a definite
/// negative with no search; otherwise pads of total multiplicity up to
/// `bound` are tried in canonical order and the first hit is returned.
pub fn gs_witness(
    s: &SubcategoryHandle<'_>,
    a: &ObjectExpr,
    b: &ObjectExpr,
    bound: u64,
) -> Result<GsWitness, ClassifyError> {
    let cls_a = s.k.class_of(a)?;
    let cls_b = s.k.class_of(b)?;
    let diff = cls_a.sub(&cls_b);
    if !s.h.contains(&diff.0)? {
        return Ok(GsWitness::DefiniteNegative);
    }
    let a_sum = |pad: &ObjectExpr| direct_sum(a, pad);
    for s_a in objects_up_to(&s.k.presentation().indecs, bound) {
        // the multiset equation forces S_B = A + S_A - B
        let Some(s_b) = a_sum(&s_a).checked_sub(b) else {
            continue;
        };
        if s_b.total_multiplicity() > bound {
            continue;
        }
        if f_member(s, &s_a)? && f_member(s, &s_b)? {
            return Ok(GsWitness::Witness { s_a, s_b });
        }
    }
    Ok(GsWitness::BoundExhausted { bound })
}

/// Completeness check: on each declared conflation and `samples` random
/// sums of declared and trivial conflations, whenever all terms but one
/// are members, the remaining term must be a member too. This can never
/// fail for a handle built from a subgroup; a violation is a bug.
pub fn verify_complete(
    s: &SubcategoryHandle<'_>,
    samples: u64,
    rng: &mut dyn RngCore,
) -> Result<CompletenessReport, ClassifyError> {
    let pres = s.k.presentation();
    let mut checked: Vec<(Conflation, CompletenessOutcome)> = Vec::new();
    for c in &pres.conflations {
        let outcome = completeness_outcome(s, c)?;
        checked.push((c.clone(), outcome));
    }
    for _ in 0..samples {
        let Some(c) = random_conflation_sum(pres, rng)? else {
            break; // nothing to sample from
        };
        let outcome = completeness_outcome(s, &c)?;
        checked.push((c, outcome));
    }
    Ok(CompletenessReport { checked })
}

/// Density check: every indecomposable `i` must be a summand of a member,
/// exhibited by the explicit complement from its witness conflation.
pub fn verify_dense(s: &SubcategoryHandle<'_>) -> Result<DensityReport, ClassifyError> {
    require_odd_n(s.k)?;
    let mut entries = Vec::new();
    for id in s.k.presentation().indecs.iter() {
        let completion = density_completion(s.k, id)?;
        let ok = f_member(s, &completion)?;
        let complement = completion
            .checked_sub(&ObjectExpr::indec(id.clone()))
            .expect("completion contains the indecomposable");
        entries.push((id.clone(), complement, ok));
    }
    Ok(DensityReport { entries })
}

/// All objects on the given indecomposables with total multiplicity at
/// most `bound`, in canonical order (total multiplicity, then lexicographic
/// on the multiset).
pub fn objects_up_to(indecs: &[IndecId], bound: u64) -> Vec<ObjectExpr> {
    let mut out = Vec::new();
    let mut current = ObjectExpr::zero();
    fill(indecs, bound, &mut current, &mut out);
    out.sort_by_key(|o| (o.total_multiplicity(), o.clone()));
    out
}

fn fill(indecs: &[IndecId], budget: u64, current: &mut ObjectExpr, out: &mut Vec<ObjectExpr>) {
    let Some((first, rest)) = indecs.split_first() else {
        out.push(current.clone());
        return;
    };
    for m in 0..=budget {
        let mut next = current.clone();
        next.add_multiple(first, m);
        fill(rest, budget - m, &mut next, out);
    }
}

/// `i + A'_i`, the member of every valid subcategory that exhibits `i` as a
/// summand: the positive half of the normal form of `-[i]`, whose class
/// lies in the generator subgroup.
fn density_completion(k: &GrothendieckGroup, id: &IndecId) -> Result<ObjectExpr, ClassifyError> {
    let cls = k.class_of(&ObjectExpr::indec(id.clone()))?;
    let minus = K0Element::zero(k.ambient_dim()).sub(&cls);
    let (a, _g) = k.express_as_difference(&minus)?;
    Ok(direct_sum(&ObjectExpr::indec(id.clone()), &a))
}

fn completeness_outcome(
    s: &SubcategoryHandle<'_>,
    c: &Conflation,
) -> Result<CompletenessOutcome, ClassifyError> {
    let member: Vec<bool> = c
        .terms()
        .iter()
        .map(|t| f_member(s, t))
        .collect::<Result<_, _>>()?;
    let outside = member.iter().filter(|m| !**m).count();
    Ok(match outside {
        0 => CompletenessOutcome::Pass,
        1 => {
            let position = member.iter().position(|m| !*m).expect("one nonmember");
            CompletenessOutcome::Violation { position }
        }
        _ => CompletenessOutcome::NotApplicable,
    })
}

/// A random sum of one to three conflations, each either declared or a
/// trivial conflation on a random indecomposable and position. `None` when
/// the presentation offers nothing to sample.
fn random_conflation_sum(
    pres: &crate::catmodel::CategoryPresentation,
    rng: &mut dyn RngCore,
) -> Result<Option<Conflation>, ClassifyError> {
    let have_declared = !pres.conflations.is_empty();
    let have_indecs = !pres.indecs.is_empty();
    if !have_declared && !have_indecs {
        return Ok(None);
    }
    let mut acc = Conflation::zero(pres.n);
    let count = 1 + pick(rng, 3);
    for _ in 0..count {
        let use_declared = have_declared && (!have_indecs || rng.next_u32() % 2 == 0);
        let next = if use_declared {
            pres.conflations[pick(rng, pres.conflations.len() as u64) as usize].clone()
        } else {
            let id = &pres.indecs[pick(rng, pres.indecs.len() as u64) as usize];
            let position = pick(rng, pres.n as u64 + 1) as usize;
            Conflation::trivial(&ObjectExpr::indec(id.clone()), position, pres.n)?
        };
        acc = sum_conflations(&acc, &next)?;
    }
    Ok(Some(acc))
}

/// Uniform-ish draw from `0..n` (modulo bias is irrelevant at sampling
/// scale).
fn pick(rng: &mut dyn RngCore, n: u64) -> u64 {
    u64::from(rng.next_u32()) % n
}

fn require_odd_n(k: &GrothendieckGroup) -> Result<(), ClassifyError> {
    let n = k.presentation().n;
    if n % 2 == 0 {
        return Err(ClassifyError::EvenN { n });
    }
    Ok(())
}

fn require_witnesses(k: &GrothendieckGroup) -> Result<(), ClassifyError> {
    for id in k.presentation().indecs.iter() {
        if !k.presentation().witnesses.contains_key(id) {
            return Err(ClassifyError::Cat(CatModelError::MissingWitness(id.clone())));
        }
    }
    Ok(())
}

/// Errors from the classification layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassifyError {
    EvenN { n: usize },
    /// The candidate subgroup does not contain the generator subgroup.
    MissingGeneratorClasses,
    EmptySeeds,
    /// An impossible state that indicates a bug in this crate.
    Internal,
    Groth(GrothendieckError),
    Cat(CatModelError),
    Ab(AbGroupError),
}

impl fmt::Display for ClassifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassifyError::EvenN { n } => write!(
                f,
                "n = {n} is even; the classification requires n odd"
            ),
            ClassifyError::MissingGeneratorClasses => {
                write!(f, "subgroup does not contain the generator subgroup")
            }
            ClassifyError::EmptySeeds => write!(f, "seed object list is empty"),
            ClassifyError::Internal => write!(f, "internal invariant violated"),
            ClassifyError::Groth(e) => write!(f, "{e}"),
            ClassifyError::Cat(e) => write!(f, "{e}"),
            ClassifyError::Ab(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for ClassifyError {}

impl From<GrothendieckError> for ClassifyError {
    fn from(e: GrothendieckError) -> Self {
        match e {
            GrothendieckError::EvenN { n } => ClassifyError::EvenN { n },
            other => ClassifyError::Groth(other),
        }
    }
}

impl From<CatModelError> for ClassifyError {
    fn from(e: CatModelError) -> Self {
        ClassifyError::Cat(e)
    }
}

impl From<AbGroupError> for ClassifyError {
    fn from(e: AbGroupError) -> Self {
        ClassifyError::Ab(e)
    }
}
