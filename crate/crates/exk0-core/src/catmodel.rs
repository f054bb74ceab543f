//! Finite presentations of the object-and-conflation shadow of an
//! n-exangulated category.
//!
//! Objects are Krull--Schmidt skeletons: finite multisets of indecomposable
//! labels, with isomorphism equal to multiset equality. A conflation is an
//! ordered (n+2)-tuple of objects. A presentation declares the
//! indecomposables, a generating family of conflations, a generator (or
//! cogenerator) subcategory and, per indecomposable, a witness conflation
//! exhibiting the (co)generator property.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::abgroup::Subgroup;

/// Symbolic label of an indecomposable object. Unique within a
/// presentation; must match the DSL identifier grammar (letter followed by
/// letters, digits or underscores).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndecId(String);

impl IndecId {
    pub fn new(label: impl Into<String>) -> Self {
        IndecId(label.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Does the label match the identifier grammar?
    pub fn is_valid(&self) -> bool {
        let mut chars = self.0.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return false,
        }
        chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
    }
}

impl fmt::Display for IndecId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for IndecId {
    fn from(s: &str) -> Self {
        IndecId::new(s)
    }
}

/// A finite multiset of indecomposable labels: the isomorphism class of an
/// object under the Krull--Schmidt skeleton convention. The zero object is
/// the empty multiset.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct ObjectExpr {
    mults: BTreeMap<IndecId, u64>,
}

impl ObjectExpr {
    pub fn zero() -> Self {
        ObjectExpr::default()
    }

    /// The object consisting of a single indecomposable.
    pub fn indec(id: impl Into<IndecId>) -> Self {
        let mut mults = BTreeMap::new();
        mults.insert(id.into(), 1);
        ObjectExpr { mults }
    }

    /// Builds an object from (label, multiplicity) pairs; zero
    /// multiplicities are dropped, repeated labels accumulate.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (IndecId, u64)>,
    {
        let mut obj = ObjectExpr::zero();
        for (id, m) in terms {
            obj.add_multiple(&id, m);
        }
        obj
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }

    pub fn multiplicity(&self, id: &IndecId) -> u64 {
        self.mults.get(id).copied().unwrap_or(0)
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.mults.values().sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndecId, u64)> {
        self.mults.iter().map(|(id, &m)| (id, m))
    }

    pub fn support(&self) -> impl Iterator<Item = &IndecId> {
        self.mults.keys()
    }

    pub fn add_multiple(&mut self, id: &IndecId, m: u64) {
        if m == 0 {
            return;
        }
        *self.mults.entry(id.clone()).or_insert(0) += m;
    }

    /// Multiset scaling.
    pub fn scaled(&self, m: u64) -> ObjectExpr {
        if m == 0 {
            return ObjectExpr::zero();
        }
        ObjectExpr {
            mults: self.mults.iter().map(|(id, &k)| (id.clone(), k * m)).collect(),
        }
    }

    /// Pointwise difference, defined only when `other <= self` as a
    /// multiset.
    pub fn checked_sub(&self, other: &ObjectExpr) -> Option<ObjectExpr> {
        let mut out = self.clone();
        for (id, m) in other.iter() {
            let have = out.mults.get_mut(id)?;
            if *have < m {
                return None;
            }
            *have -= m;
            if *have == 0 {
                out.mults.remove(id);
            }
        }
        Some(out)
    }

    /// Is the multiset supported on the given label set?
    pub fn supported_on(&self, labels: &BTreeSet<IndecId>) -> bool {
        self.mults.keys().all(|id| labels.contains(id))
    }
}

impl fmt::Display for ObjectExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (id, m) in self.iter() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{id}")?;
            } else {
                write!(f, "{m}*{id}")?;
            }
        }
        Ok(())
    }
}

/// Direct sum of objects: multiset union. Commutative and associative with
/// the zero object as unit.
pub fn direct_sum(a: &ObjectExpr, b: &ObjectExpr) -> ObjectExpr {
    let mut out = a.clone();
    for (id, m) in b.iter() {
        out.add_multiple(id, m);
    }
    out
}

/// An ordered (n+2)-tuple of objects `X_0 -> ... -> X_{n+1}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Conflation {
    terms: Vec<ObjectExpr>,
}

impl Conflation {
    pub fn new(terms: Vec<ObjectExpr>) -> Self {
        Conflation { terms }
    }

    /// The all-zero conflation of the given arity.
    pub fn zero(n: usize) -> Self {
        Conflation { terms: alloc::vec![ObjectExpr::zero(); n + 2] }
    }

    /// The trivial conflation with `a` at positions `i` and `i + 1` and
    /// zero elsewhere, for `0 <= i <= n`.
    pub fn trivial(a: &ObjectExpr, i: usize, n: usize) -> Result<Self, CatModelError> {
        if i > n {
            return Err(CatModelError::PositionOutOfRange { position: i, n });
        }
        let mut terms = alloc::vec![ObjectExpr::zero(); n + 2];
        terms[i] = a.clone();
        terms[i + 1] = a.clone();
        Ok(Conflation { terms })
    }

    pub fn terms(&self) -> &[ObjectExpr] {
        &self.terms
    }

    pub fn arity(&self) -> usize {
        self.terms.len()
    }

    /// Reverses the term order (the duality adapter between generator and
    /// cogenerator mode).
    pub fn reversed(&self) -> Conflation {
        let mut terms = self.terms.clone();
        terms.reverse();
        Conflation { terms }
    }

    /// Termwise multiset scaling.
    pub fn scaled(&self, m: u64) -> Conflation {
        Conflation { terms: self.terms.iter().map(|t| t.scaled(m)).collect() }
    }

    /// Alternating-sum multiplicity vector over the given indecomposable
    /// order: `sum_i (-1)^i mult(X_i)` with `X_0` positive.
    pub fn alternating_sum(&self, indecs: &[IndecId]) -> Result<Vec<BigInt>, CatModelError> {
        let index: BTreeMap<&IndecId, usize> =
            indecs.iter().enumerate().map(|(i, id)| (id, i)).collect();
        let mut out = alloc::vec![BigInt::from(0); indecs.len()];
        for (pos, term) in self.terms.iter().enumerate() {
            let sign: i64 = if pos % 2 == 0 { 1 } else { -1 };
            for (id, m) in term.iter() {
                let Some(&i) = index.get(id) else {
                    return Err(CatModelError::UnknownIndec(id.clone()));
                };
                out[i] += BigInt::from(sign) * BigInt::from(m);
            }
        }
        Ok(out)
    }
}

/// Termwise direct sum of two conflations of the same arity.
pub fn sum_conflations(x: &Conflation, y: &Conflation) -> Result<Conflation, CatModelError> {
    if x.arity() != y.arity() {
        return Err(CatModelError::ArityMismatch { left: x.arity(), right: y.arity() });
    }
    Ok(Conflation {
        terms: x
            .terms
            .iter()
            .zip(&y.terms)
            .map(|(a, b)| direct_sum(a, b))
            .collect(),
    })
}

/// Is the generator subcategory described on the source or the target side
/// of witness conflations?
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorMode {
    Generator,
    Cogenerator,
}

/// The finite input datum: an n, the indecomposables, a generating family
/// of conflations, the generator subcategory and its witness conflations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryPresentation {
    pub name: String,
    pub n: usize,
    pub indecs: Vec<IndecId>,
    pub conflations: Vec<Conflation>,
    pub generator: BTreeSet<IndecId>,
    pub generator_mode: GeneratorMode,
    pub witnesses: BTreeMap<IndecId, Conflation>,
}

impl CategoryPresentation {
    pub fn index_of(&self, id: &IndecId) -> Option<usize> {
        self.indecs.iter().position(|x| x == id)
    }

    /// Multiplicity vector of an object over the declared indecomposable
    /// order.
    pub fn multiplicity_vector(&self, obj: &ObjectExpr) -> Result<Vec<BigInt>, CatModelError> {
        let mut out = alloc::vec![BigInt::from(0); self.indecs.len()];
        for (id, m) in obj.iter() {
            let Some(i) = self.index_of(id) else {
                return Err(CatModelError::UnknownIndec(id.clone()));
            };
            out[i] = BigInt::from(m);
        }
        Ok(out)
    }

    /// The dual presentation: every conflation reversed and the mode
    /// swapped. Applying it twice is the identity.
    pub fn reversed(&self) -> CategoryPresentation {
        CategoryPresentation {
            name: self.name.clone(),
            n: self.n,
            indecs: self.indecs.clone(),
            conflations: self.conflations.iter().map(Conflation::reversed).collect(),
            generator: self.generator.clone(),
            generator_mode: match self.generator_mode {
                GeneratorMode::Generator => GeneratorMode::Cogenerator,
                GeneratorMode::Cogenerator => GeneratorMode::Generator,
            },
            witnesses: self
                .witnesses
                .iter()
                .map(|(id, w)| (id.clone(), w.reversed()))
                .collect(),
        }
    }

    /// Witness conflation for an arbitrary object: the termwise direct sum
    /// of the per-indecomposable witnesses, repeated by multiplicity. In
    /// generator mode the last term is exactly `b`; dually in cogenerator
    /// mode the first term is.
    pub fn witness_for_object(&self, b: &ObjectExpr) -> Result<Conflation, CatModelError> {
        let mut acc = Conflation::zero(self.n);
        for (id, m) in b.iter() {
            let Some(w) = self.witnesses.get(id) else {
                return Err(CatModelError::MissingWitness(id.clone()));
            };
            acc = sum_conflations(&acc, &w.scaled(m))?;
        }
        Ok(acc)
    }

    /// Structural validation. Returns one diagnostic per violation; an
    /// empty list (ignoring warnings) means the presentation is
    /// well-formed. An even `n` yields a non-fatal warning, since the
    /// classification requires `n` odd.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let declared: BTreeSet<IndecId> = self.indecs.iter().cloned().collect();

        if self.n == 0 {
            out.push(Diagnostic::error(
                DiagnosticCode::InvalidN,
                Site::Header,
                "n must be a positive integer".to_string(),
            ));
        }

        let mut seen: BTreeSet<&IndecId> = BTreeSet::new();
        for id in &self.indecs {
            if !seen.insert(id) {
                out.push(Diagnostic::error(
                    DiagnosticCode::DuplicateIndec,
                    Site::Header,
                    alloc::format!("indecomposable '{id}' declared more than once"),
                ));
            }
            if !id.is_valid() {
                out.push(Diagnostic::error(
                    DiagnosticCode::InvalidLabel,
                    Site::Header,
                    alloc::format!("label '{id}' does not match the identifier grammar"),
                ));
            }
        }

        let arity = self.n + 2;
        for (i, c) in self.conflations.iter().enumerate() {
            if c.arity() != arity {
                out.push(Diagnostic::error(
                    DiagnosticCode::ArityError,
                    Site::Conflation(i),
                    alloc::format!("expected {arity} terms, found {}", c.arity()),
                ));
                continue;
            }
            for term in c.terms() {
                for id in term.support() {
                    if !declared.contains(id) {
                        out.push(Diagnostic::error(
                            DiagnosticCode::UnknownIndec,
                            Site::Conflation(i),
                            alloc::format!("undeclared indecomposable '{id}'"),
                        ));
                    }
                }
            }
        }

        for id in &self.generator {
            if !declared.contains(id) {
                out.push(Diagnostic::error(
                    DiagnosticCode::UnknownIndec,
                    Site::Generator,
                    alloc::format!("undeclared indecomposable '{id}' in generator"),
                ));
            }
        }

        // relation lattice of the declared (well-formed) conflations, for
        // the witness-is-a-conflation check
        let euler_cols: Vec<Vec<BigInt>> = self
            .conflations
            .iter()
            .filter(|c| c.arity() == arity)
            .filter_map(|c| c.alternating_sum(&self.indecs).ok())
            .collect();
        let relation_lattice = Subgroup::from_lattice_columns(self.indecs.len(), &euler_cols);

        for (id, w) in &self.witnesses {
            if !declared.contains(id) {
                out.push(Diagnostic::error(
                    DiagnosticCode::UnknownIndec,
                    Site::Witness(id.clone()),
                    alloc::format!("witness declared for undeclared indecomposable '{id}'"),
                ));
                continue;
            }
            if w.arity() != arity {
                out.push(Diagnostic::error(
                    DiagnosticCode::ArityError,
                    Site::Witness(id.clone()),
                    alloc::format!("expected {arity} terms, found {}", w.arity()),
                ));
                continue;
            }
            let mut shape_ok = true;
            for term in w.terms() {
                for tid in term.support() {
                    if !declared.contains(tid) {
                        out.push(Diagnostic::error(
                            DiagnosticCode::UnknownIndec,
                            Site::Witness(id.clone()),
                            alloc::format!("undeclared indecomposable '{tid}'"),
                        ));
                        shape_ok = false;
                    }
                }
            }
            if !shape_ok {
                continue;
            }
            // generator mode: A' -> G_1 -> ... -> G_n -> i;
            // cogenerator mode: i -> G_1 -> ... -> G_n -> A'
            let end = match self.generator_mode {
                GeneratorMode::Generator => &w.terms()[arity - 1],
                GeneratorMode::Cogenerator => &w.terms()[0],
            };
            if *end != ObjectExpr::indec(id.clone()) {
                out.push(Diagnostic::error(
                    DiagnosticCode::BadWitness,
                    Site::Witness(id.clone()),
                    alloc::format!(
                        "witness for '{id}' must end at the single indecomposable '{id}'"
                    ),
                ));
                continue;
            }
            let middles = &w.terms()[1..arity - 1];
            if middles.iter().any(|t| !t.supported_on(&self.generator)) {
                out.push(Diagnostic::error(
                    DiagnosticCode::BadWitness,
                    Site::Witness(id.clone()),
                    alloc::format!(
                        "witness for '{id}' has a middle term outside the generator subcategory"
                    ),
                ));
                continue;
            }
            // a witness must itself be a conflation of the presented
            // category; every conflation obtained by closure under sums and
            // trivial conflations has its alternating sum in the declared
            // relation lattice, so this is the checkable necessary condition
            if let Ok(chi) = w.alternating_sum(&self.indecs) {
                if !relation_lattice.contains(&chi).unwrap_or(false) {
                    out.push(Diagnostic::error(
                        DiagnosticCode::WitnessNotConflation,
                        Site::Witness(id.clone()),
                        alloc::format!(
                            "witness for '{id}' is not derivable from the declared conflations"
                        ),
                    ));
                }
            }
        }

        if self.n % 2 == 0 && self.n > 0 {
            out.push(Diagnostic::warning(
                DiagnosticCode::EvenN,
                Site::Header,
                alloc::format!(
                    "n = {} is even: K0 is still computed, but the classification requires n odd",
                    self.n
                ),
            ));
        }

        out
    }

    /// True when no error-severity diagnostic is present.
    pub fn is_well_formed(&self) -> bool {
        self.validate().iter().all(|d| d.severity != Severity::Error)
    }
}

/// Errors raised by conflation constructions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatModelError {
    PositionOutOfRange { position: usize, n: usize },
    ArityMismatch { left: usize, right: usize },
    UnknownIndec(IndecId),
    MissingWitness(IndecId),
}

impl fmt::Display for CatModelError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatModelError::PositionOutOfRange { position, n } => {
                write!(f, "position {position} out of range 0..={n}")
            }
            CatModelError::ArityMismatch { left, right } => {
                write!(f, "conflation arity mismatch: {left} vs {right}")
            }
            CatModelError::UnknownIndec(id) => write!(f, "unknown indecomposable '{id}'"),
            CatModelError::MissingWitness(id) => {
                write!(f, "no witness conflation declared for '{id}'")
            }
        }
    }
}

impl core::error::Error for CatModelError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// Machine-readable diagnostic codes; the DSL layer attaches source
/// locations to these.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagnosticCode {
    InvalidN,
    InvalidLabel,
    DuplicateIndec,
    ArityError,
    UnknownIndec,
    BadWitness,
    WitnessNotConflation,
    EvenN,
}

impl DiagnosticCode {
    pub fn as_str(&self) -> &'static str {
        match self {
            DiagnosticCode::InvalidN => "InvalidN",
            DiagnosticCode::InvalidLabel => "InvalidLabel",
            DiagnosticCode::DuplicateIndec => "DuplicateIndec",
            DiagnosticCode::ArityError => "ArityError",
            DiagnosticCode::UnknownIndec => "UnknownIndec",
            DiagnosticCode::BadWitness => "BadWitness",
            DiagnosticCode::WitnessNotConflation => "WitnessNotConflation",
            DiagnosticCode::EvenN => "EvenN",
        }
    }
}

/// Which part of the presentation a diagnostic refers to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Site {
    Header,
    Conflation(usize),
    Generator,
    Witness(IndecId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagnosticCode,
    pub site: Site,
    pub message: String,
}

impl Diagnostic {
    fn error(code: DiagnosticCode, site: Site, message: String) -> Self {
        Diagnostic { severity: Severity::Error, code, site, message }
    }

    fn warning(code: DiagnosticCode, site: Site, message: String) -> Self {
        Diagnostic { severity: Severity::Warning, code, site, message }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}[{}]: {}", self.code.as_str(), self.message)
    }
}
