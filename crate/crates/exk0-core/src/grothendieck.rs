//! The Grothendieck group of a presented category: Euler vectors, the
//! cokernel presentation of K0, classes of objects, the generator subgroup
//! and the `[A] - [G]` normal form.
//!
//! K0 is computed as the quotient of the free group on the declared
//! indecomposables by the lattice spanned by the Euler vectors of the
//! declared conflations. Trivial conflations have Euler vector zero and
//! the Euler vector of a termwise sum is the sum of Euler vectors, so the
//! closure of the declared family under those constructions contributes no
//! further relations.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::abgroup::{cokernel, AbGroupError, FinGenAbGroup, IntMatrix, Subgroup};
use crate::catmodel::{
    direct_sum, CatModelError, CategoryPresentation, Conflation, Diagnostic, GeneratorMode,
    ObjectExpr, Severity,
};

/// Alternating sum of term multiplicity vectors of a conflation, indexed by
/// the presentation's declared indecomposable order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EulerVector(pub Vec<BigInt>);

/// An element of K0 given by an ambient representative in the free group on
/// indecomposables. Equality of elements is decided through the relation
/// lattice, never coordinatewise; see [`GrothendieckGroup::elements_equal`].
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct K0Element(pub Vec<BigInt>);

impl K0Element {
    pub fn zero(dim: usize) -> Self {
        K0Element(alloc::vec![BigInt::zero(); dim])
    }

    pub fn add(&self, other: &K0Element) -> K0Element {
        K0Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &K0Element) -> K0Element {
        K0Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

/// K0 of a presented category, as an invariant-factor decomposition
/// together with the projection from the free group on indecomposables.
#[derive(Clone, Debug)]
pub struct GrothendieckGroup {
    pres: CategoryPresentation,
    group: FinGenAbGroup,
}

/// Euler vector of a conflation over the presentation's indecomposables:
/// `sum_i (-1)^i mult(X_i)` with the sign of `X_0` positive.
pub fn euler_vector(
    pres: &CategoryPresentation,
    c: &Conflation,
) -> Result<EulerVector, GrothendieckError> {
    Ok(EulerVector(c.alternating_sum(&pres.indecs)?))
}

/// Computes K0 as the cokernel of the matrix whose columns are the Euler
/// vectors of the declared conflations. The presentation must validate
/// cleanly (warnings are fine; an even `n` still has a Grothendieck group,
/// since the extra generator of the even case is the empty multiset and
/// encodes as the zero vector).
pub fn compute_k0(pres: &CategoryPresentation) -> Result<GrothendieckGroup, GrothendieckError> {
    let errors: Vec<Diagnostic> = pres
        .validate()
        .into_iter()
        .filter(|d| d.severity == Severity::Error)
        .collect();
    if !errors.is_empty() {
        return Err(GrothendieckError::InvalidPresentation(errors));
    }
    let cols: Vec<Vec<BigInt>> = pres
        .conflations
        .iter()
        .map(|c| euler_vector(pres, c).map(|e| e.0))
        .collect::<Result<_, _>>()?;
    let relations = IntMatrix::from_columns(pres.indecs.len(), &cols);
    Ok(GrothendieckGroup { pres: pres.clone(), group: cokernel(&relations) })
}

impl GrothendieckGroup {
    pub fn presentation(&self) -> &CategoryPresentation {
        &self.pres
    }

    pub fn group(&self) -> &FinGenAbGroup {
        &self.group
    }

    pub fn ambient_dim(&self) -> usize {
        self.group.ambient_dim()
    }

    /// `[A]`: the multiplicity vector of `A` as a K0 element. Linear over
    /// direct sums by construction.
    pub fn class_of(&self, a: &ObjectExpr) -> Result<K0Element, GrothendieckError> {
        Ok(K0Element(self.pres.multiplicity_vector(a)?))
    }

    /// Do two representatives denote the same element of K0?
    pub fn elements_equal(&self, a: &K0Element, b: &K0Element) -> Result<bool, GrothendieckError> {
        Ok(self.group.elements_equal(&a.0, &b.0)?)
    }

    pub fn is_zero_element(&self, a: &K0Element) -> Result<bool, GrothendieckError> {
        self.elements_equal(a, &K0Element::zero(self.ambient_dim()))
    }

    /// The subgroup generated by classes of generator-subcategory
    /// indecomposables; the trivial subgroup when the generator is empty.
    pub fn h_g(&self) -> Result<Subgroup, GrothendieckError> {
        let gens: Vec<Vec<BigInt>> = self
            .pres
            .generator
            .iter()
            .map(|id| self.pres.multiplicity_vector(&ObjectExpr::indec(id.clone())))
            .collect::<Result<_, _>>()?;
        Ok(Subgroup::from_generators(&self.group, &gens)?)
    }

    /// Subgroup generated by the classes of arbitrary objects.
    pub fn subgroup_generated_by(
        &self,
        objects: &[ObjectExpr],
    ) -> Result<Subgroup, GrothendieckError> {
        let gens: Vec<Vec<BigInt>> = objects
            .iter()
            .map(|o| self.pres.multiplicity_vector(o))
            .collect::<Result<_, _>>()?;
        Ok(Subgroup::from_generators(&self.group, &gens)?)
    }

    /// Writes an element as `[A] - [G]` with `G` supported on the generator
    /// subcategory. Requires `n` odd and a witness for every
    /// indecomposable appearing negatively.
    ///
    /// One substitution step, following the normal-form argument: split `v`
    /// into `[X] - [B]` by coordinate sign, take the witness conflation of
    /// `B`, replace `[B]` by the alternating sum it satisfies, and regroup
    /// positive and negative terms.
    pub fn express_as_difference(
        &self,
        v: &K0Element,
    ) -> Result<(ObjectExpr, ObjectExpr), GrothendieckError> {
        if self.pres.n % 2 == 0 {
            return Err(GrothendieckError::EvenN { n: self.pres.n });
        }
        if v.0.len() != self.ambient_dim() {
            return Err(GrothendieckError::Ab(AbGroupError::DimensionMismatch {
                expected: self.ambient_dim(),
                got: v.0.len(),
            }));
        }
        // orient so witnesses read A' -> G_1 -> ... -> G_n -> i
        let oriented = match self.pres.generator_mode {
            GeneratorMode::Generator => self.pres.clone(),
            GeneratorMode::Cogenerator => self.pres.reversed(),
        };

        // positive/negative split in declared indecomposable order
        let mut x = ObjectExpr::zero();
        let mut b = ObjectExpr::zero();
        for (i, coeff) in v.0.iter().enumerate() {
            let id = &self.pres.indecs[i];
            match coeff.sign() {
                Sign::NoSign => {}
                Sign::Plus => {
                    let m = coeff.to_u64().ok_or(GrothendieckError::MultiplicityOverflow)?;
                    x.add_multiple(id, m);
                }
                Sign::Minus => {
                    let m = (-coeff)
                        .to_u64()
                        .ok_or(GrothendieckError::MultiplicityOverflow)?;
                    b.add_multiple(id, m);
                }
            }
        }

        let witness = oriented.witness_for_object(&b)?;
        let n = oriented.n;
        let terms = witness.terms();
        let b_prime = &terms[0];

        // v = [X] + [B'] - [G_1] + [G_2] - ... - [G_n], n odd, so
        // A = X + B' + G_2 + G_4 + ... + G_{n-1} and G = G_1 + G_3 + ... + G_n.
        let mut a = direct_sum(&x, b_prime);
        let mut g = ObjectExpr::zero();
        for i in 1..=n {
            if i % 2 == 0 {
                a = direct_sum(&a, &terms[i]);
            } else {
                g = direct_sum(&g, &terms[i]);
            }
        }
        Ok((a, g))
    }
}

/// Errors from the Grothendieck-group layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GrothendieckError {
    InvalidPresentation(Vec<Diagnostic>),
    EvenN { n: usize },
    MultiplicityOverflow,
    Cat(CatModelError),
    Ab(AbGroupError),
}

impl fmt::Display for GrothendieckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GrothendieckError::InvalidPresentation(diags) => {
                write!(f, "presentation is not well-formed ({} error(s))", diags.len())
            }
            GrothendieckError::EvenN { n } => {
                write!(
                    f,
                    "n = {n} is even; the normal form and classification require n odd"
                )
            }
            GrothendieckError::MultiplicityOverflow => {
                write!(f, "object multiplicity exceeds the machine range")
            }
            GrothendieckError::Cat(e) => write!(f, "{e}"),
            GrothendieckError::Ab(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for GrothendieckError {}

impl From<CatModelError> for GrothendieckError {
    fn from(e: CatModelError) -> Self {
        GrothendieckError::Cat(e)
    }
}

impl From<AbGroupError> for GrothendieckError {
    fn from(e: AbGroupError) -> Self {
        GrothendieckError::Ab(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catmodel::fixtures::{a2, v4};
    use crate::catmodel::IndecId;
    use alloc::collections::{BTreeMap, BTreeSet};
    use alloc::string::ToString;
    use alloc::vec;
    use num_traits::One;

    #[test]
    fn euler_vector_examples() {
        let pres = a2();
        // trivial conflations cancel
        let t = Conflation::trivial(&ObjectExpr::indec("S"), 0, 1).unwrap();
        assert_eq!(
            euler_vector(&pres, &t).unwrap().0,
            vec![BigInt::zero(), BigInt::zero()]
        );
        // (S, P, S) over (S, P) gives (2, -1)
        let e = euler_vector(&pres, &pres.conflations[0]).unwrap();
        assert_eq!(e.0, vec![BigInt::from(2), BigInt::from(-1)]);
    }

    #[test]
    fn euler_sign_pattern_for_n3() {
        let ids: Vec<IndecId> = ["A", "B", "C", "D", "E"].into_iter().map(Into::into).collect();
        let pres = CategoryPresentation {
            name: "n3".to_string(),
            n: 3,
            indecs: ids.clone(),
            conflations: vec![Conflation::new(
                ids.iter().map(|i| ObjectExpr::indec(i.clone())).collect(),
            )],
            generator: BTreeSet::new(),
            generator_mode: GeneratorMode::Generator,
            witnesses: BTreeMap::new(),
        };
        let e = euler_vector(&pres, &pres.conflations[0]).unwrap();
        let expect: Vec<BigInt> = [1, -1, 1, -1, 1].into_iter().map(BigInt::from).collect();
        assert_eq!(e.0, expect);
    }

    #[test]
    fn k0_free_on_one_generator() {
        let pres = CategoryPresentation {
            name: "free1".to_string(),
            n: 1,
            indecs: vec!["X".into()],
            conflations: vec![],
            generator: BTreeSet::new(),
            generator_mode: GeneratorMode::Generator,
            witnesses: BTreeMap::new(),
        };
        let k = compute_k0(&pres).unwrap();
        assert_eq!(k.group().free_rank(), 1);
        assert!(k.group().torsion().is_empty());
    }

    #[test]
    fn k0_of_a2_is_z_with_p_twice_s() {
        let k = compute_k0(&a2()).unwrap();
        assert_eq!(k.group().free_rank(), 1);
        assert!(k.group().torsion().is_empty());
        let s = k.class_of(&ObjectExpr::indec("S")).unwrap();
        let p = k.class_of(&ObjectExpr::indec("P")).unwrap();
        // [P] = 2 [S]
        let two_s = s.add(&s);
        assert!(k.elements_equal(&p, &two_s).unwrap());
        assert!(!k.elements_equal(&p, &s).unwrap());
    }

    #[test]
    fn k0_of_v4_is_klein_four() {
        let k = compute_k0(&v4()).unwrap();
        assert_eq!(k.group().free_rank(), 0);
        assert_eq!(k.group().torsion(), &[BigInt::from(2), BigInt::from(2)]);
        // [2X] = 0
        let two_x = k.class_of(&ObjectExpr::indec("X").scaled(2)).unwrap();
        assert!(k.is_zero_element(&two_x).unwrap());
        // [0] = 0
        let zero = k.class_of(&ObjectExpr::zero()).unwrap();
        assert!(k.is_zero_element(&zero).unwrap());
    }

    #[test]
    fn class_of_is_additive() {
        let k = compute_k0(&a2()).unwrap();
        let s = ObjectExpr::indec("S");
        let p = ObjectExpr::indec("P");
        let sp = direct_sum(&s, &p);
        let lhs = k.class_of(&sp).unwrap();
        let rhs = k.class_of(&s).unwrap().add(&k.class_of(&p).unwrap());
        assert!(k.elements_equal(&lhs, &rhs).unwrap());
        // [S + P] = 3 [S] in K0 = Z
        let s_cls = k.class_of(&s).unwrap();
        let three_s = s_cls.add(&s_cls).add(&s_cls);
        assert!(k.elements_equal(&lhs, &three_s).unwrap());
    }

    #[test]
    fn h_g_examples() {
        // empty generator: trivial subgroup
        let k = compute_k0(&v4()).unwrap();
        assert_eq!(k.h_g().unwrap(), Subgroup::trivial(k.group()));

        // A2 with generator {P}: the subgroup 2Z of K0 = Z
        let k = compute_k0(&a2()).unwrap();
        let h = k.h_g().unwrap();
        assert_eq!(h.quotient_order(), Some(BigInt::from(2)));
        let s = k.class_of(&ObjectExpr::indec("S")).unwrap();
        assert!(!h.contains(&s.0).unwrap());
        assert!(h.contains(&s.add(&s).0).unwrap());

        // generator = all indecs: the whole group
        let mut pres = a2();
        pres.generator = BTreeSet::from([IndecId::from("S"), IndecId::from("P")]);
        pres.witnesses.insert(
            "S".into(),
            Conflation::new(vec![
                ObjectExpr::zero(),
                ObjectExpr::indec("S"),
                ObjectExpr::indec("S"),
            ]),
        );
        let k = compute_k0(&pres).unwrap();
        assert_eq!(k.h_g().unwrap(), Subgroup::whole(k.group()));
    }

    #[test]
    fn express_as_difference_examples() {
        let k = compute_k0(&a2()).unwrap();

        // already a class of an object
        let p = k.class_of(&ObjectExpr::indec("P")).unwrap();
        let (a, g) = k.express_as_difference(&p).unwrap();
        assert_eq!(a, ObjectExpr::indec("P"));
        assert!(g.is_zero());

        // v = -[S]: one substitution with witness (S, P, S) gives (S, P)
        let v = K0Element(vec![BigInt::from(-1), BigInt::zero()]);
        let (a, g) = k.express_as_difference(&v).unwrap();
        assert_eq!(a, ObjectExpr::indec("S"));
        assert_eq!(g, ObjectExpr::indec("P"));
        // class-correct: [A] - [G] = v
        let diff = k.class_of(&a).unwrap().sub(&k.class_of(&g).unwrap());
        assert!(k.elements_equal(&diff, &v).unwrap());

        // v = 0 -> (0, 0)
        let (a, g) = k.express_as_difference(&K0Element::zero(2)).unwrap();
        assert!(a.is_zero() && g.is_zero());
    }

    #[test]
    fn express_as_difference_refuses_even_n() {
        let pres = CategoryPresentation {
            name: "even".to_string(),
            n: 2,
            indecs: vec!["X".into()],
            conflations: vec![],
            generator: BTreeSet::new(),
            generator_mode: GeneratorMode::Generator,
            witnesses: BTreeMap::new(),
        };
        let k = compute_k0(&pres).unwrap();
        let err = k.express_as_difference(&K0Element(vec![BigInt::one()])).unwrap_err();
        assert_eq!(err, GrothendieckError::EvenN { n: 2 });
    }

    #[test]
    fn compute_k0_rejects_invalid_presentation() {
        let mut pres = a2();
        pres.conflations.push(Conflation::new(vec![ObjectExpr::indec("S")]));
        assert!(matches!(
            compute_k0(&pres),
            Err(GrothendieckError::InvalidPresentation(_))
        ));
    }
}
