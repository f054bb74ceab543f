//! Property tests for the Grothendieck-group layer: additivity of classes
//! and Euler vectors, correctness of the object-difference normal form in
//! both orientation modes, and the universal property of the projection.

use std::collections::{BTreeMap, BTreeSet};

use exk0_core::catmodel::{
    direct_sum, sum_conflations, CategoryPresentation, Conflation, GeneratorMode, IndecId,
    ObjectExpr,
};
use exk0_core::grothendieck::{compute_k0, euler_vector, K0Element};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

fn a2() -> CategoryPresentation {
    let s = ObjectExpr::indec("S");
    let p = ObjectExpr::indec("P");
    CategoryPresentation {
        name: "a2".to_string(),
        n: 1,
        indecs: vec!["S".into(), "P".into()],
        conflations: vec![Conflation::new(vec![s.clone(), p.clone(), s.clone()])],
        generator: BTreeSet::from(["P".into()]),
        generator_mode: GeneratorMode::Generator,
        witnesses: BTreeMap::from([
            ("S".into(), Conflation::new(vec![s.clone(), p.clone(), s.clone()])),
            ("P".into(), Conflation::new(vec![ObjectExpr::zero(), p.clone(), p])),
        ]),
    }
}

/// n = 3 with one long conflation and every indecomposable generating.
fn n3() -> CategoryPresentation {
    let ids: Vec<IndecId> = ["A", "B", "C", "D", "E"].into_iter().map(Into::into).collect();
    let witnesses = ids
        .iter()
        .map(|id| {
            let i = ObjectExpr::indec(id.clone());
            let z = ObjectExpr::zero;
            (id.clone(), Conflation::new(vec![z(), z(), z(), i.clone(), i]))
        })
        .collect();
    CategoryPresentation {
        name: "n3".to_string(),
        n: 3,
        indecs: ids.clone(),
        conflations: vec![Conflation::new(
            ids.iter().map(|i| ObjectExpr::indec(i.clone())).collect(),
        )],
        generator: ids.into_iter().collect(),
        generator_mode: GeneratorMode::Generator,
        witnesses,
    }
}

fn object_strategy(ids: &'static [&'static str], max: u64) -> impl Strategy<Value = ObjectExpr> {
    proptest::collection::vec(0..=max, ids.len()).prop_map(move |mults| {
        ObjectExpr::from_terms(
            ids.iter()
                .zip(&mults)
                .map(|(id, &m)| (IndecId::from(*id), m)),
        )
    })
}

proptest! {
    #[test]
    fn class_of_is_a_monoid_homomorphism(
        a in object_strategy(&["S", "P"], 6),
        b in object_strategy(&["S", "P"], 6),
    ) {
        let k = compute_k0(&a2()).unwrap();
        let sum = k.class_of(&direct_sum(&a, &b)).unwrap();
        let split = k.class_of(&a).unwrap().add(&k.class_of(&b).unwrap());
        prop_assert!(k.elements_equal(&sum, &split).unwrap());
    }

    #[test]
    fn euler_vectors_are_additive(
        obj in object_strategy(&["A", "B", "C", "D", "E"], 4),
        position in 0usize..=3,
        scale in 0u64..=3,
    ) {
        let pres = n3();
        let declared = &pres.conflations[0];

        // trivial conflations have Euler vector zero
        let trivial = Conflation::trivial(&obj, position, pres.n).unwrap();
        prop_assert!(euler_vector(&pres, &trivial).unwrap().0.iter().all(BigInt::is_zero));

        // sums add, scaling multiplies
        let summed = sum_conflations(&declared.scaled(scale), &trivial).unwrap();
        let expected: Vec<BigInt> = euler_vector(&pres, declared)
            .unwrap()
            .0
            .iter()
            .map(|x| x * BigInt::from(scale))
            .collect();
        prop_assert_eq!(euler_vector(&pres, &summed).unwrap().0, expected);
    }

    #[test]
    fn difference_normal_form_is_class_correct(
        coords in proptest::collection::vec(-5i64..=5, 2),
    ) {
        // generator mode and the dual cogenerator mode must both produce
        // A - G representatives of the input element
        for pres in [a2(), a2().reversed()] {
            let k = compute_k0(&pres).unwrap();
            let v = K0Element(coords.iter().map(|&x| BigInt::from(x)).collect());
            let (a, g) = k.express_as_difference(&v).unwrap();
            prop_assert!(g.supported_on(&pres.generator));
            let diff = k.class_of(&a).unwrap().sub(&k.class_of(&g).unwrap());
            prop_assert!(k.elements_equal(&diff, &v).unwrap());
        }
    }

    #[test]
    fn difference_normal_form_for_long_conflations(
        coords in proptest::collection::vec(-3i64..=3, 5),
    ) {
        let k = compute_k0(&n3()).unwrap();
        let v = K0Element(coords.iter().map(|&x| BigInt::from(x)).collect());
        let (a, g) = k.express_as_difference(&v).unwrap();
        prop_assert!(g.supported_on(&k.presentation().generator));
        let diff = k.class_of(&a).unwrap().sub(&k.class_of(&g).unwrap());
        prop_assert!(k.elements_equal(&diff, &v).unwrap());
    }

    #[test]
    fn projection_satisfies_the_universal_property(
        coords in proptest::collection::vec(-8i64..=8, 2),
    ) {
        // phi(A) = mult_S(A) + 2 mult_P(A) kills the Euler vector (2, -1),
        // so it must factor through K0: phi = (phi . lift) . project.
        let k = compute_k0(&a2()).unwrap();
        let phi = |v: &[BigInt]| -> BigInt { &v[0] + BigInt::from(2) * &v[1] };

        let v: Vec<BigInt> = coords.iter().map(|&x| BigInt::from(x)).collect();
        let projected = k.group().project(&v).unwrap();
        let lifted = k.group().lift(&projected).unwrap();
        prop_assert_eq!(phi(&lifted), phi(&v));
    }
}

#[test]
fn n3_k0_is_free_of_rank_four() {
    // one relation of content 1 on five generators
    let k = compute_k0(&n3()).unwrap();
    assert_eq!(k.group().free_rank(), 4);
    assert!(k.group().torsion().is_empty());
}
