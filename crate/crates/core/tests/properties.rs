mod common;

use catuskoti::corpus::formulas_up_to_depth;
use catuskoti::koti::{
    build_koti, check_representatives, classify_formula, exhaustiveness, mutual_exclusion,
    negate_tuple, partition_report, tuples_equivalent, KotiKind, Quadrant, TupleOrder,
};
use catuskoti::many_valued::{
    apply4, pair_eval, Connective, FourValue, SemanticsId, ValuationPair,
};
use catuskoti::predicate::{
    enumerate_models, equivalent_fin, eval_model, guard_alternatives, predicate_koti, ModelChecker,
    MonadicFormula,
};
use catuskoti::{parse, Checker, Formula, SemanticStatus, SentenceLetter, Valuation};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn letter() -> impl Strategy<Value = Formula> {
    prop_oneof![Just("A"), Just("B"), Just("C")].prop_map(Formula::atom)
}

fn formula(depth: u32) -> impl Strategy<Value = Formula> {
    letter().prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.and(r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.or(r)),
            (inner.clone(), inner).prop_map(|(l, r)| l.implies(r)),
        ]
    })
}

fn valuation() -> impl Strategy<Value = Valuation> {
    any::<[bool; 3]>().prop_map(|bits| {
        let letters = ["A", "B", "C"].map(|n| SentenceLetter::new(n).unwrap());
        Valuation::new(letters.into_iter().zip(bits)).unwrap()
    })
}

fn four_value() -> impl Strategy<Value = FourValue> {
    prop::sample::select(FourValue::ORDER.to_vec())
}

fn biconditional(p: &Formula, q: &Formula) -> Formula {
    p.clone()
        .implies(q.clone())
        .and(q.clone().implies(p.clone()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_round_trips(f in formula(6)) {
        let reparsed = parse(&f.render()).unwrap();
        prop_assert_eq!(&reparsed, &f);
        prop_assert_eq!(reparsed.letters(), f.letters());
    }

    #[test]
    fn tautology_iff_negation_is_contradiction(f in formula(4)) {
        let checker = Checker::default();
        let taut = matches!(checker.status(&f).unwrap(), SemanticStatus::Tautology);
        let neg_contra = matches!(checker.status(&f.clone().not()).unwrap(), SemanticStatus::Contradiction);
        prop_assert_eq!(taut, neg_contra);
    }

    #[test]
    fn generic_witnesses_are_genuine(f in formula(4)) {
        if let SemanticStatus::Generic { falsifying, satisfying } = Checker::default().status(&f).unwrap() {
            prop_assert!(!catuskoti::semantics::eval(&f, &falsifying).unwrap());
            prop_assert!(catuskoti::semantics::eval(&f, &satisfying).unwrap());
        }
    }

    #[test]
    fn equivalence_agrees_with_mutual_entailment_and_biconditional(p in formula(3), q in formula(3)) {
        let checker = Checker::default();
        let eq = checker.equivalent(&p, &q).unwrap().holds;
        let both = checker.entails(std::slice::from_ref(&p), &q).unwrap().holds
            && checker.entails(std::slice::from_ref(&q), &p).unwrap().holds;
        let bicond = checker.is_tautology(&biconditional(&p, &q)).unwrap();
        prop_assert_eq!(eq, both);
        prop_assert_eq!(eq, bicond);
    }

    #[test]
    fn everything_entails_excluded_middle(p in formula(4), a in formula(3)) {
        let checker = Checker::default();
        prop_assert!(checker.entails(std::slice::from_ref(&p), &Formula::atom("A").or(Formula::atom("A").not())).unwrap().holds);
        prop_assert!(checker.entails(&[p], &a.clone().or(a.not())).unwrap().holds);
    }

    #[test]
    fn separable_implies_generic(a in formula(3), b in formula(3)) {
        let checker = Checker::default();
        if let Some(w) = checker.separable(&a, &b).unwrap() {
            prop_assert!(checker.status(&a).unwrap().is_generic());
            prop_assert!(checker.status(&b).unwrap().is_generic());
            prop_assert_eq!(classify_formula(&a, &w.v0, &w.v1).unwrap(), Quadrant::L1);
            prop_assert_eq!(classify_formula(&b, &w.v0, &w.v1).unwrap(), Quadrant::L2);
        }
    }

    #[test]
    fn quadrant_matches_pair_value(p in formula(4), v0 in valuation(), v1 in valuation()) {
        let quadrant = classify_formula(&p, &v0, &v1).unwrap();
        let value = pair_eval(&p, &ValuationPair::new(v0, v1).unwrap()).unwrap();
        let expected = match value {
            FourValue::N => Quadrant::L1,
            FourValue::B => Quadrant::L2,
            FourValue::T => Quadrant::L3,
            FourValue::F => Quadrant::L4,
        };
        prop_assert_eq!(quadrant, expected);
    }

    #[test]
    fn proper_tuple_is_exclusive_and_exhaustive(a in formula(4), b in formula(4)) {
        let checker = Checker::default();
        let t = build_koti(KotiKind::Proper14, &a, Some(&b)).unwrap();
        prop_assert!(mutual_exclusion(&t, &checker).unwrap().holds);
        prop_assert!(exhaustiveness(&t, &checker).unwrap().holds);
    }

    #[test]
    fn denying_excluded_middle_entails_anything(a in formula(3), p in formula(3)) {
        let checker = Checker::default();
        let premise = a.clone().or(a.not()).not();
        prop_assert!(checker.entails(&[premise], &p.not()).unwrap().holds);
    }

    #[test]
    fn trilemma_denial_entails_denial_of_disjunction(a in formula(3), b in formula(3)) {
        let checker = Checker::default();
        let conclusion = a.clone().or(b.clone()).not();
        prop_assert!(checker.entails(&[a.not(), b.not()], &conclusion).unwrap().holds);
    }

    #[test]
    fn double_negated_tuple_is_equivalent(a in formula(3), b in formula(3), kind in prop::sample::select(KotiKind::ALL.to_vec())) {
        let checker = Checker::default();
        let t = build_koti(kind, &a, (kind.generator_count() == 2).then_some(&b)).unwrap();
        let twice: Vec<Formula> = negate_tuple(&t).into_iter().map(Formula::not).collect();
        prop_assert!(tuples_equivalent(&twice, &t.alternatives, TupleOrder::Ordered, &checker).unwrap().holds);
    }

    #[test]
    fn dual_tuple_matches_modified_after_swap(a in formula(4)) {
        let checker = Checker::default();
        let dual = build_koti(KotiKind::Dual13, &a, None).unwrap().alternatives;
        let mut modified = build_koti(KotiKind::Modified3, &a, None).unwrap().alternatives;
        modified.swap(2, 3);
        prop_assert!(tuples_equivalent(&dual, &modified, TupleOrder::Ordered, &checker).unwrap().holds);
    }

    #[test]
    fn diagonal_collapses_to_classical(f in formula(5), v in valuation()) {
        let value = pair_eval(&f, &ValuationPair::new(v.clone(), v).unwrap()).unwrap();
        prop_assert!(value == FourValue::T || value == FourValue::F);
    }

    #[test]
    fn negation_is_compositional(f in formula(5), v1 in valuation(), v2 in valuation()) {
        let vp = ValuationPair::new(v1, v2).unwrap();
        let inner = pair_eval(&f, &vp).unwrap();
        let outer = pair_eval(&f.not(), &vp).unwrap();
        prop_assert_eq!(outer, apply4(SemanticsId::Pairing, Connective::Not, inner, None).unwrap());
    }

    #[test]
    fn pairing_lattice_laws(x in four_value(), y in four_value(), z in four_value()) {
        let and = |p, q| apply4(SemanticsId::Pairing, Connective::And, p, Some(q)).unwrap();
        let or = |p, q| apply4(SemanticsId::Pairing, Connective::Or, p, Some(q)).unwrap();
        prop_assert_eq!(and(x, x), x);
        prop_assert_eq!(or(x, x), x);
        prop_assert_eq!(and(x, y), and(y, x));
        prop_assert_eq!(or(x, y), or(y, x));
        prop_assert_eq!(and(and(x, y), z), and(x, and(y, z)));
        prop_assert_eq!(or(or(x, y), z), or(x, or(y, z)));
        prop_assert_eq!(and(x, or(x, y)), x);
        prop_assert_eq!(or(x, and(x, y)), x);
    }
}

// f < b < t and f < n < t, with b and n incomparable.
fn below(x: FourValue, y: FourValue) -> bool {
    x == y || x == FourValue::F || y == FourValue::T
}

#[test]
fn pairing_conjunction_and_disjunction_are_meet_and_join() {
    for x in FourValue::ORDER {
        for y in FourValue::ORDER {
            let lower: Vec<FourValue> = FourValue::ORDER
                .into_iter()
                .filter(|&z| below(z, x) && below(z, y))
                .collect();
            let upper: Vec<FourValue> = FourValue::ORDER
                .into_iter()
                .filter(|&z| below(x, z) && below(y, z))
                .collect();
            let meet = *lower
                .iter()
                .find(|&&m| lower.iter().all(|&z| below(z, m)))
                .unwrap();
            let join = *upper
                .iter()
                .find(|&&j| upper.iter().all(|&z| below(j, z)))
                .unwrap();
            assert_eq!(
                apply4(SemanticsId::Pairing, Connective::And, x, Some(y)).unwrap(),
                meet,
                "{x} & {y}"
            );
            assert_eq!(
                apply4(SemanticsId::Pairing, Connective::Or, x, Some(y)).unwrap(),
                join,
                "{x} | {y}"
            );
        }
    }
}

#[test]
fn negations_are_involutions_differing_on_b_and_n() {
    let not = |sem, x| apply4(sem, Connective::Not, x, None).unwrap();
    let mut differ = Vec::new();
    for x in FourValue::ORDER {
        for sem in [SemanticsId::Pairing, SemanticsId::Fde] {
            assert_eq!(not(sem, not(sem, x)), x);
        }
        if not(SemanticsId::Pairing, x) != not(SemanticsId::Fde, x) {
            differ.push(x);
        }
    }
    assert_eq!(differ, [FourValue::B, FourValue::N]);
}

#[test]
fn separability_is_strictly_stronger_than_genericity() {
    let checker = Checker::default();
    let (a, b) = (parse("A").unwrap(), parse("A | B").unwrap());
    assert!(checker.status(&a).unwrap().is_generic());
    assert!(checker.status(&b).unwrap().is_generic());
    assert!(checker.separable(&a, &b).unwrap().is_none());
}

#[test]
fn separable_pairs_give_distinct_modified_representatives() {
    let checker = Checker::default();
    let mut rng = StdRng::seed_from_u64(7);
    let mut found = 0;
    while found < 100 {
        let a = common::random_formula(&mut rng, 3, &["A", "B", "C"]);
        let b = common::random_formula(&mut rng, 3, &["A", "B", "C"]);
        let Some(w) = checker.separable(&a, &b).unwrap() else {
            continue;
        };
        let t = build_koti(KotiKind::Modified7, &a, Some(&b)).unwrap();
        let report = check_representatives(&t, &w.v0, &w.v1).unwrap();
        assert!(report.distinct, "({a}, {b}): {:?}", report.quadrants);
        found += 1;
    }
}

#[test]
fn shallow_corpus_partitions_completely() {
    let letters: Vec<SentenceLetter> = ["A", "B"]
        .iter()
        .map(|n| SentenceLetter::new(n).unwrap())
        .collect();
    let corpus = formulas_up_to_depth(1, &letters);
    assert_eq!(corpus.len(), 16);
    let (v0, v1): (Valuation, Valuation) = ("A=0,B=1".parse().unwrap(), "A=1,B=0".parse().unwrap());
    let report = partition_report(&corpus, &v0, &v1).unwrap();
    let total: usize = Quadrant::PAIRED
        .iter()
        .map(|&q| report.members(q).len())
        .sum();
    assert_eq!(total, 16);
    for f in &corpus {
        let q = classify_formula(f, &v0, &v1).unwrap();
        assert!(report.members(q).contains(f));
    }
}

fn body() -> impl Strategy<Value = MonadicFormula> {
    let atom = prop_oneof![
        Just(MonadicFormula::atom("F", "x")),
        Just(MonadicFormula::atom("G", "x")),
        Just(MonadicFormula::exists("y", MonadicFormula::atom("G", "y"))),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(MonadicFormula::not),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.and(r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| l.or(r)),
            (inner.clone(), inner).prop_map(|(l, r)| l.implies(r)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn quantifier_duality(body in body()) {
        let predicates = vec!["F".to_string(), "G".to_string()];
        let not_all = MonadicFormula::forall("x", body.clone()).not();
        let some_not = MonadicFormula::exists("x", body.clone().not());
        let not_some = MonadicFormula::exists("x", body.clone()).not();
        let all_not = MonadicFormula::forall("x", body.not());
        for n in 1..=3 {
            for model in enumerate_models(&predicates, n, 16).unwrap() {
                prop_assert_eq!(eval_model(&not_all, &model).unwrap(), eval_model(&some_not, &model).unwrap());
                prop_assert_eq!(eval_model(&not_some, &model).unwrap(), eval_model(&all_not, &model).unwrap());
            }
        }
    }
}

#[test]
fn guarded_tuple_is_equivalent_up_to_size_three() {
    let koti = predicate_koti();
    let checker = ModelChecker::with_max_domain(3);
    for (plain, guarded) in koti.proper.iter().zip(guard_alternatives(&koti.proper)) {
        assert!(
            checker.equivalent(plain, &guarded).unwrap().holds,
            "{}",
            plain.render()
        );
    }
}

#[test]
fn small_domains_decide_the_builtin_formulas() {
    let koti = predicate_koti();
    let all: Vec<&MonadicFormula> = koti.proper.iter().chain(&koti.reduced).collect();
    for p in &all {
        for q in &all {
            let small = equivalent_fin(p, q, 2).unwrap().holds;
            let large = equivalent_fin(p, q, 4).unwrap().holds;
            assert_eq!(small, large, "{} vs {}", p.render(), q.render());
        }
    }
}
