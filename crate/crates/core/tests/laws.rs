use fga_core::embed::isomorphic;
use fga_core::named::{cycle, nat};
use fga_core::{
    catalog, check_law, check_law_with, factorization_experiment, find_counterexample, parse_fg, plus, strong_leq,
    times, write_fg, Error, Exec, Expectation, FlowGraph, RunOptions, UniverseSpec, Verdict,
};

fn has(found: &[Vec<FlowGraph>], want: &[usize]) -> bool {
    found
        .iter()
        .any(|s| s.len() == want.len() && s.iter().zip(want).all(|(g, &n)| isomorphic(g, &nat(n))))
}

#[test]
fn associativity_holds_on_small_triples() {
    let r = check_law("oplus_assoc", &UniverseSpec::new(3)).unwrap();
    assert_eq!(r.verdict, Verdict::Holds);
    assert!(r.counterexample.is_none());
    assert_eq!(r.searched_up_to, Some(3));
}

#[test]
fn commutativity_failure_is_confirmed_with_the_three_cycle() {
    let r = check_law("oplus_comm", &UniverseSpec::new(3)).unwrap();
    assert_eq!(r.verdict, Verdict::ExpectedFailureConfirmed);
    assert_eq!(r.reverified, Some(true));
    assert!(r.named_instance.as_ref().unwrap().violated);
}

#[test]
fn weak_order_is_not_transitive() {
    let r = check_law("weak_transitive", &UniverseSpec::new(4)).unwrap();
    assert_eq!(r.verdict, Verdict::ExpectedFailureConfirmed);
    let ce: Vec<FlowGraph> = r.counterexample.unwrap().iter().map(|t| parse_fg(t).unwrap()).collect();
    assert_eq!(ce.len(), 3);
}

#[test]
fn unknown_law_is_an_error() {
    assert!(matches!(check_law("no_such_law", &UniverseSpec::new(1)), Err(Error::UnknownLaw(_))));
}

#[test]
fn left_distributivity_counterexample_is_the_three_cycle_with_unit_chains() {
    let ce = find_counterexample(
        |t| Ok(isomorphic(&times(t[0], &plus(t[1], t[2])), &plus(&times(t[0], t[1]), &times(t[0], t[2])))),
        3,
        &UniverseSpec::new(3),
    )
    .unwrap()
    .expect("left distributivity fails");
    // The search returns a smallest violation; the paper's instance has to
    // be among the violations as well.
    let lhs = |a: &FlowGraph, b: &FlowGraph, c: &FlowGraph| times(a, &plus(b, c));
    let rhs = |a: &FlowGraph, b: &FlowGraph, c: &FlowGraph| plus(&times(a, b), &times(a, c));
    assert!(!isomorphic(&lhs(&ce[0], &ce[1], &ce[2]), &rhs(&ce[0], &ce[1], &ce[2])));
    let c3 = cycle(3, 0, 1);
    assert!(!isomorphic(&lhs(&c3, &nat(1), &nat(1)), &rhs(&c3, &nat(1), &nat(1))));
}

#[test]
fn sum_identity_has_no_counterexample() {
    let ce = find_counterexample(
        |t| Ok(isomorphic(&plus(t[0], &nat(0)), t[0]) && isomorphic(&plus(&nat(0), t[0]), t[0])),
        1,
        &UniverseSpec::new(4),
    )
    .unwrap();
    assert!(ce.is_none());
}

#[test]
fn strong_antisymmetry_fails_at_four_vertices_or_fewer() {
    let ce = find_counterexample(
        |t| {
            let both = strong_leq(t[0], t[1])?.is_some() && strong_leq(t[1], t[0])?.is_some();
            Ok(!both || isomorphic(t[0], t[1]))
        },
        2,
        &UniverseSpec::new(4),
    )
    .unwrap()
    .expect("strong antisymmetry fails");
    assert!(ce.iter().all(|g| g.vertex_count() <= 4));
    assert!(!isomorphic(&ce[0], &ce[1]));
}

#[test]
fn factorizations_of_small_chains() {
    let f6 = factorization_experiment(&nat(6)).unwrap();
    assert!(has(&f6, &[2, 3]) && has(&f6, &[3, 2]));
    let f5 = factorization_experiment(&nat(5)).unwrap();
    assert_eq!(f5.len(), 1);
    assert!(has(&f5, &[5]));
    assert!(has(&factorization_experiment(&nat(4)).unwrap(), &[2, 2]));
}

#[test]
fn reports_do_not_depend_on_execution_mode() {
    for id in ["otimes_assoc", "weak_transitive", "crossing_summands", "cancel_left_general"] {
        let spec = fga_core::find_law(id).unwrap().universe(Some(2));
        let run = |exec| {
            let opts = RunOptions {
                exec,
                ..RunOptions::default()
            };
            check_law_with(id, &spec, &opts).unwrap()
        };
        let (seq, par) = (run(Exec::Sequential), run(Exec::Parallel));
        assert_eq!(seq.line(false), par.line(false), "{id}");
        assert_eq!(seq.to_json(false), par.to_json(false), "{id}");
    }
}

#[test]
fn every_law_behaves_as_catalogued_on_tiny_universes() {
    // At ≤2 edges everything is cheap; laws expected to hold must hold and
    // every reported counterexample must survive a text round trip.
    for law in catalog() {
        let r = check_law(law.id, &law.universe(Some(2))).unwrap();
        if let Some(ce) = &r.counterexample {
            assert_eq!(r.reverified, Some(true), "{}", law.id);
            for text in ce {
                assert_eq!(&write_fg(&parse_fg(text).unwrap()), text);
            }
        }
        let literal_failures = ["otimes_identity", "split_edge_to_F1", "prod_irreducibility"];
        if law.expectation == Expectation::Holds && !literal_failures.contains(&law.id) {
            assert_eq!(r.verdict, Verdict::Holds, "{}", law.id);
        }
    }
}

#[test]
fn literal_statements_fail_where_expected() {
    // Kept in the catalog as written; their smallest violations are units
    // other than F₁.
    for id in ["otimes_identity", "split_edge_to_F1", "prod_irreducibility"] {
        let r = check_law(id, &UniverseSpec::new(2)).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFound, "{id}");
    }
}
