mod common;

use proptest::prelude::*;

use common::*;
use dfan::cli::{parse_problem, Names, ProblemFile};
use dfan::coeffs::{ParamIdeal, ParamPoly};
use dfan::fan::same_elements;
use dfan::hdo::{BaseOrder, HOperator};
use dfan::polyhedra::{newton, weight_dot};
use dfan::standard::{reduced_basis, CompletionOptions};

fn q_ideals() -> Vec<ParamIdeal> {
    let y = ParamPoly::var(0);
    vec![
        ParamIdeal::zero(),
        ParamIdeal::new(vec![y.clone()], true),
        ParamIdeal::new(vec![&(&y * &y) + &ParamPoly::one()], true),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn exp_and_grading_are_additive(
        (p, q, w) in (1usize..=2).prop_flat_map(|n| (rat_op(n, 3, true), rat_op(n, 3, true), admissible_weight(n)))
    ) {
        prop_assert!(exp_additive(&p, &q, &homogenized_order(p.n(), &w)));
        prop_assert!(grading_additive(&p, &q, &w));
    }

    #[test]
    fn orders_are_admissible(
        a in exponent(2, 3, true),
        b in exponent(2, 3, true),
        c in exponent(2, 3, true),
        w in admissible_weight(2),
    ) {
        prop_assert!(order_axioms(&a, &b, &c, &homogenized_order(2, &w)));
    }

    #[test]
    fn w_and_w_star_are_dual(w in any_weight(2), d in point(2)) {
        prop_assert!(duality_holds(&w, &d));
    }

    #[test]
    fn fractions_form_a_field(a in fraction(), b in fraction(), c in fraction(), k in 0usize..3) {
        prop_assert!(field_axioms(&a, &b, &c, &q_ideals()[k]));
    }

    #[test]
    fn division_contract(
        p in rat_op(2, 4, true),
        divisors in proptest::collection::vec(rat_op(2, 3, true), 1..=3),
        w in admissible_weight(2),
    ) {
        let ord = homogenized_order(2, &w);
        let p = p.truncate(8);
        let divisors: Vec<_> = divisors.iter().map(|g| g.truncate(8)).collect();
        let report = check_division(&p, &divisors, &ord);
        prop_assert!(report.all(), "{:?}", report);
    }

    #[test]
    fn division_mod_q_contract(
        p in param_op(1, 4),
        divisors in proptest::collection::vec(param_op(1, 3), 1..=2),
        w in admissible_weight(1),
    ) {
        let q = ParamIdeal::new(vec![ParamPoly::var(0)], true);
        prop_assume!(divisors.iter().all(|g| !g.vanishes_mod(&q)));
        let ord = homogenized_order(1, &w);
        let p = p.truncate(6);
        let divisors: Vec<_> = divisors.iter().map(|g| g.truncate(6)).collect();
        let report = check_division_mod_q(&p, &divisors, &ord, &q);
        prop_assert!(report.all(), "{:?}", report);
    }

    #[test]
    fn newton_vertices_carry_the_support_function(g in rat_op(2, 5, true), w in admissible_weight(2)) {
        let poly = newton(&g).unwrap();
        let pts: Vec<Vec<i64>> = g.support().map(|e| e.point()).collect();
        prop_assert!(poly.vertices.iter().all(|v| pts.contains(v)));
        let best = pts.iter().map(|p| weight_dot(&w, p)).max().unwrap();
        prop_assert_eq!(poly.support_value(&w), best);
    }

    #[test]
    fn reduced_basis_ignores_scaling(
        g in rat_op(1, 3, false),
        s in small_rat(),
        w in admissible_weight(1),
    ) {
        let g = g.homogenize().unwrap();
        let gens = vec![g.clone()];
        let scaled = vec![g.scale(&s)];
        let ord = homogenized_order(1, &w);
        let opts = CompletionOptions::uncertified(4);
        let a = reduced_basis(&gens, &ord, &opts).unwrap();
        let b = reduced_basis(&scaled, &ord, &opts).unwrap();
        prop_assert!(same_elements(&a.elements, &b.elements));
    }

    #[test]
    fn problem_files_round_trip(gens in proptest::collection::vec(param_op(2, 4), 1..=3), z in any::<bool>()) {
        let names = Names { params: vec!["y".into()], vars: vec!["x1".into(), "x2".into()] };
        let ideal: Vec<_> = if z {
            gens.iter().map(|g| g.homogenize().unwrap()).filter(|g| g.support().any(|e| e.k > 0)).collect()
        } else {
            gens
        };
        prop_assume!(!ideal.is_empty());
        let problem = ProblemFile {
            names,
            order: BaseOrder::AntiGradedLex { priority: vec![1, 0] },
            weight: None,
            cap: 6,
            q: vec![],
            homogenized: z,
            ideal,
        };
        let text = problem.serialize();
        prop_assert_eq!(parse_problem(&text).unwrap(), problem);
    }
}

#[test]
fn constant_operators_parse_back() {
    let p = parse_problem("vars x\nideal 3/2\n").unwrap();
    assert_eq!(p.ideal[0], HOperator::constant(1, dfan::coeffs::ParamFraction::from_rat(rat(3, 2))));
}
