mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::{abelian_refutable, eval_z, rmt_chains, valuations, Sugihara};
use toa::alternatives::{prove_disjunction, verify_certificate, ProofResult};
use toa::formula::{parse, Formula, Substitution};
use toa::linear::{gordan, IntMatrix};
use toa::logics::{instantiate, lookup_logic, preset_names, ModelKind};
use toa::normalizer::{clauses_to_formula, to_mult_clauses, Goal, MultClause, DEFAULT_CLAUSE_CAP};
use toa::oracles::{abelian_decide, sugihara_decide, Budget, OracleVerdict};

fn leaf() -> impl Strategy<Value = Formula> {
    prop_oneof![
        4 => prop::sample::select(vec!["p", "q", "r"]).prop_map(Formula::var),
        1 => Just(Formula::One),
        1 => Just(Formula::Zero),
    ]
}

fn mult_formula() -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::fuse(a, b)),
            inner.prop_map(Formula::neg),
        ]
    })
}

fn any_formula() -> impl Strategy<Value = Formula> {
    leaf().prop_recursive(5, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::imp(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::fuse(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::conj(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::disj(a, b)),
            inner.prop_map(Formula::neg),
        ]
    })
}

fn substitution() -> impl Strategy<Value = Substitution> {
    prop::collection::btree_map(prop::sample::select(vec!["p", "q", "r", "s"]), any_formula(), 0..3)
        .prop_map(|m| m.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn goal() -> impl Strategy<Value = Goal> {
    (prop::collection::vec(mult_formula(), 0..3), prop::collection::vec(mult_formula(), 1..4))
        .prop_map(|(h, d)| Goal::new(h, MultClause::new(d)))
}

fn vars_of(fs: &[&Formula]) -> BTreeSet<String> {
    let mut v = BTreeSet::new();
    for f in fs {
        f.collect_vars(&mut v);
    }
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn render_then_parse_is_identity(f in any_formula()) {
        prop_assert_eq!(parse(&f.render()).unwrap(), f.clone());
        prop_assert_eq!(f.to_string().parse::<Formula>().unwrap(), f);
    }

    #[test]
    fn substitution_composes(f in any_formula(), s in substitution(), t in substitution()) {
        prop_assert_eq!(f.substitute(&s).substitute(&t), f.substitute(&s.then(&t)));
    }

    #[test]
    fn empty_substitution_fixes(f in any_formula()) {
        prop_assert_eq!(f.substitute(&Substitution::new()), f);
    }

    #[test]
    fn abelian_oracle_matches_fourier_motzkin(h in prop::collection::vec(mult_formula(), 0..3), g in mult_formula()) {
        let verdict = abelian_decide(&h, &g).unwrap();
        let refutable = abelian_refutable(&h, std::slice::from_ref(&g));
        prop_assert_eq!(verdict.is_refuted(), refutable);
        prop_assert_eq!(verdict.is_proved(), !refutable);
        if let OracleVerdict::Refuted(cm) = verdict {
            prop_assert!(h.iter().all(|x| eval_z(&cm.valuation, x) >= 0));
            prop_assert!(eval_z(&cm.valuation, &g) < 0);
        }
    }

    #[test]
    fn sugihara_oracle_matches_direct_evaluation(
        h in prop::collection::vec(mult_formula(), 0..3),
        g in mult_formula(),
        even in any::<bool>(),
    ) {
        let k = vars_of(&h.iter().chain([&g]).collect::<Vec<_>>()).len();
        let chains = rmt_chains(k);
        let used = if even { &chains[..] } else { &chains[..1] };
        let refutable = used.iter().any(|c| c.refutes(&h, &g).is_some());
        let verdict = sugihara_decide(even, &h, &g, None).unwrap();
        prop_assert_eq!(verdict.is_refuted(), refutable);
        prop_assert_eq!(verdict.is_proved(), !refutable);
    }

    #[test]
    fn axioms_hold_in_their_models(
        logic in prop::sample::select(preset_names()),
        pick in any::<prop::sample::Index>(),
        n in 0u64..4,
        args in prop::collection::vec(mult_formula(), 4),
    ) {
        let l = lookup_logic(logic).unwrap();
        let axioms = l.axioms();
        let ax = pick.get(&axioms);
        let template = ax.template_at(n);
        let s: Substitution = ax.metavariables().into_iter().zip(args).collect();
        let inst = instantiate(&template, &s).unwrap();
        let vars = inst.vars();
        for model in l.sound_models() {
            match model {
                ModelKind::SugiharaOdd | ModelKind::SugiharaEven => {
                    let odd = model == ModelKind::SugiharaOdd;
                    for hw in 1..=2 {
                        let c = Sugihara { half_width: hw, odd };
                        for v in valuations(&vars, &c.elements()) {
                            prop_assert!(c.eval(&v, &inst) >= c.unit(), "{} fails {} at {:?}", ax.name, inst, v);
                        }
                    }
                }
                ModelKind::Integers => {
                    for v in valuations(&vars, &[-2, -1, 0, 1, 2]) {
                        prop_assert!(eval_z(&v, &inst) >= 0, "{} fails {} at {:?}", ax.name, inst, v);
                    }
                }
            }
        }
    }

    #[test]
    fn mingle_logics_identify_square_and_base(f in mult_formula(), even in any::<bool>()) {
        let sq = Formula::fuse(f.clone(), f.clone());
        prop_assert!(sugihara_decide(even, &[], &Formula::imp(sq.clone(), f.clone()), None).unwrap().is_proved());
        prop_assert!(sugihara_decide(even, &[], &Formula::imp(f, sq), None).unwrap().is_proved());
    }

    #[test]
    fn abelian_alternatives_always_decide(g in goal()) {
        let a = lookup_logic("A").unwrap();
        match prove_disjunction(&a, &g, &Budget::default()).unwrap() {
            ProofResult::Proved(cert) => {
                prop_assert!(verify_certificate(&a, &g, &cert));
                prop_assert!(!abelian_refutable(&g.hypotheses, &g.clause.disjuncts));
            }
            ProofResult::Refuted(cm) => {
                prop_assert!(cm.refutes(&g.hypotheses, &g.clause.to_formula()));
                prop_assert!(abelian_refutable(&g.hypotheses, &g.clause.disjuncts));
            }
            ProofResult::Unknown(r) => prop_assert!(false, "unknown: {}", r),
        }
    }

    #[test]
    fn normal_form_keeps_chain_values(f in any_formula()) {
        let clauses = to_mult_clauses(&f, DEFAULT_CLAUSE_CAP).unwrap();
        let g = clauses_to_formula(&clauses);
        let vars = f.vars();
        for hw in 1..=3 {
            for odd in [true, false] {
                let c = Sugihara { half_width: hw, odd };
                for v in valuations(&vars, &c.elements()) {
                    prop_assert_eq!(c.eval(&v, &f), c.eval(&v, &g));
                }
            }
        }
    }

    #[test]
    fn gordan_returns_a_verified_alternative(
        rows in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..5),
    ) {
        let m = IntMatrix::new(rows.iter().map(|r| r.iter().map(|&x| x.into()).collect()).collect()).unwrap();
        prop_assert!(gordan(&m).verify(&m));
    }
}

#[test]
fn every_preset_passes_the_soundness_sweep() {
    for name in preset_names() {
        let l = lookup_logic(name).unwrap();
        assert_eq!(toa::logics::check_axiom_soundness(&l, 3, 3), Ok(()), "{name}");
    }
}
