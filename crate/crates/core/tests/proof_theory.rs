use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use six_core::sequent::{
    build, check_inversion, check_proof, equivalence_proofs, expand_macros, proof_from_json, proof_to_json, prove,
    ProofOutcome, ProofTree, Rule, Sequent,
};
use six_core::semantics::entails_six;
use six_core::syntax::{Formula, FormulaGen};
use six_core::{nf_derivation, FiniteAlgebra, NfOptions};

fn expanded_proof(s: &Sequent) -> Option<ProofTree> {
    match prove(s).unwrap() {
        ProofOutcome::Proved(t) => {
            assert_eq!(t.conclusion, *s);
            let e = expand_macros(&t).unwrap();
            check_proof(&e).unwrap_or_else(|err| panic!("{s}: {err}"));
            Some(e)
        }
        ProofOutcome::Refuted(cm) => {
            assert!(cm.refutes(&s.left_vec(), &s.right_vec(), FiniteAlgebra::s6()), "{s}: {cm}");
            None
        }
    }
}

fn sequent_strategy(vars: &'static [&'static str], depth: usize, side: usize) -> impl Strategy<Value = Sequent> {
    let gen = FormulaGen::new(vars, depth).with_constants(true);
    (any::<u64>(), 0..=side, 0..=side).prop_map(move |(seed, l, r)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let left: Vec<Formula> = (0..l).map(|_| gen.sample(&mut rng)).collect();
        let right: Vec<Formula> = (0..r).map(|_| gen.sample(&mut rng)).collect();
        Sequent::new(left, right)
    })
}

/// A random legal derivation: builders for every rule, with the side
/// conditions of neg and nabla checked before use.
fn random_tree(rng: &mut ChaCha8Rng, gen: &FormulaGen, depth: usize) -> ProofTree {
    let pick = |rng: &mut ChaCha8Rng, side: &BTreeSet<Formula>| {
        let v: Vec<&Formula> = side.iter().collect();
        (!v.is_empty()).then(|| v[rng.gen_range(0..v.len())].clone())
    };
    let a = gen.sample(rng);
    if depth == 0 {
        return match rng.gen_range(0..5) {
            0 => build::axiom(&a),
            1 => build::bottom(),
            2 => build::top(),
            3 => build::first_modal(&a),
            _ => build::second_modal(&a),
        };
    }
    let p = random_tree(rng, gen, depth - 1);
    let c = p.conclusion.clone();
    match rng.gen_range(0..12) {
        0 => build::weaken_left(p, &a),
        1 => build::weaken_right(p, &a),
        2 => match pick(rng, &c.left) {
            Some(x) => build::and_left(p, &Formula::and(x, a)),
            None => p,
        },
        3 => match pick(rng, &c.right) {
            Some(x) => build::or_right(p, &Formula::or(a, x)),
            None => p,
        },
        4 => {
            let q = random_tree(rng, gen, depth - 1);
            match (pick(rng, &c.right), pick(rng, &q.conclusion.right)) {
                (Some(x), Some(y)) => build::and_right(p, q, &Formula::and(x, y)),
                _ => p,
            }
        }
        5 => {
            let q = random_tree(rng, gen, depth - 1);
            match (pick(rng, &c.left), pick(rng, &q.conclusion.left)) {
                (Some(x), Some(y)) => build::or_left(p, q, &Formula::or(x, y)),
                _ => p,
            }
        }
        6 => {
            let q = random_tree(rng, gen, depth - 1);
            match pick(rng, &c.right) {
                Some(x) => build::cut(p, q, &x),
                None => p,
            }
        }
        7 if c.left.len() <= 1 && c.right.len() <= 1 => build::neg(p),
        8 => match pick(rng, &c.left) {
            Some(x) => build::negneg_left(p, &x),
            None => p,
        },
        9 => match pick(rng, &c.right) {
            Some(x) => build::negneg_right(p, &x),
            None => p,
        },
        10 if c.right.iter().all(Formula::is_nabla) => match pick(rng, &c.left) {
            Some(x) => build::nabla_left(p, &x),
            None => p,
        },
        11 => match pick(rng, &c.left).and_then(|x| x.as_neg().and_then(Formula::as_nabla).cloned()) {
            Some(inner) => build::neg_nabla_left(p, &inner),
            None => p,
        },
        _ => p,
    }
}

#[test]
fn random_legal_trees_are_sound() {
    let gen = FormulaGen::new(&["p", "q"], 2).with_constants(true);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..400 {
        let t = random_tree(&mut rng, &gen, 5);
        check_proof(&t).unwrap_or_else(|e| panic!("builder produced an illegal tree: {e}"));
        assert!(t.conclusion.is_valid(), "sound rules produced invalid {}", t.conclusion);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn prover_is_sound_and_complete_on_small_sequents(s in sequent_strategy(&["p", "q"], 3, 2)) {
        let valid = s.is_valid();
        let proof = expanded_proof(&s);
        prop_assert_eq!(proof.is_some(), valid);
        if let Some(t) = proof {
            prop_assert!(t.conclusion.is_valid());
        }
    }

    #[test]
    fn prove_agrees_with_entailment(s in sequent_strategy(&["p", "q"], 3, 2), goal_seed in any::<u64>()) {
        prop_assume!(!s.left.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(goal_seed);
        let goal = FormulaGen::new(&["p", "q"], 3).sample(&mut rng);
        let single = Sequent { left: s.left.clone(), right: [goal.clone()].into() };
        let proved = matches!(prove(&single).unwrap(), ProofOutcome::Proved(_));
        prop_assert_eq!(proved, entails_six(&s.left_vec(), &goal).holds);
    }

    #[test]
    fn packaging_variants_agree(s in sequent_strategy(&["p", "q"], 2, 3)) {
        let meet = Formula::conjunction(s.left.iter().cloned()).unwrap_or(Formula::Top);
        let join = Formula::disjunction(s.right.iter().cloned()).unwrap_or(Formula::Bottom);
        let variants = [
            s.clone(),
            Sequent { left: [meet.clone()].into(), right: s.right.clone() },
            Sequent { left: s.left.clone(), right: [join.clone()].into() },
            Sequent::new([meet], [join]),
        ];
        let outcomes: Vec<bool> = variants.iter().map(|v| expanded_proof(v).is_some()).collect();
        prop_assert!(outcomes.iter().all(|o| *o == outcomes[0]), "{:?}", outcomes);
    }

    #[test]
    fn proofs_survive_json(s in sequent_strategy(&["p", "q"], 2, 2)) {
        if let ProofOutcome::Proved(t) = prove(&s).unwrap() {
            let back = proof_from_json(&proof_to_json(&t)).unwrap();
            prop_assert_eq!(&back, &t);
            let e = expand_macros(&t).unwrap();
            let back = proof_from_json(&proof_to_json(&e)).unwrap();
            prop_assert!(check_proof(&back).is_ok());
        }
    }

    #[test]
    fn normal_form_equivalences_are_derivable(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = FormulaGen::new(&["p", "q", "r"], 4).with_constants(true).sample(&mut rng);
        let d = nf_derivation(&a, &NfOptions::default()).unwrap();
        let (fwd, bwd) = equivalence_proofs(&d);
        for t in [fwd, bwd] {
            let e = expand_macros(&t).unwrap();
            prop_assert!(check_proof(&e).is_ok());
            prop_assert_eq!(&e.conclusion, &t.conclusion);
        }
    }

    #[test]
    fn invertible_rules_preserve_validity(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gen = FormulaGen::new(&["p", "q"], 2);
        let (a, b) = (gen.sample(&mut rng), gen.sample(&mut rng));
        let ctx = gen.sample(&mut rng);
        let cases = [
            (Rule::AndLeft(Formula::and(a.clone(), b.clone())), Sequent::new([Formula::and(a.clone(), b.clone()), ctx.clone()], [a.clone()])),
            (Rule::OrLeft(Formula::or(a.clone(), b.clone())), Sequent::new([Formula::or(a.clone(), b.clone())], [ctx.clone(), a.clone()])),
            (Rule::AndRight(Formula::and(a.clone(), b.clone())), Sequent::new([ctx.clone()], [Formula::and(a.clone(), b.clone())])),
            (Rule::NablaLeft(Formula::nabla(a.clone())), Sequent::new([Formula::nabla(a.clone())], [Formula::nabla(b.clone())])),
            (Rule::Cut(ctx.clone()), Sequent::new([a.clone()], [b.clone()])),
        ];
        for (rule, s) in cases {
            prop_assert!(check_inversion(&rule, &s).unwrap(), "{} at {}", rule, s);
        }
    }
}

#[test]
fn named_sequents() {
    for text in [
        "=> ~#bot",
        "~#~p => p",
        "#((p & ~#q) | #q) => (#p | #q) & (~#q | #q)",
        "(#p | #q) & (~#q | #q) => #((p & ~#q) | #q)",
        "#(p & ~p) => ~(#p & #~p) | #p",
    ] {
        let s = Sequent::parse(text).unwrap();
        assert!(expanded_proof(&s).is_some(), "{text}");
    }
    match prove(&Sequent::parse("p => q").unwrap()).unwrap() {
        ProofOutcome::Refuted(cm) => assert_eq!(cm.to_string(), "p=1, q=0 @ bound=1"),
        ProofOutcome::Proved(_) => panic!("p => q proved"),
    }
}

#[test]
fn macro_free_tree_is_unchanged() {
    let t = ProofTree::new(Sequent::parse("p => #p").unwrap(), Rule::FirstModal, vec![]);
    assert_eq!(expand_macros(&t).unwrap(), t);
    let deep = Sequent::parse("~(p | q) => ~p & ~q").unwrap();
    let t = expanded_proof(&deep).unwrap();
    assert!(t.size() > 3);
}
