use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::{ProofTree, Rule, Sequent, SequentError};
use crate::syntax::Formula;

/// A rule violation at the node reached by following `path` (premise
/// indices from the root).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: String,
    pub sequent: String,
    pub reason: String,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let at = if self.path.is_empty() {
            "root".to_string()
        } else {
            self.path.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(".")
        };
        write!(f, "node {at} ({}): {}: {}", self.rule, self.sequent, self.reason)
    }
}

/// Checks every node of a macro-free derivation.
pub fn check_proof(tree: &ProofTree) -> Result<(), CheckError> {
    let mut path = Vec::new();
    walk(tree, &mut path)
}

fn walk(t: &ProofTree, path: &mut Vec<usize>) -> Result<(), CheckError> {
    check_node(t).map_err(|reason| CheckError {
        path: path.clone(),
        rule: t.rule.to_string(),
        sequent: t.conclusion.to_string(),
        reason,
    })?;
    for (i, p) in t.premises.iter().enumerate() {
        path.push(i);
        walk(p, path)?;
        path.pop();
    }
    Ok(())
}

fn one(f: &Formula) -> BTreeSet<Formula> {
    BTreeSet::from([f.clone()])
}

fn show(side: &BTreeSet<Formula>) -> String {
    let v: Vec<String> = side.iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Every listed side must be `X ∪ actives` for one shared context `X`.
fn shared_context(sides: &[(&BTreeSet<Formula>, Vec<&Formula>)], what: &str) -> Result<(), String> {
    let mut ctx: BTreeSet<Formula> = BTreeSet::new();
    for (side, actives) in sides {
        for a in actives {
            if !side.contains(*a) {
                return Err(format!("{what} side {} lacks active formula {a}", show(side)));
            }
        }
        ctx.extend(side.iter().filter(|f| !actives.contains(f)).cloned());
    }
    for (side, actives) in sides {
        let mut expected = ctx.clone();
        expected.extend(actives.iter().map(|f| (*f).clone()));
        if **side != expected {
            return Err(format!("{what} contexts differ: {} vs {}", show(side), show(&expected)));
        }
    }
    Ok(())
}

fn exact(c: &Sequent, left: BTreeSet<Formula>, right: BTreeSet<Formula>) -> Result<(), String> {
    if c.left == left && c.right == right {
        Ok(())
    } else {
        Err("not an instance of the axiom".into())
    }
}

fn check_node(t: &ProofTree) -> Result<(), String> {
    let c = &t.conclusion;
    if let Some(n) = t.rule.arity() {
        if t.premises.len() != n {
            return Err(format!("expected {n} premises, found {}", t.premises.len()));
        }
    }
    let p: Vec<&Sequent> = t.premises.iter().map(|p| &p.conclusion).collect();
    let none = Vec::new;
    match &t.rule {
        Rule::Axiom => {
            if c.left.len() == 1 && c.left == c.right {
                Ok(())
            } else {
                Err("not an instance of the axiom".into())
            }
        }
        Rule::BottomAxiom => exact(c, one(&Formula::Bottom), BTreeSet::new()),
        Rule::TopAxiom => exact(c, BTreeSet::new(), one(&Formula::Top)),
        Rule::FirstModal => {
            let a = c.left.iter().next().ok_or("empty left side")?;
            exact(c, one(a), one(&Formula::nabla(a.clone())))
        }
        Rule::SecondModal => {
            let f = c.right.iter().next().ok_or("empty right side")?;
            let a = f
                .as_or()
                .and_then(|(x, y)| x.as_nabla().filter(|a| *y == Formula::neg(Formula::nabla((*a).clone()))))
                .ok_or("right side is not of the form #a | ~#a")?;
            exact(c, BTreeSet::new(), one(&Formula::or(Formula::nabla(a.clone()), Formula::neg(Formula::nabla(a.clone())))))
        }
        Rule::WeakenLeft(f) => {
            shared_context(&[(&c.left, vec![f]), (&p[0].left, none())], "left")?;
            shared_context(&[(&c.right, none()), (&p[0].right, none())], "right")
        }
        Rule::WeakenRight(f) => {
            shared_context(&[(&c.left, none()), (&p[0].left, none())], "left")?;
            shared_context(&[(&c.right, vec![f]), (&p[0].right, none())], "right")
        }
        Rule::Cut(a) => {
            if !p[0].right.contains(a) {
                return Err(format!("cut formula {a} missing from the right of the first premise"));
            }
            if !p[1].left.contains(a) {
                return Err(format!("cut formula {a} missing from the left of the second premise"));
            }
            let mut left = p[0].left.clone();
            left.extend(p[1].left.iter().filter(|f| *f != a).cloned());
            let mut right: BTreeSet<Formula> = p[0].right.iter().filter(|f| *f != a).cloned().collect();
            right.extend(p[1].right.iter().cloned());
            if c.left == left && c.right == right {
                Ok(())
            } else {
                Err(format!("conclusion should be {}", Sequent { left, right }))
            }
        }
        Rule::AndLeft(f) => {
            let (a, b) = f.as_and().ok_or("principal is not a conjunction")?;
            shared_context(&[(&c.left, vec![f]), (&p[0].left, vec![a, b])], "left")?;
            shared_context(&[(&c.right, none()), (&p[0].right, none())], "right")
        }
        Rule::OrRight(f) => {
            let (a, b) = f.as_or().ok_or("principal is not a disjunction")?;
            shared_context(&[(&c.left, none()), (&p[0].left, none())], "left")?;
            shared_context(&[(&c.right, vec![f]), (&p[0].right, vec![a, b])], "right")
        }
        Rule::AndRight(f) => {
            let (a, b) = f.as_and().ok_or("principal is not a conjunction")?;
            shared_context(&[(&c.left, none()), (&p[0].left, none()), (&p[1].left, none())], "left")?;
            shared_context(&[(&c.right, vec![f]), (&p[0].right, vec![a]), (&p[1].right, vec![b])], "right")
        }
        Rule::OrLeft(f) => {
            let (a, b) = f.as_or().ok_or("principal is not a disjunction")?;
            shared_context(&[(&c.left, vec![f]), (&p[0].left, vec![a]), (&p[1].left, vec![b])], "left")?;
            shared_context(&[(&c.right, none()), (&p[0].right, none()), (&p[1].right, none())], "right")
        }
        Rule::Neg => {
            let q = p[0];
            if q.left.len() > 1 || q.right.len() > 1 {
                return Err("premise must have at most one formula on each side".into());
            }
            let left: BTreeSet<Formula> = q.right.iter().map(|f| Formula::neg(f.clone())).collect();
            let right: BTreeSet<Formula> = q.left.iter().map(|f| Formula::neg(f.clone())).collect();
            if c.left == left && c.right == right {
                Ok(())
            } else {
                Err(format!("conclusion should be {}", Sequent { left, right }))
            }
        }
        Rule::NegNegLeft(f) => {
            let a = f.as_neg().and_then(Formula::as_neg).ok_or("principal is not a double negation")?;
            shared_context(&[(&c.left, vec![f]), (&p[0].left, vec![a])], "left")?;
            shared_context(&[(&c.right, none()), (&p[0].right, none())], "right")
        }
        Rule::NegNegRight(f) => {
            let a = f.as_neg().and_then(Formula::as_neg).ok_or("principal is not a double negation")?;
            shared_context(&[(&c.left, none()), (&p[0].left, none())], "left")?;
            shared_context(&[(&c.right, vec![f]), (&p[0].right, vec![a])], "right")
        }
        Rule::NablaLeft(f) => {
            let a = f.as_nabla().ok_or("principal is not a #-formula")?;
            if let Some(bad) = c.right.iter().chain(&p[0].right).find(|g| !g.is_nabla()) {
                return Err(format!("right side formula {bad} is not #-prefixed"));
            }
            shared_context(&[(&c.left, vec![f]), (&p[0].left, vec![a])], "left")?;
            shared_context(&[(&c.right, none()), (&p[0].right, none())], "right")
        }
        Rule::NegNablaLeft(f) => {
            let inner = f
                .as_nabla()
                .filter(|g| g.as_neg().is_some_and(Formula::is_nabla))
                .ok_or("principal is not of the form #~#a")?;
            shared_context(&[(&c.left, vec![f]), (&p[0].left, vec![inner])], "left")?;
            shared_context(&[(&c.right, none()), (&p[0].right, none())], "right")
        }
        Rule::Macro { name, .. } => Err(format!("unexpanded macro `{name}`")),
    }
}

fn not_applicable(rule: &Rule, s: &Sequent, reason: &str) -> SequentError {
    SequentError::NotApplicable {
        rule: rule.to_string(),
        sequent: s.to_string(),
        reason: reason.to_string(),
    }
}

fn replaced(side: &BTreeSet<Formula>, principal: &Formula, actives: &[&Formula]) -> BTreeSet<Formula> {
    let mut s: BTreeSet<Formula> = side.iter().filter(|f| *f != principal).cloned().collect();
    s.extend(actives.iter().map(|f| (*f).clone()));
    s
}

/// The premises of the unique instance of `rule` (with the shared-context
/// reading of cut) that has the given conclusion.
pub fn premises_for(rule: &Rule, conclusion: &Sequent) -> Result<Vec<Sequent>, SequentError> {
    let c = conclusion;
    let err = |reason: &str| not_applicable(rule, c, reason);
    let on_left = |f: &Formula| if c.left.contains(f) { Ok(()) } else { Err(err("principal is not on the left")) };
    let on_right = |f: &Formula| if c.right.contains(f) { Ok(()) } else { Err(err("principal is not on the right")) };
    let left_swap = |f: &Formula, actives: &[&Formula]| Sequent {
        left: replaced(&c.left, f, actives),
        right: c.right.clone(),
    };
    let right_swap = |f: &Formula, actives: &[&Formula]| Sequent {
        left: c.left.clone(),
        right: replaced(&c.right, f, actives),
    };
    match rule {
        Rule::Axiom | Rule::BottomAxiom | Rule::TopAxiom | Rule::FirstModal | Rule::SecondModal => {
            let t = ProofTree::new(c.clone(), rule.clone(), vec![]);
            check_node(&t).map_err(|r| err(&r))?;
            Ok(vec![])
        }
        Rule::WeakenLeft(_) | Rule::WeakenRight(_) => Err(SequentError::WeakeningNotInvertible),
        Rule::Cut(a) => {
            let mut p1 = c.clone();
            p1.right.insert(a.clone());
            let mut p2 = c.clone();
            p2.left.insert(a.clone());
            Ok(vec![p1, p2])
        }
        Rule::AndLeft(f) => {
            let (a, b) = f.as_and().ok_or_else(|| err("principal is not a conjunction"))?;
            on_left(f)?;
            Ok(vec![left_swap(f, &[a, b])])
        }
        Rule::OrRight(f) => {
            let (a, b) = f.as_or().ok_or_else(|| err("principal is not a disjunction"))?;
            on_right(f)?;
            Ok(vec![right_swap(f, &[a, b])])
        }
        Rule::AndRight(f) => {
            let (a, b) = f.as_and().ok_or_else(|| err("principal is not a conjunction"))?;
            on_right(f)?;
            Ok(vec![right_swap(f, &[a]), right_swap(f, &[b])])
        }
        Rule::OrLeft(f) => {
            let (a, b) = f.as_or().ok_or_else(|| err("principal is not a disjunction"))?;
            on_left(f)?;
            Ok(vec![left_swap(f, &[a]), left_swap(f, &[b])])
        }
        Rule::Neg => {
            if c.left.len() > 1 || c.right.len() > 1 {
                return Err(err("more than one formula on a side"));
            }
            let strip = |side: &BTreeSet<Formula>| -> Result<BTreeSet<Formula>, SequentError> {
                side.iter()
                    .map(|f| f.as_neg().cloned().ok_or_else(|| err("formula is not a negation")))
                    .collect()
            };
            Ok(vec![Sequent {
                left: strip(&c.right)?,
                right: strip(&c.left)?,
            }])
        }
        Rule::NegNegLeft(f) => {
            let a = f.as_neg().and_then(Formula::as_neg).ok_or_else(|| err("principal is not a double negation"))?;
            on_left(f)?;
            Ok(vec![left_swap(f, &[a])])
        }
        Rule::NegNegRight(f) => {
            let a = f.as_neg().and_then(Formula::as_neg).ok_or_else(|| err("principal is not a double negation"))?;
            on_right(f)?;
            Ok(vec![right_swap(f, &[a])])
        }
        Rule::NablaLeft(f) => {
            let a = f.as_nabla().ok_or_else(|| err("principal is not a #-formula"))?;
            on_left(f)?;
            if c.right.iter().any(|g| !g.is_nabla()) {
                return Err(err("right side is not #-prefixed"));
            }
            Ok(vec![left_swap(f, &[a])])
        }
        Rule::NegNablaLeft(f) => {
            let inner = f
                .as_nabla()
                .filter(|g| g.as_neg().is_some_and(Formula::is_nabla))
                .ok_or_else(|| err("principal is not of the form #~#a"))?;
            on_left(f)?;
            Ok(vec![left_swap(f, &[inner])])
        }
        Rule::Macro { .. } => Err(err("macros have no fixed premises")),
    }
}

/// Whether validity of the conclusion implies validity of every premise.
pub fn check_inversion(rule: &Rule, conclusion: &Sequent) -> Result<bool, SequentError> {
    let premises = premises_for(rule, conclusion)?;
    Ok(!conclusion.is_valid() || premises.iter().all(Sequent::is_valid))
}

#[cfg(test)]
mod tests {
    use super::super::build::*;
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn neg_nabla_bottom_checks() {
        let t = neg(nabla_left(bottom(), &Formula::Bottom));
        assert_eq!(t.conclusion.to_string(), "=> ~#bot");
        check_proof(&t).unwrap();
    }

    #[test]
    fn delta_elimination_checks() {
        let p = f("p");
        let t = cut(neg(first_modal(&f("~p"))), negneg_left(axiom(&p), &p), &f("~~p"));
        assert_eq!(t.conclusion.to_string(), "~#~p => p");
        check_proof(&t).unwrap();
    }

    #[test]
    fn neg_needs_singletons() {
        let prem = weaken_left(axiom(&f("p")), &f("q"));
        let bad = ProofTree::new(Sequent::parse("~p => ~p, ~q").unwrap(), Rule::Neg, vec![prem]);
        let e = check_proof(&bad).unwrap_err();
        assert!(e.path.is_empty());
        assert!(e.reason.contains("at most one"), "{e}");
    }

    #[test]
    fn nabla_rule_needs_nabla_right_side() {
        let prem = axiom(&f("p"));
        let bad = ProofTree::new(Sequent::parse("#p => p").unwrap(), Rule::NablaLeft(f("#p")), vec![prem]);
        let e = check_proof(&bad).unwrap_err();
        assert!(e.reason.contains("not #-prefixed"), "{e}");
        let good = weaken_left(bad.clone(), &f("q"));
        let e = check_proof(&good).unwrap_err();
        assert_eq!(e.path, vec![0]);
    }

    #[test]
    fn context_mismatch_is_reported() {
        let p1 = axiom(&f("p"));
        let p2 = weaken_left(axiom(&f("q")), &f("r"));
        let bad = ProofTree::new(Sequent::parse("p, r => p & q").unwrap(), Rule::AndRight(f("p & q")), vec![p1, p2]);
        assert!(check_proof(&bad).is_err());
        let ok = and_right(axiom(&f("p")), weaken_left(axiom(&f("q")), &f("r")), &f("p & q"));
        assert_eq!(ok.conclusion.to_string(), "p, q, r => p & q");
        check_proof(&ok).unwrap();
    }

    #[test]
    fn premises_and_inversion() {
        let s = Sequent::parse("p | q => r").unwrap();
        let ps = premises_for(&Rule::OrLeft(f("p | q")), &s).unwrap();
        assert_eq!(ps[0].to_string(), "p => r");
        assert_eq!(ps[1].to_string(), "q => r");
        assert!(check_inversion(&Rule::OrLeft(f("p | q")), &s).unwrap());
        let s = Sequent::parse("~q => ~p").unwrap();
        assert_eq!(premises_for(&Rule::Neg, &s).unwrap()[0].to_string(), "p => q");
        assert!(matches!(
            check_inversion(&Rule::WeakenLeft(f("p")), &s),
            Err(SequentError::WeakeningNotInvertible)
        ));
    }
}
