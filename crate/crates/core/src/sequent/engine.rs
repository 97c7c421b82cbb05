//! Backward decomposition of `∧`/`∨` down to sequents closed by an axiom or a
//! block schema.

use std::collections::BTreeSet;

use super::build::weaken_to;
use super::macros::close_by_schema;
use super::build;
use super::{ProofTree, Rule, Sequent, SequentError};
use crate::normalform::Block;
use crate::syntax::Formula;

pub(crate) const MACRO_BUDGET: usize = 500_000;

const MAX_SKELETON_ATOMS: usize = 14;
const MAX_SEMANTIC_VARS: usize = 4;

pub(crate) fn decompose(s: &Sequent, budget: usize) -> Result<ProofTree, SequentError> {
    Engine { budget, used: 0 }.run(s.clone())
}

struct Engine {
    budget: usize,
    used: usize,
}

fn close(s: &Sequent) -> Option<ProofTree> {
    if s.left.contains(&Formula::Bottom) {
        return Some(weaken_to(build::bottom(), s));
    }
    if s.right.contains(&Formula::Top) {
        return Some(weaken_to(build::top(), s));
    }
    close_by_schema(s)
}

fn atoms(f: &Formula, out: &mut BTreeSet<Formula>) {
    match f {
        Formula::And(a, b) | Formula::Or(a, b) => {
            atoms(a, out);
            atoms(b, out);
        }
        Formula::Top | Formula::Bottom => {}
        other => {
            out.insert(other.clone());
        }
    }
}

fn skeleton_eval(f: &Formula, atoms: &[Formula], bits: u32) -> bool {
    match f {
        Formula::And(a, b) => skeleton_eval(a, atoms, bits) && skeleton_eval(b, atoms, bits),
        Formula::Or(a, b) => skeleton_eval(a, atoms, bits) || skeleton_eval(b, atoms, bits),
        Formula::Top => true,
        Formula::Bottom => false,
        other => {
            let i = atoms.binary_search(other).expect("atom collected");
            bits >> i & 1 == 1
        }
    }
}

/// A sufficient test for the decomposition of `s` to close: 𝕊₆ validity
/// when every atom is a block, otherwise two-valued validity with the atoms
/// as variables. Either way every leaf below is closable.
fn closes(s: &Sequent) -> bool {
    let mut set = BTreeSet::new();
    for f in s.formulas() {
        atoms(f, &mut set);
    }
    let all_blocks = set.iter().all(|a| Block::from_formula(a).is_some());
    let vars: BTreeSet<_> = set.iter().flat_map(|a| a.vars()).collect();
    if all_blocks && vars.len() <= MAX_SEMANTIC_VARS {
        return s.is_valid();
    }
    if set.len() > MAX_SKELETON_ATOMS {
        return false;
    }
    let atoms: Vec<Formula> = set.into_iter().collect();
    (0..1u32 << atoms.len()).all(|bits| {
        !s.left.iter().all(|f| skeleton_eval(f, &atoms, bits)) || s.right.iter().any(|f| skeleton_eval(f, &atoms, bits))
    })
}

impl Engine {
    fn run(&mut self, s: Sequent) -> Result<ProofTree, SequentError> {
        self.used += 1;
        if self.used > self.budget {
            return Err(SequentError::Budget(self.budget));
        }
        if let Some(t) = close(&s) {
            return Ok(t);
        }
        if let Some(f) = s.left.iter().find(|f| f.as_and().is_some()).cloned() {
            let (a, b) = f.as_and().expect("conjunction");
            let mut p = s.clone();
            p.left.remove(&f);
            p.left.extend([a.clone(), b.clone()]);
            let sub = self.run(p)?;
            return Ok(ProofTree::new(s, Rule::AndLeft(f), vec![sub]));
        }
        if let Some(f) = s.right.iter().find(|f| f.as_or().is_some()).cloned() {
            let (a, b) = f.as_or().expect("disjunction");
            let mut p = s.clone();
            p.right.remove(&f);
            p.right.extend([a.clone(), b.clone()]);
            let sub = self.run(p)?;
            return Ok(ProofTree::new(s, Rule::OrRight(f), vec![sub]));
        }
        let candidates: Vec<(bool, Formula)> = s
            .left
            .iter()
            .filter(|f| f.as_or().is_some())
            .map(|f| (true, f.clone()))
            .chain(s.right.iter().filter(|f| f.as_and().is_some()).map(|f| (false, f.clone())))
            .collect();
        let Some((on_left, f)) = candidates.first().cloned() else {
            return Err(SequentError::Stuck(s.to_string()));
        };
        for (left, g) in &candidates {
            let mut smaller = s.clone();
            if *left {
                smaller.left.remove(g);
            } else {
                smaller.right.remove(g);
            }
            if closes(&smaller) {
                let sub = self.run(smaller)?;
                return Ok(weaken_to(sub, &s));
            }
        }
        let (a, b) = if on_left { f.as_or() } else { f.as_and() }.expect("branching connective");
        let mut p1 = s.clone();
        let mut p2 = s.clone();
        let (side1, side2) = if on_left {
            (&mut p1.left, &mut p2.left)
        } else {
            (&mut p1.right, &mut p2.right)
        };
        side1.remove(&f);
        side1.insert(a.clone());
        side2.remove(&f);
        side2.insert(b.clone());
        let t1 = self.run(p1)?;
        let t2 = self.run(p2)?;
        let rule = if on_left { Rule::OrLeft(f) } else { Rule::AndRight(f) };
        Ok(ProofTree::new(s, rule, vec![t1, t2]))
    }
}

#[cfg(test)]
mod tests {
    use super::super::{check_proof, expand_macros};
    use super::*;

    fn proves(text: &str) {
        let s = Sequent::parse(text).unwrap();
        let t = decompose(&s, MACRO_BUDGET).unwrap_or_else(|e| panic!("{text}: {e}"));
        assert_eq!(t.conclusion, s);
        check_proof(&expand_macros(&t).unwrap()).unwrap_or_else(|e| panic!("{text}: {e}"));
    }

    #[test]
    fn lattice_sequents() {
        proves("(p & q) | r => (p | r) & (q | r)");
        proves("(p | r) & (q | r) => (p & q) | r");
        proves("p & top => p");
        proves("p => p & top");
        proves("p | bot => p");
        proves("(~#p | #p) & (q | ~q) => q | ~q");
    }

    #[test]
    fn block_sequents() {
        proves("p & ~#p =>");
        proves("=> (#p | ~#p) & (~p | #p)");
        proves("~#~p, q => p & (q | r)");
        proves("~#p, ~#~p | q => q");
    }

    #[test]
    fn invalid_sequent_is_stuck() {
        let s = Sequent::parse("p | q => p").unwrap();
        assert!(matches!(decompose(&s, 100), Err(SequentError::Stuck(_))));
    }
}
