//! Proof search: refute with a countermodel, or normalise every formula,
//! decompose the normalised sequent and transport the proof back along the
//! normal-form derivations.

use super::build::*;
use super::engine;
use super::{ProofTree, Sequent, SequentError};
use crate::algebra::FiniteAlgebra;
use crate::normalform::{nf_derivation, Law, NfDerivation, NfOptions, RewriteStep, DEFAULT_MAX_BLOCKS};
use crate::semantics::{check_variable_budget, find_countermodel, Countermodel};
use crate::syntax::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverOptions {
    pub max_blocks: usize,
    pub max_vars: usize,
    /// Node budget of the decomposition search.
    pub max_nodes: usize,
}

impl Default for ProverOptions {
    fn default() -> Self {
        ProverOptions {
            max_blocks: DEFAULT_MAX_BLOCKS,
            max_vars: 8,
            max_nodes: 1_000_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProofOutcome {
    /// A derivation that may contain macro nodes.
    Proved(ProofTree),
    Refuted(Countermodel),
}

pub fn prove(s: &Sequent) -> Result<ProofOutcome, SequentError> {
    prove_with(s, &ProverOptions::default())
}

pub fn prove_with(s: &Sequent, opts: &ProverOptions) -> Result<ProofOutcome, SequentError> {
    check_variable_budget(s.formulas(), opts.max_vars)?;
    let s6 = FiniteAlgebra::s6();
    if let Some(cm) = find_countermodel(&s.left_vec(), &s.right_vec(), s6) {
        debug_assert!(cm.refutes(&s.left_vec(), &s.right_vec(), s6));
        return Ok(ProofOutcome::Refuted(cm));
    }
    let nf = NfOptions {
        max_blocks: opts.max_blocks,
        simplify: false,
    };
    let mut lefts = Vec::new();
    for f in &s.left {
        let d = nf_derivation(f, &nf)?;
        let (fwd, _) = equivalence_proofs(&d);
        lefts.push((f.clone(), d.output().clone(), fwd));
    }
    let mut rights = Vec::new();
    for f in &s.right {
        let d = nf_derivation(f, &nf)?;
        let (_, bwd) = equivalence_proofs(&d);
        rights.push((f.clone(), d.output().clone(), bwd));
    }
    let normal = Sequent::new(
        lefts.iter().map(|(_, n, _)| n.clone()),
        rights.iter().map(|(_, n, _)| n.clone()),
    );
    let mut t = engine::decompose(&normal, opts.max_nodes)?;
    for (f, n, fwd) in &lefts {
        if f == n {
            continue;
        }
        t = cut(fwd.clone(), t, n);
        if s.left.contains(n) {
            t = weaken_left(t, n);
        }
    }
    for (f, n, bwd) in &rights {
        if f == n {
            continue;
        }
        t = cut(t, bwd.clone(), n);
        if s.right.contains(n) {
            t = weaken_right(t, n);
        }
    }
    if t.conclusion != *s {
        return Err(SequentError::Stuck(format!("{s} (transport ended in {})", t.conclusion)));
    }
    Ok(ProofOutcome::Proved(t))
}

fn law_args(law: Law, redex: &Formula) -> Vec<Formula> {
    let unary = |f: Option<&Formula>| f.map(|a| vec![a.clone()]).unwrap_or_default();
    let binary = |f: Option<(&Formula, &Formula)>| f.map(|(a, b)| vec![a.clone(), b.clone()]).unwrap_or_default();
    match law {
        Law::DoubleNegation => unary(redex.as_neg().and_then(Formula::as_neg)),
        Law::DeMorganMeet => binary(redex.as_neg().and_then(Formula::as_and)),
        Law::DeMorganJoin => binary(redex.as_neg().and_then(Formula::as_or)),
        Law::NablaJoin => binary(redex.as_nabla().and_then(Formula::as_or)),
        Law::NablaMeet => binary(redex.as_nabla().and_then(Formula::as_and)),
        Law::NablaIdempotent => unary(redex.as_nabla().and_then(Formula::as_nabla)),
        Law::NablaNegNabla => unary(redex.as_nabla().and_then(Formula::as_neg).and_then(Formula::as_nabla)),
        _ => vec![],
    }
}

/// Proofs of `before ⇒ after` and `after ⇒ before` for one step: the law at
/// the redex, lifted through the surrounding connectives.
fn step_proofs(step: &RewriteStep) -> (ProofTree, ProofTree) {
    let redex = step.redex();
    let contractum = step.contractum();
    let args = law_args(step.law, redex);
    let name = step.law.name();
    let mut fwd = macro_node(name, args.clone(), Sequent::new([redex.clone()], [contractum.clone()]), vec![]);
    let mut bwd = macro_node(name, args, Sequent::new([contractum.clone()], [redex.clone()]), vec![]);
    for depth in (0..step.path.len()).rev() {
        let outer = &step.path[..depth];
        let before = step.before.at(outer).expect("step path is valid").clone();
        let after = step.after.at(outer).expect("step path is valid").clone();
        let down = Sequent::new([before.clone()], [after.clone()]);
        let up = Sequent::new([after.clone()], [before.clone()]);
        match &before {
            Formula::Neg(_) => {
                let (f, b) = (neg(bwd), neg(fwd));
                fwd = f;
                bwd = b;
            }
            Formula::Nabla(_) => {
                fwd = macro_node("cong-nabla", vec![], down, vec![fwd]);
                bwd = macro_node("cong-nabla", vec![], up, vec![bwd]);
            }
            Formula::And(..) | Formula::Or(..) => {
                let name = if matches!(before, Formula::And(..)) { "cong-meet" } else { "cong-join" };
                let sibling_index = 1 - step.path[depth];
                let sibling = before.children()[sibling_index].clone();
                let (pf, pb) = if sibling_index == 1 {
                    (vec![fwd, axiom(&sibling)], vec![bwd, axiom(&sibling)])
                } else {
                    (vec![axiom(&sibling), fwd], vec![axiom(&sibling), bwd])
                };
                fwd = macro_node(name, vec![], down, pf);
                bwd = macro_node(name, vec![], up, pb);
            }
            _ => unreachable!("a rewrite path only passes through connectives"),
        }
    }
    (fwd, bwd)
}

/// Chains `a ⇒ b`, `b ⇒ c`, ... by cuts in a balanced tree.
fn chain(mut proofs: Vec<ProofTree>) -> ProofTree {
    if proofs.len() == 1 {
        return proofs.pop().expect("one proof");
    }
    let rest = proofs.split_off(proofs.len() / 2);
    let left = chain(proofs);
    let right = chain(rest);
    let middle = right.conclusion.left.iter().next().expect("single formula").clone();
    cut(left, right, &middle)
}

/// Derivations of `input ⇒ output` and `output ⇒ input` for a normal-form
/// derivation, with macro nodes.
pub fn equivalence_proofs(d: &NfDerivation) -> (ProofTree, ProofTree) {
    if d.steps.is_empty() {
        return (axiom(&d.input), axiom(&d.input));
    }
    let (fwds, mut bwds): (Vec<_>, Vec<_>) = d.steps.iter().map(step_proofs).unzip();
    bwds.reverse();
    (chain(fwds), chain(bwds))
}
