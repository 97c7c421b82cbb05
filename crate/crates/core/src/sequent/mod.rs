//! Sequents `Γ ⇒ Σ` over finite sets of formulas, derivation trees for the
//! Gentzen calculus, a rule checker, a library of derived rules (macros) and
//! a prover that follows the completeness argument.

mod check;
mod engine;
mod json;
mod macros;
mod prover;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::normalform::NfError;
use crate::semantics::{always_below, find_countermodel, EntailmentResult, SemanticsError};
use crate::syntax::{parse_sequent_sides, Formula, ParseError};

pub use check::{check_inversion, check_proof, premises_for, CheckError};
pub use json::{proof_from_json, proof_to_json, ProofRecord};
pub use macros::{
    expand_macros, match_block_schema, BlockSchema, BLOCK_SCHEMATA, MACRO_NAMES,
};
pub use prover::{equivalence_proofs, prove, prove_with, ProofOutcome, ProverOptions};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentError {
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("unknown macro `{0}`")]
    UnknownMacro(String),
    #[error("macro `{name}` does not derive {conclusion}: {reason}")]
    MacroMismatch {
        name: String,
        conclusion: String,
        reason: String,
    },
    #[error("weakening has no inversion")]
    WeakeningNotInvertible,
    #[error("rule {rule} does not apply to {sequent}: {reason}")]
    NotApplicable {
        rule: String,
        sequent: String,
        reason: String,
    },
    #[error("no derivation found for {0}")]
    Stuck(String),
    #[error("proof search exceeded {0} nodes")]
    Budget(usize),
    #[error(transparent)]
    Normal(#[from] NfError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("malformed proof record: {0}")]
    Record(String),
}

/// Both sides are sets, so exchange and contraction are built in.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub left: BTreeSet<Formula>,
    pub right: BTreeSet<Formula>,
}

impl Sequent {
    pub fn new(
        left: impl IntoIterator<Item = Formula>,
        right: impl IntoIterator<Item = Formula>,
    ) -> Self {
        Sequent {
            left: left.into_iter().collect(),
            right: right.into_iter().collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let (left, right) = parse_sequent_sides(text)?;
        Ok(Sequent::new(left, right))
    }

    pub fn left_vec(&self) -> Vec<Formula> {
        self.left.iter().cloned().collect()
    }

    pub fn right_vec(&self) -> Vec<Formula> {
        self.right.iter().cloned().collect()
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.left.iter().chain(&self.right)
    }

    /// Both sides are subsets of the other sequent's sides.
    pub fn is_subsequent_of(&self, other: &Sequent) -> bool {
        self.left.is_subset(&other.left) && self.right.is_subset(&other.right)
    }

    /// `⋀left ≤ ⋁right` under every 𝕊₆ valuation, with `⋀∅ = ⊤` and
    /// `⋁∅ = ⊥`; a failing valuation is returned as countermodel.
    pub fn valid(&self) -> EntailmentResult {
        let cm = find_countermodel(&self.left_vec(), &self.right_vec(), FiniteAlgebra::s6());
        EntailmentResult {
            holds: cm.is_none(),
            countermodel: cm,
        }
    }

    /// Boolean [`Sequent::valid`] that stops at the first failure.
    pub fn is_valid(&self) -> bool {
        always_below(&self.left_vec(), &self.right_vec(), FiniteAlgebra::s6())
    }

    /// Number of `∧`/`∨` occurrences on both sides.
    pub fn lattice_connectives(&self) -> usize {
        self.formulas().map(Formula::lattice_connectives).sum()
    }
}

fn join_side(side: &BTreeSet<Formula>) -> String {
    side.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.left.is_empty(), self.right.is_empty()) {
            (true, true) => f.write_str("=>"),
            (true, false) => write!(f, "=> {}", join_side(&self.right)),
            (false, true) => write!(f, "{} =>", join_side(&self.left)),
            (false, false) => write!(f, "{} => {}", join_side(&self.left), join_side(&self.right)),
        }
    }
}

impl std::str::FromStr for Sequent {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Sequent::parse(s)
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Sequent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Sequent::parse(&text).map_err(serde::de::Error::custom)
    }
}

/// A rule application. Logical rules carry their principal formula as it
/// occurs in the conclusion; weakenings carry the added formula and cut its
/// cut formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    /// `α ⇒ α`
    Axiom,
    /// `⊥ ⇒`
    BottomAxiom,
    /// `⇒ ⊤`
    TopAxiom,
    /// `α ⇒ ∇α`
    FirstModal,
    /// `⇒ ∇α ∨ ¬∇α`
    SecondModal,
    WeakenLeft(Formula),
    WeakenRight(Formula),
    Cut(Formula),
    AndLeft(Formula),
    AndRight(Formula),
    OrLeft(Formula),
    OrRight(Formula),
    /// From `α ⇒ β` infer `¬β ⇒ ¬α`.
    Neg,
    NegNegLeft(Formula),
    NegNegRight(Formula),
    /// From `Γ, α ⇒ ∇Σ` infer `Γ, ∇α ⇒ ∇Σ`.
    NablaLeft(Formula),
    /// From `Γ, ¬∇α ⇒ Σ` infer `Γ, ∇¬∇α ⇒ Σ`.
    NegNablaLeft(Formula),
    /// A derived rule, replaced by primitive steps in [`expand_macros`].
    Macro { name: String, args: Vec<Formula> },
}

impl Rule {
    pub fn name(&self) -> &str {
        match self {
            Rule::Axiom => "axiom",
            Rule::BottomAxiom => "bottom",
            Rule::TopAxiom => "top",
            Rule::FirstModal => "first-modal",
            Rule::SecondModal => "second-modal",
            Rule::WeakenLeft(_) => "weaken-left",
            Rule::WeakenRight(_) => "weaken-right",
            Rule::Cut(_) => "cut",
            Rule::AndLeft(_) => "and-left",
            Rule::AndRight(_) => "and-right",
            Rule::OrLeft(_) => "or-left",
            Rule::OrRight(_) => "or-right",
            Rule::Neg => "neg",
            Rule::NegNegLeft(_) => "negneg-left",
            Rule::NegNegRight(_) => "negneg-right",
            Rule::NablaLeft(_) => "nabla",
            Rule::NegNablaLeft(_) => "neg-nabla-left",
            Rule::Macro { .. } => "macro",
        }
    }

    pub fn principal(&self) -> Option<&Formula> {
        match self {
            Rule::WeakenLeft(f)
            | Rule::WeakenRight(f)
            | Rule::Cut(f)
            | Rule::AndLeft(f)
            | Rule::AndRight(f)
            | Rule::OrLeft(f)
            | Rule::OrRight(f)
            | Rule::NegNegLeft(f)
            | Rule::NegNegRight(f)
            | Rule::NablaLeft(f)
            | Rule::NegNablaLeft(f) => Some(f),
            _ => None,
        }
    }

    /// Number of premises; `None` for macros, whose arity depends on the
    /// macro.
    pub fn arity(&self) -> Option<usize> {
        Some(match self {
            Rule::Axiom
            | Rule::BottomAxiom
            | Rule::TopAxiom
            | Rule::FirstModal
            | Rule::SecondModal => 0,
            Rule::Cut(_) | Rule::AndRight(_) | Rule::OrLeft(_) => 2,
            Rule::Macro { .. } => return None,
            _ => 1,
        })
    }

    pub fn is_weakening(&self) -> bool {
        matches!(self, Rule::WeakenLeft(_) | Rule::WeakenRight(_))
    }

    /// Rebuilds a rule from its record name; `principal` is required exactly
    /// for the rules that carry a formula.
    pub fn from_parts(
        name: &str,
        principal: Option<Formula>,
        macro_name: Option<String>,
        args: Vec<Formula>,
    ) -> Result<Rule, String> {
        let need = |p: Option<Formula>| p.ok_or_else(|| format!("rule `{name}` needs a principal formula"));
        let rule = match name {
            "axiom" => Rule::Axiom,
            "bottom" => Rule::BottomAxiom,
            "top" => Rule::TopAxiom,
            "first-modal" => Rule::FirstModal,
            "second-modal" => Rule::SecondModal,
            "neg" => Rule::Neg,
            "weaken-left" => Rule::WeakenLeft(need(principal)?),
            "weaken-right" => Rule::WeakenRight(need(principal)?),
            "cut" => Rule::Cut(need(principal)?),
            "and-left" => Rule::AndLeft(need(principal)?),
            "and-right" => Rule::AndRight(need(principal)?),
            "or-left" => Rule::OrLeft(need(principal)?),
            "or-right" => Rule::OrRight(need(principal)?),
            "negneg-left" => Rule::NegNegLeft(need(principal)?),
            "negneg-right" => Rule::NegNegRight(need(principal)?),
            "nabla" => Rule::NablaLeft(need(principal)?),
            "neg-nabla-left" => Rule::NegNablaLeft(need(principal)?),
            "macro" => Rule::Macro {
                name: macro_name.ok_or("macro record without a macro name")?,
                args,
            },
            other => return Err(format!("unknown rule `{other}`")),
        };
        Ok(rule)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Macro { name, args } if args.is_empty() => write!(f, "macro {name}"),
            Rule::Macro { name, args } => {
                let a: Vec<String> = args.iter().map(|x| x.to_string()).collect();
                write!(f, "macro {name} [{}]", a.join("; "))
            }
            r => match r.principal() {
                Some(p) => write!(f, "{} [{p}]", r.name()),
                None => f.write_str(r.name()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTree {
    pub conclusion: Sequent,
    pub rule: Rule,
    pub premises: Vec<ProofTree>,
}

impl ProofTree {
    pub fn new(conclusion: Sequent, rule: Rule, premises: Vec<ProofTree>) -> Self {
        ProofTree {
            conclusion,
            rule,
            premises,
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::size).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(ProofTree::height).max().unwrap_or(0)
    }

    pub fn has_macros(&self) -> bool {
        matches!(self.rule, Rule::Macro { .. }) || self.premises.iter().any(ProofTree::has_macros)
    }

    /// Indented one-node-per-line rendering.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}    ({})\n", self.conclusion, self.rule));
        for p in &self.premises {
            p.render_into(depth + 1, out);
        }
    }
}

impl fmt::Display for ProofTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Proof constructors that compute the conclusion from the premises. They
/// weaken premises where needed so that the result is always a correct rule
/// instance.
pub mod build {
    use super::*;

    fn with(side: &BTreeSet<Formula>, extra: &[&Formula]) -> BTreeSet<Formula> {
        let mut s = side.clone();
        s.extend(extra.iter().map(|f| (*f).clone()));
        s
    }

    fn without(side: &BTreeSet<Formula>, drop: &[&Formula]) -> BTreeSet<Formula> {
        side.iter().filter(|f| !drop.contains(f)).cloned().collect()
    }

    pub fn axiom(a: &Formula) -> ProofTree {
        ProofTree::new(Sequent::new([a.clone()], [a.clone()]), Rule::Axiom, vec![])
    }

    pub fn bottom() -> ProofTree {
        ProofTree::new(Sequent::new([Formula::Bottom], []), Rule::BottomAxiom, vec![])
    }

    pub fn top() -> ProofTree {
        ProofTree::new(Sequent::new([], [Formula::Top]), Rule::TopAxiom, vec![])
    }

    pub fn first_modal(a: &Formula) -> ProofTree {
        ProofTree::new(
            Sequent::new([a.clone()], [Formula::nabla(a.clone())]),
            Rule::FirstModal,
            vec![],
        )
    }

    pub fn second_modal(a: &Formula) -> ProofTree {
        let n = Formula::nabla(a.clone());
        ProofTree::new(
            Sequent::new([], [Formula::or(n.clone(), Formula::neg(n))]),
            Rule::SecondModal,
            vec![],
        )
    }

    pub fn weaken_left(p: ProofTree, f: &Formula) -> ProofTree {
        if p.conclusion.left.contains(f) {
            return p;
        }
        let c = Sequent {
            left: with(&p.conclusion.left, &[f]),
            right: p.conclusion.right.clone(),
        };
        ProofTree::new(c, Rule::WeakenLeft(f.clone()), vec![p])
    }

    pub fn weaken_right(p: ProofTree, f: &Formula) -> ProofTree {
        if p.conclusion.right.contains(f) {
            return p;
        }
        let c = Sequent {
            left: p.conclusion.left.clone(),
            right: with(&p.conclusion.right, &[f]),
        };
        ProofTree::new(c, Rule::WeakenRight(f.clone()), vec![p])
    }

    /// Adds every formula of `target` missing from the conclusion.
    pub fn weaken_to(mut p: ProofTree, target: &Sequent) -> ProofTree {
        debug_assert!(p.conclusion.is_subsequent_of(target), "{} !<= {}", p.conclusion, target);
        for f in target.left.difference(&p.conclusion.left.clone()) {
            p = weaken_left(p, f);
        }
        for f in target.right.difference(&p.conclusion.right.clone()) {
            p = weaken_right(p, f);
        }
        p
    }

    /// `Γ₁ ⇒ Σ₁, α` and `α, Γ₂ ⇒ Σ₂` give `Γ₁, Γ₂ ⇒ Σ₁, Σ₂`.
    pub fn cut(p1: ProofTree, p2: ProofTree, a: &Formula) -> ProofTree {
        let p1 = weaken_right(p1, a);
        let p2 = weaken_left(p2, a);
        let left = with(&p1.conclusion.left, &[]).union(&without(&p2.conclusion.left, &[a])).cloned().collect();
        let right = without(&p1.conclusion.right, &[a]).union(&p2.conclusion.right).cloned().collect();
        ProofTree::new(Sequent { left, right }, Rule::Cut(a.clone()), vec![p1, p2])
    }

    pub fn and_left(p: ProofTree, principal: &Formula) -> ProofTree {
        let (a, b) = principal.as_and().expect("conjunction");
        let p = weaken_left(weaken_left(p, a), b);
        let c = Sequent {
            left: with(&without(&p.conclusion.left, &[a, b]), &[principal]),
            right: p.conclusion.right.clone(),
        };
        ProofTree::new(c, Rule::AndLeft(principal.clone()), vec![p])
    }

    pub fn or_right(p: ProofTree, principal: &Formula) -> ProofTree {
        let (a, b) = principal.as_or().expect("disjunction");
        let p = weaken_right(weaken_right(p, a), b);
        let c = Sequent {
            left: p.conclusion.left.clone(),
            right: with(&without(&p.conclusion.right, &[a, b]), &[principal]),
        };
        ProofTree::new(c, Rule::OrRight(principal.clone()), vec![p])
    }

    fn branch(
        p1: ProofTree,
        p2: ProofTree,
        principal: &Formula,
        parts: (&Formula, &Formula),
        on_left: bool,
        rule: Rule,
    ) -> ProofTree {
        let (a, b) = parts;
        let (side1, other1, side2, other2) = if on_left {
            (&p1.conclusion.left, &p1.conclusion.right, &p2.conclusion.left, &p2.conclusion.right)
        } else {
            (&p1.conclusion.right, &p1.conclusion.left, &p2.conclusion.right, &p2.conclusion.left)
        };
        let ctx: BTreeSet<Formula> = without(side1, &[a]).union(&without(side2, &[b])).cloned().collect();
        let other: BTreeSet<Formula> = other1.union(other2).cloned().collect();
        let make = |active: &Formula| {
            let s = with(&ctx, &[active]);
            if on_left {
                Sequent { left: s, right: other.clone() }
            } else {
                Sequent { left: other.clone(), right: s }
            }
        };
        let (t1, t2) = (make(a), make(b));
        let p1 = weaken_to(p1, &t1);
        let p2 = weaken_to(p2, &t2);
        let s = with(&ctx, &[principal]);
        let c = if on_left {
            Sequent { left: s, right: other }
        } else {
            Sequent { left: other, right: s }
        };
        ProofTree::new(c, rule, vec![p1, p2])
    }

    pub fn and_right(p1: ProofTree, p2: ProofTree, principal: &Formula) -> ProofTree {
        let parts = principal.as_and().expect("conjunction");
        branch(p1, p2, principal, parts, false, Rule::AndRight(principal.clone()))
    }

    pub fn or_left(p1: ProofTree, p2: ProofTree, principal: &Formula) -> ProofTree {
        let parts = principal.as_or().expect("disjunction");
        branch(p1, p2, principal, parts, true, Rule::OrLeft(principal.clone()))
    }

    /// From `α ⇒ β` infer `¬β ⇒ ¬α`; an empty side stands for `⊤` on the
    /// left and `⊥` on the right and is kept empty.
    pub fn neg(p: ProofTree) -> ProofTree {
        let c = Sequent {
            left: p.conclusion.right.iter().map(|f| Formula::neg(f.clone())).collect(),
            right: p.conclusion.left.iter().map(|f| Formula::neg(f.clone())).collect(),
        };
        ProofTree::new(c, Rule::Neg, vec![p])
    }

    pub fn negneg_left(p: ProofTree, a: &Formula) -> ProofTree {
        let principal = Formula::neg(Formula::neg(a.clone()));
        let p = weaken_left(p, a);
        let c = Sequent {
            left: with(&without(&p.conclusion.left, &[a]), &[&principal]),
            right: p.conclusion.right.clone(),
        };
        ProofTree::new(c, Rule::NegNegLeft(principal), vec![p])
    }

    pub fn negneg_right(p: ProofTree, a: &Formula) -> ProofTree {
        let principal = Formula::neg(Formula::neg(a.clone()));
        let p = weaken_right(p, a);
        let c = Sequent {
            left: p.conclusion.left.clone(),
            right: with(&without(&p.conclusion.right, &[a]), &[&principal]),
        };
        ProofTree::new(c, Rule::NegNegRight(principal), vec![p])
    }

    pub fn nabla_left(p: ProofTree, a: &Formula) -> ProofTree {
        let principal = Formula::nabla(a.clone());
        let p = weaken_left(p, a);
        let c = Sequent {
            left: with(&without(&p.conclusion.left, &[a]), &[&principal]),
            right: p.conclusion.right.clone(),
        };
        ProofTree::new(c, Rule::NablaLeft(principal), vec![p])
    }

    pub fn neg_nabla_left(p: ProofTree, a: &Formula) -> ProofTree {
        let inner = Formula::neg(Formula::nabla(a.clone()));
        let principal = Formula::nabla(inner.clone());
        let p = weaken_left(p, &inner);
        let c = Sequent {
            left: with(&without(&p.conclusion.left, &[&inner]), &[&principal]),
            right: p.conclusion.right.clone(),
        };
        ProofTree::new(c, Rule::NegNablaLeft(principal), vec![p])
    }

    pub fn macro_node(name: &str, args: Vec<Formula>, conclusion: Sequent, premises: Vec<ProofTree>) -> ProofTree {
        ProofTree::new(
            conclusion,
            Rule::Macro {
                name: name.to_string(),
                args,
            },
            premises,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sequent_text_round_trip() {
        for text in ["p, ~p => q", "=> #p | ~#p", "p & q =>", "=>"] {
            let s = Sequent::parse(text).unwrap();
            assert_eq!(s.to_string(), text);
            assert_eq!(Sequent::parse(&s.to_string()).unwrap(), s);
        }
        let dup = Sequent::parse("p, p => q, q").unwrap();
        assert_eq!((dup.left.len(), dup.right.len()), (1, 1));
    }

    #[test]
    fn validity_examples() {
        let r = Sequent::parse("p, ~p => q").unwrap().valid();
        assert!(!r.holds);
        let cm = r.countermodel.unwrap();
        assert!(cm.refutes(&[Formula::var("p"), Formula::neg(Formula::var("p"))], &[Formula::var("q")], FiniteAlgebra::s6()));
        assert!(Sequent::parse("p => #p").unwrap().is_valid());
        assert!(Sequent::parse("=> #p | ~#p").unwrap().is_valid());
        assert!(!Sequent::parse("=>").unwrap().is_valid());
        assert!(Sequent::parse("bot =>").unwrap().is_valid());
    }

    #[test]
    fn builders_make_checkable_trees() {
        use build::*;
        let p = Formula::var("p");
        let q = Formula::var("q");
        let t = or_right(weaken_right(axiom(&p), &q), &Formula::or(p.clone(), q.clone()));
        assert_eq!(t.conclusion.to_string(), "p => p | q");
        check_proof(&t).unwrap();
        let n = neg(t);
        assert_eq!(n.conclusion.to_string(), "~(p | q) => ~p");
        check_proof(&n).unwrap();
        let c = cut(first_modal(&p), axiom(&Formula::nabla(p.clone())), &Formula::nabla(p.clone()));
        assert_eq!(c.conclusion.to_string(), "p => #p");
        check_proof(&c).unwrap();
    }
}
