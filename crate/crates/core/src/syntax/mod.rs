//! Formulas over `{var, ⊥, ⊤, ¬, ∇, ∧, ∨}`.
//!
//! `Δ`, `∘` and `•` only exist in the surface syntax; the parser expands them
//! into the primitive signature so every other module sees just seven node
//! kinds.

mod generate;
mod parser;
mod render;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use generate::{formulas_up_to_depth, random_formula, FormulaGen};
pub use parser::{
    is_valid_variable, parse_entailment, parse_formula, parse_sequent_sides, ParseError,
};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(Arc<str>),
    Bottom,
    Top,
    Neg(Arc<Formula>),
    Nabla(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(Arc::from(name))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Arc::new(a))
    }

    pub fn nabla(a: Formula) -> Formula {
        Formula::Nabla(Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    /// `Δα = ¬∇¬α`
    pub fn delta(a: Formula) -> Formula {
        Formula::neg(Formula::nabla(Formula::neg(a)))
    }

    /// `∘α = Δα ∨ Δ¬α`
    pub fn circ(a: Formula) -> Formula {
        Formula::or(Formula::delta(a.clone()), Formula::delta(Formula::neg(a)))
    }

    /// `•α = ¬∘α`
    pub fn bullet(a: Formula) -> Formula {
        Formula::neg(Formula::circ(a))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    /// Left-nested disjunction; `None` for an empty list.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        items.into_iter().reduce(Formula::or)
    }

    /// Number of connective occurrences.
    pub fn complexity(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom | Formula::Top => 0,
            Formula::Neg(a) | Formula::Nabla(a) => 1 + a.complexity(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.complexity() + b.complexity(),
        }
    }

    /// Height of the syntax tree; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom | Formula::Top => 0,
            Formula::Neg(a) | Formula::Nabla(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Number of `∧`/`∨` occurrences.
    pub fn lattice_connectives(&self) -> usize {
        match self {
            Formula::Var(_) | Formula::Bottom | Formula::Top => 0,
            Formula::Neg(a) | Formula::Nabla(a) => a.lattice_connectives(),
            Formula::And(a, b) | Formula::Or(a, b) => {
                1 + a.lattice_connectives() + b.lattice_connectives()
            }
        }
    }

    /// Variable names in sorted order.
    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Bottom | Formula::Top => {}
            Formula::Neg(a) | Formula::Nabla(a) => a.collect_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn is_nabla(&self) -> bool {
        matches!(self, Formula::Nabla(_))
    }

    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Neg(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_nabla(&self) -> Option<&Formula> {
        match self {
            Formula::Nabla(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Immediate subformulas, left to right.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::Bottom | Formula::Top => vec![],
            Formula::Neg(a) | Formula::Nabla(a) => vec![a],
            Formula::And(a, b) | Formula::Or(a, b) => vec![a, b],
        }
    }

    /// Subformula at `path` (child indices from the root).
    pub fn at(&self, path: &[usize]) -> Option<&Formula> {
        match path.split_first() {
            None => Some(self),
            Some((&i, rest)) => self.children().get(i).and_then(|c| c.at(rest)),
        }
    }

    /// Copy of `self` with the subformula at `path` replaced.
    pub fn replace_at(&self, path: &[usize], with: Formula) -> Option<Formula> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(with);
        };
        let rebuild = |a: &Arc<Formula>| a.replace_at(rest, with.clone()).map(Arc::new);
        Some(match (self, i) {
            (Formula::Neg(a), 0) => Formula::Neg(rebuild(a)?),
            (Formula::Nabla(a), 0) => Formula::Nabla(rebuild(a)?),
            (Formula::And(a, b), 0) => Formula::And(rebuild(a)?, b.clone()),
            (Formula::And(a, b), 1) => Formula::And(a.clone(), rebuild(b)?),
            (Formula::Or(a, b), 0) => Formula::Or(rebuild(a)?, b.clone()),
            (Formula::Or(a, b), 1) => Formula::Or(a.clone(), rebuild(b)?),
            _ => return None,
        })
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_formula(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}
