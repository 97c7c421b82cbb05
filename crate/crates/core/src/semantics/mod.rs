//! Valuations, evaluation and the degrees-of-truth consequence relation.
//!
//! Everything here is decided by exhaustive enumeration of valuations over
//! the variables that actually occur, `|carrier|^k` of them.

mod compiled;
mod matrix;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraError, AlgebraId, FiniteAlgebra, Index, TruthValue};
use crate::syntax::Formula;

pub use compiled::{Assignments, CompiledFormula};
pub use matrix::{four_matrix_entails, gmatrix_entails, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("variable `{0}` has no value")]
    Unmapped(String),
    #[error("{found} variables exceed the budget of {limit}")]
    TooManyVariables { found: usize, limit: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Assignment of values from one algebra to finitely many variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    algebra: AlgebraId,
    map: BTreeMap<Arc<str>, TruthValue>,
}

impl Valuation {
    pub fn new(algebra: &FiniteAlgebra) -> Self {
        Valuation {
            algebra: algebra.id(),
            map: BTreeMap::new(),
        }
    }

    /// Builds a valuation from `(variable, element name)` pairs.
    pub fn from_names(
        algebra: &FiniteAlgebra,
        pairs: &[(&str, &str)],
    ) -> Result<Self, SemanticsError> {
        let mut v = Valuation::new(algebra);
        for (var, name) in pairs {
            v.assign(var, algebra.element(name)?)?;
        }
        Ok(v)
    }

    pub(crate) fn from_slots(algebra: &FiniteAlgebra, vars: &[Arc<str>], slots: &[Index]) -> Self {
        Valuation {
            algebra: algebra.id(),
            map: vars
                .iter()
                .zip(slots)
                .map(|(v, &i)| (v.clone(), algebra.value(i)))
                .collect(),
        }
    }

    pub fn assign(&mut self, var: &str, value: TruthValue) -> Result<(), SemanticsError> {
        if value.algebra() != self.algebra {
            return Err(AlgebraError::ForeignValue(value.name().to_string()).into());
        }
        self.map.insert(Arc::from(var), value);
        Ok(())
    }

    pub fn get(&self, var: &str) -> Option<&TruthValue> {
        self.map.get(var)
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TruthValue)> {
        self.map.iter().map(|(k, v)| (&**k, v))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Applies `f` to every value, keeping the variables.
    pub fn map_values(
        &self,
        f: impl Fn(&TruthValue) -> Result<TruthValue, AlgebraError>,
    ) -> Result<Valuation, SemanticsError> {
        let mut out = Valuation {
            algebra: self.algebra,
            map: BTreeMap::new(),
        };
        for (k, v) in &self.map {
            let w = f(v)?;
            out.algebra = w.algebra();
            out.map.insert(k.clone(), w);
        }
        Ok(out)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

impl Serialize for Valuation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(self.map.iter().map(|(k, v)| (&**k, v.name())))
    }
}

/// Homomorphic extension of `v` to `f`.
pub fn eval(f: &Formula, v: &Valuation, algebra: &FiniteAlgebra) -> Result<TruthValue, SemanticsError> {
    if v.algebra != algebra.id() && !v.is_empty() {
        let name = v.map.values().next().map(|x| x.name().to_string()).unwrap_or_default();
        return Err(AlgebraError::ForeignValue(name).into());
    }
    eval_idx(f, v, algebra).map(|i| algebra.value(i))
}

fn eval_idx(f: &Formula, v: &Valuation, a: &FiniteAlgebra) -> Result<Index, SemanticsError> {
    Ok(match f {
        Formula::Var(x) => v
            .map
            .get(x)
            .ok_or_else(|| SemanticsError::Unmapped(x.to_string()))?
            .index(),
        Formula::Bottom => a.bottom_idx(),
        Formula::Top => a.top_idx(),
        Formula::Neg(x) => a.neg_idx(eval_idx(x, v, a)?),
        Formula::Nabla(x) => a.nabla_idx(eval_idx(x, v, a)?),
        Formula::And(x, y) => a.meet_idx(eval_idx(x, v, a)?, eval_idx(y, v, a)?),
        Formula::Or(x, y) => a.join_idx(eval_idx(x, v, a)?, eval_idx(y, v, a)?),
    })
}

/// Sorted variables of all given formulas.
pub fn variables_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<Arc<str>> {
    let mut set = BTreeSet::new();
    for f in formulas {
        f.collect_vars(&mut set);
    }
    set.into_iter().collect()
}

/// Rejects queries with more than `limit` distinct variables.
pub fn check_variable_budget<'a>(
    formulas: impl IntoIterator<Item = &'a Formula>,
    limit: usize,
) -> Result<(), SemanticsError> {
    let found = variables_of(formulas).len();
    if found > limit {
        Err(SemanticsError::TooManyVariables { found, limit })
    } else {
        Ok(())
    }
}

/// A valuation together with the lower bound it separates: every premise is
/// at least `bound`, the conclusion is not.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Countermodel {
    pub valuation: Valuation,
    pub bound: TruthValue,
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ bound={}", self.valuation, self.bound)
    }
}

impl Countermodel {
    /// Re-evaluates the countermodel against `left ⇒ right` read as
    /// `⋀left ≤ ⋁right` (empty meet is top, empty join is bottom).
    pub fn refutes(&self, left: &[Formula], right: &[Formula], algebra: &FiniteAlgebra) -> bool {
        let meet = left.iter().try_fold(algebra.top_idx(), |acc, f| {
            eval_idx(f, &self.valuation, algebra).map(|x| algebra.meet_idx(acc, x))
        });
        let join = right.iter().try_fold(algebra.bottom_idx(), |acc, f| {
            eval_idx(f, &self.valuation, algebra).map(|x| algebra.join_idx(acc, x))
        });
        match (meet, join) {
            (Ok(m), Ok(j)) => {
                self.bound.algebra() == algebra.id()
                    && algebra.leq_idx(self.bound.index(), m)
                    && !algebra.leq_idx(self.bound.index(), j)
            }
            _ => false,
        }
    }
}

/// Outcome of an entailment or validity query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntailmentResult {
    pub holds: bool,
    pub countermodel: Option<Countermodel>,
}

impl EntailmentResult {
    fn from_countermodel(countermodel: Option<Countermodel>) -> Self {
        EntailmentResult {
            holds: countermodel.is_none(),
            countermodel,
        }
    }
}

/// Searches for a valuation with `⋀left ≰ ⋁right`.
///
/// Among all failing valuations the one returned has the greatest bound
/// `⋀left` (by height, ties going to the earlier element in carrier order),
/// then the lowest `⋁right` (by height), then comes first in
/// carrier-lexicographic order of the sorted variables.
pub fn find_countermodel(
    left: &[Formula],
    right: &[Formula],
    algebra: &FiniteAlgebra,
) -> Option<Countermodel> {
    let vars = variables_of(left.iter().chain(right));
    let left_c: Vec<CompiledFormula> = left.iter().map(|f| CompiledFormula::new(f, &vars)).collect();
    let right_c: Vec<CompiledFormula> = right.iter().map(|f| CompiledFormula::new(f, &vars)).collect();
    let mut stack = Vec::new();
    let mut best: Option<((std::cmp::Reverse<u8>, Index, u8), Vec<Index>, Index)> = None;
    let mut it = Assignments::new(algebra.size(), vars.len());
    while let Some(slots) = it.next_assignment() {
        let meet = left_c.iter().fold(algebra.top_idx(), |acc, c| {
            algebra.meet_idx(acc, c.eval(algebra, slots, &mut stack))
        });
        let join = right_c.iter().fold(algebra.bottom_idx(), |acc, c| {
            algebra.join_idx(acc, c.eval(algebra, slots, &mut stack))
        });
        if algebra.leq_idx(meet, join) {
            continue;
        }
        let key = (std::cmp::Reverse(algebra.rank(meet)), meet, algebra.rank(join));
        if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
            best = Some((key, slots.to_vec(), meet));
        }
    }
    best.map(|(_, slots, meet)| Countermodel {
        valuation: Valuation::from_slots(algebra, &vars, &slots),
        bound: algebra.value(meet),
    })
}

/// True iff `⋀left ≤ ⋁right` under every valuation; stops at the first
/// failure.
pub fn always_below(left: &[Formula], right: &[Formula], algebra: &FiniteAlgebra) -> bool {
    let vars = variables_of(left.iter().chain(right));
    let left_c: Vec<CompiledFormula> = left.iter().map(|f| CompiledFormula::new(f, &vars)).collect();
    let right_c: Vec<CompiledFormula> = right.iter().map(|f| CompiledFormula::new(f, &vars)).collect();
    let mut stack = Vec::new();
    let mut it = Assignments::new(algebra.size(), vars.len());
    while let Some(slots) = it.next_assignment() {
        let meet = left_c.iter().fold(algebra.top_idx(), |acc, c| {
            algebra.meet_idx(acc, c.eval(algebra, slots, &mut stack))
        });
        let join = right_c.iter().fold(algebra.bottom_idx(), |acc, c| {
            algebra.join_idx(acc, c.eval(algebra, slots, &mut stack))
        });
        if !algebra.leq_idx(meet, join) {
            return false;
        }
    }
    true
}

fn dedup(premises: &[Formula]) -> Vec<Formula> {
    premises.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect()
}

/// Degrees-of-truth entailment over one finite algebra.
///
/// With premises, holds iff `⋀premises ≤ goal` under every valuation. With no
/// premises, holds iff the goal is always top.
pub fn entails_degree(premises: &[Formula], goal: &Formula, algebra: &FiniteAlgebra) -> EntailmentResult {
    let premises = dedup(premises);
    EntailmentResult::from_countermodel(find_countermodel(
        &premises,
        std::slice::from_ref(goal),
        algebra,
    ))
}

/// Entailment in *Six*, decided over 𝕊₆.
pub fn entails_six(premises: &[Formula], goal: &Formula) -> EntailmentResult {
    entails_degree(premises, goal, FiniteAlgebra::s6())
}

/// Boolean-only variant of [`entails_degree`] that stops at the first
/// failure.
pub fn entails_degree_holds(premises: &[Formula], goal: &Formula, algebra: &FiniteAlgebra) -> bool {
    always_below(premises, std::slice::from_ref(goal), algebra)
}

/// First valuation (carrier-lexicographic) where `a` and `b` differ in 𝕊₆.
pub fn equivalence_witness(a: &Formula, b: &Formula) -> Option<Valuation> {
    let s6 = FiniteAlgebra::s6();
    let vars = variables_of([a, b]);
    let ca = CompiledFormula::new(a, &vars);
    let cb = CompiledFormula::new(b, &vars);
    let mut stack = Vec::new();
    let mut it = Assignments::new(s6.size(), vars.len());
    while let Some(slots) = it.next_assignment() {
        if ca.eval(s6, slots, &mut stack) != cb.eval(s6, slots, &mut stack) {
            return Some(Valuation::from_slots(s6, &vars, slots));
        }
    }
    None
}

/// Same value under every 𝕊₆ valuation.
pub fn equivalent(a: &Formula, b: &Formula) -> bool {
    equivalence_witness(a, b).is_none()
}

/// Rows of a truth table in carrier-lexicographic order.
#[derive(Debug, Clone, Serialize)]
pub struct TruthTable {
    pub vars: Vec<String>,
    pub rows: Vec<TruthRow>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TruthRow {
    pub inputs: Vec<TruthValue>,
    pub value: TruthValue,
}

pub fn truth_table(f: &Formula, algebra: &FiniteAlgebra) -> TruthTable {
    let vars = variables_of([f]);
    let c = CompiledFormula::new(f, &vars);
    let mut stack = Vec::new();
    let mut rows = Vec::new();
    let mut it = Assignments::new(algebra.size(), vars.len());
    while let Some(slots) = it.next_assignment() {
        rows.push(TruthRow {
            inputs: slots.iter().map(|&i| algebra.value(i)).collect(),
            value: algebra.value(c.eval(algebra, slots, &mut stack)),
        });
    }
    TruthTable {
        vars: vars.iter().map(|v| v.to_string()).collect(),
        rows,
    }
}

/// Unary function induced on 𝕊₆ by a formula in at most one variable, as
/// indices in carrier order.
pub fn unary_function(f: &Formula) -> [Index; 6] {
    let s6 = FiniteAlgebra::s6();
    let vars = variables_of([f]);
    assert!(vars.len() <= 1, "formula has more than one variable");
    let c = CompiledFormula::new(f, &vars);
    let mut stack = Vec::new();
    let mut out = [0; 6];
    for (x, slot) in out.iter_mut().enumerate() {
        *slot = c.eval(s6, &[x as Index], &mut stack);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{swap_nb, BuiltinAlgebra};
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn val(pairs: &[(&str, &str)]) -> Valuation {
        Valuation::from_names(FiniteAlgebra::s6(), pairs).unwrap()
    }

    #[test]
    fn eval_examples() {
        let s6 = FiniteAlgebra::s6();
        let e = |s: &str, pairs: &[(&str, &str)]| eval(&f(s), &val(pairs), s6).unwrap().to_string();
        assert_eq!(e("#p", &[("p", "1/3")]), "1");
        assert_eq!(e("~p", &[("p", "N")]), "N");
        assert_eq!(e("p & ~p", &[("p", "B")]), "B");
        assert_eq!(
            eval(&f("p & q"), &val(&[("p", "1")]), s6),
            Err(SemanticsError::Unmapped("q".into()))
        );
    }

    #[test]
    fn foreign_values_are_rejected() {
        let l3 = BuiltinAlgebra::L3.build();
        let mut v = Valuation::new(FiniteAlgebra::s6());
        assert!(v.assign("p", l3.element("1/2").unwrap()).is_err());
        let w = Valuation::from_names(&l3, &[("p", "1/2")]).unwrap();
        assert!(eval(&f("p"), &w, FiniteAlgebra::s6()).is_err());
    }

    #[test]
    fn entailment_examples() {
        let r = entails_six(&[f("p"), f("~p")], &f("q"));
        assert!(!r.holds);
        let cm = r.countermodel.unwrap();
        assert!(cm.refutes(&[f("p"), f("~p")], &[f("q")], FiniteAlgebra::s6()));
        // The explosion witness with p=N, q=B refutes the same query.
        let alternative = Countermodel {
            valuation: val(&[("p", "N"), ("q", "B")]),
            bound: FiniteAlgebra::s6().element("N").unwrap(),
        };
        assert!(alternative.refutes(&[f("p"), f("~p")], &[f("q")], FiniteAlgebra::s6()));

        assert!(entails_six(&[f("p & q")], &f("p")).holds);
        assert!(entails_six(&[], &f("#(p | ~p)")).holds);
        assert!(entails_six(&[f("o p"), f("p"), f("~p")], &f("bot")).holds);
        assert!(entails_six(&[f("p")], &f("#p")).holds);
    }

    #[test]
    fn countermodel_selection() {
        let r = entails_six(&[], &f("q | ~q"));
        assert_eq!(r.countermodel.unwrap().to_string(), "q=N @ bound=1");
        let r = entails_six(&[f("p")], &f("q"));
        assert_eq!(r.countermodel.unwrap().to_string(), "p=1, q=0 @ bound=1");
        let r = entails_six(&[f("*p")], &f("p & ~p"));
        assert_eq!(r.countermodel.unwrap().to_string(), "p=1/3 @ bound=1");
    }

    #[test]
    fn empty_premises_require_top() {
        // ∇p is never below 1/3 but is not a tautology.
        assert!(!entails_six(&[], &f("#p")).holds);
        assert!(entails_six(&[], &f("top")).holds);
        assert!(!entails_six(&[], &f("p")).holds);
    }

    #[test]
    fn premises_are_a_set() {
        let a = entails_six(&[f("p"), f("p"), f("~p")], &f("q"));
        let b = entails_six(&[f("~p"), f("p")], &f("q"));
        assert_eq!(a, b);
    }

    #[test]
    fn equivalence_examples() {
        assert!(equivalent(&f("~~p"), &f("p")));
        assert!(equivalent(&f("##p"), &f("#p")));
        let w = equivalence_witness(&f("p"), &f("#p")).unwrap();
        assert_eq!(w.to_string(), "p=1/3");
    }

    #[test]
    fn swap_commutes_with_evaluation() {
        let s6 = FiniteAlgebra::s6();
        let formula = f("#(p & ~q) | ~#~p & q");
        let mut it = Assignments::new(6, 2);
        let vars: Vec<Arc<str>> = vec!["p".into(), "q".into()];
        while let Some(slots) = it.next_assignment() {
            let h = Valuation::from_slots(s6, &vars, slots);
            let h2 = h.map_values(swap_nb).unwrap();
            let lhs = eval(&formula, &h2, s6).unwrap();
            let rhs = swap_nb(&eval(&formula, &h, s6).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn truth_table_layout() {
        let t = truth_table(&f("o p"), FiniteAlgebra::s6());
        assert_eq!(t.vars, ["p"]);
        let col: Vec<String> = t.rows.iter().map(|r| r.value.to_string()).collect();
        assert_eq!(col, ["1", "0", "0", "0", "0", "1"]);
        assert_eq!(unary_function(&f("~p")), [5, 4, 2, 3, 1, 0]);
    }

    #[test]
    fn budget_guard() {
        let g = f("p & q & r");
        assert!(check_variable_budget([&g], 3).is_ok());
        assert_eq!(
            check_variable_budget([&g], 2),
            Err(SemanticsError::TooManyVariables { found: 3, limit: 2 })
        );
    }
}
