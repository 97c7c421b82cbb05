use crate::algebra::{AlgebraError, Filter, FiniteAlgebra};
use crate::syntax::Formula;

use super::{variables_of, Assignments, CompiledFormula};

/// An algebra with a designated lattice filter.
#[derive(Debug, Clone)]
pub struct Matrix<'a> {
    algebra: &'a FiniteAlgebra,
    designated: Filter,
}

impl<'a> Matrix<'a> {
    pub fn new(algebra: &'a FiniteAlgebra, designated: Filter) -> Result<Self, AlgebraError> {
        if !designated.is_filter_of(algebra) {
            return Err(AlgebraError::ForeignValue(format!(
                "designated set {:#x}",
                designated.bits()
            )));
        }
        Ok(Matrix {
            algebra,
            designated,
        })
    }

    /// `⟨A, [a)⟩` for the element named `generator`.
    pub fn principal(algebra: &'a FiniteAlgebra, generator: &str) -> Result<Self, AlgebraError> {
        let g = algebra.element(generator)?;
        Matrix::new(algebra, Filter::principal(algebra, &g)?)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.algebra
    }

    pub fn designated(&self) -> &Filter {
        &self.designated
    }

    /// Truth preservation: whenever every premise is designated, so is the
    /// goal.
    pub fn entails(&self, premises: &[Formula], goal: &Formula) -> bool {
        entails_all(self.algebra, std::slice::from_ref(&self.designated), premises, goal)
    }
}

/// One pass over the valuations, checking every filter at once.
fn entails_all(algebra: &FiniteAlgebra, filters: &[Filter], premises: &[Formula], goal: &Formula) -> bool {
    let vars = variables_of(premises.iter().chain([goal]));
    let prem: Vec<CompiledFormula> = premises.iter().map(|f| CompiledFormula::new(f, &vars)).collect();
    let g = CompiledFormula::new(goal, &vars);
    let mut stack = Vec::new();
    let mut it = Assignments::new(algebra.size(), vars.len());
    while let Some(slots) = it.next_assignment() {
        let values: Vec<_> = prem.iter().map(|c| c.eval(algebra, slots, &mut stack)).collect();
        let gv = g.eval(algebra, slots, &mut stack);
        for f in filters {
            if values.iter().all(|&v| f.contains_idx(v)) && !f.contains_idx(gv) {
                return false;
            }
        }
    }
    true
}

/// Conjunction of the matrices `⟨𝕊₆, [1/3)⟩`, `⟨𝕊₆, [N)⟩`, `⟨𝕊₆, [2/3)⟩` and
/// `⟨𝕊₆, [1)⟩`.
pub fn four_matrix_entails(premises: &[Formula], goal: &Formula) -> bool {
    let s6 = FiniteAlgebra::s6();
    let filters: Vec<Filter> = ["1/3", "N", "2/3", "1"]
        .iter()
        .map(|g| Filter::principal_idx(s6, s6.index_of(g).expect("S6 element")))
        .collect();
    entails_all(s6, &filters, premises, goal)
}

/// Consequence of the g-matrix carrying every lattice filter of `algebra`.
pub fn gmatrix_entails(algebra: &FiniteAlgebra, premises: &[Formula], goal: &Formula) -> bool {
    entails_all(algebra, &algebra.lattice_filters(), premises, goal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn matrix_examples() {
        let s6 = FiniteAlgebra::s6();
        // p and ~p are never both 1, so [1) is explosive while [N) is not.
        let top = Matrix::principal(s6, "1").unwrap();
        assert!(top.entails(&[f("p"), f("~p")], &f("q")));
        let n = Matrix::principal(s6, "N").unwrap();
        assert!(!n.entails(&[f("p"), f("~p")], &f("q")));
        let trivial = Matrix::principal(s6, "0").unwrap();
        assert!(trivial.entails(&[f("p")], &f("q & ~q")));
        let b = Matrix::principal(s6, "B").unwrap();
        let (prem, goal) = ([f("p & ~p")], f("*p"));
        assert_eq!(n.entails(&prem, &goal), b.entails(&prem, &goal));
    }

    #[test]
    fn four_and_g_matrix_examples() {
        let s6 = FiniteAlgebra::s6();
        assert!(!four_matrix_entails(&[f("p"), f("~p")], &f("q")));
        assert!(four_matrix_entails(&[f("p & q")], &f("q")));
        assert!(!gmatrix_entails(s6, &[f("p"), f("~p")], &f("q")));
        assert!(gmatrix_entails(s6, &[f("p & q")], &f("q")));
        assert!(gmatrix_entails(s6, &[], &f("top")));
        assert!(gmatrix_entails(s6, &[f("bot")], &f("p")));
    }
}
