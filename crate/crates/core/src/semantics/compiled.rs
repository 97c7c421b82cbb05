use std::sync::Arc;

use crate::algebra::{FiniteAlgebra, Index};
use crate::syntax::Formula;

#[derive(Debug, Clone, Copy)]
enum Op {
    Var(u8),
    Bottom,
    Top,
    Neg,
    Nabla,
    And,
    Or,
}

/// A formula flattened into postfix code over a fixed variable order, for
/// scanning many valuations without touching the tree.
#[derive(Debug, Clone)]
pub struct CompiledFormula {
    code: Vec<Op>,
}

impl CompiledFormula {
    /// `vars` fixes the slot of every variable; it must cover `f`.
    pub fn new(f: &Formula, vars: &[Arc<str>]) -> Self {
        let mut code = Vec::with_capacity(f.complexity() + 1);
        emit(f, vars, &mut code);
        CompiledFormula { code }
    }

    pub fn eval(&self, algebra: &FiniteAlgebra, slots: &[Index], stack: &mut Vec<Index>) -> Index {
        stack.clear();
        for op in &self.code {
            let v = match *op {
                Op::Var(i) => slots[i as usize],
                Op::Bottom => algebra.bottom_idx(),
                Op::Top => algebra.top_idx(),
                Op::Neg => {
                    let a = stack.pop().expect("well-formed code");
                    algebra.neg_idx(a)
                }
                Op::Nabla => {
                    let a = stack.pop().expect("well-formed code");
                    algebra.nabla_idx(a)
                }
                Op::And | Op::Or => {
                    let b = stack.pop().expect("well-formed code");
                    let a = stack.pop().expect("well-formed code");
                    if matches!(op, Op::And) {
                        algebra.meet_idx(a, b)
                    } else {
                        algebra.join_idx(a, b)
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().expect("well-formed code")
    }
}

fn emit(f: &Formula, vars: &[Arc<str>], code: &mut Vec<Op>) {
    match f {
        Formula::Var(v) => {
            let slot = vars
                .iter()
                .position(|w| w == v)
                .expect("variable order covers the formula");
            code.push(Op::Var(slot as u8));
        }
        Formula::Bottom => code.push(Op::Bottom),
        Formula::Top => code.push(Op::Top),
        Formula::Neg(a) => {
            emit(a, vars, code);
            code.push(Op::Neg);
        }
        Formula::Nabla(a) => {
            emit(a, vars, code);
            code.push(Op::Nabla);
        }
        Formula::And(a, b) => {
            emit(a, vars, code);
            emit(b, vars, code);
            code.push(Op::And);
        }
        Formula::Or(a, b) => {
            emit(a, vars, code);
            emit(b, vars, code);
            code.push(Op::Or);
        }
    }
}

/// Odometer over `size^count` assignments in carrier-lexicographic order,
/// first slot most significant.
#[derive(Debug, Clone)]
pub struct Assignments {
    size: Index,
    current: Vec<Index>,
    started: bool,
    done: bool,
}

impl Assignments {
    pub fn new(size: usize, count: usize) -> Self {
        Assignments {
            size: size as Index,
            current: vec![0; count],
            started: false,
            done: size == 0,
        }
    }

    /// Advances and returns the next assignment, or `None` when exhausted.
    pub fn next_assignment(&mut self) -> Option<&[Index]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.current);
        }
        for slot in self.current.iter_mut().rev() {
            *slot += 1;
            if *slot < self.size {
                return Some(&self.current);
            }
            *slot = 0;
        }
        self.done = true;
        None
    }
}
