//! Conjunctive forms: `⊤`, `⊥`, or conjunctions of disjunctions of blocks.
//!
//! A block is one of `p, ¬p, ∇p, ∇¬p, ¬∇p, ¬∇¬p`. The conversion is a
//! sequence of labelled rewrite steps so that the `sequent` module can turn
//! each step into a derivation.

use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{FiniteAlgebra, Index};
use crate::syntax::Formula;

pub const DEFAULT_MAX_BLOCKS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NfError {
    #[error("conjunctive form would need {predicted} blocks, over the cap of {limit}")]
    TooLarge { predicted: usize, limit: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NfOptions {
    pub max_blocks: usize,
    /// Drop tautological and subsumed clauses.
    pub simplify: bool,
}

impl Default for NfOptions {
    fn default() -> Self {
        NfOptions {
            max_blocks: DEFAULT_MAX_BLOCKS,
            simplify: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Shape {
    P,
    NegP,
    NablaP,
    NablaNegP,
    NegNablaP,
    NegNablaNegP,
}

impl Shape {
    pub const ALL: [Shape; 6] = [
        Shape::P,
        Shape::NegP,
        Shape::NablaP,
        Shape::NablaNegP,
        Shape::NegNablaP,
        Shape::NegNablaNegP,
    ];

    /// Wraps an arbitrary formula in this shape's prefix.
    pub fn apply(self, a: Formula) -> Formula {
        match self {
            Shape::P => a,
            Shape::NegP => Formula::neg(a),
            Shape::NablaP => Formula::nabla(a),
            Shape::NablaNegP => Formula::nabla(Formula::neg(a)),
            Shape::NegNablaP => Formula::neg(Formula::nabla(a)),
            Shape::NegNablaNegP => Formula::delta(a),
        }
    }

    /// Inverse of [`Shape::apply`].
    pub fn strip(self, f: &Formula) -> Option<&Formula> {
        match self {
            Shape::P => Some(f),
            Shape::NegP => f.as_neg(),
            Shape::NablaP => f.as_nabla(),
            Shape::NablaNegP => f.as_nabla()?.as_neg(),
            Shape::NegNablaP => f.as_neg()?.as_nabla(),
            Shape::NegNablaNegP => f.as_neg()?.as_nabla()?.as_neg(),
        }
    }

    pub fn eval_idx(self, a: &FiniteAlgebra, x: Index) -> Index {
        match self {
            Shape::P => x,
            Shape::NegP => a.neg_idx(x),
            Shape::NablaP => a.nabla_idx(x),
            Shape::NablaNegP => a.nabla_idx(a.neg_idx(x)),
            Shape::NegNablaP => a.neg_idx(a.nabla_idx(x)),
            Shape::NegNablaNegP => a.delta_idx(x),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub var: Arc<str>,
    pub shape: Shape,
}

impl Block {
    pub fn new(var: &str, shape: Shape) -> Self {
        Block {
            var: Arc::from(var),
            shape,
        }
    }

    pub fn from_formula(f: &Formula) -> Option<Block> {
        Shape::ALL.iter().find_map(|&shape| match shape.strip(f)? {
            Formula::Var(v) => Some(Block {
                var: v.clone(),
                shape,
            }),
            _ => None,
        })
    }

    pub fn to_formula(&self) -> Formula {
        self.shape.apply(Formula::Var(self.var.clone()))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_formula())
    }
}

impl Serialize for Block {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Clauses keep derivation order; equality and hashing ignore clause and
/// block order.
#[derive(Debug, Clone)]
pub enum ConjunctiveForm {
    Top,
    Bottom,
    Cnf(Vec<Vec<Block>>),
}

impl ConjunctiveForm {
    pub fn clauses(&self) -> &[Vec<Block>] {
        match self {
            ConjunctiveForm::Cnf(c) => c,
            _ => &[],
        }
    }

    pub fn block_count(&self) -> usize {
        self.clauses().iter().map(Vec::len).sum()
    }

    /// Left-nested conjunction of left-nested disjunctions.
    pub fn as_formula(&self) -> Formula {
        match self {
            ConjunctiveForm::Top => Formula::Top,
            ConjunctiveForm::Bottom => Formula::Bottom,
            ConjunctiveForm::Cnf(clauses) => Formula::conjunction(clauses.iter().map(|c| {
                Formula::disjunction(c.iter().map(Block::to_formula)).expect("nonempty clause")
            }))
            .expect("nonempty form"),
        }
    }

    /// Clauses with sorted blocks, sorted and without duplicates.
    pub fn canonical_clauses(&self) -> Vec<Vec<Block>> {
        let set: BTreeSet<Vec<Block>> = self
            .clauses()
            .iter()
            .map(|c| c.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect())
            .collect();
        set.into_iter().collect()
    }

    /// At least one clause, no empty clause, no repeated block in a clause.
    pub fn is_shape_valid(&self) -> bool {
        match self {
            ConjunctiveForm::Top | ConjunctiveForm::Bottom => true,
            ConjunctiveForm::Cnf(clauses) => {
                !clauses.is_empty()
                    && clauses.iter().all(|c| {
                        !c.is_empty() && c.iter().collect::<BTreeSet<_>>().len() == c.len()
                    })
            }
        }
    }

    fn tag(&self) -> u8 {
        match self {
            ConjunctiveForm::Top => 0,
            ConjunctiveForm::Bottom => 1,
            ConjunctiveForm::Cnf(_) => 2,
        }
    }
}

impl PartialEq for ConjunctiveForm {
    fn eq(&self, other: &Self) -> bool {
        self.tag() == other.tag() && self.canonical_clauses() == other.canonical_clauses()
    }
}

impl Eq for ConjunctiveForm {}

impl Hash for ConjunctiveForm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.tag().hash(state);
        self.canonical_clauses().hash(state);
    }
}

impl fmt::Display for ConjunctiveForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_formula())
    }
}

pub fn block_count(cf: &ConjunctiveForm) -> usize {
    cf.block_count()
}

/// Equivalence laws used by the rewrite steps. The names double as macro
/// names in the sequent calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(into = "&'static str")]
pub enum Law {
    DoubleNegation,
    DeMorganMeet,
    DeMorganJoin,
    NablaJoin,
    NablaMeet,
    NablaIdempotent,
    NablaNegNabla,
    NegTop,
    NegBottom,
    NablaTop,
    NablaBottom,
    Unit,
    Distribution,
    Lattice,
    CollapseTop,
    CollapseBottom,
}

impl Law {
    pub const ALL: [Law; 16] = [
        Law::DoubleNegation,
        Law::DeMorganMeet,
        Law::DeMorganJoin,
        Law::NablaJoin,
        Law::NablaMeet,
        Law::NablaIdempotent,
        Law::NablaNegNabla,
        Law::NegTop,
        Law::NegBottom,
        Law::NablaTop,
        Law::NablaBottom,
        Law::Unit,
        Law::Distribution,
        Law::Lattice,
        Law::CollapseTop,
        Law::CollapseBottom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Law::DoubleNegation => "double-negation",
            Law::DeMorganMeet => "dm-neg-meet",
            Law::DeMorganJoin => "dm-neg-join",
            Law::NablaJoin => "nabla-join",
            Law::NablaMeet => "nabla-meet",
            Law::NablaIdempotent => "nabla-idem",
            Law::NablaNegNabla => "nabla-neg-nabla",
            Law::NegTop => "neg-top",
            Law::NegBottom => "neg-bot",
            Law::NablaTop => "nabla-top",
            Law::NablaBottom => "nabla-bot",
            Law::Unit => "unit",
            Law::Distribution => "dist",
            Law::Lattice => "lattice",
            Law::CollapseTop => "collapse-top",
            Law::CollapseBottom => "collapse-bottom",
        }
    }

    pub fn from_name(name: &str) -> Option<Law> {
        Law::ALL.into_iter().find(|l| l.name() == name)
    }
}

impl From<Law> for &'static str {
    fn from(l: Law) -> Self {
        l.name()
    }
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One equivalence step on the whole formula; the rewrite happens at `path`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub before: Formula,
    pub after: Formula,
    pub law: Law,
    pub path: Vec<usize>,
}

impl RewriteStep {
    pub fn redex(&self) -> &Formula {
        self.before.at(&self.path).expect("step path is valid")
    }

    pub fn contractum(&self) -> &Formula {
        self.after.at(&self.path).expect("step path is valid")
    }
}

impl fmt::Display for RewriteStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  <=>  {}  [{}]", self.before, self.after, self.law)
    }
}

#[derive(Debug, Clone)]
pub struct NfDerivation {
    pub input: Formula,
    pub steps: Vec<RewriteStep>,
    pub form: ConjunctiveForm,
}

impl NfDerivation {
    /// Last formula of the chain; equals `form.as_formula()`.
    pub fn output(&self) -> &Formula {
        self.steps.last().map_or(&self.input, |s| &s.after)
    }
}

fn push_negation_and_nabla(f: &Formula) -> Option<(Law, Formula)> {
    use Formula::*;
    match f {
        Neg(a) => match &**a {
            Neg(b) => Some((Law::DoubleNegation, (**b).clone())),
            And(x, y) => Some((
                Law::DeMorganMeet,
                Formula::or(Formula::neg((**x).clone()), Formula::neg((**y).clone())),
            )),
            Or(x, y) => Some((
                Law::DeMorganJoin,
                Formula::and(Formula::neg((**x).clone()), Formula::neg((**y).clone())),
            )),
            Top => Some((Law::NegTop, Bottom)),
            Bottom => Some((Law::NegBottom, Top)),
            _ => None,
        },
        Nabla(a) => match &**a {
            Or(x, y) => Some((
                Law::NablaJoin,
                Formula::or(Formula::nabla((**x).clone()), Formula::nabla((**y).clone())),
            )),
            And(x, y) => Some((
                Law::NablaMeet,
                Formula::and(Formula::nabla((**x).clone()), Formula::nabla((**y).clone())),
            )),
            Nabla(_) => Some((Law::NablaIdempotent, (**a).clone())),
            Neg(b) if b.is_nabla() => Some((Law::NablaNegNabla, (**a).clone())),
            Top => Some((Law::NablaTop, Top)),
            Bottom => Some((Law::NablaBottom, Bottom)),
            _ => None,
        },
        And(x, y) => match (&**x, &**y) {
            (Bottom, _) | (_, Bottom) => Some((Law::Unit, Bottom)),
            (Top, other) | (other, Top) => Some((Law::Unit, other.clone())),
            _ => None,
        },
        Or(x, y) => match (&**x, &**y) {
            (Top, _) | (_, Top) => Some((Law::Unit, Top)),
            (Bottom, other) | (other, Bottom) => Some((Law::Unit, other.clone())),
            _ => None,
        },
        _ => None,
    }
}

fn distribute(f: &Formula) -> Option<(Law, Formula)> {
    let (x, y) = f.as_or()?;
    if let Some((b, c)) = x.as_and() {
        return Some((
            Law::Distribution,
            Formula::and(Formula::or(b.clone(), y.clone()), Formula::or(c.clone(), y.clone())),
        ));
    }
    let (b, c) = y.as_and()?;
    Some((
        Law::Distribution,
        Formula::and(Formula::or(x.clone(), b.clone()), Formula::or(x.clone(), c.clone())),
    ))
}

type Contract = fn(&Formula) -> Option<(Law, Formula)>;

/// Leftmost-outermost redex.
fn find_redex(f: &Formula, path: &mut Vec<usize>, contract: Contract) -> Option<(Law, Formula)> {
    if let Some(hit) = contract(f) {
        return Some(hit);
    }
    for (i, c) in f.children().into_iter().enumerate() {
        path.push(i);
        if let Some(hit) = find_redex(c, path, contract) {
            return Some(hit);
        }
        path.pop();
    }
    None
}

fn rewrite_all(current: &mut Formula, steps: &mut Vec<RewriteStep>, contract: Contract) {
    loop {
        let mut path = Vec::new();
        let Some((law, replacement)) = find_redex(current, &mut path, contract) else {
            return;
        };
        let after = current
            .replace_at(&path, replacement)
            .expect("redex path is valid");
        steps.push(RewriteStep {
            before: current.clone(),
            after: after.clone(),
            law,
            path,
        });
        *current = after;
    }
}

/// `(clauses, blocks)` that distribution will produce, saturating.
fn predicted_size(f: &Formula) -> (usize, usize) {
    match f {
        Formula::And(a, b) => {
            let (ca, ba) = predicted_size(a);
            let (cb, bb) = predicted_size(b);
            (ca.saturating_add(cb), ba.saturating_add(bb))
        }
        Formula::Or(a, b) => {
            let (ca, ba) = predicted_size(a);
            let (cb, bb) = predicted_size(b);
            (
                ca.saturating_mul(cb),
                ba.saturating_mul(cb).saturating_add(bb.saturating_mul(ca)),
            )
        }
        _ => (1, 1),
    }
}

fn collect_disjuncts(f: &Formula, out: &mut Vec<Block>) {
    match f {
        Formula::Or(a, b) => {
            collect_disjuncts(a, out);
            collect_disjuncts(b, out);
        }
        _ => out.push(Block::from_formula(f).expect("only blocks remain after rewriting")),
    }
}

fn collect_clauses(f: &Formula, out: &mut Vec<Vec<Block>>) {
    match f {
        Formula::And(a, b) => {
            collect_clauses(a, out);
            collect_clauses(b, out);
        }
        _ => {
            let mut clause = Vec::new();
            collect_disjuncts(f, &mut clause);
            let mut seen = BTreeSet::new();
            clause.retain(|b| seen.insert(b.clone()));
            out.push(clause);
        }
    }
}

/// A disjunction of blocks is constantly top iff the blocks of one single
/// variable already are, since top is join-irreducible in 𝕊₆.
pub fn clause_is_tautology(clause: &[Block]) -> bool {
    let s6 = FiniteAlgebra::s6();
    let vars: BTreeSet<&Arc<str>> = clause.iter().map(|b| &b.var).collect();
    vars.into_iter().any(|v| {
        (0..s6.size() as Index).all(|x| {
            clause
                .iter()
                .filter(|b| &b.var == v)
                .fold(s6.bottom_idx(), |acc, b| s6.join_idx(acc, b.shape.eval_idx(s6, x)))
                == s6.top_idx()
        })
    })
}

/// Constantly bottom. The quotient of 𝕊₆ collapsing the four middle values
/// is a homomorphism onto `{0, N, 1}`, so those three values suffice.
pub fn clauses_unsatisfiable(clauses: &[Vec<Block>]) -> bool {
    let s6 = FiniteAlgebra::s6();
    let probe = [s6.bottom_idx(), s6.index_of("N").expect("S6 element"), s6.top_idx()];
    let vars: Vec<&Arc<str>> = clauses
        .iter()
        .flatten()
        .map(|b| &b.var)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let slot = |v: &Arc<str>| vars.iter().position(|w| *w == v).expect("collected");
    let indexed: Vec<Vec<(usize, Shape)>> = clauses
        .iter()
        .map(|c| c.iter().map(|b| (slot(&b.var), b.shape)).collect())
        .collect();
    let mut digits = vec![0usize; vars.len()];
    loop {
        let value = indexed.iter().fold(s6.top_idx(), |acc, c| {
            let clause = c.iter().fold(s6.bottom_idx(), |j, &(i, shape)| {
                s6.join_idx(j, shape.eval_idx(s6, probe[digits[i]]))
            });
            s6.meet_idx(acc, clause)
        });
        if value != s6.bottom_idx() {
            return false;
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < probe.len() {
                break;
            }
            digits[i] = 0;
        }
    }
}

fn simplify_clauses(clauses: &mut Vec<Vec<Block>>) {
    clauses.retain(|c| !clause_is_tautology(c));
    let sets: Vec<BTreeSet<&Block>> = clauses.iter().map(|c| c.iter().collect()).collect();
    let keep: Vec<bool> = (0..sets.len())
        .map(|i| !(0..sets.len()).any(|j| j != i && sets[j].is_subset(&sets[i])))
        .collect();
    let mut k = keep.into_iter();
    clauses.retain(|_| k.next().unwrap_or(true));
}

/// Rewrites `f` to a conjunctive form, recording every step.
///
/// First `¬` and `∇` are pushed down to the variables and constants are
/// absorbed, then `∨` is distributed over `∧`, both leftmost-outermost. A
/// final `lattice` step flattens and removes repeated blocks and clauses,
/// and a `collapse-top`/`collapse-bottom` step replaces a constant form.
pub fn nf_derivation(f: &Formula, opts: &NfOptions) -> Result<NfDerivation, NfError> {
    let mut steps = Vec::new();
    let mut current = f.clone();
    rewrite_all(&mut current, &mut steps, push_negation_and_nabla);
    let form = match current {
        Formula::Top => ConjunctiveForm::Top,
        Formula::Bottom => ConjunctiveForm::Bottom,
        _ => {
            let (_, blocks) = predicted_size(&current);
            if blocks > opts.max_blocks {
                return Err(NfError::TooLarge {
                    predicted: blocks,
                    limit: opts.max_blocks,
                });
            }
            rewrite_all(&mut current, &mut steps, distribute);
            let mut clauses = Vec::new();
            collect_clauses(&current, &mut clauses);
            let mut seen = BTreeSet::new();
            clauses.retain(|c| seen.insert(c.iter().cloned().collect::<BTreeSet<_>>()));
            if opts.simplify {
                simplify_clauses(&mut clauses);
            }
            let (form, law) = if clauses.iter().all(|c| clause_is_tautology(c)) {
                (ConjunctiveForm::Top, Law::CollapseTop)
            } else if clauses_unsatisfiable(&clauses) {
                (ConjunctiveForm::Bottom, Law::CollapseBottom)
            } else {
                (ConjunctiveForm::Cnf(clauses), Law::Lattice)
            };
            let target = form.as_formula();
            if target != current {
                steps.push(RewriteStep {
                    before: current.clone(),
                    after: target,
                    law,
                    path: Vec::new(),
                });
            }
            form
        }
    };
    Ok(NfDerivation {
        input: f.clone(),
        steps,
        form,
    })
}

pub fn to_conjunctive_form(f: &Formula) -> Result<ConjunctiveForm, NfError> {
    to_conjunctive_form_with(f, &NfOptions::default())
}

pub fn to_conjunctive_form_with(f: &Formula, opts: &NfOptions) -> Result<ConjunctiveForm, NfError> {
    nf_derivation(f, opts).map(|d| d.form)
}
