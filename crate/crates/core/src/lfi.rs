//! Consistency and inconsistency operators, paraconsistency diagnostics and
//! the derivability adjustment against classical logic.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{FiniteAlgebra, TruthValue};
use crate::semantics::{entails_six, variables_of, Countermodel};
use crate::syntax::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LfiError {
    #[error("`{0}` is outside the classical language (no `#` allowed)")]
    NotClassical(Formula),
    #[error("{found} variables exceed the classical budget of {limit}")]
    TooManyVariables { found: usize, limit: usize },
}

/// One row of the `∘`/`•` table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConsistencyRow {
    pub value: TruthValue,
    pub circ: TruthValue,
    pub bullet: TruthValue,
}

/// `∘x` and `•x` for every `x` in 𝕊₆, computed from the definitions.
pub fn consistency_truth_table() -> Vec<ConsistencyRow> {
    let s6 = FiniteAlgebra::s6();
    (0..s6.size() as u8)
        .map(|x| {
            let circ = s6.join_idx(s6.delta_idx(x), s6.delta_idx(s6.neg_idx(x)));
            ConsistencyRow {
                value: s6.value(x),
                circ: s6.value(circ),
                bullet: s6.value(s6.neg_idx(circ)),
            }
        })
        .collect()
}

/// A named entailment claim with its outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawCheck {
    pub name: String,
    /// The claim as a query string.
    pub claim: String,
    pub holds: bool,
    /// Whether the claim is expected to hold.
    pub expected: bool,
    pub witness: Option<Countermodel>,
}

impl LawCheck {
    pub fn as_expected(&self) -> bool {
        self.holds == self.expected
    }
}

fn p() -> Formula {
    Formula::var("p")
}

fn q() -> Formula {
    Formula::var("q")
}

fn render_query(premises: &[Formula], goal: &Formula) -> String {
    let prem: Vec<String> = premises.iter().map(|f| f.to_string()).collect();
    if prem.is_empty() {
        format!("|= {goal}")
    } else {
        format!("{} |= {goal}", prem.join(", "))
    }
}

fn law(name: impl Into<String>, premises: &[Formula], goal: Formula, expected: bool) -> LawCheck {
    let r = entails_six(premises, &goal);
    LawCheck {
        name: name.into(),
        claim: render_query(premises, &goal),
        holds: r.holds,
        expected,
        witness: r.countermodel,
    }
}

/// `∘` propagation: `⊨ ∘⊥`, `∘α ⊨ ∘∇α`, `∘α ⊨ ∘¬α`, `∘α, ∘β ⊨ ∘(α ∧ β)`,
/// `∘α, ∘β ⊨ ∘(α ∨ β)` and `⊨ ∘¬ⁿ∘α` for `n ≤ max_n`.
///
/// Schematic letters are checked as distinct variables; since entailment is
/// structural this covers every instance.
pub fn check_propagation(max_n: usize) -> Vec<LawCheck> {
    let c = Formula::circ;
    let mut out = vec![
        law("circ-bottom", &[], c(Formula::Bottom), true),
        law("circ-nabla", &[c(p())], c(Formula::nabla(p())), true),
        law("circ-neg", &[c(p())], c(Formula::neg(p())), true),
        law("circ-and", &[c(p()), c(q())], c(Formula::and(p(), q())), true),
        law("circ-or", &[c(p()), c(q())], c(Formula::or(p(), q())), true),
    ];
    for n in 0..=max_n {
        let mut inner = c(p());
        for _ in 0..n {
            inner = Formula::neg(inner);
        }
        out.push(law(format!("cc{n}"), &[], c(inner), true));
    }
    out
}

/// `•` laws with the converses that fail.
pub fn check_bullet_laws() -> Vec<LawCheck> {
    let b = Formula::bullet;
    let contradiction = Formula::and(p(), Formula::neg(p()));
    vec![
        law("contradiction-bullet", std::slice::from_ref(&contradiction), b(p()), true),
        law("bullet-contradiction", &[b(p())], contradiction, false),
        law("bullet-neg", &[b(p())], b(Formula::neg(p())), true),
        law("neg-bullet", &[b(Formula::neg(p()))], b(p()), true),
        law(
            "bullet-and",
            &[b(Formula::and(p(), q()))],
            Formula::or(b(p()), b(q())),
            true,
        ),
        law(
            "bullet-and-converse",
            &[Formula::or(b(p()), b(q()))],
            b(Formula::and(p(), q())),
            false,
        ),
        law(
            "bullet-or",
            &[b(Formula::or(p(), q()))],
            Formula::or(b(p()), b(q())),
            true,
        ),
        law(
            "bullet-or-converse",
            &[Formula::or(b(p()), b(q()))],
            b(Formula::or(p(), q())),
            false,
        ),
    ]
}

/// `∘p, p ⊭ q`, `∘p, ¬p ⊭ q` and `∘p, p, ¬p ⊨ ⊥`.
pub fn check_gentle_explosion() -> Vec<LawCheck> {
    let circ = Formula::circ(p());
    vec![
        law("consistent-p", &[circ.clone(), p()], q(), false),
        law("consistent-neg-p", &[circ.clone(), Formula::neg(p())], q(), false),
        law(
            "consistent-explosion",
            &[circ, p(), Formula::neg(p())],
            Formula::Bottom,
            true,
        ),
    ]
}

/// Every LFI fact checked by the library.
#[derive(Debug, Clone, Serialize)]
pub struct LfiReport {
    pub table: Vec<ConsistencyRow>,
    pub non_explosive: LawCheck,
    pub paracomplete: LawCheck,
    pub gently_explosive: Vec<LawCheck>,
    pub propagation: Vec<LawCheck>,
    pub bullet: Vec<LawCheck>,
    pub identities: Vec<LawCheck>,
}

impl LfiReport {
    /// All checks came out as expected.
    pub fn clean(&self) -> bool {
        self.all_checks().all(LawCheck::as_expected)
    }

    pub fn all_checks(&self) -> impl Iterator<Item = &LawCheck> {
        [&self.non_explosive, &self.paracomplete]
            .into_iter()
            .chain(&self.gently_explosive)
            .chain(&self.propagation)
            .chain(&self.bullet)
            .chain(&self.identities)
    }
}

fn equivalence_laws() -> Vec<LawCheck> {
    let circ = Formula::circ(p());
    let bullet = Formula::bullet(p());
    let both = |name: &str, a: Formula, b: Formula| {
        [
            law(format!("{name}-forward"), std::slice::from_ref(&a), b.clone(), true),
            law(format!("{name}-backward"), &[b], a, true),
        ]
    };
    let mut out = vec![
        law("circ-or-bullet", &[], Formula::or(circ.clone(), bullet.clone()), true),
        law("circ-and-bullet", &[Formula::and(circ.clone(), bullet.clone())], Formula::Bottom, true),
    ];
    out.extend(both(
        "circ-delta",
        circ,
        Formula::delta(Formula::or(p(), Formula::neg(p()))),
    ));
    out.extend(both(
        "bullet-nabla",
        bullet,
        Formula::nabla(Formula::and(p(), Formula::neg(p()))),
    ));
    out
}

/// Full audit: `∘`/`•` table, non-explosion, paracompleteness, gentle
/// explosion, propagation up to `max_n` and the `•` laws.
pub fn lfi_audit(max_n: usize) -> LfiReport {
    LfiReport {
        table: consistency_truth_table(),
        non_explosive: law("non-explosive", &[p(), Formula::neg(p())], q(), false),
        paracomplete: law("paracomplete", &[], Formula::or(q(), Formula::neg(q())), false),
        gently_explosive: check_gentle_explosion(),
        propagation: check_propagation(max_n),
        bullet: check_bullet_laws(),
        identities: equivalence_laws(),
    }
}

/// Options for the classical oracle.
#[derive(Debug, Clone, Copy)]
pub struct CplOptions {
    /// Reject `#` instead of reading it as the identity.
    pub strict: bool,
    pub max_vars: usize,
}

impl Default for CplOptions {
    fn default() -> Self {
        CplOptions {
            strict: false,
            max_vars: 16,
        }
    }
}

fn classical_value(f: &Formula, v: &HashMap<Arc<str>, bool>) -> bool {
    match f {
        Formula::Var(x) => v[x],
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::Neg(a) => !classical_value(a, v),
        Formula::Nabla(a) => classical_value(a, v),
        Formula::And(a, b) => classical_value(a, v) && classical_value(b, v),
        Formula::Or(a, b) => classical_value(a, v) || classical_value(b, v),
    }
}

fn has_nabla(f: &Formula) -> bool {
    match f {
        Formula::Nabla(_) => true,
        _ => f.children().into_iter().any(has_nabla),
    }
}

/// Classical entailment by two-valued truth tables, written independently of
/// the algebra tables.
pub fn cpl_entails(premises: &[Formula], goal: &Formula, opts: CplOptions) -> Result<bool, LfiError> {
    if opts.strict {
        if let Some(f) = premises.iter().chain([goal]).find(|f| has_nabla(f)) {
            return Err(LfiError::NotClassical(f.clone()));
        }
    }
    let vars = variables_of(premises.iter().chain([goal]));
    if vars.len() > opts.max_vars {
        return Err(LfiError::TooManyVariables {
            found: vars.len(),
            limit: opts.max_vars,
        });
    }
    let mut v: HashMap<Arc<str>, bool> = HashMap::new();
    for bits in 0u64..(1u64 << vars.len()) {
        for (i, x) in vars.iter().enumerate() {
            v.insert(x.clone(), bits >> i & 1 == 1);
        }
        if premises.iter().all(|f| classical_value(f, &v)) && !classical_value(goal, &v) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Both sides of the derivability adjustment for one query.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DatOutcome {
    pub cpl: bool,
    pub six_with_circ: bool,
    pub agree: bool,
}

/// Compares `Γ ⊢ α` classically with `Γ, ∘p₁, …, ∘pₙ ⊨ α` in *Six*, where
/// `p₁ … pₙ` are all variables of `Γ ∪ {α}`.
pub fn dat_check(premises: &[Formula], goal: &Formula) -> Result<DatOutcome, LfiError> {
    let cpl = cpl_entails(
        premises,
        goal,
        CplOptions {
            strict: true,
            ..CplOptions::default()
        },
    )?;
    let mut extended: Vec<Formula> = premises.to_vec();
    for v in variables_of(premises.iter().chain([goal])) {
        extended.push(Formula::circ(Formula::Var(v)));
    }
    let six_with_circ = entails_six(&extended, goal).holds;
    Ok(DatOutcome {
        cpl,
        six_with_circ,
        agree: cpl == six_with_circ,
    })
}
