//! Derived rules. A macro node records a sequent together with the name of a
//! derivation schema; [`expand_macros`] replaces it by primitive steps.

use super::build::*;
use super::engine;
use super::{ProofTree, Rule, Sequent, SequentError};
use crate::normalform::Shape;
use crate::syntax::Formula;

pub const MACRO_NAMES: &[&str] = &[
    "double-negation",
    "dn-join",
    "dn-meet",
    "dm-neg-join",
    "dm-neg-meet",
    "nabla-join",
    "nabla-meet",
    "nabla-idem",
    "nabla-neg-nabla",
    "neg-nabla-bot",
    "neg-top",
    "neg-bot",
    "nabla-top",
    "nabla-bot",
    "unit",
    "dist",
    "lattice",
    "collapse-top",
    "collapse-bottom",
    "cong-nabla",
    "cong-meet",
    "cong-join",
    "packaging",
    "block-axiom",
    "excluded-middle-nabla",
    "neg-nabla-elim",
    "neg-nabla-neg-elim",
    "nabla-contradiction",
    "nabla-pair-contradiction",
];

/// A closed sequent schema over one formula `α`: each side lists the
/// prefixes applied to `α`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockSchema {
    pub name: &'static str,
    pub left: &'static [Shape],
    pub right: &'static [Shape],
}

use Shape::*;

/// Every valid one-variable sequent of blocks contains an instance of one of
/// these. Matching tries them in this order.
pub const BLOCK_SCHEMATA: [BlockSchema; 22] = [
    BlockSchema { name: "excluded-middle-nabla", left: &[], right: &[NablaP, NegNablaP] },
    BlockSchema { name: "identity", left: &[P], right: &[P] },
    BlockSchema { name: "first-modal", left: &[P], right: &[NablaP] },
    BlockSchema { name: "identity-neg", left: &[NegP], right: &[NegP] },
    BlockSchema { name: "first-modal-neg", left: &[NegP], right: &[NablaNegP] },
    BlockSchema { name: "identity-nabla", left: &[NablaP], right: &[NablaP] },
    BlockSchema { name: "identity-nabla-neg", left: &[NablaNegP], right: &[NablaNegP] },
    BlockSchema { name: "identity-delta", left: &[NegNablaNegP], right: &[NegNablaNegP] },
    BlockSchema { name: "delta-elim", left: &[NegNablaNegP], right: &[P] },
    BlockSchema { name: "neg-or-nabla", left: &[], right: &[NegP, NablaP] },
    BlockSchema { name: "or-nabla-neg", left: &[], right: &[P, NablaNegP] },
    BlockSchema { name: "nabla-or-nabla-neg", left: &[], right: &[NablaP, NablaNegP] },
    BlockSchema { name: "excluded-middle-nabla-neg", left: &[], right: &[NablaNegP, NegNablaNegP] },
    BlockSchema { name: "neg-nabla-elim", left: &[NegNablaP], right: &[NegP] },
    BlockSchema { name: "neg-nabla-to-nabla-neg", left: &[NegNablaP], right: &[NablaNegP] },
    BlockSchema { name: "identity-neg-nabla", left: &[NegNablaP], right: &[NegNablaP] },
    BlockSchema { name: "delta-to-nabla", left: &[NegNablaNegP], right: &[NablaP] },
    BlockSchema { name: "nabla-contradiction", left: &[P, NegNablaP], right: &[] },
    BlockSchema { name: "nabla-pair-contradiction", left: &[NablaP, NegNablaP], right: &[] },
    BlockSchema { name: "neg-delta-contradiction", left: &[NegP, NegNablaNegP], right: &[] },
    BlockSchema { name: "nabla-neg-pair-contradiction", left: &[NablaNegP, NegNablaNegP], right: &[] },
    BlockSchema { name: "neg-nabla-delta-contradiction", left: &[NegNablaP, NegNablaNegP], right: &[] },
];

impl BlockSchema {
    pub fn instantiate(&self, a: &Formula) -> Sequent {
        Sequent::new(
            self.left.iter().map(|s| s.apply(a.clone())),
            self.right.iter().map(|s| s.apply(a.clone())),
        )
    }

    /// Derivation of the instance at `a`, possibly using other macros.
    pub fn derivation(&self, a: &Formula) -> ProofTree {
        let na = Formula::neg(a.clone());
        match self.name {
            "excluded-middle-nabla" => excluded_middle_nabla(a),
            "identity" => axiom(a),
            "first-modal" => first_modal(a),
            "identity-neg" => axiom(&na),
            "first-modal-neg" => first_modal(&na),
            "identity-nabla" => axiom(&Shape::NablaP.apply(a.clone())),
            "identity-nabla-neg" => axiom(&Shape::NablaNegP.apply(a.clone())),
            "identity-delta" => axiom(&Formula::delta(a.clone())),
            "delta-elim" => neg_nabla_neg_elim(a),
            "neg-or-nabla" => cut(excluded_middle_nabla(a), neg_nabla_elim(a), &neg_nabla(a)),
            "or-nabla-neg" => cut(excluded_middle_nabla(&na), neg_nabla_neg_elim(a), &neg_nabla(&na)),
            "nabla-or-nabla-neg" => {
                let first = cut(excluded_middle_nabla(a), neg_nabla_elim(a), &neg_nabla(a));
                cut(first, first_modal(&na), &na)
            }
            "excluded-middle-nabla-neg" => excluded_middle_nabla(&na),
            "neg-nabla-elim" => neg_nabla_elim(a),
            "neg-nabla-to-nabla-neg" => cut(neg_nabla_elim(a), first_modal(&na), &na),
            "identity-neg-nabla" => axiom(&neg_nabla(a)),
            "delta-to-nabla" => cut(neg_nabla_neg_elim(a), first_modal(a), a),
            "nabla-contradiction" => nabla_contradiction(a),
            "nabla-pair-contradiction" => nabla_pair_contradiction(a),
            "neg-delta-contradiction" => nabla_contradiction(&na),
            "nabla-neg-pair-contradiction" => nabla_pair_contradiction(&na),
            "neg-nabla-delta-contradiction" => cut(neg_nabla_elim(a), nabla_contradiction(&na), &na),
            other => unreachable!("unknown schema {other}"),
        }
    }

    fn is_primitive(&self) -> bool {
        matches!(self.name, "identity" | "first-modal")
    }
}

/// First schema (in table order) with an instance contained in `s`, with the
/// formula it is instantiated at.
pub fn match_block_schema(s: &Sequent) -> Option<(&'static BlockSchema, Formula)> {
    for schema in &BLOCK_SCHEMATA {
        let (side, shape) = match (schema.left.first(), schema.right.first()) {
            (Some(sh), _) => (&s.left, *sh),
            (None, Some(sh)) => (&s.right, *sh),
            (None, None) => continue,
        };
        for f in side {
            if let Some(a) = shape.strip(f) {
                if schema.instantiate(a).is_subsequent_of(s) {
                    return Some((schema, a.clone()));
                }
            }
        }
    }
    None
}

/// Closes `s` by one schema instance and weakening, when one is contained
/// in it.
pub(crate) fn close_by_schema(s: &Sequent) -> Option<ProofTree> {
    let (schema, a) = match_block_schema(s)?;
    let inst = schema.instantiate(&a);
    let leaf = if schema.is_primitive() {
        schema.derivation(&a)
    } else {
        macro_node("block-axiom", vec![a], inst, vec![])
    };
    Some(weaken_to(leaf, s))
}

fn neg_nabla(a: &Formula) -> Formula {
    Formula::neg(Formula::nabla(a.clone()))
}

fn fmacro(name: &str, args: &[&Formula], left: &[Formula], right: &[Formula]) -> ProofTree {
    macro_node(
        name,
        args.iter().map(|f| (*f).clone()).collect(),
        Sequent::new(left.iter().cloned(), right.iter().cloned()),
        vec![],
    )
}

fn excluded_middle_nabla(a: &Formula) -> ProofTree {
    let n = Formula::nabla(a.clone());
    fmacro("excluded-middle-nabla", &[a], &[], &[n.clone(), Formula::neg(n)])
}

fn neg_nabla_elim(a: &Formula) -> ProofTree {
    fmacro("neg-nabla-elim", &[a], &[neg_nabla(a)], &[Formula::neg(a.clone())])
}

fn neg_nabla_neg_elim(a: &Formula) -> ProofTree {
    fmacro("neg-nabla-neg-elim", &[a], &[Formula::delta(a.clone())], std::slice::from_ref(a))
}

fn nabla_contradiction(a: &Formula) -> ProofTree {
    fmacro("nabla-contradiction", &[a], &[a.clone(), neg_nabla(a)], &[])
}

fn nabla_pair_contradiction(a: &Formula) -> ProofTree {
    fmacro("nabla-pair-contradiction", &[a], &[Formula::nabla(a.clone()), neg_nabla(a)], &[])
}

fn seq(left: &Formula, right: &Formula) -> Sequent {
    Sequent::new([left.clone()], [right.clone()])
}

/// A two-way macro: `a ⇒ b` and `b ⇒ a` both derived by `name`.
fn law(name: &str, args: &[&Formula], a: &Formula, b: &Formula) -> (ProofTree, ProofTree) {
    let args: Vec<Formula> = args.iter().map(|f| (*f).clone()).collect();
    (
        macro_node(name, args.clone(), seq(a, b), vec![]),
        macro_node(name, args, seq(b, a), vec![]),
    )
}

fn dn_elim(a: &Formula) -> ProofTree {
    negneg_left(axiom(a), a)
}

fn dn_intro(a: &Formula) -> ProofTree {
    negneg_right(axiom(a), a)
}

/// `α ⇒ α∨β` or `β ⇒ α∨β` by or-right.
fn or_intro(a: &Formula, b: &Formula, take_left: bool) -> ProofTree {
    let x = if take_left { a } else { b };
    let other = if take_left { b } else { a };
    or_right(weaken_right(axiom(x), other), &Formula::or(a.clone(), b.clone()))
}

/// `α∧β ⇒ α` or `α∧β ⇒ β` by and-left.
fn and_elim(a: &Formula, b: &Formula, take_left: bool) -> ProofTree {
    let x = if take_left { a } else { b };
    let other = if take_left { b } else { a };
    and_left(weaken_left(axiom(x), other), &Formula::and(a.clone(), b.clone()))
}

fn two(args: &[Formula], name: &str, c: &Sequent) -> Result<(Formula, Formula), SequentError> {
    match args {
        [a, b] => Ok((a.clone(), b.clone())),
        _ => Err(mismatch(name, c, "expects two formula arguments")),
    }
}

fn single(args: &[Formula], name: &str, c: &Sequent) -> Result<Formula, SequentError> {
    match args {
        [a] => Ok(a.clone()),
        _ => Err(mismatch(name, c, "expects one formula argument")),
    }
}

fn mismatch(name: &str, c: &Sequent, reason: &str) -> SequentError {
    SequentError::MacroMismatch {
        name: name.to_string(),
        conclusion: c.to_string(),
        reason: reason.to_string(),
    }
}

/// Picks the candidate whose conclusion, after weakening, is `c`.
fn pick(name: &str, c: &Sequent, candidates: Vec<ProofTree>) -> Result<ProofTree, SequentError> {
    let options: Vec<String> = candidates.iter().map(|t| t.conclusion.to_string()).collect();
    candidates
        .into_iter()
        .find(|t| t.conclusion == *c)
        .ok_or_else(|| mismatch(name, c, &format!("derives only {}", options.join(" / "))))
}

fn no_premises(name: &str, c: &Sequent, premises: &[ProofTree]) -> Result<(), SequentError> {
    if premises.is_empty() {
        Ok(())
    } else {
        Err(mismatch(name, c, "takes no premises"))
    }
}

/// One-level expansion of a macro node; the result may contain further
/// macros but has exactly the conclusion `c`.
fn expand_one(name: &str, args: &[Formula], c: &Sequent, premises: Vec<ProofTree>) -> Result<ProofTree, SequentError> {
    let fits = |t: ProofTree| -> Result<ProofTree, SequentError> {
        if t.conclusion.is_subsequent_of(c) {
            Ok(weaken_to(t, c))
        } else {
            Err(mismatch(name, c, &format!("derivation ends in {}", t.conclusion)))
        }
    };
    match name {
        "cong-nabla" | "cong-meet" | "cong-join" | "packaging" => {}
        _ => no_premises(name, c, &premises)?,
    }
    match name {
        "double-negation" => {
            let a = single(args, name, c)?;
            pick(name, c, vec![dn_elim(&a), dn_intro(&a)])
        }
        "dn-join" => {
            let (a, b) = two(args, name, c)?;
            let (na, nb) = (dd(&a), dd(&b));
            let target = Formula::or(na.clone(), nb.clone());
            let fwd = or_left(
                or_right(weaken_right(dn_intro(&a), &nb), &target),
                or_right(weaken_right(dn_intro(&b), &na), &target),
                &Formula::or(a.clone(), b.clone()),
            );
            let bwd = or_right(
                or_left(weaken_right(dn_elim(&a), &b), weaken_right(dn_elim(&b), &a), &target),
                &Formula::or(a.clone(), b.clone()),
            );
            pick(name, c, vec![fwd, bwd])
        }
        "dn-meet" => {
            let (a, b) = two(args, name, c)?;
            let (na, nb) = (dd(&a), dd(&b));
            let dd_meet = Formula::and(na.clone(), nb.clone());
            let meet = Formula::and(a.clone(), b.clone());
            let fwd = and_right(
                and_left(weaken_left(dn_elim(&a), &nb), &dd_meet),
                and_left(weaken_left(dn_elim(&b), &na), &dd_meet),
                &meet,
            );
            let bwd = and_right(
                and_left(weaken_left(dn_intro(&a), &b), &meet),
                and_left(weaken_left(dn_intro(&b), &a), &meet),
                &dd_meet,
            );
            pick(name, c, vec![bwd, fwd])
        }
        "dm-neg-join" => {
            let (a, b) = two(args, name, c)?;
            let (na, nb) = (Formula::neg(a.clone()), Formula::neg(b.clone()));
            let join = Formula::or(a.clone(), b.clone());
            let neg_join = Formula::neg(join.clone());
            let meet = Formula::and(na.clone(), nb.clone());
            let fwd = and_right(neg(or_intro(&a, &b, true)), neg(or_intro(&a, &b, false)), &meet);
            if *c == seq(&neg_join, &meet) {
                fits(fwd)
            } else if *c == seq(&meet, &neg_join) {
                fits(dm_neg_join_back(&a, &b))
            } else {
                Err(mismatch(name, c, "not a De Morgan instance"))
            }
        }
        "dm-neg-meet" => {
            let (a, b) = two(args, name, c)?;
            let (na, nb) = (Formula::neg(a.clone()), Formula::neg(b.clone()));
            let meet = Formula::and(a.clone(), b.clone());
            let join = Formula::or(na.clone(), nb.clone());
            let neg_meet = Formula::neg(meet.clone());
            if *c == seq(&join, &neg_meet) {
                return Ok(or_left(neg(and_elim(&a, &b, true)), neg(and_elim(&a, &b, false)), &join));
            }
            if *c != seq(&neg_meet, &join) {
                return Err(mismatch(name, c, "not a De Morgan instance"));
            }
            let (dm, _) = law("dm-neg-join", &[&na, &nb], &Formula::neg(join.clone()), &Formula::and(dd(&a), dd(&b)));
            let (dnm, _) = law("dn-meet", &[&a, &b], &Formula::and(dd(&a), dd(&b)), &meet);
            let lower = cut(dm, dnm, &Formula::and(dd(&a), dd(&b)));
            let flipped = neg(lower);
            let (elim, _) = law("double-negation", &[&join], &dd(&join), &join);
            fits(cut(flipped, elim, &dd(&join)))
        }
        "nabla-join" => {
            let (a, b) = two(args, name, c)?;
            let (na, nb) = (Formula::nabla(a.clone()), Formula::nabla(b.clone()));
            let join = Formula::or(a.clone(), b.clone());
            let nabla_join = Formula::nabla(join.clone());
            let split = Formula::or(na.clone(), nb.clone());
            let fwd = or_right(
                nabla_left(
                    or_left(weaken_right(first_modal(&a), &nb), weaken_right(first_modal(&b), &na), &join),
                    &join,
                ),
                &split,
            );
            let branch = |x: &Formula, left: bool| {
                let t1 = weaken_right(or_intro(&a, &b, left), &nabla_join);
                let t2 = weaken_left(first_modal(&join), x);
                nabla_left(cut(t1, t2, &join), x)
            };
            let bwd = or_left(branch(&a, true), branch(&b, false), &split);
            pick(name, c, vec![fwd, bwd])
        }
        "nabla-meet" => {
            let (a, b) = two(args, name, c)?;
            let (na, nb) = (Formula::nabla(a.clone()), Formula::nabla(b.clone()));
            let meet = Formula::and(a.clone(), b.clone());
            let nabla_meet = Formula::nabla(meet.clone());
            let split = Formula::and(na.clone(), nb.clone());
            if *c == seq(&nabla_meet, &split) {
                let part = |x: &Formula, other: &Formula| {
                    let inner = and_left(weaken_left(first_modal(x), other), &meet);
                    nabla_left(inner, &meet)
                };
                return fits(and_right(part(&a, &b), part(&b, &a), &split));
            }
            if *c != seq(&split, &nabla_meet) {
                return Err(mismatch(name, c, "not a #-meet instance"));
            }
            let t1 = weaken_right(
                and_right(weaken_left(axiom(&a), &b), weaken_left(axiom(&b), &a), &meet),
                &nabla_meet,
            );
            let t2 = weaken_left(weaken_left(first_modal(&meet), &a), &b);
            let mut t = nabla_left(cut(t1, t2, &meet), &a);
            if a != b {
                t = nabla_left(t, &b);
            }
            let target = Sequent::new([na.clone(), nb.clone()], [nabla_meet.clone()]);
            if !t.conclusion.is_subsequent_of(&target) {
                return Err(mismatch(name, c, "argument collision"));
            }
            fits(and_left(weaken_to(t, &target), &split))
        }
        "nabla-idem" => {
            let a = single(args, name, c)?;
            let n = Formula::nabla(a.clone());
            pick(name, c, vec![nabla_left(axiom(&n), &n), first_modal(&n)])
        }
        "nabla-neg-nabla" => {
            let a = single(args, name, c)?;
            let inner = neg_nabla(&a);
            pick(name, c, vec![neg_nabla_left(axiom(&inner), &a), first_modal(&inner)])
        }
        "neg-nabla-bot" => {
            no_args(args, name, c)?;
            pick(name, c, vec![neg(nabla_left(bottom(), &Formula::Bottom))])
        }
        "neg-top" => {
            no_args(args, name, c)?;
            let nt = Formula::neg(Formula::Top);
            pick(name, c, vec![weaken_right(neg(top()), &Formula::Bottom), weaken_right(bottom(), &nt)])
        }
        "neg-bot" => {
            no_args(args, name, c)?;
            let nb = Formula::neg(Formula::Bottom);
            pick(name, c, vec![weaken_left(top(), &nb), weaken_left(neg(bottom()), &Formula::Top)])
        }
        "nabla-top" => {
            no_args(args, name, c)?;
            let nt = Formula::nabla(Formula::Top);
            pick(name, c, vec![weaken_left(top(), &nt), first_modal(&Formula::Top)])
        }
        "nabla-bot" => {
            no_args(args, name, c)?;
            let nb = Formula::nabla(Formula::Bottom);
            pick(
                name,
                c,
                vec![
                    weaken_right(nabla_left(bottom(), &Formula::Bottom), &Formula::Bottom),
                    weaken_right(bottom(), &nb),
                ],
            )
        }
        "unit" | "dist" | "lattice" | "collapse-top" | "collapse-bottom" => {
            no_args(args, name, c)?;
            engine::decompose(c, engine::MACRO_BUDGET)
                .map_err(|e| mismatch(name, c, &e.to_string()))
        }
        "cong-nabla" => {
            let [p] = take::<1>(name, c, premises)?;
            let (a, b) = single_sides(&p.conclusion).ok_or_else(|| mismatch(name, c, "premise must be a => b"))?;
            let t = nabla_left(cut(p, first_modal(&b), &b), &a);
            fits(t)
        }
        "cong-meet" | "cong-join" => {
            let [p, q] = take::<2>(name, c, premises)?;
            let (a, b) = single_sides(&p.conclusion).ok_or_else(|| mismatch(name, c, "premise must be a => b"))?;
            let (x, y) = single_sides(&q.conclusion).ok_or_else(|| mismatch(name, c, "premise must be a => b"))?;
            let t = if name == "cong-meet" {
                let ctx = [a.clone(), x.clone()];
                let p = weaken_to(p, &Sequent::new(ctx.clone(), [b.clone()]));
                let q = weaken_to(q, &Sequent::new(ctx, [y.clone()]));
                and_left(and_right(p, q, &Formula::and(b, y)), &Formula::and(a, x))
            } else {
                let ctx = [b.clone(), y.clone()];
                let p = weaken_to(p, &Sequent::new([a.clone()], ctx.clone()));
                let q = weaken_to(q, &Sequent::new([x.clone()], ctx));
                or_right(or_left(p, q, &Formula::or(a, x)), &Formula::or(b, y))
            };
            fits(t)
        }
        "packaging" => {
            let [p] = take::<1>(name, c, premises)?;
            packaging(p, c)
        }
        "block-axiom" => {
            let a = single(args, name, c)?;
            let schema = BLOCK_SCHEMATA
                .iter()
                .find(|s| s.instantiate(&a) == *c)
                .ok_or_else(|| mismatch(name, c, "no block schema has this instance"))?;
            Ok(schema.derivation(&a))
        }
        "excluded-middle-nabla" => {
            let a = single(args, name, c)?;
            let n = Formula::nabla(a.clone());
            let nn = Formula::neg(n.clone());
            let em = Formula::or(n.clone(), nn.clone());
            let both = [n.clone(), nn.clone()];
            let split = or_left(
                weaken_to(axiom(&n), &Sequent::new([n.clone()], both.clone())),
                weaken_to(axiom(&nn), &Sequent::new([nn.clone()], both)),
                &em,
            );
            pick(name, c, vec![cut(second_modal(&a), split, &em)])
        }
        "neg-nabla-elim" => {
            let a = single(args, name, c)?;
            pick(name, c, vec![neg(first_modal(&a))])
        }
        "neg-nabla-neg-elim" => {
            let a = single(args, name, c)?;
            let na = Formula::neg(a.clone());
            pick(name, c, vec![cut(neg(first_modal(&na)), dn_elim(&a), &dd(&a))])
        }
        "nabla-contradiction" => {
            let a = single(args, name, c)?;
            let n = Formula::nabla(a.clone());
            pick(name, c, vec![cut(first_modal(&a), nabla_pair_contradiction(&a), &n)])
        }
        "nabla-pair-contradiction" => {
            let a = single(args, name, c)?;
            let n = Formula::nabla(a.clone());
            let nn = Formula::neg(n.clone());
            let nnn = Formula::neg(nn.clone());
            let em = Formula::or(n.clone(), nn.clone());
            let neg_em = Formula::neg(em.clone());
            let refute = neg(second_modal(&a));
            let (_, dm_back) = law("dm-neg-join", &[&n, &nn], &neg_em, &Formula::and(nn.clone(), nnn.clone()));
            let meet = Formula::and(nn.clone(), nnn.clone());
            let glued = cut(dm_back, refute, &neg_em);
            let pair = Sequent::new([nn.clone(), nnn.clone()], []);
            let intro = and_right(
                weaken_to(axiom(&nn), &Sequent::new(pair.left.clone(), [nn.clone()])),
                weaken_to(axiom(&nnn), &Sequent::new(pair.left.clone(), [nnn.clone()])),
                &meet,
            );
            let unpacked = cut(intro, glued, &meet);
            pick(name, c, vec![cut(dn_intro(&n), unpacked, &nnn)])
        }
        other => Err(SequentError::UnknownMacro(other.to_string())),
    }
}

fn dd(a: &Formula) -> Formula {
    Formula::neg(Formula::neg(a.clone()))
}

/// `¬α∧¬β ⇒ ¬(α∨β)` through double negation and the other De Morgan law.
fn dm_neg_join_back(a: &Formula, b: &Formula) -> ProofTree {
    let (na, nb) = (Formula::neg(a.clone()), Formula::neg(b.clone()));
    let meet = Formula::and(na.clone(), nb.clone());
    let join = Formula::or(a.clone(), b.clone());
    let neg_meet = Formula::neg(meet.clone());
    let dd_join = Formula::or(dd(a), dd(b));
    let t1 = weaken_right(negneg_right(axiom(&meet), &meet), &Formula::neg(join.clone()));
    let (dnj, _) = law("dn-join", &[a, b], &join, &dd_join);
    let t2 = weaken_right(dnj, &neg_meet);
    let (_, dmm) = law("dm-neg-meet", &[&na, &nb], &neg_meet, &dd_join);
    let t3 = weaken_left(dmm, &join);
    let up = cut(t2, t3, &dd_join);
    let flipped = neg(up);
    let t4 = weaken_left(flipped, &meet);
    cut(t1, t4, &dd(&meet))
}

fn no_args(args: &[Formula], name: &str, c: &Sequent) -> Result<(), SequentError> {
    if args.is_empty() {
        Ok(())
    } else {
        Err(mismatch(name, c, "takes no arguments"))
    }
}

fn take<const N: usize>(name: &str, c: &Sequent, premises: Vec<ProofTree>) -> Result<[ProofTree; N], SequentError> {
    premises
        .try_into()
        .map_err(|_| mismatch(name, c, &format!("expects {N} premises")))
}

fn single_sides(s: &Sequent) -> Option<(Formula, Formula)> {
    match (s.left.len(), s.right.len()) {
        (1, 1) => Some((s.left.iter().next()?.clone(), s.right.iter().next()?.clone())),
        _ => None,
    }
}

/// Repackages `Γ' ⇒ Σ'` as `Γ ⇒ Σ` when every `γ ∈ Γ'` follows from `Γ`
/// and every `σ ∈ Σ'` entails `Σ`, e.g. `Γ ⇒ Σ` to `⋀Γ ⇒ ⋁Σ`. Each side
/// formula is replaced by a cut with a lattice derivation.
fn packaging(p: ProofTree, c: &Sequent) -> Result<ProofTree, SequentError> {
    let lattice = |s: Sequent| {
        engine::decompose(&s, engine::MACRO_BUDGET).map_err(|e| mismatch("packaging", c, &e.to_string()))
    };
    let premise = p.conclusion.clone();
    let mut t = p;
    for g in &premise.left {
        t = cut(lattice(Sequent::new(c.left.clone(), [g.clone()]))?, t, g);
    }
    for d in &premise.right {
        t = cut(t, lattice(Sequent::new([d.clone()], c.right.clone()))?, d);
    }
    if t.conclusion.is_subsequent_of(c) {
        Ok(weaken_to(t, c))
    } else {
        Err(mismatch("packaging", c, &format!("derivation ends in {}", t.conclusion)))
    }
}

/// Replaces every macro node by its expansion, recursively.
pub fn expand_macros(tree: &ProofTree) -> Result<ProofTree, SequentError> {
    expand(tree.clone())
}

fn expand(t: ProofTree) -> Result<ProofTree, SequentError> {
    match t.rule {
        Rule::Macro { name, args } => {
            let e = expand_one(&name, &args, &t.conclusion, t.premises)?;
            if e.conclusion != t.conclusion {
                return Err(mismatch(&name, &t.conclusion, &format!("expansion ends in {}", e.conclusion)));
            }
            expand(e)
        }
        rule => {
            let premises = t.premises.into_iter().map(expand).collect::<Result<_, _>>()?;
            Ok(ProofTree::new(t.conclusion, rule, premises))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::check_proof;
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    fn checked(t: &ProofTree) {
        let e = expand_macros(t).unwrap_or_else(|e| panic!("{}: {e}", t.conclusion));
        assert_eq!(e.conclusion, t.conclusion);
        assert!(!e.has_macros());
        check_proof(&e).unwrap_or_else(|err| panic!("{}: {err}\n{}", t.conclusion, e.render()));
    }

    #[test]
    fn every_schema_instance_expands_and_checks() {
        for a in [f("p"), f("~q"), f("p & #q")] {
            for s in &BLOCK_SCHEMATA {
                let inst = s.instantiate(&a);
                assert!(inst.is_valid(), "{} invalid at {a}", s.name);
                checked(&macro_node("block-axiom", vec![a.clone()], inst, vec![]));
            }
        }
    }

    #[test]
    fn law_macros_both_directions() {
        let pairs = [(f("p"), f("q")), (f("p"), f("#p")), (f("~p"), f("p")), (f("r"), f("r")), (f("p | q"), f("~#q"))];
        for (a, b) in &pairs {
            let (na, nb) = (Formula::neg(a.clone()), Formula::neg(b.clone()));
            let cases = [
                ("double-negation", vec![a.clone()], dd(a), a.clone()),
                ("dn-join", vec![a.clone(), b.clone()], Formula::or(a.clone(), b.clone()), Formula::or(dd(a), dd(b))),
                ("dn-meet", vec![a.clone(), b.clone()], Formula::and(a.clone(), b.clone()), Formula::and(dd(a), dd(b))),
                (
                    "dm-neg-join",
                    vec![a.clone(), b.clone()],
                    Formula::neg(Formula::or(a.clone(), b.clone())),
                    Formula::and(na.clone(), nb.clone()),
                ),
                (
                    "dm-neg-meet",
                    vec![a.clone(), b.clone()],
                    Formula::neg(Formula::and(a.clone(), b.clone())),
                    Formula::or(na.clone(), nb.clone()),
                ),
                (
                    "nabla-join",
                    vec![a.clone(), b.clone()],
                    Formula::nabla(Formula::or(a.clone(), b.clone())),
                    Formula::or(Formula::nabla(a.clone()), Formula::nabla(b.clone())),
                ),
                (
                    "nabla-meet",
                    vec![a.clone(), b.clone()],
                    Formula::nabla(Formula::and(a.clone(), b.clone())),
                    Formula::and(Formula::nabla(a.clone()), Formula::nabla(b.clone())),
                ),
                ("nabla-idem", vec![a.clone()], Formula::nabla(Formula::nabla(a.clone())), Formula::nabla(a.clone())),
                (
                    "nabla-neg-nabla",
                    vec![a.clone()],
                    Formula::nabla(neg_nabla(a)),
                    neg_nabla(a),
                ),
            ];
            for (name, args, x, y) in cases {
                if x == y {
                    continue;
                }
                let (fwd, bwd) = law(name, &args.iter().collect::<Vec<_>>(), &x, &y);
                checked(&fwd);
                checked(&bwd);
            }
        }
    }

    #[test]
    fn constant_macros() {
        let cases = [
            ("neg-top", "~top", "bot"),
            ("neg-bot", "~bot", "top"),
            ("nabla-top", "#top", "top"),
            ("nabla-bot", "#bot", "bot"),
        ];
        for (name, x, y) in cases {
            let (fwd, bwd) = law(name, &[], &f(x), &f(y));
            checked(&fwd);
            checked(&bwd);
        }
        checked(&macro_node("neg-nabla-bot", vec![], Sequent::parse("=> ~#bot").unwrap(), vec![]));
    }

    #[test]
    fn congruence_macros() {
        let (p, q) = (f("p"), f("q"));
        let (fwd, _) = law("double-negation", &[&p], &dd(&p), &p);
        let t = macro_node("cong-nabla", vec![], seq(&Formula::nabla(dd(&p)), &Formula::nabla(p.clone())), vec![fwd.clone()]);
        checked(&t);
        let t = macro_node(
            "cong-meet",
            vec![],
            seq(&Formula::and(dd(&p), q.clone()), &Formula::and(p.clone(), q.clone())),
            vec![fwd.clone(), axiom(&q)],
        );
        checked(&t);
        let t = macro_node(
            "cong-join",
            vec![],
            seq(&Formula::or(q.clone(), dd(&p)), &Formula::or(q.clone(), p.clone())),
            vec![axiom(&q), fwd],
        );
        checked(&t);
    }

    #[test]
    fn mismatched_macro_is_rejected() {
        let t = macro_node("nabla-idem", vec![f("p")], Sequent::parse("p => #p").unwrap(), vec![]);
        assert!(matches!(expand_macros(&t), Err(SequentError::MacroMismatch { .. })));
        let t = macro_node("no-such-rule", vec![], Sequent::parse("p => p").unwrap(), vec![]);
        assert!(matches!(expand_macros(&t), Err(SequentError::UnknownMacro(_))));
    }

    #[test]
    fn matching_prefers_table_order() {
        let s = Sequent::parse("p, ~#p => #p, ~#p").unwrap();
        let (schema, a) = match_block_schema(&s).unwrap();
        assert_eq!((schema.name, a), ("excluded-middle-nabla", f("p")));
        assert!(match_block_schema(&Sequent::parse("p => ~p").unwrap()).is_none());
    }

    #[test]
    fn schemata_cover_valid_one_variable_block_sequents() {
        let p = f("p");
        let mut valid = 0;
        for mask in 0u32..1 << 12 {
            let pick = |offset: u32| Shape::ALL.iter().enumerate().filter(move |(i, _)| mask >> (offset + *i as u32) & 1 == 1);
            let s = Sequent::new(pick(0).map(|(_, sh)| sh.apply(p.clone())), pick(6).map(|(_, sh)| sh.apply(p.clone())));
            if s.is_valid() {
                valid += 1;
                assert!(match_block_schema(&s).is_some(), "{s}");
            }
        }
        assert!(valid > 0);
    }
}
