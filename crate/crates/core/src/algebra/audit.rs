use serde::Serialize;

use super::{FiniteAlgebra, Index, TruthValue};

/// Outcome of checking one identity on every tuple of the carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    /// The first failing tuple in carrier order.
    #[serde(serialize_with = "serialize_witness")]
    pub witness: Option<Vec<TruthValue>>,
    /// Number of tuples checked.
    pub tuples: usize,
}

fn serialize_witness<S: serde::Serializer>(
    w: &Option<Vec<TruthValue>>,
    s: S,
) -> Result<S::Ok, S::Error> {
    match w {
        None => s.serialize_none(),
        Some(vals) => s.collect_seq(vals.iter().map(|v| v.name())),
    }
}

type Law = fn(&FiniteAlgebra, &[Index]) -> bool;

const LAWS: [(&str, usize, Law); 19] = [
    ("DM1", 1, |a, x| a.neg_idx(a.neg_idx(x[0])) == x[0]),
    ("DM2", 2, |a, x| {
        a.neg_idx(a.meet_idx(x[0], x[1])) == a.join_idx(a.neg_idx(x[0]), a.neg_idx(x[1]))
    }),
    ("IS1", 0, |a, _| a.nabla_idx(a.bottom_idx()) == a.bottom_idx()),
    ("IS2", 1, |a, x| a.meet_idx(x[0], a.nabla_idx(x[0])) == x[0]),
    ("IS3", 2, |a, x| {
        a.nabla_idx(a.meet_idx(x[0], x[1])) == a.meet_idx(a.nabla_idx(x[0]), a.nabla_idx(x[1]))
    }),
    ("IS4", 1, |a, x| {
        let n = a.nabla_idx(x[0]);
        a.meet_idx(a.neg_idx(n), n) == a.bottom_idx()
    }),
    ("IS5", 0, |a, _| a.nabla_idx(a.top_idx()) == a.top_idx()),
    ("IS6", 1, |a, x| {
        a.join_idx(a.neg_idx(x[0]), a.nabla_idx(x[0])) == a.top_idx()
    }),
    ("IS7", 1, |a, x| a.nabla_idx(a.nabla_idx(x[0])) == a.nabla_idx(x[0])),
    ("IS8", 1, |a, x| {
        let nn = a.neg_idx(a.nabla_idx(x[0]));
        a.nabla_idx(nn) == nn
    }),
    ("IS9", 1, |a, x| {
        a.nabla_idx(a.join_idx(x[0], a.neg_idx(x[0]))) == a.top_idx()
    }),
    ("IS10", 1, |a, x| {
        a.meet_idx(x[0], a.neg_idx(a.nabla_idx(x[0]))) == a.bottom_idx()
    }),
    ("IS11", 2, |a, x| {
        a.nabla_idx(a.join_idx(x[0], a.nabla_idx(x[1])))
            == a.join_idx(a.nabla_idx(x[0]), a.nabla_idx(x[1]))
    }),
    ("IS12", 1, |a, x| a.meet_idx(a.delta_idx(x[0]), x[0]) == a.delta_idx(x[0])),
    ("IS13", 1, |a, x| a.delta_idx(a.nabla_idx(x[0])) == a.nabla_idx(x[0])),
    ("IS14", 1, |a, x| a.nabla_idx(a.delta_idx(x[0])) == a.delta_idx(x[0])),
    ("IS15", 1, |a, x| {
        a.delta_idx(a.meet_idx(x[0], a.neg_idx(x[0]))) == a.bottom_idx()
    }),
    ("IS16", 2, |a, x| {
        a.delta_idx(a.join_idx(x[0], x[1])) == a.join_idx(a.delta_idx(x[0]), a.delta_idx(x[1]))
    }),
    ("IS17", 2, |a, x| {
        a.delta_idx(a.meet_idx(x[0], x[1])) == a.meet_idx(a.delta_idx(x[0]), a.delta_idx(x[1]))
    }),
];

/// Names of the audited identities, in report order.
pub const IDENTITY_NAMES: [&str; 19] = {
    let mut names = [""; 19];
    let mut i = 0;
    while i < 19 {
        names[i] = LAWS[i].0;
        i += 1;
    }
    names
};

/// Checks DM1, DM2 and IS1-IS17 on every tuple of the carrier.
pub fn audit_identities(algebra: &FiniteAlgebra) -> Vec<IdentityCheck> {
    let n = algebra.size();
    LAWS.iter()
        .map(|&(name, arity, law)| {
            let tuples = n.pow(arity as u32);
            let mut tuple = vec![0 as Index; arity];
            let mut witness = None;
            for code in 0..tuples {
                let mut c = code;
                for slot in tuple.iter_mut().rev() {
                    *slot = (c % n) as Index;
                    c /= n;
                }
                if !law(algebra, &tuple) {
                    witness = Some(tuple.iter().map(|&i| algebra.value(i)).collect());
                    break;
                }
            }
            IdentityCheck {
                name,
                holds: witness.is_none(),
                witness,
                tuples,
            }
        })
        .collect()
}
