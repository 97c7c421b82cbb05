//! Finite De Morgan and involutive Stone algebras given by explicit tables.
//!
//! Every algebra is a dense table over a carrier of at most 64 elements, so
//! all axioms are checked exhaustively at construction time. Values carry the
//! identity of the algebra they belong to; mixing values of two algebras is an
//! error rather than a silent reinterpretation of indices.

mod audit;
mod builtin;
mod filter;
mod table_format;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use thiserror::Error;

pub use audit::{audit_identities, IdentityCheck, IDENTITY_NAMES};
pub use builtin::{lukasiewicz_embedding, BuiltinAlgebra};
pub use filter::Filter;

/// Largest supported carrier; filters are stored as 64-bit sets.
pub const MAX_CARRIER: usize = 64;

/// Index of an element inside its carrier.
pub type Index = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("unknown algebra `{0}` (expected one of S6, L2, L3, L4, L5, B4)")]
    UnknownAlgebra(String),
    #[error("carrier must have between 1 and {MAX_CARRIER} elements, got {0}")]
    CarrierSize(usize),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("table `{table}` has wrong shape: expected {expected} entries, found {found}")]
    TableShape {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("table entry out of range in `{0}`")]
    EntryOutOfRange(&'static str),
    #[error("order is not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("`{op}` is not the {bound} of the order at ({a}, {b})")]
    NotLatticeBound {
        op: &'static str,
        bound: &'static str,
        a: String,
        b: String,
    },
    #[error("order has no {0} element")]
    Unbounded(&'static str),
    #[error("lattice is not distributive at ({0}, {1}, {2})")]
    NotDistributive(String, String, String),
    #[error("identity {law} fails at {witness}")]
    IdentityFails { law: &'static str, witness: String },
    #[error("value `{0}` does not belong to this algebra")]
    ForeignValue(String),
    #[error("no element named `{0}`")]
    UnknownElement(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// How much of the axiom set the constructor insists on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Checking {
    /// Bounded distributive lattice, De Morgan laws and IS1-IS4.
    StoneAlgebra,
    /// Lattice and De Morgan laws only; the nabla table is carried but not
    /// required to satisfy IS1-IS4. Such algebras are flagged non-S.
    DeMorganOnly,
}

/// Stable identity of an algebra, derived from its tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraId(u64);

/// An element of a specific finite algebra.
#[derive(Clone)]
pub struct TruthValue {
    algebra: AlgebraId,
    index: Index,
    name: Arc<str>,
}

impl TruthValue {
    pub fn index(&self) -> Index {
        self.index
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }
}

impl PartialEq for TruthValue {
    fn eq(&self, other: &Self) -> bool {
        self.algebra == other.algebra && self.index == other.index
    }
}

impl Eq for TruthValue {}

impl Hash for TruthValue {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.algebra.hash(state);
        self.index.hash(state);
    }
}

impl fmt::Debug for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl serde::Serialize for TruthValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.name)
    }
}

impl fmt::Display for TruthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// Raw operation tables, rows in carrier order.
///
/// `leq[x][y]` is true iff `x <= y`; binary tables are indexed `[x][y]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTables {
    pub name: String,
    pub carrier: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
    pub nabla: Vec<usize>,
}

/// A validated finite algebra of type (2, 2, 1, 1, 0, 0).
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    id: AlgebraId,
    name: String,
    names: Vec<Arc<str>>,
    leq: Vec<u64>,
    meet: Vec<Index>,
    join: Vec<Index>,
    neg: Vec<Index>,
    nabla: Vec<Index>,
    bottom: Index,
    top: Index,
    rank: Vec<u8>,
    stone: bool,
}

impl PartialEq for FiniteAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.id == other.id
    }
}

impl Eq for FiniteAlgebra {}

impl FiniteAlgebra {
    /// Validates `tables` and builds the algebra.
    pub fn new(tables: AlgebraTables, checking: Checking) -> Result<Self, AlgebraError> {
        let n = tables.carrier.len();
        if n == 0 || n > MAX_CARRIER {
            return Err(AlgebraError::CarrierSize(n));
        }
        for (i, a) in tables.carrier.iter().enumerate() {
            if tables.carrier[..i].contains(a) {
                return Err(AlgebraError::DuplicateName(a.clone()));
            }
        }
        check_square("leq", &tables.leq, n)?;
        check_square("meet", &tables.meet, n)?;
        check_square("join", &tables.join, n)?;
        for (table, row) in [("neg", &tables.neg), ("nabla", &tables.nabla)] {
            if row.len() != n {
                return Err(AlgebraError::TableShape {
                    table,
                    expected: n,
                    found: row.len(),
                });
            }
            if row.iter().any(|&v| v >= n) {
                return Err(AlgebraError::EntryOutOfRange(table));
            }
        }
        for (table, grid) in [("meet", &tables.meet), ("join", &tables.join)] {
            if grid.iter().flatten().any(|&v| v >= n) {
                return Err(AlgebraError::EntryOutOfRange(table));
            }
        }

        let leq: Vec<u64> = tables
            .leq
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &b)| if b { acc | (1 << j) } else { acc })
            })
            .collect();
        let flat = |grid: &Vec<Vec<usize>>| -> Vec<Index> {
            grid.iter().flatten().map(|&v| v as Index).collect()
        };

        let mut hasher = DefaultHasher::new();
        tables.carrier.hash(&mut hasher);
        tables.leq.hash(&mut hasher);
        tables.meet.hash(&mut hasher);
        tables.join.hash(&mut hasher);
        tables.neg.hash(&mut hasher);
        tables.nabla.hash(&mut hasher);
        (checking == Checking::StoneAlgebra).hash(&mut hasher);

        let mut algebra = FiniteAlgebra {
            id: AlgebraId(hasher.finish()),
            name: tables.name.clone(),
            names: tables.carrier.iter().map(|s| Arc::from(s.as_str())).collect(),
            leq,
            meet: flat(&tables.meet),
            join: flat(&tables.join),
            neg: tables.neg.iter().map(|&v| v as Index).collect(),
            nabla: tables.nabla.iter().map(|&v| v as Index).collect(),
            bottom: 0,
            top: 0,
            rank: vec![0; n],
            stone: checking == Checking::StoneAlgebra,
        };
        algebra.validate_lattice()?;
        algebra.compute_ranks();
        algebra.validate_identities(checking)?;
        Ok(algebra)
    }

    /// The six-element generator of the variety.
    pub fn s6() -> &'static FiniteAlgebra {
        static S6: OnceLock<FiniteAlgebra> = OnceLock::new();
        S6.get_or_init(|| BuiltinAlgebra::S6.build())
    }

    pub fn builtin(which: BuiltinAlgebra) -> FiniteAlgebra {
        which.build()
    }

    pub fn id(&self) -> AlgebraId {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// True when the algebra was validated against IS1-IS4.
    pub fn is_stone(&self) -> bool {
        self.stone
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn value(&self, index: Index) -> TruthValue {
        assert!((index as usize) < self.size(), "index out of carrier");
        TruthValue {
            algebra: self.id,
            index,
            name: self.names[index as usize].clone(),
        }
    }

    /// All elements in carrier order.
    pub fn values(&self) -> Vec<TruthValue> {
        (0..self.size() as Index).map(|i| self.value(i)).collect()
    }

    pub fn element(&self, name: &str) -> Result<TruthValue, AlgebraError> {
        self.index_of(name)
            .map(|i| self.value(i))
            .ok_or_else(|| AlgebraError::UnknownElement(name.to_string()))
    }

    pub fn index_of(&self, name: &str) -> Option<Index> {
        self.names
            .iter()
            .position(|n| &**n == name)
            .map(|i| i as Index)
    }

    pub fn element_name(&self, index: Index) -> &str {
        &self.names[index as usize]
    }

    pub fn bottom(&self) -> TruthValue {
        self.value(self.bottom)
    }

    pub fn top(&self) -> TruthValue {
        self.value(self.top)
    }

    pub fn bottom_idx(&self) -> Index {
        self.bottom
    }

    pub fn top_idx(&self) -> Index {
        self.top
    }

    /// Height of the element: length of the longest chain from bottom.
    pub fn rank(&self, index: Index) -> u8 {
        self.rank[index as usize]
    }

    #[inline]
    pub fn leq_idx(&self, a: Index, b: Index) -> bool {
        self.leq[a as usize] >> b & 1 == 1
    }

    #[inline]
    pub fn meet_idx(&self, a: Index, b: Index) -> Index {
        self.meet[a as usize * self.size() + b as usize]
    }

    #[inline]
    pub fn join_idx(&self, a: Index, b: Index) -> Index {
        self.join[a as usize * self.size() + b as usize]
    }

    #[inline]
    pub fn neg_idx(&self, a: Index) -> Index {
        self.neg[a as usize]
    }

    #[inline]
    pub fn nabla_idx(&self, a: Index) -> Index {
        self.nabla[a as usize]
    }

    /// Derived operator `¬∇¬`.
    #[inline]
    pub fn delta_idx(&self, a: Index) -> Index {
        self.neg_idx(self.nabla_idx(self.neg_idx(a)))
    }

    /// Bit set of elements above `a`.
    pub fn up_set(&self, a: Index) -> u64 {
        self.leq[a as usize]
    }

    fn own(&self, v: &TruthValue) -> Result<Index, AlgebraError> {
        if v.algebra == self.id {
            Ok(v.index)
        } else {
            Err(AlgebraError::ForeignValue(v.name.to_string()))
        }
    }

    pub fn leq(&self, a: &TruthValue, b: &TruthValue) -> Result<bool, AlgebraError> {
        Ok(self.leq_idx(self.own(a)?, self.own(b)?))
    }

    pub fn meet(&self, a: &TruthValue, b: &TruthValue) -> Result<TruthValue, AlgebraError> {
        Ok(self.value(self.meet_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn join(&self, a: &TruthValue, b: &TruthValue) -> Result<TruthValue, AlgebraError> {
        Ok(self.value(self.join_idx(self.own(a)?, self.own(b)?)))
    }

    pub fn neg(&self, a: &TruthValue) -> Result<TruthValue, AlgebraError> {
        Ok(self.value(self.neg_idx(self.own(a)?)))
    }

    pub fn nabla(&self, a: &TruthValue) -> Result<TruthValue, AlgebraError> {
        Ok(self.value(self.nabla_idx(self.own(a)?)))
    }

    /// `Δx = ¬∇¬x`, computed from the stored tables.
    pub fn delta(&self, a: &TruthValue) -> Result<TruthValue, AlgebraError> {
        Ok(self.value(self.delta_idx(self.own(a)?)))
    }

    /// Elements complemented in the lattice whose complement is their
    /// De Morgan negation.
    pub fn k_elements(&self) -> Vec<TruthValue> {
        (0..self.size() as Index)
            .filter(|&a| {
                let n = self.neg_idx(a);
                self.join_idx(a, n) == self.top && self.meet_idx(a, n) == self.bottom
            })
            .map(|a| self.value(a))
            .collect()
    }

    /// Checks that `set` (a bit set over the carrier) is closed under all
    /// operations and contains both constants.
    pub fn is_subuniverse(&self, set: u64) -> bool {
        let has = |x: Index| set >> x & 1 == 1;
        if !has(self.bottom) || !has(self.top) {
            return false;
        }
        let members: Vec<Index> = (0..self.size() as Index).filter(|&x| has(x)).collect();
        members.iter().all(|&a| {
            has(self.neg_idx(a))
                && has(self.nabla_idx(a))
                && members
                    .iter()
                    .all(|&b| has(self.meet_idx(a, b)) && has(self.join_idx(a, b)))
        })
    }

    /// Checks that `map` (indexed by elements of `self`) preserves every
    /// operation and constant into `target`.
    pub fn is_homomorphism(&self, target: &FiniteAlgebra, map: &[Index]) -> bool {
        if map.len() != self.size() || map.iter().any(|&m| m as usize >= target.size()) {
            return false;
        }
        if map[self.bottom as usize] != target.bottom || map[self.top as usize] != target.top {
            return false;
        }
        let n = self.size() as Index;
        (0..n).all(|a| {
            let fa = map[a as usize];
            map[self.neg_idx(a) as usize] == target.neg_idx(fa)
                && map[self.nabla_idx(a) as usize] == target.nabla_idx(fa)
                && (0..n).all(|b| {
                    let fb = map[b as usize];
                    map[self.meet_idx(a, b) as usize] == target.meet_idx(fa, fb)
                        && map[self.join_idx(a, b) as usize] == target.join_idx(fa, fb)
                })
        })
    }

    /// Dumps the tables back into the raw representation.
    pub fn tables(&self) -> AlgebraTables {
        let n = self.size();
        let idx = 0..n as Index;
        AlgebraTables {
            name: self.name.clone(),
            carrier: self.names.iter().map(|s| s.to_string()).collect(),
            leq: idx
                .clone()
                .map(|a| (0..n as Index).map(|b| self.leq_idx(a, b)).collect())
                .collect(),
            meet: idx
                .clone()
                .map(|a| (0..n as Index).map(|b| self.meet_idx(a, b) as usize).collect())
                .collect(),
            join: idx
                .clone()
                .map(|a| (0..n as Index).map(|b| self.join_idx(a, b) as usize).collect())
                .collect(),
            neg: self.neg.iter().map(|&v| v as usize).collect(),
            nabla: self.nabla.iter().map(|&v| v as usize).collect(),
        }
    }

    fn validate_lattice(&mut self) -> Result<(), AlgebraError> {
        let n = self.size() as Index;
        let name = |i: Index| self.names[i as usize].to_string();
        for a in 0..n {
            if !self.leq_idx(a, a) {
                return Err(AlgebraError::NotPartialOrder(format!(
                    "{} is not below itself",
                    name(a)
                )));
            }
            for b in 0..n {
                if a != b && self.leq_idx(a, b) && self.leq_idx(b, a) {
                    return Err(AlgebraError::NotPartialOrder(format!(
                        "{} and {} are mutually below each other",
                        name(a),
                        name(b)
                    )));
                }
                for c in 0..n {
                    if self.leq_idx(a, b) && self.leq_idx(b, c) && !self.leq_idx(a, c) {
                        return Err(AlgebraError::NotPartialOrder(format!(
                            "transitivity fails at {}, {}, {}",
                            name(a),
                            name(b),
                            name(c)
                        )));
                    }
                }
            }
        }
        let bottom = (0..n).find(|&a| (0..n).all(|b| self.leq_idx(a, b)));
        let top = (0..n).find(|&a| (0..n).all(|b| self.leq_idx(b, a)));
        self.bottom = bottom.ok_or(AlgebraError::Unbounded("least"))?;
        self.top = top.ok_or(AlgebraError::Unbounded("greatest"))?;

        for a in 0..n {
            for b in 0..n {
                let m = self.meet_idx(a, b);
                let is_glb = self.leq_idx(m, a)
                    && self.leq_idx(m, b)
                    && (0..n).all(|c| !(self.leq_idx(c, a) && self.leq_idx(c, b)) || self.leq_idx(c, m));
                if !is_glb {
                    return Err(AlgebraError::NotLatticeBound {
                        op: "meet",
                        bound: "greatest lower bound",
                        a: name(a),
                        b: name(b),
                    });
                }
                let j = self.join_idx(a, b);
                let is_lub = self.leq_idx(a, j)
                    && self.leq_idx(b, j)
                    && (0..n).all(|c| !(self.leq_idx(a, c) && self.leq_idx(b, c)) || self.leq_idx(j, c));
                if !is_lub {
                    return Err(AlgebraError::NotLatticeBound {
                        op: "join",
                        bound: "least upper bound",
                        a: name(a),
                        b: name(b),
                    });
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet_idx(a, self.join_idx(b, c));
                    let rhs = self.join_idx(self.meet_idx(a, b), self.meet_idx(a, c));
                    if lhs != rhs {
                        return Err(AlgebraError::NotDistributive(name(a), name(b), name(c)));
                    }
                }
            }
        }
        Ok(())
    }

    fn validate_identities(&self, checking: Checking) -> Result<(), AlgebraError> {
        let report = audit_identities(self);
        let required: &[&str] = match checking {
            Checking::StoneAlgebra => &["DM1", "DM2", "IS1", "IS2", "IS3", "IS4"],
            Checking::DeMorganOnly => &["DM1", "DM2"],
        };
        for check in report.iter().filter(|c| required.contains(&c.name)) {
            if !check.holds {
                let witness = check
                    .witness
                    .as_ref()
                    .map(|w| {
                        w.iter()
                            .map(|v| v.name().to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    })
                    .unwrap_or_default();
                return Err(AlgebraError::IdentityFails {
                    law: check.name,
                    witness,
                });
            }
        }
        Ok(())
    }

    fn compute_ranks(&mut self) {
        let n = self.size() as Index;
        let mut order: Vec<Index> = (0..n).collect();
        order.sort_by_key(|&a| (0..n).filter(|&b| self.leq_idx(b, a)).count());
        let mut rank = vec![0u8; n as usize];
        for &a in &order {
            rank[a as usize] = (0..n)
                .filter(|&b| b != a && self.leq_idx(b, a))
                .map(|b| rank[b as usize] + 1)
                .max()
                .unwrap_or(0);
        }
        self.rank = rank;
    }
}

fn check_square<T>(table: &'static str, grid: &[Vec<T>], n: usize) -> Result<(), AlgebraError> {
    if grid.len() != n {
        return Err(AlgebraError::TableShape {
            table,
            expected: n,
            found: grid.len(),
        });
    }
    for row in grid {
        if row.len() != n {
            return Err(AlgebraError::TableShape {
                table,
                expected: n,
                found: row.len(),
            });
        }
    }
    Ok(())
}

/// Exchanges `N` and `B` in 𝕊₆ and fixes every other element.
pub fn swap_nb(x: &TruthValue) -> Result<TruthValue, AlgebraError> {
    let s6 = FiniteAlgebra::s6();
    let i = s6.own(x)?;
    Ok(s6.value(swap_nb_idx(i)))
}

/// Index form of [`swap_nb`] for 𝕊₆ (`N` = 2, `B` = 3).
#[inline]
pub fn swap_nb_idx(i: Index) -> Index {
    match i {
        2 => 3,
        3 => 2,
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s6() -> &'static FiniteAlgebra {
        FiniteAlgebra::s6()
    }

    fn v(name: &str) -> TruthValue {
        s6().element(name).unwrap()
    }

    #[test]
    fn s6_negation_and_lattice() {
        assert_eq!(s6().neg(&v("2/3")).unwrap(), v("1/3"));
        assert_eq!(s6().neg(&v("N")).unwrap(), v("N"));
        assert_eq!(s6().neg(&v("B")).unwrap(), v("B"));
        assert_eq!(s6().meet(&v("N"), &v("B")).unwrap(), v("1/3"));
        assert_eq!(s6().join(&v("N"), &v("B")).unwrap(), v("2/3"));
        assert_eq!(s6().nabla(&v("0")).unwrap(), v("0"));
        for x in ["1/3", "N", "B", "2/3", "1"] {
            assert_eq!(s6().nabla(&v(x)).unwrap(), v("1"));
        }
    }

    #[test]
    fn delta_values() {
        assert_eq!(s6().delta(&v("1")).unwrap(), v("1"));
        assert_eq!(s6().delta(&v("N")).unwrap(), v("0"));
        assert_eq!(s6().delta(&v("1/3")).unwrap(), v("0"));
    }

    #[test]
    fn k_elements_examples() {
        let names = |a: &FiniteAlgebra| -> Vec<String> {
            a.k_elements().iter().map(|v| v.name().to_string()).collect()
        };
        assert_eq!(names(s6()), ["0", "1"]);
        assert_eq!(names(&BuiltinAlgebra::L2.build()), ["0", "1"]);
        assert_eq!(names(&BuiltinAlgebra::B4DeMorgan.build()), ["0", "1"]);
    }

    #[test]
    fn swap_examples() {
        assert_eq!(swap_nb(&v("N")).unwrap(), v("B"));
        assert_eq!(swap_nb(&v("B")).unwrap(), v("N"));
        assert_eq!(swap_nb(&v("1/3")).unwrap(), v("1/3"));
        let l4 = BuiltinAlgebra::L4.build();
        assert!(matches!(
            swap_nb(&l4.element("1/3").unwrap()),
            Err(AlgebraError::ForeignValue(_))
        ));
    }

    #[test]
    fn cross_algebra_operations_are_rejected() {
        let l3 = BuiltinAlgebra::L3.build();
        let half = l3.element("1/2").unwrap();
        assert!(matches!(
            s6().meet(&v("N"), &half),
            Err(AlgebraError::ForeignValue(_))
        ));
        assert!(s6().neg(&half).is_err());
    }

    #[test]
    fn same_tables_give_same_identity() {
        assert_eq!(BuiltinAlgebra::S6.build().id(), s6().id());
        assert_ne!(BuiltinAlgebra::L4.build().id(), s6().id());
    }

    #[test]
    fn ranks_follow_hasse_diagram() {
        let r: Vec<u8> = (0..6).map(|i| s6().rank(i)).collect();
        assert_eq!(r, [0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn constructor_rejects_non_distributive_lattice() {
        // M3: the diamond with three atoms.
        let names = ["0", "a", "b", "c", "1"];
        let leq = |x: usize, y: usize| x == y || x == 0 || y == 4;
        let meet = |x: usize, y: usize| {
            if leq(x, y) {
                x
            } else if leq(y, x) {
                y
            } else {
                0
            }
        };
        let join = |x: usize, y: usize| {
            if leq(x, y) {
                y
            } else if leq(y, x) {
                x
            } else {
                4
            }
        };
        let tables = AlgebraTables {
            name: "M3".into(),
            carrier: names.iter().map(|s| s.to_string()).collect(),
            leq: (0..5).map(|x| (0..5).map(|y| leq(x, y)).collect()).collect(),
            meet: (0..5).map(|x| (0..5).map(|y| meet(x, y)).collect()).collect(),
            join: (0..5).map(|x| (0..5).map(|y| join(x, y)).collect()).collect(),
            neg: vec![4, 1, 2, 3, 0],
            nabla: vec![0, 4, 4, 4, 4],
        };
        assert!(matches!(
            FiniteAlgebra::new(tables, Checking::DeMorganOnly),
            Err(AlgebraError::NotDistributive(..))
        ));
    }

    #[test]
    fn constructor_rejects_bad_nabla_unless_flagged() {
        let mut tables = BuiltinAlgebra::B4DeMorgan.build().tables();
        assert!(matches!(
            FiniteAlgebra::new(tables.clone(), Checking::StoneAlgebra),
            Err(AlgebraError::IdentityFails { law: "IS4", .. })
        ));
        tables.name = "B4 copy".into();
        let b4 = FiniteAlgebra::new(tables, Checking::DeMorganOnly).unwrap();
        assert!(!b4.is_stone());
    }

    #[test]
    fn constructor_rejects_shape_errors() {
        let mut tables = s6().tables();
        tables.neg.pop();
        assert!(matches!(
            FiniteAlgebra::new(tables, Checking::StoneAlgebra),
            Err(AlgebraError::TableShape { table: "neg", .. })
        ));
    }
}
