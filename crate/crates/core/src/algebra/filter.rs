use std::fmt;

use super::{AlgebraError, AlgebraId, FiniteAlgebra, Index, TruthValue};

/// A lattice filter, stored as a bit set over the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Filter {
    algebra: AlgebraId,
    members: u64,
}

impl Filter {
    /// The principal filter `[a)`.
    pub fn principal(algebra: &FiniteAlgebra, a: &TruthValue) -> Result<Self, AlgebraError> {
        let i = algebra.own(a)?;
        Ok(Self::principal_idx(algebra, i))
    }

    pub fn principal_idx(algebra: &FiniteAlgebra, a: Index) -> Self {
        Filter {
            algebra: algebra.id(),
            members: algebra.up_set(a),
        }
    }

    /// Smallest filter containing `gens`. In a finite lattice this is the
    /// up-set of the meet of the generators; no generators gives `{top}`.
    pub fn generated(algebra: &FiniteAlgebra, gens: &[TruthValue]) -> Result<Self, AlgebraError> {
        let mut m = algebra.top_idx();
        for g in gens {
            m = algebra.meet_idx(m, algebra.own(g)?);
        }
        Ok(Self::principal_idx(algebra, m))
    }

    /// Builds a filter from an explicit member set, checking the filter
    /// conditions.
    pub fn from_members(
        algebra: &FiniteAlgebra,
        members: &[TruthValue],
    ) -> Result<Option<Self>, AlgebraError> {
        let mut bits = 0u64;
        for m in members {
            bits |= 1 << algebra.own(m)?;
        }
        let f = Filter {
            algebra: algebra.id(),
            members: bits,
        };
        Ok(f.is_filter_of(algebra).then_some(f))
    }

    /// Contains top, is upward closed and closed under meets.
    pub fn is_filter_of(&self, algebra: &FiniteAlgebra) -> bool {
        if self.algebra != algebra.id() || !self.contains_idx(algebra.top_idx()) {
            return false;
        }
        let n = algebra.size() as Index;
        (0..n).filter(|&x| self.contains_idx(x)).all(|x| {
            (0..n).all(|y| {
                (!algebra.leq_idx(x, y) || self.contains_idx(y))
                    && (!self.contains_idx(y) || self.contains_idx(algebra.meet_idx(x, y)))
            })
        })
    }

    pub fn algebra(&self) -> AlgebraId {
        self.algebra
    }

    pub fn bits(&self) -> u64 {
        self.members
    }

    #[inline]
    pub fn contains_idx(&self, x: Index) -> bool {
        self.members >> x & 1 == 1
    }

    pub fn contains(&self, x: &TruthValue) -> bool {
        x.algebra() == self.algebra && self.contains_idx(x.index())
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn is_subset(&self, other: &Filter) -> bool {
        self.algebra == other.algebra && self.members & !other.members == 0
    }

    /// Members in carrier order.
    pub fn members(&self, algebra: &FiniteAlgebra) -> Vec<TruthValue> {
        (0..algebra.size() as Index)
            .filter(|&x| self.contains_idx(x))
            .map(|x| algebra.value(x))
            .collect()
    }

    /// The least member; every filter of a finite lattice is principal.
    pub fn generator(&self, algebra: &FiniteAlgebra) -> TruthValue {
        let n = algebra.size() as Index;
        let least = (0..n)
            .filter(|&x| self.contains_idx(x))
            .find(|&x| (0..n).filter(|&y| self.contains_idx(y)).all(|y| algebra.leq_idx(x, y)))
            .expect("finite filters are principal");
        algebra.value(least)
    }

    pub fn display<'a>(&'a self, algebra: &'a FiniteAlgebra) -> impl fmt::Display + 'a {
        FilterDisplay {
            filter: self,
            algebra,
        }
    }
}

struct FilterDisplay<'a> {
    filter: &'a Filter,
    algebra: &'a FiniteAlgebra,
}

impl fmt::Display for FilterDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{})", self.filter.generator(self.algebra))
    }
}

impl FiniteAlgebra {
    /// Every lattice filter, one per generator, in carrier order of the
    /// generators.
    pub fn lattice_filters(&self) -> Vec<Filter> {
        let mut out: Vec<Filter> = Vec::new();
        for a in 0..self.size() as Index {
            let f = Filter::principal_idx(self, a);
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    pub fn generated_filter(&self, gens: &[TruthValue]) -> Result<Filter, AlgebraError> {
        Filter::generated(self, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinAlgebra;

    fn names(f: &Filter, a: &FiniteAlgebra) -> Vec<String> {
        f.members(a).iter().map(|v| v.name().to_string()).collect()
    }

    #[test]
    fn generated_filters_in_s6() {
        let s6 = FiniteAlgebra::s6();
        let e = |n| s6.element(n).unwrap();
        assert_eq!(names(&s6.generated_filter(&[e("N")]).unwrap(), s6), ["N", "2/3", "1"]);
        assert_eq!(names(&s6.generated_filter(&[]).unwrap(), s6), ["1"]);
        assert_eq!(
            names(&s6.generated_filter(&[e("N"), e("B")]).unwrap(), s6),
            ["1/3", "N", "B", "2/3", "1"]
        );
    }

    #[test]
    fn filter_enumeration() {
        let s6 = FiniteAlgebra::s6();
        let fs = s6.lattice_filters();
        assert_eq!(fs.len(), 6);
        let gens: Vec<String> = fs.iter().map(|f| f.display(s6).to_string()).collect();
        assert_eq!(gens, ["[0)", "[1/3)", "[N)", "[B)", "[2/3)", "[1)"]);
        for f in &fs {
            assert!(f.is_filter_of(s6));
        }
        let l2 = BuiltinAlgebra::L2.build();
        let fs: Vec<Vec<String>> = l2.lattice_filters().iter().map(|f| names(f, &l2)).collect();
        assert_eq!(fs, vec![vec!["0", "1"], vec!["1"]]);
        assert_eq!(BuiltinAlgebra::L4.build().lattice_filters().len(), 4);
    }

    #[test]
    fn filters_match_brute_force_subsets() {
        // Every subset satisfying the filter conditions is one of the
        // principal filters.
        let s6 = FiniteAlgebra::s6();
        let principal = s6.lattice_filters();
        let mut count = 0;
        for bits in 0u64..64 {
            let members: Vec<TruthValue> =
                (0..6).filter(|i| bits >> i & 1 == 1).map(|i| s6.value(i)).collect();
            if let Some(f) = Filter::from_members(s6, &members).unwrap() {
                count += 1;
                assert!(principal.contains(&f));
            }
        }
        assert_eq!(count, 6);
    }
}
