use std::fmt;
use std::str::FromStr;

use super::{AlgebraError, AlgebraTables, Checking, FiniteAlgebra, Index};

/// The algebras shipped with the library.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinAlgebra {
    S6,
    L2,
    L3,
    L4,
    L5,
    /// Belnap's four-element De Morgan algebra with `∇` set to the identity.
    /// Not an S-algebra; kept for negative tests.
    B4DeMorgan,
}

impl BuiltinAlgebra {
    pub const ALL: [BuiltinAlgebra; 6] = [
        BuiltinAlgebra::S6,
        BuiltinAlgebra::L2,
        BuiltinAlgebra::L3,
        BuiltinAlgebra::L4,
        BuiltinAlgebra::L5,
        BuiltinAlgebra::B4DeMorgan,
    ];

    pub fn build(self) -> FiniteAlgebra {
        let tables = match self {
            BuiltinAlgebra::S6 => six(),
            BuiltinAlgebra::L2 => chain(2),
            BuiltinAlgebra::L3 => chain(3),
            BuiltinAlgebra::L4 => chain(4),
            BuiltinAlgebra::L5 => chain(5),
            BuiltinAlgebra::B4DeMorgan => belnap(),
        };
        let checking = match self {
            BuiltinAlgebra::B4DeMorgan => Checking::DeMorganOnly,
            _ => Checking::StoneAlgebra,
        };
        FiniteAlgebra::new(tables, checking).expect("builtin tables are well formed")
    }
}

impl fmt::Display for BuiltinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BuiltinAlgebra::S6 => "S6",
            BuiltinAlgebra::L2 => "L2",
            BuiltinAlgebra::L3 => "L3",
            BuiltinAlgebra::L4 => "L4",
            BuiltinAlgebra::L5 => "L5",
            BuiltinAlgebra::B4DeMorgan => "B4",
        })
    }
}

impl FromStr for BuiltinAlgebra {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "S6" => Ok(BuiltinAlgebra::S6),
            "L2" => Ok(BuiltinAlgebra::L2),
            "L3" => Ok(BuiltinAlgebra::L3),
            "L4" => Ok(BuiltinAlgebra::L4),
            "L5" => Ok(BuiltinAlgebra::L5),
            "B4" | "B4_DEMORGAN" | "B4DEMORGAN" => Ok(BuiltinAlgebra::B4DeMorgan),
            _ => Err(AlgebraError::UnknownAlgebra(s.to_string())),
        }
    }
}

/// Image of the n-element chain inside 𝕊₆ as a list of 𝕊₆ indices, for
/// `2 <= n <= 5`. The middle element of odd chains goes to `N`.
pub fn lukasiewicz_embedding(n: usize) -> Option<Vec<Index>> {
    match n {
        2 => Some(vec![0, 5]),
        3 => Some(vec![0, 2, 5]),
        4 => Some(vec![0, 1, 4, 5]),
        5 => Some(vec![0, 1, 2, 4, 5]),
        _ => None,
    }
}

fn from_order(
    name: &str,
    carrier: &[&str],
    leq: impl Fn(usize, usize) -> bool,
    neg: Vec<usize>,
    nabla: Vec<usize>,
) -> AlgebraTables {
    let n = carrier.len();
    let glb = |a: usize, b: usize| {
        (0..n)
            .filter(|&c| leq(c, a) && leq(c, b))
            .find(|&c| (0..n).all(|d| !(leq(d, a) && leq(d, b)) || leq(d, c)))
            .expect("order is a lattice")
    };
    let lub = |a: usize, b: usize| {
        (0..n)
            .filter(|&c| leq(a, c) && leq(b, c))
            .find(|&c| (0..n).all(|d| !(leq(a, d) && leq(b, d)) || leq(c, d)))
            .expect("order is a lattice")
    };
    AlgebraTables {
        name: name.to_string(),
        carrier: carrier.iter().map(|s| s.to_string()).collect(),
        leq: (0..n).map(|a| (0..n).map(|b| leq(a, b)).collect()).collect(),
        meet: (0..n).map(|a| (0..n).map(|b| glb(a, b)).collect()).collect(),
        join: (0..n).map(|a| (0..n).map(|b| lub(a, b)).collect()).collect(),
        neg,
        nabla,
    }
}

fn six() -> AlgebraTables {
    // 0 < 1/3 < {N, B} < 2/3 < 1, with N and B incomparable.
    let level = [0, 1, 2, 2, 3, 4];
    let leq = |a: usize, b: usize| a == b || level[a] < level[b];
    from_order(
        "S6",
        &["0", "1/3", "N", "B", "2/3", "1"],
        leq,
        vec![5, 4, 2, 3, 1, 0],
        vec![0, 5, 5, 5, 5, 5],
    )
}

fn chain(n: usize) -> AlgebraTables {
    let names: Vec<String> = (0..n)
        .map(|i| match (i, n - 1) {
            (0, _) => "0".to_string(),
            (i, d) if i == d => "1".to_string(),
            (i, d) => {
                let g = gcd(i, d);
                format!("{}/{}", i / g, d / g)
            }
        })
        .collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    from_order(
        &format!("L{n}"),
        &refs,
        |a, b| a <= b,
        (0..n).map(|i| n - 1 - i).collect(),
        (0..n).map(|i| if i == 0 { 0 } else { n - 1 }).collect(),
    )
}

fn belnap() -> AlgebraTables {
    let leq = |a: usize, b: usize| a == b || a == 0 || b == 3;
    from_order(
        "B4",
        &["0", "N", "B", "1"],
        leq,
        vec![3, 1, 2, 0],
        vec![0, 1, 2, 3],
    )
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
