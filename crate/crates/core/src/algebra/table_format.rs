//! Plain-text table format for custom algebras.
//!
//! ```text
//! # comments run to end of line
//! name: B4
//! kind: de-morgan          # or `s-algebra` (the default)
//! carrier: 0 N B 1
//! leq:                     # row x, column y: 1 iff x <= y
//! 1 1 1 1
//! 0 1 0 1
//! 0 0 1 1
//! 0 0 0 1
//! meet:                    # row x, column y: name of x ∧ y
//! 0 0 0 0
//! 0 N 0 N
//! 0 0 B B
//! 0 N B 1
//! join:
//! 0 N B 1
//! N N 1 1
//! B 1 B 1
//! 1 1 1 1
//! neg: 1 N B 0             # entry x: name of ¬x
//! nabla: 0 N B 1
//! ```
//!
//! Rows are whitespace separated and listed in carrier order. Unary tables may
//! also be given on the line after their header.

use std::fmt::Write as _;

use super::{AlgebraError, AlgebraTables, Checking, FiniteAlgebra, Index};

impl FiniteAlgebra {
    pub fn from_table_text(text: &str) -> Result<Self, AlgebraError> {
        let (tables, checking) = parse_tables(text)?;
        FiniteAlgebra::new(tables, checking)
    }

    pub fn to_table_text(&self) -> String {
        let n = self.size() as Index;
        let mut out = String::new();
        let _ = writeln!(out, "name: {}", self.name());
        let _ = writeln!(
            out,
            "kind: {}",
            if self.is_stone() { "s-algebra" } else { "de-morgan" }
        );
        let names: Vec<&str> = (0..n).map(|i| self.element_name(i)).collect();
        let _ = writeln!(out, "carrier: {}", names.join(" "));
        out.push_str("leq:\n");
        for a in 0..n {
            let row: Vec<&str> = (0..n)
                .map(|b| if self.leq_idx(a, b) { "1" } else { "0" })
                .collect();
            let _ = writeln!(out, "{}", row.join(" "));
        }
        for (label, op) in [
            ("meet", FiniteAlgebra::meet_idx as fn(&FiniteAlgebra, Index, Index) -> Index),
            ("join", FiniteAlgebra::join_idx),
        ] {
            let _ = writeln!(out, "{label}:");
            for a in 0..n {
                let row: Vec<&str> = (0..n).map(|b| names[op(self, a, b) as usize]).collect();
                let _ = writeln!(out, "{}", row.join(" "));
            }
        }
        let neg: Vec<&str> = (0..n).map(|a| names[self.neg_idx(a) as usize]).collect();
        let nabla: Vec<&str> = (0..n).map(|a| names[self.nabla_idx(a) as usize]).collect();
        let _ = writeln!(out, "neg: {}", neg.join(" "));
        let _ = writeln!(out, "nabla: {}", nabla.join(" "));
        out
    }
}

fn parse_tables(text: &str) -> Result<(AlgebraTables, Checking), AlgebraError> {
    let lines: Vec<(usize, Vec<&str>)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("")))
        .map(|(i, l)| (i, l.split_whitespace().collect::<Vec<_>>()))
        .filter(|(_, toks)| !toks.is_empty())
        .collect();

    let err = |line: usize, message: String| AlgebraError::Parse { line, message };

    let mut name = String::from("custom");
    let mut checking = Checking::StoneAlgebra;
    let mut carrier: Option<Vec<String>> = None;
    let mut leq = None;
    let mut meet = None;
    let mut join = None;
    let mut neg = None;
    let mut nabla = None;

    let mut i = 0;
    while i < lines.len() {
        let (line, toks) = &lines[i];
        let (key, first_rest) = match toks[0].split_once(':') {
            Some((k, rest)) => (k, rest),
            None => return Err(err(*line, format!("expected `key:`, found `{}`", toks[0]))),
        };
        let mut rest: Vec<&str> = Vec::new();
        if !first_rest.is_empty() {
            rest.push(first_rest);
        }
        rest.extend(&toks[1..]);
        i += 1;

        let index_of = |carrier: &[String], tok: &str, line: usize| -> Result<usize, AlgebraError> {
            carrier
                .iter()
                .position(|c| c == tok)
                .ok_or_else(|| err(line, format!("unknown element `{tok}`")))
        };

        match key {
            "name" => name = rest.join(" "),
            "kind" => {
                checking = match rest.first().copied() {
                    Some("s-algebra") => Checking::StoneAlgebra,
                    Some("de-morgan") => Checking::DeMorganOnly,
                    other => {
                        return Err(err(
                            *line,
                            format!("kind must be `s-algebra` or `de-morgan`, got {other:?}"),
                        ))
                    }
                }
            }
            "carrier" => {
                if rest.is_empty() {
                    return Err(err(*line, "empty carrier".into()));
                }
                carrier = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "neg" | "nabla" => {
                let c = carrier
                    .as_ref()
                    .ok_or_else(|| err(*line, "carrier must come first".into()))?;
                let (row_line, row) = if rest.is_empty() {
                    let (l, r) = lines
                        .get(i)
                        .ok_or_else(|| err(*line, format!("missing `{key}` row")))?;
                    i += 1;
                    (*l, r.clone())
                } else {
                    (*line, rest)
                };
                if row.len() != c.len() {
                    return Err(err(
                        row_line,
                        format!("`{key}` needs {} entries, found {}", c.len(), row.len()),
                    ));
                }
                let parsed = row
                    .iter()
                    .map(|t| index_of(c, t, row_line))
                    .collect::<Result<Vec<_>, _>>()?;
                if key == "neg" {
                    neg = Some(parsed);
                } else {
                    nabla = Some(parsed);
                }
            }
            "leq" | "meet" | "join" => {
                let c = carrier
                    .as_ref()
                    .ok_or_else(|| err(*line, "carrier must come first".into()))?;
                if !rest.is_empty() {
                    return Err(err(*line, format!("`{key}:` rows start on the next line")));
                }
                let n = c.len();
                if i + n > lines.len() {
                    return Err(err(*line, format!("`{key}` needs {n} rows")));
                }
                let rows = &lines[i..i + n];
                i += n;
                for (l, r) in rows {
                    if r.len() != n {
                        return Err(err(*l, format!("row needs {n} entries, found {}", r.len())));
                    }
                }
                if key == "leq" {
                    let grid = rows
                        .iter()
                        .map(|(l, r)| {
                            r.iter()
                                .map(|t| match *t {
                                    "1" => Ok(true),
                                    "0" => Ok(false),
                                    other => Err(err(*l, format!("expected 0 or 1, got `{other}`"))),
                                })
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    leq = Some(grid);
                } else {
                    let grid = rows
                        .iter()
                        .map(|(l, r)| {
                            r.iter()
                                .map(|t| index_of(c, t, *l))
                                .collect::<Result<Vec<_>, _>>()
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    if key == "meet" {
                        meet = Some(grid);
                    } else {
                        join = Some(grid);
                    }
                }
            }
            other => return Err(err(*line, format!("unknown section `{other}`"))),
        }
    }

    let missing = |what: &str| AlgebraError::Parse {
        line: lines.last().map(|l| l.0).unwrap_or(0),
        message: format!("missing `{what}` section"),
    };
    let tables = AlgebraTables {
        name,
        carrier: carrier.ok_or_else(|| missing("carrier"))?,
        leq: leq.ok_or_else(|| missing("leq"))?,
        meet: meet.ok_or_else(|| missing("meet"))?,
        join: join.ok_or_else(|| missing("join"))?,
        neg: neg.ok_or_else(|| missing("neg"))?,
        nabla: nabla.ok_or_else(|| missing("nabla"))?,
    };
    Ok((tables, checking))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::BuiltinAlgebra;

    #[test]
    fn builtins_round_trip_through_text() {
        for b in BuiltinAlgebra::ALL {
            let a = b.build();
            let back = FiniteAlgebra::from_table_text(&a.to_table_text()).unwrap();
            assert_eq!(back.id(), a.id(), "{b}");
            assert_eq!(back.is_stone(), a.is_stone());
        }
    }

    #[test]
    fn documented_example_parses() {
        let text = "\
# Belnap lattice
name: B4
kind: de-morgan
carrier: 0 N B 1
leq:
1 1 1 1
0 1 0 1
0 0 1 1
0 0 0 1
meet:
0 0 0 0
0 N 0 N
0 0 B B
0 N B 1
join:
0 N B 1
N N 1 1
B 1 B 1
1 1 1 1
neg: 1 N B 0
nabla:
0 N B 1
";
        let a = FiniteAlgebra::from_table_text(text).unwrap();
        assert_eq!(a.id(), BuiltinAlgebra::B4DeMorgan.build().id());
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "carrier: 0 1\nleq:\n1 1\n0 2\n";
        match FiniteAlgebra::from_table_text(text) {
            Err(AlgebraError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            FiniteAlgebra::from_table_text("carrier: 0 1\n"),
            Err(AlgebraError::Parse { .. })
        ));
    }

    #[test]
    fn s_algebra_kind_is_checked() {
        let text = BuiltinAlgebra::B4DeMorgan
            .build()
            .to_table_text()
            .replace("kind: de-morgan", "kind: s-algebra");
        assert!(matches!(
            FiniteAlgebra::from_table_text(&text),
            Err(AlgebraError::IdentityFails { law: "IS4", .. })
        ));
    }
}
