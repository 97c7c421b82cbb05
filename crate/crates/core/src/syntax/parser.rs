//! Recursive-descent parser for formulas, sequents and entailment queries.
//!
//! ```text
//! formula := conj ('|' conj)*
//! conj    := unary ('&' unary)*
//! unary   := ('~' | '#' | 'D' | 'o' | '*') unary | atom
//! atom    := var | 'bot' | 'top' | '(' formula ')'
//! list    := ε | formula (',' formula)*
//! sequent := list '=>' list
//! query   := list '|=' formula
//! ```

use thiserror::Error;

use super::Formula;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at column {column}: {message}")]
pub struct ParseError {
    /// 1-based character column.
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Bot,
    Top,
    Not,
    Nabla,
    Delta,
    Circ,
    Bullet,
    And,
    Or,
    LParen,
    RParen,
    Comma,
    Arrow,
    Turnstile,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Bot => "`bot`".into(),
            Tok::Top => "`top`".into(),
            Tok::Not => "`~`".into(),
            Tok::Nabla => "`#`".into(),
            Tok::Delta => "`D`".into(),
            Tok::Circ => "`o`".into(),
            Tok::Bullet => "`*`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Arrow => "`=>`".into(),
            Tok::Turnstile => "`|=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const RESERVED: [&str; 3] = ["bot", "top", "o"];

/// Variables are `[a-z][a-zA-Z0-9_]*` minus the reserved words.
pub fn is_valid_variable(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !RESERVED.contains(&name)
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        let next = chars.get(i + 1).copied();
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '~' => Tok::Not,
            '#' => Tok::Nabla,
            'D' => Tok::Delta,
            '*' => Tok::Bullet,
            '&' => Tok::And,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '|' if next == Some('=') => {
                i += 1;
                Tok::Turnstile
            }
            '|' => Tok::Or,
            '=' if next == Some('>') => {
                i += 1;
                Tok::Arrow
            }
            c if c.is_ascii_lowercase() => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_alphanumeric() || chars[i + 1] == '_') {
                    i += 1;
                }
                let word: String = chars[start..=i].iter().collect();
                match word.as_str() {
                    "bot" => Tok::Bot,
                    "top" => Tok::Top,
                    "o" => Tok::Circ,
                    _ => Tok::Ident(word),
                }
            }
            other => {
                return Err(ParseError {
                    column: col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((col, tok));
        i += 1;
    }
    out.push((chars.len() + 1, Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn column(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        ParseError {
            column: self.column(),
            message: format!("expected {expected}, found {}", self.peek().describe()),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conj()?;
        while *self.peek() == Tok::Or {
            self.bump();
            lhs = Formula::or(lhs, self.conj()?);
        }
        Ok(lhs)
    }

    fn conj(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let op = match self.peek() {
            Tok::Not => Formula::neg,
            Tok::Nabla => Formula::nabla,
            Tok::Delta => Formula::delta,
            Tok::Circ => Formula::circ,
            Tok::Bullet => Formula::bullet,
            _ => return self.atom(),
        };
        self.bump();
        Ok(op(self.unary()?))
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::var(&name))
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.error("a formula")),
        }
    }

    /// Comma separated, possibly empty, list ending before `stop`.
    fn list(&mut self, stop: &Tok) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == stop {
            return Ok(out);
        }
        loop {
            out.push(self.formula()?);
            if *self.peek() == Tok::Comma {
                self.bump();
            } else {
                return Ok(out);
            }
        }
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        if *self.peek() == Tok::End {
            Ok(())
        } else {
            Err(self.error("end of input"))
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let f = p.formula()?;
    p.finish()?;
    Ok(f)
}

/// Parses `G1, G2 => S1, S2`; either side may be empty.
pub fn parse_sequent_sides(text: &str) -> Result<(Vec<Formula>, Vec<Formula>), ParseError> {
    let mut p = Parser::new(text)?;
    let left = p.list(&Tok::Arrow)?;
    p.expect(Tok::Arrow, "`=>`")?;
    let right = p.list(&Tok::End)?;
    p.finish()?;
    Ok((left, right))
}

/// Parses `G1, G2 |= a`; the premise list may be empty.
pub fn parse_entailment(text: &str) -> Result<(Vec<Formula>, Formula), ParseError> {
    let mut p = Parser::new(text)?;
    let premises = p.list(&Tok::Turnstile)?;
    p.expect(Tok::Turnstile, "`|=`")?;
    let goal = p.formula()?;
    p.finish()?;
    Ok((premises, goal))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    #[test]
    fn precedence_and_unary_binding() {
        assert_eq!(
            parse_formula("~#p & q").unwrap(),
            Formula::and(Formula::neg(Formula::nabla(v("p"))), v("q"))
        );
        assert_eq!(
            parse_formula("p | q & r").unwrap(),
            Formula::or(v("p"), Formula::and(v("q"), v("r")))
        );
        assert_eq!(
            parse_formula("p & q & r").unwrap(),
            Formula::and(Formula::and(v("p"), v("q")), v("r"))
        );
    }

    #[test]
    fn derived_connectives_expand() {
        let p = v("p");
        let delta = |a: Formula| Formula::neg(Formula::nabla(Formula::neg(a)));
        assert_eq!(
            parse_formula("o p").unwrap(),
            Formula::or(delta(p.clone()), delta(Formula::neg(p.clone())))
        );
        assert_eq!(parse_formula("Dp").unwrap(), delta(p.clone()));
        assert_eq!(
            parse_formula("*p").unwrap(),
            Formula::neg(parse_formula("o p").unwrap())
        );
        assert_eq!(parse_formula("o(p)").unwrap(), parse_formula("o p").unwrap());
        assert_eq!(parse_formula("op").unwrap(), v("op"));
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = parse_formula("p |").unwrap_err();
        assert_eq!(err.column, 4);
        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("(p").is_err());
        assert!(parse_formula("P").is_err());
        assert!(parse_formula("").is_err());
        assert!(parse_formula("p $ q").unwrap_err().message.contains('$'));
    }

    #[test]
    fn sequents_and_queries() {
        let (l, r) = parse_sequent_sides("p, ~p => q").unwrap();
        assert_eq!(l, vec![v("p"), Formula::neg(v("p"))]);
        assert_eq!(r, vec![v("q")]);
        let (l, r) = parse_sequent_sides("=> #p | ~#p").unwrap();
        assert!(l.is_empty());
        assert_eq!(r.len(), 1);
        let (l, r) = parse_sequent_sides("bot =>").unwrap();
        assert_eq!((l.len(), r.len()), (1, 0));
        let (prem, goal) = parse_entailment("|= q | ~q").unwrap();
        assert!(prem.is_empty());
        assert_eq!(goal, Formula::or(v("q"), Formula::neg(v("q"))));
        assert!(parse_entailment("p, q").is_err());
        assert!(parse_sequent_sides("p => q => r").is_err());
    }

    #[test]
    fn variable_names() {
        assert!(is_valid_variable("p1"));
        assert!(is_valid_variable("x_Y2"));
        assert!(!is_valid_variable("o"));
        assert!(!is_valid_variable("top"));
        assert!(!is_valid_variable("1p"));
        assert!(!is_valid_variable("Dp"));
    }
}
