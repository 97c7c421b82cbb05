use std::fmt;

use super::Formula;

const OR: u8 = 1;
const AND: u8 = 2;
const UNARY: u8 = 3;

fn write_prec(f: &Formula, ctx: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    match f {
        Formula::Var(v) => out.write_str(v),
        Formula::Bottom => out.write_str("bot"),
        Formula::Top => out.write_str("top"),
        Formula::Neg(a) => {
            out.write_str("~")?;
            write_prec(a, UNARY, out)
        }
        Formula::Nabla(a) => {
            out.write_str("#")?;
            write_prec(a, UNARY, out)
        }
        Formula::And(a, b) => binary(a, " & ", b, AND, ctx, out),
        Formula::Or(a, b) => binary(a, " | ", b, OR, ctx, out),
    }
}

// Both operators associate to the left, so a right operand at the same level
// needs parentheses.
fn binary(
    a: &Formula,
    op: &str,
    b: &Formula,
    prec: u8,
    ctx: u8,
    out: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    let paren = ctx > prec;
    if paren {
        out.write_str("(")?;
    }
    write_prec(a, prec, out)?;
    out.write_str(op)?;
    write_prec(b, prec + 1, out)?;
    if paren {
        out.write_str(")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prec(self, 0, f)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Formula {
        Formula::var(n)
    }

    #[test]
    fn minimal_parentheses() {
        assert_eq!(
            Formula::and(v("p"), Formula::or(v("q"), v("r"))).to_string(),
            "p & (q | r)"
        );
        assert_eq!(Formula::neg(Formula::neg(v("p"))).to_string(), "~~p");
        assert_eq!(Formula::nabla(Formula::Bottom).to_string(), "#bot");
        assert_eq!(
            Formula::or(Formula::and(v("p"), v("q")), v("r")).to_string(),
            "p & q | r"
        );
        assert_eq!(
            Formula::and(v("p"), Formula::and(v("q"), v("r"))).to_string(),
            "p & (q & r)"
        );
        assert_eq!(
            Formula::neg(Formula::and(v("p"), v("q"))).to_string(),
            "~(p & q)"
        );
    }
}
