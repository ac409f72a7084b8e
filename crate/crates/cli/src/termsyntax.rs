//! Prefix syntax for mixed identities.
//!
//! An identity is `(= LHS RHS)`. Terms are variables or applications:
//!
//! * variables: `x0 x1 ...` (acted), `a0 ...` (first actor), `c0 ...`
//!   (second actor);
//! * algebra operations, by sort prefix: `(x.add t u)`, `(x.neg t)`,
//!   `(x.op.NAME t u)`, likewise `a.` and `c.`;
//! * action applications: `(a.dot t u)` and `(c.dot t u)` take an actor
//!   term and an acted term; `(a.left.NAME actor acted)` is `b * x`,
//!   `(a.right.NAME acted actor)` is `x * b`, likewise `c.`.
//!
//! Example: `(= (c.right.mul (x.op.mul x0 x1) c0) (x.op.mul x0
//! (c.right.mul x1 c0)))`.

use anyhow::{anyhow, bail, Result};
use cospan_core::terms::{ActorSide, CrossIdentity, Term, TermSort};

#[derive(Debug, Clone, PartialEq)]
enum SExpr {
    Atom(String),
    List(Vec<SExpr>),
}

fn lex(text: &str) -> Vec<String> {
    text.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(String::from).collect()
}

fn parse_sexpr(tokens: &[String], pos: &mut usize) -> Result<SExpr> {
    match tokens.get(*pos) {
        None => bail!("unexpected end of identity"),
        Some(t) if t == "(" => {
            *pos += 1;
            let mut items = Vec::new();
            loop {
                match tokens.get(*pos) {
                    None => bail!("missing closing parenthesis"),
                    Some(t) if t == ")" => {
                        *pos += 1;
                        return Ok(SExpr::List(items));
                    }
                    _ => items.push(parse_sexpr(tokens, pos)?),
                }
            }
        }
        Some(t) if t == ")" => bail!("unexpected `)`"),
        Some(t) => {
            *pos += 1;
            Ok(SExpr::Atom(t.clone()))
        }
    }
}

fn sort_of_prefix(prefix: &str) -> Result<TermSort> {
    match prefix {
        "x" => Ok(TermSort::Acted),
        "a" => Ok(TermSort::ActorA),
        "c" => Ok(TermSort::ActorC),
        other => bail!("unknown sort prefix `{other}` (expected x, a or c)"),
    }
}

fn side_of_prefix(prefix: &str) -> Result<ActorSide> {
    match prefix {
        "a" => Ok(ActorSide::A),
        "c" => Ok(ActorSide::C),
        other => bail!("`{other}` is not an actor prefix (expected a or c)"),
    }
}

fn variable(atom: &str) -> Result<Term> {
    let (head, digits) = atom.split_at(1);
    let index: usize =
        digits.parse().map_err(|_| anyhow!("bad variable `{atom}` (expected x0, a1, ...)"))?;
    Ok(Term::var(sort_of_prefix(head)?, index))
}

fn term(expr: &SExpr) -> Result<Term> {
    match expr {
        SExpr::Atom(a) => variable(a),
        SExpr::List(items) => {
            let Some(SExpr::Atom(head)) = items.first() else {
                bail!("application must start with an operation symbol");
            };
            let args: Vec<Term> = items[1..].iter().map(term).collect::<Result<_>>()?;
            let parts: Vec<&str> = head.split('.').collect();
            let need = |n: usize| -> Result<()> {
                if args.len() != n {
                    bail!("`{head}` takes {n} arguments, got {}", args.len());
                }
                Ok(())
            };
            match parts.as_slice() {
                [sort, "add"] => {
                    need(2)?;
                    Ok(Term::Add {
                        sort: sort_of_prefix(sort)?,
                        lhs: Box::new(args[0].clone()),
                        rhs: Box::new(args[1].clone()),
                    })
                }
                [sort, "neg"] => {
                    need(1)?;
                    Ok(Term::Neg { sort: sort_of_prefix(sort)?, arg: Box::new(args[0].clone()) })
                }
                [sort, "op", name] => {
                    need(2)?;
                    Ok(Term::Op {
                        sort: sort_of_prefix(sort)?,
                        name: name.to_string(),
                        lhs: Box::new(args[0].clone()),
                        rhs: Box::new(args[1].clone()),
                    })
                }
                [side, "dot"] => {
                    need(2)?;
                    Ok(Term::Dot {
                        side: side_of_prefix(side)?,
                        actor: Box::new(args[0].clone()),
                        acted: Box::new(args[1].clone()),
                    })
                }
                [side, "left", name] => {
                    need(2)?;
                    Ok(Term::StarLeft {
                        side: side_of_prefix(side)?,
                        name: name.to_string(),
                        actor: Box::new(args[0].clone()),
                        acted: Box::new(args[1].clone()),
                    })
                }
                [side, "right", name] => {
                    need(2)?;
                    Ok(Term::StarRight {
                        side: side_of_prefix(side)?,
                        name: name.to_string(),
                        acted: Box::new(args[0].clone()),
                        actor: Box::new(args[1].clone()),
                    })
                }
                _ => bail!("unknown operation symbol `{head}`"),
            }
        }
    }
}

pub fn parse_identity(text: &str) -> Result<CrossIdentity> {
    let tokens = lex(text);
    let mut pos = 0;
    let expr = parse_sexpr(&tokens, &mut pos)?;
    if pos != tokens.len() {
        bail!("trailing input after the identity");
    }
    let SExpr::List(items) = expr else {
        bail!("an identity is `(= LHS RHS)`");
    };
    match items.as_slice() {
        [SExpr::Atom(eq), lhs, rhs] if eq == "=" => {
            Ok(CrossIdentity::new(text.trim(), term(lhs)?, term(rhs)?))
        }
        _ => bail!("an identity is `(= LHS RHS)`"),
    }
}
