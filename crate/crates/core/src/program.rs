//! Program expressions: parsing, printing and elaboration into local functions.
//!
//! ```text
//! prog ::= skip | prim | seq(prog,prog) | choice(prog,prog) | star(prog)
//! prim ::= new(x) | dispose(x) | dispose_loc(l) | mutate(x,v) | lookup(x,y)
//!        | adder(c) | multiplier(c)
//! ```

use std::fmt;

use thiserror::Error;

use crate::local::{choice_action, kstar_action, seq_action, skip_action, LocalFunction, LocalityCheck, Outcome};
use crate::models::{Command, Model, ModelError};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Program {
    Skip,
    Prim(Command),
    Seq(Box<Program>, Box<Program>),
    Choice(Box<Program>, Box<Program>),
    Star(Box<Program>),
}

impl Program {
    pub fn seq(a: Program, b: Program) -> Self {
        Program::Seq(Box::new(a), Box::new(b))
    }

    pub fn choice(a: Program, b: Program) -> Self {
        Program::Choice(Box::new(a), Box::new(b))
    }

    pub fn star(a: Program) -> Self {
        Program::Star(Box::new(a))
    }

    pub fn depth(&self) -> usize {
        match self {
            Program::Skip | Program::Prim(_) => 1,
            Program::Seq(a, b) | Program::Choice(a, b) => 1 + a.depth().max(b.depth()),
            Program::Star(a) => 1 + a.depth(),
        }
    }

    /// Builds the sealed function. Primitives are always locality-checked;
    /// combinator results are re-checked according to `mode`.
    pub fn elaborate(&self, model: &Model, mode: LocalityCheck) -> Result<LocalFunction, ModelError> {
        let alg = model.algebra();
        Ok(match self {
            Program::Skip => LocalFunction::skip(alg),
            Program::Prim(cmd) => model.primitive(cmd)?,
            Program::Seq(a, b) => {
                let (f, g) = (a.elaborate(model, mode)?, b.elaborate(model, mode)?);
                LocalFunction::derived(alg.clone(), seq_action(f.action(), g.action()), self.to_string(), mode)?
            }
            Program::Choice(a, b) => {
                let (f, g) = (a.elaborate(model, mode)?, b.elaborate(model, mode)?);
                LocalFunction::derived(alg.clone(), choice_action(f.action(), g.action()), self.to_string(), mode)?
            }
            Program::Star(a) => {
                let f = a.elaborate(model, mode)?;
                LocalFunction::derived(alg.clone(), kstar_action(alg, f.action()), self.to_string(), mode)?
            }
        })
    }

    /// Denotation without any locality check, for diagnosing non-local programs.
    pub fn evaluate_raw(&self, model: &Model) -> Result<Vec<Outcome>, ModelError> {
        let alg = model.algebra();
        Ok(match self {
            Program::Skip => skip_action(alg),
            Program::Prim(cmd) => model.primitive_action(cmd)?,
            Program::Seq(a, b) => seq_action(&a.evaluate_raw(model)?, &b.evaluate_raw(model)?),
            Program::Choice(a, b) => choice_action(&a.evaluate_raw(model)?, &b.evaluate_raw(model)?),
            Program::Star(a) => kstar_action(alg, &a.evaluate_raw(model)?),
        })
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Program::Skip => f.write_str("skip"),
            Program::Prim(c) => write!(f, "{c}"),
            Program::Seq(a, b) => write!(f, "seq({a},{b})"),
            Program::Choice(a, b) => write!(f, "choice({a},{b})"),
            Program::Star(a) => write!(f, "star({a})"),
        }
    }
}

impl std::str::FromStr for Program {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_program(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Arg {
    Ident(String),
    Int(i64),
    Prog(Program),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.err(self.pos, format!("expected `{want}`, found `{c}`")),
            None => self.err(self.pos, format!("expected `{want}`, found end of input")),
        }
    }

    fn ident(&mut self) -> Option<(usize, &'a str)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c.is_ascii_alphabetic() || c == '_' || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return None;
        }
        self.pos += len;
        Some((start, &rest[..len]))
    }

    fn int(&mut self) -> Result<(usize, i64), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let neg = rest.starts_with('-') as usize;
        let digits = rest[neg..].chars().take_while(char::is_ascii_digit).count();
        if digits == 0 {
            return self.err(start, "expected an integer");
        }
        let text = &rest[..neg + digits];
        self.pos += text.len();
        match text.parse() {
            Ok(v) => Ok((start, v)),
            Err(_) => self.err(start, format!("integer `{text}` out of range")),
        }
    }

    fn arg(&mut self) -> Result<(usize, Arg), ParseError> {
        match self.peek() {
            Some(c) if c == '-' || c.is_ascii_digit() => {
                let (at, v) = self.int()?;
                Ok((at, Arg::Int(v)))
            }
            Some(_) => {
                let save = self.pos;
                let (at, name) = match self.ident() {
                    Some(x) => x,
                    None => return self.err(self.pos, "expected an argument"),
                };
                if self.peek() == Some('(') || is_keyword(name) {
                    self.pos = save;
                    let p = self.program()?;
                    Ok((at, Arg::Prog(p)))
                } else {
                    Ok((at, Arg::Ident(name.to_string())))
                }
            }
            None => self.err(self.pos, "expected an argument, found end of input"),
        }
    }

    fn args(&mut self) -> Result<Vec<(usize, Arg)>, ParseError> {
        self.expect('(')?;
        let mut out = vec![self.arg()?];
        while self.peek() == Some(',') {
            self.pos += 1;
            out.push(self.arg()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn program(&mut self) -> Result<Program, ParseError> {
        let (at, name) = match self.ident() {
            Some(x) => x,
            None => {
                return match self.peek() {
                    Some(c) => self.err(self.pos, format!("expected a program, found `{c}`")),
                    None => self.err(self.pos, "expected a program, found end of input"),
                }
            }
        };
        if name == "skip" {
            return Ok(Program::Skip);
        }
        let arity = match name {
            "star" | "new" | "dispose" | "dispose_loc" | "adder" | "multiplier" => 1,
            "seq" | "choice" | "mutate" | "lookup" => 2,
            _ => return self.err(at, format!("unknown primitive `{name}`")),
        };
        let args = self.args()?;
        if args.len() != arity {
            return self.err(at, format!("`{name}` takes {arity} argument(s), got {}", args.len()));
        }
        let mut it = args.into_iter();
        let mut next = || it.next().expect("arity checked");
        let prog = |(at, a): (usize, Arg)| match a {
            Arg::Prog(p) => Ok(p),
            _ => Err(ParseError { offset: at, message: "expected a program".into() }),
        };
        let var = |(at, a): (usize, Arg)| match a {
            Arg::Ident(x) => Ok(x),
            _ => Err(ParseError { offset: at, message: "expected a variable name".into() }),
        };
        let int = |(at, a): (usize, Arg)| match a {
            Arg::Int(v) => Ok(v),
            _ => Err(ParseError { offset: at, message: "expected an integer".into() }),
        };
        Ok(match name {
            "seq" => Program::seq(prog(next())?, prog(next())?),
            "choice" => Program::choice(prog(next())?, prog(next())?),
            "star" => Program::star(prog(next())?),
            "new" => Program::Prim(Command::New(var(next())?)),
            "dispose" => Program::Prim(Command::Dispose(var(next())?)),
            "dispose_loc" => Program::Prim(Command::DisposeLoc(int(next())?)),
            "mutate" => Program::Prim(Command::Mutate(var(next())?, int(next())?)),
            "lookup" => Program::Prim(Command::Lookup(var(next())?, var(next())?)),
            "adder" => Program::Prim(Command::Adder(int(next())?)),
            "multiplier" => Program::Prim(Command::Multiplier(int(next())?)),
            _ => unreachable!(),
        })
    }
}

fn is_keyword(s: &str) -> bool {
    s == "skip"
}

pub fn parse_program(src: &str) -> Result<Program, ParseError> {
    let mut p = Parser { src, pos: 0 };
    let prog = p.program()?;
    if let Some(c) = p.peek() {
        return p.err(p.pos, format!("unexpected trailing `{c}`"));
    }
    Ok(prog)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::ModelConfig;

    #[test]
    fn parse_and_print() {
        for src in [
            "skip",
            "seq(new(x),dispose(x))",
            "choice(mutate(x,-1),lookup(x,y))",
            "star(seq(skip,dispose_loc(2)))",
            "multiplier(2)",
        ] {
            assert_eq!(parse_program(src).unwrap().to_string(), src);
        }
        assert_eq!(
            parse_program(" seq ( new( x ) , dispose(x) ) ").unwrap(),
            Program::seq(Program::Prim(Command::New("x".into())), Program::Prim(Command::Dispose("x".into())))
        );
    }

    #[test]
    fn parse_errors_carry_offsets() {
        let e = parse_program("seq(new(x),").unwrap_err();
        assert_eq!(e.offset, 11);
        let e = parse_program("frobnicate(x)").unwrap_err();
        assert_eq!(e.offset, 0);
        assert!(e.message.contains("unknown primitive"));
        assert!(parse_program("new(1)").is_err());
        assert!(parse_program("seq(skip)").is_err());
        assert!(parse_program("skip skip").is_err());
        assert!(parse_program("").is_err());
    }

    #[test]
    fn elaboration() {
        let z3 = Model::zmod(3).unwrap();
        let f = parse_program("star(adder(1))").unwrap().elaborate(&z3, LocalityCheck::Always).unwrap();
        let all = Outcome::States(z3.algebra().carrier());
        assert!(f.action().iter().all(|o| o == &all));
        assert!(parse_program("multiplier(2)").unwrap().elaborate(&z3, LocalityCheck::Off).is_err());
        let raw = parse_program("multiplier(2)").unwrap().evaluate_raw(&z3).unwrap();
        assert_eq!(raw.len(), 3);

        let ph2 = Model::plain_heap(&ModelConfig::plain(&[1, 2], &[7]), 4096).unwrap();
        assert!(matches!(
            parse_program("new(x)").unwrap().elaborate(&ph2, LocalityCheck::Debug),
            Err(ModelError::KindMismatch { .. })
        ));
    }
}
