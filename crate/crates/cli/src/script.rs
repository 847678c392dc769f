//! Line-oriented script format.
//!
//! One command per line. A token starting with `#` begins a comment that
//! runs to the end of the line. Ids are arbitrary whitespace-free tokens.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    Forest,
    Graph,
}

#[derive(Debug, Error, PartialEq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ForestCmd {
    Vertex(String, i64),
    Link(String, String, f64),
    Cut(String),
    Condense(String),
    Erase(String),
    Evert(String),
    SetVal(String, i64),
    AddPath(String, i64),
    AddSub(String, i64),
    Ask(ForestAsk),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ForestAsk {
    Root(String),
    Parent(String),
    Depth(String),
    Size(String),
    SubSum(String),
    SubMax(String),
    MaxChild(String),
    Degree(String),
    Children(String),
    Val(String),
    Lca(String, String),
    Dist(String, String),
    WDist(String, String),
    Desc(String, String),
    Same(String, String),
    Anc(String, u32),
    Bc(String),
    Farness(String),
}

#[derive(Clone, Debug, PartialEq)]
pub enum GraphCmd {
    Vertex(String),
    Edge(String, String),
    Conn(String, String),
    Artic(String),
    Bridge(String, String),
    Impact(String),
    CompSize(String),
}

/// A parsed command with its 1-based line number.
#[derive(Clone, Debug, PartialEq)]
pub struct Line<C> {
    pub no: usize,
    pub cmd: C,
}

struct Tokens<'a> {
    no: usize,
    name: &'a str,
    rest: Vec<&'a str>,
}

impl<'a> Tokens<'a> {
    fn err(&self, msg: impl fmt::Display) -> ParseError {
        ParseError {
            line: self.no,
            msg: format!("`{}`: {msg}", self.name),
        }
    }

    fn arity(&self, min: usize, max: usize) -> Result<(), ParseError> {
        let n = self.rest.len();
        if n < min || n > max {
            let want = if min == max {
                min.to_string()
            } else {
                format!("{min} to {max}")
            };
            return Err(self.err(format!("expected {want} arguments, got {n}")));
        }
        Ok(())
    }

    fn id(&self, i: usize) -> String {
        self.rest[i].to_string()
    }

    fn num<T: FromStr>(&self, i: usize, what: &str) -> Result<T, ParseError> {
        self.rest[i]
            .parse()
            .map_err(|_| self.err(format!("bad {what} `{}`", self.rest[i])))
    }

    fn opt_num<T: FromStr>(&self, i: usize, what: &str, default: T) -> Result<T, ParseError> {
        if i < self.rest.len() {
            self.num(i, what)
        } else {
            Ok(default)
        }
    }

    fn one(&self) -> Result<String, ParseError> {
        self.arity(1, 1)?;
        Ok(self.id(0))
    }

    fn two(&self) -> Result<(String, String), ParseError> {
        self.arity(2, 2)?;
        Ok((self.id(0), self.id(1)))
    }

    fn id_and_int(&self, what: &str) -> Result<(String, i64), ParseError> {
        self.arity(2, 2)?;
        Ok((self.id(0), self.num(1, what)?))
    }
}

/// Splits a script into non-empty, comment-free token lists.
fn lines(text: &str) -> impl Iterator<Item = Tokens<'_>> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let mut toks = line.split_whitespace().take_while(|t| !t.starts_with('#'));
        let name = toks.next()?;
        Some(Tokens {
            no: i + 1,
            name,
            rest: toks.collect(),
        })
    })
}

fn forest_line(t: &Tokens) -> Result<ForestCmd, ParseError> {
    use ForestAsk as A;
    use ForestCmd as C;
    let ask = |a| Ok(C::Ask(a));
    match t.name {
        "vertex" => {
            t.arity(1, 2)?;
            Ok(C::Vertex(t.id(0), t.opt_num(1, "value", 0)?))
        }
        "link" => {
            t.arity(2, 3)?;
            let w: f64 = t.opt_num(2, "weight", 1.0)?;
            if !w.is_finite() {
                return Err(t.err("weight must be finite"));
            }
            Ok(C::Link(t.id(0), t.id(1), w))
        }
        "cut" => Ok(C::Cut(t.one()?)),
        "condense" => Ok(C::Condense(t.one()?)),
        "erase" => Ok(C::Erase(t.one()?)),
        "evert" => Ok(C::Evert(t.one()?)),
        "setval" => t.id_and_int("value").map(|(v, x)| C::SetVal(v, x)),
        "addpath" => t.id_and_int("delta").map(|(v, x)| C::AddPath(v, x)),
        "addsub" => t.id_and_int("delta").map(|(v, x)| C::AddSub(v, x)),
        "root" => ask(A::Root(t.one()?)),
        "parent" => ask(A::Parent(t.one()?)),
        "depth" => ask(A::Depth(t.one()?)),
        "size" => ask(A::Size(t.one()?)),
        "subsum" => ask(A::SubSum(t.one()?)),
        "submax" => ask(A::SubMax(t.one()?)),
        "maxchild" => ask(A::MaxChild(t.one()?)),
        "degree" => ask(A::Degree(t.one()?)),
        "children" => ask(A::Children(t.one()?)),
        "val" => ask(A::Val(t.one()?)),
        "bc" => ask(A::Bc(t.one()?)),
        "farness" => ask(A::Farness(t.one()?)),
        "lca" => t.two().map(|(u, v)| C::Ask(A::Lca(u, v))),
        "dist" => t.two().map(|(u, v)| C::Ask(A::Dist(u, v))),
        "wdist" => t.two().map(|(u, v)| C::Ask(A::WDist(u, v))),
        "desc" => t.two().map(|(u, v)| C::Ask(A::Desc(u, v))),
        "same" => t.two().map(|(u, v)| C::Ask(A::Same(u, v))),
        "anc" => {
            t.arity(2, 2)?;
            ask(A::Anc(t.id(0), t.num(1, "ancestor index")?))
        }
        _ => Err(t.err("unknown forest command")),
    }
}

fn graph_line(t: &Tokens) -> Result<GraphCmd, ParseError> {
    use GraphCmd as C;
    match t.name {
        "vertex" => Ok(C::Vertex(t.one()?)),
        "edge" => t.two().map(|(u, v)| C::Edge(u, v)),
        "conn" => t.two().map(|(u, v)| C::Conn(u, v)),
        "artic" => Ok(C::Artic(t.one()?)),
        "bridge" => t.two().map(|(u, v)| C::Bridge(u, v)),
        "impact" => Ok(C::Impact(t.one()?)),
        "compsize" => Ok(C::CompSize(t.one()?)),
        _ => Err(t.err("unknown graph command")),
    }
}

pub fn parse_forest(text: &str) -> Result<Vec<Line<ForestCmd>>, ParseError> {
    lines(text)
        .map(|t| {
            Ok(Line {
                no: t.no,
                cmd: forest_line(&t)?,
            })
        })
        .collect()
}

pub fn parse_graph(text: &str) -> Result<Vec<Line<GraphCmd>>, ParseError> {
    lines(text)
        .map(|t| {
            Ok(Line {
                no: t.no,
                cmd: graph_line(&t)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines_are_skipped() {
        let s = "# header\n\nvertex a 3   # trailing\n  link a b 2.5\n";
        let got = parse_forest(s).unwrap();
        assert_eq!(
            got[0],
            Line {
                no: 3,
                cmd: ForestCmd::Vertex("a".into(), 3)
            }
        );
        assert_eq!(
            got[1],
            Line {
                no: 4,
                cmd: ForestCmd::Link("a".into(), "b".into(), 2.5)
            }
        );
    }

    #[test]
    fn defaults() {
        let got = parse_forest("vertex x\nlink x y").unwrap();
        assert_eq!(got[0].cmd, ForestCmd::Vertex("x".into(), 0));
        assert_eq!(got[1].cmd, ForestCmd::Link("x".into(), "y".into(), 1.0));
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_forest("vertex a\nsetval a many\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.to_string().starts_with("line 2:"));
        assert_eq!(parse_forest("cut").unwrap_err().line, 1);
        assert_eq!(parse_forest("\n\nfrobnicate a").unwrap_err().line, 3);
        assert_eq!(parse_forest("link a b inf").unwrap_err().line, 1);
    }

    #[test]
    fn modes_have_separate_vocabularies() {
        assert!(parse_graph("edge a b\nimpact a").is_ok());
        assert!(parse_graph("link a b").is_err());
        assert!(parse_forest("edge a b").is_err());
    }
}
