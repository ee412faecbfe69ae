use std::sync::Arc;

use super::{Axiom, Concept, ConceptAssertion, Ontology, ProblemInstance, ProblemKind, RoleAssertion};
use crate::boolfun::{NamedOperator, OperatorSet, TruthTable};
use crate::error::{Error, Result};

const KEYWORDS: [&str; 7] = ["operator", "problem", "tbox", "abox", "query", "some", "all"];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept `_`-prefixed names, as produced by the transforms.
    pub allow_reserved_names: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Comma,
    Sub,
    Equiv,
    Word(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token>,
    pos: usize,
    opts: &'a ParseOptions,
    end_col: usize,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lex(number: usize, text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (off, c) = chars[i];
        let col = text[..off].chars().count() + 1;
        match c {
            '#' => break,
            c if c.is_whitespace() => i += 1,
            '(' | ')' | ',' => {
                let tok = match c {
                    '(' => Tok::Open,
                    ')' => Tok::Close,
                    _ => Tok::Comma,
                };
                out.push(Token { tok, col });
                i += 1;
            }
            '<' | '=' => {
                let next = chars.get(i + 1).map(|p| p.1);
                let tok = match (c, next) {
                    ('<', Some('=')) => Tok::Sub,
                    ('=', Some('=')) => Tok::Equiv,
                    _ => return Err(err(number, col, format!("unexpected `{c}`"))),
                };
                out.push(Token { tok, col });
                i += 2;
            }
            c if c.is_ascii_alphanumeric() || c == '_' || c == '\'' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_' || chars[i].1 == '\'')
                {
                    i += 1;
                }
                let word: String = chars[start..i].iter().map(|p| p.1).collect();
                out.push(Token {
                    tok: Tok::Word(word),
                    col,
                });
            }
            other => return Err(err(number, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

fn valid_identifier(word: &str, opts: &ParseOptions) -> bool {
    let mut chars = word.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    let head_ok = first.is_ascii_alphabetic() || (opts.allow_reserved_names && first == '_');
    let tail_ok = word
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || c == '\'' || (opts.allow_reserved_names && c == '_'));
    head_ok && tail_ok && !KEYWORDS.contains(&word)
}

impl<'a> Line<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn error(&self, message: impl Into<String>) -> Error {
        err(self.number, self.col(), message)
    }

    fn next(&mut self) -> Result<Tok> {
        let t = self
            .tokens
            .get(self.pos)
            .map(|t| t.tok.clone())
            .ok_or_else(|| self.error("unexpected end of line"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        let col = self.col();
        if self.next()? == tok {
            Ok(())
        } else {
            Err(err(self.number, col, format!("expected {what}")))
        }
    }

    fn word(&mut self, what: &str) -> Result<String> {
        let col = self.col();
        match self.next()? {
            Tok::Word(w) => Ok(w),
            _ => Err(err(self.number, col, format!("expected {what}"))),
        }
    }

    fn ident(&mut self, what: &str) -> Result<Arc<str>> {
        let col = self.col();
        let w = self.word(what)?;
        if valid_identifier(&w, self.opts) {
            Ok(w.into())
        } else {
            Err(err(self.number, col, format!("invalid {what} `{w}`")))
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn concept(&mut self, ops: &OperatorSet) -> Result<Concept> {
        let col = self.col();
        match self.next()? {
            Tok::Word(w) => {
                if valid_identifier(&w, self.opts) {
                    Ok(Concept::Atomic(w.into()))
                } else {
                    Err(err(self.number, col, format!("invalid concept name `{w}`")))
                }
            }
            Tok::Open => {
                let head_col = self.col();
                let head = self.word("operator name or quantifier")?;
                let c = match head.as_str() {
                    "some" | "all" => {
                        let role = self.ident("role name")?;
                        let child = self.concept(ops)?;
                        if head == "some" {
                            Concept::exists(role, child)
                        } else {
                            Concept::forall(role, child)
                        }
                    }
                    name => {
                        let op = ops.get(name).ok_or_else(|| {
                            err(self.number, head_col, format!("undeclared operator `{name}`"))
                        })?;
                        let mut children = Vec::new();
                        while self.peek().is_some() && self.peek() != Some(&Tok::Close) {
                            children.push(self.concept(ops)?);
                        }
                        if children.len() != op.arity() {
                            return Err(err(
                                self.number,
                                head_col,
                                format!(
                                    "arity mismatch: `{name}` takes {} arguments, got {}",
                                    op.arity(),
                                    children.len()
                                ),
                            ));
                        }
                        Concept::Apply(op.clone(), children)
                    }
                };
                self.expect(Tok::Close, "`)`")?;
                Ok(c)
            }
            _ => Err(err(self.number, col, "expected a concept")),
        }
    }
}

fn lines<'a>(text: &'a str, opts: &'a ParseOptions) -> Result<Vec<Line<'a>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let tokens = lex(i + 1, raw)?;
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
                pos: 0,
                opts,
                end_col: raw.chars().count() + 1,
            });
        }
    }
    Ok(out)
}

fn leading_keyword(line: &Line) -> Option<&'static str> {
    match line.tokens.first().map(|t| &t.tok) {
        Some(Tok::Word(w)) => ["operator", "problem", "tbox", "abox", "query"]
            .into_iter()
            .find(|k| k == w),
        _ => None,
    }
}

fn operator_line(line: &mut Line) -> Result<NamedOperator> {
    line.pos = 1;
    let name = line.ident("operator name")?;
    let arity_col = line.col();
    let arity: usize = line
        .word("arity")?
        .parse()
        .map_err(|_| err(line.number, arity_col, "arity must be a number"))?;
    let bits_col = line.col();
    let bits = line.word("bitstring")?;
    let table = TruthTable::from_bitstring(arity, &bits).map_err(|e| {
        let msg = match e {
            Error::Argument(m) | Error::Limit(m) => m,
            other => other.to_string(),
        };
        err(line.number, bits_col, msg)
    })?;
    line.finish()?;
    Ok(NamedOperator::new(name, table))
}

fn declare(ops: &mut OperatorSet, line: &mut Line) -> Result<()> {
    let number = line.number;
    let op = operator_line(line)?;
    if ops.get(&op.name).is_some() {
        return Err(err(number, 10, format!("operator `{}` declared twice", op.name)));
    }
    ops.insert(op)
}

/// Parses a file holding only operator declarations.
pub fn parse_operators(text: &str) -> Result<OperatorSet> {
    let opts = ParseOptions::default();
    let mut ops = OperatorSet::default();
    for mut line in lines(text, &opts)? {
        match leading_keyword(&line) {
            Some("operator") => declare(&mut ops, &mut line)?,
            _ => return Err(err(line.number, 1, "expected an operator declaration")),
        }
    }
    Ok(ops)
}

pub fn parse(text: &str) -> Result<ProblemInstance> {
    parse_with(text, &ParseOptions::default())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Tbox,
    Abox,
}

pub fn parse_with(text: &str, opts: &ParseOptions) -> Result<ProblemInstance> {
    let mut all = lines(text, opts)?;
    let mut ops = OperatorSet::default();
    for line in all.iter_mut() {
        if leading_keyword(line) == Some("operator") {
            declare(&mut ops, line)?;
        }
    }

    let mut kind = None;
    let mut ontology = Ontology::default();
    let mut query = None;
    let mut section = Section::Header;
    let mut last_line = 0;
    for mut line in all {
        last_line = line.number;
        match leading_keyword(&line) {
            Some("operator") => {}
            Some("problem") => {
                line.pos = 1;
                let col = line.col();
                let w = line.word("problem kind")?;
                if kind.is_some() {
                    return Err(err(line.number, 1, "problem declared twice"));
                }
                kind = Some(
                    w.parse::<ProblemKind>()
                        .map_err(|_| err(line.number, col, format!("unknown problem kind `{w}`")))?,
                );
                line.finish()?;
            }
            Some("tbox") => {
                line.pos = 1;
                line.finish()?;
                section = Section::Tbox;
            }
            Some("abox") => {
                line.pos = 1;
                line.finish()?;
                section = Section::Abox;
            }
            Some("query") => {
                line.pos = 1;
                if query.is_some() {
                    return Err(err(line.number, 1, "query declared twice"));
                }
                query = Some(line.concept(&ops)?);
                line.finish()?;
                section = Section::Header;
            }
            _ => match section {
                Section::Header => return Err(line.error("expected a keyword")),
                Section::Tbox => {
                    let lhs = line.concept(&ops)?;
                    let col = line.col();
                    let equiv = match line.next()? {
                        Tok::Sub => false,
                        Tok::Equiv => true,
                        _ => return Err(err(line.number, col, "expected `<=` or `==`")),
                    };
                    let rhs = line.concept(&ops)?;
                    line.finish()?;
                    if equiv {
                        ontology.tbox.push(Axiom::new(lhs.clone(), rhs.clone()));
                        ontology.tbox.push(Axiom::new(rhs, lhs));
                    } else {
                        ontology.tbox.push(Axiom::new(lhs, rhs));
                    }
                }
                Section::Abox => {
                    let commas = line.tokens.iter().filter(|t| t.tok == Tok::Comma).count();
                    if commas == 1 {
                        let role = line.ident("role name")?;
                        line.expect(Tok::Open, "`(`")?;
                        let from = line.ident("individual")?;
                        line.expect(Tok::Comma, "`,`")?;
                        let to = line.ident("individual")?;
                        line.expect(Tok::Close, "`)`")?;
                        line.finish()?;
                        ontology.abox_roles.push(RoleAssertion { role, from, to });
                    } else {
                        let concept = line.concept(&ops)?;
                        line.expect(Tok::Open, "`(`")?;
                        let individual = line.ident("individual")?;
                        line.expect(Tok::Close, "`)`")?;
                        line.finish()?;
                        ontology
                            .abox_concepts
                            .push(ConceptAssertion { concept, individual });
                    }
                }
            },
        }
    }

    let kind = kind.ok_or_else(|| err(last_line.max(1), 1, "missing `problem` line"))?;
    let instance = ProblemInstance {
        kind,
        operators: ops,
        ontology,
        query,
    };
    instance
        .validate()
        .map_err(|e| err(last_line.max(1), 1, e.to_string()))?;
    Ok(instance)
}
