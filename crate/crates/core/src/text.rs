//! Line-oriented text formats (APX style) for frameworks and completion sets.
//!
//! ```text
//! arg(a).          % certain argument
//! ?arg(b).         % uncertain argument (IAF documents only)
//! att(b,a).        % defeat
//! imply([b],[c]).  or([b,c]).  nand([b,c]).
//! ```
//!
//! Tokens containing any of `(),.[]%"` are written in double quotes.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::af::{AbstractAF, ArgumentId, Defeat, Extension};
use crate::incomplete::{ArgIAF, CompletionSet, DepArgIAF, Dependency};
use crate::{Error, Result};

const SEPARATOR: &str = "---";

fn needs_quotes(token: &str) -> bool {
    token
        .chars()
        .any(|c| matches!(c, '(' | ')' | ',' | '.' | '[' | ']' | '%' | '"' | '?'))
}

pub fn write_token(out: &mut String, id: &ArgumentId) {
    if needs_quotes(id.as_str()) {
        out.push('"');
        out.push_str(id.as_str());
        out.push('"');
    } else {
        out.push_str(id.as_str());
    }
}

fn token_string(id: &ArgumentId) -> String {
    let mut s = String::new();
    write_token(&mut s, id);
    s
}

fn write_list<'a>(out: &mut String, ids: impl IntoIterator<Item = &'a ArgumentId>) {
    out.push('[');
    for (i, id) in ids.into_iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_token(out, id);
    }
    out.push(']');
}

pub fn serialize_af(af: &AbstractAF) -> String {
    let mut out = String::new();
    for a in af.args() {
        let _ = writeln!(out, "arg({}).", token_string(a));
    }
    for (x, y) in af.defeats() {
        let _ = writeln!(out, "att({},{}).", token_string(x), token_string(y));
    }
    out
}

fn dependency_line(dep: &Dependency) -> String {
    let mut out = String::new();
    match dep {
        Dependency::ImplyDisj { premises, conclusions } => {
            out.push_str("imply(");
            write_list(&mut out, premises);
            out.push(',');
            write_list(&mut out, conclusions);
        }
        Dependency::Or(xs) => {
            out.push_str("or(");
            write_list(&mut out, xs);
        }
        Dependency::Nand(xs) => {
            out.push_str("nand(");
            write_list(&mut out, xs);
        }
    }
    out.push_str(").");
    out
}

pub fn serialize_arg_iaf(iaf: &ArgIAF) -> String {
    serialize_dep_arg_iaf(&DepArgIAF::without_dependencies(iaf.clone()))
}

pub fn serialize_dep_arg_iaf(diaf: &DepArgIAF) -> String {
    let iaf = diaf.base();
    let mut out = String::new();
    for a in iaf.fixed_args() {
        let _ = writeln!(out, "arg({}).", token_string(a));
    }
    for a in iaf.uncertain_args() {
        let _ = writeln!(out, "?arg({}).", token_string(a));
    }
    for (x, y) in iaf.defeats() {
        let _ = writeln!(out, "att({},{}).", token_string(x), token_string(y));
    }
    let deps: BTreeSet<String> = diaf.dependencies().iter().map(dependency_line).collect();
    for line in deps {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// Each member is introduced by a `---` line; the empty set is the empty
/// document.
pub fn serialize_completion_set(set: &CompletionSet) -> String {
    let mut out = String::new();
    for af in set.iter() {
        out.push_str(SEPARATOR);
        out.push('\n');
        out.push_str(&serialize_af(af));
    }
    out
}

pub fn serialize_extension(ext: &Extension) -> String {
    let mut out = String::new();
    write_list(&mut out, ext);
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Statement {
    Arg(ArgumentId),
    UncertainArg(ArgumentId),
    Att(ArgumentId, ArgumentId),
    Dep(Dependency),
}

struct LineParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl<'a> LineParser<'a> {
    fn new(src: &'a str, line: usize) -> Self {
        LineParser {
            chars: src.chars().collect(),
            pos: 0,
            line,
            _src: src,
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.pos + 1,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && matches!(self.chars[self.pos], ' ' | '\t') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn keyword(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self
            .peek()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '?')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn token(&mut self) -> Result<ArgumentId> {
        self.skip_ws();
        let start = self.pos;
        let text: String = if self.peek() == Some('"') {
            self.pos += 1;
            let inner_start = self.pos;
            while self.peek().is_some_and(|c| c != '"') {
                self.pos += 1;
            }
            if self.peek() != Some('"') {
                return Err(self.error("unterminated quoted token"));
            }
            let s = self.chars[inner_start..self.pos].iter().collect();
            self.pos += 1;
            s
        } else {
            while self.peek().is_some_and(|c| {
                !c.is_whitespace() && !matches!(c, '(' | ')' | ',' | '.' | '[' | ']' | '%' | '"')
            }) {
                self.pos += 1;
            }
            self.chars[start..self.pos].iter().collect()
        };
        if text.is_empty() {
            self.pos = start;
            return Err(self.error("expected an argument name"));
        }
        ArgumentId::new(&text).map_err(|_| {
            self.pos = start;
            self.error(format!("invalid argument name `{text}`"))
        })
    }

    fn list(&mut self) -> Result<BTreeSet<ArgumentId>> {
        self.expect('[')?;
        let mut items = BTreeSet::new();
        self.skip_ws();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(items);
        }
        loop {
            items.insert(self.token()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(']') => {
                    self.pos += 1;
                    return Ok(items);
                }
                _ => return Err(self.error("expected `,` or `]`")),
            }
        }
    }

    fn finish(&mut self) -> Result<()> {
        self.expect(')')?;
        self.expect('.')?;
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some('%') => Ok(()),
            Some(_) => Err(self.error("unexpected trailing characters")),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let kw_start = self.pos;
        let kw = self.keyword();
        self.expect('(')?;
        let stmt = match kw.as_str() {
            "arg" => Statement::Arg(self.token()?),
            "?arg" => Statement::UncertainArg(self.token()?),
            "att" => {
                let x = self.token()?;
                self.expect(',')?;
                Statement::Att(x, self.token()?)
            }
            "imply" => {
                let premises = self.list()?;
                self.expect(',')?;
                let conclusions = self.list()?;
                Statement::Dep(Dependency::ImplyDisj {
                    premises,
                    conclusions,
                })
            }
            "or" => Statement::Dep(Dependency::Or(self.list()?)),
            "nand" => Statement::Dep(Dependency::Nand(self.list()?)),
            other => {
                self.pos = kw_start;
                return Err(self.error(format!("unknown statement `{other}`")));
            }
        };
        self.finish()?;
        Ok(stmt)
    }
}

fn parse_statements(text: &str, first_line: usize) -> Result<Vec<(usize, Statement)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        let trimmed = line.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let mut p = LineParser::new(line, first_line + i);
        out.push((first_line + i, p.statement()?));
    }
    Ok(out)
}

pub fn parse_af(text: &str) -> Result<AbstractAF> {
    parse_af_at(text, 1)
}

fn parse_af_at(text: &str, first_line: usize) -> Result<AbstractAF> {
    let mut args = BTreeSet::new();
    let mut defeats: Vec<(usize, Defeat)> = Vec::new();
    for (line, stmt) in parse_statements(text, first_line)? {
        match stmt {
            Statement::Arg(a) => {
                args.insert(a);
            }
            Statement::Att(x, y) => defeats.push((line, (x, y))),
            _ => {
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: "only arg/att statements are allowed in an AF document".into(),
                })
            }
        }
    }
    for (_, (x, y)) in &defeats {
        for end in [x, y] {
            if !args.contains(end) {
                return Err(Error::UndeclaredArgument(end.to_string()));
            }
        }
    }
    AbstractAF::new(args, defeats.into_iter().map(|(_, d)| d))
}

/// Parses an IAF document (with or without dependencies).
pub fn parse_dep_arg_iaf(text: &str) -> Result<DepArgIAF> {
    let mut fixed = BTreeSet::new();
    let mut uncertain = BTreeSet::new();
    let mut defeats = BTreeSet::new();
    let mut deps = BTreeSet::new();
    for (_, stmt) in parse_statements(text, 1)? {
        match stmt {
            Statement::Arg(a) => {
                fixed.insert(a);
            }
            Statement::UncertainArg(a) => {
                uncertain.insert(a);
            }
            Statement::Att(x, y) => {
                defeats.insert((x, y));
            }
            Statement::Dep(d) => {
                deps.insert(d);
            }
        }
    }
    let base = ArgIAF::new(fixed, uncertain, defeats)?;
    DepArgIAF::new(base, deps)
}

/// Parses an IAF document that must not carry dependencies.
pub fn parse_arg_iaf(text: &str) -> Result<ArgIAF> {
    let diaf = parse_dep_arg_iaf(text)?;
    if !diaf.dependencies().is_empty() {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "arg-IAF documents may not contain dependencies".into(),
        });
    }
    Ok(diaf.into_base())
}

/// Parses a completion-set document: AF texts introduced by `---` lines. A
/// document without separators holds a single AF, or none if it has no
/// statements.
pub fn parse_completion_set(text: &str) -> Result<CompletionSet> {
    let mut sections: Vec<(usize, String)> = Vec::new();
    let mut preamble = String::new();
    let mut seen_separator = false;
    for (i, raw) in text.lines().enumerate() {
        if raw.trim_end_matches('\r').trim() == SEPARATOR {
            seen_separator = true;
            sections.push((i + 2, String::new()));
        } else if let Some((_, cur)) = sections.last_mut() {
            cur.push_str(raw);
            cur.push('\n');
        } else {
            preamble.push_str(raw);
            preamble.push('\n');
        }
    }
    let mut afs = Vec::new();
    if !seen_separator {
        if !parse_statements(&preamble, 1)?.is_empty() {
            afs.push(parse_af(&preamble)?);
        }
    } else {
        if !parse_statements(&preamble, 1)?.is_empty() {
            return Err(Error::Parse {
                line: 1,
                column: 1,
                message: "statements before the first `---` separator".into(),
            });
        }
        for (line, body) in sections {
            afs.push(parse_af_at(&body, line)?);
        }
    }
    Ok(CompletionSet::from_iter(afs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::af::id;

    const AF0_MESSY: &str = "% example\natt(c,a).\narg(c).\n\narg(a).\natt(b,a).\narg(b).\n";

    #[test]
    fn parses_simple_document() {
        let af = parse_af("arg(a).\narg(b).\natt(b,a).").unwrap();
        assert_eq!(af, AbstractAF::from_strs(&["a", "b"], &[("b", "a")]));
    }

    #[test]
    fn empty_document_is_empty_af() {
        assert_eq!(parse_af("").unwrap(), AbstractAF::empty());
        assert_eq!(serialize_af(&AbstractAF::empty()), "");
    }

    #[test]
    fn canonical_round_trip() {
        let af = parse_af(AF0_MESSY).unwrap();
        let canonical = serialize_af(&af);
        assert_eq!(
            canonical,
            "arg(a).\narg(b).\narg(c).\natt(b,a).\natt(c,a).\n"
        );
        assert_eq!(serialize_af(&parse_af(&canonical).unwrap()), canonical);
    }

    #[test]
    fn undeclared_argument_reported() {
        let err = parse_af("arg(a).\natt(a,b).\n").unwrap_err();
        assert_eq!(err, Error::UndeclaredArgument("b".into()));
    }

    #[test]
    fn parse_error_has_position() {
        match parse_af("arg(a).\natt(a b).\n").unwrap_err() {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 7);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(parse_af("foo(a).").unwrap_err().code(), "PARSE_ERROR");
        assert_eq!(parse_af("arg(a)").unwrap_err().code(), "PARSE_ERROR");
    }

    #[test]
    fn structured_names_are_quoted() {
        let af = AbstractAF::new(
            [id("(p)=d>q"), id("p")],
            [(id("p"), id("(p)=d>q"))],
        )
        .unwrap();
        let text = serialize_af(&af);
        assert_eq!(
            text,
            "arg(\"(p)=d>q\").\narg(p).\natt(p,\"(p)=d>q\").\n"
        );
        assert_eq!(parse_af(&text).unwrap(), af);
    }

    #[test]
    fn iaf_document_with_dependencies() {
        let text = "arg(a).\n?arg(c).\n?arg(b).\natt(b,a).\natt(c,a).\nimply([b],[c]).\nor([c,b]).\n";
        let diaf = parse_dep_arg_iaf(text).unwrap();
        assert_eq!(diaf.base().uncertain_args().len(), 2);
        assert_eq!(diaf.dependencies().len(), 2);
        let out = serialize_dep_arg_iaf(&diaf);
        assert_eq!(
            out,
            "arg(a).\n?arg(b).\n?arg(c).\natt(b,a).\natt(c,a).\nimply([b],[c]).\nor([b,c]).\n"
        );
        assert_eq!(parse_dep_arg_iaf(&out).unwrap(), diaf);
    }

    #[test]
    fn af_document_rejects_uncertain_statements() {
        assert_eq!(parse_af("?arg(a).").unwrap_err().code(), "PARSE_ERROR");
        assert!(parse_arg_iaf("?arg(a).\nor([a]).").is_err());
    }

    #[test]
    fn completion_set_documents() {
        let set = CompletionSet::from_iter([
            AbstractAF::empty(),
            AbstractAF::from_strs(&["a"], &[]),
        ]);
        let text = serialize_completion_set(&set);
        assert_eq!(text, "---\n---\narg(a).\n");
        assert_eq!(parse_completion_set(&text).unwrap(), set);
        assert!(parse_completion_set("").unwrap().is_empty());
        assert_eq!(
            parse_completion_set("---\n").unwrap(),
            CompletionSet::from_iter([AbstractAF::empty()])
        );
        assert_eq!(parse_completion_set("arg(a).\n").unwrap().len(), 1);
    }
}
