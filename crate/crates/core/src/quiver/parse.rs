//! Line-oriented quiver file format.
//!
//! ```text
//! # the quiver 1 -> 2 with a loop at 2
//! vertices: 1 2
//! arrow b: 1 -> 2
//! arrow a: 2 -> 2
//! relation a a
//! ```

use std::collections::HashMap;

use thiserror::Error;

use super::{QuiverAlgebra, QuiverError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error(transparent)]
    Invalid(#[from] QuiverError),
}

/// A diagnostic pointing at a 1-based line and column of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn syntax(line: usize, column: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }

    fn invalid(line: usize, column: usize, err: QuiverError) -> Self {
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Invalid(err),
        }
    }
}

/// A whitespace-delimited token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str, offset: usize) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (idx, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((idx, col)),
            (true, Some((s, c))) => {
                out.push(Token {
                    text: &line[s..idx],
                    column: offset + c + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    if let Some((s, c)) = start {
        out.push(Token {
            text: &line[s..],
            column: offset + c + 1,
        });
    }
    out
}

fn is_identifier(s: &str) -> bool {
    !s.is_empty()
        && s != "->"
        && !s
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, ':' | '#' | '~' | ',' | '(' | ')'))
}

struct PendingArrow<'a> {
    name: Token<'a>,
    source: Token<'a>,
    target: Token<'a>,
    line: usize,
}

struct PendingRelation<'a> {
    keyword: Token<'a>,
    arrows: Vec<Token<'a>>,
    line: usize,
}

/// Parses a quiver specification document.
pub fn parse_quiver_spec(text: &str) -> Result<QuiverAlgebra, ParseError> {
    let mut vertices: Vec<(VertexId, usize, usize)> = Vec::new();
    let mut arrows: Vec<PendingArrow<'_>> = Vec::new();
    let mut relations: Vec<PendingRelation<'_>> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content, 0);
        let Some(first) = toks.first() else { continue };

        if let Some(rest) = first.text.strip_prefix("vertices:") {
            if !rest.is_empty() {
                return Err(ParseError::syntax(
                    line_no,
                    first.column + "vertices:".len(),
                    "expected whitespace after `vertices:`",
                ));
            }
            for t in &toks[1..] {
                if !is_identifier(t.text) {
                    return Err(ParseError::syntax(
                        line_no,
                        t.column,
                        format!("invalid vertex identifier `{}`", t.text),
                    ));
                }
                vertices.push((VertexId::new(t.text), line_no, t.column));
            }
        } else if first.text == "vertices" {
            return Err(ParseError::syntax(
                line_no,
                first.column + first.text.chars().count(),
                "expected `:` after `vertices`",
            ));
        } else if first.text == "arrow" {
            arrows.push(parse_arrow(content, first, line_no)?);
        } else if first.text == "relation" {
            for t in &toks[1..] {
                if !is_identifier(t.text) {
                    return Err(ParseError::syntax(
                        line_no,
                        t.column,
                        format!("invalid arrow name `{}`", t.text),
                    ));
                }
            }
            relations.push(PendingRelation {
                keyword: *first,
                arrows: toks[1..].to_vec(),
                line: line_no,
            });
        } else {
            return Err(ParseError::syntax(
                line_no,
                first.column,
                format!(
                    "unknown directive `{}` (expected `vertices:`, `arrow` or `relation`)",
                    first.text
                ),
            ));
        }
    }

    // Declarations are checked here so that diagnostics can point at the
    // offending token; QuiverAlgebra::new re-validates the same invariants.
    let mut seen_vertices: HashMap<&VertexId, ()> = HashMap::new();
    for (v, line, col) in &vertices {
        if seen_vertices.insert(v, ()).is_some() {
            return Err(ParseError::invalid(
                *line,
                *col,
                QuiverError::DuplicateVertex(v.clone()),
            ));
        }
    }
    let mut arrow_ends: HashMap<&str, (VertexId, VertexId)> = HashMap::new();
    for a in &arrows {
        for t in [a.source, a.target] {
            let id = VertexId::new(t.text);
            if !seen_vertices.contains_key(&id) {
                return Err(ParseError::invalid(
                    a.line,
                    t.column,
                    QuiverError::UnknownVertex {
                        arrow: a.name.text.to_owned(),
                        vertex: id,
                    },
                ));
            }
        }
        let ends = (VertexId::new(a.source.text), VertexId::new(a.target.text));
        if arrow_ends.insert(a.name.text, ends).is_some() {
            return Err(ParseError::invalid(
                a.line,
                a.name.column,
                QuiverError::DuplicateArrow(a.name.text.to_owned()),
            ));
        }
    }
    let mut seen_relations: HashMap<Vec<&str>, ()> = HashMap::new();
    for r in &relations {
        if r.arrows.len() < 2 {
            let shown: Vec<&str> = r.arrows.iter().map(|t| t.text).collect();
            return Err(ParseError::invalid(
                r.line,
                r.keyword.column,
                QuiverError::RelationTooShort(shown.join(" ")),
            ));
        }
        for t in &r.arrows {
            if !arrow_ends.contains_key(t.text) {
                return Err(ParseError::invalid(
                    r.line,
                    t.column,
                    QuiverError::UnknownArrow(t.text.to_owned()),
                ));
            }
        }
        for pair in r.arrows.windows(2) {
            let (_, end) = &arrow_ends[pair[0].text];
            let (start, _) = &arrow_ends[pair[1].text];
            if end != start {
                return Err(ParseError::invalid(
                    r.line,
                    pair[1].column,
                    QuiverError::NotComposable {
                        first: pair[0].text.to_owned(),
                        end: end.clone(),
                        second: pair[1].text.to_owned(),
                        start: start.clone(),
                    },
                ));
            }
        }
        let key: Vec<&str> = r.arrows.iter().map(|t| t.text).collect();
        if seen_relations.insert(key.clone(), ()).is_some() {
            return Err(ParseError::invalid(
                r.line,
                r.keyword.column,
                QuiverError::DuplicateRelation(key.join(" ")),
            ));
        }
    }

    QuiverAlgebra::new(
        vertices.into_iter().map(|(v, _, _)| v),
        arrows.iter().map(|a| {
            (
                a.name.text.to_owned(),
                VertexId::new(a.source.text),
                VertexId::new(a.target.text),
            )
        }),
        relations
            .iter()
            .map(|r| r.arrows.iter().map(|t| t.text.to_owned()).collect()),
    )
    .map_err(|e| ParseError::invalid(0, 0, e))
}

/// `arrow <name>: <src> -> <dst>`, with optional spaces around `:` and `->`.
fn parse_arrow<'a>(
    content: &'a str,
    keyword: &Token<'a>,
    line: usize,
) -> Result<PendingArrow<'a>, ParseError> {
    let after_kw_byte = content
        .char_indices()
        .nth(keyword.column - 1 + "arrow".len())
        .map_or(content.len(), |(i, _)| i);
    let rest = &content[after_kw_byte..];
    let rest_col = keyword.column + "arrow".len();
    let Some(colon) = rest.find(':') else {
        return Err(ParseError::syntax(
            line,
            rest_col,
            "expected `arrow <name>: <source> -> <target>`",
        ));
    };
    let name_toks = tokens(&rest[..colon], rest_col - 1);
    let [name] = name_toks.as_slice() else {
        return Err(ParseError::syntax(
            line,
            rest_col,
            "expected one arrow name before `:`",
        ));
    };
    if !is_identifier(name.text) {
        return Err(ParseError::syntax(
            line,
            name.column,
            format!("invalid arrow name `{}`", name.text),
        ));
    }
    let colon_col = rest_col + rest[..colon].chars().count();
    let ends = &rest[colon + 1..];
    let Some(arrow_pos) = ends.find("->") else {
        return Err(ParseError::syntax(
            line,
            colon_col + 1,
            "expected `->` between vertices",
        ));
    };
    let src = tokens(&ends[..arrow_pos], colon_col);
    let dst_offset = colon_col + ends[..arrow_pos + 2].chars().count();
    let dst = tokens(&ends[arrow_pos + 2..], dst_offset);
    let [source] = src.as_slice() else {
        return Err(ParseError::syntax(
            line,
            colon_col + 1,
            "expected one source vertex",
        ));
    };
    let [target] = dst.as_slice() else {
        return Err(ParseError::syntax(
            line,
            dst_offset + 1,
            "expected one target vertex",
        ));
    };
    for t in [source, target] {
        if !is_identifier(t.text) {
            return Err(ParseError::syntax(
                line,
                t.column,
                format!("invalid vertex identifier `{}`", t.text),
            ));
        }
    }
    Ok(PendingArrow {
        name: *name,
        source: *source,
        target: *target,
        line,
    })
}
