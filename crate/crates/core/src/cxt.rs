//! Burmeister `.cxt` reading and writing.
//!
//! ```text
//! B
//! <optional name>
//! <|G|>
//! <|M|>
//!
//! <object names, one per line>
//! <attribute names, one per line>
//! <|G| rows of '.'/'X', one cell per attribute>
//! ```

use crate::bitset::BitSet;
use crate::context::FormalContext;
use crate::error::{FcaError, Result};

/// A parsed `.cxt` file: the context and the optional name line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContextDocument {
    pub name: Option<String>,
    pub context: FormalContext,
}

struct Lines<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .split('\n')
            .map(|l| l.strip_suffix('\r').unwrap_or(l))
            .collect();
        Lines { lines, pos: 0 }
    }

    fn peek(&self, ahead: usize) -> Option<&'a str> {
        self.lines.get(self.pos + ahead).copied()
    }

    fn line_no(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, message: impl Into<String>) -> FcaError {
        FcaError::Parse {
            line: self.line_no(),
            message: message.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        let line = self
            .peek(0)
            .ok_or_else(|| self.err(format!("unexpected end of file, expected {what}")))?;
        self.pos += 1;
        Ok(line)
    }

    fn count(&mut self, what: &str) -> Result<usize> {
        let line = self.next(what)?;
        line.trim().parse().map_err(|_| FcaError::Parse {
            line: self.pos,
            message: format!("expected {what}, got `{line}`"),
        })
    }
}

fn is_count(line: Option<&str>) -> bool {
    line.is_some_and(|l| l.trim().parse::<usize>().is_ok())
}

pub fn parse_cxt_document(text: &str) -> Result<ContextDocument> {
    let mut lines = Lines::new(text);
    if lines.next("header")?.trim() != "B" {
        return Err(FcaError::Parse {
            line: 1,
            message: "expected `B` header".into(),
        });
    }
    // The name line is optional: without it the two counts follow directly
    // and the line after them is blank.
    let has_name = !(is_count(lines.peek(0))
        && is_count(lines.peek(1))
        && lines.peek(2).is_some_and(|l| l.trim().is_empty()));
    let name = if has_name {
        let n = lines.next("name line")?.trim();
        (!n.is_empty()).then(|| n.to_string())
    } else {
        None
    };
    let g = lines.count("object count")?;
    let m = lines.count("attribute count")?;
    if lines.peek(0).is_some_and(|l| l.trim().is_empty()) {
        lines.pos += 1;
    }
    let mut objects = Vec::with_capacity(g);
    for _ in 0..g {
        objects.push(lines.next("object name")?.trim().to_string());
    }
    let mut attributes = Vec::with_capacity(m);
    for _ in 0..m {
        attributes.push(lines.next("attribute name")?.trim().to_string());
    }
    let mut rows = Vec::with_capacity(g);
    for _ in 0..g {
        let line_no = lines.line_no();
        let raw = lines.next("incidence row")?.trim_end();
        let cells: Vec<char> = raw.chars().collect();
        if cells.len() != m {
            return Err(FcaError::Parse {
                line: line_no,
                message: format!("row has {} cells, expected {m}", cells.len()),
            });
        }
        let mut row = BitSet::new(m);
        for (j, c) in cells.into_iter().enumerate() {
            match c {
                'X' => row.insert(j),
                '.' => {}
                other => {
                    return Err(FcaError::Parse {
                        line: line_no,
                        message: format!("illegal cell {other:?} in column {}", j + 1),
                    })
                }
            }
        }
        rows.push(row);
    }
    while let Some(rest) = lines.peek(0) {
        if !rest.trim().is_empty() {
            return Err(lines.err("unexpected content after the incidence rows"));
        }
        lines.pos += 1;
    }
    let context = FormalContext::new(objects, attributes, rows).map_err(|e| FcaError::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(ContextDocument { name, context })
}

pub fn parse_cxt(text: &str) -> Result<FormalContext> {
    parse_cxt_document(text).map(|doc| doc.context)
}

pub fn parse_cxt_bytes(bytes: &[u8]) -> Result<FormalContext> {
    let text = std::str::from_utf8(bytes).map_err(|e| FcaError::Parse {
        line: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    parse_cxt(text)
}

pub fn write_cxt_document(doc: &ContextDocument) -> String {
    let ctx = &doc.context;
    let mut out = String::new();
    out.push_str("B\n");
    out.push_str(doc.name.as_deref().unwrap_or(""));
    out.push('\n');
    out.push_str(&format!("{}\n{}\n\n", ctx.num_objects(), ctx.num_attributes()));
    for name in ctx.object_names().iter().chain(ctx.attribute_names()) {
        out.push_str(name);
        out.push('\n');
    }
    for row in ctx.rows() {
        out.extend((0..ctx.num_attributes()).map(|m| if row.contains(m) { 'X' } else { '.' }));
        out.push('\n');
    }
    out
}

pub fn write_cxt(ctx: &FormalContext) -> String {
    write_cxt_document(&ContextDocument {
        name: None,
        context: ctx.clone(),
    })
}
