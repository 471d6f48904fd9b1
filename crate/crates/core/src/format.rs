//! The plain-text group file format.
//!
//! ```text
//! name  <label>
//! p     <prime>
//! n     <generator count>
//! pow   <i> = <word>          # f_i^p = word; omitted means f_i^p = 1
//! comm  <i> <j> = <word>      # [f_i, f_j], i > j; omitted means trivial
//! def   <i> = pow <j>         # or: def <i> = comm <j> <k>
//! ```
//!
//! Words are `1` or space-separated `g<k>^<e>` tokens. `#` starts a comment;
//! blank lines are ignored.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::pc::{is_prime, Definition, PcError, PcGroup, PcPresentation, Relation, Word};

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {reason}")]
    Syntax { line: usize, reason: String },
    #[error(transparent)]
    Presentation(#[from] PcError),
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

/// A parsed and validated group file.
#[derive(Clone, Debug)]
pub struct GroupFile {
    pub group: PcGroup,
    /// Where the text came from: a path or a built-in corpus name.
    pub origin: String,
}

pub fn load(path: &Path) -> Result<GroupFile, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|source| ParseError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_named(&text, &path.display().to_string())
}

/// Parses and validates a group file.
pub fn parse(text: &str) -> Result<GroupFile, ParseError> {
    parse_named(text, "<text>")
}

fn parse_named(text: &str, origin: &str) -> Result<GroupFile, ParseError> {
    let presentation = parse_presentation(text)?;
    Ok(GroupFile {
        group: presentation.validate()?,
        origin: origin.to_string(),
    })
}

/// Parses the text without running the consistency checks.
pub fn parse_presentation(text: &str) -> Result<PcPresentation, ParseError> {
    let mut name = None;
    let mut p = None;
    let mut n = None;
    let mut powers: Vec<(usize, usize, Word)> = Vec::new();
    let mut comms: Vec<(usize, usize, usize, Word)> = Vec::new();
    let mut defs: Vec<(usize, usize, Definition)> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let err = |reason: String| ParseError::Syntax { line, reason };
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (keyword, rest) = content
            .split_once(char::is_whitespace)
            .map(|(a, b)| (a, b.trim()))
            .unwrap_or((content, ""));
        match keyword {
            "name" => {
                if rest.is_empty() {
                    return Err(err("empty name".into()));
                }
                set_once(&mut name, rest.to_string(), line, "name")?;
            }
            "p" => {
                let value = parse_int(rest).map_err(err)? as u32;
                if !is_prime(value) {
                    return Err(err(format!("{value} is not prime")));
                }
                set_once(&mut p, value, line, "p")?;
            }
            "n" => set_once(&mut n, parse_int(rest).map_err(err)?, line, "n")?,
            "pow" => {
                let (lhs, rhs) = split_eq(rest).map_err(err)?;
                let i = parse_int(lhs).map_err(err)?;
                powers.push((line, i, parse_word(rhs).map_err(err)?));
            }
            "comm" => {
                let (lhs, rhs) = split_eq(rest).map_err(err)?;
                let ids = parse_ints(lhs).map_err(err)?;
                let [i, j] = ids[..] else {
                    return Err(err("comm takes two generator numbers".into()));
                };
                if i <= j {
                    return Err(err(format!("comm {i} {j}: first index must be larger")));
                }
                comms.push((line, i, j, parse_word(rhs).map_err(err)?));
            }
            "def" => {
                let (lhs, rhs) = split_eq(rest).map_err(err)?;
                let i = parse_int(lhs).map_err(err)?;
                let (kind, args) = rhs.split_once(char::is_whitespace).unwrap_or((rhs, ""));
                let args = parse_ints(args).map_err(err)?;
                let def = match (kind, &args[..]) {
                    ("pow", &[j]) => Definition::Power(j),
                    ("comm", &[j, k]) => Definition::Commutator(j, k),
                    _ => return Err(err(format!("bad definition `{rhs}`"))),
                };
                defs.push((line, i, def));
            }
            other => return Err(err(format!("unknown keyword `{other}`"))),
        }
    }

    let missing = |what: &str| ParseError::Syntax {
        line: text.lines().count(),
        reason: format!("missing `{what}`"),
    };
    let name = name.ok_or_else(|| missing("name"))?;
    let p = p.ok_or_else(|| missing("p"))?;
    let n = n.ok_or_else(|| missing("n"))?;
    let mut presentation = PcPresentation::new(name, p, n);
    for (line, i, w) in powers {
        if presentation.power_relation(i).is_some() {
            return Err(duplicate(line, Relation::Power(i)));
        }
        presentation = presentation.power(i, w);
    }
    for (line, i, j, w) in comms {
        if presentation.commutator_relation(i, j).is_some() {
            return Err(duplicate(line, Relation::Commutator(i, j)));
        }
        presentation = presentation.commutator(i, j, w);
    }
    for (line, i, def) in defs {
        if presentation.definition(i).is_some() {
            return Err(ParseError::Syntax {
                line,
                reason: format!("f{i} defined twice"),
            });
        }
        presentation = presentation.define(i, def);
    }
    Ok(presentation)
}

fn duplicate(line: usize, rel: Relation) -> ParseError {
    ParseError::Syntax {
        line,
        reason: format!("relation {rel} given twice"),
    }
}

fn set_once<T>(slot: &mut Option<T>, value: T, line: usize, what: &str) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(ParseError::Syntax {
            line,
            reason: format!("`{what}` given twice"),
        });
    }
    *slot = Some(value);
    Ok(())
}

fn split_eq(s: &str) -> Result<(&str, &str), String> {
    s.split_once('=')
        .map(|(a, b)| (a.trim(), b.trim()))
        .ok_or_else(|| format!("expected `=` in `{s}`"))
}

fn parse_int(s: &str) -> Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("expected a non-negative integer, got `{s}`"))
}

fn parse_ints(s: &str) -> Result<Vec<usize>, String> {
    s.split_whitespace().map(parse_int).collect()
}

/// Parses the word syntax: `1`, or tokens `g<k>^<e>` (`g<k>` means `e = 1`).
pub fn parse_word(s: &str) -> Result<Word, String> {
    let s = s.trim();
    if s == "1" {
        return Ok(Word::new());
    }
    if s.is_empty() {
        return Err("empty word".into());
    }
    let mut word = Word::new();
    for token in s.split_whitespace() {
        let body = token.strip_prefix('g').ok_or_else(|| format!("bad token `{token}`"))?;
        let (gen, exp) = match body.split_once('^') {
            Some((g, e)) => (g, e.parse::<i64>().map_err(|_| format!("bad exponent in `{token}`"))?),
            None => (body, 1),
        };
        let gen = gen
            .parse::<usize>()
            .map_err(|_| format!("bad generator in `{token}`"))?;
        word.push(gen, exp);
    }
    Ok(word)
}

/// Canonical text form; parsing it gives back an equal presentation.
pub fn serialize(presentation: &PcPresentation) -> String {
    let mut out = String::new();
    writeln!(out, "name {}", presentation.name).unwrap();
    writeln!(out, "p    {}", presentation.p).unwrap();
    writeln!(out, "n    {}", presentation.n).unwrap();
    for (i, w) in presentation.power_relations() {
        writeln!(out, "pow  {i} = {w}").unwrap();
    }
    for ((i, j), w) in presentation.commutator_relations() {
        writeln!(out, "comm {i} {j} = {w}").unwrap();
    }
    for (i, def) in presentation.definitions() {
        writeln!(out, "def  {i} = {def}").unwrap();
    }
    out
}
