//! Line-oriented text format for presentations and move scripts.
//!
//! ```text
//! # comment
//! surgery <name> framing <int>
//! handlebody <name> genus <int>      # longitudes <name>.1 .. <name>.g
//! framing <name>[.i] <int>
//! lk <nameA>[.i] <nameB>[.j] <int>   # symmetric, one line per pair
//! ```
//!
//! Disconnected presentations add `components <k>` and `component <i>`
//! (the latter applies to the declarations that follow it).

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::{valid_name, CircleKind, Move, MoveScript, Presentation, PresentationError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: unknown circle `{name}`")]
    UnknownCircle { line: usize, name: String },
    #[error("line {line}: duplicate id `{name}`")]
    DuplicateId { line: usize, name: String },
    #[error("line {line}: lk {a} {b} already declared with value {previous}")]
    AsymmetricLinking {
        line: usize,
        a: String,
        b: String,
        previous: i64,
    },
    #[error("line {line}: lk {a} {b} declared twice")]
    DuplicateLinking { line: usize, a: String, b: String },
    #[error("line {line}: framing of `{name}` conflicts with earlier value {previous}")]
    FramingConflict { line: usize, name: String, previous: i64 },
}

impl FormatError {
    pub fn line(&self) -> usize {
        match self {
            FormatError::Syntax { line, .. }
            | FormatError::UnknownCircle { line, .. }
            | FormatError::DuplicateId { line, .. }
            | FormatError::AsymmetricLinking { line, .. }
            | FormatError::DuplicateLinking { line, .. }
            | FormatError::FramingConflict { line, .. } => *line,
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

fn int(line: usize, tok: &str) -> Result<i64, FormatError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected an integer, found `{tok}`")))
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

/// Without `components` directives a file is one diagram in S³, so the
/// empty file is the sphere.
pub fn parse(text: &str) -> Result<Presentation, FormatError> {
    let mut p = Presentation::sphere();
    let mut component = 0usize;
    let mut declared_components: Option<(usize, usize)> = None;
    // explicitly declared framings and linking numbers, keyed by circle name
    let mut framings: HashMap<String, i64> = HashMap::new();
    let mut links: HashMap<(String, String), i64> = HashMap::new();

    let resolve = |p: &Presentation, line: usize, name: &str| -> Result<usize, FormatError> {
        p.circle_index(name).ok_or_else(|| FormatError::UnknownCircle {
            line,
            name: name.to_string(),
        })
    };
    let map_err = |line: usize, e: PresentationError| match e {
        PresentationError::DuplicateId(name) => FormatError::DuplicateId { line, name },
        other => syntax(line, other.to_string()),
    };

    for (line, toks) in content_lines(text) {
        match toks.as_slice() {
            ["surgery", name, "framing", v] => {
                let v = int(line, v)?;
                if !valid_name(name) {
                    return Err(syntax(line, format!("invalid name `{name}`")));
                }
                p.add_surgery_in(name, v, component).map_err(|e| map_err(line, e))?;
                framings.insert(name.to_string(), v);
            }
            ["handlebody", name, "genus", g] => {
                let g = int(line, g)?;
                if g < 0 {
                    return Err(syntax(line, "genus must be nonnegative"));
                }
                if !valid_name(name) {
                    return Err(syntax(line, format!("invalid name `{name}`")));
                }
                p.add_handlebody_in(name, g as usize, component)
                    .map_err(|e| map_err(line, e))?;
            }
            ["framing", name, v] => {
                let v = int(line, v)?;
                let i = resolve(&p, line, name)?;
                if let Some(&prev) = framings.get(*name) {
                    if prev != v {
                        return Err(FormatError::FramingConflict {
                            line,
                            name: name.to_string(),
                            previous: prev,
                        });
                    }
                }
                framings.insert(name.to_string(), v);
                p.set_framing(i, v).map_err(|e| map_err(line, e))?;
            }
            ["lk", a, b, v] => {
                let v = int(line, v)?;
                let i = resolve(&p, line, a)?;
                let j = resolve(&p, line, b)?;
                if i == j {
                    if let Some(&prev) = framings.get(*a) {
                        if prev != v {
                            return Err(FormatError::FramingConflict {
                                line,
                                name: a.to_string(),
                                previous: prev,
                            });
                        }
                    }
                    framings.insert(a.to_string(), v);
                    p.set_framing(i, v).map_err(|e| map_err(line, e))?;
                    continue;
                }
                let key = if a <= b {
                    (a.to_string(), b.to_string())
                } else {
                    (b.to_string(), a.to_string())
                };
                if let Some(&prev) = links.get(&key) {
                    return Err(if prev == v {
                        FormatError::DuplicateLinking {
                            line,
                            a: a.to_string(),
                            b: b.to_string(),
                        }
                    } else {
                        FormatError::AsymmetricLinking {
                            line,
                            a: a.to_string(),
                            b: b.to_string(),
                            previous: prev,
                        }
                    });
                }
                links.insert(key, v);
                p.set_linking(i, j, v).map_err(|e| map_err(line, e))?;
            }
            ["component", i] => {
                let i = int(line, i)?;
                if i < 0 {
                    return Err(syntax(line, "component index must be nonnegative"));
                }
                component = i as usize;
            }
            ["components", k] => {
                let k = int(line, k)?;
                if k < 0 {
                    return Err(syntax(line, "component count must be nonnegative"));
                }
                declared_components = Some((line, k as usize));
            }
            [kw, ..] if ["surgery", "handlebody", "framing", "lk", "component", "components"].contains(kw) => {
                return Err(syntax(line, format!("wrong number of fields for `{kw}`")));
            }
            [kw, ..] => return Err(syntax(line, format!("unknown directive `{kw}`"))),
            [] => unreachable!(),
        }
    }
    if let Some((line, k)) = declared_components {
        p.set_component_count(k)
            .map_err(|_| syntax(line, format!("{k} components declared but more are used")))?;
    }
    p.canonicalize();
    Ok(p)
}

/// Canonical text of a presentation; `parse(render(p)) == p`.
pub fn render(p: &Presentation) -> String {
    let mut out = String::new();
    let all_zero =
        p.handlebodies().iter().all(|h| h.component() == 0) && p.circles().iter().all(|c| c.component() == 0);
    let tagged = !(all_zero && p.component_count() == 1);
    if tagged {
        writeln!(out, "components {}", p.component_count()).unwrap();
    }
    let mut current = 0;
    let mut switch = |out: &mut String, comp: usize| {
        if tagged && comp != current {
            writeln!(out, "component {comp}").unwrap();
            current = comp;
        }
    };
    for h in p.handlebodies() {
        switch(&mut out, h.component());
        writeln!(out, "handlebody {} genus {}", h.name(), h.genus()).unwrap();
    }
    for i in p.surgery_indices() {
        let c = &p.circles()[i];
        switch(&mut out, c.component());
        writeln!(out, "surgery {} framing {}", c.name(), p.framing(i)).unwrap();
    }
    for (i, c) in p.circles().iter().enumerate() {
        if matches!(c.kind(), CircleKind::Longitude { .. }) && p.framing(i) != 0 {
            writeln!(out, "framing {} {}", c.name(), p.framing(i)).unwrap();
        }
    }
    let n = p.circles().len();
    for i in 0..n {
        for j in i + 1..n {
            let v = p.linking(i, j);
            if v != 0 {
                writeln!(out, "lk {} {} {}", p.circles()[i].name(), p.circles()[j].name(), v).unwrap();
            }
        }
    }
    out
}

fn sign(line: usize, tok: &str) -> Result<i64, FormatError> {
    match tok {
        "+1" | "1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(syntax(line, format!("expected +1 or -1, found `{tok}`"))),
    }
}

pub fn parse_script(text: &str) -> Result<MoveScript, FormatError> {
    let mut moves = Vec::new();
    for (line, toks) in content_lines(text) {
        let m = match toks.as_slice() {
            ["blowup", s] => Move::BlowUp(sign(line, s)?),
            ["blowdown", name] => Move::BlowDown(name.to_string()),
            ["slide", target, "over", over, s] => Move::Slide {
                target: target.to_string(),
                over: over.to_string(),
                sign: sign(line, s)?,
            },
            [kw, ..] if ["blowup", "blowdown", "slide"].contains(kw) => {
                return Err(syntax(line, format!("malformed `{kw}` move")))
            }
            [kw, ..] => return Err(syntax(line, format!("unknown move `{kw}`"))),
            [] => unreachable!(),
        };
        moves.push(m);
    }
    Ok(MoveScript { moves })
}

pub fn render_script(script: &MoveScript) -> String {
    let s = |v: i64| if v > 0 { "+1" } else { "-1" };
    script
        .moves
        .iter()
        .map(|m| match m {
            Move::BlowUp(v) => format!("blowup {}\n", s(*v)),
            Move::BlowDown(n) => format!("blowdown {n}\n"),
            Move::Slide { target, over, sign } => format!("slide {target} over {over} {}\n", s(*sign)),
        })
        .collect()
}
