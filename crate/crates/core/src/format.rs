//! The text lattice format.
//!
//! ```text
//! # comment
//! oml mo2
//! elements: 0 a a' b b' 1
//! bottom: 0
//! top: 1
//! leq: 0 a          # generating pairs, closed reflexively and transitively
//! perp: a a'        # one line per complement pair
//! end
//! ```

use thiserror::Error;

use crate::oml::{LatticeData, Ortholattice};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("{line}:{col}: duplicate element `{name}`")]
    DuplicateElement { line: usize, col: usize, name: String },
    #[error("missing `{section}` section{}", if .detail.is_empty() { String::new() } else { format!(" ({})", .detail) })]
    MissingSection { section: &'static str, detail: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Stage {
    Header,
    Elements,
    Bottom,
    Top,
    Leq,
    Perp,
    End,
    Done,
}

impl Stage {
    fn keyword(self) -> &'static str {
        match self {
            Stage::Header => "oml",
            Stage::Elements => "elements",
            Stage::Bottom => "bottom",
            Stage::Top => "top",
            Stage::Leq => "leq",
            Stage::Perp => "perp",
            Stage::End | Stage::Done => "end",
        }
    }
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token { text: &line[s..i], col: line[..s].chars().count() + 1 });
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// The section expected next while `stage` is open.
fn missing(stage: Stage, leq: &[(usize, usize)]) -> &'static str {
    match stage {
        Stage::Leq if !leq.is_empty() => "perp",
        Stage::Perp => "end",
        _ => stage.keyword(),
    }
}

pub fn parse_oml(text: &str) -> Result<LatticeData, ParseError> {
    let mut stage = Stage::Header;
    let mut name = String::new();
    let mut labels: Vec<String> = Vec::new();
    let mut bottom = 0;
    let mut top = 0;
    let mut leq = Vec::new();
    let mut perp = Vec::new();
    let mut has_perp: Vec<bool> = Vec::new();
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks = tokens(content);
        if toks.is_empty() {
            continue;
        }
        last_line = line_no;
        let syntax = |col: usize, msg: &str| ParseError::Syntax { line: line_no, col, msg: msg.to_string() };
        if stage == Stage::Done {
            return Err(syntax(toks[0].col, "content after `end`"));
        }
        if let Some(t) = toks.iter().find(|t| !t.text.is_ascii()) {
            return Err(syntax(t.col, "non-ASCII token"));
        }
        let found = match toks[0].text {
            "oml" => Stage::Header,
            "elements:" => Stage::Elements,
            "bottom:" => Stage::Bottom,
            "top:" => Stage::Top,
            "leq:" => Stage::Leq,
            "perp:" => Stage::Perp,
            "end" => Stage::End,
            _ => return Err(syntax(toks[0].col, &format!("unknown keyword `{}`", toks[0].text))),
        };
        // leq and perp lines repeat; perp lines are optional only when
        // nothing is left to pair, which is checked at the end
        let allowed = found == stage
            || (found == Stage::Perp && stage == Stage::Leq && !leq.is_empty())
            || (found == Stage::End && stage == Stage::Perp);
        if !allowed {
            if found < stage {
                return Err(syntax(toks[0].col, &format!("unexpected `{}`", found.keyword())));
            }
            return Err(ParseError::MissingSection {
                section: missing(stage, &leq),
                detail: format!("before line {line_no}"),
            });
        }
        let resolve = |t: &Token<'_>, labels: &[String]| {
            labels
                .iter()
                .position(|l| l == t.text)
                .ok_or_else(|| syntax(t.col, &format!("unknown element `{}`", t.text)))
        };
        let arity = |n: usize| {
            if toks.len() == n + 1 {
                Ok(())
            } else {
                let col = toks.get(n + 1).map_or(toks[0].col, |t| t.col);
                Err(syntax(col, &format!("`{}` takes {n} argument(s)", found.keyword())))
            }
        };
        match found {
            Stage::Header => {
                arity(1)?;
                name = toks[1].text.to_string();
                stage = Stage::Elements;
            }
            Stage::Elements => {
                if toks.len() < 2 {
                    return Err(syntax(toks[0].col, "no elements listed"));
                }
                for t in &toks[1..] {
                    if labels.iter().any(|l| l == t.text) {
                        return Err(ParseError::DuplicateElement {
                            line: line_no,
                            col: t.col,
                            name: t.text.to_string(),
                        });
                    }
                    labels.push(t.text.to_string());
                }
                has_perp = vec![false; labels.len()];
                stage = Stage::Bottom;
            }
            Stage::Bottom => {
                arity(1)?;
                bottom = resolve(&toks[1], &labels)?;
                stage = Stage::Top;
            }
            Stage::Top => {
                arity(1)?;
                top = resolve(&toks[1], &labels)?;
                stage = Stage::Leq;
            }
            Stage::Leq => {
                arity(2)?;
                leq.push((resolve(&toks[1], &labels)?, resolve(&toks[2], &labels)?));
            }
            Stage::Perp => {
                arity(2)?;
                let (a, b) = (resolve(&toks[1], &labels)?, resolve(&toks[2], &labels)?);
                if a == b && labels.len() != 1 {
                    return Err(syntax(toks[1].col, "self-complement only allowed in the one-element lattice"));
                }
                for (x, t) in [(a, &toks[1]), (b, &toks[2])] {
                    if has_perp[x] && !(a == b && t.col == toks[2].col) {
                        return Err(syntax(t.col, &format!("`{}` already has a complement", t.text)));
                    }
                    has_perp[x] = true;
                }
                perp.push((a, b));
                stage = Stage::Perp;
            }
            Stage::End | Stage::Done => {
                arity(0)?;
                stage = Stage::Done;
            }
        }
    }

    if last_line == 0 {
        return Err(ParseError::Syntax { line: 1, col: 1, msg: "empty input".into() });
    }
    if stage != Stage::Done {
        return Err(ParseError::MissingSection { section: missing(stage, &leq), detail: "at end of input".into() });
    }
    if let Some(x) = has_perp.iter().position(|&p| !p) {
        return Err(ParseError::MissingSection {
            section: "perp",
            detail: format!("no complement for `{}`", labels[x]),
        });
    }
    Ok(LatticeData { name, labels, leq, perp, bottom, top })
}

/// Renders a lattice with its cover relation as the generating pairs.
pub fn write_oml(l: &Ortholattice) -> String {
    let data = l.to_data();
    let lab = |x: usize| data.labels[x].as_str();
    let mut out = String::new();
    out.push_str(&format!("oml {}\n", data.name));
    out.push_str(&format!("elements: {}\n", data.labels.join(" ")));
    out.push_str(&format!("bottom: {}\n", lab(data.bottom)));
    out.push_str(&format!("top: {}\n", lab(data.top)));
    for &(a, b) in &data.leq {
        out.push_str(&format!("leq: {} {}\n", lab(a), lab(b)));
    }
    for &(a, b) in &data.perp {
        out.push_str(&format!("perp: {} {}\n", lab(a), lab(b)));
    }
    out.push_str("end\n");
    out
}
