//! Per-edge tables. One record per line:
//!
//! ```text
//! # tags v1       edge letters        (t = tunnel, h = highway)
//! # ttf v1        edge k t1 v1 .. tk vk
//! # live v1       edge weight
//! # turns v1      in_edge out_edge cost   (cost `x` = forbidden)
//! ```

use std::io::{BufRead, Write};

use super::IoError;
use crate::applications::{TravelTimeFunction, TurnCost, TurnModel};
use crate::graph::{EdgeId, EdgeTags, Graph, Weight, INFINITY};

const VERSION: u32 = 1;

/// Yields `(line number, tokens)` for every record line, checking an
/// optional `# <kind> v<N>` header on the first non-blank line.
fn records(input: impl BufRead, kind: &str) -> Result<Vec<(usize, Vec<String>)>, IoError> {
    let mut out = Vec::new();
    let mut first = true;
    for (i, text) in input.lines().enumerate() {
        let line = i + 1;
        let text = text?;
        let trimmed = text.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            if first {
                let tokens: Vec<&str> = comment.split_whitespace().collect();
                if let [k, v] = tokens[..] {
                    if let Some(version) = v.strip_prefix('v').and_then(|v| v.parse::<u32>().ok()) {
                        if k != kind {
                            return Err(IoError::parse(line, format!("expected a {kind} file, found a {k} header")));
                        }
                        if version != VERSION {
                            return Err(IoError::parse(line, format!("unsupported {kind} format version {version}")));
                        }
                    }
                }
            }
            first = false;
            continue;
        }
        first = false;
        out.push((line, trimmed.split_whitespace().map(str::to_string).collect()));
    }
    Ok(out)
}

fn int<T: std::str::FromStr>(tokens: &[String], index: usize, line: usize, what: &str) -> Result<T, IoError> {
    let token = tokens.get(index).ok_or_else(|| IoError::parse(line, format!("missing {what}")))?;
    token.parse().map_err(|_| IoError::parse(line, format!("{what} {token:?} is not a valid integer")))
}

fn edge_index(tokens: &[String], index: usize, line: usize, num_edges: usize) -> Result<EdgeId, IoError> {
    let e: EdgeId = int(tokens, index, line, "edge index")?;
    if e as usize >= num_edges {
        return Err(IoError::parse(line, format!("unknown edge index {e} ({num_edges} edges)")));
    }
    Ok(e)
}

fn no_trailing(tokens: &[String], expected: usize, line: usize) -> Result<(), IoError> {
    if tokens.len() > expected {
        return Err(IoError::parse(line, format!("unexpected trailing token {:?}", tokens[expected])));
    }
    Ok(())
}

fn mark_seen(seen: &mut [bool], edge: EdgeId, line: usize) -> Result<(), IoError> {
    if std::mem::replace(&mut seen[edge as usize], true) {
        return Err(IoError::parse(line, format!("second record for edge {edge}")));
    }
    Ok(())
}

/// Tags per edge; unlisted edges carry none.
pub fn read_tags_file(input: impl BufRead, graph: &Graph) -> Result<Vec<EdgeTags>, IoError> {
    let m = graph.num_edges();
    let mut tags = vec![EdgeTags::NONE; m];
    let mut seen = vec![false; m];
    for (line, tokens) in records(input, "tags")? {
        let e = edge_index(&tokens, 0, line, m)?;
        mark_seen(&mut seen, e, line)?;
        let letters = tokens.get(1).map(String::as_str).unwrap_or("");
        no_trailing(&tokens, 2, line)?;
        for c in letters.chars() {
            match c {
                't' => tags[e as usize].tunnel = true,
                'h' => tags[e as usize].highway = true,
                _ => return Err(IoError::parse(line, format!("unknown tag {c:?} for edge {e}"))),
            }
        }
    }
    Ok(tags)
}

pub fn write_tags_file(tags: &[EdgeTags], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "# tags v{VERSION}")?;
    for (e, t) in tags.iter().enumerate().filter(|(_, t)| !t.is_empty()) {
        let letters = match (t.tunnel, t.highway) {
            (true, true) => "th",
            (true, false) => "t",
            _ => "h",
        };
        writeln!(out, "{e} {letters}")?;
    }
    Ok(())
}

/// Travel time function per edge; unlisted edges get the constant function
/// of their graph weight.
pub fn read_ttf_file(input: impl BufRead, graph: &Graph) -> Result<Vec<TravelTimeFunction>, IoError> {
    let m = graph.num_edges();
    let mut functions: Vec<TravelTimeFunction> = graph.weights().iter().map(|&w| TravelTimeFunction::constant(w)).collect();
    let mut seen = vec![false; m];
    for (line, tokens) in records(input, "ttf")? {
        let e = edge_index(&tokens, 0, line, m)?;
        mark_seen(&mut seen, e, line)?;
        let k: usize = int(&tokens, 1, line, "breakpoint count")?;
        if tokens.len() != 2 + 2 * k {
            return Err(IoError::parse(line, format!("edge {e}: expected {k} breakpoints, found {} tokens", tokens.len() - 2)));
        }
        let points = (0..k)
            .map(|i| Ok((int(&tokens, 2 + 2 * i, line, "time")?, int(&tokens, 3 + 2 * i, line, "travel time")?)))
            .collect::<Result<Vec<_>, IoError>>()?;
        functions[e as usize] =
            TravelTimeFunction::new(points).map_err(|source| IoError::Ttf { line, edge: e, source })?;
    }
    Ok(functions)
}

/// Writes only non-constant functions and constants differing from the graph weight.
pub fn write_ttf_file(functions: &[TravelTimeFunction], graph: &Graph, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "# ttf v{VERSION}")?;
    for (e, f) in functions.iter().enumerate() {
        if f.points().len() == 1 && f.points()[0] == (0, graph.weights()[e]) {
            continue;
        }
        write!(out, "{e} {}", f.points().len())?;
        for &(t, v) in f.points() {
            write!(out, " {t} {v}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Live weight per edge, `None` for unlisted edges.
pub fn read_live_file(input: impl BufRead, graph: &Graph) -> Result<Vec<Option<Weight>>, IoError> {
    let m = graph.num_edges();
    let mut live = vec![None; m];
    for (line, tokens) in records(input, "live")? {
        let e = edge_index(&tokens, 0, line, m)?;
        if live[e as usize].is_some() {
            return Err(IoError::parse(line, format!("second record for edge {e}")));
        }
        let w: Weight = int(&tokens, 1, line, "weight")?;
        no_trailing(&tokens, 2, line)?;
        if w >= INFINITY {
            return Err(IoError::parse(line, format!("weight {w} too large")));
        }
        live[e as usize] = Some(w);
    }
    Ok(live)
}

pub fn write_live_file(live: &[Option<Weight>], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "# live v{VERSION}")?;
    for (e, w) in live.iter().enumerate() {
        if let Some(w) = w {
            writeln!(out, "{e} {w}")?;
        }
    }
    Ok(())
}

pub fn read_turns_file(input: impl BufRead, graph: &Graph) -> Result<TurnModel, IoError> {
    let m = graph.num_edges();
    let tails = graph.tails();
    let mut model = TurnModel::new();
    for (line, tokens) in records(input, "turns")? {
        let a = edge_index(&tokens, 0, line, m)?;
        let b = edge_index(&tokens, 1, line, m)?;
        if graph.head(a) != tails[b as usize] {
            return Err(IoError::parse(line, format!("turn from edge {a} into edge {b}: edges do not meet")));
        }
        let cost = match tokens.get(2).map(String::as_str) {
            Some("x") => TurnCost::Forbidden,
            _ => {
                let c: Weight = int(&tokens, 2, line, "turn cost")?;
                if c >= INFINITY {
                    return Err(IoError::parse(line, format!("turn cost {c} too large")));
                }
                TurnCost::Cost(c)
            }
        };
        no_trailing(&tokens, 3, line)?;
        model.insert(a, b, cost);
    }
    Ok(model)
}

pub fn write_turns_file(model: &TurnModel, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "# turns v{VERSION}")?;
    for (a, b, cost) in model.entries() {
        match cost {
            TurnCost::Cost(c) => writeln!(out, "{a} {b} {c}")?,
            TurnCost::Forbidden => writeln!(out, "{a} {b} x")?,
        }
    }
    Ok(())
}
