use std::io::{BufRead, Write};

use super::IoError;
use crate::graph::{Graph, InputEdge, NodeId, Weight, INFINITY};

fn number<T: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T, IoError> {
    let token = token.ok_or_else(|| IoError::parse(line, format!("missing {what}")))?;
    token.parse().map_err(|_| IoError::parse(line, format!("{what} {token:?} is not an integer")))
}

/// Reads a 9th DIMACS challenge `.gr` file: `p sp n m`, then `a u v w` with
/// 1-based node ids.
pub fn read_dimacs_gr(input: impl BufRead) -> Result<Graph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut last_line = 0;
    for (i, text) in input.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let text = text?;
        let mut tokens = text.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if header.is_some() {
                    return Err(IoError::parse(line, "second problem line"));
                }
                if tokens.next() != Some("sp") {
                    return Err(IoError::parse(line, "expected \"p sp <nodes> <arcs>\""));
                }
                let n: usize = number(tokens.next(), line, "node count")?;
                let m: usize = number(tokens.next(), line, "arc count")?;
                header = Some((n, m));
                edges.reserve(m);
            }
            Some("a") => {
                let (n, _) = header.ok_or_else(|| IoError::parse(line, "arc before problem line"))?;
                let u: u64 = number(tokens.next(), line, "tail")?;
                let v: u64 = number(tokens.next(), line, "head")?;
                let w: u64 = number(tokens.next(), line, "weight")?;
                for id in [u, v] {
                    if id == 0 || id > n as u64 {
                        return Err(IoError::parse(line, format!("node id {id} out of range 1..={n}")));
                    }
                }
                if w >= INFINITY as u64 {
                    return Err(IoError::parse(line, format!("weight {w} too large")));
                }
                edges.push(InputEdge::new((u - 1) as NodeId, (v - 1) as NodeId, w as Weight));
            }
            Some(other) => return Err(IoError::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| IoError::parse(last_line.max(1), "missing problem line"))?;
    if edges.len() != m {
        return Err(IoError::parse(last_line, format!("problem line announces {m} arcs, found {}", edges.len())));
    }
    Ok(Graph::build(n, &edges)?)
}

/// Writes arcs in edge id order, so ids survive a round trip.
pub fn write_dimacs_gr(graph: &Graph, out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "p sp {} {}", graph.num_nodes(), graph.num_edges())?;
    for e in graph.edge_list() {
        writeln!(out, "a {} {} {}", e.tail + 1, e.head + 1, e.weight)?;
    }
    Ok(())
}

const COORD_SCALE: f64 = 1_000_000.0;

/// Reads a `.co` file (`p aux sp co n`, then `v id x y` with integer
/// micro-degrees, x = longitude). Returns (latitude, longitude) per node.
pub fn read_coordinates(input: impl BufRead) -> Result<Vec<(f64, f64)>, IoError> {
    let mut coords: Option<Vec<Option<(f64, f64)>>> = None;
    let mut last_line = 0;
    for (i, text) in input.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let text = text?;
        let tokens: Vec<&str> = text.split_whitespace().collect();
        match tokens.first().copied() {
            None | Some("c") => {}
            Some("p") => {
                if tokens.len() != 5 || tokens[1..4] != ["aux", "sp", "co"] {
                    return Err(IoError::parse(line, "expected \"p aux sp co <nodes>\""));
                }
                let n: usize = number(Some(tokens[4]), line, "node count")?;
                coords = Some(vec![None; n]);
            }
            Some("v") => {
                let table = coords.as_mut().ok_or_else(|| IoError::parse(line, "coordinate before problem line"))?;
                let id: usize = number(tokens.get(1).copied(), line, "node id")?;
                let x: i64 = number(tokens.get(2).copied(), line, "x coordinate")?;
                let y: i64 = number(tokens.get(3).copied(), line, "y coordinate")?;
                if id == 0 || id > table.len() {
                    return Err(IoError::parse(line, format!("node id {id} out of range 1..={}", table.len())));
                }
                table[id - 1] = Some((y as f64 / COORD_SCALE, x as f64 / COORD_SCALE));
            }
            Some(other) => return Err(IoError::parse(line, format!("unknown line type {other:?}"))),
        }
    }
    let coords = coords.ok_or_else(|| IoError::parse(last_line.max(1), "missing problem line"))?;
    coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| IoError::parse(last_line, format!("no coordinate for node {}", i + 1))))
        .collect()
}

pub fn write_coordinates(coords: &[(f64, f64)], out: &mut impl Write) -> std::io::Result<()> {
    writeln!(out, "p aux sp co {}", coords.len())?;
    for (i, &(lat, lon)) in coords.iter().enumerate() {
        writeln!(out, "v {} {} {}", i + 1, (lon * COORD_SCALE).round() as i64, (lat * COORD_SCALE).round() as i64)?;
    }
    Ok(())
}
