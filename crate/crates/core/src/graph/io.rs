use std::io::{BufRead, Write};

use super::{Graph, GraphError};

/// Parses METIS text. See [`read_metis`].
pub fn load_metis(text: &str) -> Result<Graph, GraphError> {
    read_metis(text.as_bytes())
}

/// Reads a graph in METIS format.
///
/// The first non-comment line is `n m [fmt [ncon]]`; line `i` after it lists
/// the 1-indexed neighbors of vertex `i`. Lines starting with `%` are
/// comments. Vertex sizes, vertex weights and edge weights announced by `fmt`
/// are skipped. Missing trailing vertex lines are read as isolated vertices.
pub fn read_metis<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut lines = reader.lines().enumerate().map(|(i, l)| (i + 1, l));

    let (header_line, header) = loop {
        match lines.next() {
            None => {
                return Err(GraphError::MalformedHeader {
                    line: 0,
                    reason: "no header line".into(),
                })
            }
            Some((i, line)) => {
                let line = line?;
                if !line.starts_with('%') {
                    break (i, line);
                }
            }
        }
    };
    let header_err = |reason: &str| GraphError::MalformedHeader {
        line: header_line,
        reason: reason.into(),
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() < 2 || fields.len() > 4 {
        return Err(header_err("expected \"n m [fmt [ncon]]\""));
    }
    let n: usize = fields[0].parse().map_err(|_| header_err("bad vertex count"))?;
    let _m: usize = fields[1].parse().map_err(|_| header_err("bad edge count"))?;
    let fmt = fields.get(2).copied().unwrap_or("0");
    if fmt.len() > 3 || !fmt.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(header_err("format code must be up to three 0/1 digits"));
    }
    let fmt = format!("{fmt:0>3}");
    let has_sizes = fmt.as_bytes()[0] == b'1';
    let has_vertex_weights = fmt.as_bytes()[1] == b'1';
    let has_edge_weights = fmt.as_bytes()[2] == b'1';
    let ncon: usize = match fields.get(3) {
        Some(s) => s.parse().map_err(|_| header_err("bad ncon"))?,
        None => 1,
    };
    let skip_prefix = usize::from(has_sizes) + if has_vertex_weights { ncon } else { 0 };

    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut vertex = 0;
    for (line_no, line) in lines {
        let line = line?;
        if line.starts_with('%') {
            continue;
        }
        if vertex == n {
            if line.trim().is_empty() {
                continue;
            }
            return Err(GraphError::Parse {
                line: line_no,
                reason: format!("more than {n} vertex lines"),
            });
        }
        let mut tokens = line.split_whitespace().skip(skip_prefix);
        while let Some(tok) = tokens.next() {
            let id: usize = tok.parse().map_err(|_| GraphError::Parse {
                line: line_no,
                reason: format!("bad neighbor id {tok:?}"),
            })?;
            if id == 0 || id > n {
                return Err(GraphError::NeighborOutOfRange { line: line_no, id, n });
            }
            if id - 1 == vertex {
                return Err(GraphError::SelfLoop { v: vertex });
            }
            adjacency[vertex].push(id - 1);
            if has_edge_weights && tokens.next().is_none() {
                return Err(GraphError::Parse {
                    line: line_no,
                    reason: "missing edge weight".into(),
                });
            }
        }
        vertex += 1;
    }

    for list in adjacency.iter_mut() {
        list.sort_unstable();
        list.dedup();
    }
    for (u, list) in adjacency.iter().enumerate() {
        for &v in list {
            if adjacency[v].binary_search(&u).is_err() {
                return Err(GraphError::Asymmetric { u: u + 1, v: v + 1 });
            }
        }
    }
    Ok(Graph::from_adjacency_unchecked(adjacency))
}

/// Writes `g` in unweighted METIS format.
pub fn write_metis<W: Write>(g: &Graph, out: &mut W) -> std::io::Result<()> {
    writeln!(out, "{} {}", g.num_vertices(), g.num_edges())?;
    for v in g.vertices() {
        let line: Vec<String> = g.neighbors(v).iter().map(|w| (w + 1).to_string()).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

/// Parses a plain edge list. See [`read_edge_list`].
pub fn load_edge_list(text: &str) -> Result<Graph, GraphError> {
    read_edge_list(text.as_bytes())
}

/// Reads `u v` pairs, one per line, 0-indexed; `#` starts a comment line.
/// The vertex count is one more than the largest id seen.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut edges = Vec::new();
    let mut n = 0;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let ids: Vec<&str> = trimmed.split_whitespace().collect();
        if ids.len() != 2 {
            return Err(GraphError::Parse {
                line: i + 1,
                reason: "expected \"u v\"".into(),
            });
        }
        let parse = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::Parse {
                line: i + 1,
                reason: format!("bad vertex id {s:?}"),
            })
        };
        let (u, v) = (parse(ids[0])?, parse(ids[1])?);
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Graph::from_edge_list(n, &edges)
}
