//! Line-oriented text formats.
//!
//! Tiling files:
//! ```text
//! polygon 6
//! arc 1 4
//! arc 1 2
//! ```
//!
//! Quiver files (arrow ids dense from 1, vertices numbered from 1):
//! ```text
//! vertices 3
//! arrow 1 1 2
//! arrow 2 3 2
//! rel 1 2
//! ```

use tilings_core::quiver::Quiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileKind {
    Tiling,
    Quiver,
}

pub fn sniff(text: &str) -> Option<FileKind> {
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if line.starts_with("polygon") {
            return Some(FileKind::Tiling);
        }
        if line.starts_with("vertices") {
            return Some(FileKind::Quiver);
        }
        return None;
    }
    None
}

fn fields(line: &str) -> Vec<&str> {
    line.split_whitespace().collect()
}

fn parse_num(s: &str, what: &str) -> std::result::Result<usize, String> {
    s.parse()
        .map_err(|_| format!("bad {what} {s:?} in input file"))
}

/// Header `polygon <N>` followed by `arc <i> <j>` lines. Duplicate arcs are
/// rejected; crossings are left to the consuming command.
pub fn parse_tiling(text: &str) -> std::result::Result<(usize, Vec<(usize, usize)>), String> {
    let mut points: Option<usize> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let f = fields(line);
        match (f.as_slice(), points) {
            (["polygon", n], None) => points = Some(parse_num(n, "vertex count")?),
            (["polygon", ..], Some(_)) => {
                return Err(format!("line {}: repeated polygon header", lineno + 1))
            }
            (["arc", i, j], Some(n)) => {
                let i = parse_num(i, "vertex")?;
                let j = parse_num(j, "vertex")?;
                if i < 1 || i > n || j < 1 || j > n {
                    return Err(format!("line {}: vertex out of range 1..={n}", lineno + 1));
                }
                if i == j {
                    return Err(format!("line {}: degenerate arc", lineno + 1));
                }
                let arc = (i.min(j), i.max(j));
                if arcs.contains(&arc) {
                    return Err(format!("line {}: duplicate arc", lineno + 1));
                }
                arcs.push(arc);
            }
            (["arc", ..], None) => {
                return Err(format!("line {}: arc before polygon header", lineno + 1))
            }
            _ => return Err(format!("line {}: unrecognized line {line:?}", lineno + 1)),
        }
    }
    match points {
        Some(n) => Ok((n, arcs)),
        None => Err("missing polygon header".into()),
    }
}

/// Canonical form: sorted, normalized arcs.
pub fn print_tiling(points: usize, arcs: &[(usize, usize)]) -> String {
    let mut sorted: Vec<(usize, usize)> = arcs.iter().map(|&(i, j)| (i.min(j), i.max(j))).collect();
    sorted.sort_unstable();
    let mut out = format!("polygon {points}\n");
    for (i, j) in sorted {
        out.push_str(&format!("arc {i} {j}\n"));
    }
    out
}

/// `vertices <count>`, `arrow <id> <src> <tgt>` with ids dense from 1, and
/// `rel <id1> <id2>` lines.
pub fn parse_quiver(text: &str) -> std::result::Result<Quiver, String> {
    let mut count: Option<usize> = None;
    let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
    let mut rels: Vec<(usize, usize)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let f = fields(line);
        let bad = |what: &str| format!("line {}: {what}", lineno + 1);
        match (f.as_slice(), count) {
            (["vertices", n], None) => count = Some(parse_num(n, "vertex count")?),
            (["vertices", ..], Some(_)) => return Err(bad("repeated vertices header")),
            (["arrow", id, s, t], Some(n)) => {
                let id = parse_num(id, "arrow id")?;
                let s = parse_num(s, "vertex")?;
                let t = parse_num(t, "vertex")?;
                if s < 1 || s > n || t < 1 || t > n {
                    return Err(bad("arrow endpoint out of range"));
                }
                arrows.push((id, s - 1, t - 1));
            }
            (["rel", a, b], Some(_)) => {
                rels.push((parse_num(a, "arrow id")?, parse_num(b, "arrow id")?));
            }
            (["arrow", ..] | ["rel", ..], None) => return Err(bad("line before vertices header")),
            _ => return Err(format!("line {}: unrecognized line {line:?}", lineno + 1)),
        }
    }
    let count = count.ok_or("missing vertices header")?;
    arrows.sort_unstable();
    for (pos, &(id, _, _)) in arrows.iter().enumerate() {
        if id != pos + 1 {
            return Err(format!(
                "arrow ids must be dense from 1, missing {}",
                pos + 1
            ));
        }
    }
    let m = arrows.len();
    for &(a, b) in &rels {
        if a < 1 || a > m || b < 1 || b > m {
            return Err(format!("relation refers to unknown arrow ({a}, {b})"));
        }
    }
    let labels = (1..=count).map(|v| v.to_string()).collect();
    Quiver::new(
        labels,
        arrows.into_iter().map(|(_, s, t)| (s, t)).collect(),
        rels.into_iter().map(|(a, b)| (a - 1, b - 1)),
    )
    .map_err(|e| e.to_string())
}

pub fn print_quiver(q: &Quiver) -> String {
    let mut out = format!("vertices {}\n", q.vertex_count());
    for (id, a) in q.arrows().iter().enumerate() {
        out.push_str(&format!(
            "arrow {} {} {}\n",
            id + 1,
            a.source + 1,
            a.target + 1
        ));
    }
    for &(a, b) in q.relations() {
        out.push_str(&format!("rel {} {}\n", a + 1, b + 1));
    }
    out
}
