//! Vertex list syntax for `--leaders` / `--targets`: comma separated ids or
//! inclusive ranges, e.g. `1,4..6,9`. An empty string is the empty set.

use anyhow::{bail, Context, Result};
use targetctl::VertexSet;

pub fn parse_vertex_spec(spec: &str) -> Result<VertexSet> {
    let mut out = VertexSet::new();
    for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once("..") {
            Some((a, b)) => {
                let lo = parse_id(a)?;
                let hi = parse_id(b.strip_prefix('=').unwrap_or(b))?;
                if lo > hi {
                    bail!("empty range `{item}`: {lo} > {hi}");
                }
                for v in lo..=hi {
                    out.insert(v);
                }
            }
            None => {
                out.insert(parse_id(item)?);
            }
        }
    }
    Ok(out)
}

fn parse_id(s: &str) -> Result<usize> {
    let v: usize = s
        .trim()
        .parse()
        .with_context(|| format!("`{s}` is not a vertex id"))?;
    if v == 0 {
        bail!("vertex ids start at 1");
    }
    Ok(v)
}
