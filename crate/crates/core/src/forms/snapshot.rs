//! CSV snapshots of form fields.
//!
//! ```text
//! N,L,p,internal,order
//! 17,20,1,V,node-major;spacetime-lex;internal-lex
//! <one line per node: stride comma-separated components>
//! ```
//!
//! Nodes are numbered with `x⁰` slowest; components follow the storage order
//! of [`FormField`]. Values are written in shortest round-trip form, so a
//! snapshot reads back bit-identically.

use std::io::{BufRead, Write};

use super::field::FormField;
use super::grid::{Grid4, RadiusMode};
use super::internal::Internal;
use crate::error::{Error, Result};

const ORDER: &str = "node-major;spacetime-lex;internal-lex";

pub fn write_csv<W: Write>(field: &FormField<f64>, mut w: W) -> Result<()> {
    let g = field.grid();
    writeln!(w, "N,L,p,internal,order")?;
    writeln!(w, "{},{},{},{},{ORDER}", g.n(), g.half_width(), field.degree(), field.internal())?;
    for chunk in field.data().chunks(field.stride()) {
        let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
        writeln!(w, "{}", line.join(","))?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(r: R) -> Result<FormField<f64>> {
    let mut lines = r.lines();
    let mut next = || -> Result<String> { lines.next().ok_or_else(|| Error::Snapshot("unexpected end of file".into()))?.map_err(Error::from) };
    if next()?.trim() != "N,L,p,internal,order" {
        return Err(Error::Snapshot("missing header".into()));
    }
    let meta = next()?;
    let fields: Vec<&str> = meta.trim().split(',').collect();
    let [n, l, p, internal, order] = fields[..] else {
        return Err(Error::Snapshot(format!("malformed metadata line `{meta}`")));
    };
    if order != ORDER {
        return Err(Error::Snapshot(format!("unsupported component order `{order}`")));
    }
    let bad = |what: &str| Error::Snapshot(format!("bad {what} in metadata"));
    let n: usize = n.parse().map_err(|_| bad("N"))?;
    let l: f64 = l.parse().map_err(|_| bad("L"))?;
    let p: usize = p.parse().map_err(|_| bad("p"))?;
    let internal = Internal::from_tag(internal).ok_or_else(|| bad("internal tag"))?;
    let grid = Grid4::new(l, n, 0.0, RadiusMode::FourD)?;
    let mut data = Vec::with_capacity(grid.node_count() * 16);
    for (i, line) in lines.enumerate() {
        let line = line?;
        for v in line.trim().split(',').filter(|s| !s.is_empty()) {
            data.push(v.parse::<f64>().map_err(|_| Error::Snapshot(format!("bad value `{v}` on data line {}", i + 1)))?);
        }
    }
    FormField::from_data(grid, p, internal, data)
}
