//! SMESH text format for sphere meshes.
//!
//! ```text
//! SMESH k
//! <vertex count> <simplex count>
//! x_1 ... x_{k+1}      (vertex lines)
//! i_1 ... i_{k+1}      (oriented simplex lines, 0-based)
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::sphere::SphereMesh;

pub fn mesh_to_smesh(mesh: &SphereMesh) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "SMESH {}", mesh.k);
    let _ = writeln!(out, "{} {}", mesh.vertices.len(), mesh.simplices.len());
    for v in &mesh.vertices {
        let line: Vec<String> = v.iter().map(|x| format!("{x:.16e}")).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    for s in &mesh.simplices {
        let line: Vec<String> = s.iter().map(|i| i.to_string()).collect();
        let _ = writeln!(out, "{}", line.join(" "));
    }
    out
}

pub fn mesh_from_smesh(text: &str) -> Result<SphereMesh> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| Error::Parse("empty SMESH document".into()))?;
    let k: usize = header
        .strip_prefix("SMESH ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad SMESH header: {header}")))?;
    let counts = lines.next().ok_or_else(|| Error::Parse("missing count line".into()))?;
    let mut it = counts.split_whitespace();
    let nv: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse("bad vertex count".into()))?;
    let ns: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| Error::Parse("bad simplex count".into()))?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let line = lines.next().ok_or_else(|| Error::Parse("truncated vertex block".into()))?;
        let v: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<Result<_>>()?;
        if v.len() != k + 1 {
            return Err(Error::Parse(format!("vertex line has {} coordinates", v.len())));
        }
        vertices.push(v);
    }
    let mut simplices = Vec::with_capacity(ns);
    for _ in 0..ns {
        let line = lines.next().ok_or_else(|| Error::Parse("truncated simplex block".into()))?;
        let s: Vec<usize> = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|e| Error::Parse(e.to_string())))
            .collect::<std::result::Result<_, _>>()?;
        if s.len() != k + 1 {
            return Err(Error::Parse(format!("simplex line has {} indices", s.len())));
        }
        if s.iter().any(|&i| i >= nv) {
            return Err(Error::Parse("simplex index out of range".into()));
        }
        simplices.push(s);
    }
    Ok(SphereMesh { k, vertices, simplices, refinement_level: 0 })
}
