//! Mesh and field file formats.
//!
//! Meshes: OFF (vertices and triangles) or a JSON document
//! `{"vertices": [[x, y, z], ...], "edges": [[i, j], ...], "triangles": [[i, j, k], ...]}`.
//! Unembedded complexes use `"n_vertices"` instead of `"vertices"` and give
//! per-edge `"lengths"`. Fields: one value per line, or a JSON array.
//! Floats are written with 17 significant digits and read back exactly.

use super::{ComplexBuilder, ComplexError, FieldError, ScalarField, SimplicialComplex};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("invalid field: {0}")]
    Field(#[from] FieldError),
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct ComplexDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertices: Option<Vec<[f64; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_vertices: Option<usize>,
    #[serde(default)]
    edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lengths: Option<Vec<f64>>,
    #[serde(default)]
    triangles: Vec<[usize; 3]>,
}

pub fn complex_from_json(text: &str) -> Result<SimplicialComplex, IoError> {
    let doc: ComplexDoc = serde_json::from_str(text)?;
    let mut b = match (doc.vertices, doc.n_vertices) {
        (Some(v), _) => ComplexBuilder::with_coords(v),
        (None, Some(n)) => ComplexBuilder::new(n),
        (None, None) => {
            return Err(IoError::Parse {
                line: 1,
                msg: "document needs \"vertices\" or \"n_vertices\"".into(),
            })
        }
    };
    if let Some(l) = &doc.lengths {
        if l.len() != doc.edges.len() {
            return Err(IoError::Parse {
                line: 1,
                msg: format!("{} lengths for {} edges", l.len(), doc.edges.len()),
            });
        }
    }
    for (k, &[a, c]) in doc.edges.iter().enumerate() {
        match &doc.lengths {
            Some(l) => b.edge_with_length(a, c, l[k]),
            None => b.edge(a, c),
        };
    }
    for &[a, c, d] in &doc.triangles {
        b.triangle(a, c, d);
    }
    Ok(b.build()?)
}

pub fn complex_to_json(complex: &SimplicialComplex) -> String {
    let doc = ComplexDoc {
        vertices: complex.coords().map(|c| c.to_vec()),
        n_vertices: complex.coords().is_none().then_some(complex.n_vertices()),
        edges: complex.edges().to_vec(),
        lengths: complex.coords().is_none().then(|| complex.lengths().to_vec()),
        triangles: complex.triangles().to_vec(),
    };
    serde_json::to_string(&doc).expect("serializable")
}

pub fn complex_from_off(text: &str) -> Result<SimplicialComplex, IoError> {
    // Tokens with their line numbers, comments stripped.
    let mut tokens = text.lines().enumerate().flat_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("");
        l.split_whitespace().map(move |t| (i + 1, t))
    });
    let mut next = |what: &str| {
        tokens.next().ok_or_else(|| IoError::Parse {
            line: 0,
            msg: format!("unexpected end of file, expected {what}"),
        })
    };
    let (line, head) = next("header")?;
    if head != "OFF" {
        return Err(IoError::Parse {
            line,
            msg: format!("expected OFF header, found '{head}'"),
        });
    }
    fn parse<T: std::str::FromStr>((line, t): (usize, &str)) -> Result<T, IoError> {
        t.parse().map_err(|_| IoError::Parse {
            line,
            msg: format!("cannot parse '{t}'"),
        })
    }
    let nv: usize = parse(next("vertex count")?)?;
    let nf: usize = parse(next("face count")?)?;
    let _ne: usize = parse(next("edge count")?)?;
    let mut coords = Vec::with_capacity(nv);
    for _ in 0..nv {
        let x = parse(next("x")?)?;
        let y = parse(next("y")?)?;
        let z = parse(next("z")?)?;
        coords.push([x, y, z]);
    }
    let mut b = ComplexBuilder::with_coords(coords);
    for _ in 0..nf {
        let tok = next("face size")?;
        let k: usize = parse(tok)?;
        let mut ids = Vec::with_capacity(k);
        for _ in 0..k {
            ids.push(parse::<usize>(next("face vertex")?)?);
        }
        match k {
            2 => {
                b.edge(ids[0], ids[1]);
            }
            3 => {
                b.triangle(ids[0], ids[1], ids[2]);
            }
            _ => {
                return Err(IoError::Parse {
                    line: tok.0,
                    msg: format!("only triangles and edges are supported, found a {k}-gon"),
                })
            }
        }
    }
    Ok(b.build()?)
}

pub fn complex_to_off(complex: &SimplicialComplex) -> Option<String> {
    let coords = complex.coords()?;
    let mut s = String::new();
    writeln!(s, "OFF").unwrap();
    writeln!(s, "{} {} {}", complex.n_vertices(), complex.n_triangles(), complex.n_edges()).unwrap();
    for p in coords {
        writeln!(s, "{} {} {}", fmt_f64(p[0]), fmt_f64(p[1]), fmt_f64(p[2])).unwrap();
    }
    for t in complex.triangles() {
        writeln!(s, "3 {} {} {}", t[0], t[1], t[2]).unwrap();
    }
    Some(s)
}

/// Reads a mesh, choosing the format by extension (`.off`) or content.
pub fn read_complex(path: &Path) -> Result<SimplicialComplex, IoError> {
    let text = read(path)?;
    let is_off = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("off"))
        || text.trim_start().starts_with("OFF");
    if is_off {
        complex_from_off(&text)
    } else {
        complex_from_json(&text)
    }
}

pub fn parse_field(text: &str) -> Result<ScalarField, IoError> {
    if text.trim_start().starts_with('[') {
        let values: Vec<f64> = serde_json::from_str(text)?;
        return Ok(ScalarField::new(values)?);
    }
    let mut values = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let t = l.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        values.push(t.parse::<f64>().map_err(|_| IoError::Parse {
            line: i + 1,
            msg: format!("cannot parse '{t}' as a number"),
        })?);
    }
    Ok(ScalarField::new(values)?)
}

pub fn read_field(path: &Path) -> Result<ScalarField, IoError> {
    parse_field(&read(path)?)
}

pub fn field_to_lines(field: &ScalarField) -> String {
    let mut s = String::with_capacity(field.len() * 24);
    for &v in field.values() {
        s.push_str(&fmt_f64(v));
        s.push('\n');
    }
    s
}

/// 17 significant digits: enough to round-trip every `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TET: &str = "OFF\n4 4 6\n0 0 0\n1 0 0\n0 1 0\n0 0 1\n3 0 1 2\n3 0 1 3\n3 0 2 3\n3 1 2 3\n";

    #[test]
    fn off_round_trip() {
        let c = complex_from_off(TET).unwrap();
        assert_eq!((c.n_vertices(), c.n_edges(), c.n_triangles()), (4, 6, 4));
        let again = complex_from_off(&complex_to_off(&c).unwrap()).unwrap();
        assert_eq!(again.triangles(), c.triangles());
        assert_eq!(again.coords(), c.coords());
    }

    #[test]
    fn json_round_trip_without_coordinates() {
        let text = r#"{"n_vertices": 3, "edges": [[0,1],[1,2]], "lengths": [0.5, 2.0]}"#;
        let c = complex_from_json(text).unwrap();
        let again = complex_from_json(&complex_to_json(&c)).unwrap();
        assert_eq!(again.lengths(), &[0.5, 2.0]);
    }

    #[test]
    fn malformed_inputs_are_reported() {
        assert!(matches!(complex_from_off("OFF\n2 1 0\n0 0 0\n"), Err(IoError::Parse { .. })));
        assert!(matches!(
            complex_from_off("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n"),
            Err(IoError::Complex(ComplexError::VertexOutOfRange(7)))
        ));
        assert!(matches!(parse_field("1.0\nabc\n"), Err(IoError::Parse { line: 2, .. })));
    }

    #[test]
    fn field_values_round_trip_exactly() {
        let f = ScalarField::new(vec![0.1, 1.0 / 3.0, -2.5e-300, 1e300, std::f64::consts::PI]).unwrap();
        assert_eq!(parse_field(&field_to_lines(&f)).unwrap(), f);
        assert_eq!(parse_field("[1, 2.5]").unwrap().values(), &[1.0, 2.5]);
    }
}
