//! Graph import/export: DIMACS edge format and a labeled JSON format.
//!
//! DIMACS is 1-indexed on the wire ("p edge n m" header, "e u v" lines) and
//! carries no labels; labels travel separately as JSON.  The labeled JSON
//! format is `{name, n, edges, labels}` where `labels` is either `null` or an
//! envelope `{kind, params, items}`:
//!
//! * `kind: "wide"`, `params: {s}`, items are integer arrays, one coordinate
//!   sequence per vertex;
//! * `kind: "omega"`, `params: {t}`, items are arrays of sorted integer
//!   arrays, one set chain per vertex;
//! * `kind: "kset"`, `params: {n}`, items are sorted integer arrays;
//! * `kind: "mycielski"`, items are `{base, level}` objects or `{apex: true}`
//!   for the apex;
//! * `kind: "plain"`, items are integers.

use crate::graph::Graph;
use crate::label::{KSet, MycielskiVertex, OmegaVertex, VertexLabel, WideVertex};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dimacs,
    JsonLabeled,
}

pub fn export_graph(g: &Graph, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Dimacs => Ok(write_dimacs(g).into_bytes()),
        Format::JsonLabeled => Ok(write_json(g)?.into_bytes()),
    }
}

pub fn import_graph(bytes: &[u8], format: Format) -> Result<Graph> {
    let text = std::str::from_utf8(bytes)
        .map_err(|e| Error::parse(0, format!("input is not UTF-8: {e}")))?;
    match format {
        Format::Dimacs => read_dimacs(text),
        Format::JsonLabeled => read_json(text),
    }
}

/// DIMACS edge format, with the graph name on a leading comment line.
pub fn write_dimacs(g: &Graph) -> String {
    let mut out = String::new();
    out.push_str(&format!("c name {}\n", g.name));
    out.push_str(&format!("p edge {} {}\n", g.n(), g.m()));
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

pub fn read_dimacs(text: &str) -> Result<Graph> {
    let mut name = String::from("dimacs");
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("c") => {
                let rest: Vec<&str> = parts.collect();
                if rest.first() == Some(&"name") && rest.len() >= 2 {
                    name = rest[1..].join(" ");
                }
            }
            Some("p") => {
                if header.is_some() {
                    return Err(Error::parse(lineno, "duplicate problem line"));
                }
                if parts.next() != Some("edge") {
                    return Err(Error::parse(lineno, "expected 'p edge n m'"));
                }
                let n = parse_field(parts.next(), lineno, "vertex count")?;
                let m = parse_field(parts.next(), lineno, "edge count")?;
                header = Some((n, m));
            }
            Some("e") => {
                let (n, _) = header
                    .ok_or_else(|| Error::parse(lineno, "edge line before problem line"))?;
                let u: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
                let v: usize = parse_field(parts.next(), lineno, "edge endpoint")?;
                if u == 0 || v == 0 || u > n || v > n {
                    return Err(Error::parse(
                        lineno,
                        format!("endpoint out of range 1..={n} in 'e {u} {v}'"),
                    ));
                }
                edges.push((u - 1, v - 1));
            }
            Some(tok) => {
                return Err(Error::parse(lineno, format!("unrecognized line type '{tok}'")));
            }
            None => unreachable!(),
        }
    }
    let (n, m) = header.ok_or_else(|| Error::parse(0, "missing problem line"))?;
    if edges.len() != m {
        return Err(Error::parse(
            0,
            format!("header declares {m} edges but {} edge lines found", edges.len()),
        ));
    }
    Graph::new(name, n, &edges)
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    name: String,
    n: usize,
    edges: Vec<(usize, usize)>,
    labels: Option<LabelsJson>,
}

#[derive(Serialize, Deserialize)]
struct LabelsJson {
    kind: String,
    #[serde(default)]
    params: Value,
    items: Vec<Value>,
}

pub fn write_json(g: &Graph) -> Result<String> {
    let doc = GraphJson {
        name: g.name.clone(),
        n: g.n(),
        edges: g.edges().to_vec(),
        labels: match &g.labels {
            None => None,
            Some(ls) => Some(labels_to_json(ls)?),
        },
    };
    serde_json::to_string_pretty(&doc).map_err(|e| Error::internal(format!("serialize: {e}")))
}

pub fn read_json(text: &str) -> Result<Graph> {
    let doc: GraphJson = serde_json::from_str(text)
        .map_err(|e| Error::parse(e.line(), format!("bad graph JSON: {e}")))?;
    let mut g = Graph::new(doc.name, doc.n, &doc.edges)?;
    if let Some(env) = doc.labels {
        let labels = labels_from_json(&env)?;
        if labels.len() != g.n() {
            return Err(Error::parse(
                0,
                format!("{} labels for {} vertices", labels.len(), g.n()),
            ));
        }
        g.labels = Some(labels);
    }
    Ok(g)
}

fn labels_to_json(labels: &[VertexLabel]) -> Result<LabelsJson> {
    let uniform_kind = |l: &VertexLabel| match l {
        VertexLabel::Wide(_) => "wide",
        VertexLabel::Omega(_) => "omega",
        VertexLabel::KSet(_) => "kset",
        VertexLabel::Mycielski(_) => "mycielski",
        VertexLabel::Plain(_) => "plain",
    };
    let kind = labels.first().map(uniform_kind).unwrap_or("plain");
    if !labels.iter().all(|l| uniform_kind(l) == kind) {
        // Heterogeneous label sets keep the fully tagged representation.
        return Ok(LabelsJson {
            kind: "mixed".into(),
            params: Value::Null,
            items: labels
                .iter()
                .map(|l| serde_json::to_value(l).map_err(|e| Error::internal(e.to_string())))
                .collect::<Result<_>>()?,
        });
    }
    let params = match labels.first() {
        Some(VertexLabel::Wide(w)) => json!({ "s": w.s }),
        Some(VertexLabel::Omega(o)) => json!({ "t": o.t }),
        Some(VertexLabel::KSet(k)) => json!({ "n": k.n }),
        _ => Value::Null,
    };
    let items = labels
        .iter()
        .map(|l| match l {
            VertexLabel::Wide(w) => json!(w.x),
            VertexLabel::Omega(o) => {
                json!(o.sets.iter().map(|&m| crate::label::mask_elems(m)).collect::<Vec<_>>())
            }
            VertexLabel::KSet(k) => json!(k.elems),
            VertexLabel::Mycielski(MycielskiVertex::Apex) => json!({ "apex": true }),
            VertexLabel::Mycielski(MycielskiVertex::Level { base, level }) => {
                json!({ "base": *base as u64, "level": *level as u64 })
            }
            VertexLabel::Plain(i) => json!(i),
        })
        .collect();
    Ok(LabelsJson { kind: kind.into(), params, items })
}

fn labels_from_json(env: &LabelsJson) -> Result<Vec<VertexLabel>> {
    let bad = |what: &str| Error::parse(0, format!("bad {what} in labels of kind '{}'", env.kind));
    let param_u32 = |key: &str| -> Result<u32> {
        env.params
            .get(key)
            .and_then(Value::as_u64)
            .map(|v| v as u32)
            .ok_or_else(|| Error::parse(0, format!("labels of kind '{}' need params.{key}", env.kind)))
    };
    match env.kind.as_str() {
        "wide" => {
            let s = param_u32("s")?;
            env.items
                .iter()
                .map(|it| {
                    let x: Vec<u32> =
                        serde_json::from_value(it.clone()).map_err(|_| bad("coordinate array"))?;
                    Ok(VertexLabel::Wide(WideVertex { s, x }))
                })
                .collect()
        }
        "omega" => {
            let t = param_u32("t")?;
            env.items
                .iter()
                .map(|it| {
                    let chains: Vec<Vec<u32>> =
                        serde_json::from_value(it.clone()).map_err(|_| bad("set chain"))?;
                    let sets = chains.iter().map(|c| crate::label::elems_mask(c)).collect();
                    Ok(VertexLabel::Omega(OmegaVertex { t, sets }))
                })
                .collect()
        }
        "kset" => {
            let n = param_u32("n")?;
            env.items
                .iter()
                .map(|it| {
                    let elems: Vec<u32> =
                        serde_json::from_value(it.clone()).map_err(|_| bad("element array"))?;
                    Ok(VertexLabel::KSet(KSet::new(n, elems)))
                })
                .collect()
        }
        "mycielski" => env
            .items
            .iter()
            .map(|it| {
                if it.get("apex").and_then(Value::as_bool) == Some(true) {
                    return Ok(VertexLabel::Mycielski(MycielskiVertex::Apex));
                }
                let base = it
                    .get("base")
                    .and_then(Value::as_u64)
                    .ok_or_else(|| bad("base index"))? as usize;
                let level =
                    it.get("level").and_then(Value::as_u64).ok_or_else(|| bad("level"))? as u32;
                Ok(VertexLabel::Mycielski(MycielskiVertex::Level { base, level }))
            })
            .collect(),
        "plain" => env
            .items
            .iter()
            .map(|it| {
                it.as_u64()
                    .map(|v| VertexLabel::Plain(v as usize))
                    .ok_or_else(|| bad("integer"))
            })
            .collect(),
        "mixed" => env
            .items
            .iter()
            .map(|it| {
                serde_json::from_value(it.clone()).map_err(|_| bad("tagged label"))
            })
            .collect(),
        other => Err(Error::parse(0, format!("unknown label kind '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, kneser};

    fn assert_same(a: &Graph, b: &Graph) {
        assert_eq!(a.name, b.name);
        assert_eq!(a.n(), b.n());
        assert_eq!(a.edges(), b.edges());
        assert_eq!(a.labels, b.labels);
    }

    #[test]
    fn dimacs_header_shape() {
        let g = crate::graph::complete(3).unwrap();
        let text = write_dimacs(&g);
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("c name K:3"));
        assert_eq!(lines.next(), Some("p edge 3 3"));
        assert_eq!(lines.next(), Some("e 1 2"));
    }

    #[test]
    fn dimacs_round_trip_petersen() {
        let g = kneser(5, 2).unwrap();
        let bytes = export_graph(&g, Format::Dimacs).unwrap();
        let back = import_graph(&bytes, Format::Dimacs).unwrap();
        assert_eq!(back.name, "KG:5,2");
        assert_eq!(back.n(), g.n());
        assert_eq!(back.edges(), g.edges());
        // DIMACS itself carries no labels.
        assert!(back.labels.is_none());
    }

    #[test]
    fn dimacs_malformed_reports_position() {
        let text = "p edge 3 1\ne 1 9\n";
        match read_dimacs(text) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(read_dimacs("e 1 2\n").is_err());
        assert!(read_dimacs("p edge 3 2\ne 1 2\n").is_err());
        assert!(read_dimacs("p edge 3 1\nq 1 2\n").is_err());
    }

    #[test]
    fn json_round_trip_with_labels() {
        for g in [kneser(4, 2).unwrap(), cycle(5).unwrap()] {
            let bytes = export_graph(&g, Format::JsonLabeled).unwrap();
            let back = import_graph(&bytes, Format::JsonLabeled).unwrap();
            assert_same(&g, &back);
        }
    }

    #[test]
    fn json_wide_labels_are_plain_integer_arrays() {
        let g = {
            let mut g = Graph::new("w", 2, &[(0, 1)]).unwrap();
            g.labels = Some(vec![
                VertexLabel::Wide(WideVertex { s: 2, x: vec![0, 1] }),
                VertexLabel::Wide(WideVertex { s: 2, x: vec![1, 0] }),
            ]);
            g
        };
        let text = write_json(&g).unwrap();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["labels"]["kind"], "wide");
        assert_eq!(doc["labels"]["items"][0], json!([0, 1]));
        let back = read_json(&text).unwrap();
        assert_same(&g, &back);
    }

    #[test]
    fn json_omega_labels_are_arrays_of_arrays() {
        let mut g = Graph::new("o", 1, &[]).unwrap();
        g.labels = Some(vec![VertexLabel::Omega(OmegaVertex {
            t: 3,
            sets: vec![0b010, 0b101],
        })]);
        let text = write_json(&g).unwrap();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["labels"]["items"][0], json!([[2], [1, 3]]));
        assert_same(&g, &read_json(&text).unwrap());
    }

    #[test]
    fn json_mycielski_and_mixed_labels() {
        let mut g = Graph::new("m", 2, &[(0, 1)]).unwrap();
        g.labels = Some(vec![
            VertexLabel::Mycielski(MycielskiVertex::Level { base: 0, level: 1 }),
            VertexLabel::Mycielski(MycielskiVertex::Apex),
        ]);
        let text = write_json(&g).unwrap();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["labels"]["items"][0], json!({ "base": 0, "level": 1 }));
        assert_eq!(doc["labels"]["items"][1], json!({ "apex": true }));
        assert_same(&g, &read_json(&text).unwrap());

        g.labels = Some(vec![
            VertexLabel::Plain(0),
            VertexLabel::Mycielski(MycielskiVertex::Apex),
        ]);
        let text = write_json(&g).unwrap();
        let doc: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["labels"]["kind"], "mixed");
        assert_same(&g, &read_json(&text).unwrap());
    }

    #[test]
    fn json_label_count_mismatch_rejected() {
        let text = r#"{"name":"g","n":2,"edges":[[0,1]],
            "labels":{"kind":"plain","params":null,"items":[0]}}"#;
        assert!(read_json(text).is_err());
    }
}

fn parse_field<T: std::str::FromStr>(tok: Option<&str>, lineno: usize, what: &str) -> Result<T> {
    tok.ok_or_else(|| Error::parse(lineno, format!("missing {what}")))?
        .parse()
        .map_err(|_| Error::parse(lineno, format!("malformed {what}")))
}
