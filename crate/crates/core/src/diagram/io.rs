use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram, DiagramError, EdgeId, Sign};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingDoc {
    pub edges: [EdgeId; 4],
    pub sign: i64,
}

/// Serialized form of a diagram: `{ "crossings": [ { "edges": [..], "sign": 1 } ] }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramDoc {
    pub crossings: Vec<CrossingDoc>,
}

impl DiagramDoc {
    pub fn into_diagram(self) -> Result<Diagram, DiagramError> {
        let mut cs = Vec::with_capacity(self.crossings.len());
        for (i, c) in self.crossings.into_iter().enumerate() {
            let sign = Sign::from_int(c.sign).ok_or_else(|| DiagramError::Syntax {
                line: 1,
                msg: format!("crossing {i}: sign must be 1 or -1, got {}", c.sign),
            })?;
            cs.push(Crossing::new(c.edges, sign));
        }
        if cs.is_empty() {
            return Ok(Diagram::unknot());
        }
        Diagram::new(cs)
    }
}

impl From<&Diagram> for DiagramDoc {
    fn from(d: &Diagram) -> Self {
        DiagramDoc {
            crossings: d
                .crossings()
                .iter()
                .map(|c| CrossingDoc { edges: c.edges, sign: c.sign.as_int() })
                .collect(),
        }
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        DiagramDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        DiagramDoc::deserialize(d)?.into_diagram().map_err(serde::de::Error::custom)
    }
}

pub fn parse_json(text: &str) -> Result<Diagram, DiagramError> {
    let doc: DiagramDoc = serde_json::from_str(text)
        .map_err(|e| DiagramError::Syntax { line: e.line(), msg: e.to_string() })?;
    doc.into_diagram()
}

/// Plain-text form: one `X e0 e1 e2 e3 s` line per crossing. Blank lines and
/// lines starting with `#` are ignored.
pub fn parse_text(text: &str) -> Result<Diagram, DiagramError> {
    let mut cs = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| DiagramError::Syntax { line: no + 1, msg };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() != 6 || toks[0] != "X" {
            return Err(err(format!("expected `X e0 e1 e2 e3 s`, got {line:?}")));
        }
        let mut edges = [0; 4];
        for (k, t) in toks[1..5].iter().enumerate() {
            edges[k] = t.parse().map_err(|_| err(format!("bad edge id {t:?}")))?;
        }
        let s: i64 = toks[5].parse().map_err(|_| err(format!("bad sign {:?}", toks[5])))?;
        let sign = Sign::from_int(s).ok_or_else(|| err(format!("sign must be 1 or -1, got {s}")))?;
        cs.push(Crossing::new(edges, sign));
    }
    if cs.is_empty() {
        return Ok(Diagram::unknot());
    }
    Diagram::new(cs)
}

/// Accepts either the JSON or the plain-text form.
pub fn parse_diagram(text: &str) -> Result<Diagram, DiagramError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

pub(crate) fn to_text(d: &Diagram) -> String {
    let mut s = String::new();
    for c in d.crossings() {
        let e = c.edges;
        s.push_str(&format!("X {} {} {} {} {}\n", e[0], e[1], e[2], e[3], c.sign.as_int()));
    }
    s
}
