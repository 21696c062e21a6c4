use serde::{Deserialize, Serialize};

use super::{Crossing, Diagram, DiagramError, EdgeId, Sign};

/// Signed generator: `+i` is σ_i, `-i` is σ_i^{-1}.
pub type BraidLetter = i32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<BraidLetter>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::Braid("braid needs at least one strand".into()));
        }
        for &l in &letters {
            let i = l.unsigned_abs() as usize;
            if l == 0 || i >= strands {
                return Err(DiagramError::Braid(format!("generator {l} out of range for {strands} strands")));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[BraidLetter] {
        &self.letters
    }

    /// Parses words like `1 1 -2 1` or `s1 s1 S2`.
    pub fn parse(strands: usize, text: &str) -> Result<Self, DiagramError> {
        let mut letters = Vec::new();
        for tok in text.split(|c: char| c.is_whitespace() || c == ',') {
            if tok.is_empty() {
                continue;
            }
            let v = if let Some(r) = tok.strip_prefix('s') {
                r.parse::<i32>().ok()
            } else if let Some(r) = tok.strip_prefix('S') {
                r.parse::<i32>().ok().map(|x| -x)
            } else {
                tok.parse::<i32>().ok()
            };
            letters.push(v.ok_or_else(|| DiagramError::Braid(format!("bad letter {tok:?}")))?);
        }
        BraidWord::new(strands, letters)
    }
}

/// Trace closure of a braid. Strands run upward; σ_i crosses strand i over
/// strand i+1 (left over right), which is a positive crossing.
pub fn from_braid(w: &BraidWord) -> Result<Diagram, DiagramError> {
    if w.letters.is_empty() {
        return Err(DiagramError::NoCrossings);
    }
    let n = w.strands;
    let mut touched = vec![false; n];
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        touched[i] = true;
        touched[i + 1] = true;
    }
    if let Some(pieces) = touched.iter().position(|t| !t).map(|_| touched.iter().filter(|t| !**t).count() + 1) {
        return Err(DiagramError::Split { pieces });
    }

    let mut next: EdgeId = n as EdgeId;
    let bottom: Vec<EdgeId> = (0..n as EdgeId).collect();
    let mut cur = bottom.clone();
    let mut crossings = Vec::with_capacity(w.letters.len());
    for &l in &w.letters {
        let i = l.unsigned_abs() as usize - 1;
        let (nl, nr) = (next, next + 1);
        next += 2;
        let edges = if l > 0 {
            [cur[i + 1], nr, nl, cur[i]]
        } else {
            [cur[i], cur[i + 1], nr, nl]
        };
        let sign = if l > 0 { Sign::Positive } else { Sign::Negative };
        crossings.push(Crossing::new(edges, sign));
        cur[i] = nl;
        cur[i + 1] = nr;
    }
    // close up: the top edge at position j is the bottom edge at position j
    let rename = |e: EdgeId| -> EdgeId {
        match cur.iter().position(|&c| c == e) {
            Some(j) => bottom[j],
            None => e,
        }
    };
    let crossings: Vec<Crossing> = crossings
        .into_iter()
        .map(|c| Crossing::new(c.edges.map(rename), c.sign))
        .collect();
    let d = Diagram::new(crossings)?;
    Ok(d.normalized_labels())
}
