use serde::Serialize;

use super::{dart_crossing, rot_cw, Dart, Diagram, EdgeId};

/// Which side of an oriented edge a face lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Incidence {
    pub edge: EdgeId,
    pub side: Side,
}

/// A face of the underlying plane graph. `darts` lists, in boundary order,
/// the darts along which the face is traversed with its interior on the left.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub incidences: Vec<Incidence>,
    #[serde(skip)]
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn degree(&self) -> usize {
        self.incidences.len()
    }

    /// Crossings on the boundary, in traversal order (with repetition).
    pub fn crossings(&self) -> Vec<usize> {
        self.darts.iter().map(|&d| dart_crossing(d)).collect()
    }

    fn min_incidence(&self) -> Incidence {
        *self.incidences.iter().min().expect("faces are non-empty")
    }
}

/// Face cycles of a rotation system given by its partner table. Each cycle
/// is a list of darts `d` such that the face is on the left when walking
/// from `d` to its partner.
pub(crate) fn face_cycles(partner: &[Dart]) -> Vec<Vec<Dart>> {
    let mut seen = vec![false; partner.len()];
    let mut out = Vec::new();
    for start in 0..partner.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            cyc.push(d);
            d = face_next(partner, d);
        }
        out.push(cyc);
    }
    out
}

#[inline]
pub(crate) fn face_next(partner: &[Dart], d: Dart) -> Dart {
    rot_cw(partner[d])
}

/// All faces, sorted by their smallest incidence. The crossingless circle
/// has two faces with empty boundaries.
pub fn faces(d: &Diagram) -> Vec<Face> {
    if d.crossing_count() == 0 {
        return vec![Face { incidences: Vec::new(), darts: Vec::new() }; 2];
    }
    let mut out: Vec<Face> = face_cycles(d.partners())
        .into_iter()
        .map(|cyc| {
            let incidences = cyc
                .iter()
                .map(|&x| Incidence {
                    edge: d.edge_at(x),
                    side: if d.dart_incoming(x) { Side::Right } else { Side::Left },
                })
                .collect();
            Face { incidences, darts: cyc }
        })
        .collect();
    out.sort_by_key(|f| f.min_incidence());
    out
}

/// The degree-2 faces.
pub fn detect_lunes(d: &Diagram) -> Vec<Face> {
    faces(d).into_iter().filter(|f| f.degree() == 2).collect()
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::diagram::parse_text;

    fn degrees(d: &Diagram) -> Vec<usize> {
        let mut v: Vec<usize> = faces(d).iter().map(Face::degree).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn trefoil_faces() {
        assert_eq!(degrees(&trefoil()), vec![2, 2, 2, 3, 3]);
        assert_eq!(detect_lunes(&trefoil()).len(), 3);
    }

    #[test]
    fn hopf_faces_are_all_bigons() {
        assert_eq!(degrees(&hopf()), vec![2, 2, 2, 2]);
    }

    #[test]
    fn torus_five_has_five_lunes() {
        assert_eq!(detect_lunes(&torus2(5)).len(), 5);
    }

    #[test]
    fn kink_has_three_faces() {
        let d = kink();
        assert_eq!(degrees(&d), vec![1, 1, 2]);
        assert_eq!(degrees(&Diagram::unknot()), vec![0, 0]);
    }

    #[test]
    fn every_edge_side_is_covered_once() {
        for d in [trefoil(), figure_eight(), hopf(), kink()] {
            let mut all: Vec<Incidence> = faces(&d).into_iter().flat_map(|f| f.incidences).collect();
            all.sort();
            let n = all.len();
            all.dedup();
            assert_eq!(all.len(), n);
            assert_eq!(n, 2 * d.edges().len());
        }
    }

    #[test]
    fn non_planar_rotation_is_rejected() {
        // two crossings glued so the face trace gives a torus
        let r = parse_text("X 1 2 3 4 1\nX 3 2 1 4 1\n");
        assert!(r.is_err());
    }
}
