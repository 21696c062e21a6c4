use super::{dart, dart_crossing, dart_slot, Dart, Diagram};

/// Canonical code of a diagram: invariant under edge relabeling, crossing
/// reordering, component reordering and reflection of the plane. Over/under
/// information is kept; orientations are not.
pub fn canonical_code(d: &Diagram) -> String {
    if d.crossing_count() == 0 {
        return "0".to_string();
    }
    // PD codes put the under-strand on slots 0 and 2
    let under: Vec<bool> = vec![true; d.crossing_count()];
    canonical_code_of_map(d.partners(), Some(&under))
}

/// Canonical code of a 4-regular rotation system given by its partner table.
/// `under_even[v]` marks vertex v's under-strand on its even slots; pass
/// `None` for flat maps.
pub fn canonical_code_of_map(partner: &[Dart], under_even: Option<&[bool]>) -> String {
    code_impl(partner, under_even, None)
}

/// Canonical code of a rotation system with one marked vertex: isomorphisms
/// must fix the marked vertex.
pub fn canonical_code_marked(partner: &[Dart], under_even: Option<&[bool]>, marked: usize) -> String {
    code_impl(partner, under_even, Some(marked))
}

fn code_impl(partner: &[Dart], under_even: Option<&[bool]>, marked: Option<usize>) -> String {
    let n = partner.len() / 4;
    let mut best: Option<Vec<u16>> = None;
    let mut buf = Vec::with_capacity(1 + 17 * n);
    let mut label = vec![u16::MAX; n];
    let mut refd = vec![0usize; n];
    let mut queue = Vec::with_capacity(n);
    let roots = match marked {
        Some(v) => 4 * v..4 * v + 4,
        None => 0..partner.len(),
    };
    for root in roots {
        for ccw in [true, false] {
            buf.clear();
            label.iter_mut().for_each(|l| *l = u16::MAX);
            queue.clear();
            label[dart_crossing(root)] = 0;
            refd[dart_crossing(root)] = root;
            queue.push(dart_crossing(root));
            let mut head = 0;
            let mut next_label = 1u16;
            let mut worse = false;
            let mut tied = best.is_some();
            while head < queue.len() {
                let v = queue[head];
                head += 1;
                let r = refd[v];
                let bit = match under_even {
                    Some(u) => u16::from(dart_slot(r).is_multiple_of(2) == u[v]),
                    None => 0,
                };
                let mut vals = [bit, 0, 0, 0, 0, 0, 0, 0, 0];
                for k in 0..4 {
                    let x = step(r, k, ccw);
                    let y = partner[x];
                    let w = dart_crossing(y);
                    if label[w] == u16::MAX {
                        label[w] = next_label;
                        next_label += 1;
                        refd[w] = y;
                        queue.push(w);
                    }
                    vals[1 + 2 * k] = label[w];
                    vals[2 + 2 * k] = rel(refd[w], y, ccw) as u16;
                }
                for val in vals {
                    let pos = buf.len();
                    buf.push(val);
                    if tied {
                        let b = best.as_ref().unwrap()[pos];
                        if val > b {
                            worse = true;
                            break;
                        } else if val < b {
                            tied = false;
                        }
                    }
                }
                if worse {
                    break;
                }
            }
            if worse {
                continue;
            }
            if best.as_ref().is_none_or(|b| buf < *b) {
                best = Some(buf.clone());
            }
        }
    }
    let best = best.unwrap_or_default();
    let mut s = format!("{n:03x}");
    for (i, v) in best.iter().enumerate() {
        // bit, then (label, slot) pairs
        if i % 9 == 0 {
            s.push(':');
            s.push(char::from(b'0' + *v as u8));
        } else if i % 2 == 1 {
            s.push_str(&format!("{v:03x}"));
        } else {
            s.push(char::from(b'0' + *v as u8));
        }
    }
    s
}

#[inline]
fn step(r: Dart, k: usize, ccw: bool) -> Dart {
    let c = dart_crossing(r);
    let s = dart_slot(r);
    let t = if ccw { (s + k) % 4 } else { (s + 4 - k) % 4 };
    dart(c, t)
}

#[inline]
fn rel(reference: Dart, x: Dart, ccw: bool) -> usize {
    let (a, b) = (dart_slot(reference), dart_slot(x));
    if ccw {
        (b + 4 - a) % 4
    } else {
        (a + 4 - b) % 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::fixtures::*;

    #[test]
    fn relabel_and_permute_invariance() {
        let d = figure_eight();
        let c = canonical_code(&d);
        let r = d.relabeled(|e| 100 - e).permuted(&[2, 0, 3, 1]);
        assert_eq!(canonical_code(&r), c);
    }

    #[test]
    fn different_diagrams_differ() {
        assert_ne!(canonical_code(&trefoil()), canonical_code(&figure_eight()));
        assert_ne!(canonical_code(&hopf()), canonical_code(&torus2(4)));
        // changing one crossing of the figure-eight gives a non-alternating diagram
        assert_ne!(canonical_code(&figure_eight()), canonical_code(&figure_eight().crossing_changed(&[0])));
    }
}
