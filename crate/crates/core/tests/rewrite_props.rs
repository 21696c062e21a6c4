mod common;

use std::collections::BTreeSet;

use delune::diagram::{detect_lunes, detect_maximal_tassels, faces, Diagram, LuneKind};
use delune::invariants::{determinant, normalized_f, normalized_f_sweep, LaurentPoly};
use delune::lowerhalf::lh_sequence;
use delune::rewrite::{
    apply_template, delunify, template, teneva_leaves, teneva_transform, ColoredDiagram, Strategy, TemplateId,
};
use proptest::prelude::*;

/// Normalized bracket by the state sum when it is small enough, so the check
/// does not share a route with the rewrite's own post-check.
fn poly(d: &Diagram) -> LaurentPoly {
    if d.crossing_count() <= 16 {
        normalized_f(d).unwrap()
    } else {
        normalized_f_sweep(d)
    }
}

fn assert_same_link(before: &Diagram, after: &Diagram) -> Result<(), TestCaseError> {
    prop_assert_eq!(determinant(before), determinant(after));
    prop_assert_eq!(before.component_count(), after.component_count());
    prop_assert_eq!(faces(after).len(), after.crossing_count() + 2);
    prop_assert_eq!(poly(before), poly(after));
    Ok(())
}

fn templates_for(kind: LuneKind, k: usize) -> Vec<(TemplateId, usize)> {
    let mut v = Vec::new();
    match kind {
        LuneKind::Twist => {
            v.push((TemplateId::MainLemma, 2));
            v.push((TemplateId::Fig3Variant, 2));
            for (id, n) in [
                (TemplateId::Tassel3, 3),
                (TemplateId::Tassel4, 4),
                (TemplateId::Tassel5, 5),
                (TemplateId::Tassel6, 6),
            ] {
                if n <= k {
                    v.push((id, n));
                }
            }
        }
        LuneKind::Clasp => v.push((TemplateId::Clasp, 2)),
        LuneKind::Curl => {}
    }
    v
}

proptest! {
    #![proptest_config(common::config(100))]

    #[test]
    fn delunify_post_conditions(cd in common::colored_diagram(12)) {
        for s in Strategy::ALL {
            let out = delunify(&cd, s).map_err(|e| TestCaseError::fail(format!("{s}: {e}")))?;
            let r = &out.result;
            prop_assert!(detect_lunes(&r.diagram).is_empty(), "{s} left lunes");
            prop_assert!(r.coloring.validate(&r.diagram).is_ok());
            assert_same_link(&cd.diagram, &r.diagram)?;
            if matches!(s, Strategy::PerLuneMain | Strategy::TasselAware) {
                prop_assert_eq!(r.palette(), cd.palette(), "{} changed the palette", s);
            }
            let total: i64 = out.trace.iter().map(|t| t.delta).sum();
            prop_assert_eq!(total, out.crossings_after as i64 - out.crossings_before as i64);
        }
    }

    #[test]
    fn single_templates_keep_the_link(cd in common::colored_diagram(10)) {
        for site in detect_maximal_tassels(&cd.diagram) {
            for (id, n) in templates_for(site.kind, site.k) {
                let chain = &site.crossings[..n];
                let Ok(a) = apply_template(&cd, chain, template(id)) else { continue };
                assert_same_link(&cd.diagram, &a.cd.diagram)?;
                let (before, after) = (cd.palette(), a.cd.palette());
                if id == TemplateId::Fig3Variant {
                    prop_assert!(after.len() <= before.len() + 1);
                    let colors = a.cd.edge_colors();
                    let residues: BTreeSet<u64> = a
                        .replacement
                        .clone()
                        .flat_map(|c| a.cd.diagram.crossings()[c].edges)
                        .map(|e| colors[&e])
                        .collect();
                    if residues.is_subset(&before) {
                        prop_assert_eq!(&after, &before);
                    }
                } else {
                    prop_assert_eq!(&after, &before, "{} changed the palette", id);
                }
            }
        }
    }
}

#[test]
fn teneva_terminal_tassels_stop_in_two_to_four() {
    for n in 5..=200 {
        let (leaves, moves) = teneva_leaves(n);
        assert!(leaves.iter().all(|k| (2..=4).contains(k)), "n={n}: {leaves:?}");
        assert_eq!(moves + 1, leaves.len());
        // never more leaves than the lower half sequence predicts
        assert!(leaves.len() <= 1 << lh_sequence(n as u64).unwrap().l);
    }
}

#[test]
fn teneva_transformation_on_braid_tassels() {
    for n in [5usize, 6, 7, 9, 12] {
        for sign in [1i32, -1] {
            let d = common::braid(2, &vec![sign; n]);
            let cd: ColoredDiagram = common::colored(d.clone());
            let sites = detect_maximal_tassels(&d);
            let a = teneva_transform(&cd, &sites[0]).unwrap();
            assert_eq!(a.cd.diagram.crossing_count(), n + 1);
            assert_eq!(a.cd.palette(), cd.palette());
            let mut ks: Vec<usize> = detect_maximal_tassels(&a.cd.diagram)
                .iter()
                .filter(|s| s.kind == LuneKind::Twist)
                .map(|s| s.k)
                .collect();
            ks.sort_unstable();
            // 2k+1 splits into k and k, 2k into k and k-1
            let want = if n % 2 == 1 { vec![n / 2, n / 2] } else { vec![n / 2 - 1, n / 2] };
            assert_eq!(ks, want, "n={n} sign={sign}");
        }
    }
}
