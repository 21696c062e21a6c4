//! The delunification templates as frozen tangles. Each one is certified
//! against the site it replaces the first time it is used, so a transcription
//! error shows up as a panic naming the template, never as a wrong diagram.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use super::tangle::{certify_against, Certificate, Tangle};
use crate::diagram::{EdgeId, RawCrossing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TemplateId {
    MainLemma,
    Fig3Variant,
    Tassel3,
    Tassel4,
    Tassel5,
    Tassel6,
    Teneva,
    /// Lune-free replacement for a clasp (an R2-shaped bigon).
    Clasp,
}

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TemplateId::MainLemma => "MAIN_LEMMA",
            TemplateId::Fig3Variant => "FIG3_VARIANT",
            TemplateId::Tassel3 => "TASSEL_3",
            TemplateId::Tassel4 => "TASSEL_4",
            TemplateId::Tassel5 => "TASSEL_5",
            TemplateId::Tassel6 => "TASSEL_6",
            TemplateId::Teneva => "TENEVA",
            TemplateId::Clasp => "CLASP",
        };
        f.write_str(s)
    }
}

/// What a template replaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SiteShape {
    /// σ1^k with k > 0; the reflected template handles σ1^-k.
    Twist(usize),
    Clasp,
}

impl SiteShape {
    pub fn crossings(self) -> usize {
        match self {
            SiteShape::Twist(k) => k,
            SiteShape::Clasp => 2,
        }
    }

    /// The site itself as a tangle, for a given crossing sign.
    pub fn reference(self, sign: i64) -> Tangle {
        match self {
            SiteShape::Twist(k) => Tangle::twist(sign * k as i64),
            SiteShape::Clasp => Tangle::clasp(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Template {
    pub id: TemplateId,
    pub shape: SiteShape,
    /// Replacement for the positive site.
    pub tangle: Tangle,
    pub delta: i64,
    pub certificate: Certificate,
}

impl Template {
    /// Replacement for the site of twist sense `sign`. The plane reflection
    /// turns σ1^k into σ1^-k and keeps colorings (with a and b swapped), so
    /// the certificate carries over; the mirror image would not keep them.
    pub fn tangle_for(&self, sign: i64) -> Tangle {
        match (self.shape, sign < 0) {
            (SiteShape::Twist(_), true) => self.tangle.reflected(),
            _ => self.tangle.clone(),
        }
    }

    /// Color of each replacement edge as `(coefficient of a, coefficient
    /// of b)`, where a and b are the colors entering at BL and BR.
    pub fn color_formulas(&self) -> BTreeMap<EdgeId, (i64, i64)> {
        let c = self.tangle.formal_colors().expect("certified templates have forced colorings");
        c.into_iter().map(|(e, j)| (e, (1 - j, j))).collect()
    }

    /// Whether the formal palette uses colors outside the site's.
    pub fn adds_color(&self) -> bool {
        self.certificate.palette != self.certificate.reference_palette
    }
}

/// Pretty form of `x a + y b`, e.g. `3b-2a`.
pub fn formula_string((x, y): (i64, i64)) -> String {
    let term = |c: i64, v: &str| match c {
        1 => v.to_string(),
        -1 => format!("-{v}"),
        c => format!("{c}{v}"),
    };
    match (x, y) {
        (0, 0) => "0".into(),
        (x, 0) => term(x, "a"),
        (0, y) => term(y, "b"),
        (x, y) => {
            let a = term(x, "a");
            let sep = if x > 0 { "+" } else { "" };
            format!("{}{sep}{a}", term(y, "b"))
        }
    }
}

type Data = &'static [([EdgeId; 4], bool)];

const MAIN: Data = &[
    ([1, 5, 6, 7], false),
    ([4, 8, 9, 10], true),
    ([3, 10, 11, 12], false),
    ([2, 13, 14, 5], false),
    ([6, 14, 15, 16], false),
    ([7, 16, 17, 8], false),
    ([9, 18, 19, 11], true),
    ([12, 19, 20, 21], false),
    ([13, 21, 22, 15], true),
    ([17, 22, 20, 18], true),
];

const FIG3: Data = &[
    ([1, 5, 6, 7], false),
    ([2, 8, 9, 5], false),
    ([3, 10, 11, 12], false),
    ([4, 7, 13, 10], false),
    ([6, 9, 14, 15], false),
    ([8, 12, 16, 14], false),
    ([11, 13, 15, 16], false),
];

const T3: Data = &[
    ([1, 2, 5, 6], false),
    ([4, 7, 8, 9], false),
    ([3, 9, 10, 11], false),
    ([5, 12, 13, 14], false),
    ([6, 14, 15, 7], false),
    ([8, 16, 17, 10], true),
    ([11, 17, 18, 12], false),
    ([13, 18, 16, 15], true),
];

const T4: Data = &[
    ([1, 2, 5, 6], false),
    ([4, 7, 8, 3], true),
    ([5, 9, 10, 11], false),
    ([6, 11, 12, 13], false),
    ([7, 14, 15, 16], false),
    ([8, 16, 17, 9], false),
    ([10, 18, 19, 12], true),
    ([13, 19, 20, 14], false),
    ([15, 20, 18, 17], true),
];

const T5: Data = &[
    ([1, 2, 5, 6], false),
    ([4, 7, 8, 9], true),
    ([3, 9, 10, 11], true),
    ([5, 12, 13, 14], true),
    ([6, 14, 15, 7], true),
    ([8, 16, 17, 10], true),
    ([11, 18, 19, 12], true),
    ([13, 20, 21, 15], true),
    ([16, 21, 22, 23], true),
    ([17, 23, 24, 18], true),
    ([19, 24, 22, 20], true),
];

const T6: Data = &[
    ([1, 2, 5, 6], false),
    ([4, 7, 8, 3], true),
    ([5, 9, 10, 11], true),
    ([6, 11, 12, 13], true),
    ([7, 14, 15, 16], true),
    ([8, 16, 17, 9], true),
    ([10, 18, 19, 12], true),
    ([13, 20, 21, 14], true),
    ([15, 22, 23, 17], true),
    ([18, 23, 24, 25], true),
    ([19, 25, 26, 20], true),
    ([21, 26, 24, 22], true),
];

const CLASP: Data = &[
    ([1, 5, 6, 7], false),
    ([2, 8, 9, 5], true),
    ([3, 10, 11, 12], true),
    ([4, 7, 13, 10], false),
    ([6, 9, 14, 15], false),
    ([8, 12, 16, 14], false),
    ([11, 13, 15, 16], true),
];

/// σ1^5 split into two 2-tassels and two single crossings. Crossings 0 and
/// 5 start the first tassel, 1 and 4 the second.
const TENEVA_BASE: Data = &[
    ([1, 2, 13, 14], false),
    ([9, 3, 17, 18], false),
    ([4, 10, 11, 12], true),
    ([9, 15, 11, 16], true),
    ([12, 15, 18, 17], false),
    ([10, 14, 13, 16], true),
];

fn tangle(data: Data) -> Tangle {
    Tangle { crossings: data.iter().map(|&(edges, under_even)| RawCrossing { edges, under_even }).collect() }
}

fn build(id: TemplateId, shape: SiteShape, data: Data, delta: i64) -> Template {
    let tangle = tangle(data);
    let certificate = certify_against(&tangle, &shape.reference(1))
        .unwrap_or_else(|e| panic!("template {id} fails certification: {e}"));
    assert_eq!(tangle.len() as i64 - shape.crossings() as i64, delta, "template {id}: declared delta");
    assert!(
        certificate.interior_faces.iter().all(|&f| f >= 3),
        "template {id} has a lune inside"
    );
    Template { id, shape, tangle, delta, certificate }
}

/// The fixed-size templates, certified on first use.
pub fn template(id: TemplateId) -> &'static Template {
    static ALL: OnceLock<Vec<Template>> = OnceLock::new();
    let all = ALL.get_or_init(|| {
        vec![
            build(TemplateId::MainLemma, SiteShape::Twist(2), MAIN, 8),
            build(TemplateId::Fig3Variant, SiteShape::Twist(2), FIG3, 5),
            build(TemplateId::Tassel3, SiteShape::Twist(3), T3, 5),
            build(TemplateId::Tassel4, SiteShape::Twist(4), T4, 5),
            build(TemplateId::Tassel5, SiteShape::Twist(5), T5, 6),
            build(TemplateId::Tassel6, SiteShape::Twist(6), T6, 6),
            build(TemplateId::Clasp, SiteShape::Clasp, CLASP, 5),
        ]
    });
    all.iter().find(|t| t.id == id).expect("Teneva templates come from teneva_template")
}

/// The template for one k-crossing chunk of a tassel's chunk plan.
pub fn tassel_template(k: usize) -> Option<&'static Template> {
    match k {
        2 => Some(template(TemplateId::MainLemma)),
        3 => Some(template(TemplateId::Tassel3)),
        4 => Some(template(TemplateId::Tassel4)),
        5 => Some(template(TemplateId::Tassel5)),
        6 => Some(template(TemplateId::Tassel6)),
        _ => None,
    }
}

/// Tassel sizes left by one Teneva transformation of σ1^k: (j, j) for
/// k = 2j + 1 and (j, j − 1) for k = 2j.
pub fn teneva_split(k: usize) -> (usize, usize) {
    let j = k / 2;
    (j, k - 1 - j)
}

/// The Teneva tangle for σ1^k, k ≥ 5, grown from the 5-crossing base by
/// lengthening its two tassels; unchecked.
pub fn teneva_tangle(k: usize) -> Option<Tangle> {
    if k < 5 {
        return None;
    }
    let (a, b) = teneva_split(k);
    let mut t = tangle(TENEVA_BASE);
    let (mut ta, mut tb) = (5, 4);
    for _ in 2..a {
        t = t.grow_chain(0, ta)?;
        ta = t.len() - 1;
    }
    for _ in 2..b {
        t = t.grow_chain(1, tb)?;
        tb = t.len() - 1;
    }
    Some(t)
}

/// Certified Teneva template for σ1^k (k ≥ 5), cached per k.
pub fn teneva_template(k: usize) -> Option<Template> {
    use std::sync::Mutex;
    static CACHE: OnceLock<Mutex<BTreeMap<usize, Template>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(BTreeMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&k) {
        return Some(t.clone());
    }
    let tangle = teneva_tangle(k)?;
    let shape = SiteShape::Twist(k);
    let certificate = certify_against(&tangle, &shape.reference(1))
        .unwrap_or_else(|e| panic!("Teneva tangle for k = {k} fails certification: {e}"));
    let t = Template { id: TemplateId::Teneva, shape, tangle, delta: 1, certificate };
    cache.lock().expect("cache lock").insert(k, t.clone());
    Some(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_templates_certify() {
        for id in [
            TemplateId::MainLemma,
            TemplateId::Fig3Variant,
            TemplateId::Tassel3,
            TemplateId::Tassel4,
            TemplateId::Tassel5,
            TemplateId::Tassel6,
            TemplateId::Clasp,
        ] {
            let t = template(id);
            assert_eq!(t.adds_color(), id == TemplateId::Fig3Variant, "{id}");
        }
        assert_eq!(template(TemplateId::MainLemma).tangle.len(), 10);
    }

    #[test]
    fn reflected_templates_certify_for_negative_twists() {
        let mut all: Vec<Template> = [
            TemplateId::MainLemma,
            TemplateId::Fig3Variant,
            TemplateId::Tassel3,
            TemplateId::Tassel4,
            TemplateId::Tassel5,
            TemplateId::Tassel6,
        ]
        .into_iter()
        .map(|id| template(id).clone())
        .collect();
        all.extend((5..=9).map(|k| teneva_template(k).unwrap()));
        for t in all {
            let k = t.shape.crossings() as i64;
            assert!(Tangle::twist(k).reflected().isomorphic(&Tangle::twist(-k)));
            let c = certify_against(&t.tangle_for(-1), &Tangle::twist(-k)).unwrap();
            assert_eq!(c.palette.len(), t.certificate.palette.len(), "{}", t.id);
            assert_eq!(c.palette == c.reference_palette, !t.adds_color(), "{}", t.id);
        }
    }

    #[test]
    fn fig3_adds_exactly_one_color() {
        let c = &template(TemplateId::Fig3Variant).certificate;
        assert_eq!(c.palette.len(), c.reference_palette.len() + 1);
        let f = template(TemplateId::Fig3Variant).color_formulas();
        // affine combinations: coefficients sum to one
        assert!(f.values().all(|&(x, y)| x + y == 1));
        assert_eq!(formula_string((-2, 3)), "3b-2a");
        assert_eq!(formula_string((-1, 2)), "2b-a");
        assert_eq!(formula_string((1, 0)), "a");
    }

    #[test]
    fn teneva_tangles_certify_with_the_same_palette() {
        for k in 5..=13 {
            let t = teneva_template(k).unwrap();
            assert_eq!(t.tangle.len(), k + 1);
            assert_eq!(t.certificate.palette, t.certificate.reference_palette, "k={k}");
        }
        assert!(teneva_template(4).is_none());
    }
}
