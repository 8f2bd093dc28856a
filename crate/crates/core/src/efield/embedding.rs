//! Embeddings between presentations, the strongness test and free amalgams.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::predim::{lex_key, superset_min, DeltaCtx};
use super::presentation::{ring_for, x_var, y_var};
use super::{EFieldError, EFieldPresentation, RawPresentation, Result, SubsetBudget};
use crate::linalg;
use crate::poly::{ideal_member, Poly, Rational};

/// Image of each source generator as a Q-linear combination of target
/// generators.
pub type GenMap = BTreeMap<String, Vec<(String, Rational)>>;

#[derive(Clone, Debug)]
pub struct PresentationEmbedding {
    source: EFieldPresentation,
    target: EFieldPresentation,
    gen_map: GenMap,
}

impl PresentationEmbedding {
    /// Checks the embedding invariants: total, injective modulo the target's
    /// linear relations, carrying linear relations into the target's
    /// relation span and the source ideal into the target ideal.
    pub fn new(source: EFieldPresentation, target: EFieldPresentation, gen_map: GenMap) -> Result<Self> {
        let bad = |m: String| EFieldError::InvalidEmbedding(m);
        for g in source.generators() {
            if !gen_map.contains_key(g) {
                return Err(bad(format!("no image for `{g}`")));
            }
        }
        for (k, combo) in &gen_map {
            source.index_of(k)?;
            if combo.is_empty() {
                return Err(bad(format!("empty image for `{k}`")));
            }
            for (t, _) in combo {
                target.index_of(t)?;
            }
        }
        let e = PresentationEmbedding {
            source,
            target,
            gen_map,
        };
        let nt = e.target.len();
        let rel_rank = e.target.linear_relations().len();
        let in_span = |v: &Vec<Rational>| {
            let mut rows = e.target.linear_relations().clone();
            rows.push(v.clone());
            linalg::rank(&rows, nt) == rel_rank
        };
        let images: Vec<Vec<Rational>> = e.source.generators().iter().map(|g| e.image_vector(g)).collect();
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                let diff: Vec<Rational> = images[i].iter().zip(&images[j]).map(|(a, b)| a - b).collect();
                if in_span(&diff) {
                    return Err(bad("generator images coincide".into()));
                }
            }
        }
        for row in e.source.linear_relations() {
            let mut v = vec![Rational::zero(); nt];
            for (q, img) in row.iter().zip(&images) {
                for (acc, c) in v.iter_mut().zip(img) {
                    *acc += q * c;
                }
            }
            if !in_span(&v) {
                return Err(bad("a linear relation is not preserved".into()));
            }
        }
        let images = e.ring_images()?;
        for g in e.source.ideal().generators() {
            if !ideal_member(&g.substitute(&images), e.target.ideal()) {
                return Err(bad(format!("relation `{g}` is not preserved")));
            }
        }
        Ok(e)
    }

    /// Maps every source generator to the target generator of the same name.
    pub fn inclusion(source: EFieldPresentation, target: EFieldPresentation) -> Result<Self> {
        let map = source
            .generators()
            .iter()
            .map(|g| (g.clone(), vec![(g.clone(), Rational::one())]))
            .collect();
        Self::new(source, target, map)
    }

    pub fn source(&self) -> &EFieldPresentation {
        &self.source
    }

    pub fn target(&self) -> &EFieldPresentation {
        &self.target
    }

    pub fn gen_map(&self) -> &GenMap {
        &self.gen_map
    }

    fn image_vector(&self, g: &str) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.target.len()];
        for (t, q) in &self.gen_map[g] {
            v[self.target.index_of(t).unwrap()] += q;
        }
        v
    }

    /// Ring map `x_s ↦ Σ q x_t`, `y_s ↦ ∏ y_t^q`; exponential images need
    /// nonnegative integer coefficients.
    fn ring_images(&self) -> Result<Vec<Poly>> {
        let ring = self.target.ring();
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for g in self.source.generators() {
            let mut x = Poly::zero(ring.clone());
            let mut y = Poly::constant(ring.clone(), Rational::one());
            for (t, q) in &self.gen_map[g] {
                x = x.add(&Poly::var_named(ring, &x_var(t)).unwrap().scale(q));
                if !q.is_integer() || q.is_negative() {
                    return Err(EFieldError::InvalidEmbedding(format!(
                        "image of `{g}` has a non-polynomial exponential"
                    )));
                }
                let e: u32 = q
                    .to_integer()
                    .try_into()
                    .map_err(|_| EFieldError::InvalidEmbedding("exponent overflow".into()))?;
                y = y.mul(&Poly::var_named(ring, &y_var(t)).unwrap().pow(e));
            }
            xs.push(x);
            ys.push(y);
        }
        xs.extend(ys);
        Ok(xs)
    }

    /// Target generators supporting the image of a source subset.
    pub(crate) fn image_mask(&self, mask: u64) -> u64 {
        let mut out = 0u64;
        for g in self.source.names_of(mask) {
            for (t, q) in &self.gen_map[&g] {
                if !q.is_zero() {
                    out |= 1 << self.target.index_of(t).unwrap();
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongCheck {
    Pass,
    Fail {
        witness: Vec<String>,
        source_d: i64,
        target_d: i64,
    },
}

impl StrongCheck {
    pub fn passed(&self) -> bool {
        matches!(self, StrongCheck::Pass)
    }
}

pub(crate) fn strong_from_tables(e: &PresentationEmbedding, source_table: &[i64], target_table: &[i64]) -> StrongCheck {
    let ds = superset_min(source_table, e.source.len());
    let dt = superset_min(target_table, e.target.len());
    let bad = (0..=e.source.full_mask())
        .filter(|&m| ds[m as usize] != dt[e.image_mask(m) as usize])
        .min_by_key(|&m| lex_key(m));
    match bad {
        None => StrongCheck::Pass,
        Some(m) => StrongCheck::Fail {
            witness: e.source.names_of(m),
            source_d: ds[m as usize],
            target_d: dt[e.image_mask(m) as usize],
        },
    }
}

/// `d(X)` computed in the source equals `d` of the image support computed
/// in the target, for every source subset `X`.
pub fn is_strong(e: &PresentationEmbedding, budget: SubsetBudget) -> Result<StrongCheck> {
    budget.check(e.source.len())?;
    budget.check(e.target.len())?;
    let st = DeltaCtx::new(&e.source).deltas(&(0..=e.source.full_mask()).collect::<Vec<_>>());
    let tt = DeltaCtx::new(&e.target).deltas(&(0..=e.target.full_mask()).collect::<Vec<_>>());
    Ok(strong_from_tables(e, &st, &tt))
}

/// Free amalgam together with where each side's generators landed.
#[derive(Clone, Debug)]
pub struct Amalgam {
    pub presentation: EFieldPresentation,
    pub from_b: BTreeMap<String, String>,
    pub from_c: BTreeMap<String, String>,
}

fn single_generator(combo: &[(String, Rational)]) -> Option<&str> {
    match combo {
        [(g, q)] if q.is_one() => Some(g),
        _ => None,
    }
}

/// Amalgam of `eb: A ↪ B` and `ec: A ↪ C`: generators of `B` and `C`
/// with the images of `A` identified, the union of linear relations and the
/// sum of the ideals, closed and validated.
pub fn free_amalgam(
    a: &EFieldPresentation,
    eb: &PresentationEmbedding,
    ec: &PresentationEmbedding,
    budget: SubsetBudget,
) -> Result<Amalgam> {
    if eb.source() != a || ec.source() != a {
        return Err(EFieldError::InvalidEmbedding(
            "embeddings must start at the base".into(),
        ));
    }
    for e in [eb, ec] {
        if let StrongCheck::Fail { witness, .. } = is_strong(e, budget)? {
            return Err(EFieldError::StrongnessViolated { witness });
        }
    }
    let b = eb.target();
    let c = ec.target();

    let mut names: BTreeSet<String> = b.generators().iter().cloned().collect();
    let from_b: BTreeMap<String, String> = b.generators().iter().map(|g| (g.clone(), g.clone())).collect();
    let mut from_c: BTreeMap<String, String> = BTreeMap::new();
    let mut identify: Vec<String> = Vec::new();
    for ag in a.generators() {
        match (single_generator(&eb.gen_map()[ag]), single_generator(&ec.gen_map()[ag])) {
            (Some(bg), Some(cg)) => {
                from_c.insert(cg.to_string(), bg.to_string());
            }
            _ => identify.push(ag.clone()),
        }
    }
    for cg in c.generators() {
        if from_c.contains_key(cg) {
            continue;
        }
        let mut name = cg.clone();
        while names.contains(&name) {
            name.push_str("_c");
        }
        names.insert(name.clone());
        from_c.insert(cg.clone(), name);
    }

    let generators: Vec<String> = names.into_iter().collect();
    let index = |g: &str| generators.binary_search_by(|h| h.as_str().cmp(g)).unwrap();
    let n = generators.len();
    let mut linear: Vec<Vec<Rational>> = Vec::new();
    for row in b.linear_relations() {
        let mut v = vec![Rational::zero(); n];
        for (q, g) in row.iter().zip(b.generators()) {
            v[index(&from_b[g])] += q;
        }
        linear.push(v);
    }
    for row in c.linear_relations() {
        let mut v = vec![Rational::zero(); n];
        for (q, g) in row.iter().zip(c.generators()) {
            v[index(&from_c[g])] += q;
        }
        linear.push(v);
    }
    for ag in &identify {
        let mut v = vec![Rational::zero(); n];
        for (g, q) in &eb.gen_map()[ag] {
            v[index(&from_b[g])] += q;
        }
        for (g, q) in &ec.gen_map()[ag] {
            v[index(&from_c[g])] -= q;
        }
        linear.push(v);
    }

    let ring = ring_for(&generators);
    let rename = |map: &BTreeMap<String, String>| {
        let map = map.clone();
        move |v: &str| -> String {
            let (prefix, g) = v.split_at(2);
            format!("{prefix}{}", map[g])
        }
    };
    let mut polys = Vec::new();
    let rb = rename(&from_b);
    for p in b.ideal().generators() {
        polys.push(p.rename_into(&rb, &ring)?);
    }
    let rc = rename(&from_c);
    for p in c.ideal().generators() {
        polys.push(p.rename_into(&rc, &ring)?);
    }
    let kernel = match (b.kernel(), c.kernel()) {
        (Some(kb), Some(kc)) if from_c[kc] != kb => {
            return Err(EFieldError::Invalid(
                "the two kernels are not identified over the base".into(),
            ))
        }
        (Some(kb), _) => Some(kb.to_string()),
        (None, Some(kc)) => Some(from_c[kc].clone()),
        (None, None) => None,
    };
    let presentation = RawPresentation {
        generators,
        kernel,
        linear_relations: linear,
        poly_relations: polys,
    }
    .validate()?;
    Ok(Amalgam {
        presentation,
        from_b,
        from_c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efield::{predimension, PresentationFile};

    fn pres(gens: &[&str], kernel: Option<&str>, polys: &[&str]) -> EFieldPresentation {
        PresentationFile {
            generators: gens.iter().map(|s| s.to_string()).collect(),
            kernel: kernel.map(str::to_string),
            linear_relations: vec![],
            poly_relations: polys.iter().map(|s| s.to_string()).collect(),
        }
        .to_raw()
        .unwrap()
        .validate()
        .unwrap()
    }

    #[test]
    fn strongness_examples() {
        let b = SubsetBudget::default();
        let free = pres(&["x1"], None, &[]);
        let two_free = pres(&["x1", "x2"], None, &[]);
        let e = PresentationEmbedding::inclusion(free.clone(), two_free).unwrap();
        assert_eq!(is_strong(&e, b), Ok(StrongCheck::Pass));

        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        let e = PresentationEmbedding::inclusion(free.clone(), two.clone()).unwrap();
        assert_eq!(
            is_strong(&e, b),
            Ok(StrongCheck::Fail {
                witness: vec!["x1".into()],
                source_d: 1,
                target_d: 0
            })
        );

        let id = PresentationEmbedding::inclusion(two.clone(), two).unwrap();
        assert!(is_strong(&id, b).unwrap().passed());
    }

    #[test]
    fn embedding_must_preserve_relations() {
        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        let free2 = pres(&["x1", "x2"], None, &[]);
        assert!(matches!(
            PresentationEmbedding::inclusion(two, free2),
            Err(EFieldError::InvalidEmbedding(_))
        ));
    }

    #[test]
    fn amalgam_examples() {
        let b = SubsetBudget::default();
        let empty = EFieldPresentation::empty();
        let fb = pres(&["x1"], None, &[]);
        let fc = pres(&["x2"], None, &[]);
        let eb = PresentationEmbedding::inclusion(empty.clone(), fb).unwrap();
        let ec = PresentationEmbedding::inclusion(empty.clone(), fc).unwrap();
        let am = free_amalgam(&empty, &eb, &ec, b).unwrap();
        assert_eq!(am.presentation.generators(), ["x1", "x2"]);
        assert_eq!(predimension(&am.presentation, &["x1", "x2"]), Ok(2));

        let k = pres(&["tau"], Some("tau"), &["y_tau - 1"]);
        let kb = pres(&["tau", "x"], Some("tau"), &["y_tau - 1"]);
        let kc = pres(&["tau", "z"], Some("tau"), &["y_tau - 1"]);
        let eb = PresentationEmbedding::inclusion(k.clone(), kb).unwrap();
        let ec = PresentationEmbedding::inclusion(k.clone(), kc).unwrap();
        let am = free_amalgam(&k, &eb, &ec, b).unwrap();
        assert_eq!(am.presentation.generators(), ["tau", "x", "z"]);
        assert_eq!(predimension(&am.presentation, am.presentation.generators()), Ok(2));

        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        let id = PresentationEmbedding::inclusion(two.clone(), two.clone()).unwrap();
        let am = free_amalgam(&two, &id, &id, b).unwrap();
        assert_eq!(am.presentation, two);
    }

    #[test]
    fn amalgam_renames_clashing_generators() {
        let b = SubsetBudget::default();
        let empty = EFieldPresentation::empty();
        let p = pres(&["x1"], None, &[]);
        let e = PresentationEmbedding::inclusion(empty.clone(), p).unwrap();
        let am = free_amalgam(&empty, &e, &e, b).unwrap();
        assert_eq!(am.presentation.generators(), ["x1", "x1_c"]);
        assert_eq!(am.from_c["x1"], "x1_c");
    }

    #[test]
    fn amalgam_requires_strong_embeddings() {
        let b = SubsetBudget::default();
        let free = pres(&["x1"], None, &[]);
        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        let bad = PresentationEmbedding::inclusion(free.clone(), two).unwrap();
        let id = PresentationEmbedding::inclusion(free.clone(), free.clone()).unwrap();
        assert!(matches!(
            free_amalgam(&free, &bad, &id, b),
            Err(EFieldError::StrongnessViolated { .. })
        ));
    }
}
