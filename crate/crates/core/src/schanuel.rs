//! Schanuel screens for explicit exponential-polynomial systems.
//!
//! A system in `n` pairs lives in `Q[x1..xn, y1..yn]`, with `yi` read as
//! `exp(xi)`. The screen asks whether a generic solution of the system, or
//! of any projection onto a subset of the pairs, would have negative
//! predimension.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::efield::{EFieldError, EFieldPresentation, RawPresentation};
use crate::poly::{
    buchberger, eliminate_gens, ideal_dimension, linear_part, parse_poly, GroebnerBasis, MonomialOrder, Poly,
    PolyError, Vars,
};

/// Largest number of pairs whose subsets are enumerated by [`sc_screen`].
pub const MAX_SCREEN_PAIRS: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpSystemFile {
    pub n: usize,
    #[serde(default)]
    pub poly_relations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpSystem {
    n: usize,
    ring: Vars,
    ideal: GroebnerBasis,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScVerdict {
    Compatible,
    /// 1-based pair indices of the smallest violating projection.
    Contradicts(Vec<usize>),
}

impl ExpSystem {
    pub fn ring_of(n: usize) -> Vars {
        (1..=n)
            .map(|i| format!("x{i}"))
            .chain((1..=n).map(|i| format!("y{i}")))
            .collect::<Vec<_>>()
            .into()
    }

    pub fn new(n: usize, gens: &[Poly]) -> Result<Self, PolyError> {
        let ring = Self::ring_of(n);
        let gens = gens.iter().map(|g| g.to_ring(&ring)).collect::<Result<Vec<_>, _>>()?;
        let ideal = buchberger(&ring, &gens, MonomialOrder::DegRevLex);
        if ideal.is_unit() {
            return Err(PolyError::UnitIdeal);
        }
        Ok(ExpSystem { n, ring, ideal })
    }

    pub fn from_file(file: &ExpSystemFile) -> Result<Self, PolyError> {
        let ring = Self::ring_of(file.n);
        let gens = file
            .poly_relations
            .iter()
            .map(|s| parse_poly(s, &ring))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(file.n, &gens)
    }

    pub fn from_json(text: &str) -> Result<Self, EFieldError> {
        let file: ExpSystemFile = serde_json::from_str(text).map_err(|e| EFieldError::Invalid(e.to_string()))?;
        Ok(Self::from_file(&file)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Vars {
        &self.ring
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    /// Predimension of a generic solution of the projection onto the pairs
    /// in `mask` (bit `i` for pair `i + 1`).
    fn projected_predimension(&self, mask: u64) -> i64 {
        let members: Vec<usize> = (0..self.n).filter(|i| mask >> i & 1 == 1).collect();
        let keep: HashSet<String> = members
            .iter()
            .flat_map(|&i| [format!("x{}", i + 1), format!("y{}", i + 1)])
            .collect();
        let elim = eliminate_gens(&self.ring, &self.ideal.generators(), &keep);
        let dim = ideal_dimension(&elim).expect("projection of a proper ideal is proper") as i64;
        let xs: Vec<String> = members.iter().map(|&i| format!("x{}", i + 1)).collect();
        let rank = linear_part(&elim, &xs).len() as i64;
        dim - (members.len() as i64 - rank)
    }

    /// The system as a presentation on generators `g1..gn`, with no declared
    /// linear relations.
    pub fn to_presentation(&self) -> Result<EFieldPresentation, EFieldError> {
        let generators: Vec<String> = (1..=self.n).map(|i| format!("g{i}")).collect();
        let target = crate::efield::PresentationFile {
            generators: generators.clone(),
            ..Default::default()
        }
        .to_raw()?;
        let ring: Vars = generators
            .iter()
            .map(|g| format!("x_{g}"))
            .chain(generators.iter().map(|g| format!("y_{g}")))
            .collect::<Vec<_>>()
            .into();
        let rename = |v: &str| format!("{}_g{}", &v[..1], &v[1..]);
        let poly_relations = self
            .ideal
            .generators()
            .iter()
            .map(|p| p.rename_into(&rename, &ring))
            .collect::<Result<Vec<_>, _>>()?;
        RawPresentation {
            poly_relations,
            ..target
        }
        .validate()
    }
}

/// `dim V − (n − r)` with `r` the number of independent linear relations
/// among the `xi` forced by the system.
pub fn generic_predimension(s: &ExpSystem) -> i64 {
    if s.n == 0 {
        return 0;
    }
    s.projected_predimension((1u64 << s.n) - 1)
}

/// Checks every nonempty projection onto a subset of the pairs; the
/// witness is the smallest, then lexicographically least, violator.
pub fn sc_screen(s: &ExpSystem) -> Result<ScVerdict, EFieldError> {
    if s.n > MAX_SCREEN_PAIRS {
        return Err(EFieldError::SubsetLatticeTooLarge {
            free: s.n,
            budget: MAX_SCREEN_PAIRS,
        });
    }
    let mut masks: Vec<u64> = (1..1u64 << s.n).collect();
    masks.sort_by_key(|&m| (m.count_ones(), (0..s.n).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>()));
    let first_bad = masks.par_iter().position_first(|&m| s.projected_predimension(m) < 0);
    Ok(match first_bad {
        None => ScVerdict::Compatible,
        Some(k) => ScVerdict::Contradicts((0..s.n).filter(|i| masks[k] >> i & 1 == 1).map(|i| i + 1).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efield::{hrushovski_check, SubsetBudget};

    fn system(n: usize, rels: &[&str]) -> ExpSystem {
        ExpSystem::from_file(&ExpSystemFile {
            n,
            poly_relations: rels.iter().map(|s| s.to_string()).collect(),
        })
        .unwrap()
    }

    #[test]
    fn predimension_examples() {
        assert_eq!(generic_predimension(&system(1, &["y1 - x1"])), 0);
        assert_eq!(generic_predimension(&system(1, &["x1 - 1", "y1 - 2"])), -1);
        assert_eq!(generic_predimension(&system(2, &["y1 - x2", "y2 - x1"])), 0);
        assert_eq!(generic_predimension(&system(2, &[])), 2);
    }

    #[test]
    fn screen_examples() {
        assert_eq!(sc_screen(&system(1, &["y1 - x1"])), Ok(ScVerdict::Compatible));
        assert_eq!(
            sc_screen(&system(1, &["x1 - 1", "y1 - 2"])),
            Ok(ScVerdict::Contradicts(vec![1]))
        );
        assert_eq!(sc_screen(&system(2, &[])), Ok(ScVerdict::Compatible));
    }

    #[test]
    fn projection_can_violate_alone() {
        // The full system has δ = 0 but pair 2 on its own is algebraic.
        let s = system(2, &["x2 - 1", "y2 - 3"]);
        assert_eq!(generic_predimension(&s), 0);
        assert_eq!(sc_screen(&s), Ok(ScVerdict::Contradicts(vec![2])));
    }

    #[test]
    fn unit_ideal_rejected() {
        let r = ExpSystem::from_file(&ExpSystemFile {
            n: 1,
            poly_relations: vec!["x1".into(), "x1 - 1".into()],
        });
        assert_eq!(r, Err(PolyError::UnitIdeal));
    }

    #[test]
    fn compatible_systems_pass_hrushovski() {
        for rels in [&["y1 - x1"][..], &["y1 - x2", "y2 - x1"], &[]] {
            let s = system(2, rels);
            assert_eq!(sc_screen(&s), Ok(ScVerdict::Compatible));
            let p = s.to_presentation().unwrap();
            assert!(hrushovski_check(&p, SubsetBudget::default()).unwrap().passed());
        }
    }
}
