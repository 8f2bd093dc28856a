use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{EFieldError, Result};
use crate::linalg::{self, QMatrix};
use crate::poly::{
    buchberger, eliminate, format_rational, ideal_member, parse_poly, parse_rational, GroebnerBasis, MonomialOrder,
    Poly, Rational, Vars,
};

/// On-disk JSON form of a presentation.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
    #[serde(default)]
    pub linear_relations: Vec<Vec<String>>,
    #[serde(default)]
    pub poly_relations: Vec<String>,
}

/// Unvalidated presentation. Polynomial relations may live in any ring whose
/// variables are named `x_<gen>` / `y_<gen>`.
#[derive(Clone, Debug)]
pub struct RawPresentation {
    pub generators: Vec<String>,
    pub kernel: Option<String>,
    /// Rows indexed like `generators`.
    pub linear_relations: QMatrix,
    pub poly_relations: Vec<Poly>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ValidateOptions {
    /// Reject instead of closing under the homomorphism law and `ex(τ) = 1`.
    pub strict: bool,
}

/// Validated presentation: generators sorted, linear relations in reduced
/// row echelon form, and the relation ideal (which contains the linear
/// relations and their multiplicative counterparts) held as a reduced
/// degrevlex Gröbner basis over `x_g.., y_g..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EFieldPresentation {
    generators: Vec<String>,
    kernel: Option<String>,
    linear_relations: QMatrix,
    ring: Vars,
    ideal: GroebnerBasis,
}

pub(crate) fn x_var(g: &str) -> String {
    format!("x_{g}")
}

pub(crate) fn y_var(g: &str) -> String {
    format!("y_{g}")
}

pub(crate) fn ring_for(generators: &[String]) -> Vars {
    generators
        .iter()
        .map(|g| x_var(g))
        .chain(generators.iter().map(|g| y_var(g)))
        .collect::<Vec<_>>()
        .into()
}

fn valid_name(g: &str) -> bool {
    !g.is_empty() && g.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// `∏_{m_i>0} y_i^{m_i} − ∏_{m_i<0} y_i^{−m_i}` for the row with
/// denominators cleared.
fn coherence_binomial(row: &[Rational], generators: &[String], ring: &Vars) -> Poly {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut pos = Poly::constant(ring.clone(), Rational::one());
    let mut neg = Poly::constant(ring.clone(), Rational::one());
    for (q, g) in row.iter().zip(generators) {
        let m = (q * Rational::from_integer(lcm.clone())).to_integer();
        if m.is_zero() {
            continue;
        }
        let e: u32 = m.abs().try_into().expect("exponent overflow");
        let y = Poly::var_named(ring, &y_var(g)).unwrap().pow(e);
        if m.is_positive() {
            pos = pos.mul(&y);
        } else {
            neg = neg.mul(&y);
        }
    }
    pos.sub(&neg)
}

impl RawPresentation {
    pub fn validate(&self) -> Result<EFieldPresentation> {
        self.validate_with(ValidateOptions::default())
    }

    pub fn validate_with(&self, opts: ValidateOptions) -> Result<EFieldPresentation> {
        let n = self.generators.len();
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !valid_name(g) {
                return Err(EFieldError::Invalid(format!("bad generator name `{g}`")));
            }
            if !seen.insert(g.clone()) {
                return Err(EFieldError::Invalid(format!("duplicate generator `{g}`")));
            }
        }
        if let Some(k) = &self.kernel {
            if !seen.contains(k) {
                return Err(EFieldError::UnknownGenerator(k.clone()));
            }
        }
        if let Some(row) = self.linear_relations.iter().find(|r| r.len() != n) {
            return Err(EFieldError::Invalid(format!(
                "linear relation has {} entries for {n} generators",
                row.len()
            )));
        }

        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by(|&a, &b| self.generators[a].cmp(&self.generators[b]));
        let generators: Vec<String> = perm.iter().map(|&i| self.generators[i].clone()).collect();
        let permuted: QMatrix = self
            .linear_relations
            .iter()
            .map(|r| perm.iter().map(|&i| r[i].clone()).collect())
            .collect();
        let (linear_relations, _) = linalg::rref(&permuted, n);
        let ring = ring_for(&generators);

        let mut gens: Vec<Poly> = Vec::new();
        for p in &self.poly_relations {
            gens.push(p.to_ring(&ring)?);
        }
        for row in &linear_relations {
            let mut lin = Poly::zero(ring.clone());
            for (q, g) in row.iter().zip(&generators) {
                if !q.is_zero() {
                    lin = lin.add(&Poly::var_named(&ring, &x_var(g)).unwrap().scale(q));
                }
            }
            gens.push(lin);
        }

        let mut closure: Vec<(Option<usize>, Poly)> = linear_relations
            .iter()
            .enumerate()
            .map(|(i, row)| (Some(i), coherence_binomial(row, &generators, &ring)))
            .collect();
        if let Some(k) = &self.kernel {
            let y = Poly::var_named(&ring, &y_var(k)).unwrap();
            closure.push((None, y.sub(&Poly::constant(ring.clone(), Rational::one()))));
        }
        if opts.strict {
            let base = buchberger(&ring, &gens, MonomialOrder::DegRevLex);
            for (row, b) in &closure {
                if !ideal_member(b, &base) {
                    return Err(match row {
                        Some(row) => EFieldError::IncoherentLinearRelation {
                            row: *row,
                            binomial: b.to_string(),
                        },
                        None => EFieldError::Invalid(format!("kernel requires `{b}` in the ideal")),
                    });
                }
            }
        }
        gens.extend(closure.into_iter().map(|(_, b)| b));

        let ideal = buchberger(&ring, &gens, MonomialOrder::DegRevLex);
        if ideal.is_unit() {
            return Err(EFieldError::ImproperIdeal);
        }
        if let Some(k) = &self.kernel {
            if !eliminate(&ideal, &[x_var(k)]).is_empty() {
                return Err(EFieldError::KernelCollapsed(k.clone()));
            }
        }
        Ok(EFieldPresentation {
            generators,
            kernel: self.kernel.clone(),
            linear_relations,
            ring,
            ideal,
        })
    }
}

impl PresentationFile {
    pub fn to_raw(&self) -> Result<RawPresentation> {
        let ring = ring_for(&self.generators);
        let linear_relations = self
            .linear_relations
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).ok_or_else(|| EFieldError::Invalid(format!("bad rational `{s}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<QMatrix>>()?;
        let poly_relations = self
            .poly_relations
            .iter()
            .map(|s| parse_poly(s, &ring).map_err(EFieldError::from))
            .collect::<Result<Vec<_>>>()?;
        Ok(RawPresentation {
            generators: self.generators.clone(),
            kernel: self.kernel.clone(),
            linear_relations,
            poly_relations,
        })
    }
}

impl EFieldPresentation {
    pub fn from_json(text: &str, opts: ValidateOptions) -> Result<Self> {
        let file: PresentationFile = serde_json::from_str(text).map_err(|e| EFieldError::Invalid(e.to_string()))?;
        file.to_raw()?.validate_with(opts)
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            generators: self.generators.clone(),
            kernel: self.kernel.clone(),
            linear_relations: self
                .linear_relations
                .iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect(),
            poly_relations: self.ideal.generators().iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("presentation serializes")
    }

    pub fn to_raw(&self) -> RawPresentation {
        RawPresentation {
            generators: self.generators.clone(),
            kernel: self.kernel.clone(),
            linear_relations: self.linear_relations.clone(),
            poly_relations: self.ideal.generators(),
        }
    }

    /// Presentation with no generators.
    pub fn empty() -> Self {
        RawPresentation {
            generators: vec![],
            kernel: None,
            linear_relations: vec![],
            poly_relations: vec![],
        }
        .validate()
        .unwrap()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn kernel(&self) -> Option<&str> {
        self.kernel.as_deref()
    }

    pub fn linear_relations(&self) -> &QMatrix {
        &self.linear_relations
    }

    pub fn ring(&self) -> &Vars {
        &self.ring
    }

    pub fn ideal(&self) -> &GroebnerBasis {
        &self.ideal
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, g: &str) -> Result<usize> {
        self.generators
            .binary_search_by(|h| h.as_str().cmp(g))
            .map_err(|_| EFieldError::UnknownGenerator(g.to_string()))
    }

    /// Bitmask of a generator subset (canonical order).
    pub fn mask_of<S: AsRef<str>>(&self, subset: &[S]) -> Result<u64> {
        assert!(self.generators.len() <= 64);
        subset
            .iter()
            .try_fold(0u64, |m, g| Ok(m | (1u64 << self.index_of(g.as_ref())?)))
    }

    pub fn names_of(&self, mask: u64) -> Vec<String> {
        (0..self.generators.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.generators[i].clone())
            .collect()
    }

    pub fn full_mask(&self) -> u64 {
        if self.generators.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.generators.len()) - 1
        }
    }

    /// Fresh generator name `<prefix><k>` with the smallest unused `k ≥ 1`.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (1..)
            .map(|k| format!("{prefix}{k}"))
            .find(|n| self.generators.binary_search(n).is_err())
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rational;

    fn raw(gens: &[&str], kernel: Option<&str>, lin: &[&[i64]], polys: &[&str]) -> RawPresentation {
        let generators: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let ring = ring_for(&generators);
        RawPresentation {
            generators,
            kernel: kernel.map(str::to_string),
            linear_relations: lin.iter().map(|r| r.iter().map(|&q| rational(q)).collect()).collect(),
            poly_relations: polys.iter().map(|s| parse_poly(s, &ring).unwrap()).collect(),
        }
    }

    #[test]
    fn free_generator_is_unchanged() {
        let p = raw(&["x1"], None, &[], &[]).validate().unwrap();
        assert_eq!(p.generators(), ["x1"]);
        assert!(p.ideal().is_empty());
        assert!(p.linear_relations().is_empty());
    }

    #[test]
    fn coherence_closure_adds_binomial() {
        let p = raw(&["x", "h"], None, &[&[-1, 2]], &[]).validate().unwrap();
        // generators sorted: h, x; row 2h - x normalized to h - 1/2 x
        assert_eq!(p.generators(), ["h", "x"]);
        let expected = parse_poly("y_h^2 - y_x", p.ring()).unwrap();
        assert!(ideal_member(&expected, p.ideal()));
    }

    #[test]
    fn strict_mode_rejects_missing_binomial() {
        let r = raw(&["x", "h"], None, &[&[-1, 2]], &[]);
        assert!(matches!(
            r.validate_with(ValidateOptions { strict: true }),
            Err(EFieldError::IncoherentLinearRelation { .. })
        ));
        let ok = raw(&["x", "h"], None, &[&[-1, 2]], &["y_h^2 - y_x"]);
        assert!(ok.validate_with(ValidateOptions { strict: true }).is_ok());
    }

    #[test]
    fn kernel_collapse_detected() {
        let r = raw(&["tau"], Some("tau"), &[], &["y_tau - 1", "x_tau - 1"]);
        assert_eq!(r.validate(), Err(EFieldError::KernelCollapsed("tau".into())));
    }

    #[test]
    fn improper_ideal_detected() {
        let r = raw(&["x1"], None, &[], &["y_x1", "y_x1 - 1"]);
        assert_eq!(r.validate(), Err(EFieldError::ImproperIdeal));
    }

    #[test]
    fn duplicate_and_unknown_names() {
        assert!(matches!(
            raw(&["a", "a"], None, &[], &[]).validate(),
            Err(EFieldError::Invalid(_))
        ));
        assert!(matches!(
            raw(&["a"], Some("b"), &[], &[]).validate(),
            Err(EFieldError::UnknownGenerator(_))
        ));
    }

    #[test]
    fn json_round_trip_is_stable() {
        let p = raw(&["x", "h"], None, &[&[-1, 2]], &[]).validate().unwrap();
        let text = p.to_json();
        let q = EFieldPresentation::from_json(&text, ValidateOptions::default()).unwrap();
        assert_eq!(p, q);
        assert_eq!(text, q.to_json());
    }
}
