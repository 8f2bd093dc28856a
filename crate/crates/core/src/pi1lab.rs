//! A finite-level model of π₁-like functors on powers of the
//! multiplicative group.
//!
//! Objects of `G_m^r` are torsion points of order dividing `N`, written
//! additively as elements of `(Z/N)^r` (the point `k` codes `ζ_N^k` for the
//! primitive root selected by the model). Paths carry a start point and a
//! rational winding vector; a winding of `1` in one coordinate is the
//! generator loop. The model parameter `u` is the unit saying which
//! primitive `N`-th root a winding of `1/N` ends at.

use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Winding = Ratio<i64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Pi1Error {
    #[error("level must be positive")]
    InvalidLevel,
    #[error("{u} is not a unit modulo {level}")]
    NonUnit { u: u64, level: u64 },
    #[error("winding denominator {denominator} does not divide the level {level}")]
    LevelInsufficient { denominator: i64, level: u64 },
    #[error("lift start does not lie over the path start")]
    StartNotInFiber,
    #[error("cover matrix is singular")]
    SingularCover,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("levels {0} and {1} differ")]
    IncompatibleLevels(u64, u64),
}

pub type Result<T> = std::result::Result<T, Pi1Error>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TorusFunctorModel {
    level: u64,
    u: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusPath {
    pub start: Vec<u64>,
    pub winding: Vec<Winding>,
}

impl TorusPath {
    /// The generator loop in coordinate `i` of `G_m^r`, based at `start`.
    pub fn generator(start: Vec<u64>, i: usize) -> Self {
        let winding = (0..start.len())
            .map(|j| if i == j { Winding::one() } else { Winding::zero() })
            .collect();
        TorusPath { start, winding }
    }

    pub fn rank(&self) -> usize {
        self.start.len()
    }
}

impl fmt::Display for TorusPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.winding.iter().map(|w| w.to_string()).collect();
        write!(f, "start {:?} winding [{}]", self.start, w.join(", "))
    }
}

/// A cover of `G_m^r`: `z ↦ z^n` in every coordinate, or the monomial map
/// given by an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverMap {
    Power(u64),
    Matrix(Vec<Vec<i64>>),
}

impl CoverMap {
    fn matrix(&self, r: usize) -> Vec<Vec<i64>> {
        match self {
            CoverMap::Power(n) => (0..r)
                .map(|i| (0..r).map(|j| if i == j { *n as i64 } else { 0 }).collect())
                .collect(),
            CoverMap::Matrix(m) => m.clone(),
        }
    }

    /// Image of a torsion point.
    pub fn apply(&self, level: u64, x: &[u64]) -> Vec<u64> {
        let n = level as i64;
        self.matrix(x.len())
            .iter()
            .map(|row| {
                row.iter()
                    .zip(x)
                    .fold(0i64, |acc, (&a, &b)| (acc + a.rem_euclid(n) * b as i64) % n) as u64
            })
            .collect()
    }
}

fn invert(m: &[Vec<i64>]) -> Option<Vec<Vec<Winding>>> {
    let r = m.len();
    let mut a: Vec<Vec<Winding>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&x| Winding::from_integer(x))
                .chain((0..r).map(|j| Winding::from_integer((i == j) as i64)))
                .collect()
        })
        .collect();
    for c in 0..r {
        let p = (c..r).find(|&i| !a[i][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= inv;
        }
        for i in 0..r {
            if i != c && !a[i][c].is_zero() {
                let f = a[i][c];
                for j in 0..2 * r {
                    let t = a[c][j];
                    a[i][j] -= f * t;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[r..].to_vec()).collect())
}

impl TorusFunctorModel {
    pub fn new(level: u64, u: u64) -> Result<Self> {
        if level == 0 {
            return Err(Pi1Error::InvalidLevel);
        }
        let u = u % level;
        if u.gcd(&level) != 1 && level != 1 {
            return Err(Pi1Error::NonUnit { u, level });
        }
        Ok(TorusFunctorModel { level, u })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    fn check_winding(&self, w: &Winding) -> Result<()> {
        if self.level as i64 % w.denom() != 0 {
            return Err(Pi1Error::LevelInsufficient {
                denominator: *w.denom(),
                level: self.level,
            });
        }
        Ok(())
    }

    fn check_path(&self, p: &TorusPath) -> Result<()> {
        if p.start.len() != p.winding.len() {
            return Err(Pi1Error::Shape(format!(
                "{} start coordinates, {} windings",
                p.start.len(),
                p.winding.len()
            )));
        }
        p.winding.iter().try_for_each(|w| self.check_winding(w))
    }

    /// `start_i + u·N·winding_i` in `Z/N`.
    pub fn endpoint(&self, p: &TorusPath) -> Result<Vec<u64>> {
        self.check_path(p)?;
        let n = self.level as i64;
        Ok(p.start
            .iter()
            .zip(&p.winding)
            .map(|(&s, w)| {
                let steps = (w * n).to_integer().rem_euclid(n);
                ((s as i64 + self.u as i64 * steps) % n) as u64
            })
            .collect())
    }

    /// The unique lift of `p` through `cover` starting at `lift_start`.
    pub fn lift_path(&self, cover: &CoverMap, p: &TorusPath, lift_start: &[u64]) -> Result<TorusPath> {
        self.check_path(p)?;
        let r = p.rank();
        if lift_start.len() != r {
            return Err(Pi1Error::Shape(format!(
                "lift start has {} coordinates, path has {r}",
                lift_start.len()
            )));
        }
        let m = cover.matrix(r);
        if m.len() != r || m.iter().any(|row| row.len() != r) {
            return Err(Pi1Error::Shape(format!("cover matrix is not {r}×{r}")));
        }
        let inv = invert(&m).ok_or(Pi1Error::SingularCover)?;
        let start: Vec<u64> = lift_start.iter().map(|x| x % self.level).collect();
        let base: Vec<u64> = p.start.iter().map(|x| x % self.level).collect();
        if cover.apply(self.level, &start) != base {
            return Err(Pi1Error::StartNotInFiber);
        }
        let winding: Vec<Winding> = inv
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&p.winding)
                    .fold(Winding::zero(), |acc, (a, w)| acc + a * w)
            })
            .collect();
        winding.iter().try_for_each(|w| self.check_winding(w))?;
        Ok(TorusPath { start, winding })
    }

    /// `(n, ξ_n)` for every divisor `n` of the level: the endpoint of the lift
    /// of the generator loop through `z ↦ z^n` starting at the identity.
    pub fn xi_sequence(&self) -> Vec<(u64, u64)> {
        divisors(self.level)
            .into_iter()
            .map(|n| {
                let lift = self
                    .lift_path(&CoverMap::Power(n), &TorusPath::generator(vec![0], 0), &[0])
                    .expect("divisors of the level always lift");
                (n, self.endpoint(&lift).unwrap()[0])
            })
            .collect()
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// Every point of `(Z/N)^r`, in lexicographic order.
pub fn torsion_points(level: u64, r: usize) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..r {
        out = out
            .into_iter()
            .flat_map(|p| (0..level).map(move |x| [p.clone(), vec![x]].concat()))
            .collect();
    }
    out
}

/// All windings `k/N` with `|k| ≤ radius·N` whose image under `z ↦ z^n` is
/// `w`, found by enumeration rather than division.
pub fn windings_over(level: u64, n: u64, w: Winding, radius: i64) -> Vec<Winding> {
    let big_n = level as i64;
    (-radius * big_n..=radius * big_n)
        .map(|k| Winding::new(k, big_n))
        .filter(|q| *q * Winding::from_integer(n as i64) == w)
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    /// Objects are the torsion points.
    Objects,
    /// Products factor componentwise.
    Products,
    /// Any two objects are joined by a path.
    Connected,
    /// Paths lift uniquely along covers.
    Lifting,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (k, name) = match self {
            Axiom::Objects => (0, "objects"),
            Axiom::Products => (1, "products"),
            Axiom::Connected => (2, "connected"),
            Axiom::Lifting => (3, "lifting"),
        };
        write!(f, "({k}) {name}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomEntry {
    pub r: usize,
    /// Cover degree for lifting entries, 0 otherwise.
    pub n: u64,
    pub axiom: Axiom,
    /// First failing start point, if any.
    pub counterexample: Option<Vec<u64>>,
    pub checked: u64,
}

impl AxiomEntry {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub entries: Vec<AxiomEntry>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(AxiomEntry::passed)
    }
}

/// Exhaustively checks the functor axioms on `G_m^r` for `1 ≤ r ≤ r_max`.
pub fn check_axioms(m: &TorusFunctorModel, r_max: usize) -> AxiomReport {
    let level = m.level();
    let mut entries = Vec::new();
    let mut entry = |r, n, axiom, counterexample: Option<Vec<u64>>, checked| {
        entries.push(AxiomEntry {
            r,
            n,
            axiom,
            counterexample,
            checked,
        })
    };
    for r in 1..=r_max {
        let points = torsion_points(level, r);
        let expected = level.pow(r as u32) as usize;
        let objects_ok = points.len() == expected && points.windows(2).all(|w| w[0] < w[1]);
        entry(r, 0, Axiom::Objects, (!objects_ok).then(Vec::new), points.len() as u64);

        // A product path ends where its factors end.
        let mut bad = None;
        if r >= 2 {
            'outer: for s in &points {
                for i in 0..r {
                    let p = TorusPath::generator(s.clone(), i);
                    let whole = m.endpoint(&p).unwrap();
                    let head = m
                        .endpoint(&TorusPath {
                            start: s[..1].to_vec(),
                            winding: p.winding[..1].to_vec(),
                        })
                        .unwrap();
                    let tail = m
                        .endpoint(&TorusPath {
                            start: s[1..].to_vec(),
                            winding: p.winding[1..].to_vec(),
                        })
                        .unwrap();
                    if whole != [head, tail].concat() {
                        bad = Some(s.clone());
                        break 'outer;
                    }
                }
            }
        }
        entry(r, 0, Axiom::Products, bad, if r >= 2 { points.len() as u64 } else { 0 });

        // Connect the identity to every object.
        let u_inv = inverse_mod(m.u(), level);
        let origin = vec![0; r];
        let bad = points
            .iter()
            .find(|b| {
                let winding = b
                    .iter()
                    .map(|&x| Winding::new((x * u_inv % level.max(1)) as i64, level as i64))
                    .collect();
                m.endpoint(&TorusPath {
                    start: origin.clone(),
                    winding,
                })
                .unwrap()
                    != **b
            })
            .cloned();
        entry(r, 0, Axiom::Connected, bad, points.len() as u64);

        for n in divisors(level) {
            let cover = CoverMap::Power(n);
            let mut bad = None;
            for s in &points {
                let base = cover.apply(level, s);
                let ok = (0..r).all(|i| {
                    let p = TorusPath::generator(base.clone(), i);
                    let Ok(q) = m.lift_path(&cover, &p, s) else {
                        return false;
                    };
                    let projects = q
                        .winding
                        .iter()
                        .zip(&p.winding)
                        .all(|(a, w)| *a * Winding::from_integer(n as i64) == *w);
                    let commutes = cover.apply(level, &m.endpoint(&q).unwrap()) == m.endpoint(&p).unwrap();
                    let unique = windings_over(level, n, p.winding[i], 1) == vec![q.winding[i]];
                    projects && commutes && unique
                });
                if !ok {
                    bad = Some(s.clone());
                    break;
                }
            }
            entry(r, n, Axiom::Lifting, bad, points.len() as u64);
        }
    }
    entries.sort_by_key(|a| (a.r, a.n, a.axiom));
    AxiomReport { entries }
}

fn inverse_mod(u: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let e = (u as i64).extended_gcd(&(n as i64));
    e.x.rem_euclid(n as i64) as u64
}

/// The unit `t` with `u2 = t·u1`; multiplication by `t` carries the first
/// model's distinguished roots of unity onto the second's.
pub fn compare_functors(m1: &TorusFunctorModel, m2: &TorusFunctorModel) -> Result<u64> {
    if m1.level != m2.level {
        return Err(Pi1Error::IncompatibleLevels(m1.level, m2.level));
    }
    let n = m1.level;
    let t = if n == 1 { 0 } else { m2.u * inverse_mod(m1.u, n) % n };
    for ((d1, x1), (d2, x2)) in m1.xi_sequence().into_iter().zip(m2.xi_sequence()) {
        assert_eq!(d1, d2);
        assert_eq!(x1 * t % n, x2, "twist must carry ξ_{d1} across");
    }
    Ok(t)
}

/// Parses a winding such as `1`, `-2` or `1/3`.
pub fn parse_winding(s: &str) -> Option<Winding> {
    let s = s.trim();
    let w: Winding = s.parse().ok()?;
    (!w.denom().is_negative()).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: u64, u: u64) -> TorusFunctorModel {
        TorusFunctorModel::new(n, u).unwrap()
    }

    fn w(a: i64, b: i64) -> Winding {
        Winding::new(a, b)
    }

    #[test]
    fn endpoint_examples() {
        let loop1 = TorusPath {
            start: vec![0],
            winding: vec![w(1, 1)],
        };
        assert_eq!(model(12, 1).endpoint(&loop1), Ok(vec![0]));
        assert_eq!(
            model(12, 1).endpoint(&TorusPath {
                start: vec![0],
                winding: vec![w(1, 3)]
            }),
            Ok(vec![4])
        );
        assert_eq!(
            model(12, 5).endpoint(&TorusPath {
                start: vec![0],
                winding: vec![w(1, 12)]
            }),
            Ok(vec![5])
        );
        assert!(matches!(
            model(12, 1).endpoint(&TorusPath {
                start: vec![0],
                winding: vec![w(1, 5)]
            }),
            Err(Pi1Error::LevelInsufficient {
                denominator: 5,
                level: 12
            })
        ));
    }

    #[test]
    fn non_units_rejected() {
        assert_eq!(
            TorusFunctorModel::new(12, 4),
            Err(Pi1Error::NonUnit { u: 4, level: 12 })
        );
        assert_eq!(TorusFunctorModel::new(0, 1), Err(Pi1Error::InvalidLevel));
        assert!(TorusFunctorModel::new(1, 0).is_ok());
    }

    #[test]
    fn lift_examples() {
        let m = model(12, 1);
        let gen = TorusPath::generator(vec![0], 0);
        let q = m.lift_path(&CoverMap::Power(3), &gen, &[0]).unwrap();
        assert_eq!(q.winding, vec![w(1, 3)]);
        assert_eq!(m.endpoint(&q), Ok(vec![4]));
        assert!(matches!(
            m.lift_path(&CoverMap::Power(5), &gen, &[0]),
            Err(Pi1Error::LevelInsufficient { .. })
        ));
        assert_eq!(m.lift_path(&CoverMap::Power(1), &gen, &[0]), Ok(gen.clone()));
        assert_eq!(
            m.lift_path(&CoverMap::Power(3), &gen, &[1]),
            Err(Pi1Error::StartNotInFiber)
        );
    }

    #[test]
    fn matrix_covers() {
        let m = model(12, 1);
        let cover = CoverMap::Matrix(vec![vec![1, 1], vec![0, 2]]);
        let p = TorusPath::generator(vec![0, 0], 1);
        let q = m.lift_path(&cover, &p, &[0, 0]).unwrap();
        assert_eq!(q.winding, vec![w(-1, 2), w(1, 2)]);
        assert_eq!(cover.apply(12, &m.endpoint(&q).unwrap()), m.endpoint(&p).unwrap());
        let singular = CoverMap::Matrix(vec![vec![1, 1], vec![1, 1]]);
        assert_eq!(m.lift_path(&singular, &p, &[0, 0]), Err(Pi1Error::SingularCover));
    }

    #[test]
    fn xi_examples() {
        let xi: Vec<(u64, u64)> = model(12, 1).xi_sequence();
        assert!(xi.contains(&(2, 6)) && xi.contains(&(3, 4)) && xi.contains(&(12, 1)) && xi.contains(&(1, 0)));
        let xi = model(12, 5).xi_sequence();
        assert!(xi.contains(&(12, 5)) && xi.contains(&(3, 8)) && xi.contains(&(1, 0)));
    }

    #[test]
    fn axioms_hold() {
        let report = check_axioms(&model(12, 1), 2);
        assert!(report.passed(), "{report:?}");
        let keys: Vec<_> = report.entries.iter().map(|e| (e.r, e.n, e.axiom)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(check_axioms(&model(1, 0), 3).passed());
    }

    #[test]
    fn twists() {
        assert_eq!(compare_functors(&model(12, 1), &model(12, 5)), Ok(5));
        assert_eq!(compare_functors(&model(12, 7), &model(12, 7)), Ok(1));
        assert_eq!(
            compare_functors(&model(12, 1), &model(8, 1)),
            Err(Pi1Error::IncompatibleLevels(12, 8))
        );
    }

    #[test]
    fn winding_parsing() {
        assert_eq!(parse_winding("1/3"), Some(w(1, 3)));
        assert_eq!(parse_winding(" -2 "), Some(w(-2, 1)));
        assert_eq!(parse_winding("x"), None);
    }
}
