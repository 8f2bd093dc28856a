//! Exact-rational multivariate polynomials.
//!
//! A [`Poly`] carries its ring (an ordered list of variable names) and a
//! term list kept sorted in descending degree-reverse-lexicographic order,
//! which is also the serialization order. Gröbner computations in other
//! orders work on re-sorted copies of the term list (see [`groebner`]).

mod cyclotomic;
mod groebner;
mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use cyclotomic::cyclotomic_coeffs;
pub use groebner::{buchberger, eliminate, ideal_dimension, ideal_member, linear_part, GroebnerBasis};
pub(crate) use groebner::{eliminate_gens, max_independent};
pub use parse::parse_poly;

/// Exact rational coefficient; always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Ordered variable list shared by every polynomial of one ring.
pub type Vars = Arc<[String]>;

pub fn vars_from<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// Formats as `p/q`, omitting `/q` when `q = 1`.
pub fn format_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at position {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("unknown variable `{name}` at position {position}")]
    UnknownVariable { name: String, position: usize },
    #[error("the ideal contains 1")]
    UnitIdeal,
    #[error("variable `{0}` is not in the target ring")]
    NotInRing(String),
}

/// Exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Box<[u32]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars].into_boxed_slice())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e.into_boxed_slice())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(self.0.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bitmask of variables with nonzero exponent (first 64 variables).
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }
}

/// Supported monomial orders. `Block(k)` compares the first `k` variables by
/// degrevlex and breaks ties by degrevlex on the remaining ones; it is the
/// elimination order for the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    Block(usize),
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b.iter()).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Block(k) => degrevlex(&a.0[..k], &b.0[..k]).then_with(|| degrevlex(&a.0[k..], &b.0[k..])),
        }
    }
}

/// Term list, sorted descending in some monomial order, no zero coefficients.
pub(crate) type Terms = Vec<(Monomial, Rational)>;

pub(crate) fn sort_terms(terms: &mut Terms, order: MonomialOrder) {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
}

/// `a + c * m * b` for sorted term lists.
pub(crate) fn add_scaled(
    a: &[(Monomial, Rational)],
    c: &Rational,
    m: Option<&Monomial>,
    b: &[(Monomial, Rational)],
    order: MonomialOrder,
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let shifted = |t: &(Monomial, Rational)| -> (Monomial, Rational) {
        let mono = match m {
            Some(m) => m.mul(&t.0),
            None => t.0.clone(),
        };
        (mono, c * &t.1)
    };
    while i < a.len() && j < b.len() {
        let bj = shifted(&b[j]);
        match order.cmp(&a[i].0, &bj.0) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(bj);
                j += 1;
            }
            Ordering::Equal => {
                let s = &a[i].1 + &bj.1;
                if !s.is_zero() {
                    out.push((bj.0, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(shifted));
    out
}

/// Multivariate polynomial over Q in a named ring.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vars,
    terms: Terms,
}

impl Poly {
    pub fn zero(vars: Vars) -> Self {
        Poly {
            vars,
            terms: Vec::new(),
        }
    }

    pub fn constant(vars: Vars, c: Rational) -> Self {
        let n = vars.len();
        let terms = if c.is_zero() {
            vec![]
        } else {
            vec![(Monomial::one(n), c)]
        };
        Poly { vars, terms }
    }

    pub fn var(vars: Vars, i: usize) -> Self {
        let n = vars.len();
        Poly {
            vars,
            terms: vec![(Monomial::var(n, i), Rational::one())],
        }
    }

    pub fn var_named(vars: &Vars, name: &str) -> Option<Self> {
        let i = vars.iter().position(|v| v == name)?;
        Some(Poly::var(vars.clone(), i))
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(vars: Vars, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len(), "exponent vector length mismatch");
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_terms(&mut terms, MonomialOrder::DegRevLex);
        Poly { vars, terms }
    }

    pub(crate) fn from_sorted(vars: Vars, mut terms: Terms, order: MonomialOrder) -> Self {
        if order != MonomialOrder::DegRevLex {
            sort_terms(&mut terms, MonomialOrder::DegRevLex);
        }
        Poly { vars, terms }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub(crate) fn terms_in(&self, order: MonomialOrder) -> Terms {
        let mut t = self.terms.clone();
        if order != MonomialOrder::DegRevLex {
            sort_terms(&mut t, order);
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Indices of variables that occur with nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.vars.len()];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars.clone());
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.vars, other.vars);
        Poly {
            vars: self.vars.clone(),
            terms: add_scaled(
                &self.terms,
                &Rational::one(),
                None,
                &other.terms,
                MonomialOrder::DegRevLex,
            ),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.vars, other.vars);
        Poly {
            vars: self.vars.clone(),
            terms: add_scaled(
                &self.terms,
                &-Rational::one(),
                None,
                &other.terms,
                MonomialOrder::DegRevLex,
            ),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = Poly::zero(self.vars.clone());
        for (m, c) in &self.terms {
            out.terms = add_scaled(&out.terms, c, Some(m), &other.terms, MonomialOrder::DegRevLex);
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::constant(self.vars.clone(), Rational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so the leading (degrevlex) coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }

    /// Re-expresses the polynomial in another ring, matching variables by name.
    pub fn to_ring(&self, target: &Vars) -> Result<Poly, PolyError> {
        if Arc::ptr_eq(&self.vars, target) || self.vars == *target {
            return Ok(Poly {
                vars: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let idx: HashMap<&str, usize> = target.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let mut map = vec![None; self.vars.len()];
        for i in self.support() {
            map[i] = Some(
                *idx.get(self.vars[i].as_str())
                    .ok_or_else(|| PolyError::NotInRing(self.vars[i].clone()))?,
            );
        }
        let n = target.len();
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[map[i].unwrap()] = x;
                }
            }
            (Monomial(e.into_boxed_slice()), c.clone())
        });
        Ok(Poly::from_terms(target.clone(), terms))
    }

    /// Renames variables through `rename` and moves into `target`.
    pub fn rename_into(&self, rename: &dyn Fn(&str) -> String, target: &Vars) -> Result<Poly, PolyError> {
        let renamed: Vars = self.vars.iter().map(|v| rename(v)).collect::<Vec<_>>().into();
        let idx: HashMap<&str, usize> = target.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let n = target.len();
        let mut map = vec![None; self.vars.len()];
        for i in self.support() {
            map[i] = Some(
                *idx.get(renamed[i].as_str())
                    .ok_or_else(|| PolyError::NotInRing(renamed[i].clone()))?,
            );
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = vec![0; n];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    e[map[i].unwrap()] += x;
                }
            }
            (Monomial(e.into_boxed_slice()), c.clone())
        });
        Ok(Poly::from_terms(target.clone(), terms))
    }

    /// Substitutes `images[i]` for variable `i`. All images live in the
    /// same ring, which becomes the ring of the result.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars.len());
        let ring = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
        let mut out = Poly::zero(ring.clone());
        for (m, c) in &self.terms {
            let mut t = Poly::constant(ring.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let p = powers.entry((i, e)).or_insert_with(|| images[i].pow(e));
                    t = t.mul(p);
                }
            }
            out = out.add(&t);
        }
        out
    }

    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &[String], m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(&vars[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical serialization: degrevlex term order, `p/q` coefficients,
/// unit coefficients omitted on non-constant monomials.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else {
                if !abs.is_one() {
                    write!(f, "{}*", format_rational(&abs))?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
