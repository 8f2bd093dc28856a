//! Automorphism counting for presentations whose moving part is finite
//! over the fixed part, and Kummer degrees built on top of it.
//!
//! Candidate images of a moving variable `v` are `±NF(∏ u^a)` over the
//! moving variables and the roots of unity of the quotient ring. This
//! covers Kummer-type and cyclotomic relations, which are the only
//! finite constraints the forge catalog produces.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::forge::{apply_step, Step};
use super::presentation::{x_var, y_var};
use super::{EFieldError, EFieldPresentation, Result};
use crate::poly::{buchberger, GroebnerBasis, MonomialOrder, Poly, Rational, Vars};

/// Largest multiplicative order searched when detecting roots of unity.
const MAX_ROOT_ORDER: u32 = 64;
/// Largest power tried when checking that an endomorphism is invertible.
const MAX_PERIOD: usize = 1024;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AutCount {
    Exactly(u64),
    AtLeast(u64),
}

impl AutCount {
    pub fn value(self) -> u64 {
        match self {
            AutCount::Exactly(n) | AutCount::AtLeast(n) => n,
        }
    }
}

impl fmt::Display for AutCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutCount::Exactly(n) => write!(f, "{n}"),
            AutCount::AtLeast(n) => write!(f, ">={n}"),
        }
    }
}

struct Search {
    gb: GroebnerBasis,
    ring: Vars,
    /// Moving variables (indices into `ring`), in search order.
    moving: Vec<usize>,
    candidates: Vec<Vec<Poly>>,
    /// Basis elements with the moving positions they mention.
    checks: Vec<(Poly, Vec<usize>)>,
    bound: u64,
    found: u64,
}

impl Search {
    fn identity(&self) -> Vec<Poly> {
        (0..self.ring.len()).map(|i| Poly::var(self.ring.clone(), i)).collect()
    }

    fn images(&self, assigned: &[Poly]) -> Vec<Poly> {
        let mut img = self.identity();
        for (k, p) in assigned.iter().enumerate() {
            img[self.moving[k]] = p.clone();
        }
        img
    }

    fn invertible(&self, img: &[Poly]) -> bool {
        let nf = |ps: &[Poly]| ps.iter().map(|p| self.gb.normal_form(p)).collect::<Vec<_>>();
        let id = nf(&self.identity());
        let mut power = nf(img);
        for _ in 0..MAX_PERIOD {
            if power == id {
                return true;
            }
            power = power.iter().map(|p| self.gb.normal_form(&p.substitute(img))).collect();
        }
        false
    }

    fn run(&mut self, assigned: &mut Vec<Poly>) {
        if self.found >= self.bound {
            return;
        }
        let k = assigned.len();
        if k == self.moving.len() {
            if self.invertible(&self.images(assigned)) {
                self.found += 1;
            }
            return;
        }
        for c in self.candidates[k].clone() {
            assigned.push(c);
            let img = self.images(assigned);
            let ok = self
                .checks
                .iter()
                .filter(|(_, pos)| pos.last() == Some(&k))
                .all(|(g, _)| self.gb.normal_form(&g.substitute(&img)).is_zero());
            if ok {
                self.run(assigned);
            }
            assigned.pop();
            if self.found >= self.bound {
                return;
            }
        }
    }
}

/// Number of automorphisms of the presentation that fix every generator in
/// `fixed` together with its exponential, capped at `bound`.
pub fn aut_count<S: AsRef<str>>(p: &EFieldPresentation, fixed: &[S], bound: u64) -> Result<AutCount> {
    let fixed_mask = p.mask_of(fixed)?;
    let fixed_vars: HashSet<String> = p
        .names_of(fixed_mask)
        .iter()
        .flat_map(|g| [x_var(g), y_var(g)])
        .collect();
    let free_vars: Vec<String> = p.ring().iter().filter(|v| !fixed_vars.contains(*v)).cloned().collect();
    let r = free_vars.len();
    let ring: Vars = free_vars
        .iter()
        .cloned()
        .chain(p.ring().iter().filter(|v| fixed_vars.contains(*v)).cloned())
        .collect::<Vec<_>>()
        .into();
    let gens: Vec<Poly> = p
        .ideal()
        .generators()
        .iter()
        .map(|g| g.to_ring(&ring).unwrap())
        .collect();
    let gb = buchberger(&ring, &gens, MonomialOrder::Block(r));
    let lms = gb.leading_monomials();

    // Degree of the pure-power leading monomial in each moving variable.
    let mut pure_degree = vec![None::<u32>; r];
    for m in &lms {
        let moving: Vec<usize> = (0..r).filter(|&i| m.0[i] > 0).collect();
        if let [v] = moving[..] {
            let d = m.0[v];
            pure_degree[v] = Some(pure_degree[v].map_or(d, |e: u32| e.min(d)));
        }
    }
    if let Some(v) = (0..r).find(|&v| pure_degree[v].is_none()) {
        return Err(EFieldError::InfiniteAutomorphismGroup(free_vars[v][2..].to_string()));
    }

    let var = |i: usize| Poly::var(ring.clone(), i);
    let mentions_moving = |q: &Poly| q.support().iter().any(|&i| i < r);
    let moving: Vec<usize> = (0..r).filter(|&v| mentions_moving(&gb.normal_form(&var(v)))).collect();

    let mut root_order = vec![None::<u32>; ring.len()];
    let one = Poly::constant(ring.clone(), Rational::one());
    for (v, slot) in root_order.iter_mut().enumerate() {
        let x = var(v);
        let mut acc = gb.normal_form(&x);
        for k in 1..=MAX_ROOT_ORDER {
            if acc == one {
                *slot = Some(k);
                break;
            }
            if acc.is_zero() {
                break;
            }
            acc = gb.normal_form(&acc.mul(&x));
        }
    }

    // Multiplier variables and their exponent bounds.
    let mut factors: Vec<(usize, u32)> = Vec::new();
    for v in 0..ring.len() {
        let bound = match (moving.contains(&v).then(|| pure_degree[v].unwrap()), root_order[v]) {
            (Some(_), Some(o)) => Some(o),
            (Some(d), None) => Some(d),
            (None, o) => o,
        };
        if let Some(b) = bound {
            if b > 1 {
                factors.push((v, b));
            }
        }
    }
    let mut monomials = vec![one.clone()];
    for &(v, b) in &factors {
        let x = var(v);
        let mut next = Vec::new();
        for m in &monomials {
            let mut t = m.clone();
            for _ in 0..b {
                next.push(t.clone());
                t = gb.normal_form(&t.mul(&x));
            }
        }
        monomials = next;
    }
    let mut seen = BTreeSet::new();
    let mut pool = Vec::new();
    for m in monomials {
        for c in [m.clone(), m.neg()] {
            if !c.is_zero() && seen.insert(c.to_string()) {
                pool.push(c);
            }
        }
    }
    let candidates = vec![pool; moving.len()];

    let pos_of = |i: usize| moving.iter().position(|&v| v == i);
    let checks: Vec<(Poly, Vec<usize>)> = gb
        .generators()
        .into_iter()
        .filter_map(|g| {
            let mut pos: Vec<usize> = g.support().into_iter().filter_map(pos_of).collect();
            pos.sort_unstable();
            (!pos.is_empty()).then_some((g, pos))
        })
        .collect();

    let mut search = Search {
        gb,
        ring,
        moving,
        candidates,
        checks,
        bound,
        found: 0,
    };
    search.run(&mut Vec::new());
    Ok(if search.found >= bound {
        AutCount::AtLeast(bound)
    } else {
        AutCount::Exactly(search.found)
    })
}

/// Adjoins a primitive `m`-th root of unity and an `m`-th division point of
/// each generator in `alphas`, then counts automorphisms fixing the base
/// and the roots of unity.
pub fn kummer_degree_over<S: AsRef<str>>(base: &EFieldPresentation, alphas: &[S], m: u32) -> Result<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut ext, root) = apply_step(base, &Step::KernelDivision { m }, &mut rng)?;
    let mut fixed: Vec<String> = base.generators().to_vec();
    fixed.push(root.new_generator);
    for a in alphas {
        let step = Step::DivisionPoint {
            target: Some(a.as_ref().to_string()),
            m,
        };
        ext = apply_step(&ext, &step, &mut rng)?.0;
    }
    Ok(aut_count(&ext, &fixed, u64::MAX)?.value())
}

/// Kummer degree over the first `n` non-kernel generators of `base`.
pub fn kummer_degree(base: &EFieldPresentation, n: usize, m: u32) -> Result<u64> {
    let alphas: Vec<&String> = base
        .generators()
        .iter()
        .filter(|g| Some(g.as_str()) != base.kernel())
        .take(n)
        .collect();
    if alphas.len() < n {
        return Err(EFieldError::Invalid(format!(
            "base has fewer than {n} non-kernel generators"
        )));
    }
    kummer_degree_over(base, &alphas, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efield::PresentationFile;

    fn pres(gens: &[&str], kernel: Option<&str>, lin: &[&[&str]], polys: &[&str]) -> EFieldPresentation {
        PresentationFile {
            generators: gens.iter().map(|s| s.to_string()).collect(),
            kernel: kernel.map(str::to_string),
            linear_relations: lin.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect(),
            poly_relations: polys.iter().map(|s| s.to_string()).collect(),
        }
        .to_raw()
        .unwrap()
        .validate()
        .unwrap()
    }

    fn free_base(n: usize) -> EFieldPresentation {
        let mut gens = vec!["tau".to_string()];
        gens.extend((1..=n).map(|i| format!("a{i}")));
        let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
        pres(&gens, Some("tau"), &[], &[])
    }

    #[test]
    fn cube_roots_of_unity() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let base = pres(&["tau"], Some("tau"), &[], &[]);
        let (p, _) = apply_step(&base, &Step::KernelDivision { m: 3 }, &mut rng).unwrap();
        assert_eq!(aut_count(&p, &["tau"], 100), Ok(AutCount::Exactly(2)));
    }

    #[test]
    fn square_root_division_point() {
        let p = pres(&["h", "x"], None, &[&["2", "-1"]], &[]);
        assert_eq!(aut_count(&p, &["x"], 100), Ok(AutCount::Exactly(2)));
        assert_eq!(aut_count(&p, &["x"], 1), Ok(AutCount::AtLeast(1)));
    }

    #[test]
    fn free_generator() {
        let p = pres(&["x"], None, &[], &[]);
        assert!(matches!(
            aut_count(&p, &[] as &[&str], 10),
            Err(EFieldError::InfiniteAutomorphismGroup(_))
        ));
        assert_eq!(aut_count(&p, &["x"], 10), Ok(AutCount::Exactly(1)));
    }

    #[test]
    fn kummer_small_cases() {
        assert_eq!(kummer_degree(&free_base(1), 1, 2), Ok(2));
        assert_eq!(kummer_degree(&free_base(1), 1, 1), Ok(1));
        assert_eq!(kummer_degree(&free_base(1), 1, 3), Ok(3));
        assert_eq!(kummer_degree(&free_base(2), 2, 2), Ok(4));
        assert!(kummer_degree(&free_base(1), 2, 2).is_err());
    }
}
