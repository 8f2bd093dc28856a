//! Buchberger's algorithm with the Gebauer–Möller pair criteria, and the
//! ideal-theoretic queries built on reduced bases.

use std::collections::HashSet;

use num_traits::{One, Zero};

use super::{add_scaled, Monomial, MonomialOrder, Poly, PolyError, Rational, Terms, Vars};
use crate::linalg::{self, QMatrix};

/// Reduced Gröbner basis: every element monic, no term of any element
/// divisible by the leading monomial of another, elements sorted by
/// ascending leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring_vars: Vars,
    order: MonomialOrder,
    elems: Vec<Terms>,
}

impl GroebnerBasis {
    pub fn ring_vars(&self) -> &Vars {
        &self.ring_vars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Generators as canonical (degrevlex-serialized) polynomials.
    pub fn generators(&self) -> Vec<Poly> {
        self.elems
            .iter()
            .map(|t| Poly::from_sorted(self.ring_vars.clone(), t.clone(), self.order))
            .collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|t| t[0].0.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0][0].0.is_one()
    }

    /// Fully reduced normal form of `p` (which must live in this ring).
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let p = p.to_ring(&self.ring_vars).expect("polynomial outside the basis ring");
        let r = reduce_full(p.terms_in(self.order), &self.elems, self.order);
        Poly::from_sorted(self.ring_vars.clone(), r, self.order)
    }
}

fn reduce_full<B: std::borrow::Borrow<Terms>>(mut p: Terms, basis: &[B], order: MonomialOrder) -> Terms {
    let mut rem: Terms = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (m, c) = &p[start];
        match basis.iter().map(|g| g.borrow()).find(|g| g[0].0.divides(m)) {
            Some(g) => {
                let q = g[0].0.quotient(m);
                let coeff = -(c / &g[0].1);
                p = add_scaled(&p[start + 1..], &coeff, Some(&q), &g[1..], order);
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    rem
}

fn make_monic(t: &mut Terms) {
    let inv = t[0].1.recip();
    if !inv.is_one() {
        for (_, c) in t.iter_mut() {
            *c *= &inv;
        }
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct State {
    order: MonomialOrder,
    polys: Vec<Terms>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl State {
    fn lm(&self, i: usize) -> &Monomial {
        &self.polys[i][0].0
    }

    /// Gebauer–Möller update after inserting polynomial `h`.
    fn update(&mut self, h: usize) {
        let lh = self.lm(h).clone();
        let mut candidates: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let mut kept: Vec<usize> = Vec::new();
        while !candidates.is_empty() {
            let g1 = candidates.remove(0);
            let l1 = lh.lcm(self.lm(g1));
            let redundant = !lh.coprime(self.lm(g1))
                && candidates
                    .iter()
                    .chain(kept.iter())
                    .any(|&g2| lh.lcm(self.lm(g2)).divides(&l1));
            if !redundant {
                kept.push(g1);
            }
        }
        let fresh: Vec<Pair> = kept
            .into_iter()
            .filter(|&g| !lh.coprime(self.lm(g)))
            .map(|g| Pair {
                i: g,
                j: h,
                lcm: lh.lcm(self.lm(g)),
            })
            .collect();
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && lh.lcm(&polys[p.i][0].0) != p.lcm && lh.lcm(&polys[p.j][0].0) != p.lcm)
        });
        self.pairs.extend(fresh);
        for g in 0..h {
            if self.active[g] && lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
        self.active[h] = true;
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            order.cmp(&pa.lcm, &pb.lcm).then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.swap_remove(best))
    }

    fn active_basis(&self) -> Vec<&Terms> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Inserts a nonzero monic polynomial; returns false if it is a unit.
    fn insert(&mut self, t: Terms) -> bool {
        if t[0].0.is_one() {
            return false;
        }
        self.polys.push(t);
        self.active.push(false);
        self.update(self.polys.len() - 1);
        true
    }
}

fn spoly(f: &Terms, g: &Terms, lcm: &Monomial, order: MonomialOrder) -> Terms {
    let mf = f[0].0.quotient(lcm);
    let mg = g[0].0.quotient(lcm);
    let left: Terms = f[1..].iter().map(|(m, c)| (mf.mul(m), c.clone())).collect();
    add_scaled(&left, &-Rational::one(), Some(&mg), &g[1..], order)
}

fn unit_basis(ring: &Vars, order: MonomialOrder) -> GroebnerBasis {
    GroebnerBasis {
        ring_vars: ring.clone(),
        order,
        elems: vec![vec![(Monomial::one(ring.len()), Rational::one())]],
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
///
/// Output is deterministic for a given input order; an empty generator list
/// yields the zero ideal. Panics if a generator mentions a variable outside
/// `ring`.
pub fn buchberger(ring: &Vars, gens: &[Poly], order: MonomialOrder) -> GroebnerBasis {
    if let MonomialOrder::Block(k) = order {
        assert!(k <= ring.len(), "block split beyond ring size");
    }
    let mut st = State {
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in gens {
        let g = g.to_ring(ring).expect("generator outside the ring");
        if g.is_zero() {
            continue;
        }
        let mut t = g.terms_in(order);
        make_monic(&mut t);
        if !st.insert(t) {
            return unit_basis(ring, order);
        }
    }
    while let Some(pair) = st.next_pair() {
        let s = spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm, order);
        let basis = st.active_basis();
        let mut r = reduce_full(s, &basis, order);
        if r.is_empty() {
            continue;
        }
        make_monic(&mut r);
        if !st.insert(r) {
            return unit_basis(ring, order);
        }
    }
    let mut g: Vec<Terms> = st.active_basis().into_iter().cloned().collect();
    g.sort_by(|a, b| order.cmp(&a[0].0, &b[0].0));
    let mut minimal: Vec<Terms> = Vec::new();
    for p in g {
        if !minimal.iter().any(|q| q[0].0.divides(&p[0].0)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&Terms> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p)
            .collect();
        let mut t = vec![minimal[i][0].clone()];
        t.extend(reduce_full(minimal[i][1..].to_vec(), &others, order));
        reduced.push(t);
    }
    GroebnerBasis {
        ring_vars: ring.clone(),
        order,
        elems: reduced,
    }
}

/// Krull dimension of `Q[vars]/I`: the largest set of variables containing
/// the support of no leading monomial.
pub fn ideal_dimension(gb: &GroebnerBasis) -> Result<usize, PolyError> {
    if gb.is_unit() {
        return Err(PolyError::UnitIdeal);
    }
    let n = gb.ring_vars.len();
    assert!(n <= 64, "dimension search supports at most 64 variables");
    let masks: Vec<u64> = gb.elems.iter().map(|t| t[0].0.support_mask()).collect();
    Ok(max_independent(n, &masks))
}

pub(crate) fn max_independent(n: usize, masks: &[u64]) -> usize {
    fn go(i: usize, n: usize, chosen: u64, size: usize, masks: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = chosen | (1u64 << i);
        if masks.iter().all(|m| m & !with != 0) {
            go(i + 1, n, with, size + 1, masks, best);
        }
        go(i + 1, n, chosen, size, masks, best);
    }
    let mut best = 0;
    go(0, n, 0, 0, masks, &mut best);
    best
}

/// True iff `p` reduces to zero modulo `gb`.
pub fn ideal_member(p: &Poly, gb: &GroebnerBasis) -> bool {
    gb.normal_form(p).is_zero()
}

fn names_in_ring<S: AsRef<str>>(ring: &Vars, names: &[S]) -> HashSet<String> {
    let set: HashSet<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
    for s in &set {
        assert!(ring.contains(s), "variable `{s}` not in ring");
    }
    set
}

/// Gröbner basis (degrevlex) of `I ∩ Q[keep]`, computed with a two-block
/// order that places the eliminated variables first.
pub fn eliminate<S: AsRef<str>>(gb: &GroebnerBasis, keep: &[S]) -> GroebnerBasis {
    let keep = names_in_ring(&gb.ring_vars, keep);
    if gb.is_unit() {
        let kept: Vec<String> = gb.ring_vars.iter().filter(|v| keep.contains(*v)).cloned().collect();
        return unit_basis(&kept.into(), MonomialOrder::DegRevLex);
    }
    eliminate_gens(&gb.ring_vars, &gb.generators(), &keep)
}

/// Elimination ideal of the ideal generated by `gens`. The kept ring lists
/// the kept variables in `ring` order.
pub(crate) fn eliminate_gens(ring: &Vars, gens: &[Poly], keep: &HashSet<String>) -> GroebnerBasis {
    let kept: Vec<String> = ring.iter().filter(|v| keep.contains(*v)).cloned().collect();
    let dropped: Vec<String> = ring.iter().filter(|v| !keep.contains(*v)).cloned().collect();
    let kept_ring: Vars = kept.clone().into();
    let split = dropped.len();
    let block_ring: Vars = dropped.into_iter().chain(kept).collect::<Vec<_>>().into();
    let gens: Vec<Poly> = gens.iter().map(|p| p.to_ring(&block_ring).unwrap()).collect();
    let full = buchberger(&block_ring, &gens, MonomialOrder::Block(split));
    if full.is_unit() {
        return unit_basis(&kept_ring, MonomialOrder::DegRevLex);
    }
    let mut elems: Vec<Terms> = full
        .elems
        .iter()
        .filter(|t| t.iter().all(|(m, _)| m.0[..split].iter().all(|&e| e == 0)))
        .map(|t| {
            t.iter()
                .map(|(m, c)| (Monomial(m.0[split..].into()), c.clone()))
                .collect()
        })
        .collect();
    elems.sort_by(|a: &Terms, b: &Terms| MonomialOrder::DegRevLex.cmp(&a[0].0, &b[0].0));
    GroebnerBasis {
        ring_vars: kept_ring,
        order: MonomialOrder::DegRevLex,
        elems,
    }
}

/// Basis (as rows over `among`, in ring order) of the homogeneous linear
/// forms in the variables `among` that lie in the ideal.
pub fn linear_part<S: AsRef<str>>(gb: &GroebnerBasis, among: &[S]) -> QMatrix {
    let among = names_in_ring(&gb.ring_vars, among);
    let cols: Vec<usize> = (0..gb.ring_vars.len())
        .filter(|&i| among.contains(&gb.ring_vars[i]))
        .collect();
    let nfs: Vec<Poly> = cols
        .iter()
        .map(|&i| gb.normal_form(&Poly::var(gb.ring_vars.clone(), i)))
        .collect();
    let mut monos: Vec<Monomial> = nfs
        .iter()
        .flat_map(|p| p.terms().iter().map(|(m, _)| m.clone()))
        .collect();
    monos.sort();
    monos.dedup();
    let rows: Vec<Vec<Rational>> = monos
        .iter()
        .map(|m| {
            nfs.iter()
                .map(|p| {
                    p.terms()
                        .iter()
                        .find(|(pm, _)| pm == m)
                        .map(|(_, c)| c.clone())
                        .unwrap_or_else(Rational::zero)
                })
                .collect()
        })
        .collect();
    linalg::kernel(&rows, cols.len())
}
