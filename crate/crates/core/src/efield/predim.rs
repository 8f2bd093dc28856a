//! Predimension, its superset minimum, hulls and the Hrushovski inequality.
//!
//! Subsets of generators are bitmasks over the canonical (sorted) generator
//! order. Whenever several subsets tie, the winner is the one with fewest
//! elements, then the lexicographically least index list.

use std::collections::HashSet;

use rayon::prelude::*;

use super::presentation::{x_var, y_var};
use super::{EFieldPresentation, Result, SubsetBudget};
use crate::poly::{eliminate_gens, linear_part, max_independent, Poly};

/// Precomputed data for repeated δ evaluations on one presentation.
pub(crate) struct DeltaCtx<'a> {
    p: &'a EFieldPresentation,
    gens: Vec<Poly>,
    /// Connected component (by shared variables) of each ring variable.
    var_comp: Vec<usize>,
    gen_comp: Vec<usize>,
}

impl<'a> DeltaCtx<'a> {
    pub(crate) fn new(p: &'a EFieldPresentation) -> Self {
        let gens = p.ideal().generators();
        let nv = p.ring().len();
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for g in &gens {
            let s = g.support();
            for w in s.windows(2) {
                let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[a.max(b)] = a.min(b);
            }
        }
        let var_comp: Vec<usize> = (0..nv).map(|v| find(&mut parent, v)).collect();
        let gen_comp = gens
            .iter()
            .map(|g| g.support().first().map(|&v| var_comp[v]).unwrap_or(usize::MAX))
            .collect();
        DeltaCtx {
            p,
            gens,
            var_comp,
            gen_comp,
        }
    }

    /// δ(S) = tr.deg(x_S ∪ y_S) − lin.dim(S).
    pub(crate) fn delta(&self, mask: u64) -> i64 {
        let n = self.p.len();
        let size = mask.count_ones() as i64;
        if mask == 0 {
            return 0;
        }
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let comps: HashSet<usize> = members
            .iter()
            .flat_map(|&i| [self.var_comp[i], self.var_comp[n + i]])
            .collect();
        let selected: Vec<Poly> = self
            .gens
            .iter()
            .zip(&self.gen_comp)
            .filter(|(_, c)| comps.contains(c))
            .map(|(g, _)| g.clone())
            .collect();
        if selected.is_empty() {
            return 2 * size - size;
        }
        let keep: HashSet<String> = members
            .iter()
            .flat_map(|&i| {
                let g = &self.p.generators()[i];
                [x_var(g), y_var(g)]
            })
            .collect();
        let elim = eliminate_gens(self.p.ring(), &selected, &keep);
        assert!(!elim.is_unit(), "validated presentations have proper ideals");
        let masks: Vec<u64> = elim.leading_monomials().iter().map(|m| m.support_mask()).collect();
        let trdeg = max_independent(elim.ring_vars().len(), &masks) as i64;
        let xs: Vec<String> = members.iter().map(|&i| x_var(&self.p.generators()[i])).collect();
        let rank = linear_part(&elim, &xs).len() as i64;
        trdeg - (size - rank)
    }

    pub(crate) fn deltas(&self, masks: &[u64]) -> Vec<i64> {
        masks.par_iter().map(|&m| self.delta(m)).collect()
    }
}

/// Ordering key for tie-breaking: size, then index list.
pub(crate) fn lex_key(mask: u64) -> (u32, Vec<u32>) {
    (mask.count_ones(), (0..64).filter(|i| mask >> i & 1 == 1).collect())
}

/// All supersets of `mask` inside `full`, ascending.
pub(crate) fn supersets(mask: u64, full: u64) -> Vec<u64> {
    let comp = full & !mask;
    let mut out = Vec::new();
    let mut sub = comp;
    loop {
        out.push(mask | sub);
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & comp;
    }
    out.reverse();
    out
}

/// Superset minimum for every mask: `out[m] = min{ table[y] : y ⊇ m }`.
pub(crate) fn superset_min(table: &[i64], n: usize) -> Vec<i64> {
    let mut out = table.to_vec();
    for i in 0..n {
        for m in (0..out.len()).rev() {
            if m >> i & 1 == 0 {
                let up = out[m | (1 << i)];
                if up < out[m] {
                    out[m] = up;
                }
            }
        }
    }
    out
}

pub fn predimension<S: AsRef<str>>(p: &EFieldPresentation, subset: &[S]) -> Result<i64> {
    let mask = p.mask_of(subset)?;
    Ok(DeltaCtx::new(p).delta(mask))
}

/// δ for every generator subset, indexed by mask.
pub fn delta_table(p: &EFieldPresentation, budget: SubsetBudget) -> Result<Vec<i64>> {
    budget.check(p.len())?;
    let ctx = DeltaCtx::new(p);
    let masks: Vec<u64> = (0..=p.full_mask()).collect();
    Ok(ctx.deltas(&masks))
}

/// `min{ δ(Y) : S ⊆ Y ⊆ generators }`.
pub fn d_min<S: AsRef<str>>(p: &EFieldPresentation, subset: &[S], budget: SubsetBudget) -> Result<i64> {
    Ok(hull(p, subset, budget)?.value)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub subset: Vec<String>,
    pub value: i64,
    pub is_self_sufficient: bool,
}

/// Smallest (then lexicographically least) superset of `subset` attaining
/// the superset minimum of δ.
pub fn hull<S: AsRef<str>>(p: &EFieldPresentation, subset: &[S], budget: SubsetBudget) -> Result<Hull> {
    let mask = p.mask_of(subset)?;
    budget.check(p.len() - mask.count_ones() as usize)?;
    let ctx = DeltaCtx::new(p);
    let ups = supersets(mask, p.full_mask());
    let ds = ctx.deltas(&ups);
    let value = *ds.iter().min().unwrap();
    let best = ups
        .iter()
        .zip(&ds)
        .filter(|(_, &d)| d == value)
        .map(|(&m, _)| m)
        .min_by_key(|&m| lex_key(m))
        .unwrap();
    let is_self_sufficient = ups
        .iter()
        .zip(&ds)
        .filter(|(&m, _)| m & best == best)
        .all(|(_, &d)| d >= value);
    Ok(Hull {
        subset: p.names_of(best),
        value,
        is_self_sufficient,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Pass,
    Fail { witness: Vec<String>, delta: i64 },
}

impl Check {
    pub fn passed(&self) -> bool {
        matches!(self, Check::Pass)
    }
}

/// δ(Y) ≥ 0 for all generator subsets; on failure the smallest,
/// lexicographically least violating subset is returned.
pub fn hrushovski_check(p: &EFieldPresentation, budget: SubsetBudget) -> Result<Check> {
    let table = delta_table(p, budget)?;
    Ok(check_from_table(p, &table))
}

pub(crate) fn check_from_table(p: &EFieldPresentation, table: &[i64]) -> Check {
    let worst = table
        .iter()
        .enumerate()
        .filter(|(_, &d)| d < 0)
        .map(|(m, &d)| (m as u64, d))
        .min_by_key(|&(m, _)| lex_key(m));
    match worst {
        None => Check::Pass,
        Some((m, d)) => Check::Fail {
            witness: p.names_of(m),
            delta: d,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::efield::{PresentationFile, RawPresentation};

    fn pres(gens: &[&str], kernel: Option<&str>, polys: &[&str]) -> EFieldPresentation {
        PresentationFile {
            generators: gens.iter().map(|s| s.to_string()).collect(),
            kernel: kernel.map(str::to_string),
            linear_relations: vec![],
            poly_relations: polys.iter().map(|s| s.to_string()).collect(),
        }
        .to_raw()
        .and_then(|r: RawPresentation| r.validate())
        .unwrap()
    }

    #[test]
    fn canonical_predimensions() {
        let free = pres(&["x1"], None, &[]);
        assert_eq!(predimension(&free, &["x1"]), Ok(1));
        let kernel = pres(&["tau"], Some("tau"), &["y_tau - 1"]);
        assert_eq!(predimension(&kernel, &["tau"]), Ok(0));
        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        assert_eq!(predimension(&two, &["x1", "x2"]), Ok(0));
        assert_eq!(predimension(&two, &["x1"]), Ok(1));
        let collapse = pres(&["x1"], None, &["y_x1 - x_x1", "x_x1 - 1"]);
        assert_eq!(predimension(&collapse, &["x1"]), Ok(-1));
        assert_eq!(predimension(&free, &[] as &[&str]), Ok(0));
    }

    #[test]
    fn minimum_and_hull_on_two_cycle() {
        let b = SubsetBudget::default();
        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        assert_eq!(d_min(&two, &["x1"], b), Ok(0));
        let h = hull(&two, &["x1"], b).unwrap();
        assert_eq!(h.subset, ["x1", "x2"]);
        assert_eq!(h.value, 0);
        assert!(h.is_self_sufficient);

        let free = pres(&["x1"], None, &[]);
        assert_eq!(hull(&free, &["x1"], b).unwrap().subset, ["x1"]);
        assert_eq!(d_min(&free, &["x1"], b), Ok(1));
    }

    #[test]
    fn hrushovski_examples() {
        let b = SubsetBudget::default();
        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        assert_eq!(hrushovski_check(&two, b), Ok(Check::Pass));
        let collapse = pres(&["x1"], None, &["y_x1 - x_x1", "x_x1 - 1"]);
        assert_eq!(
            hrushovski_check(&collapse, b),
            Ok(Check::Fail {
                witness: vec!["x1".into()],
                delta: -1
            })
        );
        assert_eq!(hrushovski_check(&EFieldPresentation::empty(), b), Ok(Check::Pass));
    }

    #[test]
    fn budget_is_enforced() {
        let p = pres(&["a", "b", "c"], None, &[]);
        let tiny = SubsetBudget::new(2);
        assert!(matches!(
            hrushovski_check(&p, tiny),
            Err(crate::efield::EFieldError::SubsetLatticeTooLarge { free: 3, budget: 2 })
        ));
        assert!(d_min(&p, &["a"], tiny).is_ok());
    }

    #[test]
    fn superset_enumeration() {
        assert_eq!(supersets(0b001, 0b111), vec![0b001, 0b011, 0b101, 0b111]);
        let t = vec![3, 1, 2, 0];
        assert_eq!(superset_min(&t, 2), vec![0, 0, 0, 0]);
    }
}
