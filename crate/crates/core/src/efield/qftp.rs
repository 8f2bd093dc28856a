//! Quantifier-free types of generator tuples, compared through their hulls.

use std::collections::{HashMap, HashSet};

use super::predim::{hull, DeltaCtx};
use super::presentation::{x_var, y_var};
use super::{EFieldError, EFieldPresentation, RawPresentation, Result, SubsetBudget};
use crate::poly::{eliminate_gens, ideal_member, linear_part};

/// The sub-presentation induced on a generator subset: the relation ideal
/// intersected with `Q[x_S, y_S]`.
pub fn restrict<S: AsRef<str>>(p: &EFieldPresentation, subset: &[S]) -> Result<EFieldPresentation> {
    let names = p.names_of(p.mask_of(subset)?);
    let keep: HashSet<String> = names.iter().flat_map(|g| [x_var(g), y_var(g)]).collect();
    let elim = eliminate_gens(p.ring(), &p.ideal().generators(), &keep);
    let xs: Vec<String> = names.iter().map(|g| x_var(g)).collect();
    let linear_relations = linear_part(&elim, &xs);
    let kernel = p.kernel().filter(|k| names.iter().any(|g| g == k)).map(str::to_string);
    RawPresentation {
        generators: names,
        kernel,
        linear_relations,
        poly_relations: elim.generators(),
    }
    .validate()
}

/// Whether `a` in `p1` and `b` in `p2` have the same quantifier-free type,
/// decided by an isomorphism of their hulls carrying `a` to `b` in order.
pub fn qftp_eq<S: AsRef<str>, T: AsRef<str>>(
    p1: &EFieldPresentation,
    a: &[S],
    p2: &EFieldPresentation,
    b: &[T],
    budget: SubsetBudget,
) -> Result<bool> {
    if a.len() != b.len() {
        return Err(EFieldError::Invalid(format!(
            "tuples of length {} and {}",
            a.len(),
            b.len()
        )));
    }
    let h1 = hull(p1, a, budget)?;
    let h2 = hull(p2, b, budget)?;
    if h1.value != h2.value || h1.subset.len() != h2.subset.len() {
        return Ok(false);
    }
    let r1 = restrict(p1, &h1.subset)?;
    let r2 = restrict(p2, &h2.subset)?;
    let n = r1.len();
    let profile = |r: &EFieldPresentation| {
        let ctx = DeltaCtx::new(r);
        (0..r.len()).map(|i| ctx.delta(1 << i)).collect::<Vec<i64>>()
    };
    let (d1, d2) = (profile(&r1), profile(&r2));

    let mut sigma: Vec<Option<usize>> = vec![None; n];
    for (x, y) in a.iter().zip(b) {
        let (i, j) = (r1.index_of(x.as_ref())?, r2.index_of(y.as_ref())?);
        match sigma[i] {
            Some(k) if k != j => return Ok(false),
            _ => sigma[i] = Some(j),
        }
    }
    let mut used = vec![false; n];
    for s in sigma.iter().flatten() {
        if std::mem::replace(&mut used[*s], true) {
            return Ok(false);
        }
    }
    let k1 = r1.kernel().map(|k| r1.index_of(k).unwrap());
    let k2 = r2.kernel().map(|k| r2.index_of(k).unwrap());
    match (k1, k2) {
        (None, None) => {}
        (Some(i), Some(j)) => match sigma[i] {
            Some(s) if s != j => return Ok(false),
            Some(_) => {}
            None if used[j] => return Ok(false),
            None => {
                sigma[i] = Some(j);
                used[j] = true;
            }
        },
        _ => return Ok(false),
    }
    if sigma.iter().enumerate().any(|(i, s)| s.is_some_and(|j| d1[i] != d2[j])) {
        return Ok(false);
    }

    let is_iso = |sigma: &[Option<usize>]| {
        let forward: HashMap<String, String> = sigma
            .iter()
            .enumerate()
            .flat_map(|(i, j)| {
                let (g, h) = (&r1.generators()[i], &r2.generators()[j.unwrap()]);
                [(x_var(g), x_var(h)), (y_var(g), y_var(h))]
            })
            .collect();
        let backward: HashMap<String, String> = forward.iter().map(|(k, v)| (v.clone(), k.clone())).collect();
        let maps = |from: &EFieldPresentation, to: &EFieldPresentation, m: &HashMap<String, String>| {
            let rename = |v: &str| m[v].clone();
            from.ideal()
                .generators()
                .iter()
                .all(|g| ideal_member(&g.rename_into(&rename, to.ring()).unwrap(), to.ideal()))
        };
        maps(&r1, &r2, &forward) && maps(&r2, &r1, &backward)
    };

    fn extend(
        i: usize,
        sigma: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        d1: &[i64],
        d2: &[i64],
        is_iso: &dyn Fn(&[Option<usize>]) -> bool,
    ) -> bool {
        if i == sigma.len() {
            return is_iso(sigma);
        }
        if sigma[i].is_some() {
            return extend(i + 1, sigma, used, d1, d2, is_iso);
        }
        for j in 0..used.len() {
            if used[j] || d1[i] != d2[j] {
                continue;
            }
            sigma[i] = Some(j);
            used[j] = true;
            if extend(i + 1, sigma, used, d1, d2, is_iso) {
                return true;
            }
            sigma[i] = None;
            used[j] = false;
        }
        false
    }
    Ok(extend(0, &mut sigma, &mut used, &d1, &d2, &is_iso))
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
    fn spec_examples() {
        let b = SubsetBudget::default();
        let f1 = pres(&["x1"], None, &[]);
        let f2 = pres(&["x1"], None, &[]);
        assert_eq!(qftp_eq(&f1, &["x1"], &f2, &["x1"], b), Ok(true));
        let k = pres(&["tau"], Some("tau"), &[]);
        assert_eq!(qftp_eq(&f1, &["x1"], &k, &["tau"], b), Ok(false));
        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        assert_eq!(qftp_eq(&two, &["x1"], &two, &["x2"], b), Ok(true));
    }

    #[test]
    fn distinguishes_relations() {
        let b = SubsetBudget::default();
        let sq = pres(&["x"], None, &["y_x - x_x^2"]);
        let cube = pres(&["x"], None, &["y_x - x_x^3"]);
        assert_eq!(qftp_eq(&sq, &["x"], &cube, &["x"], b), Ok(false));
        assert_eq!(qftp_eq(&sq, &["x"], &sq, &["x"], b), Ok(true));
    }

    #[test]
    fn restriction_keeps_projection() {
        let two = pres(&["x1", "x2"], None, &["y_x1 - x_x2", "y_x2 - x_x1"]);
        let r = restrict(&two, &["x1"]).unwrap();
        assert_eq!(r.generators(), ["x1"]);
        assert!(r.ideal().is_empty());
        assert_eq!(predimension(&r, &["x1"]), Ok(1));
        let whole = restrict(&two, &["x1", "x2"]).unwrap();
        assert_eq!(whole, two);
    }
}
