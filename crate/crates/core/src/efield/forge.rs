//! Iterated strong extensions from a fixed catalog of primitive steps.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::embedding::strong_from_tables;
use super::predim::{check_from_table, DeltaCtx};
use super::presentation::{ring_for, x_var, y_var};
use super::{Check, EFieldError, EFieldPresentation, PresentationEmbedding, Result, SubsetBudget};
use crate::linalg;
use crate::poly::{cyclotomic_coeffs, linear_part, rational, Poly, Rational};

/// Catalog of primitive extensions. A `None` target is chosen by the
/// seeded generator among the non-kernel generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// New generator with free exponential.
    FreeGen,
    /// New `h` with `m·h = x` (and `y_h^m = y_x` by coherence).
    DivisionPoint { target: Option<String>, m: u32 },
    /// New `κ` with `m·κ = τ` and `Φ_m(y_κ) = 0`.
    KernelDivision { m: u32 },
    /// New `z` with `x_z = y_x` and free `y_z`.
    ExIterate { target: Option<String> },
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::FreeGen => write!(f, "free"),
            Step::DivisionPoint { target: Some(t), m } => write!(f, "div:{t}:{m}"),
            Step::DivisionPoint { target: None, m } => write!(f, "div:*:{m}"),
            Step::KernelDivision { m } => write!(f, "kdiv:{m}"),
            Step::ExIterate { target: Some(t) } => write!(f, "exiter:{t}"),
            Step::ExIterate { target: None } => write!(f, "exiter:*"),
        }
    }
}

impl FromStr for Step {
    type Err = String;

    /// `free`, `div:<gen>:<m>`, `div:*:<m>`, `kdiv:<m>`, `exiter:<gen>`,
    /// `exiter:*` (the `*` forms may drop the wildcard: `div:<m>`, `exiter`).
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let target = |t: &str| if t == "*" { None } else { Some(t.to_string()) };
        let num = |t: &str| t.parse::<u32>().map_err(|_| format!("bad multiplier in `{s}`"));
        match parts.as_slice() {
            ["free"] => Ok(Step::FreeGen),
            ["div", m] => Ok(Step::DivisionPoint {
                target: None,
                m: num(m)?,
            }),
            ["div", t, m] => Ok(Step::DivisionPoint {
                target: target(t),
                m: num(m)?,
            }),
            ["kdiv", m] => Ok(Step::KernelDivision { m: num(m)? }),
            ["exiter"] => Ok(Step::ExIterate { target: None }),
            ["exiter", t] => Ok(Step::ExIterate { target: target(t) }),
            _ => Err(format!("unknown step `{s}`")),
        }
    }
}

/// A step with its target fixed and the generator it introduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedStep {
    pub step: Step,
    pub new_generator: String,
}

impl fmt::Display for ResolvedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.step, self.new_generator)
    }
}

#[derive(Clone, Debug)]
pub struct ForgeStage {
    pub presentation: EFieldPresentation,
    /// `None` for the base stage.
    pub step: Option<ResolvedStep>,
}

#[derive(Clone, Debug)]
pub struct ForgeTrace {
    pub seed: u64,
    pub stages: Vec<ForgeStage>,
}

impl ForgeTrace {
    pub fn last(&self) -> &EFieldPresentation {
        &self.stages.last().unwrap().presentation
    }
}

/// Images of the generators in `Q^n` modulo the declared linear relations,
/// in coordinates given by the non-pivot columns.
fn quotient_images(p: &EFieldPresentation) -> Vec<Vec<Rational>> {
    let rows = p.linear_relations();
    let pivots: Vec<usize> = rows
        .iter()
        .map(|r| r.iter().position(|q| !q.is_zero()).unwrap())
        .collect();
    let free: Vec<usize> = (0..p.len()).filter(|c| !pivots.contains(c)).collect();
    (0..p.len())
        .map(|j| {
            free.iter()
                .map(|&c| match pivots.iter().position(|&pc| pc == j) {
                    Some(i) => -rows[i][c].clone(),
                    None => rational((c == j) as i64),
                })
                .collect()
        })
        .collect()
}

/// Whether `target / m` times some proper divisor of `m` is already an
/// integer combination of generators. The new generator would then need a
/// stronger multiplicative relation than the catalog step provides.
fn division_clashes(p: &EFieldPresentation, target: &str, m: u32) -> bool {
    let images = quotient_images(p);
    let t = &images[p.index_of(target).unwrap()];
    let d = t.len();
    (1..m).filter(|c| m.is_multiple_of(*c)).any(|c| {
        let f = Rational::new((c as i64).into(), (m as i64).into());
        let v: Vec<Rational> = t.iter().map(|q| q * &f).collect();
        linalg::lattice_contains(&images, &v, d)
    })
}

fn forced_linear_rank(p: &EFieldPresentation) -> usize {
    let xs: Vec<String> = p.generators().iter().map(|g| x_var(g)).collect();
    linear_part(p.ideal(), &xs).len()
}

/// Builds the extension for a step whose target is fixed.
fn build(p: &EFieldPresentation, resolved: &Step, new_gen: &str) -> Result<EFieldPresentation> {
    let inapplicable = || EFieldError::StepInapplicable(resolved.to_string());
    let mut raw = p.to_raw();
    let n = p.len();
    raw.generators.push(new_gen.to_string());
    for row in raw.linear_relations.iter_mut() {
        row.push(rational(0));
    }
    let ring = ring_for(&raw.generators);
    let var = |name: String| Poly::var_named(&ring, &name).unwrap();
    let mut relation_row = |base: &str, m: u32| {
        let mut row = vec![rational(0); n + 1];
        row[p.index_of(base).unwrap()] = rational(1);
        row[n] = rational(-(m as i64));
        raw.linear_relations.push(row);
    };
    let mut rows_added = 0;
    match resolved {
        Step::FreeGen => {}
        Step::DivisionPoint { target: Some(t), m } => {
            if division_clashes(p, t, *m) {
                return Err(inapplicable());
            }
            relation_row(t, *m);
            rows_added = 1;
        }
        Step::KernelDivision { m } => {
            let tau = p.kernel().unwrap().to_string();
            if division_clashes(p, &tau, *m) {
                return Err(inapplicable());
            }
            relation_row(&tau, *m);
            rows_added = 1;
            let y = var(y_var(new_gen));
            let mut phi = Poly::zero(ring.clone());
            for (e, c) in cyclotomic_coeffs(*m).into_iter().enumerate() {
                phi = phi.add(&y.pow(e as u32).scale(&Rational::from_integer(c)));
            }
            raw.poly_relations.push(phi);
        }
        Step::ExIterate { target: Some(t) } => {
            raw.poly_relations.push(var(x_var(new_gen)).sub(&var(y_var(t))));
        }
        _ => unreachable!("targets are resolved before building"),
    }
    let next = raw.validate()?;
    // A new generator forced into a linear relation it was not given would
    // duplicate an existing element with an unrelated exponential.
    if forced_linear_rank(&next) != forced_linear_rank(p) + rows_added {
        return Err(inapplicable());
    }
    Ok(next)
}

/// Applies one catalog step without checking strongness. An open target is
/// drawn from the non-kernel generators for which the step applies.
pub fn apply_step(
    p: &EFieldPresentation,
    step: &Step,
    rng: &mut ChaCha8Rng,
) -> Result<(EFieldPresentation, ResolvedStep)> {
    let (prefix, what) = match step {
        Step::FreeGen => ("x", "free"),
        Step::DivisionPoint { m, .. } | Step::KernelDivision { m } if *m == 0 => {
            return Err(EFieldError::StepInapplicable(step.to_string()));
        }
        Step::KernelDivision { .. } if p.kernel().is_none() => {
            return Err(EFieldError::StepInapplicable(step.to_string()));
        }
        Step::DivisionPoint { .. } => ("h", "div"),
        Step::KernelDivision { .. } => ("k", "kdiv"),
        Step::ExIterate { .. } => ("z", "exiter"),
    };
    let new_gen = p.fresh_name(prefix);
    let with_target = |t: &str| match step {
        Step::DivisionPoint { m, .. } => Step::DivisionPoint {
            target: Some(t.to_string()),
            m: *m,
        },
        _ => Step::ExIterate {
            target: Some(t.to_string()),
        },
    };
    let resolved = match step {
        Step::FreeGen | Step::KernelDivision { .. } => step.clone(),
        Step::DivisionPoint { target: Some(t), .. } | Step::ExIterate { target: Some(t) } => {
            p.index_of(t)?;
            step.clone()
        }
        Step::DivisionPoint { target: None, .. } | Step::ExIterate { target: None } => {
            let mut pool: Vec<&String> = p
                .generators()
                .iter()
                .filter(|g| Some(g.as_str()) != p.kernel())
                .collect();
            pool.shuffle(rng);
            for t in pool {
                let candidate = with_target(t);
                match build(p, &candidate, &new_gen) {
                    Ok(next) => {
                        return Ok((
                            next,
                            ResolvedStep {
                                step: candidate,
                                new_generator: new_gen,
                            },
                        ))
                    }
                    Err(EFieldError::StepInapplicable(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            return Err(EFieldError::StepInapplicable(format!("{what}: no applicable target")));
        }
    };
    let next = build(p, &resolved, &new_gen)?;
    Ok((
        next,
        ResolvedStep {
            step: resolved,
            new_generator: new_gen,
        },
    ))
}

/// Applies `steps` in order, checking that every stage satisfies the
/// Hrushovski inequality and every inclusion is strong.
pub fn forge(base: &EFieldPresentation, steps: &[Step], seed: u64, budget: SubsetBudget) -> Result<ForgeTrace> {
    budget.check(base.len() + steps.len())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = |p: &EFieldPresentation| (0..=p.full_mask()).collect::<Vec<u64>>();
    let mut table = DeltaCtx::new(base).deltas(&all(base));
    if let Check::Fail { witness, delta } = check_from_table(base, &table) {
        return Err(EFieldError::HrushovskiViolated { witness, delta });
    }
    let mut stages = vec![ForgeStage {
        presentation: base.clone(),
        step: None,
    }];
    for step in steps {
        let prev = &stages.last().unwrap().presentation;
        let (next, resolved) = apply_step(prev, step, &mut rng)?;
        let next_table = DeltaCtx::new(&next).deltas(&all(&next));
        let e = PresentationEmbedding::inclusion(prev.clone(), next.clone())?;
        if let super::StrongCheck::Fail { witness, .. } = strong_from_tables(&e, &table, &next_table) {
            return Err(EFieldError::StrongnessViolated { witness });
        }
        if let Check::Fail { witness, delta } = check_from_table(&next, &next_table) {
            return Err(EFieldError::HrushovskiViolated { witness, delta });
        }
        table = next_table;
        stages.push(ForgeStage {
            presentation: next,
            step: Some(resolved),
        });
    }
    Ok(ForgeTrace { seed, stages })
}
