mod report;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use efc_core::efield::{
    aut_count, d_min, forge, free_amalgam, hrushovski_check, hull, is_strong, kummer_degree, predimension, qftp_eq,
    AutCount, Check, EFieldError, EFieldPresentation, GenMap, PresentationEmbedding, Step, StrongCheck, SubsetBudget,
    ValidateOptions,
};
use efc_core::pi1lab::{self, CoverMap, TorusFunctorModel, TorusPath};
use efc_core::poly::{
    self, buchberger, eliminate, ideal_dimension, ideal_member, linear_part, parse_poly, MonomialOrder,
};
use efc_core::schanuel::{generic_predimension, sc_screen, ExpSystem, ScVerdict};
use efc_core::zform::{self, ActingGroup, LatticeBasis, SymplecticLattice};
use serde_json::json;

use report::{set, RunReport, Verdict};

#[derive(Parser)]
#[command(
    name = "efc",
    version,
    about = "Predimension calculus and finite-level verifiers for exponential fields"
)]
struct Cli {
    /// Emit a single JSON document instead of `key = value` lines.
    #[arg(long, global = true)]
    json: bool,
    /// Subset-lattice budget (log2 of the largest enumeration); EFC_BUDGET sets the default.
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FileArg {
    /// Presentation file (JSON).
    #[arg(short = 'f', long = "file")]
    file: PathBuf,
}

#[derive(Args)]
struct SubsetArgs {
    #[command(flatten)]
    input: FileArg,
    /// Comma-separated generator names.
    #[arg(long, default_value = "")]
    subset: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation and print its canonical form.
    Validate {
        #[command(flatten)]
        input: FileArg,
        /// Reject missing homomorphism binomials instead of adding them.
        #[arg(long)]
        strict: bool,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Predimension of a generator subset.
    Delta(SubsetArgs),
    /// Minimum of the predimension over supersets.
    Dmin(SubsetArgs),
    /// Hull of a generator subset.
    Hull(SubsetArgs),
    /// Property checks.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Strongness of the inclusion of one presentation in another.
    Strong {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Generator renaming `a=b,c=d`; unlisted generators map to themselves.
        #[arg(long, default_value = "")]
        map: String,
    },
    /// Free amalgam of two extensions of a common base (inclusions by name).
    Amalgamate {
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Iterated strong extensions from the step catalog.
    Forge {
        #[command(flatten)]
        input: FileArg,
        /// Comma-separated steps: free, div:<gen>:<m>, kdiv:<m>, exiter:<gen> (`*` picks at random).
        #[arg(long, default_value = "")]
        steps: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short = 'o')]
        output: Option<PathBuf>,
    },
    /// Count automorphisms fixing a generator subset.
    Autcount {
        #[command(flatten)]
        input: FileArg,
        #[arg(long, default_value = "")]
        fixed: String,
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Kummer degree over the first `n` non-kernel generators.
    Kummer {
        #[command(flatten)]
        input: FileArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
    },
    /// Compare quantifier-free types of two tuples.
    Qftp {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        right: PathBuf,
        #[arg(long)]
        b: String,
    },
    /// Schanuel screens for exponential-polynomial systems.
    #[command(subcommand)]
    Sc(ScCommand),
    /// Polynomial ideal utilities.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Symplectic modules over Z/l^k.
    #[command(subcommand)]
    Zform(ZformCommand),
    /// Torsion-level π₁-like functor model.
    #[command(subcommand)]
    Pi1(Pi1Command),
}

#[derive(Subcommand)]
enum CheckCommand {
    /// δ ≥ 0 on every generator subset.
    Hrushovski(FileArg),
}

#[derive(Subcommand)]
enum ScCommand {
    /// Check every projection onto a subset of the pairs.
    Screen(FileArg),
    /// Predimension of a generic solution.
    Predim(FileArg),
}

#[derive(Args)]
struct Ideal {
    /// Comma-separated ring variables.
    #[arg(long)]
    vars: String,
    /// degrevlex or lex.
    #[arg(long, default_value = "degrevlex")]
    order: String,
    /// Generators.
    gens: Vec<String>,
}

#[derive(Subcommand)]
enum PolyCommand {
    /// Reduced Gröbner basis.
    Groebner(Ideal),
    /// Krull dimension of the quotient.
    Dim(Ideal),
    /// Ideal membership.
    Member {
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        ideal: Ideal,
    },
    /// Elimination ideal.
    Eliminate {
        #[arg(long)]
        keep: String,
        #[command(flatten)]
        ideal: Ideal,
    },
    /// Linear forms in the given variables that lie in the ideal.
    Linear {
        #[arg(long)]
        among: String,
        #[command(flatten)]
        ideal: Ideal,
    },
}

#[derive(Args)]
struct LatticeArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    l: u64,
    #[arg(long, default_value_t = 1)]
    k: u32,
}

#[derive(Subcommand)]
enum ZformCommand {
    /// Is the basis symplectic up to a unit multiplier?
    Check {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        basis: String,
    },
    /// Complete a partial family e_1.., f_1.. to a symplectic basis.
    Complete {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long, default_value = "")]
        partial: String,
    },
    /// Matrix carrying one symplectic basis to another.
    Transport {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Defaults to the standard basis.
        #[arg(long)]
        from: Option<String>,
        #[arg(long)]
        to: String,
    },
    /// Enumerate symplectic bases and count orbits.
    Orbits {
        #[command(flatten)]
        lattice: LatticeArgs,
        /// Use the trivial group instead of GSp.
        #[arg(long)]
        trivial: bool,
    },
    /// Is the Gram determinant of the rows a unit?
    Nondeg {
        #[command(flatten)]
        lattice: LatticeArgs,
        #[arg(long)]
        rows: String,
    },
}

#[derive(Args)]
struct ModelArgs {
    #[arg(long)]
    level: u64,
    #[arg(long, default_value_t = 1)]
    u: u64,
}

#[derive(Subcommand)]
enum Pi1Command {
    /// Endpoint of a path.
    Endpoint {
        #[command(flatten)]
        model: ModelArgs,
        /// Comma-separated windings such as `1/3`.
        #[arg(long)]
        winding: String,
        #[arg(long)]
        start: Option<String>,
    },
    /// Lift a path through a cover.
    Lift {
        #[command(flatten)]
        model: ModelArgs,
        /// Power cover z ↦ z^n.
        #[arg(long, conflicts_with = "cover_matrix")]
        cover: Option<u64>,
        /// Monomial cover given by an integer matrix (rows separated by `;`).
        #[arg(long)]
        cover_matrix: Option<String>,
        #[arg(long)]
        winding: String,
        #[arg(long)]
        start: Option<String>,
        #[arg(long)]
        lift_start: Option<String>,
    },
    /// Distinguished roots of unity ξ_n for n dividing the level.
    Xi(ModelArgs),
    /// Exhaustive check of the functor axioms.
    Axioms {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 2)]
        r_max: usize,
    },
    /// Unit twist relating two models.
    Compare {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        u2: u64,
        /// Level of the second model; defaults to the first.
        #[arg(long)]
        level2: Option<u64>,
    },
}

type Out = Result<RunReport, String>;

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<EFieldPresentation, String> {
    EFieldPresentation::from_json(&read(path)?, ValidateOptions::default())
        .map_err(|e| format!("{}: {e}", path.display()))
}

fn write(path: &Option<PathBuf>, p: &EFieldPresentation) -> Result<(), String> {
    match path {
        Some(path) => std::fs::write(path, p.to_json() + "\n").map_err(|e| format!("{}: {e}", path.display())),
        None => Ok(()),
    }
}

fn list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

fn err(e: EFieldError) -> String {
    e.to_string()
}

fn rows(s: &str) -> Result<Vec<Vec<i64>>, String> {
    s.split(';')
        .map(str::trim)
        .filter(|r| !r.is_empty())
        .map(|r| {
            r.split(',')
                .map(|x| x.trim().parse::<i64>().map_err(|_| format!("bad integer `{x}`")))
                .collect()
        })
        .collect()
}

fn vectors(l: &SymplecticLattice, s: &str) -> Result<Vec<zform::Vector>, String> {
    Ok(rows(s)?
        .into_iter()
        .map(|r| r.into_iter().map(|x| l.reduce(x)).collect())
        .collect())
}

fn show_rows(m: &[Vec<u64>]) -> String {
    m.iter()
        .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(";")
}

fn lattice(a: &LatticeArgs) -> Result<SymplecticLattice, String> {
    SymplecticLattice::new(a.g, a.l, a.k).map_err(|e| e.to_string())
}

fn model(a: &ModelArgs) -> Result<TorusFunctorModel, String> {
    TorusFunctorModel::new(a.level, a.u).map_err(|e| e.to_string())
}

fn windings(s: &str) -> Result<Vec<pi1lab::Winding>, String> {
    list(s)
        .iter()
        .map(|w| pi1lab::parse_winding(w).ok_or_else(|| format!("bad winding `{w}`")))
        .collect()
}

fn points(s: &Option<String>, r: usize) -> Result<Vec<u64>, String> {
    match s {
        None => Ok(vec![0; r]),
        Some(s) => list(s)
            .iter()
            .map(|x| x.parse::<u64>().map_err(|_| format!("bad point `{x}`")))
            .collect(),
    }
}

fn show_point(p: &[u64]) -> String {
    p.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn property_failure(command: &str, e: EFieldError) -> Out {
    match e {
        EFieldError::StrongnessViolated { witness } => Ok(RunReport::new(command, Verdict::Fail)
            .detail("error", "strongness violated")
            .witness(json!(witness))),
        EFieldError::HrushovskiViolated { witness, delta } => Ok(RunReport::new(command, Verdict::Fail)
            .detail("error", "hrushovski inequality violated")
            .detail("delta", delta)
            .witness(json!(witness))),
        EFieldError::InfiniteAutomorphismGroup(g) => Ok(RunReport::new(command, Verdict::Fail)
            .detail("error", "infinite automorphism group")
            .witness(json!([g]))),
        other => Err(other.to_string()),
    }
}

fn ideal(i: &Ideal) -> Result<(poly::Vars, efc_core::poly::GroebnerBasis), String> {
    let vars = poly::vars_from(&list(&i.vars));
    let order = match i.order.as_str() {
        "degrevlex" => MonomialOrder::DegRevLex,
        "lex" => MonomialOrder::Lex,
        o => return Err(format!("unknown order `{o}`")),
    };
    let gens = i
        .gens
        .iter()
        .map(|g| parse_poly(g, &vars).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let gb = buchberger(&vars, &gens, order);
    Ok((vars, gb))
}

fn run(cli: Cli) -> Out {
    let budget = SubsetBudget::new(
        cli.budget
            .or_else(|| std::env::var("EFC_BUDGET").ok().and_then(|v| v.parse().ok()))
            .unwrap_or(SubsetBudget::default().max_free),
    );
    match cli.command {
        Command::Validate { input, strict, output } => {
            let p = EFieldPresentation::from_json(&read(&input.file)?, ValidateOptions { strict })
                .map_err(|e| format!("{}: {e}", input.file.display()))?;
            write(&output, &p)?;
            let mut r = RunReport::new("validate", Verdict::Pass)
                .detail("generators", set(p.generators()))
                .detail("kernel", p.kernel().unwrap_or("none"))
                .detail("linear_relations", p.linear_relations().len());
            for (i, g) in p.ideal().generators().iter().enumerate() {
                r.push(&format!("relation {}", i + 1), g);
            }
            Ok(r)
        }
        Command::Delta(a) => {
            let p = load(&a.input.file)?;
            let d = predimension(&p, &list(&a.subset)).map_err(err)?;
            Ok(RunReport::new("delta", Verdict::Value).detail("delta", d))
        }
        Command::Dmin(a) => {
            let p = load(&a.input.file)?;
            let d = d_min(&p, &list(&a.subset), budget).map_err(err)?;
            Ok(RunReport::new("dmin", Verdict::Value).detail("d_min", d))
        }
        Command::Hull(a) => {
            let p = load(&a.input.file)?;
            let h = hull(&p, &list(&a.subset), budget).map_err(err)?;
            Ok(RunReport::new("hull", Verdict::Value)
                .detail("hull", set(&h.subset))
                .detail("value", h.value)
                .detail("self_sufficient", h.is_self_sufficient))
        }
        Command::Check(CheckCommand::Hrushovski(f)) => {
            let p = load(&f.file)?;
            Ok(match hrushovski_check(&p, budget).map_err(err)? {
                Check::Pass => RunReport::new("check hrushovski", Verdict::Pass),
                Check::Fail { witness, delta } => RunReport::new("check hrushovski", Verdict::Fail)
                    .detail("delta", delta)
                    .witness(json!(witness)),
            })
        }
        Command::Strong { source, target, map } => {
            let (s, t) = (load(&source)?, load(&target)?);
            let renames: Vec<(String, String)> = list(&map)
                .iter()
                .map(|pair| {
                    pair.split_once('=')
                        .map(|(a, b)| (a.trim().to_string(), b.trim().to_string()))
                        .ok_or_else(|| format!("bad mapping `{pair}`"))
                })
                .collect::<Result<_, _>>()?;
            let gen_map: GenMap = s
                .generators()
                .iter()
                .map(|g| {
                    let img = renames
                        .iter()
                        .find(|(a, _)| a == g)
                        .map_or(g.clone(), |(_, b)| b.clone());
                    (g.clone(), vec![(img, poly::rational(1))])
                })
                .collect();
            let e = PresentationEmbedding::new(s, t, gen_map).map_err(err)?;
            Ok(match is_strong(&e, budget).map_err(err)? {
                StrongCheck::Pass => RunReport::new("strong", Verdict::Pass),
                StrongCheck::Fail {
                    witness,
                    source_d,
                    target_d,
                } => RunReport::new("strong", Verdict::Fail)
                    .detail("source_d", source_d)
                    .detail("target_d", target_d)
                    .witness(json!(witness)),
            })
        }
        Command::Amalgamate {
            base,
            left,
            right,
            output,
        } => {
            let (a, b, c) = (load(&base)?, load(&left)?, load(&right)?);
            let eb = PresentationEmbedding::inclusion(a.clone(), b).map_err(err)?;
            let ec = PresentationEmbedding::inclusion(a.clone(), c).map_err(err)?;
            let am = match free_amalgam(&a, &eb, &ec, budget) {
                Ok(am) => am,
                Err(e) => return property_failure("amalgamate", e),
            };
            write(&output, &am.presentation)?;
            let d = predimension(&am.presentation, am.presentation.generators()).map_err(err)?;
            let mut r = RunReport::new("amalgamate", Verdict::Value)
                .detail("generators", set(am.presentation.generators()))
                .detail("delta", d);
            for (from, to) in &am.from_c {
                if from != to {
                    r.push(&format!("right {from}"), to);
                }
            }
            Ok(r)
        }
        Command::Forge {
            input,
            steps,
            seed,
            output,
        } => {
            let base = load(&input.file)?;
            let steps: Vec<Step> = list(&steps).iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
            let trace = match forge(&base, &steps, seed, budget) {
                Ok(t) => t,
                Err(e) => return property_failure("forge", e),
            };
            write(&output, trace.last())?;
            let mut r = RunReport::new("forge", Verdict::Pass).detail("seed", trace.seed);
            for (i, stage) in trace.stages.iter().enumerate().skip(1) {
                r.push(&format!("stage {i}"), stage.step.as_ref().unwrap());
            }
            let last = trace.last();
            r.push("generators", set(last.generators()));
            r.push("delta", predimension(last, last.generators()).map_err(err)?);
            Ok(r)
        }
        Command::Autcount { input, fixed, bound } => {
            let p = load(&input.file)?;
            match aut_count(&p, &list(&fixed), bound) {
                Ok(AutCount::Exactly(n)) => Ok(RunReport::new("autcount", Verdict::Value).detail("count", n)),
                Ok(c @ AutCount::AtLeast(_)) => Ok(RunReport::new("autcount", Verdict::Value).detail("count", c)),
                Err(e) => property_failure("autcount", e),
            }
        }
        Command::Kummer { input, n, m } => {
            let p = load(&input.file)?;
            let d = kummer_degree(&p, n, m).map_err(err)?;
            let expected = (m as u64)
                .checked_pow(n as u32)
                .map_or("overflow".to_string(), |e| e.to_string());
            Ok(RunReport::new("kummer", Verdict::Value)
                .detail("degree", d)
                .detail("m^n", expected))
        }
        Command::Qftp { left, a, right, b } => {
            let (p1, p2) = (load(&left)?, load(&right)?);
            let eq = qftp_eq(&p1, &list(&a), &p2, &list(&b), budget).map_err(err)?;
            Ok(RunReport::new("qftp", Verdict::Value).detail("qftp_eq", eq))
        }
        Command::Sc(cmd) => {
            let (name, file) = match &cmd {
                ScCommand::Screen(f) => ("sc screen", &f.file),
                ScCommand::Predim(f) => ("sc predim", &f.file),
            };
            let s = ExpSystem::from_json(&read(file)?).map_err(|e| format!("{}: {e}", file.display()))?;
            match cmd {
                ScCommand::Screen(_) => Ok(match sc_screen(&s).map_err(err)? {
                    ScVerdict::Compatible => RunReport::new(name, Verdict::Pass).detail("screen", "compatible"),
                    ScVerdict::Contradicts(w) => RunReport::new(name, Verdict::Fail)
                        .detail("screen", "contradicts")
                        .witness(json!(w)),
                }),
                ScCommand::Predim(_) => {
                    Ok(RunReport::new(name, Verdict::Value).detail("predimension", generic_predimension(&s)))
                }
            }
        }
        Command::Poly(cmd) => poly_command(cmd),
        Command::Zform(cmd) => zform_command(cmd),
        Command::Pi1(cmd) => pi1_command(cmd),
    }
}

fn poly_command(cmd: PolyCommand) -> Out {
    match cmd {
        PolyCommand::Groebner(i) => {
            let (_, gb) = ideal(&i)?;
            let mut r = RunReport::new("poly groebner", Verdict::Value).detail("size", gb.len());
            for (k, g) in gb.generators().iter().enumerate() {
                r.push(&format!("g{}", k + 1), g);
            }
            Ok(r)
        }
        PolyCommand::Dim(i) => {
            let (_, gb) = ideal(&i)?;
            let d = ideal_dimension(&gb).map_err(|e| e.to_string())?;
            Ok(RunReport::new("poly dim", Verdict::Value).detail("dimension", d))
        }
        PolyCommand::Member { poly: p, ideal: i } => {
            let (vars, gb) = ideal(&i)?;
            let p = parse_poly(&p, &vars).map_err(|e| e.to_string())?;
            Ok(RunReport::new("poly member", Verdict::Value).detail("member", ideal_member(&p, &gb)))
        }
        PolyCommand::Eliminate { keep, ideal: i } => {
            let (_, gb) = ideal(&i)?;
            let keep = list(&keep);
            if let Some(v) = keep.iter().find(|v| !gb.ring_vars().contains(*v)) {
                return Err(format!("unknown variable `{v}`"));
            }
            let e = eliminate(&gb, &keep);
            let mut r = RunReport::new("poly eliminate", Verdict::Value).detail("size", e.len());
            for (k, g) in e.generators().iter().enumerate() {
                r.push(&format!("g{}", k + 1), g);
            }
            Ok(r)
        }
        PolyCommand::Linear { among, ideal: i } => {
            let (_, gb) = ideal(&i)?;
            let among = list(&among);
            if let Some(v) = among.iter().find(|v| !gb.ring_vars().contains(*v)) {
                return Err(format!("unknown variable `{v}`"));
            }
            let rows = linear_part(&gb, &among);
            let mut r = RunReport::new("poly linear", Verdict::Value).detail("rank", rows.len());
            for (k, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(poly::format_rational).collect();
                r.push(&format!("row {}", k + 1), cells.join(","));
            }
            Ok(r)
        }
    }
}

fn zform_command(cmd: ZformCommand) -> Out {
    match cmd {
        ZformCommand::Check { lattice: a, basis } => {
            let l = lattice(&a)?;
            let b = LatticeBasis {
                vectors: vectors(&l, &basis)?,
            };
            Ok(match l.multiplier(&b) {
                Some(lambda) => RunReport::new("zform check", Verdict::Pass).detail("multiplier", lambda),
                None => RunReport::new("zform check", Verdict::Fail).detail("symplectic", false),
            })
        }
        ZformCommand::Complete { lattice: a, partial } => {
            let l = lattice(&a)?;
            let b = zform::complete_symplectic(&vectors(&l, &partial)?, &l).map_err(|e| e.to_string())?;
            Ok(RunReport::new("zform complete", Verdict::Value).detail("basis", show_rows(&b.vectors)))
        }
        ZformCommand::Transport { lattice: a, from, to } => {
            let l = lattice(&a)?;
            let b1 = match from {
                Some(f) => LatticeBasis {
                    vectors: vectors(&l, &f)?,
                },
                None => l.standard_basis(),
            };
            let b2 = LatticeBasis {
                vectors: vectors(&l, &to)?,
            };
            let (t, lambda) = zform::transport(&b1, &b2, &l).map_err(|e| e.to_string())?;
            Ok(RunReport::new("zform transport", Verdict::Value)
                .detail("matrix", show_rows(&t))
                .detail("multiplier", lambda))
        }
        ZformCommand::Orbits { lattice: a, trivial } => {
            let l = lattice(&a)?;
            let group = if trivial {
                ActingGroup::Trivial
            } else {
                ActingGroup::Full
            };
            let c = zform::orbit_count_bruteforce(&l, group).map_err(|e| e.to_string())?;
            Ok(RunReport::new("zform orbits", Verdict::Value)
                .detail("bases", c.bases)
                .detail("orbits", c.orbits))
        }
        ZformCommand::Nondeg { lattice: a, rows } => {
            let l = lattice(&a)?;
            let ok = zform::sublattice_nondegenerate(&vectors(&l, &rows)?, &l).map_err(|e| e.to_string())?;
            let verdict = if ok { Verdict::Pass } else { Verdict::Fail };
            Ok(RunReport::new("zform nondeg", verdict).detail("nondegenerate", ok))
        }
    }
}

fn pi1_command(cmd: Pi1Command) -> Out {
    match cmd {
        Pi1Command::Endpoint {
            model: a,
            winding,
            start,
        } => {
            let m = model(&a)?;
            let winding = windings(&winding)?;
            let path = TorusPath {
                start: points(&start, winding.len())?,
                winding,
            };
            let e = m.endpoint(&path).map_err(|e| e.to_string())?;
            Ok(RunReport::new("pi1 endpoint", Verdict::Value).detail("endpoint", show_point(&e)))
        }
        Pi1Command::Lift {
            model: a,
            cover,
            cover_matrix,
            winding,
            start,
            lift_start,
        } => {
            let m = model(&a)?;
            let cover = match (cover, cover_matrix) {
                (_, Some(mat)) => CoverMap::Matrix(rows(&mat)?),
                (Some(n), None) => CoverMap::Power(n),
                (None, None) => return Err("one of --cover or --cover-matrix is required".into()),
            };
            let winding = windings(&winding)?;
            let r = winding.len();
            let path = TorusPath {
                start: points(&start, r)?,
                winding,
            };
            let q = m
                .lift_path(&cover, &path, &points(&lift_start, r)?)
                .map_err(|e| e.to_string())?;
            let e = m.endpoint(&q).map_err(|e| e.to_string())?;
            let w: Vec<String> = q.winding.iter().map(|w| w.to_string()).collect();
            Ok(RunReport::new("pi1 lift", Verdict::Value)
                .detail("winding", w.join(","))
                .detail("endpoint", show_point(&e)))
        }
        Pi1Command::Xi(a) => {
            let m = model(&a)?;
            let mut r = RunReport::new("pi1 xi", Verdict::Value);
            for (n, x) in m.xi_sequence() {
                r.push(&format!("xi_{n}"), x);
            }
            Ok(r)
        }
        Pi1Command::Axioms { model: a, r_max } => {
            if r_max > 3 {
                return Err("--r-max is limited to 3".into());
            }
            let m = model(&a)?;
            let report = pi1lab::check_axioms(&m, r_max);
            let verdict = if report.passed() { Verdict::Pass } else { Verdict::Fail };
            let mut r = RunReport::new("pi1 axioms", verdict);
            for e in &report.entries {
                let status = match &e.counterexample {
                    None => format!("pass ({} checked)", e.checked),
                    Some(s) => format!("fail at [{}]", show_point(s)),
                };
                r.push(&format!("r={} n={} {}", e.r, e.n, e.axiom), status);
            }
            Ok(r)
        }
        Pi1Command::Compare { model: a, u2, level2 } => {
            let m1 = model(&a)?;
            let m2 = model(&ModelArgs {
                level: level2.unwrap_or(a.level),
                u: u2,
            })?;
            match pi1lab::compare_functors(&m1, &m2) {
                Ok(t) => Ok(RunReport::new("pi1 compare", Verdict::Value).detail("twist", t)),
                Err(e) => Err(e.to_string()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(report) => {
            print!("{}", report.render(json));
            ExitCode::from(report.exit_code() as u8)
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
