use crate::args::*;
use crate::error::CliError;
use calculus::{module_action, star_product, Backend, Evaluated, Flavor, Side, WeightBook};
use graphs::{enumerate_q_n2, enumerate_reduction_family, ClassRep, Graph};
use lie_core::rational::{fmt_q, parse_q};
use lie_core::{parse_algebra, SplitData, ViolationKind};
use poly::{parse_poly, Ambient, Poly};
use reduction::{
    center_dims, fmt_list, solve_reduction, specialize_eps1, verify_homogenization, verify_theorem_5_1,
    verify_theorem_6_1, verify_theorem_6_8, Variant,
};
use std::path::{Path, PathBuf};
use weights::{omega_exact, omega_numeric, McConfig};

const MAX_D: u32 = 6;
const MAX_N: u32 = 6;
const MAX_SAMPLES: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

pub struct Report {
    pub lines: Vec<String>,
    pub outcome: Outcome,
}

impl Report {
    fn pass(lines: Vec<String>) -> Self {
        Self {
            lines,
            outcome: Outcome::Pass,
        }
    }

    fn judged(lines: Vec<String>, ok: bool) -> Self {
        Self {
            lines,
            outcome: if ok { Outcome::Pass } else { Outcome::Fail },
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Accepts a path, or a bare name from the `algebras/` directory.
fn resolve_algebra(path: &Path) -> PathBuf {
    if path.exists() {
        return path.to_path_buf();
    }
    for candidate in [Path::new("algebras").join(path), Path::new("algebras").join(path).with_extension("alg")] {
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

fn load_split(path: &Path) -> Result<(String, SplitData), CliError> {
    let path = resolve_algebra(path);
    let name = path
        .file_stem()
        .map_or_else(|| "algebra".to_string(), |s| s.to_string_lossy().into_owned());
    let split = parse_algebra(&read(&path)?)?.split()?;
    Ok((name, split))
}

fn cap(what: &'static str, value: u64, max: u64) -> Result<(), CliError> {
    if value > max {
        return Err(CliError::Cap { what, value, max });
    }
    Ok(())
}

fn book(opts: &BackendOpts, seed: Option<u64>) -> Result<WeightBook, CliError> {
    match opts.backend {
        BackendArg::Exact => Ok(WeightBook::exact()),
        BackendArg::Numeric => {
            cap("samples", opts.samples, MAX_SAMPLES)?;
            let seed = seed.ok_or(CliError::MissingSeed)?;
            Ok(WeightBook::new(Backend::Numeric(McConfig::new(opts.samples, seed))))
        }
    }
}

pub fn run(cli: &Cli) -> Result<Report, CliError> {
    match &cli.command {
        Command::Validate { file } => validate(file),
        Command::Graphs {
            action: GraphsAction::Enum { n, colored, family, i },
        } => graphs_enum(*n, *colored, *family, *i),
        Command::Weights(a) => weights(a, cli.seed),
        Command::Star(a) => star(a, cli.seed),
        Command::Reduce(a) => reduce(a, cli.seed),
        Command::Verify(a) => verify(a, cli.seed),
    }
}

fn validate(file: &Path) -> Result<Report, CliError> {
    let path = resolve_algebra(file);
    let parsed = parse_algebra(&read(&path)?)?;
    let alg = &parsed.algebra;
    let label = |i: usize| alg.labels()[i].clone();
    let violations = alg.validate();
    let mut lines = vec![format!(
        "validate file={} dim={} violations={}",
        path.display(),
        alg.dim(),
        violations.len()
    )];
    for v in &violations {
        lines.push(match v.kind {
            ViolationKind::Antisymmetry { i, j, k } => format!(
                "violation=antisymmetry pair=({},{}) component={} residual={}",
                label(i),
                label(j),
                label(k),
                fmt_q(&v.residual)
            ),
            ViolationKind::Jacobi { i, j, k, l } => format!(
                "violation=jacobi triple=({},{},{}) component={} residual={}",
                label(i),
                label(j),
                label(k),
                label(l),
                fmt_q(&v.residual)
            ),
        });
    }
    Ok(Report::judged(lines, violations.is_empty()))
}

fn class_lines(reps: &[ClassRep], tag: &str) -> Vec<String> {
    let labeled: u64 = reps.iter().map(|r| r.labeled_count).sum();
    let mut lines = vec![format!("{tag} classes={} labeled={labeled}", reps.len())];
    lines.extend(reps.iter().map(|r| format!("{} count={}", r.graph, r.labeled_count)));
    lines
}

fn graphs_enum(
    n: Option<usize>,
    colored: bool,
    family: Option<FamilyArg>,
    i: Option<usize>,
) -> Result<Report, CliError> {
    if let (Some(fam), Some(i)) = (family, i) {
        let all = enumerate_reduction_family(i, None)?;
        let (reps, name) = match fam {
            FamilyArg::B => (&all.b, "B"),
            FamilyArg::W => (&all.w, "W"),
            FamilyArg::Bw => (&all.bw, "BW"),
        };
        return Ok(Report::pass(class_lines(reps, &format!("family={name} i={i}"))));
    }
    let n = n.ok_or_else(|| CliError::Input("either --n or --family with --i is required".into()))?;
    let reps = enumerate_q_n2(n, colored)?;
    Ok(Report::pass(class_lines(&reps, &format!("q_n2 n={n} colored={colored}"))))
}

fn weights(a: &WeightsArgs, seed: Option<u64>) -> Result<Report, CliError> {
    let g: Graph = a.graph.parse()?;
    let w = if a.exact {
        omega_exact(&g).ok_or_else(|| CliError::Input(format!("no tabulated weight for {g}")))?
    } else {
        let samples = a
            .samples
            .ok_or_else(|| CliError::Input("give --samples with --seed, or --exact".into()))?;
        cap("samples", samples, MAX_SAMPLES)?;
        omega_numeric(&g, &McConfig::new(samples, seed.ok_or(CliError::MissingSeed)?))?
    };
    Ok(Report::pass(vec![w.to_string()]))
}

fn minus_lambda(s: &SplitData) -> Vec<lie_core::Q> {
    s.lambda.iter().map(|l| -l).collect()
}

fn star(a: &StarArgs, seed: Option<u64>) -> Result<Report, CliError> {
    let (name, s) = load_split(&a.algebra)?;
    let amb = Ambient::from_split(&s);
    let (f, g) = (parse_poly(&amb, &a.f)?, parse_poly(&amb, &a.g)?);
    let book = book(&a.backend, seed)?;
    let (flavor, restrict, tag) = match a.flavor {
        FlavorArg::Kontsevich => (Flavor::Kontsevich, None, "kontsevich"),
        FlavorArg::Cf => (Flavor::CattaneoFelder, Some(minus_lambda(&s)), "cf"),
    };
    let value = star_product(&f, &g, flavor, a.order, restrict.as_deref(), &book)?;
    let kind = match value {
        Evaluated::Exact(_) => "exact",
        Evaluated::Numeric(_) => "numeric",
    };
    Ok(Report::pass(vec![format!(
        "star algebra={name} flavor={tag} order={} f={f} g={g} kind={kind} result={value}",
        a.order
    )]))
}

fn default_order(d: u32, order: Option<usize>) -> usize {
    order.unwrap_or(d as usize + 1)
}

fn reduce(a: &ReduceArgs, seed: Option<u64>) -> Result<Report, CliError> {
    cap("D", a.d.into(), MAX_D.into())?;
    cap("N", a.n.into(), MAX_N.into())?;
    let (name, s) = load_split(&a.algebra)?;
    let variant = match a.variant {
        VariantArg::Eps => Variant::Eps,
        VariantArg::Plain => Variant::Plain,
        VariantArg::T => {
            let raw = a.t.as_deref().unwrap_or_default();
            Variant::T(parse_q(raw).ok_or_else(|| CliError::Input(format!("bad rational for --t: {raw}")))?)
        }
    };
    let order = default_order(a.d, a.order);
    let basis = solve_reduction(&s, a.d, a.n, order, variant, &book(&a.backend, seed)?)?;
    let mut lines = vec![format!(
        "reduce algebra={name} variant={} D={} N={} order={order} dims={} grid={} elements={} backend={}",
        basis.variant,
        basis.d,
        basis.n,
        fmt_list(&basis.dims.per_degree()),
        basis.dims,
        basis.elements.len(),
        basis.certificate
    )];
    lines.extend(basis.elements.iter().enumerate().map(|(k, e)| format!("element {}: {e}", k + 1)));
    Ok(Report::pass(lines))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

/// `(H + (lambda + rho)(H)) *_1 1` on the corner, read at `eps = 1`.
fn lemma41(name: &str, s: &SplitData) -> Result<Report, CliError> {
    let amb = Ambient::from_split(s);
    let one = Poly::one(&amb);
    let mut ok = true;
    let mut lines = Vec::new();
    for i in 0..s.t {
        let shift = &s.lambda[i] + &s.rho[i];
        let a = &Poly::var(&amb, i) + &Poly::constant(&amb, shift.clone());
        let act = module_action(Side::Left, &a, &one, s, 1)?;
        let residual = match WeightBook::exact().resolve(&act.series())? {
            Evaluated::Exact(p) => p.set_eps(&lie_core::rational::one()),
            Evaluated::Numeric(_) => unreachable!("the exact backend never samples"),
        };
        ok &= residual.is_zero();
        lines.push(format!(
            "lemma=4.1 algebra={name} generator={} shift={} at=eps1 residual={residual} verdict={}",
            amb.names()[i],
            fmt_q(&shift),
            verdict(residual.is_zero())
        ));
    }
    Ok(Report::judged(lines, ok))
}

fn verify(a: &VerifyArgs, seed: Option<u64>) -> Result<Report, CliError> {
    cap("D", a.d.into(), MAX_D.into())?;
    cap("N", a.n.into(), MAX_N.into())?;
    let (name, s) = load_split(&a.algebra)?;
    let book = book(&a.backend, seed)?;
    let order = default_order(a.d, a.order);
    let (line, ok) = match a.check {
        Check::Prop33 => {
            let r = verify_homogenization(&s, a.d, order, a.trials, seed.unwrap_or(0), &book)?;
            let control = match r.negative_control {
                Some(true) => "rejected",
                Some(false) => "ACCEPTED",
                None => "none",
            };
            let line = format!(
                "prop=3.3 algebra={name} D={} elements={} forward_failures={} backward_failures={} trials={} trial_failures={} negative_control={control} graded={} verdict={}",
                a.d,
                r.elements,
                r.forward_failures.len(),
                r.backward_failures.len(),
                r.trials,
                r.trial_failures,
                r.graded,
                verdict(r.passed())
            );
            (line, r.passed())
        }
        Check::Lemma34 => {
            let basis = solve_reduction(&s, a.d, a.n, order, Variant::Eps, &book)?;
            let r = specialize_eps1(&basis, &book)?;
            let case = if r.vector_case { "vector" } else { "affine" };
            let line = format!(
                "lemma=3.4/3.5 algebra={name} case={case} D={} N={} quotient_dims={} plain_dims={} image_failures={} witnesses={} witness_failures={} j_kernel={} reconstructed={} verdict={}",
                a.d,
                a.n,
                fmt_list(&r.quotient_dims),
                fmt_list(&r.plain_dims),
                r.image_failures,
                r.witnesses,
                r.witness_failures,
                r.j_kernel,
                r.reconstructed,
                verdict(r.passed())
            );
            (line, r.passed())
        }
        Check::Lemma41 => return lemma41(&name, &s),
        Check::Thm51 => {
            let r = verify_theorem_5_1(&name, &s, a.d, a.n, order, &book)?;
            (r.to_string(), r.verdict().is_match())
        }
        Check::Thm61 => {
            let r = verify_theorem_6_1(&name, &s, a.d, order, &book)?;
            let mut lines = vec![r.to_string()];
            lines.extend(r.failures.iter().map(|f| format!("failure: {f}")));
            return Ok(Report::judged(lines, r.verdict().is_match()));
        }
        Check::Thm68 => {
            let r = verify_theorem_6_8(&name, &s, a.d, a.n, order, &book)?;
            (r.to_string(), r.verdict().is_match())
        }
        Check::Centers => {
            let r = center_dims(&name, &s, a.d);
            (r.to_string(), r.verdict().is_match())
        }
    };
    Ok(Report::judged(vec![line], ok))
}
