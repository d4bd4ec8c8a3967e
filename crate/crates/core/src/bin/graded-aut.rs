use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use graded_aut::export::export_cas_script;
use graded_aut::input::{parse_input, parse_int_list, Mode, ProblemInput};
use graded_aut::report::{read_report, render_text, write_report, ResultBundle};
use graded_aut::{autks, git, stabilizer, symmetry, validate, Error, Limits, Result};

#[derive(Parser)]
#[command(name = "graded-aut", version, about = "Automorphisms of graded algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the grading and the presentation meet the requirements.
    Check(Common),
    /// Aut(Omega_S): the automorphisms of K permuting the generator weights.
    WeightsAut(Common),
    /// The presentation of Aut_K(S) by triples (A_B, J_B, B).
    Autks(Common),
    /// Aut_K(R): the triples extended by the stabilizer equations of I.
    Autgradalg(Common),
    /// The triples whose weight automorphism fixes the GIT-cone of w.
    Autxhat(Common),
    /// A script for an external computer algebra system.
    Export(ExportArgs),
}

#[derive(Args)]
struct Common {
    /// Problem file.
    #[arg(long)]
    input: PathBuf,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Record wall-clock time per stage in the report.
    #[arg(long)]
    timing: bool,
    /// Class w, e.g. "1,9,16,0"; overrides `w` of the problem file.
    #[arg(long)]
    w: Option<String>,
    /// Face selection; overrides `mode` of the problem file.
    #[arg(long)]
    mode: Option<Mode>,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct RunArgs {
    /// Worker threads.
    #[arg(long, env = "GRADED_AUT_JOBS")]
    jobs: Option<usize>,
    /// Largest admissible action basis size n.
    #[arg(long)]
    max_basis_size: Option<usize>,
    /// Largest r for all-subsets orbit cones.
    #[arg(long)]
    max_subset_vars: Option<usize>,
    /// Largest number of terms of a symbolic determinant.
    #[arg(long)]
    max_det_terms: Option<u64>,
    /// Largest number of torsion candidates tried per weight automorphism.
    #[arg(long)]
    max_torsion_candidates: Option<u64>,
}

#[derive(Args)]
struct ExportArgs {
    /// A JSON report written with --out.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    report: Option<PathBuf>,
    /// A problem file; Aut_K(R) is computed first.
    #[arg(long)]
    input: Option<PathBuf>,
    /// singular-like or macaulay2-like.
    #[arg(long, default_value = "singular-like")]
    dialect: String,
    /// Write the script here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    run: RunArgs,
}

impl RunArgs {
    fn limits(&self) -> Limits {
        let mut l = Limits::default();
        if let Some(x) = self.max_basis_size {
            l.max_basis_size = x;
        }
        if let Some(x) = self.max_subset_vars {
            l.max_subset_vars = x;
        }
        if let Some(x) = self.max_det_terms {
            l.max_det_terms = x;
        }
        if let Some(x) = self.max_torsion_candidates {
            l.max_torsion_candidates = x;
        }
        l
    }

    fn init_pool(&self) -> Result<()> {
        if let Some(n) = self.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| Error::Structure(format!("worker pool: {e}")))?;
        }
        Ok(())
    }
}

fn load(path: &Path) -> Result<ProblemInput> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

struct Stages {
    enabled: bool,
    times: BTreeMap<String, f64>,
}

impl Stages {
    fn run<T>(&mut self, name: &str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f()?;
        if self.enabled {
            self.times.insert(name.to_string(), start.elapsed().as_secs_f64());
        }
        Ok(out)
    }
}

/// Runs a computing subcommand; the bool is false on a failed check.
fn compute(which: &Command, args: &Common) -> Result<(ResultBundle, bool)> {
    let mut input = load(&args.input)?;
    if let Some(w) = &args.w {
        input.w = Some(parse_int_list(w)?);
    }
    if let Some(m) = args.mode {
        input.mode = Some(m);
    }
    let problems = input.diagnostics();
    if !problems.is_empty() {
        return Err(Error::Parse(problems.join("\n")));
    }
    let limits = args.run.limits();
    let mut stages = Stages {
        enabled: args.timing,
        times: BTreeMap::new(),
    };
    let ideal = input.ideal()?;
    let mut bundle = ResultBundle::new(input.clone());
    let mut ok = true;
    match which {
        Command::Check(_) => {
            let v = stages.run("check", || Ok(validate::validate_presentation(&ideal)))?;
            ok = v.passes();
            bundle.validation = Some(v);
        }
        Command::WeightsAut(_) => {
            let auts = stages.run("weights-aut", || {
                symmetry::aut_gen_weights_with(ideal.ring().degrees(), &limits)
            })?;
            bundle.set_weight_automorphisms(&auts);
        }
        Command::Autks(_) => {
            let pres = stages.run("autks", || autks::aut_ks_with(ideal.ring(), &limits))?;
            bundle.set_presentation(&pres);
        }
        Command::Autgradalg(_) | Command::Autxhat(_) => {
            let v = validate::validate_presentation(&ideal);
            if !v.passes() {
                return Err(Error::Validation(v.failures().join("; ")));
            }
            bundle.validation = Some(v);
            let stab = stages.run("autgradalg", || stabilizer::aut_grad_alg_with(&ideal, &limits))?;
            bundle.set_stabilizer(&stab);
            if matches!(which, Command::Autxhat(_)) {
                let w = input
                    .weight()?
                    .ok_or_else(|| Error::Parse("autxhat needs a class w (--w or `w` in the problem file)".into()))?;
                let q = ideal.ring().degrees();
                let res = stages.run("autxhat", || {
                    git::aut_xhat(&stab, q, &w, &input.face_source(), &limits)
                })?;
                bundle.set_filter(&res, &w, input.mode());
            }
        }
        Command::Export(_) => unreachable!(),
    }
    if args.timing {
        bundle.timing = Some(stages.times);
    }
    Ok((bundle, ok))
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Export(args) => {
            args.run.init_pool()?;
            let bundle = match (&args.report, &args.input) {
                (Some(path), _) => read_report(path)?,
                (None, Some(path)) => {
                    let input = load(path)?;
                    let ideal = input.ideal()?;
                    let stab = stabilizer::aut_grad_alg_with(&ideal, &args.run.limits())?;
                    let mut b = ResultBundle::new(input);
                    b.set_stabilizer(&stab);
                    b
                }
                (None, None) => unreachable!("clap requires one of --report and --input"),
            };
            let script = export_cas_script(&bundle, &args.dialect)?;
            match &args.out {
                Some(path) => std::fs::write(path, script)?,
                None => print!("{script}"),
            }
            Ok(true)
        }
        which @ (Command::Check(args)
        | Command::WeightsAut(args)
        | Command::Autks(args)
        | Command::Autgradalg(args)
        | Command::Autxhat(args)) => {
            args.run.init_pool()?;
            let (bundle, ok) = compute(which, args)?;
            if let Some(path) = &args.out {
                write_report(&bundle, path)?;
            }
            if args.json {
                print!("{}", bundle.to_json());
            } else {
                print!("{}", render_text(&bundle));
            }
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
