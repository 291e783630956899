use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use schur_torus::lattice::{decompose, verify as verify_lattice, LatticeInput, QuadField};
use schur_torus::layered::{sweep, trace_check, LayeredMedium, ReflectionSource};
use schur_torus::scattering::{phi, verify_eigen};
use schur_torus::schur::{
    series_max_diff, taylor_from_rational, taylor_from_weights, SchurData, SchurModel, TaylorSeries,
};
use schur_torus::torus::{gram, szego_integral, szego_log_w, TorusGrid, TorusLine};
use schur_torus::verify::{run_verify_all, RunConfig};

/// Multivariate Schur functions, torus quadrature and layered-media checks.
///
/// Set RAYON_NUM_THREADS to control the worker thread count.
#[derive(Parser)]
#[command(name = "schur-torus", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scattering polynomials
    #[command(subcommand)]
    Scatter(ScatterCmd),
    /// Polynomial quads and Taylor coefficients of a model
    #[command(subcommand)]
    Schur(SchurCmd),
    /// Torus integrals, Gram matrices and line averages
    #[command(subcommand)]
    Torus(TorusCmd),
    /// Integer lattice decomposition of a frequency vector
    #[command(subcommand)]
    Lattice(LatticeCmd),
    /// Reflection spectra and trace averages of layered media
    #[command(subcommand)]
    Layered(LayeredCmd),
    /// Aggregated verification report
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Subcommand)]
enum ScatterCmd {
    /// Print the scattering polynomial φ^(p,q)
    Phi { p: u32, q: u32 },
    /// Check the Laplace–Beltrami eigen identity for all p ≤ pmax, q ≤ qmax
    Verify {
        #[arg(long, default_value_t = 12)]
        pmax: u32,
        #[arg(long, default_value_t = 12)]
        qmax: u32,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TaylorMethod {
    Weights,
    Rational,
    Both,
}

#[derive(Subcommand)]
enum SchurCmd {
    /// Print Ψ_n, Ψ*_n, Φ_n, Φ*_n as JSON
    Quads {
        model: PathBuf,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Print Taylor coefficients up to a total degree
    Taylor {
        model: PathBuf,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long, value_enum, default_value_t = TaylorMethod::Both)]
        method: TaylorMethod,
    },
}

#[derive(Args)]
struct OutArg {
    /// Output CSV path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TorusCmd {
    /// Both Szegő integrals against Σ log(1 - |r_j|²)
    Szego {
        model: PathBuf,
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Gram matrix of Φ_0..Φ_jmax (CSV: j, k, re, im, reference)
    Gram {
        model: PathBuf,
        #[arg(long)]
        jmax: Option<usize>,
        #[arg(long)]
        grid: Option<usize>,
        #[command(flatten)]
        out: OutArg,
    },
    /// Line averages of -log(1 - |f|²) at L/16, …, L (CSV: L, average, reference, abs_error)
    Line {
        model: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        eta: Vec<f64>,
        #[arg(long = "L", default_value_t = 4000.0)]
        l: f64,
        #[arg(long)]
        step: Option<f64>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Decompose η = B b as A q
    Decompose {
        #[arg(long = "B")]
        basis: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Source {
    Schur,
    Ode,
}

#[derive(Subcommand)]
enum LayeredCmd {
    /// Reflection at ω_k = ω_max k / n (CSV: omega, re_R, im_R, abs_R_sq)
    Sweep {
        medium: PathBuf,
        #[arg(long, default_value_t = 100.0)]
        omega_max: f64,
        #[arg(long, default_value_t = 4096)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Source::Ode)]
        source: Source,
        #[command(flatten)]
        out: OutArg,
    },
    /// Line averages of log(1 - |R|²) (CSV: L, average, reference, abs_error)
    Trace {
        medium: PathBuf,
        #[arg(
            long = "L",
            value_delimiter = ',',
            default_value = "250,500,1000,2000,4000"
        )]
        l: Vec<f64>,
        #[command(flatten)]
        out: OutArg,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Run every check; exit status 0 iff all pass
    All {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Write the JSON report here
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn read(path: &PathBuf) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_model(path: &PathBuf) -> Result<SchurData> {
    SchurData::from_json(&read(path)?).with_context(|| format!("parsing model {}", path.display()))
}

fn load_medium(path: &PathBuf) -> Result<LayeredMedium> {
    LayeredMedium::from_json(&read(path)?)
        .with_context(|| format!("parsing medium {}", path.display()))
}

fn csv_writer(out: &OutArg) -> Result<csv::Writer<Box<dyn Write>>> {
    let sink: Box<dyn Write> = match &out.out {
        Some(p) => {
            Box::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)
        }
        None => Box::new(io::stdout()),
    };
    Ok(csv::Writer::from_writer(sink))
}

fn grid_for(dim: usize, n: Option<usize>) -> Result<TorusGrid> {
    Ok(TorusGrid::new(
        dim,
        n.unwrap_or_else(|| TorusGrid::default_points(dim)),
    )?)
}

fn print_series(label: &str, s: &TaylorSeries) {
    println!("# {label}");
    for (m, c) in s {
        println!("{m}\t{:.17e}\t{:.17e}", c.re, c.im);
    }
}

fn scatter(cmd: ScatterCmd) -> Result<ExitCode> {
    match cmd {
        ScatterCmd::Phi { p, q } => {
            println!("{}", phi(p, q));
            Ok(ExitCode::SUCCESS)
        }
        ScatterCmd::Verify { pmax, qmax } => {
            let mut ok = true;
            println!("p\tq\tresult");
            for p in 0..=pmax {
                for q in 0..=qmax {
                    let pass = verify_eigen(p, q);
                    ok &= pass;
                    println!("{p}\t{q}\t{}", if pass { "PASS" } else { "FAIL" });
                }
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}

fn schur(cmd: SchurCmd) -> Result<ExitCode> {
    match cmd {
        SchurCmd::Quads { model, level } => {
            let data = load_model(&model)?;
            let m = SchurModel::new(data)?;
            let q = m.quad(level.unwrap_or(m.top_level()))?;
            println!("{}", serde_json::to_string_pretty(q)?);
        }
        SchurCmd::Taylor {
            model,
            degree,
            method,
        } => {
            let data = load_model(&model)?;
            let m = SchurModel::new(data.clone())?;
            let top = m.quad(m.top_level())?;
            match method {
                TaylorMethod::Weights => {
                    print_series("weights", &taylor_from_weights(&data, degree)?)
                }
                TaylorMethod::Rational => {
                    print_series("rational", &taylor_from_rational(top, degree)?)
                }
                TaylorMethod::Both => {
                    let w = taylor_from_weights(&data, degree)?;
                    let r = taylor_from_rational(top, degree)?;
                    print_series("weights", &w);
                    print_series("rational", &r);
                    println!("# max difference {:e}", series_max_diff(&w, &r));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn torus(cmd: TorusCmd) -> Result<ExitCode> {
    match cmd {
        TorusCmd::Szego { model, grid } => {
            let data = load_model(&model)?;
            let g = grid_for(data.dim(), grid)?;
            let s = szego_integral(&data, &g)?;
            let w = szego_log_w(&data, &g)?;
            if s.near_singular {
                eprintln!("warning: some |r_j| > 0.95; refine the grid");
            }
            println!("reference\t{:.17e}", s.reference);
            println!("log(1-|f|^2)\t{:.17e}\terror {:.3e}", s.value, s.error());
            println!("log w\t{:.17e}\terror {:.3e}", w.value, w.error());
            println!("log|1-f|\t{:.17e}", w.outer);
        }
        TorusCmd::Gram {
            model,
            jmax,
            grid,
            out,
        } => {
            let data = load_model(&model)?;
            let g = grid_for(data.dim(), grid)?;
            let gm = gram(&data, &g, jmax.unwrap_or(data.top_level()))?;
            let mut w = csv_writer(&out)?;
            w.write_record(["j", "k", "re", "im", "reference"])?;
            for (j, row) in gm.matrix.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    let reference = if j == k { gm.reference[j] } else { 0.0 };
                    w.serialize((j, k, v.re, v.im, reference))?;
                }
            }
            w.flush()?;
        }
        TorusCmd::Line {
            model,
            eta,
            l,
            step,
            out,
        } => {
            let data = load_model(&model)?;
            let line = TorusLine::new(eta)?;
            if line.dim() != data.dim() {
                bail!(
                    "eta has {} entries but the model has d = {}",
                    line.dim(),
                    data.dim()
                );
            }
            let m = SchurModel::new(data.clone())?;
            let step = step.unwrap_or_else(|| line.default_step(data.top_level()));
            let reference = -data.log_norm_sum();
            let mut w = csv_writer(&out)?;
            w.write_record(["L", "average", "reference", "abs_error"])?;
            for k in (0..=4).rev() {
                let lk = l / f64::from(1u32 << k);
                let avg =
                    line.try_line_average(|z| Ok(-(1.0 - m.eval(z)?.norm_sqr()).ln()), lk, step)?;
                w.serialize((lk, avg, reference, (avg - reference).abs()))?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn lattice(cmd: LatticeCmd) -> Result<ExitCode> {
    let LatticeCmd::Decompose { basis, field } = cmd;
    let field: QuadField = field.parse()?;
    let input = LatticeInput::from_json(&read(&basis)?, field)
        .with_context(|| format!("parsing {}", basis.display()))?;
    let d = decompose(&input)?;
    println!("field {field}");
    println!("eta");
    for e in input.eta() {
        println!("  {e}");
    }
    println!("A");
    for row in &d.a {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        println!("  {}", cells.join(" "));
    }
    println!("q");
    for x in &d.q {
        println!("  {x}");
    }
    let c = &d.certificate;
    match c.approximant {
        Some(j) => {
            let q: Vec<String> = c.approximant_values.iter().map(|x| x.to_string()).collect();
            println!(
                "certificate approximant {j} ({}), t = {}, s = {}",
                q.join(", "),
                c.t,
                c.s
            );
        }
        None => println!("certificate B >= 0, t = 0, s = {}", c.s),
    }
    let ok = verify_lattice(&d, &input);
    println!("verified {ok}");
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn layered(cmd: LayeredCmd) -> Result<ExitCode> {
    match cmd {
        LayeredCmd::Sweep {
            medium,
            omega_max,
            n,
            source,
            out,
        } => {
            let m = load_medium(&medium)?;
            let source = match source {
                Source::Schur => ReflectionSource::Schur,
                Source::Ode => ReflectionSource::Ode,
            };
            let spectrum = sweep(&m, omega_max, n, source)?;
            let mut w = csv_writer(&out)?;
            w.write_record(["omega", "re_R", "im_R", "abs_R_sq"])?;
            for (o, r) in spectrum.omegas.iter().zip(&spectrum.values) {
                w.serialize((o, r.re, r.im, r.norm_sqr()))?;
            }
            w.flush()?;
        }
        LayeredCmd::Trace { medium, l, out } => {
            let m = load_medium(&medium)?;
            let t = trace_check(&m, &l)?;
            let mut w = csv_writer(&out)?;
            w.write_record(["L", "average", "reference", "abs_error"])?;
            for r in &t.rows {
                w.serialize((r.l, r.average, r.reference, r.abs_error))?;
            }
            w.flush()?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(cmd: VerifyCmd) -> Result<ExitCode> {
    let VerifyCmd::All { config, out } = cmd;
    let cfg = match &config {
        Some(p) => RunConfig::from_json(&read(p)?)
            .with_context(|| format!("parsing config {}", p.display()))?,
        None => RunConfig::default(),
    };
    let report = run_verify_all(&cfg);
    print!("{}", report.to_table());
    if let Some(p) = out {
        fs::write(&p, report.to_json() + "\n")
            .with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> Result<ExitCode> {
    match Cli::parse().command {
        Command::Scatter(c) => scatter(c),
        Command::Schur(c) => schur(c),
        Command::Torus(c) => torus(c),
        Command::Lattice(c) => lattice(c),
        Command::Layered(c) => layered(c),
        Command::Verify(c) => verify(c),
    }
}
