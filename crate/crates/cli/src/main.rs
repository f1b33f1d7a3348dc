//! Command-line front end: q-expansions, de Rham reduction, Gauss-Manin
//! data, the verification registry, generating functions, finite-field
//! counts and numeric period checks.
//!
//! Exit codes: 0 success/verified, 1 verification mismatch, 2 usage error.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use qmforms::curves::{self, AffineCurveModP};
use qmforms::field::{rat_from_str, rat_to_string, BigComplex, Rat};
use qmforms::gaussmanin;
use qmforms::genfun;
use qmforms::periods::numeric;
use qmforms::poly::parse_poly;
use qmforms::series::PuiseuxSeries;
use qmforms::theta::{self, ThetaKind};
use qmforms::verify::{self, CheckConfig};
use qmforms::weierstrass;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "qmforms",
    version,
    about = "exact arithmetic for quasi-modular forms and elliptic-curve periods"
)]
struct Cli {
    /// Series truncation order
    #[arg(long, global = true, default_value_t = 30)]
    order: i64,
    /// Working precision in bits for numeric subcommands
    #[arg(long = "prec", global = true, default_value_t = 256)]
    precision: u32,
    /// Emit machine-readable JSON instead of the pretty form
    #[arg(long, global = true)]
    json: bool,
    /// Directory for cached series, keyed by subcommand and parameters
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// q-expansions of the basic series
    #[command(subcommand)]
    Qexp(QexpCommand),
    /// Reduction to the de Rham basis {dx/y, x dx/y}
    #[command(subcommand)]
    Derham(DerhamCommand),
    /// Gauss-Manin connection data
    #[command(subcommand)]
    Gm(GmCommand),
    /// Run a named identity check, or all of them
    Verify(VerifyArgs),
    /// Generating functions (j, tau, covers, K3 counts, eta products)
    #[command(subcommand)]
    Genfun(GenfunCommand),
    /// Weierstrass z-expansion data
    #[command(subcommand)]
    Weierstrass(WeierstrassCommand),
    /// Finite-field point counts and averages
    #[command(subcommand)]
    Ff(FfCommand),
    /// Numeric period checks
    #[command(subcommand)]
    Periods(PeriodsCommand),
}

#[derive(Subcommand)]
enum QexpCommand {
    /// Eisenstein series E_k by divisor sums, k in {2, 4, 6}
    Eisenstein {
        #[arg(long)]
        k: u32,
    },
    /// Theta constants theta_2, theta_3, theta_4
    Theta {
        #[arg(long)]
        which: u32,
    },
    /// Dedekind eta = q^(1/24) prod (1 - q^n)
    Eta,
}

#[derive(Subcommand)]
enum DerhamCommand {
    /// Reduce C(x) dx/y modulo exact forms; prints alpha and beta
    Reduce { poly: String },
}

#[derive(Subcommand)]
enum GmCommand {
    /// Print the connection matrix of the chosen chart
    Matrix {
        #[arg(long, default_value = "ramanujan")]
        chart: String,
    },
    /// Print the vector field with nabla(dx/y) = -x dx/y, nabla(x dx/y) = 0
    Field {
        #[arg(long, default_value = "ramanujan")]
        chart: String,
    },
}

#[derive(Args)]
struct VerifyArgs {
    /// Check name from the registry, or `all`
    name: String,
}

#[derive(Subcommand)]
enum GenfunCommand {
    /// j = 1728 E4^3/(E4^3 - E6^2), from q^-1 up
    J,
    /// Ramanujan tau(n), cross-checked against the eta product
    Tau,
    /// Dijkgraaf's F_g for simply ramified covers (g = 2 or 3)
    Dijkgraaf {
        #[arg(long, default_value_t = 2)]
        genus: u32,
    },
    /// Yau-Zaslow rational-curve counts 1728 q/(E4^3 - E6^2)
    YauZaslow,
    /// Bryan-Leung genus-g counts
    BryanLeung {
        #[arg(long, default_value_t = 1)]
        genus: u32,
    },
    /// The conductor-11 newform eta(q)^2 eta(q^11)^2
    Eta11,
}

#[derive(Subcommand)]
enum WeierstrassCommand {
    /// The Eisenstein modular form G_{2k+2} as a polynomial in t2, t3
    Gk {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Subcommand)]
enum FfCommand {
    /// Brute-force affine point count and a_p = p - N_p
    Count {
        #[arg(long)]
        curve: String,
        #[arg(long)]
        p: u64,
    },
    /// Aut-weighted Frobenius average sigma_k(p) and its cusp-form trace
    Sigma {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        k: u32,
    },
}

#[derive(Subcommand)]
enum PeriodsCommand {
    /// Schwarz map p(tau) = i F(1/6,5/6,1|1-tau)/F(1/6,5/6,1|tau)
    Schwarz {
        /// tau as `re` or `re,im` (rationals)
        #[arg(long)]
        tau: String,
    },
    /// Legendre relation deviation |LHS - 2 pi i| at rational psi
    Legendre {
        #[arg(long)]
        psi: String,
    },
    /// The a = 1/432 degeneration limit
    Aconst,
    /// Fundamental-domain boundary samples
    Boundary {
        #[arg(long, default_value = "csv")]
        emit: String,
        #[arg(long, default_value_t = 24)]
        samples: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if cli.order < 1 {
        bail!("--order must be at least 1");
    }
    if cli.precision < 64 {
        bail!("--prec must be at least 64 bits");
    }
    match &cli.command {
        Command::Qexp(cmd) => {
            let (key, series) = match cmd {
                QexpCommand::Eisenstein { k } => {
                    let index = match k {
                        2 => 1,
                        4 => 2,
                        6 => 3,
                        _ => bail!("--k must be 2, 4 or 6 (the weight of E_k)"),
                    };
                    (
                        format!("qexp-eisenstein-k{}-order{}", k, cli.order),
                        qmforms::eisenstein::eisenstein_divisor(index, cli.order as usize),
                    )
                }
                QexpCommand::Theta { which } => {
                    let kind = match which {
                        2 => ThetaKind::Theta2,
                        3 => ThetaKind::Theta3,
                        4 => ThetaKind::Theta4,
                        _ => bail!("--which must be 2, 3 or 4"),
                    };
                    (
                        format!("qexp-theta-{}-order{}", which, cli.order),
                        theta::theta_constant(kind, cli.order.max(1)),
                    )
                }
                QexpCommand::Eta => (
                    format!("qexp-eta-order{}", cli.order),
                    theta::dedekind_eta(cli.order.max(1)),
                ),
            };
            print_series(cli, &key, &series)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Derham(DerhamCommand::Reduce { poly }) => {
            let c = parse_poly(poly).map_err(|e| anyhow!("cannot parse polynomial: {e}"))?;
            let fam = qmforms::derham::CurveFamily::<Rat>::new();
            let (alpha, beta) = fam.reduce_poly(&c);
            println!("alpha = {alpha}");
            println!("beta  = {beta}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Gm(cmd) => {
            let chart_of = |name: &str| -> Result<gaussmanin::ConnectionMatrix<Rat>> {
                match name {
                    "ramanujan" => Ok(gaussmanin::gm_matrix()),
                    "halphen" => Ok(gaussmanin::halphen_matrix()),
                    other => bail!("unknown chart {other:?} (expected ramanujan or halphen)"),
                }
            };
            match cmd {
                GmCommand::Matrix { chart } => {
                    let m = chart_of(chart)?;
                    for j in 0..2 {
                        for k in 0..2 {
                            println!("A[{}][{}] = {}", j + 1, k + 1, m.entries[j][k]);
                        }
                    }
                }
                GmCommand::Field { chart } => {
                    let m = chart_of(chart)?;
                    let field = gaussmanin::solve_tangent_field(&m)
                        .map_err(|e| anyhow!("field solve failed: {e}"))?;
                    println!("{field}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify(args) => {
            let cfg = CheckConfig { order: cli.order, precision_bits: cli.precision };
            let reports = if args.name == "all" {
                verify::registry().iter().map(|c| c.run(&cfg)).collect::<Vec<_>>()
            } else {
                let check = verify::find(&args.name).ok_or_else(|| {
                    let names: Vec<_> =
                        verify::registry().iter().map(|c| c.name().to_string()).collect();
                    anyhow!(
                        "unknown check {:?}; available: {} or all",
                        args.name,
                        names.join(", ")
                    )
                })?;
                vec![check.run(&cfg)]
            };
            let mut all_passed = true;
            for r in &reports {
                println!("{r}");
                all_passed &= r.passed;
            }
            Ok(if all_passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Genfun(cmd) => {
            let order = cli.order;
            let (key, series) = match cmd {
                GenfunCommand::J => {
                    (format!("genfun-j-order{order}"), genfun::j_function(order.max(0)))
                }
                GenfunCommand::Tau => {
                    // the tau subcommand verifies the two pipelines agree
                    let a = genfun::tau(order.max(1) as usize);
                    let b = genfun::tau_by_eta_product(order.max(1) as usize);
                    if let Some((n, (x, y))) =
                        a.iter().zip(&b).enumerate().find(|(_, (x, y))| x != y)
                    {
                        println!(
                            "tau mismatch at n = {}: {} (polynomial) vs {} (eta product)",
                            n + 1,
                            rat_to_string(x),
                            rat_to_string(y)
                        );
                        return Ok(ExitCode::from(1));
                    }
                    let coeffs = std::iter::once(qmforms::field::rat_int(0)).chain(a).collect();
                    (
                        format!("genfun-tau-order{order}"),
                        PuiseuxSeries::new(1, 0, order.max(1), coeffs),
                    )
                }
                GenfunCommand::Dijkgraaf { genus } => (
                    format!("genfun-dijkgraaf-g{genus}-order{order}"),
                    genfun::dijkgraaf_f(*genus, order.max(1)),
                ),
                GenfunCommand::YauZaslow => (
                    format!("genfun-yau-zaslow-order{order}"),
                    genfun::yau_zaslow(order.max(0)),
                ),
                GenfunCommand::BryanLeung { genus } => {
                    println!("# derivative convention: {}", genfun::BRYAN_LEUNG_CONVENTION);
                    (
                        format!("genfun-bryan-leung-g{genus}-order{order}"),
                        genfun::bryan_leung(*genus, order.max(0)),
                    )
                }
                GenfunCommand::Eta11 => (
                    format!("genfun-eta11-order{order}"),
                    genfun::modularity_eta_product(order.max(1)),
                ),
            };
            print_series(cli, &key, &series)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Weierstrass(WeierstrassCommand::Gk { k }) => {
            if *k < 1 {
                bail!("--k must be at least 1");
            }
            let g = weierstrass::eisenstein_modular(*k);
            println!("G_{} = {}   (weight {})", 2 * k + 2, g.p, g.weight);
            Ok(ExitCode::SUCCESS)
        }
        Command::Ff(cmd) => {
            match cmd {
                FfCommand::Count { curve, p } => {
                    let c = AffineCurveModP::parse(curve).map_err(|e| anyhow!("{e}"))?;
                    let count = curves::count_points(&c, *p).map_err(|e| anyhow!("{e}"))?;
                    println!(
                        "N_{} = {}, a_{} = {}{}",
                        p,
                        count.n_p,
                        p,
                        count.a_p,
                        if count.singular { "  (singular reduction)" } else { "" }
                    );
                }
                FfCommand::Sigma { p, k } => {
                    let s = curves::sigma_k(*p, *k).map_err(|e| anyhow!("{e}"))?;
                    let trace = curves::cusp_form_trace(*p, *k).map_err(|e| anyhow!("{e}"))?;
                    println!(
                        "sigma_{}({}) = {}  (cusp-form trace: {})",
                        k,
                        p,
                        rat_to_string(&s),
                        rat_to_string(&trace)
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Periods(cmd) => {
            let prec = cli.precision.max(64);
            match cmd {
                PeriodsCommand::Schwarz { tau } => {
                    let z = parse_complex(tau, prec)?;
                    let p = numeric::schwarz_map(&z, prec).map_err(|e| anyhow!("{e}"))?;
                    println!("p(tau) = {p}");
                    println!("|p(tau)| = {}", p.abs());
                }
                PeriodsCommand::Legendre { psi } => {
                    let psi = rat_from_str(psi).map_err(|e| anyhow!("bad psi: {e}"))?;
                    let report =
                        numeric::legendre_check(&psi, prec).map_err(|e| anyhow!("{e}"))?;
                    println!("deviation |LHS - 2 pi i| = {}", report.deviation);
                    println!("Im(period ratio) > 0: {}", report.im_positive);
                }
                PeriodsCommand::Aconst => {
                    let samples =
                        numeric::a_constant_check(prec.max(128)).map_err(|e| anyhow!("{e}"))?;
                    let target = numeric::ln_rat(&qmforms::field::rat_int(432), prec)
                        .div(&qmforms::field::real::pi(prec).mul_i64(2));
                    println!("target ln(432)/(2 pi) = {target}");
                    for s in samples {
                        println!(
                            "tau = {}: estimate {} (deviation {})",
                            rat_to_string(&s.tau),
                            s.estimate,
                            s.deviation
                        );
                    }
                }
                PeriodsCommand::Boundary { emit, samples } => {
                    if emit != "csv" {
                        bail!("only --emit csv is supported");
                    }
                    let pts =
                        numeric::boundary_points(*samples, prec).map_err(|e| anyhow!("{e}"))?;
                    println!("segment,re,im");
                    for p in pts {
                        println!("{},{},{}", p.segment, p.z.re, p.z.im);
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Print a rational series, honoring --json and the optional disk cache.
/// Cache entries are the canonical JSON form; a hit is reprinted byte for
/// byte, so repeated invocations are bit-identical.
fn print_series(cli: &Cli, key: &str, series: &PuiseuxSeries<Rat>) -> Result<()> {
    let json = match &cli.cache_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .with_context(|| format!("creating cache dir {}", dir.display()))?;
            let path = dir.join(format!("{key}.series"));
            if path.exists() {
                std::fs::read_to_string(&path)
                    .with_context(|| format!("reading cache entry {}", path.display()))?
            } else {
                let fresh = series.to_json();
                std::fs::write(&path, &fresh)
                    .with_context(|| format!("writing cache entry {}", path.display()))?;
                fresh
            }
        }
        None => series.to_json(),
    };
    if cli.json {
        println!("{json}");
    } else {
        let parsed =
            PuiseuxSeries::from_json(&json).map_err(|e| anyhow!("corrupt cache entry: {e}"))?;
        println!("{}", parsed.pretty());
    }
    Ok(())
}

fn parse_complex(input: &str, prec: u32) -> Result<BigComplex> {
    let (re, im) = match input.split_once(',') {
        Some((r, i)) => (r, i),
        None => (input, "0"),
    };
    let re = rat_from_str(re).map_err(|e| anyhow!("bad real part: {e}"))?;
    let im = rat_from_str(im).map_err(|e| anyhow!("bad imaginary part: {e}"))?;
    Ok(BigComplex::from_rat_pair(&re, &im, prec))
}
