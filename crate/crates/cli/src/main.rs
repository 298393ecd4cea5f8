//! `liemod`: exact Lie subalgebra computations from JSON inputs.
//!
//! Every subcommand prints one JSON report (sorted keys, rationals as
//! `"p/q"` strings) to stdout or to `--out`.  Exit status: 0 success or
//! verdict true, 1 verdict false, 2 input or usage error, 3 unsupported
//! input.  On exit 2 and 3 only a JSON error object is written, to stderr.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use liemod::algebraicity::{algebraic_hull, classify_line_sl2, orbit_dimensions};
use liemod::bouquet::{assemble_sl3_slice, validate_pattern, Bouquet};
use liemod::error::Error;
use liemod::families::{flatness_proxy, rank_scan, raw_fiber_dimensions, semisimple_class_scan};
use liemod::grassmann::{LimitPoint, SubspacePoint};
use liemod::integration::{group_axiom_sample_check, integrate_algebraic, tangent_space_at_identity};
use liemod::json;
use liemod::lie::builtins;
use liemod::lie::{jordan_decompose, levi_semisimple_class, LieAlgebra, Subalgebra};

#[derive(Parser, Debug)]
#[command(name = "liemod", version, about = "Exact Lie subalgebra computations over the rationals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AlgebraArg {
    /// Built-in name (sl2, sl3, gl3, ...) or path to an algebra JSON file.
    #[arg(long)]
    algebra: String,
}

#[derive(Args, Debug)]
struct SpanArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    /// JSON file with {"rows": [...]} or {"matrices": [...]}.
    #[arg(long)]
    span: PathBuf,
}

#[derive(Args, Debug)]
struct FamilyArgs {
    #[command(flatten)]
    algebra: AlgebraArg,
    /// Family JSON file: {"path", "samples", "limits"}.
    #[arg(long)]
    family: PathBuf,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Whether a span is closed under the bracket.
    CheckSubalgebra(SpanArgs),
    /// Algebraic hull of the subalgebra generated by a span.
    Hull(SpanArgs),
    /// Killing Gram matrix; with --span also the Killing kernel of the span.
    Killing {
        #[command(flatten)]
        algebra: AlgebraArg,
        #[arg(long)]
        span: Option<PathBuf>,
    },
    /// Semisimple class, radical and Levi complement.
    Levi(SpanArgs),
    /// Rank of a solvable subalgebra.
    Rank(SpanArgs),
    /// Jordan decomposition of every spanning element.
    Jordan(SpanArgs),
    /// Limit of the path of a family at a parameter value or `inf`.
    Limit {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value = "inf")]
        at: String,
    },
    /// Rank semicontinuity scan of a family.
    ScanRank(FamilyArgs),
    /// Levi class semicontinuity scan of a family.
    ScanLevi(FamilyArgs),
    /// Fiber-dimension flatness proxy of a family.
    Flatness(FamilyArgs),
    /// Integrate an algebraic subalgebra to a parametrized group.
    Integrate(SpanArgs),
    /// Integrate, then check the group axioms on seeded samples.
    GroupCheck {
        #[command(flatten)]
        span: SpanArgs,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Orbit dimensions of the first spanning element.
    OrbitDim(SpanArgs),
    /// Orbit type of a line in sl2.
    ClassifySl2 {
        #[arg(long, default_value = "sl2")]
        algebra: String,
        #[arg(long)]
        span: PathBuf,
    },
    /// Bouquet of one-dimensional subalgebras of sl3 up to a height.
    Sl3Slice {
        #[arg(long, default_value_t = 1)]
        height: u32,
    },
    /// Check the gluing axioms of a bouquet file, or of the sl3 slice.
    ValidateBouquet {
        /// Bouquet JSON as written by `sl3-slice`; defaults to the slice.
        #[arg(long)]
        bouquet: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        height: u32,
        #[arg(long, default_value_t = 8)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A report and whether its verdict holds.
struct Outcome {
    report: Value,
    verdict: bool,
}

impl Outcome {
    fn ok(report: Value) -> Self {
        Outcome { report, verdict: true }
    }
}

type CliResult<T> = Result<T, Error>;

fn read_json(path: &Path) -> CliResult<Value> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{} is not valid JSON: {e}", path.display())))
}

fn load_algebra(arg: &str) -> CliResult<Arc<LieAlgebra>> {
    let path = Path::new(arg);
    if path.exists() {
        return Ok(Arc::new(json::parse_algebra(&read_json(path)?)?));
    }
    builtins::by_name(arg)
}

fn load_span(args: &SpanArgs) -> CliResult<(Arc<LieAlgebra>, Vec<Vec<liemod::Rational>>)> {
    let l = load_algebra(&args.algebra.algebra)?;
    let rows = json::parse_span(&l, &read_json(&args.span)?)?;
    if rows.is_empty() {
        return Err(Error::Input("the span is empty".into()));
    }
    Ok((l, rows))
}

fn load_subalgebra(args: &SpanArgs) -> CliResult<Subalgebra> {
    let (l, rows) = load_span(args)?;
    Subalgebra::span(l, &rows)
}

fn load_family(args: &FamilyArgs) -> CliResult<liemod::families::SubalgebraFamily> {
    let l = load_algebra(&args.algebra.algebra)?;
    json::parse_family(&l, &read_json(&args.family)?)
}

fn run(cmd: &Command) -> CliResult<Outcome> {
    match cmd {
        Command::CheckSubalgebra(args) => {
            let (l, rows) = load_span(args)?;
            let p = SubspacePoint::from_rows(&rows, l.dim())?;
            let closed = p.is_lie_subalgebra(&l)?;
            Ok(Outcome {
                report: json!({ "dim": p.k(), "point": json::point(&p), "is_subalgebra": closed }),
                verdict: closed,
            })
        }
        Command::Hull(args) => {
            let (l, rows) = load_span(args)?;
            let r = liemod::algebraicity::hull_from_generators(&l, &rows)?;
            Ok(Outcome { verdict: r.is_algebraic, report: json::hull(&r) })
        }
        Command::Killing { algebra, span } => {
            let l = load_algebra(&algebra.algebra)?;
            let mut report = json!({
                "gram": json::matrix(l.killing_gram()),
                "nondegenerate": l.killing_nondegenerate(),
            });
            if let Some(span) = span {
                let rows = json::parse_span(&l, &read_json(span)?)?;
                let h = Subalgebra::span(l.clone(), &rows)?;
                report["kernel"] = json::subalgebra(&h.unipotent_radical_via_killing()?);
            }
            Ok(Outcome::ok(report))
        }
        Command::Levi(args) => Ok(Outcome::ok(json::levi(&levi_semisimple_class(&load_subalgebra(args)?)?))),
        Command::Rank(args) => {
            let h = load_subalgebra(args)?;
            Ok(Outcome::ok(json!({ "dim": h.dim(), "rank": h.rank_of_solvable()? })))
        }
        Command::Jordan(args) => {
            let (l, rows) = load_span(args)?;
            l.require_realization_size()?;
            let parts = rows
                .iter()
                .map(|r| {
                    let pair = jordan_decompose(&l.realize(r))?;
                    Ok(json!({
                        "element": json::matrix(&l.realize(r)),
                        "semisimple": json::matrix(&pair.semisimple),
                        "nilpotent": json::matrix(&pair.nilpotent),
                    }))
                })
                .collect::<CliResult<Vec<Value>>>()?;
            Ok(Outcome::ok(json!({ "parts": parts })))
        }
        Command::Limit { family, at } => {
            let l = load_algebra(&family.algebra.algebra)?;
            let v = read_json(&family.family)?;
            let path =
                json::parse_path(&l, v.get("path").ok_or_else(|| Error::Input("missing field \"path\"".into()))?)?;
            let at: LimitPoint = at.parse()?;
            let p = path.limit(&at)?;
            let closed = p.is_lie_subalgebra(&l)?;
            let algebraic = closed && algebraic_hull(&p.to_subalgebra(&l)?)?.is_algebraic;
            Ok(Outcome {
                report: json!({ "at": json::limit_point(&at), "limit": json::point(&p), "is_subalgebra": closed, "is_algebraic": algebraic }),
                verdict: closed,
            })
        }
        Command::ScanRank(args) => {
            let r = rank_scan(&load_family(args)?)?;
            Ok(Outcome { verdict: r.verdict, report: json::semicontinuity_report(&r) })
        }
        Command::ScanLevi(args) => {
            let r = semisimple_class_scan(&load_family(args)?)?;
            Ok(Outcome { verdict: r.verdict, report: json::semicontinuity_report(&r) })
        }
        Command::Flatness(args) => {
            let f = load_family(args)?;
            let flat = flatness_proxy(&f);
            let raw = raw_fiber_dimensions(f.path(), f.samples(), f.limits());
            Ok(Outcome { verdict: flat, report: json!({ "flat": flat, "k": f.k(), "raw_fiber_dims": raw }) })
        }
        Command::Integrate(args) => {
            let h = load_subalgebra(args)?;
            match integrate_algebraic(&h) {
                Ok(g) => {
                    let tangent = tangent_space_at_identity(&g)?;
                    let round_trip = tangent == h.point();
                    Ok(Outcome {
                        verdict: round_trip,
                        report: json!({ "integrable": true, "group": json::group(&g), "tangent_matches": round_trip }),
                    })
                }
                Err(Error::NotIntegrable { witness }) => {
                    Ok(Outcome { verdict: false, report: json!({ "integrable": false, "witness": witness }) })
                }
                Err(e) => Err(e),
            }
        }
        Command::GroupCheck { span, trials, seed } => {
            if *trials == 0 {
                return Err(Error::Input("--trials must be positive".into()));
            }
            let g = integrate_algebraic(&load_subalgebra(span)?)?;
            let r = group_axiom_sample_check(&g, *trials, *seed)?;
            Ok(Outcome { verdict: r.passed, report: json::group_check(&r) })
        }
        Command::OrbitDim(args) => {
            let (l, rows) = load_span(args)?;
            l.require_realization_size()?;
            let d = orbit_dimensions(&rows[0], &l)?;
            Ok(Outcome::ok(json!({
                "element": json::vector(&rows[0]),
                "affine": d.affine,
                "projective": d.projective,
            })))
        }
        Command::ClassifySl2 { algebra, span } => {
            let l = load_algebra(algebra)?;
            let rows = json::parse_span(&l, &read_json(span)?)?;
            if rows.len() != 1 {
                return Err(Error::Input(format!("expected one spanning element, got {}", rows.len())));
            }
            let p = SubspacePoint::from_rows(&rows, l.dim())?;
            let orbit = classify_line_sl2(&p, &l)?;
            Ok(Outcome::ok(json!({ "line": json::point(&p), "orbit": orbit.label() })))
        }
        Command::Sl3Slice { height } => Ok(Outcome::ok(json::bouquet(&assemble_sl3_slice(*height)?))),
        Command::ValidateBouquet { bouquet, height, samples, seed } => {
            if *samples == 0 {
                return Err(Error::Input("--samples must be positive".into()));
            }
            let b: Bouquet = match bouquet {
                Some(path) => Bouquet::new(json::parse_pattern(&read_json(path)?)?)?,
                None => assemble_sl3_slice(*height)?,
            };
            let r = validate_pattern(b.pattern(), *samples, *seed);
            Ok(Outcome { verdict: r.passed(), report: json::validation_report(&r) })
        }
    }
}

trait RealizationCheck {
    fn require_realization_size(&self) -> CliResult<usize>;
}

impl RealizationCheck for LieAlgebra {
    fn require_realization_size(&self) -> CliResult<usize> {
        self.realization_size().ok_or_else(|| Error::Input(format!("{} has no matrix realization", self.name())))
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Input(_) => "input",
        Error::DimensionMismatch { .. } => "dimension-mismatch",
        Error::RankDeficient { .. } => "rank-deficient",
        Error::InvalidStructure(_) => "invalid-structure",
        Error::NotClosed(_) => "not-closed",
        Error::Precondition(_) => "precondition",
        Error::DegenerateParameter { .. } => "degenerate-parameter",
        Error::Unsupported(_) => "unsupported",
        Error::NotIntegrable { .. } => "not-integrable",
        Error::NonFlatIntersection(_) => "non-flat-intersection",
        Error::InterpolationFailed(_) => "interpolation-failed",
        Error::IllPosed(_) => "ill-posed",
        Error::Membership(_) => "membership",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => e.exit(),
        Err(e) => {
            let text = e.render().to_string();
            let head = text.split("\n\n").next().unwrap_or_default();
            let message = head.trim_start_matches("error: ").split_whitespace().collect::<Vec<_>>().join(" ");
            eprint!("{}", json::to_string(&json!({ "error": "usage", "message": message })));
            return ExitCode::from(2);
        }
    };
    match run(&cli.command) {
        Ok(outcome) => {
            let text = json::to_string(&outcome.report);
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("cannot write {}: {e}", path.display())),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            if let Err(msg) = written {
                eprint!("{}", json::to_string(&json!({ "error": "io", "message": msg })));
                return ExitCode::from(2);
            }
            ExitCode::from(if outcome.verdict { 0 } else { 1 })
        }
        Err(e) => {
            eprint!("{}", json::to_string(&json!({ "error": error_kind(&e), "message": e.to_string() })));
            ExitCode::from(if e.is_unsupported() { 3 } else { 2 })
        }
    }
}
