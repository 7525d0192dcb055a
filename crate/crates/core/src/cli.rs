//! Command-line front end used by the `spinamp` binary.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::compounding::{
    clebsch_gordan, compound_amplitude, compound_amplitude_oracle, generalized_cg,
};
use crate::entanglement::{chsh, chsh_scan, correlation_values, sample_outcomes};
use crate::error::Result;
use crate::matrix::{representation_3d, representation_4d, scalar_representation, OutcomeValues};
use crate::probabilities::joint_probabilities;
use crate::types::{CompoundState, Direction, JointOutcome, TotalSpin, TripletProjection};
use crate::verify;

#[derive(Debug, Parser)]
#[command(
    name = "spinamp",
    version,
    about = "Amplitudes, probabilities and correlations of two compounded spin-1/2 systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compound amplitudes Ψ for the four joint outcomes.
    Amplitude {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        detectors: DetectorArgs,
        /// Evaluate through the expansion chain instead of the closed forms.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Joint and marginal probabilities.
    Prob {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        detectors: DetectorArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Expectation value of an observable in every available representation.
    Expect {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        detectors: DetectorArgs,
        /// Outcome values r(++),r(+-),r(-+),r(--); defaults to the correlation observable.
        #[arg(long, value_parser = four_numbers, allow_hyphen_values = true)]
        r: Option<[f64; 4]>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Generalized Clebsch-Gordan coefficients along the axis (θ, φ).
    Gcg {
        /// Total spin; both when omitted.
        #[arg(long)]
        s: Option<u8>,
        /// Projection; every valid one when omitted.
        #[arg(long = "M", allow_negative_numbers = true)]
        m: Option<i8>,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        theta: f64,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        phi: f64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// CHSH value at given in-plane settings, or the best value on a coplanar grid.
    Chsh {
        #[command(flatten)]
        state: StateArgs,
        /// In-plane detector angles a1,a2,b1,b2.
        #[arg(long, value_parser = four_numbers, allow_hyphen_values = true)]
        angles: Option<[f64; 4]>,
        /// Grid points per setting when scanning.
        #[arg(long, default_value_t = 32)]
        steps: usize,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Seeded Monte Carlo sample of joint outcomes.
    Sample {
        #[command(flatten)]
        state: StateArgs,
        #[command(flatten)]
        detectors: DetectorArgs,
        #[arg(long, default_value_t = 10_000)]
        n: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Run every randomized invariant suite.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random draws per suite.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Output format; a text table when omitted.
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

#[derive(Debug, Args)]
struct StateArgs {
    /// Total spin, 0 or 1.
    #[arg(long, default_value_t = 0)]
    s: u8,
    /// Projection along the state axis.
    #[arg(long = "M", default_value_t = 0, allow_negative_numbers = true)]
    m: i8,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi: f64,
}

#[derive(Debug, Args)]
struct DetectorArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi1: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    theta2: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    phi2: f64,
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Read every angle in degrees.
    #[arg(long)]
    degrees: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

fn four_numbers(s: &str) -> std::result::Result<[f64; 4], String> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    v.try_into()
        .map_err(|v: Vec<f64>| format!("expected 4 comma-separated numbers, got {}", v.len()))
}

/// Exit code and text produced by one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.exit_code() {
                0 => Outcome::ok(text),
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => out,
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn angle(v: f64, degrees: bool) -> f64 {
    if degrees {
        v.to_radians()
    } else {
        v
    }
}

impl StateArgs {
    fn build(&self, degrees: bool) -> Result<CompoundState> {
        let axis = Direction::new(angle(self.theta, degrees), angle(self.phi, degrees))?;
        CompoundState::new(
            TotalSpin::from_value(self.s)?,
            TripletProjection::from_value(self.m)?,
            axis,
        )
    }
}

impl DetectorArgs {
    fn build(&self, degrees: bool) -> Result<(Direction, Direction)> {
        Ok((
            Direction::new(angle(self.theta1, degrees), angle(self.phi1, degrees))?,
            Direction::new(angle(self.theta2, degrees), angle(self.phi2, degrees))?,
        ))
    }
}

fn state_json(s: CompoundState) -> Value {
    json!({ "s": s.spin().value(), "M": s.projection().value(), "axis": s.axis() })
}

fn detectors_json(c1: Direction, c2: Direction) -> Value {
    json!({ "c1": c1, "c2": c2 })
}

fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values are finite");
    s.push('\n');
    s
}

/// Shortest round-trip formatting, matching the JSON output.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn render_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

fn execute(command: Command) -> Result<Outcome> {
    match command {
        Command::Amplitude {
            state,
            detectors,
            oracle,
            common,
        } => {
            let st = state.build(common.degrees)?;
            let (c1, c2) = detectors.build(common.degrees)?;
            let amps = JointOutcome::ALL.map(|o| {
                if oracle {
                    compound_amplitude_oracle(st, o, c1, c2)
                } else {
                    compound_amplitude(st, o, c1, c2)
                }
            });
            Ok(Outcome::ok(match common.format {
                Format::Json => {
                    let map: serde_json::Map<_, _> = JointOutcome::ALL
                        .iter()
                        .zip(&amps)
                        .map(|(o, a)| (o.label().to_string(), json!([a.re, a.im])))
                        .collect();
                    render_json(&json!({
                        "state": state_json(st),
                        "detectors": detectors_json(c1, c2),
                        "method": if oracle { "expansion_chain" } else { "closed_form" },
                        "amplitudes": map,
                    }))
                }
                Format::Csv => render_csv(
                    &["outcome", "re", "im", "abs"],
                    &JointOutcome::ALL
                        .iter()
                        .zip(&amps)
                        .map(|(o, a)| vec![o.label().into(), num(a.re), num(a.im), num(a.norm())])
                        .collect::<Vec<_>>(),
                ),
            }))
        }
        Command::Prob {
            state,
            detectors,
            common,
        } => {
            let st = state.build(common.degrees)?;
            let (c1, c2) = detectors.build(common.degrees)?;
            let q = joint_probabilities(st, c1, c2)?;
            Ok(Outcome::ok(match common.format {
                Format::Json => render_json(&json!({
                    "state": state_json(st),
                    "detectors": detectors_json(c1, c2),
                    "probabilities": q,
                })),
                Format::Csv => render_csv(
                    &["outcome", "probability"],
                    &q.iter()
                        .map(|(o, p)| vec![o.label().into(), num(p)])
                        .collect::<Vec<_>>(),
                ),
            }))
        }
        Command::Expect {
            state,
            detectors,
            r,
            common,
        } => {
            let st = state.build(common.degrees)?;
            let (c1, c2) = detectors.build(common.degrees)?;
            let r = match r {
                Some(v) => OutcomeValues::new(v)?,
                None => correlation_values(),
            };
            let direct = joint_probabilities(st, c1, c2)?.weighted_sum(r.as_array());
            let four = representation_4d(st, &r, c1, c2).expectation()?;
            let three = representation_3d(st, &r, c1, c2)
                .map(|rep| rep.expectation())
                .transpose()?;
            let scalar = scalar_representation(st, &r, c1, c2).expectation()?;
            Ok(Outcome::ok(match common.format {
                Format::Json => render_json(&json!({
                    "state": state_json(st),
                    "detectors": detectors_json(c1, c2),
                    "r": r.as_array(),
                    "expectation": four,
                    "representations": {
                        "dim4": four,
                        "dim3": three,
                        "scalar": scalar,
                        "weighted_probabilities": direct,
                    },
                })),
                Format::Csv => {
                    let mut rows = vec![vec!["dim4".to_string(), num(four)]];
                    if let Some(t) = three {
                        rows.push(vec!["dim3".into(), num(t)]);
                    }
                    rows.push(vec!["scalar".into(), num(scalar)]);
                    rows.push(vec!["weighted_probabilities".into(), num(direct)]);
                    render_csv(&["representation", "expectation"], &rows)
                }
            }))
        }
        Command::Gcg {
            s,
            m,
            theta,
            phi,
            common,
        } => {
            let a = Direction::new(angle(theta, common.degrees), angle(phi, common.degrees))?;
            let spins = match s {
                Some(s) => vec![TotalSpin::from_value(s)?],
                None => vec![TotalSpin::Singlet, TotalSpin::Triplet],
            };
            let mut rows = Vec::new();
            for spin in spins {
                let projections = match (m, spin) {
                    (Some(m), _) => {
                        let p = TripletProjection::from_value(m)?;
                        spin.check_projection(p)?;
                        vec![p]
                    }
                    (None, TotalSpin::Singlet) => vec![TripletProjection::Zero],
                    (None, TotalSpin::Triplet) => TripletProjection::ALL.to_vec(),
                };
                for p in projections {
                    for o in JointOutcome::ALL {
                        let g = generalized_cg(spin.value(), p.value(), o.m1, o.m2, a)?;
                        let cg = clebsch_gordan(spin.value(), p.value(), o.m1, o.m2)?;
                        rows.push((spin.value(), p.value(), o, g, cg));
                    }
                }
            }
            Ok(Outcome::ok(match common.format {
                Format::Json => render_json(&json!({
                    "axis": a,
                    "entries": rows.iter().map(|(s, m, o, g, cg)| json!({
                        "s": s, "M": m, "outcome": o.label(),
                        "value": [g.re, g.im], "abs": g.norm(), "standard": cg,
                    })).collect::<Vec<_>>(),
                })),
                Format::Csv => render_csv(
                    &["s", "M", "outcome", "re", "im", "abs", "standard"],
                    &rows
                        .iter()
                        .map(|(s, m, o, g, cg)| {
                            vec![
                                s.to_string(),
                                m.to_string(),
                                o.label().into(),
                                num(g.re),
                                num(g.im),
                                num(g.norm()),
                                num(*cg),
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
            }))
        }
        Command::Chsh {
            state,
            angles,
            steps,
            common,
        } => {
            let st = state.build(common.degrees)?;
            let (value, settings, scanned) = match angles {
                Some(v) => {
                    let v = v.map(|x| angle(x, common.degrees));
                    let d = v
                        .iter()
                        .map(|&x| Direction::coplanar(x))
                        .collect::<Result<Vec<_>>>()?;
                    (chsh(st, d[0], d[1], d[2], d[3]), v, None)
                }
                None => {
                    let scan = chsh_scan(st, steps)?;
                    (scan.value, scan.settings, Some(steps))
                }
            };
            Ok(Outcome::ok(match common.format {
                Format::Json => render_json(&json!({
                    "state": state_json(st),
                    "chsh": value,
                    "abs": value.abs(),
                    "settings": { "a1": settings[0], "a2": settings[1], "b1": settings[2], "b2": settings[3] },
                    "grid_steps": scanned,
                })),
                Format::Csv => render_csv(
                    &["chsh", "a1", "a2", "b1", "b2"],
                    &[std::iter::once(value).chain(settings).map(num).collect()],
                ),
            }))
        }
        Command::Sample {
            state,
            detectors,
            n,
            seed,
            common,
        } => {
            let st = state.build(common.degrees)?;
            let (c1, c2) = detectors.build(common.degrees)?;
            let counts = sample_outcomes(st, c1, c2, n, seed)?;
            Ok(Outcome::ok(match common.format {
                Format::Json => render_json(&serde_json::to_value(&counts).expect("serializable")),
                Format::Csv => render_csv(
                    &[
                        "n",
                        "seed",
                        "rng",
                        "++",
                        "+-",
                        "-+",
                        "--",
                        "empirical_correlation",
                    ],
                    &[[
                        counts.n.to_string(),
                        counts.seed.to_string(),
                        counts.rng.to_string(),
                    ]
                    .into_iter()
                    .chain(counts.counts.iter().map(u64::to_string))
                    .chain(std::iter::once(num(counts.empirical_correlation)))
                    .collect()],
                ),
            }))
        }
        Command::Verify {
            seed,
            trials,
            format,
        } => {
            let reports = verify::run_all(seed, trials);
            let all = reports.iter().all(|r| r.passed);
            let stdout = match format {
                Some(Format::Json) => {
                    render_json(&json!({ "seed": seed, "passed": all, "suites": reports }))
                }
                Some(Format::Csv) => render_csv(
                    &["suite", "passed", "max_error", "tolerance", "trials"],
                    &reports
                        .iter()
                        .map(|r| {
                            vec![
                                r.name.into(),
                                r.passed.to_string(),
                                num(r.max_error),
                                num(r.tolerance),
                                r.trials.to_string(),
                            ]
                        })
                        .collect::<Vec<_>>(),
                ),
                None => {
                    let width = reports.iter().map(|r| r.name.len()).max().unwrap_or(0);
                    let mut s = String::new();
                    for r in &reports {
                        let _ = writeln!(
                            s,
                            "{:<4}  {:<width$}  max_error={:<10.3e} tol={:.0e} trials={}",
                            if r.passed { "PASS" } else { "FAIL" },
                            r.name,
                            r.max_error,
                            r.tolerance,
                            r.trials,
                        );
                    }
                    let failed = reports.iter().filter(|r| !r.passed).count();
                    let _ = writeln!(
                        s,
                        "{} suites, {} failed (seed {seed})",
                        reports.len(),
                        failed
                    );
                    s
                }
            };
            Ok(Outcome {
                code: if all { 0 } else { 1 },
                stdout,
                stderr: String::new(),
            })
        }
    }
}
