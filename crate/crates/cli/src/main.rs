//! Command-line front end: every computation of the library plus the
//! verification suites, with exact-rational and float output in CSV or JSON.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use pseudowalk::combin::rat_signum;
use pseudowalk::continuum::{
    bold_i_coeffs, fourier_x_ab, fourier_x_b_plus, lambda_potential, lf_tau_ab, lf_tau_b,
};
use pseudowalk::error::Error;
use pseudowalk::exit::{boundary_cells, dist_s_ab, exit_h_all, lauricella_solve, ruin_probs};
use pseudowalk::overshoot::{dist_s_b_plus, h_plus, power_moment};
use pseudowalk::rational::{rat, rat_string, Int, Rat, ValueTable};
use pseudowalk::spectral::{g_double, g_k, roots};
use pseudowalk::verify::{report_json, run_suite_with};
use pseudowalk::walk::{walk_cdf_closed, walk_pmf_closed, WalkParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Parser)]
#[command(
    name = "pseudowalk",
    about = "Exact and numerical functionals of the signed walk driven by the discrete N-iterated Laplacian",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Decimal digits for float rendering (1..=17).
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Signed n-step law of the walk.
    Pmf {
        #[arg(long = "N")]
        order: u32,
        /// Step weight as an exact rational "p/q" (decimals are rejected).
        #[arg(long, value_parser = parse_rational)]
        c: Rat,
        /// Number of steps (0 gives the unit mass at the origin).
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Cumulative masses of the n-step law.
    Cdf {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, value_parser = parse_rational)]
        c: Rat,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Roots of the characteristic polynomial at a given z.
    Roots {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, value_parser = parse_rational)]
        c: Rat,
        #[arg(long)]
        z: f64,
    },
    /// Generating functions: G_ell(z), or the double generating function at
    /// zeta when --zeta is given.
    Genfun {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, value_parser = parse_rational)]
        c: Rat,
        #[arg(long)]
        z: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
        ell: i64,
        /// Complex argument "re,im" for the double generating function.
        #[arg(long, value_parser = parse_complex)]
        zeta: Option<Complex64>,
    },
    /// Law of the overshoot position over threshold b, or the joint
    /// generating function values when --z is given.
    Overshoot {
        #[arg(long = "N")]
        order: u32,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long, value_parser = parse_rational)]
        c: Option<Rat>,
        #[arg(long, allow_negative_numbers = true)]
        ell: Option<i64>,
    },
    /// Exit law on the interval (a,b), or the joint generating function
    /// values when --z is given.
    Exit {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        b: i64,
        #[arg(long)]
        z: Option<f64>,
        #[arg(long, value_parser = parse_rational)]
        c: Option<Rat>,
    },
    /// Ruin pseudo-probabilities of the interval (a,b).
    Ruin {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        b: i64,
    },
    /// Power pseudo-moments of the overshoot (threshold b) or of the exit
    /// position (interval (a,b), when --a is given).
    Moments {
        #[arg(long = "N")]
        order: u32,
        #[arg(long)]
        b: i64,
        #[arg(long, allow_negative_numbers = true)]
        a: Option<i64>,
        #[arg(long)]
        n: u32,
    },
    /// Solve the discrete boundary-value problem on (a,b) for boundary data
    /// phi given on the 2N boundary cells in ascending order.
    Lauricella {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        b: i64,
        /// Comma-separated rationals; defaults to phi(i) = i.
        #[arg(long, value_delimiter = ',', value_parser = parse_rational)]
        phi: Option<Vec<Rat>>,
    },
    /// Closed-form continuum (pseudo-Brownian) quantities.
    Continuum {
        #[command(subcommand)]
        target: ContinuumTarget,
    },
    /// Run the cross-check suites and emit a JSON/CSV report.
    Verify {
        /// One of walk, overshoot, exit, appendix, continuum, all.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Seed for the randomized cases.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncation horizon for the oracle series.
        #[arg(long, default_value_t = pseudowalk::verify::DEFAULT_HORIZON)]
        horizon: usize,
    },
}

#[derive(Subcommand)]
enum ContinuumTarget {
    /// Resolvent density at x.
    Potential {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, value_parser = parse_rational)]
        c: Rat,
        #[arg(long)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        x: f64,
    },
    /// Laplace-Fourier transform of the single-threshold overshoot couple.
    Taub {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, value_parser = parse_rational)]
        c: Rat,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        mu: f64,
    },
    /// Laplace-Fourier transform of the two-sided exit couple.
    Tauab {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, value_parser = parse_rational)]
        c: Rat,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        mu: f64,
    },
    /// Boundary functionals and Fourier transforms of the exit position.
    Xab {
        #[arg(long = "N")]
        order: u32,
        #[arg(long, allow_negative_numbers = true)]
        a: f64,
        #[arg(long)]
        b: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        mu: f64,
    },
}

fn parse_rational(s: &str) -> Result<Rat, String> {
    if s.contains('.') {
        return Err(format!(
            "'{s}' looks like a decimal; pass an exact rational such as 1/8"
        ));
    }
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int = |t: &str| -> Result<Int, String> {
        t.trim()
            .parse::<Int>()
            .map_err(|_| format!("'{t}' is not an integer"))
    };
    match parts.as_slice() {
        [num] => Ok(Rat::from_integer(parse_int(num)?)),
        [num, den] => {
            let den = parse_int(den)?;
            if den == Int::from(0) {
                return Err("denominator must be nonzero".into());
            }
            Ok(Rat::new(parse_int(num)?, den))
        }
        _ => Err(format!("'{s}' is not a rational; expected p or p/q")),
    }
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("'{s}' is not a complex number; expected re,im"));
    }
    let re = parts[0]
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("bad real part '{}'", parts[0]))?;
    let im = parts[1]
        .trim()
        .parse::<f64>()
        .map_err(|_| format!("bad imaginary part '{}'", parts[1]))?;
    Ok(Complex64::new(re, im))
}

/// What a subcommand produced: the rendered body plus any verification
/// failures (which drive the exit code).
struct Output {
    body: String,
    failures: Vec<String>,
}

impl Output {
    fn plain(body: String) -> Self {
        Output {
            body,
            failures: Vec::new(),
        }
    }
}

/// Output assembly: stable key order, floats at the requested precision,
/// rationals always exact.
struct Printer {
    format: Format,
    precision: usize,
}

impl Printer {
    fn float(&self, v: f64) -> String {
        format!("{:.*e}", self.precision, v)
    }

    fn complex_json(&self, v: Complex64) -> String {
        format!("[{},{}]", self.float(v.re), self.float(v.im))
    }

    fn rational_rows(&self, key: &str, rows: &[(i64, Rat)]) -> String {
        match self.format {
            Format::Csv => {
                let mut out = format!("{key},numerator,denominator\n");
                for (k, v) in rows {
                    let _ = writeln!(out, "{},{},{}", k, v.numer(), v.denom());
                }
                out
            }
            Format::Json => {
                let body: Vec<String> = rows
                    .iter()
                    .map(|(k, v)| {
                        format!(
                            "{{\"{key}\":{},\"num\":\"{}\",\"den\":\"{}\"}}",
                            k,
                            v.numer(),
                            v.denom()
                        )
                    })
                    .collect();
                format!("[{}]\n", body.join(","))
            }
        }
    }

    fn complex_rows(&self, key: &str, rows: &[(i64, Complex64)]) -> String {
        match self.format {
            Format::Csv => {
                let mut out = format!("{key},re,im\n");
                for (k, v) in rows {
                    let _ = writeln!(out, "{},{},{}", k, self.float(v.re), self.float(v.im));
                }
                out
            }
            Format::Json => {
                let body: Vec<String> = rows
                    .iter()
                    .map(|(k, v)| {
                        format!("{{\"{key}\":{},\"value\":{}}}", k, self.complex_json(*v))
                    })
                    .collect();
                format!("[{}]\n", body.join(","))
            }
        }
    }

    fn single_complex(&self, v: Complex64) -> String {
        match self.format {
            Format::Csv => format!("re,im\n{},{}\n", self.float(v.re), self.float(v.im)),
            Format::Json => format!("{{\"value\":{}}}\n", self.complex_json(v)),
        }
    }
}

fn run(cli: Cli) -> Result<Output, Error> {
    let printer = Printer {
        format: cli.format,
        precision: cli.precision,
    };
    if !(1..=17).contains(&cli.precision) {
        return Err(Error::domain(format!(
            "precision must lie in [1, 17], got {}",
            cli.precision
        )));
    }
    let out = match cli.command {
        Command::Pmf { order, c, n } => {
            let params = WalkParams::new(order, c)?;
            let law = walk_pmf_closed(&params, n);
            let rows: Vec<(i64, Rat)> = law.iter().map(|(k, v)| (*k, v.clone())).collect();
            Output::plain(printer.rational_rows("k", &rows))
        }
        Command::Cdf { order, c, n } => {
            let params = WalkParams::new(order, c)?;
            let reach = i64::from(order) * i64::from(n);
            let rows: Vec<(i64, Rat)> = (-reach..=reach)
                .map(|k| (k, walk_cdf_closed(&params, n, k).expect("k within range")))
                .collect();
            Output::plain(printer.rational_rows("k", &rows))
        }
        Command::Roots { order, c, z } => {
            let params = WalkParams::new(order, c)?;
            let rs = roots(&params, z)?;
            let body = match cli.format {
                Format::Csv => {
                    let mut out = String::from("j,u_re,u_im,v_re,v_im\n");
                    for j in 0..rs.u.len() {
                        let _ = writeln!(
                            out,
                            "{},{},{},{},{}",
                            j + 1,
                            printer.float(rs.u[j].re),
                            printer.float(rs.u[j].im),
                            printer.float(rs.v[j].re),
                            printer.float(rs.v[j].im)
                        );
                    }
                    out
                }
                Format::Json => {
                    let us: Vec<String> = rs.u.iter().map(|u| printer.complex_json(*u)).collect();
                    let vs: Vec<String> = rs.v.iter().map(|v| printer.complex_json(*v)).collect();
                    format!(
                        "{{\"z\":{},\"w\":{},\"u\":[{}],\"v\":[{}]}}\n",
                        printer.float(rs.z),
                        printer.float(rs.w),
                        us.join(","),
                        vs.join(",")
                    )
                }
            };
            Output::plain(body)
        }
        Command::Genfun {
            order,
            c,
            z,
            ell,
            zeta,
        } => {
            let params = WalkParams::new(order, c)?;
            let value = match zeta {
                Some(zeta) => g_double(&params, zeta, z)?,
                None => g_k(&params, z, ell)?,
            };
            Output::plain(printer.single_complex(value))
        }
        Command::Overshoot {
            order,
            b,
            z,
            c,
            ell,
        } => match z {
            None => {
                let law = dist_s_b_plus(order, b)?;
                let rows: Vec<(i64, Rat)> = law
                    .support()
                    .filter(|cell| ell.is_none_or(|e| e == *cell))
                    .map(|cell| (cell, law.mass(cell)))
                    .collect();
                Output::plain(printer.rational_rows("ell", &rows))
            }
            Some(z) => {
                let c = c.ok_or_else(|| {
                    Error::domain("--c is required for generating-function values")
                })?;
                let params = WalkParams::new(order, c)?;
                let mut rows = Vec::new();
                for cell in (b..b + i64::from(order)).filter(|cell| ell.is_none_or(|e| e == *cell))
                {
                    rows.push((cell, h_plus(&params, b, cell, z)?));
                }
                Output::plain(printer.complex_rows("ell", &rows))
            }
        },
        Command::Exit { order, a, b, z, c } => match z {
            None => {
                let law = dist_s_ab(order, a, b)?;
                let rows: Vec<(i64, Rat)> = law
                    .cells()
                    .into_iter()
                    .map(|cell| (cell, law.mass(cell)))
                    .collect();
                Output::plain(printer.rational_rows("ell", &rows))
            }
            Some(z) => {
                let c = c.ok_or_else(|| {
                    Error::domain("--c is required for generating-function values")
                })?;
                let params = WalkParams::new(order, c)?;
                let rows = exit_h_all(&params, a, b, z)?;
                Output::plain(printer.complex_rows("ell", &rows))
            }
        },
        Command::Ruin { order, a, b } => {
            let (down, up) = ruin_probs(order, a, b)?;
            let body = match cli.format {
                Format::Csv => format!(
                    "quantity,numerator,denominator\np_down,{},{}\np_up,{},{}\n",
                    down.numer(),
                    down.denom(),
                    up.numer(),
                    up.denom()
                ),
                Format::Json => format!(
                    "{{\"p_down\":\"{}\",\"p_up\":\"{}\"}}\n",
                    rat_string(&down),
                    rat_string(&up)
                ),
            };
            Output::plain(body)
        }
        Command::Moments { order, b, a, n } => {
            let value = match a {
                Some(a) => pseudowalk::exit::moment_s_ab(order, a, b, n)?,
                None => power_moment(order, b, n)?,
            };
            let body = match cli.format {
                Format::Csv => format!(
                    "numerator,denominator\n{},{}\n",
                    value.numer(),
                    value.denom()
                ),
                Format::Json => format!("{{\"moment\":\"{}\"}}\n", rat_string(&value)),
            };
            Output::plain(body)
        }
        Command::Lauricella { order, a, b, phi } => {
            let cells = boundary_cells(order, a, b);
            let table: ValueTable = match phi {
                None => cells.iter().map(|&cell| (cell, rat(cell))).collect(),
                Some(values) => {
                    if values.len() != cells.len() {
                        return Err(Error::domain(format!(
                            "phi needs {} values for the boundary cells {:?}, got {}",
                            cells.len(),
                            cells,
                            values.len()
                        )));
                    }
                    cells.iter().copied().zip(values).collect()
                }
            };
            let sol = lauricella_solve(order, a, b, &table)?;
            let rows: Vec<(i64, Rat)> = sol.values.into_iter().collect();
            Output::plain(printer.rational_rows("x", &rows))
        }
        Command::Continuum { target } => {
            let body = match target {
                ContinuumTarget::Potential {
                    order,
                    c,
                    lambda,
                    x,
                } => printer.single_complex(lambda_potential(
                    order,
                    rational_to_f64(&c)?,
                    lambda,
                    x,
                )?),
                ContinuumTarget::Taub {
                    order,
                    c,
                    b,
                    lambda,
                    mu,
                } => printer.single_complex(lf_tau_b(order, rational_to_f64(&c)?, b, lambda, mu)?),
                ContinuumTarget::Tauab {
                    order,
                    c,
                    a,
                    b,
                    lambda,
                    mu,
                } => printer.single_complex(lf_tau_ab(
                    order,
                    rational_to_f64(&c)?,
                    a,
                    b,
                    lambda,
                    mu,
                )?),
                ContinuumTarget::Xab { order, a, b, mu } => {
                    let (lower, upper) = bold_i_coeffs(order, a, b)?;
                    let fourier = fourier_x_ab(order, a, b, mu)?;
                    let single = fourier_x_b_plus(order, b, mu)?;
                    match cli.format {
                        Format::Csv => {
                            let mut out = String::from("side,j,coefficient\n");
                            for (j, v) in lower.iter().enumerate() {
                                let _ = writeln!(out, "lower,{},{}", j, printer.float(*v));
                            }
                            for (j, v) in upper.iter().enumerate() {
                                let _ = writeln!(out, "upper,{},{}", j, printer.float(*v));
                            }
                            let _ = writeln!(out, "fourier_re,,{}", printer.float(fourier.re));
                            let _ = writeln!(out, "fourier_im,,{}", printer.float(fourier.im));
                            let _ = writeln!(
                                out,
                                "fourier_overshoot_re,,{}",
                                printer.float(single.re)
                            );
                            let _ = writeln!(
                                out,
                                "fourier_overshoot_im,,{}",
                                printer.float(single.im)
                            );
                            out
                        }
                        Format::Json => {
                            let pack = |v: &[f64]| {
                                v.iter()
                                    .map(|x| printer.float(*x))
                                    .collect::<Vec<_>>()
                                    .join(",")
                            };
                            format!(
                                "{{\"lower\":[{}],\"upper\":[{}],\"fourier\":{},\"fourier_overshoot\":{}}}\n",
                                pack(&lower),
                                pack(&upper),
                                printer.complex_json(fourier),
                                printer.complex_json(single)
                            )
                        }
                    }
                }
            };
            Output::plain(body)
        }
        Command::Verify {
            suite,
            seed,
            horizon,
        } => {
            let reports = run_suite_with(&suite, seed, horizon)?;
            let failures: Vec<String> = reports
                .iter()
                .filter(|r| !r.pass)
                .map(|r| format!("{} / {} (max_error {:e})", r.suite, r.case, r.max_error))
                .collect();
            let body = match cli.format {
                Format::Json => format!("{}\n", report_json(&reports)),
                Format::Csv => {
                    let mut out = String::from("suite,case,status,max_error\n");
                    for r in &reports {
                        let _ = writeln!(
                            out,
                            "{},{},{},{:e}",
                            r.suite,
                            r.case,
                            r.status(),
                            r.max_error
                        );
                    }
                    out
                }
            };
            Output { body, failures }
        }
    };
    Ok(out)
}

fn rational_to_f64(c: &Rat) -> Result<f64, Error> {
    if rat_signum(c) <= 0 {
        return Err(Error::domain("c must be a positive rational"));
    }
    Ok(pseudowalk::rational::rat_to_f64(c))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.body);
            if out.failures.is_empty() {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failures:");
                for f in &out.failures {
                    eprintln!("  {f}");
                }
                ExitCode::from(2)
            }
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(1)
        }
    }
}
