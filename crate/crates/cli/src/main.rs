use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;

use cyquartic::certify::{certify_params, certify_poly, certify_z};
use cyquartic::corpus::{corpus_check, CorpusEntry};
use cyquartic::gras::{
    further_family_a, further_family_b, fz_presented, gras_polynomial, x3y4_family, GrasParams,
};
use cyquartic::poly::ExactPoly;
use cyquartic::search::{sweep, x_check, x_check_even, xy_constraint_search, SweepBounds};

#[derive(Parser)]
#[command(
    name = "cyquartic",
    version,
    about = "Cyclic quartic families, certificates and searches"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    /// f_z, presented with integer coefficients (indexed by z)
    Fz,
    /// a = z^2 + 2 (indexed by z)
    A,
    /// x = y = 1, z = 4v + 2 (indexed by v)
    B,
    /// x = 3, y = 4, z = 3125v - 1020
    X3y4One,
    /// x = 3, y = 4, z = 3125v + 1020
    X3y4Two,
    /// x = 3, y = 4, z = 3125v - 1265
    X3y4Three,
    /// x = 3, y = 4, z = 3125v + 1265
    X3y4Four,
}

#[derive(Subcommand)]
enum Command {
    /// Emit family members, one JSON object per line
    Family {
        #[arg(long, value_enum, default_value = "fz")]
        family: Family,
        /// Family index (z or v); repeatable
        #[arg(long = "z", visible_alias = "v", allow_hyphen_values = true)]
        index: Vec<BigInt>,
        /// Start of an inclusive index range
        #[arg(long, allow_hyphen_values = true, requires = "to")]
        from: Option<BigInt>,
        /// End of an inclusive index range
        #[arg(long, allow_hyphen_values = true, requires = "from")]
        to: Option<BigInt>,
    },
    /// Certify one f_z member, parameter tuple, or polynomial
    #[command(group(ArgGroup::new("input").required(true).args(["z", "params", "poly"])))]
    Certify {
        #[arg(long, allow_hyphen_values = true)]
        z: Option<BigInt>,
        /// a,b,g,x,y,z,t,chi
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Monic quartic, constant term first: c0,c1,c2,c3,1
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
    },
    /// Sweep the parameter box for solutions of Gras' system
    Search {
        #[arg(long, default_value_t = 30)]
        a_max: u64,
        #[arg(long, default_value_t = 30)]
        b_max: u64,
        #[arg(long, default_value_t = 5)]
        x_max: u64,
        #[arg(long, default_value_t = 2500)]
        g_max: u64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true, value_parser = parse_chi)]
        chi: i8,
        /// Shard count
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: u64,
        /// JSON Lines sink (default stdout)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use the full box a <= 500, b <= 20000, x <= 200, g <= 10^6
        #[arg(long)]
        long: bool,
    },
    /// Solve g^2 +- 4 = m c^2 for g <= g_max
    XySearch {
        #[arg(long)]
        c: BigInt,
        #[arg(long)]
        g_max: u64,
    },
    /// Quadratic-residue test for odd x, bounded probe for 4 | x
    #[command(group(ArgGroup::new("xs").required(true).args(["x", "from"])))]
    XCheck {
        /// Value of x; repeatable
        #[arg(long)]
        x: Vec<BigInt>,
        /// Start of an inclusive range; odd x >= 3 are tested, and 4 | x with --even
        #[arg(long, requires = "to")]
        from: Option<BigInt>,
        #[arg(long, requires = "from")]
        to: Option<BigInt>,
        /// Include multiples of 4 in a range
        #[arg(long)]
        even: bool,
    },
    /// Check the known-fields corpus
    Corpus {
        #[arg(long)]
        file: PathBuf,
    },
}

fn parse_chi(s: &str) -> Result<i8, String> {
    match s {
        "1" | "+1" => Ok(1),
        "-1" => Ok(-1),
        _ => Err(format!("chi must be 1 or -1, got {s}")),
    }
}

#[derive(Serialize)]
struct FamilyRecord {
    family: &'static str,
    index: String,
    #[serde(flatten)]
    params: Option<ParamsRecord>,
    poly: String,
}

#[derive(Serialize)]
struct ParamsRecord {
    a: String,
    b: String,
    g: String,
    m: String,
    x: String,
    y: String,
    z: String,
    t: Option<String>,
    chi: i8,
}

impl From<&GrasParams> for ParamsRecord {
    fn from(p: &GrasParams) -> Self {
        ParamsRecord {
            a: p.a.to_string(),
            b: p.b.to_string(),
            g: p.g.to_string(),
            m: p.m.to_string(),
            x: p.x.to_string(),
            y: p.y.to_string(),
            z: p.z.to_string(),
            t: p.t.as_ref().map(ToString::to_string),
            chi: p.chi,
        }
    }
}

#[derive(Serialize)]
struct XyRecord {
    g: String,
    m: String,
    sign: &'static str,
    conductor_shaped: bool,
}

#[derive(Serialize)]
struct XCheckRecord {
    x: String,
    test: &'static str,
    result: bool,
}

fn emit<W: Write, T: Serialize>(out: &mut W, value: &T) -> anyhow::Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

fn indices(list: &[BigInt], from: &Option<BigInt>, to: &Option<BigInt>) -> Vec<BigInt> {
    let mut out = list.to_vec();
    if let (Some(lo), Some(hi)) = (from, to) {
        let mut k = lo.clone();
        while &k <= hi {
            out.push(k.clone());
            k += 1;
        }
    }
    out
}

fn family_record(family: Family, k: &BigInt) -> anyhow::Result<FamilyRecord> {
    let (name, params) = match family {
        Family::Fz => {
            return Ok(FamilyRecord {
                family: "fz",
                index: k.to_string(),
                params: None,
                poly: fz_presented(k).to_string(),
            })
        }
        Family::A => ("a", further_family_a(k)?),
        Family::B => ("b", further_family_b(k)?),
        Family::X3y4One => ("x3y4-one", x3y4_family(1, k)?),
        Family::X3y4Two => ("x3y4-two", x3y4_family(2, k)?),
        Family::X3y4Three => ("x3y4-three", x3y4_family(3, k)?),
        Family::X3y4Four => ("x3y4-four", x3y4_family(4, k)?),
    };
    Ok(FamilyRecord {
        family: name,
        index: k.to_string(),
        poly: gras_polynomial(&params)?.to_string(),
        params: Some(ParamsRecord::from(&params)),
    })
}

fn parse_params(text: &str) -> anyhow::Result<GrasParams> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 8 {
        bail!(
            "--params expects a,b,g,x,y,z,t,chi (8 values), got {}",
            parts.len()
        );
    }
    let n = |i: usize| -> anyhow::Result<BigInt> {
        parts[i]
            .parse()
            .with_context(|| format!("bad integer '{}' in --params", parts[i]))
    };
    let chi = parse_chi(parts[7]).map_err(|e| anyhow!(e))?;
    Ok(GrasParams::new(n(0)?, n(1)?, n(2)?, n(3)?, n(4)?, n(5)?, chi)?.with_t(n(6)?))
}

/// Failure that should end the process with the given exit code.
struct Exit(u8);

fn run(command: Command) -> anyhow::Result<Option<Exit>> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Family {
            family,
            index,
            from,
            to,
        } => {
            let ks = indices(&index, &from, &to);
            if ks.is_empty() {
                bail!("no family index given; use --z/--v or --from/--to");
            }
            for k in ks {
                emit(&mut out, &family_record(family, &k)?)?;
            }
        }
        Command::Certify { z, params, poly } => {
            let cert = if let Some(z) = z {
                certify_z(&z)?
            } else if let Some(p) = params {
                certify_params(&parse_params(&p)?)?
            } else {
                let text = poly.expect("clap enforces one input");
                certify_poly(&ExactPoly::parse(&text)?)?
            };
            emit(&mut out, &cert)?;
        }
        Command::Search {
            a_max,
            b_max,
            x_max,
            g_max,
            chi,
            jobs,
            out: path,
            long,
        } => {
            let bounds = if long {
                SweepBounds::FULL
            } else {
                SweepBounds::new(a_max, b_max, x_max, g_max)?
            };
            eprintln!(
                "search: a <= {}, b <= {}, x <= {}, g <= {}, chi = {chi}, jobs = {jobs}",
                bounds.a_max, bounds.b_max, bounds.x_max, bounds.g_max
            );
            let result = sweep(&bounds, chi, jobs as usize)?;
            let mut sink: Box<dyn Write> = match path {
                Some(p) => Box::new(BufWriter::new(
                    File::create(&p).with_context(|| format!("cannot create {}", p.display()))?,
                )),
                None => Box::new(&mut out),
            };
            for hit in &result.hits {
                emit(&mut sink, &hit.certificate)?;
            }
            sink.flush()?;
            let s = &result.stats;
            eprintln!(
                "search: triples {}, first-equation solutions {}, system solutions {}, no valid t {}, rejected {}, duplicates {}, hits {}",
                s.triples, s.first_eq_solutions, s.system_solutions, s.no_valid_t, s.rejected, s.duplicates, s.hits
            );
        }
        Command::XySearch { c, g_max } => {
            if c < BigInt::from(2) {
                bail!("--c must be at least 2");
            }
            for h in xy_constraint_search(&c, g_max)? {
                let sign = if h.sign > 0 { "+" } else { "-" };
                emit(
                    &mut out,
                    &XyRecord {
                        g: h.g.to_string(),
                        m: h.m.to_string(),
                        sign,
                        conductor_shaped: h.conductor_shaped,
                    },
                )?;
            }
        }
        Command::XCheck { x, from, to, even } => {
            let four = BigInt::from(4);
            let mut xs = x.clone();
            if let (Some(lo), Some(hi)) = (&from, &to) {
                let mut k = lo.clone();
                while &k <= hi {
                    let odd = &k % 2 != BigInt::from(0) && k >= BigInt::from(3);
                    let quad = even && &k % &four == BigInt::from(0) && k > BigInt::from(0);
                    if odd || quad {
                        xs.push(k.clone());
                    }
                    k += 1;
                }
            }
            for k in xs {
                let record = if &k % 2 != BigInt::from(0) {
                    XCheckRecord {
                        x: k.to_string(),
                        test: "odd",
                        result: x_check(&k)?,
                    }
                } else {
                    XCheckRecord {
                        x: k.to_string(),
                        test: "even-probe",
                        result: x_check_even(&k)?,
                    }
                };
                emit(&mut out, &record)?;
            }
        }
        Command::Corpus { file } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("cannot read {}", file.display()))?;
            let entries: Vec<CorpusEntry> = serde_json::from_str(&text)
                .with_context(|| format!("malformed corpus {}", file.display()))?;
            let report = corpus_check(&entries);
            emit(&mut out, &report)?;
            out.flush()?;
            for e in report.entries.iter().filter(|e| !e.mismatches.is_empty()) {
                for m in &e.mismatches {
                    eprintln!("corpus: {}: {m}", e.label);
                }
            }
            eprintln!(
                "corpus: {} passed, {} failed, {} informational",
                report.passed, report.failed, report.informational
            );
            if !report.is_ok() {
                return Ok(Some(Exit(1)));
            }
        }
    }
    out.flush()?;
    Ok(None)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(None) => ExitCode::SUCCESS,
        Ok(Some(Exit(code))) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
