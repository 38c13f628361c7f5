mod args;
mod verify;

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{
    CertArgs, Cli, Command, Format, IdealArgs, MonomialArgs, RadicalArgs, StrategyArg, SweepArgs,
};
use wedgelab::components::{
    enumerate_minimal_primes_with, lci_verdict, radical_generators, radical_monomial_scheme,
    wedge_dimension, MonomialHypersurface, StaircasePrime, WedgeReport,
};
use wedgelab::multiplicity::{conjecture_sweep, Certificate, Certifier, Outcome, Strategy};
use wedgelab::scheme::{build_jet_ideal, build_wedge_ideal, AffineIdealInput};
use wedgelab::{Error, Execution};

/// Exit statuses.
const OK: u8 = 0;
const INPUT_ERROR: u8 = 1;
const INCONCLUSIVE: u8 = 2;
const BUDGET: u8 = 3;
const VERIFY_FAILED: u8 = 4;

enum Failure {
    Lib(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = Result<(String, u8), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { INPUT_ERROR } else { OK });
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(INPUT_ERROR);
    }
    match run(cli.command) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if matches!(e, Error::Budget(_)) {
                BUDGET
            } else {
                INPUT_ERROR
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

/// `WEDGELAB_THREADS` caps the worker pool.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("WEDGELAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("WEDGELAB_THREADS must be a positive integer, got `{raw}`"))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::BuildWedge(a) => build_wedge(a),
        Command::BuildJet(a) => build_jet(a),
        Command::MinimalPrimes(a) => minimal_primes(a),
        Command::Radical(a) => radical(a),
        Command::Dimension(a) => dimension(a),
        Command::LciVerdict(a) => verdict(a),
        Command::MultCert(a) => mult_cert(a),
        Command::Sweep(a) => sweep(a),
        Command::Verify(a) => {
            let (out, ok) = verify::run(a.suite, a.seed, a.budget)?;
            Ok((out, if ok { OK } else { VERIFY_FAILED }))
        }
    }
}

fn json_out(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&v).expect("json values serialize");
    s.push('\n');
    s
}

fn reject_tsv(format: Format) -> Result<(), Failure> {
    if format == Format::Tsv {
        return Err(Failure::Usage("this command has no tsv output".into()));
    }
    Ok(())
}

fn read_input(a: &IdealArgs) -> Result<AffineIdealInput, Failure> {
    let lines: Vec<String> = match &a.file {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
            .filter(|l| !l.is_empty())
            .collect(),
        None => a.polys.clone(),
    };
    if lines.is_empty() {
        return Err(Failure::Usage("no generators given".into()));
    }
    Ok(AffineIdealInput::parse(&lines, a.vars.as_deref())?)
}

fn build_wedge(a: IdealArgs) -> CmdResult {
    reject_tsv(a.format)?;
    let input = read_input(&a)?;
    let w = build_wedge_ideal(&input, a.order)?;
    let out = match a.format {
        Format::Json => {
            let gens: Vec<Value> = w
                .indexed()
                .iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(&(k, i, j), g)| json!({"source": k, "i": i, "j": j, "g": g.to_string()}))
                .collect();
            json_out(json!({
                "m": a.order,
                "variables": w.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "generators": gens,
            }))
        }
        _ => lines(w.generators().iter()),
    };
    Ok((out, OK))
}

fn build_jet(a: IdealArgs) -> CmdResult {
    reject_tsv(a.format)?;
    let input = read_input(&a)?;
    let j = build_jet_ideal(&input, a.order)?;
    let out = match a.format {
        Format::Json => {
            let gens: Vec<Value> = j
                .indexed()
                .iter()
                .filter(|(_, g)| !g.is_zero())
                .map(|(&(k, n), g)| json!({"source": k, "n": n, "g": g.to_string()}))
                .collect();
            json_out(json!({
                "m": a.order,
                "variables": j.variables().iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                "generators": gens,
            }))
        }
        _ => lines(j.generators().iter()),
    };
    Ok((out, OK))
}

fn lines<T: std::fmt::Display>(items: impl Iterator<Item = T>) -> String {
    items.fold(String::new(), |mut s, x| {
        let _ = writeln!(s, "{x}");
        s
    })
}

fn hypersurface(a: &MonomialArgs) -> Result<MonomialHypersurface, Failure> {
    let n = a.ambient.unwrap_or(a.exponents.len());
    Ok(MonomialHypersurface::new(n, a.exponents.clone())?)
}

fn report_json(hyp: &MonomialHypersurface, m: u32) -> Result<String, Failure> {
    let report = WedgeReport::build(hyp, m, Execution::default())?;
    Ok(json_out(
        serde_json::to_value(report).expect("report serializes"),
    ))
}

fn minimal_primes(a: MonomialArgs) -> CmdResult {
    reject_tsv(a.format)?;
    let hyp = hypersurface(&a)?;
    if a.format == Format::Json {
        return Ok((report_json(&hyp, a.order)?, OK));
    }
    let mut out = String::new();
    for p in enumerate_minimal_primes_with(&hyp, a.order, Execution::default()) {
        let gens: Vec<String> = p
            .expand(&hyp)
            .vars()
            .iter()
            .map(|v| v.to_string())
            .collect();
        let _ = writeln!(
            out,
            "{}\theight {}\t{}",
            p.label(),
            p.height(),
            gens.join(" ")
        );
    }
    Ok((out, OK))
}

fn dimension(a: MonomialArgs) -> CmdResult {
    reject_tsv(a.format)?;
    let hyp = hypersurface(&a)?;
    if a.format == Format::Json {
        return Ok((report_json(&hyp, a.order)?, OK));
    }
    let ambient = wedge_dimension(hyp.ambient(), a.order);
    let mut out = format!("t\theight\tdim\t(ambient {ambient})\n");
    for p in enumerate_minimal_primes_with(&hyp, a.order, Execution::default()) {
        let _ = writeln!(
            out,
            "{}\t{}\t{}",
            p.label(),
            p.height(),
            ambient - p.height()
        );
    }
    Ok((out, OK))
}

fn verdict(a: MonomialArgs) -> CmdResult {
    reject_tsv(a.format)?;
    let hyp = hypersurface(&a)?;
    let v = lci_verdict(&hyp, a.order);
    let out = match a.format {
        Format::Json => json_out(serde_json::to_value(&v).expect("verdict serializes")),
        _ => format!(
            "dim {}\nexpected_dim {}\npure_dimensional {}\nirreducible {}\ndimension_test {}\n",
            v.dim, v.expected_dim, v.pure_dimensional, v.irreducible, v.dimension_test
        ),
    };
    Ok((out, OK))
}

fn parse_gens(text: &str) -> Result<Vec<Vec<u32>>, Failure> {
    text.split(';')
        .map(|part| {
            part.split(',')
                .map(|x| {
                    x.trim().parse::<u32>().map_err(|_| {
                        Failure::Usage(format!("bad exponent `{}` in --gens", x.trim()))
                    })
                })
                .collect()
        })
        .collect()
}

fn radical(a: RadicalArgs) -> CmdResult {
    reject_tsv(a.format)?;
    let ideal = match (&a.exponents, &a.gens) {
        (Some(e), _) => {
            radical_generators(&MonomialHypersurface::in_own_space(e.clone())?, a.order)
        }
        (None, Some(g)) => radical_monomial_scheme(&parse_gens(g)?, a.order)?,
        (None, None) => unreachable!("clap requires one of the inputs"),
    };
    let gens: Vec<String> = ideal
        .generators()
        .iter()
        .rev()
        .map(|g| g.to_string())
        .collect();
    let out = match a.format {
        Format::Json => json_out(json!({"m": a.order, "radical_gens": gens})),
        _ => lines(gens.iter()),
    };
    Ok((out, OK))
}

fn strategy(kind: StrategyArg, r: &args::RandomArgs) -> Strategy {
    match kind {
        StrategyArg::Paper => Strategy::Paper,
        StrategyArg::Random => Strategy::Randomized {
            q: r.q,
            trials: r.trials,
            seed: r.seed,
        },
    }
}

fn certificate_json(c: &Certificate) -> Value {
    let evaluation: BTreeMap<String, String> = c
        .evaluation
        .iter()
        .map(|(v, x)| (v.to_string(), x.to_string()))
        .collect();
    let mut v = json!({
        "t": c.prime.t(),
        "strategy": c.strategy.name(),
        "selected_rows": c.selected_rows.iter().map(|(i, j)| [i, j]).collect::<Vec<_>>(),
        "columns": c.columns.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        "evaluation": evaluation,
        "verdict": c.verdict.to_string(),
        "seed": c.seed(),
    });
    match &c.outcome {
        Outcome::Determinant(d) => v["determinant"] = json!(d.to_string()),
        Outcome::Rank {
            rank,
            height,
            q,
            trials_used,
        } => {
            v["rank"] = json!(rank);
            v["height"] = json!(height);
            v["q"] = json!(q);
            v["trials_used"] = json!(trials_used);
        }
    }
    v
}

fn outcome_text(c: &Certificate) -> String {
    match &c.outcome {
        Outcome::Determinant(d) => format!("det {d}"),
        Outcome::Rank {
            rank, height, q, ..
        } => format!("rank {rank}/{height} mod {q}"),
    }
}

fn mult_cert(a: CertArgs) -> CmdResult {
    reject_tsv(a.format)?;
    let hyp = MonomialHypersurface::in_own_space(a.exponents.clone())?;
    let certifier = Certifier::new(&hyp, a.order)?;
    let primes = match &a.tuple {
        Some(t) => vec![StaircasePrime::new(a.order, t.clone())?],
        None => enumerate_minimal_primes_with(&hyp, a.order, Execution::default()),
    };
    let base = strategy(a.strategy, &a.random);
    let certs = Execution::default()
        .map(&primes, |p| certifier.certify(p, base.for_prime(p)))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let all = certs.iter().all(Certificate::is_proven);
    let out = match a.format {
        Format::Json => json_out(Value::Array(certs.iter().map(certificate_json).collect())),
        _ => {
            let mut s = String::new();
            for c in &certs {
                let seed = c.seed().map_or_else(|| "-".into(), |s| s.to_string());
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\tseed {}",
                    c.prime.label(),
                    c.strategy.name(),
                    c.verdict,
                    outcome_text(c),
                    seed
                );
            }
            s
        }
    };
    Ok((out, if all { OK } else { INCONCLUSIVE }))
}

fn sweep(a: SweepArgs) -> CmdResult {
    let report = conjecture_sweep(
        a.rank,
        a.max_order,
        strategy(a.strategy, &a.random),
        Execution::default(),
    )?;
    let out = match a.format {
        Format::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|r| {
                    json!({
                        "m": r.m,
                        "t": r.prime.t(),
                        "strategy": r.strategy,
                        "verdict": r.verdict.to_string(),
                        "seed": r.seed,
                    })
                })
                .collect();
            json_out(Value::Array(rows))
        }
        _ => report.to_tsv(),
    };
    Ok((
        out,
        if report.all_proven() {
            OK
        } else {
            INCONCLUSIVE
        },
    ))
}
