use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;

use slice_core::compress::{alexander_dual_big, BigIdeal, CompressionMode, Narrowed};
use slice_core::decomposition::{for_each_component, msm_with_stats, IrreducibleComponent};
use slice_core::idp::{codimension, solve_linear_idp, IdpOptions, IdpResult, LinearObjective};
use slice_core::io::{format_ideal, format_rows, parse_ideal, parse_vector};
use slice_core::random::{random_ideal, RandomIdealSpec};
use slice_core::{EngineOptions, Error, Exponent, Monomial, Result, StrategyId};

#[derive(Parser)]
#[command(name = "slice", version, about = "Maximal standard monomials, irreducible decompositions and Alexander duals of monomial ideals")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Split selection strategy
    #[arg(long, global = true, default_value = "median", value_parser = parse_strategy)]
    split: StrategyId,
    /// Computation engine
    #[arg(long, global = true, value_enum, default_value_t = EngineKind::Slice)]
    engine: EngineKind,
    /// Worker threads for the slice engine
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for randomized split strategies
    #[arg(long = "split-seed", global = true, default_value_t = 0)]
    split_seed: u64,
    /// Turn off bound pruning in `optimize`
    #[arg(long, global = true)]
    no_bound: bool,
    /// Print slice counters to standard error
    #[arg(long, global = true)]
    stats: bool,
    /// Always compress exponents
    #[arg(long, global = true, conflicts_with = "no_compress")]
    compress: bool,
    /// Never compress exponents
    #[arg(long, global = true)]
    no_compress: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineKind {
    Slice,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal standard monomials
    Msm { file: PathBuf },
    /// Irreducible decomposition; each row is a component, 0 marks an absent variable
    Decom { file: PathBuf },
    /// Alexander dual with respect to a point (default: lcm of the generators)
    Alexdual {
        file: PathBuf,
        /// Comma-separated exponent vector
        point: Option<String>,
    },
    /// Least number of generators of an irreducible component
    Codim { file: PathBuf },
    /// Maximize r . d over the maximal standard monomials d
    Optimize {
        file: PathBuf,
        /// Comma-separated objective vector; entries may be fractions such as 1/2
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Random minimal generating set
    Genrandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        gens: usize,
        #[arg(long = "max-exp")]
        max_exp: Exponent,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "max-attempts")]
        max_attempts: Option<u64>,
    },
}

fn parse_strategy(s: &str) -> std::result::Result<StrategyId, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

impl Global {
    fn engine_options(&self) -> EngineOptions {
        EngineOptions {
            strategy: self.split,
            seed: self.split_seed,
            threads: self.threads.max(1),
            check_invariants: false,
            ..Default::default()
        }
    }

    fn compression(&self) -> CompressionMode {
        if self.compress {
            CompressionMode::Always
        } else if self.no_compress {
            CompressionMode::Never
        } else {
            CompressionMode::Auto
        }
    }
}

fn read_ideal(path: &PathBuf) -> Result<BigIdeal> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("reading {}: {e}", path.display())))?
    };
    let parsed = parse_ideal(&text)?;
    if parsed.redundant_rows > 0 {
        eprintln!("warning: input was not minimal; dropped {} redundant row(s)", parsed.redundant_rows);
    }
    Ok(parsed.ideal)
}

fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())
        .and_then(|_| out.flush())
        .map_err(|e| Error::Usage(format!("writing output: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let g = &cli.global;
    let options = g.engine_options();
    match &cli.command {
        Command::Msm { file } => {
            let ideal = read_ideal(file)?;
            let narrowed = Narrowed::new(&ideal, g.compression())?;
            let found = match g.engine {
                EngineKind::Slice => {
                    let (found, stats) = msm_with_stats(narrowed.ideal(), &options);
                    if g.stats {
                        eprintln!("{stats}");
                    }
                    found
                }
                EngineKind::Brute => brute::msm(narrowed.ideal())?,
            };
            emit(&format_rows(ideal.n(), found.iter().map(|d| narrowed.standard_to_big(d))))?;
        }
        Command::Decom { file } => {
            let ideal = read_ideal(file)?;
            let narrowed = Narrowed::new(&ideal, g.compression())?;
            let mut comps = match g.engine {
                EngineKind::Slice => {
                    let mut comps = Vec::new();
                    let stats = for_each_component(narrowed.ideal(), &options, |c| comps.push(c))?;
                    if g.stats {
                        eprintln!("{stats}");
                    }
                    comps
                }
                EngineKind::Brute => brute::decomposition(narrowed.ideal())?,
            };
            // Rank compression preserves the order, so sorting before
            // decompressing gives sorted output.
            comps.sort_unstable();
            let rows = comps.iter().map(|c| narrowed.component_to_big(c).into_exponents());
            emit(&format_rows(ideal.n(), rows))?;
        }
        Command::Alexdual { file, point } => {
            let ideal = read_ideal(file)?;
            let point = point.as_deref().map(parse_vector::<BigUint>).transpose()?;
            let dual = match g.engine {
                EngineKind::Slice => alexander_dual_big(&ideal, point.as_deref(), g.compression(), &options)?,
                EngineKind::Brute => brute::alexander_dual(&ideal, point.as_deref(), g.compression())?,
            };
            emit(&format_ideal(&dual))?;
        }
        Command::Codim { file } => {
            let ideal = read_ideal(file)?;
            let narrowed = Narrowed::new(&ideal, CompressionMode::Always)?;
            let codim = match g.engine {
                EngineKind::Slice => codimension(narrowed.ideal(), &IdpOptions { engine: options, use_bound: !g.no_bound })?,
                EngineKind::Brute => brute::codimension(narrowed.ideal())?,
            };
            emit(&format!("{codim}\n"))?;
        }
        Command::Optimize { file, r } => {
            let ideal = read_ideal(file)?;
            let weights = parse_vector::<BigRational>(r)?;
            if weights.len() != ideal.n() {
                return Err(Error::Usage(format!("--r has {} entries but the ideal has {} variables", weights.len(), ideal.n())));
            }
            let narrowed = Narrowed::new(&ideal, g.compression())?;
            let objective = match narrowed.compression() {
                Some(f) => LinearObjective::with_compression(weights.clone(), f),
                None => LinearObjective::new(weights.clone()),
            };
            let result = match g.engine {
                EngineKind::Slice => {
                    let idp = IdpOptions { engine: options, use_bound: !g.no_bound };
                    let (result, stats) = solve_linear_idp(narrowed.ideal(), &objective, &idp);
                    if g.stats {
                        eprintln!("{}\neliminations: {}", stats.engine, stats.eliminations);
                    }
                    result
                }
                EngineKind::Brute => brute::optimize(narrowed.ideal(), &objective)?,
            };
            match result {
                IdpResult::Optimal { value, witness } => {
                    let row: Vec<String> = narrowed.standard_to_big(&witness).iter().map(|e| e.to_string()).collect();
                    emit(&format!("value {value}\nwitness {}\n", row.join(" ")))?;
                }
                IdpResult::Infeasible => {
                    emit("infeasible\n")?;
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::Genrandom { n, gens, max_exp, seed, max_attempts } => {
            let mut spec = RandomIdealSpec::new(*n, *gens, *max_exp, *seed);
            if let Some(a) = max_attempts {
                spec.max_attempts = *a;
            }
            let ideal = random_ideal(&spec)?;
            emit(&format_rows(ideal.n(), ideal.generators()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(feature = "oracle")]
mod brute {
    use super::*;
    use slice_core::idp::SliceObjective;
    use slice_core::oracle::{brute_force_decomposition, brute_force_msm_of};
    use slice_core::MonomialIdeal;

    pub fn msm(ideal: &MonomialIdeal) -> Result<Vec<Monomial>> {
        brute_force_msm_of(ideal)
    }

    pub fn decomposition(ideal: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
        brute_force_decomposition(ideal)
    }

    pub fn alexander_dual(ideal: &BigIdeal, point: Option<&[BigUint]>, mode: CompressionMode) -> Result<BigIdeal> {
        let n = ideal.n();
        let lcm = ideal.lcm();
        let a = match point {
            Some(a) if a.len() != n => return Err(Error::DimensionMismatch { expected: n, found: a.len() }),
            Some(a) if a.iter().zip(&lcm).any(|(p, l)| p < l) => {
                return Err(Error::Usage("the point must be divisible by the lcm of the generators".into()))
            }
            Some(a) => a.to_vec(),
            None => lcm,
        };
        let narrowed = Narrowed::new(ideal, mode)?;
        let gens = brute_force_decomposition(narrowed.ideal())?
            .iter()
            .map(|c| {
                narrowed
                    .component_to_big(c)
                    .exponents()
                    .iter()
                    .zip(&a)
                    .map(|(e, ai)| if e.is_zero() { BigUint::zero() } else { ai + 1u32 - e })
                    .collect()
            })
            .collect();
        BigIdeal::from_generators(n, gens)
    }

    pub fn codimension(ideal: &MonomialIdeal) -> Result<usize> {
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(brute_force_decomposition(ideal)?
            .iter()
            .map(|c| c.generator_count())
            .min()
            .unwrap_or(0))
    }

    pub fn optimize(ideal: &MonomialIdeal, objective: &LinearObjective) -> Result<IdpResult> {
        let mut best: Option<(BigRational, Monomial)> = None;
        for d in brute_force_msm_of(ideal)? {
            let v = SliceObjective::value(objective, &d);
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, d));
            }
        }
        Ok(match best {
            Some((value, witness)) => IdpResult::Optimal { value, witness },
            None => IdpResult::Infeasible,
        })
    }
}

#[cfg(not(feature = "oracle"))]
mod brute {
    use super::*;
    use slice_core::MonomialIdeal;

    fn missing<T>() -> Result<T> {
        Err(Error::Usage("this build has no brute-force engine (enable the `oracle` feature)".into()))
    }

    pub fn msm(_: &MonomialIdeal) -> Result<Vec<Monomial>> {
        missing()
    }

    pub fn decomposition(_: &MonomialIdeal) -> Result<Vec<IrreducibleComponent>> {
        missing()
    }

    pub fn alexander_dual(_: &BigIdeal, _: Option<&[BigUint]>, _: CompressionMode) -> Result<BigIdeal> {
        missing()
    }

    pub fn codimension(_: &MonomialIdeal) -> Result<usize> {
        missing()
    }

    pub fn optimize(_: &MonomialIdeal, _: &LinearObjective) -> Result<IdpResult> {
        missing()
    }
}
