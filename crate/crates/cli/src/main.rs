use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use posetres::classical::{boolean_degree_map, scarf, sign_diagonal, subset_label, taylor};
use posetres::io::{
    hasse_dot, parse_ideal, parse_poset, write_poset, BettiJson, DimJson, IdealJson, LatticeJson, ParsedIdeal,
    ReportJson,
};
use posetres::resolution::comparison_square_check;
use posetres::verify::{betti_oracle, is_lattice_linear, is_scarf_ideal, verify_minimal, verify_resolution, LatticeLinearOptions};
use posetres::{
    build_sequence, homogenize, random, with_field, Error, Execution, Field, FieldSpec, LcmLattice, PosetSequence,
    Variant,
};

#[derive(Parser, Debug)]
#[command(name = "posetres", version, about = "Poset resolutions of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Ground field: `q` or `gf:<p>`.
    #[arg(long, global = true, default_value = "q", value_parser = parse_field)]
    field: FieldSpec,

    /// Family of interval complexes used for the sequence.
    #[arg(long, global = true, value_enum, default_value_t = VariantArg::Gamma)]
    variant: VariantArg,

    /// Write a JSON report to this path.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Write the Hasse diagram in Graphviz DOT format to this path.
    #[arg(long, global = true)]
    dot: Option<PathBuf>,

    /// Largest admissible number of minimal generators.
    #[arg(long, global = true, default_value_t = 22)]
    max_gens: usize,

    /// Seed for `selftest`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Run on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the LCM-lattice.
    Lattice { ideal: PathBuf },
    /// Build F(deg) over the LCM-lattice and print its ranks.
    Resolve { ideal: PathBuf },
    /// Multigraded Betti numbers from the Tor oracle.
    Betti { ideal: PathBuf },
    /// Decide lattice-linearity (exit 0 if true, 1 if false).
    CheckLatticeLinear { ideal: PathBuf },
    /// Build the Scarf complex and decide whether it resolves (exit 0/1).
    Scarf { ideal: PathBuf },
    /// Build the Taylor complex and check that it resolves.
    Taylor { ideal: PathBuf },
    /// Compare the delta and gamma sequences on the LCM-lattice.
    CompareVariants { ideal: PathBuf },
    /// Subdivide long Hasse edges of a poset file until it is ranked.
    RankComplete {
        poset: PathBuf,
        /// Output file (stdout if omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Randomized consistency checks.
    Selftest {
        #[arg(long, default_value_t = 20)]
        rounds: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Delta,
    Gamma,
    Both,
}

fn parse_field(s: &str) -> Result<FieldSpec, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failures mapped to exit codes.
enum Failure {
    Input(String),
    Cap(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::CapExceeded { .. } => Failure::Cap(e.to_string()),
            Error::Internal(_) | Error::Structural(_) => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

struct Ctx {
    field: FieldSpec,
    variant: VariantArg,
    json: Option<PathBuf>,
    dot: Option<PathBuf>,
    max_gens: usize,
    seed: u64,
    exec: Execution,
}

impl Ctx {
    fn primary(&self) -> Variant {
        match self.variant {
            VariantArg::Delta => Variant::Delta,
            _ => Variant::Gamma,
        }
    }

    fn report(&self, command: &str) -> ReportJson {
        let mut r = ReportJson::new(command, &self.field.to_string());
        r.variant = Some(
            match self.variant {
                VariantArg::Delta => "delta",
                VariantArg::Gamma => "gamma",
                VariantArg::Both => "both",
            }
            .to_string(),
        );
        r
    }

    fn write_json(&self, report: &ReportJson) -> Result<(), Failure> {
        if let Some(path) = &self.json {
            fs::write(path, report.to_json())
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }

    fn write_dot(&self, p: &posetres::FinitePoset) -> Result<(), Failure> {
        if let Some(path) = &self.dot {
            fs::write(path, hasse_dot(p))
                .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
        }
        Ok(())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_ideal(path: &Path) -> Result<ParsedIdeal, Failure> {
    let parsed = parse_ideal(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    for m in &parsed.removed {
        eprintln!("note: dropped non-minimal generator {}", parsed.ideal.render(m));
    }
    Ok(parsed)
}

fn lattice_json(l: &LcmLattice) -> LatticeJson {
    LatticeJson::new(l.poset(), l.degree().images())
}

fn dims_json<F: Field>(seq: &PosetSequence<F>, l: &LcmLattice) -> Vec<DimJson> {
    seq.dims()
        .into_iter()
        .map(|((i, a), dim)| DimJson {
            i,
            element: l.poset().label(a).to_string(),
            multidegree: l.monomial(a).clone(),
            dim,
        })
        .collect()
}

fn cmd_lattice(ctx: &Ctx, path: &Path) -> Outcome {
    let parsed = load_ideal(path)?;
    let l = LcmLattice::build(&parsed.ideal, ctx.max_gens)?;
    let p = l.poset();
    println!("LCM-lattice of {} ({} elements)", parsed.ideal, p.len());
    for &x in p.linear_extension() {
        let up: Vec<&str> = p.upper_covers(x).iter().map(|&y| p.label(y)).collect();
        println!("  {} (rank {}) < {}", p.label(x), p.rank(x), up.join(", "));
    }
    ctx.write_dot(p)?;
    let mut r = ctx.report("lattice");
    r.ideal = Some(IdealJson::new(&parsed));
    r.lattice = Some(lattice_json(&l));
    ctx.write_json(&r)?;
    Ok(true)
}

fn build_checked<F: Field>(ctx: &Ctx, f: &F, l: &LcmLattice) -> Result<PosetSequence<F>, Failure> {
    let seq = build_sequence(l.poset(), f, ctx.primary(), ctx.exec)?;
    if ctx.variant == VariantArg::Both {
        let other = build_sequence(l.poset(), f, Variant::Delta, ctx.exec)?;
        if other.dims() != seq.dims() {
            return Err(Failure::Internal("delta and gamma dimensions differ".into()));
        }
    }
    Ok(seq)
}

fn cmd_resolve<F: Field>(ctx: &Ctx, f: &F, path: &Path) -> Outcome {
    let parsed = load_ideal(path)?;
    let l = LcmLattice::build(&parsed.ideal, ctx.max_gens)?;
    let seq = build_checked(ctx, f, &l)?;
    for w in seq.warnings() {
        eprintln!("warning: {w}");
    }
    let c = homogenize(&seq, l.degree())?;
    let v = verify_resolution(&c, &parsed.ideal, ctx.exec)?;
    let unit = verify_minimal(&c);
    let table = c.rank_table();
    println!("F(deg) for {} over {} ({} variant)", parsed.ideal, ctx.field, seq.variant());
    print!("{table}");
    println!("complex: {}", v.is_complex);
    println!("resolution: {}", v.is_resolution);
    println!("minimal: {}", unit.is_none());
    if let Some(w) = v.complex_witness.as_ref().or(v.resolution_witness.as_ref()) {
        println!("witness: H_{} = {} in multidegree {}", w.degree, w.homology_dim, parsed.ideal.render(&w.multidegree));
    }
    ctx.write_dot(l.poset())?;
    let mut r = ctx.report("resolve");
    r.ideal = Some(IdealJson::new(&parsed));
    r.lattice = Some(lattice_json(&l));
    r.dims = dims_json(&seq, &l);
    r.betti = Some(BettiJson::from(&table));
    r.flags.is_complex = Some(v.is_complex);
    r.flags.is_resolution = Some(v.is_resolution);
    r.flags.is_minimal = Some(unit.is_none());
    r.witnesses.complex = v.complex_witness;
    r.witnesses.resolution = v.resolution_witness;
    r.witnesses.unit_entry = unit;
    r.warnings = seq.warnings().to_vec();
    ctx.write_json(&r)?;
    Ok(true)
}

fn cmd_betti<F: Field>(ctx: &Ctx, f: &F, path: &Path) -> Outcome {
    let parsed = load_ideal(path)?;
    let t = betti_oracle(f, &parsed.ideal, ctx.max_gens, ctx.exec)?;
    println!("Betti numbers of R/N for N = {} over {}", parsed.ideal, ctx.field);
    print!("{t}");
    for ((i, m), v) in t.multigraded() {
        println!("  beta_{i},{} = {v}", parsed.ideal.render(m));
    }
    let mut r = ctx.report("betti");
    r.variant = None;
    r.ideal = Some(IdealJson::new(&parsed));
    r.betti = Some(BettiJson::from(&t));
    ctx.write_json(&r)?;
    Ok(true)
}

fn cmd_check<F: Field>(ctx: &Ctx, f: &F, path: &Path) -> Outcome {
    let parsed = load_ideal(path)?;
    let opts = LatticeLinearOptions {
        variant: ctx.primary(),
        cross_check: ctx.variant == VariantArg::Both,
        max_generators: ctx.max_gens,
        exec: ctx.exec,
    };
    let rep = is_lattice_linear(f, &parsed.ideal, opts)?;
    println!("{} over {}: lattice-linear = {}", parsed.ideal, ctx.field, rep.lattice_linear);
    print!("{}", rep.betti);
    let v = &rep.verification;
    if let Some(w) = v.complex_witness.as_ref().or(v.resolution_witness.as_ref()) {
        println!(
            "witness: strand at {} has H_{} of dimension {}",
            parsed.ideal.render(&w.multidegree),
            w.degree,
            w.homology_dim
        );
    }
    if let Some(w) = &rep.unit_entry {
        println!("witness: unit entry {} -> {} in degree {}", w.source, w.target, w.degree);
    }
    ctx.write_dot(rep.lattice.poset())?;
    let mut r = ctx.report("check-lattice-linear");
    r.ideal = Some(IdealJson::new(&parsed));
    r.lattice = Some(lattice_json(&rep.lattice));
    r.dims = dims_json(&rep.sequence, &rep.lattice);
    r.betti = Some(BettiJson::from(&rep.betti));
    r.flags.is_complex = Some(v.is_complex);
    r.flags.is_resolution = Some(v.is_resolution);
    r.flags.is_minimal = Some(rep.unit_entry.is_none());
    r.flags.lattice_linear = Some(rep.lattice_linear);
    r.witnesses.complex = v.complex_witness.clone();
    r.witnesses.resolution = v.resolution_witness.clone();
    r.witnesses.unit_entry = rep.unit_entry.clone();
    r.warnings = rep.sequence.warnings().to_vec();
    ctx.write_json(&r)?;
    Ok(rep.lattice_linear)
}

fn cmd_scarf<F: Field>(ctx: &Ctx, f: &F, path: &Path) -> Outcome {
    let parsed = load_ideal(path)?;
    let s = scarf(f, &parsed.ideal, ctx.max_gens)?;
    let (ok, v) = is_scarf_ideal(f, &parsed.ideal, ctx.max_gens, ctx.exec)?;
    println!("Scarf complex of {}", parsed.ideal);
    for (i, faces) in s.faces.iter().enumerate() {
        let labels: Vec<String> = faces.iter().map(|&m| subset_label(m)).collect();
        println!("  size {i}: {}", labels.join(" "));
    }
    println!("ranks: {:?}", s.complex.ranks());
    println!("scarf ideal: {ok}");
    let mut r = ctx.report("scarf");
    r.variant = None;
    r.ideal = Some(IdealJson::new(&parsed));
    r.betti = Some(BettiJson::from(&s.complex.rank_table()));
    r.flags.is_complex = Some(v.is_complex);
    r.flags.is_resolution = Some(v.is_resolution);
    r.flags.scarf = Some(ok);
    r.witnesses.complex = v.complex_witness;
    r.witnesses.resolution = v.resolution_witness;
    ctx.write_json(&r)?;
    Ok(ok)
}

fn cmd_taylor<F: Field>(ctx: &Ctx, f: &F, path: &Path) -> Outcome {
    let parsed = load_ideal(path)?;
    let t = taylor(f, &parsed.ideal, ctx.max_gens)?;
    let v = verify_resolution(&t, &parsed.ideal, ctx.exec)?;
    let unit = verify_minimal(&t);
    println!("Taylor complex of {}", parsed.ideal);
    println!("ranks: {:?}", t.ranks());
    println!("resolution: {}", v.is_resolution);
    println!("minimal: {}", unit.is_none());
    let mut r = ctx.report("taylor");
    r.variant = None;
    r.ideal = Some(IdealJson::new(&parsed));
    r.betti = Some(BettiJson::from(&t.rank_table()));
    r.flags.is_complex = Some(v.is_complex);
    r.flags.is_resolution = Some(v.is_resolution);
    r.flags.is_minimal = Some(unit.is_none());
    r.witnesses.unit_entry = unit;
    ctx.write_json(&r)?;
    if !v.is_resolution {
        return Err(Failure::Internal("the Taylor complex failed to resolve".into()));
    }
    Ok(true)
}

fn cmd_compare<F: Field>(ctx: &Ctx, f: &F, path: &Path) -> Outcome {
    let parsed = load_ideal(path)?;
    let l = LcmLattice::build(&parsed.ideal, ctx.max_gens)?;
    let d = build_sequence(l.poset(), f, Variant::Delta, ctx.exec)?;
    let g = build_sequence(l.poset(), f, Variant::Gamma, ctx.exec)?;
    let squares = comparison_square_check(&d, &g)?;
    println!("delta and gamma agree on {} components; {} squares commute", d.dims().len(), squares);
    let mut r = ctx.report("compare-variants");
    r.variant = Some("both".into());
    r.ideal = Some(IdealJson::new(&parsed));
    r.lattice = Some(lattice_json(&l));
    r.dims = dims_json(&g, &l);
    ctx.write_json(&r)?;
    Ok(true)
}

fn cmd_rank_complete(ctx: &Ctx, path: &Path, output: Option<&Path>) -> Outcome {
    let p = parse_poset(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let (q, _) = p.rank_completion();
    eprintln!("added {} elements", q.len() - p.len());
    let text = write_poset(&q);
    match output {
        Some(out) => fs::write(out, text).map_err(|e| Failure::Input(format!("cannot write {}: {e}", out.display())))?,
        None => print!("{text}"),
    }
    ctx.write_dot(&q)?;
    Ok(true)
}

fn cmd_selftest<F: Field>(ctx: &Ctx, f: &F, rounds: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut failures = 0;
    let mut check = |name: &str, ok: bool| {
        if !ok {
            failures += 1;
            println!("FAIL {name}");
        }
    };
    for round in 0..rounds {
        let n = rng.gen_range(1..=4);
        let i = random::ideal(&mut rng, n, 5, 3);
        let t = taylor(f, &i, ctx.max_gens)?;
        check(&format!("round {round}: Taylor resolves {i}"), verify_resolution(&t, &i, ctx.exec)?.is_resolution);
        let (b, eta) = boolean_degree_map(&i)?;
        let seq = build_sequence(&b, f, Variant::Delta, ctx.exec)?;
        let fb = homogenize(&seq, &eta)?;
        check(&format!("round {round}: B_r matches Taylor for {i}"), sign_diagonal(&t, &fb).is_ok());
        let l = LcmLattice::build(&i, ctx.max_gens)?;
        let d = build_sequence(l.poset(), f, Variant::Delta, ctx.exec)?;
        let g = build_sequence(l.poset(), f, Variant::Gamma, ctx.exec)?;
        check(&format!("round {round}: variants agree for {i}"), comparison_square_check(&d, &g).is_ok());
        let p = random::ranked_poset(&mut rng, 14, true);
        let s = build_sequence(&p, f, Variant::Delta, ctx.exec)?;
        check(&format!("round {round}: ranked poset gives a complex"), s.complex_defect().is_none());
    }
    println!("selftest: {rounds} rounds, seed {}, {failures} failures", ctx.seed);
    if failures > 0 {
        return Err(Failure::Internal(format!("{failures} selftest checks failed")));
    }
    Ok(true)
}

fn run(cli: Cli) -> Outcome {
    let ctx = Ctx {
        field: cli.field,
        variant: cli.variant,
        json: cli.json,
        dot: cli.dot,
        max_gens: cli.max_gens,
        seed: cli.seed,
        exec: if cli.sequential { Execution::Sequential } else { Execution::Parallel },
    };
    match &cli.command {
        Command::Lattice { ideal } => cmd_lattice(&ctx, ideal),
        Command::Resolve { ideal } => with_field!(ctx.field, |f| cmd_resolve(&ctx, &f, ideal)),
        Command::Betti { ideal } => with_field!(ctx.field, |f| cmd_betti(&ctx, &f, ideal)),
        Command::CheckLatticeLinear { ideal } => with_field!(ctx.field, |f| cmd_check(&ctx, &f, ideal)),
        Command::Scarf { ideal } => with_field!(ctx.field, |f| cmd_scarf(&ctx, &f, ideal)),
        Command::Taylor { ideal } => with_field!(ctx.field, |f| cmd_taylor(&ctx, &f, ideal)),
        Command::CompareVariants { ideal } => with_field!(ctx.field, |f| cmd_compare(&ctx, &f, ideal)),
        Command::RankComplete { poset, output } => cmd_rank_complete(&ctx, poset, output.as_deref()),
        Command::Selftest { rounds } => with_field!(ctx.field, |f| cmd_selftest(&ctx, &f, *rounds)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Cap(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(4)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(5)
        }
    }
}
