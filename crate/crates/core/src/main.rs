//! `wordmap`: trace polynomials, lemma certificates, theorem conditions,
//! image certificates and prime scans from the command line.
//!
//! Exit codes: 0 verified/true, 1 checked and false, 2 usage or input error.

use std::collections::BTreeSet;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use wordmap::arith::{
    check_theorem_conditions, density_report, length_residues, scan_primes, LengthFamily,
};
use wordmap::corpus::standard_corpus;
use wordmap::error::Error;
use wordmap::gf::{enumerate_image_pairs, trace_scan, Budget, FiniteField};
use wordmap::tracepoly::{
    cyclotomic_certificates, factorization_certificates, swap_certificates, tau, Certificate,
};
use wordmap::word::{parse_word, FamilySelector, Shape, Sign};

const AFTER_HELP: &str = "\
Words: terms x1, x2, 1, (w), [a, b] with optional ^n exponents; [a, b] = a^-1 b^-1 a b.
Families: SHAPE:SIGN,k=K with SHAPE in {x2yk, xneg2yk, x2ynegk} and SIGN the inner sign
of y1 = x1^2 x2 x1^(±2) x2^-1, e.g. \"x2yk:+,k=2\".
Environment: WORDMAP_BUDGET overrides the evaluation budgets (default 100000000).";

#[derive(Parser, Debug)]
#[command(name = "wordmap", version, about = "Word maps on PSL2(F_q)", after_help = AFTER_HELP)]
#[command(subcommand_required = false, arg_required_else_help = true)]
struct Cli {
    /// Worker threads for enumeration and verification.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Output format; defaults to text for `trace`, json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Print the standard word corpus and exit.
    #[arg(long)]
    seed_corpus: bool,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the trace polynomial of a word.
    Trace { word: String },
    /// Verify a trace identity over a range of k.
    Verify(VerifyArgs),
    /// Evaluate the non-surjectivity conditions for (p, n, k, shape).
    Conditions {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, default_value = "x2yk")]
        shape: String,
    },
    /// Compute the image of a word map over F_q.
    Image(ImageArgs),
    /// List primes <= p-max satisfying the sufficient congruence criterion.
    Scan {
        #[arg(long)]
        kpm: i64,
        #[arg(long)]
        p_max: u64,
    },
    /// Empirical density of qualifying primes up to x.
    Density {
        #[arg(long)]
        kpm: i64,
        #[arg(long)]
        x: u64,
    },
    /// Admissible word lengths and their residues mod 18.
    Lengths {
        #[arg(long)]
        r_max: u64,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Lemma {
    Swap,
    Factorization,
    Cyclotomic,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum VariantSel {
    Plus,
    Minus,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    lemma: Lemma,
    #[arg(long, allow_negative_numbers = true)]
    k_min: i64,
    #[arg(long, allow_negative_numbers = true)]
    k_max: i64,
    #[arg(long, value_enum, default_value = "all")]
    variant: VariantSel,
    /// Restrict the factorization lemma to one shape (default: all three).
    #[arg(long)]
    shape: Option<String>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum MethodSel {
    Pairs,
    Scan,
}

#[derive(Args, Debug)]
struct ImageArgs {
    #[arg(long, conflicts_with_all = ["p", "n"])]
    q: Option<u64>,
    #[arg(long, requires = "n")]
    p: Option<u64>,
    #[arg(long, requires = "p")]
    n: Option<usize>,
    #[arg(long, conflicts_with = "family")]
    word: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, value_enum, default_value = "pairs")]
    method: MethodSel,
    /// Evaluation budget; overrides WORDMAP_BUDGET.
    #[arg(long)]
    budget: Option<u128>,
}

/// Outcome of a subcommand: the exit code it maps to.
enum Outcome {
    True,
    False,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if threads == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        // Only fails if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match run(&cli) {
        Ok(Outcome::True) => ExitCode::SUCCESS,
        Ok(Outcome::False) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CongruenceViolated { .. } => 1,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    if cli.seed_corpus {
        let words: Vec<String> = standard_corpus().iter().map(ToString::to_string).collect();
        match cli.format.unwrap_or(Format::Text) {
            Format::Json => println!("{}", to_json(&words)),
            _ => words.iter().for_each(|w| println!("{w}")),
        }
        return Ok(Outcome::True);
    }
    let Some(command) = &cli.command else {
        return Err(Error::InvalidArgument("no subcommand given".into()));
    };
    match command {
        Command::Trace { word } => cmd_trace(word, cli.format.unwrap_or(Format::Text)),
        Command::Verify(args) => cmd_verify(args, cli.format.unwrap_or(Format::Json)),
        Command::Conditions { p, n, k, shape } => {
            let report = check_theorem_conditions(*p, *n, *k, shape.parse()?)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => println!("{}", to_json(&report)),
                Format::Csv => {
                    println!("p,n,k,shape,k_pm,cond1,cond2,cond3,inertia_degrees,verdict");
                    println!(
                        "{},{},{},{},{},{},{},{},{},{}",
                        report.p,
                        report.n,
                        report.k,
                        report.shape,
                        report.k_pm,
                        report.cond1,
                        report.cond2,
                        report.cond3,
                        join(&report.inertia_degrees, " "),
                        report.verdict
                    );
                }
                Format::Text => {
                    println!("p = {}, n = {}, k = {}, shape = {}, k± = {}", report.p, report.n, report.k, report.shape, report.k_pm);
                    println!("(1) 2 is not a square mod p: {}", report.cond1);
                    println!("(2) n is odd: {}", report.cond2);
                    println!("(3) no inertia degree divides n: {} (f = [{}])", report.cond3, join(&report.inertia_degrees, ", "));
                    println!("verdict: {}", report.verdict);
                }
            }
            Ok(verdict(report.verdict))
        }
        Command::Image(args) => cmd_image(args, cli.format.unwrap_or(Format::Json)),
        Command::Scan { kpm, p_max } => {
            let scan = scan_primes(*kpm, *p_max)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => println!("{}", to_json(&scan)),
                Format::Csv => {
                    println!("p");
                    scan.primes.iter().for_each(|p| println!("{p}"));
                }
                Format::Text => println!("{}", join(&scan.primes, " ")),
            }
            Ok(verdict(scan.cross_checked))
        }
        Command::Density { kpm, x } => {
            let r = density_report(*kpm, *x)?;
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => println!("{}", to_json(&r)),
                Format::Csv => {
                    println!("k_pm,x,matching,total,empirical,paper,dirichlet");
                    println!(
                        "{},{},{},{},{},{},{}",
                        r.k_pm, r.x, r.matching_prime_count, r.total_prime_count,
                        r.empirical_density, r.paper_density, r.dirichlet_density
                    );
                }
                Format::Text => {
                    println!("k± = {}, X = {}", r.k_pm, r.x);
                    println!("qualifying primes: {} of {}", r.matching_prime_count, r.total_prime_count);
                    println!("empirical density: {} ≈ {:.6}", r.empirical_density, r.empirical_density.to_f64());
                    println!("product density:   {} (deviation {:+.6})", r.paper_density, r.deviation_from_paper);
                    println!("dirichlet density: {} (deviation {:+.6})", r.dirichlet_density, r.deviation_from_dirichlet);
                }
            }
            Ok(Outcome::True)
        }
        Command::Lengths { r_max } => cmd_lengths(*r_max, cli.format.unwrap_or(Format::Json)),
    }
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Outcome::True
    } else {
        Outcome::False
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_trace(word: &str, format: Format) -> Result<Outcome, Error> {
    let w = parse_word(word)?;
    let poly = tau(&w);
    match format {
        Format::Text => println!("{poly}"),
        Format::Json => println!(
            "{}",
            serde_json::json!({ "word": w.to_string(), "trace": poly.to_string() })
        ),
        Format::Csv => {
            println!("word,trace");
            println!("{},{}", csv_field(&w.to_string()), csv_field(&poly.to_string()));
        }
    }
    Ok(Outcome::True)
}

fn cmd_verify(args: &VerifyArgs, format: Format) -> Result<Outcome, Error> {
    if args.k_min > args.k_max {
        return Err(Error::InvalidArgument(format!(
            "empty range: k-min {} > k-max {}",
            args.k_min, args.k_max
        )));
    }
    let variants: Vec<Sign> = match args.variant {
        VariantSel::Plus => vec![Sign::Plus],
        VariantSel::Minus => vec![Sign::Minus],
        VariantSel::All => vec![Sign::Plus, Sign::Minus],
    };
    let shapes: Vec<Shape> = match &args.shape {
        None => Shape::ALL.to_vec(),
        Some(s) if s == "all" => Shape::ALL.to_vec(),
        Some(s) => vec![s.parse()?],
    };
    let range = args.k_min..=args.k_max;
    let certs: Vec<Certificate> = match args.lemma {
        Lemma::Swap => swap_certificates(range, &variants),
        Lemma::Factorization => {
            if args.k_max < 1 {
                return Err(Error::InvalidArgument("factorization needs k >= 1".into()));
            }
            factorization_certificates(range, &variants, &shapes)
        }
        Lemma::Cyclotomic => {
            if args.k_max < 1 {
                return Err(Error::InvalidArgument("cyclotomic check needs k± >= 1".into()));
            }
            cyclotomic_certificates(range)
        }
    };
    match format {
        Format::Json => certs.iter().for_each(|c| println!("{}", to_json(c))),
        Format::Csv => {
            println!("lemma,k,variant,shape,verdict,lhs,rhs");
            for c in &certs {
                println!(
                    "{},{},{},{},{},{},{}",
                    c.lemma,
                    c.k,
                    c.variant.as_deref().unwrap_or(""),
                    c.shape.as_deref().unwrap_or(""),
                    c.verdict,
                    csv_field(&c.lhs),
                    csv_field(&c.rhs)
                );
            }
        }
        Format::Text => {
            for c in &certs {
                let mut line = format!("{} k={}", c.lemma, c.k);
                if let Some(v) = &c.variant {
                    line.push_str(&format!(" variant={v}"));
                }
                if let Some(s) = &c.shape {
                    line.push_str(&format!(" shape={s}"));
                }
                println!("{line}: {}", c.verdict);
            }
            let passed = certs.iter().filter(|c| c.verdict).count();
            println!("{passed}/{} certificates hold", certs.len());
        }
    }
    Ok(verdict(certs.iter().all(|c| c.verdict)))
}

fn budget_from_env(flag: Option<u128>) -> Result<Budget, Error> {
    if let Some(b) = flag {
        return positive_budget(b);
    }
    match std::env::var("WORDMAP_BUDGET") {
        Ok(v) => {
            let b: u128 = v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("WORDMAP_BUDGET={v} is not an integer")))?;
            positive_budget(b)
        }
        Err(_) => Ok(Budget::default()),
    }
}

fn positive_budget(b: u128) -> Result<Budget, Error> {
    if b == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    Ok(Budget::uniform(b))
}

fn cmd_image(args: &ImageArgs, format: Format) -> Result<Outcome, Error> {
    let field = match (args.q, args.p, args.n) {
        (Some(q), _, _) => FiniteField::with_order(q)?,
        (None, Some(p), Some(n)) => FiniteField::new(p, n)?,
        _ => return Err(Error::InvalidArgument("give --q or both --p and --n".into())),
    };
    let (word, family) = match (&args.word, &args.family) {
        (Some(w), None) => (parse_word(w)?, None),
        (None, Some(f)) => {
            let sel: FamilySelector = f.parse()?;
            (sel.word(), Some(sel))
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --word or --family".into())),
    };
    let budget = budget_from_env(args.budget)?;
    let report = match args.method {
        MethodSel::Pairs => enumerate_image_pairs(&word, &field, budget)?,
        MethodSel::Scan => trace_scan(&word, &field, budget)?,
    };
    // When the conditions hold, the word must miss every involution.
    let predicted = family.and_then(|sel| {
        check_theorem_conditions(
            field.characteristic(),
            field.degree() as u64,
            sel.family.k,
            sel.shape,
        )
        .ok()
        .filter(|r| r.verdict)
    });
    match format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Csv => {
            println!("q,p,n,word,method,image_trace_count,misses_involutions,surjective,pairs_evaluated,points_evaluated,elapsed_ms");
            println!(
                "{},{},{},{},{:?},{},{},{},{},{},{}",
                report.field.q,
                report.field.p,
                report.field.n,
                csv_field(&report.word),
                report.method,
                report.image_trace_count,
                report.misses_involutions,
                report.surjective.map_or(String::new(), |s| s.to_string()),
                report.pairs_evaluated,
                report.points_evaluated,
                report.elapsed_ms
            );
        }
        Format::Text => {
            println!("F_{} = F_{}[x]/({:?}), word {}", report.field.q, report.field.p, report.field.modulus, report.word);
            println!("traces attained: {} of {}", report.image_trace_count, report.field.q);
            println!("misses involutions: {}", report.misses_involutions);
            if let Some(s) = report.surjective {
                println!("surjective on PSL2: {s} (image size {})", report.image_size.unwrap_or(0));
            }
            if predicted.is_some() {
                println!("conditions hold: involutions predicted to be missed");
            }
        }
    }
    Ok(verdict(predicted.is_none() || report.misses_involutions))
}

fn cmd_lengths(r_max: u64, format: Format) -> Result<Outcome, Error> {
    let tables = [
        length_residues(LengthFamily::X2Yk, r_max)?,
        length_residues(LengthFamily::XNeg2Yk, r_max)?,
    ];
    let union: BTreeSet<u64> = tables
        .iter()
        .flat_map(|t| t.residues_mod_18.iter().copied())
        .collect();
    match format {
        Format::Json => println!(
            "{}",
            serde_json::json!({ "r_max": r_max, "families": tables, "residues_mod_18": union })
        ),
        Format::Csv => {
            println!("family,r,length,residue_mod_18");
            for t in &tables {
                let name = match t.family {
                    LengthFamily::X2Yk => "x2yk",
                    LengthFamily::XNeg2Yk => "xneg2yk",
                };
                for (r, l) in t.rs.iter().zip(&t.lengths) {
                    println!("{name},{r},{l},{}", l % 18);
                }
            }
        }
        Format::Text => {
            for t in &tables {
                let head: Vec<u64> = t.lengths.iter().take(8).copied().collect();
                println!(
                    "{:?}: {} lengths, first {}; residues mod 18: {}",
                    t.family,
                    t.lengths.len(),
                    join(&head, ", "),
                    join(&t.residues_mod_18.iter().collect::<Vec<_>>(), ", ")
                );
            }
            println!("union of residues mod 18: {}", join(&union.iter().collect::<Vec<_>>(), ", "));
        }
    }
    Ok(Outcome::True)
}
