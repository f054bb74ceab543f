//! Command-line driver.
//!
//! Exit codes: 0 success; 1 diagnostics or input errors; 2 refusal because
//! a theorem hypothesis fails (even n, infinite quotient); 3 internal
//! invariant violation.

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

use exk0::{dsl, json as out};
use exk0_core::abgroup::{
    enumerate_subgroups_containing, AbGroupError, FinGenAbGroup, Subgroup, DEFAULT_SUBGROUP_CAP,
};
use exk0_core::catmodel::{ObjectExpr, Severity};
use exk0_core::classify::{
    classify_all, f_member, roundtrip_fg, roundtrip_gf, verify_complete, verify_dense,
    ClassifyError, ExtensionalSubcategory, SubcategoryHandle,
};
use exk0_core::grothendieck::{compute_k0, GrothendieckError, GrothendieckGroup, K0Element};

/// Fixed seed so `--json` output is byte-identical across runs.
const SAMPLER_SEED: u64 = 0x0b5e55ed;

#[derive(Parser)]
#[command(name = "exk0", version, about = "Grothendieck groups of presented categories")]
struct Cli {
    /// Emit machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant factors of K0 and the classes of the indecomposables.
    K0 { file: String },
    /// Canonical basis of the generator subgroup of K0.
    Hg { file: String },
    /// Enumerate the subgroups of K0 containing the generator subgroup.
    Subgroups {
        file: String,
        /// Maximum quotient size to enumerate (default 10000; the
        /// EXK0_CAP environment variable overrides the default).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// The correspondence table: one row per subgroup with its
    /// membership-test subcategory.
    Classify {
        file: String,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Test whether an object belongs to the subcategory of a subgroup.
    Member {
        file: String,
        /// Object expression, e.g. "2*S + P".
        #[arg(long)]
        object: String,
        /// Subgroup generators as semicolon-separated coordinate vectors,
        /// e.g. "0,1; 2,0".
        #[arg(long, allow_hyphen_values = true)]
        subgroup: String,
    },
    /// Write an element of K0 as a difference of two object classes.
    Diff {
        file: String,
        /// Element coordinates over the indecomposables, e.g. "-1,0".
        #[arg(long, allow_hyphen_values = true)]
        element: String,
    },
    /// Run the density, completeness and roundtrip verifiers.
    Verify {
        file: String,
        /// Total-multiplicity bound for witness searches.
        #[arg(long, default_value_t = 4)]
        bound: u64,
        /// Number of sampled conflation sums in the completeness check.
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long)]
        cap: Option<u64>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }

    fn refusal(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure { code: 3, message: message.into() }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::EvenN { n } => Failure::refusal(format!(
                "refused: n = {n} is even, but the classification theorem assumes n odd"
            )),
            ClassifyError::Ab(AbGroupError::InfiniteQuotient) => Failure::refusal(
                "refused: the quotient of K0 by the generator subgroup is infinite",
            ),
            ClassifyError::Internal => Failure::internal("internal invariant violated"),
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<GrothendieckError> for Failure {
    fn from(e: GrothendieckError) -> Self {
        match e {
            GrothendieckError::EvenN { n } => Failure::refusal(format!(
                "refused: n = {n} is even, but the normal form assumes n odd"
            )),
            other => Failure::input(other.to_string()),
        }
    }
}

impl From<AbGroupError> for Failure {
    fn from(e: AbGroupError) -> Self {
        match e {
            AbGroupError::InfiniteQuotient => Failure::refusal(
                "refused: the quotient of K0 by the generator subgroup is infinite",
            ),
            other => Failure::input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::K0 { file } => cmd_k0(file, cli.json),
        Command::Hg { file } => cmd_hg(file, cli.json),
        Command::Subgroups { file, cap } => cmd_subgroups(file, resolve_cap(*cap)?, cli.json),
        Command::Classify { file, cap } => cmd_classify(file, resolve_cap(*cap)?, cli.json),
        Command::Member { file, object, subgroup } => cmd_member(file, object, subgroup, cli.json),
        Command::Diff { file, element } => cmd_diff(file, element, cli.json),
        Command::Verify { file, bound, samples, cap } => {
            cmd_verify(file, *bound, *samples, resolve_cap(*cap)?, cli.json)
        }
    }
}

fn resolve_cap(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var("EXK0_CAP") {
        Ok(s) => s
            .parse()
            .map_err(|_| Failure::input(format!("EXK0_CAP is not a valid count: '{s}'"))),
        Err(_) => Ok(DEFAULT_SUBGROUP_CAP),
    }
}

fn load(file: &str) -> Result<GrothendieckGroup, Failure> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| Failure::input(format!("cannot read '{file}': {e}")))?;
    let doc = match dsl::parse(&text) {
        Ok(doc) => doc,
        Err(diags) => {
            let lines: Vec<String> = diags.iter().map(|d| format!("{file}:{d}")).collect();
            return Err(Failure::input(lines.join("\n")));
        }
    };
    for w in &doc.warnings {
        if w.severity == Severity::Warning {
            eprintln!("{file}:{w}");
        }
    }
    Ok(compute_k0(&doc.presentation)?)
}

fn fmt_group(g: &FinGenAbGroup) -> String {
    let mut parts: Vec<String> = Vec::new();
    match g.free_rank() {
        0 => {}
        1 => parts.push("Z".to_string()),
        r => parts.push(format!("Z^{r}")),
    }
    for d in g.torsion() {
        parts.push(format!("Z/{d}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

fn fmt_vector(v: &[BigInt]) -> String {
    let coords: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", coords.join(", "))
}

fn fmt_subgroup(s: &Subgroup) -> String {
    let basis = s.lattice_basis();
    let cols: Vec<String> = (0..basis.cols()).map(|j| fmt_vector(&basis.column(j))).collect();
    let span = if cols.is_empty() {
        "span{}".to_string()
    } else {
        format!("span{{{}}}", cols.join(", "))
    };
    match s.quotient_order() {
        Some(k) => format!("{span} (index {k})"),
        None => format!("{span} (infinite index)"),
    }
}

fn cmd_k0(file: &str, as_json: bool) -> Result<(), Failure> {
    let k = load(file)?;
    if as_json {
        print!("{}", out::to_stdout_string(&out::k0(&k)));
        return Ok(());
    }
    let pres = k.presentation();
    println!("category \"{}\" (n = {})", pres.name, pres.n);
    println!("K0 = {}", fmt_group(k.group()));
    for id in &pres.indecs {
        let cls = k.class_of(&ObjectExpr::indec(id.clone()))?;
        let coords = k.group().project(&cls.0)?;
        println!("[{id}] = {}", fmt_vector(&coords));
    }
    Ok(())
}

fn cmd_hg(file: &str, as_json: bool) -> Result<(), Failure> {
    let k = load(file)?;
    let hg = k.h_g()?;
    if as_json {
        let v = json!({
            "category": k.presentation().name,
            "subgroup": out::subgroup(&hg),
        });
        print!("{}", out::to_stdout_string(&v));
        return Ok(());
    }
    println!("H_G = {}", fmt_subgroup(&hg));
    Ok(())
}

fn cmd_subgroups(file: &str, cap: u64, as_json: bool) -> Result<(), Failure> {
    let k = load(file)?;
    let hg = k.h_g()?;
    let subgroups = enumerate_subgroups_containing(k.group(), &hg, cap)?;
    if as_json {
        let v = json!({
            "category": k.presentation().name,
            "count": subgroups.len(),
            "subgroups": subgroups.iter().map(out::subgroup).collect::<Vec<_>>(),
        });
        print!("{}", out::to_stdout_string(&v));
        return Ok(());
    }
    println!("{} subgroup(s) of K0 containing H_G:", subgroups.len());
    for s in &subgroups {
        println!("  {}", fmt_subgroup(s));
    }
    Ok(())
}

fn cmd_classify(file: &str, cap: u64, as_json: bool) -> Result<(), Failure> {
    let k = load(file)?;
    let pairs = classify_all(&k, cap)?;
    if as_json {
        let rows: Vec<serde_json::Value> = pairs
            .iter()
            .map(|(h, _)| {
                json!({
                    "subgroup": out::subgroup(h),
                    "membership": format!("objects A with [A] in {}", fmt_subgroup(h)),
                })
            })
            .collect();
        let v = json!({
            "category": k.presentation().name,
            "count": pairs.len(),
            "rows": rows,
        });
        print!("{}", out::to_stdout_string(&v));
        return Ok(());
    }
    for (h, _) in &pairs {
        println!("H = {} | f(H) = objects A with [A] in H", fmt_subgroup(h));
    }
    Ok(())
}

fn parse_vector(text: &str, dim: usize) -> Result<Vec<BigInt>, Failure> {
    let coords: Result<Vec<BigInt>, _> =
        text.split(',').map(|c| c.trim().parse::<BigInt>()).collect();
    let coords =
        coords.map_err(|_| Failure::input(format!("invalid coordinate vector: '{text}'")))?;
    if coords.len() != dim {
        return Err(Failure::input(format!(
            "expected {dim} coordinates, got {} in '{text}'",
            coords.len()
        )));
    }
    Ok(coords)
}

fn cmd_member(file: &str, object: &str, subgroup: &str, as_json: bool) -> Result<(), Failure> {
    let k = load(file)?;
    let obj = dsl::parse_object(object).map_err(Failure::input)?;
    let dim = k.ambient_dim();
    let gens: Result<Vec<Vec<BigInt>>, Failure> = subgroup
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_vector(s, dim))
        .collect();
    let h = Subgroup::from_generators(k.group(), &gens?)?;
    let handle = SubcategoryHandle::new(&k, h)?;
    let member = f_member(&handle, &obj)?;
    if as_json {
        let v = json!({
            "object": out::object(&obj),
            "member": member,
        });
        print!("{}", out::to_stdout_string(&v));
        return Ok(());
    }
    println!(
        "{} is {}a member",
        dsl::print_object(&obj),
        if member { "" } else { "not " }
    );
    Ok(())
}

fn cmd_diff(file: &str, element: &str, as_json: bool) -> Result<(), Failure> {
    let k = load(file)?;
    let coords = parse_vector(element, k.ambient_dim())?;
    let v = K0Element(coords.clone());
    let (a, g) = k.express_as_difference(&v)?;
    if as_json {
        let value = json!({
            "element": out::vector(&coords),
            "a": out::object(&a),
            "g": out::object(&g),
        });
        print!("{}", out::to_stdout_string(&value));
        return Ok(());
    }
    println!(
        "{} = [{}] - [{}]",
        fmt_vector(&coords),
        dsl::print_object(&a),
        dsl::print_object(&g)
    );
    Ok(())
}

fn cmd_verify(
    file: &str,
    bound: u64,
    samples: u64,
    cap: u64,
    as_json: bool,
) -> Result<(), Failure> {
    let k = load(file)?;
    let pairs = classify_all(&k, cap)?;
    let mut rng = StdRng::seed_from_u64(SAMPLER_SEED);

    let mut rows: Vec<serde_json::Value> = Vec::new();
    let mut all_ok = true;
    for (h, handle) in &pairs {
        let dense = verify_dense(handle)?;
        let complete = verify_complete(handle, samples, &mut rng)?;
        let gf = roundtrip_gf(&k, h)?;
        if !dense.passed() || !complete.passed() || !gf {
            all_ok = false;
        }
        rows.push(json!({
            "subgroup": out::subgroup(h),
            "dense": out::density(&dense),
            "complete": out::completeness(&complete),
            "roundtrip_gf": gf,
        }));
    }

    // fg roundtrip on the generator subcategory (zero object when the
    // generator is empty)
    let seeds: Vec<ObjectExpr> = if k.presentation().generator.is_empty() {
        vec![ObjectExpr::zero()]
    } else {
        k.presentation()
            .generator
            .iter()
            .map(|id| ObjectExpr::indec(id.clone()))
            .collect()
    };
    let fg = roundtrip_fg(&k, &ExtensionalSubcategory { seeds }, bound)?;

    if as_json {
        let v = json!({
            "category": k.presentation().name,
            "bound": bound,
            "samples": samples,
            "subgroups": rows,
            "roundtrip_fg": out::fg(&fg),
            "passed": all_ok,
        });
        print!("{}", out::to_stdout_string(&v));
    } else {
        for (i, (h, _)) in pairs.iter().enumerate() {
            let row = &rows[i];
            println!(
                "H = {}: dense={} complete={} gf={}",
                fmt_subgroup(h),
                row["dense"]["passed"],
                row["complete"]["passed"],
                row["roundtrip_gf"],
            );
        }
        println!(
            "fg roundtrip: {} confirmed, {} inconclusive, {} nonmembers",
            fg.confirmed.len(),
            fg.exhausted.len(),
            fg.nonmembers.len()
        );
    }

    if !all_ok {
        return Err(Failure::internal(
            "a verifier reported a violation that the theory rules out",
        ));
    }
    Ok(())
}
