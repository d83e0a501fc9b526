use std::cell::OnceCell;
use std::fmt;
use std::path::PathBuf;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};
use dworkbench_core::cartan::verify_cdc;
use dworkbench_core::checks;
use dworkbench_core::descent::{prime_field, radical_basis_char0, radical_basis_mod_p, StructureConstants};
use dworkbench_core::descriptor::Family;
use dworkbench_core::group::{DEFAULT_ELEMENT_BUDGET, EXTENDED_ELEMENT_BUDGET, HARD_ELEMENT_LIMIT};
use dworkbench_core::marks::MarksTable;
use dworkbench_core::modular::{
    decomposition_matrix, primes_dividing, verify_decomp_equals_arrow, verify_special_lemma,
    VerifyReport,
};
use dworkbench_core::oracle::ORACLE_LIMIT;
use dworkbench_core::reference::reference_table;
use dworkbench_core::report::{
    CartanRecord, CheckRecord, DecompRecord, MarksRecord, MatrixRecord, PrimeCartanRecord,
    RadicalPartRecord, RadicalRecord, StructureConstantsRecord, VerifyRecord, SCHEMA_VERSION,
};
use dworkbench_core::ring::{is_prime, Rationals};
use dworkbench_core::workbench::Workbench;
use dworkbench_core::{CoxeterType, Error as CoreError};
use num_bigint::BigUint;

use crate::cache::{Cache, Kind};
use crate::emit::{self, Format};

/// Parabolic tables of marks, descent algebras and their decomposition and
/// Cartan matrices for finite Coxeter groups.
#[derive(Debug, Parser)]
#[command(name = "dworkbench", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parabolic table of marks.
    Marks(JobArgs),
    /// Decomposition matrices and ->_p classes, one column per prime.
    Decomp(JobArgs),
    /// Bases of the radical in characteristic 0 and p.
    Radical(JobArgs),
    /// Cartan matrices C, C~ and D^T C D.
    Cartan(JobArgs),
    /// Run every applicable check; exits with status 1 on any failure.
    Verify(JobArgs),
}

#[derive(Debug, Args)]
pub struct JobArgs {
    /// Coxeter type: A<n>, B<n>, D<n>, E6, E7, E8, F4, H3, H4 or I2:<m>.
    #[arg(value_name = "TYPE")]
    pub descriptor: String,
    /// Primes to use (default: every prime dividing |W|).
    #[arg(short = 'p', long = "prime", value_name = "P", num_args = 1..)]
    pub primes: Vec<u64>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Cache directory for computed artifacts.
    #[arg(long, value_name = "DIR", env = "DWORKBENCH_CACHE")]
    pub cache: Option<PathBuf>,
    /// Largest group order to enumerate.
    #[arg(long, value_name = "N")]
    pub budget: Option<u64>,
    /// Raise the default budget so that E7 can be built.
    #[arg(long)]
    pub extended: bool,
}

/// A problem with the command line that parsing alone cannot catch.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

pub const EXIT_VERIFICATION_FAILED: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Exit status for an error: 2 for configuration problems, 3 when the group
/// is larger than the budget, 1 otherwise.
pub fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<ConfigError>().is_some() {
        return EXIT_CONFIG;
    }
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::BudgetExceeded { .. }) => EXIT_BUDGET,
        Some(
            CoreError::Parse(_)
            | CoreError::UnsupportedType(_)
            | CoreError::NotPrime(_)
            | CoreError::WrongType { .. },
        ) => EXIT_CONFIG,
        _ => EXIT_VERIFICATION_FAILED,
    }
}

/// Output of a command and whether everything it checked held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub passed: bool,
}

struct Job {
    ty: CoxeterType,
    descriptor: String,
    primes: Vec<u64>,
    format: Format,
    cache: Option<Cache>,
    budget: u64,
    workbench: OnceCell<Workbench>,
}

impl Job {
    fn new(args: &JobArgs) -> Result<Self> {
        let ty: CoxeterType = args.descriptor.parse()?;
        let budget = match args.budget {
            Some(0) => return Err(ConfigError("--budget must be at least 1".into()).into()),
            Some(b) if b > HARD_ELEMENT_LIMIT => {
                return Err(ConfigError(format!("--budget may not exceed {HARD_ELEMENT_LIMIT}")).into())
            }
            Some(b) => b,
            None if args.extended => EXTENDED_ELEMENT_BUDGET,
            None => DEFAULT_ELEMENT_BUDGET,
        };
        let order = ty.order();
        if order > BigUint::from(budget) {
            return Err(CoreError::BudgetExceeded {
                descriptor: ty.to_string(),
                order: order.to_string(),
                budget,
            }
            .into());
        }
        for &p in &args.primes {
            if !is_prime(p) {
                return Err(CoreError::NotPrime(p).into());
            }
        }
        let mut primes = if args.primes.is_empty() {
            primes_dividing(&order)
        } else {
            args.primes.clone()
        };
        primes.sort_unstable();
        primes.dedup();
        Ok(Self {
            ty,
            descriptor: ty.to_string(),
            primes,
            format: args.format,
            cache: args.cache.clone().map(Cache::new),
            budget,
            workbench: OnceCell::new(),
        })
    }

    fn workbench(&self) -> Result<&Workbench> {
        if let Some(w) = self.workbench.get() {
            return Ok(w);
        }
        let w = Workbench::with_budget(self.ty, self.budget)?;
        Ok(self.workbench.get_or_init(|| w))
    }

    fn prime_variant(&self) -> String {
        let ps: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        format!("p{}", ps.join("-"))
    }

    fn cached<T>(&self, kind: Kind, variant: &str, compute: impl FnOnce() -> Result<T>) -> Result<T>
    where
        T: serde::Serialize + serde::de::DeserializeOwned,
    {
        if let Some(c) = &self.cache {
            if let Some(v) = c.load(&self.descriptor, kind, variant) {
                return Ok(v);
            }
        }
        let v = compute()?;
        if let Some(c) = &self.cache {
            c.store(&self.descriptor, kind, variant, &v)?;
        }
        Ok(v)
    }

    fn marks_record(&self) -> Result<MarksRecord> {
        self.cached(Kind::Marks, "", || Ok(MarksRecord::from_table(self.workbench()?.marks())))
    }

    fn marks(&self) -> Result<MarksTable> {
        match self.workbench.get() {
            Some(w) => Ok(w.marks().clone()),
            None => Ok(self.marks_record()?.to_table()?),
        }
    }

    fn structure_constants(&self) -> Result<StructureConstants> {
        let rec = self.cached(Kind::StructureConstants, "", || {
            Ok(StructureConstantsRecord::from_constants(
                self.ty,
                self.workbench()?.structure_constants(),
            ))
        })?;
        Ok(rec.to_constants()?)
    }
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Marks(a) => {
            let job = Job::new(a)?;
            let rec = job.marks_record()?;
            Ok(Outcome { output: emit::marks(&rec, job.format)?, passed: true })
        }
        Command::Decomp(a) => {
            let job = Job::new(a)?;
            let rec = job.cached(Kind::Decomp, &job.prime_variant(), || {
                let w = job.workbench()?;
                if let Some(c) = &job.cache {
                    c.store(&job.descriptor, Kind::Marks, "", &MarksRecord::from_table(w.marks()))?;
                }
                Ok(DecompRecord::compute(w, &job.primes)?)
            })?;
            Ok(Outcome { output: emit::decomp(&rec, job.format)?, passed: true })
        }
        Command::Radical(a) => {
            let job = Job::new(a)?;
            let rec = radical(&job)?;
            Ok(Outcome { output: emit::radical(&rec, job.format)?, passed: true })
        }
        Command::Cartan(a) => {
            let job = Job::new(a)?;
            let rec = job.cached(Kind::Cartan, &job.prime_variant(), || cartan(&job))?;
            let passed = rec.primes.iter().all(|p| p.equal);
            Ok(Outcome { output: emit::cartan(&rec, job.format)?, passed })
        }
        Command::Verify(a) => {
            let job = Job::new(a)?;
            let rec = verify(&job)?;
            Ok(Outcome { output: emit::verify(&rec, job.format)?, passed: rec.passed() })
        }
    }
}

fn radical(job: &Job) -> Result<RadicalRecord> {
    let marks = job.marks()?;
    let n = job.ty.rank;
    let mut parts = vec![RadicalPartRecord::new(
        &Rationals,
        marks.len(),
        &radical_basis_char0(marks.classes()),
    )];
    for &p in &job.primes {
        let basis = radical_basis_mod_p(&marks, p)?;
        parts.push(RadicalPartRecord::new(&prime_field(p)?, marks.p_regular_rows(p).len(), &basis));
    }
    Ok(RadicalRecord {
        schema_version: SCHEMA_VERSION,
        descriptor: job.ty,
        algebra_dimension: 1 << n,
        parts,
    })
}

fn cartan(job: &Job) -> Result<CartanRecord> {
    let marks = job.marks()?;
    let sc = job.structure_constants()?;
    let mut c = None;
    let mut primes = Vec::new();
    for &p in &job.primes {
        let d = decomposition_matrix(&marks, p)?;
        let (cmp, _) = verify_cdc(&marks, &sc, &d)?;
        primes.push(PrimeCartanRecord::new(p, &cmp));
        c = Some(cmp.c);
    }
    let c = match c {
        Some(c) => c,
        None => dworkbench_core::cartan::cartan_matrix_char0(&marks, &sc)?,
    };
    Ok(CartanRecord {
        schema_version: SCHEMA_VERSION,
        descriptor: job.ty,
        labels: dworkbench_core::report::labels(marks.classes()),
        c: MatrixRecord { index: c.index, entries: c.entries },
        primes,
    })
}

/// Largest rank for which the radical checks run.
const RADICAL_RANK_LIMIT: usize = 6;
/// Largest rank for which the Cartan checks run.
const CARTAN_RANK_LIMIT: usize = 4;

fn verify(job: &Job) -> Result<VerifyRecord> {
    let w = job.workbench()?;
    let ty = job.ty;
    let mut out = Vec::new();
    let mut push = |name: String, rep: VerifyReport| {
        out.push(CheckRecord { name, checks: rep.checks, failures: rep.failures });
    };
    push("table of marks".into(), checks::check_marks(w, &job.primes));
    if matches!(ty.family, Family::A | Family::B | Family::D) {
        push("normalizer indices".into(), checks::check_normalizers(w)?);
    }
    for &p in &job.primes {
        push(format!("decomposition matrix, p = {p}"), verify_decomp_equals_arrow(w, p)?);
        if matches!(ty.family, Family::B | Family::D) {
            push(format!("p-special subsets, p = {p}"), verify_special_lemma(w, p)?);
        }
    }
    if ty.rank <= RADICAL_RANK_LIMIT {
        push("radical, characteristic 0".into(), checks::check_radical(w, None)?);
        for &p in &job.primes {
            push(format!("radical, p = {p}"), checks::check_radical(w, Some(p))?);
        }
    }
    if ty.rank <= CARTAN_RANK_LIMIT {
        for &p in &job.primes {
            push(format!("Cartan matrices, p = {p}"), checks::check_cartan(w, p)?);
        }
    }
    if w.group().order() <= BigUint::from(ORACLE_LIMIT) {
        push("group algebra products".into(), checks::check_oracle(w)?);
    }
    if let Some(t) = reference_table(&job.descriptor) {
        push("published decomposition table".into(), checks::check_published(w, t)?);
    }
    Ok(VerifyRecord { schema_version: SCHEMA_VERSION, descriptor: ty, checks: out })
}
