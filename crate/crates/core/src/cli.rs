//! Command-line front end.
//!
//! Exit codes: 0 success or property holds, 1 property fails, 2 usage or
//! parse error, 3 budget exceeded.

use std::io::{Read, Write};

use clap::{Parser, Subcommand};

use crate::codes::{build_code_table, slice};
use crate::detect::{find_columns, find_l_columns, find_twin_faces, DetectError};
use crate::discrete::{
    enumerate_tilings, export_dimacs, sample_tiling, to_exact, EnumerateOptions, SearchBudget,
    SearchError,
};
use crate::instance::{parse_instance, TilingInstance};
use crate::iso::{are_isomorphic, canonical_form};
use crate::rational::Rational;
use crate::transform::{extrude, permute_coords, slab_shift};
use crate::verify::{verify, VerifyFailure};

pub const EXIT_OK: u8 = 0;
pub const EXIT_PROPERTY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

/// Separator between `.tile` documents in a stream.
pub const STREAM_SEPARATOR: &str = "---";

/// Sampling only needs one raster of `(2s)^n` cells.
pub const SAMPLE_BUDGET: SearchBudget = SearchBudget {
    max_vertices: 1 << 22,
};

#[derive(Parser, Debug)]
#[command(
    name = "cubetile",
    version,
    about = "Periodic unit-cube tilings: verify, detect columns, transform, search"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a `.tile` instance is a tiling.
    Verify { file: String },
    /// List columns (or l-columns with `--l`).
    Columns {
        file: String,
        #[arg(long = "l")]
        l: Option<usize>,
        #[arg(long = "exact-l", requires = "l")]
        exact_l: bool,
    },
    /// List pairs of cubes sharing a full facet.
    Faces { file: String },
    /// Tiles with code index `k` in coordinate `j`, coordinate removed.
    Slice {
        file: String,
        #[arg(long)]
        coord: usize,
        #[arg(long)]
        index: u32,
    },
    /// Print the canonical key in hex.
    Canon { file: String },
    /// Search for an isomorphism between two instances.
    Iso { file_a: String, file_b: String },
    /// Shift the slab of a coordinate coset by an integer.
    Shift {
        file: String,
        #[arg(long)]
        coord: usize,
        #[arg(long)]
        coset: String,
        #[arg(long, allow_hyphen_values = true)]
        by: i64,
    },
    /// Permute coordinates: coordinate j moves to position sigma(j).
    Permute {
        file: String,
        #[arg(long, value_delimiter = ',')]
        sigma: Vec<usize>,
    },
    /// Append period-1 coordinates up to dimension `m`.
    Extrude {
        file: String,
        #[arg(long)]
        dim: usize,
    },
    /// Seeded random period-2 tilings.
    Sample {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        res: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// All period-2 tilings of the discrete model, lexicographic order.
    Enumerate {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        res: u32,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        dedup: bool,
    },
    /// The compatibility graph in DIMACS format.
    ExportDimacs {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        res: u32,
    },
    /// Check that every generated tiling of dimension 2..=max-dim has a column.
    CheckTheorems {
        #[arg(long, default_value_t = 6)]
        max_dim: usize,
        #[arg(long, default_value_t = 500)]
        samples: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn property(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_PROPERTY,
            message: message.into(),
        }
    }
}

impl From<SearchError> for Failure {
    fn from(e: SearchError) -> Self {
        let code = match e {
            SearchError::BudgetExceeded { .. } => EXIT_BUDGET,
            SearchError::InvalidTiling(_) => EXIT_PROPERTY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DetectError> for Failure {
    fn from(e: DetectError) -> Self {
        let code = match e {
            DetectError::NotATiling(_) => EXIT_PROPERTY,
            DetectError::LevelOutOfRange { .. } => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::usage(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

/// Runs the command line `args` (program name first).
pub fn run(args: &[String], out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    EXIT_OK
                }
                _ => EXIT_USAGE,
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load(path: &str) -> Result<TilingInstance, Failure> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{path}: {e}")))?;
    }
    parse_instance(&text).map_err(|e| Failure::usage(format!("{path}: Malformed: {e}")))
}

/// 1-based coordinate from the command line to 0-based.
fn coordinate(j: usize, dim: usize) -> Result<usize, Failure> {
    if j == 0 || j > dim {
        return Err(Failure::usage(format!("coordinate {j} outside 1..={dim}")));
    }
    Ok(j - 1)
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match command {
        Command::Verify { file } => {
            let x = load(&file)?;
            let report = verify(&x);
            match report.failure {
                None => {
                    writeln!(out, "valid {} tiles", x.len())?;
                    Ok(EXIT_OK)
                }
                Some(f) => {
                    writeln!(out, "{}", describe_failure(&f))?;
                    Ok(EXIT_PROPERTY)
                }
            }
        }
        Command::Columns { file, l, exact_l } => {
            let x = load(&file)?;
            let witnesses = match l {
                None => find_columns(&x)?,
                Some(l) => find_l_columns(&x, l, exact_l)?,
            };
            for w in &witnesses {
                writeln!(out, "{w}")?;
            }
            if witnesses.is_empty() {
                writeln!(err, "no column found")?;
                return Ok(EXIT_PROPERTY);
            }
            Ok(EXIT_OK)
        }
        Command::Faces { file } => {
            let x = load(&file)?;
            let faces = find_twin_faces(&x)?;
            for f in &faces {
                writeln!(out, "{f}")?;
            }
            if faces.is_empty() {
                writeln!(err, "no twin faces found")?;
                return Ok(EXIT_PROPERTY);
            }
            Ok(EXIT_OK)
        }
        Command::Slice { file, coord, index } => {
            let x = load(&file)?;
            let j = coordinate(coord, x.dim())?;
            if let Some(f) = verify(&x).failure {
                return Err(Failure::property(format!(
                    "not a tiling: {}",
                    describe_failure(&f)
                )));
            }
            let table = build_code_table(&x).map_err(|e| Failure::property(e.to_string()))?;
            let s = slice(&x, &table, j, index).map_err(|e| Failure::usage(e.to_string()))?;
            write!(out, "{}", s.to_tile_string())?;
            Ok(EXIT_OK)
        }
        Command::Canon { file } => {
            let x = load(&file)?;
            let key = canonical_form(&x).map_err(|e| Failure::usage(e.to_string()))?;
            writeln!(out, "{}", key.to_hex())?;
            Ok(EXIT_OK)
        }
        Command::Iso { file_a, file_b } => {
            let a = load(&file_a)?;
            let b = load(&file_b)?;
            match are_isomorphic(&a, &b) {
                Some(w) => {
                    let sigma: Vec<String> = w.sigma.iter().map(|s| (s + 1).to_string()).collect();
                    writeln!(out, "isomorphic sigma={}", sigma.join(","))?;
                    for (x, y) in &w.tile_map {
                        writeln!(out, "map {x} -> {y}")?;
                    }
                    Ok(EXIT_OK)
                }
                None => {
                    writeln!(out, "not isomorphic")?;
                    Ok(EXIT_PROPERTY)
                }
            }
        }
        Command::Shift {
            file,
            coord,
            coset,
            by,
        } => {
            let x = load(&file)?;
            let k = coordinate(coord, x.dim())?;
            let coset: Rational = coset
                .parse()
                .map_err(|e| Failure::usage(format!("--coset: {e}")))?;
            let y = slab_shift(&x, k, coset, by).map_err(|e| Failure::usage(e.to_string()))?;
            write!(out, "{}", y.to_tile_string())?;
            Ok(EXIT_OK)
        }
        Command::Permute { file, sigma } => {
            let x = load(&file)?;
            if sigma.contains(&0) {
                return Err(Failure::usage("--sigma entries are 1-based"));
            }
            let sigma: Vec<usize> = sigma.iter().map(|s| s - 1).collect();
            let y = permute_coords(&x, &sigma).map_err(|e| Failure::usage(e.to_string()))?;
            write!(out, "{}", y.to_tile_string())?;
            Ok(EXIT_OK)
        }
        Command::Extrude { file, dim } => {
            let x = load(&file)?;
            let y = extrude(&x, dim).map_err(|e| Failure::usage(e.to_string()))?;
            write!(out, "{}", y.to_tile_string())?;
            Ok(EXIT_OK)
        }
        Command::Sample {
            dim,
            res,
            seed,
            count,
        } => {
            for i in 0..count {
                let d = sample_tiling(dim, res, seed.wrapping_add(i), SAMPLE_BUDGET)?;
                if i > 0 {
                    writeln!(out, "{STREAM_SEPARATOR}")?;
                }
                write!(out, "{}", to_exact(&d).to_tile_string())?;
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate {
            dim,
            res,
            limit,
            dedup,
        } => {
            let options = EnumerateOptions {
                dedup_canonical: dedup,
                limit,
            };
            let mut count = 0usize;
            for d in enumerate_tilings(dim, res, options, SearchBudget::default())? {
                if count > 0 {
                    writeln!(out, "{STREAM_SEPARATOR}")?;
                }
                write!(out, "{}", to_exact(&d).to_tile_string())?;
                count += 1;
            }
            writeln!(err, "{count} tilings")?;
            Ok(EXIT_OK)
        }
        Command::ExportDimacs { dim, res } => {
            write!(out, "{}", export_dimacs(dim, res, SearchBudget::default())?)?;
            Ok(EXIT_OK)
        }
        Command::CheckTheorems {
            max_dim,
            samples,
            seed,
        } => check_theorems(max_dim, samples, seed, out),
    }
}

fn describe_failure(f: &VerifyFailure) -> String {
    match f {
        VerifyFailure::CountMismatch { expected, actual } => {
            format!("CountMismatch expected={expected} actual={actual}")
        }
        VerifyFailure::OverlapPair(u, v) => format!("OverlapPair ({u}) ({v})"),
        VerifyFailure::Malformed(detail) => format!("Malformed {detail}"),
    }
}

/// One row of the `check-theorems` table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremRow {
    pub dim: usize,
    pub res: u32,
    pub mode: &'static str,
    pub tilings: usize,
    pub valid: usize,
    pub with_column: usize,
}

impl TheoremRow {
    pub fn holds(&self) -> bool {
        self.tilings > 0 && self.valid == self.tilings && self.with_column == self.tilings
    }
}

/// Cap on the resolution-2 stream in dimension 3.
pub const DIM3_RES2_LIMIT: usize = 100_000;

/// The corpus behind `check-theorems`: exhaustive enumeration in
/// dimensions 2 and 3, seeded samples at resolution 2 from dimension 4 on.
pub fn theorem_rows(
    max_dim: usize,
    samples: u64,
    seed: u64,
) -> Result<Vec<TheoremRow>, SearchError> {
    let mut rows = Vec::new();
    let tally = |dim, res, mode, tilings: &mut dyn Iterator<Item = TilingInstance>| {
        let mut row = TheoremRow {
            dim,
            res,
            mode,
            tilings: 0,
            valid: 0,
            with_column: 0,
        };
        for x in tilings {
            row.tilings += 1;
            if verify(&x).valid {
                row.valid += 1;
                if find_columns(&x).is_ok_and(|c| !c.is_empty()) {
                    row.with_column += 1;
                }
            }
        }
        row
    };
    for dim in 2..=max_dim {
        match dim {
            2 => {
                for res in [1, 2] {
                    let mut it = enumerate_tilings(
                        2,
                        res,
                        EnumerateOptions::default(),
                        SearchBudget::default(),
                    )?
                    .map(|d| to_exact(&d));
                    rows.push(tally(2, res, "exhaustive", &mut it));
                }
            }
            3 => {
                let mut it =
                    enumerate_tilings(3, 1, EnumerateOptions::default(), SearchBudget::default())?
                        .map(|d| to_exact(&d));
                rows.push(tally(3, 1, "exhaustive", &mut it));
                let options = EnumerateOptions {
                    dedup_canonical: false,
                    limit: Some(DIM3_RES2_LIMIT),
                };
                let mut it = enumerate_tilings(3, 2, options, SearchBudget::default())?
                    .map(|d| to_exact(&d));
                let mut row = tally(3, 2, "exhaustive", &mut it);
                if row.tilings == DIM3_RES2_LIMIT {
                    row.mode = "prefix";
                }
                rows.push(row);
            }
            _ => {
                let mut tilings = Vec::new();
                for i in 0..samples {
                    tilings.push(to_exact(&sample_tiling(
                        dim,
                        2,
                        seed.wrapping_add(i),
                        SAMPLE_BUDGET,
                    )?));
                }
                rows.push(tally(dim, 2, "sampled", &mut tilings.into_iter()));
            }
        }
    }
    Ok(rows)
}

fn check_theorems(max_dim: usize, samples: u64, seed: u64, out: &mut dyn Write) -> CmdResult {
    if !(2..=6).contains(&max_dim) {
        return Err(Failure::usage("--max-dim must be in 2..=6"));
    }
    if samples == 0 {
        return Err(Failure::usage("--samples must be positive"));
    }
    let rows = theorem_rows(max_dim, samples, seed)?;
    writeln!(
        out,
        "{:<4} {:<4} {:<11} {:>8} {:>8} {:>12} status",
        "dim", "res", "mode", "tilings", "valid", "with_column"
    )?;
    let mut all = true;
    for r in &rows {
        let status = if r.holds() { "ok" } else { "FAIL" };
        all &= r.holds();
        writeln!(
            out,
            "{:<4} {:<4} {:<11} {:>8} {:>8} {:>12} {}",
            r.dim, r.res, r.mode, r.tilings, r.valid, r.with_column, status
        )?;
    }
    writeln!(out, "scope: period-2 discrete model only")?;
    Ok(if all { EXIT_OK } else { EXIT_PROPERTY })
}
