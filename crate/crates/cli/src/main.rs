//! `kakeya`: build, count, bound, search and verify Kakeya sets over F_q.
//!
//! Exit status: 0 success, 1 a verification came out false, 2 usage or
//! input error, 3 work budget exceeded or arithmetic overflow.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kakeya_core::constructions::{ConstructionKind, ConstructionResult, Variant};
use kakeya_core::exact::{checked_pow, Half};
use kakeya_core::field::odd_prime_power;
use kakeya_core::geometry::{
    diagonal_count_bruteforce, diagonal_count_closed, diagonal_deviation, DiagonalEq, SetFile,
};
use kakeya_core::report::{build, report_rows, write_csv, ReportRow};
use kakeya_core::search::{greedy_circular, minimal_circular_exact, SearchConfig};
use kakeya_core::verification::{
    circular_lower_bounds, diff_cover, sphere_pair_bound, spherical_lower_bound, sum_cover,
    verify_center_kakeya, verify_radius_kakeya, VerifyMode, WorkBudget,
};
use kakeya_core::{Field, FieldElement, KakeyaError, PointSet};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "kakeya",
    version,
    about = "Spherical and circular Kakeya sets over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyWith {
    Witness,
    Exhaustive,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Radius,
    Center,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Build a construction and check it.
    Construct {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long, default_value_t = 1)]
        n: usize,
        #[arg(long)]
        which: ConstructionKind,
        /// Required for the circular constructions.
        #[arg(long)]
        variant: Option<Variant>,
        /// Rank of the nonsquare used by center-spherical.
        #[arg(long)]
        nonsquare: Option<u64>,
        #[arg(long, value_enum, default_value_t = VerifyWith::Witness)]
        verify: VerifyWith,
        #[arg(long, default_value_t = WorkBudget::default().0)]
        budget: u128,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also write the point set as a set file.
        #[arg(long)]
        save_set: Option<PathBuf>,
    },
    /// Verify a saved set file by full search.
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        kind: Variant,
        #[arg(long, default_value_t = WorkBudget::default().0)]
        budget: u128,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Count solutions of a1 x1^2 + ... + an xn^2 = b.
    Count {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Comma-separated coefficient ranks.
        #[arg(long, value_delimiter = ',', required = true)]
        coeffs: Vec<u64>,
        #[arg(long)]
        rhs: u64,
        /// Also count by enumeration.
        #[arg(long)]
        brute: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Print the size bounds for (q, n).
    Bound {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Smallest one-dimensional Kakeya set.
    Search {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        kind: Variant,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[arg(long, default_value_t = SearchConfig::default().max_q)]
        max_q: u64,
        #[arg(long, default_value_t = SearchConfig::default().node_budget)]
        node_budget: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Size-versus-bound table over a sweep.
    Report {
        #[arg(long)]
        which: ConstructionKind,
        #[arg(long, value_delimiter = ',')]
        q_list: Vec<u64>,
        #[arg(long, value_delimiter = ',')]
        n_list: Vec<usize>,
        #[arg(long, value_enum, default_value_t = VariantArg::Both)]
        variant: VariantArg,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Core(KakeyaError),
    Usage(String),
}

impl From<KakeyaError> for Failure {
    fn from(e: KakeyaError) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(KakeyaError::BudgetExceeded { .. } | KakeyaError::Overflow(_)) => 3,
            _ => 2,
        }
    }
}

/// Whether every check in the output passed.
type Outcome = Result<bool, Failure>;

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn csv_text(rows: &[ReportRow]) -> Result<String, Failure> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

fn exhaustive_check(res: &ConstructionResult, budget: WorkBudget) -> Outcome {
    let cover = |f: fn(&Field, &[FieldElement]) -> bool| {
        let field = res.points.space().field();
        f(
            field,
            res.elements()
                .expect("circular results list their elements"),
        )
    };
    match res.construction {
        ConstructionKind::RadiusSpherical => Ok(verify_radius_kakeya(
            &res.points,
            VerifyMode::Exhaustive(budget),
        )?),
        ConstructionKind::CenterSpherical => Ok(verify_center_kakeya(
            &res.points,
            VerifyMode::Exhaustive(budget),
        )?),
        ConstructionKind::HypersphereUnion => Err(Failure::Usage(
            "exhaustive verification is not available for hypersphere-union; use --verify witness"
                .into(),
        )),
        _ => Ok(match res.variant {
            Some(Variant::Radius) => cover(diff_cover),
            _ => cover(sum_cover),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn construct(
    p: u64,
    k: u32,
    n: usize,
    which: ConstructionKind,
    variant: Option<Variant>,
    nonsquare: Option<u64>,
    verify: VerifyWith,
    budget: u128,
    format: Format,
    output: Option<&Path>,
    save_set: Option<&Path>,
) -> Outcome {
    let field = Field::new(p, k)?;
    let nonsquare = nonsquare.map(|r| field.elem(r)).transpose()?;
    if which.is_circular() && variant.is_none() {
        return Err(Failure::Usage(format!(
            "{which} needs --variant radius|center"
        )));
    }
    if verify != VerifyWith::Witness && which == ConstructionKind::HypersphereUnion {
        return Err(Failure::Usage(
            "exhaustive verification is not available for hypersphere-union".into(),
        ));
    }
    let res = build(which, &field, n, variant, nonsquare)?;
    let exhaustive = match verify {
        VerifyWith::Witness => None,
        _ => Some(exhaustive_check(&res, WorkBudget(budget))?),
    };
    let summary = res.summary(exhaustive);
    let mut ok = exhaustive.unwrap_or(true);
    if verify != VerifyWith::Exhaustive {
        ok &= summary.witness_valid;
    }

    if let Some(path) = save_set {
        let text = serde_json::to_string(&res.points.to_set_file()).expect("set files serialize");
        emit(Some(path), &(text + "\n"))?;
    }
    let text = match format {
        Format::Csv => csv_text(&[ReportRow::from_result(&res)])?,
        Format::Json => {
            let mut v = serde_json::to_value(&summary).expect("summaries serialize");
            if let Some(elements) = res.elements() {
                let obj = v.as_object_mut().expect("summary is an object");
                obj.insert(
                    "elements".into(),
                    json!(elements.iter().map(|x| x.rank()).collect::<Vec<_>>()),
                );
                obj.insert(
                    "differenceCover".into(),
                    json!(diff_cover(&field, elements)),
                );
                obj.insert("sumCover".into(), json!(sum_cover(&field, elements)));
            }
            json_text(&v)
        }
    };
    emit(output, &text)?;
    Ok(ok)
}

fn verify(input: &Path, kind: Variant, budget: u128, output: Option<&Path>) -> Outcome {
    let text = fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let file: SetFile = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("bad set file {}: {e}", input.display())))?;
    let set: PointSet = file.into_point_set()?;
    let space = set.space().clone();
    let field = space.field();
    let (q, n) = (field.q(), space.dim());
    let size = set.len();

    let (verdict, bound) = if n == 1 {
        let elements: Vec<FieldElement> = set
            .iter()
            .map(|r| field.elem(r))
            .collect::<Result<_, _>>()?;
        let (radius_min, center_min) = circular_lower_bounds(q);
        match kind {
            Variant::Radius => (
                diff_cover(field, &elements),
                Half::from_int(radius_min as i128),
            ),
            Variant::Center => (
                sum_cover(field, &elements),
                Half::from_int(center_min as i128),
            ),
        }
    } else {
        let mode = VerifyMode::Exhaustive(WorkBudget(budget));
        let verdict = match kind {
            Variant::Radius => verify_radius_kakeya(&set, mode)?,
            Variant::Center => verify_center_kakeya(&set, mode)?,
        };
        (verdict, spherical_lower_bound(q, n)?.value)
    };
    let bound_met = size as i128 >= bound.ceil();
    let v = json!({
        "q": q,
        "p": field.p(),
        "k": field.k(),
        "n": n,
        "kind": kind.name(),
        "size": size,
        "verdict": verdict,
        "bound": bound,
        "boundMet": bound_met,
    });
    emit(output, &json_text(&v))?;
    Ok(verdict)
}

fn count(p: u64, k: u32, coeffs: &[u64], rhs: u64, brute: bool, output: Option<&Path>) -> Outcome {
    let field = Field::new(p, k)?;
    let coeffs: Vec<FieldElement> = coeffs
        .iter()
        .map(|&r| field.elem(r))
        .collect::<Result<_, _>>()?;
    let eq = DiagonalEq::new(coeffs, field.elem(rhs)?)?;
    let closed = diagonal_count_closed(&field, &eq)?;
    let q = field.q();
    let n = eq.dim() as u32;
    let main = checked_pow(q, n - 1)?;
    let mut v = json!({
        "q": q,
        "n": n,
        "coeffs": eq.coeffs().iter().map(|c| c.rank()).collect::<Vec<_>>(),
        "rhs": rhs,
        "count": closed,
        "mainTerm": main,
        "deviation": (closed as i128 - main as i128),
        "deviationMagnitude": diagonal_deviation(q, n, eq.rhs().is_zero())?,
    });
    let mut ok = true;
    if brute {
        let b = diagonal_count_bruteforce(&field, &eq)?;
        ok = b == closed;
        let obj = v.as_object_mut().expect("object");
        obj.insert("bruteForce".into(), json!(b));
        obj.insert("agree".into(), json!(ok));
    }
    emit(output, &json_text(&v))?;
    Ok(ok)
}

fn bound(q: u64, n: usize, output: Option<&Path>) -> Outcome {
    let v = if n == 1 {
        if odd_prime_power(q).is_none() {
            return Err(KakeyaError::NotOddPrimePower(q).into());
        }
        let (radius_min, center_min) = circular_lower_bounds(q);
        json!({ "q": q, "n": 1, "radiusMin": radius_min, "centerMin": center_min })
    } else {
        let report = spherical_lower_bound(q, n)?;
        let mut v = serde_json::to_value(report).expect("bound reports serialize");
        v.as_object_mut()
            .expect("object")
            .insert("spherePairBound".into(), json!(sphere_pair_bound(q, n)?));
        v
    };
    emit(output, &json_text(&v))?;
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: u64,
    k: u32,
    kind: Variant,
    method: Method,
    max_q: u64,
    node_budget: u64,
    output: Option<&Path>,
) -> Outcome {
    let field = Field::new(p, k)?;
    let v = match method {
        Method::Exact => {
            let out = minimal_circular_exact(&field, kind, SearchConfig { max_q, node_budget })?;
            serde_json::to_value(out).expect("outcomes serialize")
        }
        Method::Greedy => {
            serde_json::to_value(greedy_circular(&field, kind)).expect("outcomes serialize")
        }
    };
    emit(output, &json_text(&v))?;
    Ok(true)
}

fn report(
    which: ConstructionKind,
    q_list: &[u64],
    n_list: &[usize],
    variant: VariantArg,
    format: Format,
    output: Option<&Path>,
) -> Outcome {
    let variants: &[Variant] = match variant {
        VariantArg::Radius => &[Variant::Radius],
        VariantArg::Center => &[Variant::Center],
        VariantArg::Both => &[Variant::Radius, Variant::Center],
    };
    let rows = report_rows(which, q_list, n_list, variants)?;
    let ok = rows.iter().all(|r| r.bound_met && r.witness_valid);
    let text = match format {
        Format::Csv => csv_text(&rows)?,
        Format::Json => json_text(&serde_json::to_value(&rows).expect("rows serialize")),
    };
    emit(output, &text)?;
    Ok(ok)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Construct {
            p,
            k,
            n,
            which,
            variant,
            nonsquare,
            verify,
            budget,
            format,
            output,
            save_set,
        } => construct(
            p,
            k,
            n,
            which,
            variant,
            nonsquare,
            verify,
            budget,
            format,
            output.as_deref(),
            save_set.as_deref(),
        ),
        Command::Verify {
            input,
            kind,
            budget,
            output,
        } => verify(&input, kind, budget, output.as_deref()),
        Command::Count {
            p,
            k,
            coeffs,
            rhs,
            brute,
            output,
        } => count(p, k, &coeffs, rhs, brute, output.as_deref()),
        Command::Bound { q, n, output } => bound(q, n, output.as_deref()),
        Command::Search {
            p,
            k,
            kind,
            method,
            max_q,
            node_budget,
            output,
        } => search(p, k, kind, method, max_q, node_budget, output.as_deref()),
        Command::Report {
            which,
            q_list,
            n_list,
            variant,
            format,
            output,
        } => report(which, &q_list, &n_list, variant, format, output.as_deref()),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(failure) => {
            match &failure {
                Failure::Core(e) => eprintln!("error: {e}"),
                Failure::Usage(msg) => eprintln!("error: {msg}"),
            }
            ExitCode::from(failure.exit_code())
        }
    }
}
