use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use malcev_core::ce::{ce_cohomology, quadratic_obstruction_report};
use malcev_core::envelope::bch;
use malcev_core::hull::{
    compute_hull, compute_hull_dga, pairing_nonfree_check, quadratic_part, weight_report, HullResult, WeightTable,
};
use malcev_core::json::{self as js, vector_to_json};
use malcev_core::local_systems::pointed_sdc;
use malcev_core::{Error, FreeLieAlgebra, NilpotentAlgebra, Scalar, Q};

#[derive(Parser)]
#[command(name = "malcev", version, about = "Malcev Lie algebras of finite simplicial sets, exactly")]
struct Cli {
    /// json: JSON on stdout and a one-line summary on stderr; summary: text only
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Summary,
}

#[derive(Subcommand)]
enum Command {
    /// Graded dimensions of the free Lie algebra
    FreeDims {
        #[arg(long)]
        generators: usize,
        #[arg(long)]
        class: usize,
    },
    /// Baker–Campbell–Hausdorff product log(e^x e^y)
    Bch {
        #[arg(long)]
        class: usize,
        /// Two LieElement JSON files (default: the generators of L(x,y))
        #[arg(long, num_args = 2, value_names = ["X", "Y"])]
        lie: Option<Vec<PathBuf>>,
    },
    /// Hull presentation of the Malcev Lie algebra of a pointed space or dg-algebra
    Malcev {
        #[arg(long, conflicts_with = "dga", required_unless_present = "dga")]
        space: Option<PathBuf>,
        #[arg(long)]
        dga: Option<PathBuf>,
        #[arg(long)]
        class: usize,
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Chevalley–Eilenberg cohomology, cup and Massey products of a nilpotent algebra
    Ce {
        #[arg(long)]
        algebra: PathBuf,
        /// Three degree-1 cochains: a basis name `x` for x∨, or comma-separated coefficients
        #[arg(long, num_args = 3, value_names = ["A", "B", "C"])]
        massey: Option<Vec<String>>,
    },
    /// Admissible relation bracket lengths for a weight table
    WeightsReport {
        #[arg(long)]
        h1: String,
        #[arg(long)]
        h2: String,
    },
    /// Nondegeneracy of a cup pairing and non-freeness of its class-3 quotient
    PairingCheck {
        #[arg(long)]
        cup: PathBuf,
    },
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Value, String), Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Core(Error::Json(format!("{}: {e}", path.display()))))
}

fn parse_ints(s: &str, what: &str) -> Result<Vec<i64>, Failure> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse().map_err(|_| Failure::Usage(format!("{what}: {t:?} is not an integer"))))
        .collect()
}

fn free_dims(generators: usize, class: usize) -> Outcome {
    if generators == 0 {
        return Err(Failure::Usage("--generators must be positive".into()));
    }
    let names: Vec<String> = (1..=generators).map(|i| format!("g{i}")).collect();
    let free = FreeLieAlgebra::on_names(&names, class).map_err(|e| match e {
        Error::InvalidAlphabet(_) => Failure::Usage(e.to_string()),
        e => Failure::Core(e),
    })?;
    let dims = free.graded_dims();
    let summary = format!("free Lie algebra on {generators} generators, class {class}: dims {dims:?}");
    Ok((json!({"generators": generators, "class": class, "dims": dims}), summary))
}

fn generator_names(v: &Value) -> Vec<String> {
    match v.get("generators").and_then(Value::as_array) {
        Some(g) => g.iter().filter_map(|n| n.as_str().map(String::from)).collect(),
        None => v
            .get("terms")
            .and_then(Value::as_array)
            .into_iter()
            .flatten()
            .filter_map(|t| t.get("word").and_then(Value::as_str))
            .flat_map(|w| w.chars().map(|c| c.to_string()).collect::<Vec<_>>())
            .collect(),
    }
}

fn run_bch(class: usize, lie: Option<Vec<PathBuf>>) -> Outcome {
    let (x, y) = match lie {
        None => {
            let free = FreeLieAlgebra::on_names(&["x", "y"], class).map_err(|e| Failure::Usage(e.to_string()))?;
            (free.generator(0), free.generator(1))
        }
        Some(paths) => {
            let (vx, vy) = (read_json(&paths[0])?, read_json(&paths[1])?);
            let mut names = generator_names(&vx);
            names.extend(generator_names(&vy));
            names.sort();
            names.dedup();
            let free = FreeLieAlgebra::on_names(&names, class).map_err(|e| Failure::Usage(e.to_string()))?;
            (js::lie_from_json_in(&vx, &free)?, js::lie_from_json_in(&vy, &free)?)
        }
    };
    let z = bch(&x, &y)?;
    let summary = format!("log(e^x e^y) = {z}");
    Ok((js::lie_to_json(&z), summary))
}

fn run_malcev(space: Option<PathBuf>, dga: Option<PathBuf>, class: usize, weights: Option<PathBuf>) -> Outcome {
    let weights = weights.map(|p| read_json(&p).and_then(|v| Ok(js::weights_from_json(&v)?))).transpose()?;
    let hull: HullResult<Q> = if let Some(path) = space {
        let k = js::space_from_json(&read_json(&path)?)?;
        if !k.is_connected() {
            return Err(Error::Disconnected.into());
        }
        let s = pointed_sdc(Arc::new(k), NilpotentAlgebra::abelian(1));
        compute_hull(&s, class, weights.as_ref())?
    } else {
        let a = js::dga_from_json(&read_json(&dga.expect("clap enforces one input"))?)?;
        compute_hull_dga(&a, class, weights.as_ref())?
    };
    let form = quadratic_part(&hull);
    let half = Q::ratio(1, 2);
    let matches = form
        .iter()
        .zip(&hull.cup)
        .all(|(f, c)| f.iter().zip(c).all(|(fr, cr)| fr.iter().zip(cr).all(|(a, b)| *a == b.clone() * half.clone())));
    let mut out = js::hull_to_json(&hull);
    out["quadratic_part"] =
        Value::Array(form.iter().map(|m| Value::Array(m.iter().map(|r| vector_to_json(r)).collect())).collect());
    out["quadratic_part_is_half_cup"] = json!(matches);
    out["is_ideal_quadratic"] = json!(hull.presentation.is_ideal_quadratic());
    let mut summary = format!(
        "hull: {} generators, {} relations, quotient dims {:?}, quadratic part = ½ cup: {matches}",
        hull.h1_dim(),
        hull.h2_dim(),
        hull.quotient_dims()
    );
    if let Some(w) = &hull.weights {
        let r = weight_report(w);
        summary.push_str(&format!(", weight verdict {}", r.verdict.as_str()));
        out["weight_report"] = weight_report_json(w);
    }
    Ok((out, summary))
}

fn cochain(h: &malcev_core::ce::CECohomology<Q>, arg: &str) -> Result<Vec<Q>, Failure> {
    let names = h.complex.algebra().names();
    let arg = arg.trim().trim_end_matches('∨');
    if let Some(i) = names.iter().position(|n| n == arg) {
        let mut v = vec![Q::from_int(0); names.len()];
        v[i] = Q::from_int(1);
        return Ok(v);
    }
    let v: Vec<Q> = arg
        .split(',')
        .map(|t| malcev_core::parse_rational(t).ok_or_else(|| Failure::Usage(format!("bad cochain {arg:?}"))))
        .collect::<Result<_, _>>()?;
    if v.len() != names.len() {
        return Err(Failure::Usage(format!("cochain {arg:?} needs {} coefficients", names.len())));
    }
    Ok(v)
}

fn run_ce(algebra: &Path, massey: Option<Vec<String>>) -> Outcome {
    let n = js::nilpotent_from_json(&read_json(algebra)?)?;
    let h = ce_cohomology(&n);
    let cx = &h.complex;
    let basis = |k: usize, vs: &[Vec<Q>]| -> Value {
        Value::Array(vs.iter().map(|v| json!({"cochain": cx.format(k, v), "coords": vector_to_json(v)})).collect())
    };
    let cup = h.cup_matrix();
    // cup[i][k][j] → [j][i][k]
    let by_xi: Vec<Vec<Vec<Q>>> =
        (0..h.h2.len()).map(|j| cup.iter().map(|row| row.iter().map(|c| c[j].clone()).collect()).collect()).collect();
    let mut out = json!({
        "algebra": js::nilpotent_to_json(&n),
        "dims": {"h0": h.dims[0], "h1": h.dims[1], "h2": h.dims[2]},
        "h1_basis": basis(1, &h.h1),
        "h2_basis": basis(2, &h.h2),
        "cup": js::cup_to_json(&by_xi, h.h1.len()),
        "cup_vanishes": cup.iter().flatten().all(|c| c.iter().all(|x| *x == Q::from_int(0))),
    });
    let mut summary = format!("H¹ = {}, H² = {}", h.dims[1], h.dims[2]);
    if let Some(args) = massey {
        let v: Vec<Vec<Q>> = args.iter().map(|a| cochain(&h, a)).collect::<Result<_, _>>()?;
        let m = h.massey_triple(&v[0], &v[1], &v[2])?;
        summary.push_str(&format!(
            ", ⟨{}⟩ = {} ({})",
            args.join(","),
            cx.format(2, &m.representative),
            if m.vanishes { "vanishes" } else { "nonvanishing" }
        ));
        out["massey"] = json!({
            "arguments": args,
            "representative": {"cochain": cx.format(2, &m.representative), "coords": vector_to_json(&m.representative)},
            "class": vector_to_json(&m.class),
            "indeterminacy": m.indeterminacy.iter().map(|b| vector_to_json(b)).collect::<Vec<_>>(),
            "vanishes": m.vanishes,
        });
    }
    let r = quadratic_obstruction_report(&n);
    summary.push_str(&format!(", {}", r.verdict));
    let witness = r.witness.as_ref().map_or(Value::Null, |([i, j, k], m)| {
        json!({
            "triple": [cx.format(1, &h.h1[*i]), cx.format(1, &h.h1[*j]), cx.format(1, &h.h1[*k])],
            "representative": cx.format(2, &m.representative),
            "indeterminacy_dim": m.indeterminacy.len(),
        })
    });
    out["quadratic_obstruction"] = json!({"verdict": r.verdict, "witness": witness, "triples_checked": r.triples_checked});
    Ok((out, summary))
}

fn weight_report_json(w: &WeightTable) -> Value {
    let r = weight_report(w);
    let per: Vec<Value> = r.per_relation.iter().map(|(m, l)| json!({"weight": m, "lengths": l})).collect();
    json!({"h1": w.h1, "h2": w.h2, "per_relation": per, "lengths": r.lengths, "verdict": r.verdict.as_str()})
}

fn run_weights(h1: &str, h2: &str) -> Outcome {
    let w = WeightTable { h1: parse_ints(h1, "--h1")?, h2: parse_ints(h2, "--h2")? };
    let r = weight_report(&w);
    let summary = format!("bracket lengths {:?}, verdict {}", r.lengths, r.verdict.as_str());
    Ok((weight_report_json(&w), summary))
}

fn run_pairing(cup: &Path) -> Outcome {
    let (cup, h1) = js::cup_from_json(&read_json(cup)?)?;
    let v = pairing_nonfree_check(&cup, h1)?;
    let verdict = match (v.nondegenerate, v.not_free) {
        (false, _) => "degenerate pairing",
        (true, true) => "class-3 quotient not free",
        (true, false) => "no conclusion",
    };
    let out = json!({
        "h1_dim": h1,
        "h2_dim": cup.len(),
        "nondegenerate": v.nondegenerate,
        "quotient_dims": v.quotient_dims,
        "free_dims": v.free_dims,
        "not_free": v.not_free,
        "verdict": verdict,
    });
    let summary = match (&v.quotient_dims, &v.free_dims) {
        (Some(q), Some(f)) => format!("{verdict}: quotient dims {q:?} vs free {f:?}"),
        _ => verdict.to_string(),
    };
    Ok((out, summary))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::FreeDims { generators, class } => free_dims(generators, class),
        Command::Bch { class, lie } => run_bch(class, lie),
        Command::Malcev { space, dga, class, weights } => run_malcev(space, dga, class, weights),
        Command::Ce { algebra, massey } => run_ce(&algebra, massey),
        Command::WeightsReport { h1, h2 } => run_weights(&h1, &h2),
        Command::PairingCheck { cup } => run_pairing(&cup),
    };
    match outcome {
        Ok((value, summary)) => {
            match cli.format {
                // a closed stdout (e.g. `| head`) is not an error
                Format::Json => {
                    let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&value).expect("serialisable"));
                    eprintln!("{summary}");
                }
                Format::Summary => {
                    let _ = writeln!(std::io::stdout(), "{summary}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        // an out-of-range --class is a bad flag value
        Err(Failure::Core(e @ Error::ClassOutOfRange { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_internal() { 4 } else { 3 })
        }
    }
}
