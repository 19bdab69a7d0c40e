//! `framectl`: command-line front end for the `framing` library.
//!
//! Exit codes: 0 success, 1 parse or I/O error, 2 outside the classified
//! range, 3 a checked predicate failed.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use framing::arf::{arf, arf1};
use framing::configurations::{
    build_genset, complementary_regions, intersection_graph, is_e_arboreal_spanning,
    is_h_assemblage_type_e, Configuration,
};
use framing::flat::{self, OneCylinderSurface, Q};
use framing::strata::{
    absolute_generating_descriptor, components, cover_component_counts,
    framed_to_absolute_surjective, pr_prime, prototype_arf, quotient_pr_prime,
    shear_generation_obstruction, ComponentDescriptor, ProngGroup,
};
use framing::twist_engine::{x_name, y_name, EngineState, MappingWord};
use framing::{Error, FramedSurface, PartitionKappa};

#[derive(Parser)]
#[command(
    name = "framectl",
    version,
    about = "Framed surfaces, strata components and flat surfaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Cover {
    Plain,
    Labeled,
    Prong,
}

#[derive(Subcommand)]
enum Command {
    /// Components of a stratum and its covers, with the arithmetic criteria.
    Classify {
        /// Zero orders, e.g. `3,1`.
        #[arg(long)]
        kappa: String,
        /// Report component counts of this cover.
        #[arg(long, value_enum)]
        cover: Option<Cover>,
    },
    /// One record per partition of 2g-2 for 4 <= g <= gmax.
    Atlas {
        #[arg(long)]
        gmax: usize,
        #[arg(short = 'o', long)]
        output: Option<PathBuf>,
    },
    /// Arf invariant of a framed surface given as JSON.
    Arf {
        file: PathBuf,
        /// Also check invariance under this many random twist words.
        #[arg(long, default_value_t = 0)]
        check_words: usize,
    },
    /// Predicates on a curve configuration given as JSON, or on a prototype.
    CheckConfig {
        file: Option<PathBuf>,
        /// Build the prototype system for this partition instead of reading a file.
        #[arg(long, conflicts_with = "file")]
        kappa: Option<String>,
        /// Prototype type (1 or 2).
        #[arg(long = "type", default_value_t = 1)]
        kind: u8,
        /// Print the configuration JSON instead of checking it.
        #[arg(long)]
        emit: bool,
        /// Curve order for the assemblage check, comma separated.
        #[arg(long)]
        order: Option<String>,
        /// Number of leading curves in `--order` forming the arboreal core.
        #[arg(long)]
        core: Option<usize>,
    },
    /// Checks a relation between two mapping words on a framed surface.
    Relations { file: PathBuf },
    /// One-cylinder surface: zeros, genus and saddle-arc winding numbers.
    Flat {
        /// Gluing permutation, e.g. `4,3,2,6,5,1`.
        #[arg(long)]
        perm: String,
        /// Segment lengths (rationals), default all 1.
        #[arg(long)]
        lengths: Option<String>,
        #[arg(long, default_value = "1")]
        height: String,
        #[arg(long, default_value = "0")]
        twist: String,
    },
}

enum Failure {
    Input(String),
    Range(String),
    Predicate(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::OutOfClassifiedRange(_) | Error::Overflow(_) => Failure::Range(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type CmdResult = Result<Value, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify { kappa, cover } => cmd_classify(kappa, *cover),
        Command::Atlas { gmax, output } => cmd_atlas(*gmax, output.as_deref()),
        Command::Arf { file, check_words } => cmd_arf(file, *check_words, cli.seed),
        Command::CheckConfig {
            file,
            kappa,
            kind,
            emit,
            order,
            core,
        } => cmd_check_config(
            file.as_deref(),
            kappa.as_deref(),
            *kind,
            *emit,
            order.as_deref(),
            *core,
        ),
        Command::Relations { file } => cmd_relations(file),
        Command::Flat {
            perm,
            lengths,
            height,
            twist,
        } => cmd_flat(perm, lengths.as_deref(), height, twist),
    };
    match result {
        Ok(v) => {
            emit(cli.format, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Range(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Predicate(v)) => {
            emit(cli.format, &v);
            ExitCode::from(3)
        }
    }
}

fn emit(format: Format, v: &Value) {
    let mut text = String::new();
    match format {
        Format::Json => {
            text = serde_json::to_string_pretty(v).expect("json value");
            text.push('\n');
        }
        Format::Text => render_text(v, 0, &mut text),
    }
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = io::stdout().lock().write_all(text.as_bytes());
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if val.is_object()
                    || val
                        .as_array()
                        .is_some_and(|a| a.iter().any(|x| x.is_object()))
                {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render_text(val, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(val)));
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if item.is_object() {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                } else {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_kappa(s: &str) -> Result<PartitionKappa, Failure> {
    s.parse::<PartitionKappa>().map_err(Failure::from)
}

fn criteria(kappa: &PartitionKappa) -> Value {
    let pg = ProngGroup::for_kappa(kappa).ok();
    // Too large to enumerate: the quotient is reported as null.
    let q = pg.as_ref().and_then(|pg| quotient_pr_prime(pg).ok());
    json!({
        "pr_order": pg.as_ref().map(ProngGroup::order),
        "pr_prime_order": pg.as_ref().map(|pg| pr_prime(pg).order()),
        "quotient": q.map(|q| to_value(&q)),
        "framed_to_absolute_surjective": framed_to_absolute_surjective(kappa),
        "shear_generation_obstruction": shear_generation_obstruction(kappa).ok(),
    })
}

fn cmd_classify(kappa: &str, cover: Option<Cover>) -> CmdResult {
    let kappa = parse_kappa(kappa)?;
    let comps: Vec<ComponentDescriptor> = components(&kappa)?;
    let mut out = json!({
        "kappa": kappa.parts(),
        "genus": kappa.genus(),
        "component_count": comps.len(),
        "components": to_value(&comps),
        "criteria": criteria(&kappa),
    });
    if let Some(cover) = cover {
        let table = cover_component_counts(&kappa)?;
        let rows: Vec<Value> = table
            .rows
            .iter()
            .map(|r| {
                let count = match cover {
                    Cover::Plain => r.plain,
                    Cover::Labeled => r.labeled,
                    Cover::Prong => r.prong,
                };
                json!({"kind": to_value(&r.kind), "arf": r.arf, "components": count})
            })
            .collect();
        let name = match cover {
            Cover::Plain => "plain",
            Cover::Labeled => "labeled",
            Cover::Prong => "prong",
        };
        out["cover"] = json!({"level": name, "sym_order": table.sym_order, "rows": rows});
    }
    Ok(out)
}

fn atlas_record(kappa: &PartitionKappa) -> Result<Value, Failure> {
    let comps = components(kappa)?;
    let mut record = criteria(kappa);
    record["kappa"] = json!(kappa.parts());
    record["genus"] = json!(kappa.genus());
    record["components"] = to_value(&comps);
    record["prototype_arf"] = json!({
        "type1": prototype_arf(kappa, 1),
        "type2": prototype_arf(kappa, 2),
    });
    Ok(record)
}

const ATLAS_GMAX: usize = 10;

fn cmd_atlas(gmax: usize, output: Option<&Path>) -> CmdResult {
    if gmax > ATLAS_GMAX {
        return Err(Failure::Range(format!("--gmax is limited to {ATLAS_GMAX}")));
    }
    let mut records = Vec::new();
    for g in 4..=gmax {
        for kappa in PartitionKappa::all_for_genus(g) {
            records.push(atlas_record(&kappa)?);
        }
    }
    let doc = json!({"gmax": gmax, "count": records.len(), "records": records});
    match output {
        Some(path) => {
            let text = serde_json::to_string_pretty(&doc).expect("json value");
            fs::write(path, text + "\n")
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok(json!({"written": path.display().to_string(), "count": doc["count"]}))
        }
        None => Ok(doc),
    }
}

fn cmd_arf(file: &Path, check_words: usize, seed: u64) -> CmdResult {
    let f = FramedSurface::from_json(&read_json(file)?)?;
    let s = f.surface();
    let mut out = if s.genus == 1 && s.boundaries == 1 {
        json!({"arf1": arf1(&f)?})
    } else if s.genus >= 2 {
        json!({"arf": arf(&f)})
    } else {
        return Err(Failure::Range(format!(
            "no Arf invariant is used for genus {} with {} boundary components",
            s.genus, s.boundaries
        )));
    };
    if check_words > 0 {
        let before = if s.genus >= 2 {
            i64::from(arf(&f))
        } else {
            arf1(&f)? as i64
        };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let names: Vec<String> = (1..=s.genus).flat_map(|i| [x_name(i), y_name(i)]).collect();
        let mut failures = 0usize;
        for _ in 0..check_words {
            let mut st = EngineState::new(f.clone());
            for _ in 0..rng.gen_range(1..=20) {
                let c = &names[rng.gen_range(0..names.len())];
                let m = rng.gen_range(-3..=3);
                st = st.apply_twist(c, m)?;
            }
            let g = st.current_framing();
            let after = if s.genus >= 2 {
                i64::from(arf(&g))
            } else {
                arf1(&g)? as i64
            };
            failures += usize::from(after != before);
        }
        out["seed"] = json!(seed);
        out["words_checked"] = json!(check_words);
        out["invariance_failures"] = json!(failures);
        if failures > 0 {
            return Err(Failure::Predicate(out));
        }
    }
    Ok(out)
}

fn cmd_check_config(
    file: Option<&Path>,
    kappa: Option<&str>,
    kind: u8,
    emit_only: bool,
    order: Option<&str>,
    core: Option<usize>,
) -> CmdResult {
    let mut extra = serde_json::Map::new();
    let config = match (file, kappa) {
        (Some(path), _) => Configuration::from_json(&read_json(path)?)?,
        (None, Some(k)) => {
            let kappa = parse_kappa(k)?;
            let build = build_genset(&kappa, kind)?;
            extra.insert("variant".into(), json!(build.variant));
            extra.insert("labeled_faces".into(), to_value(&build.faces));
            extra.insert("warnings".into(), json!(build.warnings));
            extra.insert(
                "generating_descriptor".into(),
                to_value(&absolute_generating_descriptor(&kappa)?),
            );
            build.config
        }
        (None, None) => {
            return Err(Failure::Input(
                "give a configuration file or --kappa".into(),
            ))
        }
    };
    if emit_only {
        return Ok(config.to_json());
    }
    let regions = complementary_regions(&config)?;
    let graph = intersection_graph(&config);
    let diagnosis = is_e_arboreal_spanning(&config)?;
    let faces: Vec<Value> = regions
        .faces
        .iter()
        .map(|f| json!({"sides": f.sides, "wn": f.winding_number(), "curves": f.curves}))
        .collect();
    let mut out = json!({
        "curves": config.curves.len(),
        "crossings": config.intersections.len(),
        "euler_characteristic": regions.euler_characteristic,
        "neighborhood_genus": regions.genus,
        "faces": faces,
        "graph": {"tree": graph.is_tree(), "path": graph.is_path(), "e6": graph.find_e6().is_some()},
        "e_arboreal_spanning": to_value(&diagnosis),
    });
    let mut holds = diagnosis.holds;
    if let Some(order) = order {
        let names: Vec<&str> = order.split(',').map(str::trim).collect();
        let core = core.ok_or_else(|| Failure::Input("--order needs --core".into()))?;
        let report = is_h_assemblage_type_e(&config, &names, core)?;
        holds = report.holds;
        out["assemblage"] = to_value(&report);
    }
    for (k, v) in extra {
        out[k] = v;
    }
    out["pass"] = json!(holds);
    if holds {
        Ok(out)
    } else {
        Err(Failure::Predicate(out))
    }
}

/// Relation file: `{"framing": ..., "curves": [{"name", "class", "wn"}],
/// "left": word, "right": word}`.
fn cmd_relations(file: &Path) -> CmdResult {
    let v = read_json(file)?;
    let f = FramedSurface::from_json(&v["framing"])?;
    let s = f.surface();
    let mut st = EngineState::new(f);
    for c in v["curves"].as_array().into_iter().flatten() {
        let name = c["name"]
            .as_str()
            .ok_or_else(|| Failure::Input("curve without a name".into()))?;
        let coeffs: Vec<i64> = serde_json::from_value(c["class"].clone())
            .map_err(|e| Failure::Input(format!("curve `{name}`: {e}")))?;
        let wn = c["wn"]
            .as_i64()
            .ok_or_else(|| Failure::Input(format!("curve `{name}` needs an integer wn")))?;
        st = st.with_curve(name, s.absolute(coeffs)?, wn)?;
    }
    let word = |key: &str| -> Result<MappingWord, Failure> {
        serde_json::from_value(v[key].clone()).map_err(|e| Failure::Input(format!("{key}: {e}")))
    };
    let report = st.verify_relation(&word("left")?, &word("right")?)?;
    let out = json!({
        "homology_equal": report.homology_equal,
        "wn_equal": report.wn_equal,
        "scope": report.scope,
        "pass": report.passes(),
    });
    if report.passes() {
        Ok(out)
    } else {
        Err(Failure::Predicate(out))
    }
}

fn cmd_flat(perm: &str, lengths: Option<&str>, height: &str, twist: &str) -> CmdResult {
    let perm = flat::parse_perm(perm)?;
    let lengths: Vec<Q> = match lengths {
        Some(l) => l.split(',').map(flat::parse_q).collect::<Result<_, _>>()?,
        None => vec![Q::from_integer(1); perm.len()],
    };
    let s = OneCylinderSurface::from_permutation(
        perm,
        lengths,
        flat::parse_q(height)?,
        flat::parse_q(twist)?,
    )?;
    let zeros: Vec<Value> = s
        .zeros()
        .iter()
        .enumerate()
        .map(|(i, z)| {
            let corners: Vec<String> = z.cycle.iter().map(|c| c.to_string()).collect();
            json!({"index": i + 1, "order": z.order, "corners": corners})
        })
        .collect();
    let mut tables = Vec::new();
    let mut complete = true;
    let genuine: Vec<usize> = (1..=s.zeros().len())
        .filter(|&i| s.zeros()[i - 1].order > 0)
        .collect();
    for &p in &genuine {
        for &q in &genuine {
            if p == q {
                continue;
            }
            let t = flat::saddle_arc_table(&s, p, q, 0)?;
            let full = t.residues == flat::full_half_residues(t.modulus);
            complete &= full;
            let arcs: Vec<Value> = t
                .arcs
                .iter()
                .map(
                    |a| json!({"top_corner": format!("T{}", a.top_corner), "wn": a.wn.to_string()}),
                )
                .collect();
            let residues: Vec<String> = t.residues.iter().map(|r| r.to_string()).collect();
            tables.push(json!({
                "p": p, "q": q, "prong_p": 0, "modulus": t.modulus,
                "arcs": arcs, "residues": residues, "full_residue_set": full,
            }));
        }
    }
    let blowups: Vec<Value> = genuine
        .iter()
        .map(|&z| -> Result<Value, Failure> {
            let wn = flat::turning_wn(&flat::blowup_boundary(&s, z)?, &s)?;
            Ok(json!({"zero": z, "wn": wn.to_string()}))
        })
        .collect::<Result<_, _>>()?;
    let out = json!({
        "surface": s.to_json(),
        "kappa": s.kappa(),
        "genus": s.genus(),
        "degenerate": s.is_degenerate(),
        "zeros": zeros,
        "blowup_boundary_wn": blowups,
        "saddle_arcs": tables,
    });
    if complete {
        Ok(out)
    } else {
        Err(Failure::Predicate(out))
    }
}
