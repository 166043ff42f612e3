use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use pcnnf_core::cardinality::eo_pairwise;
use pcnnf_core::cnf::{dimacs_string, read_dimacs, Cnf, Lit, VarLabel, VarMap};
use pcnnf_core::encoder::{booleanize, CnfEncoding, EncodingKind};
use pcnnf_core::error::{CoverError, DnnfError, EncodeError, LabError};
use pcnnf_core::fixtures;
use pcnnf_core::nnf::{
    enumerate_models_capped, generate_random_smooth_dnnf, mdd_expansion_dnnf, parse_dnnf_with_warnings,
    smooth_transform, validate as validate_dnnf, Dnnf, GeneratorLimits,
};
use pcnnf_core::pipeline::{claim_formula, claimed_property, prepare, PrepareError, Prepared};
use pcnnf_core::propagation::{
    implication_violations, scope_vars, verify_strength, Oracle, Property, Scope, StrengthReport, Verdict,
    VerifyOptions,
};
use pcnnf_core::separator::{validate_cover, LevelMode};
use serde_json::{json, Value};

use crate::SweepArgs;

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;
pub const EXIT_COUNTEREXAMPLE: u8 = 4;
pub const EXIT_LIMIT: u8 = 5;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

type CmdResult = Result<u8, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| fail(EXIT_INTERNAL, format!("cannot read {}: {e}", path.display())))
}

/// Writes to `path`, or to standard output when there is none.
fn emit(path: Option<&Path>, content: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, content).map_err(|e| fail(EXIT_INTERNAL, format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(content.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| fail(EXIT_INTERNAL, format!("cannot write to stdout: {e}")))
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn load_dnnf(path: &Path) -> Result<Dnnf, Failure> {
    let text = read(path)?;
    let (dnnf, warnings) =
        parse_dnnf_with_warnings(&text).map_err(|e| fail(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    for w in warnings {
        eprintln!("warning: {}: {w}", path.display());
    }
    Ok(dnnf)
}

fn load_dimacs(path: &Path) -> Result<(Cnf, VarMap), Failure> {
    let doc = read_dimacs(&read(path)?).map_err(|e| fail(EXIT_INVALID, format!("{}: {e}", path.display())))?;
    Ok((doc.cnf, doc.map))
}

fn require_smooth(dnnf: &Dnnf) -> Result<(), Failure> {
    let report = validate_dnnf(dnnf);
    if report.is_valid() {
        Ok(())
    } else {
        Err(fail(
            EXIT_INVALID,
            format!("input is not a valid smooth DNNF:\n{}", report.to_string().trim_end()),
        ))
    }
}

fn prepare_error(e: PrepareError) -> Failure {
    match e {
        PrepareError::Dnnf(e @ (DnnfError::NotDecomposable | DnnfError::ConstantFalse | DnnfError::Structure(_))) => {
            fail(EXIT_INVALID, e.to_string())
        }
        PrepareError::Cover(e @ CoverError::NotStrictlyLeveled(_)) => fail(EXIT_INVALID, e.to_string()),
        other => fail(EXIT_INTERNAL, other.to_string()),
    }
}

fn encode_error(e: EncodeError) -> Failure {
    match e {
        EncodeError::NotSmooth
        | EncodeError::NotDecomposable
        | EncodeError::Constant(_)
        | EncodeError::Invalid(_)
        | EncodeError::NonBoolean(_) => fail(EXIT_INVALID, e.to_string()),
        other => fail(EXIT_INTERNAL, other.to_string()),
    }
}

pub fn validate(path: &Path) -> CmdResult {
    let dnnf = load_dnnf(path)?;
    let report = validate_dnnf(&dnnf);
    emit(None, &report.to_string())?;
    Ok(if report.is_valid() { EXIT_OK } else { EXIT_INVALID })
}

pub fn smooth(path: &Path, out: Option<&Path>) -> CmdResult {
    let dnnf = load_dnnf(path)?;
    let smoothed = smooth_transform(&dnnf).map_err(|e| fail(EXIT_INVALID, e.to_string()))?;
    if smoothed == dnnf {
        eprintln!("input is already smooth");
    } else {
        eprintln!("smoothed: {} → {} nodes", dnnf.len(), smoothed.len());
    }
    emit(out, &smoothed.to_text())?;
    Ok(EXIT_OK)
}

fn cover_document(p: &Prepared) -> Result<Value, Failure> {
    let report = validate_cover(&p.cover.dnnf, &p.cover.cover).map_err(|e| fail(EXIT_INTERNAL, e.to_string()))?;
    let levels: Vec<Value> = p
        .smooth
        .nodes()
        .iter()
        .zip(&p.levels.level)
        .map(|(n, l)| json!({"node": n.id, "level": l}))
        .collect();
    let separators: Value =
        serde_json::from_str(&p.cover.cover.to_json(&p.cover.dnnf)).expect("cover JSON is well-formed");
    Ok(json!({
        "level_mode": p.levels.mode.to_string(),
        "added_noops": p.cover.added_noops,
        "t": p.cover.cover.total_size(),
        "valid": report.is_valid(),
        "levels": levels,
        "separators": separators,
        "dnnf": p.cover.dnnf.to_text(),
    }))
}

pub fn cover(path: &Path, level: LevelMode, out: Option<&Path>) -> CmdResult {
    let dnnf = load_dnnf(path)?;
    require_smooth(&dnnf)?;
    let prepared = prepare(&dnnf, level).map_err(prepare_error)?;
    let doc = cover_document(&prepared)?;
    eprintln!(
        "{} separators (t = {}), {} no-op nodes added",
        prepared.cover.cover.canonical.len(),
        prepared.cover.cover.total_size(),
        prepared.cover.added_noops
    );
    emit(out, &pretty(&doc))?;
    Ok(if doc["valid"] == json!(true) {
        EXIT_OK
    } else {
        EXIT_INTERNAL
    })
}

fn stats_document(enc: &CnfEncoding, p: &Prepared) -> Value {
    let mut v = serde_json::to_value(enc.stats()).expect("stats serialize");
    v["level_mode"] = json!(p.levels.mode.to_string());
    v["added_noops"] = json!(p.cover.added_noops);
    v
}

fn stats_line(enc: &CnfEncoding) -> String {
    let s = enc.stats();
    let groups: Vec<String> = s.clauses.iter().map(|(g, c)| format!("{g}={c}")).collect();
    format!(
        "{}{}: {} vars, {} clauses ({}); vars/(nd+t) = {:.2}, clauses/(nd+e+t) = {:.2}",
        s.kind,
        if s.boolean { " (boolean)" } else { "" },
        s.vars,
        s.total_clauses,
        groups.join(", "),
        s.var_ratio,
        s.clause_ratio
    )
}

pub fn compile(
    path: &Path,
    kind: EncodingKind,
    level: LevelMode,
    boolean: bool,
    out: Option<&Path>,
    stats: Option<&Path>,
) -> CmdResult {
    let dnnf = load_dnnf(path)?;
    require_smooth(&dnnf)?;
    let prepared = prepare(&dnnf, level).map_err(prepare_error)?;
    let mut enc = prepared.encode(kind).map_err(encode_error)?;
    if boolean {
        enc = booleanize(&enc).map_err(encode_error)?;
    }
    emit(out, &enc.to_dimacs())?;
    eprintln!("{}", stats_line(&enc));
    let stats_path = stats
        .map(Path::to_path_buf)
        .or_else(|| out.map(|o| o.with_extension("stats.json")));
    if let Some(sp) = stats_path {
        emit(Some(&sp), &pretty(&stats_document(&enc, &prepared)))?;
    }
    Ok(EXIT_OK)
}

/// Exactly-one over the values of every domain variable named in `map`.
fn direct_encoding_clauses(map: &VarMap) -> Vec<Vec<Lit>> {
    let mut by_var: BTreeMap<&str, Vec<Lit>> = BTreeMap::new();
    for (v, label) in map.iter() {
        if let VarLabel::Dom { var, .. } = label {
            by_var.entry(var.as_str()).or_default().push(v.pos());
        }
    }
    by_var
        .values()
        .filter(|lits| lits.len() > 1)
        .flat_map(|lits| eo_pairwise(lits).clauses)
        .collect()
}

fn lab_error(e: LabError) -> Failure {
    match e {
        LabError::BudgetExceeded { .. } | LabError::OracleCap { .. } => fail(EXIT_LIMIT, e.to_string()),
        LabError::NoInputs => fail(EXIT_INVALID, e.to_string()),
        other => fail(EXIT_INTERNAL, other.to_string()),
    }
}

fn options(sweep: &SweepArgs) -> VerifyOptions {
    VerifyOptions {
        budget: sweep.budget,
        sample: sweep.sample,
        seed: sweep.seed,
        ..VerifyOptions::default()
    }
}

pub fn verify(
    path: &Path,
    property: Property,
    scope: Option<Scope>,
    direct: bool,
    sweep: &SweepArgs,
    out: Option<&Path>,
) -> CmdResult {
    let (mut cnf, map) = load_dimacs(path)?;
    if direct {
        let extra = direct_encoding_clauses(&map);
        if map.input_vars().is_empty() {
            return Err(fail(EXIT_INVALID, "--direct-encoding needs `c map dom` comments"));
        }
        cnf.extend(extra);
    }
    let scope = scope.unwrap_or(property.natural_scope());
    let vars = scope_vars(&cnf, Some(&map), scope).map_err(lab_error)?;
    let report = verify_strength(&cnf, &vars, scope, property, &options(sweep)).map_err(lab_error)?;
    if !report.recheck(&cnf).map_err(lab_error)? {
        return Err(fail(
            EXIT_INTERNAL,
            format!("counterexample failed its recheck: {report}"),
        ));
    }
    let mut doc = report.to_json(Some(&map));
    doc["direct_encoding"] = json!(direct);
    emit(out, &pretty(&doc))?;
    eprintln!("{}", describe_report(&report, &map));
    Ok(match report.verdict {
        Verdict::Counterexample => EXIT_COUNTEREXAMPLE,
        Verdict::Holds | Verdict::NoCounterexampleFound => EXIT_OK,
    })
}

fn describe_report(r: &StrengthReport, map: &VarMap) -> String {
    let mut s = format!("{} on {}: {}", r.property, r.scope, r.verdict.name());
    if let Some(missed) = r.missed {
        let w: Vec<String> = r.witness.iter().map(|&l| map.describe(l)).collect();
        let m = match missed {
            pcnnf_core::propagation::Missed::Bottom => "⊥".to_string(),
            pcnnf_core::propagation::Missed::Lit(l) => map.describe(l),
        };
        s.push_str(&format!(
            "; α = {{{}}} implies {m}, unit propagation misses it",
            w.join(", ")
        ));
    }
    let mode = if r.exhaustive { "sweep nodes" } else { "samples" };
    s.push_str(&format!(" ({} {mode}, {} scope variables)", r.explored, r.scope_size));
    s
}

fn looks_like_dimacs(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.starts_with("p cnf") || l == "c" || l.starts_with("c "))
}

pub fn models(path: &Path, inputs_only: bool, cap: usize, out: Option<&Path>) -> CmdResult {
    let text = read(path)?;
    let doc = if looks_like_dimacs(&text) {
        let (cnf, map) = load_dimacs(path)?;
        let oracle = Oracle::new(&cnf).map_err(lab_error)?;
        let models = oracle
            .models(cap)
            .ok_or_else(|| fail(EXIT_LIMIT, format!("more than {cap} models")))?;
        let vars: Vec<u32> = if inputs_only {
            map.input_vars().iter().map(|v| v.0).collect()
        } else {
            (1..=cnf.num_vars).collect()
        };
        let mut rows: Vec<Vec<i32>> = models
            .iter()
            .map(|&m| {
                vars.iter()
                    .map(|&v| if m >> (v - 1) & 1 == 1 { v as i32 } else { -(v as i32) })
                    .collect()
            })
            .collect();
        rows.sort_unstable();
        rows.dedup();
        let names: Vec<String> = vars
            .iter()
            .map(|&v| {
                map.label(pcnnf_core::cnf::Var(v))
                    .map_or(v.to_string(), |l| l.to_string())
            })
            .collect();
        json!({"variables": vars, "names": names, "count": rows.len(), "models": rows})
    } else {
        let dnnf = load_dnnf(path)?;
        let models = enumerate_models_capped(&dnnf, cap as u128).map_err(|e| fail(EXIT_LIMIT, e.to_string()))?;
        let rows: Vec<Vec<&str>> = models
            .iter()
            .map(|m| {
                m.iter()
                    .enumerate()
                    .map(|(i, &s)| dnnf.domains()[i].values[s].as_str())
                    .collect()
            })
            .collect();
        let names: Vec<&str> = dnnf.domains().iter().map(|d| d.name.as_str()).collect();
        json!({"variables": names, "count": rows.len(), "models": rows})
    };
    eprintln!("{} models", doc["count"]);
    emit(out, &pretty(&doc))?;
    Ok(EXIT_OK)
}

pub const FIXTURES: [&str; 6] = [
    "fig1",
    "fig2-embed",
    "amk-counterexample",
    "eo-seq-counterexample",
    "random-smooth",
    "mdd-expand",
];

pub fn fixture(name: &str, seed: u64, n: usize, d: usize, depth: usize, width: usize, out: Option<&Path>) -> CmdResult {
    let infeasible = |e: DnnfError| fail(EXIT_USAGE, e.to_string());
    let text = match name {
        "fig1" => fixtures::FIG1.to_string(),
        "fig2-embed" => fixtures::FIG2_EMBED.to_string(),
        "amk-counterexample" => {
            let (cnf, map) = fixtures::amk_counterexample();
            format!(
                "c at-least-2 over x1..x4 with the simplified sequential at-most-2\n{}",
                dimacs_string(&map, &cnf)
            )
        }
        "eo-seq-counterexample" => {
            let (cnf, map) = fixtures::eo_seq_counterexample();
            format!(
                "c exactly-1 over x1..x4: sequential at-most-1 plus at-least-1\n{}",
                dimacs_string(&map, &cnf)
            )
        }
        "random-smooth" => {
            let g = generate_random_smooth_dnnf(seed, n, d, depth, &GeneratorLimits::default()).map_err(infeasible)?;
            format!("# random-smooth seed={seed} n={n} d={d} depth={depth}\n{}", g.to_text())
        }
        "mdd-expand" => {
            let g = mdd_expansion_dnnf(seed, n, d, width).map_err(infeasible)?;
            format!("# mdd-expand seed={seed} n={n} d={d} width={width}\n{}", g.to_text())
        }
        _ => {
            return Err(fail(
                EXIT_USAGE,
                format!("unknown fixture `{name}` (expected one of: {})", FIXTURES.join(", ")),
            ))
        }
    };
    emit(out, &text)?;
    Ok(EXIT_OK)
}

/// The properties checked for each encoding by `run-all`: the claimed one
/// first, then everything it implies, then URC for FullNNF (informative only).
fn properties_for(kind: EncodingKind) -> Vec<Property> {
    match claimed_property(kind) {
        Property::Pc => vec![
            Property::Pc,
            Property::Urc,
            Property::DomainConsistency,
            Property::Consistency,
        ],
        Property::Urc => vec![Property::Urc, Property::Consistency],
        _ => vec![Property::DomainConsistency, Property::Consistency, Property::Urc],
    }
}

pub fn run_all(input: &Path, dir: &Path, level: LevelMode, sweep: &SweepArgs) -> CmdResult {
    fs::create_dir_all(dir).map_err(|e| fail(EXIT_INTERNAL, format!("cannot create {}: {e}", dir.display())))?;
    let file = |name: &str| dir.join(name);

    let dnnf = load_dnnf(input)?;
    let report = validate_dnnf(&dnnf);
    emit(Some(&file("validate.txt")), &report.to_string())?;
    eprintln!(
        "validate: {}",
        if report.is_valid() {
            "ok"
        } else {
            "violations written to validate.txt"
        }
    );

    let prepared = prepare(&dnnf, level).map_err(prepare_error)?;
    emit(Some(&file("smooth.dnnf")), &prepared.smooth.to_text())?;
    if prepared.smoothed {
        eprintln!("smooth: {} → {} nodes", dnnf.len(), prepared.smooth.len());
    }
    emit(Some(&file("cover.json")), &pretty(&cover_document(&prepared)?))?;

    let boolean = dnnf.domains().iter().all(|d| {
        let mut v: Vec<&str> = d.values.iter().map(String::as_str).collect();
        v.sort_unstable();
        v == ["0", "1"]
    });
    let opts = options(sweep);
    let mut summary = Vec::new();
    let mut code = EXIT_OK;
    for kind in EncodingKind::ALL {
        let enc = prepared.encode(kind).map_err(encode_error)?;
        let mut variants = vec![(kind.name().to_string(), enc.clone())];
        if boolean {
            variants.push((format!("{}.bool", kind.name()), booleanize(&enc).map_err(encode_error)?));
        }
        for (stem, enc) in variants {
            emit(Some(&file(&format!("{stem}.cnf"))), &enc.to_dimacs())?;
            emit(
                Some(&file(&format!("{stem}.stats.json"))),
                &pretty(&stats_document(&enc, &prepared)),
            )?;
            eprintln!("{}", stats_line(&enc));

            let formula = claim_formula(&enc);
            let direct = formula.clauses.len() != enc.clauses.len();
            let mut reports = Vec::new();
            let mut docs = Vec::new();
            for (k, property) in properties_for(kind).into_iter().enumerate() {
                let scope = property.natural_scope();
                let vars = scope_vars(&formula, Some(&enc.varmap), scope).map_err(lab_error)?;
                let claimed = k == 0;
                match verify_strength(&formula, &vars, scope, property, &opts) {
                    Ok(r) => {
                        if claimed && r.is_counterexample() {
                            code = code.max(EXIT_COUNTEREXAMPLE);
                        }
                        let mut doc = r.to_json(Some(&enc.varmap));
                        doc["claimed"] = json!(claimed);
                        doc["direct_encoding"] = json!(direct);
                        eprintln!("  {}", describe_report(&r, &enc.varmap));
                        docs.push(doc);
                        reports.push(r);
                    }
                    Err(LabError::BudgetExceeded { budget }) => {
                        if claimed {
                            code = code.max(EXIT_LIMIT);
                        }
                        eprintln!("  {property} on {scope}: budget of {budget} exceeded");
                        docs.push(json!({
                            "property": property.name(),
                            "scope": scope.name(),
                            "verdict": "budget_exceeded",
                            "claimed": claimed,
                        }));
                    }
                    Err(e) => return Err(lab_error(e)),
                }
            }
            let violations = implication_violations(&reports);
            if !violations.is_empty() {
                return Err(fail(EXIT_INTERNAL, format!("{stem}: {}", violations.join("; "))));
            }
            emit(Some(&file(&format!("{stem}.report.json"))), &pretty(&json!(docs)))?;
            summary.push(json!({
                "encoding": stem,
                "kind": kind.name(),
                "boolean": enc.boolean,
                "vars": enc.num_vars,
                "clauses": enc.clauses.len(),
                "claimed": docs[0]["property"],
                "verdict": docs[0]["verdict"],
            }));
        }
    }
    let doc = json!({
        "level_mode": level.to_string(),
        "smoothed": prepared.smoothed,
        "added_noops": prepared.cover.added_noops,
        "t": prepared.cover.cover.total_size(),
        "encodings": summary,
    });
    emit(Some(&file("summary.json")), &pretty(&doc))?;
    Ok(code)
}
