use std::io::{self, Read, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coxgalaxy::galaxy::{
    clique_counts, decide_isomorphic, explore, fragment_to_dot, fragment_to_json, spine, starlet, system_summary,
    system_to_dot, vertical_core, Budget, Decision, GalaxyFragment, IsoWitness,
};
use coxgalaxy::moves::{all_moves, blow_up, Move, MoveRecord};
use coxgalaxy::oracle::{blow_up_words, twist_words, verify_generating_set, VerificationReport};
use coxgalaxy::{canonical_form, parse_system, CoxeterMatrix, GalaxyVertex};

#[derive(Parser)]
#[command(
    name = "coxgalaxy",
    version,
    about = "Coxeter systems as complete graphs, their moves and the galaxy they span"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Args)]
struct BudgetArgs {
    /// Stop after this many vertices.
    #[arg(long, env = "COXGALAXY_BUDGET_VERTICES")]
    max_vertices: Option<NonZeroUsize>,
    /// Do not visit systems above this rank.
    #[arg(long)]
    max_rank: Option<NonZeroUsize>,
    /// Wall-clock limit in seconds.
    #[arg(long, value_name = "SECONDS")]
    time_limit: Option<NonZeroUsize>,
    /// Group-size cap for the finite isomorphism search.
    #[arg(long)]
    oracle_cap: Option<NonZeroUsize>,
    /// Follow blow-ups and blow-downs only.
    #[arg(long)]
    vertical_only: bool,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(n) = self.max_vertices {
            b.max_vertices = n.get();
        }
        if let Some(n) = self.max_rank {
            b.max_rank = n.get();
        }
        if let Some(s) = self.time_limit {
            b.time_limit = Some(Duration::from_secs(s.get() as u64));
        }
        if let Some(n) = self.oracle_cap {
            b.oracle_cap = n.get();
        }
        b.horizontal = !self.vertical_only;
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Types, sphericity, order, basic subsets, move statistics and abelianization.
    Classify {
        /// System file, `-` for stdin.
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Every blow-up, blow-down and nontrivial twist with its result.
    Moves {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Breadth-first exploration of the component containing the system.
    Explore {
        file: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Drop edges joining layers two or more apart.
        #[arg(long)]
        core: bool,
        /// Keep only a spanning forest.
        #[arg(long)]
        spine: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Decide whether two systems define isomorphic groups.
    Iso {
        first: PathBuf,
        second: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The starlet with spoke labels 4k+2.
    Starlet {
        #[arg(required = true)]
        ks: Vec<u32>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a move with the word-problem oracle.
    Verify {
        file: PathBuf,
        /// A move record as JSON, inline or as a file path.
        r#move: String,
        /// Largest element order tried for infinite labels.
        #[arg(long, default_value_t = 64)]
        cap: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).context("reading stdin")?;
        return Ok(s);
    }
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_system(path: &Path) -> Result<CoxeterMatrix> {
    let text = read_input(path)?;
    parse_system(&text).with_context(|| format!("parsing {}", path.display()))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json prints")
}

fn no_dot(what: &str) -> anyhow::Error {
    anyhow::anyhow!("{what} has no DOT output")
}

fn classify(m: &CoxeterMatrix, format: Format) -> Result<String> {
    let s = system_summary(m);
    match format {
        Format::Json => Ok(pretty(&s)),
        Format::Dot => Ok(system_to_dot(m)),
        Format::Text => {
            let mut out = String::new();
            let join = |v: &Value| {
                v.as_array()
                    .into_iter()
                    .flatten()
                    .filter_map(Value::as_str)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            out += &format!(
                "vertex      {}\nrank        {}\n",
                s["canon"].as_str().unwrap(),
                s["rank"]
            );
            out += &format!("spherical   {}\n", s["spherical"]);
            let order = match &s["order"] {
                Value::Null => "infinite".to_string(),
                Value::String(o) => o.clone(),
                o => o.to_string(),
            };
            out += &format!("order       {order}\n");
            for c in s["components"].as_array().unwrap() {
                let ty = c["type"].as_str().unwrap_or("nonspherical");
                out += &format!("component   {ty}: {}\n", join(&c["generators"]));
            }
            for b in s["basics"].as_array().unwrap() {
                out += &format!(
                    "basic       {}: {}\n",
                    b["type"].as_str().unwrap(),
                    join(&b["generators"])
                );
            }
            let st = &s["statistics"];
            out += &format!("statistics  u={} d={} p={}\n", st["u"], st["d"], st["p"]);
            out += &format!("abelianization rank {}\n", s["abelianization_rank"]);
            Ok(out)
        }
    }
}

fn describe(m: &CoxeterMatrix, mv: &Move) -> String {
    let set = |s: coxgalaxy::GeneratorSubset| s.iter().map(|i| m.name(i).to_string()).collect::<Vec<_>>().join(",");
    match mv {
        Move::BlowUp(pt) => format!("blow-up t={} v={} J={{{}}}", m.name(pt.t), m.name(pt.v), set(pt.j)),
        Move::BlowDown(bd) => {
            format!(
                "blow-down x={} v={} r={} basis={{{}}}",
                m.name(bd.x),
                m.name(bd.v),
                m.name(bd.r),
                set(bd.basis)
            )
        }
        Move::Twist(tw) => format!("twist J={{{}}} B={{{}}}", set(tw.j), set(tw.b)),
    }
}

fn moves(m: &CoxeterMatrix, format: Format) -> Result<String> {
    let applied = all_moves(m);
    match format {
        Format::Dot => Err(no_dot("moves")),
        Format::Json => {
            let v: Vec<Value> = applied
                .iter()
                .map(|a| json!({"move": a.record, "result": a.result.to_json_value()}))
                .collect();
            Ok(pretty(&Value::Array(v)))
        }
        Format::Text => {
            let mut out = String::new();
            for a in &applied {
                out += &format!(
                    "{} -> {}: {}\n",
                    describe(m, &a.record.mv),
                    a.record.target.short(),
                    a.result
                );
            }
            if applied.is_empty() {
                out += "no moves\n";
            }
            Ok(out)
        }
    }
}

fn restrict(f: &GalaxyFragment, keep: &[usize]) -> GalaxyFragment {
    let mut g = f.clone();
    g.edges = keep.iter().map(|&i| f.edges[i]).collect();
    g
}

fn explore_cmd(m: &CoxeterMatrix, budget: &Budget, core: bool, spine_only: bool, format: Format) -> Result<String> {
    let mut f = explore(m, budget);
    if core {
        f = vertical_core(&f);
    }
    let forest = spine(&f);
    if spine_only {
        f = restrict(&f, &forest.edges);
    }
    Ok(match format {
        Format::Dot => fragment_to_dot(&f),
        Format::Json => pretty(&fragment_to_json(&f)),
        Format::Text => {
            let mut out = format!("seed        {}\n", f.seed.short());
            out += &format!("vertices    {}\nedges       {}\n", f.vertices.len(), f.edges.len());
            let layers: Vec<String> = f.layer_counts().iter().map(|(l, c)| format!("{l}:{c}")).collect();
            out += &format!("layers      {}\n", layers.join(" "));
            if let Some(c) = clique_counts(&f, 8, 1 << 22) {
                let c: Vec<String> = c.iter().take_while(|&&k| k > 0).map(u64::to_string).collect();
                out += &format!("cliques     {}\n", c.join(" "));
            }
            out += &format!("spine       {} edges, {} trees\n", forest.edges.len(), forest.trees);
            if !f.edges_complete {
                out += "edges       direct moves only\n";
            }
            if let Some(t) = f.truncated {
                out += &format!("truncated   {t:?}\n");
            }
            for v in &f.vertices {
                out += &format!("  L{} {}: {}\n", v.layer(), v.vertex.short(), v.representative);
            }
            out
        }
    })
}

fn decision_text(m1: &CoxeterMatrix, m2: &CoxeterMatrix, d: &Decision) -> String {
    match d {
        Decision::Isomorphic(IsoWitness::Path(p)) if p.is_empty() => "Isomorphic: same complete graph\n".into(),
        Decision::Isomorphic(IsoWitness::Path(p)) => {
            let mut out = format!("Isomorphic: path of {} moves\n", p.len());
            let mut cur = m1.clone();
            for r in p {
                out += &format!("  {} -> {}\n", describe(&cur, &r.mv), r.target.short());
                cur = r.mv.apply(&cur).expect("decided path replays");
            }
            out
        }
        Decision::Isomorphic(IsoWitness::Classification) => "Isomorphic: rank at most three classification\n".into(),
        Decision::Isomorphic(IsoWitness::GeneratorImages(ws)) => {
            let mut out = String::from("Isomorphic: generator images\n");
            for (i, w) in ws.iter().enumerate() {
                out += &format!("  {} -> {}\n", m1.name(i), w.display(m2));
            }
            out
        }
        Decision::NonIsomorphic(c) => format!("NonIsomorphic: {c:?}\n"),
        Decision::Unknown(why) => format!("Unknown: {why}\n"),
    }
}

fn parse_move(arg: &str) -> Result<Value> {
    let text = match serde_json::from_str::<Value>(arg) {
        Ok(v) => return Ok(v),
        Err(_) => read_input(Path::new(arg))?,
    };
    serde_json::from_str(&text).with_context(|| format!("parsing move {arg}"))
}

fn verify(m: &CoxeterMatrix, v: &Value, cap: u64) -> Result<(Value, bool)> {
    let kind = v.get("kind").cloned().context("move needs a \"kind\"")?;
    let payload = v.get("payload").context("move needs a \"payload\"")?;
    let mv = Move::from_parts(serde_json::from_value(kind)?, payload)?;
    let result = mv.apply(m)?;
    let target = canonical_form(&result);
    let mut ok = true;
    let mut notes = Vec::new();
    for (key, want) in [("source", canonical_form(m)), ("target", target.clone())] {
        if let Some(given) = v.get(key) {
            let given: GalaxyVertex = serde_json::from_value(given.clone())?;
            if given != want {
                ok = false;
                notes.push(format!("{key} does not match"));
            }
        }
    }
    let report: VerificationReport = match &mv {
        Move::BlowUp(pt) => verify_generating_set(m, &blow_up_words(m, pt)?, &result, cap)?,
        Move::Twist(tw) => verify_generating_set(m, &twist_words(m, tw)?, &result, cap)?,
        Move::BlowDown(bd) => {
            let back = bd.inverse();
            let original = blow_up(&result, &back)?;
            if canonical_form(&original) != canonical_form(m) {
                ok = false;
                notes.push("blowing up the result does not give the input back".into());
            }
            verify_generating_set(&result, &blow_up_words(&result, &back)?, &original, cap)?
        }
    };
    ok &= report.passed();
    let record = MoveRecord {
        mv,
        source: canonical_form(m),
        target,
    };
    Ok((
        json!({"ok": ok, "exact": report.exact(), "notes": notes, "record": record, "result": result.to_json_value(), "report": report}),
        ok,
    ))
}

fn verify_text(v: &Value) -> String {
    let mut out = format!(
        "{}{}\n",
        if v["ok"] == true { "verified" } else { "FAILED" },
        if v["exact"] == true { " exactly" } else { "" }
    );
    for n in v["notes"].as_array().unwrap() {
        out += &format!("  {}\n", n.as_str().unwrap());
    }
    let r = &v["report"];
    for e in r["entries"].as_array().unwrap() {
        let verdict = match &e["verdict"] {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        };
        out += &format!("  ({}, {}) claimed {}: {}\n", e["i"], e["j"], e["claimed"], verdict);
    }
    if !r["generates"].is_null() {
        out += &format!("  generates: {}\n", r["generates"]);
    }
    out
}

fn run(cli: Cli) -> Result<(String, ExitCode)> {
    let ok = ExitCode::SUCCESS;
    Ok(match cli.command {
        Command::Classify { file, format } => (classify(&read_system(&file)?, format)?, ok),
        Command::Moves { file, format } => (moves(&read_system(&file)?, format)?, ok),
        Command::Explore {
            file,
            budget,
            core,
            spine,
            format,
        } => (
            explore_cmd(&read_system(&file)?, &budget.budget(), core, spine, format)?,
            ok,
        ),
        Command::Iso {
            first,
            second,
            budget,
            format,
        } => {
            let (m1, m2) = (read_system(&first)?, read_system(&second)?);
            let d = decide_isomorphic(&m1, &m2, &budget.budget());
            let code = if matches!(d, Decision::Unknown(_)) {
                ExitCode::from(2)
            } else {
                ok
            };
            let out = match format {
                Format::Json => pretty(&serde_json::to_value(&d)?),
                Format::Text => decision_text(&m1, &m2, &d),
                Format::Dot => return Err(no_dot("iso")),
            };
            (out, code)
        }
        Command::Starlet { ks, format } => {
            let m = starlet(&ks)?;
            match format {
                Format::Dot => (system_to_dot(&m), ok),
                Format::Json => (m.to_json() + "\n", ok),
                Format::Text => (format!("{m}\n"), ok),
            }
        }
        Command::Verify {
            file,
            r#move,
            cap,
            format,
        } => {
            let m = read_system(&file)?;
            let (v, passed) = verify(&m, &parse_move(&r#move)?, cap)?;
            let out = match format {
                Format::Json => pretty(&v),
                Format::Text => verify_text(&v),
                Format::Dot => bail!("verify has no DOT output"),
            };
            (out, if passed { ok } else { ExitCode::FAILURE })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            if !out.ends_with('\n') {
                let _ = stdout.write_all(b"\n");
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
