use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use occult::detectors::cliques::{contains_biclique, contains_clique};
use occult::detectors::perforation::{is_perforated, verify_cycle_packing, PerforationVerdict};
use occult::detectors::structures::{validate_constellation, validate_gemini, Constellation, Gemini};
use occult::extraction::{self, ExtractionError};
use occult::generators::{self, PathLengths};
use occult::treewidth::{exact_treewidth, verify_decomposition, TreeDecomposition, Treewidth};
use occult::{fixtures, CycleWitness, Graph, OrderedAsterism, Vertex};

use crate::params::Params;
use crate::{flag_name, Check, Family, Outcome, Procedure, Status, TdFormat};

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load<T: DeserializeOwned>(path: &Path) -> Result<T, String> {
    serde_json::from_str(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn need_witness(w: Option<&Path>) -> Result<&Path, String> {
    w.ok_or_else(|| "--witness is required for this check".to_string())
}

fn write(path: &Path, text: &str) -> Result<(), String> {
    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn ok(report: Value, summary: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome { status: Status::Ok, report, summary: summary.into() })
}

fn refuted(report: Value, summary: impl Into<String>) -> Result<Outcome, String> {
    Ok(Outcome { status: Status::Refuted, report, summary: summary.into() })
}

fn gen_err(e: generators::GeneratorError) -> String {
    e.to_string()
}

pub fn generate(family: Family, p: &Params, out: Option<&Path>, dot: bool) -> Result<Outcome, String> {
    let seed = p.seed();
    let (g, witness): (Graph, Value) = match family {
        Family::Wall => (generators::wall(p.need("t", p.t)?), Value::Null),
        Family::Complete => (generators::complete(p.need("t", p.t)?), Value::Null),
        Family::CompleteBipartite => (generators::complete_bipartite(p.need("a", p.a)?, p.need("b", p.b)?), Value::Null),
        Family::Occultation => {
            let s = p.need("s", p.s)?;
            if s > 16 {
                return Err("--s above 16 makes a path of more than 65537 vertices".into());
            }
            to_value(generators::occultation(s))
        }
        Family::FullOccultation => {
            let (s, o) = (p.need("s", p.s)?, p.need("o", p.o)?);
            if s > 12 || o == 0 {
                return Err("need 1 <= o and s <= 12".into());
            }
            let lengths = match &p.lengths {
                Some(v) => PathLengths::PerEdge(v.clone()),
                None => PathLengths::Uniform(p.length.unwrap_or(o)),
            };
            let lens_ok = match &lengths {
                PathLengths::Uniform(k) => *k > 0,
                PathLengths::PerEdge(v) => v.len() == 1 << s && !v.contains(&0),
            };
            if !lens_ok {
                return Err(format!("need {} positive lengths", 1usize << s));
            }
            to_value(generators::full_occultation_best_effort(s, o, p.extra.unwrap_or(0), &lengths, seed))
        }
        Family::AmpleInterrupted => to_value(generators::ample_interrupted_asterism(p.need("s", p.s)?, p.d.unwrap_or(2), seed)),
        Family::Perturbed => to_value(generators::perturbed_asterism(p.need("s", p.s)?, p.d.unwrap_or(2), p.attempts.unwrap_or(30), seed)),
        Family::Syzygy => {
            let a = p.need("a", p.a)?;
            let gaps = p.gaps.clone().unwrap_or_else(|| vec![2]);
            to_value(generators::syzygy(a, &gaps, seed).map_err(gen_err)?)
        }
        Family::Gemini => to_value(generators::gemini(p.need("g", p.g)?, p.o.unwrap_or(1), seed).map_err(gen_err)?),
        Family::Constellation => {
            let (s, l) = (p.need("s", p.s)?, p.need("l", p.l)?);
            let lengths = p.lengths.clone().unwrap_or_else(|| vec![p.length.unwrap_or(4 * s.max(1))]);
            to_value(generators::constellation(s, l, &lengths, seed).map_err(gen_err)?)
        }
        Family::Meager => {
            let size = p.need("s", p.s)?;
            let d = p.d.unwrap_or(1);
            let len = p.length.unwrap_or(4 * size + 4);
            to_value(generators::meager_asterism(size, d, len, seed).map_err(gen_err)?)
        }
        Family::Figure5 => to_value(fixtures::figure5()),
    };
    let name = flag_name(family);
    let summary = format!("{name}: {} vertices, {} edges", g.n(), g.edge_count());
    let mut report = json!({ "command": "generate", "family": name, "n": g.n(), "m": g.edge_count(), "seed": seed });
    match out {
        Some(prefix) => {
            let with = |ext: &str| -> PathBuf {
                let mut s = prefix.as_os_str().to_owned();
                s.push(ext);
                s.into()
            };
            let mut files = Vec::new();
            let gp = with(".graph.json");
            write(&gp, &(g.to_json() + "\n"))?;
            files.push(gp);
            if !witness.is_null() {
                let wp = with(".witness.json");
                write(&wp, &(serde_json::to_string(&witness).expect("witness serialises") + "\n"))?;
                files.push(wp);
            }
            if dot {
                let dp = with(".dot");
                write(&dp, &g.to_dot())?;
                files.push(dp);
            }
            report["files"] = json!(files);
        }
        None => {
            report["graph"] = serde_json::to_value(&g).expect("graph serialises");
            report["witness"] = witness;
            if dot {
                report["dot"] = json!(g.to_dot());
            }
        }
    }
    ok(report, summary)
}

fn to_value<W: Serialize>((g, w): (Graph, W)) -> (Graph, Value) {
    let v = serde_json::to_value(&w).expect("witness serialises");
    (g, v)
}

fn span_report(a: &OrderedAsterism, (i, p, q): (usize, usize, usize)) -> Value {
    json!({ "vertex": a.order[i], "index": i + 1, "piece": a.path[p..=q] })
}

pub fn check(which: Check, graph: &Path, witness: Option<&Path>, p: &Params) -> Result<Outcome, String> {
    let g: Graph = load(graph)?;
    let name = flag_name(which);
    let mut report = json!({ "command": "check", "check": name });
    let asterism = |w: Option<&Path>| -> Result<OrderedAsterism, String> { load(need_witness(w)?) };
    // validity of the asterism itself comes first for the asterism checks
    let valid = |a: &OrderedAsterism, report: &mut Value| -> Option<String> {
        a.validate(&g).err().map(|e| {
            report["holds"] = json!(false);
            report["violation"] = serde_json::to_value(&e).expect("violation serialises");
            format!("not an asterism: {e}")
        })
    };
    match which {
        Check::Asterism | Check::Ample | Check::Interrupted | Check::Invaded | Check::FullOccultation | Check::Syzygy => {
            let a = asterism(witness)?;
            if let Some(msg) = valid(&a, &mut report) {
                return refuted(report, msg);
            }
            let failure: Option<Value> = match which {
                Check::Asterism => None,
                Check::Ample => {
                    let d = p.d.unwrap_or(1);
                    report["d"] = json!(d);
                    a.routes(&g).into_iter().find(|r| r.length() < d + 2).map(|r| json!({ "short-route": r }))
                }
                Check::Interrupted => a.first_interruption_failure(&g).map(|f| json!({ "misses-open-piece": span_report(&a, f) })),
                Check::Invaded => {
                    let o = p.o.unwrap_or(1);
                    report["o"] = json!(o);
                    a.first_invasion_failure(&g, o).map(|f| json!({ "misses-closed-piece": span_report(&a, f) }))
                }
                Check::FullOccultation => {
                    let o = p.o.unwrap_or(1);
                    report["o"] = json!(o);
                    if let Some(r) = a.routes(&g).into_iter().find(|r| r.length() < 3) {
                        Some(json!({ "not-ample": r }))
                    } else if let Some(f) = a.first_interruption_failure(&g) {
                        Some(json!({ "misses-open-piece": span_report(&a, f) }))
                    } else {
                        a.first_invasion_failure(&g, o).map(|f| json!({ "misses-closed-piece": span_report(&a, f) }))
                    }
                }
                _ => (!a.is_syzygy(&g)).then(|| json!("neighbourhoods are not in blocks from either end")),
            };
            verdict(report, failure, &name)
        }
        Check::Gemini => {
            let gem: Gemini = load(need_witness(witness)?)?;
            let failure = validate_gemini(&g, &gem).err().map(|e| json!(e.to_string()));
            verdict(report, failure, &name)
        }
        Check::Constellation => {
            let c: Constellation = load(need_witness(witness)?)?;
            let plain = p.plain.unwrap_or(false);
            report["plain"] = json!(plain);
            let failure = validate_constellation(&g, &c.s, &c.paths, plain).err().map(|e| json!(e.to_string()));
            verdict(report, failure, &name)
        }
        Check::Perforated => {
            let (c, o, budget) = (p.c.unwrap_or(2), p.o.unwrap_or(1), p.budget()?);
            if c == 0 || o == 0 {
                return Err("--c and --o must be positive".into());
            }
            report["c"] = json!(c);
            report["o"] = json!(o);
            let v = is_perforated(&g, c, o, budget);
            report["verdict"] = serde_json::to_value(&v).expect("verdict serialises");
            match v {
                PerforationVerdict::Perforated => ok(report, format!("({c}, {o})-perforated")),
                PerforationVerdict::NotPerforated { .. } => refuted(report, format!("not ({c}, {o})-perforated")),
                PerforationVerdict::Indeterminate { visited, .. } => Ok(Outcome {
                    status: Status::Indeterminate,
                    report,
                    summary: format!("budget of {budget} cycles spent after {visited}"),
                }),
            }
        }
        Check::Packing => {
            let cycles: Vec<CycleWitness> = load(need_witness(witness)?)?;
            let (c, o) = (p.c.unwrap_or(cycles.len()), p.o.unwrap_or(1));
            let failure = verify_cycle_packing(&g, &cycles, c, o).err().map(|e| json!(e.to_string()));
            verdict(report, failure, &name)
        }
        Check::Clique => {
            let t = p.need("t", p.t)?;
            report["t"] = json!(t);
            let failure = contains_clique(&g, t).map(|k| json!({ "clique": k }));
            verdict(report, failure, &format!("K{t}-free"))
        }
        Check::Biclique => {
            let t = p.need("t", p.t)?;
            report["t"] = json!(t);
            let failure = contains_biclique(&g, t).map(|(a, b)| json!({ "sides": [a, b] }));
            verdict(report, failure, &format!("K{t},{t}-free"))
        }
        Check::Decomposition => {
            let path = need_witness(witness)?;
            let text = read(path)?;
            let td = if text.trim_start().starts_with('{') {
                serde_json::from_str::<TreeDecomposition>(&text).map_err(|e| format!("{}: {e}", path.display()))?
            } else {
                TreeDecomposition::from_pace(&text).map_err(|e| format!("{}: {e}", path.display()))?.0
            };
            match verify_decomposition(&g, &td) {
                Ok(w) => {
                    report["holds"] = json!(true);
                    report["width"] = json!(w);
                    ok(report, format!("valid decomposition of width {w}"))
                }
                Err(e) => {
                    report["holds"] = json!(false);
                    report["violation"] = json!({ "axiom": e.name(), "detail": e.to_string() });
                    refuted(report, e.to_string())
                }
            }
        }
    }
}

fn verdict(mut report: Value, failure: Option<Value>, name: &str) -> Result<Outcome, String> {
    report["holds"] = json!(failure.is_none());
    match failure {
        None => ok(report, format!("{name}: holds")),
        Some(f) => {
            let summary = format!("{name}: fails: {f}");
            report["violation"] = f;
            refuted(report, summary)
        }
    }
}

#[derive(Deserialize)]
struct TransitionInput {
    first: OrderedAsterism,
    second: OrderedAsterism,
    matching: Vec<(Vertex, Vertex)>,
}

pub fn extract(procedure: Procedure, graph: &Path, witness: Option<&Path>, p: &Params) -> Result<Outcome, String> {
    let g: Graph = load(graph)?;
    let name = flag_name(procedure);
    let mut report = json!({ "command": "extract", "procedure": name });
    let result: Result<Value, ExtractionError> = match procedure {
        Procedure::Occultation => {
            let a: OrderedAsterism = load(need_witness(witness)?)?;
            let (c, o, s) = (p.c.unwrap_or(1), p.o.unwrap_or(1), p.need("s", p.s)?);
            extraction::interrupted_to_occultation(&g, &a, c, o, s).map(|e| serde_json::to_value(e).expect("serialises"))
        }
        Procedure::SyzygyOrConstellation => {
            let a: OrderedAsterism = load(need_witness(witness)?)?;
            let (ta, l, s, d) = (p.need("a", p.a)?, p.need("l", p.l)?, p.s.unwrap_or(1), p.d.unwrap_or(1));
            extraction::asterism_to_syzygy_or_constellation(&g, &a, ta, l, s, d).map(|e| serde_json::to_value(e).expect("serialises"))
        }
        Procedure::GeminiCycles => {
            let gem: Gemini = load(need_witness(witness)?)?;
            let (c, o) = (p.c.unwrap_or(1), p.o.unwrap_or(1));
            extraction::gemini_to_cycles(&g, &gem, c, o).map(|cycles| json!({ "outcome": "cycle-packing", "cycles": cycles }))
        }
        Procedure::TransitionCycles => {
            let t: TransitionInput = load(need_witness(witness)?)?;
            extraction::build_transition_cycles(&g, &t.first, &t.second, &t.matching, p.o.unwrap_or(1)).map(|cycles| json!({ "outcome": "cycle-packing", "cycles": cycles }))
        }
        Procedure::MatchingOrCover => {
            let c = p.c.unwrap_or(1);
            if c == 0 {
                return Err("--c must be positive".into());
            }
            Ok(serde_json::to_value(extraction::matching_or_cover(&g, c)).expect("serialises"))
        }
    };
    match result {
        Ok(v) => {
            // extraction results nest the tagged outcome next to the trace
            let tag = |v: &Value, k: &str| v.get(k).and_then(Value::as_str).map(str::to_string);
            let outcome = v.get("outcome").and_then(|o| tag(o, "outcome")).or_else(|| tag(&v, "outcome")).or_else(|| tag(&v, "kind")).unwrap_or_default();
            report["result"] = v;
            if outcome == "insufficient" {
                Ok(Outcome { status: Status::Indeterminate, report, summary: format!("{name}: insufficient") })
            } else {
                ok(report, format!("{name}: {outcome}"))
            }
        }
        Err(ExtractionError::Precondition(clause)) => {
            report["error"] = json!({ "precondition": clause });
            Ok(Outcome { status: Status::Usage, report, summary: format!("precondition failed: {clause}") })
        }
        Err(ExtractionError::Rejected(why)) => {
            report["error"] = json!({ "rejected": why });
            refuted(report, format!("produced witness rejected: {why}"))
        }
    }
}

pub fn treewidth(graph: &Path, td: Option<&Path>, format: TdFormat, p: &Params) -> Result<Outcome, String> {
    let g: Graph = load(graph)?;
    let limit = p.budget()?;
    let result = exact_treewidth(&g, limit);
    let decomposition = result.decomposition();
    let rendered = match format {
        TdFormat::Pace => decomposition.to_pace(g.n()),
        TdFormat::Json => serde_json::to_string(decomposition).expect("serialises") + "\n",
    };
    let mut report = json!({ "command": "treewidth", "n": g.n(), "m": g.edge_count(), "node-limit": limit });
    match td {
        Some(path) => {
            write(path, &rendered)?;
            report["decomposition-file"] = json!(path);
        }
        None => report["decomposition"] = serde_json::to_value(decomposition).expect("serialises"),
    }
    match result {
        Treewidth::Exact { width, .. } => {
            report["width"] = json!(width);
            ok(report, format!("treewidth {width}"))
        }
        Treewidth::Indeterminate { lower, upper, nodes, .. } => {
            report["lower"] = json!(lower);
            report["upper"] = json!(upper);
            report["nodes"] = json!(nodes);
            Ok(Outcome { status: Status::Indeterminate, report, summary: format!("treewidth between {lower} and {upper}") })
        }
    }
}

pub fn dot(graph: &Path, out: Option<&Path>) -> Result<Outcome, String> {
    let g: Graph = load(graph)?;
    let text = g.to_dot();
    match out {
        Some(path) => {
            write(path, &text)?;
            ok(json!({ "command": "dot", "file": path }), format!("wrote {}", path.display()))
        }
        None => ok(json!({ "command": "dot", "dot": text }), "dot written to the report"),
    }
}
