//! Command-line front end: parse descriptors, run classification,
//! verification, search, and orbit commands, and emit deterministic JSON
//! reports.  Exit codes: 0 success, 1 malformed input, 2 precondition
//! violation.

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use trinomial_lab::classify::{classify_hypersurface_capped, classify_variety_capped};
use trinomial_lab::derivation::Derivation;
use trinomial_lab::grading::fine_grading;
use trinomial_lab::lnd::{orbit_path, verify_lnd, LndVerdict, OrbitOutcome};
use trinomial_lab::oracle::search_lnd;
use trinomial_lab::poly::parse_poly;
use trinomial_lab::quotient::PresentedRing;
use trinomial_lab::rational::{format_rat, parse_rat};
use trinomial_lab::space::VariableSpace;
use trinomial_lab::variety::{suspend, Descriptor, SuspensionSpec};
use trinomial_lab::{Error, Poly};

#[derive(Parser)]
#[command(name = "trinomial-lab", version, about = "Rigidity analysis of trinomial hypersurfaces and varieties")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Cap on nilpotency chain length in verification.
    #[arg(long, global = true, default_value_t = 64)]
    nilpotency_cap: u32,
    /// Total-degree bound on oracle image monomials.
    #[arg(long, global = true, default_value_t = 8)]
    search_bound: u32,
    /// Extra degree allowance for bounded ideal-membership solving.
    #[arg(long, global = true, default_value_t = 2)]
    degree_slack: u32,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify a descriptor (rigidity, flexibility, factoriality, ML).
    Classify { input: String },
    /// Emit the constructed witness derivations for a nonrigid descriptor.
    Witness { input: String },
    /// Verify a derivation given as {"images": {var: polynomial}} against
    /// a descriptor's relations and certify local nilpotency.
    Verify {
        input: String,
        #[arg(long)]
        derivation: String,
    },
    /// Brute-force search for homogeneous LNDs up to the degree bound.
    Search { input: String },
    /// Navigate between two rational points with explicit one-parameter
    /// subgroup steps.
    Orbit {
        input: String,
        /// Source point, comma-separated rationals.
        #[arg(long)]
        from: String,
        /// Target point, comma-separated rationals.
        #[arg(long)]
        to: String,
    },
    /// Compute the fine grading of the descriptor's coordinate ring.
    Grading { input: String },
    /// Build a suspension over an affine base:
    /// {"vars": [...], "f": "...", "weights": [...]}.
    Suspend { input: String },
    /// Run a corpus file of {"descriptor", "expect"} rows and report a
    /// pass/fail table.
    Corpus { input: String },
}

fn read_input(s: &str) -> Result<String, Error> {
    let t = s.trim();
    if t.starts_with('{') || t.starts_with('[') {
        Ok(t.to_string())
    } else {
        std::fs::read_to_string(t)
            .map_err(|e| Error::Parse(format!("cannot read {t}: {e}")))
    }
}

fn parse_json(s: &str) -> Result<Value, Error> {
    serde_json::from_str(s).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))
}

fn parse_descriptor(s: &str) -> Result<Descriptor, Error> {
    Descriptor::from_json(&parse_json(&read_input(s)?)?)
}

fn parse_point(s: &str) -> Result<Vec<trinomial_lab::Rat>, Error> {
    s.split(',').map(|p| parse_rat(p.trim())).collect()
}

/// Exit 1 for malformed input, 2 for violated preconditions.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidDescriptor(_) | Error::InvalidVariable(_) | Error::Parse(_) => 1,
        _ => 2,
    }
}

fn classify_capped(d: &Descriptor, cap: u32) -> Result<Value, Error> {
    let report = match d {
        Descriptor::Hypersurface(h) => classify_hypersurface_capped(h, cap)?,
        Descriptor::Variety(v) => classify_variety_capped(v, cap)?,
    };
    Ok(report.to_json())
}

fn run(cli: &Cli) -> Result<Value, Error> {
    let cap = cli.nilpotency_cap;
    let body = match &cli.cmd {
        Cmd::Classify { input } => {
            let d = parse_descriptor(input)?;
            classify_capped(&d, cap)?
        }
        Cmd::Witness { input } => {
            let d = parse_descriptor(input)?;
            let report = classify_capped(&d, cap)?;
            json!({ "witnesses": report["witnesses"] })
        }
        Cmd::Verify { input, derivation } => {
            let d = parse_descriptor(input)?;
            let ring = Arc::new(d.ring()?);
            let space = ring.space().clone();
            let spec = parse_json(&read_input(derivation)?)?;
            let images_json = spec
                .get("images")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::Parse("derivation needs an \"images\" object".into()))?;
            let mut images = vec![Poly::zero(&space); space.len()];
            for (name, text) in images_json {
                let idx = space.index_of(name)?;
                let text = text
                    .as_str()
                    .ok_or_else(|| Error::Parse(format!("image of {name} must be a string")))?;
                images[idx] = parse_poly(&space, text)?;
            }
            let der = Derivation::extend_and_check(ring, images)?;
            match verify_lnd(&der, cap) {
                LndVerdict::Lnd(cert) => {
                    let mut chains = serde_json::Map::new();
                    for v in 0..space.len() {
                        chains.insert(
                            space.name(v).to_string(),
                            json!(cert.chains[v].len()),
                        );
                    }
                    json!({ "verdict": "locally-nilpotent", "bound": cert.bound,
                            "chain_lengths": chains })
                }
                LndVerdict::UnknownWithinCap { generator } => {
                    return Err(Error::CapExhausted { cap, generator })
                }
            }
        }
        Cmd::Search { input } => {
            let d = parse_descriptor(input)?;
            let ring = Arc::new(d.ring()?);
            let hits = search_lnd(&ring, cli.search_bound, cap)?;
            json!({
                "bound": cli.search_bound,
                "count": hits.len(),
                "hits": hits.iter().map(|h| {
                    let mut j = h.derivation.to_json();
                    let obj = j.as_object_mut().unwrap();
                    obj.insert("degree".into(),
                        json!(h.degree.iter().map(|d| d.to_string()).collect::<Vec<_>>()));
                    obj.insert("bound".into(), json!(h.certificate.bound));
                    Value::Object(std::mem::take(obj))
                }).collect::<Vec<_>>(),
            })
        }
        Cmd::Orbit { input, from, to } => {
            let d = parse_descriptor(input)?;
            let Descriptor::Hypersurface(h) = d else {
                return Err(Error::Precondition(
                    "orbit navigation is implemented for hypersurfaces".into(),
                ));
            };
            let p = parse_point(from)?;
            let q = parse_point(to)?;
            match orbit_path(&h, &p, &q, cap)? {
                OrbitOutcome::Path(path) => {
                    let replayed = path.replay(&h, cap)?;
                    let mut j = path.to_json();
                    j.as_object_mut()
                        .unwrap()
                        .insert("replayed".into(), json!(replayed));
                    j
                }
                OrbitOutcome::NotCovered { reason } => {
                    json!({ "not_covered": reason })
                }
            }
        }
        Cmd::Grading { input } => {
            let d = parse_descriptor(input)?;
            let ring = d.ring()?;
            fine_grading(&ring).to_json(&ring)
        }
        Cmd::Suspend { input } => {
            let v = parse_json(&read_input(input)?)?;
            let vars: Vec<String> = v
                .get("vars")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("suspend needs \"vars\"".into()))?
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(String::from)
                        .ok_or_else(|| Error::Parse("vars must be strings".into()))
                })
                .collect::<Result<_, _>>()?;
            let space = VariableSpace::plain(vars);
            let f_text = v
                .get("f")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Parse("suspend needs \"f\"".into()))?;
            let weights: Vec<u32> = v
                .get("weights")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Parse("suspend needs \"weights\"".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|k| k as u32)
                        .ok_or_else(|| Error::Parse("weights must be integers".into()))
                })
                .collect::<Result<_, _>>()?;
            let spec = SuspensionSpec {
                base: PresentedRing::free(space.clone()),
                f: parse_poly(&space, f_text)?,
                weights,
            };
            let susp = suspend(&spec)?;
            json!({
                "relation": susp.ring.relations().last().map(|g| g.to_string()),
                "irreducible": susp.irreducibility.is_irreducible(),
                "descriptor": susp.reexpressed.as_ref().map(|h| h.to_json()),
            })
        }
        Cmd::Corpus { input } => {
            let rows = parse_json(&read_input(input)?)?;
            let rows = rows
                .as_array()
                .ok_or_else(|| Error::Parse("corpus must be a JSON array".into()))?;
            let results: Vec<Value> = rows
                .par_iter()
                .map(|row| corpus_row(row, cap))
                .collect();
            let passed = results
                .iter()
                .filter(|r| r["status"] == "pass")
                .count();
            json!({
                "rows": results,
                "passed": passed,
                "failed": rows.len() - passed,
            })
        }
    };
    let mut out = serde_json::Map::new();
    out.insert("schema".into(), json!("1"));
    match body {
        Value::Object(m) => out.extend(m),
        other => {
            out.insert("result".into(), other);
        }
    }
    Ok(Value::Object(out))
}

fn corpus_row(row: &Value, cap: u32) -> Value {
    let name = row
        .get("name")
        .and_then(Value::as_str)
        .unwrap_or("<unnamed>")
        .to_string();
    let run = || -> Result<Value, Error> {
        let desc = row
            .get("descriptor")
            .ok_or_else(|| Error::Parse("row needs \"descriptor\"".into()))?;
        let d = Descriptor::from_json(desc)?;
        let report = classify_capped(&d, cap)?;
        let expect = row
            .get("expect")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("row needs \"expect\"".into()))?;
        let mut mismatches = Vec::new();
        for (key, want) in expect {
            let got = match key.as_str() {
                "factorial" => report["factorial"]["verdict"].clone(),
                "flexibility_contains" => {
                    // set-containment check on the flexible-type tags
                    let tags = report["flexibility"].as_array().cloned().unwrap_or_default();
                    let want_tags: Vec<Value> =
                        want.as_array().cloned().unwrap_or_else(|| vec![want.clone()]);
                    if want_tags.iter().all(|t| tags.contains(t)) {
                        continue;
                    }
                    report["flexibility"].clone()
                }
                other => report[other].clone(),
            };
            if key != "flexibility_contains" && &got == want {
                continue;
            }
            mismatches.push(json!({ "field": key, "want": want, "got": got }));
        }
        if mismatches.is_empty() {
            Ok(json!({ "name": name, "status": "pass" }))
        } else {
            Ok(json!({ "name": name, "status": "fail", "mismatches": mismatches }))
        }
    };
    run().unwrap_or_else(|e| json!({ "name": name, "status": "error", "error": e.to_string() }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    // Determinism note: TRINOMIAL_LAB_SEED is reserved; all computation is
    // deterministic, so it is accepted and ignored.
    let _ = std::env::var("TRINOMIAL_LAB_SEED");
    let _ = format_rat; // referenced to keep the rational text helpers linked
    match run(&cli) {
        Ok(report) => {
            let text = serde_json::to_string_pretty(&report).expect("report serializes");
            match &cli.output {
                Some(path) => {
                    if let Err(e) = std::fs::write(path, text + "\n") {
                        eprintln!("error: cannot write output: {e}");
                        return ExitCode::from(1);
                    }
                }
                None => println!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = exit_code(&e);
            let report = json!({ "schema": "1", "error": e.to_string() });
            println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
