use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use cqm_core::audit::{reconstruct_classify, run_audit, AuditConfig};
use cqm_core::theories::{
    enumerate_relations, plain_is_pure, pure_set_bruteforce, rel_dilations,
    rel_is_pure_bruteforce, TheoryHandle, TheoryKind, TheoryMorphism, BRUTEFORCE_MAX_DIM,
};
use cqm_core::Error;

#[derive(Parser)]
#[command(name = "cqm-audit", version, about = "Audit operational principles of small process theories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every principle checker and compare with the expected outcomes.
    Audit(Common),
    /// Classify the theory's scalars from the audited principles.
    Reconstruct(Common),
    /// Enumerate tiny hom-sets of Rel and decide purity from the definition.
    OracleRel(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Md,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value = "quant-c")]
    theory: String,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Overridden by CQM_AUDIT_SEED when that is set.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<AuditConfig, Error> {
        let seed = match std::env::var("CQM_AUDIT_SEED") {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("CQM_AUDIT_SEED is not a u64: {v:?}")))?,
            Err(_) => self.seed,
        };
        Ok(AuditConfig {
            theory: self.theory.clone(),
            max_dim: self.max_dim,
            samples: self.samples,
            seed,
            tol: self.tol,
        })
    }

    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.out {
            Some(path) => fs::write(path, text).map_err(|e| Error::Format(e.to_string())),
            None => {
                // A closed pipe downstream is not an error worth reporting.
                let _ = writeln!(std::io::stdout().lock(), "{text}");
                Ok(())
            }
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn audit(c: &Common) -> Result<u8, Error> {
    let report = run_audit(&c.config()?)?;
    let text = match c.format {
        Format::Json => pretty(&report.to_json()),
        Format::Md => report.to_markdown(),
    };
    c.emit(&text)?;
    Ok(if report.matches_expected() { 0 } else { 1 })
}

fn reconstruct(c: &Common) -> Result<u8, Error> {
    let v = reconstruct_classify(&c.config()?)?;
    let text = match c.format {
        Format::Json => pretty(&serde_json::to_value(&v).expect("verdict serializes")),
        Format::Md => {
            let mut s = format!(
                "# Reconstruction: {}\n\n- target: {}\n- pure scalars: {}\n- difference ring: {}\n",
                v.theory,
                v.target.as_deref().unwrap_or("none"),
                v.scalar_semiring,
                v.difference_ring
            );
            if let Some(i) = v.involution {
                s.push_str(&format!("- involution: {i:?}\n"));
            }
            s.push_str(&format!(
                "- square roots: {}, bounded: {}, probabilistic: {}\n",
                v.flags.square_roots, v.flags.bounded, v.flags.probabilistic
            ));
            if let Some(cav) = &v.caveat {
                s.push_str(&format!("- caveat: {cav}\n"));
            }
            s
        }
    };
    c.emit(&text)?;
    Ok(0)
}

fn rel(m: &cqm_core::matcat::Matrix<bool>) -> Value {
    TheoryMorphism::Rel(m.clone()).to_json()
}

fn oracle_rel(c: &Common) -> Result<u8, Error> {
    if c.max_dim > BRUTEFORCE_MAX_DIM {
        return Err(Error::TooLarge {
            detail: format!("oracle-rel supports max_dim ≤ {BRUTEFORCE_MAX_DIM}, got {}", c.max_dim),
        });
    }
    let h = TheoryHandle::new(TheoryKind::Rel);
    let mut homs = Vec::new();
    let mut counterexample = Value::Null;
    for a in 0..=c.max_dim {
        for b in 0..=c.max_dim {
            let all: Vec<_> = enumerate_relations(a, b)?.collect();
            let pure = pure_set_bruteforce(h, a, b)?;
            for f in all.iter().filter(|f| !plain_is_pure(*f)) {
                if counterexample.is_null() {
                    let pure_dilation = (1..=2).any(|env| {
                        rel_dilations(f, env).iter().any(|g| rel_is_pure_bruteforce(g, 2))
                    });
                    if !pure_dilation {
                        counterexample = json!({ "kind": "no-purification", "morphism": rel(f) });
                    }
                }
            }
            homs.push(json!({
                "in": a,
                "out": b,
                "relations": all.len(),
                "pure": pure.iter().map(TheoryMorphism::to_json).collect::<Vec<_>>(),
            }));
        }
    }
    let doc = json!({ "theory": "rel", "hom_sets": homs, "counterexample": counterexample });
    let text = match c.format {
        Format::Json => pretty(&doc),
        Format::Md => {
            let mut s = String::from("# Rel oracle\n\n| in | out | relations | pure |\n|---|---|---|---|\n");
            for hset in doc["hom_sets"].as_array().expect("array") {
                s.push_str(&format!(
                    "| {} | {} | {} | {} |\n",
                    hset["in"],
                    hset["out"],
                    hset["relations"],
                    hset["pure"].as_array().map_or(0, Vec::len)
                ));
            }
            if !counterexample.is_null() {
                s.push_str(&format!("\nCounterexample:\n\n```json\n{counterexample}\n```\n"));
            }
            s
        }
    };
    c.emit(&text)?;
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let outcome = match &cli.command {
        Command::Audit(c) => audit(c),
        Command::Reconstruct(c) => reconstruct(c),
        Command::OracleRel(c) => oracle_rel(c),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
