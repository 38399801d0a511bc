//! Command definitions and their implementations. `run` returns the text to
//! emit and the exit code so that everything except process IO is testable.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use papm_core::decompose::decompose;
use papm_core::strings::{amalgamate, cut, realize, validate_descriptor, Amalgam, Realized};
use papm_core::symbolic::{
    layer_identities_hold, rule_table, symbolic_predicates, truncate, truncation_colon, SymbolicModule,
    SymbolicPredicate,
};
use papm_core::{Budgets, FiniteModule};

use crate::dot::{chain_dot, module_dot};
use crate::format::{basis_rows, parse_mode, AmalgamJson, DescriptorJson, Input, ModuleJson, SplitIdealJson, SymbolicJson};
use crate::report::{audit, certificate_label, verdict, AuditParams, AuditReport};
use crate::CliError;

#[derive(Debug, Parser)]
#[command(name = "papm", version, about = "Exact audits of finite-length modules over k[x,y]/(xy)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Args)]
pub struct Options {
    /// Characteristic of the residue field (overrides the input file).
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Truncation for infinite branches and symbolic modules.
    #[arg(long, global = true)]
    pub trunc: Option<usize>,
    /// Maximum number of invariant subspaces an enumeration may produce.
    #[arg(long, global = true)]
    pub budget_subspaces: Option<u128>,
    /// Maximum number of ring triples a brute-force ideal check may visit.
    #[arg(long, global = true)]
    pub budget_triples: Option<u128>,
    /// Ring mode for module files: pullback or dvr.
    #[arg(long, global = true)]
    pub mode: Option<String>,
    /// Human-readable table instead of JSON.
    #[arg(long, global = true)]
    pub pretty: bool,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Module, chain descriptor, amalgam or symbolic module JSON file.
    #[arg(long = "in")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value_t = 2)]
    pub s_max: usize,
    #[arg(long, default_value_t = 3)]
    pub exp_max: usize,
    /// Also sweep cyclic amalgams.
    #[arg(long)]
    pub include_bands: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classification plus the full predicate suite.
    Check(InputArg),
    /// Decomposition, list matching and consistency.
    Classify(InputArg),
    /// Indecomposable summands with their locality certificates.
    Decompose(InputArg),
    /// Realize a chain descriptor or amalgam as a module.
    Realize(InputArg),
    /// Glue separated triples along socle vectors.
    Amalgamate(InputArg),
    /// Sweep chain descriptors and audit every instance.
    Audit(AuditArgs),
    /// Graphviz output for a descriptor or module.
    Dot(InputArg),
    /// Dump the symbolic rule table.
    Rules,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

impl Options {
    pub fn budgets(&self) -> Budgets {
        let mut b = Budgets::default();
        if let Some(s) = self.budget_subspaces {
            b.subspaces = s;
        }
        if let Some(t) = self.budget_triples {
            b.triples = t;
        }
        b
    }
}

fn read_input(path: &PathBuf) -> Result<Input, CliError> {
    Input::parse(&std::fs::read_to_string(path)?)
}

struct Loaded {
    module: FiniteModule,
    truncated: bool,
}

fn realize_descriptor(d: &DescriptorJson, o: &Options) -> Result<Realized, CliError> {
    let desc = d.descriptor()?;
    Ok(realize(&desc, o.p.or(d.p).unwrap_or(2), o.trunc.or(d.trunc))?)
}

fn build_amalgam(a: &AmalgamJson, o: &Options) -> Result<Amalgam, CliError> {
    Ok(amalgamate(&a.parts(), &a.identifications()?, o.p.or(a.p).unwrap_or(2), o.trunc.or(a.trunc), a.allow_cycles)?)
}

fn symbolic_shadow(s: SymbolicModule, o: &Options) -> Result<Loaded, CliError> {
    let n = o.trunc.ok_or_else(|| CliError::Malformed(format!("{} needs --trunc for a finite shadow", s.kind())))?;
    let t = truncate(s, n, o.p.unwrap_or(2))?;
    Ok(Loaded { module: t.module, truncated: t.truncated })
}

fn load_module(input: Input, o: &Options) -> Result<Loaded, CliError> {
    let mode = o.mode.as_deref().map(parse_mode).transpose()?;
    match input {
        Input::Module(mut m) => {
            m.p = o.p.unwrap_or(m.p);
            Ok(Loaded { module: m.to_module(mode)?, truncated: false })
        }
        Input::Descriptor(d) => {
            let r = realize_descriptor(&d, o)?;
            Ok(Loaded { module: r.module, truncated: r.truncated })
        }
        Input::Amalgam(a) => Ok(Loaded { module: build_amalgam(&a, o)?.module, truncated: false }),
        Input::Symbolic(s) => symbolic_shadow(s.to_symbolic()?, o),
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

/// One `key  value` line per top-level field.
fn pretty_object(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = v {
        let width = map.keys().map(|k| k.len()).max().unwrap_or(0);
        for (k, val) in map {
            writeln!(out, "{k:<width$}  {}", scalar(val)).unwrap();
        }
    } else {
        writeln!(out, "{}", scalar(v)).unwrap();
    }
    out
}

fn pretty_audit(r: &AuditReport) -> String {
    let opt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
    let mut rows = vec![[
        "descriptor".to_string(),
        "kind".into(),
        "dim".into(),
        "listed".into(),
        "match".into(),
        "pap".into(),
        "mult".into(),
        "consistency".into(),
        "refusal".into(),
    ]];
    for i in &r.instances {
        rows.push([
            i.descriptor.clone(),
            i.kind.into(),
            i.dim.map_or("-".into(), |d| d.to_string()),
            opt(i.listed),
            i.matched.clone().unwrap_or_else(|| "-".into()),
            opt(i.pap_multiplication),
            opt(i.multiplication),
            i.consistency.into(),
            i.refusal.clone().unwrap_or_else(|| "-".into()),
        ]);
    }
    let mut widths = [0usize; 9];
    for row in &rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    for row in &rows {
        let cells: Vec<String> = row.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        writeln!(out, "{}", cells.join("  ").trim_end()).unwrap();
    }
    let s = &r.summary;
    writeln!(
        out,
        "\n{} instances, {} listed, {} agree, {} disagree, {} unknown, {} refused, {}/{} witnesses reproduced",
        s.instances, s.listed, s.agree, s.disagree, s.unknown, s.refused, s.witnesses_reproduced, s.witnesses
    )
    .unwrap();
    out
}

fn emit(v: &Value, pretty: bool) -> Result<String, CliError> {
    if pretty {
        return Ok(pretty_object(v));
    }
    let mut s = serde_json::to_string(v).map_err(|e| CliError::Internal(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn symbolic_check(s: SymbolicModule, o: &Options, budgets: &Budgets) -> Result<Output, CliError> {
    let predicates: Vec<Value> = SymbolicPredicate::ALL
        .iter()
        .map(|&q| {
            let r = symbolic_predicates(s, q);
            json!({"predicate": q.as_str(), "value": r.value, "citation": r.citation.to_string()})
        })
        .collect();
    let mut out = json!({
        "symbolic": SymbolicJson::of(s),
        "name": s.to_string(),
        "pap_multiplication": symbolic_predicates(s, SymbolicPredicate::PapMultiplication).value,
        "predicates": predicates,
    });
    let mut code = 0;
    if let Some(n) = o.trunc {
        let p = o.p.unwrap_or(2);
        match truncate(s, n, p) {
            Ok(t) => {
                let v = verdict(&t.module, t.truncated, false, budgets)?;
                if !v.refusals.is_empty() {
                    code = 3;
                }
                let mut shadow = json!({"N": n, "verdict": to_json(&v)?});
                if t.layers.is_some() {
                    shadow["layer_identities"] = json!(layer_identities_hold(&t));
                    let colons = (1..=n)
                        .map(|k| {
                            let c = truncation_colon(k, n, p)?;
                            Ok(json!({
                                "n": k,
                                "shadow": c.split.map(SplitIdealJson::of),
                                "exact": SplitIdealJson::of(c.symbolic),
                                "diverges": c.diverges,
                            }))
                        })
                        .collect::<Result<Vec<Value>, CliError>>()?;
                    shadow["colons"] = Value::Array(colons);
                }
                out["shadow"] = shadow;
            }
            Err(e @ papm_core::Error::NotTruncatable { .. }) => out["shadow"] = json!({"refused": e.to_string()}),
            Err(e) => return Err(e.into()),
        }
    }
    Ok(Output { text: emit(&out, o.pretty)?, code })
}

fn check_or_classify(input: Input, full: bool, o: &Options, budgets: &Budgets) -> Result<Output, CliError> {
    if let (true, Input::Symbolic(s)) = (full, &input) {
        return symbolic_check(s.to_symbolic()?, o, budgets);
    }
    let l = load_module(input, o)?;
    let v = verdict(&l.module, l.truncated, full, budgets)?;
    let code = if v.refusals.is_empty() { 0 } else { 3 };
    Ok(Output { text: emit(&to_json(&v)?, o.pretty)?, code })
}

fn decompose_cmd(input: Input, o: &Options, budgets: &Budgets) -> Result<Output, CliError> {
    let l = load_module(input, o)?;
    let summands: Vec<Value> = decompose(&l.module, budgets)?
        .iter()
        .map(|s| {
            json!({
                "dim": s.module.dim(),
                "certificate": certificate_label(&s.certificate),
                "module": ModuleJson::of(&s.module),
            })
        })
        .collect();
    let out = json!({"dim": l.module.dim(), "truncated": l.truncated, "count": summands.len(), "summands": summands});
    Ok(Output::ok(emit(&out, o.pretty)?))
}

fn amalgam_json(a: &Amalgam) -> Value {
    let rep = &a.representation;
    json!({
        "dim": a.module.dim(),
        "band": a.band,
        "module": ModuleJson::of(&a.module),
        "representation": {
            "S": ModuleJson::of(&rep.s),
            "K": basis_rows(&rep.k),
            "phi": rep.phi.to_rows(),
        },
    })
}

fn realize_cmd(input: Input, o: &Options) -> Result<Output, CliError> {
    let out = match input {
        Input::Descriptor(d) => {
            let r = realize_descriptor(&d, o)?;
            let t = validate_descriptor(&r.descriptor).map_err(papm_core::Error::InvalidDescriptor)?;
            json!({
                "descriptor": DescriptorJson::of(&r.descriptor, r.module.ring().p()),
                "type": t.number(),
                "dim": r.module.dim(),
                "truncated": r.truncated,
                "labels": r.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
                "merged": r.merged,
                "module": ModuleJson::of(&r.module),
            })
        }
        Input::Amalgam(a) => amalgam_json(&build_amalgam(&a, o)?),
        _ => return Err(CliError::Malformed("realize expects a chain descriptor or an amalgam".into())),
    };
    Ok(Output::ok(emit(&out, o.pretty)?))
}

fn amalgamate_cmd(input: Input, o: &Options) -> Result<Output, CliError> {
    let a = match input {
        Input::Amalgam(a) => build_amalgam(&a, o)?,
        Input::Descriptor(d) => {
            let (parts, ids) = cut(&d.descriptor()?);
            amalgamate(&parts, &ids, o.p.or(d.p).unwrap_or(2), o.trunc.or(d.trunc), false)?
        }
        _ => return Err(CliError::Malformed("amalgamate expects an amalgam or a chain descriptor".into())),
    };
    Ok(Output::ok(emit(&amalgam_json(&a), o.pretty)?))
}

fn dot_cmd(input: Input, o: &Options) -> Result<Output, CliError> {
    let text = match input {
        Input::Descriptor(d) => chain_dot(&realize_descriptor(&d, o)?),
        Input::Amalgam(a) => module_dot(&build_amalgam(&a, o)?.module),
        other => module_dot(&load_module(other, o)?.module),
    };
    Ok(Output::ok(text))
}

fn rules_cmd(o: &Options) -> Result<Output, CliError> {
    let rows: Vec<Value> = rule_table()
        .into_iter()
        .map(|(m, q, r)| {
            json!({
                "module": SymbolicJson::of(m),
                "name": m.to_string(),
                "predicate": q.as_str(),
                "value": r.value,
                "citation": r.citation.to_string(),
            })
        })
        .collect();
    if o.pretty {
        let mut out = String::new();
        for r in &rows {
            writeln!(out, "{:<10} {:<20} {:<6} {}", scalar(&r["name"]), scalar(&r["predicate"]), r["value"], scalar(&r["citation"]))
                .unwrap();
        }
        return Ok(Output::ok(out));
    }
    Ok(Output::ok(emit(&Value::Array(rows), false)?))
}

fn audit_cmd(a: &AuditArgs, o: &Options, budgets: &Budgets) -> Result<Output, CliError> {
    let params = AuditParams { s_max: a.s_max, exp_max: a.exp_max, p: o.p.unwrap_or(2), include_bands: a.include_bands };
    papm_core::field::Fp::new(params.p)?;
    let report = audit(&params, budgets);
    if o.pretty {
        return Ok(Output::ok(pretty_audit(&report)));
    }
    Ok(Output::ok(emit(&to_json(&report)?, false)?))
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let o = &cli.options;
    let budgets = o.budgets();
    match &cli.command {
        Command::Check(i) => check_or_classify(read_input(&i.input)?, true, o, &budgets),
        Command::Classify(i) => check_or_classify(read_input(&i.input)?, false, o, &budgets),
        Command::Decompose(i) => decompose_cmd(read_input(&i.input)?, o, &budgets),
        Command::Realize(i) => realize_cmd(read_input(&i.input)?, o),
        Command::Amalgamate(i) => amalgamate_cmd(read_input(&i.input)?, o),
        Command::Audit(a) => audit_cmd(a, o, &budgets),
        Command::Dot(i) => dot_cmd(read_input(&i.input)?, o),
        Command::Rules => rules_cmd(o),
    }
}

