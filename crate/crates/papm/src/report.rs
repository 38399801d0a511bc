//! Verdict and audit report documents.

use rayon::prelude::*;
use serde::Serialize;

use papm_core::claims::Claim;
use papm_core::decompose::{classify, ClassificationVerdict, ConsistencyWitness, LocalCertificate};
use papm_core::module::{
    enumerate_submodules, ideal_is_two_absorbing_primary, multiplication_predicate, MultiplicationKind,
    MultiplicationWitness, Strategy,
};
use papm_core::oracle::recheck_multiplication_witness;
use papm_core::ring::RingMode;
use papm_core::strings::{
    amalgamate, enumerate_descriptors, realize, separated_representation, validate_descriptor, Branch,
    ChainDescriptor, Identification, SeparatedTriple, SocleRef,
};
use papm_core::{Budgets, Error, FiniteModule, Outcome};

use crate::format::{basis_rows, DescriptorJson, ModuleJson, RingJson};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub submodule: Vec<Vec<u32>>,
    pub colon: String,
    pub colon_split: Option<String>,
    pub colon_source: Option<&'static str>,
    pub product: Vec<Vec<u32>>,
}

impl WitnessJson {
    pub fn of(w: &MultiplicationWitness) -> Self {
        WitnessJson {
            submodule: basis_rows(&w.submodule),
            colon: w.colon.to_string(),
            colon_split: w.colon_split.map(|s| s.to_string()),
            colon_source: w.colon_source.map(|s| s.as_str()),
            product: basis_rows(&w.product),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredicateJson {
    pub value: bool,
    pub witness: Option<WitnessJson>,
    /// Independent re-derivation of the witness, when there is one.
    pub recheck: Option<bool>,
}

fn predicate_json(
    m: &FiniteModule,
    o: &Outcome<MultiplicationWitness>,
    kind: MultiplicationKind,
    budgets: &Budgets,
) -> PredicateJson {
    let recheck = o.witness.as_ref().map(|w| recheck_multiplication_witness(m, w, kind, budgets).unwrap_or(false));
    PredicateJson { value: o.holds, witness: o.witness.as_ref().map(WitnessJson::of), recheck }
}

/// Counterexamples for the two multiplication predicates, each with its
/// independent recheck.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WitnessesJson {
    pub multiplication: Option<PredicateJson>,
    pub pap_multiplication: Option<PredicateJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandJson {
    pub dim: usize,
    #[serde(rename = "match")]
    pub matched: String,
    pub certificate: String,
    pub module: ModuleJson,
}

pub fn certificate_label(c: &LocalCertificate) -> String {
    match c {
        LocalCertificate::ScalarPlusNilpotent { radical_dim, index } => {
            format!("end-local: scalar plus nilpotent (radical dim {radical_dim}, index {index})")
        }
        LocalCertificate::ExhaustiveLocal { checked } => format!("end-local: exhaustive ({checked} elements)"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubmoduleSummary {
    pub count: usize,
    pub pseudo_absorbing_primary: usize,
    /// Distinct colon ideals of pseudo-absorbing primary submodules that are
    /// not monomial.
    pub colons_outside_split_family: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchQuotients {
    pub claim: &'static str,
    pub module: Option<bool>,
    pub modulo_p2: Option<bool>,
    pub modulo_p1: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictJson {
    pub ring: RingJson,
    pub dim: usize,
    pub truncated: bool,
    pub separated: Option<bool>,
    pub indecomposable: Option<bool>,
    #[serde(rename = "match")]
    pub matched: Option<String>,
    pub listed: Option<bool>,
    pub summands: Vec<SummandJson>,
    pub multiplication: Option<bool>,
    pub pap_multiplication: Option<bool>,
    pub witnesses: WitnessesJson,
    pub consistency: &'static str,
    pub consistency_witness: Option<String>,
    pub claims: Vec<&'static str>,
    pub socle_dim: usize,
    pub top_dim: usize,
    pub annihilator: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub submodules: Option<SubmoduleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_quotients: Option<BranchQuotients>,
    pub refusals: Vec<String>,
}

fn claims_for(m: &FiniteModule, v: &ClassificationVerdict) -> Vec<&'static str> {
    let mut out = Vec::new();
    if m.mode() == RingMode::Dvr {
        out.push(Claim::DvrTorsionList.key());
        out.push(Claim::CyclicPapMultiplication.key());
    } else if v.semantic.separated == Some(true) {
        out.push(Claim::SeparatedList.key());
        out.push(Claim::SeparatedBiconditional.key());
    } else {
        out.push(Claim::ChainList.key());
        out.push(Claim::RepresentationBiconditional.key());
    }
    if v.semantic.indecomposable == Some(false) {
        out.push(Claim::SummandStability.key());
    }
    out
}

fn witness_label(w: &ConsistencyWitness) -> String {
    match w {
        ConsistencyWitness::Submodule(w) => format!(
            "listed module has pseudo-absorbing primary submodule {:?} with colon {} and (N:M)M = {:?}",
            basis_rows(&w.submodule),
            w.colon,
            basis_rows(&w.product)
        ),
        ConsistencyWitness::UnlistedSummand(i) => format!("summand {i} is unlisted but the module passes"),
    }
}

/// Classification plus the extra predicate summaries. `full` adds the
/// submodule census and the branch-quotient comparison.
pub fn verdict(m: &FiniteModule, truncated: bool, full: bool, budgets: &Budgets) -> Result<VerdictJson, Error> {
    let v = classify(m, budgets)?;
    let mut refusals: Vec<String> = Vec::new();
    for e in &v.refusals {
        if !refusals.contains(&e.to_string()) {
            refusals.push(e.to_string());
        }
    }
    let summands = v
        .summands
        .iter()
        .map(|s| SummandJson {
            dim: s.module.dim(),
            matched: s.syntactic.label(),
            certificate: certificate_label(&s.certificate),
            module: ModuleJson::of(&s.module),
        })
        .collect();
    let mult = v
        .semantic
        .multiplication
        .as_ref()
        .map(|o| predicate_json(m, o, MultiplicationKind::Multiplication, budgets));
    let pap = v
        .semantic
        .pap_multiplication
        .as_ref()
        .map(|o| predicate_json(m, o, MultiplicationKind::PseudoAbsorbingPrimary, budgets));
    let mut submodules = None;
    let mut branch = None;
    if full {
        match submodule_summary(m, budgets) {
            Ok(s) => submodules = Some(s),
            Err(e) if e.is_budget() => {
                if !refusals.contains(&e.to_string()) {
                    refusals.push(e.to_string());
                }
            }
            Err(e) => return Err(e),
        }
        if v.semantic.separated == Some(true) {
            branch = Some(branch_quotients(m, budgets)?);
        }
    }
    Ok(VerdictJson {
        ring: RingJson::of(m.ring()),
        dim: m.dim(),
        truncated,
        separated: v.semantic.separated,
        indecomposable: v.semantic.indecomposable,
        matched: v.syntactic.as_ref().map(|s| s.label()),
        listed: v.listed,
        summands,
        multiplication: v.semantic.multiplication(),
        pap_multiplication: v.semantic.pap(),
        witnesses: WitnessesJson { multiplication: mult, pap_multiplication: pap },
        consistency: v.consistency.as_str(),
        consistency_witness: v.witness.as_ref().map(witness_label),
        claims: claims_for(m, &v),
        socle_dim: m.socle().dim(),
        top_dim: m.top_dim(),
        annihilator: m.annihilator()?.to_string(),
        submodules,
        branch_quotients: branch,
        refusals,
    })
}

pub fn submodule_summary(m: &FiniteModule, budgets: &Budgets) -> Result<SubmoduleSummary, Error> {
    let ring = m.working_ring();
    let subs = enumerate_submodules(m, budgets)?;
    let mut pap = 0;
    let mut outside = std::collections::BTreeSet::new();
    for n in &subs {
        if n.is_full() {
            continue;
        }
        let colon = m.colon_ideal_in(n, &ring)?;
        if ideal_is_two_absorbing_primary(&colon, budgets)?.holds {
            pap += 1;
            if colon.recognize_split().is_none() {
                outside.insert(colon.to_string());
            }
        }
    }
    Ok(SubmoduleSummary { count: subs.len(), pseudo_absorbing_primary: pap, colons_outside_split_family: outside.into_iter().collect() })
}

fn pap(m: &FiniteModule, budgets: &Budgets) -> Result<bool, Error> {
    Ok(multiplication_predicate(m, MultiplicationKind::PseudoAbsorbingPrimary, Strategy::TopFirst, budgets)?.holds)
}

fn optional(r: Result<bool, Error>) -> Result<Option<bool>, Error> {
    match r {
        Ok(b) => Ok(Some(b)),
        Err(e) if e.is_budget() => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn branch_quotients(m: &FiniteModule, budgets: &Budgets) -> Result<BranchQuotients, Error> {
    let (q2, q1) = m.branch_quotients()?;
    Ok(BranchQuotients {
        claim: Claim::SeparatedBiconditional.key(),
        module: optional(pap(m, budgets))?,
        modulo_p2: optional(pap(&q2, budgets))?,
        modulo_p1: optional(pap(&q1, budgets))?,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColonFamilyJson {
    pub claim: &'static str,
    pub submodules_checked: usize,
    /// Colons found in the excluded family.
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RepresentationJson {
    pub claim: &'static str,
    pub cover_dim: usize,
    pub kernel_dim: usize,
    pub module_pap: Option<bool>,
    pub cover_pap: Option<bool>,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub descriptor: String,
    pub kind: &'static str,
    pub chain: Option<DescriptorJson>,
    pub chain_type: Option<u8>,
    pub dim: Option<usize>,
    pub claims: Vec<&'static str>,
    pub listed: Option<bool>,
    #[serde(rename = "match")]
    pub matched: Option<String>,
    pub separated: Option<bool>,
    pub indecomposable: Option<bool>,
    pub pap_multiplication: Option<bool>,
    pub multiplication: Option<bool>,
    pub witnesses: WitnessesJson,
    pub colon_family: Option<ColonFamilyJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separated_colons: Option<SubmoduleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch_quotients: Option<BranchQuotients>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representation: Option<RepresentationJson>,
    pub consistency: &'static str,
    pub refusal: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BudgetsJson {
    pub triples: u128,
    pub subspaces: u128,
    pub iso_combinations: u128,
    pub end_exhaustive: u128,
    pub samples: usize,
}

impl BudgetsJson {
    pub fn of(b: &Budgets) -> Self {
        BudgetsJson {
            triples: b.triples,
            subspaces: b.subspaces,
            iso_combinations: b.iso_combinations,
            end_exhaustive: b.end_exhaustive,
            samples: b.samples,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditParams {
    pub s_max: usize,
    pub exp_max: usize,
    pub p: u32,
    pub include_bands: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditSummary {
    pub instances: usize,
    pub listed: usize,
    pub agree: usize,
    pub disagree: usize,
    pub unknown: usize,
    pub refused: usize,
    pub witnesses: usize,
    pub witnesses_reproduced: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub parameters: AuditParams,
    pub budgets: BudgetsJson,
    pub instances: Vec<AuditRow>,
    pub summary: AuditSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Instance {
    Chain(ChainDescriptor),
    Band(Vec<(usize, usize)>),
}

fn band_parts(s_max: usize, exp_max: usize) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    let pairs: Vec<(usize, usize)> = (2..=exp_max).flat_map(|n| (2..=exp_max).map(move |m| (n, m))).collect();
    for s in 1..=s_max {
        let mut idx = vec![0usize; s];
        if pairs.is_empty() {
            break;
        }
        loop {
            out.push(idx.iter().map(|&i| pairs[i]).collect());
            let mut k = s;
            let mut done = true;
            while k > 0 {
                k -= 1;
                if idx[k] + 1 < pairs.len() {
                    idx[k] += 1;
                    idx.iter_mut().skip(k + 1).for_each(|i| *i = 0);
                    done = false;
                    break;
                }
            }
            if done {
                break;
            }
        }
    }
    out
}

fn band_identifications(s: usize) -> Vec<Identification> {
    (0..s)
        .map(|i| Identification {
            left: SocleRef { part: i, branch: Branch::P1 },
            right: SocleRef { part: (i + 1) % s, branch: Branch::P2 },
        })
        .collect()
}

fn label_band(parts: &[(usize, usize)]) -> String {
    let inner: Vec<String> = parts.iter().map(|(n, m)| format!("({n},{m})")).collect();
    format!("band[{}]", inner.join(","))
}

fn audit_instance(inst: &Instance, p: u32, budgets: &Budgets) -> AuditRow {
    let (descriptor, kind, chain, chain_type) = match inst {
        Instance::Chain(d) => (
            d.to_string(),
            if d.len() == 1 { "separated" } else { "chain" },
            Some(DescriptorJson::of(d, p)),
            validate_descriptor(d).ok().map(|t| t.number()),
        ),
        Instance::Band(parts) => (label_band(parts), "band", None, None),
    };
    let mut row = AuditRow {
        descriptor,
        kind,
        chain,
        chain_type,
        dim: None,
        claims: Vec::new(),
        listed: None,
        matched: None,
        separated: None,
        indecomposable: None,
        pap_multiplication: None,
        multiplication: None,
        witnesses: WitnessesJson::default(),
        colon_family: None,
        separated_colons: None,
        branch_quotients: None,
        representation: None,
        consistency: "unknown",
        refusal: None,
    };
    if let Err(e) = fill_row(&mut row, inst, p, budgets) {
        row.refusal = Some(e.to_string());
    }
    row
}

fn fill_row(row: &mut AuditRow, inst: &Instance, p: u32, budgets: &Budgets) -> Result<(), Error> {
    let (m, rep) = match inst {
        Instance::Chain(d) => {
            let r = realize(d, p, None)?;
            let rep = if d.len() > 1 { Some(separated_representation(&r)?) } else { None };
            (r.module, rep)
        }
        Instance::Band(parts) => {
            let triples: Vec<SeparatedTriple> = parts.iter().map(|&(n, m)| SeparatedTriple::finite(n, m)).collect();
            let a = amalgamate(&triples, &band_identifications(parts.len()), p, None, true)?;
            (a.module, Some(a.representation))
        }
    };
    row.dim = Some(m.dim());
    let v = classify(&m, budgets)?;
    row.claims = match inst {
        Instance::Chain(d) if d.len() == 1 => {
            vec![Claim::SeparatedList.key(), Claim::SeparatedBiconditional.key(), Claim::SeparatedColonFamily.key()]
        }
        _ => vec![
            Claim::ChainList.key(),
            Claim::RepresentationBiconditional.key(),
            Claim::RepresentationColonFamily.key(),
        ],
    };
    row.listed = v.listed;
    row.matched = v.syntactic.as_ref().map(|s| s.label());
    row.separated = v.semantic.separated;
    row.indecomposable = v.semantic.indecomposable;
    row.pap_multiplication = v.semantic.pap();
    row.multiplication = v.semantic.multiplication();
    row.witnesses.pap_multiplication = v
        .semantic
        .pap_multiplication
        .as_ref()
        .map(|o| predicate_json(&m, o, MultiplicationKind::PseudoAbsorbingPrimary, budgets));
    row.witnesses.multiplication = v
        .semantic
        .multiplication
        .as_ref()
        .map(|o| predicate_json(&m, o, MultiplicationKind::Multiplication, budgets));
    row.consistency = v.consistency.as_str();
    if let Some(e) = v.refusals.first() {
        row.refusal = Some(e.to_string());
    }
    match rep {
        None => {
            row.separated_colons = Some(submodule_summary(&m, budgets)?);
            row.branch_quotients = Some(branch_quotients(&m, budgets)?);
        }
        Some(rep) => {
            let s = &rep.s;
            let mut checked = 0;
            let mut violations = Vec::new();
            for t in enumerate_submodules(s, budgets)? {
                checked += 1;
                let colon = s.colon_ideal(&t)?;
                if let Some(split) = colon.recognize_split() {
                    use papm_core::SplitIdeal::*;
                    if matches!(split, Zero | P1Power(_) | P2Power(_)) {
                        violations.push(format!("{:?} -> {split}", basis_rows(&t)));
                    }
                }
            }
            row.colon_family =
                Some(ColonFamilyJson { claim: Claim::RepresentationColonFamily.key(), submodules_checked: checked, violations });
            let module_pap = v.semantic.pap();
            let cover_pap = optional(pap(s, budgets))?;
            row.representation = Some(RepresentationJson {
                claim: Claim::RepresentationBiconditional.key(),
                cover_dim: s.dim(),
                kernel_dim: rep.k.dim(),
                module_pap,
                cover_pap,
                holds: module_pap.zip(cover_pap).map(|(a, b)| a == b),
            });
        }
    }
    Ok(())
}

/// Sweeps every valid finite chain with `s <= s_max` generators and
/// exponents `<= exp_max` (bands after them when requested), one row each,
/// in a fixed order.
pub fn audit(params: &AuditParams, budgets: &Budgets) -> AuditReport {
    let mut instances: Vec<Instance> =
        enumerate_descriptors(params.s_max, params.exp_max).into_iter().map(Instance::Chain).collect();
    if params.include_bands {
        instances.extend(band_parts(params.s_max, params.exp_max).into_iter().map(Instance::Band));
    }
    let rows: Vec<AuditRow> = instances.par_iter().map(|i| audit_instance(i, params.p, budgets)).collect();
    let mut summary = AuditSummary { instances: rows.len(), ..Default::default() };
    for r in &rows {
        if r.listed == Some(true) {
            summary.listed += 1;
        }
        match r.consistency {
            "agree" => summary.agree += 1,
            "disagree" => summary.disagree += 1,
            _ => summary.unknown += 1,
        }
        if r.refusal.is_some() {
            summary.refused += 1;
        }
        for pj in [&r.witnesses.pap_multiplication, &r.witnesses.multiplication].into_iter().flatten() {
            if let Some(ok) = pj.recheck {
                summary.witnesses += 1;
                if ok {
                    summary.witnesses_reproduced += 1;
                }
            }
        }
    }
    AuditReport {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        parameters: params.clone(),
        budgets: BudgetsJson::of(budgets),
        instances: rows,
        summary,
    }
}
