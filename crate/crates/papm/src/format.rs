//! JSON file formats for rings, modules, chain descriptors, amalgams and
//! symbolic modules.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use papm_core::field::Subspace;
use papm_core::ring::{RingMode, RingSpec, SplitIdeal};
use papm_core::strings::{Branch, ChainDescriptor, Exponent, Identification, SeparatedTriple, SocleRef};
use papm_core::symbolic::SymbolicModule;
use papm_core::{FiniteModule, Matrix};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingJson {
    pub p: u32,
    #[serde(rename = "N")]
    pub n: usize,
    pub mode: String,
}

impl RingJson {
    pub fn of(ring: &RingSpec) -> Self {
        RingJson { p: ring.p(), n: ring.truncation(), mode: ring.mode().as_str().to_string() }
    }
}

pub fn parse_mode(s: &str) -> Result<RingMode, CliError> {
    match s {
        "pullback" => Ok(RingMode::Pullback),
        "dvr" => Ok(RingMode::Dvr),
        other => Err(CliError::Malformed(format!("unknown mode {other:?} (expected pullback or dvr)"))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub p: u32,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    pub dim: usize,
    #[serde(rename = "X")]
    pub x: Vec<Vec<u64>>,
    #[serde(rename = "Y", default, skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Vec<u64>>>,
}

fn rows_of(m: &Matrix) -> Vec<Vec<u64>> {
    m.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect()
}

impl ModuleJson {
    pub fn of(m: &FiniteModule) -> Self {
        ModuleJson {
            p: m.ring().p(),
            n: Some(m.ring().truncation()),
            mode: Some(m.mode().as_str().to_string()),
            dim: m.dim(),
            x: rows_of(m.x()),
            y: m.y().map(rows_of),
        }
    }

    /// `mode` overrides the file. Without `N` the truncation defaults to the
    /// dimension, which always bounds the nilpotency degree.
    pub fn to_module(&self, mode: Option<RingMode>) -> Result<FiniteModule, CliError> {
        let mode = match (mode, &self.mode) {
            (Some(m), _) => m,
            (None, Some(s)) => parse_mode(s)?,
            (None, None) => {
                if self.y.is_some() {
                    RingMode::Pullback
                } else {
                    RingMode::Dvr
                }
            }
        };
        let n = self.n.unwrap_or(self.dim.max(1));
        let ring = RingSpec::new(self.p, n, mode)?;
        let check = |name: &str, rows: &Vec<Vec<u64>>| -> Result<(), CliError> {
            if rows.len() != self.dim || rows.iter().any(|r| r.len() != self.dim) {
                return Err(CliError::Malformed(format!("{name} must be {0}x{0}", self.dim)));
            }
            Ok(())
        };
        check("X", &self.x)?;
        let x = Matrix::from_rows(ring.field(), self.dim, self.dim, &self.x)?;
        let y = match (&self.y, mode) {
            (Some(rows), RingMode::Pullback) => {
                check("Y", rows)?;
                Some(Matrix::from_rows(ring.field(), self.dim, self.dim, rows)?)
            }
            (None, RingMode::Pullback) => Some(Matrix::zeros(ring.field(), self.dim, self.dim)),
            (Some(rows), RingMode::Dvr) => {
                if rows.iter().flatten().any(|&e| e != 0) {
                    return Err(CliError::Malformed("a dvr module has no Y action".into()));
                }
                None
            }
            (None, RingMode::Dvr) => None,
        };
        Ok(FiniteModule::new(ring, x, y)?)
    }
}

/// An exponent: a positive integer or the string `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExponentJson {
    Finite(usize),
    Named(InfJson),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum InfJson {
    #[serde(rename = "inf")]
    Inf,
}

impl From<ExponentJson> for Exponent {
    fn from(e: ExponentJson) -> Self {
        match e {
            ExponentJson::Finite(n) => Exponent::Finite(n),
            ExponentJson::Named(InfJson::Inf) => Exponent::Infinite,
        }
    }
}

impl From<Exponent> for ExponentJson {
    fn from(e: Exponent) -> Self {
        match e {
            Exponent::Finite(n) => ExponentJson::Finite(n),
            Exponent::Infinite => ExponentJson::Named(InfJson::Inf),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescriptorJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub chain: Vec<[ExponentJson; 2]>,
    /// `[left, right]`: whether `m_1` and `n_s` are `"finite"` or `"inf"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ends: Option<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
}

impl DescriptorJson {
    pub fn of(d: &ChainDescriptor, p: u32) -> Self {
        let end = |e: Exponent| if e.is_infinite() { "inf" } else { "finite" }.to_string();
        DescriptorJson {
            p: Some(p),
            chain: d.generators.iter().map(|&(n, m)| [n.into(), m.into()]).collect(),
            ends: d.generators.first().zip(d.generators.last()).map(|(f, l)| [end(f.1), end(l.0)]),
            trunc: None,
        }
    }

    pub fn descriptor(&self) -> Result<ChainDescriptor, CliError> {
        let d = ChainDescriptor::new(self.chain.iter().map(|[n, m]| ((*n).into(), (*m).into())).collect());
        if let Some(ends) = &self.ends {
            let Some((first, last)) = d.generators.first().zip(d.generators.last()) else {
                return Err(CliError::Malformed("empty chain".into()));
            };
            for (label, e) in [(&ends[0], first.1), (&ends[1], last.0)] {
                let expected = match label.as_str() {
                    "finite" => false,
                    "inf" => true,
                    other => return Err(CliError::Malformed(format!("unknown end {other:?}"))),
                };
                if expected != e.is_infinite() {
                    return Err(CliError::Malformed(format!("end marked {label:?} but exponent is {e}")));
                }
            }
        }
        Ok(d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SocleRefJson {
    pub part: usize,
    pub branch: String,
}

impl SocleRefJson {
    fn to_ref(&self) -> Result<SocleRef, CliError> {
        let branch = match self.branch.as_str() {
            "p1" => Branch::P1,
            "p2" => Branch::P2,
            other => return Err(CliError::Malformed(format!("unknown branch {other:?} (expected p1 or p2)"))),
        };
        Ok(SocleRef { part: self.part, branch })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentificationJson {
    pub left: SocleRefJson,
    pub right: SocleRefJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmalgamJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u32>,
    pub parts: Vec<[ExponentJson; 2]>,
    #[serde(default)]
    pub identifications: Vec<IdentificationJson>,
    #[serde(default)]
    pub allow_cycles: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trunc: Option<usize>,
}

impl AmalgamJson {
    pub fn parts(&self) -> Vec<SeparatedTriple> {
        self.parts.iter().map(|[n, m]| SeparatedTriple { n: (*n).into(), m: (*m).into() }).collect()
    }

    pub fn identifications(&self) -> Result<Vec<Identification>, CliError> {
        self.identifications
            .iter()
            .map(|i| Ok(Identification { left: i.left.to_ref()?, right: i.right.to_ref()? }))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymbolicJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<ExponentJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<ExponentJson>,
}

impl SymbolicJson {
    pub fn of(s: SymbolicModule) -> Self {
        let (n, m) = match s {
            SymbolicModule::PruferLayer(n) | SymbolicModule::CyclicTorsion(n) => (Some(ExponentJson::Finite(n)), None),
            SymbolicModule::SeparatedTripleInfinite(n, m) => (Some(n.into()), Some(m.into())),
            _ => (None, None),
        };
        SymbolicJson { kind: s.kind().to_string(), n, m }
    }

    pub fn to_symbolic(&self) -> Result<SymbolicModule, CliError> {
        let finite = |e: Option<ExponentJson>| match e.map(Exponent::from) {
            Some(Exponent::Finite(n)) if n >= 1 => Ok(n),
            _ => Err(CliError::Malformed(format!("{} needs a finite exponent n >= 1", self.kind))),
        };
        let any = |e: Option<ExponentJson>, name: &str| match e.map(Exponent::from) {
            Some(Exponent::Finite(0)) | None => Err(CliError::Malformed(format!("{} needs exponent {name} >= 1", self.kind))),
            Some(e) => Ok(e),
        };
        Ok(match self.kind.as_str() {
            "regular_r" => SymbolicModule::RegularR,
            "regular_dvr" => SymbolicModule::RegularDvr,
            "quotient_field" => SymbolicModule::QuotientField,
            "prufer" => SymbolicModule::Prufer,
            "prufer_layer" => SymbolicModule::PruferLayer(finite(self.n)?),
            "cyclic_torsion" => SymbolicModule::CyclicTorsion(finite(self.n)?),
            "separated_triple" => SymbolicModule::SeparatedTripleInfinite(any(self.n, "n")?, any(self.m, "m")?),
            other => return Err(CliError::Malformed(format!("unknown symbolic kind {other:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitIdealJson {
    pub tag: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
}

impl SplitIdealJson {
    pub fn of(i: SplitIdeal) -> Self {
        let (tag, n, m) = match i {
            SplitIdeal::Zero => ("zero", None, None),
            SplitIdeal::P1Power(n) => ("p1_power", Some(n), None),
            SplitIdeal::P2Power(m) => ("p2_power", None, Some(m)),
            SplitIdeal::Mixed(n, m) => ("mixed", Some(n), Some(m)),
            SplitIdeal::Unit => ("unit", None, None),
        };
        SplitIdealJson { tag: tag.to_string(), n, m }
    }
}

/// Rows of a subspace basis.
pub fn basis_rows(s: &Subspace) -> Vec<Vec<u32>> {
    s.basis().to_vec()
}

/// The kinds of input file the commands accept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Module(ModuleJson),
    Descriptor(DescriptorJson),
    Amalgam(AmalgamJson),
    Symbolic(SymbolicJson),
}

impl Input {
    pub fn parse(text: &str) -> Result<Input, CliError> {
        let value: Value = serde_json::from_str(text).map_err(|e| CliError::Malformed(format!("invalid JSON: {e}")))?;
        let obj = value.as_object().ok_or_else(|| CliError::Malformed("expected a JSON object".into()))?;
        let decode = |what: &str| CliError::Malformed(format!("not a valid {what}"));
        let wrap = |what: &'static str| move |e: serde_json::Error| CliError::Malformed(format!("not a valid {what}: {e}"));
        if obj.contains_key("X") {
            serde_json::from_value(value).map(Input::Module).map_err(wrap("module"))
        } else if obj.contains_key("chain") {
            serde_json::from_value(value).map(Input::Descriptor).map_err(wrap("descriptor"))
        } else if obj.contains_key("parts") {
            serde_json::from_value(value).map(Input::Amalgam).map_err(wrap("amalgam"))
        } else if obj.contains_key("kind") {
            serde_json::from_value(value).map(Input::Symbolic).map_err(wrap("symbolic module"))
        } else {
            Err(decode("module, descriptor, amalgam or symbolic module (no X, chain, parts or kind field)"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip() {
        let text = r#"{"p":2,"chain":[[5,3],[4,"inf"]],"ends":["finite","finite"]}"#;
        let Input::Descriptor(d) = Input::parse(text).unwrap() else { panic!("expected a descriptor") };
        let chain = d.descriptor().unwrap();
        assert_eq!(chain.generators[1].1, Exponent::Infinite);
        let back = serde_json::to_string(&DescriptorJson::of(&chain, 2)).unwrap();
        assert!(back.contains("\"inf\""));
    }

    #[test]
    fn mismatched_ends() {
        let text = r#"{"chain":[[2,"inf"]],"ends":["finite","finite"]}"#;
        let Input::Descriptor(d) = Input::parse(text).unwrap() else { panic!("expected a descriptor") };
        assert!(matches!(d.descriptor(), Err(CliError::Malformed(_))));
    }

    #[test]
    fn module_round_trip() {
        let text = r#"{"p":2,"N":4,"dim":3,"X":[[0,0,0],[1,0,0],[0,0,0]],"Y":[[0,0,0],[0,0,0],[1,0,0]]}"#;
        let Input::Module(j) = Input::parse(text).unwrap() else { panic!("expected a module") };
        let m = j.to_module(None).unwrap();
        assert_eq!(m.dim(), 3);
        assert_eq!(ModuleJson::of(&m).x, j.x);
    }
}
