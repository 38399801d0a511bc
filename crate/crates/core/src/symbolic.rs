//! Infinite-length modules as symbols. Their properties come from a rule
//! table keyed by claim; only their finite truncations are computed.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::claims::Claim;
use crate::error::Error;
use crate::field::Subspace;
use crate::module::{FiniteModule, Submodule};
use crate::ring::{GeneralIdeal, SplitIdeal};
use crate::strings::{realize, Exponent, SeparatedTriple};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicModule {
    /// The pullback ring as a module over itself.
    RegularR,
    /// A discrete valuation domain over itself.
    RegularDvr,
    /// Its field of fractions.
    QuotientField,
    /// `E(R/P)` over a discrete valuation domain.
    Prufer,
    /// `A_n = (0 :_E P^n)`.
    PruferLayer(usize),
    /// `R/P^n` over a discrete valuation domain.
    CyclicTorsion(usize),
    SeparatedTripleInfinite(Exponent, Exponent),
}

impl SymbolicModule {
    pub fn kind(self) -> &'static str {
        match self {
            SymbolicModule::RegularR => "regular_r",
            SymbolicModule::RegularDvr => "regular_dvr",
            SymbolicModule::QuotientField => "quotient_field",
            SymbolicModule::Prufer => "prufer",
            SymbolicModule::PruferLayer(_) => "prufer_layer",
            SymbolicModule::CyclicTorsion(_) => "cyclic_torsion",
            SymbolicModule::SeparatedTripleInfinite(..) => "separated_triple",
        }
    }
}

impl fmt::Display for SymbolicModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolicModule::RegularR => f.write_str("R"),
            SymbolicModule::RegularDvr => f.write_str("R (DVR)"),
            SymbolicModule::QuotientField => f.write_str("Q(R)"),
            SymbolicModule::Prufer => f.write_str("E(R/P)"),
            SymbolicModule::PruferLayer(n) => write!(f, "A_{n}"),
            SymbolicModule::CyclicTorsion(n) => write!(f, "R/P^{n}"),
            SymbolicModule::SeparatedTripleInfinite(n, m) => write!(f, "S({n},{m})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolicPredicate {
    PapMultiplication,
    Simple,
    Divisible,
    Indecomposable,
}

impl SymbolicPredicate {
    pub const ALL: [SymbolicPredicate; 4] = [
        SymbolicPredicate::PapMultiplication,
        SymbolicPredicate::Simple,
        SymbolicPredicate::Divisible,
        SymbolicPredicate::Indecomposable,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SymbolicPredicate::PapMultiplication => "pap_multiplication",
            SymbolicPredicate::Simple => "simple",
            SymbolicPredicate::Divisible => "divisible",
            SymbolicPredicate::Indecomposable => "indecomposable",
        }
    }
}

/// Where a rule comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Citation {
    Claim(Claim),
    /// A textbook fact about the module.
    Standard(&'static str),
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Citation::Claim(c) => write!(f, "claim:{}", c.key()),
            Citation::Standard(s) => write!(f, "standard:{s}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    pub value: bool,
    pub citation: Citation,
}

fn rule(value: bool, citation: Citation) -> Rule {
    Rule { value, citation }
}

/// Rule-table lookup. Every answer is symbolic: none of these is derived
/// from a finite computation.
pub fn symbolic_predicates(m: SymbolicModule, which: SymbolicPredicate) -> Rule {
    use SymbolicModule as S;
    use SymbolicPredicate as Q;
    let std = Citation::Standard;
    match (m, which) {
        (S::Prufer, Q::PapMultiplication) => rule(false, Citation::Claim(Claim::InjectiveHullNotPap)),
        (S::QuotientField, Q::PapMultiplication) => rule(false, Citation::Claim(Claim::QuotientFieldNotPap)),
        (S::RegularR | S::RegularDvr | S::CyclicTorsion(_) | S::PruferLayer(_), Q::PapMultiplication) => {
            rule(true, Citation::Claim(Claim::CyclicPapMultiplication))
        }
        (S::SeparatedTripleInfinite(..), Q::PapMultiplication) => rule(true, Citation::Claim(Claim::SeparatedList)),
        (S::Prufer | S::QuotientField, Q::Divisible) => rule(true, std("injective over a PID / field of fractions")),
        (_, Q::Divisible) => rule(false, std("finitely generated or not divisible by p")),
        (S::CyclicTorsion(n) | S::PruferLayer(n), Q::Simple) => rule(n == 1, std("R/P^n is simple iff n = 1")),
        (S::SeparatedTripleInfinite(n, k), Q::Simple) => {
            rule(n == Exponent::Finite(1) && k == Exponent::Finite(1), std("S(1,1) = R/P"))
        }
        (_, Q::Simple) => rule(false, std("has a nonzero proper submodule")),
        (S::SeparatedTripleInfinite(..), Q::Indecomposable) => rule(true, Citation::Claim(Claim::SeparatedList)),
        (S::Prufer, Q::Indecomposable) => rule(true, std("injective hull of a simple module")),
        (S::QuotientField, Q::Indecomposable) => rule(true, std("uniform over a domain")),
        (S::RegularR | S::RegularDvr, Q::Indecomposable) => rule(true, std("local ring")),
        (S::CyclicTorsion(_) | S::PruferLayer(_), Q::Indecomposable) => rule(true, std("cyclic over a local ring")),
    }
}

/// The rule table over representative kinds.
pub fn rule_table() -> Vec<(SymbolicModule, SymbolicPredicate, Rule)> {
    let inf = Exponent::Infinite;
    let kinds = [
        SymbolicModule::RegularR,
        SymbolicModule::RegularDvr,
        SymbolicModule::QuotientField,
        SymbolicModule::Prufer,
        SymbolicModule::PruferLayer(1),
        SymbolicModule::PruferLayer(2),
        SymbolicModule::CyclicTorsion(1),
        SymbolicModule::CyclicTorsion(2),
        SymbolicModule::SeparatedTripleInfinite(Exponent::Finite(2), inf),
        SymbolicModule::SeparatedTripleInfinite(inf, Exponent::Finite(2)),
        SymbolicModule::SeparatedTripleInfinite(inf, inf),
    ];
    let mut out = Vec::new();
    for k in kinds {
        for q in SymbolicPredicate::ALL {
            out.push((k, q, symbolic_predicates(k, q)));
        }
    }
    out
}

/// `(A_n : E)`: zero by rule, whatever `n` is.
pub fn symbolic_colon(_n: usize) -> (SplitIdeal, Claim) {
    (SplitIdeal::Zero, Claim::PruferLayers)
}

/// `(A_n : A_N)` computed in the truncation `A_N` of `E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationColon {
    pub n: usize,
    pub big_n: usize,
    pub ideal: GeneralIdeal,
    pub split: Option<SplitIdeal>,
    /// The exact value for comparison.
    pub symbolic: SplitIdeal,
    /// Set when the shadow differs from the exact value.
    pub diverges: bool,
}

pub fn truncation_colon(n: usize, big_n: usize, p: u32) -> Result<TruncationColon, Error> {
    if n == 0 || n > big_n {
        return Err(Error::InvalidModule(format!("layer {n} is not within A_{big_n}")));
    }
    let t = truncate(SymbolicModule::Prufer, big_n, p)?;
    let layers = t.layers.expect("Prufer truncations carry layers");
    let ideal = t.module.colon_ideal(&layers[n - 1])?;
    let split = ideal.recognize_split();
    let symbolic = symbolic_colon(n).0;
    Ok(TruncationColon { n, big_n, diverges: split != Some(symbolic), split, ideal, symbolic })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub module: FiniteModule,
    /// Set when the finite module only approximates the symbol.
    pub truncated: bool,
    /// `A_1 ⊂ ... ⊂ A_N` for truncations of `E`.
    pub layers: Option<Vec<Submodule>>,
}

/// A finite module standing in for the symbol. `E` truncates to `A_N`, a
/// single Jordan block whose basis is `a_N, p a_N, ...`, so that
/// `A_k = ker X^k` is spanned by the last `k` vectors.
pub fn truncate(m: SymbolicModule, big_n: usize, p: u32) -> Result<Truncation, Error> {
    if big_n == 0 {
        return Err(Error::ZeroTruncation);
    }
    match m {
        SymbolicModule::Prufer => {
            let module = FiniteModule::jordan_block(p, big_n)?;
            let fp = module.field();
            let layers = (1..=big_n)
                .map(|k| Subspace::span(fp, big_n, (big_n - k..big_n).map(|i| module.unit_vector(i))))
                .collect();
            Ok(Truncation { module, truncated: true, layers: Some(layers) })
        }
        SymbolicModule::PruferLayer(n) | SymbolicModule::CyclicTorsion(n) => {
            Ok(Truncation { module: FiniteModule::jordan_block(p, n)?, truncated: false, layers: None })
        }
        SymbolicModule::RegularDvr => {
            Ok(Truncation { module: FiniteModule::jordan_block(p, big_n)?, truncated: true, layers: None })
        }
        SymbolicModule::RegularR => {
            let r = realize(&SeparatedTriple::finite(big_n, big_n).as_chain(), p, None)?;
            Ok(Truncation { module: r.module, truncated: true, layers: None })
        }
        SymbolicModule::SeparatedTripleInfinite(n, k) => {
            let r = realize(&SeparatedTriple { n, m: k }.as_chain(), p, Some(big_n))?;
            Ok(Truncation { module: r.module, truncated: r.truncated, layers: None })
        }
        SymbolicModule::QuotientField => {
            Err(Error::NotTruncatable { kind: "quotient_field", claim: Claim::QuotientFieldNotPap.key() })
        }
    }
}

/// `P A_{k+1} = A_k` and `P^2 A_{k+2} = A_k` inside a truncation.
pub fn layer_identities_hold(t: &Truncation) -> bool {
    let Some(layers) = &t.layers else { return false };
    let x = t.module.x();
    let x2 = x.mul(x);
    (0..layers.len().saturating_sub(1)).all(|k| layers[k + 1].image(x) == layers[k])
        && (0..layers.len().saturating_sub(2)).all(|k| layers[k + 2].image(&x2) == layers[k])
}
