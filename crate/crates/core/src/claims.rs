//! Stable keys for the classification claims the engine audits. Reports
//! and rule-table entries refer to claims through these keys.

use core::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    /// `0`, `P1^n ⊕ 0`, `0 ⊕ P2^m`, `P1^n ⊕ P2^m` are 2-absorbing primary.
    SplitIdealsTwoAbsorbingPrimary,
    /// `R` and `R/P^n` are pap-multiplication over a DVR.
    CyclicPapMultiplication,
    /// `E(R/P)` is not pap-multiplication over a DVR.
    InjectiveHullNotPap,
    /// `Q(R)` is not pap-multiplication over a DVR.
    QuotientFieldNotPap,
    /// `A_n = (0 :_E P^n)`, `P A_{n+1} = A_n` and `(A_n : E) = 0`.
    PruferLayers,
    /// Over a DVR the indecomposable pap-multiplication torsion modules
    /// are the `R/P^n`.
    DvrTorsionList,
    /// Quotients of pap-multiplication modules are pap-multiplication.
    QuotientStability,
    /// Direct summands of pap-multiplication modules are pap-multiplication.
    SummandStability,
    /// A separated `S` is pap-multiplication iff `S/P2S` and `S/P1S` are.
    SeparatedBiconditional,
    /// Colons of pap submodules of a separated module are split.
    SeparatedColonFamily,
    /// The indecomposable separated pap-multiplication modules are `R` and
    /// the triples `S(n, m)` with `n, m` finite or infinite.
    SeparatedList,
    /// `(T : S) ∉ {0, P1^n ⊕ 0, 0 ⊕ P2^m}` for submodules `T` of the
    /// separated module `S` of a non-separated pap-multiplication module.
    RepresentationColonFamily,
    /// `M` is pap-multiplication iff `S` is, for a separated representation
    /// `0 -> K -> S -> M -> 0`.
    RepresentationBiconditional,
    /// The indecomposable non-separated pap-multiplication modules with
    /// finite-dimensional top are the four chain types.
    ChainList,
    /// At most the two chain ends are of infinite length.
    AtMostTwoInfiniteEnds,
}

impl Claim {
    pub const ALL: [Claim; 15] = [
        Claim::SplitIdealsTwoAbsorbingPrimary,
        Claim::CyclicPapMultiplication,
        Claim::InjectiveHullNotPap,
        Claim::QuotientFieldNotPap,
        Claim::PruferLayers,
        Claim::DvrTorsionList,
        Claim::QuotientStability,
        Claim::SummandStability,
        Claim::SeparatedBiconditional,
        Claim::SeparatedColonFamily,
        Claim::SeparatedList,
        Claim::RepresentationColonFamily,
        Claim::RepresentationBiconditional,
        Claim::ChainList,
        Claim::AtMostTwoInfiniteEnds,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Claim::SplitIdealsTwoAbsorbingPrimary => "ideals.split-two-absorbing-primary",
            Claim::CyclicPapMultiplication => "dvr.cyclic-pap-multiplication",
            Claim::InjectiveHullNotPap => "dvr.injective-hull-not-pap",
            Claim::QuotientFieldNotPap => "dvr.quotient-field-not-pap",
            Claim::PruferLayers => "dvr.prufer-layers",
            Claim::DvrTorsionList => "dvr.torsion-list",
            Claim::QuotientStability => "modules.quotient-stability",
            Claim::SummandStability => "modules.summand-stability",
            Claim::SeparatedBiconditional => "separated.branch-biconditional",
            Claim::SeparatedColonFamily => "separated.colon-family",
            Claim::SeparatedList => "separated.list",
            Claim::RepresentationColonFamily => "nonseparated.colon-family",
            Claim::RepresentationBiconditional => "nonseparated.representation-biconditional",
            Claim::ChainList => "nonseparated.chain-list",
            Claim::AtMostTwoInfiniteEnds => "nonseparated.two-infinite-ends",
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Claim::SplitIdealsTwoAbsorbingPrimary => "0, P1^n+0, 0+P2^m and P1^n+P2^m are 2-absorbing primary",
            Claim::CyclicPapMultiplication => "R and R/P^n are pap-multiplication over a DVR",
            Claim::InjectiveHullNotPap => "E(R/P) is not pap-multiplication over a DVR",
            Claim::QuotientFieldNotPap => "Q(R) is not pap-multiplication over a DVR",
            Claim::PruferLayers => "A_n = (0 :_E P^n), P A_{n+1} = A_n, (A_n : E) = 0",
            Claim::DvrTorsionList => "indecomposable pap-multiplication torsion DVR-modules are R/P^n",
            Claim::QuotientStability => "M/N is pap-multiplication when M is",
            Claim::SummandStability => "summands of a pap-multiplication module are pap-multiplication",
            Claim::SeparatedBiconditional => "separated S is pap-multiplication iff S/P2S and S/P1S are",
            Claim::SeparatedColonFamily => "(T : S) is split for pap submodules T of separated S",
            Claim::SeparatedList => "indecomposable separated pap-multiplication modules are R and S(n,m)",
            Claim::RepresentationColonFamily => "(T : S) is not 0, P1^n+0 or 0+P2^m",
            Claim::RepresentationBiconditional => "M is pap-multiplication iff its separated cover S is",
            Claim::ChainList => "indecomposable non-separated pap-multiplication modules are the chains",
            Claim::AtMostTwoInfiniteEnds => "only the two chain ends may be infinite",
        }
    }

    pub fn from_key(key: &str) -> Option<Claim> {
        Claim::ALL.into_iter().find(|c| c.key() == key)
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}
