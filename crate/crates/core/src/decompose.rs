//! Krull-Schmidt decomposition by Fitting splitting over the endomorphism
//! algebra, indecomposability certificates and the classification matcher.

use alloc::vec::Vec;

use crate::budget::{checked_pow, Budgets};
use crate::error::Error;
use crate::field::{Matrix, Subspace};
use crate::module::{
    end_algebra, iso, multiplication_predicate, FiniteModule, IsoOutcome, MultiplicationKind, MultiplicationWitness,
    Profile, Strategy, Submodule,
};
use crate::ring::RingMode;
use crate::strings::{descriptors_with, realize, validate_descriptor, ChainDescriptor, ChainType, SeparatedTriple};
use crate::Outcome;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingSplit {
    pub kernel: Submodule,
    pub image: Submodule,
    pub kernel_module: FiniteModule,
    pub image_module: FiniteModule,
}

fn is_endomorphism(m: &FiniteModule, f: &Matrix) -> bool {
    f.rows() == m.dim()
        && f.cols() == m.dim()
        && f.mul(m.x()) == m.x().mul(f)
        && f.mul(m.y_or_zero()) == m.y_or_zero().mul(f)
}

/// `M = ker f^d ⊕ im f^d` with `d = dim M`. `None` when one side is zero.
pub fn fitting_split(m: &FiniteModule, f: &Matrix) -> Result<Option<FittingSplit>, Error> {
    if !is_endomorphism(m, f) {
        return Err(Error::InvalidModule(alloc::string::String::from("not an endomorphism")));
    }
    let k = f.pow(m.dim());
    let kernel = k.kernel();
    let image = k.column_space();
    if kernel.is_zero() || image.is_zero() {
        return Ok(None);
    }
    Ok(Some(FittingSplit {
        kernel_module: m.restrict(&kernel)?,
        image_module: m.restrict(&image)?,
        kernel,
        image,
    }))
}

/// Why the endomorphism algebra is local.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalCertificate {
    /// `End(M) = k·1 ⊕ J` with `J` closed under products and `J^index = 0`.
    ScalarPlusNilpotent { radical_dim: usize, index: usize },
    /// Every element of `End(M)` was checked to be invertible or nilpotent.
    ExhaustiveLocal { checked: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    Indecomposable(LocalCertificate),
    /// An endomorphism that is neither invertible nor nilpotent.
    Decomposable(Matrix),
    /// The zero module has no indecomposable structure.
    Zero,
    Unknown,
}

impl Indecomposability {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Indecomposability::Indecomposable(_) => Some(true),
            Indecomposability::Decomposable(_) | Indecomposability::Zero => Some(false),
            Indecomposability::Unknown => None,
        }
    }
}

fn splits(f: &Matrix) -> bool {
    !f.is_invertible() && !f.is_nilpotent()
}

/// Basis elements and their scalar shifts, then sums of pairs, in a fixed
/// order.
fn sweep_for_split(end: &[Matrix]) -> Option<Matrix> {
    let Some(first) = end.first() else { return None };
    let fp = first.field();
    let id = Matrix::identity(fp, first.rows());
    let shifts = |f: &Matrix| -> Option<Matrix> {
        (0..fp.modulus()).map(|c| f.sub(&id.scale(c))).find(splits)
    };
    for b in end {
        if let Some(f) = shifts(b) {
            return Some(f);
        }
    }
    for i in 0..end.len() {
        for j in i + 1..end.len() {
            if let Some(f) = shifts(&end[i].add(&end[j])) {
                return Some(f);
            }
        }
    }
    None
}

fn unflatten(fp: crate::field::Fp, d: usize, v: &[u32]) -> Matrix {
    let mut a = Matrix::zeros(fp, d, d);
    for (i, &e) in v.iter().enumerate() {
        a.set(i / d, i % d, e);
    }
    a
}

/// Checks `End = k·1 ⊕ J` with `J` a nilpotent subalgebra.
fn scalar_plus_nilpotent(end: &[Matrix]) -> Option<LocalCertificate> {
    let first = end.first()?;
    let fp = first.field();
    let d = first.rows();
    let id = Matrix::identity(fp, d);
    let flat = |a: &Matrix| -> Vec<u32> { a.to_rows().concat() };
    let mut parts = Vec::new();
    for b in end {
        let c = (0..fp.modulus()).find(|&c| b.sub(&id.scale(c)).is_nilpotent())?;
        parts.push(b.sub(&id.scale(c)));
    }
    let j = Subspace::span(fp, d * d, parts.iter().map(flat));
    if j.dim() + 1 != end.len() {
        return None;
    }
    let basis: Vec<Matrix> = j.basis().iter().map(|v| unflatten(fp, d, v)).collect();
    for a in &basis {
        for b in &basis {
            if !j.contains(&flat(&a.mul(b))) {
                return None;
            }
        }
    }
    // J ⊋ J^2 ⊋ ... must reach zero
    let mut power = j.clone();
    let mut index = 1;
    while !power.is_zero() {
        let products = power
            .basis()
            .iter()
            .flat_map(|v| {
                let a = unflatten(fp, d, v);
                basis.iter().map(move |b| a.mul(b)).collect::<Vec<_>>()
            })
            .map(|m| flat(&m));
        let next = Subspace::span(fp, d * d, products);
        if next.dim() >= power.dim() {
            return None;
        }
        power = next;
        index += 1;
    }
    Some(LocalCertificate::ScalarPlusNilpotent { radical_dim: j.dim(), index })
}

fn combine(basis: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut t = Matrix::zeros(basis[0].field(), basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        t.add_scaled(c, b);
    }
    t
}

fn indecomposability_with(m: &FiniteModule, end: &[Matrix], budgets: &Budgets) -> Indecomposability {
    if m.dim() == 0 {
        return Indecomposability::Zero;
    }
    if let Some(f) = sweep_for_split(end) {
        return Indecomposability::Decomposable(f);
    }
    if let Some(cert) = scalar_plus_nilpotent(end) {
        return Indecomposability::Indecomposable(cert);
    }
    let fp = m.field();
    let total = checked_pow(fp.modulus() as u128, end.len());
    if total > budgets.end_exhaustive {
        return Indecomposability::Unknown;
    }
    for index in 1..total as u64 {
        let f = combine(end, &fp.decode(index, end.len()));
        if splits(&f) {
            return Indecomposability::Decomposable(f);
        }
    }
    Indecomposability::Indecomposable(LocalCertificate::ExhaustiveLocal { checked: total })
}

/// Decides indecomposability through the endomorphism algebra.
pub fn is_indecomposable(m: &FiniteModule, budgets: &Budgets) -> Result<Indecomposability, Error> {
    let end = end_algebra(m)?;
    Ok(indecomposability_with(m, &end, budgets))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub module: FiniteModule,
    pub certificate: LocalCertificate,
}

/// Indecomposable summands, sorted by dimension and invariant profile.
pub fn decompose(m: &FiniteModule, budgets: &Budgets) -> Result<Vec<Summand>, Error> {
    let mut out = Vec::new();
    let mut stack = alloc::vec![m.clone()];
    while let Some(current) = stack.pop() {
        if current.dim() == 0 {
            continue;
        }
        match is_indecomposable(&current, budgets)? {
            Indecomposability::Indecomposable(certificate) => out.push(Summand { module: current, certificate }),
            Indecomposability::Decomposable(f) => {
                let split = fitting_split(&current, &f)?.expect("splitting endomorphism");
                stack.push(split.image_module);
                stack.push(split.kernel_module);
            }
            Indecomposability::Zero => {}
            Indecomposability::Unknown => {
                return Err(Error::BudgetExceeded {
                    what: "endomorphism scan",
                    required: checked_pow(current.field().modulus() as u128, end_algebra(&current)?.len()),
                    limit: budgets.end_exhaustive,
                })
            }
        }
    }
    out.sort_by_cached_key(|s| (s.module.dim(), Profile::of(&s.module)));
    Ok(out)
}

/// Which entry of the classification lists a module matched.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Syntactic {
    /// `R/P^n` over a discrete valuation ring.
    Jordan(usize),
    /// A separated triple `S(n, m)`.
    Separated(SeparatedTriple),
    /// A chain with at least two generators.
    Chain(ChainDescriptor, ChainType),
    /// Not isomorphic to any listed module of its dimension.
    Unrecognized,
    /// Some isomorphism test was inconclusive.
    Unknown,
}

impl Syntactic {
    pub fn listed(&self) -> Option<bool> {
        match self {
            Syntactic::Jordan(_) | Syntactic::Separated(_) | Syntactic::Chain(..) => Some(true),
            Syntactic::Unrecognized => Some(false),
            Syntactic::Unknown => None,
        }
    }

    pub fn label(&self) -> alloc::string::String {
        use alloc::format;
        match self {
            Syntactic::Jordan(n) => format!("R/P^{n}"),
            Syntactic::Separated(t) => format!("S({},{})", t.n, t.m),
            Syntactic::Chain(d, t) => format!("chain type {} {d}", t.number()),
            Syntactic::Unrecognized => alloc::string::String::from("unrecognized"),
            Syntactic::Unknown => alloc::string::String::from("unknown"),
        }
    }
}

/// Matches an indecomposable module against the finite classification
/// lists by dimension, generator count and operator ranks, confirming with
/// an explicit isomorphism.
pub fn match_indecomposable(m: &FiniteModule, budgets: &Budgets) -> Result<Syntactic, Error> {
    let p = m.ring().p();
    if m.mode() == RingMode::Dvr {
        let block = FiniteModule::jordan_block(p, m.dim())?;
        return Ok(match iso(&block, m, budgets)? {
            IsoOutcome::Isomorphic(_) => Syntactic::Jordan(m.dim()),
            IsoOutcome::NotIsomorphic(_) => Syntactic::Unrecognized,
            IsoOutcome::Unknown => Syntactic::Unknown,
        });
    }
    let s = m.top_dim();
    let rank_x = m.x().rank();
    let rank_y = m.y_or_zero().rank();
    let profile = Profile::of(m);
    let mut unknown = false;
    for d in descriptors_with(s, m.dim()) {
        let pairs = d.finite_pairs().expect("finite");
        if pairs.iter().map(|&(n, _)| n - 1).sum::<usize>() != rank_x
            || pairs.iter().map(|&(_, k)| k - 1).sum::<usize>() != rank_y
        {
            continue;
        }
        let candidate = realize(&d, p, None)?.module;
        if Profile::of(&candidate) != profile {
            continue;
        }
        match iso(&candidate, m, budgets)? {
            IsoOutcome::Isomorphic(_) => {
                let kind = validate_descriptor(&d).expect("valid by construction");
                return Ok(if s == 1 {
                    Syntactic::Separated(SeparatedTriple { n: d.generators[0].0, m: d.generators[0].1 })
                } else {
                    Syntactic::Chain(d, kind)
                });
            }
            IsoOutcome::NotIsomorphic(_) => {}
            IsoOutcome::Unknown => unknown = true,
        }
    }
    Ok(if unknown { Syntactic::Unknown } else { Syntactic::Unrecognized })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandVerdict {
    pub module: FiniteModule,
    pub certificate: LocalCertificate,
    pub syntactic: Syntactic,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Semantic {
    pub separated: Option<bool>,
    pub indecomposable: Option<bool>,
    pub multiplication: Option<Outcome<MultiplicationWitness>>,
    pub pap_multiplication: Option<Outcome<MultiplicationWitness>>,
}

impl Semantic {
    pub fn pap(&self) -> Option<bool> {
        self.pap_multiplication.as_ref().map(|o| o.holds)
    }

    pub fn multiplication(&self) -> Option<bool> {
        self.multiplication.as_ref().map(|o| o.holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Consistency {
    Agree,
    Disagree,
    Unknown,
}

impl Consistency {
    pub fn as_str(self) -> &'static str {
        match self {
            Consistency::Agree => "agree",
            Consistency::Disagree => "disagree",
            Consistency::Unknown => "unknown",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConsistencyWitness {
    /// A listed module with a pseudo-absorbing primary submodule `N` such
    /// that `N != (N : M) M`.
    Submodule(MultiplicationWitness),
    /// An unlisted indecomposable summand of a module that passed.
    UnlistedSummand(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationVerdict {
    pub summands: Vec<SummandVerdict>,
    /// The match of the module itself when it is indecomposable.
    pub syntactic: Option<Syntactic>,
    /// Whether every summand is on a list.
    pub listed: Option<bool>,
    pub semantic: Semantic,
    pub consistency: Consistency,
    pub witness: Option<ConsistencyWitness>,
    /// Budget refusals met along the way.
    pub refusals: Vec<Error>,
}

fn keep<T>(r: Result<T, Error>, refusals: &mut Vec<Error>) -> Result<Option<T>, Error> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_budget() => {
            refusals.push(e);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Decomposes, matches every summand, runs the multiplication predicates
/// and compares list membership with the computed verdict.
///
/// An indecomposable module agrees when it is listed exactly if it passes
/// the pseudo-absorbing primary multiplication test. A decomposable module
/// disagrees only when it passes while some summand is unlisted, since
/// summands of passing modules pass.
pub fn classify(m: &FiniteModule, budgets: &Budgets) -> Result<ClassificationVerdict, Error> {
    let mut refusals = Vec::new();
    let summands = keep(decompose(m, budgets), &mut refusals)?;
    let mut verdicts = Vec::new();
    if let Some(summands) = &summands {
        for s in summands {
            let syntactic = match keep(match_indecomposable(&s.module, budgets), &mut refusals)? {
                Some(x) => x,
                None => Syntactic::Unknown,
            };
            verdicts.push(SummandVerdict { module: s.module.clone(), certificate: s.certificate.clone(), syntactic });
        }
    }
    let listed = if summands.is_none() {
        None
    } else {
        verdicts.iter().try_fold(true, |acc, v| v.syntactic.listed().map(|l| acc && l))
    };
    let indecomposable = summands.as_ref().map(|s| s.len() == 1);
    let syntactic = if indecomposable == Some(true) { Some(verdicts[0].syntactic.clone()) } else { None };
    let separated = if m.mode() == RingMode::Pullback { Some(m.is_separated()?) } else { None };
    let multiplication =
        keep(multiplication_predicate(m, MultiplicationKind::Multiplication, Strategy::TopFirst, budgets), &mut refusals)?;
    let pap = keep(
        multiplication_predicate(m, MultiplicationKind::PseudoAbsorbingPrimary, Strategy::TopFirst, budgets),
        &mut refusals,
    )?;
    let semantic = Semantic { separated, indecomposable, multiplication, pap_multiplication: pap };
    let (consistency, witness) = match (indecomposable, listed, semantic.pap()) {
        (Some(true), Some(l), Some(p)) if l == p => (Consistency::Agree, None),
        (Some(true), Some(true), Some(false)) => (
            Consistency::Disagree,
            semantic.pap_multiplication.as_ref().and_then(|o| o.witness.clone()).map(ConsistencyWitness::Submodule),
        ),
        (Some(true), Some(false), Some(true)) => (Consistency::Disagree, Some(ConsistencyWitness::UnlistedSummand(0))),
        (Some(false), _, Some(false)) => (Consistency::Agree, None),
        (Some(false), Some(true), Some(true)) => (Consistency::Agree, None),
        (Some(false), Some(false), Some(true)) => {
            let i = verdicts.iter().position(|v| v.syntactic.listed() == Some(false)).expect("an unlisted summand");
            (Consistency::Disagree, Some(ConsistencyWitness::UnlistedSummand(i)))
        }
        _ => (Consistency::Unknown, None),
    };
    if m.dim() == 0 {
        return Ok(ClassificationVerdict {
            summands: verdicts,
            syntactic: None,
            listed: Some(true),
            semantic,
            consistency: Consistency::Agree,
            witness: None,
            refusals,
        });
    }
    Ok(ClassificationVerdict { summands: verdicts, syntactic, listed, semantic, consistency, witness, refusals })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::realize_finite;

    fn simple_sum() -> FiniteModule {
        let ring = crate::ring::RingSpec::pullback(2, 1).unwrap();
        let z = Matrix::zeros(ring.field(), 2, 2);
        FiniteModule::new(ring, z.clone(), Some(z)).unwrap()
    }

    #[test]
    fn fitting_edge_cases() {
        let m = realize_finite(2, &[(2, 2)]).unwrap();
        let id = Matrix::identity(m.field(), 3);
        assert_eq!(fitting_split(&m, &id).unwrap(), None);
        assert_eq!(fitting_split(&m, &m.x().clone()).unwrap(), None);
    }

    #[test]
    fn fitting_separates_blocks() {
        let a = realize_finite(2, &[(2, 1)]).unwrap();
        let b = realize_finite(2, &[(1, 2)]).unwrap();
        let m = a.direct_sum(&b).unwrap();
        let mut f = Matrix::zeros(m.field(), 4, 4);
        f.set(0, 0, 1);
        f.set(1, 1, 1);
        let split = fitting_split(&m, &f).unwrap().unwrap();
        assert!(iso(&split.image_module, &a, &Budgets::default()).unwrap().is_isomorphic());
        assert!(iso(&split.kernel_module, &b, &Budgets::default()).unwrap().is_isomorphic());
    }

    #[test]
    fn certificates() {
        let b = Budgets::default();
        let s = realize_finite(2, &[(3, 2)]).unwrap();
        assert!(matches!(is_indecomposable(&s, &b).unwrap(), Indecomposability::Indecomposable(_)));
        assert!(matches!(is_indecomposable(&simple_sum(), &b).unwrap(), Indecomposability::Decomposable(_)));
        let chain = realize_finite(2, &[(2, 1), (1, 2)]).unwrap();
        assert_eq!(decompose(&chain, &b).unwrap().len(), 1);
        assert_eq!(decompose(&simple_sum(), &b).unwrap().len(), 2);
    }

    #[test]
    fn matcher() {
        let b = Budgets::default();
        let s = realize_finite(2, &[(2, 3)]).unwrap();
        assert_eq!(match_indecomposable(&s, &b).unwrap(), Syntactic::Separated(SeparatedTriple::finite(2, 3)));
        let j = FiniteModule::jordan_block(2, 3).unwrap();
        assert_eq!(match_indecomposable(&j, &b).unwrap(), Syntactic::Jordan(3));
        let c = realize_finite(2, &[(3, 2), (2, 2)]).unwrap();
        assert!(matches!(match_indecomposable(&c, &b).unwrap(), Syntactic::Chain(..)));
    }
}
