use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use super::{enumerate_submodules, submodules_containing, FiniteModule, Submodule};
use crate::budget::{checked_pow, Budgets};
use crate::error::Error;
use crate::field::Matrix;
use crate::ring::{
    ideal_predicates_bruteforce, is_two_absorbing_primary_split, GeneralIdeal, IdealPredicate,
    IdealWitness, MembershipTable, RingElement, SplitIdeal,
};
use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SubmodulePredicate {
    /// The colon ideal is prime.
    PseudoPrime,
    /// The colon ideal is 2-absorbing.
    PseudoAbsorbing,
    /// The colon ideal is 2-absorbing primary.
    PseudoAbsorbingPrimary,
    /// `abm ∈ N` implies `am ∈ N`, `bm ∈ N` or `ab ∈ (N : M)`.
    TwoAbsorbing,
    /// `abm ∈ N` implies `am ∈ N`, `bm ∈ N` or `ab ∈ √(N : M)`.
    TwoAbsorbingPrimary,
    /// `rm ∈ N` implies `m ∈ N` or `r ∈ (N : M)`.
    Prime,
    /// `rm ∈ N` implies `m ∈ N` or `r ∈ √(N : M)`.
    Primary,
}

impl SubmodulePredicate {
    pub const ALL: [SubmodulePredicate; 7] = [
        SubmodulePredicate::PseudoPrime,
        SubmodulePredicate::PseudoAbsorbing,
        SubmodulePredicate::PseudoAbsorbingPrimary,
        SubmodulePredicate::TwoAbsorbing,
        SubmodulePredicate::TwoAbsorbingPrimary,
        SubmodulePredicate::Prime,
        SubmodulePredicate::Primary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SubmodulePredicate::PseudoPrime => "pseudo_prime",
            SubmodulePredicate::PseudoAbsorbing => "pseudo_absorbing",
            SubmodulePredicate::PseudoAbsorbingPrimary => "pseudo_absorbing_primary",
            SubmodulePredicate::TwoAbsorbing => "two_absorbing",
            SubmodulePredicate::TwoAbsorbingPrimary => "two_absorbing_primary",
            SubmodulePredicate::Prime => "prime",
            SubmodulePredicate::Primary => "primary",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubmoduleWitness {
    /// The colon ideal fails the ideal predicate.
    Colon { colon: GeneralIdeal, witness: IdealWitness },
    Pair { r: RingElement, m: Vec<u32> },
    Triple { a: RingElement, b: RingElement, m: Vec<u32> },
}

impl fmt::Display for SubmoduleWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubmoduleWitness::Colon { colon, witness } => write!(f, "colon {colon} fails at {witness}"),
            SubmoduleWitness::Pair { r, m } => write!(f, "r = {r}, m = {m:?}"),
            SubmoduleWitness::Triple { a, b, m } => write!(f, "a = {a}, b = {b}, m = {m:?}"),
        }
    }
}

/// How a 2-absorbing primary verdict on a colon ideal was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ColonSource {
    /// Closed form for split ideals: exactly the proper ones qualify.
    SplitFormula,
    /// Exhaustive triples over the smallest quotient containing the ideal.
    BruteForce,
    /// Too large to enumerate: a proper ideal containing a power of the
    /// maximal ideal has the maximal ideal as radical, hence is primary.
    RadicalIsMaximal,
}

impl ColonSource {
    pub fn as_str(self) -> &'static str {
        match self {
            ColonSource::SplitFormula => "split_formula",
            ColonSource::BruteForce => "brute_force",
            ColonSource::RadicalIsMaximal => "radical_is_maximal",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonDecision {
    pub holds: bool,
    pub source: ColonSource,
    pub witness: Option<IdealWitness>,
}

/// Decides whether an ideal of `Q_N` (read as an ideal of `R` containing
/// `P^N`) is 2-absorbing primary.
pub fn ideal_is_two_absorbing_primary(ideal: &GeneralIdeal, budgets: &Budgets) -> Result<ColonDecision, Error> {
    if let Some(split) = ideal.recognize_split() {
        return Ok(ColonDecision {
            holds: is_two_absorbing_primary_split(split),
            source: ColonSource::SplitFormula,
            witness: None,
        });
    }
    let reduced = ideal.retruncate(ideal.minimal_power())?;
    let ring = *reduced.ring();
    if checked_pow(ring.element_count(), 3) <= budgets.triples {
        let out = ideal_predicates_bruteforce(&ring, &reduced, IdealPredicate::TwoAbsorbingPrimary, budgets)?;
        return Ok(ColonDecision { holds: out.holds, source: ColonSource::BruteForce, witness: out.witness });
    }
    Ok(ColonDecision { holds: ideal.is_proper(), source: ColonSource::RadicalIsMaximal, witness: None })
}

fn check_submodule(m: &FiniteModule, n: &Submodule) -> Result<(), Error> {
    if n.ambient() != m.dim() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "submodule lives in dimension {}, module has {}",
            n.ambient(),
            m.dim()
        )));
    }
    if !m.is_invariant(n) {
        return Err(Error::NotInvariant);
    }
    if n.is_full() {
        return Err(Error::NotProper);
    }
    Ok(())
}

/// Evaluates a submodule predicate on a proper submodule `N` of `M`.
///
/// The colon-based predicates reduce to an ideal predicate on `(N : M)`.
/// The element-level ones quantify `a, b` over the normalized nonunits of
/// the working ring and `m` over normalized nonzero vectors; units, zero and
/// scalar multiples discharge every implication.
pub fn submodule_predicate(
    m: &FiniteModule,
    n: &Submodule,
    which: SubmodulePredicate,
    budgets: &Budgets,
) -> Result<Outcome<SubmoduleWitness>, Error> {
    check_submodule(m, n)?;
    let ring = m.working_ring();
    let colon = m.colon_ideal_in(n, &ring)?;
    let via_colon = |pred: IdealPredicate| -> Result<Outcome<SubmoduleWitness>, Error> {
        let reduced = colon.retruncate(colon.minimal_power())?;
        let out = ideal_predicates_bruteforce(reduced.ring(), &reduced, pred, budgets)?;
        Ok(match out.witness {
            None => Outcome::holds(),
            Some(w) => Outcome::fails(SubmoduleWitness::Colon { colon: colon.clone(), witness: w }),
        })
    };
    match which {
        SubmodulePredicate::PseudoPrime => return via_colon(IdealPredicate::Prime),
        SubmodulePredicate::PseudoAbsorbing => return via_colon(IdealPredicate::TwoAbsorbing),
        SubmodulePredicate::PseudoAbsorbingPrimary => {
            let d = ideal_is_two_absorbing_primary(&colon, budgets)?;
            return Ok(if d.holds {
                Outcome::holds()
            } else {
                Outcome::fails(SubmoduleWitness::Colon {
                    colon: colon.clone(),
                    witness: d.witness.unwrap_or(IdealWitness::NotProper),
                })
            });
        }
        _ => {}
    }
    let arity = match which {
        SubmodulePredicate::Prime | SubmodulePredicate::Primary => 1,
        _ => 2,
    };
    let required = checked_pow(ring.element_count(), arity).saturating_mul(checked_pow(ring.p() as u128, m.dim()));
    if required > budgets.triples {
        return Err(Error::BudgetExceeded { what: "submodule quantification", required, limit: budgets.triples });
    }
    let table = MembershipTable::new(&colon);
    let fp = m.field();
    let vectors = fp.normalized_vectors(m.dim());
    let actions: Vec<(RingElement, Matrix)> = table
        .nonunits
        .iter()
        .map(|v| {
            let r = ring.element(v.clone()).expect("reduced");
            let a = m.action_matrix(&r).expect("same ring");
            (r, a)
        })
        .collect();
    let in_n = |v: &[u32]| n.contains(v);
    match which {
        SubmodulePredicate::Prime | SubmodulePredicate::Primary => {
            for (r, a) in &actions {
                let r_ok = match which {
                    SubmodulePredicate::Prime => table.in_ideal(r.coeffs()),
                    _ => table.in_radical(r.coeffs()),
                };
                if r_ok {
                    continue;
                }
                for v in &vectors {
                    if in_n(&a.apply(v)) && !in_n(v) {
                        return Ok(Outcome::fails(SubmoduleWitness::Pair { r: r.clone(), m: v.clone() }));
                    }
                }
            }
        }
        _ => {
            let radical = which == SubmodulePredicate::TwoAbsorbingPrimary;
            for (a, am) in &actions {
                for (b, bm) in &actions {
                    let ab = a.mul(b);
                    let ab_ok = if radical { table.in_radical(ab.coeffs()) } else { table.in_ideal(ab.coeffs()) };
                    if ab_ok {
                        continue;
                    }
                    let abm = am.mul(bm);
                    for v in &vectors {
                        if in_n(&abm.apply(v)) && !in_n(&am.apply(v)) && !in_n(&bm.apply(v)) {
                            return Ok(Outcome::fails(SubmoduleWitness::Triple {
                                a: a.clone(),
                                b: b.clone(),
                                m: v.clone(),
                            }));
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::holds())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MultiplicationKind {
    /// Every submodule is `IM` for some ideal `I`.
    Multiplication,
    /// Every pseudo-absorbing primary submodule is `IM` for some ideal `I`.
    PseudoAbsorbingPrimary,
}

impl MultiplicationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            MultiplicationKind::Multiplication => "multiplication",
            MultiplicationKind::PseudoAbsorbingPrimary => "pseudo_absorbing_primary_multiplication",
        }
    }
}

/// Order in which submodules are examined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Full enumeration in lattice order.
    Exhaustive,
    /// Submodules containing `PM` first, which finds counterexamples in
    /// modules whose full lattice is over budget; a positive verdict still
    /// needs the full enumeration.
    #[default]
    TopFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicationWitness {
    pub submodule: Submodule,
    pub colon: GeneralIdeal,
    pub colon_split: Option<SplitIdeal>,
    /// `(N : M) M`, which differs from `N`.
    pub product: Submodule,
    /// Present for the pseudo-absorbing primary variant.
    pub colon_source: Option<ColonSource>,
}

/// Tests `N = (N : M) M` on every proper submodule `N` (every
/// pseudo-absorbing primary one for the restricted variant) and returns the
/// first failure.
pub fn multiplication_predicate(
    m: &FiniteModule,
    kind: MultiplicationKind,
    strategy: Strategy,
    budgets: &Budgets,
) -> Result<Outcome<MultiplicationWitness>, Error> {
    if m.is_zero() {
        return Ok(Outcome::holds());
    }
    let ring = m.working_ring();
    let mut cache: BTreeMap<GeneralIdeal, ColonDecision> = BTreeMap::new();
    let mut seen: BTreeSet<Submodule> = BTreeSet::new();
    let test = |n: &Submodule, cache: &mut BTreeMap<GeneralIdeal, ColonDecision>| -> Result<Option<MultiplicationWitness>, Error> {
        if n.is_full() {
            return Ok(None);
        }
        let colon = m.colon_ideal_in(n, &ring)?;
        let mut source = None;
        if kind == MultiplicationKind::PseudoAbsorbingPrimary {
            let decision = match cache.get(&colon) {
                Some(d) => d.clone(),
                None => {
                    let d = ideal_is_two_absorbing_primary(&colon, budgets)?;
                    cache.insert(colon.clone(), d.clone());
                    d
                }
            };
            if !decision.holds {
                return Ok(None);
            }
            source = Some(decision.source);
        }
        let product = m.ideal_action(&colon)?;
        if &product == n {
            return Ok(None);
        }
        Ok(Some(MultiplicationWitness {
            submodule: n.clone(),
            colon_split: colon.recognize_split(),
            colon,
            product,
            colon_source: source,
        }))
    };
    if strategy == Strategy::TopFirst {
        for n in submodules_containing(m, &m.radical(), budgets)? {
            if let Some(w) = test(&n, &mut cache)? {
                return Ok(Outcome::fails(w));
            }
            seen.insert(n);
        }
    }
    for n in enumerate_submodules(m, budgets)? {
        if seen.contains(&n) {
            continue;
        }
        if let Some(w) = test(&n, &mut cache)? {
            return Ok(Outcome::fails(w));
        }
    }
    Ok(Outcome::holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Subspace;
    use crate::module::tests::s22;

    #[test]
    fn s22_line_is_pseudo_absorbing_primary() {
        let m = s22();
        let n = Subspace::span(m.field(), 3, [alloc::vec![0, 1, 0]]);
        let b = Budgets::default();
        assert!(submodule_predicate(&m, &n, SubmodulePredicate::PseudoAbsorbingPrimary, &b).unwrap().holds);
        assert_eq!(submodule_predicate(&m, &m.full(), SubmodulePredicate::Prime, &b), Err(Error::NotProper));
    }

    #[test]
    fn truncated_dvr_witness() {
        let m = FiniteModule::jordan_block(2, 4).unwrap();
        let n = m.split_action(SplitIdeal::P1Power(3));
        let b = Budgets::default();
        let out = submodule_predicate(&m, &n, SubmodulePredicate::TwoAbsorbing, &b).unwrap();
        let t = m.working_ring().x();
        assert_eq!(out.witness, Some(SubmoduleWitness::Triple { a: t.clone(), b: t, m: alloc::vec![0, 1, 0, 0] }));
        assert!(submodule_predicate(&m, &n, SubmodulePredicate::TwoAbsorbingPrimary, &b).unwrap().holds);
        assert!(submodule_predicate(&m, &n, SubmodulePredicate::PseudoAbsorbingPrimary, &b).unwrap().holds);
        assert!(!submodule_predicate(&m, &n, SubmodulePredicate::PseudoAbsorbing, &b).unwrap().holds);
    }

    #[test]
    fn multiplication_verdicts() {
        let b = Budgets::default();
        for strategy in [Strategy::Exhaustive, Strategy::TopFirst] {
            let out = multiplication_predicate(&s22(), MultiplicationKind::PseudoAbsorbingPrimary, strategy, &b).unwrap();
            assert!(out.holds);
        }
        let two = FiniteModule::jordan_block(2, 2).unwrap();
        let one = FiniteModule::jordan_block(2, 1).unwrap();
        let sum = two.direct_sum(&one).unwrap();
        let out = multiplication_predicate(&sum, MultiplicationKind::Multiplication, Strategy::Exhaustive, &b).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.submodule, Subspace::span(sum.field(), 3, [alloc::vec![0, 0, 1]]));
        assert_eq!(w.colon_split, Some(SplitIdeal::P1Power(2)));
        assert!(w.product.is_zero());
    }
}
