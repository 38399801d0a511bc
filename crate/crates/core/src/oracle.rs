//! Straightforward re-implementations used to cross-check the engine.
//!
//! Nothing here shares code with the predicate engine beyond ring
//! multiplication and subspace membership: colons are found by trying every
//! ring element, radicals by powering, and `IM` by acting with every element
//! of `I`. No caching and no quantifier reductions besides lifting from the
//! smallest quotient that contains the ideal.

use alloc::vec;
use alloc::vec::Vec;

use crate::budget::{checked_pow, Budgets};
use crate::error::Error;
use crate::field::Subspace;
use crate::module::{FiniteModule, MultiplicationKind, MultiplicationWitness, Submodule};
use crate::ring::{Monomial, RingElement, RingMode, RingSpec};

/// `r v`, expanded term by term.
pub fn act(m: &FiniteModule, r: &RingElement, v: &[u32]) -> Vec<u32> {
    let fp = m.field();
    let mut out = vec![0u32; v.len()];
    for (mono, c) in r.terms() {
        let (a, e) = match mono {
            Monomial::One => {
                fp.axpy(&mut out, c, v);
                continue;
            }
            Monomial::X(e) => (m.x(), e),
            Monomial::Y(e) => (m.y_or_zero(), e),
        };
        let mut w = v.to_vec();
        for _ in 0..e {
            w = a.apply(&w);
        }
        fp.axpy(&mut out, c, &w);
    }
    out
}

/// Membership of every element of `ring` in `(N : M)`, by index.
pub fn colon_members(m: &FiniteModule, n: &Submodule, ring: &RingSpec, budgets: &Budgets) -> Result<Vec<bool>, Error> {
    let count = ring.element_count();
    if count > budgets.triples {
        return Err(Error::BudgetExceeded { what: "naive colon", required: count, limit: budgets.triples });
    }
    let basis: Vec<Vec<u32>> = (0..m.dim()).map(|i| m.unit_vector(i)).collect();
    Ok(ring.elements().map(|r| basis.iter().all(|v| n.contains(&act(m, &r, v)))).collect())
}

fn monomial_in(ring: &RingSpec, members: &[bool], mono: Monomial) -> bool {
    members[ring.monomial(mono).index() as usize]
}

/// Smallest `k` with `x^k, y^k` in the ideal (`t^k` in DVR mode).
fn minimal_power(ring: &RingSpec, members: &[bool]) -> usize {
    let n = ring.truncation();
    let x = (1..n).find(|&k| monomial_in(ring, members, Monomial::X(k))).unwrap_or(n);
    if ring.mode() == RingMode::Dvr {
        return x;
    }
    let y = (1..n).find(|&k| monomial_in(ring, members, Monomial::Y(k))).unwrap_or(n);
    x.max(y)
}

/// Lifts an element of a smaller quotient by padding its branches.
fn lift(big: &RingSpec, r: &RingElement) -> u64 {
    let mut coeffs = vec![0u32; big.dim()];
    for (mono, c) in r.terms() {
        let i = big.index_of(mono).expect("monomial survives in the larger quotient");
        coeffs[i] = c;
    }
    big.element(coeffs).expect("reduced").index()
}

/// Whether the ideal given by `members` is 2-absorbing primary, checked on
/// every triple of the smallest quotient containing it. Returns a violating
/// triple of element indices in that quotient when it is not.
pub fn two_absorbing_primary(
    ring: &RingSpec,
    members: &[bool],
    budgets: &Budgets,
) -> Result<Result<(), Option<(RingElement, RingElement, RingElement)>>, Error> {
    if members[ring.one().index() as usize] {
        return Ok(Err(None));
    }
    let k = minimal_power(ring, members);
    let small = ring.with_truncation(k)?;
    let count = small.element_count();
    let required = checked_pow(count, 3);
    if required > budgets.triples {
        return Err(Error::BudgetExceeded { what: "naive triples", required, limit: budgets.triples });
    }
    let elements: Vec<RingElement> = small.elements().collect();
    let inside: Vec<bool> = elements.iter().map(|r| members[lift(ring, r) as usize]).collect();
    let index = |r: &RingElement| r.index() as usize;
    let radical: Vec<bool> = elements.iter().map(|r| inside[index(&r.pow(small.dim()))]).collect();
    for a in &elements {
        for b in &elements {
            let ab = a.mul(b);
            for c in &elements {
                if !inside[index(&ab.mul(c))] {
                    continue;
                }
                if inside[index(&ab)] || radical[index(&a.mul(c))] || radical[index(&b.mul(c))] {
                    continue;
                }
                return Ok(Err(Some((a.clone(), b.clone(), c.clone()))));
            }
        }
    }
    Ok(Ok(()))
}

/// `I M` with `I` given by membership.
pub fn ideal_times_module(m: &FiniteModule, ring: &RingSpec, members: &[bool]) -> Submodule {
    let mut vectors = Vec::new();
    for (r, inside) in ring.elements().zip(members) {
        if *inside {
            vectors.extend((0..m.dim()).map(|i| act(m, &r, &m.unit_vector(i))));
        }
    }
    Subspace::span(m.field(), m.dim(), vectors)
}

/// Re-derives a multiplication counterexample from scratch: the submodule
/// is proper and invariant, its colon matches the reported one, the colon
/// is 2-absorbing primary for the restricted variant, and `(N : M) M`
/// matches the reported product and differs from `N`.
pub fn recheck_multiplication_witness(
    m: &FiniteModule,
    w: &MultiplicationWitness,
    kind: MultiplicationKind,
    budgets: &Budgets,
) -> Result<bool, Error> {
    let n = &w.submodule;
    if n.ambient() != m.dim() || n.is_full() || !m.is_invariant(n) {
        return Ok(false);
    }
    let ring = *w.colon.ring();
    let members = colon_members(m, n, &ring, budgets)?;
    let reported: Vec<bool> = ring.elements().map(|r| w.colon.contains(&r)).collect();
    if members != reported {
        return Ok(false);
    }
    if kind == MultiplicationKind::PseudoAbsorbingPrimary && two_absorbing_primary(&ring, &members, budgets)?.is_err() {
        return Ok(false);
    }
    let product = ideal_times_module(m, &ring, &members);
    Ok(product == w.product && &product != n)
}
