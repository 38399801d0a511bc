use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::{FiniteModule, Submodule};
use crate::budget::Budgets;
use crate::error::Error;
use crate::field::Subspace;

/// Every submodule of `M`, ordered by dimension and then by canonical basis.
///
/// Each submodule `N' != 0` has a maximal submodule `N` of codimension one,
/// so `N' = N + <v>` with `Xv, Yv ∈ N`; the lattice is built one layer at a
/// time from that observation. The budget caps the number of submodules
/// produced.
pub fn enumerate_submodules(m: &FiniteModule, budgets: &Budgets) -> Result<Vec<Submodule>, Error> {
    let fp = m.field();
    let dim = m.dim();
    let mut layer: BTreeSet<Subspace> = BTreeSet::new();
    layer.insert(m.zero_submodule());
    let mut out: Vec<Submodule> = Vec::new();
    let mut total: u128 = 1;
    let x = m.x();
    let y = m.y_or_zero();
    for _ in 0..=dim {
        let mut next: BTreeSet<Subspace> = BTreeSet::new();
        for n in &layer {
            if n.is_full() {
                continue;
            }
            let w = n.preimage(x).intersection(&n.preimage(y));
            let reps: Vec<Vec<u32>> = {
                let reduced = w.basis().iter().map(|v| n.reduce(v));
                Subspace::span(fp, dim, reduced).basis().to_vec()
            };
            for coeffs in fp.normalized_vectors(reps.len()) {
                let mut v = alloc::vec![0u32; dim];
                for (c, r) in coeffs.iter().zip(&reps) {
                    fp.axpy(&mut v, *c, r);
                }
                let mut vectors: Vec<Vec<u32>> = n.basis().to_vec();
                vectors.push(v);
                if next.insert(Subspace::span(fp, dim, vectors)) {
                    total += 1;
                    if total > budgets.subspaces {
                        return Err(Error::BudgetExceeded {
                            what: "submodule enumeration",
                            required: total,
                            limit: budgets.subspaces,
                        });
                    }
                }
            }
        }
        out.extend(core::mem::take(&mut layer));
        if next.is_empty() {
            break;
        }
        layer = next;
    }
    Ok(out)
}

/// Every submodule containing `u`, in the same order as
/// [`enumerate_submodules`] applied to `M/u`.
pub fn submodules_containing(m: &FiniteModule, u: &Submodule, budgets: &Budgets) -> Result<Vec<Submodule>, Error> {
    let q = m.quotient(u)?;
    let upstairs = enumerate_submodules(&q.module, budgets)?;
    Ok(upstairs
        .into_iter()
        .map(|w| {
            let lifted = w.basis().iter().map(|v| q.section.apply(v));
            u.sum(&Subspace::span(m.field(), m.dim(), lifted))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Matrix;
    use crate::ring::RingSpec;

    #[test]
    fn simple_module_has_two_submodules() {
        let ring = RingSpec::pullback(2, 1).unwrap();
        let z = Matrix::zeros(ring.field(), 1, 1);
        let m = FiniteModule::new(ring, z.clone(), Some(z)).unwrap();
        assert_eq!(enumerate_submodules(&m, &Budgets::default()).unwrap().len(), 2);
    }

    #[test]
    fn jordan_block_is_uniserial() {
        let m = FiniteModule::jordan_block(3, 3).unwrap();
        let subs = enumerate_submodules(&m, &Budgets::default()).unwrap();
        assert_eq!(subs.len(), 4);
        assert_eq!(subs.iter().map(Subspace::dim).collect::<Vec<_>>(), [0, 1, 2, 3]);
    }

    #[test]
    fn s22_has_six() {
        let m = crate::module::tests::s22();
        let subs = enumerate_submodules(&m, &Budgets::default()).unwrap();
        assert_eq!(subs.len(), 6);
    }

    #[test]
    fn budget_refusal() {
        let ring = RingSpec::pullback(2, 1).unwrap();
        let z = Matrix::zeros(ring.field(), 3, 3);
        let m = FiniteModule::new(ring, z.clone(), Some(z)).unwrap();
        let err = enumerate_submodules(&m, &Budgets::default().with_subspaces(10)).unwrap_err();
        assert!(err.is_budget());
        assert_eq!(enumerate_submodules(&m, &Budgets::default()).unwrap().len(), 16);
    }
}
