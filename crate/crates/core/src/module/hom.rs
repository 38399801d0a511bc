use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FiniteModule;
use crate::budget::{checked_pow, Budgets};
use crate::error::Error;
use crate::field::Matrix;

/// Basis of `Hom(M, M')`: all `T` with `T X = X' T` and `T Y = Y' T`.
pub fn hom_space(m: &FiniteModule, n: &FiniteModule) -> Result<Vec<Matrix>, Error> {
    if m.ring().p() != n.ring().p() || m.mode() != n.mode() {
        return Err(Error::RingMismatch);
    }
    let fp = m.field();
    let (d, e) = (m.dim(), n.dim());
    let unknowns = e * d;
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut system = Matrix::zeros(fp, 2 * unknowns, unknowns);
    let mut row = 0;
    for (a, b) in [(m.x(), n.x()), (m.y_or_zero(), n.y_or_zero())] {
        for i in 0..e {
            for j in 0..d {
                // (T A)_{ij} - (B T)_{ij}
                for k in 0..d {
                    let c = a.get(k, j);
                    if c != 0 {
                        let idx = i * d + k;
                        system.set(row, idx, fp.add(system.get(row, idx), c));
                    }
                }
                for k in 0..e {
                    let c = b.get(i, k);
                    if c != 0 {
                        let idx = k * d + j;
                        system.set(row, idx, fp.sub(system.get(row, idx), c));
                    }
                }
                row += 1;
            }
        }
    }
    Ok(system
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut t = Matrix::zeros(fp, e, d);
            for i in 0..e {
                for k in 0..d {
                    t.set(i, k, v[i * d + k]);
                }
            }
            t
        })
        .collect())
}

pub fn end_algebra(m: &FiniteModule) -> Result<Vec<Matrix>, Error> {
    hom_space(m, m)
}

/// Isomorphism invariants cheap enough to compare before searching.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    pub dim: usize,
    pub rank_x: Vec<usize>,
    pub rank_y: Vec<usize>,
    pub socle: usize,
    pub top: usize,
    pub branch_overlap: usize,
    pub rank_x_on_ker_y: Vec<usize>,
    pub rank_y_on_ker_x: Vec<usize>,
}

impl Profile {
    pub fn of(m: &FiniteModule) -> Profile {
        let d = m.dim();
        let x = m.x();
        let y = m.y_or_zero();
        let ranks = |a: &Matrix| {
            let mut out = Vec::new();
            let mut pow = a.clone();
            for _ in 0..d {
                let r = pow.rank();
                out.push(r);
                if r == 0 {
                    break;
                }
                pow = pow.mul(a);
            }
            out
        };
        let restricted = |a: &Matrix, kernel_of: &Matrix| {
            let ker = kernel_of.kernel();
            let mut out = Vec::new();
            let mut pow = a.clone();
            for _ in 0..d {
                let r = ker.image(&pow).dim();
                out.push(r);
                if r == 0 {
                    break;
                }
                pow = pow.mul(a);
            }
            out
        };
        Profile {
            dim: d,
            rank_x: ranks(x),
            rank_y: ranks(y),
            socle: m.socle().dim(),
            top: m.top_dim(),
            branch_overlap: x.column_space().intersection(&y.column_space()).dim(),
            rank_x_on_ker_y: restricted(x, y),
            rank_y_on_ker_x: restricted(y, x),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    /// An invertible `T` with `T X = X' T` and `T Y = Y' T`.
    Isomorphic(Matrix),
    NotIsomorphic(&'static str),
    /// The hom space is too large to scan and sampling found nothing.
    Unknown,
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }
}

fn combine(basis: &[Matrix], coeffs: &[u32]) -> Matrix {
    let mut t = Matrix::zeros(basis[0].field(), basis[0].rows(), basis[0].cols());
    for (b, &c) in basis.iter().zip(coeffs) {
        t.add_scaled(c, b);
    }
    t
}

/// Searches `Hom(M, M')` for an invertible element.
///
/// Invariants and hom dimensions rule out most non-isomorphic pairs. Then
/// basis elements and seeded random combinations are tried, and finally the
/// whole space is scanned when it fits the budget; otherwise the answer is
/// [`IsoOutcome::Unknown`].
pub fn iso(m: &FiniteModule, n: &FiniteModule, budgets: &Budgets) -> Result<IsoOutcome, Error> {
    if m.ring().p() != n.ring().p() || m.mode() != n.mode() {
        return Err(Error::RingMismatch);
    }
    if m.dim() != n.dim() {
        return Ok(IsoOutcome::NotIsomorphic("dimension"));
    }
    if m.dim() == 0 {
        return Ok(IsoOutcome::Isomorphic(Matrix::zeros(m.field(), 0, 0)));
    }
    if Profile::of(m) != Profile::of(n) {
        return Ok(IsoOutcome::NotIsomorphic("invariant profile"));
    }
    let hom = hom_space(m, n)?;
    if hom.len() != end_algebra(m)?.len() || hom_space(n, m)?.len() != end_algebra(n)?.len() {
        return Ok(IsoOutcome::NotIsomorphic("hom dimension"));
    }
    if hom.is_empty() {
        return Ok(IsoOutcome::NotIsomorphic("no homomorphisms"));
    }
    if let Some(t) = hom.iter().find(|t| t.is_invertible()) {
        return Ok(IsoOutcome::Isomorphic(t.clone()));
    }
    let p = m.field().modulus();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1505_0000 ^ ((m.dim() as u64) << 8) ^ hom.len() as u64);
    for _ in 0..budgets.samples {
        let coeffs: Vec<u32> = (0..hom.len()).map(|_| rng.gen_range(0..p)).collect();
        let t = combine(&hom, &coeffs);
        if t.is_invertible() {
            return Ok(IsoOutcome::Isomorphic(t));
        }
    }
    let total = checked_pow(p as u128, hom.len());
    if total > budgets.iso_combinations {
        return Ok(IsoOutcome::Unknown);
    }
    let fp = m.field();
    for index in 1..total as u64 {
        let t = combine(&hom, &fp.decode(index, hom.len()));
        if t.is_invertible() {
            return Ok(IsoOutcome::Isomorphic(t));
        }
    }
    Ok(IsoOutcome::NotIsomorphic("no invertible intertwiner"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::tests::s22;

    fn triple(n: usize, m: usize) -> FiniteModule {
        crate::strings::realize_finite(2, &[(n, m)]).unwrap()
    }

    #[test]
    fn end_of_s22_is_three_dimensional() {
        assert_eq!(end_algebra(&s22()).unwrap().len(), 3);
    }

    #[test]
    fn permuted_basis_is_isomorphic() {
        let m = s22();
        let fp = m.field();
        let perm = Matrix::from_rows(fp, 3, 3, &[alloc::vec![0, 1, 0], alloc::vec![1, 0, 0], alloc::vec![0, 0, 1]]).unwrap();
        let n = m.change_basis(&perm).unwrap();
        let out = iso(&m, &n, &Budgets::default()).unwrap();
        let IsoOutcome::Isomorphic(t) = out else { panic!("expected an isomorphism") };
        assert_eq!(t.mul(m.x()), n.x().mul(&t));
        assert_eq!(t.mul(m.y_or_zero()), n.y_or_zero().mul(&t));
    }

    #[test]
    fn branch_swap_is_not_isomorphic() {
        let out = iso(&triple(2, 1), &triple(1, 2), &Budgets::default()).unwrap();
        assert_eq!(out, IsoOutcome::NotIsomorphic("invariant profile"));
    }
}
