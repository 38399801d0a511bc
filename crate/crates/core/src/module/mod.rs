//! Finite-length modules as pairs of commuting nilpotent operators.

mod hom;
mod lattice;
mod predicates;

pub use hom::{end_algebra, hom_space, iso, IsoOutcome, Profile};
pub use lattice::{enumerate_submodules, submodules_containing};
pub use predicates::{
    ideal_is_two_absorbing_primary, multiplication_predicate, submodule_predicate, ColonDecision, ColonSource,
    MultiplicationKind, MultiplicationWitness, Strategy, SubmodulePredicate, SubmoduleWitness,
};

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::field::{Fp, Matrix, Subspace};
use crate::ring::{GeneralIdeal, Monomial, RingElement, RingMode, RingSpec, SplitIdeal};

/// Submodules are invariant subspaces in canonical echelon form.
pub type Submodule = Subspace;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleViolation {
    NotSquare(&'static str),
    SizeMismatch { x: usize, y: usize },
    MissingY,
    UnexpectedY,
    WrongField { matrix: u32, ring: u32 },
    XYNonzero,
    YXNonzero,
    XNotNilpotent,
    YNotNilpotent,
    TruncationTooSmall { have: usize, needed: usize },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::NotSquare(m) => write!(f, "{m} is not square"),
            ModuleViolation::SizeMismatch { x, y } => write!(f, "X is {x}x{x} but Y is {y}x{y}"),
            ModuleViolation::MissingY => f.write_str("pullback module needs a Y matrix"),
            ModuleViolation::UnexpectedY => f.write_str("dvr module must not have a Y matrix"),
            ModuleViolation::WrongField { matrix, ring } => {
                write!(f, "matrix over F_{matrix} used with a ring over F_{ring}")
            }
            ModuleViolation::XYNonzero => f.write_str("XY != 0"),
            ModuleViolation::YXNonzero => f.write_str("YX != 0"),
            ModuleViolation::XNotNilpotent => f.write_str("X not nilpotent"),
            ModuleViolation::YNotNilpotent => f.write_str("Y not nilpotent"),
            ModuleViolation::TruncationTooSmall { have, needed } => {
                write!(f, "ring truncation {have} is below the nilpotency degree {needed}")
            }
        }
    }
}

/// Reports the first violated identity, checking shapes, then `XY`, `YX`,
/// nilpotency and finally the ring truncation.
pub fn validate_module(ring: &RingSpec, x: &Matrix, y: Option<&Matrix>) -> Result<(), ModuleViolation> {
    if !x.is_square() {
        return Err(ModuleViolation::NotSquare("X"));
    }
    if x.field() != ring.field() {
        return Err(ModuleViolation::WrongField { matrix: x.field().modulus(), ring: ring.p() });
    }
    match (ring.mode(), y) {
        (RingMode::Pullback, None) => return Err(ModuleViolation::MissingY),
        (RingMode::Dvr, Some(_)) => return Err(ModuleViolation::UnexpectedY),
        (RingMode::Pullback, Some(y)) => {
            if !y.is_square() {
                return Err(ModuleViolation::NotSquare("Y"));
            }
            if y.rows() != x.rows() {
                return Err(ModuleViolation::SizeMismatch { x: x.rows(), y: y.rows() });
            }
            if y.field() != ring.field() {
                return Err(ModuleViolation::WrongField { matrix: y.field().modulus(), ring: ring.p() });
            }
            if !x.mul(y).is_zero() {
                return Err(ModuleViolation::XYNonzero);
            }
            if !y.mul(x).is_zero() {
                return Err(ModuleViolation::YXNonzero);
            }
        }
        (RingMode::Dvr, None) => {}
    }
    if !x.is_nilpotent() {
        return Err(ModuleViolation::XNotNilpotent);
    }
    if let Some(y) = y {
        if !y.is_nilpotent() {
            return Err(ModuleViolation::YNotNilpotent);
        }
    }
    let needed = nilpotency_index(x).max(y.map_or(0, nilpotency_index));
    if ring.truncation() < needed {
        return Err(ModuleViolation::TruncationTooSmall { have: ring.truncation(), needed });
    }
    Ok(())
}

/// Smallest `d` with `A^d = 0`, for a nilpotent `A`.
fn nilpotency_index(a: &Matrix) -> usize {
    let mut d = 0;
    let mut pow = Matrix::identity(a.field(), a.rows());
    while !pow.is_zero() {
        pow = pow.mul(a);
        d += 1;
    }
    d
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteModule {
    ring: RingSpec,
    x: Matrix,
    y: Matrix,
    degree: usize,
}

/// A quotient module together with the projection onto it and a section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub module: FiniteModule,
    /// `dim(M/N) x dim(M)`.
    pub projection: Matrix,
    /// `dim(M) x dim(M/N)`, mapping each quotient basis vector to a unit
    /// vector of a complement of `N`.
    pub section: Matrix,
}

impl FiniteModule {
    pub fn new(ring: RingSpec, x: Matrix, y: Option<Matrix>) -> Result<Self, Error> {
        validate_module(&ring, &x, y.as_ref()).map_err(|v| Error::InvalidModule(format!("{v}")))?;
        let y = y.unwrap_or_else(|| Matrix::zeros(ring.field(), x.rows(), x.rows()));
        let degree = nilpotency_index(&x).max(nilpotency_index(&y));
        Ok(FiniteModule { ring, x, y, degree })
    }

    /// Builds a module from operators known to be valid; the ring truncation
    /// is raised to the nilpotency degree when needed.
    pub(crate) fn from_parts(ring: RingSpec, x: Matrix, y: Matrix) -> Self {
        let degree = nilpotency_index(&x).max(nilpotency_index(&y));
        let ring = if ring.truncation() < degree { ring.with_truncation(degree).expect("positive truncation") } else { ring };
        FiniteModule { ring, x, y, degree }
    }

    pub fn zero(ring: RingSpec) -> Self {
        let fp = ring.field();
        FiniteModule { ring, x: Matrix::zeros(fp, 0, 0), y: Matrix::zeros(fp, 0, 0), degree: 0 }
    }

    /// `k[t]/t^n` as a single Jordan block, basis `1, t, .., t^{n-1}`.
    pub fn jordan_block(p: u32, n: usize) -> Result<Self, Error> {
        let ring = RingSpec::dvr(p, n.max(1))?;
        let fp = ring.field();
        let mut x = Matrix::zeros(fp, n, n);
        for i in 1..n {
            x.set(i, i - 1, 1);
        }
        Ok(FiniteModule::from_parts(ring, x, Matrix::zeros(fp, n, n)))
    }

    /// Same operators over a ring with a different truncation.
    pub fn with_truncation(&self, n: usize) -> Result<Self, Error> {
        if n < self.degree {
            return Err(Error::TruncationTooSmall { have: n, needed: self.degree });
        }
        Ok(FiniteModule { ring: self.ring.with_truncation(n)?, ..self.clone() })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn field(&self) -> Fp {
        self.ring.field()
    }

    pub fn mode(&self) -> RingMode {
        self.ring.mode()
    }

    pub fn dim(&self) -> usize {
        self.x.rows()
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    /// `None` in discrete valuation mode.
    pub fn y(&self) -> Option<&Matrix> {
        (self.mode() == RingMode::Pullback).then_some(&self.y)
    }

    /// `Y`, or the zero matrix in discrete valuation mode.
    pub fn y_or_zero(&self) -> &Matrix {
        &self.y
    }

    /// Smallest `d` with `X^d = Y^d = 0`.
    pub fn nilpotency_degree(&self) -> usize {
        self.degree
    }

    /// The smallest quotient ring through which the action factors.
    pub fn working_ring(&self) -> RingSpec {
        self.ring.with_truncation(self.degree.max(1)).expect("positive truncation")
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn monomial_matrix(&self, m: Monomial) -> Matrix {
        match m {
            Monomial::One | Monomial::X(0) | Monomial::Y(0) => Matrix::identity(self.field(), self.dim()),
            Monomial::X(i) => self.x.pow(i),
            Monomial::Y(j) => self.y.pow(j),
        }
    }

    /// The matrix by which `r` acts, for `r` in any quotient of the same ring.
    pub fn action_matrix(&self, r: &RingElement) -> Result<Matrix, Error> {
        self.check_ring(r.ring())?;
        let mut acc = Matrix::zeros(self.field(), self.dim(), self.dim());
        for (m, c) in r.terms() {
            acc.add_scaled(c, &self.monomial_matrix(m));
        }
        Ok(acc)
    }

    pub fn act(&self, r: &RingElement, v: &[u32]) -> Result<Vec<u32>, Error> {
        Ok(self.action_matrix(r)?.apply(v))
    }

    fn check_ring(&self, other: &RingSpec) -> Result<(), Error> {
        if other.p() == self.ring.p() && other.mode() == self.ring.mode() {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn unit_vector(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0u32; self.dim()];
        v[i] = 1;
        v
    }

    pub fn full(&self) -> Submodule {
        Subspace::full(self.field(), self.dim())
    }

    pub fn zero_submodule(&self) -> Submodule {
        Subspace::zero(self.field(), self.dim())
    }

    pub fn is_invariant(&self, u: &Subspace) -> bool {
        u.basis().iter().all(|v| u.contains(&self.x.apply(v)) && u.contains(&self.y.apply(v)))
    }

    /// Smallest submodule containing the given vectors.
    pub fn closure<I>(&self, vectors: I) -> Submodule
    where
        I: IntoIterator<Item = Vec<u32>>,
    {
        let mut u = Subspace::span(self.field(), self.dim(), vectors);
        loop {
            let images = u.basis().iter().flat_map(|v| [self.x.apply(v), self.y.apply(v)]);
            let next = u.sum(&Subspace::span(self.field(), self.dim(), images));
            if next == u {
                return u;
            }
            u = next;
        }
    }

    /// `ker X ∩ ker Y`.
    pub fn socle(&self) -> Submodule {
        self.x.kernel().intersection(&self.y.kernel())
    }

    /// `PM = im X + im Y`.
    pub fn radical(&self) -> Submodule {
        self.x.column_space().sum(&self.y.column_space())
    }

    /// Dimension of `M/PM`, the minimal number of generators.
    pub fn top_dim(&self) -> usize {
        self.dim() - self.radical().dim()
    }

    /// `P1 M ∩ P2 M = 0`. Undefined in discrete valuation mode.
    pub fn is_separated(&self) -> Result<bool, Error> {
        if self.mode() == RingMode::Dvr {
            return Err(Error::WrongMode("pullback"));
        }
        Ok(self.x.column_space().intersection(&self.y.column_space()).is_zero())
    }

    /// Restriction of the operators to an invariant subspace, in its
    /// canonical basis.
    pub fn restrict(&self, u: &Submodule) -> Result<FiniteModule, Error> {
        if !self.is_invariant(u) {
            return Err(Error::NotInvariant);
        }
        let fp = self.field();
        let image = |a: &Matrix| {
            let cols: Vec<Vec<u32>> =
                u.basis().iter().map(|v| u.coordinates(&a.apply(v)).expect("invariant")).collect();
            Matrix::from_columns(fp, u.dim(), &cols)
        };
        Ok(FiniteModule::from_parts(self.ring, image(&self.x), image(&self.y)))
    }

    /// Inclusion matrix of a submodule (columns are its basis vectors).
    pub fn inclusion(&self, u: &Submodule) -> Matrix {
        Matrix::from_columns(self.field(), self.dim(), u.basis())
    }

    pub fn quotient(&self, n: &Submodule) -> Result<Quotient, Error> {
        if !self.is_invariant(n) {
            return Err(Error::NotInvariant);
        }
        let fp = self.field();
        let free = n.free_columns();
        let q = free.len();
        let mut projection = Matrix::zeros(fp, q, self.dim());
        for j in 0..self.dim() {
            let r = n.reduce(&self.unit_vector(j));
            for (i, &c) in free.iter().enumerate() {
                projection.set(i, j, r[c]);
            }
        }
        let section = Matrix::from_columns(fp, self.dim(), &free.iter().map(|&c| self.unit_vector(c)).collect::<Vec<_>>());
        let induce = |a: &Matrix| projection.mul(a).mul(&section);
        let module = FiniteModule::from_parts(self.ring, induce(&self.x), induce(&self.y));
        Ok(Quotient { module, projection, section })
    }

    /// `M ⊕ M'` with block-diagonal operators over the larger truncation.
    pub fn direct_sum(&self, other: &FiniteModule) -> Result<FiniteModule, Error> {
        self.check_ring(&other.ring)?;
        let ring = if self.ring.truncation() >= other.ring.truncation() { self.ring } else { other.ring };
        Ok(FiniteModule::from_parts(
            ring,
            Matrix::block_diagonal(&self.x, &other.x),
            Matrix::block_diagonal(&self.y, &other.y),
        ))
    }

    pub fn direct_sum_all(ring: RingSpec, parts: &[FiniteModule]) -> Result<FiniteModule, Error> {
        parts.iter().try_fold(FiniteModule::zero(ring), |acc, m| acc.direct_sum(m))
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> Result<FiniteModule, Error> {
        if self.mode() == RingMode::Dvr {
            return Err(Error::WrongMode("pullback"));
        }
        Ok(FiniteModule { ring: self.ring, x: self.y.clone(), y: self.x.clone(), degree: self.degree })
    }

    /// The module in the basis given by the columns of `t`:
    /// operators become `T^{-1} A T`.
    pub fn change_basis(&self, t: &Matrix) -> Result<FiniteModule, Error> {
        let inv = t.inverse().ok_or_else(|| Error::DimensionMismatch(String::from("change of basis is not invertible")))?;
        Ok(FiniteModule {
            ring: self.ring,
            x: inv.mul(&self.x).mul(t),
            y: inv.mul(&self.y).mul(t),
            degree: self.degree,
        })
    }

    /// `M/P2M` and `M/P1M` as modules over the two discrete valuation
    /// quotients (`x` acting as `t`, respectively `y` acting as `t`).
    pub fn branch_quotients(&self) -> Result<(FiniteModule, FiniteModule), Error> {
        if self.mode() == RingMode::Dvr {
            return Err(Error::WrongMode("pullback"));
        }
        let dvr = RingSpec::dvr(self.ring.p(), self.ring.truncation())?;
        let fp = self.field();
        let q2 = self.quotient(&self.y.column_space())?;
        let q1 = self.quotient(&self.x.column_space())?;
        let zero = |m: &FiniteModule| Matrix::zeros(fp, m.dim(), m.dim());
        let first = FiniteModule::from_parts(dvr, q2.module.x.clone(), zero(&q2.module));
        let second = FiniteModule::from_parts(dvr, q1.module.y.clone(), zero(&q1.module));
        Ok((first, second))
    }

    /// `{r : r M ⊆ N}` as an ideal of the module's ring.
    pub fn colon_ideal(&self, n: &Submodule) -> Result<GeneralIdeal, Error> {
        self.colon_ideal_in(n, &self.ring)
    }

    /// The colon ideal computed in another quotient of the same ring, whose
    /// truncation must be at least the nilpotency degree.
    pub fn colon_ideal_in(&self, n: &Submodule, ring: &RingSpec) -> Result<GeneralIdeal, Error> {
        self.check_ring(ring)?;
        if ring.truncation() < self.degree {
            return Err(Error::TruncationTooSmall { have: ring.truncation(), needed: self.degree });
        }
        if !self.is_invariant(n) {
            return Err(Error::NotInvariant);
        }
        let fp = self.field();
        let ann = n.annihilator_matrix();
        if ann.rows() == 0 {
            return Ok(GeneralIdeal::unit(ring));
        }
        let mats: Vec<Matrix> = ring.monomials().into_iter().map(|m| self.monomial_matrix(m)).collect();
        let blocks: Vec<Matrix> = (0..self.dim())
            .map(|j| {
                let cols: Vec<Vec<u32>> = mats.iter().map(|a| a.column(j)).collect();
                ann.mul(&Matrix::from_columns(fp, self.dim(), &cols))
            })
            .collect();
        let system = Matrix::vstack(fp, ring.dim(), &blocks);
        Ok(GeneralIdeal::from_space(*ring, system.kernel()))
    }

    /// `(0 : M)`.
    pub fn annihilator(&self) -> Result<GeneralIdeal, Error> {
        self.colon_ideal(&self.zero_submodule())
    }

    /// `I M`.
    pub fn ideal_action(&self, ideal: &GeneralIdeal) -> Result<Submodule, Error> {
        self.check_ring(ideal.ring())?;
        let ring = *ideal.ring();
        let mut vectors = Vec::new();
        for g in ideal.basis() {
            let r = ring.element(g.clone())?;
            let a = self.action_matrix(&r)?;
            vectors.extend((0..self.dim()).map(|j| a.column(j)));
        }
        Ok(Subspace::span(self.field(), self.dim(), vectors))
    }

    /// `I M` for a split ideal: `im X^n + im Y^m`.
    pub fn split_action(&self, ideal: SplitIdeal) -> Submodule {
        let im_x = |n: usize| self.x.pow(n).column_space();
        let im_y = |m: usize| self.y.pow(m).column_space();
        match ideal {
            SplitIdeal::Zero => self.zero_submodule(),
            SplitIdeal::P1Power(n) => im_x(n),
            SplitIdeal::P2Power(m) => im_y(m),
            SplitIdeal::Mixed(n, m) => im_x(n).sum(&im_y(m)),
            SplitIdeal::Unit => self.full(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn s22() -> FiniteModule {
        let ring = RingSpec::pullback(2, 3).unwrap();
        let fp = ring.field();
        let x = Matrix::from_rows(fp, 3, 3, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        let y = Matrix::from_rows(fp, 3, 3, &[vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, 0]]).unwrap();
        FiniteModule::new(ring, x, Some(y)).unwrap()
    }

    #[test]
    fn validation_reports_first_violation() {
        let ring = RingSpec::pullback(2, 2).unwrap();
        let fp = ring.field();
        let e11 = Matrix::from_rows(fp, 2, 2, &[vec![1, 0], vec![0, 0]]).unwrap();
        let zero = Matrix::zeros(fp, 2, 2);
        assert_eq!(validate_module(&ring, &e11, Some(&zero)), Err(ModuleViolation::XNotNilpotent));
        assert_eq!(format!("{}", ModuleViolation::XNotNilpotent), "X not nilpotent");
        let e12 = Matrix::from_rows(fp, 2, 2, &[vec![0, 1], vec![0, 0]]).unwrap();
        let e21 = e12.transpose();
        assert_eq!(validate_module(&ring, &e12, Some(&e21)), Err(ModuleViolation::XYNonzero));
        let one = RingSpec::pullback(2, 1).unwrap();
        assert!(matches!(
            validate_module(&one, &e12, Some(&zero)),
            Err(ModuleViolation::TruncationTooSmall { have: 1, needed: 2 })
        ));
    }

    #[test]
    fn s22_basics() {
        let m = s22();
        assert_eq!(m.socle().dim(), 2);
        assert_eq!(m.top_dim(), 1);
        assert!(m.is_separated().unwrap());
        assert_eq!(m.annihilator().unwrap().recognize_split(), Some(SplitIdeal::Mixed(2, 2)));
        let xa = Subspace::span(m.field(), 3, [vec![0, 1, 0]]);
        assert_eq!(m.colon_ideal(&xa).unwrap().recognize_split(), Some(SplitIdeal::Mixed(1, 2)));
        let diag = Subspace::span(m.field(), 3, [vec![0, 1, 1]]);
        let c = m.colon_ideal(&diag).unwrap();
        assert_eq!(c.recognize_split(), None);
        assert_eq!(m.ideal_action(&c).unwrap(), diag);
        assert_eq!(m.split_action(SplitIdeal::MAXIMAL), m.socle());
    }

    #[test]
    fn quotient_by_everything_is_zero() {
        let m = s22();
        let q = m.quotient(&m.full()).unwrap();
        assert!(q.module.is_zero());
        let by_zero = m.quotient(&m.zero_submodule()).unwrap();
        assert_eq!(by_zero.module, m);
    }

    #[test]
    fn branch_quotients_of_s22() {
        let (a, b) = s22().branch_quotients().unwrap();
        assert_eq!((a.dim(), b.dim()), (2, 2));
        assert_eq!(a.nilpotency_degree(), 2);
        assert_eq!(b.nilpotency_degree(), 2);
    }
}
