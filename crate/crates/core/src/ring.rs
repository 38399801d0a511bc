//! The pullback ring `R = k[x, y]/(xy)` (localized), its finite quotients
//! `Q_N = R/P^N`, the discrete valuation quotients `k[t]/t^N`, split ideals
//! and exhaustive ideal predicates.
//!
//! An element of `Q_N` is stored as `(c0, a_1..a_{N-1}, b_1..b_{N-1})`,
//! meaning `c0 + sum a_i x^i + sum b_j y^j`. In discrete valuation mode only
//! `(c0, a_1..a_{N-1})` is stored and `x` is printed as `t`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::{checked_pow, Budgets};
use crate::error::Error;
use crate::field::{Fp, Matrix, Subspace};
use crate::Outcome;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RingMode {
    Pullback,
    Dvr,
}

impl RingMode {
    pub fn as_str(self) -> &'static str {
        match self {
            RingMode::Pullback => "pullback",
            RingMode::Dvr => "dvr",
        }
    }
}

/// A basis monomial of `Q_N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Monomial {
    One,
    X(usize),
    Y(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingSpec {
    fp: Fp,
    mode: RingMode,
    n: usize,
}

pub fn make_quotient_ring(p: u32, n: usize, mode: RingMode) -> Result<RingSpec, Error> {
    RingSpec::new(p, n, mode)
}

impl RingSpec {
    pub fn new(p: u32, n: usize, mode: RingMode) -> Result<Self, Error> {
        let fp = Fp::new(p)?;
        if n == 0 {
            return Err(Error::ZeroTruncation);
        }
        Ok(RingSpec { fp, mode, n })
    }

    pub fn pullback(p: u32, n: usize) -> Result<Self, Error> {
        Self::new(p, n, RingMode::Pullback)
    }

    pub fn dvr(p: u32, n: usize) -> Result<Self, Error> {
        Self::new(p, n, RingMode::Dvr)
    }

    pub fn field(&self) -> Fp {
        self.fp
    }

    pub fn p(&self) -> u32 {
        self.fp.modulus()
    }

    pub fn mode(&self) -> RingMode {
        self.mode
    }

    pub fn truncation(&self) -> usize {
        self.n
    }

    /// Same characteristic and mode, different truncation.
    pub fn with_truncation(&self, n: usize) -> Result<Self, Error> {
        Self::new(self.p(), n, self.mode)
    }

    pub fn dim(&self) -> usize {
        match self.mode {
            RingMode::Pullback => 2 * self.n - 1,
            RingMode::Dvr => self.n,
        }
    }

    pub fn element_count(&self) -> u128 {
        checked_pow(self.p() as u128, self.dim())
    }

    pub fn unit_count(&self) -> u128 {
        (self.p() as u128 - 1) * checked_pow(self.p() as u128, self.dim() - 1)
    }

    /// Basis monomials in coefficient order.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mut out = vec![Monomial::One];
        out.extend((1..self.n).map(Monomial::X));
        if self.mode == RingMode::Pullback {
            out.extend((1..self.n).map(Monomial::Y));
        }
        out
    }

    /// Coefficient position of a monomial, or `None` when it vanishes in
    /// this quotient.
    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        match m {
            Monomial::One => Some(0),
            Monomial::X(0) | Monomial::Y(0) => Some(0),
            Monomial::X(i) if i < self.n => Some(i),
            Monomial::Y(j) if j < self.n && self.mode == RingMode::Pullback => Some(self.n - 1 + j),
            _ => None,
        }
    }

    pub fn monomial_at(&self, index: usize) -> Monomial {
        if index == 0 {
            Monomial::One
        } else if index < self.n {
            Monomial::X(index)
        } else {
            Monomial::Y(index + 1 - self.n)
        }
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: *self, coeffs: vec![0; self.dim()] }
    }

    pub fn one(&self) -> RingElement {
        self.monomial(Monomial::One)
    }

    pub fn monomial(&self, m: Monomial) -> RingElement {
        let mut e = self.zero();
        if let Some(i) = self.index_of(m) {
            e.coeffs[i] = 1;
        }
        e
    }

    pub fn x(&self) -> RingElement {
        self.monomial(Monomial::X(1))
    }

    /// `y` in pullback mode; zero in discrete valuation mode.
    pub fn y(&self) -> RingElement {
        self.monomial(Monomial::Y(1))
    }

    pub fn element(&self, coeffs: Vec<u32>) -> Result<RingElement, Error> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "ring element needs {} coefficients, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p()) {
            return Err(Error::UnreducedEntry { value: bad as u64, p: self.p() });
        }
        Ok(RingElement { ring: *self, coeffs })
    }

    /// The element whose base-`p` digits (constant term first) are `index`.
    pub fn element_at(&self, index: u64) -> RingElement {
        RingElement { ring: *self, coeffs: self.fp.decode(index, self.dim()) }
    }

    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let total = self.element_count() as u64;
        (0..total).map(move |i| self.element_at(i))
    }

    fn x_coeff(&self, a: &[u32], i: usize) -> u32 {
        a[i]
    }

    fn y_coeff(&self, a: &[u32], j: usize) -> u32 {
        if j == 0 {
            a[0]
        } else {
            a[self.n - 1 + j]
        }
    }

    /// Product of two coefficient vectors. Both branches are truncated
    /// polynomials sharing the constant term, and mixed terms vanish.
    pub(crate) fn mul_coeffs(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let fp = self.fp;
        let n = self.n;
        let mut out = vec![0u32; self.dim()];
        for k in 0..n {
            let mut acc = 0u32;
            for i in 0..=k {
                let u = self.x_coeff(a, i);
                if u != 0 {
                    acc = fp.add(acc, fp.mul(u, self.x_coeff(b, k - i)));
                }
            }
            out[k] = acc;
        }
        if self.mode == RingMode::Pullback {
            for k in 1..n {
                let mut acc = 0u32;
                for i in 0..=k {
                    let u = self.y_coeff(a, i);
                    if u != 0 {
                        acc = fp.add(acc, fp.mul(u, self.y_coeff(b, k - i)));
                    }
                }
                out[n - 1 + k] = acc;
            }
        }
        out
    }

    pub(crate) fn pow_coeffs(&self, a: &[u32], e: usize) -> Vec<u32> {
        let mut acc = self.one().coeffs;
        for _ in 0..e {
            acc = self.mul_coeffs(&acc, a);
        }
        acc
    }

    /// Matrix of multiplication by `a` on the coefficient space.
    pub fn multiplication_matrix(&self, a: &[u32]) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim())
            .map(|k| {
                let mut e = vec![0u32; self.dim()];
                e[k] = 1;
                self.mul_coeffs(a, &e)
            })
            .collect();
        Matrix::from_columns(self.fp, self.dim(), &cols)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    ring: RingSpec,
    coeffs: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Mul,
    Pow(usize),
}

/// `a op b`; for `Pow(e)` the second operand only fixes the ring.
pub fn ring_arith(a: &RingElement, b: &RingElement, op: RingOp) -> Result<RingElement, Error> {
    if a.ring != b.ring {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        RingOp::Add => a.add(b),
        RingOp::Mul => a.mul(b),
        RingOp::Pow(e) => a.pow(e),
    })
}

impl RingElement {
    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs[0] != 0
    }

    pub fn index(&self) -> u64 {
        self.ring.fp.encode(&self.coeffs)
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        let fp = self.ring.fp;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| fp.add(a, b)).collect();
        RingElement { ring: self.ring, coeffs }
    }

    pub fn sub(&self, other: &RingElement) -> RingElement {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> RingElement {
        let fp = self.ring.fp;
        RingElement { ring: self.ring, coeffs: self.coeffs.iter().map(|&a| fp.neg(a)).collect() }
    }

    pub fn scale(&self, c: u32) -> RingElement {
        let fp = self.ring.fp;
        RingElement { ring: self.ring, coeffs: self.coeffs.iter().map(|&a| fp.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.ring, other.ring, "ring mismatch");
        RingElement { ring: self.ring, coeffs: self.ring.mul_coeffs(&self.coeffs, &other.coeffs) }
    }

    pub fn pow(&self, e: usize) -> RingElement {
        RingElement { ring: self.ring, coeffs: self.ring.pow_coeffs(&self.coeffs, e) }
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, u32)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.ring.monomial_at(i), c))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var_x = if self.ring.mode == RingMode::Dvr { "t" } else { "x" };
        let mut first = true;
        for (m, c) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let (var, e) = match m {
                Monomial::One => {
                    write!(f, "{c}")?;
                    continue;
                }
                Monomial::X(i) => (var_x, i),
                Monomial::Y(j) => ("y", j),
            };
            if c != 1 {
                write!(f, "{c}")?;
            }
            f.write_str(var)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Exponent used in split-ideal arithmetic; `None` is infinity.
type Exp = Option<usize>;

fn exp_min(a: Exp, b: Exp) -> Exp {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    }
}

fn exp_max(a: Exp, b: Exp) -> Exp {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    }
}

fn exp_add(a: Exp, b: Exp) -> Exp {
    Some(a? + b?)
}

/// Ideals of `R` of the form `P1^n + P2^m`, including the degenerate
/// branches. In discrete valuation mode `P1Power(n)` stands for `(t^n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplitIdeal {
    Zero,
    P1Power(usize),
    P2Power(usize),
    Mixed(usize, usize),
    Unit,
}

impl SplitIdeal {
    /// The maximal ideal.
    pub const MAXIMAL: SplitIdeal = SplitIdeal::Mixed(1, 1);

    /// Valuation bounds `(a, b)`: the ideal is `{(r, s) : v(r) >= a, v(s) >= b}`
    /// intersected with `R`. The unit ideal is `(0, 0)`.
    fn exponents(self) -> (Exp, Exp) {
        match self {
            SplitIdeal::Zero => (None, None),
            SplitIdeal::P1Power(n) => (Some(n), None),
            SplitIdeal::P2Power(m) => (None, Some(m)),
            SplitIdeal::Mixed(n, m) => (Some(n), Some(m)),
            SplitIdeal::Unit => (Some(0), Some(0)),
        }
    }

    /// Canonical ideal cut out by valuation bounds. A zero bound on one side
    /// is raised to 1 by the gluing of constant terms unless both are zero.
    fn from_exponents(a: Exp, b: Exp) -> SplitIdeal {
        match (a, b) {
            (Some(0), Some(0)) => SplitIdeal::Unit,
            (Some(0), b) => Self::from_exponents(Some(1), b),
            (a, Some(0)) => Self::from_exponents(a, Some(1)),
            (None, None) => SplitIdeal::Zero,
            (Some(n), None) => SplitIdeal::P1Power(n),
            (None, Some(m)) => SplitIdeal::P2Power(m),
            (Some(n), Some(m)) => SplitIdeal::Mixed(n, m),
        }
    }

    pub fn canonical(self) -> SplitIdeal {
        let (a, b) = self.exponents();
        Self::from_exponents(a, b)
    }

    pub fn is_proper(self) -> bool {
        self != SplitIdeal::Unit
    }

    pub fn sum(self, other: SplitIdeal) -> SplitIdeal {
        let (a, b) = self.exponents();
        let (c, d) = other.exponents();
        Self::from_exponents(exp_min(a, c), exp_min(b, d))
    }

    pub fn intersect(self, other: SplitIdeal) -> SplitIdeal {
        let (a, b) = self.exponents();
        let (c, d) = other.exponents();
        Self::from_exponents(exp_max(a, c), exp_max(b, d))
    }

    pub fn product(self, other: SplitIdeal) -> SplitIdeal {
        let (a, b) = self.exponents();
        let (c, d) = other.exponents();
        Self::from_exponents(exp_add(a, c), exp_add(b, d))
    }

    pub fn power(self, k: usize) -> SplitIdeal {
        if k == 0 {
            return SplitIdeal::Unit;
        }
        let (a, b) = self.exponents();
        Self::from_exponents(a.map(|a| a * k), b.map(|b| b * k))
    }

    pub fn radical(self) -> SplitIdeal {
        match self {
            SplitIdeal::Zero => SplitIdeal::Zero,
            SplitIdeal::P1Power(_) => SplitIdeal::P1Power(1),
            SplitIdeal::P2Power(_) => SplitIdeal::P2Power(1),
            SplitIdeal::Mixed(..) => SplitIdeal::MAXIMAL,
            SplitIdeal::Unit => SplitIdeal::Unit,
        }
    }

    /// `(self : other) = {r : r * other ⊆ self}`.
    pub fn colon(self, other: SplitIdeal) -> SplitIdeal {
        let (a, b) = self.exponents();
        let (c, d) = other.exponents();
        let side = |a: Exp, c: Exp| match (a, c) {
            (_, None) => Some(0),
            (None, Some(_)) => None,
            (Some(a), Some(c)) => Some(a.saturating_sub(c)),
        };
        Self::from_exponents(side(a, c), side(b, d))
    }

    pub fn is_two_absorbing_primary(self) -> bool {
        is_two_absorbing_primary_split(self)
    }

    /// True when the ideal contains `P^N` (pullback) or `t^N` (discrete
    /// valuation), i.e. when it is determined by its image in the quotient.
    pub fn contains_truncation_power(self, ring: &RingSpec) -> bool {
        let n = ring.truncation();
        match (ring.mode(), self) {
            (_, SplitIdeal::Unit) => true,
            (RingMode::Pullback, SplitIdeal::Mixed(a, b)) => a <= n && b <= n,
            (RingMode::Dvr, SplitIdeal::P1Power(a)) => a <= n,
            _ => false,
        }
    }

    /// Image of the ideal in `Q_N`: the span of `x^i` (`i >= n`) and `y^j`
    /// (`j >= m`) below the truncation.
    pub fn image_in(self, ring: &RingSpec) -> GeneralIdeal {
        let fp = ring.field();
        let dim = ring.dim();
        let unit = |i: usize| {
            let mut v = vec![0u32; dim];
            v[i] = 1;
            v
        };
        let (a, b) = self.exponents();
        let vectors: Vec<Vec<u32>> = if self == SplitIdeal::Unit {
            (0..dim).map(unit).collect()
        } else {
            let n = ring.truncation();
            let mut v = Vec::new();
            if let Some(a) = a {
                v.extend((a.max(1)..n).map(|i| unit(ring.index_of(Monomial::X(i)).unwrap())));
            }
            if ring.mode() == RingMode::Pullback {
                if let Some(b) = b {
                    v.extend((b.max(1)..n).map(|j| unit(ring.index_of(Monomial::Y(j)).unwrap())));
                }
            }
            v
        };
        GeneralIdeal { ring: *ring, space: Subspace::span(fp, dim, vectors) }
    }

    /// All split ideals of the given ring that contain the truncation power.
    pub fn embeddable(ring: &RingSpec) -> Vec<SplitIdeal> {
        let n = ring.truncation();
        let mut out = Vec::new();
        match ring.mode() {
            RingMode::Pullback => {
                for a in 1..=n {
                    for b in 1..=n {
                        out.push(SplitIdeal::Mixed(a, b));
                    }
                }
            }
            RingMode::Dvr => out.extend((1..=n).map(SplitIdeal::P1Power)),
        }
        out.push(SplitIdeal::Unit);
        out
    }
}

impl fmt::Display for SplitIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplitIdeal::Zero => f.write_str("0"),
            SplitIdeal::P1Power(n) => write!(f, "P1^{n} + 0"),
            SplitIdeal::P2Power(m) => write!(f, "0 + P2^{m}"),
            SplitIdeal::Mixed(n, m) => write!(f, "P1^{n} + P2^{m}"),
            SplitIdeal::Unit => f.write_str("R"),
        }
    }
}

/// Every proper split ideal has a prime radical (0, `P1`, `P2` or `P`), so
/// exactly the unit ideal fails.
pub fn is_two_absorbing_primary_split(i: SplitIdeal) -> bool {
    i.is_proper()
}

/// An ideal of `Q_N`, identified with the ideal of `R` containing `P^N`
/// that it lifts to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneralIdeal {
    ring: RingSpec,
    space: Subspace,
}

impl GeneralIdeal {
    /// Checks that `vectors` span an ideal.
    pub fn new(ring: &RingSpec, vectors: Vec<Vec<u32>>) -> Result<Self, Error> {
        for v in &vectors {
            if v.len() != ring.dim() {
                return Err(Error::DimensionMismatch(format!("ideal basis rows need {} entries", ring.dim())));
            }
            if let Some(&bad) = v.iter().find(|&&c| c >= ring.p()) {
                return Err(Error::UnreducedEntry { value: bad as u64, p: ring.p() });
            }
        }
        let space = Subspace::span(ring.field(), ring.dim(), vectors);
        let ideal = GeneralIdeal { ring: *ring, space };
        let gens = [ring.x(), ring.y()];
        for v in ideal.space.basis() {
            for g in &gens {
                let w = ring.mul_coeffs(g.coeffs(), v);
                if !ideal.space.contains(&w) {
                    return Err(Error::NotAnIdeal(format!("not closed under multiplication by {g}")));
                }
            }
        }
        Ok(ideal)
    }

    pub(crate) fn from_space(ring: RingSpec, space: Subspace) -> Self {
        GeneralIdeal { ring, space }
    }

    /// The ideal generated by the given elements.
    pub fn generated_by(ring: &RingSpec, gens: &[RingElement]) -> Self {
        let monomials: Vec<RingElement> = ring.monomials().into_iter().map(|m| ring.monomial(m)).collect();
        let vectors = gens
            .iter()
            .flat_map(|g| monomials.iter().map(move |m| ring.mul_coeffs(g.coeffs(), m.coeffs())));
        GeneralIdeal { ring: *ring, space: Subspace::span(ring.field(), ring.dim(), vectors) }
    }

    pub fn zero(ring: &RingSpec) -> Self {
        GeneralIdeal { ring: *ring, space: Subspace::zero(ring.field(), ring.dim()) }
    }

    pub fn unit(ring: &RingSpec) -> Self {
        GeneralIdeal { ring: *ring, space: Subspace::full(ring.field(), ring.dim()) }
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        self.space.basis()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_proper(&self) -> bool {
        !self.space.contains(self.ring.one().coeffs())
    }

    pub fn contains(&self, r: &RingElement) -> bool {
        self.space.contains(r.coeffs())
    }

    pub fn is_subset_of(&self, other: &GeneralIdeal) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    fn check_ring(&self, other: &GeneralIdeal) -> Result<(), Error> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// The split ideal with this image, when the ideal is spanned by
    /// monomials.
    pub fn recognize_split(&self) -> Option<SplitIdeal> {
        if !self.is_proper() {
            return Some(SplitIdeal::Unit);
        }
        if !self.space.is_coordinate() {
            return None;
        }
        let ring = &self.ring;
        let n = ring.truncation();
        let has = |m: Monomial| {
            let mut v = vec![0u32; ring.dim()];
            v[ring.index_of(m).unwrap()] = 1;
            self.space.contains(&v)
        };
        let a = (1..n).find(|&i| has(Monomial::X(i))).unwrap_or(n);
        match ring.mode() {
            RingMode::Dvr => Some(SplitIdeal::P1Power(a)),
            RingMode::Pullback => {
                let b = (1..n).find(|&j| has(Monomial::Y(j))).unwrap_or(n);
                Some(SplitIdeal::Mixed(a, b))
            }
        }
    }

    pub fn sum(&self, other: &GeneralIdeal) -> Result<GeneralIdeal, Error> {
        self.check_ring(other)?;
        Ok(GeneralIdeal { ring: self.ring, space: self.space.sum(&other.space) })
    }

    pub fn intersection(&self, other: &GeneralIdeal) -> Result<GeneralIdeal, Error> {
        self.check_ring(other)?;
        Ok(GeneralIdeal { ring: self.ring, space: self.space.intersection(&other.space) })
    }

    pub fn product(&self, other: &GeneralIdeal) -> Result<GeneralIdeal, Error> {
        self.check_ring(other)?;
        let ring = self.ring;
        let vectors = self
            .basis()
            .iter()
            .flat_map(|u| other.basis().iter().map(move |v| ring.mul_coeffs(u, v)));
        Ok(GeneralIdeal { ring, space: Subspace::span(ring.field(), ring.dim(), vectors) })
    }

    pub fn power(&self, k: usize) -> GeneralIdeal {
        let mut acc = GeneralIdeal::unit(&self.ring);
        for _ in 0..k {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `(self : other)`, solved as a linear system.
    pub fn colon(&self, other: &GeneralIdeal) -> Result<GeneralIdeal, Error> {
        self.check_ring(other)?;
        let ring = self.ring;
        let ann = self.space.annihilator_matrix();
        if ann.rows() == 0 || other.space.is_zero() {
            return Ok(GeneralIdeal::unit(&ring));
        }
        let blocks: Vec<Matrix> = other
            .basis()
            .iter()
            .map(|j| ann.mul(&ring.multiplication_matrix(j)))
            .collect();
        let system = Matrix::vstack(ring.field(), ring.dim(), &blocks);
        Ok(GeneralIdeal { ring, space: system.kernel() })
    }

    /// Smallest `w >= 1` with `P^w` contained in the ideal (at most `N`).
    pub fn minimal_power(&self) -> usize {
        let ring = &self.ring;
        let n = ring.truncation();
        let has = |m: Monomial| {
            let mut v = vec![0u32; ring.dim()];
            v[ring.index_of(m).unwrap()] = 1;
            self.space.contains(&v)
        };
        if !self.is_proper() {
            return 1;
        }
        let a = (1..n).find(|&i| has(Monomial::X(i))).unwrap_or(n);
        let b = match ring.mode() {
            RingMode::Pullback => (1..n).find(|&j| has(Monomial::Y(j))).unwrap_or(n),
            RingMode::Dvr => 1,
        };
        a.max(b)
    }

    /// The same ideal of `R` seen in `Q_n`. Going down this is the image;
    /// going up it is the preimage, so it is only meaningful downwards when
    /// `P^n` lies in the ideal.
    pub fn retruncate(&self, n: usize) -> Result<GeneralIdeal, Error> {
        let target = self.ring.with_truncation(n)?;
        let old = self.ring.truncation();
        let project = |v: &Vec<u32>| {
            let mut w = vec![0u32; target.dim()];
            for (i, &c) in v.iter().enumerate() {
                if let Some(j) = target.index_of(self.ring.monomial_at(i)) {
                    w[j] = c;
                }
            }
            w
        };
        let mut vectors: Vec<Vec<u32>> = self.basis().iter().map(project).collect();
        for e in old..n {
            for m in [Monomial::X(e), Monomial::Y(e)] {
                if let Some(j) = target.index_of(m) {
                    let mut w = vec![0u32; target.dim()];
                    w[j] = 1;
                    vectors.push(w);
                }
            }
        }
        Ok(GeneralIdeal { ring: target, space: Subspace::span(target.field(), target.dim(), vectors) })
    }

    /// `{r : r^dim ∈ I}` by enumerating every element of `Q_N`.
    pub fn radical_by_enumeration(&self, budgets: &Budgets) -> Result<GeneralIdeal, Error> {
        let ring = self.ring;
        let count = ring.element_count();
        if count > budgets.triples {
            return Err(Error::BudgetExceeded { what: "radical enumeration", required: count, limit: budgets.triples });
        }
        let e = ring.dim();
        let members = ring.elements().filter(|r| self.space.contains(&ring.pow_coeffs(r.coeffs(), e)));
        let space = Subspace::span(ring.field(), ring.dim(), members.map(RingElement::into_coeffs));
        Ok(GeneralIdeal { ring, space })
    }
}

impl fmt::Display for GeneralIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, v) in self.basis().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let e = RingElement { ring: self.ring, coeffs: v.clone() };
            write!(f, "{e}")?;
        }
        f.write_str(">")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdealPredicate {
    Prime,
    Primary,
    TwoAbsorbing,
    TwoAbsorbingPrimary,
}

impl IdealPredicate {
    pub const ALL: [IdealPredicate; 4] = [
        IdealPredicate::Prime,
        IdealPredicate::Primary,
        IdealPredicate::TwoAbsorbing,
        IdealPredicate::TwoAbsorbingPrimary,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IdealPredicate::Prime => "prime",
            IdealPredicate::Primary => "primary",
            IdealPredicate::TwoAbsorbing => "two_absorbing",
            IdealPredicate::TwoAbsorbingPrimary => "two_absorbing_primary",
        }
    }

    fn arity(self) -> usize {
        match self {
            IdealPredicate::Prime | IdealPredicate::Primary => 2,
            _ => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IdealWitness {
    /// The ideal is the whole ring; every predicate here requires properness.
    NotProper,
    Pair(RingElement, RingElement),
    Triple(RingElement, RingElement, RingElement),
}

impl fmt::Display for IdealWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealWitness::NotProper => f.write_str("ideal is not proper"),
            IdealWitness::Pair(a, b) => write!(f, "({a}, {b})"),
            IdealWitness::Triple(a, b, c) => write!(f, "({a}, {b}, {c})"),
        }
    }
}

/// Membership tables for an ideal and its radical over all of `Q_N`,
/// indexed by [`RingElement::index`].
pub(crate) struct MembershipTable {
    pub ring: RingSpec,
    pub ideal: Vec<bool>,
    pub radical: Vec<bool>,
    /// Normalized nonunits (leading coefficient 1, constant term 0).
    pub nonunits: Vec<Vec<u32>>,
}

impl MembershipTable {
    pub fn new(ideal: &GeneralIdeal) -> Self {
        let ring = ideal.ring;
        let fp = ring.field();
        let total = ring.element_count() as u64;
        let e = ring.dim();
        let mut member = vec![false; total as usize];
        let mut radical = vec![false; total as usize];
        for i in 0..total {
            let v = fp.decode(i, ring.dim());
            member[i as usize] = ideal.space.contains(&v);
            radical[i as usize] = ideal.space.contains(&ring.pow_coeffs(&v, e));
        }
        let nonunits = fp
            .normalized_vectors(ring.dim())
            .into_iter()
            .filter(|v| v[0] == 0)
            .collect();
        MembershipTable { ring, ideal: member, radical, nonunits }
    }

    #[inline]
    pub fn in_ideal(&self, v: &[u32]) -> bool {
        self.ideal[self.ring.field().encode(v) as usize]
    }

    #[inline]
    pub fn in_radical(&self, v: &[u32]) -> bool {
        self.radical[self.ring.field().encode(v) as usize]
    }

    fn element(&self, v: &[u32]) -> RingElement {
        RingElement { ring: self.ring, coeffs: v.to_vec() }
    }
}

/// Decides an ideal predicate by exhaustive quantification over `Q_N`.
///
/// Units and zero satisfy every implication trivially and the predicates
/// are invariant under nonzero scalars, so only normalized nonunits are
/// quantified. The first violation in increasing element order is
/// returned.
pub fn ideal_predicates_bruteforce(
    ring: &RingSpec,
    ideal: &GeneralIdeal,
    which: IdealPredicate,
    budgets: &Budgets,
) -> Result<Outcome<IdealWitness>, Error> {
    if ideal.ring != *ring {
        return Err(Error::RingMismatch);
    }
    let required = checked_pow(ring.element_count(), which.arity());
    if required > budgets.triples {
        return Err(Error::BudgetExceeded { what: "ideal quantification", required, limit: budgets.triples });
    }
    if !ideal.is_proper() {
        return Ok(Outcome::fails(IdealWitness::NotProper));
    }
    let table = MembershipTable::new(ideal);
    Ok(run_predicate(&table, which))
}

pub(crate) fn run_predicate(t: &MembershipTable, which: IdealPredicate) -> Outcome<IdealWitness> {
    let ring = t.ring;
    let nu = &t.nonunits;
    match which {
        IdealPredicate::Prime | IdealPredicate::Primary => {
            for a in nu {
                for b in nu {
                    let ab = ring.mul_coeffs(a, b);
                    if !t.in_ideal(&ab) {
                        continue;
                    }
                    let ok = t.in_ideal(a)
                        || match which {
                            IdealPredicate::Prime => t.in_ideal(b),
                            _ => t.in_radical(b),
                        };
                    if !ok {
                        return Outcome::fails(IdealWitness::Pair(t.element(a), t.element(b)));
                    }
                }
            }
        }
        IdealPredicate::TwoAbsorbing | IdealPredicate::TwoAbsorbingPrimary => {
            let side = |v: &[u32]| match which {
                IdealPredicate::TwoAbsorbing => t.in_ideal(v),
                _ => t.in_radical(v),
            };
            for a in nu {
                let a_row: Vec<bool> = nu.iter().map(|c| side(&ring.mul_coeffs(a, c))).collect();
                for b in nu {
                    let ab = ring.mul_coeffs(a, b);
                    if t.in_ideal(&ab) {
                        continue;
                    }
                    for (ci, c) in nu.iter().enumerate() {
                        if a_row[ci] {
                            continue;
                        }
                        if !t.in_ideal(&ring.mul_coeffs(&ab, c)) {
                            continue;
                        }
                        if !side(&ring.mul_coeffs(b, c)) {
                            return Outcome::fails(IdealWitness::Triple(t.element(a), t.element(b), t.element(c)));
                        }
                    }
                }
            }
        }
    }
    Outcome::holds()
}

/// Every ideal of `Q_N`, by closing each subspace spanned by normalized
/// nonunit generators. Intended for very small rings only.
pub fn enumerate_ideals(ring: &RingSpec, budgets: &Budgets) -> Result<Vec<GeneralIdeal>, Error> {
    use alloc::collections::BTreeSet;
    let count = ring.element_count();
    if count > budgets.triples {
        return Err(Error::BudgetExceeded { what: "ideal enumeration", required: count, limit: budgets.triples });
    }
    let nonunits: Vec<RingElement> = ring
        .field()
        .normalized_vectors(ring.dim())
        .into_iter()
        .filter(|v| v[0] == 0)
        .map(|v| RingElement { ring: *ring, coeffs: v })
        .collect();
    let mut found: BTreeSet<GeneralIdeal> = BTreeSet::new();
    let mut frontier = vec![GeneralIdeal::zero(ring)];
    found.insert(GeneralIdeal::zero(ring));
    while let Some(i) = frontier.pop() {
        for g in &nonunits {
            if i.contains(g) {
                continue;
            }
            let j = i.sum(&GeneralIdeal::generated_by(ring, core::slice::from_ref(g))).expect("same ring");
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    found.insert(GeneralIdeal::unit(ring));
    let mut out: Vec<GeneralIdeal> = found.into_iter().collect();
    out.sort_by(|a, b| (a.dim(), a.basis()).cmp(&(b.dim(), b.basis())));
    Ok(out)
}

/// Renders a ring element given by raw coefficients.
pub fn format_coeffs(ring: &RingSpec, coeffs: &[u32]) -> String {
    format!("{}", RingElement { ring: *ring, coeffs: coeffs.to_vec() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let q = make_quotient_ring(2, 3, RingMode::Pullback).unwrap();
        assert_eq!(q.dim(), 5);
        assert_eq!(q.element_count(), 32);
        assert_eq!(q.unit_count(), 16);
        assert_eq!(q.elements().filter(RingElement::is_unit).count(), 16);
        let d = make_quotient_ring(3, 2, RingMode::Dvr).unwrap();
        assert_eq!((d.dim(), d.element_count()), (2, 9));
        assert_eq!(make_quotient_ring(6, 2, RingMode::Dvr), Err(Error::NotPrime(6)));
        assert_eq!(make_quotient_ring(2, 0, RingMode::Dvr), Err(Error::ZeroTruncation));
    }

    #[test]
    fn arithmetic() {
        let q = RingSpec::pullback(2, 3).unwrap();
        let (x, y, one) = (q.x(), q.y(), q.one());
        assert!(x.mul(&y).is_zero());
        let s = x.add(&y);
        assert_eq!(s.pow(2), x.pow(2).add(&y.pow(2)));
        let u = one.add(&x);
        let v = one.sub(&x).add(&x.pow(2));
        assert_eq!(u.mul(&v), one);
        assert_eq!(format!("{}", s.pow(2)), "x^2 + y^2");
        let other = RingSpec::pullback(2, 4).unwrap();
        assert_eq!(ring_arith(&x, &other.x(), RingOp::Add), Err(Error::RingMismatch));
    }

    #[test]
    fn split_closed_forms() {
        use SplitIdeal::*;
        assert_eq!(Mixed(3, 2).radical(), SplitIdeal::MAXIMAL);
        assert_eq!(P2Power(4).radical(), P2Power(1));
        assert_eq!(SplitIdeal::MAXIMAL.product(SplitIdeal::MAXIMAL), Mixed(2, 2));
        assert_eq!(Mixed(3, 2).colon(SplitIdeal::MAXIMAL), Mixed(2, 1));
        assert_eq!(Mixed(1, 3).colon(Mixed(2, 1)), Mixed(1, 2));
        assert_eq!(P1Power(2).colon(Mixed(1, 1)), P1Power(1));
        assert_eq!(Mixed(2, 2).colon(Zero), Unit);
        assert!(Zero.is_two_absorbing_primary());
        assert!(!Unit.is_two_absorbing_primary());
    }

    #[test]
    fn dvr_example_witness() {
        let r = RingSpec::dvr(2, 4).unwrap();
        let i = SplitIdeal::P1Power(3).image_in(&r);
        let b = Budgets::default();
        let tap = ideal_predicates_bruteforce(&r, &i, IdealPredicate::TwoAbsorbingPrimary, &b).unwrap();
        assert!(tap.holds);
        let ta = ideal_predicates_bruteforce(&r, &i, IdealPredicate::TwoAbsorbing, &b).unwrap();
        let t = r.x();
        assert_eq!(ta.witness, Some(IdealWitness::Triple(t.clone(), t.clone(), t)));
    }

    #[test]
    fn recognition() {
        let q = RingSpec::pullback(2, 3).unwrap();
        let i = SplitIdeal::Mixed(1, 2).image_in(&q);
        assert_eq!(i.recognize_split(), Some(SplitIdeal::Mixed(1, 2)));
        let diag = GeneralIdeal::generated_by(&q, &[q.x().add(&q.y())]);
        let diag = diag.sum(&SplitIdeal::Mixed(2, 2).image_in(&q)).unwrap();
        assert_eq!(diag.dim(), 3);
        assert_eq!(diag.recognize_split(), None);
        assert_eq!(GeneralIdeal::zero(&q).recognize_split(), Some(SplitIdeal::Mixed(3, 3)));
    }

    #[test]
    fn ideals_of_small_dvr() {
        let r = RingSpec::dvr(3, 3).unwrap();
        let all = enumerate_ideals(&r, &Budgets::default()).unwrap();
        assert_eq!(all.len(), 4);
    }
}
