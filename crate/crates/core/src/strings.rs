//! Chain descriptors for the separated and non-separated indecomposables,
//! their realization as operator pairs, socle amalgamation and separated
//! representations.
//!
//! Orientation: link `i` identifies the `p1`-socle vector `x^{n_i - 1} a_i`
//! with the `p2`-socle vector `y^{m_{i+1} - 1} a_{i+1}`. The exponents
//! `n_1..n_{s-1}` and `m_2..m_s` are consumed by links; `m_1` and `n_s` are
//! the free ends.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::budget::Budgets;
use crate::error::Error;
use crate::field::{Matrix, Subspace};
use crate::module::{iso, FiniteModule, IsoOutcome, Submodule};
use crate::ring::RingSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Exponent {
    Finite(usize),
    Infinite,
}

impl Exponent {
    pub fn finite(self) -> Option<usize> {
        match self {
            Exponent::Finite(n) => Some(n),
            Exponent::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Exponent::Infinite
    }
}

impl From<usize> for Exponent {
    fn from(n: usize) -> Self {
        Exponent::Finite(n)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(n) => write!(f, "{n}"),
            Exponent::Infinite => f.write_str("inf"),
        }
    }
}

/// `(R1/P1^n -> k <- R2/P2^m)`: one generator with branches of length `n`
/// under `x` and `m` under `y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SeparatedTriple {
    pub n: Exponent,
    pub m: Exponent,
}

impl SeparatedTriple {
    pub fn finite(n: usize, m: usize) -> Self {
        SeparatedTriple { n: Exponent::Finite(n), m: Exponent::Finite(m) }
    }

    pub fn as_chain(self) -> ChainDescriptor {
        ChainDescriptor { generators: vec![(self.n, self.m)] }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// The `x` branch.
    P1,
    /// The `y` branch.
    P2,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::P1 => "p1",
            Branch::P2 => "p2",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChainDescriptor {
    pub generators: Vec<(Exponent, Exponent)>,
}

impl ChainDescriptor {
    pub fn new(generators: Vec<(Exponent, Exponent)>) -> Self {
        ChainDescriptor { generators }
    }

    pub fn finite(pairs: &[(usize, usize)]) -> Self {
        ChainDescriptor { generators: pairs.iter().map(|&(n, m)| (n.into(), m.into())).collect() }
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.generators.iter().all(|(n, m)| !n.is_infinite() && !m.is_infinite())
    }

    /// `sum (n_i + m_i - 1) - (s - 1)`, for finite chains.
    pub fn dim(&self) -> Option<usize> {
        let mut total = 0usize;
        for &(n, m) in &self.generators {
            total += n.finite()? + m.finite()? - 1;
        }
        Some(total + 1 - self.len())
    }

    /// Reverses the chain and exchanges the branches.
    pub fn mirror(&self) -> ChainDescriptor {
        ChainDescriptor { generators: self.generators.iter().rev().map(|&(n, m)| (m, n)).collect() }
    }

    /// Replaces every infinite exponent by `t`.
    pub fn truncated(&self, t: usize) -> ChainDescriptor {
        let cap = |e: Exponent| match e {
            Exponent::Infinite => Exponent::Finite(t),
            e => e,
        };
        ChainDescriptor { generators: self.generators.iter().map(|&(n, m)| (cap(n), cap(m))).collect() }
    }

    pub fn finite_pairs(&self) -> Option<Vec<(usize, usize)>> {
        self.generators.iter().map(|&(n, m)| Some((n.finite()?, m.finite()?))).collect()
    }
}

impl fmt::Display for ChainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, (n, m)) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({n},{m})")?;
        }
        f.write_str("]")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescriptorViolation {
    Empty,
    /// Generators are numbered from 1.
    ZeroExponent { generator: usize, branch: Branch },
    LinkingTooSmall { generator: usize, branch: Branch, value: usize },
    LinkingInfinite { generator: usize, branch: Branch },
}

impl fmt::Display for DescriptorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |b: &Branch| match b {
            Branch::P1 => "n",
            Branch::P2 => "m",
        };
        match self {
            DescriptorViolation::Empty => f.write_str("chain has no generators"),
            DescriptorViolation::ZeroExponent { generator, branch } => {
                write!(f, "exponent {}_{generator} must be at least 1", name(branch))
            }
            DescriptorViolation::LinkingTooSmall { generator, branch, value } => {
                write!(f, "linking exponent {}_{generator} = {value} must be at least 2", name(branch))
            }
            DescriptorViolation::LinkingInfinite { generator, branch } => {
                write!(f, "linking exponent {}_{generator} must be finite", name(branch))
            }
        }
    }
}

/// Which ends of the chain are infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainType {
    /// All exponents finite.
    Finite,
    /// `m_1` infinite.
    LeftInfinite,
    /// `n_s` infinite.
    RightInfinite,
    /// Both free ends infinite.
    BothInfinite,
}

impl ChainType {
    pub fn number(self) -> u8 {
        match self {
            ChainType::Finite => 1,
            ChainType::LeftInfinite => 2,
            ChainType::RightInfinite => 3,
            ChainType::BothInfinite => 4,
        }
    }
}

pub fn validate_descriptor(d: &ChainDescriptor) -> Result<ChainType, DescriptorViolation> {
    let s = d.len();
    if s == 0 {
        return Err(DescriptorViolation::Empty);
    }
    for (i, &(n, m)) in d.generators.iter().enumerate() {
        let generator = i + 1;
        for (e, branch, linking) in [(m, Branch::P2, i > 0), (n, Branch::P1, i + 1 < s)] {
            match e {
                Exponent::Finite(0) => return Err(DescriptorViolation::ZeroExponent { generator, branch }),
                Exponent::Finite(v) if linking && v < 2 => {
                    return Err(DescriptorViolation::LinkingTooSmall { generator, branch, value: v })
                }
                Exponent::Infinite if linking => {
                    return Err(DescriptorViolation::LinkingInfinite { generator, branch })
                }
                _ => {}
            }
        }
    }
    let left = d.generators[0].1.is_infinite();
    let right = d.generators[s - 1].0.is_infinite();
    Ok(match (left, right) {
        (false, false) => ChainType::Finite,
        (true, false) => ChainType::LeftInfinite,
        (false, true) => ChainType::RightInfinite,
        (true, true) => ChainType::BothInfinite,
    })
}

/// A basis vector of a realized chain: `x^j a_i`, `y^j a_i` or `a_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeLabel {
    /// Zero-based generator index.
    pub generator: usize,
    pub branch: Option<Branch>,
    pub power: usize,
}

impl fmt::Display for NodeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator + 1;
        match (self.branch, self.power) {
            (None, _) | (_, 0) => write!(f, "a{g}"),
            (Some(b), 1) => write!(f, "{} a{g}", if b == Branch::P1 { "x" } else { "y" }),
            (Some(b), e) => write!(f, "{}^{e} a{g}", if b == Branch::P1 { "x" } else { "y" }),
        }
    }
}

/// A realized chain together with its combinatorial skeleton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realized {
    pub module: FiniteModule,
    /// The finite descriptor actually realized.
    pub descriptor: ChainDescriptor,
    /// Label of each basis vector; a merged socle vector carries the label
    /// of its `x`-branch.
    pub labels: Vec<NodeLabel>,
    /// Basis index of each generator `a_i`.
    pub generators: Vec<usize>,
    /// Basis indices of identified socle vectors, one per link.
    pub merged: Vec<usize>,
    /// Index of `x^j a_i` for `j = 0..n_i`.
    pub x_nodes: Vec<Vec<usize>>,
    /// Index of `y^j a_i` for `j = 0..m_i`.
    pub y_nodes: Vec<Vec<usize>>,
    /// Set when an infinite end was replaced by a finite truncation.
    pub truncated: bool,
}

/// Builds the module of a chain. Infinite ends need `truncation`, and the
/// result is then the different finite module with that exponent, flagged
/// as truncated.
pub fn realize(d: &ChainDescriptor, p: u32, truncation: Option<usize>) -> Result<Realized, Error> {
    validate_descriptor(d).map_err(Error::InvalidDescriptor)?;
    let truncated = !d.is_finite();
    let finite = match (truncated, truncation) {
        (false, _) => d.clone(),
        (true, Some(t)) if t >= 1 => d.truncated(t),
        (true, Some(_)) => return Err(Error::ZeroTruncation),
        (true, None) => return Err(Error::InfiniteWithoutTruncation),
    };
    let pairs = finite.finite_pairs().expect("finite after truncation");
    let mut labels = Vec::new();
    let mut generators = Vec::new();
    let mut merged = Vec::new();
    let mut x_nodes: Vec<Vec<usize>> = Vec::new();
    let mut y_nodes: Vec<Vec<usize>> = Vec::new();
    for (i, &(n, m)) in pairs.iter().enumerate() {
        let top = labels.len();
        labels.push(NodeLabel { generator: i, branch: None, power: 0 });
        generators.push(top);
        let mut xs = vec![top];
        for j in 1..n {
            xs.push(labels.len());
            labels.push(NodeLabel { generator: i, branch: Some(Branch::P1), power: j });
        }
        let mut ys = vec![top];
        for j in 1..m {
            if i > 0 && j == m - 1 {
                let shared = *x_nodes[i - 1].last().expect("linking branch is nonempty");
                merged.push(shared);
                ys.push(shared);
            } else {
                ys.push(labels.len());
                labels.push(NodeLabel { generator: i, branch: Some(Branch::P2), power: j });
            }
        }
        x_nodes.push(xs);
        y_nodes.push(ys);
    }
    let dim = labels.len();
    let degree = pairs.iter().map(|&(n, m)| n.max(m)).max().unwrap_or(1);
    let ring = RingSpec::pullback(p, degree + 1)?;
    let fp = ring.field();
    let mut x = Matrix::zeros(fp, dim, dim);
    let mut y = Matrix::zeros(fp, dim, dim);
    for chain in &x_nodes {
        for w in chain.windows(2) {
            x.set(w[1], w[0], 1);
        }
    }
    for chain in &y_nodes {
        for w in chain.windows(2) {
            y.set(w[1], w[0], 1);
        }
    }
    let module = FiniteModule::new(ring, x, Some(y))?;
    Ok(Realized { module, descriptor: finite, labels, generators, merged, x_nodes, y_nodes, truncated })
}

pub fn realize_triple(t: SeparatedTriple, p: u32, truncation: Option<usize>) -> Result<Realized, Error> {
    realize(&t.as_chain(), p, truncation)
}

/// Shorthand for realizing a finite chain.
pub fn realize_finite(p: u32, pairs: &[(usize, usize)]) -> Result<FiniteModule, Error> {
    Ok(realize(&ChainDescriptor::finite(pairs), p, None)?.module)
}

/// `0 -> K -> S -> M -> 0` with `S` separated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatedRepresentation {
    pub s: FiniteModule,
    pub k: Submodule,
    /// `dim M x dim S`, the surjection with kernel `K`.
    pub phi: Matrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SocleRef {
    pub part: usize,
    pub branch: Branch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Identification {
    pub left: SocleRef,
    pub right: SocleRef,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    pub module: FiniteModule,
    pub representation: SeparatedRepresentation,
    pub parts: Vec<Realized>,
    /// Set when the identifications close a cycle.
    pub band: bool,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// `(S_1 ⊕ .. ⊕ S_r)/K` where `K` is spanned by the differences of the
/// identified socle vectors.
pub fn amalgamate(
    parts: &[SeparatedTriple],
    identifications: &[Identification],
    p: u32,
    truncation: Option<usize>,
    allow_cycles: bool,
) -> Result<Amalgam, Error> {
    if parts.is_empty() {
        return Err(Error::InvalidIdentification(String::from("no parts")));
    }
    let realized: Vec<Realized> = parts.iter().map(|t| realize_triple(*t, p, truncation)).collect::<Result<_, _>>()?;
    let modules: Vec<FiniteModule> = realized.iter().map(|r| r.module.clone()).collect();
    let s = FiniteModule::direct_sum_all(*modules[0].ring(), &modules)?;
    let mut offsets = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for r in &realized {
        offsets.push(acc);
        acc += r.module.dim();
    }
    let mut used = alloc::collections::BTreeSet::new();
    let mut parent: Vec<usize> = (0..parts.len()).collect();
    let mut band = false;
    let mut diffs = Vec::new();
    let socle_index = |r: SocleRef| -> Result<usize, Error> {
        let part = realized
            .get(r.part)
            .ok_or_else(|| Error::InvalidIdentification(format!("part {} does not exist", r.part)))?;
        let chain = match r.branch {
            Branch::P1 => &part.x_nodes[0],
            Branch::P2 => &part.y_nodes[0],
        };
        if chain.len() < 2 {
            return Err(Error::InvalidIdentification(format!(
                "{} branch of part {} has length 1, so its socle vector is the generator",
                r.branch.as_str(),
                r.part
            )));
        }
        Ok(offsets[r.part] + chain[chain.len() - 1])
    };
    for id in identifications {
        if id.left.branch == id.right.branch {
            return Err(Error::InvalidIdentification(String::from(
                "an identification must pair a p1 socle vector with a p2 socle vector",
            )));
        }
        let a = socle_index(id.left)?;
        let b = socle_index(id.right)?;
        for r in [id.left, id.right] {
            if !used.insert(r) {
                return Err(Error::InvalidIdentification(format!(
                    "{} socle of part {} is identified twice",
                    r.branch.as_str(),
                    r.part
                )));
            }
        }
        let (ra, rb) = (find(&mut parent, id.left.part), find(&mut parent, id.right.part));
        if ra == rb {
            if !allow_cycles {
                return Err(Error::BlockCycle);
            }
            band = true;
        } else {
            parent[ra] = rb;
        }
        let mut v = vec![0u32; s.dim()];
        v[a] = 1;
        v[b] = s.field().neg(1);
        diffs.push(v);
    }
    let k = Subspace::span(s.field(), s.dim(), diffs);
    let q = s.quotient(&k)?;
    Ok(Amalgam {
        module: q.module,
        representation: SeparatedRepresentation { s, k, phi: q.projection },
        parts: realized,
        band,
    })
}

/// The parts and identifications that amalgamate to the given chain.
pub fn cut(d: &ChainDescriptor) -> (Vec<SeparatedTriple>, Vec<Identification>) {
    let parts = d.generators.iter().map(|&(n, m)| SeparatedTriple { n, m }).collect();
    let ids = (1..d.len())
        .map(|i| Identification {
            left: SocleRef { part: i - 1, branch: Branch::P1 },
            right: SocleRef { part: i, branch: Branch::P2 },
        })
        .collect();
    (parts, ids)
}

/// Separated representation of a realized chain: `S` is the direct sum of
/// the generators' triples and `K` the span of the identified differences.
pub fn separated_representation(realized: &Realized) -> Result<SeparatedRepresentation, Error> {
    let d = &realized.descriptor;
    let p = realized.module.ring().p();
    let parts: Vec<Realized> = d
        .generators
        .iter()
        .map(|&(n, m)| realize_triple(SeparatedTriple { n, m }, p, None))
        .collect::<Result<_, _>>()?;
    let modules: Vec<FiniteModule> = parts.iter().map(|r| r.module.clone()).collect();
    let s = FiniteModule::direct_sum_all(*realized.module.ring(), &modules)?;
    let fp = s.field();
    let mut phi = Matrix::zeros(fp, realized.module.dim(), s.dim());
    let mut offset = 0;
    let mut diffs = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        for (j, &src) in part.x_nodes[0].iter().enumerate() {
            phi.set(realized.x_nodes[i][j], offset + src, 1);
        }
        for (j, &src) in part.y_nodes[0].iter().enumerate() {
            phi.set(realized.y_nodes[i][j], offset + src, 1);
        }
        if i > 0 {
            let prev = &parts[i - 1];
            let prev_offset = offset - prev.module.dim();
            let mut v = vec![0u32; s.dim()];
            v[prev_offset + *prev.x_nodes[0].last().unwrap()] = 1;
            v[offset + *part.y_nodes[0].last().unwrap()] = fp.neg(1);
            diffs.push(v);
        }
        offset += part.module.dim();
    }
    let k = Subspace::span(fp, s.dim(), diffs);
    Ok(SeparatedRepresentation { s, k, phi })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepresentationViolation {
    NotSeparated,
    NotInRadical,
    MeetsP1,
    MeetsP2,
    NotAnnihilated,
    NotIsomorphic(&'static str),
    IsoUnknown,
    Incompatible(String),
}

impl RepresentationViolation {
    /// The condition letter used in reports.
    pub fn condition(&self) -> &'static str {
        match self {
            RepresentationViolation::NotSeparated => "a",
            RepresentationViolation::NotInRadical | RepresentationViolation::NotAnnihilated => "b",
            RepresentationViolation::MeetsP1 => "c",
            RepresentationViolation::MeetsP2 => "d",
            _ => "e",
        }
    }
}

impl fmt::Display for RepresentationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepresentationViolation::NotSeparated => f.write_str("(a) S is not separated"),
            RepresentationViolation::NotInRadical => f.write_str("(b) K is not contained in PS"),
            RepresentationViolation::NotAnnihilated => f.write_str("(b) PK is nonzero"),
            RepresentationViolation::MeetsP1 => f.write_str("(c) K meets P1 S"),
            RepresentationViolation::MeetsP2 => f.write_str("(d) K meets P2 S"),
            RepresentationViolation::NotIsomorphic(why) => write!(f, "(e) S/K is not isomorphic to M ({why})"),
            RepresentationViolation::IsoUnknown => f.write_str("(e) isomorphism of S/K and M undecided"),
            RepresentationViolation::Incompatible(why) => write!(f, "(e) {why}"),
        }
    }
}

/// Checks the separated-representation conditions in order and reports the
/// first failure.
pub fn verify_separated_representation(
    rep: &SeparatedRepresentation,
    m: &FiniteModule,
    budgets: &Budgets,
) -> Result<(), RepresentationViolation> {
    let s = &rep.s;
    let k = &rep.k;
    if k.ambient() != s.dim() {
        return Err(RepresentationViolation::Incompatible(String::from("K does not live in S")));
    }
    if !s.is_separated().map_err(|e| RepresentationViolation::Incompatible(format!("{e}")))? {
        return Err(RepresentationViolation::NotSeparated);
    }
    if !k.is_subspace_of(&s.radical()) {
        return Err(RepresentationViolation::NotInRadical);
    }
    if !k.intersection(&s.x().column_space()).is_zero() {
        return Err(RepresentationViolation::MeetsP1);
    }
    if !k.intersection(&s.y_or_zero().column_space()).is_zero() {
        return Err(RepresentationViolation::MeetsP2);
    }
    if !k.image(s.x()).is_zero() || !k.image(s.y_or_zero()).is_zero() {
        return Err(RepresentationViolation::NotAnnihilated);
    }
    let q = s.quotient(k).map_err(|e| RepresentationViolation::Incompatible(format!("{e}")))?;
    match iso(&q.module, m, budgets) {
        Ok(IsoOutcome::Isomorphic(_)) => Ok(()),
        Ok(IsoOutcome::NotIsomorphic(why)) => Err(RepresentationViolation::NotIsomorphic(why)),
        Ok(IsoOutcome::Unknown) => Err(RepresentationViolation::IsoUnknown),
        Err(e) => Err(RepresentationViolation::Incompatible(format!("{e}"))),
    }
}

/// Every valid finite chain with `1 <= s <= s_max` generators and exponents
/// in `1..=exp_max`, ordered by length and then lexicographically.
pub fn enumerate_descriptors(s_max: usize, exp_max: usize) -> Vec<ChainDescriptor> {
    let mut out = Vec::new();
    for s in 1..=s_max {
        let slots = 2 * s;
        let mut digits = vec![1usize; slots];
        if exp_max == 0 {
            break;
        }
        loop {
            let d = ChainDescriptor::new(digits.chunks(2).map(|c| (c[0].into(), c[1].into())).collect());
            if validate_descriptor(&d).is_ok() {
                out.push(d);
            }
            let mut i = slots;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                if digits[i] < exp_max {
                    digits[i] += 1;
                    for d in digits.iter_mut().skip(i + 1) {
                        *d = 1;
                    }
                    break;
                }
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    out
}

/// Valid finite chains with `s` generators realizing modules of dimension
/// `dim`.
pub fn descriptors_with(s: usize, dim: usize) -> Vec<ChainDescriptor> {
    if s == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let budget = dim + s - 1;
    let mut current: Vec<usize> = Vec::new();
    fn go(s: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<ChainDescriptor>) {
        if current.len() == 2 * s {
            if remaining == 0 {
                let d = ChainDescriptor::new(current.chunks(2).map(|c| (c[0].into(), c[1].into())).collect());
                if validate_descriptor(&d).is_ok() {
                    out.push(d);
                }
            }
            return;
        }
        let odd = current.len() % 2 == 1;
        // each generator contributes n + m - 1
        for v in 1..=remaining + usize::from(odd) {
            let cost = if odd { v - 1 } else { v };
            if cost > remaining {
                break;
            }
            current.push(v);
            go(s, remaining - cost, current, out);
            current.pop();
        }
    }
    go(s, budget, &mut current, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert_eq!(validate_descriptor(&ChainDescriptor::finite(&[(2, 1), (1, 2)])), Ok(ChainType::Finite));
        assert_eq!(
            validate_descriptor(&ChainDescriptor::finite(&[(1, 1), (1, 2)])),
            Err(DescriptorViolation::LinkingTooSmall { generator: 1, branch: Branch::P1, value: 1 })
        );
        let inf = Exponent::Infinite;
        let two = Exponent::Finite(2);
        let d = ChainDescriptor::new(vec![(two, inf), (inf, inf), (inf, two)]);
        assert!(matches!(validate_descriptor(&d), Err(DescriptorViolation::LinkingInfinite { .. })));
        let ends = ChainDescriptor::new(vec![(two, inf), (inf, two)]);
        assert_eq!(validate_descriptor(&ends), Ok(ChainType::BothInfinite));
        let ok = ChainDescriptor::new(vec![(two, inf), (two, two)]);
        assert_eq!(validate_descriptor(&ok), Ok(ChainType::LeftInfinite));
    }

    #[test]
    fn s22_matrices() {
        let m = realize_finite(2, &[(2, 2)]).unwrap();
        let fp = m.field();
        let x = Matrix::from_rows(fp, 3, 3, &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 0, 0]]).unwrap();
        let y = Matrix::from_rows(fp, 3, 3, &[vec![0, 0, 0], vec![0, 0, 0], vec![1, 0, 0]]).unwrap();
        assert_eq!(m.x(), &x);
        assert_eq!(m.y_or_zero(), &y);
    }

    #[test]
    fn minimal_chain_shape() {
        let r = realize(&ChainDescriptor::finite(&[(2, 1), (1, 2)]), 2, None).unwrap();
        assert_eq!(r.module.dim(), 3);
        assert_eq!(r.merged, vec![1]);
        assert!(!r.module.is_separated().unwrap());
    }

    #[test]
    fn truncation_is_flagged() {
        let d = SeparatedTriple { n: Exponent::Finite(2), m: Exponent::Infinite }.as_chain();
        assert_eq!(realize(&d, 2, None).unwrap_err(), Error::InfiniteWithoutTruncation);
        let r = realize(&d, 2, Some(3)).unwrap();
        assert!(r.truncated);
        assert_eq!(r.descriptor, ChainDescriptor::finite(&[(2, 3)]));
    }

    #[test]
    fn amalgamation_errors() {
        let parts = [SeparatedTriple::finite(2, 2), SeparatedTriple::finite(2, 2)];
        let p1 = |part| SocleRef { part, branch: Branch::P1 };
        let p2 = |part| SocleRef { part, branch: Branch::P2 };
        let cycle = [Identification { left: p1(0), right: p2(1) }, Identification { left: p1(1), right: p2(0) }];
        assert_eq!(amalgamate(&parts, &cycle, 2, None, false).unwrap_err(), Error::BlockCycle);
        let band = amalgamate(&parts, &cycle, 2, None, true).unwrap();
        assert!(band.band);
        assert_eq!(band.module.dim(), 4);
        let same = [Identification { left: p1(0), right: p1(1) }];
        assert!(matches!(amalgamate(&parts, &same, 2, None, false), Err(Error::InvalidIdentification(_))));
        let short = [SeparatedTriple::finite(1, 2), SeparatedTriple::finite(2, 2)];
        let bad = [Identification { left: p1(0), right: p2(1) }];
        assert!(matches!(amalgamate(&short, &bad, 2, None, false), Err(Error::InvalidIdentification(_))));
    }

    #[test]
    fn descriptor_counts() {
        let all = enumerate_descriptors(1, 3);
        assert_eq!(all.len(), 9);
        for d in enumerate_descriptors(2, 3) {
            assert!(validate_descriptor(&d).is_ok());
        }
        let three = descriptors_with(2, 3);
        assert_eq!(three, vec![ChainDescriptor::finite(&[(2, 1), (1, 2)])]);
        for d in descriptors_with(2, 6) {
            assert_eq!(d.dim(), Some(6));
        }
    }
}
