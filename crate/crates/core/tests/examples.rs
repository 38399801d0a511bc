//! Worked examples for every public operation, with expected values taken
//! from direct hand computation or from an independent recomputation.

use papm_core::decompose::{
    classify, decompose, fitting_split, is_indecomposable, Consistency, Indecomposability, LocalCertificate, Syntactic,
};
use papm_core::module::{
    end_algebra, enumerate_submodules, iso, multiplication_predicate, submodule_predicate, validate_module,
    IsoOutcome, ModuleViolation, MultiplicationKind, Strategy, SubmodulePredicate, SubmoduleWitness,
};
use papm_core::oracle::{act, colon_members};
use papm_core::ring::{IdealPredicate, IdealWitness, Monomial, RingMode};
use papm_core::strings::{
    amalgamate, realize, realize_finite, separated_representation, validate_descriptor, verify_separated_representation,
    Branch, ChainDescriptor, ChainType, DescriptorViolation, Exponent, Identification, RepresentationViolation,
    SeparatedTriple, SocleRef,
};
use papm_core::symbolic::{
    symbolic_colon, symbolic_predicates, truncate, truncation_colon, SymbolicModule, SymbolicPredicate,
};
use papm_core::{Budgets, Error, FiniteModule, Fp, GeneralIdeal, Matrix, RingSpec, Subspace, SplitIdeal};

fn fp2() -> Fp {
    Fp::new(2).unwrap()
}

fn mat(rows: &[&[u64]]) -> Matrix {
    let v: Vec<Vec<u64>> = rows.iter().map(|r| r.to_vec()).collect();
    Matrix::from_rows(fp2(), v.len(), v.len(), &v).unwrap()
}

fn s22() -> FiniteModule {
    realize_finite(2, &[(2, 2)]).unwrap()
}

fn span(m: &FiniteModule, vs: &[&[u32]]) -> Subspace {
    Subspace::span(m.field(), m.dim(), vs.iter().map(|v| v.to_vec()))
}

fn b() -> Budgets {
    Budgets::default()
}

#[test]
fn ring_sizes() {
    let r = RingSpec::new(2, 3, RingMode::Pullback).unwrap();
    assert_eq!((r.dim(), r.element_count(), r.unit_count()), (5, 32, 16));
    let d = RingSpec::new(3, 2, RingMode::Dvr).unwrap();
    assert_eq!((d.dim(), d.element_count()), (2, 9));
    assert_eq!(RingSpec::new(4, 2, RingMode::Pullback), Err(Error::NotPrime(4)));
    assert_eq!(RingSpec::new(2, 0, RingMode::Pullback), Err(Error::ZeroTruncation));
}

#[test]
fn ring_arithmetic() {
    let r = RingSpec::pullback(2, 3).unwrap();
    assert!(r.x().mul(&r.y()).is_zero());
    let s = r.x().add(&r.y());
    let expected = r.monomial(Monomial::X(2)).add(&r.monomial(Monomial::Y(2)));
    assert_eq!(s.mul(&s), expected);
    // (1 + x)(1 - x + x^2) = 1 + x^3 = 1 in Q_3.
    let one_plus_x = r.one().add(&r.x());
    let inverse = r.one().sub(&r.x()).add(&r.monomial(Monomial::X(2)));
    assert_eq!(one_plus_x.mul(&inverse), r.one());
    assert!(one_plus_x.is_unit());
}

#[test]
fn split_ideal_algebra() {
    assert_eq!(SplitIdeal::Mixed(3, 2).radical(), SplitIdeal::MAXIMAL);
    assert_eq!(SplitIdeal::P2Power(4).radical(), SplitIdeal::P2Power(1));
    assert_eq!(SplitIdeal::MAXIMAL.product(SplitIdeal::MAXIMAL), SplitIdeal::Mixed(2, 2));
    assert!(SplitIdeal::Zero.is_two_absorbing_primary());
    assert!(SplitIdeal::Mixed(3, 2).is_two_absorbing_primary());
    assert!(!SplitIdeal::Unit.is_two_absorbing_primary());
}

#[test]
fn embedded_split_ideal_is_monomial_span() {
    let r = RingSpec::pullback(2, 4).unwrap();
    let i = SplitIdeal::Mixed(2, 3).image_in(&r);
    let members: Vec<Monomial> = r.monomials().into_iter().filter(|&m| i.contains(&r.monomial(m))).collect();
    assert_eq!(members, vec![Monomial::X(2), Monomial::X(3), Monomial::Y(3)]);
    assert_eq!(i.recognize_split(), Some(SplitIdeal::Mixed(2, 3)));
}

#[test]
fn t_cubed_in_dvr() {
    let r = RingSpec::dvr(2, 4).unwrap();
    let i = GeneralIdeal::generated_by(&r, &[r.monomial(Monomial::X(3))]);
    let tap = papm_core::ring::ideal_predicates_bruteforce(&r, &i, IdealPredicate::TwoAbsorbingPrimary, &b()).unwrap();
    assert!(tap.holds);
    let two = papm_core::ring::ideal_predicates_bruteforce(&r, &i, IdealPredicate::TwoAbsorbing, &b()).unwrap();
    assert_eq!(two.witness, Some(IdealWitness::Triple(r.x(), r.x(), r.x())));
}

#[test]
fn mixed_two_two_in_q3() {
    let r = RingSpec::pullback(2, 3).unwrap();
    let i = SplitIdeal::Mixed(2, 2).image_in(&r);
    let out = papm_core::ring::ideal_predicates_bruteforce(&r, &i, IdealPredicate::TwoAbsorbingPrimary, &b()).unwrap();
    assert!(out.holds);
}

#[test]
fn module_validation() {
    let r = RingSpec::pullback(2, 3).unwrap();
    assert_eq!(validate_module(&r, &mat(&[&[0]]), Some(&mat(&[&[0]]))), Ok(()));
    let x = mat(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
    let y = mat(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
    assert_eq!(validate_module(&r, &x, Some(&y)), Ok(()));
    let idem = mat(&[&[1, 0], &[0, 0]]);
    let zero = mat(&[&[0, 0], &[0, 0]]);
    assert_eq!(validate_module(&r, &idem, Some(&zero)), Err(ModuleViolation::XNotNilpotent));
    assert!(ModuleViolation::XNotNilpotent.to_string().contains("X not nilpotent"));
}

#[test]
fn s22_structure() {
    let m = s22();
    assert_eq!(m.x(), &mat(&[&[0, 0, 0], &[1, 0, 0], &[0, 0, 0]]));
    assert_eq!(m.y_or_zero(), &mat(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]));
    assert_eq!(m.socle(), span(&m, &[&[0, 1, 0], &[0, 0, 1]]));
    assert_eq!(m.split_action(SplitIdeal::MAXIMAL), m.socle());
    assert_eq!(m.split_action(SplitIdeal::Unit), m.full());
    let r = m.working_ring();
    let diag = GeneralIdeal::generated_by(&r, &[r.x().add(&r.y())]).sum(&SplitIdeal::Mixed(2, 2).image_in(&r)).unwrap();
    assert_eq!(m.ideal_action(&diag).unwrap(), span(&m, &[&[0, 1, 1]]));
    assert!(m.quotient(&m.full()).unwrap().module.is_zero());
}

#[test]
fn s22_colons_against_naive_membership() {
    let m = s22();
    let r = m.working_ring();
    let cases: [(&[&[u32]], Option<SplitIdeal>); 3] =
        [(&[&[0, 1, 0]], Some(SplitIdeal::Mixed(1, 2))), (&[&[0, 1, 1]], None), (&[], Some(SplitIdeal::Mixed(2, 2)))];
    for (vs, expected) in cases {
        let n = span(&m, vs);
        let colon = m.colon_ideal_in(&n, &r).unwrap();
        assert_eq!(colon.recognize_split(), expected);
        let naive = colon_members(&m, &n, &r, &b()).unwrap();
        let engine: Vec<bool> = r.elements().map(|e| colon.contains(&e)).collect();
        assert_eq!(naive, engine);
    }
}

#[test]
fn annihilators() {
    let simple = FiniteModule::new(RingSpec::pullback(2, 1).unwrap(), mat(&[&[0]]), Some(mat(&[&[0]]))).unwrap();
    assert_eq!(simple.annihilator().unwrap().recognize_split(), Some(SplitIdeal::MAXIMAL));
    for (n, m) in [(1, 1), (2, 3), (3, 1), (3, 3)] {
        let s = realize_finite(2, &[(n, m)]).unwrap();
        assert_eq!(s.annihilator().unwrap().recognize_split(), Some(SplitIdeal::Mixed(n, m).canonical()));
    }
    let zero = FiniteModule::zero(RingSpec::pullback(2, 1).unwrap());
    assert_eq!(zero.annihilator().unwrap().recognize_split(), Some(SplitIdeal::Unit));
}

#[test]
fn submodule_lattices() {
    let simple = realize_finite(2, &[(1, 1)]).unwrap();
    assert_eq!(enumerate_submodules(&simple, &b()).unwrap().len(), 2);
    // 0, three socle lines, the socle and M.
    assert_eq!(enumerate_submodules(&s22(), &b()).unwrap().len(), 6);
    let j3 = FiniteModule::jordan_block(2, 3).unwrap();
    assert_eq!(enumerate_submodules(&j3, &b()).unwrap().len(), 4);
}

#[test]
fn separatedness() {
    for (n, m) in [(1, 1), (2, 2), (3, 1), (2, 3)] {
        assert!(realize_finite(2, &[(n, m)]).unwrap().is_separated().unwrap());
    }
    let minimal = realize_finite(2, &[(2, 1), (1, 2)]).unwrap();
    assert_eq!(minimal.dim(), 3);
    assert!(!minimal.is_separated().unwrap());
    assert!(FiniteModule::zero(RingSpec::pullback(2, 1).unwrap()).is_separated().unwrap());
}

#[test]
fn submodule_predicates() {
    let m = s22();
    let n = span(&m, &[&[0, 1, 0]]);
    assert!(submodule_predicate(&m, &n, SubmodulePredicate::PseudoAbsorbingPrimary, &b()).unwrap().holds);

    let r4 = FiniteModule::jordan_block(2, 4).unwrap();
    let n = span(&r4, &[&[0, 0, 0, 1]]);
    assert!(submodule_predicate(&r4, &n, SubmodulePredicate::PseudoAbsorbingPrimary, &b()).unwrap().holds);
    let out = submodule_predicate(&r4, &n, SubmodulePredicate::TwoAbsorbing, &b()).unwrap();
    let Some(SubmoduleWitness::Triple { a, b: bb, m: v }) = out.witness else { panic!("expected a triple witness") };
    let ring = r4.working_ring();
    assert_eq!((a, bb), (ring.x(), ring.x()));
    // abm lands in N while am, bm are outside it.
    let abm = act(&r4, &ring.monomial(Monomial::X(2)), &v);
    assert!(n.contains(&abm) && !n.contains(&act(&r4, &ring.x(), &v)));

    for m in [s22(), realize_finite(2, &[(2, 1), (1, 2)]).unwrap(), r4] {
        let zero = m.zero_submodule();
        assert!(submodule_predicate(&m, &zero, SubmodulePredicate::PseudoAbsorbingPrimary, &b()).unwrap().holds);
    }
}

#[test]
fn multiplication_examples() {
    let out =
        multiplication_predicate(&s22(), MultiplicationKind::PseudoAbsorbingPrimary, Strategy::Exhaustive, &b()).unwrap();
    assert!(out.holds);
    let j2 = FiniteModule::jordan_block(2, 2).unwrap();
    let sum = j2.direct_sum(&FiniteModule::jordan_block(2, 1).unwrap()).unwrap();
    let out = multiplication_predicate(&sum, MultiplicationKind::PseudoAbsorbingPrimary, Strategy::Exhaustive, &b()).unwrap();
    let w = out.witness.expect("counterexample");
    assert_eq!(w.submodule, span(&sum, &[&[0, 0, 1]]));
    assert_eq!(w.colon, GeneralIdeal::generated_by(w.colon.ring(), &[w.colon.ring().monomial(Monomial::X(2))]));
    assert!(w.product.is_zero());
    for n in 1..=5 {
        let j = FiniteModule::jordan_block(2, n).unwrap();
        assert!(multiplication_predicate(&j, MultiplicationKind::Multiplication, Strategy::Exhaustive, &b()).unwrap().holds);
    }
}

#[test]
fn endomorphisms_and_iso() {
    assert_eq!(end_algebra(&s22()).unwrap().len(), 3);
    let perm = mat(&[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
    let swapped = FiniteModule::new(*s22().ring(), perm.mul(s22().x()).mul(&perm), Some(perm.mul(s22().y_or_zero()).mul(&perm)))
        .unwrap();
    assert!(iso(&s22(), &swapped, &b()).unwrap().is_isomorphic());
    let a = realize_finite(2, &[(2, 1)]).unwrap();
    let c = realize_finite(2, &[(1, 2)]).unwrap();
    assert!(matches!(iso(&a, &c, &b()).unwrap(), IsoOutcome::NotIsomorphic(_)));
}

#[test]
fn direct_sums() {
    let r = RingSpec::pullback(2, 2).unwrap();
    let m = s22();
    assert_eq!(m.direct_sum(&FiniteModule::zero(r)).unwrap(), m);
    let sum = realize_finite(2, &[(2, 1)]).unwrap().direct_sum(&realize_finite(2, &[(1, 2)]).unwrap()).unwrap();
    assert_eq!(sum.dim(), 4);
    assert!(sum.is_separated().unwrap());
    let k = realize_finite(2, &[(1, 1)]).unwrap();
    let kk = k.direct_sum(&k).unwrap();
    assert!(kk.x().is_zero() && kk.y_or_zero().is_zero() && kk.dim() == 2);
}

#[test]
fn descriptor_validation() {
    let d = ChainDescriptor::finite(&[(2, 1), (1, 2)]);
    assert_eq!(validate_descriptor(&d), Ok(ChainType::Finite));
    assert!(matches!(
        validate_descriptor(&ChainDescriptor::finite(&[(1, 1), (1, 2)])),
        Err(DescriptorViolation::LinkingTooSmall { .. })
    ));
    let inf = Exponent::Infinite;
    let f = Exponent::Finite;
    let interior = ChainDescriptor::new(vec![(f(2), f(2)), (inf, inf), (f(2), f(2))]);
    assert!(validate_descriptor(&interior).is_err());
    let right = ChainDescriptor::new(vec![(f(2), f(1)), (inf, f(2))]);
    assert_eq!(validate_descriptor(&right), Ok(ChainType::RightInfinite));
    assert_eq!(realize(&right, 2, None).unwrap_err(), Error::InfiniteWithoutTruncation);
}

#[test]
fn figure_one() {
    let s1 = SeparatedTriple::finite(5, 3);
    let s2 = SeparatedTriple::finite(4, 2);
    let glue = Identification {
        left: SocleRef { part: 0, branch: Branch::P2 },
        right: SocleRef { part: 1, branch: Branch::P1 },
    };
    let a = amalgamate(&[s1, s2], &[glue], 2, None, false).unwrap();
    assert_eq!(a.module.dim(), 11);
    assert_eq!(a.module.top_dim(), 2);
    assert_eq!(a.module.radical().dim(), 9);
    assert_eq!(a.representation.k.dim(), 1);
    assert!(!a.band);
    let chain = realize(&ChainDescriptor::finite(&[(4, 2), (5, 3)]), 2, None).unwrap();
    assert_eq!(chain.merged.len(), 1);
    assert!(iso(&a.module, &chain.module, &b()).unwrap().is_isomorphic());
    assert!(is_indecomposable(&chain.module, &b()).unwrap().verdict() == Some(true));
    let rep = separated_representation(&chain).unwrap();
    let parts = realize_finite(2, &[(5, 3)]).unwrap().direct_sum(&realize_finite(2, &[(4, 2)]).unwrap());
    assert!(same_class(&rep.s, &parts.unwrap()));
    assert_eq!(rep.k.dim(), 1);
}

/// Isomorphism after lifting both modules to a common truncation.
fn same_class(a: &FiniteModule, c: &FiniteModule) -> bool {
    let n = a.ring().truncation().max(c.ring().truncation());
    iso(&a.with_truncation(n).unwrap(), &c.with_truncation(n).unwrap(), &b()).unwrap().is_isomorphic()
}

#[test]
fn amalgamation_cases() {
    let single = amalgamate(&[SeparatedTriple::finite(2, 3)], &[], 2, None, false).unwrap();
    assert!(single.representation.k.is_zero());
    assert!(same_class(&single.module, &realize_finite(2, &[(2, 3)]).unwrap()));

    let t = SeparatedTriple::finite(2, 2);
    let ring_ids = [
        Identification { left: SocleRef { part: 0, branch: Branch::P1 }, right: SocleRef { part: 1, branch: Branch::P2 } },
        Identification { left: SocleRef { part: 1, branch: Branch::P1 }, right: SocleRef { part: 0, branch: Branch::P2 } },
    ];
    assert_eq!(amalgamate(&[t, t], &ring_ids, 2, None, false).unwrap_err(), Error::BlockCycle);
    let band = amalgamate(&[t, t], &ring_ids, 2, None, true).unwrap();
    assert!(band.band);
    assert_eq!(band.module.dim(), 4);
    let v = classify(&band.module, &b()).unwrap();
    assert_eq!(v.syntactic, Some(Syntactic::Unrecognized));
    assert!(v.semantic.pap().is_some());

    let bad = Identification { left: SocleRef { part: 0, branch: Branch::P1 }, right: SocleRef { part: 5, branch: Branch::P2 } };
    assert!(matches!(amalgamate(&[t, t], &[bad], 2, None, false), Err(Error::InvalidIdentification(_))));
}

#[test]
fn separated_representations() {
    let minimal = realize(&ChainDescriptor::finite(&[(2, 1), (1, 2)]), 2, None).unwrap();
    let rep = separated_representation(&minimal).unwrap();
    assert_eq!((rep.s.dim(), rep.k.dim()), (4, 1));
    let parts = realize_finite(2, &[(2, 1)]).unwrap().direct_sum(&realize_finite(2, &[(1, 2)]).unwrap()).unwrap();
    assert!(same_class(&rep.s, &parts));
    assert_eq!(verify_separated_representation(&rep, &minimal.module, &b()), Ok(()));

    let s = realize(&ChainDescriptor::finite(&[(2, 2)]), 2, None).unwrap();
    let own = separated_representation(&s).unwrap();
    assert!(own.k.is_zero() && own.s == s.module);

    // A generator inside K is outside PS.
    let mut broken = rep.clone();
    broken.k = Subspace::span(rep.s.field(), rep.s.dim(), [rep.s.unit_vector(0)]);
    let v = verify_separated_representation(&broken, &minimal.module, &b()).unwrap_err();
    assert_eq!(v.condition(), "b");
    assert_eq!(v, RepresentationViolation::NotInRadical);

    // K spanned by an element of P1 S.
    let mut broken = rep.clone();
    let x_img = rep.s.x().column_space();
    broken.k = Subspace::span(rep.s.field(), rep.s.dim(), [x_img.basis()[0].clone()]);
    let v = verify_separated_representation(&broken, &minimal.module, &b()).unwrap_err();
    assert_eq!(v, RepresentationViolation::MeetsP1);
    assert_eq!(v.condition(), "c");
}

#[test]
fn fitting_splits() {
    let m = realize_finite(2, &[(2, 1)]).unwrap().direct_sum(&realize_finite(2, &[(1, 2)]).unwrap()).unwrap();
    let fp = m.field();
    assert!(fitting_split(&m, &Matrix::identity(fp, 4)).unwrap().is_none());
    let nil = m.x().clone();
    assert!(fitting_split(&m, &nil).unwrap().is_none());
    let mut proj = Matrix::zeros(fp, 4, 4);
    proj.set(0, 0, 1);
    proj.set(1, 1, 1);
    let split = fitting_split(&m, &proj).unwrap().expect("split");
    assert_eq!((split.kernel.dim(), split.image.dim()), (2, 2));
    assert!(same_class(&split.image_module, &realize_finite(2, &[(2, 1)]).unwrap()));
    assert!(same_class(&split.kernel_module, &realize_finite(2, &[(1, 2)]).unwrap()));
}

#[test]
fn decompositions() {
    let k = realize_finite(2, &[(1, 1)]).unwrap();
    let kk = k.direct_sum(&k).unwrap();
    let parts = decompose(&kk, &b()).unwrap();
    assert_eq!(parts.iter().map(|s| s.module.dim()).collect::<Vec<_>>(), vec![1, 1]);
    assert_eq!(is_indecomposable(&kk, &b()).unwrap().verdict(), Some(false));

    let a = realize_finite(2, &[(2, 1)]).unwrap();
    let c = realize_finite(2, &[(1, 2)]).unwrap();
    let parts = decompose(&a.direct_sum(&c).unwrap(), &b()).unwrap();
    assert_eq!(parts.len(), 2);
    assert!(parts.iter().any(|s| same_class(&s.module, &a)) && parts.iter().any(|s| same_class(&s.module, &c)));

    let minimal = realize_finite(2, &[(2, 1), (1, 2)]).unwrap();
    assert_eq!(decompose(&minimal, &b()).unwrap().len(), 1);
    for (n, m) in [(1, 1), (2, 2), (3, 2), (3, 3)] {
        let out = is_indecomposable(&realize_finite(2, &[(n, m)]).unwrap(), &b()).unwrap();
        assert!(matches!(out, Indecomposability::Indecomposable(LocalCertificate::ScalarPlusNilpotent { .. })));
    }
}

#[test]
fn classifications() {
    for n in 1..=4 {
        let v = classify(&FiniteModule::jordan_block(2, n).unwrap(), &b()).unwrap();
        assert_eq!(v.syntactic, Some(Syntactic::Jordan(n)));
        assert_eq!(v.semantic.pap(), Some(true));
        assert_eq!(v.consistency, Consistency::Agree);
    }
    let v = classify(&s22(), &b()).unwrap();
    assert_eq!(v.syntactic.as_ref().map(|s| s.label()), Some("S(2,2)".to_string()));
    assert_eq!(v.consistency, Consistency::Agree);
    let v = classify(&realize_finite(2, &[(2, 1), (1, 2)]).unwrap(), &b()).unwrap();
    assert_eq!(v.listed, Some(true));
    assert_eq!(v.semantic.pap(), Some(false));
    assert_eq!(v.consistency, Consistency::Disagree);
    assert!(v.witness.is_some());
}

#[test]
fn symbolic_modules() {
    let inf = Exponent::Infinite;
    let pap = SymbolicPredicate::PapMultiplication;
    assert!(!symbolic_predicates(SymbolicModule::Prufer, pap).value);
    assert!(symbolic_predicates(SymbolicModule::CyclicTorsion(3), pap).value);
    let s = SymbolicModule::SeparatedTripleInfinite(Exponent::Finite(2), inf);
    assert!(symbolic_predicates(s, pap).value);
    assert!(symbolic_predicates(s, SymbolicPredicate::Indecomposable).value);
    assert_eq!(symbolic_colon(2).0, SplitIdeal::Zero);

    let c = truncation_colon(2, 5, 2).unwrap();
    assert_eq!(c.split, Some(SplitIdeal::P1Power(3)));
    assert!(c.diverges);
    assert_eq!(truncation_colon(5, 5, 2).unwrap().split, Some(SplitIdeal::Unit));

    let t = truncate(SymbolicModule::Prufer, 4, 2).unwrap();
    assert_eq!((t.module.dim(), t.module.mode()), (4, RingMode::Dvr));
    let t = truncate(s, 3, 2).unwrap();
    assert!(t.truncated);
    assert!(same_class(&t.module, &realize_finite(2, &[(2, 3)]).unwrap()));
    assert!(matches!(truncate(SymbolicModule::QuotientField, 3, 2), Err(Error::NotTruncatable { .. })));
}
