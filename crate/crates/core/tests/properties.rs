use proptest::prelude::*;

use papm_core::decompose::{classify, decompose, is_indecomposable, Syntactic};
use papm_core::module::{hom_space, iso, multiplication_predicate, MultiplicationKind, Strategy as Search};
use papm_core::oracle::{colon_members, recheck_multiplication_witness};
use papm_core::ring::RingMode;
use papm_core::strings::{amalgamate, cut, enumerate_descriptors, realize, ChainDescriptor};
use papm_core::symbolic::{layer_identities_hold, truncate, SymbolicModule};
use papm_core::{Budgets, FiniteModule, Fp, Matrix, RingElement, RingSpec, SplitIdeal, Subspace};

fn b() -> Budgets {
    Budgets::default()
}

fn ring_and_elements() -> impl Strategy<Value = (RingSpec, Vec<Vec<u32>>)> {
    (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..=4, any::<bool>()).prop_flat_map(|(p, n, dvr)| {
        let ring = if dvr { RingSpec::dvr(p, n) } else { RingSpec::pullback(p, n) }.unwrap();
        let coeffs = proptest::collection::vec(proptest::collection::vec(0..p, ring.dim()), 3);
        (Just(ring), coeffs)
    })
}

fn descriptors() -> Vec<ChainDescriptor> {
    enumerate_descriptors(3, 3)
}

fn descriptor() -> impl Strategy<Value = ChainDescriptor> {
    let all = descriptors();
    (0..all.len()).prop_map(move |i| all[i].clone())
}

/// `L U` with unit diagonals, hence invertible.
fn invertible(n: usize, entries: &[u32]) -> Matrix {
    let fp = Fp::new(2).unwrap();
    let mut l = Matrix::identity(fp, n);
    let mut u = Matrix::identity(fp, n);
    let mut k = 0;
    for i in 0..n {
        for j in 0..i {
            l.set(i, j, entries[k % entries.len()] % 2);
            u.set(j, i, entries[(k + 1) % entries.len()] % 2);
            k += 2;
        }
    }
    l.mul(&u)
}

fn lift(m: &FiniteModule, n: usize) -> FiniteModule {
    m.with_truncation(n).unwrap()
}

fn same_class(a: &FiniteModule, c: &FiniteModule) -> bool {
    let n = a.ring().truncation().max(c.ring().truncation());
    iso(&lift(a, n), &lift(c, n), &b()).unwrap().is_isomorphic()
}

/// A direct sum of one to three list modules of total dimension at most 8.
fn list_sum() -> impl Strategy<Value = (FiniteModule, Vec<FiniteModule>)> {
    let all = descriptors();
    proptest::collection::vec(0..all.len(), 1..=3).prop_filter_map("too large", move |idx| {
        let parts: Vec<FiniteModule> = idx.iter().map(|&i| realize(&all[i], 2, None).unwrap().module).collect();
        let dim: usize = parts.iter().map(|m| m.dim()).sum();
        if dim > 8 {
            return None;
        }
        let ring = RingSpec::pullback(2, 8).unwrap();
        let lifted: Vec<FiniteModule> = parts.iter().map(|m| lift(m, 8)).collect();
        Some((FiniteModule::direct_sum_all(ring, &lifted).unwrap(), lifted))
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, ..ProptestConfig::default() })]

    #[test]
    fn ring_axioms((ring, c) in ring_and_elements()) {
        let e = |v: &Vec<u32>| ring.element(v.clone()).unwrap();
        let (a, bb, cc) = (e(&c[0]), e(&c[1]), e(&c[2]));
        prop_assert_eq!(a.mul(&bb), bb.mul(&a));
        prop_assert_eq!(a.mul(&bb).mul(&cc), a.mul(&bb.mul(&cc)));
        prop_assert_eq!(a.mul(&bb.add(&cc)), a.mul(&bb).add(&a.mul(&cc)));
        prop_assert_eq!(a.add(&a.neg()), ring.zero());
        prop_assert_eq!(a.mul(&ring.one()), a.clone());
        if ring.mode() == RingMode::Pullback {
            prop_assert!(ring.x().mul(&ring.y()).is_zero());
        }
        // Lagrange in the unit group gives an inverse for every unit.
        let units = ring.unit_count() as usize;
        if a.is_unit() {
            prop_assert_eq!(a.mul(&a.pow(units - 1)), ring.one());
        } else {
            prop_assert!(a.pow(ring.truncation()).is_zero() || ring.truncation() == 0);
        }
    }

    #[test]
    fn split_ops_match_subspace_ops(n in 1usize..=4, a in 1usize..=4, bb in 1usize..=4, c in 1usize..=4, d in 1usize..=4) {
        let ring = RingSpec::pullback(2, n).unwrap();
        let (a, bb, c, d) = (a.min(n), bb.min(n), c.min(n), d.min(n));
        let i = SplitIdeal::Mixed(a, bb);
        let j = SplitIdeal::Mixed(c, d);
        let (gi, gj) = (i.image_in(&ring), j.image_in(&ring));
        prop_assert_eq!(i.sum(j).image_in(&ring), gi.sum(&gj).unwrap());
        prop_assert_eq!(i.intersect(j).image_in(&ring), gi.intersection(&gj).unwrap());
        prop_assert_eq!(i.product(j).image_in(&ring), gi.product(&gj).unwrap());
        prop_assert_eq!(i.colon(j).image_in(&ring), gi.colon(&gj).unwrap());
        prop_assert_eq!(gi.recognize_split(), Some(i));
    }

    #[test]
    fn mirror_symmetry(d in descriptor()) {
        let m = realize(&d, 2, None).unwrap().module;
        let mirrored = realize(&d.mirror(), 2, None).unwrap().module.swap_xy().unwrap();
        prop_assert!(same_class(&m, &mirrored));
    }

    #[test]
    fn chain_shape(d in descriptor()) {
        let r = realize(&d, 2, None).unwrap();
        let pairs = d.finite_pairs().unwrap();
        prop_assert_eq!(Some(r.module.dim()), d.dim());
        prop_assert_eq!(r.module.x().rank(), pairs.iter().map(|p| p.0 - 1).sum::<usize>());
        prop_assert_eq!(r.module.y_or_zero().rank(), pairs.iter().map(|p| p.1 - 1).sum::<usize>());
        prop_assert_eq!(r.module.top_dim(), d.len());
        prop_assert_eq!(r.merged.len(), d.len() - 1);
        prop_assert_eq!(r.module.is_separated().unwrap(), d.len() == 1);
    }

    #[test]
    fn amalgamate_cut_round_trip(d in descriptor()) {
        let r = realize(&d, 2, None).unwrap();
        let (parts, ids) = cut(&d);
        let a = amalgamate(&parts, &ids, 2, None, false).unwrap();
        prop_assert!(same_class(&a.module, &r.module));
        prop_assert_eq!(a.representation.k.dim(), d.len() - 1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn submodule_arithmetic((m, _) in list_sum(), seed in proptest::collection::vec(0u32..2, 1..=16)) {
        let vectors: Vec<Vec<u32>> = seed.chunks(m.dim()).map(|c| {
            let mut v = c.to_vec();
            v.resize(m.dim(), 0);
            v
        }).collect();
        let n = m.closure(vectors);
        prop_assert!(m.is_invariant(&n));
        prop_assert_eq!(m.quotient(&n).unwrap().module.dim() + n.dim(), m.dim());
        let ring = m.working_ring();
        let small = ring.with_truncation(ring.truncation().min(3)).unwrap();
        let colon = m.colon_ideal_in(&n, &small);
        if let Ok(colon) = colon {
            let engine: Vec<bool> = small.elements().map(|r: RingElement| colon.contains(&r)).collect();
            prop_assert_eq!(colon_members(&m, &n, &small, &b()).unwrap(), engine);
        }
        let full_colon = m.colon_ideal(&n).unwrap();
        prop_assert!(m.ideal_action(&full_colon).unwrap().is_subspace_of(&n));
    }

    #[test]
    fn krull_schmidt_under_base_change((m, parts) in list_sum(), entries in proptest::collection::vec(0u32..2, 1..64)) {
        let t = invertible(m.dim(), &entries);
        let shuffled = m.change_basis(&t).unwrap();
        let ours = decompose(&shuffled, &b()).unwrap();
        prop_assert_eq!(ours.len(), parts.len());
        let mut used = vec![false; ours.len()];
        for p in &parts {
            let hit = (0..ours.len()).find(|&i| !used[i] && same_class(p, &ours[i].module));
            prop_assert!(hit.is_some());
            used[hit.unwrap()] = true;
        }
        let modules: Vec<FiniteModule> = ours.iter().map(|s| lift(&s.module, 8)).collect();
        let back = FiniteModule::direct_sum_all(*m.ring(), &modules).unwrap();
        prop_assert!(iso(&back, &shuffled, &b()).unwrap().is_isomorphic());
        for s in &ours {
            prop_assert_eq!(is_indecomposable(&s.module, &b()).unwrap().verdict(), Some(true));
        }
    }

    #[test]
    fn witnesses_recheck((m, _) in list_sum()) {
        for kind in [MultiplicationKind::Multiplication, MultiplicationKind::PseudoAbsorbingPrimary] {
            let out = multiplication_predicate(&m, kind, Search::TopFirst, &b()).unwrap();
            if let Some(w) = &out.witness {
                prop_assert!(recheck_multiplication_witness(&m, w, kind, &b()).unwrap());
            }
        }
    }

    #[test]
    fn dvr_modules_are_sums_of_jordan_blocks(sizes in proptest::collection::vec(1usize..=4, 1..=3), entries in proptest::collection::vec(0u32..2, 1..64)) {
        let dim: usize = sizes.iter().sum();
        let ring = RingSpec::dvr(2, dim).unwrap();
        let blocks: Vec<FiniteModule> = sizes.iter().map(|&n| lift(&FiniteModule::jordan_block(2, n).unwrap(), dim)).collect();
        let m = FiniteModule::direct_sum_all(ring, &blocks).unwrap().change_basis(&invertible(dim, &entries)).unwrap();
        let v = classify(&m, &b()).unwrap();
        let mut found: Vec<usize> = Vec::new();
        for s in &v.summands {
            match &s.syntactic {
                Syntactic::Jordan(n) => found.push(*n),
                other => prop_assert!(false, "unexpected match {:?}", other),
            }
        }
        found.sort();
        let mut expected = sizes.clone();
        expected.sort();
        prop_assert_eq!(found, expected);
    }

    #[test]
    fn jordan_hom_dimension(a in 1usize..=5, c in 1usize..=5) {
        let n = a.max(c);
        let ja = lift(&FiniteModule::jordan_block(2, a).unwrap(), n);
        let jc = lift(&FiniteModule::jordan_block(2, c).unwrap(), n);
        prop_assert_eq!(hom_space(&ja, &jc).unwrap().len(), a.min(c));
    }

    #[test]
    fn prufer_layers(n in 1usize..=8) {
        let t = truncate(SymbolicModule::Prufer, n, 2).unwrap();
        prop_assert!(layer_identities_hold(&t));
        let layers = t.layers.unwrap();
        for (k, a) in layers.iter().enumerate() {
            prop_assert_eq!(a.dim(), k + 1);
            prop_assert_eq!(a, &t.module.x().pow(k + 1).kernel());
        }
        prop_assert_eq!(&layers[n - 1], &Subspace::full(t.module.field(), n));
    }
}
