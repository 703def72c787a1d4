mod common;

use std::collections::BTreeMap;

use common::random_multilinear;
use gradedpi::algebras::{catalog, GradedAlgebra, Regularity};
use gradedpi::freealg::ops::{transfer_phi, transfer_phi_inverse};
use gradedpi::freealg::parse::parse_polynomial;
use gradedpi::freealg::GradedPolynomial;
use gradedpi::groups::FiniteAbelianGroup;
use gradedpi::pitool::pauli::{self, PauliData};
use gradedpi::pitool::spaces::Engine;
use gradedpi::pitool::{multilinear_identity_space, MultidegreeBasis};
use gradedpi::scalars::{CycloNumber, Q};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cyclo(order: u32, c: &[(i64, i64)]) -> CycloNumber {
    let d = match order {
        1 | 2 => 1,
        3 | 4 | 6 => 2,
        _ => 4,
    };
    CycloNumber::from_coeffs(order, c[..d].iter().map(|&(n, m)| Q::new(n, m)).collect()).unwrap()
}

fn coeffs() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_and_conjugation(
        order in prop::sample::select(vec![1u32, 3, 4, 8]),
        cx in coeffs(),
        cy in coeffs(),
        k in 0i64..8,
    ) {
        let x = cyclo(order, &cx).mul(&CycloNumber::root(order, k));
        let y = cyclo(order, &cy);
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
        prop_assert!(x.mul(&x.conj()).is_real());
        if !x.is_zero() {
            prop_assert!(x.mul(&x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn group_words_round_trip(orders in prop::collection::vec(1u32..6, 0..4), seed in any::<u64>()) {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = g.element(rng.gen_range(0..g.order()));
        prop_assert_eq!(g.parse(&g.format(&x)).unwrap(), x);
    }

    #[test]
    fn quotient_projection(orders in prop::collection::vec(2u32..7, 1..4), seed in any::<u64>()) {
        let g = FiniteAbelianGroup::new(orders).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = g.element(rng.gen_range(0..g.order()));
        let (q, p) = g.quotient_by(&h).unwrap();
        prop_assert_eq!(q.order() * g.element_order(&h) as usize, g.order());
        prop_assert_eq!(p.apply(&h), q.identity());
        let x = g.element(rng.gen_range(0..g.order()));
        let y = g.element(rng.gen_range(0..g.order()));
        prop_assert_eq!(p.apply(&g.op(&x, &y)), q.op(&p.apply(&x), &p.apply(&y)));
        let fiber = p.fiber(&p.apply(&x));
        prop_assert_eq!(fiber.len(), g.element_order(&h) as usize);
        prop_assert!(fiber.contains(&x));
    }
}

fn regular_beta(a: &GradedAlgebra) -> gradedpi::bichar::Bicharacter {
    match a.detect_regular() {
        Regularity::Regular(b) => b.with_group(a.group().clone()).unwrap(),
        Regularity::NotRegular(_) => panic!("not regular"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// f is an identity of A iff φ_h(f) is one of A⊗R.
    #[test]
    fn transfer_preserves_identities(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = catalog::m2_elem();
        let r = catalog::m2_4();
        let ar = a.tensor(&r);
        let beta = regular_beta(&r);
        let n = rng.gen_range(1..=3);
        let degs: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        // half the samples are identities: random combinations of the identity space
        let f = if seed % 2 == 0 {
            let space = multilinear_identity_space(&a, &degs).unwrap();
            let basis = MultidegreeBasis::new(degs.clone());
            let mut f = GradedPolynomial::zero(a.group().clone(), a.order());
            for v in space.basis() {
                let c = CycloNumber::from_int(a.order(), rng.gen_range(-2..=2));
                f = f.add(&basis.to_polynomial(&v, a.group(), a.order()).scale(&c));
            }
            f
        } else {
            random_multilinear(&mut rng, a.group(), a.order(), &degs, 4)
        };
        prop_assume!(!f.is_zero() && f.variables().len() == n);
        let hs: Vec<_> = r.group().elements().collect();
        let h: Vec<_> = (0..n).map(|_| hs[rng.gen_range(0..hs.len())].clone()).collect();
        let g = transfer_phi(&f, &h, &beta).unwrap();
        let back = transfer_phi_inverse(&g, a.group(), &beta).unwrap();
        prop_assert_eq!(&back, &f);
        let ea = Engine::new(&a, Default::default());
        let ear = Engine::new(&ar, Default::default());
        prop_assert_eq!(ea.is_identity(&f).unwrap().holds, ear.is_identity(&g).unwrap().holds);
    }

    /// An identity of the coarsening A/<g>, with variables given any
    /// fine degrees in their fibers, is an identity of A.
    #[test]
    fn coarse_identities_lift(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = catalog::build(["m2c-z4", "e(1,4)", "e(-1,4)", "m2-8"][rng.gen_range(0..4)]).unwrap();
        let g = a.group();
        let h = g.element(rng.gen_range(1..g.order()));
        let (coarse, proj) = a.coarsen_by_quotient(&h).unwrap();
        let support = coarse.support();
        let n = rng.gen_range(1..=3);
        let degs: Vec<usize> = (0..n).map(|_| support[rng.gen_range(0..support.len())]).collect();
        let mut sorted = degs.clone();
        sorted.sort_unstable();
        let space = multilinear_identity_space(&coarse, &sorted).unwrap();
        prop_assume!(space.rank() > 0);
        let basis = MultidegreeBasis::new(sorted.clone());
        let v = &space.basis()[rng.gen_range(0..space.rank())];
        let f = basis.to_polynomial(v, coarse.group(), coarse.order());
        let q = coarse.group();
        let mut fine = BTreeMap::new();
        for (i, d) in f.variables() {
            let fiber = proj.fiber(&q.element(d as usize));
            fine.insert(i, fiber[rng.gen_range(0..fiber.len())].clone());
        }
        let lifted = f.with_degrees(g, &fine).unwrap();
        let e = Engine::new(&a, Default::default());
        prop_assert!(e.is_identity(&lifted).unwrap().holds, "{} lifted to {}", f, lifted);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn polynomial_literals_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = catalog::build("pauli(3)").unwrap();
        let n = rng.gen_range(1..=4);
        let degs: Vec<usize> = (0..n).map(|_| rng.gen_range(0..a.group().order())).collect();
        let f = random_multilinear(&mut rng, a.group(), a.order(), &degs, 5);
        let k = rng.gen_range(0..3);
        let f = f.scale(&CycloNumber::root(a.order(), k));
        let back = parse_polynomial(&f.to_string(), a.group(), a.order()).unwrap();
        prop_assert_eq!(back, f);
    }

    /// Reduction keeps identity status and its certificate replays.
    #[test]
    fn pauli_reduction_invariance(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = catalog::build(["pauli(3)", "pauli(4)"][(seed % 2) as usize]).unwrap();
        let d = PauliData::of(&a).unwrap();
        let e = Engine::new(&a, Default::default());
        let n = rng.gen_range(2..=5);
        let pool = [rng.gen_range(0..a.group().order()), rng.gen_range(0..a.group().order())];
        let degs: Vec<usize> = (0..n).map(|_| pool[rng.gen_range(0..2)]).collect();
        let f = random_multilinear(&mut rng, a.group(), a.order(), &degs, 4);
        prop_assume!(!f.is_zero() && f.variables().len() == n);
        let red = pauli::pauli_reduce_with(&d, &f).unwrap();
        pauli::replay(&red, Some(&e)).unwrap();
        prop_assert_eq!(e.is_identity(&f).unwrap().holds, e.is_identity(&red.polynomial).unwrap().holds);
    }
}
