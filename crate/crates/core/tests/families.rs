use gradedpi::algebras::catalog;
use gradedpi::pitool::{families, verify_basis, Mode, VerifyOptions};

fn opts(max_degree: usize) -> VerifyOptions {
    VerifyOptions {
        max_degree,
        ..Default::default()
    }
}

#[test]
fn literal_cyclic_identities_miss_a_commutator() {
    let a = catalog::build("m2c-z4").unwrap();
    let s = families::with_off_support(
        families::cyclic_corollary_literal(4, Mode::Identities).unwrap(),
        &a,
    );
    let r = verify_basis(&a, &s, &opts(2)).unwrap();
    assert!(r.membership_failures.is_empty());
    assert!(!r.passed);
    let bad = r.multidegrees.iter().find(|m| !m.equal).unwrap();
    assert_eq!(bad.degrees, vec!["e".to_string(), "a^2".to_string()]);
    assert_eq!(bad.witness.as_deref(), Some("x1:e*x2:a^2 - x2:a^2*x1:e"));
}

#[test]
fn literal_cyclic_centrals_contain_a_non_central() {
    let a = catalog::build("m2c-z4").unwrap();
    let s = families::with_off_support(
        families::cyclic_corollary_literal(4, Mode::Centrals).unwrap(),
        &a,
    );
    let r = verify_basis(&a, &s, &opts(3)).unwrap();
    assert!(!r.passed);
    assert!(!r.membership_failures.is_empty());
    assert!(r.membership_failures.iter().all(|f| f.part == "S2"));
}

#[test]
fn lifted_cyclic_families_are_complete() {
    for id in ["m2c-z4", "e(1,4)", "e(-1,4)"] {
        let a = catalog::build(id).unwrap();
        for mode in [Mode::Identities, Mode::Centrals] {
            let s = families::with_off_support(families::cyclic_corollary(&a, mode).unwrap(), &a);
            let r = verify_basis(&a, &s, &opts(3)).unwrap();
            assert!(r.passed, "{id} {mode:?}\n{}", r.to_tsv());
        }
    }
}

#[test]
fn hall_and_standard_agree_on_m2_and_h() {
    for id in ["m2", "h"] {
        let a = catalog::build(id).unwrap();
        assert!(
            verify_basis(&a, &families::drensky(), &opts(4))
                .unwrap()
                .passed,
            "{id}"
        );
        assert!(
            verify_basis(&a, &families::okhitin(), &opts(4))
                .unwrap()
                .passed,
            "{id}"
        );
    }
}

#[test]
fn truncated_regular_set_is_incomplete() {
    let a = catalog::m2_4();
    let b = match a.detect_regular() {
        gradedpi::algebras::Regularity::Regular(b) => b.with_group(a.group().clone()).unwrap(),
        _ => unreachable!(),
    };
    let mut s = families::regular(&b, Mode::Identities);
    s.s1.truncate(s.s1.len() / 2);
    let r = verify_basis(&a, &s, &opts(2)).unwrap();
    assert!(!r.passed);
    assert!(r
        .multidegrees
        .iter()
        .any(|m| !m.equal && m.witness.is_some()));
}
