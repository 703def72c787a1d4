//! Generating families: Drensky and Okhitin on M2, the elementary Z2
//! grading, regular gradings, quotient lifts and the M2(C,Z4) / E(ε,2^k)
//! corollaries.

use std::collections::BTreeMap;

use super::{GeneratorSet, Mode};
use crate::algebras::GradedAlgebra;
use crate::bichar::Bicharacter;
use crate::error::{Error, Result};
use crate::freealg::named::{hall, okhitin_central, standard, Poly};
use crate::freealg::ops::multilinearize;
use crate::freealg::GradedPolynomial;
use crate::groups::{FiniteAbelianGroup, GroupElement};
use crate::scalars::CycloNumber;

pub fn z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::with_names(vec![2], vec!["a".into()]).expect("z2")
}

/// {S4, Hall} for M2 and H with the trivial grading.
pub fn drensky() -> GeneratorSet {
    let mut s = GeneratorSet::new("drensky", Mode::Identities, FiniteAbelianGroup::trivial());
    s.push_identity("standard", standard(4));
    s.push_identity("hall", hall());
    s
}

/// Central polynomials of M2: the symmetrized commutator product and x5·S4.
pub fn okhitin() -> GeneratorSet {
    let g = FiniteAbelianGroup::trivial();
    let b = Poly::new(&g, 1);
    let mut s = GeneratorSet::new("okhitin", Mode::Centrals, g.clone());
    s.push_central("commutator-square", okhitin_central());
    s.push_identity("x5-standard", b.var(5, 0).mul(&standard(4)));
    s
}

/// Identities of M2 with the elementary Z2 grading.
pub fn dv_lemma() -> GeneratorSet {
    let g = z2();
    let b = Poly::new(&g, 1);
    let mut s = GeneratorSet::new("dv-lemma", Mode::Identities, g.clone());
    s.push_identity("commutator-e", b.commutator(&b.var(1, 0), &b.var(2, 0)));
    s.push_identity(
        "reversal-a",
        b.word(&[(1, 1), (2, 1), (3, 1)])
            .sub(&b.word(&[(3, 1), (2, 1), (1, 1)])),
    );
    s
}

/// Central polynomials of M2 with the elementary Z2 grading.
pub fn bp_central() -> GeneratorSet {
    let g = z2();
    let b = Poly::new(&g, 1);
    let mut s = GeneratorSet::new("bp-central", Mode::Centrals, g.clone());
    s.push_central(
        "anticommutator-a",
        b.word(&[(1, 1), (2, 1)]).add(&b.word(&[(2, 1), (1, 1)])),
    );
    for d in 0..2 {
        let inner = b.commutator(&b.var(2, 0), &b.var(3, 0));
        s.push_identity(
            "padded-commutator-e",
            b.var(1, d).mul(&inner).mul(&b.var(4, d)),
        );
        let rev = b
            .word(&[(2, 1), (3, 1), (4, 1)])
            .sub(&b.word(&[(4, 1), (3, 1), (2, 1)]));
        s.push_identity("padded-reversal-a", b.var(1, d).mul(&rev).mul(&b.var(5, d)));
    }
    s
}

fn beta_commutator(
    b: &Poly,
    beta: &Bicharacter,
    first: (u32, usize),
    second: (u32, usize),
) -> GradedPolynomial {
    let g = b.group;
    let c = CycloNumber::root(
        beta.order(),
        beta.exponent(&g.element(first.1), &g.element(second.1)) as i64,
    );
    b.word(&[first, second])
        .sub(&b.word(&[second, first]).scale(&c))
}

/// x1h1 x2h2 − β(h1,h2) x2h2 x1h1 for all pairs.
pub fn regular_identities(beta: &Bicharacter) -> GeneratorSet {
    let g = beta.group().clone();
    let b = Poly::new(&g, beta.order());
    let mut s = GeneratorSet::new("regular", Mode::Identities, g.clone());
    for h1 in 0..g.order() {
        for h2 in 0..g.order() {
            s.push_identity(
                "beta-commutator",
                beta_commutator(&b, beta, (1, h1), (2, h2)),
            );
        }
    }
    s
}

/// x1h for h in the radical, and padded β-commutators over all 4-tuples.
pub fn regular_centrals(beta: &Bicharacter) -> GeneratorSet {
    let g = beta.group().clone();
    let b = Poly::new(&g, beta.order());
    let mut s = GeneratorSet::new("regular", Mode::Centrals, g.clone());
    for h in beta.radical() {
        s.push_central("radical-variable", b.var(1, g.index(&h)));
    }
    let n = g.order();
    for h1 in 0..n {
        for h2 in 0..n {
            for h3 in 0..n {
                let inner = beta_commutator(&b, beta, (2, h2), (3, h3));
                for h4 in 0..n {
                    s.push_identity(
                        "padded-beta-commutator",
                        b.var(1, h1).mul(&inner).mul(&b.var(4, h4)),
                    );
                }
            }
        }
    }
    s
}

pub fn regular(beta: &Bicharacter, mode: Mode) -> GeneratorSet {
    match mode {
        Mode::Identities => regular_identities(beta),
        Mode::Centrals => regular_centrals(beta),
    }
}

/// Adds x_{1,g} for every g outside the support of `a`.
pub fn with_off_support(mut s: GeneratorSet, a: &GradedAlgebra) -> GeneratorSet {
    let support = a.support();
    let b = Poly::new(a.group(), 1);
    for g in 0..a.group().order() {
        if !support.contains(&g) {
            s.push_identity("off-support", b.var(1, g));
        }
    }
    s
}

/// All degree lifts of `f` through `q`, one per choice of fiber element per variable.
fn fiber_lifts(
    f: &GradedPolynomial,
    fibers: &BTreeMap<usize, Vec<GroupElement>>,
    group: &FiniteAbelianGroup,
) -> Result<Vec<GradedPolynomial>> {
    let vars: Vec<(u32, usize)> = f
        .variables()
        .into_iter()
        .map(|(i, d)| (i, d as usize))
        .collect();
    let mut choices: Vec<BTreeMap<u32, GroupElement>> = vec![BTreeMap::new()];
    for (i, d) in &vars {
        let fib = &fibers[d];
        choices = choices
            .into_iter()
            .flat_map(|m| {
                fib.iter().map(move |g| {
                    let mut m = m.clone();
                    m.insert(*i, g.clone());
                    m
                })
            })
            .collect();
    }
    choices.iter().map(|c| f.with_degrees(group, c)).collect()
}

/// Lifts a multilinear basis for the grading induced by G → G/⟨g⟩ to a
/// basis over G. Requires an invertible central element of degree g.
pub fn lift_basis(s: &GeneratorSet, a: &GradedAlgebra, g: &GroupElement) -> Result<GeneratorSet> {
    let group = a.group();
    group.check(g)?;
    if a.invertible_central_at(g).is_none() {
        return Err(Error::precondition(format!(
            "{} has no invertible central element of degree {}",
            a.name(),
            group.format(g)
        )));
    }
    let (quot, proj) = group.quotient_by(g)?;
    if quot.orders() != s.group.orders() {
        return Err(Error::domain(format!(
            "generator set is graded by {} but the quotient is {}",
            s.group, quot
        )));
    }
    let mut fibers: BTreeMap<usize, Vec<GroupElement>> = BTreeMap::new();
    for y in quot.elements() {
        fibers.insert(quot.index(&y), proj.fiber(&y));
    }
    let mut out = GeneratorSet::new(format!("{}-lift", s.name), s.mode, group.clone());
    for a in &s.assumptions {
        out.assume(a.clone());
    }
    out.assume(format!(
        "lifted through the quotient by ⟨{}⟩",
        group.format(g)
    ));
    for (central, part) in [(false, &s.s1), (true, &s.s2)] {
        for m in part {
            for piece in multilinearize(&m.poly) {
                for f in fiber_lifts(&piece, &fibers, group)? {
                    if central {
                        out.push_central(&m.family, f);
                    } else {
                        out.push_identity(&m.family, f);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The corollary basis for a cyclic 2-power grading read literally: one
/// k (even power) or h (odd power) per polynomial.
pub fn cyclic_corollary_literal(n: u32, mode: Mode) -> Result<GeneratorSet> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::domain(
            "cyclic corollary needs a group order 2^k ≥ 2",
        ));
    }
    let g = FiniteAbelianGroup::with_names(vec![n], vec!["a".into()])?;
    let b = Poly::new(&g, 1);
    let evens: Vec<usize> = (0..n as usize).step_by(2).collect();
    let odds: Vec<usize> = (1..n as usize).step_by(2).collect();
    let mut s = GeneratorSet::new(format!("corollary-literal-{n}"), mode, g.clone());
    s.assume(
        "each polynomial uses a single even degree k or odd degree h for all its inner variables",
    );
    match mode {
        Mode::Identities => {
            for &k in &evens {
                s.push_identity("commutator-k", b.commutator(&b.var(1, k), &b.var(2, k)));
            }
            for &h in &odds {
                s.push_identity(
                    "reversal-h",
                    b.word(&[(1, h), (2, h), (3, h)])
                        .sub(&b.word(&[(3, h), (2, h), (1, h)])),
                );
            }
        }
        Mode::Centrals => {
            for &h in &odds {
                s.push_central(
                    "square-sum-h",
                    b.word(&[(1, h), (1, h), (2, h)])
                        .add(&b.word(&[(2, h), (2, h), (1, h)])),
                );
            }
            for d in 0..n as usize {
                for &k in &evens {
                    let inner = b.commutator(&b.var(2, k), &b.var(3, k));
                    s.push_identity(
                        "padded-commutator-k",
                        b.var(1, d).mul(&inner).mul(&b.var(4, d)),
                    );
                }
                for &h in &odds {
                    let rev =
                        b.word(&[(2, h), (3, h), (4, h)])
                            .sub(&b.word(&[(4, h), (3, h), (2, h)]));
                    s.push_identity("padded-reversal-h", b.var(1, d).mul(&rev).mul(&b.var(5, d)));
                }
            }
        }
    }
    Ok(s)
}

/// The same corollary obtained by lifting the elementary Z2 basis through
/// the quotient by the square of the generator, lifting each variable
/// independently.
pub fn cyclic_corollary(a: &GradedAlgebra, mode: Mode) -> Result<GeneratorSet> {
    let g = a.group();
    if g.rank() != 1 || !g.order().is_power_of_two() || g.order() < 2 {
        return Err(Error::domain(format!(
            "{} is not graded by a cyclic 2-group",
            a.name()
        )));
    }
    let base = match mode {
        Mode::Identities => dv_lemma(),
        Mode::Centrals => bp_central(),
    };
    let mut s = lift_basis(&base, a, &g.pow(&g.generator(0), 2))?;
    s.name = format!("{}-corollary", a.name());
    Ok(s)
}
