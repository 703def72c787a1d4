//! Bases for A⊗R from bases for A when R carries a regular grading.

use std::collections::BTreeMap;

use super::{GeneratorSet, Mode};
use crate::algebras::analysis::Regularity;
use crate::algebras::GradedAlgebra;
use crate::bichar::Bicharacter;
use crate::error::{Error, Result};
use crate::freealg::ops::{multilinearize, transfer_phi};
use crate::freealg::GradedPolynomial;
use crate::groups::GroupElement;

/// Checks Z(R) = ⊕_{h ∈ H′} R_h.
pub fn has_minimal_center(r: &GradedAlgebra, beta: &Bicharacter) -> bool {
    let radical = beta.radical();
    let g = r.group();
    let expected: usize = radical.iter().map(|h| r.component_of(h).len()).sum();
    let center = r.center();
    center.len() == expected
        && center.iter().all(|z| radical.contains(&z.degree))
        && radical
            .iter()
            .all(|h| r.center_dim_at(g.index(h)) == r.component_of(h).len())
}

fn renumbered(f: &GradedPolynomial) -> GradedPolynomial {
    let map: BTreeMap<u32, u32> = f
        .variables()
        .keys()
        .enumerate()
        .map(|(k, &i)| (i, k as u32 + 1))
        .collect();
    f.rename(&map)
}

fn all_tuples(elements: &[GroupElement], n: usize) -> Vec<Vec<GroupElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t: Vec<GroupElement>| {
                elements.iter().map(move |h| {
                    let mut t = t.clone();
                    t.push(h.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// The transferred set S̃ over G×H. In central mode the proper-central part
/// keeps only tuples with h1⋯hn in the radical of β.
pub fn transfer_with(s: &GeneratorSet, beta: &Bicharacter) -> Result<GeneratorSet> {
    let hg = beta.group();
    let elements: Vec<GroupElement> = hg.elements().collect();
    let radical = beta.radical();
    let group = s.group.direct_product(hg);
    let mut out = GeneratorSet::new(format!("{}-transfer", s.name), s.mode, group);
    for a in &s.assumptions {
        out.assume(a.clone());
    }
    for (central, part) in [(false, &s.s1), (true, &s.s2)] {
        for m in part {
            for piece in multilinearize(&m.poly) {
                let f = renumbered(&piece);
                let n = f.variables().len();
                for h in all_tuples(&elements, n) {
                    if central && !radical.contains(&hg.product(&h)) {
                        continue;
                    }
                    let t = transfer_phi(&f, &h, beta)?;
                    if central {
                        out.push_central(&m.family, t);
                    } else {
                        out.push_identity(&m.family, t);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Transfers `s` (a basis for A) to A⊗R, reading β from R's grading.
pub fn transfer_basis(s: &GeneratorSet, r: &GradedAlgebra) -> Result<GeneratorSet> {
    let beta = match r.detect_regular() {
        Regularity::Regular(b) => b,
        Regularity::NotRegular(_) => {
            return Err(Error::precondition(format!(
                "{} is not regularly graded",
                r.name()
            )))
        }
    };
    if s.mode == Mode::Centrals && !has_minimal_center(r, &beta) {
        return Err(Error::precondition(format!(
            "the center of {} is not the sum of the components over the radical of its bicharacter",
            r.name()
        )));
    }
    let beta = beta.with_group(r.group().clone())?;
    transfer_with(s, &beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::catalog;
    use crate::freealg::named::Poly;
    use crate::groups::FiniteAbelianGroup;

    #[test]
    fn field_basis_recovers_regular_centrals() {
        // {x1[x2,x3]x4} ∪ {x1} over the trivial group, moved onto M2 graded by Z2×Z2.
        let g = FiniteAbelianGroup::trivial();
        let b = Poly::new(&g, 1);
        let mut s = GeneratorSet::new("field", Mode::Centrals, g.clone());
        s.push_central("x", b.var(1, 0));
        let inner = b.commutator(&b.var(2, 0), &b.var(3, 0));
        s.push_identity("padded", b.var(1, 0).mul(&inner).mul(&b.var(4, 0)));
        let r = catalog::m2_4();
        let t = transfer_basis(&s, &r).unwrap();
        // radical of a nondegenerate form is {e}
        assert_eq!(t.s2.len(), 1);
        assert_eq!(t.s1.len(), 256);
    }
}
