//! Named polynomials: standard, commutators, Hall, the central polynomial of
//! M2, and helpers for writing families over a grading group.

use super::{permutations, GradedPolynomial, Monomial, Var};
use crate::groups::FiniteAbelianGroup;
use crate::scalars::CycloNumber;

fn sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Builder for polynomials over a fixed group whose variables are
/// `(index, degree index)` pairs.
#[derive(Clone, Debug)]
pub struct Poly<'a> {
    pub group: &'a FiniteAbelianGroup,
    pub order: u32,
}

impl<'a> Poly<'a> {
    pub fn new(group: &'a FiniteAbelianGroup, order: u32) -> Self {
        Poly { group, order }
    }

    pub fn var(&self, index: u32, degree: usize) -> GradedPolynomial {
        self.word(&[(index, degree)])
    }

    pub fn word(&self, letters: &[(u32, usize)]) -> GradedPolynomial {
        let m: Monomial = letters.iter().map(|&(i, d)| Var::new(i, d)).collect();
        GradedPolynomial::monomial(
            self.group.clone(),
            self.order,
            m,
            CycloNumber::one(self.order),
        )
    }

    pub fn zero(&self) -> GradedPolynomial {
        GradedPolynomial::zero(self.group.clone(), self.order)
    }

    pub fn commutator(&self, a: &GradedPolynomial, b: &GradedPolynomial) -> GradedPolynomial {
        a.mul(b).sub(&b.mul(a))
    }
}

/// S_n(x_1, …, x_n) with all variables of degree `deg` (index) in `group`.
pub fn standard_on(group: &FiniteAbelianGroup, n: usize, deg: usize) -> GradedPolynomial {
    let mut p = GradedPolynomial::zero(group.clone(), 1);
    for perm in permutations(n) {
        let m: Monomial = perm.iter().map(|&i| Var::new(i as u32 + 1, deg)).collect();
        p.add_term(m, CycloNumber::from_int(1, sign(&perm)));
    }
    p
}

pub fn standard(n: usize) -> GradedPolynomial {
    standard_on(&FiniteAbelianGroup::trivial(), n, 0)
}

/// x_1 x_2 - x_2 x_1 over the trivial group.
pub fn commutator() -> GradedPolynomial {
    let g = FiniteAbelianGroup::trivial();
    let b = Poly::new(&g, 1);
    b.commutator(&b.var(1, 0), &b.var(2, 0))
}

/// [[x_1, x_2]^2, x_3].
pub fn hall() -> GradedPolynomial {
    let g = FiniteAbelianGroup::trivial();
    let b = Poly::new(&g, 1);
    let c = b.commutator(&b.var(1, 0), &b.var(2, 0));
    b.commutator(&c.mul(&c), &b.var(3, 0))
}

/// [x_1,x_2][x_3,x_4] + [x_3,x_4][x_1,x_2].
pub fn okhitin_central() -> GradedPolynomial {
    let g = FiniteAbelianGroup::trivial();
    let b = Poly::new(&g, 1);
    let c12 = b.commutator(&b.var(1, 0), &b.var(2, 0));
    let c34 = b.commutator(&b.var(3, 0), &b.var(4, 0));
    c12.mul(&c34).add(&c34.mul(&c12))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_four_has_24_terms() {
        let s = standard(4);
        assert_eq!(s.len(), 24);
        assert!(s
            .terms()
            .values()
            .all(|c| c.as_rational().map(|q| q.to_f64().abs()) == Some(1.0)));
    }

    #[test]
    fn hall_expansion() {
        // [x1,x2]^2 has 4 words; times x3 on either side gives 8 distinct words.
        let h = hall();
        assert_eq!(h.len(), 8);
        assert!(!h.is_multilinear());
    }

    #[test]
    fn commutator_terms() {
        assert_eq!(commutator().to_string(), "x1:e*x2:e - x2:e*x1:e");
    }
}
