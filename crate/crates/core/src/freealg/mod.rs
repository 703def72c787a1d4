//! The free G-graded associative algebra over the real cyclotomic numbers.

pub mod named;
pub mod ops;
pub mod parse;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement};
use crate::scalars::{lcm, CycloNumber};

/// Free generator x_{index, degree}; `degree` is a group element index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var {
    pub index: u32,
    pub degree: u32,
}

impl Var {
    pub fn new(index: u32, degree: usize) -> Self {
        Var {
            index,
            degree: degree as u32,
        }
    }
}

pub type Monomial = Vec<Var>;

/// A polynomial with canonical (zero-free, ordered) term map.
#[derive(Clone, Debug)]
pub struct GradedPolynomial {
    group: FiniteAbelianGroup,
    order: u32,
    terms: BTreeMap<Monomial, CycloNumber>,
}

impl PartialEq for GradedPolynomial {
    fn eq(&self, o: &Self) -> bool {
        self.group.orders() == o.group.orders() && self.terms == o.terms
    }
}

impl GradedPolynomial {
    pub fn zero(group: FiniteAbelianGroup, order: u32) -> Self {
        GradedPolynomial {
            group,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// Builds from terms, merging equal monomials and validating degrees.
    pub fn from_terms(
        group: FiniteAbelianGroup,
        order: u32,
        terms: impl IntoIterator<Item = (Monomial, CycloNumber)>,
    ) -> Result<Self> {
        let mut p = Self::zero(group, order);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p.check_vars()?;
        Ok(p)
    }

    pub fn monomial(group: FiniteAbelianGroup, order: u32, m: Monomial, c: CycloNumber) -> Self {
        let mut p = Self::zero(group, order);
        p.add_term(m, c);
        p
    }

    fn check_vars(&self) -> Result<()> {
        let mut seen: BTreeMap<u32, u32> = BTreeMap::new();
        for m in self.terms.keys() {
            for v in m {
                if v.degree as usize >= self.group.order() {
                    return Err(Error::domain(format!(
                        "variable x{} has a degree outside the group",
                        v.index
                    )));
                }
                if let Some(d) = seen.insert(v.index, v.degree) {
                    if d != v.degree {
                        return Err(Error::domain(format!(
                            "variable x{} is used with two degrees",
                            v.index
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn add_term(&mut self, m: Monomial, c: CycloNumber) {
        if c.is_zero() {
            return;
        }
        let n = lcm(self.order, c.order());
        if n != self.order {
            self.set_order(n);
        }
        let c = c.lift(self.order);
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = e.add(&c);
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn set_order(&mut self, n: u32) {
        self.order = n;
        for c in self.terms.values_mut() {
            *c = c.lift(n);
        }
    }

    pub fn lifted(&self, n: u32) -> Self {
        let mut p = self.clone();
        p.set_order(lcm(n, self.order));
        p
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CycloNumber> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(CycloNumber::is_real)
    }

    /// Variables in index order with their degree indices.
    pub fn variables(&self) -> BTreeMap<u32, u32> {
        self.terms
            .keys()
            .flatten()
            .map(|v| (v.index, v.degree))
            .collect()
    }

    pub fn max_var_index(&self) -> u32 {
        self.variables().keys().next_back().copied().unwrap_or(0)
    }

    /// Every monomial uses each variable of the polynomial exactly once.
    pub fn is_multilinear(&self) -> bool {
        let vars = self.variables();
        self.terms.keys().all(|m| {
            m.len() == vars.len() && {
                let mut idx: Vec<u32> = m.iter().map(|v| v.index).collect();
                idx.sort_unstable();
                idx.windows(2).all(|w| w[0] != w[1])
            }
        })
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// G-degree of a monomial (product of the letter degrees).
    pub fn monomial_degree(&self, m: &[Var]) -> GroupElement {
        let mut acc = self.group.identity();
        for v in m {
            acc = self.group.op(&acc, &self.group.element(v.degree as usize));
        }
        acc
    }

    /// Common G-degree of all monomials, if homogeneous.
    pub fn homogeneous_degree(&self) -> Option<GroupElement> {
        let mut it = self.terms.keys().map(|m| self.monomial_degree(m));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut p = self.clone();
        for (m, c) in &o.terms {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&CycloNumber::from_int(self.order, -1))
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        let mut p = Self::zero(self.group.clone(), lcm(self.order, c.order()));
        for (m, x) in &self.terms {
            p.add_term(m.clone(), x.mul(c));
        }
        p
    }

    /// Product in the free algebra (concatenation).
    pub fn mul(&self, o: &Self) -> Self {
        let mut p = Self::zero(self.group.clone(), lcm(self.order, o.order));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = m1.clone();
                m.extend_from_slice(m2);
                p.add_term(m, c1.mul(c2));
            }
        }
        p
    }

    /// Replaces each variable by a polynomial (graded endomorphism when the
    /// images are homogeneous of the variable's degree).
    pub fn substitute(&self, images: &BTreeMap<u32, GradedPolynomial>) -> Result<Self> {
        let mut out = Self::zero(self.group.clone(), self.order);
        for (m, c) in &self.terms {
            let mut acc = Self::monomial(self.group.clone(), self.order, vec![], c.clone());
            for v in m {
                let img = images
                    .get(&v.index)
                    .ok_or_else(|| Error::domain(format!("x{} is not assigned", v.index)))?;
                acc = acc.mul(img);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// Relabels variable indices (must be injective on the used variables).
    pub fn rename(&self, map: &BTreeMap<u32, u32>) -> Self {
        let mut p = Self::zero(self.group.clone(), self.order);
        for (m, c) in &self.terms {
            let nm = m
                .iter()
                .map(|v| Var {
                    index: *map.get(&v.index).unwrap_or(&v.index),
                    degree: v.degree,
                })
                .collect();
            p.add_term(nm, c.clone());
        }
        p
    }

    /// Replaces the group, mapping degree indices through `f`.
    pub fn map_degrees(&self, group: FiniteAbelianGroup, f: impl Fn(u32) -> u32) -> Self {
        let mut p = Self::zero(group, self.order);
        for (m, c) in &self.terms {
            p.add_term(
                m.iter()
                    .map(|v| Var {
                        index: v.index,
                        degree: f(v.degree),
                    })
                    .collect(),
                c.clone(),
            );
        }
        p
    }

    /// Gives every variable the degree listed for its index.
    pub fn with_degrees(
        &self,
        group: &FiniteAbelianGroup,
        degrees: &BTreeMap<u32, GroupElement>,
    ) -> Result<Self> {
        let mut p = Self::zero(group.clone(), self.order);
        for (m, c) in &self.terms {
            let mut nm = Vec::with_capacity(m.len());
            for v in m {
                let d = degrees
                    .get(&v.index)
                    .ok_or_else(|| Error::domain(format!("no degree given for x{}", v.index)))?;
                group.check(d)?;
                nm.push(Var {
                    index: v.index,
                    degree: group.index(d) as u32,
                });
            }
            p.add_term(nm, c.clone());
        }
        Ok(p)
    }

    pub fn format_monomial(&self, m: &[Var]) -> String {
        m.iter()
            .map(|v| {
                format!(
                    "x{}:{}",
                    v.index,
                    self.group.format(&self.group.element(v.degree as usize))
                )
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, abs) = match c.as_rational() {
                Some(q) if q.signum() < 0 => (true, c.neg()),
                _ => (false, c.clone()),
            };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = self.format_monomial(m);
            if abs.is_one() && !mono.is_empty() {
                write!(f, "{mono}")?;
            } else if mono.is_empty() {
                write!(f, "{abs}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(2)
    }

    #[test]
    fn canonical_cancellation() {
        let one = CycloNumber::one(1);
        let m = vec![Var::new(1, 0), Var::new(2, 1)];
        let mut p = GradedPolynomial::monomial(g2(), 1, m.clone(), one.clone());
        p.add_term(m, one.neg());
        assert!(p.is_zero());
    }

    #[test]
    fn inconsistent_degrees_rejected() {
        let one = CycloNumber::one(1);
        let r = GradedPolynomial::from_terms(
            g2(),
            1,
            vec![
                (vec![Var::new(1, 0)], one.clone()),
                (vec![Var::new(1, 1)], one),
            ],
        );
        assert!(r.is_err());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }
}
