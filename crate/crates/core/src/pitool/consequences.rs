//! Multilinear consequences of a generating set inside a fixed P_g.
//!
//! The free algebra is unital, so a variable of degree e may also be sent
//! to 1. A T-space consequence is f(m_1, …, m_k); a T-ideal consequence is
//! u·f(m_1, …, m_k)·v. Here u, v, m_i are words in the target variables that
//! together use every variable exactly once.

use super::{canonical_pieces, MultidegreeBasis};
use crate::freealg::{permutations, GradedPolynomial};
use crate::groups::FiniteAbelianGroup;
use crate::scalars::linalg::{Echelon, SparseVec};
use crate::scalars::CycloNumber;

/// A multilinear generator: slot degrees and terms as slot orderings.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub degrees: Vec<usize>,
    pub terms: Vec<(Vec<usize>, CycloNumber)>,
}

impl Prepared {
    /// Multilinear pieces of `f` ready for substitution.
    pub fn from_polynomial(f: &GradedPolynomial) -> Vec<Prepared> {
        canonical_pieces(f)
            .into_iter()
            .map(|(p, degrees)| Prepared {
                degrees,
                terms: p
                    .terms()
                    .iter()
                    .map(|(m, c)| (m.iter().map(|v| v.index as usize - 1).collect(), c.clone()))
                    .collect(),
            })
            .collect()
    }
}

pub fn prepare_all<'a>(polys: impl IntoIterator<Item = &'a GradedPolynomial>) -> Vec<Prepared> {
    polys
        .into_iter()
        .flat_map(Prepared::from_polynomial)
        .collect()
}

/// Span builder for one target multidegree.
pub struct ConsequenceSpan<'g> {
    group: &'g FiniteAbelianGroup,
    target: Vec<usize>,
    mask_degree: Vec<usize>,
    identity: usize,
    pub span: Echelon,
}

fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn orderings(mask: u32) -> Vec<Vec<usize>> {
    let b = bits(mask);
    permutations(b.len())
        .into_iter()
        .map(|p| p.into_iter().map(|i| b[i]).collect())
        .collect()
}

impl<'g> ConsequenceSpan<'g> {
    pub fn new(group: &'g FiniteAbelianGroup, target: &[usize]) -> Self {
        let n = target.len();
        assert!(n <= 20, "multidegree too large for consequence enumeration");
        let identity = group.index(&group.identity());
        let mut mask_degree = vec![identity; 1 << n];
        for mask in 1u32..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            mask_degree[mask as usize] =
                group.op_idx(mask_degree[(mask & (mask - 1)) as usize], target[low]);
        }
        ConsequenceSpan {
            group,
            target: target.to_vec(),
            mask_degree,
            identity,
            span: Echelon::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.span.rank()
    }

    fn full(&self) -> u32 {
        ((1u64 << self.target.len()) - 1) as u32
    }

    /// Adds every consequence of `gen`; returns early once the span reaches `stop_at`.
    pub fn add(&mut self, gen: &Prepared, ideal: bool, stop_at: Option<usize>) {
        let n = self.target.len();
        let non_e = gen.degrees.iter().filter(|&&d| d != self.identity).count();
        if non_e > n || gen.terms.is_empty() {
            return;
        }
        if non_e == n {
            // each non-e slot takes exactly one variable
            let mut a: Vec<usize> = gen
                .degrees
                .iter()
                .copied()
                .filter(|&d| d != self.identity)
                .collect();
            let mut b = self.target.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return;
            }
        }
        if let Some(s) = stop_at {
            if self.rank() >= s {
                return;
            }
        }
        let mut slots = Vec::with_capacity(gen.degrees.len());
        self.assign(gen, ideal, 0, self.full(), &mut slots, stop_at);
    }

    fn assign(
        &mut self,
        gen: &Prepared,
        ideal: bool,
        j: usize,
        remaining: u32,
        slots: &mut Vec<u32>,
        stop: Option<usize>,
    ) {
        if stop.is_some_and(|s| self.rank() >= s) {
            return;
        }
        if j == gen.degrees.len() {
            if !ideal {
                if remaining == 0 {
                    self.emit(gen, 0, slots, 0);
                }
                return;
            }
            // every split of the rest into prefix and suffix
            let mut sub = remaining;
            loop {
                self.emit(gen, sub, slots, remaining & !sub);
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & remaining;
            }
            return;
        }
        let d = gen.degrees[j];
        // remaining non-e slots each need at least one variable
        let need = gen.degrees[j + 1..]
            .iter()
            .filter(|&&x| x != self.identity)
            .count() as u32;
        let mut sub = remaining;
        loop {
            let ok = if sub == 0 {
                d == self.identity
            } else {
                self.mask_degree[sub as usize] == d
            };
            if ok && (remaining & !sub).count_ones() >= need {
                slots.push(sub);
                self.assign(gen, ideal, j + 1, remaining & !sub, slots, stop);
                slots.pop();
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & remaining;
        }
    }

    fn emit(&mut self, gen: &Prepared, prefix: u32, slots: &[u32], suffix: u32) {
        let pre = orderings(prefix);
        let suf = orderings(suffix);
        let slot_orders: Vec<Vec<Vec<usize>>> = slots.iter().map(|&m| orderings(m)).collect();
        let mut choice = vec![0usize; slots.len()];
        loop {
            for u in &pre {
                for v in &suf {
                    let mut acc: std::collections::BTreeMap<usize, CycloNumber> =
                        std::collections::BTreeMap::new();
                    for (word, c) in &gen.terms {
                        let mut perm: Vec<usize> = u.clone();
                        for &s in word {
                            perm.extend_from_slice(&slot_orders[s][choice[s]]);
                        }
                        perm.extend_from_slice(v);
                        let r = MultidegreeBasis::rank(&perm);
                        let e = acc.entry(r).or_insert_with(|| CycloNumber::zero(c.order()));
                        *e = e.add(c);
                    }
                    let vec: SparseVec = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if !vec.is_empty() {
                        self.span.insert(&vec);
                    }
                }
            }
            // odometer over slot orderings
            let mut k = 0;
            while k < choice.len() {
                choice[k] += 1;
                if choice[k] < slot_orders[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == choice.len() {
                break;
            }
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.group
    }
}

fn span_of(
    polys: &[GradedPolynomial],
    group: &FiniteAbelianGroup,
    target: &[usize],
    ideal: bool,
) -> Echelon {
    let mut c = ConsequenceSpan::new(group, target);
    for p in prepare_all(polys) {
        c.add(&p, ideal, None);
    }
    c.span
}

/// Span of all T-ideal consequences of `polys` in P_g.
pub fn tideal_consequences(
    polys: &[GradedPolynomial],
    group: &FiniteAbelianGroup,
    target: &[usize],
) -> Echelon {
    span_of(polys, group, target, true)
}

/// Span of all T-space consequences of `polys` in P_g.
pub fn tspace_consequences(
    polys: &[GradedPolynomial],
    group: &FiniteAbelianGroup,
    target: &[usize],
) -> Echelon {
    span_of(polys, group, target, false)
}
