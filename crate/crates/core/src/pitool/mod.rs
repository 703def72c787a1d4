//! Identity engine: membership, multilinear identity and central spaces,
//! consequence spans, generator families and verification reports.

pub mod consequences;
pub mod families;
pub mod pauli;
pub mod spaces;
pub mod transfer;
pub mod verify;

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freealg::ops::multilinearize;
use crate::freealg::{permutations, GradedPolynomial, Var};
use crate::groups::FiniteAbelianGroup;
use crate::scalars::linalg::SparseVec;
use crate::scalars::CycloNumber;

pub use consequences::{tideal_consequences, tspace_consequences};
pub use spaces::{
    is_central, is_identity, multilinear_central_space, multilinear_identity_space, Centrality,
    Limits,
};
pub use verify::{check_membership, verify_basis, VerificationReport, VerifyOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Identities,
    Centrals,
}

impl std::str::FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identities" => Ok(Mode::Identities),
            "centrals" => Ok(Mode::Centrals),
            _ => Err(Error::parse(format!(
                "unknown mode '{s}' (expected identities or centrals)"
            ))),
        }
    }
}

/// A polynomial tagged with the family it was generated from.
#[derive(Clone, Debug, PartialEq)]
pub struct Member {
    pub family: String,
    pub poly: GradedPolynomial,
}

impl Member {
    pub fn new(family: impl Into<String>, poly: GradedPolynomial) -> Self {
        Member {
            family: family.into(),
            poly,
        }
    }
}

/// A named generating family. In identity mode everything sits in `s1`;
/// in central mode `s1` holds identities and `s2` proper central polynomials.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub name: String,
    pub mode: Mode,
    pub group: FiniteAbelianGroup,
    pub s1: Vec<Member>,
    pub s2: Vec<Member>,
    pub assumptions: Vec<String>,
    seen: HashSet<(bool, String)>,
}

impl GeneratorSet {
    pub fn new(name: impl Into<String>, mode: Mode, group: FiniteAbelianGroup) -> Self {
        GeneratorSet {
            name: name.into(),
            mode,
            group,
            s1: Vec::new(),
            s2: Vec::new(),
            assumptions: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn push_identity(&mut self, family: &str, poly: GradedPolynomial) {
        if !poly.is_zero() && self.seen.insert((false, poly.to_string())) {
            self.s1.push(Member::new(family, poly));
        }
    }

    pub fn push_central(&mut self, family: &str, poly: GradedPolynomial) {
        if !poly.is_zero() && self.seen.insert((true, poly.to_string())) {
            self.s2.push(Member::new(family, poly));
        }
    }

    pub fn assume(&mut self, note: impl Into<String>) {
        let n = note.into();
        if !self.assumptions.contains(&n) {
            self.assumptions.push(n);
        }
    }

    pub fn len(&self) -> usize {
        self.s1.len() + self.s2.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn members(&self) -> impl Iterator<Item = &Member> {
        self.s1.iter().chain(&self.s2)
    }

    /// Appends another set's members (same group and mode).
    pub fn extend(&mut self, other: GeneratorSet) -> Result<()> {
        if other.group.orders() != self.group.orders() || other.mode != self.mode {
            return Err(Error::domain("generator sets differ in group or mode"));
        }
        for m in other.s1 {
            self.push_identity(&m.family, m.poly);
        }
        for m in other.s2 {
            self.push_central(&m.family, m.poly);
        }
        for a in other.assumptions {
            self.assume(a);
        }
        Ok(())
    }

    /// Polynomial-literal listing, one member per line.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "# generator set {} ({:?}) over {}\n",
            self.name, self.mode, self.group
        );
        for a in &self.assumptions {
            out.push_str(&format!("# assumption: {a}\n"));
        }
        for (tag, part) in [("S1", &self.s1), ("S2", &self.s2)] {
            for m in part.iter() {
                out.push_str(&format!("{tag}\t{}\t{}\n", m.family, m.poly));
            }
        }
        out
    }
}

/// Multilinear polynomials in x1..xn with degrees (indices) `degrees`,
/// identified with coordinate vectors over the n! monomials in
/// lexicographic permutation order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultidegreeBasis {
    pub degrees: Vec<usize>,
}

impl MultidegreeBasis {
    pub fn new(degrees: Vec<usize>) -> Self {
        MultidegreeBasis { degrees }
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    pub fn size(&self) -> usize {
        (1..=self.n()).product()
    }

    pub fn monomials(&self) -> Vec<Vec<usize>> {
        permutations(self.n())
    }

    /// Lehmer rank of a permutation of 0..n.
    pub fn rank(perm: &[usize]) -> usize {
        let n = perm.len();
        let mut r = 0;
        for i in 0..n {
            let smaller = perm[i + 1..].iter().filter(|&&x| x < perm[i]).count();
            r = r * (n - i) + smaller;
        }
        r
    }

    pub fn unrank(n: usize, mut r: usize) -> Vec<usize> {
        let mut fact = vec![1usize; n + 1];
        for i in 1..=n {
            fact[i] = fact[i - 1] * i;
        }
        let mut pool: Vec<usize> = (0..n).collect();
        let mut out = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let k = r / fact[i];
            r %= fact[i];
            out.push(pool.remove(k));
        }
        out
    }

    /// Coordinates of `f`, whose variables must be exactly x1..xn with the
    /// basis degrees.
    pub fn to_vector(&self, f: &GradedPolynomial) -> Result<SparseVec> {
        let vars = f.variables();
        let n = self.n();
        if !f.is_zero()
            && (!f.is_multilinear()
                || vars.len() != n
                || vars
                    .iter()
                    .enumerate()
                    .any(|(i, (&idx, &d))| idx != i as u32 + 1 || d as usize != self.degrees[i]))
        {
            return Err(Error::domain(format!(
                "polynomial is not in P_g for the degree tuple {:?}",
                self.degrees
            )));
        }
        let mut v: Vec<(usize, CycloNumber)> = f
            .terms()
            .iter()
            .map(|(m, c)| {
                (
                    Self::rank(&m.iter().map(|x| x.index as usize - 1).collect::<Vec<_>>()),
                    c.clone(),
                )
            })
            .collect();
        v.sort_by_key(|(k, _)| *k);
        Ok(v)
    }

    pub fn to_polynomial(
        &self,
        v: &SparseVec,
        group: &FiniteAbelianGroup,
        order: u32,
    ) -> GradedPolynomial {
        let n = self.n();
        let mut p = GradedPolynomial::zero(group.clone(), order);
        for (k, c) in v {
            let perm = Self::unrank(n, *k);
            p.add_term(
                perm.iter()
                    .map(|&i| Var::new(i as u32 + 1, self.degrees[i]))
                    .collect(),
                c.clone(),
            );
        }
        p
    }
}

/// Renames the variables of a multilinear polynomial to x1..xn, ordered by
/// (degree index, old index); returns the polynomial and its degree tuple.
pub fn canonical_form(f: &GradedPolynomial) -> (GradedPolynomial, Vec<usize>) {
    let mut vars: Vec<(u32, u32)> = f.variables().into_iter().map(|(i, d)| (d, i)).collect();
    vars.sort_unstable();
    let map: BTreeMap<u32, u32> = vars
        .iter()
        .enumerate()
        .map(|(k, &(_, i))| (i, k as u32 + 1))
        .collect();
    (
        f.rename(&map),
        vars.iter().map(|&(d, _)| d as usize).collect(),
    )
}

/// Multilinear pieces of `f`, each in canonical form.
pub fn canonical_pieces(f: &GradedPolynomial) -> Vec<(GradedPolynomial, Vec<usize>)> {
    multilinearize(f).iter().map(canonical_form).collect()
}

/// All sorted degree multisets of sizes 1..=max over `support`.
pub fn multisets(support: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(
        support: &[usize],
        start: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if left == 0 {
            return;
        }
        for i in start..support.len() {
            cur.push(support[i]);
            rec(support, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(support, 0, max, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}
