//! Non-regular Pauli gradings: the reordering families (I)/(II), the short
//! identities (9)–(12), and a reducer that merges equal-degree variables
//! with a replayable certificate.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::spaces::Engine;
use super::verify::{verify_basis, VerificationReport, VerifyOptions};
use super::{multisets, GeneratorSet, Mode};
use crate::algebras::{GradedAlgebra, Regularity};
use crate::bichar::Bicharacter;
use crate::error::{Error, Result};
use crate::freealg::ops::reorder_exponent;
use crate::freealg::{permutations, GradedPolynomial, Monomial, Var};
use crate::groups::FiniteAbelianGroup;
use crate::scalars::CycloNumber;

/// Commutation data of a non-regular Pauli grading.
#[derive(Clone, Debug)]
pub struct PauliData {
    pub beta: Bicharacter,
    /// Some β(g,h) equals ±i.
    pub has_i: bool,
}

impl PauliData {
    pub fn of(a: &GradedAlgebra) -> Result<Self> {
        if let Regularity::Regular(_) = a.detect_regular() {
            return Err(Error::domain(format!(
                "{} has a regular grading: use family_regular",
                a.name()
            )));
        }
        let beta = a.complex_bicharacter()?.with_group(a.group().clone())?;
        let n = a.group().order();
        let has_i = (0..n).any(|g| (0..n).any(|h| Self::quarter(&beta, g, h)));
        Ok(PauliData { beta, has_i })
    }

    fn exp(beta: &Bicharacter, g: usize, h: usize) -> u32 {
        let grp = beta.group();
        beta.exponent(&grp.element(g), &grp.element(h))
    }

    fn quarter(beta: &Bicharacter, g: usize, h: usize) -> bool {
        let (k, n) = (Self::exp(beta, g, h), beta.order());
        (4 * k) % n == 0 && (2 * k) % n != 0
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.beta.group()
    }

    pub fn order(&self) -> u32 {
        self.beta.order()
    }

    pub fn value(&self, g: usize, h: usize) -> CycloNumber {
        CycloNumber::root(self.order(), Self::exp(&self.beta, g, h) as i64)
    }

    pub fn is_real(&self, g: usize, h: usize) -> bool {
        (2 * Self::exp(&self.beta, g, h)).is_multiple_of(self.order())
    }

    /// +1 for β = i, -1 for β = -i, 0 otherwise.
    pub fn quarter_sign(&self, g: usize, h: usize) -> i32 {
        let k = Self::exp(&self.beta, g, h);
        if !Self::quarter(&self.beta, g, h) {
            0
        } else if 4 * k == self.order() {
            1
        } else {
            -1
        }
    }

    /// Largest number of variables of one degree in the (I)/(II) families.
    pub fn repeat_bound(&self) -> usize {
        if self.has_i {
            3
        } else {
            1
        }
    }

    fn builder(&self) -> Builder<'_> {
        Builder {
            group: self.group(),
            order: self.order(),
        }
    }

    /// x1g x2h − β(g,h) x2h x1g.
    pub fn t9(&self, g: usize, h: usize) -> GradedPolynomial {
        let b = self.builder();
        b.word(&[(1, g), (2, h)])
            .sub(&b.word(&[(2, h), (1, g)]).scale(&self.value(g, h)))
    }

    /// (p, q) with β(g,h) a root of z² + pz + q.
    pub fn pq(&self, g: usize, h: usize) -> (CycloNumber, CycloNumber) {
        let v = self.value(g, h);
        (v.add(&v.conj()).neg(), v.mul(&v.conj()))
    }

    /// x1g x2g x3h + p x1g x3h x2g + q x3h x1g x2g.
    pub fn t10(&self, g: usize, h: usize) -> GradedPolynomial {
        let b = self.builder();
        let (p, q) = self.pq(g, h);
        b.word(&[(1, g), (2, g), (3, h)])
            .add(&b.word(&[(1, g), (3, h), (2, g)]).scale(&p))
            .add(&b.word(&[(3, h), (1, g), (2, g)]).scale(&q))
    }

    /// x1g x2h x3g − x3g x2h x1g.
    pub fn t11(&self, g: usize, h: usize) -> GradedPolynomial {
        let b = self.builder();
        b.word(&[(1, g), (2, h), (3, g)])
            .sub(&b.word(&[(3, g), (2, h), (1, g)]))
    }

    /// x1g x2h1 x3g x4h2 x5g x6h3 x7g + x1g x3g x5g x7g x2h1 x4h2 x6h3.
    pub fn t12(&self, g: usize, h: [usize; 3]) -> GradedPolynomial {
        let b = self.builder();
        b.word(&[
            (1, g),
            (2, h[0]),
            (3, g),
            (4, h[1]),
            (5, g),
            (6, h[2]),
            (7, g),
        ])
        .add(&b.word(&[
            (1, g),
            (3, g),
            (5, g),
            (7, g),
            (2, h[0]),
            (4, h[1]),
            (6, h[2]),
        ]))
    }

    /// (I)/(II)-type polynomials spanning P_g ∩ Id for the degree tuple
    /// `degrees` (variables x1..xn in that order).
    pub fn reordering_family(
        &self,
        degrees: &[usize],
    ) -> Result<Vec<(&'static str, GradedPolynomial)>> {
        let n = degrees.len();
        let grp = self.group();
        let elems: Vec<_> = degrees.iter().map(|&d| grp.element(d)).collect();
        let b = self.builder();
        let mono = |perm: &[usize]| {
            b.word(
                &perm
                    .iter()
                    .map(|&i| (i as u32 + 1, degrees[i]))
                    .collect::<Vec<_>>(),
            )
        };
        let ident: Vec<usize> = (0..n).collect();
        let base = mono(&ident);
        let big_n = self.order();
        let mut out = Vec::new();
        let mut pivot: Option<(Vec<usize>, u32)> = None;
        for perm in permutations(n).into_iter().skip(1) {
            let k = reorder_exponent(&perm, &elems, &self.beta)?;
            let gamma = CycloNumber::root(big_n, k as i64);
            if (2 * k) % big_n == 0 {
                out.push(("reorder-real", base.sub(&mono(&perm).scale(&gamma))));
                continue;
            }
            match &pivot {
                None => pivot = Some((perm, k)),
                Some((sp, sk)) if (2 * (big_n + k - sk)).is_multiple_of(big_n) => {
                    // m_σ − (γ_τ/γ_σ) m_τ
                    let r = CycloNumber::root(big_n, k as i64 - *sk as i64);
                    out.push(("reorder-real", mono(sp).sub(&mono(&perm).scale(&r))));
                }
                Some((sp, sk)) => {
                    let u = CycloNumber::root(big_n, -(*sk as i64));
                    let v = CycloNumber::root(big_n, -(k as i64));
                    let det = u.mul(&v.conj()).sub(&v.mul(&u.conj()));
                    let p = v.sub(&v.conj()).div(&det)?;
                    let q = u.conj().sub(&u).div(&det)?;
                    out.push((
                        "reorder-complex",
                        base.add(&mono(sp).scale(&p)).add(&mono(&perm).scale(&q)),
                    ));
                }
            }
        }
        Ok(out)
    }
}

struct Builder<'a> {
    group: &'a FiniteAbelianGroup,
    order: u32,
}

impl Builder<'_> {
    fn word(&self, letters: &[(u32, usize)]) -> GradedPolynomial {
        let m: Monomial = letters.iter().map(|&(i, d)| Var::new(i, d)).collect();
        GradedPolynomial::monomial(
            self.group.clone(),
            self.order,
            m,
            CycloNumber::one(self.order),
        )
    }
}

/// Generating set for a non-regular Pauli grading up to `max_degree`.
/// Central mode adds x_{1e} as the proper central part.
pub fn family_pauli(a: &GradedAlgebra, max_degree: usize, mode: Mode) -> Result<GeneratorSet> {
    let d = PauliData::of(a)?;
    let all: Vec<usize> = (0..d.group().order()).collect();
    assemble(&d, max_degree >= 7, multisets(&all, max_degree), mode)
}

/// Degree tuples of the products of blocks of set partitions of sub-multisets of `target`.
fn coarsenings(group: &FiniteAbelianGroup, target: &[usize]) -> BTreeSet<Vec<usize>> {
    fn go(
        group: &FiniteAbelianGroup,
        rest: &[usize],
        blocks: &mut Vec<usize>,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let Some((&x, tail)) = rest.split_first() else {
            let mut m = blocks.clone();
            m.sort_unstable();
            out.insert(m);
            return;
        };
        go(group, tail, blocks, out);
        for i in 0..blocks.len() {
            let old = blocks[i];
            blocks[i] = group.op_idx(old, x);
            go(group, tail, blocks, out);
            blocks[i] = old;
        }
        blocks.push(x);
        go(group, tail, blocks, out);
        blocks.pop();
    }
    let mut out = BTreeSet::new();
    go(group, target, &mut Vec::new(), &mut out);
    out
}

/// The family restricted to what can reach the given sorted multidegrees:
/// (9)–(12) in full and (I)/(II) only at coarsenings of the targets.
pub fn family_pauli_for(
    a: &GradedAlgebra,
    targets: &[Vec<usize>],
    mode: Mode,
) -> Result<GeneratorSet> {
    let d = PauliData::of(a)?;
    let mut degs = BTreeSet::new();
    for t in targets {
        degs.extend(coarsenings(d.group(), t));
    }
    let long = targets.iter().any(|t| t.len() >= 7);
    assemble(&d, long, degs.into_iter().collect(), mode)
}

fn assemble(
    d: &PauliData,
    with_12: bool,
    degree_tuples: Vec<Vec<usize>>,
    mode: Mode,
) -> Result<GeneratorSet> {
    let grp = d.group().clone();
    let n = grp.order();
    let mut s = GeneratorSet::new("pauli", mode, grp.clone());
    for g in 0..n {
        for h in 0..n {
            if d.is_real(g, h) {
                s.push_identity("9", d.t9(g, h));
            } else {
                s.push_identity("10", d.t10(g, h));
            }
        }
    }
    if d.has_i {
        for g in 0..n {
            for h in 0..n {
                s.push_identity("11", d.t11(g, h));
            }
        }
        if with_12 {
            for g in 0..n {
                for sign in [1, -1] {
                    let hs: Vec<usize> = (0..n).filter(|&h| d.quarter_sign(g, h) == sign).collect();
                    for &h1 in &hs {
                        for &h2 in &hs {
                            for &h3 in &hs {
                                s.push_identity("12", d.t12(g, [h1, h2, h3]));
                            }
                        }
                    }
                }
            }
        }
    }
    let bound = d.repeat_bound();
    for degs in degree_tuples {
        if degs.len() < 2
            || degs
                .iter()
                .any(|x| degs.iter().filter(|y| *y == x).count() > bound)
        {
            continue;
        }
        for (fam, p) in d.reordering_family(&degs)? {
            s.push_identity(if fam == "reorder-real" { "I" } else { "II" }, p);
        }
    }
    s.assume(format!(
        "(I)/(II) instances span P_g ∩ Id for sorted degree tuples with at most {bound} repeats"
    ));
    if mode == Mode::Centrals {
        s.push_central(
            "neutral-variable",
            d.builder().word(&[(1, grp.index(&grp.identity()))]),
        );
        s.assume("proper central part is x_{1e}; every polynomial of degree e that is not an identity is central");
    }
    Ok(s)
}

/// A sorted degree tuple of shape (g,h1,g,h2,g,h3,g) with β(g,hi) all
/// equal to the same ±i, preferring distinct hi.
pub fn seven_shape(d: &PauliData) -> Option<Vec<usize>> {
    let n = d.group().order();
    let mut best: Option<Vec<usize>> = None;
    for g in 1..n {
        for sign in [1, -1] {
            let hs: Vec<usize> = (0..n)
                .filter(|&h| h != g && d.quarter_sign(g, h) == sign)
                .collect();
            if hs.is_empty() {
                continue;
            }
            let mut t = vec![g; 4];
            t.extend((0..3).map(|k| hs[k.min(hs.len() - 1)]));
            t.sort_unstable();
            let distinct = hs.len() >= 3;
            if distinct {
                return Some(t);
            }
            best.get_or_insert(t);
        }
    }
    best
}

/// Membership of the family with (12) and completeness at [`seven_shape`].
pub fn verify_seven(a: &GradedAlgebra, opts: &VerifyOptions) -> Result<VerificationReport> {
    let d = PauliData::of(a)?;
    if !d.has_i {
        return Err(Error::precondition(format!(
            "{} has no commutation value ±i; the degree-7 check does not apply",
            a.name()
        )));
    }
    let shape = seven_shape(&d).ok_or_else(|| Error::precondition("no degree-7 shape"))?;
    let s = family_pauli_for(a, std::slice::from_ref(&shape), Mode::Identities)?;
    let opts = VerifyOptions {
        max_degree: 7,
        multidegrees: Some(vec![shape]),
        ..opts.clone()
    };
    verify_basis(a, &s, &opts)
}

/// One application of a template: coeff · left · template(substitution) · right.
#[derive(Clone, Debug)]
pub struct Step {
    pub family: &'static str,
    pub template: GradedPolynomial,
    pub substitution: BTreeMap<u32, Monomial>,
    pub left: Monomial,
    pub right: Monomial,
    pub coeff: CycloNumber,
}

#[derive(Clone, Debug)]
pub struct Round {
    pub degree: usize,
    pub merged: (u32, u32),
    pub before: GradedPolynomial,
    pub after: GradedPolynomial,
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub polynomial: GradedPolynomial,
    pub rounds: Vec<Round>,
}

#[derive(Serialize)]
struct StepView {
    family: &'static str,
    template: String,
    substitution: BTreeMap<String, String>,
    left: String,
    right: String,
    coeff: String,
}

#[derive(Serialize)]
struct RoundView {
    degree: String,
    merged: (u32, u32),
    before: String,
    after: String,
    steps: Vec<StepView>,
}

#[derive(Serialize)]
struct ReductionView {
    input: String,
    polynomial: String,
    rounds: Vec<RoundView>,
}

fn word_text(p: &GradedPolynomial, w: &[Var]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        p.format_monomial(w)
    }
}

impl Reduction {
    pub fn input(&self) -> &GradedPolynomial {
        self.rounds
            .first()
            .map(|r| &r.before)
            .unwrap_or(&self.polynomial)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let grp = self.polynomial.group();
        let view = ReductionView {
            input: self.input().to_string(),
            polynomial: self.polynomial.to_string(),
            rounds: self
                .rounds
                .iter()
                .map(|r| RoundView {
                    degree: grp.format(&grp.element(r.degree)),
                    merged: r.merged,
                    before: r.before.to_string(),
                    after: r.after.to_string(),
                    steps: r
                        .steps
                        .iter()
                        .map(|s| StepView {
                            family: s.family,
                            template: s.template.to_string(),
                            substitution: s
                                .substitution
                                .iter()
                                .map(|(k, w)| (format!("x{k}"), word_text(&r.before, w)))
                                .collect(),
                            left: word_text(&r.before, &s.left),
                            right: word_text(&r.before, &s.right),
                            coeff: s.coeff.to_string(),
                        })
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_value(view).expect("serializable")
    }
}

struct Reducer<'a> {
    d: &'a PauliData,
    g: usize,
    u: u32,
    v: u32,
    steps: Vec<Step>,
    out: Vec<(Monomial, CycloNumber)>,
}

fn concat(parts: &[&[Var]]) -> Monomial {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

impl Reducer<'_> {
    fn degree(&self, w: &[Var]) -> usize {
        let grp = self.d.group();
        w.iter().fold(grp.index(&grp.identity()), |acc, v| {
            grp.op_idx(acc, v.degree as usize)
        })
    }

    fn step(
        &mut self,
        family: &'static str,
        template: GradedPolynomial,
        subst: Vec<Monomial>,
        left: &[Var],
        right: &[Var],
        coeff: CycloNumber,
    ) {
        let substitution = subst
            .into_iter()
            .enumerate()
            .map(|(i, w)| (i as u32 + 1, w))
            .collect();
        self.steps.push(Step {
            family,
            template,
            substitution,
            left: left.to_vec(),
            right: right.to_vec(),
            coeff,
        });
    }

    /// Swaps the letters at positions p1 < p2 (both of degree g) with (11).
    fn swap(&mut self, m: &mut Monomial, p1: usize, p2: usize, lam: &CycloNumber) {
        let w = m[p1 + 1..p2].to_vec();
        let t = self.d.t11(self.g, self.degree(&w));
        self.step(
            "11",
            t,
            vec![vec![m[p1]], w, vec![m[p2]]],
            &m[..p1],
            &m[p2 + 1..],
            lam.clone(),
        );
        m.swap(p1, p2);
    }

    /// Puts each listed variable into the listed slot using (11) swaps.
    fn arrange(
        &mut self,
        m: &mut Monomial,
        slots: &[usize],
        wanted: &[(usize, u32)],
        lam: &CycloNumber,
    ) {
        for &(k, x) in wanted {
            let j = slots
                .iter()
                .position(|&p| m[p].index == x)
                .expect("variable in a slot");
            if j != k {
                let (a, b) = (slots[j.min(k)], slots[j.max(k)]);
                self.swap(m, a, b, lam);
            }
        }
    }

    /// Moves the letters at p1 < p2 (degree g) next to each other with (9) or (10).
    fn merge(&mut self, m: &[Var], p1: usize, p2: usize, lam: &CycloNumber) -> Result<()> {
        let (pre, x, w, y, post) = (&m[..p1], m[p1], &m[p1 + 1..p2], m[p2], &m[p2 + 1..]);
        if w.is_empty() {
            self.out.push((m.to_vec(), lam.clone()));
            return Ok(());
        }
        let h = self.degree(w);
        if self.d.is_real(self.g, h) {
            let b = self.d.value(self.g, h);
            self.out
                .push((concat(&[pre, w, &[x, y], post]), lam.mul(&b)));
            self.step(
                "9",
                self.d.t9(self.g, h),
                vec![vec![x], w.to_vec()],
                pre,
                &concat(&[&[y], post]),
                lam.clone(),
            );
        } else {
            let (p, q) = self.d.pq(self.g, h);
            let ip = p
                .inv()
                .map_err(|_| Error::domain("β(g,h) = ±i where a (10) merge was needed"))?;
            self.out
                .push((concat(&[pre, &[x, y], w, post]), lam.mul(&ip).neg()));
            self.out
                .push((concat(&[pre, w, &[x, y], post]), lam.mul(&q).mul(&ip).neg()));
            self.step(
                "10",
                self.d.t10(self.g, h),
                vec![vec![x], vec![y], w.to_vec()],
                pre,
                post,
                lam.mul(&ip),
            );
        }
        Ok(())
    }

    /// (12): gathers the four g-letters at `slots`; the last two must be x_u, x_v.
    fn gather(&mut self, m: &[Var], s: &[usize], lam: &CycloNumber) {
        let w: Vec<&[Var]> = (0..3).map(|j| &m[s[j] + 1..s[j + 1]]).collect();
        let h = [self.degree(w[0]), self.degree(w[1]), self.degree(w[2])];
        let (pre, post) = (&m[..s[0]], &m[s[3] + 1..]);
        let subst = vec![
            vec![m[s[0]]],
            w[0].to_vec(),
            vec![m[s[1]]],
            w[1].to_vec(),
            vec![m[s[2]]],
            w[2].to_vec(),
            vec![m[s[3]]],
        ];
        self.step("12", self.d.t12(self.g, h), subst, pre, post, lam.clone());
        let letters = [m[s[0]], m[s[1]], m[s[2]], m[s[3]]];
        self.out
            .push((concat(&[pre, &letters, w[0], w[1], w[2], post]), lam.neg()));
    }

    fn rewrite(&mut self, m: &[Var], lam: &CycloNumber, chosen: &[u32]) -> Result<()> {
        let slots: Vec<usize> = (0..m.len())
            .filter(|&p| chosen.contains(&m[p].index))
            .collect();
        if slots.len() == 2 {
            return self.merge(m, slots[0], slots[1], lam);
        }
        let mut m = m.to_vec();
        let signs: Vec<i32> = (0..3)
            .map(|j| {
                self.d
                    .quarter_sign(self.g, self.degree(&m[slots[j] + 1..slots[j + 1]]))
            })
            .collect();
        if let Some(j) = signs.iter().position(|&s| s == 0) {
            self.arrange(&mut m, &slots, &[(j, self.u), (j + 1, self.v)], lam);
            self.merge(&m, slots[j], slots[j + 1], lam)
        } else if signs.iter().all(|&s| s == signs[0]) {
            self.arrange(&mut m, &slots, &[(2, self.u), (3, self.v)], lam);
            self.gather(&m, &slots, lam);
            Ok(())
        } else {
            // β(g, h_j g h_{j+1}) = i·(−i) = 1
            let j = (0..2)
                .find(|&j| signs[j] != signs[j + 1])
                .expect("mixed signs");
            self.arrange(&mut m, &slots, &[(j, self.u), (j + 2, self.v)], lam);
            self.merge(&m, slots[j], slots[j + 2], lam)
        }
    }

    /// Orders x_u before x_v with (9) at (g,g) and replaces x_u x_v by y.
    fn collapse(&mut self, group: &FiniteAbelianGroup, order: u32) -> GradedPolynomial {
        let g2 = group.op_idx(self.g, self.g) as u32;
        let mut p = GradedPolynomial::zero(group.clone(), order);
        for (m, c) in std::mem::take(&mut self.out) {
            let pos = m
                .iter()
                .position(|x| x.index == self.u || x.index == self.v)
                .expect("merged pair");
            let (a, b) = (m[pos], m[pos + 1]);
            let c = if a.index == self.v {
                let t = self.d.t9(self.g, self.g);
                self.step(
                    "9",
                    t,
                    vec![vec![a], vec![b]],
                    &m[..pos],
                    &m[pos + 2..],
                    c.clone(),
                );
                c.mul(&self.d.value(self.g, self.g))
            } else {
                c
            };
            let mut nm = m[..pos].to_vec();
            nm.push(Var {
                index: self.u,
                degree: g2,
            });
            nm.extend_from_slice(&m[pos + 2..]);
            p.add_term(nm, c);
        }
        p
    }
}

/// Merges equal-degree variables until each degree occurs at most
/// `repeat_bound` times, recording every rewrite.
pub fn pauli_reduce_with(d: &PauliData, f: &GradedPolynomial) -> Result<Reduction> {
    if !f.is_multilinear() {
        return Err(Error::domain("pauli_reduce needs a multilinear polynomial"));
    }
    if f.group().orders() != d.group().orders() {
        return Err(Error::domain(
            "polynomial and algebra are graded by different groups",
        ));
    }
    let bound = d.repeat_bound();
    let mut cur = f.clone();
    let mut rounds = Vec::new();
    loop {
        let mut by_degree: BTreeMap<usize, Vec<u32>> = BTreeMap::new();
        for (i, deg) in cur.variables() {
            by_degree.entry(deg as usize).or_default().push(i);
        }
        let Some((&g, vars)) = by_degree.iter().find(|(_, v)| v.len() > bound) else {
            break;
        };
        let chosen: Vec<u32> = vars[vars.len() - if bound == 1 { 2 } else { 4 }..].to_vec();
        let (u, v) = (chosen[chosen.len() - 2], chosen[chosen.len() - 1]);
        let mut r = Reducer {
            d,
            g,
            u,
            v,
            steps: Vec::new(),
            out: Vec::new(),
        };
        for (m, c) in cur.terms() {
            r.rewrite(m, c, &chosen)?;
        }
        let after = r.collapse(d.group(), cur.order());
        rounds.push(Round {
            degree: g,
            merged: (u, v),
            before: cur.clone(),
            after: after.clone(),
            steps: r.steps,
        });
        cur = after;
    }
    Ok(Reduction {
        polynomial: cur,
        rounds,
    })
}

pub fn pauli_reduce(a: &GradedAlgebra, f: &GradedPolynomial) -> Result<Reduction> {
    pauli_reduce_with(&PauliData::of(a)?, f)
}

fn word_poly(group: &FiniteAbelianGroup, order: u32, w: &[Var]) -> GradedPolynomial {
    GradedPolynomial::monomial(group.clone(), order, w.to_vec(), CycloNumber::one(order))
}

impl Step {
    /// coeff · left · template(substitution) · right, after checking degrees.
    pub fn value(&self, group: &FiniteAbelianGroup, order: u32) -> Result<GradedPolynomial> {
        let mut images = BTreeMap::new();
        for (i, d) in self.template.variables() {
            let w = self
                .substitution
                .get(&i)
                .ok_or_else(|| Error::domain(format!("x{i} is not substituted")))?;
            let wd = w.iter().fold(group.index(&group.identity()), |acc, v| {
                group.op_idx(acc, v.degree as usize)
            });
            if wd != d as usize {
                return Err(Error::domain(format!(
                    "substitution for x{i} has the wrong degree"
                )));
            }
            images.insert(i, word_poly(group, order, w));
        }
        let inst = self.template.substitute(&images)?;
        Ok(word_poly(group, order, &self.left)
            .mul(&inst)
            .mul(&word_poly(group, order, &self.right))
            .scale(&self.coeff))
    }
}

/// Checks before = after(y ↦ x_u x_v) + Σ steps in every round, and, given
/// an engine, that every template is an identity.
pub fn replay(r: &Reduction, engine: Option<&Engine>) -> Result<()> {
    let mut checked: Vec<&GradedPolynomial> = Vec::new();
    for (k, round) in r.rounds.iter().enumerate() {
        let grp = round.before.group();
        let order = round.before.order();
        let (u, v) = round.merged;
        let before_vars = round.before.variables();
        let mut images = BTreeMap::new();
        for (i, d) in round.after.variables() {
            let w = if i == u {
                vec![Var::new(u, round.degree), Var::new(v, round.degree)]
            } else {
                vec![Var {
                    index: i,
                    degree: d,
                }]
            };
            images.insert(i, word_poly(grp, order, &w));
        }
        if before_vars.get(&u) != Some(&(round.degree as u32))
            || before_vars.get(&v) != Some(&(round.degree as u32))
        {
            return Err(Error::Verification(format!(
                "round {k}: merged variables do not have the recorded degree"
            )));
        }
        let mut rhs = round.after.substitute(&images)?;
        for s in &round.steps {
            rhs = rhs.add(&s.value(grp, order)?);
            if let Some(e) = engine {
                if !checked.contains(&&s.template) {
                    if !e.is_identity(&s.template)?.holds {
                        return Err(Error::Verification(format!(
                            "round {k}: template {} is not an identity",
                            s.template
                        )));
                    }
                    checked.push(&s.template);
                }
            }
        }
        if rhs != round.before {
            return Err(Error::Verification(format!(
                "round {k}: rewrite chain does not reproduce the input"
            )));
        }
        if k + 1 < r.rounds.len() && r.rounds[k + 1].before != round.after {
            return Err(Error::Verification(format!(
                "round {k}: rounds are not chained"
            )));
        }
    }
    if r.rounds.last().is_some_and(|l| l.after != r.polynomial) {
        return Err(Error::Verification(
            "final round does not match the result".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::catalog;
    use crate::pitool::spaces::Limits;

    #[test]
    fn ten_with_cube_root() {
        let a = catalog::pauli(&[3]).unwrap();
        let d = PauliData::of(&a).unwrap();
        assert!(!d.has_i);
        let g = a.group();
        let (x, y) = (g.index(&g.generator(0)), g.index(&g.generator(1)));
        let (p, q) = d.pq(x, y);
        assert!(p.is_one() && q.is_one());
    }

    #[test]
    fn merge_two_equal_degrees() {
        let a = catalog::pauli(&[3]).unwrap();
        let d = PauliData::of(&a).unwrap();
        let g = a.group();
        let x = g.index(&g.generator(0));
        let b = Builder {
            group: g,
            order: d.order(),
        };
        let f = b.word(&[(1, x), (2, x)]);
        let r = pauli_reduce_with(&d, &f).unwrap();
        assert_eq!(r.polynomial.variables().len(), 1);
        assert_eq!(r.polynomial.variables()[&1] as usize, g.op_idx(x, x));
        replay(&r, Some(&Engine::new(&a, Limits::default()))).unwrap();
    }

    #[test]
    fn regular_algebra_is_refused() {
        assert!(family_pauli(&catalog::m2_4(), 3, Mode::Identities).is_err());
    }
}
