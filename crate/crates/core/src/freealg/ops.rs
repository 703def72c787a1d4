//! Evaluation, polarization, reordering scalars, the φ_h transfer map and
//! quotient relabelings.

use std::collections::BTreeMap;

use super::{permutations, GradedPolynomial, Monomial, Var};
use crate::algebras::{GradedAlgebra, HomogeneousElement};
use crate::bichar::Bicharacter;
use crate::error::{Error, Result};
use crate::groups::{GroupElement, Projection};
use crate::scalars::linalg::{dense_to_sparse, SparseVec};
use crate::scalars::{lcm, CycloNumber};

/// Variable index → homogeneous element of the target algebra.
pub type Substitution = BTreeMap<u32, HomogeneousElement>;

/// f(s) as a dense coordinate vector in A.
pub fn evaluate(
    f: &GradedPolynomial,
    s: &Substitution,
    a: &GradedAlgebra,
) -> Result<Vec<CycloNumber>> {
    if f.group().orders() != a.group().orders() {
        return Err(Error::domain(
            "polynomial and algebra are graded by different groups",
        ));
    }
    let mut sparse = BTreeMap::new();
    for (idx, deg) in f.variables() {
        let el = s
            .get(&idx)
            .ok_or_else(|| Error::domain(format!("x{idx} is not assigned")))?;
        if a.group().index(&el.degree) != deg as usize {
            return Err(Error::domain(format!(
                "inadmissible substitution: x{idx} has degree {} but is assigned an element of degree {}",
                a.group().format(&a.group().element(deg as usize)),
                a.group().format(&el.degree)
            )));
        }
        let g = deg as usize;
        if el
            .coords
            .iter()
            .enumerate()
            .any(|(i, c)| !c.is_zero() && a.degree_index(i) != g)
        {
            return Err(Error::domain(format!(
                "element assigned to x{idx} is not homogeneous"
            )));
        }
        sparse.insert(idx, dense_to_sparse(&el.coords));
    }
    let v = evaluate_sparse(f, &sparse, a);
    let n = lcm(f.order(), a.order());
    let mut out = a.to_dense(&v);
    for c in &mut out {
        *c = c.lift(lcm(n, c.order()));
    }
    Ok(out)
}

/// Evaluation without admissibility checks; every variable must be assigned.
pub fn evaluate_sparse(
    f: &GradedPolynomial,
    s: &BTreeMap<u32, SparseVec>,
    a: &GradedAlgebra,
) -> SparseVec {
    let mut acc: Vec<Option<CycloNumber>> = vec![None; a.dim()];
    for (m, c) in f.terms() {
        let mut v: SparseVec = a.unit().iter().map(|(i, u)| (*i, u.mul(c))).collect();
        for x in m {
            if v.is_empty() {
                break;
            }
            v = a.mul_sparse(&v, &s[&x.index]);
        }
        for (i, t) in v {
            acc[i] = Some(match acc[i].take() {
                Some(p) => p.add(&t),
                None => t,
            });
        }
    }
    acc.into_iter()
        .enumerate()
        .filter_map(|(i, c)| c.filter(|c| !c.is_zero()).map(|c| (i, c)))
        .collect()
}

/// Full polarization. Multilinear input is returned unchanged; otherwise
/// each multihomogeneous component is polarized and its variables are
/// renumbered 1, 2, … in order of the original indices.
pub fn multilinearize(f: &GradedPolynomial) -> Vec<GradedPolynomial> {
    if f.is_zero() {
        return vec![];
    }
    if f.is_multilinear() {
        return vec![f.clone()];
    }
    let mut comps: BTreeMap<BTreeMap<u32, usize>, Vec<(&Monomial, &CycloNumber)>> = BTreeMap::new();
    for (m, c) in f.terms() {
        let mut mult = BTreeMap::new();
        for v in m {
            *mult.entry(v.index).or_insert(0) += 1;
        }
        comps.entry(mult).or_default().push((m, c));
    }
    let mut out = Vec::new();
    for (mult, terms) in comps {
        // fresh[i] = new indices replacing variable i
        let mut fresh: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        let mut next = 1;
        for (&i, &d) in &mult {
            fresh.insert(i, (next..next + d as u32).collect());
            next += d as u32;
        }
        let mut p = GradedPolynomial::zero(f.group().clone(), f.order());
        for (m, c) in terms {
            let mut words: Vec<Monomial> = vec![m.clone()];
            for (&i, &d) in &mult {
                let pos: Vec<usize> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.index == i)
                    .map(|(k, _)| k)
                    .collect();
                let mut next_words = Vec::with_capacity(words.len() * pos.len());
                for cur in &words {
                    for perm in permutations(d) {
                        let mut nm = cur.clone();
                        for (t, &k) in pos.iter().enumerate() {
                            nm[k].index = fresh[&i][perm[t]];
                        }
                        next_words.push(nm);
                    }
                }
                words = next_words;
            }
            for nm in words {
                p.add_term(nm, c.clone());
            }
        }
        if !p.is_zero() {
            out.push(p);
        }
    }
    out
}

/// λ with r_1⋯r_n = λ · r_{τ(1)}⋯r_{τ(n)} whenever r_u r_v = β(h_u,h_v) r_v r_u
/// and r_i has degree h_i. `perm[p]` is the (0-based) letter at position p.
pub fn reorder_scalar(
    perm: &[usize],
    degrees: &[GroupElement],
    beta: &Bicharacter,
) -> Result<CycloNumber> {
    Ok(CycloNumber::root(
        beta.order(),
        reorder_exponent(perm, degrees, beta)? as i64,
    ))
}

/// Exponent k of ζ_N for [`reorder_scalar`].
pub fn reorder_exponent(
    perm: &[usize],
    degrees: &[GroupElement],
    beta: &Bicharacter,
) -> Result<u32> {
    let n = perm.len();
    if degrees.len() != n {
        return Err(Error::domain(
            "permutation and degree tuple have different lengths",
        ));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(Error::domain("not a permutation"));
        }
        seen[p] = true;
    }
    for d in degrees {
        beta.group().check(d)?;
    }
    let mut k = 0u64;
    for p in 0..n {
        for q in p + 1..n {
            let (v, u) = (perm[p], perm[q]);
            if u < v {
                k += beta.exponent(&degrees[u], &degrees[v]) as u64;
            }
        }
    }
    Ok((k % beta.order() as u64) as u32)
}

/// φ_h: P_g over G → P_{(g,h)} over G×H.
pub fn transfer_phi(
    f: &GradedPolynomial,
    h: &[GroupElement],
    beta: &Bicharacter,
) -> Result<GradedPolynomial> {
    let vars = f.variables();
    let n = vars.len();
    if !f.is_multilinear() || vars.keys().copied().ne(1..=n as u32) {
        return Err(Error::domain(
            "φ_h needs a multilinear polynomial in x1..xn",
        ));
    }
    if h.len() != n {
        return Err(Error::domain(format!(
            "degree tuple has length {} but the polynomial has {n} variables",
            h.len()
        )));
    }
    let hg = beta.group();
    let group = f.group().direct_product(hg);
    let gdeg: Vec<GroupElement> = vars
        .values()
        .map(|&d| f.group().element(d as usize))
        .collect();
    let newdeg: Vec<u32> = (0..n)
        .map(|i| {
            hg.check(&h[i])?;
            Ok(group.index(&group.pair(&gdeg[i], &h[i])) as u32)
        })
        .collect::<Result<_>>()?;
    let order = lcm(f.order(), beta.order());
    let mut p = GradedPolynomial::zero(group, order);
    for (m, c) in f.terms() {
        let perm: Vec<usize> = m.iter().map(|v| v.index as usize - 1).collect();
        let lam = reorder_scalar(&perm, h, beta)?;
        let nm = m
            .iter()
            .map(|v| Var {
                index: v.index,
                degree: newdeg[v.index as usize - 1],
            })
            .collect();
        p.add_term(nm, c.mul(&lam));
    }
    Ok(p)
}

/// Inverse of [`transfer_phi`] (divides by λ and drops the H-part).
pub fn transfer_phi_inverse(
    f: &GradedPolynomial,
    g: &crate::groups::FiniteAbelianGroup,
    beta: &Bicharacter,
) -> Result<GradedPolynomial> {
    let vars = f.variables();
    let n = vars.len();
    if !f.is_multilinear() || vars.keys().copied().ne(1..=n as u32) {
        return Err(Error::domain(
            "φ_h needs a multilinear polynomial in x1..xn",
        ));
    }
    let prod = g.direct_product(beta.group());
    if prod.orders() != f.group().orders() {
        return Err(Error::domain("polynomial is not graded by G×H"));
    }
    let r = g.rank();
    let split = |d: u32| {
        let e = prod.element(d as usize);
        (
            GroupElement(e.0[..r].to_vec()),
            GroupElement(e.0[r..].to_vec()),
        )
    };
    let h: Vec<GroupElement> = vars.values().map(|&d| split(d).1).collect();
    let mut p = GradedPolynomial::zero(g.clone(), f.order());
    for (m, c) in f.terms() {
        let perm: Vec<usize> = m.iter().map(|v| v.index as usize - 1).collect();
        let k = reorder_exponent(&perm, &h, beta)?;
        let lam_inv = CycloNumber::root(beta.order(), -(k as i64));
        let nm = m
            .iter()
            .map(|v| Var {
                index: v.index,
                degree: g.index(&split(v.degree).0) as u32,
            })
            .collect();
        p.add_term(nm, c.mul(&lam_inv));
    }
    Ok(p)
}

/// Q: relabels every degree through the projection.
pub fn project(f: &GradedPolynomial, q: &Projection) -> Result<GradedPolynomial> {
    if f.group().orders() != q.source().orders() {
        return Err(Error::domain(
            "polynomial is not graded by the source of the projection",
        ));
    }
    let (src, tgt) = (q.source(), q.target());
    Ok(f.map_degrees(tgt.clone(), |d| {
        tgt.index(&q.apply(&src.element(d as usize))) as u32
    }))
}

/// R: relabels each variable to its chosen preimage degree.
pub fn lift(
    f: &GradedPolynomial,
    q: &Projection,
    section: &BTreeMap<u32, GroupElement>,
) -> Result<GradedPolynomial> {
    let tgt = q.target();
    if f.group().orders() != tgt.orders() {
        return Err(Error::domain(
            "polynomial is not graded by the quotient group",
        ));
    }
    for (idx, d) in f.variables() {
        let pre = section
            .get(&idx)
            .ok_or_else(|| Error::domain(format!("no preimage chosen for x{idx}")))?;
        q.source().check(pre)?;
        if tgt.index(&q.apply(pre)) != d as usize {
            return Err(Error::domain(format!(
                "chosen degree for x{idx} is not in the fiber of its degree"
            )));
        }
    }
    f.with_degrees(q.source(), section)
}
