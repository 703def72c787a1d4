//! Real graded algebras spanned by homogeneous complex matrices.
//!
//! A homogeneous element is a pair (degree, matrix); elements of different
//! degrees are independent, so the ambient space is ℝG ⊗ M_n(ℂ). Structure
//! constants are found by solving in the real span of each component.

use std::collections::VecDeque;

use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement};
use crate::scalars::linalg::{dense_to_sparse, solve, Echelon};
use crate::scalars::CycloNumber;

/// Square matrix over Q(ζ_N), read as a complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMat {
    n: usize,
    entries: Vec<CycloNumber>,
}

impl CMat {
    pub fn identity(n: usize, order: u32) -> Self {
        let mut entries = vec![CycloNumber::zero(order); n * n];
        for i in 0..n {
            entries[i * n + i] = CycloNumber::one(order);
        }
        CMat { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<CycloNumber>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        CMat {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_ints(order: u32, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| CycloNumber::from_int(order, x)).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNumber {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: Option<CycloNumber> = None;
                for k in 0..n {
                    let (a, b) = (self.get(i, k), o.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    acc = Some(match acc {
                        Some(x) => x.add(&t),
                        None => t,
                    });
                }
                entries.push(acc.unwrap_or_else(|| CycloNumber::zero(self.entries[0].order())));
            }
        }
        CMat { n, entries }
    }

    pub fn scale(&self, c: &CycloNumber) -> Self {
        CMat {
            n: self.n,
            entries: self.entries.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Self) -> Self {
        let (n, m) = (self.n, o.n);
        let mut rows = vec![Vec::with_capacity(n * m); n * m];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n * m {
                row.push(self.get(i / m, j / m).mul(o.get(i % m, j % m)));
            }
        }
        CMat::from_rows(rows)
    }

    pub fn lift(&self, order: u32) -> Self {
        CMat {
            n: self.n,
            entries: self.entries.iter().map(|x| x.lift(order)).collect(),
        }
    }

    /// ℝ-linear injection into real-subfield coordinates.
    fn realify(&self, order: u32) -> Vec<CycloNumber> {
        if order <= 2 {
            return self.entries.clone();
        }
        let dinv = CycloNumber::root(order, 1)
            .sub(&CycloNumber::root(order, -1))
            .inv()
            .expect("order > 2");
        let mut out = Vec::with_capacity(2 * self.entries.len());
        for x in &self.entries {
            let c = x.conj();
            out.push(x.add(&c));
            out.push(x.sub(&c).mul(&dinv));
        }
        out
    }
}

/// A named homogeneous matrix.
#[derive(Clone, Debug)]
pub struct HomMat {
    pub label: String,
    pub degree: GroupElement,
    pub mat: CMat,
}

impl HomMat {
    pub fn new(label: impl Into<String>, degree: GroupElement, mat: CMat) -> Self {
        HomMat {
            label: label.into(),
            degree,
            mat,
        }
    }
}

/// Algebra with the given homogeneous real basis; the identity matrix (in
/// degree e) must lie in the span.
pub fn from_matrix_basis(
    name: &str,
    group: FiniteAbelianGroup,
    order: u32,
    basis: Vec<HomMat>,
) -> Result<GradedAlgebra> {
    let basis: Vec<HomMat> = basis
        .into_iter()
        .map(|b| HomMat {
            mat: b.mat.lift(order),
            ..b
        })
        .collect();
    let n = basis
        .first()
        .map(|b| b.mat.size())
        .ok_or_else(|| Error::domain("empty basis"))?;
    let mut comps: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
    let mut reals: Vec<Vec<CycloNumber>> = Vec::with_capacity(basis.len());
    for (i, b) in basis.iter().enumerate() {
        group.check(&b.degree)?;
        comps[group.index(&b.degree)].push(i);
        reals.push(b.mat.realify(order));
    }
    for c in &comps {
        let mut e = Echelon::new();
        for &i in c {
            if !e.insert(&dense_to_sparse(&reals[i])) {
                return Err(Error::domain(format!(
                    "basis element {} is dependent",
                    basis[i].label
                )));
            }
        }
    }
    let coords = |deg: usize, m: &CMat| -> Result<Vec<(usize, CycloNumber)>> {
        let cols: Vec<Vec<CycloNumber>> = comps[deg].iter().map(|&k| reals[k].clone()).collect();
        let target = m.realify(order);
        if cols.is_empty() {
            if target.iter().all(CycloNumber::is_zero) {
                return Ok(vec![]);
            }
            return Err(Error::domain("product leaves the span"));
        }
        let x =
            solve(&cols, &target, order).ok_or_else(|| Error::domain("product leaves the span"))?;
        Ok(comps[deg]
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&k, c)| (k, c))
            .collect())
    };
    let dim = basis.len();
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let deg = group.index(&group.op(&basis[i].degree, &basis[j].degree));
            let p = basis[i].mat.mul(&basis[j].mat);
            mult[i][j] = coords(deg, &p).map_err(|e| {
                Error::domain(format!("{} * {}: {e}", basis[i].label, basis[j].label))
            })?;
        }
    }
    let e = group.index(&group.identity());
    let unit = coords(e, &CMat::identity(n, order))
        .map_err(|_| Error::domain("identity matrix is not in the span"))?;
    let labels = basis.iter().map(|b| b.label.clone()).collect();
    let degrees = basis.iter().map(|b| b.degree.clone()).collect();
    GradedAlgebra::new(name, group, order, labels, degrees, mult, unit)
}

fn word_label(word: &[usize], gens: &[HomMat]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < word.len() {
        let mut j = i;
        while j < word.len() && word[j] == word[i] {
            j += 1;
        }
        let l = &gens[word[i]].label;
        parts.push(if j - i == 1 {
            l.clone()
        } else {
            format!("{l}^{}", j - i)
        });
        i = j;
    }
    parts.join(".")
}

/// Real subalgebra generated by homogeneous matrices, enumerated breadth-first.
pub fn closure(
    name: &str,
    group: FiniteAbelianGroup,
    order: u32,
    gens: Vec<HomMat>,
    max_dim: usize,
) -> Result<GradedAlgebra> {
    let gens: Vec<HomMat> = gens
        .into_iter()
        .map(|g| HomMat {
            mat: g.mat.lift(order),
            ..g
        })
        .collect();
    let n = gens
        .first()
        .map(|g| g.mat.size())
        .ok_or_else(|| Error::domain("no generators"))?;
    let mut spans: Vec<Echelon> = vec![Echelon::new(); group.order()];
    let one = HomMat::new("1", group.identity(), CMat::identity(n, order));
    spans[group.index(&one.degree)].insert(&dense_to_sparse(&one.mat.realify(order)));
    let mut basis: Vec<(Vec<usize>, HomMat)> = vec![(vec![], one)];
    let mut queue: VecDeque<usize> = VecDeque::from([0]);
    while let Some(b) = queue.pop_front() {
        for (gi, g) in gens.iter().enumerate() {
            let deg = group.op(&basis[b].1.degree, &g.degree);
            let mat = basis[b].1.mat.mul(&g.mat);
            let d = group.index(&deg);
            if spans[d].insert(&dense_to_sparse(&mat.realify(order))) {
                let mut word = basis[b].0.clone();
                word.push(gi);
                let label = word_label(&word, &gens);
                basis.push((word, HomMat::new(label, deg, mat)));
                queue.push_back(basis.len() - 1);
                if basis.len() > max_dim {
                    return Err(Error::resource(format!(
                        "closure exceeds dimension {max_dim}"
                    )));
                }
            }
        }
    }
    // Order the basis by degree index, keeping discovery order inside a component.
    let mut ordered: Vec<HomMat> = basis.into_iter().map(|(_, h)| h).collect();
    ordered.sort_by_key(|h| group.index(&h.degree));
    from_matrix_basis(name, group, order, ordered)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_of_identities() {
        let i2 = CMat::identity(2, 4);
        assert_eq!(i2.kron(&i2), CMat::identity(4, 4));
    }

    #[test]
    fn complex_numbers_by_closure() {
        // ℂ graded by ℤ2 with i in the odd part.
        let g = FiniteAbelianGroup::cyclic(2);
        let i = CMat::from_rows(vec![vec![CycloNumber::root(4, 1)]]);
        let a = closure(
            "c",
            g.clone(),
            4,
            vec![HomMat::new("i", GroupElement(vec![1]), i)],
            16,
        )
        .unwrap();
        assert_eq!(a.dim(), 2);
        // i*i = -1
        let ii = a.product(1, 1);
        assert_eq!(ii, &vec![(0, CycloNumber::from_int(4, -1))]);
    }
}
