//! Finite-dimensional graded algebras given by structure constants.

pub mod analysis;
pub mod catalog;
pub mod closure;

use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement, Projection};
use crate::scalars::linalg::SparseVec;
use crate::scalars::{lcm, CycloNumber};

pub use analysis::{DivisionCertificate, Regularity};

/// Structure-constant algebra over ℝ with a grading by a finite abelian group.
///
/// Coefficients live in Q(ζ_N) but are required to be real, so the algebra is
/// a real algebra with a real basis.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    name: String,
    group: FiniteAbelianGroup,
    order: u32,
    labels: Vec<String>,
    degrees: Vec<usize>,
    mult: Vec<Vec<SparseVec>>,
    unit: SparseVec,
    components: Vec<Vec<usize>>,
    notes: Vec<String>,
}

impl PartialEq for GradedAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.group == o.group
            && self.labels == o.labels
            && self.degrees == o.degrees
            && self.mult == o.mult
            && self.unit == o.unit
    }
}

/// A homogeneous element: coordinates supported on one component.
#[derive(Clone, Debug, PartialEq)]
pub struct HomogeneousElement {
    pub degree: GroupElement,
    pub coords: Vec<CycloNumber>,
}

fn normalize(v: SparseVec, order: u32) -> SparseVec {
    v.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.lift(order)))
        .collect()
}

impl GradedAlgebra {
    /// Builds and validates an algebra. `mult[i][j]` is the product of basis
    /// elements i and j as a sparse coordinate vector.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        group: FiniteAbelianGroup,
        order: u32,
        labels: Vec<String>,
        degrees: Vec<GroupElement>,
        mult: Vec<Vec<SparseVec>>,
        unit: SparseVec,
    ) -> Result<Self> {
        let n = labels.len();
        if degrees.len() != n || mult.len() != n || mult.iter().any(|r| r.len() != n) {
            return Err(Error::domain(
                "basis, degrees and multiplication table sizes disagree",
            ));
        }
        if n == 0 {
            return Err(Error::domain("algebra must be nonzero"));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::domain(format!("duplicate basis label '{l}'")));
            }
        }
        for d in &degrees {
            group.check(d)?;
        }
        let degrees: Vec<usize> = degrees.iter().map(|d| group.index(d)).collect();
        let order = mult
            .iter()
            .flatten()
            .flatten()
            .fold(order, |acc, (_, c)| lcm(acc, c.order()));
        let mult: Vec<Vec<SparseVec>> = mult
            .into_iter()
            .map(|row| row.into_iter().map(|v| normalize(v, order)).collect())
            .collect();
        let unit = normalize(unit, order);
        let mut components = vec![Vec::new(); group.order()];
        for (i, d) in degrees.iter().enumerate() {
            components[*d].push(i);
        }
        let alg = GradedAlgebra {
            name: name.into(),
            group,
            order,
            labels,
            degrees,
            mult,
            unit,
            components,
            notes: vec![],
        };
        alg.validate_basic()?;
        Ok(alg)
    }

    fn validate_basic(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let target = self.group.op_idx(self.degrees[i], self.degrees[j]);
                for (k, c) in &self.mult[i][j] {
                    if *k >= n {
                        return Err(Error::domain(format!("product index {k} out of range")));
                    }
                    if self.degrees[*k] != target {
                        return Err(Error::domain(format!(
                            "product {}*{} has a coordinate outside degree {}",
                            self.labels[i],
                            self.labels[j],
                            self.group.format(&self.group.element(target))
                        )));
                    }
                    if !c.is_real() {
                        return Err(Error::domain(format!(
                            "structure constant {c} in {}*{} is not real",
                            self.labels[i], self.labels[j]
                        )));
                    }
                }
            }
        }
        let e = self.group.index(&self.group.identity());
        if self
            .unit
            .iter()
            .any(|(k, c)| self.degrees[*k] != e || !c.is_real())
        {
            return Err(Error::domain(
                "unit must be a real element of the neutral component",
            ));
        }
        for i in 0..n {
            let bi = self.basis_sparse(i);
            if self.mul_sparse(&self.unit, &bi) != bi || self.mul_sparse(&bi, &self.unit) != bi {
                return Err(Error::domain(format!(
                    "unit is not a two-sided identity on {}",
                    self.labels[i]
                )));
            }
        }
        Ok(())
    }

    /// Exhaustive associativity check; returns the first failing triple.
    pub fn check_associative(&self) -> std::result::Result<(), (usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                let ij = &self.mult[i][j];
                for k in 0..n {
                    let left = self.mul_sparse_basis(ij, k);
                    let right = self.basis_mul_sparse(i, &self.mult[j][k]);
                    if left != right {
                        return Err((i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn validate_associative(&self) -> Result<()> {
        self.check_associative().map_err(|(i, j, k)| {
            Error::domain(format!(
                "multiplication is not associative on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            ))
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn notes(&self) -> &[String] {
        &self.notes
    }

    pub fn add_note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree_index(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn degree(&self, i: usize) -> GroupElement {
        self.group.element(self.degrees[i])
    }

    pub fn unit(&self) -> &SparseVec {
        &self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i][j]
    }

    /// Basis indices of the component of the given degree index.
    pub fn component(&self, g: usize) -> &[usize] {
        &self.components[g]
    }

    pub fn component_of(&self, g: &GroupElement) -> &[usize] {
        &self.components[self.group.index(g)]
    }

    /// Degree indices with a nonzero component.
    pub fn support(&self) -> Vec<usize> {
        (0..self.group.order())
            .filter(|&g| !self.components[g].is_empty())
            .collect()
    }

    pub fn zero(&self) -> CycloNumber {
        CycloNumber::zero(self.order)
    }

    pub fn basis_sparse(&self, i: usize) -> SparseVec {
        vec![(i, CycloNumber::one(self.order))]
    }

    pub fn to_dense(&self, v: &SparseVec) -> Vec<CycloNumber> {
        crate::scalars::linalg::sparse_to_dense(v, self.dim(), self.order)
    }

    /// x · b_j for sparse x.
    pub fn mul_sparse_basis(&self, x: &SparseVec, j: usize) -> SparseVec {
        let mut acc: Vec<Option<CycloNumber>> = vec![None; self.dim()];
        for (i, c) in x {
            for (k, s) in &self.mult[*i][j] {
                let t = c.mul(s);
                acc[*k] = Some(match acc[*k].take() {
                    Some(a) => a.add(&t),
                    None => t,
                });
            }
        }
        collect(acc)
    }

    /// b_i · y for sparse y.
    pub fn basis_mul_sparse(&self, i: usize, y: &SparseVec) -> SparseVec {
        let mut acc: Vec<Option<CycloNumber>> = vec![None; self.dim()];
        for (j, c) in y {
            for (k, s) in &self.mult[i][*j] {
                let t = c.mul(s);
                acc[*k] = Some(match acc[*k].take() {
                    Some(a) => a.add(&t),
                    None => t,
                });
            }
        }
        collect(acc)
    }

    pub fn mul_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut acc: Vec<Option<CycloNumber>> = vec![None; self.dim()];
        for (i, a) in x {
            for (j, b) in y {
                let ab = a.mul(b);
                for (k, s) in &self.mult[*i][*j] {
                    let t = ab.mul(s);
                    acc[*k] = Some(match acc[*k].take() {
                        Some(v) => v.add(&t),
                        None => t,
                    });
                }
            }
        }
        collect(acc)
    }

    pub fn mul_dense(&self, x: &[CycloNumber], y: &[CycloNumber]) -> Vec<CycloNumber> {
        let xs = crate::scalars::linalg::dense_to_sparse(x);
        let ys = crate::scalars::linalg::dense_to_sparse(y);
        self.to_dense(&self.mul_sparse(&xs, &ys))
    }

    pub fn homogeneous(
        &self,
        degree: GroupElement,
        coords: Vec<CycloNumber>,
    ) -> Result<HomogeneousElement> {
        self.group.check(&degree)?;
        if coords.len() != self.dim() {
            return Err(Error::domain("coordinate vector has wrong length"));
        }
        let g = self.group.index(&degree);
        if coords
            .iter()
            .enumerate()
            .any(|(i, c)| !c.is_zero() && self.degrees[i] != g)
        {
            return Err(Error::domain(
                "coordinates are not supported on the declared degree",
            ));
        }
        Ok(HomogeneousElement { degree, coords })
    }

    /// Canonical tensor product with the product grading.
    pub fn tensor(&self, other: &Self) -> Self {
        let group = self.group.direct_product(&other.group);
        let order = lcm(self.order, other.order);
        let (n, m) = (self.dim(), other.dim());
        let idx = |i: usize, j: usize| i * m + j;
        let mut labels = Vec::with_capacity(n * m);
        let mut degrees = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                labels.push(format!("{}⊗{}", self.labels[i], other.labels[j]));
                degrees.push(group.pair(&self.degree(i), &other.degree(j)));
            }
        }
        let mut mult = vec![vec![Vec::new(); n * m]; n * m];
        for i1 in 0..n {
            for j1 in 0..m {
                for i2 in 0..n {
                    for j2 in 0..m {
                        let mut v: SparseVec = Vec::new();
                        for (k, a) in &self.mult[i1][i2] {
                            for (l, b) in &other.mult[j1][j2] {
                                v.push((idx(*k, *l), a.mul(b)));
                            }
                        }
                        v.sort_by_key(|(k, _)| *k);
                        mult[idx(i1, j1)][idx(i2, j2)] = v;
                    }
                }
            }
        }
        let mut unit = Vec::new();
        for (k, a) in &self.unit {
            for (l, b) in &other.unit {
                unit.push((idx(*k, *l), a.mul(b)));
            }
        }
        unit.sort_by_key(|(k, _)| *k);
        let name = format!("{}*{}", self.name, other.name);
        let mut t = GradedAlgebra::new(name, group, order, labels, degrees, mult, unit)
            .expect("tensor product of valid algebras is valid");
        t.notes = self.notes.iter().chain(&other.notes).cloned().collect();
        t
    }

    /// Same algebra with degrees pushed through `G -> G/<g>`.
    pub fn coarsen_by_quotient(&self, g: &GroupElement) -> Result<(Self, Projection)> {
        let (q, proj) = self.group.quotient_by(g)?;
        let degrees = (0..self.dim())
            .map(|i| proj.apply(&self.degree(i)))
            .collect();
        let name = format!("{}/<{}>", self.name, self.group.format(g));
        let mut a = GradedAlgebra::new(
            name,
            q,
            self.order,
            self.labels.clone(),
            degrees,
            self.mult.clone(),
            self.unit.clone(),
        )?;
        a.notes = self.notes.clone();
        Ok((a, proj))
    }

    /// Same structure constants with a renamed group (identical factor orders).
    pub fn with_group(&self, group: FiniteAbelianGroup) -> Result<Self> {
        if group.orders() != self.group.orders() {
            return Err(Error::domain("group factors differ"));
        }
        Ok(GradedAlgebra {
            group,
            ..self.clone()
        })
    }
}

fn collect(acc: Vec<Option<CycloNumber>>) -> SparseVec {
    acc.into_iter()
        .enumerate()
        .filter_map(|(k, c)| c.filter(|c| !c.is_zero()).map(|c| (k, c)))
        .collect()
}
