//! Structural analysis: center, regularity, complex commutation factors and
//! the graded-division validator.

use serde::Serialize;

use super::{GradedAlgebra, HomogeneousElement};
use crate::bichar::Bicharacter;
use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::scalars::linalg::{kernel, rank, solve, SparseVec};
use crate::scalars::{lcm, CycloNumber, Q};

/// Outcome of [`GradedAlgebra::detect_regular`].
#[derive(Clone, Debug)]
pub enum Regularity {
    Regular(Bicharacter),
    NotRegular(RegularityWitness),
}

#[derive(Clone, Debug, Serialize)]
pub struct RegularityWitness {
    pub degrees: (String, String),
    pub elements: Vec<String>,
    pub reason: String,
}

/// Invertible homogeneous elements spanning each component over A_e.
#[derive(Clone, Debug, Serialize)]
pub struct DivisionCertificate {
    pub neutral_type: String,
    /// (degree, basis label of u_g)
    pub units: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DivisionCheck {
    pub is_division: bool,
    pub certificate: Option<DivisionCertificate>,
    pub failure: Option<String>,
}

fn sub_sparse(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut out: std::collections::BTreeMap<usize, CycloNumber> = a.iter().cloned().collect();
    for (k, c) in b {
        let e = out
            .entry(*k)
            .or_insert_with(|| CycloNumber::zero(c.order()));
        *e = e.sub(c);
        if e.is_zero() {
            out.remove(k);
        }
    }
    out.into_iter().collect()
}

fn scale_sparse(a: &SparseVec, c: &CycloNumber) -> SparseVec {
    a.iter()
        .map(|(k, x)| (*k, x.mul(c)))
        .filter(|(_, x)| !x.is_zero())
        .collect()
}

impl GradedAlgebra {
    /// Basis of the center, one homogeneous element per vector, grouped by degree.
    pub fn center(&self) -> Vec<HomogeneousElement> {
        let mut out = Vec::new();
        for g in self.support() {
            let comp = self.component(g).to_vec();
            // Unknowns x_k for k in comp; rows: coordinates of [b_k, b_j] for all j.
            let mut rows: Vec<Vec<CycloNumber>> = Vec::new();
            for j in 0..self.dim() {
                let cols: Vec<SparseVec> = comp
                    .iter()
                    .map(|&k| sub_sparse(self.product(k, j), self.product(j, k)))
                    .collect();
                for t in 0..self.dim() {
                    let row: Vec<CycloNumber> = cols
                        .iter()
                        .map(|c| {
                            c.iter()
                                .find(|(i, _)| *i == t)
                                .map(|(_, x)| x.clone())
                                .unwrap_or_else(|| self.zero())
                        })
                        .collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
            for v in kernel(&rows, comp.len(), self.order()) {
                let mut coords = vec![self.zero(); self.dim()];
                for (i, &k) in comp.iter().enumerate() {
                    coords[k] = v[i].clone();
                }
                out.push(HomogeneousElement {
                    degree: self.group().element(g),
                    coords,
                });
            }
        }
        out
    }

    /// Dimension of the center inside the component of degree index g.
    pub fn center_dim_at(&self, g: usize) -> usize {
        let gg = self.group().element(g);
        self.center().iter().filter(|h| h.degree == gg).count()
    }

    /// Real commutation scalar λ with b_i b_j = λ b_j b_i, if one exists.
    fn commutation_scalar(&self, i: usize, j: usize) -> Option<CycloNumber> {
        let p = self.product(i, j);
        let q = self.product(j, i);
        let (t, qt) = q.first()?;
        let pt = p.iter().find(|(k, _)| k == t).map(|(_, x)| x.clone())?;
        let l = pt.div(qt).ok()?;
        if *p == scale_sparse(q, &l) {
            Some(l)
        } else {
            None
        }
    }

    /// Decides whether the grading is regular and extracts its bicharacter.
    pub fn detect_regular(&self) -> Regularity {
        let grp = self.group().clone();
        let fmt = |g: usize| grp.format(&grp.element(g));
        let supp = self.support();
        let witness = |g: usize, h: usize, els: Vec<String>, reason: &str| {
            Regularity::NotRegular(RegularityWitness {
                degrees: (fmt(g), fmt(h)),
                elements: els,
                reason: reason.into(),
            })
        };
        if supp.len() != grp.order() {
            return Regularity::NotRegular(RegularityWitness {
                degrees: (String::new(), String::new()),
                elements: vec![],
                reason: "support is a proper subset of the grading group".into(),
            });
        }
        let n = grp.order();
        let mut values: Vec<Vec<Option<CycloNumber>>> = vec![vec![None; n]; n];
        for &g in &supp {
            for &h in &supp {
                let mut lam: Option<(CycloNumber, usize, usize)> = None;
                for &i in self.component(g) {
                    for &j in self.component(h) {
                        let Some(l) = self.commutation_scalar(i, j) else {
                            let els = vec![self.labels()[i].clone(), self.labels()[j].clone()];
                            return witness(g, h, els, "no commutation scalar for this pair");
                        };
                        match &lam {
                            None => lam = Some((l, i, j)),
                            Some((l0, i0, j0)) if *l0 != l => {
                                let els = vec![
                                    self.labels()[*i0].clone(),
                                    self.labels()[*j0].clone(),
                                    self.labels()[i].clone(),
                                    self.labels()[j].clone(),
                                ];
                                return witness(
                                    g,
                                    h,
                                    els,
                                    &format!("commutation scalars {l0} and {l} differ"),
                                );
                            }
                            _ => {}
                        }
                    }
                }
                values[g][h] = lam.map(|(l, _, _)| l);
            }
        }
        let r = grp.rank();
        let gens: Vec<usize> = (0..r).map(|i| grp.index(&grp.generator(i))).collect();
        let table: Vec<Vec<CycloNumber>> = gens
            .iter()
            .map(|&a| {
                gens.iter()
                    .map(|&b| values[a][b].clone().expect("full support"))
                    .collect()
            })
            .collect();
        let beta = match Bicharacter::from_values(grp.clone(), &table) {
            Ok(b) => b,
            Err(e) => {
                return witness(
                    gens[0],
                    gens[0],
                    vec![],
                    &format!("generator table invalid: {e}"),
                )
            }
        };
        for g in 0..n {
            for h in 0..n {
                let v = beta
                    .eval(&grp.element(g), &grp.element(h))
                    .expect("group element");
                if values[g][h].as_ref() != Some(&v) {
                    return witness(g, h, vec![], "commutation scalars are not bimultiplicative");
                }
            }
        }
        Regularity::Regular(beta)
    }

    /// Basis index of a central element J of the neutral component with J² = -1.
    pub fn central_imaginary_unit(&self) -> Option<usize> {
        let e = self.group().index(&self.group().identity());
        let minus_one = scale_sparse(self.unit(), &CycloNumber::from_int(self.order(), -1));
        self.component(e).iter().copied().find(|&j| {
            *self.product(j, j) == minus_one
                && (0..self.dim()).all(|k| self.product(j, k) == self.product(k, j))
        })
    }

    /// Complex commutation bicharacter β_A of a complex algebra viewed over ℝ:
    /// u_g u_h = β_A(g,h) u_h u_g with β_A(g,h) = α + iβ acting through J.
    pub fn complex_bicharacter(&self) -> Result<Bicharacter> {
        let j = self.central_imaginary_unit().ok_or_else(|| {
            Error::precondition("no central square root of -1 in the neutral component")
        })?;
        let grp = self.group().clone();
        let order = lcm(self.order(), 4);
        let i4 = CycloNumber::root(4, 1).lift(order);
        let scalar = |g: usize, h: usize| -> Result<CycloNumber> {
            let (&ug, &uh) = (
                self.component(g)
                    .first()
                    .ok_or_else(|| Error::precondition("empty component"))?,
                self.component(h)
                    .first()
                    .ok_or_else(|| Error::precondition("empty component"))?,
            );
            let p = self.to_dense(self.product(ug, uh));
            let q = self.product(uh, ug).clone();
            let jq = self.basis_mul_sparse(j, &q);
            let cols = vec![self.to_dense(&q), self.to_dense(&jq)];
            let x = solve(&cols, &p, self.order()).ok_or_else(|| {
                Error::precondition("products are not related by a complex scalar")
            })?;
            Ok(x[0].lift(order).add(&x[1].lift(order).mul(&i4)))
        };
        let r = grp.rank();
        let gens: Vec<usize> = (0..r).map(|i| grp.index(&grp.generator(i))).collect();
        let table = gens
            .iter()
            .map(|&a| {
                gens.iter()
                    .map(|&b| scalar(a, b))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let beta = Bicharacter::from_values(grp.clone(), &table)?;
        for g in self.support() {
            for h in self.support() {
                if scalar(g, h)? != beta.eval(&grp.element(g), &grp.element(h))? {
                    return Err(Error::precondition(
                        "complex commutation factors are not bimultiplicative",
                    ));
                }
            }
        }
        Ok(beta)
    }

    fn left_mul_rows(&self, b: &SparseVec) -> Vec<Vec<CycloNumber>> {
        let cols: Vec<Vec<CycloNumber>> = (0..self.dim())
            .map(|j| self.to_dense(&self.mul_sparse(b, &self.basis_sparse(j))))
            .collect();
        (0..self.dim())
            .map(|t| cols.iter().map(|c| c[t].clone()).collect())
            .collect()
    }

    pub fn is_invertible(&self, b: &SparseVec) -> bool {
        rank(&self.left_mul_rows(b)) == self.dim()
    }

    /// An invertible central element of degree `g`, if the center has one.
    pub fn invertible_central_at(&self, g: &GroupElement) -> Option<SparseVec> {
        self.center()
            .into_iter()
            .filter(|h| h.degree == *g)
            .map(|h| crate::scalars::linalg::dense_to_sparse(&h.coords))
            .find(|v| self.is_invertible(v))
    }

    /// Coefficient of the unit when `v` is a real multiple of it.
    fn unit_multiple(&self, v: &SparseVec) -> Option<CycloNumber> {
        if v.is_empty() {
            return Some(self.zero());
        }
        let (k, u) = self.unit().first()?;
        let c = v.iter().find(|(i, _)| i == k)?.1.div(u).ok()?;
        (*v == scale_sparse(self.unit(), &c)).then_some(c)
    }

    fn classify_neutral(&self) -> std::result::Result<String, String> {
        let e = self.group().index(&self.group().identity());
        let comp = self.component(e).to_vec();
        let commutative = comp.iter().all(|&i| {
            comp.iter()
                .all(|&j| self.product(i, j) == self.product(j, i))
        });
        match comp.len() {
            1 => Ok("R".into()),
            2 => {
                if !commutative {
                    return Err("neutral component is 2-dimensional and noncommutative".into());
                }
                let y = comp
                    .iter()
                    .find(|&&b| self.unit_multiple(&self.basis_sparse(b)).is_none())
                    .map(|&b| self.basis_sparse(b))
                    .ok_or("neutral component has no element outside R·1")?;
                // y^2 = α + β y
                let y2 = self.mul_sparse(&y, &y);
                let cols = vec![self.to_dense(self.unit()), self.to_dense(&y)];
                let x = solve(&cols, &self.to_dense(&y2), self.order())
                    .ok_or("y^2 leaves the neutral component")?;
                let disc = x[0].add(&x[1].mul(&x[1]).scale(&Q::new(1, 4)));
                match disc.real_sign() {
                    Some(-1) => Ok("C".into()),
                    Some(_) => Err("neutral component is isomorphic to R x R or R[t]/(t^2)".into()),
                    None => Err("could not certify the sign of the discriminant".into()),
                }
            }
            4 => {
                if commutative {
                    return Err("neutral component is 4-dimensional and commutative".into());
                }
                let d = self.dim() as i64;
                // Scalar part of x: tr(L_x) / dim, since L_x acts on A as a sum of copies of A_e.
                let pure: Vec<SparseVec> = comp
                    .iter()
                    .map(|&b| {
                        let bs = self.basis_sparse(b);
                        let rows = self.left_mul_rows(&bs);
                        let tr = (0..self.dim()).fold(self.zero(), |acc, i| acc.add(&rows[i][i]));
                        let s = tr.scale(&Q::new(1, d));
                        sub_sparse(&bs, &scale_sparse(self.unit(), &s))
                    })
                    .filter(|v| !v.is_empty())
                    .collect();
                // Keep three independent pure directions.
                let mut basis: Vec<SparseVec> = Vec::new();
                for p in pure {
                    let mut cand = basis.clone();
                    cand.push(p.clone());
                    let dense: Vec<Vec<CycloNumber>> =
                        cand.iter().map(|v| self.to_dense(v)).collect();
                    if rank(&dense) == cand.len() {
                        basis.push(p);
                    }
                }
                if basis.len() != 3 {
                    return Err(
                        "neutral component does not split as R·1 plus a 3-dimensional pure part"
                            .into(),
                    );
                }
                let half = Q::new(1, 2);
                let mut gram = vec![vec![self.zero(); 3]; 3];
                for a in 0..3 {
                    for b in 0..3 {
                        let s = self.mul_sparse(&basis[a], &basis[b]);
                        let t = self.mul_sparse(&basis[b], &basis[a]);
                        let mut sum: std::collections::BTreeMap<usize, CycloNumber> =
                            s.into_iter().collect();
                        for (k, c) in t {
                            let e = sum.entry(k).or_insert_with(|| self.zero());
                            *e = e.add(&c);
                        }
                        let sym: SparseVec = sum
                            .into_iter()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(k, c)| (k, c.scale(&half)))
                            .collect();
                        gram[a][b] = self
                            .unit_multiple(&sym)
                            .ok_or("symmetrized product of pure elements is not scalar")?;
                    }
                }
                // Negative definite iff leading minors of -gram are positive.
                let ng: Vec<Vec<CycloNumber>> = gram
                    .iter()
                    .map(|r| r.iter().map(CycloNumber::neg).collect())
                    .collect();
                let m1 = ng[0][0].clone();
                let m2 = ng[0][0].mul(&ng[1][1]).sub(&ng[0][1].mul(&ng[1][0]));
                let m3 = det3(&ng);
                for m in [m1, m2, m3] {
                    match m.real_sign() {
                        Some(1) => {}
                        Some(_) => {
                            return Err("neutral component is split (isomorphic to M2(R))".into())
                        }
                        None => {
                            return Err("could not certify the sign of a norm-form minor".into())
                        }
                    }
                }
                Ok("H".into())
            }
            k => Err(format!(
                "neutral component has dimension {k}, not 1, 2 or 4"
            )),
        }
    }

    /// Validates that every nonzero homogeneous element is invertible.
    pub fn check_graded_division(&self) -> DivisionCheck {
        let fail = |m: String| DivisionCheck {
            is_division: false,
            certificate: None,
            failure: Some(m),
        };
        if self.unit().is_empty() {
            return fail("no unit".into());
        }
        let neutral = match self.classify_neutral() {
            Ok(t) => t,
            Err(m) => return fail(m),
        };
        let e = self.group().index(&self.group().identity());
        let ne = self.component(e).len();
        let mut units = Vec::new();
        for g in self.support() {
            let comp = self.component(g);
            let deg = self.group().format(&self.group().element(g));
            if comp.len() != ne {
                return fail(format!(
                    "component {deg} has dimension {} but A_e has {ne}",
                    comp.len()
                ));
            }
            let Some(&u) = comp
                .iter()
                .find(|&&b| self.is_invertible(&self.basis_sparse(b)))
            else {
                return fail(format!("no invertible basis element in component {deg}"));
            };
            let span: Vec<Vec<CycloNumber>> = self
                .component(e)
                .iter()
                .map(|&a| self.to_dense(self.product(a, u)))
                .collect();
            if rank(&span) != comp.len() {
                return fail(format!(
                    "A_e * {} does not span component {deg}",
                    self.labels()[u]
                ));
            }
            units.push((deg, self.labels()[u].clone()));
        }
        DivisionCheck {
            is_division: true,
            certificate: Some(DivisionCertificate {
                neutral_type: neutral,
                units,
            }),
            failure: None,
        }
    }

    /// Sum of dimensions of the components over the given degrees.
    pub fn components_dim(&self, degrees: &[GroupElement]) -> usize {
        degrees.iter().map(|g| self.component_of(g).len()).sum()
    }
}

fn det3(m: &[Vec<CycloNumber>]) -> CycloNumber {
    let t = |a: usize, b: usize, c: usize| m[0][a].mul(&m[1][b]).mul(&m[2][c]);
    t(0, 1, 2)
        .add(&t(1, 2, 0))
        .add(&t(2, 0, 1))
        .sub(&t(2, 1, 0))
        .sub(&t(0, 2, 1))
        .sub(&t(1, 0, 2))
}
