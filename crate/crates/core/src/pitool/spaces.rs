//! Membership tests and the multilinear identity / central spaces P_g ∩ Id
//! and P_g ∩ C, computed from evaluations on homogeneous basis tuples.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::MultidegreeBasis;
use crate::algebras::GradedAlgebra;
use crate::error::{Error, Result};
use crate::freealg::ops::{evaluate_sparse, multilinearize};
use crate::freealg::GradedPolynomial;
use crate::scalars::linalg::{dense_to_sparse, Echelon, SparseVec};

/// Size bounds for exhaustive evaluation.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Limits {
    /// Largest number of variables of a multidegree.
    pub max_vars: usize,
    /// Largest estimated number of basis products for one multidegree.
    pub max_products: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vars: 8,
            max_products: 200_000_000,
        }
    }
}

/// An assignment of basis elements to variables, plus what went wrong.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub assignment: Vec<(String, String)>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Centrality {
    Identity,
    ProperCentral { witness: Witness },
    Neither { witness: Witness },
}

impl Centrality {
    pub fn is_central(&self) -> bool {
        !matches!(self, Centrality::Neither { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub witness: Option<Witness>,
}

/// Evaluation context for one algebra; caches the center.
pub struct Engine<'a> {
    pub algebra: &'a GradedAlgebra,
    pub limits: Limits,
    center: Echelon,
}

impl<'a> Engine<'a> {
    pub fn new(algebra: &'a GradedAlgebra, limits: Limits) -> Self {
        let mut center = Echelon::new();
        for z in algebra.center() {
            center.insert(&dense_to_sparse(&z.coords));
        }
        Engine {
            algebra,
            limits,
            center,
        }
    }

    pub fn center(&self) -> &Echelon {
        &self.center
    }

    fn check_group(&self, f: &GradedPolynomial) -> Result<()> {
        if f.group().orders() != self.algebra.group().orders() {
            return Err(Error::domain(
                "polynomial and algebra are graded by different groups",
            ));
        }
        Ok(())
    }

    /// Number of basis tuples and an estimate of products for a multidegree.
    pub fn cost(&self, degrees: &[usize]) -> (u64, u64) {
        let tuples: u64 = degrees
            .iter()
            .map(|&d| self.algebra.component(d).len() as u64)
            .product();
        let n = degrees.len() as u64;
        let perms: u64 = (1..=n).product();
        (tuples, tuples.saturating_mul(perms).saturating_mul(3))
    }

    fn guard(&self, degrees: &[usize]) -> Result<()> {
        if degrees.is_empty() {
            return Err(Error::domain("a multidegree needs n ≥ 1 variables"));
        }
        for &d in degrees {
            if d >= self.algebra.group().order() {
                return Err(Error::domain("degree outside the grading group"));
            }
        }
        if degrees.len() > self.limits.max_vars {
            return Err(Error::resource(format!(
                "multidegree with {} variables exceeds the limit of {} ({}! monomials)",
                degrees.len(),
                self.limits.max_vars,
                degrees.len()
            )));
        }
        let (tuples, products) = self.cost(degrees);
        if products > self.limits.max_products {
            return Err(Error::resource(format!(
                "multidegree needs about {products} basis products over {tuples} substitutions (limit {})",
                self.limits.max_products
            )));
        }
        Ok(())
    }

    /// Values of all n! monomials on one basis tuple, indexed by Lehmer rank.
    fn monomial_values(&self, tuple: &[usize]) -> Vec<SparseVec> {
        let n = tuple.len();
        let mut out = vec![Vec::new(); (1..=n).product()];
        let mut perm = Vec::with_capacity(n);
        self.dfs(tuple, 0, &mut perm, self.algebra.unit().clone(), &mut out);
        out
    }

    fn dfs(
        &self,
        tuple: &[usize],
        used: u64,
        perm: &mut Vec<usize>,
        cur: SparseVec,
        out: &mut [SparseVec],
    ) {
        if perm.len() == tuple.len() {
            out[MultidegreeBasis::rank(perm)] = cur;
            return;
        }
        for (i, &b) in tuple.iter().enumerate() {
            if used & (1 << i) != 0 {
                continue;
            }
            let next = if cur.is_empty() {
                Vec::new()
            } else {
                self.algebra.mul_sparse_basis(&cur, b)
            };
            perm.push(i);
            self.dfs(tuple, used | (1 << i), perm, next, out);
            perm.pop();
        }
    }

    fn tuples(&self, degrees: &[usize]) -> Vec<Vec<usize>> {
        let comps: Vec<&[usize]> = degrees.iter().map(|&d| self.algebra.component(d)).collect();
        let mut out = vec![Vec::new()];
        for c in comps {
            out = out
                .into_iter()
                .flat_map(|t| c.iter().map(move |&b| [t.clone(), vec![b]].concat()))
                .collect();
        }
        out
    }

    /// Row space of the evaluation matrix; its kernel is the requested space.
    fn evaluation_rows(&self, degrees: &[usize], central: bool) -> Result<Echelon> {
        self.guard(degrees)?;
        let width: usize = (1..=degrees.len()).product();
        let mut rows = Echelon::new();
        for tuple in self.tuples(degrees) {
            let vals = self.monomial_values(&tuple);
            let mut by_coord: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (s, v) in vals.iter().enumerate() {
                let v = if central {
                    self.center.reduce(v)
                } else {
                    v.clone()
                };
                for (k, c) in v {
                    by_coord.entry(k).or_default().push((s, c));
                }
            }
            for row in by_coord.values() {
                rows.insert(row);
                if rows.rank() == width {
                    return Ok(rows);
                }
            }
        }
        Ok(rows)
    }

    fn kernel_space(&self, rows: &Echelon, width: usize) -> Echelon {
        let mut e = Echelon::new();
        for v in rows.kernel(width, self.algebra.order()) {
            e.insert(&v);
        }
        e
    }

    /// P_g ∩ Id_G(A) as coordinate vectors over the monomials of P_g.
    pub fn identity_space(&self, degrees: &[usize]) -> Result<Echelon> {
        let rows = self.evaluation_rows(degrees, false)?;
        Ok(self.kernel_space(&rows, (1..=degrees.len()).product()))
    }

    /// P_g ∩ C_G(A).
    pub fn central_space(&self, degrees: &[usize]) -> Result<Echelon> {
        let rows = self.evaluation_rows(degrees, true)?;
        Ok(self.kernel_space(&rows, (1..=degrees.len()).product()))
    }

    fn assignment(
        &self,
        f: &GradedPolynomial,
        subst: &BTreeMap<u32, usize>,
    ) -> Vec<(String, String)> {
        let g = f.group();
        subst
            .iter()
            .map(|(&i, &b)| {
                let d = self.algebra.degree(b);
                (
                    format!("x{i}:{}", g.format(&d)),
                    self.algebra.labels()[b].clone(),
                )
            })
            .collect()
    }

    /// Calls `visit` on every basis substitution of each multilinear piece
    /// of `f`; stops early when `visit` returns `Some`.
    fn scan<T>(
        &self,
        f: &GradedPolynomial,
        mut visit: impl FnMut(&GradedPolynomial, &BTreeMap<u32, usize>, SparseVec) -> Option<T>,
    ) -> Result<Option<T>> {
        self.check_group(f)?;
        for piece in multilinearize(f) {
            let vars: Vec<(u32, usize)> = piece
                .variables()
                .into_iter()
                .map(|(i, d)| (i, d as usize))
                .collect();
            let degrees: Vec<usize> = vars.iter().map(|v| v.1).collect();
            if !degrees.is_empty() {
                self.guard(&degrees)?;
            }
            for tuple in self.tuples(&degrees) {
                let subst: BTreeMap<u32, usize> =
                    vars.iter().zip(&tuple).map(|(v, &b)| (v.0, b)).collect();
                let sparse = subst
                    .iter()
                    .map(|(&i, &b)| (i, self.algebra.basis_sparse(b)))
                    .collect();
                let val = evaluate_sparse(&piece, &sparse, self.algebra);
                if let Some(t) = visit(&piece, &subst, val) {
                    return Ok(Some(t));
                }
            }
        }
        Ok(None)
    }

    pub fn is_identity(&self, f: &GradedPolynomial) -> Result<IdentityCheck> {
        let a = self.algebra;
        let w = self.scan(f, |p, s, v| {
            (!v.is_empty()).then(|| Witness {
                assignment: self.assignment(p, s),
                detail: format!(
                    "value has {} nonzero coordinates, first at {}",
                    v.len(),
                    a.labels()[v[0].0]
                ),
            })
        })?;
        Ok(IdentityCheck {
            holds: w.is_none(),
            witness: w,
        })
    }

    pub fn is_central(&self, f: &GradedPolynomial) -> Result<Centrality> {
        let a = self.algebra;
        let mut nonzero: Option<Witness> = None;
        let bad = self.scan(f, |p, s, v| {
            if v.is_empty() {
                return None;
            }
            if self.center.reduce(&v).is_empty() {
                if nonzero.is_none() {
                    nonzero = Some(Witness {
                        assignment: self.assignment(p, s),
                        detail: "nonzero central value".into(),
                    });
                }
                return None;
            }
            let j = (0..a.dim())
                .find(|&j| a.mul_sparse_basis(&v, j) != a.basis_mul_sparse(j, &v))
                .unwrap_or(0);
            Some(Witness {
                assignment: self.assignment(p, s),
                detail: format!("value does not commute with {}", a.labels()[j]),
            })
        })?;
        Ok(match (bad, nonzero) {
            (Some(w), _) => Centrality::Neither { witness: w },
            (None, Some(w)) => Centrality::ProperCentral { witness: w },
            (None, None) => Centrality::Identity,
        })
    }
}

pub fn is_identity(a: &GradedAlgebra, f: &GradedPolynomial) -> Result<IdentityCheck> {
    Engine::new(a, Limits::default()).is_identity(f)
}

pub fn is_central(a: &GradedAlgebra, f: &GradedPolynomial) -> Result<Centrality> {
    Engine::new(a, Limits::default()).is_central(f)
}

pub fn multilinear_identity_space(a: &GradedAlgebra, degrees: &[usize]) -> Result<Echelon> {
    Engine::new(a, Limits::default()).identity_space(degrees)
}

pub fn multilinear_central_space(a: &GradedAlgebra, degrees: &[usize]) -> Result<Echelon> {
    Engine::new(a, Limits::default()).central_space(degrees)
}
