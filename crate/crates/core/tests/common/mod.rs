//! Floating-point oracle: random admissible substitutions in A ⊗ ℂ and
//! SVD ranks. Shares nothing with the exact engine except the structure
//! constants.
#![allow(dead_code)]

use std::collections::BTreeMap;

use gradedpi::algebras::GradedAlgebra;
use gradedpi::freealg::{permutations, GradedPolynomial, Var};
use gradedpi::scalars::CycloNumber;
use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type C = Complex<f64>;

/// Relative singular-value cutoff for numeric ranks.
pub const RANK_TOL: f64 = 1e-9;
/// Absolute bound on |f(t)| for a numeric vanishing check, scaled by the
/// size of the largest monomial value.
pub const VANISH_TOL: f64 = 1e-9;

pub fn to_c(x: &CycloNumber) -> C {
    let n = x.order() as f64;
    x.coeffs()
        .iter()
        .enumerate()
        .map(|(j, q)| C::from_polar(q.to_f64(), 2.0 * std::f64::consts::PI * j as f64 / n))
        .sum()
}

pub struct Numeric {
    pub dim: usize,
    mult: Vec<Vec<Vec<(usize, C)>>>,
    unit: Vec<C>,
    components: Vec<Vec<usize>>,
}

impl Numeric {
    pub fn new(a: &GradedAlgebra) -> Self {
        let n = a.dim();
        let mult = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| a.product(i, j).iter().map(|(k, c)| (*k, to_c(c))).collect())
                    .collect()
            })
            .collect();
        let mut unit = vec![C::new(0.0, 0.0); n];
        for (k, c) in a.unit() {
            unit[*k] = to_c(c);
        }
        let components = (0..a.group().order())
            .map(|g| a.component(g).to_vec())
            .collect();
        Numeric {
            dim: n,
            mult,
            unit,
            components,
        }
    }

    pub fn mul(&self, x: &[C], y: &[C]) -> Vec<C> {
        let mut out = vec![C::new(0.0, 0.0); self.dim];
        for (i, xi) in x.iter().enumerate() {
            if xi.norm_sqr() == 0.0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.norm_sqr() == 0.0 {
                    continue;
                }
                for (k, c) in &self.mult[i][j] {
                    out[*k] += xi * yj * c;
                }
            }
        }
        out
    }

    /// A real random combination of the basis of the component of degree index `g`.
    pub fn random(&self, rng: &mut ChaCha8Rng, g: usize) -> Vec<C> {
        let mut v = vec![C::new(0.0, 0.0); self.dim];
        for &i in &self.components[g] {
            v[i] = C::new(rng.gen_range(-1.0..1.0), 0.0);
        }
        v
    }

    fn word(&self, vals: &[&Vec<C>]) -> Vec<C> {
        let mut acc = self.unit.clone();
        for v in vals {
            acc = self.mul(&acc, v);
        }
        acc
    }

    /// f at an assignment; also returns the largest monomial value norm.
    pub fn eval(&self, f: &GradedPolynomial, vals: &BTreeMap<u32, Vec<C>>) -> (Vec<C>, f64) {
        let mut out = vec![C::new(0.0, 0.0); self.dim];
        let mut scale: f64 = 1.0;
        for (m, c) in f.terms() {
            let w = self.word(&m.iter().map(|x: &Var| &vals[&x.index]).collect::<Vec<_>>());
            let c = to_c(c);
            scale = scale.max(w.iter().map(|z| z.norm()).fold(0.0, f64::max) * c.norm());
            for (o, z) in out.iter_mut().zip(w) {
                *o += c * z;
            }
        }
        (out, scale)
    }

    fn assignment(&self, f: &GradedPolynomial, rng: &mut ChaCha8Rng) -> BTreeMap<u32, Vec<C>> {
        f.variables()
            .into_iter()
            .map(|(i, d)| (i, self.random(rng, d as usize)))
            .collect()
    }

    fn commutator(&self, x: &[C], y: &[C]) -> Vec<C> {
        let a = self.mul(x, y);
        let b = self.mul(y, x);
        a.into_iter().zip(b).map(|(p, q)| p - q).collect()
    }

    fn basis(&self, i: usize) -> Vec<C> {
        let mut v = vec![C::new(0.0, 0.0); self.dim];
        v[i] = C::new(1.0, 0.0);
        v
    }

    pub fn vanishes(&self, f: &GradedPolynomial, rng: &mut ChaCha8Rng, trials: usize) -> bool {
        (0..trials).all(|_| {
            let (v, s) = self.eval(f, &self.assignment(f, rng));
            v.iter().all(|z| z.norm() <= VANISH_TOL * s)
        })
    }

    pub fn is_central(&self, f: &GradedPolynomial, rng: &mut ChaCha8Rng, trials: usize) -> bool {
        (0..trials).all(|_| {
            let (v, s) = self.eval(f, &self.assignment(f, rng));
            (0..self.dim).all(|j| {
                self.commutator(&v, &self.basis(j))
                    .iter()
                    .all(|z| z.norm() <= VANISH_TOL * s)
            })
        })
    }

    fn evaluation_matrix(
        &self,
        degrees: &[usize],
        rng: &mut ChaCha8Rng,
        central: bool,
    ) -> DMatrix<C> {
        let n = degrees.len();
        let perms = permutations(n);
        let tuples = perms.len() + 8;
        let mut rows: Vec<Vec<C>> = Vec::new();
        for _ in 0..tuples {
            let vals: Vec<Vec<C>> = degrees.iter().map(|&g| self.random(rng, g)).collect();
            let words: Vec<Vec<C>> = perms
                .iter()
                .map(|p| self.word(&p.iter().map(|&k| &vals[k]).collect::<Vec<_>>()))
                .collect();
            if central {
                for j in 0..self.dim {
                    let b = self.basis(j);
                    let comms: Vec<Vec<C>> = words.iter().map(|w| self.commutator(w, &b)).collect();
                    for k in 0..self.dim {
                        rows.push(comms.iter().map(|c| c[k]).collect());
                    }
                }
            } else {
                for k in 0..self.dim {
                    rows.push(words.iter().map(|w| w[k]).collect());
                }
            }
        }
        DMatrix::from_fn(rows.len(), perms.len(), |r, c| rows[r][c])
    }

    /// dim of the multilinear identities at the degree-index tuple.
    pub fn identity_dim(&self, degrees: &[usize], rng: &mut ChaCha8Rng) -> usize {
        let m = self.evaluation_matrix(degrees, rng, false);
        m.ncols() - rank(m)
    }

    /// dim of the multilinear central polynomials (identities included).
    pub fn central_dim(&self, degrees: &[usize], rng: &mut ChaCha8Rng) -> usize {
        let m = self.evaluation_matrix(degrees, rng, true);
        m.ncols() - rank(m)
    }
}

pub fn rank(m: DMatrix<C>) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|s| **s > RANK_TOL * top).count()
}

/// Random multilinear polynomial in x1..xn with the given degree indices.
pub fn random_multilinear(
    rng: &mut ChaCha8Rng,
    group: &gradedpi::groups::FiniteAbelianGroup,
    order: u32,
    degrees: &[usize],
    terms: usize,
) -> GradedPolynomial {
    let perms = permutations(degrees.len());
    let mut f = GradedPolynomial::zero(group.clone(), order);
    for _ in 0..terms {
        let p = &perms[rng.gen_range(0..perms.len())];
        let m: Vec<Var> = p
            .iter()
            .map(|&k| Var::new(k as u32 + 1, degrees[k]))
            .collect();
        let c = rng.gen_range(-3i64..=3);
        if c != 0 {
            f.add_term(m, CycloNumber::from_int(order, c));
        }
    }
    f
}
