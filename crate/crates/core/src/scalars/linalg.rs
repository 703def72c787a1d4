//! Exact linear algebra over Q and Q(ζ_N).

use std::collections::{BTreeMap, HashMap};

use super::cyclo::CycloNumber;
use super::rational::Q;

/// Sparse vector, strictly increasing column indices, no stored zeros.
pub type SparseVec = Vec<(usize, CycloNumber)>;

pub fn dense_to_sparse(v: &[CycloNumber]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize, order: u32) -> Vec<CycloNumber> {
    let mut out = vec![CycloNumber::zero(order); len];
    for (i, c) in v {
        out[*i] = c.clone();
    }
    out
}

/// Incrementally maintained row-echelon basis of a subspace.
///
/// Every stored row starts at its pivot column with coefficient 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: HashMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Reduces `v` against the basis; the result has no entry at a pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, CycloNumber> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = work.range(cursor..).next().map(|(k, c)| (*k, c.clone()));
            let Some((k, c)) = next else { break };
            cursor = k + 1;
            let Some(row) = self.rows.get(&k) else {
                continue;
            };
            for (j, r) in row {
                let e = work
                    .entry(*j)
                    .or_insert_with(|| CycloNumber::zero(c.order()));
                *e = e.sub(&c.mul(r));
                if e.is_zero() {
                    work.remove(j);
                }
            }
        }
        work.into_iter().collect()
    }

    /// Inserts `v`; returns `true` when it was independent of the basis.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((pivot, lead)) = r.first().cloned() else {
            return false;
        };
        let inv = lead.inv().expect("nonzero leading entry");
        let row: SparseVec = r.into_iter().map(|(j, c)| (j, c.mul(&inv))).collect();
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    pub fn contains_all(&self, other: &Echelon) -> bool {
        other.rows.values().all(|r| self.contains(r))
    }

    pub fn basis(&self) -> Vec<SparseVec> {
        self.pivots()
            .into_iter()
            .map(|p| self.rows[&p].clone())
            .collect()
    }

    /// Fully reduced basis: pivot columns vanish in every other row.
    pub fn reduced_basis(&self) -> Vec<SparseVec> {
        let pivots = self.pivots();
        let mut out: HashMap<usize, SparseVec> = HashMap::new();
        for &p in pivots.iter().rev() {
            let mut work: BTreeMap<usize, CycloNumber> = self.rows[&p].iter().cloned().collect();
            for &q in pivots.iter().filter(|&&q| q > p) {
                if let Some(c) = work.get(&q).cloned() {
                    for (j, r) in &out[&q] {
                        let e = work
                            .entry(*j)
                            .or_insert_with(|| CycloNumber::zero(c.order()));
                        *e = e.sub(&c.mul(r));
                        if e.is_zero() {
                            work.remove(j);
                        }
                    }
                }
            }
            out.insert(p, work.into_iter().collect());
        }
        pivots
            .into_iter()
            .map(|p| out.remove(&p).unwrap())
            .collect()
    }

    /// Basis of `{x : r·x = 0 for every row r}` in `ncols` coordinates.
    pub fn kernel(&self, ncols: usize, order: u32) -> Vec<SparseVec> {
        let basis = self.reduced_basis();
        let pivots: Vec<usize> = basis.iter().map(|r| r[0].0).collect();
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; ncols];
            for &p in &pivots {
                v[p] = true;
            }
            v
        };
        let mut out = Vec::new();
        for f in (0..ncols).filter(|&f| !is_pivot[f]) {
            let mut vec: BTreeMap<usize, CycloNumber> = BTreeMap::new();
            vec.insert(f, CycloNumber::one(order));
            for row in &basis {
                if let Some((_, c)) = row.iter().find(|(j, _)| *j == f) {
                    vec.insert(row[0].0, c.neg());
                }
            }
            out.push(vec.into_iter().collect());
        }
        out
    }
}

/// Row space echelon of a dense matrix.
pub fn echelon_of(rows: &[Vec<CycloNumber>]) -> Echelon {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(&dense_to_sparse(r));
    }
    e
}

pub fn rank(rows: &[Vec<CycloNumber>]) -> usize {
    echelon_of(rows).rank()
}

/// Null space of a dense matrix given by rows.
pub fn kernel(rows: &[Vec<CycloNumber>], ncols: usize, order: u32) -> Vec<Vec<CycloNumber>> {
    echelon_of(rows)
        .kernel(ncols, order)
        .iter()
        .map(|v| sparse_to_dense(v, ncols, order))
        .collect()
}

/// Real-valued null space: vectors with real entries annihilated by `rows`.
///
/// For real `v`, `Mv = 0` iff `(M + M̄)v = 0` and `(M - M̄)v = 0`; the second
/// block is divided by `ζ - ζ^{-1}` so both blocks are real and elimination
/// stays inside the real subfield.
pub fn real_kernel(rows: &[Vec<CycloNumber>], ncols: usize, order: u32) -> Vec<Vec<CycloNumber>> {
    let all_real = rows.iter().flatten().all(CycloNumber::is_real);
    if all_real {
        return kernel(rows, ncols, order);
    }
    let delta = CycloNumber::root(order, 1).sub(&CycloNumber::root(order, -1));
    let dinv = delta.inv().expect("order > 2 when entries are non-real");
    let mut stacked = Vec::with_capacity(rows.len() * 2);
    for r in rows {
        let c: Vec<CycloNumber> = r.iter().map(CycloNumber::conj).collect();
        stacked.push(r.iter().zip(&c).map(|(a, b)| a.add(b)).collect());
        stacked.push(r.iter().zip(&c).map(|(a, b)| a.sub(b).mul(&dinv)).collect());
    }
    kernel(&stacked, ncols, order)
}

/// Outcome of comparing two subspaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpanRelation {
    Equal,
    /// First ⊊ second; the witness lies in the second but not the first.
    Sub(SparseVec),
    /// First ⊋ second; the witness lies in the first but not the second.
    Super(SparseVec),
    /// Witnesses from each side not contained in the other.
    Incomparable(SparseVec, SparseVec),
}

/// Compares `span(u)` and `span(v)` exactly.
pub fn span_compare(u: &Echelon, v: &Echelon) -> SpanRelation {
    let u_out = u.basis().into_iter().find(|r| !v.contains(r));
    let v_out = v.basis().into_iter().find(|r| !u.contains(r));
    match (u_out, v_out) {
        (None, None) => SpanRelation::Equal,
        (None, Some(w)) => SpanRelation::Sub(w),
        (Some(w), None) => SpanRelation::Super(w),
        (Some(a), Some(b)) => SpanRelation::Incomparable(a, b),
    }
}

/// Dense-vector variant of [`span_compare`] with a dimension check.
pub fn span_compare_dense(
    u: &[Vec<CycloNumber>],
    v: &[Vec<CycloNumber>],
) -> crate::Result<SpanRelation> {
    let dim = u.first().or(v.first()).map(Vec::len).unwrap_or(0);
    if u.iter().chain(v).any(|r| r.len() != dim) {
        return Err(crate::Error::domain("span_compare: dimension mismatch"));
    }
    Ok(span_compare(&echelon_of(u), &echelon_of(v)))
}

/// Solves `Σ x_j cols[j] = target`, returning one solution if any exists.
pub fn solve(
    cols: &[Vec<CycloNumber>],
    target: &[CycloNumber],
    order: u32,
) -> Option<Vec<CycloNumber>> {
    let n = cols.len();
    let m = target.len();
    // Augmented rows [A | b], with A given by columns.
    let rows: Vec<Vec<CycloNumber>> = (0..m)
        .map(|i| {
            let mut r: Vec<CycloNumber> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let basis = echelon_of(&rows).reduced_basis();
    let mut x = vec![CycloNumber::zero(order); n];
    for row in basis {
        let (p, _) = row[0];
        if p == n {
            return None;
        }
        if let Some((_, b)) = row.iter().find(|(j, _)| *j == n) {
            x[p] = b.clone();
        }
    }
    Some(x)
}

/// Rational variant of [`solve`], used for subfield projection.
pub fn solve_rational(cols: &[Vec<Q>], target: &[Q]) -> Option<Vec<Q>> {
    let n = cols.len();
    let m = target.len();
    let mut a: Vec<Vec<Q>> = (0..m)
        .map(|i| {
            let mut r: Vec<Q> = cols.iter().map(|c| c[i].clone()).collect();
            r.push(target[i].clone());
            r
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..=n {
        let Some(p) = (row..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].recip();
        for v in a[row].iter_mut() {
            *v = v.mul_ref(&inv);
        }
        for r in 0..m {
            if r != row && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..=n {
                    let t = a[row][c].mul_ref(&f);
                    a[r][c] = a[r][c].sub_ref(&t);
                }
            }
        }
        pivot_cols.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    if pivot_cols.contains(&n) {
        return None;
    }
    let mut x = vec![Q::ZERO; n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        x[c] = a[r][n].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64) -> CycloNumber {
        CycloNumber::from_int(4, n)
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![vec![c(1), c(2), c(3)], vec![c(2), c(4), c(6)]];
        assert_eq!(rank(&rows), 1);
        let k = kernel(&rows, 3, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            let dot = rows[0]
                .iter()
                .zip(v)
                .fold(c(0), |acc, (a, b)| acc.add(&a.mul(b)));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn real_kernel_drops_complex_directions() {
        // x + i y = 0 has complex kernel (i, -1)·t but no nonzero real solution.
        let i = CycloNumber::root(4, 1);
        let rows = vec![vec![c(1), i.clone()]];
        assert_eq!(kernel(&rows, 2, 4).len(), 1);
        assert!(real_kernel(&rows, 2, 4).is_empty());
    }

    #[test]
    fn solve_and_inconsistent() {
        let cols = vec![vec![c(1), c(0)], vec![c(1), c(1)]];
        let x = solve(&cols, &[c(3), c(1)], 4).unwrap();
        assert_eq!(x, vec![c(2), c(1)]);
        let cols = vec![vec![c(1), c(1)]];
        assert!(solve(&cols, &[c(1), c(2)], 4).is_none());
    }

    #[test]
    fn echelon_containment() {
        let mut a = Echelon::new();
        assert!(a.insert(&vec![(0, c(1)), (2, c(1))]));
        assert!(a.insert(&vec![(1, c(1))]));
        assert!(!a.insert(&vec![(0, c(2)), (1, c(5)), (2, c(2))]));
        assert!(a.contains(&vec![(0, c(-1)), (2, c(-1))]));
        assert!(!a.contains(&vec![(2, c(1))]));
    }

    #[test]
    fn rational_solve() {
        let cols = vec![vec![Q::from_int(2), Q::ZERO], vec![Q::ZERO, Q::from_int(3)]];
        let x = solve_rational(&cols, &[Q::ONE, Q::ONE]).unwrap();
        assert_eq!(x, vec![Q::new(1, 2), Q::new(1, 3)]);
    }

    #[test]
    fn real_kernel_with_sqrt2() {
        // 1 + ζ^-1 x + ζ^-2 y = 0 over the reals: (1, -√2, 1).
        let z = |k| CycloNumber::root(8, k);
        let rows = vec![vec![z(0), z(-1), z(-2)]];
        let k = real_kernel(&rows, 3, 8);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        let sqrt2 = z(1).add(&z(-1));
        let scale = v[0].inv().unwrap();
        let n: Vec<CycloNumber> = v.iter().map(|x| x.mul(&scale)).collect();
        assert_eq!(n, vec![z(0), sqrt2.neg(), z(0)]);
        assert!(v.iter().all(CycloNumber::is_real));
    }

    #[test]
    fn span_relations() {
        let u = vec![vec![c(1), c(0)]];
        let v = vec![vec![c(1), c(0)], vec![c(0), c(1)]];
        assert!(matches!(
            span_compare_dense(&u, &v).unwrap(),
            SpanRelation::Sub(_)
        ));
        assert_eq!(span_compare_dense(&[], &[]).unwrap(), SpanRelation::Equal);
        assert!(span_compare_dense(&u, &[vec![c(1)]]).is_err());
    }
}
