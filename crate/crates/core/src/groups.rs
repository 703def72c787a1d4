//! Finite abelian groups presented as products of cyclic factors.
//!
//! Elements are residue tuples. Internally the identity engine works with the
//! mixed-radix index of an element, see [`FiniteAbelianGroup::index`].

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u32>);

impl GroupElement {
    pub fn residues(&self) -> &[u32] {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Vec<u32>,
    names: Vec<String>,
}

fn default_names(r: usize) -> Vec<String> {
    const LETTERS: &[&str] = &["a", "b", "c", "d", "f", "g", "h", "k"];
    if r <= LETTERS.len() {
        LETTERS[..r].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=r).map(|i| format!("g{i}")).collect()
    }
}

fn valid_name(s: &str) -> bool {
    let mut ch = s.chars();
    matches!(ch.next(), Some(c) if c.is_ascii_alphabetic())
        && ch.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s != "e"
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u32>) -> Result<Self> {
        let names = default_names(orders.len());
        Self::with_names(orders, names)
    }

    pub fn with_names(orders: Vec<u32>, names: Vec<String>) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::domain("cyclic factor orders must be at least 1"));
        }
        if names.len() != orders.len() {
            return Err(Error::domain(
                "one generator name per cyclic factor is required",
            ));
        }
        for (i, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(Error::domain(format!("invalid generator name '{n}'")));
            }
            if names[..i].contains(n) {
                return Err(Error::domain(format!("duplicate generator name '{n}'")));
            }
        }
        Ok(FiniteAbelianGroup { orders, names })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            orders: vec![],
            names: vec![],
        }
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("positive order")
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn order(&self) -> usize {
        self.orders.iter().map(|&o| o as usize).product()
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u32 {
        self.orders
            .iter()
            .fold(1, |acc, &o| crate::scalars::lcm(acc, o))
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        if self.orders[i] > 1 {
            v[i] = 1;
        }
        GroupElement(v)
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.rank() && g.0.iter().zip(&self.orders).all(|(r, o)| r < o)
    }

    pub fn check(&self, g: &GroupElement) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::domain(format!(
                "{:?} is not an element of {}",
                g.0, self
            )))
        }
    }

    pub fn element(&self, mut idx: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let o = self.orders[i] as usize;
            v[i] = (idx % o) as u32;
            idx /= o;
        }
        GroupElement(v)
    }

    pub fn index(&self, g: &GroupElement) -> usize {
        g.0.iter()
            .zip(&self.orders)
            .fold(0usize, |acc, (r, o)| acc * *o as usize + *r as usize)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), o)| (x + y) % o)
                .collect(),
        )
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, o)| (o - x) % o)
                .collect(),
        )
    }

    pub fn pow(&self, a: &GroupElement, k: i64) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, o)| ((*x as i64 * k).rem_euclid(*o as i64)) as u32)
                .collect(),
        )
    }

    pub fn element_order(&self, a: &GroupElement) -> u32 {
        a.0.iter()
            .zip(&self.orders)
            .map(|(x, o)| o / crate::scalars::cyclo::gcd(*x as u64, *o as u64).max(1) as u32)
            .fold(1, crate::scalars::lcm)
    }

    pub fn op_idx(&self, i: usize, j: usize) -> usize {
        self.index(&self.op(&self.element(i), &self.element(j)))
    }

    /// Multiplication table on element indices.
    pub fn cayley_table(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n)
            .map(|i| (0..n).map(|j| self.op_idx(i, j)).collect())
            .collect()
    }

    /// Product of a sequence of elements.
    pub fn product<'a>(&self, it: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        it.into_iter()
            .fold(self.identity(), |acc, g| self.op(&acc, g))
    }

    /// Direct product; clashing generator names get factor suffixes.
    pub fn direct_product(&self, other: &Self) -> Self {
        let mut orders = self.orders.clone();
        orders.extend(&other.orders);
        let clash = self.names.iter().any(|n| other.names.contains(n));
        let names = if clash {
            let l: Vec<String> = self.names.iter().map(|n| format!("{n}_1")).collect();
            let r = other.names.iter().map(|n| format!("{n}_2"));
            l.into_iter().chain(r).collect()
        } else {
            self.names.iter().chain(&other.names).cloned().collect()
        };
        Self::with_names(orders.clone(), names)
            .unwrap_or_else(|_| Self::new(orders).expect("positive orders"))
    }

    pub fn embed_left(&self, other: &Self, g: &GroupElement) -> GroupElement {
        let mut v = g.0.clone();
        v.extend(std::iter::repeat_n(0, other.rank()));
        GroupElement(v)
    }

    pub fn embed_right(&self, g: &GroupElement) -> GroupElement {
        let mut v = vec![0; self.rank()];
        v.extend(&g.0);
        GroupElement(v)
    }

    pub fn pair(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let mut v = g.0.clone();
        v.extend(&h.0);
        GroupElement(v)
    }

    /// Generator word such as `a^3.b`; the identity prints as `e`.
    pub fn format(&self, g: &GroupElement) -> String {
        let parts: Vec<String> =
            g.0.iter()
                .zip(&self.names)
                .filter(|(r, _)| **r != 0)
                .map(|(r, n)| {
                    if *r == 1 {
                        n.clone()
                    } else {
                        format!("{n}^{r}")
                    }
                })
                .collect();
        if parts.is_empty() {
            "e".into()
        } else {
            parts.join(".")
        }
    }

    /// Parses a generator word (`e`, `a^3.b`) or a residue tuple (`(3,1)`).
    pub fn parse(&self, s: &str) -> Result<GroupElement> {
        let s = s.trim();
        if s == "e" || s == "1" {
            return Ok(self.identity());
        }
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let v: std::result::Result<Vec<i64>, _> = inner
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| t.trim().parse::<i64>())
                .collect();
            let v = v.map_err(|_| Error::parse(format!("bad residue tuple '{s}'")))?;
            if v.len() != self.rank() {
                return Err(Error::domain(format!(
                    "tuple '{s}' has wrong length for {self}"
                )));
            }
            return Ok(GroupElement(
                v.iter()
                    .zip(&self.orders)
                    .map(|(x, o)| x.rem_euclid(*o as i64) as u32)
                    .collect(),
            ));
        }
        let mut acc = self.identity();
        for part in s.split('.') {
            let (name, exp) = match part.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| Error::parse(format!("bad exponent in '{part}'")))?,
                ),
                None => (part, 1),
            };
            let i = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::domain(format!("unknown generator '{name}' in '{s}'")))?;
            acc = self.op(&acc, &self.pow(&self.generator_raw(i), exp));
        }
        Ok(acc)
    }

    fn generator_raw(&self, i: usize) -> GroupElement {
        let mut v = vec![0; self.rank()];
        v[i] = 1 % self.orders[i];
        GroupElement(v)
    }

    /// The quotient `G/<g>` as a product of cyclic factors with its projection.
    pub fn quotient_by(&self, g: &GroupElement) -> Result<(FiniteAbelianGroup, Projection)> {
        self.check(g)?;
        let r = self.rank();
        // Relation rows: n_i e_i and g.
        let mut m: Vec<Vec<i64>> = (0..r)
            .map(|i| {
                let mut row = vec![0i64; r];
                row[i] = self.orders[i] as i64;
                row
            })
            .collect();
        m.push(g.0.iter().map(|&x| x as i64).collect());
        let (diag, v) = diagonalize(m, r);
        let kept: Vec<usize> = (0..r).filter(|&i| diag[i] > 1).collect();
        let orders: Vec<u32> = kept.iter().map(|&i| diag[i] as u32).collect();
        let mut proj = Projection {
            source: self.clone(),
            v,
            moduli: diag,
            kept,
            target: FiniteAbelianGroup::trivial(),
        };
        // Name a factor after an original generator that maps onto its generator.
        let mut names: Vec<String> = Vec::new();
        for j in 0..proj.kept.len() {
            let found = (0..r).find(|&i| {
                let img = proj.apply(&self.generator_raw(i));
                img.0
                    .iter()
                    .enumerate()
                    .all(|(k, &x)| x == u32::from(k == j))
            });
            let name = match found {
                Some(i) if !names.contains(&self.names[i]) => self.names[i].clone(),
                _ => format!("q{}", j + 1),
            };
            names.push(name);
        }
        proj.target = FiniteAbelianGroup::with_names(orders.clone(), names)
            .or_else(|_| FiniteAbelianGroup::new(orders))?;
        Ok((proj.target.clone(), proj))
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.orders.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .orders
            .iter()
            .zip(&self.names)
            .map(|(o, n)| format!("({n})_{o}"))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Canonical projection `G -> G/<g>`.
#[derive(Clone, Debug)]
pub struct Projection {
    source: FiniteAbelianGroup,
    /// Column transform from the diagonalization: x ↦ x·V.
    v: Vec<Vec<i64>>,
    moduli: Vec<i64>,
    kept: Vec<usize>,
    target: FiniteAbelianGroup,
}

impl Projection {
    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn target(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let r = self.v.len();
        let y: Vec<u32> = self
            .kept
            .iter()
            .map(|&j| {
                let s: i64 = (0..r).map(|i| x.0[i] as i64 * self.v[i][j]).sum();
                s.rem_euclid(self.moduli[j]) as u32
            })
            .collect();
        GroupElement(y)
    }

    /// All preimages of `y`.
    pub fn fiber(&self, y: &GroupElement) -> Vec<GroupElement> {
        self.source
            .elements()
            .filter(|x| self.apply(x) == *y)
            .collect()
    }
}

/// Diagonalizes an integer matrix with `cols` columns by unimodular row and
/// column operations; returns the diagonal (nonnegative) and the column
/// transform V.
fn diagonalize(mut m: Vec<Vec<i64>>, cols: usize) -> (Vec<i64>, Vec<Vec<i64>>) {
    let rows = m.len();
    let mut v: Vec<Vec<i64>> = (0..cols)
        .map(|i| (0..cols).map(|j| i64::from(i == j)).collect())
        .collect();
    for t in 0..cols.min(rows) {
        loop {
            // Pivot: smallest nonzero absolute value in the submatrix.
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[t][t] < 0 {
            for row in m.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
    }
    let diag = (0..cols)
        .map(|i| if i < rows { m[i][i] } else { 0 })
        .collect();
    (diag, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_and_index() {
        let g = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let all: Vec<_> = g.elements().collect();
        assert_eq!(all.len(), 8);
        for (i, x) in all.iter().enumerate() {
            assert_eq!(g.index(x), i);
        }
        assert_eq!(g.format(&GroupElement(vec![3, 1])), "a^3.b");
        assert_eq!(g.parse("a^3.b").unwrap(), GroupElement(vec![3, 1]));
        assert_eq!(g.parse("a^-1").unwrap(), GroupElement(vec![3, 0]));
        assert_eq!(g.parse("(5,1)").unwrap(), GroupElement(vec![1, 1]));
        assert!(g.parse("z").is_err());
    }

    #[test]
    fn quotient_z4_by_a2() {
        let g = FiniteAbelianGroup::cyclic(4);
        let (q, p) = g.quotient_by(&GroupElement(vec![2])).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(p.apply(&GroupElement(vec![1])), GroupElement(vec![1]));
        assert_eq!(p.apply(&GroupElement(vec![2])), q.identity());
    }

    #[test]
    fn quotient_by_identity() {
        let g = FiniteAbelianGroup::cyclic(4);
        let (q, _) = g.quotient_by(&g.identity()).unwrap();
        assert_eq!(q.order(), 4);
    }

    #[test]
    fn quotient_klein_by_diagonal() {
        // Oracle: brute-force cosets of <(1,1)>.
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let d = GroupElement(vec![1, 1]);
        let (q, p) = g.quotient_by(&d).unwrap();
        assert_eq!(q.order(), 2);
        let coset = |x: &GroupElement| {
            let mut c = vec![x.clone(), g.op(x, &d)];
            c.sort();
            c
        };
        for x in g.elements() {
            for y in g.elements() {
                assert_eq!(p.apply(&x) == p.apply(&y), coset(&x) == coset(&y));
            }
        }
    }

    #[test]
    fn element_orders() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        assert_eq!(g.element_order(&GroupElement(vec![2, 4])), 6);
        assert_eq!(g.element_order(&g.identity()), 1);
        assert_eq!(g.exponent(), 12);
    }
}
