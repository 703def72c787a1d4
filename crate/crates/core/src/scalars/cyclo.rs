//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)-1}, reduced modulo
//! the N-th cyclotomic polynomial Φ_N, so equal values have equal
//! coefficient vectors.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use super::rational::Q;
use crate::error::{Error, Result};

/// Precomputed data for one cyclotomic order.
#[derive(Debug)]
pub struct CycloField {
    pub order: u32,
    pub degree: usize,
    /// Φ_N, low degree first, monic.
    pub phi_poly: Vec<i64>,
    /// `pow[k]` is ζ^k reduced, as sparse `(index, coefficient)` pairs, k < N.
    pow: Vec<Vec<(usize, i64)>>,
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den monic
    let mut rem = num.to_vec();
    let dl = den.len();
    let mut quot = vec![0i64; num.len() + 1 - dl];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dl - 1];
        quot[i] = c;
        if c != 0 {
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

fn cyclotomic_poly(n: u32, cache: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = cache.get(&n) {
        return p.clone();
    }
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let q = cyclotomic_poly(d, cache);
            p = poly_div_exact(&p, &q);
        }
    }
    cache.insert(n, p.clone());
    p
}

impl CycloField {
    fn build(order: u32) -> CycloField {
        let mut cache = HashMap::new();
        let phi_poly = cyclotomic_poly(order, &mut cache);
        let degree = phi_poly.len() - 1;
        let mut pow = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            pow.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
            // multiply by ζ
            let top = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
            if top != 0 {
                for (j, nj) in next.iter_mut().enumerate() {
                    *nj -= top * phi_poly[j];
                }
            }
            cur = next;
        }
        CycloField {
            order,
            degree,
            phi_poly,
            pow,
        }
    }

    pub fn get(order: u32) -> Arc<CycloField> {
        assert!(order >= 1, "cyclotomic order must be positive");
        static FIELDS: OnceLock<RwLock<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
        let map = FIELDS.get_or_init(|| RwLock::new(HashMap::new()));
        if let Some(f) = map.read().unwrap().get(&order) {
            return f.clone();
        }
        let mut w = map.write().unwrap();
        w.entry(order)
            .or_insert_with(|| Arc::new(CycloField::build(order)))
            .clone()
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u32, b: u32) -> u32 {
    (a as u64 / gcd(a as u64, b as u64) * b as u64) as u32
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<CycloField>,
    coeffs: Vec<Q>,
}

impl PartialEq for CycloNumber {
    fn eq(&self, o: &Self) -> bool {
        if self.field.order == o.field.order {
            return self.coeffs == o.coeffs;
        }
        let m = lcm(self.order(), o.order());
        self.lift(m).coeffs == o.lift(m).coeffs
    }
}

impl Eq for CycloNumber {}

impl std::hash::Hash for CycloNumber {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.coeffs.hash(state);
    }
}

impl CycloNumber {
    pub fn zero(order: u32) -> Self {
        let field = CycloField::get(order);
        let coeffs = vec![Q::ZERO; field.degree];
        CycloNumber { field, coeffs }
    }

    pub fn one(order: u32) -> Self {
        Self::from_q(order, Q::ONE)
    }

    pub fn from_q(order: u32, q: Q) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_q(order, Q::from_int(n))
    }

    /// ζ_N^k.
    pub fn root(order: u32, k: i64) -> Self {
        let field = CycloField::get(order);
        let kk = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![Q::ZERO; field.degree];
        for &(i, c) in &field.pow[kk] {
            coeffs[i] = Q::from_int(c);
        }
        CycloNumber { field, coeffs }
    }

    pub fn from_coeffs(order: u32, coeffs: Vec<Q>) -> Result<Self> {
        let field = CycloField::get(order);
        if coeffs.len() > order as usize {
            return Err(Error::domain(format!(
                "too many coefficients for order {order}"
            )));
        }
        // Reduce arbitrary power-sum input.
        let mut out = vec![Q::ZERO; field.degree];
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &field.pow[k] {
                out[i] = out[i].add_ref(&c.mul_ref(&Q::from_int(p)));
            }
        }
        Ok(CycloNumber { field, coeffs: out })
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Q::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Q::is_zero)
    }

    /// The rational value, if the number lies in Q.
    pub fn as_rational(&self) -> Option<&Q> {
        if self.coeffs[1..].iter().all(Q::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn same_order<'a>(
        &'a self,
        o: &'a Self,
    ) -> (std::borrow::Cow<'a, Self>, std::borrow::Cow<'a, Self>) {
        use std::borrow::Cow;
        if self.order() == o.order() {
            (Cow::Borrowed(self), Cow::Borrowed(o))
        } else {
            let m = lcm(self.order(), o.order());
            (Cow::Owned(self.lift(m)), Cow::Owned(o.lift(m)))
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let (a, b) = self.same_order(o);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.add_ref(y))
            .collect();
        CycloNumber {
            field: a.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let (a, b) = self.same_order(o);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x.sub_ref(y))
            .collect();
        CycloNumber {
            field: a.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(Q::neg_ref).collect(),
        }
    }

    pub fn scale(&self, q: &Q) -> Self {
        CycloNumber {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c.mul_ref(q)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b) = self.same_order(o);
        if let Some(q) = b.as_rational() {
            return a.scale(q);
        }
        if let Some(q) = a.as_rational() {
            return b.scale(q);
        }
        let f = &a.field;
        let d = f.degree;
        let mut full = vec![Q::ZERO; 2 * d - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                full[i + j] = full[i + j].add_ref(&x.mul_ref(y));
            }
        }
        let mut out: Vec<Q> = full[..d].to_vec();
        for (k, c) in full.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &f.pow[k % f.order as usize] {
                out[i] = out[i].add_ref(&c.mul_ref(&Q::from_int(p)));
            }
        }
        CycloNumber {
            field: f.clone(),
            coeffs: out,
        }
    }

    /// `self += a * b`
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        let p = a.mul(b);
        *self = self.add(&p);
    }

    /// Complex conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let f = &self.field;
        let n = f.order as usize;
        let mut out = vec![Q::ZERO; f.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &f.pow[(n - j) % n] {
                out[i] = out[i].add_ref(&c.mul_ref(&Q::from_int(p)));
            }
        }
        CycloNumber {
            field: f.clone(),
            coeffs: out,
        }
    }

    pub fn is_real(&self) -> bool {
        self.order() <= 2 || self.conj() == *self
    }

    /// Embeds into Q(ζ_M) through ζ_N = ζ_M^{M/N}.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.order()),
            "cannot lift order {} to {}",
            self.order(),
            m
        );
        if m == self.order() {
            return self.clone();
        }
        let step = (m / self.order()) as usize;
        let field = CycloField::get(m);
        let mut out = vec![Q::ZERO; field.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in &field.pow[(j * step) % m as usize] {
                out[i] = out[i].add_ref(&c.mul_ref(&Q::from_int(p)));
            }
        }
        CycloNumber { field, coeffs: out }
    }

    pub fn try_lift(&self, m: u32) -> Result<Self> {
        if m == 0 || !m.is_multiple_of(self.order()) {
            return Err(Error::domain(format!(
                "order {} does not divide {}",
                self.order(),
                m
            )));
        }
        Ok(self.lift(m))
    }

    /// Expresses the value in Q(ζ_M) for `M | N`, if it lies in that subfield.
    pub fn project(&self, m: u32) -> Option<Self> {
        if !self.order().is_multiple_of(m) {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_q(m, q.clone()));
        }
        let small = CycloField::get(m);
        // Columns: lifts of the power basis of Q(ζ_M).
        let cols: Vec<Vec<Q>> = (0..small.degree)
            .map(|j| Self::root(m, j as i64).lift(self.order()).coeffs)
            .collect();
        let sol = super::linalg::solve_rational(&cols, &self.coeffs)?;
        Some(CycloNumber {
            field: small,
            coeffs: sol,
        })
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Arithmetic("inversion of zero".into()));
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_q(self.order(), q.recip()));
        }
        let f = &self.field;
        let phi: Vec<Q> = f.phi_poly.iter().map(|&c| Q::from_int(c)).collect();
        let a = trim(self.coeffs.clone());
        // s*a + t*phi = g
        let (g, s) = ext_euclid(&a, &phi);
        // g is a nonzero constant because Φ_N is irreducible.
        debug_assert_eq!(g.len(), 1);
        let gi = g[0].recip();
        let mut coeffs = vec![Q::ZERO; f.degree];
        let s = poly_rem(&s, &phi);
        for (i, c) in s.into_iter().enumerate() {
            coeffs[i] = c.mul_ref(&gi);
        }
        Ok(CycloNumber {
            field: f.clone(),
            coeffs,
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    /// If the value equals ζ_N^k for some k, returns k.
    pub fn root_exponent(&self) -> Option<u32> {
        (0..self.order()).find(|&k| Self::root(self.order(), k as i64) == *self)
    }

    /// Floating-point approximation of the real part.
    pub fn approx_re(&self) -> f64 {
        let n = self.order() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| c.to_f64() * (2.0 * std::f64::consts::PI * j as f64 / n).cos())
            .sum()
    }

    /// Sign of a real element. Exact for rationals; for irrational values a
    /// rounding-error bound is checked and `None` is returned when the
    /// approximation cannot certify the sign.
    pub fn real_sign(&self) -> Option<i32> {
        if self.is_zero() {
            return Some(0);
        }
        if let Some(q) = self.as_rational() {
            return Some(q.signum());
        }
        let approx = self.approx_re();
        let mag: f64 = self.coeffs.iter().map(|c| c.to_f64().abs()).sum();
        let bound = 1e-10 * mag.max(1.0);
        if approx.abs() > bound {
            Some(if approx > 0.0 { 1 } else { -1 })
        } else {
            None
        }
    }

    /// Parses `c0 + c1*z + c2*z^3 - 1/2*z^5` style literals, `z` the primitive root.
    pub fn parse(s: &str, order: u32) -> Result<Self> {
        let s = s.trim();
        let s = s
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(s);
        let mut acc = Self::zero(order);
        let mut terms = Vec::new();
        let mut cur = String::new();
        for ch in s.chars() {
            if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('*')
            {
                terms.push(cur.clone());
                cur.clear();
            }
            cur.push(ch);
        }
        if !cur.trim().is_empty() {
            terms.push(cur);
        }
        if terms.is_empty() {
            return Err(Error::parse(format!("empty scalar literal '{s}'")));
        }
        for t in terms {
            let t: String = t.chars().filter(|c| !c.is_whitespace()).collect();
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b.to_string()),
                None => (false, t.strip_prefix('+').unwrap_or(&t).to_string()),
            };
            let mut val = Self::one(order);
            for factor in body.split('*') {
                if factor.is_empty() {
                    return Err(Error::parse(format!("malformed scalar term '{t}'")));
                }
                if let Some(rest) = factor.strip_prefix('z') {
                    let k: i64 = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^')
                            .and_then(|e| e.parse().ok())
                            .ok_or_else(|| Error::parse(format!("bad exponent in '{factor}'")))?
                    };
                    val = val.mul(&Self::root(order, k));
                } else {
                    let q = Q::parse(factor)
                        .ok_or_else(|| Error::parse(format!("bad rational '{factor}'")))?;
                    val = val.scale(&q);
                }
            }
            acc = if neg { acc.sub(&val) } else { acc.add(&val) };
        }
        Ok(acc)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        write!(f, "(")?;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let abs = if neg { c.neg_ref() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match j {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if j == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{j}")?;
                    }
                }
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[N={}]", self, self.order())
    }
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.len() > 1 && p.last().is_some_and(Q::is_zero) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Q::ZERO);
    }
    p
}

fn is_zero_poly(p: &[Q]) -> bool {
    p.iter().all(Q::is_zero)
}

fn poly_divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    if r.len() < b.len() {
        return (vec![Q::ZERO], r);
    }
    let lead_inv = b.last().unwrap().recip();
    let mut q = vec![Q::ZERO; r.len() - b.len() + 1];
    while r.len() >= b.len() && !is_zero_poly(&r) {
        let shift = r.len() - b.len();
        let c = r.last().unwrap().mul_ref(&lead_inv);
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] = r[shift + j].sub_ref(&c.mul_ref(bj));
        }
        q[shift] = c;
        r.pop();
        r = trim(r);
        if r.len() < b.len() {
            break;
        }
    }
    (trim(q), r)
}

fn poly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    poly_divrem(a, b).1
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add_ref(&x.mul_ref(y));
        }
    }
    trim(out)
}

fn poly_sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let mut out = vec![Q::ZERO; n];
    for (i, x) in a.iter().enumerate() {
        out[i] = x.clone();
    }
    for (i, y) in b.iter().enumerate() {
        out[i] = out[i].sub_ref(y);
    }
    trim(out)
}

/// Returns (g, s) with s*a ≡ g (mod b).
fn ext_euclid(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![Q::ONE], vec![Q::ZERO]);
    while !is_zero_poly(&r1) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}
