//! Catalog of real graded division algebras (and a few non-division
//! gradings used as comparison points).
//!
//! Ids: `r`, `c2`, `m2`, `m2-elem`, `m2-2`, `m2-4`, `h`, `h2`, `h4`, `m2-8`,
//! `m2c-z4`, `pauli(n,...)`, `pauli-regular(k)`, `d-cyclic(m,eps)`,
//! `d-two(k,l,mu,nu)`, `e(eps,n)`, `twisted(o1,..,or|N|t12,t13,..)`, and
//! tensor products joined by `*`, e.g. `c2*m2-4*m2-4`.

use super::closure::{closure, from_matrix_basis, CMat, HomMat};
use super::GradedAlgebra;
use crate::error::{Error, Result};
use crate::groups::{FiniteAbelianGroup, GroupElement};
use crate::scalars::{lcm, CycloNumber};

const MAX_CLOSURE_DIM: usize = 512;

fn ge(v: &[u32]) -> GroupElement {
    GroupElement(v.to_vec())
}

fn named(orders: &[u32], names: &[&str]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::with_names(
        orders.to_vec(),
        names.iter().map(|s| s.to_string()).collect(),
    )
    .expect("catalog group")
}

/// The Pauli matrices I, A, B, C = AB over Q(ζ_N).
pub fn pauli_2x2(order: u32) -> [CMat; 4] {
    [
        CMat::from_ints(order, &[&[1, 0], &[0, 1]]),
        CMat::from_ints(order, &[&[1, 0], &[0, -1]]),
        CMat::from_ints(order, &[&[0, 1], &[1, 0]]),
        CMat::from_ints(order, &[&[0, 1], &[-1, 0]]),
    ]
}

fn mat_units(order: u32) -> [CMat; 4] {
    [
        CMat::from_ints(order, &[&[1, 0], &[0, 0]]),
        CMat::from_ints(order, &[&[0, 1], &[0, 0]]),
        CMat::from_ints(order, &[&[0, 0], &[1, 0]]),
        CMat::from_ints(order, &[&[0, 0], &[0, 1]]),
    ]
}

pub fn field_r() -> GradedAlgebra {
    let one = HomMat::new("1", ge(&[]), CMat::identity(1, 1));
    from_matrix_basis("r", FiniteAbelianGroup::trivial(), 1, vec![one]).expect("catalog")
}

/// ℂ with its ℤ2-grading, i in the odd component.
pub fn c2() -> GradedAlgebra {
    let g = named(&[2], &["a"]);
    let i = CMat::from_rows(vec![vec![CycloNumber::root(4, 1)]]);
    from_matrix_basis(
        "c2",
        g,
        4,
        vec![
            HomMat::new("1", ge(&[0]), CMat::identity(1, 4)),
            HomMat::new("i", ge(&[1]), i),
        ],
    )
    .expect("catalog")
}

/// M2(ℝ), trivially graded.
pub fn m2() -> GradedAlgebra {
    let [e11, e12, e21, e22] = mat_units(1);
    let b = vec![
        HomMat::new("E11", ge(&[]), e11),
        HomMat::new("E12", ge(&[]), e12),
        HomMat::new("E21", ge(&[]), e21),
        HomMat::new("E22", ge(&[]), e22),
    ];
    from_matrix_basis("m2", FiniteAbelianGroup::trivial(), 1, b).expect("catalog")
}

/// M2(ℝ) with the elementary ℤ2-grading (diagonal even, off-diagonal odd).
pub fn m2_elem() -> GradedAlgebra {
    let [e11, e12, e21, e22] = mat_units(1);
    let g = named(&[2], &["a"]);
    let b = vec![
        HomMat::new("E11", ge(&[0]), e11),
        HomMat::new("E22", ge(&[0]), e22),
        HomMat::new("E12", ge(&[1]), e12),
        HomMat::new("E21", ge(&[1]), e21),
    ];
    from_matrix_basis("m2-elem", g, 1, b).expect("catalog")
}

/// M2(ℝ) with the ℤ2×ℤ2 Pauli grading.
pub fn m2_4() -> GradedAlgebra {
    let [i, a, b, c] = pauli_2x2(1);
    let g = named(&[2, 2], &["a", "b"]);
    let basis = vec![
        HomMat::new("I", ge(&[0, 0]), i),
        HomMat::new("A", ge(&[1, 0]), a),
        HomMat::new("B", ge(&[0, 1]), b),
        HomMat::new("C", ge(&[1, 1]), c),
    ];
    from_matrix_basis("m2-4", g, 1, basis).expect("catalog")
}

/// M2(ℝ) with the ℤ2-grading S_e = ⟨I, C⟩, S_a = ⟨A, B⟩.
pub fn m2_2() -> GradedAlgebra {
    let base = m2_4();
    let c = ge(&[1, 1]);
    let (mut a, _) = base.coarsen_by_quotient(&c).expect("catalog");
    a = a.with_group(named(&[2], &["a"])).expect("catalog");
    a.set_name("m2-2");
    a
}

fn quaternion_mats() -> [CMat; 4] {
    let i = CycloNumber::root(4, 1);
    let z = CycloNumber::zero(4);
    let one = CycloNumber::one(4);
    let qi = CMat::from_rows(vec![vec![i.clone(), z.clone()], vec![z.clone(), i.neg()]]);
    let qj = CMat::from_rows(vec![vec![z.clone(), one.clone()], vec![one.neg(), z]]);
    let qk = qi.mul(&qj);
    [CMat::identity(2, 4), qi, qj, qk]
}

/// Quaternions, trivially graded.
pub fn h() -> GradedAlgebra {
    let [one, i, j, k] = quaternion_mats();
    let e = ge(&[]);
    let b = vec![
        HomMat::new("1", e.clone(), one),
        HomMat::new("i", e.clone(), i),
        HomMat::new("j", e.clone(), j),
        HomMat::new("k", e, k),
    ];
    from_matrix_basis("h", FiniteAbelianGroup::trivial(), 4, b).expect("catalog")
}

/// Quaternions with the ℤ2×ℤ2-grading.
pub fn h4() -> GradedAlgebra {
    let [one, i, j, k] = quaternion_mats();
    let g = named(&[2, 2], &["a", "b"]);
    let b = vec![
        HomMat::new("1", ge(&[0, 0]), one),
        HomMat::new("i", ge(&[1, 0]), i),
        HomMat::new("j", ge(&[0, 1]), j),
        HomMat::new("k", ge(&[1, 1]), k),
    ];
    from_matrix_basis("h4", g, 4, b).expect("catalog")
}

/// Quaternions with the ℤ2-grading S_e = ⟨1, i⟩, S_a = ⟨j, k⟩.
pub fn h2() -> GradedAlgebra {
    let (mut a, _) = h4().coarsen_by_quotient(&ge(&[1, 0])).expect("catalog");
    a = a.with_group(named(&[2], &["a"])).expect("catalog");
    a.set_name("h2");
    a
}

/// M2(ℂ) with the ℤ4×ℤ2 division grading generated by ωA and C.
pub fn m2_8() -> GradedAlgebra {
    let [_, a, _, c] = pauli_2x2(8);
    let w = CycloNumber::root(8, 1);
    let g = named(&[4, 2], &["a", "b"]);
    let gens = vec![
        HomMat::new("wA", ge(&[1, 0]), a.scale(&w)),
        HomMat::new("C", ge(&[0, 1]), c),
    ];
    closure("m2-8", g, 8, gens, MAX_CLOSURE_DIM).expect("catalog")
}

/// M2(ℂ) with the ℤ4-grading obtained from `m2-8` by forgetting b.
pub fn m2c_z4() -> GradedAlgebra {
    let (mut a, _) = m2_8().coarsen_by_quotient(&ge(&[0, 1])).expect("catalog");
    a = a.with_group(named(&[4], &["a"])).expect("catalog");
    a.set_name("m2c-z4");
    a
}

/// Pauli grading of M_n(ℂ) (complex Kronecker product over the factors),
/// as a real algebra with the central i in the neutral component.
pub fn pauli(ns: &[u32]) -> Result<GradedAlgebra> {
    if ns.is_empty() {
        return Err(Error::precondition("at least one Pauli factor is required"));
    }
    if ns.iter().any(|&n| n < 2) {
        return Err(Error::precondition("n ≥ 2 required"));
    }
    let names: Vec<String> = if ns.len() == 1 {
        vec!["x".into(), "y".into()]
    } else {
        (1..=ns.len())
            .flat_map(|i| [format!("x{i}"), format!("y{i}")])
            .collect()
    };
    let id = format!(
        "pauli({})",
        ns.iter()
            .map(|n| n.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    pauli_named(ns, names, &id)
}

/// Regular Pauli grading of M_{2^k}(ℂ) with generator names a_i, b_i.
pub fn pauli_regular(k: u32) -> Result<GradedAlgebra> {
    if k == 0 {
        return Err(Error::precondition("k ≥ 1 required"));
    }
    let ns = vec![2; k as usize];
    let names = (1..=k)
        .flat_map(|i| [format!("a{i}"), format!("b{i}")])
        .collect();
    pauli_named(&ns, names, &format!("pauli-regular({k})"))
}

fn pauli_named(ns: &[u32], names: Vec<String>, id: &str) -> Result<GradedAlgebra> {
    let order = ns.iter().fold(4, |acc, &n| lcm(acc, n));
    let orders: Vec<u32> = ns.iter().flat_map(|&n| [n, n]).collect();
    let group = FiniteAbelianGroup::with_names(orders, names)?;
    let size: usize = ns.iter().map(|&n| n as usize).product();
    let dim = 2 * size * size;
    if dim > MAX_CLOSURE_DIM {
        return Err(Error::resource(format!(
            "Pauli algebra of real dimension {dim} exceeds {MAX_CLOSURE_DIM}"
        )));
    }
    let mut gens = Vec::new();
    for (f, &n) in ns.iter().enumerate() {
        let eps = CycloNumber::root(n, 1).lift(order);
        let nn = n as usize;
        let mut clock = vec![vec![CycloNumber::zero(order); nn]; nn];
        let mut shift = vec![vec![CycloNumber::zero(order); nn]; nn];
        let mut p = CycloNumber::one(order);
        for j in 0..nn {
            clock[j][j] = p.clone();
            p = p.mul(&eps);
            shift[(j + 1) % nn][j] = CycloNumber::one(order);
        }
        let (mut x, mut y) = (CMat::identity(1, order), CMat::identity(1, order));
        for (g, &m) in ns.iter().enumerate() {
            if g == f {
                x = x.kron(&CMat::from_rows(clock.clone()));
                y = y.kron(&CMat::from_rows(shift.clone()));
            } else {
                x = x.kron(&CMat::identity(m as usize, order));
                y = y.kron(&CMat::identity(m as usize, order));
            }
        }
        let mut dx = vec![0; 2 * ns.len()];
        dx[2 * f] = 1;
        let mut dy = vec![0; 2 * ns.len()];
        dy[2 * f + 1] = 1;
        let suffix = if ns.len() == 1 {
            String::new()
        } else {
            (f + 1).to_string()
        };
        gens.push(HomMat::new(format!("X{suffix}"), GroupElement(dx), x));
        gens.push(HomMat::new(format!("Y{suffix}"), GroupElement(dy), y));
    }
    let j = CMat::identity(size, order).scale(&CycloNumber::root(4, 1));
    gens.push(HomMat::new("J", group.identity(), j));
    closure(id, group, order, gens, MAX_CLOSURE_DIM)
}

/// ℝ[x]/(x^m - eps) graded by ℤm with x of degree g.
pub fn d_cyclic(m: u32, eps: i64) -> Result<GradedAlgebra> {
    if m < 2 {
        return Err(Error::precondition("m > 1 required"));
    }
    if eps != 1 && eps != -1 {
        return Err(Error::precondition("eps must be 1 or -1"));
    }
    let order = if eps == 1 { 1 } else { 2 * m };
    let mu = if eps == 1 {
        CycloNumber::one(1)
    } else {
        CycloNumber::root(2 * m, 1)
    };
    let g = named(&[m], &["g"]);
    let gens = vec![HomMat::new("x", ge(&[1]), CMat::from_rows(vec![vec![mu]]))];
    closure(
        &format!("d-cyclic({m},{eps})"),
        g,
        order,
        gens,
        MAX_CLOSURE_DIM,
    )
}

fn is_pow2(n: u32) -> bool {
    n >= 2 && n.is_power_of_two()
}

fn root_of_sign(k: u32, s: i64) -> (u32, CycloNumber) {
    if s == 1 {
        (1, CycloNumber::one(1))
    } else {
        (2 * k, CycloNumber::root(2 * k, 1))
    }
}

/// Subalgebra of ℝ(ℤk×ℤl) ⊗ M2(ℂ) generated by u = g⊗εA and v = h⊗ηB.
pub fn d_two(k: u32, l: u32, mu: i64, nu: i64) -> Result<GradedAlgebra> {
    if !is_pow2(k) || !is_pow2(l) {
        return Err(Error::precondition(
            "k and l must be powers of 2 (at least 2)",
        ));
    }
    if ![1, -1].contains(&mu) || ![1, -1].contains(&nu) {
        return Err(Error::precondition("mu and nu must be 1 or -1"));
    }
    let (o1, eps) = root_of_sign(k, mu);
    let (o2, eta) = root_of_sign(l, nu);
    let order = lcm(o1, o2);
    let [_, a, b, _] = pauli_2x2(order);
    let g = named(&[k, l], &["g", "h"]);
    let gens = vec![
        HomMat::new("u", ge(&[1, 0]), a.scale(&eps.lift(order))),
        HomMat::new("v", ge(&[0, 1]), b.scale(&eta.lift(order))),
    ];
    closure(
        &format!("d-two({k},{l},{mu},{nu})"),
        g,
        order,
        gens,
        MAX_CLOSURE_DIM,
    )
}

/// Subalgebra of ℝ(ℤn) ⊗ M2(ℂ) generated by u = 1⊗C and v = g⊗εA.
pub fn e_alg(eps: i64, n: u32) -> Result<GradedAlgebra> {
    if !is_pow2(n) {
        return Err(Error::precondition("n must be a power of 2 (at least 2)"));
    }
    if eps != 1 && eps != -1 {
        return Err(Error::precondition("eps must be 1 or -1"));
    }
    let [_, a, _, c] = pauli_2x2(1);
    let g = named(&[n], &["g"]);
    let gens = vec![
        HomMat::new("u", ge(&[0]), c),
        HomMat::new("v", ge(&[1]), a.scale(&CycloNumber::from_int(1, eps))),
    ];
    closure(&format!("e({eps},{n})"), g, 1, gens, MAX_CLOSURE_DIM)
}

/// The complex twisted group algebra ℂ^σ G viewed as a real algebra, with
/// σ(g,h) = ∏_{i>j} β(g_i,g_j)^{a_i b_j} on normal forms.
pub fn twisted(orders: &[u32], order: u32, upper: &[u32]) -> Result<GradedAlgebra> {
    let r = orders.len();
    if upper.len() != r * r.saturating_sub(1) / 2 {
        return Err(Error::parse("twisted: wrong number of table entries"));
    }
    let mut table = vec![vec![0u32; r]; r];
    let mut it = upper.iter();
    for i in 0..r {
        for j in i + 1..r {
            let t = it.next().unwrap() % order;
            table[i][j] = t;
            table[j][i] = (order - t) % order;
        }
    }
    let group = FiniteAbelianGroup::new(orders.to_vec())?;
    crate::bichar::Bicharacter::new(group.clone(), order, table.clone())?;
    let big = lcm(order, 4);
    let sigma_exp = |g: &GroupElement, h: &GroupElement| -> u32 {
        let mut s = 0u64;
        for i in 0..r {
            for j in 0..i {
                s += g.0[i] as u64 * h.0[j] as u64 * table[i][j] as u64;
            }
        }
        (s % order as u64) as u32 * (big / order)
    };
    let n = group.order();
    let dim = 2 * n;
    let mut labels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for gi in 0..n {
        let g = group.element(gi);
        labels.push(format!("u[{}]", group.format(&g)));
        labels.push(format!("iu[{}]", group.format(&g)));
        degrees.push(g.clone());
        degrees.push(g);
    }
    let half = crate::scalars::Q::new(1, 2);
    let i4 = CycloNumber::root(big, big as i64 / 4);
    let mut mult = vec![vec![Vec::new(); dim]; dim];
    for gi in 0..n {
        for hi in 0..n {
            let (g, h) = (group.element(gi), group.element(hi));
            let k = group.index(&group.op(&g, &h));
            let s = CycloNumber::root(big, sigma_exp(&g, &h) as i64);
            for a in 0..2 {
                for b in 0..2 {
                    // J^{a+b} σ u_k, J^2 = -1.
                    let mut c = s.clone();
                    if a + b == 2 {
                        c = c.neg();
                    }
                    let jpow = (a + b) % 2;
                    let re = c.add(&c.conj()).scale(&half);
                    let im = c.sub(&c.conj()).mul(&i4.inv().unwrap()).scale(&half);
                    // c·J^jpow u_k = re J^jpow u_k + im J^{jpow+1} u_k
                    let mut v = Vec::new();
                    let (slot0, slot1) = (2 * k + jpow, 2 * k + (1 - jpow));
                    let sign1 = if jpow == 1 { im.neg() } else { im };
                    v.push((slot0, re));
                    v.push((slot1, sign1));
                    v.sort_by_key(|(i, _)| *i);
                    mult[2 * gi + a][2 * hi + b] = v;
                }
            }
        }
    }
    let e = group.index(&group.identity());
    let unit = vec![(2 * e, CycloNumber::one(big))];
    let id = format!(
        "twisted({}|{}|{})",
        orders
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(","),
        order,
        upper
            .iter()
            .map(|o| o.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    GradedAlgebra::new(id, group, big, labels, degrees, mult, unit)
}

fn parse_args(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::parse(format!("bad catalog parameter '{t}'")))
        })
        .collect()
}

fn to_u32(v: i64, what: &str) -> Result<u32> {
    u32::try_from(v)
        .map_err(|_| Error::precondition(format!("{what} must be a nonnegative integer")))
}

fn build_one(id: &str) -> Result<GradedAlgebra> {
    let id = id.trim();
    let (head, args) = match id.find('(') {
        Some(p) => {
            let inner = id[p + 1..]
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(format!("unbalanced parentheses in '{id}'")))?;
            (&id[..p], Some(inner))
        }
        None => (id, None),
    };
    let plain = |a: GradedAlgebra| -> Result<GradedAlgebra> {
        if args.is_some() {
            return Err(Error::parse(format!("'{head}' takes no parameters")));
        }
        Ok(a)
    };
    match head {
        "r" => plain(field_r()),
        "c2" => plain(c2()),
        "m2" => plain(m2()),
        "m2-elem" => plain(m2_elem()),
        "m2-2" => plain(m2_2()),
        "m2-4" => plain(m2_4()),
        "h" => plain(h()),
        "h2" => plain(h2()),
        "h4" => plain(h4()),
        "m2-8" => plain(m2_8()),
        "m2c-z4" => plain(m2c_z4()),
        "pauli" => {
            let a = parse_args(args.ok_or_else(|| {
                Error::precondition("pauli needs n, e.g. pauli(3); n ≥ 2 required")
            })?)?;
            let ns = a
                .into_iter()
                .map(|v| to_u32(v, "n"))
                .collect::<Result<Vec<_>>>()?;
            pauli(&ns)
        }
        "pauli-regular" => {
            let a = parse_args(args.unwrap_or("1"))?;
            match a.as_slice() {
                [k] => pauli_regular(to_u32(*k, "k")?),
                _ => Err(Error::parse("pauli-regular takes one parameter")),
            }
        }
        "d-cyclic" => match parse_args(args.unwrap_or(""))?.as_slice() {
            [m, e] => d_cyclic(to_u32(*m, "m")?, *e),
            _ => Err(Error::parse("d-cyclic takes (m,eps)")),
        },
        "d-two" => match parse_args(args.unwrap_or(""))?.as_slice() {
            [k, l, mu, nu] => d_two(to_u32(*k, "k")?, to_u32(*l, "l")?, *mu, *nu),
            _ => Err(Error::parse("d-two takes (k,l,mu,nu)")),
        },
        "e" => match parse_args(args.unwrap_or(""))?.as_slice() {
            [e, n] => e_alg(*e, to_u32(*n, "n")?),
            _ => Err(Error::parse("e takes (eps,n)")),
        },
        "twisted" => {
            let parts: Vec<&str> = args.unwrap_or("").split('|').collect();
            if parts.len() != 3 {
                return Err(Error::parse(
                    "twisted takes (orders|N|upper-triangle exponents)",
                ));
            }
            let orders = parse_args(parts[0])?
                .into_iter()
                .map(|v| to_u32(v, "order"))
                .collect::<Result<Vec<_>>>()?;
            let n = to_u32(
                *parse_args(parts[1])?
                    .first()
                    .ok_or_else(|| Error::parse("missing N"))?,
                "N",
            )?;
            let up = parse_args(parts[2])?
                .into_iter()
                .map(|v| to_u32(v, "exponent"))
                .collect::<Result<Vec<_>>>()?;
            twisted(&orders, n, &up)
        }
        _ => Err(Error::parse(format!("unknown catalog id '{head}'"))),
    }
}

/// Builds a catalog algebra from its id; `*` forms tensor products.
pub fn build(id: &str) -> Result<GradedAlgebra> {
    let mut parts = id.split('*');
    let first = parts
        .next()
        .ok_or_else(|| Error::parse("empty catalog id"))?;
    let mut acc = build_one(first)?;
    for p in parts {
        acc = acc.tensor(&build_one(p)?);
    }
    if id.contains('*') {
        acc.set_name(id.trim());
        acc.add_note(
            "graded tensor product read as the plain tensor product with the product grading",
        );
    }
    Ok(acc)
}

/// All parameter-free ids plus representative parameterized ones.
pub fn standard_ids() -> Vec<&'static str> {
    vec![
        "r",
        "c2",
        "m2",
        "m2-elem",
        "m2-2",
        "m2-4",
        "h",
        "h2",
        "h4",
        "m2-8",
        "m2c-z4",
        "pauli(2)",
        "pauli(3)",
        "pauli(4)",
        "pauli-regular(2)",
        "d-cyclic(2,-1)",
        "d-cyclic(3,1)",
        "d-cyclic(4,-1)",
        "d-two(2,2,1,1)",
        "d-two(2,2,-1,1)",
        "d-two(4,2,-1,-1)",
        "e(1,2)",
        "e(-1,4)",
        "e(1,8)",
        "twisted(2,2|2|1)",
        "twisted(3,3|3|1)",
        "c2*m2-4",
    ]
}
