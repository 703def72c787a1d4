//! Acceptance criteria, one line each. Exact criteria have zero tolerance;
//! the floating-point oracle uses the pinned cutoffs in `common`.
//!
//! Criterion 7 runs only with GRADEDPI_LONG_RUNNING=1.

mod common;

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use common::{random_multilinear, Numeric, RANK_TOL, VANISH_TOL};
use gradedpi::algebras::{catalog, GradedAlgebra, Regularity};
use gradedpi::bichar::Bicharacter;
use gradedpi::freealg::ops::{evaluate_sparse, transfer_phi};
use gradedpi::freealg::GradedPolynomial;
use gradedpi::pitool::pauli::{self, PauliData};
use gradedpi::pitool::spaces::Engine;
use gradedpi::pitool::transfer::{has_minimal_center, transfer_basis};
use gradedpi::pitool::{
    check_membership, families, multilinear_identity_space, multisets, verify_basis, GeneratorSet,
    Mode, VerifyOptions,
};
use gradedpi::scalars::linalg::SparseVec;
use gradedpi::scalars::CycloNumber;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn line(text: &str) {
    let mut e = std::io::stderr().lock();
    let _ = writeln!(e, "{text}");
}

fn criterion(n: u32, title: &str, tolerance: &str, f: impl FnOnce() -> Outcome) -> bool {
    let t = Instant::now();
    let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        Err(p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default())
    });
    let secs = t.elapsed().as_secs_f64();
    let (tag, detail) = match &r {
        Ok(d) => ("PASS", d.clone()),
        Err(d) => ("FAIL", d.clone()),
    };
    line(&format!(
        "criterion {n} [{tag}] {title} | tolerance: {tolerance} | {secs:.1}s | {detail}"
    ));
    r.is_ok()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alg(id: &str) -> GradedAlgebra {
    catalog::build(id).unwrap_or_else(|e| panic!("{id}: {e}"))
}

fn beta_of(a: &GradedAlgebra) -> Bicharacter {
    match a.detect_regular() {
        Regularity::Regular(b) => b.with_group(a.group().clone()).expect("same group"),
        Regularity::NotRegular(w) => panic!("{} is not regular: {}", a.name(), w.reason),
    }
}

fn opts(max_degree: usize) -> VerifyOptions {
    VerifyOptions {
        max_degree,
        ..Default::default()
    }
}

/// Numeric spot check of up to `k` real-coefficient members on a small algebra.
fn numeric_spot_check(
    a: &GradedAlgebra,
    s: &GeneratorSet,
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<usize, String> {
    if a.dim() > 8 {
        return Ok(0);
    }
    let num = Numeric::new(a);
    let mut checked = 0;
    for (central, part) in [(false, &s.s1), (s.mode == Mode::Centrals, &s.s2)] {
        let step = (part.len() / k.max(1)).max(1);
        for m in part.iter().step_by(step) {
            let ok = if central {
                num.is_central(&m.poly, rng, 3)
            } else {
                num.vanishes(&m.poly, rng, 3)
            };
            ensure(ok, || {
                format!(
                    "numeric oracle rejects {} member {} on {}",
                    m.family,
                    m.poly,
                    a.name()
                )
            })?;
            checked += 1;
        }
    }
    Ok(checked)
}

fn c1_membership() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases: Vec<(String, GeneratorSet)> = vec![
        ("m2-elem".into(), families::dv_lemma()),
        ("m2-elem".into(), families::bp_central()),
        ("m2".into(), families::drensky()),
        ("h".into(), families::drensky()),
        ("m2".into(), families::okhitin()),
        ("h".into(), families::okhitin()),
    ];
    for id in [
        "m2-4",
        "h4",
        "c2*m2-4",
        "m2-8",
        "pauli-regular(1)",
        "pauli-regular(2)",
    ] {
        let b = beta_of(&alg(id));
        cases.push((id.into(), families::regular(&b, Mode::Identities)));
        cases.push((id.into(), families::regular(&b, Mode::Centrals)));
    }
    for id in [
        "m2c-z4", "e(1,2)", "e(-1,2)", "e(1,4)", "e(-1,4)", "e(1,8)", "e(-1,8)",
    ] {
        let a = alg(id);
        for mode in [Mode::Identities, Mode::Centrals] {
            cases.push((
                id.into(),
                families::cyclic_corollary(&a, mode).map_err(|e| format!("{id}: {e}"))?,
            ));
        }
    }
    for id in ["pauli(3)", "pauli(4)"] {
        let a = alg(id);
        for mode in [Mode::Identities, Mode::Centrals] {
            cases.push((
                id.into(),
                pauli::family_pauli(&a, 4, mode).map_err(|e| e.to_string())?,
            ));
        }
    }
    let p4 = alg("pauli(4)");
    let shape = pauli::seven_shape(&PauliData::of(&p4).unwrap()).unwrap();
    let mut s12 = pauli::family_pauli_for(&p4, &[shape], Mode::Identities).unwrap();
    s12.s1.retain(|m| m.family == "12");
    ensure(!s12.s1.is_empty(), || "no (12) instances".into())?;
    cases.push(("pauli(4)".into(), s12));

    let mut members = 0;
    let mut numeric = 0;
    for (id, s) in &cases {
        let a = alg(id);
        let s = families::with_off_support(s.clone(), &a);
        let fails =
            check_membership(&a, &s, &opts(4)).map_err(|e| format!("{id}/{}: {e}", s.name))?;
        ensure(fails.is_empty(), || {
            format!(
                "{id}/{} ({:?}): {} is not a member",
                s.name, s.mode, fails[0].polynomial
            )
        })?;
        members += s.len();
        numeric += numeric_spot_check(&a, &s, 12, &mut rng)?;
    }
    Ok(format!(
        "{} sets, {members} members exact, {numeric} numeric spot checks",
        cases.len()
    ))
}

fn complete(id: &str, s: GeneratorSet, deg: usize) -> Result<usize, String> {
    let a = alg(id);
    let s = families::with_off_support(s, &a);
    let r = verify_basis(&a, &s, &opts(deg)).map_err(|e| format!("{id}: {e}"))?;
    if let Some(f) = r.membership_failures.first() {
        return Err(format!("{id}/{}: {} is not a member", s.name, f.polynomial));
    }
    if let Some(m) = r.multidegrees.iter().find(|m| !m.equal) {
        return Err(format!(
            "{id}/{} ({:?}) incomplete at {:?}: space {} span {}",
            s.name, s.mode, m.degrees, m.space_dim, m.span_dim
        ));
    }
    Ok(r.multidegrees.len())
}

/// Engine space dimensions against the numeric oracle at every multidegree up to `deg`.
fn oracle_dims(id: &str, deg: usize, central: bool, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let a = alg(id);
    let num = Numeric::new(&a);
    let e = Engine::new(&a, Default::default());
    let mut n = 0;
    for d in multisets(&a.support(), deg) {
        let exact = if central {
            e.central_space(&d)
        } else {
            e.identity_space(&d)
        }
        .map_err(|e| e.to_string())?
        .rank();
        let approx = if central {
            num.central_dim(&d, rng)
        } else {
            num.identity_dim(&d, rng)
        };
        ensure(exact == approx, || {
            format!("{id} {d:?} central={central}: exact {exact}, oracle {approx}")
        })?;
        n += 1;
    }
    Ok(n)
}

fn c2_completeness() -> Outcome {
    let mut md = 0;
    md += complete("m2-elem", families::dv_lemma(), 4)?;
    md += complete("m2-elem", families::bp_central(), 4)?;
    for id in ["m2-4", "h4", "c2*m2-4", "m2-8"] {
        let b = beta_of(&alg(id));
        md += complete(id, families::regular(&b, Mode::Identities), 4)?;
        md += complete(id, families::regular(&b, Mode::Centrals), 4)?;
    }
    for id in ["m2c-z4", "e(1,4)", "e(-1,4)"] {
        let a = alg(id);
        for mode in [Mode::Identities, Mode::Centrals] {
            md += complete(
                id,
                families::cyclic_corollary(&a, mode).map_err(|e| e.to_string())?,
                4,
            )?;
        }
    }
    let p3 = alg("pauli(3)");
    for mode in [Mode::Identities, Mode::Centrals] {
        md += complete(
            "pauli(3)",
            pauli::family_pauli(&p3, 4, mode).map_err(|e| e.to_string())?,
            4,
        )?;
    }
    md += complete("m2", families::drensky(), 4)?;
    md += complete("m2", families::okhitin(), 4)?;
    // independent dimensions for the target spaces
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut od = 0;
    for id in ["m2-elem", "m2-4", "h4", "m2", "h"] {
        od += oracle_dims(id, 4, false, &mut rng)?;
    }
    for id in ["m2-elem", "m2-4", "m2"] {
        od += oracle_dims(id, 3, true, &mut rng)?;
    }
    Ok(format!(
        "{md} multidegrees equal; {od} space dimensions match the numeric oracle"
    ))
}

fn tensor_vec(x: &SparseVec, y: &SparseVec, m: usize) -> SparseVec {
    let mut v: SparseVec = Vec::new();
    for (i, a) in x {
        for (j, b) in y {
            v.push((i * m + j, a.mul(b)));
        }
    }
    v.sort_by_key(|p| p.0);
    v
}

fn same(x: &SparseVec, y: &SparseVec) -> bool {
    let mut d: BTreeMap<usize, CycloNumber> = BTreeMap::new();
    for (i, c) in x {
        d.insert(*i, c.clone());
    }
    for (i, c) in y {
        let v = match d.remove(i) {
            Some(p) => p.sub(c),
            None => c.neg(),
        };
        d.insert(*i, v);
    }
    d.values().all(|c| c.is_zero())
}

fn c3_transfer() -> Outcome {
    let a = alg("m2-elem");
    let r = alg("m2-4");
    let ar = a.tensor(&r);
    let mut md = 0;
    for s in [families::dv_lemma(), families::bp_central()] {
        let t = transfer_basis(&s, &r).map_err(|e| e.to_string())?;
        let t = families::with_off_support(t, &ar);
        let rep = verify_basis(&ar, &t, &opts(3)).map_err(|e| e.to_string())?;
        ensure(rep.membership_failures.is_empty(), || {
            format!(
                "{:?}: non-member {}",
                s.mode, rep.membership_failures[0].polynomial
            )
        })?;
        if let Some(m) = rep.multidegrees.iter().find(|m| !m.equal) {
            return Err(format!(
                "{:?} transfer incomplete at {:?}",
                s.mode, m.degrees
            ));
        }
        md += rep.multidegrees.len();
    }
    // substitution rule: φ_h(f)(a_i ⊗ r_i) = f(a_i) ⊗ r_1⋯r_n
    let beta = beta_of(&r);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let hs: Vec<_> = r.group().elements().collect();
    let mut evaluations = 0;
    for _ in 0..100 {
        let n = rng.gen_range(1..=4);
        let degs: Vec<usize> = (0..n).map(|_| rng.gen_range(0..2)).collect();
        let f = loop {
            let f = random_multilinear(&mut rng, a.group(), a.order(), &degs, 6);
            if f.variables().len() == n {
                break f;
            }
        };
        let h: Vec<_> = (0..n)
            .map(|_| hs[rng.gen_range(0..hs.len())].clone())
            .collect();
        let g = transfer_phi(&f, &h, &beta).map_err(|e| e.to_string())?;
        let rs: Vec<usize> = h.iter().map(|x| r.component_of(x)[0]).collect();
        let mut rprod: SparseVec = r.unit().clone();
        for &j in &rs {
            rprod = r.mul_sparse(&rprod, &r.basis_sparse(j));
        }
        // all basis substitutions of A
        let choices: Vec<&[usize]> = degs.iter().map(|&d| a.component(d)).collect();
        let mut idx = vec![0usize; n];
        loop {
            let sa: BTreeMap<u32, SparseVec> = (0..n)
                .map(|k| (k as u32 + 1, a.basis_sparse(choices[k][idx[k]])))
                .collect();
            let sar: BTreeMap<u32, SparseVec> = (0..n)
                .map(|k| {
                    (
                        k as u32 + 1,
                        ar.basis_sparse(choices[k][idx[k]] * r.dim() + rs[k]),
                    )
                })
                .collect();
            let lhs = evaluate_sparse(&g, &sar, &ar);
            let rhs = tensor_vec(&evaluate_sparse(&f, &sa, &a), &rprod, r.dim());
            ensure(same(&lhs, &rhs), || {
                format!("substitution rule fails for {f} with h = {h:?}")
            })?;
            evaluations += 1;
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    Ok(format!("{md} multidegrees equal on A⊗R; substitution rule exact on 100 polynomials, {evaluations} substitutions"))
}

fn c4_bicharacters() -> Outcome {
    // (algebra, index of the first (a_i,b_i) pair, number of pairs,
    // radical generator as (generator index, power))
    // δ_k has a² in its radical: ωA squares to the central i.
    type Row = (&'static str, usize, usize, Option<(usize, i64)>);
    let rows: [Row; 9] = [
        ("m2-4", 0, 1, None),
        ("m2-4*m2-4", 0, 2, None),
        ("m2-4*m2-4*m2-4", 0, 3, None),
        ("h4", 0, 1, None),
        ("h4*m2-4", 0, 2, None),
        ("c2*m2-4", 1, 1, Some((0, 1))),
        ("c2*m2-4*m2-4", 1, 2, Some((0, 1))),
        ("m2-8", 0, 1, Some((0, 2))),
        ("m2-8*m2-4", 0, 2, Some((0, 2))),
    ];
    let mut pairs = 0;
    for (id, first, k, radical) in rows {
        let a = alg(id);
        let b = beta_of(&a);
        let g = a.group();
        let gens: Vec<_> = (0..g.rank()).map(|i| g.generator(i)).collect();
        let minus = CycloNumber::from_int(b.order(), -1);
        let one = CycloNumber::one(b.order());
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                let v = b.eval(&gens[i], &gens[j]).map_err(|e| e.to_string())?;
                let (lo, hi) = (i.min(j), i.max(j));
                let paired =
                    lo >= first && hi == lo + 1 && (lo - first) % 2 == 0 && (lo - first) / 2 < k;
                let want = if paired { &minus } else { &one };
                ensure(v == *want, || {
                    format!("{id}: β(gen{i}, gen{j}) = {v}, expected {want}")
                })?;
                pairs += 1;
            }
        }
        let rad = b.radical();
        let want = match radical {
            None => vec![g.identity()],
            Some((i, k)) => vec![g.identity(), g.pow(&gens[i], k)],
        };
        ensure(
            rad.len() == want.len() && want.iter().all(|x| rad.contains(x)),
            || format!("{id}: radical {:?}, expected {:?}", rad, want),
        )?;
    }
    Ok(format!("{pairs} generator pairs exact"))
}

fn c5_structural() -> Outcome {
    let non_division = ["m2", "m2-elem"];
    let mut regular = 0;
    let mut ids: Vec<&str> = catalog::standard_ids();
    ids.extend([
        "pauli-regular(1)",
        "e(1,4)",
        "e(-1,8)",
        "e(1,8)",
        "h2",
        "m2-4*m2-4",
    ]);
    for id in &ids {
        let a = alg(id);
        let div = a.check_graded_division();
        if non_division.contains(id) {
            ensure(!div.is_division, || {
                format!("{id} should fail the division check")
            })?;
        } else {
            ensure(div.is_division, || {
                format!("{id} is not graded division: {:?}", div.failure)
            })?;
        }
        if let Regularity::Regular(b) = a.detect_regular() {
            ensure(has_minimal_center(&a, &b), || {
                format!("{id}: center is not the radical-component sum")
            })?;
            regular += 1;
        }
        if a.dim() <= 64 {
            ensure(a.check_associative().is_ok(), || {
                format!("{id} is not associative")
            })?;
        }
    }
    Ok(format!("{} catalog algebras, {regular} regular", ids.len()))
}

fn c6_pauli_reduction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut identities = 0;
    let mut merged = 0;
    for id in ["pauli(3)", "pauli(4)"] {
        let a = alg(id);
        let d = PauliData::of(&a).map_err(|e| e.to_string())?;
        let e = Engine::new(&a, Default::default());
        let n_el = a.group().order();
        for k in 0..200 {
            let n = rng.gen_range(2..=5);
            // few distinct degrees so that merges happen
            let pool: Vec<usize> = (0..2).map(|_| rng.gen_range(0..n_el)).collect();
            let mut degs: Vec<usize> = (0..n).map(|_| pool[rng.gen_range(0..2)]).collect();
            degs.sort_unstable();
            let f: GradedPolynomial = if k % 2 == 0
                && degs
                    .iter()
                    .all(|x| degs.iter().filter(|y| *y == x).count() <= d.repeat_bound())
            {
                let fam = d.reordering_family(&degs).map_err(|e| e.to_string())?;
                let mut f = GradedPolynomial::zero(a.group().clone(), a.order());
                for (_, p) in fam.iter().take(3) {
                    f = f.add(&p.scale(&CycloNumber::from_int(a.order(), rng.gen_range(1..4))));
                }
                f
            } else {
                random_multilinear(&mut rng, a.group(), a.order(), &degs, 5)
            };
            if f.is_zero() || f.variables().len() != n {
                continue;
            }
            let red =
                pauli::pauli_reduce_with(&d, &f).map_err(|e| format!("{id}: reduce {f}: {e}"))?;
            pauli::replay(&red, Some(&e)).map_err(|e| format!("{id}: replay of {f}: {e}"))?;
            let before = e.is_identity(&f).map_err(|e| e.to_string())?.holds;
            let after = e
                .is_identity(&red.polynomial)
                .map_err(|e| e.to_string())?
                .holds;
            ensure(before == after, || {
                format!("{id}: is_identity changed under reduction of {f}")
            })?;
            identities += before as usize;
            merged += red.rounds.len();
        }
    }
    Ok(format!(
        "400 samples ({identities} identities), {merged} merge rounds replayed exactly"
    ))
}

fn c7_long() -> Outcome {
    let a = alg("pauli(4)");
    let r = pauli::verify_seven(&a, &VerifyOptions::default()).map_err(|e| e.to_string())?;
    if let Some(f) = r.membership_failures.first() {
        return Err(format!("{} is not a member", f.polynomial));
    }
    let m = &r.multidegrees[0];
    ensure(m.equal, || {
        format!(
            "incomplete at {:?}: space {} span {}",
            m.degrees, m.space_dim, m.span_dim
        )
    })?;
    Ok(format!(
        "{} generators; equal at {:?} (dim {})",
        r.generators, m.degrees, m.space_dim
    ))
}

fn c8_quaternions() -> Outcome {
    let m2 = alg("m2");
    let h = alg("h");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut dims = Vec::new();
    for n in 1..=4 {
        let d = vec![0usize; n];
        let x = multilinear_identity_space(&m2, &d)
            .map_err(|e| e.to_string())?
            .rank();
        let y = multilinear_identity_space(&h, &d)
            .map_err(|e| e.to_string())?
            .rank();
        ensure(x == y, || format!("degree {n}: M2 {x}, H {y}"))?;
        let o = Numeric::new(&m2).identity_dim(&d, &mut rng);
        ensure(o == x, || format!("degree {n}: oracle {o}, exact {x}"))?;
        dims.push(x);
    }
    Ok(format!(
        "identity dims by degree {dims:?}, equal for M2(R) and H, oracle agrees"
    ))
}

fn main() {
    let exact = "exact (zero)";
    let mixed =
        format!("exact (zero); oracle rank cutoff {RANK_TOL:e}, vanishing bound {VANISH_TOL:e}");
    let mut ok = true;
    ok &= criterion(1, "membership suite", &mixed, c1_membership);
    ok &= criterion(2, "completeness at degree ≤ 4", &mixed, c2_completeness);
    ok &= criterion(3, "transfer suite", exact, c3_transfer);
    ok &= criterion(4, "bicharacter table", exact, c4_bicharacters);
    ok &= criterion(5, "structural suite", exact, c5_structural);
    ok &= criterion(6, "Pauli reduction soundness", exact, c6_pauli_reduction);
    if std::env::var("GRADEDPI_LONG_RUNNING").is_ok_and(|v| v == "1") {
        ok &= criterion(7, "degree-7 Pauli(4) check", exact, c7_long);
    } else {
        line("criterion 7 [SKIP] degree-7 Pauli(4) check | tolerance: exact (zero) | set GRADEDPI_LONG_RUNNING=1 to run");
    }
    ok &= criterion(8, "H and M2(R) identity dimensions", &mixed, c8_quaternions);
    if !ok {
        std::process::exit(1);
    }
}
