//! Membership and completeness of a generating set, per multidegree.

use std::collections::HashMap;
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::consequences::{prepare_all, ConsequenceSpan, Prepared};
use super::spaces::{Engine, Limits, Witness};
use super::{canonical_pieces, multisets, GeneratorSet, Mode, MultidegreeBasis};
use crate::algebras::GradedAlgebra;
use crate::error::{Error, Result};
use crate::scalars::linalg::{span_compare, Echelon, SpanRelation};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub max_degree: usize,
    /// Worker threads; `None` uses the rayon default.
    pub jobs: Option<usize>,
    pub limits: Limits,
    /// Members with more variables than this are checked by direct
    /// evaluation instead of against the cached identity space.
    pub space_membership_vars: usize,
    /// Sorted degree-index tuples to check instead of every multiset up to
    /// `max_degree`.
    pub multidegrees: Option<Vec<Vec<usize>>>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_degree: 4,
            jobs: None,
            limits: Limits::default(),
            space_membership_vars: 5,
            multidegrees: None,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MembershipFailure {
    pub family: String,
    pub polynomial: String,
    pub part: String,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultidegreeRecord {
    pub degrees: Vec<String>,
    pub space_dim: usize,
    pub span_dim: usize,
    pub equal: bool,
    /// A polynomial of the space outside the span, when not equal.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationReport {
    pub version: u32,
    pub algebra: String,
    pub generator_set: String,
    pub mode: Mode,
    pub max_degree: usize,
    pub generators: usize,
    pub members_checked: usize,
    pub membership_failures: Vec<MembershipFailure>,
    pub multidegrees: Vec<MultidegreeRecord>,
    pub off_support_elements: Vec<String>,
    pub passed: bool,
    pub wall_clock_ms: u128,
    pub assumptions: Vec<String>,
}

impl VerificationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable report")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let r: Self = serde_json::from_str(s).map_err(|e| Error::parse(format!("report: {e}")))?;
        if r.version != REPORT_VERSION {
            return Err(Error::parse(format!(
                "report version {} is not supported",
                r.version
            )));
        }
        Ok(r)
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("# version\t{}\n", self.version));
        out.push_str(&format!("# algebra\t{}\n", self.algebra));
        out.push_str(&format!("# generator_set\t{}\n", self.generator_set));
        out.push_str(&format!("# mode\t{:?}\n", self.mode));
        out.push_str(&format!("# max_degree\t{}\n", self.max_degree));
        out.push_str(&format!("# generators\t{}\n", self.generators));
        out.push_str(&format!("# members_checked\t{}\n", self.members_checked));
        out.push_str(&format!(
            "# membership_failures\t{}\n",
            self.membership_failures.len()
        ));
        out.push_str(&format!("# passed\t{}\n", self.passed));
        out.push_str(&format!("# wall_clock_ms\t{}\n", self.wall_clock_ms));
        for a in &self.assumptions {
            out.push_str(&format!("# assumption\t{a}\n"));
        }
        for f in &self.membership_failures {
            out.push_str(&format!(
                "# not_a_member\t{}\t{}\t{}\n",
                f.part, f.family, f.polynomial
            ));
        }
        out.push_str("degrees\tspace_dim\tspan_dim\tequal\twitness\n");
        for r in &self.multidegrees {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.degrees.join(","),
                r.space_dim,
                r.span_dim,
                r.equal,
                r.witness.as_deref().unwrap_or("-")
            ));
        }
        out
    }
}

/// Cached multilinear identity and central spaces keyed by sorted degree tuples.
pub struct SpaceCache<'a> {
    pub engine: Engine<'a>,
    identity: Mutex<HashMap<Vec<usize>, Echelon>>,
    central: Mutex<HashMap<Vec<usize>, Echelon>>,
}

impl<'a> SpaceCache<'a> {
    pub fn new(a: &'a GradedAlgebra, limits: Limits) -> Self {
        SpaceCache {
            engine: Engine::new(a, limits),
            identity: Mutex::new(HashMap::new()),
            central: Mutex::new(HashMap::new()),
        }
    }

    pub fn space(&self, degrees: &[usize], central: bool) -> Result<Echelon> {
        let map = if central {
            &self.central
        } else {
            &self.identity
        };
        if let Some(e) = map.lock().expect("cache lock").get(degrees) {
            return Ok(e.clone());
        }
        let e = if central {
            self.engine.central_space(degrees)?
        } else {
            self.engine.identity_space(degrees)?
        };
        map.lock()
            .expect("cache lock")
            .insert(degrees.to_vec(), e.clone());
        Ok(e)
    }
}

fn check_member(
    cache: &SpaceCache,
    poly: &crate::freealg::GradedPolynomial,
    central: bool,
    opts: &VerifyOptions,
) -> Result<Option<Option<Witness>>> {
    let e = &cache.engine;
    let direct = |central: bool| -> Result<Option<Option<Witness>>> {
        if central {
            let c = e.is_central(poly)?;
            Ok(match c {
                super::Centrality::Neither { witness } => Some(Some(witness)),
                _ => None,
            })
        } else {
            let c = e.is_identity(poly)?;
            Ok((!c.holds).then_some(c.witness))
        }
    };
    let pieces = canonical_pieces(poly);
    if pieces
        .iter()
        .any(|(_, d)| d.len() > opts.space_membership_vars || d.is_empty())
    {
        return direct(central);
    }
    for (p, degrees) in pieces {
        let v = MultidegreeBasis::new(degrees.clone()).to_vector(&p)?;
        if !cache.space(&degrees, central)?.contains(&v) {
            // re-run directly for a witness
            return Ok(Some(direct(central)?.flatten()));
        }
    }
    Ok(None)
}

fn membership(
    cache: &SpaceCache,
    s: &GeneratorSet,
    opts: &VerifyOptions,
) -> Result<Vec<MembershipFailure>> {
    let central_part = s.mode == Mode::Centrals;
    let jobs: Vec<(&super::Member, bool)> =
        s.s1.iter()
            .map(|m| (m, false))
            .chain(s.s2.iter().map(|m| (m, central_part)))
            .collect();
    let results: Vec<Result<Option<MembershipFailure>>> = jobs
        .par_iter()
        .map(|(m, central)| {
            Ok(
                check_member(cache, &m.poly, *central, opts)?.map(|w| MembershipFailure {
                    family: m.family.clone(),
                    polynomial: m.poly.to_string(),
                    part: if *central { "S2" } else { "S1" }.into(),
                    witness: w,
                }),
            )
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        if let Some(f) = r? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Span of consequences at one multidegree; T-ideal consequences of S1 and,
/// in central mode, T-space consequences of S2.
pub fn consequence_span(
    group: &crate::groups::FiniteAbelianGroup,
    s1: &[Prepared],
    s2: &[Prepared],
    degrees: &[usize],
    stop_at: Option<usize>,
) -> Echelon {
    let mut c = ConsequenceSpan::new(group, degrees);
    for p in s2 {
        c.add(p, false, stop_at);
    }
    for p in s1 {
        c.add(p, true, stop_at);
    }
    c.span
}

fn completeness(
    cache: &SpaceCache,
    s: &GeneratorSet,
    s1: &[Prepared],
    s2: &[Prepared],
    degrees: &[usize],
) -> Result<MultidegreeRecord> {
    let a = cache.engine.algebra;
    let central = s.mode == Mode::Centrals;
    let target = cache.space(degrees, central)?;
    let span = consequence_span(a.group(), s1, s2, degrees, Some(target.rank()));
    let equal = span_compare(&span, &target) == SpanRelation::Equal;
    let witness = if equal {
        None
    } else {
        let basis = MultidegreeBasis::new(degrees.to_vec());
        target
            .basis()
            .iter()
            .find(|v| !span.contains(v))
            .map(|v| basis.to_polynomial(v, a.group(), a.order()).to_string())
    };
    let g = a.group();
    Ok(MultidegreeRecord {
        degrees: degrees.iter().map(|&d| g.format(&g.element(d))).collect(),
        space_dim: target.rank(),
        span_dim: span.rank(),
        equal,
        witness,
    })
}

fn run(a: &GradedAlgebra, s: &GeneratorSet, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    if s.group.orders() != a.group().orders() {
        return Err(Error::domain(format!(
            "generator set is graded by {} but {} by {}",
            s.group,
            a.name(),
            a.group()
        )));
    }
    let cache = SpaceCache::new(a, opts.limits);
    let failures = membership(&cache, s, opts)?;
    let support = a.support();
    let mut multidegrees = Vec::new();
    let mut assumptions = s.assumptions.clone();
    if failures.is_empty() {
        let s1 = prepare_all(s.s1.iter().map(|m| &m.poly));
        let s2 = prepare_all(s.s2.iter().map(|m| &m.poly));
        let degs = match &opts.multidegrees {
            Some(d) => d
                .iter()
                .map(|t| {
                    let mut t = t.clone();
                    t.sort_unstable();
                    t
                })
                .collect(),
            None => multisets(&support, opts.max_degree),
        };
        multidegrees = degs
            .par_iter()
            .map(|d| completeness(&cache, s, &s1, &s2, d))
            .collect::<Result<Vec<_>>>()?;
    } else {
        assumptions.push("completeness skipped: some generators are not members".into());
    }
    let g = a.group();
    let off: Vec<String> = (0..g.order())
        .filter(|d| !support.contains(d))
        .map(|d| g.format(&g.element(d)))
        .collect();
    if !off.is_empty() {
        assumptions.push("multidegrees touching degrees outside the support are complete through the off-support variables".into());
    }
    let passed = failures.is_empty() && multidegrees.iter().all(|r| r.equal);
    Ok(VerificationReport {
        version: REPORT_VERSION,
        algebra: a.name().to_string(),
        generator_set: s.name.clone(),
        mode: s.mode,
        max_degree: opts.max_degree,
        generators: s.len(),
        members_checked: s.len(),
        membership_failures: failures,
        multidegrees,
        off_support_elements: off,
        passed,
        wall_clock_ms: start.elapsed().as_millis(),
        assumptions,
    })
}

/// Membership of every member, without completeness.
pub fn check_membership(
    a: &GradedAlgebra,
    s: &GeneratorSet,
    opts: &VerifyOptions,
) -> Result<Vec<MembershipFailure>> {
    let cache = SpaceCache::new(a, opts.limits);
    membership(&cache, s, opts)
}

/// Checks that every member lies in Id (or C), then compares the
/// consequence span with the multilinear space at every sorted multidegree
/// over the support of total degree ≤ `max_degree`.
pub fn verify_basis(
    a: &GradedAlgebra,
    s: &GeneratorSet,
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    match opts.jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map_err(|e| Error::resource(format!("thread pool: {e}")))?
            .install(|| run(a, s, opts)),
        None => run(a, s, opts),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::catalog;
    use crate::pitool::families;

    #[test]
    fn elementary_grading_degree_three() {
        let a = catalog::m2_elem();
        let opts = VerifyOptions {
            max_degree: 3,
            ..Default::default()
        };
        let r = verify_basis(&a, &families::dv_lemma(), &opts).unwrap();
        assert!(r.passed, "{}", r.to_tsv());
        assert_eq!(r.multidegrees.len(), 2 + 3 + 4);
    }

    #[test]
    fn missing_generator_is_reported() {
        let a = catalog::m2_elem();
        let mut s = families::dv_lemma();
        s.s1.truncate(1);
        let r = verify_basis(
            &a,
            &s,
            &VerifyOptions {
                max_degree: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!r.passed);
        let bad = r.multidegrees.iter().find(|m| !m.equal).unwrap();
        assert!(bad.witness.is_some());
    }
}
