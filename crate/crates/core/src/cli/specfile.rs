//! Text formats for algebras and generator sets.
//!
//! ```text
//! format gradedpi-algebra 1
//! name m2-4
//! order 1
//! group 2,2 a,b
//! basis 1 e
//! basis A a
//! mul A A 1 1
//! unit 1 1
//! ```
//!
//! `mul i j k c` says that the product of basis elements i and j has
//! coefficient c on k. A `catalog <id>` line may replace the explicit table.
//! Generator sets use `format gradedpi-generators 1` with `name`, `mode`,
//! `group`, `order`, `assume <text>` and `S1|S2 <family> <polynomial>` lines;
//! the same lines may appear inside an algebra file between
//! `generators <name> <mode>` and `end`.

use std::collections::BTreeMap;

use crate::algebras::{catalog, GradedAlgebra};
use crate::error::{Error, Result};
use crate::freealg::parse::parse_polynomial;
use crate::groups::FiniteAbelianGroup;
use crate::pitool::{GeneratorSet, Mode};
use crate::scalars::linalg::SparseVec;
use crate::scalars::CycloNumber;

pub const ALGEBRA_HEADER: &str = "format gradedpi-algebra 1";
pub const GENERATORS_HEADER: &str = "format gradedpi-generators 1";

fn at(line: usize, col: usize, msg: impl std::fmt::Display) -> Error {
    Error::parse(format!("line {line}, column {col}: {msg}"))
}

/// A word with its 1-based column.
type Word<'a> = (usize, &'a str);

/// Splits off `n` whitespace-separated words, plus the rest of the line.
fn words(s: &str, n: usize) -> (Vec<Word<'_>>, Option<Word<'_>>) {
    let mut out = Vec::new();
    let mut rest = s;
    let mut offset = 0;
    while out.len() < n {
        let trimmed = rest.trim_start();
        offset += rest.len() - trimmed.len();
        if trimmed.is_empty() {
            return (out, None);
        }
        let end = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        out.push((offset + 1, &trimmed[..end]));
        offset += end;
        rest = &trimmed[end..];
    }
    let trimmed = rest.trim_start();
    offset += rest.len() - trimmed.len();
    let tail = trimmed.trim_end();
    (out, (!tail.is_empty()).then_some((offset + 1, tail)))
}

fn parse_group(line: usize, args: &[(usize, &str)]) -> Result<FiniteAbelianGroup> {
    let (col, orders) = args
        .first()
        .ok_or_else(|| at(line, 1, "group needs orders"))?;
    let orders: Vec<u32> = if *orders == "1" || *orders == "trivial" {
        vec![]
    } else {
        orders
            .split(',')
            .map(|t| {
                t.parse()
                    .map_err(|_| at(line, *col, format!("bad group order '{t}'")))
            })
            .collect::<Result<_>>()?
    };
    match args.get(1) {
        Some((c, names)) => {
            FiniteAbelianGroup::with_names(orders, names.split(',').map(String::from).collect())
                .map_err(|e| at(line, *c, e))
        }
        None => FiniteAbelianGroup::new(orders).map_err(|e| at(line, *col, e)),
    }
}

fn format_group(g: &FiniteAbelianGroup) -> String {
    if g.rank() == 0 {
        return "group 1".into();
    }
    let orders: Vec<String> = g.orders().iter().map(|o| o.to_string()).collect();
    format!("group {} {}", orders.join(","), g.names().join(","))
}

/// Generator lines shared by both formats.
struct GenBlock {
    name: String,
    mode: Mode,
    lines: Vec<(usize, String, String, String)>,
    assumptions: Vec<String>,
}

impl GenBlock {
    fn build(self, group: &FiniteAbelianGroup, order: u32) -> Result<GeneratorSet> {
        let mut s = GeneratorSet::new(self.name, self.mode, group.clone());
        for a in self.assumptions {
            s.assume(a);
        }
        for (line, part, family, poly) in self.lines {
            let p = parse_polynomial(&poly, group, order).map_err(|e| at(line, 1, e))?;
            match part.as_str() {
                "S1" => s.push_identity(&family, p),
                _ => s.push_central(&family, p),
            }
        }
        Ok(s)
    }
}

/// A parsed algebra file.
#[derive(Debug)]
pub struct AlgebraFile {
    pub algebra: GradedAlgebra,
    pub generators: Vec<GeneratorSet>,
}

fn parse_mode(line: usize, col: usize, s: &str) -> Result<Mode> {
    s.parse().map_err(|e| at(line, col, e))
}

pub fn parse_algebra(src: &str) -> Result<AlgebraFile> {
    let mut header = false;
    let mut name = String::from("algebra");
    let mut order = 1u32;
    let mut group: Option<FiniteAbelianGroup> = None;
    let mut catalog_id: Option<(usize, String)> = None;
    let mut labels: Vec<String> = Vec::new();
    let mut degrees = Vec::new();
    let mut mul: Vec<(usize, usize, String, String, String)> = Vec::new();
    let mut unit: Vec<(usize, usize, String, String)> = Vec::new();
    let mut blocks: Vec<GenBlock> = Vec::new();
    let mut open: Option<GenBlock> = None;
    for (k, raw) in src.lines().enumerate() {
        let ln = k + 1;
        let text = raw.split('#').next().unwrap_or("").trim_end();
        if text.trim().is_empty() {
            continue;
        }
        if !header {
            if text.trim() != ALGEBRA_HEADER {
                return Err(at(ln, 1, format!("expected '{ALGEBRA_HEADER}'")));
            }
            header = true;
            continue;
        }
        let (w, rest) = words(text, 1);
        let (kcol, key) = w[0];
        if let Some(b) = open.as_mut() {
            match key {
                "end" => blocks.push(open.take().expect("open block")),
                "S1" | "S2" => {
                    let (fw, poly) = words(rest.map(|r| r.1).unwrap_or(""), 1);
                    let family = fw
                        .first()
                        .map(|x| x.1)
                        .ok_or_else(|| at(ln, kcol, "missing family"))?;
                    let poly = poly.ok_or_else(|| at(ln, kcol, "missing polynomial"))?.1;
                    b.lines
                        .push((ln, key.to_string(), family.to_string(), poly.to_string()));
                }
                "assume" => b
                    .assumptions
                    .push(rest.map(|r| r.1.to_string()).unwrap_or_default()),
                _ => {
                    return Err(at(
                        ln,
                        kcol,
                        format!("unexpected '{key}' inside a generators block"),
                    ))
                }
            }
            continue;
        }
        let rest_str = rest.map(|r| r.1).unwrap_or("");
        let col0 = rest.map(|r| r.0).unwrap_or(kcol);
        match key {
            "name" => name = rest_str.to_string(),
            "order" => {
                order = rest_str
                    .parse()
                    .map_err(|_| at(ln, col0, "order must be a positive integer"))?
            }
            "group" => {
                let (args, _) = words(rest_str, 2);
                let args: Vec<(usize, &str)> =
                    args.into_iter().map(|(c, s)| (c + col0 - 1, s)).collect();
                group = Some(parse_group(ln, &args)?);
            }
            "catalog" => catalog_id = Some((ln, rest_str.to_string())),
            "basis" => {
                let (a, _) = words(rest_str, 2);
                if a.len() != 2 {
                    return Err(at(ln, col0, "basis needs a label and a degree"));
                }
                let g = group
                    .as_ref()
                    .ok_or_else(|| at(ln, kcol, "group must precede basis"))?;
                let d = g.parse(a[1].1).map_err(|e| at(ln, col0 + a[1].0 - 1, e))?;
                if labels.iter().any(|l| l == a[0].1) {
                    return Err(at(ln, col0, format!("duplicate label '{}'", a[0].1)));
                }
                labels.push(a[0].1.to_string());
                degrees.push(d);
            }
            "mul" => {
                let (a, c) = words(rest_str, 3);
                let c =
                    c.ok_or_else(|| at(ln, col0, "mul needs three labels and a coefficient"))?;
                mul.push((
                    ln,
                    col0 + c.0 - 1,
                    a[0].1.to_string(),
                    a[1].1.to_string(),
                    format!("{}\t{}", a[2].1, c.1),
                ));
            }
            "unit" => {
                let (a, c) = words(rest_str, 1);
                let c = c.ok_or_else(|| at(ln, col0, "unit needs a label and a coefficient"))?;
                unit.push((ln, col0 + c.0 - 1, a[0].1.to_string(), c.1.to_string()));
            }
            "generators" => {
                let (a, _) = words(rest_str, 2);
                if a.len() != 2 {
                    return Err(at(ln, col0, "generators needs a name and a mode"));
                }
                let mode = parse_mode(ln, col0 + a[1].0 - 1, a[1].1)?;
                open = Some(GenBlock {
                    name: a[0].1.to_string(),
                    mode,
                    lines: Vec::new(),
                    assumptions: Vec::new(),
                });
            }
            _ => return Err(at(ln, kcol, format!("unknown keyword '{key}'"))),
        }
    }
    if !header {
        return Err(at(1, 1, format!("expected '{ALGEBRA_HEADER}'")));
    }
    if open.is_some() {
        return Err(at(
            src.lines().count(),
            1,
            "generators block is not closed with 'end'",
        ));
    }
    let algebra = if let Some((ln, id)) = catalog_id {
        if !labels.is_empty() || !mul.is_empty() {
            return Err(at(ln, 1, "catalog files cannot also list a basis"));
        }
        catalog::build(&id)?
    } else {
        let group = group.ok_or_else(|| at(1, 1, "missing group line"))?;
        let index: BTreeMap<&str, usize> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        let find = |ln: usize, l: &str| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| at(ln, 1, format!("unknown label '{l}'")))
        };
        let n = labels.len();
        let mut table: Vec<Vec<BTreeMap<usize, CycloNumber>>> = vec![vec![BTreeMap::new(); n]; n];
        for (ln, col, i, j, kc) in &mul {
            let (k, c) = kc.split_once('\t').expect("joined");
            let c = CycloNumber::parse(c, order).map_err(|e| at(*ln, *col, e))?;
            let (i, j, k) = (find(*ln, i)?, find(*ln, j)?, find(*ln, k)?);
            if table[i][j].insert(k, c).is_some() {
                return Err(at(*ln, 1, "repeated product coordinate"));
            }
        }
        let mut u: SparseVec = Vec::new();
        for (ln, col, l, c) in &unit {
            u.push((
                find(*ln, l)?,
                CycloNumber::parse(c, order).map_err(|e| at(*ln, *col, e))?,
            ));
        }
        u.sort_by_key(|x| x.0);
        let mult = table
            .into_iter()
            .map(|row| row.into_iter().map(|m| m.into_iter().collect()).collect())
            .collect();
        let a = GradedAlgebra::new(name.clone(), group, order, labels, degrees, mult, u)?;
        a.validate_associative()?;
        a
    };
    let generators = blocks
        .into_iter()
        .map(|b| b.build(algebra.group(), algebra.order()))
        .collect::<Result<_>>()?;
    Ok(AlgebraFile {
        algebra,
        generators,
    })
}

/// Explicit spec file for `a`; parsing it gives back an equal algebra.
pub fn export_algebra(a: &GradedAlgebra) -> String {
    let g = a.group();
    let labels = a.labels();
    let mut out = format!(
        "{ALGEBRA_HEADER}\nname {}\norder {}\n{}\n",
        a.name(),
        a.order(),
        format_group(g)
    );
    for note in a.notes() {
        out.push_str(&format!("# {note}\n"));
    }
    for (i, l) in labels.iter().enumerate() {
        out.push_str(&format!("basis {l} {}\n", g.format(&a.degree(i))));
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            for (k, c) in a.product(i, j) {
                out.push_str(&format!(
                    "mul {} {} {} {c}\n",
                    labels[i], labels[j], labels[*k]
                ));
            }
        }
    }
    for (k, c) in a.unit() {
        out.push_str(&format!("unit {} {c}\n", labels[*k]));
    }
    out
}

pub fn export_generators(s: &GeneratorSet, order: u32) -> String {
    let mode = match s.mode {
        Mode::Identities => "identities",
        Mode::Centrals => "centrals",
    };
    let mut out = format!(
        "{GENERATORS_HEADER}\nname {}\nmode {mode}\norder {order}\n{}\n",
        s.name,
        format_group(&s.group)
    );
    for a in &s.assumptions {
        out.push_str(&format!("assume {a}\n"));
    }
    for (tag, part) in [("S1", &s.s1), ("S2", &s.s2)] {
        for m in part {
            out.push_str(&format!("{tag} {} {}\n", m.family, m.poly));
        }
    }
    out
}

/// Parses a generator file; `group` is used when the file has no group line.
pub fn parse_generators(
    src: &str,
    group: &FiniteAbelianGroup,
    default_order: u32,
) -> Result<GeneratorSet> {
    let mut header = false;
    let mut block = GenBlock {
        name: "generators".into(),
        mode: Mode::Identities,
        lines: Vec::new(),
        assumptions: Vec::new(),
    };
    let mut grp = group.clone();
    let mut order = default_order;
    for (k, raw) in src.lines().enumerate() {
        let ln = k + 1;
        let text = raw.split('#').next().unwrap_or("").trim_end();
        if text.trim().is_empty() {
            continue;
        }
        if !header {
            if text.trim() != GENERATORS_HEADER {
                return Err(at(ln, 1, format!("expected '{GENERATORS_HEADER}'")));
            }
            header = true;
            continue;
        }
        let (w, rest) = words(text, 1);
        let (kcol, key) = w[0];
        let rest_str = rest.map(|r| r.1).unwrap_or("");
        let col0 = rest.map(|r| r.0).unwrap_or(kcol);
        match key {
            "name" => block.name = rest_str.to_string(),
            "mode" => block.mode = parse_mode(ln, col0, rest_str)?,
            "order" => {
                order = rest_str
                    .parse()
                    .map_err(|_| at(ln, col0, "order must be a positive integer"))?
            }
            "group" => {
                let (args, _) = words(rest_str, 2);
                let args: Vec<(usize, &str)> =
                    args.into_iter().map(|(c, s)| (c + col0 - 1, s)).collect();
                grp = parse_group(ln, &args)?;
            }
            "assume" => block.assumptions.push(rest_str.to_string()),
            "S1" | "S2" => {
                let (fw, poly) = words(rest_str, 1);
                let family = fw
                    .first()
                    .map(|x| x.1)
                    .ok_or_else(|| at(ln, col0, "missing family"))?;
                let poly = poly.ok_or_else(|| at(ln, col0, "missing polynomial"))?.1;
                block
                    .lines
                    .push((ln, key.to_string(), family.to_string(), poly.to_string()));
            }
            _ => return Err(at(ln, kcol, format!("unknown keyword '{key}'"))),
        }
    }
    if !header {
        return Err(at(1, 1, format!("expected '{GENERATORS_HEADER}'")));
    }
    block.build(&grp, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pitool::families;

    #[test]
    fn catalog_round_trip() {
        for id in ["m2-4", "h", "m2-8", "pauli(3)", "c2*m2-4", "e(-1,4)"] {
            let a = catalog::build(id).unwrap();
            let back = parse_algebra(&export_algebra(&a)).unwrap().algebra;
            assert_eq!(back, a, "{id}");
        }
    }

    #[test]
    fn errors_carry_positions() {
        let src = format!("{ALGEBRA_HEADER}\norder 1\ngroup 2 a\nbasis 1 q\n");
        let e = parse_algebra(&src).unwrap_err().to_string();
        assert!(e.contains("line 4, column 9"), "{e}");
        let e = parse_algebra("format nonsense\n").unwrap_err().to_string();
        assert!(e.contains("line 1"), "{e}");
    }

    #[test]
    fn generator_round_trip() {
        let s = families::bp_central();
        let text = export_generators(&s, 1);
        let back = parse_generators(&text, &s.group, 1).unwrap();
        assert_eq!(back.s1.len(), s.s1.len());
        assert_eq!(back.s2.len(), s.s2.len());
        assert_eq!(back.mode, Mode::Centrals);
        assert_eq!(back.s1[0].poly, s.s1[0].poly);
    }

    #[test]
    fn embedded_generators() {
        let a = catalog::m2_elem();
        let mut src = export_algebra(&a);
        src.push_str("generators mine identities\nS1 c x1:e*x2:e - x2:e*x1:e\nend\n");
        let f = parse_algebra(&src).unwrap();
        assert_eq!(f.generators.len(), 1);
        assert_eq!(f.generators[0].s1.len(), 1);
    }
}
