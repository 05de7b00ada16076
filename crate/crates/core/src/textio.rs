//! Text formats for groups, homomorphisms, matrices, crossed modules,
//! cat1-groups and extensions.
//!
//! Files are line based. `#` starts a comment, blank lines are skipped,
//! `[name]` opens a section. Groups are given as `perm <degree>` plus one
//! generator image row per line, or `abelian n1 n2 ...`. Homomorphisms are
//! a `hom` line followed by `gen <src> -> <dst>` rows. Actions are rows
//! `g t -> t'` on generators, completed by the library.

use num_bigint::BigInt;

use crate::cat1::Cat1Group;
use crate::derived::XModExtension;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupAction, GroupHom};
use crate::lattice::IntMatrix;
use crate::xmod::{CrossedModule, XModMorphism};

/// A numbered, comment-stripped line.
#[derive(Clone, Debug)]
struct Line {
    no: usize,
    text: String,
}

fn significant_lines(input: &str) -> Vec<Line> {
    input
        .lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let text = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            }
            .trim();
            if text.is_empty() {
                None
            } else {
                Some(Line {
                    no: i + 1,
                    text: text.to_string(),
                })
            }
        })
        .collect()
}

/// Lines grouped into sections; lines before the first header live in the
/// section named "".
struct Sections {
    order: Vec<String>,
    by_name: std::collections::HashMap<String, Vec<Line>>,
}

impl Sections {
    fn parse(input: &str) -> Result<Sections> {
        let mut order = Vec::new();
        let mut by_name: std::collections::HashMap<String, Vec<Line>> =
            std::collections::HashMap::new();
        let mut current = String::new();
        by_name.insert(String::new(), Vec::new());
        for line in significant_lines(input) {
            if line.text.starts_with('[') {
                if !line.text.ends_with(']') {
                    return Err(Error::parse(line.no, "unterminated section header"));
                }
                current = line.text[1..line.text.len() - 1].trim().to_string();
                if by_name.contains_key(&current) {
                    return Err(Error::parse(
                        line.no,
                        format!("duplicate section [{current}]"),
                    ));
                }
                order.push(current.clone());
                by_name.insert(current.clone(), Vec::new());
            } else {
                by_name.get_mut(&current).unwrap().push(line);
            }
        }
        Ok(Sections { order, by_name })
    }

    fn get(&self, name: &str) -> Option<&[Line]> {
        self.by_name.get(name).map(|v| v.as_slice())
    }

    fn require(&self, name: &str) -> Result<&[Line]> {
        self.get(name)
            .filter(|v| !v.is_empty() || self.order.iter().any(|s| s == name))
            .ok_or_else(|| Error::parse(0, format!("missing section [{name}]")))
    }
}

fn parse_usize(line: &Line, tok: &str) -> Result<usize> {
    tok.parse()
        .map_err(|_| Error::parse(line.no, format!("expected an integer, got {tok:?}")))
}

/// Parse a group body: `perm <degree>` with generator rows, or
/// `abelian n1 n2 ...`.
fn parse_group_lines(lines: &[Line], bound: usize) -> Result<FiniteGroup> {
    let Some(head) = lines.first() else {
        return Err(Error::parse(0, "empty group description"));
    };
    let toks: Vec<&str> = head.text.split_whitespace().collect();
    match toks[0] {
        "perm" => {
            if toks.len() != 2 {
                return Err(Error::parse(head.no, "expected: perm <degree>"));
            }
            let degree = parse_usize(head, toks[1])?;
            let mut gens = Vec::new();
            for line in &lines[1..] {
                let images: Result<Vec<usize>> = line
                    .text
                    .split_whitespace()
                    .map(|t| parse_usize(line, t))
                    .collect();
                gens.push(images?);
            }
            FiniteGroup::from_permutations_bounded(degree, &gens, bound)
        }
        "abelian" => {
            let factors: Result<Vec<u64>> = toks[1..]
                .iter()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::parse(head.no, format!("bad invariant factor {t:?}")))
                })
                .collect();
            if lines.len() > 1 {
                return Err(Error::parse(
                    lines[1].no,
                    "unexpected line after abelian group",
                ));
            }
            let g = FiniteGroup::abelian_from_invariants(&factors?)?;
            if g.order() > bound {
                return Err(Error::SizeLimit {
                    what: "group order",
                    bound,
                    needed: g.order(),
                });
            }
            Ok(g)
        }
        other => Err(Error::parse(
            head.no,
            format!("unknown group kind {other:?}"),
        )),
    }
}

pub fn parse_group(input: &str) -> Result<FiniteGroup> {
    parse_group_bounded(input, crate::DEFAULT_ORDER_BOUND)
}

pub fn parse_group_bounded(input: &str, order_bound: usize) -> Result<FiniteGroup> {
    parse_group_lines(&significant_lines(input), order_bound)
}

/// Parse a homomorphism body: optional `hom` line, then `gen <i> -> <j>`.
fn parse_hom_lines(lines: &[Line], source: &FiniteGroup, target: &FiniteGroup) -> Result<GroupHom> {
    let mut pairs = Vec::new();
    for line in lines {
        if line.text == "hom" {
            continue;
        }
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        if toks.len() != 4 || toks[0] != "gen" || toks[2] != "->" {
            return Err(Error::parse(
                line.no,
                "expected: gen <index> -> <target index>",
            ));
        }
        pairs.push((parse_usize(line, toks[1])?, parse_usize(line, toks[3])?));
    }
    GroupHom::from_generator_images(source.clone(), target.clone(), &pairs)
}

/// Parse an action body: rows `g t -> t'` on generators, completed to a
/// full action table.
fn parse_action_lines(
    lines: &[Line],
    actor: &FiniteGroup,
    space: &FiniteGroup,
) -> Result<GroupAction> {
    let mut rows: Vec<(usize, usize, usize)> = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.text.split_whitespace().collect();
        if toks.len() != 4 || toks[2] != "->" {
            return Err(Error::parse(line.no, "expected: <g> <t> -> <t'>"));
        }
        rows.push((
            parse_usize(line, toks[0])?,
            parse_usize(line, toks[1])?,
            parse_usize(line, toks[3])?,
        ));
    }
    let mut actor_gens: Vec<usize> = rows.iter().map(|&(g, _, _)| g).collect();
    actor_gens.sort_unstable();
    actor_gens.dedup();
    // each listed actor generator: extend its space-generator images to an
    // automorphism
    let mut auts: Vec<(usize, Vec<usize>)> = Vec::new();
    for &g in &actor_gens {
        let pairs: Vec<(usize, usize)> = rows
            .iter()
            .filter(|&&(gg, _, _)| gg == g)
            .map(|&(_, t, t2)| (t, t2))
            .collect();
        let hom = GroupHom::from_generator_images(space.clone(), space.clone(), &pairs)
            .map_err(|e| Error::NotAnAction(format!("row for actor {g}: {e}")))?;
        if !hom.is_bijective() {
            return Err(Error::NotAnAction(format!(
                "actor {g} does not act bijectively"
            )));
        }
        auts.push((g, hom.images().to_vec()));
    }
    // extend to all of the actor by composing along products
    let n = actor.order();
    let ns = space.order();
    let mut maps: Vec<Option<Vec<usize>>> = vec![None; n];
    maps[0] = Some((0..ns).collect());
    for (g, images) in &auts {
        match &maps[*g] {
            None => maps[*g] = Some(images.clone()),
            Some(existing) if existing == images => {}
            Some(_) => {
                return Err(Error::NotAnAction(format!(
                    "conflicting rows for actor {g}"
                )))
            }
        }
    }
    let mut known: Vec<usize> = (0..n).filter(|&g| maps[g].is_some()).collect();
    let mut frontier = 0;
    while frontier < known.len() {
        let x = known[frontier];
        frontier += 1;
        for (g, g_map) in &auts {
            let xg = actor.mul(x, *g);
            // rho(x g) = rho(x) . rho(g)
            let x_map = maps[x].as_ref().unwrap();
            let composed: Vec<usize> = (0..ns).map(|t| x_map[g_map[t]]).collect();
            match &maps[xg] {
                None => {
                    maps[xg] = Some(composed);
                    known.push(xg);
                }
                Some(existing) => {
                    if *existing != composed {
                        return Err(Error::NotAnAction(format!(
                            "action rows are inconsistent at actor element {xg}"
                        )));
                    }
                }
            }
        }
    }
    if known.len() < n {
        return Err(Error::NotAnAction(
            "action rows do not cover a generating set of the actor".into(),
        ));
    }
    let table: Vec<usize> = maps.into_iter().flat_map(Option::unwrap).collect();
    GroupAction::new(actor.clone(), space.clone(), table)
}

/// Crossed module file: `[T]`, `[G]`, `[mu]`, `[action]`.
pub fn parse_crossed_module(input: &str) -> Result<CrossedModule> {
    parse_crossed_module_bounded(input, crate::DEFAULT_ORDER_BOUND)
}

pub fn parse_crossed_module_bounded(input: &str, order_bound: usize) -> Result<CrossedModule> {
    let sections = Sections::parse(input)?;
    parse_crossed_module_sections(&sections, "", order_bound)
}

fn parse_crossed_module_sections(
    sections: &Sections,
    prefix: &str,
    bound: usize,
) -> Result<CrossedModule> {
    let name = |base: &str| {
        if prefix.is_empty() {
            base.to_string()
        } else {
            format!("{prefix}.{base}")
        }
    };
    let t = parse_group_lines(sections.require(&name("T"))?, bound)?;
    let g = parse_group_lines(sections.require(&name("G"))?, bound)?;
    let mu = parse_hom_lines(sections.require(&name("mu"))?, &t, &g)?;
    let action = parse_action_lines(sections.require(&name("action"))?, &g, &t)?;
    CrossedModule::new(t, g, mu, action)
}

/// Cat1-group file: `[G]`, `[d0]`, `[d1]`.
pub fn parse_cat1(input: &str) -> Result<Cat1Group> {
    parse_cat1_bounded(input, crate::DEFAULT_ORDER_BOUND)
}

pub fn parse_cat1_bounded(input: &str, order_bound: usize) -> Result<Cat1Group> {
    let sections = Sections::parse(input)?;
    let g = parse_group_lines(sections.require("G")?, order_bound)?;
    let d0 = parse_hom_lines(sections.require("d0")?, &g, &g)?;
    let d1 = parse_hom_lines(sections.require("d1")?, &g, &g)?;
    Cat1Group::new(g, d0, d1)
}

/// Extension file: `[kernel.*]`, `[total.*]`, `[quotient.*]` crossed module
/// sections plus `[incl.f]`, `[incl.h]`, `[proj.f]`, `[proj.h]`.
pub fn parse_extension(input: &str) -> Result<XModExtension> {
    parse_extension_bounded(input, crate::DEFAULT_ORDER_BOUND)
}

pub fn parse_extension_bounded(input: &str, order_bound: usize) -> Result<XModExtension> {
    let sections = Sections::parse(input)?;
    let kernel = parse_crossed_module_sections(&sections, "kernel", order_bound)?;
    let total = parse_crossed_module_sections(&sections, "total", order_bound)?;
    let quotient = parse_crossed_module_sections(&sections, "quotient", order_bound)?;
    let incl_f = parse_hom_lines(sections.require("incl.f")?, kernel.top(), total.top())?;
    let incl_h = parse_hom_lines(sections.require("incl.h")?, kernel.base(), total.base())?;
    let proj_f = parse_hom_lines(sections.require("proj.f")?, total.top(), quotient.top())?;
    let proj_h = parse_hom_lines(sections.require("proj.h")?, total.base(), quotient.base())?;
    let incl = XModMorphism::new(kernel.clone(), total.clone(), incl_f, incl_h)?;
    let proj = XModMorphism::new(total.clone(), quotient.clone(), proj_f, proj_h)?;
    XModExtension::new(kernel, total, quotient, incl, proj)
}

/// Matrix file: `rows cols` header, then row-major whitespace-separated
/// integers.
pub fn parse_matrix(input: &str) -> Result<IntMatrix> {
    let lines = significant_lines(input);
    let Some(head) = lines.first() else {
        return Err(Error::parse(0, "empty matrix file"));
    };
    let toks: Vec<&str> = head.text.split_whitespace().collect();
    if toks.len() != 2 {
        return Err(Error::parse(head.no, "expected: <rows> <cols>"));
    }
    let rows = parse_usize(head, toks[0])?;
    let cols = parse_usize(head, toks[1])?;
    let mut entries: Vec<BigInt> = Vec::with_capacity(rows * cols);
    for line in &lines[1..] {
        for tok in line.text.split_whitespace() {
            let v: BigInt = tok
                .parse()
                .map_err(|_| Error::parse(line.no, format!("bad integer {tok:?}")))?;
            entries.push(v);
        }
    }
    if entries.len() != rows * cols {
        return Err(Error::parse(
            lines.last().map_or(0, |l| l.no),
            format!("expected {} entries, got {}", rows * cols, entries.len()),
        ));
    }
    let mut m = IntMatrix::zero(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, entries[i * cols + j].clone());
        }
    }
    Ok(m)
}

/// What a file appears to contain, judged by its headers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FileKind {
    Group,
    CrossedModule,
    Cat1Group,
    Extension,
    Matrix,
}

pub fn detect_kind(input: &str) -> Result<FileKind> {
    let sections = Sections::parse(input)?;
    if sections.order.iter().any(|s| s.starts_with("kernel.")) {
        return Ok(FileKind::Extension);
    }
    if sections.order.iter().any(|s| s == "T") {
        return Ok(FileKind::CrossedModule);
    }
    if sections.order.iter().any(|s| s == "d0") {
        return Ok(FileKind::Cat1Group);
    }
    let Some(body) = sections.get("") else {
        return Err(Error::parse(0, "empty file"));
    };
    let Some(head) = body.first() else {
        return Err(Error::parse(0, "cannot detect file kind: no content"));
    };
    let first = head.text.split_whitespace().next().unwrap_or("");
    match first {
        "perm" | "abelian" => Ok(FileKind::Group),
        tok if tok.parse::<usize>().is_ok() => Ok(FileKind::Matrix),
        other => Err(Error::parse(
            head.no,
            format!("cannot detect file kind from {other:?}"),
        )),
    }
}

/// One-line summary of a group for reports.
pub fn describe_group(g: &FiniteGroup) -> String {
    let kind = if g.is_abelian() {
        "abelian"
    } else {
        "nonabelian"
    };
    format!("group of order {} ({kind})", g.order())
}

pub fn describe_crossed_module(x: &CrossedModule) -> String {
    format!(
        "crossed module: T = {}, G = {}, |im mu| = {}, action {}",
        describe_group(x.top()),
        describe_group(x.base()),
        x.mu().image().len(),
        if x.action().is_trivial() {
            "trivial"
        } else {
            "nontrivial"
        }
    )
}

pub fn describe_cat1(c: &Cat1Group) -> String {
    format!(
        "cat1-group: |G| = {}, |ker d0| = {}, |ker d1| = {}, |im| = {}",
        c.group().order(),
        c.d0().kernel().len(),
        c.d1().kernel().len(),
        c.d0().image().len()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    const KLEIN_XMOD: &str = "
# (Z/2 x Z/2, Z/2, projection to the first factor, trivial action)
[T]
abelian 2 2
[G]
abelian 2
[mu]
hom
gen 1 -> 1
gen 2 -> 0
[action]
1 1 -> 1
1 2 -> 2
";

    #[test]
    fn group_formats() {
        let g = parse_group("perm 3\n2 3 1\n2 1 3\n").unwrap();
        assert_eq!(g.order(), 6);
        let a = parse_group("abelian 2 4\n").unwrap();
        assert_eq!(a.order(), 8);
        assert!(parse_group("abelian 1\n").is_err());
        assert!(matches!(
            parse_group("frobnicate 3\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn crossed_module_file() {
        let x = parse_crossed_module(KLEIN_XMOD).unwrap();
        assert_eq!(x.top().order(), 4);
        assert_eq!(x.base().order(), 2);
        assert!(x.action().is_trivial());
    }

    #[test]
    fn action_completion_from_generators() {
        // inversion action of Z/2 on Z/3 given on generators only
        let input = "
[T]
abelian 3
[G]
abelian 2
[mu]
hom
gen 1 -> 0
[action]
1 1 -> 2
";
        let x = parse_crossed_module(input).unwrap();
        assert_eq!(x.act(1, 1), 2);
        assert_eq!(x.act(1, 2), 1);
        assert_eq!(x.act(0, 1), 1);
    }

    #[test]
    fn peiffer_violation_reported() {
        // (S3, 1, 0) fails Peiffer
        let input = "
[T]
perm 3
2 3 1
2 1 3
[G]
abelian
[mu]
hom
gen 1 -> 0
gen 2 -> 0
[action]
0 1 -> 1
0 2 -> 2
";
        let err = parse_crossed_module(input);
        assert!(matches!(err, Err(Error::Peiffer { .. })));
    }

    #[test]
    fn cat1_file() {
        let input = "
[G]
abelian 2 2
[d0]
hom
gen 1 -> 0
gen 2 -> 0
[d1]
hom
gen 1 -> 0
gen 2 -> 0
";
        let c = parse_cat1(input).unwrap();
        assert_eq!(c.group().order(), 4);
    }

    #[test]
    fn matrix_file() {
        let m = parse_matrix("2 2\n2 4\n6 8\n").unwrap();
        assert_eq!(*m.get(1, 1), BigInt::from(8));
        assert!(parse_matrix("2 2\n1 2 3\n").is_err());
        // round trip through Display
        let again = parse_matrix(&m.to_string()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn extension_file() {
        // 2Z/4 >-> Z/4 -» Z/2 over the point
        let input = "
[kernel.T]
abelian 2
[kernel.G]
abelian
[kernel.mu]
hom
gen 1 -> 0
[kernel.action]
0 1 -> 1
[total.T]
abelian 4
[total.G]
abelian
[total.mu]
hom
gen 1 -> 0
[total.action]
0 1 -> 1
[quotient.T]
abelian 2
[quotient.G]
abelian
[quotient.mu]
hom
gen 1 -> 0
[quotient.action]
0 1 -> 1
[incl.f]
hom
gen 1 -> 2
[incl.h]
hom
[proj.f]
hom
gen 1 -> 1
[proj.h]
hom
";
        let e = parse_extension(input).unwrap();
        assert_eq!(e.kernel().top().order(), 2);
        assert_eq!(e.total().top().order(), 4);
        assert_eq!(e.quotient().top().order(), 2);
    }

    #[test]
    fn kind_detection() {
        assert_eq!(detect_kind("perm 2\n2 1\n").unwrap(), FileKind::Group);
        assert_eq!(
            detect_kind("3 3\n1 0 0\n0 1 0\n0 0 1\n").unwrap(),
            FileKind::Matrix
        );
        assert_eq!(detect_kind(KLEIN_XMOD).unwrap(), FileKind::CrossedModule);
        assert!(detect_kind("nonsense\n").is_err());
    }
}
