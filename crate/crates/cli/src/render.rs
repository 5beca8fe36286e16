//! JSON reports and DOT drawings emitted by the commands.

use std::fmt::Write as _;

use filtrum::topo::{Characterization, FiniteSpace};
use filtrum::{ElementSet, FilterFamily, Filtrum, Fixfilters, Limits};
use serde::Serialize;

use crate::document::{monoid_doc, Document};

#[derive(Serialize)]
pub struct FilterEntry {
    pub id: usize,
    pub members: Vec<usize>,
    pub bitset: String,
    pub consistent: bool,
    pub ultrafilter: bool,
}

#[derive(Serialize)]
pub struct FiltersReport {
    pub kind: &'static str,
    pub size: usize,
    pub count: usize,
    /// `null` when the monoid has no zero distinct from one.
    pub ultrafilter_count: Option<usize>,
    pub filters: Vec<FilterEntry>,
}

pub fn filters_report(size: usize, filters: &FilterFamily, ultra: Option<&FilterFamily>) -> FiltersReport {
    FiltersReport {
        kind: "filters",
        size,
        count: filters.len(),
        ultrafilter_count: ultra.map(FilterFamily::len),
        filters: filters
            .iter()
            .enumerate()
            .map(|(id, f)| FilterEntry {
                id,
                members: f.members().to_vec(),
                bitset: f.members().to_hex(),
                consistent: f.is_consistent(),
                ultrafilter: ultra.is_some_and(|u| u.contains(f.members())),
            })
            .collect(),
    }
}

#[derive(Serialize)]
pub struct PointEntry {
    pub id: usize,
    pub members: Vec<usize>,
    pub consistent: bool,
}

#[derive(Serialize)]
pub struct BasisEntry {
    pub element: usize,
    pub points: Vec<usize>,
}

#[derive(Serialize)]
pub struct FiltrumReport {
    pub kind: &'static str,
    pub size: usize,
    pub points: Vec<PointEntry>,
    pub closed_point: usize,
    /// Covering pairs `[i, j]` of the inclusion order, filter `i` below `j`.
    pub hasse: Vec<[usize; 2]>,
    pub basis: Vec<BasisEntry>,
    /// `null` when the open sets exceed the materialisation limit.
    pub open_count: Option<usize>,
}

/// Pairs `i ⊂ j` with nothing strictly between.
pub fn covers(n: usize, below: impl Fn(usize, usize) -> bool) -> Vec<[usize; 2]> {
    let strictly = |i: usize, j: usize| i != j && below(i, j);
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if strictly(i, j) && !(0..n).any(|k| strictly(i, k) && strictly(k, j)) {
                out.push([i, j]);
            }
        }
    }
    out
}

pub fn filtrum_report(phi: &Filtrum, limits: &Limits) -> FiltrumReport {
    let m = phi.monoid();
    FiltrumReport {
        kind: "filtrum",
        size: m.size(),
        points: (0..phi.len())
            .map(|id| PointEntry {
                id,
                members: phi.point(id).members().to_vec(),
                consistent: phi.point(id).is_consistent(),
            })
            .collect(),
        closed_point: phi.units_point(),
        hasse: covers(phi.len(), |i, j| phi.includes(i, j)),
        basis: m
            .elements()
            .map(|f| BasisEntry {
                element: f,
                points: phi.basis_sets()[f].to_vec(),
            })
            .collect(),
        open_count: phi.space(limits).ok().map(|s| s.opens().len()),
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A Hasse diagram, edges pointing upwards, with `double` drawn as a double circle.
pub fn hasse_dot(name: &str, labels: &[String], edges: &[[usize; 2]], double: &ElementSet) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {name} {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for (i, label) in labels.iter().enumerate() {
        let shape = if double.contains(i) { ", shape=doublecircle" } else { "" };
        writeln!(out, "  n{i} [label=\"{}\"{shape}];", dot_escape(label)).unwrap();
    }
    for [a, b] in edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn filtrum_dot(phi: &Filtrum) -> String {
    let labels: Vec<String> = (0..phi.len()).map(|i| phi.point_name(i)).collect();
    let edges = covers(phi.len(), |i, j| phi.includes(i, j));
    hasse_dot("filtrum", &labels, &edges, &ElementSet::singleton(phi.units_point()))
}

/// The specialisation order drawn with `x` below `y` when every
/// neighbourhood of `x` contains `y`; closed points are doubled.
pub fn space_dot(x: &FiniteSpace) -> String {
    let edges = covers(x.len(), |a, b| x.specializes(a, b));
    let closed: ElementSet = (0..x.len())
        .filter(|&p| x.is_closed(&ElementSet::singleton(p)))
        .collect();
    hasse_dot("space", x.names(), &edges, &closed)
}

#[derive(Serialize)]
pub struct FixSide {
    pub filters: Vec<Vec<usize>>,
    pub fix: Vec<usize>,
    pub all_fix: bool,
}

#[derive(Serialize)]
pub struct FixReport {
    pub kind: &'static str,
    pub source: FixSide,
    pub target: FixSide,
    /// `[i, j]`: source filter `i` and target filter `j` correspond.
    pub bijection: Vec<[usize; 2]>,
}

pub fn fix_report(src: &FilterFamily, tgt: &FilterFamily, fx: &Fixfilters) -> FixReport {
    let ids = |all: &FilterFamily, fix: &FilterFamily| -> Vec<usize> {
        fix.iter()
            .map(|f| all.position(f.members()).expect("fixfilters are filters"))
            .collect()
    };
    let s = ids(src, &fx.source);
    let t = ids(tgt, &fx.target);
    FixReport {
        kind: "fixfilters",
        source: FixSide {
            filters: src.member_sets().iter().map(ElementSet::to_vec).collect(),
            all_fix: s.len() == src.len(),
            fix: s.clone(),
        },
        target: FixSide {
            filters: tgt.member_sets().iter().map(ElementSet::to_vec).collect(),
            all_fix: t.len() == tgt.len(),
            fix: t.clone(),
        },
        bijection: fx.pairs.iter().map(|&(i, j)| [s[i], t[j]]).collect(),
    }
}

#[derive(Serialize)]
pub struct CharacterizationReport {
    pub kind: &'static str,
    pub verdict: &'static str,
    pub points: Vec<String>,
    pub local_opens: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// `(local opens, ∩)` with element `i` the `i`-th local open.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monoid: Option<Document>,
    /// Filtrum point (as a list of local-open indices) of each point.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub psi: Option<Vec<Vec<usize>>>,
}

pub fn characterization_report(x: &FiniteSpace, c: &Characterization) -> CharacterizationReport {
    let sets = |v: &[ElementSet]| v.iter().map(ElementSet::to_vec).collect();
    let mut report = CharacterizationReport {
        kind: "characterization",
        verdict: "failure",
        points: x.names().to_vec(),
        local_opens: sets(&filtrum::topo::characterize::local_opens(x)),
        condition: None,
        witness: None,
        monoid: None,
        psi: None,
    };
    match c {
        Characterization::Success(p) => {
            report.verdict = "success";
            report.monoid = Some(monoid_doc(&p.monoid));
            report.psi = Some(p.psi.iter().map(|&i| p.filtrum.point(i).members().to_vec()).collect());
        }
        Characterization::Failure(f) => {
            report.condition = Some(f.condition());
            report.witness = Some(f.to_string());
        }
    }
    report
}
