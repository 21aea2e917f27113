//! Rauzy graphs, special factors, the mirror involution and the reduction to
//! simple paths between special vertices.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::complexity::ComplexityProfile;
use crate::wordcore::{render_word, LanguageTable, Letter, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RauzyError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("level {n}: degree sums {right_sum} (right) and {left_sum} (left) differ from dC = {delta_c}")]
    DegreeIdentityViolation { n: usize, delta_c: i64, right_sum: i64, left_sum: i64 },
    #[error("level {n}: language is not closed under reversal")]
    NotClosedUnderReversal { n: usize },
    #[error("level {n}: graph is not strongly connected")]
    NotStronglyConnected { n: usize },
    #[error("level {n}: no special vertex (periodic language)")]
    PeriodicLanguage { n: usize },
    #[error("level {n}: audit check `{check}` failed: {detail}")]
    AuditViolation { n: usize, check: String, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub word: Vec<Letter>,
    pub start: usize,
    pub end: usize,
}

/// Vertices are the factors of length `n`, edges those of length `n + 1`,
/// both in lexicographic order.
#[derive(Clone, Debug)]
pub struct RauzyGraph {
    n: usize,
    alphabet_size: usize,
    label_base: u8,
    vertices: Vec<Vec<Letter>>,
    edges: Vec<Edge>,
    out_edges: Vec<Vec<usize>>,
    in_edges: Vec<Vec<usize>>,
}

impl RauzyGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[Vec<Letter>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_edges[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_edges[v].len()
    }

    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[v]
    }

    pub fn is_special(&self, v: usize) -> bool {
        self.out_degree(v) >= 2 || self.in_degree(v) >= 2
    }

    pub fn render(&self, w: &[Letter]) -> String {
        render_word(w, self.alphabet_size, self.label_base)
    }

    fn vertex_index(&self, w: &[Letter]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(w)).ok()
    }

    fn edge_index(&self, w: &[Letter]) -> Option<usize> {
        self.edges.binary_search_by(|e| e.word.as_slice().cmp(w)).ok()
    }

    pub fn is_strongly_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let reach = |adj: &dyn Fn(usize) -> Vec<usize>| {
            let mut seen = vec![false; self.vertices.len()];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(v) = queue.pop_front() {
                for u in adj(v) {
                    if !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(&|v| self.out_edges[v].iter().map(|&e| self.edges[e].end).collect())
            && reach(&|v| self.in_edges[v].iter().map(|&e| self.edges[e].start).collect())
    }
}

/// Builds `Γ_n` from the factors of lengths `n` and `n + 1`.
pub fn build_rauzy(table: &LanguageTable, n: usize) -> Result<RauzyGraph, RauzyError> {
    if n + 1 > table.n_max() {
        return Err(WordError::LevelOutOfRange { n: n + 1, n_max: table.n_max() }.into());
    }
    for m in [n, n + 1] {
        if !table.is_stable(m) {
            return Err(WordError::UnstableLevel { n: m }.into());
        }
    }
    let vertices: Vec<Vec<Letter>> = table.factors(n)?.map(<[Letter]>::to_vec).collect();
    let mut g = RauzyGraph {
        n,
        alphabet_size: table.alphabet_size(),
        label_base: table.label_base(),
        out_edges: vec![Vec::new(); vertices.len()],
        in_edges: vec![Vec::new(); vertices.len()],
        vertices,
        edges: Vec::new(),
    };
    for word in table.factors(n + 1)? {
        let start = g.vertex_index(&word[..n]).expect("prefix of a factor is a factor");
        let end = g.vertex_index(&word[1..]).expect("suffix of a factor is a factor");
        let id = g.edges.len();
        g.out_edges[start].push(id);
        g.in_edges[end].push(id);
        g.edges.push(Edge { word: word.to_vec(), start, end });
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialFactorReport {
    pub n: usize,
    /// `(vertex, out-degree)` for each right special vertex.
    pub right: Vec<(usize, usize)>,
    /// `(vertex, in-degree)` for each left special vertex.
    pub left: Vec<(usize, usize)>,
    pub delta_c: i64,
}

/// Right and left special vertices; checks that both degree excess sums
/// equal `C(n+1) - C(n)`.
pub fn special_factors(g: &RauzyGraph) -> Result<SpecialFactorReport, RauzyError> {
    let nv = g.vertices.len();
    let right: Vec<(usize, usize)> = (0..nv).filter(|&v| g.out_degree(v) >= 2).map(|v| (v, g.out_degree(v))).collect();
    let left: Vec<(usize, usize)> = (0..nv).filter(|&v| g.in_degree(v) >= 2).map(|v| (v, g.in_degree(v))).collect();
    let delta_c = g.edges.len() as i64 - nv as i64;
    let right_sum: i64 = right.iter().map(|&(_, d)| d as i64 - 1).sum();
    let left_sum: i64 = left.iter().map(|&(_, d)| d as i64 - 1).sum();
    if right_sum != delta_c || left_sum != delta_c {
        return Err(RauzyError::DegreeIdentityViolation { n: g.n, delta_c, right_sum, left_sum });
    }
    Ok(SpecialFactorReport { n: g.n, right, left, delta_c })
}

/// The mirror map on vertices and edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub vertex: Vec<usize>,
    pub edge: Vec<usize>,
}

impl Involution {
    pub fn is_involution(&self) -> bool {
        self.vertex.iter().enumerate().all(|(v, &u)| self.vertex[u] == v)
            && self.edge.iter().enumerate().all(|(e, &f)| self.edge[f] == e)
    }

    pub fn fixed_vertices(&self) -> usize {
        self.vertex.iter().enumerate().filter(|&(v, &u)| v == u).count()
    }

    pub fn fixed_edges(&self) -> usize {
        self.edge.iter().enumerate().filter(|&(e, &f)| e == f).count()
    }
}

pub fn reversal_involution(g: &RauzyGraph) -> Result<Involution, RauzyError> {
    let err = || RauzyError::NotClosedUnderReversal { n: g.n };
    let mirror = |w: &[Letter]| w.iter().rev().copied().collect::<Vec<_>>();
    let vertex =
        g.vertices.iter().map(|v| g.vertex_index(&mirror(v)).ok_or_else(err)).collect::<Result<Vec<_>, _>>()?;
    let edge = g.edges.iter().map(|e| g.edge_index(&mirror(&e.word)).ok_or_else(err)).collect::<Result<Vec<_>, _>>()?;
    Ok(Involution { vertex, edge })
}

/// A path whose end vertices are special and whose interior vertices are
/// not. Zero-length paths consist of a single special vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePath {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct ReducedRauzyGraph {
    pub n: usize,
    /// Special vertices in increasing (lexicographic) order.
    pub special: Vec<usize>,
    /// The zero-length paths (one per special vertex, same order) followed
    /// by the paths of positive length.
    pub paths: Vec<SimplePath>,
    /// Index of the mirror image of each path.
    pub path_image: Vec<usize>,
    pub rho: Involution,
    /// Special vertices fixed by the mirror map.
    pub alpha: usize,
    /// Pairs of distinct special vertices exchanged by the mirror map.
    pub beta: usize,
    /// Sum of out-degrees over special vertices.
    pub special_out_degree: usize,
}

impl ReducedRauzyGraph {
    pub fn is_invariant(&self, path: usize) -> bool {
        self.path_image[path] == path
    }

    pub fn invariant_paths(&self) -> usize {
        (0..self.paths.len()).filter(|&p| self.is_invariant(p)).count()
    }

    /// Mirror orbit of a special vertex, as its smaller member.
    fn orbit(&self, v: usize) -> usize {
        v.min(self.rho.vertex[v])
    }

    /// Positive-length paths joining special vertices of different orbits.
    pub fn inter_orbit_paths(&self) -> Vec<usize> {
        (self.special.len()..self.paths.len())
            .filter(|&p| {
                let path = &self.paths[p];
                self.orbit(path.vertices[0]) != self.orbit(*path.vertices.last().unwrap())
            })
            .collect()
    }

    /// Fixed vertices plus fixed edges on a path; end vertices count only
    /// for paths of length zero.
    pub fn centers(&self, path: usize) -> usize {
        let p = &self.paths[path];
        let inner = if p.edges.is_empty() { &p.vertices[..] } else { &p.vertices[1..p.vertices.len() - 1] };
        inner.iter().filter(|&&v| self.rho.vertex[v] == v).count()
            + p.edges.iter().filter(|&&e| self.rho.edge[e] == e).count()
    }
}

pub fn reduce(g: &RauzyGraph, rho: &Involution) -> Result<ReducedRauzyGraph, RauzyError> {
    if !g.is_strongly_connected() {
        return Err(RauzyError::NotStronglyConnected { n: g.n });
    }
    let special: Vec<usize> = (0..g.vertices.len()).filter(|&v| g.is_special(v)).collect();
    if special.is_empty() {
        return Err(RauzyError::PeriodicLanguage { n: g.n });
    }
    let mut paths: Vec<SimplePath> =
        special.iter().map(|&s| SimplePath { vertices: vec![s], edges: Vec::new() }).collect();
    for &s in &special {
        for &e0 in g.out_edges(s) {
            let mut path = SimplePath { vertices: vec![s], edges: vec![e0] };
            let mut v = g.edges[e0].end;
            while !g.is_special(v) {
                path.vertices.push(v);
                let e = g.out_edges(v)[0];
                path.edges.push(e);
                v = g.edges[e].end;
            }
            path.vertices.push(v);
            paths.push(path);
        }
    }
    let zero_len: HashMap<usize, usize> = special.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let by_first_edge: HashMap<usize, usize> =
        paths.iter().enumerate().filter_map(|(i, p)| p.edges.first().map(|&e| (e, i))).collect();
    let path_image = paths
        .iter()
        .map(|p| match p.edges.last() {
            None => zero_len[&rho.vertex[p.vertices[0]]],
            Some(&e) => by_first_edge[&rho.edge[e]],
        })
        .collect();
    let alpha = special.iter().filter(|&&s| rho.vertex[s] == s).count();
    let beta = special.iter().filter(|&&s| rho.vertex[s] > s).count();
    let special_out_degree = special.iter().map(|&s| g.out_degree(s)).sum();
    Ok(ReducedRauzyGraph { n: g.n, special, paths, path_image, rho: rho.clone(), alpha, beta, special_out_degree })
}

/// One audited level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditRecord {
    pub n: usize,
    pub alpha: usize,
    pub beta: usize,
    pub invariant_paths: usize,
    pub psum: usize,
    pub structural_bound: i64,
    pub delta_bound: i64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
}

impl AuditRecord {
    pub fn ensure(&self) -> Result<(), RauzyError> {
        match &self.violation {
            None => Ok(()),
            Some(v) => {
                let (check, detail) = v.split_once(": ").unwrap_or((v, ""));
                Err(RauzyError::AuditViolation { n: self.n, check: check.to_string(), detail: detail.to_string() })
            }
        }
    }
}

/// Checks, in order: the palindrome count read off the graph matches the
/// profile; every invariant path has exactly one centre; psum is at most
/// the number of invariant paths; mirror-paired paths between different
/// orbits number at least `2(α+β-1)`; the invariant paths respect the
/// structural bound; and that bound does not exceed `ΔC(n) + 2`.
pub fn audit_bound(rg: &ReducedRauzyGraph, profile: &ComplexityProfile, n: usize) -> Result<AuditRecord, RauzyError> {
    let row = profile.row(n).ok_or(WordError::LevelOutOfRange { n, n_max: profile.n_max })?;
    let invariant = rg.invariant_paths();
    let orbits = (rg.alpha + rg.beta) as i64;
    let structural = rg.special_out_degree as i64 - 2 * (orbits - 1) + rg.alpha as i64;
    let delta_bound = row.bound;
    let inter = rg.inter_orbit_paths();
    let graph_psum = rg.rho.fixed_vertices() + rg.rho.fixed_edges();

    let mut violation = None;
    let mut fail = |msg: String| {
        if violation.is_none() {
            violation = Some(msg);
        }
    };
    if graph_psum != row.psum {
        fail(format!("palindrome count: graph has {graph_psum}, profile has {}", row.psum));
    }
    if let Some(p) = (0..rg.paths.len()).find(|&p| rg.is_invariant(p) && rg.centers(p) != 1) {
        fail(format!("unique centre: invariant path {p} has {} centres", rg.centers(p)));
    }
    if row.psum > invariant {
        fail(format!("psum <= invariant paths: {} > {invariant}", row.psum));
    }
    if (inter.len() as i64) < 2 * (orbits - 1) || inter.iter().any(|&p| inter.binary_search(&rg.path_image[p]).is_err())
    {
        fail(format!("inter-orbit paths: {} paths for {orbits} orbits", inter.len()));
    }
    let positive_invariant = (rg.special.len()..rg.paths.len()).filter(|&p| rg.is_invariant(p)).count();
    if positive_invariant + rg.alpha != invariant
        || (positive_invariant as i64) > rg.special_out_degree as i64 - inter.len() as i64
        || invariant as i64 > structural
    {
        fail(format!("invariant paths <= structural bound: {invariant} > {structural}"));
    }
    if structural > delta_bound {
        fail(format!("structural bound <= dC + 2: {structural} > {delta_bound}"));
    }
    Ok(AuditRecord {
        n,
        alpha: rg.alpha,
        beta: rg.beta,
        invariant_paths: invariant,
        psum: row.psum,
        structural_bound: structural,
        delta_bound,
        pass: violation.is_none(),
        violation,
    })
}

/// Builds, checks and audits level `n` in one go.
pub fn audit_level(table: &LanguageTable, profile: &ComplexityProfile, n: usize) -> Result<AuditRecord, RauzyError> {
    let g = build_rauzy(table, n)?;
    special_factors(&g)?;
    let rho = reversal_involution(&g)?;
    let rg = reduce(&g, &rho)?;
    audit_bound(&rg, profile, n)
}

fn quoted(s: &str) -> String {
    format!("\"{s}\"")
}

/// DOT rendering of `Γ_n`; special vertices are boxes, mirror-fixed
/// vertices and edges are red.
pub fn to_dot(g: &RauzyGraph, rho: Option<&Involution>) -> String {
    let mut out = format!("digraph rauzy_{} {{\n", g.n);
    for (v, w) in g.vertices.iter().enumerate() {
        let mut attrs = Vec::new();
        if g.is_special(v) {
            attrs.push("shape=box".to_string());
        }
        if rho.is_some_and(|r| r.vertex[v] == v) {
            attrs.push("color=red".to_string());
        }
        write_node(&mut out, &g.render(w), &attrs);
    }
    for (i, e) in g.edges.iter().enumerate() {
        let mut attrs = vec![format!("label={}", quoted(&g.render(&e.word)))];
        if rho.is_some_and(|r| r.edge[i] == i) {
            attrs.push("color=red".to_string());
        }
        write_arc(&mut out, &g.render(&g.vertices[e.start]), &g.render(&g.vertices[e.end]), &attrs);
    }
    out.push_str("}\n");
    out
}

/// DOT rendering of the reduced graph: one node per special vertex and one
/// arc per simple path of positive length.
pub fn reduced_to_dot(g: &RauzyGraph, rg: &ReducedRauzyGraph) -> String {
    let mut out = format!("digraph reduced_{} {{\n", rg.n);
    for &s in &rg.special {
        let mut attrs = vec!["shape=box".to_string()];
        if rg.rho.vertex[s] == s {
            attrs.push("color=red".to_string());
        }
        write_node(&mut out, &g.render(&g.vertices[s]), &attrs);
    }
    for p in rg.special.len()..rg.paths.len() {
        let path = &rg.paths[p];
        let mut attrs = vec![format!("label=\"{}\"", path.edges.len())];
        if rg.is_invariant(p) {
            attrs.push("color=red".to_string());
        }
        let from = g.render(&g.vertices[path.vertices[0]]);
        let to = g.render(&g.vertices[*path.vertices.last().unwrap()]);
        write_arc(&mut out, &from, &to, &attrs);
    }
    out.push_str("}\n");
    out
}

fn write_node(out: &mut String, name: &str, attrs: &[String]) {
    if attrs.is_empty() {
        writeln!(out, "  {};", quoted(name)).unwrap();
    } else {
        writeln!(out, "  {} [{}];", quoted(name), attrs.join(", ")).unwrap();
    }
}

fn write_arc(out: &mut String, from: &str, to: &str, attrs: &[String]) {
    writeln!(out, "  {} -> {} [{}];", quoted(from), quoted(to), attrs.join(", ")).unwrap();
}
