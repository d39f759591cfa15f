//! Mod-p Buchstaber invariants.
//!
//! s_p(K) = m - r where r is the least rank admitting a nondegenerate map
//! K -> K(F_p^r). The search assigns lines to vertices depth first. The span
//! of the lines used so far is always normalised to <e_1..e_d>, so a vertex
//! either reuses a line inside that span or opens e_{d+1}; any solution can be
//! moved into this form by an element of GL_r(F_p).

use serde::Serialize;
use std::collections::BTreeMap;

use crate::complex::{skeleton_of_simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::lattice::{
    canonical_line, check_prime, enumerate_lines, EchelonBasis, FpVector, LineLabel,
};
use crate::universal::build_k;
use crate::vertex_set::VertexSet;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Least r with p^r >= x.
pub fn ceil_log(p: u64, x: u64) -> usize {
    let mut r = 0;
    let mut acc: u128 = 1;
    while acc < x as u128 {
        acc *= p as u128;
        r += 1;
    }
    r
}

fn line_count(p: u32, n: usize) -> u64 {
    ((p as u64).pow(n as u32) - 1) / (p as u64 - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NondegenerateMap {
    source: SimplicialComplex,
    p: u32,
    r: usize,
    assignment: Vec<LineLabel>,
}

impl NondegenerateMap {
    pub fn new(
        source: SimplicialComplex,
        p: u32,
        r: usize,
        assignment: Vec<FpVector>,
    ) -> Result<Self> {
        check_prime(p as u64)?;
        if assignment.len() != source.vertex_count() {
            return Err(Error::Precondition(format!(
                "assignment covers {} of {} vertices",
                assignment.len(),
                source.vertex_count()
            )));
        }
        if !is_nondegenerate(&source, p, r, &assignment) {
            return Err(Error::Precondition(
                "assignment is degenerate on some facet".into(),
            ));
        }
        let assignment = assignment
            .iter()
            .map(canonical_line)
            .collect::<Result<_>>()?;
        Ok(NondegenerateMap {
            source,
            p,
            r,
            assignment,
        })
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn target_rank(&self) -> usize {
        self.r
    }

    pub fn assignment(&self) -> &[LineLabel] {
        &self.assignment
    }
}

/// True iff every facet goes to |facet| independent lines of F_p^r.
/// Malformed assignments (wrong length, zero or foreign vectors) are simply
/// not nondegenerate.
pub fn is_nondegenerate(
    source: &SimplicialComplex,
    p: u32,
    r: usize,
    assignment: &[FpVector],
) -> bool {
    if assignment.len() != source.vertex_count() {
        return false;
    }
    if assignment
        .iter()
        .any(|v| v.prime() != p || v.dim() != r || v.is_zero())
    {
        return false;
    }
    source.facets().iter().all(|f| {
        let mut basis = EchelonBasis::new(p, r);
        f.iter().all(|v| basis.insert(&assignment[v]))
    })
}

fn adjacency(k: &SimplicialComplex) -> Vec<VertexSet> {
    let mut adj = vec![VertexSet::default(); k.vertex_count()];
    if let Some(edges) = k.faces_by_size().get(2) {
        for e in edges {
            let (a, b) = (e.first().unwrap(), e.last().unwrap());
            adj[a] = adj[a].with(b);
            adj[b] = adj[b].with(a);
        }
    }
    adj
}

fn greedy_clique(adj: &[VertexSet]) -> usize {
    let n = adj.len();
    let mut best = usize::from(n > 0);
    for seed in 0..n {
        let mut clique = VertexSet::singleton(seed);
        let mut cand = adj[seed];
        while let Some(v) = cand
            .iter()
            .max_by_key(|&v| (adj[v].intersection(&cand).len(), std::cmp::Reverse(v)))
        {
            clique = clique.with(v);
            cand = cand.intersection(&adj[v]);
        }
        best = best.max(clique.len());
    }
    best
}

struct Coloring<'a> {
    adj: &'a [VertexSet],
    colors: Vec<Option<usize>>,
}

impl Coloring<'_> {
    fn saturation(&self, v: usize) -> usize {
        let mut seen = 0u128;
        for u in self.adj[v].iter() {
            if let Some(c) = self.colors[u] {
                seen |= 1 << c.min(127);
            }
        }
        seen.count_ones() as usize
    }

    fn pick(&self) -> Option<usize> {
        (0..self.adj.len())
            .filter(|&v| self.colors[v].is_none())
            .max_by_key(|&v| (self.saturation(v), self.adj[v].len(), std::cmp::Reverse(v)))
    }

    fn free(&self, v: usize, c: usize) -> bool {
        self.adj[v].iter().all(|u| self.colors[u] != Some(c))
    }

    // DSatur backtracking: new colours are only opened one at a time.
    fn solve(&mut self, k: usize, used: usize) -> bool {
        let Some(v) = self.pick() else {
            return true;
        };
        for c in 0..k.min(used + 1) {
            if self.free(v, c) {
                self.colors[v] = Some(c);
                if self.solve(k, used.max(c + 1)) {
                    return true;
                }
            }
        }
        self.colors[v] = None;
        false
    }

    fn greedy(&mut self) -> usize {
        let mut used = 0;
        while let Some(v) = self.pick() {
            let c = (0..).find(|&c| self.free(v, c)).unwrap();
            self.colors[v] = Some(c);
            used = used.max(c + 1);
        }
        used
    }
}

/// A proper colouring of the 1-skeleton with the fewest colours.
pub fn optimal_coloring(k: &SimplicialComplex) -> Vec<usize> {
    let adj = adjacency(k);
    let n = adj.len();
    if n == 0 {
        return Vec::new();
    }
    let lower = greedy_clique(&adj);
    let mut col = Coloring {
        adj: &adj,
        colors: vec![None; n],
    };
    let upper = col.greedy();
    let mut best: Vec<usize> = col.colors.iter().map(|c| c.unwrap()).collect();
    for target in lower..upper {
        let mut col = Coloring {
            adj: &adj,
            colors: vec![None; n],
        };
        if col.solve(target, 0) {
            best = col.colors.iter().map(|c| c.unwrap()).collect();
            break;
        }
    }
    best
}

/// γ(K), the chromatic number of the 1-skeleton (every vertex counts).
pub fn chromatic_number(k: &SimplicialComplex) -> usize {
    optimal_coloring(k).iter().map(|c| c + 1).max().unwrap_or(0)
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub budget: u64,
    /// When false the search starts at r = 1 instead of the proven lower bound.
    pub use_lower_bounds: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            use_lower_bounds: true,
        }
    }
}

fn coords_only<S: serde::Serializer>(a: &[FpVector], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(a.iter().map(FpVector::coords))
}

fn coords_only_opt<S: serde::Serializer>(
    a: &Option<Vec<FpVector>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match a {
        Some(a) => coords_only(a, s),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TargetRank {
    pub r: usize,
    #[serde(serialize_with = "coords_only")]
    pub assignment: Vec<FpVector>,
    pub nodes: u64,
    pub lower: usize,
    pub upper: usize,
}

enum Mode {
    First,
    All { limit: usize },
}

struct Search<'a> {
    p: u32,
    r: usize,
    order: Vec<usize>,
    facets_of: Vec<Vec<usize>>,
    lines: Vec<FpVector>,
    // prefix[d] = number of lines inside <e_1..e_d>
    prefix: Vec<usize>,
    bases: Vec<Vec<EchelonBasis>>,
    assign: Vec<usize>,
    canonical: bool,
    nodes: u64,
    budget: u64,
    found: Vec<Vec<usize>>,
    mode: Mode,
    source: &'a SimplicialComplex,
}

impl<'a> Search<'a> {
    fn new(
        source: &'a SimplicialComplex,
        p: u32,
        r: usize,
        budget: u64,
        canonical: bool,
        mode: Mode,
    ) -> Result<Self> {
        let m = source.vertex_count();
        let mut lines: Vec<FpVector> = enumerate_lines(p, r)?
            .into_iter()
            .map(LineLabel::into_representative)
            .collect();
        let top = |v: &FpVector| v.coords().iter().rposition(|&c| c != 0).unwrap();
        lines.sort_by(|a, b| top(a).cmp(&top(b)).then_with(|| a.cmp(b)));
        let prefix = (0..=r)
            .map(|d| lines.iter().take_while(|v| top(v) < d).count())
            .collect();

        let mut facets_of = vec![Vec::new(); m];
        for (i, f) in source.facets().iter().enumerate() {
            for v in f.iter() {
                facets_of[v].push(i);
            }
        }
        let adj = adjacency(source);
        let mut order = Vec::with_capacity(m);
        let mut placed = VertexSet::default();
        while order.len() < m {
            let v = (0..m)
                .filter(|&v| !placed.contains(v))
                .max_by_key(|&v| {
                    (
                        adj[v].intersection(&placed).len(),
                        facets_of[v].len(),
                        adj[v].len(),
                        std::cmp::Reverse(v),
                    )
                })
                .unwrap();
            placed = placed.with(v);
            order.push(v);
        }
        let bases = source
            .facets()
            .iter()
            .map(|_| vec![EchelonBasis::new(p, r)])
            .collect();
        Ok(Search {
            p,
            r,
            order,
            facets_of,
            lines,
            prefix,
            bases,
            assign: vec![usize::MAX; m],
            canonical,
            nodes: 0,
            budget,
            found: Vec::new(),
            mode,
            source,
        })
    }

    fn try_place(&mut self, v: usize, line: usize) -> bool {
        let mut pushed = 0;
        for i in 0..self.facets_of[v].len() {
            let f = self.facets_of[v][i];
            let mut b = self.bases[f].last().unwrap().clone();
            if !b.insert(&self.lines[line]) {
                self.undo(v, pushed);
                return false;
            }
            self.bases[f].push(b);
            pushed += 1;
        }
        true
    }

    fn undo(&mut self, v: usize, count: usize) {
        for &f in &self.facets_of[v][..count] {
            self.bases[f].pop();
        }
    }

    // Returns Ok(true) to stop the whole search.
    fn rec(&mut self, t: usize, d: usize) -> Result<bool> {
        if t == self.order.len() {
            self.found.push(self.assign.clone());
            return Ok(match self.mode {
                Mode::First => true,
                Mode::All { limit } => self.found.len() >= limit,
            });
        }
        let v = self.order[t];
        let candidates = if !self.canonical {
            self.lines.len()
        } else if d < self.r {
            self.prefix[d] + 1
        } else {
            self.prefix[self.r]
        };
        for line in 0..candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExhausted {
                    budget: self.budget,
                    rank: self.r,
                    lower: 0,
                    upper: 0,
                });
            }
            if !self.try_place(v, line) {
                continue;
            }
            self.assign[v] = line;
            let next_d = if self.canonical && d < self.r && line == self.prefix[d] {
                d + 1
            } else {
                d
            };
            let stop = self.rec(t + 1, next_d)?;
            self.undo(v, self.facets_of[v].len());
            if stop {
                return Ok(true);
            }
        }
        self.assign[v] = usize::MAX;
        Ok(false)
    }

    fn vectors(&self, a: &[usize]) -> Vec<FpVector> {
        a.iter().map(|&i| self.lines[i].clone()).collect()
    }
}

/// A nondegenerate map into K(F_p^r), if one exists.
pub fn find_map(
    source: &SimplicialComplex,
    p: u32,
    r: usize,
    budget: u64,
) -> Result<(Option<Vec<FpVector>>, u64)> {
    check_prime(p as u64)?;
    if source.vertex_count() == 0 {
        return Ok((Some(Vec::new()), 0));
    }
    if r == 0 {
        return Ok((None, 0));
    }
    let mut s = Search::new(source, p, r, budget, true, Mode::First)?;
    s.rec(0, 0)?;
    let out = s.found.first().map(|a| s.vectors(a));
    debug_assert!(out
        .as_ref()
        .is_none_or(|a| is_nondegenerate(s.source, s.p, s.r, a)));
    Ok((out, s.nodes))
}

/// Every nondegenerate map into K(F_p^r) with no symmetry reduction, up to
/// `limit` maps.
pub fn enumerate_nondegenerate_maps(
    source: &SimplicialComplex,
    p: u32,
    r: usize,
    limit: usize,
    budget: u64,
) -> Result<Vec<Vec<FpVector>>> {
    check_prime(p as u64)?;
    if r == 0 || source.vertex_count() == 0 {
        return Ok(if source.vertex_count() == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        });
    }
    let mut s = Search::new(source, p, r, budget, false, Mode::All { limit })?;
    s.rec(0, 0)?;
    Ok(s.found.iter().map(|a| s.vectors(a)).collect())
}

/// (lower, upper) on the target rank before any search.
pub fn target_rank_bounds(k: &SimplicialComplex, p: u32) -> (usize, usize) {
    let m = k.vertex_count();
    if m == 0 {
        return (0, 0);
    }
    let gamma = chromatic_number(k);
    let dim_bound = (k.dim() + 1).max(1) as usize;
    let log_bound = ceil_log(p as u64, (p as u64 - 1) * gamma as u64 + 1);
    (dim_bound.max(log_bound), gamma)
}

pub fn min_target_rank(k: &SimplicialComplex, p: u32, opts: &SearchOptions) -> Result<TargetRank> {
    check_prime(p as u64)?;
    let (lower, upper) = target_rank_bounds(k, p);
    if k.vertex_count() == 0 {
        return Ok(TargetRank {
            r: 0,
            assignment: Vec::new(),
            nodes: 0,
            lower,
            upper,
        });
    }
    let start = if opts.use_lower_bounds { lower } else { 1 };
    let mut nodes = 0u64;
    for r in start..=k.vertex_count() {
        let left = opts.budget.saturating_sub(nodes);
        match find_map(k, p, r, left) {
            Ok((Some(assignment), n)) => {
                nodes += n;
                return Ok(TargetRank {
                    r,
                    assignment,
                    nodes,
                    lower,
                    upper,
                });
            }
            Ok((None, n)) => nodes += n,
            Err(Error::BudgetExhausted { .. }) => {
                return Err(Error::BudgetExhausted {
                    budget: opts.budget,
                    rank: r,
                    lower: lower.max(r),
                    upper,
                })
            }
            Err(e) => return Err(e),
        }
    }
    Err(Error::Internal(
        "no target rank up to m admits a nondegenerate map".into(),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub kind: BoundKind,
    pub value: i64,
    pub source: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub m: usize,
    pub p: u32,
    pub dim: isize,
    pub gamma: usize,
    pub s_p: Option<usize>,
    pub r: Option<usize>,
    /// Line representatives, one per vertex.
    #[serde(serialize_with = "coords_only_opt")]
    pub assignment: Option<Vec<FpVector>>,
    pub lower: i64,
    pub upper: i64,
    pub bounds: Vec<Bound>,
    /// Bounds on the integral invariant s(K): m - γ below, s_p above.
    pub s_integral: (i64, i64),
    pub nodes: u64,
    pub budget_exhausted: bool,
}

impl InvariantReport {
    /// m - γ <= s(K) <= s_p <= m - dim - 1 with the log bound in between.
    pub fn chain_holds(&self) -> bool {
        let within = |x: i64| self.lower <= x && x <= self.upper;
        let s_ok = match self.s_p {
            Some(s) => within(s as i64) && self.s_integral.1 <= s as i64,
            None => self.lower <= self.upper,
        };
        s_ok && self.s_integral.0 <= self.s_integral.1
    }
}

/// The search-free bounds on s_p.
pub fn bounds_report(k: &SimplicialComplex, p: u32) -> Result<InvariantReport> {
    check_prime(p as u64)?;
    let m = k.vertex_count() as i64;
    let gamma = chromatic_number(k);
    let dim = k.dim();
    let log = ceil_log(p as u64, (p as u64 - 1) * gamma as u64 + 1) as i64;
    let bounds = vec![
        Bound {
            kind: BoundKind::Lower,
            value: m - gamma as i64,
            source: "m - chromatic number".into(),
        },
        Bound {
            kind: BoundKind::Upper,
            value: m - dim as i64 - 1,
            source: "m - dim - 1".into(),
        },
        Bound {
            kind: BoundKind::Upper,
            value: m - log,
            source: "m - ceil(log_p((p-1) chromatic number + 1))".into(),
        },
    ];
    let lower = m - gamma as i64;
    let upper = (m - dim as i64 - 1).min(m - log).min((m - 1).max(0));
    Ok(InvariantReport {
        m: m as usize,
        p,
        dim,
        gamma,
        s_p: None,
        r: None,
        assignment: None,
        lower,
        upper,
        bounds,
        s_integral: (lower, upper),
        nodes: 0,
        budget_exhausted: false,
    })
}

/// Exact s_p by search. A search that runs out of budget still returns a
/// report, with `s_p` unset and the certified interval in lower/upper.
pub fn s_p(k: &SimplicialComplex, p: u32, opts: &SearchOptions) -> Result<InvariantReport> {
    let mut report = bounds_report(k, p)?;
    let m = report.m as i64;
    match min_target_rank(k, p, opts) {
        Ok(t) => {
            let s = m - t.r as i64;
            if s < report.lower || s > report.upper {
                return Err(Error::Internal(format!(
                    "s_p = {s} escapes the interval [{}, {}]",
                    report.lower, report.upper
                )));
            }
            if !is_nondegenerate(k, p, t.r, &t.assignment) {
                return Err(Error::Internal("search returned a degenerate map".into()));
            }
            report.bounds.push(Bound {
                kind: BoundKind::Exact,
                value: s,
                source: "search".into(),
            });
            report.s_p = Some(s as usize);
            report.r = Some(t.r);
            report.assignment = Some(t.assignment);
            report.lower = s;
            report.upper = s;
            report.s_integral.1 = s;
            report.nodes = t.nodes;
        }
        Err(Error::BudgetExhausted { lower, upper, .. }) => {
            // r in [lower, upper] translates to s_p in [m - upper, m - lower]
            report.lower = report.lower.max(m - upper as i64);
            report.upper = report.upper.min(m - lower as i64);
            report.s_integral.1 = report.upper;
            report.nodes = opts.budget;
            report.budget_exhausted = true;
        }
        Err(e) => return Err(e),
    }
    Ok(report)
}

/// m - ceil(log_p((p-1)γ + 1)) for a graph.
pub fn s_p_graph_formula(graph: &SimplicialComplex, p: u32) -> Result<usize> {
    check_prime(p as u64)?;
    if graph.dim() > 1 {
        return Err(Error::Precondition(format!(
            "the graph formula needs a 1-dimensional complex, got dimension {}",
            graph.dim()
        )));
    }
    let m = graph.vertex_count();
    if m == 0 {
        return Ok(0);
    }
    let gamma = chromatic_number(graph);
    Ok(m - ceil_log(p as u64, (p as u64 - 1) * gamma as u64 + 1))
}

#[derive(Clone, Debug, Serialize)]
pub struct OmegaResult {
    pub p: u32,
    pub q: u32,
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    #[serde(serialize_with = "coords_only_opt")]
    pub assignment: Option<Vec<FpVector>>,
    pub bounds_only: bool,
    pub nodes: u64,
}

/// Largest source K(F_p^n) the exact ω search will attempt.
pub const OMEGA_SEARCH_CAP: u64 = 40;

pub fn omega_bounds(p: u32, q: u32, n: usize) -> Result<(usize, usize)> {
    check_prime(p as u64)?;
    check_prime(q as u64)?;
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let lines = line_count(p, n);
    let lower = ceil_log(q as u64, (q as u64 - 1) * lines + 1).max(n);
    Ok((lower, lines as usize))
}

/// ω_{p,q}(n): least r with a nondegenerate map K(F_p^n) -> K(F_q^r).
pub fn omega(p: u32, q: u32, n: usize, budget: u64) -> Result<OmegaResult> {
    let (lower, upper) = omega_bounds(p, q, n)?;
    let mut out = OmegaResult {
        p,
        q,
        n,
        lower,
        upper,
        exact: None,
        assignment: None,
        bounds_only: true,
        nodes: 0,
    };
    if p == q {
        out.exact = Some(n);
        out.assignment = Some((0..n).map(|i| FpVector::unit(p, n, i)).collect());
        out.bounds_only = false;
        return Ok(out);
    }
    if line_count(p, n) > OMEGA_SEARCH_CAP {
        return Ok(out);
    }
    let source = build_k(p, n)?;
    let base = source.base()?;
    let opts = SearchOptions {
        budget,
        use_lower_bounds: true,
    };
    match min_target_rank(base, q, &opts) {
        Ok(t) => {
            out.lower = out.lower.max(t.r);
            out.exact = Some(t.r);
            out.assignment = Some(t.assignment);
            out.bounds_only = false;
            out.nodes = t.nodes;
        }
        Err(Error::BudgetExhausted { lower, .. }) => {
            out.lower = out.lower.max(lower);
            out.nodes = budget;
        }
        Err(e) => return Err(e),
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaBounds {
    pub p: u32,
    pub n: usize,
    pub lower: usize,
    pub upper: usize,
}

/// θ_p(n) is only ever bracketed: its target K(Z^r) is infinite.
pub fn theta_bounds(p: u32, n: usize) -> Result<ThetaBounds> {
    let (lower, upper) = omega_bounds(p, 2, n)?;
    Ok(ThetaBounds { p, n, lower, upper })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SkeletonReport {
    pub p: u32,
    pub m_max: usize,
    /// s_p(Δ^m_{(k)}) keyed by (m, k).
    pub values: BTreeMap<(usize, usize), usize>,
    pub missing: Vec<(usize, usize)>,
    pub violations: Vec<String>,
    pub chains_checked: usize,
}

impl SkeletonReport {
    pub fn is_complete(&self) -> bool {
        self.missing.is_empty()
    }

    pub fn chain_holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// s_p of every skeleton Δ^m_{(k)} with m <= m_max + 1, then the chain
/// s(Δ^{m+1}_{(k+1)}) <= s(Δ^m_{(k)}) <= s(Δ^{m+1}_{(k)}) <= s(Δ^m_{(k)}) + 1
/// for every m <= m_max and k <= m.
pub fn skeleton_checks(p: u32, m_max: usize, budget: u64) -> Result<SkeletonReport> {
    check_prime(p as u64)?;
    let mut report = SkeletonReport {
        p,
        m_max,
        ..Default::default()
    };
    let opts = SearchOptions {
        budget,
        use_lower_bounds: true,
    };
    for m in 0..=m_max + 1 {
        for k in 0..=m {
            let sk = skeleton_of_simplex(m, k)?;
            let r = s_p(&sk, p, &opts)?;
            match r.s_p {
                Some(s) => {
                    report.values.insert((m, k), s);
                }
                None => report.missing.push((m, k)),
            }
        }
    }
    let v = |m: usize, k: usize| report.values.get(&(m, k)).copied();
    let mut violations = Vec::new();
    let mut checked = 0;
    for m in 0..=m_max {
        for k in 0..=m {
            let (Some(a), Some(b), Some(c)) = (v(m + 1, k + 1), v(m, k), v(m + 1, k)) else {
                continue;
            };
            checked += 1;
            if !(a <= b && b <= c && c <= b + 1) {
                violations.push(format!(
                    "m={m} k={k}: s(D^{}_{}) = {a}, s(D^{m}_{k}) = {b}, s(D^{}_{k}) = {c}",
                    m + 1,
                    k + 1,
                    m + 1
                ));
            }
        }
    }
    report.violations = violations;
    report.chains_checked = checked;
    Ok(report)
}

/// For an assignment on K(F_p^n): if it is nondegenerate into K(F_q^r) then it
/// is injective. Returns whether the implication holds for this assignment;
/// degenerate assignments hold vacuously.
pub fn injectivity_check(
    p: u32,
    q: u32,
    n: usize,
    r: usize,
    assignment: &[FpVector],
) -> Result<bool> {
    check_prime(p as u64)?;
    check_prime(q as u64)?;
    let source = build_k(p, n)?;
    let base = source.base()?;
    if !is_nondegenerate(base, q, r, assignment) {
        return Ok(true);
    }
    let mut lines = assignment
        .iter()
        .map(canonical_line)
        .collect::<Result<Vec<_>>>()?;
    lines.sort();
    lines.dedup();
    Ok(lines.len() == assignment.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complete_graph, cycle, petersen_graph, simplex_boundary};

    fn v(p: u32, c: &[i64]) -> FpVector {
        FpVector::new(p, c).unwrap()
    }

    #[test]
    fn nondegeneracy() {
        let k = build_k(3, 2).unwrap();
        let id: Vec<FpVector> = k.labels().to_vec();
        assert!(is_nondegenerate(k.base().unwrap(), 3, 2, &id));
        let edge = SimplicialComplex::simplex(2);
        assert!(!is_nondegenerate(
            &edge,
            2,
            2,
            &[v(2, &[1, 0]), v(2, &[1, 0])]
        ));
        let tri = cycle(3);
        let lines = [v(2, &[0, 1]), v(2, &[1, 0]), v(2, &[1, 1])];
        assert!(is_nondegenerate(&tri, 2, 2, &lines));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&cycle(5)), 3);
        assert_eq!(chromatic_number(build_k(2, 2).unwrap().base().unwrap()), 3);
        for m in 1..6 {
            assert_eq!(chromatic_number(&skeleton_of_simplex(m, 1).unwrap()), m + 1);
        }
        assert_eq!(chromatic_number(&petersen_graph()), 3);
        assert_eq!(chromatic_number(&skeleton_of_simplex(4, 0).unwrap()), 1);
    }

    #[test]
    fn cycles_and_complete_graphs() {
        let o = SearchOptions::default();
        let r3 = s_p(&cycle(3), 2, &o).unwrap();
        assert_eq!((r3.s_p, r3.r), (Some(1), Some(2)));
        let r5 = s_p(&cycle(5), 2, &o).unwrap();
        assert_eq!((r5.s_p, r5.r), (Some(3), Some(2)));
        assert_eq!(s_p_graph_formula(&cycle(5), 2).unwrap(), 3);
        assert_eq!(s_p_graph_formula(&complete_graph(4), 2).unwrap(), 1);
        assert_eq!(s_p(&complete_graph(4), 2, &o).unwrap().s_p, Some(1));
        assert_eq!(s_p_graph_formula(&complete_graph(4), 3).unwrap(), 2);
        assert_eq!(s_p(&complete_graph(4), 3, &o).unwrap().s_p, Some(2));
        assert_eq!(s_p_graph_formula(&petersen_graph(), 2).unwrap(), 8);
        assert!(s_p_graph_formula(&simplex_boundary(4), 2).is_err());
    }

    #[test]
    fn bounds_examples() {
        let b = bounds_report(&simplex_boundary(4), 2).unwrap();
        assert_eq!((b.lower, b.upper), (0, 1));
        let x = crate::universal::build_x(2, 3).unwrap();
        let b = bounds_report(x.base().unwrap(), 2).unwrap();
        assert_eq!(b.upper, 4);
        let d = skeleton_of_simplex(5, 0).unwrap();
        let b = bounds_report(&d, 3).unwrap();
        assert_eq!((b.lower, b.upper), (5, 5));
        assert!(b.chain_holds());
    }

    #[test]
    fn universal_k_attains_n() {
        for (p, n) in [(2, 2), (2, 3), (3, 2)] {
            let k = build_k(p, n).unwrap();
            let r = s_p(k.base().unwrap(), p, &SearchOptions::default()).unwrap();
            assert_eq!(r.s_p, Some(k.vertex_count() - n));
        }
    }

    #[test]
    fn budget_gives_bounds() {
        let opts = SearchOptions {
            budget: 3,
            use_lower_bounds: false,
        };
        let e = min_target_rank(&petersen_graph(), 2, &opts).unwrap_err();
        let Error::BudgetExhausted { lower, upper, .. } = e else {
            panic!("{e:?}")
        };
        assert!(lower <= 2 && 2 <= upper);
        let rep = s_p(&petersen_graph(), 2, &opts).unwrap();
        assert!(rep.budget_exhausted && rep.lower <= 8 && 8 <= rep.upper);
    }

    #[test]
    fn omega_small() {
        let w = omega(2, 3, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(w.exact, Some(2));
        assert_eq!((w.lower, w.upper), (2, 3));
        let w = omega(3, 2, 2, DEFAULT_BUDGET).unwrap();
        assert_eq!(w.exact, Some(3));
        for n in 1..=3 {
            assert_eq!(omega(5, 5, n, 10).unwrap().exact, Some(n));
        }
        let t = theta_bounds(3, 2).unwrap();
        assert_eq!((t.lower, t.upper), (3, 4));
        assert!(omega(3, 2, 4, 10).unwrap().bounds_only);
    }

    #[test]
    fn injective_maps() {
        let k = build_k(2, 2).unwrap();
        let maps =
            enumerate_nondegenerate_maps(k.base().unwrap(), 3, 2, usize::MAX, DEFAULT_BUDGET)
                .unwrap();
        // ordered triples of distinct lines among the 4 lines of F_3^2
        assert_eq!(maps.len(), 24);
        for a in &maps {
            assert!(injectivity_check(2, 3, 2, 2, a).unwrap());
        }
    }

    #[test]
    fn skeletons_small() {
        let rep = skeleton_checks(2, 3, DEFAULT_BUDGET).unwrap();
        assert!(
            rep.is_complete() && rep.chain_holds(),
            "{:?}",
            rep.violations
        );
        for m in 0..=4 {
            assert_eq!(rep.values[&(m, 0)], m);
        }
        assert_eq!(rep.values[&(3, 1)], 1);
        assert_eq!(rep.values[&(2, 1)], 1);
    }
}
