//! Foldings of sparse Hamiltonian graphs and the layouts derived from them.
//!
//! A folding assigns every line vertex a level so that consecutive vertices
//! differ by one level and the two feet of each arc share a level. Reading the
//! levels bottom to top gives a permutation store whose edge displacement is at
//! most the number of linear segments.

use crate::error::{Error, Result};
use crate::graph::{double_graph, SparseHamiltonianGraph, Vertex};
use crate::metrics::max_displacement;
use crate::store::UncodedStore;

/// `ceil((9k+1)/5)`, the group-count bound of the arc-feet grouping.
pub fn group_bound(k: usize) -> usize {
    (9 * k + 1).div_ceil(5)
}

/// `floor((9k+1)/5)`, the displacement bound of [`layout_sham`].
pub fn displacement_bound(k: usize) -> usize {
    (9 * k + 1) / 5
}

/// Levels `h(1..=n)`, stored 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Folding {
    h: Vec<usize>,
}

impl Folding {
    pub fn new(h: Vec<usize>) -> Result<Self> {
        let n = h.len();
        if let Some(x) = h.iter().position(|&v| v == 0 || v > n) {
            return Err(Error::InvalidParams(format!(
                "h({}) = {} outside 1..={n}",
                x + 1,
                h[x]
            )));
        }
        if let Some(x) = h.windows(2).position(|w| w[0].abs_diff(w[1]) != 1) {
            return Err(Error::InvalidParams(format!(
                "h({}) and h({}) do not differ by one",
                x + 1,
                x + 2
            )));
        }
        Ok(Folding { h })
    }

    /// Shifts integer levels so the lowest is 1.
    fn from_raw(raw: Vec<i64>) -> Result<Self> {
        let min = raw.iter().copied().min().unwrap_or(1);
        Folding::new(raw.into_iter().map(|v| (v - min + 1) as usize).collect())
    }

    pub fn n(&self) -> usize {
        self.h.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.h
    }

    pub fn at(&self, x: Vertex) -> usize {
        self.h[x - 1]
    }

    /// Vertices at level `y`, increasing.
    pub fn level(&self, y: usize) -> Vec<Vertex> {
        (1..=self.n()).filter(|&x| self.at(x) == y).collect()
    }

    pub fn thickness(&self) -> usize {
        let mut count = vec![0usize; self.n() + 1];
        for &v in &self.h {
            count[v] += 1;
        }
        count.into_iter().max().unwrap_or(0)
    }

    /// Interior positions where the slope reverses.
    pub fn breakpoints(&self) -> Vec<Vertex> {
        (2..self.n())
            .filter(|&x| self.at(x - 1) == self.at(x + 1))
            .collect()
    }

    pub fn segments(&self) -> usize {
        self.breakpoints().len() + 1
    }

    /// Fails on the first arc whose feet sit at different levels.
    pub fn check_arcs(&self, g: &SparseHamiltonianGraph) -> Result<()> {
        if g.n() != self.n() {
            return Err(Error::InvalidParams(format!(
                "folding has {} positions, graph has {}",
                self.n(),
                g.n()
            )));
        }
        match g.arcs().iter().find(|&&(a, b)| self.at(a) != self.at(b)) {
            Some(&(a, b)) => Err(Error::InvalidParams(format!(
                "arc ({a},{b}) not aligned: h({a}) = {}, h({b}) = {}",
                self.at(a),
                self.at(b)
            ))),
            None => Ok(()),
        }
    }
}

/// The level-1/level-2 zig-zag; valid for any graph whose feet share a parity.
pub fn alternating_folding(n: usize) -> Folding {
    Folding {
        h: (1..=n).map(|x| 2 - x % 2).collect(),
    }
}

pub fn identity_folding(n: usize) -> Folding {
    Folding { h: (1..=n).collect() }
}

/// Folds `cycle_odd(n)` at its middle vertex.
pub fn cycle_folding(n: usize) -> Result<Folding> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParams(format!(
            "cycle folding needs odd n >= 3, got {n}"
        )));
    }
    Folding::new(
        (1..=n)
            .map(|u| if u <= n.div_ceil(2) { u } else { n + 1 - u })
            .collect(),
    )
}

/// Folds `rainbow(k, n)` at vertex `k+1`; the tail past `2k+1` keeps rising.
pub fn rainbow_folding(k: usize, n: usize) -> Result<Folding> {
    if k == 0 || n < 2 * k + 1 {
        return Err(Error::InvalidParams(
            "rainbow folding needs k >= 1, n >= 2k+1".to_string(),
        ));
    }
    Folding::new(
        (1..=n)
            .map(|u| {
                if u <= 2 * k + 1 {
                    u.abs_diff(k + 1) + 1
                } else {
                    u - k
                }
            })
            .collect(),
    )
}

/// Level order, increasing index within a level.
pub fn linearize_from_folding(h: &Folding, g: &SparseHamiltonianGraph) -> Result<UncodedStore> {
    h.check_arcs(g)?;
    let mut order: Vec<Vertex> = (1..=h.n()).collect();
    order.sort_by_key(|&x| (h.at(x), x));
    UncodedStore::new(g.n(), order)
}

/// Largest edge displacement of the level-order layout of `h`.
pub fn folding_displacement(h: &Folding, g: &SparseHamiltonianGraph) -> Result<usize> {
    max_displacement(&linearize_from_folding(h, g)?, &g.to_file_graph())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldPlan {
    pub groups: Vec<Vec<Vertex>>,
    pub r: Vec<i64>,
    pub d: Vec<i64>,
}

impl FoldPlan {
    pub fn segments(&self) -> usize {
        self.r.len()
    }
}

fn uniform_parity(feet: &[Vertex]) -> bool {
    feet.windows(2).all(|w| w[0] % 2 == w[1] % 2)
}

/// Pairs adjacent arc feet greedily by smallest gap; the rest stay singletons.
pub fn group_arc_feet(g: &SparseHamiltonianGraph) -> Result<Vec<Vec<Vertex>>> {
    let c = g.feet();
    if !uniform_parity(&c) {
        return Err(Error::Precondition(
            "arc feet must share a parity; double the graph first".into(),
        ));
    }
    let m = c.len();
    if m == 0 {
        return Ok(Vec::new());
    }
    let idx = |v: Vertex| c.binary_search(&v).expect("foot");
    let partner = |i: usize| idx(g.partner(c[i]).expect("foot has partner"));
    // adj[i] is the pair (c[i], c[i+1])
    let mut adj = vec![true; m - 1];
    let mut paired = vec![false; m - 1];
    loop {
        let pick = (0..m - 1)
            .filter(|&i| adj[i] && partner(i) != i + 1)
            .min_by_key(|&i| (c[i + 1] - c[i], i));
        let Some(p) = pick else { break };
        let drop_touching = |i: usize, adj: &mut Vec<bool>| {
            if i > 0 {
                adj[i - 1] = false;
            }
            if i + 1 < m {
                adj[i] = false;
            }
        };
        for x in [partner(p), partner(p + 1)] {
            drop_touching(x, &mut adj);
            for nb in [x.checked_sub(1), Some(x + 1).filter(|&y| y < m)]
                .into_iter()
                .flatten()
            {
                drop_touching(partner(nb), &mut adj);
            }
        }
        drop_touching(p, &mut adj);
        drop_touching(p + 1, &mut adj);
        paired[p] = true;
    }
    let mut groups = Vec::new();
    let mut i = 0;
    while i < m {
        if i + 1 < m && paired[i] {
            groups.push(vec![c[i], c[i + 1]]);
            i += 2;
        } else {
            groups.push(vec![c[i]]);
            i += 1;
        }
    }
    Ok(groups)
}

fn check_groups(g: &SparseHamiltonianGraph, groups: &[Vec<Vertex>]) -> Result<()> {
    let flat: Vec<Vertex> = groups.iter().flatten().copied().collect();
    if flat != g.feet() || groups.iter().any(|gr| gr.is_empty()) {
        return Err(Error::InvalidParams(
            "groups must split the sorted arc feet into consecutive runs".into(),
        ));
    }
    Ok(())
}

fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        -1
    } else {
        1
    }
}

/// Fold anchors from the closed-form rule: a group starts at its smallest foot
/// unless that foot's partner is the upper foot of a pair, in which case it is
/// shifted by the pair's gap.
pub fn compute_fold_plan(g: &SparseHamiltonianGraph, groups: &[Vec<Vertex>]) -> Result<FoldPlan> {
    check_groups(g, groups)?;
    if groups.is_empty() {
        return Err(Error::InvalidParams("no arcs to plan for".into()));
    }
    let r: Vec<i64> = groups
        .iter()
        .enumerate()
        .map(|(i, gr)| {
            let first = gr[0];
            let p = g.partner(first).expect("foot");
            let linked = groups.iter().enumerate().find(|(_, q)| q.len() == 2 && q[1] == p);
            match linked {
                None => first as i64,
                Some((gp, q)) => {
                    let gap = (q[1] - q[0]) as i64;
                    if i % 2 == gp % 2 {
                        first as i64 - gap
                    } else {
                        first as i64 + gap
                    }
                }
            }
        })
        .collect();
    let mut d = Vec::new();
    for w in r.windows(2) {
        if (w[0] + w[1]) % 2 != 0 {
            return Err(Error::Infeasible(format!(
                "anchors {} and {} differ in parity",
                w[0], w[1]
            )));
        }
        d.push((w[0] + w[1]) / 2);
    }
    let plan = FoldPlan {
        groups: groups.to_vec(),
        r,
        d,
    };
    validate_plan(g, &plan)?;
    Ok(plan)
}

/// Checks anchor order, breakpoint placement, group containment and arc alignment.
pub fn validate_plan(g: &SparseHamiltonianGraph, plan: &FoldPlan) -> Result<()> {
    check_groups(g, &plan.groups)?;
    let l = plan.groups.len();
    let bad = |m: String| Err(Error::Infeasible(m));
    if plan.r.len() != l || plan.d.len() + 1 != l {
        return bad(format!("{l} groups need {l} anchors and {} breakpoints", l - 1));
    }
    for i in 0..l - 1 {
        if plan.r[i] >= plan.r[i + 1] {
            return bad(format!(
                "anchors r{} = {} and r{} = {} not increasing",
                i + 1,
                plan.r[i],
                i + 2,
                plan.r[i + 1]
            ));
        }
        if plan.r[i] + plan.r[i + 1] != 2 * plan.d[i] {
            return bad(format!(
                "breakpoint d{} = {} is not the anchor midpoint",
                i + 1,
                plan.d[i]
            ));
        }
    }
    let n = g.n() as i64;
    if l > 1 && (plan.d[0] <= 1 || plan.d[l - 2] >= n) {
        return bad(format!("breakpoints must lie strictly inside 1..{n}"));
    }
    let seg_lo = |i: usize| if i == 0 { 1 } else { plan.d[i - 1] };
    let seg_hi = |i: usize| if i + 1 == l { n + 1 } else { plan.d[i] };
    for (i, gr) in plan.groups.iter().enumerate() {
        for &f in gr {
            let f = f as i64;
            if f < seg_lo(i) || f >= seg_hi(i) {
                return bad(format!(
                    "foot {f} of group {} falls outside segment [{}, {})",
                    i + 1,
                    seg_lo(i),
                    seg_hi(i)
                ));
            }
        }
    }
    let seg_of = |v: Vertex| plan.groups.iter().position(|gr| gr.contains(&v)).expect("foot");
    for &(a, b) in g.arcs() {
        let (ja, jb) = (seg_of(a), seg_of(b));
        let ha = sign(ja) * (a as i64 - plan.r[ja]);
        let hb = sign(jb) * (b as i64 - plan.r[jb]);
        if ha != hb {
            return bad(format!("arc ({a},{b}) lands at different heights"));
        }
    }
    Ok(())
}

/// Searches anchors for a fixed grouping; arc constraints force all but one
/// anchor per connected block of segments.
pub fn solve_fold_plan(g: &SparseHamiltonianGraph, groups: &[Vec<Vertex>]) -> Option<FoldPlan> {
    check_groups(g, groups).ok()?;
    let l = groups.len();
    if l == 0 {
        return None;
    }
    let n = g.n() as i64;
    let seg_of = |v: Vertex| groups.iter().position(|gr| gr.contains(&v)).expect("foot");
    // forced[j]: (earlier segment, same sign?, value) with r_j = value + r_i or value - r_i
    let mut forced: Vec<Vec<(usize, bool, i64)>> = vec![Vec::new(); l];
    for &(a, b) in g.arcs() {
        let (ja, jb) = (seg_of(a), seg_of(b));
        if ja == jb {
            return None;
        }
        let (lo, flo, hi, fhi) = if ja < jb { (ja, a, jb, b) } else { (jb, b, ja, a) };
        let (flo, fhi) = (flo as i64, fhi as i64);
        if lo % 2 == hi % 2 {
            forced[hi].push((lo, true, fhi - flo));
        } else {
            forced[hi].push((lo, false, flo + fhi));
        }
    }
    let lo_foot: Vec<i64> = groups.iter().map(|gr| gr[0] as i64).collect();
    let hi_foot: Vec<i64> = groups.iter().map(|gr| *gr.last().unwrap() as i64).collect();
    let mut r = vec![0i64; l];

    // (segments, n, forced anchors per segment, lowest foot, highest foot)
    type Ctx<'a> = (usize, i64, &'a [Vec<(usize, bool, i64)>], &'a [i64], &'a [i64]);

    fn dfs(i: usize, r: &mut Vec<i64>, ctx: &Ctx) -> bool {
        let (l, n, forced, lo_foot, hi_foot) = *ctx;
        if i == l {
            return true;
        }
        let mut want: Option<i64> = None;
        for &(j, same, v) in &forced[i] {
            let x = if same { r[j] + v } else { v - r[j] };
            match want {
                Some(w) if w != x => return false,
                _ => want = Some(x),
            }
        }
        let cands: Vec<i64> = match want {
            Some(w) => vec![w],
            None if i == 0 => {
                let mut c: Vec<i64> = (1 - n..=2 * n).collect();
                c.sort_by_key(|&v| ((v - lo_foot[0]).abs(), v));
                c
            }
            None => {
                let lo = r[i - 1] + 2;
                let hi = 2 * lo_foot[i] - r[i - 1];
                let mut c: Vec<i64> = (lo..=hi).step_by(2).collect();
                c.sort_by_key(|&v| ((v - lo_foot[i]).abs(), v));
                c
            }
        };
        for v in cands {
            if i > 0 {
                let prev = r[i - 1];
                if v <= prev || (v + prev) % 2 != 0 {
                    continue;
                }
                let d = (v + prev) / 2;
                if d <= hi_foot[i - 1] || d > lo_foot[i] || (i == 1 && d <= 1) || (i == l - 1 && d >= n) {
                    continue;
                }
            }
            r[i] = v;
            if dfs(i + 1, r, ctx) {
                return true;
            }
        }
        false
    }

    let ctx = (l, n, forced.as_slice(), lo_foot.as_slice(), hi_foot.as_slice());
    if !dfs(0, &mut r, &ctx) {
        return None;
    }
    let d = r.windows(2).map(|w| (w[0] + w[1]) / 2).collect();
    let plan = FoldPlan {
        groups: groups.to_vec(),
        r,
        d,
    };
    validate_plan(g, &plan).ok().map(|_| plan)
}

/// Piecewise-linear folding through the plan's anchors, all at one height.
/// A single segment runs upward; otherwise the first segment descends.
pub fn plan_to_folding(plan: &FoldPlan, n: usize) -> Result<Folding> {
    let l = plan.r.len();
    if l == 0 || plan.d.len() + 1 != l {
        return Err(Error::InvalidParams(
            "plan needs L anchors and L-1 breakpoints".into(),
        ));
    }
    for i in 0..l - 1 {
        if plan.r[i] >= plan.r[i + 1] || plan.r[i] + plan.r[i + 1] != 2 * plan.d[i] {
            return Err(Error::InvalidParams(format!(
                "segment {} is not monotone between its anchors",
                i + 1
            )));
        }
    }
    if l > 1 && (plan.d[0] <= 1 || plan.d[l - 2] >= n as i64) {
        return Err(Error::InvalidParams(
            "breakpoints must lie strictly inside the line".into(),
        ));
    }
    let sigma = |i: usize| if l == 1 { 1 } else { sign(i) };
    let mut seg = 0;
    let raw = (1..=n as i64)
        .map(|x| {
            while seg + 1 < l && x >= plan.d[seg] {
                seg += 1;
            }
            sigma(seg) * (x - plan.r[seg])
        })
        .collect();
    Folding::from_raw(raw)
}

/// Original graph of a doubled one: odd vertex `2i-1` is vertex `i`.
fn undouble_graph(gd: &SparseHamiltonianGraph) -> Result<SparseHamiltonianGraph> {
    if gd.n().is_multiple_of(2) || gd.feet().iter().any(|f| f % 2 == 0) {
        return Err(Error::InvalidParams(
            "not a doubled graph: need odd n and odd feet".into(),
        ));
    }
    SparseHamiltonianGraph::new(
        gd.n().div_ceil(2),
        gd.arcs().iter().map(|&(a, b)| (a.div_ceil(2), b.div_ceil(2))),
    )
}

/// Keeps odd vertices of a doubled-graph store, relabeled `2i-1 -> i`.
pub fn undouble_store(s: &UncodedStore) -> Result<UncodedStore> {
    UncodedStore::new(
        s.n().div_ceil(2),
        s.sequence()
            .iter()
            .filter(|&&v| v % 2 == 1)
            .map(|&v| v.div_ceil(2))
            .collect(),
    )
}

/// Folding of the doubled graph built from blocks of a permutation store of
/// the original graph; thickness is at most three times the store's displacement.
pub fn fold_from_store(g_doubled: &SparseHamiltonianGraph, s: &UncodedStore) -> Result<Folding> {
    let g = undouble_graph(g_doubled)?;
    if !s.is_permutation() || s.n() != g.n() {
        return Err(Error::InvalidStore(
            "need a permutation store of the original graph".into(),
        ));
    }
    let n = g.n();
    let block = max_displacement(s, &g.to_file_graph())?.max(1);
    let mut pos = vec![0usize; n + 1];
    for (j, &v) in s.sequence().iter().enumerate() {
        pos[v] = j + 1;
    }
    let q = |v: Vertex| (pos[v] - 1) / block + 1;
    let f: Vec<usize> = (1..=n)
        .map(|v| {
            let qv = q(v);
            let forward = g.partner(v).is_some_and(|p| q(p) == qv + 1);
            if qv % 2 == 0 && forward {
                qv / 2 + 1
            } else {
                qv.div_ceil(2)
            }
        })
        .collect();
    let mut h = vec![0usize; 2 * n - 1];
    for i in 0..n {
        h[2 * i] = 2 * f[i] - 1;
    }
    for i in 0..n - 1 {
        let (a, b) = (h[2 * i], h[2 * i + 2]);
        h[2 * i + 1] = if a != b { (a + b) / 2 } else { a + 1 };
    }
    let h = Folding::new(h)?;
    h.check_arcs(g_doubled)?;
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlanSource {
    /// no arcs: the identity folding
    Line,
    /// closed-form anchors on the greedy grouping
    Formula,
    /// anchor search on the greedy grouping
    Search,
    /// anchor search over all splits of the feet into consecutive runs
    SearchAnyGrouping,
    /// the two-level zig-zag
    Alternating,
}

impl PlanSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            PlanSource::Line => "line",
            PlanSource::Formula => "formula",
            PlanSource::Search => "search",
            PlanSource::SearchAnyGrouping => "search-any-grouping",
            PlanSource::Alternating => "alternating",
        }
    }
}

#[derive(Clone, Debug)]
pub struct ShamLayout {
    pub store: UncodedStore,
    /// the graph actually folded (the doubled one when feet parities differ)
    pub folded: SparseHamiltonianGraph,
    pub doubled: bool,
    pub folding: Folding,
    pub groups: Vec<Vec<Vertex>>,
    pub plan: Option<FoldPlan>,
    pub source: PlanSource,
    pub displacement: usize,
}

/// Full pipeline: double if needed, group, plan, fold, linearize, undouble.
pub fn layout_sham_report(g: &SparseHamiltonianGraph) -> Result<ShamLayout> {
    let doubled = !uniform_parity(&g.feet());
    let work = if doubled { double_graph(g) } else { g.clone() };
    let n = work.n();
    let (folding, groups, plan, source) = if work.arc_count() == 0 {
        (identity_folding(n), Vec::new(), None, PlanSource::Line)
    } else {
        let groups = group_arc_feet(&work)?;
        let found = compute_fold_plan(&work, &groups)
            .ok()
            .map(|p| (p, PlanSource::Formula))
            .or_else(|| solve_fold_plan(&work, &groups).map(|p| (p, PlanSource::Search)))
            .or_else(|| {
                run_groupings(&work)
                    .into_iter()
                    .find_map(|gr| solve_fold_plan(&work, &gr))
                    .map(|p| (p, PlanSource::SearchAnyGrouping))
            });
        match found {
            Some((p, src)) => (plan_to_folding(&p, n)?, groups, Some(p), src),
            None => (alternating_folding(n), groups, None, PlanSource::Alternating),
        }
    };
    let lin = linearize_from_folding(&folding, &work)?;
    let store = if doubled { undouble_store(&lin)? } else { lin };
    let displacement = max_displacement(&store, &g.to_file_graph())?;
    Ok(ShamLayout {
        store,
        folded: work,
        doubled,
        folding,
        groups,
        plan,
        source,
        displacement,
    })
}

pub fn layout_sham(g: &SparseHamiltonianGraph) -> UncodedStore {
    layout_sham_report(g)
        .expect("every stage has a valid fallback")
        .store
}

/// Every split of the sorted feet into consecutive runs, fewest runs first.
fn run_groupings(g: &SparseHamiltonianGraph) -> Vec<Vec<Vec<Vertex>>> {
    let c = g.feet();
    if c.len() > 16 {
        return Vec::new();
    }
    let cuts = c.len().saturating_sub(1);
    let mut masks: Vec<u32> = (0..1u32 << cuts).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks
        .into_iter()
        .map(|mask| {
            let mut out = vec![vec![c[0]]];
            for (i, &foot) in c.iter().enumerate().skip(1) {
                if mask >> (i - 1) & 1 == 1 {
                    out.push(vec![foot]);
                } else {
                    out.last_mut().unwrap().push(foot);
                }
            }
            out
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{cycle_odd, rainbow, three_arc};

    #[test]
    fn three_arc_grouping_and_plan() {
        let g = three_arc();
        let groups = group_arc_feet(&g).unwrap();
        assert_eq!(groups, vec![vec![2, 4], vec![8], vec![10], vec![12], vec![16]]);
        let plan = compute_fold_plan(&g, &groups).unwrap();
        assert_eq!(plan.r, vec![2, 8, 10, 14, 16]);
        assert_eq!(plan.d, vec![5, 9, 12, 15]);
        let h = plan_to_folding(&plan, 17).unwrap();
        assert_eq!(h.values(), &[5, 4, 3, 2, 1, 2, 3, 4, 5, 4, 3, 2, 3, 4, 5, 4, 3]);
        assert_eq!(h.at(2) - h.at(4), 2);
        assert_eq!(h.segments(), 5);
        h.check_arcs(&g).unwrap();
    }

    #[test]
    fn single_arc() {
        let g = SparseHamiltonianGraph::new(8, [(2, 6)]).unwrap();
        let groups = group_arc_feet(&g).unwrap();
        assert_eq!(groups, vec![vec![2], vec![6]]);
        let plan = compute_fold_plan(&g, &groups).unwrap();
        assert_eq!((plan.r.clone(), plan.d.clone()), (vec![2, 6], vec![4]));
        let h = plan_to_folding(&plan, 8).unwrap();
        assert_eq!(h.at(2), h.at(6));
    }

    #[test]
    fn no_arcs() {
        let g = SparseHamiltonianGraph::new(5, []).unwrap();
        assert!(group_arc_feet(&g).unwrap().is_empty());
        let out = layout_sham_report(&g).unwrap();
        assert_eq!(out.store.sequence(), &[1, 2, 3, 4, 5]);
        assert_eq!(out.displacement, 1);
        let one = FoldPlan {
            groups: vec![],
            r: vec![3],
            d: vec![],
        };
        assert_eq!(plan_to_folding(&one, 4).unwrap(), identity_folding(4));
    }

    #[test]
    fn mixed_parity_feet_rejected_by_grouping() {
        let g = SparseHamiltonianGraph::new(8, [(2, 5)]).unwrap();
        assert!(group_arc_feet(&g).is_err());
        assert!(layout_sham_report(&g).unwrap().doubled);
    }

    #[test]
    fn cycle_zigzag() {
        let g = cycle_odd(5).unwrap();
        let h = cycle_folding(5).unwrap();
        assert_eq!(h.thickness(), 2);
        let s = linearize_from_folding(&h, &g).unwrap();
        assert_eq!(s.sequence(), &[1, 5, 2, 4, 3]);
        assert_eq!(max_displacement(&s, &g.to_file_graph()).unwrap(), 2);
    }

    #[test]
    fn rainbow_zigzag() {
        let g = rainbow(3, 10).unwrap();
        let h = rainbow_folding(3, 10).unwrap();
        h.check_arcs(&g).unwrap();
        assert_eq!(h.thickness(), 2);
        let s = linearize_from_folding(&h, &g).unwrap();
        assert_eq!(max_displacement(&s, &g.to_file_graph()).unwrap(), 2);
    }

    #[test]
    fn folding_rejects_jumps() {
        assert!(Folding::new(vec![1, 3, 2]).is_err());
        assert!(Folding::new(vec![0, 1]).is_err());
    }

    #[test]
    fn fold_from_cycle_store() {
        let g = cycle_odd(5).unwrap();
        let s = UncodedStore::new(5, vec![1, 5, 2, 4, 3]).unwrap();
        let h = fold_from_store(&double_graph(&g), &s).unwrap();
        assert!(h.thickness() <= 6);
    }

    #[test]
    fn three_arc_layout_within_bound() {
        let out = layout_sham_report(&three_arc()).unwrap();
        assert_eq!(out.source, PlanSource::Formula);
        assert!(out.displacement <= 5);
    }
}
