//! The worked-example fixture suite behind `paper-examples`: each row pairs an
//! expected value with what the library computes.

use serde::Serialize;

use crate::coded::{
    build_example_store, reduce_hk_canonical, remove_coded_chunk_jump, HKCode, XorChainStore,
};
use crate::consistency::consistency_log;
use crate::error::Result;
use crate::families::{
    cycle_odd, example1, example1_hubs, example1j, example2, multiply, rainbow, three_arc,
};
use crate::folding::{
    compute_fold_plan, cycle_folding, displacement_bound, group_arc_feet, layout_sham_report,
    linearize_from_folding, rainbow_folding,
};
use crate::gf2::BitVec;
use crate::graph::{FileGraph, Vertex};
use crate::metrics::{evaluate, evaluate_stretch, max_displacement, rational_string, Rational};
use crate::oracle::{exact_bandwidth, exact_jump, OracleOptions};
use crate::store::Store;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureRow {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

fn row(name: impl Into<String>, expected: impl ToString, observed: impl ToString, pass: bool) -> FixtureRow {
    FixtureRow {
        name: name.into(),
        expected: expected.to_string(),
        observed: observed.to_string(),
        pass,
    }
}

fn eq_row<T: PartialEq + ToString>(name: impl Into<String>, expected: T, observed: T) -> FixtureRow {
    let pass = expected == observed;
    row(name, expected.to_string(), observed.to_string(), pass)
}

fn r(v: Rational) -> String {
    rational_string(&v)
}

/// Best uncoded stretch at `m = n`, `t = 2`, forced by a vertex of degree `d`:
/// some neighbour lands `ceil(d/2)` slots away.
pub fn neighbor_count_lower_bound(g: &FileGraph) -> Rational {
    let d = (1..=g.n()).map(|v| g.degree(v)).max().unwrap_or(0) as u64;
    Rational::new(d.div_ceil(2) + 1, 2)
}

fn stretch2(s: &Store, g: &FileGraph) -> Result<Rational> {
    Ok(evaluate_stretch(s, g, 2)?.stretch_metric)
}

pub fn example1_rows(big_n: usize) -> Result<Vec<FixtureRow>> {
    let g = example1(big_n)?;
    let nn = big_n as u64;
    let coded = stretch2(&build_example_store("example1_coded", big_n)?, &g)?;
    let dup = stretch2(&build_example_store("example1_uncoded_2dup", big_n)?, &g)?;
    let perm = stretch2(&build_example_store("example1_uncoded_perm", big_n)?, &g)?;
    let lower = neighbor_count_lower_bound(&g);
    let (a, _) = example1_hubs(big_n);
    let tag = |s: &str| format!("example1 N={big_n} {s}");
    Ok(vec![
        row(
            tag("coded stretch"),
            r(Rational::new(2 * nn + 2, 2)),
            r(coded),
            coded == Rational::new(2 * nn + 2, 2),
        ),
        row(
            tag("two-duplicate stretch"),
            r(Rational::new(2 * nn + 2, 2)),
            r(dup),
            dup == Rational::new(2 * nn + 2, 2),
        ),
        row(
            tag("permutation stretch"),
            r(Rational::new(3 * nn + 2, 2)),
            r(perm),
            perm == Rational::new(3 * nn + 2, 2),
        ),
        eq_row(tag("hub degree"), 6 * big_n + 1, g.degree(a)),
        row(tag("uncoded lower bound"), r(perm), r(lower), lower == perm),
        row(
            tag("coding gain"),
            r(Rational::new(3 * nn + 2, 2 * nn + 2)),
            r(lower / coded),
            lower / coded == Rational::new(3 * nn + 2, 2 * nn + 2),
        ),
    ])
}

pub fn example2_rows(big_n: usize) -> Result<Vec<FixtureRow>> {
    let g = example2(big_n)?;
    let s = build_example_store("example2_coded", big_n)?;
    let st = stretch2(&s, &g)?;
    let want = Rational::new(2 * big_n as u64 + 1, 2);
    let chain = XorChainStore::from_coded(&s.to_coded())?;
    Ok(vec![
        row(
            format!("example2 N={big_n} coded stretch"),
            r(want),
            r(st),
            st == want,
        ),
        eq_row(format!("example2 N={big_n} redundant columns"), 1, s.m() - g.n()),
        eq_row(
            format!("example2 N={big_n} chain identities"),
            true,
            chain.chain_identities_hold(),
        ),
    ])
}

pub fn example1j_rows(opts: &OracleOptions) -> Result<Vec<FixtureRow>> {
    let tree = example1j();
    let g = tree.to_file_graph();
    let n = g.n();
    let coded = build_example_store("example1j_coded", 0)?;
    let jc = evaluate(&coded, &g, n)?.jump_metric;
    let ju = exact_jump(&g, n, n + 1, opts)?;
    let removed = remove_coded_chunk_jump(&coded.to_coded())?;
    let jr = evaluate(&Store::Uncoded(removed), &g, n)?.jump_metric;
    Ok(vec![
        eq_row("example1j coded jump", 2, jc),
        row("example1j uncoded jump at m=n+1", ">= 3", ju, ju >= 3),
        row(
            "example1j removal jump",
            format!("<= {}", jc + 2),
            jr,
            jr <= jc + 2,
        ),
    ])
}

pub fn folding_rows(opts: &OracleOptions) -> Result<Vec<FixtureRow>> {
    let mut rows = Vec::new();
    let cyc = cycle_odd(5)?;
    let cg = cyc.to_file_graph();
    rows.push(eq_row("cycle_odd(5) bandwidth", 2, exact_bandwidth(&cg, opts)?));
    let cs = linearize_from_folding(&cycle_folding(5)?, &cyc)?;
    rows.push(eq_row(
        "cycle_odd(5) zig-zag displacement",
        2,
        max_displacement(&cs, &cg)?,
    ));

    let nest = rainbow(3, 7)?;
    let nh = rainbow_folding(3, 7)?;
    let ns = linearize_from_folding(&nh, &nest)?;
    rows.push(eq_row("nested arcs k=3 folding thickness", 2, nh.thickness()));
    rows.push(eq_row(
        "nested arcs k=3 displacement",
        2,
        max_displacement(&ns, &nest.to_file_graph())?,
    ));

    let long = multiply(2, 8)?;
    let lb = exact_bandwidth(&long.to_file_graph(), opts)?;
    rows.push(row("long arcs k=2 n=8 bandwidth", ">= 2", lb, lb >= 2));
    let ld = layout_sham_report(&long)?.displacement;
    rows.push(row(
        "long arcs k=2 n=8 layout displacement",
        format!("<= {}", displacement_bound(2)),
        ld,
        ld <= displacement_bound(2),
    ));

    let arcs3 = three_arc();
    let plan = compute_fold_plan(&arcs3, &group_arc_feet(&arcs3)?)?;
    rows.push(eq_row(
        "three-arc plan r",
        "[2, 8, 10, 14, 16]".to_string(),
        format!("{:?}", plan.r),
    ));
    rows.push(eq_row(
        "three-arc plan d",
        "[5, 9, 12, 15]".to_string(),
        format!("{:?}", plan.d),
    ));
    let fd = layout_sham_report(&arcs3)?.displacement;
    rows.push(row("three-arc layout displacement", "<= 5", fd, fd <= 5));
    Ok(rows)
}

/// The designed `[H;K]` input of the worked reduction.
pub fn designed_reduction_code() -> HKCode {
    let b = |s: &str| BitVec::parse(s).expect("fixture bits");
    HKCode::new(
        vec![b("011011")],
        vec![b("100000"), b("001011"), b("100001"), b("001100"), b("000101")],
    )
    .expect("fixture has full rank")
}

pub fn reduction_rows() -> Result<Vec<FixtureRow>> {
    let red = reduce_hk_canonical(&designed_reduction_code())?;
    let combos: Vec<Vec<Vertex>> = (0..red.store.m()).map(|j| red.store.combination(j)).collect();
    Ok(vec![
        eq_row(
            "designed code reduction",
            "[[1], [2], [4], [5], [2, 3], [3]]".to_string(),
            format!("{combos:?}"),
        ),
        eq_row("designed code domination", true, red.dominated()),
    ])
}

/// Every fixture row, then one row per consistency finding (pass = detected).
pub fn run_fixtures(max_n: usize, opts: &OracleOptions) -> Result<Vec<FixtureRow>> {
    let mut rows = Vec::new();
    for big_n in 1..=max_n {
        rows.extend(example1_rows(big_n)?);
    }
    for big_n in 1..=max_n {
        rows.extend(example2_rows(big_n)?);
    }
    rows.extend(example1j_rows(opts)?);
    rows.extend(folding_rows(opts)?);
    rows.extend(reduction_rows()?);
    for f in consistency_log(opts)? {
        rows.push(row(
            format!("consistency {}", f.id),
            "detected",
            &f.observed,
            f.detected,
        ));
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_pass_at_n1() {
        let rows = run_fixtures(1, &OracleOptions::default()).unwrap();
        let bad: Vec<_> = rows.iter().filter(|r| !r.pass).collect();
        assert!(bad.is_empty(), "{bad:#?}");
    }
}
