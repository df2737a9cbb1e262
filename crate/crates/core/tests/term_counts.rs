//! Search-layer behavior that is not already covered by the acceptance
//! tables: eps-monotonicity and the partial-sum reuse contract.

use besselterm::{term_count, Order, PartialSum, QuadratureSpec, RootTable, TargetFunction};

fn ord(v: f64) -> Order<f64> {
    Order::new(v).unwrap()
}

#[test]
fn term_count_is_non_increasing_in_eps() {
    let roots = RootTable::new();
    let spec = QuadratureSpec::default();
    let target = TargetFunction::new(ord(0.0), 1).unwrap();
    let mut sums = PartialSum::new(target, ord(3.0));
    let mut previous = u32::MAX;
    for k in 1..=36 {
        let eps = 0.01 * k as f64;
        let r = term_count::min_terms_from_sums(&mut sums, eps, 1000, &roots, &spec).unwrap();
        assert!(
            r.l <= previous,
            "l jumped from {previous} to {} at eps = {eps}",
            r.l
        );
        previous = r.l;
    }
}

#[test]
fn sweep_reuse_matches_independent_cells() {
    let roots = RootTable::new();
    let spec = QuadratureSpec::default();
    let t01 = TargetFunction::new(ord(0.0), 1).unwrap();
    let t12 = TargetFunction::new(ord(1.0), 2).unwrap();
    let p_primes = [ord(1.0), ord(2.0)];
    let eps = [0.05, 0.15, 0.3];

    let table = term_count::sweep(&[t01, t12], &p_primes, &eps, 1000, &roots, &spec).unwrap();
    assert_eq!(table.rows.len(), 12);

    for row in &table.rows {
        let target = TargetFunction::new(ord(row.p), row.q).unwrap();
        let query =
            term_count::TermCountQuery::new(target, ord(row.p_prime), row.eps_ratio, 1000).unwrap();
        let direct = term_count::min_terms(&query, &roots, &spec).unwrap();
        assert_eq!(
            row.l, direct.l,
            "sweep and direct search disagree at p={} q={} p'={} eps={}",
            row.p, row.q, row.p_prime, row.eps_ratio
        );
    }

    // deterministic row order: (p, q, p_prime, eps_ratio), eps fastest
    let keys: Vec<(f64, u32, f64, f64)> = table
        .rows
        .iter()
        .map(|r| (r.p, r.q, r.p_prime, r.eps_ratio))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(keys, sorted);
}

#[test]
fn single_point_slope_grid_reduces_to_a_plain_fit() {
    let roots = RootTable::new();
    let spec = QuadratureSpec::default();
    let grid = besselterm::model::slope_grid(
        ord(0.0),
        1,
        0.15,
        0.15,
        0.01,
        &[1, 2, 3],
        100,
        &roots,
        &spec,
    )
    .unwrap();
    assert_eq!(grid.len(), 1);
    // at eps 0.15 the counts are exactly (1, 2, 3)
    let direct = besselterm::model::linear_fit(&[(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).unwrap();
    assert_eq!(grid[0].1.slope, direct.slope);
    assert_eq!(grid[0].1.intercept, direct.intercept);
}

#[test]
fn concurrent_root_lookups_are_deterministic() {
    let table = std::sync::Arc::new(RootTable::<f64>::new());
    let mut handles = Vec::new();
    for _ in 0..4 {
        let t = table.clone();
        handles.push(std::thread::spawn(move || {
            (1..=30u32)
                .map(|q| t.root(ord(2.0), q).unwrap().to_bits())
                .collect::<Vec<u64>>()
        }));
    }
    let results: Vec<Vec<u64>> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for r in &results[1..] {
        assert_eq!(r, &results[0]);
    }
}

#[test]
fn sweep_deduplicates_repeated_inputs() {
    let roots = RootTable::new();
    let spec = QuadratureSpec::default();
    let t = TargetFunction::new(ord(0.0), 1).unwrap();
    let table = term_count::sweep(
        &[t, t],
        &[ord(2.0), ord(2.0)],
        &[0.15, 0.15],
        100,
        &roots,
        &spec,
    )
    .unwrap();
    assert_eq!(table.rows.len(), 1);
}
