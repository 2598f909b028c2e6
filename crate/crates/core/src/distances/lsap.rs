//! Rectangular linear sum assignment (shortest augmenting path Hungarian).

/// Minimum-cost assignment of every row to a distinct column.
///
/// `cost` is row-major with `rows <= cols`. Returns the total cost and the
/// column chosen for each row. Runs in `O(rows² · cols)`.
pub fn solve(cost: &[i64], rows: usize, cols: usize) -> (i64, Vec<usize>) {
    assert!(rows <= cols, "more rows than columns");
    assert_eq!(cost.len(), rows * cols);
    if rows == 0 {
        return (0, Vec::new());
    }
    const INF: i64 = i64::MAX / 4;
    // 1-based potentials; column 0 is the virtual source.
    let mut u = vec![0i64; rows + 1];
    let mut v = vec![0i64; cols + 1];
    let mut owner = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];
    let mut min_to = vec![INF; cols + 1];
    let mut used = vec![false; cols + 1];

    for row in 1..=rows {
        owner[0] = row;
        let mut col0 = 0;
        min_to.fill(INF);
        used.fill(false);
        loop {
            used[col0] = true;
            let r = owner[col0];
            let mut delta = INF;
            let mut col1 = 0;
            for c in 1..=cols {
                if used[c] {
                    continue;
                }
                let reduced = cost[(r - 1) * cols + (c - 1)] - u[r] - v[c];
                if reduced < min_to[c] {
                    min_to[c] = reduced;
                    way[c] = col0;
                }
                if min_to[c] < delta {
                    delta = min_to[c];
                    col1 = c;
                }
            }
            for c in 0..=cols {
                if used[c] {
                    u[owner[c]] += delta;
                    v[c] -= delta;
                } else {
                    min_to[c] -= delta;
                }
            }
            col0 = col1;
            if owner[col0] == 0 {
                break;
            }
        }
        loop {
            let prev = way[col0];
            owner[col0] = owner[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; rows];
    for c in 1..=cols {
        if owner[c] != 0 {
            assignment[owner[c] - 1] = c - 1;
        }
    }
    let total = assignment
        .iter()
        .enumerate()
        .map(|(r, &c)| cost[r * cols + c])
        .sum();
    (total, assignment)
}
