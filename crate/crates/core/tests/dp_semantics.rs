//! Checks the solver's root table cell by cell against its definition.
//!
//! A root cell describes *partial* solutions: subsets where every interior
//! vertex is dominated and every edge avoiding both terminals is dominated.
//! Edges that touch a terminal may stay undominated — their debt is carried
//! by that terminal's `all_edges_dominated` flag, and only vanishes from the
//! aggregate once something at the terminal pays it off. So for each test
//! tree we enumerate every subset of V ∪ E of the realized graph, keep the
//! partial solutions, and classify each by the pair of terminal summaries it
//! induces, computed straight from the flag definitions over the whole
//! graph. Per pair, minimum size and number of minima must match
//! [`gspmixdom::root_table`] exactly, including which pairs are infeasible.

use std::collections::HashMap;

use gspmixdom::oracle;
use gspmixdom::{
    generate, parse_expr, realize, root_table, solve, Count, GenWeights, Multigraph, ParseTree,
    StateFlags, TerminalState,
};

/// Per terminal-state pair: minimum subset size and how many subsets hit it.
type PairTable = [[Option<(u64, u64)>; 7]; 7];

fn enumerate_pairs(g: &Multigraph, s: &str, t: &str) -> PairTable {
    let verts: Vec<&str> = g.vertices().collect();
    let n = verts.len();
    let m = g.edge_count();
    assert!(n + m <= 22, "enumeration is exponential; keep test graphs small");

    let vpos: HashMap<&str, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let ends: Vec<(usize, usize)> = g
        .edges()
        .map(|(_, u, v)| (vpos[u], vpos[v]))
        .collect();
    let incident: Vec<Vec<usize>> = {
        let mut inc = vec![Vec::new(); n];
        for (k, &(u, v)) in ends.iter().enumerate() {
            inc[u].push(k);
            if v != u {
                inc[v].push(k);
            }
        }
        inc
    };
    let (si, ti) = (vpos[s], vpos[t]);

    let mut table: PairTable = [[None; 7]; 7];
    for mask in 0u64..(1 << (n + m)) {
        let vin = |i: usize| mask & (1 << i) != 0;
        let ein = |k: usize| mask & (1 << (n + k)) != 0;

        let edge_at: Vec<bool> = incident
            .iter()
            .map(|inc| inc.iter().any(|&k| ein(k)))
            .collect();
        let edge_ok =
            |k: usize| ein(k) || vin(ends[k].0) || vin(ends[k].1) || edge_at[ends[k].0] || edge_at[ends[k].1];
        let vertex_ok = |i: usize| {
            vin(i)
                || edge_at[i]
                || incident[i]
                    .iter()
                    .any(|&k| vin(ends[k].0 + ends[k].1 - i))
        };

        let interior_fine = (0..n).all(|i| i == si || i == ti || vertex_ok(i))
            && (0..m).all(|k| {
                let (u, v) = ends[k];
                [u, v].contains(&si) || [u, v].contains(&ti) || edge_ok(k)
            });
        if !interior_fine {
            continue;
        }

        let state_at = |i: usize| {
            let flags = StateFlags {
                in_set: vin(i),
                edge_in_set: edge_at[i],
                dominated: vertex_ok(i),
                all_edges_dominated: incident[i].iter().all(|&k| edge_ok(k)),
            };
            TerminalState::from_flags(flags).expect("flags computed from a set are consistent")
        };
        let (a, b) = (state_at(si).index(), state_at(ti).index());
        let size = mask.count_ones() as u64;
        table[a][b] = Some(match table[a][b] {
            None => (size, 1),
            Some((best, _)) if size < best => (size, 1),
            Some((best, c)) if size == best => (best, c + 1),
            Some(keep) => keep,
        });
    }
    table
}

fn check_tree(tree: &ParseTree) {
    let g = realize(tree);
    let (s, t) = tree.terminals();
    let expected = enumerate_pairs(&g, s, t);
    let table = root_table(tree);
    for (i, row) in expected.iter().enumerate() {
        for (j, want) in row.iter().enumerate() {
            let a = TerminalState::from_index(i).unwrap();
            let b = TerminalState::from_index(j).unwrap();
            let got = table.projected(a, b);
            let want = want.map(|(size, count)| (size, Count::from(count)));
            assert_eq!(got, want, "pair ({a},{b}) of {}", gspmixdom::format_expr(tree));
        }
    }
}

const FIXED: &[&str] = &[
    "e(x,y)",
    "s(e(a,b),e(b,c))",
    "p(e(a,b),e(a,b))",
    "g(e(a,b),e(b,c))",
    "p(s(e(a,b),e(b,c)),e(a,c))",
    "g(p(e(a,b),e(a,b)),s(e(b,c),e(c,d)))",
    "s(p(s(e(x,w),e(w,z)),e(x,z)),e(z,y))",
];

#[test]
fn projected_table_matches_enumeration_on_fixed_trees() {
    for text in FIXED {
        check_tree(&parse_expr(text).unwrap());
    }
}

#[test]
fn projected_table_matches_enumeration_on_generated_trees() {
    let w = GenWeights::default();
    for (seed, leaves) in [(11, 5), (12, 6), (13, 7), (14, 6), (15, 5), (16, 7)] {
        check_tree(&generate(seed, leaves, &w).unwrap());
    }
}

#[test]
fn solve_agrees_with_the_brute_force_oracle() {
    let w = GenWeights::default();
    let mut trees: Vec<ParseTree> = FIXED.iter().map(|t| parse_expr(t).unwrap()).collect();
    for seed in 30..40 {
        trees.push(generate(seed, 4 + (seed as usize % 4), &w).unwrap());
    }
    for tree in &trees {
        let g = realize(tree);
        let sol = solve(tree);
        let truth = oracle::brute_force(&g, false).unwrap();
        assert_eq!(sol.gamma_m, truth.gamma_m, "{}", gspmixdom::format_expr(tree));
        assert_eq!(sol.count, truth.count, "{}", gspmixdom::format_expr(tree));
        assert_eq!(sol.witness.len() as u64, sol.gamma_m);
        assert!(oracle::is_mixed_dominating(&g, &sol.witness).unwrap());
    }
}
