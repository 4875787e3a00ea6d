//! The terminal-state algebra underlying the solver.
//!
//! While a graph is being assembled from two-terminal pieces, everything about
//! a piece that the rest of the graph can still observe is summarized per
//! terminal by four facts: is the terminal itself chosen, does a chosen edge
//! touch it, is it dominated, and are its incident edges toward interior
//! vertices all dominated. Exactly seven combinations of those facts are
//! consistent, giving seven [`TerminalState`]s. Gluing two pieces at a shared
//! terminal is [`combine`]; it is a partial, commutative, associative
//! operation.

use std::sync::OnceLock;

/// Per-terminal summary flags. See [`TerminalState`] for the consistent
/// combinations.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct StateFlags {
    /// The terminal vertex is in the chosen set.
    pub in_set: bool,
    /// Some chosen edge is incident to the terminal.
    pub edge_in_set: bool,
    /// The terminal is dominated (by itself, a neighbor in the set, or an
    /// incident chosen edge).
    pub dominated: bool,
    /// Every incident edge whose other endpoint is an interior vertex is
    /// dominated. Edges running between the two terminals of the same piece
    /// are accounted separately by the solver.
    pub all_edges_dominated: bool,
}

/// One of the seven consistent terminal summaries.
///
/// Indices follow a fixed table (`T`/`F` for `in_set`, `edge_in_set`,
/// `dominated`, `all_edges_dominated`):
///
/// | index | flags      |
/// |-------|------------|
/// | 0     | T T T T    |
/// | 1     | T F T T    |
/// | 2     | F T T T    |
/// | 3     | F F T T    |
/// | 4     | F F T F    |
/// | 5     | F F F T    |
/// | 6     | F F F F    |
///
/// States 0–3 are *settled*: the terminal needs nothing further from the rest
/// of the graph and may be hidden away as an interior vertex.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TerminalState(u8);

const FLAG_TABLE: [(bool, bool, bool, bool); 7] = [
    (true, true, true, true),
    (true, false, true, true),
    (false, true, true, true),
    (false, false, true, true),
    (false, false, true, false),
    (false, false, false, true),
    (false, false, false, false),
];

impl TerminalState {
    pub const COUNT: usize = 7;

    pub const ALL: [TerminalState; 7] = [
        TerminalState(0),
        TerminalState(1),
        TerminalState(2),
        TerminalState(3),
        TerminalState(4),
        TerminalState(5),
        TerminalState(6),
    ];

    pub fn from_index(index: usize) -> Option<TerminalState> {
        (index < Self::COUNT).then(|| TerminalState(index as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn flags(self) -> StateFlags {
        let (in_set, edge_in_set, dominated, all_edges_dominated) = FLAG_TABLE[self.index()];
        StateFlags { in_set, edge_in_set, dominated, all_edges_dominated }
    }

    /// The unique state with the given flags, or `None` if the flags are
    /// contradictory (a chosen terminal or a terminal touched by a chosen
    /// edge is necessarily dominated with all incident edges dominated).
    pub fn from_flags(f: StateFlags) -> Option<TerminalState> {
        if (f.in_set || f.edge_in_set) && !(f.dominated && f.all_edges_dominated) {
            return None;
        }
        let tuple = (f.in_set, f.edge_in_set, f.dominated, f.all_edges_dominated);
        FLAG_TABLE.iter().position(|&t| t == tuple).map(|i| TerminalState(i as u8))
    }

    /// Settled states (0–3) demand nothing more: dominated, every incident
    /// edge dominated.
    pub fn is_settled(self) -> bool {
        let f = self.flags();
        f.dominated && f.all_edges_dominated
    }

    /// The same state with `all_edges_dominated` cleared: the state after
    /// charging the terminal with one more undominated incident edge. Only
    /// meaningful for states without a chosen element at the terminal
    /// (those dominate all their incident edges outright).
    pub fn with_pending_edge(self) -> TerminalState {
        debug_assert!(
            !self.flags().in_set && !self.flags().edge_in_set,
            "a chosen vertex or incident chosen edge leaves no edge pending"
        );
        match self.0 {
            3 => TerminalState(4),
            5 => TerminalState(6),
            _ => self,
        }
    }
}

impl std::fmt::Display for TerminalState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Glue two summaries of the *same* vertex, seen from two pieces that share
/// it. `None` means the summaries contradict each other (the vertex cannot
/// both be chosen and not chosen).
///
/// Chosen-edge and dominated facts union; an interior-facing edge pending on
/// one side is discharged if the other side holds a chosen edge at the vertex
/// (or the vertex itself is chosen).
pub fn combine(a: TerminalState, b: TerminalState) -> Option<TerminalState> {
    let fa = a.flags();
    let fb = b.flags();
    if fa.in_set != fb.in_set {
        return None;
    }
    let in_set = fa.in_set;
    let edge_in_set = fa.edge_in_set || fb.edge_in_set;
    let dominated = fa.dominated || fb.dominated || in_set;
    let all_edges_dominated = (fa.all_edges_dominated || fb.edge_in_set || in_set)
        && (fb.all_edges_dominated || fa.edge_in_set || in_set);
    let state = TerminalState::from_flags(StateFlags { in_set, edge_in_set, dominated, all_edges_dominated });
    debug_assert!(state.is_some(), "combining consistent states yields a consistent state");
    state
}

/// All ordered pairs `(a, b)` with `combine(a, b) == Some(result)`, in
/// lexicographic order. Derived from [`combine`] itself.
pub fn pairs_for(result: TerminalState) -> &'static [(TerminalState, TerminalState)] {
    static TABLES: OnceLock<[Vec<(TerminalState, TerminalState)>; 7]> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let mut tables: [Vec<(TerminalState, TerminalState)>; 7] = Default::default();
        for a in TerminalState::ALL {
            for b in TerminalState::ALL {
                if let Some(c) = combine(a, b) {
                    tables[c.index()].push((a, b));
                }
            }
        }
        tables
    });
    &tables[result.index()]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(i: usize) -> TerminalState {
        TerminalState::from_index(i).unwrap()
    }

    #[test]
    fn flags_roundtrip_through_classification() {
        for s in TerminalState::ALL {
            assert_eq!(TerminalState::from_flags(s.flags()), Some(s));
        }
    }

    #[test]
    fn contradictory_flags_classify_to_none() {
        // A chosen terminal is dominated and dominates its incident edges.
        for edge_in_set in [false, true] {
            for dominated in [false, true] {
                for all_edges_dominated in [false, true] {
                    let f = StateFlags { in_set: true, edge_in_set, dominated, all_edges_dominated };
                    assert_eq!(
                        TerminalState::from_flags(f).is_some(),
                        dominated && all_edges_dominated
                    );
                }
            }
        }
        // Same for a terminal touched by a chosen edge.
        let f = StateFlags { in_set: false, edge_in_set: true, dominated: true, all_edges_dominated: false };
        assert_eq!(TerminalState::from_flags(f), None);
        let f = StateFlags { in_set: false, edge_in_set: true, dominated: false, all_edges_dominated: true };
        assert_eq!(TerminalState::from_flags(f), None);
    }

    #[test]
    fn settled_states_are_exactly_first_four() {
        for s in TerminalState::ALL {
            assert_eq!(s.is_settled(), s.index() <= 3);
        }
    }

    #[test]
    fn combine_is_defined_exactly_on_matching_membership() {
        let mut defined = 0;
        for a in TerminalState::ALL {
            for b in TerminalState::ALL {
                let ok = combine(a, b).is_some();
                assert_eq!(ok, a.flags().in_set == b.flags().in_set, "{a} x {b}");
                defined += ok as usize;
            }
        }
        assert_eq!(defined, 29);
    }

    #[test]
    fn combine_is_commutative_idempotent_associative() {
        for a in TerminalState::ALL {
            assert_eq!(combine(a, a), Some(a));
            for b in TerminalState::ALL {
                assert_eq!(combine(a, b), combine(b, a));
                for c in TerminalState::ALL {
                    let left = combine(a, b).and_then(|ab| combine(ab, c));
                    let right = combine(b, c).and_then(|bc| combine(a, bc));
                    assert_eq!(left, right, "({a} {b}) {c}");
                }
            }
        }
    }

    #[test]
    fn combining_settled_states_stays_settled() {
        for a in TerminalState::ALL.into_iter().filter(|s| s.is_settled()) {
            for b in TerminalState::ALL.into_iter().filter(|s| s.is_settled()) {
                if let Some(c) = combine(a, b) {
                    assert!(c.is_settled(), "{a} + {b} = {c}");
                }
            }
        }
    }

    /// The inverse tables, frozen. Together with the 20 membership-mismatch
    /// pairs these 29 partition all 49 ordered pairs.
    #[test]
    fn inverse_tables_match_frozen_expectation() {
        let expect: [&[(usize, usize)]; 7] = [
            &[(0, 0), (0, 1), (1, 0)],
            &[(1, 1)],
            &[(2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (4, 2), (5, 2), (6, 2)],
            &[(3, 3), (3, 5), (5, 3)],
            &[(3, 4), (3, 6), (4, 3), (4, 4), (4, 5), (4, 6), (5, 4), (6, 3), (6, 4)],
            &[(5, 5)],
            &[(5, 6), (6, 5), (6, 6)],
        ];
        let mut total = 0;
        for (k, want) in expect.iter().enumerate() {
            let got: Vec<(usize, usize)> =
                pairs_for(st(k)).iter().map(|&(a, b)| (a.index(), b.index())).collect();
            assert_eq!(got, *want, "pairs for state {k}");
            total += got.len();
        }
        assert_eq!(total, 29);
        // Partition check: every ordered pair is either in exactly one table
        // or has mismatched membership flags.
        let mut seen = [[0u8; 7]; 7];
        for k in 0..7 {
            for &(a, b) in pairs_for(st(k)) {
                seen[a.index()][b.index()] += 1;
            }
        }
        let mut incompatible = 0;
        for a in 0..7 {
            for b in 0..7 {
                let mismatch = st(a).flags().in_set != st(b).flags().in_set;
                assert_eq!(seen[a][b], (!mismatch) as u8, "pair ({a}, {b})");
                incompatible += mismatch as usize;
            }
        }
        assert_eq!(incompatible, 20);
    }

    #[test]
    fn pending_edge_clears_edge_domination_only() {
        assert_eq!(st(3).with_pending_edge(), st(4));
        assert_eq!(st(5).with_pending_edge(), st(6));
        assert_eq!(st(4).with_pending_edge(), st(4));
        assert_eq!(st(6).with_pending_edge(), st(6));
    }
}
