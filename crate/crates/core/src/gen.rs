//! Seeded random instance generator.
//!
//! Reproducibility is part of the contract: the same seed, leaf count, and
//! weights produce the same tree on every platform and in every future
//! version. That rules out floating RNG dependencies, so the generator owns
//! a fixed splitmix64 implementation whose output stream is pinned by tests.
//!
//! A tree over `n` leaves is drawn top-down, expanding nodes depth-first and
//! left child first. Each internal node consumes randomness in a fixed
//! order: first the composition kind (weighted), then the left child's leaf
//! budget (uniform in `1..=budget-1`, drawn even when the budget forces the
//! split). Fresh vertex names `v2, v3, ...` are handed out at expansion
//! time — a series midpoint or a generalized-series dangling endpoint — and
//! the root spans `v0` to `v1`.

use std::fmt;

use crate::tree::{Node, Op, ParseTree};

/// Splitmix64: 64 bits of state, one output per step.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform in `0..n`, unbiased (rejection sampling above the largest
    /// multiple of `n`).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        let zone = (u64::MAX / n) * n;
        loop {
            let v = self.next_u64();
            if v < zone {
                return v % n;
            }
        }
    }

    /// Uniform in `[0, 1)` with 53 random bits.
    pub fn unit_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

/// Relative odds of each composition kind at an internal node.
#[derive(Clone, Copy, Debug)]
pub struct GenWeights {
    pub series: f64,
    pub parallel: f64,
    pub gseries: f64,
}

impl Default for GenWeights {
    fn default() -> GenWeights {
        GenWeights { series: 1.0, parallel: 1.0, gseries: 1.0 }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenError {
    /// A tree needs at least one leaf.
    NoLeaves,
    /// Weights must be finite, non-negative, and not all zero.
    BadWeights,
}

impl fmt::Display for GenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenError::NoLeaves => write!(f, "leaf count must be at least 1"),
            GenError::BadWeights => {
                write!(f, "weights must be finite, non-negative, and not all zero")
            }
        }
    }
}

impl std::error::Error for GenError {}

/// Draw a random tree with `leaves` edges, deterministically from `seed`.
pub fn generate(seed: u64, leaves: usize, weights: &GenWeights) -> Result<ParseTree, GenError> {
    if leaves == 0 {
        return Err(GenError::NoLeaves);
    }
    let w = [weights.series, weights.parallel, weights.gseries];
    if w.iter().any(|x| !x.is_finite() || *x < 0.0) || w.iter().sum::<f64>() <= 0.0 {
        return Err(GenError::BadWeights);
    }
    let total: f64 = w.iter().sum();

    let mut rng = SplitMix64::new(seed);
    let mut names: Vec<Box<str>> = vec!["v0".into(), "v1".into()];
    let fresh = |names: &mut Vec<Box<str>>| {
        let id = names.len() as u32;
        names.push(format!("v{id}").into());
        id
    };

    // Nodes in expansion (pre)order: every parent precedes its children, and
    // a node's subtree is contiguous, so with `b` leaves in the left subtree
    // the right child sits exactly `2b` slots after the parent.
    let mut pre: Vec<Node> = Vec::with_capacity(2 * leaves - 1);
    let mut stack = vec![(leaves as u64, 0u32, 1u32)];
    while let Some((budget, s, t)) = stack.pop() {
        if budget == 1 {
            pre.push(Node::Leaf { u: s, v: t });
            continue;
        }
        let roll = rng.unit_f64() * total;
        let op = if roll < w[0] {
            Op::Series
        } else if roll < w[0] + w[1] {
            Op::Parallel
        } else {
            Op::GSeries
        };
        let left_budget = 1 + rng.below(budget - 1);
        let right_budget = budget - left_budget;
        let here = pre.len() as u32;
        let (left, right) = (here + 1, here + 1 + (2 * left_budget - 1) as u32);
        match op {
            Op::Series => {
                let mid = fresh(&mut names);
                pre.push(Node::Inner { op, left, right, s, t });
                stack.push((right_budget, mid, t));
                stack.push((left_budget, s, mid));
            }
            Op::Parallel => {
                pre.push(Node::Inner { op, left, right, s, t });
                stack.push((right_budget, s, t));
                stack.push((left_budget, s, t));
            }
            Op::GSeries => {
                let dangle = fresh(&mut names);
                pre.push(Node::Inner { op, left, right, s, t });
                stack.push((right_budget, t, dangle));
                stack.push((left_budget, s, t));
            }
        }
    }

    // Reverse into the children-before-parents arena layout.
    let n = pre.len() as u32;
    let flip = |id: u32| n - 1 - id;
    let nodes: Vec<Node> = pre
        .iter()
        .rev()
        .map(|node| match *node {
            Node::Leaf { u, v } => Node::Leaf { u, v },
            Node::Inner { op, left, right, s, t } => {
                Node::Inner { op, left: flip(left), right: flip(right), s, t }
            }
        })
        .collect();
    Ok(ParseTree::from_raw_parts(names, nodes, n - 1, leaves))
}
