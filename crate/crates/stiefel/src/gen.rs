//! Seeded random matrices.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stiefel_core::bipartite::{enumerate_support_sets, BipartiteGraph};
use stiefel_core::trop::{TropMatrix, TropScalar};
use stiefel_core::{Error, Result, DEFAULT_BUDGET};

/// Shape of the support of a generated matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Every entry finite.
    Dense,
    /// Support drawn uniformly from the support sets of the given size.
    SupportSet,
    /// Diagonal block on the first `d` columns, full rows on the rest.
    Pointed,
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "dense" => Ok(Mode::Dense),
            "support-set" => Ok(Mode::SupportSet),
            "pointed" => Ok(Mode::Pointed),
            _ => Err(format!("unknown mode {s:?}; expected dense, support-set or pointed")),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Dense => "dense",
            Mode::SupportSet => "support-set",
            Mode::Pointed => "pointed",
        })
    }
}

/// The reproducible generator behind every seeded command.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The pointed support set: `(i, i)` for `i ≤ d` and every `(i, j)` with `j > d`.
pub fn pointed_support(d: usize, n: usize) -> Result<BipartiteGraph> {
    if d == 0 || d > n {
        return Err(Error::Precondition("pointed shapes need 1 ≤ d ≤ n"));
    }
    let mut g = BipartiteGraph::empty(d, n);
    for i in 0..d {
        g.insert(i, i);
        for j in d..n {
            g.insert(i, j);
        }
    }
    Ok(g)
}

/// Integer entries in `-range..=range` on `support`, `∞` elsewhere.
pub fn fill_support(g: &BipartiteGraph, range: i64, rng: &mut impl Rng) -> TropMatrix {
    let (d, n) = (g.left_size(), g.right_size());
    let mut entries = Vec::with_capacity(d * n);
    for i in 0..d {
        for j in 0..n {
            entries.push(if g.contains(i, j) {
                TropScalar::int(rng.gen_range(-range..=range))
            } else {
                TropScalar::Infinity
            });
        }
    }
    TropMatrix::new(d, n, entries).expect("shape is consistent")
}

/// A random `d × n` matrix of the given mode.
pub fn gen(d: usize, n: usize, mode: Mode, range: i64, rng: &mut impl Rng) -> Result<TropMatrix> {
    if d == 0 || n == 0 || range < 0 {
        return Err(Error::Precondition("sizes must be positive and the range non-negative"));
    }
    let support = match mode {
        Mode::Dense => BipartiteGraph::full(d, n),
        Mode::Pointed => pointed_support(d, n)?,
        Mode::SupportSet => {
            if d > n {
                return Err(Error::Precondition("support sets need d ≤ n"));
            }
            enumerate_support_sets(d, n, DEFAULT_BUDGET)?.choose(rng).cloned().expect("support sets exist for d ≤ n")
        }
    };
    Ok(fill_support(&support, range, rng))
}
