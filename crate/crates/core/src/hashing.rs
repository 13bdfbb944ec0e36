//! Prime-modulus hit-and-miss hash families and the terminal splitter family.
//!
//! `h_p(x) = x mod p` over the first `1 + a·b·⌈log₂N⌉` primes. For every pair
//! of disjoint sets `A, B ⊆ [N]` with `|A| ≤ a`, `|B| ≤ b` some prime keeps the
//! residues of `A` and `B` apart: a nonzero difference `x - y` with
//! `|x - y| < N` has at most `⌈log₂N⌉` distinct prime divisors, so the `a·b`
//! differences rule out fewer primes than the family holds.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::TerminalSet;

/// `⌈log₂ x⌉`, with `ceil_log2(0) = ceil_log2(1) = 0`.
pub fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

fn sieve(limit: usize) -> Vec<usize> {
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// The first `l` primes in increasing order.
pub fn first_primes(l: usize) -> Vec<usize> {
    if l == 0 {
        return Vec::new();
    }
    let mut limit = (2.0 * l as f64 * ((l + 2) as f64).ln()) as usize + 16;
    loop {
        let mut primes = sieve(limit);
        if primes.len() >= l {
            primes.truncate(l);
            return primes;
        }
        limit *= 2;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HmHashFamily {
    pub domain: usize,
    pub a: usize,
    pub b: usize,
    pub primes: Vec<usize>,
    /// Largest prime, the alphabet bound.
    pub q: usize,
    /// Smallest nonempty preimage over all members.
    pub min_support: usize,
}

impl HmHashFamily {
    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// First prime keeping every residue of `miss` away from every residue of `hit`.
    pub fn separating_prime(&self, hit: &[usize], miss: &[usize]) -> Option<usize> {
        self.primes
            .iter()
            .copied()
            .find(|&p| hit.iter().all(|&x| miss.iter().all(|&y| x % p != y % p)))
    }
}

pub fn build_hm_family(domain: usize, a: usize, b: usize) -> Result<HmHashFamily> {
    if b > a {
        return Err(Error::InvalidArgument(format!("need b <= a, got a = {a}, b = {b}")));
    }
    if domain == 0 {
        return Err(Error::InvalidArgument("domain size must be at least 1".into()));
    }
    let l = 1 + a * b * ceil_log2(domain) as usize;
    let primes = first_primes(l);
    let q = *primes.last().unwrap();
    // Residue classes of [N] mod p have sizes floor(N/p) and ceil(N/p).
    let min_support = primes
        .iter()
        .map(|&p| if p >= domain { 1 } else { domain / p })
        .min()
        .unwrap();
    Ok(HmHashFamily {
        domain,
        a,
        b,
        primes,
        q,
        min_support,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyMode {
    AllPairs,
    HashPreimages,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalFamily {
    pub subsets: Vec<Vec<usize>>,
    pub mode: FamilyMode,
    /// The underlying hash family in hash mode.
    pub hash: Option<HmHashFamily>,
}

impl TerminalFamily {
    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    /// Upper bound on the family size: `l·q` in hash mode, `t(t-1)/2` otherwise.
    pub fn size_bound(&self, t: usize) -> usize {
        match &self.hash {
            Some(h) => h.len() * h.q,
            None => t * t.saturating_sub(1) / 2,
        }
    }
}

/// Terminal count at or above which the hash construction is used.
pub fn hash_mode_threshold(t: usize, beta: usize) -> usize {
    let lg = ceil_log2(t) as usize;
    200 * beta * lg * lg
}

/// Splitter family over `terminals`: all pairs for small `t`, hash preimages otherwise.
pub fn build_terminal_family(terminals: &TerminalSet, beta: usize) -> Result<TerminalFamily> {
    let t = terminals.len();
    let mode = if t < hash_mode_threshold(t, beta) {
        FamilyMode::AllPairs
    } else {
        FamilyMode::HashPreimages
    };
    build_terminal_family_in_mode(terminals, beta, mode)
}

/// As [`build_terminal_family`] with the mode chosen by the caller.
///
/// Forcing hash mode below the threshold fails if some preimage would hold a
/// single terminal.
pub fn build_terminal_family_in_mode(
    terminals: &TerminalSet,
    beta: usize,
    mode: FamilyMode,
) -> Result<TerminalFamily> {
    if beta < 2 {
        return Err(Error::InvalidArgument(format!("beta must be at least 2, got {beta}")));
    }
    let members = terminals.as_slice();
    let t = members.len();
    if t < 2 {
        return Err(Error::InvalidArgument("terminal family needs at least 2 terminals".into()));
    }
    match mode {
        FamilyMode::AllPairs => {
            let subsets = (0..t)
                .flat_map(|i| (i + 1..t).map(move |j| vec![members[i], members[j]]))
                .collect();
            Ok(TerminalFamily {
                subsets,
                mode,
                hash: None,
            })
        }
        FamilyMode::HashPreimages => {
            let hash = build_hm_family(t, beta - 1, 1)?;
            if hash.min_support < 2 {
                return Err(Error::InvalidArgument(format!(
                    "hash preimages would have support {} < 2 for t = {t}, beta = {beta}",
                    hash.min_support
                )));
            }
            let mut subsets = Vec::new();
            for &p in &hash.primes {
                let mut buckets = vec![Vec::new(); p];
                for (i, &v) in members.iter().enumerate() {
                    buckets[i % p].push(v);
                }
                subsets.extend(buckets.into_iter().filter(|s| !s.is_empty()));
            }
            Ok(TerminalFamily {
                subsets,
                mode,
                hash: Some(hash),
            })
        }
    }
}

/// Index of a member with exactly one terminal in `left`, none in
/// `separator` and at least one in `right`.
pub fn isolated_member(
    family: &TerminalFamily,
    left: &[usize],
    separator: &[usize],
    right: &[usize],
) -> Option<usize> {
    let n = [left, separator, right]
        .iter()
        .flat_map(|s| s.iter())
        .max()
        .map_or(0, |&v| v + 1);
    let mut side = vec![0u8; n];
    for (tag, set) in [(1u8, left), (2, separator), (3, right)] {
        for &v in set {
            side[v] = tag;
        }
    }
    family.subsets.iter().position(|s| {
        let mut counts = [0usize; 4];
        for &v in s {
            counts[side.get(v).copied().unwrap_or(0) as usize] += 1;
        }
        counts[1] == 1 && counts[2] == 0 && counts[3] >= 1
    })
}

/// Exhaustive hit-and-miss check for `b = 1`, `a <= 3` and at most 64 primes:
/// every `hit` of size at most `a` and every `y` outside it are kept apart by
/// some prime. Collisions are precomputed as one bitmask over the primes per
/// pair `(x, y)`.
pub fn hit_and_miss_holds_exhaustively(f: &HmHashFamily) -> bool {
    let n = f.domain;
    assert!(f.len() <= 64 && f.a <= 3 && f.b == 1);
    let full = if f.len() == 64 { u64::MAX } else { (1u64 << f.len()) - 1 };
    let mask = |x: usize, y: usize| {
        f.primes
            .iter()
            .enumerate()
            .filter(|(_, &p)| x % p == y % p)
            .fold(0u64, |m, (i, _)| m | 1 << i)
    };
    for y in 0..n {
        let col: Vec<u64> = (0..n).map(|x| mask(x, y)).collect();
        let others: Vec<usize> = (0..n).filter(|&x| x != y).collect();
        for (i, &x1) in others.iter().enumerate() {
            let m1 = col[x1];
            if m1 == full {
                return false;
            }
            if f.a < 2 {
                continue;
            }
            for (j, &x2) in others.iter().enumerate().skip(i + 1) {
                let m2 = m1 | col[x2];
                if m2 == full {
                    return false;
                }
                if f.a < 3 {
                    continue;
                }
                for &x3 in &others[j + 1..] {
                    if m2 | col[x3] == full {
                        return false;
                    }
                }
            }
        }
    }
    true
}
