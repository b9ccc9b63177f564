//! Signed compositions `SC(n)` and double partitions `DP(n)`.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite sequence of nonzero integers; `|A| = Σ|a_i|`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i32>", into = "Vec<i32>")]
pub struct SignedComposition(Vec<i32>);

impl SignedComposition {
    pub fn new(parts: Vec<i32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidComposition(format!("{parts:?} has a zero part")));
        }
        Ok(Self(parts))
    }

    /// `(n)`, indexing the whole group.
    pub fn full(n: usize) -> Self {
        Self(vec![n as i32])
    }

    /// `(-1, …, -1)`, indexing the trivial subgroup.
    pub fn trivial(n: usize) -> Self {
        Self(vec![-1; n])
    }

    pub fn parts(&self) -> &[i32] {
        &self.0
    }

    /// `|A|`.
    pub fn size(&self) -> usize {
        self.0.iter().map(|p| p.unsigned_abs() as usize).sum()
    }

    pub fn lg(&self) -> usize {
        self.0.len()
    }

    pub fn lg_plus(&self) -> usize {
        self.0.iter().filter(|&&p| p > 0).count()
    }

    pub fn lg_minus(&self) -> usize {
        self.0.iter().filter(|&&p| p < 0).count()
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&p| p > 0)
    }

    /// `a_i < 0` for every `i ≥ 2`.
    pub fn is_parabolic(&self) -> bool {
        self.0.iter().skip(1).all(|&p| p < 0)
    }

    /// `a_i ≥ -1` for every `i`.
    pub fn is_semi_positive(&self) -> bool {
        self.0.iter().all(|&p| p >= -1)
    }

    /// `A⁺ = (|a_1|, …, |a_k|)`.
    pub fn abs(&self) -> Self {
        Self(self.0.iter().map(|p| p.abs()).collect())
    }

    /// `A ⊔ B`.
    pub fn concat(&self, other: &Self) -> Self {
        Self(self.0.iter().chain(&other.0).copied().collect())
    }

    /// The double partition `λ(A)`.
    pub fn lambda(&self) -> DoublePartition {
        let plus = self.0.iter().filter(|&&p| p > 0).map(|&p| p as u32).collect();
        let minus = self.0.iter().filter(|&&p| p < 0).map(|&p| p.unsigned_abs()).collect();
        DoublePartition::new(plus, minus)
    }

    /// Start offset (0-based) of each part.
    pub fn block_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.0
            .iter()
            .map(|p| {
                let start = acc;
                acc += p.unsigned_abs() as usize;
                start
            })
            .collect()
    }

    /// `|W_A| = Π 2^{a}·a!` over positive parts times `Π |a|!` over negative parts.
    pub fn subgroup_order(&self) -> u128 {
        self.0
            .iter()
            .map(|&p| {
                let a = p.unsigned_abs() as u128;
                let f: u128 = (1..=a).product();
                if p > 0 {
                    f << a
                } else {
                    f
                }
            })
            .product()
    }

    /// `|S_A| = n - lg⁻(A)`.
    pub fn rank_of_subgroup(&self) -> usize {
        self.size() - self.lg_minus()
    }
}

impl TryFrom<Vec<i32>> for SignedComposition {
    type Error = Error;
    fn try_from(v: Vec<i32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<SignedComposition> for Vec<i32> {
    fn from(c: SignedComposition) -> Self {
        c.0
    }
}

impl fmt::Display for SignedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for SignedComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Accepts `-2,3,-1`, `(-2, 3, -1)` or whitespace separated parts.
impl FromStr for SignedComposition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches(['(', '[']).trim_end_matches([')', ']']);
        let parts = inner
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.replace('\u{2212}', "-").parse::<i32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidComposition(s.to_string()))?;
        if parts.is_empty() {
            return Err(Error::InvalidComposition(s.to_string()));
        }
        Self::new(parts)
    }
}

/// A pair of partitions `(λ⁺, λ⁻)`, each stored in increasing order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DoublePartition {
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
}

impl DoublePartition {
    pub fn new(mut plus: Vec<u32>, mut minus: Vec<u32>) -> Self {
        plus.sort_unstable();
        minus.sort_unstable();
        Self { plus, minus }
    }

    pub fn size(&self) -> usize {
        self.plus.iter().chain(&self.minus).map(|&p| p as usize).sum()
    }

    pub fn plus_size(&self) -> usize {
        self.plus.iter().map(|&p| p as usize).sum()
    }

    /// `μ̂ = μ⁺ ⊔ μ⁻`, negative parts negated.
    pub fn hat(&self) -> SignedComposition {
        SignedComposition(
            self.plus
                .iter()
                .map(|&p| p as i32)
                .chain(self.minus.iter().map(|&p| -(p as i32)))
                .collect(),
        )
    }

    /// Whether this is `((), (1ⁿ))`, the class of the identity.
    pub fn is_trivial(&self) -> bool {
        self.plus.is_empty() && self.minus.iter().all(|&p| p == 1)
    }
}

impl fmt::Display for DoublePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.hat(), f)
    }
}

impl fmt::Debug for DoublePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?}", self.plus, self.minus)
    }
}

/// All signed compositions of `n`; first parts run `n, n-1, …, 1, -1, …, -n`.
pub fn enumerate_sc(n: usize) -> Vec<SignedComposition> {
    fn rec(rest: usize, prefix: &mut Vec<i32>, out: &mut Vec<SignedComposition>) {
        if rest == 0 {
            out.push(SignedComposition(prefix.clone()));
            return;
        }
        let r = rest as i32;
        for a in (1..=r).rev().chain((1..=r).map(|a| -a)) {
            prefix.push(a);
            rec(rest - a.unsigned_abs() as usize, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

/// Partitions of `n` in increasing order, listed in lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<u32>> {
    fn rec(rest: u32, min: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for p in min..=rest {
            prefix.push(p);
            rec(rest - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n as u32, 1, &mut Vec::new(), &mut out);
    out
}

/// All double partitions of `n`, grouped by `|λ⁺|` descending.
pub fn enumerate_dp(n: usize) -> Vec<DoublePartition> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for plus in partitions(k) {
            for minus in partitions(n - k) {
                out.push(DoublePartition::new(plus.clone(), minus));
            }
        }
    }
    out
}

/// Double partitions of `n` ordered so that a class always precedes every
/// class of strictly smaller subgroups.
///
/// Sort key: `|W_λ̂|` descending, then `|λ⁺|` descending, then `(λ⁺, λ⁻)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpOrder {
    n: usize,
    classes: Vec<DoublePartition>,
}

impl DpOrder {
    pub fn canonical(n: usize) -> Self {
        let mut classes = enumerate_dp(n);
        classes.sort_by_cached_key(|dp| {
            (
                Reverse(dp.hat().subgroup_order()),
                Reverse(dp.plus_size()),
                dp.plus.clone(),
                dp.minus.clone(),
            )
        });
        Self { n, classes }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn classes(&self) -> &[DoublePartition] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn position(&self, dp: &DoublePartition) -> Option<usize> {
        self.classes.iter().position(|c| c == dp)
    }

    /// Index of the class `((n), ())` (always 0).
    pub fn full_index(&self) -> usize {
        0
    }

    /// Index of the identity class `((), (1ⁿ))` (always last).
    pub fn trivial_index(&self) -> usize {
        self.classes.len() - 1
    }
}
