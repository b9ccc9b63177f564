//! Signed permutations: the hyperoctahedral group `W_n` acting on `±{1..n}`.
//!
//! An element is stored by its window `(w(1), …, w(n))`; images of negative
//! points follow from `w(-i) = -w(i)`. Products compose right to left:
//! `(u * v)(i) = u(v(i))`.

use std::collections::HashMap;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_traits::Zero;

use crate::compositions::DoublePartition;
use crate::error::{Error, Result};
use crate::linalg::{rat, RatMatrix, Rational};

/// Largest rank a [`SignedPermutation`] can carry.
pub const MAX_RANK: usize = 16;

/// Default cap on the rank of fully enumerated groups.
pub const DEFAULT_MAX_ENUMERATION: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    n: u8,
    img: [i8; MAX_RANK],
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_RANK, "rank {n} above {MAX_RANK}");
        let mut img = [0i8; MAX_RANK];
        for (i, v) in img.iter_mut().enumerate().take(n) {
            *v = i as i8 + 1;
        }
        Self { n: n as u8, img }
    }

    /// The longest element `w_n = -id`.
    pub fn longest(n: usize) -> Self {
        let mut w = Self::identity(n);
        for v in w.img.iter_mut().take(n) {
            *v = -*v;
        }
        w
    }

    pub fn from_window(window: &[i32]) -> Result<Self> {
        let n = window.len();
        if n > MAX_RANK {
            return Err(Error::RankTooLarge { rank: n, max: MAX_RANK });
        }
        let mut seen = [false; MAX_RANK];
        let mut img = [0i8; MAX_RANK];
        for (i, &v) in window.iter().enumerate() {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > n || seen[a - 1] {
                return Err(Error::InvalidWindow(format!("{window:?}")));
            }
            seen[a - 1] = true;
            img[i] = v as i8;
        }
        Ok(Self { n: n as u8, img })
    }

    pub fn rank(&self) -> usize {
        self.n as usize
    }

    pub fn window(&self) -> &[i8] {
        &self.img[..self.rank()]
    }

    pub fn window_vec(&self) -> Vec<i32> {
        self.window().iter().map(|&v| v as i32).collect()
    }

    /// Image of a point of `±{1..n}`.
    #[inline]
    pub fn apply(&self, i: i32) -> i32 {
        let v = self.img[i.unsigned_abs() as usize - 1] as i32;
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.compose(other))
    }

    #[inline]
    fn compose(&self, other: &Self) -> Self {
        let mut img = [0i8; MAX_RANK];
        for (i, v) in img.iter_mut().enumerate().take(self.rank()) {
            let j = other.img[i];
            let k = self.img[j.unsigned_abs() as usize - 1];
            *v = if j < 0 { -k } else { k };
        }
        Self { n: self.n, img }
    }

    pub fn inverse(&self) -> Self {
        let mut img = [0i8; MAX_RANK];
        for i in 0..self.rank() {
            let v = self.img[i];
            let a = v.unsigned_abs() as usize - 1;
            img[a] = if v < 0 { -(i as i8 + 1) } else { i as i8 + 1 };
        }
        Self { n: self.n, img }
    }

    /// `x * self * x⁻¹`.
    pub fn conjugate_by(&self, x: &Self) -> Self {
        x.compose(self).compose(&x.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.window().iter().enumerate().all(|(i, &v)| v as usize == i + 1)
    }

    /// Image of a vector of `ℝⁿ` under the linear action `e_i ↦ sign·e_|w(i)|`.
    pub fn act<T: Clone + Zero + std::ops::Neg<Output = T>>(&self, v: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.rank()];
        for (i, x) in v.iter().enumerate() {
            let w = self.img[i];
            let target = w.unsigned_abs() as usize - 1;
            out[target] = if w < 0 { -x.clone() } else { x.clone() };
        }
        out
    }

    pub fn act_root(&self, root: &Root) -> Root {
        let mut out = Root::zero(self.rank());
        for i in 0..self.rank() {
            let c = root.coeffs[i];
            if c != 0 {
                let w = self.img[i];
                out.coeffs[w.unsigned_abs() as usize - 1] = if w < 0 { -c } else { c };
            }
        }
        out
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let n = self.rank();
        let mut count = 0;
        for i in 0..n {
            // e_i ↦ ±e_|w(i)|
            if self.img[i] < 0 {
                count += 1;
            }
        }
        for j in 0..n {
            for i in 0..j {
                // e_j ± e_i ↦ w(e_j) ± w(e_i); the sign of the root is the sign
                // of the coefficient on the larger index.
                let (wj, wi) = (self.img[j] as i32, self.img[i] as i32);
                for eps in [1, -1] {
                    let lead = if wj.abs() > wi.abs() { wj.signum() } else { eps * wi.signum() };
                    if lead < 0 {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// `ε(w) = (-1)^{l(w)}`.
    pub fn sign(&self) -> i32 {
        if self.length().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Signed cycle type: negative cycles go to `plus`, positive cycles to `minus`.
    pub fn signed_cycle_type(&self) -> DoublePartition {
        let n = self.rank();
        let mut seen = [false; MAX_RANK];
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut negative = false;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                len += 1;
                let v = self.img[i];
                negative ^= v < 0;
                i = v.unsigned_abs() as usize - 1;
            }
            if negative {
                plus.push(len);
            } else {
                minus.push(len);
            }
        }
        DoublePartition::new(plus, minus)
    }

    /// Signed permutation matrix: column `i` is the image of `e_i`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0i64; n]; n];
        for i in 0..n {
            let w = self.img[i];
            m[w.unsigned_abs() as usize - 1][i] = w.signum() as i64;
        }
        m
    }

    /// Basis of `Fix(w) = {v : w(v) = v}` over the rationals.
    pub fn fixed_space(&self) -> Vec<Vec<Rational>> {
        let n = self.rank();
        let m = self.matrix();
        let a = RatMatrix::from_fn(n, n, |i, j| rat(m[i][j] - i64::from(i == j)));
        a.nullspace()
    }

    /// Whether `v` is fixed by this element.
    pub fn fixes(&self, v: &[Rational]) -> bool {
        self.act(v) == v
    }

    /// Parses a whitespace separated word over `t, s1.., t1..` and multiplies it out.
    pub fn from_word(n: usize, word: &str) -> Result<Self> {
        if n > MAX_RANK {
            return Err(Error::RankTooLarge { rank: n, max: MAX_RANK });
        }
        word.split_whitespace().try_fold(Self::identity(n), |acc, label| {
            let g = Generator::from_str(label)?.element(n)?;
            Ok(acc.compose(&g))
        })
    }
}

impl Mul for SignedPermutation {
    type Output = SignedPermutation;
    fn mul(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "rank mismatch in product");
        self.compose(&rhs)
    }
}

impl Mul for &SignedPermutation {
    type Output = SignedPermutation;
    fn mul(self, rhs: Self) -> SignedPermutation {
        assert_eq!(self.n, rhs.n, "rank mismatch in product");
        self.compose(rhs)
    }
}

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.window())
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.window().iter().map(|v| v.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl serde::Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.window_vec().serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for SignedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Vec::<i32>::deserialize(d)?;
        Self::from_window(&w).map_err(serde::de::Error::custom)
    }
}

/// A named element of `S'_n = {t, s_1, …, s_{n-1}} ∪ {t_1, …, t_n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    /// `t_i`, negating coordinate `i`. `t = t_1`.
    T(usize),
    /// `s_i`, swapping coordinates `i` and `i + 1`.
    S(usize),
}

impl Generator {
    pub fn element(self, n: usize) -> Result<SignedPermutation> {
        let mut w = SignedPermutation::identity(n);
        match self {
            Generator::T(i) if (1..=n).contains(&i) => w.img[i - 1] = -(i as i8),
            Generator::S(i) if i >= 1 && i < n => w.img.swap(i - 1, i),
            _ => return Err(Error::InvalidGenerator(format!("{self} in rank {n}"))),
        }
        Ok(w)
    }

    /// The root `α` with `s_α` equal to this generator.
    pub fn root(self, n: usize) -> Root {
        let mut r = Root::zero(n);
        match self {
            Generator::T(i) => r.coeffs[i - 1] = 1,
            Generator::S(i) => {
                r.coeffs[i] = 1;
                r.coeffs[i - 1] = -1;
            }
        }
        r
    }
}

impl FromStr for Generator {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidGenerator(s.to_string());
        if s == "t" {
            return Ok(Generator::T(1));
        }
        let (head, tail) = s.split_at(s.chars().next().map_or(0, char::len_utf8));
        let idx: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "t" => Ok(Generator::T(idx)),
            "s" => Ok(Generator::S(idx)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::T(i) => write!(f, "t{i}"),
            Generator::S(i) => write!(f, "s{i}"),
        }
    }
}

/// Element of `W_n` by generator name (`t`, `s1`, …, `t1`, …).
pub fn generator(n: usize, name: &str) -> Result<SignedPermutation> {
    Generator::from_str(name)?.element(n)
}

/// A root of type `B_n`: `±e_i` or `±e_j ± e_i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    n: u8,
    coeffs: [i8; MAX_RANK],
}

impl Root {
    fn zero(n: usize) -> Self {
        Self { n: n as u8, coeffs: [0; MAX_RANK] }
    }

    pub fn coefficients(&self) -> &[i8] {
        &self.coeffs[..self.n as usize]
    }

    /// Positive roots are those whose highest-index nonzero coefficient is positive.
    pub fn is_positive(&self) -> bool {
        self.coefficients().iter().rev().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn negate(&self) -> Self {
        let mut r = *self;
        for c in r.coeffs.iter_mut() {
            *c = -*c;
        }
        r
    }

    /// `Ψ_n⁺ = {e_i} ∪ {e_j ± e_i : i < j}`.
    pub fn positive_roots(n: usize) -> Vec<Root> {
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            let mut r = Root::zero(n);
            r.coeffs[i] = 1;
            out.push(r);
        }
        for j in 0..n {
            for i in 0..j {
                for eps in [1, -1] {
                    let mut r = Root::zero(n);
                    r.coeffs[j] = 1;
                    r.coeffs[i] = eps;
                    out.push(r);
                }
            }
        }
        out
    }

    /// Whether the vector is one of the `2n²` roots of type `B_n`.
    pub fn is_root(&self) -> bool {
        let nz: Vec<i8> = self.coefficients().iter().copied().filter(|&c| c != 0).collect();
        match nz.len() {
            1 | 2 => nz.iter().all(|c| c.abs() == 1),
            _ => false,
        }
    }
}

impl fmt::Debug for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coefficients())
    }
}

/// Root counting length, stated directly as a count over `Ψ_n⁺`.
pub fn length_by_roots(w: &SignedPermutation) -> usize {
    Root::positive_roots(w.rank())
        .iter()
        .filter(|r| !w.act_root(r).is_positive())
        .count()
}

/// All elements of `W_n`, sorted lexicographically by window.
#[derive(Clone)]
pub struct GroupTable {
    n: usize,
    elements: Vec<SignedPermutation>,
    index: HashMap<SignedPermutation, usize>,
}

impl GroupTable {
    pub fn enumerate(n: usize) -> Result<Self> {
        Self::enumerate_with_max(n, DEFAULT_MAX_ENUMERATION)
    }

    pub fn enumerate_with_max(n: usize, max: usize) -> Result<Self> {
        if n > max || n > MAX_RANK {
            return Err(Error::RankTooLarge { rank: n, max: max.min(MAX_RANK) });
        }
        let mut elements = Vec::with_capacity(order(n) as usize);
        let mut window = vec![0i32; n];
        let mut used = vec![false; n];
        fill(0, &mut window, &mut used, &mut elements);
        elements.sort_unstable();
        let index = elements.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        Ok(Self { n, elements, index })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &SignedPermutation {
        &self.elements[i]
    }

    pub fn position(&self, w: &SignedPermutation) -> Option<usize> {
        self.index.get(w).copied()
    }
}

fn fill(pos: usize, window: &mut [i32], used: &mut [bool], out: &mut Vec<SignedPermutation>) {
    let n = window.len();
    if pos == n {
        out.push(SignedPermutation::from_window(window).expect("valid by construction"));
        return;
    }
    for v in 1..=n {
        if used[v - 1] {
            continue;
        }
        used[v - 1] = true;
        for s in [-1, 1] {
            window[pos] = s * v as i32;
            fill(pos + 1, window, used, out);
        }
        used[v - 1] = false;
    }
}

/// `|W_n| = 2ⁿ·n!`.
pub fn order(n: usize) -> u128 {
    (1..=n as u128).product::<u128>() << n
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(n: usize, name: &str) -> SignedPermutation {
        generator(n, name).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let s = g(2, "s1");
        let t = g(2, "t");
        assert_eq!((s * t).window_vec(), vec![-2, 1]);
        let w = SignedPermutation::from_window(&[2, -1]).unwrap();
        assert_eq!(w * SignedPermutation::identity(2), w);
        assert!((w * w.inverse()).is_identity());
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = SignedPermutation::identity(2);
        let b = SignedPermutation::identity(3);
        assert_eq!(a.multiply(&b), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn generators() {
        assert_eq!(g(2, "t1").window_vec(), vec![-1, 2]);
        assert_eq!(g(2, "t"), g(2, "t1"));
        let s = g(2, "s1");
        assert_eq!(g(2, "t2"), s * g(2, "t1") * s);
        for n in 1..=6 {
            for i in 2..=n {
                let si = g(n, &format!("s{}", i - 1));
                let prev = g(n, &format!("t{}", i - 1));
                assert_eq!(g(n, &format!("t{i}")), si * prev * si);
            }
        }
        assert!(generator(2, "s2").is_err());
        assert!(generator(2, "t3").is_err());
        assert!(generator(2, "x1").is_err());
        assert!(generator(2, "s0").is_err());
    }

    #[test]
    fn coxeter_relations_hold() {
        for n in 1..=6 {
            let id = SignedPermutation::identity(n);
            let t = g(n, "t");
            let s: Vec<_> = (1..n).map(|i| g(n, &format!("s{i}"))).collect();
            let ts: Vec<_> = (1..=n).map(|i| g(n, &format!("t{i}"))).collect();
            for x in s.iter().chain(&ts) {
                assert_eq!(*x * *x, id);
            }
            if n >= 2 {
                assert_eq!(t * s[0] * t * s[0], s[0] * t * s[0] * t);
            }
            for i in 0..s.len().saturating_sub(1) {
                assert_eq!(s[i] * s[i + 1] * s[i], s[i + 1] * s[i] * s[i + 1]);
            }
            for si in s.iter().skip(1) {
                assert_eq!(t * *si, *si * t);
            }
            for i in 0..s.len() {
                for j in 0..s.len() {
                    if i.abs_diff(j) > 1 {
                        assert_eq!(s[i] * s[j], s[j] * s[i]);
                    }
                }
            }
            for a in &ts {
                for b in &ts {
                    assert_eq!(*a * *b, *b * *a);
                }
            }
        }
    }

    #[test]
    fn lengths() {
        assert_eq!(SignedPermutation::identity(4).length(), 0);
        for n in 1..=8 {
            for i in 1..=n {
                let ti = g(n, &format!("t{i}"));
                assert_eq!(ti.length(), 2 * i - 1);
                assert_eq!(ti.sign(), -1);
            }
        }
        let w = SignedPermutation::from_word(10, "s7 t3 s3 s1 t10").unwrap();
        assert_eq!(w.length(), 27);
        assert_eq!(w.sign(), -1);
        assert_eq!(SignedPermutation::identity(3).sign(), 1);
    }

    #[test]
    fn positive_root_count() {
        for n in 1..=6 {
            let roots = Root::positive_roots(n);
            assert_eq!(roots.len(), n * n);
            assert!(roots.iter().all(|r| r.is_positive() && r.is_root()));
            assert!(roots.iter().all(|r| !r.negate().is_positive()));
        }
    }

    #[test]
    fn cycle_types_of_w2() {
        let id = SignedPermutation::identity(2);
        assert_eq!(id.signed_cycle_type(), DoublePartition::new(vec![], vec![1, 1]));
        assert_eq!(g(2, "t").signed_cycle_type(), DoublePartition::new(vec![1], vec![1]));
        let st = g(2, "s1") * g(2, "t");
        assert_eq!(st.signed_cycle_type(), DoublePartition::new(vec![2], vec![]));
    }

    #[test]
    fn fixed_spaces() {
        for n in 1..=5 {
            assert_eq!(SignedPermutation::identity(n).fixed_space().len(), n);
            assert_eq!(SignedPermutation::longest(n).fixed_space().len(), 0);
            assert_eq!(g(n, "t1").fixed_space().len(), n - 1);
        }
    }

    #[test]
    fn enumeration_sizes() {
        assert_eq!(GroupTable::enumerate(1).unwrap().len(), 2);
        assert_eq!(GroupTable::enumerate(2).unwrap().len(), 8);
        assert_eq!(GroupTable::enumerate(3).unwrap().len(), 48);
        assert!(matches!(GroupTable::enumerate(7), Err(Error::RankTooLarge { .. })));
        let t = GroupTable::enumerate(3).unwrap();
        assert!(t.elements().windows(2).all(|p| p[0].window() < p[1].window()));
        for (i, w) in t.elements().iter().enumerate() {
            assert_eq!(t.position(w), Some(i));
        }
    }

    #[test]
    fn windows_reject_garbage() {
        assert!(SignedPermutation::from_window(&[1, 1]).is_err());
        assert!(SignedPermutation::from_window(&[0, 1]).is_err());
        assert!(SignedPermutation::from_window(&[3, 1]).is_err());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = SignedPermutation> {
        (Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(any::<bool>(), n))
            .prop_map(|(p, signs)| {
                let w: Vec<i32> = p.iter().zip(signs).map(|(&v, s)| if s { -v } else { v }).collect();
                SignedPermutation::from_window(&w).unwrap()
            })
    }

    proptest! {
        #[test]
        fn length_is_subadditive_with_parity(u in arb_perm(7), v in arb_perm(7)) {
            let (lu, lv, luv) = (u.length(), v.length(), (u * v).length());
            prop_assert!(luv <= lu + lv);
            prop_assert_eq!(luv % 2, (lu + lv) % 2);
        }

        #[test]
        fn closed_form_length_matches_root_count(w in arb_perm(8)) {
            prop_assert_eq!(w.length(), length_by_roots(&w));
            prop_assert_eq!(w.inverse().length(), w.length());
        }

        #[test]
        fn action_is_a_homomorphism(u in arb_perm(6), v in arb_perm(6), p in -6i32..=6) {
            prop_assume!(p != 0);
            prop_assert_eq!((u * v).apply(p), u.apply(v.apply(p)));
            prop_assert_eq!(u.apply(-p), -u.apply(p));
        }
    }
}
