//! The subalgebra of `QW_n` spanned by the coset sums `d_A = Σ_{w ∈ D_A} w`,
//! with the character map `θ`, the evaluations `τ_λ`, and the surjection
//! `ψ` onto the Burnside algebra.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::burnside::{BurnsideAlgebra, BurnsideElement};
use crate::compositions::{DoublePartition, SignedComposition};
use crate::error::{ensure, Error, Result};
use crate::linalg::{bareiss_pivots, rat, RatMatrix, Rational};
use crate::marks::fixed_cosets;
use crate::subgroups::{coxeter_element, Hyperoctahedral};

/// Largest rank for which the algebra is built.
pub const MAX_MR_RANK: usize = 5;

/// A vector of `QW_n` in the element order of the group table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraVector {
    pub coords: Vec<Rational>,
}

impl GroupAlgebraVector {
    /// Nonzero coordinates.
    pub fn support(&self) -> usize {
        self.coords.iter().filter(|c| !c.is_zero()).count()
    }
}

/// A rational combination of the `d_A`, indexed like `Hyperoctahedral::compositions`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MrElement {
    pub coords: Vec<Rational>,
}

impl MrElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Nonzero coefficients keyed by composition.
    pub fn terms<'a>(&'a self, basis: &'a [SignedComposition]) -> Vec<(&'a SignedComposition, &'a Rational)> {
        basis.iter().zip(&self.coords).filter(|(_, c)| !c.is_zero()).collect()
    }
}

/// Values at the Coxeter elements `c_λ̂`, in class order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    pub values: Vec<Rational>,
}

/// Outcome of testing `d_A·d_B − Σ_{x ∈ D_AB} d_{x⁻¹A ∩ B}` against the
/// constraints that remainder is expected to satisfy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RemainderReport {
    pub remainder: MrElement,
    pub theta_vanishes: bool,
    pub supported_below_a: bool,
    pub supported_before_b: bool,
}

pub struct MrAlgebra<'h> {
    h: &'h Hyperoctahedral,
    basis: Vec<SignedComposition>,
    index: HashMap<SignedComposition, usize>,
    d: Vec<Vec<u32>>,
    mul: Vec<u32>,
    pivots: Vec<usize>,
    pivot_inverse: RatMatrix,
    theta: Vec<Vec<u64>>,
    structure: OnceLock<Result<Vec<Vec<MrElement>>>>,
}

impl<'h> MrAlgebra<'h> {
    pub fn new(h: &'h Hyperoctahedral) -> Result<Self> {
        if h.rank() > MAX_MR_RANK {
            return Err(Error::RankTooLarge { rank: h.rank(), max: MAX_MR_RANK });
        }
        let basis = h.compositions().to_vec();
        let index = basis.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let els = h.table().elements();
        let size = els.len();
        let mut mul = vec![0u32; size * size];
        for (i, x) in els.iter().enumerate() {
            for (j, y) in els.iter().enumerate() {
                mul[i * size + j] = h.table().position(&(*x * *y)).unwrap() as u32;
            }
        }
        let d = basis
            .iter()
            .map(|a| {
                els
                    .iter()
                    .enumerate()
                    .filter_map(|(i, w)| match h.is_left_rep(a, w) {
                        Ok(true) => Some(Ok(i as u32)),
                        Ok(false) => None,
                        Err(e) => Some(Err(e)),
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let dense: Vec<Vec<i64>> = d
            .iter()
            .map(|s| {
                let mut row = vec![0i64; size];
                for &i in s {
                    row[i as usize] = 1;
                }
                row
            })
            .collect();
        let pivots = bareiss_pivots(&dense);
        ensure!(pivots.len() == basis.len(), "the d_A are linearly dependent (rank {})", pivots.len());
        let k = basis.len();
        let block = RatMatrix::from_fn(k, k, |r, c| {
            if d[c].binary_search(&(pivots[r] as u32)).is_ok() {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let pivot_inverse = block.inverse()?;
        let full = SignedComposition::full(h.rank());
        let coxeter: Vec<_> = h.dp_order().classes().iter().map(|c| coxeter_element(&c.hat())).collect();
        let theta = basis
            .iter()
            .map(|a| coxeter.iter().map(|c| fixed_cosets(h, &full, a, c)).collect())
            .collect::<Result<Vec<Vec<u64>>>>()?;
        Ok(Self {
            h,
            basis,
            index,
            d,
            mul,
            pivots,
            pivot_inverse,
            theta,
            structure: OnceLock::new(),
        })
    }

    pub fn basis(&self) -> &[SignedComposition] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn pos(&self, a: &SignedComposition) -> Result<usize> {
        self.index
            .get(a)
            .copied()
            .ok_or_else(|| Error::InvalidComposition(format!("{a} is not a composition of {}", self.h.rank())))
    }

    pub fn basis_element(&self, a: &SignedComposition) -> Result<MrElement> {
        let mut coords = vec![Rational::zero(); self.dim()];
        coords[self.pos(a)?] = Rational::one();
        Ok(MrElement { coords })
    }

    /// `d_A` in `QW_n`.
    pub fn d_element(&self, a: &SignedComposition) -> Result<GroupAlgebraVector> {
        let mut coords = vec![Rational::zero(); self.h.order()];
        for &i in &self.d[self.pos(a)?] {
            coords[i as usize] = Rational::one();
        }
        Ok(GroupAlgebraVector { coords })
    }

    /// `Σ_A x_A d_A` in `QW_n`.
    pub fn expand(&self, x: &MrElement) -> GroupAlgebraVector {
        let mut coords = vec![Rational::zero(); self.h.order()];
        for (c, support) in x.coords.iter().zip(&self.d) {
            if c.is_zero() {
                continue;
            }
            for &i in support {
                coords[i as usize] += c;
            }
        }
        GroupAlgebraVector { coords }
    }

    fn product_counts(&self, i: usize, j: usize) -> Vec<i64> {
        let size = self.h.order();
        let mut out = vec![0i64; size];
        for &x in &self.d[i] {
            let row = &self.mul[x as usize * size..(x as usize + 1) * size];
            for &y in &self.d[j] {
                out[row[y as usize] as usize] += 1;
            }
        }
        out
    }

    /// Coordinates of `v` in the `d` basis; fails if `v` is outside the span.
    pub fn solve(&self, v: &GroupAlgebraVector) -> Result<MrElement> {
        let rhs: Vec<Rational> = self.pivots.iter().map(|&p| v.coords[p].clone()).collect();
        let coords = self.pivot_inverse.mul_vec(&rhs);
        let x = MrElement { coords };
        ensure!(self.expand(&x) == *v, "vector is not in the span of the d_A");
        Ok(x)
    }

    /// `d_A·d_B` expanded in the `d` basis.
    pub fn mr_multiply(&self, a: &SignedComposition, b: &SignedComposition) -> Result<MrElement> {
        let counts = self.product_counts(self.pos(a)?, self.pos(b)?);
        let v = GroupAlgebraVector { coords: counts.into_iter().map(rat).collect() };
        self.solve(&v)
    }

    /// All products `d_A·d_B`.
    pub fn structure_constants(&self) -> Result<&Vec<Vec<MrElement>>> {
        self.structure
            .get_or_init(|| {
                self.basis
                    .iter()
                    .map(|a| self.basis.iter().map(|b| self.mr_multiply(a, b)).collect())
                    .collect()
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn multiply(&self, x: &MrElement, y: &MrElement) -> Result<MrElement> {
        let sc = self.structure_constants()?;
        let mut coords = vec![Rational::zero(); self.dim()];
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in sc[i][j].coords.iter().enumerate() {
                    if !c.is_zero() {
                        coords[k] += &ab * c;
                    }
                }
            }
        }
        Ok(MrElement { coords })
    }

    /// `θ(x)`: the permutation character, evaluated at each `c_λ̂`.
    pub fn theta(&self, x: &MrElement) -> ClassFunction {
        let k = self.h.dp_order().len();
        let mut values = vec![Rational::zero(); k];
        for (c, row) in x.coords.iter().zip(&self.theta) {
            if c.is_zero() {
                continue;
            }
            for (v, &m) in values.iter_mut().zip(row) {
                *v += c * rat(m as i64);
            }
        }
        ClassFunction { values }
    }

    /// `τ_λ(x) = θ(x)(c_λ)`.
    pub fn tau(&self, lambda: &DoublePartition, x: &MrElement) -> Result<Rational> {
        let i = self
            .h
            .dp_order()
            .position(lambda)
            .ok_or_else(|| Error::InvalidComposition(format!("{lambda} is not a class of W_{}", self.h.rank())))?;
        Ok(self.theta(x).values.swap_remove(i))
    }

    /// The matrix of `θ` on the `d` basis.
    pub fn theta_matrix(&self) -> &[Vec<u64>] {
        &self.theta
    }

    /// `{d_λ̂ − d_A : A ≠ λ̂}`, a basis of `ker θ`.
    pub fn kernel_theta(&self) -> Result<Vec<MrElement>> {
        let mut out = Vec::new();
        for (i, a) in self.basis.iter().enumerate() {
            let hat = a.lambda().hat();
            if hat == *a {
                continue;
            }
            let mut coords = vec![Rational::zero(); self.dim()];
            coords[self.pos(&hat)?] = Rational::one();
            coords[i] = -Rational::one();
            let x = MrElement { coords };
            ensure!(self.theta(&x).values.iter().all(Zero::is_zero), "θ(d_λ̂ − d_{a}) ≠ 0");
            out.push(x);
        }
        let m = RatMatrix::from_fn(out.len(), self.dim(), |r, c| out[r].coords[c].clone());
        ensure!(m.rank() == out.len(), "kernel spanning set is dependent");
        let theta = RatMatrix::from_fn(self.dim(), self.h.dp_order().len(), |r, c| rat(self.theta[r][c] as i64));
        ensure!(
            self.dim() - theta.rank() == out.len(),
            "dim ker θ is {} but {} kernel vectors were built",
            self.dim() - theta.rank(),
            out.len()
        );
        Ok(out)
    }

    /// `ψ(d_A) = [W/W_A]`.
    pub fn psi(&self, burnside: &BurnsideAlgebra<'_>, x: &MrElement) -> Result<BurnsideElement> {
        let mut out = burnside.zero();
        for (c, a) in x.coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                out.coords[burnside.class_of(a)?] += c;
            }
        }
        Ok(out)
    }

    /// Rank of `ψ` on the `d` basis.
    pub fn psi_rank(&self, burnside: &BurnsideAlgebra<'_>) -> Result<usize> {
        let cols = burnside.dim();
        let mut rows = Vec::new();
        for a in &self.basis {
            let mut row = vec![Rational::zero(); cols];
            row[burnside.class_of(a)?] = Rational::one();
            rows.push(row);
        }
        Ok(RatMatrix::from_fn(rows.len(), cols, |r, c| rows[r][c].clone()).rank())
    }

    /// `d_{x⁻¹A ∩ B}` summed over `x ∈ D_AB`.
    pub fn intersection_sum(&self, a: &SignedComposition, b: &SignedComposition) -> Result<MrElement> {
        let mut coords = vec![Rational::zero(); self.dim()];
        for x in self.h.d_ab(a, b)?.members {
            let c = self.h.intersection_composition(&x, a, b)?;
            coords[self.pos(&c)?] += Rational::one();
        }
        Ok(MrElement { coords })
    }

    /// For `A` parabolic or `B` semi-positive, whether `d_A·d_B` equals
    /// [`Self::intersection_sum`]; `None` outside that range.
    pub fn check_intersection_expansion(&self, a: &SignedComposition, b: &SignedComposition) -> Result<Option<bool>> {
        if !(a.is_parabolic() || b.is_semi_positive()) {
            return Ok(None);
        }
        Ok(Some(self.mr_multiply(a, b)? == self.intersection_sum(a, b)?))
    }

    /// Diagnostic for the remainder `d_A·d_B − intersection_sum(A, B)`.
    pub fn remainder_report(&self, a: &SignedComposition, b: &SignedComposition) -> Result<RemainderReport> {
        let product = self.mr_multiply(a, b)?;
        let sum = self.intersection_sum(a, b)?;
        let remainder = MrElement {
            coords: product.coords.iter().zip(&sum.coords).map(|(p, s)| p - s).collect(),
        };
        let theta_vanishes = self.theta(&remainder).values.iter().all(Zero::is_zero);
        let wa = self.h.subgroup(a)?.order() as u128;
        let mut supported_below_a = true;
        let mut supported_before_b = true;
        for (n, c) in self.basis.iter().zip(&remainder.coords) {
            if c.is_zero() {
                continue;
            }
            let below = n.subgroup_order() < wa && crate::marks::mark(self.h, a, n)? > 0;
            supported_below_a &= below;
            supported_before_b &= n != b && self.h.preceq(n, b)?;
        }
        Ok(RemainderReport { remainder, theta_vanishes, supported_below_a, supported_before_b })
    }

    /// Nonzero structure constants as `(A, B, C, coefficient)`.
    pub fn sparse_structure(&self) -> Result<BTreeMap<(usize, usize, usize), Rational>> {
        let sc = self.structure_constants()?;
        let mut out = BTreeMap::new();
        for (i, row) in sc.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                for (k, c) in x.coords.iter().enumerate() {
                    if !c.is_zero() {
                        out.insert((i, j, k), c.clone());
                    }
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SignedPermutation;
    use crate::marks::MarkTable;

    fn sc(parts: &[i32]) -> SignedComposition {
        SignedComposition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn d_elements() {
        let h = Hyperoctahedral::new(3).unwrap();
        let mr = MrAlgebra::new(&h).unwrap();
        let id = mr.d_element(&SignedComposition::full(3)).unwrap();
        assert_eq!(id.support(), 1);
        assert!(id.coords[h.table().position(&SignedPermutation::identity(3)).unwrap()].is_one());
        assert_eq!(mr.d_element(&SignedComposition::trivial(3)).unwrap().support(), 48);
        for a in h.compositions() {
            assert_eq!(mr.d_element(a).unwrap().support() as u128, 48 / a.subgroup_order());
        }
    }

    #[test]
    fn products_close_and_reexpand() {
        for n in 1..=3 {
            let h = Hyperoctahedral::new(n).unwrap();
            let mr = MrAlgebra::new(&h).unwrap();
            let full = SignedComposition::full(n);
            for a in h.compositions() {
                for b in h.compositions() {
                    let p = mr.mr_multiply(a, b).unwrap();
                    if *a == full {
                        assert_eq!(p, mr.basis_element(b).unwrap());
                    }
                    let direct = mr.product_counts(mr.pos(a).unwrap(), mr.pos(b).unwrap());
                    let direct: Vec<Rational> = direct.into_iter().map(rat).collect();
                    assert_eq!(mr.expand(&p).coords, direct);
                }
            }
        }
    }

    #[test]
    fn outside_vectors_are_rejected() {
        let h = Hyperoctahedral::new(2).unwrap();
        let mr = MrAlgebra::new(&h).unwrap();
        let mut coords = vec![Rational::zero(); 8];
        coords[3] = Rational::one();
        assert!(mr.solve(&GroupAlgebraVector { coords }).is_err());
    }

    #[test]
    fn theta_tau_and_kernel() {
        for n in 1..=3 {
            let h = Hyperoctahedral::new(n).unwrap();
            let mr = MrAlgebra::new(&h).unwrap();
            let t = MarkTable::build(&h).unwrap();
            let one = mr.theta(&mr.basis_element(&SignedComposition::full(n)).unwrap());
            assert!(one.values.iter().all(One::is_one));
            for a in h.compositions() {
                for b in h.compositions() {
                    let tau = mr.tau(&a.lambda(), &mr.basis_element(b).unwrap()).unwrap();
                    assert_eq!(tau, rat(h.d_ab_subset(a, b).unwrap().len() as i64), "{a} {b}");
                }
            }
            for (i, class) in t.order.classes().iter().enumerate() {
                let row = &mr.theta_matrix()[mr.pos(&class.hat()).unwrap()];
                assert_eq!(row, &t.phi[i]);
            }
            let kernel = mr.kernel_theta().unwrap();
            assert_eq!(kernel.len(), h.compositions().len() - t.len());
        }
        let h = Hyperoctahedral::new(2).unwrap();
        let mr = MrAlgebra::new(&h).unwrap();
        let kernel = mr.kernel_theta().unwrap();
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].terms(mr.basis()).len(), 2);
        assert!(kernel[0].coords[mr.pos(&sc(&[-1, 1])).unwrap()] == -Rational::one());
    }

    #[test]
    fn morphisms() {
        for n in 1..=3 {
            let h = Hyperoctahedral::new(n).unwrap();
            let mr = MrAlgebra::new(&h).unwrap();
            let t = MarkTable::build(&h).unwrap();
            let hb = BurnsideAlgebra::full(&h, &t).unwrap();
            for a in h.compositions() {
                for b in h.compositions() {
                    let (x, y) = (mr.basis_element(a).unwrap(), mr.basis_element(b).unwrap());
                    let p = mr.multiply(&x, &y).unwrap();
                    let (tx, ty, tp) = (mr.theta(&x), mr.theta(&y), mr.theta(&p));
                    for k in 0..t.len() {
                        assert_eq!(tp.values[k], &tx.values[k] * &ty.values[k]);
                    }
                    let lhs = mr.psi(&hb, &p).unwrap();
                    let rhs = hb.multiply(&mr.psi(&hb, &x).unwrap(), &mr.psi(&hb, &y).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            for k in mr.kernel_theta().unwrap() {
                assert!(mr.psi(&hb, &k).unwrap().is_zero());
            }
            assert_eq!(mr.psi_rank(&hb).unwrap(), t.len());
            assert_eq!(mr.psi(&hb, &mr.basis_element(&SignedComposition::full(n)).unwrap()).unwrap(), hb.identity());
        }
    }

    #[test]
    fn intersection_expansion_where_it_applies() {
        for n in 1..=3 {
            let h = Hyperoctahedral::new(n).unwrap();
            let mr = MrAlgebra::new(&h).unwrap();
            for a in h.compositions() {
                for b in h.compositions() {
                    if let Some(ok) = mr.check_intersection_expansion(a, b).unwrap() {
                        assert!(ok, "{a} {b}");
                    }
                    let report = mr.remainder_report(a, b).unwrap();
                    assert!(report.theta_vanishes, "{a} {b}");
                }
            }
        }
    }
}
