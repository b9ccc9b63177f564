//! The signed table of marks of `W_n`, the fixed-point matrix of Coxeter
//! elements on coset spaces, and its exact inverse.

use num_traits::Signed;

use crate::compositions::{DpOrder, SignedComposition};
use crate::error::{ensure, Result};
use crate::linalg::{rat, RatMatrix, Rational};
use crate::subgroups::{coxeter_element, Hyperoctahedral};
use crate::group::SignedPermutation;

/// Cosets `aW_C` inside `W_ambient` fixed by left multiplication with `g`.
pub fn fixed_cosets(
    h: &Hyperoctahedral,
    ambient: &SignedComposition,
    c: &SignedComposition,
    g: &SignedPermutation,
) -> Result<u64> {
    let wa = h.subgroup(ambient)?;
    let wc = h.subgroup(c)?;
    let whole = ambient.parts() == [h.rank() as i32];
    let reps = h.left_reps(c)?;
    Ok(reps
        .list
        .iter()
        .filter(|a| (whole || wa.contains(a)) && wc.contains(&(a.inverse() * *g * **a)))
        .count() as u64)
}

/// Cosets `aW_C` inside `W_ambient` fixed by every element of `W_B`.
pub fn fixed_by_subgroup(
    h: &Hyperoctahedral,
    ambient: &SignedComposition,
    c: &SignedComposition,
    b: &SignedComposition,
) -> Result<u64> {
    let wa = h.subgroup(ambient)?;
    let wb = h.subgroup(b)?;
    let wc = h.subgroup(c)?;
    let whole = ambient.parts() == [h.rank() as i32];
    let reps = h.left_reps(c)?;
    Ok(reps
        .list
        .iter()
        .filter(|a| (whole || wa.contains(a)) && wc.contains_conjugate(&wb, a))
        .count() as u64)
}

/// `μ_AB`: cosets `xW_A` fixed by `W_B`. Computed directly, as `|D_BA^⊂|`,
/// and as the cosets fixed by `c_B`; all three must agree.
pub fn mark(h: &Hyperoctahedral, a: &SignedComposition, b: &SignedComposition) -> Result<u64> {
    let full = SignedComposition::full(h.rank());
    let direct = fixed_by_subgroup(h, &full, a, b)?;
    let by_reps = h.d_ab_subset(b, a)?.len() as u64;
    let by_coxeter = fixed_cosets(h, &full, a, &coxeter_element(b))?;
    ensure!(
        direct == by_reps && direct == by_coxeter,
        "mark({a}, {b}): fixed cosets {direct}, |D_BA^⊂| {by_reps}, fixed by c_B {by_coxeter}"
    );
    Ok(direct)
}

/// `phi[i][j]` = cosets of `W_{basis[i]}` in `W_ambient` fixed by
/// `c_{basis[j]}`, together with its two-sided inverse. The basis must be
/// ordered so that `phi` is upper triangular.
pub fn fixed_point_matrix(
    h: &Hyperoctahedral,
    ambient: &SignedComposition,
    basis: &[SignedComposition],
) -> Result<(Vec<Vec<u64>>, RatMatrix)> {
    let k = basis.len();
    let mut phi = vec![vec![0u64; k]; k];
    for (i, c) in basis.iter().enumerate() {
        for (j, b) in basis.iter().enumerate() {
            let by_element = fixed_cosets(h, ambient, c, &coxeter_element(b))?;
            let by_group = fixed_by_subgroup(h, ambient, c, b)?;
            ensure!(
                by_element == by_group,
                "c_{b} fixes {by_element} cosets of W_{c} but W_{b} fixes {by_group}"
            );
            phi[i][j] = by_element;
        }
    }
    let m = RatMatrix::from_fn(k, k, |i, j| rat(phi[i][j] as i64));
    ensure!(m.is_upper_triangular(), "fixed-point matrix over {ambient} is not upper triangular");
    ensure!((0..k).all(|i| phi[i][i] > 0), "fixed-point matrix over {ambient} has a zero diagonal entry");
    let u = m.inverse()?;
    ensure!((&m * &u).is_identity() && (&u * &m).is_identity(), "inverse check failed over {ambient}");
    Ok((phi, u))
}

#[derive(Clone, Debug)]
pub struct MarkTable {
    pub n: usize,
    pub order: DpOrder,
    /// `phi[λ][μ]`: cosets of `W_λ̂` fixed by `c_μ̂`.
    pub phi: Vec<Vec<u64>>,
    /// `marks[λ][ν]`: cosets of `W_λ̂` fixed by all of `W_ν̂`.
    pub marks: Vec<Vec<u64>>,
    /// Two-sided inverse of `phi`.
    pub u: RatMatrix,
}

impl MarkTable {
    pub fn build(h: &Hyperoctahedral) -> Result<Self> {
        let order = h.dp_order().clone();
        let basis: Vec<_> = order.classes().iter().map(|c| c.hat()).collect();
        let full = SignedComposition::full(h.rank());
        let (phi, u) = fixed_point_matrix(h, &full, &basis)?;
        let mut marks = vec![vec![0u64; basis.len()]; basis.len()];
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                marks[i][j] = mark(h, a, b)?;
            }
        }
        ensure!(marks == phi, "marks and Coxeter fixed points differ");
        for (i, a) in basis.iter().enumerate() {
            let w = h.complement_order(a)?;
            ensure!(
                u[(i, i)] == Rational::new(1.into(), (w as i64).into()),
                "u diagonal at {a} is {} but |W(A)| = {w}",
                u[(i, i)]
            );
        }
        Ok(Self { n: h.rank(), order, phi, marks, u })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn phi_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.len(), self.len(), |i, j| rat(self.phi[i][j] as i64))
    }

    pub fn marks_matrix(&self) -> RatMatrix {
        RatMatrix::from_fn(self.len(), self.len(), |i, j| rat(self.marks[i][j] as i64))
    }

    pub fn u_entry(&self, lambda: usize, mu: usize) -> &Rational {
        &self.u[(lambda, mu)]
    }
}

/// `|[W_A]| = |D_A|·u_λλ`, checked against `|W_n| / |N(W_A)|`.
pub fn conjugate_subgroup_count(h: &Hyperoctahedral, table: &MarkTable, a: &SignedComposition) -> Result<u64> {
    let i = table.order.position(&a.lambda()).expect("every class is in the order");
    let value = rat(h.d_reps(a)?.len() as i64) * table.u_entry(i, i);
    ensure!(value.is_integer() && value.is_positive(), "|D_A|·u_λλ = {value} for A = {a}");
    let by_normalizer = h.order() / h.normalizer(a)?.normalizer.len();
    ensure!(
        value == rat(by_normalizer as i64),
        "|[W_A]| is {value} by marks and {by_normalizer} by the normalizer for A = {a}"
    );
    Ok(by_normalizer as u64)
}

/// Number of conjugates `xW_Ax⁻¹` containing `W_B`: `|D_BA^⊂| / |W(A)|`.
pub fn containing_conjugates_count(h: &Hyperoctahedral, b: &SignedComposition, a: &SignedComposition) -> Result<u64> {
    let num = h.d_ab_subset(b, a)?.len();
    let den = h.complement_order(a)?;
    ensure!(num % den == 0, "|D_BA^⊂| = {num} is not divisible by |W(A)| = {den}");
    Ok((num / den) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use std::collections::BTreeSet;

    fn sc(parts: &[i32]) -> SignedComposition {
        SignedComposition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn rank_two_tables() {
        let h = Hyperoctahedral::new(2).unwrap();
        let t = MarkTable::build(&h).unwrap();
        let phi: Vec<Vec<u64>> = vec![
            vec![1, 1, 1, 1, 1],
            vec![0, 2, 2, 0, 2],
            vec![0, 0, 2, 0, 4],
            vec![0, 0, 0, 2, 4],
            vec![0, 0, 0, 0, 8],
        ];
        assert_eq!(t.phi, phi);
        let q = |a, b| ratio(a, b);
        let u = [
            [q(1, 1), q(-1, 2), q(0, 1), q(-1, 2), q(1, 4)],
            [q(0, 1), q(1, 2), q(-1, 2), q(0, 1), q(1, 8)],
            [q(0, 1), q(0, 1), q(1, 2), q(0, 1), q(-1, 4)],
            [q(0, 1), q(0, 1), q(0, 1), q(1, 2), q(-1, 4)],
            [q(0, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 8)],
        ];
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(t.u[(i, j)], u[i][j], "({i},{j})");
            }
        }
    }

    #[test]
    fn boundary_marks() {
        for n in 1..=3 {
            let h = Hyperoctahedral::new(n).unwrap();
            let full = SignedComposition::full(n);
            let triv = SignedComposition::trivial(n);
            for b in h.compositions() {
                assert_eq!(mark(&h, &full, b).unwrap(), 1);
            }
            assert_eq!(mark(&h, &triv, &triv).unwrap() as u128, crate::group::order(n));
        }
    }

    #[test]
    fn marks_depend_only_on_classes() {
        let h = Hyperoctahedral::new(3).unwrap();
        let t = MarkTable::build(&h).unwrap();
        for a in h.compositions() {
            for b in h.compositions() {
                let i = t.order.position(&a.lambda()).unwrap();
                let j = t.order.position(&b.lambda()).unwrap();
                assert_eq!(mark(&h, a, b).unwrap(), t.marks[i][j], "{a} {b}");
            }
        }
    }

    #[test]
    fn conjugate_counts() {
        let h = Hyperoctahedral::new(3).unwrap();
        let t = MarkTable::build(&h).unwrap();
        assert_eq!(conjugate_subgroup_count(&h, &t, &sc(&[2, 1])).unwrap(), 3);
        assert_eq!(conjugate_subgroup_count(&h, &t, &sc(&[3])).unwrap(), 1);
        assert_eq!(conjugate_subgroup_count(&h, &t, &sc(&[-1, -1, -1])).unwrap(), 1);
        for a in h.compositions() {
            conjugate_subgroup_count(&h, &t, a).unwrap();
        }
    }

    #[test]
    fn containing_conjugates_by_brute_force() {
        for n in 1..=3 {
            let h = Hyperoctahedral::new(n).unwrap();
            for a in h.compositions() {
                let wa = h.subgroup(a).unwrap();
                let conjugates: BTreeSet<Vec<SignedPermutation>> = h
                    .table()
                    .elements()
                    .iter()
                    .map(|x| {
                        let mut els: Vec<_> = wa.elements().iter().map(|w| w.conjugate_by(x)).collect();
                        els.sort_unstable();
                        els
                    })
                    .collect();
                for b in h.compositions() {
                    let wb = h.subgroup(b).unwrap();
                    let expected = conjugates
                        .iter()
                        .filter(|c| wb.elements().iter().all(|w| c.binary_search(w).is_ok()))
                        .count() as u64;
                    let got = containing_conjugates_count(&h, b, a).unwrap();
                    assert_eq!(got, expected, "{b} in conjugates of {a}");
                    assert_eq!(got * h.complement_order(a).unwrap() as u64, mark(&h, a, b).unwrap());
                }
                assert_eq!(containing_conjugates_count(&h, a, a).unwrap(), 1);
            }
            assert_eq!(
                containing_conjugates_count(&h, &SignedComposition::trivial(n), &SignedComposition::full(n)).unwrap(),
                1
            );
        }
    }

    #[test]
    fn tables_invert_exactly() {
        for n in 1..=4 {
            let h = Hyperoctahedral::new(n).unwrap();
            let t = MarkTable::build(&h).unwrap();
            assert!((&t.phi_matrix() * &t.u).is_identity());
            assert!((&t.u * &t.phi_matrix()).is_identity());
        }
    }
}
