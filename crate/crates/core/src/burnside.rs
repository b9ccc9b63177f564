//! The Burnside algebra `HB(W_A)` spanned by the coset spaces `[W_A/W_C]`,
//! for `A = (n)` and for every smaller `A`, with species, primitive
//! idempotents, restriction and induction.

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::compositions::{DoublePartition, SignedComposition};
use crate::error::{ensure, Error, Result};
use crate::group::{order, SignedPermutation};
use crate::linalg::{rat, RatMatrix, Rational};
use crate::marks::{fixed_point_matrix, MarkTable};
use crate::subgroups::{Hyperoctahedral, SubclassPartition};

/// A rational combination of basis classes of one `HB(W_A)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    pub ambient: SignedComposition,
    pub coords: Vec<Rational>,
}

impl BurnsideElement {
    pub fn zero(ambient: &SignedComposition, dim: usize) -> Self {
        Self { ambient: ambient.clone(), coords: vec![Rational::zero(); dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient || self.coords.len() != other.coords.len() {
            return Err(Error::AmbientMismatch(self.ambient.to_string(), other.ambient.to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(Self { ambient: self.ambient.clone(), coords })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(Self { ambient: self.ambient.clone(), coords })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { ambient: self.ambient.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }
}

pub struct BurnsideAlgebra<'h> {
    h: &'h Hyperoctahedral,
    ambient: SignedComposition,
    partition: Arc<SubclassPartition>,
    basis: Vec<SignedComposition>,
    phi: Vec<Vec<u64>>,
    u: RatMatrix,
    structure: OnceLock<Result<Vec<Vec<Vec<u64>>>>>,
}

impl<'h> BurnsideAlgebra<'h> {
    /// `HB(W_n)`, reusing a built table of marks.
    pub fn full(h: &'h Hyperoctahedral, table: &MarkTable) -> Result<Self> {
        let ambient = SignedComposition::full(h.rank());
        let partition = h.subclass_reps(&ambient)?;
        let basis = partition.representatives();
        let hats: Vec<_> = table.order.classes().iter().map(DoublePartition::hat).collect();
        ensure!(basis == hats, "W_n-classes of subgroups do not match the class order");
        for class in &partition.classes {
            let l = class[0].lambda();
            ensure!(class.iter().all(|c| c.lambda() == l), "a W_n-class mixes signed cycle types");
        }
        Ok(Self {
            h,
            ambient,
            partition,
            basis,
            phi: table.phi.clone(),
            u: table.u.clone(),
            structure: OnceLock::new(),
        })
    }

    /// `HB(W_A)` over the `W_A`-classes of subgroups `W_C ⊆ W_A`.
    pub fn over(h: &'h Hyperoctahedral, a: &SignedComposition) -> Result<Self> {
        let partition = h.subclass_reps(a)?;
        let basis = partition.representatives();
        let (phi, u) = fixed_point_matrix(h, a, &basis)?;
        Ok(Self {
            h,
            ambient: a.clone(),
            partition,
            basis,
            phi,
            u,
            structure: OnceLock::new(),
        })
    }

    pub fn ambient(&self) -> &SignedComposition {
        &self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SignedComposition] {
        &self.basis
    }

    pub fn partition(&self) -> &SubclassPartition {
        &self.partition
    }

    pub fn phi(&self) -> &[Vec<u64>] {
        &self.phi
    }

    pub fn u(&self) -> &RatMatrix {
        &self.u
    }

    /// Basis index of the class containing `c`.
    pub fn class_of(&self, c: &SignedComposition) -> Result<usize> {
        self.partition
            .class_of(c)
            .ok_or_else(|| Error::NotContained(c.to_string(), self.ambient.to_string()))
    }

    pub fn zero(&self) -> BurnsideElement {
        BurnsideElement::zero(&self.ambient, self.dim())
    }

    pub fn basis_element(&self, i: usize) -> BurnsideElement {
        let mut x = self.zero();
        x.coords[i] = Rational::one();
        x
    }

    /// `[W_A/W_C]`.
    pub fn coset_space(&self, c: &SignedComposition) -> Result<BurnsideElement> {
        Ok(self.basis_element(self.class_of(c)?))
    }

    /// `[W_A/W_A]`, the unit.
    pub fn identity(&self) -> BurnsideElement {
        self.coset_space(&self.ambient).expect("the ambient is its own class")
    }

    fn check(&self, x: &BurnsideElement) -> Result<()> {
        if x.ambient != self.ambient || x.coords.len() != self.dim() {
            return Err(Error::AmbientMismatch(x.ambient.to_string(), self.ambient.to_string()));
        }
        Ok(())
    }

    /// `[W_A/W_{C_i}]·[W_A/W_{C_j}]` as class multiplicities, from the
    /// double cosets `W_{C_i} x W_{C_j}` inside `W_A`.
    pub fn structure_constants(&self) -> Result<&Vec<Vec<Vec<u64>>>> {
        self.structure
            .get_or_init(|| self.compute_structure())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn compute_structure(&self) -> Result<Vec<Vec<Vec<u64>>>> {
        let k = self.dim();
        let wa = self.h.subgroup(&self.ambient)?;
        let mut out = vec![vec![Vec::new(); k]; k];
        for i in 0..k {
            for j in i..k {
                let mut counts = vec![0u64; k];
                for x in self.h.d_ab(&self.basis[i], &self.basis[j])?.members {
                    if !wa.contains(&x) {
                        continue;
                    }
                    let c = self.h.intersection_composition(&x, &self.basis[i], &self.basis[j])?;
                    counts[self.class_of(&c)?] += 1;
                }
                out[i][j] = counts.clone();
                out[j][i] = counts;
            }
        }
        Ok(out)
    }

    pub fn multiply(&self, x: &BurnsideElement, y: &BurnsideElement) -> Result<BurnsideElement> {
        self.check(x)?;
        self.check(y)?;
        let sc = self.structure_constants()?;
        let mut out = self.zero();
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, &m) in sc[i][j].iter().enumerate() {
                    if m != 0 {
                        out.coords[k] += &ab * rat(m as i64);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `s_{C_j}(x)`: fixed points of `W_{C_j}` on `x`.
    pub fn species_at(&self, j: usize, x: &BurnsideElement) -> Result<Rational> {
        self.check(x)?;
        Ok(x.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(Rational::zero(), |acc, (i, c)| acc + c * rat(self.phi[i][j] as i64)))
    }

    /// `s_C(x)` for any `W_C ⊆ W_A`.
    pub fn species(&self, c: &SignedComposition, x: &BurnsideElement) -> Result<Rational> {
        self.species_at(self.class_of(c)?, x)
    }

    /// All species of `x`, in basis order.
    pub fn species_vector(&self, x: &BurnsideElement) -> Result<Vec<Rational>> {
        (0..self.dim()).map(|j| self.species_at(j, x)).collect()
    }

    /// `e_i = Σ_j u_ij [W_A/W_{C_j}]`.
    pub fn idempotent(&self, i: usize) -> BurnsideElement {
        BurnsideElement { ambient: self.ambient.clone(), coords: self.u.row(i).to_vec() }
    }

    pub fn idempotents(&self) -> Vec<BurnsideElement> {
        (0..self.dim()).map(|i| self.idempotent(i)).collect()
    }

    /// Restriction from this algebra to `HB(W_B)`, `W_B ⊆ W_A`.
    pub fn restrict_to(&self, target: &BurnsideAlgebra<'_>, x: &BurnsideElement) -> Result<BurnsideElement> {
        self.check(x)?;
        let b = target.ambient();
        if !self.h.is_subset(b, &self.ambient)? {
            return Err(Error::NotContained(b.to_string(), self.ambient.to_string()));
        }
        let wa = self.h.subgroup(&self.ambient)?;
        let mut out = target.zero();
        for (i, coeff) in x.coords.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let c = &self.basis[i];
            for d in self.h.d_ab(c, b)?.members {
                if !wa.contains(&d) {
                    continue;
                }
                let meet = self.h.intersection_composition(&d, c, b)?;
                out.coords[target.class_of(&meet)?] += coeff;
            }
        }
        Ok(out)
    }

    /// Induction from `HB(W_B)` (this algebra) to `HB(W_A)`, `W_B ⊆ W_A`.
    pub fn induce_to(&self, target: &BurnsideAlgebra<'_>, x: &BurnsideElement) -> Result<BurnsideElement> {
        self.check(x)?;
        if !self.h.is_subset(&self.ambient, target.ambient())? {
            return Err(Error::NotContained(self.ambient.to_string(), target.ambient().to_string()));
        }
        let mut out = target.zero();
        for (i, coeff) in x.coords.iter().enumerate() {
            if !coeff.is_zero() {
                out.coords[target.class_of(&self.basis[i])?] += coeff;
            }
        }
        Ok(out)
    }
}

/// `|C(λ)| = |W_n|·Σ_μ u_λμ`.
pub fn class_size(table: &MarkTable, lambda: usize) -> Result<BigInt> {
    let sum = table.u.row(lambda).iter().fold(Rational::zero(), |acc, x| acc + x);
    let value = sum * Rational::from_integer(BigInt::from(order(table.n)));
    ensure!(value.is_integer() && value.is_positive(), "class size {value} at index {lambda}");
    Ok(value.to_integer())
}

pub fn class_sizes(table: &MarkTable) -> Result<Vec<BigInt>> {
    (0..table.len()).map(|i| class_size(table, i)).collect()
}

/// Class sizes by classifying every element by signed cycle type.
pub fn class_sizes_by_cycle_type(h: &Hyperoctahedral) -> Vec<u64> {
    let mut counts = vec![0u64; h.dp_order().len()];
    for w in h.table().elements() {
        counts[h.dp_order().position(&w.signed_cycle_type()).unwrap()] += 1;
    }
    counts
}

/// `(−1)^{|S_λ̂|}` with `|S_λ̂| = n − lg⁻(λ̂)`.
pub fn hat_sign(lambda: &DoublePartition) -> i64 {
    let hat = lambda.hat();
    if (hat.size() - hat.lg_minus()).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Number of elements with no nonzero fixed vector, summed over the distinct
/// classes `λ(A)` with `A` positive. Checked against `(2n−1)!!`.
pub fn count_type_sn(table: &MarkTable) -> Result<(BigInt, Vec<(DoublePartition, BigInt)>)> {
    let mut breakdown = Vec::new();
    let mut total = BigInt::zero();
    for (i, lambda) in table.order.classes().iter().enumerate() {
        if lambda.minus.is_empty() {
            let size = class_size(table, i)?;
            total += &size;
            breakdown.push((lambda.clone(), size));
        }
    }
    let double_factorial: BigInt = (1..=table.n as u64).map(|k| BigInt::from(2 * k - 1)).product();
    ensure!(total == double_factorial, "type-S_n count {total} differs from (2n-1)!! = {double_factorial}");
    Ok((total, breakdown))
}

/// Elements `w` with `Fix(w) = {0}`, by direct scan.
pub fn count_type_sn_by_fixed_space(h: &Hyperoctahedral) -> u64 {
    h.table().elements().iter().filter(|w| w.fixed_space().is_empty()).count() as u64
}

/// Both sides of the sign-multiplicity identity for `(λ, A)`:
/// `Σ_μ u_λμ·#{x ∈ D_μ̂A : trivial intersection}` and
/// `(−1)^{|S_λ̂|}·|C(λ) ∩ W_A| / |W_A|`.
pub fn sign_multiplicity_check(
    h: &Hyperoctahedral,
    table: &MarkTable,
    lambda: usize,
    a: &SignedComposition,
) -> Result<(Rational, Rational)> {
    let triv = SignedComposition::trivial(h.rank());
    let mut lhs = Rational::zero();
    for (mu, class) in table.order.classes().iter().enumerate() {
        let u = table.u_entry(lambda, mu);
        if u.is_zero() {
            continue;
        }
        let hat = class.hat();
        let mut count = 0i64;
        for x in h.d_ab(&hat, a)?.members {
            if h.intersection_composition(&x, &hat, a)? == triv {
                count += 1;
            }
        }
        lhs += u * rat(count);
    }
    let target = &table.order.classes()[lambda];
    let wa = h.subgroup(a)?;
    let in_class = wa.elements().iter().filter(|w| w.signed_cycle_type() == *target).count();
    let rhs = Rational::new(BigInt::from(hat_sign(target) * in_class as i64), BigInt::from(wa.order()));
    Ok((lhs, rhs))
}

/// `|W_A ∩ W(B)|`.
pub fn complement_in(h: &Hyperoctahedral, a: &SignedComposition, b: &SignedComposition) -> Result<usize> {
    let wa = h.subgroup(a)?;
    Ok(h.normalizer(b)?.complement.iter().filter(|w| wa.contains(w)).count())
}

/// `|N_{W_A}(W_B)|`.
pub fn normalizer_in(h: &Hyperoctahedral, a: &SignedComposition, b: &SignedComposition) -> Result<usize> {
    let wa = h.subgroup(a)?;
    Ok(h.normalizer(b)?.normalizer.iter().filter(|w| wa.contains(w)).count())
}

/// Right-hand side of the induced-character formula: for `W_B ⊆ W_A`,
/// `Σ_i |W(B)| / |W_A ∩ W(B_i)|` over `W_A`-classes `B_i` with `λ(B_i) = λ(B)`.
pub fn induced_trivial_by_complements(
    h: &Hyperoctahedral,
    sub: &BurnsideAlgebra<'_>,
    b: &SignedComposition,
) -> Result<Rational> {
    let wb = h.complement_order(b)? as i64;
    let mut total = Rational::zero();
    for rep in sub.basis() {
        if rep.lambda() == b.lambda() {
            total += Rational::new(wb.into(), (complement_in(h, sub.ambient(), rep)? as i64).into());
        }
    }
    Ok(total)
}

/// Orbit decomposition of `W_A/W_B × W_A/W_C` by direct enumeration; each
/// orbit is labelled by the `W_A`-class of a point stabilizer.
pub fn product_by_orbits(alg: &BurnsideAlgebra<'_>, h: &Hyperoctahedral, i: usize, j: usize) -> Result<Vec<u64>> {
    let wa = h.subgroup(alg.ambient())?;
    let wb = h.subgroup(&alg.basis()[i])?;
    let wc = h.subgroup(&alg.basis()[j])?;
    let coset = |x: &SignedPermutation, g: &crate::subgroups::ReflectionSubgroup| {
        let mut c: Vec<_> = g.elements().iter().map(|w| *x * *w).collect();
        c.sort_unstable();
        c
    };
    let left: Vec<Vec<SignedPermutation>> = unique_cosets(wa.elements(), |x| coset(x, &wb));
    let right: Vec<Vec<SignedPermutation>> = unique_cosets(wa.elements(), |x| coset(x, &wc));
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut counts = vec![0u64; alg.dim()];
    for p in 0..left.len() {
        for q in 0..right.len() {
            if seen.contains(&(p, q)) {
                continue;
            }
            let mut stabilizer = Vec::new();
            for g in wa.elements() {
                let gp = left.iter().position(|c| c.binary_search(&(*g * left[p][0])).is_ok()).unwrap();
                let gq = right.iter().position(|c| c.binary_search(&(*g * right[q][0])).is_ok()).unwrap();
                seen.insert((gp, gq));
                if gp == p && gq == q {
                    stabilizer.push(*g);
                }
            }
            stabilizer.sort_unstable();
            let mut found = None;
            'classes: for (k, rep) in alg.basis().iter().enumerate() {
                let wr = h.subgroup(rep)?;
                if wr.order() != stabilizer.len() {
                    continue;
                }
                for x in wa.elements() {
                    let mut conj: Vec<_> = wr.elements().iter().map(|w| w.conjugate_by(x)).collect();
                    conj.sort_unstable();
                    if conj == stabilizer {
                        found = Some(k);
                        break 'classes;
                    }
                }
            }
            let k = found.ok_or_else(|| Error::Invariant("orbit stabilizer is not conjugate to any W_C".into()))?;
            counts[k] += 1;
        }
    }
    Ok(counts)
}

fn unique_cosets<F>(elements: &[SignedPermutation], coset: F) -> Vec<Vec<SignedPermutation>>
where
    F: Fn(&SignedPermutation) -> Vec<SignedPermutation>,
{
    let mut out: Vec<Vec<SignedPermutation>> = Vec::new();
    let mut covered = HashSet::new();
    for x in elements {
        if covered.contains(x) {
            continue;
        }
        let c = coset(x);
        covered.extend(c.iter().copied());
        out.push(c);
    }
    out
}
