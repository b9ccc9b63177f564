//! Reflection subgroups `W_A` indexed by signed compositions, their coset
//! representatives, normalizers and internal length functions.

use std::cmp::Reverse;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, OnceLock};

use crate::compositions::{enumerate_sc, DpOrder, SignedComposition};
use crate::error::{ensure, Error, Result};
use crate::group::{GroupTable, Generator, Root, SignedPermutation, DEFAULT_MAX_ENUMERATION, MAX_RANK};

/// Subgroups larger than this are never enumerated.
pub const MAX_SUBGROUP_ORDER: u128 = 4_000_000;

/// `S_A`: interior `s_p` of every block, plus the leading `t_p` of positive blocks.
///
/// Within a block the `t` generator comes first, then the `s` generators in
/// increasing order.
pub fn generating_set(a: &SignedComposition) -> Vec<Generator> {
    let mut gens = Vec::new();
    for (&part, start) in a.parts().iter().zip(a.block_offsets()) {
        let len = part.unsigned_abs() as usize;
        if part > 0 {
            gens.push(Generator::T(start + 1));
        }
        for p in start + 1..start + len {
            gens.push(Generator::S(p));
        }
    }
    gens
}

/// `c_A`: the product of `S_A` in stored order.
pub fn coxeter_element(a: &SignedComposition) -> SignedPermutation {
    let n = a.size();
    generating_set(a)
        .into_iter()
        .map(|g| g.element(n).expect("generator in range"))
        .fold(SignedPermutation::identity(n), |acc, g| acc * g)
}

/// Membership in `W_A` read off the block structure: every block is mapped to
/// itself up to sign, and negative blocks are mapped without sign changes.
pub fn block_contains(a: &SignedComposition, w: &SignedPermutation) -> bool {
    if w.rank() != a.size() {
        return false;
    }
    a.parts().iter().zip(a.block_offsets()).all(|(&part, start)| {
        let range = start + 1..=start + part.unsigned_abs() as usize;
        range.clone().all(|i| {
            let v = w.apply(i as i32);
            range.contains(&(v.unsigned_abs() as usize)) && (part > 0 || v > 0)
        })
    })
}

/// `l_A(w)` as the number of positive roots of `W_A` sent negative by `w`;
/// needs no enumeration of `W_A`.
pub fn length_in_by_roots(a: &SignedComposition, w: &SignedPermutation) -> Result<usize> {
    if !block_contains(a, w) {
        return Err(Error::NotAMember(a.to_string()));
    }
    let n = a.size();
    let mut count = 0;
    for (&part, start) in a.parts().iter().zip(a.block_offsets()) {
        let block = start..start + part.unsigned_abs() as usize;
        for j in block.clone() {
            if part > 0 && w.apply(j as i32 + 1) < 0 {
                count += 1;
            }
            for i in block.start..j {
                let mut signs = vec![-1];
                if part > 0 {
                    signs.push(1);
                }
                for sign in signs {
                    let mut coeffs = vec![0i64; n];
                    coeffs[j] = 1;
                    coeffs[i] = sign;
                    let image = w.act(&coeffs);
                    if image.iter().rev().find(|&&c| c != 0).is_some_and(|&c| c < 0) {
                        count += 1;
                    }
                }
            }
        }
    }
    Ok(count)
}

/// Breadth-first closure of a generating set; returns elements together with
/// their word length over the generators.
pub fn closure(n: usize, gens: &[SignedPermutation]) -> Vec<(SignedPermutation, u32)> {
    let id = SignedPermutation::identity(n);
    let mut seen: HashSet<SignedPermutation> = HashSet::from([id]);
    let mut out = vec![(id, 0)];
    let mut queue = VecDeque::from([(id, 0u32)]);
    while let Some((w, d)) = queue.pop_front() {
        for g in gens {
            let v = w * *g;
            if seen.insert(v) {
                out.push((v, d + 1));
                queue.push_back((v, d + 1));
            }
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ReflectionSubgroup {
    composition: SignedComposition,
    generators: Vec<(Generator, SignedPermutation)>,
    simple_system: Vec<Root>,
    elements: Vec<SignedPermutation>,
    lengths: HashMap<SignedPermutation, u32>,
}

impl ReflectionSubgroup {
    pub fn build(a: &SignedComposition, n: usize) -> Result<Self> {
        if a.size() != n {
            return Err(Error::InvalidComposition(format!("{a} is not a composition of {n}")));
        }
        if n > MAX_RANK {
            return Err(Error::RankTooLarge { rank: n, max: MAX_RANK });
        }
        let expected = a.subgroup_order();
        if expected > MAX_SUBGROUP_ORDER {
            return Err(Error::SubgroupTooLarge(expected));
        }
        let generators: Vec<_> = generating_set(a)
            .into_iter()
            .map(|g| Ok((g, g.element(n)?)))
            .collect::<Result<_>>()?;
        let simple_system = generators.iter().map(|(g, _)| g.root(n)).collect();
        let gens: Vec<_> = generators.iter().map(|(_, w)| *w).collect();
        let bfs = closure(n, &gens);
        ensure!(
            bfs.len() as u128 == expected,
            "|W_{a}| = {} by closure but {expected} by the block formula",
            bfs.len()
        );
        let elements = bfs.iter().map(|(w, _)| *w).collect();
        let lengths = bfs.into_iter().collect();
        Ok(Self {
            composition: a.clone(),
            generators,
            simple_system,
            elements,
            lengths,
        })
    }

    pub fn composition(&self) -> &SignedComposition {
        &self.composition
    }

    pub fn ambient_rank(&self) -> usize {
        self.composition.size()
    }

    pub fn generators(&self) -> &[(Generator, SignedPermutation)] {
        &self.generators
    }

    pub fn generator_elements(&self) -> impl Iterator<Item = &SignedPermutation> {
        self.generators.iter().map(|(_, w)| w)
    }

    /// `Π_A = {α : s_α ∈ S_A}`.
    pub fn simple_system(&self) -> &[Root] {
        &self.simple_system
    }

    /// Elements in breadth-first order from the identity.
    pub fn elements(&self) -> &[SignedPermutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, w: &SignedPermutation) -> bool {
        self.lengths.contains_key(w)
    }

    /// Block start offsets (0-based) of the composition.
    pub fn block_offsets(&self) -> Vec<usize> {
        self.composition.block_offsets()
    }

    /// `l_A(w)`: word length over `S_A`.
    pub fn length_in(&self, w: &SignedPermutation) -> Result<usize> {
        self.lengths
            .get(w)
            .map(|&d| d as usize)
            .ok_or_else(|| Error::NotAMember(self.composition.to_string()))
    }

    pub fn coxeter_element(&self) -> SignedPermutation {
        self.generator_elements()
            .fold(SignedPermutation::identity(self.ambient_rank()), |acc, g| acc * *g)
    }

    /// `W_other ⊆ W_self`.
    pub fn contains_subgroup(&self, other: &ReflectionSubgroup) -> bool {
        other.generator_elements().all(|g| self.contains(g))
    }

    /// `x⁻¹ W_other x ⊆ W_self`.
    pub fn contains_conjugate(&self, other: &ReflectionSubgroup, x: &SignedPermutation) -> bool {
        let xi = x.inverse();
        other.generator_elements().all(|g| self.contains(&(xi * *g * *x)))
    }
}

/// Which family of coset representatives a [`CosetReps`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CosetKind {
    /// `D_A`: minimal left coset representatives.
    Left,
    /// `D_AB = D_A⁻¹ ∩ D_B`.
    Double,
    /// `D_AB^⊂`.
    DoubleSubset,
    /// `D_AB^≡`.
    DoubleEquiv,
}

#[derive(Clone, Debug)]
pub struct CosetReps {
    pub kind: CosetKind,
    pub members: Vec<SignedPermutation>,
}

impl CosetReps {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `D_A` as a sorted list and as a membership mask over the group table.
#[derive(Clone, Debug)]
pub struct LeftReps {
    pub mask: Vec<bool>,
    pub list: Vec<SignedPermutation>,
}

impl LeftReps {
    pub fn contains(&self, h: &Hyperoctahedral, x: &SignedPermutation) -> bool {
        h.table().position(x).is_some_and(|i| self.mask[i])
    }
}

/// `N_{W_n}(W_A) = W(A) ⋉ W_A`.
#[derive(Clone, Debug)]
pub struct Normalizer {
    /// `W(A) = {w : w(Π_A) = Π_A}`.
    pub complement: Vec<SignedPermutation>,
    pub normalizer: Vec<SignedPermutation>,
}

/// `W_A`-conjugacy classes of the `C ∈ SC(n)` with `W_C ⊆ W_A`.
#[derive(Clone, Debug)]
pub struct SubclassPartition {
    pub ambient: SignedComposition,
    /// Each class lists its canonical representative first.
    pub classes: Vec<Vec<SignedComposition>>,
}

impl SubclassPartition {
    pub fn representatives(&self) -> Vec<SignedComposition> {
        self.classes.iter().map(|c| c[0].clone()).collect()
    }

    pub fn class_of(&self, c: &SignedComposition) -> Option<usize> {
        self.classes.iter().position(|cl| cl.contains(c))
    }
}

/// Everything about `W_n` that needs the full element list, computed lazily
/// and cached. Safe to share across threads.
pub struct Hyperoctahedral {
    n: usize,
    table: GroupTable,
    lengths: Vec<u32>,
    compositions: Vec<SignedComposition>,
    sc_index: HashMap<SignedComposition, usize>,
    dp_order: DpOrder,
    subgroups: Vec<OnceLock<Arc<ReflectionSubgroup>>>,
    d_reps: Vec<OnceLock<Arc<LeftReps>>>,
    normalizers: Vec<OnceLock<Arc<Normalizer>>>,
    subclasses: Vec<OnceLock<Arc<SubclassPartition>>>,
}

impl Hyperoctahedral {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_max(n, DEFAULT_MAX_ENUMERATION)
    }

    pub fn with_max(n: usize, max: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidComposition("rank must be positive".into()));
        }
        let table = GroupTable::enumerate_with_max(n, max)?;
        let lengths = table.elements().iter().map(|w| w.length() as u32).collect();
        let compositions = enumerate_sc(n);
        let sc_index = compositions.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let k = compositions.len();
        Ok(Self {
            n,
            table,
            lengths,
            compositions,
            sc_index,
            dp_order: DpOrder::canonical(n),
            subgroups: (0..k).map(|_| OnceLock::new()).collect(),
            d_reps: (0..k).map(|_| OnceLock::new()).collect(),
            normalizers: (0..k).map(|_| OnceLock::new()).collect(),
            subclasses: (0..k).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &GroupTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn compositions(&self) -> &[SignedComposition] {
        &self.compositions
    }

    pub fn dp_order(&self) -> &DpOrder {
        &self.dp_order
    }

    fn sc_pos(&self, a: &SignedComposition) -> Result<usize> {
        self.sc_index
            .get(a)
            .copied()
            .ok_or_else(|| Error::InvalidComposition(format!("{a} is not a composition of {}", self.n)))
    }

    fn length_at(&self, i: usize) -> u32 {
        self.lengths[i]
    }

    pub fn length(&self, w: &SignedPermutation) -> usize {
        self.table.position(w).map_or_else(|| w.length(), |i| self.lengths[i] as usize)
    }

    pub fn subgroup(&self, a: &SignedComposition) -> Result<Arc<ReflectionSubgroup>> {
        let i = self.sc_pos(a)?;
        if let Some(g) = self.subgroups[i].get() {
            return Ok(g.clone());
        }
        let g = Arc::new(ReflectionSubgroup::build(a, self.n)?);
        Ok(self.subgroups[i].get_or_init(|| g).clone())
    }

    /// `D_A`, cached.
    pub fn left_reps(&self, a: &SignedComposition) -> Result<Arc<LeftReps>> {
        let i = self.sc_pos(a)?;
        if let Some(m) = self.d_reps[i].get() {
            return Ok(m.clone());
        }
        let mask = self.compute_d_mask(a)?;
        let list = self
            .table
            .elements()
            .iter()
            .zip(mask.iter())
            .filter_map(|(w, &m)| m.then_some(*w))
            .collect();
        let m = Arc::new(LeftReps { mask, list });
        Ok(self.d_reps[i].get_or_init(|| m).clone())
    }

    /// Computes `D_A` twice: by the descent condition `l(xs) > l(x)` for
    /// `s ∈ S_A`, and as the unique shortest element of each left coset.
    fn compute_d_mask(&self, a: &SignedComposition) -> Result<Vec<bool>> {
        let wa = self.subgroup(a)?;
        let els = self.table.elements();
        let gens: Vec<_> = wa.generator_elements().copied().collect();
        let by_descent: Vec<bool> = els
            .iter()
            .enumerate()
            .map(|(i, x)| {
                gens.iter()
                    .all(|s| self.length_at(self.table.position(&(*x * *s)).unwrap()) > self.length_at(i))
            })
            .collect();

        let mut by_minimum = vec![false; els.len()];
        let mut visited = vec![false; els.len()];
        for (i, x) in els.iter().enumerate() {
            if visited[i] {
                continue;
            }
            let mut best: Option<(u32, usize)> = None;
            let mut ties = 0;
            for w in wa.elements() {
                let j = self.table.position(&(*x * *w)).unwrap();
                visited[j] = true;
                let l = self.length_at(j);
                match best {
                    Some((bl, _)) if l > bl => {}
                    Some((bl, _)) if l == bl => ties += 1,
                    _ => {
                        best = Some((l, j));
                        ties = 0;
                    }
                }
            }
            ensure!(ties == 0, "coset of {x:?} in W/W_{a} has no unique shortest element");
            by_minimum[best.unwrap().1] = true;
        }
        ensure!(by_descent == by_minimum, "descent and minimal-length descriptions of D_{a} differ");
        Ok(by_descent)
    }

    /// `D_A`.
    pub fn d_reps(&self, a: &SignedComposition) -> Result<CosetReps> {
        Ok(CosetReps { kind: CosetKind::Left, members: self.left_reps(a)?.list.clone() })
    }

    /// `x ∈ D_A`.
    pub fn is_left_rep(&self, a: &SignedComposition, x: &SignedPermutation) -> Result<bool> {
        Ok(self.left_reps(a)?.contains(self, x))
    }

    /// `D_AB = D_A⁻¹ ∩ D_B`.
    pub fn d_ab(&self, a: &SignedComposition, b: &SignedComposition) -> Result<CosetReps> {
        let da = self.left_reps(a)?;
        let db = self.left_reps(b)?;
        let mut members: Vec<SignedPermutation> = if da.list.len() < db.list.len() {
            da.list.iter().map(|y| y.inverse()).filter(|x| db.contains(self, x)).collect()
        } else {
            db.list.iter().filter(|x| da.contains(self, &x.inverse())).copied().collect()
        };
        members.sort_unstable();
        Ok(CosetReps { kind: CosetKind::Double, members })
    }

    /// `D_AB^⊂ = {x ∈ D_AB : x⁻¹ W_A x ⊆ W_B}`.
    pub fn d_ab_subset(&self, a: &SignedComposition, b: &SignedComposition) -> Result<CosetReps> {
        let wa = self.subgroup(a)?;
        let wb = self.subgroup(b)?;
        let members = self
            .d_ab(a, b)?
            .members
            .into_iter()
            .filter(|x| wb.contains_conjugate(&wa, x))
            .collect();
        Ok(CosetReps { kind: CosetKind::DoubleSubset, members })
    }

    /// `D_AB^≡ = {x ∈ D_AB : W_A = x W_B x⁻¹}`, cross-checked against
    /// `{x ∈ W_n : Π_A = x(Π_B)}`.
    pub fn d_ab_equiv(&self, a: &SignedComposition, b: &SignedComposition) -> Result<CosetReps> {
        let wa = self.subgroup(a)?;
        let wb = self.subgroup(b)?;
        let members: Vec<_> = if wa.order() != wb.order() {
            Vec::new()
        } else {
            self.d_ab(a, b)?
                .members
                .into_iter()
                .filter(|x| wa.contains_conjugate(&wb, &x.inverse()))
                .collect()
        };
        let pa: HashSet<Root> = wa.simple_system().iter().copied().collect();
        let by_roots: Vec<_> = self
            .table
            .elements()
            .iter()
            .filter(|x| {
                wb.simple_system().len() == pa.len()
                    && wb.simple_system().iter().all(|r| pa.contains(&x.act_root(r)))
            })
            .copied()
            .collect();
        ensure!(members == by_roots, "D_AB^≡ for ({a}, {b}) disagrees with the simple-system description");
        Ok(CosetReps { kind: CosetKind::DoubleEquiv, members })
    }

    /// `W(A)` and `N_{W_n}(W_A)`, both by enumeration, checked against each
    /// other and against `D_AA^⊂`.
    pub fn normalizer(&self, a: &SignedComposition) -> Result<Arc<Normalizer>> {
        let i = self.sc_pos(a)?;
        if let Some(nm) = self.normalizers[i].get() {
            return Ok(nm.clone());
        }
        let nm = Arc::new(self.compute_normalizer(a)?);
        Ok(self.normalizers[i].get_or_init(|| nm).clone())
    }

    fn compute_normalizer(&self, a: &SignedComposition) -> Result<Normalizer> {
        let wa = self.subgroup(a)?;
        let pi: HashSet<Root> = wa.simple_system().iter().copied().collect();
        let complement: Vec<_> = self
            .table
            .elements()
            .iter()
            .filter(|w| wa.simple_system().iter().all(|r| pi.contains(&w.act_root(r))))
            .copied()
            .collect();
        let normalizer: Vec<_> = self
            .table
            .elements()
            .iter()
            .filter(|w| wa.contains_conjugate(&wa, w))
            .copied()
            .collect();
        let product: HashSet<_> = complement
            .iter()
            .flat_map(|c| wa.elements().iter().map(move |w| *c * *w))
            .collect();
        ensure!(
            product.len() == complement.len() * wa.order(),
            "W(A)·W_A is not a direct product set for A = {a}"
        );
        ensure!(
            product == normalizer.iter().copied().collect::<HashSet<_>>(),
            "N(W_A) differs from W(A)·W_A for A = {a}"
        );
        let daa = self.d_ab_subset(a, a)?;
        ensure!(daa.members == complement, "W(A) differs from D_AA^⊂ for A = {a}");
        Ok(Normalizer { complement, normalizer })
    }

    /// `|W(A)|`.
    pub fn complement_order(&self, a: &SignedComposition) -> Result<usize> {
        Ok(self.normalizer(a)?.complement.len())
    }

    /// The `C ∈ SC(n)` with `W_C = x⁻¹ W_A x ∩ W_B`.
    pub fn intersection_composition(
        &self,
        x: &SignedPermutation,
        a: &SignedComposition,
        b: &SignedComposition,
    ) -> Result<SignedComposition> {
        let wa = self.subgroup(a)?;
        let wb = self.subgroup(b)?;
        let xi = x.inverse();
        let meet: HashSet<SignedPermutation> = if wa.order() <= wb.order() {
            wa.elements().iter().map(|w| xi * *w * *x).filter(|v| wb.contains(v)).collect()
        } else {
            wb.elements().iter().filter(|v| wa.contains(&(*x * **v * xi))).copied().collect()
        };
        let order = meet.len() as u128;
        for c in &self.compositions {
            if c.subgroup_order() != order {
                continue;
            }
            let gens = generating_set(c);
            if gens.iter().all(|g| meet.contains(&g.element(self.n).unwrap())) {
                return Ok(c.clone());
            }
        }
        Err(Error::Invariant(format!(
            "x⁻¹W_{a}x ∩ W_{b} is not of the form W_C (x = {x:?})"
        )))
    }

    /// `W_A ⊆ W_B`.
    pub fn is_subset(&self, a: &SignedComposition, b: &SignedComposition) -> Result<bool> {
        Ok(self.subgroup(b)?.contains_subgroup(&*self.subgroup(a)?))
    }

    /// `A ⪯ B`: `A ⊂ B`, or `A ⊂ B⁺` with `lg(A) > lg(B)` and `lg⁻(A) ≥ lg⁻(B)`.
    pub fn preceq(&self, a: &SignedComposition, b: &SignedComposition) -> Result<bool> {
        if a.size() != b.size() {
            return Err(Error::RankMismatch(a.size(), b.size()));
        }
        if self.is_subset(a, b)? {
            return Ok(true);
        }
        Ok(self.is_subset(a, &b.abs())? && a.lg() > b.lg() && a.lg_minus() >= b.lg_minus())
    }

    /// Whether some element of `group` conjugates `W_B` onto `W_C`.
    pub fn conjugate_within(
        &self,
        group: &[SignedPermutation],
        b: &SignedComposition,
        c: &SignedComposition,
    ) -> Result<bool> {
        if b.lambda() != c.lambda() {
            return Ok(false);
        }
        let wb = self.subgroup(b)?;
        let wc = self.subgroup(c)?;
        // x W_B x⁻¹ ⊆ W_C with equal orders
        Ok(group.iter().any(|x| wc.contains_conjugate(&wb, &x.inverse())))
    }

    /// All `C` with `W_C ⊆ W_A`, split into `W_A`-conjugacy classes.
    pub fn subclass_reps(&self, a: &SignedComposition) -> Result<Arc<SubclassPartition>> {
        let i = self.sc_pos(a)?;
        if let Some(p) = self.subclasses[i].get() {
            return Ok(p.clone());
        }
        let p = Arc::new(self.compute_subclasses(a)?);
        Ok(self.subclasses[i].get_or_init(|| p).clone())
    }

    fn compute_subclasses(&self, a: &SignedComposition) -> Result<SubclassPartition> {
        let wa = self.subgroup(a)?;
        let subs: Vec<SignedComposition> = self
            .compositions
            .iter()
            .filter(|c| c.subgroup_order() <= wa.order() as u128)
            .filter(|c| {
                generating_set(c).iter().all(|g| wa.contains(&g.element(self.n).unwrap()))
            })
            .cloned()
            .collect();
        let mut classes: Vec<Vec<SignedComposition>> = Vec::new();
        for c in subs {
            let mut placed = false;
            for class in classes.iter_mut() {
                if self.conjugate_within(wa.elements(), &class[0], &c)? {
                    class.push(c.clone());
                    placed = true;
                    break;
                }
            }
            if !placed {
                classes.push(vec![c]);
            }
        }
        for class in classes.iter_mut() {
            let hat = class[0].lambda().hat();
            let pos = class.iter().position(|c| *c == hat).unwrap_or(0);
            class.swap(0, pos);
            class[1..].sort_by_key(|c| self.sc_index[c]);
        }
        classes.sort_by_cached_key(|class| {
            let rep = &class[0];
            let l = rep.lambda();
            (Reverse(rep.subgroup_order()), Reverse(l.plus_size()), l.plus, l.minus, self.sc_index[rep])
        });
        Ok(SubclassPartition { ambient: a.clone(), classes })
    }

    /// `A(w)`: the pointwise stabilizer of `Fix(w)`.
    pub fn parabolic_closure(&self, w: &SignedPermutation) -> Vec<SignedPermutation> {
        let fix = w.fixed_space();
        self.table
            .elements()
            .iter()
            .filter(|v| fix.iter().all(|b| v.fixes(b)))
            .copied()
            .collect()
    }

    /// Orbits of `W_n` acting on itself by conjugation.
    pub fn conjugacy_classes(&self) -> Vec<Vec<SignedPermutation>> {
        let els = self.table.elements();
        let mut seen = vec![false; els.len()];
        let mut out = Vec::new();
        for (i, w) in els.iter().enumerate() {
            if seen[i] {
                continue;
            }
            let mut class: Vec<SignedPermutation> = Vec::new();
            for x in els {
                let v = w.conjugate_by(x);
                let j = self.table.position(&v).unwrap();
                if !seen[j] {
                    seen[j] = true;
                    class.push(v);
                }
            }
            class.sort_unstable();
            out.push(class);
        }
        out
    }
}

/// `w` is of type `S_n` exactly when `Fix(w) = {0}`.
pub fn is_type_sn(w: &SignedPermutation) -> bool {
    w.fixed_space().is_empty()
}
