//! Finite Coxeter groups realised as permutation groups on their root systems.
//!
//! Every element is stored as the images of the positive roots under its
//! action on the full root set (positive and negative roots). Root `j < N` is
//! the `j`-th positive root and root `N + j` is its negative. Simple roots are
//! the first `rank` positive roots. The images of the simple roots determine an
//! element uniquely, so they serve as the lookup key.

use std::collections::HashMap;
use std::collections::VecDeque;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::descriptor::{CoxeterType, Family};
use crate::error::{Error, Result};
use crate::scalar::FieldScalar;
use crate::subset::GeneratorSubset;

/// Default cap on the number of enumerated elements.
pub const DEFAULT_ELEMENT_BUDGET: u64 = 1_000_000;

/// Budget used when extended types are enabled.
pub const EXTENDED_ELEMENT_BUDGET: u64 = 4_000_000;

/// No budget override may go beyond this.
pub const HARD_ELEMENT_LIMIT: u64 = 10_000_000;

/// Handle to an element of a [`CoxeterGroup`].
///
/// Handles are indices into the group's element list; since the list holds
/// each root permutation exactly once, two handles are equal iff the root
/// permutations they denote are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(pub u32);

impl Element {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Root data: generator permutations of the full root set plus supports.
struct RootAction {
    n_pos: usize,
    /// `gen_perm[s][r]` is the image of root `r` (of `2N`) under generator `s`.
    gen_perm: Vec<Vec<u8>>,
    /// Support of each positive root in the simple-root basis.
    support: Vec<u16>,
    coords: Option<Vec<Vec<FieldScalar>>>,
}

/// Off-diagonal entry `c` in `s_i(α_j) = α_j - c·α_i` for the edge label `m`.
fn cartan_entry(m: u32, i: usize, j: usize) -> Result<FieldScalar> {
    let q = |n: i64| FieldScalar::from_int(n);
    Ok(match m {
        2 => q(0),
        3 => q(-1),
        4 => q(if i < j { -1 } else { -2 }),
        5 => -FieldScalar::golden_ratio(),
        6 => q(if i < j { -1 } else { -3 }),
        _ => {
            return Err(Error::Internal(format!(
                "no root coordinates for edge label {m}"
            )))
        }
    })
}

fn geometric_roots(coxeter: &[Vec<u32>]) -> Result<RootAction> {
    let n = coxeter.len();
    let mut c = vec![vec![FieldScalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            c[i][j] = if i == j {
                FieldScalar::from_int(2)
            } else {
                cartan_entry(coxeter[i][j], i, j)?
            };
        }
    }
    let reflect = |i: usize, v: &[FieldScalar]| -> Vec<FieldScalar> {
        let coeff = (0..n).fold(FieldScalar::zero(), |acc, j| acc + v[j] * c[i][j]);
        let mut out = v.to_vec();
        out[i] = out[i] - coeff;
        out
    };

    let mut roots: Vec<Vec<FieldScalar>> = (0..n)
        .map(|i| {
            let mut v = vec![FieldScalar::zero(); n];
            v[i] = FieldScalar::one();
            v
        })
        .collect();
    let mut index: HashMap<Vec<FieldScalar>, usize> =
        roots.iter().cloned().enumerate().map(|(k, v)| (v, k)).collect();
    let mut head = 0;
    while head < roots.len() {
        for i in 0..n {
            let img = reflect(i, &roots[head]);
            let positive = img.iter().all(|x| !x.is_negative());
            if positive && !index.contains_key(&img) {
                index.insert(img.clone(), roots.len());
                roots.push(img);
                if 2 * roots.len() > 255 {
                    return Err(Error::Internal("root system too large".into()));
                }
            }
        }
        head += 1;
    }

    let n_pos = roots.len();
    let mut gen_perm = vec![vec![0u8; 2 * n_pos]; n];
    for (i, perm) in gen_perm.iter_mut().enumerate() {
        for (j, root) in roots.iter().enumerate() {
            let img = reflect(i, root);
            let target = if img.iter().all(|x| !x.is_negative()) {
                index[&img]
            } else {
                let neg: Vec<FieldScalar> = img.iter().map(|&x| -x).collect();
                n_pos
                    + *index.get(&neg).ok_or_else(|| {
                        Error::Internal("reflection image is not a root".into())
                    })?
            };
            perm[j] = target as u8;
            perm[j + n_pos] = ((target + n_pos) % (2 * n_pos)) as u8;
        }
    }
    let support = roots
        .iter()
        .map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .fold(0u16, |m, (k, _)| m | 1 << k)
        })
        .collect();
    Ok(RootAction {
        n_pos,
        gen_perm,
        support,
        coords: Some(roots),
    })
}

/// The dihedral group I2(m) acting on its 2m roots, with no coordinates.
///
/// The root at angle `kπ/m` is labelled `k ∈ Z/2m`; reflecting in the root at
/// label `a` sends `k` to `2a + m - k`. The simple roots are the labels `0` and
/// `m - 1`.
fn dihedral_roots(m: usize) -> RootAction {
    // Map angle labels 0..m to positive root indices with the simple roots first.
    let pos_index = |k: usize| -> usize {
        match k {
            0 => 0,
            k if k == m - 1 => 1,
            k => k + 1,
        }
    };
    let index_of = |label: usize| -> usize {
        if label < m {
            pos_index(label)
        } else {
            m + pos_index(label - m)
        }
    };
    let simple_labels = [0usize, m - 1];
    let mut gen_perm = vec![vec![0u8; 2 * m]; 2];
    for (s, &a) in simple_labels.iter().enumerate() {
        for label in 0..2 * m {
            let img = (2 * a + m + 2 * m - label) % (2 * m);
            gen_perm[s][index_of(label)] = index_of(img) as u8;
        }
    }
    let mut support = vec![0b11u16; m];
    support[0] = 0b01;
    support[1] = 0b10;
    RootAction {
        n_pos: m,
        gen_perm,
        support,
        coords: None,
    }
}

/// A fully enumerated finite Coxeter group.
///
/// Immutable once built; all queries take `&self`.
pub struct CoxeterGroup {
    ty: CoxeterType,
    rank: usize,
    coxeter_matrix: Vec<Vec<u32>>,
    n_pos: usize,
    positive_roots: Option<Vec<Vec<FieldScalar>>>,
    root_support: Vec<u16>,
    gen_perm: Vec<Vec<u8>>,
    images: Vec<u8>,
    lengths: Vec<u16>,
    right_desc: Vec<u16>,
    left_desc: Vec<u16>,
    right_mul: Vec<u32>,
    left_mul: Vec<u32>,
    inverse: Vec<u32>,
    lookup: HashMap<u128, u32>,
}

impl std::fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("type", &self.ty)
            .field("order", &self.len())
            .finish()
    }
}

impl CoxeterGroup {
    /// Builds the group with the default element budget.
    pub fn build(ty: CoxeterType) -> Result<Self> {
        Self::build_with_budget(ty, DEFAULT_ELEMENT_BUDGET)
    }

    pub fn build_with_budget(ty: CoxeterType, budget: u64) -> Result<Self> {
        let order = ty.order();
        let budget = budget.min(HARD_ELEMENT_LIMIT);
        if order > BigUint::from(budget) {
            return Err(Error::BudgetExceeded {
                descriptor: ty.to_string(),
                order: order.to_string(),
                budget,
            });
        }
        let coxeter_matrix = ty.coxeter_matrix();
        let roots = match ty.family {
            Family::I2 if !(3..=6).contains(&ty.m) => dihedral_roots(ty.m as usize),
            _ => geometric_roots(&coxeter_matrix)?,
        };
        let group = Self::enumerate(ty, coxeter_matrix, roots, budget)?;
        if BigUint::from(group.len()) != order {
            return Err(Error::Internal(format!(
                "{ty}: enumerated {} elements, expected {order}",
                group.len()
            )));
        }
        group.check_relations()?;
        Ok(group)
    }

    fn enumerate(
        ty: CoxeterType,
        coxeter_matrix: Vec<Vec<u32>>,
        roots: RootAction,
        budget: u64,
    ) -> Result<Self> {
        let rank = coxeter_matrix.len();
        let n = roots.n_pos;
        let gen_perm = roots.gen_perm;
        let neg = |r: u8| -> u8 { ((r as usize + n) % (2 * n)) as u8 };

        let mut images: Vec<u8> = (0..n as u8).collect();
        let mut lengths = vec![0u16];
        let mut lookup = HashMap::new();
        lookup.insert(key_of(&images[..rank]), 0u32);
        let mut right_mul: Vec<u32> = Vec::new();

        let mut next = vec![0u8; n];
        let mut head = 0usize;
        while head < lengths.len() {
            for s in 0..rank {
                let w = &images[head * n..(head + 1) * n];
                let apply = |r: u8| -> u8 {
                    let r = r as usize;
                    if r < n {
                        w[r]
                    } else {
                        neg(w[r - n])
                    }
                };
                for (j, slot) in next.iter_mut().enumerate() {
                    *slot = apply(gen_perm[s][j]);
                }
                let key = key_of(&next[..rank]);
                let id = match lookup.get(&key) {
                    Some(&id) => id,
                    None => {
                        let id = lengths.len() as u32;
                        if id as u64 >= budget {
                            return Err(Error::BudgetExceeded {
                                descriptor: ty.to_string(),
                                order: ty.order().to_string(),
                                budget,
                            });
                        }
                        lookup.insert(key, id);
                        images.extend_from_slice(&next);
                        lengths.push(lengths[head] + 1);
                        id
                    }
                };
                right_mul.push(id);
            }
            head += 1;
        }

        let count = lengths.len();
        let mut left_mul = vec![0u32; count * rank];
        let mut inverse = vec![0u32; count];
        let mut key_buf = vec![0u8; rank];
        for e in 0..count {
            let w = &images[e * n..(e + 1) * n];
            for s in 0..rank {
                for i in 0..rank {
                    key_buf[i] = gen_perm[s][w[i] as usize];
                }
                left_mul[e * rank + s] = lookup[&key_of(&key_buf)];
            }
            for (j, &img) in w.iter().enumerate() {
                let img = img as usize;
                if img < rank {
                    key_buf[img] = j as u8;
                } else if img >= n && img - n < rank {
                    key_buf[img - n] = (j + n) as u8;
                }
            }
            inverse[e] = lookup[&key_of(&key_buf)];
        }
        let right_desc: Vec<u16> = (0..count)
            .map(|e| {
                (0..rank)
                    .filter(|&s| images[e * n + s] as usize >= n)
                    .fold(0u16, |m, s| m | 1 << s)
            })
            .collect();
        let left_desc = (0..count).map(|e| right_desc[inverse[e] as usize]).collect();

        Ok(Self {
            ty,
            rank,
            coxeter_matrix,
            n_pos: n,
            positive_roots: roots.coords,
            root_support: roots.support,
            gen_perm,
            images,
            lengths,
            right_desc,
            left_desc,
            right_mul,
            left_mul,
            inverse,
            lookup,
        })
    }

    fn check_relations(&self) -> Result<()> {
        for i in 0..self.rank {
            let si = self.generator(i);
            if self.multiply(si, si) != self.identity() {
                return Err(Error::Internal(format!("s{i} is not an involution")));
            }
            for j in 0..self.rank {
                if i != j {
                    let prod = self.multiply(si, self.generator(j));
                    let ord = self.element_order(prod);
                    if ord != u64::from(self.coxeter_matrix[i][j]) {
                        return Err(Error::Internal(format!(
                            "s{i}s{j} has order {ord}, expected {}",
                            self.coxeter_matrix[i][j]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn coxeter_type(&self) -> CoxeterType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter_matrix
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.lengths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lengths.is_empty()
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.len())
    }

    pub fn num_positive_roots(&self) -> usize {
        self.n_pos
    }

    /// Coordinates of the positive roots in the simple-root basis, when the
    /// group was realised geometrically.
    pub fn positive_roots(&self) -> Option<&[Vec<FieldScalar>]> {
        self.positive_roots.as_deref()
    }

    /// Support of positive root `j` as a generator subset.
    pub fn root_support(&self, j: usize) -> GeneratorSubset {
        GeneratorSubset(self.root_support[j])
    }

    pub fn full_set(&self) -> GeneratorSubset {
        GeneratorSubset::full(self.rank)
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    pub fn generator(&self, s: usize) -> Element {
        Element(self.right_mul[s])
    }

    /// Elements in breadth-first order (non-decreasing length).
    pub fn elements(&self) -> impl ExactSizeIterator<Item = Element> {
        (0..self.len() as u32).map(Element)
    }

    /// Images of the positive roots under `w`, as indices into the full root set.
    pub fn root_perm(&self, w: Element) -> &[u8] {
        let n = self.n_pos;
        &self.images[w.index() * n..(w.index() + 1) * n]
    }

    /// Image of an arbitrary root index (`0..2N`) under `w`.
    pub fn act_on_root(&self, w: Element, root: usize) -> usize {
        let n = self.n_pos;
        let perm = self.root_perm(w);
        if root < n {
            perm[root] as usize
        } else {
            (perm[root - n] as usize + n) % (2 * n)
        }
    }

    /// If `w(α_s)` is a simple root `α_t`, returns `t`.
    pub fn simple_image(&self, w: Element, s: usize) -> Option<usize> {
        let img = self.root_perm(w)[s] as usize;
        (img < self.rank).then_some(img)
    }

    pub fn length(&self, w: Element) -> usize {
        self.lengths[w.index()] as usize
    }

    /// Length recomputed from the root action: the number of positive roots
    /// sent to negative roots.
    pub fn inversion_count(&self, w: Element) -> usize {
        self.root_perm(w)
            .iter()
            .filter(|&&r| r as usize >= self.n_pos)
            .count()
    }

    /// `{s : λ(ws) < λ(w)}`.
    pub fn right_descents(&self, w: Element) -> GeneratorSubset {
        GeneratorSubset(self.right_desc[w.index()])
    }

    /// `{s : λ(sw) < λ(w)}`.
    pub fn left_descents(&self, w: Element) -> GeneratorSubset {
        GeneratorSubset(self.left_desc[w.index()])
    }

    /// `w · s`.
    pub fn mul_gen(&self, w: Element, s: usize) -> Element {
        Element(self.right_mul[w.index() * self.rank + s])
    }

    /// `s · w`.
    pub fn gen_mul(&self, s: usize, w: Element) -> Element {
        Element(self.left_mul[w.index() * self.rank + s])
    }

    pub fn multiply(&self, a: Element, b: Element) -> Element {
        let mut key = [0u8; 16];
        let pb = self.root_perm(b);
        for (i, slot) in key.iter_mut().enumerate().take(self.rank) {
            *slot = self.act_on_root(a, pb[i] as usize) as u8;
        }
        Element(self.lookup[&key_of(&key[..self.rank])])
    }

    pub fn inverse(&self, w: Element) -> Element {
        Element(self.inverse[w.index()])
    }

    pub fn conjugate(&self, w: Element, by: Element) -> Element {
        self.multiply(self.multiply(by, w), self.inverse(by))
    }

    pub fn pow(&self, w: Element, mut k: u64) -> Element {
        let mut base = w;
        let mut acc = self.identity();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, w: Element) -> u64 {
        let mut x = w;
        let mut k = 1;
        while x != self.identity() {
            x = self.multiply(x, w);
            k += 1;
        }
        k
    }

    /// A reduced word for `w` (generator indices, left to right).
    pub fn reduced_word(&self, w: Element) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut x = w;
        while x != self.identity() {
            let s = self.right_descents(x).indices().next().expect("non-identity has a descent");
            word.push(s);
            x = self.mul_gen(x, s);
        }
        word.reverse();
        word
    }

    /// The product of the generators in `k`, in ascending index order.
    pub fn coxeter_element(&self, k: GeneratorSubset) -> Element {
        k.indices().fold(self.identity(), |w, s| self.mul_gen(w, s))
    }

    /// The longest element of `W`.
    pub fn longest_element(&self) -> Element {
        Element(self.len() as u32 - 1)
    }

    /// `w^(p^a·t)` where `|w| = p^a·m`, `p ∤ m` and `t ≡ (p^a)^{-1} (mod m)`.
    pub fn p_regular_part(&self, w: Element, p: u64) -> Element {
        let n = self.element_order(w);
        let mut pa = 1u64;
        while (n / pa).is_multiple_of(p) {
            pa *= p;
        }
        let m = n / pa;
        if m == 1 {
            return self.identity();
        }
        let t = mod_inverse(pa % m, m).expect("p^a is a unit modulo its cofactor");
        self.pow(w, (pa * t) % n)
    }

    /// Elements of the standard parabolic subgroup `W_K`, identity first.
    pub fn parabolic_elements(&self, k: GeneratorSubset) -> Vec<Element> {
        let mut seen = vec![false; self.len()];
        let mut out = vec![self.identity()];
        seen[0] = true;
        let mut head = 0;
        while head < out.len() {
            let w = out[head];
            for s in k.indices() {
                let ws = self.mul_gen(w, s);
                if !seen[ws.index()] {
                    seen[ws.index()] = true;
                    out.push(ws);
                }
            }
            head += 1;
        }
        out
    }

    /// Whether `w ∈ W_K`: every inversion of `w` is a root of the parabolic
    /// root subsystem spanned by `K`.
    pub fn in_parabolic(&self, w: Element, k: GeneratorSubset) -> bool {
        let n = self.n_pos;
        let inv = self.inverse(w);
        self.root_perm(inv)
            .iter()
            .enumerate()
            .all(|(j, &r)| (r as usize) < n || self.root_support(j).is_subset_of(k))
    }

    /// Conjugacy classes of `W`, by orbit closure under conjugation by the
    /// generators.
    pub fn conjugacy_classes(&self) -> ConjugacyClasses {
        let count = self.len();
        let mut class_of = vec![u32::MAX; count];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..count {
            if class_of[start] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(Element(start as u32));
            class_of[start] = c;
            queue.push_back(start);
            let mut size = 0u64;
            while let Some(x) = queue.pop_front() {
                size += 1;
                for s in 0..self.rank {
                    let y = self.gen_mul(s, self.mul_gen(Element(x as u32), s)).index();
                    if class_of[y] == u32::MAX {
                        class_of[y] = c;
                        queue.push_back(y);
                    }
                }
            }
            sizes.push(size);
        }
        ConjugacyClasses {
            class_of,
            reps,
            sizes,
        }
    }

    /// Generator `s` as a permutation of the full root set.
    pub fn generator_root_perm(&self, s: usize) -> &[u8] {
        &self.gen_perm[s]
    }
}

/// Conjugacy classes of a group; class 0 is the identity class.
#[derive(Clone, Debug)]
pub struct ConjugacyClasses {
    class_of: Vec<u32>,
    reps: Vec<Element>,
    sizes: Vec<u64>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn class_of(&self, w: Element) -> usize {
        self.class_of[w.index()] as usize
    }

    /// The representative of each class: its first element in breadth-first order.
    pub fn representatives(&self) -> &[Element] {
        &self.reps
    }

    pub fn sizes(&self) -> &[u64] {
        &self.sizes
    }
}

fn key_of(simple_images: &[u8]) -> u128 {
    simple_images
        .iter()
        .fold(0u128, |k, &b| (k << 8) | u128::from(b))
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    (g.gcd == 1).then(|| g.x.rem_euclid(m as i128) as u64)
}
