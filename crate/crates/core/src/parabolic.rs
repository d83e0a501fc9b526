//! Standard parabolic subgroups, minimal coset representatives and
//! conjugacy classes of generator subsets.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::{CoxeterGroup, Element};
use crate::labels::iso_type;
use crate::marks::{CosetSpace, MarksTable};
use crate::subset::GeneratorSubset;

/// A standard parabolic subgroup `W_K` with its elements listed.
#[derive(Clone, Debug)]
pub struct ParabolicSubgroup {
    pub generators: GeneratorSubset,
    pub elements: Vec<Element>,
}

impl ParabolicSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

pub fn parabolic_subgroup(g: &CoxeterGroup, k: GeneratorSubset) -> ParabolicSubgroup {
    ParabolicSubgroup {
        generators: k,
        elements: g.parabolic_elements(k),
    }
}

/// `X_K`: the elements with no right descent in `K`, in breadth-first order.
pub fn min_coset_reps(g: &CoxeterGroup, k: GeneratorSubset) -> Vec<Element> {
    g.elements()
        .filter(|&w| g.right_descents(w).intersection(k).is_empty())
        .collect()
}

/// `X_J^{-1} ∩ X_K`.
pub fn double_coset_reps(g: &CoxeterGroup, j: GeneratorSubset, k: GeneratorSubset) -> Vec<Element> {
    g.elements()
        .filter(|&w| {
            g.left_descents(w).intersection(j).is_empty()
                && g.right_descents(w).intersection(k).is_empty()
        })
        .collect()
}

/// Whether some double coset representative `g` carries the simple roots of
/// `K` onto those of `J`, i.e. `g K g^{-1} = J`.
pub fn subsets_conjugate(g: &CoxeterGroup, j: GeneratorSubset, k: GeneratorSubset) -> bool {
    if j.len() != k.len() {
        return false;
    }
    double_coset_reps(g, j, k)
        .into_iter()
        .any(|w| carries_onto(g, w, k, j))
}

/// Slow reference version: searches all of `W` for an element conjugating the
/// reflections in `K` onto those in `J`, comparing products of group elements
/// only.
pub fn subsets_conjugate_brute(g: &CoxeterGroup, j: GeneratorSubset, k: GeneratorSubset) -> bool {
    if j.len() != k.len() {
        return false;
    }
    let target: Vec<Element> = j.indices().map(|s| g.generator(s)).collect();
    g.elements().any(|w| {
        k.indices()
            .all(|s| target.contains(&g.conjugate(g.generator(s), w)))
    })
}

fn carries_onto(g: &CoxeterGroup, w: Element, k: GeneratorSubset, j: GeneratorSubset) -> bool {
    k.indices()
        .all(|s| g.simple_image(w, s).is_some_and(|t| j.contains(t)))
}

/// `[N_W(W_J) : W_J]`, counted as the `g ∈ X_J^{-1} ∩ X_J` with `g J g^{-1} = J`.
pub fn normalizer_index(g: &CoxeterGroup, j: GeneratorSubset) -> BigUint {
    let n = g
        .elements()
        .filter(|&w| {
            g.left_descents(w).intersection(j).is_empty()
                && g.right_descents(w).intersection(j).is_empty()
                && carries_onto(g, w, j, j)
        })
        .count();
    BigUint::from(n)
}

/// One conjugacy class of subsets of `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetClass {
    /// The member that comes first in the canonical subset order.
    pub representative: GeneratorSubset,
    /// All members, in canonical order.
    pub members: Vec<GeneratorSubset>,
    /// `β_JJ = [N_W(W_J) : W_J]`.
    pub normalizer_index: BigUint,
    /// Isomorphism type of `W_J`, with `'` marks separating distinct classes
    /// of the same type (first class in order gets `'`, the next `''`, ...).
    pub iso_type: String,
}

/// The set `E` of class representatives, ordered by size and then
/// lexicographically, which makes the table of marks lower triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassIndex {
    rank: usize,
    classes: Vec<SubsetClass>,
    class_of: Vec<u16>,
}

impl ClassIndex {
    /// Assembles an index from already computed classes (e.g. read back from a
    /// cache); the classes must partition the power set of `S`.
    pub fn from_classes(rank: usize, mut classes: Vec<SubsetClass>) -> Result<Self> {
        classes.sort_by(|a, b| a.representative.canonical_cmp(&b.representative));
        let mut class_of = vec![u16::MAX; 1 << rank];
        for (c, cls) in classes.iter().enumerate() {
            for m in &cls.members {
                let slot = class_of
                    .get_mut(m.mask() as usize)
                    .ok_or_else(|| Error::Internal(format!("subset {m} out of range")))?;
                if *slot != u16::MAX {
                    return Err(Error::Internal(format!("subset {m} in two classes")));
                }
                *slot = c as u16;
            }
        }
        if class_of.contains(&u16::MAX) {
            return Err(Error::Internal("classes do not cover every subset".into()));
        }
        Ok(Self {
            rank,
            classes,
            class_of,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `r = |E|`.
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[SubsetClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &SubsetClass {
        &self.classes[i]
    }

    /// Position in `E` of the class containing `k`.
    pub fn class_of(&self, k: GeneratorSubset) -> usize {
        self.class_of[k.mask() as usize] as usize
    }

    pub fn representative(&self, i: usize) -> GeneratorSubset {
        self.classes[i].representative
    }

    pub fn representatives(&self) -> impl Iterator<Item = GeneratorSubset> + '_ {
        self.classes.iter().map(|c| c.representative)
    }

    /// Position in `E` of the class whose representative is `k`, if any.
    pub fn position(&self, k: GeneratorSubset) -> Option<usize> {
        let c = self.class_of(k);
        (self.classes[c].representative == k).then_some(c)
    }

    /// The permutations of `E` induced by generator permutations `autos`
    /// (as returned by [`CoxeterType::diagram_automorphisms`]).
    ///
    /// [`CoxeterType::diagram_automorphisms`]: crate::CoxeterType::diagram_automorphisms
    pub fn induced_permutations(&self, autos: &[Vec<usize>]) -> Vec<Vec<usize>> {
        autos
            .iter()
            .map(|sigma| {
                self.representatives()
                    .map(|k| self.class_of(GeneratorSubset::from_indices(k.indices().map(|i| sigma[i]))))
                    .collect()
            })
            .collect()
    }
}

/// Partitions the subsets of `S` into conjugacy classes.
///
/// Every `w` with `w(α_s)` simple for all `s` in some `K` conjugates `K` onto
/// `w(K)`; joining all such pairs gives the classes.
pub fn class_index(g: &CoxeterGroup) -> ClassIndex {
    let rank = g.rank();
    let size = 1usize << rank;
    let mut parent: Vec<u16> = (0..size as u16).collect();
    fn find(parent: &mut [u16], mut x: u16) -> u16 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    let mut image = [0usize; 16];
    for w in g.elements() {
        let mut p = 0u16;
        for s in 0..rank {
            if let Some(t) = g.simple_image(w, s) {
                p |= 1 << s;
                image[s] = t;
            }
        }
        if p.count_ones() == 0 {
            continue;
        }
        for k in GeneratorSubset(p).subsets() {
            let img = GeneratorSubset::from_indices(k.indices().map(|s| image[s]));
            let (a, b) = (find(&mut parent, k.mask()), find(&mut parent, img.mask()));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let mut groups: Vec<Vec<GeneratorSubset>> = vec![Vec::new(); size];
    for m in 0..size as u16 {
        let root = find(&mut parent, m);
        groups[root as usize].push(GeneratorSubset(m));
    }
    let matrix = g.coxeter_matrix();
    let mut classes: Vec<SubsetClass> = groups
        .into_iter()
        .filter(|v| !v.is_empty())
        .map(|mut members| {
            members.sort_by(GeneratorSubset::canonical_cmp);
            let representative = members[0];
            SubsetClass {
                representative,
                normalizer_index: normalizer_index(g, representative),
                iso_type: iso_type(matrix, representative),
                members,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.representative.canonical_cmp(&b.representative));
    decorate_repeated_types(&mut classes);
    ClassIndex::from_classes(rank, classes).expect("union-find yields a partition")
}

fn decorate_repeated_types(classes: &mut [SubsetClass]) {
    let bare: Vec<String> = classes.iter().map(|c| c.iso_type.clone()).collect();
    for (i, c) in classes.iter_mut().enumerate() {
        if bare.iter().filter(|t| **t == bare[i]).count() > 1 {
            let nth = bare[..=i].iter().filter(|t| **t == bare[i]).count();
            let base = if bare[i].contains('x') {
                format!("({})", bare[i])
            } else {
                bare[i].clone()
            };
            c.iso_type = format!("{base}{}", "'".repeat(nth));
        }
    }
}

/// The class `K ∈ E` such that the parabolic closure of `⟨gens⟩` is conjugate
/// to `W_K`: the column of the table of marks equal to the fixed-point counts
/// of `⟨gens⟩` on each `W/W_J`.
pub fn parabolic_closure_class(
    g: &CoxeterGroup,
    gens: &[Element],
    spaces: &[CosetSpace],
    marks: &MarksTable,
) -> Result<usize> {
    let fingerprint: Vec<u64> = spaces.iter().map(|x| x.fixed_by_all(g, gens)).collect();
    let r = marks.len();
    (0..r)
        .find(|&k| (0..r).all(|j| marks.entry_u64(j, k) == Some(fingerprint[j])))
        .ok_or_else(|| {
            Error::Internal(format!(
                "fixed-point fingerprint {fingerprint:?} matches no column of the table of marks"
            ))
        })
}
