use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap, VecDeque};

use super::bitset::BitSet;
use super::context::FormalContext;

/// A closed (extent, intent) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalConcept {
    pub extent: BTreeSet<String>,
    pub intent: BTreeSet<String>,
}

impl FormalConcept {
    /// Canonical order: larger extents first, then extents and intents
    /// compared lexicographically as sorted identifier lists.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        other
            .extent
            .len()
            .cmp(&self.extent.len())
            .then_with(|| self.extent.iter().cmp(other.extent.iter()))
            .then_with(|| self.intent.iter().cmp(other.intent.iter()))
    }
}

pub(crate) fn sort_canonical(concepts: &mut [FormalConcept]) {
    concepts.sort_by(FormalConcept::canonical_cmp);
}

/// Concepts of a context in canonical order, with their Hasse diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptLattice {
    objects: Vec<String>,
    attributes: Vec<String>,
    concepts: Vec<FormalConcept>,
    extents: Vec<BitSet>,
    intents: Vec<BitSet>,
    cover_edges: Vec<(usize, usize)>,
    supremum: usize,
    infimum: usize,
}

impl ConceptLattice {
    pub fn concepts(&self) -> &[FormalConcept] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    /// `(child, parent)` pairs: the parent's extent strictly contains the
    /// child's with no concept in between. Sorted.
    pub fn cover_edges(&self) -> &[(usize, usize)] {
        &self.cover_edges
    }

    pub fn supremum(&self) -> usize {
        self.supremum
    }

    pub fn infimum(&self) -> usize {
        self.infimum
    }

    pub fn extent_bits(&self, concept: usize) -> &BitSet {
        &self.extents[concept]
    }

    pub fn intent_bits(&self, concept: usize) -> &BitSet {
        &self.intents[concept]
    }

    pub fn upper_covers(&self, concept: usize) -> impl Iterator<Item = usize> + '_ {
        self.cover_edges
            .iter()
            .filter(move |(c, _)| *c == concept)
            .map(|&(_, p)| p)
    }

    pub fn lower_covers(&self, concept: usize) -> impl Iterator<Item = usize> + '_ {
        self.cover_edges
            .iter()
            .filter(move |(_, p)| *p == concept)
            .map(|&(c, _)| c)
    }

    pub fn index_of_extent(&self, extent: &BitSet) -> Option<usize> {
        self.extents.iter().position(|e| e == extent)
    }

    pub fn index_of_intent(&self, intent: &BitSet) -> Option<usize> {
        self.intents.iter().position(|i| i == intent)
    }

    /// Attribute concept of each attribute: the largest concept whose intent
    /// contains it.
    pub fn attribute_introducers(&self, ctx: &FormalContext) -> Vec<usize> {
        (0..ctx.attribute_count())
            .map(|a| {
                self.index_of_extent(ctx.column(a))
                    .expect("attribute extent is a concept extent")
            })
            .collect()
    }

    /// Object concept of each object: the smallest concept whose extent
    /// contains it.
    pub fn object_introducers(&self, ctx: &FormalContext) -> Vec<usize> {
        (0..ctx.object_count())
            .map(|o| {
                self.index_of_intent(ctx.row(o))
                    .expect("object intent is a concept intent")
            })
            .collect()
    }
}

/// Builds the concept lattice by top-down neighbour generation.
///
/// Starting at the top concept, the lower covers of `(A, B)` are the
/// inclusion-maximal sets among `A ∩ {m}'` for `m ∉ B`. Every concept is
/// reached through one of its upper covers, and each discovered child/parent
/// pair is exactly one Hasse edge.
pub fn build_lattice(ctx: &FormalContext) -> ConceptLattice {
    let n_attrs = ctx.attribute_count();
    let top_extent = BitSet::full(ctx.object_count());
    let top_intent = ctx.intent_of(&top_extent);

    let mut extents = vec![top_extent.clone()];
    let mut intents = vec![top_intent];
    let mut seen: HashMap<BitSet, usize> = HashMap::from([(top_extent, 0)]);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut queue = VecDeque::from([0usize]);

    while let Some(parent) = queue.pop_front() {
        let extent = extents[parent].clone();
        let intent = intents[parent].clone();

        let mut candidates: Vec<BitSet> = Vec::new();
        for m in 0..n_attrs {
            if intent.contains(m) {
                continue;
            }
            let cand = extent.intersection(ctx.column(m));
            if !candidates.contains(&cand) {
                candidates.push(cand);
            }
        }
        let maximal: Vec<&BitSet> = candidates
            .iter()
            .filter(|c| {
                !candidates
                    .iter()
                    .any(|other| other != *c && c.is_subset(other))
            })
            .collect();

        for child_extent in maximal {
            let child = match seen.get(child_extent) {
                Some(&idx) => idx,
                None => {
                    let idx = extents.len();
                    extents.push(child_extent.clone());
                    intents.push(ctx.intent_of(child_extent));
                    seen.insert(child_extent.clone(), idx);
                    queue.push_back(idx);
                    idx
                }
            };
            edges.push((child, parent));
        }
    }

    let concepts: Vec<FormalConcept> = extents
        .iter()
        .zip(&intents)
        .map(|(e, i)| FormalConcept {
            extent: ctx.object_names(e),
            intent: ctx.attribute_names(i),
        })
        .collect();

    let mut order: Vec<usize> = (0..concepts.len()).collect();
    order.sort_by(|&a, &b| concepts[a].canonical_cmp(&concepts[b]));
    let mut rank = vec![0; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }

    let mut cover_edges: Vec<(usize, usize)> =
        edges.iter().map(|&(c, p)| (rank[c], rank[p])).collect();
    cover_edges.sort_unstable();
    cover_edges.dedup();

    let concepts: Vec<FormalConcept> = order.iter().map(|&i| concepts[i].clone()).collect();
    let extents: Vec<BitSet> = order.iter().map(|&i| extents[i].clone()).collect();
    let intents: Vec<BitSet> = order.iter().map(|&i| intents[i].clone()).collect();
    let infimum = concepts.len() - 1;

    ConceptLattice {
        objects: ctx.objects().to_vec(),
        attributes: ctx.attributes().to_vec(),
        concepts,
        extents,
        intents,
        cover_edges,
        supremum: 0,
        infimum,
    }
}
