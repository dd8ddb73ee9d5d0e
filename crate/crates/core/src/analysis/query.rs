use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::isomorphism::{query_isomorphism_check, FunctionGraph};
use super::AnalysisError;
use crate::fca::{BitSet, ConceptLattice, FcaError, FormalContext};

/// Default bound on objects for exhaustive cover enumeration.
pub const DEFAULT_MAX_OBJECTS: usize = 25;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConceptCombination {
    /// Concept indices in the lattice's canonical order, ascending.
    pub concepts: Vec<usize>,
    /// Union of the combined extents: the candidate subsystems.
    pub extent_union: Vec<String>,
}

/// Outcome of [`cover_structure_check`] for one cover.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverStructure {
    pub cover: Vec<String>,
    /// `(function, provider)` pairs realising the query's dependency edges.
    pub assignment: Option<Vec<(String, String)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QueryResult {
    /// Requested functions in attribute order.
    pub requested: Vec<String>,
    /// Inclusion-minimal covering object sets, by size then member names.
    pub minimal_covers: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub concept_combinations: Vec<ConceptCombination>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub structure_checks: Vec<CoverStructure>,
    pub satisfiable: bool,
}

/// Enumerates every inclusion-minimal subset of `sets` whose union contains
/// `target`. Sets are given by the part of `target` they cover. Results are
/// ascending index lists, deduplicated, in no particular order.
fn minimal_covers(sets: &[BitSet], target: &BitSet) -> Vec<Vec<usize>> {
    fn private_elements_remain(chosen: &[usize], sets: &[BitSet], target: &BitSet) -> bool {
        chosen.iter().all(|&i| {
            let mut own = sets[i].intersection(target);
            for &j in chosen {
                if j != i {
                    own.difference_with(&sets[j]);
                }
            }
            !own.is_empty()
        })
    }

    fn search(
        sets: &[BitSet],
        target: &BitSet,
        chosen: &mut Vec<usize>,
        covered: &BitSet,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        let uncovered = target.difference(covered);
        if uncovered.is_empty() {
            let mut cover = chosen.clone();
            cover.sort_unstable();
            out.insert(cover);
            return;
        }
        // branch on the uncovered element with the fewest providers
        let pick = uncovered
            .iter()
            .map(|e| {
                let providers: Vec<usize> = (0..sets.len())
                    .filter(|&i| sets[i].contains(e) && !chosen.contains(&i))
                    .collect();
                providers
            })
            .min_by_key(Vec::len);
        let Some(providers) = pick else { return };
        for p in providers {
            chosen.push(p);
            if private_elements_remain(chosen, sets, target) {
                let next = covered.union(&sets[p]);
                search(sets, target, chosen, &next, out);
            }
            chosen.pop();
        }
    }

    let mut out = BTreeSet::new();
    let covered = BitSet::empty(target.universe());
    search(sets, target, &mut Vec::new(), &covered, &mut out);
    out.into_iter().collect()
}

fn check_guard(objects: usize, limit: usize) -> Result<(), AnalysisError> {
    if objects > limit {
        return Err(AnalysisError::Capacity {
            what: "exhaustive cover enumeration object count",
            size: objects,
            limit,
        });
    }
    Ok(())
}

/// All inclusion-minimal object sets whose combined rows contain the
/// requested functions, under the default object guard.
pub fn satisfy_query<I, S>(ctx: &FormalContext, requested: I) -> Result<QueryResult, AnalysisError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    satisfy_query_with_limit(ctx, requested, DEFAULT_MAX_OBJECTS)
}

pub fn satisfy_query_with_limit<I, S>(
    ctx: &FormalContext,
    requested: I,
    max_objects: usize,
) -> Result<QueryResult, AnalysisError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let target = ctx.attribute_set(requested)?;
    check_guard(ctx.object_count(), max_objects)?;

    let sets: Vec<BitSet> = ctx.rows().iter().map(|r| r.intersection(&target)).collect();
    let mut minimal_covers: Vec<Vec<String>> = minimal_covers(&sets, &target)
        .into_iter()
        .map(|cover| {
            let mut names: Vec<String> = cover.iter().map(|&o| ctx.objects()[o].clone()).collect();
            names.sort();
            names
        })
        .collect();
    minimal_covers.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    Ok(QueryResult {
        requested: target.iter().map(|a| ctx.attributes()[a].clone()).collect(),
        satisfiable: !minimal_covers.is_empty(),
        minimal_covers,
        concept_combinations: Vec::new(),
        structure_checks: Vec::new(),
    })
}

/// Inclusion-minimal sets of concepts with non-empty extents whose intents
/// together contain the request, under the default object guard.
pub fn concept_combinations<I, S>(
    lattice: &ConceptLattice,
    requested: I,
) -> Result<Vec<ConceptCombination>, AnalysisError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    concept_combinations_with_limit(lattice, requested, DEFAULT_MAX_OBJECTS)
}

pub fn concept_combinations_with_limit<I, S>(
    lattice: &ConceptLattice,
    requested: I,
    max_objects: usize,
) -> Result<Vec<ConceptCombination>, AnalysisError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let attrs = lattice.attributes();
    let mut target = BitSet::empty(attrs.len());
    for name in requested {
        let name = name.as_ref();
        let a = attrs
            .iter()
            .position(|m| m == name)
            .ok_or_else(|| FcaError::UnknownAttribute(name.to_string()))?;
        target.insert(a);
    }
    check_guard(lattice.objects().len(), max_objects)?;

    let usable: Vec<usize> = (0..lattice.len())
        .filter(|&c| !lattice.extent_bits(c).is_empty())
        .collect();
    let sets: Vec<BitSet> = usable
        .iter()
        .map(|&c| lattice.intent_bits(c).intersection(&target))
        .collect();

    let mut combos: Vec<ConceptCombination> = minimal_covers(&sets, &target)
        .into_iter()
        .map(|combo| {
            let concepts: Vec<usize> = combo.iter().map(|&i| usable[i]).collect();
            let mut union = BitSet::empty(lattice.objects().len());
            for &c in &concepts {
                union.union_with(lattice.extent_bits(c));
            }
            let mut extent_union: Vec<String> =
                union.iter().map(|o| lattice.objects()[o].clone()).collect();
            extent_union.sort();
            ConceptCombination {
                concepts,
                extent_union,
            }
        })
        .collect();
    combos.sort_by(|a, b| {
        a.concepts
            .len()
            .cmp(&b.concepts.len())
            .then_with(|| a.concepts.cmp(&b.concepts))
    });
    Ok(combos)
}

/// Checks whether a cover can realise the dependency structure of a query.
///
/// Each query node (a requested function) is assigned to a cover member that
/// offers it. The candidate graph then has a node per function, and an edge
/// `f -> g` when the assigned providers differ and `object_links` connects
/// them, or when one provider carries both and the query itself has the edge
/// (the subsystem's internal wiring is not modelled). Returns the first
/// assignment, as `(function, provider)` pairs in query node order, whose
/// candidate graph is isomorphic to the query.
pub fn cover_structure_check(
    ctx: &FormalContext,
    cover: &[String],
    query: &FunctionGraph,
    object_links: &BTreeSet<(String, String)>,
) -> Result<Option<Vec<(String, String)>>, AnalysisError> {
    let members = ctx.object_set(cover)?;
    let query_edges: HashSet<(String, String)> = query.edges().into_iter().collect();

    let mut options: Vec<Vec<usize>> = Vec::with_capacity(query.len());
    for f in query.nodes() {
        let a = ctx
            .attribute_index(f)
            .ok_or_else(|| FcaError::UnknownAttribute(f.clone()))?;
        let providers: Vec<usize> = members.iter().filter(|&o| ctx.has(o, a)).collect();
        if providers.is_empty() {
            return Ok(None);
        }
        options.push(providers);
    }

    let nodes = query.nodes();
    let mut choice = vec![0usize; nodes.len()];
    loop {
        let provider = |i: usize| &ctx.objects()[options[i][choice[i]]];
        let candidate_nodes: Vec<(String, BTreeSet<String>)> = nodes
            .iter()
            .enumerate()
            .map(|(i, f)| (format!("{f}@{}", provider(i)), BTreeSet::from([f.clone()])))
            .collect();
        let mut edges = Vec::new();
        for (i, f) in nodes.iter().enumerate() {
            for (j, g) in nodes.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (p, q) = (provider(i), provider(j));
                let linked = if p == q {
                    query_edges.contains(&(f.clone(), g.clone()))
                } else {
                    object_links.contains(&(p.clone(), q.clone()))
                };
                if linked {
                    edges.push((candidate_nodes[i].0.clone(), candidate_nodes[j].0.clone()));
                }
            }
        }
        let candidate = FunctionGraph::new(candidate_nodes, &edges)?;
        if query_isomorphism_check(&candidate, query)?.is_some() {
            return Ok(Some(
                nodes
                    .iter()
                    .enumerate()
                    .map(|(i, f)| (f.clone(), provider(i).clone()))
                    .collect(),
            ));
        }

        // advance the mixed-radix counter over provider choices
        let mut k = 0;
        loop {
            if k == choice.len() {
                return Ok(None);
            }
            choice[k] += 1;
            if choice[k] < options[k].len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}
