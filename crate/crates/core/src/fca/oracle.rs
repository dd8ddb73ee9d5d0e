use std::collections::HashSet;

use super::bitset::BitSet;
use super::context::FormalContext;
use super::lattice::{sort_canonical, FormalConcept};
use super::FcaError;

/// Largest object or attribute count the exhaustive enumeration accepts.
pub const ORACLE_MAX_DIMENSION: usize = 25;

/// Every concept of the context, found by closing each subset of the
/// smaller side. Exponential; meant as ground truth for small contexts.
pub fn enumerate_concepts_bruteforce(ctx: &FormalContext) -> Result<Vec<FormalConcept>, FcaError> {
    let (n_obj, n_attr) = (ctx.object_count(), ctx.attribute_count());
    if n_obj > ORACLE_MAX_DIMENSION || n_attr > ORACLE_MAX_DIMENSION {
        return Err(FcaError::Capacity {
            what: "brute-force concept enumeration",
            size: n_obj.max(n_attr),
            limit: ORACLE_MAX_DIMENSION,
        });
    }

    let by_objects = n_obj <= n_attr;
    let side = if by_objects { n_obj } else { n_attr };
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut concepts = Vec::new();

    for mask in 0u32..(1u32 << side) {
        let subset = BitSet::from_indices(side, (0..side).filter(|i| mask & (1 << i) != 0));
        let (extent, intent) = if by_objects {
            let intent = ctx.intent_of(&subset);
            (ctx.extent_of(&intent), intent)
        } else {
            let extent = ctx.extent_of(&subset);
            let intent = ctx.intent_of(&extent);
            (extent, intent)
        };
        if seen.insert(extent.clone()) {
            concepts.push(FormalConcept {
                extent: ctx.object_names(&extent),
                intent: ctx.attribute_names(&intent),
            });
        }
    }

    sort_canonical(&mut concepts);
    Ok(concepts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fca::testing::{table11, table2};

    fn concept(extent: &[&str], intent: &[&str]) -> FormalConcept {
        FormalConcept {
            extent: extent.iter().map(|s| s.to_string()).collect(),
            intent: intent.iter().map(|s| s.to_string()).collect(),
        }
    }

    #[test]
    fn table2_has_fifteen_concepts() {
        let cs = enumerate_concepts_bruteforce(&table2()).unwrap();
        assert_eq!(cs.len(), 15);
        assert!(cs.contains(&concept(&["SSF8"], &["F2", "F4", "F6"])));
    }

    #[test]
    fn table11_has_eight_concepts() {
        let cs = enumerate_concepts_bruteforce(&table11()).unwrap();
        assert_eq!(cs.len(), 8);
        assert!(cs.contains(&concept(&["CPS1", "CPS2"], &["FC"])));
    }

    #[test]
    fn one_by_one() {
        let ctx = FormalContext::new(vec!["o".into()], vec!["a".into()], vec![vec![true]]).unwrap();
        assert_eq!(
            enumerate_concepts_bruteforce(&ctx).unwrap(),
            vec![concept(&["o"], &["a"])]
        );
    }

    #[test]
    fn guard_rejects_large_contexts() {
        let objects: Vec<String> = (0..26).map(|i| format!("o{i}")).collect();
        let ctx = FormalContext::new(objects, vec!["a".into()], vec![vec![false]; 26]).unwrap();
        assert!(matches!(
            enumerate_concepts_bruteforce(&ctx),
            Err(FcaError::Capacity { limit: 25, .. })
        ));
    }
}
