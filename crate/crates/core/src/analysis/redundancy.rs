use std::collections::BTreeMap;

use serde::Serialize;

use super::AnalysisError;
use crate::fca::BitSet;
use crate::model::{LayerSelection, TaggedContext};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub layer: LayerSelection,
    /// Count inclusive (composite membership) attributes as functions.
    pub include_inclusive: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub function: String,
    pub providers: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RedundancyReport {
    pub layer: LayerSelection,
    /// Provider count per function, in attribute order.
    pub multiplicity: Vec<Multiplicity>,
    /// Maximal groups (size >= 2) of objects with identical rows.
    pub duplicate_groups: Vec<Vec<String>>,
    /// Functions with at most one provider.
    pub gaps: Vec<String>,
    /// Functions with no provider at all.
    pub unavailable: Vec<String>,
}

impl RedundancyReport {
    pub fn multiplicity_of(&self, function: &str) -> Option<usize> {
        self.multiplicity
            .iter()
            .find(|m| m.function == function)
            .map(|m| m.providers)
    }
}

fn functional_view(ctx: &TaggedContext, opts: &AnalysisOptions) -> TaggedContext {
    let view = ctx.select(opts.layer);
    if opts.include_inclusive {
        view
    } else {
        view.without_inclusive()
    }
}

pub fn redundancy_report(ctx: &TaggedContext, opts: &AnalysisOptions) -> RedundancyReport {
    let view = functional_view(ctx, opts);
    let c = &view.context;

    let multiplicity: Vec<Multiplicity> = c
        .attributes()
        .iter()
        .enumerate()
        .map(|(a, name)| Multiplicity {
            function: name.clone(),
            providers: c.column(a).count(),
        })
        .collect();

    let mut groups: BTreeMap<&BitSet, Vec<String>> = BTreeMap::new();
    for (o, row) in c.rows().iter().enumerate() {
        groups.entry(row).or_default().push(c.objects()[o].clone());
    }
    let mut duplicate_groups: Vec<Vec<String>> = groups
        .into_values()
        .filter(|g| g.len() >= 2)
        .map(|mut g| {
            g.sort();
            g
        })
        .collect();
    duplicate_groups.sort();

    let gaps = multiplicity
        .iter()
        .filter(|m| m.providers <= 1)
        .map(|m| m.function.clone())
        .collect();
    let unavailable = multiplicity
        .iter()
        .filter(|m| m.providers == 0)
        .map(|m| m.function.clone())
        .collect();

    RedundancyReport {
        layer: opts.layer,
        multiplicity,
        duplicate_groups,
        gaps,
        unavailable,
    }
}

/// Single points of failure: functions offered by exactly one object.
/// Inclusive attributes are not functions and are never reported.
pub fn resiliency_gaps(ctx: &TaggedContext) -> Vec<String> {
    let view = ctx.without_inclusive();
    let c = &view.context;
    (0..c.attribute_count())
        .filter(|&a| c.column(a).count() == 1)
        .map(|a| c.attributes()[a].clone())
        .collect()
}

/// Functions that lose their last provider when `removed` objects fail.
pub fn removal_impact<I, S>(ctx: &TaggedContext, removed: I) -> Result<Vec<String>, AnalysisError>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let removed = ctx.context.object_set(removed)?;
    let view = ctx.without_inclusive();
    let c = &view.context;
    Ok((0..c.attribute_count())
        .filter(|&a| {
            let providers = c.column(a);
            !providers.is_empty() && providers.is_subset(&removed)
        })
        .map(|a| c.attributes()[a].clone())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fca::testing::{table11, table2, table8};
    use crate::fca::FormalContext;

    fn tagged(ctx: FormalContext) -> TaggedContext {
        TaggedContext::from_context(ctx)
    }

    #[test]
    fn production_line_multiplicities() {
        let r = redundancy_report(&tagged(table11()), &AnalysisOptions::default());
        let expected = [
            ("FC", 2),
            ("FRa", 2),
            ("FRb", 2),
            ("FW1", 1),
            ("FW2", 1),
            ("FP1", 1),
            ("FP2", 1),
            ("FT", 2),
        ];
        for (f, n) in expected {
            assert_eq!(r.multiplicity_of(f), Some(n), "{f}");
        }
        assert_eq!(r.gaps, vec!["FW1", "FW2", "FP1", "FP2"]);
        assert!(r.unavailable.is_empty());
        assert_eq!(
            r.duplicate_groups,
            vec![vec!["CPS1".to_string(), "CPS2".to_string()]]
        );
    }

    #[test]
    fn figure5_layer_duplicates() {
        let ctx = tagged(table8());
        let cyber = redundancy_report(
            &ctx,
            &AnalysisOptions {
                layer: LayerSelection::Cyber,
                ..Default::default()
            },
        );
        assert!(cyber
            .duplicate_groups
            .contains(&vec!["CPS2".into(), "CPS6".into()]));
        assert_eq!(cyber.multiplicity.len(), 5);
        let physical = redundancy_report(
            &ctx,
            &AnalysisOptions {
                layer: LayerSelection::Physical,
                ..Default::default()
            },
        );
        assert!(physical
            .duplicate_groups
            .contains(&vec!["CPS4".into(), "CPS6".into()]));
        assert!(physical
            .duplicate_groups
            .contains(&vec!["CPS1".into(), "CPS7".into()]));
    }

    #[test]
    fn inclusive_attributes_are_excluded_by_default() {
        let ctx = tagged(table8());
        let r = redundancy_report(&ctx, &AnalysisOptions::default());
        assert_eq!(r.multiplicity.len(), 9);
        let with = redundancy_report(
            &ctx,
            &AnalysisOptions {
                include_inclusive: true,
                ..Default::default()
            },
        );
        assert_eq!(with.multiplicity_of("F3^I"), Some(6));
    }

    #[test]
    fn gaps() {
        assert_eq!(
            resiliency_gaps(&tagged(table8())),
            vec!["F3^P", "F4^C", "F5^C"]
        );
        assert_eq!(
            resiliency_gaps(&tagged(table11())),
            vec!["FW1", "FW2", "FP1", "FP2"]
        );
        assert!(resiliency_gaps(&tagged(table2())).is_empty());
    }

    #[test]
    fn fully_redundant_context_has_no_gaps() {
        let ctx = FormalContext::new(
            vec!["a".into(), "b".into()],
            vec!["x".into(), "y".into()],
            vec![vec![true, true], vec![true, true]],
        )
        .unwrap();
        let r = redundancy_report(&tagged(ctx), &AnalysisOptions::default());
        assert!(r.gaps.is_empty());
    }

    #[test]
    fn unavailable_functions() {
        let ctx = FormalContext::new(
            vec!["a".into()],
            vec!["x".into(), "y".into()],
            vec![vec![true, false]],
        )
        .unwrap();
        let r = redundancy_report(&tagged(ctx), &AnalysisOptions::default());
        assert_eq!(r.gaps, vec!["x", "y"]);
        assert_eq!(r.unavailable, vec!["y"]);
    }

    #[test]
    fn removal() {
        let ctx = tagged(table8());
        assert_eq!(removal_impact(&ctx, ["CPS2"]).unwrap(), vec!["F3^P"]);
        assert_eq!(removal_impact(&ctx, ["CPS7"]).unwrap(), vec!["F5^C"]);
        assert!(removal_impact(&ctx, Vec::<&str>::new()).unwrap().is_empty());
        assert!(removal_impact(&ctx, ["CPS3"]).is_err());
    }
}
