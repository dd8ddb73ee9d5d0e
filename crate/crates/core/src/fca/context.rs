use std::collections::{BTreeSet, HashMap};

use super::bitset::BitSet;
use super::FcaError;

/// A formal context: objects, attributes and the binary incidence between them.
///
/// Rows (object intents) and columns (attribute extents) are both kept as bit
/// sets so that either derivation is a plain fold of intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormalContext {
    objects: Vec<String>,
    attributes: Vec<String>,
    rows: Vec<BitSet>,
    columns: Vec<BitSet>,
    object_index: HashMap<String, usize>,
    attribute_index: HashMap<String, usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Object,
    Attribute,
}

impl Side {
    fn label(self) -> &'static str {
        match self {
            Side::Object => "object",
            Side::Attribute => "attribute",
        }
    }
}

fn index_names(names: &[String], side: Side) -> Result<HashMap<String, usize>, FcaError> {
    let mut index = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(FcaError::EmptyIdentifier { kind: side.label() });
        }
        if name.contains(['\n', '\r']) {
            return Err(FcaError::InvalidIdentifier {
                kind: side.label(),
                id: name.clone(),
            });
        }
        if index.insert(name.clone(), i).is_some() {
            return Err(match side {
                Side::Object => FcaError::DuplicateObject(name.clone()),
                Side::Attribute => FcaError::DuplicateAttribute(name.clone()),
            });
        }
    }
    Ok(index)
}

impl FormalContext {
    /// Builds a context from a dense boolean matrix, one row per object.
    pub fn new(
        objects: Vec<String>,
        attributes: Vec<String>,
        incidence: Vec<Vec<bool>>,
    ) -> Result<Self, FcaError> {
        if incidence.len() != objects.len() {
            return Err(FcaError::IncidenceShape {
                expected: objects.len(),
                found: incidence.len(),
                row: None,
            });
        }
        let width = attributes.len();
        let mut rows = Vec::with_capacity(incidence.len());
        for (r, row) in incidence.iter().enumerate() {
            if row.len() != width {
                return Err(FcaError::IncidenceShape {
                    expected: width,
                    found: row.len(),
                    row: Some(r),
                });
            }
            rows.push(BitSet::from_indices(
                width,
                row.iter().enumerate().filter(|(_, &x)| x).map(|(i, _)| i),
            ));
        }
        Self::from_rows(objects, attributes, rows)
    }

    /// Builds a context from object rows given as attribute bit sets.
    pub fn from_rows(
        objects: Vec<String>,
        attributes: Vec<String>,
        rows: Vec<BitSet>,
    ) -> Result<Self, FcaError> {
        let object_index = index_names(&objects, Side::Object)?;
        let attribute_index = index_names(&attributes, Side::Attribute)?;
        if rows.len() != objects.len() {
            return Err(FcaError::IncidenceShape {
                expected: objects.len(),
                found: rows.len(),
                row: None,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.universe() != attributes.len() {
                return Err(FcaError::IncidenceShape {
                    expected: attributes.len(),
                    found: row.universe(),
                    row: Some(r),
                });
            }
        }
        let mut columns = vec![BitSet::empty(objects.len()); attributes.len()];
        for (o, row) in rows.iter().enumerate() {
            for a in row.iter() {
                columns[a].insert(o);
            }
        }
        Ok(FormalContext {
            objects,
            attributes,
            rows,
            columns,
            object_index,
            attribute_index,
        })
    }

    /// Builds a context from `(object, attribute)` incidence pairs.
    pub fn from_pairs<'a, I>(
        objects: Vec<String>,
        attributes: Vec<String>,
        pairs: I,
    ) -> Result<Self, FcaError>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let object_index = index_names(&objects, Side::Object)?;
        let attribute_index = index_names(&attributes, Side::Attribute)?;
        let mut rows = vec![BitSet::empty(attributes.len()); objects.len()];
        for (o, a) in pairs {
            let oi = *object_index
                .get(o)
                .ok_or_else(|| FcaError::UnknownObject(o.to_string()))?;
            let ai = *attribute_index
                .get(a)
                .ok_or_else(|| FcaError::UnknownAttribute(a.to_string()))?;
            rows[oi].insert(ai);
        }
        Self::from_rows(objects, attributes, rows)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn attributes(&self) -> &[String] {
        &self.attributes
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attributes.len()
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.object_index.get(name).copied()
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.attribute_index.get(name).copied()
    }

    pub fn has(&self, object: usize, attribute: usize) -> bool {
        self.rows[object].contains(attribute)
    }

    /// Attribute set of one object.
    pub fn row(&self, object: usize) -> &BitSet {
        &self.rows[object]
    }

    /// Object set of one attribute.
    pub fn column(&self, attribute: usize) -> &BitSet {
        &self.columns[attribute]
    }

    pub fn rows(&self) -> &[BitSet] {
        &self.rows
    }

    pub fn incidence_matrix(&self) -> Vec<Vec<bool>> {
        self.rows
            .iter()
            .map(|row| {
                (0..self.attributes.len())
                    .map(|a| row.contains(a))
                    .collect()
            })
            .collect()
    }

    /// Common attributes of an object index set. The empty set maps to every attribute.
    pub fn intent_of(&self, objects: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.attributes.len());
        for o in objects.iter() {
            out.intersect_with(&self.rows[o]);
        }
        out
    }

    /// Objects having every attribute of an attribute index set.
    pub fn extent_of(&self, attributes: &BitSet) -> BitSet {
        let mut out = BitSet::full(self.objects.len());
        for a in attributes.iter() {
            out.intersect_with(&self.columns[a]);
        }
        out
    }

    pub fn object_set<I, S>(&self, names: I) -> Result<BitSet, FcaError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BitSet::empty(self.objects.len());
        for name in names {
            let name = name.as_ref();
            let i = self
                .object_index(name)
                .ok_or_else(|| FcaError::UnknownObject(name.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn attribute_set<I, S>(&self, names: I) -> Result<BitSet, FcaError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut set = BitSet::empty(self.attributes.len());
        for name in names {
            let name = name.as_ref();
            let i = self
                .attribute_index(name)
                .ok_or_else(|| FcaError::UnknownAttribute(name.to_string()))?;
            set.insert(i);
        }
        Ok(set)
    }

    pub fn object_names(&self, set: &BitSet) -> BTreeSet<String> {
        set.iter().map(|i| self.objects[i].clone()).collect()
    }

    pub fn attribute_names(&self, set: &BitSet) -> BTreeSet<String> {
        set.iter().map(|i| self.attributes[i].clone()).collect()
    }

    pub fn derive_intent<I, S>(&self, objects: I) -> Result<BTreeSet<String>, FcaError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let objs = self.object_set(objects)?;
        Ok(self.attribute_names(&self.intent_of(&objs)))
    }

    pub fn derive_extent<I, S>(&self, attributes: I) -> Result<BTreeSet<String>, FcaError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let attrs = self.attribute_set(attributes)?;
        Ok(self.object_names(&self.extent_of(&attrs)))
    }

    /// `attrs''`: the smallest concept intent containing `attrs`.
    pub fn closure_attrs<I, S>(&self, attributes: I) -> Result<BTreeSet<String>, FcaError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let attrs = self.attribute_set(attributes)?;
        Ok(self.attribute_names(&self.intent_of(&self.extent_of(&attrs))))
    }

    /// Restricts the context to a subset of its attributes, keeping the
    /// original attribute order and every object.
    pub fn project<I, S>(&self, attributes: I) -> Result<FormalContext, FcaError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let keep = self.attribute_set(attributes)?;
        Ok(self.project_indices(&keep))
    }

    pub(crate) fn project_indices(&self, keep: &BitSet) -> FormalContext {
        let kept: Vec<usize> = keep.iter().collect();
        let attributes: Vec<String> = kept.iter().map(|&a| self.attributes[a].clone()).collect();
        let rows = self
            .rows
            .iter()
            .map(|row| {
                BitSet::from_indices(
                    kept.len(),
                    kept.iter()
                        .enumerate()
                        .filter(|(_, &a)| row.contains(a))
                        .map(|(i, _)| i),
                )
            })
            .collect();
        FormalContext::from_rows(self.objects.clone(), attributes, rows)
            .expect("projection of a valid context is valid")
    }
}
