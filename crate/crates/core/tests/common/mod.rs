//! Test-side oracles and reference data. Everything here works on plain
//! boolean matrices and string sets so it shares no code with the library.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use cps_lattice::fca::FormalContext;
use rand::Rng;

pub type Set = BTreeSet<String>;

pub fn set(items: &[&str]) -> Set {
    items.iter().map(|s| s.to_string()).collect()
}

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn context(objects: &[&str], attributes: &[&str], rows: &[&str]) -> FormalContext {
    FormalContext::new(
        objects.iter().map(|s| s.to_string()).collect(),
        attributes.iter().map(|s| s.to_string()).collect(),
        rows.iter()
            .map(|r| r.chars().map(|c| c == '1').collect())
            .collect(),
    )
    .unwrap()
}

pub fn table2() -> FormalContext {
    context(
        &[
            "SSF1", "SSF2", "SSF3", "SSF4", "SSF5", "SSF6", "SSF7", "SSF8",
        ],
        &["F1", "F2", "F3", "F4", "F5", "F6"],
        &[
            "110000", "011000", "001100", "000110", "000111", "011100", "111000", "010101",
        ],
    )
}

pub fn table11() -> FormalContext {
    context(
        &["CPS1", "CPS2", "CPS3", "CPS4", "CPS5", "CPS6"],
        &["FC", "FRa", "FRb", "FW1", "FW2", "FP1", "FP2", "FT"],
        &[
            "10000000", "10000000", "01010100", "00100001", "00101001", "01000010",
        ],
    )
}

pub fn table8() -> FormalContext {
    context(
        &["CPS1", "CPS2", "CPS4", "CPS5", "CPS6", "CPS7"],
        &[
            "F1^P", "F2^P", "F3^P", "F4^P", "F1^C", "F2^C", "F3^C", "F4^C", "F5^C", "F1^I", "F2^I",
            "F3^I",
        ],
        &[
            "100010000101",
            "011001100101",
            "000100110011",
            "110001000011",
            "000101100011",
            "100010001011",
        ],
    )
}

/// Reference concepts of `table2`, as (label, extent, intent).
pub fn table3() -> Vec<(&'static str, Set, Set)> {
    let all_ssf = [
        "SSF1", "SSF2", "SSF3", "SSF4", "SSF5", "SSF6", "SSF7", "SSF8",
    ];
    vec![
        ("C1", set(&["SSF1", "SSF7"]), set(&["F1", "F2"])),
        ("C2", set(&["SSF2", "SSF6", "SSF7"]), set(&["F2", "F3"])),
        ("C3", set(&["SSF3", "SSF6"]), set(&["F3", "F4"])),
        ("C4", set(&["SSF4", "SSF5"]), set(&["F4", "F5"])),
        ("C5", set(&["SSF5"]), set(&["F4", "F5", "F6"])),
        ("C6", set(&["SSF6"]), set(&["F2", "F3", "F4"])),
        ("C7", set(&["SSF7"]), set(&["F1", "F2", "F3"])),
        ("C8", set(&["SSF8"]), set(&["F2", "F4", "F6"])),
        (
            "C9",
            set(&["SSF1", "SSF2", "SSF6", "SSF7", "SSF8"]),
            set(&["F2"]),
        ),
        ("C10", set(&["SSF2", "SSF3", "SSF6", "SSF7"]), set(&["F3"])),
        (
            "C11",
            set(&["SSF3", "SSF4", "SSF5", "SSF6", "SSF8"]),
            set(&["F4"]),
        ),
        ("C12", set(&["SSF5", "SSF8"]), set(&["F4", "F6"])),
        ("C13", set(&["SSF6", "SSF8"]), set(&["F2", "F4"])),
        ("C14", set(&all_ssf), set(&[])),
        ("C15", set(&[]), set(&["F1", "F2", "F3", "F4", "F5", "F6"])),
    ]
}

/// Reference concepts of `table11`.
pub fn table12() -> Vec<(Set, Set)> {
    vec![
        (set(&["CPS1", "CPS2"]), set(&["FC"])),
        (set(&["CPS3"]), set(&["FRa", "FW1", "FP1"])),
        (set(&["CPS4", "CPS5"]), set(&["FRb", "FT"])),
        (set(&["CPS5"]), set(&["FRb", "FW2", "FT"])),
        (set(&["CPS6"]), set(&["FRa", "FP2"])),
        (set(&["CPS3", "CPS6"]), set(&["FRa"])),
        (
            set(&["CPS1", "CPS2", "CPS3", "CPS4", "CPS5", "CPS6"]),
            set(&[]),
        ),
        (
            set(&[]),
            set(&["FC", "FRa", "FRb", "FW1", "FW2", "FP1", "FP2", "FT"]),
        ),
    ]
}

/// Published pair list for `table8`, numbered. Several entries are not
/// closed pairs of the context.
pub fn table9() -> Vec<(usize, Set, Set)> {
    let all = ["CPS1", "CPS2", "CPS4", "CPS5", "CPS6", "CPS7"];
    vec![
        (1, set(&["CPS1"]), set(&["F1^C", "F1^P", "F1^I", "F3^I"])),
        (
            2,
            set(&["CPS2"]),
            set(&["F2^C", "F3^C", "F2^P", "F3^P", "F1^I", "F3^I"]),
        ),
        (
            3,
            set(&["CPS4"]),
            set(&["F3^C", "F4^C", "F4^P", "F2^I", "F3^I"]),
        ),
        (
            4,
            set(&["CPS5"]),
            set(&["F2^C", "F1^P", "F2^P", "F2^I", "F3^I"]),
        ),
        (
            5,
            set(&["CPS4", "CPS6"]),
            set(&["F2^C", "F3^C", "F4^P", "F2^I", "F3^I"]),
        ),
        (
            6,
            set(&["CPS7"]),
            set(&["F1^C", "F5^C", "F1^P", "F2^I", "F3^I"]),
        ),
        (7, set(&["CPS1", "CPS2"]), set(&["F1^I", "F3^I"])),
        (8, set(&all), set(&["F3^I"])),
        (9, set(&["CPS1", "CPS5", "CPS7"]), set(&["F1^I", "F3^I"])),
        (
            10,
            set(&["CPS1", "CPS5", "CPS7"]),
            set(&["F1^C", "F1^P", "F3^I"]),
        ),
        (11, set(&["CPS2", "CPS4", "CPS6"]), set(&["F3^C", "F3^I"])),
        (12, set(&["CPS2", "CPS5"]), set(&["F2^C", "F2^P", "F3^I"])),
        (
            13,
            set(&["CPS2", "CPS4", "CPS6"]),
            set(&["F2^C", "F3^C", "F3^I"]),
        ),
        (
            14,
            set(&["CPS4", "CPS5", "CPS6", "CPS7"]),
            set(&["F2^I", "F3^I"]),
        ),
        (
            15,
            set(&["CPS4", "CPS6"]),
            set(&["F3^C", "F2^P", "F2^I", "F3^I"]),
        ),
        (
            16,
            set(&["CPS4", "CPS5", "CPS6", "CPS7"]),
            set(&["F2^C", "F2^I", "F3^I"]),
        ),
        (17, set(&["CPS5", "CPS7"]), set(&["F1^P", "F2^I", "F3^I"])),
        (18, set(&all), set(&["F2^C", "F3^I"])),
        (
            19,
            set(&[]),
            set(&[
                "F1^C", "F2^C", "F3^C", "F4^C", "F5^C", "F1^P", "F2^P", "F3^P", "F4^P", "F1^I",
                "F2^I", "F3^I",
            ]),
        ),
    ]
}

/// Plain matrix view of a context.
pub struct Matrix {
    pub objects: Vec<String>,
    pub attributes: Vec<String>,
    pub cells: Vec<Vec<bool>>,
}

impl Matrix {
    pub fn of(ctx: &FormalContext) -> Self {
        Matrix {
            objects: ctx.objects().to_vec(),
            attributes: ctx.attributes().to_vec(),
            cells: ctx.incidence_matrix(),
        }
    }

    pub fn intent(&self, extent: &Set) -> Set {
        (0..self.attributes.len())
            .filter(|&a| {
                self.objects
                    .iter()
                    .enumerate()
                    .filter(|(_, o)| extent.contains(*o))
                    .all(|(i, _)| self.cells[i][a])
            })
            .map(|a| self.attributes[a].clone())
            .collect()
    }

    pub fn extent(&self, intent: &Set) -> Set {
        (0..self.objects.len())
            .filter(|&o| {
                self.attributes
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| intent.contains(*a))
                    .all(|(j, _)| self.cells[o][j])
            })
            .map(|o| self.objects[o].clone())
            .collect()
    }

    pub fn is_concept(&self, extent: &Set, intent: &Set) -> bool {
        &self.intent(extent) == intent && &self.extent(intent) == extent
    }

    /// Every concept, found by closing every subset of objects.
    pub fn concepts(&self) -> BTreeSet<(Set, Set)> {
        let n = self.objects.len();
        assert!(n <= 16, "oracle is exponential in the object count");
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let subset: Set = (0..n)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| self.objects[i].clone())
                .collect();
            let intent = self.intent(&subset);
            out.insert((self.extent(&intent), intent));
        }
        out
    }

    /// All inclusion-minimal object sets whose rows jointly contain `requested`.
    pub fn minimal_covers(&self, requested: &Set) -> BTreeSet<Set> {
        let n = self.objects.len();
        assert!(n <= 16, "oracle is exponential in the object count");
        let covers = |mask: u32| {
            requested.iter().all(|f| {
                let a = self.attributes.iter().position(|m| m == f).unwrap();
                (0..n).any(|o| mask >> o & 1 == 1 && self.cells[o][a])
            })
        };
        let covering: Vec<u32> = (0u32..(1 << n)).filter(|&m| covers(m)).collect();
        covering
            .iter()
            .filter(|&&m| !covering.iter().any(|&s| s != m && s & m == s))
            .map(|&m| {
                (0..n)
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| self.objects[i].clone())
                    .collect()
            })
            .collect()
    }
}

/// Hasse diagram of concepts ordered by extent inclusion, as
/// (smaller extent, larger extent) pairs.
pub fn transitive_reduction(concepts: &[(Set, Set)]) -> BTreeSet<(usize, usize)> {
    let below = |a: usize, b: usize| {
        a != b && concepts[a].0.is_subset(&concepts[b].0) && concepts[a].0 != concepts[b].0
    };
    let mut out = BTreeSet::new();
    for a in 0..concepts.len() {
        for b in 0..concepts.len() {
            if below(a, b) && !(0..concepts.len()).any(|c| below(a, c) && below(c, b)) {
                out.insert((a, b));
            }
        }
    }
    out
}

/// Labeled digraph for the isomorphism oracle.
#[derive(Debug, Clone)]
pub struct Digraph {
    pub labels: Vec<Set>,
    pub edges: BTreeSet<(usize, usize)>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Tries every bijection from query nodes to candidate nodes.
pub fn isomorphic_oracle(candidate: &Digraph, query: &Digraph) -> bool {
    let n = query.labels.len();
    if candidate.labels.len() != n {
        return false;
    }
    permutations(n).into_iter().any(|p| {
        (0..n).all(|q| query.labels[q].is_subset(&candidate.labels[p[q]]))
            && (0..n).all(|u| {
                (0..n).all(|v| {
                    query.edges.contains(&(u, v)) == candidate.edges.contains(&(p[u], p[v]))
                })
            })
    })
}

pub fn random_context<R: Rng>(
    rng: &mut R,
    objects: usize,
    attributes: usize,
    density: f64,
) -> FormalContext {
    let cells: Vec<Vec<bool>> = (0..objects)
        .map(|_| (0..attributes).map(|_| rng.gen_bool(density)).collect())
        .collect();
    FormalContext::new(
        (0..objects).map(|i| format!("o{i}")).collect(),
        (0..attributes).map(|j| format!("a{j}")).collect(),
        cells,
    )
    .unwrap()
}
