//! Isomorphism invariants: the mutual-neighbour table, cross-graph count
//! equality on the zero block, the bound on counts outside it, and the
//! block-distinguisher criteria.
//!
//! Everything here is exact integer counting; there is no floating point.

use rayon::prelude::*;
use serde::Serialize;

use crate::conn::{block_of, BlockIndex};
use crate::error::{Error, Result};
use crate::graph::CayleyGraph;
use crate::group::{Element, Group};

/// An expected mutual-neighbour count for a named vertex.
#[derive(Clone, Debug)]
pub struct ExpectedCount {
    pub label: String,
    pub element: Element,
    pub count: u32,
}

/// One row of the computed table.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub label: String,
    pub element: Vec<u8>,
    pub expected: u32,
    pub gamma1: u32,
    pub gamma2: u32,
    pub ok: bool,
}

/// The mutual-neighbour table computed in both graphs against expectations.
#[derive(Clone, Debug, Serialize)]
pub struct TableCheck {
    pub rows: Vec<TableRow>,
    pub passed: bool,
}

impl TableCheck {
    /// Turns deviations into a hard error listing the offending entries.
    pub fn into_result(self) -> Result<Self> {
        if self.passed {
            return Ok(self);
        }
        let offending: Vec<String> = self
            .rows
            .iter()
            .filter(|r| !r.ok)
            .map(|r| format!("{} expected {} got {}/{}", r.label, r.expected, r.gamma1, r.gamma2))
            .collect();
        Err(Error::TableDeviation(offending.join("; ")))
    }
}

/// Counts mutual neighbours with the identity for each expected vertex in
/// both graphs; a row passes when both counts equal the expectation.
pub fn mutual_table(
    gamma1: &CayleyGraph,
    gamma2: &CayleyGraph,
    expected: &[ExpectedCount],
) -> TableCheck {
    let group = gamma1.group();
    let rows: Vec<TableRow> = expected
        .iter()
        .map(|exp| {
            let c1 = gamma1.mutual_with_identity(exp.element);
            let c2 = gamma2.mutual_with_identity(exp.element);
            TableRow {
                label: exp.label.clone(),
                element: group.coords(exp.element),
                expected: exp.count,
                gamma1: c1,
                gamma2: c2,
                ok: c1 == exp.count && c2 == exp.count,
            }
        })
        .collect();
    let passed = rows.iter().all(|r| r.ok);
    TableCheck { rows, passed }
}

/// A vertex of the zero block whose counts differ across the graphs.
#[derive(Clone, Debug, Serialize)]
pub struct B0Counterexample {
    pub element: Vec<u8>,
    pub gamma1: u32,
    pub gamma2: u32,
}

/// Result of comparing counts over the whole zero block.
#[derive(Clone, Debug, Serialize)]
pub struct B0Equality {
    pub checked: u32,
    pub counterexample: Option<B0Counterexample>,
    pub passed: bool,
}

/// For every g in the zero block, the mutual count of (e, g) must agree in
/// the two graphs. Returns the first falsifying vertex otherwise.
pub fn verify_b0_count_equality(gamma1: &CayleyGraph, gamma2: &CayleyGraph) -> B0Equality {
    let group = gamma1.group();
    let mut counterexample = None;
    for v in 0..group.v_order() {
        let g = group.from_parts(0, v);
        let c1 = gamma1.mutual_with_identity(g);
        let c2 = gamma2.mutual_with_identity(g);
        if c1 != c2 {
            counterexample = Some(B0Counterexample {
                element: group.coords(g),
                gamma1: c1,
                gamma2: c2,
            });
            break;
        }
    }
    B0Equality {
        checked: group.v_order(),
        passed: counterexample.is_none(),
        counterexample,
    }
}

/// Maximum mutual count with e attained outside the zero block.
#[derive(Clone, Debug, Serialize)]
pub struct OutsideMax {
    pub value: u32,
    pub witness: Vec<u8>,
    pub witness_label: String,
    pub block: Vec<u8>,
}

/// Exhaustive scan over the `(p^w_count - 1) * p^v_count` vertices outside
/// the zero block; ties resolve to the lexicographically least witness.
pub fn max_mutual_outside_b0(graph: &CayleyGraph) -> OutsideMax {
    let group = graph.group();
    let per_block: Vec<(u32, Element)> = (1..group.w_order())
        .into_par_iter()
        .map(|w| {
            let mut best = (0u32, group.from_parts(w, 0));
            for v in 0..group.v_order() {
                let g = group.from_parts(w, v);
                let c = graph.mutual_with_identity(g);
                if c > best.0 {
                    best = (c, g);
                }
            }
            best
        })
        .collect();
    let &(value, witness) = per_block
        .iter()
        .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
        .expect("at least one block outside the zero block");
    OutsideMax {
        value,
        witness: group.coords(witness),
        witness_label: group.format(witness),
        block: block_of(group, witness).digits(group),
    }
}

/// Blocks expected to contain an exact number of neighbours of e in both
/// graphs, and no other block may.
#[derive(Clone, Debug)]
pub struct ExactCountClaim {
    pub count: u32,
    pub blocks: Vec<BlockIndex>,
}

/// Blocks expected to be exactly those whose every e-neighbour is adjacent
/// to every element of the span of `basis`, in both graphs. Blocks with no
/// e-neighbours never qualify.
#[derive(Clone, Debug)]
pub struct ConeClaim {
    pub basis_labels: Vec<String>,
    pub basis: Vec<Element>,
    pub blocks: Vec<BlockIndex>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExactCountResult {
    pub count: u32,
    pub expected: Vec<Vec<u8>>,
    pub got: Vec<Vec<u8>>,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeResult {
    pub basis: Vec<String>,
    pub expected: Vec<Vec<u8>>,
    pub got_gamma1: Vec<Vec<u8>>,
    pub got_gamma2: Vec<Vec<u8>>,
    pub passed: bool,
}

/// Results for the exact-count claim and each cone claim.
#[derive(Clone, Debug, Serialize)]
pub struct DistinguisherReport {
    pub exact: ExactCountResult,
    pub cones: Vec<ConeResult>,
    pub passed: bool,
}

/// All elements of the span of `basis` (coefficient tuples in lex order).
pub fn span(group: &Group, basis: &[Element]) -> Vec<Element> {
    let p = group.p();
    let mut out = vec![group.identity()];
    for &b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for c in 0..p {
            let shift = group.scalar_mul(c, b);
            next.extend(out.iter().map(|&x| group.add(x, shift)));
        }
        out = next;
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn blocks_with_exact_count(graph: &CayleyGraph, count: u32) -> Vec<BlockIndex> {
    graph
        .conn()
        .block_histogram(graph.group())
        .into_iter()
        .filter(|&(_, c)| c == count)
        .map(|(b, _)| b)
        .collect()
}

fn cone_blocks(graph: &CayleyGraph, shifts: &[Element]) -> Vec<BlockIndex> {
    let group = graph.group();
    BlockIndex::all(group)
        .filter(|&b| {
            let xs = graph.conn().in_block(group, b);
            !xs.is_empty()
                && xs
                    .iter()
                    .all(|&x| shifts.iter().all(|&u| graph.conn().contains(group.sub(x, u))))
        })
        .collect()
}

fn digits_of(group: &Group, blocks: &[BlockIndex]) -> Vec<Vec<u8>> {
    blocks.iter().map(|b| b.digits(group)).collect()
}

/// Verifies the exact-count claim and every cone claim against both graphs.
pub fn block_distinguishers(
    gamma1: &CayleyGraph,
    gamma2: &CayleyGraph,
    exact: &ExactCountClaim,
    cones: &[ConeClaim],
) -> DistinguisherReport {
    let group = gamma1.group();

    let got1 = blocks_with_exact_count(gamma1, exact.count);
    let got2 = blocks_with_exact_count(gamma2, exact.count);
    let mut both: Vec<BlockIndex> = got1.into_iter().filter(|b| got2.contains(b)).collect();
    both.sort_unstable();
    let mut expected_sorted = exact.blocks.clone();
    expected_sorted.sort_unstable();
    let exact_result = ExactCountResult {
        count: exact.count,
        expected: digits_of(group, &expected_sorted),
        got: digits_of(group, &both),
        passed: both == expected_sorted,
    };

    let cone_results: Vec<ConeResult> = cones
        .iter()
        .map(|claim| {
            let shifts = span(group, &claim.basis);
            let g1 = cone_blocks(gamma1, &shifts);
            let g2 = cone_blocks(gamma2, &shifts);
            let mut expected_sorted = claim.blocks.clone();
            expected_sorted.sort_unstable();
            let passed = g1 == expected_sorted && g2 == expected_sorted;
            ConeResult {
                basis: claim.basis_labels.clone(),
                expected: digits_of(group, &expected_sorted),
                got_gamma1: digits_of(group, &g1),
                got_gamma2: digits_of(group, &g2),
                passed,
            }
        })
        .collect();

    let passed = exact_result.passed && cone_results.iter().all(|c| c.passed);
    DistinguisherReport {
        exact: exact_result,
        cones: cone_results,
        passed,
    }
}

/// The aggregate report the CLI serializes: table, bound, cross-graph
/// equality and distinguishers.
#[derive(Clone, Debug, Serialize)]
pub struct FingerprintReport {
    pub table: TableCheck,
    pub bound: u32,
    pub max_outside_gamma1: OutsideMax,
    pub max_outside_gamma2: OutsideMax,
    pub within_bound: bool,
    pub b0_equality: B0Equality,
    pub distinguishers: DistinguisherReport,
}
