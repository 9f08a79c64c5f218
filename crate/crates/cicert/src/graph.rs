//! Implicit-adjacency Cayley (di)graphs with the counting kernels.
//!
//! Adjacency is a membership test in the connection set: `g ~ h` iff
//! `h - g` is in it. Nothing is materialized; the mutual-neighbour kernel
//! only needs `|conn  (conn + delta)|`, which is one pass over the
//! connection set with a bitset lookup per element. An explicit
//! materialization exists for oracle tests.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::conn::{BlockIndex, ConnectionSet};
use crate::error::{Error, Result};
use crate::group::{Element, Group};

/// A Cayley graph or digraph on all of `Z_p^n`.
#[derive(Clone)]
pub struct CayleyGraph {
    group: Arc<Group>,
    conn: ConnectionSet,
    directed: bool,
}

impl CayleyGraph {
    /// Undirected graphs demand an inverse-closed connection set.
    pub fn new(group: Arc<Group>, conn: ConnectionSet, directed: bool) -> Result<Self> {
        if !directed && !conn.is_inverse_closed() {
            return Err(Error::NotInverseClosed);
        }
        Ok(CayleyGraph {
            group,
            conn,
            directed,
        })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn group_arc(&self) -> Arc<Group> {
        Arc::clone(&self.group)
    }

    pub fn conn(&self) -> &ConnectionSet {
        &self.conn
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn order(&self) -> u32 {
        self.group.order()
    }

    /// Out-degree of every vertex.
    pub fn degree(&self) -> usize {
        self.conn.len()
    }

    /// True iff there is an arc (edge) from `g` to `h`; `g == h` is never
    /// adjacent since connection sets are loopless.
    #[inline]
    pub fn are_adjacent(&self, g: Element, h: Element) -> bool {
        self.conn.contains(self.group.sub(h, g))
    }

    /// The (out-)neighbours of `g`, in connection-set order.
    pub fn neighbours(&self, g: Element) -> Vec<Element> {
        self.conn.iter().map(|s| self.group.add(g, s)).collect()
    }

    /// Number of common (out-)neighbours of `g` and `h`. Translation
    /// invariance reduces this to `|conn  (conn + (h - g))|`; for `g == h`
    /// the formula yields the degree.
    pub fn mutual_neighbour_count(&self, g: Element, h: Element) -> u32 {
        let delta = self.group.sub(h, g);
        self.mutual_with_identity(delta)
    }

    /// `mutual_neighbour_count(e, delta)` without the subtraction.
    #[inline]
    pub fn mutual_with_identity(&self, delta: Element) -> u32 {
        let neg = self.group.neg(delta);
        self.conn
            .iter()
            .filter(|&x| self.conn.contains(self.group.add(x, neg)))
            .count() as u32
    }

    /// Neighbours of `g` counted per block, zero-count blocks included.
    pub fn neighbour_block_profile(&self, g: Element) -> BTreeMap<BlockIndex, u32> {
        let mut out: BTreeMap<BlockIndex, u32> =
            BlockIndex::all(&self.group).map(|b| (b, 0)).collect();
        for s in self.conn.iter() {
            let h = self.group.add(g, s);
            *out.get_mut(&crate::conn::block_of(&self.group, h)).unwrap() += 1;
        }
        out
    }

    /// Fully materialized sorted adjacency lists; the oracle for the
    /// implicit kernels on small groups.
    pub fn materialized_neighbors(&self) -> Vec<Vec<Element>> {
        self.group
            .elements()
            .map(|g| {
                let mut ns = self.neighbours(g);
                ns.sort_unstable();
                ns
            })
            .collect()
    }

    /// Undirected edges as ordered pairs `(u, v)` with `u < v`, ascending.
    /// Errors on digraphs; use [`CayleyGraph::arcs`] there.
    pub fn edges(&self) -> Result<Vec<(Element, Element)>> {
        if self.directed {
            return Err(Error::Unsupported("edge list of a digraph; use arcs()"));
        }
        let mut out = Vec::with_capacity(self.order() as usize * self.degree() / 2);
        for g in self.group.elements() {
            for s in self.conn.iter() {
                let h = self.group.add(g, s);
                if g < h {
                    out.push((g, h));
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// All arcs `(u, v)`, ascending.
    pub fn arcs(&self) -> Vec<(Element, Element)> {
        let mut out = Vec::with_capacity(self.order() as usize * self.degree());
        for g in self.group.elements() {
            for s in self.conn.iter() {
                out.push((g, self.group.add(g, s)));
            }
        }
        out.sort_unstable();
        out
    }
}
