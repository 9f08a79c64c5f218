//! Connection sets: symbolic affine families, expansion, unions, inverse
//! closure and the block partition.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::{Element, Group, LinearMap};

/// Index of a block: the leading w-part of an element, packed as a base-p
/// code in `[0, p^w_count)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BlockIndex(pub(crate) u32);

impl BlockIndex {
    pub fn code(self) -> u32 {
        self.0
    }

    /// The w-coordinates (i, j, k, ...) of this block.
    pub fn digits(self, group: &Group) -> Vec<u8> {
        let p = group.p() as u32;
        let mut out = vec![0u8; group.w_count()];
        let mut c = self.0;
        for i in (0..group.w_count()).rev() {
            out[i] = (c % p) as u8;
            c /= p;
        }
        out
    }

    pub fn from_digits(group: &Group, digits: &[i64]) -> Result<Self> {
        if digits.len() != group.w_count() {
            return Err(Error::Dimension {
                expected: group.w_count(),
                got: digits.len(),
            });
        }
        let p = group.p() as i64;
        let mut code = 0u32;
        for &d in digits {
            code = code * p as u32 + ((d % p + p) % p) as u32;
        }
        Ok(BlockIndex(code))
    }

    /// All p^w_count blocks in code order.
    pub fn all(group: &Group) -> impl Iterator<Item = BlockIndex> {
        (0..group.w_order()).map(BlockIndex)
    }
}

/// The block containing an element (a prefix read on the packed code).
pub fn block_of(group: &Group, el: Element) -> BlockIndex {
    BlockIndex(group.w_part(el))
}

/// A finite loopless subset of the group, with O(1) membership.
#[derive(Clone, Debug)]
pub struct ConnectionSet {
    /// sorted, deduplicated
    elems: Vec<Element>,
    mask: Vec<u64>,
    directed: bool,
    inverse_closed: bool,
}

impl PartialEq for ConnectionSet {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}

impl Eq for ConnectionSet {}

impl ConnectionSet {
    pub fn from_elements<I>(group: &Group, elements: I, directed: bool) -> Result<Self>
    where
        I: IntoIterator<Item = Element>,
    {
        let mut elems: Vec<Element> = elements.into_iter().collect();
        elems.sort_unstable();
        elems.dedup();
        if elems.first() == Some(&group.identity()) {
            return Err(Error::IdentityInConnectionSet);
        }
        let mut mask = vec![0u64; (group.order() as usize + 63) / 64];
        for el in &elems {
            debug_assert!(group.contains(*el));
            mask[el.code() as usize / 64] |= 1 << (el.code() % 64);
        }
        let inverse_closed = elems.iter().all(|&el| {
            let n = group.neg(el);
            mask[n.code() as usize / 64] >> (n.code() % 64) & 1 == 1
        });
        Ok(ConnectionSet {
            elems,
            mask,
            directed,
            inverse_closed,
        })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    #[inline]
    pub fn contains(&self, el: Element) -> bool {
        self.mask[el.code() as usize / 64] >> (el.code() % 64) & 1 == 1
    }

    /// Elements in ascending code order.
    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.elems.iter().copied()
    }

    /// Sorted slice of the elements.
    pub fn as_slice(&self) -> &[Element] {
        &self.elems
    }

    pub fn directed(&self) -> bool {
        self.directed
    }

    pub fn is_inverse_closed(&self) -> bool {
        self.inverse_closed
    }

    /// Self together with all negations; the result is marked undirected.
    pub fn inverse_closure(&self, group: &Group) -> Self {
        let all = self
            .elems
            .iter()
            .copied()
            .chain(self.elems.iter().map(|&el| group.neg(el)));
        Self::from_elements(group, all, false).expect("closure of a loopless set is loopless")
    }

    /// Restriction to one block.
    pub fn in_block(&self, group: &Group, block: BlockIndex) -> Vec<Element> {
        self.elems
            .iter()
            .copied()
            .filter(|&el| block_of(group, el) == block)
            .collect()
    }

    /// Count of elements per block, zero-count blocks included.
    pub fn block_histogram(&self, group: &Group) -> BTreeMap<BlockIndex, u32> {
        let mut out: BTreeMap<BlockIndex, u32> =
            BlockIndex::all(group).map(|b| (b, 0)).collect();
        for &el in &self.elems {
            *out.get_mut(&block_of(group, el)).unwrap() += 1;
        }
        out
    }
}

/// A symbolic affine-parameterized family: `offset + param_map(q)` over all
/// parameter vectors q in Z_p^k.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFamily {
    pub label: String,
    pub offset: Element,
    pub param_map: LinearMap,
}

impl AffineFamily {
    /// Expands to the full `p^k`-element set. A duplicate image means the
    /// parameterization is not injective, which signals a mis-entered family.
    pub fn expand(&self, group: &Group) -> Result<ConnectionSet> {
        let k = self.param_map.cols();
        let p = group.p() as u32;
        let want = p.pow(k as u32) as usize;
        let mut params = vec![0u8; k];
        let mut elems = Vec::with_capacity(want);
        loop {
            elems.push(group.add(self.offset, self.param_map.apply(group, &params)?));
            // odometer over parameter tuples, lexicographic
            let mut i = k;
            loop {
                if i == 0 {
                    break;
                }
                i -= 1;
                params[i] += 1;
                if (params[i] as u32) < p {
                    break;
                }
                params[i] = 0;
            }
            if params.iter().all(|&q| q == 0) {
                break;
            }
        }
        let set = ConnectionSet::from_elements(group, elems, true)?;
        if set.len() != want {
            return Err(Error::DegenerateFamily {
                label: self.label.clone(),
                got: set.len(),
                want,
            });
        }
        Ok(set)
    }
}

/// Overlap found while uniting labelled sets.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub a: String,
    pub b: String,
    pub shared: usize,
}

/// Union of labelled sets plus an overlap report.
pub struct UnionReport {
    pub total: usize,
    pub overlaps: Vec<Overlap>,
}

/// Unites the given labelled sets, reporting every pairwise overlap.
pub fn union_all(
    group: &Group,
    parts: &[(String, ConnectionSet)],
    directed: bool,
) -> Result<(ConnectionSet, UnionReport)> {
    let mut overlaps = Vec::new();
    for (i, (la, sa)) in parts.iter().enumerate() {
        for (lb, sb) in parts.iter().skip(i + 1) {
            let shared = sa.iter().filter(|&el| sb.contains(el)).count();
            if shared > 0 {
                overlaps.push(Overlap {
                    a: la.clone(),
                    b: lb.clone(),
                    shared,
                });
            }
        }
    }
    let union = ConnectionSet::from_elements(
        group,
        parts.iter().flat_map(|(_, s)| s.iter()),
        directed,
    )?;
    let total = union.len();
    Ok((union, UnionReport { total, overlaps }))
}
