//! Polynomial vertex maps: evaluation, bijectivity, per-block translation
//! behaviour and exhaustive isomorphism verification.
//!
//! A map sends `g` to `g + sum monomial(w-coords of g) * target`, with every
//! target in the span of the v-generators. Such a map fixes every block and
//! acts on each block as a translation, so it is automatically a bijection;
//! both facts are nevertheless checked exhaustively rather than assumed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conn::BlockIndex;
use crate::error::{Error, Result};
use crate::graph::CayleyGraph;
use crate::group::{Element, Group};

/// One monomial term: exponents on the w-coordinates and a target vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialTerm {
    /// one exponent per w-coordinate, each in [0, p) (functions on Z_p)
    pub exponents: Vec<u8>,
    pub target: Element,
}

/// A polynomial vertex map `g -> g + sum monomial(x) * target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialMap {
    terms: Vec<MonomialTerm>,
}

impl PolynomialMap {
    /// Validates exponent ranges and that every target lies in the
    /// v-subspace (zero w-part), which is what keeps blocks fixed.
    pub fn new(group: &Group, terms: Vec<MonomialTerm>) -> Result<Self> {
        for term in &terms {
            if term.exponents.len() != group.w_count() {
                return Err(Error::InvalidTerm(format!(
                    "expected {} exponents, got {}",
                    group.w_count(),
                    term.exponents.len()
                )));
            }
            if term.exponents.iter().any(|&e| e >= group.p()) {
                return Err(Error::InvalidTerm(format!(
                    "exponent out of range in {:?} (reduce as a function on Z_{})",
                    term.exponents,
                    group.p()
                )));
            }
            if group.w_part(term.target) != 0 {
                return Err(Error::InvalidTerm(format!(
                    "target {} has a nonzero w-part",
                    group.format(term.target)
                )));
            }
        }
        Ok(PolynomialMap { terms })
    }

    /// The map with no terms.
    pub fn identity() -> Self {
        PolynomialMap { terms: Vec::new() }
    }

    pub fn terms(&self) -> &[MonomialTerm] {
        &self.terms
    }

    /// Evaluates the map at one vertex.
    pub fn apply(&self, group: &Group, g: Element) -> Element {
        group.add(g, self.translation_for(group, group.w_part(g)))
    }

    /// The translation the map applies throughout the block with this
    /// w-code: monomials depend only on the w-coordinates.
    fn translation_for(&self, group: &Group, w_code: u32) -> Element {
        let p = group.p() as u32;
        let mut x = vec![0u32; group.w_count()];
        let mut c = w_code;
        for i in (0..group.w_count()).rev() {
            x[i] = c % p;
            c /= p;
        }
        let mut out = group.identity();
        for term in &self.terms {
            let mut m = 1u32;
            for (xi, &e) in x.iter().zip(&term.exponents) {
                // x^0 = 1 for every x, including 0
                for _ in 0..e {
                    m = m * xi % p;
                }
            }
            if m != 0 {
                out = group.add(out, group.scalar_mul(m as u8, term.target));
            }
        }
        out
    }

    /// Exhaustive injectivity check over all p^n vertices.
    pub fn is_bijection(&self, group: &Group) -> bool {
        let mut seen = vec![0u64; (group.order() as usize + 63) / 64];
        for g in group.elements() {
            let img = self.apply(group, g).code() as usize;
            if seen[img / 64] >> (img % 64) & 1 == 1 {
                return false;
            }
            seen[img / 64] |= 1 << (img % 64);
        }
        true
    }

    /// The unique translation the map applies on a block, verified against
    /// every element of the block.
    pub fn block_translation(&self, group: &Group, block: BlockIndex) -> Result<Element> {
        let t = self.translation_for(group, block.code());
        for v in 0..group.v_order() {
            let g = group.from_parts(block.code(), v);
            if self.apply(group, g) != group.add(g, t) {
                return Err(Error::NotBlockTranslation {
                    block: block.digits(group),
                });
            }
        }
        Ok(t)
    }
}

/// One adjacency violation: the arc out of `g` along `s` is not preserved.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Mismatch {
    pub g: Vec<u8>,
    pub h: Vec<u8>,
}

/// Outcome of an exhaustive isomorphism check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsoReport {
    /// ordered (vertex, connection element) pairs scanned: p^n * |conn|
    pub checked: u64,
    pub mismatch_count: u64,
    /// first violations in scan order, capped
    pub mismatches: Vec<Mismatch>,
    pub degree_src: usize,
    pub degree_dst: usize,
    pub status: IsoStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoStatus {
    Iso,
    NotIso,
}

const MISMATCH_SAMPLE_CAP: usize = 100;

/// Checks that `map` carries every arc of `src` to an arc of `dst`.
///
/// With the map a bijection and the two degrees equal, arc counts match and
/// the forward inclusion is an equality, so a clean scan certifies an
/// isomorphism (digraphs included). The scan covers all `p^n * |conn_src|`
/// ordered pairs.
pub fn verify_isomorphism(
    map: &PolynomialMap,
    src: &CayleyGraph,
    dst: &CayleyGraph,
) -> Result<IsoReport> {
    if src.group() != dst.group() {
        return Err(Error::GroupMismatch);
    }
    let group = src.group();
    if !map.is_bijection(group) {
        return Err(Error::NotBijective);
    }

    // image table once, so the scan is two lookups and a membership test
    let images: Vec<Element> = group.elements().map(|g| map.apply(group, g)).collect();
    let conn_src: Vec<Element> = src.conn().iter().collect();

    let per_vertex: Vec<Vec<Mismatch>> = (0..group.order())
        .into_par_iter()
        .map(|code| {
            let g = Element(code);
            let img_g = images[code as usize];
            let mut bad = Vec::new();
            for &s in &conn_src {
                let h = group.add(g, s);
                let img_h = images[h.code() as usize];
                if !dst.conn().contains(group.sub(img_h, img_g)) {
                    bad.push(Mismatch {
                        g: group.coords(g),
                        h: group.coords(h),
                    });
                }
            }
            bad
        })
        .collect();

    let mismatch_count: u64 = per_vertex.iter().map(|v| v.len() as u64).sum();
    let mismatches: Vec<Mismatch> = per_vertex
        .into_iter()
        .flatten()
        .take(MISMATCH_SAMPLE_CAP)
        .collect();
    let degrees_equal = src.degree() == dst.degree();
    Ok(IsoReport {
        checked: group.order() as u64 * src.degree() as u64,
        mismatch_count,
        mismatches,
        degree_src: src.degree(),
        degree_dst: dst.degree(),
        status: if mismatch_count == 0 && degrees_equal {
            IsoStatus::Iso
        } else {
            IsoStatus::NotIso
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conn::block_of;
    use crate::preset::paper_preset;

    #[test]
    fn identity_on_zero_block() {
        let bundle = paper_preset();
        let g = bundle.group();
        let psi = bundle.map("psi").unwrap();
        for v in 0..g.v_order() {
            let el = g.from_parts(0, v);
            assert_eq!(psi.apply(g, el), el);
        }
    }

    #[test]
    fn evaluation_examples() {
        let bundle = paper_preset();
        let g = bundle.group();
        let psi = bundle.map("psi").unwrap();
        // only the x1*x2^2 term survives at (1,1,0)
        let a = g.parse("w1+w2").unwrap();
        assert_eq!(psi.apply(g, a), g.parse("w1+w2+v1").unwrap());
        // every monomial evaluates to 1 at (1,1,1)
        let b = g.parse("w1+w2+w3").unwrap();
        assert_eq!(
            psi.apply(g, b),
            g.parse("w1+w2+w3+v1+v2+v3+v4+v5").unwrap()
        );
    }

    #[test]
    fn block_translations() {
        let bundle = paper_preset();
        let g = bundle.group();
        let psi = bundle.map("psi").unwrap();
        let t = |digits: &[i64]| {
            psi.block_translation(g, BlockIndex::from_digits(g, digits).unwrap())
                .unwrap()
        };
        assert_eq!(t(&[0, 0, 0]), g.identity());
        assert_eq!(t(&[1, 1, 0]), g.parse("v1").unwrap());
        assert_eq!(t(&[1, 1, 1]), g.parse("v1+v2+v3+v4+v5").unwrap());
    }

    #[test]
    fn blocks_are_preserved() {
        let bundle = paper_preset();
        let g = bundle.group();
        let psi = bundle.map("psi").unwrap();
        for el in g.elements() {
            assert_eq!(block_of(g, psi.apply(g, el)), block_of(g, el));
        }
    }

    #[test]
    fn bijectivity() {
        let bundle = paper_preset();
        let g = bundle.group();
        assert!(bundle.map("psi").unwrap().is_bijection(g));
        assert!(PolynomialMap::identity().is_bijection(g));
    }

    #[test]
    fn construction_validation() {
        let bundle = paper_preset();
        let g = bundle.group();
        let bad_exp = MonomialTerm {
            exponents: vec![3, 0, 0],
            target: g.parse("v1").unwrap(),
        };
        assert!(PolynomialMap::new(g, vec![bad_exp]).is_err());
        let bad_target = MonomialTerm {
            exponents: vec![1, 0, 0],
            target: g.parse("w1").unwrap(),
        };
        assert!(PolynomialMap::new(g, vec![bad_target]).is_err());
    }

    #[test]
    fn identity_map_is_a_self_isomorphism() {
        let bundle = paper_preset();
        let gamma1 = bundle.graph("gamma1").unwrap();
        let report = verify_isomorphism(&PolynomialMap::identity(), &gamma1, &gamma1).unwrap();
        assert_eq!(report.status, IsoStatus::Iso);
        assert_eq!(report.mismatch_count, 0);
    }

    #[test]
    fn isomorphism_holds_for_any_shared_zero_block_set() {
        // swapping the zero-block set in both graphs must keep the map an
        // isomorphism: it translates each block uniformly
        let bundle = paper_preset();
        let g = bundle.group_arc();
        let psi = bundle.map("psi").unwrap();
        let alt: Vec<Element> = ["v1", "v2+v3", "2v4+v5"]
            .iter()
            .map(|s| g.parse(s).unwrap())
            .collect();
        let build = |families: &str| {
            let base = bundle.union(families).unwrap();
            let zero_block: Vec<Element> = base
                .iter()
                .filter(|&el| g.w_part(el) != 0)
                .chain(alt.iter().copied())
                .collect();
            let conn = crate::conn::ConnectionSet::from_elements(&g, zero_block, true)
                .unwrap()
                .inverse_closure(&g);
            CayleyGraph::new(std::sync::Arc::clone(&g), conn, false).unwrap()
        };
        let g1 = build("s");
        let g2 = build("t");
        let report = verify_isomorphism(&psi, &g1, &g2).unwrap();
        assert_eq!(report.status, IsoStatus::Iso, "{report:?}");
    }

    #[test]
    fn mutual_counts_transport_through_the_isomorphism() {
        let bundle = paper_preset();
        let g = bundle.group();
        let psi = bundle.map("psi").unwrap();
        let gamma1 = bundle.graph("gamma1").unwrap();
        let gamma2 = bundle.graph("gamma2").unwrap();
        // a deterministic sample of vertex pairs
        for (a, b) in [(3u32, 6550u32), (17, 42), (100, 5000), (2187, 4374), (1, 6560)] {
            let (a, b) = (Element(a), Element(b));
            assert_eq!(
                gamma1.mutual_neighbour_count(a, b),
                gamma2.mutual_neighbour_count(psi.apply(g, a), psi.apply(g, b))
            );
        }
    }
}
