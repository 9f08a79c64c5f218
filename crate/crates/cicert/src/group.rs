//! Arithmetic and enumeration for Z_p^n.
//!
//! Elements are packed base-p codes: an element with coordinates
//! `(c_0, ..., c_{n-1})` has code `sum c_i * p^(n-1-i)`, so the numeric order
//! of codes is the lexicographic order of coordinate vectors, and the leading
//! `w_count` coordinates (the block of an element) are a single division away.
//! All arithmetic goes through a [`Group`], which owns the modulus, the
//! coordinate layout and the lookup tables used by the counting kernels.
//! Elements are plain codes and must stay with the group that minted them;
//! debug builds assert containment on every operation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest group order we are willing to enumerate (bitsets over the whole
/// group stay below ~8 MiB).
pub const MAX_ORDER: u64 = 1 << 26;

/// Half-order threshold below which addition/negation lookup tables are built.
const TABLE_LIMIT: u64 = 1024;

/// An element of Z_p^n, packed as a base-p code in `[0, p^n)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Element(pub(crate) u32);

impl Element {
    /// The identity (zero vector) of every group.
    pub const IDENTITY: Element = Element(0);

    /// The packed base-p code of this element.
    pub fn code(self) -> u32 {
        self.0
    }
}

/// Serializable description of a group: modulus, rank, coordinate split and
/// generator names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSpec {
    pub p: u8,
    pub n: u8,
    pub w_count: u8,
    pub v_count: u8,
    pub names: Vec<String>,
}

impl GroupSpec {
    pub fn new(p: u8, w_names: &[&str], v_names: &[&str]) -> Self {
        let names: Vec<String> = w_names
            .iter()
            .chain(v_names.iter())
            .map(|s| s.to_string())
            .collect();
        GroupSpec {
            p,
            n: names.len() as u8,
            w_count: w_names.len() as u8,
            v_count: v_names.len() as u8,
            names,
        }
    }
}

fn is_prime(p: u8) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u16;
    while d * d <= p as u16 {
        if p as u16 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "e"
}

/// A validated Z_p^n with precomputed arithmetic tables.
pub struct Group {
    spec: GroupSpec,
    order: u32,
    /// weight of coordinate i in the packed code (p^(n-1-i))
    weights: Vec<u32>,
    w_order: u32,
    v_order: u32,
    add_w: Option<Vec<u32>>,
    add_v: Option<Vec<u32>>,
    neg_w: Option<Vec<u32>>,
    neg_v: Option<Vec<u32>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl std::fmt::Debug for Group {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Group(p={}, n={})", self.spec.p, self.spec.n)
    }
}

fn half_tables(p: u32, digits: u8) -> (Option<Vec<u32>>, Option<Vec<u32>>, u32) {
    let order = p.pow(digits as u32);
    if order as u64 > TABLE_LIMIT {
        return (None, None, order);
    }
    let unpack = |code: u32| -> Vec<u32> {
        let mut out = vec![0u32; digits as usize];
        let mut c = code;
        for i in (0..digits as usize).rev() {
            out[i] = c % p;
            c /= p;
        }
        out
    };
    let pack = |ds: &[u32]| -> u32 { ds.iter().fold(0, |acc, &d| acc * p + d) };
    let mut add = vec![0u32; (order * order) as usize];
    let mut neg = vec![0u32; order as usize];
    for a in 0..order {
        let da = unpack(a);
        let nd: Vec<u32> = da.iter().map(|&d| (p - d) % p).collect();
        neg[a as usize] = pack(&nd);
        for b in 0..order {
            let db = unpack(b);
            let ds: Vec<u32> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
            add[(a * order + b) as usize] = pack(&ds);
        }
    }
    (Some(add), Some(neg), order)
}

impl Group {
    pub fn new(spec: GroupSpec) -> Result<Self> {
        if !is_prime(spec.p) {
            return Err(Error::InvalidSpec(format!("p = {} is not prime", spec.p)));
        }
        if spec.n == 0 || spec.n != spec.w_count + spec.v_count {
            return Err(Error::InvalidSpec(format!(
                "rank {} must be w_count {} + v_count {} and nonzero",
                spec.n, spec.w_count, spec.v_count
            )));
        }
        if spec.names.len() != spec.n as usize {
            return Err(Error::InvalidSpec(format!(
                "expected {} generator names, got {}",
                spec.n,
                spec.names.len()
            )));
        }
        for (i, name) in spec.names.iter().enumerate() {
            if !valid_name(name) {
                return Err(Error::InvalidSpec(format!("bad generator name {name:?}")));
            }
            if spec.names[..i].contains(name) {
                return Err(Error::InvalidSpec(format!("duplicate generator {name:?}")));
            }
        }
        let order128 = (spec.p as u128).pow(spec.n as u32);
        if order128 > MAX_ORDER as u128 {
            return Err(Error::Capacity {
                order: order128,
                cap: MAX_ORDER,
            });
        }
        let p = spec.p as u32;
        let order = p.pow(spec.n as u32);
        let weights = (0..spec.n).map(|i| p.pow((spec.n - 1 - i) as u32)).collect();
        let (add_w, neg_w, w_order) = half_tables(p, spec.w_count);
        let (add_v, neg_v, v_order) = half_tables(p, spec.v_count);
        Ok(Group {
            spec,
            order,
            weights,
            w_order,
            v_order,
            add_w,
            add_v,
            neg_w,
            neg_v,
        })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn p(&self) -> u8 {
        self.spec.p
    }

    pub fn rank(&self) -> usize {
        self.spec.n as usize
    }

    pub fn w_count(&self) -> usize {
        self.spec.w_count as usize
    }

    pub fn v_count(&self) -> usize {
        self.spec.v_count as usize
    }

    /// Number of elements, p^n.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Number of blocks, p^w_count.
    pub fn w_order(&self) -> u32 {
        self.w_order
    }

    /// Size of each block, p^v_count.
    pub fn v_order(&self) -> u32 {
        self.v_order
    }

    pub fn names(&self) -> &[String] {
        &self.spec.names
    }

    pub fn contains(&self, el: Element) -> bool {
        el.0 < self.order
    }

    pub fn identity(&self) -> Element {
        Element(0)
    }

    /// The i-th generator as an element (unit coordinate vector).
    pub fn generator(&self, i: usize) -> Element {
        Element(self.weights[i])
    }

    /// All p^n elements exactly once, in lexicographic coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.order).map(Element)
    }

    pub fn coords(&self, el: Element) -> Vec<u8> {
        debug_assert!(self.contains(el));
        let p = self.spec.p as u32;
        let mut out = vec![0u8; self.rank()];
        let mut c = el.0;
        for i in (0..self.rank()).rev() {
            out[i] = (c % p) as u8;
            c /= p;
        }
        out
    }

    /// Packs a coordinate vector; coordinates are reduced mod p, so signed
    /// inputs like -1 are accepted.
    pub fn element_from_coords<I>(&self, coords: &[I]) -> Result<Element>
    where
        I: Copy + Into<i64>,
    {
        if coords.len() != self.rank() {
            return Err(Error::Dimension {
                expected: self.rank(),
                got: coords.len(),
            });
        }
        let p = self.spec.p as i64;
        let mut code = 0u32;
        for &c in coords {
            let r = (Into::<i64>::into(c) % p + p) % p;
            code = code * p as u32 + r as u32;
        }
        Ok(Element(code))
    }

    #[inline]
    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let p = self.spec.p as u32;
        let mut out = 0;
        for &w in &self.weights {
            out += (a / w % p + b / w % p) % p * w;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Element, b: Element) -> Element {
        debug_assert!(self.contains(a) && self.contains(b));
        match (&self.add_w, &self.add_v) {
            (Some(aw), Some(av)) => {
                let v = self.v_order;
                let w = aw[((a.0 / v) * self.w_order + b.0 / v) as usize];
                let lo = av[((a.0 % v) * v + b.0 % v) as usize];
                Element(w * v + lo)
            }
            _ => Element(self.digit_add(a.0, b.0)),
        }
    }

    #[inline]
    pub fn neg(&self, a: Element) -> Element {
        debug_assert!(self.contains(a));
        match (&self.neg_w, &self.neg_v) {
            (Some(nw), Some(nv)) => {
                let v = self.v_order;
                Element(nw[(a.0 / v) as usize] * v + nv[(a.0 % v) as usize])
            }
            _ => {
                let p = self.spec.p as u32;
                let mut out = 0;
                for &w in &self.weights {
                    out += (p - a.0 / w % p) % p * w;
                }
                Element(out)
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Element, b: Element) -> Element {
        self.add(a, self.neg(b))
    }

    /// c * a with c reduced mod p.
    pub fn scalar_mul(&self, c: u8, a: Element) -> Element {
        let mut out = Element(0);
        for _ in 0..(c % self.spec.p) {
            out = self.add(out, a);
        }
        out
    }

    /// The leading w-part of an element's code (its block).
    #[inline]
    pub fn w_part(&self, el: Element) -> u32 {
        el.0 / self.v_order
    }

    /// The trailing v-part of an element's code.
    #[inline]
    pub fn v_part(&self, el: Element) -> u32 {
        el.0 % self.v_order
    }

    #[inline]
    pub fn from_parts(&self, w_code: u32, v_code: u32) -> Element {
        debug_assert!(w_code < self.w_order && v_code < self.v_order);
        Element(w_code * self.v_order + v_code)
    }

    /// Linear combination of generators from name/coefficient pairs.
    pub fn combination(&self, terms: &[(i64, &str)]) -> Result<Element> {
        let mut out = self.identity();
        for &(c, name) in terms {
            let idx = self
                .names()
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Parse {
                    input: name.to_string(),
                    reason: "unknown generator".into(),
                })?;
            let p = self.spec.p as i64;
            let r = ((c % p + p) % p) as u8;
            out = self.add(out, self.scalar_mul(r, self.generator(idx)));
        }
        Ok(out)
    }

    /// Parses a linear-combination expression such as `v2+v3-v4+v5`,
    /// `2w1+w2`, `-v1-v5` or `e`. Whitespace-insensitive; coefficients are
    /// reduced mod p.
    pub fn parse(&self, input: &str) -> Result<Element> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |reason: &str| Error::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        if compact.is_empty() {
            return Err(err("empty expression"));
        }
        if compact == "e" {
            return Ok(self.identity());
        }
        let mut out = self.identity();
        let bytes = compact.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let mut sign = 1i64;
            match bytes[i] {
                b'+' => i += 1,
                b'-' => {
                    sign = -1;
                    i += 1;
                }
                _ if i > 0 => return Err(err("terms must be separated by + or -")),
                _ => {}
            }
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let coeff: i64 = if i > start {
                compact[start..i]
                    .parse()
                    .map_err(|_| err("bad coefficient"))?
            } else {
                1
            };
            if i < bytes.len() && bytes[i] == b'*' {
                i += 1;
            }
            let name_start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            if name_start == i {
                return Err(err("expected a generator name"));
            }
            let name = &compact[name_start..i];
            if name == "e" {
                continue;
            }
            out = self.add(out, self.combination(&[(sign * coeff, name)])?);
        }
        Ok(out)
    }

    /// Canonical human-readable form: coefficients in the symmetric range, so
    /// 2 prints as a subtracted generator when p = 3 (e.g. `-v4+v5`).
    pub fn format(&self, el: Element) -> String {
        let p = self.spec.p as i64;
        let coords = self.coords(el);
        let mut out = String::new();
        for (i, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let signed = if (c as i64) <= p / 2 {
                c as i64
            } else {
                c as i64 - p
            };
            if signed >= 0 && !out.is_empty() {
                out.push('+');
            }
            if signed == -1 {
                out.push('-');
            } else if signed != 1 {
                out.push_str(&signed.to_string());
            }
            out.push_str(&self.names()[i]);
        }
        if out.is_empty() {
            out.push('e');
        }
        out
    }
}

/// An n x k matrix over Z_p mapping parameter vectors to group elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    /// row-major entries in [0, p)
    entries: Vec<u8>,
}

impl LinearMap {
    pub fn new(group: &Group, rows_of_entries: Vec<Vec<i64>>) -> Result<Self> {
        let rows = rows_of_entries.len();
        if rows != group.rank() {
            return Err(Error::Dimension {
                expected: group.rank(),
                got: rows,
            });
        }
        let cols = rows_of_entries.first().map_or(0, |r| r.len());
        let p = group.p() as i64;
        let mut entries = Vec::with_capacity(rows * cols);
        for row in &rows_of_entries {
            if row.len() != cols {
                return Err(Error::Dimension {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row.iter().map(|&x| ((x % p + p) % p) as u8));
        }
        Ok(LinearMap {
            rows,
            cols,
            entries,
        })
    }

    /// Builds the matrix whose j-th column is the coordinate vector of
    /// `columns[j]`.
    pub fn from_columns(group: &Group, columns: &[Element]) -> Self {
        let rows = group.rank();
        let cols = columns.len();
        let mut entries = vec![0u8; rows * cols];
        for (j, &col) in columns.iter().enumerate() {
            for (i, c) in group.coords(col).into_iter().enumerate() {
                entries[i * cols + j] = c;
            }
        }
        LinearMap {
            rows,
            cols,
            entries,
        }
    }

    pub fn identity(group: &Group) -> Self {
        let n = group.rank();
        let mut entries = vec![0u8; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        LinearMap {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.cols + j]
    }

    /// M . params mod p, packed as an element.
    pub fn apply(&self, group: &Group, params: &[u8]) -> Result<Element> {
        if params.len() != self.cols {
            return Err(Error::Dimension {
                expected: self.cols,
                got: params.len(),
            });
        }
        let p = group.p() as u32;
        let mut coords = vec![0u8; self.rows];
        for i in 0..self.rows {
            let mut acc = 0u32;
            for (j, &q) in params.iter().enumerate() {
                acc += self.entries[i * self.cols + j] as u32 * q as u32;
            }
            coords[i] = (acc % p) as u8;
        }
        group.element_from_coords(&coords)
    }

    /// Matrix-vector action on a group element (columns are generator images).
    pub fn apply_to_element(&self, group: &Group, el: Element) -> Element {
        let coords = group.coords(el);
        self.apply(group, &coords).expect("square map; same rank")
    }

    /// Matrix product self * rhs mod p.
    pub fn compose(&self, group: &Group, rhs: &LinearMap) -> Result<LinearMap> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension {
                expected: self.cols,
                got: rhs.rows,
            });
        }
        let p = group.p() as u32;
        let mut entries = vec![0u8; self.rows * rhs.cols];
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = 0u32;
                for k in 0..self.cols {
                    acc += self.entries[i * self.cols + k] as u32 * rhs.entries[k * rhs.cols + j] as u32;
                }
                entries[i * rhs.cols + j] = (acc % p) as u8;
            }
        }
        Ok(LinearMap {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        })
    }

    /// Rank over Z_p by Gaussian elimination.
    pub fn rank_mod_p(&self, p: u8) -> usize {
        let p = p as i64;
        let mut m: Vec<Vec<i64>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j) as i64).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let pivot = (rank..self.rows).find(|&r| m[r][col] % p != 0);
            let Some(pr) = pivot else { continue };
            m.swap(rank, pr);
            let inv = mod_inverse(m[rank][col], p);
            for j in 0..self.cols {
                m[rank][j] = m[rank][j] * inv % p;
            }
            for r in 0..self.rows {
                if r != rank && m[r][col] % p != 0 {
                    let f = m[r][col];
                    for j in 0..self.cols {
                        m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p * p) % p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self, p: u8) -> bool {
        self.rows == self.cols && self.rank_mod_p(p) == self.rows
    }
}

fn mod_inverse(a: i64, p: i64) -> i64 {
    // p is prime; Fermat
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1i64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn paper_group() -> Group {
        Group::new(GroupSpec::new(
            3,
            &["w1", "w2", "w3"],
            &["v1", "v2", "v3", "v4", "v5"],
        ))
        .unwrap()
    }

    fn tiny_group() -> Group {
        Group::new(GroupSpec::new(3, &["a"], &["b", "c"])).unwrap()
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let g = Group::new(GroupSpec::new(3, &["x"], &[])).unwrap();
        let all: Vec<Vec<u8>> = g.elements().map(|e| g.coords(e)).collect();
        assert_eq!(all, vec![vec![0], vec![1], vec![2]]);

        let g = Group::new(GroupSpec::new(2, &["x"], &["y", "z"])).unwrap();
        assert_eq!(g.elements().count(), 8);
        let codes: Vec<u32> = g.elements().map(|e| e.code()).collect();
        let mut sorted = codes.clone();
        sorted.sort_unstable();
        assert_eq!(codes, sorted);

        assert_eq!(paper_group().order(), 6561);
    }

    #[test]
    fn capacity_is_enforced() {
        let spec = GroupSpec {
            p: 3,
            n: 32,
            w_count: 16,
            v_count: 16,
            names: (0..32).map(|i| format!("g{i}")).collect(),
        };
        assert!(matches!(Group::new(spec), Err(Error::Capacity { .. })));
    }

    #[test]
    fn spec_validation_rejects_bad_input() {
        assert!(Group::new(GroupSpec::new(4, &["a"], &[])).is_err());
        assert!(Group::new(GroupSpec::new(3, &["a"], &["a"])).is_err());
        assert!(Group::new(GroupSpec::new(3, &["e"], &[])).is_err());
        let mut spec = GroupSpec::new(3, &["a"], &["b"]);
        spec.v_count = 3;
        assert!(Group::new(spec).is_err());
    }

    #[test]
    fn identity_and_wraparound() {
        let g = paper_group();
        let x = g.parse("w1+2w2+v4").unwrap();
        assert_eq!(g.add(g.identity(), x), x);
        let a = g.element_from_coords(&[1i64, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let b = g.element_from_coords(&[2i64, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(g.add(a, b), g.identity());
        // basis-vector sum used by the count table
        let sum = g.add(g.parse("v4").unwrap(), g.parse("v5").unwrap());
        assert_eq!(sum, g.parse("v4+v5").unwrap());
    }

    #[test]
    fn negation_examples() {
        let g = paper_group();
        assert_eq!(g.neg(g.identity()), g.identity());
        let x = g.element_from_coords(&[1i64, 2, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(
            g.neg(x),
            g.element_from_coords(&[2i64, 1, 0, 0, 0, 0, 0, 0]).unwrap()
        );
        assert_eq!(g.neg(g.parse("v1-v5").unwrap()), g.parse("v5-v1").unwrap());
    }

    #[test]
    fn coords_round_trip() {
        let g = tiny_group();
        for el in g.elements() {
            assert_eq!(g.element_from_coords(&g.coords(el)).unwrap(), el);
        }
    }

    #[test]
    fn parse_and_format() {
        let g = paper_group();
        for expr in ["v2+v3-v4+v5", "-v1-v5", "e", "2w1+w2", "-v4+v5"] {
            let el = g.parse(expr).unwrap();
            assert_eq!(g.format(el), expr, "canonical form should round-trip");
        }
        assert_eq!(g.parse(" v1 + 2 * v2 ").unwrap(), g.parse("v1-v2").unwrap());
        assert_eq!(g.parse("3v1").unwrap(), g.identity());
        assert!(g.parse("q7").is_err());
        assert!(g.parse("v1++v2").is_err());
        assert!(g.parse("").is_err());
    }

    #[test]
    fn apply_linear_examples() {
        let g = paper_group();
        // zero map sends anything to the identity
        let zero = LinearMap::new(&g, vec![vec![0; 2]; 8]).unwrap();
        assert_eq!(zero.apply(&g, &[1, 2]).unwrap(), g.identity());
        // identity matrix reproduces its parameter vector
        let id = LinearMap::identity(&g);
        let q = [0u8, 1, 2, 0, 1, 2, 0, 1];
        assert_eq!(
            id.apply(&g, &q).unwrap(),
            g.element_from_coords(&q.map(|x| x as i64)).unwrap()
        );
        // the S_{1,1,0} parameter map at (a,b,c,d) = (0,1,0,0): coefficient b
        // drives both v2 and v4
        let cols = [
            g.parse("v1").unwrap(),
            g.parse("v2+v4").unwrap(),
            g.parse("v3").unwrap(),
            g.parse("v5").unwrap(),
        ];
        let m = LinearMap::from_columns(&g, &cols);
        let offset = g.parse("w1+w2").unwrap();
        let got = g.add(offset, m.apply(&g, &[0, 1, 0, 0]).unwrap());
        assert_eq!(got, g.parse("w1+w2+v2+v4").unwrap());
        assert!(m.apply(&g, &[1, 2, 3]).is_err());
    }

    #[test]
    fn rank_and_inverse() {
        let g = tiny_group();
        assert!(LinearMap::identity(&g).is_invertible(3));
        let singular = LinearMap::new(
            &g,
            vec![vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 0]],
        )
        .unwrap();
        assert!(!singular.is_invertible(3));
        assert_eq!(singular.rank_mod_p(3), 2);
    }

    proptest! {
        #[test]
        fn group_axioms(a in 0u32..6561, b in 0u32..6561, c in 0u32..6561) {
            let g = paper_group();
            let (a, b, c) = (Element(a), Element(b), Element(c));
            prop_assert_eq!(g.add(g.add(a, b), c), g.add(a, g.add(b, c)));
            prop_assert_eq!(g.add(a, b), g.add(b, a));
            prop_assert_eq!(g.add(a, g.neg(a)), g.identity());
        }

        #[test]
        fn linear_map_is_additive(q1 in proptest::collection::vec(0u8..3, 4),
                                  q2 in proptest::collection::vec(0u8..3, 4)) {
            let g = paper_group();
            let cols = [
                g.parse("v1-v5").unwrap(),
                g.parse("v2-v5").unwrap(),
                g.parse("v3+v5").unwrap(),
                g.parse("v4+v5").unwrap(),
            ];
            let m = LinearMap::from_columns(&g, &cols);
            let sum: Vec<u8> = q1.iter().zip(&q2).map(|(x, y)| (x + y) % 3).collect();
            prop_assert_eq!(
                m.apply(&g, &sum).unwrap(),
                g.add(m.apply(&g, &q1).unwrap(), m.apply(&g, &q2).unwrap())
            );
        }

        #[test]
        fn parse_format_round_trip(code in 0u32..6561) {
            let g = paper_group();
            let el = Element(code);
            prop_assert_eq!(g.parse(&g.format(el)).unwrap(), el);
        }
    }

    #[test]
    fn fallback_arithmetic_matches_tables() {
        // a group big enough that no v-table is built
        let spec = GroupSpec {
            p: 3,
            n: 14,
            w_count: 3,
            v_count: 11,
            names: (0..14).map(|i| format!("g{i}")).collect(),
        };
        let big = Group::new(spec).unwrap();
        assert!(big.add_v.is_none());
        let a = big.element_from_coords(&vec![2i64; 14]).unwrap();
        let b = big.element_from_coords(&vec![2i64; 14]).unwrap();
        let sum = big.add(a, b);
        assert_eq!(big.coords(sum), vec![1u8; 14]);
        assert_eq!(big.neg(sum), a);
    }
}
