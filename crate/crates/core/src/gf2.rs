//! Dense linear algebra over the field with two elements.
//!
//! Vectors and matrices are bit-packed into `u64` words; addition is XOR and
//! the scalar product is an AND followed by a popcount parity. Row reduction
//! always picks the lowest-index pivot first, so echelon forms, ranks and
//! kernel bases are reproducible across runs.

use std::fmt;

const WORD_BITS: usize = 64;

fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// A vector over GF(2). Immutable length; every element is its own negative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; words_for(len)],
        }
    }

    /// The standard basis vector with a single 1 at `bit`.
    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn from_bit_str(s: &str) -> Option<Self> {
        let mut v = Self::zeros(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.set(i, true),
                _ => return None,
            }
        }
        Some(v)
    }

    /// Vector with 1s exactly at the given indices.
    pub fn from_support(len: usize, support: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in support {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        (self.words[i / WORD_BITS] >> (i % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(
            i < self.len,
            "bit index {i} out of range (len {})",
            self.len
        );
        self.words[i / WORD_BITS] ^= 1u64 << (i % WORD_BITS);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Number of 1s.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Coordinatewise sum (XOR). Lengths must agree.
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) addition");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut v = self.clone();
        v.xor_assign(other);
        v
    }

    /// Standard scalar product: parity of the common support.
    pub fn dot(&self, other: &Self) -> bool {
        assert_eq!(self.len, other.len, "length mismatch in GF(2) dot product");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones % 2 == 1
    }

    /// Indices of the 1 entries, ascending.
    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn lowest_one(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(w * WORD_BITS + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub(crate) fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", u8::from(self.get(i)))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVec({self})")
    }
}

/// A dense matrix over GF(2), stored row-major with bit-packed rows.
///
/// Matrices act on column vectors: `(M * v)[i] = <row_i, v>`.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Self {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix whose rows are the given vectors (all of one length).
    pub fn from_rows(rows: &[BitVec]) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, v) in rows.iter().enumerate() {
            assert_eq!(v.len(), cols, "row length mismatch");
            m.row_words_mut(i).copy_from_slice(v.words());
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[BitVec]) -> Self {
        let rows = cols.first().map_or(0, BitVec::len);
        let mut m = Self::zeros(rows, cols.len());
        for (j, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for i in v.iter_ones() {
                m.set(i, j, true);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        (self.data[r * self.stride + c / WORD_BITS] >> (c % WORD_BITS)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(
            r < self.rows && c < self.cols,
            "index ({r},{c}) out of range"
        );
        let mask = 1u64 << (c % WORD_BITS);
        let word = &mut self.data[r * self.stride + c / WORD_BITS];
        if value {
            *word |= mask;
        } else {
            *word &= !mask;
        }
    }

    fn row_words(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_words_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec {
            len: self.cols,
            words: self.row_words(r).to_vec(),
        }
    }

    pub fn column(&self, c: usize) -> BitVec {
        let mut v = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.get(r, c) {
                v.set(r, true);
            }
        }
        v
    }

    pub fn set_row(&mut self, r: usize, v: &BitVec) {
        assert_eq!(v.len(), self.cols, "row length mismatch");
        self.row_words_mut(r).copy_from_slice(v.words());
    }

    fn xor_rows(&mut self, target: usize, source: usize) {
        debug_assert_ne!(target, source);
        let stride = self.stride;
        if target < source {
            let (head, tail) = self.data.split_at_mut(source * stride);
            let dst = &mut head[target * stride..(target + 1) * stride];
            for (d, s) in dst.iter_mut().zip(&tail[..stride]) {
                *d ^= s;
            }
        } else {
            let (head, tail) = self.data.split_at_mut(target * stride);
            let src = &head[source * stride..(source + 1) * stride];
            for (d, s) in tail[..stride].iter_mut().zip(src) {
                *d ^= s;
            }
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for w in 0..self.stride {
            self.data.swap(a * self.stride + w, b * self.stride + w);
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, v: &BitVec) -> BitVec {
        assert_eq!(self.cols, v.len(), "dimension mismatch in M*v");
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            let ones: u32 = self
                .row_words(r)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum();
            if ones % 2 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    /// Matrix product; `self` has as many columns as `rhs` has rows.
    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in M*N");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    for w in 0..out.stride {
                        out.data[r * out.stride + w] ^= rhs.data[k * rhs.stride + w];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    out.set(c, r, true);
                }
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Self::identity(self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Reduces to reduced row echelon form in place; returns the pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            // lowest-index pivot row
            let pivot_row = (row..self.rows).find(|&r| self.get(r, col));
            let Some(p) = pivot_row else { continue };
            self.swap_rows(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    self.xor_rows(r, row);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// A basis of `{ v : M v = 0 }`, one vector per free column, ascending.
    pub fn kernel_basis(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let pivot_set: Vec<Option<usize>> = {
            let mut s = vec![None; self.cols];
            for (r, &c) in pivots.iter().enumerate() {
                s[c] = Some(r);
            }
            s
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut v = BitVec::unit(self.cols, free);
            for (c, slot) in pivot_set.iter().enumerate() {
                if let Some(r) = slot {
                    if m.get(*r, free) {
                        v.set(c, true);
                    }
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `M x = b`; returns one solution (free variables zero) if consistent.
    pub fn solve(&self, b: &BitVec) -> Option<BitVec> {
        assert_eq!(self.rows, b.len(), "dimension mismatch in solve");
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for w in 0..self.stride {
                aug.data[r * aug.stride + w] = self.data[r * self.stride + w];
            }
            if b.get(r) {
                aug.set(r, self.cols, true);
            }
        }
        let pivots = aug.row_reduce();
        if pivots.last() == Some(&self.cols) {
            return None; // inconsistent row 0 .. 0 | 1
        }
        let mut x = BitVec::zeros(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            if aug.get(r, self.cols) {
                x.set(c, true);
            }
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                if self.get(r, c) {
                    aug.set(r, c, true);
                }
            }
            aug.set(r, n + r, true);
        }
        let pivots = aug.row_reduce();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                if aug.get(r, n + c) {
                    inv.set(r, c, true);
                }
            }
        }
        Some(inv)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {}", self.row(r))?;
        }
        write!(f, "]")
    }
}

/// Expresses `target` in the span of `generators`, if possible.
///
/// Returns the coefficient vector `c` with `sum c_i * generators[i] = target`,
/// or `None` when `target` is outside the span. All vectors must share one
/// length.
pub fn solve_in_span(target: &BitVec, generators: &[BitVec]) -> Option<BitVec> {
    for g in generators {
        assert_eq!(g.len(), target.len(), "length mismatch in solve_in_span");
    }
    if generators.is_empty() {
        return target.is_zero().then(|| BitVec::zeros(0));
    }
    BitMatrix::from_columns(generators).solve(target)
}

/// Rank of the span of a set of vectors.
pub fn span_rank(vectors: &[BitVec]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    BitMatrix::from_rows(vectors).rank()
}

/// Incremental echelon basis: feeds vectors one by one, tracking the rank.
///
/// Used where a large stream of vectors is reduced against the basis
/// collected so far and only the independent ones are kept.
pub struct SpanBuilder {
    len: usize,
    /// Echelon rows, each with a distinct leading 1, sorted by pivot.
    rows: Vec<(usize, BitVec)>,
}

impl SpanBuilder {
    pub fn new(len: usize) -> Self {
        Self {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.len, "length mismatch in SpanBuilder");
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        match v.lowest_one() {
            None => false,
            Some(pivot) => {
                let pos = self.rows.partition_point(|(p, _)| *p < pivot);
                self.rows.insert(pos, (pivot, v));
                true
            }
        }
    }

    /// True if `v` already lies in the span.
    pub fn contains(&self, v: &BitVec) -> bool {
        let mut v = v.clone();
        for (pivot, row) in &self.rows {
            if v.get(*pivot) {
                v.xor_assign(row);
            }
        }
        v.is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Oracle: rank by enumerating all row combinations and counting the
    /// distinct sums (the span size is 2^rank).
    fn rank_by_enumeration(rows: &[BitVec]) -> usize {
        use std::collections::HashSet;
        let len = rows[0].len();
        let mut span = HashSet::new();
        for mask in 0..(1u32 << rows.len()) {
            let mut acc = BitVec::zeros(len);
            for (i, row) in rows.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    acc.xor_assign(row);
                }
            }
            span.insert(acc.to_string());
        }
        span.len().ilog2() as usize
    }

    fn bv(s: &str) -> BitVec {
        BitVec::from_bit_str(s).unwrap()
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(BitMatrix::identity(5).rank(), 5);
        assert_eq!(BitMatrix::zeros(4, 7).rank(), 0);
    }

    #[test]
    fn rank_dependent_rows() {
        // third row is the sum of the first two
        let rows = vec![bv("1100"), bv("0110"), bv("1010")];
        assert_eq!(rank_by_enumeration(&rows), 2);
        assert_eq!(BitMatrix::from_rows(&rows).rank(), 2);
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(BitMatrix::identity(3).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_zero_map_is_everything() {
        let basis = BitMatrix::zeros(2, 3).kernel_basis();
        assert_eq!(basis.len(), 3);
        assert_eq!(span_rank(&basis), 3);
    }

    #[test]
    fn kernel_of_triangle_boundary() {
        // boundary matrix of a 3-cycle: vertices x edges
        let m = BitMatrix::from_rows(&[bv("110"), bv("011"), bv("101")]);
        // oracle: brute-force over all 8 chains
        let mut expected = Vec::new();
        for mask in 0..8u8 {
            let chain = BitVec::from_bits(&[mask & 1 != 0, mask & 2 != 0, mask & 4 != 0]);
            if m.mul_vec(&chain).is_zero() && !chain.is_zero() {
                expected.push(chain);
            }
        }
        assert_eq!(expected, vec![bv("111")]);
        assert_eq!(m.kernel_basis(), vec![bv("111")]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = BitMatrix::from_rows(&[bv("110101"), bv("011011"), bv("101110")]);
        let basis = m.kernel_basis();
        assert_eq!(basis.len(), 6 - m.rank());
        for v in &basis {
            assert!(m.mul_vec(v).is_zero());
        }
        assert_eq!(span_rank(&basis), basis.len());
    }

    #[test]
    fn solve_in_span_zero_target() {
        let gens = vec![bv("1100"), bv("0011")];
        let c = solve_in_span(&bv("0000"), &gens).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn solve_in_span_reconstructs() {
        let gens = vec![bv("1100"), bv("0110"), bv("0011")];
        let target = gens[0].xor(&gens[2]);
        let c = solve_in_span(&target, &gens).unwrap();
        assert_eq!(c.to_string(), "101");
        let mut acc = BitVec::zeros(4);
        for i in c.iter_ones() {
            acc.xor_assign(&gens[i]);
        }
        assert_eq!(acc, target);
    }

    #[test]
    fn solve_in_span_absent() {
        // oracle: the span of {1100, 0011} is {0000, 1100, 0011, 1111}
        let gens = vec![bv("1100"), bv("0011")];
        let mut span = Vec::new();
        for mask in 0..4u8 {
            let mut acc = BitVec::zeros(4);
            if mask & 1 != 0 {
                acc.xor_assign(&gens[0]);
            }
            if mask & 2 != 0 {
                acc.xor_assign(&gens[1]);
            }
            span.push(acc.to_string());
        }
        assert!(!span.contains(&"1000".to_string()));
        assert!(solve_in_span(&bv("1000"), &gens).is_none());
    }

    #[test]
    #[should_panic(expected = "length mismatch")]
    fn solve_in_span_length_mismatch_panics() {
        solve_in_span(&bv("101"), &[bv("1100")]);
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_rows(&[bv("110"), bv("011"), bv("001")]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        let singular = BitMatrix::from_rows(&[bv("110"), bv("011"), bv("101")]);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn span_builder_matches_rank() {
        let rows = vec![bv("1100"), bv("0110"), bv("1010"), bv("0001")];
        let mut sb = SpanBuilder::new(4);
        let mut kept = 0;
        for r in &rows {
            if sb.insert(r) {
                kept += 1;
            }
        }
        assert_eq!(kept, 3);
        assert_eq!(sb.rank(), BitMatrix::from_rows(&rows).rank());
        assert!(sb.contains(&bv("1010")));
        assert!(!sb.contains(&bv("1000")));
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_vec(len: usize) -> impl Strategy<Value = BitVec> {
            proptest::collection::vec(any::<bool>(), len).prop_map(|bits| BitVec::from_bits(&bits))
        }

        fn arb_matrix(rows: usize, cols: usize) -> impl Strategy<Value = BitMatrix> {
            proptest::collection::vec(arb_vec(cols), rows)
                .prop_map(|rows| BitMatrix::from_rows(&rows))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(1000))]

            #[test]
            fn mul_vec_is_linear(m in arb_matrix(9, 13), v in arb_vec(13), w in arb_vec(13)) {
                let lhs = m.mul_vec(&v.xor(&w));
                let rhs = m.mul_vec(&v).xor(&m.mul_vec(&w));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn rank_equals_transpose_rank(m in arb_matrix(7, 11)) {
                prop_assert_eq!(m.rank(), m.transpose().rank());
            }

            #[test]
            fn rank_nullity(m in arb_matrix(8, 12)) {
                prop_assert_eq!(m.kernel_basis().len() + m.rank(), m.cols());
            }

            #[test]
            fn mul_is_associative(
                a in arb_matrix(5, 6),
                b in arb_matrix(6, 7),
                c in arb_matrix(7, 4),
            ) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }
        }
    }
}
