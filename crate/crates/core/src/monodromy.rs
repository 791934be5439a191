//! The monodromy group on the edge space and its block structure on P[2].
//!
//! Each edge e of the graph carries an involution sigma_e(x) = x + <x,e> e
//! of the chain space C1, together with the transposition of the endpoints
//! of e on the vertex space. The group they generate fixes the relation
//! chains, so it acts on the quotient P[2]; in an adapted basis that action
//! is upper block triangular with an identity block on the 2g coordinates
//! coming from cycles, a permutation-module block on the remaining 4g-6, and
//! an A block whose span over the kernel N has full rank 2g(4g-6).

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::error::{Error, Result};
use crate::gf2::{solve_in_span, BitMatrix, BitVec, SpanBuilder};
use crate::graph::SpectralGraph;
use crate::perm::{Perm, StabilizerChain};
use crate::report::{CheckResult, ValidationReport};

/// A monodromy element: matrix on C1, vertex permutation, generator word.
///
/// Words list generator edge ids with the rightmost factor acting first;
/// matrices act on column vectors, so the matrix of a word is the product of
/// the generator matrices in word order.
#[derive(Clone, Debug)]
pub struct GroupElement {
    pub matrix: BitMatrix,
    pub perm: Perm,
    pub word: Vec<usize>,
}

impl GroupElement {
    pub fn identity(graph: &SpectralGraph) -> Self {
        Self {
            matrix: BitMatrix::identity(graph.edges().len()),
            perm: Perm::identity(graph.vertex_count()),
            word: Vec::new(),
        }
    }

    /// Composition with `other` acting first.
    pub fn compose(&self, other: &Self) -> Self {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Self {
            matrix: self.matrix.mul(&other.matrix),
            perm: self.perm.compose(&other.perm),
            word,
        }
    }

    /// Word rendered with edge labels, for witnesses.
    pub fn word_labels(&self, graph: &SpectralGraph) -> String {
        self.word
            .iter()
            .map(|&id| graph.edges()[id].label.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// The generator labelled by an edge: x -> x + <x,e> e on chains, and the
/// transposition of the endpoints of e on vertices.
pub fn generator(graph: &SpectralGraph, e: usize) -> Result<GroupElement> {
    let edge = graph.edge(e)?;
    let n = graph.edges().len();
    let mut matrix = BitMatrix::identity(n);
    let row = matrix.row(e).xor(graph.adjacency_row(e));
    matrix.set_row(e, &row);
    let perm = Perm::transposition(
        graph.vertex_count(),
        graph.position_of(edge.ends.0),
        graph.position_of(edge.ends.1),
    );
    Ok(GroupElement {
        matrix,
        perm,
        word: vec![e],
    })
}

/// All generators, indexed by edge id.
pub fn generators(graph: &SpectralGraph) -> Result<Vec<GroupElement>> {
    (0..graph.edges().len())
        .map(|e| generator(graph, e))
        .collect()
}

/// Product of generators in word order (rightmost acts first).
pub fn from_word(graph: &SpectralGraph, word: &[usize]) -> Result<GroupElement> {
    let mut acc = GroupElement::identity(graph);
    for &e in word {
        acc = acc.compose(&generator(graph, e)?);
    }
    Ok(acc)
}

/// Image of a chain under a generator word, one transvection per letter;
/// much cheaper than building the matrix when only a few images are needed.
pub fn apply_word(graph: &SpectralGraph, word: &[usize], chain: &BitVec) -> BitVec {
    let mut v = chain.clone();
    for &e in word.iter().rev() {
        if graph.adjacency_row(e).dot(&v) {
            v.flip(e);
        }
    }
    v
}

/// Vertex permutation of a generator word.
pub fn word_permutation(graph: &SpectralGraph, word: &[usize]) -> Result<Perm> {
    let mut perm = Perm::identity(graph.vertex_count());
    for &e in word {
        let edge = graph.edge(e)?;
        let t = Perm::transposition(
            graph.vertex_count(),
            graph.position_of(edge.ends.0),
            graph.position_of(edge.ends.1),
        );
        perm = perm.compose(&t);
    }
    Ok(perm)
}

/// Lift of a vertex permutation into the subgroup generated by the
/// Hamiltonian-cycle reflections, as a generator word.
fn lift_word(graph: &SpectralGraph, perm: &Perm) -> Result<Vec<usize>> {
    let ham = graph
        .hamiltonian_edges()
        .ok_or_else(|| Error::Construction("Hamiltonian cycle unavailable".into()))?;
    Ok(perm
        .adjacent_transposition_word()
        .into_iter()
        .map(|i| ham[i])
        .collect())
}

/// Splits an element as g = h . s with s the Hamiltonian-reflection lift of
/// the vertex permutation (acting first) and h in the kernel N.
pub fn semidirect_split(
    graph: &SpectralGraph,
    elt: &GroupElement,
) -> Result<(GroupElement, GroupElement)> {
    let word = lift_word(graph, &elt.perm)?;
    let s = from_word(graph, &word)?;
    debug_assert_eq!(s.perm, elt.perm, "lift image mismatch");
    let s_inv_word: Vec<usize> = word.iter().rev().copied().collect();
    let s_inv = from_word(graph, &s_inv_word)?;
    let h = elt.compose(&s_inv);
    if !h.perm.is_identity() {
        return Err(Error::Construction(
            "semidirect split produced a non-trivial permutation part".into(),
        ));
    }
    Ok((h, s))
}

/// Verifies the Coxeter presentation of the Hamiltonian reflections:
/// involutions, distant commutation, and the braid relation on consecutive
/// pairs including the wrap-around pair. Also checks that every generator,
/// not only the E' ones, squares to the identity.
pub fn coxeter_check(graph: &SpectralGraph) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let n_edges = graph.edges().len();
    let identity = BitMatrix::identity(n_edges);

    let mut involution_witness = String::new();
    for e in 0..n_edges {
        let g = generator(graph, e)?;
        if g.matrix.mul(&g.matrix) != identity {
            involution_witness = format!("sigma_{} is not an involution", graph.edges()[e].label);
            break;
        }
    }
    report.push(CheckResult::from_outcome(
        "coxeter_involutions",
        involution_witness.is_empty(),
        involution_witness,
    ));

    let ham = graph
        .hamiltonian_edges()
        .ok_or_else(|| Error::Construction("Hamiltonian cycle unavailable".into()))?;
    let n = ham.len();
    let gens: Vec<GroupElement> = ham
        .iter()
        .map(|&e| generator(graph, e))
        .collect::<Result<_>>()?;

    let mut commute_witness = String::new();
    'commute: for i in 0..n {
        for j in i + 1..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let ij = gens[i].matrix.mul(&gens[j].matrix);
            let ji = gens[j].matrix.mul(&gens[i].matrix);
            if ij != ji {
                commute_witness = format!("sigma_e{} and sigma_e{} do not commute", i + 1, j + 1);
                break 'commute;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "coxeter_commuting",
        commute_witness.is_empty(),
        commute_witness,
    ));

    let mut braid_witness = String::new();
    for i in 0..n {
        let j = (i + 1) % n;
        let prod = gens[i].matrix.mul(&gens[j].matrix);
        if prod.mul(&prod).mul(&prod) != identity {
            braid_witness = format!("(sigma_e{} sigma_e{})^3 != 1", i + 1, j + 1);
            break;
        }
    }
    report.push(CheckResult::from_outcome(
        "coxeter_braid",
        braid_witness.is_empty(),
        braid_witness,
    ));

    Ok(report)
}

/// Ordered basis of C1 adapted to the filtration of P[2].
///
/// The first `split` vectors are face chains lying in the kernel of the
/// boundary map; the remaining ones are Hamiltonian edge vectors whose
/// boundaries span a complement of (1,...,1). Together with the four
/// relation chains they form a basis of the whole edge space, and the first
/// 6g-6 coordinates of a chain in that basis are its P[2] coordinates.
#[derive(Clone)]
pub struct AdaptedBasis {
    pub vectors: Vec<BitVec>,
    pub split: usize,
    relations: [BitVec; 4],
    to_coords: BitMatrix,
}

impl AdaptedBasis {
    pub fn p2_dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn relation_span(&self) -> &[BitVec; 4] {
        &self.relations
    }

    /// P[2] coordinates of a chain: the coefficients of the basis vectors,
    /// discarding the relation-span component.
    pub fn p2_coordinates(&self, chain: &BitVec) -> BitVec {
        let full = self.to_coords.mul_vec(chain);
        let mut out = BitVec::zeros(self.vectors.len());
        for i in 0..self.vectors.len() {
            if full.get(i) {
                out.set(i, true);
            }
        }
        out
    }

    /// True when the chain lies in the relation span.
    pub fn reduces_to_zero(&self, chain: &BitVec) -> bool {
        self.p2_coordinates(chain).is_zero()
    }
}

/// Builds the adapted basis: face chains of E0 edges (dropping the special
/// ones, which are redundant modulo the relations) followed by the
/// Hamiltonian edges short of one dependent edge.
pub fn adapted_basis(graph: &SpectralGraph) -> Result<AdaptedBasis> {
    let g = graph.genus();
    let relations = graph.relations()?;
    let span = relations.quotient_span();
    let dim = graph.edges().len();

    let mut sb = SpanBuilder::new(dim);
    for r in &span {
        if !sb.insert(r) {
            return Err(Error::RankDeficiency(
                "relation chains are not independent".into(),
            ));
        }
    }

    let ham = graph
        .hamiltonian_edges()
        .ok_or_else(|| Error::Construction("Hamiltonian cycle unavailable".into()))?
        .to_vec();
    let closing = *ham.last().unwrap();

    // kernel part: face chains, special edges last so they are the dropped ones
    let mut e0 = graph.e0_edges();
    e0.sort_by_key(|&id| graph.edges()[id].shared_endpoints(&graph.edges()[closing]) > 0);
    let mut vectors = Vec::with_capacity(6 * g - 6);
    for &id in &e0 {
        let delta = graph.delta(id)?;
        if sb.insert(&delta) {
            vectors.push(delta);
        }
    }
    if vectors.len() != 2 * g {
        return Err(Error::RankDeficiency(format!(
            "kernel part has {} independent face chains, expected {}",
            vectors.len(),
            2 * g
        )));
    }

    // permutation part: Hamiltonian edges e_1..e_{4g-5}; exactly one is
    // dependent modulo the relations and the kernel part
    let split = vectors.len();
    for &id in &ham[..ham.len() - 1] {
        let v = BitVec::unit(dim, id);
        if sb.insert(&v) {
            vectors.push(v);
        }
    }
    if vectors.len() != 6 * g - 6 || sb.rank() != dim {
        return Err(Error::RankDeficiency(format!(
            "adapted basis spans rank {} of {}",
            sb.rank(),
            dim
        )));
    }

    let mut columns = vectors.clone();
    columns.extend(span.iter().cloned());
    let basis_matrix = BitMatrix::from_columns(&columns);
    let to_coords = basis_matrix
        .inverse()
        .ok_or_else(|| Error::RankDeficiency("adapted basis matrix is singular".into()))?;

    Ok(AdaptedBasis {
        vectors,
        split,
        relations: span,
        to_coords,
    })
}

/// The block form of an element on P[2] in the adapted basis.
#[derive(Clone, Debug)]
pub struct BlockForm {
    /// Upper-right 2g x (4g-6) block.
    pub a: BitMatrix,
    /// Lower-right (4g-6) x (4g-6) permutation-module block.
    pub pi: BitMatrix,
}

/// Matrix of the induced action on P[2] in the adapted basis.
pub fn p2_matrix(elt: &GroupElement, basis: &AdaptedBasis) -> BitMatrix {
    let cols: Vec<BitVec> = basis
        .vectors
        .iter()
        .map(|v| basis.p2_coordinates(&elt.matrix.mul_vec(v)))
        .collect();
    BitMatrix::from_columns(&cols)
}

/// Decomposes the induced action on P[2] into blocks, verifying the
/// theorem's shape: identity upper-left, zero lower-left.
pub fn block_decompose(
    graph: &SpectralGraph,
    elt: &GroupElement,
    basis: &AdaptedBasis,
) -> Result<BlockForm> {
    for (name, r) in ["x1", "x2", "x4", "x5"].iter().zip(basis.relation_span()) {
        if !basis.reduces_to_zero(&elt.matrix.mul_vec(r)) {
            return Err(Error::BlockForm {
                word: elt.word_labels(graph),
                detail: format!("image of {name} escapes the relation span"),
            });
        }
    }
    let m = p2_matrix(elt, basis);
    let s = basis.split;
    let dim = basis.p2_dim();
    let mut a = BitMatrix::zeros(s, dim - s);
    let mut pi = BitMatrix::zeros(dim - s, dim - s);
    for r in 0..dim {
        for c in 0..dim {
            let bit = m.get(r, c);
            match (r < s, c < s) {
                (true, true) => {
                    if bit != (r == c) {
                        return Err(Error::BlockForm {
                            word: elt.word_labels(graph),
                            detail: format!("upper-left block differs from I at ({r},{c})"),
                        });
                    }
                }
                (false, true) => {
                    if bit {
                        return Err(Error::BlockForm {
                            word: elt.word_labels(graph),
                            detail: format!("lower-left block is non-zero at ({r},{c})"),
                        });
                    }
                }
                (true, false) => {
                    if bit {
                        a.set(r, c - s, true);
                    }
                }
                (false, false) => {
                    if bit {
                        pi.set(r - s, c - s, true);
                    }
                }
            }
        }
    }
    Ok(BlockForm { a, pi })
}

/// Predicted lower-right block: the action of a vertex permutation on the
/// boundary classes of the adapted edge vectors, modulo (1,...,1).
pub fn permutation_block(
    graph: &SpectralGraph,
    basis: &AdaptedBasis,
    perm: &Perm,
) -> Result<BitMatrix> {
    let n = graph.vertex_count();
    let boundaries: Vec<BitVec> = basis.vectors[basis.split..]
        .iter()
        .map(|v| graph.boundary(v))
        .collect();
    let mut span = boundaries.clone();
    span.push(BitVec::from_bits(&vec![true; n]));
    let cols: Result<Vec<BitVec>> = boundaries
        .iter()
        .map(|w| {
            let mut image = BitVec::zeros(n);
            for p in w.iter_ones() {
                image.flip(perm.apply(p));
            }
            let coeffs = solve_in_span(&image, &span).ok_or_else(|| {
                Error::Construction("permuted boundary escapes the quotient span".into())
            })?;
            let mut col = BitVec::zeros(boundaries.len());
            for i in 0..boundaries.len() {
                if coeffs.get(i) {
                    col.set(i, true);
                }
            }
            Ok(col)
        })
        .collect();
    Ok(BitMatrix::from_columns(&cols?))
}

/// Rank of the span of A blocks over the kernel N, certified by explicit
/// conjugation words. Deterministic conjugators come first; if they do not
/// reach the expected rank, seeded random N-elements are tried up to a cap
/// of 10 * 2g(4g-6) samples.
pub fn kernel_rank_certificate(graph: &SpectralGraph, basis: &AdaptedBasis) -> Result<usize> {
    let g = graph.genus();
    let target = 2 * g * (4 * g - 6);
    let ham = graph
        .hamiltonian_edges()
        .ok_or_else(|| Error::Construction("Hamiltonian cycle unavailable".into()))?
        .to_vec();
    let e0 = graph.e0_edges();

    let mut sb = SpanBuilder::new(target);
    let mut samples = 0usize;
    let cap = 10 * target;
    let split = basis.split;
    let x_dim = basis.p2_dim() - split;

    // The A block of an N-word, read off column by column: apply the word
    // to each permutation-part basis vector as a chain of transvections and
    // take the section coordinates of the image. The permutation block must
    // come out as the identity or the sample is not a kernel element.
    let feed = |word: &[usize], sb: &mut SpanBuilder, samples: &mut usize| -> Result<()> {
        *samples += 1;
        if !word_permutation(graph, word)?.is_identity() {
            return Err(Error::Construction(
                "kernel sample has a non-trivial permutation part".into(),
            ));
        }
        let mut flat = BitVec::zeros(target);
        for (j, v) in basis.vectors[split..].iter().enumerate() {
            let coords = basis.p2_coordinates(&apply_word(graph, word, v));
            for r in 0..split {
                if coords.get(r) {
                    flat.set(r * x_dim + j, true);
                }
            }
            for r in 0..x_dim {
                if coords.get(split + r) != (r == j) {
                    return Err(Error::BlockForm {
                        word: word
                            .iter()
                            .map(|&id| graph.edges()[id].label.to_string())
                            .collect::<Vec<_>>()
                            .join(" "),
                        detail: "kernel element has a non-identity permutation block".into(),
                    });
                }
            }
        }
        sb.insert(&flat);
        Ok(())
    };

    let h_word = |e: usize| -> Result<Vec<usize>> {
        let t = generator(graph, e)?.perm;
        let lift = lift_word(graph, &t)?;
        let mut word = vec![e];
        word.extend(lift.iter().rev());
        Ok(word)
    };

    // explicit proof words: h_e and its conjugates by single reflections
    'outer: for conj in std::iter::once(None).chain(ham.iter().copied().map(Some)) {
        for &e in &e0 {
            let mut word = Vec::new();
            if let Some(s) = conj {
                word.push(s);
            }
            word.extend(h_word(e)?);
            if let Some(s) = conj {
                word.push(s);
            }
            feed(&word, &mut sb, &mut samples)?;
            if sb.rank() == target {
                break 'outer;
            }
        }
    }

    // random fallback, alternating two families of N-elements: h_e
    // conjugated by the lift of a uniformly random permutation, and the
    // kernel part of a long random generator word
    let mut rng = StdRng::seed_from_u64(0x6d6f6e6f + g as u64);
    let n_edges = graph.edges().len();
    let n = graph.vertex_count();
    while sb.rank() < target && samples < cap {
        let word = if samples.is_multiple_of(2) {
            let mut images: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            let conj = lift_word(graph, &Perm::from_images(images).expect("shuffle"))?;
            let mut word = conj.clone();
            word.extend(h_word(e0[rng.gen_range(0..e0.len())])?);
            word.extend(conj.iter().rev());
            word
        } else {
            let len = rng.gen_range(1..=32 * g);
            let mut word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n_edges)).collect();
            let lift = lift_word(graph, &word_permutation(graph, &word)?)?;
            word.extend(lift.iter().rev());
            word
        };
        feed(&word, &mut sb, &mut samples)?;
    }

    Ok(sb.rank())
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::from(1u32), |acc, k| acc * BigUint::from(k))
}

/// The order predicted by the block theorem: (4g-4)! * 2^(2g(4g-6)).
pub fn predicted_group_order(genus: usize) -> BigUint {
    factorial(4 * genus - 4) * BigUint::from(2u32).pow((2 * genus * (4 * genus - 6)) as u32)
}

/// Fixed-point checks: the kernel of the boundary map is fixed pointwise,
/// the relation chains are fixed exactly, the boundary map intertwines the
/// chain action with the vertex permutation, and the 2g section coordinates
/// of P[2] are fixed by every generator.
pub fn triviality_check(graph: &SpectralGraph, basis: &AdaptedBasis) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let gens = generators(graph)?;
    let kernel = graph.boundary_matrix().kernel_basis();

    let mut witness = String::new();
    'z1: for g in &gens {
        for v in &kernel {
            if &g.matrix.mul_vec(v) != v {
                witness = format!(
                    "sigma_{} moves a kernel chain",
                    graph.edges()[g.word[0]].label
                );
                break 'z1;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "fixes_z1_pointwise",
        witness.is_empty(),
        witness,
    ));

    let mut witness = String::new();
    'rel: for g in &gens {
        for (name, r) in ["x1", "x2", "x4", "x5"].iter().zip(basis.relation_span()) {
            if &g.matrix.mul_vec(r) != r {
                witness = format!("sigma_{} moves {name}", graph.edges()[g.word[0]].label);
                break 'rel;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "fixes_relations",
        witness.is_empty(),
        witness,
    ));

    let boundary = graph.boundary_matrix();
    let n = graph.vertex_count();
    let mut witness = String::new();
    for g in &gens {
        let mut perm_matrix = BitMatrix::zeros(n, n);
        for i in 0..n {
            perm_matrix.set(g.perm.apply(i), i, true);
        }
        if boundary.mul(&g.matrix) != perm_matrix.mul(boundary) {
            witness = format!(
                "boundary map does not intertwine sigma_{}",
                graph.edges()[g.word[0]].label
            );
            break;
        }
    }
    report.push(CheckResult::from_outcome(
        "boundary_compatibility",
        witness.is_empty(),
        witness,
    ));

    let mut witness = String::new();
    'section: for g in &gens {
        for (i, v) in basis.vectors[..basis.split].iter().enumerate() {
            let image = basis.p2_coordinates(&g.matrix.mul_vec(v));
            if image != BitVec::unit(basis.p2_dim(), i) {
                witness = format!(
                    "sigma_{} moves section coordinate {i}",
                    graph.edges()[g.word[0]].label
                );
                break 'section;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "fixes_section_coordinates",
        witness.is_empty(),
        witness,
    ));

    Ok(report)
}

/// Block-form checks over all generators and a batch of random words.
pub fn block_check(
    graph: &SpectralGraph,
    basis: &AdaptedBasis,
    random_words: usize,
    max_len: usize,
    seed: u64,
) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let n_edges = graph.edges().len();

    let mut witness = String::new();
    for e in 0..n_edges {
        let elt = generator(graph, e)?;
        match block_decompose(graph, &elt, basis) {
            Ok(block) => {
                let predicted = permutation_block(graph, basis, &elt.perm)?;
                if block.pi != predicted {
                    witness = format!(
                        "pi block of sigma_{} is not the permutation-module image",
                        graph.edges()[e].label
                    );
                    break;
                }
            }
            Err(err) => {
                witness = err.to_string();
                break;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "block_form_generators",
        witness.is_empty(),
        witness,
    ));

    let mut rng = StdRng::seed_from_u64(seed);
    let mut witness = String::new();
    for _ in 0..random_words {
        let len = rng.gen_range(1..=max_len);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n_edges)).collect();
        let elt = from_word(graph, &word)?;
        match block_decompose(graph, &elt, basis) {
            Ok(block) => {
                let predicted = permutation_block(graph, basis, &elt.perm)?;
                if block.pi != predicted {
                    witness = format!(
                        "pi block of word [{}] is not the permutation-module image",
                        elt.word_labels(graph)
                    );
                    break;
                }
            }
            Err(err) => {
                witness = err.to_string();
                break;
            }
        }
    }
    report.push(CheckResult::from_outcome(
        "block_form_random_words",
        witness.is_empty(),
        witness,
    ));

    Ok(report)
}

/// Schreier-Sims order of the vertex permutations of all generators.
pub fn symmetric_order_check(graph: &SpectralGraph) -> Result<ValidationReport> {
    let mut report = ValidationReport::default();
    let perms: Vec<Perm> = generators(graph)?.into_iter().map(|g| g.perm).collect();
    let chain = StabilizerChain::new(graph.vertex_count(), &perms);
    let order = chain.order();
    let expected = factorial(4 * graph.genus() - 4);
    report.push(CheckResult::from_outcome(
        "symmetric_group_order",
        order == expected,
        format!("permutation parts generate order {order}, expected {expected}"),
    ));
    Ok(report)
}

/// Bundle of everything the block theorem asserts at one genus.
pub struct TheoremCertificate {
    pub genus: usize,
    pub report: ValidationReport,
    /// (4g-4)! * 2^(2g(4g-6)), reported when every sub-check passed.
    pub group_order: Option<BigUint>,
}

/// Runs the full certification: graph validation, Coxeter relations,
/// triviality, block forms, the kernel rank, and the symmetric quotient.
pub fn verify_theorem(genus: usize) -> Result<TheoremCertificate> {
    let graph = SpectralGraph::build(genus)?;
    let mut report = graph.validate();
    let basis = adapted_basis(&graph)?;

    report.extend(coxeter_check(&graph)?);
    report.extend(triviality_check(&graph, &basis)?);
    report.extend(block_check(&graph, &basis, 100, 50, 0xb10c + genus as u64)?);

    let rank = kernel_rank_certificate(&graph, &basis)?;
    let target = 2 * genus * (4 * genus - 6);
    report.push(CheckResult::from_outcome(
        "kernel_rank",
        rank == target,
        format!("A-block span has rank {rank}, expected {target}"),
    ));

    report.extend(symmetric_order_check(&graph)?);

    let group_order = report.all_passed().then(|| predicted_group_order(genus));
    Ok(TheoremCertificate {
        genus,
        report,
        group_order,
    })
}
