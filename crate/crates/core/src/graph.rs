//! The spectral ring graph for genus g >= 3.
//!
//! The graph is an annulus: an inner cycle of 2g-2 `l` edges, an outer cycle
//! of 2g-2 `u` edges, and 2g+2 `b` spokes cutting the ring into 8 triangles
//! followed by 2g-6 quadrilaterals. All spokes plus one side per
//! quadrilateral form a Hamiltonian cycle E'; its complement E0 has one edge
//! per face. Chains over the edges carry the mod 2 intersection pairing and
//! the boundary map to the vertex space.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{solve_in_span, span_rank, BitMatrix, BitVec};
use crate::report::{CheckResult, ValidationReport};

/// Edge family: inner arc, outer arc, or spoke.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    L,
    U,
    B,
}

impl EdgeKind {
    pub fn letter(self) -> char {
        match self {
            EdgeKind::L => 'l',
            EdgeKind::U => 'u',
            EdgeKind::B => 'b',
        }
    }

    /// Upper bound for the 1-based label index at the given genus.
    pub fn max_index(self, genus: usize) -> usize {
        match self {
            EdgeKind::L | EdgeKind::U => 2 * genus - 2,
            EdgeKind::B => 2 * genus + 2,
        }
    }
}

/// A labelled edge name such as `l3`, `u5` or `b11`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeLabel {
    pub kind: EdgeKind,
    pub index: usize,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.letter(), self.index)
    }
}

/// An undirected edge between two 1-based vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: EdgeLabel,
    pub ends: (usize, usize),
}

impl Edge {
    pub fn touches(&self, v: usize) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    /// Number of shared endpoints with another edge, 0..=2.
    pub fn shared_endpoints(&self, other: &Edge) -> usize {
        usize::from(self.ends.0 == other.ends.0)
            + usize::from(self.ends.0 == other.ends.1)
            + usize::from(self.ends.1 == other.ends.0)
            + usize::from(self.ends.1 == other.ends.1)
    }
}

/// The relation chains spanning the subspace that cuts C1 down to P[2].
#[derive(Clone, Debug)]
pub struct RelationSet {
    pub x1: BitVec,
    pub x2: BitVec,
    pub x3: BitVec,
    pub x4: BitVec,
    pub x5: BitVec,
}

impl RelationSet {
    /// The four independent relations defining the quotient.
    pub fn quotient_span(&self) -> [BitVec; 4] {
        [
            self.x1.clone(),
            self.x2.clone(),
            self.x4.clone(),
            self.x5.clone(),
        ]
    }
}

/// Number of E0 edges meeting only 3 edges of the truncated Hamiltonian
/// path (all others meet 4). For g >= 4 the closing edge sits between two
/// quadrilaterals and touches exactly two E0 edges; at g = 3 every vertex
/// carries two E0 chords, so the closing edge touches four.
pub fn expected_special_e0_count(genus: usize) -> usize {
    if genus == 3 {
        4
    } else {
        2
    }
}

/// Copeland-style ring graph together with its faces and vertex ordering.
#[derive(Clone)]
pub struct SpectralGraph {
    genus: usize,
    vertex_count: usize,
    edges: Vec<Edge>,
    faces: Vec<Vec<usize>>,
    vertex_order: Vec<usize>,
    // caches, derived once at construction
    position: Vec<usize>,
    ham_edges: Option<Vec<usize>>,
    adjacency: Vec<BitVec>,
    boundary: BitMatrix,
}

impl SpectralGraph {
    /// Builds the canonical graph for the given genus.
    ///
    /// The layout is the ring of 8 alternating triangles followed by 2g-6
    /// quadrilaterals; label indices and the vertex ordering are assigned so
    /// that the relation-set identities hold literally.
    pub fn build(genus: usize) -> Result<Self> {
        if genus < 3 {
            return Err(Error::UnsupportedGenus(genus));
        }
        let m = 2 * genus - 2; // inner and outer cycle length
        let inner = |k: usize| (k - 1) % m; // abstract vertex ids
        let outer = |k: usize| m + (k - 1) % m;

        // Faces in ring order, with edges named abstractly. Spokes are keyed
        // by their endpoints and numbered later from the Hamiltonian order.
        #[derive(Clone, Copy, PartialEq, Eq, Hash)]
        enum Ref {
            L(usize),
            U(usize),
            Spoke(usize, usize), // (inner abstract id, outer abstract id)
        }
        let mut faces_abs: Vec<Vec<Ref>> = Vec::new();
        for k in 0..4 {
            // outward triangle: apex a_{k+1}, outer side u_{k+1}
            faces_abs.push(vec![
                Ref::Spoke(inner(k + 1), outer(k + 1)),
                Ref::U(k + 1),
                Ref::Spoke(inner(k + 1), outer(k + 2)),
            ]);
            // inward triangle: apex X_{k+2}, inner side l_{k+1}
            faces_abs.push(vec![
                Ref::Spoke(inner(k + 1), outer(k + 2)),
                Ref::L(k + 1),
                Ref::Spoke(inner(k + 2), outer(k + 2)),
            ]);
        }
        for q in 0..2 * genus - 6 {
            faces_abs.push(vec![
                Ref::Spoke(inner(5 + q), outer(5 + q)),
                Ref::L(5 + q),
                Ref::Spoke(inner(6 + q), outer(6 + q)),
                Ref::U(5 + q),
            ]);
        }

        // E': all spokes, plus l_i for odd i >= 5 and u_i for even i >= 6.
        let in_e_prime = |r: &Ref| match *r {
            Ref::Spoke(..) => true,
            Ref::L(i) => i >= 5 && i % 2 == 1,
            Ref::U(i) => i >= 6 && i % 2 == 0,
        };
        let ref_ends = |r: &Ref| -> (usize, usize) {
            match *r {
                Ref::L(i) => (inner(i), inner(i + 1)),
                Ref::U(i) => (outer(i), outer(i + 1)),
                Ref::Spoke(a, x) => (a, x),
            }
        };

        // E' adjacency per abstract vertex; each vertex sees exactly two.
        let n = 2 * m;
        let mut eprime_at: Vec<Vec<Ref>> = vec![Vec::new(); n];
        let mut all_refs: Vec<Ref> = Vec::new();
        for i in 1..=m {
            all_refs.push(Ref::L(i));
            all_refs.push(Ref::U(i));
        }
        for face in &faces_abs {
            for r in face {
                if let Ref::Spoke(..) = r {
                    if !all_refs.contains(r) {
                        all_refs.push(*r);
                    }
                }
            }
        }
        for r in &all_refs {
            if in_e_prime(r) {
                let (a, b) = ref_ends(r);
                eprime_at[a].push(*r);
                eprime_at[b].push(*r);
            }
        }
        for (v, refs) in eprime_at.iter().enumerate() {
            if refs.len() != 2 {
                return Err(Error::Construction(format!(
                    "abstract vertex {v} has {} Hamiltonian edges",
                    refs.len()
                )));
            }
        }

        // Trace the Hamiltonian cycle. For g >= 4 start at X_6 heading along
        // u_6, so the closing edge is the spoke (a_6, X_6); at g = 3 start at
        // a_1 heading along the spoke to X_2.
        let (start, second) = if genus == 3 {
            (inner(1), outer(2))
        } else {
            (outer(6), outer(7))
        };
        let mut seq = vec![start, second];
        while seq.len() < n {
            let cur = *seq.last().unwrap();
            let prev = seq[seq.len() - 2];
            let next = eprime_at[cur]
                .iter()
                .map(|r| {
                    let (a, b) = ref_ends(r);
                    if a == cur {
                        b
                    } else {
                        a
                    }
                })
                .find(|&v| v != prev)
                .ok_or_else(|| Error::Construction("Hamiltonian trace stuck".into()))?;
            seq.push(next);
        }

        // positions: abstract vertex -> 0-based position along the cycle
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if pos[v] != usize::MAX {
                return Err(Error::Construction(
                    "Hamiltonian trace revisits a vertex".into(),
                ));
            }
            pos[v] = i;
        }

        // Spoke indices b_1..b_{2g+2} in order of appearance along the cycle.
        let mut spoke_index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut next_b = 1;
        for i in 0..n {
            let a = seq[i];
            let b = seq[(i + 1) % n];
            let r = eprime_at[a]
                .iter()
                .find(|r| {
                    let (p, q) = ref_ends(r);
                    (p == a && q == b) || (p == b && q == a)
                })
                .copied()
                .unwrap();
            if let Ref::Spoke(x, y) = r {
                spoke_index.entry((x, y)).or_insert_with(|| {
                    let idx = next_b;
                    next_b += 1;
                    idx
                });
            }
        }
        if next_b != 2 * genus + 3 {
            return Err(Error::Construction(format!(
                "expected {} spokes on the cycle, found {}",
                2 * genus + 2,
                next_b - 1
            )));
        }

        // Final edges in label order: l_1.., u_1.., b_1..; endpoints are the
        // 1-based cycle positions.
        let final_end = |v: usize| pos[v] + 1;
        let mut edges = Vec::with_capacity(6 * genus - 2);
        for i in 1..=m {
            let (a, b) = ref_ends(&Ref::L(i));
            edges.push(Edge {
                label: EdgeLabel {
                    kind: EdgeKind::L,
                    index: i,
                },
                ends: (final_end(a), final_end(b)),
            });
        }
        for i in 1..=m {
            let (a, b) = ref_ends(&Ref::U(i));
            edges.push(Edge {
                label: EdgeLabel {
                    kind: EdgeKind::U,
                    index: i,
                },
                ends: (final_end(a), final_end(b)),
            });
        }
        let mut spokes: Vec<((usize, usize), usize)> =
            spoke_index.iter().map(|(&k, &v)| (k, v)).collect();
        spokes.sort_by_key(|&(_, idx)| idx);
        for ((a, x), idx) in spokes {
            edges.push(Edge {
                label: EdgeLabel {
                    kind: EdgeKind::B,
                    index: idx,
                },
                ends: (final_end(a), final_end(x)),
            });
        }

        let ref_to_id = |r: &Ref| -> usize {
            match *r {
                Ref::L(i) => i - 1,
                Ref::U(i) => m + i - 1,
                Ref::Spoke(a, x) => 2 * m + spoke_index[&(a, x)] - 1,
            }
        };
        let faces: Vec<Vec<usize>> = faces_abs
            .iter()
            .map(|f| f.iter().map(ref_to_id).collect())
            .collect();

        let vertex_order: Vec<usize> = (1..=n).collect();
        Self::from_parts(genus, edges, faces, vertex_order)
    }

    /// Assembles a graph from raw parts, checking only structural sanity
    /// (id ranges and shapes). Mathematical invariants are the job of
    /// [`SpectralGraph::validate`].
    pub fn from_parts(
        genus: usize,
        edges: Vec<Edge>,
        faces: Vec<Vec<usize>>,
        vertex_order: Vec<usize>,
    ) -> Result<Self> {
        if genus < 3 {
            return Err(Error::UnsupportedGenus(genus));
        }
        let vertex_count = vertex_order.len();
        if vertex_count == 0 {
            return Err(Error::InvalidGraphData("empty vertex order".into()));
        }
        for e in &edges {
            if e.ends.0 == 0 || e.ends.0 > vertex_count || e.ends.1 == 0 || e.ends.1 > vertex_count
            {
                return Err(Error::InvalidGraphData(format!(
                    "edge {} has endpoints {:?} outside 1..={}",
                    e.label, e.ends, vertex_count
                )));
            }
        }
        for (f, face) in faces.iter().enumerate() {
            for &id in face {
                if id >= edges.len() {
                    return Err(Error::InvalidGraphData(format!(
                        "face {f} references edge id {id} out of range"
                    )));
                }
            }
        }
        for &v in &vertex_order {
            if v == 0 || v > vertex_count {
                return Err(Error::InvalidGraphData(format!(
                    "vertex order entry {v} outside 1..={vertex_count}"
                )));
            }
        }

        // position of each vertex id along the order (first occurrence wins;
        // duplicate entries are caught by validation)
        let mut position = vec![usize::MAX; vertex_count];
        for (i, &v) in vertex_order.iter().enumerate() {
            if position[v - 1] == usize::MAX {
                position[v - 1] = i;
            }
        }
        for (v, p) in position.iter_mut().enumerate() {
            if *p == usize::MAX {
                *p = v;
            }
        }

        let ham_edges = Self::trace_hamiltonian(&edges, &vertex_order);
        let adjacency = Self::adjacency_rows(&edges);
        let boundary = Self::boundary_from(&edges, &position, vertex_count);

        Ok(Self {
            genus,
            vertex_count,
            edges,
            faces,
            vertex_order,
            position,
            ham_edges,
            adjacency,
            boundary,
        })
    }

    fn trace_hamiltonian(edges: &[Edge], order: &[usize]) -> Option<Vec<usize>> {
        let mut by_ends: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (id, e) in edges.iter().enumerate() {
            let key = (e.ends.0.min(e.ends.1), e.ends.0.max(e.ends.1));
            by_ends.entry(key).or_insert(id);
        }
        let n = order.len();
        let mut ham = Vec::with_capacity(n);
        for i in 0..n {
            let a = order[i];
            let b = order[(i + 1) % n];
            let id = by_ends.get(&(a.min(b), a.max(b)))?;
            ham.push(*id);
        }
        Some(ham)
    }

    fn adjacency_rows(edges: &[Edge]) -> Vec<BitVec> {
        let k = edges.len();
        let mut rows = Vec::with_capacity(k);
        for (i, e) in edges.iter().enumerate() {
            let mut row = BitVec::zeros(k);
            for (j, f) in edges.iter().enumerate() {
                if i != j && e.shared_endpoints(f) % 2 == 1 {
                    row.set(j, true);
                }
            }
            rows.push(row);
        }
        rows
    }

    fn boundary_from(edges: &[Edge], position: &[usize], vertex_count: usize) -> BitMatrix {
        let mut m = BitMatrix::zeros(vertex_count, edges.len());
        for (id, e) in edges.iter().enumerate() {
            let p = position[e.ends.0 - 1];
            let q = position[e.ends.1 - 1];
            if p == q {
                continue; // a loop has zero boundary over GF(2)
            }
            m.set(p, id, true);
            m.set(q, id, true);
        }
        m
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn vertex_order(&self) -> &[usize] {
        &self.vertex_order
    }

    pub fn edge(&self, id: usize) -> Result<&Edge> {
        self.edges.get(id).ok_or(Error::InvalidEdge(id))
    }

    pub fn edge_by_label(&self, kind: EdgeKind, index: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| e.label.kind == kind && e.label.index == index)
    }

    /// Position of a vertex id along the Hamiltonian ordering, 0-based.
    pub fn position_of(&self, vertex: usize) -> usize {
        self.position[vertex - 1]
    }

    /// Edge ids `e_1..e_{4g-4}` of the Hamiltonian cycle, if present.
    pub fn hamiltonian_edges(&self) -> Option<&[usize]> {
        self.ham_edges.as_deref()
    }

    /// Edge ids of `E0 = E - E'`, ascending.
    pub fn e0_edges(&self) -> Vec<usize> {
        let in_ham: Vec<bool> = match &self.ham_edges {
            Some(ham) => {
                let mut mask = vec![false; self.edges.len()];
                for &id in ham {
                    mask[id] = true;
                }
                mask
            }
            None => vec![false; self.edges.len()],
        };
        (0..self.edges.len()).filter(|&id| !in_ham[id]).collect()
    }

    /// The closing edge `e_{4g-4} = (4g-4, 1)` of the Hamiltonian cycle.
    pub fn closing_edge(&self) -> Option<usize> {
        self.ham_edges.as_ref().map(|h| *h.last().unwrap())
    }

    /// Indicator chain of a set of edge ids.
    pub fn edge_chain(&self, ids: &[usize]) -> BitVec {
        BitVec::from_support(self.edges.len(), ids)
    }

    pub fn boundary_matrix(&self) -> &BitMatrix {
        &self.boundary
    }

    /// Boundary of a chain: the mod 2 endpoint count per vertex position.
    pub fn boundary(&self, chain: &BitVec) -> BitVec {
        self.boundary.mul_vec(chain)
    }

    /// Mod 2 intersection pairing `<x, e>`: the parity of shared endpoints
    /// between `e` and the edges in the support of `x`, with the `e` term
    /// itself contributing 0.
    pub fn pairing(&self, x: &BitVec, e: usize) -> bool {
        self.adjacency[e].dot(x)
    }

    /// Pairing row of a single edge against the whole edge basis.
    pub fn adjacency_row(&self, e: usize) -> &BitVec {
        &self.adjacency[e]
    }

    /// The boundary chain of the unique face containing an E0 edge.
    pub fn delta(&self, e: usize) -> Result<BitVec> {
        let edge = self.edge(e)?;
        if self.ham_edges.as_ref().is_some_and(|h| h.contains(&e)) {
            return Err(Error::NotInE0(edge.label.to_string()));
        }
        let containing: Vec<&Vec<usize>> = self.faces.iter().filter(|f| f.contains(&e)).collect();
        match containing.as_slice() {
            [face] => Ok(self.edge_chain(face)),
            _ => Err(Error::Construction(format!(
                "edge {} lies on {} face boundaries, expected 1",
                edge.label,
                containing.len()
            ))),
        }
    }

    /// The relation chains x1..x5, built from the edge labels.
    ///
    /// Fails with a construction error naming the first identity that does
    /// not hold.
    pub fn relations(&self) -> Result<RelationSet> {
        let len = self.edges.len();
        let chain_of = |want: &dyn Fn(&EdgeLabel) -> bool| -> BitVec {
            let mut v = BitVec::zeros(len);
            for (id, e) in self.edges.iter().enumerate() {
                if want(&e.label) {
                    v.flip(id);
                }
            }
            v
        };
        let x1 = chain_of(&|l| l.kind == EdgeKind::L);
        let x2 = chain_of(&|l| l.kind == EdgeKind::U);
        let all_b = chain_of(&|l| l.kind == EdgeKind::B);
        let x5 = {
            let mut v = all_b.clone();
            for (kind, index) in [
                (EdgeKind::L, 1),
                (EdgeKind::L, 3),
                (EdgeKind::U, 2),
                (EdgeKind::U, 4),
            ] {
                let id = self.edge_by_label(kind, index).ok_or_else(|| {
                    Error::RelationIdentity(format!("missing edge {}{}", kind.letter(), index))
                })?;
                v.flip(id);
            }
            v
        };
        let x4 = {
            let mut v = x5.clone();
            v.xor_assign(&chain_of(&|l| l.kind == EdgeKind::U && l.index % 2 == 1));
            v.xor_assign(&chain_of(&|l| l.kind == EdgeKind::L && l.index % 2 == 0));
            v
        };
        let x3 = {
            let mut v = all_b;
            v.xor_assign(&chain_of(&|l| {
                l.kind == EdgeKind::U && l.index >= 6 && l.index % 2 == 0
            }));
            v.xor_assign(&chain_of(&|l| {
                l.kind == EdgeKind::L && l.index >= 5 && l.index % 2 == 1
            }));
            v
        };

        let relations = RelationSet { x1, x2, x3, x4, x5 };
        // defining identities
        if relations.x3 != relations.x1.xor(&relations.x2).xor(&relations.x4) {
            return Err(Error::RelationIdentity("x3 = x1 + x2 + x4".into()));
        }
        if span_rank(&relations.quotient_span()) != 4 {
            return Err(Error::RelationIdentity(
                "span{x1, x2, x4, x5} has dimension 4".into(),
            ));
        }
        for (name, chain) in [
            ("x1", &relations.x1),
            ("x2", &relations.x2),
            ("x4", &relations.x4),
        ] {
            if !self.boundary(chain).is_zero() {
                return Err(Error::RelationIdentity(format!("boundary of {name} = 0")));
            }
        }
        let ones = BitVec::from_bits(&vec![true; self.vertex_count]);
        if self.boundary(&relations.x5) != ones {
            return Err(Error::RelationIdentity("boundary of x5 = (1,...,1)".into()));
        }
        Ok(relations)
    }

    /// Runs the full validation suite; every invariant becomes one named
    /// pass/fail entry.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let g = self.genus;
        let expect_edges = 6 * g - 2;
        let expect_vertices = 4 * g - 4;

        report.push(CheckResult::from_outcome(
            "vertex_count",
            self.vertex_count == expect_vertices,
            format!("expected {expect_vertices}, found {}", self.vertex_count),
        ));
        report.push(CheckResult::from_outcome(
            "edge_count",
            self.edges.len() == expect_edges,
            format!("expected {expect_edges}, found {}", self.edges.len()),
        ));

        let mut counts = BTreeMap::new();
        for e in &self.edges {
            *counts.entry(e.label.kind).or_insert(0usize) += 1;
        }
        let kind_ok = counts.get(&EdgeKind::L).copied().unwrap_or(0) == 2 * g - 2
            && counts.get(&EdgeKind::U).copied().unwrap_or(0) == 2 * g - 2
            && counts.get(&EdgeKind::B).copied().unwrap_or(0) == 2 * g + 2;
        report.push(CheckResult::from_outcome(
            "edge_kind_counts",
            kind_ok,
            format!(
                "expected l:{0} u:{0} b:{1}, found {counts:?}",
                2 * g - 2,
                2 * g + 2
            ),
        ));

        let mut label_ok = true;
        let mut label_witness = String::new();
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.edges {
            if e.label.index == 0 || e.label.index > e.label.kind.max_index(g) {
                label_ok = false;
                label_witness = format!("label {} out of range", e.label);
                break;
            }
            if !seen.insert(e.label) {
                label_ok = false;
                label_witness = format!("duplicate label {}", e.label);
                break;
            }
        }
        report.push(CheckResult::from_outcome(
            "edge_labels",
            label_ok,
            label_witness,
        ));

        let mut order_sorted: Vec<usize> = self.vertex_order.clone();
        order_sorted.sort_unstable();
        report.push(CheckResult::from_outcome(
            "vertex_order_permutation",
            order_sorted == (1..=self.vertex_count).collect::<Vec<_>>(),
            "vertex order is not a permutation of the vertex ids",
        ));

        // faces: count, shapes, closedness
        report.push(CheckResult::from_outcome(
            "face_count",
            self.faces.len() == 2 * g + 2,
            format!("expected {} faces, found {}", 2 * g + 2, self.faces.len()),
        ));
        let triangles = self.faces.iter().filter(|f| f.len() == 3).count();
        let quads = self.faces.iter().filter(|f| f.len() == 4).count();
        report.push(CheckResult::from_outcome(
            "face_shapes",
            triangles == 8 && quads == 2 * g - 6 && triangles + quads == self.faces.len(),
            format!(
                "expected 8 triangles and {} quadrilaterals, found {triangles} and {quads}",
                2 * g - 6
            ),
        ));
        let open_face = self
            .faces
            .iter()
            .position(|f| !self.boundary(&self.edge_chain(f)).is_zero());
        report.push(CheckResult::from_outcome(
            "face_cycles",
            open_face.is_none(),
            open_face.map_or(String::new(), |f| format!("face {f} is not a cycle")),
        ));

        // Hamiltonian cycle E' and its complement E0
        let ham_ok = self.ham_edges.is_some();
        report.push(CheckResult::from_outcome(
            "hamiltonian_cycle",
            ham_ok
                && self.ham_edges.as_ref().is_some_and(|h| {
                    let mut ids = h.clone();
                    ids.sort_unstable();
                    ids.dedup();
                    ids.len() == h.len()
                }),
            "edge set E' = {(i, i+1)} under the vertex order is not a set of distinct edges",
        ));

        if let Some(ham) = &self.ham_edges {
            let mut deg = vec![0usize; self.vertex_count];
            for &id in ham {
                let e = &self.edges[id];
                deg[e.ends.0 - 1] += 1;
                deg[e.ends.1 - 1] += 1;
            }
            report.push(CheckResult::from_outcome(
                "vertex_eprime_degree",
                deg.iter().all(|&d| d == 2),
                "a vertex does not lie on exactly two E' edges",
            ));

            let e0 = self.e0_edges();
            report.push(CheckResult::from_outcome(
                "e0_size",
                e0.len() == 2 * g + 2,
                format!("expected |E0| = {}, found {}", 2 * g + 2, e0.len()),
            ));

            let mut single_face_ok = true;
            let mut witness = String::new();
            for &id in &e0 {
                let on = self.faces.iter().filter(|f| f.contains(&id)).count();
                if on != 1 {
                    single_face_ok = false;
                    witness = format!("E0 edge {} lies on {on} faces", self.edges[id].label);
                    break;
                }
            }
            report.push(CheckResult::from_outcome(
                "e0_single_face",
                single_face_ok,
                witness,
            ));

            // beta' adjacency profile: every E0 edge must meet 4 edges of
            // beta' = E' minus the closing edge, except the special ones
            // adjacent to the closing edge, which meet 3.
            let closing = *ham.last().unwrap();
            let beta_prime: Vec<usize> = ham[..ham.len() - 1].to_vec();
            let mut specials = Vec::new();
            let mut profile_ok = true;
            let mut witness = String::new();
            for &id in &e0 {
                let e = &self.edges[id];
                let neighbours = beta_prime
                    .iter()
                    .filter(|&&j| self.edges[j].shared_endpoints(e) > 0)
                    .count();
                let closing_adjacent = self.edges[closing].shared_endpoints(e) > 0;
                match neighbours {
                    4 if !closing_adjacent => {}
                    3 if closing_adjacent => specials.push(e.label.to_string()),
                    _ => {
                        profile_ok = false;
                        witness = format!(
                            "E0 edge {} meets {neighbours} beta' edges (closing-adjacent: {closing_adjacent})",
                            e.label
                        );
                    }
                }
            }
            let expected_special = expected_special_e0_count(g);
            if profile_ok && specials.len() != expected_special {
                profile_ok = false;
                witness = format!(
                    "expected {expected_special} special E0 edges, found {}: {:?}",
                    specials.len(),
                    specials
                );
            }
            report.push(CheckResult {
                name: "special_e0_edges".into(),
                pass: profile_ok,
                witness: Some(if profile_ok {
                    format!("special E0 edges: {specials:?}")
                } else {
                    witness
                }),
            });
        } else {
            for name in [
                "vertex_eprime_degree",
                "e0_size",
                "e0_single_face",
                "special_e0_edges",
            ] {
                report.push(CheckResult::fail(name, "Hamiltonian cycle unavailable"));
            }
        }

        // relation identities
        match self.relations() {
            Ok(rel) => {
                report.push(CheckResult::pass("relation_identities"));

                // trivial pairing: every generator fixes each relation chain
                let mut fixed = true;
                let mut witness = String::new();
                'outer: for (name, chain) in [
                    ("x1", &rel.x1),
                    ("x2", &rel.x2),
                    ("x4", &rel.x4),
                    ("x5", &rel.x5),
                ] {
                    for e in 0..self.edges.len() {
                        if self.pairing(chain, e) {
                            fixed = false;
                            witness = format!("<{name}, {}> = 1", self.edges[e].label);
                            break 'outer;
                        }
                    }
                }
                report.push(CheckResult::from_outcome(
                    "relation_pairing_trivial",
                    fixed,
                    witness,
                ));

                // adjacency profile: x1 and x2 meet every edge in 0 or 2
                // edges; x4 and x5 always in an even number
                let count_adjacent = |chain: &BitVec, e: usize| {
                    chain
                        .iter_ones()
                        .filter(|&j| j != e && self.edges[j].shared_endpoints(&self.edges[e]) > 0)
                        .count()
                };
                let mut profile_ok = true;
                let mut witness = String::new();
                'profile: for (name, chain, strict) in [
                    ("x1", &rel.x1, true),
                    ("x2", &rel.x2, true),
                    ("x4", &rel.x4, false),
                    ("x5", &rel.x5, false),
                ] {
                    for e in 0..self.edges.len() {
                        let c = count_adjacent(chain, e);
                        let ok = if strict { c == 0 || c == 2 } else { c % 2 == 0 };
                        if !ok {
                            profile_ok = false;
                            witness =
                                format!("edge {} meets {c} edges of {name}", self.edges[e].label);
                            break 'profile;
                        }
                    }
                }
                report.push(CheckResult::from_outcome(
                    "relation_adjacency_profile",
                    profile_ok,
                    witness,
                ));

                // homology dimensions of the boundary map
                let rank = self.boundary.rank();
                let kernel = self.boundary.kernel_basis();
                report.push(CheckResult::from_outcome(
                    "kernel_dimension",
                    kernel.len() == 2 * g + 3,
                    format!("expected dim ker = {}, found {}", 2 * g + 3, kernel.len()),
                ));
                report.push(CheckResult::from_outcome(
                    "image_dimension",
                    rank == 4 * g - 5,
                    format!("expected dim im = {}, found {rank}", 4 * g - 5),
                ));

                // image = even-weight vectors: every column has even weight
                // and the rank matches the even-weight subspace
                let even_cols = (0..self.edges.len())
                    .all(|id| self.boundary.column(id).weight().is_multiple_of(2));
                report.push(CheckResult::from_outcome(
                    "image_equals_even_vectors",
                    even_cols && rank == 4 * g - 5,
                    "image of the boundary map is not the even-weight subspace",
                ));

                // face chains of E0 edges assemble a kernel basis with x4
                if self.ham_edges.is_some() {
                    let e0 = self.e0_edges();
                    let deltas: Result<Vec<BitVec>> = e0.iter().map(|&id| self.delta(id)).collect();
                    match deltas {
                        Ok(mut deltas) => {
                            let in_kernel = deltas.iter().all(|d| self.boundary(d).is_zero());
                            deltas.push(rel.x4.clone());
                            let independent = span_rank(&deltas) == deltas.len();
                            let spans = deltas.len() == 2 * g + 3;
                            report.push(CheckResult::from_outcome(
                                "delta_kernel_basis",
                                in_kernel && independent && spans,
                                format!(
                                    "face chains + x4: in kernel: {in_kernel}, independent: {independent}, count {} (expected {})",
                                    deltas.len(),
                                    2 * g + 3
                                ),
                            ));

                            // the l-type and u-type delta sums lie in span{x1, x2, x4}
                            let span = [rel.x1.clone(), rel.x2.clone(), rel.x4.clone()];
                            let mut sums_ok = true;
                            let mut witness = String::new();
                            for kind in [EdgeKind::L, EdgeKind::U] {
                                let mut sum = BitVec::zeros(self.edges.len());
                                for &id in &e0 {
                                    if self.edges[id].label.kind == kind {
                                        sum.xor_assign(&self.delta(id).unwrap());
                                    }
                                }
                                if solve_in_span(&sum, &span).is_none() {
                                    sums_ok = false;
                                    witness = format!(
                                        "sum of {}-type face chains escapes span{{x1, x2, x4}}",
                                        kind.letter()
                                    );
                                }
                            }
                            report.push(CheckResult::from_outcome(
                                "delta_sum_identities",
                                sums_ok,
                                witness,
                            ));
                        }
                        Err(e) => {
                            report.push(CheckResult::fail("delta_kernel_basis", e.to_string()));
                            report.push(CheckResult::fail("delta_sum_identities", "unavailable"));
                        }
                    }
                } else {
                    report.push(CheckResult::fail(
                        "delta_kernel_basis",
                        "Hamiltonian cycle unavailable",
                    ));
                    report.push(CheckResult::fail(
                        "delta_sum_identities",
                        "Hamiltonian cycle unavailable",
                    ));
                }
            }
            Err(e) => {
                report.push(CheckResult::fail("relation_identities", e.to_string()));
                for name in [
                    "relation_pairing_trivial",
                    "relation_adjacency_profile",
                    "kernel_dimension",
                    "image_dimension",
                    "image_equals_even_vectors",
                    "delta_kernel_basis",
                    "delta_sum_identities",
                ] {
                    report.push(CheckResult::fail(name, "relations unavailable"));
                }
            }
        }

        report
    }
}

impl fmt::Debug for SpectralGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SpectralGraph {{ genus: {}, vertices: {}, edges: {}, faces: {} }}",
            self.genus,
            self.vertex_count,
            self.edges.len(),
            self.faces.len()
        )
    }
}
