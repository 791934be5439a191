//! Orbits of the monodromy group on P[2] and the component census.
//!
//! Points of P[2] split as (s, x) with s the 2g section coordinates and x
//! the 4g-6 permutation coordinates; a group element sends (s, x) to
//! (s + Ax, pi x). Orbits are enumerated exhaustively for genus 3..5 by a
//! breadth-first sweep over all 2^(6g-6) packed points; beyond that the
//! census comes from the complete orbit invariant.

use std::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::graph::SpectralGraph;
use crate::monodromy::{block_decompose, generators, AdaptedBasis};

/// Largest genus for which the exhaustive sweep is attempted; the state
/// space is 2^(6g-6) packed points (16 MiB of visited bits at genus 5).
pub const MAX_ENUMERATION_GENUS: usize = 5;

/// A point of P[2] in adapted coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Point {
    pub s_part: BitVec,
    pub x_part: BitVec,
}

impl P2Point {
    pub fn zero(genus: usize) -> Self {
        Self {
            s_part: BitVec::zeros(2 * genus),
            x_part: BitVec::zeros(4 * genus - 6),
        }
    }

    pub fn from_packed(genus: usize, packed: u64) -> Self {
        let s_bits = 2 * genus;
        let x_bits = 4 * genus - 6;
        let mut s_part = BitVec::zeros(s_bits);
        let mut x_part = BitVec::zeros(x_bits);
        for i in 0..s_bits {
            if (packed >> i) & 1 == 1 {
                s_part.set(i, true);
            }
        }
        for i in 0..x_bits {
            if (packed >> (s_bits + i)) & 1 == 1 {
                x_part.set(i, true);
            }
        }
        Self { s_part, x_part }
    }

    pub fn packed(&self) -> u64 {
        let mut out = 0u64;
        for i in self.s_part.iter_ones() {
            out |= 1 << i;
        }
        for i in self.x_part.iter_ones() {
            out |= 1 << (self.s_part.len() + i);
        }
        out
    }

    /// Coordinates rendered as a bit string, section part first.
    pub fn to_bit_string(&self) -> String {
        format!("{}{}", self.s_part, self.x_part)
    }
}

/// Complete orbit invariant: section points are fixed individually; any
/// other orbit is determined by half the weight of the minimal lift of the
/// permutation part to the vertex space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClassLabel {
    Section { s: String },
    Weight { m: usize },
}

/// Classifies a point: x = 0 gives its section class, otherwise the weight
/// class m with 2m the minimal weight among the two vertex-space lifts of
/// the boundary of the x part.
pub fn classify(graph: &SpectralGraph, basis: &AdaptedBasis, point: &P2Point) -> ClassLabel {
    if point.x_part.is_zero() {
        return ClassLabel::Section {
            s: point.s_part.to_string(),
        };
    }
    let dim = graph.edges().len();
    let mut chain = BitVec::zeros(dim);
    for (i, v) in basis.vectors[basis.split..].iter().enumerate() {
        if point.x_part.get(i) {
            chain.xor_assign(v);
        }
    }
    let w = graph.boundary(&chain).weight();
    let n = graph.vertex_count();
    ClassLabel::Weight {
        m: w.min(n - w) / 2,
    }
}

/// Euler class of a label: weight class m maps to k = g-1-m, section
/// classes sit at the extremal k = g-1.
pub fn euler_class(label: &ClassLabel, genus: usize) -> usize {
    match label {
        ClassLabel::Section { .. } => genus - 1,
        ClassLabel::Weight { m } => genus - 1 - m,
    }
}

/// One orbit (or, in census mode, one class of orbits).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitEntry {
    /// Packed bit string of the minimal point, present in enumerate mode.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representative: Option<String>,
    pub size: String,
    pub label: ClassLabel,
    pub euler_class: usize,
    /// Number of orbits sharing this entry (1 in enumerate mode).
    pub orbit_count: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitReport {
    pub genus: usize,
    pub mode: String,
    pub orbit_count: String,
    pub total_points: String,
    /// Present in classify mode when the state space rules the sweep out.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<String>,
    pub orbits: Vec<OrbitEntry>,
}

impl OrbitReport {
    pub fn orbit_count_value(&self) -> BigUint {
        self.orbit_count.parse().expect("decimal orbit count")
    }
}

fn binomial(n: usize, k: usize) -> BigUint {
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Generator action tables on packed points: for every x bit, the XOR mask
/// its column contributes to the next point.
struct PackedAction {
    s_bits: usize,
    s_mask: u64,
    /// per x-coordinate: (A column into the s bits) | (pi column into the x bits)
    columns: Vec<u64>,
}

impl PackedAction {
    fn apply(&self, point: u64) -> u64 {
        let mut out = point & self.s_mask;
        let mut x = point >> self.s_bits;
        let mut i = 0;
        while x != 0 {
            let skip = x.trailing_zeros() as usize;
            i += skip;
            out ^= self.columns[i];
            x >>= skip + 1;
            i += 1;
        }
        out
    }
}

fn packed_actions(graph: &SpectralGraph, basis: &AdaptedBasis) -> Result<Vec<PackedAction>> {
    let s_bits = basis.split;
    let x_bits = basis.p2_dim() - basis.split;
    let s_mask = (1u64 << s_bits) - 1;
    let mut actions = Vec::new();
    for elt in generators(graph)? {
        let block = block_decompose(graph, &elt, basis)?;
        let mut columns = Vec::with_capacity(x_bits);
        for c in 0..x_bits {
            let mut mask = 0u64;
            for r in 0..s_bits {
                if block.a.get(r, c) {
                    mask |= 1 << r;
                }
            }
            for r in 0..x_bits {
                if block.pi.get(r, c) {
                    mask |= 1 << (s_bits + r);
                }
            }
            columns.push(mask);
        }
        actions.push(PackedAction {
            s_bits,
            s_mask,
            columns,
        });
    }
    Ok(actions)
}

/// Concurrent idempotent visited set over packed points.
struct VisitedSet {
    words: Vec<AtomicU64>,
}

impl VisitedSet {
    fn new(size: u64) -> Self {
        let words = (size as usize).div_ceil(64);
        Self {
            words: (0..words).map(|_| AtomicU64::new(0)).collect(),
        }
    }

    /// Marks a point; true if it was new.
    fn insert(&self, point: u64) -> bool {
        let word = (point / 64) as usize;
        let mask = 1u64 << (point % 64);
        self.words[word].fetch_or(mask, Ordering::Relaxed) & mask == 0
    }

    fn contains(&self, point: u64) -> bool {
        let word = (point / 64) as usize;
        let mask = 1u64 << (point % 64);
        self.words[word].load(Ordering::Relaxed) & mask != 0
    }
}

/// Exhaustively enumerates the orbits on all 2^(6g-6) points.
///
/// `threads` splits each breadth-first frontier across worker threads; the
/// result is canonical (orbits sorted by minimal representative) and does
/// not depend on the schedule.
pub fn enumerate(
    graph: &SpectralGraph,
    basis: &AdaptedBasis,
    threads: usize,
) -> Result<OrbitReport> {
    let genus = graph.genus();
    if genus > MAX_ENUMERATION_GENUS {
        return Err(Error::Construction(format!(
            "exhaustive enumeration is capped at genus {MAX_ENUMERATION_GENUS}; \
             use the classify mode for genus {genus}"
        )));
    }
    let dim = 6 * genus - 6;
    let total: u64 = 1 << dim;
    let actions = packed_actions(graph, basis)?;
    let visited = VisitedSet::new(total);
    let threads = threads.max(1);

    // lexicographic order on coordinate strings = numeric order after
    // reversing the packed bits
    let lex_key = |p: u64| p.reverse_bits() >> (64 - dim);

    let mut orbits = Vec::new();
    for seed in 0..total {
        if visited.contains(seed) {
            continue;
        }
        visited.insert(seed);
        let mut orbit_size = 1u64;
        let mut rep = seed;
        let mut frontier = vec![seed];
        while !frontier.is_empty() {
            let next: Vec<u64> = if threads == 1 || frontier.len() < 1024 {
                expand(&frontier, &actions, &visited)
            } else {
                let chunk = frontier.len().div_ceil(threads);
                std::thread::scope(|scope| {
                    let handles: Vec<_> = frontier
                        .chunks(chunk)
                        .map(|part| scope.spawn(|| expand(part, &actions, &visited)))
                        .collect();
                    let mut merged = Vec::new();
                    for h in handles {
                        merged.extend(h.join().expect("worker panicked"));
                    }
                    merged
                })
            };
            orbit_size += next.len() as u64;
            for &p in &next {
                if lex_key(p) < lex_key(rep) {
                    rep = p;
                }
            }
            frontier = next;
        }
        let point = P2Point::from_packed(genus, rep);
        let label = classify(graph, basis, &point);
        let euler = euler_class(&label, genus);
        orbits.push(OrbitEntry {
            representative: Some(point.to_bit_string()),
            size: orbit_size.to_string(),
            label,
            euler_class: euler,
            orbit_count: "1".into(),
        });
    }
    orbits.sort_by(|a, b| a.representative.cmp(&b.representative));

    let sum: u64 = orbits.iter().map(|o| o.size.parse::<u64>().unwrap()).sum();
    if sum != total {
        return Err(Error::Construction(format!(
            "orbit sizes sum to {sum}, expected {total}"
        )));
    }
    Ok(OrbitReport {
        genus,
        mode: "enumerate".into(),
        orbit_count: orbits.len().to_string(),
        total_points: total.to_string(),
        enumeration: None,
        orbits,
    })
}

fn expand(frontier: &[u64], actions: &[PackedAction], visited: &VisitedSet) -> Vec<u64> {
    let mut next = Vec::new();
    for &point in frontier {
        for action in actions {
            let image = action.apply(point);
            if visited.insert(image) {
                next.push(image);
            }
        }
    }
    next
}

/// Census from the complete invariant, without touching the state space:
/// 2^2g singleton section orbits plus one weight-m orbit for m = 1..g-1.
pub fn classified_census(genus: usize) -> OrbitReport {
    let g = genus;
    let sections = BigUint::from(2u32).pow(2 * g as u32);
    let mut orbits = vec![OrbitEntry {
        representative: None,
        size: "1".into(),
        label: ClassLabel::Section { s: "*".into() },
        euler_class: g - 1,
        orbit_count: sections.to_string(),
    }];
    let n = 4 * g - 4;
    for m in 1..=g - 1 {
        // orbit: all s values times the vertex-weight-2m classes mod complement
        let classes = if 2 * m == n / 2 {
            binomial(n, 2 * m) / BigUint::from(2u32)
        } else {
            binomial(n, 2 * m)
        };
        let size = classes * sections.clone();
        orbits.push(OrbitEntry {
            representative: None,
            size: size.to_string(),
            label: ClassLabel::Weight { m },
            euler_class: g - 1 - m,
            orbit_count: "1".into(),
        });
    }
    let orbit_count = sections + BigUint::from(g - 1);
    let total = BigUint::from(2u32).pow((6 * g - 6) as u32);

    // the census must exhaust the space
    let mut sum = BigUint::default();
    for o in &orbits {
        let size: BigUint = o.size.parse().unwrap();
        let count: BigUint = o.orbit_count.parse().unwrap();
        sum += size * count;
    }
    assert_eq!(sum, total, "census does not exhaust P[2]");

    OrbitReport {
        genus,
        mode: "classify".into(),
        orbit_count: orbit_count.to_string(),
        total_points: total.to_string(),
        enumeration: (genus > MAX_ENUMERATION_GENUS)
            .then(|| "skipped: state space too large".to_string()),
        orbits,
    }
}

/// Connected-component counts of the real moduli space.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentCount {
    pub genus: usize,
    /// Orbit count 2^2g + g - 1: components visible inside the complex space.
    pub as_complex: String,
    /// 2 * 2^2g + 2g - 3: all components, negative Euler classes included.
    pub full_real: String,
}

/// Evaluates both closed-form counts and cross-checks full_real against the
/// Euler-class decomposition 1 + 2(g-2) + 2 * 2^2g.
pub fn component_count(genus: usize) -> Result<ComponentCount> {
    if genus < 2 {
        return Err(Error::UnsupportedGenus(genus));
    }
    let g = genus as u32;
    let two_pow = BigUint::from(2u32).pow(2 * g);
    let as_complex = two_pow.clone() + BigUint::from(genus - 1);
    let full_real =
        BigUint::from(2u32) * two_pow.clone() + BigUint::from(2 * genus) - BigUint::from(3u32);
    let decomposition =
        BigUint::from(1u32) + BigUint::from(2 * (genus - 2)) + BigUint::from(2u32) * two_pow;
    if full_real != decomposition {
        return Err(Error::Construction(format!(
            "component decomposition sums to {decomposition}, formula gives {full_real}"
        )));
    }
    Ok(ComponentCount {
        genus,
        as_complex: as_complex.to_string(),
        full_real: full_real.to_string(),
    })
}
