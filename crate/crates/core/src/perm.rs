//! Minimal permutation-group engine: composition, adjacent-transposition
//! words, and a deterministic Schreier-Sims stabilizer chain for exact group
//! orders and membership tests. Degrees here stay tiny (at most 4g-4).

use std::fmt;

use num_bigint::BigUint;

/// A permutation of `{0, .., n-1}`; `images[i]` is the image of `i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Self { images })
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Self {
        assert!(a < degree && b < degree, "point out of range");
        let mut p = Self::identity(degree);
        p.images.swap(a, b);
        p
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Function composition: `(p.compose(q))(i) = p(q(i))`, so `q` acts first.
    pub fn compose(&self, q: &Perm) -> Perm {
        assert_eq!(self.degree(), q.degree(), "degree mismatch in composition");
        Perm {
            images: q.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x] = i;
        }
        Perm { images }
    }

    /// Sign of the permutation: false for even, true for odd.
    pub fn is_odd(&self) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut odd = false;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i];
                len += 1;
            }
            if len % 2 == 0 {
                odd = !odd;
            }
        }
        odd
    }

    /// Writes the permutation as a product of adjacent transpositions
    /// `t_i = (i, i+1)`. The returned indices compose left-to-right with the
    /// rightmost factor acting first, matching matrix word order.
    pub fn adjacent_transposition_word(&self) -> Vec<usize> {
        let mut c = self.images.clone();
        let mut swaps = Vec::new();
        // bubble sort; each recorded swap right-multiplies by t_i
        let n = c.len();
        loop {
            let mut moved = false;
            for i in 0..n.saturating_sub(1) {
                if c[i] > c[i + 1] {
                    c.swap(i, i + 1);
                    swaps.push(i);
                    moved = true;
                }
            }
            if !moved {
                break;
            }
        }
        // identity = p . t_{w1} ... t_{wk}, hence p = t_{wk} ... t_{w1}
        swaps.reverse();
        swaps
    }

    /// Cycle notation on 1-based points, e.g. `(1 3)(2 5 4)`; `()` for identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            out.push('(');
            let mut i = start;
            let mut first = true;
            while !seen[i] {
                seen[i] = true;
                if !first {
                    out.push(' ');
                }
                out.push_str(&(i + 1).to_string());
                first = false;
                i = self.images[i];
            }
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.cycle_string())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

/// Stabilizer chain with the fixed base `0, 1, 2, ...`.
///
/// Built once from a generating set, then read-only; gives the exact group
/// order and a membership test by sifting. The level-`i` group is generated
/// by the strong generators fixing `0..i` pointwise, and its transversal
/// records one representative per point of the orbit of `i`.
pub struct StabilizerChain {
    degree: usize,
    strong_gens: Vec<Perm>,
    /// `transversals[i][p]` maps base point `i` to `p` within the level group.
    transversals: Vec<Vec<Option<Perm>>>,
}

impl StabilizerChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Self {
        for g in generators {
            assert_eq!(g.degree(), degree, "degree mismatch in generating set");
        }
        let mut chain = Self {
            degree,
            strong_gens: Vec::new(),
            transversals: Vec::new(),
        };
        for g in generators {
            if !g.is_identity() {
                chain.add_strong_gen(g.clone());
            }
        }
        chain.complete();
        chain
    }

    /// First base point moved by `g`; with the fixed base this is just the
    /// first non-fixed point.
    fn level_of(g: &Perm) -> usize {
        (0..g.degree())
            .find(|&i| g.apply(i) != i)
            .expect("identity has no level")
    }

    fn add_strong_gen(&mut self, g: Perm) -> usize {
        let level = Self::level_of(&g);
        while self.transversals.len() <= level {
            let base = self.transversals.len();
            let mut t = vec![None; self.degree];
            t[base] = Some(Perm::identity(self.degree));
            self.transversals.push(t);
        }
        self.strong_gens.push(g);
        level
    }

    fn gens_fixing_below(&self, level: usize) -> Vec<Perm> {
        self.strong_gens
            .iter()
            .filter(|g| (0..level).all(|b| g.apply(b) == b))
            .cloned()
            .collect()
    }

    fn recompute_transversal(&mut self, level: usize) {
        let gens = self.gens_fixing_below(level);
        let mut t: Vec<Option<Perm>> = vec![None; self.degree];
        t[level] = Some(Perm::identity(self.degree));
        let mut queue = std::collections::VecDeque::from([level]);
        while let Some(p) = queue.pop_front() {
            let rep = t[p].clone().unwrap();
            for g in &gens {
                let q = g.apply(p);
                if t[q].is_none() {
                    t[q] = Some(g.compose(&rep));
                    queue.push_back(q);
                }
            }
        }
        self.transversals[level] = t;
    }

    /// Sifts `g` through levels `from..`; returns the residue.
    fn sift_from(&self, g: &Perm, from: usize) -> Perm {
        let mut h = g.clone();
        for (base, t) in self.transversals.iter().enumerate().skip(from) {
            if h.is_identity() {
                break;
            }
            match &t[h.apply(base)] {
                Some(rep) => h = rep.inverse().compose(&h),
                None => break,
            }
        }
        h
    }

    /// First Schreier generator at `level` that fails to sift, if any.
    fn failing_schreier(&self, level: usize) -> Option<Perm> {
        let gens = self.gens_fixing_below(level);
        let t = &self.transversals[level];
        for p in 0..self.degree {
            let Some(rep) = &t[p] else { continue };
            for g in &gens {
                let target = t[g.apply(p)].as_ref().expect("orbit closed under gens");
                let schreier = target.inverse().compose(&g.compose(rep));
                if schreier.is_identity() {
                    continue;
                }
                let residue = self.sift_from(&schreier, level + 1);
                if !residue.is_identity() {
                    return Some(residue);
                }
            }
        }
        None
    }

    /// Deterministic Schreier-Sims sweep: walks levels from the deepest back
    /// to the top, recomputing each orbit and sifting its Schreier
    /// generators; every failed sift adds a strong generator and restarts at
    /// that generator's level.
    fn complete(&mut self) {
        if self.transversals.is_empty() {
            return;
        }
        let mut i = self.transversals.len() - 1;
        loop {
            self.recompute_transversal(i);
            match self.failing_schreier(i) {
                Some(residue) => {
                    i = self.add_strong_gen(residue);
                }
                None => {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                }
            }
        }
    }

    /// Exact order of the generated group.
    pub fn order(&self) -> BigUint {
        let mut order = BigUint::from(1u32);
        for t in &self.transversals {
            let orbit = t.iter().filter(|r| r.is_some()).count();
            order *= BigUint::from(orbit);
        }
        order
    }

    /// True iff `p` lies in the generated group.
    pub fn contains(&self, p: &Perm) -> bool {
        assert_eq!(p.degree(), self.degree, "degree mismatch in membership");
        self.sift_from(p, 0).is_identity()
    }
}

/// Exact order of the group generated by `generators`.
pub fn group_order(generators: &[Perm]) -> BigUint {
    assert!(!generators.is_empty(), "empty generating set");
    StabilizerChain::new(generators[0].degree(), generators).order()
}

/// Membership of `p` in the group generated by `generators`.
pub fn membership(p: &Perm, generators: &[Perm]) -> bool {
    assert!(!generators.is_empty(), "empty generating set");
    StabilizerChain::new(generators[0].degree(), generators).contains(p)
}
