//! Coxeter graphs of the classical families A/B/D and the affine families
//! Ã/B̃/C̃/D̃, with shape-based classification of induced subgraphs.
//!
//! Generator indexing conventions:
//! - `A_n`: path s1–s2–…–sn, all edge labels 3.
//! - `B_n`: path s1–…–sn with the single 4-label on {s(n-1), sn}.
//! - `D_n`: s1 and s2 both joined to s3, then the path s3–…–sn.
//! - `Ã_n`: the (n+1)-cycle s1–…–s(n+1)–s1.
//! - `B̃_n`: B_n plus s0 joined to s2 (fork at s2, 4-label stays at the far end).
//! - `C̃_n`: path s0–…–sn with 4-labels on both end edges.
//! - `D̃_n`: forks at both ends: s0, s1 joined to s2, path s2–…–s(n-2),
//!   s(n-1) and sn joined to s(n-2).
//!
//! Every connected induced subgraph of these graphs, other than a full affine
//! generator set, is a path, a path with one terminal 4-label, or a fork —
//! i.e. of type A/B/D — so classification is by labeled shape in O(|J|).

use std::fmt;

use crate::error::{Error, Result};

/// The seven supported families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    D,
    AffA,
    AffB,
    AffC,
    AffD,
}

impl Family {
    pub fn is_affine(self) -> bool {
        matches!(
            self,
            Family::AffA | Family::AffB | Family::AffC | Family::AffD
        )
    }

    /// Smallest supported rank.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A => 1,
            Family::B | Family::D => 2,
            Family::AffA | Family::AffC => 2,
            Family::AffB => 3,
            Family::AffD => 4,
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Some(Family::A),
            "b" => Some(Family::B),
            "d" => Some(Family::D),
            "affa" | "~a" | "atilde" => Some(Family::AffA),
            "affb" | "~b" | "btilde" => Some(Family::AffB),
            "affc" | "~c" | "ctilde" => Some(Family::AffC),
            "affd" | "~d" | "dtilde" => Some(Family::AffD),
            _ => None,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::D => "D",
            Family::AffA => "AffA",
            Family::AffB => "AffB",
            Family::AffC => "AffC",
            Family::AffD => "AffD",
        };
        write!(f, "{s}")
    }
}

/// A set of generator indices (0..=63) as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct GenSet(pub u64);

impl GenSet {
    pub const EMPTY: GenSet = GenSet(0);

    pub fn single(i: usize) -> Self {
        debug_assert!(i < 64);
        GenSet(1 << i)
    }

    pub fn range(lo: usize, hi: usize) -> Self {
        (lo..=hi).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < 64);
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: GenSet) -> GenSet {
        GenSet(self.0 | other.0)
    }

    pub fn intersection(self, other: GenSet) -> GenSet {
        GenSet(self.0 & other.0)
    }

    pub fn difference(self, other: GenSet) -> GenSet {
        GenSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: GenSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (!self.is_empty()).then(|| self.0.trailing_zeros() as usize)
    }

    /// Indices in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// Parse a comma-separated index list such as `2,4` (empty string = ∅).
    pub fn parse(s: &str) -> Option<GenSet> {
        let s = s.trim();
        if s.is_empty() {
            return Some(GenSet::EMPTY);
        }
        let mut out = GenSet::EMPTY;
        for part in s.split(',') {
            let i: usize = part.trim().parse().ok()?;
            if i >= 64 {
                return None;
            }
            out.insert(i);
        }
        Some(out)
    }
}

impl FromIterator<usize> for GenSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = GenSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for GenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for i in self.iter() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Recognized type of one connected component of an induced subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ComponentKind {
    /// Plain path on `m` nodes (includes the degenerate B_1, D_2, D_3 shapes).
    A(usize),
    /// Path on `m >= 2` nodes with a terminal 4-label.
    B(usize),
    /// Fork on `m >= 4` nodes: two tips on a branch node plus a path.
    D(usize),
}

impl ComponentKind {
    /// Length of the longest element of the corresponding finite group.
    pub fn w0_length(self) -> u64 {
        match self {
            ComponentKind::A(m) => (m as u64) * (m as u64 + 1) / 2,
            ComponentKind::B(m) => (m as u64) * (m as u64),
            ComponentKind::D(m) => (m as u64) * (m as u64 - 1),
        }
    }

    pub fn size(self) -> usize {
        match self {
            ComponentKind::A(m) | ComponentKind::B(m) | ComponentKind::D(m) => m,
        }
    }
}

impl fmt::Display for ComponentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentKind::A(m) => write!(f, "A_{m}"),
            ComponentKind::B(m) => write!(f, "B_{m}"),
            ComponentKind::D(m) => write!(f, "D_{m}"),
        }
    }
}

/// One maximal connected component of an induced subgraph, classified.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Component {
    pub nodes: GenSet,
    pub kind: ComponentKind,
}

impl Component {
    pub fn w0_length(&self) -> u64 {
        self.kind.w0_length()
    }
}

/// A Coxeter graph of one of the seven supported families.
#[derive(Clone, Debug)]
pub struct CoxeterGraph {
    pub family: Family,
    pub rank: usize,
    nodes: GenSet,
    /// Adjacency bitmask per node index.
    neighbor_mask: Vec<u64>,
    /// Edges `(u, v, label)` with `u < v`, label in {3, 4}.
    edges: Vec<(usize, usize, u8)>,
}

impl CoxeterGraph {
    /// The canonical graph of `family` at Coxeter rank `rank`.
    ///
    /// Affine families have `rank + 1` nodes; finite families have `rank`.
    pub fn build(family: Family, rank: usize) -> Result<CoxeterGraph> {
        let min = family.min_rank();
        if rank < min {
            return Err(Error::RankOutOfRange { family, rank, min });
        }
        let n = rank;
        let mut edges: Vec<(usize, usize, u8)> = Vec::new();
        let nodes: GenSet = match family {
            Family::A => {
                for i in 1..n {
                    edges.push((i, i + 1, 3));
                }
                GenSet::range(1, n)
            }
            Family::B => {
                for i in 1..n {
                    edges.push((i, i + 1, if i == n - 1 { 4 } else { 3 }));
                }
                GenSet::range(1, n)
            }
            Family::D => {
                // D_2 has no edges; D_3 is the path s1–s3–s2.
                if n >= 3 {
                    edges.push((1, 3, 3));
                    edges.push((2, 3, 3));
                    for i in 3..n {
                        edges.push((i, i + 1, 3));
                    }
                }
                GenSet::range(1, n)
            }
            Family::AffA => {
                for i in 1..=n {
                    edges.push((i, i + 1, 3));
                }
                edges.push((1, n + 1, 3));
                GenSet::range(1, n + 1)
            }
            Family::AffB => {
                edges.push((0, 2, 3));
                for i in 1..n {
                    edges.push((i, i + 1, if i == n - 1 { 4 } else { 3 }));
                }
                GenSet::range(0, n)
            }
            Family::AffC => {
                for i in 0..n {
                    let label = if i == 0 || i == n - 1 { 4 } else { 3 };
                    edges.push((i, i + 1, label));
                }
                GenSet::range(0, n)
            }
            Family::AffD => {
                edges.push((0, 2, 3));
                edges.push((1, 2, 3));
                for i in 2..n - 2 {
                    edges.push((i, i + 1, 3));
                }
                edges.push((n - 2, n - 1, 3));
                edges.push((n - 2, n, 3));
                GenSet::range(0, n)
            }
        };
        let max_node = nodes.iter().last().unwrap_or(0);
        let mut neighbor_mask = vec![0u64; max_node + 1];
        for &(u, v, _) in &edges {
            neighbor_mask[u] |= 1 << v;
            neighbor_mask[v] |= 1 << u;
        }
        edges.sort_unstable();
        Ok(CoxeterGraph {
            family,
            rank,
            nodes,
            neighbor_mask,
            edges,
        })
    }

    pub fn nodes(&self) -> GenSet {
        self.nodes
    }

    pub fn edges(&self) -> &[(usize, usize, u8)] {
        &self.edges
    }

    /// m(s, s'): 3 or 4 when joined, 2 when distinct and not joined.
    pub fn edge_label(&self, u: usize, v: usize) -> u8 {
        if u == v {
            return 1;
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .iter()
            .find(|&&(a, b, _)| (a, b) == (u, v))
            .map(|&(_, _, m)| m)
            .unwrap_or(2)
    }

    /// I⁺: all generators joined by an edge to at least one element of `I`
    /// (i.e. not commuting with some element of `I`). May intersect `I`.
    pub fn neighbors_of(&self, i_set: GenSet) -> Result<GenSet> {
        self.check_subset(i_set)?;
        let mut mask = 0u64;
        for i in i_set.iter() {
            mask |= self.neighbor_mask[i];
        }
        Ok(GenSet(mask))
    }

    /// Split `J` into maximal connected components and classify each by shape.
    ///
    /// Components come back sorted by smallest node index. Fails with an
    /// unclassifiable-component error when a component is not of A/B/D shape,
    /// which for the supported families happens only for full affine
    /// generator sets.
    pub fn components_of(&self, j_set: GenSet) -> Result<Vec<Component>> {
        self.check_subset(j_set)?;
        let mut remaining = j_set.0;
        let mut out = Vec::new();
        while remaining != 0 {
            let seed = remaining.trailing_zeros() as u64;
            // flood fill within j_set
            let mut comp = 1u64 << seed;
            loop {
                let mut grown = comp;
                let mut bits = comp;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= self.neighbor_mask[v] & j_set.0;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            remaining &= !comp;
            let nodes = GenSet(comp);
            let kind = self.classify_component(nodes)?;
            out.push(Component { nodes, kind });
        }
        Ok(out)
    }

    /// Sum of the component longest-element lengths; 0 for the empty set.
    pub fn parabolic_w0_length(&self, j_set: GenSet) -> Result<u64> {
        Ok(self
            .components_of(j_set)?
            .iter()
            .map(Component::w0_length)
            .sum())
    }

    fn check_subset(&self, j_set: GenSet) -> Result<()> {
        if !j_set.is_subset_of(self.nodes) {
            return Err(Error::NotInGraph {
                found: j_set.difference(self.nodes),
                nodes: self.nodes,
            });
        }
        Ok(())
    }

    /// Classify one connected node set by labeled shape.
    fn classify_component(&self, comp: GenSet) -> Result<ComponentKind> {
        let m = comp.len();
        if m == 1 {
            return Ok(ComponentKind::A(1));
        }
        let unclassifiable = || Error::UnclassifiableComponent { nodes: comp };

        let mut branch = None;
        let mut leaf_mask = 0u64;
        for v in comp.iter() {
            match (self.neighbor_mask[v] & comp.0).count_ones() {
                0 => return Err(unclassifiable()), // disconnected input bug
                1 => leaf_mask |= 1 << v,
                2 => {}
                3 if branch.is_none() => branch = Some(v),
                _ => return Err(unclassifiable()),
            }
        }
        let four_edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|&&(u, v, l)| l == 4 && comp.contains(u) && comp.contains(v))
            .map(|&(u, v, _)| (u, v))
            .collect();

        match branch {
            Some(b) => {
                // Fork shape: the branch node needs two leaf tips, no 4-labels.
                if !four_edges.is_empty() {
                    return Err(unclassifiable());
                }
                let tips = (self.neighbor_mask[b] & comp.0 & leaf_mask).count_ones();
                if tips < 2 {
                    return Err(unclassifiable());
                }
                Ok(ComponentKind::D(m))
            }
            None => {
                // Path or cycle. A cycle (full affine A set) has no leaves.
                if leaf_mask.count_ones() != 2 {
                    return Err(unclassifiable());
                }
                match four_edges.as_slice() {
                    [] => Ok(ComponentKind::A(m)),
                    [(u, v)] => {
                        let terminal = leaf_mask >> u & 1 == 1 || leaf_mask >> v & 1 == 1;
                        if terminal {
                            Ok(ComponentKind::B(m))
                        } else {
                            Err(unclassifiable())
                        }
                    }
                    _ => Err(unclassifiable()),
                }
            }
        }
    }
}
