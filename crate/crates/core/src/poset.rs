//! The explicit left weak order on a finite classical Coxeter group (or an
//! interval of one), plus the generic ranked-poset machinery used as the
//! brute-force oracle: Möbius tables, characteristic polynomials, meets and
//! joins, descent classes, interval extraction and product posets.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::GenSet;
use crate::model::{longest_element_of_parabolic, GroupElement, Model};
use crate::poly::IntPolynomial;

/// Default cap on the number of enumerated group elements.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// Reachability matrices are refused beyond this many elements
/// (they need about n²/8 bytes).
const CLOSURE_LIMIT: usize = 65_536;

/// A plain bitset over element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bitset {
    words: Vec<u64>,
    len: usize,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn union_with(&mut self, other: &Bitset) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w |= o;
        }
    }

    pub fn and(&self, other: &Bitset) -> Bitset {
        Bitset {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & b)
                .collect(),
            len: self.len,
        }
    }

    pub fn is_subset_of(&self, other: &Bitset) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let b = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// Möbius values μ(0̂, t) indexed by element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MobiusTable {
    pub values: Vec<i64>,
}

/// A finite graded poset with a bottom element, stored as cover lists.
///
/// Ranks increase by exactly 1 along covers and `bottom` is the unique
/// minimal element. Reachability closures are computed lazily and shared;
/// a finished poset is immutable and safe to query from many threads.
#[derive(Debug)]
pub struct RankedPoset {
    pub ranks: Vec<u32>,
    pub up_covers: Vec<Vec<u32>>,
    pub down_covers: Vec<Vec<u32>>,
    pub bottom: usize,
    pub top: Option<usize>,
    down_closure: OnceLock<Vec<Bitset>>,
    up_closure: OnceLock<Vec<Bitset>>,
}

impl RankedPoset {
    pub fn new(
        ranks: Vec<u32>,
        up_covers: Vec<Vec<u32>>,
        bottom: usize,
        top: Option<usize>,
    ) -> Self {
        let mut down_covers = vec![Vec::new(); ranks.len()];
        for (u, ups) in up_covers.iter().enumerate() {
            for &v in ups {
                down_covers[v as usize].push(u as u32);
            }
        }
        RankedPoset {
            ranks,
            up_covers,
            down_covers,
            bottom,
            top,
            down_closure: OnceLock::new(),
            up_closure: OnceLock::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Rank of the poset: the common length of maximal chains.
    pub fn poset_rank(&self) -> u32 {
        self.ranks.iter().copied().max().unwrap_or(0)
    }

    /// Element indices in rank order (ties by index), the order in which
    /// Möbius recursions run.
    fn rank_order(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.len()).collect();
        idx.sort_by_key(|&i| (self.ranks[i], i));
        idx
    }

    /// Upward closure of `u` (inclusive), by BFS over covers.
    pub fn up_set(&self, u: usize) -> Bitset {
        self.closure_from(u, &self.up_covers)
    }

    /// Downward closure of `w` (inclusive).
    pub fn down_set(&self, w: usize) -> Bitset {
        self.closure_from(w, &self.down_covers)
    }

    fn closure_from(&self, start: usize, covers: &[Vec<u32>]) -> Bitset {
        let mut seen = Bitset::new(self.len());
        seen.set(start);
        let mut queue = vec![start];
        while let Some(x) = queue.pop() {
            for &y in &covers[x] {
                let y = y as usize;
                if !seen.get(y) {
                    seen.set(y);
                    queue.push(y);
                }
            }
        }
        seen
    }

    pub fn is_leq(&self, u: usize, w: usize) -> bool {
        if self.ranks[u] > self.ranks[w] {
            return false;
        }
        self.up_set(u).get(w)
    }

    /// Inclusive downward closure of every element, cached.
    pub fn down_closure(&self) -> &Vec<Bitset> {
        self.down_closure.get_or_init(|| {
            assert!(
                self.len() <= CLOSURE_LIMIT,
                "reachability matrix refused for {} elements (limit {CLOSURE_LIMIT})",
                self.len()
            );
            let mut table = vec![Bitset::new(self.len()); self.len()];
            for &y in &self.rank_order() {
                let mut set = Bitset::new(self.len());
                set.set(y);
                for &c in &self.down_covers[y] {
                    set.union_with(&table[c as usize]);
                }
                table[y] = set;
            }
            table
        })
    }

    /// Inclusive upward closure of every element, cached.
    pub fn up_closure(&self) -> &Vec<Bitset> {
        self.up_closure.get_or_init(|| {
            assert!(
                self.len() <= CLOSURE_LIMIT,
                "reachability matrix refused for {} elements (limit {CLOSURE_LIMIT})",
                self.len()
            );
            let mut table = vec![Bitset::new(self.len()); self.len()];
            for &y in self.rank_order().iter().rev() {
                let mut set = Bitset::new(self.len());
                set.set(y);
                for &c in &self.up_covers[y] {
                    set.union_with(&table[c as usize]);
                }
                table[y] = set;
            }
            table
        })
    }

    /// μ(0̂, t) for every t, by the defining recurrence in rank order.
    pub fn mobius_table(&self) -> MobiusTable {
        let down = self.down_closure();
        let mut values = vec![0i64; self.len()];
        for &y in &self.rank_order() {
            if y == self.bottom {
                values[y] = 1;
                continue;
            }
            let mut sum = 0i64;
            for t in down[y].iter_ones() {
                if t != y {
                    sum += values[t];
                }
            }
            values[y] = -sum;
        }
        MobiusTable { values }
    }

    /// χ_P(q) = Σ_t μ(0̂, t) q^{rank(P) − rank(t)}.
    pub fn char_poly(&self) -> IntPolynomial {
        let mu = self.mobius_table();
        let top_rank = self.poset_rank() as u64;
        let mut out = IntPolynomial::zero();
        for (t, &m) in mu.values.iter().enumerate() {
            out.add_term(top_rank - self.ranks[t] as u64, &BigInt::from(m));
        }
        out
    }

    /// χ̂_P(q) = Σ_t μ(0̂, t) q^{rank(t)}.
    pub fn modified_char_poly(&self) -> IntPolynomial {
        let mu = self.mobius_table();
        let mut out = IntPolynomial::zero();
        for (t, &m) in mu.values.iter().enumerate() {
            out.add_term(self.ranks[t] as u64, &BigInt::from(m));
        }
        out
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, x: usize, y: usize) -> Result<usize> {
        let up = self.up_closure();
        self.unique_extremum(up[x].and(&up[y]), up, true)
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, x: usize, y: usize) -> Result<usize> {
        let down = self.down_closure();
        self.unique_extremum(down[x].and(&down[y]), down, false)
    }

    fn unique_extremum(
        &self,
        candidates: Bitset,
        closures: &[Bitset],
        minimize_rank: bool,
    ) -> Result<usize> {
        let mut best: Option<usize> = None;
        let mut tie = false;
        for t in candidates.iter_ones() {
            match best {
                None => best = Some(t),
                Some(b) => {
                    let better = if minimize_rank {
                        self.ranks[t] < self.ranks[b]
                    } else {
                        self.ranks[t] > self.ranks[b]
                    };
                    if better {
                        best = Some(t);
                        tie = false;
                    } else if self.ranks[t] == self.ranks[b] {
                        tie = true;
                    }
                }
            }
        }
        match best {
            Some(b) if !tie && candidates.is_subset_of(&closures[b]) => Ok(b),
            _ => Err(Error::NotALattice),
        }
    }

    /// Direct product, ranks adding. Pairs `(i, j)` map to index `i·|Q| + j`.
    pub fn product(&self, other: &RankedPoset) -> RankedPoset {
        let (np, nq) = (self.len(), other.len());
        let mut ranks = vec![0u32; np * nq];
        let mut up = vec![Vec::new(); np * nq];
        for i in 0..np {
            for j in 0..nq {
                let id = i * nq + j;
                ranks[id] = self.ranks[i] + other.ranks[j];
                for &i2 in &self.up_covers[i] {
                    up[id].push(i2 * nq as u32 + j as u32);
                }
                for &j2 in &other.up_covers[j] {
                    up[id].push(i as u32 * nq as u32 + j2);
                }
            }
        }
        let top = match (self.top, other.top) {
            (Some(a), Some(b)) => Some(a * nq + b),
            _ => None,
        };
        RankedPoset::new(ranks, up, self.bottom * nq + other.bottom, top)
    }
}

/// The left weak order on a finite classical group, or an interval of one.
///
/// Elements are interned into an index space at BFS time; covers are exactly
/// the pairs `(u, s·u)` with `l(s·u) = l(u) + 1`.
#[derive(Debug)]
pub struct WeakOrderPoset {
    pub structure: RankedPoset,
    pub model: Model,
    elements: Vec<GroupElement>,
    index: HashMap<Vec<i32>, u32>,
    descents: OnceLock<Vec<GenSet>>,
}

impl WeakOrderPoset {
    /// Enumerate the whole group by BFS from the identity over left
    /// multiplication, keeping length-increasing edges.
    pub fn build(model: Model, cap: Option<usize>) -> Result<WeakOrderPoset> {
        let cap = cap.unwrap_or(DEFAULT_ELEMENT_CAP);
        let order = model.order();
        if order > cap as u128 {
            return Err(Error::BudgetExceeded { order, cap });
        }
        let gens: Vec<GroupElement> = model
            .generators()
            .iter()
            .map(|i| GroupElement::generator(model, i).unwrap())
            .collect();

        let mut elements = vec![GroupElement::identity(model)];
        let mut lengths = vec![0u64];
        let mut index: HashMap<Vec<i32>, u32> = HashMap::new();
        index.insert(elements[0].window().to_vec(), 0);
        let mut up_covers: Vec<Vec<u32>> = vec![Vec::new()];

        let mut cursor = 0;
        while cursor < elements.len() {
            let len_u = lengths[cursor];
            for s in &gens {
                let v = s.multiply(&elements[cursor]).unwrap();
                let len_v = v.length();
                if len_v != len_u + 1 {
                    continue;
                }
                let iv = match index.get(v.window()) {
                    Some(&iv) => iv,
                    None => {
                        let iv = elements.len() as u32;
                        index.insert(v.window().to_vec(), iv);
                        elements.push(v);
                        lengths.push(len_v);
                        up_covers.push(Vec::new());
                        iv
                    }
                };
                up_covers[cursor].push(iv);
            }
            cursor += 1;
        }
        debug_assert_eq!(elements.len() as u128, order);

        let ranks: Vec<u32> = lengths.iter().map(|&l| l as u32).collect();
        let max_rank = ranks.iter().copied().max().unwrap();
        let tops: Vec<usize> = (0..ranks.len()).filter(|&i| ranks[i] == max_rank).collect();
        let top = (tops.len() == 1).then(|| tops[0]);
        Ok(WeakOrderPoset {
            structure: RankedPoset::new(ranks, up_covers, 0, top),
            model,
            elements,
            index,
            descents: OnceLock::new(),
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w.window()).map(|&i| i as usize)
    }

    pub fn bottom(&self) -> usize {
        self.structure.bottom
    }

    /// Index of the top element (always present for a full group).
    pub fn top(&self) -> Option<usize> {
        self.structure.top
    }

    pub fn rank_of(&self, i: usize) -> u32 {
        self.structure.ranks[i]
    }

    /// Right descent sets of every element, computed once.
    pub fn right_descent_sets(&self) -> &Vec<GenSet> {
        self.descents.get_or_init(|| {
            self.elements
                .iter()
                .map(GroupElement::right_descents)
                .collect()
        })
    }

    /// Index of w₀(J).
    pub fn longest_parabolic(&self, j_set: GenSet) -> Result<usize> {
        let w0 = longest_element_of_parabolic(self.model, j_set)?;
        Ok(self.index_of(&w0).expect("w0(J) lies in the full group"))
    }

    /// The induced subposet on `{t : u <= t <= w}`, re-ranked from `u`.
    pub fn interval(&self, u: usize, w: usize) -> Result<WeakOrderPoset> {
        let up = self.structure.up_set(u);
        if !up.get(w) {
            return Err(Error::NotComparable);
        }
        let down = self.structure.down_set(w);
        let carrier: Vec<usize> = up.and(&down).iter_ones().collect();

        let mut old_to_new: HashMap<usize, u32> = HashMap::new();
        for (new, &old) in carrier.iter().enumerate() {
            old_to_new.insert(old, new as u32);
        }
        let base_rank = self.structure.ranks[u];
        let mut ranks = Vec::with_capacity(carrier.len());
        let mut up_covers = vec![Vec::new(); carrier.len()];
        let mut elements = Vec::with_capacity(carrier.len());
        let mut index = HashMap::new();
        for (new, &old) in carrier.iter().enumerate() {
            ranks.push(self.structure.ranks[old] - base_rank);
            elements.push(self.elements[old].clone());
            index.insert(self.elements[old].window().to_vec(), new as u32);
            for &t in &self.structure.up_covers[old] {
                if let Some(&t_new) = old_to_new.get(&(t as usize)) {
                    up_covers[new].push(t_new);
                }
            }
        }
        let bottom = old_to_new[&u] as usize;
        let top = old_to_new[&w] as usize;
        Ok(WeakOrderPoset {
            structure: RankedPoset::new(ranks, up_covers, bottom, Some(top)),
            model: self.model,
            elements,
            index,
            descents: OnceLock::new(),
        })
    }

    /// Đ_I^J = {w : I ⊆ D_R(w) ⊆ J}, as sorted element indices.
    pub fn descent_class(&self, i_set: GenSet, j_set: GenSet) -> Result<Vec<usize>> {
        let gens = self.model.generators();
        if !i_set.is_subset_of(j_set) || !j_set.is_subset_of(gens) {
            return Err(Error::DescentSetsNotNested { i_set, j_set });
        }
        Ok(self
            .right_descent_sets()
            .iter()
            .enumerate()
            .filter(|(_, d)| i_set.is_subset_of(**d) && d.is_subset_of(j_set))
            .map(|(i, _)| i)
            .collect())
    }

    /// μ(u, w) by the closed form: with v = w·u⁻¹ and J = D_R(v), the value
    /// is (−1)^{|J|} if v = w₀(J) and 0 otherwise.
    pub fn mobius_closed_form(&self, u: usize, w: usize) -> Result<i64> {
        if !self.structure.is_leq(u, w) {
            return Err(Error::NotComparable);
        }
        let v = self.elements[w]
            .multiply(&self.elements[u].inverse())
            .unwrap();
        let j_set = v.right_descents();
        let w0j = longest_element_of_parabolic(self.model, j_set).unwrap();
        if w0j == v {
            Ok(if j_set.len().is_multiple_of(2) { 1 } else { -1 })
        } else {
            Ok(0)
        }
    }

    /// μ(u, w) by the defining recurrence on the interval subposet.
    pub fn mobius_via_interval(&self, u: usize, w: usize) -> Result<i64> {
        let interval = self.interval(u, w)?;
        let table = interval.structure.mobius_table();
        Ok(table.values[interval.structure.top.unwrap()])
    }

    /// w₀(D_R(w)): the unique maximal parabolic longest element below `w`.
    pub fn max_parabolic_below(&self, w: usize) -> usize {
        let j_set = self.right_descent_sets()[w];
        self.longest_parabolic(j_set).unwrap()
    }

    /// Check that t ↦ t·u⁻¹ is a rank-preserving poset isomorphism from
    /// [u, w] onto [e, w·u⁻¹]. Intended for full-group posets.
    pub fn lower_interval_isomorphism_check(&self, u: usize, w: usize) -> Result<bool> {
        let a = self.interval(u, w)?;
        let v = self.elements[w]
            .multiply(&self.elements[u].inverse())
            .unwrap();
        let v_idx = self.index_of(&v).expect("w·u⁻¹ lies in the full group");
        let b = self.interval(self.bottom(), v_idx)?;
        if a.len() != b.len() {
            return Ok(false);
        }
        let u_inv = self.elements[u].inverse();
        // image of each element of A, as an index into B
        let mut image = Vec::with_capacity(a.len());
        for t in a.elements() {
            let mapped = t.multiply(&u_inv).unwrap();
            match b.index_of(&mapped) {
                Some(i) => image.push(i),
                None => return Ok(false),
            }
        }
        // rank-preserving bijection
        let mut seen = vec![false; b.len()];
        for (ia, &ib) in image.iter().enumerate() {
            if seen[ib] || a.structure.ranks[ia] != b.structure.ranks[ib] {
                return Ok(false);
            }
            seen[ib] = true;
        }
        // covers map to covers; equal edge counts make it bidirectional
        let edges_a: usize = a.structure.up_covers.iter().map(Vec::len).sum();
        let edges_b: usize = b.structure.up_covers.iter().map(Vec::len).sum();
        if edges_a != edges_b {
            return Ok(false);
        }
        for (ia, ups) in a.structure.up_covers.iter().enumerate() {
            for &ja in ups {
                if !b.structure.up_covers[image[ia]].contains(&(image[ja as usize] as u32)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn char_poly(&self) -> IntPolynomial {
        self.structure.char_poly()
    }

    /// Text dump, one line per element:
    /// `rank <r>: <window> -> covers: <window>, ...`, sorted by (rank, window).
    pub fn dump(&self) -> String {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&i| (self.structure.ranks[i], self.elements[i].window().to_vec()));
        let mut out = String::new();
        for &i in &order {
            let mut covers: Vec<String> = self.structure.up_covers[i]
                .iter()
                .map(|&j| self.elements[j as usize].to_string())
                .collect();
            covers.sort();
            out.push_str(&format!(
                "rank {}: {} -> covers: {}\n",
                self.structure.ranks[i],
                self.elements[i],
                covers.join(", ")
            ));
        }
        out
    }
}

/// χ of a one-element poset is 1; kept here so callers can avoid building
/// degenerate posets.
pub fn singleton_char_poly() -> IntPolynomial {
    IntPolynomial::monomial(0, BigInt::one())
}
