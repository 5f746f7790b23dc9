//! Concrete realizations of the finite classical Coxeter groups as (signed)
//! permutation windows.
//!
//! An element is stored as its window `(w(1), ..., w(m))`. Composition is
//! `(u∘v)(i) = u(v(i))` with the sign rule `u(-j) = -u(j)`, so right
//! multiplication by a generator acts on positions and left multiplication
//! acts on values.
//!
//! Generator indexing follows the graph conventions in [`crate::graph`]:
//! - `A(n)`: windows of size n+1; generator i swaps i and i+1.
//! - `B(n)`: signed windows of size n; generators 1..n-1 swap, generator n
//!   negates the last position (the 4-label sits on {n-1, n}). The length of
//!   an element is the classical inv+neg+nsp statistic of the *mirrored*
//!   window `m(i) = sign(w(n+1-i))·(n+1-|w(n+1-i)|)`, which matches BFS depth
//!   for this generator choice.
//! - `D(n)`: even-signed windows of size n; generator 1 is the fork generator
//!   acting as "swap and negate" on the first two positions, generator j >= 2
//!   swaps positions j-1 and j. Length is inv+nsp.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{CoxeterGraph, Family, GenSet};

/// Which classical group a window lives in, by Coxeter rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Model {
    A(usize),
    B(usize),
    D(usize),
}

impl Model {
    pub fn new(family: Family, rank: usize) -> Result<Model> {
        let model = match family {
            Family::A => Model::A(rank),
            Family::B => Model::B(rank),
            Family::D => Model::D(rank),
            _ => {
                return Err(Error::UnsupportedFamily {
                    family,
                    reason: "affine groups are never enumerated as element models".into(),
                })
            }
        };
        let min = family.min_rank();
        if rank < min {
            return Err(Error::RankOutOfRange { family, rank, min });
        }
        Ok(model)
    }

    pub fn family(self) -> Family {
        match self {
            Model::A(_) => Family::A,
            Model::B(_) => Family::B,
            Model::D(_) => Family::D,
        }
    }

    /// Number of Coxeter generators.
    pub fn rank(self) -> usize {
        match self {
            Model::A(n) | Model::B(n) | Model::D(n) => n,
        }
    }

    /// Window length.
    pub fn window_size(self) -> usize {
        match self {
            Model::A(n) => n + 1,
            Model::B(n) | Model::D(n) => n,
        }
    }

    /// Generator indices as a set: {1, ..., rank}.
    pub fn generators(self) -> GenSet {
        GenSet::range(1, self.rank())
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(self) -> u128 {
        fn factorial(n: usize) -> u128 {
            (1..=n as u128).fold(1u128, |a, k| a.saturating_mul(k))
        }
        match self {
            Model::A(n) => factorial(n + 1),
            Model::B(n) => {
                factorial(n).saturating_mul(1u128.checked_shl(n as u32).unwrap_or(u128::MAX))
            }
            Model::D(n) => {
                factorial(n)
                    .saturating_mul(1u128.checked_shl((n as u32).saturating_sub(1)).unwrap_or(u128::MAX))
            }
        }
    }

    pub fn graph(self) -> CoxeterGraph {
        CoxeterGraph::build(self.family(), self.rank()).expect("model rank is graph-valid")
    }

    fn name(self) -> String {
        match self {
            Model::A(n) => format!("A({n})"),
            Model::B(n) => format!("B({n})"),
            Model::D(n) => format!("D({n})"),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A group element as a signed window.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupElement {
    model: Model,
    window: Vec<i32>,
}

impl GroupElement {
    pub fn identity(model: Model) -> GroupElement {
        GroupElement {
            model,
            window: (1..=model.window_size() as i32).collect(),
        }
    }

    /// Build from a window, validating the model invariants.
    pub fn from_window(model: Model, window: Vec<i32>) -> Result<GroupElement> {
        let m = model.window_size();
        let invalid = |reason: &str| Error::InvalidWindow {
            model: model.name(),
            window: window.clone(),
            reason: reason.into(),
        };
        if window.len() != m {
            return Err(invalid(&format!("expected {m} entries")));
        }
        let mut seen = vec![false; m + 1];
        for &x in &window {
            let a = x.unsigned_abs() as usize;
            if x == 0 || a > m || seen[a] {
                return Err(invalid("entries must form a signed permutation of 1..=m"));
            }
            seen[a] = true;
        }
        let negatives = window.iter().filter(|&&x| x < 0).count();
        match model {
            Model::A(_) if negatives > 0 => Err(invalid("A-type windows have no signs")),
            Model::D(_) if negatives % 2 == 1 => {
                Err(invalid("D-type windows need an even number of signs"))
            }
            _ => Ok(GroupElement { model, window }),
        }
    }

    /// The generator `s_i` as an element.
    pub fn generator(model: Model, i: usize) -> Result<GroupElement> {
        let n = model.rank();
        if i < 1 || i > n {
            return Err(Error::BadGenerator {
                index: i,
                model: model.name(),
            });
        }
        let mut w: Vec<i32> = (1..=model.window_size() as i32).collect();
        match model {
            Model::A(_) => w.swap(i - 1, i),
            Model::B(_) => {
                if i < n {
                    w.swap(i - 1, i);
                } else {
                    w[n - 1] = -(n as i32);
                }
            }
            Model::D(_) => {
                if i == 1 {
                    w[0] = -2;
                    w[1] = -1;
                } else {
                    w.swap(i - 2, i - 1);
                }
            }
        }
        Ok(GroupElement { model, window: w })
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn window(&self) -> &[i32] {
        &self.window
    }

    pub fn is_identity(&self) -> bool {
        self.window
            .iter()
            .enumerate()
            .all(|(i, &x)| x == i as i32 + 1)
    }

    /// Evaluate the element as a function, with `w(-j) = -w(j)`.
    fn apply(&self, j: i32) -> i32 {
        if j > 0 {
            self.window[j as usize - 1]
        } else {
            -self.window[(-j) as usize - 1]
        }
    }

    /// `(u∘v)(i) = u(v(i))`.
    pub fn multiply(&self, rhs: &GroupElement) -> Result<GroupElement> {
        if self.model != rhs.model {
            return Err(Error::ModelMismatch {
                left: self.model.name(),
                right: rhs.model.name(),
            });
        }
        let window = rhs.window.iter().map(|&j| self.apply(j)).collect();
        Ok(GroupElement {
            model: self.model,
            window,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let mut window = vec![0; self.window.len()];
        for (i, &x) in self.window.iter().enumerate() {
            let pos = i as i32 + 1;
            if x > 0 {
                window[x as usize - 1] = pos;
            } else {
                window[(-x) as usize - 1] = -pos;
            }
        }
        GroupElement {
            model: self.model,
            window,
        }
    }

    /// Coxeter length.
    pub fn length(&self) -> u64 {
        match self.model {
            Model::A(_) => inversions(&self.window),
            Model::B(n) => {
                let mirrored = mirror(&self.window, n);
                inversions(&mirrored) + negatives(&mirrored) + negative_sum_pairs(&mirrored)
            }
            Model::D(_) => inversions(&self.window) + negative_sum_pairs(&self.window),
        }
    }

    /// Generators s with l(w·s) < l(w), computed by length differences.
    pub fn right_descents(&self) -> GenSet {
        let len = self.length();
        self.model
            .generators()
            .iter()
            .filter(|&i| {
                let s = GroupElement::generator(self.model, i).unwrap();
                self.multiply(&s).unwrap().length() < len
            })
            .collect()
    }

    /// Generators s with l(s·w) < l(w).
    pub fn left_descents(&self) -> GenSet {
        let len = self.length();
        self.model
            .generators()
            .iter()
            .filter(|&i| {
                let s = GroupElement::generator(self.model, i).unwrap();
                s.multiply(self).unwrap().length() < len
            })
            .collect()
    }

    /// Generators occurring in a reduced word for this element.
    pub fn support(&self) -> GenSet {
        let mut w = self.clone();
        let mut supp = GenSet::EMPTY;
        while !w.is_identity() {
            let i = w
                .right_descents()
                .min()
                .expect("non-identity element has a right descent");
            supp.insert(i);
            let s = GroupElement::generator(self.model, i).unwrap();
            w = w.multiply(&s).unwrap();
        }
        supp
    }

    /// Parse a one-line window such as `2 3 1` or `-2 1 -3`
    /// (both ASCII hyphen-minus and U+2212 accepted).
    pub fn parse_window(model: Model, text: &str) -> Result<GroupElement> {
        let cleaned = text.replace('\u{2212}', "-");
        let entries: std::result::Result<Vec<i32>, _> =
            cleaned.split_whitespace().map(str::parse).collect();
        match entries {
            Ok(window) => GroupElement::from_window(model, window),
            Err(_) => Err(Error::InvalidWindow {
                model: model.name(),
                window: vec![],
                reason: format!("cannot parse {text:?} as integers"),
            }),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &x in &self.window {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

fn inversions(w: &[i32]) -> u64 {
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                count += 1;
            }
        }
    }
    count
}

fn negatives(w: &[i32]) -> u64 {
    w.iter().filter(|&&x| x < 0).count() as u64
}

fn negative_sum_pairs(w: &[i32]) -> u64 {
    let mut count = 0;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] + w[j] < 0 {
                count += 1;
            }
        }
    }
    count
}

/// Reverse the window and replace each entry by `sign(x)·(n+1-|x|)`.
fn mirror(w: &[i32], n: usize) -> Vec<i32> {
    let n = n as i32;
    w.iter()
        .rev()
        .map(|&x| if x > 0 { n + 1 - x } else { -(n + 1 + x) })
        .collect()
}

/// Longest element of the parabolic subgroup generated by `j_set`.
///
/// Greedy ascent from the identity: repeatedly left-multiply by the smallest
/// generator in `j_set` that increases length. The parabolic is a lattice
/// with unique top, so the result does not depend on the choice order.
pub fn longest_element_of_parabolic(model: Model, j_set: GenSet) -> Result<GroupElement> {
    if !j_set.is_subset_of(model.generators()) {
        return Err(Error::BadGenerator {
            index: j_set.difference(model.generators()).min().unwrap_or(0),
            model: format!("{model}"),
        });
    }
    let gens: Vec<GroupElement> = j_set
        .iter()
        .map(|i| GroupElement::generator(model, i).unwrap())
        .collect();
    let mut w = GroupElement::identity(model);
    let mut len = 0;
    'ascend: loop {
        for s in &gens {
            let sw = s.multiply(&w).unwrap();
            let l = sw.length();
            if l > len {
                w = sw;
                len = l;
                continue 'ascend;
            }
        }
        return Ok(w);
    }
}
