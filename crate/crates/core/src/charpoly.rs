//! Closed formulas for characteristic and modified characteristic
//! polynomials of the weak order: subset alternating sums, interval
//! decomposition, descent-class formulas, the alternating-permutation
//! product form and the four affine recurrences.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graph::{Component, CoxeterGraph, Family, GenSet};
use crate::model::GroupElement;
use crate::poly::IntPolynomial;

/// Subset iteration is refused beyond this rank (2^rank terms, u64 masks).
pub const SUBSET_RANK_MAX: usize = 62;

fn require_finite(family: Family) -> Result<()> {
    if family.is_affine() {
        return Err(Error::UnsupportedFamily {
            family,
            reason: "finite family (A, B or D) expected".into(),
        });
    }
    Ok(())
}

/// The graph whose subsets drive a finite-family sum, normalizing the
/// degenerate low ranks B_1 ≅ A_1, D_1 ≅ A_1, and rank 0 to `None`.
fn finite_family_graph(family: Family, rank: usize) -> Result<Option<CoxeterGraph>> {
    require_finite(family)?;
    if rank == 0 {
        return Ok(None);
    }
    let family = if rank == 1 { Family::A } else { family };
    CoxeterGraph::build(family, rank).map(Some)
}

/// Visit all `k`-subsets of `full` for k = 0..=n in popcount-then-binary
/// order (Gosper's hack within each popcount class).
fn for_each_subset(full: u64, proper_only: bool, mut f: impl FnMut(GenSet)) {
    let n = full.count_ones();
    let limit = if proper_only { n.saturating_sub(1) } else { n };
    // indices of the set bits, for mapping dense masks onto node ids
    let positions: Vec<u32> = {
        let mut v = Vec::with_capacity(n as usize);
        let mut bits = full;
        while bits != 0 {
            v.push(bits.trailing_zeros());
            bits &= bits - 1;
        }
        v
    };
    for k in 0..=limit {
        if k == 0 {
            f(GenSet::EMPTY);
            continue;
        }
        // Gosper's hack: dense k-subsets of n bits in increasing binary value
        let mut dense: u64 = (1 << k) - 1;
        while dense < 1 << n {
            let mut mask = 0u64;
            let mut bits = dense;
            while bits != 0 {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                mask |= 1 << positions[i as usize];
            }
            f(GenSet(mask));
            let c = dense & dense.wrapping_neg();
            let r = dense + c;
            dense = (((r ^ dense) >> 2) / c) | r;
        }
    }
}

/// Alternating sum Σ_J (−1)^{|J|} q^{exponent(l(w0(J)))} over subsets of the
/// graph's generators (proper subsets only when `proper_only`).
fn alternating_subset_sum(
    graph: &CoxeterGraph,
    proper_only: bool,
    exponent: impl Fn(u64) -> u64,
) -> Result<IntPolynomial> {
    let rank = graph.nodes().len();
    if rank > SUBSET_RANK_MAX {
        return Err(Error::RankBudget {
            rank,
            max: SUBSET_RANK_MAX,
        });
    }
    let mut out = IntPolynomial::zero();
    let mut failed = None;
    for_each_subset(graph.nodes().0, proper_only, |j_set| {
        if failed.is_some() {
            return;
        }
        match graph.parabolic_w0_length(j_set) {
            Ok(len) => {
                let sign = if j_set.len().is_multiple_of(2) { 1 } else { -1 };
                out.add_term(exponent(len), &BigInt::from(sign));
            }
            Err(e) => failed = Some(e),
        }
    });
    match failed {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// χ_W(q) = Σ_{J⊆S} (−1)^{|J|} q^{l(w0) − l(w0(J))} for W = A_n, B_n, D_n.
pub fn char_poly_subset_sum(family: Family, rank: usize) -> Result<IntPolynomial> {
    let graph = match finite_family_graph(family, rank)? {
        Some(g) => g,
        None => return Ok(IntPolynomial::one()),
    };
    let total = graph.parabolic_w0_length(graph.nodes())?;
    alternating_subset_sum(&graph, false, |len| total - len)
}

/// χ̂_W(q) = Σ_{J⊆S} (−1)^{|J|} q^{l(w0(J))} for W = A_n, B_n, D_n.
pub fn modified_char_poly(family: Family, rank: usize) -> Result<IntPolynomial> {
    let graph = match finite_family_graph(family, rank)? {
        Some(g) => g,
        None => return Ok(IntPolynomial::one()),
    };
    alternating_subset_sum(&graph, false, |len| len)
}

/// χ̂_W(q) = Σ_{J⊊S} (−1)^{|J|} q^{l(w0(J))} for the affine families,
/// summing over proper subsets only (w0(S) does not exist).
pub fn affine_modified_char_poly_direct(family: Family, rank: usize) -> Result<IntPolynomial> {
    if !family.is_affine() {
        return Err(Error::UnsupportedFamily {
            family,
            reason: "affine family expected".into(),
        });
    }
    let graph = CoxeterGraph::build(family, rank)?;
    alternating_subset_sum(&graph, true, |len| len)
}

/// χ of the product of the classified components of `K`, times
/// q^{shift − l(w0(K))}: the interval-decomposition kernel.
fn decomposed_char_poly(components: &[Component], interval_rank: u64) -> IntPolynomial {
    let w0k: u64 = components.iter().map(Component::w0_length).sum();
    let mut out = IntPolynomial::q_power(interval_rank - w0k);
    for comp in components {
        let (family, m) = match comp.kind {
            crate::graph::ComponentKind::A(m) => (Family::A, m),
            crate::graph::ComponentKind::B(m) => (Family::B, m),
            crate::graph::ComponentKind::D(m) => (Family::D, m),
        };
        let chi = char_poly_subset_sum(family, m).expect("component ranks are tiny");
        out = out.mul(&chi);
    }
    out
}

/// χ of `[u, w]`: q^{l(wu⁻¹) − l(w0(K))} Π_i χ_{K_i}(q) with K = D_R(wu⁻¹)
/// decomposed into graph components.
///
/// Comparability in the weak order is checked by length additivity:
/// u ≤ w iff l(w) = l(u) + l(wu⁻¹).
pub fn char_poly_interval_decomposed(
    graph: &CoxeterGraph,
    u: &GroupElement,
    w: &GroupElement,
) -> Result<IntPolynomial> {
    let model = u.model();
    if graph.family != model.family() || graph.rank != model.rank() {
        return Err(Error::GraphModelMismatch {
            family: graph.family,
            rank: graph.rank,
            model: model.to_string(),
        });
    }
    let v = w.multiply(&u.inverse())?;
    if u.length() + v.length() != w.length() {
        return Err(Error::NotComparable);
    }
    let k_set = v.right_descents();
    let components = graph.components_of(k_set)?;
    Ok(decomposed_char_poly(&components, v.length()))
}

/// Rank of the descent class Đ_I^J in A_n:
/// d = C(n+1, 2) − l(w0(Jᶜ)) − l(w0(I)).
fn descent_class_rank(graph: &CoxeterGraph, i_set: GenSet, j_set: GenSet) -> Result<u64> {
    let total = graph.parabolic_w0_length(graph.nodes())?;
    let jc = graph.nodes().difference(j_set);
    Ok(total - graph.parabolic_w0_length(jc)? - graph.parabolic_w0_length(i_set)?)
}

/// χ of the descent class Đ_I^J ⊆ A_n via the interval decomposition with
/// K = (J ∪ I⁺) \ I. Valid for every I ⊆ J ⊆ `[n]`.
pub fn descent_class_char_poly(n: usize, i_set: GenSet, j_set: GenSet) -> Result<IntPolynomial> {
    let graph = CoxeterGraph::build(Family::A, n)?;
    if !i_set.is_subset_of(j_set) || !j_set.is_subset_of(graph.nodes()) {
        return Err(Error::DescentSetsNotNested { i_set, j_set });
    }
    let d = descent_class_rank(&graph, i_set, j_set)?;
    let k_set = j_set.union(graph.neighbors_of(i_set)?).difference(i_set);
    let components = graph.components_of(k_set)?;
    Ok(decomposed_char_poly(&components, d))
}

/// Maximal runs of consecutive integers in `[n] \ I`, ascending.
fn complement_runs(n: usize, i_set: GenSet) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut start = None;
    for v in 1..=n + 1 {
        if v <= n && !i_set.contains(v) {
            start.get_or_insert(v);
        } else if let Some(s) = start.take() {
            runs.push((s, v - 1));
        }
    }
    runs
}

/// Does `I ⊆ [n]` satisfy the interior condition required by the product
/// formula: every complement run of size ≥ 2 avoids 1 and n, and every
/// singleton run touches I (automatic except for n = 1, I = ∅)?
pub fn interior_condition_holds(n: usize, i_set: GenSet) -> bool {
    complement_runs(n, i_set).iter().all(|&(lo, hi)| {
        if hi > lo {
            lo > 1 && hi < n
        } else {
            i_set.contains(lo.wrapping_sub(1)) || i_set.contains(lo + 1)
        }
    })
}

/// The fixed-descent-set product formula for Đ_I ⊆ A_n:
/// χ = q^{d−α−2γ−3β} (q−1)^{α+2γ+β} (q²−q−1)^β, where α, β, γ count the
/// complement runs of size 1, 2 and ≥ 3.
///
/// Requires the interior condition; boundary runs of size ≥ 2 contribute
/// fewer generators to I⁺ \ I than the formula assumes, so callers must
/// fall back to [`descent_class_char_poly`] there.
pub fn fixed_descent_formula(n: usize, i_set: GenSet) -> Result<IntPolynomial> {
    let graph = CoxeterGraph::build(Family::A, n)?;
    if !i_set.is_subset_of(graph.nodes()) {
        return Err(Error::DescentSetsNotNested {
            i_set,
            j_set: graph.nodes(),
        });
    }
    let runs = complement_runs(n, i_set);
    for &(lo, hi) in &runs {
        let bad_interior = hi > lo && (lo == 1 || hi == n);
        let lonely_singleton =
            hi == lo && !(i_set.contains(lo.wrapping_sub(1)) || i_set.contains(lo + 1));
        if bad_interior || lonely_singleton {
            return Err(Error::InteriorConditionViolated {
                n,
                i_set,
                reason: format!("complement run {{{lo}..{hi}}} touches the boundary of [1..{n}]"),
            });
        }
    }
    let (mut alpha, mut beta, mut gamma) = (0u64, 0u64, 0u64);
    for &(lo, hi) in &runs {
        match hi - lo + 1 {
            1 => alpha += 1,
            2 => beta += 1,
            _ => gamma += 1,
        }
    }
    let d = descent_class_rank(&graph, i_set, i_set)?;
    let q_minus_1 = IntPolynomial::q_power(1).sub(&IntPolynomial::one());
    let golden = IntPolynomial::q_power(2)
        .sub(&IntPolynomial::q_power(1))
        .sub(&IntPolynomial::one());
    let power = d - alpha - 2 * gamma - 3 * beta;
    Ok(IntPolynomial::q_power(power)
        .mul(&q_minus_1.pow(alpha + 2 * gamma + beta))
        .mul(&golden.pow(beta)))
}

/// χ of the alternating permutations in S_n under the weak order:
/// q^{C(n−1,2) − ⌊n/2⌋} (q−1)^{⌊n/2⌋} for n ≥ 3; Alt_2 is a single point.
pub fn alternating_char_poly(n: usize) -> Result<IntPolynomial> {
    if n < 2 {
        return Err(Error::AlternatingRange { n });
    }
    if n == 2 {
        // Alt_2 = {12}: the closed form's exponent would be negative here.
        return Ok(IntPolynomial::one());
    }
    let floor = (n / 2) as u64;
    let binom = ((n - 1) * (n - 2) / 2) as u64;
    let q_minus_1 = IntPolynomial::q_power(1).sub(&IntPolynomial::one());
    Ok(IntPolynomial::q_power(binom - floor).mul(&q_minus_1.pow(floor)))
}

/// The descent set of Alt_n inside A_{n−1}: {2, 4, 6, ...} ∩ [n−1].
pub fn alternating_descent_set(n: usize) -> GenSet {
    (2..n).step_by(2).collect()
}

/// χ̂ for finite-family terms in the affine recurrences, with the boundary
/// conventions χ̂_{A_i} = χ̂_{B_i} = 1 for i ≤ 0 and χ̂_{D_i} = 1 for i ≤ 1.
fn chihat_term(family: Family, i: i64) -> IntPolynomial {
    let trivial = match family {
        Family::D => i <= 1,
        _ => i <= 0,
    };
    if trivial {
        IntPolynomial::one()
    } else {
        modified_char_poly(family, i as usize).expect("recurrence terms have valid ranks")
    }
}

/// The four affine recurrences, expressing χ̂ of Ã_n, B̃_n, C̃_n, D̃_n through
/// χ̂ of the finite families. Must agree with
/// [`affine_modified_char_poly_direct`].
pub fn affine_modified_char_poly_recurrence(family: Family, rank: usize) -> Result<IntPolynomial> {
    let min = family.min_rank();
    if rank < min {
        return Err(Error::RankOutOfRange { family, rank, min });
    }
    let n = rank as i64;
    let sign = |k: i64| if k % 2 == 0 { 1 } else { -1 };
    let out = match family {
        Family::AffA => {
            // χ̂_{A_n} + Σ_{k=1}^n k (−1)^k q^{C(k+1,2)} χ̂_{A_{n−k−1}}
            let mut acc = chihat_term(Family::A, n);
            for k in 1..=n {
                let term = chihat_term(Family::A, n - k - 1)
                    .shift((k * (k + 1) / 2) as u64)
                    .mul_scalar(k * sign(k));
                acc = acc.add(&term);
            }
            acc
        }
        Family::AffB => {
            // χ̂_{B_n} + Σ_{k=0}^n (−1)^k q^{k(k−1)} χ̂_{B_{n−k}}
            let mut acc = chihat_term(Family::B, n);
            for k in 0..=n {
                let term = chihat_term(Family::B, n - k)
                    .shift((k * (k - 1)) as u64)
                    .mul_scalar(sign(k));
                acc = acc.add(&term);
            }
            acc
        }
        Family::AffC => {
            // Σ_{k=0}^n (−1)^k q^{k²} χ̂_{B_{n−k}}
            let mut acc = IntPolynomial::zero();
            for k in 0..=n {
                let term = chihat_term(Family::B, n - k)
                    .shift((k * k) as u64)
                    .mul_scalar(sign(k));
                acc = acc.add(&term);
            }
            acc
        }
        Family::AffD => {
            // χ̂_{D_n} + (−1)^n q^{n(n−1)} + Σ_{k=0}^n (−1)^k q^{k(k−1)} χ̂_{D_{n−k}}
            let mut acc = chihat_term(Family::D, n)
                .add(&IntPolynomial::q_power((n * (n - 1)) as u64).mul_scalar(sign(n)));
            for k in 0..=n {
                let term = chihat_term(Family::D, n - k)
                    .shift((k * (k - 1)) as u64)
                    .mul_scalar(sign(k));
                acc = acc.add(&term);
            }
            acc
        }
        _ => {
            return Err(Error::UnsupportedFamily {
                family,
                reason: "affine family expected".into(),
            })
        }
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(v: &[usize]) -> GenSet {
        v.iter().copied().collect()
    }

    fn poly(terms: &[(u64, i64)]) -> IntPolynomial {
        let mut p = IntPolynomial::zero();
        for &(e, c) in terms {
            p.add_term(e, &BigInt::from(c));
        }
        p
    }

    #[test]
    fn subset_sum_small_a() {
        assert_eq!(
            char_poly_subset_sum(Family::A, 1).unwrap().to_string(),
            "q - 1"
        );
        assert_eq!(
            char_poly_subset_sum(Family::A, 2).unwrap().to_string(),
            "q^3 - 2q^2 + 1"
        );
        assert_eq!(
            char_poly_subset_sum(Family::A, 3).unwrap().to_string(),
            "q^6 - 3q^5 + q^4 + 2q^3 - 1"
        );
        // 8 subsets of {1,2,3,4}: frozen by direct expansion
        assert_eq!(
            char_poly_subset_sum(Family::A, 4).unwrap(),
            poly(&[(10, 1), (9, -4), (8, 3), (7, 3), (6, -2), (4, -2), (0, 1)])
        );
    }

    #[test]
    fn subset_sum_degenerate_ranks() {
        assert_eq!(
            char_poly_subset_sum(Family::A, 0).unwrap(),
            IntPolynomial::one()
        );
        // B_1 ≅ A_1
        assert_eq!(
            char_poly_subset_sum(Family::B, 1).unwrap().to_string(),
            "q - 1"
        );
        assert_eq!(
            modified_char_poly(Family::B, 1).unwrap().to_string(),
            "-q + 1"
        );
    }

    #[test]
    fn subset_sum_rejects_huge_rank() {
        assert!(matches!(
            char_poly_subset_sum(Family::A, 63),
            Err(Error::RankBudget { rank: 63, max: 62 })
        ));
    }

    #[test]
    fn modified_examples() {
        assert_eq!(
            modified_char_poly(Family::A, 1).unwrap(),
            poly(&[(0, 1), (1, -1)])
        );
        assert_eq!(
            modified_char_poly(Family::A, 2).unwrap(),
            poly(&[(0, 1), (1, -2), (3, 1)])
        );
        assert_eq!(
            modified_char_poly(Family::B, 2).unwrap(),
            poly(&[(0, 1), (1, -2), (4, 1)])
        );
    }

    #[test]
    fn reversal_relation_chi_hat_vs_chi() {
        for (family, ranks) in [(Family::A, 1..=8), (Family::B, 2..=8), (Family::D, 2..=8)] {
            for n in ranks {
                let chi = char_poly_subset_sum(family, n).unwrap();
                let hat = modified_char_poly(family, n).unwrap();
                let top = chi.degree().unwrap();
                assert_eq!(hat, chi.reversed(top), "{family}_{n}");
            }
        }
    }

    #[test]
    fn chi_vanishes_at_one() {
        use num_traits::Zero;
        for n in 1..=6 {
            assert!(char_poly_subset_sum(Family::A, n)
                .unwrap()
                .eval_at_one()
                .is_zero());
            assert!(modified_char_poly(Family::A, n)
                .unwrap()
                .eval_at_one()
                .is_zero());
        }
    }

    #[test]
    fn interval_decomposition_extremes() {
        let graph = CoxeterGraph::build(Family::A, 2).unwrap();
        let model = crate::model::Model::A(2);
        let e = GroupElement::identity(model);
        let w0 = crate::model::longest_element_of_parabolic(model, gens(&[1, 2])).unwrap();
        assert_eq!(
            char_poly_interval_decomposed(&graph, &e, &e).unwrap(),
            IntPolynomial::one()
        );
        assert_eq!(
            char_poly_interval_decomposed(&graph, &e, &w0)
                .unwrap()
                .to_string(),
            "q^3 - 2q^2 + 1"
        );
        // s1 and s2 are incomparable
        let s1 = GroupElement::generator(model, 1).unwrap();
        let s2 = GroupElement::generator(model, 2).unwrap();
        assert!(matches!(
            char_poly_interval_decomposed(&graph, &s1, &s2),
            Err(Error::NotComparable)
        ));
        let wrong = CoxeterGraph::build(Family::A, 3).unwrap();
        assert!(matches!(
            char_poly_interval_decomposed(&wrong, &e, &w0),
            Err(Error::GraphModelMismatch { .. })
        ));
    }

    #[test]
    fn descent_class_examples() {
        // I = J = {3} in A_3: K = {2}, d = 2, χ = q(q−1)
        assert_eq!(
            descent_class_char_poly(3, gens(&[3]), gens(&[3])).unwrap(),
            poly(&[(2, 1), (1, -1)])
        );
        assert_eq!(
            descent_class_char_poly(3, GenSet::EMPTY, GenSet::EMPTY).unwrap(),
            IntPolynomial::one()
        );
        // Alt_3 inside A_2
        assert_eq!(
            descent_class_char_poly(2, gens(&[2]), gens(&[2]))
                .unwrap()
                .to_string(),
            "q - 1"
        );
        assert!(descent_class_char_poly(3, gens(&[1, 2]), gens(&[2])).is_err());
    }

    #[test]
    fn fixed_descent_examples() {
        // n = 4, I = {2,4}: runs {1}, {3}, α = 2, d = 6
        assert_eq!(
            fixed_descent_formula(4, gens(&[2, 4])).unwrap(),
            IntPolynomial::q_power(4).mul(&poly(&[(1, 1), (0, -1)]).pow(2))
        );
        // n = 5, I = {1,2,4}: χ = q^7 (q−1)^2
        assert_eq!(
            fixed_descent_formula(5, gens(&[1, 2, 4])).unwrap(),
            IntPolynomial::q_power(7).mul(&poly(&[(1, 1), (0, -1)]).pow(2))
        );
        // the documented boundary counterexample: n = 3, I = {3}
        assert!(matches!(
            fixed_descent_formula(3, gens(&[3])),
            Err(Error::InteriorConditionViolated { .. })
        ));
        assert_eq!(
            descent_class_char_poly(3, gens(&[3]), gens(&[3])).unwrap(),
            poly(&[(2, 1), (1, -1)])
        );
        // n = 1, I = ∅: the singleton run has no neighbor in I
        assert!(!interior_condition_holds(1, GenSet::EMPTY));
        assert!(matches!(
            fixed_descent_formula(1, GenSet::EMPTY),
            Err(Error::InteriorConditionViolated { .. })
        ));
        assert_eq!(
            descent_class_char_poly(1, GenSet::EMPTY, GenSet::EMPTY).unwrap(),
            IntPolynomial::one()
        );
    }

    #[test]
    fn interior_condition_cases() {
        assert!(interior_condition_holds(4, gens(&[2, 4])));
        assert!(interior_condition_holds(5, gens(&[1, 2, 4])));
        assert!(!interior_condition_holds(3, gens(&[3])));
        assert!(!interior_condition_holds(2, GenSet::EMPTY));
        assert!(interior_condition_holds(1, gens(&[1])));
        assert!(interior_condition_holds(0, GenSet::EMPTY));
        // interior run of size 2: {2,3} inside [4] with I = {1,4}
        assert!(interior_condition_holds(4, gens(&[1, 4])));
    }

    #[test]
    fn alternating_examples() {
        assert_eq!(alternating_char_poly(3).unwrap().to_string(), "q - 1");
        assert_eq!(
            alternating_char_poly(4).unwrap(),
            poly(&[(3, 1), (2, -2), (1, 1)])
        );
        assert_eq!(alternating_char_poly(2).unwrap(), IntPolynomial::one());
        assert!(matches!(
            alternating_char_poly(1),
            Err(Error::AlternatingRange { n: 1 })
        ));
        assert_eq!(alternating_descent_set(6), gens(&[2, 4]));
        assert_eq!(alternating_descent_set(7), gens(&[2, 4, 6]));
    }

    #[test]
    fn affine_direct_spot_values() {
        assert_eq!(
            affine_modified_char_poly_direct(Family::AffA, 2).unwrap(),
            poly(&[(0, 1), (1, -3), (3, 3)])
        );
        assert_eq!(
            affine_modified_char_poly_direct(Family::AffC, 2).unwrap(),
            poly(&[(0, 1), (1, -3), (2, 1), (4, 2)])
        );
        // the empty subset always contributes +1
        for (family, rank) in [(Family::AffA, 3), (Family::AffB, 3), (Family::AffD, 4)] {
            let p = affine_modified_char_poly_direct(family, rank).unwrap();
            assert_eq!(p.coeff(0), BigInt::from(1));
        }
    }

    #[test]
    fn affine_recurrence_spot_values() {
        assert_eq!(
            affine_modified_char_poly_recurrence(Family::AffA, 2).unwrap(),
            poly(&[(0, 1), (1, -3), (3, 3)])
        );
        assert_eq!(
            affine_modified_char_poly_recurrence(Family::AffC, 2).unwrap(),
            poly(&[(0, 1), (1, -3), (2, 1), (4, 2)])
        );
    }

    #[test]
    fn affine_value_at_one_counts_proper_subsets() {
        // Σ_{J⊊S} (−1)^{|J|} = −(−1)^{|S|}
        for (family, rank, nodes) in [
            (Family::AffA, 2, 3usize),
            (Family::AffA, 5, 6),
            (Family::AffB, 4, 5),
            (Family::AffC, 3, 4),
            (Family::AffD, 5, 6),
        ] {
            let p = affine_modified_char_poly_direct(family, rank).unwrap();
            let expected = if nodes % 2 == 0 { -1 } else { 1 };
            assert_eq!(p.eval_at_one(), BigInt::from(expected), "{family}_{rank}");
        }
    }

    #[test]
    fn affine_rank_ranges() {
        assert!(affine_modified_char_poly_direct(Family::AffA, 1).is_err());
        assert!(affine_modified_char_poly_recurrence(Family::AffB, 2).is_err());
        assert!(affine_modified_char_poly_recurrence(Family::AffD, 3).is_err());
        assert!(affine_modified_char_poly_direct(Family::A, 3).is_err());
        assert!(affine_modified_char_poly_recurrence(Family::B, 3).is_err());
    }

    #[test]
    fn subset_enumeration_is_popcount_ordered_and_complete() {
        let mut seen = Vec::new();
        for_each_subset(0b101101, false, |s| seen.push(s));
        assert_eq!(seen.len(), 16);
        for pair in seen.windows(2) {
            assert!(
                pair[0].len() < pair[1].len()
                    || (pair[0].len() == pair[1].len() && pair[0].0 < pair[1].0)
            );
        }
        let mut proper = Vec::new();
        for_each_subset(0b111, true, |s| proper.push(s));
        assert_eq!(proper.len(), 7);
        assert!(!proper.contains(&GenSet(0b111)));
    }
}
