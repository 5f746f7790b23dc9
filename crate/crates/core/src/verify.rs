//! Batch verification suites: each one checks a closed formula against the
//! brute-force poset oracle (or two independent routes against each other)
//! and reports pass/fail with counterexample details. The acceptance test
//! target and the CLI `verify` subcommand both run these.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charpoly::{
    affine_modified_char_poly_direct, affine_modified_char_poly_recurrence, alternating_char_poly,
    alternating_descent_set, char_poly_interval_decomposed, char_poly_subset_sum,
    descent_class_char_poly, fixed_descent_formula, interior_condition_holds, modified_char_poly,
};
use crate::error::{Error, Result};
use crate::graph::{Family, GenSet};
use crate::model::Model;
use crate::poset::WeakOrderPoset;
use crate::series::{count_subsets_brute, extract_modified_charpoly, series_t};

/// Outcome of one verification suite.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub cases: usize,
    /// Failure descriptions; empty when passed.
    pub failures: Vec<String>,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn summary_line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status}  {}  ({} checks, {} ms)",
            self.name, self.cases, self.elapsed_ms
        );
        if !self.passed {
            for f in self.failures.iter().take(3) {
                line.push_str(&format!("\n      {f}"));
            }
        }
        line
    }
}

struct Recorder {
    name: String,
    cases: usize,
    failures: Vec<String>,
    started: Instant,
}

impl Recorder {
    fn new(name: impl Into<String>) -> Self {
        Recorder {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    fn finish(self) -> CheckReport {
        CheckReport {
            name: self.name,
            passed: self.failures.is_empty(),
            cases: self.cases,
            failures: self.failures,
            elapsed_ms: self.started.elapsed().as_millis(),
        }
    }
}

fn subsets_of(set: GenSet) -> Vec<GenSet> {
    let items: Vec<usize> = set.iter().collect();
    (0..(1u64 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|&(k, _)| mask >> k & 1 == 1)
                .map(|(_, &v)| v)
                .collect()
        })
        .collect()
}

/// Alternating-permutation formula vs the Alt_n interval in the S_n weak
/// order, for each n in the range.
pub fn check_alternating(n_lo: usize, n_hi: usize, cap: Option<usize>) -> Result<CheckReport> {
    let mut rec = Recorder::new(format!(
        "alternating formula vs poset oracle, {n_lo} <= n <= {n_hi}"
    ));
    for n in n_lo..=n_hi {
        let model = Model::A(n - 1);
        let poset = WeakOrderPoset::build(model, cap)?;
        let i_set = alternating_descent_set(n);
        let bottom = poset.longest_parabolic(i_set)?;
        let complement = model.generators().difference(i_set);
        let top_elt = poset
            .element(poset.top().expect("full group has a top"))
            .multiply(poset.element(poset.longest_parabolic(complement)?))
            .unwrap();
        let top = poset.index_of(&top_elt).unwrap();
        let interval = poset.interval(bottom, top)?;

        // the interval really is the descent class
        let class = poset.descent_class(i_set, i_set)?;
        rec.check(interval.len() == class.len(), || {
            format!(
                "Alt_{n}: interval has {} elements, class {}",
                interval.len(),
                class.len()
            )
        });

        let oracle = interval.char_poly();
        let formula = alternating_char_poly(n)?;
        rec.check(formula == oracle, || {
            format!("Alt_{n}: formula {formula} != oracle {oracle}")
        });
        let class_route = descent_class_char_poly(n - 1, i_set, i_set)?;
        rec.check(class_route == oracle, || {
            format!("Alt_{n}: descent-class route {class_route} != oracle {oracle}")
        });
    }
    Ok(rec.finish())
}

/// Closed-form Möbius values vs the defining recurrence, over every
/// comparable pair of each group.
pub fn check_mobius(groups: &[Model], cap: Option<usize>) -> Result<CheckReport> {
    let names: Vec<String> = groups.iter().map(|m| m.to_string()).collect();
    let mut rec = Recorder::new(format!(
        "mobius closed form vs recursion on {}",
        names.join(", ")
    ));
    for &model in groups {
        let poset = WeakOrderPoset::build(model, cap)?;
        let up = poset.structure.up_closure();
        for (u, upset) in up.iter().enumerate() {
            for w in upset.iter_ones() {
                let closed = poset.mobius_closed_form(u, w)?;
                let recursive = poset.mobius_via_interval(u, w)?;
                rec.check(closed == recursive, || {
                    format!(
                        "{model}: mu({}, {}) closed {closed} != recursive {recursive}",
                        poset.element(u),
                        poset.element(w)
                    )
                });
            }
        }
    }
    Ok(rec.finish())
}

/// Interval-decomposition formula vs the poset oracle on sampled comparable
/// pairs of each group.
pub fn check_interval_decomposition(
    groups: &[Model],
    samples: usize,
    seed: u64,
    cap: Option<usize>,
) -> Result<CheckReport> {
    let names: Vec<String> = groups.iter().map(|m| m.to_string()).collect();
    let mut rec = Recorder::new(format!(
        "interval decomposition vs poset oracle, {samples} samples each of {}",
        names.join(", ")
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for &model in groups {
        let graph = model.graph();
        let poset = WeakOrderPoset::build(model, cap)?;
        let up = poset.structure.up_closure();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (u, upset) in up.iter().enumerate() {
            pairs.extend(upset.iter_ones().map(|w| (u, w)));
        }
        for _ in 0..samples {
            let (u, w) = pairs[rng.gen_range(0..pairs.len())];
            let decomposed =
                char_poly_interval_decomposed(&graph, poset.element(u), poset.element(w))?;
            let oracle = poset.interval(u, w)?.char_poly();
            rec.check(decomposed == oracle, || {
                format!(
                    "{model}: [{}, {}] decomposed {decomposed} != oracle {oracle}",
                    poset.element(u),
                    poset.element(w)
                )
            });
        }
    }
    Ok(rec.finish())
}

/// Descent classes are intervals, and the descent set of the interval's
/// defining quotient matches (J ∪ I⁺) \ I, over all I ⊆ J ⊆ S.
pub fn check_descent_classes(groups: &[Model], cap: Option<usize>) -> Result<CheckReport> {
    let names: Vec<String> = groups.iter().map(|m| m.to_string()).collect();
    let mut rec = Recorder::new(format!(
        "descent class = interval and I+ identity on {}",
        names.join(", ")
    ));
    for &model in groups {
        let graph = model.graph();
        let poset = WeakOrderPoset::build(model, cap)?;
        let top = poset.top().expect("full group");
        for j_set in subsets_of(model.generators()) {
            let jc = model.generators().difference(j_set);
            let w0_jc = poset.longest_parabolic(jc)?;
            let top_elt = poset.element(top).multiply(poset.element(w0_jc)).unwrap();
            let top_idx = poset.index_of(&top_elt).unwrap();
            for i_set in subsets_of(j_set) {
                let bottom_idx = poset.longest_parabolic(i_set)?;
                let class = poset.descent_class(i_set, j_set)?;
                let interval = poset.interval(bottom_idx, top_idx)?;
                let mut interval_windows: Vec<Vec<i32>> = interval
                    .elements()
                    .iter()
                    .map(|e| e.window().to_vec())
                    .collect();
                interval_windows.sort();
                let mut class_windows: Vec<Vec<i32>> = class
                    .iter()
                    .map(|&i| poset.element(i).window().to_vec())
                    .collect();
                class_windows.sort();
                rec.check(interval_windows == class_windows, || {
                    format!("{model}: class I={i_set} J={j_set} is not the interval")
                });

                // D_R(w0 w0(J^c) w0(I)) = (J ∪ I+) \ I
                let v = top_elt.multiply(poset.element(bottom_idx)).unwrap();
                let lhs = v.right_descents();
                let rhs = j_set.union(graph.neighbors_of(i_set)?).difference(i_set);
                rec.check(lhs == rhs, || {
                    format!("{model}: I={i_set} J={j_set}: D_R gives {lhs}, I+ formula {rhs}")
                });
            }
        }
    }
    Ok(rec.finish())
}

/// Product formula for fixed descent sets vs the general descent-class route
/// vs the poset oracle, for all I ⊆ `[n]`, n ≤ max_n. Interior-condition
/// violations must error from the formula route and still agree on the
/// general route.
pub fn check_fixed_descent(max_n: usize, cap: Option<usize>) -> Result<CheckReport> {
    let mut rec = Recorder::new(format!(
        "fixed-descent product formula, all I, n <= {max_n}"
    ));
    for n in 1..=max_n {
        let model = Model::A(n);
        let poset = WeakOrderPoset::build(model, cap)?;
        let top = poset.top().expect("full group");
        for i_set in subsets_of(model.generators()) {
            let general = descent_class_char_poly(n, i_set, i_set)?;

            let ic = model.generators().difference(i_set);
            let w0_ic = poset.longest_parabolic(ic)?;
            let top_elt = poset.element(top).multiply(poset.element(w0_ic)).unwrap();
            let bottom_idx = poset.longest_parabolic(i_set)?;
            let oracle = poset
                .interval(bottom_idx, poset.index_of(&top_elt).unwrap())?
                .char_poly();
            rec.check(general == oracle, || {
                format!("A_{n}, I={i_set}: general route {general} != oracle {oracle}")
            });

            match fixed_descent_formula(n, i_set) {
                Ok(formula) => {
                    rec.check(interior_condition_holds(n, i_set), || {
                        format!("A_{n}, I={i_set}: formula returned despite interior violation")
                    });
                    rec.check(formula == oracle, || {
                        format!("A_{n}, I={i_set}: formula {formula} != oracle {oracle}")
                    });
                }
                Err(Error::InteriorConditionViolated { .. }) => {
                    rec.check(!interior_condition_holds(n, i_set), || {
                        format!("A_{n}, I={i_set}: spurious interior-condition error")
                    });
                }
                Err(e) => return Err(e),
            }
        }
    }
    // the documented boundary counterexample
    let general = descent_class_char_poly(3, GenSet::single(3), GenSet::single(3))?;
    rec.check(general.to_string() == "q^2 - q", || {
        format!("boundary counterexample: expected q^2 - q, got {general}")
    });
    rec.check(
        matches!(
            fixed_descent_formula(3, GenSet::single(3)),
            Err(Error::InteriorConditionViolated { .. })
        ),
        || "boundary counterexample: formula route did not error".to_string(),
    );
    Ok(rec.finish())
}

/// Generating-function identities: brute subset counts vs T coefficients,
/// series extraction vs subset sums, and the reversal relation between χ̂
/// and χ.
pub fn check_genfun(max_count_rank: usize, max_extract_rank: usize) -> Result<CheckReport> {
    let mut rec = Recorder::new(format!(
        "generating functions: counts to x^{max_count_rank}, extraction to rank {max_extract_rank}"
    ));
    for family in [Family::A, Family::B, Family::D] {
        let t = series_t(family, max_count_rank + 1)?;
        let start = if family == Family::D { 2 } else { 0 };
        for n in start..=max_count_rank {
            let brute = count_subsets_brute(family, n)?;
            rec.check(brute == *t.coeff(n), || {
                format!("{family}: subset count at rank {n} != T coefficient")
            });
        }
        for n in start..=max_extract_rank {
            let extracted = extract_modified_charpoly(family, n)?;
            let summed = modified_char_poly(family, n)?;
            rec.check(extracted == summed, || {
                format!("{family}_{n}: extraction {extracted} != subset sum {summed}")
            });
            if n >= 1 {
                let chi = char_poly_subset_sum(family, n)?;
                let top = chi.degree().unwrap();
                rec.check(summed == chi.reversed(top), || {
                    format!("{family}_{n}: reversal relation fails")
                });
            }
        }
    }
    Ok(rec.finish())
}

/// Affine recurrences vs the direct proper-subset sums, with the two frozen
/// spot values.
pub fn check_affine(max_rank: usize) -> Result<CheckReport> {
    let mut rec = Recorder::new(format!(
        "affine recurrences vs direct sums, ranks <= {max_rank}"
    ));
    for family in [Family::AffA, Family::AffB, Family::AffC, Family::AffD] {
        for rank in family.min_rank()..=max_rank {
            let direct = affine_modified_char_poly_direct(family, rank)?;
            let recurred = affine_modified_char_poly_recurrence(family, rank)?;
            rec.check(direct == recurred, || {
                format!("{family}_{rank}: direct {direct} != recurrence {recurred}")
            });
        }
    }
    let spot_a = affine_modified_char_poly_direct(Family::AffA, 2)?;
    rec.check(spot_a.to_string() == "3q^3 - 3q + 1", || {
        format!("AffA_2 spot value: got {spot_a}")
    });
    let spot_c = affine_modified_char_poly_direct(Family::AffC, 2)?;
    rec.check(spot_c.to_string() == "2q^4 + q^2 - 3q + 1", || {
        format!("AffC_2 spot value: got {spot_c}")
    });
    Ok(rec.finish())
}

/// Lattice structure: joins exist everywhere, parabolic joins compose, the
/// maximal parabolic below any element is w0(D_R(w)), and lower intervals
/// are isomorphic to intervals from the identity.
pub fn check_lattice(
    join_groups: &[Model],
    iso_groups: &[Model],
    max_parabolic_group: Model,
    cap: Option<usize>,
) -> Result<CheckReport> {
    let mut rec = Recorder::new("lattice and structural properties".to_string());
    for &model in join_groups {
        let poset = WeakOrderPoset::build(model, cap)?;
        for x in 0..poset.len() {
            for y in x..poset.len() {
                rec.check(poset.structure.join(x, y).is_ok(), || {
                    format!("{model}: join of {x}, {y} missing")
                });
                rec.check(poset.structure.meet(x, y).is_ok(), || {
                    format!("{model}: meet of {x}, {y} missing")
                });
            }
        }
        // w0(I) ∨ w0(J) = w0(I ∪ J)
        for i_set in subsets_of(model.generators()) {
            for j_set in subsets_of(model.generators()) {
                let join = poset
                    .structure
                    .join(
                        poset.longest_parabolic(i_set)?,
                        poset.longest_parabolic(j_set)?,
                    )
                    .map_err(|_| Error::NotALattice)?;
                rec.check(join == poset.longest_parabolic(i_set.union(j_set))?, || {
                    format!("{model}: w0({i_set}) ∨ w0({j_set}) != w0(union)")
                });
            }
        }
    }
    {
        let model = max_parabolic_group;
        let poset = WeakOrderPoset::build(model, cap)?;
        let parabolic_tops: Vec<usize> = subsets_of(model.generators())
            .into_iter()
            .map(|j| poset.longest_parabolic(j))
            .collect::<Result<_>>()?;
        let down = poset.structure.down_closure();
        for w in 0..poset.len() {
            let best = poset.max_parabolic_below(w);
            rec.check(down[w].get(best), || {
                format!("{model}: w0(D_R(w)) not below w = {}", poset.element(w))
            });
            for &t in &parabolic_tops {
                if down[w].get(t) {
                    rec.check(down[best].get(t), || {
                        format!(
                            "{model}: parabolic top {} under w = {} not dominated by w0(D_R(w))",
                            poset.element(t),
                            poset.element(w)
                        )
                    });
                }
            }
        }
    }
    for &model in iso_groups {
        let poset = WeakOrderPoset::build(model, cap)?;
        let up = poset.structure.up_closure();
        for (u, upset) in up.iter().enumerate() {
            for w in upset.iter_ones() {
                rec.check(poset.lower_interval_isomorphism_check(u, w)?, || {
                    format!(
                        "{model}: [{}, {}] not isomorphic to its identity translate",
                        poset.element(u),
                        poset.element(w)
                    )
                });
            }
        }
    }
    Ok(rec.finish())
}

/// χ of explicitly built product posets equals the product of the factor
/// polynomials.
pub fn check_product(cap: Option<usize>) -> Result<CheckReport> {
    let mut rec = Recorder::new("product posets multiply characteristic polynomials".to_string());
    let combos = [(Model::A(1), Model::A(2)), (Model::A(2), Model::A(2))];
    for (ma, mb) in combos {
        let pa = WeakOrderPoset::build(ma, cap)?;
        let pb = WeakOrderPoset::build(mb, cap)?;
        let product = pa.structure.product(&pb.structure);
        let expected = pa.char_poly().mul(&pb.char_poly());
        let actual = product.char_poly();
        rec.check(actual == expected, || {
            format!("{ma} x {mb}: product chi {actual} != {expected}")
        });
    }
    Ok(rec.finish())
}

/// Four independent routes to χ agree on whole groups: poset oracle,
/// subset sum, interval decomposition at (e, w0), series extraction
/// (reversed), plus the χ̂ poset route.
pub fn check_fourway(groups: &[Model], cap: Option<usize>) -> Result<CheckReport> {
    let names: Vec<String> = groups.iter().map(|m| m.to_string()).collect();
    let mut rec = Recorder::new(format!("four-way route agreement on {}", names.join(", ")));
    for &model in groups {
        let poset = WeakOrderPoset::build(model, cap)?;
        let family = model.family();
        let rank = model.rank();
        let from_poset = poset.char_poly();
        let from_subsets = char_poly_subset_sum(family, rank)?;
        let graph = model.graph();
        let e = poset.element(poset.bottom());
        let w0 = poset.element(poset.top().expect("full group"));
        let from_decomposition = char_poly_interval_decomposed(&graph, e, w0)?;
        let top = from_subsets.degree().unwrap();
        let from_series = extract_modified_charpoly(family, rank)?.reversed(top);
        let hat_poset = poset.structure.modified_char_poly();
        let hat_sum = modified_char_poly(family, rank)?;
        rec.check(from_poset == from_subsets, || {
            format!("{model}: poset != subset sum")
        });
        rec.check(from_poset == from_decomposition, || {
            format!("{model}: poset != decomposition")
        });
        rec.check(from_poset == from_series, || {
            format!("{model}: poset != series")
        });
        rec.check(hat_poset == hat_sum, || {
            format!("{model}: modified poset != subset sum")
        });
    }
    Ok(rec.finish())
}

/// Commutation descent property: for reduced products v·u with disjoint
/// generator supports, a right descent of v survives in v·u exactly when it
/// commutes with every generator in the support of u.
pub fn check_commutation_descents(groups: &[Model], cap: Option<usize>) -> Result<CheckReport> {
    let names: Vec<String> = groups.iter().map(|m| m.to_string()).collect();
    let mut rec = Recorder::new(format!(
        "commutation descent property on {}",
        names.join(", ")
    ));
    for &model in groups {
        let graph = model.graph();
        let poset = WeakOrderPoset::build(model, cap)?;
        let supports: Vec<GenSet> = poset.elements().iter().map(|e| e.support()).collect();
        for (iv, v) in poset.elements().iter().enumerate() {
            if iv == poset.bottom() {
                continue;
            }
            for (iu, u) in poset.elements().iter().enumerate() {
                if iu == poset.bottom() || !supports[iv].intersection(supports[iu]).is_empty() {
                    continue;
                }
                let vu = v.multiply(u).unwrap();
                // disjoint supports make the concatenation reduced
                rec.check(vu.length() == v.length() + u.length(), || {
                    format!("{model}: lengths did not add for disjoint supports")
                });
                let d_vu = vu.right_descents();
                for k in v.right_descents().iter() {
                    let commutes = supports[iu].iter().all(|s| graph.edge_label(k, s) == 2);
                    rec.check(d_vu.contains(k) == commutes, || {
                        format!(
                            "{model}: v = {v}, u = {u}, s_{k}: descent {} vs commutes {commutes}",
                            d_vu.contains(k)
                        )
                    });
                }
            }
        }
    }
    Ok(rec.finish())
}

/// Configuration for the CLI verify subcommand.
#[derive(Debug, Clone, Copy)]
pub struct VerifyConfig {
    pub max_a: usize,
    pub max_bd: usize,
    pub samples: usize,
    pub seed: u64,
    pub cap: Option<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_a: 4,
            max_bd: 4,
            samples: 500,
            seed: 0x5eed,
            cap: None,
        }
    }
}

/// All suite names accepted by `verify --suite`.
pub const SUITE_NAMES: &[&str] = &[
    "alt",
    "mobius",
    "interval",
    "descent",
    "fixed",
    "genfun",
    "affine",
    "lattice",
    "product",
    "fourway",
    "commutation",
];

/// Run one named suite with CLI-level configuration.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<CheckReport> {
    let a_models = |hi: usize| -> Vec<Model> { (2..=hi).map(Model::A).collect() };
    let bd_models =
        |hi: usize| -> Vec<Model> { (2..=hi).flat_map(|n| [Model::B(n), Model::D(n)]).collect() };
    match name {
        "alt" => check_alternating(3, (cfg.max_a + 2).min(7), cfg.cap),
        "mobius" => {
            let mut groups = a_models(cfg.max_a);
            groups.extend(bd_models(cfg.max_bd.min(4)));
            check_mobius(&groups, cfg.cap)
        }
        "interval" => {
            let groups = [
                Model::A(cfg.max_a.max(2)),
                Model::B(cfg.max_bd.max(2)),
                Model::D(cfg.max_bd.max(2)),
            ];
            check_interval_decomposition(&groups, cfg.samples, cfg.seed, cfg.cap)
        }
        "descent" => {
            let groups = [Model::A(cfg.max_a.min(4)), Model::B(cfg.max_bd.min(3))];
            check_descent_classes(&groups, cfg.cap)
        }
        "fixed" => check_fixed_descent(cfg.max_a.min(5), cfg.cap),
        "genfun" => check_genfun(10, 12),
        "affine" => check_affine(8),
        "lattice" => {
            let join_groups = [Model::A(cfg.max_a.min(4)), Model::B(cfg.max_bd.min(3))];
            let iso_groups = [Model::A(3), Model::B(3)];
            check_lattice(
                &join_groups,
                &iso_groups,
                Model::A(cfg.max_a.min(4)),
                cfg.cap,
            )
        }
        "product" => check_product(cfg.cap),
        "fourway" => {
            let mut groups = a_models(cfg.max_a);
            groups.extend(bd_models(cfg.max_bd.min(4)));
            check_fourway(&groups, cfg.cap)
        }
        "commutation" => check_commutation_descents(&[Model::A(4), Model::B(3)], cfg.cap),
        other => Err(Error::UnknownSuite { name: other.into() }),
    }
}
