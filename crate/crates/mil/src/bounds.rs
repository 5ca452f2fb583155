//! Hypothesis-space size calculators.
//!
//! Two language bounds are exposed side by side because they disagree in the
//! sources this toolkit reproduces: the lemma-style bound is m * p^(k+1),
//! while the tabulated figures follow (m * p)^(k+1). Both are computed
//! exactly; callers pick the reading they need.

use num_bigint::BigUint;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    /// m: number of metarules.
    pub metarule_count: u64,
    /// p: number of predicate symbols (or background definitions, in the
    /// tabulated reading).
    pub predicate_count: u64,
    /// k: maximum body literals per metarule.
    pub max_body_literals: u32,
    /// c: number of positive examples.
    pub example_count: u64,
    /// n: target theory size in clauses.
    pub theory_size: u32,
    /// m * p^(k+1)
    pub max_language_lemma: BigUint,
    /// (m * p)^(k+1)
    pub max_language_table: BigUint,
    /// max_language_table^n
    pub max_hypothesis_space: BigUint,
    /// c * m * p^(k+1): one construction pass.
    pub construction_cost: BigUint,
    /// (c * m * p^(k+1))^n: a size-ordered search.
    pub search_cost: BigUint,
}

/// All inputs must be at least 1.
pub fn bounds(m: u64, p: u64, k: u32, c: u64, n: u32) -> BoundsReport {
    assert!(m >= 1 && p >= 1 && k >= 1 && c >= 1 && n >= 1, "bounds inputs must be >= 1");
    let big = BigUint::from;
    let lemma = big(m) * big(p).pow(k + 1);
    let table = (big(m) * big(p)).pow(k + 1);
    let hypothesis_space = table.pow(n);
    let construction = big(c) * &lemma;
    let search = construction.pow(n);
    BoundsReport {
        metarule_count: m,
        predicate_count: p,
        max_body_literals: k,
        example_count: c,
        theory_size: n,
        max_language_lemma: lemma,
        max_language_table: table,
        max_hypothesis_space: hypothesis_space,
        construction_cost: construction,
        search_cost: search,
    }
}

/// Base-10 logarithm of an arbitrary-precision integer, accurate well past
/// the comparisons made with it.
pub fn log10(x: &BigUint) -> f64 {
    let digits = x.to_string();
    let take = digits.len().min(17);
    let lead: f64 = digits[..take].parse().expect("digits parse");
    (digits.len() - take) as f64 + lead.log10()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_world_row() {
        let r = bounds(5, 19, 3, 625, 625);
        assert_eq!(r.max_language_table, BigUint::from(81_450_625u64));
        assert!((log10(&r.max_hypothesis_space) - 4944.309013).abs() < 0.01);
    }

    #[test]
    fn grammar_fragment_row() {
        let r = bounds(1, 60, 2, 1348, 36);
        assert_eq!(r.max_language_table, BigUint::from(216_000u64));
        assert!((log10(&r.max_hypothesis_space) - 192.040335).abs() < 0.01);
    }

    #[test]
    fn lemma_and_table_variants_differ() {
        let r = bounds(4, 1, 2, 10, 4);
        assert_eq!(r.max_language_lemma, BigUint::from(4u64));
        assert_eq!(r.max_language_table, BigUint::from(64u64));
        assert!(r.max_language_lemma <= r.max_language_table);
    }

    #[test]
    fn costs_follow_the_lemma_bound() {
        let r = bounds(2, 3, 2, 5, 2);
        // c * m * p^(k+1) = 5 * 2 * 27 = 270; squared for the search.
        assert_eq!(r.construction_cost, BigUint::from(270u64));
        assert_eq!(r.search_cost, BigUint::from(72_900u64));
    }

    #[test]
    fn log10_of_small_values() {
        assert!((log10(&BigUint::from(1000u32)) - 3.0).abs() < 1e-9);
        assert!((log10(&BigUint::from(16_777_216u64)) - 7.224720).abs() < 1e-5);
    }
}
