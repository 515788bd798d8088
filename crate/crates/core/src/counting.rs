//! Exact weight distributions of degree-bounded functions and the bound chain
//! comparing balanced low-degree functions with restricted bent functions.
//!
//! `A^k_n(t)` is the set of `n`-variable functions of degree at most `k` and
//! weight `t`. Everything is exact: counts are big integers and the `3.47`
//! constant is carried as `347/100`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::{BigInt, BigUint};
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeMap, SerializeStruct, Serializer};

use crate::anf::{span_ranges, walk_span};
use crate::census::DEFAULT_MONOMIAL_CAP;
use crate::error::{Error, Result};
use crate::function::MAX_VARIABLES;
use crate::spectral::wht;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    ConvolutionLowerBound,
}

/// `t ↦ |A^k_n(t)|`, stored sparsely (absent weights count zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    n: u32,
    k: u32,
    counts: BTreeMap<u64, BigUint>,
    provenance: Provenance,
}

impl WeightDistribution {
    /// Builds a distribution from explicit counts; zero entries are dropped.
    pub fn from_counts(
        n: u32,
        k: u32,
        counts: impl IntoIterator<Item = (u64, BigUint)>,
        provenance: Provenance,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (t, c) in counts {
            if t > 1 << n {
                return Err(Error::VectorOutOfRange {
                    vector: t as u32,
                    n,
                });
            }
            if !c.is_zero() {
                *map.entry(t).or_insert_with(BigUint::zero) += c;
            }
        }
        Ok(WeightDistribution {
            n,
            k,
            counts: map,
            provenance,
        })
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn degree_bound(&self) -> u32 {
        self.k
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn get(&self, t: u64) -> BigUint {
        self.counts.get(&t).cloned().unwrap_or_default()
    }

    /// Nonzero entries in increasing weight.
    pub fn iter(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.counts.iter().map(|(&t, c)| (t, c))
    }

    pub fn total(&self) -> BigUint {
        self.counts.values().sum()
    }

    /// `counts[t] = counts[2^n - t]` for every `t`.
    pub fn is_symmetric(&self) -> bool {
        let full = 1u64 << self.n;
        self.counts
            .iter()
            .all(|(&t, c)| self.counts.get(&(full - t)) == Some(c))
    }
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        struct Counts<'a>(&'a BTreeMap<u64, BigUint>);
        impl Serialize for Counts<'_> {
            fn serialize<S: Serializer>(
                &self,
                serializer: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                let mut m = serializer.serialize_map(Some(self.0.len()))?;
                for (t, c) in self.0 {
                    m.serialize_entry(&t.to_string(), &c.to_string())?;
                }
                m.end()
            }
        }
        let mut st = serializer.serialize_struct("WeightDistribution", 5)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field(
            "provenance",
            match self.provenance {
                Provenance::Exact => "Exact",
                Provenance::ConvolutionLowerBound => "ConvolutionLowerBound",
            },
        )?;
        st.serialize_field("total", &self.total().to_string())?;
        st.serialize_field("counts", &Counts(&self.counts))?;
        st.end()
    }
}

/// `Σ_{m ≤ k} C(n, m)`, the number of monomials of degree at most `k`.
pub fn monomial_count(n: u32, k: u32) -> u64 {
    (0..=k.min(n))
        .map(|m| binomial(u64::from(n), u64::from(m)))
        .sum()
}

/// `2^{Σ_{m ≤ k} C(n, m)}`: every coefficient choice is a distinct function.
pub fn total_count(n: u32, k: u32) -> BigUint {
    BigUint::one() << monomial_count(n, k)
}

pub fn exact_distribution(n: u32, k: u32) -> Result<WeightDistribution> {
    exact_distribution_capped(n, k, DEFAULT_MONOMIAL_CAP)
}

/// Exact `|A^k_n(t)|` for all `t` by enumerating every ANF of degree ≤ `k`.
///
/// The part of degree ≥ 2 is walked explicitly. For each such `g` the
/// weights of all `2^{n+1}` functions `g ⊕ ⟨a, x⟩ ⊕ c` come from one spectrum:
/// `wt(g ⊕ ⟨a, x⟩) = (2^n - W_g(a)) / 2`, and adding `c = 1` complements.
pub fn exact_distribution_capped(n: u32, k: u32, cap: u32) -> Result<WeightDistribution> {
    if n > MAX_VARIABLES {
        return Err(Error::NTooLarge {
            n,
            cap: MAX_VARIABLES,
        });
    }
    let monomials = monomial_count(n, k);
    if monomials > u64::from(cap) {
        return Err(Error::SpaceTooLarge {
            monomials: monomials as u32,
            cap,
        });
    }
    let full = 1u64 << n;
    if k == 0 || n == 0 {
        // constants only
        let counts = [(0, BigUint::one()), (full, BigUint::one())];
        return WeightDistribution::from_counts(n, k, counts, Provenance::Exact);
    }
    let nonlinear: Vec<u32> = (0..1u32 << n)
        .filter(|m| (2..=k).contains(&m.count_ones()))
        .collect();
    let tallies: Vec<HashMap<u64, u64>> = span_ranges(nonlinear.len() as u32)
        .into_par_iter()
        .map(|range| {
            let mut tally = HashMap::new();
            walk_span(n, &nonlinear, range, |g| {
                for &w in wht(g).coeffs() {
                    let t = ((full as i64 - w) / 2) as u64;
                    *tally.entry(t).or_insert(0) += 1;
                    *tally.entry(full - t).or_insert(0) += 1;
                }
            });
            tally
        })
        .collect();
    let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
    for tally in tallies {
        for (t, c) in tally {
            *merged.entry(t).or_insert(0) += c;
        }
    }
    WeightDistribution::from_counts(
        n,
        k,
        merged.into_iter().map(|(t, c)| (t, BigUint::from(c))),
        Provenance::Exact,
    )
}

/// Counts of `h = f·x_{n+1} ⊕ g·(x_{n+1} ⊕ 1)` with `f, g` drawn from `base`:
/// `out[t] = Σ_{t₁ + t₂ = t} base[t₁]·base[t₂]`.
///
/// Distinct pairs give distinct `h` of degree at most `k + 1`, so the result
/// never exceeds the exact distribution for `(n + 1, k + 1)`; it is a lower
/// bound, not an equality.
pub fn convolution_bound(base: &WeightDistribution) -> WeightDistribution {
    let mut counts: BTreeMap<u64, BigUint> = BTreeMap::new();
    for (&t1, c1) in &base.counts {
        for (&t2, c2) in &base.counts {
            *counts.entry(t1 + t2).or_insert_with(BigUint::zero) += c1 * c2;
        }
    }
    WeightDistribution {
        n: base.n + 1,
        k: base.k + 1,
        counts,
        provenance: Provenance::ConvolutionLowerBound,
    }
}

/// `⌊2 (Σ_{t=0}^{h} dist[t])² / (h + 1)²⌋` with `h = ⌊2^{n'}/2⌋` for a
/// distribution in `n'` variables.
///
/// The half-range sum includes the middle weight `h` once. The quantity is at
/// most `convolution_bound(dist)` at the balanced weight `2^{n'}`.
pub fn cauchy_schwarz_bound(dist: &WeightDistribution) -> BigUint {
    let half = (1u64 << dist.n) / 2;
    let partial: BigUint = dist.counts.range(..=half).map(|(_, c)| c).sum();
    let terms = BigUint::from(half + 1);
    (BigUint::from(2u32) * &partial * &partial) / (&terms * &terms)
}

/// Fixed note attached to every [`BoundReport`].
pub const BOUND_CAVEAT: &str = "nominal comparison of the leading exponents only; the (1 + o(1)) factors of both bounds are not modeled";

/// Exponents of the two sides of the counting argument for even `n`:
/// balanced functions of degree at most `n/2 - 1` in `n - 1` variables number
/// at least `2^{2^{n-1} - 1 - (2n - 2)}`, while restricted bent functions
/// number fewer than `2^{3.47 · 2^{n-4}}` (up to `1 + o(1)` factors).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub n: u32,
    pub log2_balanced_lower: BigRational,
    pub log2_plateaued_upper: BigRational,
    pub refuted_nominally: bool,
    pub caveat: &'static str,
}

/// Exact decimal form of a rational whose denominator divides a power of ten.
fn decimal_string(r: &BigRational) -> String {
    let (num, den) = (r.numer(), r.denom());
    let mut digits = 0usize;
    let mut scale = BigInt::one();
    while !(&scale * num).is_multiple_of(den) {
        scale *= 10;
        digits += 1;
        assert!(
            digits < 64,
            "denominator is not a divisor of a power of ten"
        );
    }
    let scaled = &scale * num / den;
    if digits == 0 {
        return scaled.to_string();
    }
    let neg = scaled < BigInt::zero();
    let s = scaled.magnitude().to_string();
    let s = format!("{s:0>width$}", width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{int}.{frac}", if neg { "-" } else { "" })
}

impl Serialize for BoundReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("BoundReport", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field(
            "log2BalancedLower",
            &decimal_string(&self.log2_balanced_lower),
        )?;
        st.serialize_field(
            "log2PlateauedUpper",
            &decimal_string(&self.log2_plateaued_upper),
        )?;
        st.serialize_field(
            "log2PlateauedUpperRational",
            &self.log2_plateaued_upper.to_string(),
        )?;
        st.serialize_field("refutedNominally", &self.refuted_nominally)?;
        st.serialize_field("caveat", self.caveat)?;
        st.end()
    }
}

impl BoundReport {
    pub fn lower_decimal(&self) -> String {
        decimal_string(&self.log2_balanced_lower)
    }

    pub fn upper_decimal(&self) -> String {
        decimal_string(&self.log2_plateaued_upper)
    }
}

/// Compares `2^{n-1} - 1 - (2n - 2)` with `347/100 · 2^{n-4}` exactly.
pub fn bound_report(n: u32) -> Result<BoundReport> {
    if n % 2 == 1 {
        return Err(Error::OddN { n });
    }
    if n < 4 {
        return Err(Error::BelowMinimum { n, min: 4 });
    }
    let pow = |e: u32| BigInt::one() << e;
    let lower = pow(n - 1) - BigInt::one() - BigInt::from(2 * n - 2);
    let log2_balanced_lower = BigRational::from_integer(lower);
    let log2_plateaued_upper = BigRational::new(BigInt::from(347) * pow(n - 4), BigInt::from(100));
    Ok(BoundReport {
        n,
        refuted_nominally: log2_balanced_lower > log2_plateaued_upper,
        log2_balanced_lower,
        log2_plateaued_upper,
        caveat: BOUND_CAVEAT,
    })
}

/// Exact `|A^k_n(2^{n-1})|`, the balanced count.
pub fn balanced_count(dist: &WeightDistribution) -> BigUint {
    dist.n
        .checked_sub(1)
        .map_or_else(BigUint::zero, |e| dist.get(1 << e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::BooleanFunction;

    fn dist(n: u32, k: u32, pairs: &[(u64, u64)]) -> WeightDistribution {
        WeightDistribution::from_counts(
            n,
            k,
            pairs.iter().map(|&(t, c)| (t, BigUint::from(c))),
            Provenance::Exact,
        )
        .unwrap()
    }

    // evaluates every polynomial directly, no transforms
    fn brute_force_weights(n: u32, k: u32) -> BTreeMap<u64, u64> {
        let monomials: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() <= k).collect();
        let mut out = BTreeMap::new();
        for subset in 0u64..1 << monomials.len() {
            let f = BooleanFunction::from_fn(n, |x| {
                monomials
                    .iter()
                    .enumerate()
                    .filter(|(j, &m)| subset >> j & 1 == 1 && x & m == m)
                    .count()
                    % 2
                    == 1
            });
            *out.entry(f.weight()).or_insert(0) += 1;
        }
        out
    }

    #[test]
    fn exact_examples() {
        let d = exact_distribution(2, 1).unwrap();
        assert_eq!(d, dist(2, 1, &[(0, 1), (2, 6), (4, 1)]));
        let d = exact_distribution(3, 2).unwrap();
        assert_eq!(d.get(4), BigUint::from(70u32));
        assert_eq!(d.total(), BigUint::from(128u32));
        for n in [0, 3, 10, 24] {
            let d = exact_distribution(n, 0).unwrap();
            assert_eq!(d, dist(n, 0, &[(0, 1), (1 << n, 1)]));
        }
    }

    #[test]
    fn exact_matches_brute_force() {
        for n in 0..=4 {
            for k in 0..=n {
                let d = exact_distribution(n, k).unwrap();
                let oracle = brute_force_weights(n, k);
                let got: BTreeMap<u64, u64> = d
                    .iter()
                    .map(|(t, c)| (t, u64::try_from(c).unwrap()))
                    .collect();
                assert_eq!(got, oracle, "n = {n}, k = {k}");
            }
        }
    }

    #[test]
    fn space_cap() {
        assert_eq!(
            exact_distribution(6, 3).unwrap_err(),
            Error::SpaceTooLarge {
                monomials: 42,
                cap: 25
            }
        );
        assert!(exact_distribution_capped(5, 2, 15).is_err());
    }

    #[test]
    fn totals() {
        assert_eq!(total_count(3, 2), BigUint::from(128u32));
        assert_eq!(total_count(9, 0), BigUint::from(2u32));
        assert_eq!(total_count(4, 2), BigUint::from(2048u32));
        assert_eq!(exact_distribution(4, 2).unwrap().total(), total_count(4, 2));
        assert_eq!(total_count(3, 7), BigUint::from(256u32));
    }

    #[test]
    fn convolution_examples() {
        let c = convolution_bound(&dist(0, 0, &[(0, 1), (1, 1)]));
        assert_eq!(c.provenance(), Provenance::ConvolutionLowerBound);
        assert_eq!(c.counts, dist(1, 1, &[(0, 1), (1, 2), (2, 1)]).counts);
        assert_eq!(c.counts, exact_distribution(1, 1).unwrap().counts);

        let c = convolution_bound(&exact_distribution(2, 1).unwrap());
        assert_eq!(c.get(4), BigUint::from(38u32));
        assert_eq!(
            exact_distribution(3, 2).unwrap().get(4),
            BigUint::from(70u32)
        );

        let c = convolution_bound(&dist(3, 0, &[(0, 1)]));
        assert_eq!(c.counts, dist(4, 1, &[(0, 1)]).counts);
    }

    #[test]
    fn cauchy_schwarz_examples() {
        // half-sum over t ∈ {0, 1, 2} is 1 + 6 = 7; ⌊2·49/9⌋ = 10
        let d = exact_distribution(2, 1).unwrap();
        assert_eq!(cauchy_schwarz_bound(&d), BigUint::from(10u32));
        assert!(cauchy_schwarz_bound(&d) <= convolution_bound(&d).get(4));
        // point mass at 0 in 3 variables: ⌊2 / 25⌋
        assert_eq!(
            cauchy_schwarz_bound(&dist(3, 0, &[(0, 1)])),
            BigUint::zero()
        );
        assert_eq!(
            cauchy_schwarz_bound(&dist(0, 0, &[(0, 1)])),
            BigUint::from(2u32)
        );
        // n' = 0: ⌊2·1/1⌋ = 2 ≤ |A¹₁(1)| = 2
        let d = exact_distribution(0, 0).unwrap();
        assert_eq!(cauchy_schwarz_bound(&d), BigUint::from(2u32));
        assert_eq!(
            exact_distribution(1, 1).unwrap().get(1),
            BigUint::from(2u32)
        );
    }

    #[test]
    fn bound_examples() {
        let r = bound_report(4).unwrap();
        assert_eq!(
            (r.lower_decimal(), r.upper_decimal()),
            ("1".into(), "3.47".into())
        );
        assert!(!r.refuted_nominally);
        let r = bound_report(6).unwrap();
        assert_eq!(
            (r.lower_decimal(), r.upper_decimal()),
            ("21".into(), "13.88".into())
        );
        assert!(r.refuted_nominally);
        let r = bound_report(10).unwrap();
        assert_eq!(
            (r.lower_decimal(), r.upper_decimal()),
            ("493".into(), "222.08".into())
        );
        assert!(r.refuted_nominally);
        assert_eq!(bound_report(5).unwrap_err(), Error::OddN { n: 5 });
        assert!(bound_report(2).is_err());
    }

    #[test]
    fn decimal_formatting() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(decimal_string(&r(347, 100)), "3.47");
        assert_eq!(decimal_string(&r(1, 20)), "0.05");
        assert_eq!(decimal_string(&r(-3, 4)), "-0.75");
        assert_eq!(decimal_string(&r(12, 1)), "12");
    }
}
