//! Bent-function enumeration and sampling, the derivative-image census, and
//! the double count of Walsh zeros over degree-bounded families.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::anf::{monomials_up_to_degree, span_ranges, walk_span};
use crate::classify::is_bent;
use crate::error::{Error, Result};
use crate::function::{BooleanFunction, HyperplaneSpec};
use crate::linear::dot;
use crate::spectral::wht;

/// Default cap on the number of monomials an enumeration may span (2^25 functions).
pub const DEFAULT_MONOMIAL_CAP: u32 = 25;

/// Largest `n` accepted by [`sample_mm_bent`].
pub const MAX_SAMPLED_N: u32 = 16;

/// How a [`BentSet`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BentSource {
    Exhaustive,
    MaioranaMcFarland { seed: u64 },
}

/// Distinct bent functions in canonical (truth-table integer) order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BentSet {
    n: u32,
    functions: Vec<BooleanFunction>,
    source: BentSource,
}

impl BentSet {
    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn functions(&self) -> &[BooleanFunction] {
        &self.functions
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn source(&self) -> BentSource {
        self.source
    }

    pub fn is_exhaustive(&self) -> bool {
        self.source == BentSource::Exhaustive
    }

    pub fn contains(&self, f: &BooleanFunction) -> bool {
        self.functions.binary_search(f).is_ok()
    }
}

fn bent_amplitude_everywhere(f: &BooleanFunction) -> bool {
    let amplitude = 1i64 << (f.num_vars() / 2);
    wht(f).coeffs().iter().all(|c| c.abs() == amplitude)
}

/// Every bent function in `n ∈ {0, 2, 4}` variables, by testing all `2^{2^n}`
/// truth tables with the fast transform.
pub fn enumerate_bent(n: u32) -> Result<BentSet> {
    if n % 2 == 1 {
        return Err(Error::OddN { n });
    }
    if n > 4 {
        return Err(Error::TooLarge { n });
    }
    let total = 1u64 << (1u32 << n);
    let chunk = (total / 64).max(1);
    let mut functions: Vec<BooleanFunction> = (0..total.div_ceil(chunk))
        .into_par_iter()
        .flat_map_iter(|c| {
            (c * chunk..((c + 1) * chunk).min(total))
                .map(|t| BooleanFunction::from_u64(n, t).expect("n <= 4"))
                .filter(bent_amplitude_everywhere)
                .collect::<Vec<_>>()
        })
        .collect();
    functions.sort();
    Ok(BentSet {
        n,
        functions,
        source: BentSource::Exhaustive,
    })
}

/// `f(x, y) = ⟨x, π(y)⟩ ⊕ h(y)` with `x` the low `n/2` coordinates and `y`
/// the high ones.
pub fn maiorana_mcfarland(perm: &[u32], h: &BooleanFunction) -> Result<BooleanFunction> {
    let m = h.num_vars();
    if perm.len() != 1 << m {
        return Err(Error::LengthMismatch {
            n: m,
            expected: 1 << m,
            actual: perm.len(),
        });
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p as usize >= perm.len() || std::mem::replace(&mut seen[p as usize], true) {
            return Err(Error::Parse("not a permutation".into()));
        }
    }
    let low = (1u32 << m) - 1;
    Ok(BooleanFunction::from_fn(2 * m, |z| {
        let (x, y) = (z & low, z >> m);
        dot(x, perm[y as usize]) ^ h.eval(y)
    }))
}

/// `count` distinct Maiorana–McFarland bent functions from a seeded generator.
///
/// Fails with [`Error::SampleExhausted`] if that many distinct functions do
/// not turn up within `64 · count + 1024` draws.
pub fn sample_mm_bent(n: u32, count: usize, seed: u64) -> Result<BentSet> {
    if n % 2 == 1 {
        return Err(Error::OddN { n });
    }
    if n == 0 || n > MAX_SAMPLED_N {
        return Err(Error::TooLarge { n });
    }
    let m = n / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    let mut perm: Vec<u32> = (0..1u32 << m).collect();
    let budget = 64 * count + 1024;
    for _ in 0..budget {
        if found.len() == count {
            break;
        }
        perm.shuffle(&mut rng);
        let h = BooleanFunction::from_fn(m, |_| rng.gen());
        let f = maiorana_mcfarland(&perm, &h)?;
        assert!(is_bent(&f), "Maiorana-McFarland output must be bent");
        found.insert(f);
    }
    if found.len() < count {
        return Err(Error::SampleExhausted {
            requested: count,
            found: found.len(),
        });
    }
    Ok(BentSet {
        n,
        functions: found.into_iter().collect(),
        source: BentSource::MaioranaMcFarland { seed },
    })
}

/// Derivative images of a bent set against the balanced low-degree candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub n: u32,
    pub bent_count: usize,
    pub exhaustive: bool,
    /// Reduced derivatives `D_a b` as `(n-1)`-variable functions.
    pub derivative_images: BTreeSet<BooleanFunction>,
    /// Balanced `(n-1)`-variable functions of degree at most `n/2 - 1`.
    pub candidates: BTreeSet<BooleanFunction>,
    pub non_derivatives: BTreeSet<BooleanFunction>,
    /// Distinct hyperplane restrictions (all normals, both sides) of the bent set.
    pub restriction_images: usize,
}

impl CensusReport {
    /// Sampled censuses only see part of the derivative images.
    pub fn lower_bound_only(&self) -> bool {
        !self.exhaustive
    }

    pub fn caveat(&self) -> Option<&'static str> {
        self.lower_bound_only().then_some(
            "lower bound on derivativeImages only: bent set is sampled and only coordinate directions are used",
        )
    }
}

fn table_string(f: &BooleanFunction) -> String {
    f.to_hex_string().unwrap_or_else(|| f.to_binary_string())
}

/// The JSON form; `dump_functions` adds the member tables.
pub struct CensusJson<'a> {
    pub report: &'a CensusReport,
    pub dump_functions: bool,
}

impl Serialize for CensusJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let r = self.report;
        let mut st = serializer.serialize_struct("CensusReport", 12)?;
        st.serialize_field("n", &r.n)?;
        st.serialize_field("bentCount", &r.bent_count)?;
        st.serialize_field("exhaustive", &r.exhaustive)?;
        st.serialize_field("lowerBoundOnly", &r.lower_bound_only())?;
        st.serialize_field("caveat", &r.caveat())?;
        st.serialize_field("derivativeImageCount", &r.derivative_images.len())?;
        st.serialize_field("candidateCount", &r.candidates.len())?;
        st.serialize_field("nonDerivativeCount", &r.non_derivatives.len())?;
        st.serialize_field("restrictionImageCount", &r.restriction_images)?;
        let nd: Vec<String> = r.non_derivatives.iter().map(table_string).collect();
        st.serialize_field("nonDerivatives", &nd)?;
        if self.dump_functions {
            let di: Vec<String> = r.derivative_images.iter().map(table_string).collect();
            let ca: Vec<String> = r.candidates.iter().map(table_string).collect();
            st.serialize_field("derivativeImages", &di)?;
            st.serialize_field("candidates", &ca)?;
        } else {
            st.skip_field("derivativeImages")?;
            st.skip_field("candidates")?;
        }
        st.end()
    }
}

/// Balanced functions of `vars` variables and degree at most `k`.
pub fn balanced_candidates(vars: u32, k: u32, cap: u32) -> Result<BTreeSet<BooleanFunction>> {
    let monomials = monomials_up_to_degree(vars, k);
    let count = monomials.len() as u32;
    if count > cap {
        return Err(Error::CandidateSpaceTooLarge {
            monomials: count,
            cap,
        });
    }
    let found: Vec<Vec<BooleanFunction>> = span_ranges(count)
        .into_par_iter()
        .map(|range| {
            let mut out = Vec::new();
            walk_span(vars, &monomials, range, |f| {
                if f.is_balanced() {
                    out.push(f.clone());
                }
            });
            out
        })
        .collect();
    Ok(found.into_iter().flatten().collect())
}

/// Runs the census with the default candidate cap.
pub fn derivative_census(bents: &BentSet) -> Result<CensusReport> {
    derivative_census_capped(bents, DEFAULT_MONOMIAL_CAP)
}

/// Collects every reduced derivative of the bent set and compares it with the
/// balanced functions of degree at most `n/2 - 1` in `n - 1` variables.
///
/// Exhaustive sets use every nonzero direction; sampled sets use the
/// coordinate directions only.
pub fn derivative_census_capped(bents: &BentSet, cap: u32) -> Result<CensusReport> {
    let n = bents.num_vars();
    if n == 0 {
        return Err(Error::NoVariables);
    }
    let candidates = balanced_candidates(n - 1, (n / 2).saturating_sub(1), cap)?;
    let directions: Vec<u32> = if bents.is_exhaustive() {
        (1..1u32 << n).collect()
    } else {
        (0..n).map(|i| 1 << i).collect()
    };
    let images: Vec<(Vec<BooleanFunction>, Vec<BooleanFunction>)> = bents
        .functions()
        .par_iter()
        .map(|b| {
            let derivs = directions
                .iter()
                .map(|&a| b.reduce_derivative_along(a))
                .collect::<Result<Vec<_>>>()?;
            let restrictions = HyperplaneSpec::all(n)
                .map(|h| b.restrict(&h))
                .collect::<Result<Vec<_>>>()?;
            Ok((derivs, restrictions))
        })
        .collect::<Result<_>>()?;
    let mut derivative_images = BTreeSet::new();
    let mut restriction_images = BTreeSet::new();
    for (d, r) in images {
        derivative_images.extend(d);
        restriction_images.extend(r);
    }
    let non_derivatives = candidates.difference(&derivative_images).cloned().collect();
    Ok(CensusReport {
        n,
        bent_count: bents.len(),
        exhaustive: bents.is_exhaustive(),
        derivative_images,
        candidates,
        non_derivatives,
        restriction_images: restriction_images.len(),
    })
}

fn exhaustive_images(n: u32) -> &'static BTreeSet<BooleanFunction> {
    static N2: OnceLock<BTreeSet<BooleanFunction>> = OnceLock::new();
    static N4: OnceLock<BTreeSet<BooleanFunction>> = OnceLock::new();
    let cell = if n == 2 { &N2 } else { &N4 };
    cell.get_or_init(|| {
        let bents = enumerate_bent(n).expect("n is 2 or 4");
        derivative_census(&bents)
            .expect("census at n <= 4 is in range")
            .derivative_images
    })
}

/// Whether `f` (in `n - 1` variables) is a reduced derivative of an
/// `n`-variable bent function, decided exhaustively for `n ≤ 4`.
///
/// Bent functions do not exist in an odd number of variables, so functions
/// of 0 or 2 variables are never derivatives.
pub fn is_derivative_of_some_bent(f: &BooleanFunction) -> Result<bool> {
    match f.num_vars() {
        0 | 2 => Ok(false),
        v @ (1 | 3) => Ok(exhaustive_images(v + 1).contains(f)),
        v => Err(Error::TooLarge { n: v + 1 }),
    }
}

/// Walsh zero counts over every function of degree at most `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleCountReport {
    pub n: u32,
    pub k: u32,
    pub functions: u64,
    /// `E_k`: balanced functions of degree at most `k`.
    pub balanced: u64,
    pub total_zeros: u64,
    /// Number of functions with each Walsh zero count.
    pub zero_histogram: BTreeMap<u64, u64>,
}

impl DoubleCountReport {
    /// `E_k · 2^n`.
    pub fn expected_zeros(&self) -> u64 {
        self.balanced << self.n
    }

    pub fn holds(&self) -> bool {
        self.total_zeros == self.expected_zeros()
    }
}

impl Serialize for DoubleCountReport {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("DoubleCountReport", 8)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("functions", &self.functions)?;
        st.serialize_field("balanced", &self.balanced)?;
        st.serialize_field("totalZeros", &self.total_zeros)?;
        st.serialize_field("expectedZeros", &self.expected_zeros())?;
        st.serialize_field("holds", &self.holds())?;
        let hist: BTreeMap<String, u64> = self
            .zero_histogram
            .iter()
            .map(|(z, c)| (z.to_string(), *c))
            .collect();
        st.serialize_field("zeroHistogram", &hist)?;
        st.end()
    }
}

/// Sums the Walsh zeros of every function of degree at most `k` and counts
/// the balanced ones among them.
pub fn double_count(n: u32, k: u32, cap: u32) -> Result<DoubleCountReport> {
    let monomials = monomials_up_to_degree(n, k);
    let count = monomials.len() as u32;
    if count > cap {
        return Err(Error::CandidateSpaceTooLarge {
            monomials: count,
            cap,
        });
    }
    let partials: Vec<(u64, BTreeMap<u64, u64>)> = span_ranges(count)
        .into_par_iter()
        .map(|range| {
            let mut balanced = 0;
            let mut hist = BTreeMap::new();
            walk_span(n, &monomials, range, |f| {
                balanced += u64::from(f.is_balanced());
                *hist.entry(wht(f).zero_count() as u64).or_insert(0) += 1;
            });
            (balanced, hist)
        })
        .collect();
    let mut balanced = 0;
    let mut zero_histogram = BTreeMap::new();
    for (b, h) in partials {
        balanced += b;
        for (z, c) in h {
            *zero_histogram.entry(z).or_insert(0) += c;
        }
    }
    Ok(DoubleCountReport {
        n,
        k,
        functions: 1 << count,
        balanced,
        total_zeros: zero_histogram.iter().map(|(z, c)| z * c).sum(),
        zero_histogram,
    })
}

/// Total Walsh zeros over degree ≤ `k` equals `E_k · 2^n`.
pub fn verify_double_count(n: u32, k: u32) -> Result<bool> {
    Ok(double_count(n, k, DEFAULT_MONOMIAL_CAP)?.holds())
}
