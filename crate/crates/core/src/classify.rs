//! Bent / plateaued classification and the exhaustive verifiers built on it.
//!
//! A function is `s`-plateaued when every Walsh coefficient is `0` or
//! `±2^{(n+s)/2}`; bent functions are the `s = 0` case. Parseval forces the
//! support of such a spectrum to have exactly `2^{n-s}` points.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::ser::{Serialize, SerializeStruct, Serializer};
use serde::Serialize as DeriveSerialize;

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, HyperplaneSpec};
use crate::spectral::{dual_bent, wht, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Bent,
    Plateaued { s: u32 },
    Neither,
}

impl Kind {
    /// `s` for plateaued functions, 0 for bent, `None` otherwise.
    pub fn plateau_index(&self) -> Option<u32> {
        match *self {
            Kind::Bent => Some(0),
            Kind::Plateaued { s } => Some(s),
            Kind::Neither => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Kind::Bent => "Bent",
            Kind::Plateaued { .. } => "Plateaued",
            Kind::Neither => "Neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Classification {
    n: u32,
    kind: Kind,
    support_size: u64,
    amplitude: Option<i64>,
}

impl Classification {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    /// The common nonzero `|W|`, absent for `Neither`.
    pub fn amplitude(&self) -> Option<i64> {
        self.amplitude
    }

    pub fn support_size(&self) -> u64 {
        self.support_size
    }

    /// `|supp(W_f)| / 2^n`, reduced.
    pub fn support_fraction(&self) -> Ratio<u64> {
        Ratio::new(self.support_size, 1 << self.n)
    }
}

impl Serialize for Classification {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("Classification", 6)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("kind", self.kind.name())?;
        st.serialize_field("s", &self.kind.plateau_index())?;
        st.serialize_field("amplitude", &self.amplitude)?;
        st.serialize_field("supportSize", &self.support_size)?;
        st.serialize_field("supportFraction", &self.support_fraction().to_string())?;
        st.end()
    }
}

pub fn classify_spectrum(spectrum: &Spectrum) -> Classification {
    let n = spectrum.num_vars();
    let support_size = spectrum.coeffs().iter().filter(|&&c| c != 0).count() as u64;
    let mut magnitudes = spectrum
        .coeffs()
        .iter()
        .filter(|&&c| c != 0)
        .map(|c| c.abs());
    let first = magnitudes.next();
    let kind_and_amp = match first {
        Some(a) if magnitudes.all(|m| m == a) && a.count_ones() == 1 => {
            // a = 2^e, so s = 2e - n
            let e = a.trailing_zeros();
            match (2 * e).checked_sub(n) {
                Some(0) => Some((Kind::Bent, a)),
                Some(s) => Some((Kind::Plateaued { s }, a)),
                None => None,
            }
        }
        _ => None,
    };
    match kind_and_amp {
        Some((kind, a)) => Classification {
            n,
            kind,
            support_size,
            amplitude: Some(a),
        },
        None => Classification {
            n,
            kind: Kind::Neither,
            support_size,
            amplitude: None,
        },
    }
}

pub fn classify(f: &BooleanFunction) -> Classification {
    classify_spectrum(&wht(f))
}

pub fn is_bent(f: &BooleanFunction) -> bool {
    classify(f).kind() == Kind::Bent
}

/// The support of the spectrum is exactly a `2^{-s}` fraction of F₂ⁿ.
pub fn support_fraction_check(f: &BooleanFunction) -> Result<bool> {
    let c = classify(f);
    let s = c.kind().plateau_index().ok_or(Error::NotPlateaued)?;
    Ok(c.support_fraction() == Ratio::new(1, 1u64 << s))
}

/// Evidence that a verifier did not hold.
#[derive(Debug, Clone, PartialEq, Eq, DeriveSerialize)]
pub struct Counterexample {
    pub proposition: String,
    pub n: u32,
    /// Binary truth table of the tested function.
    pub function: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hyperplane: Option<HyperplaneRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<u32>,
    pub left: Vec<u32>,
    pub right: Vec<u32>,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, DeriveSerialize)]
pub struct HyperplaneRecord {
    pub normal: u32,
    pub side: u8,
}

impl From<&HyperplaneSpec> for HyperplaneRecord {
    fn from(h: &HyperplaneSpec) -> Self {
        HyperplaneRecord {
            normal: h.normal(),
            side: u8::from(h.side()),
        }
    }
}

/// Outcome of a single verifier run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    fn pass() -> Self {
        Verdict {
            counterexample: None,
        }
    }

    fn fail(c: Counterexample) -> Self {
        Verdict {
            counterexample: Some(c),
        }
    }
}

fn require_bent(f: &BooleanFunction) -> Result<()> {
    if is_bent(f) {
        Ok(())
    } else {
        Err(Error::NotBent)
    }
}

/// The restriction of a bent function to `h` is 1-plateaued.
pub fn verify_restriction_plateaued(f: &BooleanFunction, h: &HyperplaneSpec) -> Result<Verdict> {
    require_bent(f)?;
    let r = f.restrict(h)?;
    let spectrum = wht(&r);
    let c = classify_spectrum(&spectrum);
    if c.kind() == (Kind::Plateaued { s: 1 }) {
        return Ok(Verdict::pass());
    }
    Ok(Verdict::fail(Counterexample {
        proposition: "bentpla1".into(),
        n: f.num_vars(),
        function: f.to_binary_string(),
        hyperplane: Some(h.into()),
        direction: None,
        left: spectrum.support(),
        right: Vec::new(),
        detail: format!("restriction classifies as {:?}", c.kind()),
    }))
}

/// `supp(D_{e_i} f)` is the complement of the spectral support of the dual
/// restricted to `{x : x_i = 0}`.
pub fn verify_derivative_support(f: &BooleanFunction, i: u32) -> Result<Verdict> {
    if i == 0 || i > f.num_vars() {
        return Err(Error::IndexOutOfRange {
            index: i,
            n: f.num_vars(),
        });
    }
    verify_derivative_support_along(f, 1 << (i - 1))
}

/// As [`verify_derivative_support`] for any nonzero direction `a`, using the
/// hyperplane `{y : ⟨y, a⟩ = 0}` and the matching frames of
/// [`BooleanFunction::reduce_derivative_along`] and [`BooleanFunction::restrict`].
pub fn verify_derivative_support_along(f: &BooleanFunction, a: u32) -> Result<Verdict> {
    require_bent(f)?;
    let left = f.reduce_derivative_along(a)?.support();
    let dual = dual_bent(f)?;
    let restricted = dual.restrict(&HyperplaneSpec::new(a, false)?)?;
    let spectrum = wht(&restricted);
    let right: Vec<u32> = (0..spectrum.coeffs().len() as u32)
        .filter(|&u| spectrum.get(u) == 0)
        .collect();
    if left == right {
        return Ok(Verdict::pass());
    }
    Ok(Verdict::fail(Counterexample {
        proposition: "shap1".into(),
        n: f.num_vars(),
        function: f.to_binary_string(),
        hyperplane: None,
        direction: Some(a),
        left,
        right,
        detail: "derivative support differs from the spectral zero set".into(),
    }))
}

/// Aggregate result of running a verifier over many cases.
#[derive(Debug, Clone, PartialEq, Eq, DeriveSerialize)]
pub struct SuiteReport {
    pub proposition: String,
    pub n: u32,
    pub cases: u64,
    pub failures: Vec<Counterexample>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn run_suite<F>(
    proposition: &str,
    n: u32,
    functions: &[BooleanFunction],
    per_function: F,
) -> Result<SuiteReport>
where
    F: Fn(&BooleanFunction) -> Result<(u64, Vec<Counterexample>)> + Sync,
{
    let results = functions
        .par_iter()
        .map(&per_function)
        .collect::<Result<Vec<_>>>()?;
    let mut cases = 0;
    let mut failures = Vec::new();
    for (c, f) in results {
        cases += c;
        failures.extend(f);
    }
    Ok(SuiteReport {
        proposition: proposition.into(),
        n,
        cases,
        failures,
    })
}

/// Restriction check over every hyperplane, both sides, of every function.
pub fn verify_restrictions_suite(n: u32, bents: &[BooleanFunction]) -> Result<SuiteReport> {
    run_suite("bentpla1", n, bents, |f| {
        let mut failures = Vec::new();
        let mut cases = 0;
        for h in HyperplaneSpec::all(f.num_vars()) {
            cases += 1;
            if let Some(c) = verify_restriction_plateaued(f, &h)?.counterexample {
                failures.push(c);
            }
        }
        Ok((cases, failures))
    })
}

/// Derivative-support check over all nonzero directions, or the coordinate
/// directions only.
pub fn verify_derivative_suite(
    n: u32,
    bents: &[BooleanFunction],
    all_directions: bool,
) -> Result<SuiteReport> {
    run_suite("shap1", n, bents, |f| {
        let n = f.num_vars();
        let directions: Vec<u32> = if all_directions {
            (1..1u32 << n).collect()
        } else {
            (0..n).map(|i| 1 << i).collect()
        };
        let mut failures = Vec::new();
        for &a in &directions {
            if let Some(c) = verify_derivative_support_along(f, a)?.counterexample {
                failures.push(c);
            }
        }
        Ok((directions.len() as u64, failures))
    })
}

/// Support-fraction check on every function and every hyperplane restriction.
pub fn verify_support_fraction_suite(n: u32, bents: &[BooleanFunction]) -> Result<SuiteReport> {
    run_suite("prop1", n, bents, |f| {
        let mut failures = Vec::new();
        let mut cases = 0;
        let restrictions = HyperplaneSpec::all(f.num_vars())
            .map(|h| f.restrict(&h))
            .collect::<Result<Vec<_>>>()?;
        for g in std::iter::once(f.clone()).chain(restrictions) {
            cases += 1;
            let c = classify(&g);
            let ok = match c.kind().plateau_index() {
                Some(s) => c.support_fraction() == Ratio::new(1, 1u64 << s),
                None => false,
            };
            if !ok {
                failures.push(Counterexample {
                    proposition: "prop1".into(),
                    n: g.num_vars(),
                    function: g.to_binary_string(),
                    hyperplane: None,
                    direction: None,
                    left: wht(&g).support(),
                    right: Vec::new(),
                    detail: format!(
                        "{:?} with support fraction {}",
                        c.kind(),
                        c.support_fraction()
                    ),
                });
            }
        }
        Ok((cases, failures))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anf::Anf;
    use crate::linear::AffineMap;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn poly(s: &str, n: u32) -> BooleanFunction {
        Anf::parse(s, n).unwrap().to_function()
    }

    #[test]
    fn classification_examples() {
        let c = classify(&poly("x1*x2", 2));
        assert_eq!(c.kind(), Kind::Bent);
        assert_eq!(c.amplitude(), Some(2));
        assert_eq!(c.support_fraction(), Ratio::new(1, 1));

        // spectrum of x1x2 in 3 variables: (2,2,2,-2) doubled on y3 = 0, zero on y3 = 1
        let f = poly("x1*x2", 3);
        assert_eq!(wht(&f).coeffs(), &[4, 4, 4, -4, 0, 0, 0, 0]);
        let c = classify(&f);
        assert_eq!(c.kind(), Kind::Plateaued { s: 1 });
        assert_eq!(c.amplitude(), Some(4));
        assert_eq!(c.support_fraction(), Ratio::new(1, 2));

        let c = classify(&poly("x1", 2));
        assert_eq!(c.kind(), Kind::Plateaued { s: 2 });
        assert_eq!(c.amplitude(), Some(4));
        assert_eq!(c.support_fraction(), Ratio::new(1, 4));

        // spectrum of x1x2x3 mixes |W| = 6 and 2
        assert_eq!(classify(&poly("x1*x2*x3", 3)).kind(), Kind::Neither);
        assert_eq!(classify(&poly("x1*x2*x3", 3)).amplitude(), None);
    }

    #[test]
    fn support_fraction_examples() {
        assert!(support_fraction_check(&poly("x1*x2", 3)).unwrap());
        let r = poly("x1*x2 + x3*x4", 4)
            .restrict(&HyperplaneSpec::coordinate(1, false).unwrap())
            .unwrap();
        assert!(support_fraction_check(&r).unwrap());
        assert_eq!(classify(&r).support_fraction(), Ratio::new(1, 2));
        assert_eq!(
            support_fraction_check(&poly("x1*x2*x3", 3)).unwrap_err(),
            Error::NotPlateaued
        );
    }

    #[test]
    fn restriction_verifier_examples() {
        let f = poly("x1*x2 + x3*x4", 4);
        let h = HyperplaneSpec::coordinate(1, false).unwrap();
        assert!(verify_restriction_plateaued(&f, &h).unwrap().holds());
        let g = poly("x1*x2", 2);
        let h = HyperplaneSpec::coordinate(1, true).unwrap();
        assert_eq!(wht(&g.restrict(&h).unwrap()).coeffs(), &[0, 2]);
        assert!(verify_restriction_plateaued(&g, &h).unwrap().holds());
        assert_eq!(
            verify_restriction_plateaued(&poly("x1 + x2", 2), &h).unwrap_err(),
            Error::NotBent
        );
    }

    #[test]
    fn derivative_support_examples() {
        let and = poly("x1*x2", 2);
        // L = supp(x) = {1}; dual restricted to x1 = 0 is constant 0 with W = [2, 0]; R = {1}
        assert_eq!(and.reduce_derivative(1).unwrap().support(), vec![1]);
        let dual_restricted = dual_bent(&and)
            .unwrap()
            .restrict(&HyperplaneSpec::coordinate(1, false).unwrap())
            .unwrap();
        assert_eq!(wht(&dual_restricted).coeffs(), &[2, 0]);
        assert!(verify_derivative_support(&and, 1).unwrap().holds());
        let f = poly("x1*x2 + x3*x4", 4);
        for i in 1..=4 {
            assert!(verify_derivative_support(&f, i).unwrap().holds());
        }
        for a in 1..16 {
            assert!(verify_derivative_support_along(&f, a).unwrap().holds());
        }
        assert!(matches!(
            verify_derivative_support(&f, 5),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert_eq!(
            verify_derivative_support(&poly("x1", 2), 1).unwrap_err(),
            Error::NotBent
        );
    }

    #[test]
    fn invariant_under_affine_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let bent = poly("x1*x2 + x3*x4", 4);
        for _ in 0..50 {
            let m = AffineMap::random(4, &mut rng);
            assert_eq!(classify(&bent.apply_affine(&m).unwrap()).kind(), Kind::Bent);
        }
    }

    #[test]
    fn serializes_kind_and_fraction() {
        let json = serde_json::to_value(classify(&poly("x1*x2", 3))).unwrap();
        assert_eq!(json["kind"], "Plateaued");
        assert_eq!(json["s"], 1);
        assert_eq!(json["amplitude"], 4);
        assert_eq!(json["supportFraction"], "1/2");
    }
}
