//! Walsh–Hadamard and Fourier transforms over F₂ⁿ, convolution, and the
//! subspace-indicator identities that tie them together.
//!
//! Everything here is exact integer arithmetic. For an integer-valued
//! `H : F₂ⁿ → ℤ` the Fourier transform is
//!
//! ```text
//! Ĥ(y) = Σ_x H(x) (-1)^⟨x,y⟩
//! ```
//!
//! and the Walsh–Hadamard transform of a Boolean `f` is the transform of its
//! sign function, `W_f = ((-1)^f)^`. The transform is self-inverse up to the
//! factor `2^n`, and the convolution `H*G(z) = Σ_x H(x) G(z ⊕ x)` satisfies
//!
//! ```text
//! 2^n H*G = (Ĥ·Ĝ)^        Ĥ*Ĝ = 2^n (H·G)^
//! ```

use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, MAX_VARIABLES};
use crate::linear::{dot, Subspace};

/// Walsh–Hadamard coefficients of a Boolean function, indexed by `y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Spectrum {
    n: u32,
    coeffs: Vec<i64>,
}

/// Integer-valued function on F₂ⁿ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealFunction {
    n: u32,
    values: Vec<i64>,
}

/// In-place unnormalized butterfly; `data.len()` must be a power of two.
pub(crate) fn butterfly(data: &mut [i64]) {
    debug_assert!(data.len().is_power_of_two());
    let mut half = 1;
    while half < data.len() {
        for block in data.chunks_exact_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
}

fn sign(bit: bool) -> i64 {
    if bit {
        -1
    } else {
        1
    }
}

impl Spectrum {
    /// Wraps raw coefficients; the length must be a power of two.
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if !coeffs.len().is_power_of_two() {
            return Err(Error::LengthMismatch {
                n: coeffs.len().next_power_of_two().trailing_zeros(),
                expected: coeffs.len().next_power_of_two(),
                actual: coeffs.len(),
            });
        }
        let n = coeffs.len().trailing_zeros();
        if n > MAX_VARIABLES {
            return Err(Error::NTooLarge {
                n,
                cap: MAX_VARIABLES,
            });
        }
        Ok(Spectrum { n, coeffs })
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn get(&self, y: u32) -> i64 {
        self.coeffs[y as usize]
    }

    /// `supp(W_f)`: the `y` with `W_f(y) ≠ 0`.
    pub fn support(&self) -> Vec<u32> {
        (0..self.coeffs.len() as u32)
            .filter(|&y| self.coeffs[y as usize] != 0)
            .collect()
    }

    /// The support as a Boolean function of `y`.
    pub fn support_function(&self) -> BooleanFunction {
        BooleanFunction::from_fn(self.n, |y| self.coeffs[y as usize] != 0)
    }

    pub fn zero_count(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c == 0).count()
    }

    /// `Σ_y W(y)² = 2^{2n}`, which holds for every Boolean function.
    pub fn parseval_check(&self) -> bool {
        let total: i128 = self
            .coeffs
            .iter()
            .map(|&c| i128::from(c) * i128::from(c))
            .sum();
        total == 1i128 << (2 * self.n)
    }

    pub fn to_real(&self) -> RealFunction {
        RealFunction {
            n: self.n,
            values: self.coeffs.clone(),
        }
    }
}

impl Serialize for Spectrum {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.coeffs)
    }
}

impl RealFunction {
    pub fn new(n: u32, values: Vec<i64>) -> Result<Self> {
        if n > MAX_VARIABLES {
            return Err(Error::NTooLarge {
                n,
                cap: MAX_VARIABLES,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::LengthMismatch {
                n,
                expected: 1 << n,
                actual: values.len(),
            });
        }
        Ok(RealFunction { n, values })
    }

    pub fn from_fn(n: u32, eval: impl FnMut(u32) -> i64) -> Self {
        RealFunction {
            n,
            values: (0..1u32 << n).map(eval).collect(),
        }
    }

    /// `(-1)^f`.
    pub fn sign_of(f: &BooleanFunction) -> Self {
        RealFunction::from_fn(f.num_vars(), |x| sign(f.eval(x)))
    }

    /// `1_S` for the set described by `member`.
    pub fn indicator(n: u32, member: impl Fn(u32) -> bool) -> Self {
        RealFunction::from_fn(n, |x| i64::from(member(x)))
    }

    pub fn subspace_indicator(gamma: &Subspace) -> Self {
        RealFunction::indicator(gamma.ambient_dim(), |x| gamma.contains(x))
    }

    /// `δ_a`, the indicator of the single point `a`.
    pub fn delta(n: u32, a: u32) -> Self {
        RealFunction::indicator(n, |x| x == a)
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, x: u32) -> i64 {
        self.values[x as usize]
    }

    pub fn support(&self) -> Vec<u32> {
        (0..self.values.len() as u32)
            .filter(|&x| self.values[x as usize] != 0)
            .collect()
    }

    fn same_dim(&self, other: &RealFunction) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// Pointwise product `H·G`.
    pub fn mul(&self, other: &RealFunction) -> Result<Self> {
        self.same_dim(other)?;
        Ok(RealFunction {
            n: self.n,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn scale(&self, k: i64) -> Self {
        RealFunction {
            n: self.n,
            values: self.values.iter().map(|v| v * k).collect(),
        }
    }

    /// Exact division by `2^shift`; `None` if some value is not divisible.
    pub fn exact_shr(&self, shift: u32) -> Option<Self> {
        let unit = 1i64 << shift;
        self.values
            .iter()
            .map(|&v| (v % unit == 0).then_some(v / unit))
            .collect::<Option<Vec<i64>>>()
            .map(|values| RealFunction { n: self.n, values })
    }

    pub fn sum_of_squares(&self) -> i128 {
        self.values
            .iter()
            .map(|&v| i128::from(v) * i128::from(v))
            .sum()
    }
}

/// Fast Walsh–Hadamard transform, `O(n 2^n)`.
pub fn wht(f: &BooleanFunction) -> Spectrum {
    let mut coeffs = RealFunction::sign_of(f).values;
    butterfly(&mut coeffs);
    Spectrum {
        n: f.num_vars(),
        coeffs,
    }
}

/// The defining double sum `W_f(y) = Σ_x (-1)^{f(x) ⊕ ⟨x,y⟩}`, `O(4^n)`.
///
/// Kept as the reference the fast transform is checked against.
pub fn wht_naive(f: &BooleanFunction) -> Spectrum {
    let size = f.len() as u32;
    let coeffs = (0..size)
        .map(|y| (0..size).map(|x| sign(f.eval(x) ^ dot(x, y))).sum())
        .collect();
    Spectrum {
        n: f.num_vars(),
        coeffs,
    }
}

/// `Ĥ(y) = Σ_x H(x) (-1)^⟨x,y⟩`.
pub fn fourier(h: &RealFunction) -> RealFunction {
    let mut values = h.values.clone();
    butterfly(&mut values);
    RealFunction { n: h.n, values }
}

/// The function whose spectrum is `s`.
///
/// Fails with [`Error::NotBooleanSpectrum`] at the first `x` whose
/// reconstructed value is not ±1. The reported value is the reconstruction
/// `2^{-n} ŝ(x)` when that is an integer, and `ŝ(x)` itself otherwise.
pub fn inverse_wht(s: &Spectrum) -> Result<BooleanFunction> {
    let mut values = s.coeffs.clone();
    butterfly(&mut values);
    let unit = 1i64 << s.n;
    for (x, &v) in values.iter().enumerate() {
        if v != unit && v != -unit {
            let value = if v % unit == 0 { v / unit } else { v };
            return Err(Error::NotBooleanSpectrum { x, value });
        }
    }
    Ok(BooleanFunction::from_fn(s.n, |x| values[x as usize] < 0))
}

/// `H*G(z) = Σ_x H(x) G(z ⊕ x)`, evaluated directly from the definition.
pub fn convolve(h: &RealFunction, g: &RealFunction) -> Result<RealFunction> {
    h.same_dim(g)?;
    let size = h.values.len();
    let values = (0..size)
        .map(|z| (0..size).map(|x| h.values[x] * g.values[z ^ x]).sum())
        .collect();
    Ok(RealFunction { n: h.n, values })
}

fn violation(what: &str, lhs: &RealFunction, rhs: &RealFunction) -> Error {
    let x = lhs
        .values
        .iter()
        .zip(&rhs.values)
        .position(|(a, b)| a != b)
        .unwrap_or(0);
    Error::IdentityViolation(format!(
        "{what}: sides differ at x = {x} ({} vs {})",
        lhs.values[x], rhs.values[x]
    ))
}

/// `(Ĥ)^ = 2^n H`.
pub fn check_double_fourier(h: &RealFunction) -> Result<()> {
    let lhs = fourier(&fourier(h));
    let rhs = h.scale(1 << h.n);
    if lhs != rhs {
        return Err(violation("double Fourier", &lhs, &rhs));
    }
    Ok(())
}

/// `Σ_y Ĥ(y)² = 2^n Σ_x H(x)²`.
pub fn check_parseval(h: &RealFunction) -> Result<()> {
    let lhs = fourier(h).sum_of_squares();
    let rhs = h.sum_of_squares() << h.n;
    if lhs != rhs {
        return Err(Error::IdentityViolation(format!(
            "Parseval: {lhs} vs {rhs}"
        )));
    }
    Ok(())
}

/// Both convolution identities: `2^n H*G = (Ĥ·Ĝ)^` and `Ĥ*Ĝ = 2^n (H·G)^`.
pub fn check_convolution_identity(h: &RealFunction, g: &RealFunction) -> Result<()> {
    let direct = convolve(h, g)?.scale(1 << h.n);
    let via_fourier = fourier(&fourier(h).mul(&fourier(g))?);
    if direct != via_fourier {
        return Err(violation("2^n H*G = (Ĥ·Ĝ)^", &direct, &via_fourier));
    }
    let lhs = convolve(&fourier(h), &fourier(g))?;
    let rhs = fourier(&h.mul(g)?).scale(1 << h.n);
    if lhs != rhs {
        return Err(violation("Ĥ*Ĝ = 2^n (H·G)^", &lhs, &rhs));
    }
    Ok(())
}

/// `(1_{Γ⊥})^ = 2^{n - dim Γ} 1_Γ`.
pub fn check_indicator_transform(gamma: &Subspace) -> Result<()> {
    let lhs = fourier(&RealFunction::subspace_indicator(&gamma.dual()?));
    let rhs =
        RealFunction::subspace_indicator(gamma).scale(1 << (gamma.ambient_dim() - gamma.dim()));
    if lhs != rhs {
        return Err(violation("indicator transform", &lhs, &rhs));
    }
    Ok(())
}

/// Right-hand side of `H * 1_{Γ⊥} = 2^{-dim Γ} (Ĥ · 1_Γ)^`, with the division
/// checked to be exact.
pub fn subspace_projection(h: &RealFunction, gamma: &Subspace) -> Result<RealFunction> {
    if gamma.ambient_dim() != h.n {
        return Err(Error::DimensionMismatch {
            left: h.n,
            right: gamma.ambient_dim(),
        });
    }
    let masked = fourier(h).mul(&RealFunction::subspace_indicator(gamma))?;
    fourier(&masked)
        .exact_shr(gamma.dim())
        .ok_or_else(|| Error::IdentityViolation("(Ĥ·1_Γ)^ is not divisible by 2^{dim Γ}".into()))
}

/// Checks `H * 1_{Γ⊥} = 2^{-dim Γ} (Ĥ · 1_Γ)^` against the direct convolution.
pub fn check_subspace_identity(h: &RealFunction, gamma: &Subspace) -> Result<()> {
    let lhs = convolve(h, &RealFunction::subspace_indicator(&gamma.dual()?))?;
    let rhs = subspace_projection(h, gamma)?;
    if lhs != rhs {
        return Err(violation("subspace identity", &lhs, &rhs));
    }
    Ok(())
}

/// `x ↦ H(x) + H(x ⊕ a)`, computed directly and confirmed against
/// `2^{-n+1} (Ĥ · 1_Γ)^` with `Γ = {y : ⟨y, a⟩ = 0}`.
pub fn coset_sum(h: &RealFunction, a: u32) -> Result<RealFunction> {
    if a == 0 {
        return Err(Error::ZeroDirection);
    }
    if h.n < 32 && a >> h.n != 0 {
        return Err(Error::VectorOutOfRange { vector: a, n: h.n });
    }
    let direct = RealFunction::from_fn(h.n, |x| h.get(x) + h.get(x ^ a));
    let spectral = subspace_projection(h, &Subspace::hyperplane(h.n, a)?)?;
    if direct != spectral {
        return Err(violation("coset sum", &direct, &spectral));
    }
    Ok(direct)
}

/// The dual of a bent function: `(-1)^{g(y)} = 2^{-n/2} W_f(y)`.
pub fn dual_bent(f: &BooleanFunction) -> Result<BooleanFunction> {
    let n = f.num_vars();
    if n % 2 == 1 {
        return Err(Error::NotBent);
    }
    let s = wht(f);
    let amplitude = 1i64 << (n / 2);
    if s.coeffs.iter().any(|&c| c.abs() != amplitude) {
        return Err(Error::NotBent);
    }
    Ok(BooleanFunction::from_fn(n, |y| s.get(y) < 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_function(n: u32, rng: &mut ChaCha8Rng) -> BooleanFunction {
        BooleanFunction::from_fn(n, |_| rng.gen())
    }

    fn random_real(n: u32, rng: &mut ChaCha8Rng) -> RealFunction {
        RealFunction::from_fn(n, |_| rng.gen_range(-50..=50))
    }

    #[test]
    fn wht_examples() {
        assert_eq!(wht(&BooleanFunction::zero(2)).coeffs(), &[4, 0, 0, 0]);
        for a in 0..8 {
            let s = wht(&BooleanFunction::linear(3, a).unwrap());
            for y in 0..8 {
                assert_eq!(s.get(y), if y == a { 8 } else { 0 });
            }
        }
        // direct four-term sums for x1 x2
        let and = BooleanFunction::from_u64(2, 0b1000).unwrap();
        let expected: Vec<i64> = (0..4u32)
            .map(|y| {
                (0..4u32)
                    .map(|x| {
                        let e = u32::from(x == 3) + (x & y).count_ones();
                        if e % 2 == 0 {
                            1
                        } else {
                            -1
                        }
                    })
                    .sum()
            })
            .collect();
        assert_eq!(expected, vec![2, 2, 2, -2]);
        assert_eq!(wht(&and).coeffs(), expected.as_slice());
    }

    #[test]
    fn fast_matches_naive() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 0..=7 {
            for _ in 0..20 {
                let f = random_function(n, &mut rng);
                assert_eq!(wht(&f), wht_naive(&f));
            }
        }
    }

    #[test]
    fn spectrum_is_even_and_parseval() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in 1..=9 {
            let s = wht(&random_function(n, &mut rng));
            assert!(s.parseval_check());
            assert!(s.coeffs().iter().all(|c| c % 2 == 0 && c.abs() <= 1 << n));
        }
    }

    #[test]
    fn fourier_examples() {
        let ones = RealFunction::from_fn(3, |_| 1);
        assert_eq!(fourier(&ones).values(), &[8, 0, 0, 0, 0, 0, 0, 0]);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let h = random_real(4, &mut rng);
        assert_eq!(fourier(&fourier(&h)), h.scale(16));
        // Γ = {x : x1 = 0} = {0, e2}, Γ⊥ = {0, e1}; direct sums give 2·1_Γ
        let gamma_perp = RealFunction::indicator(2, |x| x == 0 || x == 1);
        assert_eq!(fourier(&gamma_perp).values(), &[2, 0, 2, 0]);
        let gamma = Subspace::hyperplane(2, 1).unwrap();
        assert_eq!(gamma.elements(), vec![0, 2]);
        check_indicator_transform(&gamma).unwrap();
    }

    #[test]
    fn inverse_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in 0..=10 {
            let f = random_function(n, &mut rng);
            assert_eq!(inverse_wht(&wht(&f)).unwrap(), f);
        }
        let s = Spectrum::new(vec![4, 0, 0, 0]).unwrap();
        assert_eq!(inverse_wht(&s).unwrap(), BooleanFunction::zero(2));
        let s = Spectrum::new(vec![2, 2, 2, 2]).unwrap();
        assert_eq!(
            inverse_wht(&s).unwrap_err(),
            Error::NotBooleanSpectrum { x: 0, value: 2 }
        );
        assert!(Spectrum::new(vec![1, 2, 3]).is_err());
    }

    #[test]
    fn convolution_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = random_real(4, &mut rng);
        assert_eq!(convolve(&h, &RealFunction::delta(4, 0)).unwrap(), h);
        let g = random_real(4, &mut rng);
        check_convolution_identity(&h, &g).unwrap();
        assert!(convolve(&h, &random_real(3, &mut rng)).is_err());

        // H = (-1)^{x1 x2}: H = [1, 1, 1, -1]; H(x) + H(x ⊕ e1) = [2, 2, 0, 0]
        let and = BooleanFunction::from_u64(2, 0b1000).unwrap();
        let sign = RealFunction::sign_of(&and);
        assert_eq!(sign.values(), &[1, 1, 1, -1]);
        let perp = RealFunction::indicator(2, |x| x == 0 || x == 1);
        assert_eq!(convolve(&sign, &perp).unwrap().values(), &[2, 2, 0, 0]);
    }

    #[test]
    fn coset_sum_examples() {
        let ones = RealFunction::from_fn(3, |_| 1);
        assert_eq!(coset_sum(&ones, 0b101).unwrap().values(), &[2; 8]);
        let and = BooleanFunction::from_u64(2, 0b1000).unwrap();
        let sign = RealFunction::sign_of(&and);
        assert_eq!(coset_sum(&sign, 1).unwrap().values(), &[2, 2, 0, 0]);
        assert_eq!(coset_sum(&sign, 0).unwrap_err(), Error::ZeroDirection);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..20 {
            let h = random_real(5, &mut rng);
            let a = rng.gen_range(1..32);
            coset_sum(&h, a).unwrap();
        }
    }

    #[test]
    fn dual_examples() {
        let and = BooleanFunction::from_u64(2, 0b1000).unwrap();
        assert_eq!(dual_bent(&and).unwrap(), and);
        let xor = BooleanFunction::linear(2, 0b11).unwrap();
        assert_eq!(dual_bent(&xor).unwrap_err(), Error::NotBent);
        assert_eq!(
            dual_bent(&BooleanFunction::zero(3)).unwrap_err(),
            Error::NotBent
        );
    }

    #[test]
    fn spectrum_translation() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..20 {
            let n = rng.gen_range(1..=8);
            let f = random_function(n, &mut rng);
            let a = rng.gen_range(0..1u32 << n);
            let s = wht(&f);
            let t = wht(&f.add_affine(a, false).unwrap());
            for y in 0..1u32 << n {
                assert_eq!(t.get(y), s.get(y ^ a));
            }
        }
    }

    #[test]
    fn spectrum_serializes_as_array() {
        let s = wht(&BooleanFunction::from_u64(2, 0b1000).unwrap());
        assert_eq!(serde_json::to_string(&s).unwrap(), "[2,2,2,-2]");
    }
}
