//! Bit-packed truth tables and the basic operations on them.
//!
//! The table index `x` encodes the input vector with variable `x_{i+1}` in
//! bit `i`, so `x₁` is the least significant bit.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::linear::{dot, hyperplane_frame, AffineMap, BitMatrix};

/// Default upper bound on the number of variables.
pub const MAX_VARIABLES: u32 = 24;

/// A Boolean function `F₂ⁿ → F₂` stored as a truth table of `2^n` bits.
///
/// Bits past `2^n` in the last word are always zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: u32,
    words: Vec<u64>,
}

/// The hyperplane `{x : ⟨x, normal⟩ = side}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct HyperplaneSpec {
    normal: u32,
    side: bool,
}

impl HyperplaneSpec {
    pub fn new(normal: u32, side: bool) -> Result<Self> {
        if normal == 0 {
            return Err(Error::ZeroNormal);
        }
        Ok(HyperplaneSpec { normal, side })
    }

    /// `{x : x_i = side}` for a 1-based coordinate `i`.
    pub fn coordinate(i: u32, side: bool) -> Result<Self> {
        if !(1..=32).contains(&i) {
            return Err(Error::IndexOutOfRange { index: i, n: 32 });
        }
        HyperplaneSpec::new(1 << (i - 1), side)
    }

    pub fn normal(&self) -> u32 {
        self.normal
    }

    pub fn side(&self) -> bool {
        self.side
    }

    /// Every hyperplane of F₂ⁿ: all nonzero normals, side 0 then side 1.
    pub fn all(n: u32) -> impl Iterator<Item = HyperplaneSpec> {
        (1u32..1 << n).flat_map(|normal| {
            [false, true]
                .into_iter()
                .map(move |side| HyperplaneSpec { normal, side })
        })
    }
}

fn word_count(n: u32) -> usize {
    if n >= 6 {
        1 << (n - 6)
    } else {
        1
    }
}

fn tail_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

fn check_vector(v: u32, n: u32) -> Result<()> {
    if n < 32 && v >> n != 0 {
        return Err(Error::VectorOutOfRange { vector: v, n });
    }
    Ok(())
}

impl BooleanFunction {
    /// Constant zero in `n` variables.
    ///
    /// # Panics
    /// If `n` exceeds [`MAX_VARIABLES`].
    pub fn zero(n: u32) -> Self {
        assert!(n <= MAX_VARIABLES, "{n} variables exceeds {MAX_VARIABLES}");
        BooleanFunction {
            n,
            words: vec![0; word_count(n)],
        }
    }

    pub fn constant(n: u32, value: bool) -> Self {
        let f = BooleanFunction::zero(n);
        if value {
            f.complement()
        } else {
            f
        }
    }

    /// The linear function `x ↦ ⟨x, a⟩`.
    pub fn linear(n: u32, a: u32) -> Result<Self> {
        check_vector(a, n)?;
        Ok(BooleanFunction::from_fn(n, |x| dot(x, a)))
    }

    /// Builds the table by evaluating `eval` at every input.
    pub fn from_fn(n: u32, mut eval: impl FnMut(u32) -> bool) -> Self {
        let mut f = BooleanFunction::zero(n);
        for x in 0..1u32 << n {
            if eval(x) {
                f.set(x, true);
            }
        }
        f
    }

    pub fn from_truth_table(bits: &[bool], n: u32) -> Result<Self> {
        BooleanFunction::from_truth_table_capped(bits, n, MAX_VARIABLES)
    }

    /// As [`from_truth_table`](Self::from_truth_table) with an explicit variable cap.
    pub fn from_truth_table_capped(bits: &[bool], n: u32, cap: u32) -> Result<Self> {
        let cap = cap.min(MAX_VARIABLES);
        if n > cap {
            return Err(Error::NTooLarge { n, cap });
        }
        let expected = 1usize << n;
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                n,
                expected,
                actual: bits.len(),
            });
        }
        Ok(BooleanFunction::from_fn(n, |x| bits[x as usize]))
    }

    /// Builds a function of at most 6 variables from the low `2^n` bits of `table`.
    pub fn from_u64(n: u32, table: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::NTooLarge { n, cap: 6 });
        }
        Ok(BooleanFunction {
            n,
            words: vec![table & tail_mask(n)],
        })
    }

    /// Builds a function from packed words (bit `x % 64` of word `x / 64` is `f(x)`).
    pub fn from_words(n: u32, words: Vec<u64>) -> Result<Self> {
        if n > MAX_VARIABLES {
            return Err(Error::NTooLarge {
                n,
                cap: MAX_VARIABLES,
            });
        }
        if words.len() != word_count(n) {
            return Err(Error::LengthMismatch {
                n,
                expected: 1 << n,
                actual: words.len() * 64,
            });
        }
        let mut f = BooleanFunction { n, words };
        f.words[0] &= tail_mask(n);
        Ok(f)
    }

    pub fn num_vars(&self) -> u32 {
        self.n
    }

    /// Domain size `2^n`.
    pub fn len(&self) -> usize {
        1 << self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// The whole table as an integer, for `n ≤ 6`.
    pub fn as_u64(&self) -> Option<u64> {
        (self.n <= 6).then(|| self.words[0])
    }

    #[inline]
    pub fn eval(&self, x: u32) -> bool {
        debug_assert!((x as usize) < self.len());
        self.words[(x >> 6) as usize] >> (x & 63) & 1 == 1
    }

    #[inline]
    pub(crate) fn set(&mut self, x: u32, value: bool) {
        let w = &mut self.words[(x >> 6) as usize];
        let bit = 1u64 << (x & 63);
        if value {
            *w |= bit;
        } else {
            *w &= !bit;
        }
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len() as u32).map(|x| self.eval(x)).collect()
    }

    /// Inputs where the function is 1, in increasing order.
    pub fn support(&self) -> Vec<u32> {
        (0..self.len() as u32).filter(|&x| self.eval(x)).collect()
    }

    /// Number of inputs with value 1.
    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Takes the values 0 and 1 equally often. Always false for `n = 0`.
    pub fn is_balanced(&self) -> bool {
        self.n >= 1 && self.weight() == 1 << (self.n - 1)
    }

    pub fn complement(&self) -> Self {
        let mut words: Vec<u64> = self.words.iter().map(|w| !w).collect();
        words[0] &= tail_mask(self.n);
        BooleanFunction { n: self.n, words }
    }

    pub(crate) fn xor_assign(&mut self, other: &BooleanFunction) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &BooleanFunction) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(BooleanFunction {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// `x ↦ f(x) ⊕ ⟨x, a⟩ ⊕ c`.
    pub fn add_affine(&self, a: u32, c: bool) -> Result<Self> {
        check_vector(a, self.n)?;
        Ok(BooleanFunction::from_fn(self.n, |x| {
            self.eval(x) ^ dot(x, a) ^ c
        }))
    }

    /// Derivative `D_a f(x) = f(x) ⊕ f(x ⊕ a)`.
    pub fn derivative(&self, a: u32) -> Result<Self> {
        check_vector(a, self.n)?;
        Ok(BooleanFunction::from_fn(self.n, |x| {
            self.eval(x) ^ self.eval(x ^ a)
        }))
    }

    /// `D_{e_i} f` as an `(n-1)`-variable function: its values on `x_i = 0`
    /// with coordinate `i` (1-based) deleted.
    pub fn reduce_derivative(&self, i: u32) -> Result<Self> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(self.derivative(1 << (i - 1))?.delete_coordinate(i, false))
    }

    /// `D_a f` for a general nonzero direction as an `(n-1)`-variable function.
    ///
    /// With `N` the frame of [`hyperplane_frame`] (`N a = e_n`), the result is
    /// `z' ↦ D_a f(N⁻¹ (z', 0))`. For `a = e_i` this agrees with
    /// [`reduce_derivative`](Self::reduce_derivative), and the coordinates of
    /// the result are dual to those used by [`restrict`](Self::restrict) on
    /// the hyperplane `{y : ⟨y, a⟩ = 0}`.
    pub fn reduce_derivative_along(&self, a: u32) -> Result<Self> {
        if a == 0 {
            return Err(Error::ZeroDirection);
        }
        let frame = hyperplane_frame(self.n, a)?;
        let back = frame.inverse().expect("frame is invertible");
        Ok(self
            .derivative(a)?
            .compose_linear(&back)
            .delete_coordinate(self.n, false))
    }

    /// The restriction of `f` to the hyperplane `h`, as an `(n-1)`-variable function.
    ///
    /// For `normal = e_i` coordinate `i` is deleted. Otherwise inputs are
    /// rewritten as `x = Nᵀ z` with `N` from [`hyperplane_frame`], which makes
    /// `⟨x, normal⟩ = z_n`, and coordinate `n` is deleted.
    pub fn restrict(&self, h: &HyperplaneSpec) -> Result<Self> {
        if self.n == 0 {
            return Err(Error::NoVariables);
        }
        let frame = hyperplane_frame(self.n, h.normal())?;
        Ok(self
            .compose_linear(&frame.transpose())
            .delete_coordinate(self.n, h.side()))
    }

    /// `g(x) = f(A x ⊕ shift) ⊕ ⟨x, a⟩ ⊕ c`.
    pub fn apply_affine(&self, map: &AffineMap) -> Result<Self> {
        if map.dim() != self.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: map.dim(),
            });
        }
        let (a, c) = map.added_affine();
        Ok(self.substitute(map.matrix(), map.shift(), a, c))
    }

    /// `x ↦ f(M x)`.
    pub fn compose_linear(&self, m: &BitMatrix) -> Self {
        assert_eq!(
            m.dim(),
            self.n,
            "matrix dimension differs from variable count"
        );
        self.substitute(m, 0, 0, false)
    }

    // Walks inputs in Gray-code order so `M x` and `⟨x, a⟩` update with one XOR per step.
    fn substitute(&self, m: &BitMatrix, shift: u32, a: u32, c: bool) -> Self {
        let columns: Vec<u32> = (0..self.n).map(|j| m.column(j)).collect();
        let mut out = BooleanFunction::zero(self.n);
        let mut image = 0u32;
        let mut parity = c;
        let mut x = 0u32;
        out.set(0, self.eval(shift) ^ parity);
        for step in 1..1u32 << self.n {
            let bit = step.trailing_zeros();
            x ^= 1 << bit;
            image ^= columns[bit as usize];
            parity ^= a >> bit & 1 == 1;
            out.set(x, self.eval(image ^ shift) ^ parity);
        }
        out
    }

    /// Values on `{x : x_i = side}` with coordinate `i` (1-based) removed.
    pub(crate) fn delete_coordinate(&self, i: u32, side: bool) -> Self {
        debug_assert!(1 <= i && i <= self.n);
        let low = (1u32 << (i - 1)) - 1;
        let fixed = u32::from(side) << (i - 1);
        BooleanFunction::from_fn(self.n - 1, |z| {
            let x = (z & low) | ((z & !low) << 1) | fixed;
            self.eval(x)
        })
    }

    /// Inverse of [`delete_coordinate`](Self::delete_coordinate) for coset-constant
    /// functions: duplicates the table along a new coordinate `i`.
    pub fn lift_along(&self, i: u32) -> Result<Self> {
        if i == 0 || i > self.n + 1 {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n + 1,
            });
        }
        let low = (1u32 << (i - 1)) - 1;
        Ok(BooleanFunction::from_fn(self.n + 1, |x| {
            self.eval((x & low) | ((x >> 1) & !low))
        }))
    }
}

impl Ord for BooleanFunction {
    /// Orders by variable count, then by the truth table read as an integer.
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for BooleanFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BooleanFunction(n={}, {})", self.n, self)
    }
}

impl fmt::Display for BooleanFunction {
    /// Binary truth table, `f(0)` first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in 0..self.len() as u32 {
            f.write_str(if self.eval(x) { "1" } else { "0" })?;
        }
        Ok(())
    }
}
