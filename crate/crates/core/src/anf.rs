//! Algebraic normal form via the binary Möbius transform.
//!
//! Coefficient `y` of the ANF is 1 exactly when the monomial
//! `x_1^{y_1} ⋯ x_n^{y_n}` appears, so `f(x) = ⊕_{y ⊆ x} g(y)`.

use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;

/// ANF coefficients and the algebraic degree they determine.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Anf {
    coeffs: BooleanFunction,
    degree: u32,
}

// Positions whose bit `i` is 0, for the in-word butterfly stages.
const LOW_MASKS: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// XOR butterfly `a[x] ^= a[x without bit i]` for every bit `i < n`; an involution.
fn moebius_words(n: u32, words: &mut [u64]) {
    for i in 0..n.min(6) {
        let shift = 1 << i;
        for w in words.iter_mut() {
            *w ^= (*w & LOW_MASKS[i as usize]) << shift;
        }
    }
    for i in 6..n {
        let stride = 1usize << (i - 6);
        for block in words.chunks_exact_mut(2 * stride) {
            let (lo, hi) = block.split_at_mut(stride);
            for (l, h) in lo.iter().zip(hi.iter_mut()) {
                *h ^= *l;
            }
        }
    }
}

fn transform(f: &BooleanFunction) -> BooleanFunction {
    let mut words = f.words().to_vec();
    moebius_words(f.num_vars(), &mut words);
    BooleanFunction::from_words(f.num_vars(), words).expect("same shape")
}

/// The Möbius transform of `f`.
pub fn mobius(f: &BooleanFunction) -> Anf {
    Anf::from_coefficients(transform(f))
}

/// Algebraic degree; 0 for both constants.
pub fn degree(f: &BooleanFunction) -> u32 {
    mobius(f).degree()
}

impl Anf {
    /// Wraps a coefficient vector (bit `y` = coefficient of monomial `y`).
    pub fn from_coefficients(coeffs: BooleanFunction) -> Self {
        let degree = (0..coeffs.len() as u32)
            .filter(|&y| coeffs.eval(y))
            .map(u32::count_ones)
            .max()
            .unwrap_or(0);
        Anf { coeffs, degree }
    }

    /// XOR of the given monomials; repeated monomials cancel.
    pub fn from_monomials(n: u32, monomials: &[u32]) -> Result<Self> {
        let mut coeffs = BooleanFunction::zero(n);
        for &m in monomials {
            if n < 32 && m >> n != 0 {
                return Err(Error::VectorOutOfRange { vector: m, n });
            }
            coeffs.set(m, !coeffs.eval(m));
        }
        Ok(Anf::from_coefficients(coeffs))
    }

    pub fn num_vars(&self) -> u32 {
        self.coeffs.num_vars()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coefficients(&self) -> &BooleanFunction {
        &self.coeffs
    }

    /// Monomials present, as bit masks, in the display order: by decreasing
    /// degree, then by the ascending list of variable indices.
    pub fn monomials(&self) -> Vec<u32> {
        let mut ms = self.coeffs.support();
        ms.sort_by(|&a, &b| {
            b.count_ones()
                .cmp(&a.count_ones())
                .then_with(|| variable_list(a).cmp(&variable_list(b)))
        });
        ms
    }

    /// Evaluates the polynomial back into a truth table.
    pub fn to_function(&self) -> BooleanFunction {
        transform(&self.coeffs)
    }

    /// Parses the `x1*x2 + x3 + 1` form. Terms are `1`, `0`, or products of
    /// `x<i>` with 1-based `i`; equal terms cancel.
    pub fn parse(s: &str, n: u32) -> Result<Self> {
        let mut monomials = Vec::new();
        for term in s.split('+').map(str::trim) {
            match term {
                "" => return Err(Error::Parse(format!("empty term in {s:?}"))),
                "0" => {}
                "1" => monomials.push(0),
                _ => {
                    let mut m = 0u32;
                    for factor in term.split('*').map(str::trim) {
                        let i: u32 = factor
                            .strip_prefix('x')
                            .and_then(|d| d.parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
                        if i == 0 || i > n {
                            return Err(Error::IndexOutOfRange { index: i, n });
                        }
                        m |= 1 << (i - 1);
                    }
                    monomials.push(m);
                }
            }
        }
        Anf::from_monomials(n, &monomials)
    }
}

/// Monomial masks of degree at most `k` in `n` variables, by degree then value.
pub fn monomials_up_to_degree(n: u32, k: u32) -> Vec<u32> {
    let mut ms: Vec<u32> = (0..1u32 << n).filter(|m| m.count_ones() <= k).collect();
    ms.sort_by_key(|&m| (m.count_ones(), m));
    ms
}

/// Splits `0..2^count` into contiguous ranges for parallel walks.
pub fn span_ranges(count: u32) -> Vec<Range<u64>> {
    let total = 1u64 << count;
    let pieces = total.min(256);
    let step = total / pieces;
    (0..pieces).map(|p| p * step..(p + 1) * step).collect()
}

/// Visits the truth tables of the ANF coefficient subsets `gray(i)` for `i` in
/// `range`, where bit `j` of a subset selects `monomials[j]`.
///
/// Successive Gray codes differ in one monomial, so each step is one XOR of
/// a monomial table. Walking all of `0..2^len` visits every function in the
/// span exactly once.
pub fn walk_span(
    n: u32,
    monomials: &[u32],
    range: Range<u64>,
    mut visit: impl FnMut(&BooleanFunction),
) {
    if range.is_empty() {
        return;
    }
    let tables: Vec<BooleanFunction> = monomials
        .iter()
        .map(|&m| BooleanFunction::from_fn(n, |x| x & m == m))
        .collect();
    let gray = |i: u64| i ^ (i >> 1);
    let mut f = BooleanFunction::zero(n);
    let start = gray(range.start);
    for (j, t) in tables.iter().enumerate() {
        if start >> j & 1 == 1 {
            f.xor_assign(t);
        }
    }
    visit(&f);
    for i in range.start + 1..range.end {
        f.xor_assign(&tables[i.trailing_zeros() as usize]);
        visit(&f);
    }
}

fn variable_list(m: u32) -> Vec<u32> {
    (0..32).filter(|i| m >> i & 1 == 1).collect()
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ms = self.monomials();
        if ms.is_empty() {
            return f.write_str("0");
        }
        let terms: Vec<String> = ms
            .iter()
            .map(|&m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    variable_list(m)
                        .iter()
                        .map(|i| format!("x{}", i + 1))
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl BooleanFunction {
    pub fn degree(&self) -> u32 {
        degree(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // g(y) = XOR of f over the subsets of y
    fn anf_by_subset_sums(f: &BooleanFunction) -> BooleanFunction {
        BooleanFunction::from_fn(f.num_vars(), |y| {
            (0..f.len() as u32)
                .filter(|&x| x & !y == 0)
                .fold(false, |acc, x| acc ^ f.eval(x))
        })
    }

    #[test]
    fn examples() {
        let one = mobius(&BooleanFunction::constant(3, true));
        assert_eq!(one.monomials(), vec![0]);
        assert_eq!(one.degree(), 0);

        let xor = mobius(&BooleanFunction::parse_binary("0110").unwrap());
        assert_eq!(xor.monomials(), vec![0b01, 0b10]);
        assert_eq!(xor.degree(), 1);

        let maj = BooleanFunction::parse_binary("00010111").unwrap();
        let anf = mobius(&maj);
        assert_eq!(anf.coefficients(), &anf_by_subset_sums(&maj));
        assert_eq!(anf.to_string(), "x1*x2 + x1*x3 + x2*x3");
        assert_eq!(anf.degree(), 2);
    }

    #[test]
    fn matches_subset_sums_and_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..=9 {
            for _ in 0..5 {
                let f = BooleanFunction::from_fn(n, |_| rng.gen());
                let anf = mobius(&f);
                assert_eq!(anf.coefficients(), &anf_by_subset_sums(&f));
                assert_eq!(anf.to_function(), f);
            }
        }
    }

    #[test]
    fn degrees() {
        assert_eq!(degree(&BooleanFunction::zero(4)), 0);
        assert_eq!(degree(&BooleanFunction::constant(4, true)), 0);
        let bent = Anf::parse("x1*x2 + x3*x4", 4).unwrap().to_function();
        assert_eq!(degree(&bent), 2);
        // top coefficient is the parity of the weight
        for t in 0..256u64 {
            let f = BooleanFunction::from_u64(3, t).unwrap();
            assert_eq!(f.degree() == 3, f.weight() % 2 == 1);
        }
    }

    #[test]
    fn span_walk_visits_each_function_once() {
        let ms = monomials_up_to_degree(3, 1);
        assert_eq!(ms, vec![0, 1, 2, 4]);
        let mut seen = std::collections::BTreeSet::new();
        for r in span_ranges(ms.len() as u32) {
            walk_span(3, &ms, r, |f| {
                assert!(f.degree() <= 1);
                assert!(seen.insert(f.clone()));
            });
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn text_round_trip() {
        let anf = Anf::parse("x3 + 1 + x1*x2", 3).unwrap();
        assert_eq!(anf.to_string(), "x1*x2 + x3 + 1");
        assert_eq!(Anf::parse(&anf.to_string(), 3).unwrap(), anf);
        assert_eq!(Anf::parse("x1 + x1", 2).unwrap().to_string(), "0");
        assert_eq!(Anf::parse("0", 2).unwrap().degree(), 0);
        assert!(Anf::parse("x4", 3).is_err());
        assert!(Anf::parse("x1 +", 3).is_err());
        assert!(Anf::parse("y1", 3).is_err());
    }
}
