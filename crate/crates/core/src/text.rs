//! Truth-table text formats.
//!
//! * Binary: a string of `2^n` characters `0`/`1`; character `x` (0-based,
//!   left to right) is `f(x)`.
//! * Hex: `2^n / 4` hex digits (so `n ≥ 2`); digit `i` holds `f(4i)` in its
//!   least significant bit through `f(4i+3)` in its most significant bit.
//!   An optional `0x` prefix forces the hex reading.

use crate::error::{Error, Result};
use crate::function::{BooleanFunction, MAX_VARIABLES};

impl BooleanFunction {
    pub fn to_binary_string(&self) -> String {
        self.to_string()
    }

    /// Hex form; `None` when `n < 2`.
    pub fn to_hex_string(&self) -> Option<String> {
        if self.num_vars() < 2 {
            return None;
        }
        let digits = self.len() / 4;
        Some(
            (0..digits)
                .map(|i| {
                    let x = 4 * i as u32;
                    let nibble =
                        (0..4).fold(0u32, |acc, b| acc | (u32::from(self.eval(x + b)) << b));
                    char::from_digit(nibble, 16).unwrap()
                })
                .collect(),
        )
    }

    pub fn parse_binary(s: &str) -> Result<Self> {
        let s = s.trim();
        let n = log2_exact(s.len()).ok_or_else(|| {
            Error::Parse(format!(
                "binary table length {} is not a power of two",
                s.len()
            ))
        })?;
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("invalid binary digit {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        BooleanFunction::from_truth_table(&bits, n)
    }

    pub fn parse_hex(s: &str) -> Result<Self> {
        let s = s.trim();
        let s = s.strip_prefix("0x").unwrap_or(s);
        let n = log2_exact(4 * s.len()).filter(|&n| n >= 2).ok_or_else(|| {
            Error::Parse(format!(
                "hex table length {} is not a power of two",
                s.len()
            ))
        })?;
        if n > MAX_VARIABLES {
            return Err(Error::NTooLarge {
                n,
                cap: MAX_VARIABLES,
            });
        }
        let nibbles = s
            .chars()
            .map(|c| {
                c.to_digit(16)
                    .ok_or_else(|| Error::Parse(format!("invalid hex digit {c:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        Ok(BooleanFunction::from_fn(n, |x| {
            nibbles[(x / 4) as usize] >> (x % 4) & 1 == 1
        }))
    }

    /// Parses either format.
    ///
    /// A `0x` prefix selects hex. Otherwise, with `n` given, a string of
    /// `2^n` binary digits is binary and a string of `2^n / 4` digits is hex.
    /// Without `n`, a binary-digit string of power-of-two length is binary and
    /// anything else is tried as hex.
    pub fn parse_truth_table(s: &str, n: Option<u32>) -> Result<Self> {
        let s = s.trim();
        if s.starts_with("0x") {
            let f = BooleanFunction::parse_hex(s)?;
            return check_n(f, n);
        }
        let is_binary = !s.is_empty() && s.chars().all(|c| c == '0' || c == '1');
        match n {
            Some(n) if n > MAX_VARIABLES => Err(Error::NTooLarge {
                n,
                cap: MAX_VARIABLES,
            }),
            Some(n) if s.len() == 1 << n && is_binary => BooleanFunction::parse_binary(s),
            Some(n) if n >= 2 && s.len() == 1 << (n - 2) => BooleanFunction::parse_hex(s),
            Some(n) => Err(Error::LengthMismatch {
                n,
                expected: 1 << n,
                actual: s.len(),
            }),
            None if is_binary && s.len().is_power_of_two() => BooleanFunction::parse_binary(s),
            None => BooleanFunction::parse_hex(s),
        }
    }
}

fn check_n(f: BooleanFunction, n: Option<u32>) -> Result<BooleanFunction> {
    match n {
        Some(n) if n != f.num_vars() => Err(Error::LengthMismatch {
            n,
            expected: 1 << n,
            actual: f.len(),
        }),
        _ => Ok(f),
    }
}

fn log2_exact(len: usize) -> Option<u32> {
    len.is_power_of_two().then(|| len.trailing_zeros())
}
