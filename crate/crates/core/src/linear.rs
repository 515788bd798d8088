//! Linear algebra over GF(2): bit matrices, affine maps and subspaces of F₂ⁿ.
//!
//! Vectors of F₂ⁿ are `u32` values; bit `i` (least significant first) is
//! coordinate `x_{i+1}`.

use rand::Rng;

use crate::error::{Error, Result};
use crate::function::MAX_VARIABLES;

/// Inner product ⟨x, y⟩ over GF(2).
#[inline]
pub fn dot(x: u32, y: u32) -> bool {
    (x & y).count_ones() & 1 == 1
}

/// Square `n × n` matrix over GF(2), stored row-wise.
///
/// Bit `j` of `rows[i]` is the entry at row `i`, column `j`, so
/// `(M x)_i = ⟨rows[i], x⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: u32,
    rows: Vec<u32>,
}

impl BitMatrix {
    pub fn identity(n: u32) -> Self {
        BitMatrix {
            n,
            rows: (0..n).map(|i| 1u32 << i).collect(),
        }
    }

    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let n = rows.len() as u32;
        if n > MAX_VARIABLES {
            return Err(Error::NTooLarge {
                n,
                cap: MAX_VARIABLES,
            });
        }
        if let Some(&r) = rows.iter().find(|&&r| n < 32 && r >> n != 0) {
            return Err(Error::VectorOutOfRange { vector: r, n });
        }
        Ok(BitMatrix { n, rows })
    }

    /// Builds the matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[u32]) -> Result<Self> {
        Ok(BitMatrix::from_rows(columns.to_vec())?.transpose())
    }

    pub fn dim(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn get(&self, row: u32, col: u32) -> bool {
        self.rows[row as usize] >> col & 1 == 1
    }

    pub fn column(&self, col: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, r)| acc | ((r >> col & 1) << i))
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &r)| acc | (u32::from(dot(r, x)) << i))
    }

    pub fn transpose(&self) -> Self {
        BitMatrix {
            n: self.n,
            rows: (0..self.n).map(|j| self.column(j)).collect(),
        }
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.n, other.n, "matrix dimensions differ");
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                // row of the product is the XOR of the rows of `other` selected by `r`
                (0..self.n)
                    .filter(|&k| r >> k & 1 == 1)
                    .fold(0, |acc, k| acc ^ other.rows[k as usize])
            })
            .collect();
        BitMatrix { n: self.n, rows }
    }

    pub fn rank(&self) -> u32 {
        rank_of(self.rows.clone())
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.n as usize;
        let mut a = self.rows.clone();
        let mut inv: Vec<u32> = (0..n).map(|i| 1u32 << i).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r] >> col & 1 == 1)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && a[r] >> col & 1 == 1 {
                    a[r] ^= a[col];
                    inv[r] ^= inv[col];
                }
            }
        }
        Some(BitMatrix {
            n: self.n,
            rows: inv,
        })
    }

    /// Uniformly random invertible matrix (rejection sampling).
    pub fn random_invertible<R: Rng + ?Sized>(n: u32, rng: &mut R) -> BitMatrix {
        let mask = low_mask(n);
        loop {
            let rows: Vec<u32> = (0..n).map(|_| rng.gen::<u32>() & mask).collect();
            if rank_of(rows.clone()) == n {
                return BitMatrix { n, rows };
            }
        }
    }

    /// Permutation matrix sending coordinate `i` to `perm[i]`: `(P x)_{perm[i]} = x_i`.
    pub fn permutation(perm: &[u32]) -> Result<BitMatrix> {
        let n = perm.len() as u32;
        let mut rows = vec![0u32; perm.len()];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || rows[p as usize] != 0 {
                return Err(Error::SingularMatrix);
            }
            rows[p as usize] = 1 << i;
        }
        BitMatrix::from_rows(rows)
    }
}

fn low_mask(n: u32) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

fn rank_of(mut rows: Vec<u32>) -> u32 {
    let mut rank = 0;
    for bit in 0..32 {
        let Some(p) = (rank as usize..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank as usize, p);
        let pivot = rows[rank as usize];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank as usize && *row >> bit & 1 == 1 {
                *row ^= pivot;
            }
        }
        rank += 1;
    }
    rank
}

/// Deterministic invertible matrix `N` with `N · normal = e_n`.
///
/// With pivot `p` the lowest set coordinate of `normal`, the other set
/// coordinates are cleared by adding coordinate `p` to them, and then
/// coordinate `p` is moved to position `n` while the remaining coordinates
/// keep their order. For `normal = e_i` this is the plain cyclic move of
/// coordinate `i` to the end, so deleting coordinate `n` afterwards is the
/// same as deleting coordinate `i` in the original frame.
pub fn hyperplane_frame(n: u32, normal: u32) -> Result<BitMatrix> {
    if normal == 0 {
        return Err(Error::ZeroNormal);
    }
    if n < 32 && normal >> n != 0 {
        return Err(Error::VectorOutOfRange { vector: normal, n });
    }
    let p = normal.trailing_zeros();
    // elimination: row j += row p for every other set coordinate j
    let mut elim = BitMatrix::identity(n);
    for j in 0..n {
        if j != p && normal >> j & 1 == 1 {
            elim.rows[j as usize] |= 1 << p;
        }
    }
    let perm: Vec<u32> = (0..n)
        .map(|i| match i.cmp(&p) {
            std::cmp::Ordering::Less => i,
            std::cmp::Ordering::Equal => n - 1,
            std::cmp::Ordering::Greater => i - 1,
        })
        .collect();
    let frame = BitMatrix::permutation(&perm)?.mul(&elim);
    debug_assert_eq!(frame.apply(normal), 1 << (n - 1));
    Ok(frame)
}

/// Non-degenerate affine substitution together with an added affine function:
/// `g(x) = f(A x ⊕ shift) ⊕ ⟨x, linear⟩ ⊕ constant`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    matrix: BitMatrix,
    shift: u32,
    linear: u32,
    constant: bool,
}

impl AffineMap {
    pub fn new(matrix: BitMatrix, shift: u32, linear: u32, constant: bool) -> Result<Self> {
        if !matrix.is_invertible() {
            return Err(Error::SingularMatrix);
        }
        let n = matrix.dim();
        for v in [shift, linear] {
            if n < 32 && v >> n != 0 {
                return Err(Error::VectorOutOfRange { vector: v, n });
            }
        }
        Ok(AffineMap {
            matrix,
            shift,
            linear,
            constant,
        })
    }

    pub fn identity(n: u32) -> Self {
        AffineMap {
            matrix: BitMatrix::identity(n),
            shift: 0,
            linear: 0,
            constant: false,
        }
    }

    /// Random invertible matrix, shift and added affine function.
    pub fn random<R: Rng + ?Sized>(n: u32, rng: &mut R) -> Self {
        let mask = low_mask(n);
        AffineMap {
            matrix: BitMatrix::random_invertible(n, rng),
            shift: rng.gen::<u32>() & mask,
            linear: rng.gen::<u32>() & mask,
            constant: rng.gen(),
        }
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn shift(&self) -> u32 {
        self.shift
    }

    /// The added affine function `ℓ(x) = ⟨x, a⟩ ⊕ c` as `(a, c)`.
    pub fn added_affine(&self) -> (u32, bool) {
        (self.linear, self.constant)
    }

    pub fn dim(&self) -> u32 {
        self.matrix.dim()
    }
}

/// Linear subspace of F₂ⁿ held as a reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    n: u32,
    basis: Vec<u32>,
}

impl Subspace {
    /// Span of the given generators.
    pub fn span(n: u32, generators: &[u32]) -> Result<Self> {
        let mut basis: Vec<u32> = Vec::new();
        for &g in generators {
            if n < 32 && g >> n != 0 {
                return Err(Error::VectorOutOfRange { vector: g, n });
            }
            let mut v = g;
            for &b in &basis {
                if v >> (31 - b.leading_zeros()) & 1 == 1 {
                    v ^= b;
                }
            }
            if v != 0 {
                let lead = 31 - v.leading_zeros();
                for b in basis.iter_mut() {
                    if *b >> lead & 1 == 1 {
                        *b ^= v;
                    }
                }
                basis.push(v);
                basis.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        Ok(Subspace { n, basis })
    }

    /// The hyperplane `{x : ⟨x, normal⟩ = 0}`.
    pub fn hyperplane(n: u32, normal: u32) -> Result<Self> {
        if normal == 0 {
            return Err(Error::ZeroNormal);
        }
        Subspace::span(n, &[normal])?.dual()
    }

    pub fn ambient_dim(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn basis(&self) -> &[u32] {
        &self.basis
    }

    pub fn contains(&self, x: u32) -> bool {
        let mut v = x;
        for &b in &self.basis {
            if v >> (31 - b.leading_zeros()) & 1 == 1 {
                v ^= b;
            }
        }
        v == 0
    }

    /// `Γ⊥ = {y : ⟨x, y⟩ = 0 for all x ∈ Γ}`.
    pub fn dual(&self) -> Result<Subspace> {
        // solve ⟨b, y⟩ = 0 for every basis vector b: free coordinates are the non-leading ones
        let leads: Vec<u32> = self.basis.iter().map(|b| 31 - b.leading_zeros()).collect();
        let gens: Vec<u32> = (0..self.n)
            .filter(|j| !leads.contains(j))
            .map(|j| {
                let mut y = 1u32 << j;
                for (&b, &l) in self.basis.iter().zip(&leads) {
                    if b >> j & 1 == 1 {
                        y |= 1 << l;
                    }
                }
                y
            })
            .collect();
        Subspace::span(self.n, &gens)
    }

    /// All members in increasing order.
    pub fn elements(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0u32..1 << self.basis.len())
            .map(|mask| {
                self.basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .fold(0, |acc, (_, &b)| acc ^ b)
            })
            .collect();
        out.sort_unstable();
        out
    }
}
