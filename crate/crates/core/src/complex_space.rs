//! The binary complex universe on `n` species.
//!
//! Every complex with total molecularity at most two is given a fixed index:
//! `0` is the zeroth-order complex, `1..=n` are the unary complexes `S1..Sn`,
//! `n+1..=2n` are the doubled complexes `2S1..2Sn`, and the mixed complexes
//! `Sa + Sb` (`a < b`) follow in lexicographic order of `(a, b)`. For two
//! species this gives `{0, A, B, 2A, 2B, A+B}`.
//!
//! The order is part of the reproducibility contract of the samplers, so it
//! must never change.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("complex index {idx} out of range for n = {n} (universe size {size})")]
    IndexOutOfRange { n: usize, idx: usize, size: usize },
    #[error("species S{id} is not valid for n = {n}")]
    SpeciesOutOfRange { n: usize, id: u32 },
}

/// A species label `S_id`, 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpeciesId(pub u32);

impl SpeciesId {
    pub fn get(self) -> u32 {
        self.0
    }

    /// Zero-based coordinate of this species in a count vector.
    pub fn coord(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for SpeciesId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S{}", self.0)
    }
}

/// A complex of molecularity at most two.
///
/// `Binary(a, b)` always has `a <= b`; `Binary(a, a)` is `2Sa`. Use
/// [`Complex::binary`] to build one from an unordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Complex {
    ZeroOrder,
    Unary(SpeciesId),
    Binary(SpeciesId, SpeciesId),
}

impl Complex {
    pub fn unary(a: u32) -> Self {
        Complex::Unary(SpeciesId(a))
    }

    pub fn binary(a: u32, b: u32) -> Self {
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        Complex::Binary(SpeciesId(a), SpeciesId(b))
    }

    pub fn molecularity(&self) -> u32 {
        match self {
            Complex::ZeroOrder => 0,
            Complex::Unary(_) => 1,
            Complex::Binary(..) => 2,
        }
    }

    /// Largest species id mentioned, or 0 for the zeroth-order complex.
    pub fn max_species(&self) -> u32 {
        match *self {
            Complex::ZeroOrder => 0,
            Complex::Unary(a) => a.0,
            Complex::Binary(a, b) => a.0.max(b.0),
        }
    }

    fn validate(&self, n: usize) -> Result<(), ComplexError> {
        let check = |s: SpeciesId| {
            if s.0 == 0 || s.0 as usize > n {
                Err(ComplexError::SpeciesOutOfRange { n, id: s.0 })
            } else {
                Ok(())
            }
        };
        match *self {
            Complex::ZeroOrder => Ok(()),
            Complex::Unary(a) => check(a),
            Complex::Binary(a, b) => {
                check(a)?;
                check(b)
            }
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Complex::ZeroOrder => write!(f, "0"),
            Complex::Unary(a) => write!(f, "{a}"),
            Complex::Binary(a, b) if a == b => write!(f, "2{a}"),
            Complex::Binary(a, b) => write!(f, "{a}+{b}"),
        }
    }
}

/// `N_n = (n^2 + 3n + 2) / 2`, the number of complexes of molecularity <= 2.
pub fn universe_size(n: usize) -> usize {
    (n * n + 3 * n + 2) / 2
}

/// Index of the first mixed complex `Sa + S(a+1)`.
fn mixed_row_start(n: usize, a: usize) -> usize {
    // rows 1..a-1 hold n-1, n-2, ..., n-a+1 entries
    2 * n + 1 + (a - 1) * n - (a - 1) * a / 2
}

pub fn index_to_complex(n: usize, idx: usize) -> Result<Complex, ComplexError> {
    let size = universe_size(n);
    if idx >= size {
        return Err(ComplexError::IndexOutOfRange { n, idx, size });
    }
    if idx == 0 {
        return Ok(Complex::ZeroOrder);
    }
    if idx <= n {
        return Ok(Complex::unary(idx as u32));
    }
    if idx <= 2 * n {
        let a = (idx - n) as u32;
        return Ok(Complex::binary(a, a));
    }
    let a = mixed_row(n, idx);
    let b = a + 1 + (idx - mixed_row_start(n, a));
    Ok(Complex::binary(a as u32, b as u32))
}

pub fn complex_to_index(n: usize, c: Complex) -> Result<usize, ComplexError> {
    c.validate(n)?;
    Ok(match c {
        Complex::ZeroOrder => 0,
        Complex::Unary(a) => a.0 as usize,
        Complex::Binary(a, b) if a == b => n + a.0 as usize,
        Complex::Binary(a, b) => {
            let (a, b) = (a.0 as usize, b.0 as usize);
            mixed_row_start(n, a) + (b - a - 1)
        }
    })
}

/// Row `a` of the mixed block containing `idx`, found by bisection.
fn mixed_row(n: usize, idx: usize) -> usize {
    let (mut lo, mut hi) = (1, n - 1);
    while lo < hi {
        let mid = (lo + hi).div_ceil(2);
        if mixed_row_start(n, mid) <= idx {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Molecule counts of each species in `c`, length `n`.
pub fn complex_vector(n: usize, c: Complex) -> Result<Vec<u32>, ComplexError> {
    c.validate(n)?;
    let mut v = vec![0; n];
    match c {
        Complex::ZeroOrder => {}
        Complex::Unary(a) => v[a.coord()] += 1,
        Complex::Binary(a, b) => {
            v[a.coord()] += 1;
            v[b.coord()] += 1;
        }
    }
    Ok(v)
}

/// All complexes of the universe in canonical index order.
pub fn enumerate(n: usize) -> impl Iterator<Item = Complex> {
    let unary = (1..=n as u32).map(Complex::unary);
    let doubled = (1..=n as u32).map(|a| Complex::binary(a, a));
    let mixed =
        (1..=n as u32).flat_map(move |a| (a + 1..=n as u32).map(move |b| Complex::binary(a, b)));
    std::iter::once(Complex::ZeroOrder)
        .chain(unary)
        .chain(doubled)
        .chain(mixed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(universe_size(0), 1);
        assert_eq!(universe_size(1), 3);
        assert_eq!(universe_size(2), 6);
        assert_eq!(universe_size(10), 66);
    }

    #[test]
    fn size_matches_enumeration() {
        for n in 0..=50 {
            let direct = 1 + n + n * (n + 1) / 2;
            assert_eq!(universe_size(n), direct);
            assert_eq!(enumerate(n).count(), direct);
        }
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_to_complex(2, 0).unwrap(), Complex::ZeroOrder);
        assert_eq!(index_to_complex(2, 5).unwrap(), Complex::binary(1, 2));
        assert_eq!(index_to_complex(3, 4).unwrap(), Complex::binary(1, 1));
        assert_eq!(complex_to_index(2, Complex::ZeroOrder).unwrap(), 0);
        assert_eq!(complex_to_index(1, Complex::binary(1, 1)).unwrap(), 2);
        assert_eq!(index_to_complex(3, 7).unwrap(), Complex::binary(1, 2));
        assert_eq!(index_to_complex(3, 9).unwrap(), Complex::binary(2, 3));
        let c2: Vec<_> = (0..6).map(|i| index_to_complex(2, i).unwrap()).collect();
        assert_eq!(
            c2,
            vec![
                Complex::ZeroOrder,
                Complex::unary(1),
                Complex::unary(2),
                Complex::binary(1, 1),
                Complex::binary(2, 2),
                Complex::binary(1, 2),
            ]
        );
    }

    #[test]
    fn bijection_scan() {
        for n in 0..=50 {
            for (idx, c) in enumerate(n).enumerate() {
                assert_eq!(index_to_complex(n, idx).unwrap(), c);
                assert_eq!(complex_to_index(n, c).unwrap(), idx);
            }
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            index_to_complex(2, 6),
            Err(ComplexError::IndexOutOfRange { size: 6, .. })
        ));
        assert!(complex_to_index(2, Complex::unary(3)).is_err());
        assert!(complex_to_index(2, Complex::binary(1, 3)).is_err());
        assert!(complex_to_index(2, Complex::unary(0)).is_err());
    }

    #[test]
    fn vectors() {
        assert_eq!(
            complex_vector(2, Complex::binary(1, 2)).unwrap(),
            vec![1, 1]
        );
        assert_eq!(
            complex_vector(2, Complex::binary(2, 2)).unwrap(),
            vec![0, 2]
        );
        assert_eq!(
            complex_vector(3, Complex::ZeroOrder).unwrap(),
            vec![0, 0, 0]
        );
        for n in 1..=8 {
            for c in enumerate(n) {
                let s: u32 = complex_vector(n, c).unwrap().iter().sum();
                assert_eq!(s, c.molecularity());
            }
        }
    }
}
