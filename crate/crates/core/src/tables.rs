//! Correction-term tables indexed by Spin^c structures.
//!
//! Storage uses natural indices `0..n`. Centered indices follow these
//! ranges: odd `n` uses `[-(n-1)/2, (n-1)/2]`, even `n` uses
//! `[-n/2, n/2 - 1]`.

use serde::{Deserialize, Serialize};

use crate::{invalid, Rational, Result};

/// Lowest centered index for modulus `n`.
pub fn centered_low(n: u64) -> i64 {
    -((n / 2) as i64)
}

/// Centered indices in increasing order.
pub fn centered_range(n: u64) -> impl Iterator<Item = i64> {
    let lo = centered_low(n);
    lo..lo + n as i64
}

/// Centered representative of `x` modulo `n`.
pub fn to_centered(x: i64, n: u64) -> i64 {
    let lo = centered_low(n);
    (x - lo).rem_euclid(n as i64) + lo
}

pub fn to_natural(x: i64, n: u64) -> usize {
    x.rem_euclid(n as i64) as usize
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionTable {
    pub modulus: u64,
    /// Values in natural order `0..modulus`.
    pub values: Vec<Rational>,
}

impl CorrectionTable {
    pub fn new(modulus: u64, values: Vec<Rational>) -> Result<Self> {
        if modulus == 0 || values.len() as u64 != modulus {
            return invalid(format!("table of modulus {modulus} needs {modulus} values, got {}", values.len()));
        }
        Ok(CorrectionTable { modulus, values })
    }

    pub fn from_fn(modulus: u64, f: impl Fn(u64) -> Rational) -> Self {
        CorrectionTable { modulus, values: (0..modulus).map(f).collect() }
    }

    /// Value at any integer index, reduced modulo the table size.
    pub fn at(&self, i: i64) -> Rational {
        self.values[to_natural(i, self.modulus)]
    }

    pub fn centered(&self) -> Vec<(i64, Rational)> {
        centered_range(self.modulus).map(|i| (i, self.at(i))).collect()
    }

    pub fn is_conjugation_symmetric(&self) -> bool {
        (0..self.modulus as i64).all(|i| self.at(i) == self.at(-i))
    }
}

/// Values on `Z_n ⊕ Z_m`, `n` rows and `m` columns.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorrectionMatrix {
    pub row_modulus: u64,
    pub col_modulus: u64,
    /// Row-major values in natural order.
    pub values: Vec<Rational>,
}

impl CorrectionMatrix {
    pub fn new(row_modulus: u64, col_modulus: u64, values: Vec<Rational>) -> Result<Self> {
        if row_modulus == 0 || col_modulus == 0 || values.len() as u64 != row_modulus * col_modulus {
            return invalid(format!(
                "{row_modulus}x{col_modulus} matrix needs {} values, got {}",
                row_modulus * col_modulus,
                values.len()
            ));
        }
        Ok(CorrectionMatrix { row_modulus, col_modulus, values })
    }

    pub fn from_fn(row_modulus: u64, col_modulus: u64, f: impl Fn(i64, i64) -> Rational) -> Self {
        let mut values = Vec::with_capacity((row_modulus * col_modulus) as usize);
        for i in 0..row_modulus as i64 {
            for j in 0..col_modulus as i64 {
                values.push(f(i, j));
            }
        }
        CorrectionMatrix { row_modulus, col_modulus, values }
    }

    /// Entry at any integer pair, each reduced by its modulus.
    pub fn at(&self, i: i64, j: i64) -> Rational {
        let (r, c) = (to_natural(i, self.row_modulus), to_natural(j, self.col_modulus));
        self.values[r * self.col_modulus as usize + c]
    }

    pub fn map(&self, f: impl Fn(Rational) -> Rational) -> Self {
        CorrectionMatrix { values: self.values.iter().map(|&v| f(v)).collect(), ..self.clone() }
    }

    /// Rows in centered order, each listed in centered column order.
    pub fn centered_rows(&self) -> Vec<Vec<Rational>> {
        centered_range(self.row_modulus)
            .map(|i| centered_range(self.col_modulus).map(|j| self.at(i, j)).collect())
            .collect()
    }

    pub fn zero_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_zero()).count()
    }

    /// The matrix under `i -> ±i`, `j -> ±j`.
    pub fn reflect(&self, rows: bool, cols: bool) -> Self {
        let (sr, sc) = (if rows { -1 } else { 1 }, if cols { -1 } else { 1 });
        CorrectionMatrix::from_fn(self.row_modulus, self.col_modulus, |i, j| self.at(sr * i, sc * j))
    }

    /// Least of the four reflections, compared row by row in centered
    /// order.
    pub fn canonical(&self) -> Self {
        [(false, false), (false, true), (true, false), (true, true)]
            .into_iter()
            .map(|(r, c)| self.reflect(r, c))
            .min_by(|a, b| a.centered_rows().cmp(&b.centered_rows()))
            .expect("four candidates")
    }

    pub fn eq_up_to_reflection(&self, other: &Self) -> bool {
        self.row_modulus == other.row_modulus
            && self.col_modulus == other.col_modulus
            && self.canonical() == other.canonical()
    }

    /// `(i, -j)` symmetric counterpart equality `M(i, j) = M(-i, -j)`.
    pub fn is_conjugation_symmetric(&self) -> bool {
        (0..self.row_modulus as i64).all(|i| (0..self.col_modulus as i64).all(|j| self.at(i, j) == self.at(-i, -j)))
    }

    /// Every entry an even integer.
    pub fn all_even(&self) -> bool {
        self.values.iter().all(|v| v.is_even_integer())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if (self.row_modulus, self.col_modulus) != (other.row_modulus, other.col_modulus) {
            return invalid("matrix shapes differ");
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| a - b).collect();
        Ok(CorrectionMatrix { values, ..self.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centering() {
        assert_eq!(centered_range(5).collect::<Vec<_>>(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(centered_range(6).collect::<Vec<_>>(), vec![-3, -2, -1, 0, 1, 2]);
        assert_eq!(to_centered(15, 30), -15);
        assert_eq!(to_centered(4, 5), -1);
        assert_eq!(to_natural(-1, 5), 4);
    }

    #[test]
    fn reflection_canonical_form() {
        let m = CorrectionMatrix::from_fn(3, 4, |i, j| Rational::int(i * 10 + j));
        let c = m.canonical();
        for (r, s) in [(false, true), (true, false), (true, true)] {
            assert_eq!(m.reflect(r, s).canonical(), c);
        }
        assert!(m.eq_up_to_reflection(&m.reflect(true, false)));
    }

    #[test]
    fn json_shape() {
        let t = CorrectionTable::new(2, vec![Rational::new(1, 4), Rational::new(-1, 4)]).unwrap();
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"modulus":2,"values":["1/4","-1/4"]}"#);
    }
}
