use std::fmt;

use super::{ExactError, RatFunc};

/// Square matrix with rational-function entries, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    n: usize,
    entries: Vec<RatFunc>,
}

impl RatMatrix {
    pub fn new(n: usize, entries: Vec<RatFunc>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix must be square");
        Self { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> Self {
        let n = rows.len();
        let entries: Vec<RatFunc> = rows.into_iter().flatten().collect();
        Self::new(n, entries)
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(n, vec![RatFunc::zero(); n * n])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.entries[i * n + i] = RatFunc::one();
        }
        m
    }

    pub fn scalar(r: RatFunc) -> Self {
        Self::new(1, vec![r])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RatFunc]> {
        self.entries.chunks(self.n.max(1))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = RatFunc::zero();
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    /// Entrywise `x ↦ x^m`.
    pub fn substitute_power(&self, m: usize) -> Self {
        Self {
            n: self.n,
            entries: self.entries.iter().map(|e| e.substitute_power(m)).collect(),
        }
    }

    /// Determinant by Gaussian elimination over the rational-function field.
    pub fn det(&self) -> RatFunc {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = RatFunc::one();
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| !a[r * n + col].is_zero()) else {
                return RatFunc::zero();
            };
            if pr != col {
                for c in 0..n {
                    a.swap(pr * n + c, col * n + c);
                }
                det = -det;
            }
            let pivot = a[col * n + col].clone();
            det = &det * &pivot;
            let inv = pivot.recip().expect("nonzero pivot");
            for r in col + 1..n {
                if a[r * n + col].is_zero() {
                    continue;
                }
                let factor = &a[r * n + col] * &inv;
                for c in col..n {
                    if !a[col * n + c].is_zero() {
                        let d = &factor * &a[col * n + c];
                        a[r * n + c] = &a[r * n + c] - &d;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            let pr = (col..n)
                .find(|&r| !a[r * n + col].is_zero())
                .ok_or(ExactError::DivisionByZero)?;
            for c in 0..n {
                a.swap(pr * n + c, col * n + c);
                inv.swap(pr * n + c, col * n + c);
            }
            let p = a[col * n + col].recip()?;
            for c in 0..n {
                a[col * n + c] = &a[col * n + c] * &p;
                inv[col * n + c] = &inv[col * n + c] * &p;
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for c in 0..n {
                    let d = &f * &a[col * n + c];
                    a[r * n + c] = &a[r * n + c] - &d;
                    let d = &f * &inv[col * n + c];
                    inv[r * n + c] = &inv[r * n + c] - &d;
                }
            }
        }
        Ok(Self { n, entries: inv })
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, e) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{e}")?;
            }
        }
        write!(f, "]")
    }
}
