use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::{Poly, Presentation, RatFunc};

use super::matrix::{mat_mul, pair_index, tensor_graded, tensor_ungraded, AlgMatrix, Slot};
use super::MatError;

/// Numeric 4x4 matrix, rows and columns labelled by index pairs
/// `11, 12, 21, 22`.
#[derive(Clone, Debug, PartialEq)]
pub struct RMatrix {
    pub entries: [[RatFunc; 4]; 4],
}

impl RMatrix {
    pub fn zero() -> Self {
        RMatrix { entries: std::array::from_fn(|_| std::array::from_fn(|_| RatFunc::zero())) }
    }

    /// `e^k_l (x) e^m_n`, indices 0-based: a single 1 at row `(k, m)`, column `(l, n)`.
    pub fn unit_tensor(k: usize, l: usize, m: usize, n: usize) -> Self {
        let mut r = Self::zero();
        r.entries[pair_index(k, m)][pair_index(l, n)] = RatFunc::one();
        r
    }

    pub fn add_scaled(&mut self, other: &RMatrix, c: &RatFunc) {
        for i in 0..4 {
            for j in 0..4 {
                let t = other.entries[i][j].clone() * c.clone();
                self.entries[i][j] = self.entries[i][j].clone() + t;
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.entries[i][j]
    }

    pub fn as_matrix<'a>(&self, pres: &'a Presentation) -> AlgMatrix<'a, RatFunc> {
        let values = self.entries.iter().flatten().cloned().collect();
        AlgMatrix::from_scalars(pres, 4, 4, values).expect("4x4 scalar matrix")
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|row| row.iter().map(|c| c.to_string()).collect()).collect()
    }
}

impl Serialize for RMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let padded: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            write!(f, "[ {} ]", padded.join("  "))?;
        }
        Ok(())
    }
}

/// `R(x) = (p + q^-1) sum_i e^i_i (x) e^i_i + 2x sum_{i != j} (p q^-1)^{i-1} e^i_i (x) e^j_j
///        + (p - q^-1) (sum_{i > j} - sum_{i < j}) e^i_j (x) e^j_i`.
pub fn rhat(x: &RatFunc) -> RMatrix {
    let p = RatFunc::p();
    let qinv = RatFunc::monomial(crate::Rat::one(), 0, -1);
    let diag = p.clone() + qinv.clone();
    let skew = p.clone() - qinv.clone();
    let ratio = p * qinv;
    let two_x = RatFunc::from_int(2) * x.clone();
    let mut r = RMatrix::zero();
    for i in 0..2 {
        r.add_scaled(&RMatrix::unit_tensor(i, i, i, i), &diag);
        for j in 0..2 {
            if i == j {
                continue;
            }
            let w = if i == 0 { two_x.clone() } else { two_x.clone() * ratio.clone() };
            r.add_scaled(&RMatrix::unit_tensor(i, i, j, j), &w);
            let s = if i > j { skew.clone() } else { -skew.clone() };
            r.add_scaled(&RMatrix::unit_tensor(i, j, j, i), &s);
        }
    }
    r
}

/// `R(x) A1 A2 + A2 A1 R(x)`; zero iff the RTT relation holds.
pub fn rtt_residual<'a>(x: &RatFunc, a: &AlgMatrix<'a, RatFunc>, graded: bool) -> Result<AlgMatrix<'a, RatFunc>, MatError> {
    let (a1, a2) = if graded {
        (tensor_graded(a, Slot::First)?, tensor_graded(a, Slot::Second)?)
    } else {
        (tensor_ungraded(a, Slot::First)?, tensor_ungraded(a, Slot::Second)?)
    };
    let r = rhat(x).as_matrix(a.presentation());
    let left = mat_mul(&mat_mul(&r, &a1)?, &a2)?;
    let right = mat_mul(&mat_mul(&a2, &a1)?, &r)?;
    left.add(&right)
}

/// Entries of a residual as a relation list, zeros dropped.
pub fn residual_entries(m: &AlgMatrix<'_, RatFunc>) -> Vec<Poly> {
    m.entries().iter().filter(|e| !e.is_zero()).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse_coeff;

    fn layout() -> [[&'static str; 4]; 4] {
        [["p + q^-1", "0", "0", "0"], ["0", "", "q^-1 - p", "0"], ["0", "p - q^-1", "", "0"], ["0", "0", "0", "p + q^-1"]]
    }

    #[test]
    fn sum_formula_matches_explicit_layout() {
        for x in ["1", "-1", "0", "p^2 - 3"] {
            let r = rhat(&parse_coeff(x).unwrap());
            let mut want = layout().map(|row| row.map(str::to_string));
            want[1][1] = format!("2*({x})");
            want[2][2] = format!("2*({x})*p*q^-1");
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(r.get(i, j), &parse_coeff(&want[i][j]).unwrap(), "x = {x}, entry ({i},{j})");
                }
            }
        }
    }

    #[test]
    fn minus_one_middle_block() {
        let r = rhat(&RatFunc::from_int(-1));
        assert_eq!(r.get(1, 1), &RatFunc::from_int(-2));
        assert_eq!(r.get(2, 2), &parse_coeff("-2*p*q^-1").unwrap());
        let z = rhat(&RatFunc::zero());
        assert!(z.get(1, 1).is_zero() && z.get(2, 2).is_zero());
    }

    #[test]
    fn display_is_four_rows() {
        let s = rhat(&RatFunc::one()).to_string();
        assert_eq!(s.lines().count(), 4);
    }
}
