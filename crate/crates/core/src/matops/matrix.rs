use std::fmt;

use crate::coeff::Coeff;
use crate::freealg::{Parity, Poly, Presentation};

use super::MatError;

/// Matrix of polynomials over a presentation; entries are kept in normal form.
#[derive(Clone, Debug)]
pub struct AlgMatrix<'a, C: Coeff> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<C>>,
    pres: &'a Presentation<C>,
}

impl<C: Coeff> PartialEq for AlgMatrix<'_, C> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<'a, C: Coeff> AlgMatrix<'a, C> {
    /// Row-major entries, reduced on construction.
    pub fn new(pres: &'a Presentation<C>, rows: usize, cols: usize, entries: Vec<Poly<C>>) -> Result<Self, MatError> {
        if rows == 0 || cols == 0 || rows * cols != entries.len() {
            return Err(MatError::ShapeMismatch(format!("{rows}x{cols} matrix with {} entries", entries.len())));
        }
        let entries = entries.iter().map(|e| pres.normal_form(e)).collect::<Result<Vec<_>, _>>()?;
        Ok(AlgMatrix { rows, cols, entries, pres })
    }

    pub fn identity(pres: &'a Presentation<C>, n: usize) -> Self {
        Self::scalar(pres, n, Poly::one())
    }

    pub fn zeros(pres: &'a Presentation<C>, rows: usize, cols: usize) -> Self {
        AlgMatrix { rows, cols, entries: vec![Poly::zero(); rows * cols], pres }
    }

    /// `x` times the `n x n` identity; `x` must already be reduced.
    pub fn scalar(pres: &'a Presentation<C>, n: usize, x: Poly<C>) -> Self {
        let mut m = Self::zeros(pres, n, n);
        for i in 0..n {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    /// 2x2 matrix whose entries are the named generators, row-major.
    pub fn generic(pres: &'a Presentation<C>, names: [&str; 4]) -> Result<Self, MatError> {
        let entries = names.iter().map(|n| pres.gen(n)).collect::<Result<Vec<_>, _>>()?;
        Self::new(pres, 2, 2, entries)
    }

    /// Matrix of scalars.
    pub fn from_scalars(pres: &'a Presentation<C>, rows: usize, cols: usize, values: Vec<C>) -> Result<Self, MatError> {
        Self::new(pres, rows, cols, values.into_iter().map(Poly::constant).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn presentation(&self) -> &'a Presentation<C> {
        self.pres
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly<C> {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly<C>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Poly<C>> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    fn same_shape(&self, other: &Self) -> Result<(), MatError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatError::ShapeMismatch(format!(
                "{}x{} against {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.same_presentation(other)
    }

    fn same_presentation(&self, other: &Self) -> Result<(), MatError> {
        if !std::ptr::eq(self.pres, other.pres) && self.pres.generators() != other.pres.generators() {
            return Err(MatError::PresentationMismatch(self.pres.label().to_string(), other.pres.label().to_string()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, MatError> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MatError> {
        self.same_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    pub fn neg(&self) -> Self {
        AlgMatrix { entries: self.entries.iter().map(|e| -e).collect(), ..self.clone() }
    }

    /// `x * M`, entrywise on the left.
    pub fn left_mul(&self, x: &Poly<C>) -> Result<Self, MatError> {
        let entries = self.entries.iter().map(|e| self.pres.mul(x, e)).collect::<Result<Vec<_>, _>>()?;
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    /// `M * x`, entrywise on the right.
    pub fn right_mul(&self, x: &Poly<C>) -> Result<Self, MatError> {
        let entries = self.entries.iter().map(|e| self.pres.mul(e, x)).collect::<Result<Vec<_>, _>>()?;
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    pub fn scale(&self, c: &C) -> Self {
        AlgMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    /// Apply `f` to every entry and reduce.
    pub fn map(&self, mut f: impl FnMut(&Poly<C>) -> Poly<C>) -> Result<Self, MatError> {
        let entries = self.entries.iter().map(|e| self.pres.normal_form(&f(e))).collect::<Result<Vec<_>, _>>()?;
        Ok(AlgMatrix { entries, ..self.clone() })
    }

    /// Parity of every entry; `None` for a zero or mixed entry.
    pub fn parities(&self) -> Vec<Option<Parity>> {
        self.entries.iter().map(|e| e.parity(self.pres)).collect()
    }

    /// First nonzero entry, printed, with its position.
    pub fn witness(&self, max_terms: usize) -> Option<String> {
        self.entries.iter().enumerate().find(|(_, e)| !e.is_zero()).map(|(k, e)| {
            format!("entry ({},{}): {}", k / self.cols + 1, k % self.cols + 1, e.display(self.pres).truncate(max_terms))
        })
    }

    /// Entries as printed strings, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).display(self.pres).to_string()).collect())
            .collect()
    }
}

impl<C: Coeff> fmt::Display for AlgMatrix<'_, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.to_strings().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[ {} ]", row.join(" | "))?;
        }
        Ok(())
    }
}

/// `(AB)_ij = sum_k A_ik B_kj`, factors kept in order, then reduced.
pub fn mat_mul<'a, C: Coeff>(a: &AlgMatrix<'a, C>, b: &AlgMatrix<'a, C>) -> Result<AlgMatrix<'a, C>, MatError> {
    if a.cols != b.rows {
        return Err(MatError::ShapeMismatch(format!("{}x{} times {}x{}", a.rows, a.cols, b.rows, b.cols)));
    }
    a.same_presentation(b)?;
    let mut entries = Vec::with_capacity(a.rows * b.cols);
    for i in 0..a.rows {
        for j in 0..b.cols {
            let mut acc = Poly::zero();
            for k in 0..a.cols {
                let (x, y) = (a.get(i, k), b.get(k, j));
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = &acc + &(x * y);
            }
            entries.push(a.pres.normal_form(&acc)?);
        }
    }
    Ok(AlgMatrix { rows: a.rows, cols: b.cols, entries, pres: a.pres })
}

/// Tensor slot of a 2x2 matrix inside a 4x4 one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    /// `A (x) I`
    First,
    /// `I (x) A`
    Second,
}

/// Position of the double index `(i, j)`, each in `{0, 1}`, in a 4x4 matrix.
pub fn pair_index(i: usize, j: usize) -> usize {
    2 * i + j
}

fn check_2x2<C: Coeff>(a: &AlgMatrix<'_, C>) -> Result<(), MatError> {
    if a.rows != 2 || a.cols != 2 {
        return Err(MatError::ShapeMismatch(format!("expected a 2x2 matrix, got {}x{}", a.rows, a.cols)));
    }
    Ok(())
}

fn embed<'a, C: Coeff>(
    a: &AlgMatrix<'a, C>,
    slot: Slot,
    sign: impl Fn(usize, usize, usize, usize) -> bool,
) -> AlgMatrix<'a, C> {
    let mut out = AlgMatrix::zeros(a.pres, 4, 4);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    let e = match slot {
                        Slot::First if j == l => a.get(i, k),
                        Slot::Second if i == k => a.get(j, l),
                        _ => continue,
                    };
                    let e = if sign(i, j, k, l) { -e } else { e.clone() };
                    out.entries[pair_index(i, j) * 4 + pair_index(k, l)] = e;
                }
            }
        }
    }
    out
}

/// `A (x) I` or `I (x) A` with no signs:
/// `(A_1)^{ij}_{kl} = A^i_k d^j_l`, `(A_2)^{ij}_{kl} = d^i_k A^j_l`.
pub fn tensor_ungraded<'a, C: Coeff>(a: &AlgMatrix<'a, C>, slot: Slot) -> Result<AlgMatrix<'a, C>, MatError> {
    check_2x2(a)?;
    Ok(embed(a, slot, |_, _, _, _| false))
}

/// Grading of a 2x2 matrix read off its entry parities:
/// `|A^j_l| = parity + graded * ([j] + [l])` with index parities `[1] = 0`, `[2] = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grading {
    pub parity: u8,
    pub graded: bool,
}

pub fn grading<C: Coeff>(a: &AlgMatrix<'_, C>) -> Result<Grading, MatError> {
    check_2x2(a)?;
    let par = a.parities();
    for parity in 0..2u8 {
        for graded in [false, true] {
            let fits = (0..2).all(|j| {
                (0..2).all(|l| {
                    let want = (parity + u8::from(graded) * (j + l) as u8) % 2;
                    par[2 * j + l].is_none_or(|p| p.bit() == want)
                })
            });
            if fits {
                return Ok(Grading { parity, graded });
            }
        }
    }
    Err(MatError::NotHomogeneous("entry parities do not follow a supermatrix pattern".into()))
}

/// Graded embeddings. The first slot carries `(-1)^{[k]([j]+[l])}`, which is
/// always `+1`; the second carries `(-1)^{parity + [i]([j]+[l])}`, where the
/// index parities only count when the entry parities follow the index
/// grading. A matrix with only even entries embeds without signs.
pub fn tensor_graded<'a, C: Coeff>(a: &AlgMatrix<'a, C>, slot: Slot) -> Result<AlgMatrix<'a, C>, MatError> {
    let g = grading(a)?;
    let idx = |v: usize| u8::from(g.graded) * v as u8;
    Ok(match slot {
        Slot::First => embed(a, slot, |_, j, k, l| (idx(k) * (idx(j) + idx(l))) % 2 == 1),
        Slot::Second => embed(a, slot, |i, j, _, l| (g.parity + idx(i) * (idx(j) + idx(l))) % 2 == 1),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::reduce_str;
    use crate::freealg::presets::preset;

    #[test]
    fn identity_is_a_unit() {
        let p = preset("gr2").unwrap();
        let a = AlgMatrix::generic(p, ["alpha", "beta", "gamma", "delta"]).unwrap();
        let i = AlgMatrix::identity(p, 2);
        assert_eq!(mat_mul(&a, &i).unwrap(), a);
        assert_eq!(mat_mul(&i, &a).unwrap(), a);
    }

    #[test]
    fn shapes_are_checked() {
        let p = preset("gr2").unwrap();
        let a = AlgMatrix::generic(p, ["alpha", "beta", "gamma", "delta"]).unwrap();
        let t = tensor_ungraded(&a, Slot::First).unwrap();
        assert!(matches!(mat_mul(&a, &t), Err(MatError::ShapeMismatch(_))));
        assert!(matches!(tensor_ungraded(&t, Slot::First), Err(MatError::ShapeMismatch(_))));
        assert!(AlgMatrix::new(p, 2, 2, vec![Poly::zero(); 3]).is_err());
    }

    #[test]
    fn square_of_the_supermatrix_by_hand() {
        let p = preset("gr11").unwrap();
        let a = AlgMatrix::generic(p, ["alpha", "b", "c", "delta"]).unwrap();
        let sq = mat_mul(&a, &a).unwrap();
        // alpha^2 + b c, alpha b + b delta = p^-1 b alpha + b delta, ...
        let expect = ["b*c", "p^-1*b*alpha + b*delta", "c*alpha + delta*c", "c*b"];
        for (k, e) in expect.iter().enumerate() {
            assert_eq!(sq.entries()[k], reduce_str(e, p).unwrap(), "entry {k}");
        }
    }

    #[test]
    fn ungraded_second_slot_of_identity_is_identity() {
        let p = preset("gr11").unwrap();
        let i2 = AlgMatrix::identity(p, 2);
        assert_eq!(tensor_ungraded(&i2, Slot::Second).unwrap(), AlgMatrix::identity(p, 4));
        assert_eq!(tensor_graded(&i2, Slot::Second).unwrap(), AlgMatrix::identity(p, 4));
    }

    #[test]
    fn grading_patterns() {
        let p = preset("gr11").unwrap();
        let a = AlgMatrix::generic(p, ["alpha", "b", "c", "delta"]).unwrap();
        assert_eq!(grading(&a).unwrap(), Grading { parity: 1, graded: true });
        let even = AlgMatrix::generic(p, ["b", "c", "c", "b"]).unwrap();
        assert_eq!(grading(&even).unwrap(), Grading { parity: 0, graded: false });
        let mixed = AlgMatrix::generic(p, ["alpha", "b", "b", "b"]).unwrap();
        assert!(grading(&mixed).is_err());
    }
}
