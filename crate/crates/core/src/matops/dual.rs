use num_traits::One;

use crate::freealg::Word;
use crate::{Poly, Presentation, RatFunc};

use super::matrix::AlgMatrix;
use super::MatError;

type Mat<'a> = AlgMatrix<'a, RatFunc>;

fn entries2<'m>(a: &'m Mat<'_>) -> Result<[&'m Poly; 4], MatError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(MatError::ShapeMismatch(format!("expected a 2x2 matrix, got {}x{}", a.rows(), a.cols())));
    }
    Ok([a.get(0, 0), a.get(0, 1), a.get(1, 0), a.get(1, 1)])
}

/// Reduced product of the factors, left to right.
pub(crate) fn product(pres: &Presentation, factors: &[&Poly]) -> Result<Poly, MatError> {
    let mut acc = Poly::one();
    for f in factors {
        acc = pres.mul(&acc, f)?;
    }
    Ok(acc)
}

fn coeff(a: i32, b: i32) -> RatFunc {
    RatFunc::monomial(crate::Rat::one(), a, b)
}

/// `Delta_L = B C + q^-1 D A` for `[[A, B], [C, D]]`.
pub fn delta_left(a: &Mat<'_>) -> Result<Poly, MatError> {
    let [x, y, z, w] = entries2(a)?;
    let pres = a.presentation();
    let t = &pres.mul(y, z)? + &pres.mul(w, x)?.scale(&coeff(0, -1));
    Ok(pres.normal_form(&t)?)
}

/// `Delta_R = C B - p^-1 A D`.
pub fn delta_right(a: &Mat<'_>) -> Result<Poly, MatError> {
    let [x, y, z, w] = entries2(a)?;
    let pres = a.presentation();
    let t = &pres.mul(z, y)? - &pres.mul(x, w)?.scale(&coeff(-1, 0));
    Ok(pres.normal_form(&t)?)
}

/// `[[q^-1 D, B], [-p q^-1 C, -p A]]`.
pub fn left_inverse<'a>(a: &Mat<'a>) -> Result<Mat<'a>, MatError> {
    let [x, y, z, w] = entries2(a)?;
    let entries = vec![w.scale(&coeff(0, -1)), y.clone(), z.scale(&-coeff(1, -1)), x.scale(&-coeff(1, 0))];
    Mat::new(a.presentation(), 2, 2, entries)
}

/// `[[-q D, B], [-q p^-1 C, p^-1 A]]`.
pub fn right_inverse<'a>(a: &Mat<'a>) -> Result<Mat<'a>, MatError> {
    let [x, y, z, w] = entries2(a)?;
    let entries = vec![w.scale(&-coeff(0, 1)), y.clone(), z.scale(&-coeff(-1, 1)), x.scale(&coeff(-1, 0))];
    Mat::new(a.presentation(), 2, 2, entries)
}

/// Inverse of the generator `e` (a single letter with coefficient one).
fn generator_inverse(pres: &Presentation, e: &Poly) -> Result<Poly, MatError> {
    let not_localized = || {
        let name = e.display(pres).to_string();
        MatError::NotLocalized(pres.label().to_string(), name)
    };
    let mut terms = e.terms();
    let (w, c) = terms.next().ok_or_else(not_localized)?;
    if terms.next().is_some() || w.len() != 1 || !c.is_one() {
        return Err(not_localized());
    }
    let g = w.letters().next().expect("one letter");
    let inv = pres.inverse_of(g).ok_or_else(not_localized)?;
    Ok(Poly::word(Word::letter(inv)))
}

/// Off-diagonal inverses `(b^-1, c^-1)` of a generic supermatrix.
fn offdiag_inverses(a: &Mat<'_>) -> Result<(Poly, Poly), MatError> {
    let [_, b, c, _] = entries2(a)?;
    let pres = a.presentation();
    Ok((generator_inverse(pres, b)?, generator_inverse(pres, c)?))
}

/// Two-sided inverse of `[[alpha, b], [c, delta]]` with invertible `b`, `c`:
///
/// ```text
/// [ -c^-1 delta b^-1                        c^-1 + c^-1 delta b^-1 alpha c^-1 ]
/// [ b^-1 + b^-1 alpha c^-1 delta b^-1       -b^-1 alpha c^-1                  ]
/// ```
pub fn inverse11<'a>(a: &Mat<'a>) -> Result<Mat<'a>, MatError> {
    let [alpha, _, _, delta] = entries2(a)?;
    let (bi, ci) = offdiag_inverses(a)?;
    let pres = a.presentation();
    let e11 = -product(pres, &[&ci, delta, &bi])?;
    let e12 = &ci + &product(pres, &[&ci, delta, &bi, alpha, &ci])?;
    let e21 = &bi + &product(pres, &[&bi, alpha, &ci, delta, &bi])?;
    let e22 = -product(pres, &[&bi, alpha, &ci])?;
    Mat::new(pres, 2, 2, vec![e11, e12, e21, e22])
}

/// Which of the two written forms of the superdeterminant to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SdetForm {
    /// `c^-1 b - c^-1 alpha c^-1 delta`
    Left,
    /// `p q^-1 (b c^-1 - alpha c^-1 delta c^-1)`
    Right,
}

pub fn sdet(a: &Mat<'_>, form: SdetForm) -> Result<Poly, MatError> {
    let [alpha, b, _, delta] = entries2(a)?;
    let (_, ci) = offdiag_inverses(a)?;
    let pres = a.presentation();
    Ok(match form {
        SdetForm::Left => &product(pres, &[&ci, b])? - &product(pres, &[&ci, alpha, &ci, delta])?,
        SdetForm::Right => {
            let t = &product(pres, &[b, &ci])? - &product(pres, &[alpha, &ci, delta, &ci])?;
            t.scale(&coeff(1, -1))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::reduce_str;
    use crate::freealg::presets::preset;
    use crate::matops::mat_mul;

    #[test]
    fn determinants_in_normal_form() {
        let p = preset("gr2").unwrap();
        let a = Mat::generic(p, ["alpha", "beta", "gamma", "delta"]).unwrap();
        assert_eq!(delta_left(&a).unwrap(), reduce_str("beta*gamma - q^-1*alpha*delta", p).unwrap());
        let want = reduce_str("-q*p^-1*beta*gamma + (q - p^-1)*delta*alpha - p^-1*alpha*delta", p).unwrap();
        assert_eq!(delta_right(&a).unwrap(), want);
    }

    #[test]
    fn left_inverse_times_matrix() {
        let p = preset("gr2").unwrap();
        let a = Mat::generic(p, ["alpha", "beta", "gamma", "delta"]).unwrap();
        let lhs = mat_mul(&left_inverse(&a).unwrap(), &a).unwrap();
        assert_eq!(lhs, Mat::scalar(p, 2, delta_left(&a).unwrap()));
    }

    #[test]
    fn inverse_needs_localization() {
        let p = preset("gr11").unwrap();
        let a = Mat::generic(p, ["alpha", "b", "c", "delta"]).unwrap();
        assert!(matches!(inverse11(&a), Err(MatError::NotLocalized(..))));
        assert!(matches!(sdet(&a, SdetForm::Left), Err(MatError::NotLocalized(..))));
    }

    #[test]
    fn inverse_top_left_entry() {
        let p = preset("gr11_localized").unwrap();
        let a = Mat::generic(p, ["alpha", "b", "c", "delta"]).unwrap();
        let inv = inverse11(&a).unwrap();
        assert_eq!(inv.get(0, 0), &reduce_str("-cinv*delta*binv", p).unwrap());
        assert_eq!(mat_mul(&a, &inv).unwrap(), Mat::identity(p, 2));
    }

    #[test]
    fn superdeterminant_forms_agree() {
        let p = preset("gr11_localized").unwrap();
        let a = Mat::generic(p, ["alpha", "b", "c", "delta"]).unwrap();
        assert_eq!(sdet(&a, SdetForm::Left).unwrap(), sdet(&a, SdetForm::Right).unwrap());
    }
}
