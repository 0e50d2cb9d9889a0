//! Sylvester resultants evaluated by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::One;

use super::{Coeff, MPoly, UPoly};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Sylvester matrix of `f` (degree m) and `g` (degree n): n shifted rows of
/// f's coefficients followed by m shifted rows of g's, highest degree first.
pub fn sylvester_matrix<D: Coeff>(f: &UPoly<D>, g: &UPoly<D>) -> Result<Vec<Vec<D>>> {
    let (Some(m), Some(n)) = (f.degree().finite(), g.degree().finite()) else {
        return Err(Error::ZeroPolynomial("resultant"));
    };
    let (m, n) = (m as usize, n as usize);
    let zero = f.lc().unwrap().zero_like();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (shift_count, poly, deg) in [(n, f, m), (m, g, n)] {
        for shift in 0..shift_count {
            let mut row = vec![zero.clone(); size];
            for (k, c) in poly.coeffs().iter().enumerate() {
                row[shift + deg - k] = c.clone();
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Determinant by Bareiss elimination; every division is exact in an
/// integral domain. An empty matrix has determinant `one`.
pub fn bareiss_determinant<D: Coeff>(mut a: Vec<Vec<D>>, one: &D) -> D {
    let n = a.len();
    if n == 0 {
        return one.clone();
    }
    let mut negate = false;
    let mut prev = one.clone();
    for k in 0..n - 1 {
        if a[k][k].is_zero_elem() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero_elem()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return one.zero_like(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[k][k].times(&a[i][j]).minus(&a[i][k].times(&a[k][j]));
                a[i][j] = num.exact_div(&prev).expect("Bareiss step must divide exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        det.negated()
    } else {
        det
    }
}

/// `Res(f, g)` as the determinant of the Sylvester matrix.
pub fn resultant<D: Coeff>(f: &UPoly<D>, g: &UPoly<D>) -> Result<D> {
    let rows = sylvester_matrix(f, g)?;
    let one = f.lc().unwrap().one_like();
    Ok(bareiss_determinant(rows, &one))
}

/// Resultant of two multivariate polynomials with respect to `var`.
///
/// Coefficient denominators are cleared first so that Bareiss runs over
/// integer-coefficient polynomials, then the scaling is undone:
/// `Res(c·f, d·g) = c^deg g · d^deg f · Res(f, g)`.
pub fn resultant_in(f: &MPoly, g: &MPoly, var: &str) -> Result<MPoly> {
    f.try_add(g)?;
    let cf = f.denominator_lcm();
    let cg = g.denominator_lcm();
    let fu = f.scale(&Rational::from_integer(cf.clone())).to_upoly(var)?;
    let gu = g.scale(&Rational::from_integer(cg.clone())).to_upoly(var)?;
    let (Some(m), Some(n)) = (fu.degree().finite(), gu.degree().finite()) else {
        return Err(Error::ZeroPolynomial("resultant"));
    };
    let scaled = resultant(&fu, &gu)?;
    let factor: BigInt = num_traits::pow(cf, n as usize) * num_traits::pow(cg, m as usize);
    if factor.is_one() || scaled.is_zero() {
        return Ok(scaled);
    }
    Ok(scaled.scale(&Rational::new(BigInt::one(), factor)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat_int, Rational};
    use crate::poly::VarSet;

    #[test]
    fn scalar_example() {
        let f = UPoly::from_ints(&[-1, 0, 1]);
        let g = UPoly::from_ints(&[-2, 1]);
        assert_eq!(resultant(&f, &g).unwrap(), rat_int(3));
        assert!(resultant(&f, &UPoly::<Rational>::zero()).is_err());
    }

    #[test]
    fn constants_and_common_roots() {
        let c = UPoly::from_ints(&[5]);
        let g = UPoly::from_ints(&[1, 2, 3]);
        assert_eq!(resultant(&c, &g).unwrap(), rat_int(25));
        assert_eq!(resultant(&c, &c).unwrap(), rat_int(1));
        let f = UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[3, 1]));
        let h = UPoly::from_ints(&[-1, 1]).mul(&UPoly::from_ints(&[7, 0, 1]));
        assert_eq!(resultant(&f, &h).unwrap(), rat_int(0));
    }

    #[test]
    fn swapping_arguments_changes_sign_by_degree_parity() {
        let f = UPoly::from_ints(&[2, -1, 0, 3]);
        let g = UPoly::from_ints(&[1, 4, 5]);
        let rfg = resultant(&f, &g).unwrap();
        let rgf = resultant(&g, &f).unwrap();
        assert_eq!(rfg, rgf);
        let h = UPoly::from_ints(&[1, 4]);
        assert_eq!(resultant(&f, &h).unwrap(), -resultant(&h, &f).unwrap());
    }

    #[test]
    fn multivariate_with_denominators() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let p = |t: &str| MPoly::parse(&v, t).unwrap();
        // Res_x(x - y/2, x^2 - 1) = (y/2)^2 - 1.
        let r = resultant_in(&p("x - y/2"), &p("x^2 - 1"), "x").unwrap();
        assert_eq!(r, p("1/4*y^2 - 1"));
        let r = resultant_in(&p("1/3*x^2 + y"), &p("2*x - y"), "x").unwrap();
        // Equals lc(g)^2 · f(y/2) since the degree product is even.
        assert_eq!(r, p("4*(1/3*(y/2)^2 + y)"));
    }
}
