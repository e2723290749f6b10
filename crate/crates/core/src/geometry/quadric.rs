use rayon::prelude::*;

use super::Space;
use crate::error::{KakeyaError, Result};
use crate::exact::checked_pow;
use crate::field::{Field, FieldElement, QuadChar};

/// a_1 x_1^2 + ... + a_n x_n^2 = b with every a_i nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalEq {
    coeffs: Vec<FieldElement>,
    rhs: FieldElement,
}

impl DiagonalEq {
    pub fn new(coeffs: Vec<FieldElement>, rhs: FieldElement) -> Result<DiagonalEq> {
        if coeffs.is_empty() {
            return Err(KakeyaError::BadDimension {
                got: 0,
                reason: "a diagonal equation needs at least one variable",
            });
        }
        if let Some(i) = coeffs.iter().position(|c| c.is_zero()) {
            return Err(KakeyaError::ZeroCoefficient(i));
        }
        Ok(DiagonalEq { coeffs, rhs })
    }

    /// x_1^2 + ... + x_n^2 = b.
    pub fn norm_form(n: usize, rhs: FieldElement) -> Result<DiagonalEq> {
        DiagonalEq::new(vec![FieldElement::ONE; n], rhs)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn rhs(&self) -> FieldElement {
        self.rhs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }
}

/// Number of solutions of `sum a_i x_i^2 = v` for every v, indexed by rank,
/// by visiting every vector of F_q^n.
pub fn diagonal_histogram(field: &Field, coeffs: &[FieldElement]) -> Result<Vec<u64>> {
    let space = Space::new(field, coeffs.len())?;
    let q = field.q() as usize;
    // terms[i][x] = a_i * x^2
    let terms: Vec<Vec<FieldElement>> = coeffs
        .iter()
        .map(|&a| {
            field
                .elements()
                .map(|x| field.mul(a, field.square(x)))
                .collect()
        })
        .collect();
    let (last, rest) = terms.split_last().expect("n >= 1");

    fn walk(field: &Field, terms: &[Vec<FieldElement>], acc: FieldElement, hist: &mut [u64]) {
        match terms.split_first() {
            None => hist[acc.rank() as usize] += 1,
            Some((head, tail)) => {
                for &t in head {
                    walk(field, tail, field.add(acc, t), hist);
                }
            }
        }
    }

    let hist = last
        .par_iter()
        .map(|&t| {
            let mut h = vec![0u64; q];
            walk(field, rest, t, &mut h);
            h
        })
        .reduce(
            || vec![0u64; q],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    debug_assert_eq!(hist.iter().sum::<u64>(), space.size());
    Ok(hist)
}

/// Exact solution count by full enumeration of F_q^n.
pub fn diagonal_count_bruteforce(field: &Field, eq: &DiagonalEq) -> Result<u64> {
    Ok(diagonal_histogram(field, &eq.coeffs)?[eq.rhs.rank() as usize])
}

/// Exact solution count from the character-sum formulas.
///
/// With D = a_1 ... a_n and eta the quadratic character:
/// - n even: N = q^(n-1) + v(b) q^(n/2-1) eta((-1)^(n/2) D), where
///   v(b) = -1 for b != 0 and v(0) = q - 1;
/// - n odd: N = q^(n-1) + q^((n-1)/2) eta((-1)^((n-1)/2) b D).
pub fn diagonal_count_closed(field: &Field, eq: &DiagonalEq) -> Result<u64> {
    let q = field.q();
    let n = eq.dim() as u32;
    let disc = eq
        .coeffs
        .iter()
        .fold(FieldElement::ONE, |acc, &a| field.mul(acc, a));
    let minus_one = field.neg(FieldElement::ONE);
    let main = checked_pow(q, n - 1)? as i128;
    let correction: i128 = if n.is_multiple_of(2) {
        let sign = field.pow(minus_one, (n / 2) as u64);
        let eta = field.quadratic_character(field.mul(sign, disc)).value() as i128;
        let v = if eq.rhs.is_zero() { q as i128 - 1 } else { -1 };
        v * checked_pow(q, n / 2 - 1)? as i128 * eta
    } else {
        let sign = field.pow(minus_one, ((n - 1) / 2) as u64);
        let arg = field.mul(field.mul(sign, eq.rhs), disc);
        let eta = match field.quadratic_character(arg) {
            QuadChar::Zero => 0,
            c => c.value() as i128,
        };
        checked_pow(q, (n - 1) / 2)? as i128 * eta
    };
    u64::try_from(main + correction)
        .map_err(|_| KakeyaError::Overflow("solution count out of range".into()))
}

/// |N - q^(n-1)| for a diagonal equation in n variables: q^floor((n-1)/2)
/// when the right-hand side is nonzero, q^floor(n/2) - q^ceil((n-2)/2)
/// otherwise.
pub fn diagonal_deviation(q: u64, n: u32, rhs_zero: bool) -> Result<u64> {
    if n == 0 {
        return Err(KakeyaError::BadDimension {
            got: 0,
            reason: "a diagonal equation needs at least one variable",
        });
    }
    if rhs_zero {
        let hi = checked_pow(q, n / 2)?;
        // ceil((n-2)/2) = floor((n-1)/2) for n >= 1; n = 1 gives q^0 - q^0
        let lo = checked_pow(q, (n - 1) / 2)?;
        Ok(hi - lo)
    } else {
        checked_pow(q, (n - 1) / 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(field: &Field, coeffs: &[u64], rhs: u64) -> DiagonalEq {
        DiagonalEq::new(
            coeffs.iter().map(|&c| field.elem(c).unwrap()).collect(),
            field.elem(rhs).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(
            diagonal_count_bruteforce(&f5, &eq(&f5, &[1], 1)).unwrap(),
            2
        );
        assert_eq!(
            diagonal_count_bruteforce(&f5, &eq(&f5, &[1], 2)).unwrap(),
            0
        );
        assert_eq!(
            diagonal_count_bruteforce(&f5, &eq(&f5, &[1, 1], 1)).unwrap(),
            4
        );
    }

    #[test]
    fn closed_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(diagonal_count_closed(&f5, &eq(&f5, &[1], 1)).unwrap(), 2);
        assert_eq!(diagonal_count_closed(&f5, &eq(&f5, &[1, 1], 1)).unwrap(), 4);
        for q in [3u64, 5, 7, 9, 11, 25, 27] {
            let f = Field::with_order(q).unwrap();
            assert_eq!(
                diagonal_count_closed(&f, &eq(&f, &[1, 1, 1], 0)).unwrap(),
                q * q
            );
        }
    }

    #[test]
    fn zero_coefficient_rejected() {
        let coeffs = vec![FieldElement::ONE, FieldElement::ZERO];
        assert_eq!(
            DiagonalEq::new(coeffs, FieldElement::ONE),
            Err(KakeyaError::ZeroCoefficient(1))
        );
    }

    #[test]
    fn bruteforce_respects_cap() {
        let f = Field::new(3, 1).unwrap();
        let e = DiagonalEq::norm_form(26, FieldElement::ONE).unwrap();
        assert!(matches!(
            diagonal_count_bruteforce(&f, &e),
            Err(KakeyaError::Overflow(_))
        ));
        // the closed form has no cap
        assert!(diagonal_count_closed(&f, &e).is_ok());
    }

    #[test]
    fn deviation_values() {
        assert_eq!(diagonal_deviation(5, 3, false).unwrap(), 5);
        assert_eq!(diagonal_deviation(5, 3, true).unwrap(), 0);
        assert_eq!(diagonal_deviation(5, 4, true).unwrap(), 20);
        assert_eq!(diagonal_deviation(5, 1, true).unwrap(), 0);
        assert_eq!(diagonal_deviation(5, 2, true).unwrap(), 4);
    }
}
