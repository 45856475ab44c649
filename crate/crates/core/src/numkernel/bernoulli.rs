use std::sync::OnceLock;

use rug::{Float, Integer, Rational};

use crate::error::{Error, Result};

/// Largest index served by [`bernoulli_number`] and [`bernoulli_polynomial`].
pub const MAX_BERNOULLI_INDEX: u32 = 64;

fn binomial_rows() -> &'static Vec<Vec<Integer>> {
    static ROWS: OnceLock<Vec<Vec<Integer>>> = OnceLock::new();
    ROWS.get_or_init(|| {
        let n = MAX_BERNOULLI_INDEX as usize + 2;
        let mut rows: Vec<Vec<Integer>> = vec![vec![Integer::from(1)]];
        for m in 1..=n {
            let prev = &rows[m - 1];
            let mut row = vec![Integer::from(1); m + 1];
            for j in 1..m {
                row[j] = Integer::from(&prev[j - 1] + &prev[j]);
            }
            rows.push(row);
        }
        rows
    })
}

fn table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0, giving B_1 = -1/2.
        let rows = binomial_rows();
        let mut b: Vec<Rational> = vec![Rational::from(1)];
        for m in 1..=MAX_BERNOULLI_INDEX as usize {
            let mut acc = Rational::new();
            for (j, bj) in b.iter().enumerate() {
                acc += Rational::from(bj * &rows[m + 1][j]);
            }
            b.push(-acc / Rational::from(m as u32 + 1));
        }
        b
    })
}

fn check_index(k: u32) -> Result<()> {
    if k > MAX_BERNOULLI_INDEX {
        return Err(Error::UnsupportedOrder { order: k, max: MAX_BERNOULLI_INDEX });
    }
    Ok(())
}

/// Exact `B_k` with the convention `B_1 = -1/2`.
pub fn bernoulli_number(k: u32) -> Result<Rational> {
    check_index(k)?;
    Ok(table()[k as usize].clone())
}

/// `B_k(x) = sum_j C(k, j) B_j x^(k-j)` for exact rational `x`.
pub fn bernoulli_polynomial_rational(k: u32, x: &Rational) -> Result<Rational> {
    check_index(k)?;
    let rows = binomial_rows();
    let b = table();
    // Horner in x over coefficients C(k, j) B_j, highest power first.
    let mut acc = Rational::new();
    for j in 0..=k as usize {
        acc *= x;
        acc += Rational::from(&b[j] * &rows[k as usize][j]);
    }
    Ok(acc)
}

/// `B_k(x)` at the precision of `x`.
pub fn bernoulli_polynomial(k: u32, x: &Float) -> Result<Float> {
    check_index(k)?;
    let prec = x.prec();
    let rows = binomial_rows();
    let b = table();
    let mut acc = Float::new(prec);
    for j in 0..=k as usize {
        acc *= x;
        acc += Float::with_val(prec, Rational::from(&b[j] * &rows[k as usize][j]));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(bernoulli_number(0).unwrap(), 1);
        assert_eq!(bernoulli_number(1).unwrap(), Rational::from((-1, 2)));
        assert_eq!(bernoulli_number(2).unwrap(), Rational::from((1, 6)));
        assert_eq!(bernoulli_number(4).unwrap(), Rational::from((-1, 30)));
        assert_eq!(bernoulli_number(12).unwrap(), Rational::from((-691, 2730)));
    }

    #[test]
    fn odd_indices_vanish() {
        for k in (3..=MAX_BERNOULLI_INDEX).step_by(2) {
            assert_eq!(bernoulli_number(k).unwrap(), 0, "B_{k}");
        }
    }

    #[test]
    fn polynomial_examples() {
        let x = Rational::from((1, 3));
        // B_2(x) = x^2 - x + 1/6
        assert_eq!(bernoulli_polynomial_rational(2, &x).unwrap(), Rational::from((-1, 18)));
        // B_1(x) = x - 1/2
        assert_eq!(bernoulli_polynomial_rational(1, &x).unwrap(), Rational::from((-1, 6)));
        for k in 0..=MAX_BERNOULLI_INDEX {
            assert_eq!(
                bernoulli_polynomial_rational(k, &Rational::new()).unwrap(),
                bernoulli_number(k).unwrap()
            );
        }
    }

    #[test]
    fn out_of_range() {
        assert!(matches!(bernoulli_number(65), Err(Error::UnsupportedOrder { .. })));
    }
}
