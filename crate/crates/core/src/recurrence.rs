//! Two independent routes to the number of `m`-subsets of `1..=n` with no two
//! consecutive numbers: the two-index recurrence on `n - 2` and `n - 4`, and
//! coefficient extraction from the generating function
//! `(1 + zw) / (1 - z - w z^2)`. Neither consults the closed form.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::gapcount::{count_line, DrawSpec};

/// Dense `(max_n + 1) x (max_m + 1)` table.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Grid<T> {
    max_n: usize,
    max_m: usize,
    values: Vec<T>,
}

impl<T: Clone> Grid<T> {
    fn new(max_n: usize, max_m: usize, fill: T) -> Self {
        Self {
            max_n,
            max_m,
            values: vec![fill; (max_n + 1) * (max_m + 1)],
        }
    }

    fn idx(&self, n: usize, m: usize) -> usize {
        n * (self.max_m + 1) + m
    }

    fn get(&self, n: usize, m: usize) -> Option<&T> {
        (n <= self.max_n && m <= self.max_m).then(|| &self.values[self.idx(n, m)])
    }
}

/// `f(n, m)` filled by the recurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable(Grid<BigInt>);

impl DpTable {
    pub fn max_n(&self) -> usize {
        self.0.max_n
    }

    pub fn max_m(&self) -> usize {
        self.0.max_m
    }

    /// `None` outside the table bounds.
    pub fn get(&self, n: usize, m: usize) -> Option<&BigInt> {
        self.0.get(n, m)
    }
}

/// Coefficients `c(n, m)` of `z^n w^m` in the generating function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTable(Grid<BigUint>);

impl SeriesTable {
    pub fn max_n(&self) -> usize {
        self.0.max_n
    }

    pub fn max_m(&self) -> usize {
        self.0.max_m
    }

    pub fn get(&self, n: usize, m: usize) -> Option<&BigUint> {
        self.0.get(n, m)
    }
}

/// Fills `f(n, m)` for `0 <= n <= max_n`, `0 <= m <= max_m` from
/// `f(n,m) = f(n-2,m) + 2 f(n-2,m-1) - f(n-4,m-2)` for `n >= 4, m >= 2`.
///
/// Seeds: `f(n,0) = 1`, `f(n,1) = n`, `f(3,2) = 1`, and `f(n,m) = 0` when
/// `m >= ceil(n/2) + 1` or `n < 0`.
pub fn dp_f(max_n: usize, max_m: usize) -> DpTable {
    let mut t = Grid::new(max_n, max_m, BigInt::zero());
    let at = |t: &Grid<BigInt>, n: isize, m: usize| -> BigInt {
        if n < 0 {
            BigInt::zero()
        } else {
            t.values[t.idx(n as usize, m)].clone()
        }
    };
    for n in 0..=max_n {
        for m in 0..=max_m {
            let value = if m == 0 {
                BigInt::one()
            } else if m == 1 {
                BigInt::from(n)
            } else if m > n.div_ceil(2) {
                BigInt::zero()
            } else if n == 3 && m == 2 {
                BigInt::one()
            } else {
                // Every remaining cell has n >= 4 and m >= 2.
                let n = n as isize;
                at(&t, n - 2, m) + 2 * at(&t, n - 2, m - 1) - at(&t, n - 4, m - 2)
            };
            let i = t.idx(n, m);
            t.values[i] = value;
        }
    }
    DpTable(t)
}

/// Coefficients of the truncated bivariate series, obtained by clearing the
/// denominator: `c(n,m) = c(n-1,m) + c(n-2,m-1) + [n=0,m=0] + [n=1,m=1]`,
/// with `c = 0` at negative indices.
pub fn series_f(max_n: usize, max_m: usize) -> SeriesTable {
    let mut t = Grid::new(max_n, max_m, BigUint::zero());
    for n in 0..=max_n {
        for m in 0..=max_m {
            let mut c = BigUint::zero();
            if n >= 1 {
                c += &t.values[t.idx(n - 1, m)];
            }
            if n >= 2 && m >= 1 {
                c += &t.values[t.idx(n - 2, m - 1)];
            }
            if (n, m) == (0, 0) || (n, m) == (1, 1) {
                c += 1u32;
            }
            let i = t.idx(n, m);
            t.values[i] = c;
        }
    }
    SeriesTable(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub n: usize,
    pub m: usize,
    pub dp: String,
    pub series: String,
    pub closed_form: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub max_n: usize,
    pub max_m: usize,
    pub cells: usize,
    pub first_mismatch: Option<Mismatch>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Checks the recurrence table, the series coefficients and the closed form
/// `C(n - m + 1, m)` cell by cell, reporting the first disagreement.
pub fn crosscheck(max_n: usize, max_m: usize) -> CrosscheckReport {
    let dp = dp_f(max_n, max_m);
    let series = series_f(max_n, max_m);
    let mut first_mismatch = None;
    'outer: for n in 0..=max_n {
        for m in 0..=max_m {
            let d = dp.get(n, m).expect("in bounds");
            let s = series.get(n, m).expect("in bounds");
            let closed = closed_form_at(n, m);
            let s_signed = BigInt::from_biguint(Sign::Plus, s.clone());
            let c_signed = BigInt::from_biguint(Sign::Plus, closed.clone());
            if *d != s_signed || *d != c_signed {
                first_mismatch = Some(Mismatch {
                    n,
                    m,
                    dp: d.to_string(),
                    series: s.to_string(),
                    closed_form: closed.to_string(),
                });
                break 'outer;
            }
        }
    }
    CrosscheckReport {
        max_n,
        max_m,
        cells: (max_n + 1) * (max_m + 1),
        first_mismatch,
    }
}

/// Closed form at `k = 2`, or zero where no draw of size `m` exists.
fn closed_form_at(n: usize, m: usize) -> BigUint {
    if m > n {
        return BigUint::zero();
    }
    if n == 0 {
        // Only the empty draw; DrawSpec requires n >= 1.
        return BigUint::one();
    }
    count_line(
        DrawSpec {
            n: n as u32,
            m: m as u32,
        },
        2,
    )
    .expect("k = 2 is valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dp_examples() {
        let t = dp_f(10, 5);
        assert_eq!(t.get(3, 2), Some(&BigInt::from(1)));
        assert_eq!(t.get(4, 2), Some(&BigInt::from(3)));
        assert_eq!(t.get(5, 2), Some(&BigInt::from(6)));
        for n in 0..=10 {
            assert_eq!(t.get(n, 0), Some(&BigInt::from(1)));
            assert_eq!(t.get(n, 1), Some(&BigInt::from(n)));
        }
        assert_eq!(t.get(11, 0), None);
    }

    #[test]
    fn dp_vanishing_region() {
        let t = dp_f(60, 40);
        for n in 0..=60usize {
            for m in 0..=40usize {
                let zero = t.get(n, m).unwrap().is_zero();
                assert_eq!(zero, m > n.div_ceil(2), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn series_examples() {
        let s = series_f(49, 6);
        assert_eq!(s.get(0, 0), Some(&BigUint::from(1u32)));
        assert_eq!(s.get(5, 2), Some(&BigUint::from(6u32)));
        assert_eq!(s.get(49, 6), Some(&BigUint::from(7_059_052u32)));
        for n in 0..=49 {
            assert_eq!(s.get(n, 0), Some(&BigUint::from(1u32)));
            assert_eq!(s.get(n, 1), Some(&BigUint::from(n)));
            for m in n + 1..=6 {
                assert!(s.get(n, m).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn series_is_product_with_denominator() {
        // Multiplying the truncated series back by (1 - z - w z^2) must give
        // 1 + zw on every coefficient inside the truncation window.
        let s = series_f(30, 10);
        let c = |n: isize, m: isize| -> BigInt {
            if n < 0 || m < 0 {
                BigInt::zero()
            } else {
                BigInt::from_biguint(Sign::Plus, s.get(n as usize, m as usize).unwrap().clone())
            }
        };
        for n in 0..=30isize {
            for m in 0..=10isize {
                let lhs = c(n, m) - c(n - 1, m) - c(n - 2, m - 1);
                let rhs = i32::from((n, m) == (0, 0) || (n, m) == (1, 1));
                assert_eq!(lhs, BigInt::from(rhs), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn three_way_agreement() {
        let r = crosscheck(60, 12);
        assert!(r.passed(), "{:?}", r.first_mismatch);
        assert_eq!(r.cells, 61 * 13);
        assert!(crosscheck(5, 2).passed());
        assert!(crosscheck(3, 2).passed());
        assert!(crosscheck(0, 0).passed());
    }
}
